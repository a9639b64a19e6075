//! Local-twist frames and their transport along flips.
//!
//! A frame at a vertex reached by a path `p` from the base lists, for each
//! arc `l`, the image of the loop `p · t_l · p⁻¹`, where `t_l` is the local
//! twist at `l`. Under the disc identification the image of `t_l` is the
//! inverse braid twist of the dual closed arc, so the braid twists are the
//! inverses of the frame entries.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::braid::GarsideNF;
use crate::error::{Error, Result};
use crate::exchange::{ExchangeGraph, Neighbor, Radius, DEFAULT_BUDGET};
use crate::group::{artin_generators, Group};
use crate::matrix::Matrix;
use crate::surface::{polygon_fan, ArcId, QuiverWithPotential, Triangulation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    /// Forward flip out of the current vertex.
    Forward,
    /// Inverse of the forward flip into the current vertex.
    Backward,
}

impl Direction {
    pub fn opposite(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwistFrame<G = GarsideNF> {
    entries: Vec<G>,
}

impl<G: Group> TwistFrame<G> {
    pub fn new(entries: Vec<G>) -> Self {
        TwistFrame { entries }
    }

    pub fn entries(&self) -> &[G] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, arc: ArcId) -> Option<&G> {
        self.entries.get(arc.index())
    }

    /// Entry `i` moves to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let mut entries = self.entries.clone();
        for (i, &p) in perm.iter().enumerate() {
            entries[p] = self.entries[i].clone();
        }
        TwistFrame { entries }
    }

    /// Frame after one flip at `k`, still in the labels before the flip.
    /// `b` is the exchange matrix at the vertex the flip starts from.
    ///
    /// Forward: `l` becomes `f(k) f(l) f(k)⁻¹` when there are arrows `l -> k`.
    /// Backward: `l` becomes `f(k)⁻¹ f(l) f(k)` when there are arrows `k -> l`.
    pub fn transport(&self, b: &Matrix<i64>, k: ArcId, dir: Direction) -> Result<Self> {
        let n = self.entries.len();
        if b.rows() != n || !b.is_square() {
            return Err(Error::FrameMismatch(format!("{n} entries for a {}x{} matrix", b.rows(), b.cols())));
        }
        let k = k.index();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, size: n });
        }
        let fk = &self.entries[k];
        let entries = (0..n)
            .map(|l| {
                let f = &self.entries[l];
                match dir {
                    Direction::Forward if b[(l, k)] > 0 => f.conj(&fk.inv()),
                    Direction::Backward if b[(k, l)] > 0 => f.conj(fk),
                    _ => f.clone(),
                }
            })
            .collect();
        Ok(TwistFrame { entries })
    }

    /// Transport across a graph edge, ending in the labels of its target.
    pub fn transport_edge(&self, b: &Matrix<i64>, k: ArcId, dir: Direction, nb: &Neighbor) -> Result<Self> {
        let moved = self.transport(b, k, dir)?;
        let perm: Vec<usize> = nb.relabel.iter().map(|&p| p as usize).collect();
        Ok(moved.relabel(&perm))
    }
}

impl TwistFrame<GarsideNF> {
    /// `σ_1, …, σ_n` in `B_{n+1}`: the frame at the fan triangulation.
    pub fn standard(n: usize) -> Self {
        TwistFrame { entries: artin_generators(n) }
    }

    /// Every entry has the shape of a conjugate of one Artin generator.
    pub fn check_band_generators(&self) -> Result<()> {
        match self.entries.iter().position(|e| !e.is_band_generator()) {
            None => Ok(()),
            Some(i) => Err(Error::FrameMismatch(format!("entry {} is {}", ArcId::from_index(i), self.entries[i]))),
        }
    }

    /// The braid twists `Bt_η`, as inverses of the entries.
    pub fn braid_twists(&self) -> Vec<GarsideNF> {
        self.entries.iter().map(|e| e.inverse()).collect()
    }
}

/// Forward flip at `k` from quiver `q`.
pub fn transport_frame<G: Group>(f: &TwistFrame<G>, q: &QuiverWithPotential, k: ArcId) -> Result<TwistFrame<G>> {
    f.transport(&q.b, k, Direction::Forward)
}

/// Frames at every vertex, transported from `base` along the BFS tree of
/// forward flips.
pub fn tree_frames<G: Group>(g: &ExchangeGraph, base: TwistFrame<G>) -> Result<Vec<TwistFrame<G>>> {
    if base.len() != g.rank() {
        return Err(Error::FrameMismatch(format!("{} entries for rank {}", base.len(), g.rank())));
    }
    let mut frames: Vec<Option<TwistFrame<G>>> = vec![None; g.vertex_count()];
    frames[0] = Some(base);
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let f = frames[u].clone().expect("queued vertices have frames");
        for a in (0..g.rank()).map(ArcId::from_index) {
            let Some(nb) = g.neighbor(u, a) else { continue };
            if frames[nb.target].is_none() {
                frames[nb.target] = Some(f.transport_edge(&g.vertex(u).seed.b, a, Direction::Forward, nb)?);
                queue.push_back(nb.target);
            }
        }
    }
    frames
        .into_iter()
        .map(|f| f.ok_or_else(|| Error::Connection("exchange graph is disconnected".into())))
        .collect()
}

/// Transport along forward flips given in the labels of `start`, as in
/// [`ExchangeGraph::walk`]. Returns the end vertex and the frame there.
pub fn transport_path<G: Group>(
    g: &ExchangeGraph,
    start: usize,
    frame: &TwistFrame<G>,
    path: &[ArcId],
) -> Result<(usize, TwistFrame<G>)> {
    let mut at = start;
    let mut f = frame.clone();
    let mut sigma: Vec<usize> = (0..g.rank()).collect();
    for &a in path {
        let here = ArcId::from_index(sigma[a.index()]);
        let nb = g.neighbor(at, here).ok_or(Error::Truncated("frame transport"))?;
        f = f.transport_edge(&g.vertex(at).seed.b, here, Direction::Forward, nb)?;
        sigma.iter_mut().for_each(|s| *s = nb.relabel[*s] as usize);
        at = nb.target;
    }
    Ok((at, f))
}

/// Frame at a disc triangulation, transported from the fan of the same
/// polygon along the BFS tree, in the labels of `t`.
pub fn disc_frame(t: &Triangulation) -> Result<TwistFrame<GarsideNF>> {
    if !t.surface().is_disc() {
        return Err(Error::OracleUnavailable(format!("{:?}", t.surface())));
    }
    let fan = polygon_fan(t.surface().marked_points())?;
    let standard = TwistFrame::standard(t.arc_count());
    if let Some(perm) = fan.relabeling_to(t) {
        return Ok(standard.relabel(&perm));
    }
    let g = ExchangeGraph::enumerate(&fan, Radius::Full, DEFAULT_BUDGET)?;
    let frames = tree_frames(&g, standard)?;
    for (v, f) in frames.iter().enumerate() {
        if let Some(perm) = g.vertex(v).triangulation.relabeling_to(t) {
            return Ok(f.relabel(&perm));
        }
    }
    Err(Error::InvalidTriangulation("not reachable from the fan".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{normal_form, BraidWord};
    use crate::group::FreeWord;
    use crate::surface::{annulus, quiver_from_triangulation};

    fn nf(k: usize, s: &str) -> GarsideNF {
        normal_form(&BraidWord::parse(k, s).unwrap())
    }

    #[test]
    fn single_arc_frame_is_fixed() {
        let t = polygon_fan(4).unwrap();
        let q = quiver_from_triangulation(&t);
        let f = TwistFrame::standard(1);
        assert_eq!(transport_frame(&f, &q, ArcId(1)).unwrap(), f);
    }

    #[test]
    fn hexagon_middle_flip() {
        // fan quiver 1 -> 2 -> 3: only arc 1 has an arrow into 2
        let q = quiver_from_triangulation(&polygon_fan(6).unwrap());
        let f = transport_frame(&TwistFrame::standard(3), &q, ArcId(2)).unwrap();
        assert_eq!(f.entries(), &[nf(4, "2 1 -2"), nf(4, "2"), nf(4, "3")]);
        f.check_band_generators().unwrap();
    }

    #[test]
    fn backward_undoes_forward() {
        let t = polygon_fan(7).unwrap();
        let g = ExchangeGraph::enumerate(&t, Radius::Bounded(2), DEFAULT_BUDGET).unwrap();
        let f = TwistFrame::standard(4);
        for a in t.arcs() {
            let nb = g.neighbor(0, a).unwrap();
            let there = f.transport_edge(&g.vertex(0).seed.b, a, Direction::Forward, nb).unwrap();
            let a2 = nb.map(a);
            let back = g.neighbor(nb.target, a2).unwrap();
            let home = there.transport_edge(&g.vertex(nb.target).seed.b, a2, Direction::Backward, back).unwrap();
            assert_eq!(home, f);
        }
    }

    #[test]
    fn pentagon_loop_conjugates() {
        let g = ExchangeGraph::enumerate(&polygon_fan(5).unwrap(), Radius::Full, DEFAULT_BUDGET).unwrap();
        let f = TwistFrame::standard(2);
        let (end, h) = transport_path(&g, 0, &f, &[1, 2, 1, 2, 1].map(ArcId)).unwrap();
        assert_eq!(end, 0);
        assert_ne!(h, f);
        h.check_band_generators().unwrap();
    }

    #[test]
    fn free_group_frames_on_annulus() {
        let g = ExchangeGraph::enumerate(&annulus(1, 1).unwrap(), Radius::Bounded(3), DEFAULT_BUDGET).unwrap();
        let base = TwistFrame::new(vec![FreeWord::generator(1), FreeWord::generator(2)]);
        let frames = tree_frames(&g, base).unwrap();
        assert_eq!(frames.len(), g.vertex_count());
    }

    #[test]
    fn disc_frames_match_fan() {
        let fan = polygon_fan(6).unwrap();
        assert_eq!(disc_frame(&fan).unwrap(), TwistFrame::standard(3));
        let t = fan.flip(ArcId(2)).unwrap();
        let q = quiver_from_triangulation(&fan);
        assert_eq!(disc_frame(&t).unwrap(), transport_frame(&TwistFrame::standard(3), &q, ArcId(2)).unwrap());
        assert!(matches!(disc_frame(&annulus(1, 1).unwrap()), Err(Error::OracleUnavailable(_))));
    }
}
