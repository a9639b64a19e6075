//! A group-valued connection on the oriented exchange graph.
//!
//! Each forward flip `u -> v` at `a` carries an element `κ(u, a)`. Forward
//! flips along the BFS tree carry the identity; the flip back up a tree edge
//! carries the parent's frame entry, so that the local twist at the parent
//! maps to it. All other values are forced by the square, pentagon and
//! dumbbell relations, solved by propagation. Local twists elsewhere are
//! not imposed; they are checked afterwards against the transported frames.

use serde::{Deserialize, Serialize};

use super::frame::{Direction, TwistFrame};
use crate::error::{Error, Result};
use crate::exchange::ExchangeGraph;
use crate::group::Group;
use crate::surface::ArcId;

/// Flip variable, inverted or not.
#[derive(Clone, Copy, Debug)]
struct Factor(usize, bool);

/// Product of factors that must equal the identity.
#[derive(Clone, Debug)]
struct Equation(Vec<Factor>);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Connection<G> {
    rank: usize,
    kappa: Vec<G>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectionReport {
    pub flips: usize,
    pub relations: usize,
    /// Local twists whose image differs from the transported frame entry.
    pub twist_mismatches: Vec<(usize, ArcId)>,
}

fn value<G: Group>(Factor(i, inv): Factor, vars: &[Option<G>]) -> Option<G> {
    vars[i].as_ref().map(|x| if inv { x.inv() } else { x.clone() })
}

impl<G: Group> Connection<G> {
    /// Solve on a fully enumerated graph. `frames` are the tree frames from
    /// [`super::tree_frames`].
    pub fn solve(g: &ExchangeGraph, frames: &[TwistFrame<G>]) -> Result<(Self, ConnectionReport)> {
        if !g.is_complete() {
            return Err(Error::Truncated("connection"));
        }
        let n = g.rank();
        let one = frames
            .first()
            .and_then(|f| f.entries().first())
            .map(|x| x.one())
            .ok_or_else(|| Error::Connection("empty frame".into()))?;
        let var = |u: usize, a: ArcId| u * n + a.index();
        let mut vars: Vec<Option<G>> = vec![None; g.vertex_count() * n];

        for (v, parent) in g.bfs_tree().into_iter().enumerate() {
            if let Some((u, a)) = parent {
                let nb = g.neighbor(u, a).expect("tree edge");
                vars[var(u, a)] = Some(one.clone());
                vars[var(v, nb.map(a))] = Some(frames[u].get(a).expect("frame entry").clone());
            }
        }

        let mut equations = Vec::new();
        for u in 0..g.vertex_count() {
            for r in g.relation_instances(u) {
                let (Some(left), Some(right)) = (r.expand(g, &r.left), r.expand(g, &r.right)) else {
                    return Err(Error::Connection(format!("relation at {u} leaves the graph")));
                };
                let mut fs: Vec<Factor> = left.iter().map(|&(w, a)| Factor(var(w, a), false)).collect();
                fs.extend(right.iter().rev().map(|&(w, a)| Factor(var(w, a), true)));
                equations.push(Equation(fs));
            }
        }
        let relations = equations.len();

        loop {
            let mut progress = false;
            for eq in &equations {
                let unknown: Vec<usize> = eq
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, f)| vars[f.0].is_none())
                    .map(|(k, _)| k)
                    .collect();
                if unknown.len() != 1 {
                    continue;
                }
                let k = unknown[0];
                let prod = |fs: &[Factor]| {
                    fs.iter().fold(one.clone(), |acc, &f| acc.mul(&value(f, &vars).expect("known")))
                };
                // P X S = 1  =>  X = P⁻¹ S⁻¹
                let x = prod(&eq.0[..k]).inv().mul(&prod(&eq.0[k + 1..]).inv());
                let Factor(i, inv) = eq.0[k];
                vars[i] = Some(if inv { x.inv() } else { x });
                progress = true;
            }
            if !progress {
                break;
            }
        }

        let missing = vars.iter().filter(|x| x.is_none()).count();
        if missing > 0 {
            return Err(Error::Connection(format!("{missing} of {} flips are not determined by the relations", vars.len())));
        }
        let kappa: Vec<G> = vars.into_iter().map(|x| x.expect("solved")).collect();
        let conn = Connection { rank: n, kappa };

        for eq in &equations {
            let p = eq.0.iter().fold(one.clone(), |acc, &Factor(i, inv)| {
                acc.mul(&if inv { conn.kappa[i].inv() } else { conn.kappa[i].clone() })
            });
            if !p.is_one() {
                return Err(Error::Connection("relations are inconsistent".into()));
            }
        }

        let mut report = ConnectionReport { flips: conn.kappa.len(), relations, twist_mismatches: Vec::new() };
        for u in 0..g.vertex_count() {
            for a in (0..n).map(ArcId::from_index) {
                if conn.twist(g, u, a) != frames[u].get(a).cloned() {
                    report.twist_mismatches.push((u, a));
                }
            }
        }
        Ok((conn, report))
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Value on the forward flip at `a` out of `u`.
    pub fn forward(&self, u: usize, a: ArcId) -> &G {
        &self.kappa[u * self.rank + a.index()]
    }

    /// Value on one step, with the vertex it lands on.
    pub fn step(&self, g: &ExchangeGraph, u: usize, a: ArcId, dir: Direction) -> Option<(usize, G)> {
        let nb = g.neighbor(u, a)?;
        Some(match dir {
            Direction::Forward => (nb.target, self.forward(u, a).clone()),
            Direction::Backward => (nb.target, self.forward(nb.target, nb.map(a)).inv()),
        })
    }

    /// Image of a path of steps given in the labels of each vertex visited.
    pub fn path_image(&self, g: &ExchangeGraph, start: usize, steps: &[(ArcId, Direction)]) -> Option<(usize, G)> {
        let mut at = start;
        let mut acc = self.kappa.first()?.one();
        for &(a, d) in steps {
            let (next, x) = self.step(g, at, a, d)?;
            acc = acc.mul(&x);
            at = next;
        }
        Some((at, acc))
    }

    /// Image of the local twist at `a` based at `u`, conjugated back to the
    /// base along the BFS tree (whose flips carry the identity).
    pub fn twist(&self, g: &ExchangeGraph, u: usize, a: ArcId) -> Option<G> {
        let nb = g.neighbor(u, a)?;
        Some(self.forward(u, a).mul(self.forward(nb.target, nb.map(a))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::frame::{transport_path, tree_frames};
    use crate::exchange::{Radius, DEFAULT_BUDGET};
    use crate::surface::polygon_fan;

    fn solved(m: u32) -> (ExchangeGraph, Vec<TwistFrame>, Connection<crate::braid::GarsideNF>, ConnectionReport) {
        let g = ExchangeGraph::enumerate(&polygon_fan(m).unwrap(), Radius::Full, DEFAULT_BUDGET).unwrap();
        let frames = tree_frames(&g, TwistFrame::standard(m as usize - 3)).unwrap();
        let (c, r) = Connection::solve(&g, &frames).unwrap();
        (g, frames, c, r)
    }

    #[test]
    fn polygons_solve_and_match_twists() {
        for m in 4..=7 {
            let (_, _, _, report) = solved(m);
            assert!(report.twist_mismatches.is_empty(), "m={m}: {:?}", report.twist_mismatches);
        }
    }

    #[test]
    fn pentagon_loop_image_conjugates_frame() {
        let (g, frames, c, _) = solved(5);
        let path = [1, 2, 1, 2, 1].map(ArcId);
        let (end, h) = transport_path(&g, 0, &frames[0], &path).unwrap();
        assert_eq!(end, 0);
        let mut steps = Vec::new();
        let (mut at, mut sigma) = (0, vec![0usize, 1]);
        for a in path {
            let here = ArcId::from_index(sigma[a.index()]);
            steps.push((here, Direction::Forward));
            let nb = g.neighbor(at, here).unwrap();
            sigma.iter_mut().for_each(|s| *s = nb.relabel[*s] as usize);
            at = nb.target;
        }
        let (_, gamma) = c.path_image(&g, 0, &steps).unwrap();
        for l in 0..2 {
            assert_eq!(h.entries()[l], frames[0].entries()[l].conj(&gamma.inv()));
        }
        assert!(!gamma.is_one());
    }
}
