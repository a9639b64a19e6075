use serde::{Deserialize, Serialize};

use super::{ArcId, Triangulation};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// One arrow, with the angle it was read from when the quiver comes from
/// a triangulation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Angle {
    pub from: ArcId,
    pub to: ArcId,
    /// `(triangle, corner)`
    pub at: Option<(usize, usize)>,
}

/// A 3-cycle `cycle[0] -> cycle[1] -> cycle[2] -> cycle[0]` of the
/// potential. `arrows[i]` indexes the arrow `cycle[i] -> cycle[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PotentialTerm {
    pub cycle: [ArcId; 3],
    pub arrows: [usize; 3],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverWithPotential {
    /// `b[(i, j)]` is arrows `i -> j` minus arrows `j -> i`.
    pub b: Matrix<i64>,
    /// Arrows before 2-cycle cancellation.
    pub arrows: Vec<Angle>,
    pub potential: Vec<PotentialTerm>,
}

impl QuiverWithPotential {
    /// Hand-built quiver on arcs `1..=n`. Potential terms are given by
    /// their vertex cycles and pick distinct arrows along it, in the order
    /// the arrows were listed.
    pub fn from_arrows(n: usize, arrows: &[(u32, u32)], potential: &[[u32; 3]]) -> Result<Self> {
        let arrows: Vec<Angle> = arrows
            .iter()
            .map(|&(f, t)| Angle { from: ArcId(f), to: ArcId(t), at: None })
            .collect();
        let mut used = vec![false; arrows.len()];
        let mut terms = Vec::new();
        for cyc in potential {
            let cycle = cyc.map(ArcId);
            let mut ids = [0; 3];
            for i in 0..3 {
                let (f, t) = (cycle[i], cycle[(i + 1) % 3]);
                ids[i] = (0..arrows.len())
                    .find(|&k| !used[k] && arrows[k].from == f && arrows[k].to == t)
                    .ok_or_else(|| {
                        Error::UnsupportedPattern(format!("potential term {cyc:?} lacks arrow {f}->{t}"))
                    })?;
                used[ids[i]] = true;
            }
            terms.push(PotentialTerm { cycle, arrows: ids });
        }
        Self::assemble(n, arrows, terms)
    }

    fn assemble(n: usize, arrows: Vec<Angle>, mut potential: Vec<PotentialTerm>) -> Result<Self> {
        let mut b = Matrix::<i64>::zeros(n, n);
        for a in &arrows {
            let (i, j) = (a.from.index(), a.to.index());
            if i >= n || j >= n || a.from.0 == 0 || a.to.0 == 0 {
                return Err(Error::UnknownArc(if i >= n { a.from } else { a.to }));
            }
            if i == j {
                return Err(Error::UnsupportedPattern(format!("loop at {}", a.from)));
            }
            b[(i, j)] += 1;
            b[(j, i)] -= 1;
        }
        for term in &mut potential {
            let r = (0..3).min_by_key(|&r| term.cycle[r]).unwrap();
            term.cycle.rotate_left(r);
            term.arrows.rotate_left(r);
        }
        potential.sort_by_key(|t| (t.cycle, t.arrows));
        Ok(QuiverWithPotential { b, arrows, potential })
    }

    pub fn size(&self) -> usize {
        self.b.rows()
    }

    pub fn vertices(&self) -> impl Iterator<Item = ArcId> {
        (1..=self.size() as u32).map(ArcId)
    }

    /// `max(B[i][j], 0)`: arrows `i -> j` after cancellation.
    pub fn arrows_between(&self, from: ArcId, to: ArcId) -> i64 {
        self.b[(from.index(), to.index())].max(0)
    }

    /// Largest `|B[i][j]|`.
    pub fn multiplicity(&self) -> i64 {
        self.b.entries().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// Potential terms through the three vertices, in any cyclic order.
    pub fn terms_on(&self, vs: [ArcId; 3]) -> impl Iterator<Item = &PotentialTerm> {
        let mut sorted = vs;
        sorted.sort();
        self.potential.iter().filter(move |t| {
            let mut c = t.cycle;
            c.sort();
            c == sorted
        })
    }
}

/// Arrows from the angles of `t`, potential from its all-arc triangles.
///
/// In an anticlockwise triangle `[s0, s1, s2]` the angle at corner `i`
/// between `s(i-1)` and `s(i)` carries the arrow `s(i) -> s(i-1)`.
pub fn quiver_from_triangulation(t: &Triangulation) -> QuiverWithPotential {
    let mut arrows = Vec::new();
    let mut potential = Vec::new();
    for (k, tri) in t.triangles().iter().enumerate() {
        let mut ids = [usize::MAX; 3];
        for corner in 0..3 {
            let prev = tri[(corner + 2) % 3];
            if let (Some(to), Some(from)) = (prev.arc(), tri[corner].arc()) {
                ids[corner] = arrows.len();
                arrows.push(Angle { from, to, at: Some((k, corner)) });
            }
        }
        if let [Some(a), Some(b), Some(c)] = tri.map(|e| e.arc()) {
            // a -> c -> b -> a via corners 0, 2, 1
            potential.push(PotentialTerm { cycle: [a, c, b], arrows: [ids[0], ids[2], ids[1]] });
        }
    }
    QuiverWithPotential::assemble(t.arc_count(), arrows, potential).expect("triangulation arcs are in range")
}
