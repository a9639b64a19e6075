//! Square, pentagon and hexagonal-dumbbell relations in the exchange graph.
//!
//! A pair `(i, j)` is oriented so that there is no arrow `i -> j`. Writing
//! `x` for the forward flip at `j` and `y` for the one at `i`, each side is a
//! sequence of flips whose labels are carried along the path:
//!
//! | kind        | left            | right            |
//! |-------------|-----------------|------------------|
//! | square      | `x²  = [j, i]`  | `y²  = [i, j]`   |
//! | pentagon    | `x²  = [j, i]`  | `y³  = [i, j, i]`|
//! | dumbbell    | `x²y = [j, i, i]` | `yx² = [i, i, j]` |

use serde::{Deserialize, Serialize};

use super::ExchangeGraph;
use crate::surface::ArcId;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    Square,
    Pentagon,
    HexDumbbell,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationInstance {
    pub kind: RelationKind,
    pub base: usize,
    /// `(i, j)` with no arrow `i -> j` at `base`.
    pub arcs: (ArcId, ArcId),
    pub left: Vec<ArcId>,
    pub right: Vec<ArcId>,
    /// Both sides stay inside the enumerated graph.
    pub complete: bool,
}

impl RelationInstance {
    pub fn new(kind: RelationKind, base: usize, i: ArcId, j: ArcId) -> Self {
        let (left, right) = match kind {
            RelationKind::Square => (vec![j, i], vec![i, j]),
            RelationKind::Pentagon => (vec![j, i], vec![i, j, i]),
            RelationKind::HexDumbbell => (vec![j, i, i], vec![i, i, j]),
        };
        RelationInstance { kind, base, arcs: (i, j), left, right, complete: false }
    }

    /// Loops built from local twists that must close when this relation
    /// holds: `t_i t_j = t_j t_i` for squares, `t_i t_j t_i = t_j t_i t_j`
    /// for pentagons.
    pub fn braid_circuits(&self) -> Option<(Vec<ArcId>, Vec<ArcId>)> {
        let (i, j) = self.arcs;
        match self.kind {
            RelationKind::Square => Some((vec![i, i, j, j], vec![j, j, i, i])),
            RelationKind::Pentagon => Some((vec![i, i, j, j, i, i], vec![j, j, i, i, j, j])),
            RelationKind::HexDumbbell => None,
        }
    }

    /// Vertices and flipped arcs, in the labels of each vertex.
    pub fn expand(&self, g: &ExchangeGraph, path: &[ArcId]) -> Option<Vec<(usize, ArcId)>> {
        let mut out = Vec::with_capacity(path.len());
        let (mut at, mut sigma) = (self.base, (0..g.rank()).collect::<Vec<_>>());
        for &a in path {
            let here = ArcId::from_index(sigma[a.index()]);
            out.push((at, here));
            let nb = g.neighbor(at, here)?;
            sigma.iter_mut().for_each(|s| *s = nb.relabel[*s] as usize);
            at = nb.target;
        }
        Some(out)
    }
}

impl ExchangeGraph {
    /// Relations based at `v`, one per unordered arc pair whose arrows allow
    /// one. Disjoint pairs give a square only.
    pub fn relation_instances(&self, v: usize) -> Vec<RelationInstance> {
        let b = &self.vertex(v).seed.b;
        let n = self.rank();
        let mut out = Vec::new();
        for p in 0..n {
            for q in p + 1..n {
                let (i, j) = if b[(p, q)] > 0 { (q, p) } else { (p, q) };
                let kind = match b[(p, q)].abs() {
                    0 => RelationKind::Square,
                    1 => RelationKind::Pentagon,
                    2 => RelationKind::HexDumbbell,
                    _ => continue,
                };
                let mut r = RelationInstance::new(kind, v, ArcId::from_index(i), ArcId::from_index(j));
                r.complete = match (self.walk(v, &r.left), self.walk(v, &r.right)) {
                    (Some(_), Some(_)) => !self.vertex(v).frontier,
                    _ => false,
                };
                out.push(r);
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureFailure {
    pub instance: RelationInstance,
    pub left: Vec<ArcId>,
    pub right: Vec<ArcId>,
    pub ends: (usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    pub squares: usize,
    pub pentagons: usize,
    pub dumbbells: usize,
    pub incomplete: usize,
    pub circuits: usize,
    pub failures: Vec<ClosureFailure>,
}

impl ClosureReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Walk both sides of every complete relation, and the braid circuits of
/// squares and pentagons, checking that they end at the same vertex.
pub fn relation_closure_check(g: &ExchangeGraph) -> ClosureReport {
    let mut report = ClosureReport::default();
    for v in 0..g.vertex_count() {
        for r in g.relation_instances(v) {
            if !r.complete {
                report.incomplete += 1;
                continue;
            }
            match r.kind {
                RelationKind::Square => report.squares += 1,
                RelationKind::Pentagon => report.pentagons += 1,
                RelationKind::HexDumbbell => report.dumbbells += 1,
            }
            let mut sides = vec![(r.left.clone(), r.right.clone())];
            if let Some(c) = r.braid_circuits() {
                report.circuits += 1;
                sides.push(c);
            }
            for (left, right) in sides {
                let a = g.walk(v, &left).map(|x| x.0);
                let b = g.walk(v, &right).map(|x| x.0);
                match (a, b) {
                    (Some(a), Some(b)) if a == b => {}
                    (a, b) => report.failures.push(ClosureFailure {
                        instance: r.clone(),
                        left,
                        right,
                        ends: (a.unwrap_or(usize::MAX), b.unwrap_or(usize::MAX)),
                    }),
                }
            }
        }
    }
    report
}
