//! First homology of the 2-complex with squares and pentagons as faces.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{ExchangeGraph, RelationKind};
use crate::error::{Error, Result};
use crate::snf::invariant_factors_sparse;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCensus {
    pub squares: usize,
    pub pentagons: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Homology {
    pub vertices: usize,
    pub edges: usize,
    pub faces: FaceCensus,
    pub components: usize,
    /// First Betti number of the graph alone.
    pub graph_betti1: usize,
    pub rank_d2: usize,
    pub betti1: usize,
    pub torsion: Vec<BigInt>,
}

impl Homology {
    pub fn is_trivial(&self) -> bool {
        self.betti1 == 0 && self.torsion.is_empty()
    }
}

fn components(g: &ExchangeGraph) -> usize {
    let mut seen = vec![false; g.vertex_count()];
    let mut count = 0;
    for s in 0..g.vertex_count() {
        if seen[s] {
            continue;
        }
        count += 1;
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(u) = stack.pop() {
            for a in 0..g.rank() {
                if let Some(nb) = g.neighbor(u, crate::surface::ArcId::from_index(a)) {
                    if !seen[nb.target] {
                        seen[nb.target] = true;
                        stack.push(nb.target);
                    }
                }
            }
        }
    }
    count
}

pub fn homology_h1(g: &ExchangeGraph) -> Result<Homology> {
    if !g.is_complete() {
        return Err(Error::Truncated("homology"));
    }
    let edges = g.edges();
    // (vertex, arc index) -> (edge id, +1 if stored from this end)
    let mut lookup: HashMap<(usize, usize), (usize, i64)> = HashMap::new();
    for (e, &(u, v, a, b)) in edges.iter().enumerate() {
        lookup.insert((u, a.index()), (e, 1));
        lookup.insert((v, b.index()), (e, -1));
    }

    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut rows: Vec<Vec<(usize, i64)>> = Vec::new();
    let mut census = FaceCensus::default();
    for v in 0..g.vertex_count() {
        for r in g.relation_instances(v) {
            if r.kind == RelationKind::HexDumbbell || !r.complete {
                continue;
            }
            let (Some(left), Some(right)) = (r.expand(g, &r.left), r.expand(g, &r.right)) else {
                continue;
            };
            let mut row: Vec<(usize, i64)> = Vec::new();
            for &(u, a) in &left {
                let (e, s) = lookup[&(u, a.index())];
                row.push((e, s));
            }
            for &(u, a) in &right {
                let (e, s) = lookup[&(u, a.index())];
                row.push((e, -s));
            }
            let key: BTreeSet<usize> = row.iter().map(|x| x.0).collect();
            if key.len() != row.len() || !seen.insert(key.into_iter().collect()) {
                continue;
            }
            match r.kind {
                RelationKind::Square => census.squares += 1,
                _ => census.pentagons += 1,
            }
            row.sort();
            rows.push(row);
        }
    }

    let factors = invariant_factors_sparse(&rows, edges.len());
    let rank_d2 = factors.len();
    let comps = components(g);
    let rank_d1 = g.vertex_count() - comps;
    let graph_betti1 = edges.len() - rank_d1;
    Ok(Homology {
        vertices: g.vertex_count(),
        edges: edges.len(),
        faces: census,
        components: comps,
        graph_betti1,
        rank_d2,
        betti1: graph_betti1 - rank_d2,
        torsion: factors.into_iter().filter(|d| !d.is_one()).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exchange::{Radius, DEFAULT_BUDGET};
    use crate::surface::{annulus, polygon_fan};

    fn polygon(m: u32) -> Homology {
        let g = ExchangeGraph::enumerate(&polygon_fan(m).unwrap(), Radius::Full, DEFAULT_BUDGET).unwrap();
        homology_h1(&g).unwrap()
    }

    #[test]
    fn pentagon_and_hexagon() {
        let h = polygon(5);
        assert_eq!((h.vertices, h.edges, h.faces.pentagons, h.faces.squares), (5, 5, 1, 0));
        assert!(h.is_trivial());
        let h = polygon(6);
        assert_eq!((h.vertices, h.edges, h.graph_betti1), (14, 21, 8));
        assert_eq!(h.faces, FaceCensus { squares: 3, pentagons: 6 });
        assert_eq!(h.rank_d2, 8);
        assert!(h.is_trivial());
    }

    #[test]
    fn refuses_truncated() {
        let g = ExchangeGraph::enumerate(&annulus(1, 1).unwrap(), Radius::Bounded(3), 100).unwrap();
        assert_eq!(homology_h1(&g).unwrap_err(), Error::Truncated("homology"));
    }
}
