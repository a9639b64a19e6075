//! Breadth-first enumeration of exchange graphs.
//!
//! Vertices are seeds up to relabeling. Each vertex keeps the labeling it
//! was discovered with; an edge records how the labels carried along the
//! flip map onto the labels stored at its far end.

mod export;
mod homology;
mod relations;

use std::collections::HashMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::surface::{quiver_from_triangulation, ArcId, Triangulation};
use crate::StdSeed;

pub use export::{to_dot, GraphFile};
pub use homology::{homology_h1, FaceCensus, Homology};
pub use relations::{relation_closure_check, ClosureFailure, ClosureReport, RelationInstance, RelationKind};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphVertex {
    pub triangulation: Triangulation,
    pub seed: StdSeed,
    pub depth: usize,
    /// Some flip from here leaves the enumerated ball.
    pub frontier: bool,
}

/// Where a flip leads. `relabel[i]` is the label index at `target` of the
/// arc carrying index `i` before the flip; the flipped arc keeps its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Neighbor {
    pub target: usize,
    pub relabel: Box<[u16]>,
}

impl Neighbor {
    pub fn map(&self, arc: ArcId) -> ArcId {
        ArcId::from_index(self.relabel[arc.index()] as usize)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Radius {
    Full,
    Bounded(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeGraph {
    radius: Radius,
    budget: usize,
    vertices: Vec<GraphVertex>,
    adjacency: Vec<Vec<Option<Neighbor>>>,
}

fn invert(perm: &[u16]) -> Box<[u16]> {
    let mut inv = vec![0u16; perm.len()];
    for (i, &p) in perm.iter().enumerate() {
        inv[p as usize] = i as u16;
    }
    inv.into_boxed_slice()
}

impl ExchangeGraph {
    /// BFS from `base` in order of arc ids. With [`Radius::Bounded`],
    /// vertices at the last depth are only linked to vertices already found.
    pub fn enumerate(base: &Triangulation, radius: Radius, budget: usize) -> Result<Self> {
        let budget = budget.max(1);
        let n = base.arc_count();
        let seed = StdSeed::initial(quiver_from_triangulation(base).b)?;
        let mut g = ExchangeGraph { radius, budget, vertices: Vec::new(), adjacency: Vec::new() };
        let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
        index.insert(seed.unlabeled_key(), 0);
        g.vertices.push(GraphVertex { triangulation: base.clone(), seed, depth: 0, frontier: false });
        g.adjacency.push(vec![None; n]);

        let mut layer = vec![0usize];
        let mut depth = 0;
        while !layer.is_empty() {
            let closing = radius == Radius::Bounded(depth);
            let flips: Vec<Vec<(usize, Triangulation, StdSeed, Vec<u8>)>> = layer
                .par_iter()
                .map(|&u| {
                    (0..n)
                        .filter(|&a| g.adjacency[u][a].is_none())
                        .map(|a| {
                            let v = &g.vertices[u];
                            let t = v.triangulation.flip(ArcId::from_index(a))?;
                            let s = v.seed.mutate(a)?;
                            let key = s.unlabeled_key();
                            Ok((a, t, s, key))
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;

            let mut next = Vec::new();
            for (&u, results) in layer.iter().zip(flips) {
                for (a, t, s, key) in results {
                    if g.adjacency[u][a].is_some() {
                        continue;
                    }
                    let target = match index.get(&key) {
                        Some(&v) => v,
                        None if closing => {
                            g.vertices[u].frontier = true;
                            continue;
                        }
                        None => {
                            if g.vertices.len() >= budget {
                                return Err(Error::BudgetExceeded { budget });
                            }
                            let v = g.vertices.len();
                            index.insert(key, v);
                            g.vertices.push(GraphVertex { triangulation: t, seed: s.clone(), depth: depth + 1, frontier: false });
                            g.adjacency.push(vec![None; n]);
                            next.push(v);
                            v
                        }
                    };
                    let perm = s.matching(&g.vertices[target].seed).ok_or_else(|| {
                        Error::InvalidTriangulation(format!("seed key collision at vertex {target}"))
                    })?;
                    g.link(u, a, target, perm.iter().map(|&p| p as u16).collect());
                }
            }
            layer = next;
            depth += 1;
        }
        Ok(g)
    }

    fn link(&mut self, u: usize, a: usize, v: usize, relabel: Box<[u16]>) {
        let back = relabel[a] as usize;
        let inv = invert(&relabel);
        self.adjacency[u][a] = Some(Neighbor { target: v, relabel });
        self.adjacency[v][back] = Some(Neighbor { target: u, relabel: inv });
    }

    pub(crate) fn from_parts(
        radius: Radius,
        budget: usize,
        vertices: Vec<GraphVertex>,
        edges: &[(usize, usize, ArcId, ArcId)],
    ) -> Result<Self> {
        let n = vertices.first().map_or(0, |v| v.seed.size());
        let mut g = ExchangeGraph { radius, budget, adjacency: vec![vec![None; n]; vertices.len()], vertices };
        for &(u, v, a, b) in edges {
            let bad = |m: &str| Error::InvalidTriangulation(format!("edge {u}-{v}: {m}"));
            if u >= g.vertices.len() || v >= g.vertices.len() || a.0 == 0 || a.index() >= n {
                return Err(bad("out of range"));
            }
            let s = g.vertices[u].seed.mutate(a.index())?;
            let perm = s.matching(&g.vertices[v].seed).ok_or_else(|| bad("seeds are not related by this flip"))?;
            if perm[a.index()] != b.index() {
                return Err(bad("arc labels disagree"));
            }
            g.link(u, a.index(), v, perm.iter().map(|&p| p as u16).collect());
        }
        Ok(g)
    }

    pub fn radius(&self) -> Radius {
        self.radius
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn rank(&self) -> usize {
        self.vertices.first().map_or(0, |v| v.seed.size())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[GraphVertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &GraphVertex {
        &self.vertices[v]
    }

    pub fn neighbor(&self, v: usize, arc: ArcId) -> Option<&Neighbor> {
        self.adjacency.get(v)?.get(arc.index())?.as_ref()
    }

    /// Unoriented edges `(u, v, arc at u, arc at v)`, each listed once from
    /// its smaller end.
    pub fn edges(&self) -> Vec<(usize, usize, ArcId, ArcId)> {
        let mut out = Vec::new();
        for (u, adj) in self.adjacency.iter().enumerate() {
            for (a, nb) in adj.iter().enumerate() {
                if let Some(nb) = nb {
                    let b = nb.relabel[a] as usize;
                    if (u, a) < (nb.target, b) {
                        out.push((u, nb.target, ArcId::from_index(a), ArcId::from_index(b)));
                    }
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().flatten().filter(|x| x.is_some()).count() / 2
    }

    /// No vertex has a flip leaving the graph.
    pub fn is_complete(&self) -> bool {
        self.vertices.iter().all(|v| !v.frontier)
    }

    /// Follow flips given in the labels of `start`, carried along the path.
    /// Returns the end vertex and where each starting label ended up.
    pub fn walk(&self, start: usize, arcs: &[ArcId]) -> Option<(usize, Vec<usize>)> {
        let mut at = start;
        let mut sigma: Vec<usize> = (0..self.rank()).collect();
        for &a in arcs {
            let nb = self.neighbor(at, ArcId::from_index(*sigma.get(a.index())?))?;
            for s in sigma.iter_mut() {
                *s = nb.relabel[*s] as usize;
            }
            at = nb.target;
        }
        Some((at, sigma))
    }

    /// `(vertex, arc)` pairs in BFS order whose flip leads to a vertex first
    /// discovered from there.
    pub fn bfs_tree(&self) -> Vec<Option<(usize, ArcId)>> {
        let mut parent = vec![None; self.vertices.len()];
        let mut seen = vec![false; self.vertices.len()];
        if self.vertices.is_empty() {
            return parent;
        }
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0]);
        while let Some(u) = queue.pop_front() {
            for a in 0..self.rank() {
                if let Some(nb) = &self.adjacency[u][a] {
                    if !seen[nb.target] {
                        seen[nb.target] = true;
                        parent[nb.target] = Some((u, ArcId::from_index(a)));
                        queue.push_back(nb.target);
                    }
                }
            }
        }
        parent
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{annulus, polygon_fan};

    fn full(t: &Triangulation) -> ExchangeGraph {
        ExchangeGraph::enumerate(t, Radius::Full, DEFAULT_BUDGET).unwrap()
    }

    #[test]
    fn polygon_sizes() {
        let g = full(&polygon_fan(5).unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (5, 5));
        let g = full(&polygon_fan(6).unwrap());
        assert_eq!((g.vertex_count(), g.edge_count()), (14, 21));
        assert!(g.is_complete());
    }

    #[test]
    fn annulus_line() {
        let g = ExchangeGraph::enumerate(&annulus(1, 1).unwrap(), Radius::Bounded(5), 100).unwrap();
        assert_eq!(g.vertex_count(), 11);
        assert_eq!(g.edge_count(), 10);
        for (v, gv) in g.vertices().iter().enumerate() {
            let degree = g.arcs_linked(v);
            assert_eq!(gv.frontier, gv.depth == 5);
            assert_eq!(degree, if gv.depth == 5 { 1 } else { 2 });
        }
        assert!(!g.is_complete());
    }

    #[test]
    fn budget_is_loud() {
        let r = ExchangeGraph::enumerate(&annulus(1, 1).unwrap(), Radius::Full, 50);
        assert_eq!(r.unwrap_err(), Error::BudgetExceeded { budget: 50 });
    }

    #[test]
    fn walks_and_relabels() {
        let g = full(&polygon_fan(5).unwrap());
        // five alternating flips return with the two labels swapped
        let (end, sigma) = g.walk(0, &[1, 2, 1, 2, 1].map(ArcId)).unwrap();
        assert_eq!(end, 0);
        assert_eq!(sigma, vec![1, 0]);
        for (v, gv) in g.vertices().iter().enumerate() {
            for a in gv.triangulation.arcs() {
                let nb = g.neighbor(v, a).unwrap();
                let t = gv.triangulation.flip(a).unwrap();
                let perm: Vec<usize> = nb.relabel.iter().map(|&p| p as usize).collect();
                assert_eq!(t.relabel(&perm).unwrap(), g.vertex(nb.target).triangulation);
            }
        }
    }

    impl ExchangeGraph {
        fn arcs_linked(&self, v: usize) -> usize {
            self.adjacency[v].iter().filter(|x| x.is_some()).count()
        }
    }
}
