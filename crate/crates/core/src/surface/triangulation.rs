use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{ArcId, Edge, MarkedSurface};
use crate::error::{Error, Result};

/// `(triangle, side)` position of an edge inside a triangulation.
pub type Slot = (usize, usize);

/// Ideal triangulation stored as a combinatorial map.
///
/// Each triangle lists its three sides anticlockwise; side `i` starts at
/// corner `i`. Two triangulations are equal iff their canonical maps agree
/// label for label, which is isotopy for discs and strictly finer than
/// isotopy modulo mapping classes elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Triangulation {
    surface: MarkedSurface,
    triangles: Vec<[Edge; 3]>,
    arc_slots: Vec<[Slot; 2]>,
}

/// How two distinct arcs sit relative to each other.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PairClass {
    Disjoint,
    OneSharedTriangle,
    TwoSharedTriangles,
}

/// Triangles as vertices, one edge per internal arc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGraph {
    pub vertex_count: usize,
    /// `(t, u, arc)` with `t <= u`, sorted by arc.
    pub edges: Vec<(usize, usize, ArcId)>,
}

impl DualGraph {
    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().map(|&(a, b, _)| (a == v) as usize + (b == v) as usize).sum()
    }

    /// Number of edges joining `a` and `b`.
    pub fn multiplicity(&self, a: usize, b: usize) -> usize {
        let (a, b) = (a.min(b), a.max(b));
        self.edges.iter().filter(|&&(x, y, _)| (x, y) == (a, b)).count()
    }
}

fn min_rotation(t: [Edge; 3]) -> [Edge; 3] {
    let r1 = [t[1], t[2], t[0]];
    let r2 = [t[2], t[0], t[1]];
    *[t, r1, r2].iter().min().unwrap()
}

/// Rotate `t` so that side `i` comes first.
fn rotate_to(t: &[Edge; 3], i: usize) -> [Edge; 3] {
    [t[i], t[(i + 1) % 3], t[(i + 2) % 3]]
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb)] = ra.min(rb);
        }
    }
}

impl Triangulation {
    /// Build from anticlockwise triangles; the result is canonicalized and
    /// validated against `surface`.
    pub fn from_triangles(surface: MarkedSurface, triangles: Vec<[Edge; 3]>) -> Result<Self> {
        let mut triangles: Vec<[Edge; 3]> = triangles.into_iter().map(min_rotation).collect();
        triangles.sort();
        let n = surface.arc_count();
        let bad = |msg: String| Error::InvalidTriangulation(msg);

        if triangles.len() != surface.triangle_count() {
            return Err(bad(format!(
                "{} triangles, expected {}",
                triangles.len(),
                surface.triangle_count()
            )));
        }
        let mut arc_slots: Vec<Vec<Slot>> = vec![Vec::new(); n];
        let mut boundary_seen: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for (t, tri) in triangles.iter().enumerate() {
            for (i, e) in tri.iter().enumerate() {
                if tri[(i + 1) % 3] == *e {
                    return Err(bad(format!("triangle {t} uses {e} twice")));
                }
                match *e {
                    Edge::Arc(a) => {
                        if a.0 == 0 || a.index() >= n {
                            return Err(bad(format!("arc id {} outside 1..={n}", a.0)));
                        }
                        arc_slots[a.index()].push((t, i));
                    }
                    Edge::Boundary { component, position } => {
                        let ok = surface
                            .boundaries()
                            .get(component as usize)
                            .is_some_and(|&p| position < p);
                        if !ok {
                            return Err(bad(format!("no boundary segment {e} on this surface")));
                        }
                        *boundary_seen.entry((component, position)).or_insert(0) += 1;
                    }
                }
            }
        }
        if let Some((i, s)) = arc_slots.iter().enumerate().find(|(_, s)| s.len() != 2) {
            return Err(bad(format!("{} has {} incidences", ArcId::from_index(i), s.len())));
        }
        let m = surface.marked_points() as usize;
        if boundary_seen.len() != m || boundary_seen.values().any(|&c| c != 1) {
            return Err(bad("every boundary segment must be used exactly once".into()));
        }
        let arc_slots: Vec<[Slot; 2]> = arc_slots.into_iter().map(|s| [s[0], s[1]]).collect();
        let tri = Triangulation { surface, triangles, arc_slots };
        tri.check_vertices()?;
        tri.check_connected()?;
        Ok(tri)
    }

    /// Vertex classes of corners, each tagged with its marked point.
    fn check_vertices(&self) -> Result<()> {
        let classes = self.vertex_classes();
        let m = self.surface.marked_points() as usize;
        for (root, labels) in &classes {
            if labels.len() != 1 {
                return Err(Error::InvalidTriangulation(format!(
                    "vertex class of corner {root} carries marked points {labels:?}"
                )));
            }
        }
        if classes.len() != m {
            return Err(Error::InvalidTriangulation(format!(
                "{} vertex classes, expected {m}",
                classes.len()
            )));
        }
        if self.euler_characteristic() != self.surface.euler_characteristic() {
            return Err(Error::InvalidTriangulation("Euler characteristic mismatch".into()));
        }
        Ok(())
    }

    fn vertex_classes(&self) -> BTreeMap<usize, std::collections::BTreeSet<(u32, u32)>> {
        let corners = 3 * self.triangles.len();
        let mut uf = UnionFind((0..corners).collect());
        let c = |t: usize, i: usize| 3 * t + i % 3;
        for &[(t, i), (u, j)] in &self.arc_slots {
            uf.union(c(t, i), c(u, j + 1));
            uf.union(c(t, i + 1), c(u, j));
        }
        let mut classes: BTreeMap<usize, std::collections::BTreeSet<(u32, u32)>> = BTreeMap::new();
        for k in 0..corners {
            let r = uf.find(k);
            classes.entry(r).or_default();
        }
        for (t, tri) in self.triangles.iter().enumerate() {
            for (i, e) in tri.iter().enumerate() {
                if let Edge::Boundary { component, position } = *e {
                    let p = self.surface.boundaries()[component as usize];
                    let start = uf.find(c(t, i));
                    let end = uf.find(c(t, i + 1));
                    classes.get_mut(&start).unwrap().insert((component, position));
                    classes.get_mut(&end).unwrap().insert((component, (position + 1) % p));
                }
            }
        }
        classes
    }

    fn check_connected(&self) -> Result<()> {
        let mut uf = UnionFind((0..self.triangles.len()).collect());
        for &[(t, _), (u, _)] in &self.arc_slots {
            uf.union(t, u);
        }
        if (0..self.triangles.len()).any(|t| uf.find(t) != 0) {
            return Err(Error::InvalidTriangulation("triangles do not form a connected surface".into()));
        }
        Ok(())
    }

    /// `V - E + F` recomputed from the vertex cycles of the map.
    pub fn euler_characteristic(&self) -> i64 {
        let v = self.vertex_classes().len() as i64;
        let e = (self.arc_slots.len() + self.surface.marked_points() as usize) as i64;
        v - e + self.triangles.len() as i64
    }

    pub fn surface(&self) -> &MarkedSurface {
        &self.surface
    }

    pub fn triangles(&self) -> &[[Edge; 3]] {
        &self.triangles
    }

    pub fn arc_count(&self) -> usize {
        self.arc_slots.len()
    }

    pub fn triangle_count(&self) -> usize {
        self.triangles.len()
    }

    pub fn boundary_segment_count(&self) -> usize {
        self.triangles.iter().flatten().filter(|e| !e.is_arc()).count()
    }

    pub fn arcs(&self) -> impl Iterator<Item = ArcId> {
        (1..=self.arc_slots.len() as u32).map(ArcId)
    }

    pub fn slots(&self, arc: ArcId) -> Result<[Slot; 2]> {
        if arc.0 == 0 {
            return Err(Error::UnknownArc(arc));
        }
        self.arc_slots.get(arc.index()).copied().ok_or(Error::UnknownArc(arc))
    }

    /// Triangles adjacent to `arc`, in slot order.
    pub fn adjacent_triangles(&self, arc: ArcId) -> Result<(usize, usize)> {
        let [(t, _), (u, _)] = self.slots(arc)?;
        Ok((t, u))
    }

    /// Replace `arc` by the other diagonal of its quadrilateral. The label
    /// is kept.
    pub fn flip(&self, arc: ArcId) -> Result<Triangulation> {
        let [(t, i), (u, j)] = self.slots(arc)?;
        let [e, a, b] = rotate_to(&self.triangles[t], i);
        let [_, c, d] = rotate_to(&self.triangles[u], j);
        let mut triangles = self.triangles.clone();
        triangles[t] = [e, d, a];
        triangles[u] = [e, b, c];
        Triangulation::from_triangles(self.surface.clone(), triangles)
    }

    /// Rename arc `i` (0-based index) to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Triangulation> {
        if perm.len() != self.arc_count() {
            return Err(Error::Shape(format!("{} labels for {} arcs", perm.len(), self.arc_count())));
        }
        let triangles = self
            .triangles
            .iter()
            .map(|tri| {
                tri.map(|e| match e {
                    Edge::Arc(a) => Edge::Arc(ArcId::from_index(perm[a.index()])),
                    b => b,
                })
            })
            .collect();
        Triangulation::from_triangles(self.surface.clone(), triangles)
    }

    /// `perm` with `self.relabel(perm) == *other`, if the two differ only by
    /// arc labels. Boundary segments are held fixed.
    pub fn relabeling_to(&self, other: &Triangulation) -> Option<Vec<usize>> {
        if self.surface != other.surface {
            return None;
        }
        let find_boundary = |t: &Triangulation, e: Edge| {
            t.triangles.iter().enumerate().find_map(|(k, tri)| tri.iter().position(|&x| x == e).map(|i| (k, i)))
        };
        let start = self.triangles.iter().flatten().copied().find(|e| !e.is_arc())?;
        let (s0, i0) = find_boundary(self, start)?;
        let (o0, j0) = find_boundary(other, start)?;

        let mut perm = vec![usize::MAX; self.arc_count()];
        // triangle of self -> (triangle of other, rotation offset)
        let mut placed: Vec<Option<(usize, usize)>> = vec![None; self.triangles.len()];
        placed[s0] = Some((o0, (j0 + 3 - i0) % 3));
        let mut stack = vec![s0];
        while let Some(s) = stack.pop() {
            let (o, shift) = placed[s].unwrap();
            for i in 0..3 {
                let (e, f) = (self.triangles[s][i], other.triangles[o][(i + shift) % 3]);
                match (e, f) {
                    (Edge::Arc(a), Edge::Arc(b)) => {
                        if perm[a.index()] == usize::MAX {
                            perm[a.index()] = b.index();
                        } else if perm[a.index()] != b.index() {
                            return None;
                        }
                        let [x, y] = self.arc_slots[a.index()];
                        let (t2, i2) = if x == (s, i) { y } else { x };
                        let [p, q] = other.arc_slots[b.index()];
                        let (u2, j2) = if p == (o, (i + shift) % 3) { q } else { p };
                        let want = (u2, (j2 + 3 - i2) % 3);
                        match placed[t2] {
                            None => {
                                placed[t2] = Some(want);
                                stack.push(t2);
                            }
                            Some(have) if have != want => return None,
                            _ => {}
                        }
                    }
                    (e, f) if e == f && !e.is_arc() => {}
                    _ => return None,
                }
            }
        }
        if perm.contains(&usize::MAX) {
            return None;
        }
        (self.relabel(&perm).ok()? == *other).then_some(perm)
    }

    /// The four sides around `arc`, anticlockwise, rotated to start at the
    /// smallest side. Sides may repeat.
    pub fn quadrilateral(&self, arc: ArcId) -> Result<[Edge; 4]> {
        let [(t, i), (u, j)] = self.slots(arc)?;
        let [_, a, b] = rotate_to(&self.triangles[t], i);
        let [_, c, d] = rotate_to(&self.triangles[u], j);
        let q = [c, d, a, b];
        let best = (0..4).min_by_key(|&r| [q[r], q[(r + 1) % 4], q[(r + 2) % 4], q[(r + 3) % 4]]).unwrap();
        Ok([q[best], q[(best + 1) % 4], q[(best + 2) % 4], q[(best + 3) % 4]])
    }

    /// Number of triangles containing both arcs, as a [`PairClass`].
    pub fn classify_pair(&self, a: ArcId, b: ArcId) -> Result<PairClass> {
        self.slots(a)?;
        self.slots(b)?;
        if a == b {
            return Err(Error::SameArc(a));
        }
        let shared = self
            .triangles
            .iter()
            .filter(|tri| tri.contains(&Edge::Arc(a)) && tri.contains(&Edge::Arc(b)))
            .count();
        Ok(match shared {
            0 => PairClass::Disjoint,
            1 => PairClass::OneSharedTriangle,
            _ => PairClass::TwoSharedTriangles,
        })
    }

    pub fn dual_graph(&self) -> DualGraph {
        let edges = self
            .arcs()
            .map(|a| {
                let [(t, _), (u, _)] = self.arc_slots[a.index()];
                assert_ne!(t, u, "arc {a} meets a single triangle twice");
                (t.min(u), t.max(u), a)
            })
            .collect();
        DualGraph { vertex_count: self.triangles.len(), edges }
    }
}
