//! Bounded balls in the cover of the exchange graph whose deck group is the
//! braid twist group.
//!
//! Nodes are freely reduced paths of forward and backward flips from the
//! base. Two nodes are identified when a chain of relation rewrites joins
//! them; the closure is congruent, so identified nodes have identified
//! continuations.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use super::connection::Connection;
use super::frame::{disc_frame, tree_frames, Direction, TwistFrame};
use crate::braid::GarsideNF;
use crate::error::{Error, Result};
use crate::exchange::{ExchangeGraph, Radius, DEFAULT_BUDGET};
use crate::surface::{ArcId, Triangulation};

/// Longest relation side; rewrites near the edge of the ball may be missing.
pub const MAX_RELATION_DIAMETER: usize = 3;

/// A flip at `arc`, in the labels of the vertex it starts from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Step {
    pub arc: ArcId,
    pub dir: Direction,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallNode {
    pub parent: Option<(usize, Step)>,
    pub shadow: usize,
    pub depth: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Equal,
    Distinct,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct CoverBall {
    graph: ExchangeGraph,
    radius: usize,
    nodes: Vec<BallNode>,
    class: Vec<usize>,
    /// Per class root: step -> class root.
    moves: Vec<BTreeMap<Step, usize>>,
    frames: Option<Vec<TwistFrame>>,
    connection: Option<Connection<GarsideNF>>,
    rewrites: usize,
}

struct Closure {
    parent: Vec<usize>,
    moves: Vec<BTreeMap<Step, usize>>,
}

impl Closure {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merge two classes and everything their equal continuations reach.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let mut pending = vec![(a, b)];
        let mut merged = false;
        while let Some((a, b)) = pending.pop() {
            let (ra, rb) = (self.find(a), self.find(b));
            if ra == rb {
                continue;
            }
            merged = true;
            let (keep, gone) = (ra.min(rb), ra.max(rb));
            self.parent[gone] = keep;
            let moved = std::mem::take(&mut self.moves[gone]);
            for (s, t) in moved {
                match self.moves[keep].get(&s) {
                    Some(&u) => pending.push((u, t)),
                    None => {
                        self.moves[keep].insert(s, t);
                    }
                }
            }
        }
        merged
    }

    fn follow(&mut self, from: usize, s: Step) -> Option<usize> {
        let r = self.find(from);
        let t = *self.moves[r].get(&s)?;
        Some(self.find(t))
    }
}

fn inverse_step(g: &ExchangeGraph, at: usize, s: Step) -> Step {
    let nb = g.neighbor(at, s.arc).expect("step inside the graph");
    Step { arc: nb.map(s.arc), dir: s.dir.opposite() }
}

/// Build the ball of the given radius around `base`. Disc surfaces also get
/// frames and the braid-valued connection.
pub fn build_cover_ball(base: &Triangulation, radius: usize, budget: usize) -> Result<CoverBall> {
    if radius == 0 {
        return Err(Error::Shape("cover ball radius must be at least 1".into()));
    }
    let graph_radius = if base.surface().is_disc() { Radius::Full } else { Radius::Bounded(radius + MAX_RELATION_DIAMETER) };
    let graph = ExchangeGraph::enumerate(base, graph_radius, DEFAULT_BUDGET.max(budget))?;
    let n = graph.rank();

    let mut nodes = vec![BallNode { parent: None, shadow: 0, depth: 0 }];
    let mut edges: Vec<(usize, Step, usize)> = Vec::new();
    let mut layer = vec![0usize];
    for depth in 1..=radius {
        let mut next = Vec::new();
        for &p in &layer {
            let u = nodes[p].shadow;
            let back = nodes[p].parent.map(|(q, s)| inverse_step(&graph, nodes[q].shadow, s));
            for dir in [Direction::Forward, Direction::Backward] {
                for arc in (0..n).map(ArcId::from_index) {
                    let s = Step { arc, dir };
                    if Some(s) == back {
                        continue;
                    }
                    let Some(nb) = graph.neighbor(u, arc) else { continue };
                    if nodes.len() >= budget {
                        return Err(Error::BudgetExceeded { budget });
                    }
                    let c = nodes.len();
                    nodes.push(BallNode { parent: Some((p, s)), shadow: nb.target, depth });
                    edges.push((p, s, c));
                    next.push(c);
                }
            }
        }
        layer = next;
    }

    let mut cl = Closure { parent: (0..nodes.len()).collect(), moves: vec![BTreeMap::new(); nodes.len()] };
    for &(p, s, c) in &edges {
        cl.moves[p].insert(s, c);
        cl.moves[c].insert(inverse_step(&graph, nodes[p].shadow, s), p);
    }

    // relation sides as steps, per shadow vertex
    let mut sides: HashMap<usize, Vec<(Vec<Step>, Vec<Step>)>> = HashMap::new();
    for node in &nodes {
        sides.entry(node.shadow).or_insert_with(|| {
            graph
                .relation_instances(node.shadow)
                .iter()
                .filter_map(|r| {
                    let fwd = |p: Vec<(usize, ArcId)>| p.into_iter().map(|(_, arc)| Step { arc, dir: Direction::Forward }).collect();
                    Some((fwd(r.expand(&graph, &r.left)?), fwd(r.expand(&graph, &r.right)?)))
                })
                .collect()
        });
    }

    let mut rewrites = 0;
    loop {
        let mut changed = false;
        for p in 0..nodes.len() {
            if cl.find(p) != p {
                continue;
            }
            for (left, right) in &sides[&nodes[p].shadow] {
                let end = |cl: &mut Closure, path: &[Step]| path.iter().try_fold(p, |at, &s| cl.follow(at, s));
                if let (Some(a), Some(b)) = (end(&mut cl, left), end(&mut cl, right)) {
                    if cl.union(a, b) {
                        rewrites += 1;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }

    let class: Vec<usize> = (0..nodes.len()).map(|x| cl.find(x)).collect();
    for (x, &r) in class.iter().enumerate() {
        if nodes[x].shadow != nodes[r].shadow {
            return Err(Error::Connection(format!("relations identified nodes {x} and {r} over different vertices")));
        }
    }

    let (frames, connection) = if base.surface().is_disc() {
        let f0 = disc_frame(base)?;
        let tree = tree_frames(&graph, f0.clone())?;
        let (conn, _) = Connection::solve(&graph, &tree)?;
        let mut frames: Vec<TwistFrame> = Vec::with_capacity(nodes.len());
        for node in &nodes {
            let f = match node.parent {
                None => f0.clone(),
                Some((p, s)) => {
                    let u = nodes[p].shadow;
                    let nb = graph.neighbor(u, s.arc).expect("tree step");
                    frames[p].transport_edge(&graph.vertex(u).seed.b, s.arc, s.dir, nb)?
                }
            };
            frames.push(f);
        }
        (Some(frames), Some(conn))
    } else {
        (None, None)
    };

    Ok(CoverBall { graph, radius, nodes, class, moves: cl.moves, frames, connection, rewrites })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberEntry {
    pub class: usize,
    pub path: Vec<Step>,
    pub loop_image: Option<GarsideNF>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReport {
    pub shadow: usize,
    pub entries: Vec<FiberEntry>,
    /// Every pair of entries is decided Distinct.
    pub pairwise_distinct: bool,
    /// Disc only: the loop images are pairwise different braids.
    pub images_distinct: Option<bool>,
}

impl CoverBall {
    pub fn graph(&self) -> &ExchangeGraph {
        &self.graph
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn nodes(&self) -> &[BallNode] {
        &self.nodes
    }

    pub fn rewrites(&self) -> usize {
        self.rewrites
    }

    /// Class representative (smallest node) of `node`.
    pub fn class_of(&self, node: usize) -> usize {
        self.class[node]
    }

    pub fn classes(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&x| self.class[x] == x).collect()
    }

    /// Smallest depth in the class of `node`.
    pub fn class_depth(&self, node: usize) -> usize {
        let r = self.class[node];
        (0..self.nodes.len()).filter(|&x| self.class[x] == r).map(|x| self.nodes[x].depth).min().unwrap_or(0)
    }

    /// Classes whose every rewrite fits inside the ball.
    pub fn is_interior(&self, node: usize) -> bool {
        self.class_depth(node) + MAX_RELATION_DIAMETER <= self.radius
    }

    /// Where a step leads from the class of `node`, if inside the ball.
    pub fn follow(&self, node: usize, s: Step) -> Option<usize> {
        self.moves[self.class[node]].get(&s).map(|&t| self.class[t])
    }

    /// Node reached by forward flips given in the labels of the base, with
    /// labels carried along as in [`ExchangeGraph::walk`].
    pub fn follow_forward(&self, node: usize, arcs: &[ArcId]) -> Option<usize> {
        let mut at = self.class[node];
        let mut sigma: Vec<usize> = (0..self.graph.rank()).collect();
        for &a in arcs {
            let here = ArcId::from_index(sigma[a.index()]);
            let nb = self.graph.neighbor(self.nodes[at].shadow, here)?;
            at = self.follow(at, Step { arc: here, dir: Direction::Forward })?;
            sigma.iter_mut().for_each(|s| *s = nb.relabel[*s] as usize);
        }
        Some(at)
    }

    /// Steps from the base to `node` along the path tree.
    pub fn path(&self, node: usize) -> Vec<Step> {
        let mut out = Vec::new();
        let mut at = node;
        while let Some((p, s)) = self.nodes[at].parent {
            out.push(s);
            at = p;
        }
        out.reverse();
        out
    }

    pub fn frame(&self, node: usize) -> Option<&TwistFrame> {
        self.frames.as_ref().map(|f| &f[node])
    }

    /// Braid image of the path to `node` (disc only). Over the base this is
    /// the deck transformation taking the base to `node`.
    pub fn loop_image(&self, node: usize) -> Option<GarsideNF> {
        let conn = self.connection.as_ref()?;
        let steps: Vec<(ArcId, Direction)> = self.path(node).into_iter().map(|s| (s.arc, s.dir)).collect();
        conn.path_image(&self.graph, 0, &steps).map(|x| x.1)
    }

    /// Class members whose transported frames differ from the
    /// representative's.
    pub fn frame_conflicts(&self) -> Vec<(usize, usize)> {
        let Some(frames) = &self.frames else { return Vec::new() };
        (0..self.nodes.len()).filter(|&x| frames[x] != frames[self.class[x]]).map(|x| (self.class[x], x)).collect()
    }

    /// Nodes whose braid image differs from their class representative's.
    pub fn image_conflicts(&self) -> Vec<usize> {
        if self.connection.is_none() {
            return Vec::new();
        }
        (0..self.nodes.len()).filter(|&x| self.loop_image(x) != self.loop_image(self.class[x])).collect()
    }

    /// Disc only. For every node `p` and arc `γ` whose double forward flip
    /// stays in the ball, the lifted loop `p · t_γ · p⁻¹` must map to the
    /// frame entry at `p`, the inverse braid twist of the dual arc. Returns
    /// the failures.
    pub fn double_flip_failures(&self) -> Vec<(usize, ArcId)> {
        let Some(frames) = &self.frames else { return Vec::new() };
        let mut out = Vec::new();
        for p in 0..self.nodes.len() {
            let Some(at_p) = self.loop_image(p) else { continue };
            for arc in (0..self.graph.rank()).map(ArcId::from_index) {
                let Some(q) = self.follow_forward_at(p, arc) else { continue };
                let Some(at_q) = self.loop_image(q) else { continue };
                if Some(&at_q.mul(&at_p.inverse()).expect("same strands")) != frames[p].get(arc) {
                    out.push((p, arc));
                }
            }
        }
        out
    }

    fn follow_forward_at(&self, p: usize, arc: ArcId) -> Option<usize> {
        let u = self.nodes[p].shadow;
        let nb = self.graph.neighbor(u, arc)?;
        let mid = self.follow(p, Step { arc, dir: Direction::Forward })?;
        self.follow(mid, Step { arc: nb.map(arc), dir: Direction::Forward })
    }

    pub fn same_vertex(&self, a: usize, b: usize) -> Verdict {
        if self.nodes[a].shadow != self.nodes[b].shadow {
            return Verdict::Distinct;
        }
        if self.class[a] == self.class[b] {
            return Verdict::Equal;
        }
        if let (Some(x), Some(y)) = (self.loop_image(a), self.loop_image(b)) {
            return if x == y { Verdict::Equal } else { Verdict::Distinct };
        }
        if self.is_interior(a) && self.is_interior(b) {
            Verdict::Distinct
        } else {
            Verdict::Inconclusive
        }
    }

    /// Interior classes over `shadow`.
    pub fn fiber_report(&self, shadow: usize) -> FiberReport {
        let reps: Vec<usize> =
            self.classes().into_iter().filter(|&c| self.nodes[c].shadow == shadow && self.is_interior(c)).collect();
        let entries: Vec<FiberEntry> =
            reps.iter().map(|&c| FiberEntry { class: c, path: self.path(c), loop_image: self.loop_image(c) }).collect();
        let mut pairwise_distinct = true;
        for (i, &x) in reps.iter().enumerate() {
            for &y in &reps[i + 1..] {
                pairwise_distinct &= self.same_vertex(x, y) == Verdict::Distinct;
            }
        }
        let images_distinct = self.connection.as_ref().map(|_| {
            let mut seen = std::collections::HashSet::new();
            entries.iter().all(|e| seen.insert(e.loop_image.clone()))
        });
        FiberReport { shadow, entries, pairwise_distinct, images_distinct }
    }

    /// Number of distinct classes reached from the class of `node` by
    /// forward steps, and number of classes with a forward step into it.
    pub fn forward_degrees(&self, node: usize) -> (usize, usize) {
        let r = self.class[node];
        let out = self.moves[r].iter().filter(|(s, _)| s.dir == Direction::Forward).count();
        let inn = self.moves[r].iter().filter(|(s, _)| s.dir == Direction::Backward).count();
        (out, inn)
    }
}
