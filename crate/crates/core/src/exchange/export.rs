//! DOT and JSON forms of exchange graphs.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{ExchangeGraph, GraphVertex, Radius};
use crate::error::{Error, Result};
use crate::surface::{ArcId, Triangulation};
use crate::StdSeed;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub index: usize,
    pub depth: usize,
    pub frontier: bool,
    pub triangulation: Triangulation,
    pub seed: StdSeed,
}

/// Serialized graph. `radius` is absent for fully enumerated graphs;
/// each edge is `[u, v, arc at u, arc at v]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    pub budget: usize,
    pub complete: bool,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub vertices: Vec<VertexRecord>,
    pub edges: Vec<(usize, usize, ArcId, ArcId)>,
}

impl GraphFile {
    pub fn from_graph(g: &ExchangeGraph) -> Self {
        GraphFile {
            radius: match g.radius() {
                Radius::Full => None,
                Radius::Bounded(r) => Some(r),
            },
            budget: g.budget(),
            complete: g.is_complete(),
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
            vertices: g
                .vertices()
                .iter()
                .enumerate()
                .map(|(index, v)| VertexRecord {
                    index,
                    depth: v.depth,
                    frontier: v.frontier,
                    triangulation: v.triangulation.clone(),
                    seed: v.seed.clone(),
                })
                .collect(),
            edges: g.edges(),
        }
    }

    pub fn into_graph(self) -> Result<ExchangeGraph> {
        let radius = self.radius.map_or(Radius::Full, Radius::Bounded);
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for (i, v) in self.vertices.into_iter().enumerate() {
            if v.index != i {
                return Err(Error::Serde(format!("vertex {} listed at position {i}", v.index)));
            }
            vertices.push(GraphVertex { triangulation: v.triangulation, seed: v.seed, depth: v.depth, frontier: v.frontier });
        }
        let g = ExchangeGraph::from_parts(radius, self.budget, vertices, &self.edges)?;
        if g.vertex_count() != self.vertex_count || g.edge_count() != self.edge_count || g.is_complete() != self.complete {
            return Err(Error::Serde("counts disagree with the vertex and edge lists".into()));
        }
        Ok(g)
    }
}

impl ExchangeGraph {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&GraphFile::from_graph(self)).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str::<GraphFile>(s)?.into_graph()
    }
}

/// Undirected DOT. An edge is labeled by its arc, or `a:b` when the two
/// ends carry different labels for it. Frontier vertices are dashed.
pub fn to_dot(g: &ExchangeGraph) -> String {
    let mut out = String::from("graph exchange {\n  node [shape=circle];\n");
    for (i, v) in g.vertices().iter().enumerate() {
        let style = if v.frontier { ", style=dashed" } else { "" };
        writeln!(out, "  {i} [label=\"{i}\"{style}];").unwrap();
    }
    for (u, v, a, b) in g.edges() {
        let label = if a == b { a.to_string() } else { format!("{a}:{b}") };
        writeln!(out, "  {u} -- {v} [label=\"{label}\"];").unwrap();
    }
    out.push_str("}\n");
    out
}
