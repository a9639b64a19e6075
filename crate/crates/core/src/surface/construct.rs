//! Base triangulations built by fanning out a polygon word.

use super::{ArcId, Edge, MarkedSurface, Triangulation};
use crate::error::{Error, Result};

#[derive(Clone, Copy)]
enum Letter {
    /// Side glued to its partner; `pair` indexes the glued pairs.
    Glue { pair: u32 },
    Segment { component: u32, position: u32 },
}

/// Polygon word whose side identifications produce `s`:
/// `[a b a' b']` per handle, `[c B_i c']` per extra boundary, then `B_0`.
fn polygon_word(s: &MarkedSurface) -> Vec<Letter> {
    let mut word = Vec::new();
    let mut pair = 0;
    for _ in 0..s.genus() {
        let (a, b) = (pair, pair + 1);
        pair += 2;
        for p in [a, b, a, b] {
            word.push(Letter::Glue { pair: p });
        }
    }
    for (c, &points) in s.boundaries().iter().enumerate().skip(1) {
        word.push(Letter::Glue { pair });
        word.extend((0..points).map(|k| Letter::Segment { component: c as u32, position: k }));
        word.push(Letter::Glue { pair });
        pair += 1;
    }
    word.extend((0..s.boundaries()[0]).map(|k| Letter::Segment { component: 0, position: k }));
    word
}

impl Triangulation {
    /// Fan triangulation of the polygon model of `surface` from vertex 0.
    ///
    /// Fan diagonals `0-k` get ids `1..P-3` in order of `k`; glued side
    /// pairs follow.
    pub fn from_surface(surface: &MarkedSurface) -> Result<Self> {
        let word = polygon_word(surface);
        let p = word.len();
        if p < 3 {
            return Err(Error::InvalidSurface("polygon model has fewer than 3 sides".into()));
        }
        let diagonals = (p - 3) as u32;
        let side = |k: usize| match word[k] {
            Letter::Glue { pair } => Edge::Arc(ArcId(diagonals + pair + 1)),
            Letter::Segment { component, position } => Edge::Boundary { component, position },
        };
        // diagonal 0-k has id k-1
        let spoke = |k: usize| {
            if k == 1 {
                side(0)
            } else if k == p - 1 {
                side(p - 1)
            } else {
                Edge::Arc(ArcId(k as u32 - 1))
            }
        };
        let triangles = (1..p - 1).map(|k| [spoke(k), side(k), spoke(k + 1)]).collect();
        Triangulation::from_triangles(surface.clone(), triangles)
    }
}

/// Fan triangulation of the `m`-gon: arcs `0-2, ..., 0-(m-2)` with ids
/// `1..m-3`.
pub fn polygon_fan(m: u32) -> Result<Triangulation> {
    Triangulation::from_surface(&MarkedSurface::disc(m)?)
}

/// Triangulated annulus with `p` marked points on the outer boundary and
/// `q` on the inner one.
pub fn annulus(p: u32, q: u32) -> Result<Triangulation> {
    Triangulation::from_surface(&MarkedSurface::new(0, vec![p, q])?)
}
