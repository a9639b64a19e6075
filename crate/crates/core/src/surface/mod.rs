//! Unpunctured marked surfaces and their ideal triangulations.

mod construct;
mod json;
mod quiver;
mod triangulation;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use construct::{annulus, polygon_fan};
pub use quiver::{quiver_from_triangulation, Angle, QuiverWithPotential};
pub use triangulation::{DualGraph, PairClass, Slot, Triangulation};

/// Stable 1-based label of an internal arc. Flips keep the label.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcId(pub u32);

impl ArcId {
    /// Zero-based index into exchange matrices.
    pub fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub fn from_index(i: usize) -> Self {
        ArcId(i as u32 + 1)
    }
}

impl fmt::Display for ArcId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a{}", self.0)
    }
}

/// A side of a triangle.
///
/// Boundary segment `(c, k)` runs from marked point `k` to `k + 1` on
/// boundary component `c`, with the surface on its left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Edge {
    Arc(ArcId),
    Boundary { component: u32, position: u32 },
}

impl Edge {
    pub fn arc(self) -> Option<ArcId> {
        match self {
            Edge::Arc(a) => Some(a),
            Edge::Boundary { .. } => None,
        }
    }

    pub fn is_arc(self) -> bool {
        matches!(self, Edge::Arc(_))
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Edge::Arc(a) => write!(f, "{a}"),
            Edge::Boundary { component, position } => write!(f, "b{component}.{position}"),
        }
    }
}

impl std::str::FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidTriangulation(format!("bad edge reference {s:?}"));
        if let Some(rest) = s.strip_prefix('a') {
            let id: u32 = rest.parse().map_err(|_| bad())?;
            if id == 0 {
                return Err(bad());
            }
            Ok(Edge::Arc(ArcId(id)))
        } else if let Some(rest) = s.strip_prefix('b') {
            let (c, k) = rest.split_once('.').ok_or_else(bad)?;
            Ok(Edge::Boundary {
                component: c.parse().map_err(|_| bad())?,
                position: k.parse().map_err(|_| bad())?,
            })
        } else {
            Err(bad())
        }
    }
}

impl Serialize for Edge {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Compact oriented surface with boundary, described by its genus and the
/// number of marked points on each boundary component.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawSurface")]
pub struct MarkedSurface {
    genus: u32,
    boundaries: Vec<u32>,
}

#[derive(Deserialize)]
struct RawSurface {
    genus: u32,
    boundaries: Vec<u32>,
}

impl TryFrom<RawSurface> for MarkedSurface {
    type Error = Error;

    fn try_from(r: RawSurface) -> Result<Self> {
        MarkedSurface::new(r.genus, r.boundaries)
    }
}

impl MarkedSurface {
    pub fn new(genus: u32, boundaries: Vec<u32>) -> Result<Self> {
        if boundaries.is_empty() {
            return Err(Error::InvalidSurface("closed surfaces are not allowed (b = 0)".into()));
        }
        if let Some(i) = boundaries.iter().position(|&p| p == 0) {
            return Err(Error::InvalidSurface(format!("boundary component {i} has no marked point")));
        }
        let s = MarkedSurface { genus, boundaries };
        if s.is_disc() && s.marked_points() < 4 {
            return Err(Error::InvalidSurface(format!(
                "a disc needs at least 4 marked points, got {}",
                s.marked_points()
            )));
        }
        let n = s.arc_count_signed();
        if n < 1 {
            return Err(Error::InvalidSurface(format!("arc count {n} < 1")));
        }
        debug_assert_eq!((2 * n + s.marked_points() as i64) % 3, 0);
        Ok(s)
    }

    pub fn disc(m: u32) -> Result<Self> {
        Self::new(0, vec![m])
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn boundaries(&self) -> &[u32] {
        &self.boundaries
    }

    pub fn boundary_count(&self) -> usize {
        self.boundaries.len()
    }

    pub fn marked_points(&self) -> u32 {
        self.boundaries.iter().sum()
    }

    pub fn is_disc(&self) -> bool {
        self.genus == 0 && self.boundaries.len() == 1
    }

    fn arc_count_signed(&self) -> i64 {
        6 * self.genus as i64 - 6 + 3 * self.boundaries.len() as i64 + self.marked_points() as i64
    }

    /// `n = 6g - 6 + 3b + m`
    pub fn arc_count(&self) -> usize {
        self.arc_count_signed() as usize
    }

    /// `(2n + m) / 3`
    pub fn triangle_count(&self) -> usize {
        (2 * self.arc_count() + self.marked_points() as usize) / 3
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundaries.len() as i64
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        let s = MarkedSurface::disc(6).unwrap();
        assert_eq!((s.arc_count(), s.triangle_count()), (3, 4));
        let s = MarkedSurface::new(0, vec![1, 1]).unwrap();
        assert_eq!((s.arc_count(), s.triangle_count()), (2, 2));
        let s = MarkedSurface::new(1, vec![1]).unwrap();
        assert_eq!((s.arc_count(), s.triangle_count()), (4, 3));
    }

    #[test]
    fn rejects_bad_surfaces() {
        assert!(MarkedSurface::new(0, vec![]).is_err());
        assert!(MarkedSurface::new(0, vec![3]).is_err());
        assert!(MarkedSurface::new(0, vec![2, 0]).is_err());
    }

    #[test]
    fn edge_strings() {
        for e in [Edge::Arc(ArcId(12)), Edge::Boundary { component: 1, position: 3 }] {
            assert_eq!(e.to_string().parse::<Edge>().unwrap(), e);
        }
        assert!("a0".parse::<Edge>().is_err());
        assert!("x1".parse::<Edge>().is_err());
        assert!(Edge::Arc(ArcId(9)) < Edge::Boundary { component: 0, position: 0 });
    }

    #[test]
    fn surface_json() {
        let s = MarkedSurface::new(1, vec![2, 1]).unwrap();
        let j = serde_json::to_string(&s).unwrap();
        assert_eq!(j, r#"{"genus":1,"boundaries":[2,1]}"#);
        assert_eq!(serde_json::from_str::<MarkedSurface>(&j).unwrap(), s);
        assert!(serde_json::from_str::<MarkedSurface>(r#"{"genus":0,"boundaries":[2]}"#).is_err());
    }
}
