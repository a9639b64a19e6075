//! JSON form of triangulations.
//!
//! ```json
//! {"surface":{"genus":0,"boundaries":[4]},
//!  "triangles":[["a1","b0.0","b0.1"],["a1","b0.2","b0.3"]],
//!  "edges":{"a1":{"kind":"arc","slots":[[0,0],[1,0]]}, ...}}
//! ```
//!
//! `surface` and `edges` are optional on input. Without `surface` the
//! boundary sizes are read off the segments and the genus off the arc count.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Edge, MarkedSurface, Slot, Triangulation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum EdgeRecord {
    Arc { slots: [Slot; 2] },
    Boundary { component: u32, position: u32, slot: Slot },
}

#[derive(Serialize, Deserialize)]
struct RawTriangulation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    surface: Option<MarkedSurface>,
    triangles: Vec<[Edge; 3]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    edges: Option<BTreeMap<String, EdgeRecord>>,
}

impl Triangulation {
    fn edge_table(&self) -> BTreeMap<String, EdgeRecord> {
        let mut table = BTreeMap::new();
        for (t, tri) in self.triangles().iter().enumerate() {
            for (i, e) in tri.iter().enumerate() {
                let rec = match *e {
                    Edge::Arc(a) => EdgeRecord::Arc { slots: self.slots(a).expect("own arc") },
                    Edge::Boundary { component, position } => {
                        EdgeRecord::Boundary { component, position, slot: (t, i) }
                    }
                };
                table.insert(e.to_string(), rec);
            }
        }
        table
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("triangulation serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn infer_surface(triangles: &[[Edge; 3]]) -> Result<MarkedSurface> {
    let mut sizes: BTreeMap<u32, u32> = BTreeMap::new();
    let mut arcs = 0u32;
    for e in triangles.iter().flatten() {
        match *e {
            Edge::Arc(a) => arcs = arcs.max(a.0),
            Edge::Boundary { component, position } => {
                let s = sizes.entry(component).or_insert(0);
                *s = (*s).max(position + 1);
            }
        }
    }
    let b = sizes.len() as i64;
    if sizes.keys().copied().ne(0..b as u32) {
        return Err(Error::InvalidTriangulation("boundary components are not numbered 0..b".into()));
    }
    let m: i64 = sizes.values().map(|&x| x as i64).sum();
    let six_g = arcs as i64 + 6 - 3 * b - m;
    if six_g < 0 || six_g % 6 != 0 {
        return Err(Error::InvalidTriangulation(format!("{arcs} arcs fit no surface with b={b}, m={m}")));
    }
    MarkedSurface::new((six_g / 6) as u32, sizes.into_values().collect())
}

impl Serialize for Triangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawTriangulation {
            surface: Some(self.surface().clone()),
            triangles: self.triangles().to_vec(),
            edges: Some(self.edge_table()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawTriangulation::deserialize(d)?;
        let surface = match raw.surface {
            Some(s) => s,
            None => infer_surface(&raw.triangles).map_err(D::Error::custom)?,
        };
        let t = Triangulation::from_triangles(surface, raw.triangles).map_err(D::Error::custom)?;
        if let Some(edges) = raw.edges {
            // slots refer to the canonical order, so only accept tables that agree
            if edges != t.edge_table() {
                return Err(D::Error::custom("edge table disagrees with the triangles"));
            }
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{annulus, polygon_fan, ArcId};

    #[test]
    fn round_trip() {
        for t in [polygon_fan(6).unwrap(), annulus(2, 1).unwrap()] {
            let j = t.to_json();
            assert_eq!(Triangulation::from_json(&j).unwrap(), t);
            assert_eq!(Triangulation::from_json(&j).unwrap().to_json(), j);
        }
    }

    #[test]
    fn bare_triangles() {
        let t = Triangulation::from_json(r#"{"triangles":[["b0.2","b0.3","a1"],["a1","b0.0","b0.1"]]}"#).unwrap();
        assert_eq!(t, polygon_fan(4).unwrap());
        let t = annulus(1, 1).unwrap().flip(ArcId(1)).unwrap();
        let bare = serde_json::json!({ "triangles": t.triangles() }).to_string();
        assert_eq!(Triangulation::from_json(&bare).unwrap(), t);
    }

    #[test]
    fn rejects_inconsistent_table() {
        let mut v: serde_json::Value = serde_json::from_str(&polygon_fan(5).unwrap().to_json()).unwrap();
        v["edges"]["a1"]["slots"][0][0] = serde_json::json!(2);
        assert!(Triangulation::from_json(&v.to_string()).is_err());
    }
}
