//! Decorated 4-regular graphs (o-graphs) and their decoding into triangulations.
//!
//! # Decoding convention
//!
//! Every graph vertex becomes a tetrahedron and its four rotation slots
//! `0, 1, 2, 3` (in cyclic order) become the faces `0, 1, 2, 3`. The
//! over-strand of a crossing joins two opposite slots, either `{0, 2}` or
//! `{1, 3}`; the first choice orients the tetrahedron by its standard vertex
//! order `0123`, the second by the opposite order.
//!
//! Face `s` of a tetrahedron inherits the boundary orientation, so its
//! positive vertex cycle is the increasing triple for even `s` and the
//! reversed one for odd `s` (flipped once more for an `{1, 3}` crossing).
//! An edge with color `c ∈ Z3` joining `(v, s)` to `(w, t)` sends the `i`-th
//! vertex of the positive cycle of `(v, s)` to vertex `-(i + c) mod 3` of the
//! positive cycle of `(w, t)`. The map reverses the orientations, so decoded
//! triangulations are always orientable, and the rule reads the same from
//! either end of the edge.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Perm4;
use crate::topology::face_vertices;
use crate::triangulation::{FaceId, FaceRecord, Triangulation, TriangulationError};

/// Which opposite slot pair carries the over-strand.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Crossing {
    Over02,
    Over13,
}

impl Crossing {
    pub fn from_slots(a: u8, b: u8) -> Option<Self> {
        match (a.min(b), a.max(b)) {
            (0, 2) => Some(Crossing::Over02),
            (1, 3) => Some(Crossing::Over13),
            _ => None,
        }
    }

    pub fn slots(self) -> (u8, u8) {
        match self {
            Crossing::Over02 => (0, 2),
            Crossing::Over13 => (1, 3),
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Crossing::Over02 => Crossing::Over13,
            Crossing::Over13 => Crossing::Over02,
        }
    }
}

/// A half-edge: slot `slot` at vertex `vertex`.
pub type HalfEdge = (usize, u8);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OEdge {
    pub ends: [HalfEdge; 2],
    /// Element of `Z3`.
    pub color: u8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OgraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("graph has no vertices")]
    Empty,
    #[error("edge {edge} references unknown vertex {vertex}")]
    UnknownVertex { edge: usize, vertex: usize },
    #[error("edge {edge} uses slot {slot}, slots are 0..3")]
    BadSlot { edge: usize, slot: u8 },
    #[error("vertex {vertex}: over-strand must join opposite slots (0 2 or 1 3)")]
    BadCrossing { vertex: usize },
    #[error("edge {edge} has color {color}, colors are 0, 1, 2")]
    BadColor { edge: usize, color: u8 },
    #[error("slot {slot} of vertex {vertex} is used by more than one edge end")]
    NotFourRegular { vertex: usize, slot: u8 },
    #[error("slot {slot} of vertex {vertex} is not matched by any edge")]
    DanglingHalfEdge { vertex: usize, slot: u8 },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("decoded gluing is invalid: {0}")]
    Decode(#[from] TriangulationError),
}

/// A connected 4-regular graph with a rotation system, a crossing per vertex
/// and a `Z3` color per edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DecoratedGraph {
    crossings: Vec<Crossing>,
    edges: Vec<OEdge>,
}

impl DecoratedGraph {
    pub fn new(crossings: Vec<Crossing>, edges: Vec<OEdge>) -> Result<Self, OgraphError> {
        let n = crossings.len();
        if n == 0 {
            return Err(OgraphError::Empty);
        }
        let mut used = vec![[false; 4]; n];
        for (i, e) in edges.iter().enumerate() {
            if e.color > 2 {
                return Err(OgraphError::BadColor { edge: i, color: e.color });
            }
            for &(v, s) in &e.ends {
                if v >= n {
                    return Err(OgraphError::UnknownVertex { edge: i, vertex: v });
                }
                if s > 3 {
                    return Err(OgraphError::BadSlot { edge: i, slot: s });
                }
                if std::mem::replace(&mut used[v][s as usize], true) {
                    return Err(OgraphError::NotFourRegular { vertex: v, slot: s });
                }
            }
        }
        for (v, slots) in used.iter().enumerate() {
            if let Some(s) = slots.iter().position(|&u| !u) {
                return Err(OgraphError::DanglingHalfEdge { vertex: v, slot: s as u8 });
            }
        }
        let graph = Self { crossings, edges };
        if !graph.is_connected() {
            return Err(OgraphError::Disconnected);
        }
        Ok(graph)
    }

    pub fn vertex_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn edges(&self) -> &[OEdge] {
        &self.edges
    }

    /// Unordered vertex pairs joined by exactly two edges.
    pub fn double_edge_count(&self) -> usize {
        let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        for e in &self.edges {
            let (a, b) = (e.ends[0].0, e.ends[1].0);
            *mult.entry((a.min(b), a.max(b))).or_default() += 1;
        }
        mult.values().filter(|&&m| m == 2).count()
    }

    fn is_connected(&self) -> bool {
        let n = self.crossings.len();
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            let (a, b) = (e.ends[0].0, e.ends[1].0);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for DecoratedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, c) in self.crossings.iter().enumerate() {
            let (a, b) = c.slots();
            writeln!(f, "vertex {v} over {a} {b}")?;
        }
        for e in &self.edges {
            let [(v1, s1), (v2, s2)] = e.ends;
            writeln!(f, "edge {v1} {s1} {v2} {s2} color {}", e.color)?;
        }
        Ok(())
    }
}

pub fn parse_ograph(text: &str) -> Result<DecoratedGraph, OgraphError> {
    let syntax = |line: usize, message: &str| OgraphError::Syntax {
        line,
        message: message.to_string(),
    };
    let mut vertices: BTreeMap<usize, Crossing> = BTreeMap::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let w: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| -> Result<usize, OgraphError> {
            s.parse().map_err(|_| syntax(line_no, "expected a non-negative integer"))
        };
        match w.as_slice() {
            ["vertex", id, "over", a, b] => {
                let id = num(id)?;
                let (a, b) = (num(a)?, num(b)?);
                let crossing = u8::try_from(a)
                    .ok()
                    .zip(u8::try_from(b).ok())
                    .and_then(|(a, b)| Crossing::from_slots(a, b))
                    .ok_or(OgraphError::BadCrossing { vertex: id })?;
                if vertices.insert(id, crossing).is_some() {
                    return Err(syntax(line_no, "vertex declared twice"));
                }
            }
            ["edge", v1, s1, v2, s2, "color", c] => {
                let slot = |s: &str| -> Result<u8, OgraphError> {
                    u8::try_from(num(s)?).map_err(|_| syntax(line_no, "slot out of range"))
                };
                let color = u8::try_from(num(c)?).unwrap_or(u8::MAX);
                edges.push(OEdge {
                    ends: [(num(v1)?, slot(s1)?), (num(v2)?, slot(s2)?)],
                    color,
                });
            }
            _ => {
                return Err(syntax(
                    line_no,
                    "expected `vertex <id> over <a> <b>` or `edge <v1> <s1> <v2> <s2> color <c>`",
                ))
            }
        }
    }
    if vertices.keys().enumerate().any(|(i, &id)| i != id) {
        return Err(syntax(0, "vertex ids must be 0..n-1"));
    }
    DecoratedGraph::new(vertices.into_values().collect(), edges)
}

impl FromStr for DecoratedGraph {
    type Err = OgraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_ograph(s)
    }
}

/// Positive vertex cycle of face `s` of a tetrahedron with the given crossing.
fn positive_cycle(s: u8, crossing: Crossing) -> [u8; 3] {
    let [a, b, c] = face_vertices(s);
    let standard = if s.is_multiple_of(2) { [a, b, c] } else { [a, c, b] };
    match crossing {
        Crossing::Over02 => standard,
        Crossing::Over13 => [standard[0], standard[2], standard[1]],
    }
}

/// Gluing permutation carrying face `s` at a vertex with crossing `from`
/// onto face `t` at a vertex with crossing `to`, for edge color `color`.
pub fn edge_gluing(s: u8, from: Crossing, t: u8, to: Crossing, color: u8) -> Perm4 {
    let x = positive_cycle(s, from);
    let y = positive_cycle(t, to);
    let mut images = [0u8; 4];
    images[s as usize] = t;
    for i in 0..3 {
        let j = (6 - (i + color as usize) % 3) % 3;
        images[x[i] as usize] = y[j];
    }
    Perm4::new(images).expect("bijection between face vertex sets")
}

/// One tetrahedron per vertex, one face pairing per edge.
pub fn decode_ograph(graph: &DecoratedGraph) -> Result<Triangulation, OgraphError> {
    let pairs: Vec<FaceRecord> = graph
        .edges
        .iter()
        .map(|e| {
            let [(v, s), (w, t)] = e.ends;
            FaceRecord {
                source: FaceId::new(v, s),
                target: FaceId::new(w, t),
                perm: edge_gluing(s, graph.crossings[v], t, graph.crossings[w], e.color),
            }
        })
        .collect();
    Ok(Triangulation::from_pairs(graph.vertex_count(), &pairs)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::canonical_signature;
    use crate::topology::vertex_links;

    const TWO_VERTEX: &str = "\
vertex 0 over 0 2
vertex 1 over 1 3
edge 0 0 1 0 color 0
edge 0 1 1 1 color 1
edge 0 2 1 2 color 2
edge 0 3 1 3 color 0
";

    #[test]
    fn parses_and_prints() {
        let g = parse_ograph(TWO_VERTEX).unwrap();
        assert_eq!(g.vertex_count(), 2);
        let again = parse_ograph(&g.to_string()).unwrap();
        assert_eq!(again, g);
    }

    #[test]
    fn rejects_bad_color() {
        let text = TWO_VERTEX.replace("color 2", "color 3");
        assert!(matches!(parse_ograph(&text), Err(OgraphError::BadColor { color: 3, .. })));
    }

    #[test]
    fn rejects_disconnected() {
        let text = "\
vertex 0 over 0 2
vertex 1 over 0 2
edge 0 0 0 2 color 0
edge 0 1 0 3 color 0
edge 1 0 1 2 color 0
edge 1 1 1 3 color 1
";
        assert_eq!(parse_ograph(text), Err(OgraphError::Disconnected));
    }

    #[test]
    fn rejects_dangling_and_overused_slots() {
        let missing = TWO_VERTEX.lines().take(5).collect::<Vec<_>>().join("\n");
        assert!(matches!(parse_ograph(&missing), Err(OgraphError::DanglingHalfEdge { .. })));
        let doubled = format!("{TWO_VERTEX}edge 0 3 1 3 color 0\n");
        assert!(matches!(parse_ograph(&doubled), Err(OgraphError::NotFourRegular { .. })));
        let bad_cross = TWO_VERTEX.replace("vertex 0 over 0 2", "vertex 0 over 0 1");
        assert_eq!(parse_ograph(&bad_cross), Err(OgraphError::BadCrossing { vertex: 0 }));
    }

    #[test]
    fn gluing_rule_is_symmetric() {
        for s in 0..4 {
            for t in 0..4 {
                for from in [Crossing::Over02, Crossing::Over13] {
                    for to in [Crossing::Over02, Crossing::Over13] {
                        for c in 0..3 {
                            let there = edge_gluing(s, from, t, to, c);
                            let back = edge_gluing(t, to, s, from, c);
                            assert_eq!(back, there.inverse());
                            assert_eq!(there.is_odd(), from == to);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn decoded_links_are_orientable() {
        let t = decode_ograph(&parse_ograph(TWO_VERTEX).unwrap()).unwrap();
        assert_eq!(t.tet_count(), 2);
        assert!(vertex_links(&t).all_orientable());
    }

    #[test]
    fn recoloring_changes_the_triangulation() {
        let g = parse_ograph(TWO_VERTEX).unwrap();
        let recolored = parse_ograph(&TWO_VERTEX.replace("edge 0 0 1 0 color 0", "edge 0 0 1 0 color 1")).unwrap();
        let a = canonical_signature(&decode_ograph(&g).unwrap());
        let b = canonical_signature(&decode_ograph(&recolored).unwrap());
        assert_ne!(a, b);
    }
}
