//! The special spine dual to an ideal triangulation, kept as labels only.
//!
//! Edges of the triangulation become 2-components of the spine, glued face
//! pairs become spine edges, and tetrahedra become true vertices. Each spine
//! edge remembers which 2-components its three strands (the three model
//! edges of the dual face) belong to; each true vertex remembers the labels
//! of the six wings meeting there.

use std::fmt;

use crate::topology::{edge_classes, face_edges};
use crate::triangulation::{FaceId, Triangulation};

/// A set of 2-components as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ComponentSet(pub u32);

impl ComponentSet {
    pub const EMPTY: ComponentSet = ComponentSet(0);

    /// All of `0..count`.
    pub fn full(count: usize) -> Self {
        assert!(count <= 32);
        if count == 32 {
            ComponentSet(u32::MAX)
        } else {
            ComponentSet((1u32 << count) - 1)
        }
    }

    pub fn from_components(items: impl IntoIterator<Item = usize>) -> Self {
        ComponentSet(items.into_iter().fold(0, |m, c| m | (1 << c)))
    }

    #[inline]
    pub fn contains(self, c: usize) -> bool {
        self.0 >> c & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: ComponentSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn complement(self, count: usize) -> Self {
        ComponentSet(!self.0 & ComponentSet::full(count).0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&c| self.contains(c))
    }
}

impl fmt::Display for ComponentSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, c) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "}}")
    }
}

/// A triple line of the spine, dual to a glued pair of faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpineEdge {
    pub id: usize,
    /// The glued faces, smaller side first.
    pub faces: (FaceId, FaceId),
    /// Component labels of the strands, read from the first face as the
    /// model edges `ab, ac, bc` of its vertices `a < b < c`.
    pub labels: [usize; 3],
}

impl SpineEdge {
    /// The two true vertices at the ends of this edge (possibly equal).
    pub fn endpoints(&self) -> [usize; 2] {
        [self.faces.0.tet, self.faces.1.tet]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualSpine {
    component_count: usize,
    edges: Vec<SpineEdge>,
    /// Per true vertex, wing labels indexed like `topology::EDGE_VERTICES`.
    vertices: Vec<[usize; 6]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpineStats {
    /// Number of 2-components.
    pub d: usize,
    /// Number of true vertices.
    pub v: usize,
    pub chi: i64,
}

pub fn dualize(tri: &Triangulation) -> DualSpine {
    let classes = edge_classes(tri);
    let edges = tri
        .face_pairs()
        .enumerate()
        .map(|(id, (a, b))| SpineEdge {
            id,
            faces: (a, b),
            labels: face_edges(a.face).map(|e| classes.class_of(a.tet, e)),
        })
        .collect();
    let vertices = (0..tri.tet_count()).map(|t| classes.tet_labels(t)).collect();
    DualSpine {
        component_count: classes.len(),
        edges,
        vertices,
    }
}

impl DualSpine {
    pub fn component_count(&self) -> usize {
        self.component_count
    }

    pub fn edges(&self) -> &[SpineEdge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_labels(&self, v: usize) -> [usize; 6] {
        self.vertices[v]
    }

    pub fn vertices(&self) -> &[[usize; 6]] {
        &self.vertices
    }

    pub fn all_components(&self) -> ComponentSet {
        ComponentSet::full(self.component_count)
    }

    /// Whether the spine is connected; true vertices joined by spine edges.
    pub fn is_connected(&self) -> bool {
        let n = self.vertices.len();
        if n == 0 {
            return true;
        }
        let mut adj = vec![Vec::new(); n];
        for e in &self.edges {
            let [a, b] = e.endpoints();
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
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

    /// Machine-readable dump: one line per spine edge and per true vertex.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let [a, b, c] = e.labels;
            out.push_str(&format!("edge {}: {a} {b} {c}\n", e.id));
        }
        for (i, l) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "vertex {i}: {} {} {} {} {} {}\n",
                l[0], l[1], l[2], l[3], l[4], l[5]
            ));
        }
        out
    }
}

/// Number of strands of `edge` whose component lies in `set`.
#[inline]
pub fn traversal_count(edge: &SpineEdge, set: ComponentSet) -> u8 {
    edge.labels.iter().filter(|&&c| set.contains(c)).count() as u8
}

pub fn spine_stats(spine: &DualSpine) -> SpineStats {
    let d = spine.component_count();
    let v = spine.vertex_count();
    assert_eq!(spine.edges().len(), 2 * v, "a special spine has twice as many edges as true vertices");
    SpineStats {
        d,
        v,
        chi: d as i64 - v as i64,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm4;
    use crate::topology::euler_characteristic;
    use crate::triangulation::FaceRecord;

    fn one_tet() -> Triangulation {
        let rec = |i, f, j, g, p: &str| FaceRecord {
            source: FaceId::new(i, f),
            target: FaceId::new(j, g),
            perm: Perm4::parse_digits(p).unwrap(),
        };
        Triangulation::from_pairs(1, &[rec(0, 0, 0, 3, "3012"), rec(0, 1, 0, 2, "1203")]).unwrap()
    }

    #[test]
    fn counts_follow_duality() {
        let t = one_tet();
        let p = dualize(&t);
        assert_eq!(p.edges().len(), 2);
        assert_eq!(p.vertex_count(), 1);
        let s = spine_stats(&p);
        assert_eq!(s.chi, euler_characteristic(&t));
        assert_eq!(s.d, edge_classes(&t).len());
    }

    #[test]
    fn strands_agree_across_each_glued_pair() {
        let t = one_tet();
        let classes = edge_classes(&t);
        for e in dualize(&t).edges() {
            let (a, b) = e.faces;
            let g = t.gluing(a);
            let mut mine: Vec<_> = e.labels.to_vec();
            let mut theirs: Vec<_> = face_edges(b.face).iter().map(|&x| classes.class_of(b.tet, x)).collect();
            mine.sort();
            theirs.sort();
            assert_eq!(mine, theirs);
            assert_eq!(g.tet, b.tet);
        }
    }

    #[test]
    fn traversal_extremes() {
        let p = dualize(&one_tet());
        for e in p.edges() {
            assert_eq!(traversal_count(e, p.all_components()), 3);
            assert_eq!(traversal_count(e, ComponentSet::EMPTY), 0);
        }
    }

    #[test]
    fn dump_format() {
        let p = dualize(&one_tet());
        let text = p.dump();
        assert!(text.starts_with("edge 0: "));
        assert_eq!(text.lines().filter(|l| l.starts_with("vertex ")).count(), 1);
    }
}
