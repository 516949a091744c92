//! Edge classes, ideal vertices and their links, and Euler characteristics.

use crate::triangulation::{FaceId, Triangulation};
use crate::union_find::ParityUnionFind;

/// Vertex pairs of the six model edges of a tetrahedron, in index order.
pub const EDGE_VERTICES: [(u8, u8); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Index into [`EDGE_VERTICES`] of the edge joining `a` and `b`.
#[inline]
pub fn edge_index(a: u8, b: u8) -> u8 {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (0, 1) => 0,
        (0, 2) => 1,
        (0, 3) => 2,
        (1, 2) => 3,
        (1, 3) => 4,
        (2, 3) => 5,
        _ => panic!("not a tetrahedron edge: {a}{b}"),
    }
}

/// The three vertices of face `f`, increasing.
#[inline]
pub fn face_vertices(f: u8) -> [u8; 3] {
    match f {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        3 => [0, 1, 2],
        _ => panic!("face index out of range: {f}"),
    }
}

/// Edge indices of face `f`, ordered as the pairs `ab, ac, bc` of its
/// increasing vertices `a < b < c`.
#[inline]
pub fn face_edges(f: u8) -> [u8; 3] {
    let [a, b, c] = face_vertices(f);
    [edge_index(a, b), edge_index(a, c), edge_index(b, c)]
}

/// A model edge: edge `edge` (an index into [`EDGE_VERTICES`]) of tetrahedron `tet`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModelEdge {
    pub tet: usize,
    pub edge: u8,
}

impl ModelEdge {
    pub fn vertices(self) -> (u8, u8) {
        EDGE_VERTICES[self.edge as usize]
    }
}

/// The set `E(e)` of model edges identified to one edge `e` of the triangulation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClass {
    pub id: usize,
    pub members: Vec<ModelEdge>,
    /// Some model edge is identified with itself with its endpoints swapped,
    /// so the link of the edge midpoint is a projective plane.
    pub reversed: bool,
}

impl EdgeClass {
    pub fn degree(&self) -> usize {
        self.members.len()
    }
}

/// The edge classes of a triangulation plus a lookup from model edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClasses {
    classes: Vec<EdgeClass>,
    lookup: Vec<[usize; 6]>,
}

impl EdgeClasses {
    pub fn classes(&self) -> &[EdgeClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn get(&self, id: usize) -> Option<&EdgeClass> {
        self.classes.get(id)
    }

    #[inline]
    pub fn class_of(&self, tet: usize, edge: u8) -> usize {
        self.lookup[tet][edge as usize]
    }

    /// Class ids of the six model edges of `tet`, in [`EDGE_VERTICES`] order.
    pub fn tet_labels(&self, tet: usize) -> [usize; 6] {
        self.lookup[tet]
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.classes.iter().map(EdgeClass::degree).collect()
    }

    pub fn any_reversed(&self) -> bool {
        self.classes.iter().any(|c| c.reversed)
    }
}

/// Orbit partition of the `6n` model edges under the face identifications.
///
/// Classes are numbered in order of their first member, scanning tetrahedra
/// and then edge indices.
pub fn edge_classes(tri: &Triangulation) -> EdgeClasses {
    let n = tri.tet_count();
    let mut uf = ParityUnionFind::new(6 * n);
    let mut conflicts = Vec::new();
    for (a, _) in tri.face_pairs() {
        let g = tri.gluing(a);
        for e in face_edges(a.face) {
            let (x, y) = EDGE_VERTICES[e as usize];
            let (px, py) = (g.perm.apply(x), g.perm.apply(y));
            let target = g.tet * 6 + edge_index(px, py) as usize;
            // parity 1 when the map reverses the low->high direction
            if !uf.union(a.tet * 6 + e as usize, target, px > py) {
                conflicts.push(target);
            }
        }
    }

    let mut root_to_class = vec![usize::MAX; 6 * n];
    let mut classes: Vec<EdgeClass> = Vec::new();
    let mut lookup = vec![[0usize; 6]; n];
    for tet in 0..n {
        for edge in 0..6u8 {
            let (root, _) = uf.find(tet * 6 + edge as usize);
            if root_to_class[root] == usize::MAX {
                root_to_class[root] = classes.len();
                classes.push(EdgeClass {
                    id: classes.len(),
                    members: Vec::new(),
                    reversed: false,
                });
            }
            let id = root_to_class[root];
            classes[id].members.push(ModelEdge { tet, edge });
            lookup[tet][edge as usize] = id;
        }
    }
    for c in conflicts {
        let (root, _) = uf.find(c);
        classes[root_to_class[root]].reversed = true;
    }
    EdgeClasses { classes, lookup }
}

/// `e(T) - t(T)`: the Euler characteristic of the manifold an ideal
/// triangulation describes.
pub fn euler_characteristic(tri: &Triangulation) -> i64 {
    edge_classes(tri).len() as i64 - tri.tet_count() as i64
}

/// Link of one ideal vertex, assembled from corner triangles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLink {
    pub id: usize,
    /// Model vertices `(tet, vertex)` in this class.
    pub corners: Vec<(usize, u8)>,
    pub euler_characteristic: i64,
    pub orientable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeLinkStatus {
    pub class: usize,
    /// False when the midpoint link is a projective plane.
    pub midpoint_link_ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexLinkReport {
    pub vertices: Vec<VertexLink>,
    pub edges: Vec<EdgeLinkStatus>,
}

impl VertexLinkReport {
    /// No edge is glued to itself in reverse.
    pub fn is_manifold(&self) -> bool {
        self.edges.iter().all(|e| e.midpoint_link_ok)
    }

    pub fn total_euler_characteristic(&self) -> i64 {
        self.vertices.iter().map(|v| v.euler_characteristic).sum()
    }

    pub fn all_orientable(&self) -> bool {
        self.vertices.iter().all(|v| v.orientable)
    }
}

/// Builds the link surface of every ideal vertex.
///
/// Each model vertex contributes a corner triangle. Its three sides lie in
/// the three faces through the vertex and are paired by the face gluings; its
/// three corners are the directed model edges leaving the vertex, identified
/// along the gluings. Orientability is read off from the parity of the
/// gluing permutations relative to the standard vertex order.
pub fn vertex_links(tri: &Triangulation) -> VertexLinkReport {
    let n = tri.tet_count();
    let classes = edge_classes(tri);

    // model vertices: tet * 4 + v, parity = relative corner orientation
    let mut corners = ParityUnionFind::new(4 * n);
    let mut flipped = Vec::new();
    // directed model edges: tet * 16 + a * 4 + b
    let mut directed = ParityUnionFind::new(16 * n);

    for (a, _) in tri.face_pairs() {
        let g = tri.gluing(a);
        let verts = crate::topology::face_vertices(a.face);
        for &v in &verts {
            let target = g.tet * 4 + g.perm.apply(v) as usize;
            if !corners.union(a.tet * 4 + v as usize, target, !g.perm.is_odd()) {
                flipped.push(target);
            }
        }
        for &x in &verts {
            for &y in &verts {
                if x != y {
                    let (px, py) = (g.perm.apply(x), g.perm.apply(y));
                    directed.union(
                        a.tet * 16 + (x * 4 + y) as usize,
                        g.tet * 16 + (px * 4 + py) as usize,
                        false,
                    );
                }
            }
        }
    }

    let mut root_to_id = vec![usize::MAX; 4 * n];
    let mut links: Vec<VertexLink> = Vec::new();
    for tet in 0..n {
        for v in 0..4u8 {
            let (root, _) = corners.find(tet * 4 + v as usize);
            if root_to_id[root] == usize::MAX {
                root_to_id[root] = links.len();
                links.push(VertexLink {
                    id: links.len(),
                    corners: Vec::new(),
                    euler_characteristic: 0,
                    orientable: true,
                });
            }
            links[root_to_id[root]].corners.push((tet, v));
        }
    }
    for c in flipped {
        let (root, _) = corners.find(c);
        links[root_to_id[root]].orientable = false;
    }

    // link vertices: distinct directed-edge classes, counted at their tail
    let mut seen_dir = vec![false; 16 * n];
    let mut link_vertices = vec![0i64; links.len()];
    for tet in 0..n {
        for a in 0..4u8 {
            for b in 0..4u8 {
                if a == b {
                    continue;
                }
                let (root, _) = directed.find(tet * 16 + (a * 4 + b) as usize);
                if !seen_dir[root] {
                    seen_dir[root] = true;
                    let (vroot, _) = corners.find(tet * 4 + a as usize);
                    link_vertices[root_to_id[vroot]] += 1;
                }
            }
        }
    }
    for (link, verts) in links.iter_mut().zip(link_vertices) {
        let faces = link.corners.len() as i64;
        let sides = 3 * faces;
        debug_assert_eq!(sides % 2, 0);
        link.euler_characteristic = verts - sides / 2 + faces;
    }

    let edges = classes
        .classes()
        .iter()
        .map(|c| EdgeLinkStatus {
            class: c.id,
            midpoint_link_ok: !c.reversed,
        })
        .collect();
    VertexLinkReport {
        vertices: links,
        edges,
    }
}

/// Model faces through a model edge, i.e. the two faces of its tetrahedron
/// opposite the edge's complementary vertices.
pub fn faces_through(edge: ModelEdge) -> [FaceId; 2] {
    let (a, b) = edge.vertices();
    let mut out = [FaceId::new(edge.tet, 0); 2];
    let mut i = 0;
    for f in 0..4u8 {
        if f != a && f != b {
            out[i] = FaceId::new(edge.tet, f);
            i += 1;
        }
    }
    out
}
