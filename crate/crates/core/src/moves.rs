//! Pachner 2-3 and 3-2 moves.

use std::fmt;

use thiserror::Error;

use crate::perm::Perm4;
use crate::topology::{edge_classes, EdgeClasses, EDGE_VERTICES};
use crate::triangulation::{FaceId, Gluing, Triangulation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("face {0} does not exist")]
    UnknownFace(FaceId),
    #[error("face {0} is glued to its own tetrahedron; a 2-3 move needs two distinct tetrahedra")]
    FaceGluesTetToItself(FaceId),
    #[error("edge class {0} does not exist")]
    UnknownEdgeClass(usize),
    #[error("no 3-2 move is possible around edge class {0}")]
    MoveNotApplicable(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MoveSite {
    TwoThree(FaceId),
    ThreeTwo(usize),
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveSite::TwoThree(face) => write!(f, "2-3 at face {face}"),
            MoveSite::ThreeTwo(edge) => write!(f, "3-2 at edge {edge}"),
        }
    }
}

/// Where an old face ends up after the move: a face of a new (or renumbered)
/// tetrahedron together with the vertex map new labels -> old labels.
#[derive(Clone, Copy)]
struct Placement {
    tet: usize,
    face: u8,
    to_old: Perm4,
}

/// Rebuilds the gluing table after replacing `removed` tetrahedra by
/// `added` new ones.
///
/// `placed(old_face)` tells where each surviving face of a removed
/// tetrahedron moved; faces of untouched tetrahedra keep their labels and are
/// renumbered past the removed ones. New internal gluings are supplied in
/// `internal`.
fn rebuild(
    tri: &Triangulation,
    removed: &[usize],
    added: usize,
    placed: impl Fn(FaceId) -> Option<Placement>,
    internal: &[(FaceId, FaceId, Perm4)],
) -> Triangulation {
    let n = tri.tet_count();
    let mut renumber = vec![usize::MAX; n];
    let mut next = 0;
    for (t, slot) in renumber.iter_mut().enumerate() {
        if !removed.contains(&t) {
            *slot = next;
            next += 1;
        }
    }
    let kept = next;
    let total = kept + added;
    let locate = |face: FaceId| -> Option<Placement> {
        if removed.contains(&face.tet) {
            placed(face)
        } else {
            Some(Placement {
                tet: renumber[face.tet],
                face: face.face,
                to_old: Perm4::IDENTITY,
            })
        }
    };

    let blank = Gluing { tet: usize::MAX, face: 0, perm: Perm4::IDENTITY };
    let mut table = vec![[blank; 4]; total];
    for face in tri.faces() {
        let Some(src) = locate(face) else { continue };
        let g = tri.gluing(face);
        let dst = locate(FaceId::new(g.tet, g.face)).expect("surviving faces glue to surviving faces");
        // new src label -> old src label -> old dst label -> new dst label
        let perm = dst.to_old.inverse().compose(g.perm).compose(src.to_old);
        table[src.tet][src.face as usize] = Gluing { tet: dst.tet, face: dst.face, perm };
    }
    for &(a, b, p) in internal {
        let (a, b) = (FaceId::new(kept + a.tet, a.face), FaceId::new(kept + b.tet, b.face));
        table[a.tet][a.face as usize] = Gluing { tet: b.tet, face: b.face, perm: p };
        table[b.tet][b.face as usize] = Gluing { tet: a.tet, face: a.face, perm: p.inverse() };
    }
    debug_assert!(table.iter().flatten().all(|g| g.tet != usize::MAX));
    Triangulation::from_table_unchecked(table)
}

/// Replaces the two tetrahedra meeting at `face` by three around a new edge
/// of degree 3.
///
/// The new tetrahedra are appended after the untouched ones. New tetrahedron
/// `j` has vertices `0 = apex of the first tetrahedron, 1 = apex of the
/// second, 2, 3 = two of the three shared vertices`, and its edge `01` is the
/// new edge.
pub fn apply_23(tri: &Triangulation, face: FaceId) -> Result<Triangulation, MoveError> {
    if face.tet >= tri.tet_count() || face.face > 3 {
        return Err(MoveError::UnknownFace(face));
    }
    let g = tri.gluing(face);
    if g.tet == face.tet {
        return Err(MoveError::FaceGluesTetToItself(face));
    }
    let (a, fa, b, fb, p) = (face.tet, face.face, g.tet, g.face, g.perm);
    let x: Vec<u8> = (0..4u8).filter(|&v| v != fa).collect();

    // maps new labels -> old labels for new tetrahedron j, in a and in b
    let sigma_a = |j: usize| Perm4::new([fa, x[j], x[(j + 1) % 3], x[(j + 2) % 3]]).unwrap();
    let sigma_b = |j: usize| {
        Perm4::new([p.apply(x[j]), fb, p.apply(x[(j + 1) % 3]), p.apply(x[(j + 2) % 3])]).unwrap()
    };

    let placed = |old: FaceId| -> Option<Placement> {
        if old.tet == a {
            // face x_j of a becomes face 1 of new tetrahedron j
            let j = x.iter().position(|&v| v == old.face)?;
            Some(Placement { tet: tri.tet_count() - 2 + j, face: 1, to_old: sigma_a(j) })
        } else {
            let j = x.iter().position(|&v| p.apply(v) == old.face)?;
            Some(Placement { tet: tri.tet_count() - 2 + j, face: 0, to_old: sigma_b(j) })
        }
    };

    let swap23 = Perm4::swap(2, 3);
    let internal: Vec<_> = (0..3)
        .map(|j| (FaceId::new(j, 2), FaceId::new((j + 1) % 3, 3), swap23))
        .collect();
    Ok(rebuild(tri, &[a, b], 3, placed, &internal))
}

/// Degree 3, three distinct tetrahedra, and not glued to itself reversed.
fn check_32(classes: &EdgeClasses, edge: usize) -> Result<bool, MoveError> {
    let class = classes.get(edge).ok_or(MoveError::UnknownEdgeClass(edge))?;
    if class.degree() != 3 || class.reversed {
        return Ok(false);
    }
    let t: Vec<usize> = class.members.iter().map(|m| m.tet).collect();
    Ok(t[0] != t[1] && t[0] != t[2] && t[1] != t[2])
}

pub fn applicable_32(tri: &Triangulation, edge: usize) -> Result<bool, MoveError> {
    check_32(&edge_classes(tri), edge)
}

/// Replaces the three tetrahedra around a degree-3 edge by two.
///
/// The two new tetrahedra are appended after the untouched ones; they share
/// their face 0 and are labelled `0 = apex, 1, 2, 3 = equator`.
pub fn apply_32(tri: &Triangulation, edge: usize) -> Result<Triangulation, MoveError> {
    let classes = edge_classes(tri);
    if !check_32(&classes, edge)? {
        return Err(MoveError::MoveNotApplicable(edge));
    }
    let first = classes.classes()[edge].members[0];
    let (n0, s0) = EDGE_VERTICES[first.edge as usize];
    let others: Vec<u8> = (0..4u8).filter(|&v| v != n0 && v != s0).collect();

    // walk around the edge: tet t_i holds the edge as (n_i, s_i), leaves
    // through the face opposite p_i, and the shared equator vertex E_i is q_i
    struct Step {
        tet: usize,
        n: u8,
        s: u8,
        p: u8,
        q: u8,
    }
    let mut steps = vec![Step { tet: first.tet, n: n0, s: s0, p: others[0], q: others[1] }];
    for _ in 0..2 {
        let cur = steps.last().unwrap();
        let g = tri.gluing(FaceId::new(cur.tet, cur.p));
        steps.push(Step {
            tet: g.tet,
            n: g.perm.apply(cur.n),
            s: g.perm.apply(cur.s),
            p: g.perm.apply(cur.q),
            q: g.perm.apply(cur.p),
        });
    }
    debug_assert_eq!(tri.gluing(FaceId::new(steps[2].tet, steps[2].p)).tet, steps[0].tet);

    // new labels: 0 = apex, 1 + j = E_j; t_i contains E_{i-1} (as p_i) and E_i (as q_i)
    let label = |j: usize| (1 + j % 3) as u8;
    let to_old = |i: usize, apex: u8, opposite: u8| {
        let st = &steps[i];
        let mut images = [0u8; 4];
        images[0] = apex;
        images[label(i + 2) as usize] = st.p;
        images[label(i) as usize] = st.q;
        images[label(i + 1) as usize] = opposite;
        Perm4::new(images).unwrap()
    };
    let removed: Vec<usize> = steps.iter().map(|s| s.tet).collect();
    let base = tri.tet_count() - 3;
    let placed = |old: FaceId| -> Option<Placement> {
        let i = removed.iter().position(|&t| t == old.tet)?;
        let st = &steps[i];
        if old.face == st.s {
            Some(Placement { tet: base, face: label(i + 1), to_old: to_old(i, st.n, st.s) })
        } else if old.face == st.n {
            Some(Placement { tet: base + 1, face: label(i + 1), to_old: to_old(i, st.s, st.n) })
        } else {
            None
        }
    };
    Ok(rebuild(
        tri,
        &removed,
        2,
        placed,
        &[(FaceId::new(0, 0), FaceId::new(1, 0), Perm4::IDENTITY)],
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signature::canonical_signature;
    use crate::topology::euler_characteristic;
    use crate::triangulation::FaceRecord;

    fn two_tets() -> Triangulation {
        let rec = |i, f, j, g, p: &str| FaceRecord {
            source: FaceId::new(i, f),
            target: FaceId::new(j, g),
            perm: Perm4::parse_digits(p).unwrap(),
        };
        Triangulation::from_pairs(
            2,
            &[
                rec(0, 0, 1, 1, "1032"),
                rec(0, 1, 1, 0, "1032"),
                rec(0, 2, 1, 3, "0132"),
                rec(0, 3, 1, 2, "0132"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_three_then_three_two_roundtrips() {
        let t = two_tets();
        let e = edge_classes(&t).len();
        for f in 0..4 {
            let up = apply_23(&t, FaceId::new(0, f)).unwrap();
            assert_eq!(up.tet_count(), 3);
            let classes = edge_classes(&up);
            assert_eq!(classes.len(), e + 1);
            assert_eq!(euler_characteristic(&up), euler_characteristic(&t));
            let new_edge = classes.class_of(2, 0);
            assert_eq!(classes.get(new_edge).unwrap().degree(), 3);
            assert!(applicable_32(&up, new_edge).unwrap());
            let down = apply_32(&up, new_edge).unwrap();
            assert_eq!(canonical_signature(&down), canonical_signature(&t));
        }
    }

    #[test]
    fn self_adjacent_face_is_refused() {
        let rec = |i, f, j, g, p: &str| FaceRecord {
            source: FaceId::new(i, f),
            target: FaceId::new(j, g),
            perm: Perm4::parse_digits(p).unwrap(),
        };
        let t = Triangulation::from_pairs(1, &[rec(0, 0, 0, 3, "3012"), rec(0, 1, 0, 2, "1203")]).unwrap();
        assert_eq!(
            apply_23(&t, FaceId::new(0, 0)),
            Err(MoveError::FaceGluesTetToItself(FaceId::new(0, 0)))
        );
    }

    #[test]
    fn unknown_sites() {
        let t = two_tets();
        assert_eq!(applicable_32(&t, 99), Err(MoveError::UnknownEdgeClass(99)));
        assert!(matches!(apply_23(&t, FaceId::new(5, 0)), Err(MoveError::UnknownFace(_))));
    }
}
