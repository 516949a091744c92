//! Isomorphism signatures by exhaustive relabeling.
//!
//! A connected triangulation is relabeled by a breadth-first walk from every
//! choice of starting tetrahedron and starting vertex order; the walk
//! serializes the gluing table and the lexicographically smallest
//! serialization wins. Components are canonicalized separately and sorted.

use std::cmp::Ordering;
use std::fmt;

use crate::perm::{Perm4, ALL_PERMS};
use crate::triangulation::{FaceId, Triangulation};

/// Canonical byte string identifying a triangulation up to relabeling of
/// tetrahedra and of their vertices.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Signature(Vec<u8>);

impl Signature {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    /// Tetrahedron count, stored as the leading word.
    pub fn tet_count(&self) -> usize {
        u32::from_be_bytes(self.0[..4].try_into().unwrap()) as usize
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Signature({self})")
    }
}

struct Walk {
    code: Vec<u32>,
    order: Vec<usize>,
    maps: Vec<Perm4>,
}

/// Breadth-first relabeling from `start` with vertex map `pi`.
///
/// Returns `None` as soon as the partial code exceeds `bound`.
fn walk(tri: &Triangulation, size: usize, start: usize, pi: Perm4, bound: Option<&[u32]>) -> Option<Walk> {
    let n = tri.tet_count();
    let mut new_index = vec![usize::MAX; n];
    let mut maps = vec![Perm4::IDENTITY; n];
    let mut order = Vec::with_capacity(size);
    new_index[start] = 0;
    maps[start] = pi;
    order.push(start);
    let mut code = Vec::with_capacity(4 * size);
    let mut tight = bound.is_some();

    let mut i = 0;
    while i < order.len() {
        let t = order[i];
        let sigma = maps[t];
        let sigma_inv = sigma.inverse();
        for g in 0..4u8 {
            let f = sigma_inv.apply(g);
            let glue = tri.gluing(FaceId::new(t, f));
            if new_index[glue.tet] == usize::MAX {
                new_index[glue.tet] = order.len();
                // the first gluing into a fresh tetrahedron becomes the identity
                maps[glue.tet] = sigma.compose(glue.perm.inverse());
                order.push(glue.tet);
            }
            let tau = maps[glue.tet];
            let perm = tau.compose(glue.perm).compose(sigma_inv);
            let word = (new_index[glue.tet] as u32 * 4 + tau.apply(glue.face) as u32) * 24 + perm.index() as u32;
            if tight {
                let b = bound.unwrap()[code.len()];
                match word.cmp(&b) {
                    Ordering::Greater => return None,
                    Ordering::Less => tight = false,
                    Ordering::Equal => {}
                }
            }
            code.push(word);
        }
        i += 1;
    }
    Some(Walk { code, order, maps })
}

/// Canonical signature plus the triangulation relabeled into canonical order.
pub fn canonical_form(tri: &Triangulation) -> (Signature, Triangulation) {
    let n = tri.tet_count();
    let mut best_per_component: Vec<Walk> = Vec::new();
    for comp in tri.components() {
        let mut best: Option<Walk> = None;
        for &start in &comp {
            for &pi in &ALL_PERMS {
                if let Some(w) = walk(tri, comp.len(), start, pi, best.as_ref().map(|b| b.code.as_slice())) {
                    if best.as_ref().is_none_or(|b| w.code < b.code) {
                        best = Some(w);
                    }
                }
            }
        }
        best_per_component.push(best.expect("component is nonempty"));
    }
    best_per_component.sort_by(|a, b| (a.order.len(), &a.code).cmp(&(b.order.len(), &b.code)));

    let mut words: Vec<u32> = vec![n as u32];
    let mut tet_map = vec![0usize; n];
    let mut vertex_maps = vec![Perm4::IDENTITY; n];
    let mut offset = 0usize;
    for w in &best_per_component {
        words.push(w.order.len() as u32);
        words.extend(&w.code);
        for (k, &old) in w.order.iter().enumerate() {
            tet_map[old] = offset + k;
            vertex_maps[old] = w.maps[old];
        }
        offset += w.order.len();
    }
    let bytes = words.iter().flat_map(|w| w.to_be_bytes()).collect();
    (Signature(bytes), tri.relabeled(&tet_map, &vertex_maps))
}

pub fn canonical_signature(tri: &Triangulation) -> Signature {
    canonical_form(tri).0
}
