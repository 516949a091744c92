//! Minimality verdicts and the exhaustive census of small triangulations.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use crate::golden::{epsilon_invariant, EpsilonInvariant};
use crate::moves::applicable_32;
use crate::perm::{Perm4, ALL_PERMS};
use crate::signature::{canonical_form, Signature};
use crate::spine::dualize;
use crate::subpoly::{is_poor, SubpolyError};
use crate::topology::{edge_classes, edge_index, euler_characteristic, face_edges, vertex_links, EDGE_VERTICES};
use crate::triangulation::{FaceId, Gluing, Triangulation};
use crate::union_find::UndoParityUnionFind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Status {
    Minimal,
    Unknown,
}

/// The rule that certified minimality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Criterion {
    /// A single edge.
    OneEdge,
    /// Two edges and no 3-2 move applies.
    TwoEdgeNo32,
    /// Three edges and a poor dual spine.
    PoorThreeEdge,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Evidence {
    pub edges: usize,
    pub tets: usize,
    /// Set when poorness was checked (three edges).
    pub poor: Option<bool>,
    /// Set when 3-2 applicability was checked (two edges): number of edge
    /// classes admitting a 3-2 move.
    pub movable_edges: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Verdict {
    pub status: Status,
    pub criterion: Criterion,
    pub evidence: Evidence,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{:?}", self.status, self.criterion)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerdictError {
    #[error("edge class {0} is glued to itself reversed; not a manifold triangulation")]
    NonManifoldInput(usize),
    #[error(transparent)]
    Subpoly(#[from] SubpolyError),
}

pub fn minimality_verdict(tri: &Triangulation) -> Result<Verdict, VerdictError> {
    let classes = edge_classes(tri);
    if let Some(c) = classes.classes().iter().find(|c| c.reversed) {
        return Err(VerdictError::NonManifoldInput(c.id));
    }
    let mut evidence = Evidence {
        edges: classes.len(),
        tets: tri.tet_count(),
        poor: None,
        movable_edges: None,
    };
    let criterion = match classes.len() {
        1 => Criterion::OneEdge,
        2 => {
            let movable = (0..2)
                .filter(|&e| applicable_32(tri, e).expect("edge id in range"))
                .count();
            evidence.movable_edges = Some(movable);
            if movable == 0 {
                Criterion::TwoEdgeNo32
            } else {
                Criterion::None
            }
        }
        3 => {
            let poor = is_poor(&dualize(tri))?;
            evidence.poor = Some(poor);
            if poor {
                Criterion::PoorThreeEdge
            } else {
                Criterion::None
            }
        }
        _ => Criterion::None,
    };
    let status = if criterion == Criterion::None {
        Status::Unknown
    } else {
        Status::Minimal
    };
    Ok(Verdict {
        status,
        criterion,
        evidence,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CensusError {
    #[error("census size {0} is not supported (1, 2 or 3)")]
    UnsupportedSize(usize),
    #[error("the 3-tetrahedron census is a long run; enable it explicitly")]
    LongRunNotEnabled,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CensusOptions {
    /// Required for `n = 3`.
    pub allow_long_run: bool,
}

#[derive(Debug, Clone)]
pub struct CensusMember {
    pub signature: Signature,
    /// The member in canonical labeling.
    pub triangulation: Triangulation,
    pub edges: usize,
    pub chi: i64,
    pub link_euler_total: i64,
    /// No edge is glued to itself reversed.
    pub manifold: bool,
    pub orientable: bool,
    pub epsilon: EpsilonInvariant,
    /// `None` for non-manifold members.
    pub verdict: Option<Verdict>,
}

#[derive(Debug, Clone)]
pub struct CensusResult {
    pub n: usize,
    /// Sorted by signature.
    pub members: Vec<CensusMember>,
}

/// All connected triangulations with `n` tetrahedra, up to isomorphism.
///
/// Gluing tables are generated in breadth-first normal form: faces are
/// filled in order, and a face reaching a tetrahedron not yet in use opens
/// the next one with the identity map. Every connected triangulation has
/// such a labeling, so the search is complete; duplicates are merged by
/// canonical signature. For `n = 3` partial tables that already glue an edge
/// to itself reversed are cut off, so that census has manifold members only.
pub fn census_enumerate(n: usize, options: CensusOptions) -> Result<CensusResult, CensusError> {
    if !(1..=3).contains(&n) {
        return Err(CensusError::UnsupportedSize(n));
    }
    if n == 3 && !options.allow_long_run {
        return Err(CensusError::LongRunNotEnabled);
    }
    let canonical = enumerate_canonical(n, n == 3);
    let members = canonical
        .into_par_iter()
        .map(|(signature, triangulation)| annotate(signature, triangulation))
        .collect();
    Ok(CensusResult { n, members })
}

fn annotate(signature: Signature, triangulation: Triangulation) -> CensusMember {
    let links = vertex_links(&triangulation);
    let manifold = links.is_manifold();
    let spine = dualize(&triangulation);
    CensusMember {
        edges: spine.component_count(),
        chi: euler_characteristic(&triangulation),
        link_euler_total: links.total_euler_characteristic(),
        manifold,
        orientable: links.all_orientable(),
        epsilon: epsilon_invariant(&spine).expect("census spines are small"),
        verdict: manifold.then(|| minimality_verdict(&triangulation).expect("manifold input")),
        signature,
        triangulation,
    }
}

/// Canonical representatives keyed by signature.
pub fn enumerate_canonical(n: usize, prune_reversed_edges: bool) -> BTreeMap<Signature, Triangulation> {
    let root = Partial::new(n, prune_reversed_edges);
    let first = FaceId::new(0, 0);
    root.choices(first)
        .into_par_iter()
        .map(|choice| {
            let mut state = root.clone();
            let mut out = BTreeMap::new();
            if state.glue(first, choice) {
                state.extend(&mut out);
            }
            out
        })
        .reduce(BTreeMap::new, |mut a, b| {
            a.extend(b);
            a
        })
}

#[derive(Clone)]
struct Partial {
    n: usize,
    table: Vec<[Option<Gluing>; 4]>,
    created: usize,
    edges: Option<UndoParityUnionFind>,
}

impl Partial {
    fn new(n: usize, prune: bool) -> Self {
        Self {
            n,
            table: vec![[None; 4]; n],
            created: 1,
            edges: prune.then(|| UndoParityUnionFind::new(6 * n)),
        }
    }

    fn next_free(&self) -> Option<FaceId> {
        (0..self.created)
            .flat_map(|t| (0..4u8).map(move |f| FaceId::new(t, f)))
            .find(|f| self.table[f.tet][f.face as usize].is_none())
    }

    fn choices(&self, face: FaceId) -> Vec<Gluing> {
        let mut out = Vec::new();
        for t in 0..self.created {
            for f in 0..4u8 {
                let other = FaceId::new(t, f);
                if other == face || self.table[t][f as usize].is_some() {
                    continue;
                }
                for &perm in ALL_PERMS.iter().filter(|p| p.apply(face.face) == f) {
                    out.push(Gluing { tet: t, face: f, perm });
                }
            }
        }
        if self.created < self.n {
            out.push(Gluing {
                tet: self.created,
                face: face.face,
                perm: Perm4::IDENTITY,
            });
        }
        out
    }

    /// Glues `face` as described; returns false if pruning rejects it.
    fn glue(&mut self, face: FaceId, g: Gluing) -> bool {
        if g.tet == self.created {
            self.created += 1;
        }
        self.table[face.tet][face.face as usize] = Some(g);
        self.table[g.tet][g.face as usize] = Some(Gluing {
            tet: face.tet,
            face: face.face,
            perm: g.perm.inverse(),
        });
        if let Some(uf) = self.edges.as_mut() {
            for e in face_edges(face.face) {
                let (x, y) = EDGE_VERTICES[e as usize];
                let (px, py) = (g.perm.apply(x), g.perm.apply(y));
                let target = g.tet * 6 + edge_index(px, py) as usize;
                if !uf.union(face.tet * 6 + e as usize, target, px > py) {
                    return false;
                }
            }
        }
        true
    }

    fn unglue(&mut self, face: FaceId, g: Gluing, created_before: usize, mark: usize) {
        self.table[face.tet][face.face as usize] = None;
        self.table[g.tet][g.face as usize] = None;
        self.created = created_before;
        if let Some(uf) = self.edges.as_mut() {
            uf.rollback(mark);
        }
    }

    fn extend(&mut self, out: &mut BTreeMap<Signature, Triangulation>) {
        let Some(face) = self.next_free() else {
            if self.created == self.n {
                let table = self.table.iter().map(|row| row.map(|g| g.unwrap())).collect();
                let (sig, canon) = canonical_form(&Triangulation::from_table_unchecked(table));
                out.entry(sig).or_insert(canon);
            }
            return;
        };
        for choice in self.choices(face) {
            let created_before = self.created;
            let mark = self.edges.as_ref().map_or(0, |uf| uf.snapshot());
            if self.glue(face, choice) {
                self.extend(out);
            }
            self.unglue(face, choice, created_before, mark);
        }
    }
}
