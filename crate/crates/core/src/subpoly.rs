//! Simple subpolyhedra of a dual spine.
//!
//! A simple subpolyhedron is determined by the 2-components it contains. A
//! set of components is admissible exactly when no spine edge carries exactly
//! one strand from the set; equivalently, every face of the triangulation
//! meets the chosen edge classes in 0, 2 or 3 of its model edges.

use rayon::prelude::*;
use thiserror::Error;

use crate::spine::{traversal_count, ComponentSet, DualSpine};

/// Largest component count accepted by the bitmask enumeration.
pub const MAX_COMPONENTS: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubpolyError {
    #[error("{0} components exceed the enumeration limit of {MAX_COMPONENTS}")]
    TooManyComponents(usize),
    #[error("components {0} do not form a simple subpolyhedron")]
    NotASubpolyhedron(ComponentSet),
}

/// One member of `F(P)` with its true-vertex count and Euler characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Subpolyhedron {
    pub components: ComponentSet,
    pub v: usize,
    pub chi: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubpolyhedronSet {
    pub component_count: usize,
    /// Sorted by component bitmask; the first is always `∅`, the last the
    /// whole spine.
    pub members: Vec<Subpolyhedron>,
}

impl SubpolyhedronSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Members other than `∅` and the whole spine.
    pub fn proper(&self) -> impl Iterator<Item = &Subpolyhedron> {
        let full = ComponentSet::full(self.component_count);
        self.members
            .iter()
            .filter(move |m| !m.components.is_empty() && m.components != full)
    }

    pub fn is_poor(&self) -> bool {
        self.proper().next().is_none()
    }
}

/// Strand bitmasks per spine edge and wing bitmask per true vertex.
struct Masks {
    strands: Vec<[u32; 3]>,
    wings: Vec<u32>,
}

impl Masks {
    fn new(spine: &DualSpine) -> Self {
        Self {
            strands: spine.edges().iter().map(|e| e.labels.map(|c| 1u32 << c)).collect(),
            wings: spine
                .vertices()
                .iter()
                .map(|l| l.iter().fold(0, |m, &c| m | 1u32 << c))
                .collect(),
        }
    }

    #[inline]
    fn count(strands: &[u32; 3], set: u32) -> u8 {
        strands.iter().filter(|&&m| m & set != 0).count() as u8
    }

    #[inline]
    fn is_simple(&self, set: u32) -> bool {
        self.strands.iter().all(|s| Masks::count(s, set) != 1)
    }

    fn characteristics(&self, set: u32) -> (usize, i64) {
        let k0 = self.wings.iter().filter(|&&w| w & set != 0).count() as i64;
        let v = self.wings.iter().filter(|&&w| w & !set == 0).count();
        let k1 = self.strands.iter().filter(|s| Masks::count(s, set) >= 2).count() as i64;
        let k2 = set.count_ones() as i64;
        (v, k0 - k1 + k2)
    }
}

pub fn is_simple_subpolyhedron(spine: &DualSpine, set: ComponentSet) -> bool {
    spine.edges().iter().all(|e| traversal_count(e, set) != 1)
}

/// `(v, χ)` of the subpolyhedron spanned by `set`.
///
/// χ is computed from the cell structure induced from the spine: 2-cells are
/// the chosen components, 1-cells the spine edges carrying at least two
/// chosen strands, 0-cells the true vertices touched by a chosen wing. The
/// subpolyhedron has a true vertex wherever all six wings are chosen.
pub fn subpoly_characteristics(spine: &DualSpine, set: ComponentSet) -> Result<(usize, i64), SubpolyError> {
    if spine.component_count() > MAX_COMPONENTS {
        return Err(SubpolyError::TooManyComponents(spine.component_count()));
    }
    if !set.is_subset_of(spine.all_components()) || !is_simple_subpolyhedron(spine, set) {
        return Err(SubpolyError::NotASubpolyhedron(set));
    }
    Ok(Masks::new(spine).characteristics(set.0))
}

pub fn enumerate_simple_subpolyhedra(spine: &DualSpine) -> Result<SubpolyhedronSet, SubpolyError> {
    let d = spine.component_count();
    if d > MAX_COMPONENTS {
        return Err(SubpolyError::TooManyComponents(d));
    }
    let masks = Masks::new(spine);
    let visit = |set: u32| {
        masks.is_simple(set).then(|| {
            let (v, chi) = masks.characteristics(set);
            Subpolyhedron {
                components: ComponentSet(set),
                v,
                chi,
            }
        })
    };
    let total = 1u32 << d;
    let members: Vec<Subpolyhedron> = if d <= 16 {
        (0..total).filter_map(visit).collect()
    } else {
        // order is preserved by the indexed parallel iterator
        (0..total).into_par_iter().filter_map(visit).collect()
    };
    Ok(SubpolyhedronSet {
        component_count: d,
        members,
    })
}

pub fn is_poor(spine: &DualSpine) -> Result<bool, SubpolyError> {
    Ok(enumerate_simple_subpolyhedra(spine)?.is_poor())
}
