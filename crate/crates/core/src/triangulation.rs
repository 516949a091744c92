//! Ideal triangulations: model tetrahedra with their faces glued in pairs.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::Perm4;

/// A model face: face `face` (opposite vertex `face`) of tetrahedron `tet`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId {
    pub tet: usize,
    pub face: u8,
}

impl FaceId {
    pub fn new(tet: usize, face: u8) -> Self {
        Self { tet, face }
    }
}

impl fmt::Display for FaceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.tet, self.face)
    }
}

/// Where a face is glued, and how its vertices are carried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gluing {
    pub tet: usize,
    pub face: u8,
    pub perm: Perm4,
}

/// One face-pairing record `i f j g p` as it appears in a triangulation file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FaceRecord {
    pub source: FaceId,
    pub target: FaceId,
    pub perm: Perm4,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("a triangulation needs at least one tetrahedron")]
    Empty,
    #[error("face {0} references a tetrahedron outside 0..{1}")]
    TetOutOfRange(FaceId, usize),
    #[error("face {0} has no partner")]
    UnpairedFace(FaceId),
    #[error("face {0} is glued to itself")]
    SelfGluedFace(FaceId),
    #[error("gluing {0} -> {1} is not matched by the inverse record")]
    InconsistentInvolution(FaceId, FaceId),
    #[error("permutation {perm} does not carry face {source_face} onto face {target}")]
    BadPermutation {
        source_face: FaceId,
        target: FaceId,
        perm: Perm4,
    },
    #[error("face {0} is recorded more than once")]
    DuplicateRecord(FaceId),
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}

/// A closed 3-dimensional pseudo-manifold built from `n` model tetrahedra.
///
/// Every one of the `4n` faces is glued to a different face; the stored maps
/// form an involution.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    gluings: Vec<[Gluing; 4]>,
}

impl Triangulation {
    /// Builds and validates a triangulation from records covering both
    /// directions of every face pairing.
    pub fn from_records(tet_count: usize, records: &[FaceRecord]) -> Result<Self, TriangulationError> {
        if tet_count == 0 {
            return Err(TriangulationError::Empty);
        }
        let mut table: Vec<[Option<Gluing>; 4]> = vec![[None; 4]; tet_count];
        for r in records {
            for id in [r.source, r.target] {
                if id.tet >= tet_count || id.face > 3 {
                    return Err(TriangulationError::TetOutOfRange(id, tet_count));
                }
            }
            if r.source == r.target {
                return Err(TriangulationError::SelfGluedFace(r.source));
            }
            if r.perm.apply(r.source.face) != r.target.face {
                return Err(TriangulationError::BadPermutation {
                    source_face: r.source,
                    target: r.target,
                    perm: r.perm,
                });
            }
            let slot = &mut table[r.source.tet][r.source.face as usize];
            if slot.is_some() {
                return Err(TriangulationError::DuplicateRecord(r.source));
            }
            *slot = Some(Gluing {
                tet: r.target.tet,
                face: r.target.face,
                perm: r.perm,
            });
        }

        for tet in 0..tet_count {
            for face in 0..4u8 {
                let here = FaceId::new(tet, face);
                match table[tet][face as usize] {
                    None => {
                        let referenced = records.iter().find(|r| r.target == here);
                        return Err(match referenced {
                            Some(r) => TriangulationError::InconsistentInvolution(r.source, here),
                            None => TriangulationError::UnpairedFace(here),
                        });
                    }
                    Some(g) => {
                        let back = table[g.tet][g.face as usize];
                        let ok = matches!(back, Some(b)
                            if b.tet == tet && b.face == face && b.perm == g.perm.inverse());
                        if !ok {
                            return Err(TriangulationError::InconsistentInvolution(
                                here,
                                FaceId::new(g.tet, g.face),
                            ));
                        }
                    }
                }
            }
        }

        let gluings = table
            .into_iter()
            .map(|row| row.map(|g| g.expect("checked above")))
            .collect();
        Ok(Self { gluings })
    }

    /// Builds a triangulation from one record per face pair; the reverse
    /// direction is filled in automatically.
    pub fn from_pairs(tet_count: usize, pairs: &[FaceRecord]) -> Result<Self, TriangulationError> {
        let records: Vec<FaceRecord> = pairs
            .iter()
            .flat_map(|r| {
                [
                    *r,
                    FaceRecord {
                        source: r.target,
                        target: r.source,
                        perm: r.perm.inverse(),
                    },
                ]
            })
            .collect();
        Self::from_records(tet_count, &records)
    }

    /// Internal constructor for tables already known to be valid.
    pub(crate) fn from_table_unchecked(gluings: Vec<[Gluing; 4]>) -> Self {
        let t = Self { gluings };
        debug_assert!(Triangulation::from_records(t.tet_count(), &t.records()).is_ok());
        t
    }

    pub fn tet_count(&self) -> usize {
        self.gluings.len()
    }

    #[inline]
    pub fn gluing(&self, face: FaceId) -> Gluing {
        self.gluings[face.tet][face.face as usize]
    }

    /// All `4n` directed records, ordered by source face.
    pub fn records(&self) -> Vec<FaceRecord> {
        self.faces()
            .map(|source| {
                let g = self.gluing(source);
                FaceRecord {
                    source,
                    target: FaceId::new(g.tet, g.face),
                    perm: g.perm,
                }
            })
            .collect()
    }

    pub fn faces(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.tet_count()).flat_map(|t| (0..4).map(move |f| FaceId::new(t, f)))
    }

    /// One representative per glued face pair (the smaller side).
    pub fn face_pairs(&self) -> impl Iterator<Item = (FaceId, FaceId)> + '_ {
        self.faces().filter_map(|a| {
            let g = self.gluing(a);
            let b = FaceId::new(g.tet, g.face);
            (a < b).then_some((a, b))
        })
    }

    /// Renames tetrahedra and their vertices.
    ///
    /// Old tetrahedron `t` becomes `tet_map[t]`, and its vertex `v` becomes
    /// `vertex_maps[t].apply(v)`.
    pub fn relabeled(&self, tet_map: &[usize], vertex_maps: &[Perm4]) -> Self {
        let n = self.tet_count();
        assert_eq!(tet_map.len(), n);
        assert_eq!(vertex_maps.len(), n);
        let mut gluings = vec![[Gluing { tet: 0, face: 0, perm: Perm4::IDENTITY }; 4]; n];
        for t in 0..n {
            let sigma = vertex_maps[t];
            for f in 0..4u8 {
                let g = self.gluing(FaceId::new(t, f));
                let tau = vertex_maps[g.tet];
                gluings[tet_map[t]][sigma.apply(f) as usize] = Gluing {
                    tet: tet_map[g.tet],
                    face: tau.apply(g.face),
                    perm: tau.compose(g.perm).compose(sigma.inverse()),
                };
            }
        }
        Self::from_table_unchecked(gluings)
    }

    /// Connected components, as sorted lists of tetrahedron indices.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.tet_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut stack = vec![start];
            let mut comp = Vec::new();
            while let Some(t) = stack.pop() {
                comp.push(t);
                for g in &self.gluings[t] {
                    if !seen[g.tet] {
                        seen[g.tet] = true;
                        stack.push(g.tet);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// True if some gluing map is orientation-preserving, i.e. the standard
    /// vertex orders cannot be used as a coherent orientation.
    pub fn has_even_gluing(&self) -> bool {
        self.gluings.iter().flatten().any(|g| !g.perm.is_odd())
    }
}

impl fmt::Debug for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triangulation({} tets)", self.tet_count())
    }
}

/// Text form: `tets <n>` then one `i f j g p` line per directed face record.
impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "tets {}", self.tet_count())?;
        for r in self.records() {
            writeln!(
                f,
                "{} {} {} {} {}",
                r.source.tet, r.source.face, r.target.tet, r.target.face, r.perm
            )?;
        }
        Ok(())
    }
}

impl FromStr for Triangulation {
    type Err = TriangulationError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let syntax = |line: usize, message: &str| TriangulationError::Syntax {
            line,
            message: message.to_string(),
        };
        let mut tet_count: Option<usize> = None;
        let mut records = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let words: Vec<&str> = line.split_whitespace().collect();
            match tet_count {
                None => {
                    if words.len() != 2 || words[0] != "tets" {
                        return Err(syntax(line_no, "expected header `tets <n>`"));
                    }
                    let n = words[1]
                        .parse()
                        .map_err(|_| syntax(line_no, "bad tetrahedron count"))?;
                    tet_count = Some(n);
                }
                Some(_) => {
                    if words.len() != 5 {
                        return Err(syntax(line_no, "expected `i f j g p`"));
                    }
                    let num = |w: &str| -> Result<usize, TriangulationError> {
                        w.parse().map_err(|_| syntax(line_no, "expected a non-negative integer"))
                    };
                    let (i, f, j, g) = (num(words[0])?, num(words[1])?, num(words[2])?, num(words[3])?);
                    if f > 3 || g > 3 {
                        return Err(syntax(line_no, "face index must be 0..3"));
                    }
                    let perm = Perm4::parse_digits(words[4])
                        .ok_or_else(|| syntax(line_no, "permutation must be four distinct digits 0..3"))?;
                    records.push(FaceRecord {
                        source: FaceId::new(i, f as u8),
                        target: FaceId::new(j, g as u8),
                        perm,
                    });
                }
            }
        }
        let n = tet_count.ok_or_else(|| syntax(0, "missing `tets <n>` header"))?;
        Triangulation::from_records(n, &records)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(i: usize, f: u8, j: usize, g: u8, p: &str) -> FaceRecord {
        FaceRecord {
            source: FaceId::new(i, f),
            target: FaceId::new(j, g),
            perm: Perm4::parse_digits(p).unwrap(),
        }
    }

    #[test]
    fn one_tet_two_pairs_is_valid() {
        // 0 <-> 1 by swapping vertices 0,1; 2 <-> 3 by swapping 2,3
        let t = Triangulation::from_pairs(1, &[rec(0, 0, 0, 1, "1023"), rec(0, 2, 0, 3, "0132")]).unwrap();
        assert_eq!(t.tet_count(), 1);
        assert_eq!(t.face_pairs().count(), 2);
    }

    #[test]
    fn self_glued_face_rejected() {
        let err = Triangulation::from_pairs(1, &[rec(0, 0, 0, 0, "0123"), rec(0, 2, 0, 3, "0132")]).unwrap_err();
        assert_eq!(err, TriangulationError::SelfGluedFace(FaceId::new(0, 0)));
    }

    #[test]
    fn unpaired_face_rejected() {
        let pairs = [
            rec(0, 0, 1, 0, "0123"),
            rec(0, 1, 1, 1, "0123"),
            rec(0, 2, 1, 2, "0123"),
        ];
        let err = Triangulation::from_pairs(2, &pairs).unwrap_err();
        assert!(matches!(err, TriangulationError::UnpairedFace(_)), "{err:?}");
    }

    #[test]
    fn one_sided_record_is_inconsistent() {
        let records = [
            rec(0, 0, 0, 1, "1023"),
            rec(0, 1, 0, 0, "1023"),
            rec(0, 2, 0, 3, "0132"),
        ];
        let err = Triangulation::from_records(1, &records).unwrap_err();
        assert!(matches!(err, TriangulationError::InconsistentInvolution(_, _)), "{err:?}");

        let mismatched = [
            rec(0, 0, 0, 1, "1023"),
            rec(0, 1, 0, 0, "1032"),
            rec(0, 2, 0, 3, "0132"),
            rec(0, 3, 0, 2, "0132"),
        ];
        // 1032 carries face 1 onto face 0 but is not the inverse of 1023
        let err = Triangulation::from_records(1, &mismatched).unwrap_err();
        assert!(matches!(err, TriangulationError::InconsistentInvolution(_, _)), "{err:?}");
    }

    #[test]
    fn bad_permutation_rejected() {
        let err = Triangulation::from_pairs(1, &[rec(0, 0, 0, 1, "0123"), rec(0, 2, 0, 3, "0132")]).unwrap_err();
        assert!(matches!(err, TriangulationError::BadPermutation { .. }));
    }

    #[test]
    fn text_roundtrip() {
        let t = Triangulation::from_pairs(1, &[rec(0, 0, 0, 1, "1023"), rec(0, 2, 0, 3, "0132")]).unwrap();
        let text = format!("# a comment\n{t}");
        let back: Triangulation = text.parse().unwrap();
        assert_eq!(back, t);
        assert!(matches!(
            "tets 1\n0 0 0 1".parse::<Triangulation>(),
            Err(TriangulationError::Syntax { line: 2, .. })
        ));
    }
}
