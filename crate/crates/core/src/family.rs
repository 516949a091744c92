//! The decorated graphs `Γ(k,l,m)` and the blocks they are assembled from.
//!
//! `Γ(k,l,m)` is a cycle of `N = 2(k+l+m+3)` vertices with every edge
//! doubled. Its double edges are grouped in pairs around every other vertex,
//! and each pair is decorated as block `A` or `B` following the cyclic string
//! `A B^k A B^l A B^m`.
//!
//! Block `j` owns vertex `2j` (the junction it shares with the previous
//! block) and vertex `2j + 1` (its center). At every vertex the slots are
//! `0` upper-left, `1` lower-left, `2` lower-right, `3` upper-right, so the
//! upper strand of a double edge runs from slot 3 to slot 0 and the lower
//! strand from slot 2 to slot 1.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::ograph::{decode_ograph, Crossing, DecoratedGraph, OEdge, OgraphError};
use crate::spine::dualize;
use crate::subpoly::is_poor;
use crate::topology::edge_classes;

/// The decoration shipped with the crate, produced by
/// [`search_block_decorations`] on `{(1,1,1), (2,1,1), (2,2,2)}`.
pub const DEFAULT_BLOCKS: &str = include_str!("../data/blocks.default");

/// Parameter triples the shipped decoration was searched against.
pub const SEARCH_PARAMS: [(usize, usize, usize); 3] = [(1, 1, 1), (2, 1, 1), (2, 2, 2)];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family parameters must be positive, got ({0}, {1}, {2})")]
    BadParameters(usize, usize, usize),
    #[error("bad block decoration: {0}")]
    BadBlockDecoration(String),
    #[error("no block decoration makes every test triangulation poor and three-edge")]
    NoDecorationFound,
    #[error("block search needs at least one parameter triple")]
    EmptyTestSet,
    #[error(transparent)]
    Graph(#[from] OgraphError),
}

/// Decoration of one block: crossings of its two vertices and colors of its
/// four edges (junction-center upper, lower, then center-next upper, lower).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    pub junction: Crossing,
    pub center: Crossing,
    pub colors: [u8; 4],
}

/// Number of distinct block decorations.
pub const BLOCK_SPACE: usize = 4 * 81;

impl Block {
    /// Position in the search order.
    pub fn index(&self) -> usize {
        let bit = |c: Crossing| usize::from(c == Crossing::Over13);
        let colors = self.colors.iter().fold(0, |acc, &c| acc * 3 + c as usize);
        (bit(self.junction) * 2 + bit(self.center)) * 81 + colors
    }

    pub fn from_index(index: usize) -> Self {
        assert!(index < BLOCK_SPACE);
        let crossing = |b: usize| if b == 0 { Crossing::Over02 } else { Crossing::Over13 };
        let mut rest = index % 81;
        let mut colors = [0u8; 4];
        for c in colors.iter_mut().rev() {
            *c = (rest % 3) as u8;
            rest /= 3;
        }
        Block {
            junction: crossing(index / 81 / 2),
            center: crossing(index / 81 % 2),
            colors,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockDecoration {
    pub a: Block,
    pub b: Block,
}

impl BlockDecoration {
    /// Sort key used to order search results.
    pub fn code(&self) -> usize {
        self.a.index() * BLOCK_SPACE + self.b.index()
    }

    pub fn from_code(code: usize) -> Self {
        Self {
            a: Block::from_index(code / BLOCK_SPACE),
            b: Block::from_index(code % BLOCK_SPACE),
        }
    }

    /// The decoration in `data/blocks.default`.
    pub fn shipped() -> Self {
        DEFAULT_BLOCKS.parse().expect("shipped block decoration parses")
    }
}

impl fmt::Display for BlockDecoration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, block) in [("A", &self.a), ("B", &self.b)] {
            let (j0, j1) = block.junction.slots();
            let (c0, c1) = block.center.slots();
            let [x, y, z, w] = block.colors;
            writeln!(f, "{name} junction {j0} {j1} center {c0} {c1} colors {x} {y} {z} {w}")?;
        }
        Ok(())
    }
}

impl FromStr for BlockDecoration {
    type Err = FamilyError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let bad = |m: String| FamilyError::BadBlockDecoration(m);
        let mut a = None;
        let mut b = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let w: Vec<&str> = line.split_whitespace().collect();
            if w.len() != 12 || w[1] != "junction" || w[4] != "center" || w[7] != "colors" {
                return Err(bad(format!(
                    "line {}: expected `<A|B> junction <s> <s> center <s> <s> colors <c> <c> <c> <c>`",
                    i + 1
                )));
            }
            let num = |s: &str| -> Result<u8, FamilyError> {
                s.parse().map_err(|_| bad(format!("line {}: `{s}` is not a small integer", i + 1)))
            };
            let crossing = |x: &str, y: &str| -> Result<Crossing, FamilyError> {
                Crossing::from_slots(num(x)?, num(y)?)
                    .ok_or_else(|| bad(format!("line {}: crossing slots must be `0 2` or `1 3`", i + 1)))
            };
            let mut colors = [0u8; 4];
            for (slot, word) in colors.iter_mut().zip(&w[8..]) {
                *slot = num(word)?;
                if *slot > 2 {
                    return Err(bad(format!("line {}: color {} is not in Z3", i + 1, slot)));
                }
            }
            let block = Block {
                junction: crossing(w[2], w[3])?,
                center: crossing(w[5], w[6])?,
                colors,
            };
            let target = match w[0] {
                "A" => &mut a,
                "B" => &mut b,
                other => return Err(bad(format!("line {}: unknown block `{other}`", i + 1))),
            };
            if target.replace(block).is_some() {
                return Err(bad(format!("line {}: block {} given twice", i + 1, w[0])));
            }
        }
        match (a, b) {
            (Some(a), Some(b)) => Ok(BlockDecoration { a, b }),
            _ => Err(bad("both blocks A and B must be given".into())),
        }
    }
}

/// Block sequence `A B^k A B^l A B^m`.
fn block_word(k: usize, l: usize, m: usize) -> Vec<bool> {
    let mut word = Vec::with_capacity(k + l + m + 3);
    for run in [k, l, m] {
        word.push(true);
        word.extend(std::iter::repeat_n(false, run));
    }
    word
}

pub fn generate_family(k: usize, l: usize, m: usize, blocks: &BlockDecoration) -> Result<DecoratedGraph, FamilyError> {
    if k == 0 || l == 0 || m == 0 {
        return Err(FamilyError::BadParameters(k, l, m));
    }
    let word = block_word(k, l, m);
    let n = 2 * word.len();
    let mut crossings = Vec::with_capacity(n);
    let mut edges = Vec::with_capacity(2 * n);
    for (j, &is_a) in word.iter().enumerate() {
        let block = if is_a { &blocks.a } else { &blocks.b };
        let (junction, center, next) = (2 * j, 2 * j + 1, (2 * j + 2) % n);
        crossings.push(block.junction);
        crossings.push(block.center);
        let [c0, c1, c2, c3] = block.colors;
        edges.push(OEdge { ends: [(junction, 3), (center, 0)], color: c0 });
        edges.push(OEdge { ends: [(junction, 2), (center, 1)], color: c1 });
        edges.push(OEdge { ends: [(center, 3), (next, 0)], color: c2 });
        edges.push(OEdge { ends: [(center, 2), (next, 1)], color: c3 });
    }
    Ok(DecoratedGraph::new(crossings, edges)?)
}

/// Whether the decoded `T(k,l,m)` is poor and three-edge, with all edge
/// degrees `12(k+1)` when `k = l = m`.
pub fn decoration_passes(blocks: &BlockDecoration, params: &[(usize, usize, usize)]) -> Result<bool, FamilyError> {
    for &(k, l, m) in params {
        let tri = decode_ograph(&generate_family(k, l, m, blocks)?)?;
        let classes = edge_classes(&tri);
        if classes.len() != 3 {
            return Ok(false);
        }
        if k == l && l == m && classes.degrees().iter().any(|&d| d != 12 * (k + 1)) {
            return Ok(false);
        }
        if !is_poor(&dualize(&tri)).expect("three components fit the enumeration") {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhausts all `324²` pairs of block decorations and keeps those passing
/// [`decoration_passes`] for every triple in `params`, sorted by
/// [`BlockDecoration::code`].
///
/// Every crossing choice and every coloring is tried, so no assumption about
/// how a double-edge pair may be decorated narrows the search.
pub fn search_block_decorations(params: &[(usize, usize, usize)]) -> Result<Vec<BlockDecoration>, FamilyError> {
    if params.is_empty() {
        return Err(FamilyError::EmptyTestSet);
    }
    for &(k, l, m) in params {
        if k == 0 || l == 0 || m == 0 {
            return Err(FamilyError::BadParameters(k, l, m));
        }
    }
    // cheapest triple first
    let mut order = params.to_vec();
    order.sort_by_key(|&(k, l, m)| k + l + m);

    let found: Vec<BlockDecoration> = (0..BLOCK_SPACE)
        .into_par_iter()
        .flat_map_iter(|a| {
            let order = &order;
            (0..BLOCK_SPACE).filter_map(move |b| {
                let deco = BlockDecoration {
                    a: Block::from_index(a),
                    b: Block::from_index(b),
                };
                decoration_passes(&deco, order)
                    .expect("generated graphs are valid")
                    .then_some(deco)
            })
        })
        .collect();
    if found.is_empty() {
        return Err(FamilyError::NoDecorationFound);
    }
    let mut found = found;
    found.sort_by_key(BlockDecoration::code);
    Ok(found)
}
