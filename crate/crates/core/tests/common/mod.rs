//! Independent oracles built from raw gluing data only.

#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use spinal_core::{ComponentSet, DualSpine, FaceId, FaceRecord, Perm4, Triangulation};

pub type RawGluing = (usize, u8, [u8; 4]);
pub type RawTable = Vec<[RawGluing; 4]>;

pub fn raw_table(tri: &Triangulation) -> RawTable {
    (0..tri.tet_count())
        .map(|t| {
            let mut row = [(0, 0, [0; 4]); 4];
            for f in 0..4u8 {
                let g = tri.gluing(FaceId::new(t, f));
                row[f as usize] = (g.tet, g.face, g.perm.images());
            }
            row
        })
        .collect()
}

pub fn from_raw(table: &RawTable) -> Triangulation {
    let mut records = Vec::new();
    for (t, row) in table.iter().enumerate() {
        for (f, &(u, g, p)) in row.iter().enumerate() {
            records.push(FaceRecord {
                source: FaceId::new(t, f as u8),
                target: FaceId::new(u, g),
                perm: Perm4::new(p).unwrap(),
            });
        }
    }
    Triangulation::from_records(table.len(), &records).unwrap()
}

pub fn raw_perms() -> Vec<[u8; 4]> {
    let mut out = Vec::new();
    for a in 0..4u8 {
        for b in 0..4u8 {
            for c in 0..4u8 {
                for d in 0..4u8 {
                    let p = [a, b, c, d];
                    if (0..4u8).all(|x| p.contains(&x)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn invert(p: [u8; 4]) -> [u8; 4] {
    let mut q = [0; 4];
    for i in 0..4 {
        q[p[i] as usize] = i as u8;
    }
    q
}

/// Tetrahedron `t` becomes `pi[t]`, its vertex `x` becomes `sigma[t][x]`.
pub fn relabel_raw(table: &RawTable, pi: &[usize], sigma: &[[u8; 4]]) -> RawTable {
    let mut out = vec![[(0, 0, [0; 4]); 4]; table.len()];
    for (t, row) in table.iter().enumerate() {
        let s_inv = invert(sigma[t]);
        for (f, &(u, g, p)) in row.iter().enumerate() {
            let mut q = [0; 4];
            for x in 0..4 {
                q[x] = sigma[u][p[s_inv[x] as usize] as usize];
            }
            out[pi[t]][sigma[t][f] as usize] = (pi[u], sigma[u][g as usize], q);
        }
    }
    out
}

fn tet_orders(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in tet_orders(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

fn vertex_assignments(n: usize) -> Vec<Vec<[u8; 4]>> {
    let perms = raw_perms();
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<[u8; 4]>| {
                perms.iter().map(move |&p| {
                    let mut v = prefix.clone();
                    v.push(p);
                    v
                })
            })
            .collect();
    }
    out
}

/// Every relabeling of `table`, by brute force.
pub fn all_relabelings(table: &RawTable) -> Vec<RawTable> {
    let n = table.len();
    let sigmas = vertex_assignments(n);
    let mut out = Vec::new();
    for pi in tet_orders(n) {
        for sigma in &sigmas {
            out.push(relabel_raw(table, &pi, sigma));
        }
    }
    out
}

pub fn isomorphic_slow(a: &Triangulation, b: &Triangulation) -> bool {
    if a.tet_count() != b.tet_count() {
        return false;
    }
    let target = raw_table(b);
    all_relabelings(&raw_table(a)).into_iter().any(|r| r == target)
}

/// Smallest relabeling in lexicographic order.
pub fn orbit_key(table: &RawTable) -> RawTable {
    all_relabelings(table).into_iter().min().unwrap()
}

/// Edge classes by flooding unordered model edges across face gluings.
/// Returns the class count and per-tetrahedron labels in the order
/// 01, 02, 03, 12, 13, 23.
pub fn edge_labels_oracle(tri: &Triangulation) -> (usize, Vec<[usize; 6]>) {
    let pairs = [(0u8, 1u8), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let idx = |a: u8, b: u8| pairs.iter().position(|&p| p == (a.min(b), a.max(b))).unwrap();
    let n = tri.tet_count();
    let mut adj = vec![Vec::new(); 6 * n];
    for t in 0..n {
        for f in 0..4u8 {
            let g = tri.gluing(FaceId::new(t, f));
            for (e, &(a, b)) in pairs.iter().enumerate() {
                if a != f && b != f {
                    let other = 6 * g.tet + idx(g.perm.apply(a), g.perm.apply(b));
                    adj[6 * t + e].push(other);
                }
            }
        }
    }
    let mut label = vec![usize::MAX; 6 * n];
    let mut count = 0;
    for start in 0..6 * n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if label[y] == usize::MAX {
                    label[y] = count;
                    queue.push_back(y);
                }
            }
        }
        count += 1;
    }
    let labels = (0..n)
        .map(|t| std::array::from_fn(|e| label[6 * t + e]))
        .collect();
    (count, labels)
}

/// A subset is simple iff at every spine vertex the link graph kept by the
/// subset has all degrees in {0, 2, 3}.
pub fn link_classification_simple(spine: &DualSpine, set: ComponentSet) -> bool {
    let pairs = [(0u8, 1u8), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    spine.vertices().iter().all(|labels| {
        (0..4u8).all(|f| {
            let degree = pairs
                .iter()
                .zip(labels)
                .filter(|(&(a, b), &l)| a != f && b != f && set.contains(l))
                .count();
            degree != 1
        })
    })
}

pub fn simple_sets_oracle(spine: &DualSpine) -> BTreeSet<u32> {
    let d = spine.component_count();
    (0..1u32 << d)
        .filter(|&m| link_classification_simple(spine, ComponentSet(m)))
        .collect()
}

/// `(v, χ)` of the subpolyhedron picked by `set`, counted cell by cell from
/// the triangulation: a tetrahedron is a point of it when one of its edges is
/// chosen and a true vertex when all six are, a face pair is an edge of it
/// when at least two of its three edges are chosen.
pub fn subpoly_cells_oracle(tri: &Triangulation, set: &BTreeSet<usize>) -> (usize, i64) {
    let (_, labels) = edge_labels_oracle(tri);
    let pairs = [(0u8, 1u8), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let points = labels.iter().filter(|l| l.iter().any(|c| set.contains(c))).count();
    let true_vertices = labels.iter().filter(|l| l.iter().all(|c| set.contains(c))).count();
    let mut arcs = 0;
    for t in 0..tri.tet_count() {
        for f in 0..4u8 {
            let g = tri.gluing(FaceId::new(t, f));
            if (g.tet, g.face) < (t, f) {
                continue;
            }
            let kept = pairs
                .iter()
                .enumerate()
                .filter(|(_, &(a, b))| a != f && b != f)
                .filter(|(e, _)| set.contains(&labels[t][*e]))
                .count();
            if kept >= 2 {
                arcs += 1;
            }
        }
    }
    let chi = points as i64 - arcs as i64 + set.len() as i64;
    (true_vertices, chi)
}
