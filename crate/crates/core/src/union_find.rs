//! Disjoint sets, optionally tracking a relative orientation bit per element.

/// Union-find where every element carries a parity relative to its root.
///
/// Used for edge identifications: two model edges may be identified with
/// their endpoints matched (parity 0) or swapped (parity 1). A union that
/// closes a cycle with odd total parity is reported as a conflict, which is
/// exactly an edge glued to itself reversed.
#[derive(Debug, Clone)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    rank: Vec<u8>,
}

impl ParityUnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            parity: vec![false; len],
            rank: vec![0; len],
        }
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut root = x;
        let mut acc = false;
        while self.parent[root] != root {
            acc ^= self.parity[root];
            root = self.parent[root];
        }
        // path compression, fixing parities along the way
        let mut cur = x;
        let mut cur_par = acc;
        while self.parent[cur] != root && cur != root {
            let next = self.parent[cur];
            let next_par = cur_par ^ self.parity[cur];
            self.parent[cur] = root;
            self.parity[cur] = cur_par;
            cur = next;
            cur_par = next_par;
        }
        (root, acc)
    }

    /// Records `parity(a) ^ parity(b) == rel`. Returns `false` if this
    /// contradicts what is already known.
    pub fn union(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        let link = pa ^ pb ^ rel;
        let (child, root) = if self.rank[ra] < self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child] = root;
        self.parity[child] = link;
        if self.rank[ra] == self.rank[rb] {
            self.rank[root] += 1;
        }
        true
    }
}

/// Parity union-find without path compression, supporting rollback.
///
/// The census search glues faces one at a time and backtracks; `snapshot`
/// and `rollback` undo unions in LIFO order.
#[derive(Debug, Clone)]
pub struct UndoParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<bool>,
    size: Vec<usize>,
    log: Vec<usize>,
}

impl UndoParityUnionFind {
    pub fn new(len: usize) -> Self {
        Self {
            parent: (0..len).collect(),
            parity: vec![false; len],
            size: vec![1; len],
            log: Vec::new(),
        }
    }

    pub fn find(&self, mut x: usize) -> (usize, bool) {
        let mut acc = false;
        while self.parent[x] != x {
            acc ^= self.parity[x];
            x = self.parent[x];
        }
        (x, acc)
    }

    pub fn union(&mut self, a: usize, b: usize, rel: bool) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa ^ pb == rel;
        }
        let (child, root) = if self.size[ra] < self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child] = root;
        self.parity[child] = pa ^ pb ^ rel;
        self.size[root] += self.size[child];
        self.log.push(child);
        true
    }

    pub fn snapshot(&self) -> usize {
        self.log.len()
    }

    pub fn rollback(&mut self, mark: usize) {
        while self.log.len() > mark {
            let child = self.log.pop().unwrap();
            let root = self.parent[child];
            self.size[root] -= self.size[child];
            self.parent[child] = child;
            self.parity[child] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_cycle_conflicts() {
        let mut uf = ParityUnionFind::new(3);
        assert!(uf.union(0, 1, true));
        assert!(uf.union(1, 2, true));
        assert!(uf.union(0, 2, false));
        assert!(!uf.union(2, 0, true));
        assert_eq!(uf.find(0).0, uf.find(2).0);
    }

    #[test]
    fn rollback_restores_state() {
        let mut uf = UndoParityUnionFind::new(4);
        assert!(uf.union(0, 1, false));
        let mark = uf.snapshot();
        assert!(uf.union(1, 2, true));
        assert!(uf.union(2, 3, false));
        assert!(!uf.union(0, 3, false));
        uf.rollback(mark);
        assert_ne!(uf.find(0).0, uf.find(2).0);
        assert!(uf.union(0, 3, false));
    }
}
