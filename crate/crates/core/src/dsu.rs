//! Union-find carrying, for every element, the parity of its path to the
//! root. Solves systems of constraints `x_a + x_b ≡ p (mod 2)`.

#[derive(Clone, Debug)]
pub struct ParityUnionFind {
    parent: Vec<usize>,
    // parity of the edge to `parent`
    parity: Vec<bool>,
    rank: Vec<u8>,
}

/// `union` found that the requested parity contradicts the existing one.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParityConflict {
    /// Parity already forced between the two elements.
    pub implied: bool,
}

impl ParityUnionFind {
    pub fn new(len: usize) -> Self {
        ParityUnionFind {
            parent: (0..len).collect(),
            parity: vec![false; len],
            rank: vec![0; len],
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Root of `x` and the parity of `x` relative to it.
    pub fn find(&mut self, x: usize) -> (usize, bool) {
        let mut path = Vec::new();
        let mut cur = x;
        while self.parent[cur] != cur {
            path.push(cur);
            cur = self.parent[cur];
        }
        let root = cur;
        // walk back from the node nearest the root, accumulating parity
        let mut acc = false;
        for &node in path.iter().rev() {
            acc ^= self.parity[node];
            self.parity[node] = acc;
            self.parent[node] = root;
        }
        (
            root,
            if path.is_empty() {
                false
            } else {
                self.parity[x]
            },
        )
    }

    /// Imposes `x_a + x_b ≡ parity`. Returns `Ok(true)` when two classes were
    /// merged and `Ok(false)` when the constraint was already implied.
    pub fn union(&mut self, a: usize, b: usize, parity: bool) -> Result<bool, ParityConflict> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            let implied = pa ^ pb;
            return if implied == parity {
                Ok(false)
            } else {
                Err(ParityConflict { implied })
            };
        }
        let link = pa ^ pb ^ parity;
        let (child, root) = if self.rank[ra] < self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[child] = root;
        self.parity[child] = link;
        if self.rank[child] == self.rank[root] {
            self.rank[root] += 1;
        }
        Ok(true)
    }

    /// Parity between `a` and `b`, if they are in the same class.
    pub fn relation(&mut self, a: usize, b: usize) -> Option<bool> {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        (ra == rb).then_some(pa ^ pb)
    }
}
