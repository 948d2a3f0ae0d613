//! Disjoint-set forests: a path-compressing one for one-shot component
//! computations and a rollback variant for backtracking searches.

#[derive(Clone, Debug)]
pub struct DisjointSet {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl DisjointSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        while self.parent[x as usize] != root {
            let next = self.parent[x as usize];
            self.parent[x as usize] = root;
            x = next;
        }
        root
    }

    pub fn union(&mut self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return a;
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        a
    }

    #[cfg(test)]
    pub fn size_of(&mut self, x: u32) -> u32 {
        let r = self.find(x);
        self.size[r as usize]
    }
}

/// Union by size without path compression, so every union can be undone.
#[derive(Clone, Debug)]
pub struct RollbackSet {
    parent: Vec<u32>,
    size: Vec<u32>,
    history: Vec<u32>,
}

impl RollbackSet {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
            history: Vec::new(),
        }
    }

    pub fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Merges the sets of `a` and `b`, returning the size of the result.
    pub fn union(&mut self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return self.size[a as usize];
        }
        if self.size[a as usize] < self.size[b as usize] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b as usize] = a;
        self.size[a as usize] += self.size[b as usize];
        self.history.push(b);
        self.size[a as usize]
    }

    pub fn checkpoint(&self) -> usize {
        self.history.len()
    }

    pub fn rollback(&mut self, checkpoint: usize) {
        while self.history.len() > checkpoint {
            let b = self.history.pop().expect("non-empty history");
            let a = self.parent[b as usize];
            self.size[a as usize] -= self.size[b as usize];
            self.parent[b as usize] = b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rollback_restores_sizes() {
        let mut s = RollbackSet::new(5);
        let cp = s.checkpoint();
        assert_eq!(s.union(0, 1), 2);
        assert_eq!(s.union(1, 2), 3);
        let mid = s.checkpoint();
        assert_eq!(s.union(3, 4), 2);
        assert_eq!(s.union(0, 4), 5);
        s.rollback(mid);
        assert_ne!(s.find(0), s.find(3));
        assert_eq!(s.find(0), s.find(2));
        s.rollback(cp);
        assert!((0..5).all(|v| s.find(v) == v));
    }

    #[test]
    fn compressing_set_sizes() {
        let mut s = DisjointSet::new(4);
        s.union(0, 1);
        s.union(2, 3);
        assert_eq!(s.size_of(1), 2);
        s.union(1, 3);
        assert_eq!(s.size_of(0), 4);
    }
}
