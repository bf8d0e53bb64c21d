//! Permutations of `{0, .., n-1}` in one-line notation.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

/// A permutation stored as its image vector: `self.apply(i) == self.0[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Builds a permutation from an image vector, returning `None` if the
    /// vector is not a bijection of `0..len`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Permutation(images))
    }

    /// Builds a permutation of `0..n` from disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cycle in cycles {
            for (k, &a) in cycle.iter().enumerate() {
                if a >= n || touched[a] {
                    return None;
                }
                touched[a] = true;
                images[a] = cycle[(k + 1) % cycle.len()];
            }
        }
        Some(Permutation(images))
    }

    /// A transposition of `a` and `b` on `n` points.
    pub fn transposition(n: usize, a: usize, b: usize) -> Self {
        let mut images: Vec<usize> = (0..n).collect();
        images.swap(a, b);
        Permutation(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self.then(other)` applies `self` first: `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&i| other.0[i]).collect())
    }

    /// Composition in the functional order: `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        other.then(self)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn pow(&self, k: i64) -> Permutation {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&sq);
            }
            sq = sq.then(&sq);
            e >>= 1;
        }
        acc
    }

    /// The orbit of `start` listed in the order `start, p(start), p²(start), ..`.
    pub fn cycle_of(&self, start: usize) -> Vec<usize> {
        let mut cycle = vec![start];
        let mut cur = self.0[start];
        while cur != start {
            cycle.push(cur);
            cur = self.0[cur];
        }
        cycle
    }

    /// Disjoint cycle decomposition including fixed points, each cycle
    /// starting at its least element, cycles sorted by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for i in 0..self.0.len() {
            if !seen[i] {
                let c = self.cycle_of(i);
                for &a in &c {
                    seen[a] = true;
                }
                out.push(c);
            }
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }

    /// Restriction to a subset the permutation leaves invariant, reindexed
    /// by position in `subset`.
    pub fn restrict(&self, subset: &[usize]) -> Option<Permutation> {
        let mut pos = vec![usize::MAX; self.degree()];
        for (k, &a) in subset.iter().enumerate() {
            pos[a] = k;
        }
        let images: Option<Vec<usize>> = subset
            .iter()
            .map(|&a| {
                let p = pos[self.0[a]];
                (p != usize::MAX).then_some(p)
            })
            .collect();
        images.and_then(Permutation::from_images)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with 1-based points, fixed points omitted; `()` for the identity.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, a) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", a + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// All permutations of `0..n` in lexicographic order of their image vectors.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        out.push(Permutation(current.clone()));
        if !next_permutation(&mut current) {
            break;
        }
    }
    out
}

/// Advances `v` to the next permutation in lexicographic order.
pub fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
