//! Finite maps `r: X × X -> X × X` stored as total lookup tables.
//!
//! Elements of `X` are `0..n` internally; the text format is 1-based.

mod canonical;
mod classify;
mod format;

pub use canonical::{canonical_form, CANONICAL_BOUND};
pub use classify::{classify, classify_with_bound, PropertyReport, Witness, R_ORDER_BOUND};
pub use format::{
    parse_solution, parse_solution_file, parse_solution_json, serialize, serialize_json, CoefficientLine, SolutionFile,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

pub type Pair = (usize, usize);

/// A bijection of `X × X` for a finite set `X = {0, .., n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolutionMap {
    n: usize,
    table: Vec<Pair>,
    names: Option<Vec<String>>,
}

impl SolutionMap {
    /// Builds a map from its table, indexed by `x * n + y`.
    pub fn new(n: usize, table: Vec<Pair>) -> Result<Self> {
        if n == 0 {
            return Err(Error::SizeMismatch("X must be nonempty".into()));
        }
        if table.len() != n * n {
            return Err(Error::SizeMismatch(format!("table has {} entries, expected {}", table.len(), n * n)));
        }
        let mut hit = vec![false; n * n];
        for &(a, b) in &table {
            if a >= n || b >= n {
                return Err(Error::SizeMismatch(format!("image ({}, {}) outside X", a + 1, b + 1)));
            }
            if std::mem::replace(&mut hit[a * n + b], true) {
                return Err(Error::NotBijective { pair: (a, b) });
            }
        }
        Ok(SolutionMap { n, table, names: None })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Pair) -> Result<Self> {
        let table = (0..n * n).map(|u| f(u / n, u % n)).collect();
        Self::new(n, table)
    }

    /// Attaches element labels; they must be distinct and whitespace-free.
    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.n {
            return Err(Error::SizeMismatch(format!("{} names for {} elements", names.len(), self.n)));
        }
        let mut sorted = names.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != names.len() || names.iter().any(|s| s.is_empty() || s.contains(char::is_whitespace)) {
            return Err(Error::SizeMismatch("names must be distinct nonempty tokens".into()));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn without_names(mut self) -> Self {
        self.names = None;
        self
    }

    /// The flip `r(x, y) = (y, x)`.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |x, y| (y, x)).expect("flip is a bijection")
    }

    /// Lyubashenko's permutational map `r(x, y) = (g(y), f(x))`.
    ///
    /// Only bijective `f`, `g` give a bijection of `X × X`; anything else is
    /// rejected here rather than producing a table that is not a map of pairs.
    pub fn permutational(f: &[usize], g: &[usize]) -> Result<Self> {
        let n = f.len();
        if g.len() != n {
            return Err(Error::SizeMismatch("f and g act on different sets".into()));
        }
        let fp = Permutation::from_images(f.to_vec()).ok_or_else(|| Error::InvalidPermutation(format!("f = {f:?}")))?;
        let gp = Permutation::from_images(g.to_vec()).ok_or_else(|| Error::InvalidPermutation(format!("g = {g:?}")))?;
        Self::from_fn(n, |x, y| (gp.apply(y), fp.apply(x)))
    }

    /// Rebuilds `r(x, y) = (L_x(y), L_y^{-1}(x))` from the left actions.
    pub fn from_left_actions(left: &[Permutation], require_square_free: bool) -> Result<Self> {
        let n = left.len();
        if left.iter().any(|p| p.degree() != n) {
            return Err(Error::SizeMismatch("each L_x must act on all of X".into()));
        }
        if require_square_free {
            if let Some(x) = (0..n).find(|&x| left[x].apply(x) != x) {
                return Err(Error::NotSquareFree(x));
            }
        }
        let inverses: Vec<Permutation> = left.iter().map(Permutation::inverse).collect();
        Self::from_fn(n, |x, y| (left[x].apply(y), inverses[y].apply(x)))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Pair {
        self.table[x * self.n + y]
    }

    #[inline]
    pub fn apply(&self, (x, y): Pair) -> Pair {
        self.get(x, y)
    }

    pub fn table(&self) -> &[Pair] {
        &self.table
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Display label of an element: its name, or `x<i+1>`.
    pub fn label(&self, x: usize) -> String {
        match &self.names {
            Some(names) => names[x].clone(),
            None => format!("x{}", x + 1),
        }
    }

    /// Looks up an element by label (names, `x<k>` or a bare 1-based index).
    pub fn element(&self, label: &str) -> Option<usize> {
        if let Some(names) = &self.names {
            if let Some(i) = names.iter().position(|s| s == label) {
                return Some(i);
            }
        }
        let digits = label.strip_prefix('x').unwrap_or(label);
        match digits.parse::<usize>() {
            Ok(k) if (1..=self.n).contains(&k) => Some(k - 1),
            _ => None,
        }
    }

    /// Parses a word of generator labels separated by whitespace. Without
    /// custom names, `x3x2x1` is accepted as shorthand for `x3 x2 x1`.
    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        let mut word = Vec::new();
        let mut column = 1;
        for token in text.split_inclusive(char::is_whitespace) {
            let label = token.trim();
            if !label.is_empty() {
                let start = column + token.len() - token.trim_start().len();
                let fused = || -> Option<Vec<usize>> {
                    let rest = label.strip_prefix('x')?;
                    rest.split('x').map(|d| self.element(&format!("x{d}"))).collect()
                };
                match self.element(label).map(|x| vec![x]).or_else(fused) {
                    Some(xs) => word.extend(xs),
                    None => {
                        return Err(Error::Syntax {
                            line: 1,
                            column: start,
                            message: format!("unknown generator `{label}`"),
                        })
                    }
                }
            }
            column += token.len();
        }
        Ok(word)
    }

    /// The inverse bijection of `X × X`.
    pub fn inverse(&self) -> SolutionMap {
        let mut inv = vec![(0, 0); self.n * self.n];
        for (u, &(a, b)) in self.table.iter().enumerate() {
            inv[a * self.n + b] = (u / self.n, u % self.n);
        }
        SolutionMap { n: self.n, table: inv, names: self.names.clone() }
    }

    /// `r` acting on positions `i, i+1` of a word, in place.
    pub fn act_at(&self, word: &mut [usize], i: usize) {
        let (a, b) = self.get(word[i], word[i + 1]);
        word[i] = a;
        word[i + 1] = b;
    }

    /// Conjugates the map by a bijection of `X`: the new table sends
    /// `(π x, π y)` to `π r(x, y)`. Names travel with their elements.
    pub fn relabel(&self, pi: &Relabeling) -> SolutionMap {
        let n = self.n;
        let p = &pi.0;
        let mut table = vec![(0, 0); n * n];
        for x in 0..n {
            for y in 0..n {
                let (a, b) = self.get(x, y);
                table[p.apply(x) * n + p.apply(y)] = (p.apply(a), p.apply(b));
            }
        }
        let names = self.names.as_ref().map(|names| {
            let mut out = vec![String::new(); n];
            for (x, name) in names.iter().enumerate() {
                out[p.apply(x)] = name.clone();
            }
            out
        });
        SolutionMap { n, table, names }
    }

    /// Whether `r` maps `subset × subset` onto itself.
    pub fn is_invariant(&self, subset: &[usize]) -> bool {
        let mut member = vec![false; self.n];
        for &a in subset {
            member[a] = true;
        }
        subset.iter().all(|&x| {
            subset.iter().all(|&y| {
                let (a, b) = self.get(x, y);
                member[a] && member[b]
            })
        })
    }

    /// The restriction of `r` to an invariant subset, reindexed by position
    /// in `subset`.
    pub fn restrict(&self, subset: &[usize]) -> Result<SolutionMap> {
        if subset.is_empty() || !self.is_invariant(subset) {
            return Err(Error::NotInvariant);
        }
        let mut pos = vec![usize::MAX; self.n];
        for (k, &a) in subset.iter().enumerate() {
            pos[a] = k;
        }
        let m = subset.len();
        let mut table = Vec::with_capacity(m * m);
        for &x in subset {
            for &y in subset {
                let (a, b) = self.get(x, y);
                table.push((pos[a], pos[b]));
            }
        }
        let mut out = SolutionMap::new(m, table)?;
        if let Some(names) = &self.names {
            out.names = Some(subset.iter().map(|&a| names[a].clone()).collect());
        }
        Ok(out)
    }

    /// Off-diagonal pairs moved by `r`, each listed once as `(u, r(u))` with `u < r(u)`
    /// when `r` is involutive; for other maps every moved pair is listed.
    pub fn moved_pairs(&self) -> Vec<(Pair, Pair)> {
        let n = self.n;
        let mut out = Vec::new();
        for u in 0..n * n {
            let (x, y) = (u / n, u % n);
            let img = self.table[u];
            if img == (x, y) {
                continue;
            }
            let back = self.get(img.0, img.1);
            if back == (x, y) && img < (x, y) {
                continue;
            }
            out.push(((x, y), img));
        }
        out
    }
}

/// A bijection of `X` used to relabel solutions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Relabeling(pub Permutation);

impl Relabeling {
    pub fn identity(n: usize) -> Self {
        Relabeling(Permutation::identity(n))
    }

    pub fn inverse(&self) -> Self {
        Relabeling(self.0.inverse())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    #[test]
    fn words_parse_from_labels() {
        let s = known::n3();
        assert_eq!(s.parse_word("x3 x2 x1").unwrap(), vec![2, 1, 0]);
        assert_eq!(s.parse_word(" x3x2  1").unwrap(), vec![2, 1, 0]);
        assert!(s.parse_word("").unwrap().is_empty());
        assert!(matches!(s.parse_word("x1 x4"), Err(Error::Syntax { column: 4, .. })));
        let named = s.with_names(vec!["a".into(), "b".into(), "c".into()]).unwrap();
        assert_eq!(named.parse_word("c b a x1").unwrap(), vec![2, 1, 0, 0]);
    }

    #[test]
    fn rejects_non_bijective_tables() {
        let err = SolutionMap::new(2, vec![(0, 0), (0, 0), (1, 0), (1, 1)]).unwrap_err();
        assert!(matches!(err, Error::NotBijective { pair: (0, 0) }));
        assert!(SolutionMap::new(2, vec![(0, 0)]).is_err());
        assert!(SolutionMap::new(0, vec![]).is_err());
    }

    #[test]
    fn permutational_requires_bijections() {
        assert!(SolutionMap::permutational(&[0, 0], &[0, 1]).is_err());
        let s = SolutionMap::permutational(&[0, 1, 2], &[0, 1, 2]).unwrap();
        assert_eq!(s, SolutionMap::trivial(3));
    }

    #[test]
    fn left_actions_round_trip_the_n3_example() {
        let s = known::n3();
        let left = vec![Permutation::identity(3), Permutation::identity(3), Permutation::transposition(3, 0, 1)];
        assert_eq!(SolutionMap::from_left_actions(&left, true).unwrap(), s);
    }

    #[test]
    fn left_actions_reject_non_square_free() {
        let left = vec![Permutation::transposition(2, 0, 1), Permutation::identity(2)];
        assert!(matches!(SolutionMap::from_left_actions(&left, true), Err(Error::NotSquareFree(0))));
        // allowed when not requested; the result is then just some map
        let both = vec![Permutation::transposition(2, 0, 1); 2];
        let s = SolutionMap::from_left_actions(&both, false).unwrap();
        assert_eq!(s.get(0, 0), (1, 1));
    }

    #[test]
    fn relabel_then_inverse_is_identity() {
        let s = known::n4();
        let pi = Relabeling(Permutation::from_cycles(4, &[&[0, 2, 1], &[3]]).unwrap());
        assert_eq!(s.relabel(&pi).relabel(&pi.inverse()), s);
    }

    #[test]
    fn restriction_to_invariant_subsets() {
        let s = known::n4();
        let r = s.restrict(&[0, 1]).unwrap();
        assert_eq!(r, SolutionMap::trivial(2));
        assert!(matches!(s.restrict(&[0, 2]), Err(Error::NotInvariant)));
    }

    #[test]
    fn element_lookup() {
        let s = known::eleven_generators();
        assert_eq!(s.element("a"), Some(8));
        assert_eq!(s.element("8"), Some(7));
        assert_eq!(s.element("x11"), Some(10));
        assert_eq!(s.element("d"), None);
    }
}
