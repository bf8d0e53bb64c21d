//! The left and right I-structures `v, v1: U -> S(X, r)` from the free
//! commutative monoid `U` on `u_1, .., u_n`, and the divisibility lattices
//! they transport.
//!
//! For a square-free involutive solution `R_y = L_y^{-1}`, and the
//! inductive rules
//!
//! ```text
//! v(u_i b)  = L_{v(b)}(x_i) · v(b)
//! v1(b u_i) = v1(b) · L_{v1(b)}^{-1}(x_i)
//! ```
//!
//! (with `L_w = L_{w_1} ∘ .. ∘ L_{w_k}`) determine both maps. Their inverses
//! are read off any word `y_1 .. y_k` of an element:
//!
//! ```text
//! v^{-1}(y_1 .. y_k)  = Π_t u_{R_{y_{t+1} .. y_k}(y_t)}
//! v1^{-1}(y_1 .. y_k) = Π_t u_{L_{y_1 .. y_{t-1}}(y_t)}
//! ```
//!
//! where `R_{z_1 .. z_m}` applies `R_{z_1}` first.

use std::collections::{BTreeSet, HashMap};

use crate::actions::{compute_actions, ActionTable};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rewrite::{ExponentVector, Presentation};
use crate::solution::{classify, SolutionMap};

/// Default degree up to which [`IStructure::cache`] tabulates both maps.
pub const DEGREE_BOUND: u32 = 6;

/// Both I-structures of a certified presentation of a square-free solution.
#[derive(Clone, Debug)]
pub struct IStructure<'p> {
    p: &'p Presentation,
    actions: ActionTable,
    left_inv: Vec<Permutation>,
}

/// Tabulated values of `v` and `v1` on every monomial of degree at most `bound`.
#[derive(Clone, Debug, Default)]
pub struct IStructureCache {
    pub bound: u32,
    pub left: HashMap<ExponentVector, ExponentVector>,
    pub right: HashMap<ExponentVector, ExponentVector>,
}

/// All exponent vectors of a given degree, in lexicographic order.
pub fn monomials_of_degree(n: usize, d: u32) -> Vec<ExponentVector> {
    fn rec(n: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<ExponentVector>) {
        if i + 1 == n {
            cur.push(left);
            out.push(ExponentVector(cur.clone()));
            cur.pop();
            return;
        }
        for a in (0..=left).rev() {
            cur.push(a);
            rec(n, i + 1, left - a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, 0, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn lowest(a: &ExponentVector) -> usize {
    a.0.iter().position(|&k| k > 0).expect("nonzero monomial")
}

impl<'p> IStructure<'p> {
    /// Needs a square-free involutive solution and a certified presentation of it.
    pub fn new(s: &SolutionMap, p: &'p Presentation) -> Result<Self> {
        if !classify(s).is_square_free_solution() {
            return Err(Error::Contract("I-structures need a square-free involutive non-degenerate solution".into()));
        }
        if !p.is_certified() || p.to_solution_map() != s.clone().without_names() {
            return Err(Error::Contract("presentation must be a certified presentation of this solution".into()));
        }
        let actions = compute_actions(s)?;
        let left_inv = actions.left.iter().map(Permutation::inverse).collect();
        Ok(IStructure { p, actions, left_inv })
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    pub fn presentation(&self) -> &Presentation {
        self.p
    }

    /// `L_{w_1}(L_{w_2}(.. L_{w_k}(z)))`.
    fn left_word(&self, word: &[usize], z: usize) -> usize {
        word.iter().rev().fold(z, |acc, &y| self.actions.left[y].apply(acc))
    }

    /// `L_w^{-1}(z)`: apply `L_{w_1}^{-1}` first.
    fn left_word_inv(&self, word: &[usize], z: usize) -> usize {
        word.iter().fold(z, |acc, &y| self.left_inv[y].apply(acc))
    }

    /// A word for `v(a)`, peeling with `pick` (which must name an element of
    /// the support) from the left of `a`.
    pub fn left_word_with(&self, a: &ExponentVector, pick: impl Fn(&ExponentVector) -> usize) -> Vec<usize> {
        let mut peeled = Vec::with_capacity(a.degree() as usize);
        let mut rest = a.clone();
        while !rest.is_empty() {
            let i = pick(&rest);
            assert!(rest.0[i] > 0, "peeled element outside the support");
            rest.0[i] -= 1;
            peeled.push(i);
        }
        // peeled[0] is outermost; build v from the innermost letter outwards
        let mut word: Vec<usize> = Vec::with_capacity(peeled.len());
        for &i in peeled.iter().rev() {
            let letter = self.left_word(&word, i);
            word.insert(0, letter);
        }
        word
    }

    /// A word for `v1(a)`, peeling with `pick` from the right of `a`.
    pub fn right_word_with(&self, a: &ExponentVector, pick: impl Fn(&ExponentVector) -> usize) -> Vec<usize> {
        let mut peeled = Vec::with_capacity(a.degree() as usize);
        let mut rest = a.clone();
        while !rest.is_empty() {
            let i = pick(&rest);
            assert!(rest.0[i] > 0, "peeled element outside the support");
            rest.0[i] -= 1;
            peeled.push(i);
        }
        let mut word: Vec<usize> = Vec::with_capacity(peeled.len());
        for &i in peeled.iter().rev() {
            let letter = self.left_word_inv(&word, i);
            word.push(letter);
        }
        word
    }

    /// `v(a)` in normal form, peeling the lowest-index `u_i` first.
    pub fn left(&self, a: &ExponentVector) -> Result<ExponentVector> {
        self.check_len(a)?;
        Ok(self.p.normal_form(&self.left_word_with(a, lowest))?.0)
    }

    /// `v1(a)` in normal form, peeling the lowest-index `u_i` first.
    pub fn right(&self, a: &ExponentVector) -> Result<ExponentVector> {
        self.check_len(a)?;
        Ok(self.p.normal_form(&self.right_word_with(a, lowest))?.0)
    }

    /// Recomputes `v(a)` under every peeling that always takes the lowest or
    /// the highest index, and with a rotating choice; all must agree.
    pub fn check_peeling_independence(&self, a: &ExponentVector) -> Result<()> {
        let reference = self.left(a)?;
        let highest = |e: &ExponentVector| e.0.iter().rposition(|&k| k > 0).unwrap();
        let middle = |e: &ExponentVector| {
            let s = e.support();
            s[s.len() / 2]
        };
        for (name, word) in [("highest", self.left_word_with(a, highest)), ("middle", self.left_word_with(a, middle))] {
            if self.p.normal_form(&word)?.0 != reference {
                return Err(Error::Falsification(format!("v({a:?}) depends on the peeling order ({name})")));
            }
        }
        let r_ref = self.right(a)?;
        for word in [self.right_word_with(a, highest), self.right_word_with(a, middle)] {
            if self.p.normal_form(&word)?.0 != r_ref {
                return Err(Error::Falsification(format!("v1({a:?}) depends on the peeling order")));
            }
        }
        Ok(())
    }

    fn check_len(&self, a: &ExponentVector) -> Result<()> {
        if a.len() != self.n() {
            return Err(Error::SizeMismatch(format!("monomial over {} variables, expected {}", a.len(), self.n())));
        }
        Ok(())
    }

    /// `v^{-1}` of an element of `S`, given by any of its words.
    pub fn left_preimage_of_word(&self, word: &[usize]) -> ExponentVector {
        let mut out = ExponentVector::zero(self.n());
        for t in 0..word.len() {
            // R_{y_{t+1} .. y_k}(y_t) with R_y = L_y^{-1}, applied left to right
            let z = word[t + 1..].iter().fold(word[t], |acc, &y| self.left_inv[y].apply(acc));
            out.0[z] += 1;
        }
        out
    }

    /// `v1^{-1}` of an element of `S`, given by any of its words.
    pub fn right_preimage_of_word(&self, word: &[usize]) -> ExponentVector {
        let mut out = ExponentVector::zero(self.n());
        for t in 0..word.len() {
            let z = self.left_word(&word[..t], word[t]);
            out.0[z] += 1;
        }
        out
    }

    pub fn left_preimage(&self, w: &ExponentVector) -> ExponentVector {
        self.left_preimage_of_word(&w.to_word(self.p.order()))
    }

    pub fn right_preimage(&self, w: &ExponentVector) -> ExponentVector {
        self.right_preimage_of_word(&w.to_word(self.p.order()))
    }

    /// `a |_l b`: `b = c a` for some `c` in `S`.
    pub fn divides_left(&self, a: &ExponentVector, b: &ExponentVector) -> bool {
        self.left_preimage(a).divides(&self.left_preimage(b))
    }

    /// `a |_r b`: `b = a c` for some `c` in `S`.
    pub fn divides_right(&self, a: &ExponentVector, b: &ExponentVector) -> bool {
        self.right_preimage(a).divides(&self.right_preimage(b))
    }

    /// Least common left multiple `a ⊔ b`.
    pub fn lcm_left(&self, a: &ExponentVector, b: &ExponentVector) -> Result<ExponentVector> {
        self.left(&self.left_preimage(a).lcm(&self.left_preimage(b)))
    }

    /// Greatest common right factor, the meet for `|_l`.
    pub fn gcd_left(&self, a: &ExponentVector, b: &ExponentVector) -> Result<ExponentVector> {
        self.left(&self.left_preimage(a).gcd(&self.left_preimage(b)))
    }

    /// Least common right multiple `a ∨ b`.
    pub fn lcm_right(&self, a: &ExponentVector, b: &ExponentVector) -> Result<ExponentVector> {
        self.right(&self.right_preimage(a).lcm(&self.right_preimage(b)))
    }

    /// Heads `h` (with `w = h w'`) and tails `t` (with `w = w'' t`) of an
    /// element of positive degree, found by trying every one-letter factor
    /// against all normal monomials of one degree less.
    pub fn heads_tails(&self, w: &ExponentVector) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
        let d = w.degree();
        if d == 0 {
            return Err(Error::Contract("heads and tails need degree at least 1".into()));
        }
        let n = self.n();
        let order = self.p.order();
        let mut heads = BTreeSet::new();
        let mut tails = BTreeSet::new();
        for rest in monomials_of_degree(n, d - 1) {
            let rest_word = rest.to_word(order);
            for x in 0..n {
                if heads.contains(&x) && tails.contains(&x) {
                    continue;
                }
                let mut hw = vec![x];
                hw.extend(&rest_word);
                if self.p.normal_form(&hw)?.0 == *w {
                    heads.insert(x);
                }
                let mut wt = rest_word.clone();
                wt.push(x);
                if self.p.normal_form(&wt)?.0 == *w {
                    tails.insert(x);
                }
            }
        }
        Ok((heads, tails))
    }

    /// Tabulates `v` and `v1` layer by layer up to `bound`.
    pub fn cache(&self, bound: u32) -> Result<IStructureCache> {
        let mut cache = IStructureCache { bound, ..Default::default() };
        for d in 0..=bound {
            for a in monomials_of_degree(self.n(), d) {
                let l = self.left(&a)?;
                let r = self.right(&a)?;
                cache.left.insert(a.clone(), l);
                cache.right.insert(a, r);
            }
        }
        Ok(cache)
    }

    /// Number of distinct values of `v` on degree-`d` monomials.
    pub fn image_size(&self, d: u32) -> Result<usize> {
        let mut seen = std::collections::HashSet::new();
        for a in monomials_of_degree(self.n(), d) {
            seen.insert(self.left(&a)?);
        }
        Ok(seen.len())
    }
}

impl IStructureCache {
    /// Whether `v` is injective on each tabulated degree.
    pub fn left_injective(&self) -> bool {
        injective(&self.left)
    }

    pub fn right_injective(&self) -> bool {
        injective(&self.right)
    }
}

fn injective(map: &HashMap<ExponentVector, ExponentVector>) -> bool {
    let values: std::collections::HashSet<_> = map.values().collect();
    values.len() == map.len()
}

/// Parses `u2 u4`, `u2^2 u4` or `u1*u3` into an exponent vector.
pub fn parse_monomial(n: usize, text: &str) -> Result<ExponentVector> {
    let mut out = ExponentVector::zero(n);
    for tok in text.split(|c: char| c.is_whitespace() || c == '*').filter(|t| !t.is_empty()) {
        if tok == "1" {
            continue;
        }
        let (base, exp) = match tok.split_once('^') {
            Some((b, e)) => (b, e.parse::<u32>().map_err(|_| bad_monomial(tok))?),
            None => (tok, 1),
        };
        let i: usize =
            base.strip_prefix('u').ok_or_else(|| bad_monomial(tok))?.parse().map_err(|_| bad_monomial(tok))?;
        if i == 0 || i > n {
            return Err(Error::IndexOutOfRange { line: 0, index: i, n });
        }
        out.0[i - 1] += exp;
    }
    Ok(out)
}

fn bad_monomial(tok: &str) -> Error {
    Error::Syntax { line: 1, column: 1, message: format!("expected `u<k>` or `u<k>^<e>`, found `{tok}`") }
}
