use super::Presentation;
use crate::scalar::Scalar;

/// An ambiguity `abc` where both `ab` and `bc` are left sides, resolved
/// both ways to leftmost normal forms.
#[derive(Clone, Debug, PartialEq)]
pub struct Overlap<C> {
    pub word: [usize; 3],
    /// Rewrite `ab` first, then reduce.
    pub left: (Vec<usize>, C),
    /// Rewrite `bc` first, then reduce.
    pub right: (Vec<usize>, C),
}

impl<C: PartialEq> Overlap<C> {
    pub fn resolves(&self) -> bool {
        self.left == self.right
    }
}

/// The outcome of checking every overlap of a quadratic rule set.
#[derive(Clone, Debug, PartialEq)]
pub struct GroebnerReport<C> {
    pub ok: bool,
    /// Every overlap with its two reducts; when all resolve, the common
    /// coefficient of each is the scalar `α` it picks up.
    pub overlaps: Vec<Overlap<C>>,
    /// Overlaps whose reducts differ in word or scalar.
    pub failing: Vec<Overlap<C>>,
    /// Reductions that hit the step ceiling.
    pub errors: Vec<String>,
}

/// Checks every overlap `abc` (for skew-type rules: `x_k x_j x_i` with
/// `k > j > i`) by rewriting each side first and comparing the two leftmost
/// normal forms, scalars included. With terminating rules this is exactly
/// local confluence, hence confluence.
pub fn check_groebner<C: Scalar>(p: &Presentation<C>) -> GroebnerReport<C> {
    let n = p.n();
    let mut overlaps = Vec::new();
    let mut failing = Vec::new();
    let mut errors = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if p.rule_for((a, b)).is_none() {
                continue;
            }
            for c in 0..n {
                if p.rule_for((b, c)).is_none() {
                    continue;
                }
                let side = |pos: usize| {
                    let mut w = vec![a, b, c];
                    let coeff = p.rewrite_at(&mut w, pos).expect("left side present");
                    p.reduce_from(w, coeff).map(|r| (r.word, r.coeff))
                };
                match (side(0), side(1)) {
                    (Ok(left), Ok(right)) => {
                        let o = Overlap { word: [a, b, c], left, right };
                        if !o.resolves() {
                            failing.push(o.clone());
                        }
                        overlaps.push(o);
                    }
                    (Err(e), _) | (_, Err(e)) => errors.push(format!("x{}x{}x{}: {e}", a + 1, b + 1, c + 1)),
                }
            }
        }
    }
    GroebnerReport { ok: failing.is_empty() && errors.is_empty(), overlaps, failing, errors }
}
