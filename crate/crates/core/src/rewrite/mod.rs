//! Quadratic binomial presentations `x_j x_i -> c · x_i' x_j'` of the
//! semigroup and algebra attached to an involutive map, with leftmost
//! reduction, overlap checks, ordering search and normal-monomial counts.
//!
//! Words are sequences of elements of `X`. An ordering assigns each element a
//! rank; the degree-lexicographic order on words compares ranks.
//! [`ExponentVector`]s are indexed by element, and the monomial they name is
//! written with its letters sorted by rank.

mod groebner;
mod hilbert;
pub(crate) mod ordering;

pub use groebner::{check_groebner, GroebnerReport, Overlap};
pub use hilbert::{
    binomial, check_centrality, count_degree_classes, count_normal_forms_exhaustive, count_normal_monomials,
    CentralityReport,
};
pub use ordering::{
    find_skew_ordering, OrderingCertificate, SearchAttempt, SkewSearchFailure, Strategy, EXHAUSTIVE_BOUND,
};

use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{Scalar, UnitScalar};
use crate::solution::{Pair, SolutionMap};

/// Exponents `a_x` of an ordered monomial, indexed by element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// The exponent vector counting letters of a word.
    pub fn of_word(n: usize, word: &[usize]) -> Self {
        let mut a = vec![0; n];
        for &x in word {
            a[x] += 1;
        }
        ExponentVector(a)
    }

    /// `x^k` for a single generator.
    pub fn power(n: usize, x: usize, k: u32) -> Self {
        let mut a = vec![0; n];
        a[x] = k;
        ExponentVector(a)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }

    pub fn lcm(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a.min(b)).collect())
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Self) -> Self {
        ExponentVector(self.0.iter().zip(&other.0).map(|(&a, &b)| a + b).collect())
    }

    /// Elements with a nonzero exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    /// The monomial as a word, letters sorted by ascending rank.
    pub fn to_word(&self, order: &[usize]) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.degree() as usize);
        for &x in order {
            w.extend(std::iter::repeat_n(x, self.0[x] as usize));
        }
        w
    }
}

/// One relation `lhs = coeff · rhs`, oriented so that `lhs` is the larger word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rule<C = UnitScalar> {
    pub lhs: Pair,
    pub rhs: Pair,
    #[serde(skip)]
    pub coeff: C,
}

/// Outcome of the structural skew-polynomial test on a rule set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewCheck {
    pub is_skew: bool,
    /// Human-readable reasons when `is_skew` is false.
    pub problems: Vec<String>,
    /// Whether every rule `x_j x_i -> x_i' x_j'` also has `i < j'`.
    pub i_below_j_prime: bool,
}

/// Result of rewriting a word as far as the rules allow.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction<C> {
    pub word: Vec<usize>,
    pub coeff: C,
    pub steps: usize,
}

/// An ordered generating set with quadratic binomial rules.
#[derive(Clone, Debug)]
pub struct Presentation<C: Scalar = UnitScalar> {
    n: usize,
    order: Vec<usize>,
    rank: Vec<usize>,
    rules: Vec<Rule<C>>,
    lhs_index: Vec<Option<usize>>,
    skew: SkewCheck,
    groebner: OnceLock<GroebnerReport<C>>,
}

/// Presentations over exact rationals.
pub type RationalPresentation = Presentation<crate::scalar::Rational>;

fn invert_order(order: &[usize]) -> Result<Vec<usize>> {
    let n = order.len();
    let mut rank = vec![usize::MAX; n];
    for (k, &x) in order.iter().enumerate() {
        if x >= n || rank[x] != usize::MAX {
            return Err(Error::InvalidPermutation(format!("ordering {order:?}")));
        }
        rank[x] = k;
    }
    Ok(rank)
}

impl<C: Scalar> Presentation<C> {
    /// Validates a rule set against an ordering (`order[k]` is the element of
    /// rank `k`). Each word may occur in at most one rule, every rule must
    /// decrease the degree-lexicographic order and coefficients are nonzero.
    pub fn new(n: usize, order: Vec<usize>, rules: Vec<Rule<C>>) -> Result<Self> {
        if order.len() != n {
            return Err(Error::SizeMismatch(format!("ordering has {} entries, expected {n}", order.len())));
        }
        let rank = invert_order(&order)?;
        let mut lhs_index = vec![None; n * n];
        let mut used = vec![false; n * n];
        for (k, rule) in rules.iter().enumerate() {
            for &(a, b) in &[rule.lhs, rule.rhs] {
                if a >= n || b >= n {
                    return Err(Error::SizeMismatch(format!("rule mentions x{} or x{} outside X", a + 1, b + 1)));
                }
                if std::mem::replace(&mut used[a * n + b], true) {
                    return Err(Error::Contract(format!("word x{}x{} occurs in more than one relation", a + 1, b + 1)));
                }
            }
            let key = |(a, b): Pair| (rank[a], rank[b]);
            if key(rule.lhs) <= key(rule.rhs) {
                return Err(Error::Contract(format!(
                    "rule x{}x{} -> x{}x{} does not decrease the order",
                    rule.lhs.0 + 1,
                    rule.lhs.1 + 1,
                    rule.rhs.0 + 1,
                    rule.rhs.1 + 1
                )));
            }
            if rule.coeff.is_zero_scalar() {
                return Err(Error::Contract("zero coefficient".into()));
            }
            lhs_index[rule.lhs.0 * n + rule.lhs.1] = Some(k);
        }
        let skew = skew_check(n, &rank, &rules);
        Ok(Presentation { n, order, rank, rules, lhs_index, skew, groebner: OnceLock::new() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Elements listed by ascending rank.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn rank(&self, x: usize) -> usize {
        self.rank[x]
    }

    pub fn rules(&self) -> &[Rule<C>] {
        &self.rules
    }

    pub fn rule_for(&self, lhs: Pair) -> Option<&Rule<C>> {
        self.lhs_index[lhs.0 * self.n + lhs.1].map(|k| &self.rules[k])
    }

    pub fn skew(&self) -> &SkewCheck {
        &self.skew
    }

    pub fn is_skew(&self) -> bool {
        self.skew.is_skew
    }

    /// The overlap report, computed once and cached.
    pub fn groebner(&self) -> &GroebnerReport<C> {
        self.groebner.get_or_init(|| check_groebner(self))
    }

    /// Skew type and every overlap resolves: ordered monomials are then
    /// exactly the normal forms.
    pub fn is_certified(&self) -> bool {
        self.is_skew() && self.groebner().ok
    }

    /// Replaces every coefficient.
    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&Rule<C>) -> D) -> Result<Presentation<D>> {
        let rules = self.rules.iter().map(|r| Rule { lhs: r.lhs, rhs: r.rhs, coeff: f(r) }).collect();
        Presentation::new(self.n, self.order.clone(), rules)
    }

    /// The map of pairs carried by the rules: `r` swaps both sides of each
    /// rule and fixes every other pair.
    pub fn to_solution_map(&self) -> SolutionMap {
        let n = self.n;
        SolutionMap::from_fn(n, |x, y| {
            let u = (x, y);
            for rule in &self.rules {
                if rule.lhs == u {
                    return rule.rhs;
                }
                if rule.rhs == u {
                    return rule.lhs;
                }
            }
            u
        })
        .expect("rules pair up distinct words")
    }

    /// Largest number of steps [`Self::reduce`] allows for a word of length `d`.
    pub fn step_ceiling(&self, d: usize) -> usize {
        (d * d * self.n * self.n).max(1)
    }

    /// Applies the rule with left side at `word[i], word[i+1]`, if any.
    pub fn rewrite_at(&self, word: &mut [usize], i: usize) -> Option<C> {
        let k = self.lhs_index[word[i] * self.n + word[i + 1]]?;
        let rule = &self.rules[k];
        word[i] = rule.rhs.0;
        word[i + 1] = rule.rhs.1;
        Some(rule.coeff.clone())
    }

    /// Leftmost reduction: always rewrites the leftmost left side until none remains.
    pub fn reduce(&self, word: &[usize]) -> Result<Reduction<C>> {
        self.reduce_from(word.to_vec(), C::one())
    }

    fn reduce_from(&self, mut word: Vec<usize>, mut coeff: C) -> Result<Reduction<C>> {
        let ceiling = self.step_ceiling(word.len());
        let mut steps = 0;
        let mut i = 0;
        while i + 1 < word.len() {
            match self.rewrite_at(&mut word, i) {
                Some(c) => {
                    coeff = coeff * c;
                    steps += 1;
                    if steps > ceiling {
                        return Err(Error::BoundExceeded {
                            what: format!("reduction of a word of length {}", word.len()),
                            bound: ceiling as u64,
                        });
                    }
                    i = i.saturating_sub(1);
                }
                None => i += 1,
            }
        }
        Ok(Reduction { word, coeff, steps })
    }

    /// Whether no rule applies anywhere in the word.
    pub fn is_irreducible(&self, word: &[usize]) -> bool {
        word.windows(2).all(|w| self.lhs_index[w[0] * self.n + w[1]].is_none())
    }

    fn require_certified(&self) -> Result<()> {
        if !self.is_skew() {
            return Err(Error::Contract("presentation is not of skew-polynomial type".into()));
        }
        if !self.groebner().ok {
            return Err(Error::Contract("rules do not form a Groebner basis".into()));
        }
        Ok(())
    }

    /// Normal form of a word and the accumulated coefficient. Refuses unless
    /// the presentation is certified.
    pub fn normal_form(&self, word: &[usize]) -> Result<(ExponentVector, C)> {
        self.require_certified()?;
        let red = self.reduce(word)?;
        debug_assert!(red.word.windows(2).all(|w| self.rank[w[0]] <= self.rank[w[1]]));
        Ok((ExponentVector::of_word(self.n, &red.word), red.coeff))
    }

    /// Normal form of the product of two ordered monomials.
    pub fn multiply(&self, a: &ExponentVector, b: &ExponentVector) -> Result<(ExponentVector, C)> {
        let mut w = a.to_word(&self.order);
        w.extend(b.to_word(&self.order));
        self.normal_form(&w)
    }

    /// Whether two words are equal in the presented semigroup (ignoring scalars).
    pub fn equal_in_semigroup(&self, u: &[usize], w: &[usize]) -> Result<bool> {
        Ok(self.normal_form(u)?.0 == self.normal_form(w)?.0)
    }

    /// Renders a word with the labels of `s`.
    pub fn render_word(s: &SolutionMap, word: &[usize]) -> String {
        word.iter().map(|&x| s.label(x)).collect::<Vec<_>>().join(" ")
    }
}

impl<C: Scalar> fmt::Display for Presentation<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for rule in &self.rules {
            writeln!(
                f,
                "x{}x{} -> {}x{}x{}",
                rule.lhs.0 + 1,
                rule.lhs.1 + 1,
                if rule.coeff == C::one() { String::new() } else { format!("({}) ", rule.coeff) },
                rule.rhs.0 + 1,
                rule.rhs.1 + 1
            )?;
        }
        Ok(())
    }
}

fn skew_check<C>(n: usize, rank: &[usize], rules: &[Rule<C>]) -> SkewCheck {
    let mut problems = Vec::new();
    let expected = n * n.saturating_sub(1) / 2;
    if rules.len() != expected {
        problems.push(format!("{} rules, expected {expected}", rules.len()));
    }
    let mut i_below_j_prime = true;
    for rule in rules {
        let (j, i) = (rank[rule.lhs.0], rank[rule.lhs.1]);
        let (ip, jp) = (rank[rule.rhs.0], rank[rule.rhs.1]);
        let name = format!("x{}x{} -> x{}x{}", rule.lhs.0 + 1, rule.lhs.1 + 1, rule.rhs.0 + 1, rule.rhs.1 + 1);
        if j <= i {
            problems.push(format!("{name}: left side is not descending"));
        }
        if ip >= jp {
            problems.push(format!("{name}: right side is not ascending"));
        }
        if j <= ip {
            problems.push(format!("{name}: first letter does not drop"));
        }
        if i >= jp {
            i_below_j_prime = false;
        }
    }
    SkewCheck { is_skew: problems.is_empty(), problems, i_below_j_prime }
}

/// The presentation `Re(r)` of an involutive map under an ordering: one rule
/// per two-element orbit `{u, r(u)}`, with the larger word on the left.
pub fn relations_of(s: &SolutionMap, order: &[usize]) -> Result<Presentation<UnitScalar>> {
    relations_with_coefficients(s, order, |_| UnitScalar)
}

/// As [`relations_of`], with the coefficient of each rule taken from its
/// left side: `lhs -> coeff(lhs) · rhs`.
pub fn relations_with_coefficients<C: Scalar>(
    s: &SolutionMap,
    order: &[usize],
    coeff: impl Fn(Pair) -> C,
) -> Result<Presentation<C>> {
    let n = s.n();
    let rank = invert_order(order)?;
    if order.len() != n {
        return Err(Error::SizeMismatch(format!("ordering has {} entries, expected {n}", order.len())));
    }
    let mut rules = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let u = (x, y);
            let w = s.apply(u);
            if w == u {
                continue;
            }
            if s.apply(w) != u {
                return Err(Error::Contract(format!("r is not involutive at (x{}, x{})", x + 1, y + 1)));
            }
            let key = |(a, b): Pair| (rank[a], rank[b]);
            if key(u) > key(w) {
                rules.push(Rule { lhs: u, rhs: w, coeff: coeff(u) });
            }
        }
    }
    Presentation::new(n, order.to_vec(), rules)
}

/// The identity ordering `x1 < x2 < .. < xn`.
pub fn natural_order(n: usize) -> Vec<usize> {
    (0..n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    fn word(xs: &[usize]) -> Vec<usize> {
        xs.iter().map(|x| x - 1).collect()
    }

    #[test]
    fn n3_rules_at_natural_order() {
        let p = relations_of(&known::n3(), &natural_order(3)).unwrap();
        let mut rules: Vec<_> = p.rules().iter().map(|r| (r.lhs, r.rhs)).collect();
        rules.sort();
        assert_eq!(rules, vec![((1, 0), (0, 1)), ((2, 0), (1, 2)), ((2, 1), (0, 2))]);
        assert!(p.is_skew());
        assert!(p.skew().i_below_j_prime);
    }

    #[test]
    fn trivial_solution_gives_commutative_rules() {
        for order in [vec![0, 1, 2, 3], vec![2, 0, 3, 1]] {
            let p = relations_of(&SolutionMap::trivial(4), &order).unwrap();
            assert_eq!(p.rules().len(), 6);
            assert!(p.is_skew());
            for r in p.rules() {
                assert_eq!(r.rhs, (r.lhs.1, r.lhs.0));
                assert!(p.rank(r.lhs.0) > p.rank(r.lhs.1));
            }
        }
    }

    #[test]
    fn eleven_generator_presentation_is_skew() {
        let p = relations_of(&known::eleven_generators(), &natural_order(11)).unwrap();
        assert_eq!(p.rules().len(), 55);
        assert!(p.is_skew());
        assert!(p.is_certified());
    }

    #[test]
    fn non_involutive_input_is_refused() {
        assert!(relations_of(&known::n6_non_involutive(), &natural_order(6)).is_err());
    }

    #[test]
    fn normal_forms() {
        let p = relations_of(&known::n3(), &natural_order(3)).unwrap();
        let (e, _) = p.normal_form(&word(&[3, 2, 1])).unwrap();
        assert_eq!(e, ExponentVector(vec![1, 1, 1]));
        let (e, _) = p.normal_form(&word(&[1, 1, 2])).unwrap();
        assert_eq!(e, ExponentVector(vec![2, 1, 0]));
        let p4 = relations_of(&known::n4(), &natural_order(4)).unwrap();
        let (e, _) = p4.normal_form(&word(&[4, 2])).unwrap();
        assert_eq!(e, ExponentVector(vec![1, 0, 1, 0]));
    }

    #[test]
    fn normal_form_refuses_uncertified_presentations() {
        // x2 x1 -> x1 x2 twice over; not skew since rules are missing
        let rules = vec![Rule { lhs: (1, 0), rhs: (0, 1), coeff: UnitScalar }];
        let p = Presentation::new(3, natural_order(3), rules).unwrap();
        assert!(!p.is_skew());
        assert!(matches!(p.normal_form(&[1, 0]), Err(Error::Contract(_))));
    }

    #[test]
    fn rules_round_trip_to_the_map() {
        for (name, s) in known::all() {
            if name == "n6" {
                continue;
            }
            let p = relations_of(&s, &natural_order(s.n())).unwrap();
            assert_eq!(p.to_solution_map(), s.clone().without_names(), "{name}");
        }
    }

    #[test]
    fn invalid_rule_sets_are_rejected() {
        let up = vec![Rule { lhs: (0, 1), rhs: (1, 0), coeff: UnitScalar }];
        assert!(Presentation::new(2, natural_order(2), up).is_err());
        let twice = vec![
            Rule { lhs: (1, 0), rhs: (0, 1), coeff: UnitScalar },
            Rule { lhs: (2, 0), rhs: (0, 1), coeff: UnitScalar },
        ];
        assert!(Presentation::new(3, natural_order(3), twice).is_err());
        assert!(Presentation::<UnitScalar>::new(2, vec![0, 0], vec![]).is_err());
    }

    #[test]
    fn exponent_vector_words_follow_the_ordering() {
        let e = ExponentVector(vec![1, 0, 2]);
        assert_eq!(e.to_word(&[0, 1, 2]), vec![0, 2, 2]);
        assert_eq!(e.to_word(&[2, 1, 0]), vec![2, 2, 0]);
        assert_eq!(e.degree(), 3);
        assert_eq!(e.lcm(&ExponentVector(vec![0, 3, 1])), ExponentVector(vec![1, 3, 2]));
    }
}
