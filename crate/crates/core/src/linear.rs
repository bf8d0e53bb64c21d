//! Monomial R-matrices `R(e_a ⊗ e_b) = c_{ab} e_{r(a,b)}` lifted from a
//! set-theoretic solution, and the algebras with binomial relations they
//! define.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rewrite::{relations_with_coefficients, GroebnerReport, Presentation};
use crate::scalar::{Rational, Scalar};
use crate::solution::{classify, CoefficientLine, Pair, SolutionFile, SolutionMap};

/// `R(e_a ⊗ e_b) = c_{ab} e_{r(a,b)}` with `c_{r(u)} c_u = 1` for every pair
/// (hence `c = 1` on fixed pairs).
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialLinearMap<C = Rational> {
    s: SolutionMap,
    coeffs: Vec<C>,
}

/// One basis tensor with its scalar.
pub type Term<C> = (C, Vec<usize>);

impl<C: Scalar> BinomialLinearMap<C> {
    /// Takes one coefficient per ordered pair, indexed `a * n + b`.
    pub fn new(s: SolutionMap, coeffs: Vec<C>) -> Result<Self> {
        let n = s.n();
        if coeffs.len() != n * n {
            return Err(Error::SizeMismatch(format!("{} coefficients for {n}^2 pairs", coeffs.len())));
        }
        for a in 0..n {
            for b in 0..n {
                let c = &coeffs[a * n + b];
                if c.is_zero_scalar() {
                    return Err(Error::Contract(format!("zero coefficient on (x{}, x{})", a + 1, b + 1)));
                }
                let (x, y) = s.get(a, b);
                if c.clone() * coeffs[x * n + y].clone() != C::one() {
                    return Err(Error::Contract(format!(
                        "coefficients on (x{}, x{}) and its image (x{}, x{}) are not reciprocal",
                        a + 1,
                        b + 1,
                        x + 1,
                        y + 1
                    )));
                }
            }
        }
        Ok(BinomialLinearMap { s, coeffs })
    }

    /// All coefficients `1`: the set-theoretic solution itself.
    pub fn unit(s: SolutionMap) -> Self {
        let n = s.n();
        BinomialLinearMap { s, coeffs: vec![C::one(); n * n] }
    }

    /// Sets the coefficient of each moved pair `u` for which `keep(u)` holds
    /// to `f(u)`, its partner `r(u)` to the reciprocal, and the rest to `1`.
    /// Needs an involutive map so that moved pairs come in two-element orbits.
    pub fn from_pairs(s: SolutionMap, keep: impl Fn(Pair) -> bool, f: impl Fn(Pair) -> C) -> Result<Self> {
        let n = s.n();
        let mut coeffs = vec![C::one(); n * n];
        for a in 0..n {
            for b in 0..n {
                let w = s.get(a, b);
                if w == (a, b) || !keep((a, b)) {
                    continue;
                }
                if s.apply(w) != (a, b) {
                    return Err(Error::Contract("coefficients on pairs need an involutive map".into()));
                }
                if keep(w) {
                    return Err(Error::Contract(format!("both (x{}, x{}) and its image were selected", a + 1, b + 1)));
                }
                let c = f((a, b));
                coeffs[w.0 * n + w.1] = c.recip();
                coeffs[a * n + b] = c;
            }
        }
        Self::new(s, coeffs)
    }

    /// Coefficients on the left sides of the rules of `order`, i.e. on the
    /// pairs that are larger than their image in deg-lex order.
    pub fn from_rule_coefficients(s: SolutionMap, order: &[usize], f: impl Fn(Pair) -> C) -> Result<Self> {
        let mut rank = vec![0; s.n()];
        for (k, &x) in order.iter().enumerate() {
            rank[x] = k;
        }
        let s2 = s.clone();
        Self::from_pairs(
            s,
            move |(a, b)| {
                let (x, y) = s2.get(a, b);
                (rank[a], rank[b]) > (rank[x], rank[y])
            },
            f,
        )
    }

    pub fn solution(&self) -> &SolutionMap {
        &self.s
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    pub fn coefficient(&self, (a, b): Pair) -> &C {
        &self.coeffs[a * self.n() + b]
    }

    /// `R` on one basis pair.
    pub fn apply(&self, u: Pair) -> (C, Pair) {
        (self.coefficient(u).clone(), self.s.apply(u))
    }

    /// Applies `R` in braid form at positions `i, i + 1` of a basis tensor.
    fn act_at(&self, (c, mut w): Term<C>, i: usize) -> Term<C> {
        let (k, (x, y)) = self.apply((w[i], w[i + 1]));
        w[i] = x;
        w[i + 1] = y;
        (c * k, w)
    }

    /// `R'` = flip ∘ R placed on the tensor factors `i` and `j`.
    fn act_flipped(&self, (c, mut w): Term<C>, i: usize, j: usize) -> Term<C> {
        let (k, (x, y)) = self.apply((w[i], w[j]));
        w[i] = y;
        w[j] = x;
        (c * k, w)
    }

    /// The presentation with rules `x_a x_b -> c_{ab} x_{a'} x_{b'}`.
    pub fn presentation(&self, order: &[usize]) -> Result<Presentation<C>> {
        relations_with_coefficients(&self.s, order, |u| self.coefficient(u).clone())
    }
}

impl BinomialLinearMap<Rational> {
    /// Applies the `coef` lines of a solution file. A line fixes its pair and
    /// the reciprocal of its image; unlisted pairs default to `1`.
    pub fn from_file(file: &SolutionFile) -> Result<Self> {
        let s = file.solution.clone();
        let n = s.n();
        let mut coeffs: Vec<Option<Rational>> = vec![None; n * n];
        let set = |coeffs: &mut Vec<Option<Rational>>, u: Pair, v: Rational, line: usize| -> Result<()> {
            let slot = &mut coeffs[u.0 * n + u.1];
            match slot {
                Some(old) if *old != v => Err(Error::Syntax {
                    line,
                    column: 1,
                    message: format!("coefficient on ({} {}) conflicts with an earlier line", u.0 + 1, u.1 + 1),
                }),
                _ => {
                    *slot = Some(v);
                    Ok(())
                }
            }
        };
        for CoefficientLine { line, pair, image, value } in &file.coefficients {
            if s.apply(*pair) != *image {
                return Err(Error::Syntax {
                    line: *line,
                    column: 1,
                    message: format!("r({} {}) is not ({} {})", pair.0 + 1, pair.1 + 1, image.0 + 1, image.1 + 1),
                });
            }
            set(&mut coeffs, *pair, value.clone(), *line)?;
            if s.apply(*image) == *pair {
                set(&mut coeffs, *image, value.recip(), *line)?;
            }
        }
        Self::new(s, coeffs.into_iter().map(|c| c.unwrap_or_else(|| Rational::from_integer(1.into()))).collect())
    }

    /// Random nonzero coefficients from a small pool of rationals on the left
    /// sides of `order`.
    pub fn random(s: SolutionMap, order: &[usize], rng: &mut impl Rng) -> Result<Self> {
        const POOL: [(i64, i64); 8] = [(1, 1), (-1, 1), (2, 1), (1, 2), (-3, 1), (2, 3), (-1, 3), (5, 4)];
        let n = s.n();
        let draws: Vec<Rational> = (0..n * n)
            .map(|_| {
                let (p, q) = POOL[rng.gen_range(0..POOL.len())];
                Rational::new(p.into(), q.into())
            })
            .collect();
        Self::from_rule_coefficients(s, order, |(a, b)| draws[a * n + b].clone())
    }
}

/// Result of comparing the two sides of an identity on every basis tensor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TensorCheck {
    pub ok: bool,
    pub checked: usize,
    /// First failing basis tensor with both images, rendered.
    pub witness: Option<String>,
}

fn render<C: Scalar>((c, w): &Term<C>) -> String {
    let letters: Vec<String> = w.iter().map(|x| format!("e{}", x + 1)).collect();
    format!("{c}·{}", letters.join("⊗"))
}

fn compare_on_triples<C: Scalar + Send + Sync>(
    n: usize,
    lhs: impl Fn(Term<C>) -> Term<C> + Sync,
    rhs: impl Fn(Term<C>) -> Term<C> + Sync,
) -> TensorCheck {
    let witness = (0..n * n * n).into_par_iter().find_first(|&t| {
        let w = vec![t / (n * n), (t / n) % n, t % n];
        lhs((C::one(), w.clone())) != rhs((C::one(), w))
    });
    let witness = witness.map(|t| {
        let w = vec![t / (n * n), (t / n) % n, t % n];
        let start = (C::one(), w.clone());
        format!("{}: {} vs {}", render(&start), render(&lhs(start.clone())), render(&rhs(start)))
    });
    TensorCheck { ok: witness.is_none(), checked: n * n * n, witness }
}

/// `(R ⊗ id)(id ⊗ R)(R ⊗ id) = (id ⊗ R)(R ⊗ id)(id ⊗ R)` on all `n³` basis tensors.
pub fn check_linear_ybe<C: Scalar + Send + Sync>(r: &BinomialLinearMap<C>) -> TensorCheck {
    compare_on_triples(
        r.n(),
        |t| r.act_at(r.act_at(r.act_at(t, 0), 1), 0),
        |t| r.act_at(r.act_at(r.act_at(t, 1), 0), 1),
    )
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QybeReport {
    /// `R'^{12} R'^{13} R'^{23} = R'^{23} R'^{13} R'^{12}` with `R' = flip ∘ R`.
    pub qybe: TensorCheck,
    /// `R'^{21} R' = 1` on all pairs.
    pub unitary: bool,
    pub unitarity_witness: Option<String>,
}

pub fn check_qybe_unitarity<C: Scalar + Send + Sync>(r: &BinomialLinearMap<C>) -> QybeReport {
    let qybe = compare_on_triples(
        r.n(),
        |t| r.act_flipped(r.act_flipped(r.act_flipped(t, 1, 2), 0, 2), 0, 1),
        |t| r.act_flipped(r.act_flipped(r.act_flipped(t, 0, 1), 0, 2), 1, 2),
    );
    let n = r.n();
    let mut unitarity_witness = None;
    'pairs: for a in 0..n {
        for b in 0..n {
            let start = (C::one(), vec![a, b]);
            // R'^{21} is R' acting with the tensor factors exchanged
            let image = r.act_flipped(r.act_flipped(start.clone(), 0, 1), 1, 0);
            if image != start {
                unitarity_witness = Some(format!("{} -> {}", render(&start), render(&image)));
                break 'pairs;
            }
        }
    }
    QybeReport { qybe, unitary: unitarity_witness.is_none(), unitarity_witness }
}

/// Overlap resolution with scalars for a presentation of skew-polynomial shape.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CoefficientGroebner {
    pub skew: bool,
    pub ok: bool,
    /// First overlap whose two reducts differ, with both reducts.
    pub failing_overlap: Option<String>,
    /// `α` for every resolving overlap `x_k x_j x_i`, 1-based.
    pub alpha_table: Vec<([usize; 3], String)>,
}

pub fn coeff_groebner_check<C: Scalar>(p: &Presentation<C>) -> CoefficientGroebner {
    let report: &GroebnerReport<C> = p.groebner();
    let show = |(w, c): &(Vec<usize>, C)| {
        let letters: Vec<String> = w.iter().map(|x| format!("x{}", x + 1)).collect();
        format!("{c}·{}", letters.join(""))
    };
    let failing_overlap = report.failing.first().map(|o| {
        let [a, b, c] = o.word;
        format!("x{}x{}x{}: {} vs {}", a + 1, b + 1, c + 1, show(&o.left), show(&o.right))
    });
    let alpha_table = report
        .overlaps
        .iter()
        .filter(|o| o.resolves())
        .map(|o| (o.word.map(|x| x + 1), o.left.1.to_string()))
        .collect();
    CoefficientGroebner { skew: p.is_skew(), ok: report.ok && p.is_skew(), failing_overlap, alpha_table }
}

/// Both sides of the equivalence "R satisfies the YBE iff the rules form a
/// Groebner basis", computed independently.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LemmaRoundtrip {
    pub ybe: TensorCheck,
    pub groebner: CoefficientGroebner,
    pub agree: bool,
}

pub fn skew_lemma_roundtrip<C: Scalar + Send + Sync>(
    r: &BinomialLinearMap<C>,
    order: &[usize],
) -> Result<LemmaRoundtrip> {
    let p = r.presentation(order)?;
    if !p.is_skew() {
        return Err(Error::Contract("ordering does not give a presentation of skew-polynomial type".into()));
    }
    let ybe = check_linear_ybe(r);
    let groebner = coeff_groebner_check(&p);
    let agree = ybe.ok == groebner.ok;
    Ok(LemmaRoundtrip { ybe, groebner, agree })
}

/// Counts over random coefficient assignments under a fixed seed.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct LemmaSurvey {
    pub trials: usize,
    pub both_true: usize,
    pub both_false: usize,
    /// Every disagreement, rendered with both traces.
    pub disagreements: Vec<String>,
}

pub fn random_lemma_survey(s: &SolutionMap, order: &[usize], trials: usize, seed: u64) -> Result<LemmaSurvey> {
    if !classify(s).is_square_free_solution() {
        return Err(Error::Contract("survey needs a square-free involutive non-degenerate solution".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LemmaSurvey { trials, ..Default::default() };
    for _ in 0..trials {
        let r = BinomialLinearMap::random(s.clone(), order, &mut rng)?;
        let t = skew_lemma_roundtrip(&r, order)?;
        match (t.agree, t.ybe.ok) {
            (true, true) => out.both_true += 1,
            (true, false) => out.both_false += 1,
            (false, _) => {
                out.disagreements.push(format!("{:?}\nybe: {:?}\ngroebner: {:?}", r.coeffs, t.ybe, t.groebner))
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;
    use crate::rewrite::natural_order;

    fn q(p: i64, d: i64) -> Rational {
        Rational::new(p.into(), d.into())
    }

    #[test]
    fn unit_lifts_follow_the_braid_relation() {
        for (name, s) in known::all() {
            let r = BinomialLinearMap::<Rational>::unit(s.clone());
            assert_eq!(check_linear_ybe(&r).ok, classify(&s).braided, "{name}");
        }
        let broken = SolutionMap::from_fn(3, |x, y| {
            if (x, y) == (0, 1) {
                (1, 0)
            } else if (x, y) == (1, 0) {
                (0, 1)
            } else {
                (x, y)
            }
        })
        .unwrap();
        let r = BinomialLinearMap::<Rational>::unit(broken.clone());
        assert_eq!(check_linear_ybe(&r).ok, classify(&broken).braided);
    }

    #[test]
    fn qybe_and_unitarity() {
        let r = BinomialLinearMap::<Rational>::unit(known::n3());
        let rep = check_qybe_unitarity(&r);
        assert!(rep.qybe.ok && rep.unitary);
        let r = BinomialLinearMap::<Rational>::unit(known::n6_non_involutive());
        let rep = check_qybe_unitarity(&r);
        assert!(rep.qybe.ok);
        assert!(!rep.unitary && rep.unitarity_witness.is_some());
        let flip = SolutionMap::trivial(2);
        let r = BinomialLinearMap::<Rational>::from_rule_coefficients(flip, &[0, 1], |_| q(-2, 5)).unwrap();
        let rep = check_qybe_unitarity(&r);
        assert!(rep.qybe.ok && rep.unitary);
    }

    #[test]
    fn qybe_matches_braid_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for s in [known::n3(), known::n4()] {
            for _ in 0..20 {
                let r = BinomialLinearMap::random(s.clone(), &natural_order(s.n()), &mut rng).unwrap();
                assert_eq!(check_qybe_unitarity(&r).qybe.ok, check_linear_ybe(&r).ok);
            }
        }
    }

    #[test]
    fn reciprocity_is_enforced() {
        let s = SolutionMap::trivial(2);
        let one = q(1, 1);
        assert!(BinomialLinearMap::new(s.clone(), vec![one.clone(), q(2, 1), q(2, 1), one.clone()]).is_err());
        assert!(BinomialLinearMap::new(s.clone(), vec![one.clone(), q(2, 1), q(1, 2), one.clone()]).is_ok());
        assert!(BinomialLinearMap::new(s.clone(), vec![q(3, 1), q(2, 1), q(1, 2), one.clone()]).is_err());
        assert!(BinomialLinearMap::new(s, vec![one.clone(), q(0, 1), q(0, 1), one]).is_err());
    }

    #[test]
    fn q_plane_consistency() {
        for value in [q(1, 1), q(2, 1), q(-1, 3)] {
            let r = BinomialLinearMap::from_rule_coefficients(SolutionMap::trivial(3), &natural_order(3), |_| {
                value.clone()
            })
            .unwrap();
            let t = skew_lemma_roundtrip(&r, &natural_order(3)).unwrap();
            assert!(t.ybe.ok && t.groebner.ok && t.agree);
            let cubed = value.clone() * value.clone() * value.clone();
            assert!(t.groebner.alpha_table.iter().any(|(w, a)| *w == [3, 2, 1] && *a == cubed.to_string()));
        }
    }

    #[test]
    fn commuting_relations_accept_any_single_coefficient() {
        // on x_j x_i -> c x_i x_j both paths of x3x2x1 collect c32 c31 c21
        let r = BinomialLinearMap::from_pairs(SolutionMap::trivial(3), |u| u == (2, 0), |_| q(7, 2)).unwrap();
        let t = skew_lemma_roundtrip(&r, &natural_order(3)).unwrap();
        assert!(t.ybe.ok && t.groebner.ok);
    }

    #[test]
    fn perturbations_of_the_n3_relations() {
        let s = known::n3();
        let order = natural_order(3);
        // x2x1 -> x1x2 carrying 2: the two paths of x3x2x1 give 1 and 4
        let r = BinomialLinearMap::from_pairs(s.clone(), |u| u == (1, 0), |_| q(2, 1)).unwrap();
        let t = skew_lemma_roundtrip(&r, &order).unwrap();
        assert!(!t.ybe.ok && !t.groebner.ok && t.agree);
        assert!(t.ybe.witness.is_some() && t.groebner.failing_overlap.is_some());
        // the rules out of x3 may carry any coefficient
        for lhs in [(2, 0), (2, 1)] {
            let r = BinomialLinearMap::from_pairs(s.clone(), |u| u == lhs, |_| q(2, 1)).unwrap();
            let t = skew_lemma_roundtrip(&r, &order).unwrap();
            assert!(t.ybe.ok && t.groebner.ok);
        }
    }

    #[test]
    fn unit_coefficients_have_trivial_alphas() {
        let r = BinomialLinearMap::<Rational>::unit(known::n4());
        let t = skew_lemma_roundtrip(&r, &natural_order(4)).unwrap();
        assert!(t.groebner.ok);
        assert!(t.groebner.alpha_table.iter().all(|(_, a)| a == "1"));
    }

    #[test]
    fn random_survey_finds_no_disagreement() {
        for s in [known::n3(), known::n4(), SolutionMap::trivial(3)] {
            let survey = random_lemma_survey(&s, &natural_order(s.n()), 100, 11).unwrap();
            assert!(survey.disagreements.is_empty(), "{:?}", survey.disagreements);
            assert_eq!(survey.both_true + survey.both_false, 100);
            if s == known::n3() {
                // c21 = ±1 is the only constraint, so both outcomes occur
                assert!(survey.both_true > 0 && survey.both_false > 0);
            }
        }
    }

    #[test]
    fn coefficients_from_a_file() {
        let text = "ybe-solution v1\nn 3\nmap 3 1 -> 2 3\nmap 2 3 -> 3 1\nmap 3 2 -> 1 3\nmap 1 3 -> 3 2\ncoef 3 1 -> 2 3 : 2/3\n";
        let f = crate::solution::parse_solution_file(text).unwrap();
        let r = BinomialLinearMap::from_file(&f).unwrap();
        assert_eq!(*r.coefficient((2, 0)), q(2, 3));
        assert_eq!(*r.coefficient((1, 2)), q(3, 2));
        assert_eq!(*r.coefficient((0, 0)), q(1, 1));
        let bad = text.replace("-> 2 3 : 2/3", "-> 1 3 : 2/3");
        assert!(BinomialLinearMap::from_file(&crate::solution::parse_solution_file(&bad).unwrap()).is_err());
    }
}
