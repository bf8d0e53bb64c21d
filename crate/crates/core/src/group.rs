//! Finite groups attached to a solution: the permutation group `G_L`
//! generated by the `L_x`, the quotient `Ḡ = G / ⟨x_1^M, .., x_n^M⟩` of order
//! `M^n`, its Sylow pieces, and solvability.

use std::collections::HashSet;
use std::hash::Hash;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::actions::{compute_actions, ActionTable};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rewrite::{ExponentVector, Presentation};
use crate::solution::{classify, SolutionMap};

/// Largest closure built for a permutation group.
pub const CLOSURE_BOUND: usize = 1_000_000;
/// Largest quotient `Ḡ` handled element by element.
pub const QUOTIENT_BOUND: u64 = 100_000;
/// Exhaustive associativity is used up to this many triples.
const EXHAUSTIVE_TRIPLES: u64 = 10_000_000;
const SAMPLED_TRIPLES: usize = 100_000;
const TRIPLE_SEED: u64 = 0x5eed;

/// Closure of `generators` under `mul`, starting from `identity`.
fn closure<T, F>(generators: &[T], identity: T, bound: usize, what: &str, mul: F) -> Result<Vec<T>>
where
    T: Clone + Eq + Hash,
    F: Fn(&T, &T) -> Result<T>,
{
    let mut seen: HashSet<T> = HashSet::from([identity.clone()]);
    let mut elements = vec![identity];
    let mut k = 0;
    while k < elements.len() {
        let e = elements[k].clone();
        for g in generators {
            let h = mul(&e, g)?;
            if seen.insert(h.clone()) {
                if elements.len() >= bound {
                    return Err(Error::BoundExceeded {
                        what: format!("{what} (more than {} elements)", elements.len()),
                        bound: bound as u64,
                    });
                }
                elements.push(h);
            }
        }
        k += 1;
    }
    Ok(elements)
}

/// A subgroup of `Sym(X)` given by generators, with its full closure.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub degree: usize,
    pub generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    members: HashSet<Permutation>,
}

impl PermGroup {
    pub fn generate(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        Self::generate_bounded(degree, generators, CLOSURE_BOUND)
    }

    pub fn generate_bounded(degree: usize, generators: Vec<Permutation>, bound: usize) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::SizeMismatch(format!(
                "generator of degree {} in a group on {degree} points",
                g.degree()
            )));
        }
        let elements =
            closure(&generators, Permutation::identity(degree), bound, "permutation group", |a, b| Ok(a.then(b)))?;
        let members = elements.iter().cloned().collect();
        Ok(PermGroup { degree, generators, elements, members })
    }

    /// The full symmetric group, for testing the group routines themselves.
    pub fn symmetric(degree: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree > 1 {
            gens.push(Permutation::transposition(degree, 0, 1));
            let cycle: Vec<usize> = (0..degree).map(|i| (i + 1) % degree).collect();
            gens.push(Permutation::from_images(cycle).expect("cycle"));
        }
        Self::generate(degree, gens)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.members.contains(g)
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| self.generators.iter().all(|b| a.then(b) == b.then(a)))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Whether `g H g^{-1} = H` for every generator `g` of `parent`.
    pub fn is_normal_in(&self, parent: &PermGroup) -> bool {
        parent.generators.iter().all(|g| {
            let gi = g.inverse();
            self.generators.iter().all(|h| self.contains(&gi.then(h).then(g)))
        })
    }

    /// The commutator subgroup, as the normal closure of the commutators of generators.
    pub fn derived_subgroup(&self) -> Result<PermGroup> {
        let mut gens: Vec<Permutation> = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a.inverse().then(&b.inverse()).then(a).then(b);
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        let mut group = PermGroup::generate(self.degree, gens)?;
        loop {
            let mut extra = Vec::new();
            for g in &self.generators {
                let gi = g.inverse();
                for h in &group.generators {
                    let c = gi.then(h).then(g);
                    if !group.contains(&c) && !extra.contains(&c) {
                        extra.push(c);
                    }
                }
            }
            if extra.is_empty() {
                return Ok(group);
            }
            let mut gens = group.generators.clone();
            gens.extend(extra);
            group = PermGroup::generate(self.degree, gens)?;
        }
    }

    /// Orders along `G ⊇ G' ⊇ G'' ⊇ ..` until the series stabilises.
    pub fn derived_series(&self) -> Result<Vec<usize>> {
        let mut orders = vec![self.order()];
        let mut current = self.clone();
        loop {
            let next = current.derived_subgroup()?;
            if next.order() == current.order() {
                return Ok(orders);
            }
            orders.push(next.order());
            current = next;
        }
    }

    pub fn is_solvable(&self) -> Result<bool> {
        Ok(*self.derived_series()?.last().unwrap() == 1)
    }
}

/// `G_L`, the group generated by all `L_x`.
pub fn permutation_group_left(s: &SolutionMap) -> Result<PermGroup> {
    let actions = compute_actions(s)?;
    PermGroup::generate(s.n(), actions.left)
}

/// Orbits of `G_L` on `X`; each orbit is `r`-invariant.
pub fn orbits_left(s: &SolutionMap) -> Vec<Vec<usize>> {
    crate::rewrite::ordering::left_orbits(s)
}

fn require_certified(s: &SolutionMap, p: &Presentation) -> Result<ActionTable> {
    if !classify(s).is_square_free_solution() {
        return Err(Error::Contract("needs a square-free involutive non-degenerate solution".into()));
    }
    if !p.is_certified() || p.to_solution_map() != s.clone().without_names() {
        return Err(Error::Contract("presentation must be a certified presentation of this solution".into()));
    }
    compute_actions(s)
}

/// `Ḡ` realised on normal monomials whose exponents all lie in `[0, M)`.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    p: Presentation,
    left_inv: Vec<Permutation>,
    m: u32,
}

/// Outcome of the brute-force group-axiom suite on `Ḡ`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub m: u64,
    /// Number of elements reached from the images of the generators.
    pub order: u64,
    pub expected_order: u64,
    pub identity_ok: bool,
    pub inverses_ok: bool,
    pub associativity_exhaustive: bool,
    pub triples_checked: u64,
    /// `x_i^M` reduces to the identity.
    pub generator_powers_trivial: bool,
    /// `x_i^M x_j^M = x_j^M x_i^M` already in `S`.
    pub powers_commute_in_s: bool,
    /// `x^M z = z (L_z^{-1} x)^M` in `S` for all `x, z`.
    pub push_identity_ok: bool,
    /// Least common multiple of the element orders.
    pub exponent: u64,
    pub failures: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

impl QuotientGroup {
    pub fn new(s: &SolutionMap, p: &Presentation) -> Result<Self> {
        Self::with_bound(s, p, QUOTIENT_BOUND)
    }

    pub fn with_bound(s: &SolutionMap, p: &Presentation, bound: u64) -> Result<Self> {
        let actions = require_certified(s, p)?;
        let m = actions.cyclic_degree;
        let size = m.checked_pow(s.n() as u32).unwrap_or(u64::MAX);
        if size > bound {
            return Err(Error::BoundExceeded { what: format!("quotient of order {m}^{}", s.n()), bound });
        }
        Ok(QuotientGroup {
            p: p.clone(),
            left_inv: actions.left.iter().map(Permutation::inverse).collect(),
            m: m as u32,
        })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> usize {
        self.p.n()
    }

    pub fn expected_order(&self) -> u64 {
        (self.m as u64).pow(self.n() as u32)
    }

    pub fn identity(&self) -> ExponentVector {
        ExponentVector::zero(self.n())
    }

    /// Image of a word of `S` in `Ḡ`.
    pub fn reduce_word(&self, word: &[usize]) -> Result<ExponentVector> {
        let m = self.m;
        let mut e = self.p.normal_form(word)?.0;
        while let Some(i) = e.0.iter().position(|&a| a >= m) {
            let word = e.to_word(self.p.order());
            let start = word.iter().position(|&y| y == i).expect("letter present");
            let mut out: Vec<usize> = word[..start].to_vec();
            // push x_i^M to the right end, where it disappears
            let mut x = i;
            for &z in &word[start + m as usize..] {
                out.push(z);
                x = self.left_inv[z].apply(x);
            }
            e = self.p.normal_form(&out)?.0;
        }
        Ok(e)
    }

    pub fn generator(&self, i: usize) -> Result<ExponentVector> {
        self.reduce_word(&[i])
    }

    pub fn mul(&self, a: &ExponentVector, b: &ExponentVector) -> Result<ExponentVector> {
        let mut w = a.to_word(self.p.order());
        w.extend(b.to_word(self.p.order()));
        self.reduce_word(&w)
    }

    pub fn pow(&self, a: &ExponentVector, k: u64) -> Result<ExponentVector> {
        let mut acc = self.identity();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Order of `a`; `None` if it exceeds the group order (an axiom failure).
    pub fn element_order(&self, a: &ExponentVector) -> Result<Option<u64>> {
        let id = self.identity();
        let mut acc = a.clone();
        for k in 1..=self.expected_order() {
            if acc == id {
                return Ok(Some(k));
            }
            acc = self.mul(&acc, a)?;
        }
        Ok(None)
    }

    pub fn inverse(&self, a: &ExponentVector) -> Result<ExponentVector> {
        match self.element_order(a)? {
            Some(k) => self.pow(a, k - 1),
            None => Err(Error::Falsification(format!("{:?} has no power equal to the identity", a.0))),
        }
    }

    /// Closure of arbitrary elements.
    pub fn subgroup(&self, generators: &[ExponentVector]) -> Result<Vec<ExponentVector>> {
        closure(generators, self.identity(), QUOTIENT_BOUND as usize, "quotient subgroup", |a, b| self.mul(a, b))
    }

    /// All elements, reached from the images of `x_1, .., x_n`.
    pub fn elements(&self) -> Result<Vec<ExponentVector>> {
        let gens = (0..self.n()).map(|i| self.generator(i)).collect::<Result<Vec<_>>>()?;
        self.subgroup(&gens)
    }

    /// Checks the group axioms by brute force. Nothing about the push-right
    /// reduction is assumed; any failure lands in `failures`.
    pub fn validate(&self) -> Result<AxiomReport> {
        let n = self.n();
        let m = self.m as usize;
        let id = self.identity();
        let elements = self.elements()?;
        let mut r = AxiomReport {
            m: self.m as u64,
            order: elements.len() as u64,
            expected_order: self.expected_order(),
            ..Default::default()
        };
        if r.order != r.expected_order {
            r.failures.push(format!("generated {} elements, expected {}", r.order, r.expected_order));
        }
        if let Some(e) = elements.iter().find(|e| e.0.iter().any(|&a| a >= self.m)) {
            r.failures.push(format!("element {:?} has an exponent outside [0, M)", e.0));
        }
        r.identity_ok = true;
        for a in &elements {
            if self.mul(a, &id)? != *a || self.mul(&id, a)? != *a {
                r.identity_ok = false;
                r.failures.push(format!("identity fails on {:?}", a.0));
                break;
            }
        }
        r.inverses_ok = true;
        let mut exponent = 1u64;
        for a in &elements {
            match self.element_order(a)? {
                Some(k) => {
                    exponent = exponent.lcm(&k);
                    let inv = self.pow(a, k - 1)?;
                    if self.mul(&inv, a)? != id {
                        r.inverses_ok = false;
                        r.failures.push(format!("left inverse fails for {:?}", a.0));
                    }
                }
                None => {
                    r.inverses_ok = false;
                    r.failures.push(format!("{:?} has no power equal to the identity", a.0));
                }
            }
        }
        r.exponent = exponent;
        let size = elements.len() as u64;
        let triples: Vec<(usize, usize, usize)> = if size.saturating_pow(3) <= EXHAUSTIVE_TRIPLES {
            r.associativity_exhaustive = true;
            let s = size as usize;
            (0..s * s * s).map(|t| (t / (s * s), (t / s) % s, t % s)).collect()
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(TRIPLE_SEED);
            let s = size as usize;
            (0..SAMPLED_TRIPLES).map(|_| (rng.gen_range(0..s), rng.gen_range(0..s), rng.gen_range(0..s))).collect()
        };
        r.triples_checked = triples.len() as u64;
        let bad: Vec<String> = triples
            .par_iter()
            .filter_map(|&(i, j, k)| {
                let (a, b, c) = (&elements[i], &elements[j], &elements[k]);
                let lhs = self.mul(a, b).and_then(|ab| self.mul(&ab, c));
                let rhs = self.mul(b, c).and_then(|bc| self.mul(a, &bc));
                match (lhs, rhs) {
                    (Ok(x), Ok(y)) if x == y => None,
                    _ => Some(format!("associativity fails on {:?} {:?} {:?}", a.0, b.0, c.0)),
                }
            })
            .collect();
        r.failures.extend(bad.into_iter().take(10));
        r.generator_powers_trivial = true;
        r.powers_commute_in_s = true;
        r.push_identity_ok = true;
        for i in 0..n {
            if self.reduce_word(&vec![i; m])? != id {
                r.generator_powers_trivial = false;
                r.failures.push(format!("x{}^{m} is not trivial", i + 1));
            }
            for j in 0..n {
                let ij = [vec![i; m], vec![j; m]].concat();
                let ji = [vec![j; m], vec![i; m]].concat();
                if !self.p.equal_in_semigroup(&ij, &ji)? {
                    r.powers_commute_in_s = false;
                    r.failures.push(format!("x{}^{m} x{}^{m} != x{}^{m} x{}^{m}", i + 1, j + 1, j + 1, i + 1));
                }
                let mut lhs = vec![i; m];
                lhs.push(j);
                let mut rhs = vec![j];
                rhs.extend(vec![self.left_inv[j].apply(i); m]);
                if !self.p.equal_in_semigroup(&lhs, &rhs)? {
                    r.push_identity_ok = false;
                    r.failures.push(format!("push identity fails for x{}^{m} x{}", i + 1, j + 1));
                }
            }
        }
        Ok(r)
    }
}

/// Where the Sylow pieces were computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SylowLevel {
    Quotient,
    PermutationGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowPiece {
    pub prime: u64,
    pub alpha: u32,
    /// `q = M / p^alpha`.
    pub q: u64,
    pub order: u64,
    /// `p^(n alpha)` at the quotient level; unknown a priori for `G_L`.
    pub expected_order: Option<u64>,
    pub order_is_prime_power: bool,
    /// Recorded only: the pieces need not be normal.
    pub normal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SylowDecomposition {
    pub m: u64,
    pub level: SylowLevel,
    pub group_order: u64,
    pub pieces: Vec<SylowPiece>,
    /// `P_i P_j = P_j P_i` as sets for all pairs.
    pub pairwise_commute: bool,
    /// `P_1 P_2 .. P_k` is the whole group.
    pub covers: bool,
    pub notice: Option<String>,
}

impl SylowDecomposition {
    pub fn ok(&self) -> bool {
        let coprime = self.pieces.iter().all(|p| p.order_is_prime_power);
        let expected = self.pieces.iter().all(|p| p.expected_order.is_none_or(|e| e == p.order));
        coprime && expected && self.pairwise_commute && self.covers
    }
}

/// `M = Π p^alpha`, primes ascending.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        let mut a = 0;
        while m.is_multiple_of(p) {
            m /= p;
            a += 1;
        }
        if a > 0 {
            out.push((p, a));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

fn is_power_of(mut x: u64, p: u64) -> bool {
    while x > 1 && x.is_multiple_of(p) {
        x /= p;
    }
    x == 1
}

/// Set product `A B`.
fn set_product<T: Clone + Eq + Hash>(a: &[T], b: &[T], mul: &impl Fn(&T, &T) -> Result<T>) -> Result<HashSet<T>> {
    let mut out = HashSet::with_capacity(a.len().max(b.len()));
    for x in a {
        for y in b {
            out.insert(mul(x, y)?);
        }
    }
    Ok(out)
}

struct PieceInput<T> {
    prime: u64,
    alpha: u32,
    q: u64,
    generators: Vec<T>,
    elements: Vec<T>,
    expected: Option<u64>,
}

/// Orders, normality (by conjugating generators), pairwise set commutation
/// and coverage of the candidate Sylow pieces.
fn analyse_pieces<T: Clone + Eq + Hash>(
    group: &[T],
    group_generators: &[T],
    pieces: Vec<PieceInput<T>>,
    mul: impl Fn(&T, &T) -> Result<T>,
    inverse: impl Fn(&T) -> Result<T>,
) -> Result<(Vec<SylowPiece>, bool, bool)> {
    let mut pairwise = true;
    for i in 0..pieces.len() {
        for j in i + 1..pieces.len() {
            if set_product(&pieces[i].elements, &pieces[j].elements, &mul)?
                != set_product(&pieces[j].elements, &pieces[i].elements, &mul)?
            {
                pairwise = false;
            }
        }
    }
    let mut product: Vec<T> = vec![];
    for (k, piece) in pieces.iter().enumerate() {
        product = if k == 0 {
            piece.elements.clone()
        } else {
            set_product(&product, &piece.elements, &mul)?.into_iter().collect()
        };
    }
    let covers = product.len() == group.len() || (pieces.is_empty() && group.len() == 1);
    let inverses = group_generators.iter().map(&inverse).collect::<Result<Vec<_>>>()?;
    let mut out = Vec::new();
    for piece in pieces {
        let set: HashSet<&T> = piece.elements.iter().collect();
        let mut normal = true;
        'outer: for (g, gi) in group_generators.iter().zip(&inverses) {
            for h in &piece.generators {
                if !set.contains(&mul(&mul(gi, h)?, g)?) {
                    normal = false;
                    break 'outer;
                }
            }
        }
        let order = set.len() as u64;
        out.push(SylowPiece {
            prime: piece.prime,
            alpha: piece.alpha,
            q: piece.q,
            order,
            expected_order: piece.expected,
            order_is_prime_power: is_power_of(order, piece.prime),
            normal,
        });
    }
    Ok((out, pairwise, covers))
}

/// Sylow pieces generated by the images of `x_j^{q_i}`, in `Ḡ` when it is
/// small enough and otherwise by the `L_{x_j}^{q_i}` inside `G_L`.
pub fn sylow_decomposition(s: &SolutionMap, p: &Presentation) -> Result<SylowDecomposition> {
    match QuotientGroup::new(s, p) {
        Ok(g) => sylow_in_quotient(&g),
        Err(Error::BoundExceeded { what, .. }) => {
            let mut d = sylow_in_left_group(s)?;
            d.notice = Some(format!("{what} exceeds the bound; evaluated in G_L"));
            Ok(d)
        }
        Err(e) => Err(e),
    }
}

pub fn sylow_in_quotient(g: &QuotientGroup) -> Result<SylowDecomposition> {
    let m = g.m() as u64;
    let n = g.n() as u32;
    let elements = g.elements()?;
    let mut pieces = Vec::new();
    for (prime, alpha) in factorize(m) {
        let q = m / prime.pow(alpha);
        let generators = (0..g.n()).map(|j| g.reduce_word(&vec![j; q as usize])).collect::<Result<Vec<_>>>()?;
        let elements = g.subgroup(&generators)?;
        pieces.push(PieceInput { prime, alpha, q, generators, elements, expected: Some(prime.pow(alpha * n)) });
    }
    let group_generators = (0..g.n()).map(|i| g.generator(i)).collect::<Result<Vec<_>>>()?;
    let (pieces, pairwise_commute, covers) =
        analyse_pieces(&elements, &group_generators, pieces, |a, b| g.mul(a, b), |a| g.inverse(a))?;
    Ok(SylowDecomposition {
        m,
        level: SylowLevel::Quotient,
        group_order: elements.len() as u64,
        pieces,
        pairwise_commute,
        covers,
        notice: None,
    })
}

pub fn sylow_in_left_group(s: &SolutionMap) -> Result<SylowDecomposition> {
    let actions = compute_actions(s)?;
    let m = actions.cyclic_degree;
    let group = PermGroup::generate(s.n(), actions.left.clone())?;
    let mut pieces = Vec::new();
    for (prime, alpha) in factorize(m) {
        let q = m / prime.pow(alpha);
        let generators: Vec<Permutation> = actions.left.iter().map(|l| l.pow(q as i64)).collect();
        let elements = PermGroup::generate(s.n(), generators.clone())?.elements().to_vec();
        pieces.push(PieceInput { prime, alpha, q, generators, elements, expected: None });
    }
    let (pieces, pairwise_commute, covers) =
        analyse_pieces(group.elements(), &group.generators, pieces, |a, b| Ok(a.then(b)), |a| Ok(a.inverse()))?;
    Ok(SylowDecomposition {
        m,
        level: SylowLevel::PermutationGroup,
        group_order: group.order() as u64,
        pieces,
        pairwise_commute,
        covers,
        notice: None,
    })
}

/// The two sufficient criteria for decomposability, checked against the
/// actual orbit count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecomposabilityReport {
    pub n: usize,
    pub m: u64,
    /// Primes dividing `n` but not `M`.
    pub primes_not_dividing_m: Vec<u64>,
    /// `(p, x)` with `p | n` and `x` in no cycle (of any `L_y`) of length divisible by `p`.
    pub extreme_witnesses: Vec<(u64, usize)>,
    pub orbit_count: usize,
    /// Whenever a criterion fires there are at least two orbits.
    pub consistent: bool,
}

impl DecomposabilityReport {
    pub fn fires(&self) -> bool {
        !self.primes_not_dividing_m.is_empty() || !self.extreme_witnesses.is_empty()
    }
}

pub fn decomposability_criteria(s: &SolutionMap) -> Result<DecomposabilityReport> {
    let actions = compute_actions(s)?;
    let n = s.n();
    let m = actions.cyclic_degree;
    let primes: Vec<u64> = factorize(n as u64).into_iter().map(|(p, _)| p).collect();
    let primes_not_dividing_m = primes.iter().copied().filter(|p| m % p != 0).collect();
    let mut extreme_witnesses = Vec::new();
    for &p in &primes {
        for x in 0..n {
            if actions.left.iter().all(|l| !(l.cycle_of(x).len() as u64).is_multiple_of(p)) {
                extreme_witnesses.push((p, x));
            }
        }
    }
    let orbit_count = orbits_left(s).len();
    let mut r = DecomposabilityReport { n, m, primes_not_dividing_m, extreme_witnesses, orbit_count, consistent: true };
    r.consistent = !r.fires() || orbit_count >= 2 || n <= 1;
    Ok(r)
}

/// Checks that `L_w` depends only on the element of `S` that `w` represents:
/// for random words the composite of the letters' `L` equals that of the
/// normal form. Returns the first counterexample.
pub fn check_left_homomorphism(
    s: &SolutionMap,
    p: &Presentation,
    max_len: usize,
    samples: usize,
    seed: u64,
) -> Result<Option<Vec<usize>>> {
    let actions = require_certified(s, p)?;
    let n = s.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let len = rng.gen_range(0..=max_len);
        let word: Vec<usize> = (0..len).map(|_| rng.gen_range(0..n)).collect();
        let nf = p.normal_form(&word)?.0.to_word(p.order());
        if actions.left_of_word(&word) != actions.left_of_word(&nf) {
            return Ok(Some(word));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;
    use crate::rewrite::{natural_order, relations_of};

    fn certified(s: &SolutionMap) -> Presentation {
        relations_of(s, &natural_order(s.n())).unwrap()
    }

    #[test]
    fn left_groups() {
        assert_eq!(permutation_group_left(&SolutionMap::trivial(4)).unwrap().order(), 1);
        let g = permutation_group_left(&known::n4()).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian() && g.is_solvable().unwrap());
        let g = permutation_group_left(&known::m12()).unwrap();
        let m = compute_actions(&known::m12()).unwrap().cyclic_degree;
        assert_eq!(m, 12);
        assert_eq!(12u128.pow(10) % g.order() as u128, 0);
        assert!(g.is_solvable().unwrap());
    }

    #[test]
    fn symmetric_groups() {
        assert_eq!(PermGroup::symmetric(4).unwrap().order(), 24);
        assert!(PermGroup::symmetric(4).unwrap().is_solvable().unwrap());
        let s5 = PermGroup::symmetric(5).unwrap();
        assert_eq!(s5.order(), 120);
        assert_eq!(s5.derived_series().unwrap(), vec![120, 60]);
        assert!(!s5.is_solvable().unwrap());
    }

    #[test]
    fn closure_bound() {
        assert!(matches!(
            PermGroup::generate_bounded(6, PermGroup::symmetric(6).unwrap().generators, 100),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn orbit_examples() {
        assert_eq!(orbits_left(&known::n3()), vec![vec![0, 1], vec![2]]);
        for orbit in orbits_left(&known::m12()) {
            assert!(known::m12().is_invariant(&orbit));
        }
    }

    #[test]
    fn quotient_of_n3() {
        let s = known::n3();
        let p = certified(&s);
        let g = QuotientGroup::new(&s, &p).unwrap();
        assert_eq!(g.m(), 2);
        let r = g.validate().unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.order, 8);
        assert!(r.associativity_exhaustive);
        assert!(r.generator_powers_trivial && r.powers_commute_in_s && r.push_identity_ok);
        // some element has order 4, so not every square lies in the image of A
        assert_eq!(r.exponent, 4);
    }

    #[test]
    fn quotient_of_n4_and_trivial() {
        let s = known::n4();
        let p = certified(&s);
        let r = QuotientGroup::new(&s, &p).unwrap().validate().unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.order, 16);
        let s = SolutionMap::trivial(3);
        let p = certified(&s);
        let g = QuotientGroup::new(&s, &p).unwrap();
        assert_eq!(g.m(), 1);
        let r = g.validate().unwrap();
        assert!(r.ok());
        assert_eq!(r.order, 1);
    }

    #[test]
    fn quotient_bound_is_enforced() {
        let s = known::m12();
        let c = crate::rewrite::find_skew_ordering(&s).unwrap().unwrap();
        assert!(matches!(QuotientGroup::new(&s, &c.presentation), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn sylow_pieces() {
        let s = known::n4();
        let d = sylow_decomposition(&s, &certified(&s)).unwrap();
        assert_eq!(d.level, SylowLevel::Quotient);
        assert_eq!(d.pieces.len(), 1);
        assert_eq!(d.pieces[0].order, 16);
        assert!(d.ok());
        let s = SolutionMap::trivial(2);
        let d = sylow_decomposition(&s, &certified(&s)).unwrap();
        assert!(d.pieces.is_empty() && d.ok());
    }

    #[test]
    fn sylow_pieces_of_the_twelve_example() {
        let s = known::m12();
        let c = crate::rewrite::find_skew_ordering(&s).unwrap().unwrap();
        let d = sylow_decomposition(&s, &c.presentation).unwrap();
        assert_eq!(d.level, SylowLevel::PermutationGroup);
        assert!(d.notice.is_some());
        let qs: Vec<u64> = d.pieces.iter().map(|p| p.q).collect();
        assert_eq!(qs, vec![3, 4]);
        assert_eq!(d.group_order, 96);
        let orders: Vec<u64> = d.pieces.iter().map(|p| p.order).collect();
        assert_eq!(orders, vec![32, 3]);
        assert!(!d.pieces[1].normal);
        assert!(d.pieces.iter().all(|p| p.order > 1));
        assert!(d.ok(), "{d:?}");
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn decomposability() {
        let r = decomposability_criteria(&known::n3()).unwrap();
        assert_eq!(r.m, 2);
        assert_eq!(r.primes_not_dividing_m, vec![3]);
        assert!(r.fires() && r.consistent && r.orbit_count == 2);
        let r = decomposability_criteria(&SolutionMap::trivial(3)).unwrap();
        assert!(r.fires() && r.orbit_count == 3);
        for s in [known::n4(), known::m12(), known::level3(), known::eleven_generators()] {
            assert!(decomposability_criteria(&s).unwrap().consistent);
        }
    }

    #[test]
    fn left_action_is_a_homomorphism() {
        for s in [known::n3(), known::n4()] {
            assert_eq!(check_left_homomorphism(&s, &certified(&s), 8, 300, 7).unwrap(), None);
        }
    }
}
