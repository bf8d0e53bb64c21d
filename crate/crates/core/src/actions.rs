//! Left and right actions `L_x`, `R_x`, the pairs of cycles behind the
//! cyclic condition, the cyclic degree `M`, and the power identities it
//! implies in `S(X, r)`.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::rewrite::Presentation;
use crate::scalar::Scalar;
use crate::solution::{Pair, SolutionMap};

/// `r(x, y) = (L_x(y), R_y(x))`, with `M_x` the order of `L_x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionTable {
    pub left: Vec<Permutation>,
    pub right: Vec<Permutation>,
    pub orders: Vec<u64>,
    /// Least common multiple of the `orders`.
    pub cyclic_degree: u64,
}

impl ActionTable {
    pub fn n(&self) -> usize {
        self.left.len()
    }

    /// Rebuilds `r` from the two components.
    pub fn to_solution_map(&self) -> SolutionMap {
        SolutionMap::from_fn(self.n(), |x, y| (self.left[x].apply(y), self.right[y].apply(x)))
            .expect("components of a bijection")
    }

    /// Whether `R_x = L_x^{-1}` for every `x`.
    pub fn right_inverts_left(&self) -> bool {
        self.left.iter().zip(&self.right).all(|(l, r)| l.inverse() == *r)
    }

    /// `L_w = L_{w1} ∘ .. ∘ L_{wk}` for a word `w`.
    pub fn left_of_word(&self, word: &[usize]) -> Permutation {
        word.iter().rev().fold(Permutation::identity(self.n()), |acc, &x| self.left[x].compose(&acc))
    }
}

/// Reads off `L_x` and `R_y`; fails with the first degenerate element.
pub fn compute_actions(s: &SolutionMap) -> Result<ActionTable> {
    let n = s.n();
    let mut left = Vec::with_capacity(n);
    for x in 0..n {
        let images = (0..n).map(|y| s.get(x, y).0).collect();
        left.push(Permutation::from_images(images).ok_or(Error::Degenerate { side: "left", element: x })?);
    }
    let mut right = Vec::with_capacity(n);
    for y in 0..n {
        let images = (0..n).map(|x| s.get(x, y).1).collect();
        right.push(Permutation::from_images(images).ok_or(Error::Degenerate { side: "right", element: y })?);
    }
    let orders: Vec<u64> = left.iter().map(Permutation::order).collect();
    let cyclic_degree = orders.iter().fold(1u64, |acc, m| acc.lcm(m));
    Ok(ActionTable { left, right, orders, cyclic_degree })
}

/// The two cycles attached to a base pair `(y, x)`, `x != y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclePair {
    pub base: Pair,
    /// `x_1 = x`, `x_{i+1} = L_y(x_i)`.
    pub x_cycle: Vec<usize>,
    /// `y_1 = y`, `y_{j+1} = L_x(y_j)`; in the weak form `y_{j+1} = R_x^{-1}(y_j)`.
    pub y_cycle: Vec<usize>,
}

impl CyclePair {
    /// Same pair up to rotating each cycle to another starting point.
    pub fn same_cycles(&self, other: &CyclePair) -> bool {
        fn rotation_of(a: &[usize], b: &[usize]) -> bool {
            a.len() == b.len()
                && (a.is_empty()
                    || b.iter()
                        .position(|&z| z == a[0])
                        .is_some_and(|k| (0..a.len()).all(|t| a[t] == b[(k + t) % b.len()])))
        }
        rotation_of(&self.x_cycle, &other.x_cycle) && rotation_of(&self.y_cycle, &other.y_cycle)
    }
}

/// A failed equality of the cyclic condition. Positions `i`, `j` are 1-based
/// indices into the cycles, as in `r(y_j x_i) = x_{i+1} y_{j-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("cyclic condition fails at base (x{}, x{}), i = {i}, j = {j}: {what}", .base.0 + 1, .base.1 + 1)]
pub struct CyclicViolation {
    pub base: Pair,
    pub i: usize,
    pub j: usize,
    pub what: String,
}

fn one_based((a, b): Pair) -> String {
    format!("(x{}, x{})", a + 1, b + 1)
}

fn orbit(start: usize, step: impl Fn(usize) -> usize) -> Vec<usize> {
    let mut out = vec![start];
    let mut cur = step(start);
    while cur != start {
        out.push(cur);
        cur = step(cur);
    }
    out
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|z| !b.contains(z))
}

/// The strong form: `L_y`-cycle of `x` and `L_x`-cycle of `y`, with
/// `r(x_i y_j) = (y_{j+1}, x_{i-1})` and `r(y_j x_i) = (x_{i+1}, y_{j-1})`
/// on the whole grid.
pub fn cycle_pair(s: &SolutionMap, y: usize, x: usize) -> std::result::Result<CyclePair, CyclicViolation> {
    let base = (y, x);
    if x == y {
        return Err(CyclicViolation { base, i: 1, j: 1, what: "x and y must differ".into() });
    }
    let x_cycle = orbit(x, |z| s.get(y, z).0);
    let y_cycle = orbit(y, |z| s.get(x, z).0);
    if !disjoint(&x_cycle, &y_cycle) {
        return Err(CyclicViolation { base, i: 1, j: 1, what: "the cycles meet".into() });
    }
    let (m, k) = (x_cycle.len(), y_cycle.len());
    for i in 0..m {
        for j in 0..k {
            let (xi, yj) = (x_cycle[i], y_cycle[j]);
            let next_x = x_cycle[(i + 1) % m];
            let prev_x = x_cycle[(i + m - 1) % m];
            let next_y = y_cycle[(j + 1) % k];
            let prev_y = y_cycle[(j + k - 1) % k];
            if s.get(xi, yj) != (next_y, prev_x) {
                return Err(CyclicViolation {
                    base,
                    i: i + 1,
                    j: j + 1,
                    what: format!("r(x_i y_j) = {}", one_based(s.get(xi, yj))),
                });
            }
            if s.get(yj, xi) != (next_x, prev_y) {
                return Err(CyclicViolation {
                    base,
                    i: i + 1,
                    j: j + 1,
                    what: format!("r(y_j x_i) = {}", one_based(s.get(yj, xi))),
                });
            }
        }
    }
    Ok(CyclePair { base, x_cycle, y_cycle })
}

/// The weak form: `L_y`-cycle of `x` and `R_x`-cycle of `y` (run backwards),
/// with `r(y_j x_i) = (x_{i+1}, y_{j-1})` on the whole grid.
pub fn weak_cycle_pair(s: &SolutionMap, y: usize, x: usize) -> std::result::Result<CyclePair, CyclicViolation> {
    let base = (y, x);
    if x == y {
        return Err(CyclicViolation { base, i: 1, j: 1, what: "x and y must differ".into() });
    }
    let x_cycle = orbit(x, |z| s.get(y, z).0);
    // y_{j-1} = R_x(y_j), so walking y_1, y_2, .. means applying R_x^{-1}
    let mut backwards = orbit(y, |z| s.get(z, x).1);
    backwards[1..].reverse();
    let y_cycle = backwards;
    if !disjoint(&x_cycle, &y_cycle) {
        return Err(CyclicViolation { base, i: 1, j: 1, what: "the cycles meet".into() });
    }
    let (m, k) = (x_cycle.len(), y_cycle.len());
    for i in 0..m {
        for j in 0..k {
            let (xi, yj) = (x_cycle[i], y_cycle[j]);
            let want = (x_cycle[(i + 1) % m], y_cycle[(j + k - 1) % k]);
            if s.get(yj, xi) != want {
                return Err(CyclicViolation {
                    base,
                    i: i + 1,
                    j: j + 1,
                    what: format!("r(y_j x_i) = {}", one_based(s.get(yj, xi))),
                });
            }
        }
    }
    Ok(CyclePair { base, x_cycle, y_cycle })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclicReport {
    pub weak: bool,
    pub strong: bool,
    pub witnesses: Vec<CyclicViolation>,
}

/// Both forms of the cyclic condition over all ordered pairs `x != y`.
/// Only the first violation of each form is kept.
pub fn check_cyclic_conditions(s: &SolutionMap) -> CyclicReport {
    let n = s.n();
    let mut witnesses = Vec::new();
    let mut weak = true;
    let mut strong = true;
    for y in 0..n {
        for x in 0..n {
            if x == y {
                continue;
            }
            if weak {
                if let Err(v) = weak_cycle_pair(s, y, x) {
                    weak = false;
                    witnesses.push(v);
                }
            }
            if strong {
                if let Err(v) = cycle_pair(s, y, x) {
                    strong = false;
                    witnesses.push(v);
                }
            }
        }
    }
    CyclicReport { weak, strong, witnesses }
}

/// One failed power identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerFailure {
    pub identity: &'static str,
    pub x: usize,
    pub y: usize,
    pub p: u32,
    pub q: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PowerReport {
    pub max_exp: u32,
    pub checked: usize,
    pub failures: Vec<PowerFailure>,
}

impl PowerReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

fn pow_word(x: usize, k: u32) -> Vec<usize> {
    vec![x; k as usize]
}

/// Checks, through normal forms in a certified presentation, for all `x != y`
/// and `1 <= p, q <= max_exp`:
///
/// * `y^m x = x y_k^m` with `m` the length of the `L_y`-cycle of `x` and
///   `y_k = L_x^{-1}(y)`;
/// * `y^p x^q = (L_y^p x)^q (L_x^{-q} y)^p`;
/// * `x^{M_x} y = y (L_y^{-1} x)^{M_x}`;
/// * `x^M y^M = y^M x^M`.
pub fn verify_power_identities<C: Scalar>(
    s: &SolutionMap,
    presentation: &Presentation<C>,
    max_exp: u32,
) -> Result<PowerReport> {
    let actions = compute_actions(s)?;
    let n = s.n();
    let big_m = u32::try_from(actions.cyclic_degree)
        .map_err(|_| Error::BoundExceeded { what: "cyclic degree".into(), bound: u32::MAX as u64 })?;
    let eq = |a: Vec<usize>, b: Vec<usize>| presentation.equal_in_semigroup(&a, &b);
    let mut failures = Vec::new();
    let mut checked = 0;
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let lx = &actions.left[x];
            let ly = &actions.left[y];
            let m = ly.cycle_of(x).len() as u32;
            let yk = lx.inverse().apply(y);
            checked += 1;
            if !eq([pow_word(y, m), vec![x]].concat(), [vec![x], pow_word(yk, m)].concat())? {
                failures.push(PowerFailure { identity: "y^m x = x y_k^m", x, y, p: m, q: 1 });
            }
            for p in 1..=max_exp {
                for q in 1..=max_exp {
                    let xp = ly.pow(p as i64).apply(x);
                    let yp = lx.pow(-(q as i64)).apply(y);
                    checked += 1;
                    let lhs = [pow_word(y, p), pow_word(x, q)].concat();
                    let rhs = [pow_word(xp, q), pow_word(yp, p)].concat();
                    if !eq(lhs, rhs)? {
                        failures.push(PowerFailure { identity: "y^p x^q = x'^q y'^p", x, y, p, q });
                    }
                }
            }
            let mx = actions.orders[x] as u32;
            let x_back = ly.inverse().apply(x);
            checked += 1;
            if !eq([pow_word(x, mx), vec![y]].concat(), [vec![y], pow_word(x_back, mx)].concat())? {
                failures.push(PowerFailure { identity: "x^Mx y = y (L_y^-1 x)^Mx", x, y, p: mx, q: 1 });
            }
            checked += 1;
            if !eq(
                [pow_word(x, big_m), pow_word(y, big_m)].concat(),
                [pow_word(y, big_m), pow_word(x, big_m)].concat(),
            )? {
                failures.push(PowerFailure { identity: "x^M y^M = y^M x^M", x, y, p: big_m, q: big_m });
            }
        }
    }
    Ok(PowerReport { max_exp, checked, failures })
}
