use std::collections::HashSet;

use serde::Serialize;

use super::{ExponentVector, Presentation};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::solution::SolutionMap;

/// `C(n, k)` in exact integer arithmetic.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Number of length-`d` words in which no rule applies, by a transfer
/// matrix over the last letter. For a certified presentation this is the
/// number of normal monomials of degree `d`.
pub fn count_normal_monomials<C: Scalar>(p: &Presentation<C>, d: usize) -> u128 {
    let n = p.n();
    if d == 0 {
        return 1;
    }
    let mut ends = vec![1u128; n];
    for _ in 1..d {
        let mut next = vec![0u128; n];
        for (a, &count) in ends.iter().enumerate() {
            if count == 0 {
                continue;
            }
            for (b, slot) in next.iter_mut().enumerate() {
                if p.rule_for((a, b)).is_none() {
                    *slot += count;
                }
            }
        }
        ends = next;
    }
    ends.iter().sum()
}

fn all_words(n: usize, d: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (n as u64).pow(d as u32);
    (0..total).map(move |mut t| {
        let mut w = vec![0; d];
        for slot in w.iter_mut().rev() {
            *slot = (t % n as u64) as usize;
            t /= n as u64;
        }
        w
    })
}

/// Reduces all `n^d` words and counts the distinct results.
pub fn count_normal_forms_exhaustive<C: Scalar>(p: &Presentation<C>, d: usize) -> Result<usize> {
    let n = p.n();
    guard_words(n, d)?;
    let mut seen = HashSet::new();
    for w in all_words(n, d) {
        seen.insert(p.reduce(&w)?.word);
    }
    Ok(seen.len())
}

const WORD_LIMIT: u64 = 5_000_000;

fn guard_words(n: usize, d: usize) -> Result<()> {
    match (n as u64).checked_pow(d as u32) {
        Some(t) if t <= WORD_LIMIT => Ok(()),
        _ => Err(Error::BoundExceeded { what: format!("{n}^{d} words"), bound: WORD_LIMIT }),
    }
}

/// Degree-`d` elements of `S(X, r)`, counted without any rewriting: the
/// classes of words of length `d` under `u ~ u'` whenever `u'` is obtained
/// by applying `r` at one position.
pub fn count_degree_classes(s: &SolutionMap, d: usize) -> Result<usize> {
    let n = s.n();
    guard_words(n, d)?;
    if d < 2 {
        return Ok(if d == 0 { 1 } else { n });
    }
    let total = n.pow(d as u32);
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(parent: &mut [usize], mut a: usize) -> usize {
        while parent[a] != a {
            parent[a] = parent[parent[a]];
            a = parent[a];
        }
        a
    }
    let encode = |w: &[usize]| w.iter().fold(0usize, |acc, &x| acc * n + x);
    for (t, w) in all_words(n, d).enumerate() {
        for i in 0..d - 1 {
            let mut v = w.clone();
            s.act_at(&mut v, i);
            let (a, b) = (find(&mut parent, t), find(&mut parent, encode(&v)));
            if a != b {
                parent[a] = b;
            }
        }
    }
    Ok((0..total).filter(|&t| find(&mut parent, t) == t).count())
}

/// Whether `Σ x_i^M` and the products `x_i^M x_j^M` behave centrally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CentralityReport {
    pub m: u32,
    /// `x_i^M x_j^M = x_j^M x_i^M` for all pairs.
    pub powers_commute: bool,
    /// For each `x_j`, the normal forms of `{x_i^M x_j}` and `{x_j x_i^M}`
    /// agree as multisets.
    pub power_sum_central: bool,
    pub witnesses: Vec<String>,
}

/// Checks that the `M`-th powers commute with each other and that their sum
/// commutes with every generator.
pub fn check_centrality<C: Scalar>(p: &Presentation<C>, m: u32) -> Result<CentralityReport> {
    let n = p.n();
    let power = |x: usize| vec![x; m as usize];
    let mut witnesses = Vec::new();
    let mut powers_commute = true;
    for i in 0..n {
        for j in i + 1..n {
            let a = p.normal_form(&[power(i), power(j)].concat())?.0;
            let b = p.normal_form(&[power(j), power(i)].concat())?.0;
            if a != b {
                powers_commute = false;
                witnesses.push(format!("x{}^{m} x{}^{m} != x{}^{m} x{}^{m}", i + 1, j + 1, j + 1, i + 1));
            }
        }
    }
    let mut power_sum_central = true;
    for j in 0..n {
        let mut left: Vec<ExponentVector> = Vec::with_capacity(n);
        let mut right: Vec<ExponentVector> = Vec::with_capacity(n);
        for i in 0..n {
            let mut w = power(i);
            w.push(j);
            left.push(p.normal_form(&w)?.0);
            let mut w = vec![j];
            w.extend(power(i));
            right.push(p.normal_form(&w)?.0);
        }
        left.sort();
        right.sort();
        if left != right {
            power_sum_central = false;
            witnesses.push(format!("sum of x_i^{m} does not commute with x{}", j + 1));
        }
    }
    Ok(CentralityReport { m, powers_commute, power_sum_central, witnesses })
}
