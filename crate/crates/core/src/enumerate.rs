//! Square-free involutive non-degenerate solutions on a few points, up to
//! isomorphism, and a survey of their invariants.
//!
//! A square-free solution is determined by its left actions through
//! `r(x, y) = (L_x(y), L_y^{-1}(x))`, with each `L_x` fixing `x`. The search
//! assigns `L_0, L_1, ..` in turn and prunes with the identity
//! `L_x L_y = L_{L_x(y)} L_{L_y^{-1}(x)}` as soon as all four actions are known.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::actions::compute_actions;
use crate::error::{Error, Result};
use crate::group::{orbits_left, permutation_group_left};
use crate::perm::{all_permutations, Permutation};
use crate::retract::{multipermutation_level, retract, Level};
use crate::rewrite::find_skew_ordering;
use crate::solution::{canonical_form, classify, Pair, SolutionMap, CANONICAL_BOUND};

/// Largest `n` the enumeration accepts.
pub const ENUMERATION_BOUND: usize = 5;

/// One isomorphism class with its invariants.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CatalogEntry {
    #[serde(skip)]
    pub solution: SolutionMap,
    /// `L_x` of the canonical representative, as 1-based cycle strings.
    pub left_actions: Vec<String>,
    pub m: u64,
    pub orbit_count: usize,
    pub level: Level,
    /// A certified skew-polynomial ordering, 0-based.
    pub ordering: Option<Vec<usize>>,
    pub group_order: usize,
    /// Relations `xy = y'x'` that are not commutation relations.
    pub nontrivial_relations: usize,
    /// Relations `xy = y'x'` whose two sides share no letter.
    pub disjoint_relations: usize,
    pub commutation_relations: usize,
    pub retractable: bool,
    pub trivial: bool,
}

impl CatalogEntry {
    pub fn decomposable(&self) -> bool {
        self.orbit_count >= 2 || self.solution.n() <= 1
    }
}

fn cycle_string(p: &Permutation) -> String {
    let cycles: Vec<String> = p
        .cycles()
        .into_iter()
        .filter(|c| c.len() > 1)
        .map(|c| format!("({})", c.iter().map(|x| (x + 1).to_string()).collect::<Vec<_>>().join(" ")))
        .collect();
    if cycles.is_empty() {
        "id".into()
    } else {
        cycles.concat()
    }
}

/// Permutations of `0..n` fixing `x`.
fn stabilizer(n: usize, x: usize) -> Vec<Permutation> {
    all_permutations(n).into_iter().filter(|p| p.apply(x) == x).collect()
}

fn consistent(left: &[Permutation], inverses: &[Permutation], k: usize) -> bool {
    // check every instance of the identity in which all four indices are < k
    // and at least one equals k - 1
    let last = k - 1;
    for x in 0..k {
        for y in 0..k {
            if x != last && y != last {
                let (u, v) = (left[x].apply(y), inverses[y].apply(x));
                if u != last && v != last {
                    continue;
                }
            }
            let u = left[x].apply(y);
            let v = inverses[y].apply(x);
            if u >= k || v >= k {
                continue;
            }
            if left[y].then(&left[x]) != left[v].then(&left[u]) {
                return false;
            }
        }
    }
    true
}

fn search(
    n: usize,
    stabs: &[Vec<Permutation>],
    left: &mut Vec<Permutation>,
    inverses: &mut Vec<Permutation>,
    out: &mut BTreeSet<Vec<(usize, usize)>>,
) -> Result<()> {
    let k = left.len();
    if k == n {
        if let Ok(s) = SolutionMap::from_left_actions(left, true) {
            if classify(&s).is_square_free_solution() {
                out.insert(canonical_form(&s, CANONICAL_BOUND)?.0.table().to_vec());
            }
        }
        return Ok(());
    }
    for l in &stabs[k] {
        left.push(l.clone());
        inverses.push(l.inverse());
        if consistent(left, inverses, k + 1) {
            search(n, stabs, left, inverses, out)?;
        }
        left.pop();
        inverses.pop();
    }
    Ok(())
}

/// Canonical tables of all square-free solutions on `n` points, sorted.
pub fn enumerate_tables(n: usize) -> Result<Vec<SolutionMap>> {
    if n == 0 || n > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded { what: format!("enumeration for n = {n}"), bound: ENUMERATION_BOUND as u64 });
    }
    let stabs: Vec<Vec<Permutation>> = (0..n).map(|x| stabilizer(n, x)).collect();
    let shards: Vec<Result<BTreeSet<Vec<Pair>>>> = stabs[0]
        .par_iter()
        .map(|l0| {
            let mut out = BTreeSet::new();
            let mut left = vec![l0.clone()];
            let mut inverses = vec![l0.inverse()];
            search(n, &stabs, &mut left, &mut inverses, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut all = BTreeSet::new();
    for shard in shards {
        all.extend(shard?);
    }
    all.into_iter().map(|t| SolutionMap::new(n, t)).collect()
}

/// Independent search for small `n`: every involution of `X × X` fixing the
/// diagonal, filtered by the classifier and reduced to canonical forms.
pub fn enumerate_raw_tables(n: usize) -> Result<Vec<SolutionMap>> {
    if n > 3 {
        return Err(Error::BoundExceeded { what: format!("raw-table enumeration for n = {n}"), bound: 3 });
    }
    let off: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|(x, y)| x != y).collect();
    let mut found = BTreeSet::new();
    // pair up off-diagonal cells into an involution, recursively
    fn rec(
        n: usize,
        off: &[(usize, usize)],
        table: &mut Vec<(usize, usize)>,
        done: &mut Vec<bool>,
        found: &mut BTreeSet<Vec<(usize, usize)>>,
    ) -> Result<()> {
        let Some(i) = done.iter().position(|d| !d) else {
            let s = SolutionMap::new(n, table.clone())?;
            if classify(&s).is_square_free_solution() {
                found.insert(canonical_form(&s, CANONICAL_BOUND)?.0.table().to_vec());
            }
            return Ok(());
        };
        done[i] = true;
        let u = off[i];
        for j in i..off.len() {
            if done[j] && j != i {
                continue;
            }
            let w = off[j];
            done[j] = true;
            table[u.0 * n + u.1] = w;
            table[w.0 * n + w.1] = u;
            rec(n, off, table, done, found)?;
            if j != i {
                done[j] = false;
            }
        }
        table[u.0 * n + u.1] = u;
        done[i] = false;
        Ok(())
    }
    let mut table: Vec<(usize, usize)> = (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).collect();
    let mut done = vec![false; off.len()];
    rec(n, &off, &mut table, &mut done, &mut found)?;
    found.into_iter().map(|t| SolutionMap::new(n, t)).collect()
}

/// Invariants of one square-free solution.
pub fn describe(s: &SolutionMap) -> Result<CatalogEntry> {
    let actions = compute_actions(s)?;
    let ordering = find_skew_ordering(s)?.ok().map(|c| c.order);
    let level = multipermutation_level(s, s.n())?;
    let retractable = s.n() <= 1 || !retract(s)?.is_irretractable();
    let mut nontrivial = 0;
    let mut commuting = 0;
    let mut disjoint = 0;
    for (u, w) in s.moved_pairs() {
        if u < w {
            if w == (u.1, u.0) {
                commuting += 1;
            } else {
                nontrivial += 1;
                if w.0 != u.0 && w.0 != u.1 && w.1 != u.0 && w.1 != u.1 {
                    disjoint += 1;
                }
            }
        }
    }
    Ok(CatalogEntry {
        solution: s.clone(),
        left_actions: actions.left.iter().map(cycle_string).collect(),
        m: actions.cyclic_degree,
        orbit_count: orbits_left(s).len(),
        level,
        ordering,
        group_order: permutation_group_left(s)?.order(),
        nontrivial_relations: nontrivial,
        disjoint_relations: disjoint,
        commutation_relations: commuting,
        retractable,
        trivial: *s == SolutionMap::trivial(s.n()),
    })
}

/// The catalog for `n`, in the order of the canonical tables.
pub fn enumerate_square_free(n: usize) -> Result<Vec<CatalogEntry>> {
    enumerate_tables(n)?.iter().map(describe).collect()
}

/// Totals over a catalog, including the audit of the retractability conjecture.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Survey {
    pub n: usize,
    pub total: usize,
    pub nontrivial: usize,
    pub with_ordering: usize,
    pub decomposable: usize,
    pub retractable: usize,
    /// Index of the entry with the most relations that are not commutations,
    /// ties broken by the number of relations with disjoint sides.
    pub most_nontrivial_relations: Option<usize>,
    pub entries: Vec<CatalogEntry>,
}

pub fn survey(n: usize) -> Result<Survey> {
    let entries = enumerate_square_free(n)?;
    let most = entries
        .iter()
        .enumerate()
        .max_by_key(|(i, e)| (e.nontrivial_relations, e.disjoint_relations, std::cmp::Reverse(*i)))
        .map(|(i, _)| i);
    Ok(Survey {
        n,
        total: entries.len(),
        nontrivial: entries.iter().filter(|e| !e.trivial).count(),
        with_ordering: entries.iter().filter(|e| e.ordering.is_some()).count(),
        decomposable: entries.iter().filter(|e| e.decomposable()).count(),
        retractable: entries.iter().filter(|e| e.retractable).count(),
        most_nontrivial_relations: most,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    #[test]
    fn counts() {
        assert_eq!(enumerate_tables(1).unwrap().len(), 1);
        assert_eq!(enumerate_tables(2).unwrap().len(), 1);
        assert_eq!(enumerate_tables(3).unwrap().len(), 2);
        assert_eq!(enumerate_tables(4).unwrap().len(), 5);
        assert_eq!(enumerate_tables(5).unwrap().len(), 17);
        assert!(enumerate_tables(6).is_err());
        assert!(enumerate_tables(0).is_err());
    }

    #[test]
    fn raw_tables_agree_for_three_points() {
        assert_eq!(enumerate_raw_tables(2).unwrap(), enumerate_tables(2).unwrap());
        assert_eq!(enumerate_raw_tables(3).unwrap(), enumerate_tables(3).unwrap());
    }

    #[test]
    fn known_examples_are_in_the_catalog() {
        let three = enumerate_tables(3).unwrap();
        assert!(three.contains(&canonical_form(&known::n3(), 8).unwrap().0));
        let four = enumerate_tables(4).unwrap();
        assert!(four.contains(&canonical_form(&known::n4(), 8).unwrap().0));
        assert!(four.contains(&SolutionMap::trivial(4)));
    }

    #[test]
    fn survey_of_three_points() {
        let s = survey(3).unwrap();
        assert_eq!((s.total, s.nontrivial), (2, 1));
        let e = s.entries.iter().find(|e| !e.trivial).unwrap();
        assert_eq!(e.m, 2);
        assert_eq!(e.orbit_count, 2);
        assert_eq!(e.level, Level::Level { level: 2 });
        assert!(e.ordering.is_some());
    }

    #[test]
    fn survey_of_four_points() {
        let s = survey(4).unwrap();
        assert_eq!(s.total, 5);
        assert_eq!(s.with_ordering, 5);
        assert_eq!(s.decomposable, 5);
        let best = &s.entries[s.most_nontrivial_relations.unwrap()];
        assert_eq!(best.solution, canonical_form(&known::n4(), 8).unwrap().0);
        assert_eq!((best.nontrivial_relations, best.disjoint_relations), (4, 4));
        // another entry also has four relations that are not commutations
        let others: Vec<_> = s.entries.iter().filter(|e| e.solution != best.solution).collect();
        assert!(others.iter().all(|e| e.nontrivial_relations <= 4 && e.disjoint_relations < 4));
        assert_eq!(others.iter().filter(|e| e.nontrivial_relations == 4).count(), 1);
    }

    #[test]
    fn survey_of_two_points() {
        let s = survey(2).unwrap();
        assert_eq!(s.total, 1);
        assert!(s.entries[0].trivial);
    }
}
