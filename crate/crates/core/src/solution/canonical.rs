use std::cmp::Ordering;

use super::{Relabeling, SolutionMap};
use crate::error::{Error, Result};
use crate::perm::{next_permutation, Permutation};

/// Largest `n` accepted by [`canonical_form`] by default.
pub const CANONICAL_BOUND: usize = 8;

/// The lexicographically least relabeled table, with a relabeling that
/// produces it. Two maps are isomorphic iff their canonical forms agree;
/// element names are dropped from the result.
///
/// Tables are compared as the sequence `code(r'(0,0)), code(r'(0,1)), ..`
/// with `code(a, b) = a * n + b`. Candidates are abandoned as soon as a
/// prefix exceeds the best one found so far.
pub fn canonical_form(s: &SolutionMap, bound: usize) -> Result<(SolutionMap, Relabeling)> {
    let n = s.n();
    if n > bound {
        return Err(Error::BoundExceeded { what: format!("canonical form for n = {n}"), bound: bound as u64 });
    }
    let mut best: Option<(Vec<usize>, Vec<usize>)> = None;
    let mut images: Vec<usize> = (0..n).collect();
    let mut inverse = vec![0; n];
    let mut code = vec![0; n * n];
    loop {
        for (x, &px) in images.iter().enumerate() {
            inverse[px] = x;
        }
        let mut state = match &best {
            None => Ordering::Less,
            Some(_) => Ordering::Equal,
        };
        let mut abandoned = false;
        for u in 0..n * n {
            let (a, b) = s.get(inverse[u / n], inverse[u % n]);
            let c = images[a] * n + images[b];
            code[u] = c;
            if state == Ordering::Equal {
                state = c.cmp(&best.as_ref().unwrap().0[u]);
                if state == Ordering::Greater {
                    abandoned = true;
                    break;
                }
            }
        }
        if !abandoned && state == Ordering::Less {
            best = Some((code.clone(), images.clone()));
        }
        if !next_permutation(&mut images) {
            break;
        }
    }
    let (_, images) = best.expect("at least one relabeling");
    let pi = Relabeling(Permutation::from_images(images).expect("permutation"));
    Ok((s.relabel(&pi).without_names(), pi))
}
