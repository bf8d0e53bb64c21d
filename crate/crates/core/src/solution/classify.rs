use num_integer::Integer;
use serde::Serialize;

use super::{Pair, SolutionMap};

/// Default cut-off for reporting the order of `r`.
pub const R_ORDER_BOUND: u64 = 64;

/// One input violating a predicate. Elements are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `r(r(pair)) != pair`.
    NotInvolutive { pair: Pair, image: Pair, back: Pair },
    /// `L_x(y1) == L_x(y2)` with `y1 != y2`.
    LeftDegenerate { x: usize, y1: usize, y2: usize },
    /// `R_y(x1) == R_y(x2)` with `x1 != x2`.
    RightDegenerate { y: usize, x1: usize, x2: usize },
    /// `r(x, x) != (x, x)`.
    NotSquareFree { x: usize, image: Pair },
    /// `r1 r2 r1 (t) != r2 r1 r2 (t)`.
    NotBraided { triple: [usize; 3], lhs: [usize; 3], rhs: [usize; 3] },
}

impl Witness {
    /// Re-evaluates the violation against `s`; true iff it still holds.
    pub fn replay(&self, s: &SolutionMap) -> bool {
        match *self {
            Witness::NotInvolutive { pair, .. } => s.apply(s.apply(pair)) != pair,
            Witness::LeftDegenerate { x, y1, y2 } => y1 != y2 && s.get(x, y1).0 == s.get(x, y2).0,
            Witness::RightDegenerate { y, x1, x2 } => x1 != x2 && s.get(x1, y).1 == s.get(x2, y).1,
            Witness::NotSquareFree { x, .. } => s.get(x, x) != (x, x),
            Witness::NotBraided { triple, .. } => {
                let (l, r) = braid_sides(s, triple);
                l != r
            }
        }
    }
}

/// Every predicate of the definitions, with one witness per failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub involutive: bool,
    pub left_nondegenerate: bool,
    pub right_nondegenerate: bool,
    pub square_free: bool,
    pub braided: bool,
    pub symmetric: bool,
    /// Order of `r` as a permutation of `X × X`; `None` when above the bound.
    pub r_order: Option<u64>,
    pub witnesses: Vec<Witness>,
}

impl PropertyReport {
    pub fn nondegenerate(&self) -> bool {
        self.left_nondegenerate && self.right_nondegenerate
    }

    /// Braided, involutive and non-degenerate.
    pub fn is_solution(&self) -> bool {
        self.braided && self.involutive && self.nondegenerate()
    }

    pub fn is_square_free_solution(&self) -> bool {
        self.is_solution() && self.square_free
    }
}

pub(crate) fn braid_sides(s: &SolutionMap, t: [usize; 3]) -> ([usize; 3], [usize; 3]) {
    let mut lhs = t;
    s.act_at(&mut lhs, 0);
    s.act_at(&mut lhs, 1);
    s.act_at(&mut lhs, 0);
    let mut rhs = t;
    s.act_at(&mut rhs, 1);
    s.act_at(&mut rhs, 0);
    s.act_at(&mut rhs, 1);
    (lhs, rhs)
}

pub fn classify(s: &SolutionMap) -> PropertyReport {
    classify_with_bound(s, R_ORDER_BOUND)
}

pub fn classify_with_bound(s: &SolutionMap, order_bound: u64) -> PropertyReport {
    let n = s.n();
    let mut witnesses = Vec::new();

    let involutive = match (0..n * n).map(|u| (u / n, u % n)).find(|&p| s.apply(s.apply(p)) != p) {
        Some(pair) => {
            let image = s.apply(pair);
            witnesses.push(Witness::NotInvolutive { pair, image, back: s.apply(image) });
            false
        }
        None => true,
    };

    let mut left_nondegenerate = true;
    'left: for x in 0..n {
        let mut first = vec![usize::MAX; n];
        for y in 0..n {
            let a = s.get(x, y).0;
            if first[a] != usize::MAX {
                witnesses.push(Witness::LeftDegenerate { x, y1: first[a], y2: y });
                left_nondegenerate = false;
                break 'left;
            }
            first[a] = y;
        }
    }

    let mut right_nondegenerate = true;
    'right: for y in 0..n {
        let mut first = vec![usize::MAX; n];
        for x in 0..n {
            let b = s.get(x, y).1;
            if first[b] != usize::MAX {
                witnesses.push(Witness::RightDegenerate { y, x1: first[b], x2: x });
                right_nondegenerate = false;
                break 'right;
            }
            first[b] = x;
        }
    }

    let square_free = match (0..n).find(|&x| s.get(x, x) != (x, x)) {
        Some(x) => {
            witnesses.push(Witness::NotSquareFree { x, image: s.get(x, x) });
            false
        }
        None => true,
    };

    let mut braided = true;
    'braid: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (lhs, rhs) = braid_sides(s, [a, b, c]);
                if lhs != rhs {
                    witnesses.push(Witness::NotBraided { triple: [a, b, c], lhs, rhs });
                    braided = false;
                    break 'braid;
                }
            }
        }
    }

    PropertyReport {
        involutive,
        left_nondegenerate,
        right_nondegenerate,
        square_free,
        braided,
        symmetric: braided && involutive,
        r_order: order_of_r(s, order_bound),
        witnesses,
    }
}

/// Order of `r` as a permutation of the `n²` pairs, if it is at most `bound`.
fn order_of_r(s: &SolutionMap, bound: u64) -> Option<u64> {
    let n = s.n();
    let mut seen = vec![false; n * n];
    let mut order = 1u64;
    for start in 0..n * n {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut u = start;
        while !seen[u] {
            seen[u] = true;
            len += 1;
            let (a, b) = s.table()[u];
            u = a * n + b;
        }
        order = order.lcm(&len);
        if order > bound {
            return None;
        }
    }
    Some(order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known;

    fn all_true(r: &PropertyReport) -> bool {
        r.involutive && r.nondegenerate() && r.square_free && r.braided && r.symmetric
    }

    #[test]
    fn n3_example_passes_everything() {
        let r = classify(&known::n3());
        assert!(all_true(&r));
        assert_eq!(r.r_order, Some(2));
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn trivial_solutions() {
        for n in 1..=5 {
            let r = classify(&SolutionMap::trivial(n));
            assert!(all_true(&r), "n = {n}");
        }
        // n = 1: the flip is the identity map
        assert_eq!(classify(&SolutionMap::trivial(1)).r_order, Some(1));
    }

    #[test]
    fn non_involutive_example() {
        let r = classify(&known::n6_non_involutive());
        assert!(r.braided);
        assert!(!r.involutive);
        assert!(r.square_free);
        assert!(r.nondegenerate());
        assert_eq!(r.r_order, Some(4));
    }

    #[test]
    fn permutational_criteria() {
        // f = g = (1 2): fg = gf, and since (1 2) is an involution also f = g^{-1}
        let f = [1, 0];
        let s = SolutionMap::permutational(&f, &f).unwrap();
        let r = classify(&s);
        assert!(r.braided);
        // r(x, y) = (f(y), f(x)) has r^2 = id because f is an involution
        assert!(r.involutive);

        // f = (1 2), g = f^{-1} on three points: involutive but not square-free
        let f = [1, 0, 2];
        let s = SolutionMap::permutational(&f, &f).unwrap();
        let r = classify(&s);
        assert!(r.involutive);
        assert!(!r.square_free);
        assert_eq!(s.get(0, 0), (1, 1));
    }

    #[test]
    fn witnesses_replay() {
        let s = SolutionMap::permutational(&[1, 2, 0], &[0, 2, 1]).unwrap();
        let r = classify(&s);
        assert!(!r.witnesses.is_empty());
        for w in &r.witnesses {
            assert!(w.replay(&s), "{w:?}");
        }
    }

    #[test]
    fn order_bound() {
        let s = known::n6_non_involutive();
        assert_eq!(classify_with_bound(&s, 3).r_order, None);
    }
}
