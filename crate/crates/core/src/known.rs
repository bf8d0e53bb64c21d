//! Reference solutions used throughout the tests, the fixtures and the CLI.
//!
//! Indices are 0-based; the doc comments use the 1-based names `x1, x2, ..`.

use crate::perm::Permutation;
use crate::solution::{Pair, SolutionMap};

fn cycles(n: usize, cs: &[&[usize]]) -> Permutation {
    Permutation::from_cycles(n, cs).expect("valid cycles")
}

fn from_left(left: Vec<Permutation>) -> SolutionMap {
    SolutionMap::from_left_actions(&left, true).expect("left actions fix their own point")
}

/// Builds a map from relations `u = w` between pairs: `r` swaps `u` and `w`
/// and fixes every pair not mentioned.
pub fn from_relations(n: usize, relations: &[(Pair, Pair)]) -> SolutionMap {
    let mut table: Vec<(usize, usize)> = (0..n * n).map(|u| (u / n, u % n)).collect();
    for &(u, w) in relations {
        table[u.0 * n + u.1] = w;
        table[w.0 * n + w.1] = u;
    }
    SolutionMap::new(n, table).expect("relations pair up distinct words")
}

/// The nontrivial square-free solution on three points:
/// `L_{x1} = L_{x2} = id`, `L_{x3} = (x1 x2)`.
pub fn n3() -> SolutionMap {
    from_left(vec![Permutation::identity(3), Permutation::identity(3), cycles(3, &[&[0, 1]])])
}

/// The solution on four points built from `σ = (x1 x2)(x3 x4)`:
/// `L_{x1} = L_{x2} = (x3 x4)`, `L_{x3} = L_{x4} = (x1 x2)`.
/// Its relations are `x4x1 = x2x3`, `x4x2 = x1x3`, `x3x1 = x2x4`,
/// `x3x2 = x1x4`, `x2x1 = x1x2`, `x4x3 = x3x4`.
pub fn n4() -> SolutionMap {
    let a = cycles(4, &[&[2, 3]]);
    let b = cycles(4, &[&[0, 1]]);
    from_left(vec![a.clone(), a, b.clone(), b])
}

/// A square-free, braided, non-degenerate map on six points with `r^4 = id`.
///
/// Besides the four 4-cycles of `r`, the pairs `x1x2, x3x4, x3x5, x3x6,
/// x4x5, x4x6` and `x5x6` are flipped and the diagonal is fixed.
pub fn n6_non_involutive() -> SolutionMap {
    let n = 6;
    let mut table: Vec<(usize, usize)> = (0..n * n).map(|u| (u / n, u % n)).collect();
    for (a, b) in [(0, 1), (2, 3), (2, 4), (2, 5), (3, 4), (3, 5), (4, 5)] {
        table[a * n + b] = (b, a);
        table[b * n + a] = (a, b);
    }
    let four_cycles: [[(usize, usize); 4]; 4] = [
        [(0, 2), (3, 1), (0, 4), (5, 1)],
        [(0, 3), (2, 1), (0, 5), (4, 1)],
        [(1, 2), (3, 0), (1, 4), (5, 0)],
        [(1, 3), (2, 0), (1, 5), (4, 0)],
    ];
    for cycle in four_cycles {
        for k in 0..4 {
            let (a, b) = cycle[k];
            table[a * n + b] = cycle[(k + 1) % 4];
        }
    }
    SolutionMap::new(n, table).expect("bijective")
}

/// The 11-generator semigroup with generators `1..8, a, b, c`.
pub fn eleven_generators() -> SolutionMap {
    const A: usize = 8;
    const B: usize = 9;
    const C: usize = 10;
    // digits are 0-based here: `d(1)` is generator `1`
    let d = |k: usize| k - 1;
    // each entry `(p, q, s, t)` reads `pq = st`
    let letter_relations = [
        (d(1), A, A, d(2)),
        (d(2), A, A, d(1)),
        (d(2), B, B, d(3)),
        (d(3), B, B, d(2)),
        (d(3), A, A, d(4)),
        (d(4), A, A, d(3)),
        (d(4), C, C, d(1)),
        (d(1), C, C, d(4)),
        (d(5), A, A, d(6)),
        (d(6), A, A, d(5)),
        (d(6), B, B, d(7)),
        (d(7), B, B, d(6)),
        (d(7), A, A, d(8)),
        (d(8), A, A, d(7)),
        (d(8), C, C, d(5)),
        (d(5), C, C, d(8)),
        (d(1), B, B, d(5)),
        (d(5), B, B, d(1)),
        (d(2), C, C, d(6)),
        (d(6), C, C, d(2)),
        (d(3), C, C, d(7)),
        (d(7), C, C, d(3)),
        (d(4), B, B, d(8)),
        (d(8), B, B, d(4)),
        (A, B, C, A),
        (A, C, B, A),
        (B, C, C, B),
    ];
    let mut relations: Vec<_> = letter_relations.iter().map(|&(p, q, s, t)| ((p, q), (s, t))).collect();
    for i in 0..8 {
        for j in i + 1..8 {
            relations.push(((i, j), (j, i)));
        }
    }
    let names = ["1", "2", "3", "4", "5", "6", "7", "8", "a", "b", "c"];
    from_relations(11, &relations).with_names(names.iter().map(|s| s.to_string()).collect()).expect("distinct names")
}

/// Ten generators `x1..x6, y1..y4` (indices `0..6` and `6..10`) driven by
/// `σ = (x1 .. x6)(y1 .. y4)`; its cyclic degree is 12.
pub fn m12() -> SolutionMap {
    let n = 10;
    let sigma_x = |i: usize| (i + 1) % 6;
    let sigma_y = |j: usize| 6 + (j - 6 + 1) % 4;
    let mut left = Vec::with_capacity(n);
    for i in 0..6 {
        let images = (0..n)
            .map(|z| {
                if z >= 6 {
                    sigma_y(z)
                } else if z % 3 != i % 3 {
                    (z + 3) % 6
                } else {
                    z
                }
            })
            .collect();
        left.push(Permutation::from_images(images).expect("bijection"));
    }
    for j in 6..10 {
        let images = (0..n)
            .map(|z| {
                if z < 6 {
                    sigma_x(z)
                } else if (z - 6) % 2 != (j - 6) % 2 {
                    6 + (z - 6 + 2) % 4
                } else {
                    z
                }
            })
            .collect();
        left.push(Permutation::from_images(images).expect("bijection"));
    }
    let names = (1..=6).map(|i| format!("x{i}")).chain((1..=4).map(|j| format!("y{j}"))).collect();
    from_left(left).with_names(names).expect("distinct names")
}

/// A ten-element solution of multipermutation level 3 on
/// `x, x1, xi, xi1, t, t1, eta, eta1, y, y1`.
///
/// `L_y = L_{y1}` also swaps `t1` and `eta`. Without that transposition
/// `L_y` commutes with `L_x`, and the braid relation on `(x, y)` would then
/// force `L_xi = L_x`.
pub fn level3() -> SolutionMap {
    let n = 10;
    let (x, x1, xi, xi1, t, t1, eta, eta1, y, y1) = (0, 1, 2, 3, 4, 5, 6, 7, 8, 9);
    let lx = cycles(n, &[&[t, t1], &[eta, eta1], &[y, y1]]);
    let lxi = cycles(n, &[&[t, eta], &[t1, eta1], &[y, y1]]);
    let id = Permutation::identity(n);
    let ly = cycles(n, &[&[x, xi], &[x1, xi1], &[t1, eta]]);
    let left = vec![lx.clone(), lx, lxi.clone(), lxi, id.clone(), id.clone(), id.clone(), id, ly.clone(), ly];
    let names = ["x", "x1", "xi", "xi1", "t", "t1", "eta", "eta1", "y", "y1"];
    from_left(left).with_names(names.iter().map(|s| s.to_string()).collect()).expect("distinct names")
}

/// Every named reference solution, for table-driven tests.
pub fn all() -> Vec<(&'static str, SolutionMap)> {
    vec![
        ("n3", n3()),
        ("n4", n4()),
        ("n6", n6_non_involutive()),
        ("eleven", eleven_generators()),
        ("m12", m12()),
        ("level3", level3()),
    ]
}
