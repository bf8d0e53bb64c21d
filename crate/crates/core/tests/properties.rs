//! Property tests over the enumerated catalog, the reference solutions and
//! random relabelings of them.

use std::sync::OnceLock;

use proptest::prelude::*;
use ybe_core::actions::compute_actions;
use ybe_core::enumerate::enumerate_tables;
use ybe_core::group::QuotientGroup;
use ybe_core::istructure::IStructure;
use ybe_core::linear::{skew_lemma_roundtrip, BinomialLinearMap};
use ybe_core::perm::all_permutations;
use ybe_core::retract::{multipermutation_level, retract};
use ybe_core::rewrite::{find_skew_ordering, ExponentVector, Presentation};
use ybe_core::solution::{canonical_form, parse_solution, parse_solution_file, serialize, CANONICAL_BOUND};
use ybe_core::{classify, known, Permutation, Relabeling, SolutionMap};

struct Case {
    s: SolutionMap,
    p: Presentation,
}

impl std::fmt::Debug for Case {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", serialize(&self.s))
    }
}

/// Square-free involutive solutions with a certified presentation each.
fn cases() -> &'static [Case] {
    static CASES: OnceLock<Vec<Case>> = OnceLock::new();
    CASES.get_or_init(|| {
        let mut all: Vec<SolutionMap> = (1..=4).flat_map(|n| enumerate_tables(n).unwrap()).collect();
        all.extend([known::n3(), known::n4(), known::level3(), known::m12()]);
        all.into_iter()
            .map(|s| {
                let p = find_skew_ordering(&s).unwrap().unwrap().presentation;
                Case { s, p }
            })
            .collect()
    })
}

fn case() -> impl Strategy<Value = &'static Case> {
    (0..cases().len()).prop_map(|i| &cases()[i])
}

fn relabeling(n: usize) -> impl Strategy<Value = Relabeling> {
    Just((0..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Relabeling(Permutation::from_images(images).unwrap()))
}

fn case_and_word(max_len: usize) -> impl Strategy<Value = (&'static Case, Vec<usize>)> {
    case().prop_flat_map(move |c| (Just(c), prop::collection::vec(0..c.s.n(), 0..=max_len)))
}

fn monomial(n: usize, max_degree: u32) -> impl Strategy<Value = ExponentVector> {
    prop::collection::vec(0..n, 0..=max_degree as usize).prop_map(move |letters| ExponentVector::of_word(n, &letters))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabeling_preserves_invariants((c, pi) in case().prop_flat_map(|c| (Just(c), relabeling(c.s.n())))) {
        let t = c.s.relabel(&pi);
        let (a, b) = (classify(&c.s), classify(&t));
        prop_assert_eq!(
            (a.involutive, a.nondegenerate(), a.square_free, a.braided),
            (b.involutive, b.nondegenerate(), b.square_free, b.braided)
        );
        prop_assert_eq!(compute_actions(&c.s).unwrap().cyclic_degree, compute_actions(&t).unwrap().cyclic_degree);
        prop_assert_eq!(multipermutation_level(&c.s, 10).unwrap(), multipermutation_level(&t, 10).unwrap());
        if c.s.n() <= CANONICAL_BOUND {
            prop_assert_eq!(canonical_form(&c.s, CANONICAL_BOUND).unwrap().0, canonical_form(&t, CANONICAL_BOUND).unwrap().0);
        }
        prop_assert_eq!(t.relabel(&pi.inverse()), c.s.clone());
    }

    #[test]
    fn serialization_round_trips((c, pi) in case().prop_flat_map(|c| (Just(c), relabeling(c.s.n())))) {
        let t = c.s.relabel(&pi).without_names();
        prop_assert_eq!(parse_solution(&serialize(&t)).unwrap(), t);
    }

    #[test]
    fn normal_forms_are_invariant_under_r((c, w) in case_and_word(7), pos in any::<prop::sample::Index>()) {
        let (nf, _) = c.p.normal_form(&w).unwrap();
        prop_assert_eq!(nf.degree() as usize, w.len());
        let normal_word = nf.to_word(c.p.order());
        prop_assert!(c.p.is_irreducible(&normal_word));
        prop_assert_eq!(&c.p.normal_form(&normal_word).unwrap().0, &nf);
        if w.len() >= 2 {
            let i = pos.index(w.len() - 1);
            let mut moved = w.clone();
            c.s.act_at(&mut moved, i);
            prop_assert_eq!(c.p.normal_form(&moved).unwrap().0, nf);
        }
    }

    #[test]
    fn multiplication_is_associative((c, w) in case_and_word(9), cut in any::<(prop::sample::Index, prop::sample::Index)>()) {
        let (i, j) = (cut.0.index(w.len() + 1), cut.1.index(w.len() + 1));
        let (i, j) = (i.min(j), i.max(j));
        let nf = |u: &[usize]| c.p.normal_form(u).unwrap().0;
        let (a, b, d) = (nf(&w[..i]), nf(&w[i..j]), nf(&w[j..]));
        let ab = c.p.multiply(&a, &b).unwrap().0;
        let bd = c.p.multiply(&b, &d).unwrap().0;
        prop_assert_eq!(c.p.multiply(&ab, &d).unwrap().0, nf(&w));
        prop_assert_eq!(c.p.multiply(&a, &bd).unwrap().0, nf(&w));
    }

    #[test]
    fn istructure_is_invertible_and_transfers_divisibility(
        (c, a, b) in case().prop_flat_map(|c| (Just(c), monomial(c.s.n(), 3), monomial(c.s.n(), 2)))
    ) {
        let ist = IStructure::new(&c.s, &c.p).unwrap();
        let va = ist.left(&a).unwrap();
        prop_assert_eq!(va.degree(), a.degree());
        prop_assert_eq!(ist.left_preimage(&va), a.clone());
        prop_assert_eq!(ist.right_preimage(&ist.right(&a).unwrap()), a.clone());
        let ab = a.add(&b);
        let vab = ist.left(&ab).unwrap();
        prop_assert!(ist.divides_left(&va, &vab));
        let join = a.lcm(&b);
        prop_assert_eq!(ist.lcm_left(&va, &ist.left(&b).unwrap()).unwrap(), ist.left(&join).unwrap());
    }

    #[test]
    fn left_divisibility_lattice_is_distributive(
        (c, a, b, d) in case().prop_flat_map(|c| (Just(c), monomial(c.s.n(), 3), monomial(c.s.n(), 3), monomial(c.s.n(), 3)))
    ) {
        let ist = IStructure::new(&c.s, &c.p).unwrap();
        let (va, vb, vd) = (ist.left(&a).unwrap(), ist.left(&b).unwrap(), ist.left(&d).unwrap());
        let join = |x: &ExponentVector, y: &ExponentVector| ist.lcm_left(x, y).unwrap();
        let meet = |x: &ExponentVector, y: &ExponentVector| ist.gcd_left(x, y).unwrap();
        prop_assert_eq!(join(&va, &meet(&vb, &vd)), meet(&join(&va, &vb), &join(&va, &vd)));
        prop_assert_eq!(meet(&va, &join(&vb, &vd)), join(&meet(&va, &vb), &meet(&va, &vd)));
        prop_assert_eq!(ist.divides_left(&va, &vb), a.divides(&b));
    }

    #[test]
    fn quotient_group_laws((c, w) in case_and_word(12)) {
        let Ok(g) = QuotientGroup::new(&c.s, &c.p) else { return Ok(()); };
        let third = w.len() / 3;
        let x = g.reduce_word(&w[..third]).unwrap();
        let y = g.reduce_word(&w[third..2 * third]).unwrap();
        let z = g.reduce_word(&w[2 * third..]).unwrap();
        let xy_z = g.mul(&g.mul(&x, &y).unwrap(), &z).unwrap();
        let x_yz = g.mul(&x, &g.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(&xy_z, &x_yz);
        prop_assert_eq!(&xy_z, &g.reduce_word(&w).unwrap());
        prop_assert_eq!(g.mul(&x, &g.inverse(&x).unwrap()).unwrap(), g.identity());
        let m = g.m() as usize;
        for i in 0..c.s.n() {
            prop_assert_eq!(g.reduce_word(&vec![i; m]).unwrap(), g.identity());
        }
    }

    #[test]
    fn retraction_classes_share_left_actions(c in case()) {
        let a = compute_actions(&c.s).unwrap();
        let step = retract(&c.s).unwrap();
        for class in &step.classes {
            for &x in class {
                prop_assert_eq!(&a.left[x], &a.left[class[0]]);
            }
        }
        for x in 0..c.s.n() {
            for y in 0..c.s.n() {
                if a.left[x] == a.left[y] {
                    prop_assert_eq!(step.class_of[x], step.class_of[y]);
                }
            }
        }
    }

    #[test]
    fn permutation_laws(p in (1usize..7).prop_flat_map(|n| (Just(n), 0..all_permutations(n).len(), 0..all_permutations(n).len()))) {
        let (n, i, j) = p;
        let perms = all_permutations(n);
        let (a, b) = (&perms[i], &perms[j]);
        prop_assert_eq!(a.then(b).inverse(), b.inverse().then(&a.inverse()));
        prop_assert_eq!(a.compose(b), b.then(a));
        prop_assert!(a.pow(a.order() as i64).is_identity());
        prop_assert_eq!(a.pow(-1), a.inverse());
    }

    #[test]
    fn parsers_never_panic(text in "[ -~\n]{0,200}") {
        let _ = parse_solution_file(&text);
        let _ = parse_solution_file(&format!("ybe-solution v1\nn 3\n{text}"));
        let _ = ybe_core::retract::parse_cross_maps(&format!("ybe-cross v1\n{text}"), 2, 3);
        let _ = ybe_core::istructure::parse_monomial(4, &text);
        let _ = known::n4().parse_word(&text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn linear_lemma_agrees_on_random_coefficients(c in case(), seed in any::<u64>()) {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let r = BinomialLinearMap::random(c.s.clone(), c.p.order(), &mut rng).unwrap();
        let rt = skew_lemma_roundtrip(&r, c.p.order()).unwrap();
        prop_assert!(rt.agree, "ybe {} vs groebner {}", rt.ybe.ok, rt.groebner.ok);
    }
}
