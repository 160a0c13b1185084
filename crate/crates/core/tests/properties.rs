use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use thompson_fn::construct::scaling_lemma;
use thompson_fn::document::{parse_element, serialize_element};
use thompson_fn::grouprep::{commutator_norm_sq, AlgebraElement};
use thompson_fn::sample::{random_d, random_fprime, random_scaling_interval};
use thompson_fn::structure::{member_d, member_fprime};
use thompson_fn::word::random_word;
use thompson_fn::{GroupWord, PlElement, Rational};

fn word(base: u32, len: usize, seed: u64) -> GroupWord {
    random_word(base, len, &mut ChaCha8Rng::seed_from_u64(seed))
}

fn element() -> impl Strategy<Value = PlElement> {
    (2u32..=5, 0usize..=8, any::<u64>())
        .prop_map(|(b, len, seed)| word(b, len, seed).evaluate().unwrap())
}

/// Triples over one common base.
fn triple() -> impl Strategy<Value = (PlElement, PlElement, PlElement)> {
    (2u32..=5).prop_flat_map(|b| {
        let one = move || {
            (0usize..=8, any::<u64>()).prop_map(move |(l, s)| word(b, l, s).evaluate().unwrap())
        };
        (one(), one(), one())
    })
}

fn grid(base: u32) -> Vec<Rational> {
    let den = u64::from(base).pow(4);
    (0..=den).map(|m| Rational::new(m, den)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn group_axioms((f, g, h) in triple()) {
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert!((&f * &f.inverse()).is_identity());
        prop_assert_eq!(&f * &PlElement::identity(f.base()), f.clone());
    }

    #[test]
    fn outputs_revalidate((f, g, _h) in triple()) {
        for out in [&f * &g, f.inverse()] {
            prop_assert_eq!(PlElement::new(out.base(), out.breaks().to_vec()).unwrap(), out);
        }
    }

    #[test]
    fn equality_matches_pointwise((f, g, _h) in triple()) {
        let same_points = grid(f.base())
            .iter()
            .all(|x| f.evaluate(x).unwrap() == g.evaluate(x).unwrap());
        // distinct elements can agree on a coarse grid, equal ones cannot differ
        if f == g {
            prop_assert!(same_points);
        }
        let fg = &f * &g;
        for x in grid(f.base()) {
            prop_assert_eq!(fg.evaluate(&x).unwrap(), f.evaluate(&g.evaluate(&x).unwrap()).unwrap());
        }
    }

    #[test]
    fn boundary_slopes_add((f, g, _h) in triple()) {
        let (a, b) = f.boundary_slopes();
        let (c, d) = g.boundary_slopes();
        prop_assert_eq!((&f * &g).boundary_slopes(), (a + c, b + d));
    }

    #[test]
    fn fixed_set_moves_under_conjugation((f, h, _g) in triple()) {
        let conj = f.conjugate_by(&h).unwrap();
        prop_assert_eq!(conj.fixed_set(), f.fixed_set().map(&h));
    }

    #[test]
    fn words_are_a_homomorphism(b in 2u32..=5, l1 in 0usize..6, l2 in 0usize..6, s1: u64, s2: u64) {
        let (u, v) = (word(b, l1, s1), word(b, l2, s2));
        prop_assert_eq!(u.concat(&v).evaluate().unwrap(), &u.evaluate().unwrap() * &v.evaluate().unwrap());
        prop_assert_eq!(GroupWord::parse(&u.to_string(), b).unwrap().evaluate().unwrap(), u.evaluate().unwrap());
    }

    #[test]
    fn serialization_round_trip(f in element()) {
        let text = serialize_element(&f);
        prop_assert_eq!(parse_element(&text).unwrap(), f);
    }

    #[test]
    fn normal_subgroups(b in 2u32..=5, seed: u64, h in 0usize..8, hs: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let fp = random_fprime(b, &mut rng);
        let d = random_d(b, 8, &mut rng);
        let h = word(b, h, hs).evaluate().unwrap();
        prop_assert!(member_fprime(&fp.conjugate_by(&h).unwrap()));
        prop_assert!(member_d(&d.conjugate_by(&h).unwrap()));
    }

    #[test]
    fn disjoint_supports_commute(b in 2u32..=5, seed: u64, k in 1i64..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = random_scaling_interval(b, &mut rng);
        let f = scaling_lemma(b, &lo, &hi, None).unwrap();
        // a second scaling element supported just to the left of lo
        let width = Rational::power_of(b, -(k + 6));
        let left = &lo - &width;
        if left.is_positive() {
            let g = scaling_lemma(b, &left, &lo, None).unwrap();
            prop_assert!(f.commutes_with(&g).unwrap());
        }
        // and one supported in [hi, 1]
        let right = &hi + &Rational::power_of(b, -(k + 6));
        if right < Rational::one() {
            let g = scaling_lemma(b, &hi, &right, None).unwrap();
            prop_assert!(f.commutes_with(&g).unwrap());
        }
    }

    #[test]
    fn algebra_ring_and_trace((f, g, h) in triple(), c in -5i64..=5, k in -5i64..=5) {
        let b = f.base();
        let x = AlgebraElement::from_terms(b, vec![(f.clone(), Rational::from_integer(c)), (g.clone(), Rational::one())]).unwrap();
        let y = AlgebraElement::from_terms(b, vec![(h.clone(), Rational::from_integer(k)), (f.clone(), Rational::new(1, 2))]).unwrap();
        let z = AlgebraElement::basis(g.clone());
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!((&x * &y).trace(), (&y * &x).trace());
        prop_assert_eq!((&x + &y).trace(), x.trace() + y.trace());
        let squares: Rational = x.terms().map(|(_, c)| c * c).sum();
        prop_assert_eq!(x.two_norm_sq(), squares);
        let norm = commutator_norm_sq(&AlgebraElement::basis(f.clone()), &AlgebraElement::basis(g.clone())).unwrap();
        let expect = if f.commutes_with(&g).unwrap() { 0 } else { 2 };
        prop_assert_eq!(norm, Rational::from_integer(expect));
    }
}
