mod common;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use common::*;
use quadext::arith::{hilbert_reciprocity_check, hilbert_symbol, Place, SquareClass};
use quadext::brauer::BrauerClass2;
use quadext::crossed::{build_extension, hyperbolicity_witness, verify_extension, InvolutionType};
use quadext::fixtures::{gen_descent, gen_i3_12, obfuscate};
use quadext::involution::{
    discriminant_algebra, e3_of_extension, invariants_of_extension, orthogonal_extension,
    OrthogonalExtensionDesc, UnitaryDescent,
};
use quadext::pfister12::{decompose12, k_hyperbolic_test};
use quadext::qform::{isometric, realize_form, QuadraticForm};

fn entry() -> impl Strategy<Value = i64> {
    prop_oneof![-30i64..=-1, 1i64..=30]
}

fn small_form(max_dim: usize) -> impl Strategy<Value = QuadraticForm> {
    prop::collection::vec(prop_oneof![-10i64..=-1, 1i64..=10], 1..=max_dim).prop_map(|e| form(&e))
}

fn sc(n: i64) -> SquareClass {
    SquareClass::of_int(n).unwrap()
}

fn places() -> Vec<Place> {
    [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29]
        .iter()
        .map(|&p| Place::prime(p).unwrap())
        .chain([Place::Real])
        .collect()
}

/// ψ of dim 6 with d±(ψ) = 1.
fn disc_one_six() -> impl Strategy<Value = QuadraticForm> {
    prop::collection::vec(prop_oneof![-10i64..=-1, 1i64..=10], 5).prop_map(|head| {
        let prod = head.iter().fold(SquareClass::one(), |a, &x| a.mul(&sc(x)));
        let mut e: Vec<_> = head.iter().map(|&x| rat(x)).collect();
        e.push(prod.neg().to_rational());
        QuadraticForm::new(e).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hilbert_symmetric_and_bimultiplicative(a in entry(), b in entry(), c in entry()) {
        for v in places() {
            let s = |x: i64, y: i64| hilbert_symbol(&rat(x), &rat(y), &v).unwrap();
            prop_assert_eq!(s(a, b), s(b, a));
            prop_assert_eq!(s(a * c, b), s(a, b) * s(c, b));
            prop_assert_eq!(s(a, -a), 1);
        }
        prop_assert!(hilbert_reciprocity_check(&rat(a), &rat(b)).unwrap());
    }

    #[test]
    fn profile_invariant_under_congruence(q in small_form(12), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let moved = obfuscate(&mut rng, &q);
        prop_assert_eq!(q.profile(), moved.profile());
        prop_assert!(isometric(&q, &moved));
    }

    #[test]
    fn realize_round_trip(q in small_form(12)) {
        let r = realize_form(&q.profile()).unwrap();
        prop_assert!(isometric(&q, &r));
        prop_assert!(oracle_isometric(&q, &r));
    }

    #[test]
    fn isometry_is_an_equivalence(a in small_form(4), b in small_form(4), c in small_form(4)) {
        prop_assert!(isometric(&a, &a));
        prop_assert_eq!(isometric(&a, &b), isometric(&b, &a));
        if isometric(&a, &b) && isometric(&b, &c) {
            prop_assert!(isometric(&a, &c));
        }
        prop_assert_eq!(isometric(&a, &b), oracle_isometric(&a, &b));
    }

    #[test]
    fn witt_index_laws(q in small_form(8)) {
        let h = QuadraticForm::hyperbolic(1).unwrap();
        prop_assert_eq!(q.orth_sum(&h).witt_index(), q.witt_index() + 1);
        let neg = q.scale(&rat(-1)).unwrap();
        prop_assert_eq!(q.orth_sum(&neg).witt_index(), q.dim());
        prop_assert!(2 * q.witt_index() <= q.dim());
    }

    #[test]
    fn split_hyperbolic_matches_direct(q in small_form(8)) {
        let h = QuadraticForm::hyperbolic(1).unwrap();
        let bigger = q.orth_sum(&h);
        prop_assert_eq!(bigger.profile().split_hyperbolic(), Some(q.profile()));
    }

    #[test]
    fn norm_form_tensor_lies_in_i3(d in entry(), psi in disc_one_six()) {
        let q = QuadraticForm::norm_form(&sc(d)).tensor(&psi);
        prop_assert!(q.in_i3());
        prop_assert_eq!(q.witt_index() % 2, 0);
        prop_assert!(k_hyperbolic_test(&q, &sc(d)).unwrap().holds());
    }

    #[test]
    fn clifford_profile_is_a_brauer_class(q in small_form(10)) {
        // pad to even dimension, then fix d± so the form lies in I²
        let mut q = q;
        if q.dim() % 2 == 1 {
            q = q.orth_sum(&form(&[1]));
        }
        let disc = q.signed_discriminant();
        let fix = QuadraticForm::new(vec![rat(1), disc.neg().to_rational()]).unwrap();
        let q2 = q.orth_sum(&fix);
        prop_assert!(q2.signed_discriminant().is_one());
        prop_assert_eq!(q2.profile().clifford_support().len() % 2, 0);
    }

    #[test]
    fn split_by_iff_field_embeds(a in entry(), b in entry(), d in entry()) {
        // Q(√d) splits (a, b) iff it embeds as pure quaternions of square d,
        // i.e. iff ⟨a, b, -ab⟩ represents d
        let dc = sc(d);
        prop_assume!(!dc.is_one());
        let class = BrauerClass2::symbol(sc(a), sc(b));
        let ab = sc(a).mul(&sc(b));
        let q = QuadraticForm::new(vec![rat(a), rat(b), ab.neg().to_rational(), dc.neg().to_rational()]).unwrap();
        prop_assert_eq!(class.is_split_by(&dc), q.witt_index() >= 1);
    }

    #[test]
    fn brauer_group_laws(a in entry(), b in entry(), c in entry(), e in entry()) {
        let x = BrauerClass2::symbol(sc(a), sc(b));
        let y = BrauerClass2::symbol(sc(c), sc(e));
        prop_assert!(x.add(&x).is_trivial());
        prop_assert_eq!(x.add(&y), y.add(&x));
        prop_assert!(x.equal_mod(&x.add(&y), &y));
        prop_assert_eq!(x.support().len() % 2, 0);
        prop_assert_eq!(x.index_bound(), if x.is_trivial() { 1 } else { 2 });
    }

    #[test]
    fn extension_with_delta_has_trivial_invariants(seed in any::<u64>(), half in 1usize..=3) {
        let u = gen_descent(seed, 2 * half).unwrap();
        let beta = discriminant_algebra(&u).unwrap();
        let x = orthogonal_extension(&u, &beta).unwrap();
        let inv = invariants_of_extension(&x).unwrap();
        prop_assert!(inv.discriminant.is_one());
        prop_assert!(inv.clifford.equal_mod(&BrauerClass2::trivial(), &inv.brauer));
    }

    #[test]
    fn split_model_consistency(d in entry(), psi in small_form(6)) {
        prop_assume!(psi.dim() % 2 == 0);
        let x = OrthogonalExtensionDesc::new(sc(d), psi.clone(), SquareClass::one());
        let inv = invariants_of_extension(&x).unwrap();
        let q = x.companion_form();
        prop_assert_eq!(&inv.discriminant, &q.signed_discriminant());
        prop_assert_eq!(inv.discriminant.rep().clone(), oracle_signed_disc(&q).into());
        let clifford = q.profile().clifford_support();
        prop_assert_eq!(inv.clifford.support(), &clifford);
    }

    #[test]
    fn e3_formula_split_case(d in 1i64..=30, psi in disc_one_six()) {
        let x = OrthogonalExtensionDesc::new(sc(-d), psi, SquareClass::one());
        prop_assert_eq!(e3_of_extension(&x).unwrap().value, x.companion_form().e3_real().unwrap());
    }

    #[test]
    fn split_descent_is_hyperbolic(psi in small_form(6)) {
        prop_assume!(psi.dim() % 2 == 0);
        let u = UnitaryDescent::new(SquareClass::one(), psi);
        let x = orthogonal_extension(&u, &BrauerClass2::trivial()).unwrap();
        prop_assert!(x.companion_form().is_hyperbolic());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn decompose_is_sound(seed in any::<u64>()) {
        let q = gen_i3_12(seed, 10).unwrap();
        let r = decompose12(&q).unwrap();
        prop_assert!(oracle_isometric(&q, &r.product()));
        prop_assert_eq!(oracle_signed_disc(&r.psi), 1);
        prop_assert!(discriminant_algebra(&r.descent()).unwrap().is_trivial());
        prop_assert_eq!(q.witt_index() % 2, 0);
    }

    #[test]
    fn crossed_product_small(seed in any::<u64>(), m in 1usize..=3, symplectic in any::<bool>()) {
        let kind = if symplectic && m % 2 == 0 { InvolutionType::Symplectic } else { InvolutionType::Orthogonal };
        let u = gen_descent(seed, m).unwrap();
        let alg = build_extension(&u, kind, &SquareClass::one()).unwrap();
        let r = verify_extension(&alg);
        prop_assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn hyperbolic_witness_matches_trace_form(seed in any::<u64>(), m in 1usize..=3) {
        let u = gen_descent(seed, 2 * m).unwrap();
        let alg = build_extension(&u, InvolutionType::Orthogonal, &SquareClass::one()).unwrap();
        let trace = QuadraticForm::norm_form(&u.d).tensor(&u.psi0);
        match hyperbolicity_witness(&alg) {
            Ok(Some(_)) => prop_assert!(trace.is_hyperbolic() || u.d.is_one()),
            Ok(None) => prop_assert!(!trace.is_hyperbolic()),
            Err(e) => prop_assert_eq!(e.code(), "SearchExhaustedError"),
        }
    }
}
