//! Property tests for arithmetic, linear algebra, formats and module
//! identities.

mod common;

use std::sync::Arc;

use grfrob::constructions::{group_algebra, random_graded_algebra, RandomLimits};
use grfrob::format::{parse_algebra, render_algebra};
use grfrob::frobenius::{is_sigma_graded_frobenius, Method};
use grfrob::linalg::{self, generic_invertible, InvertibilityOutcome};
use grfrob::module::{coinduce, graded_hom_basis, graded_iso, GradedModule, IsoOutcome, Side};
use grfrob::{Budget, Field, FiniteGroup, GradedAlgebra, Matrix, PrimeField, Rationals, Scalar};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(n: i64, d: i64) -> <Rationals as Field>::Elem {
    Rationals.from_i64(n) / Rationals.from_i64(d)
}

fn fp(p: u32, n: i64) -> <PrimeField as Field>::Elem {
    PrimeField::new(p).unwrap().from_i64(n)
}

fn field_axioms<E: Scalar>(a: E, b: E, c: E, zero: E, one: E) {
    assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
    assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
    assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
    assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
    assert_eq!(
        a.clone() * (b.clone() + c.clone()),
        a.clone() * b.clone() + a.clone() * c.clone()
    );
    assert_eq!(a.clone() + zero.clone(), a);
    assert_eq!(a.clone() * one.clone(), a);
    assert_eq!(a.clone() + (-a.clone()), zero);
    assert_eq!(a.clone() - b.clone(), a.clone() + (-b.clone()));
    match a.inverse() {
        Some(inv) => assert_eq!(a * inv, one),
        None => assert!(a.is_zero()),
    }
}

fn random_matrix<F: Field>(field: &F, seed: u64, r: usize, c: usize, sparsity: u32) -> Matrix<F::Elem> {
    use rand::Rng;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let data = (0..r * c)
        .map(|_| {
            if rng.gen_ratio(sparsity, 10) {
                field.zero()
            } else {
                field.sample(&mut rng, 3)
            }
        })
        .collect();
    Matrix::from_vec(r, c, data).unwrap()
}

fn random_algebra<F: Field>(field: &F, seed: u64) -> GradedAlgebra<F> {
    random_graded_algebra(
        field,
        seed,
        RandomLimits {
            max_dim: 6,
            max_group_order: 6,
        },
    )
    .unwrap()
    .1
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10_000))]

    #[test]
    fn rational_field_axioms(a in -50i64..50, b in 1i64..20, c in -50i64..50, d in 1i64..20, e in -50i64..50, f in 1i64..20) {
        field_axioms(q(a, b), q(c, d), q(e, f), Rationals.zero(), Rationals.one());
    }

    #[test]
    fn prime_field_axioms(p in prop::sample::select(vec![2u32, 3, 5, 7, 101, 65_521]), a: i64, b: i64, c: i64) {
        let f = PrimeField::new(p).unwrap();
        field_axioms(fp(p, a), fp(p, b), fp(p, c), f.zero(), f.one());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_text_round_trips(n in -1000i64..1000, d in 1i64..1000, p in prop::sample::select(vec![5u32, 7, 13])) {
        let x = q(n, d);
        prop_assert_eq!(Rationals.parse(&x.to_string()).unwrap(), x);
        let f = PrimeField::new(p).unwrap();
        let y = f.from_i64(n);
        prop_assert_eq!(f.parse(&y.to_string()).unwrap(), y);
    }

    #[test]
    fn rank_plus_nullity(seed: u64, r in 1usize..7, c in 1usize..7, sparse in 0u32..9) {
        let m = random_matrix(&Rationals, seed, r, c, sparse);
        let rank = linalg::rank(&Rationals, &m);
        let kernel = linalg::kernel_basis(&Rationals, &m);
        prop_assert_eq!(rank + kernel.len(), c);
        prop_assert_eq!(rank, common::rank(&Rationals, (0..r).map(|i| m.row(i).to_vec()).collect()));
        for v in &kernel {
            prop_assert!(m.mul_vec(&Rationals, v).unwrap().iter().all(Scalar::is_zero));
        }
        let f7 = PrimeField::new(7).unwrap();
        let m = random_matrix(&f7, seed, r, c, sparse);
        prop_assert_eq!(linalg::rank(&f7, &m) + linalg::kernel_basis(&f7, &m).len(), c);
    }

    #[test]
    fn determinant_matches_invertibility(seed: u64, n in 1usize..6, sparse in 0u32..8) {
        let m = random_matrix(&Rationals, seed, n, n, sparse);
        let det = linalg::determinant(&Rationals, &m).unwrap();
        let inv = linalg::inverse(&Rationals, &m);
        prop_assert_eq!(det.is_zero(), inv.is_none());
        if let Some(inv) = inv {
            prop_assert_eq!(m.mul(&Rationals, &inv).unwrap(), Matrix::identity(&Rationals, n));
        }
    }

    /// A span containing an invertible matrix is never certified singular.
    #[test]
    fn invertible_span_is_never_refuted(seed: u64, n in 1usize..6, extra in 0usize..3, p in prop::sample::select(vec![2u32, 3, 7])) {
        fn check<F: Field>(field: &F, seed: u64, n: usize, extra: usize) -> Result<(), TestCaseError> {
            let mut basis = vec![Matrix::identity(field, n)];
            for k in 0..extra {
                basis.push(random_matrix(field, seed.wrapping_add(k as u64), n, n, 5));
            }
            // hide the identity inside a change of basis
            if extra > 0 {
                let mixed = basis[0].add(&basis[1]).unwrap();
                basis[0] = mixed;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let out = generic_invertible(field, &basis, &Budget::default(), &mut rng).unwrap();
            match out.outcome {
                InvertibilityOutcome::WitnessFound { matrix, .. } => {
                    prop_assert!(!linalg::determinant(field, &matrix).unwrap().is_zero());
                }
                InvertibilityOutcome::CertifiedAbsent { reason } => {
                    return Err(TestCaseError::fail(format!("certified absent: {reason}")));
                }
                InvertibilityOutcome::ProbabilisticAbsent { .. } => {}
            }
            Ok(())
        }
        check(&Rationals, seed, n, extra)?;
        check(&PrimeField::new(p).unwrap(), seed, n, extra)?;
    }

    #[test]
    fn parse_inverts_render(seed in 0u64..10_000) {
        let a = random_algebra(&Rationals, seed);
        prop_assert_eq!(parse_algebra(&render_algebra(&a), &Rationals).unwrap(), a);
        let f7 = PrimeField::new(7).unwrap();
        let b = random_algebra(&f7, seed);
        prop_assert_eq!(parse_algebra(&render_algebra(&b), &f7).unwrap(), b);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdicts_are_deterministic(seed in 0u64..10_000, run_seed: u64) {
        let a = Arc::new(random_algebra(&Rationals, seed));
        for s in a.group().elements() {
            let v1 = is_sigma_graded_frobenius(&a, s, Method::All, &Budget::default(), &mut ChaCha8Rng::seed_from_u64(run_seed));
            let v2 = is_sigma_graded_frobenius(&a, s, Method::All, &Budget::default(), &mut ChaCha8Rng::seed_from_u64(run_seed));
            prop_assert_eq!(format!("{v1:?}"), format!("{v2:?}"));
        }
    }

    #[test]
    fn dual_and_suspension_identities(seed in 0u64..10_000) {
        let a = Arc::new(random_algebra(&PrimeField::new(7).unwrap(), seed));
        let g = a.group().clone();
        for side in [Side::Left, Side::Right] {
            let m = GradedModule::regular(&a, side);
            let dual = m.dual();
            prop_assert_eq!(dual.side(), side.opposite());
            // dim (M*)_g = dim M_{g^-1}
            let (dm, dd) = (m.component_dims(), dual.component_dims());
            for x in g.elements() {
                prop_assert_eq!(dd[x], dm[g.inv(x)]);
            }
            prop_assert_eq!(&dual.dual(), &m);
            for s in g.elements() {
                let (shift, back) = match side {
                    Side::Left => (m.suspend_left(s).unwrap(), dual.suspend_right(g.inv(s)).unwrap()),
                    Side::Right => (m.suspend_right(s).unwrap(), dual.suspend_left(g.inv(s)).unwrap()),
                };
                prop_assert_eq!(shift.dual(), back);
                prop_assert!(shift.validate().is_empty());
            }
        }
    }

    #[test]
    fn double_dual_is_isomorphic(seed in 0u64..10_000, s in 0usize..6) {
        let a = Arc::new(random_algebra(&Rationals, seed));
        let s = s % a.group().order();
        let m = GradedModule::regular(&a, Side::Left).suspend_left(s).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let iso = graded_iso(&m.dual().dual(), &m, &Budget::default(), &mut rng).unwrap();
        prop_assert!(matches!(iso, IsoOutcome::Isomorphic(_)));
    }

    /// Hom_gr(M, Coind N) and Hom_{A_e}(M_e, N) have equal dimension.
    #[test]
    fn coinduction_adjunction_dimensions(seed in 0u64..10_000, s in 0usize..6) {
        let a = Arc::new(random_algebra(&Rationals, seed));
        let g = a.group().clone();
        let s = s % g.order();
        let (ae, embedding) = a.identity_component();
        let ae = Arc::new(ae);
        let regular = GradedModule::regular(&a, Side::Left);
        let n = regular.component_module(g.neutral(), &ae, &embedding).unwrap();
        let coind = coinduce(&a, &n).unwrap();
        prop_assert!(coind.module.validate().is_empty());
        let m = regular.suspend_left(s).unwrap();
        let me = m.component_module(g.neutral(), &ae, &embedding).unwrap();
        let lhs = graded_hom_basis(&m, &coind.module).unwrap().len();
        let rhs = graded_hom_basis(&me, &n).unwrap().len();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn coinduction_over_the_cyclic_group_algebra() {
    let q = Rationals;
    let a = Arc::new(group_algebra(&q, Arc::new(FiniteGroup::cyclic(4).unwrap())).unwrap());
    let (ae, embedding) = a.identity_component();
    let ae = Arc::new(ae);
    let regular = GradedModule::regular(&a, Side::Left);
    for s in 0..4 {
        let n = regular
            .suspend_left(s)
            .unwrap()
            .component_module(0, &ae, &embedding)
            .unwrap();
        let c = coinduce(&a, &n).unwrap();
        // A_e = k, so Coind N = Hom_k(kZ4, N) with one map per degree
        assert_eq!(c.module.dim(), 4 * n.dim());
        assert_eq!(c.module.component_dims(), vec![1, 1, 1, 1]);
        assert!(c.module.validate().is_empty());
    }
}
