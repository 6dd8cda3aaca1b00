use maxclass_core::cochain::{d_adjoint, d_scalar};
use maxclass_core::linalg::{kernel_basis, solve_particular, SparseMatrix};
use maxclass_core::operators::{apply_d1, apply_dminus1};
use maxclass_core::rational::{q, q_frac};
use maxclass_core::{AdjointCochain, AlgebraSpec, Monomial, ScalarForm, Q};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = Q> {
    (prop_oneof![-9i64..=-1, 1i64..=9], 1i64..=5).prop_map(|(n, d)| q_frac(n, d))
}

fn monomial(min: u32, max: u32) -> impl Strategy<Value = Monomial> {
    proptest::collection::btree_set(min..=max, 1..=3).prop_map(|s| Monomial::new(s.into_iter().collect()).unwrap())
}

fn form(min: u32, max: u32) -> impl Strategy<Value = ScalarForm> {
    proptest::collection::vec((monomial(min, max), coeff()), 1..6).prop_map(|terms| {
        let mut f = ScalarForm::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    })
}

/// Forms of one fixed degree.
fn homogeneous_form(degree: usize) -> impl Strategy<Value = ScalarForm> {
    proptest::collection::vec((proptest::collection::btree_set(1u32..=12, degree), coeff()), 1..4).prop_map(|terms| {
        let mut f = ScalarForm::zero();
        for (s, c) in terms {
            f.add_term(Monomial::new(s.into_iter().collect()).unwrap(), c);
        }
        f
    })
}

fn adjoint(cap: u32) -> impl Strategy<Value = AdjointCochain> {
    proptest::collection::vec((1..=cap, monomial(1, 16), coeff()), 1..6).prop_map(|terms| {
        let mut x = AdjointCochain::zero();
        for (l, m, c) in terms {
            x.add_term(l, m, c);
        }
        x
    })
}

fn algebra() -> impl Strategy<Value = AlgebraSpec> {
    prop_oneof![
        Just(AlgebraSpec::M0),
        Just(AlgebraSpec::M2),
        Just(AlgebraSpec::L1),
        (6u32..14).prop_map(|n| AlgebraSpec::m0_quotient(n).unwrap()),
        (6u32..14).prop_map(|n| AlgebraSpec::m2_quotient(n).unwrap()),
    ]
}

fn restrict(alg: &AlgebraSpec, f: &ScalarForm) -> ScalarForm {
    f.filter(|m| m.indices().iter().all(|&i| alg.has_generator(i)))
}

fn sign(p: usize) -> Q {
    if p % 2 == 0 {
        q(1)
    } else {
        q(-1)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalar_d_squares_to_zero(alg in algebra(), f in form(1, 16)) {
        let f = restrict(&alg, &f);
        prop_assert!(d_scalar(&alg, &d_scalar(&alg, &f)).is_zero());
    }

    #[test]
    fn adjoint_d_squares_to_zero(alg in prop_oneof![Just(AlgebraSpec::M0), Just(AlgebraSpec::M2)], x in adjoint(30)) {
        let once = d_adjoint(&alg, &x, 30);
        prop_assert!(d_adjoint(&alg, &once, 30).is_zero());
    }

    #[test]
    fn d_is_an_antiderivation(alg in algebra(), p in 1usize..=2, a in homogeneous_form(1), b in homogeneous_form(2)) {
        let a = restrict(&alg, &if p == 1 { a } else { a.wedge(&ScalarForm::generator(13)) });
        let b = restrict(&alg, &b);
        let lhs = d_scalar(&alg, &a.wedge(&b));
        let mut rhs = d_scalar(&alg, &a).wedge(&b);
        rhs.add_scaled(&a.wedge(&d_scalar(&alg, &b)), &sign(p));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn d_minus_one_is_a_section(xi in form(2, 18)) {
        let pre = apply_dminus1(&xi).unwrap();
        prop_assert_eq!(apply_d1(&pre).unwrap(), xi.clone());
        prop_assert_eq!(d_scalar(&AlgebraSpec::M0, &pre), ScalarForm::generator(1).wedge(&xi));
    }

    #[test]
    fn wedge_is_graded_commutative(p in 1usize..=3, r in 1usize..=3, seed_a in homogeneous_form(3), seed_b in homogeneous_form(3)) {
        let cut = |f: &ScalarForm, n: usize| f.map_linear(|m| ScalarForm::wedge_of(&m.indices()[..n]));
        let (a, b) = (cut(&seed_a, p), cut(&seed_b, r));
        prop_assert_eq!(a.wedge(&b), b.wedge(&a) * &sign(p * r));
    }

    #[test]
    fn kernel_and_solutions_are_exact(rows in proptest::collection::vec(proptest::collection::vec(-3i64..=3, 5), 1..6), y in proptest::collection::vec(-4i64..=4, 5)) {
        let m = SparseMatrix::from_dense(&rows);
        let kernel = kernel_basis(&m);
        for v in &kernel {
            prop_assert!(m.mul_vec(v).is_empty());
        }
        prop_assert_eq!(m.rank() + kernel.len(), m.n_cols());
        let y = y.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(i, c)| (i, q(c))).collect();
        let b = m.mul_vec(&y);
        let x = solve_particular(&m, &b).expect("b is in the image");
        prop_assert_eq!(m.mul_vec(&x), b);
    }
}

#[test]
fn quotients_satisfy_jacobi() {
    for n in 4..=16 {
        assert!(AlgebraSpec::m0_quotient(n).unwrap().jacobi_check(n));
        assert!(AlgebraSpec::m2_quotient(n).unwrap().jacobi_check(n));
    }
    for alg in [AlgebraSpec::M0, AlgebraSpec::M2, AlgebraSpec::L1] {
        assert!(alg.jacobi_check(24));
    }
}
