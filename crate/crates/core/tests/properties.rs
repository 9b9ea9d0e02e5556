use std::collections::BTreeMap;

use jackpfq_core::jack::{binom_general, jack_in_form, jack_j, pieri_phi};
use jackpfq_core::operators::{apply_box, apply_e, mul_e1};
use jackpfq_core::partitions::{covers_of, hooks, partitions_up_to, rho};
use jackpfq_core::poly::Poly;
use jackpfq_core::series::build_pfq;
use jackpfq_core::solver::{solve_theorem_b, solve_theorem_c};
use jackpfq_core::sympoly::hall_inner;
use jackpfq_core::{JackForm, OpExpr, ParamSet, Partition, Rational, Result, SymPoly};
use proptest::prelude::*;

fn partition(max_size: u32) -> impl Strategy<Value = Partition> {
    prop::collection::vec(1u32..=4, 0..=4)
        .prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            Partition::new(v).expect("decreasing positive parts")
        })
        .prop_filter("size bound", move |p| p.size() <= max_size)
}

fn alpha() -> impl Strategy<Value = Rational> {
    (1i64..=12, 1i64..=12).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn param() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(p, q)| Rational::new(p, q).unwrap())
}

fn params(max_p: usize, max_q: usize, max_n: usize) -> impl Strategy<Value = ParamSet> {
    (
        alpha(),
        prop::collection::vec(param(), 0..=max_p),
        prop::collection::vec(param(), 0..=max_q),
        1..=max_n,
    )
        .prop_map(|(a, up, lo, n)| ParamSet::new(a, up, lo, n).unwrap())
}

fn sympoly(n: usize) -> impl Strategy<Value = SymPoly> {
    prop::collection::vec((partition(4), param()), 0..5).prop_map(move |terms| {
        let mut f = SymPoly::zero(n);
        for (lambda, c) in terms {
            if lambda.len() <= n {
                f.add_term(lambda, c);
            }
        }
        f
    })
}

/// Accepts draws that hit a pole or a degenerate point; everything else must succeed.
fn generic<T>(r: Result<T>) -> std::result::Result<T, TestCaseError> {
    match r {
        Ok(v) => Ok(v),
        Err(e) if e.is_retryable() => Err(TestCaseError::reject(e.to_string())),
        Err(e) => Err(TestCaseError::fail(e.to_string())),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn conjugation_is_an_involution(lambda in partition(16)) {
        let conj = lambda.conjugate();
        prop_assert_eq!(conj.size(), lambda.size());
        prop_assert_eq!(conj.len() as u32, lambda.part(1));
        prop_assert_eq!(conj.conjugate(), lambda.clone());
        prop_assert_eq!(lambda.boxes().count() as u32, lambda.size());
    }

    #[test]
    fn covers_add_exactly_one_box(mu in partition(8), n in 1usize..=5) {
        prop_assume!(mu.len() <= n);
        for lambda in covers_of(&mu, n) {
            prop_assert_eq!(lambda.size(), mu.size() + 1);
            prop_assert!(lambda.len() <= n);
            prop_assert!(lambda.padded(n).iter().zip(mu.padded(n)).all(|(l, m)| *l >= m));
        }
    }

    #[test]
    fn jack_is_a_box_eigenfunction(lambda in partition(5), a in alpha()) {
        let n = lambda.len().max(1);
        let j = jack_j(&lambda, n, &a).unwrap();
        prop_assert_eq!(apply_box(&j, &a), j.scale(&rho(&lambda, &a)));
        let d = lambda.size();
        let column = Partition::column(d);
        if d as usize <= n {
            prop_assert_eq!(j.coeff(&column), Rational::factorial(d));
        }
    }

    #[test]
    fn jacks_are_orthogonal(l1 in partition(4), l2 in partition(4), a in alpha()) {
        prop_assume!(l1.size() == l2.size());
        let n = l1.size().max(1) as usize;
        let j1 = jack_j(&l1, n, &a).unwrap();
        let j2 = jack_j(&l2, n, &a).unwrap();
        let expected = if l1 == l2 { hooks(&l1, &a).j } else { Rational::zero() };
        prop_assert_eq!(hall_inner(&j1, &j2, &a).unwrap(), expected);
    }

    #[test]
    fn pieri_expansion_of_e1_times_jack(mu in partition(4), a in alpha(), n in 1usize..=3) {
        prop_assume!(mu.len() <= n);
        let lhs = mul_e1(&jack_j(&mu, n, &a).unwrap());
        let mut rhs = SymPoly::zero(n);
        for lambda in covers_of(&mu, n) {
            let phi = pieri_phi(&lambda, &mu, &a, n).unwrap();
            rhs.add_assign_scaled(&jack_j(&lambda, n, &a).unwrap(), &phi).unwrap();
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_expands_in_binomials(lambda in partition(4), a in alpha(), n in 1usize..=3, t in param()) {
        prop_assume!(lambda.len() <= n);
        let omega = jack_in_form(&lambda, n, &a, JackForm::Omega).unwrap();
        let shifted = Poly::from_sym(&omega).translate(&t).to_sym();
        let mut expected = SymPoly::zero(n);
        for mu in partitions_up_to(lambda.size(), n) {
            let b = binom_general(&lambda, &mu, &a).unwrap();
            if !b.is_zero() {
                let scale = b * t.pow((lambda.size() - mu.size()) as i32);
                expected.add_assign_scaled(&jack_in_form(&mu, n, &a, JackForm::Omega).unwrap(), &scale).unwrap();
            }
        }
        prop_assert_eq!(shifted, expected);
    }

    #[test]
    fn commutator_of_e1_and_multiplication_is_n(f in sympoly(3), a in alpha()) {
        let op = OpExpr::parse("[E1, e1]").unwrap();
        prop_assert_eq!(op.apply(&f, &a).unwrap(), f.scale(&Rational::from(3usize)));
        let direct = apply_e(1, &mul_e1(&f)).unwrap().sub(&mul_e1(&apply_e(1, &f).unwrap())).unwrap();
        prop_assert_eq!(direct, f.scale(&Rational::from(3usize)));
    }

    #[test]
    fn printed_operators_parse_back(src in prop::sample::select(vec![
        "E1", "box", "2*e1", "[box, E1]", "ad(box, e1)^2", "E2 + -1/3*box", "(E1 + e1)^2",
    ]), f in sympoly(2), a in alpha()) {
        let op = OpExpr::parse(src).unwrap();
        let again = OpExpr::parse(&op.to_string()).unwrap();
        prop_assert_eq!(op.apply(&f, &a).unwrap(), again.apply(&f, &a).unwrap());
    }

    #[test]
    fn series_restrict_to_fewer_variables(p in params(2, 2, 3), maxdeg in 0u32..=3) {
        let series = generic(build_pfq(&p, maxdeg))?;
        let full = series.to_sympoly(p.n).unwrap();
        for m in 1..=p.n {
            let small = generic(build_pfq(&p.with_n(m), maxdeg))?;
            prop_assert_eq!(full.restrict(m), small.to_sympoly(m).unwrap());
        }
    }

    #[test]
    fn raising_solver_matches_coefficients(p in params(2, 2, 2)) {
        let oracle = generic(build_pfq(&p, 3))?;
        let solved = generic(solve_theorem_c(&p, 3))?;
        prop_assert_eq!(solved.coeffs, oracle.coeffs);
    }

    #[test]
    fn lowering_solver_matches_coefficients(p in params(2, 2, 3)) {
        let oracle = generic(build_pfq(&p, 3))?;
        let solved = generic(solve_theorem_b(&p, 3))?;
        prop_assert_eq!(solved.series.coeffs, oracle.coeffs);
        prop_assert!(solved.steps.iter().all(|s| s.new_unknowns < 2 || s.determinant.as_ref().is_some_and(|d| !d.is_zero())));
    }
}

#[test]
fn empty_partition_has_unit_jack() {
    let a = Rational::new(3, 2).unwrap();
    let j = jack_j(&Partition::empty(), 2, &a).unwrap();
    let mut one = BTreeMap::new();
    one.insert(Partition::empty(), Rational::one());
    assert_eq!(j.terms(), &one);
}
