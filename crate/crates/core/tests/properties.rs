//! Property tests: classification invariants, transformation soundness,
//! Weyl orbits, expression round trips and integrator behaviour.

mod common;

use painleve::backlund::{pii_candidate, verify_symbolic, weyl_apply, weyl_orbit_member, WeylLetter, WeylWord};
use painleve::classify::{classify, SolutionCount, Verdict};
use painleve::diffpoly::{DiffRatFunc, Var};
use painleve::equations::{Family, PainleveEquation, Params};
use painleve::numeric::{integrate, InitialCondition, IntegrateOptions, Status};
use painleve::parse::parse_expr;
use painleve::scalars::{rational, ExactScalar, Rational, Surd};
use painleve::sweep::sweep_params;
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn q(n: i64, d: i64) -> ExactScalar {
    ExactScalar::from_rational(rational(n, d))
}

fn small_rational() -> impl Strategy<Value = ExactScalar> {
    (-24i64..=24, prop::sample::select(vec![1i64, 2, 3, 4, 6])).prop_map(|(n, d)| q(n, d))
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    prop_oneof![
        4 => small_rational(),
        1 => prop::sample::select(vec!["@a", "@b", "@c"]).prop_map(|s| s.parse().unwrap()),
        1 => (prop::sample::select(vec!["@a", "@b"]), -3i64..=3)
            .prop_map(|(s, k)| &s.parse::<ExactScalar>().unwrap() + &q(k, 2)),
    ]
}

fn family() -> impl Strategy<Value = Family> {
    prop::sample::select(vec![Family::II, Family::III2p, Family::IV, Family::V3p, Family::VI])
}

fn params_for(family: Family, values: &[ExactScalar]) -> Params {
    sweep_params(family)
        .into_iter()
        .zip(values.iter().cloned())
        .map(|(n, v)| (n.to_string(), v))
        .collect()
}

fn word() -> impl Strategy<Value = WeylWord> {
    prop::collection::vec(prop::sample::select(WeylLetter::ALL.to_vec()), 0..10).prop_map(WeylWord)
}

/// `P_II` oracle from integer arithmetic on `k` with `alpha = k/2`.
#[test]
fn pii_table_by_parity() {
    for k in -20i64..=20 {
        let r = classify(Family::II, &params_for(Family::II, &[q(k, 2)])).unwrap();
        let odd = k.rem_euclid(2) == 1;
        assert_eq!(r.strongly_minimal, if odd { Verdict::No } else { Verdict::Yes }, "k = {}", k);
        let count = if odd { SolutionCount::Zero } else { SolutionCount::One };
        assert_eq!(r.algebraic_solutions, count, "k = {}", k);
        assert_eq!(r.irreducible, Verdict::No, "k = {}", k);
    }
}

#[test]
fn mutually_generic_parameters_dominate() {
    let syms: Vec<ExactScalar> = ["@p", "@q", "@r", "@s"].iter().map(|s| s.parse().unwrap()).collect();
    for family in [Family::II, Family::III2p, Family::IV, Family::V3p, Family::VI] {
        let r = classify(family, &params_for(family, &syms)).unwrap();
        assert_eq!(r.strongly_minimal, Verdict::Yes, "{}", family);
        assert_eq!(r.algebraic_solutions, SolutionCount::Zero, "{}", family);
        assert_eq!(r.irreducible, Verdict::Yes, "{}", family);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn pii_verdicts_invariant_under_weyl_action(alpha in small_rational(), w in word()) {
        let beta = weyl_apply(&w, &alpha);
        let a = classify(Family::II, &params_for(Family::II, &[alpha])).unwrap();
        let b = classify(Family::II, &params_for(Family::II, &[beta])).unwrap();
        prop_assert_eq!(a.strongly_minimal, b.strongly_minimal);
        prop_assert_eq!(a.algebraic_solutions.exists(), b.algebraic_solutions.exists());
    }

    #[test]
    fn irreducible_iff_strongly_minimal_without_algebraic_solutions(
        family in family(),
        values in prop::collection::vec(scalar(), 4),
    ) {
        let Ok(r) = classify(family, &params_for(family, &values)) else { return Ok(()) };
        let expected = match (r.strongly_minimal, r.algebraic_solutions.exists()) {
            (Verdict::Yes, Verdict::No) => Verdict::Yes,
            (Verdict::No, _) | (_, Verdict::Yes) => Verdict::No,
            _ => Verdict::Unknown,
        };
        prop_assert_eq!(r.irreducible, expected);
        prop_assert!(!r.witnesses.is_empty());
    }

    #[test]
    fn pii_irreducible_off_the_half_lattice(alpha in small_rational()) {
        let off = !alpha.scale(&rational(2, 1)).is_integer();
        let r = classify(Family::II, &params_for(Family::II, &[alpha])).unwrap();
        prop_assert_eq!(r.irreducible, if off { Verdict::Yes } else { Verdict::No });
    }

    #[test]
    fn orbit_round_trip(alpha in scalar(), w in word()) {
        let beta = weyl_apply(&w, &alpha);
        let found = weyl_orbit_member(&alpha, &beta);
        prop_assert!(found.is_some(), "{} -> {} via {}", alpha, beta, w);
        prop_assert_eq!(weyl_apply(&found.unwrap(), &alpha), beta);
    }

    #[test]
    fn orbit_membership_matches_integrality(a in small_rational(), b in small_rational()) {
        let member = (&b - &a).is_integer() || (&b + &a).is_integer();
        prop_assert_eq!(weyl_orbit_member(&a, &b).is_some(), member);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// `w = k z` sends `P_II(alpha)` to `P_II(beta)` exactly when `k^3 = k`
    /// and `beta = k alpha`.
    #[test]
    fn scaling_maps_refuted_unless_exact(
        k in (-3i64..=3, 1i64..=2).prop_map(|(n, d)| rational(n, d)),
        alpha in small_rational(),
        beta in small_rational(),
    ) {
        let source = PainleveEquation::with_values(Family::II, std::slice::from_ref(&alpha)).unwrap();
        let target = PainleveEquation::with_values(Family::II, std::slice::from_ref(&beta)).unwrap();
        let map = DiffRatFunc::rational(k.clone()) * DiffRatFunc::dep("z", 0);
        let t = painleve::backlund::BacklundTransform::new("scale", source, target, map).unwrap();
        let outcome = verify_symbolic(&t).unwrap();
        let cube: Rational = &k * &k * &k;
        let exact = cube == k && beta == alpha.scale(&k);
        prop_assert_eq!(outcome.is_verified(), exact);
        if let Some(r) = outcome.residual() {
            let points = [(7, 3, 5, 11, -13, 17), (-2, 5, 9, 4, 1, 6), (11, 2, -3, 7, 8, 3)];
            let nonzero = points.iter().any(|&(a, b, c, d, e, f)| {
                let at = |v: &Var| match (v, v.order_of("z")) {
                    (Var::T, _) => Some(Surd::from_rational(rational(a, b))),
                    (_, Some(0)) => Some(Surd::from_rational(rational(c, d))),
                    (_, Some(1)) => Some(Surd::from_rational(rational(e, f))),
                    _ => None,
                };
                r.eval(&at).is_some_and(|x| !x.is_zero())
            });
            prop_assert!(nonzero, "residual {} vanishes at every test point", r);
        }
    }

    #[test]
    fn constant_shifts_never_verify(c in (1i64..=9, 1i64..=4, any::<bool>()).prop_map(|(n, d, s)| rational(if s { n } else { -n }, d))) {
        let map = DiffRatFunc::dep("z", 0) + DiffRatFunc::rational(c);
        let t = pii_candidate("shift", &"@a".parse().unwrap(), 1, map).unwrap();
        prop_assert!(!verify_symbolic(&t).unwrap().is_verified());
    }

    #[test]
    fn expressions_survive_printing_and_parsing(seed in any::<u64>()) {
        let mut rng = StdRng::seed_from_u64(seed);
        let a = common::random_expr(&mut rng, 3, 2);
        let back = parse_expr(&a.to_string()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn scalars_survive_printing_and_parsing(x in scalar(), y in small_rational()) {
        let s = &x + &y.principal_sqrt().unwrap_or_else(|_| ExactScalar::zero());
        prop_assert_eq!(s.to_string().parse::<ExactScalar>().unwrap(), s);
    }

    #[test]
    fn time_reversal(y0 in -0.5f64..0.5, dy0 in -0.5f64..0.5, which in 0usize..3) {
        let eq = match which {
            0 => PainleveEquation::with_values(Family::I, &[]).unwrap(),
            1 => PainleveEquation::with_values(Family::II, &[q(0, 1)]).unwrap(),
            _ => PainleveEquation::with_values(Family::II, &[q(-2, 3)]).unwrap(),
        };
        let rtol = 1e-10;
        let opts = IntegrateOptions::tolerances(rtol, 1e-12);
        let fwd = integrate(&eq, InitialCondition::new(0.0, y0, dy0), 0.5, &opts).unwrap();
        prop_assert_eq!(fwd.status, Status::Completed);
        let end = fwd.last().unwrap();
        let back = integrate(&eq, InitialCondition::new(end.t, end.state[0], end.state[1]), 0.0, &opts).unwrap();
        let start = back.last().unwrap();
        for (got, want) in start.state.iter().zip([y0, dy0]) {
            prop_assert!((got - want).abs() <= 10.0 * rtol * want.abs().max(1.0), "{} vs {}", got, want);
        }
    }
}

fn endpoint(eq: &PainleveEquation, tol: f64) -> f64 {
    integrate(eq, InitialCondition::new(0.0, 0.1, 0.2), 1.0, &IntegrateOptions::tolerances(tol, tol * 1e-2))
        .unwrap()
        .last()
        .unwrap()
        .state[0]
}

#[test]
fn error_shrinks_with_tolerance() {
    let p1 = PainleveEquation::with_values(Family::I, &[]).unwrap();
    let reference = endpoint(&p1, 1e-13);
    let tols: Vec<f64> = (0..10).map(|k| 1e-5 / 2f64.powi(k)).collect();
    let errs: Vec<f64> = tols.iter().map(|&t| (endpoint(&p1, t) - reference).abs()).collect();
    for pair in errs.windows(2) {
        assert!(pair[1] < pair[0], "halving the tolerance did not help: {:?}", errs);
    }
    // least-squares slope of log(err) against log(tol)
    let xs: Vec<f64> = tols.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = errs.iter().map(|e| e.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let slope = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>();
    assert!((0.8..=1.6).contains(&slope), "slope {} from {:?}", slope, errs);
}

#[test]
fn pole_estimates_are_threshold_stable() {
    let cases = [
        (PainleveEquation::with_values(Family::I, &[]).unwrap(), 1.0, 2),
        (PainleveEquation::with_values(Family::II, &[q(0, 1)]).unwrap(), 1.0, 1),
        (PainleveEquation::with_values(Family::II, &[q(1, 3)]).unwrap(), -0.7, 1),
    ];
    for (eq, y0, expected_order) in cases {
        let run = |threshold: f64| {
            let opts = IntegrateOptions::default().with_threshold(threshold);
            integrate(&eq, InitialCondition::new(0.0, y0, 0.3), 10.0, &opts).unwrap().status
        };
        let (Status::PoleDetected { t_est: a, order: oa }, Status::PoleDetected { t_est: b, order: ob }) = (run(1e8), run(1e9))
        else {
            panic!("{}: no pole found", eq)
        };
        assert_eq!((oa, ob), (expected_order, expected_order), "{}", eq);
        assert!((a - b).abs() < 1e-6, "{}: {} vs {}", eq, a, b);
    }
}
