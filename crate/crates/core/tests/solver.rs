use proptest::prelude::*;
use thirdbvp::conditions::DEFAULT_SAMPLES;
use thirdbvp::scalar::sup_norm;
use thirdbvp::{
    corpus, kernel_catalog, verdict, Boundary, CaseId, Grid32, Grid64, ProblemSpec, QuadratureRule, Solver,
};

fn grid() -> Grid64 {
    Grid64::new(100).unwrap()
}

#[test]
fn verified_hypotheses_bound_and_order_the_solution() {
    for entry in corpus::all::<f64>() {
        let m = entry.problem.bound().unwrap();
        let kernel = kernel_catalog::<f64>(entry.case);
        let v = verdict(&entry.problem, &kernel, m, DEFAULT_SAMPLES).unwrap();
        assert!(v.theorem3_holds, "{}", entry.name);
        let sol = Solver::default().solve(&entry.problem, &grid()).unwrap();
        let s = &sol.state;
        let env = v.envelope;
        assert!(sup_norm(&s.u) <= env[0] + 1e-6, "{}", entry.name);
        assert!(sup_norm(&s.y) <= env[1] + 1e-6, "{}", entry.name);
        assert!(sup_norm(&s.z) <= env[2] + 1e-6, "{}", entry.name);
        for r in sol.report.diff_ratios() {
            assert!(r <= v.q + 0.05, "{}: ratio {r} vs q {}", entry.name, v.q);
        }
        if v.theorem4_holds == Some(true) {
            let sg = f64::from(v.signs.sigma_g().unwrap());
            let prod = f64::from(v.signs.product().unwrap());
            assert!(s.phi.iter().all(|p| sg * p >= -1e-8), "{}", entry.name);
            assert!(s.u.iter().all(|u| *u >= -1e-8), "{}", entry.name);
            assert!(s.y.iter().all(|y| prod * y >= -1e-8), "{}", entry.name);
        }
    }
}

#[test]
fn report_flags_agree_with_the_envelope() {
    for entry in corpus::all::<f64>() {
        let sol = Solver::default().solve(&entry.problem, &grid()).unwrap();
        assert_eq!(sol.report.bound_checks.map(|b| b.all()), Some(true), "{}", entry.name);
        assert!(sol.report.converged);
        assert!(sol.report.final_diff <= 1e-6);
        assert_eq!(sol.iterates.len(), sol.report.iterations + 1);
    }
}

#[test]
fn halving_the_step_quarters_the_error() {
    for name in ["dqa1", "dqa"] {
        let entry = corpus::get_problem::<f64>(name).unwrap();
        let dev = |n| {
            Solver::default()
                .solve(&entry.problem, &Grid64::new(n).unwrap())
                .unwrap()
                .report
                .max_dev_exact
                .unwrap()
        };
        let ratio = dev(50) / dev(100);
        assert!((3.6..=4.4).contains(&ratio), "{name}: {ratio}");
    }
}

#[test]
fn single_sweep_rule_is_first_order() {
    let entry = corpus::get_problem::<f64>("dqa1").unwrap();
    let solver = Solver::default().with_rule(QuadratureRule::SingleSweep);
    let dev = |n| solver.solve(&entry.problem, &Grid64::new(n).unwrap()).unwrap().report.max_dev_exact.unwrap();
    let ratio = dev(50) / dev(100);
    assert!((1.6..=2.4).contains(&ratio), "{ratio}");
}

#[test]
fn single_and_double_precision_agree() {
    let e64 = corpus::get_problem::<f64>("feng-liu-4.2").unwrap();
    let e32 = corpus::get_problem::<f32>("feng-liu-4.2").unwrap();
    let s64 = Solver::default().solve(&e64.problem, &grid()).unwrap();
    let s32 = Solver::new(1e-5f32, 100).solve(&e32.problem, &Grid32::new(100).unwrap()).unwrap();
    for (a, b) in s64.state.u.iter().zip(&s32.state.u) {
        assert!((a - f64::from(*b)).abs() < 1e-5);
    }
}

#[test]
fn non_contractive_problem_is_not_accepted() {
    let p = ProblemSpec::<f64>::new(|_, _, _, z| 2.0 * z + 1.0, Boundary::Case(CaseId::Case2))
        .with_bound(1.0)
        .unwrap()
        .with_lipschitz([0.0, 0.0, 2.0], f64::INFINITY)
        .unwrap();
    let v = verdict(&p, &kernel_catalog(CaseId::Case2), 1.0, 2000).unwrap();
    assert!(!v.theorem3_holds);
    assert!(v.q >= 1.0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // u''' = a u + b with small a stays inside the contraction regime; the
    // converged iterate must satisfy the boundary conditions and stay bounded
    // by the kernel envelope of sup |phi|.
    #[test]
    fn linear_problems_converge_inside_their_envelope(a in -0.5..0.5f64, b in -2.0..2.0f64, case in 1u8..=4) {
        let case = CaseId::from_number(case).unwrap();
        let p = ProblemSpec::<f64>::new(move |_, x, _, _| a * x + b, Boundary::Case(case));
        let sol = Solver::default().solve(&p, &grid()).unwrap();
        let norms = kernel_catalog::<f64>(case).norms();
        let phi = sup_norm(&sol.state.phi);
        prop_assert!(sup_norm(&sol.state.u) <= norms.m0 * phi + 1e-9);
        prop_assert!(sup_norm(&sol.state.y) <= norms.m1 * phi + 1e-9);
        let r = sol.report.residual.unwrap();
        prop_assert!(r.boundary_max() <= 1e-3);
    }
}
