use anyhow::{anyhow, Context, Result};
use thirdbvp::greens::max_gap;
use thirdbvp::{
    build_general_kernel, convergence_study, corpus, kernel_catalog, verdict, Grid64, KernelRow, Solver,
};

use crate::config::{BcFile, RunConfig};
use crate::output::{csv, emit, json, num};
use crate::report::{CheckReport, SolveReport};
use crate::{CheckArgs, ConvergenceArgs, KernelArgs, SolveArgs};

pub fn solve(args: SolveArgs) -> Result<()> {
    let file = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let flags = RunConfig {
        problem: args.problem,
        h: args.h,
        tol: args.tol,
        max_iter: args.max_iter,
        bound: args.bound,
        rule: args.rule.map(|r| r.to_string()),
        csv: args.csv,
        report: args.report,
    };
    let run = file.merged(flags).resolve()?;

    let entry = corpus::get_problem::<f64>(&run.problem)?;
    let mut problem = entry.problem;
    if let Some(m) = run.bound {
        problem = problem.with_bound(m)?;
    }
    let grid = Grid64::new(run.intervals)?;
    let solver = Solver::new(run.tol, run.max_iter).with_rule(run.rule);
    let sol = solver
        .solve(&problem, &grid)
        .with_context(|| format!("solving {}", run.problem))?;

    if let Some(path) = &run.csv {
        let s = &sol.state;
        let rows = grid.nodes().into_iter().enumerate().map(|(i, t)| {
            [t, s.u[i], s.y[i], s.z[i], s.phi[i]].map(num)
        });
        emit(Some(path), &csv("t,u,du,d2u,phi", rows))?;
    }
    let report = SolveReport::new(&run.problem, run.h, &sol.report);
    emit(run.report.as_deref(), &json(&report)?)
}

pub fn check(args: CheckArgs) -> Result<()> {
    let entry = corpus::get_problem::<f64>(&args.problem)?;
    let m = args
        .bound
        .or(entry.problem.bound())
        .ok_or_else(|| anyhow!("{} has no default bound; pass --M", args.problem))?;
    let kernel = entry.problem.kernel()?;
    let v = verdict(&entry.problem, &kernel, m, args.samples)
        .with_context(|| format!("checking {} with M={m}", args.problem))?;
    emit(args.out.as_deref(), &json(&CheckReport::new(&args.problem, args.samples, &v))?)
}

pub fn kernel(args: KernelArgs) -> Result<()> {
    let kernel = match (args.case, &args.bc_file) {
        (Some(case), _) => kernel_catalog::<f64>(case),
        (None, Some(path)) => {
            let bc = BcFile::load(path)?.conditions();
            build_general_kernel(bc).with_context(|| format!("constructing kernel from {}", path.display()))?
        }
        (None, None) => unreachable!("clap requires one source"),
    };
    let grid = Grid64::new(args.n)?;
    let nodes = grid.nodes();
    let rows = nodes.iter().flat_map(|&t| {
        let kernel = &kernel;
        nodes.iter().map(move |&s| {
            [
                num(t),
                num(s),
                num(kernel.eval(KernelRow::G, t, s)),
                num(kernel.eval(KernelRow::G1, t, s)),
                num(kernel.eval(KernelRow::G2, t, s)),
            ]
        })
    });
    emit(args.out.as_deref(), &csv("t,s,G,G1,G2", rows))?;

    if args.compare_general {
        let case = args.case.expect("clap enforces --case");
        let general = build_general_kernel(case.boundary_conditions::<f64>())
            .with_context(|| format!("constructing kernel for {case}"))?;
        eprintln!("max_gap={}", num(max_gap(&kernel, &general, &grid)));
    }
    Ok(())
}

pub fn convergence(args: ConvergenceArgs) -> Result<()> {
    let entry = corpus::get_problem::<f64>(&args.problem)?;
    let solver = Solver::new(args.tol, args.max_iter).with_rule(args.rule);
    let rows = convergence_study(&entry.problem, args.h0, args.levels, &solver)
        .with_context(|| format!("convergence study for {}", args.problem))?;
    let cells = rows.iter().map(|r| {
        [
            num(r.h),
            num(r.max_dev_exact),
            r.observed_order.map(num).unwrap_or_default(),
        ]
    });
    emit(args.out.as_deref(), &csv("h,max_dev_exact,observed_order", cells))
}

pub fn list() -> Result<()> {
    let rows = corpus::list_problems()
        .into_iter()
        .map(|(name, case, exact)| [name.to_string(), case.to_string(), exact.to_string()]);
    emit(None, &csv("name,case,has_exact", rows))
}
