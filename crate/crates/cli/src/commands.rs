use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use rfd_core::bench::{
    build_profile, default_alpha_grid, profile_value, run_campaign, write_profiles_csv, write_profiles_svg,
    NamedSolver, ProfileTable,
};
use rfd_core::problems::{self, ProblemInstance, ProblemSuite};
use rfd_core::rng::derive_seed;
use rfd_core::solver::{read_trace_csv, write_trace_csv};
use rfd_core::{run, Branch, Error, RunTrace};

use crate::output::{write_atomic, write_text};
use crate::settings::{config_err, Settings, Suite};

/// Errors caused by the request itself become exit status 2.
fn classify(e: Error) -> anyhow::Error {
    match e {
        Error::InvalidConfig(_) | Error::InvalidProblem(_) | Error::EmptyProblemSet => config_err(e.to_string()),
        other => other.into(),
    }
}

fn run_dir(s: &Settings, default_id: &str) -> anyhow::Result<(String, PathBuf)> {
    let id = s.id.clone().unwrap_or_else(|| default_id.to_string());
    if id.is_empty() || id.contains(['/', '\\']) || id == "." || id == ".." {
        return Err(config_err(format!("invalid run id '{id}'")));
    }
    let dir = s.out_dir().join("runs").join(&id);
    Ok((id, dir))
}

fn write_trace(path: &Path, trace: &RunTrace<f64>) -> anyhow::Result<()> {
    write_atomic(path, |w| Ok(write_trace_csv(&trace.records, w)?))
}

pub fn solve(s: &Settings) -> anyhow::Result<()> {
    let name = match s.problems.as_slice() {
        [one] => one.clone(),
        [] => return Err(config_err("solve needs --problem")),
        _ => return Err(config_err("solve takes exactly one problem")),
    };
    let scheme = match s.schemes(&["int-rfd"])?.as_slice() {
        [one] => *one,
        _ => return Err(config_err("solve takes exactly one solver")),
    };
    let cfg = s.solver_config(scheme)?;
    let inst: ProblemInstance<f64> = problems::by_name(&name, s.seed()).map_err(classify)?;
    let trace = run(inst.objective.as_ref(), inst.manifold.as_ref(), &inst.x0, &cfg).map_err(|e| match e {
        Error::NotExtrinsic => config_err(format!(
            "problem '{name}' is defined only on the manifold, so --solver ext-rfd cannot evaluate it off the \
             manifold; use --solver int-rfd or dfqrm"
        )),
        other => classify(other),
    })?;
    let (_, dir) = run_dir(s, &format!("solve-s{}", s.seed()))?;
    let path = dir.join(&name).join(format!("{}.csv", scheme.label()));
    write_trace(&path, &trace)?;
    println!(
        "problem={name} solver={} d={} final_f={:.10e} fe={} re={} iterations={} termination={} trace={}",
        scheme.label(),
        inst.dim(),
        trace.final_f,
        trace.counter.fe,
        trace.counter.re,
        trace.records.len(),
        trace.termination,
        path.display()
    );
    Ok(())
}

fn build_suite(s: &Settings) -> anyhow::Result<(String, ProblemSuite<f64>)> {
    let seed = s.seed();
    match (s.suite, s.problems.is_empty()) {
        (Some(_), false) => Err(config_err("give either --suite or --problem, not both")),
        (None, true) => Err(config_err("bench needs --suite or --problem")),
        (Some(Suite::Euclidean), true) => Ok(("euclidean".into(), problems::euclidean_suite(seed).map_err(classify)?)),
        (Some(Suite::Riemannian), true) => {
            Ok(("riemannian".into(), problems::riemannian_suite(seed).map_err(classify)?))
        }
        (None, false) => {
            let instances = s
                .problems
                .iter()
                .enumerate()
                .map(|(i, name)| problems::by_name(name, derive_seed(seed, i as u64)).map_err(classify))
                .collect::<anyhow::Result<Vec<_>>>()?;
            for (i, name) in s.problems.iter().enumerate() {
                if s.problems[..i].contains(name) {
                    return Err(config_err(format!("problem '{name}' listed twice")));
                }
            }
            Ok(("custom".into(), ProblemSuite { instances, seed }))
        }
    }
}

pub fn bench(s: &Settings) -> anyhow::Result<()> {
    let (label, suite) = build_suite(s)?;
    let default_solvers: &[&str] = if s.suite == Some(Suite::Riemannian) {
        &["int-rfd", "ext-rfd"]
    } else {
        &["int-rfd", "dfqrm"]
    };
    let schemes = s.schemes(default_solvers)?;
    let solvers = schemes
        .iter()
        .map(|&sc| Ok(NamedSolver::new(sc.label(), s.solver_config(sc)?)))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let spec = s.convergence()?;
    let (id, dir) = run_dir(s, &format!("{label}-s{}", s.seed()))?;

    let result = run_campaign(&suite, &solvers, &spec, s.seed(), s.jobs).map_err(classify)?;

    for (inst, row) in suite.instances.iter().zip(&result.traces) {
        for (solver, trace) in solvers.iter().zip(row) {
            if let Some(trace) = trace {
                write_trace(&dir.join(&inst.name).join(format!("{}.csv", solver.name)), trace)?;
            }
        }
    }
    write_atomic(&dir.join("costs.csv"), |w| Ok(result.table.write_csv(w)?))?;
    write_atomic(&dir.join("instances.csv"), |w| Ok(suite.write_metadata_csv(w)?))?;
    write_text(&dir.join("manifest.txt"), &s.manifest(&schemes, &id))?;
    if !result.failures.is_empty() {
        let mut text = String::from("problem,solver,message\n");
        for f in &result.failures {
            text.push_str(&format!("{},{},\"{}\"\n", f.problem, f.solver, f.message.replace('"', "'")));
        }
        write_text(&dir.join("failures.csv"), &text)?;
    }

    println!("{} problems, metric {}, eta {:e}", suite.len(), spec.metric, spec.eta);
    for (j, solver) in solvers.iter().enumerate() {
        println!(
            "solver={} solved={}/{} rho(1)={:.4}",
            solver.name,
            result.table.solved_count(j),
            suite.len(),
            profile_value(&result.table, j, 1.0)
        );
    }
    println!("costs={}", dir.join("costs.csv").display());
    if !result.failures.is_empty() {
        for f in &result.failures {
            eprintln!("aborted: {} / {}: {}", f.problem, f.solver, f.message);
        }
        anyhow::bail!("{} run(s) aborted; see {}", result.failures.len(), dir.join("failures.csv").display());
    }
    Ok(())
}

pub fn profiles(costs: &Path, out: Option<&Path>, title: &str) -> anyhow::Result<()> {
    let file = fs::File::open(costs).map_err(|e| config_err(format!("cannot open {}: {e}", costs.display())))?;
    let table = ProfileTable::read_csv(file).map_err(|e| config_err(format!("{}: {e}", costs.display())))?;
    let curves = build_profile(&table, &default_alpha_grid()).map_err(classify)?;
    let dir = match out {
        Some(d) => d.to_path_buf(),
        None => costs.parent().map(Path::to_path_buf).unwrap_or_default(),
    };
    write_atomic(&dir.join("profiles.csv"), |w| Ok(write_profiles_csv(&curves, w)?))?;
    write_atomic(&dir.join("profiles.svg"), |w| Ok(write_profiles_svg(&curves, title, w)?))?;
    for (j, c) in curves.iter().enumerate() {
        println!(
            "solver={} rho(1)={:.4} solved={:.4}",
            c.solver,
            profile_value(&table, j, 1.0),
            c.solved_fraction
        );
    }
    println!("profiles={}", dir.join("profiles.csv").display());
    Ok(())
}

pub fn list_problems(suite: Suite) -> anyhow::Result<()> {
    let suite: ProblemSuite<f64> = match suite {
        Suite::Euclidean => problems::euclidean_suite(0)?,
        Suite::Riemannian => problems::riemannian_suite(0)?,
    };
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    writeln!(out, "{:<24} {:>6} {:>6}", "name", "n", "d")?;
    for inst in &suite.instances {
        writeln!(out, "{:<24} {:>6} {:>6}", inst.name, inst.dims.n, inst.dims.d)?;
    }
    Ok(())
}

pub fn inspect(path: &Path) -> anyhow::Result<()> {
    let file = fs::File::open(path).map_err(|e| config_err(format!("cannot open {}: {e}", path.display())))?;
    let records = read_trace_csv::<f64, _>(file)
        .map_err(|e| config_err(format!("{}: {e}", path.display())))
        .with_context(|| "reading iteration log")?;
    let count = |b: Branch| records.iter().filter(|r| r.branch == b).count();
    let Some(last) = records.last() else {
        println!("iterations=0");
        return Ok(());
    };
    println!(
        "iterations={} S={} U1={} U2={} U3={} final_f={:.10e} fe={} re={} tau={:e} sigma={:e}",
        records.len(),
        count(Branch::S),
        count(Branch::U1),
        count(Branch::U2),
        count(Branch::U3),
        last.f,
        last.fe,
        last.re,
        last.tau,
        last.sigma
    );
    Ok(())
}
