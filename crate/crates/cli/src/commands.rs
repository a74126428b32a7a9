use std::fs::File;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context, Result};
use noether_core::norm_search::{
    family_cor43, find_witness, reproduce_examples, search_norm, witness_from_element, ExampleReport,
    WitnessSearch,
};
use noether_core::fuzz::run_fuzz;
use noether_core::{certify, run_reduction, Certificate, CycInt, GroupSpec, SearchConfig, Verdict, Witness};
use num_bigint::BigInt;
use serde_json::json;

use crate::args::{Command, SearchArgs, SpecArgs};
use crate::report::{Done, Outcome};

pub fn run(cmd: &Command) -> Result<Done> {
    match cmd {
        Command::Norm { q, x } => norm(*q, x),
        Command::SolveNorm { q, target, search } => solve_norm(*q, target, search.config()),
        Command::Certify { spec, search, out } => certify_spec(spec, search, out.as_deref()),
        Command::Family { q, alpha, k, out } => family(*q, *alpha, *k, out.as_deref()),
        Command::Examples { q, out } => examples(*q, out.as_deref()),
        Command::Fuzz { identity, trials, dims, seed } => {
            let dims = dims.clone().unwrap_or_else(|| identity.default_dims());
            if *trials == 0 {
                eprintln!("warning: no trials requested, nothing was checked");
            }
            let rep = run_fuzz(*identity, *trials, *seed, dims.clone())?;
            println!(
                "{}: {}/{} passed (seed {}, sizes {}..{})",
                rep.identity,
                rep.passed,
                rep.trials,
                rep.seed,
                dims.start(),
                dims.end()
            );
            if let Some(first) = rep.failures.first() {
                println!("counterexample: {}", serde_json::to_string(first)?);
            }
            let outcome = if rep.ok() { Outcome::Ok } else { Outcome::Error };
            Ok(Done::new(outcome, serde_json::to_value(&rep)?))
        }
        Command::Reduce { spec, search, out } => reduce(spec, search, out.as_deref()),
    }
}

fn norm(q: u64, text: &str) -> Result<Done> {
    let x = CycInt::parse(text, q)?;
    let n = x.norm();
    println!("{n}");
    Ok(Done::new(Outcome::Ok, json!({ "x": x.to_string(), "norm": n.to_string() })))
}

fn solve_norm(q: u64, target: &str, cfg: SearchConfig) -> Result<Done> {
    let target: BigInt = target.trim().parse().map_err(|_| anyhow!("target {target:?} is not an integer"))?;
    let out = search_norm(q, &target, &cfg)?;
    for x in &out.solutions {
        println!("{x}");
    }
    eprintln!(
        "{} solution(s); {} candidates examined, {}",
        out.solutions.len(),
        out.examined,
        if out.complete { "box exhausted" } else { "budget reached" }
    );
    let outcome = if out.solutions.is_empty() { Outcome::Inconclusive } else { Outcome::Ok };
    let found: Vec<String> = out.solutions.iter().map(ToString::to_string).collect();
    let result = json!({ "solutions": found, "examined": out.examined, "complete": out.complete });
    Ok(Done::new(outcome, result).searched(cfg))
}

enum Source {
    Given(Witness, CycInt),
    Inconclusive { examined: u64, complete: bool },
}

fn parse_spec(args: &SpecArgs) -> Result<GroupSpec> {
    let int = |name: &str, s: &str| -> Result<BigInt> {
        s.trim().parse().map_err(|_| anyhow!("--{name} {s:?} is not an integer"))
    };
    Ok(GroupSpec::new(int("m", &args.m)?, args.n, int("r", &args.r)?)?)
}

fn witness_for(spec: &GroupSpec, args: &SpecArgs, cfg: &SearchConfig) -> Result<Source> {
    if let Some(text) = &args.x {
        let x = CycInt::parse(text, spec.n())?;
        let (w, _) = witness_from_element(spec, &x)?
            .ok_or_else(|| anyhow!("no conjugate of {x} is divisible by m' = {} at r", spec.mprime()))?;
        return Ok(Source::Given(w, x));
    }
    Ok(match find_witness(spec, cfg)? {
        WitnessSearch::Found { witness, element, .. } => Source::Given(witness, element),
        WitnessSearch::Inconclusive { examined, complete, .. } => Source::Inconclusive { examined, complete },
    })
}

fn inconclusive(spec: &GroupSpec, cfg: SearchConfig, examined: u64, complete: bool) -> Done {
    eprintln!(
        "inconclusive: no element of norm {} within bound {} ({examined} candidates, {})",
        spec.mprime(),
        cfg.coeff_bound,
        if complete { "box exhausted" } else { "budget reached" }
    );
    Done::new(Outcome::Inconclusive, json!({ "examined": examined, "complete": complete })).searched(cfg)
}

fn certify_spec(args: &SpecArgs, search: &SearchArgs, out: Option<&Path>) -> Result<Done> {
    let spec = parse_spec(args)?;
    let cfg = search.config();
    let (w, x) = match witness_for(&spec, args, &cfg)? {
        Source::Given(w, x) => (w, x),
        Source::Inconclusive { examined, complete } => return Ok(inconclusive(&spec, cfg, examined, complete)),
    };
    let default_path;
    let path = match out {
        Some(p) => p,
        None => {
            default_path = PathBuf::from(format!("cert-{}-{}-{}.json", spec.m(), spec.n(), spec.r()));
            &default_path
        }
    };
    let done = certify_and_write(&spec, &w, &x, Some(path))?;
    Ok(done.searched(cfg))
}

fn family(q: u64, alpha: u64, k: u32, out: Option<&Path>) -> Result<Done> {
    let (spec, w) = family_cor43(q, alpha, k)?;
    let x = w.element(q)?;
    certify_and_write(&spec, &w, &x, out)
}

fn certify_and_write(spec: &GroupSpec, w: &Witness, x: &CycInt, out: Option<&Path>) -> Result<Done> {
    let trace = run_reduction(spec, w)?;
    let cert = certify(&trace, w, spec)?;
    println!("spec: {spec}");
    println!("element: {x}");
    println!("pivots: {}", list(&cert.trace.pivots));
    println!("final entry: {}", cert.trace.final_entry);
    println!("verdict: {}", cert.verdict);
    if let Some(path) = out {
        let mut text = cert.to_json()?;
        text.push('\n');
        std::fs::write(path, text).with_context(|| format!("writing certificate to {}", path.display()))?;
        println!("certificate: {}", path.display());
    }
    let outcome = if cert.verdict == Verdict::Rational { Outcome::Ok } else { Outcome::Error };
    Ok(Done::new(outcome, summary(&cert, out)))
}

fn summary(cert: &Certificate, out: Option<&Path>) -> serde_json::Value {
    json!({
        "spec": cert.spec,
        "witness": cert.witness,
        "pivots": cert.trace.pivots.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "final_entry": cert.trace.final_entry.to_string(),
        "norm": cert.norm.to_string(),
        "verdict": cert.verdict,
        "certificate": out.map(|p| p.display().to_string()),
    })
}

fn list(v: &[BigInt]) -> String {
    if v.is_empty() {
        return "(none)".into();
    }
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn reduce(args: &SpecArgs, search: &SearchArgs, out: Option<&Path>) -> Result<Done> {
    let spec = parse_spec(args)?;
    let cfg = search.config();
    let w = match witness_for(&spec, args, &cfg)? {
        Source::Given(w, _) => w,
        Source::Inconclusive { examined, complete } => return Ok(inconclusive(&spec, cfg, examined, complete)),
    };
    let trace = run_reduction(&spec, &w)?;
    let mut text = serde_json::to_string_pretty(&trace)?;
    text.push('\n');
    match out {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing trace to {}", path.display()))?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    let result = json!({
        "witness": w,
        "pivots": trace.pivots.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "final_entry": trace.final_entry.to_string(),
    });
    Ok(Done::new(Outcome::Ok, result).searched(cfg))
}

fn examples(filter: Option<u64>, out: Option<&Path>) -> Result<Done> {
    let reports = reproduce_examples(filter);
    if reports.is_empty() {
        eprintln!("warning: no published triples with q = {}", filter.map_or("any".into(), |q| q.to_string()));
        return Ok(Done::new(Outcome::Ok, json!({ "rows": [] })));
    }
    let sink: Box<dyn Write> = match out {
        Some(path) => Box::new(File::create(path).with_context(|| format!("creating {}", path.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    write_csv(sink, &reports)?;

    let good = reports.iter().filter(|r| r.is_rational()).count();
    eprintln!("{good}/{} Rational", reports.len());
    for r in reports.iter().filter(|r| !r.is_rational()) {
        eprintln!(
            "failed: ({}, {}, {}): {}",
            r.q,
            r.p,
            r.x,
            r.failure.as_deref().unwrap_or("verdict is not Rational")
        );
    }
    let rows: Vec<_> = reports
        .iter()
        .map(|r| json!({ "q": r.q, "p": r.p, "x": r.x.to_string(), "status": r.status(), "failure": r.failure }))
        .collect();
    let outcome = if good == reports.len() { Outcome::Ok } else { Outcome::Error };
    Ok(Done::new(outcome, json!({ "rational": good, "rows": rows })))
}

fn write_csv(sink: Box<dyn Write>, reports: &[ExampleReport]) -> Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["q", "p", "x", "r", "k", "verdict"])?;
    for r in reports {
        let (rr, k) = r.record.as_ref().map_or((String::new(), String::new()), |t| (t.r.to_string(), t.k.to_string()));
        w.write_record([r.q.to_string(), r.p.to_string(), r.x.to_string(), rr, k, r.status()])?;
    }
    w.flush()?;
    Ok(())
}
