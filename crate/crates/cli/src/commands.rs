use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::time::Instant;

use hessperm::verify::{first_mismatch, verify_trace, verify_perdet, Status, TheoremTag, Variant};
use hessperm::{
    build_family, per_contraction, verify_theorem, BigInt, Error, Family, FamilySpec, IdentityReport, IntMatrix,
    Method, TheoremId,
};
use serde::Serialize;

use crate::args::{
    BenchArgs, Command, FamilyArgs, GenArgs, MatrixFormat, PerArgs, PerdetArgs, ReportFormat, TraceArgs,
    VariantArg, VerifyArgs,
};
use crate::format::{matrix_from_json, matrix_to_csv, matrix_to_json};
use crate::{CliError, Outcome};

type CmdResult = Result<Outcome, CliError>;

pub fn dispatch(command: Command, out: &mut impl Write, err: &mut impl Write) -> CmdResult {
    match command {
        Command::Gen(args) => gen(args, out),
        Command::Per(args) => per(args, out),
        Command::Verify(args) => verify(args, out, err),
        Command::Bench(args) => bench(args, out, err),
        Command::Trace(args) => trace(args, out, err),
        Command::Perdet(args) => perdet(args, out, err),
    }
}

fn family_spec(args: &FamilyArgs) -> Result<FamilySpec, CliError> {
    let family = args
        .family
        .ok_or_else(|| CliError::Usage("--family is required".into()))?;
    let has_bands = args.sub.is_some() || args.main.is_some() || args.sup.is_some();
    if family != Family::Tridiag {
        if has_bands {
            return Err(CliError::Usage(format!("--sub/--main/--super only apply to TRIDIAG, not {family}")));
        }
        let n = args
            .n
            .ok_or_else(|| CliError::Usage(format!("--n is required for family {family}")))?;
        return Ok(FamilySpec::new(family, n));
    }
    let main = args
        .main
        .clone()
        .ok_or_else(|| CliError::Usage("TRIDIAG needs --main (and --sub/--super for n > 1)".into()))?;
    let spec = FamilySpec::tridiagonal(
        args.sub.clone().unwrap_or_default(),
        main,
        args.sup.clone().unwrap_or_default(),
    );
    if let Some(n) = args.n.filter(|&n| n != spec.n) {
        return Err(CliError::Usage(format!("--n {n} disagrees with --main of length {}", spec.n)));
    }
    Ok(spec)
}

fn gen(args: GenArgs, out: &mut impl Write) -> CmdResult {
    let a = build_family(&family_spec(&args.matrix)?)?;
    match args.format {
        MatrixFormat::Json => writeln!(out, "{}", matrix_to_json(&a))?,
        MatrixFormat::Csv => write!(out, "{}", matrix_to_csv(&a))?,
    }
    Ok(Outcome::Pass)
}

fn load_matrix(args: &PerArgs) -> Result<IntMatrix, CliError> {
    match &args.input {
        Some(path) => {
            let text = if path.as_os_str() == "-" {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s)?;
                s
            } else {
                std::fs::read_to_string(path)
                    .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?
            };
            Ok(matrix_from_json(&text)?)
        }
        None => Ok(build_family(&family_spec(&args.matrix)?)?),
    }
}

fn per(args: PerArgs, out: &mut impl Write) -> CmdResult {
    if args.trace && args.method != Method::Contraction {
        return Err(CliError::Usage(format!(
            "--trace needs --method contraction, got {}",
            args.method
        )));
    }
    let a = load_matrix(&args)?;
    if !args.trace {
        writeln!(out, "{}", args.method.evaluate(&a)?)?;
        return Ok(Outcome::Pass);
    }
    let (value, trace) = per_contraction(&a)?;
    writeln!(out, "{value}")?;
    for (r, (step, m)) in trace.steps.iter().zip(&trace.intermediates).enumerate() {
        writeln!(out, "step {}: {step}", r + 1)?;
        writeln!(out, "{m}")?;
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct ReportRow<'a> {
    theorem: String,
    n: usize,
    method: &'a str,
    computed: String,
    claimed: String,
    status: &'a str,
    oracle_checked: bool,
}

impl<'a> From<&'a IdentityReport> for ReportRow<'a> {
    fn from(r: &'a IdentityReport) -> Self {
        ReportRow {
            theorem: r.theorem.to_string(),
            n: r.n,
            method: r.method.name(),
            computed: r.computed.to_string(),
            claimed: r.claimed.to_string(),
            status: r.status.name(),
            oracle_checked: r.oracle_checked,
        }
    }
}

pub const VERIFY_HEADER: &str = "theorem,n,method,computed,claimed,status,oracle_checked";

fn expand_variants(theorem: TheoremId, variant: VariantArg) -> Vec<TheoremId> {
    if theorem.tag != TheoremTag::T3MFibSum || theorem.variant == Variant::DerivedCorrected {
        return vec![theorem];
    }
    match variant {
        VariantArg::Paper => vec![theorem.with_variant(Variant::PaperStated)],
        VariantArg::Corrected => vec![theorem.with_variant(Variant::DerivedCorrected)],
        VariantArg::Both => vec![
            theorem.with_variant(Variant::PaperStated),
            theorem.with_variant(Variant::DerivedCorrected),
        ],
    }
}

fn verify(args: VerifyArgs, out: &mut impl Write, err: &mut impl Write) -> CmdResult {
    let mut theorems: Vec<TheoremId> = Vec::new();
    for t in args.theorems.iter().flat_map(|&t| expand_variants(t, args.variant)) {
        if !theorems.contains(&t) {
            theorems.push(t);
        }
    }
    let mut sweeps = Vec::with_capacity(theorems.len());
    for &theorem in &theorems {
        sweeps.push((
            theorem,
            verify_theorem(theorem, args.n_min, args.n_max, args.method, args.oracle_max_n)?,
        ));
    }

    let rows: Vec<ReportRow> = sweeps.iter().flat_map(|(_, r)| r.iter().map(ReportRow::from)).collect();
    match args.format {
        ReportFormat::Csv => {
            writeln!(out, "{VERIFY_HEADER}")?;
            for r in &rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    r.theorem, r.n, r.method, r.computed, r.claimed, r.status, r.oracle_checked
                )?;
            }
        }
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, &rows).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
    }

    let mut pass = true;
    for (theorem, reports) in &sweeps {
        if let Some(m) = first_mismatch(reports) {
            pass = false;
            writeln!(
                err,
                "{theorem}: first mismatch at n={} (computed {}, claimed {})",
                m.n, m.computed, m.claimed
            )?;
        }
    }
    let t3: Vec<_> = sweeps
        .iter()
        .filter(|(t, _)| t.tag == TheoremTag::T3MFibSum)
        .collect();
    if let [(_, a), (_, b)] = t3.as_slice() {
        let holds = |r: &[IdentityReport]| first_mismatch(r).is_none();
        let verdict = match (holds(a), holds(b)) {
            (true, false) => format!("T3 verdict: {} holds on n={}..={}", a[0].theorem, args.n_min, args.n_max),
            (false, true) => format!("T3 verdict: {} holds on n={}..={}", b[0].theorem, args.n_min, args.n_max),
            (true, true) => "T3 verdict: both readings hold on this range".to_string(),
            (false, false) => "T3 verdict: neither reading holds on this range".to_string(),
        };
        writeln!(err, "{verdict}")?;
    }
    Ok(Outcome::from_pass(pass))
}

pub const BENCH_HEADER: &str = "family,n,method,value,elapsed_ns";

fn skippable(e: &Error) -> bool {
    matches!(
        e,
        Error::SizeGuard { .. } | Error::NotLowerHessenberg { .. } | Error::NotContractible { .. }
    )
}

fn bench(args: BenchArgs, out: &mut impl Write, err: &mut impl Write) -> CmdResult {
    writeln!(out, "{BENCH_HEADER}")?;
    let mut pass = true;
    for &family in &args.families {
        for &n in &args.n_list {
            let a = build_family(&FamilySpec::new(family, n))?;
            let mut values: BTreeMap<&str, BigInt> = BTreeMap::new();
            for &method in &args.methods {
                let start = Instant::now();
                let result = method.evaluate(&a);
                let elapsed = start.elapsed().as_nanos();
                match result {
                    Ok(v) => {
                        writeln!(out, "{family},{n},{method},{v},{elapsed}")?;
                        values.insert(method.name(), v);
                    }
                    Err(e) if skippable(&e) => {
                        writeln!(out, "{family},{n},{method},SKIPPED,")?;
                        writeln!(err, "{family}_{n} {method}: skipped ({e})")?;
                    }
                    Err(e) => return Err(e.into()),
                }
            }
            let mut distinct = values.values().collect::<Vec<_>>();
            distinct.dedup();
            if distinct.len() > 1 {
                pass = false;
                let detail = values
                    .iter()
                    .map(|(m, v)| format!("{m}={v}"))
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(err, "{family}_{n}: evaluators disagree: {detail}")?;
            }
        }
    }
    Ok(Outcome::from_pass(pass))
}

pub const TRACE_HEADER: &str = "family,n,r,check,status";

fn trace(args: TraceArgs, out: &mut impl Write, err: &mut impl Write) -> CmdResult {
    let report = verify_trace(args.family, args.n)?;
    let (family, n) = (report.family, report.n);
    writeln!(out, "{TRACE_HEADER}")?;
    for step in &report.steps {
        let schedule = if step.on_schedule { Status::Match } else { Status::Mismatch };
        writeln!(out, "{family},{n},{},closed_form,{}", step.r, step.expected_status)?;
        writeln!(out, "{family},{n},{},schedule,{schedule}", step.r)?;
        for d in &step.displays {
            writeln!(out, "{family},{n},{},{},{}", step.r, d.label, d.status)?;
        }
    }
    for (r, label) in report.display_mismatches() {
        writeln!(err, "{family}_{n} step {r}: published display {label} differs from the computed step")?;
    }
    if !report.all_expected_match() {
        writeln!(err, "{family}_{n}: contraction chain departs from the closed form")?;
    }
    Ok(Outcome::from_pass(report.all_expected_match()))
}

fn perdet(args: PerdetArgs, out: &mut impl Write, err: &mut impl Write) -> CmdResult {
    let report = verify_perdet(args.trials, args.n_max, args.seed)?;
    writeln!(out, "seed,trials,n_max,passes,failures")?;
    writeln!(
        out,
        "{},{},{},{},{}",
        report.seed,
        report.trials,
        report.n_max,
        report.passes,
        report.failures.len()
    )?;
    for case in &report.failures {
        writeln!(
            err,
            "per={} det(sub negated)={} det(super negated)={} det(A o S)={}\n{}",
            case.permanent, case.det_negated_sub, case.det_negated_super, case.det_sign_matrix, case.matrix
        )?;
    }
    Ok(Outcome::from_pass(report.failures.is_empty()))
}
