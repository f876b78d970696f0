//! `ulm`: build, check and count the affine charts of ramified unitary local
//! models and their splitting refinements.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage
//! error, 3 a resource guard tripped, 4 I/O failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use ulm_cli::formats::{
    aggregate_status, counts_csv, export_chart, report_json, CountRow,
};
use ulm_core::ideal::Guard;
use ulm_core::model::blowup::build_blowup_chart;
use ulm_core::model::charts::{build_class_presentation, build_components, build_spl_chart};
use ulm_core::model::incidence::build_exc_incidence;
use ulm_core::model::kramer::{build_kramer_chart, build_simplified_chart};
use ulm_core::model::local::build_local_chart;
use ulm_core::model::{
    classify_case, ChartPresentation, InstanceParams, SignVariant, TraceVariant, VariantConfig,
};
use ulm_core::oracle::{
    count_affine, count_projective_incidence, count_union_check, exc1_gluing_count, OracleGuard,
};
use ulm_core::verify::{run_check, suite_plan};
use ulm_core::KernelError;

#[derive(Parser)]
#[command(
    name = "ulm",
    version,
    about = "Symbolic verification workbench for unitary local model charts"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct InstanceArgs {
    /// Rank of the hermitian space (n >= 2)
    #[arg(long)]
    n: usize,
    /// Lattice type index (0 <= k <= n/2)
    #[arg(long)]
    k: usize,
}

#[derive(Args, Clone)]
struct VariantArgs {
    /// Isotropy sign reading: sec33 (default) or prop31
    #[arg(long, default_value = "sec33")]
    sign_variant: String,
    /// Block-trace constant reading: two-pi (default) or pi
    #[arg(long, default_value = "two-pi")]
    trace_variant: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the case classification of an instance
    Classify {
        #[command(flatten)]
        inst: InstanceArgs,
    },
    /// Build chart ideals and write them as an ideal-file catalog
    Build {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Chart family: local|kramer|simplified|class|spl|blowup
        #[arg(long)]
        family: String,
        /// Chart selector: "<class>:<a>,<b>" (e.g. i:2,1), "bl:<g>,<e>", or "all"
        #[arg(long, default_value = "all")]
        chart: String,
        /// Output directory for the catalog
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        variants: VariantArgs,
    },
    /// Run a verification suite and write a JSON report
    Check {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Suite: kramer-spin|presentation|fiber|flatness|semistable|blowup|pairing|all
        #[arg(long)]
        suite: String,
        /// Restrict to one chart: "<class>:<a>,<b>" or "bl:<g>,<e>"
        #[arg(long)]
        chart: Option<String>,
        /// Report output path
        #[arg(long)]
        out: PathBuf,
        #[command(flatten)]
        variants: VariantArgs,
    },
    /// Exhaustive point counts over small odd prime fields (CSV output)
    Count {
        #[command(flatten)]
        inst: InstanceArgs,
        /// Comma-separated odd primes, e.g. 3,5
        #[arg(long)]
        q: String,
        /// Target: chart|components|exc-incidence|exc-gluing
        #[arg(long)]
        target: String,
        /// Chart selector for chart/components targets
        #[arg(long)]
        chart: Option<String>,
        /// Chart family for chart/components targets (class|spl)
        #[arg(long, default_value = "class")]
        family: String,
        /// CSV output path
        #[arg(long)]
        out: PathBuf,
    },
}

enum AppError {
    Usage(String),
    Guard(String),
    Io(String),
}

impl From<KernelError> for AppError {
    fn from(e: KernelError) -> Self {
        match e {
            KernelError::GuardTripped(_) => AppError::Guard(e.to_string()),
            _ => AppError::Usage(e.to_string()),
        }
    }
}

impl From<anyhow::Error> for AppError {
    fn from(e: anyhow::Error) -> Self {
        AppError::Io(format!("{e:#}"))
    }
}

fn write_file(path: &Path, body: &str) -> Result<(), AppError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| AppError::Io(e.to_string()))?;
        }
    }
    fs::write(path, body).map_err(|e| AppError::Io(format!("{}: {e}", path.display())))
}

fn parse_variants(v: &VariantArgs) -> Result<VariantConfig, AppError> {
    let sign = match v.sign_variant.as_str() {
        "sec33" => SignVariant::Sec33,
        "prop31" => SignVariant::Prop31,
        other => return Err(AppError::Usage(format!("unknown sign variant {other}"))),
    };
    let trace = match v.trace_variant.as_str() {
        "two-pi" => TraceVariant::TwoPi,
        "pi" => TraceVariant::Pi,
        other => return Err(AppError::Usage(format!("unknown trace variant {other}"))),
    };
    Ok(VariantConfig { sign, trace })
}

/// Chart selector grammar: `<class>:<a>,<b>` for model charts, `bl:<g>,<e>`
/// for blow-up charts, `all` for the representative set.
fn parse_selector(sel: &str) -> Result<Option<(bool, usize, usize)>, AppError> {
    if sel == "all" {
        return Ok(None);
    }
    let (head, pair) = sel
        .split_once(':')
        .ok_or_else(|| AppError::Usage(format!("malformed chart selector {sel}")))?;
    let (a, b) = pair
        .split_once(',')
        .ok_or_else(|| AppError::Usage(format!("malformed chart selector {sel}")))?;
    let a: usize = a
        .trim()
        .parse()
        .map_err(|_| AppError::Usage(format!("bad index in selector {sel}")))?;
    let b: usize = b
        .trim()
        .parse()
        .map_err(|_| AppError::Usage(format!("bad index in selector {sel}")))?;
    let blowup = match head {
        "bl" => true,
        "i" | "ii" | "iii" | "iv" => false,
        other => return Err(AppError::Usage(format!("unknown chart class {other}"))),
    };
    Ok(Some((blowup, a, b)))
}

fn env_u64(name: &str) -> Option<u64> {
    std::env::var(name).ok().and_then(|v| v.parse().ok())
}

fn make_guard() -> Guard {
    let pairs = env_u64("ULM_GUARD_PAIRS").unwrap_or(1_000_000);
    match env_u64("ULM_GUARD_MS") {
        None => Guard::with_pairs(pairs),
        Some(ms) => {
            let start = Instant::now();
            Guard::with_deadline(
                pairs,
                Box::new(move || start.elapsed().as_millis() as u64 > ms),
            )
        }
    }
}

fn make_oracle_guard() -> OracleGuard {
    OracleGuard {
        max_points: env_u64("ULM_GUARD_POINTS").unwrap_or(100_000_000),
    }
}

fn build_family(
    family: &str,
    n: usize,
    k: usize,
    a: usize,
    b: usize,
    config: VariantConfig,
) -> Result<ChartPresentation, AppError> {
    Ok(match family {
        "local" => build_local_chart(n, k, config)?,
        "kramer" => build_kramer_chart(n, k, a, b, config)?,
        "simplified" => build_simplified_chart(n, k, a, b, config)?,
        "class" => build_class_presentation(n, k, a, b)?,
        "spl" => build_spl_chart(n, k, a, b)?,
        "blowup" => build_blowup_chart(n, k, a, b, config)?,
        other => return Err(AppError::Usage(format!("unknown family {other}"))),
    })
}

fn default_pairs(family: &str, n: usize, k: usize) -> Vec<(usize, usize)> {
    let reps = if family == "blowup" {
        ulm_core::verify::blowup_representatives(n, k)
    } else {
        ulm_core::verify::model_representatives(n, k)
    };
    reps.into_iter().map(|(_, a, b)| (a, b)).collect()
}

fn cmd_classify(inst: &InstanceArgs) -> Result<i32, AppError> {
    let case = classify_case(inst.n, inst.k)?;
    println!("{}", case.as_str());
    Ok(0)
}

fn cmd_build(
    inst: &InstanceArgs,
    family: &str,
    chart: &str,
    out: &Path,
    variants: &VariantArgs,
) -> Result<i32, AppError> {
    let config = parse_variants(variants)?;
    let (n, k) = (inst.n, inst.k);
    InstanceParams::new(n, k)?.require_charts()?;
    let pairs: Vec<(usize, usize)> = match parse_selector(chart)? {
        Some((_, a, b)) => vec![(a, b)],
        None => {
            if family == "local" {
                vec![(0, 0)]
            } else {
                default_pairs(family, n, k)
            }
        }
    };
    fs::create_dir_all(out).map_err(|e| AppError::Io(e.to_string()))?;
    let mut manifest = String::new();
    let mut labels = Vec::new();
    for (a, b) in pairs {
        let built = if family == "local" {
            build_local_chart(n, k, config)?
        } else {
            match build_family(family, n, k, a, b, config) {
                Ok(c) => c,
                // skip representatives a family rejects (e.g. class (iv) has
                // no flat closure) unless explicitly requested
                Err(AppError::Usage(msg)) if chart == "all" => {
                    eprintln!("skipping ({a},{b}): {msg}");
                    continue;
                }
                Err(e) => return Err(e),
            }
        };
        labels.push(export_chart(&built, out, &mut manifest)?);
        if family == "local" {
            break;
        }
    }
    write_file(&out.join("manifest.txt"), &manifest)?;
    for l in &labels {
        println!("wrote {l}.ideal");
    }
    println!("wrote manifest.txt ({} charts)", labels.len());
    Ok(0)
}

fn cmd_check(
    inst: &InstanceArgs,
    suite: &str,
    chart: &Option<String>,
    out: &Path,
    variants: &VariantArgs,
) -> Result<i32, AppError> {
    let config = parse_variants(variants)?;
    let (n, k) = (inst.n, inst.k);
    let case = classify_case(n, k)?;
    let restrict = match chart {
        None => None,
        Some(sel) => parse_selector(sel)?.map(|(_, a, b)| (a, b)),
    };
    let guard = make_guard();
    let oguard = make_oracle_guard();
    let plan = suite_plan(n, k, suite, restrict)?;
    let mut reports = Vec::new();
    for inv in plan {
        let t0 = Instant::now();
        let mut report = run_check(n, k, inv, config, &guard, &oguard)?;
        report.duration_ms = t0.elapsed().as_millis() as u64;
        println!(
            "{} {}",
            report.status.as_str(),
            report.check_id
        );
        if let Some((g, nf)) = &report.witness {
            println!("  witness: {g} -> {nf}");
        }
        reports.push(report);
    }
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    let body = report_json(n, k, case.as_str(), &reports)?;
    write_file(out, &body)?;
    let code = aggregate_status(&reports);
    println!(
        "{} checks, status {}; report written to {}",
        reports.len(),
        code,
        out.display()
    );
    Ok(code)
}

fn parse_primes(q: &str) -> Result<Vec<u64>, AppError> {
    let mut out = Vec::new();
    for part in q.split(',') {
        let v: u64 = part
            .trim()
            .parse()
            .map_err(|_| AppError::Usage(format!("bad prime {part}")))?;
        out.push(v);
    }
    if out.is_empty() {
        return Err(AppError::Usage("empty prime list".into()));
    }
    Ok(out)
}

fn cmd_count(
    inst: &InstanceArgs,
    q: &str,
    target: &str,
    chart: &Option<String>,
    family: &str,
    out: &Path,
) -> Result<i32, AppError> {
    let (n, k) = (inst.n, inst.k);
    let qs = parse_primes(q)?;
    let oguard = make_oracle_guard();
    let mut rows: Vec<CountRow> = Vec::new();
    let selector = match chart {
        None => None,
        Some(sel) => parse_selector(sel)?,
    };
    match target {
        "chart" | "components" => {
            let (a, b) = match selector {
                Some((false, a, b)) => (a, b),
                Some((true, _, _)) => {
                    return Err(AppError::Usage(
                        "counting works on model charts; use a class selector".into(),
                    ))
                }
                None => *default_pairs("class", n, k)
                    .first()
                    .ok_or_else(|| AppError::Usage("no charts for this instance".into()))?,
            };
            let built = match family {
                "class" => build_class_presentation(n, k, a, b)?,
                "spl" => build_spl_chart(n, k, a, b)?,
                other => {
                    return Err(AppError::Usage(format!(
                        "count works on class|spl charts, not {other}"
                    )))
                }
            };
            for &qv in &qs {
                if target == "chart" {
                    let t0 = Instant::now();
                    let c = count_affine(&built.ring, &built.gen_polys(), qv, &oguard)?;
                    rows.push(CountRow {
                        target: "chart".into(),
                        q: qv,
                        m: c.free_variables,
                        count: c.count,
                        component: String::new(),
                        ms: t0.elapsed().as_millis() as u64,
                    });
                } else {
                    let spec = build_components(&built)?;
                    let t0 = Instant::now();
                    let uc = count_union_check(&built, &spec, qv, &oguard)?;
                    let ms = t0.elapsed().as_millis() as u64;
                    for (name, count) in &uc.per_component {
                        rows.push(CountRow {
                            target: "components".into(),
                            q: qv,
                            m: built.ring.nvars(),
                            count: *count,
                            component: name.clone(),
                            ms,
                        });
                    }
                    rows.push(CountRow {
                        target: "components".into(),
                        q: qv,
                        m: built.ring.nvars(),
                        count: uc.union_total,
                        component: "union".into(),
                        ms,
                    });
                    rows.push(CountRow {
                        target: "components".into(),
                        q: qv,
                        m: built.ring.nvars(),
                        count: uc.direct,
                        component: "special-fiber".into(),
                        ms,
                    });
                    if !uc.consistent {
                        eprintln!("warning: inclusion-exclusion mismatch at q={qv}");
                    }
                }
            }
        }
        "exc-incidence" => {
            let inc = build_exc_incidence(n, k)?;
            for &qv in &qs {
                let t0 = Instant::now();
                let nexc = count_projective_incidence(&inc.nexc, &[], qv, &oguard)?;
                let e1 = count_projective_incidence(&inc.nexc, &inc.exc1_extra, qv, &oguard)?;
                let e2 = count_projective_incidence(&inc.nexc, &inc.exc2_extra, qv, &oguard)?;
                let bl = count_projective_incidence(&inc.bl, &[], qv, &oguard)?;
                let ms = t0.elapsed().as_millis() as u64;
                let m = 2 * n;
                for (name, count) in [
                    ("nexc", nexc),
                    ("exc1", e1),
                    ("exc2", e2),
                    ("blowup-lines", bl),
                ] {
                    rows.push(CountRow {
                        target: "exc-incidence".into(),
                        q: qv,
                        m,
                        count,
                        component: name.into(),
                        ms,
                    });
                }
            }
        }
        "exc-gluing" => {
            for &qv in &qs {
                let t0 = Instant::now();
                let count = exc1_gluing_count(n, k, qv)?;
                rows.push(CountRow {
                    target: "exc-gluing".into(),
                    q: qv,
                    m: n,
                    count,
                    component: "exc1".into(),
                    ms: t0.elapsed().as_millis() as u64,
                });
            }
        }
        other => return Err(AppError::Usage(format!("unknown count target {other}"))),
    }
    write_file(out, &counts_csv(&rows))?;
    println!("{} rows written to {}", rows.len(), out.display());
    Ok(0)
}

fn dispatch(cli: Cli) -> Result<i32, AppError> {
    match &cli.cmd {
        Cmd::Classify { inst } => cmd_classify(inst),
        Cmd::Build {
            inst,
            family,
            chart,
            out,
            variants,
        } => cmd_build(inst, family, chart, out, variants),
        Cmd::Check {
            inst,
            suite,
            chart,
            out,
            variants,
        } => cmd_check(inst, suite, chart, out, variants),
        Cmd::Count {
            inst,
            q,
            target,
            chart,
            family,
            out,
        } => cmd_count(inst, q, target, chart, family, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // keep clap's helpful output, normalize the exit code to 2
            let _ = e.print();
            let code = if e.use_stderr() { 2 } else { 0 };
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(AppError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(AppError::Guard(msg)) => {
            eprintln!("guard tripped: {msg}");
            ExitCode::from(3)
        }
        Err(AppError::Io(msg)) => {
            eprintln!("i/o error: {msg}");
            ExitCode::from(4)
        }
    }
}
