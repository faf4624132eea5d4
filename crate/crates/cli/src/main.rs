mod coeff;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use coeff::{load_monoid, Coefficient};
use monhom::codec::{canonical_string, presented_value};
use monhom::gamma::{build_complex_with, ComplexOptions, DEFAULT_BUDGET, DEFAULT_MAX_DEGREE};
use monhom::grillet::grillet_report;
use monhom::module::{tensor_quotients, Side};
use monhom::suite::SuiteMonoid;
use monhom::verify::{run_suite, VerifyOptions, VerifyReport};
use monhom::{derivations, harrison, hodge_decomposition, omega, tabulate_presented, Direction, Error, Result, Ring};

#[derive(Parser)]
#[command(name = "monhom", version, about = "Exact (co)homology of finite commutative monoids")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run one computation.
    Compute(ComputeArgs),
    /// Run a verification suite (`all`, or one check name).
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Hh,
    Leech,
    Harrison,
    Hodge,
    Grillet,
    Omega,
    Der,
    Tensor,
    Complex,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Dir {
    Homological,
    Cohomological,
}

#[derive(Args)]
struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Basis-size cap; overrides MONHOM_BUDGET.
    #[arg(long)]
    budget: Option<usize>,
}

#[derive(Args)]
struct ComputeArgs {
    #[arg(value_enum)]
    target: Target,
    /// `builtin:<builder>` or a monoid JSON file.
    #[arg(long)]
    monoid: String,
    /// Coefficient descriptor.
    #[arg(long, default_value = "trivialZ")]
    coeff: String,
    /// Second factor for `tensor` (a left module; default Ω_C).
    #[arg(long)]
    with: Option<String>,
    #[arg(long, default_value_t = DEFAULT_MAX_DEGREE)]
    max_degree: usize,
    /// `Z` or `Q`; defaults to the coefficients' own ring.
    #[arg(long)]
    ring: Option<String>,
    /// For harrison, hodge, grillet and complex.
    #[arg(long, value_enum, default_value = "homological")]
    direction: Dir,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(default_value = "all")]
    suite: String,
    /// Run the corpus-wide checks on this monoid instead of the suite corpus.
    #[arg(long)]
    monoid: Option<String>,
    #[command(flatten)]
    common: Common,
}

fn budget(flag: Option<usize>) -> Result<usize> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var("MONHOM_BUDGET") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::BadParams(format!("MONHOM_BUDGET={v:?} is not a count"))),
        Err(_) => Ok(DEFAULT_BUDGET),
    }
}

fn exit_code(e: &Error) -> u8 {
    match e.kind() {
        "ComplexityBudget" => 2,
        "OracleMismatch" => 3,
        _ => 1,
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::parse(path.as_str(), e.to_string())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| Error::parse("stdout", e.to_string()))
        }
    }
}

fn group_rows(symbol: &str, rows: &[(usize, monhom::FgAbGroup)]) -> (Value, String) {
    let json: Vec<Value> = rows.iter().map(|(n, g)| json!({"degree": n, "group": g})).collect();
    let text: String = rows.iter().map(|(n, g)| format!("{symbol}{n} = {g}\n")).collect();
    (Value::from(json), text)
}

fn compute(args: &ComputeArgs) -> Result<()> {
    let (monoid_label, c) = load_monoid(&args.monoid)?;
    let coeff: Coefficient = args.coeff.parse()?;
    let ring = match &args.ring {
        Some(r) => r.parse()?,
        None => coeff.natural_ring(),
    };
    let budget = budget(args.common.budget)?;
    let chosen = match args.direction {
        Dir::Homological => Direction::Homological,
        Dir::Cohomological => Direction::Cohomological,
    };
    let direction = match args.target {
        Target::Hh | Target::Tensor => Direction::Homological,
        Target::Leech | Target::Der | Target::Omega => Direction::Cohomological,
        _ => chosen,
    };
    let side = direction.side();
    let module = || coeff.module(&c, side);
    let complex = |n_max: usize, ring: Ring| {
        build_complex_with(&c, &module()?, n_max, direction, ComplexOptions { budget, ring })
    };
    let n = args.max_degree;
    let (results, text): (Value, String) = match args.target {
        Target::Hh | Target::Leech => {
            let cx = complex(n + 1, ring)?;
            let rows = (0..=n).map(|d| Ok((d, cx.homology(d)?))).collect::<Result<Vec<_>>>()?;
            group_rows(if args.target == Target::Hh { "HH_" } else { "HH^" }, &rows)
        }
        Target::Harrison => {
            let cx = complex(n + 1, ring)?;
            let rows = (0..=n).map(|d| Ok((d, harrison(&cx, d)?))).collect::<Result<Vec<_>>>()?;
            group_rows(if direction == Direction::Homological { "Harr_" } else { "Harr^" }, &rows)
        }
        Target::Hodge => {
            let cx = complex(n + 1, Ring::Q)?;
            let mut json_rows = Vec::new();
            let mut text = String::new();
            for d in 1..=n {
                let weights = hodge_decomposition(&cx, d)?;
                let total: usize = weights.iter().sum();
                text.push_str(&format!("HH_{d}: weights {weights:?}, total {total}\n"));
                json_rows.push(json!({"degree": d, "weights": weights, "total": total}));
            }
            (Value::from(json_rows), text)
        }
        Target::Grillet => {
            let reports = grillet_report(&c, &module()?, n, direction)?;
            let text = reports
                .iter()
                .map(|r| {
                    let path = serde_json::to_value(r.path).expect("path serialises");
                    format!("D_{} = {} ({})\n", r.degree, r.group, path.as_str().unwrap_or(""))
                })
                .collect();
            (serde_json::to_value(&reports).expect("reports serialise"), text)
        }
        Target::Omega => {
            let p = omega(&c);
            let values = tabulate_presented(&p).values();
            let text = values.iter().enumerate().map(|(a, g)| format!("Omega({a}) = {g}\n")).collect();
            (json!({"values": values, "presentation": presented_value(&p)}), text)
        }
        Target::Der => {
            let g = derivations(&c, &module()?)?.group;
            (json!({"group": g}), format!("Der = {g}\n"))
        }
        Target::Tensor => {
            let left = match &args.with {
                Some(d) => d.parse::<Coefficient>()?.module(&c, Side::Left)?,
                None => tabulate_presented(&omega(&c)).module,
            };
            let g = tensor_quotients(&module()?, &left)?;
            (json!({"group": g}), format!("N ⊗ M = {g}\n"))
        }
        Target::Complex => {
            let cx = complex(n, ring)?;
            let dims: Vec<String> = (0..=n).map(|d| cx.dim(d).to_string()).collect();
            (cx.to_json(), format!("dims {}\n", dims.join(" ")))
        }
    };
    let target = Target::to_possible_value(&args.target).expect("no skipped variants");
    match args.common.format {
        Format::Text => emit(&args.common, &text),
        Format::Json => {
            let report = json!({
                "command": "compute",
                "target": target.get_name(),
                "monoid": monoid_label,
                "coeff": args.coeff,
                "ring": ring.as_str(),
                "direction": direction.as_str(),
                "max_degree": n,
                "results": results,
            });
            emit(&args.common, &(canonical_string(&report) + "\n"))
        }
    }
}

fn verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for c in &report.checks {
        let verdict = if c.pass { "PASS" } else { "FAIL" };
        out.push_str(&format!("{verdict} {} ({} cases) — {}\n", c.name, c.cases, c.anchor));
        for f in &c.failures {
            out.push_str(&format!("  failed {f}\n"));
        }
    }
    out.push_str(if report.pass { "all checks passed\n" } else { "some checks failed\n" });
    out
}

/// Returns whether every check passed.
fn verify(args: &VerifyArgs) -> Result<bool> {
    let mut opts = VerifyOptions {
        budget: budget(args.common.budget)?,
        ..VerifyOptions::default()
    };
    if let Some(src) = &args.monoid {
        let (label, c) = load_monoid(src)?;
        opts.monoids = vec![SuiteMonoid::new(label, c)];
    }
    let report = run_suite(&args.suite, &opts, |name, t| {
        eprintln!("timing {name} {:.3} s", t.as_secs_f64());
    })?;
    let text = match args.common.format {
        Format::Text => verify_text(&report),
        Format::Json => {
            canonical_string(&serde_json::to_value(&report).expect("report serialises")) + "\n"
        }
    };
    emit(&args.common, &text)?;
    Ok(report.pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Compute(a) => compute(a).map(|_| true),
        Command::Verify(a) => verify(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => {
            let obj = json!({"error": e.kind(), "message": e.to_string()});
            eprintln!("{}", canonical_string(&obj));
            ExitCode::from(exit_code(&e))
        }
    }
}
