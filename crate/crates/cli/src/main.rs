use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use metabelian::expr::{parse_automorphism, parse_element, parse_images};
use metabelian::harness::{self, Equation, SuiteOptions};
use metabelian::{basis, bullet, star_act, Coset, Endomorphism, GroupContext, IntMatrix};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "metab", version, about = "Exact computations in free metabelian groups")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Number of generators.
    #[arg(long, global = true, env = "METAB_RANK", default_value_t = 3)]
    rank: usize,
    /// Lower central weight `c`.
    #[arg(long, global = true, default_value_t = 3)]
    weight: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// An automorphism given either as an image file or as a product of named maps.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct MapSource {
    /// File with one image per line, `x_1` first.
    #[arg(long)]
    auto: Option<PathBuf>,
    /// Product of named maps, e.g. "pi(1,2) * tau(3,1,2)^-1".
    #[arg(long)]
    zoo: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form, abelianization and Fox row of an element.
    Eval { expr: String },
    /// Lower central depth of an element, or Andreadakis depth of an automorphism.
    Depth {
        expr: Option<String>,
        #[arg(long, conflicts_with = "expr")]
        auto: Option<PathBuf>,
        #[arg(long, conflicts_with_all = ["expr", "auto"])]
        zoo: Option<String>,
    },
    /// Fox Jacobian, its determinant and the automorphism test.
    Jacobian {
        #[command(flatten)]
        map: MapSource,
    },
    /// Images of the inverse automorphism.
    Invert {
        #[command(flatten)]
        map: MapSource,
    },
    /// The graded image of an automorphism of depth at least `--weight`.
    Chi {
        #[command(flatten)]
        map: MapSource,
    },
    /// Compares the two integral linear actions on a coset.
    Act {
        #[command(flatten)]
        map: MapSource,
        /// Rows separated by ';', entries by ',', e.g. "0,1;1,0".
        #[arg(long)]
        matrix: String,
    },
    /// Basic commutators of weight `--weight`.
    Basis,
    /// Rank of the graded quotient and the span dimensions.
    Ranks,
    /// Checks one identity family under every reading.
    VerifyEquation {
        id: String,
        /// Skip the alternative readings.
        #[arg(long)]
        printed_only: bool,
    },
    /// Runs every check and reports a verdict per check.
    VerifySuite {
        /// Samples per randomized check.
        #[arg(long, default_value_t = 20)]
        samples: usize,
        /// Record wall-clock milliseconds per check (breaks byte stability).
        #[arg(long)]
        timings: bool,
    },
}

struct Report {
    json: Value,
    text: String,
    ok: bool,
}

impl Report {
    fn ok(json: Value, text: String) -> Report {
        Report { json, text, ok: true }
    }
}

type Outcome = Result<Report, String>;

fn context(n: usize) -> Result<GroupContext, String> {
    GroupContext::new(n).map_err(|e| e.to_string())
}

fn load_map(ctx: GroupContext, auto: Option<&PathBuf>, zoo: Option<&str>) -> Result<Endomorphism, String> {
    if let Some(path) = auto {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let images = parse_images(&text, ctx).map_err(|e| format!("{}: {e}", path.display()))?;
        return Endomorphism::from_images(ctx, images).map_err(|e| e.to_string());
    }
    parse_automorphism(zoo.unwrap_or_default(), ctx).map_err(|e| e.to_string())
}

fn source(ctx: GroupContext, m: &MapSource) -> Result<Endomorphism, String> {
    load_map(ctx, m.auto.as_ref(), m.zoo.as_deref())
}

fn images_json(f: &Endomorphism) -> Value {
    json!(f.images().iter().map(|w| w.to_string()).collect::<Vec<_>>())
}

fn parse_matrix(text: &str, n: usize) -> Result<IntMatrix, String> {
    let rows: Vec<Vec<i64>> = text
        .split(';')
        .map(|r| r.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()
        .map_err(|e| format!("matrix entry: {e}"))?;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(format!("matrix must be {n}x{n}"));
    }
    let g = IntMatrix::from_rows(&rows);
    if !g.is_unimodular() {
        return Err("matrix is not in GL_n(Z)".into());
    }
    Ok(g)
}

fn eval(c: &Common, expr: &str) -> Outcome {
    let ctx = context(c.rank)?;
    let w = parse_element(expr, ctx).map_err(|e| e.to_string())?;
    let ab = w.abelianization().as_slice().to_vec();
    let fox: Vec<String> = w.fox_row().iter().map(|p| p.to_string()).collect();
    let mut text = format!("normal form: {w}\nabelianization: {ab:?}\n");
    for (k, p) in fox.iter().enumerate() {
        text.push_str(&format!("d{}: {p}\n", k + 1));
    }
    let json = json!({ "element": w.to_string(), "abelianization": ab, "fox": fox });
    Ok(Report::ok(json, text))
}

fn depth(c: &Common, expr: Option<&str>, auto: Option<&PathBuf>, zoo: Option<&str>) -> Outcome {
    let ctx = context(c.rank)?;
    let (kind, d) = match expr {
        Some(e) => {
            let w = parse_element(e, ctx).map_err(|e| e.to_string())?;
            ("element", w.gamma_depth())
        }
        None if auto.is_some() || zoo.is_some() => {
            let f = load_map(ctx, auto, zoo)?;
            ("automorphism", f.ia_depth().map_err(|e| e.to_string())?)
        }
        None => return Err("depth needs an element or --auto/--zoo".into()),
    };
    Ok(Report::ok(json!({ "kind": kind, "depth": d }), format!("{d}\n")))
}

fn jacobian(c: &Common, m: &MapSource) -> Outcome {
    let f = source(context(c.rank)?, m)?;
    let j = f.jacobian();
    let det = f.det();
    let auto = f.is_automorphism().map_err(|e| e.to_string())?;
    let rows: Vec<Vec<String>> = (0..j.dim())
        .map(|i| j.row(i).iter().map(|p| p.to_string()).collect())
        .collect();
    let text = format!("{j}det: {det}\nautomorphism: {auto}\n");
    let json = json!({ "jacobian": rows, "det": det.to_string(), "is_automorphism": auto, "is_ia": f.is_ia() });
    Ok(Report::ok(json, text))
}

fn invert(c: &Common, m: &MapSource) -> Outcome {
    let f = source(context(c.rank)?, m)?;
    let g = f.inverse().map_err(|e| e.to_string())?;
    Ok(Report::ok(json!({ "inverse": images_json(&g) }), format!("{g}\n")))
}

fn chi(c: &Common, m: &MapSource) -> Outcome {
    let f = source(context(c.rank)?, m)?;
    let t = f.chi(c.weight).map_err(|e| e.to_string())?;
    Ok(Report::ok(json!({ "weight": c.weight, "chi": t }), format!("{t}\n")))
}

fn act(c: &Common, m: &MapSource, matrix: &str) -> Outcome {
    let f = source(context(c.rank)?, m)?;
    let g = parse_matrix(matrix, c.rank)?;
    let run = || -> metabelian::Result<_> {
        let coset = Coset::new(f, c.weight)?;
        let star = star_act(&g, &coset)?.chi()?;
        let bul = bullet(&g, &coset.chi()?)?;
        Ok((star, bul))
    };
    let (star, bul) = run().map_err(|e| e.to_string())?;
    let agree = star == bul;
    let text = format!("star:   {star}\nbullet: {bul}\nagree: {agree}\n");
    let json = json!({ "weight": c.weight, "star": star, "bullet": bul, "agree": agree });
    Ok(Report { json, text, ok: agree })
}

fn basis_cmd(c: &Common) -> Outcome {
    context(c.rank)?;
    let b = basis(c.rank, c.weight);
    let names: Vec<String> = b.iter().map(|x| x.to_string()).collect();
    let mut text = format!("{} basic commutators of weight {}\n", names.len(), c.weight);
    for s in &names {
        text.push_str(s);
        text.push('\n');
    }
    Ok(Report::ok(
        json!({ "rank": c.rank, "weight": c.weight, "size": names.len(), "basis": names }),
        text,
    ))
}

fn ranks(c: &Common) -> Outcome {
    let r = harness::rank_report(c.rank, c.weight);
    let expected = &r.params["expected"];
    let computed = &r.params["computed"];
    let cell = |v: &Value, k: &str| match &v[k] {
        Value::Null => "-".to_string(),
        x => x.to_string(),
    };
    let mut text = format!("{:<8}{:>10}{:>10}\n", "", "expected", "computed");
    for k in ["gr", "total", "pq", "r"] {
        let label = match k {
            "pq" => "P+Q",
            "r" => "R",
            _ => k,
        };
        text.push_str(&format!(
            "{:<8}{:>10}{:>10}\n",
            label,
            cell(expected, k),
            cell(computed, k)
        ));
    }
    let ok = r.passed();
    Ok(Report {
        json: serde_json::to_value(&r).expect("serializable"),
        text,
        ok,
    })
}

fn report_line(r: &harness::VerdictReport) -> String {
    let status = serde_json::to_value(r.status).expect("serializable");
    let mut line = format!("{:<8} {}", status.as_str().unwrap_or("?"), r.check);
    if let Some(v) = &r.variant {
        line.push_str(&format!(" [{v}]"));
    }
    line.push_str(&format!(" {}", r.params));
    if let Some(w) = &r.witness {
        line.push_str(&format!("\n         witness: {w}"));
    }
    line.push('\n');
    line
}

fn verify_equation(c: &Common, id: &str, printed_only: bool) -> Outcome {
    let eq = Equation::parse(id).ok_or_else(|| format!("unknown identity {id:?}"))?;
    let mut reports = harness::equation_reports(eq, c.rank, c.weight);
    if printed_only {
        reports.truncate(1);
    }
    let ok = reports.iter().any(|r| r.status != harness::Status::Fail);
    let text = reports.iter().map(report_line).collect();
    Ok(Report {
        json: serde_json::to_value(&reports).expect("serializable"),
        text,
        ok,
    })
}

fn verify_suite(c: &Common, samples: usize, timings: bool) -> Outcome {
    let opts = SuiteOptions {
        rank: c.rank,
        weight: c.weight,
        seed: c.seed,
        samples,
        timings,
    };
    let suite = harness::verify_suite(&opts);
    let mut text: String = suite.reports.iter().map(report_line).collect();
    let failures = suite.failures();
    text.push_str(&format!(
        "{} checks, {} unrescued failures\n",
        suite.reports.len(),
        failures.len()
    ));
    for f in &failures {
        text.push_str(&format!("FAILED {}\n", f.check));
    }
    let json: Value = serde_json::from_str(&suite.to_json()).expect("suite json");
    Ok(Report {
        json,
        text,
        ok: suite.ok(),
    })
}

fn run(cli: &Cli) -> Outcome {
    let c = &cli.common;
    match &cli.command {
        Command::Eval { expr } => eval(c, expr),
        Command::Depth { expr, auto, zoo } => depth(c, expr.as_deref(), auto.as_ref(), zoo.as_deref()),
        Command::Jacobian { map } => jacobian(c, map),
        Command::Invert { map } => invert(c, map),
        Command::Chi { map } => chi(c, map),
        Command::Act { map, matrix } => act(c, map, matrix),
        Command::Basis => basis_cmd(c),
        Command::Ranks => ranks(c),
        Command::VerifyEquation { id, printed_only } => verify_equation(c, id, *printed_only),
        Command::VerifySuite { samples, timings } => verify_suite(c, *samples, *timings),
    }
}

fn emit(c: &Common, r: &Report) -> std::io::Result<()> {
    let body = match c.format {
        Format::Json => serde_json::to_string_pretty(&r.json).expect("serializable") + "\n",
        Format::Text => r.text.clone(),
    };
    match &c.out {
        Some(path) => fs::write(path, body),
        None => std::io::stdout().write_all(body.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(r) => {
            if let Err(e) = emit(&cli.common, &r) {
                eprintln!("metab: {e}");
                return ExitCode::from(2);
            }
            if r.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("metab: {e}");
            ExitCode::from(2)
        }
    }
}
