use std::fmt::Write as _;
use std::process::ExitCode;

use bellpfi::boson::{normal_order, parse};
use bellpfi::combinatorics::{bell, bell_polynomial, enumerate_partitions, graph_to_dot, stirling2, BellGraph, StirlingTable};
use bellpfi::egf::{EgfSeries, SeriesJson};
use bellpfi::exact::{format_rational, parse_rational, to_f64, ExactRational};
use bellpfi::numfmt::format_sig;
use bellpfi::pf::{
    free_gas_pfi, su11_disentangle, su11_pfi, su11_vn_series, FreeGasParams, Model, Su11Params, ZEstimate,
    ZMethodRegistry,
};
use bellpfi::verify::{CheckRegistry, Suite};
use bellpfi::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bellpfi", version, about = "Bell numbers, boson normal ordering and partition-function integrands")]
struct Cli {
    /// Significant digits for floating-point output.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u8).range(1..=17))]
    precision: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Bell number B(n).
    Bell {
        #[arg(long)]
        n: usize,
    },
    /// Stirling numbers of the second kind: S(n, k), or the row S(n, 1..=n).
    Stirling {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        k: Option<i64>,
    },
    /// Bell polynomial B_n(y).
    Bellpoly {
        #[arg(long)]
        n: usize,
    },
    /// Set partitions of {1..n} in canonical order, or their Bell graphs as DOT.
    Graphs {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        dot: bool,
    },
    /// Normal-ordered form of an operator expression over `a` and `ad`.
    NormalOrder {
        #[arg(long)]
        expr: String,
    },
    /// Exponential of an egf given by comma-separated coefficients a_0, a_1, ...
    EgfExp {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
        coeffs: Vec<ExactRational>,
    },
    /// Logarithm of an egf given by comma-separated coefficients a_0, a_1, ...
    EgfLog {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, value_parser = rational_arg)]
        coeffs: Vec<ExactRational>,
    },
    /// Partition-function integrand F(x, z).
    Pfi {
        #[command(subcommand)]
        model: PfiModel,
    },
    /// Exact vertex multipliers V_n(y) of the superfluid integrand, y = z^2.
    Vn {
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        c1: ExactRational,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        c2: ExactRational,
        #[arg(long)]
        order: usize,
    },
    /// Partition function Z by one or more registered methods.
    Z {
        #[command(subcommand)]
        model: ZModel,
    },
    /// Cross-oracle checks as JSON lines.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
    },
}

#[derive(Subcommand)]
enum PfiModel {
    /// exp(|z|^2 (e^x - 1)) with x = -beta*eps.
    Free {
        #[arg(long, value_parser = rational_arg)]
        beta_eps: ExactRational,
        #[command(flatten)]
        z: ZArg,
    },
    /// Disentangled superfluid integrand.
    Su11 {
        #[command(flatten)]
        c: Su11Args,
        #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
        x: ExactRational,
        #[command(flatten)]
        z: ZArg,
    },
}

#[derive(Subcommand)]
enum ZModel {
    Free {
        #[command(flatten)]
        table: ZTable,
    },
    Su11 {
        #[command(flatten)]
        c: Su11Args,
        #[command(flatten)]
        table: ZTable,
    },
}

#[derive(Args)]
struct ZArg {
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = rational_arg)]
    z: ExactRational,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = rational_arg)]
    z_im: ExactRational,
}

#[derive(Args)]
struct Su11Args {
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    c1: ExactRational,
    #[arg(long, default_value = "0", allow_hyphen_values = true, value_parser = rational_arg)]
    c1_im: ExactRational,
    #[arg(long, allow_hyphen_values = true, value_parser = rational_arg)]
    c2: ExactRational,
}

#[derive(Args)]
struct ZTable {
    /// One or more comma-separated values of beta*eps.
    #[arg(long, value_delimiter = ',', required = true, value_parser = rational_arg)]
    beta_eps: Vec<ExactRational>,
    /// A registered method name, or `all` for every method applicable to the model.
    #[arg(long, default_value = "all")]
    method: String,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    All,
}

fn rational_arg(s: &str) -> std::result::Result<ExactRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

struct Output {
    text: String,
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            println!("{}", json!({ "error": e.kind(), "message": e.to_string() }));
            ExitCode::from(1)
        }
    }
}

fn line(v: impl std::fmt::Display) -> String {
    format!("{v}\n")
}

fn run(cli: &Cli) -> Result<Output> {
    let digits = cli.precision as usize;
    let num = |v: f64| -> Value { serde_json::from_str(&format_sig(v, digits)).unwrap_or(Value::Null) };
    let complex = |c: Complex64| -> Value { json!([num(c.re), num(c.im)]) };
    let text = match &cli.command {
        Command::Bell { n } => line(bell(*n)),
        Command::Stirling { n, k: Some(k) } => line(stirling2(*n, *k)),
        Command::Stirling { n, k: None } => {
            let table = StirlingTable::new(*n);
            line(table.row(*n).iter().map(ToString::to_string).collect::<Vec<_>>().join(" "))
        }
        Command::Bellpoly { n } => line(bell_polynomial(*n)),
        Command::Graphs { n, dot } => {
            let mut out = String::new();
            for (i, p) in enumerate_partitions(*n)?.enumerate() {
                if *dot {
                    out.push_str(&graph_to_dot(&BellGraph::new(p), &format!("g{}", i + 1)));
                } else {
                    let _ = writeln!(out, "{}", serde_json::to_string(p.blocks()).expect("serializable"));
                }
            }
            out
        }
        Command::NormalOrder { expr } => {
            let poly = normal_order(&parse(expr)?);
            line(serde_json::to_string(&poly).expect("serializable"))
        }
        Command::EgfExp { coeffs } => series_line(&EgfSeries::new(coeffs.clone())?.exp()?),
        Command::EgfLog { coeffs } => series_line(&EgfSeries::new(coeffs.clone())?.log()?),
        Command::Pfi { model: PfiModel::Free { beta_eps, z } } => {
            let p = FreeGasParams::new(to_f64(beta_eps))?;
            let zv = z_value(z);
            line(json!({
                "model": "free",
                "beta_eps": format_rational(beta_eps),
                "z": [format_rational(&z.z), format_rational(&z.z_im)],
                "value": num(free_gas_pfi(p.x(), zv)),
            }))
        }
        Command::Pfi { model: PfiModel::Su11 { c, x, z } } => {
            let p = Su11Params::new(c1_value(c), to_f64(&c.c2), to_f64(x));
            let zv = z_value(z);
            let d = su11_disentangle(p)?;
            line(json!({
                "model": "su11",
                "c1": [format_rational(&c.c1), format_rational(&c.c1_im)],
                "c2": format_rational(&c.c2),
                "x": format_rational(x),
                "z": [format_rational(&z.z), format_rational(&z.z_im)],
                "mu": complex(d.mu),
                "y1": complex(d.y1),
                "y2": complex(d.y2),
                "residual": num(d.residual),
                "value": complex(su11_pfi(p, zv)?),
            }))
        }
        Command::Vn { c1, c2, order } => {
            let s = su11_vn_series(c1, c2, *order);
            let vn: Vec<Value> = s
                .vn
                .iter()
                .enumerate()
                .map(|(i, v)| json!({ "n": i + 1, "poly": v, "text": v.to_string() }))
                .collect();
            line(json!({
                "model": "su11",
                "c1": format_rational(c1),
                "c2": format_rational(c2),
                "order": order,
                "Vn": vn,
            }))
        }
        Command::Z { model } => {
            let (models, table): (Vec<(String, Model)>, &ZTable) = match model {
                ZModel::Free { table } => (
                    table
                        .beta_eps
                        .iter()
                        .map(|b| Ok((format_rational(b), Model::FreeGas(FreeGasParams::new(to_f64(b))?))))
                        .collect::<Result<_>>()?,
                    table,
                ),
                ZModel::Su11 { c, table } => (
                    table
                        .beta_eps
                        .iter()
                        .map(|b| {
                            (format_rational(b), Model::Su11(Su11Params::new(c1_value(c), to_f64(&c.c2), -to_f64(b))))
                        })
                        .collect(),
                    table,
                ),
            };
            z_table(&models, table, digits)?
        }
        Command::Verify { suite } => {
            let suite = match suite {
                SuiteArg::Fast => Suite::Fast,
                SuiteArg::All => Suite::All,
            };
            let records = CheckRegistry::with_defaults().run_suite(suite);
            let mut out = String::new();
            for r in &records {
                let mut v = serde_json::to_value(r).expect("serializable");
                v["value"] = if r.value.is_finite() { num(r.value) } else { Value::Null };
                v["tolerance"] = num(r.tolerance);
                let _ = writeln!(out, "{v}");
            }
            return Ok(Output { text: out, failed: records.iter().any(|r| !r.pass) });
        }
    };
    Ok(Output::ok(text))
}

fn series_line(s: &EgfSeries) -> String {
    line(serde_json::to_string(&SeriesJson::from(s)).expect("serializable"))
}

fn z_value(z: &ZArg) -> Complex64 {
    Complex64::new(to_f64(&z.z), to_f64(&z.z_im))
}

fn c1_value(c: &Su11Args) -> Complex64 {
    Complex64::new(to_f64(&c.c1), to_f64(&c.c1_im))
}

fn z_table(models: &[(String, Model)], table: &ZTable, digits: usize) -> Result<String> {
    let registry = ZMethodRegistry::with_defaults();
    let explicit = table.method != "all";
    let methods = if explicit { vec![registry.get(&table.method)?] } else {
        registry.names().into_iter().map(|n| registry.get(n)).collect::<Result<_>>()?
    };
    let mut rows: Vec<(&str, &str, ZEstimate)> = Vec::new();
    for (label, model) in models {
        for m in &methods {
            match m.evaluate(model, table.tol) {
                Ok(est) => rows.push((model.name(), label, est)),
                Err(Error::Unsupported { .. }) if !explicit => {}
                Err(e) => return Err(e),
            }
        }
    }
    let fmt = |v: Option<f64>| v.map(|v| format_sig(v, digits)).unwrap_or_default();
    let mut out = String::new();
    match table.format {
        Format::Csv => {
            out.push_str("model,beta_eps,method,value,error,dim\n");
            for (model, label, e) in &rows {
                let dim = e.dim.map(|d| d.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{model},{label},{},{},{},{dim}", e.method, fmt(Some(e.value)), fmt(e.error));
            }
        }
        Format::Json => {
            let num = |v: f64| -> Value { serde_json::from_str(&format_sig(v, digits)).unwrap_or(Value::Null) };
            for (model, label, e) in &rows {
                let record = json!({
                    "model": model,
                    "beta_eps": label,
                    "method": e.method,
                    "value": num(e.value),
                    "error": e.error.map(num),
                    "dim": e.dim,
                });
                let _ = writeln!(out, "{record}");
            }
        }
    }
    Ok(out)
}
