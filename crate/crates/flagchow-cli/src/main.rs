//! Command-line surface of the engine: Schubert expansions, Bott-Chern
//! forms, arithmetic intersection tables, heights, the arithmetic Monk
//! formula, and the verification suites.
//!
//! Results go to stdout (JSON by default; `table` defaults to TSV) with
//! exact rationals rendered as `p/q` strings.  Timing goes to stderr so
//! identical requests produce byte-identical payloads.  Exit codes:
//! 0 ok, 1 verification failure, 2 usage error.

use clap::{Parser, Subcommand, ValueEnum};
use flagchow::bcform::{bc_powersum_filtration, bc_symmetric, bc_total_chern, FiltrationSpec};
use flagchow::chow::{arithmetic_degree, arithmetic_monk, degree_table, height_pluriplucker, monomial_class};
use flagchow::perm::{FlagType, Permutation};
use flagchow::poly::{schubert, symmetric_generator, SymmetricKind};
use flagchow::verify::run_suite;
use flagchow::{ambient_cap, rat};
use serde::Serialize;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "flagchow",
    version,
    about = "Exact arithmetic Schubert calculus on flag varieties over Spec Z"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format; `table` defaults to tsv, everything else to json
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the Schubert polynomial of a permutation in one-line notation
    Schubert {
        /// Permutation, e.g. 3,2,1
        #[arg(long)]
        perm: String,
    },
    /// Bott-Chern forms of the tautological hermitian filtration
    BottChern {
        #[arg(long)]
        n: u32,
        /// Flag type ranks, e.g. 1,2,3 (defaults to the complete flag)
        #[arg(long)]
        flag: Option<String>,
        /// Which form: `total`, `e<k>`, or `p<k>` (e.g. e2, p3)
        #[arg(long, default_value = "total")]
        phi: String,
    },
    /// Arithmetic degree of a monomial in the classes x̂_i
    Degree {
        #[arg(long)]
        n: u32,
        /// Exponents k_1,...,k_n with sum dim+1, e.g. 0,4,0
        #[arg(long)]
        exponents: String,
    },
    /// All arithmetic Chern numbers deg(x̂^k) at the top degree
    Table {
        #[arg(long)]
        n: u32,
        /// Add a column with 4·deg for textual diffs against references
        #[arg(long)]
        times4: bool,
    },
    /// Pluri-Pluecker height of the flag variety of the given type
    Height {
        /// Flag type ranks, e.g. 1,2,3
        #[arg(long)]
        flag: String,
    },
    /// Right-hand side of the arithmetic Monk formula for S_{s_k} · S_w
    Monk {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        k: u32,
        /// The permutation w in one-line notation
        #[arg(long)]
        perm: String,
    },
    /// Run the property verification suites
    Verify {
        /// One of: perm, poly, forms, bcform, chow, all
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "n-max", default_value_t = 3)]
        n_max: u32,
    },
}

#[derive(Serialize)]
struct Report {
    status: &'static str,
    payload: serde_json::Value,
    elapsed_ms: u128,
}

fn usage_error(msg: &str) -> ! {
    eprintln!("error: {msg}");
    std::process::exit(2);
}

fn main() {
    let cli = Cli::parse();
    let start = Instant::now();
    let (payload, format, failed_checks) = match dispatch(&cli) {
        Ok(v) => v,
        Err(e) => usage_error(&e.to_string()),
    };
    let report = Report {
        status: if failed_checks { "verification-failure" } else { "ok" },
        payload,
        elapsed_ms: start.elapsed().as_millis(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.payload).unwrap()),
        Format::Tsv => print_tsv(&report.payload),
    }
    eprintln!("{} in {} ms", report.status, report.elapsed_ms);
    if failed_checks {
        std::process::exit(1);
    }
}

fn print_tsv(payload: &serde_json::Value) {
    match payload {
        serde_json::Value::Array(rows) => {
            for row in rows {
                match row {
                    serde_json::Value::Array(cells) => {
                        let line: Vec<String> = cells
                            .iter()
                            .map(|c| match c {
                                serde_json::Value::String(s) => s.clone(),
                                other => other.to_string(),
                            })
                            .collect();
                        println!("{}", line.join("\t"));
                    }
                    other => println!("{other}"),
                }
            }
        }
        serde_json::Value::String(s) => println!("{s}"),
        other => println!("{other}"),
    }
}

type Dispatched = (serde_json::Value, Format, bool);

fn dispatch(cli: &Cli) -> flagchow::Result<Dispatched> {
    let cap = ambient_cap();
    match &cli.command {
        Command::Schubert { perm } => {
            let w = Permutation::parse(perm)?;
            let s = schubert(&w);
            let payload = serde_json::json!({
                "perm": w.to_string(),
                "polynomial": s.to_string(),
            });
            Ok((payload, cli.format.unwrap_or(Format::Json), false))
        }
        Command::BottChern { n, flag, phi } => {
            check_n(*n, cap.min(8))?;
            let r = match flag {
                Some(f) => {
                    let r = FlagType::parse(f)?;
                    if r.n() != *n {
                        return Err(flagchow::Error::InvalidFlagType(format!(
                            "flag {r} does not end at n = {n}"
                        )));
                    }
                    r
                }
                None => FlagType::complete(*n),
            };
            let sp = FiltrationSpec::new(r.clone());
            let form = match parse_phi(phi, *n)? {
                Phi::Total => bc_total_chern(&sp)?,
                Phi::Elementary(k) => {
                    bc_symmetric(&sp, &symmetric_generator(SymmetricKind::Elementary, k, *n as usize))?
                }
                Phi::PowerSum(k) => bc_powersum_filtration(&sp, k)?,
            };
            let payload = serde_json::json!({
                "n": n,
                "flag": r.to_string(),
                "phi": phi,
                "form": form.render(true),
            });
            Ok((payload, cli.format.unwrap_or(Format::Json), false))
        }
        Command::Degree { n, exponents } => {
            check_n(*n, cap.min(8))?;
            let exps = parse_exponents(exponents, *n)?;
            let r = FlagType::complete(*n);
            let d = arithmetic_degree(&monomial_class(&exps, &r)?)?;
            let payload = serde_json::json!({
                "n": n,
                "exponents": exponents,
                "degree": d.to_string(),
            });
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => Ok((payload, Format::Json, false)),
                Format::Tsv => Ok((serde_json::Value::String(d.to_string()), Format::Tsv, false)),
            }
        }
        Command::Table { n, times4 } => {
            check_n(*n, cap.min(6))?;
            let table = degree_table(*n)?;
            let format = cli.format.unwrap_or(Format::Tsv);
            let rows: Vec<serde_json::Value> = table
                .iter()
                .map(|(exps, d)| {
                    let key = exps
                        .iter()
                        .map(|e| e.to_string())
                        .collect::<Vec<_>>()
                        .join(",");
                    let mut cells = vec![
                        serde_json::Value::String(key),
                        serde_json::Value::String(d.to_string()),
                    ];
                    if *times4 {
                        cells.push(serde_json::Value::String((d.clone() * rat(4)).to_string()));
                    }
                    serde_json::Value::Array(cells)
                })
                .collect();
            let payload = match format {
                Format::Tsv => serde_json::Value::Array(rows),
                Format::Json => {
                    let objs: Vec<serde_json::Value> = table
                        .iter()
                        .map(|(exps, d)| {
                            let key = exps
                                .iter()
                                .map(|e| e.to_string())
                                .collect::<Vec<_>>()
                                .join(",");
                            let mut obj = serde_json::json!({
                                "exponents": key,
                                "degree": d.to_string(),
                            });
                            if *times4 {
                                obj["times4"] =
                                    serde_json::Value::String((d.clone() * rat(4)).to_string());
                            }
                            obj
                        })
                        .collect();
                    serde_json::Value::Array(objs)
                }
            };
            Ok((payload, format, false))
        }
        Command::Height { flag } => {
            let r = FlagType::parse(flag)?;
            check_n(r.n(), cap.min(8))?;
            let h = height_pluriplucker(&r)?;
            let payload = serde_json::json!({
                "flag": r.to_string(),
                "height": h.to_string(),
            });
            match cli.format.unwrap_or(Format::Json) {
                Format::Json => Ok((payload, Format::Json, false)),
                Format::Tsv => Ok((serde_json::Value::String(h.to_string()), Format::Tsv, false)),
            }
        }
        Command::Monk { n, k, perm } => {
            check_n(*n, cap.min(8))?;
            let w = Permutation::parse(perm)?;
            let r = FlagType::complete(*n);
            let rhs = arithmetic_monk(*k, &w, &r)?;
            let payload = serde_json::json!({
                "n": n,
                "k": k,
                "w": w.to_string(),
                "class": rhs.to_json(),
            });
            Ok((payload, cli.format.unwrap_or(Format::Json), false))
        }
        Command::Verify { suite, n_max } => {
            check_n(*n_max, cap.min(8))?;
            let checks = run_suite(suite, *n_max)?;
            let failed = checks.iter().filter(|c| !c.passed).count();
            let list: Vec<serde_json::Value> = checks
                .iter()
                .map(|c| {
                    serde_json::json!({
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                    })
                })
                .collect();
            let payload = serde_json::json!({
                "suite": suite,
                "n_max": n_max,
                "checks": list,
                "failed": failed,
            });
            Ok((payload, cli.format.unwrap_or(Format::Json), failed > 0))
        }
    }
}

enum Phi {
    Total,
    Elementary(u32),
    PowerSum(u32),
}

fn parse_phi(s: &str, n: u32) -> flagchow::Result<Phi> {
    if s == "total" {
        return Ok(Phi::Total);
    }
    let (kind, num) = s.split_at(1);
    let k: u32 = num
        .parse()
        .map_err(|_| flagchow::Error::Unsupported(format!("cannot parse phi {s:?}")))?;
    if k == 0 || k > n {
        return Err(flagchow::Error::Unsupported(format!(
            "phi index must lie in 1..={n}"
        )));
    }
    match kind {
        "e" => Ok(Phi::Elementary(k)),
        "p" => Ok(Phi::PowerSum(k)),
        _ => Err(flagchow::Error::Unsupported(format!(
            "phi must be `total`, `e<k>`, or `p<k>`, got {s:?}"
        ))),
    }
}

fn parse_exponents(s: &str, n: u32) -> flagchow::Result<Vec<u16>> {
    let exps: Vec<u16> = s
        .split(',')
        .map(|t| t.trim().parse::<u16>())
        .collect::<Result<_, _>>()
        .map_err(|_| flagchow::Error::Arity(format!("cannot parse exponents {s:?}")))?;
    if exps.len() != n as usize {
        return Err(flagchow::Error::Arity(format!(
            "expected {n} exponents, got {}",
            exps.len()
        )));
    }
    Ok(exps)
}

fn check_n(n: u32, cap: u32) -> flagchow::Result<()> {
    if n == 0 {
        return Err(flagchow::Error::InvalidFlagType("n must be positive".into()));
    }
    if n > cap {
        return Err(flagchow::Error::CapExceeded(n, cap));
    }
    Ok(())
}
