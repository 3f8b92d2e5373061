//! `qrr`: expand q-series expressions, verify identities, dissect series and
//! check colored-partition relations.
//!
//! Exit status: 0 when every check passes, 1 when a verification fails,
//! 2 on usage, parse or evaluation errors.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::Rational64;

use qrr::partitions::{PartitionData, ENUM_CAP};
use qrr::registry::{self, Group, Registry};
use qrr::report::{self, CountRow, Item, Report};
use qrr::{evaluate, LATTICE};

#[derive(Parser)]
#[command(
    name = "qrr",
    version,
    about = "Exact q-series expansion and identity verification"
)]
struct Cli {
    /// Truncation order in fifths of q (200 means exact below q^40).
    #[arg(
        long,
        global = true,
        default_value_t = 200,
        allow_negative_numbers = true
    )]
    order: i64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of an expression below the truncation order.
    Expand {
        expr: String,
        /// Also list zero coefficients.
        #[arg(long)]
        dense: bool,
    },
    /// Verify one catalogue entry or an ad hoc pair of expressions.
    Verify(VerifyArgs),
    /// Verify every catalogue entry, or one group.
    VerifyAll {
        #[arg(long)]
        group: Option<Group>,
        /// Worker threads; 1 runs serially. Defaults to all cores.
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Keep the terms q^n of an expression with n = residue (mod modulus).
    Dissect {
        expr: String,
        modulus: u32,
        residue: u32,
        /// Also list zero coefficients in the residue class.
        #[arg(long)]
        dense: bool,
    },
    /// Check partition relations or tabulate counts for one spec.
    Partitions {
        #[arg(long, conflicts_with = "spec")]
        theorem: Option<String>,
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 100)]
        max_n: u64,
    },
    /// List catalogue entries.
    List {
        #[arg(long)]
        group: Option<Group>,
    },
}

#[derive(Args)]
#[group(required = true)]
struct VerifyArgs {
    /// Catalogue id, e.g. t1-1.
    #[arg(long, conflicts_with_all = ["lhs", "rhs"])]
    id: Option<String>,
    #[arg(long, requires = "rhs")]
    lhs: Option<String>,
    #[arg(long, requires = "lhs")]
    rhs: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let command: Vec<String> = std::env::args().skip(1).collect();
    match run(&cli, command) {
        Ok(mut rep) => {
            rep.wall_time_ms = start.elapsed().as_millis() as u64;
            let out = match cli.format {
                Format::Text => rep.to_text(),
                Format::Json => rep.to_json() + "\n",
                Format::Csv => rep.to_csv(),
            };
            print!("{out}");
            if rep.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: &Cli, command: Vec<String>) -> qrr::Result<Report> {
    let order = cli.order;
    let mut rep = Report::new(command, Some(order));
    match &cli.command {
        Command::Expand { expr, dense } => {
            let reg = Registry::load_default()?;
            let v = evaluate(&reg.parse(expr)?, order)?.to_fifths();
            rep.items.push(Item::Expansion {
                expr: expr.clone(),
                exact_below: fifths(v.bound()),
                terms: report::table(&v, *dense),
            });
        }
        Command::Verify(args) => {
            let reg = Registry::load_default()?;
            let item = match (&args.id, &args.lhs, &args.rhs) {
                (Some(id), _, _) => Item::verification(&reg.verify(id, order)?, reg.get(id)?),
                (None, Some(lhs), Some(rhs)) => {
                    let start = Instant::now();
                    let (outcome, diagnostic) =
                        registry::verify_exprs(&reg.parse(lhs)?, &reg.parse(rhs)?, order)?;
                    Item::Verification {
                        id: None,
                        group: None,
                        lhs: lhs.clone(),
                        rhs: rhs.clone(),
                        order,
                        outcome: Some((&outcome).into()),
                        diagnostic,
                        error: None,
                        elapsed_ms: start.elapsed().as_millis() as u64,
                    }
                }
                _ => unreachable!("clap enforces the argument group"),
            };
            rep.items.push(item);
        }
        Command::VerifyAll { group, jobs } => {
            let reg = Registry::load_default()?;
            for v in reg.verify_all(order, *group, *jobs) {
                rep.items.push(Item::verification(&v, reg.get(&v.id)?));
            }
        }
        Command::Dissect {
            expr,
            modulus,
            residue,
            dense,
        } => {
            let reg = Registry::load_default()?;
            let v = evaluate(&reg.parse(expr)?, order)?.to_fifths();
            let integral = v.coarsen(1)?;
            let part = integral.dissect(*modulus, *residue)?;
            let terms = if *dense {
                let m = *modulus as i64;
                let first = integral.lo() + (*residue as i64 - integral.lo()).rem_euclid(m);
                let zero = num_bigint::BigInt::default();
                (first..integral.bound())
                    .step_by(*modulus as usize)
                    .map(|n| report::Term {
                        exponent_num: n,
                        exponent_den: 1,
                        coefficient: part.coeff(n).unwrap_or_else(|| zero.clone()).to_string(),
                    })
                    .collect()
            } else {
                report::table(&part, false)
            };
            rep.items.push(Item::Dissection {
                expr: expr.clone(),
                modulus: *modulus,
                residue: *residue,
                exact_below: fifths(integral.bound() * LATTICE as i64),
                terms,
            });
        }
        Command::Partitions {
            theorem,
            spec,
            max_n,
        } => {
            rep.order = None;
            let data = PartitionData::builtin()?;
            match (theorem, spec) {
                (_, Some(name)) => {
                    let s = data.spec(name)?;
                    let gf = s.gf_counts(*max_n);
                    let rows = (0..=*max_n)
                        .map(|n| {
                            Ok(CountRow {
                                n,
                                gf_count: gf[n as usize].to_string(),
                                enum_count: if n <= ENUM_CAP {
                                    Some(s.enum_count(n)?.to_string())
                                } else {
                                    None
                                },
                            })
                        })
                        .collect::<qrr::Result<_>>()?;
                    rep.items.push(Item::PartitionCounts {
                        spec: name.clone(),
                        rows,
                    });
                }
                (Some(id), None) => {
                    rep.items
                        .push(Item::relation(&data.verify_theorem(id, *max_n)?));
                }
                (None, None) => {
                    for t in data.theorems() {
                        rep.items
                            .push(Item::relation(&data.verify_theorem(&t.id, *max_n)?));
                    }
                }
            }
        }
        Command::List { group } => {
            rep.order = None;
            let reg = Registry::load_default()?;
            rep.items
                .extend(reg.list(*group).into_iter().map(Item::entry));
        }
    }
    Ok(rep)
}

fn fifths(k: i64) -> report::Exponent {
    Rational64::new(k, LATTICE as i64).into()
}
