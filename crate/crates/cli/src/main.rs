//! `holim`: run constructions and verifiers on category, functor and
//! diagram documents.
//!
//! Exit status is 0 on success, 1 when a verification fails and 2 on
//! input errors.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use holim_core::fincat::{FinCategory, FinFunctor};
use holim_core::groth::{hoc, hoc_overcategory_checks, thomason_cofiber_check};
use holim_core::holim::{theorem_a_bound, total_complex, verify_theorem_a, verify_theorem_b, Conn, Diagram};
use holim_core::io;
use holim_core::nerve::{degree_table, is_directed_reedy, nerve_chain_complex, nerve_dimension, Limits};
use holim_core::report::{homology_line, Report};
use holim_core::samples::{self, ComplexParams};
use holim_core::{Error, Result};
use rayon::prelude::*;

#[derive(Parser)]
#[command(name = "holim", version, about = "Finite categories, nerves and chain-level homotopy limits")]
struct Cli {
    /// Largest number of nerve simplices or total-complex generators to
    /// build (overrides HOLIM_MAX_SIMPLICES).
    #[arg(long, global = true)]
    max_simplices: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Random {
    /// Run a randomized suite of this many instances instead of reading input.
    #[arg(long)]
    random: Option<usize>,
    /// Seed of the randomized suite; instance k uses seed + k.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Check the axioms of a category, functor or diagram document.
    Validate {
        #[arg(long, conflicts_with_all = ["functor", "diagram"])]
        category: Option<String>,
        #[arg(long, conflicts_with = "diagram")]
        functor: Option<PathBuf>,
        #[arg(long)]
        diagram: Option<PathBuf>,
    },
    /// Dimension of the nerve; optionally write its chain complex.
    NerveDim {
        /// Category document or builtin name.
        #[arg(long)]
        shape: String,
        /// Write the normalized chain complex in the matrix text format.
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// deg(i) = dim N(C/i) for every object, and the directed Reedy check.
    Degree {
        #[arg(long)]
        shape: String,
    },
    /// The connectivity bound min_i (conn X_i − deg i).
    Bound {
        #[arg(long, required_unless_present = "diagram")]
        shape: Option<String>,
        /// Comma-separated `label=n` pairs; `inf` is allowed.
        #[arg(long, requires = "shape")]
        conn: Option<String>,
        #[arg(long, conflicts_with = "shape")]
        diagram: Option<PathBuf>,
    },
    /// Emit the cofiber category of a functor as a category document.
    Hoc {
        #[arg(long)]
        functor: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Compare reduced homology of N(hoc F) and of the cone of NF.
    Thomason {
        #[arg(long, required_unless_present = "random")]
        functor: Option<PathBuf>,
        /// Highest degree compared.
        #[arg(long, default_value_t = 3)]
        top: i64,
        #[command(flatten)]
        random: Random,
    },
    /// Over-category identities of the cofiber category.
    OverChecks {
        #[arg(long, required_unless_present = "random")]
        functor: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        top: i64,
        #[command(flatten)]
        random: Random,
    },
    /// Total complex of a diagram in the matrix text format.
    Total {
        #[arg(long)]
        diagram: PathBuf,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check H_k(Tot) = 0 below the connectivity bound.
    VerifyA {
        #[arg(long, required_unless_present = "random")]
        diagram: Option<PathBuf>,
        /// Print the homology of Tot in degrees -range ..= range.
        #[arg(long, default_value_t = 6)]
        range: i64,
        #[command(flatten)]
        random: Random,
    },
    /// Check that Tot over hoc F models the fiber of restriction along F.
    VerifyB {
        #[arg(long, required_unless_present = "random", requires = "diagram")]
        functor: Option<PathBuf>,
        #[arg(long, requires = "functor")]
        diagram: Option<PathBuf>,
        /// Compare homology in degrees -range ..= range.
        #[arg(long, default_value_t = 4)]
        range: i64,
        #[command(flatten)]
        random: Random,
    },
}

/// A successful run: text for stdout and whether every check passed.
struct Outcome {
    text: String,
    pass: bool,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, pass: true }
    }

    fn report(r: &Report) -> Self {
        Outcome { text: r.to_string(), pass: r.passed() }
    }
}

fn shape(arg: &str) -> Result<FinCategory> {
    let p = Path::new(arg);
    if p.is_file() || arg.contains('/') || arg.ends_with(".json") {
        io::read_category(p)
    } else {
        io::builtin_shape(arg)
    }
}

fn parse_conn(c: &FinCategory, text: &str) -> Result<Vec<Conn>> {
    let mut conn = vec![None; c.num_objects()];
    for item in text.split(',').filter(|s| !s.trim().is_empty()) {
        let (l, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Parse { context: "--conn".into(), message: format!("expected label=n, got {item:?}") })?;
        let x = c.find_object(l.trim()).ok_or_else(|| Error::Parse {
            context: "--conn".into(),
            message: format!("unknown object {:?}", l.trim()),
        })?;
        conn[x] = Some(v.parse().map_err(|e: String| Error::Parse { context: "--conn".into(), message: e })?);
    }
    c.objects()
        .map(|x| {
            conn[x].ok_or_else(|| Error::Parse {
                context: "--conn".into(),
                message: format!("no connectivity for object {:?}", c.label(x)),
            })
        })
        .collect()
}

fn write_out(output: Option<&Path>, text: &str) -> Result<Option<String>> {
    match output {
        Some(p) => {
            std::fs::write(p, text)?;
            Ok(None)
        }
        None => Ok(Some(text.to_string())),
    }
}

/// Runs `n` seeded instances in parallel and merges their reports in
/// instance order.
fn suite(title: &str, n: usize, seed: u64, run: impl Fn(u64) -> Result<Report> + Sync) -> Result<Outcome> {
    let results: Vec<Result<Report>> = (0..n as u64).into_par_iter().map(|k| run(seed.wrapping_add(k))).collect();
    let mut text = format!("# {title}: {n} instances from seed {seed}\n");
    let mut passed = 0;
    for (k, r) in results.into_iter().enumerate() {
        let r = r?;
        let s = seed.wrapping_add(k as u64);
        if r.passed() {
            passed += 1;
            let _ = writeln!(text, "PASS instance {k} (seed {s}): {} checks", r.checks.len());
        } else {
            let failed: Vec<String> = r.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
            let _ = writeln!(text, "FAIL instance {k} (seed {s}): {}", failed.join("; "));
        }
    }
    let verdict = if passed == n { "PASS" } else { "FAIL" };
    let _ = write!(text, "{verdict} ({passed} of {n} instances passed)");
    Ok(Outcome { text, pass: passed == n })
}

fn random_functor(seed: u64) -> FinFunctor {
    samples::random_poset_functor(&mut samples::rng(seed), 5)
}

fn run(cli: Cli) -> Result<Outcome> {
    let limits = match cli.max_simplices {
        Some(m) => Limits { max_simplices: m },
        None => Limits::from_env(),
    };
    match cli.command {
        Command::Validate { category, functor, diagram } => {
            let what = if let Some(c) = category {
                let c = shape(&c)?;
                format!("category: {} objects, {} morphisms", c.num_objects(), c.num_morphisms())
            } else if let Some(f) = functor {
                let f = io::read_functor(&f)?;
                format!("functor: {} objects to {}", f.source().num_objects(), f.target().num_objects())
            } else if let Some(d) = diagram {
                let d = io::read_diagram(&d)?;
                format!("diagram over {} objects", d.shape().num_objects())
            } else {
                return Err(Error::Parse { context: "validate".into(), message: "give --category, --functor or --diagram".into() });
            };
            Ok(Outcome::ok(format!("PASS valid {what}")))
        }
        Command::NerveDim { shape: s, output } => {
            let c = Arc::new(shape(&s)?);
            let top = match nerve_dimension(&c).require_finite(&c) {
                Ok(top) => top,
                Err(Error::InfiniteDimension { cycle }) => return Ok(Outcome::ok(format!("inf (cycle {cycle})"))),
                Err(e) => return Err(e),
            };
            let mut text = top.map_or("-1".to_string(), |t| t.to_string());
            if let Some(top) = top {
                let cx = nerve_chain_complex(&c, top, false, limits)?;
                if let Some(extra) = write_out(output.as_deref(), &io::write_complex(&cx))? {
                    text = format!("{text}\n{}", extra.trim_end());
                }
            }
            Ok(Outcome::ok(text))
        }
        Command::Degree { shape: s } => {
            let c = Arc::new(shape(&s)?);
            let table = degree_table(&c)?;
            let mut text = String::new();
            for x in c.objects() {
                let _ = writeln!(text, "{} {}", c.label(x), table.get(x));
            }
            let reedy = is_directed_reedy(&c)?;
            match reedy.witness {
                None => text.push_str("directed Reedy: yes"),
                Some(m) => {
                    let _ = write!(text, "directed Reedy: no ({} does not raise the degree)", c.name(m));
                }
            }
            Ok(Outcome { text, pass: true })
        }
        Command::Bound { shape: s, conn, diagram } => {
            let (c, conn) = match diagram {
                Some(d) => {
                    let d = io::read_diagram(&d)?;
                    let conn = d.conn();
                    (d.shape().clone(), conn)
                }
                None => {
                    let c = Arc::new(shape(s.as_deref().expect("clap requires --shape"))?);
                    let text = conn.ok_or_else(|| Error::Parse {
                        context: "bound".into(),
                        message: "--conn is required with --shape".into(),
                    })?;
                    let conn = parse_conn(&c, &text)?;
                    (c, conn)
                }
            };
            Ok(Outcome::ok(theorem_a_bound(&c, &conn)?.to_string()))
        }
        Command::Hoc { functor, output } => {
            let h = hoc(&io::read_functor(&functor)?)?;
            let text = io::to_pretty(&io::category_to_json(&h.cofiber));
            match write_out(output.as_deref(), &text)? {
                Some(t) => Ok(Outcome::ok(t.trim_end().to_string())),
                None => Ok(Outcome::ok(format!("{} objects written", h.cofiber.num_objects()))),
            }
        }
        Command::Thomason { functor, top, random } => match random.random {
            Some(n) => suite("Thomason comparison", n, random.seed, |s| {
                thomason_cofiber_check(&random_functor(s), top, limits)
            }),
            None => Ok(Outcome::report(&thomason_cofiber_check(&io::read_functor(&functor.expect("clap"))?, top, limits)?)),
        },
        Command::OverChecks { functor, top, random } => match random.random {
            Some(n) => suite("over-category identities", n, random.seed, |s| {
                hoc_overcategory_checks(&random_functor(s), top, limits)
            }),
            None => {
                Ok(Outcome::report(&hoc_overcategory_checks(&io::read_functor(&functor.expect("clap"))?, top, limits)?))
            }
        },
        Command::Total { diagram, output } => {
            let d = io::read_diagram(&diagram)?;
            let tot = total_complex(&d, limits)?;
            let h = tot.complex().homology_all();
            let text = io::write_complex(tot.complex());
            match write_out(output.as_deref(), &text)? {
                Some(t) => Ok(Outcome::ok(t.trim_end().to_string())),
                None => Ok(Outcome::ok(format!("H(Tot): {}", homology_line(&h)))),
            }
        }
        Command::VerifyA { diagram, range, random } => match random.random {
            Some(n) => suite("connectivity bound", n, random.seed, |s| {
                let mut rng = samples::rng(s);
                let shape = Arc::new(samples::random_shape(&mut rng));
                let params = ComplexParams::random_window(&mut rng);
                let d = samples::random_diagram(&mut rng, &shape, 2, params);
                Ok(verify_theorem_a(&d, limits)?.report)
            }),
            None => {
                let d = io::read_diagram(&diagram.expect("clap"))?;
                let r = verify_theorem_a(&d, limits)?;
                let mut report = r.report;
                let window = r.homology.range(-range..=range).map(|(&k, g)| (k, g.clone())).collect();
                report.note(format!("H(Tot) in degrees {}..={range}: {}", -range, homology_line(&window)));
                Ok(Outcome::report(&report))
            }
        },
        Command::VerifyB { functor, diagram, range, random } => match random.random {
            Some(n) => suite("fiber sequence", n, random.seed, |s| {
                let mut rng = samples::rng(s);
                let f = samples::random_poset_functor(&mut rng, 5);
                let params = ComplexParams { lo: 0, hi: 2, max_pieces: 2, max_twist: 3, max_contractible: 1 };
                let d: Diagram = samples::random_diagram(&mut rng, f.target(), 1, params);
                Ok(verify_theorem_b(&f, &d, (-range, range), limits)?.report)
            }),
            None => {
                let f = io::read_functor(&functor.expect("clap"))?;
                let d = io::read_diagram(&diagram.expect("clap"))?;
                Ok(Outcome::report(&verify_theorem_b(&f, &d, (-range, range), limits)?.report))
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let validating = matches!(cli.command, Command::Validate { .. });
    match run(cli) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{}", out.text);
            ExitCode::from(if out.pass { 0 } else { 1 })
        }
        Err(e) if validating && e.is_verification_failure() => {
            match &e {
                Error::Axioms(v) | Error::Functoriality(v) => v.iter().for_each(|m| println!("FAIL {m}")),
                e => println!("FAIL {e}"),
            }
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
