//! `farey`: command-line front end for the exact deciders and generators.
//!
//! Exit codes: 0 = decided true / success, 1 = decided false (or bounded
//! search exhausted), 2 = usage or input error, 3 = internal disagreement
//! between two decision routes (must never happen).

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use farey_core::contfrac::ThetaSpec;
use farey_core::decide;
use farey_core::effros_shen;
use farey_core::formula::PrintStyle;
use farey_core::gen::Generator;
use farey_core::germ;
use farey_core::goedel;
use farey_core::pwl::{self, Side};
use farey_core::rat::{parse_rat, rat_to_string, Rat};
use farey_core::Formula;

#[derive(Parser)]
#[command(
    name = "farey",
    version,
    about = "Exact word-problem deciders for one-variable many-valued formulas",
    after_help = "Formulas use the core grammar {0, X, postfix *, (f+g)} plus the sugar \
(f|g), (f&g) and k.f; '⊕' is accepted for '+'. Rationals are written p/q."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse a formula and print its canonical core form
    Parse {
        #[command(flatten)]
        input: One,
        /// Print '⊕' instead of '+'
        #[arg(long)]
        unicode: bool,
    },
    /// Evaluate a formula at a rational point
    Eval {
        #[command(flatten)]
        input: One,
        /// Evaluation point p/q in [0,1]
        #[arg(long, value_name = "p/q")]
        at: String,
    },
    /// Compile a formula to its piecewise-linear form
    Pwl {
        #[command(flatten)]
        input: One,
        /// Emit a human-readable segment table instead of JSON
        #[arg(long)]
        text: bool,
    },
    /// Decide whether two formulas denote the same function
    Eq {
        #[command(flatten)]
        input: Two,
        #[arg(long, value_enum, default_value_t = EqMethod::Both)]
        method: EqMethod,
    },
    /// Decide equality of one-sided germs at a rational point
    GermEq {
        #[command(flatten)]
        input: Two,
        /// Base point p/q
        #[arg(long, value_name = "p/q")]
        point: String,
        /// '+' for the right germ, '-' for the left germ
        #[arg(long, allow_hyphen_values = true)]
        side: String,
    },
    /// Decide equality of values at a rational point
    QuotEq {
        #[command(flatten)]
        input: Two,
        /// Evaluation point p/q in [0,1]
        #[arg(long, value_name = "p/q")]
        xi: String,
    },
    /// Decide equality in the quotient at a computable irrational point
    EsEq {
        #[command(flatten)]
        input: Two,
        /// Point description: cf:a0;a1,a2/p1,p2 | inv-e | alg:poly=c0,c1,..:lo=p/q:hi=p/q | pi-3
        #[arg(long)]
        theta: String,
        #[arg(long, value_enum, default_value_t = EsMethod::Both)]
        method: EsMethod,
    },
    /// Emit the mediant diagram to a given depth
    Bratteli {
        #[arg(long)]
        depth: u64,
        #[arg(long, value_enum, default_value_t = DiagramFormat::Dot)]
        format: DiagramFormat,
    },
    /// Print the k-th hat function as a segment table
    Hat { k: u64 },
    /// Print a formula denoting the k-th hat function
    Beta {
        k: u64,
        /// Print '⊕' instead of '+'
        #[arg(long)]
        unicode: bool,
    },
    /// Bounded ideal-membership demo against an affine enumeration
    GoedelDemo {
        /// Enumeration "Ai+B" with A >= 1, B >= 2, e.g. 2i+4
        #[arg(long)]
        eta: String,
        /// Largest stage to try
        #[arg(long)]
        tmax: u64,
        /// Index of the hat formula to test
        #[arg(long)]
        k: u64,
    },
    /// Time the equality deciders on seeded random formulas
    Bench {
        /// Seed for the deterministic formula stream
        #[arg(long, default_value_t = 20260822)]
        seed: u64,
        /// Pairs per length row
        #[arg(long, default_value_t = 10)]
        pairs: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EqMethod {
    Search,
    Canonical,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EsMethod {
    Cf,
    Cut,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramFormat {
    Dot,
    Json,
}

/// One formula, inline or from a file.
#[derive(Args)]
struct One {
    /// Formula text
    formula: Option<String>,
    /// Read the formula from this file instead (first non-empty line)
    #[arg(long, value_name = "PATH", conflicts_with = "formula")]
    file: Option<PathBuf>,
}

/// Two formulas, inline or from a file with one per line.
#[derive(Args)]
struct Two {
    /// The two formula texts
    #[arg(num_args = 0..=2)]
    formulas: Vec<String>,
    /// Read both formulas from this file instead (one per non-empty line)
    #[arg(long, value_name = "PATH", conflicts_with = "formulas")]
    file: Option<PathBuf>,
}

fn file_lines(path: &PathBuf) -> Result<Vec<String>, String> {
    let text =
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_owned)
        .collect())
}

impl One {
    fn read(&self) -> Result<Formula, String> {
        let text = match (&self.formula, &self.file) {
            (Some(t), None) => t.clone(),
            (None, Some(path)) => {
                let lines = file_lines(path)?;
                match lines.len() {
                    1 => lines.into_iter().next().unwrap(),
                    n => return Err(format!("expected one formula in the file, found {n}")),
                }
            }
            _ => return Err("provide a formula or --file".into()),
        };
        Formula::parse(&text).map_err(|e| e.to_string())
    }
}

impl Two {
    fn read(&self) -> Result<(Formula, Formula), String> {
        let texts: Vec<String> = match (&self.formulas[..], &self.file) {
            ([a, b], None) => vec![a.clone(), b.clone()],
            ([], Some(path)) => {
                let lines = file_lines(path)?;
                if lines.len() != 2 {
                    return Err(format!(
                        "expected two formulas in the file, found {}",
                        lines.len()
                    ));
                }
                lines
            }
            _ => return Err("provide two formulas or --file with two lines".into()),
        };
        let phi = Formula::parse(&texts[0]).map_err(|e| format!("first formula: {e}"))?;
        let psi = Formula::parse(&texts[1]).map_err(|e| format!("second formula: {e}"))?;
        Ok((phi, psi))
    }
}

fn parse_side(text: &str) -> Result<Side, String> {
    match text {
        "+" => Ok(Side::Right),
        "-" => Ok(Side::Left),
        other => Err(format!("side must be '+' or '-', got {other:?}")),
    }
}

fn parse_point(text: &str) -> Result<Rat, String> {
    parse_rat(text).map_err(|e| e.to_string())
}

fn style(unicode: bool) -> PrintStyle {
    if unicode {
        PrintStyle::Unicode
    } else {
        PrintStyle::Ascii
    }
}

fn main() -> ExitCode {
    // Die quietly when the downstream end of a pipe closes, as traditional
    // line-oriented tools do, instead of panicking mid-print.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Parse { input, unicode } => {
            let f = input.read()?;
            println!("{}", f.to_text(style(unicode)));
            Ok(0)
        }
        Command::Eval { input, at } => {
            let f = input.read()?;
            let point = parse_point(&at)?;
            let value = pwl::eval_formula(&f, &point).map_err(|e| e.to_string())?;
            println!("{}", rat_to_string(&value));
            Ok(0)
        }
        Command::Pwl { input, text } => {
            let f = input.read()?;
            let compiled = pwl::semantics(&f);
            if text {
                println!("{compiled}");
            } else {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&compiled.to_json())
                        .expect("serialization cannot fail")
                );
            }
            Ok(0)
        }
        Command::Eq { input, method } => {
            let (phi, psi) = input.read()?;
            let verdict = match method {
                EqMethod::Search => decide::equal_search(&phi, &psi),
                EqMethod::Canonical => decide::equal_canonical(&phi, &psi),
                EqMethod::Both => {
                    let s = decide::equal_search(&phi, &psi);
                    let c = decide::equal_canonical(&phi, &psi);
                    if s.equal != c.equal {
                        eprintln!(
                            "internal disagreement: search says {}, canonical says {}",
                            s.equal, c.equal
                        );
                        return Ok(3);
                    }
                    c
                }
            };
            if verdict.equal {
                println!("equal");
                Ok(0)
            } else {
                let witness = verdict.witness.expect("unequal verdict carries a witness");
                println!("not equal (witness {})", rat_to_string(&witness));
                Ok(1)
            }
        }
        Command::GermEq { input, point, side } => {
            let (phi, psi) = input.read()?;
            let point = parse_point(&point)?;
            let side = parse_side(&side)?;
            let a = germ::germ_at(&phi, &point, side).map_err(|e| e.to_string())?;
            let b = germ::germ_at(&psi, &point, side).map_err(|e| e.to_string())?;
            let site = format!("{}{}", rat_to_string(&point), side);
            if a == b {
                println!(
                    "equal in the germ quotient at {site}: value {}, slope {}",
                    rat_to_string(&a.value),
                    a.slope
                );
                Ok(0)
            } else {
                println!(
                    "not equal in the germ quotient at {site}: (value {}, slope {}) vs (value {}, slope {})",
                    rat_to_string(&a.value),
                    a.slope,
                    rat_to_string(&b.value),
                    b.slope
                );
                Ok(1)
            }
        }
        Command::QuotEq { input, xi } => {
            let (phi, psi) = input.read()?;
            let xi = parse_point(&xi)?;
            let a = pwl::eval_formula(&phi, &xi).map_err(|e| e.to_string())?;
            let b = pwl::eval_formula(&psi, &xi).map_err(|e| e.to_string())?;
            let at = rat_to_string(&xi);
            if a == b {
                println!("equal at {at} (both {})", rat_to_string(&a));
                Ok(0)
            } else {
                println!(
                    "not equal at {at}: {} vs {}",
                    rat_to_string(&a),
                    rat_to_string(&b)
                );
                Ok(1)
            }
        }
        Command::EsEq {
            input,
            theta,
            method,
        } => {
            let (phi, psi) = input.read()?;
            let spec = ThetaSpec::parse(&theta).map_err(|e| e.to_string())?;
            let equal = match method {
                EsMethod::Cf => {
                    effros_shen::equal_cf(&phi, &psi, &spec).map_err(|e| e.to_string())?
                }
                EsMethod::Cut => {
                    let oracle = spec.left_cut();
                    effros_shen::equal_left_cut(&phi, &psi, &oracle).map_err(|e| e.to_string())?
                }
                EsMethod::Both => {
                    let by_cf =
                        effros_shen::equal_cf(&phi, &psi, &spec).map_err(|e| e.to_string())?;
                    let oracle = spec.left_cut();
                    let by_cut = effros_shen::equal_left_cut(&phi, &psi, &oracle)
                        .map_err(|e| e.to_string())?;
                    if by_cf != by_cut {
                        eprintln!(
                            "internal disagreement at theta = {spec}: convergents say {by_cf}, cuts say {by_cut}"
                        );
                        return Ok(3);
                    }
                    by_cf
                }
            };
            if equal {
                println!("equal in F_theta");
                Ok(0)
            } else {
                println!("not equal in F_theta");
                Ok(1)
            }
        }
        Command::Bratteli { depth, format } => {
            let diagram = farey_core::bratteli::build_diagram(depth).map_err(|e| e.to_string())?;
            match format {
                DiagramFormat::Dot => print!("{}", diagram.to_dot()),
                DiagramFormat::Json => println!("{}", diagram.to_json()),
            }
            Ok(0)
        }
        Command::Hat { k } => {
            println!("{}", goedel::hat(k));
            Ok(0)
        }
        Command::Beta { k, unicode } => {
            println!("{}", goedel::beta(k).to_text(style(unicode)));
            Ok(0)
        }
        Command::GoedelDemo { eta, tmax, k } => {
            let (step, offset) = parse_affine(&eta)?;
            let oracle =
                goedel::EnumerationOracle::affine(step, offset).map_err(|e| e.to_string())?;
            let target = goedel::beta(k);
            println!("enumeration: {}", oracle.description());
            println!("target: beta({k}), formula length {}", target.length());
            match goedel::member_ideal_bounded(&target, &oracle, tmax) {
                Some(t) => {
                    println!("member at t = {t}: {t}.gamma({t}) dominates beta({k})");
                    Ok(0)
                }
                None => {
                    println!("absent for all t <= {tmax} (bounded semidecision only)");
                    if k >= 1 {
                        let peak = Rat::new(1.into(), k.into());
                        let join = pwl::semantics(&goedel::gamma(tmax, &oracle));
                        let at_peak = join.eval(&peak).expect("peak lies in [0,1]");
                        let hat_peak = goedel::hat(k).eval(&peak).expect("peak lies in [0,1]");
                        if at_peak < hat_peak {
                            println!(
                                "certificate: g_{tmax}(1/{k}) = {} < {} = b_{k}(1/{k})",
                                rat_to_string(&at_peak),
                                rat_to_string(&hat_peak)
                            );
                        }
                    }
                    Ok(1)
                }
            }
        }
        Command::Bench { seed, pairs } => {
            bench(seed, pairs);
            Ok(0)
        }
    }
}

fn parse_affine(text: &str) -> Result<(u64, u64), String> {
    let bad = || format!("enumeration must look like 2i+4, got {text:?}");
    let (step, rest) = text.split_once('i').ok_or_else(bad)?;
    let offset = rest.strip_prefix('+').ok_or_else(bad)?;
    let step: u64 = step.parse().map_err(|_| bad())?;
    let offset: u64 = offset.parse().map_err(|_| bad())?;
    Ok((step, offset))
}

/// Wall-clock table for the two equality deciders on seeded random pairs.
/// Formula streams are deterministic; the timings themselves are not.
fn bench(seed: u64, pairs: u64) {
    println!("# bench: wall-clock timings, values vary between runs");
    println!("# formulas from seed {seed}, {pairs} equivalent pairs per row");
    println!(
        "{:<10} {:<12} {:<16} {:<16}",
        "length", "bound", "canonical", "search"
    );
    let mut generator = Generator::new(seed);
    for budget in [6u64, 10, 14, 18, 24] {
        let batch: Vec<(Formula, Formula)> = (0..pairs)
            .map(|_| {
                let phi = generator.formula(budget);
                let psi = generator.equivalent_variant(&phi);
                (phi, psi)
            })
            .collect();
        let bound = batch
            .iter()
            .map(|(phi, psi)| decide::search_bound(phi, psi))
            .max()
            .unwrap_or(0);
        let canonical_time = time_per_pair(&batch, |phi, psi| {
            decide::equal_canonical(phi, psi);
        });
        let search_time = time_per_pair(&batch, |phi, psi| {
            decide::equal_search(phi, psi);
        });
        println!(
            "{:<10} {:<12} {:<16} {:<16}",
            budget,
            bound,
            format!("{canonical_time:.1} us/pair"),
            format!("{search_time:.1} us/pair")
        );
    }
}

fn time_per_pair(batch: &[(Formula, Formula)], mut act: impl FnMut(&Formula, &Formula)) -> f64 {
    let start = Instant::now();
    for (phi, psi) in batch {
        act(phi, psi);
    }
    start.elapsed().as_micros() as f64 / batch.len().max(1) as f64
}
