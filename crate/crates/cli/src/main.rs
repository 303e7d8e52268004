mod gallery;
mod render;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fthresh_core::filtration::{Filtration, PrimePower};
use fthresh_core::hypergraph::{threshold_bounds_report, Hypergraph};
use fthresh_core::nu::{self, DEFAULT_HORIZON};
use fthresh_core::polyhedra::{self, WeightVector};
use fthresh_core::text::parse_ideal;
use fthresh_core::{Error, MonomialIdeal};
use serde_json::{json, Value};

use render::{Format, Output};

#[derive(Parser)]
#[command(name = "fthresh", version, about = "F-thresholds of monomial filtrations")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand)]
enum Verb {
    /// ν(p^e) for a single exponent.
    Nu {
        #[command(flatten)]
        input: FiltrationInput,
        #[command(flatten)]
        target: TargetArg,
        #[command(flatten)]
        prime: PrimeArg,
        /// Exponent e in q = p^e.
        #[arg(short, long, default_value_t = 1)]
        e: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// ν(p^e) for e = 0..=emax with ratios and running supremum.
    NuSeq {
        #[command(flatten)]
        input: FiltrationInput,
        #[command(flatten)]
        target: TargetArg,
        #[command(flatten)]
        prime: PrimeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// F-threshold: exact when a closed form applies, otherwise a bracket.
    Fthreshold {
        #[command(flatten)]
        input: FiltrationInput,
        #[command(flatten)]
        target: TargetArg,
        #[command(flatten)]
        prime: PrimeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Symbolic F-threshold of a square-free ideal or of ∩ P_i^{ω_i}.
    Symbolic {
        #[command(flatten)]
        input: IdealInput,
        /// Prime-power components as JSON, e.g. [{"vars":[0,1],"omega":1}].
        #[arg(long, conflicts_with_all = ["ideal", "file"])]
        components: Option<String>,
        #[command(flatten)]
        prime: PrimeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Rees valuations of an ideal (essential facets of its Newton polyhedron).
    Rees {
        #[command(flatten)]
        input: IdealInput,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Facet description of the Newton polyhedron.
    Newton {
        #[command(flatten)]
        input: IdealInput,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Bounds on the skew Waldschmidt constant v̂(a_•).
    Waldschmidt {
        #[command(flatten)]
        input: FiltrationInput,
        /// Comma-separated valuation weights; defaults to the degree.
        #[arg(long)]
        weights: Option<String>,
        #[arg(long, default_value_t = DEFAULT_HORIZON)]
        horizon: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Matching, cover and chromatic invariants next to edge-ideal thresholds.
    Hypergraph {
        /// Hypergraph as JSON {"n":..,"edges":[[..],..]}.
        #[arg(long, conflicts_with_all = ["ideal", "file"])]
        hypergraph: Option<String>,
        #[command(flatten)]
        input: IdealInput,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Check the min, sum/product or shift laws for ν.
    Laws {
        /// Left filtration: JSON descriptor or ideal text (ordinary powers).
        #[arg(long)]
        left: String,
        /// Right filtration: JSON descriptor or ideal text (ordinary powers).
        #[arg(long)]
        right: String,
        #[arg(long, value_enum, default_value_t = Law::Min)]
        law: Law,
        /// Target for the min and shift laws.
        #[arg(long, default_value = "m")]
        target: String,
        /// Targets of the two blocks for the sum/product laws.
        #[arg(long, default_value = "m")]
        left_target: String,
        #[arg(long, default_value = "m")]
        right_target: String,
        /// Offset k in ν_right ≤ ν_left + k.
        #[arg(long, default_value_t = 0)]
        shift: u64,
        #[command(flatten)]
        prime: PrimeArg,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Recompute the worked examples and compare with the stated values.
    VerifyExamples {
        /// Run only the fixture with this name.
        #[arg(long)]
        only: Option<String>,
        /// Perturb the expected value of this fixture (negative control).
        #[arg(long)]
        corrupt: Option<String>,
        /// Comma-separated primes.
        #[arg(long, default_value = "2,3,5")]
        primes: String,
        #[arg(long, default_value_t = 5)]
        emax: u32,
        /// List fixture names and exit.
        #[arg(long)]
        list: bool,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Args)]
struct IdealInput {
    /// Ideal text, e.g. "x1^2*x3;x2^3" or "[[2,0,1],[0,3,0]]".
    #[arg(long)]
    ideal: Option<String>,
    /// Read the input from a file instead of stdin.
    #[arg(long, conflicts_with = "ideal")]
    file: Option<PathBuf>,
    /// Number of variables; inferred from the input when omitted.
    #[arg(long)]
    nvars: Option<usize>,
}

#[derive(Args)]
struct FiltrationInput {
    #[command(flatten)]
    ideal: IdealInput,
    /// Filtration descriptor as JSON, or @path.
    #[arg(long, conflicts_with_all = ["ideal", "file"])]
    filtration: Option<String>,
    /// Filtration built from --ideal.
    #[arg(long, value_enum, default_value_t = RuleArg::Ordinary)]
    rule: RuleArg,
}

#[derive(Args)]
struct TargetArg {
    /// Target ideal; `m` is the maximal ideal.
    #[arg(long, default_value = "m")]
    target: String,
}

#[derive(Args)]
struct PrimeArg {
    /// Characteristic.
    #[arg(short, default_value_t = 2)]
    p: u64,
    /// Largest exponent e.
    #[arg(long, default_value_t = 5)]
    emax: u32,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Add a k-digit decimal rendering next to each rational.
    #[arg(long, value_name = "K")]
    decimal: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Ordinary,
    Symbolic,
    Closure,
}

#[derive(Clone, Copy, ValueEnum)]
enum Law {
    Min,
    SumProduct,
    Shift,
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> Outcome<T> {
    Err(Failure::Usage(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.verb) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(e)) => {
            println!("{}", error_object(&e));
            ExitCode::from(1)
        }
    }
}

fn error_object(e: &Error) -> Value {
    let mut obj = json!({"error": e.kind(), "message": e.to_string()});
    if let Error::Parse { token, position, .. } = e {
        obj["token"] = json!(token);
        obj["position"] = json!(position);
    }
    obj
}

fn run(verb: Verb) -> Outcome<(String, bool)> {
    let (output, out, ok) = match verb {
        Verb::Nu {
            input,
            target,
            prime,
            e,
            out,
        } => {
            check_prime(prime.p)?;
            let f = input.load()?;
            let t = target_ideal(&target.target, f.nvars())?;
            let rec = nu::nu(&f, &t, prime.p, e)?;
            (Output::plain(to_value(&rec)), out, true)
        }
        Verb::NuSeq {
            input,
            target,
            prime,
            out,
        } => {
            check_prime(prime.p)?;
            let f = input.load()?;
            let t = target_ideal(&target.target, f.nvars())?;
            let seq = nu::nu_sequence(&f, &t, prime.p, prime.emax)?;
            let mut v = to_value(&seq);
            v["supremum"] = json!(seq.supremum().map(|s| s.to_string()));
            (Output::rows(v, "records", &["e", "q", "nu", "ratio"]), out, true)
        }
        Verb::Fthreshold {
            input,
            target,
            prime,
            out,
        } => {
            check_prime(prime.p)?;
            let res = match (&input.filtration, input.rule) {
                (None, RuleArg::Ordinary) => {
                    let i = input.ideal.load()?;
                    let t = target_ideal(&target.target, i.nvars())?;
                    nu::fthreshold_ordinary_target(&i, &t, prime.p, prime.emax)?
                }
                _ => {
                    let f = input.load()?;
                    let t = target_ideal(&target.target, f.nvars())?;
                    nu::fthreshold(&f, &t, prime.p, prime.emax)?
                }
            };
            (Output::plain(to_value(&res)), out, true)
        }
        Verb::Symbolic {
            input,
            components,
            prime,
            out,
        } => {
            check_prime(prime.p)?;
            let res = match components {
                Some(c) => {
                    let comps: Vec<PrimePower> = serde_json::from_str(&c)
                        .map_err(|e| Failure::Usage(format!("--components: {e}")))?;
                    let n = match input.nvars {
                        Some(n) => n,
                        None => comps
                            .iter()
                            .flat_map(|c| c.vars.iter().map(|v| v + 1))
                            .max()
                            .unwrap_or(0),
                    };
                    nu::fthreshold_prime_power_intersection(n, &comps)?
                }
                None => {
                    let i = input.load()?;
                    if i.is_squarefree() {
                        nu::fthreshold_symbolic_squarefree(&i)?
                    } else {
                        let f = Filtration::symbolic(i)?;
                        let m = MonomialIdeal::maximal(f.nvars());
                        nu::fthreshold(&f, &m, prime.p, prime.emax)?
                    }
                }
            };
            (Output::plain(to_value(&res)), out, true)
        }
        Verb::Rees { input, out } => {
            let i = input.load()?;
            let vals = polyhedra::rees_valuations(&i)?;
            let v = json!({"ideal": i.to_string(), "valuations": to_value(&vals)});
            (Output::plain(v), out, true)
        }
        Verb::Newton { input, out } => {
            let i = input.load()?;
            let np = polyhedra::newton_polyhedron(&i)?;
            let mut v = to_value(&np);
            v["ideal"] = json!(i.to_string());
            v["irredundant"] = json!(np.is_irredundant());
            (Output::plain(v), out, true)
        }
        Verb::Waldschmidt {
            input,
            weights,
            horizon,
            out,
        } => {
            let f = input.load()?;
            let w = match weights {
                Some(s) => parse_weights(&s)?,
                None => WeightVector::degree(f.nvars()),
            };
            let sw = polyhedra::skew_waldschmidt(&w, &f, horizon)?;
            let mut v = to_value(&sw);
            v["weights"] = to_value(&w);
            (Output::plain(v), out, true)
        }
        Verb::Hypergraph {
            hypergraph,
            input,
            out,
        } => {
            let h = match hypergraph {
                Some(s) => parse_hypergraph(&s)?,
                None => match input.read()? {
                    Raw::Text(s) if s.trim_start().starts_with('{') => parse_hypergraph(&s)?,
                    raw => Hypergraph::from_squarefree_ideal(&raw.ideal(input.nvars)?)?,
                },
            };
            let mut v = to_value(&threshold_bounds_report(&h)?);
            v["edges"] = json!(h.edges());
            if h.is_graph() {
                v["clique_number"] = json!(h.clique_number()?);
                v["chordal"] = json!(h.is_chordal()?);
            }
            (Output::plain(v), out, true)
        }
        Verb::Laws {
            left,
            right,
            law,
            target,
            left_target,
            right_target,
            shift,
            prime,
            out,
        } => {
            check_prime(prime.p)?;
            let f = filtration_arg(&left)?;
            let g = filtration_arg(&right)?;
            let report = match law {
                Law::Min => {
                    let t = target_ideal(&target, f.nvars())?;
                    nu::check_min_law(&f, &g, &t, prime.p, prime.emax)?
                }
                Law::SumProduct => {
                    let i = target_ideal(&left_target, f.nvars())?;
                    let j = target_ideal(&right_target, g.nvars())?;
                    nu::check_sum_product_laws(&f, &i, &g, &j, prime.p, prime.emax)?
                }
                Law::Shift => {
                    let t = target_ideal(&target, f.nvars())?;
                    nu::check_nu_shift(&f, &g, shift, &t, prime.p, prime.emax)?
                }
            };
            let mut v = to_value(&report);
            v["holds"] = json!(report.holds());
            (Output::rows(v, "rows", &["law", "e", "lhs", "rhs", "holds"]), out, true)
        }
        Verb::VerifyExamples {
            only,
            corrupt,
            primes,
            emax,
            list,
            mut out,
        } => {
            if list {
                let names = gallery::names().join("\n");
                return Ok((format!("{names}\n"), true));
            }
            let primes = parse_primes(&primes)?;
            let known = gallery::names();
            for name in only.iter().chain(corrupt.iter()) {
                if !known.contains(&name.as_str()) {
                    return usage(format!("unknown fixture `{name}`; try --list"));
                }
            }
            let cfg = gallery::Config {
                primes,
                e_max: emax,
                only,
                corrupt,
            };
            let rows = gallery::run(&cfg)?;
            let failed = rows.iter().filter(|r| !r.pass).count();
            let v = json!({
                "rows": to_value(&rows),
                "passed": rows.len() - failed,
                "failed": failed,
            });
            out.format.get_or_insert(Format::Table);
            (
                Output::rows(v, "rows", &["fixture", "expected", "computed", "status"]),
                out,
                failed == 0,
            )
        }
    };
    let text = output.render(out.format.unwrap_or(Format::Json), out.decimal)?;
    Ok((text, ok))
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn check_prime(p: u64) -> Outcome<()> {
    if nu::is_prime(p) {
        Ok(())
    } else {
        usage(format!("-p {p} is not prime"))
    }
}

fn parse_primes(s: &str) -> Outcome<Vec<u64>> {
    let mut out = Vec::new();
    for t in s.split(',') {
        let p: u64 = t
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("bad prime `{t}`")))?;
        check_prime(p)?;
        out.push(p);
    }
    Ok(out)
}

fn parse_weights(s: &str) -> Outcome<WeightVector> {
    let ws = s
        .split(',')
        .map(|t| fthresh_core::rational::parse(t.trim()))
        .collect::<fthresh_core::Result<Vec<_>>>()?;
    Ok(WeightVector::new(ws)?)
}

fn parse_hypergraph(s: &str) -> Outcome<Hypergraph> {
    serde_json::from_str(s).map_err(|e| Failure::Domain(Error::InvalidArgument(format!("hypergraph: {e}"))))
}

fn target_ideal(s: &str, nvars: usize) -> Outcome<MonomialIdeal> {
    let t = parse_ideal(s, Some(nvars))?;
    Ok(t)
}

fn parse_filtration(s: &str) -> Outcome<Filtration> {
    serde_json::from_str(s)
        .map_err(|e| Failure::Domain(Error::InvalidArgument(format!("filtration: {e}"))))
}

/// JSON descriptor, `@path`, or ideal text taken as ordinary powers.
fn filtration_arg(s: &str) -> Outcome<Filtration> {
    let body = match s.strip_prefix('@') {
        Some(path) => read_file(&PathBuf::from(path))?,
        None => s.to_string(),
    };
    if body.trim_start().starts_with('{') {
        parse_filtration(&body)
    } else {
        Ok(Filtration::ordinary(parse_ideal(&body, None)?)?)
    }
}

fn read_file(path: &PathBuf) -> Outcome<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

enum Raw {
    Ideal(String),
    Text(String),
}

impl Raw {
    fn ideal(self, nvars: Option<usize>) -> Outcome<MonomialIdeal> {
        match self {
            Raw::Ideal(s) | Raw::Text(s) => Ok(parse_ideal(&s, nvars)?),
        }
    }
}

impl IdealInput {
    fn read(&self) -> Outcome<Raw> {
        if let Some(s) = &self.ideal {
            return Ok(Raw::Ideal(s.clone()));
        }
        let text = match &self.file {
            Some(path) => read_file(path)?,
            None => {
                let mut s = String::new();
                std::io::stdin()
                    .read_to_string(&mut s)
                    .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
                s
            }
        };
        if text.trim().is_empty() {
            return usage("no input: pass --ideal, --file or pipe it on stdin");
        }
        Ok(Raw::Text(text))
    }

    fn load(&self) -> Outcome<MonomialIdeal> {
        self.read()?.ideal(self.nvars)
    }
}

impl FiltrationInput {
    fn load(&self) -> Outcome<Filtration> {
        if let Some(s) = &self.filtration {
            return filtration_arg(s).and_then(|f| self.check_nvars(f));
        }
        let i = match self.ideal.read()? {
            Raw::Text(s) if s.trim_start().starts_with('{') => {
                return parse_filtration(&s).and_then(|f| self.check_nvars(f));
            }
            raw => raw.ideal(self.ideal.nvars)?,
        };
        Ok(match self.rule {
            RuleArg::Ordinary => Filtration::ordinary(i)?,
            RuleArg::Symbolic => Filtration::symbolic(i)?,
            RuleArg::Closure => Filtration::integral_closure(i)?,
        })
    }

    fn check_nvars(&self, f: Filtration) -> Outcome<Filtration> {
        match self.ideal.nvars {
            Some(n) if n != f.nvars() => Err(Failure::Domain(Error::AmbientMismatch {
                expected: n,
                found: f.nvars(),
            })),
            _ => Ok(f),
        }
    }
}
