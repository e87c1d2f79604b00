//! Argument definitions and subcommand implementations.
//!
//! Exit codes: 0 when the input is consistent or the check passes, 1 when a
//! counterexample is found, 2 on usage or data errors.

use std::fmt::Write as _;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive};

use realseq_core::construct::DEFAULT_POINT_CAP;
use realseq_core::sequences::{
    euler_abs_sequence, fibonacci_like, irregular_primes, stirling_row_sequence,
    tau_beta_sequences,
};
use realseq_core::{
    check_everywhere_local, check_local, check_realizable, explicit_permutation,
    minimal_multiplier, orbit_counts, realize_cycle_type, sample, scale, term_power, Error,
    IntPolynomial, LinearRecurrence, RealizabilityReport, Seq, StirlingKind, TimeChange,
};

use crate::report::ReportDocument;
use crate::{bfile, cycles, CliError};

pub const POINT_CAP_VAR: &str = "REALIZE_POINT_CAP";

#[derive(Debug, Parser)]
#[command(name = "realseq", version, about = "Realizability checks for integer sequences")]
pub struct Cli {
    /// Horizon N (generated length for `gen`); defaults to the input length.
    #[arg(long, global = true, value_name = "N")]
    pub terms: Option<usize>,
    /// Emit a JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write output here instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a sequence as a b-file.
    Gen {
        #[command(subcommand)]
        family: Family,
    },
    /// Check conditions (D) and (S) up to N.
    Check { input: Option<PathBuf> },
    /// Print the orbit counts D_n / n.
    Orbits { input: Option<PathBuf> },
    /// Check the p-parts at one prime or at every prime dividing a term.
    Local {
        input: Option<PathBuf>,
        #[arg(long, value_name = "P", conflicts_with = "all", required_unless_present = "all")]
        prime: Option<u64>,
        #[arg(long)]
        all: bool,
    },
    /// Sample along a time change: a_{h(n)}.
    Sample {
        input: Option<PathBuf>,
        /// h(n) = n^K
        #[arg(long, value_name = "K", conflicts_with = "table", required_unless_present = "table")]
        monomial: Option<u32>,
        /// b-file listing h(1), h(2), ...
        #[arg(long, value_name = "PATH")]
        table: Option<PathBuf>,
    },
    /// Raise terms to polynomial powers: a_n^{h(n)}.
    Power {
        input: Option<PathBuf>,
        /// Coefficients c0,c1,... of h.
        #[arg(long, value_name = "CSV")]
        poly: String,
    },
    /// Multiply every term by C.
    Scale {
        input: Option<PathBuf>,
        #[arg(long, value_name = "C")]
        mult: BigUint,
    },
    /// Least C making (C a_n) pass (D) up to N.
    Multiplier { input: Option<PathBuf> },
    /// Cycle type of a realizing permutation.
    Realize {
        input: Option<PathBuf>,
        /// Also lay out the permutation, refusing more than CAP points.
        #[arg(long, value_name = "CAP", num_args = 0..=1)]
        explicit: Option<Option<usize>>,
    },
    /// Irregular primes up to P.
    Irregular {
        #[arg(long, value_name = "P")]
        upto: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum Family {
    /// (1, c, 1 + c, 1 + 2c, ...)
    Fiblike {
        #[arg(allow_hyphen_values = true)]
        c: BigInt,
    },
    /// u_{n+k} = c_1 u_{n+k-1} + ... + c_k u_n
    Linrec {
        /// c_1,...,c_k
        #[arg(allow_hyphen_values = true)]
        coeffs: String,
        /// u_1,...,u_k
        #[arg(allow_hyphen_values = true)]
        init: String,
    },
    /// Column k of the Stirling triangle of the given kind (1 or 2).
    Stirling { kind: u8, k: usize },
    /// |E_2|, |E_4|, ...
    Euler,
    /// Numerators of |B_2n / 2n|.
    BernoulliTau,
    /// Denominators of |B_2n / 2n|.
    BernoulliBeta,
}

/// What a successful run prints, and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    /// Extra message for standard error.
    pub note: Option<String>,
    pub code: u8,
}

impl Outcome {
    fn new(output: String, pass: bool) -> Self {
        Outcome { output, note: None, code: if pass { 0 } else { 1 } }
    }
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Gen { family } => gen(family, cli.terms),
        Command::Check { input } => {
            let a = read_input(input.as_deref())?;
            let report = check_realizable(&a, horizon(&a, cli.terms))?;
            let output = if cli.json {
                ReportDocument::from(&report).to_json()
            } else {
                summary(&report)
            };
            Ok(Outcome::new(output, report.is_consistent()))
        }
        Command::Orbits { input } => orbits(&read_input(input.as_deref())?, cli),
        Command::Local { input, prime, .. } => {
            local(&read_input(input.as_deref())?, *prime, cli)
        }
        Command::Sample { input, monomial, table } => {
            let a = read_input(input.as_deref())?;
            let h = match (monomial, table) {
                (Some(k), _) => TimeChange::monomial(*k)?,
                (None, Some(path)) => read_table(path)?,
                (None, None) => unreachable!("clap requires one of the two"),
            };
            let n = match cli.terms {
                Some(n) => n,
                None => sample_horizon(&h, a.len())?,
            };
            Ok(Outcome::new(bfile::render(&sample(&a, &h, n)?), true))
        }
        Command::Power { input, poly } => {
            let a = read_input(input.as_deref())?;
            let h = IntPolynomial::new(parse_list(poly, "--poly")?)?;
            let powered = term_power(&a, &h, horizon(&a, cli.terms))?;
            Ok(Outcome::new(bfile::render(&powered), true))
        }
        Command::Scale { input, mult } => {
            let a = read_input(input.as_deref())?;
            let a = a.prefix(horizon(&a, cli.terms))?;
            Ok(Outcome::new(bfile::render(&scale(&a, mult)?), true))
        }
        Command::Multiplier { input } => multiplier(&read_input(input.as_deref())?, cli),
        Command::Realize { input, explicit } => {
            realize(&read_input(input.as_deref())?, *explicit, cli.terms)
        }
        Command::Irregular { upto } => {
            let primes = irregular_primes(*upto)?;
            let output = if cli.json {
                format!("{}\n", serde_json::to_string(&primes)?)
            } else {
                primes.iter().map(|p| format!("{p}\n")).collect()
            };
            Ok(Outcome::new(output, true))
        }
    }
}

/// Writes the output to `--out` or standard output.
pub fn emit(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.output).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.output.as_bytes())
                .and_then(|()| stdout.flush())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

fn read_text(path: Option<&Path>) -> Result<(String, String), CliError> {
    match path {
        Some(p) if p != Path::new("-") => {
            let name = p.display().to_string();
            let text = std::fs::read_to_string(p)
                .map_err(|source| CliError::Io { path: name.clone(), source })?;
            Ok((name, text))
        }
        _ => {
            let mut text = String::new();
            std::io::stdin()
                .read_to_string(&mut text)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            Ok(("<stdin>".into(), text))
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<Seq, CliError> {
    let (name, text) = read_text(path)?;
    bfile::parse(&text).map_err(|source| CliError::Format { context: name, source })
}

fn read_table(path: &Path) -> Result<TimeChange, CliError> {
    let table = read_input(Some(path))?;
    let values = table
        .terms()
        .iter()
        .enumerate()
        .map(|(i, t)| {
            t.to_usize().ok_or_else(|| {
                CliError::Usage(format!("table entry {} is not a valid index", i + 1))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(TimeChange::explicit(values)?)
}

fn horizon(a: &Seq, terms: Option<usize>) -> usize {
    terms.unwrap_or(a.len())
}

/// Largest N with h(1..=N) all inside a source of `len` terms.
fn sample_horizon(h: &TimeChange, len: usize) -> Result<usize, CliError> {
    let mut n = 0;
    loop {
        match h.at(n + 1) {
            Ok(v) if v <= len => n += 1,
            _ => break,
        }
    }
    if n == 0 {
        return Err(CliError::Usage(format!(
            "input has {len} terms, too few to sample even one term"
        )));
    }
    Ok(n)
}

fn parse_list<T: std::str::FromStr>(csv: &str, what: &str) -> Result<Vec<T>, CliError> {
    csv.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| CliError::Usage(format!("{what}: `{}` is not an integer", s.trim())))
        })
        .collect()
}

fn gen(family: &Family, terms: Option<usize>) -> Result<Outcome, CliError> {
    let count = terms.ok_or_else(|| CliError::Usage("gen needs --terms N".into()))?;
    if count == 0 {
        return Err(Error::ZeroHorizon.into());
    }
    let seq = match family {
        Family::Fiblike { c } => fibonacci_like(c.clone(), count)?,
        Family::Linrec { coeffs, init } => {
            let rec = LinearRecurrence::new(
                parse_list(coeffs, "coefficients")?,
                parse_list(init, "initial values")?,
            )?;
            rec.terms(count)?.with_label(format!("linrec coeffs={coeffs} init={init}"))
        }
        Family::Stirling { kind, k } => {
            let kind = match kind {
                1 => StirlingKind::First,
                2 => StirlingKind::Second,
                _ => return Err(CliError::Usage(format!("Stirling kind must be 1 or 2, got {kind}"))),
            };
            stirling_row_sequence(kind, *k, count)?
        }
        Family::Euler => euler_abs_sequence(count)?,
        Family::BernoulliTau => tau_beta_sequences(count)?.0,
        Family::BernoulliBeta => tau_beta_sequences(count)?.1,
    };
    Ok(Outcome::new(bfile::render(&seq), true))
}

fn summary(report: &RealizabilityReport) -> String {
    let mut s = format!("verdict: {}\n", report.verdict_label());
    if let Some(f) = report.first_failure {
        writeln!(s, "fails {} at n={}", f.condition, f.n).unwrap();
    }
    s
}

fn orbits(a: &Seq, cli: &Cli) -> Result<Outcome, CliError> {
    let n = horizon(a, cli.terms);
    let counts = orbit_counts(a, n)?;
    let natural = counts.to_naturals().is_some();
    let shown: Vec<String> = counts.as_slice().iter().map(ToString::to_string).collect();
    let output = if cli.json {
        let doc = serde_json::json!({ "horizon": n, "orbits": shown });
        format!("{}\n", serde_json::to_string_pretty(&doc)?)
    } else {
        shown.iter().enumerate().map(|(i, b)| format!("{} {b}\n", i + 1)).collect()
    };
    Ok(Outcome::new(output, natural))
}

fn local(a: &Seq, prime: Option<u64>, cli: &Cli) -> Result<Outcome, CliError> {
    let n = horizon(a, cli.terms);
    let (reports, trivial) = match prime {
        Some(p) => (vec![check_local(a, p, n)?], None),
        None => {
            let scan = check_everywhere_local(a, n)?;
            (scan.reports, Some(scan.trivial_primes))
        }
    };
    let pass = reports.iter().all(|r| r.is_consistent());
    let output = if cli.json {
        ReportDocument::from(&check_realizable(a, n)?).with_local(&reports).to_json()
    } else {
        let mut s = String::new();
        for r in &reports {
            write!(s, "p={}: {}", r.prime, r.report.verdict_label()).unwrap();
            if let Some(f) = r.report.first_failure {
                write!(s, ", fails {} at n={}", f.condition, f.n).unwrap();
            }
            s.push('\n');
        }
        if let Some(trivial) = trivial {
            let failing: Vec<String> = reports
                .iter()
                .filter(|r| !r.is_consistent())
                .map(|r| r.prime.to_string())
                .collect();
            if failing.is_empty() {
                writeln!(s, "consistent at every prime ({trivial} primes <= {n} divide no term)")
                    .unwrap();
            } else {
                writeln!(s, "failing primes: {}", failing.join(" ")).unwrap();
            }
        }
        s
    };
    Ok(Outcome::new(output, pass))
}

fn multiplier(a: &Seq, cli: &Cli) -> Result<Outcome, CliError> {
    let n = horizon(a, cli.terms);
    let m = minimal_multiplier(a, n)?;
    let pass = m.multiplier.is_one() && m.sign_ok;
    let output = if cli.json {
        ReportDocument::from(&check_realizable(a, n)?).with_multiplier(&m).to_json()
    } else {
        let primes: Vec<String> = m.primes().iter().map(ToString::to_string).collect();
        format!(
            "C_{n}: {}\nsign_ok: {}\ndenominator primes: {}\n",
            m.multiplier,
            m.sign_ok,
            primes.join(" ")
        )
    };
    Ok(Outcome::new(output, pass))
}

fn point_cap(flag: Option<usize>) -> Result<usize, CliError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(POINT_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{POINT_CAP_VAR}=`{v}` is not a point count"))),
        Err(_) => Ok(DEFAULT_POINT_CAP),
    }
}

fn realize(a: &Seq, explicit: Option<Option<usize>>, terms: Option<usize>) -> Result<Outcome, CliError> {
    let n = horizon(a, terms);
    let ct = match realize_cycle_type(a, n) {
        Ok(ct) => ct,
        Err(Error::NotRealizable(f)) => {
            return Ok(Outcome {
                output: String::new(),
                note: Some(format!("not realizable: fails {} at n={}", f.condition, f.n)),
                code: 1,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let output = match explicit {
        None => format!("{}\n", cycles::render(&ct)),
        Some(flag) => {
            // 1-based labels, matching cycle notation
            let perm: Vec<usize> =
                explicit_permutation(&ct, point_cap(flag)?)?.into_iter().map(|x| x + 1).collect();
            format!(
                "{{\"cycle_type\":{},\"permutation\":{}}}\n",
                cycles::render(&ct),
                serde_json::to_string(&perm)?
            )
        }
    };
    Ok(Outcome::new(output, true))
}
