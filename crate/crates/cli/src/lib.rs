//! Command-line surface for hyperkit.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 success, 1 failed check (report on stdout), 2 parse or
//! structural error, 3 unsupported operation, 4 numerical degeneracy.

pub mod format;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use hyperkit::amen::{am_report, amenability_constant, idempotency_residual};
use hyperkit::builders::{conjugacy_hypergroup, group_hypergroup, hp, join, quotient};
use hyperkit::spectra::{
    characters_with, dual_hypergroup, eigen::DEFAULT_SEED, fourier, parseval_defect, verify_join_dual,
    verify_quotient_dual, CharacterOptions,
};
use hyperkit::uncertainty::{tightness_scan, uncertainty_check_with, ScanOptions, Witness, DEFAULT_TAU};
use hyperkit::{CharacterTable, Complex, DualResult, Error, FiniteHypergroup, Rational, Scalar};
use serde_json::{json, Value};

use format::{parse_cayley, parse_function, HypergroupFile};

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Core(#[from] Error),
    /// A check failed; its report has already been written to stdout.
    #[error("{0}")]
    Check(String),
}

impl Failure {
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Parse(_) | Failure::Io(_) => 2,
            Failure::Check(_) => 1,
            Failure::Core(e) => match e {
                Error::Structural(_) | Error::LengthMismatch { .. } | Error::HostMismatch | Error::Domain(_) => 2,
                Error::Invalid(_) | Error::Verification(_) | Error::Inconsistent(_) => 1,
                Error::Unsupported(_) | Error::NotExact(_) => 3,
                Error::Degenerate(_) => 4,
            },
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    /// Exact rationals when every value is rational, floats otherwise.
    Auto,
    Exact,
    Float,
}

#[derive(Parser, Debug)]
#[command(name = "hyperkit", version, about = "Finite hypergroups: Haar measure, characters, duals, amenability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the constructed (or parsed) hypergroup to this file
    #[arg(long, global = true)]
    emit: Option<PathBuf>,
    /// Fractional digits for float output
    #[arg(long, global = true, default_value_t = 12)]
    precision: usize,
    #[arg(long, global = true, value_enum, default_value_t = Mode::Auto)]
    mode: Mode,
    /// Seed for the eigen-solver and random scans (HYPERKIT_SEED overrides)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Machine-readable output
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the hypergroup axioms
    Validate { file: PathBuf },
    /// Canonical Haar measure
    Haar { file: PathBuf },
    /// Character table and hyperdimensions
    Chars { file: PathBuf },
    /// Dual hypergroup on the characters, or the obstruction
    Dual { file: PathBuf },
    /// Conjugacy-class hypergroup of a group
    Conj {
        #[arg(long)]
        cayley: PathBuf,
    },
    /// A group as a hypergroup
    Group {
        #[arg(long)]
        cayley: PathBuf,
    },
    /// The two-element hypergroup H_p
    Hp {
        #[arg(long)]
        p: String,
    },
    /// Join K v J
    Join { k: PathBuf, j: PathBuf },
    /// Quotient by a subhypergroup
    Quotient {
        file: PathBuf,
        /// Comma-separated element labels
        #[arg(long, value_delimiter = ',')]
        sub: Vec<String>,
    },
    /// Amenability constant of the l1 algebra
    Am { file: PathBuf },
    /// Support uncertainty inequality for one function
    Uncertainty {
        file: PathBuf,
        #[arg(long = "fn")]
        function: PathBuf,
        /// Relative support threshold
        #[arg(long, default_value_t = DEFAULT_TAU)]
        tau: f64,
    },
    /// Search for functions making the uncertainty inequality tight
    Scan {
        file: PathBuf,
        /// Number of random sparse functions
        #[arg(long, default_value_t = 200)]
        count: usize,
    },
    /// Fourier coefficients of a function
    Fourier {
        file: PathBuf,
        #[arg(long = "fn")]
        function: PathBuf,
    },
}

struct Ctx {
    precision: usize,
    json: bool,
    emit: Option<PathBuf>,
    seed: u64,
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let seed = std::env::var("HYPERKIT_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .or(cli.seed)
        .unwrap_or(DEFAULT_SEED);
    let ctx = Ctx { precision: cli.precision, json: cli.json, emit: cli.emit, seed };
    let result = match cli.mode {
        Mode::Exact => execute::<Rational>(&cli.command, &ctx, out),
        Mode::Float => execute::<f64>(&cli.command, &ctx, out),
        Mode::Auto => {
            let mut buf = Vec::new();
            match execute::<Rational>(&cli.command, &ctx, &mut buf) {
                Err(Failure::Core(Error::NotExact(_))) => execute::<f64>(&cli.command, &ctx, out),
                other => out.write_all(&buf).map_err(Failure::from).and(other),
            }
        }
    };
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "hyperkit: {e}");
            e.exit_code()
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<HypergroupFile, Failure> {
    HypergroupFile::from_json(&read(path)?)
}

fn stem(path: &Path) -> String {
    path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default()
}

fn display_name(file: &HypergroupFile, path: &Path) -> String {
    if file.name.is_empty() {
        stem(path)
    } else {
        file.name.clone()
    }
}

fn emit<S: Scalar>(ctx: &Ctx, name: &str, h: &FiniteHypergroup<S>) -> Result<(), Failure> {
    if let Some(path) = &ctx.emit {
        std::fs::write(path, HypergroupFile::from_hypergroup(name, h).to_json())
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn trim_float(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    let t = s.trim_end_matches('0').trim_end_matches('.');
    if t == "-0" {
        "0".into()
    } else {
        t.into()
    }
}

fn fmt_scalar<S: Scalar>(x: &S, precision: usize) -> String {
    let s = x.render(precision);
    if S::EXACT {
        s
    } else {
        trim_float(s)
    }
}

fn fmt_complex<S: Scalar>(z: &Complex<S>, precision: usize) -> String {
    let re = fmt_scalar(&z.re, precision);
    let im = fmt_scalar(&z.im, precision);
    if im == "0" {
        return re;
    }
    let (sign, mag) = match im.strip_prefix('-') {
        Some(m) => ('-', m.to_string()),
        None => ('+', im),
    };
    if re == "0" {
        format!("{}{mag}i", if sign == '-' { "-" } else { "" })
    } else {
        format!("{re}{sign}{mag}i")
    }
}

/// Left-aligned columns separated by two spaces.
fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, s)| format!("{s:<w$}", w = widths[c]))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

fn print_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string_pretty(v).expect("json values serialize"))?;
    Ok(())
}

fn print_hypergroup<S: Scalar>(out: &mut dyn Write, ctx: &Ctx, name: &str, h: &FiniteHypergroup<S>) -> Result<(), Failure> {
    let p = ctx.precision;
    if ctx.json {
        let file = HypergroupFile::from_hypergroup(name, h);
        let mut v = serde_json::to_value(&file).expect("plain data serializes");
        v["haar"] = json!(h.haar().iter().map(|l| fmt_scalar(l, p)).collect::<Vec<_>>());
        return print_json(out, &v);
    }
    writeln!(out, "{name}: {} elements, {}", h.order(), if h.is_commutative() { "commutative" } else { "noncommutative" })?;
    let mut rows = vec![vec!["element".to_string(), "inverse".into(), "haar".into()]];
    for x in 0..h.order() {
        rows.push(vec![h.label(x).into(), h.label(h.inverse(x)).into(), fmt_scalar(&h.haar()[x], p)]);
    }
    write!(out, "{}", table(&rows))?;
    writeln!(out, "total haar: {}", fmt_scalar(h.total_haar(), p))?;
    Ok(())
}

fn char_table<S: Scalar>(ctx: &Ctx, h: &FiniteHypergroup<S>) -> Result<CharacterTable<S>, Failure> {
    Ok(characters_with(h, CharacterOptions { seed: ctx.seed })?)
}

fn execute<S: Scalar>(cmd: &Command, ctx: &Ctx, out: &mut dyn Write) -> Result<(), Failure> {
    let p = ctx.precision;
    match cmd {
        Command::Validate { file } => {
            let f = load(file)?;
            let name = display_name(&f, file);
            let report = f.validate::<S>()?;
            if ctx.json {
                let violations: Vec<Value> = report
                    .violations
                    .iter()
                    .map(|v| json!({"axiom": v.axiom.to_string(), "indices": v.indices, "residual": v.residual}))
                    .collect();
                print_json(
                    out,
                    &json!({"name": name, "valid": report.passed(), "associativity_residual": report.associativity_residual, "violations": violations}),
                )?;
            } else if report.passed() {
                writeln!(out, "{name}: valid ({} elements)", f.elements.len())?;
                writeln!(out, "associativity residual: {:e}", report.associativity_residual)?;
            } else {
                writeln!(out, "{name}: invalid")?;
                write!(out, "{report}")?;
            }
            if !report.passed() {
                return Err(Failure::Check(format!("{name} violates the hypergroup axioms")));
            }
            emit(ctx, &name, &f.to_hypergroup::<S>()?)
        }
        Command::Haar { file } => {
            let f = load(file)?;
            let name = display_name(&f, file);
            let h = f.to_hypergroup::<S>()?;
            print_hypergroup(out, ctx, &name, &h)?;
            emit(ctx, &name, &h)
        }
        Command::Chars { file } => {
            let f = load(file)?;
            let name = display_name(&f, file);
            let h = f.to_hypergroup::<S>()?;
            let t = char_table(ctx, &h)?;
            if ctx.json {
                let chars: Vec<Value> = (0..t.len())
                    .map(|i| {
                        json!({
                            "name": format!("chi{i}"),
                            "k": fmt_scalar(&t.hyperdim()[i], p),
                            "values": t.character(i).iter().map(|v| fmt_complex(v, p)).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                print_json(
                    out,
                    &json!({"name": name, "exact": S::EXACT, "elements": h.labels(), "total_haar": fmt_scalar(h.total_haar(), p), "characters": chars}),
                )?;
            } else {
                let mut rows = vec![["char".to_string(), "k".into()].into_iter().chain(h.labels().iter().cloned()).collect::<Vec<_>>()];
                for i in 0..t.len() {
                    let mut row = vec![format!("chi{i}"), fmt_scalar(&t.hyperdim()[i], p)];
                    row.extend(t.character(i).iter().map(|v| fmt_complex(v, p)));
                    rows.push(row);
                }
                write!(out, "{}", table(&rows))?;
            }
            emit(ctx, &name, &h)
        }
        Command::Dual { file } => {
            let f = load(file)?;
            let name = display_name(&f, file);
            let h = f.to_hypergroup::<S>()?;
            let t = char_table(ctx, &h)?;
            match dual_hypergroup(&t)? {
                DualResult::Dual(d) => {
                    let dual_name = format!("dual({name})");
                    print_hypergroup(out, ctx, &dual_name, &d)?;
                    emit(ctx, &dual_name, &d)
                }
                DualResult::Obstruction(o) => {
                    let coefficient = fmt_complex(&o.coefficient, p);
                    let residual = t.column_orthogonality_residual();
                    if ctx.json {
                        print_json(
                            out,
                            &json!({"name": name, "hypergroup": false, "obstruction": {"i": o.i, "j": o.j, "k": o.k, "coefficient": coefficient}, "column_orthogonality_residual": residual}),
                        )?;
                    } else {
                        writeln!(out, "{name}: the characters do not form a hypergroup")?;
                        writeln!(out, "obstruction: chi{} * chi{} has coefficient {coefficient} on chi{}", o.i, o.j, o.k)?;
                        writeln!(out, "column orthogonality residual: {residual:.3e}")?;
                    }
                    Err(Failure::Check(format!("dual of {name} is not a hypergroup")))
                }
            }
        }
        Command::Conj { cayley } => {
            let g = parse_cayley(&read(cayley)?)?;
            let name = format!("Conj({})", stem(cayley));
            let h = conjugacy_hypergroup::<S>(&g);
            print_hypergroup(out, ctx, &name, &h)?;
            emit(ctx, &name, &h)
        }
        Command::Group { cayley } => {
            let g = parse_cayley(&read(cayley)?)?;
            let name = stem(cayley);
            let h = group_hypergroup::<S>(&g);
            print_hypergroup(out, ctx, &name, &h)?;
            emit(ctx, &name, &h)
        }
        Command::Hp { p: value } => {
            let pv = S::parse_literal(value).ok_or_else(|| Failure::Parse(format!("bad value for p: {value:?}")))?;
            let name = format!("H_{value}");
            let h = hp(pv)?;
            print_hypergroup(out, ctx, &name, &h)?;
            emit(ctx, &name, &h)
        }
        Command::Join { k, j } => {
            let (fk, fj) = (load(k)?, load(j)?);
            let (hk, hj) = (fk.to_hypergroup::<S>()?, fj.to_hypergroup::<S>()?);
            let name = format!("{} v {}", display_name(&fk, k), display_name(&fj, j));
            let h = join(&hk, &hj)?;
            print_hypergroup(out, ctx, &name, &h)?;
            if !ctx.json {
                if h.is_commutative() {
                    let report = verify_join_dual(&hk, &hj, &h)?;
                    writeln!(out, "join-dual check: {} characters matched, max residual {:e}", report.matches.len(), report.max_residual())?;
                } else {
                    writeln!(out, "join-dual check: skipped (noncommutative)")?;
                }
            }
            emit(ctx, &name, &h)
        }
        Command::Quotient { file, sub } => {
            let f = load(file)?;
            let hname = display_name(&f, file);
            let h = f.to_hypergroup::<S>()?;
            let idx = sub
                .iter()
                .map(|l| h.index_of(l).ok_or_else(|| Failure::Parse(format!("unknown element {l:?}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let q = quotient(&h, &idx)?;
            let name = format!("{hname}/{{{}}}", sub.join(","));
            print_hypergroup(out, ctx, &name, &q.hypergroup)?;
            if !ctx.json {
                for (c, coset) in q.cosets.iter().enumerate() {
                    let members: Vec<&str> = coset.iter().map(|&x| h.label(x)).collect();
                    writeln!(out, "coset {}: {}", q.hypergroup.label(c), members.join(" "))?;
                }
                if h.is_commutative() {
                    let report = verify_quotient_dual(&h, &idx)?;
                    writeln!(out, "quotient-dual check: {} characters descend", report.matches.len())?;
                }
            }
            emit(ctx, &name, &q.hypergroup)
        }
        Command::Am { file } => {
            let f = load(file)?;
            let name = display_name(&f, file);
            let h = f.to_hypergroup::<S>()?;
            let t = char_table(ctx, &h)?;
            if ctx.json {
                let report = am_report(&t)?;
                print_json(
                    out,
                    &json!({
                        "name": name,
                        "am": fmt_scalar(&report.am, p),
                        "residual_identity": report.residual_identity,
                        "residual_commute": report.residual_commute,
                        "idempotency_residual": idempotency_residual(&t)?,
                    }),
                )?;
            } else {
                writeln!(out, "{}", fmt_scalar(&amenability_constant(&t)?, p))?;
            }
            emit(ctx, &name, &h)
        }
        Command::Uncertainty { file, function, tau } => {
            let f = load(file)?;
            let name = display_name(&f, file);
            let h = f.to_hypergroup::<S>()?;
            let t = char_table(ctx, &h)?;
            let func = parse_function(&read(function)?, &h)?;
            let rep = uncertainty_check_with(&t, &func, *tau)?;
            if ctx.json {
                print_json(
                    out,
                    &json!({
                        "name": name,
                        "support_size": fmt_scalar(&rep.support_size, p),
                        "dual_mass": fmt_scalar(&rep.dual_mass, p),
                        "lhs": fmt_scalar(&rep.lhs, p),
                        "ratio": rep.ratio,
                        "holds": rep.holds,
                        "tau": rep.tau,
                    }),
                )?;
            } else {
                let labels: Vec<&str> = rep.support.iter().map(|&x| h.label(x)).collect();
                let chars: Vec<String> = rep.dual_support.iter().map(|i| format!("chi{i}")).collect();
                writeln!(out, "support: {}", labels.join(" "))?;
                writeln!(out, "dual support: {}", chars.join(" "))?;
                writeln!(out, "haar of support: {}", fmt_scalar(&rep.support_size, p))?;
                writeln!(out, "dual mass: {}", fmt_scalar(&rep.dual_mass, p))?;
                writeln!(out, "total haar: {}", fmt_scalar(&rep.lhs, p))?;
                writeln!(out, "ratio: {}", trim_float(format!("{:.*}", p, rep.ratio)))?;
                writeln!(out, "holds: {}", rep.holds)?;
            }
            if !rep.holds {
                return Err(Failure::Check("uncertainty inequality fails".into()));
            }
            Ok(())
        }
        Command::Scan { file, count } => {
            let f = load(file)?;
            let name = display_name(&f, file);
            let h = f.to_hypergroup::<S>()?;
            let t = char_table(ctx, &h)?;
            let res = tightness_scan(&t, ScanOptions { random_count: *count, seed: ctx.seed })?;
            let witness = match &res.witness {
                Witness::Subhypergroup(k) => {
                    format!("indicator of {{{}}}", k.iter().map(|&x| h.label(x)).collect::<Vec<_>>().join(","))
                }
                Witness::Point(x) => format!("point mass at {}", h.label(*x)),
                Witness::Character(i) => format!("character chi{i}"),
                Witness::Random { index, .. } => format!("random function #{index}"),
            };
            if ctx.json {
                print_json(
                    out,
                    &json!({"name": name, "best_ratio": res.best_ratio, "witness": witness, "evaluated": res.evaluated, "violations": res.violations}),
                )?;
            } else {
                writeln!(out, "best ratio: {}", trim_float(format!("{:.*}", p, res.best_ratio)))?;
                writeln!(out, "witness: {witness}")?;
                writeln!(out, "evaluated: {}", res.evaluated)?;
                writeln!(out, "violations: {}", res.violations)?;
            }
            if res.violations > 0 {
                return Err(Failure::Check(format!("{} functions violate the inequality", res.violations)));
            }
            Ok(())
        }
        Command::Fourier { file, function } => {
            let f = load(file)?;
            let name = display_name(&f, file);
            let h = f.to_hypergroup::<S>()?;
            let t = char_table(ctx, &h)?;
            let func = parse_function(&read(function)?, &h)?;
            let coeffs = fourier(&t, &func)?;
            let defect = parseval_defect(&t, &func)?;
            if ctx.json {
                print_json(
                    out,
                    &json!({
                        "name": name,
                        "coefficients": coeffs.iter().map(|c| fmt_complex(c, p)).collect::<Vec<_>>(),
                        "hyperdimensions": t.hyperdim().iter().map(|k| fmt_scalar(k, p)).collect::<Vec<_>>(),
                        "parseval_defect": defect,
                    }),
                )?;
            } else {
                let mut rows = vec![vec!["char".to_string(), "k".into(), "coefficient".into()]];
                for (i, c) in coeffs.iter().enumerate() {
                    rows.push(vec![format!("chi{i}"), fmt_scalar(&t.hyperdim()[i], p), fmt_complex(c, p)]);
                }
                write!(out, "{}", table(&rows))?;
                writeln!(out, "parseval defect: {defect:e}")?;
            }
            Ok(())
        }
    }
}
