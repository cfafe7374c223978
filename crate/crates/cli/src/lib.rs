//! Command-line front end: single queries, table sweeps, verification
//! suites, and memo-cache management.

pub mod verify;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hecke_core::adlv::{sigma_classes, AdlvCtx, GroupContext, SigmaClass};
use hecke_core::{
    classify, length, parse_element, CoweightVector, Engine, HeckeError, Mode, OrderPolicy,
};
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "hecke",
    about = "Exact class polynomials for the extended affine Weyl group of type A2 tilde, \
             with affine Deligne-Lusztig applications",
    after_help = "Element grammar: t[m,n].w.tau^k with w in {e,s1,s2,s12,s21,s121}; the \
                  integers are the alpha-coordinates of the affine-Weyl translation part.\n\
                  Class ids: Id, O1, O2, O_lam[m,n], C[i], Cp[i], O_idtau, O_lamtau[m,n], \
                  O_tau[i], O0d, O1d, O1pd, O3d, O2md[m].\n\
                  Sigma classes: 1, tau, tau2, or a straight class id (suffix 2 marks the \
                  second coset, e.g. O_tau2[1]; gl3 accepts NAME:c for a central lift).\n\
                  Exit codes: 0 success, 1 usage or domain error, 2 verification failure."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Split,
    #[value(name = "split-tau", alias = "tau")]
    SplitTau,
    Twisted,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Split => Mode::Split,
            ModeArg::SplitTau => Mode::SplitTau,
            ModeArg::Twisted => Mode::Twisted,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Pgl3,
    Gl3,
    U3,
    D3x,
}

impl From<GroupArg> for GroupContext {
    fn from(g: GroupArg) -> GroupContext {
        match g {
            GroupArg::Pgl3 => GroupContext::Pgl3,
            GroupArg::Gl3 => GroupContext::Gl3,
            GroupArg::U3 => GroupContext::U3,
            GroupArg::D3x => GroupContext::D3x,
        }
    }
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum FormatArg {
    Json,
    Csv,
    Text,
}

#[derive(Args)]
struct CacheArgs {
    /// Memo-cache file; write-through on computing commands
    /// (defaults to the HECKE_CACHE environment variable).
    #[arg(long, global = true)]
    cache_file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Classify an element into its (delta-)conjugacy class.
    Classify {
        element: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
    },
    /// Class polynomial of an element on the minimal-length basis.
    Classpoly {
        element: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        /// Randomized reduction-order seed (the output never depends on it).
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Nonemptiness and dimension of an affine Deligne-Lusztig variety.
    Adlv {
        element: String,
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        b: String,
        /// Central lift of the element (gl3 only).
        #[arg(long)]
        central: Option<i64>,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Number of rational points over F_q for a superbasic class.
    Points {
        element: String,
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        b: String,
        #[arg(long)]
        q: u64,
    },
    /// Dimension comparison against the basic class with equal grading.
    Ghkr {
        element: String,
        #[arg(long, value_enum)]
        group: GroupArg,
        #[arg(long)]
        b: String,
        /// Length threshold offset above the Newton pairing.
        #[arg(long, default_value_t = 6)]
        threshold_offset: i64,
    },
    /// Leading coefficients of the selected entries at w0 t^lambda.
    Leading {
        /// Dominant coweight in alpha-coordinates, as m,n.
        #[arg(long)]
        lam: String,
        #[arg(long, value_enum, default_value = "pgl3")]
        group: GroupArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Run a verification suite; exit code 2 on failures.
    Verify {
        /// One of: closedform, dims, points, ghkr, invariants.
        suite: String,
        #[arg(long, default_value_t = 12)]
        max_length: u64,
    },
    /// Class polynomials for every element up to a length bound.
    Sweep {
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long, default_value_t = 8)]
        max_length: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        cache: CacheArgs,
    },
    /// Inspect a memo-cache file.
    Cache {
        #[arg(long)]
        cache_file: PathBuf,
    },
}

fn cache_path(args: &CacheArgs) -> Option<PathBuf> {
    args.cache_file
        .clone()
        .or_else(|| std::env::var_os("HECKE_CACHE").map(PathBuf::from))
}

fn load_cache(engine: &mut Engine, path: &Option<PathBuf>) -> Result<(), HeckeError> {
    if let Some(p) = path {
        if p.exists() {
            let file = std::fs::File::open(p)
                .map_err(|e| HeckeError::CacheFormat(e.to_string()))?;
            engine.load_cache(std::io::BufReader::new(file))?;
        }
    }
    Ok(())
}

fn save_cache(engine: &Engine, path: &Option<PathBuf>) -> Result<(), HeckeError> {
    if let Some(p) = path {
        let file =
            std::fs::File::create(p).map_err(|e| HeckeError::CacheFormat(e.to_string()))?;
        engine
            .save_cache(std::io::BufWriter::new(file))
            .map_err(|e| HeckeError::CacheFormat(e.to_string()))?;
    }
    Ok(())
}

fn poly_csv(poly: &hecke_core::UPoly) -> String {
    poly.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn classpoly_output(
    f: &hecke_core::ClassPolynomial,
    format: FormatArg,
    out: &mut dyn Write,
) -> std::io::Result<()> {
    match format {
        FormatArg::Json => writeln!(out, "{}", f.to_json()),
        FormatArg::Csv => {
            writeln!(out, "class,coefficients")?;
            for (c, p) in &f.entries {
                writeln!(out, "{c},{}", poly_csv(p))?;
            }
            Ok(())
        }
        FormatArg::Text => {
            for (c, p) in &f.entries {
                writeln!(out, "{c}: {p}")?;
            }
            Ok(())
        }
    }
}

fn parse_lambda(text: &str) -> Result<CoweightVector, HeckeError> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || HeckeError::Parse {
        position: 0,
        message: format!("expected `m,n` alpha-coordinates, got `{text}`"),
    };
    if parts.len() != 2 {
        return Err(bad());
    }
    let m: i64 = parts[0].parse().map_err(|_| bad())?;
    let n: i64 = parts[1].parse().map_err(|_| bad())?;
    Ok(CoweightVector::from_alpha(m, n))
}

fn dispatch(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, HeckeError> {
    match cli.command {
        Command::Classify { element, mode } => {
            let a = parse_element(&element)?;
            let class = classify(&a, mode.into())?;
            let _ = writeln!(out, "{class}");
            Ok(0)
        }
        Command::Classpoly {
            element,
            mode,
            format,
            seed,
            cache,
        } => {
            let a = parse_element(&element)?;
            let order = seed.map_or(OrderPolicy::Canonical, OrderPolicy::Seeded);
            let mut engine = Engine::with_order(mode.into(), order);
            let path = cache_path(&cache);
            load_cache(&mut engine, &path)?;
            let f = engine.class_polynomial(&a)?;
            save_cache(&engine, &path)?;
            classpoly_output(&f, format, out).ok();
            Ok(0)
        }
        Command::Adlv {
            element,
            group,
            b,
            central,
            format,
        } => {
            let a = parse_element(&element)?;
            let group: GroupContext = group.into();
            let b = SigmaClass::parse(group, &b)?;
            let mut ctx = AdlvCtx::new();
            let r = ctx.adlv(group, &a, central, &b)?;
            match format {
                FormatArg::Json => {
                    let _ = writeln!(out, "{}", r.to_json(group, &a, &b));
                }
                FormatArg::Csv => {
                    let _ = writeln!(out, "group,element,b,nonempty,dim,witness_class,degree");
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{},{}",
                        group.name(),
                        a,
                        b,
                        r.nonempty,
                        r.dim.map_or(String::new(), |d| d.to_string()),
                        r.witness_label().unwrap_or_default(),
                        r.degree.map_or(String::new(), |d| d.to_string()),
                    );
                }
                FormatArg::Text => {
                    if r.nonempty {
                        let _ = writeln!(
                            out,
                            "nonempty, dim {} (witness {}, degree {})",
                            r.dim.unwrap(),
                            r.witness_label().unwrap(),
                            r.degree.unwrap()
                        );
                    } else {
                        let _ = writeln!(out, "empty");
                    }
                }
            }
            Ok(0)
        }
        Command::Points { element, group, b, q } => {
            if q < 2 {
                return Err(HeckeError::Parse {
                    position: 0,
                    message: "q must be at least 2".into(),
                });
            }
            let a = parse_element(&element)?;
            let group: GroupContext = group.into();
            let b = SigmaClass::parse(group, &b)?;
            let mut ctx = AdlvCtx::new();
            let count = ctx.rational_points(group, &a, &b, q)?;
            let _ = writeln!(out, "{count}");
            Ok(0)
        }
        Command::Ghkr {
            element,
            group,
            b,
            threshold_offset,
        } => {
            let a = parse_element(&element)?;
            let group: GroupContext = group.into();
            let b = SigmaClass::parse(group, &b)?;
            let mut ctx = AdlvCtx::new();
            let ok = ctx.ghkr_check(group, &a, &b, threshold_offset)?;
            let _ = writeln!(out, "{ok}");
            Ok(0)
        }
        Command::Leading { lam, group, format } => {
            let lambda = parse_lambda(&lam)?;
            let mut ctx = AdlvCtx::new();
            let table = ctx.leading_table(lambda, group.into())?;
            match format {
                FormatArg::Json => {
                    let map: serde_json::Map<String, serde_json::Value> = table
                        .iter()
                        .map(|(b, l)| {
                            (
                                b.to_string(),
                                serde_json::Value::Number(l.to_string().parse().unwrap()),
                            )
                        })
                        .collect();
                    let _ = writeln!(out, "{}", serde_json::Value::Object(map));
                }
                FormatArg::Csv => {
                    let _ = writeln!(out, "b,leading");
                    for (b, l) in &table {
                        let _ = writeln!(out, "{b},{l}");
                    }
                }
                FormatArg::Text => {
                    for (b, l) in &table {
                        let _ = writeln!(out, "{b}: {l}");
                    }
                }
            }
            Ok(0)
        }
        Command::Verify { suite, max_length } => {
            match verify::run_suite(&suite, max_length) {
                None => Err(HeckeError::Parse {
                    position: 0,
                    message: format!(
                        "unknown suite `{suite}` (expected closedform, dims, points, ghkr, invariants)"
                    ),
                }),
                Some(report) => {
                    let _ = write!(out, "{}", report.render());
                    if report.is_ok() {
                        Ok(0)
                    } else {
                        let _ = writeln!(err, "verification failed: {} cases", report.failures.len());
                        Ok(2)
                    }
                }
            }
        }
        Command::Sweep {
            mode,
            max_length,
            format,
            seed,
            cache,
        } => {
            let mode: Mode = mode.into();
            let order = seed.map_or(OrderPolicy::Canonical, OrderPolicy::Seeded);
            let mut engine = Engine::with_order(mode, order);
            let path = cache_path(&cache);
            load_cache(&mut engine, &path)?;
            if format == FormatArg::Csv {
                let _ = writeln!(out, "element,length,class,poly");
            }
            for a in hecke_core::enumerate_elements(mode, max_length) {
                let f = engine.class_polynomial(&a)?;
                let class = classify(&a, mode)?;
                match format {
                    FormatArg::Json => {
                        let _ = writeln!(
                            out,
                            "{}",
                            serde_json::json!({
                                "element": a.to_string(),
                                "length": length(&a),
                                "class": class.to_string(),
                                "poly": f.to_json(),
                            })
                        );
                    }
                    FormatArg::Csv => {
                        let entries = f
                            .entries
                            .iter()
                            .map(|(c, p)| format!("{c}=[{}]", poly_csv(p)))
                            .collect::<Vec<_>>()
                            .join(";");
                        let _ = writeln!(out, "{a},{},{class},{entries}", length(&a));
                    }
                    FormatArg::Text => {
                        let _ = writeln!(out, "{a}  (length {}, class {class})", length(&a));
                        classpoly_output(&f, FormatArg::Text, out).ok();
                    }
                }
            }
            save_cache(&engine, &path)?;
            Ok(0)
        }
        Command::Cache { cache_file } => {
            let file = std::fs::File::open(&cache_file)
                .map_err(|e| HeckeError::CacheFormat(e.to_string()))?;
            // Validate against the strictest mode-independent reader: count
            // records for each mode.
            let mut totals = Vec::new();
            for mode in [Mode::Split, Mode::SplitTau, Mode::Twisted] {
                let file = std::fs::File::open(&cache_file)
                    .map_err(|e| HeckeError::CacheFormat(e.to_string()))?;
                let mut engine = Engine::new(mode);
                let n = engine.load_cache(std::io::BufReader::new(file))?;
                totals.push((mode, n));
            }
            drop(file);
            for (mode, n) in totals {
                let _ = writeln!(out, "{}: {} entries", mode.name(), n);
            }
            Ok(0)
        }
    }
}

/// Entry point shared by the binary and the integration tests. Usage errors
/// exit 1, verification failures exit 2.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own help/version output.
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return 1;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(cli, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

/// Convenience used by unit tests: run and capture stdout.
pub fn run_capture(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = run(
        std::iter::once("hecke").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

/// Enumerate the sigma-class names a group accepts (help and tests).
pub fn sigma_class_names(group: GroupContext, newton_bound: u64) -> Vec<String> {
    sigma_classes(group, newton_bound)
        .iter()
        .map(|b| b.to_string())
        .collect()
}
