//! Command-line front end for the atlas: argument handling, dispatch and artifact writing.
//!
//! Every command produces one artifact, either JSON carrying `"schema": 1` or CSV with a fixed
//! header, written to stdout or atomically to `--out`.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use vortex_atlas::census::{self, CensusRow};
use vortex_atlas::collinear::{self, CollinearReport};
use vortex_atlas::kite::{self, Atlas, Bounds, KiteReport, TraceOptions};
use vortex_atlas::ratpoly::{parse_rational, to_f64, Rational};
use vortex_atlas::rhombus::{self, RhombusFamily};
use vortex_atlas::vortexcore::{certify, EquilibriumCertificate, PlanarConfiguration};

/// Version tag embedded in every JSON artifact.
pub const SCHEMA: u32 = 1;

/// Environment variable supplying the default worker count.
pub const WORKERS_ENV: &str = "VORTEX_ATLAS_WORKERS";

/// Exit code for malformed invocations.
pub const EXIT_USAGE: i32 = 2;

/// Exit code for incomplete solves and failed certifications.
pub const EXIT_INCOMPLETE: i32 = 3;

/// Front-end failures, each mapped to an exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Help or version text was requested.
    #[error("{0}")]
    Help(String),
    /// Bad flags or values.
    #[error("{0}")]
    Usage(String),
    /// A solver or transcription check failed.
    #[error("{0}")]
    Math(#[from] vortex_atlas::Error),
    /// Reading the config file or writing the artifact failed.
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// Process exit code.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Help(_) => 0,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Math(_) => EXIT_INCOMPLETE,
            CliError::Io(_) => 1,
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Artifact encoding.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Pretty-printed JSON.
    Json,
    /// Comma-separated values with a header line.
    Csv,
}

/// Solution families for `solve`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Collinear, kite and rhombus.
    All,
    /// Collinear configurations.
    Collinear,
    /// Symmetric kites.
    Kite,
    /// The rhombus closed form.
    Rhombus,
}

/// Curves exported by `curves`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Plot {
    /// The curve `f = 0` together with the pole curve `l = (1 - k^2) / (2k)`.
    FZero,
    /// `G4` along the arcs of `f = 0`.
    Gamma4,
}

/// Flags shared by every command.
#[derive(Args, Clone, Debug)]
pub struct Common {
    /// Strength of vortex 4, as `p/q`, an integer or a decimal.
    #[arg(long, allow_hyphen_values = true)]
    pub gamma4: Option<String>,
    /// Closed interval `lo:hi` of strengths.
    #[arg(long, allow_hyphen_values = true)]
    pub range: Option<String>,
    /// Number of samples in `--range`.
    #[arg(long, default_value_t = 7)]
    pub samples: usize,
    /// Certification tolerance.
    #[arg(long, default_value = "1/10000000000")]
    pub eps: String,
    /// Output encoding.
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Output file, written atomically; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads for parallel solvers.
    #[arg(long, env = WORKERS_ENV)]
    pub workers: Option<usize>,
    /// Flat `key=value` file supplying defaults for any flag.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Top-level parser.
#[derive(Parser, Debug)]
#[command(name = "vortex-atlas", version, about = "Relative equilibria of four point vortices with strengths (1, 1, 1, G4)")]
pub struct Cli {
    /// Command to run.
    #[command(subcommand)]
    pub command: Command,
}

/// Commands.
#[derive(Subcommand, Debug)]
pub enum Command {
    /// Certified solutions at one strength.
    Solve {
        #[command(flatten)]
        common: Common,
        /// Which families to solve.
        #[arg(long, value_enum, default_value_t = Family::All)]
        family: Family,
    },
    /// Labeled census rows compared with the published counts.
    Census {
        #[command(flatten)]
        common: Common,
    },
    /// Census over a range with bifurcation brackets.
    Sweep {
        #[command(flatten)]
        common: Common,
    },
    /// Certifies a user-supplied configuration.
    Certify {
        #[command(flatten)]
        common: Common,
        /// Positions `x1,y1;x2,y2;x3,y3;x4,y4`.
        #[arg(long, allow_hyphen_values = true)]
        positions: String,
        /// Strengths `g1,g2,g3,g4`; defaults to `1,1,1,G4`.
        #[arg(long, allow_hyphen_values = true)]
        strengths: Option<String>,
    },
    /// Plot-ready samples of the kite curves.
    Curves {
        #[command(flatten)]
        common: Common,
        /// Which curves.
        #[arg(long, value_enum, default_value_t = Plot::FZero)]
        plot: Plot,
        /// Square window `lo:hi` for both chart coordinates.
        #[arg(long, allow_hyphen_values = true, default_value = "-3:3")]
        bounds: String,
    },
    /// Rhombus closed forms at one strength or over a range.
    Rhombus {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Solve { common, .. }
            | Command::Census { common }
            | Command::Sweep { common }
            | Command::Certify { common, .. }
            | Command::Curves { common, .. }
            | Command::Rhombus { common } => common,
        }
    }

    fn name(&self) -> &'static str {
        match self {
            Command::Solve { .. } => "solve",
            Command::Census { .. } => "census",
            Command::Sweep { .. } => "sweep",
            Command::Certify { .. } => "certify",
            Command::Curves { .. } => "curves",
            Command::Rhombus { .. } => "rhombus",
        }
    }
}

/// Validated run parameters.
#[derive(Debug)]
pub struct RunConfig {
    /// Parsed command.
    pub command: Command,
    /// Exact strength, when given.
    pub gamma4: Option<Rational>,
    /// Exact interval, when given.
    pub range: Option<(Rational, Rational)>,
    /// Certification tolerance, positive.
    pub eps: Rational,
    /// Worker threads.
    pub workers: Option<usize>,
}

/// Reads a flat `key=value` file; blank lines and lines starting with `#` are skipped.
pub fn read_config(path: &Path) -> Result<Vec<(String, String)>, CliError> {
    let text = fs::read_to_string(path)?;
    let mut out = Vec::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| usage(format!("{}:{}: expected key=value", path.display(), n + 1)))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Inserts config-file entries as flags after the subcommand, skipping any flag already given.
pub fn merge_config(args: &[String]) -> Result<Vec<String>, CliError> {
    let pos = args.iter().position(|a| a == "--config" || a.starts_with("--config="));
    let Some(pos) = pos else {
        return Ok(args.to_vec());
    };
    let path = match args[pos].split_once('=') {
        Some((_, p)) => p.to_string(),
        None => args
            .get(pos + 1)
            .cloned()
            .ok_or_else(|| usage("--config needs a path"))?,
    };
    let given = |key: &str| {
        let flag = format!("--{key}");
        let prefix = format!("{flag}=");
        args.iter().any(|a| *a == flag || a.starts_with(&prefix))
    };
    let mut extra = Vec::new();
    for (k, v) in read_config(Path::new(&path))? {
        if k == "config" {
            return Err(usage("config files cannot include other config files"));
        }
        if !given(&k) {
            extra.push(format!("--{k}={v}"));
        }
    }
    let mut out = args.to_vec();
    let insert_at = out.len().min(2);
    out.splice(insert_at..insert_at, extra);
    Ok(out)
}

fn parse_range(text: &str) -> Result<(Rational, Rational), CliError> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| usage(format!("range '{text}' must look like lo:hi")))?;
    let lo = parse_rational(a).map_err(|e| usage(e.to_string()))?;
    let hi = parse_rational(b).map_err(|e| usage(e.to_string()))?;
    if lo > hi {
        return Err(usage(format!("range '{text}' has lo > hi")));
    }
    Ok((lo, hi))
}

/// Parses and validates the command line (program name first).
pub fn parse(args: &[String]) -> Result<RunConfig, CliError> {
    let args = merge_config(args)?;
    let cli = Cli::try_parse_from(&args).map_err(|e| match e.kind() {
        ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Help(e.to_string()),
        _ => usage(e.to_string()),
    })?;
    let c = cli.command.common();
    let gamma4 = c
        .gamma4
        .as_deref()
        .map(parse_rational)
        .transpose()
        .map_err(|e| usage(e.to_string()))?;
    let range = c.range.as_deref().map(parse_range).transpose()?;
    let eps = parse_rational(&c.eps).map_err(|e| usage(e.to_string()))?;
    if eps <= Rational::from_integer(0.into()) {
        return Err(usage("--eps must be positive"));
    }
    if c.workers == Some(0) {
        return Err(usage("--workers must be positive"));
    }
    if c.samples < 2 {
        return Err(usage("--samples must be at least 2"));
    }
    let needs_gamma = matches!(cli.command, Command::Solve { .. });
    let needs_either = matches!(cli.command, Command::Census { .. } | Command::Rhombus { .. });
    if needs_gamma && gamma4.is_none() {
        return Err(usage("solve needs --gamma4"));
    }
    if needs_either && gamma4.is_none() && range.is_none() {
        return Err(usage(format!("{} needs --gamma4 or --range", cli.command.name())));
    }
    if matches!(cli.command, Command::Sweep { .. }) && range.is_none() {
        return Err(usage("sweep needs --range"));
    }
    if let Command::Curves { bounds, .. } = &cli.command {
        parse_range(bounds)?;
    }
    Ok(RunConfig {
        workers: c.workers,
        command: cli.command,
        gamma4,
        range,
        eps,
    })
}

/// A rendered artifact and the exit code it implies.
#[derive(Debug)]
pub struct Outcome {
    /// Artifact text.
    pub artifact: String,
    /// 0 on success, [`EXIT_INCOMPLETE`] when something was left unresolved or failed certification.
    pub code: i32,
    /// Human-readable notes for stderr.
    pub notes: Vec<String>,
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(m), Value::Object(b)) = (&mut v, body) {
        m.extend(b);
    }
    v
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("values serialize")
}

fn csv_config(family: &str, class: &str, cfg: &PlanarConfiguration, cert: &EquilibriumCertificate) -> String {
    let p = cfg.positions;
    format!(
        "{family},{class},{},{},{},{},{},{},{},{},{},{},{:e},{}",
        cfg.gamma[3],
        p[0][0], p[0][1], p[1][0], p[1][1], p[2][0], p[2][1], p[3][0], p[3][1],
        cert.lambda,
        cert.residual_motion,
        cert.pass
    )
}

const SOLVE_HEADER: &str = "family,class,gamma4,x1,y1,x2,y2,x3,y3,x4,y4,lambda,residual_motion,pass";

struct Solved {
    collinear: Option<CollinearReport>,
    kite: Option<KiteReport>,
    rhombus: Option<Vec<RhombusFamily>>,
}

fn solve(gamma4: &Rational, eps: &Rational, family: Family, format: Format) -> Result<Outcome, CliError> {
    let g = to_f64(gamma4);
    let tol = to_f64(eps);
    let want = |f: Family| family == Family::All || family == f;
    let s = Solved {
        collinear: want(Family::Collinear)
            .then(|| collinear::solve(gamma4, eps))
            .transpose()?,
        kite: want(Family::Kite)
            .then(|| {
                if g == 0.0 {
                    kite::solve_kite_gamma4_zero(tol)
                } else {
                    kite::solve_kite(g, tol)
                }
            })
            .transpose()?,
        rhombus: want(Family::Rhombus)
            .then(|| rhombus::enumerate_families(g, tol))
            .transpose()?,
    };
    let mut notes = Vec::new();
    let mut incomplete = false;
    if let Some(k) = &s.kite {
        for u in &k.unresolved {
            incomplete = true;
            notes.push(format!("unresolved kite candidate ({}, {}): {}", u.point.k, u.point.l, u.reason));
        }
    }
    if let Some(c) = &s.collinear {
        for u in &c.unrecovered {
            notes.push(format!("collinear root in {:?}: {}", u.x2_bracket, u.reason));
        }
    }
    if let Some(r) = &s.rhombus {
        for f in r.iter().filter(|f| !f.certificate.pass) {
            notes.push(format!(
                "rhombus with x^2 = {} is not an equilibrium (motion residual {:e})",
                f.x_squared, f.certificate.residual_motion
            ));
            if family == Family::Rhombus {
                incomplete = true;
            }
        }
    }
    let artifact = match format {
        Format::Json => to_json(&envelope(
            "solve",
            json!({
                "gamma4": gamma4.to_string(),
                "eps": eps.to_string(),
                "complete": !incomplete,
                "collinear": s.collinear.as_ref().map(value),
                "kite": s.kite.as_ref().map(value),
                "rhombus": s.rhombus.as_ref().map(value),
            }),
        )),
        Format::Csv => {
            let mut out = format!("{SOLVE_HEADER}\n");
            for c in s.collinear.iter().flat_map(|r| &r.solutions) {
                let class = if c.symmetric { "symmetric" } else { "asymmetric" };
                out += &csv_config("collinear", class, &c.configuration(), &c.certificate);
                out.push('\n');
            }
            for k in s.kite.iter().flat_map(|r| &r.solutions) {
                let class = value(&k.class);
                let class = class.as_str().unwrap_or_default();
                out += &csv_config("kite", class, &k.point.embed(g), &k.certificate);
                out.push('\n');
            }
            for r in s.rhombus.iter().flatten() {
                let class = value(&r.family);
                let class = class.as_str().unwrap_or_default().to_string();
                out += &csv_config("rhombus", &class, &r.configuration, &r.certificate);
                out.push('\n');
            }
            out
        }
    };
    Ok(Outcome {
        artifact,
        code: if incomplete { EXIT_INCOMPLETE } else { 0 },
        notes,
    })
}

fn census_outcome(
    command: &str,
    rows: &[CensusRow],
    extra: Value,
    format: Format,
) -> Outcome {
    let mut notes = Vec::new();
    for r in rows {
        for u in &r.unresolved {
            notes.push(format!("G4 = {}: unresolved: {}", r.gamma4, u.reason));
        }
        for d in &r.discrepancies {
            notes.push(format!("G4 = {}: discrepancy in {}: {}", r.gamma4, d.family, d.note));
        }
    }
    let incomplete = rows.iter().any(|r| !r.complete);
    let artifact = match format {
        Format::Json => {
            let mut body = json!({ "rows": value(&rows) });
            if let (Value::Object(m), Value::Object(e)) = (&mut body, extra) {
                m.extend(e);
            }
            to_json(&envelope(command, body))
        }
        Format::Csv => {
            let mut out = format!("{}\n", CensusRow::CSV_HEADER);
            for r in rows {
                out += &r.csv_line();
                out.push('\n');
            }
            out
        }
    };
    Outcome {
        artifact,
        code: if incomplete { EXIT_INCOMPLETE } else { 0 },
        notes,
    }
}

fn parse_floats(text: &str, sep: char) -> Result<Vec<f64>, CliError> {
    text.split(sep)
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("'{t}' is not a number")))
        })
        .collect()
}

fn certify_cmd(
    positions: &str,
    strengths: Option<&str>,
    gamma4: Option<&Rational>,
    eps: &Rational,
    format: Format,
) -> Result<Outcome, CliError> {
    let pts: Vec<Vec<f64>> = positions
        .split(';')
        .map(|p| parse_floats(p, ','))
        .collect::<Result<_, _>>()?;
    if pts.len() != 4 || pts.iter().any(|p| p.len() != 2) {
        return Err(usage("--positions needs four x,y pairs separated by ';'"));
    }
    let gamma: Vec<f64> = match (strengths, gamma4) {
        (Some(s), _) => parse_floats(s, ',')?,
        (None, Some(g)) => vec![1.0, 1.0, 1.0, to_f64(g)],
        (None, None) => return Err(usage("certify needs --strengths or --gamma4")),
    };
    if gamma.len() != 4 {
        return Err(usage("--strengths needs four values"));
    }
    let cfg = PlanarConfiguration::new(
        [
            [pts[0][0], pts[0][1]],
            [pts[1][0], pts[1][1]],
            [pts[2][0], pts[2][1]],
            [pts[3][0], pts[3][1]],
        ],
        [gamma[0], gamma[1], gamma[2], gamma[3]],
    );
    let cert = certify(&cfg, to_f64(eps))?;
    let artifact = match format {
        Format::Json => to_json(&envelope(
            "certify",
            json!({ "configuration": value(&cfg), "certificate": value(&cert) }),
        )),
        Format::Csv => {
            let opt = |x: Option<f64>| x.map(|v| format!("{v:e}")).unwrap_or_default();
            format!(
                "kind,lambda,residual_motion,residual_dziobek,residual_condition10,pass\n{},{},{:e},{},{},{}\n",
                value(&cert.kind).as_str().unwrap_or_default(),
                cert.lambda,
                cert.residual_motion,
                opt(cert.residual_dziobek),
                opt(cert.residual_condition10),
                cert.pass
            )
        }
    };
    Ok(Outcome {
        artifact,
        code: if cert.pass { 0 } else { EXIT_INCOMPLETE },
        notes: Vec::new(),
    })
}

fn curves(plot: Plot, bounds: &str, format: Format) -> Result<Outcome, CliError> {
    let (lo, hi) = parse_range(bounds)?;
    let (lo, hi) = (to_f64(&lo), to_f64(&hi));
    let options = TraceOptions {
        bounds: Bounds {
            k_min: lo,
            k_max: hi,
            l_min: lo,
            l_max: hi,
        },
        ..TraceOptions::default()
    };
    let atlas = Atlas::build(&options)?;
    let mut rows: Vec<(String, String, f64, f64, Option<f64>)> = Vec::new();
    for arc in atlas.arcs() {
        for p in arc.samples.iter().filter(|p| options.bounds.contains(p)) {
            let g = kite::gamma4_of(p.k, p.l).ok().filter(|g| g.is_finite());
            rows.push(("f-zero".into(), arc.id.name().into(), p.k, p.l, g));
        }
    }
    if plot == Plot::FZero {
        let n = 600;
        for i in 0..=n {
            let k = lo + (hi - lo) * i as f64 / n as f64;
            if let Some(l) = kite::pole_curve(k).filter(|l| *l >= lo && *l <= hi) {
                rows.push(("pole".into(), String::new(), k, l, None));
            }
        }
    }
    let artifact = match format {
        Format::Csv => {
            let mut out = String::from("curve,arc,k,l,gamma4\n");
            for (c, a, k, l, g) in &rows {
                let g = g.map(|v| v.to_string()).unwrap_or_default();
                out += &format!("{c},{a},{k},{l},{g}\n");
            }
            out
        }
        Format::Json => {
            let pts: Vec<Value> = rows
                .iter()
                .map(|(c, a, k, l, g)| json!({ "curve": c, "arc": a, "k": k, "l": l, "gamma4": g }))
                .collect();
            to_json(&envelope(
                "curves",
                json!({ "plot": value_name(plot), "bounds": [lo, hi], "points": pts }),
            ))
        }
    };
    Ok(Outcome {
        artifact,
        code: 0,
        notes: Vec::new(),
    })
}

fn value_name(plot: Plot) -> &'static str {
    match plot {
        Plot::FZero => "f-zero",
        Plot::Gamma4 => "gamma4",
    }
}

fn rhombus_cmd(cfg: &RunConfig, samples: usize, format: Format) -> Result<Outcome, CliError> {
    let tol = to_f64(&cfg.eps);
    if let Some(g) = &cfg.gamma4 {
        let fams = rhombus::enumerate_families(to_f64(g), tol)?;
        let artifact = match format {
            Format::Json => to_json(&envelope(
                "rhombus",
                json!({ "gamma4": g.to_string(), "families": value(&fams) }),
            )),
            Format::Csv => {
                let mut out = String::from(
                    "gamma4,family,x_squared,side_ratio_sq,side_ratio_sq_alt,lambda_scaled,in_stated_interval,certified\n",
                );
                for f in &fams {
                    out += &format!(
                        "{},{},{},{},{},{},{},{}\n",
                        f.gamma4,
                        value(&f.family).as_str().unwrap_or_default(),
                        f.x_squared,
                        f.side_ratio_sq,
                        f.side_ratio_sq_alt,
                        f.lambda_scaled,
                        f.in_stated_interval,
                        f.certificate.pass
                    );
                }
                out
            }
        };
        return Ok(Outcome {
            artifact,
            code: 0,
            notes: Vec::new(),
        });
    }
    let (lo, hi) = cfg.range.clone().expect("validated");
    let rows = rhombus::sweep(to_f64(&lo), to_f64(&hi), samples, tol)?;
    let artifact = match format {
        Format::Json => to_json(&envelope(
            "rhombus",
            json!({ "range": [lo.to_string(), hi.to_string()], "rows": value(&rows) }),
        )),
        Format::Csv => {
            let opt = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
            let mut out =
                String::from("gamma4,family,x_squared,side_ratio_sq,lambda_scaled,admissible,certified\n");
            for r in &rows {
                out += &format!(
                    "{},{},{},{},{},{},{}\n",
                    r.gamma4,
                    r.family.map(|f| value(&f).as_str().unwrap_or_default().to_string()).unwrap_or_default(),
                    opt(r.x_squared),
                    opt(r.side_ratio_sq),
                    r.lambda_scaled,
                    r.admissible,
                    r.certified
                );
            }
            out
        }
    };
    Ok(Outcome {
        artifact,
        code: 0,
        notes: Vec::new(),
    })
}

fn dispatch(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let c = cfg.command.common();
    let format = c.format;
    match &cfg.command {
        Command::Solve { family, .. } => {
            solve(cfg.gamma4.as_ref().expect("validated"), &cfg.eps, *family, format)
        }
        Command::Census { .. } => {
            if let Some(g) = &cfg.gamma4 {
                let row = census::census_at(g)?;
                Ok(census_outcome("census", &[row], json!({}), format))
            } else {
                let (lo, hi) = cfg.range.clone().expect("validated");
                let s = census::sweep(&lo, &hi, c.samples)?;
                Ok(census_outcome("census", &s.rows, json!({}), format))
            }
        }
        Command::Sweep { .. } => {
            let (lo, hi) = cfg.range.clone().expect("validated");
            let s = census::sweep(&lo, &hi, c.samples)?;
            let extra = json!({
                "range": [lo.to_string(), hi.to_string()],
                "collinear_bifurcations": s.collinear_bifurcations,
                "kite_critical_values": s.kite_critical_values,
            });
            Ok(census_outcome("sweep", &s.rows, extra, format))
        }
        Command::Certify {
            positions,
            strengths,
            ..
        } => certify_cmd(positions, strengths.as_deref(), cfg.gamma4.as_ref(), &cfg.eps, format),
        Command::Curves { plot, bounds, .. } => curves(*plot, bounds, format),
        Command::Rhombus { .. } => rhombus_cmd(cfg, c.samples, format),
    }
}

/// Runs a validated configuration on a pool of the requested size.
pub fn run(cfg: &RunConfig) -> Result<Outcome, CliError> {
    match cfg.workers {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| usage(e.to_string()))?
            .install(|| dispatch(cfg)),
        None => dispatch(cfg),
    }
}

/// Writes `text` to `path` through a temporary file in the same directory and a rename.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "artifact".into());
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Full program: parse, run, write, and return the exit code.
pub fn main_with(args: &[String]) -> i32 {
    let cfg = match parse(args) {
        Ok(c) => c,
        Err(CliError::Help(text)) => {
            print!("{text}");
            return 0;
        }
        Err(e) => {
            eprintln!("{e}");
            return e.exit_code();
        }
    };
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    for n in &outcome.notes {
        eprintln!("{n}");
    }
    let written = match &cfg.command.common().out {
        Some(p) => write_atomic(p, &outcome.artifact),
        None => std::io::stdout().write_all(outcome.artifact.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    outcome.code
}

#[cfg(test)]
mod tests {
    use super::*;
    use vortex_atlas::ratpoly::rat;

    fn args(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn ranges_parse_exactly() {
        let (lo, hi) = parse_range("-1/2:0.25").unwrap();
        assert_eq!(lo, rat(-1, 2));
        assert_eq!(hi, rat(1, 4));
        assert!(parse_range("1").is_err());
        assert!(parse_range("2:1").is_err());
    }

    #[test]
    fn negative_values_are_accepted_as_flag_values() {
        let cfg = parse(&args(&["vortex-atlas", "census", "--gamma4", "-3/4"])).unwrap();
        assert_eq!(cfg.gamma4, Some(rat(-3, 4)));
        let cfg = parse(&args(&["vortex-atlas", "sweep", "--range", "-1:2"])).unwrap();
        assert_eq!(cfg.range, Some((rat(-1, 1), rat(2, 1))));
    }

    #[test]
    fn usage_errors_map_to_exit_two() {
        let e = parse(&args(&["vortex-atlas", "census"])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e = parse(&args(&["vortex-atlas", "solve", "--gamma4", "1", "--workers", "0"])).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn envelope_carries_schema() {
        let v = envelope("x", json!({ "a": 1 }));
        assert_eq!(v["schema"], 1);
        assert_eq!(v["command"], "x");
        assert_eq!(v["a"], 1);
    }
}
