use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toromaps::batch::{run_batch, BatchConfig, DEFAULT_MAX_FLAGS};
use toromaps::cover::{cover_with_exponent, verify_certificate, verify_covering, CoverCertificate};
use toromaps::map::MAX_ENTRY;
use toromaps::render::render_svg;
use toromaps::symmetry::{search_non_vt, summarize};
use toromaps::{build_quotient, template, QuotientSpec, Sublattice, TilingId};

/// Semi-equivelar toroidal maps and their vertex-transitive covers.
#[derive(Parser)]
#[command(name = "toromaps", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dump a tiling template as JSON.
    Info { tiling: TilingId },
    /// Counts, vertex type, polyhedrality and symmetry of a quotient.
    Analyze {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Build the vertex-transitive cover and print its certificate.
    Cover {
        #[command(flatten)]
        spec: SpecArgs,
        /// Use the lattice (r·m)·Z² instead of m·Z².
        #[arg(long, default_value_t = 1)]
        r: i64,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Recheck a stored cover certificate.
    Verify { certificate: PathBuf },
    /// List polyhedral quotients that are not vertex-transitive.
    SearchNonvt {
        tiling: TilingId,
        #[arg(long)]
        det_bound: i64,
    },
    /// Seeded random sweep over all tilings.
    Batch {
        #[arg(long, default_value_t = 10)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 6)]
        max_entry: i64,
        /// Skip matrices whose cover has more flags than this.
        #[arg(long, default_value_t = DEFAULT_MAX_FLAGS)]
        max_flags: usize,
    },
    /// Draw the fundamental domain as SVG.
    Render {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Short code (E3, T44, ...) or vertex type (3.3.3.3.6, [3^4,6^1]).
    tiling: TilingId,
    /// Rows (a, b) and (c, d) of the lattice matrix.
    #[arg(num_args = 4, value_names = ["A", "B", "C", "D"], allow_negative_numbers = true, required = true)]
    matrix: Vec<i64>,
}

impl SpecArgs {
    fn spec(&self) -> Result<QuotientSpec, Failure> {
        let m: [i64; 4] = self.matrix.as_slice().try_into().map_err(|_| Failure::input("expected four matrix entries"))?;
        QuotientSpec::new(self.tiling, Sublattice::from(m)).map_err(Failure::invalid)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

enum Failure {
    Verification(String),
    Input(String),
}

impl Failure {
    fn input(msg: impl Into<String>) -> Self {
        Self::Input(msg.into())
    }

    fn invalid(e: impl std::fmt::Display) -> Self {
        Self::Input(e.to_string())
    }
}

/// Write a line to stdout; a closed pipe just ends the output.
fn emit(text: &str) {
    let mut out = io::stdout().lock();
    if let Err(e) = writeln!(out, "{text}").and_then(|_| out.flush()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn print_json(v: &impl serde::Serialize) -> Result<(), Failure> {
    emit(&serde_json::to_string_pretty(v).map_err(Failure::invalid)?);
    Ok(())
}

fn info(tiling: TilingId) -> Result<(), Failure> {
    let t = template(tiling);
    let snap = |x: f64| {
        let r = (x * 1e12).round() / 1e12;
        if r == 0.0 { 0.0 } else { r }
    };
    let basis = |v: toromaps::Point| [snap(v.x), snap(v.y)];
    print_json(&json!({
        "tiling": tiling.code(),
        "signature": tiling.signature().to_string(),
        "area_factor": tiling.area_factor().symbol(),
        "basis": { "A": basis(t.basis.a), "B": basis(t.basis.b) },
        "reps": t.rep_names,
        "positions": t.positions.iter().map(|&p| basis(p)).collect::<Vec<_>>(),
        "darts": t.neighbors,
        "point_group": t.point_group,
    }))
}

fn analyze(spec: &QuotientSpec, format: Format) -> Result<(), Failure> {
    let map = build_quotient(spec).map_err(Failure::invalid)?;
    let summary = map.summary();
    let sym = summarize(&map);
    let mut doc = json!({ "tiling": spec.tiling.code(), "M": spec.matrix });
    let obj = doc.as_object_mut().unwrap();
    for part in [serde_json::to_value(&summary), serde_json::to_value(&sym)] {
        if let Value::Object(fields) = part.map_err(Failure::invalid)? {
            obj.extend(fields);
        }
    }
    match format {
        Format::Json => print_json(&doc),
        Format::Text => {
            for (k, v) in obj.iter() {
                emit(&format!("{k}: {v}"));
            }
            Ok(())
        }
    }
}

fn cover(spec: &QuotientSpec, r: i64, out: Option<&PathBuf>) -> Result<(), Failure> {
    if r < 1 {
        return Err(Failure::input(format!("--r must be positive, got {r}")));
    }
    let m = spec.matrix.cover_exponent().map_err(Failure::invalid)?;
    let exponent = m.checked_mul(r).ok_or_else(|| Failure::input("cover exponent overflows"))?;
    let build = cover_with_exponent(spec, exponent).map_err(Failure::invalid)?;
    let cert = &build.certificate;
    if cert.has_warning() {
        eprintln!(
            "warning: polyhedral X = {}, polyhedral Y = {}",
            cert.polyhedral.x, cert.polyhedral.y
        );
    }
    let text = serde_json::to_string_pretty(cert).map_err(Failure::invalid)?;
    match out {
        Some(path) => fs::write(path, text + "\n").map_err(|e| Failure::input(format!("{}: {e}", path.display())))?,
        None => emit(&text),
    }
    let report = verify_covering(&build.y, &build.x, cert);
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(Failure::Verification(format!("covering check failed: {f}"))),
    }
}

fn verify(path: &PathBuf) -> Result<(), Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let cert: CoverCertificate = serde_json::from_str(&text).map_err(|e| Failure::input(format!("bad certificate: {e}")))?;
    let report = verify_certificate(&cert).map_err(Failure::invalid)?;
    print_json(&json!({ "passed": report.passed(), "failures": report.failures }))?;
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(Failure::Verification(format!("certificate rejected: {f}"))),
    }
}

fn search(tiling: TilingId, det_bound: i64) -> Result<(), Failure> {
    if !(1..=MAX_ENTRY).contains(&det_bound) {
        return Err(Failure::input(format!("--det-bound must be in 1..={MAX_ENTRY}")));
    }
    let found = search_non_vt(tiling, det_bound).map_err(Failure::invalid)?;
    let witnesses: Vec<Value> = found.iter().map(|s| json!({ "M": s.matrix, "det": s.matrix.det().unwrap_or(0) })).collect();
    print_json(&json!({ "tiling": tiling.code(), "det_bound": det_bound, "count": witnesses.len(), "witnesses": witnesses }))
}

fn batch(cfg: BatchConfig) -> Result<(), Failure> {
    if !(1..=MAX_ENTRY).contains(&cfg.max_entry) {
        return Err(Failure::input(format!("--max-entry must be in 1..={MAX_ENTRY}")));
    }
    let report = run_batch(&cfg).map_err(Failure::invalid)?;
    print_json(&report)?;
    let failed: usize = report.tilings.iter().map(|t| t.failed).sum();
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Verification(format!("{failed} instances failed")))
    }
}

fn render(spec: &QuotientSpec, out: &PathBuf) -> Result<(), Failure> {
    let svg = render_svg(spec).map_err(Failure::invalid)?;
    fs::write(out, svg).map_err(|e| Failure::input(format!("{}: {e}", out.display())))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Info { tiling } => info(tiling),
        Command::Analyze { spec, format } => analyze(&spec.spec()?, format),
        Command::Cover { spec, r, out } => cover(&spec.spec()?, r, out.as_ref()),
        Command::Verify { certificate } => verify(&certificate),
        Command::SearchNonvt { tiling, det_bound } => search(tiling, det_bound),
        Command::Batch { samples, seed, max_entry, max_flags } => batch(BatchConfig {
            samples,
            seed,
            max_entry,
            max_flags,
            ..BatchConfig::default()
        }),
        Command::Render { spec, out } => render(&spec.spec()?, &out),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
