//! Seeded random sweeps over quotient specs.
//!
//! Matrices are drawn with `ChaCha8Rng::seed_from_u64(seed)`, switched to
//! stream `i` for the tiling at position `i` of [`TilingId::ALL`], so each
//! tiling's sample is independent of which other tilings are swept. Entries
//! are uniform in `[-E, E]`; draws with zero determinant or with a cover
//! above the flag budget are rejected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cover::cover_with_exponent;
use crate::cover::verify_covering;
use crate::error::Result;
use crate::map::{QuotientSpec, MAX_ENTRY};
use crate::symmetry::is_vertex_transitive;
use crate::tilings::{template, TilingId};
use crate::Sublattice;

pub const GENERATOR: &str = "ChaCha8Rng::seed_from_u64(seed), stream = tiling position";
pub const DEFAULT_MAX_FLAGS: usize = 600;

#[derive(Clone, Debug)]
pub struct BatchConfig {
    pub samples: usize,
    pub seed: u64,
    pub max_entry: i64,
    pub max_flags: usize,
    pub tilings: Vec<TilingId>,
    /// Draws allowed per tiling before giving up.
    pub max_attempts: u64,
}

impl Default for BatchConfig {
    fn default() -> Self {
        Self {
            samples: 10,
            seed: 0,
            max_entry: 6,
            max_flags: DEFAULT_MAX_FLAGS,
            tilings: TilingId::ALL.to_vec(),
            max_attempts: 1_000_000,
        }
    }
}

/// Flags in one translation cell of the tiling.
pub fn flags_per_cell(tiling: TilingId) -> usize {
    let t = template(tiling);
    (0..t.rep_count()).map(|r| 2 * t.degree(r)).sum()
}

fn stream_of(tiling: TilingId) -> u64 {
    TilingId::ALL.iter().position(|&t| t == tiling).unwrap() as u64
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sample {
    pub specs: Vec<QuotientSpec>,
    pub attempts: u64,
}

/// Draw up to `cfg.samples` admissible specs for `tiling`.
pub fn sample_specs(tiling: TilingId, cfg: &BatchConfig) -> Result<Sample> {
    let e = cfg.max_entry.clamp(1, MAX_ENTRY);
    let per_cell = flags_per_cell(tiling) as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(stream_of(tiling));
    let mut specs = Vec::with_capacity(cfg.samples);
    let mut attempts = 0;
    while specs.len() < cfg.samples && attempts < cfg.max_attempts {
        attempts += 1;
        let entries: [i64; 4] = std::array::from_fn(|_| rng.gen_range(-e..=e));
        let matrix = Sublattice::from(entries);
        if matrix.det()? == 0 {
            continue;
        }
        let m = matrix.cover_exponent()? as u64;
        if per_cell.saturating_mul(m * m) > cfg.max_flags as u64 {
            continue;
        }
        specs.push(QuotientSpec::new(tiling, matrix)?);
    }
    Ok(Sample { specs, attempts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceResult {
    pub tiling: TilingId,
    #[serde(rename = "M")]
    pub matrix: Sublattice,
    pub det: i64,
    pub m: i64,
    pub n: i64,
    pub x_flags: usize,
    pub y_flags: usize,
    pub x_polyhedral: bool,
    pub y_polyhedral: bool,
    /// `n·|det| = m²`, `m | |det|`, `n | m`, and all cell ratios equal `n`.
    pub arithmetic: bool,
    pub euler_zero: bool,
    pub flag_axioms: bool,
    pub vertex_type: bool,
    pub covering: bool,
    pub y_vertex_transitive: bool,
    pub passed: bool,
}

/// Build the cover of `spec` and run every per-instance check on it.
pub fn check_instance(spec: &QuotientSpec) -> Result<InstanceResult> {
    let build = cover_with_exponent(spec, spec.matrix.cover_exponent()?)?;
    let (x, y, cert) = (&build.x, &build.y, &build.certificate);
    let det = spec.index()?;
    let (m, n) = (cert.m, cert.n);
    let ratios = [
        (y.vertex_count(), x.vertex_count()),
        (y.edge_count(), x.edge_count()),
        (y.face_count(), x.face_count()),
        (y.flag_count(), x.flag_count()),
    ];
    let arithmetic = n * det == m * m
        && det % m == 0
        && m % n == 0
        && ratios.iter().all(|&(a, b)| a as i64 == n * b as i64);
    let euler_zero = x.euler_characteristic() == 0 && y.euler_characteristic() == 0;
    let flag_axioms = x.check_flag_axioms().is_ok() && y.check_flag_axioms().is_ok();
    let sig = spec.tiling.signature();
    let vertex_type = x.is_semi_equivelar().as_ref() == Some(&sig) && y.is_semi_equivelar().as_ref() == Some(&sig);
    let covering = verify_covering(y, x, cert).passed();
    let y_vertex_transitive = is_vertex_transitive(y);
    let passed = arithmetic
        && euler_zero
        && flag_axioms
        && vertex_type
        && covering
        && (y_vertex_transitive || !cert.polyhedral.y);
    Ok(InstanceResult {
        tiling: spec.tiling,
        matrix: spec.matrix,
        det,
        m,
        n,
        x_flags: x.flag_count(),
        y_flags: y.flag_count(),
        x_polyhedral: cert.polyhedral.x,
        y_polyhedral: cert.polyhedral.y,
        arithmetic,
        euler_zero,
        flag_axioms,
        vertex_type,
        covering,
        y_vertex_transitive,
        passed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TilingSummary {
    pub tiling: TilingId,
    pub requested: usize,
    pub drawn: usize,
    pub attempts: u64,
    pub passed: usize,
    pub failed: usize,
    pub y_polyhedral: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchReport {
    pub generator: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub max_entry: i64,
    pub max_flags: usize,
    pub passed: bool,
    pub tilings: Vec<TilingSummary>,
    pub instances: Vec<InstanceResult>,
}

pub fn run_batch(cfg: &BatchConfig) -> Result<BatchReport> {
    let samples: Vec<(TilingId, Sample)> = cfg
        .tilings
        .iter()
        .map(|&t| Ok((t, sample_specs(t, cfg)?)))
        .collect::<Result<_>>()?;
    let specs: Vec<QuotientSpec> = samples.iter().flat_map(|(_, s)| s.specs.iter().copied()).collect();
    let instances: Vec<InstanceResult> = specs.par_iter().map(check_instance).collect::<Result<_>>()?;

    let tilings: Vec<TilingSummary> = samples
        .iter()
        .map(|(tiling, sample)| {
            let mine: Vec<&InstanceResult> = instances.iter().filter(|r| r.tiling == *tiling).collect();
            let passed = mine.iter().filter(|r| r.passed).count();
            TilingSummary {
                tiling: *tiling,
                requested: cfg.samples,
                drawn: sample.specs.len(),
                attempts: sample.attempts,
                passed,
                failed: mine.len() - passed,
                y_polyhedral: mine.iter().filter(|r| r.y_polyhedral).count(),
            }
        })
        .collect();
    Ok(BatchReport {
        generator: GENERATOR,
        seed: cfg.seed,
        samples: cfg.samples,
        max_entry: cfg.max_entry,
        max_flags: cfg.max_flags,
        passed: instances.iter().all(|r| r.passed),
        tilings,
        instances,
    })
}
