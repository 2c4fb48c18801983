//! Vertex-transitive covers of quotient maps.
//!
//! For `X = E / K` let `m` be the least integer with `m·Z² ⊆ K`. Then
//! `Y = E / m·Z²` covers `X` through `v + m·Z² ↦ v + K`, with
//! `n = m² / |det K|` sheets. Every lattice-preserving symmetry of `E`
//! normalizes `m·Z²`, so the point group descends to `Y`, and together with
//! translations it acts transitively on vertices.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice;
use crate::map::{build_quotient, FlagMap, QuotientSpec};
use crate::symmetry::MapAutomorphism;
use crate::tilings::{template, AreaFactor, PointGroupElem, TilingId};
use crate::Sublattice;

/// `index × factor`, the area of the torus for unit-length basis vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusArea {
    pub value: i64,
    pub factor: AreaFactor,
}

impl TorusArea {
    pub fn to_f64(self) -> f64 {
        self.value as f64 * self.factor.value::<f64>()
    }
}

impl fmt::Display for TorusArea {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.factor {
            AreaFactor::One => write!(f, "{}", self.value),
            factor => write!(f, "{}*{}", self.value, factor.symbol()),
        }
    }
}

pub fn torus_area(spec: &QuotientSpec) -> Result<TorusArea> {
    Ok(TorusArea { value: spec.index()?, factor: spec.tiling.area_factor() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyhedralFlags {
    #[serde(rename = "X")]
    pub x: bool,
    #[serde(rename = "Y")]
    pub y: bool,
}

/// A covering `Y = E / m·Z² → X = E / K`, with explicit cell maps from the
/// cells of `Y` to the cells of `X` (indices as produced by [`build_quotient`]).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverCertificate {
    pub tiling: TilingId,
    #[serde(rename = "M")]
    pub matrix: Sublattice,
    pub m: i64,
    pub n: i64,
    pub area: TorusArea,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub face_map: Vec<usize>,
    pub polyhedral: PolyhedralFlags,
}

impl CoverCertificate {
    pub fn x_spec(&self) -> QuotientSpec {
        QuotientSpec { tiling: self.tiling, matrix: self.matrix }
    }

    pub fn y_spec(&self) -> Result<QuotientSpec> {
        QuotientSpec::scalar(self.tiling, self.m)
    }

    /// Whether either side fails polyhedrality; the cover is still built.
    pub fn has_warning(&self) -> bool {
        !(self.polyhedral.x && self.polyhedral.y)
    }
}

/// A certificate along with the two maps it relates.
#[derive(Clone, Debug)]
pub struct CoverBuild {
    pub x: FlagMap,
    pub y: FlagMap,
    pub y_spec: QuotientSpec,
    pub certificate: CoverCertificate,
}

/// Build the cover of `spec` by `exponent·Z²`; `exponent` must be a multiple
/// of the cover exponent.
pub fn cover_with_exponent(spec: &QuotientSpec, exponent: i64) -> Result<CoverBuild> {
    let index = spec.index()?;
    if exponent <= 0 || !spec.matrix.contains_scaled_identity(exponent)? {
        return Err(Error::Invalid(format!("{exponent}·Z² is not contained in the lattice of {}", spec.matrix)));
    }
    let sq = exponent.checked_mul(exponent).ok_or(lattice::LatticeError::Overflow)?;
    let n = sq / index;
    let y_spec = QuotientSpec::scalar(spec.tiling, exponent)?;
    let x = build_quotient(spec)?;
    let y = build_quotient(&y_spec)?;
    let (xi, yi) = (x.quotient().expect("built quotient"), y.quotient().expect("built quotient"));
    let t = template(spec.tiling);

    let mut vertex_map = vec![0; y.vertex_count()];
    let mut edge_map = vec![0; y.edge_count()];
    let mut face_map = vec![0; y.face_count()];
    for rep in 0..t.rep_count() {
        for k in 0..yi.coset_count() {
            let cell = yi.cosets.representative(k);
            let kx = xi.cosets.index_of(cell)?;
            vertex_map[yi.vertex(rep, k)] = xi.vertex(rep, kx);
            for slot in 0..t.degree(rep) {
                let dy = yi.dart(rep, k, slot);
                let dx = xi.dart(rep, kx, slot);
                edge_map[y.dart_edge(dy)] = x.dart_edge(dx);
                face_map[y.dart_face(dy)] = x.dart_face(dx);
            }
        }
    }

    let certificate = CoverCertificate {
        tiling: spec.tiling,
        matrix: spec.matrix,
        m: exponent,
        n,
        area: torus_area(spec)?,
        vertex_map,
        edge_map,
        face_map,
        polyhedral: PolyhedralFlags {
            x: x.is_polyhedral().is_polyhedral(),
            y: y.is_polyhedral().is_polyhedral(),
        },
    };
    Ok(CoverBuild { x, y, y_spec, certificate })
}

/// The vertex-transitive cover `Y = E / m·Z²` with `m` the cover exponent.
pub fn vt_cover(spec: &QuotientSpec) -> Result<(QuotientSpec, CoverCertificate)> {
    let build = cover_with_exponent(spec, spec.matrix.cover_exponent()?)?;
    Ok((build.y_spec, build.certificate))
}

/// The cover by `(r·m)·Z²`; `r = 1` is [`vt_cover`].
pub fn r_family(spec: &QuotientSpec, r: i64) -> Result<(QuotientSpec, CoverCertificate)> {
    if r < 1 {
        return Err(Error::Invalid(format!("r must be positive, got {r}")));
    }
    let m = spec.matrix.cover_exponent()?;
    let exponent = m.checked_mul(r).ok_or(lattice::LatticeError::Overflow)?;
    let build = cover_with_exponent(spec, exponent)?;
    Ok((build.y_spec, build.certificate))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "snake_case")]
pub enum CoverFailure {
    /// A cell map has the wrong length or an out-of-range entry.
    Shape { cells: &'static str },
    /// The certificate's numbers are inconsistent with the lattices.
    Arithmetic { detail: String },
    /// `cell` of `X` has `found` preimages instead of `n`.
    Fibre { cells: &'static str, cell: usize, found: usize },
    /// The Y flag's cells do not map to mutually incident X cells.
    Adjacency { flag: usize },
    /// The star of a Y vertex does not map onto the star of its image.
    LocalIsomorphism { vertex: usize },
}

impl fmt::Display for CoverFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Shape { cells } => write!(f, "{cells} map has the wrong shape"),
            Self::Arithmetic { detail } => write!(f, "arithmetic: {detail}"),
            Self::Fibre { cells, cell, found } => write!(f, "{cells} {cell} of X has {found} preimages"),
            Self::Adjacency { flag } => write!(f, "adjacency not preserved at flag {flag} of Y"),
            Self::LocalIsomorphism { vertex } => write!(f, "star of vertex {vertex} of Y is not mapped isomorphically"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub failures: Vec<CoverFailure>,
}

impl CoverReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check that the certificate's cell maps form an `n`-sheeted covering `Y → X`.
///
/// Reports at most one witness per condition: fibre sizes, incidence, and
/// local isomorphism of vertex stars (cyclic order, either orientation).
pub fn verify_covering(y: &FlagMap, x: &FlagMap, cert: &CoverCertificate) -> CoverReport {
    let mut failures = Vec::new();
    let shapes = [
        ("vertex", &cert.vertex_map, y.vertex_count(), x.vertex_count()),
        ("edge", &cert.edge_map, y.edge_count(), x.edge_count()),
        ("face", &cert.face_map, y.face_count(), x.face_count()),
    ];
    for (cells, map, ny, nx) in shapes {
        if map.len() != ny || map.iter().any(|&c| c >= nx) {
            failures.push(CoverFailure::Shape { cells });
        }
    }
    if !failures.is_empty() {
        return CoverReport { failures };
    }

    let n = usize::try_from(cert.n).unwrap_or(0);
    for (cells, map, _, nx) in shapes {
        let mut count = vec![0usize; nx];
        for &c in map.iter() {
            count[c] += 1;
        }
        if let Some((cell, &found)) = count.iter().enumerate().find(|(_, &c)| c != n) {
            failures.push(CoverFailure::Fibre { cells, cell, found });
            break;
        }
    }

    let incident: HashSet<(usize, usize)> = (0..x.face_count())
        .flat_map(|f| x.face_darts(f).iter().map(move |&d| (f, x.dart_edge(d))))
        .collect();
    let bad_flag = (0..y.flag_count()).find(|&flag| {
        let v = cert.vertex_map[y.flag_vertex(flag)];
        let e = cert.edge_map[y.flag_edge(flag)];
        let f = cert.face_map[y.flag_face(flag)];
        let [a, b] = x.edge_ends(e);
        let [ya, yb] = y.edge_ends(y.flag_edge(flag));
        let mut mapped = [cert.vertex_map[ya], cert.vertex_map[yb]];
        let mut ends = [a, b];
        mapped.sort_unstable();
        ends.sort_unstable();
        !(v == a || v == b) || mapped != ends || !incident.contains(&(f, e))
    });
    if let Some(flag) = bad_flag {
        failures.push(CoverFailure::Adjacency { flag });
    }

    let star = |map: &FlagMap, v: usize, edge: &dyn Fn(usize) -> usize, face: &dyn Fn(usize) -> usize| {
        map.darts_at(v).map(|d| (edge(map.dart_edge(d)), face(map.dart_face(d)))).collect::<Vec<_>>()
    };
    let bad_vertex = (0..y.vertex_count()).find(|&u| {
        let image = star(y, u, &|e| cert.edge_map[e], &|f| cert.face_map[f]);
        let target = star(x, cert.vertex_map[u], &|e| e, &|f| f);
        !same_star(&image, &target)
    });
    if let Some(vertex) = bad_vertex {
        failures.push(CoverFailure::LocalIsomorphism { vertex });
    }
    CoverReport { failures }
}

/// Equality of vertex stars `[(edge_i, face between edge_i and edge_{i+1})]`
/// up to rotation and reversal.
fn same_star(a: &[(usize, usize)], b: &[(usize, usize)]) -> bool {
    let k = a.len();
    if k != b.len() {
        return false;
    }
    let reversed: Vec<(usize, usize)> = (0..k).map(|i| (a[k - 1 - i].0, a[(2 * k - 2 - i) % k].1)).collect();
    [a, reversed.as_slice()]
        .iter()
        .any(|seq| (0..k).any(|r| (0..k).all(|i| seq[(i + r) % k] == b[i])))
}

/// Rebuild both maps from a stored certificate and check it end to end.
pub fn verify_certificate(cert: &CoverCertificate) -> Result<CoverReport> {
    let x_spec = QuotientSpec::new(cert.tiling, cert.matrix)?;
    let index = x_spec.index()?;
    let mut arithmetic = Vec::new();
    if cert.m <= 0 || !cert.matrix.contains_scaled_identity(cert.m)? {
        arithmetic.push(format!("{}·Z² is not inside the lattice", cert.m));
    }
    if cert.m % cert.matrix.cover_exponent()? != 0 {
        arithmetic.push("m is not a multiple of the cover exponent".to_string());
    }
    if cert.n.checked_mul(index) != cert.m.checked_mul(cert.m) {
        arithmetic.push(format!("n·|det| = {}·{} differs from m² = {}²", cert.n, index, cert.m));
    }
    if cert.area != torus_area(&x_spec)? {
        arithmetic.push("area does not match |det|".to_string());
    }
    let x = build_quotient(&x_spec)?;
    let y = build_quotient(&cert.y_spec()?)?;
    let poly = PolyhedralFlags { x: x.is_polyhedral().is_polyhedral(), y: y.is_polyhedral().is_polyhedral() };
    if poly != cert.polyhedral {
        arithmetic.push("polyhedrality flags are stale".to_string());
    }
    let mut report = verify_covering(&y, &x, cert);
    report
        .failures
        .splice(0..0, arithmetic.into_iter().map(|detail| CoverFailure::Arithmetic { detail }));
    Ok(report)
}

/// The automorphism of `Y = E / m·Z²` induced by a symmetry `g` of the
/// tiling. Fails unless `Y` is a scalar quotient and the induced flag
/// permutation commutes with all three involutions.
pub fn descend_point_group(y: &FlagMap, g: &PointGroupElem) -> Result<MapAutomorphism> {
    let info = y
        .quotient()
        .ok_or_else(|| Error::Invalid("map was not built as a quotient".into()))?;
    if !info.spec.matrix.is_scalar() {
        return Err(Error::Invalid(format!(
            "{} is not a scalar lattice, so the point group need not normalize it",
            info.spec.matrix
        )));
    }
    let t = template(info.spec.tiling);
    let flip = usize::from(g.is_reflection());
    let mut perm = vec![0; y.flag_count()];
    for rep in 0..t.rep_count() {
        let image_slots: Vec<usize> = t.neighbors[rep]
            .iter()
            .map(|&dart| {
                let image = g.map_dart(rep, dart)?;
                t.slot_of(g.sigma[rep], image)
                    .ok_or_else(|| Error::Invalid(format!("{} does not preserve adjacency", g.name)))
            })
            .collect::<Result<_>>()?;
        for k in 0..info.coset_count() {
            let (to_rep, to_cell) = g.apply(rep, info.cosets.representative(k))?;
            let to_k = info.cosets.index_of(to_cell)?;
            for (slot, &to_slot) in image_slots.iter().enumerate() {
                let (from, to) = (info.dart(rep, k, slot), info.dart(to_rep, to_k, to_slot));
                perm[2 * from] = 2 * to + flip;
                perm[2 * from + 1] = 2 * to + (1 - flip);
            }
        }
    }
    let auto = MapAutomorphism { flag_perm: perm };
    if !auto.is_automorphism_of(y) {
        return Err(Error::Invalid(format!("{} does not descend to an automorphism", g.name)));
    }
    Ok(auto)
}

/// Descended point-group generators plus the two unit translations.
pub fn descended_generators(y: &FlagMap) -> Result<Vec<MapAutomorphism>> {
    let info = y.quotient().ok_or_else(|| Error::Invalid("map was not built as a quotient".into()))?;
    let t = template(info.spec.tiling);
    let reps = t.rep_count();
    let translations = [PointGroupElem::translation(reps, [1, 0]), PointGroupElem::translation(reps, [0, 1])];
    t.point_group
        .iter()
        .chain(&translations)
        .map(|g| descend_point_group(y, g))
        .collect()
}
