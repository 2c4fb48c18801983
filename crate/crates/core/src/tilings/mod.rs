//! The eleven Archimedean tilings as finite, doubly periodic combinatorial data.
//!
//! A [`TilingTemplate`] lists one vertex per translation class (a *rep*), the
//! counterclockwise rotation system of each rep as darts `(target rep, lattice
//! offset)`, and point-group generators acting on `(rep, cell)` pairs.

mod layout;
mod validate;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_traits::{Float, FloatConst};
use serde::{Serialize, Serializer};

use crate::geometry::{Basis, Vec2};
use crate::lattice::{self, IMat, IVec};
use crate::signature::VertexTypeSig;

pub use layout::{layout, Layout};
pub use validate::{point_group_rep_orbits, validate_template, TemplateViolation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TilingId {
    /// `[3^6]`
    T36,
    /// `[4^4]`
    T44,
    /// `[6^3]`
    T63,
    /// `[3^3,4^2]`
    T33344,
    /// `[4^1,8^2]`
    E1,
    /// `[3^2,4^1,3^1,4^1]`
    E2,
    /// `[3^4,6^1]`
    E3,
    /// `[3^1,6^1,3^1,6^1]`
    E4,
    /// `[3^1,4^1,6^1,4^1]`
    E5,
    /// `[3^1,12^2]`
    E6,
    /// `[4^1,6^1,12^1]`
    E7,
}

impl TilingId {
    pub const ALL: [TilingId; 11] = [
        TilingId::T36,
        TilingId::T44,
        TilingId::T63,
        TilingId::T33344,
        TilingId::E1,
        TilingId::E2,
        TilingId::E3,
        TilingId::E4,
        TilingId::E5,
        TilingId::E6,
        TilingId::E7,
    ];

    /// Types whose every toroidal quotient is vertex-transitive.
    pub const TRIVIAL: [TilingId; 4] = [TilingId::T36, TilingId::T44, TilingId::T63, TilingId::T33344];

    /// Types admitting quotients that are not vertex-transitive.
    pub const NON_TRIVIAL: [TilingId; 7] = [
        TilingId::E1,
        TilingId::E2,
        TilingId::E3,
        TilingId::E4,
        TilingId::E5,
        TilingId::E6,
        TilingId::E7,
    ];

    pub fn code(self) -> &'static str {
        match self {
            TilingId::T36 => "T36",
            TilingId::T44 => "T44",
            TilingId::T63 => "T63",
            TilingId::T33344 => "T33344",
            TilingId::E1 => "E1",
            TilingId::E2 => "E2",
            TilingId::E3 => "E3",
            TilingId::E4 => "E4",
            TilingId::E5 => "E5",
            TilingId::E6 => "E6",
            TilingId::E7 => "E7",
        }
    }

    /// Face sizes around a vertex, in one cyclic order.
    pub fn face_cycle(self) -> &'static [u32] {
        match self {
            TilingId::T36 => &[3, 3, 3, 3, 3, 3],
            TilingId::T44 => &[4, 4, 4, 4],
            TilingId::T63 => &[6, 6, 6],
            TilingId::T33344 => &[3, 3, 3, 4, 4],
            TilingId::E1 => &[4, 8, 8],
            TilingId::E2 => &[3, 3, 4, 3, 4],
            TilingId::E3 => &[3, 3, 3, 3, 6],
            TilingId::E4 => &[3, 6, 3, 6],
            TilingId::E5 => &[3, 4, 6, 4],
            TilingId::E6 => &[3, 12, 12],
            TilingId::E7 => &[4, 6, 12],
        }
    }

    pub fn signature(self) -> VertexTypeSig {
        VertexTypeSig::from_cycle(self.face_cycle())
    }

    /// Number of vertex translation classes.
    pub fn rep_count(self) -> usize {
        match self {
            TilingId::T36 | TilingId::T44 => 1,
            TilingId::T63 | TilingId::T33344 => 2,
            TilingId::E4 => 3,
            TilingId::E1 | TilingId::E2 => 4,
            TilingId::E3 | TilingId::E5 | TilingId::E6 => 6,
            TilingId::E7 => 12,
        }
    }

    pub fn is_trivially_transitive(self) -> bool {
        Self::TRIVIAL.contains(&self)
    }

    /// Area of the parallelogram on the translation basis, both vectors
    /// normalized to unit length.
    pub fn area_factor(self) -> AreaFactor {
        match self {
            TilingId::T44 | TilingId::E1 | TilingId::E2 => AreaFactor::One,
            TilingId::T33344 => AreaFactor::Sin75,
            _ => AreaFactor::HalfSqrt3,
        }
    }

    fn aliases(self) -> &'static [&'static str] {
        match self {
            TilingId::T36 => &["T333333"],
            TilingId::T44 => &["T4444"],
            TilingId::T63 => &["T666"],
            TilingId::T33344 => &[],
            TilingId::E1 => &["T488"],
            TilingId::E2 => &["T33434"],
            TilingId::E3 => &["T33336"],
            TilingId::E4 => &["T3636"],
            TilingId::E5 => &["T3464"],
            TilingId::E6 => &["T31212"],
            TilingId::E7 => &["T4612"],
        }
    }
}

impl fmt::Display for TilingId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
#[error("unknown tiling {0:?} (expected a code like E3 or T44, or a vertex type like 3.3.3.3.6)")]
pub struct UnknownTiling(pub String);

impl FromStr for TilingId {
    type Err = UnknownTiling;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let upper = t.to_ascii_uppercase();
        for id in Self::ALL {
            if upper == id.code() || id.aliases().contains(&upper.as_str()) {
                return Ok(id);
            }
        }
        if let Ok(sig) = t.parse::<VertexTypeSig>() {
            if let Some(id) = Self::ALL.into_iter().find(|id| id.signature() == sig) {
                return Ok(id);
            }
        }
        Err(UnknownTiling(s.to_string()))
    }
}

impl Serialize for TilingId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.code())
    }
}

impl<'de> serde::Deserialize<'de> for TilingId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Exact tag for a cell area.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AreaFactor {
    One,
    /// √3/2, a 60° rhombus of unit sides.
    HalfSqrt3,
    /// sin 75° = (√6 + √2)/4.
    Sin75,
}

impl AreaFactor {
    pub fn symbol(self) -> &'static str {
        match self {
            AreaFactor::One => "1",
            AreaFactor::HalfSqrt3 => "sqrt(3)/2",
            AreaFactor::Sin75 => "(sqrt(6)+sqrt(2))/4",
        }
    }

    pub fn value<F: Float + FloatConst>(self) -> F {
        let two = F::one() + F::one();
        match self {
            AreaFactor::One => F::one(),
            AreaFactor::HalfSqrt3 => (two + F::one()).sqrt() / two,
            AreaFactor::Sin75 => (F::PI() * F::from(75.0 / 180.0).unwrap()).sin(),
        }
    }

    pub fn from_symbol(s: &str) -> Option<Self> {
        [AreaFactor::One, AreaFactor::HalfSqrt3, AreaFactor::Sin75]
            .into_iter()
            .find(|f| f.symbol() == s)
    }
}

impl Serialize for AreaFactor {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

impl<'de> serde::Deserialize<'de> for AreaFactor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::from_symbol(&s).ok_or_else(|| serde::de::Error::custom(format!("unknown area factor {s:?}")))
    }
}

/// A directed edge from a rep to `target` displaced by `offset` cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Dart {
    pub target: usize,
    pub offset: IVec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SymmetryKind {
    Rotation { order: u32 },
    Reflection { axis: f64 },
}

/// A plane symmetry fixing the tiling, written as its action on
/// `(rep, cell)`: `(p, x) ↦ (sigma[p], matrix·x + shift[p])`.
#[derive(Clone, Debug, Serialize)]
pub struct PointGroupElem {
    pub name: String,
    #[serde(flatten)]
    pub kind: SymmetryKind,
    /// Fixed point of the isometry (a point on the mirror for reflections).
    #[serde(skip)]
    pub center: Vec2<f64>,
    pub sigma: Vec<usize>,
    /// Action on lattice coordinates (column vectors); determinant ±1.
    pub matrix: IMat<i64>,
    pub shift: Vec<IVec<i64>>,
}

impl PointGroupElem {
    pub fn identity(reps: usize) -> Self {
        Self::translation(reps, [0, 0])
    }

    /// The translation by `t` cells, in the same representation.
    pub fn translation(reps: usize, t: IVec<i64>) -> Self {
        Self {
            name: format!("translate({},{})", t[0], t[1]),
            kind: SymmetryKind::Rotation { order: 1 },
            center: Vec2::zero(),
            sigma: (0..reps).collect(),
            matrix: [[1, 0], [0, 1]],
            shift: vec![t; reps],
        }
    }

    pub fn is_reflection(&self) -> bool {
        matches!(self.kind, SymmetryKind::Reflection { .. })
    }

    pub fn apply(&self, rep: usize, cell: IVec<i64>) -> Result<(usize, IVec<i64>), lattice::LatticeError> {
        let moved = lattice::add_vec(lattice::mat_vec(&self.matrix, cell)?, self.shift[rep])?;
        Ok((self.sigma[rep], moved))
    }

    /// Image of the dart `offset` leaving `rep`: `(image target, image offset)`.
    pub fn map_dart(&self, rep: usize, dart: Dart) -> Result<Dart, lattice::LatticeError> {
        let (_, from) = self.apply(rep, [0, 0])?;
        let (target, to) = self.apply(dart.target, dart.offset)?;
        Ok(Dart { target, offset: lattice::sub_vec(to, from)? })
    }

    /// The Euclidean linear part applied to a vector.
    pub fn linear<F: Float + FloatConst>(&self, v: Vec2<F>) -> Vec2<F> {
        match self.kind {
            SymmetryKind::Rotation { order } => {
                v.rotate(F::TAU() / F::from(order).unwrap())
            }
            SymmetryKind::Reflection { axis } => v.reflect(F::from(axis).unwrap()),
        }
    }

    /// Order of `matrix` in GL₂(Z), if at most 12.
    pub fn matrix_order(&self) -> Option<u32> {
        let id = [[1, 0], [0, 1]];
        let mut p = self.matrix;
        for k in 1..=12 {
            if p == id {
                return Some(k);
            }
            p = lattice::mat_mul(&p, &self.matrix).ok()?;
        }
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TemplateFace {
    pub size: usize,
    /// `(rep, slot)` darts along the boundary, face on the left.
    pub darts: Vec<(usize, usize)>,
    /// Boundary corners as `(rep, cell)` relative to the first corner.
    pub corners: Vec<(usize, IVec<i64>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TilingTemplate {
    pub id: TilingId,
    pub rep_names: Vec<String>,
    #[serde(skip)]
    pub positions: Vec<Vec2<f64>>,
    /// Counterclockwise darts at each rep.
    pub neighbors: Vec<Vec<Dart>>,
    #[serde(skip)]
    pub basis: Basis<f64>,
    pub point_group: Vec<PointGroupElem>,
}

const TOL: f64 = 1e-7;

fn near_integer(x: f64) -> Option<i64> {
    let r = x.round();
    ((x - r).abs() < TOL).then_some(r as i64)
}

impl TilingTemplate {
    /// Derive the combinatorial template from a unit-edge layout.
    pub fn build(id: TilingId) -> Self {
        let lay = layout::<f64>(id);
        let basis = lay.basis;
        let class_of = |positions: &[Vec2<f64>], p: Vec2<f64>| -> Option<(usize, IVec<i64>)> {
            positions.iter().enumerate().find_map(|(q, &pos)| {
                let (x, y) = basis.coords(p - pos);
                Some((q, [near_integer(x)?, near_integer(y)?]))
            })
        };

        let mut positions: Vec<Vec2<f64>> = Vec::new();
        for &p in &lay.points {
            if class_of(&positions, p).is_none() {
                positions.push(p);
            }
        }

        let reach = 3;
        let neighbors = positions
            .iter()
            .map(|&from| {
                let mut darts: Vec<(f64, Dart)> = Vec::new();
                for (target, &to) in positions.iter().enumerate() {
                    for i in -reach..=reach {
                        for j in -reach..=reach {
                            let delta = to + basis.lattice_point([i, j]) - from;
                            if (delta.norm() - 1.0).abs() < TOL {
                                let angle = delta.angle().rem_euclid(std::f64::consts::TAU);
                                darts.push((angle, Dart { target, offset: [i, j] }));
                            }
                        }
                    }
                }
                darts.sort_by(|a, b| a.0.total_cmp(&b.0));
                darts.into_iter().map(|(_, d)| d).collect()
            })
            .collect();

        let mut generators = vec![(
            "rho".to_string(),
            SymmetryKind::Rotation { order: lay.rotation_order },
        )];
        if let Some(axis) = lay.reflection_axis {
            generators.push(("tau".to_string(), SymmetryKind::Reflection { axis }));
        }
        let point_group = generators
            .into_iter()
            .map(|(name, kind)| {
                let mut elem = PointGroupElem {
                    name,
                    kind,
                    center: lay.rotation_center,
                    sigma: Vec::new(),
                    matrix: [[0, 0], [0, 0]],
                    shift: Vec::new(),
                };
                let column = |v: Vec2<f64>| {
                    let (x, y) = basis.coords(elem.linear(v));
                    [near_integer(x).expect("symmetry preserves lattice"), near_integer(y).expect("symmetry preserves lattice")]
                };
                let (ca, cb) = (column(basis.a), column(basis.b));
                let matrix = [[ca[0], cb[0]], [ca[1], cb[1]]];
                let mut sigma = Vec::new();
                let mut shift = Vec::new();
                for &p in &positions {
                    let image = lay.rotation_center + elem.linear(p - lay.rotation_center);
                    let (q, t) = class_of(&positions, image).expect("symmetry maps vertices to vertices");
                    sigma.push(q);
                    shift.push(t);
                }
                elem.matrix = matrix;
                elem.sigma = sigma;
                elem.shift = shift;
                elem
            })
            .collect();

        let rep_names = (0..positions.len()).map(|i| format!("v{i}")).collect();
        Self { id, rep_names, positions, neighbors, basis, point_group }
    }

    pub fn rep_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn degree(&self, rep: usize) -> usize {
        self.neighbors[rep].len()
    }

    /// Slot at `dart.target` of the dart pointing back to `rep`.
    pub fn reverse_slot(&self, rep: usize, slot: usize) -> Option<usize> {
        let d = self.neighbors[rep][slot];
        let back = Dart { target: rep, offset: [-d.offset[0], -d.offset[1]] };
        self.neighbors.get(d.target)?.iter().position(|&e| e == back)
    }

    /// Slot at `rep` holding `dart`, if any.
    pub fn slot_of(&self, rep: usize, dart: Dart) -> Option<usize> {
        self.neighbors.get(rep)?.iter().position(|&e| e == dart)
    }

    /// Faces traced on the template, each face once per translation class.
    /// `None` if some dart has no reverse.
    pub fn faces(&self) -> Option<Vec<TemplateFace>> {
        let mut seen: Vec<Vec<bool>> = self.neighbors.iter().map(|n| vec![false; n.len()]).collect();
        let mut faces = Vec::new();
        for rep in 0..self.rep_count() {
            for slot in 0..self.degree(rep) {
                if seen[rep][slot] {
                    continue;
                }
                let mut darts = Vec::new();
                let mut corners = Vec::new();
                let (mut p, mut s, mut at) = (rep, slot, [0i64, 0]);
                loop {
                    seen[p][s] = true;
                    darts.push((p, s));
                    corners.push((p, at));
                    let d = self.neighbors[p][s];
                    at = [at[0] + d.offset[0], at[1] + d.offset[1]];
                    let back = self.reverse_slot(p, s)?;
                    let deg = self.degree(d.target);
                    p = d.target;
                    s = (back + deg - 1) % deg;
                    if (p, s) == (rep, slot) || darts.len() > 10_000 {
                        break;
                    }
                }
                faces.push(TemplateFace { size: darts.len(), darts, corners });
            }
        }
        Some(faces)
    }

    /// Face-size cycle around every rep, counterclockwise.
    pub fn rep_face_cycles(&self) -> Option<Vec<Vec<u32>>> {
        let faces = self.faces()?;
        let mut size_of: Vec<Vec<u32>> = self.neighbors.iter().map(|n| vec![0; n.len()]).collect();
        for f in &faces {
            for &(p, s) in &f.darts {
                size_of[p][s] = f.size as u32;
            }
        }
        Some(size_of)
    }

    /// Geometric basis cast to the requested float type.
    pub fn basis_as<F: Float>(&self) -> Basis<F> {
        self.basis.cast()
    }
}

static TEMPLATES: OnceLock<Vec<TilingTemplate>> = OnceLock::new();

/// The shared, validated template for `id`.
pub fn template(id: TilingId) -> &'static TilingTemplate {
    let all = TEMPLATES.get_or_init(|| {
        TilingId::ALL
            .iter()
            .map(|&id| {
                let t = TilingTemplate::build(id);
                let report = validate_template(&t);
                assert!(report.is_empty(), "template {id} failed validation: {report:?}");
                t
            })
            .collect()
    });
    &all[TilingId::ALL.iter().position(|&t| t == id).unwrap()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_template() {
        let t = template(TilingId::T44);
        assert_eq!(t.rep_count(), 1);
        assert_eq!(t.degree(0), 4);
        assert!(t.point_group.iter().any(|g| g.kind == SymmetryKind::Rotation { order: 4 }));
    }

    #[test]
    fn rep_counts() {
        for id in TilingId::ALL {
            assert_eq!(template(id).rep_count(), id.rep_count(), "{id}");
        }
        assert_eq!(template(TilingId::E1).rep_count(), 4);
        assert_eq!(template(TilingId::E3).rep_count(), 6);
        assert_eq!(template(TilingId::E6).rep_count(), 6);
        assert_eq!(template(TilingId::E7).rep_count(), 12);
    }

    #[test]
    fn e7_has_rotation_and_mirror() {
        let t = template(TilingId::E7);
        assert!(t.point_group.iter().any(|g| g.kind == SymmetryKind::Rotation { order: 6 }));
        assert!(t.point_group.iter().any(|g| g.is_reflection()));
    }

    #[test]
    fn face_sizes_match_signature() {
        for id in TilingId::ALL {
            let t = template(id);
            let mut sizes: Vec<u32> = t.faces().unwrap().iter().map(|f| f.size as u32).collect();
            sizes.sort_unstable();
            sizes.dedup();
            assert_eq!(sizes, id.signature().face_sizes(), "{id}");
        }
    }

    #[test]
    fn hexagonal_bases_close_up() {
        // A + F = B with F the 120° vector.
        for id in [TilingId::E3, TilingId::E4, TilingId::E5, TilingId::E6, TilingId::E7] {
            let b = template(id).basis;
            let f = b.a.rotate(2.0 * std::f64::consts::FRAC_PI_3);
            assert!((b.a + f).approx_eq(b.b, 1e-9), "{id}");
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!("E3".parse::<TilingId>().unwrap(), TilingId::E3);
        assert_eq!("t33336".parse::<TilingId>().unwrap(), TilingId::E3);
        assert_eq!("3.3.3.3.6".parse::<TilingId>().unwrap(), TilingId::E3);
        assert_eq!("4.6.12".parse::<TilingId>().unwrap(), TilingId::E7);
        assert_eq!("3.3.4.3.4".parse::<TilingId>().unwrap(), TilingId::E2);
        assert_eq!("[4^4]".parse::<TilingId>().unwrap(), TilingId::T44);
        assert!("3.4.5".parse::<TilingId>().is_err());
        for id in TilingId::ALL {
            assert_eq!(id.code().parse::<TilingId>().unwrap(), id);
        }
    }

    #[test]
    fn area_factors() {
        assert!((AreaFactor::HalfSqrt3.value::<f64>() - 0.75f64.sqrt()).abs() < 1e-15);
        let sin75 = (6f64.sqrt() + 2f64.sqrt()) / 4.0;
        assert!((AreaFactor::Sin75.value::<f64>() - sin75).abs() < 1e-15);
        // Unit-normalized cell areas agree with the tags.
        for id in TilingId::ALL {
            let b = template(id).basis;
            let unit = b.a * (1.0 / b.a.norm());
            let area = unit.cross(b.b * (1.0 / b.b.norm())).abs();
            assert!((area - id.area_factor().value::<f64>()).abs() < 1e-12, "{id}");
        }
    }

    #[test]
    fn layouts_agree_across_float_widths() {
        for id in TilingId::ALL {
            let a = layout::<f64>(id);
            let b = layout::<f32>(id);
            assert!(a.basis.a.approx_eq(b.basis.a.cast(), 1e-5));
            assert!(a.basis.b.approx_eq(b.basis.b.cast(), 1e-5));
            for (p, q) in a.points.iter().zip(&b.points) {
                assert!(p.approx_eq(q.cast(), 1e-5));
            }
        }
    }
}
