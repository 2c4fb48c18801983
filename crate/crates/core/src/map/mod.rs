//! Finite maps on the torus as flag systems.
//!
//! A map is first described by darts (directed edges) with a counterclockwise
//! rotation at every vertex. Each dart `d` contributes two flags: `2d` (the
//! face to the left of `d`) and `2d + 1` (the face to its right). The three
//! involutions are then
//!
//! * `s0 (d, side) = (reverse d, other side)`: change vertex,
//! * `s1 (d, L) = (next d, R)`, `s1 (d, R) = (prev d, L)`: change edge,
//! * `s2 (d, side) = (d, other side)`: change face.

mod polyhedral;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{self, IVec};
use crate::signature::VertexTypeSig;
use crate::tilings::{template, TilingId};
use crate::{Cosets, Sublattice};

pub use polyhedral::{PolyhedralReport, PolyhedralityViolation};

/// Largest absolute matrix entry accepted from users.
pub const MAX_ENTRY: i64 = 10_000;

/// Quotients with more vertices than this are refused.
pub const MAX_VERTICES: usize = 4_000_000;

/// The map `E / K` for the tiling `E` and the lattice `K` spanned by the
/// rows of `matrix` (coordinates in the tiling's translation basis).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotientSpec {
    pub tiling: TilingId,
    #[serde(rename = "M")]
    pub matrix: Sublattice,
}

impl QuotientSpec {
    /// Validated user input: non-zero determinant, entries within [`MAX_ENTRY`].
    pub fn new(tiling: TilingId, matrix: Sublattice) -> Result<Self> {
        if let Some(&e) = matrix.entries().iter().find(|e| e.abs() > MAX_ENTRY) {
            return Err(Error::EntryTooLarge(e));
        }
        matrix.index()?;
        Ok(Self { tiling, matrix })
    }

    /// The quotient by `m·Z²`.
    pub fn scalar(tiling: TilingId, m: i64) -> Result<Self> {
        if m <= 0 {
            return Err(Error::Invalid(format!("scalar lattice needs a positive factor, got {m}")));
        }
        Ok(Self { tiling, matrix: Sublattice::scalar(m) })
    }

    pub fn index(&self) -> Result<i64> {
        Ok(self.matrix.index()?)
    }

    /// Flag count of the quotient without building it.
    pub fn flag_count(&self) -> Result<usize> {
        let t = template(self.tiling);
        let darts: usize = (0..t.rep_count()).map(|r| t.degree(r)).sum();
        Ok(2 * darts * self.index()? as usize)
    }
}

impl std::fmt::Display for QuotientSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {}", self.tiling, self.matrix)
    }
}

/// Where a vertex of a quotient map comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VertexLabel {
    pub rep: usize,
    pub cell: IVec<i64>,
}

/// Bookkeeping that ties a built quotient back to its template.
#[derive(Clone, Debug)]
pub struct QuotientInfo {
    pub spec: QuotientSpec,
    pub cosets: Cosets,
    /// Prefix sums of template degrees, one entry per rep plus a total.
    rep_dart_start: Vec<usize>,
}

impl QuotientInfo {
    pub fn coset_count(&self) -> usize {
        self.cosets.len()
    }

    pub fn vertex(&self, rep: usize, coset: usize) -> usize {
        rep * self.coset_count() + coset
    }

    pub fn dart(&self, rep: usize, coset: usize, slot: usize) -> usize {
        let deg = self.rep_dart_start[rep + 1] - self.rep_dart_start[rep];
        self.rep_dart_start[rep] * self.coset_count() + coset * deg + slot
    }
}

#[derive(Clone, Debug)]
pub struct FlagMap {
    vertex_start: Vec<usize>,
    dart_origin: Vec<usize>,
    dart_reverse: Vec<usize>,
    dart_edge: Vec<usize>,
    dart_face: Vec<usize>,
    edge_darts: Vec<[usize; 2]>,
    face_darts: Vec<Vec<usize>>,
    s: [Vec<usize>; 3],
    labels: Vec<VertexLabel>,
    quotient: Option<QuotientInfo>,
}

impl FlagMap {
    /// Build from a rotation system: `darts_at[v]` lists the darts leaving
    /// `v` counterclockwise, darts numbered `0..D` contiguously by vertex, and
    /// `reverse` pairs every dart with its opposite.
    pub fn from_rotation(darts_at: &[Vec<usize>], reverse: Vec<usize>) -> Result<Self> {
        let dart_count = reverse.len();
        let mut vertex_start = Vec::with_capacity(darts_at.len() + 1);
        let mut dart_origin = vec![usize::MAX; dart_count];
        let mut expect = 0;
        for (v, darts) in darts_at.iter().enumerate() {
            vertex_start.push(expect);
            for &d in darts {
                if d != expect {
                    return Err(Error::Invalid(format!("dart {d} out of order at vertex {v}")));
                }
                dart_origin[d] = v;
                expect += 1;
            }
        }
        vertex_start.push(expect);
        if expect != dart_count {
            return Err(Error::Invalid("rotation does not cover every dart".into()));
        }
        for (d, &r) in reverse.iter().enumerate() {
            if r >= dart_count || r == d || reverse[r] != d {
                return Err(Error::Invalid(format!("reverse is not a fixed-point-free involution at dart {d}")));
            }
        }
        Ok(Self::assemble(vertex_start, dart_origin, reverse, Vec::new(), None))
    }

    fn assemble(
        vertex_start: Vec<usize>,
        dart_origin: Vec<usize>,
        dart_reverse: Vec<usize>,
        labels: Vec<VertexLabel>,
        quotient: Option<QuotientInfo>,
    ) -> Self {
        let darts = dart_origin.len();
        let next = |d: usize| {
            let v = dart_origin[d];
            if d + 1 == vertex_start[v + 1] { vertex_start[v] } else { d + 1 }
        };
        let prev = |d: usize| {
            let v = dart_origin[d];
            if d == vertex_start[v] { vertex_start[v + 1] - 1 } else { d - 1 }
        };

        let mut dart_edge = vec![usize::MAX; darts];
        let mut edge_darts = Vec::with_capacity(darts / 2);
        for d in 0..darts {
            if dart_edge[d] == usize::MAX {
                let r = dart_reverse[d];
                dart_edge[d] = edge_darts.len();
                dart_edge[r] = edge_darts.len();
                edge_darts.push([d, r]);
            }
        }

        // Faces: orbits of d ↦ prev(reverse d), face on the left.
        let mut dart_face = vec![usize::MAX; darts];
        let mut face_darts = Vec::new();
        for d in 0..darts {
            if dart_face[d] != usize::MAX {
                continue;
            }
            let f = face_darts.len();
            let mut boundary = Vec::new();
            let mut e = d;
            while dart_face[e] == usize::MAX {
                dart_face[e] = f;
                boundary.push(e);
                e = prev(dart_reverse[e]);
            }
            face_darts.push(boundary);
        }

        let flags = 2 * darts;
        let mut s0 = vec![0; flags];
        let mut s1 = vec![0; flags];
        let mut s2 = vec![0; flags];
        for d in 0..darts {
            let (l, r) = (2 * d, 2 * d + 1);
            let rev = dart_reverse[d];
            s0[l] = 2 * rev + 1;
            s0[r] = 2 * rev;
            s1[l] = 2 * next(d) + 1;
            s1[r] = 2 * prev(d);
            s2[l] = r;
            s2[r] = l;
        }

        Self {
            vertex_start,
            dart_origin,
            dart_reverse,
            dart_edge,
            dart_face,
            edge_darts,
            face_darts,
            s: [s0, s1, s2],
            labels,
            quotient,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_start.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.edge_darts.len()
    }

    pub fn face_count(&self) -> usize {
        self.face_darts.len()
    }

    pub fn dart_count(&self) -> usize {
        self.dart_origin.len()
    }

    pub fn flag_count(&self) -> usize {
        2 * self.dart_count()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertex_count() as i64 - self.edge_count() as i64 + self.face_count() as i64
    }

    /// The involution `s_i` (`i ∈ {0, 1, 2}`) as a flag permutation.
    pub fn involution(&self, i: usize) -> &[usize] {
        &self.s[i]
    }

    pub fn flag_vertex(&self, flag: usize) -> usize {
        self.dart_origin[flag / 2]
    }

    pub fn flag_edge(&self, flag: usize) -> usize {
        self.dart_edge[flag / 2]
    }

    pub fn flag_face(&self, flag: usize) -> usize {
        let d = flag / 2;
        if flag.is_multiple_of(2) {
            self.dart_face[d]
        } else {
            self.dart_face[self.prev(d)]
        }
    }

    /// The flag on the left of `dart`.
    pub fn dart_flag(&self, dart: usize) -> usize {
        2 * dart
    }

    pub fn darts_at(&self, v: usize) -> std::ops::Range<usize> {
        self.vertex_start[v]..self.vertex_start[v + 1]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertex_start[v + 1] - self.vertex_start[v]
    }

    pub fn origin(&self, dart: usize) -> usize {
        self.dart_origin[dart]
    }

    pub fn target(&self, dart: usize) -> usize {
        self.dart_origin[self.dart_reverse[dart]]
    }

    pub fn reverse(&self, dart: usize) -> usize {
        self.dart_reverse[dart]
    }

    pub fn next(&self, dart: usize) -> usize {
        let v = self.dart_origin[dart];
        if dart + 1 == self.vertex_start[v + 1] { self.vertex_start[v] } else { dart + 1 }
    }

    pub fn prev(&self, dart: usize) -> usize {
        let v = self.dart_origin[dart];
        if dart == self.vertex_start[v] { self.vertex_start[v + 1] - 1 } else { dart - 1 }
    }

    pub fn dart_edge(&self, dart: usize) -> usize {
        self.dart_edge[dart]
    }

    /// Face to the left of `dart`.
    pub fn dart_face(&self, dart: usize) -> usize {
        self.dart_face[dart]
    }

    pub fn edge_darts(&self, e: usize) -> [usize; 2] {
        self.edge_darts[e]
    }

    pub fn edge_ends(&self, e: usize) -> [usize; 2] {
        let [d, r] = self.edge_darts[e];
        [self.dart_origin[d], self.dart_origin[r]]
    }

    /// Boundary darts of face `f` in order, face on their left.
    pub fn face_darts(&self, f: usize) -> &[usize] {
        &self.face_darts[f]
    }

    pub fn face_size(&self, f: usize) -> usize {
        self.face_darts[f].len()
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn quotient(&self) -> Option<&QuotientInfo> {
        self.quotient.as_ref()
    }

    /// Sizes of the faces around `v`, counterclockwise.
    pub fn face_cycle(&self, v: usize) -> Vec<u32> {
        self.darts_at(v).map(|d| self.face_size(self.dart_face[d]) as u32).collect()
    }

    pub fn vertex_type(&self, v: usize) -> VertexTypeSig {
        VertexTypeSig::from_cycle(&self.face_cycle(v))
    }

    /// The common vertex type, if all vertices share one.
    pub fn is_semi_equivelar(&self) -> Option<VertexTypeSig> {
        let first = self.vertex_type(0);
        (1..self.vertex_count()).all(|v| self.vertex_type(v) == first).then_some(first)
    }

    pub fn is_polyhedral(&self) -> PolyhedralReport {
        polyhedral::check(self)
    }

    pub fn is_connected(&self) -> bool {
        let n = self.flag_count();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(f) = stack.pop() {
            for s in &self.s {
                let g = s[f];
                if !seen[g] {
                    seen[g] = true;
                    count += 1;
                    stack.push(g);
                }
            }
        }
        count == n
    }

    /// Check the flag-system laws; returns the first violation found.
    pub fn check_flag_axioms(&self) -> std::result::Result<(), String> {
        let n = self.flag_count();
        for (i, s) in self.s.iter().enumerate() {
            for f in 0..n {
                if s[f] == f {
                    return Err(format!("s{i} fixes flag {f}"));
                }
                if s[s[f]] != f {
                    return Err(format!("s{i} is not an involution at flag {f}"));
                }
            }
        }
        for f in 0..n {
            if self.s[0][self.s[2][f]] != self.s[2][self.s[0][f]] {
                return Err(format!("s0 and s2 do not commute at flag {f}"));
            }
        }
        if n != 4 * self.edge_count() {
            return Err("flag count is not four times the edge count".into());
        }
        let boundary: usize = self.face_darts.iter().map(Vec::len).sum();
        if n != 2 * boundary {
            return Err("flag count is not twice the total face size".into());
        }
        if !self.is_connected() {
            return Err("flag graph is disconnected".into());
        }
        Ok(())
    }

    pub fn summary(&self) -> MapSummary {
        let poly = self.is_polyhedral();
        MapSummary {
            vertices: self.vertex_count(),
            edges: self.edge_count(),
            faces: self.face_count(),
            flags: self.flag_count(),
            euler_characteristic: self.euler_characteristic(),
            signature: self.is_semi_equivelar().map(|s| s.to_string()),
            polyhedral: poly.is_polyhedral(),
            polyhedral_violation: poly.violation.map(|v| v.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapSummary {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub flags: usize,
    pub euler_characteristic: i64,
    /// Common vertex type, `None` if the map is not semi-equivelar.
    pub signature: Option<String>,
    pub polyhedral: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub polyhedral_violation: Option<String>,
}

/// Build `E / K`: vertices are `(rep, coset)` pairs, darts are template darts
/// with their offsets reduced modulo `K`.
pub fn build_quotient(spec: &QuotientSpec) -> Result<FlagMap> {
    let t = template(spec.tiling);
    let cosets = spec.matrix.cosets()?;
    let n = cosets.len();
    let reps = t.rep_count();
    let vertices = reps.checked_mul(n).ok_or(Error::TooLarge(usize::MAX))?;
    if vertices > MAX_VERTICES {
        return Err(Error::TooLarge(vertices));
    }

    let mut rep_dart_start = vec![0];
    for r in 0..reps {
        rep_dart_start.push(rep_dart_start[r] + t.degree(r));
    }
    let reverse_slots: Vec<Vec<usize>> = (0..reps)
        .map(|r| {
            (0..t.degree(r))
                .map(|s| t.reverse_slot(r, s).ok_or_else(|| Error::BrokenTemplate(t.id.to_string())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;

    let info = QuotientInfo { spec: *spec, cosets, rep_dart_start };
    let dart_count = info.rep_dart_start[reps] * n;
    let mut dart_origin = Vec::with_capacity(dart_count);
    let mut dart_reverse = Vec::with_capacity(dart_count);
    let mut vertex_start = Vec::with_capacity(vertices + 1);
    let mut labels = Vec::with_capacity(vertices);
    for rep in 0..reps {
        for k in 0..n {
            let v = info.vertex(rep, k);
            let cell = info.cosets.representative(k);
            vertex_start.push(dart_origin.len());
            labels.push(VertexLabel { rep, cell });
            for (slot, dart) in t.neighbors[rep].iter().enumerate() {
                let k2 = info.cosets.index_of(lattice::add_vec(cell, dart.offset)?)?;
                dart_origin.push(v);
                dart_reverse.push(info.dart(dart.target, k2, reverse_slots[rep][slot]));
            }
        }
    }
    vertex_start.push(dart_origin.len());
    Ok(FlagMap::assemble(vertex_start, dart_origin, dart_reverse, labels, Some(info)))
}
