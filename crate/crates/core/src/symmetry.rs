//! Automorphisms of flag systems.
//!
//! An automorphism is a flag permutation commuting with `s0`, `s1`, `s2`.
//! Since maps are connected, it is fixed by the image of one flag: sending
//! a base flag to a candidate either propagates consistently through the
//! involutions or hits a conflict. Trying every candidate gives the whole
//! group in `O(|flags|²)`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::hermite_lattices;
use crate::map::{build_quotient, FlagMap, QuotientSpec};
use crate::tilings::TilingId;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MapAutomorphism {
    pub flag_perm: Vec<usize>,
}

impl MapAutomorphism {
    pub fn identity(flags: usize) -> Self {
        Self { flag_perm: (0..flags).collect() }
    }

    pub fn is_identity(&self) -> bool {
        self.flag_perm.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self { flag_perm: other.flag_perm.iter().map(|&f| self.flag_perm[f]).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.flag_perm.len()];
        for (i, &j) in self.flag_perm.iter().enumerate() {
            inv[j] = i;
        }
        Self { flag_perm: inv }
    }

    pub fn order(&self) -> usize {
        let mut p = self.clone();
        let mut k = 1;
        while !p.is_identity() {
            p = self.compose(&p);
            k += 1;
        }
        k
    }

    /// Whether this is a bijection commuting with all three involutions of `map`.
    pub fn is_automorphism_of(&self, map: &FlagMap) -> bool {
        let n = map.flag_count();
        if self.flag_perm.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &j in &self.flag_perm {
            if j >= n || std::mem::replace(&mut hit[j], true) {
                return false;
            }
        }
        (0..3).all(|i| {
            let s = map.involution(i);
            (0..n).all(|f| self.flag_perm[s[f]] == s[self.flag_perm[f]])
        })
    }

    pub fn vertex_image(&self, map: &FlagMap, v: usize) -> usize {
        let flag = map.dart_flag(map.darts_at(v).start);
        map.flag_vertex(self.flag_perm[flag])
    }
}

/// The unique involution-equivariant map from `dom` to `cod` sending `base`
/// to `target`, if it exists.
pub fn extend(dom: &FlagMap, cod: &FlagMap, base: usize, target: usize) -> Option<Vec<usize>> {
    let n = dom.flag_count();
    if cod.flag_count() != n {
        return None;
    }
    let mut image = vec![usize::MAX; n];
    image[base] = target;
    let mut stack = vec![base];
    let mut reached = 1;
    while let Some(f) = stack.pop() {
        let fi = image[f];
        for i in 0..3 {
            let g = dom.involution(i)[f];
            let h = cod.involution(i)[fi];
            if image[g] == usize::MAX {
                image[g] = h;
                reached += 1;
                stack.push(g);
            } else if image[g] != h {
                return None;
            }
        }
    }
    (reached == n).then_some(image)
}

/// Cheap necessary condition for `target` to be the image of `base`.
fn locally_compatible(dom: &FlagMap, cod: &FlagMap, base: usize, target: usize) -> bool {
    dom.degree(dom.flag_vertex(base)) == cod.degree(cod.flag_vertex(target))
        && dom.face_size(dom.flag_face(base)) == cod.face_size(cod.flag_face(target))
}

/// Every automorphism of `map`, ordered by the image of flag 0.
pub fn automorphism_group(map: &FlagMap) -> Vec<MapAutomorphism> {
    let n = map.flag_count();
    if n == 0 {
        return vec![MapAutomorphism::identity(0)];
    }
    (0..n)
        .into_par_iter()
        .filter(|&t| locally_compatible(map, map, 0, t))
        .filter_map(|t| extend(map, map, 0, t))
        .map(|flag_perm| MapAutomorphism { flag_perm })
        .collect()
}

/// An automorphism taking vertex `from` to vertex `to`, if one exists.
pub fn automorphism_moving(map: &FlagMap, from: usize, to: usize) -> Option<MapAutomorphism> {
    let base = map.dart_flag(map.darts_at(from).start);
    let targets: Vec<usize> = map.darts_at(to).flat_map(|d| [2 * d, 2 * d + 1]).collect();
    targets
        .into_iter()
        .find_map(|t| extend(map, map, base, t))
        .map(|flag_perm| MapAutomorphism { flag_perm })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitReport {
    pub vertex_orbits: Vec<Vec<usize>>,
    pub flag_orbit_count: usize,
    pub group_order: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }

    fn classes(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut slot = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            let r = self.find(x);
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }
}

/// Vertex and flag orbits of `group` acting on `map`.
pub fn orbit_report(map: &FlagMap, group: &[MapAutomorphism]) -> OrbitReport {
    let mut vertices = UnionFind::new(map.vertex_count());
    let mut flags = UnionFind::new(map.flag_count());
    for g in group {
        for v in 0..map.vertex_count() {
            vertices.union(v, g.vertex_image(map, v));
        }
        for (f, &h) in g.flag_perm.iter().enumerate() {
            flags.union(f, h);
        }
    }
    OrbitReport {
        vertex_orbits: vertices.classes(),
        flag_orbit_count: flags.classes().len(),
        group_order: group.len(),
    }
}

/// Vertex orbits of the group generated by `generators`.
pub fn generated_vertex_orbits(map: &FlagMap, generators: &[MapAutomorphism]) -> Vec<Vec<usize>> {
    let mut vertices = UnionFind::new(map.vertex_count());
    for g in generators {
        for v in 0..map.vertex_count() {
            vertices.union(v, g.vertex_image(map, v));
        }
    }
    vertices.classes()
}

/// Whether `Aut(map)` is transitive on vertices.
///
/// Grows the orbit of vertex 0 one extension at a time and never tries a
/// target whose vertex is already known to be in the orbit.
pub fn is_vertex_transitive(map: &FlagMap) -> bool {
    let nv = map.vertex_count();
    if nv <= 1 {
        return true;
    }
    let mut orbit = vec![false; nv];
    orbit[0] = true;
    let mut remaining = nv - 1;
    for v in 1..nv {
        if orbit[v] {
            continue;
        }
        let Some(g) = automorphism_moving(map, 0, v) else {
            return false;
        };
        // Everything g reaches from the known orbit is in the orbit too.
        for u in 0..nv {
            if orbit[u] {
                let w = g.vertex_image(map, u);
                if !orbit[w] {
                    orbit[w] = true;
                    remaining -= 1;
                }
            }
        }
        if !orbit[v] {
            orbit[v] = true;
            remaining -= 1;
        }
        if remaining == 0 {
            return true;
        }
    }
    remaining == 0
}

/// A flag bijection `m1 → m2` commuting with the involutions.
pub fn are_isomorphic(m1: &FlagMap, m2: &FlagMap) -> Option<Vec<usize>> {
    let n = m1.flag_count();
    if n == 0 || m2.flag_count() != n || m1.vertex_count() != m2.vertex_count() {
        return None;
    }
    (0..n)
        .filter(|&t| locally_compatible(m1, m2, 0, t))
        .find_map(|t| extend(m1, m2, 0, t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetrySummary {
    pub group_order: usize,
    pub vertex_orbits: usize,
    pub flag_orbits: usize,
    pub vertex_transitive: bool,
}

pub fn summarize(map: &FlagMap) -> SymmetrySummary {
    let group = automorphism_group(map);
    let report = orbit_report(map, &group);
    SymmetrySummary {
        group_order: report.group_order,
        vertex_orbits: report.vertex_orbits.len(),
        flag_orbits: report.flag_orbit_count,
        vertex_transitive: report.vertex_orbits.len() == 1,
    }
}

/// Polyhedral quotients of `tiling` with `|det| ≤ det_bound`, one per lattice,
/// that are not vertex-transitive.
pub fn search_non_vt(tiling: TilingId, det_bound: i64) -> Result<Vec<QuotientSpec>> {
    if tiling.is_trivially_transitive() {
        return Err(Error::Invalid(format!(
            "{tiling} has only vertex-transitive quotients; search needs one of E1..E7"
        )));
    }
    let candidates = hermite_lattices(det_bound);
    let found: Vec<Option<QuotientSpec>> = candidates
        .par_iter()
        .map(|&m| -> Result<Option<QuotientSpec>> {
            let spec = QuotientSpec::new(tiling, m)?;
            let x = build_quotient(&spec)?;
            Ok((x.is_polyhedral().is_polyhedral() && !is_vertex_transitive(&x)).then_some(spec))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Sublattice;

    fn quotient(id: TilingId, m: [i64; 4]) -> FlagMap {
        build_quotient(&QuotientSpec::new(id, Sublattice::from(m)).unwrap()).unwrap()
    }

    #[test]
    fn grid_torus_group() {
        let x = quotient(TilingId::T44, [3, 0, 0, 3]);
        let group = automorphism_group(&x);
        // Translations (9) times the dihedral stabilizer of a vertex (8).
        assert_eq!(group.len(), 72);
        assert!(group.iter().any(MapAutomorphism::is_identity));
        for g in &group {
            assert!(g.is_automorphism_of(&x));
        }
        let report = orbit_report(&x, &group);
        assert_eq!(report.vertex_orbits.len(), 1);
        assert_eq!(report.flag_orbit_count, 1);
        assert!(is_vertex_transitive(&x));
    }

    #[test]
    fn group_is_closed() {
        let x = quotient(TilingId::E1, [2, 1, -1, 2]);
        let group = automorphism_group(&x);
        let set: std::collections::HashSet<_> = group.iter().cloned().collect();
        for g in &group {
            assert!(set.contains(&g.inverse()));
            for h in &group {
                assert!(set.contains(&g.compose(h)));
            }
        }
    }

    #[test]
    fn free_action_on_flags() {
        let x = quotient(TilingId::E4, [3, 1, 0, 2]);
        for g in automorphism_group(&x) {
            let fixes = (0..x.flag_count()).any(|f| g.flag_perm[f] == f);
            assert_eq!(fixes, g.is_identity());
        }
    }

    #[test]
    fn isomorphism_of_same_lattice() {
        let a = quotient(TilingId::E2, [2, 1, 0, 3]);
        let b = quotient(TilingId::E2, [2, 4, 2, 7]); // rows (2,1)+(0,3), 1·(2,1)+2·(0,3)
        assert!(are_isomorphic(&a, &a).is_some());
        assert!(are_isomorphic(&a, &b).is_some());
        let c = quotient(TilingId::E2, [1, 0, 0, 5]);
        assert!(are_isomorphic(&a, &c).is_none());
        let d = quotient(TilingId::E2, [1, 0, 0, 7]);
        assert!(are_isomorphic(&a, &d).is_none());
    }

    #[test]
    fn trivial_types_rejected_by_search() {
        assert!(search_non_vt(TilingId::T44, 10).is_err());
    }
}
