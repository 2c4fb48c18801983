use std::fmt;

use super::{Dart, TilingTemplate};
use crate::signature::VertexTypeSig;

#[derive(Clone, Debug, PartialEq)]
pub enum TemplateViolation {
    RepCount { expected: usize, found: usize },
    /// `rep --dart-->` has no matching reverse dart.
    DartSymmetry { rep: usize, dart: Dart },
    FaceTracing,
    VertexType { rep: usize, found: VertexTypeSig },
    NotAPermutation { element: String },
    MatrixOrder { element: String },
    /// `element` sends the dart at `rep` to something that is not a dart.
    Adjacency { element: String, rep: usize, dart: Dart },
    Overflow { element: String },
    NotTransitive { orbits: usize },
}

impl fmt::Display for TemplateViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::RepCount { expected, found } => write!(f, "expected {expected} reps, found {found}"),
            Self::DartSymmetry { rep, dart } => {
                write!(f, "dart {rep}->{}{:?} has no reverse", dart.target, dart.offset)
            }
            Self::FaceTracing => write!(f, "face tracing failed"),
            Self::VertexType { rep, found } => write!(f, "rep {rep} has vertex type {found}"),
            Self::NotAPermutation { element } => write!(f, "{element}: sigma is not a permutation"),
            Self::MatrixOrder { element } => write!(f, "{element}: matrix order does not divide 12"),
            Self::Adjacency { element, rep, dart } => {
                write!(f, "{element} breaks adjacency at dart {rep}->{}{:?}", dart.target, dart.offset)
            }
            Self::Overflow { element } => write!(f, "{element}: arithmetic overflow"),
            Self::NotTransitive { orbits } => write!(f, "point group has {orbits} rep orbits"),
        }
    }
}

/// Check every structural invariant of a template. Empty means valid.
pub fn validate_template(t: &TilingTemplate) -> Vec<TemplateViolation> {
    let mut out = Vec::new();
    let reps = t.rep_count();
    if reps != t.id.rep_count() {
        out.push(TemplateViolation::RepCount { expected: t.id.rep_count(), found: reps });
    }

    let mut symmetric = true;
    for rep in 0..reps {
        for (slot, &dart) in t.neighbors[rep].iter().enumerate() {
            if t.reverse_slot(rep, slot).is_none() {
                symmetric = false;
                out.push(TemplateViolation::DartSymmetry { rep, dart });
            }
        }
    }

    if symmetric {
        match t.rep_face_cycles() {
            None => out.push(TemplateViolation::FaceTracing),
            Some(cycles) => {
                let want = t.id.signature();
                for (rep, cycle) in cycles.iter().enumerate() {
                    let found = VertexTypeSig::from_cycle(cycle);
                    if found != want {
                        out.push(TemplateViolation::VertexType { rep, found });
                    }
                }
            }
        }
    }

    for g in &t.point_group {
        let mut sorted = g.sigma.clone();
        sorted.sort_unstable();
        if sorted != (0..reps).collect::<Vec<_>>() || g.shift.len() != reps {
            out.push(TemplateViolation::NotAPermutation { element: g.name.clone() });
            continue;
        }
        if g.matrix_order().is_none_or(|k| 12 % k != 0) {
            out.push(TemplateViolation::MatrixOrder { element: g.name.clone() });
        }
        'darts: for rep in 0..reps {
            for &dart in &t.neighbors[rep] {
                match g.map_dart(rep, dart) {
                    Err(_) => {
                        out.push(TemplateViolation::Overflow { element: g.name.clone() });
                        break 'darts;
                    }
                    Ok(image) => {
                        if t.slot_of(g.sigma[rep], image).is_none() {
                            out.push(TemplateViolation::Adjacency { element: g.name.clone(), rep, dart });
                        }
                    }
                }
            }
        }
    }

    let orbits = point_group_rep_orbits(t, true).len();
    if orbits != 1 {
        out.push(TemplateViolation::NotTransitive { orbits });
    }
    out
}

/// Orbits of reps under the permutations `sigma` of the stored point-group
/// elements; reflections are skipped unless `use_reflection`. Each orbit is
/// sorted and orbits are ordered by their least rep.
pub fn point_group_rep_orbits(t: &TilingTemplate, use_reflection: bool) -> Vec<Vec<usize>> {
    let reps = t.rep_count();
    let mut label: Vec<usize> = (0..reps).collect();
    fn find(label: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while label[r] != r {
            r = label[r];
        }
        label[x] = r;
        r
    }
    for g in t.point_group.iter().filter(|g| use_reflection || !g.is_reflection()) {
        for p in 0..reps {
            let (a, b) = (find(&mut label, p), find(&mut label, g.sigma[p]));
            if a != b {
                label[a.max(b)] = a.min(b);
            }
        }
    }
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    let mut root_slot = vec![usize::MAX; reps];
    for p in 0..reps {
        let r = find(&mut label, p);
        if root_slot[r] == usize::MAX {
            root_slot[r] = orbits.len();
            orbits.push(Vec::new());
        }
        orbits[root_slot[r]].push(p);
    }
    orbits
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tilings::{template, TilingId};

    #[test]
    fn every_template_validates() {
        for id in TilingId::ALL {
            let t = TilingTemplate::build(id);
            assert_eq!(validate_template(&t), vec![], "{id}");
        }
    }

    #[test]
    fn corrupted_offset_breaks_dart_symmetry() {
        let mut t = template(TilingId::E3).clone();
        t.neighbors[2][1].offset[0] += 1;
        let report = validate_template(&t);
        assert!(report.iter().any(|v| matches!(v, TemplateViolation::DartSymmetry { .. })), "{report:?}");
    }

    #[test]
    fn corrupted_sigma_breaks_adjacency() {
        let mut t = template(TilingId::E1).clone();
        t.point_group[0].sigma.swap(0, 1);
        let report = validate_template(&t);
        assert!(report.iter().any(|v| matches!(v, TemplateViolation::Adjacency { .. })), "{report:?}");
    }

    #[test]
    fn rotation_orbits() {
        let e1 = template(TilingId::E1);
        assert_eq!(point_group_rep_orbits(e1, false).len(), 1);
        let e3 = template(TilingId::E3);
        assert_eq!(point_group_rep_orbits(e3, false), vec![(0..6).collect::<Vec<_>>()]);
        let e7 = template(TilingId::E7);
        assert_eq!(point_group_rep_orbits(e7, false).len(), 2);
        assert_eq!(point_group_rep_orbits(e7, true).len(), 1);
    }

    #[test]
    fn symmetry_matrices_match_geometry() {
        for id in TilingId::ALL {
            let t = template(id);
            for g in &t.point_group {
                let la = g.linear(t.basis.a);
                let lb = g.linear(t.basis.b);
                let ra = t.basis.lattice_point([g.matrix[0][0], g.matrix[1][0]]);
                let rb = t.basis.lattice_point([g.matrix[0][1], g.matrix[1][1]]);
                assert!(la.approx_eq(ra, 1e-9) && lb.approx_eq(rb, 1e-9), "{id} {}", g.name);
            }
        }
    }
}
