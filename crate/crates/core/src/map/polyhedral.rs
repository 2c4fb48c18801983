use std::collections::HashMap;
use std::fmt;

use super::FlagMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyhedralityViolation {
    SmallFace { face: usize, size: usize },
    /// The boundary walk of `face` repeats a vertex or an edge.
    FaceNotSimple { face: usize },
    Loop { edge: usize },
    MultiEdge { first: usize, second: usize },
    /// Two faces meet in something other than nothing, a vertex or an edge.
    FacePair { first: usize, second: usize, shared_vertices: usize, shared_edges: usize },
}

impl fmt::Display for PolyhedralityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::SmallFace { face, size } => write!(f, "face {face} has only {size} sides"),
            Self::FaceNotSimple { face } => write!(f, "face {face} is not a simple cycle"),
            Self::Loop { edge } => write!(f, "edge {edge} is a loop"),
            Self::MultiEdge { first, second } => write!(f, "edges {first} and {second} join the same vertices"),
            Self::FacePair { first, second, shared_vertices, shared_edges } => write!(
                f,
                "faces {first} and {second} share {shared_vertices} vertices and {shared_edges} edges"
            ),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralReport {
    pub violation: Option<PolyhedralityViolation>,
}

impl PolyhedralReport {
    pub fn is_polyhedral(&self) -> bool {
        self.violation.is_none()
    }
}

pub(super) fn check(map: &FlagMap) -> PolyhedralReport {
    PolyhedralReport { violation: first_violation(map) }
}

fn first_violation(map: &FlagMap) -> Option<PolyhedralityViolation> {
    use PolyhedralityViolation::*;

    for face in 0..map.face_count() {
        let darts = map.face_darts(face);
        if darts.len() < 3 {
            return Some(SmallFace { face, size: darts.len() });
        }
        let mut verts: Vec<usize> = darts.iter().map(|&d| map.origin(d)).collect();
        let mut edges: Vec<usize> = darts.iter().map(|&d| map.dart_edge(d)).collect();
        verts.sort_unstable();
        edges.sort_unstable();
        if verts.windows(2).any(|w| w[0] == w[1]) || edges.windows(2).any(|w| w[0] == w[1]) {
            return Some(FaceNotSimple { face });
        }
    }

    let mut ends: HashMap<(usize, usize), usize> = HashMap::new();
    for edge in 0..map.edge_count() {
        let [u, v] = map.edge_ends(edge);
        if u == v {
            return Some(Loop { edge });
        }
        if let Some(&first) = ends.get(&(u.min(v), u.max(v))) {
            return Some(MultiEdge { first, second: edge });
        }
        ends.insert((u.min(v), u.max(v)), edge);
    }

    // Faces are simple, so each face appears at most once around a vertex.
    let mut shared_vertices: HashMap<(usize, usize), usize> = HashMap::new();
    for v in 0..map.vertex_count() {
        let faces: Vec<usize> = map.darts_at(v).map(|d| map.dart_face(d)).collect();
        for (i, &f) in faces.iter().enumerate() {
            for &g in &faces[i + 1..] {
                *shared_vertices.entry((f.min(g), f.max(g))).or_default() += 1;
            }
        }
    }
    let mut shared_edges: HashMap<(usize, usize), usize> = HashMap::new();
    for edge in 0..map.edge_count() {
        let [d, r] = map.edge_darts(edge);
        let (f, g) = (map.dart_face(d), map.dart_face(r));
        *shared_edges.entry((f.min(g), f.max(g))).or_default() += 1;
    }
    let mut pairs: Vec<_> = shared_vertices.into_iter().collect();
    pairs.sort_unstable();
    for ((first, second), nv) in pairs {
        let ne = shared_edges.get(&(first, second)).copied().unwrap_or(0);
        let ok = (nv == 1 && ne == 0) || (nv == 2 && ne == 1);
        if !ok {
            return Some(FacePair { first, second, shared_vertices: nv, shared_edges: ne });
        }
    }
    None
}
