//! Vertex-type signatures `[p₁^n₁, …, p_k^n_k]`.

use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Run-length encoded cyclic face-size sequence around a vertex, in
/// canonical form: the least of all cyclic rotations of the run list and of
/// its reversal, with runs ordered by face size and then by longer run first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexTypeSig {
    runs: Vec<(u32, u32)>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("cannot parse vertex type {0:?}")]
pub struct ParseSigError(pub String);

fn run_key(runs: &[(u32, u32)]) -> Vec<(u32, Reverse<u32>)> {
    runs.iter().map(|&(p, n)| (p, Reverse(n))).collect()
}

impl VertexTypeSig {
    /// Signature of the cyclic sequence of face sizes `cycle`.
    ///
    /// Panics on an empty cycle.
    pub fn from_cycle(cycle: &[u32]) -> Self {
        assert!(!cycle.is_empty(), "face cycle must be non-empty");
        let len = cycle.len();
        let Some(start) = (0..len).find(|&i| cycle[i] != cycle[(i + len - 1) % len]) else {
            return Self { runs: vec![(cycle[0], len as u32)] };
        };
        let mut runs: Vec<(u32, u32)> = Vec::new();
        for k in 0..len {
            let p = cycle[(start + k) % len];
            match runs.last_mut() {
                Some((q, n)) if *q == p => *n += 1,
                _ => runs.push((p, 1)),
            }
        }
        Self::canonical(runs)
    }

    /// Canonicalize an explicit run list (adjacent equal sizes are merged).
    pub fn from_runs(runs: &[(u32, u32)]) -> Self {
        let cycle: Vec<u32> = runs
            .iter()
            .flat_map(|&(p, n)| std::iter::repeat_n(p, n as usize))
            .collect();
        Self::from_cycle(&cycle)
    }

    fn canonical(runs: Vec<(u32, u32)>) -> Self {
        let k = runs.len();
        let mut reversed = runs.clone();
        reversed.reverse();
        let mut best = runs.clone();
        for seq in [&runs, &reversed] {
            for r in 0..k {
                let cand: Vec<_> = seq[r..].iter().chain(&seq[..r]).copied().collect();
                if run_key(&cand) < run_key(&best) {
                    best = cand;
                }
            }
        }
        Self { runs: best }
    }

    pub fn runs(&self) -> &[(u32, u32)] {
        &self.runs
    }

    /// Vertex degree (number of faces around the vertex).
    pub fn degree(&self) -> u32 {
        self.runs.iter().map(|r| r.1).sum()
    }

    /// Distinct face sizes, ascending.
    pub fn face_sizes(&self) -> Vec<u32> {
        let mut s: Vec<u32> = self.runs.iter().map(|r| r.0).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

impl fmt::Display for VertexTypeSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, (p, n)) in self.runs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}^{n}")?;
        }
        write!(f, "]")
    }
}

impl FromStr for VertexTypeSig {
    type Err = ParseSigError;

    /// Accepts `[3^4,6^1]`, `3^4.6` and `3.3.3.3.6` forms.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseSigError(s.to_string());
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let mut runs = Vec::new();
        for part in body.split([',', '.']) {
            let part = part.trim();
            let (p, n) = match part.split_once('^') {
                Some((p, n)) => (p, n),
                None => (part, "1"),
            };
            let p: u32 = p.parse().map_err(|_| err())?;
            let n: u32 = n.parse().map_err(|_| err())?;
            if p < 3 || n == 0 {
                return Err(err());
            }
            runs.push((p, n));
        }
        if runs.is_empty() {
            return Err(err());
        }
        Ok(Self::from_runs(&runs))
    }
}

impl Serialize for VertexTypeSig {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexTypeSig {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
