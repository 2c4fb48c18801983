//! Exact arithmetic on full-rank sublattices of Z².
//!
//! A sublattice is given by an integer matrix whose two rows generate it. All
//! operations are generic over [`LatticeInt`]; the crate root fixes `i64` as
//! the working type through the [`crate::Sublattice`] alias.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::LatticeInt;

/// Integer row vector (coordinates in a tiling's translation basis).
pub type IVec<T> = [T; 2];

/// Row-major integer 2×2 matrix.
pub type IMat<T> = [[T; 2]; 2];

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum LatticeError {
    #[error("sublattice matrix has zero determinant")]
    ZeroDeterminant,
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
}

type Result<T> = std::result::Result<T, LatticeError>;

#[inline]
fn mul<T: LatticeInt>(x: T, y: T) -> Result<T> {
    x.checked_mul(&y).ok_or(LatticeError::Overflow)
}

#[inline]
fn add<T: LatticeInt>(x: T, y: T) -> Result<T> {
    x.checked_add(&y).ok_or(LatticeError::Overflow)
}

#[inline]
fn sub<T: LatticeInt>(x: T, y: T) -> Result<T> {
    x.checked_sub(&y).ok_or(LatticeError::Overflow)
}

#[inline]
fn abs<T: LatticeInt>(x: T) -> Result<T> {
    if x == T::min_value() {
        Err(LatticeError::Overflow)
    } else {
        Ok(x.abs())
    }
}

/// `x·p + y·q`, checked.
#[inline]
fn dot<T: LatticeInt>(x: T, p: T, y: T, q: T) -> Result<T> {
    add(mul(x, p)?, mul(y, q)?)
}

/// Row vector times matrix.
pub fn vec_mat<T: LatticeInt>(v: IVec<T>, m: &IMat<T>) -> Result<IVec<T>> {
    Ok([
        dot(v[0], m[0][0], v[1], m[1][0])?,
        dot(v[0], m[0][1], v[1], m[1][1])?,
    ])
}

/// Matrix product `l · r`.
pub fn mat_mul<T: LatticeInt>(l: &IMat<T>, r: &IMat<T>) -> Result<IMat<T>> {
    Ok([vec_mat(l[0], r)?, vec_mat(l[1], r)?])
}

pub fn mat_det<T: LatticeInt>(m: &IMat<T>) -> Result<T> {
    sub(mul(m[0][0], m[1][1])?, mul(m[0][1], m[1][0])?)
}

/// Inverse of a unimodular matrix (determinant ±1).
pub fn unimodular_inverse<T: LatticeInt>(m: &IMat<T>) -> Result<IMat<T>> {
    let det = mat_det(m)?;
    debug_assert!(det == T::one() || det == -T::one());
    // adj / det, and det = ±1 so dividing equals multiplying.
    Ok([
        [mul(m[1][1], det)?, mul(-m[0][1], det)?],
        [mul(-m[1][0], det)?, mul(m[0][0], det)?],
    ])
}

pub fn add_vec<T: LatticeInt>(x: IVec<T>, y: IVec<T>) -> Result<IVec<T>> {
    Ok([add(x[0], y[0])?, add(x[1], y[1])?])
}

pub fn sub_vec<T: LatticeInt>(x: IVec<T>, y: IVec<T>) -> Result<IVec<T>> {
    Ok([sub(x[0], y[0])?, sub(x[1], y[1])?])
}

/// Column-vector action `m · v`, used for point-group matrices acting on
/// lattice coordinates.
pub fn mat_vec<T: LatticeInt>(m: &IMat<T>, v: IVec<T>) -> Result<IVec<T>> {
    Ok([
        dot(m[0][0], v[0], m[0][1], v[1])?,
        dot(m[1][0], v[0], m[1][1], v[1])?,
    ])
}

/// The sublattice of Z² spanned by the rows `(a, b)` and `(c, d)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(from = "[T; 4]", into = "[T; 4]")]
pub struct SublatticeMat<T: LatticeInt> {
    pub a: T,
    pub b: T,
    pub c: T,
    pub d: T,
}

impl<T: LatticeInt> From<[T; 4]> for SublatticeMat<T> {
    fn from(e: [T; 4]) -> Self {
        Self::new(e[0], e[1], e[2], e[3])
    }
}

impl<T: LatticeInt> From<SublatticeMat<T>> for [T; 4] {
    fn from(m: SublatticeMat<T>) -> Self {
        m.entries()
    }
}

impl<T: LatticeInt> std::fmt::Display for SublatticeMat<T> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

impl<T: LatticeInt> SublatticeMat<T> {
    pub const fn new(a: T, b: T, c: T, d: T) -> Self {
        Self { a, b, c, d }
    }

    pub fn identity() -> Self {
        Self::scalar(T::one())
    }

    /// `k·I`, the lattice kZ².
    pub fn scalar(k: T) -> Self {
        Self::new(k, T::zero(), T::zero(), k)
    }

    pub fn entries(&self) -> [T; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn as_matrix(&self) -> IMat<T> {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn from_matrix(m: IMat<T>) -> Self {
        Self::new(m[0][0], m[0][1], m[1][0], m[1][1])
    }

    pub fn is_scalar(&self) -> bool {
        self.b.is_zero() && self.c.is_zero() && self.a == self.d && self.a > T::zero()
    }

    /// `a·d − b·c`.
    pub fn det(&self) -> Result<T> {
        mat_det(&self.as_matrix())
    }

    /// `|det|`, rejecting singular matrices.
    pub fn index(&self) -> Result<T> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(LatticeError::ZeroDeterminant);
        }
        abs(det)
    }

    /// Whether the row vector `v` lies in the row lattice.
    pub fn contains(&self, v: IVec<T>) -> Result<bool> {
        let det = self.det()?;
        if det.is_zero() {
            return Err(LatticeError::ZeroDeterminant);
        }
        // v = x·M  ⇔  x = v·adj(M)/det is integral.
        let x0 = sub(mul(v[0], self.d)?, mul(v[1], self.c)?)?;
        let x1 = sub(mul(v[1], self.a)?, mul(v[0], self.b)?)?;
        Ok((x0 % det).is_zero() && (x1 % det).is_zero())
    }

    /// Least `m > 0` with `m·Z² ⊆` the row lattice, i.e. least `m` making
    /// `m·M⁻¹` integral. Computed as `|det| / gcd(|det|, a, b, c, d)`.
    pub fn cover_exponent(&self) -> Result<T> {
        let n = self.index()?;
        let g = [self.a, self.b, self.c, self.d]
            .into_iter()
            .fold(n, |g, e| g.gcd(&e));
        Ok(n / g)
    }

    /// `[K : mZ²] = m² / |det|` for the cover exponent `m`.
    pub fn fold_index(&self) -> Result<T> {
        let m = self.cover_exponent()?;
        let n = self.index()?;
        let sq = mul(m, m)?;
        debug_assert!((sq % n).is_zero());
        Ok(sq / n)
    }

    /// Whether `(m, 0)` and `(0, m)` both lie in the row lattice.
    pub fn contains_scaled_identity(&self, m: T) -> Result<bool> {
        Ok(self.contains([m, T::zero()])? && self.contains([T::zero(), m])?)
    }

    /// `U · M`; the row lattice is unchanged when `U` is unimodular.
    pub fn left_mul(&self, u: &IMat<T>) -> Result<Self> {
        Ok(Self::from_matrix(mat_mul(u, &self.as_matrix())?))
    }

    /// Canonical basis `(p, q; 0, r)` with `p, r > 0` and `0 ≤ q < r`.
    ///
    /// Two matrices have the same row lattice iff their Hermite forms agree.
    pub fn hermite_form(&self) -> Result<Self> {
        if self.det()?.is_zero() {
            return Err(LatticeError::ZeroDeterminant);
        }
        let (a, c) = (self.a, self.c);
        let ext = a.extended_gcd(&c);
        let g = ext.gcd;
        let (x, y) = (ext.x, ext.y);
        // [x y; -c/g a/g] has determinant (x·a + y·c)/g = 1.
        let row0 = [dot(x, self.a, y, self.c)?, dot(x, self.b, y, self.d)?];
        let (cg, ag) = (-(c / g), a / g);
        let row1 = [dot(cg, self.a, ag, self.c)?, dot(cg, self.b, ag, self.d)?];
        debug_assert!(row1[0].is_zero());
        let (mut p, mut q) = (row0[0], row0[1]);
        let mut r = row1[1];
        if p < T::zero() {
            p = -p;
            q = -q;
        }
        if r < T::zero() {
            r = -r;
        }
        q = q.mod_floor(&r);
        Ok(Self::new(p, q, T::zero(), r))
    }

    pub fn smith(&self) -> Result<SmithForm<T>> {
        SmithForm::compute(self)
    }

    pub fn cosets(&self) -> Result<CosetSystem<T>> {
        CosetSystem::new(self)
    }
}

/// `U · M · V = diag(s1, s2)` with `U`, `V` unimodular, `s1 | s2`, both positive.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm<T: LatticeInt> {
    pub u: IMat<T>,
    pub v: IMat<T>,
    pub s1: T,
    pub s2: T,
}

impl<T: LatticeInt> SmithForm<T> {
    fn compute(m: &SublatticeMat<T>) -> Result<Self> {
        if m.det()?.is_zero() {
            return Err(LatticeError::ZeroDeterminant);
        }
        let (zero, one) = (T::zero(), T::one());
        let mut a = m.as_matrix();
        let mut u = [[one, zero], [zero, one]];
        let mut v = [[one, zero], [zero, one]];

        loop {
            // Move the smallest non-zero entry to the pivot.
            let mut best = (0, 0);
            for i in 0..2 {
                for j in 0..2 {
                    let e = a[i][j];
                    if !e.is_zero()
                        && (a[best.0][best.1].is_zero() || abs(e)? < abs(a[best.0][best.1])?)
                    {
                        best = (i, j);
                    }
                }
            }
            if best.0 == 1 {
                a.swap(0, 1);
                u.swap(0, 1);
            }
            if best.1 == 1 {
                for row in a.iter_mut().chain(v.iter_mut()) {
                    row.swap(0, 1);
                }
            }
            let p = a[0][0];

            let q = a[1][0].div_floor(&p);
            for j in 0..2 {
                a[1][j] = sub(a[1][j], mul(q, a[0][j])?)?;
                u[1][j] = sub(u[1][j], mul(q, u[0][j])?)?;
            }
            let q = a[0][1].div_floor(&p);
            for row in a.iter_mut().chain(v.iter_mut()) {
                row[1] = sub(row[1], mul(q, row[0])?)?;
            }

            if !a[1][0].is_zero() || !a[0][1].is_zero() {
                continue;
            }
            if !(a[1][1] % p).is_zero() {
                // Fold row 1 into row 0 so the next pass lowers the pivot.
                for j in 0..2 {
                    a[0][j] = add(a[0][j], a[1][j])?;
                    u[0][j] = add(u[0][j], u[1][j])?;
                }
                continue;
            }
            break;
        }

        for i in 0..2 {
            if a[i][i] < zero {
                a[i][i] = -a[i][i];
                u[i] = [-u[i][0], -u[i][1]];
            }
        }
        Ok(Self { u, v, s1: a[0][0], s2: a[1][1] })
    }
}

/// A concrete model of `Z² / lattice`.
///
/// Coset `k` is identified with `(k / s2, k % s2) ∈ Z_{s1} × Z_{s2}` through
/// `v ↦ v·V`; its representative is that box point pulled back by `V⁻¹`.
#[derive(Clone, Debug)]
pub struct CosetSystem<T: LatticeInt> {
    s1: T,
    s2: T,
    v: IMat<T>,
    representatives: Vec<IVec<T>>,
}

impl<T: LatticeInt> CosetSystem<T> {
    pub fn new(m: &SublatticeMat<T>) -> Result<Self> {
        let snf = m.smith()?;
        let v_inv = unimodular_inverse(&snf.v)?;
        let count = mul(snf.s1, snf.s2)?.as_usize();
        let mut representatives = Vec::with_capacity(count);
        let mut i = T::zero();
        while i < snf.s1 {
            let mut j = T::zero();
            while j < snf.s2 {
                representatives.push(vec_mat([i, j], &v_inv)?);
                j = j + T::one();
            }
            i = i + T::one();
        }
        Ok(Self { s1: snf.s1, s2: snf.s2, v: snf.v, representatives })
    }

    pub fn len(&self) -> usize {
        self.representatives.len()
    }

    pub fn is_empty(&self) -> bool {
        self.representatives.is_empty()
    }

    pub fn invariants(&self) -> (T, T) {
        (self.s1, self.s2)
    }

    pub fn representatives(&self) -> &[IVec<T>] {
        &self.representatives
    }

    pub fn representative(&self, index: usize) -> IVec<T> {
        self.representatives[index]
    }

    /// Index of the coset containing `v`.
    pub fn index_of(&self, v: IVec<T>) -> Result<usize> {
        let w = vec_mat(v, &self.v)?;
        let i = w[0].mod_floor(&self.s1);
        let j = w[1].mod_floor(&self.s2);
        Ok(add(mul(i, self.s2)?, j)?.as_usize())
    }

    /// Canonical representative of `v + lattice`.
    pub fn reduce(&self, v: IVec<T>) -> Result<IVec<T>> {
        Ok(self.representatives[self.index_of(v)?])
    }
}

/// Every sublattice of Z² with index at most `det_bound`, each exactly once,
/// as Hermite forms `(a, b; 0, d)` with `0 ≤ b < d`. Ordered by index, then `a`.
pub fn hermite_lattices<T: LatticeInt>(det_bound: T) -> Vec<SublatticeMat<T>> {
    let mut out = Vec::new();
    let mut n = T::one();
    while n <= det_bound {
        let mut a = T::one();
        while a <= n {
            if (n % a).is_zero() {
                let d = n / a;
                let mut b = T::zero();
                while b < d {
                    out.push(SublatticeMat::new(a, b, T::zero(), d));
                    b = b + T::one();
                }
            }
            a = a + T::one();
        }
        n = n + T::one();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    type M = SublatticeMat<i64>;

    /// Least m with m·M⁻¹ integral, by direct search.
    fn brute_exponent(m: &M) -> i64 {
        let det = m.det().unwrap();
        let adj = [m.d, -m.b, -m.c, m.a];
        (1..=det.abs())
            .find(|k| adj.iter().all(|e| (k * e) % det == 0))
            .unwrap()
    }

    #[test]
    fn determinants() {
        assert_eq!(M::new(1, 0, 0, 1).det(), Ok(1));
        assert_eq!(M::new(1, 0, 0, 2).det(), Ok(2));
        assert_eq!(M::new(2, 1, 0, 2).det(), Ok(4));
    }

    #[test]
    fn exponent_examples() {
        for (m, want) in [
            (M::new(1, 0, 0, 1), 1),
            (M::new(1, 0, 0, 2), 2),
            (M::new(2, 1, 0, 2), 4),
            (M::new(2, 0, 0, 2), 2),
        ] {
            assert_eq!(brute_exponent(&m), want, "oracle disagrees on {m}");
            assert_eq!(m.cover_exponent().unwrap(), want, "{m}");
        }
    }

    #[test]
    fn fold_examples() {
        assert_eq!(M::new(1, 0, 0, 1).fold_index(), Ok(1));
        assert_eq!(M::new(1, 0, 0, 2).fold_index(), Ok(2));
        assert_eq!(M::new(2, 0, 0, 2).fold_index(), Ok(1));
    }

    #[test]
    fn zero_determinant_rejected() {
        let m = M::new(2, 4, 1, 2);
        assert_eq!(m.cover_exponent(), Err(LatticeError::ZeroDeterminant));
        assert!(m.cosets().is_err());
        assert!(m.hermite_form().is_err());
    }

    #[test]
    fn overflow_is_reported() {
        let big = i64::MAX / 2;
        assert_eq!(M::new(big, 0, 0, big).det(), Err(LatticeError::Overflow));
        let small = SublatticeMat::<i8>::new(100, 0, 0, 100);
        assert_eq!(small.det(), Err(LatticeError::Overflow));
    }

    #[test]
    fn scaled_identity_membership() {
        assert!(M::new(1, 0, 0, 2).contains_scaled_identity(2).unwrap());
        assert!(!M::new(1, 0, 0, 2).contains_scaled_identity(1).unwrap());
        assert!(M::new(1, 0, 0, 1).contains_scaled_identity(1).unwrap());
    }

    #[test]
    fn coset_examples() {
        let c = M::identity().cosets().unwrap();
        assert_eq!(c.representatives(), &[[0, 0]]);
        assert_eq!(M::new(1, 0, 0, 3).cosets().unwrap().len(), 3);
        let c = M::new(2, 1, 0, 2).cosets().unwrap();
        assert_eq!(c.len(), 4);
        assert_eq!(c.invariants(), (1, 4));
    }

    #[test]
    fn smith_is_a_valid_decomposition() {
        for m in [M::new(2, 1, 0, 2), M::new(4, 6, -2, 8), M::new(-3, 5, 7, 1), M::new(0, 3, 2, 0)] {
            let s = m.smith().unwrap();
            let d = mat_mul(&mat_mul(&s.u, &m.as_matrix()).unwrap(), &s.v).unwrap();
            assert_eq!(d, [[s.s1, 0], [0, s.s2]], "{m}");
            assert_eq!(mat_det(&s.u).unwrap().abs(), 1);
            assert_eq!(mat_det(&s.v).unwrap().abs(), 1);
            assert_eq!(s.s2 % s.s1, 0);
            assert_eq!(s.s1 * s.s2, m.index().unwrap());
        }
    }

    #[test]
    fn hermite_enumeration_counts() {
        // Sublattices of index n in Z² number σ(n), the divisor sum.
        let sigma = |n: i64| (1..=n).filter(|d| n % d == 0).sum::<i64>();
        let all = hermite_lattices(12i64);
        for n in 1..=12 {
            let count = all.iter().filter(|m| m.index().unwrap() == n).count() as i64;
            assert_eq!(count, sigma(n));
        }
        for m in &all {
            assert_eq!(m.hermite_form().unwrap(), *m);
        }
    }

    #[test]
    fn works_for_other_integer_widths() {
        let m = SublatticeMat::<i32>::new(2, 1, 0, 2);
        assert_eq!(m.cover_exponent(), Ok(4));
        let m = SublatticeMat::<i128>::new(6, 0, 0, 4);
        assert_eq!(m.cover_exponent(), Ok(12));
        assert_eq!(m.fold_index(), Ok(6));
    }
}
