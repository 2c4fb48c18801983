//! Plane geometry used to lay out tilings and draw them.

use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Float;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Vec2<F> {
    pub x: F,
    pub y: F,
}

impl<F: Float> Vec2<F> {
    pub fn new(x: F, y: F) -> Self {
        Self { x, y }
    }

    pub fn zero() -> Self {
        Self::new(F::zero(), F::zero())
    }

    /// Unit vector at `angle` radians.
    pub fn polar(radius: F, angle: F) -> Self {
        Self::new(radius * angle.cos(), radius * angle.sin())
    }

    pub fn norm(self) -> F {
        self.x.hypot(self.y)
    }

    pub fn angle(self) -> F {
        self.y.atan2(self.x)
    }

    pub fn cross(self, o: Self) -> F {
        self.x * o.y - self.y * o.x
    }

    /// Counterclockwise rotation about the origin.
    pub fn rotate(self, angle: F) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    /// Mirror across the line through the origin at `axis` radians.
    pub fn reflect(self, axis: F) -> Self {
        let two = F::one() + F::one();
        let (s, c) = (two * axis).sin_cos();
        Self::new(c * self.x + s * self.y, s * self.x - c * self.y)
    }

    pub fn approx_eq(self, o: Self, tol: F) -> bool {
        (self - o).norm() <= tol
    }

    pub fn cast<G: Float>(self) -> Vec2<G> {
        Vec2::new(G::from(self.x).unwrap(), G::from(self.y).unwrap())
    }
}

impl<F: Float> Add for Vec2<F> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl<F: Float> Sub for Vec2<F> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl<F: Float> Neg for Vec2<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

impl<F: Float> Mul<F> for Vec2<F> {
    type Output = Self;
    fn mul(self, k: F) -> Self {
        Self::new(self.x * k, self.y * k)
    }
}

/// A lattice basis `(A, B)` of the plane.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Basis<F> {
    pub a: Vec2<F>,
    pub b: Vec2<F>,
}

impl<F: Float> Basis<F> {
    pub fn new(a: Vec2<F>, b: Vec2<F>) -> Self {
        Self { a, b }
    }

    /// `x·A + y·B`.
    pub fn point(&self, x: F, y: F) -> Vec2<F> {
        self.a * x + self.b * y
    }

    pub fn lattice_point(&self, v: [i64; 2]) -> Vec2<F> {
        self.point(F::from(v[0]).unwrap(), F::from(v[1]).unwrap())
    }

    /// Coordinates `(x, y)` with `p = x·A + y·B`.
    pub fn coords(&self, p: Vec2<F>) -> (F, F) {
        let det = self.a.cross(self.b);
        (p.cross(self.b) / det, self.a.cross(p) / det)
    }

    /// Area of the parallelogram spanned by `A` and `B`.
    pub fn cell_area(&self) -> F {
        self.a.cross(self.b).abs()
    }

    pub fn cast<G: Float>(self) -> Basis<G> {
        Basis::new(self.a.cast(), self.b.cast())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coords_invert_point() {
        let basis = Basis::new(Vec2::new(2.0, 0.0), Vec2::new(1.0, 3f64.sqrt()));
        let p = basis.point(1.25, -0.5);
        let (x, y) = basis.coords(p);
        assert!((x - 1.25).abs() < 1e-12 && (y + 0.5).abs() < 1e-12);
    }

    #[test]
    fn reflection_is_an_involution() {
        let p = Vec2::new(0.3f32, -1.7);
        let q = p.reflect(0.4).reflect(0.4);
        assert!(p.approx_eq(q, 1e-5));
        assert!(Vec2::new(1.0f64, 0.0).reflect(0.0).approx_eq(Vec2::new(1.0, 0.0), 1e-12));
    }
}
