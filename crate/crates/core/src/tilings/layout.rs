//! Unit-edge coordinates for the eleven Archimedean tilings.
//!
//! Each layout gives a translation basis, a list of vertex positions that
//! covers every translation class at least once, and the rotation (plus, for
//! the truncated trihexagonal tiling, the mirror) used as point-group
//! generators. Combinatorial data is derived from these by
//! [`super::TilingTemplate::build`].

use num_traits::{Float, FloatConst};

use super::TilingId;
use crate::geometry::{Basis, Vec2};

#[derive(Clone, Debug)]
pub struct Layout<F> {
    pub basis: Basis<F>,
    pub points: Vec<Vec2<F>>,
    pub rotation_center: Vec2<F>,
    pub rotation_order: u32,
    /// Mirror axis through `rotation_center`, as an angle.
    pub reflection_axis: Option<F>,
}

fn f<F: Float>(x: f64) -> F {
    F::from(x).unwrap()
}

fn deg<F: Float + FloatConst>(d: f64) -> F {
    f::<F>(d) * F::PI() / f(180.0)
}

/// Hexagonal basis: `A` along the x axis, `B` at 60°.
fn hex_basis<F: Float + FloatConst>(len: F) -> Basis<F> {
    let a = Vec2::new(len, F::zero());
    Basis::new(a, a.rotate(deg(60.0)))
}

fn square_basis<F: Float>(len: F) -> Basis<F> {
    Basis::new(Vec2::new(len, F::zero()), Vec2::new(F::zero(), len))
}

/// Vertices of a regular polygon centred at the origin.
fn ring<F: Float + FloatConst>(count: u32, radius: F, first_deg: f64) -> Vec<Vec2<F>> {
    (0..count)
        .map(|k| Vec2::polar(radius, deg(first_deg + 360.0 * k as f64 / count as f64)))
        .collect()
}

pub fn layout<F: Float + FloatConst>(id: TilingId) -> Layout<F> {
    let s3 = f::<F>(3.0).sqrt();
    let s2 = f::<F>(2.0).sqrt();
    let half = f::<F>(0.5);
    let one = F::one();
    let origin = Vec2::zero();
    let rot = |basis, points, center, order| Layout {
        basis,
        points,
        rotation_center: center,
        rotation_order: order,
        reflection_axis: None,
    };
    match id {
        TilingId::T36 => rot(hex_basis(one), vec![origin], origin, 6),
        TilingId::T44 => rot(square_basis(one), vec![origin], Vec2::new(half, half), 4),
        TilingId::T63 => rot(
            hex_basis(s3),
            vec![origin, Vec2::new(F::zero(), one)],
            Vec2::new(s3 * half, half),
            6,
        ),
        TilingId::T33344 => rot(
            Basis::new(Vec2::new(one, F::zero()), Vec2::new(half, one + s3 * half)),
            vec![origin, Vec2::new(F::zero(), one)],
            Vec2::new(half, half),
            2,
        ),
        // Unit squares turned 45° at the lattice points; octagons between.
        TilingId::E1 => rot(square_basis(one + s2), ring(4, one / s2, 0.0), origin, 4),
        // Squares tilted by ±15° at the two square-lattice cosets.
        TilingId::E2 => {
            let period = f::<F>(2.0) * deg::<F>(15.0).cos();
            rot(square_basis(period), ring(4, one / s2, 60.0), origin, 4)
        }
        // Hexagons at lattice points, neighbouring centres √7 apart.
        TilingId::E3 => {
            let a = Vec2::new(f(2.5), s3 * half);
            rot(Basis::new(a, a.rotate(deg(60.0))), ring(6, one, 0.0), origin, 6)
        }
        TilingId::E4 => rot(hex_basis(f(2.0)), ring(6, one, 0.0), origin, 6),
        TilingId::E5 => rot(hex_basis(one + s3), ring(6, one, 30.0), origin, 6),
        TilingId::E6 => {
            let circumradius = one / (f::<F>(2.0) * deg::<F>(15.0).sin());
            rot(hex_basis(f::<F>(2.0) + s3), ring(12, circumradius, 15.0), origin, 6)
        }
        TilingId::E7 => {
            let circumradius = one / (f::<F>(2.0) * deg::<F>(15.0).sin());
            Layout {
                reflection_axis: Some(F::zero()),
                ..rot(hex_basis(f::<F>(3.0) + s3), ring(12, circumradius, 15.0), origin, 6)
            }
        }
    }
}
