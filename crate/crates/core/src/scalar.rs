//! Scalar traits the rest of the crate is generic over.
//!
//! Lattice arithmetic runs over any checked primitive signed integer
//! ([`LatticeInt`]); rendering geometry runs over any [`num_traits::Float`].

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_traits::{PrimInt, Signed};

/// A signed machine integer usable for exact 2×2 lattice arithmetic.
///
/// Every multiplication and addition performed on lattice data goes through
/// the `checked_*` methods supplied by [`PrimInt`], so overflow surfaces as an
/// error instead of wrapping.
pub trait LatticeInt:
    PrimInt + Signed + Integer + Hash + Debug + Display + Send + Sync + 'static
{
    /// Lossy conversion for indexing; callers guarantee non-negativity.
    fn as_usize(self) -> usize {
        self.to_usize().expect("non-negative index fits in usize")
    }

    fn from_i64(v: i64) -> Option<Self> {
        <Self as num_traits::NumCast>::from(v)
    }
}

impl<T> LatticeInt for T where
    T: PrimInt + Signed + Integer + Hash + Debug + Display + Send + Sync + 'static
{
}
