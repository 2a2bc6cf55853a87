//! Homogeneous integer vectors and the few exact operations the conversion
//! engines are built from.
//!
//! Slot 0 holds the homogenizing coordinate: the inhomogeneous term of a
//! constraint, or the divisor of a point. A constraint row `c` and a
//! generator row `g` are related through the plain inner product `c · g`,
//! whose sign tells whether `g` satisfies `c` strictly, saturates it, or
//! violates it.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HomVec(Vec<BigInt>);

impl HomVec {
    /// Wraps raw coefficients without normalizing them.
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        HomVec(coeffs)
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        HomVec(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(len: usize) -> Self {
        HomVec(vec![BigInt::zero(); len])
    }

    /// Unit vector with a one in slot `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.0[i] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Space dimension, i.e. the length without the homogenizing slot.
    pub fn space_dim(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.0
    }

    pub fn slot0(&self) -> &BigInt {
        &self.0[0]
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// True when every slot but the homogenizing one is zero.
    pub fn is_constant(&self) -> bool {
        self.0[1..].iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> HomVec {
        HomVec(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &HomVec) -> HomVec {
        HomVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `a * u + b * v`, unnormalized.
    pub fn lin_comb(a: &BigInt, u: &HomVec, b: &BigInt, v: &HomVec) -> HomVec {
        HomVec(u.0.iter().zip(&v.0).map(|(x, y)| a * x + b * y).collect())
    }

    /// Inner product without a length check.
    pub fn dot(&self, other: &HomVec) -> BigInt {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    /// Divides by the gcd of the coefficients; with `canonical_sign` also
    /// makes the first nonzero coefficient positive.
    pub fn normalize(&self, canonical_sign: bool) -> Result<HomVec> {
        let g = self.0.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::InvalidVector);
        }
        let mut out: Vec<BigInt> = self.0.iter().map(|c| c / &g).collect();
        if canonical_sign {
            if let Some(first) = out.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    out.iter_mut().for_each(|c| *c = -&*c);
                }
            }
        }
        Ok(HomVec(out))
    }

    pub(crate) fn normalized(&self, canonical_sign: bool) -> HomVec {
        self.normalize(canonical_sign)
            .expect("normalizing a vector known to be nonzero")
    }
}

impl fmt::Debug for HomVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

fn check_len(a: &HomVec, b: &HomVec) -> Result<()> {
    if a.len() != b.len() {
        return Err(Error::Dimension { expected: a.len(), found: b.len() });
    }
    Ok(())
}

/// Exact inner product of a constraint row with a generator row.
pub fn scalar_prod(c: &HomVec, g: &HomVec) -> Result<BigInt> {
    check_len(c, g)?;
    Ok(c.dot(g))
}

/// Positive combination of `gp` (strictly satisfying `beta`) and `gm`
/// (violating it) that saturates `beta`.
pub fn combine(beta: &HomVec, gp: &HomVec, gm: &HomVec) -> Result<HomVec> {
    check_len(beta, gp)?;
    check_len(beta, gm)?;
    let sp_p = beta.dot(gp);
    let sp_m = beta.dot(gm);
    combine_with(&sp_p, gp, &sp_m, gm)
}

/// As [`combine`], reusing scalar products the caller already has.
pub fn combine_with(sp_p: &BigInt, gp: &HomVec, sp_m: &BigInt, gm: &HomVec) -> Result<HomVec> {
    if !sp_p.is_positive() || !sp_m.is_negative() {
        return Err(Error::Combine);
    }
    let v = HomVec::lin_comb(&-sp_m, gp, sp_p, gm);
    v.normalize(false).map_err(|_| Error::Combine)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(c: &[i64]) -> HomVec {
        HomVec::from_i64(c)
    }

    #[test]
    fn normalize_divides_by_gcd() {
        assert_eq!(v(&[2, 4, 6]).normalize(false).unwrap(), v(&[1, 2, 3]));
        assert_eq!(v(&[1, 2, 3]).normalize(false).unwrap(), v(&[1, 2, 3]));
        assert_eq!(v(&[0, -2, 4]).normalize(true).unwrap(), v(&[0, 1, -2]));
        assert_eq!(v(&[0, -2, 4]).normalize(false).unwrap(), v(&[0, -1, 2]));
        assert_eq!(v(&[0, 0]).normalize(false), Err(Error::InvalidVector));
    }

    #[test]
    fn scalar_products() {
        // x >= 1 against the point 1
        assert_eq!(scalar_prod(&v(&[-1, 1]), &v(&[1, 1])).unwrap(), BigInt::from(0));
        // x < 3 against the point 1
        assert_eq!(scalar_prod(&v(&[3, -1]), &v(&[1, 1])).unwrap(), BigInt::from(2));
        // x >= 1 against the ray -x
        assert_eq!(scalar_prod(&v(&[-1, 1]), &v(&[0, -1])).unwrap(), BigInt::from(-1));
        assert!(matches!(scalar_prod(&v(&[1, 1]), &v(&[1, 1, 1])), Err(Error::Dimension { .. })));
    }

    #[test]
    fn combine_saturates() {
        // y <= 1, closure points (0,0) and (0,2)
        let beta = v(&[1, 0, -1]);
        let out = combine(&beta, &v(&[1, 0, 0]), &v(&[1, 0, 2])).unwrap();
        assert_eq!(out, v(&[1, 0, 1]));
        // x >= 0, rays (1,0) and (-1,-1)
        let beta = v(&[0, 1, 0]);
        let out = combine(&beta, &v(&[0, 1, 0]), &v(&[0, -1, -1])).unwrap();
        assert_eq!(out, v(&[0, 0, -1]));
        assert_eq!(combine(&beta, &v(&[0, 1, 0]), &v(&[0, 2, 1])), Err(Error::Combine));
    }

    #[test]
    fn large_coefficients_stay_exact() {
        let big = BigInt::from(1u64 << 62) * BigInt::from(1u64 << 62);
        let a = HomVec::new(vec![big.clone(), big.clone() * 3]);
        assert_eq!(a.normalize(false).unwrap(), v(&[1, 3]));
    }
}
