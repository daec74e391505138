//! Effective divisors presented by ideals rather than by points.
//!
//! An [`AffIdeal`] `(d, u, v)` stands for the affine effective divisor
//! `div_aff(d(x)) + E(u, v)`, where `E(u, v)` is the divisor cut out by
//! `<u(x), y - v(x)>`. Sums are formed by Cantor composition without
//! reduction, so support with conjugate (non-rational) points is handled
//! without ever enumerating it.

use std::fmt;

use crate::curve::{Curve, Divisor, Point};
use crate::error::{Error, Result};
use crate::jacobian::DivClass;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffIdeal {
    pub d: Poly,
    pub u: Poly,
    pub v: Poly,
}

impl AffIdeal {
    pub fn trivial(curve: &Curve) -> Self {
        let f = curve.field();
        Self { d: Poly::one(f), u: Poly::one(f), v: Poly::zero(f) }
    }

    pub fn from_point(curve: &Curve, x: u64, y: u64) -> Self {
        let f = curve.field();
        Self { d: Poly::one(f), u: Poly::linear(f, x), v: Poly::constant(f, y) }
    }

    /// `E(u, v)` for a Mumford pair; `u` must be monic with `v^2 ≡ f mod u`.
    pub fn from_mumford(curve: &Curve, u: &Poly, v: &Poly) -> Self {
        Self { d: Poly::one(curve.field()), u: u.clone(), v: v.clone() }
    }

    pub fn degree(&self) -> usize {
        2 * self.d.degree().unwrap_or(0) + self.u.degree().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.d.is_one() && self.u.is_one()
    }

    pub fn plus(&self, curve: &Curve, other: &AffIdeal) -> AffIdeal {
        let c = curve.compose(&self.u, &self.v, &other.u, &other.v);
        AffIdeal { d: &(&self.d * &other.d) * &c.d, u: c.u, v: c.v }
    }

    /// Image under the hyperelliptic involution.
    pub fn conjugate(&self) -> AffIdeal {
        let v = if self.u.is_one() { self.v.clone() } else { (-&self.v).rem(&self.u) };
        AffIdeal { d: self.d.clone(), u: self.u.clone(), v }
    }

    /// A polynomial whose divisor of zeros dominates this divisor.
    pub fn clearing_poly(&self) -> Poly {
        &self.d * &self.u
    }

    /// Whether `A(x) + B(x)·y` vanishes on this divisor.
    pub fn contains_function(&self, a: &Poly, b: &Poly) -> bool {
        if !self.d.divides(a) || !self.d.divides(b) {
            return false;
        }
        let a = a.div_exact(&self.d);
        let b = b.div_exact(&self.d);
        (&a + &(&b * &self.v)).rem(&self.u).is_zero()
    }
}

/// An effective divisor `aff + inf·∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffDivisor {
    pub aff: AffIdeal,
    pub inf: i64,
}

impl EffDivisor {
    pub fn zero(curve: &Curve) -> Self {
        Self { aff: AffIdeal::trivial(curve), inf: 0 }
    }

    pub fn infinity(curve: &Curve, n: i64) -> Self {
        Self { aff: AffIdeal::trivial(curve), inf: n }
    }

    /// `K = 2·∞`
    pub fn canonical(curve: &Curve) -> Self {
        Self::infinity(curve, 2)
    }

    /// Converts a point divisor; it must be effective with affine
    /// multiplicities at most two.
    pub fn from_divisor(curve: &Curve, d: &Divisor) -> Result<Self> {
        d.check_multiplicities()?;
        if !d.is_effective() {
            return Err(Error::NotEffective);
        }
        let mut out = Self::zero(curve);
        for (pt, &m) in d.terms() {
            match *pt {
                Point::Infinity => out.inf += m,
                Point::Affine { x, y } => {
                    if !curve.contains(pt) {
                        return Err(Error::NotOnCurve(x, y));
                    }
                    let single = AffIdeal::from_point(curve, x, y);
                    for _ in 0..m {
                        out.aff = out.aff.plus(curve, &single);
                    }
                }
            }
        }
        Ok(out)
    }

    /// The canonical effective representative `E(u, v) + (deg - wt)·∞` of an
    /// effective class.
    pub fn from_class(curve: &Curve, cl: &DivClass) -> Result<Self> {
        if !curve.is_effective(cl) {
            return Err(Error::NotEffective);
        }
        let aff = AffIdeal::from_mumford(curve, cl.u(), cl.v());
        let inf = cl.degree() - cl.weight() as i64;
        debug_assert!(inf >= 0);
        Ok(Self { aff, inf })
    }

    pub fn degree(&self) -> i64 {
        self.aff.degree() as i64 + self.inf
    }

    pub fn plus(&self, curve: &Curve, other: &EffDivisor) -> EffDivisor {
        EffDivisor { aff: self.aff.plus(curve, &other.aff), inf: self.inf + other.inf }
    }

    pub fn class(&self, curve: &Curve) -> DivClass {
        curve.class_from_mumford(self.aff.u.clone(), self.aff.v.clone(), self.degree())
    }

    /// Whether a rational point lies in the support (`∞` included).
    pub fn supports(&self, pt: &Point) -> bool {
        match *pt {
            Point::Infinity => self.inf > 0,
            Point::Affine { x, .. } => self.aff.clearing_poly().eval(x) == 0,
        }
    }
}

impl fmt::Display for EffDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "div_aff({}) + E({}, {}) + {}*inf",
            self.aff.d, self.aff.u, self.aff.v, self.inf
        )
    }
}
