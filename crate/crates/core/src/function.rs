//! Elements of the function field `F_p(x)[y]/(y^2 - f)`.

use std::fmt;

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// `(a(x) + b(x)·y) / c(x)` with `c` monic and `gcd(a, b, c) = 1`. This form
/// is unique, so structural equality is equality of functions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalForm {
    a: Poly,
    b: Poly,
    c: Poly,
}

impl RationalForm {
    pub fn new(a: Poly, b: Poly, c: Poly) -> Self {
        assert!(!c.is_zero(), "zero denominator");
        let fld = c.field();
        if a.is_zero() && b.is_zero() {
            return Self::zero(fld);
        }
        let g = a.gcd(&b).gcd(&c);
        let (a, b, c) = if g.is_one() {
            (a, b, c)
        } else {
            (a.div_exact(&g), b.div_exact(&g), c.div_exact(&g))
        };
        let inv = fld.inv(c.leading());
        Self { a: a.scale(inv), b: b.scale(inv), c: c.scale(inv) }
    }

    pub fn zero(fld: Field) -> Self {
        Self { a: Poly::zero(fld), b: Poly::zero(fld), c: Poly::one(fld) }
    }

    pub fn one(fld: Field) -> Self {
        Self::constant(fld, 1)
    }

    pub fn constant(fld: Field, v: u64) -> Self {
        Self::polynomial(Poly::constant(fld, v), Poly::zero(fld))
    }

    /// `a(x) + b(x)·y`
    pub fn polynomial(a: Poly, b: Poly) -> Self {
        let fld = a.field();
        Self::new(a, b, Poly::one(fld))
    }

    pub fn x(fld: Field) -> Self {
        Self::polynomial(Poly::monomial(fld, 1), Poly::zero(fld))
    }

    pub fn y(fld: Field) -> Self {
        Self::polynomial(Poly::zero(fld), Poly::one(fld))
    }

    #[inline]
    pub fn a(&self) -> &Poly {
        &self.a
    }
    #[inline]
    pub fn b(&self) -> &Poly {
        &self.b
    }
    #[inline]
    pub fn c(&self) -> &Poly {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    /// True when the denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.c.is_one()
    }

    pub fn add(&self, o: &Self) -> Self {
        let a = &(&self.a * &o.c) + &(&o.a * &self.c);
        let b = &(&self.b * &o.c) + &(&o.b * &self.c);
        Self::new(a, b, &self.c * &o.c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        Self { a: -&self.a, b: -&self.b, c: self.c.clone() }
    }

    pub fn scale(&self, k: u64) -> Self {
        Self::new(self.a.scale(k), self.b.scale(k), self.c.clone())
    }

    pub fn mul(&self, curve: &Curve, o: &Self) -> Self {
        let a = &(&self.a * &o.a) + &(&(&self.b * &o.b) * curve.f());
        let b = &(&self.a * &o.b) + &(&self.b * &o.a);
        Self::new(a, b, &self.c * &o.c)
    }

    /// Multiplies by a polynomial in `x`.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        Self::new(&self.a * p, &self.b * p, self.c.clone())
    }

    /// Norm to `F_p(x)` numerator: `a^2 - b^2 f`.
    fn norm_numerator(&self, curve: &Curve) -> Poly {
        &(&self.a * &self.a) - &(&(&self.b * &self.b) * curve.f())
    }

    pub fn inverse(&self, curve: &Curve) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_numerator(curve);
        Some(Self::new(&self.c * &self.a, -&(&self.c * &self.b), n))
    }

    pub fn div(&self, curve: &Curve, o: &Self) -> Option<Self> {
        o.inverse(curve).map(|inv| self.mul(curve, &inv))
    }

    /// Value at an affine point. Where both numerator and denominator vanish
    /// the conjugate `(a - b·y)` is used to cancel the common zero once.
    pub fn evaluate(&self, curve: &Curve, pt: &Point) -> Result<u64> {
        let fld = curve.field();
        let Point::Affine { x, y } = *pt else {
            return Err(Error::PoleAtPoint);
        };
        let num = fld.add(self.a.eval(x), fld.mul(self.b.eval(x), y));
        let den = self.c.eval(x);
        if den != 0 {
            return Ok(fld.div(num, den));
        }
        if num != 0 {
            return Err(Error::PoleAtPoint);
        }
        // g = (a^2 - b^2 f) / (c (a - b y))
        let conj = fld.sub(self.a.eval(x), fld.mul(self.b.eval(x), y));
        if conj == 0 {
            return Err(Error::PoleAtPoint);
        }
        let n = self.norm_numerator(curve);
        let g = n.gcd(&self.c);
        let (n, c) = (n.div_exact(&g), self.c.div_exact(&g));
        let cx = c.eval(x);
        if cx == 0 {
            return Err(Error::PoleAtPoint);
        }
        Ok(fld.div(n.eval(x), fld.mul(cx, conj)))
    }
}

impl fmt::Debug for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_one() {
            write!(f, "({}) + ({})*y", self.a, self.b)
        } else {
            write!(f, "(({}) + ({})*y) / ({})", self.a, self.b, self.c)
        }
    }
}
