//! Genus-2 curves `y^2 = f(x)` in the odd model (`deg f = 5`), their
//! rational points, and point-supported divisors.

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

/// The default curve `y^2 = x^5 - x`.
pub const DEFAULT_F: [i64; 6] = [0, -1, 0, 0, 0, 1];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: Field,
    f: Poly,
}

impl Curve {
    /// `coeffs` are `c_0..c_5` (low degree first); `c_5` must be 1 mod p.
    pub fn new(p: u64, coeffs: &[i64]) -> Result<Self> {
        let field = Field::new(p)?;
        if coeffs.len() != 6 {
            return Err(Error::BadDegree);
        }
        let f = Poly::from_i64(field, coeffs);
        if f.degree() != Some(5) || !f.is_monic() {
            return Err(Error::BadDegree);
        }
        if !f.gcd(&f.derivative()).is_one() {
            return Err(Error::NonSquarefree);
        }
        Ok(Self { field, f })
    }

    pub fn default_for(p: u64) -> Result<Self> {
        Self::new(p, &DEFAULT_F)
    }

    /// A seeded random monic squarefree quintic.
    pub fn random<R: Rng>(p: u64, rng: &mut R) -> Result<Self> {
        let field = Field::new(p)?;
        loop {
            let mut c: Vec<i64> = (0..5).map(|_| rng.gen_range(0..p) as i64).collect();
            c.push(1);
            match Self::new(field.modulus(), &c) {
                Ok(curve) => return Ok(curve),
                Err(Error::NonSquarefree) => continue,
                Err(e) => return Err(e),
            }
        }
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.field.modulus()
    }

    #[inline]
    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// Coefficients `c_0..c_5` as stored (reduced mod p).
    pub fn coeffs(&self) -> Vec<u64> {
        (0..6).map(|i| self.f.coeff(i)).collect()
    }

    pub fn contains(&self, pt: &Point) -> bool {
        match *pt {
            Point::Infinity => true,
            Point::Affine { x, y } => {
                let fl = self.field;
                x < fl.modulus() && y < fl.modulus() && fl.mul(y, y) == self.f.eval(x)
            }
        }
    }

    /// All rational points, affine ones sorted by `(x, y)`, then `∞`.
    pub fn points(&self) -> Vec<Point> {
        let fl = self.field;
        let mut out = Vec::new();
        for x in 0..fl.modulus() {
            let fx = self.f.eval(x);
            if let Some(y) = fl.sqrt(fx) {
                if y == 0 {
                    out.push(Point::Affine { x, y: 0 });
                } else {
                    let (a, b) = (y.min(fl.neg(y)), y.max(fl.neg(y)));
                    out.push(Point::Affine { x, y: a });
                    out.push(Point::Affine { x, y: b });
                }
            }
        }
        out.push(Point::Infinity);
        out
    }

    /// Affine points with `y = 0`.
    pub fn weierstrass_points(&self) -> Vec<Point> {
        self.f
            .roots_bruteforce()
            .into_iter()
            .map(|x| Point::Affine { x, y: 0 })
            .collect()
    }

    /// A uniformly chosen `x` with `f(x)` a square, and a random sign of `y`.
    pub fn random_affine_point<R: Rng>(&self, rng: &mut R) -> Point {
        let fl = self.field;
        loop {
            let x = rng.gen_range(0..fl.modulus());
            if let Some(y) = fl.sqrt(self.f.eval(x)) {
                let y = if rng.gen::<bool>() { y } else { fl.neg(y) };
                return Point::Affine { x, y };
            }
        }
    }

    /// `n` distinct random affine points.
    pub fn random_distinct_points<R: Rng>(&self, n: usize, rng: &mut R) -> Result<Vec<Point>> {
        // tiny fields may not have n affine points at all
        if self.p() < 1000 && self.points().len() - 1 < n {
            return Err(Error::InsufficientPoints);
        }
        let mut out: Vec<Point> = Vec::with_capacity(n);
        while out.len() < n {
            let pt = self.random_affine_point(rng);
            if !out.contains(&pt) {
                out.push(pt);
            }
        }
        Ok(out)
    }

    pub fn involution(&self, pt: &Point) -> Point {
        match *pt {
            Point::Infinity => Point::Infinity,
            Point::Affine { x, y } => Point::Affine { x, y: self.field.neg(y) },
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Point {
    Affine { x: u64, y: u64 },
    Infinity,
}

impl Point {
    pub fn is_infinity(&self) -> bool {
        matches!(self, Point::Infinity)
    }

    pub fn is_weierstrass(&self) -> bool {
        matches!(self, Point::Affine { y: 0, .. })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::Affine { x, y } => write!(f, "({x},{y})"),
            Point::Infinity => write!(f, "inf"),
        }
    }
}

/// A finite formal sum of rational points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Divisor {
    terms: BTreeMap<Point, i64>,
}

impl Divisor {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn point(pt: Point) -> Self {
        Self::from_terms([(pt, 1)])
    }

    pub fn infinity(n: i64) -> Self {
        Self::from_terms([(Point::Infinity, n)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Point, i64)>>(terms: I) -> Self {
        let mut d = Self::zero();
        for (pt, m) in terms {
            d.add_point(pt, m);
        }
        d
    }

    pub fn add_point(&mut self, pt: Point, m: i64) {
        let e = self.terms.entry(pt).or_insert(0);
        *e += m;
        if *e == 0 {
            self.terms.remove(&pt);
        }
    }

    pub fn plus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (&pt, &m) in &other.terms {
            d.add_point(pt, m);
        }
        d
    }

    pub fn minus(&self, other: &Divisor) -> Divisor {
        let mut d = self.clone();
        for (&pt, &m) in &other.terms {
            d.add_point(pt, -m);
        }
        d
    }

    pub fn degree(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn multiplicity(&self, pt: &Point) -> i64 {
        self.terms.get(pt).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Point, &i64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> {
        self.terms.keys()
    }

    pub fn is_effective(&self) -> bool {
        self.terms.values().all(|&m| m > 0)
    }

    /// Rejects affine multiplicities above two in absolute value.
    pub fn check_multiplicities(&self) -> Result<()> {
        for (pt, &m) in &self.terms {
            if !pt.is_infinity() && m.abs() > 2 {
                return Err(Error::UnsupportedMultiplicity(m));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(pt, m)| if *m == 1 { pt.to_string() } else { format!("{m}*{pt}") })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
