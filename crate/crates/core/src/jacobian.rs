//! Divisor classes in Mumford form with Cantor composition and reduction,
//! and the Riemann–Roch dimension oracle for genus 2.
//!
//! A [`DivClass`] of degree `n` stores the reduced Mumford pair `(u, v)` of
//! the degree-zero class `D - n·∞`. Because the model has a single point at
//! infinity, the canonical class is `2·∞`, i.e. `(1, 0)` with degree 2.

use std::fmt;

use crate::curve::{Curve, Divisor, Point};
use crate::error::Result;
use crate::poly::Poly;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DivClass {
    u: Poly,
    v: Poly,
    degree: i64,
}

impl DivClass {
    #[inline]
    pub fn u(&self) -> &Poly {
        &self.u
    }
    #[inline]
    pub fn v(&self) -> &Poly {
        &self.v
    }
    #[inline]
    pub fn degree(&self) -> i64 {
        self.degree
    }

    /// Number of affine points in the reduced representative.
    #[inline]
    pub fn weight(&self) -> usize {
        self.u.degree().unwrap_or(0)
    }

    /// True when the degree-zero part is trivial.
    pub fn is_principal_part(&self) -> bool {
        self.u.is_one()
    }

    /// Same Jacobian element with a different degree tag.
    pub fn with_degree(&self, degree: i64) -> DivClass {
        DivClass { degree, ..self.clone() }
    }
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[u={}, v={}, deg={}]", self.u, self.v, self.degree)
    }
}

/// Result of composing two semi-reduced pairs: the sum of their divisors
/// equals `E(u, v) + div_aff(d)`.
#[derive(Clone, Debug)]
pub struct Composition {
    pub d: Poly,
    pub u: Poly,
    pub v: Poly,
}

impl Curve {
    /// Cantor composition of semi-reduced pairs, without reduction.
    pub fn compose(&self, u1: &Poly, v1: &Poly, u2: &Poly, v2: &Poly) -> Composition {
        let fld = self.field();
        let (d1, e1, e2) = u1.xgcd(u2);
        let vsum = v1 + v2;
        let (d, c1, c2) = d1.xgcd(&vsum);
        let s1 = &c1 * &e1;
        let s2 = &c1 * &e2;
        let s3 = c2;
        let u = (u1 * u2).div_exact(&(&d * &d));
        let num = &(&(&(&s1 * u1) * v2) + &(&(&s2 * u2) * v1)) + &(&s3 * &(&(v1 * v2) + self.f()));
        let v = if u.is_one() {
            Poly::zero(fld)
        } else {
            num.div_exact(&d).rem(&u)
        };
        Composition { d, u, v }
    }

    /// Reduces a semi-reduced pair until `deg u <= 2`.
    pub fn reduce(&self, mut u: Poly, mut v: Poly) -> (Poly, Poly) {
        while u.deg() > 2 {
            let u2 = (self.f() - &(&v * &v)).div_exact(&u).monic();
            let v2 = (-&v).rem(&u2);
            u = u2;
            v = v2;
        }
        let v = if u.is_one() { Poly::zero(self.field()) } else { v.rem(&u) };
        (u, v)
    }

    /// Identity of the Jacobian tagged with the given degree (the class `n·∞`).
    pub fn identity_class(&self, degree: i64) -> DivClass {
        DivClass { u: Poly::one(self.field()), v: Poly::zero(self.field()), degree }
    }

    /// `K = 2·∞`.
    pub fn canonical_class(&self) -> DivClass {
        self.identity_class(2)
    }

    /// Class of a single rational point (degree 1).
    pub fn point_class(&self, pt: &Point) -> DivClass {
        let fld = self.field();
        match *pt {
            Point::Infinity => self.identity_class(1),
            Point::Affine { x, y } => DivClass {
                u: Poly::linear(fld, x),
                v: Poly::constant(fld, y),
                degree: 1,
            },
        }
    }

    /// Builds a class from a Mumford pair, reducing it if needed.
    pub fn class_from_mumford(&self, u: Poly, v: Poly, degree: i64) -> DivClass {
        let (u, v) = self.reduce(u.monic(), v);
        DivClass { u, v, degree }
    }

    pub fn add_classes(&self, a: &DivClass, b: &DivClass) -> DivClass {
        let c = self.compose(&a.u, &a.v, &b.u, &b.v);
        let (u, v) = self.reduce(c.u, c.v);
        DivClass { u, v, degree: a.degree + b.degree }
    }

    pub fn negate(&self, a: &DivClass) -> DivClass {
        let v = if a.u.is_one() { a.v.clone() } else { (-&a.v).rem(&a.u) };
        DivClass { u: a.u.clone(), v, degree: -a.degree }
    }

    pub fn sub_classes(&self, a: &DivClass, b: &DivClass) -> DivClass {
        self.add_classes(a, &self.negate(b))
    }

    /// `n·a` by double-and-add; `n` may be negative.
    pub fn scale_class(&self, a: &DivClass, n: i64) -> DivClass {
        let base = if n < 0 { self.negate(a) } else { a.clone() };
        let mut k = n.unsigned_abs();
        let mut acc = self.identity_class(0);
        let mut pow = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_classes(&acc, &pow);
            }
            k >>= 1;
            if k > 0 {
                pow = self.add_classes(&pow, &pow);
            }
        }
        acc
    }

    /// Class of `d - deg(d)·∞`, tagged with `deg(d)`. Affine multiplicities
    /// are capped at two.
    pub fn class_of(&self, d: &Divisor) -> Result<DivClass> {
        d.check_multiplicities()?;
        let mut acc = self.identity_class(0);
        for (pt, &m) in d.terms() {
            let pc = self.point_class(pt);
            acc = self.add_classes(&acc, &self.scale_class(&pc, m));
        }
        Ok(acc)
    }

    /// Riemann–Roch case analysis for genus 2.
    pub fn h0(&self, cl: &DivClass) -> usize {
        match cl.degree {
            n if n < 0 => 0,
            0 => usize::from(cl.u.is_one()),
            1 => usize::from(cl.weight() <= 1),
            2 => {
                if cl.u.is_one() {
                    2
                } else {
                    1
                }
            }
            n => (n - 1) as usize,
        }
    }

    pub fn is_effective(&self, cl: &DivClass) -> bool {
        match cl.degree {
            n if n < 0 => false,
            0 => cl.u.is_one(),
            1 => cl.weight() <= 1,
            _ => true,
        }
    }

    /// For a degree-1 effective class, the unique point it contains.
    pub fn degree_one_point(&self, cl: &DivClass) -> Option<Point> {
        if cl.degree != 1 {
            return None;
        }
        match cl.weight() {
            0 => Some(Point::Infinity),
            1 => {
                let fld = self.field();
                let x = fld.neg(cl.u.coeff(0));
                Some(Point::Affine { x, y: cl.v.coeff(0) })
            }
            _ => None,
        }
    }

    /// Checks the Mumford invariants `u` monic, `deg v < deg u`,
    /// `v^2 ≡ f (mod u)`, and `deg u <= 2`.
    pub fn is_reduced_mumford(&self, cl: &DivClass) -> bool {
        cl.u.is_monic()
            && cl.u.deg() <= 2
            && cl.v.deg() < cl.u.deg()
            && (&(&cl.v * &cl.v) - self.f()).rem(&cl.u).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c7() -> Curve {
        Curve::default_for(7).unwrap()
    }

    fn random_class(c: &Curve, rng: &mut ChaCha8Rng) -> DivClass {
        let a = c.random_affine_point(rng);
        let b = c.random_affine_point(rng);
        let d = Divisor::from_terms([(a, 1), (b, 1), (Point::Infinity, -2)]);
        c.class_of(&d).unwrap()
    }

    #[test]
    fn class_of_examples() {
        let c = c7();
        let w0 = Point::Affine { x: 0, y: 0 };
        let w1 = Point::Affine { x: 1, y: 0 };
        let k = c.class_of(&Divisor::from_terms([(w0, 2)])).unwrap();
        assert_eq!(k, c.canonical_class());
        assert_eq!(c.class_of(&Divisor::infinity(2)).unwrap(), c.canonical_class());

        let zero = c.class_of(&Divisor::zero()).unwrap();
        assert_eq!(zero, c.identity_class(0));

        let cl = c.class_of(&Divisor::from_terms([(w0, 1), (w1, 1)])).unwrap();
        // hand reduction: u = x(x - 1), v = 0
        assert_eq!(cl.u(), &Poly::from_i64(c.field(), &[0, -1, 1]));
        assert!(cl.v().is_zero());
        assert_eq!(cl.degree(), 2);
        assert_ne!(cl, c.canonical_class());
        assert_eq!(c.h0(&cl), 1);
    }

    #[test]
    fn multiplicity_cap() {
        let c = c7();
        let p = Point::Affine { x: 2, y: 3 };
        assert!(c.class_of(&Divisor::from_terms([(p, 3)])).is_err());
        assert!(c.class_of(&Divisor::from_terms([(Point::Infinity, 9)])).is_ok());
    }

    #[test]
    fn h0_examples() {
        let c = Curve::default_for(10007).unwrap();
        assert_eq!(c.h0(&c.canonical_class()), 2);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let pts = c.random_distinct_points(3, &mut rng).unwrap();
            let d = Divisor::from_terms(pts.into_iter().map(|p| (p, 1)));
            assert_eq!(c.h0(&c.class_of(&d).unwrap()), 2);
        }
    }

    #[test]
    fn weierstrass_classes_are_two_torsion() {
        let c = Curve::default_for(10007).unwrap();
        for w in c.weierstrass_points() {
            let cl = c.class_of(&Divisor::from_terms([(w, 1), (Point::Infinity, -1)])).unwrap();
            assert!(!cl.is_principal_part());
            assert_eq!(c.add_classes(&cl, &cl), c.identity_class(0));
        }
    }

    #[test]
    fn fibers_of_the_involution_are_canonical() {
        let c = Curve::default_for(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let p = c.random_affine_point(&mut rng);
            let d = Divisor::from_terms([(p, 1)]).plus(&Divisor::point(c.involution(&p)));
            assert_eq!(c.class_of(&d).unwrap(), c.canonical_class());
        }
    }

    #[test]
    fn degree_two_classes_effective_with_dichotomy() {
        let c = Curve::default_for(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..200 {
            let cl = random_class(&c, &mut rng).with_degree(2);
            assert!(c.is_effective(&cl));
            assert_eq!(c.h0(&cl) == 2, cl == c.canonical_class());
            // an effective representative: the Mumford support plus (2 - weight)·∞
            assert!(cl.weight() <= 2);
        }
    }

    #[test]
    fn effectivity_small_degrees() {
        let c = c7();
        assert!(c.is_effective(&c.identity_class(0)));
        let p = Point::Affine { x: 2, y: 3 };
        assert!(c.is_effective(&c.point_class(&p)));
        assert_eq!(c.degree_one_point(&c.point_class(&p)), Some(p));
        assert!(!c.is_effective(&c.identity_class(-1)));
    }

    #[test]
    fn riemann_roch_symmetry() {
        let c = Curve::default_for(10007).unwrap();
        let k = c.canonical_class();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in -3..9i64 {
            for _ in 0..20 {
                let cl = random_class(&c, &mut rng).with_degree(n);
                let dual = c.sub_classes(&k, &cl);
                assert_eq!(c.h0(&cl) as i64 - c.h0(&dual) as i64, n - 1, "class {cl}");
            }
        }
    }

    #[test]
    fn class_of_is_a_homomorphism() {
        let c = Curve::default_for(10007).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..100 {
            let pts = c.random_distinct_points(4, &mut rng).unwrap();
            let d1 = Divisor::from_terms([(pts[0], 1), (pts[1], 2), (Point::Infinity, -1)]);
            let d2 = Divisor::from_terms([(pts[2], -1), (pts[3], 1), (Point::Infinity, 3)]);
            let lhs = c.class_of(&d1.plus(&d2)).unwrap();
            let rhs = c.add_classes(&c.class_of(&d1).unwrap(), &c.class_of(&d2).unwrap());
            assert_eq!(lhs, rhs);
            assert!(c.is_reduced_mumford(&lhs));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn group_laws(seed in any::<u64>()) {
            let c = Curve::default_for(10007).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_class(&c, &mut rng);
            let b = random_class(&c, &mut rng);
            let d = random_class(&c, &mut rng);
            let id = c.identity_class(0);
            prop_assert_eq!(c.add_classes(&a, &id), a.clone());
            prop_assert_eq!(c.add_classes(&a, &b), c.add_classes(&b, &a));
            prop_assert_eq!(
                c.add_classes(&c.add_classes(&a, &b), &d),
                c.add_classes(&a, &c.add_classes(&b, &d))
            );
            prop_assert_eq!(c.add_classes(&a, &c.negate(&a)), id);
            prop_assert!(c.is_reduced_mumford(&c.add_classes(&a, &b)));
        }
    }
}
