//! Integer intersection numbers on rational normal scrolls of degree `f`,
//! with `H^k = f`, `H^{k-1}·F = 1` and `F^2 = 0`.

use crate::error::{Error, Result};
use crate::scroll::ScrollType;

/// `a·H + b·F` on a scroll of degree `f` (also used as a divisor class on
/// a threefold scroll).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SurfClass {
    pub a: i64,
    pub b: i64,
    pub f: i64,
}

impl SurfClass {
    pub fn h(f: i64) -> Self {
        Self { a: 1, b: 0, f }
    }

    pub fn fiber(f: i64) -> Self {
        Self { a: 0, b: 1, f }
    }

    /// The minimal section `H - e_1·F`.
    pub fn minimal_section(t: &ScrollType) -> Self {
        Self { a: 1, b: -t.es()[0], f: t.degree() }
    }
}

/// `a·H^2 + b·H·F` on a threefold scroll of degree `f`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreefoldCurveClass {
    pub a: i64,
    pub b: i64,
    pub f: i64,
}

pub fn surf_intersect(c1: &SurfClass, c2: &SurfClass) -> Result<i64> {
    if c1.f != c2.f {
        return Err(Error::MismatchedScroll(c1.f, c2.f));
    }
    Ok(c1.a * c2.a * c1.f + c1.a * c2.b + c2.a * c1.b)
}

pub fn threefold_intersect(cc: &ThreefoldCurveClass, dv: &SurfClass) -> Result<i64> {
    if cc.f != dv.f {
        return Err(Error::MismatchedScroll(cc.f, dv.f));
    }
    Ok(cc.a * dv.a * cc.f + cc.a * dv.b + cc.b * dv.a)
}

/// `[C] = 2H - (d-6)F` on the `g^1_2`-scroll (degree `d - 3`).
pub fn curve_class_on_s(d: i64) -> Result<SurfClass> {
    if d < 6 {
        return Err(Error::DegreeTooSmall(d.max(0) as usize));
    }
    Ok(SurfClass { a: 2, b: -(d - 6), f: d - 3 })
}

/// `[C] = 3H^2 - 2(d-6)H·F` on a `g^1_3`-scroll (degree `d - 4`).
pub fn curve_class_on_v(d: i64) -> Result<ThreefoldCurveClass> {
    if d < 6 {
        return Err(Error::DegreeTooSmall(d.max(0) as usize));
    }
    Ok(ThreefoldCurveClass { a: 3, b: -2 * (d - 6), f: d - 4 })
}

/// `e_1 - e_2 <= 3` for surfaces and for threefolds singular along a point
/// of the curve; `2e_1 - e_2 - e_3 <= 4` for the remaining threefolds.
pub fn check_type_bounds(t: &ScrollType, singular_through_c: bool) -> bool {
    let e = t.es();
    match e.len() {
        2 => e[0] - e[1] <= 3,
        3 if singular_through_c => e[0] - e[1] <= 3,
        3 => 2 * e[0] - e[1] - e[2] <= 4,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_products() {
        let f = 5;
        assert_eq!(surf_intersect(&SurfClass::h(f), &SurfClass::h(f)), Ok(f));
        assert_eq!(surf_intersect(&SurfClass::fiber(f), &SurfClass::fiber(f)), Ok(0));
        assert_eq!(surf_intersect(&SurfClass::h(f), &SurfClass::fiber(f)), Ok(1));
        let c = curve_class_on_s(6).unwrap();
        assert_eq!((c.a, c.b), (2, 0));
        assert_eq!(surf_intersect(&c, &SurfClass::fiber(3)), Ok(2));
        let c9 = curve_class_on_s(9).unwrap();
        assert_eq!((c9.a, c9.b), (2, -3));
        assert_eq!(surf_intersect(&c9, &SurfClass::h(6)), Ok(9));
        assert_eq!(
            surf_intersect(&SurfClass::h(3), &SurfClass::h(4)),
            Err(Error::MismatchedScroll(3, 4))
        );
        assert_eq!(curve_class_on_s(5), Err(Error::DegreeTooSmall(5)));
    }

    #[test]
    fn curve_classes_have_expected_degrees() {
        for d in 6..=20 {
            let cs = curve_class_on_s(d).unwrap();
            assert_eq!(surf_intersect(&cs, &SurfClass::fiber(d - 3)), Ok(2));
            assert_eq!(surf_intersect(&cs, &SurfClass::h(d - 3)), Ok(d));
            let cv = curve_class_on_v(d).unwrap();
            assert_eq!(threefold_intersect(&cv, &SurfClass::fiber(d - 4)), Ok(3));
            assert_eq!(threefold_intersect(&cv, &SurfClass::h(d - 4)), Ok(d));
        }
    }

    #[test]
    fn bound_examples() {
        assert!(check_type_bounds(&ScrollType::new(vec![3, 0]), false));
        assert!(!check_type_bounds(&ScrollType::new(vec![4, 0]), false));
        assert!(check_type_bounds(&ScrollType::new(vec![3, 1, 1]), false));
        assert!(!check_type_bounds(&ScrollType::new(vec![4, 1, 1]), false));
        assert!(check_type_bounds(&ScrollType::new(vec![3, 0, 0]), true));
        assert!(!check_type_bounds(&ScrollType::new(vec![4, 0, 0]), true));
    }

    proptest! {
        // [C]·B_0 >= 0 is the same inequality as the stated bound
        #[test]
        fn bounds_are_nonnegativity_on_minimal_section(e1 in 0i64..12, e2 in 0i64..12, e3 in 0i64..12) {
            let mut es = [e1, e2, e3];
            es.sort_unstable_by(|a, b| b.cmp(a));
            let s = ScrollType::new(vec![es[0], es[1]]);
            if s.degree() >= 3 {
                let cs = curve_class_on_s(s.degree() + 3).unwrap();
                let on_b0 = surf_intersect(&cs, &SurfClass::minimal_section(&s)).unwrap();
                prop_assert_eq!(on_b0 >= 0, check_type_bounds(&s, false));
            }
            prop_assume!(es.iter().sum::<i64>() >= 2);
            let v = ScrollType::new(es.to_vec());
            let d = v.degree() + 4;
            let cv = curve_class_on_v(d).unwrap();
            let on_b0 = threefold_intersect(&cv, &SurfClass::minimal_section(&v)).unwrap();
            prop_assert_eq!(on_b0 >= 0, check_type_bounds(&v, false));
        }

        #[test]
        fn surf_intersect_is_symmetric_bilinear(
            a1 in -20i64..20, b1 in -20i64..20, a2 in -20i64..20, b2 in -20i64..20,
            a3 in -20i64..20, b3 in -20i64..20, f in 2i64..30, k in -5i64..5,
        ) {
            let x = SurfClass { a: a1, b: b1, f };
            let y = SurfClass { a: a2, b: b2, f };
            let z = SurfClass { a: a3, b: b3, f };
            prop_assert_eq!(surf_intersect(&x, &y), surf_intersect(&y, &x));
            let ky_z = SurfClass { a: k * a2 + a3, b: k * b2 + b3, f };
            prop_assert_eq!(
                surf_intersect(&x, &ky_z).unwrap(),
                k * surf_intersect(&x, &y).unwrap() + surf_intersect(&x, &z).unwrap()
            );
        }
    }
}
