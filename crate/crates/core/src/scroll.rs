//! Rational normal scrolls swept out by a pencil on an embedded curve.
//!
//! The fiber over a pencil member `D_σ = D + div(σ)` is the linear span of
//! `D_σ` in `P^{d-2}`. It is computed dually: the linear forms vanishing on
//! the span are the sections of `H` vanishing on `D_σ`, which are exactly
//! `σ·L(H - D)`.

use std::collections::HashSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Divisor, Point};
use crate::divisor::EffDivisor;
use crate::error::{Error, Result};
use crate::function::RationalForm;
use crate::jacobian::DivClass;
use crate::linalg::{kernel_basis, Mat, Subspace};
use crate::series::{class_basepoint, riemann_roch_difference, EmbCurve, LinSeries, RrSpace};

/// Extra sample points beyond the number of quadric monomials.
pub const SAMPLE_MARGIN: usize = 10;

/// `(e_1 >= ... >= e_k >= 0)`
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ScrollType(Vec<i64>);

impl ScrollType {
    /// Sorts into nonincreasing order.
    pub fn new(mut es: Vec<i64>) -> Self {
        es.sort_unstable_by(|a, b| b.cmp(a));
        Self(es)
    }

    pub fn es(&self) -> &[i64] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl fmt::Display for ScrollType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A parameter on `P^1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Param {
    Finite(u64),
    Infinity,
}

impl Param {
    pub fn random<R: Rng>(p: u64, rng: &mut R) -> Self {
        let t = rng.gen_range(0..=p);
        if t == p {
            Param::Infinity
        } else {
            Param::Finite(t)
        }
    }
}

/// Type from the `h^0` profile `h(i) = h^0(H - iD)`:
/// `d_i = h(i) - h(i+1)` and `e_r = #{j : d_j >= r} - 1`.
pub fn type_from_profile<F: FnMut(i64) -> usize>(mut h: F, k: usize) -> ScrollType {
    let mut ds = Vec::new();
    let mut i = 0;
    let mut cur = h(0);
    while cur > 0 {
        let next = h(i + 1);
        ds.push(cur - next);
        cur = next;
        i += 1;
    }
    let es = (1..=k).map(|r| ds.iter().filter(|&&d| d >= r).count() as i64 - 1).collect();
    ScrollType::new(es)
}

/// Scroll type of the pencil `|D|` (degree 2 or 3) on the curve embedded
/// by `|H|`, from classes alone. A degree-3 pencil with basepoint `P` gives
/// the cone over the `g^1_2`-scroll of `|H - P|`.
pub fn scroll_type_of_classes(curve: &Curve, h: &DivClass, d: &DivClass) -> ScrollType {
    let k = d.degree() as usize;
    if k == 3 {
        if let Some(p) = class_basepoint(curve, d) {
            let hp = curve.sub_classes(h, &curve.point_class(&p));
            let mut es = scroll_type_of_classes(curve, &hp, &curve.canonical_class()).0;
            es.push(0);
            return ScrollType(es);
        }
    }
    type_from_profile(|i| curve.h0(&curve.sub_classes(h, &curve.scale_class(d, i))), k)
}

pub fn scroll_type(emb: &EmbCurve, d: &LinSeries) -> ScrollType {
    scroll_type_of_classes(emb.curve(), emb.h().cls(), d.cls())
}

/// Whether `V_{|D|}` contains the `g^1_2`-scroll.
pub fn v_contains_s_classes(curve: &Curve, h: &DivClass, d: &DivClass) -> bool {
    if class_basepoint(curve, d).is_some() {
        return true;
    }
    let deg = h.degree();
    if deg == 6 && class_basepoint(curve, &curve.sub_classes(h, d)).is_some() {
        return true;
    }
    if deg == 7 {
        let k2 = curve.scale_class(&curve.canonical_class(), 2);
        return curve.add_classes(d, &k2) == *h;
    }
    false
}

pub fn v_contains_s(emb: &EmbCurve, d: &LinSeries) -> bool {
    v_contains_s_classes(emb.curve(), emb.h().cls(), d.cls())
}

/// The ruling of the scroll of a pencil: fiber spans indexed by `P^1`.
#[derive(Clone, Debug)]
pub struct Ruling<'a> {
    emb: &'a EmbCurve,
    pencil: &'a LinSeries,
    residual: RrSpace,
}

impl<'a> Ruling<'a> {
    pub fn new(emb: &'a EmbCurve, pencil: &'a LinSeries) -> Result<Self> {
        if pencil.dim() != 2 {
            return Err(Error::NotAPencil(pencil.dim()));
        }
        if emb.d() as i64 - pencil.degree() < 3 {
            return Err(Error::PreconditionViolated);
        }
        let residual = riemann_roch_difference(emb.curve(), emb.h().div(), pencil.div());
        Ok(Self { emb, pencil, residual })
    }

    /// Fiber dimension `k = deg D` (projective dimension `k - 1`).
    pub fn k(&self) -> usize {
        self.pencil.degree() as usize
    }

    pub fn emb(&self) -> &EmbCurve {
        self.emb
    }

    pub fn member(&self, lam: Param) -> RationalForm {
        let b = self.pencil.basis();
        match lam {
            Param::Infinity => b[1].clone(),
            Param::Finite(t) => b[0].add(&b[1].scale(t)),
        }
    }

    /// Linear forms vanishing on the fiber over `lam`.
    pub fn forms(&self, lam: Param) -> Result<Subspace> {
        let curve = self.emb.curve();
        let sigma = self.member(lam);
        let hs = self.emb.h().space();
        let rows = self
            .residual
            .basis()
            .iter()
            .map(|t| hs.coords(&sigma.mul(curve, t)))
            .collect::<Result<Vec<_>>>()?;
        let n = self.emb.n_coords();
        let sub = Subspace::from_rows(curve.field(), n, &rows);
        let expected = n - self.k();
        if sub.dim() != expected {
            return Err(Error::DegenerateFiber { expected, got: sub.dim() });
        }
        Ok(sub)
    }

    /// The fiber itself, as a `k`-dimensional subspace of `F_p^{d-1}`.
    pub fn span(&self, lam: Param) -> Result<Subspace> {
        Ok(kernel_basis(self.forms(lam)?.basis()))
    }

    /// Random points of the scroll, `C(k+1, 2)` per fiber. Each fiber uses
    /// its own generator seeded from `rng`.
    pub fn sample<R: Rng>(&self, count: usize, rng: &mut R) -> Result<Vec<Vec<u64>>> {
        let k = self.k();
        let per = k * (k + 1) / 2;
        let p = self.emb.curve().p();
        let fld = self.emb.curve().field();
        let mut out = Vec::with_capacity(count);
        while out.len() < count {
            let mut frng = ChaCha8Rng::seed_from_u64(rng.gen());
            let span = self.span(Param::random(p, &mut frng))?.vectors();
            let mut taken = 0;
            while taken < per && out.len() < count {
                let coeffs: Vec<u64> = (0..k).map(|_| frng.gen_range(0..p)).collect();
                let mut pt = vec![0u64; span[0].len()];
                for (c, v) in coeffs.iter().zip(&span) {
                    for (z, &x) in pt.iter_mut().zip(v) {
                        *z = fld.add(*z, fld.mul(*c, x));
                    }
                }
                if pt.iter().any(|&z| z != 0) {
                    out.push(pt);
                    taken += 1;
                }
            }
        }
        Ok(out)
    }

    /// Type read off from the fibers: `h(i)` is the dimension of the linear
    /// forms containing `i` distinct fibers. Independent of the class-level
    /// `h^0` computation.
    pub fn geometric_type<R: Rng>(&self, rng: &mut R) -> Result<ScrollType> {
        let p = self.emb.curve().p();
        let mut used = HashSet::new();
        let mut acc = Subspace::full(self.emb.curve().field(), self.emb.n_coords());
        let mut profile = vec![acc.dim()];
        while acc.dim() > 0 {
            if used.len() as u64 > p {
                return Err(Error::InsufficientPoints);
            }
            let lam = Param::random(p, rng);
            if !used.insert(lam) {
                continue;
            }
            acc = acc.span_intersect(&self.forms(lam)?)?;
            profile.push(acc.dim());
        }
        Ok(type_from_profile(|i| profile.get(i as usize).copied().unwrap_or(0), self.k()))
    }
}

pub fn fiber_span(emb: &EmbCurve, d: &LinSeries, lam: Param) -> Result<Subspace> {
    Ruling::new(emb, d)?.forms(lam)
}

pub fn scroll_points<R: Rng>(emb: &EmbCurve, d: &LinSeries, count: usize, rng: &mut R) -> Result<Vec<Vec<u64>>> {
    Ruling::new(emb, d)?.sample(count, rng)
}

/// Degree-2 monomials `z_i z_j` (`i <= j`) in `n` variables, in lex order.
pub fn quadric_monomials(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect()
}

/// Degree-2 forms on `P^{n-1}`, as coefficient vectors over
/// [`quadric_monomials`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadSpace {
    n: usize,
    space: Subspace,
}

impl QuadSpace {
    pub fn new(n: usize, space: Subspace) -> Result<Self> {
        let m = n * (n + 1) / 2;
        if space.ambient_dim() != m {
            return Err(Error::DimensionMismatch(space.ambient_dim(), m));
        }
        Ok(Self { n, space })
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    /// Value of each basis quadric at `pt`.
    pub fn eval(&self, pt: &[u64]) -> Vec<u64> {
        let row = monomial_row(&self.space.field(), self.n, pt);
        self.space.basis().mul_vec(&row)
    }

    pub fn vanishes_at(&self, pt: &[u64]) -> bool {
        self.eval(pt).iter().all(|&v| v == 0)
    }
}

fn monomial_row(fld: &crate::field::Field, n: usize, pt: &[u64]) -> Vec<u64> {
    quadric_monomials(n).into_iter().map(|(i, j)| fld.mul(pt[i], pt[j])).collect()
}

/// Kernel of the evaluation matrix of the points on the quadric monomials.
pub fn quadrics_of(fld: crate::field::Field, n: usize, points: &[Vec<u64>]) -> QuadSpace {
    let m = n * (n + 1) / 2;
    let rows: Vec<Vec<u64>> = points.iter().map(|pt| monomial_row(&fld, n, pt)).collect();
    let space = kernel_basis(&Mat::from_rows(fld, m, &rows));
    QuadSpace { n, space }
}

/// Samples `C(n+1,2) + margin` points and takes their quadrics; if the
/// dimension is off, resamples once with twice as many points.
pub fn quadrics_expected<F>(
    fld: crate::field::Field,
    n: usize,
    expected: usize,
    what: &'static str,
    mut sample: F,
) -> Result<QuadSpace>
where
    F: FnMut(usize) -> Result<Vec<Vec<u64>>>,
{
    let base = n * (n + 1) / 2 + SAMPLE_MARGIN;
    let mut got = 0;
    for count in [base, 2 * base] {
        let q = quadrics_of(fld, n, &sample(count)?);
        if q.dim() == expected {
            return Ok(q);
        }
        got = q.dim();
    }
    Err(Error::UnexpectedRank { what, expected, got })
}

/// `h^0(I_C(2)) = (d^2 - 5d + 2)/2`
pub fn expected_curve_quadrics(d: usize) -> usize {
    (d * d + 2 - 5 * d) / 2
}

/// `C(c+1, 2)` for a scroll of codimension `c = d - 2 - k`.
pub fn expected_scroll_quadrics(d: usize, k: usize) -> usize {
    let c = d - 2 - k;
    c * (c + 1) / 2
}

/// Quadrics through sampled points of the embedded curve.
pub fn curve_quadrics<R: Rng>(emb: &EmbCurve, rng: &mut R) -> Result<QuadSpace> {
    let fld = emb.curve().field();
    quadrics_expected(fld, emb.n_coords(), expected_curve_quadrics(emb.d()), "curve", |count| {
        Ok(emb.sample_images(count, rng).into_iter().map(|(_, img)| img).collect())
    })
}

/// Quadrics containing the curve, computed exactly as the kernel of the
/// multiplication map `Sym^2 L(H) -> L(2H)`.
pub fn curve_quadrics_exact(emb: &EmbCurve) -> QuadSpace {
    let curve = emb.curve();
    let fld = curve.field();
    let nums = emb.h().space().numerators();
    let n = nums.len();
    // a product has x-degree below this bound in both components
    let width = nums.iter().map(|(a, b)| a.deg().max(b.deg()).max(0) as usize).max().unwrap_or(0) * 2 + 6;
    let cols: Vec<Vec<u64>> = quadric_monomials(n)
        .into_iter()
        .map(|(i, j)| {
            let (ai, bi) = &nums[i];
            let (aj, bj) = &nums[j];
            let a = &(ai * aj) + &(&(bi * bj) * curve.f());
            let b = &(ai * bj) + &(aj * bi);
            (0..width).map(|t| a.coeff(t)).chain((0..width).map(|t| b.coeff(t))).collect()
        })
        .collect();
    let space = kernel_basis(&Mat::from_rows(fld, 2 * width, &cols).transpose());
    QuadSpace { n, space }
}

/// The scroll of a pencil with its sampled quadrics and type.
#[derive(Clone, Debug)]
pub struct PencilScroll {
    pub quads: QuadSpace,
    pub points: Vec<Vec<u64>>,
    pub stype: ScrollType,
}

impl PencilScroll {
    pub fn build<R: Rng>(emb: &EmbCurve, pencil: &LinSeries, rng: &mut R) -> Result<Self> {
        let ruling = Ruling::new(emb, pencil)?;
        let fld = emb.curve().field();
        let expected = expected_scroll_quadrics(emb.d(), ruling.k());
        let what = if ruling.k() == 2 { "g12-scroll" } else { "g13-scroll" };
        let mut points = Vec::new();
        let quads = quadrics_expected(fld, emb.n_coords(), expected, what, |count| {
            points = ruling.sample(count, rng)?;
            Ok(points.clone())
        })?;
        Ok(Self { quads, points, stype: scroll_type(emb, pencil) })
    }
}

/// A curve and pencil whose `g^1_3`-scroll is the cone, with vertex on the
/// curve, over a `g^1_2`-scroll of type `(e1, e2)`.
#[derive(Clone, Debug)]
pub struct ConeInstance {
    pub h: EffDivisor,
    pub d: EffDivisor,
    pub p: Point,
}

/// Builds `H' ` of degree `e1 + e2 + 3` whose `g^1_2`-scroll has type
/// `(e1, e2)`, then sets `H = H' + P` and `D = K + P`.
pub fn cone_instance<R: Rng>(curve: &Curve, e1: i64, e2: i64, rng: &mut R) -> Result<ConeInstance> {
    if e2 < 0 || e1 < e2 {
        return Err(Error::Input(format!("need e1 >= e2 >= 0, got ({e1},{e2})")));
    }
    if e1 - e2 > 3 {
        return Err(Error::BoundViolation(e1 - e2));
    }
    if e1 + e2 < 2 {
        return Err(Error::DegreeTooSmall((e1 + e2 + 4) as usize));
    }
    let dp = e1 + e2 + 3;
    let pts = curve.random_distinct_points(4, rng)?;
    let pt_div = |ps: &[Point]| Divisor::from_terms(ps.iter().map(|&q| (q, 1)));
    let h_prime = match e1 - e2 {
        // ((d'-3)/2) K + R1 + R2 + R3 with |R1 + R2 + R3| basepoint free
        0 => {
            let mut rs = pts[..3].to_vec();
            loop {
                let cls = curve.class_of(&pt_div(&rs))?;
                if class_basepoint(curve, &cls).is_none() {
                    break;
                }
                rs = curve.random_distinct_points(3, rng)?;
            }
            pt_div(&rs).plus(&Divisor::infinity(dp - 3))
        }
        // ((d'-2)/2) K + Q1 + Q2 with Q1 + Q2 not canonical
        1 => {
            let (q1, mut q2) = (pts[0], pts[1]);
            while q2 == curve.involution(&q1) || q2 == q1 {
                q2 = curve.random_affine_point(rng);
            }
            pt_div(&[q1, q2]).plus(&Divisor::infinity(dp - 2))
        }
        // ((d'-1)/2) K + Q
        2 => pt_div(&pts[..1]).plus(&Divisor::infinity(dp - 1)),
        // (d'/2) K
        _ => Divisor::infinity(dp),
    };
    let mut p = pts[3];
    while h_prime.multiplicity(&p) > 1 {
        p = curve.random_affine_point(rng);
    }
    let h = EffDivisor::from_divisor(curve, &h_prime.plus(&Divisor::point(p)))?;
    let d = EffDivisor::from_divisor(curve, &Divisor::from_terms([(p, 1), (Point::Infinity, 2)]))?;
    Ok(ConeInstance { h, d, p })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{embed, embed_eff, random_g13, rr_space, rr_space_eff, G13Options};

    fn big() -> Curve {
        Curve::default_for(10007).unwrap()
    }

    fn canonical_series(c: &Curve) -> LinSeries {
        rr_space(c, &Divisor::infinity(2)).unwrap()
    }

    #[test]
    fn profile_formula_examples() {
        // h(i) = sum max(e_j - i + 1, 0) recovers (e_j)
        for es in [vec![3, 0], vec![2, 1], vec![1, 1, 1], vec![3, 0, 0], vec![3, 1, 1], vec![4, 2, 2]] {
            let h = |i: i64| es.iter().map(|&e| (e - i + 1).max(0) as usize).sum();
            assert_eq!(type_from_profile(h, es.len()), ScrollType::new(es.clone()));
        }
    }

    #[test]
    fn type_examples_d6() {
        let c = big();
        let k = canonical_series(&c);
        let emb = embed(&c, &Divisor::infinity(6)).unwrap();
        assert_eq!(scroll_type(&emb, &k), ScrollType::new(vec![3, 0]));

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let pts = c.random_distinct_points(2, &mut rng).unwrap();
        assert_ne!(pts[1], c.involution(&pts[0]));
        let h = Divisor::from_terms([(pts[0], 1), (pts[1], 1), (Point::Infinity, 4)]);
        let emb = embed(&c, &h).unwrap();
        assert_eq!(scroll_type(&emb, &k), ScrollType::new(vec![2, 1]));
    }

    #[test]
    fn type_examples_d7() {
        let c = big();
        let emb = embed(&c, &Divisor::infinity(7)).unwrap();
        let d = rr_space(&c, &Divisor::infinity(3)).unwrap();
        assert_eq!(scroll_type(&emb, &d), ScrollType::new(vec![3, 0, 0]));
        assert!(v_contains_s(&emb, &d));

        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let d = random_g13(&c, &mut rng, G13Options { force_basepoint_free: true }).unwrap();
        let h = d.div().plus(&c, &EffDivisor::infinity(&c, 4));
        let emb = embed_eff(&c, &h).unwrap();
        assert_eq!(scroll_type(&emb, &d), ScrollType::new(vec![1, 1, 1]));
        assert!(v_contains_s(&emb, &d));
    }

    #[test]
    fn fibers_have_expected_rank() {
        let c = big();
        let emb = embed(&c, &Divisor::infinity(8)).unwrap();
        let k = canonical_series(&c);
        let r = Ruling::new(&emb, &k).unwrap();
        // members are 1 + t x; the Weierstrass fiber over x = 0 is t = inf
        assert_eq!(r.member(Param::Infinity), RationalForm::x(c.field()));
        assert_eq!(r.forms(Param::Infinity).unwrap().dim(), 8 - 3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = random_g13(&c, &mut rng, G13Options::default()).unwrap();
        let r3 = Ruling::new(&emb, &d).unwrap();
        for _ in 0..50 {
            let lam = Param::random(c.p(), &mut rng);
            assert_eq!(r3.forms(lam).unwrap().dim(), 8 - 4);
        }
    }

    #[test]
    fn g12_fiber_contains_conjugate_points() {
        let c = big();
        let emb = embed(&c, &Divisor::infinity(7)).unwrap();
        let k = canonical_series(&c);
        let r = Ruling::new(&emb, &k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..10 {
            let pt = c.random_affine_point(&mut rng);
            let Point::Affine { x, .. } = pt else { unreachable!() };
            if x == 0 {
                continue;
            }
            // 1 + t x vanishes at x0 for t = -1/x0
            let lam = Param::Finite(c.field().neg(c.field().inv(x)));
            let forms = r.forms(lam).unwrap();
            let fiber = kernel_basis(forms.basis());
            for q in [pt, c.involution(&pt)] {
                assert!(fiber.contains(&emb.image(&q).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn distinct_fibers_are_disjoint() {
        let c = big();
        let emb = embed(&c, &Divisor::infinity(9)).unwrap();
        let k = canonical_series(&c);
        let r = Ruling::new(&emb, &k).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..10 {
            let (a, b) = (Param::random(c.p(), &mut rng), Param::random(c.p(), &mut rng));
            if a == b {
                continue;
            }
            let both = r.forms(a).unwrap().span_intersect(&r.forms(b).unwrap()).unwrap();
            assert_eq!(both.dim(), emb.n_coords() - 4);
        }
    }

    #[test]
    fn quadric_counts_d6() {
        let c = big();
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let emb = embed(&c, &Divisor::infinity(6)).unwrap();
        let qc = curve_quadrics(&emb, &mut rng).unwrap();
        assert_eq!(qc.dim(), 4);
        assert_eq!(curve_quadrics_exact(&emb), qc);
        let s = PencilScroll::build(&emb, &canonical_series(&c), &mut rng).unwrap();
        assert_eq!(s.quads.dim(), 3);
        let d = random_g13(&c, &mut rng, G13Options { force_basepoint_free: true }).unwrap();
        let v = PencilScroll::build(&emb, &d, &mut rng).unwrap();
        assert_eq!(v.quads.dim(), 1);
        for (_, img) in emb.sample_images(20, &mut rng) {
            assert!(s.quads.vanishes_at(&img));
            assert!(v.quads.vanishes_at(&img));
        }
    }

    #[test]
    fn exact_and_sampled_curve_quadrics_agree() {
        let c = big();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 6..=10 {
            let pts = c.random_distinct_points(2, &mut rng).unwrap();
            let h = Divisor::from_terms([(pts[0], 1), (pts[1], 1), (Point::Infinity, d - 2)]);
            let emb = embed(&c, &h).unwrap();
            let exact = curve_quadrics_exact(&emb);
            assert_eq!(exact.dim(), expected_curve_quadrics(d as usize));
            assert_eq!(curve_quadrics(&emb, &mut rng).unwrap(), exact);
        }
    }

    #[test]
    fn geometric_type_matches_class_type() {
        let c = big();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for d in 6..=10i64 {
            let pts = c.random_distinct_points(3, &mut rng).unwrap();
            let h = Divisor::from_terms([(pts[0], 1), (pts[1], 1), (pts[2], 1), (Point::Infinity, d - 3)]);
            let emb = embed(&c, &h).unwrap();
            let k = canonical_series(&c);
            let g = random_g13(&c, &mut rng, G13Options::default()).unwrap();
            let bp = rr_space_eff(&c, &EffDivisor::from_divisor(&c, &Divisor::from_terms([(pts[0], 1), (Point::Infinity, 2)])).unwrap());
            for pencil in [&k, &g, &bp] {
                let r = Ruling::new(&emb, pencil).unwrap();
                assert_eq!(r.geometric_type(&mut rng).unwrap(), scroll_type(&emb, pencil), "d={d}");
            }
        }
    }

    #[test]
    fn cone_instances() {
        let c = big();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for (e1, e2) in [(1, 1), (2, 0), (2, 1), (3, 0), (2, 2), (3, 1), (4, 1), (3, 3), (5, 2)] {
            let ci = cone_instance(&c, e1, e2, &mut rng).unwrap();
            assert_eq!(ci.h.degree(), e1 + e2 + 4);
            let emb = embed_eff(&c, &ci.h).unwrap();
            let d = rr_space_eff(&c, &ci.d);
            assert_eq!(scroll_type(&emb, &d), ScrollType::new(vec![e1, e2, 0]));
            let r = Ruling::new(&emb, &d).unwrap();
            assert_eq!(r.geometric_type(&mut rng).unwrap(), ScrollType::new(vec![e1, e2, 0]));
        }
        assert_eq!(cone_instance(&c, 4, 0, &mut rng).err(), Some(Error::BoundViolation(4)));
    }

    #[test]
    fn containment_criterion_d8_generic() {
        let c = big();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let emb = embed(&c, &Divisor::infinity(8)).unwrap();
        let d = random_g13(&c, &mut rng, G13Options { force_basepoint_free: true }).unwrap();
        assert!(!v_contains_s(&emb, &d));
    }
}
