//! Riemann–Roch spaces as explicit function bases, complete linear series,
//! and the embedding `C -> P^{d-2}` by `|H|`.
//!
//! `L(G)` for `G = P - N + n·∞` (with `P`, `N` effective affine) is computed
//! by clearing the affine poles of `P` with a polynomial `c(x)`: a function
//! `t` lies in `L(G)` exactly when `h = c·t` lies in `L(M·∞)` and vanishes on
//! `ι(P) + N`. The space `L(M·∞)` has the monomial basis `x^i` (pole order
//! `2i`) and `y·x^j` (pole order `5 + 2j`), and vanishing on a divisor is a
//! linear condition read off from its ideal.

use rand::Rng;

use crate::curve::{Curve, Divisor, Point};
use crate::divisor::{AffIdeal, EffDivisor};
use crate::error::{Error, Result};
use crate::function::RationalForm;
use crate::jacobian::DivClass;
use crate::linalg::{kernel_basis, Mat, Solver};
use crate::poly::Poly;

/// Coordinates on `L(m·∞)`: `x^0..x^{na-1}` followed by `y·x^0..y·x^{nb-1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PoleSpace {
    pub na: usize,
    pub nb: usize,
}

impl PoleSpace {
    pub fn new(m: i64) -> Self {
        let na = if m >= 0 { (m / 2 + 1) as usize } else { 0 };
        let nb = if m >= 5 { ((m - 5) / 2 + 1) as usize } else { 0 };
        Self { na, nb }
    }

    pub fn dim(&self) -> usize {
        self.na + self.nb
    }

    /// `None` if `a + b·y` has too large a pole at infinity.
    pub fn to_vec(&self, a: &Poly, b: &Poly) -> Option<Vec<u64>> {
        if a.deg() >= self.na as isize || b.deg() >= self.nb as isize {
            return None;
        }
        let mut v = Vec::with_capacity(self.dim());
        v.extend((0..self.na).map(|i| a.coeff(i)));
        v.extend((0..self.nb).map(|j| b.coeff(j)));
        Some(v)
    }

    pub fn from_vec(&self, curve: &Curve, v: &[u64]) -> (Poly, Poly) {
        let f = curve.field();
        (
            Poly::new(f, v[..self.na].to_vec()),
            Poly::new(f, v[self.na..].to_vec()),
        )
    }
}

/// A basis of some `L(G)` in cleared form: `basis_i = (a_i + b_i·y) / clear`.
#[derive(Clone, Debug)]
pub struct RrSpace {
    clear: Poly,
    pole: PoleSpace,
    numerators: Vec<(Poly, Poly)>,
    basis: Vec<RationalForm>,
    solver: Option<Solver>,
}

impl RrSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RationalForm] {
        &self.basis
    }

    pub fn numerators(&self) -> &[(Poly, Poly)] {
        &self.numerators
    }

    pub fn clearing_poly(&self) -> &Poly {
        &self.clear
    }

    /// Exact coordinates of `g` in this basis.
    pub fn coords(&self, g: &RationalForm) -> Result<Vec<u64>> {
        if g.is_zero() {
            return Ok(vec![0; self.dim()]);
        }
        let cleared = g.mul_poly(&self.clear);
        if !cleared.is_polynomial() {
            return Err(Error::NotInSpan);
        }
        let v = self.pole.to_vec(cleared.a(), cleared.b()).ok_or(Error::NotInSpan)?;
        let solver = self.solver.as_ref().ok_or(Error::NotInSpan)?;
        solver.solve(&v).ok_or(Error::NotInSpan)
    }

    /// `Σ coeffs_i · basis_i`
    pub fn combine(&self, curve: &Curve, coeffs: &[u64]) -> RationalForm {
        let fld = curve.field();
        let mut a = Poly::zero(fld);
        let mut b = Poly::zero(fld);
        for (&k, (ai, bi)) in coeffs.iter().zip(&self.numerators) {
            a = &a + &ai.scale(k);
            b = &b + &bi.scale(k);
        }
        RationalForm::new(a, b, self.clear.clone())
    }

    /// Projective image of an affine point: the numerators evaluated there.
    /// `None` if the point is a zero of the clearing polynomial.
    pub fn eval_point(&self, curve: &Curve, pt: &Point) -> Option<Vec<u64>> {
        let Point::Affine { x, y } = *pt else { return None };
        if self.clear.eval(x) == 0 {
            return None;
        }
        let fld = curve.field();
        Some(
            self.numerators
                .iter()
                .map(|(a, b)| fld.add(a.eval(x), fld.mul(b.eval(x), y)))
                .collect(),
        )
    }
}

/// `L(pos - neg + inf·∞)`.
pub fn riemann_roch(curve: &Curve, pos: &AffIdeal, neg: &AffIdeal, inf: i64) -> RrSpace {
    let fld = curve.field();
    let clear = pos.clearing_poly();
    let n_total = inf + 2 * clear.deg().max(0) as i64;
    let conj_part = AffIdeal { d: Poly::one(fld), u: pos.u.clone(), v: pos.conjugate().v };
    let zeros = neg.plus(curve, &conj_part);
    let m = n_total - 2 * zeros.d.deg().max(0) as i64;
    let full_pole = PoleSpace::new(n_total);
    if m < 0 {
        return RrSpace { clear, pole: full_pole, numerators: Vec::new(), basis: Vec::new(), solver: None };
    }
    let inner = PoleSpace::new(m);
    let nconds = zeros.u.degree().unwrap_or(0);
    // column k: residue mod u of (monomial_k evaluated with y -> v)
    let mut cond = Mat::zeros(fld, nconds, inner.dim());
    if nconds > 0 {
        for i in 0..inner.na {
            let r = Poly::monomial(fld, i).rem(&zeros.u);
            for row in 0..nconds {
                cond.set(row, i, r.coeff(row));
            }
        }
        for j in 0..inner.nb {
            let r = (&Poly::monomial(fld, j) * &zeros.v).rem(&zeros.u);
            for row in 0..nconds {
                cond.set(row, inner.na + j, r.coeff(row));
            }
        }
    }
    let ker = kernel_basis(&cond);
    let mut numerators = Vec::with_capacity(ker.dim());
    let mut vecs = Vec::with_capacity(ker.dim());
    for kv in ker.vectors() {
        let (a, b) = inner.from_vec(curve, &kv);
        let (a, b) = (&a * &zeros.d, &b * &zeros.d);
        vecs.push(full_pole.to_vec(&a, &b).expect("numerator within pole bound"));
        numerators.push((a, b));
    }
    let basis = numerators
        .iter()
        .map(|(a, b)| RationalForm::new(a.clone(), b.clone(), clear.clone()))
        .collect();
    let solver = Some(Solver::new(fld, full_pole.dim(), &vecs).expect("independent basis"));
    RrSpace { clear, pole: full_pole, numerators, basis, solver }
}

/// `L(a - b)` for effective `a`, `b`.
pub fn riemann_roch_difference(curve: &Curve, a: &EffDivisor, b: &EffDivisor) -> RrSpace {
    riemann_roch(curve, &a.aff, &b.aff, a.inf - b.inf)
}

/// A complete linear series `|D|` together with a basis of `L(D)`.
#[derive(Clone, Debug)]
pub struct LinSeries {
    cls: DivClass,
    div: EffDivisor,
    space: RrSpace,
}

impl LinSeries {
    pub fn cls(&self) -> &DivClass {
        &self.cls
    }
    pub fn div(&self) -> &EffDivisor {
        &self.div
    }
    pub fn space(&self) -> &RrSpace {
        &self.space
    }
    pub fn basis(&self) -> &[RationalForm] {
        self.space.basis()
    }
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
    pub fn degree(&self) -> i64 {
        self.cls.degree()
    }
}

/// `L(div)` for an effective divisor given by an ideal.
pub fn rr_space_eff(curve: &Curve, div: &EffDivisor) -> LinSeries {
    let space = riemann_roch(curve, &div.aff, &AffIdeal::trivial(curve), div.inf);
    LinSeries { cls: div.class(curve), div: div.clone(), space }
}

/// `L(div)` for an effective point divisor.
pub fn rr_space(curve: &Curve, div: &Divisor) -> Result<LinSeries> {
    let eff = EffDivisor::from_divisor(curve, div)?;
    Ok(rr_space_eff(curve, &eff))
}

/// Coordinates of `g` in the basis of `L`, or [`Error::NotInSpan`].
pub fn coords_in_basis(g: &RationalForm, l: &LinSeries) -> Result<Vec<u64>> {
    l.space.coords(g)
}

/// The basepoint of a pencil, if any. A degree-3 pencil `|D|` has a
/// basepoint `P` exactly when `|D| = |K + P|`.
pub fn basepoint(curve: &Curve, l: &LinSeries) -> Result<Option<Point>> {
    if l.dim() != 2 {
        return Err(Error::NotAPencil(l.dim()));
    }
    Ok(class_basepoint(curve, l.cls()))
}

/// Basepoint test on the class alone (degree-3 classes only).
pub fn class_basepoint(curve: &Curve, cls: &DivClass) -> Option<Point> {
    if cls.degree() != 3 {
        return None;
    }
    let rest = curve.sub_classes(cls, &curve.canonical_class());
    curve.degree_one_point(&rest)
}

/// A curve embedded in `P^{d-2}` by a complete linear series of degree `d`.
#[derive(Clone, Debug)]
pub struct EmbCurve {
    curve: Curve,
    h: LinSeries,
    d: usize,
}

impl EmbCurve {
    pub fn curve(&self) -> &Curve {
        &self.curve
    }
    pub fn h(&self) -> &LinSeries {
        &self.h
    }
    pub fn d(&self) -> usize {
        self.d
    }
    /// Number of projective coordinates, `d - 1`.
    pub fn n_coords(&self) -> usize {
        self.d - 1
    }

    /// Image of an affine point outside `supp(H)`.
    pub fn image(&self, pt: &Point) -> Option<Vec<u64>> {
        self.h.space.eval_point(&self.curve, pt)
    }

    /// Random affine points avoiding the support of `H`, with their images.
    pub fn sample_images<R: Rng>(&self, n: usize, rng: &mut R) -> Vec<(Point, Vec<u64>)> {
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let pt = self.curve.random_affine_point(rng);
            if let Some(img) = self.image(&pt) {
                out.push((pt, img));
            }
        }
        out
    }
}

pub fn embed_eff(curve: &Curve, h: &EffDivisor) -> Result<EmbCurve> {
    let deg = h.degree();
    if deg < 6 {
        return Err(Error::DegreeTooSmall(deg.max(0) as usize));
    }
    let series = rr_space_eff(curve, h);
    debug_assert_eq!(series.dim() as i64, deg - 1);
    Ok(EmbCurve { curve: curve.clone(), h: series, d: deg as usize })
}

pub fn embed(curve: &Curve, h: &Divisor) -> Result<EmbCurve> {
    if h.degree() < 6 {
        return Err(Error::DegreeTooSmall(h.degree().max(0) as usize));
    }
    embed_eff(curve, &EffDivisor::from_divisor(curve, h)?)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct G13Options {
    pub force_basepoint_free: bool,
}

/// The degree-3 series through three random distinct affine points.
pub fn random_g13<R: Rng>(curve: &Curve, rng: &mut R, opts: G13Options) -> Result<LinSeries> {
    const BUDGET: usize = 1000;
    for _ in 0..BUDGET {
        let pts = curve.random_distinct_points(3, rng)?;
        let div = Divisor::from_terms(pts.into_iter().map(|p| (p, 1)));
        let series = rr_space(curve, &div)?;
        if opts.force_basepoint_free && basepoint(curve, &series)?.is_some() {
            continue;
        }
        return Ok(series);
    }
    Err(Error::NoAdmissibleD)
}
