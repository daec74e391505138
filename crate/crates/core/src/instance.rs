//! Instance specifications (curve, `H`, `D`, seed) and their construction.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Divisor, Point, DEFAULT_F};
use crate::error::{Error, Result};
use crate::expr::{divisor_expr, DivExpr};
use crate::field::DEFAULT_PRIME;
use crate::jacobian::DivClass;
use crate::scroll::v_contains_s;
use crate::series::{basepoint, embed, rr_space, EmbCurve, LinSeries};

/// Largest embedding degree accepted by default.
pub const MAX_DEGREE: usize = 16;

/// Rejection budget when drawing an admissible random `D`.
const D_BUDGET: usize = 200;

fn default_p() -> u64 {
    DEFAULT_PRIME
}

fn default_f() -> Vec<i64> {
    DEFAULT_F.to_vec()
}

fn default_d_expr() -> String {
    "random".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(default = "default_p")]
    pub p: u64,
    /// `c_0..c_5`
    #[serde(default = "default_f")]
    pub f: Vec<i64>,
    pub d: usize,
    /// Defaults to `rand(d)`.
    #[serde(rename = "H", default, skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    /// A degree-3 expression or `random`.
    #[serde(rename = "D", default = "default_d_expr")]
    pub d_expr: String,
    #[serde(default)]
    pub seed: u64,
    /// Reject an explicit `D` whose scroll contains the `g^1_2`-scroll.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub require_admissible: bool,
}

impl InstanceSpec {
    pub fn new(p: u64, d: usize, seed: u64) -> Self {
        Self {
            p,
            f: default_f(),
            d,
            h: None,
            d_expr: default_d_expr(),
            seed,
            require_admissible: false,
        }
    }

    pub fn with_h(mut self, h: impl Into<String>) -> Self {
        self.h = Some(h.into());
        self
    }

    pub fn with_d(mut self, d: impl Into<String>) -> Self {
        self.d_expr = d.into();
        self
    }

    pub fn h_expr(&self) -> String {
        self.h.clone().unwrap_or_else(|| format!("rand({})", self.d))
    }

    pub fn is_random_d(&self) -> bool {
        self.d_expr.trim() == "random"
    }

    /// Generator for construction; verification draws from stream 1.
    pub fn rng(&self, stream: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(stream);
        rng
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub curve: Curve,
    pub h_div: Divisor,
    pub d_div: Divisor,
    pub emb: EmbCurve,
    pub pencil: LinSeries,
}

impl Instance {
    pub fn d(&self) -> usize {
        self.emb.d()
    }

    pub fn h_cls(&self) -> &DivClass {
        self.emb.h().cls()
    }

    pub fn d_cls(&self) -> &DivClass {
        self.pencil.cls()
    }

    pub fn contains_s(&self) -> bool {
        v_contains_s(&self.emb, &self.pencil)
    }

    /// The spec with every random choice replaced by the drawn points.
    pub fn resolved_spec(&self) -> InstanceSpec {
        InstanceSpec {
            f: self.curve.coeffs().iter().map(|&c| c as i64).collect(),
            h: Some(divisor_expr(&self.h_div)),
            d_expr: divisor_expr(&self.d_div),
            ..self.spec.clone()
        }
    }
}

fn make_curve<R: Rng>(spec: &InstanceSpec, rng: &mut R) -> Result<Curve> {
    match Curve::new(spec.p, &spec.f) {
        Err(Error::NonSquarefree) if spec.f == DEFAULT_F => Curve::random(spec.p, rng),
        other => other,
    }
}

pub fn build_instance(spec: &InstanceSpec) -> Result<Instance> {
    if spec.d < 6 {
        return Err(Error::DegreeTooSmall(spec.d));
    }
    if spec.d > MAX_DEGREE {
        return Err(Error::Input(format!("d = {} exceeds the maximum {MAX_DEGREE}", spec.d)));
    }
    let mut rng = spec.rng(0);
    let curve = make_curve(spec, &mut rng)?;
    let h_expr = DivExpr::parse(&spec.h_expr())?;
    if h_expr.degree() != spec.d as i64 {
        return Err(Error::DegreeMismatch(format!(
            "H has degree {}, expected d = {}",
            h_expr.degree(),
            spec.d
        )));
    }
    let h_div = h_expr.resolve(&curve, &mut rng)?;
    let emb = embed(&curve, &h_div)?;

    let (d_div, pencil) = if spec.is_random_d() {
        random_admissible_d(&curve, &emb, &mut rng)?
    } else {
        let e = DivExpr::parse(&spec.d_expr)?;
        if e.degree() != 3 {
            return Err(Error::DegreeMismatch(format!("D has degree {}, expected 3", e.degree())));
        }
        let d_div = e.resolve(&curve, &mut rng)?;
        let pencil = rr_space(&curve, &d_div)?;
        if spec.require_admissible && v_contains_s(&emb, &pencil) {
            return Err(Error::NoAdmissibleD);
        }
        (d_div, pencil)
    };
    Ok(Instance { spec: spec.clone(), curve, h_div, d_div, emb, pencil })
}

/// A basepoint-free `g^1_3` whose scroll does not contain the `g^1_2`-scroll.
fn random_admissible_d<R: Rng>(curve: &Curve, emb: &EmbCurve, rng: &mut R) -> Result<(Divisor, LinSeries)> {
    for _ in 0..D_BUDGET {
        let pts = curve.random_distinct_points(3, rng)?;
        let d_div = Divisor::from_terms(pts.into_iter().map(|p| (p, 1)));
        let pencil = rr_space(curve, &d_div)?;
        if basepoint(curve, &pencil)?.is_some() || v_contains_s(emb, &pencil) {
            continue;
        }
        return Ok((d_div, pencil));
    }
    Err(Error::NoAdmissibleD)
}

/// An effective divisor supported on rational points in the class `cls`
/// (degree at least 2): random points plus the unique effective divisor of
/// the degree-2 remainder, retried until that remainder splits.
pub fn realize_class<R: Rng>(curve: &Curve, cls: &DivClass, rng: &mut R) -> Result<Divisor> {
    let n = cls.degree();
    if n < 2 {
        return Err(Error::Input(format!("cannot realize a class of degree {n}")));
    }
    for _ in 0..10_000 {
        let pts = curve.random_distinct_points((n - 2) as usize, rng)?;
        let mut div = Divisor::from_terms(pts.iter().map(|&p| (p, 1)));
        let rest = curve.sub_classes(cls, &curve.class_of(&div)?);
        if !curve.is_effective(&rest) {
            continue;
        }
        let u = rest.u();
        let roots = u.small_roots();
        if roots.len() != u.degree().unwrap_or(0) {
            continue;
        }
        for &x in &roots {
            div.add_point(Point::Affine { x, y: rest.v().eval(x) }, 1);
        }
        div.add_point(Point::Infinity, 2 - rest.weight() as i64);
        if div.check_multiplicities().is_err() {
            continue;
        }
        debug_assert_eq!(curve.class_of(&div)?, *cls);
        return Ok(div);
    }
    Err(Error::InsufficientPoints)
}
