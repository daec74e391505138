//! The degree-2 check of `I_S + I_V = I_C`, type classification against
//! the membership criteria, and sampling checks on an instance.

use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Point};
use crate::error::{Error, Result};
use crate::instance::{Instance, InstanceSpec};
use crate::jacobian::DivClass;
use crate::linalg::Mat;
use crate::scroll::{curve_quadrics, scroll_type_of_classes, PencilScroll, QuadSpace, Ruling, ScrollType};
use crate::series::{class_basepoint, rr_space, LinSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    #[serde(rename = "q_S")]
    pub q_s: usize,
    #[serde(rename = "q_V")]
    pub q_v: usize,
    #[serde(rename = "q_C")]
    pub q_c: usize,
    pub q_sum: usize,
    pub q_overlap: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub build_ms: f64,
    pub verify_ms: f64,
}

impl Timings {
    pub fn total_ms(&self) -> f64 {
        self.build_ms + self.verify_ms
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    /// Replayable spec with all random choices resolved.
    pub spec: InstanceSpec,
    pub dims: Dims,
    #[serde(rename = "stype_S")]
    pub stype_s: ScrollType,
    #[serde(rename = "stype_V")]
    pub stype_v: ScrollType,
    pub contains: bool,
    #[serde(rename = "Q_S_in_Q_C")]
    pub qs_in_qc: bool,
    #[serde(rename = "Q_V_in_Q_C")]
    pub qv_in_qc: bool,
    pub theorem_holds: bool,
    /// Equality of degree-2 parts decides the ideals because all three are
    /// generated by quadrics.
    pub quadric_generated: bool,
    pub timings: Timings,
}

/// The quadric spaces of one instance.
#[derive(Clone, Debug)]
pub struct Quadrics {
    pub s: PencilScroll,
    pub v: PencilScroll,
    pub c: QuadSpace,
}

pub fn compute_quadrics<R: Rng>(inst: &Instance, rng: &mut R) -> Result<Quadrics> {
    let k = canonical_series(&inst.curve)?;
    let s = PencilScroll::build(&inst.emb, &k, rng)?;
    let v = PencilScroll::build(&inst.emb, &inst.pencil, rng)?;
    let c = curve_quadrics(&inst.emb, rng)?;
    Ok(Quadrics { s, v, c })
}

pub fn canonical_series(curve: &Curve) -> Result<LinSeries> {
    rr_space(curve, &crate::curve::Divisor::infinity(2))
}

pub fn verify_ideal_sum(inst: &Instance) -> Result<Report> {
    verify_timed(inst, 0.0)
}

/// As [`verify_ideal_sum`], recording `build_ms` as the construction time.
pub fn verify_timed(inst: &Instance, build_ms: f64) -> Result<Report> {
    if inst.contains_s() {
        return Err(Error::PreconditionViolated);
    }
    let start = Instant::now();
    let mut rng = inst.spec.rng(1);
    let q = compute_quadrics(inst, &mut rng)?;
    let report = assemble_report(inst, &q)?;
    Ok(Report {
        timings: Timings { build_ms, verify_ms: start.elapsed().as_secs_f64() * 1e3 },
        ..report
    })
}

fn assemble_report(inst: &Instance, q: &Quadrics) -> Result<Report> {
    let (qs, qv, qc) = (q.s.quads.space(), q.v.quads.space(), q.c.space());
    let sum = qs.span_sum(qv)?;
    let overlap = qs.span_intersect(qv)?;
    Ok(Report {
        spec: inst.resolved_spec(),
        dims: Dims {
            q_s: qs.dim(),
            q_v: qv.dim(),
            q_c: qc.dim(),
            q_sum: sum.dim(),
            q_overlap: overlap.dim(),
        },
        stype_s: q.s.stype.clone(),
        stype_v: q.v.stype.clone(),
        contains: inst.contains_s(),
        qs_in_qc: qs.is_subspace_of(qc)?,
        qv_in_qc: qv.is_subspace_of(qc)?,
        theorem_holds: sum == *qc,
        quadric_generated: true,
        timings: Timings::default(),
    })
}

/// `(d - 5)(d - 6)/2`
pub fn expected_overlap(d: usize) -> usize {
    (d - 5) * (d - 6) / 2
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub row: String,
    pub predicted: ScrollType,
    pub computed: ScrollType,
    #[serde(rename = "match")]
    pub matched: bool,
}

fn half(x: i64) -> i64 {
    debug_assert!(x % 2 == 0);
    x / 2
}

/// The `g^1_2`-scroll type predicted by membership of `H - mK`.
pub fn predict_s_type(curve: &Curve, h: &DivClass) -> (String, ScrollType) {
    let d = h.degree();
    let k = curve.canonical_class();
    if d % 2 == 0 {
        let e = curve.sub_classes(h, &curve.scale_class(&k, half(d - 2)));
        if e == k {
            ("even:H-((d-2)/2)K=K".into(), ScrollType::new(vec![half(d), half(d - 6)]))
        } else {
            ("even:H-((d-2)/2)K=P+Q".into(), ScrollType::new(vec![half(d - 2), half(d - 4)]))
        }
    } else {
        let e = curve.sub_classes(h, &curve.scale_class(&k, half(d - 1)));
        if curve.is_effective(&e) {
            ("odd:H-((d-3)/2)K=K+P".into(), ScrollType::new(vec![half(d - 1), half(d - 5)]))
        } else {
            ("odd:H-((d-3)/2)K=P+Q+R".into(), ScrollType::new(vec![half(d - 3), half(d - 3)]))
        }
    }
}

/// The `g^1_3`-scroll type predicted by the mod-3 table (basepoint-free
/// `D`) or the projection criteria (`D = K + P`).
pub fn predict_v_type(curve: &Curve, h: &DivClass, dc: &DivClass) -> Result<(String, ScrollType)> {
    let d = h.degree();
    if d < 6 {
        return Err(Error::NoRowMatched(d.max(0) as usize));
    }
    if dc.degree() != 3 {
        return Err(Error::DegreeMismatch(format!("D has degree {}, expected 3", dc.degree())));
    }
    let k = curve.canonical_class();
    let t = |v: [i64; 3]| ScrollType::new(v.to_vec());
    if let Some(p) = class_basepoint(curve, dc) {
        let pc = curve.point_class(&p);
        let row = if d % 2 == 0 {
            let e = curve.sub_classes(&curve.sub_classes(h, &curve.scale_class(&k, half(d - 2))), &pc);
            if curve.is_effective(&e) {
                ("basepoint:even:|H-((d-2)/2)K-P|!=empty", t([half(d - 2), half(d - 6), 0]))
            } else {
                ("basepoint:even:|H-((d-2)/2)K-P|=empty", t([half(d - 4), half(d - 4), 0]))
            }
        } else {
            let e = curve.sub_classes(&curve.sub_classes(h, &curve.scale_class(&k, half(d - 1))), &pc);
            if curve.is_effective(&e) {
                ("basepoint:odd:|H-((d-1)/2)K-P|!=empty", t([half(d - 1), half(d - 7), 0]))
            } else {
                ("basepoint:odd:|H-((d-1)/2)K-P|=empty", t([half(d - 3), half(d - 5), 0]))
            }
        };
        return Ok((row.0.into(), row.1));
    }
    let minus = |m: i64| curve.sub_classes(h, &curve.scale_class(dc, m));
    let row = match d % 3 {
        0 => {
            let m = d / 3;
            if minus(m - 1) == *dc {
                ("mod3=0:H-((d-3)/3)D=D", t([m, m - 2, m - 2]))
            } else {
                ("mod3=0:H-((d-3)/3)D!=D", t([m - 1, m - 1, m - 2]))
            }
        }
        1 => {
            let m = (d - 1) / 3;
            if curve.is_effective(&minus(m)) {
                ("mod3=1:|H-((d-1)/3)D|!=empty", t([m, m - 1, m - 2]))
            } else {
                ("mod3=1:|H-((d-1)/3)D|=empty", t([m - 1, m - 1, m - 1]))
            }
        }
        _ => {
            let m = (d - 2) / 3;
            if minus(m) == k {
                ("mod3=2:H-((d-2)/3)D=K", t([m, m, m - 2]))
            } else {
                ("mod3=2:H-((d-2)/3)D=P+Q", t([m, m - 1, m - 1]))
            }
        }
    };
    Ok((row.0.into(), row.1))
}

pub fn classify_s(inst: &Instance) -> Classification {
    let (row, predicted) = predict_s_type(&inst.curve, inst.h_cls());
    let computed = scroll_type_of_classes(&inst.curve, inst.h_cls(), &inst.curve.canonical_class());
    let matched = predicted == computed;
    Classification { row, predicted, computed, matched }
}

pub fn classify_v(inst: &Instance) -> Result<Classification> {
    let (row, predicted) = predict_v_type(&inst.curve, inst.h_cls(), inst.d_cls())?;
    let computed = scroll_type_of_classes(&inst.curve, inst.h_cls(), inst.d_cls());
    let matched = predicted == computed;
    Ok(Classification { row, predicted, computed, matched })
}

/// Random affine points off the support of `H`, with distinct images.
fn distinct_images<R: Rng>(inst: &Instance, n: usize, rng: &mut R) -> Result<Vec<Vec<u64>>> {
    let mut pts: Vec<Point> = Vec::with_capacity(n);
    let mut imgs = Vec::with_capacity(n);
    let available = if inst.curve.p() < 1000 { inst.curve.points().len() - 1 } else { usize::MAX };
    if available < n + inst.h_div.support().count() {
        return Err(Error::InsufficientPoints);
    }
    while imgs.len() < n {
        let pt = inst.curve.random_affine_point(rng);
        if pts.contains(&pt) {
            continue;
        }
        if let Some(img) = inst.emb.image(&pt) {
            pts.push(pt);
            imgs.push(img);
        }
    }
    Ok(imgs)
}

/// Number of collinear triples among `trials` random triples of distinct
/// curve points.
pub fn trisecant_scan<R: Rng>(inst: &Instance, trials: usize, rng: &mut R) -> Result<usize> {
    let fld = inst.curve.field();
    let mut bad = 0;
    for _ in 0..trials {
        let rows = distinct_images(inst, 3, rng)?;
        if Mat::from_rows(fld, inst.emb.n_coords(), &rows).rank() < 3 {
            bad += 1;
        }
    }
    Ok(bad)
}

/// Points of the `g^1_2`-scroll off the curve on which every quadric of
/// `V` vanishes. Off-curve is decided by a nonvanishing quadric of `C`,
/// which cuts out `C` exactly.
pub fn s_cap_v_exceptions<R: Rng>(inst: &Instance, q: &Quadrics, count: usize, rng: &mut R) -> Result<usize> {
    let k = canonical_series(&inst.curve)?;
    let ruling = Ruling::new(&inst.emb, &k)?;
    let mut tested = 0;
    let mut exceptions = 0;
    let mut attempts = 0;
    while tested < count {
        attempts += 1;
        if attempts > 100 * count + 100 {
            return Err(Error::InsufficientPoints);
        }
        let pt = ruling.sample(1, rng)?.pop().expect("one point");
        if q.c.vanishes_at(&pt) {
            continue;
        }
        tested += 1;
        if q.v.quads.vanishes_at(&pt) {
            exceptions += 1;
        }
    }
    Ok(exceptions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::build_instance;

    #[test]
    fn d6_numbers() {
        let inst = build_instance(&InstanceSpec::new(10007, 6, 1)).unwrap();
        let r = verify_ideal_sum(&inst).unwrap();
        assert_eq!(r.dims, Dims { q_s: 3, q_v: 1, q_c: 4, q_sum: 4, q_overlap: 0 });
        assert!(r.theorem_holds && r.qs_in_qc && r.qv_in_qc);
    }

    #[test]
    fn d7_numbers() {
        let inst = build_instance(&InstanceSpec::new(10007, 7, 2)).unwrap();
        let r = verify_ideal_sum(&inst).unwrap();
        assert_eq!(r.dims, Dims { q_s: 6, q_v: 3, q_c: 8, q_sum: 8, q_overlap: 1 });
        assert!(r.theorem_holds);
    }

    #[test]
    fn d8_numbers() {
        let inst = build_instance(&InstanceSpec::new(7919, 8, 3)).unwrap();
        let r = verify_ideal_sum(&inst).unwrap();
        assert_eq!(r.dims, Dims { q_s: 10, q_v: 6, q_c: 13, q_sum: 13, q_overlap: 3 });
        assert_eq!(r.dims.q_overlap, expected_overlap(8));
        assert!(r.theorem_holds);
    }

    #[test]
    fn containment_is_a_precondition() {
        let spec = InstanceSpec::new(10007, 7, 4).with_h("3*K + (0,0)").with_d("K + (0,0)");
        let inst = build_instance(&spec).unwrap();
        assert_eq!(verify_ideal_sum(&inst).err(), Some(Error::PreconditionViolated));
    }

    #[test]
    fn classification_examples() {
        let cases = [
            ("3*K", "rand(3)", vec![3, 0]),
            ("3*K + inf", "rand(3)", vec![3, 1]),
            ("2*K + rand(3)", "rand(3)", vec![2, 2]),
        ];
        for (i, (h, dd, s)) in cases.iter().enumerate() {
            let deg = crate::expr::DivExpr::parse(h).unwrap().degree() as usize;
            let inst = build_instance(&InstanceSpec::new(10007, deg, i as u64).with_h(*h).with_d(*dd)).unwrap();
            let c = classify_s(&inst);
            assert!(c.matched);
            assert_eq!(c.computed, ScrollType::new(s.clone()));
        }
        let inst = build_instance(&InstanceSpec::new(10007, 7, 0).with_h("3*K + (0,0)").with_d("K + (0,0)")).unwrap();
        let c = classify_v(&inst).unwrap();
        assert!(c.matched);
        assert_eq!(c.computed, ScrollType::new(vec![3, 0, 0]));
    }

    #[test]
    fn sampling_checks() {
        let inst = build_instance(&InstanceSpec::new(10007, 8, 5)).unwrap();
        let mut rng = inst.spec.rng(2);
        assert_eq!(trisecant_scan(&inst, 100, &mut rng).unwrap(), 0);
        let q = compute_quadrics(&inst, &mut rng).unwrap();
        assert_eq!(s_cap_v_exceptions(&inst, &q, 50, &mut rng).unwrap(), 0);
    }

    #[test]
    fn report_is_reproducible() {
        let inst = build_instance(&InstanceSpec::new(10007, 9, 6)).unwrap();
        let mut a = verify_ideal_sum(&inst).unwrap();
        let mut b = verify_ideal_sum(&build_instance(&InstanceSpec::new(10007, 9, 6)).unwrap()).unwrap();
        a.timings = Timings::default();
        b.timings = Timings::default();
        assert_eq!(a, b);
        let json = serde_json::to_string(&a).unwrap();
        assert!(json.contains("\"q_S\":15"));
        assert_eq!(serde_json::from_str::<Report>(&json).unwrap(), a);
    }
}
