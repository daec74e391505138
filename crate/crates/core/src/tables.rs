//! Instances realizing each row of the scroll-type classifications: the
//! two `g^1_2` rows per degree, the mod-3 and basepoint `g^1_3` rows, and
//! the ten rows of the degree-7 table.
//!
//! Every case is emitted as an [`InstanceSpec`] with explicit points, so a
//! failing row can be replayed verbatim.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::curve::{Curve, Divisor, Point};
use crate::error::{Error, Result};
use crate::expr::divisor_expr;
use crate::instance::{build_instance, realize_class, InstanceSpec};
use crate::jacobian::DivClass;
use crate::scroll::{Ruling, ScrollType};
use crate::series::class_basepoint;
use crate::verify::{canonical_series, classify_s, classify_v};

/// What a degree-1 class is required to be.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Column {
    Empty,
    NonEmpty,
    Is(Point),
    NonEmptyNot(Point),
}

impl Column {
    fn holds(&self, curve: &Curve, cls: &DivClass) -> bool {
        let pt = curve.degree_one_point(cls);
        match self {
            Column::Empty => pt.is_none(),
            Column::NonEmpty => pt.is_some(),
            Column::Is(q) => pt == Some(*q),
            Column::NonEmptyNot(q) => pt.is_some() && pt != Some(*q),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Which {
    S,
    V,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCase {
    pub table: String,
    pub which: Which,
    pub row: String,
    pub spec: InstanceSpec,
    pub expected: ScrollType,
    /// `|H - 2D|` and `|H - 3K|` for the degree-7 table.
    pub columns: Option<(Column, Column)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOutcome {
    pub case: TableCase,
    pub predicted_row: String,
    pub predicted: ScrollType,
    pub computed: ScrollType,
    pub geometric: ScrollType,
    pub columns_hold: bool,
    pub pass: bool,
}

/// Classifies a case by the membership criteria, by the `h^0` profile and
/// by intersecting fibers, and compares all three with the row.
pub fn run_case(case: &TableCase) -> Result<CaseOutcome> {
    let inst = build_instance(&case.spec)?;
    let c = match case.which {
        Which::S => classify_s(&inst),
        Which::V => classify_v(&inst)?,
    };
    let k = canonical_series(&inst.curve)?;
    let pencil = match case.which {
        Which::S => &k,
        Which::V => &inst.pencil,
    };
    let mut rng = inst.spec.rng(3);
    let geometric = Ruling::new(&inst.emb, pencil)?.geometric_type(&mut rng)?;
    let columns_hold = match &case.columns {
        None => true,
        Some((c2d, c3k)) => {
            let curve = &inst.curve;
            let h2d = curve.sub_classes(inst.h_cls(), &curve.scale_class(inst.d_cls(), 2));
            let h3k = curve.sub_classes(inst.h_cls(), &curve.scale_class(&curve.canonical_class(), 3));
            c2d.holds(curve, &h2d) && c3k.holds(curve, &h3k)
        }
    };
    let pass = c.row == case.row
        && c.predicted == case.expected
        && c.computed == case.expected
        && geometric == case.expected
        && columns_hold;
    Ok(CaseOutcome {
        case: case.clone(),
        predicted_row: c.row,
        predicted: c.predicted,
        computed: c.computed,
        geometric,
        columns_hold,
        pass,
    })
}

struct Builder {
    curve: Curve,
    p: u64,
    d: usize,
    seed: u64,
    rng: ChaCha8Rng,
}

fn pts(ps: &[Point]) -> Divisor {
    Divisor::from_terms(ps.iter().map(|&q| (q, 1)))
}

impl Builder {
    fn new(p: u64, d: usize, seed: u64) -> Result<Self> {
        Ok(Self { curve: Curve::default_for(p)?, p, d, seed, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    fn points(&mut self, n: usize) -> Result<Vec<Point>> {
        self.curve.random_distinct_points(n, &mut self.rng)
    }

    fn non_weierstrass(&mut self) -> Point {
        loop {
            let q = self.curve.random_affine_point(&mut self.rng);
            if !q.is_weierstrass() {
                return q;
            }
        }
    }

    fn cls(&self, d: &Divisor) -> Result<DivClass> {
        self.curve.class_of(d)
    }

    fn bp_free_d(&mut self) -> Result<Divisor> {
        loop {
            let d = pts(&self.points(3)?);
            if class_basepoint(&self.curve, &self.cls(&d)?).is_none() {
                return Ok(d);
            }
        }
    }

    fn realize(&mut self, cls: &DivClass) -> Result<Divisor> {
        realize_class(&self.curve, cls, &mut self.rng)
    }

    fn case(&self, table: &str, which: Which, row: &str, h: &Divisor, d: &Divisor, expected: Vec<i64>) -> TableCase {
        let spec = InstanceSpec::new(self.p, self.d, self.seed)
            .with_h(divisor_expr(h))
            .with_d(divisor_expr(d));
        TableCase {
            table: table.into(),
            which,
            row: row.into(),
            spec,
            expected: ScrollType::new(expected),
            columns: None,
        }
    }
}

/// Both `g^1_2` rows for degree `d`.
pub fn s_table_cases(p: u64, d: usize, seed: u64) -> Result<Vec<TableCase>> {
    let mut b = Builder::new(p, d, seed)?;
    let di = d as i64;
    let dd = b.bp_free_d()?;
    let c = &b.curve.clone();
    let mut out = Vec::new();
    if d % 2 == 0 {
        let q = b.non_weierstrass();
        let special = pts(&[q, c.involution(&q)]).plus(&Divisor::infinity(di - 2));
        out.push(b.case("S", Which::S, "even:H-((d-2)/2)K=K", &special, &dd, vec![di / 2, (di - 6) / 2]));
        let generic = loop {
            let qs = b.points(2)?;
            if qs[1] != c.involution(&qs[0]) {
                break pts(&qs).plus(&Divisor::infinity(di - 2));
            }
        };
        out.push(b.case("S", Which::S, "even:H-((d-2)/2)K=P+Q", &generic, &dd, vec![(di - 2) / 2, (di - 4) / 2]));
    } else {
        let special = pts(&b.points(1)?).plus(&Divisor::infinity(di - 1));
        out.push(b.case("S", Which::S, "odd:H-((d-3)/2)K=K+P", &special, &dd, vec![(di - 1) / 2, (di - 5) / 2]));
        let rs = b.bp_free_d()?;
        let generic = rs.plus(&Divisor::infinity(di - 3));
        out.push(b.case("S", Which::S, "odd:H-((d-3)/2)K=P+Q+R", &generic, &dd, vec![(di - 3) / 2, (di - 3) / 2]));
    }
    Ok(out)
}

/// The two mod-3 rows for basepoint-free `D` and the two basepoint rows
/// for degree `d`.
pub fn v_table_cases(p: u64, d: usize, seed: u64) -> Result<Vec<TableCase>> {
    let mut b = Builder::new(p, d, seed)?;
    let c = b.curve.clone();
    let di = d as i64;
    let mut out = Vec::new();

    let dd = b.bp_free_d()?;
    let dc = b.cls(&dd)?;
    let generic_h = loop {
        let h = pts(&b.points(d)?);
        let hc = b.cls(&h)?;
        let special = match d % 3 {
            0 => c.sub_classes(&hc, &c.scale_class(&dc, di / 3 - 1)) == dc,
            1 => c.is_effective(&c.sub_classes(&hc, &c.scale_class(&dc, (di - 1) / 3))),
            _ => c.sub_classes(&hc, &c.scale_class(&dc, (di - 2) / 3)) == c.canonical_class(),
        };
        if !special {
            break h;
        }
    };
    let (special_row, special_t, generic_row, generic_t, special_cls) = match d % 3 {
        0 => {
            let m = di / 3;
            (
                "mod3=0:H-((d-3)/3)D=D",
                vec![m, m - 2, m - 2],
                "mod3=0:H-((d-3)/3)D!=D",
                vec![m - 1, m - 1, m - 2],
                c.scale_class(&dc, m),
            )
        }
        1 => {
            let m = (di - 1) / 3;
            let q = b.points(1)?[0];
            (
                "mod3=1:|H-((d-1)/3)D|!=empty",
                vec![m, m - 1, m - 2],
                "mod3=1:|H-((d-1)/3)D|=empty",
                vec![m - 1, m - 1, m - 1],
                c.add_classes(&c.scale_class(&dc, m), &c.point_class(&q)),
            )
        }
        _ => {
            let m = (di - 2) / 3;
            (
                "mod3=2:H-((d-2)/3)D=K",
                vec![m, m, m - 2],
                "mod3=2:H-((d-2)/3)D=P+Q",
                vec![m, m - 1, m - 1],
                c.add_classes(&c.scale_class(&dc, m), &c.canonical_class()),
            )
        }
    };
    let special_h = b.realize(&special_cls)?;
    out.push(b.case("mod3", Which::V, special_row, &special_h, &dd, special_t));
    out.push(b.case("mod3", Which::V, generic_row, &generic_h, &dd, generic_t));

    // D = K + P
    let p0 = b.non_weierstrass();
    let bp_d = pts(&[p0]).plus(&Divisor::infinity(2));
    let generic_h = loop {
        let h = pts(&b.points(d)?);
        let m = if d % 2 == 0 { (di - 2) / 2 } else { (di - 1) / 2 };
        let rest = c.sub_classes(
            &c.sub_classes(&b.cls(&h)?, &c.scale_class(&c.canonical_class(), m)),
            &c.point_class(&p0),
        );
        if !c.is_effective(&rest) {
            break h;
        }
    };
    if d % 2 == 0 {
        let q = loop {
            let q = b.points(1)?[0];
            if q != p0 {
                break q;
            }
        };
        let h = pts(&[p0, q]).plus(&Divisor::infinity(di - 2));
        out.push(b.case(
            "basepoint",
            Which::V,
            "basepoint:even:|H-((d-2)/2)K-P|!=empty",
            &h,
            &bp_d,
            vec![(di - 2) / 2, (di - 6) / 2, 0],
        ));
        out.push(b.case(
            "basepoint",
            Which::V,
            "basepoint:even:|H-((d-2)/2)K-P|=empty",
            &generic_h,
            &bp_d,
            vec![(di - 4) / 2, (di - 4) / 2, 0],
        ));
    } else {
        let h = pts(&[p0]).plus(&Divisor::infinity(di - 1));
        out.push(b.case(
            "basepoint",
            Which::V,
            "basepoint:odd:|H-((d-1)/2)K-P|!=empty",
            &h,
            &bp_d,
            vec![(di - 1) / 2, (di - 7) / 2, 0],
        ));
        out.push(b.case(
            "basepoint",
            Which::V,
            "basepoint:odd:|H-((d-1)/2)K-P|=empty",
            &generic_h,
            &bp_d,
            vec![(di - 3) / 2, (di - 5) / 2, 0],
        ));
    }
    Ok(out)
}

/// The ten rows of the degree-7 table.
pub fn d7_table_cases(p: u64, seed: u64) -> Result<Vec<TableCase>> {
    let mut b = Builder::new(p, 7, seed)?;
    let c = b.curve.clone();
    let inf = |n| Divisor::infinity(n);
    let empty = |cls: &DivClass| !c.is_effective(cls);
    let mut out = Vec::new();
    let mut push = |b: &Builder, row: &str, h: &Divisor, d: &Divisor, t: Vec<i64>, cols: (Column, Column)| {
        let table_row = if class_basepoint(&c, &c.class_of(d).unwrap()).is_some() {
            if t == vec![3, 0, 0] {
                "basepoint:odd:|H-((d-1)/2)K-P|!=empty"
            } else {
                "basepoint:odd:|H-((d-1)/2)K-P|=empty"
            }
        } else if t == vec![1, 1, 1] {
            "mod3=1:|H-((d-1)/3)D|=empty"
        } else {
            "mod3=1:|H-((d-1)/3)D|!=empty"
        };
        let mut case = b.case("d7", Which::V, table_row, h, d, t);
        case.table = format!("d7:{row}");
        case.columns = Some(cols);
        out.push(case);
    };

    // 1: |D + 2K|
    let d1 = b.bp_free_d()?;
    push(&b, "1", &d1.plus(&inf(4)), &d1, vec![1, 1, 1], (Column::Empty, Column::Empty));

    // 2, 3, 4: |D + K + Q1 + Q2| by the emptiness of |D - Q1 - Q2| and
    // |D - Q1' - Q2'|
    let minus2 = |d: &Divisor, q1: Point, q2: Point| -> Result<DivClass> {
        Ok(c.sub_classes(&c.class_of(d)?, &c.class_of(&pts(&[q1, q2]))?))
    };
    let (d2, q) = loop {
        let q = b.points(2)?;
        if q[1] == c.involution(&q[0]) {
            continue;
        }
        let d = b.bp_free_d()?;
        let (i1, i2) = (c.involution(&q[0]), c.involution(&q[1]));
        if empty(&minus2(&d, q[0], q[1])?) && empty(&minus2(&d, i1, i2)?) && d.support().all(|x| !q.contains(x)) {
            break (d, q);
        }
    };
    let h2 = d2.plus(&pts(&q)).plus(&inf(2));
    push(&b, "2", &h2, &d2, vec![1, 1, 1], (Column::Empty, Column::Empty));

    let (d3, q) = loop {
        let q = b.points(3)?;
        if q[1] == c.involution(&q[0]) || q[2].is_weierstrass() {
            continue;
        }
        let d = pts(&[c.involution(&q[0]), c.involution(&q[1]), q[2]]);
        if class_basepoint(&c, &c.class_of(&d)?).is_none() && empty(&minus2(&d, q[0], q[1])?) {
            break (d, q);
        }
    };
    let h3 = d3.plus(&pts(&q[..2])).plus(&inf(2));
    push(&b, "3", &h3, &d3, vec![1, 1, 1], (Column::Empty, Column::NonEmpty));

    let (d4, q) = loop {
        let q = b.points(3)?;
        if q[1] == c.involution(&q[0]) {
            continue;
        }
        let d = pts(&q);
        let (i1, i2) = (c.involution(&q[0]), c.involution(&q[1]));
        if class_basepoint(&c, &c.class_of(&d)?).is_none() && empty(&minus2(&d, i1, i2)?) {
            break (d, q);
        }
    };
    let h4 = d4.plus(&pts(&q[..2])).plus(&inf(2));
    push(&b, "4", &h4, &d4, vec![2, 1, 0], (Column::NonEmpty, Column::Empty));

    // 5: both nonempty; Weierstrass Q1, Q2 make Q_i' = Q_i
    let ws = c.weierstrass_points();
    if ws.len() < 2 {
        return Err(Error::InsufficientPoints);
    }
    let (w1, w2) = (ws[0], ws[1]);
    let d5 = loop {
        let r = b.points(1)?[0];
        let d = pts(&[w1, w2, r]);
        if !r.is_weierstrass() && class_basepoint(&c, &c.class_of(&d)?).is_none() {
            break d;
        }
    };
    let h5 = d5.plus(&pts(&[w1, w2])).plus(&inf(2));
    push(&b, "5", &h5, &d5, vec![2, 1, 0], (Column::NonEmpty, Column::NonEmpty));

    // 6, 7: |2K + P + Q1 + Q2| with D = K + P
    let p6 = b.non_weierstrass();
    let d6 = pts(&[p6]).plus(&inf(2));
    let q = loop {
        let q = b.points(2)?;
        let ok = q[1] != c.involution(&q[0])
            && q.iter().all(|&x| x != p6 && x != c.involution(&p6));
        if ok {
            break q;
        }
    };
    let h6 = pts(&[p6, q[0], q[1]]).plus(&inf(4));
    push(&b, "6", &h6, &d6, vec![2, 1, 0], (Column::Empty, Column::Empty));

    let q2 = loop {
        let x = b.points(1)?[0];
        if x != p6 && x != c.involution(&p6) {
            break x;
        }
    };
    let h7 = pts(&[p6, c.involution(&p6), q2]).plus(&inf(4));
    push(&b, "7", &h7, &d6, vec![2, 1, 0], (Column::Empty, Column::NonEmptyNot(p6)));

    // 8, 9: |2K + 2P + Q|
    let q8 = loop {
        let x = b.points(1)?[0];
        if x != p6 && x != c.involution(&p6) {
            break x;
        }
    };
    let h8 = Divisor::from_terms([(p6, 2), (q8, 1)]).plus(&inf(4));
    push(&b, "8", &h8, &d6, vec![2, 1, 0], (Column::Is(q8), Column::Empty));

    let w = ws[0];
    let d9 = pts(&[w]).plus(&inf(2));
    let q9 = loop {
        let x = b.points(1)?[0];
        if x != w {
            break x;
        }
    };
    let h9 = Divisor::from_terms([(w, 2), (q9, 1)]).plus(&inf(4));
    push(&b, "9", &h9, &d9, vec![2, 1, 0], (Column::Is(q9), Column::Is(q9)));

    // 10: |3K + P|
    let h10 = pts(&[p6]).plus(&inf(6));
    push(&b, "10", &h10, &d6, vec![3, 0, 0], (Column::Is(c.involution(&p6)), Column::Is(p6)));

    debug_assert_eq!(out.len(), 10);
    Ok(out)
}

/// Stops at the first construction error.
pub fn run_cases(cases: &[TableCase]) -> Result<Vec<CaseOutcome>> {
    cases.iter().map(run_case).collect()
}
