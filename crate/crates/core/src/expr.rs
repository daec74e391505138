//! Divisor expressions: terms `k*K`, `k*inf`, `(x,y)`, `k*(x,y)` and
//! `rand(n)` joined by `+`, e.g. `2*K + (0,0) + rand(1)`. `K` means `2*inf`.

use std::fmt;

use rand::Rng;

use crate::curve::{Curve, Divisor, Point};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Canonical(i64),
    Infinity(i64),
    Point { k: i64, x: i64, y: i64 },
    Random(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivExpr {
    pub terms: Vec<Term>,
}

impl DivExpr {
    pub fn parse(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty divisor expression".into()));
        }
        let mut terms = Vec::new();
        for part in split_top_level(&compact)? {
            terms.push(parse_term(part)?);
        }
        Ok(Self { terms })
    }

    pub fn degree(&self) -> i64 {
        self.terms
            .iter()
            .map(|t| match *t {
                Term::Canonical(k) => 2 * k,
                Term::Infinity(k) | Term::Point { k, .. } => k,
                Term::Random(n) => n as i64,
            })
            .sum()
    }

    /// Expands to a point divisor. `rand(n)` draws points distinct from each
    /// other and from every explicit point.
    pub fn resolve<R: Rng>(&self, curve: &Curve, rng: &mut R) -> Result<Divisor> {
        let fld = curve.field();
        let mut div = Divisor::zero();
        let mut nrand = 0;
        for t in &self.terms {
            match *t {
                Term::Canonical(k) => div.add_point(Point::Infinity, 2 * k),
                Term::Infinity(k) => div.add_point(Point::Infinity, k),
                Term::Point { k, x, y } => {
                    let pt = Point::Affine { x: fld.from_i64(x), y: fld.from_i64(y) };
                    if !curve.contains(&pt) {
                        return Err(Error::NotOnCurve(fld.from_i64(x), fld.from_i64(y)));
                    }
                    div.add_point(pt, k);
                }
                Term::Random(n) => nrand += n,
            }
        }
        if nrand > 0 {
            let explicit: Vec<Point> = div.support().copied().collect();
            let mut budget = 0;
            let mut picked = 0;
            while picked < nrand {
                let pts = curve.random_distinct_points(1, rng)?;
                if !explicit.contains(&pts[0]) && div.multiplicity(&pts[0]) == 0 {
                    div.add_point(pts[0], 1);
                    picked += 1;
                } else {
                    budget += 1;
                    if budget > 10_000 {
                        return Err(Error::InsufficientPoints);
                    }
                }
            }
        }
        div.check_multiplicities()?;
        Ok(div)
    }
}

impl fmt::Display for DivExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|t| match *t {
                Term::Canonical(k) => format!("{k}*K"),
                Term::Infinity(k) => format!("{k}*inf"),
                Term::Point { k: 1, x, y } => format!("({x},{y})"),
                Term::Point { k, x, y } => format!("{k}*({x},{y})"),
                Term::Random(n) => format!("rand({n})"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Renders a point divisor in the expression grammar; affine points are
/// written with their reduced coordinates.
pub fn divisor_expr(d: &Divisor) -> String {
    if d.degree() == 0 && d.terms().next().is_none() {
        return "0*inf".into();
    }
    let parts: Vec<String> = d
        .terms()
        .map(|(pt, &m)| match (*pt, m) {
            (Point::Infinity, m) => format!("{m}*inf"),
            (Point::Affine { x, y }, 1) => format!("({x},{y})"),
            (Point::Affine { x, y }, m) => format!("{m}*({x},{y})"),
        })
        .collect();
    parts.join(" + ")
}

/// Splits on `+` outside parentheses.
fn split_top_level(s: &str) -> Result<Vec<&str>> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced ')' in {s:?}")));
                }
            }
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced '(' in {s:?}")));
    }
    out.push(&s[start..]);
    if out.iter().any(|p| p.is_empty()) {
        return Err(Error::Parse(format!("empty term in {s:?}")));
    }
    Ok(out)
}

fn parse_int<T: std::str::FromStr>(s: &str, what: &str) -> Result<T> {
    s.parse().map_err(|_| Error::Parse(format!("bad {what} {s:?}")))
}

fn parse_term(s: &str) -> Result<Term> {
    let (k, body) = match s.split_once('*') {
        Some((k, body)) => {
            let k: i64 = parse_int(k, "coefficient")?;
            if k < 0 {
                return Err(Error::Parse(format!("negative coefficient in {s:?}")));
            }
            (k, body)
        }
        None => (1, s),
    };
    match body {
        "K" => return Ok(Term::Canonical(k)),
        "inf" => return Ok(Term::Infinity(k)),
        _ => {}
    }
    if let Some(inner) = body.strip_prefix("rand(").and_then(|r| r.strip_suffix(')')) {
        if k != 1 {
            return Err(Error::Parse(format!("rand() takes no coefficient: {s:?}")));
        }
        return Ok(Term::Random(parse_int(inner, "count")?));
    }
    if let Some(inner) = body.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected (x,y), got {body:?}")))?;
        return Ok(Term::Point { k, x: parse_int(x, "coordinate")?, y: parse_int(y, "coordinate")? });
    }
    Err(Error::Parse(format!("unknown term {s:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parses_terms() {
        let e = DivExpr::parse("2*K + (0,0) + rand(1)").unwrap();
        assert_eq!(
            e.terms,
            vec![Term::Canonical(2), Term::Point { k: 1, x: 0, y: 0 }, Term::Random(1)]
        );
        assert_eq!(e.degree(), 6);
        assert_eq!(DivExpr::parse("6*inf").unwrap().terms, vec![Term::Infinity(6)]);
        assert_eq!(DivExpr::parse("K+inf").unwrap().degree(), 3);
        assert_eq!(
            DivExpr::parse("2*(2,-4)").unwrap().terms,
            vec![Term::Point { k: 2, x: 2, y: -4 }]
        );
    }

    #[test]
    fn rejects_malformed() {
        for bad in ["", "2*", "K++inf", "(1,2", "rand(x)", "3*rand(1)", "-1*K", "Q", "(1)"] {
            assert!(matches!(DivExpr::parse(bad), Err(Error::Parse(_))), "{bad:?}");
        }
    }

    #[test]
    fn display_round_trips() {
        let e = DivExpr::parse("2*K+3*inf+(2,3)+2*(0,0)+rand(2)").unwrap();
        assert_eq!(DivExpr::parse(&e.to_string()).unwrap(), e);
    }

    #[test]
    fn divisor_expr_round_trips() {
        let c = Curve::default_for(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = DivExpr::parse("3*K + 2*(2,3) + (0,0) + inf").unwrap().resolve(&c, &mut rng).unwrap();
        let again = DivExpr::parse(&divisor_expr(&d)).unwrap().resolve(&c, &mut rng).unwrap();
        assert_eq!(again, d);
    }

    #[test]
    fn resolves_on_curve() {
        let c = Curve::default_for(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let d = DivExpr::parse("K + (2,3) + (2,-3)").unwrap().resolve(&c, &mut rng).unwrap();
        assert_eq!(d.degree(), 4);
        assert_eq!(d.multiplicity(&Point::Affine { x: 2, y: 4 }), 1);
        let off = DivExpr::parse("(2,2)").unwrap().resolve(&c, &mut rng);
        assert_eq!(off, Err(Error::NotOnCurve(2, 2)));
        let r = DivExpr::parse("(0,0) + rand(3)").unwrap().resolve(&c, &mut rng).unwrap();
        assert_eq!(r.degree(), 4);
        assert!(r.terms().all(|(_, &m)| m == 1));
        let over = DivExpr::parse("3*(0,0)").unwrap().resolve(&c, &mut rng);
        assert_eq!(over, Err(Error::UnsupportedMultiplicity(3)));
    }
}
