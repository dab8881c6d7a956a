//! Exact piecewise-polynomial distribution functions and their tails.
//!
//! A [`DistFn`] is stored as a list of pieces over half-open intervals
//! `(b_k, b_{k+1}]`, starting at `b_0 = 0` and ending with an unbounded
//! constant piece. The value at `0` is always `0`. Because every interval is
//! open on the left and closed on the right, evaluating at a breakpoint
//! returns the limit from the left, so left-continuity holds by construction.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::poly::{isolate_roots, rational_between, Poly, RealRoot};
use crate::rational::{format_rational, int, midpoint, serde_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DistFnError {
    #[error("negative abscissa {0}")]
    NegativeAbscissa(String),
    #[error("parameter must be positive, got {0}")]
    NonPositiveParameter(String),
    #[error("a distribution function needs at least one piece")]
    NoPieces,
    #[error("first piece must start at 0, starts at {0}")]
    BadStart(String),
    #[error("pieces are not contiguous at {0}")]
    Gap(String),
    #[error("piece ({0}, {1}] is empty")]
    EmptyPiece(String, String),
    #[error("only the last piece may be unbounded")]
    EarlyUnbounded,
    #[error("the last piece must be unbounded")]
    BoundedTail,
    #[error("the unbounded piece must be constant")]
    NonConstantTail,
}

/// One polynomial piece on `(start, end]`; `end = None` means `(start, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Piece {
    pub start: Rational,
    pub end: Option<Rational>,
    pub poly: Poly,
}

impl Piece {
    fn contains(&self, x: &Rational) -> bool {
        x > &self.start && self.end.as_ref().is_none_or(|e| x <= e)
    }
}

/// A distribution function in canonical form (adjacent pieces with equal
/// polynomials are merged), so structural equality is pointwise equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistFn {
    pieces: Vec<Piece>,
}

impl DistFn {
    /// Builds a function from raw pieces. Only the piece structure is
    /// checked here; monotonicity, range and supremum are the business of
    /// [`DistFn::validate`].
    pub fn from_pieces(pieces: Vec<Piece>) -> Result<Self, DistFnError> {
        let first = pieces.first().ok_or(DistFnError::NoPieces)?;
        if !first.start.is_zero() {
            return Err(DistFnError::BadStart(format_rational(&first.start)));
        }
        for (k, piece) in pieces.iter().enumerate() {
            let last = k + 1 == pieces.len();
            match (&piece.end, last) {
                (Some(end), false) => {
                    if end <= &piece.start {
                        return Err(DistFnError::EmptyPiece(
                            format_rational(&piece.start),
                            format_rational(end),
                        ));
                    }
                    if &pieces[k + 1].start != end {
                        return Err(DistFnError::Gap(format_rational(end)));
                    }
                }
                (Some(_), true) => return Err(DistFnError::BoundedTail),
                (None, false) => return Err(DistFnError::EarlyUnbounded),
                (None, true) => {
                    if !piece.poly.is_constant() {
                        return Err(DistFnError::NonConstantTail);
                    }
                }
            }
        }
        Ok(Self::canonical(pieces))
    }

    fn canonical(pieces: Vec<Piece>) -> Self {
        let mut merged: Vec<Piece> = Vec::with_capacity(pieces.len());
        for piece in pieces {
            match merged.last_mut() {
                Some(prev) if prev.poly == piece.poly => prev.end = piece.end,
                _ => merged.push(piece),
            }
        }
        DistFn { pieces: merged }
    }

    /// `0` on `[0, a]`, `1` on `(a, ∞)`.
    pub fn step(a: &Rational) -> Result<Self, DistFnError> {
        if !a.is_positive() {
            return Err(DistFnError::NonPositiveParameter(format_rational(a)));
        }
        Ok(Self::canonical(vec![
            Piece {
                start: Rational::zero(),
                end: Some(a.clone()),
                poly: Poly::zero(),
            },
            Piece {
                start: a.clone(),
                end: None,
                poly: Poly::constant(Rational::one()),
            },
        ]))
    }

    /// `x / d` on `(0, d)`, `1` on `[d, ∞)`.
    pub fn ramp(d: &Rational) -> Result<Self, DistFnError> {
        if !d.is_positive() {
            return Err(DistFnError::NonPositiveParameter(format_rational(d)));
        }
        Ok(Self::canonical(vec![
            Piece {
                start: Rational::zero(),
                end: Some(d.clone()),
                poly: Poly::linear(Rational::zero(), d.recip()),
            },
            Piece {
                start: d.clone(),
                end: None,
                poly: Poly::constant(Rational::one()),
            },
        ]))
    }

    /// The distribution of a distance that is surely zero: `1` on `(0, ∞)`.
    pub fn one() -> Self {
        DistFn {
            pieces: vec![Piece {
                start: Rational::zero(),
                end: None,
                poly: Poly::constant(Rational::one()),
            }],
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// The piece whose interval contains `x > 0`.
    pub fn piece_at(&self, x: &Rational) -> &Piece {
        debug_assert!(x.is_positive());
        let k = self
            .pieces
            .partition_point(|p| p.end.as_ref().is_some_and(|e| e < x));
        debug_assert!(self.pieces[k].contains(x));
        &self.pieces[k]
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, DistFnError> {
        if x.is_negative() {
            return Err(DistFnError::NegativeAbscissa(format_rational(x)));
        }
        Ok(self.value(x))
    }

    /// Evaluation for callers that already know `x ≥ 0`; negative
    /// abscissae read as `0`.
    pub(crate) fn value(&self, x: &Rational) -> Rational {
        if !x.is_positive() {
            return Rational::zero();
        }
        self.piece_at(x).poly.eval(x)
    }

    /// All interval endpoints, `0` included, strictly increasing.
    pub fn breakpoints(&self) -> Vec<Rational> {
        std::iter::once(Rational::zero())
            .chain(self.pieces.iter().filter_map(|p| p.end.clone()))
            .collect()
    }

    /// The value on the unbounded piece, which is also the supremum of a
    /// nondecreasing function.
    pub fn final_value(&self) -> Rational {
        self.pieces.last().unwrap().poly.constant_term()
    }

    pub fn tail(&self) -> TailFn {
        TailFn { base: self.clone() }
    }

    /// Pointwise product.
    pub fn multiply(&self, other: &DistFn) -> DistFn {
        let mut cuts = self.breakpoints();
        cuts.extend(other.breakpoints());
        cuts.sort();
        cuts.dedup();
        let mut pieces = Vec::with_capacity(cuts.len());
        for (k, start) in cuts.iter().enumerate() {
            let end = cuts.get(k + 1).cloned();
            let probe = match &end {
                Some(e) => midpoint(start, e),
                None => start + int(1),
            };
            let poly = &self.piece_at(&probe).poly * &other.piece_at(&probe).poly;
            pieces.push(Piece {
                start: start.clone(),
                end,
                poly,
            });
        }
        Self::canonical(pieces)
    }

    /// Checks the defining properties of a distribution function and
    /// reports every violation with a concrete witness.
    pub fn validate(&self) -> DistFnReport {
        let mut violations = Vec::new();
        let mut range_hit = false;
        for (k, piece) in self.pieces.iter().enumerate() {
            // monotone inside the piece
            if let Some(end) = &piece.end {
                if let Some(v) = decreasing_inside(&piece.poly, &piece.start, end) {
                    violations.push(v);
                }
                for x in interior_probes(&piece.poly, &piece.start, end) {
                    let value = piece.poly.eval(&x);
                    if !range_hit && !in_unit(&value) {
                        violations.push(DistFnViolation::OutOfRange { x, value });
                        range_hit = true;
                    }
                }
            }
            // right limit at the start of the piece
            let limit = piece.poly.eval(&piece.start);
            if !range_hit && limit.is_negative() {
                let x = approach_right(&piece.poly, &piece.start, piece.end.as_ref(), |v| {
                    v.is_negative()
                });
                let value = piece.poly.eval(&x);
                violations.push(DistFnViolation::OutOfRange { x, value });
                range_hit = true;
            }
            // jump down across the breakpoint
            if k > 0 {
                let left = self.pieces[k - 1].poly.eval(&piece.start);
                if limit < left {
                    let x2 =
                        approach_right(&piece.poly, &piece.start, piece.end.as_ref(), |v| v < &left);
                    violations.push(DistFnViolation::Decreasing {
                        x1: piece.start.clone(),
                        x2,
                    });
                }
            }
        }
        let sup = self.final_value();
        if !range_hit && !in_unit(&sup) {
            let x = self.pieces.last().unwrap().start.clone() + int(1);
            violations.push(DistFnViolation::OutOfRange { x, value: sup.clone() });
        }
        if !sup.is_one() {
            violations.push(DistFnViolation::Supremum { value: sup });
        }
        DistFnReport { violations }
    }

    /// Short name for the common shapes, the piece list otherwise.
    pub fn describe(&self) -> String {
        if *self == DistFn::one() {
            return "one".into();
        }
        if self.pieces.len() == 2 {
            let a = self.pieces[0].end.clone().unwrap();
            if DistFn::step(&a).is_ok_and(|s| s == *self) {
                return format!("step({})", format_rational(&a));
            }
            if DistFn::ramp(&a).is_ok_and(|s| s == *self) {
                return format!("ramp({})", format_rational(&a));
            }
        }
        self.to_string()
    }

    pub fn to_records(&self) -> Vec<PieceRecord> {
        self.pieces
            .iter()
            .map(|p| PieceRecord {
                from: p.start.clone(),
                to: p.end.clone(),
                poly: p.poly.clone(),
            })
            .collect()
    }

    pub fn from_records(records: Vec<PieceRecord>) -> Result<Self, DistFnError> {
        Self::from_pieces(
            records
                .into_iter()
                .map(|r| Piece {
                    start: r.from,
                    end: r.to,
                    poly: r.poly,
                })
                .collect(),
        )
    }
}

impl fmt::Display for DistFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|p| {
                let end = p.end.as_ref().map_or("inf".to_string(), format_rational);
                format!("({}, {}]: {}", format_rational(&p.start), end, p.poly)
            })
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

impl Serialize for DistFn {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

/// Wire form of a piece: `{"from": "0", "to": "1", "poly": ["0", "1"]}`,
/// with `"to": null` for the unbounded piece.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceRecord {
    #[serde(with = "serde_rational")]
    pub from: Rational,
    #[serde(with = "opt_rational")]
    pub to: Option<Rational>,
    pub poly: Poly,
}

mod opt_rational {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.serialize_str(&format_rational(x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        #[derive(Deserialize)]
        struct Wrap(#[serde(with = "serde_rational")] Rational);
        Ok(Option::<Wrap>::deserialize(d)?.map(|w| w.0))
    }
}

/// `G = 1 - F`, kept as its source function.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TailFn {
    base: DistFn,
}

impl TailFn {
    pub fn base(&self) -> &DistFn {
        &self.base
    }

    pub fn eval(&self, x: &Rational) -> Result<Rational, DistFnError> {
        Ok(Rational::one() - self.base.eval(x)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum DistFnViolation {
    OutOfRange {
        #[serde(with = "serde_rational")]
        x: Rational,
        #[serde(with = "serde_rational")]
        value: Rational,
    },
    /// `f(x1) > f(x2)` although `x1 < x2`.
    Decreasing {
        #[serde(with = "serde_rational")]
        x1: Rational,
        #[serde(with = "serde_rational")]
        x2: Rational,
    },
    Supremum {
        #[serde(with = "serde_rational")]
        value: Rational,
    },
}

impl fmt::Display for DistFnViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistFnViolation::OutOfRange { x, value } => write!(
                f,
                "value {} at x = {} is outside [0, 1]",
                format_rational(value),
                format_rational(x)
            ),
            DistFnViolation::Decreasing { x1, x2 } => write!(
                f,
                "decreasing between x1 = {} and x2 = {}",
                format_rational(x1),
                format_rational(x2)
            ),
            DistFnViolation::Supremum { value } => {
                write!(f, "supremum is {}, not 1", format_rational(value))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistFnReport {
    pub violations: Vec<DistFnViolation>,
}

impl DistFnReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

fn in_unit(v: &Rational) -> bool {
    !v.is_negative() && v <= &Rational::one()
}

/// Rational probes inside `(start, end)`: one per sign region of the
/// derivative, plus the end itself.
fn interior_probes(poly: &Poly, start: &Rational, end: &Rational) -> Vec<Rational> {
    let mut probes = region_samples(&poly.derivative(), start, end);
    probes.push(end.clone());
    probes
}

/// One rational in each open gap between consecutive roots of `p` in
/// `(start, end)`.
fn region_samples(p: &Poly, start: &Rational, end: &Rational) -> Vec<Rational> {
    let mut marks = vec![RealRoot::Exact(start.clone())];
    marks.extend(isolate_roots(p, start, end));
    marks.push(RealRoot::Exact(end.clone()));
    let mut out = Vec::with_capacity(marks.len());
    for k in 0..marks.len() - 1 {
        let (lo, hi) = marks.split_at_mut(k + 1);
        out.push(rational_between(&mut lo[k], &mut hi[0]));
    }
    out
}

/// A witness pair where the polynomial decreases inside `(start, end]`.
fn decreasing_inside(poly: &Poly, start: &Rational, end: &Rational) -> Option<DistFnViolation> {
    let d = poly.derivative();
    if d.is_zero() {
        return None;
    }
    let mut marks = vec![RealRoot::Exact(start.clone())];
    marks.extend(isolate_roots(&d, start, end));
    marks.push(RealRoot::Exact(end.clone()));
    for k in 0..marks.len() - 1 {
        let (lo, hi) = marks.split_at_mut(k + 1);
        let c = rational_between(&mut lo[k], &mut hi[0]);
        if d.sign_at(&c) == Ordering::Less {
            let x2 = rational_between(&mut RealRoot::Exact(c.clone()), &mut hi[0]);
            return Some(DistFnViolation::Decreasing { x1: c, x2 });
        }
    }
    None
}

/// Walks toward `start` from the right until `pred(poly(x))` holds.
/// Callers guarantee the predicate holds in the right-limit at `start`.
fn approach_right(
    poly: &Poly,
    start: &Rational,
    end: Option<&Rational>,
    pred: impl Fn(&Rational) -> bool,
) -> Rational {
    let mut delta = match end {
        Some(e) => e - start,
        None => int(1),
    };
    loop {
        let x = start + &delta;
        if pred(&poly.eval(&x)) {
            return x;
        }
        delta /= int(2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn step_is_left_continuous() {
        let f = DistFn::step(&int(1)).unwrap();
        assert_eq!(f.eval(&int(1)).unwrap(), int(0));
        assert_eq!(f.eval(&rat(3, 2)).unwrap(), int(1));
        let g = DistFn::step(&int(5)).unwrap();
        assert_eq!(g.eval(&int(5)).unwrap(), int(0));
        assert_eq!(g.eval(&int(6)).unwrap(), int(1));
    }

    #[test]
    fn value_at_zero_is_zero() {
        for f in [
            DistFn::one(),
            DistFn::step(&int(2)).unwrap(),
            DistFn::ramp(&int(3)).unwrap(),
        ] {
            assert_eq!(f.eval(&int(0)).unwrap(), int(0));
            assert_eq!(f.tail().eval(&int(0)).unwrap(), int(1));
        }
    }

    #[test]
    fn ramp_values() {
        let r1 = DistFn::ramp(&int(1)).unwrap();
        assert_eq!(r1.eval(&rat(1, 4)).unwrap(), rat(1, 4));
        assert_eq!(r1.tail().eval(&rat(1, 4)).unwrap(), rat(3, 4));
        assert_eq!(r1.eval(&int(1)).unwrap(), int(1));
        let r3 = DistFn::ramp(&int(3)).unwrap();
        assert_eq!(r3.eval(&int(1)).unwrap(), rat(1, 3));
        assert_eq!(r3.eval(&int(3)).unwrap(), int(1));
    }

    #[test]
    fn tail_of_step_vanishes_after_threshold() {
        let f = DistFn::step(&int(1)).unwrap();
        assert_eq!(f.tail().eval(&int(2)).unwrap(), int(0));
    }

    #[test]
    fn one_is_a_single_piece() {
        let f = DistFn::one();
        assert_eq!(f.pieces().len(), 1);
        assert_eq!(f.eval(&rat(1, 1000)).unwrap(), int(1));
        assert_eq!(f.breakpoints(), vec![int(0)]);
    }

    #[test]
    fn negative_abscissa_and_parameters_rejected() {
        let f = DistFn::one();
        assert!(matches!(f.eval(&int(-1)), Err(DistFnError::NegativeAbscissa(_))));
        assert!(f.tail().eval(&int(-1)).is_err());
        assert!(DistFn::step(&int(0)).is_err());
        assert!(DistFn::ramp(&int(-2)).is_err());
    }

    #[test]
    fn products() {
        let s1 = DistFn::step(&int(1)).unwrap();
        let s2 = DistFn::step(&int(2)).unwrap();
        assert_eq!(s1.multiply(&s2), s2);
        let r1 = DistFn::ramp(&int(1)).unwrap();
        assert_eq!(r1.multiply(&r1).eval(&rat(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(r1.multiply(&DistFn::one()), r1);
        let r3 = DistFn::ramp(&int(3)).unwrap();
        assert_eq!(s1.multiply(&r3).breakpoints(), vec![int(0), int(1), int(3)]);
    }

    #[test]
    fn breakpoints_of_basic_shapes() {
        assert_eq!(DistFn::step(&int(1)).unwrap().breakpoints(), vec![int(0), int(1)]);
        assert_eq!(DistFn::ramp(&int(3)).unwrap().breakpoints(), vec![int(0), int(3)]);
    }

    #[test]
    fn basic_shapes_validate() {
        assert!(DistFn::step(&int(1)).unwrap().validate().is_valid());
        assert!(DistFn::ramp(&int(3)).unwrap().validate().is_valid());
        assert!(DistFn::one().validate().is_valid());
        let r = DistFn::ramp(&int(2)).unwrap();
        assert!(r.multiply(&r).validate().is_valid());
    }

    #[test]
    fn decreasing_segment_is_reported_with_witness() {
        // 1 - x on (0, 1/2], then 1
        let f = DistFn::from_pieces(vec![
            Piece {
                start: int(0),
                end: Some(rat(1, 2)),
                poly: Poly::linear(int(1), int(-1)),
            },
            Piece {
                start: rat(1, 2),
                end: None,
                poly: Poly::constant(int(1)),
            },
        ])
        .unwrap();
        let report = f.validate();
        let (x1, x2) = report
            .violations
            .iter()
            .find_map(|v| match v {
                DistFnViolation::Decreasing { x1, x2 } => Some((x1.clone(), x2.clone())),
                _ => None,
            })
            .expect("decreasing witness");
        assert!(x1 < x2);
        assert!(f.eval(&x1).unwrap() > f.eval(&x2).unwrap());
    }

    #[test]
    fn downward_jump_and_bad_supremum() {
        let f = DistFn::from_pieces(vec![
            Piece {
                start: int(0),
                end: Some(int(1)),
                poly: Poly::constant(rat(1, 2)),
            },
            Piece {
                start: int(1),
                end: None,
                poly: Poly::constant(rat(1, 4)),
            },
        ])
        .unwrap();
        let report = f.validate();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, DistFnViolation::Decreasing { .. })));
        assert!(report
            .violations
            .contains(&DistFnViolation::Supremum { value: rat(1, 4) }));
    }

    #[test]
    fn structural_errors() {
        assert_eq!(DistFn::from_pieces(vec![]), Err(DistFnError::NoPieces));
        let bounded = vec![Piece {
            start: int(0),
            end: Some(int(1)),
            poly: Poly::zero(),
        }];
        assert_eq!(DistFn::from_pieces(bounded), Err(DistFnError::BoundedTail));
        let sloped = vec![Piece {
            start: int(0),
            end: None,
            poly: Poly::x(),
        }];
        assert_eq!(DistFn::from_pieces(sloped), Err(DistFnError::NonConstantTail));
    }

    #[test]
    fn canonical_form_merges_equal_pieces() {
        let f = DistFn::from_pieces(vec![
            Piece {
                start: int(0),
                end: Some(int(1)),
                poly: Poly::zero(),
            },
            Piece {
                start: int(1),
                end: Some(int(2)),
                poly: Poly::zero(),
            },
            Piece {
                start: int(2),
                end: None,
                poly: Poly::constant(int(1)),
            },
        ])
        .unwrap();
        assert_eq!(f, DistFn::step(&int(2)).unwrap());
        assert_eq!(f.describe(), "step(2)");
    }

    #[test]
    fn records_round_trip() {
        let f = DistFn::ramp(&rat(3, 2)).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(
            json,
            r#"[{"from":"0","to":"3/2","poly":["0","2/3"]},{"from":"3/2","to":null,"poly":["1"]}]"#
        );
        let back: Vec<PieceRecord> = serde_json::from_str(&json).unwrap();
        assert_eq!(DistFn::from_records(back).unwrap(), f);
    }
}
