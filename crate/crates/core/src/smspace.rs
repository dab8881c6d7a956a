//! Finite statistical metric spaces and the checks for their axioms and
//! for the Menger triangle inequality.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::distfn::DistFn;
use crate::poly::Poly;
use crate::rational::{format_rational, int, midpoint, serde_rational, Rational};
use crate::report::AxiomOutcome;
use crate::sets::Ground;
use crate::tnorm::TNorm;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("a space needs at least one point")]
    Empty,
    #[error("duplicate point label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown point `{0}`")]
    UnknownLabel(String),
    #[error("missing pair ({0}, {1})")]
    MissingPair(String, String),
    #[error("pair ({0}, {1}) given twice")]
    DuplicatePair(String, String),
    #[error("diagonal entry ({0}, {0}) must not be given; it is always `one`")]
    DiagonalEntry(String),
    #[error("distribution function for ({p}, {q}) is invalid: {reason}")]
    InvalidFn { p: String, q: String, reason: String },
    #[error("metric axiom violated: {0}")]
    MetricAxiom(String),
    #[error("table shape: {0}")]
    Shape(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    /// `F_pq = step(d(p, q))`
    Step,
    /// `F_pq = ramp(d(p, q))`
    Ramp,
}

/// A finite statistical metric space.
///
/// Distinct distribution functions are stored once and the pair table holds
/// indices into them; most checks work per distinct function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmSpace {
    labels: Vec<String>,
    fns: Vec<DistFn>,
    table: Vec<usize>,
}

/// `inf {x : F(x) = 1}`, with whether the infimum itself has value 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Threshold {
    Finite { at: Rational, attained: bool },
    Infinite,
}

impl Threshold {
    pub fn of(f: &DistFn) -> Threshold {
        let one = Poly::constant(Rational::one());
        for piece in f.pieces() {
            if piece.poly == one {
                return Threshold::Finite {
                    at: piece.start.clone(),
                    attained: false,
                };
            }
            if let Some(end) = &piece.end {
                if piece.poly.eval(end).is_one() {
                    return Threshold::Finite {
                        at: end.clone(),
                        attained: true,
                    };
                }
            }
        }
        Threshold::Infinite
    }

    pub fn value(&self) -> Option<&Rational> {
        match self {
            Threshold::Finite { at, .. } => Some(at),
            Threshold::Infinite => None,
        }
    }
}

impl fmt::Display for Threshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Threshold::Finite { at, .. } => f.write_str(&format_rational(at)),
            Threshold::Infinite => f.write_str("inf"),
        }
    }
}

impl SmSpace {
    /// Builds a space from the entries for every unordered pair of distinct
    /// points; the diagonal is filled with [`DistFn::one`].
    pub fn build(
        points: Vec<String>,
        entries: Vec<(String, String, DistFn)>,
    ) -> Result<SmSpace, SpaceError> {
        let index = label_index(&points)?;
        let n = points.len();
        let mut given: BTreeMap<(usize, usize), DistFn> = BTreeMap::new();
        for (p, q, f) in entries {
            let i = *index.get(&p).ok_or_else(|| SpaceError::UnknownLabel(p.clone()))?;
            let j = *index.get(&q).ok_or_else(|| SpaceError::UnknownLabel(q.clone()))?;
            if i == j {
                return Err(SpaceError::DiagonalEntry(p));
            }
            let key = (i.min(j), i.max(j));
            if given.insert(key, f).is_some() {
                return Err(SpaceError::DuplicatePair(p, q));
            }
        }
        let mut matrix = vec![vec![DistFn::one(); n]; n];
        for i in 0..n {
            for j in i + 1..n {
                let f = given.remove(&(i, j)).ok_or_else(|| {
                    SpaceError::MissingPair(points[i].clone(), points[j].clone())
                })?;
                matrix[i][j] = f.clone();
                matrix[j][i] = f;
            }
        }
        Self::from_matrix(points, matrix)
    }

    /// Builds a space from a full matrix of functions. Every function must
    /// be a valid distribution function; the matrix itself is taken as is,
    /// so [`SmSpace::check_sm_axioms`] can report asymmetry or a bad
    /// diagonal.
    pub fn from_matrix(points: Vec<String>, matrix: Vec<Vec<DistFn>>) -> Result<SmSpace, SpaceError> {
        label_index(&points)?;
        let n = points.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return Err(SpaceError::Shape(format!("expected a {n}x{n} matrix")));
        }
        let mut ids: HashMap<DistFn, usize> = HashMap::new();
        let mut fns = Vec::new();
        let mut table = Vec::with_capacity(n * n);
        for (i, row) in matrix.into_iter().enumerate() {
            for (j, f) in row.into_iter().enumerate() {
                let id = match ids.get(&f) {
                    Some(&id) => id,
                    None => {
                        let report = f.validate();
                        if !report.is_valid() {
                            let reason: Vec<String> =
                                report.violations.iter().map(ToString::to_string).collect();
                            return Err(SpaceError::InvalidFn {
                                p: points[i].clone(),
                                q: points[j].clone(),
                                reason: reason.join("; "),
                            });
                        }
                        fns.push(f.clone());
                        ids.insert(f, fns.len() - 1);
                        fns.len() - 1
                    }
                };
                table.push(id);
            }
        }
        Ok(SmSpace {
            labels: points,
            fns,
            table,
        })
    }

    /// The space induced by a metric table: `F_pq = step(d)` or `ramp(d)`,
    /// and `one` on the diagonal.
    pub fn from_metric(
        points: Vec<String>,
        d: &[Vec<Rational>],
        kind: MetricKind,
    ) -> Result<SmSpace, SpaceError> {
        let n = points.len();
        if d.len() != n || d.iter().any(|row| row.len() != n) {
            return Err(SpaceError::Shape(format!("expected a {n}x{n} distance table")));
        }
        let name = |i: usize| points[i].as_str();
        for i in 0..n {
            for j in 0..n {
                let dij = &d[i][j];
                if i == j && !dij.is_zero() {
                    return Err(SpaceError::MetricAxiom(format!(
                        "d({0}, {0}) = {1} is not 0",
                        name(i),
                        format_rational(dij)
                    )));
                }
                if i != j && dij <= &Rational::zero() {
                    return Err(SpaceError::MetricAxiom(format!(
                        "d({}, {}) = {} must be positive for distinct points",
                        name(i),
                        name(j),
                        format_rational(dij)
                    )));
                }
                if dij != &d[j][i] {
                    return Err(SpaceError::MetricAxiom(format!(
                        "d({}, {}) differs from d({}, {})",
                        name(i),
                        name(j),
                        name(j),
                        name(i)
                    )));
                }
                for (k, (djk, dik)) in d[j].iter().zip(&d[i]).enumerate() {
                    if dij + djk < *dik {
                        return Err(SpaceError::MetricAxiom(format!(
                            "triangle inequality fails for ({}, {}, {})",
                            name(i),
                            name(j),
                            name(k)
                        )));
                    }
                }
            }
        }
        let matrix = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            return DistFn::one();
                        }
                        let f = match kind {
                            MetricKind::Step => DistFn::step(&d[i][j]),
                            MetricKind::Ramp => DistFn::ramp(&d[i][j]),
                        };
                        f.expect("distance checked positive")
                    })
                    .collect()
            })
            .collect();
        Self::from_matrix(points, matrix)
    }

    /// Points `1..=n` of the real line with `d(p, q) = |p - q|`.
    pub fn integer_line(n: usize, kind: MetricKind) -> SmSpace {
        let points: Vec<String> = (1..=n).map(|k| k.to_string()).collect();
        let d: Vec<Vec<Rational>> = (1..=n as i64)
            .map(|p| (1..=n as i64).map(|q| int((p - q).abs())).collect())
            .collect();
        Self::from_metric(points, &d, kind).expect("absolute difference is a metric")
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The points as a finite ground.
    pub fn ground(&self) -> Ground {
        Ground::Finite(self.labels.clone())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Result<usize, SpaceError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| SpaceError::UnknownLabel(label.to_string()))
    }

    pub fn dist(&self, i: usize, j: usize) -> &DistFn {
        &self.fns[self.fn_id(i, j)]
    }

    pub fn dist_by_label(&self, p: &str, q: &str) -> Result<&DistFn, SpaceError> {
        Ok(self.dist(self.index_of(p)?, self.index_of(q)?))
    }

    /// Index of the distinct function stored for `(i, j)`.
    pub fn fn_id(&self, i: usize, j: usize) -> usize {
        self.table[i * self.labels.len() + j]
    }

    pub fn distinct_fns(&self) -> &[DistFn] {
        &self.fns
    }

    /// Every function `F_pq` for a fixed `p`, in point order.
    pub fn profile(&self, i: usize) -> Vec<&DistFn> {
        (0..self.len()).map(|j| self.dist(i, j)).collect()
    }

    pub fn threshold(&self, p: &str, q: &str) -> Result<Threshold, SpaceError> {
        Ok(Threshold::of(self.dist_by_label(p, q)?))
    }

    /// Checks SM-I to SM-IV over all pairs and ordered triples.
    ///
    /// SM-IV is decided exactly from thresholds: `F_pq(x) = 1` holds
    /// precisely on `[t, ∞)` or `(t, ∞)`, so the implication reduces to a
    /// comparison of threshold sums that keeps track of attainment.
    pub fn check_sm_axioms(&self) -> SmAxiomReport {
        let n = self.len();
        let one = DistFn::one();
        let pair = |i: usize, j: usize| vec![self.labels[i].clone(), self.labels[j].clone()];

        let mut sm1 = None;
        'sm1: for i in 0..n {
            for j in 0..n {
                let is_one = *self.dist(i, j) == one;
                if is_one != (i == j) {
                    let detail = if i == j {
                        "F_pp is not 1 on (0, inf)".to_string()
                    } else {
                        "F_pq = 1 on (0, inf) for distinct points".to_string()
                    };
                    sm1 = Some(SmWitness::new(pair(i, j), vec![], detail));
                    break 'sm1;
                }
            }
        }

        let sm2 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !self.dist(i, j).value(&Rational::zero()).is_zero())
            .map(|(i, j)| SmWitness::new(pair(i, j), vec![Rational::zero()], "F_pq(0) != 0".into()));

        let sm3 = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| self.fn_id(i, j) != self.fn_id(j, i))
            .map(|(i, j)| SmWitness::new(pair(i, j), vec![], "F_pq != F_qp".into()));

        let thresholds: Vec<Threshold> = self.fns.iter().map(Threshold::of).collect();
        let mut sm4 = None;
        for (&(a, b, c), &(p, q, r)) in &self.distinct_triples() {
            if let Some(w) = sm4_witness(&thresholds[a], &thresholds[b], &thresholds[c]) {
                let (x, y) = w;
                sm4 = Some(SmWitness::new(
                    vec![
                        self.labels[p].clone(),
                        self.labels[q].clone(),
                        self.labels[r].clone(),
                    ],
                    vec![x, y],
                    "F_pq(x) = 1 and F_qr(y) = 1 but F_pr(x + y) < 1".into(),
                ));
                break;
            }
        }

        SmAxiomReport {
            axioms: vec![
                AxiomOutcome::new("SM-I", "F_pq = 1 on (0, inf) iff p = q", sm1),
                AxiomOutcome::new("SM-II", "F_pq(0) = 0", sm2),
                AxiomOutcome::new("SM-III", "F_pq = F_qp", sm3),
                AxiomOutcome::new(
                    "SM-IV",
                    "F_pq(x) = 1 and F_qr(y) = 1 imply F_pr(x + y) = 1",
                    sm4,
                ),
            ],
        }
    }

    /// Representative ordered triple `(p, q, r)` for every distinct
    /// combination of function ids `(pq, qr, pr)`, first in scan order.
    fn distinct_triples(&self) -> BTreeMap<(usize, usize, usize), (usize, usize, usize)> {
        let n = self.len();
        let mut out = BTreeMap::new();
        for p in 0..n {
            for q in 0..n {
                for r in 0..n {
                    let key = (self.fn_id(p, q), self.fn_id(q, r), self.fn_id(p, r));
                    out.entry(key).or_insert((p, q, r));
                }
            }
        }
        out
    }

    /// Scans the Menger inequality `F_pr(x + y) >= T(F_pq(x), F_qr(y))`.
    ///
    /// For each ordered triple the abscissae are the breakpoints of the three
    /// functions, their pairwise sums, and the midpoints (plus one point past
    /// the largest) of that union. Breakpoints and sums are scanned before
    /// midpoints. A reported failure is a genuine counterexample; a pass is
    /// relative to the witness set, and exact for piecewise-constant spaces.
    pub fn check_menger(&self, t: &TNorm) -> MengerReport {
        let triples = self.distinct_triples();
        let mut witness = None;
        // representative triples come out in id order; scan them in point
        // order so the first witness is the first violating triple
        let mut ordered: Vec<_> = triples.iter().collect();
        ordered.sort_by_key(|(_, &pqr)| pqr);
        for (&(a, b, c), &(p, q, r)) in ordered {
            let (fpq, fqr, fpr) = (&self.fns[a], &self.fns[b], &self.fns[c]);
            if let Some((x, y, lhs, rhs)) = menger_violation(fpq, fqr, fpr, t) {
                witness = Some(MengerWitness {
                    p: self.labels[p].clone(),
                    q: self.labels[q].clone(),
                    r: self.labels[r].clone(),
                    x,
                    y,
                    lhs,
                    rhs,
                });
                break;
            }
        }
        MengerReport {
            tnorm: t.to_string(),
            triples: self.len().pow(3),
            distinct_triples: triples.len(),
            witness,
        }
    }
}

fn label_index(points: &[String]) -> Result<HashMap<String, usize>, SpaceError> {
    if points.is_empty() {
        return Err(SpaceError::Empty);
    }
    let mut index = HashMap::new();
    for (i, p) in points.iter().enumerate() {
        if index.insert(p.clone(), i).is_some() {
            return Err(SpaceError::DuplicateLabel(p.clone()));
        }
    }
    Ok(index)
}

/// Concrete `(x, y)` with `F_pq(x) = 1`, `F_qr(y) = 1` and `F_pr(x+y) < 1`
/// if the thresholds allow one.
fn sm4_witness(
    pq: &Threshold,
    qr: &Threshold,
    pr: &Threshold,
) -> Option<(Rational, Rational)> {
    let (Threshold::Finite { at: a, attained: aa }, Threshold::Finite { at: b, attained: ba }) = (pq, qr)
    else {
        return None;
    };
    let sum = a + b;
    let sum_attained = *aa && *ba;
    // room above the sum before F_pr reaches 1
    let room = match pr {
        Threshold::Infinite => Some(int(1)),
        Threshold::Finite { at, .. } if at > &sum => Some(at - &sum),
        Threshold::Finite { at, attained } if at == &sum && !attained && sum_attained => {
            return Some((a.clone(), b.clone()));
        }
        Threshold::Finite { .. } => None,
    }?;
    let eps = room / int(4);
    let x = if *aa { a.clone() } else { a + &eps };
    let y = if *ba { b.clone() } else { b + &eps };
    Some((x, y))
}

fn menger_abscissae(fns: [&DistFn; 3]) -> (Vec<Rational>, Vec<Rational>) {
    let mut breaks: Vec<Rational> = fns.iter().flat_map(|f| f.breakpoints()).collect();
    breaks.sort();
    breaks.dedup();
    let mut primary = breaks.clone();
    for (i, a) in breaks.iter().enumerate() {
        for b in &breaks[i..] {
            primary.push(a + b);
        }
    }
    primary.sort();
    primary.dedup();
    let mut secondary: Vec<Rational> = primary.windows(2).map(|w| midpoint(&w[0], &w[1])).collect();
    secondary.push(primary.last().unwrap() + int(1));
    (primary, secondary)
}

fn menger_violation(
    fpq: &DistFn,
    fqr: &DistFn,
    fpr: &DistFn,
    t: &TNorm,
) -> Option<(Rational, Rational, Rational, Rational)> {
    let (primary, secondary) = menger_abscissae([fpq, fqr, fpr]);
    let all: Vec<Rational> = {
        let mut v = primary.clone();
        v.extend(secondary);
        v.sort();
        v
    };
    for grid in [&primary, &all] {
        for x in grid.iter() {
            let a = fpq.value(x);
            for y in grid.iter() {
                let b = fqr.value(y);
                let rhs = t.apply_unchecked(&a, &b);
                let lhs = fpr.value(&(x + y));
                if lhs < rhs {
                    return Some((x.clone(), y.clone(), lhs, rhs));
                }
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmWitness {
    pub points: Vec<String>,
    #[serde(serialize_with = "crate::report::rationals")]
    pub abscissae: Vec<Rational>,
    pub detail: String,
}

impl SmWitness {
    fn new(points: Vec<String>, abscissae: Vec<Rational>, detail: String) -> Self {
        SmWitness {
            points,
            abscissae,
            detail,
        }
    }
}

impl fmt::Display for SmWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.points.join(", "))?;
        if !self.abscissae.is_empty() {
            let xs: Vec<String> = self.abscissae.iter().map(format_rational).collect();
            write!(f, " at ({})", xs.join(", "))?;
        }
        write!(f, ": {}", self.detail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SmAxiomReport {
    pub axioms: Vec<AxiomOutcome<SmWitness>>,
}

impl SmAxiomReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(AxiomOutcome::passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomOutcome<SmWitness>> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MengerWitness {
    pub p: String,
    pub q: String,
    pub r: String,
    #[serde(with = "serde_rational")]
    pub x: Rational,
    #[serde(with = "serde_rational")]
    pub y: Rational,
    /// `F_pr(x + y)`
    #[serde(with = "serde_rational")]
    pub lhs: Rational,
    /// `T(F_pq(x), F_qr(y))`
    #[serde(with = "serde_rational")]
    pub rhs: Rational,
}

impl fmt::Display for MengerWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(p, q, r) = ({}, {}, {}), (x, y) = ({}, {}): F_pr(x+y) = {} < T(F_pq(x), F_qr(y)) = {}",
            self.p,
            self.q,
            self.r,
            format_rational(&self.x),
            format_rational(&self.y),
            format_rational(&self.lhs),
            format_rational(&self.rhs)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MengerReport {
    pub tnorm: String,
    pub triples: usize,
    pub distinct_triples: usize,
    pub witness: Option<MengerWitness>,
}

impl MengerReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn step(a: i64) -> DistFn {
        DistFn::step(&int(a)).unwrap()
    }

    fn coin() -> SmSpace {
        SmSpace::build(labels(&["0", "1"]), vec![("0".into(), "1".into(), step(1))]).unwrap()
    }

    fn bad_triangle() -> SmSpace {
        SmSpace::build(
            labels(&["p", "q", "r"]),
            vec![
                ("p".into(), "q".into(), step(1)),
                ("q".into(), "r".into(), step(1)),
                ("p".into(), "r".into(), step(10)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn build_coin_and_singleton() {
        let s = coin();
        assert_eq!(s.dist_by_label("1", "0").unwrap(), &step(1));
        assert_eq!(s.dist_by_label("0", "0").unwrap(), &DistFn::one());
        let single = SmSpace::build(labels(&["p"]), vec![]).unwrap();
        assert!(single.check_sm_axioms().passed());
    }

    #[test]
    fn build_errors() {
        let err = SmSpace::build(
            labels(&["1", "2", "3"]),
            vec![
                ("1".into(), "2".into(), step(1)),
                ("2".into(), "3".into(), step(1)),
            ],
        )
        .unwrap_err();
        assert_eq!(err, SpaceError::MissingPair("1".into(), "3".into()));
        assert_eq!(
            SmSpace::build(labels(&["a", "a"]), vec![]).unwrap_err(),
            SpaceError::DuplicateLabel("a".into())
        );
    }

    #[test]
    fn from_metric_rejects_zero_distance() {
        let d = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
        assert!(matches!(
            SmSpace::from_metric(labels(&["1", "2"]), &d, MetricKind::Step),
            Err(SpaceError::MetricAxiom(_))
        ));
    }

    #[test]
    fn ramp_metric_pair() {
        let s = SmSpace::integer_line(2, MetricKind::Ramp);
        assert_eq!(s.dist_by_label("1", "2").unwrap(), &DistFn::ramp(&int(1)).unwrap());
    }

    #[test]
    fn thresholds() {
        let s = coin();
        assert_eq!(s.threshold("0", "1").unwrap().value(), Some(&int(1)));
        assert_eq!(s.threshold("1", "1").unwrap().value(), Some(&int(0)));
        let dice = SmSpace::integer_line(6, MetricKind::Step);
        assert_eq!(dice.threshold("1", "6").unwrap().value(), Some(&int(5)));
        assert!(dice.threshold("1", "9").is_err());
        let ramp = DistFn::ramp(&int(2)).unwrap();
        assert_eq!(
            Threshold::of(&ramp),
            Threshold::Finite {
                at: int(2),
                attained: true
            }
        );
    }

    #[test]
    fn sm_axioms_on_examples() {
        assert!(coin().check_sm_axioms().passed());
        assert!(SmSpace::integer_line(6, MetricKind::Step).check_sm_axioms().passed());
        assert!(SmSpace::integer_line(5, MetricKind::Ramp).check_sm_axioms().passed());
    }

    #[test]
    fn sm1_fails_for_distinct_points_at_distance_one() {
        let s = SmSpace::build(labels(&["0", "1"]), vec![("0".into(), "1".into(), DistFn::one())])
            .unwrap();
        let report = s.check_sm_axioms();
        assert!(!report.get("SM-I").unwrap().passed());
        assert!(report.get("SM-III").unwrap().passed());
    }

    #[test]
    fn sm3_fails_for_asymmetric_matrix() {
        let m = vec![vec![DistFn::one(), step(1)], vec![step(2), DistFn::one()]];
        let s = SmSpace::from_matrix(labels(&["a", "b"]), m).unwrap();
        assert!(!s.check_sm_axioms().get("SM-III").unwrap().passed());
    }

    #[test]
    fn sm4_witness_is_genuine() {
        let s = bad_triangle();
        let report = s.check_sm_axioms();
        let w = report.get("SM-IV").unwrap().witness.clone().unwrap();
        let (p, q, r) = (&w.points[0], &w.points[1], &w.points[2]);
        let (x, y) = (&w.abscissae[0], &w.abscissae[1]);
        assert!(s.dist_by_label(p, q).unwrap().eval(x).unwrap().is_one());
        assert!(s.dist_by_label(q, r).unwrap().eval(y).unwrap().is_one());
        assert!(!s.dist_by_label(p, r).unwrap().eval(&(x + y)).unwrap().is_one());
    }

    #[test]
    fn sm4_exact_at_attained_thresholds() {
        // ramps attain 1 at their threshold: ramp(1), ramp(1) need F_pr(2) = 1
        let ok = SmSpace::build(
            labels(&["p", "q", "r"]),
            vec![
                ("p".into(), "q".into(), DistFn::ramp(&int(1)).unwrap()),
                ("q".into(), "r".into(), DistFn::ramp(&int(1)).unwrap()),
                ("p".into(), "r".into(), DistFn::ramp(&int(2)).unwrap()),
            ],
        )
        .unwrap();
        assert!(ok.check_sm_axioms().passed());
        // step(2) is still 0 at x = 2, which a pair of ramps reaches
        let bad = SmSpace::build(
            labels(&["p", "q", "r"]),
            vec![
                ("p".into(), "q".into(), DistFn::ramp(&int(1)).unwrap()),
                ("q".into(), "r".into(), DistFn::ramp(&int(1)).unwrap()),
                ("p".into(), "r".into(), step(2)),
            ],
        )
        .unwrap();
        let report = bad.check_sm_axioms();
        let w = report.get("SM-IV").unwrap().witness.clone().unwrap();
        assert_eq!(w.abscissae, vec![int(1), int(1)]);
    }

    #[test]
    fn menger_examples() {
        let dice = SmSpace::integer_line(6, MetricKind::Step);
        assert!(dice.check_menger(&TNorm::Product).passed());
        assert!(coin().check_menger(&TNorm::Minimum).passed());
        let report = bad_triangle().check_menger(&TNorm::Product);
        let w = report.witness.expect("violation");
        assert_eq!((w.p.as_str(), w.q.as_str(), w.r.as_str()), ("p", "q", "r"));
        assert_eq!((w.x.clone(), w.y.clone()), (int(2), int(2)));
        assert_eq!(w.lhs, int(0));
        assert_eq!(w.rhs, int(1));
    }

    #[test]
    fn menger_witness_re_evaluates() {
        let s = bad_triangle();
        let w = s.check_menger(&TNorm::Minimum).witness.unwrap();
        let fpr = s.dist_by_label(&w.p, &w.r).unwrap();
        let fpq = s.dist_by_label(&w.p, &w.q).unwrap();
        let fqr = s.dist_by_label(&w.q, &w.r).unwrap();
        let lhs = fpr.eval(&(&w.x + &w.y)).unwrap();
        let rhs = TNorm::Minimum
            .apply(&fpq.eval(&w.x).unwrap(), &fqr.eval(&w.y).unwrap())
            .unwrap();
        assert!(lhs < rhs);
    }
}
