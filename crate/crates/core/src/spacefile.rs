//! JSON input files: spaces, écarts, neighborhood systems and t-norm tables.
//!
//! A file is one JSON object with `"schema": 1` and exactly one of the
//! blocks `entries` (with `points`), `metric`, `ecart` or `system`:
//!
//! ```json
//! {"schema": 1, "points": ["0", "1"],
//!  "entries": [{"p": "0", "q": "1", "fn": {"kind": "step", "at": "1"}}]}
//!
//! {"schema": 1, "metric": {"points": ["1", "2"], "kind": "ramp",
//!                          "distances": [[0, 1], [1, 0]]}}
//!
//! {"schema": 1, "ecart": {"naturals": {"distinguished": [1, 2, 3],
//!                                      "outside": 0, "mixed": 1},
//!                         "poset": "naturals",
//!                         "table": [{"p": 1, "q": 2, "value": 2}]}}
//!
//! {"schema": 1, "system": {"points": ["a", "b"],
//!                          "families": {"a": [["a", "b"]], "b": [["b"]]}}}
//! ```
//!
//! Function kinds are `step` (`at`), `ramp` (`d`), `one`, and `pieces`
//! (a list of `{from, to, poly}` records). Rationals are strings `"a/b"` or
//! integers. An explicit poset is `{"elements": [..], "less": [[a, b], ..],
//! "zero": ".."}`; its strict order is the transitive closure of `less`.
//!
//! Errors come in three kinds with distinct exit codes: malformed text
//! (including bad rational literals) is 2, a well-formed file of the wrong
//! shape is 3, and data violating an invariant is 4.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::distfn::{DistFn, Piece, PieceRecord};
use crate::gtop::NeighborhoodSystem;
use crate::neighborhood::{Elem, GEcart, Poset};
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational, Rational};
use crate::smspace::{MetricKind, SmSpace};
use crate::tnorm::{TNorm, TableTNorm};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("validation error: {0}")]
    Validation(String),
}

impl LoadError {
    pub fn exit_code(&self) -> i32 {
        match self {
            LoadError::Io { .. } | LoadError::Parse(_) => 2,
            LoadError::Schema(_) => 3,
            LoadError::Validation(_) => 4,
        }
    }
}

/// A number as written: a string or an integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Text(String),
}

impl Num {
    fn rational(&self, at: &str) -> Result<Rational, LoadError> {
        match self {
            Num::Int(n) => Ok(Rational::from_integer((*n).into())),
            Num::Text(t) => parse_rational(t).map_err(|e| LoadError::Parse(format!("{at}: {e}"))),
        }
    }

    fn text(&self) -> String {
        match self {
            Num::Int(n) => n.to_string(),
            Num::Text(t) => t.clone(),
        }
    }
}

impl From<&Rational> for Num {
    fn from(x: &Rational) -> Num {
        Num::Text(format_rational(x))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawPiece {
    pub from: Num,
    pub to: Option<Num>,
    pub poly: Vec<Num>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum RawFn {
    Step { at: Num },
    Ramp { d: Num },
    One,
    Pieces { pieces: Vec<RawPiece> },
}

impl RawFn {
    fn build(&self, at: &str) -> Result<DistFn, LoadError> {
        let invalid = |e: crate::distfn::DistFnError| LoadError::Validation(format!("{at}: {e}"));
        match self {
            RawFn::Step { at: a } => DistFn::step(&a.rational(&format!("{at}.at"))?).map_err(invalid),
            RawFn::Ramp { d } => DistFn::ramp(&d.rational(&format!("{at}.d"))?).map_err(invalid),
            RawFn::One => Ok(DistFn::one()),
            RawFn::Pieces { pieces } => {
                let mut out = Vec::with_capacity(pieces.len());
                for (k, p) in pieces.iter().enumerate() {
                    let loc = format!("{at}.pieces[{k}]");
                    let coeffs = p
                        .poly
                        .iter()
                        .map(|c| c.rational(&format!("{loc}.poly")))
                        .collect::<Result<Vec<_>, _>>()?;
                    out.push(Piece {
                        start: p.from.rational(&format!("{loc}.from"))?,
                        end: p.to.as_ref().map(|t| t.rational(&format!("{loc}.to"))).transpose()?,
                        poly: Poly::from_coeffs(coeffs),
                    });
                }
                let f = DistFn::from_pieces(out).map_err(invalid)?;
                let report = f.validate();
                if let Some(v) = report.violations.first() {
                    return Err(LoadError::Validation(format!("{at}: {v}")));
                }
                Ok(f)
            }
        }
    }

    /// The wire form of a function, as a `pieces` record list.
    pub fn from_fn(f: &DistFn) -> RawFn {
        RawFn::Pieces {
            pieces: f
                .to_records()
                .into_iter()
                .map(|r: PieceRecord| RawPiece {
                    from: Num::from(&r.from),
                    to: r.to.as_ref().map(Num::from),
                    poly: r.poly.coeffs().iter().map(Num::from).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEntry {
    pub p: String,
    pub q: String,
    #[serde(rename = "fn")]
    pub f: RawFn,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawMetric {
    pub points: Vec<String>,
    pub kind: MetricKindName,
    pub distances: Vec<Vec<Num>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKindName {
    Step,
    Ramp,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawPoset {
    Named(String),
    Explicit {
        elements: Vec<String>,
        less: Vec<(String, String)>,
        zero: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNaturals {
    pub distinguished: Vec<u64>,
    pub outside: Num,
    pub mixed: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEcartEntry {
    pub p: Num,
    pub q: Num,
    pub value: Num,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEcart {
    #[serde(default)]
    pub naturals: Option<RawNaturals>,
    #[serde(default)]
    pub points: Option<Vec<String>>,
    pub poset: RawPoset,
    pub table: Vec<RawEcartEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSystem {
    pub points: Vec<String>,
    pub families: BTreeMap<String, Vec<Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFile {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries: Option<Vec<RawEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metric: Option<RawMetric>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ecart: Option<RawEcart>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub system: Option<RawSystem>,
}

/// A loaded input file.
#[derive(Debug, Clone)]
pub enum Loaded {
    Space(SmSpace),
    Ecart(GEcart),
    System(NeighborhoodSystem),
}

impl Loaded {
    pub fn kind(&self) -> &'static str {
        match self {
            Loaded::Space(_) => "space",
            Loaded::Ecart(_) => "ecart",
            Loaded::System(_) => "system",
        }
    }
}

impl fmt::Display for Loaded {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Loaded::Space(s) => write!(f, "space with {} points", s.len()),
            Loaded::Ecart(g) => write!(f, "écart on {} classes into {}", g.ground().len(), g.range()),
            Loaded::System(s) => write!(f, "neighborhood system on {} points", s.len()),
        }
    }
}

fn json_error(e: serde_json::Error) -> LoadError {
    use serde_json::error::Category;
    match e.classify() {
        Category::Data => LoadError::Schema(e.to_string()),
        _ => LoadError::Parse(e.to_string()),
    }
}

pub fn parse(text: &str) -> Result<Loaded, LoadError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(json_error)?;
    let raw: RawFile = serde_json::from_value(value).map_err(json_error)?;
    raw.build()
}

/// Reads a file, or standard input for `-`.
pub fn read(path: &str) -> Result<String, LoadError> {
    let io = |e: std::io::Error| LoadError::Io {
        path: path.to_string(),
        reason: e.to_string(),
    };
    if path == "-" {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s).map_err(io)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io)
    }
}

pub fn load(path: &str) -> Result<Loaded, LoadError> {
    parse(&read(path)?)
}

impl RawFile {
    pub fn build(&self) -> Result<Loaded, LoadError> {
        if self.schema != SCHEMA {
            return Err(LoadError::Schema(format!("unsupported schema {}", self.schema)));
        }
        let blocks = [
            self.entries.is_some(),
            self.metric.is_some(),
            self.ecart.is_some(),
            self.system.is_some(),
        ];
        if blocks.iter().filter(|&&b| b).count() != 1 {
            return Err(LoadError::Schema(
                "expected exactly one of `entries`, `metric`, `ecart`, `system`".into(),
            ));
        }
        if self.points.is_some() != self.entries.is_some() {
            return Err(LoadError::Schema("`points` goes with `entries` and only with it".into()));
        }
        let invalid = |e: &dyn fmt::Display| LoadError::Validation(e.to_string());
        if let (Some(points), Some(entries)) = (&self.points, &self.entries) {
            let mut built = Vec::with_capacity(entries.len());
            for (k, e) in entries.iter().enumerate() {
                built.push((e.p.clone(), e.q.clone(), e.f.build(&format!("entries[{k}].fn"))?));
            }
            return SmSpace::build(points.clone(), built)
                .map(Loaded::Space)
                .map_err(|e| invalid(&e));
        }
        if let Some(m) = &self.metric {
            let d = m
                .distances
                .iter()
                .enumerate()
                .map(|(i, row)| {
                    row.iter()
                        .enumerate()
                        .map(|(j, x)| x.rational(&format!("metric.distances[{i}][{j}]")))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            let kind = match m.kind {
                MetricKindName::Step => MetricKind::Step,
                MetricKindName::Ramp => MetricKind::Ramp,
            };
            return SmSpace::from_metric(m.points.clone(), &d, kind)
                .map(Loaded::Space)
                .map_err(|e| invalid(&e));
        }
        if let Some(e) = &self.ecart {
            return build_ecart(e).map(Loaded::Ecart);
        }
        let s = self.system.as_ref().unwrap();
        NeighborhoodSystem::from_labels(s.points.clone(), s.families.clone().into_iter().collect())
            .map(Loaded::System)
            .map_err(|e| invalid(&e))
    }
}

fn build_poset(raw: &RawPoset) -> Result<Poset, LoadError> {
    match raw {
        RawPoset::Named(n) if n == "naturals" => Ok(Poset::Naturals),
        RawPoset::Named(n) => Err(LoadError::Schema(format!("unknown poset `{n}`"))),
        RawPoset::Explicit { elements, less, zero } => {
            let n = elements.len();
            let index = |x: &str| {
                elements
                    .iter()
                    .position(|e| e == x)
                    .ok_or_else(|| LoadError::Validation(format!("ecart.poset: unknown element `{x}`")))
            };
            let mut rel = vec![vec![false; n]; n];
            for (a, b) in less {
                rel[index(a)?][index(b)?] = true;
            }
            for k in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        if rel[i][k] && rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
            Poset::explicit(elements.clone(), rel, zero)
                .map_err(|e| LoadError::Validation(format!("ecart.poset: {e}")))
        }
    }
}

fn build_ecart(raw: &RawEcart) -> Result<GEcart, LoadError> {
    let range = build_poset(&raw.poset)?;
    let elem = |x: &Num, at: String| {
        range
            .parse(&x.text())
            .map_err(|e| LoadError::Validation(format!("{at}: {e}")))
    };
    let invalid = |e: crate::neighborhood::EcartError| LoadError::Validation(format!("ecart: {e}"));
    match (&raw.naturals, &raw.points) {
        (Some(nat), None) => {
            let point = |x: &Num, at: String| match x {
                Num::Int(n) if *n >= 1 => Ok(*n as u64),
                Num::Text(t) => t
                    .parse::<u64>()
                    .ok()
                    .filter(|&n| n >= 1)
                    .ok_or_else(|| LoadError::Validation(format!("{at}: `{t}` is not a positive integer"))),
                Num::Int(n) => Err(LoadError::Validation(format!("{at}: {n} is not a positive integer"))),
            };
            let mut table = Vec::new();
            for (k, e) in raw.table.iter().enumerate() {
                let at = format!("ecart.table[{k}]");
                table.push((
                    (point(&e.p, format!("{at}.p"))?, point(&e.q, format!("{at}.q"))?),
                    elem(&e.value, format!("{at}.value"))?,
                ));
            }
            GEcart::on_naturals(
                nat.distinguished.clone(),
                range.clone(),
                table,
                elem(&nat.outside, "ecart.naturals.outside".into())?,
                elem(&nat.mixed, "ecart.naturals.mixed".into())?,
            )
            .map_err(invalid)
        }
        (None, Some(points)) => {
            let mut table = Vec::new();
            for (k, e) in raw.table.iter().enumerate() {
                table.push((
                    (e.p.text(), e.q.text()),
                    elem(&e.value, format!("ecart.table[{k}].value"))?,
                ));
            }
            GEcart::on_points(points.clone(), range.clone(), table).map_err(invalid)
        }
        _ => Err(LoadError::Schema(
            "ecart needs exactly one of `naturals` and `points`".into(),
        )),
    }
}

/// The space as an `entries` file with every function in `pieces` form.
pub fn space_to_raw(s: &SmSpace) -> RawFile {
    let labels = s.labels();
    let mut entries = Vec::new();
    for i in 0..s.len() {
        for j in i + 1..s.len() {
            entries.push(RawEntry {
                p: labels[i].clone(),
                q: labels[j].clone(),
                f: RawFn::from_fn(s.dist(i, j)),
            });
        }
    }
    RawFile {
        schema: SCHEMA,
        points: Some(labels.to_vec()),
        entries: Some(entries),
        ..RawFile::default()
    }
}

/// A finite system as a `system` file. Systems over classes that stand for
/// infinitely many points are written by class label.
pub fn system_to_raw(sys: &NeighborhoodSystem) -> RawFile {
    let g = sys.ground();
    let families = (0..sys.len())
        .map(|p| {
            let sets = sys
                .family(p)
                .iter()
                .map(|s| s.iter().map(|c| g.label(c)).collect())
                .collect();
            (g.label(p), sets)
        })
        .collect();
    RawFile {
        schema: SCHEMA,
        system: Some(RawSystem {
            points: g.labels(),
            families,
        }),
        ..RawFile::default()
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTable {
    grid: Vec<Num>,
    values: Vec<Vec<Num>>,
}

/// Reads `product`, `min`, or a path to a table file `{grid, values}`.
pub fn load_tnorm(arg: &str) -> Result<TNorm, LoadError> {
    match arg {
        "product" => return Ok(TNorm::Product),
        "min" | "minimum" => return Ok(TNorm::Minimum),
        _ => {}
    }
    let text = read(arg)?;
    let raw: RawTable = serde_json::from_str(&text).map_err(json_error)?;
    let grid = raw
        .grid
        .iter()
        .enumerate()
        .map(|(i, x)| x.rational(&format!("grid[{i}]")))
        .collect::<Result<Vec<_>, _>>()?;
    let values = raw
        .values
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, x)| x.rational(&format!("values[{i}][{j}]")))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    TableTNorm::new(grid, values)
        .map(TNorm::Table)
        .map_err(|e| LoadError::Validation(e.to_string()))
}

/// The space, if the loaded file is one.
pub fn expect_space(l: Loaded) -> Result<SmSpace, LoadError> {
    match l {
        Loaded::Space(s) => Ok(s),
        other => Err(LoadError::Schema(format!("expected a space file, got {}", other.kind()))),
    }
}

pub fn expect_ecart(l: Loaded) -> Result<GEcart, LoadError> {
    match l {
        Loaded::Ecart(g) => Ok(g),
        other => Err(LoadError::Schema(format!("expected an ecart file, got {}", other.kind()))),
    }
}

/// Poset elements in files may be integers; this is their parsed form.
pub fn parse_elem(g: &GEcart, text: &str) -> Result<Elem, LoadError> {
    g.range()
        .parse(text)
        .map_err(|e| LoadError::Validation(e.to_string()))
}
