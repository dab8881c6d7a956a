//! The worked examples, recomputed from fixture files and compared with
//! golden expectations.
//!
//! Expectations are written down from the printed case tables, not derived
//! from the code under test. Each group loads its fixture from text, so a
//! tampered fixture shows up as a failing check with a diff.

use std::fmt;
use std::path::Path;

use serde::Serialize;

use crate::neighborhood::{entourage, r_sphere, sphere, sphere_family, Elem, GEcart};
use crate::rational::{format_rational, int, parse_rational, rat, Rational};
use crate::smspace::SmSpace;
use crate::spacefile::{expect_ecart, expect_space, parse, LoadError};

/// Fixture texts, bundled or read from a directory.
#[derive(Debug, Clone)]
pub struct Fixtures {
    pub coin: String,
    pub dice: String,
    pub ramp: String,
    pub ecart: String,
}

pub const FIXTURE_FILES: [&str; 4] = ["coin.space", "dice.space", "ramp.space", "naturals.ecart"];

impl Fixtures {
    pub fn bundled() -> Fixtures {
        Fixtures {
            coin: include_str!("../fixtures/coin.space").to_string(),
            dice: include_str!("../fixtures/dice.space").to_string(),
            ramp: include_str!("../fixtures/ramp.space").to_string(),
            ecart: include_str!("../fixtures/naturals.ecart").to_string(),
        }
    }

    pub fn from_dir(dir: &Path) -> Result<Fixtures, LoadError> {
        let read = |name: &str| {
            let path = dir.join(name);
            std::fs::read_to_string(&path).map_err(|e| LoadError::Io {
                path: path.display().to_string(),
                reason: e.to_string(),
            })
        };
        Ok(Fixtures {
            coin: read(FIXTURE_FILES[0])?,
            dice: read(FIXTURE_FILES[1])?,
            ramp: read(FIXTURE_FILES[2])?,
            ecart: read(FIXTURE_FILES[3])?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Group {
    Coin,
    Dice,
    Ecart,
    Rsphere,
}

impl Group {
    pub const ALL: [Group; 4] = [Group::Coin, Group::Dice, Group::Ecart, Group::Rsphere];

    pub fn name(self) -> &'static str {
        match self {
            Group::Coin => "coin",
            Group::Dice => "dice",
            Group::Ecart => "ecart",
            Group::Rsphere => "rsphere",
        }
    }

    pub fn parse(s: &str) -> Option<Group> {
        Group::ALL.into_iter().find(|g| g.name() == s)
    }

    pub fn title(self) -> &'static str {
        match self {
            Group::Coin => "coin toss: (u,v)-spheres",
            Group::Dice => "rolling a dice: entourages",
            Group::Ecart => "generalized écart on the naturals: f-spheres",
            Group::Rsphere => "ramp space: r-spheres",
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: String,
    pub actual: String,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl Into<String>, actual: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            expected: expected.into(),
            actual: actual.into(),
        }
    }

    pub fn passed(&self) -> bool {
        self.expected == self.actual
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupReport {
    pub group: Group,
    pub checks: Vec<Check>,
    pub error: Option<String>,
}

impl GroupReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub fn run(fixtures: &Fixtures, groups: &[Group]) -> Vec<GroupReport> {
    groups
        .iter()
        .map(|&group| {
            let result = match group {
                Group::Coin => coin(fixtures),
                Group::Dice => dice(fixtures),
                Group::Ecart => ecart(fixtures),
                Group::Rsphere => rsphere(fixtures),
            };
            match result {
                Ok(checks) => GroupReport {
                    group,
                    checks,
                    error: None,
                },
                Err(e) => GroupReport {
                    group,
                    checks: Vec::new(),
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

fn space(text: &str) -> Result<SmSpace, LoadError> {
    expect_space(parse(text)?)
}

fn r(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn show(x: &Rational) -> String {
    format_rational(x)
}

fn render(s: &SmSpace, set: &crate::sets::PointSet) -> String {
    s.ground().render(set)
}

fn coin(fx: &Fixtures) -> Result<Vec<Check>, LoadError> {
    let s = space(&fx.coin)?;
    let mut out = Vec::new();
    let params = ["1/2", "1", "3/2", "2"];
    for p in ["0", "1"] {
        let i = s.index_of(p).map_err(|e| LoadError::Validation(e.to_string()))?;
        for u in params {
            for v in params {
                // {p} for 0 < u ≤ 1 and 0 < v ≤ 1, the whole space otherwise
                let expected = if r(u) <= int(1) && r(v) <= int(1) {
                    format!("{{{p}}}")
                } else {
                    "{0, 1}".to_string()
                };
                let got = sphere(&s, i, &r(u), &r(v)).map(|x| render(&s, &x));
                out.push(Check::new(
                    format!("N_{p}({u}, {v})"),
                    expected,
                    got.unwrap_or_else(|e| e.to_string()),
                ));
            }
        }
    }
    let fam: Vec<String> = sphere_family(&s, 0).iter().map(|x| render(&s, x)).collect();
    out.push(Check::new("family at 0", "{0} {0, 1}", fam.join(" ")));
    let t = s.threshold("0", "1").map(|t| t.to_string()).unwrap_or_else(|e| e.to_string());
    out.push(Check::new("threshold(0, 1)", "1", t));
    out.push(Check::new(
        "axioms SM-I..SM-IV",
        "pass",
        if s.check_sm_axioms().passed() { "pass" } else { "fail" },
    ));
    Ok(out)
}

fn dice(fx: &Fixtures) -> Result<Vec<Check>, LoadError> {
    let s = space(&fx.dice)?;
    let labels = s.labels().to_vec();
    let mut out = Vec::new();
    // (u, k, |Δ_k|): U(u, 1/2) = Δ_k for k < u ≤ k + 1, and S × S past 5
    let rows = [("1/2", 0, 6), ("3/2", 1, 16), ("5/2", 2, 24), ("7/2", 3, 30), ("9/2", 4, 34), ("6", 5, 36)];
    for (u, k, count) in rows {
        let e = entourage(&s, &r(u), &rat(1, 2)).map_err(|e| LoadError::Validation(e.to_string()))?;
        out.push(Check::new(format!("|U({u}, 1/2)|"), count.to_string(), e.len().to_string()));
        let delta: Vec<String> = labels
            .iter()
            .flat_map(|p| labels.iter().map(move |q| (p, q)))
            .filter(|(p, q)| {
                let (a, b): (i64, i64) = (p.parse().unwrap_or(0), q.parse().unwrap_or(0));
                (a - b).abs() <= k
            })
            .map(|(p, q)| format!("({p}, {q})"))
            .collect();
        out.push(Check::new(
            format!("U({u}, 1/2) = Δ_{k}"),
            format!("{{{}}}", delta.join(", ")),
            e.render(&labels),
        ));
    }
    for k in 1..=5 {
        let t = s
            .threshold("1", &(1 + k).to_string())
            .map(|t| t.to_string())
            .unwrap_or_else(|e| e.to_string());
        out.push(Check::new(format!("threshold(1, {})", 1 + k), k.to_string(), t));
    }
    let fam: Vec<String> = sphere_family(&s, 0).iter().map(|x| render(&s, x)).collect();
    out.push(Check::new(
        "family at 1",
        "{1} {1, 2} {1, 2, 3} {1, 2, 3, 4} {1, 2, 3, 4, 5} {1, 2, 3, 4, 5, 6}",
        fam.join(" "),
    ));
    Ok(out)
}

/// A printed f-sphere: empty, a finite set, or `S` minus a finite set.
#[derive(Debug, Clone, Copy)]
enum Printed {
    Empty,
    Only(&'static [u64]),
    AllBut(&'static [u64]),
}

impl Printed {
    fn text(self) -> String {
        let list = |xs: &[u64]| xs.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
        match self {
            Printed::Empty => "∅".into(),
            Printed::Only(xs) => format!("{{{}}}", list(xs)),
            Printed::AllBut([]) => "S".into(),
            Printed::AllBut(xs) => format!("S \\ {{{}}}", list(xs)),
        }
    }

    fn window(self, w: u64) -> Vec<String> {
        (1..=w)
            .filter(|n| match self {
                Printed::Empty => false,
                Printed::Only(xs) => xs.contains(n),
                Printed::AllBut(xs) => !xs.contains(n),
            })
            .map(|n| n.to_string())
            .collect()
    }
}

/// The printed case tables, `f ↦ N_p(f)`.
fn printed_table(p: u64, f: u64) -> Printed {
    use Printed::*;
    match (p, f) {
        (_, 0) => Empty,
        (1, 1) => Only(&[1]),
        (1, 2) => AllBut(&[2, 3]),
        (1, 3) => AllBut(&[3]),
        (1, _) => AllBut(&[]),
        (2, 1) => Only(&[2]),
        (2, 2..=4) => AllBut(&[1, 3]),
        (2, 5..=6) => AllBut(&[3]),
        (2, _) => AllBut(&[]),
        (3, 1) => Only(&[3]),
        (3, 2) => AllBut(&[2]),
        (3, _) => AllBut(&[]),
        (_, 1) => AllBut(&[1, 2, 3]),
        (_, _) => AllBut(&[]),
    }
}

pub const ECART_WINDOW: u64 = 10;

fn ecart(fx: &Fixtures) -> Result<Vec<Check>, LoadError> {
    let g: GEcart = expect_ecart(parse(&fx.ecart)?)?;
    let ground = g.ground();
    let mut out = Vec::new();
    for p in [1u64, 2, 3, 4, 7, 10] {
        let class = ground
            .class_of(&p.to_string())
            .ok_or_else(|| LoadError::Validation(format!("point {p} is not in the ground")))?;
        for f in 0..=10u64 {
            let want = printed_table(p, f);
            let got = g
                .sphere(class, &Elem::Nat(f))
                .map_err(|e| LoadError::Validation(e.to_string()))?;
            out.push(Check::new(format!("N_{p}({f})"), want.text(), ground.render(&got)));
            out.push(Check::new(
                format!("N_{p}({f}) on 1..{ECART_WINDOW}"),
                want.window(ECART_WINDOW).join(" "),
                ground.window_view(&got, ECART_WINDOW).join(" "),
            ));
        }
    }
    Ok(out)
}

fn rsphere(fx: &Fixtures) -> Result<Vec<Check>, LoadError> {
    let s = space(&fx.ramp)?;
    let idx = |l: &str| s.index_of(l).map_err(|e| LoadError::Validation(e.to_string()));
    let (p1, p2) = (idx("1")?, idx("2")?);
    let quarter = rat(1, 4);
    let mut out = Vec::new();
    let g12 = s
        .dist(p1, p2)
        .tail()
        .eval(&quarter)
        .map(|x| show(&x))
        .unwrap_or_else(|e| e.to_string());
    out.push(Check::new("G_12(1/4)", "3/4", g12));
    out.push(Check::new("F_11(1/4)", "1", show(&s.dist(p1, p1).value(&quarter))));
    for q in 2..=s.len() {
        let v = s.dist(p1, q - 1).value(&quarter);
        out.push(Check::new(
            format!("F_1{q}(1/4) ≤ 1/4"),
            "true",
            (v <= quarter).to_string(),
        ));
    }
    let n = r_sphere(&s, p1, p2, &quarter).map_err(|e| LoadError::Validation(e.to_string()))?;
    out.push(Check::new("N_1(2; 1/4)", "{1}", render(&s, &n)));
    let mut others = vec![("coin", space(&fx.coin)?), ("dice", space(&fx.dice)?)];
    others.insert(0, ("ramp", s));
    for (name, sp) in &others {
        let us = ["1/4", "1/2", "1", "3/2", "2", "5", "11"];
        let nonempty = (0..sp.len())
            .flat_map(|p| us.iter().map(move |u| (p, *u)))
            .find(|&(p, u)| !r_sphere(sp, p, p, &r(u)).map(|x| x.is_empty()).unwrap_or(false));
        out.push(Check::new(
            format!("N_p(p; u) = ∅ on {name}"),
            "none",
            nonempty
                .map(|(p, u)| format!("p = {}, u = {u}", sp.labels()[p]))
                .unwrap_or_else(|| "none".into()),
        ));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_groups_pass_on_bundled_fixtures() {
        for rep in run(&Fixtures::bundled(), &Group::ALL) {
            assert!(rep.passed(), "{}: {:?} {:?}", rep.group, rep.error, rep.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn tampered_coin_fails() {
        let mut fx = Fixtures::bundled();
        fx.coin = fx.coin.replace("\"at\": \"1\"", "\"at\": \"2\"");
        let reps = run(&fx, &[Group::Coin, Group::Dice]);
        assert!(!reps[0].passed());
        assert!(reps[0].failures().any(|c| c.name == "N_0(3/2, 1/2)"));
        assert!(reps[1].passed());
    }
}
