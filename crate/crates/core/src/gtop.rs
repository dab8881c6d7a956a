//! Neighborhood systems, the axioms N0, N1 and N2, and the closure,
//! interior and symmetry operators.
//!
//! A system assigns to each class of its [`Ground`] a finite family of
//! sets. On a finite ground every class is a point and the checks are the
//! literal quantifier chains. On the natural numbers a class may stand for
//! infinitely many points; the family at any point of a class is the family
//! of the class, so the quantifiers over points collapse to quantifiers over
//! classes and every check stays exact.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::report::AxiomOutcome;
use crate::sets::{Ground, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("expected {expected} families, got {got}")]
    FamilyCount { expected: usize, got: usize },
    #[error("a set at `{0}` is over a different ground")]
    Universe(String),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("point `{0}` listed twice")]
    DuplicatePoint(String),
    #[error("the two systems are over different grounds")]
    GroundMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodSystem {
    ground: Ground,
    families: Vec<Vec<PointSet>>,
}

impl NeighborhoodSystem {
    /// Families are sorted and deduplicated.
    pub fn new(ground: Ground, families: Vec<Vec<PointSet>>) -> Result<Self, SystemError> {
        if families.len() != ground.len() {
            return Err(SystemError::FamilyCount {
                expected: ground.len(),
                got: families.len(),
            });
        }
        let mut out = Vec::with_capacity(families.len());
        for (c, mut fam) in families.into_iter().enumerate() {
            if fam.iter().any(|s| s.universe() != ground.len()) {
                return Err(SystemError::Universe(ground.label(c)));
            }
            fam.sort();
            fam.dedup();
            out.push(fam);
        }
        Ok(NeighborhoodSystem {
            ground,
            families: out,
        })
    }

    /// Builds a system on a finite set of labels; points without an entry
    /// get the empty family.
    pub fn from_labels(
        points: Vec<String>,
        families: Vec<(String, Vec<Vec<String>>)>,
    ) -> Result<Self, SystemError> {
        let ground = Ground::Finite(points);
        let mut fams = vec![Vec::new(); ground.len()];
        let mut seen = vec![false; ground.len()];
        for (p, sets) in families {
            let c = ground
                .class_of(&p)
                .ok_or_else(|| SystemError::UnknownPoint(p.clone()))?;
            if std::mem::replace(&mut seen[c], true) {
                return Err(SystemError::DuplicatePoint(p));
            }
            for s in sets {
                fams[c].push(ground.set_of(&s).map_err(SystemError::UnknownPoint)?);
            }
        }
        Self::new(ground, fams)
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.families.len()
    }

    pub fn is_empty(&self) -> bool {
        self.families.is_empty()
    }

    pub fn family(&self, p: usize) -> &[PointSet] {
        &self.families[p]
    }

    pub fn families(&self) -> &[Vec<PointSet>] {
        &self.families
    }

    fn witness(&self, p: usize, sets: &[&PointSet], detail: String) -> SystemWitness {
        SystemWitness {
            point: self.ground.label(p),
            point_index: p,
            sets: sets.iter().map(|s| self.ground.render(s)).collect(),
            raw: sets.iter().map(|&s| s.clone()).collect(),
            detail,
        }
    }

    /// Every family is non-empty and each member contains its point.
    pub fn check_n0(&self) -> AxiomOutcome<SystemWitness> {
        let witness = (0..self.len()).find_map(|p| {
            let fam = &self.families[p];
            if fam.is_empty() {
                return Some(self.witness(p, &[], "no neighborhoods".into()));
            }
            fam.iter()
                .find(|s| !s.contains(p))
                .map(|s| self.witness(p, &[s], "neighborhood misses its point".into()))
        });
        AxiomOutcome::new("N0", "each point has neighborhoods, each containing it", witness)
    }

    /// For each `U` at `p` some `W` at `p` has, at each of its points `q`,
    /// a neighborhood of `q` inside `U`.
    pub fn check_n1(&self) -> AxiomOutcome<SystemWitness> {
        let witness = (0..self.len())
            .into_par_iter()
            .find_map_first(|p| {
                self.families[p].iter().find_map(|u| {
                    let good = PointSet::from_indices(
                        self.len(),
                        (0..self.len()).filter(|&q| self.families[q].iter().any(|v| v.is_subset(u))),
                    );
                    if self.families[p].iter().any(|w| w.is_subset(&good)) {
                        None
                    } else {
                        Some(self.witness(
                            p,
                            &[u],
                            "no neighborhood W of p whose points all have a neighborhood inside U".into(),
                        ))
                    }
                })
            });
        AxiomOutcome::new(
            "N1",
            "each U_p has a W_p whose points q have some U_q inside U_p",
            witness,
        )
    }

    /// Any two neighborhoods of `p` contain a third one in their intersection.
    pub fn check_n2(&self) -> AxiomOutcome<SystemWitness> {
        let witness = (0..self.len()).into_par_iter().find_map_first(|p| {
            let fam = &self.families[p];
            for (i, u) in fam.iter().enumerate() {
                for w in &fam[i + 1..] {
                    let meet = u.intersection(w);
                    if !fam.iter().any(|v| v.is_subset(&meet)) {
                        return Some(self.witness(
                            p,
                            &[u, w],
                            "no neighborhood inside the intersection".into(),
                        ));
                    }
                }
            }
            None
        });
        AxiomOutcome::new(
            "N2",
            "the intersection of two neighborhoods of p contains a neighborhood of p",
            witness,
        )
    }

    pub fn classify(&self) -> Classification {
        Classification::new(self.check_n0(), self.check_n1(), self.check_n2())
    }

    /// Points all of whose neighborhoods meet `e`.
    pub fn closure(&self, e: &PointSet) -> PointSet {
        PointSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&p| self.families[p].iter().all(|n| n.intersects(e))),
        )
    }

    pub fn interior(&self, e: &PointSet) -> PointSet {
        self.closure(&e.complement()).complement()
    }

    /// Checks `p ∈ cl{q} ⇔ q ∈ cl{p}`. The witness `(p, q)` has `p ∈ cl{q}`
    /// and `q ∉ cl{p}`.
    pub fn is_symmetric(&self) -> Symmetry {
        let n = self.len();
        let closures: Vec<PointSet> = (0..n)
            .map(|q| self.closure(&PointSet::from_indices(n, [q])))
            .collect();
        let witness = (0..n).find_map(|p| {
            (0..n).find_map(|q| {
                (closures[q].contains(p) && !closures[p].contains(q))
                    .then(|| (self.ground.label(p), self.ground.label(q)))
            })
        });
        Symmetry { witness }
    }

    /// Renders one family per line as `p: {..} {..}`.
    pub fn render(&self) -> Vec<String> {
        (0..self.len())
            .map(|p| {
                let sets: Vec<String> = self.families[p].iter().map(|s| self.ground.render(s)).collect();
                format!("{}: {}", self.ground.label(p), sets.join("  "))
            })
            .collect()
    }

    /// Whether every neighborhood of `other` at each point contains one of
    /// `self` at that point.
    pub fn refines(&self, other: &NeighborhoodSystem) -> Result<Option<SystemWitness>, SystemError> {
        if self.ground != other.ground {
            return Err(SystemError::GroundMismatch);
        }
        Ok((0..self.len()).find_map(|p| {
            other.families[p]
                .iter()
                .find(|b| !self.families[p].iter().any(|a| a.is_subset(b)))
                .map(|b| {
                    other.witness(p, &[b], "contains no neighborhood of the other system".into())
                })
        }))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SystemWitness {
    pub point: String,
    #[serde(skip)]
    pub point_index: usize,
    pub sets: Vec<String>,
    #[serde(skip)]
    pub raw: Vec<PointSet>,
    pub detail: String,
}

impl fmt::Display for SystemWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}", self.point)?;
        for s in &self.sets {
            write!(f, ", {s}")?;
        }
        write!(f, "): {}", self.detail)
    }
}

/// The neighborhood-system types, weakest first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum SystemType {
    #[serde(rename = "V")]
    V,
    #[serde(rename = "V_alpha")]
    VAlpha,
    #[serde(rename = "V_D")]
    VD,
    #[serde(rename = "Top")]
    Top,
}

impl SystemType {
    pub const ALL: [SystemType; 4] = [SystemType::V, SystemType::VAlpha, SystemType::VD, SystemType::Top];

    /// Which of N1 and N2 the type requires on top of N0.
    pub fn needs(self) -> (bool, bool) {
        match self {
            SystemType::V => (false, false),
            SystemType::VAlpha => (true, false),
            SystemType::VD => (false, true),
            SystemType::Top => (true, true),
        }
    }

    pub fn parse(s: &str) -> Option<SystemType> {
        match s {
            "V" | "v" => Some(SystemType::V),
            "V_alpha" | "V_α" | "valpha" | "alpha" => Some(SystemType::VAlpha),
            "V_D" | "vd" | "D" => Some(SystemType::VD),
            "Top" | "top" => Some(SystemType::Top),
            _ => None,
        }
    }
}

impl fmt::Display for SystemType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemType::V => "V",
            SystemType::VAlpha => "V_alpha",
            SystemType::VD => "V_D",
            SystemType::Top => "Top",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "not-V")]
    NotV,
    #[serde(untagged)]
    Type(SystemType),
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::NotV => f.write_str("not-V"),
            Verdict::Type(t) => t.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n0: AxiomOutcome<SystemWitness>,
    pub n1: AxiomOutcome<SystemWitness>,
    pub n2: AxiomOutcome<SystemWitness>,
    pub verdict: Verdict,
}

impl Classification {
    fn new(
        n0: AxiomOutcome<SystemWitness>,
        n1: AxiomOutcome<SystemWitness>,
        n2: AxiomOutcome<SystemWitness>,
    ) -> Self {
        // V_alpha and V_D are incomparable; with only one of N1, N2 the
        // verdict names the one that holds.
        let verdict = match (n0.passed(), n1.passed(), n2.passed()) {
            (false, _, _) => Verdict::NotV,
            (true, true, true) => Verdict::Type(SystemType::Top),
            (true, true, false) => Verdict::Type(SystemType::VAlpha),
            (true, false, true) => Verdict::Type(SystemType::VD),
            (true, false, false) => Verdict::Type(SystemType::V),
        };
        Classification { n0, n1, n2, verdict }
    }

    pub fn meets(&self, t: SystemType) -> bool {
        let (n1, n2) = t.needs();
        self.n0.passed() && (!n1 || self.n1.passed()) && (!n2 || self.n2.passed())
    }

    pub fn lines(&self) -> Vec<String> {
        let mut out = Vec::new();
        for a in [&self.n0, &self.n1, &self.n2] {
            match &a.witness {
                None => out.push(format!("{}: PASS", a.axiom)),
                Some(w) => out.push(format!("{}: FAIL witness {w}", a.axiom)),
            }
        }
        out.push(format!("verdict: {}", self.verdict));
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Symmetry {
    pub witness: Option<(String, String)>,
}

impl Symmetry {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}
