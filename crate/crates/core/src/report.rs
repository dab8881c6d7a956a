//! Shared pieces of the check reports.

use serde::ser::{SerializeSeq, Serializer};
use serde::Serialize;

use crate::rational::{format_rational, Rational};

/// The result of checking one axiom: passed iff no witness was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomOutcome<W> {
    pub axiom: &'static str,
    pub statement: &'static str,
    pub witness: Option<W>,
}

impl<W> AxiomOutcome<W> {
    pub fn new(axiom: &'static str, statement: &'static str, witness: Option<W>) -> Self {
        AxiomOutcome {
            axiom,
            statement,
            witness,
        }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

pub fn rationals<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(xs.len()))?;
    for x in xs {
        seq.serialize_element(&format_rational(x))?;
    }
    seq.end()
}

pub fn pass_fail(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
