//! Critical abscissae of a finite family of distribution functions.
//!
//! Between consecutive breakpoints every function is one polynomial, so the
//! relative order of the values `f_i(x)` can only change where two of those
//! polynomials cross. [`critical_abscissae`] returns every breakpoint, every
//! crossing (exact or algebraic), and one rational inside every open gap
//! between them. Any set defined by comparing the values of the family at a
//! single abscissa therefore takes all of its possible shapes on this list.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::distfn::DistFn;
use crate::poly::{isolate_roots, rational_between, AlgebraicRoot, Poly, RealRoot};
use crate::rational::{format_rational, int, midpoint, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Abscissa {
    Exact(Rational),
    /// An irrational crossing; `cell` is a rational lying strictly between
    /// the same two breakpoints, used to pick the pieces.
    Root { root: AlgebraicRoot, cell: Rational },
}

impl Abscissa {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Abscissa::Exact(x) => Some(x),
            Abscissa::Root { .. } => None,
        }
    }
}

impl fmt::Display for Abscissa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Abscissa::Exact(x) => f.write_str(&format_rational(x)),
            Abscissa::Root { root, .. } => write!(f, "{root}"),
        }
    }
}

/// Compares `f(x)` with `g(x)` exactly.
pub fn compare_at(f: &DistFn, g: &DistFn, x: &Abscissa) -> Ordering {
    match x {
        Abscissa::Exact(x) => f.value(x).cmp(&g.value(x)),
        Abscissa::Root { root, cell } => {
            let diff = &f.piece_at(cell).poly - &g.piece_at(cell).poly;
            root.sign_of(&diff)
        }
    }
}

/// All positive critical abscissae of `fns`, ascending.
pub fn critical_abscissae(fns: &[&DistFn]) -> Vec<Abscissa> {
    let mut cuts: BTreeSet<Rational> = BTreeSet::new();
    for f in fns {
        cuts.extend(f.breakpoints());
    }
    let cuts: Vec<Rational> = cuts.into_iter().collect();
    let mut out = Vec::new();
    for pair in cuts.windows(2) {
        let (a, b) = (&pair[0], &pair[1]);
        let cell = midpoint(a, b);
        let polys: BTreeSet<Poly> = fns.iter().map(|f| f.piece_at(&cell).poly.clone()).collect();
        let polys: Vec<Poly> = polys.into_iter().collect();
        let mut diffs: BTreeSet<Poly> = BTreeSet::new();
        for (i, p) in polys.iter().enumerate() {
            for q in &polys[i + 1..] {
                let d = p - q;
                if !d.is_constant() {
                    diffs.insert(d.monic());
                }
            }
        }
        let product = diffs
            .iter()
            .fold(Poly::constant(int(1)), |acc, d| &acc * d);
        let mut marks = vec![RealRoot::Exact(a.clone())];
        marks.extend(isolate_roots(&product, a, b));
        marks.push(RealRoot::Exact(b.clone()));
        for k in 0..marks.len() - 1 {
            let (lo, hi) = marks.split_at_mut(k + 1);
            out.push(Abscissa::Exact(rational_between(&mut lo[k], &mut hi[0])));
            out.push(match &hi[0] {
                RealRoot::Exact(x) => Abscissa::Exact(x.clone()),
                RealRoot::Isolated(root) => Abscissa::Root {
                    root: root.clone(),
                    cell: cell.clone(),
                },
            });
        }
    }
    let last = cuts.last().cloned().unwrap_or_else(|| int(0));
    out.push(Abscissa::Exact(last + int(1)));
    out
}
