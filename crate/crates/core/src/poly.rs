//! Univariate polynomials over the rationals, Sturm sequences and exact
//! real-root isolation.
//!
//! Distribution functions are piecewise polynomial. Whenever two pieces
//! cross at an irrational abscissa the crossing is carried as an
//! [`AlgebraicRoot`]: a squarefree polynomial plus a rational isolating
//! interval. Signs of other polynomials at such a root are decided exactly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::rational::{format_rational, midpoint, Rational};

/// Coefficients in ascending order; no trailing zeros (the zero
/// polynomial has no coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn linear(c0: Rational, c1: Rational) -> Self {
        Self::from_coeffs(vec![c0, c1])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::linear(Rational::zero(), Rational::one())
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Constant term, zero for the zero polynomial.
    pub fn constant_term(&self) -> Rational {
        self.coeffs.first().cloned().unwrap_or_else(Rational::zero)
    }

    fn lead(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    pub fn derivative(&self) -> Poly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer(k.into()))
            .collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn scale(&self, k: &Rational) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| c * k).collect())
    }

    /// Leading coefficient one; the zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.lead() {
            Some(lead) => {
                let inv = lead.recip();
                self.scale(&inv)
            }
            None => Poly::zero(),
        }
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dlead = divisor.lead().expect("division by the zero polynomial");
        let ddeg = divisor.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= ddeg {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - ddeg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + ddeg] / dlead;
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(ddeg);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, made monic.
    pub fn squarefree(&self) -> Poly {
        if self.is_constant() {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                let a = self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                let b = rhs.coeffs.get(k).cloned().unwrap_or_else(Rational::zero);
                a + b
            })
            .collect();
        Poly::from_coeffs(coeffs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Poly::from_coeffs(coeffs)
    }
}

/// Serialized as a list of rational strings, lowest degree first.
impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let parts: Vec<String> = if self.coeffs.is_empty() {
            vec!["0".to_string()]
        } else {
            self.coeffs.iter().map(format_rational).collect()
        };
        parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Coeff(#[serde(with = "crate::rational::serde_rational")] Rational);
        let raw = Vec::<Coeff>::deserialize(d)?;
        Ok(Poly::from_coeffs(raw.into_iter().map(|c| c.0).collect()))
    }
}

/// Sturm chain of a polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    chain: Vec<Poly>,
}

impl Sturm {
    pub fn new(p: &Poly) -> Self {
        let mut chain = vec![p.clone()];
        if p.is_zero() {
            return Sturm { chain };
        }
        let mut next = p.derivative();
        while !next.is_zero() {
            let (_, r) = chain.last().unwrap().div_rem(&next);
            chain.push(next);
            next = -&r;
        }
        Sturm { chain }
    }

    fn sign_changes(&self, x: &Rational) -> usize {
        let mut changes = 0;
        let mut last = Ordering::Equal;
        for p in &self.chain {
            let s = p.sign_at(x);
            if s == Ordering::Equal {
                continue;
            }
            if last != Ordering::Equal && s != last {
                changes += 1;
            }
            last = s;
        }
        changes
    }

    /// Distinct real roots in the half-open interval `(a, b]`.
    pub fn count_half_open(&self, a: &Rational, b: &Rational) -> usize {
        self.sign_changes(a).saturating_sub(self.sign_changes(b))
    }

    /// Distinct real roots strictly inside `(a, b)`.
    pub fn count_open(&self, a: &Rational, b: &Rational) -> usize {
        let n = self.count_half_open(a, b);
        if self.chain[0].eval(b).is_zero() {
            n - 1
        } else {
            n
        }
    }
}

/// A real root of a squarefree polynomial, isolated in `(lo, hi)` with
/// rational endpoints at which the polynomial does not vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraicRoot {
    pub poly: Poly,
    pub lo: Rational,
    pub hi: Rational,
}

impl AlgebraicRoot {
    /// Halves the isolating interval. Returns the root itself when the
    /// midpoint hits it exactly.
    pub fn bisect(&mut self) -> Option<Rational> {
        let m = midpoint(&self.lo, &self.hi);
        let sm = self.poly.sign_at(&m);
        if sm == Ordering::Equal {
            return Some(m);
        }
        if sm == self.poly.sign_at(&self.lo) {
            self.lo = m;
        } else {
            self.hi = m;
        }
        None
    }

    /// Sign of `q` at the root.
    pub fn sign_of(&self, q: &Poly) -> Ordering {
        if q.is_zero() {
            return Ordering::Equal;
        }
        let g = self.poly.gcd(q);
        if !g.is_constant() && g.sign_at(&self.lo) != g.sign_at(&self.hi) {
            return Ordering::Equal;
        }
        let sturm = Sturm::new(&q.squarefree());
        let mut root = self.clone();
        loop {
            if sturm.count_open(&root.lo, &root.hi) == 0 {
                // no root of q in the open interval: its sign is constant there
                return q.sign_at(&midpoint(&root.lo, &root.hi));
            }
            if let Some(exact) = root.bisect() {
                return q.sign_at(&exact);
            }
        }
    }

    /// Compares the root with a rational.
    pub fn cmp_rational(&self, x: &Rational) -> Ordering {
        if x > &self.lo && x < &self.hi && self.poly.eval(x).is_zero() {
            return Ordering::Equal;
        }
        let mut root = self.clone();
        loop {
            if x <= &root.lo {
                return Ordering::Greater;
            }
            if x >= &root.hi {
                return Ordering::Less;
            }
            if let Some(exact) = root.bisect() {
                return exact.cmp(x);
            }
        }
    }

    /// A midpoint approximation, for display only.
    pub fn approx(&self) -> Rational {
        midpoint(&self.lo, &self.hi)
    }
}

impl fmt::Display for AlgebraicRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "root of {} in ({}, {})",
            self.poly,
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// A real root located exactly: rational roots are reported as such.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealRoot {
    Exact(Rational),
    Isolated(AlgebraicRoot),
}

/// All distinct real roots of `p` strictly inside `(a, b)`, sorted.
/// `p` need not be squarefree.
pub fn isolate_roots(p: &Poly, a: &Rational, b: &Rational) -> Vec<RealRoot> {
    if p.is_constant() || a >= b {
        return Vec::new();
    }
    let p = p.squarefree();
    let sturm = Sturm::new(&p);
    let mut out = Vec::new();
    let mut stack = vec![(a.clone(), b.clone(), sturm.count_open(a, b))];
    while let Some((lo, hi, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 && !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() {
            out.push(RealRoot::Isolated(AlgebraicRoot {
                poly: p.clone(),
                lo,
                hi,
            }));
            continue;
        }
        let m = midpoint(&lo, &hi);
        let left = sturm.count_open(&lo, &m);
        let at_m = p.eval(&m).is_zero();
        if at_m {
            out.push(RealRoot::Exact(m.clone()));
        }
        let right = n - left - usize::from(at_m);
        stack.push((m.clone(), hi, right));
        stack.push((lo, m, left));
    }
    out.sort_by(cmp_roots);
    out
}

fn cmp_roots(a: &RealRoot, b: &RealRoot) -> Ordering {
    match (a, b) {
        (RealRoot::Exact(x), RealRoot::Exact(y)) => x.cmp(y),
        (RealRoot::Exact(x), RealRoot::Isolated(r)) => r.cmp_rational(x).reverse(),
        (RealRoot::Isolated(r), RealRoot::Exact(x)) => r.cmp_rational(x),
        // isolating intervals produced by one bisection run are disjoint
        (RealRoot::Isolated(r), RealRoot::Isolated(s)) => r.lo.cmp(&s.lo),
    }
}

/// A rational strictly between two distinct consecutive roots.
pub fn rational_between(lower: &mut RealRoot, upper: &mut RealRoot) -> Rational {
    loop {
        match (&mut *lower, &mut *upper) {
            (RealRoot::Exact(x), RealRoot::Exact(y)) => return midpoint(x, y),
            (RealRoot::Exact(x), RealRoot::Isolated(r)) => {
                if &r.lo > x {
                    return r.lo.clone();
                }
                if let Some(e) = r.bisect() {
                    *upper = RealRoot::Exact(e);
                }
            }
            (RealRoot::Isolated(r), RealRoot::Exact(y)) => {
                if &r.hi < y {
                    return r.hi.clone();
                }
                if let Some(e) = r.bisect() {
                    *lower = RealRoot::Exact(e);
                }
            }
            (RealRoot::Isolated(r), RealRoot::Isolated(s)) => {
                if r.hi <= s.lo {
                    return r.hi.clone();
                }
                if let Some(e) = r.bisect() {
                    *lower = RealRoot::Exact(e);
                } else if let Some(e) = s.bisect() {
                    *upper = RealRoot::Exact(e);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| int(c)).collect())
    }

    #[test]
    fn arithmetic_and_division() {
        let a = p(&[-1, 0, 1]); // x^2 - 1
        let b = p(&[1, 1]); // x + 1
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, p(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(&q * &b, a);
        assert_eq!(a.gcd(&p(&[-1, 1])), p(&[-1, 1]));
    }

    #[test]
    fn squarefree_strips_repeated_factors() {
        let a = &p(&[-1, 1]) * &p(&[-1, 1]); // (x-1)^2
        assert_eq!(a.squarefree(), p(&[-1, 1]));
    }

    #[test]
    fn sturm_counts_roots() {
        let a = p(&[-2, 0, 1]); // roots ±sqrt 2
        let s = Sturm::new(&a);
        assert_eq!(s.count_open(&int(-2), &int(2)), 2);
        assert_eq!(s.count_open(&int(0), &int(2)), 1);
        assert_eq!(s.count_open(&int(2), &int(3)), 0);
    }

    #[test]
    fn isolates_irrational_and_rational_roots() {
        let a = &p(&[-2, 0, 1]) * &p(&[-1, 2]); // roots ±sqrt 2 and 1/2
        let roots = isolate_roots(&a, &int(0), &int(2));
        assert_eq!(roots.len(), 2);
        match &roots[0] {
            RealRoot::Exact(x) => assert_eq!(x, &rat(1, 2)),
            RealRoot::Isolated(r) => assert_eq!(r.cmp_rational(&rat(1, 2)), Ordering::Equal),
        }
        match &roots[1] {
            RealRoot::Isolated(r) => {
                assert_eq!(r.cmp_rational(&rat(141, 100)), Ordering::Greater);
                assert_eq!(r.cmp_rational(&rat(142, 100)), Ordering::Less);
                assert_eq!(r.sign_of(&p(&[-2, 0, 1])), Ordering::Equal);
                assert_eq!(r.sign_of(&p(&[-1, 1])), Ordering::Greater);
                assert_eq!(r.sign_of(&p(&[-3, 2])), Ordering::Less);
            }
            other => panic!("expected an isolated root, got {other:?}"),
        }
    }

    #[test]
    fn rational_between_separates() {
        let mut roots = isolate_roots(&p(&[-2, 0, 1]), &int(-3), &int(3));
        let (a, b) = roots.split_at_mut(1);
        let x = rational_between(&mut a[0], &mut b[0]);
        assert!(x > int(-2) && x < int(2));
    }
}
