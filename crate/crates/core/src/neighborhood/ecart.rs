//! Generalized écarts `G: S × S → P` and their f-spheres.

use std::collections::BTreeSet;

use super::poset::{Elem, Poset, PosetError};
use crate::gtop::NeighborhoodSystem;
use crate::sets::{Ground, PointSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EcartError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("unknown point `{0}`")]
    UnknownPoint(String),
    #[error("G({0}, {0}) must be the least element")]
    Diagonal(String),
    #[error("value for ({0}, {1}) given twice")]
    Duplicate(String, String),
    #[error("no value for ({0}, {1})")]
    Missing(String, String),
    #[error("value {0} is not in the range poset")]
    OutOfRange(String),
    #[error("expected {expected} values, got {got}")]
    Shape { expected: usize, got: usize },
}

/// A generalized écart on the classes of a ground.
///
/// On the natural numbers with distinguished set `A` the value between two
/// points outside `A` is the value on the class `*` with itself; it must be
/// `0` since it is also `G(p, p)` for every such `p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GEcart {
    ground: Ground,
    range: Poset,
    values: Vec<Elem>,
}

impl GEcart {
    /// `values` is the class-by-class table in row-major order.
    pub fn new(ground: Ground, range: Poset, values: Vec<Elem>) -> Result<GEcart, EcartError> {
        let n = ground.len();
        if values.len() != n * n {
            return Err(EcartError::Shape {
                expected: n * n,
                got: values.len(),
            });
        }
        if let Some(v) = values.iter().find(|v| !range.contains(v)) {
            return Err(EcartError::OutOfRange(format!("{v:?}")));
        }
        let zero = range.zero();
        if let Some(p) = (0..n).find(|&p| values[p * n + p] != zero) {
            return Err(EcartError::Diagonal(ground.label(p)));
        }
        Ok(GEcart { ground, range, values })
    }

    /// An écart on the natural numbers: `table` gives the values on
    /// `A × A`; the value is `mixed` when exactly one point is in `A` and
    /// `outside` when neither is.
    pub fn on_naturals(
        special: Vec<u64>,
        range: Poset,
        table: Vec<((u64, u64), Elem)>,
        outside: Elem,
        mixed: Elem,
    ) -> Result<GEcart, EcartError> {
        let ground = Ground::Naturals {
            special: special.clone(),
        };
        let k = special.len();
        let n = k + 1;
        let mut values: Vec<Option<Elem>> = vec![None; n * n];
        for ((p, q), e) in table {
            let pos = |x: u64| {
                special
                    .iter()
                    .position(|&s| s == x)
                    .ok_or_else(|| EcartError::UnknownPoint(x.to_string()))
            };
            let (i, j) = (pos(p)?, pos(q)?);
            if values[i * n + j].replace(e).is_some() {
                return Err(EcartError::Duplicate(p.to_string(), q.to_string()));
            }
        }
        for i in 0..k {
            values[i * n + k] = Some(mixed.clone());
            values[k * n + i] = Some(mixed.clone());
            values[i * n + i].get_or_insert_with(|| range.zero());
        }
        values[k * n + k] = Some(outside);
        let values = values
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.ok_or_else(|| EcartError::Missing(ground.label(c / n), ground.label(c % n))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ground, range, values)
    }

    /// An écart on finitely many labelled points. Missing diagonal values
    /// are `0`; every other pair must be given.
    pub fn on_points(
        points: Vec<String>,
        range: Poset,
        table: Vec<((String, String), Elem)>,
    ) -> Result<GEcart, EcartError> {
        let ground = Ground::Finite(points);
        let n = ground.len();
        let mut values: Vec<Option<Elem>> = vec![None; n * n];
        for ((p, q), e) in table {
            let i = ground.class_of(&p).ok_or_else(|| EcartError::UnknownPoint(p.clone()))?;
            let j = ground.class_of(&q).ok_or_else(|| EcartError::UnknownPoint(q.clone()))?;
            if values[i * n + j].replace(e).is_some() {
                return Err(EcartError::Duplicate(p, q));
            }
        }
        for i in 0..n {
            values[i * n + i].get_or_insert_with(|| range.zero());
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(c, v)| v.ok_or_else(|| EcartError::Missing(ground.label(c / n), ground.label(c % n))))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(ground, range, values)
    }

    /// The écart on `ℕ` with `A = {1, 2, 3}` whose f-sphere tables are the
    /// worked example: `0` off `A`, `1` across `A`, and an explicit table
    /// on `A × A`.
    pub fn worked_example() -> GEcart {
        let table = [
            ((1, 2), 2),
            ((1, 3), 3),
            ((2, 1), 4),
            ((2, 3), 6),
            ((3, 1), 1),
            ((3, 2), 2),
        ]
        .into_iter()
        .map(|(pq, v)| (pq, Elem::Nat(v)))
        .collect();
        Self::on_naturals(vec![1, 2, 3], Poset::Naturals, table, Elem::Nat(0), Elem::Nat(1))
            .expect("valid écart")
    }

    /// `G((p1, p2), (q1, q2)) = (G1(p1, q1), G2(p2, q2))` into the product
    /// poset.
    pub fn product(a: &GEcart, b: &GEcart) -> GEcart {
        let ground = Ground::product(&a.ground, &b.ground);
        let (na, nb) = (a.ground.len(), b.ground.len());
        let n = ground.len();
        let mut values = Vec::with_capacity(n * n);
        for p in 0..n {
            for q in 0..n {
                let (p1, p2) = (p / nb, p % nb);
                let (q1, q2) = (q / nb, q % nb);
                values.push(Elem::pair(
                    a.values[p1 * na + q1].clone(),
                    b.values[p2 * nb + q2].clone(),
                ));
            }
        }
        GEcart {
            ground,
            range: Poset::product(&a.range, &b.range),
            values,
        }
    }

    pub fn ground(&self) -> &Ground {
        &self.ground
    }

    pub fn range(&self) -> &Poset {
        &self.range
    }

    /// The value between two classes.
    pub fn value(&self, p: usize, q: usize) -> &Elem {
        &self.values[p * self.ground.len() + q]
    }

    /// `{q : G(p, q) < f}`.
    pub fn sphere(&self, p: usize, f: &Elem) -> Result<PointSet, EcartError> {
        if !self.range.contains(f) {
            return Err(EcartError::OutOfRange(format!("{f:?}")));
        }
        let n = self.ground.len();
        Ok(PointSet::from_indices(
            n,
            (0..n).filter(|&q| self.range.lt(self.value(p, q), f)),
        ))
    }

    /// The non-empty f-spheres at `p` for `0 < f ≤ bound`.
    pub fn family(&self, p: usize, bound: &Elem) -> Result<Vec<PointSet>, EcartError> {
        if !self.range.contains(bound) {
            return Err(EcartError::OutOfRange(format!("{bound:?}")));
        }
        self.family_over(p, &self.range.positive_up_to(bound))
    }

    /// The non-empty f-spheres at `p` for `f` in `fs`.
    pub fn family_over(&self, p: usize, fs: &[Elem]) -> Result<Vec<PointSet>, EcartError> {
        let mut out = BTreeSet::new();
        for f in fs {
            let s = self.sphere(p, f)?;
            if !s.is_empty() {
                out.insert(s);
            }
        }
        Ok(out.into_iter().collect())
    }

    pub fn system(&self, bound: &Elem) -> Result<NeighborhoodSystem, EcartError> {
        if !self.range.contains(bound) {
            return Err(EcartError::OutOfRange(format!("{bound:?}")));
        }
        self.system_over(&self.range.positive_up_to(bound))
    }

    pub fn system_over(&self, fs: &[Elem]) -> Result<NeighborhoodSystem, EcartError> {
        let families = (0..self.ground.len())
            .map(|p| self.family_over(p, fs))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(NeighborhoodSystem::new(self.ground.clone(), families).expect("families match the ground"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example_spheres() {
        let g = GEcart::worked_example();
        let gr = g.ground();
        let r = |p: &str, f: u64| gr.render(&g.sphere(gr.class_of(p).unwrap(), &Elem::Nat(f)).unwrap());
        assert_eq!(r("1", 0), "∅");
        assert_eq!(r("1", 1), "{1}");
        assert_eq!(r("1", 2), "S \\ {2, 3}");
        assert_eq!(r("2", 5), "S \\ {3}");
        assert_eq!(r("2", 3), "S \\ {1, 3}");
        assert_eq!(r("3", 2), "S \\ {2}");
        assert_eq!(r("7", 1), "S \\ {1, 2, 3}");
        assert_eq!(r("7", 2), "S");
    }

    #[test]
    fn worked_example_system() {
        let g = GEcart::worked_example();
        let sys = g.system(&Elem::Nat(10)).unwrap();
        let fam = |p: &str| -> Vec<String> {
            sys.family(g.ground().class_of(p).unwrap())
                .iter()
                .map(|s| g.ground().render(s))
                .collect()
        };
        assert_eq!(fam("3"), vec!["{3}", "S \\ {2}", "S"]);
        assert_eq!(fam("2"), vec!["{2}", "S \\ {1, 3}", "S \\ {3}", "S"]);
        assert_eq!(fam("9"), vec!["S \\ {1, 2, 3}", "S"]);
        assert!(sys.check_n0().passed());
    }

    #[test]
    fn diagonal_must_be_zero() {
        let err = GEcart::on_naturals(vec![1], Poset::Naturals, vec![((1, 1), Elem::Nat(2))], Elem::Nat(0), Elem::Nat(1));
        assert_eq!(err, Err(EcartError::Diagonal("1".into())));
    }

    #[test]
    fn product_spheres_are_boxes() {
        let g = GEcart::worked_example();
        let gg = GEcart::product(&g, &g);
        let p = gg.ground().class_of("(1,1)").unwrap();
        let f = gg.range().parse("(2,2)").unwrap();
        let s = gg.sphere(p, &f).unwrap();
        let factor = g.sphere(0, &Elem::Nat(2)).unwrap();
        assert_eq!(s, gg.ground().box_set(&factor, &factor));
        assert_eq!(gg.ground().render(&s), "(S \\ {2, 3}) × (S \\ {2, 3})");
    }
}
