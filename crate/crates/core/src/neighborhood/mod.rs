//! Spheres, entourages and r-spheres of a statistical metric space, and
//! the f-spheres of a generalized écart.
//!
//! Family enumeration is exact: a sphere at `p` only depends on the order
//! of the values `F_pq(u)` against each other and against `1 - v`, and that
//! order only changes at the critical abscissae of the profile at `p`.

mod ecart;
mod poset;

pub use ecart::{EcartError, GEcart};
pub use poset::{Elem, Poset, PosetError};

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_traits::One;

use crate::critical::{compare_at, critical_abscissae, Abscissa};
use crate::distfn::DistFn;
use crate::gtop::NeighborhoodSystem;
use crate::rational::{format_rational, is_positive, Rational};
use crate::sets::{PairSet, PointSet};
use crate::smspace::SmSpace;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SphereError {
    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: String },
}

fn positive(name: &'static str, x: &Rational) -> Result<(), SphereError> {
    if is_positive(x) {
        Ok(())
    } else {
        Err(SphereError::NonPositive {
            name,
            value: format_rational(x),
        })
    }
}

/// `{q : F_pq(u) > 1 - v}`.
pub fn sphere(s: &SmSpace, p: usize, u: &Rational, v: &Rational) -> Result<PointSet, SphereError> {
    positive("u", u)?;
    positive("v", v)?;
    let level = Rational::one() - v;
    Ok(PointSet::from_indices(
        s.len(),
        (0..s.len()).filter(|&q| s.dist(p, q).value(u) > level),
    ))
}

/// `{(p, q) : G_pq(u) < v}`.
pub fn entourage(s: &SmSpace, u: &Rational, v: &Rational) -> Result<PairSet, SphereError> {
    positive("u", u)?;
    positive("v", v)?;
    let level = Rational::one() - v;
    Ok((0..s.len())
        .flat_map(|p| (0..s.len()).map(move |q| (p, q)))
        .filter(|&(p, q)| s.dist(p, q).value(u) > level)
        .collect())
}

/// Indices sorted by decreasing value at `x`, cut into groups of equal value.
fn level_groups(fns: &[&DistFn], x: &Abscissa) -> Vec<Vec<usize>> {
    let mut order: Vec<usize> = (0..fns.len()).collect();
    order.sort_by(|&a, &b| compare_at(fns[b], fns[a], x));
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for i in order {
        match groups.last_mut() {
            Some(g) if compare_at(fns[g[0]], fns[i], x) == Ordering::Equal => g.push(i),
            _ => groups.push(vec![i]),
        }
    }
    groups
}

/// Every distinct sphere `N_p(u, v)` over all `u, v > 0`.
pub fn sphere_family(s: &SmSpace, p: usize) -> Vec<PointSet> {
    let fns = s.profile(p);
    let one = DistFn::one();
    let mut family = BTreeSet::new();
    for x in critical_abscissae(&fns) {
        let groups = level_groups(&fns, &x);
        // the level 1 - v ranges over (-inf, 1): if nothing reaches 1 a
        // level between the top value and 1 leaves the sphere empty
        if compare_at(fns[groups[0][0]], &one, &x) == Ordering::Less {
            family.insert(PointSet::empty(s.len()));
        }
        let mut acc = PointSet::empty(s.len());
        for g in groups {
            for q in g {
                acc.insert(q);
            }
            family.insert(acc.clone());
        }
    }
    family.into_iter().collect()
}

/// The system of all `(u, v)`-spheres.
pub fn sphere_system(s: &SmSpace) -> NeighborhoodSystem {
    let families = (0..s.len()).map(|p| sphere_family(s, p)).collect();
    NeighborhoodSystem::new(s.ground(), families).expect("families match the ground")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    Spheres,
    Entourages,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Collection {
    Spheres(Vec<PointSet>),
    Entourages(Vec<PairSet>),
}

impl Collection {
    pub fn len(&self) -> usize {
        match self {
            Collection::Spheres(v) => v.len(),
            Collection::Entourages(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// All spheres `N_p(u, v)` with `(u, v) ∈ z` and `p` in the space, or all
/// entourages `U(u, v)`, deduplicated.
pub fn collection_over(s: &SmSpace, z: &[(Rational, Rational)], which: Which) -> Result<Collection, SphereError> {
    match which {
        Which::Spheres => {
            let mut out = BTreeSet::new();
            for (u, v) in z {
                for p in 0..s.len() {
                    out.insert(sphere(s, p, u, v)?);
                }
            }
            Ok(Collection::Spheres(out.into_iter().collect()))
        }
        Which::Entourages => {
            let mut out = BTreeSet::new();
            for (u, v) in z {
                out.insert(entourage(s, u, v)?);
            }
            Ok(Collection::Entourages(out.into_iter().collect()))
        }
    }
}

/// `{q : G_pq(u) < G_pr(u)}`, that is `{q : F_pq(u) > F_pr(u)}`.
pub fn r_sphere(s: &SmSpace, p: usize, r: usize, u: &Rational) -> Result<PointSet, SphereError> {
    positive("u", u)?;
    let bound = s.dist(p, r).value(u);
    Ok(PointSet::from_indices(
        s.len(),
        (0..s.len()).filter(|&q| s.dist(p, q).value(u) > bound),
    ))
}

/// The non-empty r-spheres at `p` over all `r` and all `u > 0`.
pub fn r_family(s: &SmSpace, p: usize) -> Vec<PointSet> {
    let fns = s.profile(p);
    let mut family = BTreeSet::new();
    for x in critical_abscissae(&fns) {
        for r in 0..s.len() {
            let set = PointSet::from_indices(
                s.len(),
                (0..s.len()).filter(|&q| compare_at(fns[q], fns[r], &x) == Ordering::Greater),
            );
            if !set.is_empty() {
                family.insert(set);
            }
        }
    }
    family.into_iter().collect()
}

/// The r-sphere system; a point may end up with an empty family.
pub fn r_system(s: &SmSpace) -> NeighborhoodSystem {
    let families = (0..s.len()).map(|p| r_family(s, p)).collect();
    NeighborhoodSystem::new(s.ground(), families).expect("families match the ground")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use crate::smspace::MetricKind;

    fn coin() -> SmSpace {
        SmSpace::build(
            vec!["0".into(), "1".into()],
            vec![("0".into(), "1".into(), DistFn::step(&int(1)).unwrap())],
        )
        .unwrap()
    }

    fn dice() -> SmSpace {
        SmSpace::integer_line(6, MetricKind::Step)
    }

    fn set(s: &SmSpace, xs: &[&str]) -> PointSet {
        s.ground().set_of(xs).unwrap()
    }

    #[test]
    fn coin_spheres() {
        let s = coin();
        assert_eq!(sphere(&s, 0, &rat(1, 2), &rat(1, 2)).unwrap(), set(&s, &["0"]));
        assert_eq!(sphere(&s, 0, &int(2), &rat(1, 2)).unwrap(), set(&s, &["0", "1"]));
        assert_eq!(sphere(&s, 0, &rat(1, 2), &int(2)).unwrap(), set(&s, &["0", "1"]));
        assert!(sphere(&s, 0, &int(0), &int(1)).is_err());
        assert_eq!(sphere_family(&s, 0), vec![set(&s, &["0"]), set(&s, &["0", "1"])]);
    }

    #[test]
    fn dice_entourages_and_family() {
        let s = dice();
        assert_eq!(entourage(&s, &rat(1, 2), &rat(1, 2)).unwrap().len(), 6);
        assert_eq!(entourage(&s, &rat(3, 2), &rat(1, 2)).unwrap().len(), 16);
        assert_eq!(entourage(&s, &int(10), &rat(1, 2)).unwrap().len(), 36);
        let fam = sphere_family(&s, 0);
        assert_eq!(fam.len(), 6);
        for (k, f) in fam.iter().enumerate() {
            assert_eq!(*f, PointSet::from_indices(6, 0..=k));
        }
    }

    #[test]
    fn collections() {
        let s = coin();
        let c = collection_over(&s, &[(rat(1, 2), rat(1, 2))], Which::Spheres).unwrap();
        assert_eq!(c, Collection::Spheres(vec![set(&s, &["0"]), set(&s, &["1"])]));
        let d = dice();
        let c = collection_over(&d, &[(rat(3, 2), rat(1, 2)), (rat(5, 2), rat(1, 2))], Which::Entourages).unwrap();
        assert_eq!(c.len(), 2);
        assert!(collection_over(&d, &[], Which::Entourages).unwrap().is_empty());
    }

    #[test]
    fn r_spheres() {
        let ramp = SmSpace::integer_line(10, MetricKind::Ramp);
        assert_eq!(r_sphere(&ramp, 0, 1, &rat(1, 4)).unwrap(), PointSet::from_indices(10, [0]));
        let s = coin();
        assert_eq!(r_sphere(&s, 0, 1, &rat(1, 2)).unwrap(), set(&s, &["0"]));
        assert!(r_sphere(&s, 1, 1, &rat(1, 2)).unwrap().is_empty());
        let sys = r_system(&s);
        assert_eq!(sys.family(0), &[set(&s, &["0"])]);
        assert_eq!(sys.family(1), &[set(&s, &["1"])]);
        let fam = r_family(&dice(), 0);
        assert_eq!(fam.len(), 5);
        for (k, f) in fam.iter().enumerate() {
            assert_eq!(*f, PointSet::from_indices(6, 0..=k));
        }
    }

    #[test]
    fn singleton_r_system_is_empty() {
        let s = SmSpace::build(vec!["p".into()], vec![]).unwrap();
        assert!(r_system(&s).family(0).is_empty());
        assert_eq!(sphere_family(&s, 0), vec![PointSet::full(1)]);
    }
}
