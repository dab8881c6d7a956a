//! Algebraic and order-theoretic invariants on randomly generated inputs.

use proptest::prelude::*;

use smtop::distfn::{DistFn, Piece};
use smtop::gtop::{NeighborhoodSystem, SystemType};
use smtop::neighborhood::{entourage, r_family, r_sphere, sphere, sphere_family};
use smtop::poly::Poly;
use smtop::product::{box_system, verify_type_preservation};
use smtop::rational::{format_rational, one, parse_rational, rat, zero, Rational};
use smtop::sets::{Ground, PointSet};
use smtop::smspace::SmSpace;
use smtop::tnorm::TNorm;

/// Multiples of 1/16 in `[0, 1]`.
fn unit() -> impl Strategy<Value = Rational> {
    (0i64..=16).prop_map(|k| rat(k, 16))
}

/// Multiples of 1/8 in `(0, 6]`.
fn positive() -> impl Strategy<Value = Rational> {
    (1i64..=48).prop_map(|k| rat(k, 8))
}

/// A piecewise-linear distribution function with jumps: on each piece it
/// rises linearly from its right limit at the start to its value at the end.
/// Starts at 0, so it is never the function of a zero distance.
fn dist_fn() -> impl Strategy<Value = DistFn> {
    (1usize..=4)
        .prop_flat_map(|k| {
            (
                prop::collection::btree_set(1i64..=40, k),
                prop::collection::vec(0i64..=16, 2 * k),
                any::<bool>(),
            )
        })
        .prop_map(|(ends, mut levels, final_jump)| {
            levels.sort_unstable();
            levels[0] = 0;
            if !final_jump {
                *levels.last_mut().unwrap() = 16;
            }
            let mut pieces = Vec::new();
            let mut start = zero();
            for (i, end) in ends.iter().enumerate() {
                let end = rat(*end, 4);
                let (lo, hi) = (rat(levels[2 * i], 16), rat(levels[2 * i + 1], 16));
                let slope = (&hi - &lo) / (&end - &start);
                let c0 = &lo - &slope * &start;
                pieces.push(Piece {
                    start: start.clone(),
                    end: Some(end.clone()),
                    poly: Poly::linear(c0, slope),
                });
                start = end;
            }
            pieces.push(Piece {
                start,
                end: None,
                poly: Poly::constant(one()),
            });
            DistFn::from_pieces(pieces).unwrap()
        })
}

/// A space on 2 to 4 points with random symmetric off-diagonal functions.
fn space() -> impl Strategy<Value = SmSpace> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(dist_fn(), n * (n - 1) / 2)))
        .prop_map(|(n, fns)| {
            let points: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
            let mut fns = fns.into_iter();
            let mut entries = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    entries.push((points[i].clone(), points[j].clone(), fns.next().unwrap()));
                }
            }
            SmSpace::build(points, entries).unwrap()
        })
}

/// A type-V system: each point gets 1 to 3 sets, each forced to contain it.
fn system() -> impl Strategy<Value = NeighborhoodSystem> {
    (1usize..=5)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(prop::collection::vec(0u32..32, 1..=3), n)))
        .prop_map(|(n, masks)| {
            let families = masks
                .into_iter()
                .enumerate()
                .map(|(p, ms)| {
                    ms.into_iter()
                        .map(|m| {
                            let mut s = PointSet::from_indices(n, (0..n).filter(|i| m >> i & 1 == 1));
                            s.insert(p);
                            s
                        })
                        .collect()
                })
                .collect();
            NeighborhoodSystem::new(Ground::Finite((0..n).map(|i| format!("x{i}")).collect()), families).unwrap()
        })
}

fn subset(n: usize, mask: u32) -> PointSet {
    PointSet::from_indices(n, (0..n).filter(|i| mask >> i & 1 == 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn generated_functions_are_valid(f in dist_fn()) {
        prop_assert!(f.validate().is_valid());
        prop_assert_eq!(f.eval(&zero()).unwrap(), zero());
        prop_assert_eq!(f.final_value(), one());
    }

    #[test]
    fn distribution_functions_are_monotone(f in dist_fn(), x in positive(), y in positive()) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let (a, b) = (f.eval(&lo).unwrap(), f.eval(&hi).unwrap());
        prop_assert!(a <= b);
        prop_assert!(a >= zero() && b <= one());
    }

    #[test]
    fn tail_is_the_complement(f in dist_fn(), x in positive()) {
        prop_assert_eq!(f.tail().eval(&x).unwrap(), one() - f.eval(&x).unwrap());
    }

    #[test]
    fn products_multiply_pointwise(f in dist_fn(), g in dist_fn(), x in positive()) {
        let fg = f.multiply(&g);
        prop_assert!(fg.validate().is_valid());
        prop_assert_eq!(fg.eval(&x).unwrap(), f.eval(&x).unwrap() * g.eval(&x).unwrap());
    }

    #[test]
    fn multiplication_is_a_commutative_monoid(f in dist_fn(), g in dist_fn(), h in dist_fn()) {
        prop_assert_eq!(f.multiply(&g), g.multiply(&f));
        prop_assert_eq!(f.multiply(&g).multiply(&h), f.multiply(&g.multiply(&h)));
        prop_assert_eq!(f.multiply(&DistFn::one()), f.clone());
    }

    #[test]
    fn records_round_trip(f in dist_fn()) {
        prop_assert_eq!(DistFn::from_records(f.to_records()).unwrap(), f);
    }

    #[test]
    fn rationals_round_trip(n in -1000i64..1000, d in 1i64..1000) {
        let x = rat(n, d);
        prop_assert_eq!(parse_rational(&format_rational(&x)).unwrap(), x);
    }

    #[test]
    fn builtin_tnorms_satisfy_the_axioms(a in unit(), b in unit(), c in unit(), d in unit()) {
        for t in [TNorm::Product, TNorm::Minimum] {
            let ap = |x: &Rational, y: &Rational| t.apply(x, y).unwrap();
            prop_assert_eq!(ap(&a, &one()), a.clone());
            prop_assert_eq!(ap(&a, &b), ap(&b, &a));
            prop_assert_eq!(ap(&ap(&a, &b), &c), ap(&a, &ap(&b, &c)));
            if a <= c && b <= d {
                prop_assert!(ap(&a, &b) <= ap(&c, &d));
            }
            prop_assert!(ap(&a, &b) <= a.clone().min(b.clone()));
        }
    }

    #[test]
    fn thresholds_are_symmetric(s in space()) {
        for p in s.labels() {
            for q in s.labels() {
                prop_assert_eq!(s.threshold(p, q).unwrap(), s.threshold(q, p).unwrap());
            }
        }
    }

    #[test]
    fn spheres_grow_with_both_parameters(s in space(), u in positive(), du in positive(), v in unit(), dv in unit()) {
        let v = v + rat(1, 32);
        for p in 0..s.len() {
            let small = sphere(&s, p, &u, &v).unwrap();
            let big = sphere(&s, p, &(&u + &du), &(&v + &dv)).unwrap();
            prop_assert!(small.is_subset(&big));
            prop_assert!(small.contains(p));
        }
    }

    #[test]
    fn entourages_are_symmetric_and_slice_into_spheres(s in space(), u in positive(), v in unit()) {
        let v = v + rat(1, 32);
        let e = entourage(&s, &u, &v).unwrap();
        for (p, q) in e.iter() {
            prop_assert!(e.contains(q, p));
        }
        for p in 0..s.len() {
            prop_assert_eq!(e.slice(p, s.len()), sphere(&s, p, &u, &v).unwrap());
        }
    }

    #[test]
    fn every_sphere_is_in_the_family(s in space(), u in positive(), v in unit()) {
        let v = v + rat(1, 32);
        for p in 0..s.len() {
            let fam = sphere_family(&s, p);
            prop_assert!(fam.contains(&sphere(&s, p, &u, &v).unwrap()));
            prop_assert!(fam.contains(&PointSet::full(s.len())));
        }
    }

    #[test]
    fn every_r_sphere_is_in_the_family(s in space(), u in positive()) {
        for p in 0..s.len() {
            let fam = r_family(&s, p);
            for r in 0..s.len() {
                let n = r_sphere(&s, p, r, &u).unwrap();
                prop_assert!(n.is_empty() || fam.contains(&n));
                if r == p {
                    prop_assert!(n.is_empty());
                }
            }
            prop_assert!(fam.iter().all(|n| !n.is_empty() && n.contains(p)));
        }
    }

    #[test]
    fn closure_and_interior(sys in system(), e in 0u32..32, f in 0u32..32) {
        let n = sys.len();
        let (e, f) = (subset(n, e), subset(n, f));
        let cl = sys.closure(&e);
        prop_assert!(e.is_subset(&cl));
        prop_assert!(cl.is_subset(&sys.closure(&e.union(&f))));
        prop_assert_eq!(sys.interior(&e), sys.closure(&e.complement()).complement());
        let int = sys.interior(&e);
        prop_assert!(int.is_subset(&e));
        for p in 0..n {
            prop_assert_eq!(int.contains(p), sys.family(p).iter().any(|u| u.is_subset(&e)));
            prop_assert_eq!(cl.contains(p), sys.family(p).iter().all(|u| u.intersects(&e)));
        }
    }

    #[test]
    fn symmetry_matches_its_definition(sys in system()) {
        let n = sys.len();
        let cl: Vec<PointSet> = (0..n).map(|q| sys.closure(&subset(n, 1 << q))).collect();
        let symmetric = (0..n).all(|p| (0..n).all(|q| cl[q].contains(p) == cl[p].contains(q)));
        prop_assert_eq!(sys.is_symmetric().holds(), symmetric);
    }

    #[test]
    fn box_products_keep_the_common_type(a in system(), b in system()) {
        let (ca, cb) = (a.classify(), b.classify());
        for t in SystemType::ALL {
            if ca.meets(t) && cb.meets(t) {
                let report = verify_type_preservation(&a, &b, t);
                prop_assert!(report.passed(), "{} lost by the box product", t);
            }
        }
        let boxed = box_system(&a, &b);
        prop_assert_eq!(boxed.len(), a.len() * b.len());
    }
}
