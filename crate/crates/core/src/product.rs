//! Cartesian products of spaces, neighborhood systems and écarts, and the
//! brute-force checks that the products keep the structure of the factors.
//!
//! The product of two neighborhood systems is the box system: the
//! neighborhoods of `(p, q)` are the products `A × B` of a neighborhood `A`
//! of `p` and a neighborhood `B` of `q`.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::gtop::{Classification, NeighborhoodSystem, SystemError, SystemType, SystemWitness};
use crate::neighborhood::{r_system, Elem, GEcart};
use crate::sets::{Ground, PointSet};
use crate::smspace::{MengerWitness, SmAxiomReport, SmSpace};
use crate::tnorm::TNorm;

/// Points are the pairs `(p, q)`; `F_(p1,p2)(q1,q2) = F1_p1q1 · F2_p2q2`.
pub fn product_space(a: &SmSpace, b: &SmSpace) -> SmSpace {
    let ground = Ground::product(&a.ground(), &b.ground());
    let (na, nb) = (a.len(), b.len());
    let n = na * nb;
    let matrix = (0..n)
        .map(|p| {
            (0..n)
                .map(|q| a.dist(p / nb, q / nb).multiply(b.dist(p % nb, q % nb)))
                .collect()
        })
        .collect();
    SmSpace::from_matrix(ground.labels(), matrix).expect("products of distribution functions are valid")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductAxiomReport {
    pub left: SmAxiomReport,
    pub right: SmAxiomReport,
    pub product: SmAxiomReport,
}

impl ProductAxiomReport {
    pub fn factors_pass(&self) -> bool {
        self.left.passed() && self.right.passed()
    }

    pub fn passed(&self) -> bool {
        self.product.passed()
    }
}

pub fn verify_product_axioms(a: &SmSpace, b: &SmSpace) -> ProductAxiomReport {
    ProductAxiomReport {
        left: a.check_sm_axioms(),
        right: b.check_sm_axioms(),
        product: product_space(a, b).check_sm_axioms(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FactorViolation {
    pub factor: &'static str,
    pub witness: MengerWitness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductMengerReport {
    /// Set when a factor fails the inequality; the product is then not
    /// checked.
    pub factor_violation: Option<FactorViolation>,
    pub product_witness: Option<MengerWitness>,
    pub triples: usize,
}

impl ProductMengerReport {
    pub fn precondition_met(&self) -> bool {
        self.factor_violation.is_none()
    }

    pub fn passed(&self) -> bool {
        self.precondition_met() && self.product_witness.is_none()
    }
}

/// Checks the Menger inequality with `T(a, b) = ab` on the product, after
/// checking it on both factors.
pub fn verify_product_menger(a: &SmSpace, b: &SmSpace) -> ProductMengerReport {
    let t = TNorm::Product;
    for (factor, s) in [("left", a), ("right", b)] {
        if let Some(witness) = s.check_menger(&t).witness {
            return ProductMengerReport {
                factor_violation: Some(FactorViolation { factor, witness }),
                product_witness: None,
                triples: 0,
            };
        }
    }
    let report = product_space(a, b).check_menger(&t);
    ProductMengerReport {
        factor_violation: None,
        product_witness: report.witness,
        triples: report.triples,
    }
}

pub fn box_system(a: &NeighborhoodSystem, b: &NeighborhoodSystem) -> NeighborhoodSystem {
    let ground = Ground::product(a.ground(), b.ground());
    let families = (0..ground.len())
        .map(|c| {
            let (p, q) = ground.split(c).unwrap();
            a.family(p)
                .iter()
                .flat_map(|x| b.family(q).iter().map(|y| ground.box_set(x, y)))
                .collect()
        })
        .collect();
    NeighborhoodSystem::new(ground, families).expect("boxes live on the product ground")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TypeReport {
    pub which: SystemType,
    pub left: Classification,
    pub right: Classification,
    pub product: Classification,
}

impl TypeReport {
    pub fn precondition_met(&self) -> bool {
        self.left.meets(self.which) && self.right.meets(self.which)
    }

    pub fn preserved(&self) -> bool {
        self.product.meets(self.which)
    }

    /// True unless both factors have the type and the product does not.
    pub fn passed(&self) -> bool {
        !self.precondition_met() || self.preserved()
    }
}

pub fn verify_type_preservation(a: &NeighborhoodSystem, b: &NeighborhoodSystem, which: SystemType) -> TypeReport {
    TypeReport {
        which,
        left: a.classify(),
        right: b.classify(),
        product: box_system(a, b).classify(),
    }
}

/// The product écart into the product poset.
pub fn product_ecart(a: &GEcart, b: &GEcart) -> GEcart {
    GEcart::product(a, b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Equal,
    Finer,
    Coarser,
    Incomparable,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Equal => "equal",
            Relation::Finer => "finer",
            Relation::Coarser => "coarser",
            Relation::Incomparable => "incomparable",
        })
    }
}

impl Relation {
    fn of(a_refines_b: bool, b_refines_a: bool) -> Relation {
        match (a_refines_b, b_refines_a) {
            (true, true) => Relation::Equal,
            (true, false) => Relation::Finer,
            (false, true) => Relation::Coarser,
            (false, false) => Relation::Incomparable,
        }
    }
}

/// How `a` relates to `b`. `a` is finer when every neighborhood of `b`
/// contains a neighborhood of `a` at the same point; equal means each is
/// finer than the other.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub relation: Relation,
    pub per_point: Vec<(String, Relation)>,
    /// A neighborhood of `b` containing no neighborhood of `a`.
    pub b_not_covered: Option<SystemWitness>,
    /// A neighborhood of `a` containing no neighborhood of `b`.
    pub a_not_covered: Option<SystemWitness>,
}

pub fn compare_systems(a: &NeighborhoodSystem, b: &NeighborhoodSystem) -> Result<Comparison, SystemError> {
    let b_not_covered = a.refines(b)?;
    let a_not_covered = b.refines(a)?;
    let covers = |x: &[PointSet], y: &[PointSet]| y.iter().all(|s| x.iter().any(|t| t.is_subset(s)));
    let per_point = (0..a.len())
        .map(|p| {
            let rel = Relation::of(covers(a.family(p), b.family(p)), covers(b.family(p), a.family(p)));
            (a.ground().label(p), rel)
        })
        .collect();
    Ok(Comparison {
        relation: Relation::of(b_not_covered.is_none(), a_not_covered.is_none()),
        per_point,
        b_not_covered,
        a_not_covered,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RProductReport {
    pub classification: Classification,
    /// The direct system compared with the box of the factor systems.
    pub versus_box: Comparison,
}

impl RProductReport {
    pub fn passed(&self) -> bool {
        self.classification.n0.passed()
    }
}

/// Builds the r-sphere system of the product space directly and checks
/// that it is a valid neighborhood system.
pub fn verify_r_product(a: &SmSpace, b: &SmSpace) -> RProductReport {
    // same classes, viewed on the product ground
    let direct = NeighborhoodSystem::new(
        Ground::product(&a.ground(), &b.ground()),
        r_system(&product_space(a, b)).families().to_vec(),
    )
    .expect("class order of the product space");
    let boxed = box_system(&r_system(a), &r_system(b));
    RProductReport {
        classification: direct.classify(),
        versus_box: compare_systems(&direct, &boxed).expect("same product ground"),
    }
}

/// Checks that every product f-sphere with `f ≤ bound` is the box of the
/// factor spheres. Returns the first mismatch as `(point, f)`.
pub fn ecart_box_identity(a: &GEcart, b: &GEcart, bound: (&Elem, &Elem)) -> Option<(String, String)> {
    let g = product_ecart(a, b);
    let fa = a.range().positive_up_to(bound.0);
    let fb = b.range().positive_up_to(bound.1);
    let zero_a = std::iter::once(a.range().zero());
    let zero_b = std::iter::once(b.range().zero());
    let fa: Vec<Elem> = zero_a.chain(fa).collect();
    let fb: Vec<Elem> = zero_b.chain(fb).collect();
    for p in 0..g.ground().len() {
        let (p1, p2) = g.ground().split(p).unwrap();
        for x in &fa {
            for y in &fb {
                let f = Elem::pair(x.clone(), y.clone());
                let got = g.sphere(p, &f).expect("pair in the product poset");
                let want = g
                    .ground()
                    .box_set(&a.sphere(p1, x).unwrap(), &b.sphere(p2, y).unwrap());
                if got != want {
                    return Some((g.ground().label(p), g.range().render(&f)));
                }
            }
        }
    }
    None
}

/// Parameters of the random systems used for the preservation theorems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GeneratorBounds {
    pub max_points: usize,
    pub max_neighborhoods: usize,
}

impl Default for GeneratorBounds {
    fn default() -> Self {
        GeneratorBounds {
            max_points: 5,
            max_neighborhoods: 4,
        }
    }
}

fn trial_seed(seed: u64, which: SystemType, index: usize) -> u64 {
    let mut z = seed ^ ((which as u64) << 56) ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn random_superset(rng: &mut ChaCha8Rng, n: usize, base: &PointSet) -> PointSet {
    let mut s = base.clone();
    for q in 0..n {
        if rng.random_bool(0.3) {
            s.insert(q);
        }
    }
    s
}

/// `up[p]` is the up-set of `p` in a random preorder.
fn random_preorder(rng: &mut ChaCha8Rng, n: usize) -> Vec<PointSet> {
    let mut rel = vec![vec![false; n]; n];
    for (p, row) in rel.iter_mut().enumerate() {
        for (q, cell) in row.iter_mut().enumerate() {
            *cell = p == q || rng.random_bool(0.25);
        }
    }
    for k in 0..n {
        for p in 0..n {
            for q in 0..n {
                if rel[p][k] && rel[k][q] {
                    rel[p][q] = true;
                }
            }
        }
    }
    rel.iter()
        .map(|row| PointSet::from_indices(n, (0..n).filter(|&q| row[q])))
        .collect()
}

/// A random system meant to have type `which`. The candidate is checked by
/// the caller; generators lean towards the type without guaranteeing it.
fn candidate(rng: &mut ChaCha8Rng, which: SystemType, n: usize, k: usize) -> Vec<Vec<PointSet>> {
    let singleton = |p: usize| PointSet::from_indices(n, [p]);
    match which {
        SystemType::V => (0..n)
            .map(|p| {
                let m = rng.random_range(1..=k);
                (0..m).map(|_| random_superset(rng, n, &singleton(p))).collect()
            })
            .collect(),
        SystemType::VD => (0..n)
            .map(|p| {
                let m = rng.random_range(1..=k);
                let mut fam: Vec<PointSet> = (0..m).map(|_| random_superset(rng, n, &singleton(p))).collect();
                if rng.random_bool(0.5) {
                    // a chain
                    fam.sort_by_key(PointSet::count);
                    for i in 1..fam.len() {
                        let grown = fam[i].union(&fam[i - 1]);
                        fam[i] = grown;
                    }
                } else {
                    // closed under intersection, trimmed back to `k` sets
                    let meet = fam.iter().skip(1).fold(fam[0].clone(), |acc, s| acc.intersection(s));
                    fam.truncate(k - 1);
                    fam.push(meet);
                }
                fam
            })
            .collect(),
        SystemType::VAlpha | SystemType::Top => {
            let up = random_preorder(rng, n);
            (0..n)
                .map(|p| {
                    let m = rng.random_range(1..=k);
                    let mut fam: Vec<PointSet> = (0..m).map(|_| random_superset(rng, n, &up[p])).collect();
                    if which == SystemType::Top || rng.random_bool(0.5) {
                        fam[0] = up[p].clone();
                    }
                    fam
                })
                .collect()
        }
    }
}

/// The discrete system `{{p}}` at each `p`, which has every type.
fn fallback(n: usize) -> Vec<Vec<PointSet>> {
    (0..n).map(|p| vec![PointSet::from_indices(n, [p])]).collect()
}

/// A random finite system of the given type, together with whether the
/// generator's own candidate was accepted (otherwise a discrete system is
/// used).
pub fn random_system(rng: &mut ChaCha8Rng, which: SystemType, bounds: GeneratorBounds) -> (NeighborhoodSystem, bool) {
    let n = rng.random_range(1..=bounds.max_points);
    let ground = Ground::Finite((0..n).map(|i| format!("x{i}")).collect());
    for _ in 0..16 {
        let fams = candidate(rng, which, n, bounds.max_neighborhoods);
        let sys = NeighborhoodSystem::new(ground.clone(), fams).expect("candidate on its ground");
        if sys.classify().meets(which) {
            return (sys, true);
        }
    }
    (NeighborhoodSystem::new(ground, fallback(n)).expect("discrete system"), false)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub left: Vec<String>,
    pub right: Vec<String>,
    pub product: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PreservationRun {
    pub which: SystemType,
    pub trials: usize,
    pub preserved: usize,
    /// Trials whose factors both came from the generator rather than the
    /// discrete fallback.
    pub generated: usize,
    pub counterexample: Option<Counterexample>,
}

impl PreservationRun {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none() && self.preserved == self.trials
    }
}

/// Box products of `trials` random pairs of systems of type `which`.
pub fn check_preservation(which: SystemType, trials: usize, seed: u64, bounds: GeneratorBounds) -> PreservationRun {
    let results: Vec<(bool, bool, Option<Counterexample>)> = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, which, i));
            let (a, ga) = random_system(&mut rng, which, bounds);
            let (b, gb) = random_system(&mut rng, which, bounds);
            let product = box_system(&a, &b);
            let ok = product.classify().meets(which);
            let cx = (!ok).then(|| Counterexample {
                trial: i,
                left: a.render(),
                right: b.render(),
                product: product.render(),
            });
            (ok, ga && gb, cx)
        })
        .collect();
    PreservationRun {
        which,
        trials,
        preserved: results.iter().filter(|r| r.0).count(),
        generated: results.iter().filter(|r| r.1).count(),
        counterexample: results.into_iter().find_map(|r| r.2),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EcartTheorem {
    pub identity_mismatch: Option<(String, String)>,
    pub classification: Classification,
}

impl EcartTheorem {
    pub fn passed(&self) -> bool {
        self.identity_mismatch.is_none() && self.classification.meets(SystemType::V)
    }
}

/// The product of the worked-example écart with itself: spheres are boxes
/// for all `f ≤ (bound, bound)` and the product system has type V.
pub fn check_ecart_theorem(bound: u64) -> EcartTheorem {
    let g = GEcart::worked_example();
    let nat = Elem::Nat(bound);
    let gg = product_ecart(&g, &g);
    let b = Elem::pair(nat.clone(), nat.clone());
    EcartTheorem {
        identity_mismatch: ecart_box_identity(&g, &g, (&nat, &nat)),
        classification: gg.system(&b).expect("bound in range").classify(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub seed: u64,
    pub preservation: Vec<PreservationRun>,
    pub ecart: EcartTheorem,
    pub r_products: Vec<(String, RProductReport)>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.preservation.iter().all(PreservationRun::passed)
            && self.ecart.passed()
            && self.r_products.iter().all(|(_, r)| r.passed())
    }
}

/// Runs all product-preservation checks: random box products for each
/// system type, the écart product, and the r-sphere products of the coin
/// and dice spaces.
pub fn verify_theorems(trials: usize, seed: u64, spaces: &[(&str, &SmSpace)]) -> TheoremReport {
    let bounds = GeneratorBounds::default();
    let preservation = SystemType::ALL
        .iter()
        .map(|&t| check_preservation(t, trials, seed, bounds))
        .collect();
    let mut r_products = Vec::new();
    for (i, (na, a)) in spaces.iter().enumerate() {
        for (nb, b) in &spaces[i..] {
            r_products.push((format!("{na} × {nb}"), verify_r_product(a, b)));
        }
    }
    TheoremReport {
        seed,
        preservation,
        ecart: check_ecart_theorem(10),
        r_products,
    }
}
