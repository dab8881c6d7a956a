//! Ground sets, point sets and pair sets.
//!
//! Every ground set is presented as a finite list of *classes*. For a finite
//! space a class is a single point. For the natural numbers with a finite
//! distinguished set `A`, each element of `A` is its own class and all the
//! remaining numbers share one class, written `*`. Products take pairs of
//! classes. Every set this crate builds on such a ground is a union of
//! classes, so a [`PointSet`] is a bitset over classes, and all membership
//! questions are decided exactly even when the ground set is infinite.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use fixedbitset::FixedBitSet;

/// The class label for the natural numbers outside the distinguished set.
pub const REST: &str = "*";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ground {
    Finite(Vec<String>),
    /// `ℕ = {1, 2, ...}` with distinguished points; the classes are the
    /// distinguished points in order, then [`REST`].
    Naturals { special: Vec<u64> },
    Product(Box<Ground>, Box<Ground>),
}

impl Ground {
    pub fn finite<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Ground {
        Ground::Finite(labels.into_iter().map(Into::into).collect())
    }

    pub fn product(left: &Ground, right: &Ground) -> Ground {
        Ground::Product(Box::new(left.clone()), Box::new(right.clone()))
    }

    /// Number of classes.
    pub fn len(&self) -> usize {
        match self {
            Ground::Finite(labels) => labels.len(),
            Ground::Naturals { special } => special.len() + 1,
            Ground::Product(a, b) => a.len() * b.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Splits a product class into its factor classes.
    pub fn split(&self, class: usize) -> Option<(usize, usize)> {
        match self {
            Ground::Product(_, b) => Some((class / b.len(), class % b.len())),
            _ => None,
        }
    }

    pub fn pair_class(&self, left: usize, right: usize) -> usize {
        match self {
            Ground::Product(_, b) => left * b.len() + right,
            _ => panic!("pair_class on a ground that is not a product"),
        }
    }

    pub fn label(&self, class: usize) -> String {
        match self {
            Ground::Finite(labels) => labels[class].clone(),
            Ground::Naturals { special } => special
                .get(class)
                .map_or_else(|| REST.to_string(), u64::to_string),
            Ground::Product(a, b) => {
                format!("({},{})", a.label(class / b.len()), b.label(class % b.len()))
            }
        }
    }

    pub fn labels(&self) -> Vec<String> {
        (0..self.len()).map(|c| self.label(c)).collect()
    }

    /// Resolves a point label to its class. On the natural numbers any
    /// positive integer is accepted and mapped to its class.
    pub fn class_of(&self, label: &str) -> Option<usize> {
        match self {
            Ground::Finite(labels) => labels.iter().position(|l| l == label),
            Ground::Naturals { special } => {
                if label == REST {
                    return Some(special.len());
                }
                let n: u64 = label.trim().parse().ok().filter(|&n| n >= 1)?;
                Some(special.iter().position(|&s| s == n).unwrap_or(special.len()))
            }
            Ground::Product(a, b) => {
                let inner = label.trim().strip_prefix('(')?.strip_suffix(')')?;
                let (l, r) = split_top_level(inner)?;
                Some(a.class_of(l)? * b.len() + b.class_of(r)?)
            }
        }
    }

    pub fn empty_set(&self) -> PointSet {
        PointSet::empty(self.len())
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Parses a set given as point labels. Returns the first unknown label
    /// on failure.
    pub fn set_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<PointSet, String> {
        let mut set = self.empty_set();
        for l in labels {
            let c = self.class_of(l.as_ref()).ok_or_else(|| l.as_ref().to_string())?;
            set.insert(c);
        }
        Ok(set)
    }

    /// `left × right` as a set over this product ground.
    pub fn box_set(&self, left: &PointSet, right: &PointSet) -> PointSet {
        let mut out = self.empty_set();
        for i in left.iter() {
            for j in right.iter() {
                out.insert(self.pair_class(i, j));
            }
        }
        out
    }

    /// The factors of a set that is a box, if it is one.
    pub fn as_box(&self, set: &PointSet) -> Option<(PointSet, PointSet)> {
        let Ground::Product(a, b) = self else {
            return None;
        };
        let mut left = a.empty_set();
        let mut right = b.empty_set();
        for c in set.iter() {
            let (i, j) = self.split(c).unwrap();
            left.insert(i);
            right.insert(j);
        }
        (self.box_set(&left, &right) == *set).then_some((left, right))
    }

    /// Human-readable form of a set: cofinite sets of naturals print as
    /// `S \ {..}` and boxes over them as `A × B`; finite sets list labels.
    pub fn render(&self, set: &PointSet) -> String {
        if set.is_empty() {
            return "∅".to_string();
        }
        match self {
            Ground::Naturals { special } => {
                if set.contains(special.len()) {
                    let missing: Vec<String> = special
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| !set.contains(*i))
                        .map(|(_, s)| s.to_string())
                        .collect();
                    if missing.is_empty() {
                        "S".to_string()
                    } else {
                        format!("S \\ {{{}}}", missing.join(", "))
                    }
                } else {
                    brace(set.iter().map(|c| special[c].to_string()))
                }
            }
            Ground::Product(a, b) if self.has_infinite_classes() => match self.as_box(set) {
                Some((l, r)) if l.count() > 1 || r.count() > 1 => {
                    format!("{} × {}", paren(a.render(&l)), paren(b.render(&r)))
                }
                _ => brace(set.iter().map(|c| self.label(c))),
            },
            _ => brace(set.iter().map(|c| self.label(c))),
        }
    }

    /// The points of the set with every natural-number coordinate in
    /// `1..=window`, as labels.
    pub fn window_view(&self, set: &PointSet, window: u64) -> Vec<String> {
        self.window_points(window)
            .into_iter()
            .filter(|(_, c)| set.contains(*c))
            .map(|(label, _)| label)
            .collect()
    }

    fn window_points(&self, window: u64) -> Vec<(String, usize)> {
        match self {
            Ground::Finite(labels) => labels.iter().cloned().zip(0..).collect(),
            Ground::Naturals { .. } => (1..=window)
                .map(|n| {
                    let label = n.to_string();
                    let c = self.class_of(&label).unwrap();
                    (label, c)
                })
                .collect(),
            Ground::Product(a, b) => {
                let right = b.window_points(window);
                a.window_points(window)
                    .into_iter()
                    .flat_map(|(la, ca)| {
                        right
                            .iter()
                            .map(move |(lb, cb)| (format!("({la},{lb})"), ca * b.len() + cb))
                    })
                    .collect()
            }
        }
    }

    /// True when some class stands for infinitely many points.
    pub fn has_infinite_classes(&self) -> bool {
        match self {
            Ground::Finite(_) => false,
            Ground::Naturals { .. } => true,
            Ground::Product(a, b) => a.has_infinite_classes() || b.has_infinite_classes(),
        }
    }
}

fn brace(items: impl Iterator<Item = String>) -> String {
    format!("{{{}}}", items.collect::<Vec<_>>().join(", "))
}

fn paren(s: String) -> String {
    if s.contains(' ') && !s.starts_with('{') {
        format!("({s})")
    } else {
        s
    }
}

/// Splits `a,b` at the comma that is not nested in parentheses.
pub(crate) fn split_top_level(s: &str) -> Option<(&str, &str)> {
    let mut depth = 0i32;
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some((s[..i].trim(), s[i + 1..].trim())),
            _ => {}
        }
    }
    None
}

/// A set of classes of some ground.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PointSet(FixedBitSet);

impl PointSet {
    pub fn empty(universe: usize) -> Self {
        PointSet(FixedBitSet::with_capacity(universe))
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        PointSet(bits)
    }

    pub fn from_indices(universe: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(universe);
        for i in indices {
            set.insert(i);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.0.len()
    }

    pub fn insert(&mut self, i: usize) {
        self.0.insert(i);
    }

    pub fn remove(&mut self, i: usize) {
        self.0.set(i, false);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.contains(i)
    }

    pub fn count(&self) -> usize {
        self.0.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_clear()
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersects(&self, other: &PointSet) -> bool {
        !self.0.is_disjoint(&other.0)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.0.intersect_with(&other.0);
        out
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.0.union_with(&other.0);
        out
    }

    pub fn complement(&self) -> PointSet {
        let mut out = self.clone();
        out.0.toggle_range(..);
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.ones()
    }
}

/// Smaller sets first, then lexicographic on members.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.count()
            .cmp(&other.count())
            .then_with(|| self.iter().cmp(other.iter()))
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A set of ordered pairs of point indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PairSet(BTreeSet<(usize, usize)>);

impl PairSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, p: usize, q: usize) {
        self.0.insert((p, q));
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        self.0.contains(&(p, q))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().copied()
    }

    /// The slice `{q : (p, q) ∈ self}`.
    pub fn slice(&self, p: usize, universe: usize) -> PointSet {
        PointSet::from_indices(universe, self.iter().filter(|&(a, _)| a == p).map(|(_, b)| b))
    }

    pub fn render(&self, labels: &[String]) -> String {
        brace(self.iter().map(|(p, q)| format!("({}, {})", labels[p], labels[q])))
    }
}

impl FromIterator<(usize, usize)> for PairSet {
    fn from_iter<I: IntoIterator<Item = (usize, usize)>>(iter: I) -> Self {
        PairSet(iter.into_iter().collect())
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", brace(self.iter().map(|i| i.to_string())))
    }
}
