//! Partially ordered value sets with a least element `0`.

use std::fmt;

use crate::sets::split_top_level;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PosetError {
    #[error("the order relates `{0}` to itself")]
    Reflexive(String),
    #[error("the order is not transitive at `{0}` < `{1}` < `{2}`")]
    Intransitive(String, String, String),
    #[error("`{0}` is not above the least element")]
    NotLeast(String),
    #[error("unknown poset element `{0}`")]
    Unknown(String),
    #[error("duplicate poset element `{0}`")]
    Duplicate(String),
    #[error("relation matrix must be {0}x{0}")]
    Shape(usize),
}

/// A partially ordered set with least element `0`, given by its strict
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Poset {
    /// `{0, 1, 2, ...}` with the usual order.
    Naturals,
    Explicit {
        elements: Vec<String>,
        less: Vec<Vec<bool>>,
        zero: usize,
    },
    /// Pairs, with `(a, b) < (c, d)` iff `a < c` and `b < d`. This strict
    /// order makes spheres of a product écart the boxes of factor spheres;
    /// `(0, 0)` is below every pair with both coordinates positive and
    /// incomparable to the rest.
    Product(Box<Poset>, Box<Poset>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Nat(u64),
    Idx(usize),
    Pair(Box<Elem>, Box<Elem>),
}

impl Elem {
    pub fn pair(a: Elem, b: Elem) -> Elem {
        Elem::Pair(Box::new(a), Box::new(b))
    }
}

impl Poset {
    /// Checks irreflexivity, transitivity and that `zero` is least.
    pub fn explicit(elements: Vec<String>, less: Vec<Vec<bool>>, zero: &str) -> Result<Poset, PosetError> {
        let n = elements.len();
        if less.len() != n || less.iter().any(|r| r.len() != n) {
            return Err(PosetError::Shape(n));
        }
        for (i, e) in elements.iter().enumerate() {
            if elements[..i].contains(e) {
                return Err(PosetError::Duplicate(e.clone()));
            }
            if less[i][i] {
                return Err(PosetError::Reflexive(e.clone()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if less[a][b] && less[b][c] && !less[a][c] {
                        return Err(PosetError::Intransitive(
                            elements[a].clone(),
                            elements[b].clone(),
                            elements[c].clone(),
                        ));
                    }
                }
            }
        }
        let z = elements
            .iter()
            .position(|e| e == zero)
            .ok_or_else(|| PosetError::Unknown(zero.to_string()))?;
        if let Some(e) = (0..n).find(|&e| e != z && !less[z][e]) {
            return Err(PosetError::NotLeast(elements[e].clone()));
        }
        Ok(Poset::Explicit {
            elements,
            less,
            zero: z,
        })
    }

    pub fn product(a: &Poset, b: &Poset) -> Poset {
        Poset::Product(Box::new(a.clone()), Box::new(b.clone()))
    }

    pub fn zero(&self) -> Elem {
        match self {
            Poset::Naturals => Elem::Nat(0),
            Poset::Explicit { zero, .. } => Elem::Idx(*zero),
            Poset::Product(a, b) => Elem::pair(a.zero(), b.zero()),
        }
    }

    pub fn contains(&self, e: &Elem) -> bool {
        match (self, e) {
            (Poset::Naturals, Elem::Nat(_)) => true,
            (Poset::Explicit { elements, .. }, Elem::Idx(i)) => *i < elements.len(),
            (Poset::Product(a, b), Elem::Pair(x, y)) => a.contains(x) && b.contains(y),
            _ => false,
        }
    }

    /// The strict order. Both elements must belong to the poset.
    pub fn lt(&self, a: &Elem, b: &Elem) -> bool {
        match (self, a, b) {
            (Poset::Naturals, Elem::Nat(x), Elem::Nat(y)) => x < y,
            (Poset::Explicit { less, .. }, Elem::Idx(x), Elem::Idx(y)) => less[*x][*y],
            (Poset::Product(p, q), Elem::Pair(a1, a2), Elem::Pair(b1, b2)) => p.lt(a1, b1) && q.lt(a2, b2),
            _ => false,
        }
    }

    pub fn le(&self, a: &Elem, b: &Elem) -> bool {
        a == b || self.lt(a, b)
    }

    /// All elements `f` with `0 < f ≤ bound`, in a fixed order.
    pub fn positive_up_to(&self, bound: &Elem) -> Vec<Elem> {
        let zero = self.zero();
        self.up_to(bound)
            .into_iter()
            .filter(|f| self.lt(&zero, f))
            .collect()
    }

    /// Elements `f ≤ bound`, where on products `≤` is taken per coordinate.
    /// An out-of-range index bounds nothing on an explicit poset.
    fn up_to(&self, bound: &Elem) -> Vec<Elem> {
        match (self, bound) {
            (Poset::Explicit { elements, .. }, Elem::Idx(b)) if *b >= elements.len() => {
                (0..elements.len()).map(Elem::Idx).collect()
            }
            (Poset::Naturals, Elem::Nat(n)) => (0..=*n).map(Elem::Nat).collect(),
            (Poset::Explicit { elements, .. }, _) => (0..elements.len())
                .map(Elem::Idx)
                .filter(|e| self.le(e, bound))
                .collect(),
            (Poset::Product(a, b), Elem::Pair(x, y)) => {
                let right = b.up_to(y);
                a.up_to(x)
                    .into_iter()
                    .flat_map(|l| right.iter().map(move |r| Elem::pair(l.clone(), r.clone())))
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    pub fn parse(&self, text: &str) -> Result<Elem, PosetError> {
        let text = text.trim();
        let unknown = || PosetError::Unknown(text.to_string());
        match self {
            Poset::Naturals => text.parse().map(Elem::Nat).map_err(|_| unknown()),
            Poset::Explicit { elements, .. } => elements
                .iter()
                .position(|e| e == text)
                .map(Elem::Idx)
                .ok_or_else(unknown),
            Poset::Product(a, b) => {
                let inner = text
                    .strip_prefix('(')
                    .and_then(|t| t.strip_suffix(')'))
                    .ok_or_else(unknown)?;
                let (l, r) = split_top_level(inner).ok_or_else(unknown)?;
                Ok(Elem::pair(a.parse(l)?, b.parse(r)?))
            }
        }
    }

    pub fn render(&self, e: &Elem) -> String {
        match (self, e) {
            (Poset::Naturals, Elem::Nat(n)) => n.to_string(),
            (Poset::Explicit { elements, .. }, Elem::Idx(i)) => elements[*i].clone(),
            (Poset::Product(a, b), Elem::Pair(x, y)) => format!("({},{})", a.render(x), b.render(y)),
            _ => format!("{e:?}"),
        }
    }
}

impl fmt::Display for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Poset::Naturals => f.write_str("naturals"),
            Poset::Explicit { elements, .. } => write!(f, "explicit({})", elements.join(", ")),
            Poset::Product(a, b) => write!(f, "{a} × {b}"),
        }
    }
}
