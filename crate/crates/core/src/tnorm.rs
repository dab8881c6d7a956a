//! Two-place functions on the unit square and the five conditions a
//! Menger triangle function has to meet.
//!
//! The checker implements exactly these conditions (range, monotonicity,
//! commutativity, `T(1,1) = 1`, positivity of `T(a,1)` for `a > 0`) and
//! nothing stronger: associativity is not required.

use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{format_rational, rat, serde_rational, Rational};
use crate::report::AxiomOutcome;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TNormError {
    #[error("argument {0} is outside [0, 1]")]
    OutOfRange(String),
    #[error("axiom grid is empty")]
    EmptyGrid,
    #[error("grid must contain 0 and 1")]
    GridMissingEndpoints,
    #[error("table grid must be strictly increasing from 0 to 1")]
    BadTableGrid,
    #[error("table has {rows}x{cols} values for a grid of {grid} points")]
    TableShape { rows: usize, cols: usize, grid: usize },
}

/// A user-supplied function given by its values on a grid; evaluated
/// off-grid by bilinear interpolation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableTNorm {
    grid: Vec<Rational>,
    values: Vec<Vec<Rational>>,
}

impl TableTNorm {
    pub fn new(grid: Vec<Rational>, values: Vec<Vec<Rational>>) -> Result<Self, TNormError> {
        let ok = grid.first().is_some_and(Zero::is_zero)
            && grid.last().is_some_and(One::is_one)
            && grid.windows(2).all(|w| w[0] < w[1]);
        if !ok {
            return Err(TNormError::BadTableGrid);
        }
        let cols = values.iter().map(Vec::len).find(|&c| c != grid.len());
        if values.len() != grid.len() || cols.is_some() {
            return Err(TNormError::TableShape {
                rows: values.len(),
                cols: cols.unwrap_or(grid.len()),
                grid: grid.len(),
            });
        }
        Ok(TableTNorm { grid, values })
    }

    fn cell(&self, x: &Rational) -> (usize, Rational) {
        let k = self.grid.partition_point(|g| g <= x).clamp(1, self.grid.len() - 1) - 1;
        let (g0, g1) = (&self.grid[k], &self.grid[k + 1]);
        (k, (x - g0) / (g1 - g0))
    }

    fn eval(&self, a: &Rational, b: &Rational) -> Rational {
        let (i, s) = self.cell(a);
        let (j, t) = self.cell(b);
        let v = |di: usize, dj: usize| &self.values[i + di][j + dj];
        let one = Rational::one();
        (&one - &s) * (&one - &t) * v(0, 0)
            + &s * (&one - &t) * v(1, 0)
            + (&one - &s) * &t * v(0, 1)
            + &s * &t * v(1, 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TNorm {
    /// `T(a, b) = ab`
    Product,
    /// `T(a, b) = min(a, b)`
    Minimum,
    Table(TableTNorm),
}

impl fmt::Display for TNorm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TNorm::Product => f.write_str("product"),
            TNorm::Minimum => f.write_str("min"),
            TNorm::Table(t) => write!(f, "table({} grid points)", t.grid.len()),
        }
    }
}

fn in_unit(x: &Rational) -> bool {
    !x.is_negative() && x <= &Rational::one()
}

impl TNorm {
    pub fn apply(&self, a: &Rational, b: &Rational) -> Result<Rational, TNormError> {
        for x in [a, b] {
            if !in_unit(x) {
                return Err(TNormError::OutOfRange(format_rational(x)));
            }
        }
        Ok(self.apply_unchecked(a, b))
    }

    pub(crate) fn apply_unchecked(&self, a: &Rational, b: &Rational) -> Rational {
        match self {
            TNorm::Product => a * b,
            TNorm::Minimum => a.min(b).clone(),
            TNorm::Table(t) => t.eval(a, b),
        }
    }

    /// Checks the five conditions over every grid point (pairs for the
    /// pointwise ones, quadruples for monotonicity). A failure is a genuine
    /// counterexample; a pass holds relative to the grid.
    pub fn check_axioms(&self, grid: &[Rational]) -> Result<TNormReport, TNormError> {
        if grid.is_empty() {
            return Err(TNormError::EmptyGrid);
        }
        if !grid.iter().any(Zero::is_zero) || !grid.iter().any(One::is_one) {
            return Err(TNormError::GridMissingEndpoints);
        }
        if let Some(bad) = grid.iter().find(|x| !in_unit(x)) {
            return Err(TNormError::OutOfRange(format_rational(bad)));
        }
        let n = grid.len();
        let table: Vec<Vec<Rational>> = grid
            .iter()
            .map(|a| grid.iter().map(|b| self.apply_unchecked(a, b)).collect())
            .collect();

        let range = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| !in_unit(&table[i][j]))
            .map(|(i, j)| TNormWitness::pair(&grid[i], &grid[j], &table[i][j]));

        let mut monotone = None;
        'outer: for a in 0..n {
            for b in 0..n {
                for c in (0..n).filter(|&c| grid[c] >= grid[a]) {
                    for d in (0..n).filter(|&d| grid[d] >= grid[b]) {
                        if table[c][d] < table[a][b] {
                            monotone = Some(TNormWitness {
                                args: vec![
                                    grid[a].clone(),
                                    grid[b].clone(),
                                    grid[c].clone(),
                                    grid[d].clone(),
                                ],
                                value: table[c][d].clone(),
                            });
                            break 'outer;
                        }
                    }
                }
            }
        }

        let commutative = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .find(|&(i, j)| table[i][j] != table[j][i])
            .map(|(i, j)| TNormWitness::pair(&grid[i], &grid[j], &table[i][j]));

        let one = Rational::one();
        let t11 = self.apply_unchecked(&one, &one);
        let unit = (!t11.is_one()).then(|| TNormWitness::pair(&one, &one, &t11));

        let positive = grid
            .iter()
            .filter(|a| a.is_positive())
            .map(|a| (a, self.apply_unchecked(a, &one)))
            .find(|(_, v)| !v.is_positive())
            .map(|(a, v)| TNormWitness::pair(a, &one, &v));

        Ok(TNormReport {
            axioms: vec![
                AxiomOutcome::new("T-I", "0 <= T(a,b) <= 1", range),
                AxiomOutcome::new("T-II", "monotone in both arguments", monotone),
                AxiomOutcome::new("T-III", "commutative", commutative),
                AxiomOutcome::new("T-IV", "T(1,1) = 1", unit),
                AxiomOutcome::new("T-V", "T(a,1) > 0 for a > 0", positive),
            ],
        })
    }
}

/// All multiples of 1/8 in [0, 1].
pub fn default_grid() -> Vec<Rational> {
    (0..=8).map(|k| rat(k, 8)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TNormWitness {
    /// `(a, b)` for the pointwise conditions, `(a, b, c, d)` for
    /// monotonicity, where `T(c, d) < T(a, b)`.
    #[serde(serialize_with = "crate::report::rationals")]
    pub args: Vec<Rational>,
    /// The offending value.
    #[serde(with = "serde_rational")]
    pub value: Rational,
}

impl TNormWitness {
    fn pair(a: &Rational, b: &Rational, value: &Rational) -> Self {
        TNormWitness {
            args: vec![a.clone(), b.clone()],
            value: value.clone(),
        }
    }
}

impl fmt::Display for TNormWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let args: Vec<String> = self.args.iter().map(format_rational).collect();
        write!(f, "at ({}) value {}", args.join(", "), format_rational(&self.value))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TNormReport {
    pub axioms: Vec<AxiomOutcome<TNormWitness>>,
}

impl TNormReport {
    pub fn passed(&self) -> bool {
        self.axioms.iter().all(AxiomOutcome::passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomOutcome<TNormWitness>> {
        self.axioms.iter().find(|a| a.axiom == axiom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn quarters() -> Vec<Rational> {
        (0..=4).map(|k| rat(k, 4)).collect()
    }

    #[test]
    fn apply_builtin_kinds() {
        assert_eq!(TNorm::Product.apply(&rat(1, 2), &rat(1, 2)).unwrap(), rat(1, 4));
        assert_eq!(TNorm::Product.apply(&int(1), &int(1)).unwrap(), int(1));
        assert_eq!(TNorm::Minimum.apply(&rat(1, 3), &rat(2, 3)).unwrap(), rat(1, 3));
        assert!(matches!(
            TNorm::Product.apply(&rat(3, 2), &int(0)),
            Err(TNormError::OutOfRange(_))
        ));
    }

    #[test]
    fn builtin_kinds_pass_on_quarter_grid() {
        assert!(TNorm::Product.check_axioms(&quarters()).unwrap().passed());
        assert!(TNorm::Minimum.check_axioms(&quarters()).unwrap().passed());
    }

    #[test]
    fn table_with_broken_unit_fails_t4() {
        let grid = vec![int(0), int(1)];
        let values = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
        let t = TNorm::Table(TableTNorm::new(grid.clone(), values).unwrap());
        let report = t.check_axioms(&grid).unwrap();
        let t4 = report.get("T-IV").unwrap();
        assert_eq!(t4.witness.as_ref().unwrap().args, vec![int(1), int(1)]);
        assert!(!report.get("T-V").unwrap().passed());
        assert!(report.get("T-III").unwrap().passed());
    }

    #[test]
    fn table_interpolates_bilinearly() {
        // values of the product on the {0, 1} grid interpolate to ab exactly
        let grid = vec![int(0), int(1)];
        let values = vec![vec![int(0), int(0)], vec![int(0), int(1)]];
        let t = TNorm::Table(TableTNorm::new(grid, values).unwrap());
        assert_eq!(t.apply(&rat(1, 2), &rat(1, 3)).unwrap(), rat(1, 6));
    }

    #[test]
    fn grid_errors() {
        assert_eq!(TNorm::Product.check_axioms(&[]), Err(TNormError::EmptyGrid));
        assert_eq!(
            TNorm::Product.check_axioms(&[rat(1, 2)]),
            Err(TNormError::GridMissingEndpoints)
        );
        assert!(TableTNorm::new(vec![int(0)], vec![vec![int(0)]]).is_err());
    }

    #[test]
    fn non_monotone_table_fails_t2() {
        let grid = vec![int(0), rat(1, 2), int(1)];
        let values = vec![
            vec![int(0), int(0), int(0)],
            vec![int(0), rat(1, 2), rat(1, 4)],
            vec![int(0), rat(1, 4), int(1)],
        ];
        let t = TNorm::Table(TableTNorm::new(grid.clone(), values).unwrap());
        let report = t.check_axioms(&grid).unwrap();
        let w = report.get("T-II").unwrap().witness.clone().unwrap();
        assert!(t.apply(&w.args[2], &w.args[3]).unwrap() < t.apply(&w.args[0], &w.args[1]).unwrap());
    }
}
