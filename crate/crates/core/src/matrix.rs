//! Matrices over the graded ring with sl(2,1) grading bookkeeping.
//!
//! The grading vector assigns a parity to each index; an entry at (i, j) is
//! expected to carry parity(i) + parity(j). Grassmann entries do not commute,
//! so products preserve factor order entrywise.

use crate::derivation::Derivation;
use crate::expr::{Expression, Parity as ExprParity};
use crate::generator::Parity;
use crate::rewrite::RewriteSystem;
use crate::term::AlgebraError;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SuperMatrix {
    n: usize,
    grading: Vec<Parity>,
    entries: Vec<Expression>,
}

impl SuperMatrix {
    pub fn zero(grading: Vec<Parity>) -> SuperMatrix {
        let n = grading.len();
        SuperMatrix {
            n,
            grading,
            entries: vec![Expression::zero(); n * n],
        }
    }

    pub fn identity(grading: Vec<Parity>) -> SuperMatrix {
        let mut m = SuperMatrix::zero(grading);
        for i in 0..m.n {
            *m.at_mut(i, i) = Expression::one();
        }
        m
    }

    /// The sl(2,1) grading used throughout: indices (even, even, odd).
    pub fn sl21_grading() -> Vec<Parity> {
        vec![Parity::Even, Parity::Even, Parity::Odd]
    }

    pub fn from_rows(grading: Vec<Parity>, rows: Vec<Vec<Expression>>) -> SuperMatrix {
        let n = grading.len();
        assert_eq!(rows.len(), n);
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            assert_eq!(row.len(), n);
            entries.extend(row);
        }
        SuperMatrix {
            n,
            grading,
            entries,
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn grading(&self) -> &[Parity] {
        &self.grading
    }

    pub fn at(&self, i: usize, j: usize) -> &Expression {
        &self.entries[i * self.n + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Expression {
        &mut self.entries[i * self.n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Expression::is_zero)
    }

    pub fn map(&self, f: impl Fn(&Expression) -> Expression) -> SuperMatrix {
        SuperMatrix {
            n: self.n,
            grading: self.grading.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map(
        &self,
        f: impl Fn(&Expression) -> Result<Expression, AlgebraError>,
    ) -> Result<SuperMatrix, AlgebraError> {
        let mut entries = Vec::with_capacity(self.entries.len());
        for e in &self.entries {
            entries.push(f(e)?);
        }
        Ok(SuperMatrix {
            n: self.n,
            grading: self.grading.clone(),
            entries,
        })
    }

    /// Matrix product with factor order preserved entrywise.
    pub fn mul(&self, rhs: &SuperMatrix) -> SuperMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        assert_eq!(self.grading, rhs.grading, "grading mismatch");
        let mut out = SuperMatrix::zero(self.grading.clone());
        for i in 0..self.n {
            for j in 0..self.n {
                let mut acc = Expression::zero();
                for k in 0..self.n {
                    acc = &acc + &(self.at(i, k) * rhs.at(k, j));
                }
                *out.at_mut(i, j) = acc;
            }
        }
        out
    }

    /// A + s·B entrywise, with the scalar applied on the left.
    pub fn linear(&self, rhs: &SuperMatrix, s: &Expression) -> SuperMatrix {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let mut out = self.clone();
        for i in 0..self.n * self.n {
            out.entries[i] = &out.entries[i] + &(s * &rhs.entries[i]);
        }
        out
    }

    pub fn add(&self, rhs: &SuperMatrix) -> SuperMatrix {
        self.linear(rhs, &Expression::one())
    }

    pub fn sub(&self, rhs: &SuperMatrix) -> SuperMatrix {
        self.linear(rhs, &Expression::from_int(-1))
    }

    pub fn scale(&self, s: &Expression) -> SuperMatrix {
        self.map(|e| s * e)
    }

    pub fn commutator(&self, rhs: &SuperMatrix) -> SuperMatrix {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    pub fn derive(&self, d: &Derivation) -> Result<SuperMatrix, AlgebraError> {
        self.try_map(|e| d.apply(e))
    }

    pub fn substitute(&self, rs: &RewriteSystem) -> Result<SuperMatrix, AlgebraError> {
        self.try_map(|e| rs.substitute(e))
    }

    /// Checks the parity pattern: entry (i, j) is zero or has Grassmann
    /// parity parity(i) + parity(j). Returns offending positions.
    pub fn check_parity_pattern(&self) -> Result<(), Vec<(usize, usize)>> {
        let mut bad = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let want = if self.grading[i] == self.grading[j] {
                    ExprParity::Even
                } else {
                    ExprParity::Odd
                };
                let got = self.at(i, j).parity();
                if got != ExprParity::Zero && got != want {
                    bad.push((i, j));
                }
            }
        }
        if bad.is_empty() {
            Ok(())
        } else {
            Err(bad)
        }
    }

    /// Positions (row, col, entry) of nonzero entries.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, &Expression)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.at(i, j);
                if !e.is_zero() {
                    out.push((i, j, e));
                }
            }
        }
        out
    }
}

// Rendering with generator names goes through `io::render`; Display only
// reports the shape.
impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SuperMatrix({}x{})", self.n, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generator::{GenKind, Registry};

    fn odd_pair() -> (Registry, crate::generator::GenId, crate::generator::GenId) {
        let mut reg = Registry::new();
        let a = reg.register("a", GenKind::Odd);
        let b = reg.register("b", GenKind::Odd);
        (reg, a, b)
    }

    #[test]
    fn identity_is_neutral_and_commutator_vanishes() {
        let (_r, a, b) = odd_pair();
        let grading = vec![Parity::Even, Parity::Odd];
        let id = SuperMatrix::identity(grading.clone());
        let m = SuperMatrix::from_rows(
            grading,
            vec![
                vec![Expression::one(), Expression::gen(a)],
                vec![Expression::gen(b), Expression::from_int(2)],
            ],
        );
        assert_eq!(id.mul(&m), m);
        assert_eq!(m.mul(&id), m);
        assert!(id.commutator(&m).is_zero());
        assert!(m.commutator(&m).is_zero());
    }

    /// 2×2 all-Grassmann product expanded by hand:
    /// rows [0 a; b 0] squared gives diag(a·b, b·a) = diag(ab, −ab).
    #[test]
    fn grassmann_matrix_product_signs() {
        let (_r, a, b) = odd_pair();
        let grading = vec![Parity::Even, Parity::Odd];
        let m = SuperMatrix::from_rows(
            grading,
            vec![
                vec![Expression::zero(), Expression::gen(a)],
                vec![Expression::gen(b), Expression::zero()],
            ],
        );
        let sq = m.mul(&m);
        let ab = Expression::gen(a) * Expression::gen(b);
        assert_eq!(sq.at(0, 0), &ab);
        assert_eq!(sq.at(1, 1), &(-&ab));
    }

    #[test]
    fn parity_pattern_flags_misplaced_odd_entry() {
        let (_r, a, _b) = odd_pair();
        let grading = vec![Parity::Even, Parity::Odd];
        let mut m = SuperMatrix::zero(grading);
        *m.at_mut(0, 0) = Expression::gen(a); // odd entry at even-even slot
        assert_eq!(m.check_parity_pattern(), Err(vec![(0, 0)]));
        *m.at_mut(0, 0) = Expression::zero();
        assert!(m.check_parity_pattern().is_ok());
    }
}
