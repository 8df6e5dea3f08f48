use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::numfield::{FieldElement, NumberField};

/// Dense square matrix over a number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldMatrix {
    n: usize,
    entries: Vec<FieldElement>,
}

impl FieldMatrix {
    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("matrix must be square and nonempty".into()));
        }
        Ok(FieldMatrix { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(field: &Arc<NumberField>, n: usize) -> Self {
        let mut entries = vec![FieldElement::zero(field); n * n];
        for i in 0..n {
            entries[i * n + i] = FieldElement::one(field);
        }
        FieldMatrix { n, entries }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.entries[i * self.n + j]
    }

    pub fn field(&self) -> &Arc<NumberField> {
        self.entries[0].field()
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        self.entries.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Power-basis coefficients of every entry, row by row.
    pub fn coeff_rows(&self) -> Vec<Vec<Vec<BigRational>>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|e| e.coeffs().to_vec()).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        FieldMatrix { n, entries }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::InvalidInput("matrix sizes differ".into()));
        }
        let n = self.n;
        let field = self.field();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = FieldElement::zero(field);
                for k in 0..n {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = &acc + &(a * b);
                    }
                }
                entries.push(acc);
            }
        }
        Ok(FieldMatrix { n, entries })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.field(), self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same size");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same size");
            }
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n).all(|i| {
            (0..self.n).all(|j| {
                let x = self.get(i, j);
                if i == j {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Determinant by cofactor expansion.
    pub fn det(&self) -> FieldElement {
        let idx: Vec<usize> = (0..self.n).collect();
        self.minor_det(&idx, 0)
    }

    fn minor_det(&self, cols: &[usize], row: usize) -> FieldElement {
        if cols.len() == 1 {
            return self.get(row, cols[0]).clone();
        }
        let mut acc = FieldElement::zero(self.field());
        for (k, &c) in cols.iter().enumerate() {
            let a = self.get(row, c);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let term = a * &self.minor_det(&rest, row + 1);
            acc = if k % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }
}
