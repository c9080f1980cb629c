//! Dense matrices over the Laurent-polynomial ring and the structured
//! matrices of the construction: Pascal, creation, exchange, diagonal,
//! the nilpotent exponential, half-transposes, characteristic polynomials.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::One;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::poly::{LaurentPoly, Rational, Symbol};

/// Which side the exchange matrix acts on in a half-transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// `ι_r · M`
    Left,
    /// `M · ι_r`
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl RingMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        RingMatrix {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RingMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, LaurentPoly::one());
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut m = RingMatrix::zero(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Column vector from entries.
    pub fn column(entries: Vec<LaurentPoly>) -> Self {
        assert!(!entries.is_empty());
        RingMatrix {
            rows: entries.len(),
            cols: 1,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> RingMatrix {
        RingMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, p: &LaurentPoly) -> RingMatrix {
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * p).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> RingMatrix {
        assert!(self.is_square());
        let mut out = RingMatrix::identity(self.rows);
        for _ in 0..n {
            out = &out * self;
        }
        out
    }
}

impl Add for &RingMatrix {
    type Output = RingMatrix;
    fn add(self, rhs: &RingMatrix) -> RingMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &RingMatrix {
    type Output = RingMatrix;
    fn sub(self, rhs: &RingMatrix) -> RingMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RingMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &RingMatrix {
    type Output = RingMatrix;
    fn mul(self, rhs: &RingMatrix) -> RingMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        RingMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..self.cols {
                acc = &acc + &(self.get(i, k) * rhs.get(k, j));
            }
            acc
        })
    }
}

/// The (r+1)×(r+1) generalized Pascal matrix with entry (n,k) = C(n,k)·x^{n−k}.
pub fn pascal(r: usize, x: &LaurentPoly) -> RingMatrix {
    RingMatrix::from_fn(r + 1, r + 1, |n, k| {
        if k > n {
            LaurentPoly::zero()
        } else {
            x.pow((n - k) as u32)
                .scale(&binomial(n as u64, k as i64))
        }
    })
}

/// The (r+1)×(r+1) creation matrix A_r(λ): diagonal λ, subdiagonal 1,…,r.
pub fn creation(r: usize, lambda: &LaurentPoly) -> RingMatrix {
    let mut m = RingMatrix::zero(r + 1, r + 1);
    for i in 0..=r {
        m.set(i, i, lambda.clone());
    }
    for i in 1..=r {
        m.set(i, i - 1, LaurentPoly::from_int(i as i64));
    }
    m
}

/// Σ_{n=0}^{s−1} M^n/n! where M^s = 0; errors if M is not nilpotent within
/// `bound` steps.
pub fn nilpotent_exp(m: &RingMatrix, bound: u32) -> Result<RingMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("nilpotent_exp needs square".into()));
    }
    let mut sum = RingMatrix::identity(m.rows());
    let mut power = m.clone();
    let mut factorial = BigInt::one();
    let mut n: u32 = 1;
    while !power.is_zero() {
        if n > bound {
            return Err(Error::NotNilpotent);
        }
        factorial *= BigInt::from(n);
        let coeff = Rational::new(BigInt::one(), factorial.clone());
        sum = &sum + &power.scale(&LaurentPoly::constant(coeff));
        power = &power * m;
        n += 1;
    }
    Ok(sum)
}

/// The anti-diagonal exchange matrix ι_r.
pub fn exchange(r: usize) -> RingMatrix {
    RingMatrix::from_fn(r + 1, r + 1, |i, j| {
        if i + j == r {
            LaurentPoly::one()
        } else {
            LaurentPoly::zero()
        }
    })
}

/// `ι·M` (left) or `M·ι` (right).
pub fn half_transpose(side: Side, m: &RingMatrix) -> Result<RingMatrix> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("half_transpose needs square".into()));
    }
    let iota = exchange(m.rows() - 1);
    Ok(match side {
        Side::Left => &iota * m,
        Side::Right => m * &iota,
    })
}

/// Square matrix with the given diagonal; rejects an empty diagonal.
pub fn diagonal(values: &[LaurentPoly]) -> Result<RingMatrix> {
    if values.is_empty() {
        return Err(Error::EmptyDiagonal);
    }
    let n = values.len();
    let mut m = RingMatrix::zero(n, n);
    for (i, v) in values.iter().enumerate() {
        m.set(i, i, v.clone());
    }
    Ok(m)
}

/// det(X·I − M) by cofactor expansion; entries must be polynomial in z.
pub fn char_poly(m: &RingMatrix) -> Result<LaurentPoly> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("char_poly needs square".into()));
    }
    if m.entries.iter().any(|e| e.min_z_exponent() < 0) {
        return Err(Error::NonPolynomialEntries);
    }
    let n = m.rows();
    let x = LaurentPoly::symbol(Symbol::X);
    let xi_minus_m = RingMatrix::from_fn(n, n, |i, j| {
        if i == j {
            &x - m.get(i, j)
        } else {
            -&(m.get(i, j).clone())
        }
    });
    Ok(determinant(&xi_minus_m))
}

fn determinant(m: &RingMatrix) -> LaurentPoly {
    let n = m.rows();
    if n == 1 {
        return m.get(0, 0).clone();
    }
    // Expand along the first column.
    let mut det = LaurentPoly::zero();
    for i in 0..n {
        let pivot = m.get(i, 0);
        if pivot.is_zero() {
            continue;
        }
        let minor = RingMatrix::from_fn(n - 1, n - 1, |a, b| {
            let row = if a < i { a } else { a + 1 };
            m.get(row, b + 1).clone()
        });
        let cofactor = &pivot.clone() * &determinant(&minor);
        det = if i % 2 == 0 {
            &det + &cofactor
        } else {
            &det - &cofactor
        };
    }
    det
}

/// Aligned text grid with blanks for zero entries.
pub fn pretty(m: &RingMatrix) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| {
                    let e = m.get(i, j);
                    if e.is_zero() {
                        String::new()
                    } else {
                        e.to_string()
                    }
                })
                .collect()
        })
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|j| cells.iter().map(|row| row[j].chars().count()).max().unwrap_or(0).max(1))
        .collect();
    let mut out = String::new();
    for row in &cells {
        out.push('[');
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                out.push_str("  ");
            }
            let pad = widths[j] - cell.chars().count();
            for _ in 0..pad {
                out.push(' ');
            }
            out.push_str(cell);
        }
        out.push_str("]\n");
    }
    out
}


impl fmt::Display for RingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", pretty(self))
    }
}
