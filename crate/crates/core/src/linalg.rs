//! Matrices over the polynomial ring: Jacobians, determinants and the exact
//! adjugate inverse of a matrix whose determinant is a nonzero constant.

use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::map::PolyMap;
use crate::poly::{default_var_names, Polynomial, Rational};

/// Largest size handled by cofactor expansion; bigger matrices use
/// fraction-free elimination.
const COFACTOR_MAX: usize = 4;

/// Row-major matrix of polynomials sharing one arity.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    arity: usize,
    entries: Vec<Polynomial>,
}

impl PolyMatrix {
    pub fn new(rows: usize, cols: usize, arity: usize, entries: Vec<Polynomial>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch("entry count does not match rows * cols"));
        }
        if let Some(e) = entries.iter().find(|e| e.arity() != arity) {
            return Err(Error::ArityMismatch { expected: arity, found: e.arity() });
        }
        Ok(PolyMatrix { rows, cols, arity, entries })
    }

    pub fn from_rows(arity: usize, rows: Vec<Vec<Polynomial>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows"));
        }
        Self::new(r, c, arity, rows.into_iter().flatten().collect())
    }

    pub fn identity(n: usize, arity: usize) -> Self {
        let entries = (0..n * n)
            .map(|k| if k / n == k % n { Polynomial::one(arity) } else { Polynomial::zero(arity) })
            .collect();
        PolyMatrix { rows: n, cols: n, arity, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn get(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Polynomial] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows, self.arity) && self.rows == self.cols
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.rows)
    }

    pub fn mul(&self, other: &PolyMatrix) -> Result<PolyMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch("inner dimensions differ"));
        }
        if self.arity != other.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: other.arity });
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(self.arity);
                for k in 0..self.cols {
                    acc += &(self.get(i, k) * other.get(k, j));
                }
                entries.push(acc);
            }
        }
        Ok(PolyMatrix { rows: self.rows, cols: other.cols, arity: self.arity, entries })
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix { entries: self.entries.iter().map(|e| e.scale(c)).collect(), ..self.clone() }
    }

    /// Substitutes `args` into every entry.
    pub fn compose_entries(&self, args: &[Polynomial]) -> Result<PolyMatrix> {
        let entries = self.entries.iter().map(|e| e.compose(args)).collect::<Result<Vec<_>>>()?;
        let arity = args.first().map_or(self.arity, Polynomial::arity);
        Ok(PolyMatrix { entries, arity, ..*self })
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        let n = self.require_square()?;
        if n <= COFACTOR_MAX {
            let idx: Vec<usize> = (0..n).collect();
            Ok(self.cofactor_det(&idx, &idx))
        } else {
            self.bareiss_det()
        }
    }

    /// Laplace expansion along the first listed row of the submatrix.
    fn cofactor_det(&self, rows: &[usize], cols: &[usize]) -> Polynomial {
        match rows.len() {
            0 => Polynomial::one(self.arity),
            1 => self.get(rows[0], cols[0]).clone(),
            2 => {
                &(self.get(rows[0], cols[0]) * self.get(rows[1], cols[1]))
                    - &(self.get(rows[0], cols[1]) * self.get(rows[1], cols[0]))
            }
            _ => {
                let mut acc = Polynomial::zero(self.arity);
                for (k, &c) in cols.iter().enumerate() {
                    let entry = self.get(rows[0], c);
                    if entry.is_zero() {
                        continue;
                    }
                    let rest: Vec<usize> = cols.iter().copied().filter(|&j| j != c).collect();
                    let term = entry * &self.cofactor_det(&rows[1..], &rest);
                    if k % 2 == 0 {
                        acc += &term;
                    } else {
                        acc -= &term;
                    }
                }
                acc
            }
        }
    }

    /// Fraction-free (Bareiss) elimination; every division is exact.
    fn bareiss_det(&self) -> Result<Polynomial> {
        let n = self.rows;
        let mut a: Vec<Vec<Polynomial>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Polynomial::one(self.arity);
        let mut negate = false;
        for k in 0..n.saturating_sub(1) {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        negate = !negate;
                    }
                    None => return Ok(Polynomial::zero(self.arity)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = num.exact_div(&prev)?;
                }
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -det } else { det })
    }

    fn minor(&self, skip_row: usize, skip_col: usize) -> PolyMatrix {
        let mut entries = Vec::with_capacity((self.rows - 1) * (self.cols - 1));
        for i in (0..self.rows).filter(|&i| i != skip_row) {
            for j in (0..self.cols).filter(|&j| j != skip_col) {
                entries.push(self.get(i, j).clone());
            }
        }
        PolyMatrix { rows: self.rows - 1, cols: self.cols - 1, arity: self.arity, entries }
    }

    /// Transposed cofactor matrix; `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Result<PolyMatrix> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(PolyMatrix::identity(1, self.arity));
        }
        let mut entries = alloc::vec![Polynomial::zero(self.arity); n * n];
        for i in 0..n {
            for j in 0..n {
                let d = self.minor(i, j).determinant()?;
                entries[j * n + i] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        Ok(PolyMatrix { rows: n, cols: n, arity: self.arity, entries })
    }

    /// `adj(M) / det_unit`, the exact inverse over the polynomial ring.
    ///
    /// Fails unless `det(M)` is exactly the nonzero constant `det_unit`.
    pub fn adjugate_inverse(&self, det_unit: &Rational) -> Result<PolyMatrix> {
        self.require_square()?;
        if det_unit.is_zero() || self.determinant()?.as_constant().as_ref() != Some(det_unit) {
            return Err(Error::DeterminantMismatch);
        }
        Ok(self.adjugate()?.scale(&(Rational::one() / det_unit)))
    }

    pub fn mat_vec_apply(&self, v: &[Polynomial]) -> Result<Vec<Polynomial>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch("vector length differs from column count"));
        }
        if let Some(e) = v.iter().find(|e| e.arity() != self.arity) {
            return Err(Error::ArityMismatch { expected: self.arity, found: e.arity() });
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = Polynomial::zero(self.arity);
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        DisplayMatrix { m: self, names }
    }
}

struct DisplayMatrix<'a, S> {
    m: &'a PolyMatrix,
    names: &'a [S],
}

/// One row per line, `[a, b, ...]`.
impl<S: AsRef<str>> fmt::Display for DisplayMatrix<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m.rows {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str("[")?;
            for (j, e) in self.m.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", e.display_with(self.names))?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.arity);
        write!(f, "{}", self.display_with(&names))?;
        Ok(())
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMatrix {}x{}:\n{}", self.rows, self.cols, self)
    }
}

/// `(i, j) -> dF_i / dX_j`.
pub fn jacobian(map: &PolyMap) -> PolyMatrix {
    let m = map.arity();
    let entries = map
        .components()
        .iter()
        .flat_map(|f| (0..m).map(move |j| f.partial_derivative(j).expect("index < arity")))
        .collect();
    PolyMatrix { rows: m, cols: m, arity: m, entries }
}

/// The value of `p` when it is a nonzero constant, i.e. a unit of the ring.
pub fn constant_unit(p: &Polynomial) -> Option<Rational> {
    p.as_constant().filter(|c| !c.is_zero())
}
