//! Two-variable solver that follows the derivative recursion literally.
//!
//! Differentiating `F(U, V) = tX + (1 - t)F` `n` times gives
//!
//! ```text
//! D_1(U, V) Z_{1,n} + sum_{i=2}^{n} D_i(U, V) Z_{i,n} = 0      (n >= 2)
//! ```
//!
//! where `D_i` holds the `i`-th order partials of `(F, G)` (columns
//! `d^i / dX^(i-j) dY^j`, `j = 0..=i`) and the `Z_{i,n}` are column vectors of
//! polynomials in the derivatives `U^(j)`, `V^(j)`, built by
//!
//! ```text
//! Z_{i,n} = U' [Z_{i-1,n-1}; 0] + V' [0; Z_{i-1,n-1}] + d/dt Z_{i,n-1}
//! ```
//!
//! with `Z_{1,1} = (U', V')` and `Z_{i,n} = 0` outside `1 <= i <= n`. At
//! `t = 0` we have `U^(j)(0) = j! u_j`, so solving for `Z_{1,n}(0)` and
//! dividing by `n!` gives `(u_n, v_n)`.
//!
//! This is independent of [`super::SeriesSolver`] and is used to cross-check it.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::linalg::{constant_unit, jacobian, PolyMatrix};
use crate::map::PolyMap;
use crate::poly::{Polynomial, Rational};
use crate::series::{SeriesVec, TruncSeries};

/// Symbolic derivative variables: `U^(j)` is slot `2(j-1)`, `V^(j)` is `2(j-1)+1`.
struct Jets {
    arity: usize,
    top: usize,
}

impl Jets {
    fn new(top: usize) -> Self {
        Jets { arity: 2 * top, top }
    }

    fn u(&self, j: usize) -> Polynomial {
        Polynomial::var(self.arity, 2 * (j - 1))
    }

    fn v(&self, j: usize) -> Polynomial {
        Polynomial::var(self.arity, 2 * (j - 1) + 1)
    }

    /// `d/dt` as the derivation `U^(j) -> U^(j+1)`, `V^(j) -> V^(j+1)`.
    fn dt(&self, p: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(self.arity);
        for j in 1..self.top {
            for (slot, next) in [(2 * (j - 1), self.u(j + 1)), (2 * (j - 1) + 1, self.v(j + 1))] {
                let d = p.partial_derivative(slot).expect("slot in range");
                if !d.is_zero() {
                    acc += &(&d * &next);
                }
            }
        }
        acc
    }
}

fn factorial(n: usize) -> Rational {
    Rational::from_integer((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

/// `D_i`: rows `F`, `G`; column `j` is `d^i / dX^(i-j) dY^j`.
fn higher_partials(map: &PolyMap, i: usize) -> Vec<Vec<Polynomial>> {
    map.components()
        .iter()
        .map(|f| {
            (0..=i)
                .map(|j| {
                    let mut d = f.clone();
                    for _ in 0..i - j {
                        d = d.partial_derivative(0).expect("arity 2");
                    }
                    for _ in 0..j {
                        d = d.partial_derivative(1).expect("arity 2");
                    }
                    d
                })
                .collect()
        })
        .collect()
}

/// Solves the two-variable deformation system up to `order` via the
/// `D_i` / `Z_{i,n}` recursion. Agrees with [`super::solve_series`] with the
/// identity initial condition.
pub fn derivative_recursion_m2(map: &PolyMap, order: usize) -> Result<SeriesVec> {
    if map.arity() != 2 {
        return Err(Error::ArityMismatch { expected: 2, found: map.arity() });
    }
    let jac = jacobian(map);
    let unit = constant_unit(&jac.determinant()?).ok_or(Error::JacobianNotUnit)?;
    let d1_inv = jac.adjugate_inverse(&unit)?;

    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let mut u: Vec<Polynomial> = vec![x.clone()];
    let mut v: Vec<Polynomial> = vec![y.clone()];
    if order == 0 {
        return pack(u, v);
    }

    let jets = Jets::new(order);
    // z_prev[i - 1] = Z_{i, n-1}
    let mut z_prev: Vec<Vec<Polynomial>> = Vec::new();
    let d_mats: Vec<Vec<Vec<Polynomial>>> = (0..=order).map(|i| higher_partials(map, i)).collect();

    for n in 1..=order {
        let z_cur: Vec<Vec<Polynomial>> = if n == 1 {
            vec![vec![jets.u(1), jets.v(1)]]
        } else {
            (1..=n)
                .map(|i| {
                    let mut col = vec![Polynomial::zero(jets.arity); i + 1];
                    if i >= 2 {
                        let lower = &z_prev[i - 2];
                        for (k, e) in lower.iter().enumerate() {
                            col[k] += &(&jets.u(1) * e);
                            col[k + 1] += &(&jets.v(1) * e);
                        }
                    }
                    if i < n {
                        for (c, e) in col.iter_mut().zip(&z_prev[i - 1]) {
                            *c += &jets.dt(e);
                        }
                    }
                    col
                })
                .collect()
        };

        let rhs = if n == 1 {
            vec![&x - map.component(0), &y - map.component(1)]
        } else {
            // U^(j)(0) = j! u_j for the already known j < n.
            let mut at_zero = vec![Polynomial::zero(2); jets.arity];
            for j in 1..n {
                let fact = factorial(j);
                at_zero[2 * (j - 1)] = u[j].scale(&fact);
                at_zero[2 * (j - 1) + 1] = v[j].scale(&fact);
            }
            let mut acc = vec![Polynomial::zero(2), Polynomial::zero(2)];
            for i in 2..=n {
                let z0: Vec<Polynomial> = z_cur[i - 1]
                    .iter()
                    .map(|e| e.compose(&at_zero))
                    .collect::<Result<_>>()?;
                let d_i = PolyMatrix::from_rows(2, d_mats[i].clone())?;
                for (a, b) in acc.iter_mut().zip(d_i.mat_vec_apply(&z0)?) {
                    *a -= &b;
                }
            }
            acc
        };

        let z1 = d1_inv.mat_vec_apply(&rhs)?;
        let inv_fact = Rational::one() / factorial(n);
        u.push(z1[0].scale(&inv_fact));
        v.push(z1[1].scale(&inv_fact));
        z_prev = z_cur;
    }
    pack(u, v)
}

fn pack(u: Vec<Polynomial>, v: Vec<Polynomial>) -> Result<SeriesVec> {
    SeriesVec::new(vec![TruncSeries::from_coeffs(u)?, TruncSeries::from_coeffs(v)?])
}
