use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::linalg::{constant_unit, jacobian, PolyMatrix};
use crate::map::PolyMap;
use crate::poly::{Polynomial, Rational};
use crate::series::{SeriesVec, TruncSeries};

#[derive(Debug, Clone, Copy)]
enum Operand {
    Leaf(usize),
    Node(usize),
}

/// A product of two series whose coefficients are produced one order at a time.
#[derive(Debug)]
struct ProductNode {
    left: Operand,
    right: Operand,
    coeffs: Vec<Polynomial>,
}

/// Incremental solver for `F_i(S) = t X_i + (1 - t) F_i(P)`, `S(0) = P`.
///
/// At order `n` the unknown tuple `s_n` enters `F(S)` only through
/// `D_1(P) s_n`, so the coefficient is found by evaluating `F` on the series
/// with `s_n = 0` and solving against the precomputed inverse of `D_1(P)`.
/// Powers of the `S_i` and the monomials of `F` are kept as product nodes
/// that grow by one coefficient per order, so earlier orders are never
/// recomputed.
#[derive(Debug)]
pub struct SeriesSolver {
    arity: usize,
    inverse_jacobian: PolyMatrix,
    // F_i(P) and X_i - F_i(P): the t^0 and t^1 coefficients of the right side.
    target0: Vec<Polynomial>,
    target1: Vec<Polynomial>,
    leaves: Vec<Vec<Polynomial>>,
    nodes: Vec<ProductNode>,
    components: Vec<Vec<(Rational, Option<Operand>)>>,
}

impl SeriesSolver {
    /// Sets up the order-0 solution `S = init` (identity when `None`).
    ///
    /// Fails when the Jacobian determinant of `map` is not a nonzero constant.
    pub fn new(map: &PolyMap, init: Option<&PolyMap>) -> Result<Self> {
        let arity = map.arity();
        let identity;
        let init = match init {
            Some(p) => {
                if p.arity() != arity {
                    return Err(Error::ArityMismatch { expected: arity, found: p.arity() });
                }
                p
            }
            None => {
                identity = PolyMap::identity(arity);
                &identity
            }
        };

        let jac = jacobian(map);
        let unit = constant_unit(&jac.determinant()?).ok_or(Error::JacobianNotUnit)?;
        let mut inverse_jacobian = jac.adjugate_inverse(&unit)?;
        if !init.is_identity() {
            inverse_jacobian = inverse_jacobian.compose_entries(init.components())?;
        }

        let target0 = map.compose_with(init)?.into_components();
        let target1 = target0
            .iter()
            .enumerate()
            .map(|(i, f)| &Polynomial::var(arity, i) - f)
            .collect();

        let mut solver = SeriesSolver {
            arity,
            inverse_jacobian,
            target0,
            target1,
            leaves: init.components().iter().map(|p| alloc::vec![p.clone()]).collect(),
            nodes: Vec::new(),
            components: Vec::new(),
        };
        solver.build_plan(map);
        for k in 0..solver.nodes.len() {
            let c = {
                let node = &solver.nodes[k];
                solver.operand(node.left, 0) * solver.operand(node.right, 0)
            };
            solver.nodes[k].coeffs.push(c);
        }
        Ok(solver)
    }

    fn build_plan(&mut self, map: &PolyMap) {
        let arity = self.arity;
        let mut powers: Vec<Vec<Operand>> = Vec::with_capacity(arity);
        for i in 0..arity {
            let top = map.components().iter().map(|f| f.degree_in(i)).max().unwrap_or(0);
            let mut chain = alloc::vec![Operand::Leaf(i)];
            for _ in 2..=top {
                let prev = *chain.last().unwrap();
                chain.push(self.push_node(prev, Operand::Leaf(i)));
            }
            powers.push(chain);
        }

        // Monomials share prefix products: X^2 Y and X^2 Y Z reuse the X^2 Y node.
        let mut memo: BTreeMap<Vec<u32>, Operand> = BTreeMap::new();
        let mut components = Vec::with_capacity(arity);
        for f in map.components() {
            let mut terms = Vec::with_capacity(f.num_terms());
            for (mono, c) in f.terms() {
                let exps = mono.exponents();
                let mut prefix = alloc::vec![0u32; arity];
                let mut acc: Option<Operand> = None;
                for (i, &e) in exps.iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    prefix[i] = e;
                    let factor = powers[i][e as usize - 1];
                    acc = Some(match acc {
                        None => factor,
                        Some(prev) => match memo.get(&prefix) {
                            Some(&op) => op,
                            None => {
                                let op = self.push_node(prev, factor);
                                memo.insert(prefix.clone(), op);
                                op
                            }
                        },
                    });
                }
                terms.push((c.clone(), acc));
            }
            components.push(terms);
        }
        self.components = components;
    }

    fn push_node(&mut self, left: Operand, right: Operand) -> Operand {
        self.nodes.push(ProductNode { left, right, coeffs: Vec::new() });
        Operand::Node(self.nodes.len() - 1)
    }

    fn operand(&self, op: Operand, k: usize) -> &Polynomial {
        match op {
            Operand::Leaf(i) => &self.leaves[i][k],
            Operand::Node(j) => &self.nodes[j].coeffs[k],
        }
    }

    /// `sum_{k=1}^{n-1} left[k] * right[n-k]`: the part of the order-`n`
    /// product coefficient that does not involve order-`n` unknowns.
    fn middle(&self, node: &ProductNode, n: usize) -> Polynomial {
        let mut acc = Polynomial::zero(self.arity);
        for k in 1..n {
            let a = self.operand(node.left, k);
            let b = self.operand(node.right, n - k);
            if !a.is_zero() && !b.is_zero() {
                acc += &(a * b);
            }
        }
        acc
    }

    fn edge_terms(&self, node: &ProductNode, n: usize, middle: &Polynomial) -> Polynomial {
        let mut c = middle.clone();
        let pairs = [(node.left, n, node.right, 0), (node.left, 0, node.right, n)];
        for (l, kl, r, kr) in pairs {
            let a = self.operand(l, kl);
            let b = self.operand(r, kr);
            if !a.is_zero() && !b.is_zero() {
                c += &(a * b);
            }
        }
        c
    }

    /// Current truncation order.
    pub fn order(&self) -> usize {
        self.leaves[0].len() - 1
    }

    /// Solves for the next coefficient tuple and returns it.
    pub fn step(&mut self) -> Vec<Polynomial> {
        let n = self.order() + 1;
        for leaf in &mut self.leaves {
            leaf.push(Polynomial::zero(self.arity));
        }

        let middles: Vec<Polynomial> = self.nodes.iter().map(|node| self.middle(node, n)).collect();
        for (k, middle) in middles.iter().enumerate() {
            let c = self.edge_terms(&self.nodes[k], n, middle);
            self.nodes[k].coeffs.push(c);
        }

        let residual: Vec<Polynomial> = (0..self.arity)
            .map(|i| {
                let mut r = if n == 1 { self.target1[i].clone() } else { Polynomial::zero(self.arity) };
                for (c, op) in &self.components[i] {
                    if let Some(op) = op {
                        r.add_scaled_assign(self.operand(*op, n), &-c);
                    }
                }
                r
            })
            .collect();
        let coeffs = self.inverse_jacobian.mat_vec_apply(&residual).expect("shapes agree");

        for (leaf, c) in self.leaves.iter_mut().zip(&coeffs) {
            leaf[n] = c.clone();
        }
        for (k, middle) in middles.iter().enumerate() {
            let c = self.edge_terms(&self.nodes[k], n, middle);
            self.nodes[k].coeffs[n] = c;
        }
        coeffs
    }

    pub fn series(&self) -> SeriesVec {
        let comps = self
            .leaves
            .iter()
            .map(|c| TruncSeries::from_coeffs(c.clone()).expect("nonempty"))
            .collect();
        SeriesVec::new(comps).expect("leaves share order and arity")
    }

    /// The current series evaluated at `t = 1`.
    pub fn candidate(&self) -> PolyMap {
        let comps = self
            .leaves
            .iter()
            .map(|coeffs| {
                let mut acc = Polynomial::zero(self.arity);
                for c in coeffs {
                    acc += c;
                }
                acc
            })
            .collect();
        PolyMap::new(comps).expect("leaves share the arity")
    }

    /// `F_i(init)`, the `t^0` coefficient of the right-hand side.
    pub fn base_values(&self) -> &[Polynomial] {
        &self.target0
    }
}

/// The unique solution of the deformation system modulo `t^(order + 1)`.
///
/// `init` sets `S(0)`; by default `S_i(0) = X_i`.
pub fn solve_series(map: &PolyMap, order: usize, init: Option<&PolyMap>) -> Result<SeriesVec> {
    let mut solver = SeriesSolver::new(map, init)?;
    for _ in 0..order {
        solver.step();
    }
    Ok(solver.series())
}
