//! Tame automorphisms with known inverses.
//!
//! A [`TameRecipe`] is a sequence of triangular steps `X_k -> X_k + h` (with
//! `h` free of `X_k`) and invertible affine steps. Realizing it applies the
//! steps in order and undoes them in reverse, which yields a map together
//! with its exact inverse.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::map::PolyMap;
use crate::monomial::Monomial;
use crate::poly::{Polynomial, Rational};

const MAX_H_TERMS: usize = 3;
const MAX_COEFF: i64 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementaryStep {
    /// `X_target -> X_target + h`, `h` not involving `X_target`.
    Triangular { target: usize, h: Polynomial },
    /// `X -> M X + b` with `M` an invertible `m x m` matrix (row-major).
    AffineUnit { matrix: Vec<Rational>, translation: Vec<Rational> },
}

impl ElementaryStep {
    pub fn validate(&self, arity: usize) -> Result<()> {
        match self {
            ElementaryStep::Triangular { target, h } => {
                if *target >= arity {
                    return Err(Error::VarIndexOutOfRange { index: *target, arity });
                }
                if h.arity() != arity {
                    return Err(Error::ArityMismatch { expected: arity, found: h.arity() });
                }
                if h.degree_in(*target) > 0 {
                    return Err(Error::InvalidTriangular { target: *target + 1 });
                }
                Ok(())
            }
            ElementaryStep::AffineUnit { matrix, translation } => {
                if matrix.len() != arity * arity || translation.len() != arity {
                    return Err(Error::ShapeMismatch("affine step size does not match arity"));
                }
                invert_rational(matrix, arity).map(|_| ())
            }
        }
    }

    /// The step as a map `x -> step(x)`.
    pub fn forward(&self, arity: usize) -> Result<PolyMap> {
        self.validate(arity)?;
        match self {
            ElementaryStep::Triangular { target, h } => Ok(triangular(arity, *target, h)),
            ElementaryStep::AffineUnit { matrix, translation } => {
                Ok(affine(arity, matrix, translation))
            }
        }
    }

    pub fn inverse(&self, arity: usize) -> Result<PolyMap> {
        self.validate(arity)?;
        match self {
            ElementaryStep::Triangular { target, h } => Ok(triangular(arity, *target, &-h)),
            ElementaryStep::AffineUnit { matrix, translation } => {
                let inv = invert_rational(matrix, arity)?;
                // M^{-1}(X - b) = M^{-1} X - M^{-1} b
                let offset: Vec<Rational> = (0..arity)
                    .map(|i| {
                        -(0..arity)
                            .map(|j| &inv[i * arity + j] * &translation[j])
                            .fold(Rational::zero(), |a, b| a + b)
                    })
                    .collect();
                Ok(affine(arity, &inv, &offset))
            }
        }
    }
}

fn triangular(arity: usize, target: usize, h: &Polynomial) -> PolyMap {
    let comps = (0..arity)
        .map(|i| {
            let x = Polynomial::var(arity, i);
            if i == target { &x + h } else { x }
        })
        .collect();
    PolyMap::new(comps).expect("components share arity")
}

fn affine(arity: usize, matrix: &[Rational], translation: &[Rational]) -> PolyMap {
    let comps = (0..arity)
        .map(|i| {
            let mut p = Polynomial::constant(arity, translation[i].clone());
            for j in 0..arity {
                p += &Polynomial::var(arity, j).scale(&matrix[i * arity + j]);
            }
            p
        })
        .collect();
    PolyMap::new(comps).expect("components share arity")
}

/// Gauss-Jordan inverse of a row-major rational matrix.
fn invert_rational(matrix: &[Rational], n: usize) -> Result<Vec<Rational>> {
    let mut a = matrix.to_vec();
    let mut inv: Vec<Rational> =
        (0..n * n).map(|k| if k / n == k % n { Rational::one() } else { Rational::zero() }).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r * n + col].is_zero()).ok_or(Error::SingularAffine)?;
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let p = a[col * n + col].clone();
        for j in 0..n {
            a[col * n + j] /= &p;
            inv[col * n + j] /= &p;
        }
        for r in (0..n).filter(|&r| r != col) {
            let factor = a[r * n + col].clone();
            if factor.is_zero() {
                continue;
            }
            for j in 0..n {
                let da = &factor * &a[col * n + j];
                let di = &factor * &inv[col * n + j];
                a[r * n + j] -= da;
                inv[r * n + j] -= di;
            }
        }
    }
    Ok(inv)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TameRecipe {
    pub arity: usize,
    pub steps: Vec<ElementaryStep>,
    pub seed: u64,
}

/// `(F, A)` with `F` the steps applied in order and `A` its inverse.
pub fn realize(recipe: &TameRecipe) -> Result<(PolyMap, PolyMap)> {
    let m = recipe.arity;
    if m == 0 {
        return Err(Error::EmptyMap);
    }
    let mut forward = PolyMap::identity(m);
    let mut inverse = PolyMap::identity(m);
    for step in &recipe.steps {
        forward = step.forward(m)?.compose_with(&forward)?;
        inverse = inverse.compose_with(&step.inverse(m)?)?;
    }
    Ok((forward, inverse))
}

/// Default cap on the product of step degrees, which bounds `deg F`.
///
/// The solver works to order `deg(F)^(m-1)` with coefficients whose degree
/// grows like `deg(F) * deg(A)`, so the budget shrinks as `m` grows.
pub fn default_degree_budget(arity: usize) -> u32 {
    match arity {
        0..=3 => 4,
        _ => 2,
    }
}

/// Deterministic recipe with the default degree budget for `arity`.
pub fn random_recipe(arity: usize, steps: usize, max_h_degree: u32, seed: u64) -> TameRecipe {
    random_recipe_with_budget(arity, steps, max_h_degree, default_degree_budget(arity), seed)
}

/// Deterministic recipe of `steps` steps.
///
/// Triangular steps get `h` with at most three terms, coefficients in
/// `{-3..3} \ {0}` and degree at most `max_h_degree`; the degree is further
/// clamped so that the product of step degrees stays within `degree_budget`.
/// Affine steps are products of elementary row operations with small integer
/// entries plus a small integer translation, so they stay unimodular.
pub fn random_recipe_with_budget(
    arity: usize,
    steps: usize,
    max_h_degree: u32,
    degree_budget: u32,
    seed: u64,
) -> TameRecipe {
    assert!(arity >= 1, "arity must be positive");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut degree_product = 1u32;
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        if arity >= 2 && rng.gen_ratio(2, 3) {
            let room = (degree_budget / degree_product).max(1);
            let top = max_h_degree.min(room);
            let degree = if top == 0 { 0 } else { rng.gen_range(1..=top) };
            let target = rng.gen_range(0..arity);
            let h = random_h(&mut rng, arity, target, degree);
            degree_product = degree_product.saturating_mul(degree.max(1));
            out.push(ElementaryStep::Triangular { target, h });
        } else {
            out.push(random_affine(&mut rng, arity));
        }
    }
    TameRecipe { arity, steps: out, seed }
}

fn small_coeff(rng: &mut ChaCha8Rng) -> Rational {
    let mut c = rng.gen_range(1..=MAX_COEFF);
    if rng.gen_bool(0.5) {
        c = -c;
    }
    Rational::from_integer(BigInt::from(c))
}

/// Random monomial of the given total degree avoiding `target`.
fn random_monomial(rng: &mut ChaCha8Rng, arity: usize, target: usize, degree: u32) -> Monomial {
    let others: Vec<usize> = (0..arity).filter(|&i| i != target).collect();
    let mut exps = vec![0u32; arity];
    for _ in 0..degree {
        exps[others[rng.gen_range(0..others.len())]] += 1;
    }
    Monomial::from_exponents(exps)
}

fn random_h(rng: &mut ChaCha8Rng, arity: usize, target: usize, degree: u32) -> Polynomial {
    let n_terms = rng.gen_range(1..=MAX_H_TERMS);
    // The first term carries the full degree so the step really has it.
    let mut terms = vec![(random_monomial(rng, arity, target, degree), small_coeff(rng))];
    for _ in 1..n_terms {
        let d = rng.gen_range(0..=degree);
        terms.push((random_monomial(rng, arity, target, d), small_coeff(rng)));
    }
    Polynomial::from_terms(arity, terms).expect("monomials have the right arity")
}

fn random_affine(rng: &mut ChaCha8Rng, arity: usize) -> ElementaryStep {
    let n = arity;
    let mut matrix: Vec<Rational> =
        (0..n * n).map(|k| if k / n == k % n { Rational::one() } else { Rational::zero() }).collect();
    for _ in 0..rng.gen_range(1..=3) {
        match rng.gen_range(0..3) {
            0 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                let c = small_coeff(rng);
                for k in 0..n {
                    let add = &c * &matrix[j * n + k];
                    matrix[i * n + k] += add;
                }
            }
            1 if n >= 2 => {
                let i = rng.gen_range(0..n);
                let j = (i + rng.gen_range(1..n)) % n;
                for k in 0..n {
                    matrix.swap(i * n + k, j * n + k);
                }
            }
            _ => {
                let i = rng.gen_range(0..n);
                for k in 0..n {
                    matrix[i * n + k] = -matrix[i * n + k].clone();
                }
            }
        }
    }
    let translation =
        (0..n).map(|_| Rational::from_integer(BigInt::from(rng.gen_range(-MAX_COEFF..=MAX_COEFF)))).collect();
    ElementaryStep::AffineUnit { matrix, translation }
}
