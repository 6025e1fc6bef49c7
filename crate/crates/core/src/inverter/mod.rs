//! Deciding invertibility of a polynomial map and reconstructing its inverse.
//!
//! The pipeline in [`decide_invertible`]:
//!
//! 1. the Jacobian determinant must be a nonzero constant;
//! 2. the inverse of a degree-`n` automorphism in `m` variables has degree at
//!    most `n^(m-1)` ([`degree_bound`]), which is also the number of orders of
//!    the deformation series that need to be solved;
//! 3. the truncated series is evaluated at `t = 1` ([`candidate_inverse`]);
//! 4. the candidate is accepted only if it composes to the identity on both
//!    sides ([`verify_mutual_inverse`]). Failure of that check at the full
//!    bound proves the map has no polynomial inverse.

mod oracle;
mod solver;

use alloc::vec::Vec;
use core::num::NonZeroUsize;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::{constant_unit, jacobian};
use crate::map::PolyMap;
use crate::poly::{Polynomial, Rational};
use crate::series::SeriesVec;

pub use oracle::derivative_recursion_m2;
pub use solver::{solve_series, SeriesSolver};

const PRECHECK_POINTS: usize = 3;
const PRECHECK_BOUND: i64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveConfig {
    /// Largest series order the pipeline is allowed to solve.
    pub max_order: NonZeroUsize,
    /// Check the partial candidate after every order and stop at the first
    /// one that verifies.
    pub eager_check: bool,
    /// Screen both composition identities at random rational points before
    /// composing symbolically.
    pub random_precheck: bool,
    pub precheck_seed: u64,
}

impl Default for SolveConfig {
    fn default() -> Self {
        SolveConfig {
            max_order: NonZeroUsize::new(64).unwrap(),
            eager_check: false,
            random_precheck: true,
            precheck_seed: 0x5eed_f1de,
        }
    }
}

/// Which side of the two-sided inverse check failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Identity {
    /// `F_i(A) = X_i`
    MapOfCandidate,
    /// `A_i(F) = X_i`
    CandidateOfMap,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Evidence {
    /// Leading term of the nonzero residual `composed_i - X_i`.
    Residual(Polynomial),
    /// A rational point where the composed component differs from `X_i`.
    Point { point: Vec<Rational>, value: Rational },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CompositionWitness {
    pub identity: Identity,
    /// Component index (0-based).
    pub index: usize,
    /// Series order whose candidate was checked.
    pub order: usize,
    pub evidence: Evidence,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// `inverse` composes to the identity on both sides (checked exactly).
    Invertible { inverse: PolyMap, series: SeriesVec },
    /// The Jacobian determinant is not a nonzero constant.
    NotInvertibleJacobian { determinant: Polynomial },
    /// The candidate failed the composition check. At the full degree bound
    /// this proves there is no polynomial inverse; in eager mode with a
    /// `max_order` below the bound it only refutes the truncated candidate.
    NotInvertibleComposition { witness: CompositionWitness },
    /// The degree bound is larger than the configured `max_order`.
    BoundExceeded { required: usize, cap: usize },
}

impl Verdict {
    pub fn is_invertible(&self) -> bool {
        matches!(self, Verdict::Invertible { .. })
    }
}

/// `deg(F)^(m-1)`, saturating at `usize::MAX`.
pub fn degree_bound(map: &PolyMap) -> Result<usize> {
    let n = map.degree()?;
    if n < 1 {
        return Err(Error::DegenerateMap(n));
    }
    let exp = u32::try_from(map.arity() - 1).unwrap_or(u32::MAX);
    Ok((n as usize).checked_pow(exp).unwrap_or(usize::MAX))
}

/// `tau(X_i) = S_i(1)`.
pub fn candidate_inverse(series: &SeriesVec) -> PolyMap {
    series.eval_at_one()
}

fn residual_witness(identity: Identity, index: usize, composed: &Polynomial, order: usize) -> Option<CompositionWitness> {
    let residual = composed - &Polynomial::var(composed.arity(), index);
    let (m, c) = residual.leading_term()?;
    Some(CompositionWitness {
        identity,
        index,
        order,
        evidence: Evidence::Residual(Polynomial::term(m.clone(), c.clone())),
    })
}

fn random_point(rng: &mut ChaCha8Rng, arity: usize) -> Vec<Rational> {
    (0..arity)
        .map(|_| {
            let num = rng.gen_range(-PRECHECK_BOUND..=PRECHECK_BOUND);
            let den = rng.gen_range(1..=PRECHECK_BOUND);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect()
}

fn point_witness(outer: &PolyMap, inner: &PolyMap, identity: Identity, point: &[Rational], order: usize) -> Option<CompositionWitness> {
    let inner_vals = inner.evaluate(point).expect("arity checked");
    for (index, f) in outer.components().iter().enumerate() {
        let value = f.evaluate(&inner_vals).expect("arity checked");
        if value != point[index] {
            return Some(CompositionWitness {
                identity,
                index,
                order,
                evidence: Evidence::Point { point: point.to_vec(), value },
            });
        }
    }
    None
}

/// First failing identity of `F(A) = id` and `A(F) = id`, or `None` when both hold.
///
/// With `precheck_seed` set, both identities are first evaluated at a few
/// random rational points; a mismatch there is already a proof. Passing
/// points prove nothing, so the exact symbolic check always follows.
pub fn composition_failure(
    map: &PolyMap,
    candidate: &PolyMap,
    precheck_seed: Option<u64>,
    order: usize,
) -> Result<Option<CompositionWitness>> {
    if map.arity() != candidate.arity() {
        return Err(Error::ArityMismatch { expected: map.arity(), found: candidate.arity() });
    }
    let sides = [
        (map, candidate, Identity::MapOfCandidate),
        (candidate, map, Identity::CandidateOfMap),
    ];
    if let Some(seed) = precheck_seed {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..PRECHECK_POINTS {
            let point = random_point(&mut rng, map.arity());
            for (outer, inner, identity) in sides {
                if let Some(w) = point_witness(outer, inner, identity, &point, order) {
                    return Ok(Some(w));
                }
            }
        }
    }
    for (outer, inner, identity) in sides {
        for (i, f) in outer.components().iter().enumerate() {
            let composed = f.compose(inner.components())?;
            if let Some(w) = residual_witness(identity, i, &composed, order) {
                return Ok(Some(w));
            }
        }
    }
    Ok(None)
}

/// Whether `F(A) = A(F) = id` holds exactly. Maps of different arity are
/// never inverse to each other.
pub fn verify_mutual_inverse(map: &PolyMap, candidate: &PolyMap) -> bool {
    matches!(composition_failure(map, candidate, None, 0), Ok(None))
}

/// Runs the full decision pipeline on `map`.
pub fn decide_invertible(map: &PolyMap, cfg: &SolveConfig) -> Verdict {
    let determinant = jacobian(map).determinant().expect("jacobian is square");
    if constant_unit(&determinant).is_none() {
        return Verdict::NotInvertibleJacobian { determinant };
    }
    // A unit Jacobian determinant forces degree >= 1.
    let bound = degree_bound(map).expect("nonconstant map");
    let cap = cfg.max_order.get();
    if bound > cap && !cfg.eager_check {
        return Verdict::BoundExceeded { required: bound, cap };
    }
    let seed = cfg.random_precheck.then_some(cfg.precheck_seed);
    let mut solver = SeriesSolver::new(map, None).expect("unit jacobian checked");
    let last = bound.min(cap);

    let check = |solver: &SeriesSolver| -> core::result::Result<Verdict, CompositionWitness> {
        let candidate = solver.candidate();
        match composition_failure(map, &candidate, seed, solver.order()).expect("arity agrees") {
            None => Ok(Verdict::Invertible { inverse: candidate, series: solver.series() }),
            Some(w) => Err(w),
        }
    };

    if cfg.eager_check {
        let mut witness = None;
        for _ in 0..last {
            solver.step();
            match check(&solver) {
                Ok(v) => return v,
                Err(w) => witness = Some(w),
            }
        }
        return Verdict::NotInvertibleComposition { witness: witness.expect("at least one order") };
    }

    for _ in 0..last {
        solver.step();
    }
    match check(&solver) {
        Ok(v) => v,
        Err(witness) => Verdict::NotInvertibleComposition { witness },
    }
}
