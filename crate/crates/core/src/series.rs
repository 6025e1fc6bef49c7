//! Truncated power series in `t` whose coefficients are polynomials.
//!
//! A [`TruncSeries`] of order `N` stores the coefficients of `t^0 ..= t^N`
//! densely; everything past `t^N` is dropped by every operation.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::map::PolyMap;
use crate::poly::{default_var_names, Polynomial};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    arity: usize,
    coeffs: Vec<Polynomial>,
}

impl TruncSeries {
    pub fn zero(arity: usize, order: usize) -> Self {
        TruncSeries { arity, coeffs: (0..=order).map(|_| Polynomial::zero(arity)).collect() }
    }

    /// The series with `p` at `t^0` and nothing else.
    pub fn constant(p: Polynomial, order: usize) -> Self {
        let mut s = Self::zero(p.arity(), order);
        s.coeffs[0] = p;
        s
    }

    /// Builds a series from `t^0 ..` coefficients; needs at least one.
    pub fn from_coeffs(coeffs: Vec<Polynomial>) -> Result<Self> {
        let arity = coeffs.first().ok_or(Error::SeriesMismatch)?.arity();
        if coeffs.iter().any(|c| c.arity() != arity) {
            return Err(Error::SeriesMismatch);
        }
        Ok(TruncSeries { arity, coeffs })
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeffs(&self) -> &[Polynomial] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &Polynomial {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Polynomial::is_zero)
    }

    /// Keeps `t^0 ..= t^order`; `order` must not exceed the current order.
    pub fn truncate(&self, order: usize) -> Result<Self> {
        if order > self.order() {
            return Err(Error::SeriesMismatch);
        }
        Ok(TruncSeries { arity: self.arity, coeffs: self.coeffs[..=order].to_vec() })
    }

    fn check_compatible(&self, other: &TruncSeries) -> Result<()> {
        if self.arity != other.arity || self.order() != other.order() {
            return Err(Error::SeriesMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(TruncSeries { arity: self.arity, coeffs })
    }

    pub fn sub(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(TruncSeries { arity: self.arity, coeffs })
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &TruncSeries) -> Result<TruncSeries> {
        self.check_compatible(other)?;
        let order = self.order();
        let mut out = TruncSeries::zero(self.arity, order);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coeffs[i + j] += &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Substitutes `t = 1`: the sum of all coefficients.
    pub fn eval_at_one(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.arity);
        for c in &self.coeffs {
            acc += c;
        }
        acc
    }

    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        DisplaySeries { series: self, names }
    }
}

struct DisplaySeries<'a, S> {
    series: &'a TruncSeries,
    names: &'a [S],
}

/// `c0 + (c1)*t + (c2)*t^2 + ...`, skipping vanishing coefficients past `t^0`.
impl<S: AsRef<str>> fmt::Display for DisplaySeries<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = &self.series.coeffs;
        write!(f, "{}", coeffs[0].display_with(self.names))?;
        for (j, c) in coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            write!(f, " + ({})*t", c.display_with(self.names))?;
            if j > 1 {
                write!(f, "^{j}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.arity);
        write!(f, "{}", self.display_with(&names))?;
        Ok(())
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries[order {}]({})", self.order(), self)
    }
}

/// An `m`-tuple of series of equal order whose coefficients live in `m` variables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SeriesVec {
    components: Vec<TruncSeries>,
}

impl SeriesVec {
    pub fn new(components: Vec<TruncSeries>) -> Result<Self> {
        let m = components.len();
        let first = components.first().ok_or(Error::EmptyMap)?;
        let order = first.order();
        for c in &components {
            if c.arity != m {
                return Err(Error::ArityMismatch { expected: m, found: c.arity });
            }
            if c.order() != order {
                return Err(Error::SeriesMismatch);
            }
        }
        Ok(SeriesVec { components })
    }

    /// `S_i = X_i` for every `i`.
    pub fn identity(arity: usize, order: usize) -> Self {
        SeriesVec {
            components: (0..arity)
                .map(|i| TruncSeries::constant(Polynomial::var(arity, i), order))
                .collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> usize {
        self.components[0].order()
    }

    pub fn components(&self) -> &[TruncSeries] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &TruncSeries {
        &self.components[i]
    }

    pub fn truncate(&self, order: usize) -> Result<Self> {
        let components = self.components.iter().map(|c| c.truncate(order)).collect::<Result<_>>()?;
        Ok(SeriesVec { components })
    }

    /// The order-`j` coefficient tuple `(u_{1,j}, ..., u_{m,j})`.
    pub fn coeff_tuple(&self, j: usize) -> Vec<Polynomial> {
        self.components.iter().map(|c| c.coeffs[j].clone()).collect()
    }

    /// Component-wise `t = 1` evaluation.
    pub fn eval_at_one(&self) -> PolyMap {
        PolyMap::new(self.components.iter().map(TruncSeries::eval_at_one).collect())
            .expect("series components share the arity")
    }
}

/// `f(S_1, ..., S_m)` in the truncated series ring.
///
/// Truncated powers of each `S_i` are computed once up to the largest
/// exponent of `X_i` in `f`.
pub fn compose_poly_series(f: &Polynomial, s: &SeriesVec) -> Result<TruncSeries> {
    if f.arity() != s.arity() {
        return Err(Error::ArityMismatch { expected: f.arity(), found: s.arity() });
    }
    let arity = s.arity();
    let order = s.order();
    let one = TruncSeries::constant(Polynomial::one(arity), order);
    let mut powers: Vec<Vec<TruncSeries>> = Vec::with_capacity(arity);
    for (i, si) in s.components.iter().enumerate() {
        let top = f.degree_in(i) as usize;
        let mut pows = Vec::with_capacity(top + 1);
        pows.push(one.clone());
        for e in 1..=top {
            let next = pows[e - 1].mul(si)?;
            pows.push(next);
        }
        powers.push(pows);
    }

    let mut out = TruncSeries::zero(arity, order);
    for (mono, c) in f.terms() {
        let mut prod: Option<TruncSeries> = None;
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let p = &powers[i][e as usize];
            prod = Some(match prod {
                None => p.clone(),
                Some(q) => q.mul(p)?,
            });
        }
        let prod = prod.unwrap_or_else(|| one.clone());
        for (dst, src) in out.coeffs.iter_mut().zip(&prod.coeffs) {
            dst.add_scaled_assign(src, c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use alloc::string::ToString;
    use alloc::vec;
    use num_bigint::BigInt;

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }
    fn c(v: i64) -> Polynomial {
        Polynomial::from_int(2, v)
    }
    fn ser(cs: Vec<Polynomial>) -> TruncSeries {
        TruncSeries::from_coeffs(cs).unwrap()
    }

    #[test]
    fn add_examples() {
        let a = ser(vec![x(), y()]);
        let b = ser(vec![y(), -y()]);
        assert_eq!(a.add(&b).unwrap(), ser(vec![&x() + &y(), c(0)]));
        assert_eq!(a.add(&TruncSeries::zero(2, 1)).unwrap(), a);
        let xt2 = ser(vec![c(0), c(0), x()]);
        assert_eq!(xt2.add(&xt2).unwrap(), ser(vec![c(0), c(0), &c(2) * &x()]));
    }

    #[test]
    fn mul_examples() {
        let a = ser(vec![c(1), c(1), c(0)]);
        let b = ser(vec![c(1), c(-1), c(0)]);
        assert_eq!(a.mul(&b).unwrap(), ser(vec![c(1), c(0), c(-1)]));

        let s = ser(vec![x(), y()]);
        let sq = s.mul(&s).unwrap();
        assert_eq!(sq, ser(vec![x().pow(2), &c(2) * &(&x() * &y())]));

        assert!(s.mul(&TruncSeries::zero(2, 1)).unwrap().is_zero());
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = TruncSeries::zero(2, 1);
        assert_eq!(a.add(&TruncSeries::zero(2, 2)), Err(Error::SeriesMismatch));
        assert_eq!(a.mul(&TruncSeries::zero(3, 1)), Err(Error::SeriesMismatch));
    }

    #[test]
    fn compose_examples() {
        // F = X + Y^2 along (X - tY^2, Y)
        let f = &x() + &y().pow(2);
        let s = SeriesVec::new(vec![ser(vec![x(), -y().pow(2)]), ser(vec![y(), c(0)])]).unwrap();
        let got = compose_poly_series(&f, &s).unwrap();
        assert_eq!(got, ser(vec![f.clone(), -y().pow(2)]));

        let arb = SeriesVec::new(vec![ser(vec![x(), &x() * &y()]), ser(vec![c(3), y()])]).unwrap();
        assert_eq!(compose_poly_series(&y(), &arb).unwrap(), arb.component(1).clone());

        let xy = &x() * &y();
        let s = SeriesVec::new(vec![ser(vec![x(), c(1), c(0)]), ser(vec![y(), c(-1), c(0)])]).unwrap();
        let got = compose_poly_series(&xy, &s).unwrap();
        assert_eq!(got, ser(vec![xy.clone(), &y() - &x(), c(-1)]));
    }

    #[test]
    fn eval_at_one_examples() {
        let h = y().pow(2);
        assert_eq!(ser(vec![x(), -&h]).eval_at_one(), &x() - &h);
        assert_eq!(TruncSeries::constant(c(4), 3).eval_at_one(), c(4));

        let lin = &(&c(2) * &x()) - &(&c(3) * &y());
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let u1 = -lin.pow(2).scale(&half);
        assert_eq!(ser(vec![x(), u1.clone()]).eval_at_one(), &x() + &u1);
    }

    #[test]
    fn text_form() {
        let s = ser(vec![x(), -y().pow(3), c(0), c(2)]);
        assert_eq!(s.to_string(), "X + (-Y^3)*t + (2)*t^3");
    }
}
