use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// The coefficient field.
pub type Rational = BigRational;

/// Total degree of a polynomial. The zero polynomial has degree `NegInfinity`,
/// which compares below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::NegInfinity => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInfinity => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// `X, Y` for two variables, `X1 .. Xm` otherwise.
pub fn default_var_names(arity: usize) -> Vec<String> {
    if arity == 2 {
        alloc::vec![String::from("X"), String::from("Y")]
    } else {
        (1..=arity).map(|i| format!("X{i}")).collect()
    }
}

/// Sparse polynomial in `arity` variables with rational coefficients.
///
/// Terms are kept in a map keyed by monomial (graded reverse lexicographic
/// order); zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rational>,
}

fn check_arity(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::ArityMismatch { expected, found })
    }
}

fn add_term(acc: &mut BTreeMap<Monomial, Rational>, mono: Monomial, coeff: Rational) {
    use alloc::collections::btree_map::Entry;
    match acc.entry(mono) {
        Entry::Vacant(v) => {
            if !coeff.is_zero() {
                v.insert(coeff);
            }
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += coeff;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: BTreeMap::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Rational::one())
    }

    pub fn constant(arity: usize, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(arity), c);
        }
        Polynomial { arity, terms }
    }

    pub fn from_int(arity: usize, c: i64) -> Self {
        Self::constant(arity, Rational::from_integer(BigInt::from(c)))
    }

    /// The coordinate function `X_{index}` (0-based).
    ///
    /// Panics if `index >= arity`.
    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable index {index} out of range for arity {arity}");
        Self::term(Monomial::var(arity, index), Rational::one())
    }

    pub fn term(mono: Monomial, coeff: Rational) -> Self {
        let arity = mono.arity();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(mono, coeff);
        }
        Polynomial { arity, terms }
    }

    /// Builds a normalized polynomial, merging repeated monomials.
    pub fn from_terms<I>(arity: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, Rational)>,
    {
        let mut acc = BTreeMap::new();
        for (mono, coeff) in terms {
            check_arity(arity, mono.arity())?;
            add_term(&mut acc, mono, coeff);
        }
        Ok(Polynomial { arity, terms: acc })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending graded reverse lexicographic order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> + '_ {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Rational {
        self.terms.get(mono).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The value of a constant polynomial (zero included), `None` otherwise.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Degree {
        // grevlex is graded, so the largest monomial has the largest degree
        match self.leading_term() {
            None => Degree::NegInfinity,
            Some((m, _)) => Degree::Finite(m.degree()),
        }
    }

    /// Largest exponent of `X_{index}` across all terms.
    pub fn degree_in(&self, index: usize) -> u32 {
        self.terms.keys().map(|m| m.exponents()[index]).max().unwrap_or(0)
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_arity(self.arity, other.arity)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_arity(self.arity, other.arity)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            add_term(&mut out.terms, m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_arity(self.arity, other.arity)?;
        let mut acc = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                add_term(&mut acc, ma.mul(mb), ca * cb);
            }
        }
        Ok(Polynomial { arity: self.arity, terms: acc })
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.arity);
        }
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one(self.arity);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index >= self.arity {
            return Err(Error::VarIndexOutOfRange { index, arity: self.arity });
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e > 0 {
                let coeff = c * Rational::from_integer(BigInt::from(e));
                terms.insert(m.with_exponent(index, e - 1), coeff);
            }
        }
        Ok(Polynomial { arity: self.arity, terms })
    }

    /// Substitutes `X_i := args[i]` and expands.
    ///
    /// Every argument must share one arity, which becomes the arity of the
    /// result. Powers of each argument are built once, up to the largest
    /// exponent the variable carries in `self`.
    pub fn compose(&self, args: &[Polynomial]) -> Result<Polynomial> {
        check_arity(self.arity, args.len())?;
        let out_arity = args.first().ok_or(Error::EmptyMap)?.arity;
        for a in args {
            check_arity(out_arity, a.arity)?;
        }
        let powers: Vec<Vec<Polynomial>> = args
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let top = self.degree_in(i);
                let mut pows = Vec::with_capacity(top as usize + 1);
                pows.push(Polynomial::one(out_arity));
                for e in 1..=top as usize {
                    let next = &pows[e - 1] * a;
                    pows.push(next);
                }
                pows
            })
            .collect();

        let mut acc = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut prod: Option<Polynomial> = None;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = &powers[i][e as usize];
                prod = Some(match prod {
                    None => p.clone(),
                    Some(q) => &q * p,
                });
            }
            match prod {
                None => add_term(&mut acc, Monomial::one(out_arity), c.clone()),
                Some(p) => {
                    for (pm, pc) in p.terms {
                        add_term(&mut acc, pm, pc * c);
                    }
                }
            }
        }
        Ok(Polynomial { arity: out_arity, terms: acc })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Rational> {
        check_arity(self.arity, point.len())?;
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    v *= num_traits::pow(x.clone(), e as usize);
                }
            }
            total += v;
        }
        Ok(total)
    }

    /// Exact quotient `self / divisor`; fails unless the division leaves no remainder.
    pub fn exact_div(&self, divisor: &Polynomial) -> Result<Polynomial> {
        check_arity(self.arity, divisor.arity)?;
        let (dm, dc) = divisor.leading_term().ok_or(Error::NotDivisible)?;
        let mut rem = self.clone();
        let mut quot = BTreeMap::new();
        while let Some((rm, rc)) = rem.leading_term() {
            let qm = rm.div(dm).ok_or(Error::NotDivisible)?;
            let qc = rc / dc;
            let step = Polynomial::term(qm.clone(), qc.clone());
            rem = &rem - &(&step * divisor);
            add_term(&mut quot, qm, qc);
        }
        Ok(Polynomial { arity: self.arity, terms: quot })
    }

    /// Formats with the given variable names (one per variable).
    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        DisplayWith { poly: self, names }
    }

    pub(crate) fn add_scaled_assign(&mut self, other: &Polynomial, c: &Rational) {
        assert_eq!(self.arity, other.arity, "arity mismatch");
        if c.is_zero() {
            return;
        }
        for (m, v) in &other.terms {
            add_term(&mut self.terms, m.clone(), v * c);
        }
    }
}

struct DisplayWith<'a, S> {
    poly: &'a Polynomial,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for DisplayWith<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        // Ascending total degree; inside one degree, descending grevlex.
        let mut terms: Vec<_> = self.poly.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut first = true;
            if m.is_one() || !abs.is_one() {
                write!(f, "{abs}")?;
                first = false;
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(self.names[i].as_ref())?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.arity);
        write!(f, "{}", self.display_with(&names))?;
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial[{}]({})", self.arity, self)
    }
}

// Operator impls panic on arity mismatch; use the `checked_*` methods to
// get an error instead.

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.checked_add(rhs).expect("polynomial arity mismatch")
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.checked_sub(rhs).expect("polynomial arity mismatch")
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.checked_mul(rhs).expect("polynomial arity mismatch")
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        self.add_scaled_assign(rhs, &Rational::one());
    }
}

impl SubAssign<&Polynomial> for Polynomial {
    fn sub_assign(&mut self, rhs: &Polynomial) {
        self.add_scaled_assign(rhs, &-Rational::one());
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}
