use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::poly::{default_var_names, Degree, Polynomial, Rational};

/// An `m`-tuple `(F_1, ..., F_m)` of polynomials in `m` variables, i.e. the
/// algebra endomorphism sending `X_i` to `F_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyMap {
    components: Vec<Polynomial>,
}

impl PolyMap {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let arity = components.len();
        if arity == 0 {
            return Err(Error::EmptyMap);
        }
        for c in &components {
            if c.arity() != arity {
                return Err(Error::ArityMismatch { expected: arity, found: c.arity() });
            }
        }
        Ok(PolyMap { components })
    }

    pub fn identity(arity: usize) -> Self {
        PolyMap { components: (0..arity).map(|i| Polynomial::var(arity, i)).collect() }
    }

    pub fn arity(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<Polynomial> {
        self.components
    }

    pub fn is_identity(&self) -> bool {
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| *c == Polynomial::var(self.arity(), i))
    }

    /// Maximum total degree over the components.
    pub fn degree(&self) -> Result<u32> {
        self.components
            .iter()
            .map(Polynomial::total_degree)
            .max()
            .and_then(Degree::finite)
            .ok_or(Error::ZeroMap)
    }

    /// The map `x -> self(inner(x))`, i.e. every `X_i` in `self` replaced by `inner_i`.
    pub fn compose_with(&self, inner: &PolyMap) -> Result<PolyMap> {
        let components = self
            .components
            .iter()
            .map(|c| c.compose(&inner.components))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyMap { components })
    }

    pub fn evaluate(&self, point: &[Rational]) -> Result<Vec<Rational>> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    pub fn display_with<'a, S: AsRef<str>>(&'a self, names: &'a [S]) -> impl fmt::Display + 'a {
        DisplayMap { map: self, names }
    }
}

struct DisplayMap<'a, S> {
    map: &'a PolyMap,
    names: &'a [S],
}

impl<S: AsRef<str>> fmt::Display for DisplayMap<'_, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.map.components.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{}", c.display_with(self.names))?;
        }
        Ok(())
    }
}

/// Components separated by `"; "`.
impl fmt::Display for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_var_names(self.arity());
        write!(f, "{}", self.display_with(&names))?;
        Ok(())
    }
}

impl fmt::Debug for PolyMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyMap({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;
    use num_bigint::BigInt;

    fn x() -> Polynomial {
        Polynomial::var(2, 0)
    }
    fn y() -> Polynomial {
        Polynomial::var(2, 1)
    }

    #[test]
    fn map_degree_examples() {
        let f = PolyMap::new(vec![&x() + &y().pow(2), y()]).unwrap();
        assert_eq!(f.degree(), Ok(2));
        assert_eq!(PolyMap::identity(3).degree(), Ok(1));

        let lin = &x().scale(&Rational::from_integer(BigInt::from(2)))
            - &y().scale(&Rational::from_integer(BigInt::from(3)));
        let sq = lin.pow(2);
        let half = Rational::new(BigInt::from(1), BigInt::from(2));
        let third = Rational::new(BigInt::from(1), BigInt::from(3));
        let g = PolyMap::new(vec![&x() + &sq.scale(&half), &y() + &sq.scale(&third)]).unwrap();
        assert_eq!(g.degree(), Ok(2));

        let zero = PolyMap::new(vec![Polynomial::zero(2), Polynomial::zero(2)]).unwrap();
        assert_eq!(zero.degree(), Err(Error::ZeroMap));
    }

    #[test]
    fn construction_checks_arity() {
        assert_eq!(PolyMap::new(vec![]), Err(Error::EmptyMap));
        assert!(PolyMap::new(vec![x()]).is_err());
        assert!(PolyMap::new(vec![x(), Polynomial::var(3, 0)]).is_err());
    }

    #[test]
    fn compose_with_is_point_composition() {
        let g1 = PolyMap::new(vec![&x() + &y().pow(2), y()]).unwrap();
        let g2 = PolyMap::new(vec![x(), &y() + &x().pow(3)]).unwrap();
        let f = g2.compose_with(&g1).unwrap();
        assert_eq!(f.to_string(), "X + Y^2; Y + X^3 + 3*X^2*Y^2 + 3*X*Y^4 + Y^6");
    }
}
