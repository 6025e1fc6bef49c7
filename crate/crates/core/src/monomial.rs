use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exponent vector `[e_1, ..., e_m]` standing for `X_1^e_1 * ... * X_m^e_m`.
///
/// The `Ord` impl is graded reverse lexicographic with `X_1 > X_2 > ... > X_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn var(arity: usize, index: usize) -> Self {
        let mut exps = vec![0; arity];
        exps[index] = 1;
        Monomial(exps)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Self {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub(crate) fn with_exponent(&self, index: usize, exp: u32) -> Monomial {
        let mut exps = self.0.clone();
        exps[index] = exp;
        Monomial(exps)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // Last differing variable decides; the smaller exponent there wins.
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                return b.cmp(a);
            }
        }
        self.0.len().cmp(&other.0.len())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_order() {
        // degree first
        assert!(m(&[0, 2]) > m(&[1, 0]));
        // X^2 > XY > Y^2
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        // lex would put X^2*Z first
        assert!(m(&[1, 2, 0]) > m(&[2, 0, 1]));
        assert_eq!(m(&[1, 1]).cmp(&m(&[1, 1])), Ordering::Equal);
    }

    #[test]
    fn division() {
        assert_eq!(m(&[3, 1]).div(&m(&[1, 1])), Some(m(&[2, 0])));
        assert_eq!(m(&[0, 1]).div(&m(&[1, 0])), None);
    }
}
