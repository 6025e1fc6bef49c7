#![allow(dead_code)]

use num_bigint::BigInt;
use polyaut_core::{PolyMap, Polynomial, Rational};

pub fn x() -> Polynomial {
    Polynomial::var(2, 0)
}

pub fn y() -> Polynomial {
    Polynomial::var(2, 1)
}

pub fn c(v: i64) -> Polynomial {
    Polynomial::from_int(2, v)
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn map(components: Vec<Polynomial>) -> PolyMap {
    PolyMap::new(components).unwrap()
}

/// `(aX - bY)^n`
pub fn skew_power(a: i64, b: i64, n: u32) -> Polynomial {
    (&(&c(a) * &x()) - &(&c(b) * &y())).pow(n)
}

/// `(X + (1/a) L, Y + (1/b) L)` with `L = (aX - bY)^n`; its inverse flips the signs.
pub fn skew_pair(a: i64, b: i64, n: u32) -> (PolyMap, PolyMap) {
    let l = skew_power(a, b, n);
    let f = map(vec![&x() + &l.scale(&q(1, a)), &y() + &l.scale(&q(1, b))]);
    let inv = map(vec![&x() - &l.scale(&q(1, a)), &y() - &l.scale(&q(1, b))]);
    (f, inv)
}
