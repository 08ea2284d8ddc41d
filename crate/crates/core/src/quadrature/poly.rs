//! Sparse bivariate polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::exact::{int, Rational, Vec2};

/// `sum c_{ij} x^i y^j`; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Polynomial2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Polynomial2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn x() -> Self {
        Self::monomial(int(1), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(int(1), 0, 1)
    }

    /// `a · (x, y) + c`.
    pub fn affine(a: &Vec2, c: &Rational) -> Self {
        let mut p = Self::zero();
        p.add_term(1, 0, a.x.clone());
        p.add_term(0, 1, a.y.clone());
        p.add_term(0, 0, c.clone());
        p
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|(i, j)| i + j).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let d = self.degree();
        self.terms.keys().all(|(i, j)| i + j == d)
    }

    pub fn add(&self, o: &Polynomial2) -> Polynomial2 {
        let mut p = self.clone();
        for (&(i, j), c) in &o.terms {
            p.add_term(i, j, c.clone());
        }
        p
    }

    pub fn scale(&self, t: &Rational) -> Polynomial2 {
        let mut p = Self::zero();
        for (&(i, j), c) in &self.terms {
            p.add_term(i, j, c * t);
        }
        p
    }

    pub fn mul(&self, o: &Polynomial2) -> Polynomial2 {
        let mut p = Self::zero();
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &o.terms {
                p.add_term(i + k, j + l, a * b);
            }
        }
        p
    }

    pub fn pow(&self, n: u32) -> Polynomial2 {
        (0..n).fold(Self::constant(int(1)), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, v: &Vec2) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(i, j), c)| {
            acc + c * pow_r(&v.x, i) * pow_r(&v.y, j)
        })
    }

    pub fn eval_f64(&self, v: [f64; 2]) -> f64 {
        self.terms
            .iter()
            .map(|(&(i, j), c)| c.to_f64().unwrap_or(f64::NAN) * v[0].powi(i as i32) * v[1].powi(j as i32))
            .sum()
    }

    /// `p(X, Y)` where `X`, `Y` are polynomials in the new variables.
    pub fn compose(&self, xs: &Polynomial2, ys: &Polynomial2) -> Polynomial2 {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0);
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0);
        let xp = powers(xs, max_i);
        let yp = powers(ys, max_j);
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out = out.add(&xp[i as usize].mul(&yp[j as usize]).scale(c));
        }
        out
    }

    /// Linear change of variables `y -> m y` for an integer matrix `m`.
    pub fn linear_substitute(&self, m: &crate::exact::Mat2) -> Polynomial2 {
        let a = m.0;
        let xs = Polynomial2::affine(&Vec2::from_ints(a[0][0], a[0][1]), &Rational::zero());
        let ys = Polynomial2::affine(&Vec2::from_ints(a[1][0], a[1][1]), &Rational::zero());
        self.compose(&xs, &ys)
    }

    /// Exact integral over the standard simplex `s, t >= 0, s + t <= 1`,
    /// using `∫ s^a t^b = a! b! / (a + b + 2)!`.
    pub fn integrate_standard_simplex(&self) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, (&(a, b), c)| {
            acc + c * Rational::new(factorial(a) * factorial(b), factorial(a + b + 2))
        })
    }
}

fn powers(p: &Polynomial2, n: u32) -> Vec<Polynomial2> {
    let mut v = vec![Polynomial2::constant(int(1))];
    for k in 0..n as usize {
        let next = v[k].mul(p);
        v.push(next);
    }
    v
}

fn pow_r(r: &Rational, n: u32) -> Rational {
    num_traits::pow(r.clone(), n as usize)
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

impl fmt::Debug for Polynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(&(i, j), c)| {
                let mut s = format!("{c}");
                if i > 0 {
                    s.push_str(&format!("*x^{i}"));
                }
                if j > 0 {
                    s.push_str(&format!("*y^{j}"));
                }
                s
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn simplex_monomials() {
        assert_eq!(Polynomial2::constant(int(1)).integrate_standard_simplex(), rat(1, 2));
        let st = Polynomial2::monomial(int(1), 1, 1);
        assert_eq!(st.integrate_standard_simplex(), rat(1, 24));
    }

    #[test]
    fn expand_square_difference() {
        let d = Polynomial2::x().pow(2).add(&Polynomial2::y().pow(2).scale(&int(-1)));
        let p = d.pow(2);
        assert_eq!(p.coeff(4, 0), int(1));
        assert_eq!(p.coeff(2, 2), int(-2));
        assert_eq!(p.coeff(0, 4), int(1));
        assert_eq!(p.terms().count(), 3);
        assert!(p.is_homogeneous());
    }

    #[test]
    fn compose_shift() {
        // (x + 1)^2 with x -> s
        let p = Polynomial2::affine(&Vec2::from_ints(1, 0), &int(1)).pow(2);
        let q = p.compose(&Polynomial2::y(), &Polynomial2::x());
        assert_eq!(q.coeff(0, 2), int(1));
        assert_eq!(q.coeff(0, 1), int(2));
        assert_eq!(q.coeff(0, 0), int(1));
    }
}
