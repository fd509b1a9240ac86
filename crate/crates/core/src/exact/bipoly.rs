//! Sparse bivariate polynomials over the exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::Rational;

/// Lattice exponent pair (s, t) for x^s y^t.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial2 {
    pub s: u32,
    pub t: u32,
}

impl Monomial2 {
    pub fn new(s: u32, t: u32) -> Self {
        Monomial2 { s, t }
    }

    pub fn deg(&self) -> u32 {
        self.s + self.t
    }

    /// Componentwise product of the underlying monomials.
    pub fn mul(&self, other: Monomial2) -> Monomial2 {
        Monomial2::new(self.s + other.s, self.t + other.t)
    }

    pub fn swap(&self) -> Monomial2 {
        Monomial2::new(self.t, self.s)
    }
}

impl fmt::Display for Monomial2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.s, self.t) {
            (0, 0) => write!(f, "1"),
            (1, 0) => write!(f, "x"),
            (s, 0) => write!(f, "x^{s}"),
            (0, 1) => write!(f, "y"),
            (0, t) => write!(f, "y^{t}"),
            (1, 1) => write!(f, "x*y"),
            (s, 1) => write!(f, "x^{s}*y"),
            (1, t) => write!(f, "x*y^{t}"),
            (s, t) => write!(f, "x^{s}*y^{t}"),
        }
    }
}

/// Bivariate polynomial with finite support and no stored zero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial2, Rational>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        BiPoly::from_terms([(Monomial2::new(0, 0), c)])
    }

    pub fn monomial(m: Monomial2, c: Rational) -> Self {
        BiPoly::from_terms([(m, c)])
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial2, Rational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<Monomial2, Rational> = BTreeMap::new();
        for (m, c) in iter {
            if c.is_zero() {
                continue;
            }
            let entry = terms.entry(m).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&m);
            }
        }
        BiPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Monomial2) -> Rational {
        self.terms.get(&m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial2, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = Monomial2> + '_ {
        self.terms.keys().copied()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.support().map(|m| m.deg()).max()
    }

    pub fn min_s(&self) -> Option<u32> {
        self.support().map(|m| m.s).min()
    }

    pub fn min_t(&self) -> Option<u32> {
        self.support().map(|m| m.t).min()
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        BiPoly::from_terms(
            self.terms()
                .chain(other.terms())
                .map(|(m, c)| (*m, c.clone())),
        )
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<Monomial2, Rational> = BTreeMap::new();
        for (m1, c1) in self.terms() {
            for (m2, c2) in other.terms() {
                let m = m1.mul(*m2);
                let entry = acc.entry(m).or_insert_with(Rational::zero);
                *entry += c1 * c2;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { terms: acc }
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        let mut result = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        let max_s = self.support().map(|m| m.s).max().unwrap_or(0) as usize;
        let max_t = self.support().map(|m| m.t).max().unwrap_or(0) as usize;
        let xp = powers(x, max_s);
        let yp = powers(y, max_t);
        let mut acc = Rational::zero();
        for (m, c) in self.terms() {
            acc += c * &xp[m.s as usize] * &yp[m.t as usize];
        }
        acc
    }

    /// Swap the variables: f(x, y) ↦ f(y, x).
    pub fn swap_xy(&self) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.swap(), c.clone()))
                .collect(),
        }
    }

    /// Substitute into x: returns f(x − a·y^β, y).
    pub(super) fn substitute_x(&self, a: &Rational, beta: u32) -> BiPoly {
        let mut acc: BTreeMap<Monomial2, Rational> = BTreeMap::new();
        for (m, c) in self.terms() {
            // (x − a·y^β)^s expanded term by term with running binomials.
            let mut binom = BigInt::one();
            let mut apow = Rational::one();
            for j in 0..=m.s {
                let coef = c * Rational::from_integer(binom.clone()) * &apow;
                let mono = Monomial2::new(m.s - j, m.t + beta * j);
                let entry = acc.entry(mono).or_insert_with(Rational::zero);
                *entry += coef;
                if j < m.s {
                    binom = binom * BigInt::from(m.s - j) / BigInt::from(j + 1);
                    apow *= -a.clone();
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { terms: acc }
    }

    /// Content exponents: the largest (a, b) with x^a y^b dividing f.
    pub fn monomial_content(&self) -> Monomial2 {
        Monomial2::new(self.min_s().unwrap_or(0), self.min_t().unwrap_or(0))
    }

    /// Divide out x^a y^b; panics if it does not divide.
    pub fn divide_monomial(&self, m: Monomial2) -> BiPoly {
        BiPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| {
                    assert!(k.s >= m.s && k.t >= m.t, "monomial does not divide");
                    (Monomial2::new(k.s - m.s, k.t - m.t), c.clone())
                })
                .collect(),
        }
    }
}

fn powers(x: &Rational, n: usize) -> Vec<Rational> {
    let mut v = Vec::with_capacity(n + 1);
    v.push(Rational::one());
    for i in 0..n {
        let next = &v[i] * x;
        v.push(next);
    }
    v
}

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // Highest total degree first, then by descending x within a degree.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| (b.deg(), b.s).cmp(&(a.deg(), a.s)));
        for (i, (m, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.deg() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{parse_bipoly, rat, ratq};
    use super::*;

    #[test]
    fn from_terms_cancels() {
        let p = BiPoly::from_terms([
            (Monomial2::new(1, 0), rat(2)),
            (Monomial2::new(1, 0), rat(-2)),
            (Monomial2::new(0, 1), ratq(1, 3)),
        ]);
        assert_eq!(p.num_terms(), 1);
        assert_eq!(p.coeff(Monomial2::new(0, 1)), ratq(1, 3));
    }

    #[test]
    fn product_and_power() {
        let f = parse_bipoly("x + y").unwrap();
        assert_eq!(f.pow(2), parse_bipoly("x^2 + 2*x*y + y^2").unwrap());
        assert_eq!(f.mul(&BiPoly::zero()), BiPoly::zero());
    }

    #[test]
    fn display_round_trips_through_parser() {
        let f = parse_bipoly("3*x^2*y - 1/2*y^3 + x - 7").unwrap();
        let again = parse_bipoly(&f.to_string()).unwrap();
        assert_eq!(f, again);
    }

    #[test]
    fn content_and_division() {
        let f = parse_bipoly("x^3*y + x^2*y^2").unwrap();
        let c = f.monomial_content();
        assert_eq!(c, Monomial2::new(2, 1));
        assert_eq!(f.divide_monomial(c), parse_bipoly("x + y").unwrap());
    }
}
