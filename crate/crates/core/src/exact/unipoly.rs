//! Dense univariate polynomials over the rationals: division, gcd, and
//! Yun's squarefree decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rat, Rational};
use crate::error::{Error, Result};

/// coeffs[i] is the coefficient of u^i; no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, u: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// Divide by u (drop the constant term).
    pub fn shift_down(&self) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().skip(1).cloned().collect())
    }

    pub fn derivative(&self) -> UniPoly {
        UniPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let lc = self.leading();
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c / &lc).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    pub fn scale(&self, c: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UniPoly::from_coeffs((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    /// Exact quotient and remainder.
    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dd = div.degree().unwrap();
        let lc = div.leading();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let q = &rem[i] / &lc;
            if q.is_zero() {
                continue;
            }
            for (j, c) in div.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                rem[idx] = &rem[idx] - &(c * &q);
            }
            quot[i - dd] = q;
        }
        (UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem))
    }

    pub fn divides_exactly(&self, div: &UniPoly) -> Option<UniPoly> {
        let (q, r) = self.divrem(div);
        r.is_zero().then_some(q)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Clear denominators and content; returns primitive integer coefficients
    /// (constant term first) with positive leading coefficient.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        assert!(!self.is_zero());
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        for c in &mut ints {
            *c /= &g;
        }
        ints
    }
}

/// Yun's algorithm: p = lc · ∏ factorᵢ^multᵢ with monic, pairwise-coprime
/// squarefree factors and strictly increasing multiplicities. Returns the
/// leading scalar and the (factor, multiplicity) list.
pub fn squarefree_decomposition(p: &UniPoly) -> Result<(Rational, Vec<(UniPoly, u32)>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let lc = p.leading();
    let p = p.monic();
    if p.degree() == Some(0) {
        return Ok((lc, Vec::new()));
    }
    let dp = p.derivative();
    let mut factors = Vec::new();
    let g = p.gcd(&dp);
    let mut w = p.divides_exactly(&g).expect("gcd divides");
    let mut y = dp.divides_exactly(&g).expect("gcd divides derivative");
    let mut z = y.sub(&w.derivative());
    let mut i = 1u32;
    while w.degree().map_or(false, |d| d > 0) {
        let f = w.gcd(&z);
        if f.degree().map_or(false, |d| d > 0) {
            factors.push((f.clone(), i));
        }
        w = w.divides_exactly(&f).expect("factor divides");
        y = z.divides_exactly(&f).expect("factor divides");
        z = y.sub(&w.derivative());
        i += 1;
    }
    debug_assert!({
        let mut prod = UniPoly::from_coeffs(vec![lc.clone()]);
        for (f, m) in &factors {
            for _ in 0..*m {
                prod = prod.mul(f);
            }
        }
        prod == p.scale(&lc)
    });
    Ok((lc, factors))
}

#[cfg(test)]
mod tests {
    use super::super::ratq;
    use super::*;

    fn upoly(cs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(cs.iter().map(|&c| rat(c)).collect())
    }

    #[test]
    fn divrem_exact() {
        // (u^2 − 1) / (u − 1) = u + 1
        let (q, r) = upoly(&[-1, 0, 1]).divrem(&upoly(&[-1, 1]));
        assert_eq!(q, upoly(&[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn squarefree_prefactored() {
        // u^2 (u − 1)
        let p = upoly(&[0, 0, 1]).mul(&upoly(&[-1, 1]));
        let (lc, f) = squarefree_decomposition(&p).unwrap();
        assert_eq!(lc, rat(1));
        assert_eq!(f, vec![(upoly(&[-1, 1]), 1), (upoly(&[0, 1]), 2)]);
    }

    #[test]
    fn squarefree_pure_power() {
        let p = upoly(&[0, 0, 0, 1]); // u^3
        let (_, f) = squarefree_decomposition(&p).unwrap();
        assert_eq!(f, vec![(upoly(&[0, 1]), 3)]);
    }

    #[test]
    fn squarefree_two_double_roots() {
        // u^4 − 2u^3 + u^2 = u^2 (u−1)^2
        let p = upoly(&[0, 0, 1, -2, 1]);
        let (_, f) = squarefree_decomposition(&p).unwrap();
        assert_eq!(f.len(), 1);
        let (factor, mult) = &f[0];
        assert_eq!(*mult, 2);
        // u(u−1) = u^2 − u
        assert_eq!(*factor, upoly(&[0, -1, 1]));
    }

    #[test]
    fn squarefree_respects_leading_coefficient() {
        // 3(u + 1/2)^2
        let p = UniPoly::from_coeffs(vec![ratq(1, 2), rat(1)]);
        let sq = p.mul(&p).scale(&rat(3));
        let (lc, f) = squarefree_decomposition(&sq).unwrap();
        assert_eq!(lc, rat(3));
        assert_eq!(f, vec![(p.monic(), 2)]);
    }

    #[test]
    fn rejects_zero() {
        assert!(squarefree_decomposition(&UniPoly::zero()).is_err());
    }

    #[test]
    fn primitive_integer_form() {
        let p = UniPoly::from_coeffs(vec![ratq(1, 2), ratq(-3, 4)]);
        assert_eq!(
            p.primitive_integer(),
            vec![BigInt::from(-2), BigInt::from(3)]
        );
    }
}
