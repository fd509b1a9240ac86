//! Exact scalar and polynomial arithmetic: arbitrary-precision rationals,
//! sparse bivariate polynomials, monomial orders, weights, the shear
//! substitution, and univariate squarefree decomposition.

mod bipoly;
mod order;
mod parse;
mod unipoly;

pub use bipoly::{BiPoly, Monomial2};
pub use order::MonomialOrder;
pub use parse::parse_bipoly;
pub use unipoly::{squarefree_decomposition, UniPoly};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision fraction; the universal scalar.
/// Always reduced, denominator positive (maintained by `num_rational`).
pub type Rational = num_rational::BigRational;

/// Rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational p/q.
pub fn ratq(p: i64, q: i64) -> Rational {
    assert!(q != 0, "zero denominator");
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Positive integral weights on x and y, stored primitive (gcd 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Weight {
    pub wx: i64,
    pub wy: i64,
}

impl Weight {
    pub fn new(wx: i64, wy: i64) -> Self {
        assert!(wx >= 1 && wy >= 1, "weights must be positive");
        let g = wx.gcd(&wy);
        Weight {
            wx: wx / g,
            wy: wy / g,
        }
    }

    /// Weighted degree of a single monomial.
    pub fn of(&self, m: Monomial2) -> i64 {
        self.wx * m.s as i64 + self.wy * m.t as i64
    }
}

/// Weighted multiplicity (minimal weighted degree over the support) and the
/// weighted homogeneous leading part of `f`.
pub fn weighted_leading(f: &BiPoly, w: Weight) -> Result<(i64, BiPoly)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let wmult = f.support().map(|m| w.of(m)).min().unwrap();
    let fw = BiPoly::from_terms(
        f.terms()
            .filter(|(m, _)| w.of(**m) == wmult)
            .map(|(m, c)| (*m, c.clone())),
    );
    Ok((wmult, fw))
}

/// True when every term of `f` has the same weighted degree under `w`.
pub fn is_weighted_homogeneous(f: &BiPoly, w: Weight) -> bool {
    let mut degs = f.support().map(|m| w.of(m));
    match degs.next() {
        None => true,
        Some(d) => degs.all(|e| e == d),
    }
}

/// The substitution x ↦ x − A·y^β, i.e. returns f(x − A·y^β, y).
pub fn shear(f: &BiPoly, a: &Rational, beta: u32) -> BiPoly {
    assert!(beta >= 1, "shear exponent must be positive");
    f.substitute_x(a, beta)
}

/// Find all rational roots of a univariate polynomial, sorted.
/// The boolean is false when the divisor enumeration for the rational root
/// theorem was incomplete (huge unfactored constants), i.e. roots may be
/// missing; any returned root is verified exactly.
pub fn rational_roots(p: &UniPoly) -> (Vec<Rational>, bool) {
    let deg = match p.degree() {
        None | Some(0) => return (Vec::new(), true),
        Some(d) => d,
    };
    let mut roots = Vec::new();
    let mut complete = true;
    let mut q = p.clone();
    if q.coeff(0).is_zero() {
        roots.push(Rational::zero());
        while q.coeff(0).is_zero() && q.degree().map_or(false, |d| d > 0) {
            q = q.shift_down();
        }
    }
    match q.degree() {
        None | Some(0) => {}
        Some(1) => {
            roots.push(-q.coeff(0) / q.coeff(1));
        }
        Some(2) => {
            let (a, b, c) = (q.coeff(2), q.coeff(1), q.coeff(0));
            let disc = &b * &b - rat(4) * &a * &c;
            if !disc.is_negative() {
                if let Some(root) = exact_sqrt(&disc) {
                    let two_a = rat(2) * &a;
                    roots.push((-&b + &root) / &two_a);
                    if !root.is_zero() {
                        roots.push((-&b - &root) / &two_a);
                    }
                }
            }
        }
        Some(_) => {
            // Rational root theorem on the primitive integer form.
            let zq = q.primitive_integer();
            let lead = zq.last().unwrap().clone();
            let cst = zq[0].clone();
            let (dl, cl) = divisors(&lead.abs());
            let (dc, cc) = divisors(&cst.abs());
            complete = cl && cc;
            for num in &dc {
                for den in &dl {
                    for sign in [1i64, -1] {
                        let cand = Rational::new(num * BigInt::from(sign), den.clone());
                        if q.eval(&cand).is_zero() && !roots.contains(&cand) {
                            roots.push(cand);
                        }
                    }
                }
            }
        }
    }
    roots.sort();
    roots.dedup();
    (roots, complete && deg > 0)
}

/// Exact square root of a non-negative rational, if it is a perfect square.
fn exact_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let sn = r.numer().sqrt();
    let sd = r.denom().sqrt();
    if &(&sn * &sn) == r.numer() && &(&sd * &sd) == r.denom() {
        Some(Rational::new(sn, sd))
    } else {
        None
    }
}

/// All positive divisors of |n| via trial division; the boolean is false if
/// an unfactored cofactor remained (it is still offered as a divisor).
fn divisors(n: &BigInt) -> (Vec<BigInt>, bool) {
    let mut n = n.clone();
    let one = BigInt::one();
    if n.is_zero() {
        return (vec![one], true);
    }
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut complete = true;
    let mut d = BigInt::from(2);
    let limit = BigInt::from(100_000u64);
    while &d * &d <= n && d <= limit {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if n > one {
        if &d * &d > n {
            primes.push((n.clone(), 1)); // remaining cofactor is prime
        } else {
            primes.push((n.clone(), 1));
            complete = false;
        }
    }
    let mut divs = vec![one];
    for (p, e) in primes {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for dv in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(dv * &pk);
                pk *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    (divs, complete)
}
