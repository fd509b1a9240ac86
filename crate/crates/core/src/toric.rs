//! Exact δ_m upper bounds on the toric surfaces via monomial basis-type
//! divisors: the evaluated boundary divisor's multiplicity is an exact
//! rational in m, and the bound is its reciprocal.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// The five surfaces with monomial section bases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ToricSurface {
    P2,
    P1xP1,
    DP6,
    DP7,
    F1,
}

impl ToricSurface {
    pub fn parse(name: &str) -> Result<ToricSurface> {
        match name.to_ascii_lowercase().as_str() {
            "p2" => Ok(ToricSurface::P2),
            "p1xp1" => Ok(ToricSurface::P1xP1),
            "dp6" => Ok(ToricSurface::DP6),
            "dp7" => Ok(ToricSurface::DP7),
            "f1" => Ok(ToricSurface::F1),
            other => Err(Error::UnknownSurface(other.into())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            ToricSurface::P2 => "p2",
            ToricSurface::P1xP1 => "p1xp1",
            ToricSurface::DP6 => "dp6",
            ToricSurface::DP7 => "dp7",
            ToricSurface::F1 => "f1",
        }
    }

    /// Anticanonical degree (−K)².
    pub fn degree(&self) -> i64 {
        match self {
            ToricSurface::P2 => 9,
            ToricSurface::P1xP1 | ToricSurface::F1 => 8,
            ToricSurface::DP7 => 7,
            ToricSurface::DP6 => 6,
        }
    }

    /// Section-space dimension ℓ_m = d·m(m+1)/2 + 1.
    pub fn ell(&self, m: i64) -> BigInt {
        let d = BigInt::from(self.degree());
        d * BigInt::from(m) * BigInt::from(m + 1) / 2 + 1
    }

    /// Boundary divisors evaluated for this surface.
    pub fn boundaries(&self) -> &'static [&'static str] {
        match self {
            ToricSurface::P2 => &["Lx", "Ly", "Lz"],
            ToricSurface::P1xP1 => &["x0", "u0", "y0", "v0"],
            ToricSurface::DP6 => &["Lx", "Ly", "Lz", "E", "F", "G"],
            ToricSurface::DP7 => &["Lx"],
            ToricSurface::F1 => &["E"],
        }
    }
}

/// Exponent data of one basis element: a plane-degree triple (a, b, c) with
/// a + b + c = 3m, or a bidegree pair (a, b) within [0, 2m]².
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisElement {
    Triple(i64, i64, i64),
    BiDegree(i64, i64),
}

/// Enumerate the monomial section basis at level m; its size is ℓ_m.
pub fn monomial_basis(surface: ToricSurface, m: i64) -> Vec<BasisElement> {
    assert!(m >= 1);
    match surface {
        ToricSurface::P1xP1 => {
            let mut v = Vec::new();
            for a in 0..=(2 * m) {
                for b in 0..=(2 * m) {
                    v.push(BasisElement::BiDegree(a, b));
                }
            }
            v
        }
        _ => {
            let (cap_b, cap_c) = match surface {
                ToricSurface::P2 => (3 * m, 3 * m),
                ToricSurface::F1 => (3 * m, 2 * m),
                ToricSurface::DP7 => (2 * m, 2 * m),
                ToricSurface::DP6 => (2 * m, 2 * m),
                ToricSurface::P1xP1 => unreachable!(),
            };
            let cap_a = if surface == ToricSurface::DP6 {
                2 * m
            } else {
                3 * m
            };
            let mut v = Vec::new();
            for a in 0..=cap_a {
                for b in 0..=cap_b.min(3 * m - a) {
                    let c = 3 * m - a - b;
                    if c <= cap_c {
                        v.push(BasisElement::Triple(a, b, c));
                    }
                }
            }
            v
        }
    }
}

/// Vanishing order of one pulled-back, exception-corrected basis divisor
/// along the named boundary curve.
fn vanishing_order(surface: ToricSurface, m: i64, boundary: &str, e: BasisElement) -> Result<i64> {
    match (surface, e) {
        (ToricSurface::P2, BasisElement::Triple(a, b, c)) => match boundary {
            "Lx" => Ok(a),
            "Ly" => Ok(b),
            "Lz" => Ok(c),
            other => Err(Error::UnknownBoundary(other.into())),
        },
        (ToricSurface::F1, BasisElement::Triple(_, _, c)) => match boundary {
            // The blown-up point lies on {x=0} and {y=0}: mult = a + b = 3m − c.
            "E" => Ok(2 * m - c),
            other => Err(Error::UnknownBoundary(other.into())),
        },
        (ToricSurface::DP7, BasisElement::Triple(a, _, _)) => match boundary {
            // Proper transform of {x=0}.
            "Lx" => Ok(a),
            other => Err(Error::UnknownBoundary(other.into())),
        },
        (ToricSurface::DP6, BasisElement::Triple(a, b, c)) => match boundary {
            "Lx" => Ok(a),
            "Ly" => Ok(b),
            "Lz" => Ok(c),
            "E" => Ok(a + b - m),
            "F" => Ok(a + c - m),
            "G" => Ok(b + c - m),
            other => Err(Error::UnknownBoundary(other.into())),
        },
        (ToricSurface::P1xP1, BasisElement::BiDegree(a, b)) => match boundary {
            "x0" => Ok(a),
            "u0" => Ok(2 * m - a),
            "y0" => Ok(b),
            "v0" => Ok(2 * m - b),
            other => Err(Error::UnknownBoundary(other.into())),
        },
        _ => Err(Error::InvalidInput("basis element shape mismatch".into())),
    }
}

/// Multiplicity of the m-basis-type divisor along the boundary:
/// (Σ vanishing orders) / (m·ℓ_m), exact.
pub fn divisor_coefficient(surface: ToricSurface, m: i64, boundary: &str) -> Result<Rational> {
    assert!(m >= 1);
    let mut total = BigInt::zero();
    for e in monomial_basis(surface, m) {
        total += vanishing_order(surface, m, boundary, e)?;
    }
    let denom = BigInt::from(m) * surface.ell(m);
    Ok(Rational::new(total, denom))
}

/// δ_m upper bound: reciprocal of the largest boundary coefficient, with the
/// witness boundary.
pub fn delta_m_upper(surface: ToricSurface, m: i64) -> Result<(Rational, &'static str)> {
    let mut best: Option<(Rational, &'static str)> = None;
    for b in surface.boundaries() {
        let c = divisor_coefficient(surface, m, b)?;
        if best.as_ref().map_or(true, |(bc, _)| c > *bc) {
            best = Some((c, b));
        }
    }
    let (coeff, witness) = best.expect("surface has boundaries");
    if !coeff.is_positive() {
        return Err(Error::InvalidInput(
            "boundary coefficient must be positive".into(),
        ));
    }
    Ok((coeff.recip(), witness))
}

/// Limit of δ_m as m → ∞: fit p(m)/q(m), degrees ≤ 2, from exact samples,
/// verify on a larger range, and read off the leading ratio.
pub fn delta_upper_limit(surface: ToricSurface) -> Result<Rational> {
    let samples: Vec<(i64, Rational)> = (1..=9)
        .map(|m| delta_m_upper(surface, m).map(|(v, _)| (m, v)))
        .collect::<Result<_>>()?;
    let (p, q) = fit_rational_function(&samples)
        .ok_or_else(|| Error::InconsistentFit("no degree-(2,2) rational function fits".into()))?;
    for m in 10..=50 {
        let (v, _) = delta_m_upper(surface, m)?;
        let qm = eval3(&q, m);
        if qm.is_zero() || eval3(&p, m) / qm != v {
            return Err(Error::InconsistentFit(format!("fit fails at m = {m}")));
        }
    }
    for d in (0..3).rev() {
        if !p[d].is_zero() || !q[d].is_zero() {
            if q[d].is_zero() {
                return Err(Error::InconsistentFit("bound diverges".into()));
            }
            return Ok(&p[d] / &q[d]);
        }
    }
    Err(Error::InconsistentFit("zero fit".into()))
}

fn eval3(c: &[Rational; 3], m: i64) -> Rational {
    let m = rat(m);
    (&c[2] * &m + &c[1]) * &m + &c[0]
}

/// Solve Σ pᵢmⁱ − v·Σ qⱼmʲ = 0 over the samples; returns (p, q) or None.
fn fit_rational_function(samples: &[(i64, Rational)]) -> Option<([Rational; 3], [Rational; 3])> {
    // Unknowns: p0..p2, q0..q2. Build the nullspace of the sample matrix.
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for (m, v) in samples {
        let m = rat(*m);
        let mut row = vec![
            Rational::one(),
            m.clone(),
            &m * &m,
            -v.clone(),
            -(v * &m),
            -(v * &m * &m),
        ];
        rows.push(std::mem::take(&mut row));
    }
    let ncols = 6;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let p = rows[r][col].clone();
        for i in 0..rows.len() {
            if i == r {
                continue;
            }
            let factor = &rows[i][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for j in col..ncols {
                let delta = &rows[r][j] * &factor;
                rows[i][j] = &rows[i][j] - &delta;
            }
        }
        pivots.push((r, col));
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    // Try each free column as the seed of a kernel vector.
    for free in (0..ncols).rev() {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut x = vec![Rational::zero(); ncols];
        x[free] = Rational::one();
        for &(pr, pc) in pivots.iter().rev() {
            let mut acc = Rational::zero();
            for j in (pc + 1)..ncols {
                acc += &rows[pr][j] * &x[j];
            }
            x[pc] = -acc / &rows[pr][pc];
        }
        let p = [x[0].clone(), x[1].clone(), x[2].clone()];
        let q = [x[3].clone(), x[4].clone(), x[5].clone()];
        if q.iter().any(|c| !c.is_zero()) {
            return Some((p, q));
        }
    }
    None
}
