//! Regions of the exponent plane parameterized by m, exact lattice sums,
//! polygon first moments, and leading-coefficient extraction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// An affine function slope·m + offset of the region parameter m.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineInM {
    pub slope: Rational,
    pub offset: Rational,
}

impl AffineInM {
    pub fn new(slope: Rational, offset: Rational) -> Self {
        AffineInM { slope, offset }
    }

    pub fn slope_only(slope: Rational) -> Self {
        AffineInM {
            slope,
            offset: Rational::zero(),
        }
    }

    pub fn eval(&self, m: i64) -> Rational {
        &self.slope * rat(m) + &self.offset
    }
}

/// Convex polygon whose vertices are affine functions of m, counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionSpec {
    pub vertices: Vec<(AffineInM, AffineInM)>,
}

impl RegionSpec {
    /// Region from pure slopes given as (numerator, denominator) pairs.
    pub fn from_slopes(slopes: &[((i64, i64), (i64, i64))]) -> Self {
        RegionSpec {
            vertices: slopes
                .iter()
                .map(|((sn, sd), (tn, td))| {
                    (
                        AffineInM::slope_only(Rational::new((*sn).into(), (*sd).into())),
                        AffineInM::slope_only(Rational::new((*tn).into(), (*td).into())),
                    )
                })
                .collect(),
        }
    }

    /// Least positive integer P with the vertices of the instantiation at
    /// every multiple of P integral.
    pub fn period(&self) -> i64 {
        let mut lcm = BigInt::one();
        for (s, t) in &self.vertices {
            for a in [s, t] {
                lcm = lcm.lcm(a.slope.denom());
                lcm = lcm.lcm(a.offset.denom());
            }
        }
        i64::try_from(&lcm).expect("period fits i64")
    }

    /// True when every vertex is a pure slope (offset zero).
    pub fn offset_free(&self) -> bool {
        self.vertices
            .iter()
            .all(|(s, t)| s.offset.is_zero() && t.offset.is_zero())
    }

    /// The polygon spanned by the vertex slopes (the m → ∞ unit shape).
    pub fn slope_polygon(&self) -> Result<Polygon> {
        Polygon::new(
            self.vertices
                .iter()
                .map(|(s, t)| (s.slope.clone(), t.slope.clone()))
                .collect(),
        )
    }
}

/// How an instantiated polygon degenerated, if it did.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolygonKind {
    Empty,
    Point,
    Segment,
    Proper,
}

/// Concrete polygon with rational vertices, counterclockwise, convex.
/// Degenerate instances (point/segment) are permitted and flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polygon {
    pub vertices: Vec<(Rational, Rational)>,
    pub kind: PolygonKind,
}

impl Polygon {
    pub fn new(raw: Vec<(Rational, Rational)>) -> Result<Polygon> {
        // Drop consecutive duplicates (cyclically).
        let mut vs: Vec<(Rational, Rational)> = Vec::new();
        for v in raw {
            if vs.last() != Some(&v) {
                vs.push(v);
            }
        }
        while vs.len() > 1 && vs.first() == vs.last() {
            vs.pop();
        }
        let kind = match vs.len() {
            0 => PolygonKind::Empty,
            1 => PolygonKind::Point,
            2 => PolygonKind::Segment,
            _ => {
                let mut area2 = Rational::zero();
                for i in 0..vs.len() {
                    let (x0, y0) = &vs[i];
                    let (x1, y1) = &vs[(i + 1) % vs.len()];
                    area2 += x0 * y1 - x1 * y0;
                }
                if area2.is_zero() {
                    PolygonKind::Segment
                } else {
                    if area2.is_negative() {
                        return Err(Error::NonConvex("vertices are clockwise".into()));
                    }
                    // All turns must be left or straight.
                    for i in 0..vs.len() {
                        let a = &vs[i];
                        let b = &vs[(i + 1) % vs.len()];
                        let c = &vs[(i + 2) % vs.len()];
                        let cross = (&b.0 - &a.0) * (&c.1 - &b.1) - (&b.1 - &a.1) * (&c.0 - &b.0);
                        if cross.is_negative() {
                            return Err(Error::NonConvex(format!(
                                "reflex turn at vertex {}",
                                (i + 1) % vs.len()
                            )));
                        }
                    }
                    PolygonKind::Proper
                }
            }
        };
        Ok(Polygon { vertices: vs, kind })
    }

    pub fn is_degenerate(&self) -> bool {
        self.kind != PolygonKind::Proper
    }

    /// Exact membership test (boundary included).
    pub fn contains(&self, x: &Rational, y: &Rational) -> bool {
        match self.kind {
            PolygonKind::Empty => false,
            PolygonKind::Point => self.vertices[0] == (x.clone(), y.clone()),
            PolygonKind::Segment | PolygonKind::Proper => {
                let n = self.vertices.len();
                for i in 0..n {
                    let a = &self.vertices[i];
                    let b = &self.vertices[(i + 1) % n];
                    let cross = (&b.0 - &a.0) * (y - &a.1) - (&b.1 - &a.1) * (x - &a.0);
                    if cross.is_negative() {
                        return false;
                    }
                }
                if self.kind == PolygonKind::Segment {
                    // Both orientations must pass for a segment.
                    for i in 0..n {
                        let a = &self.vertices[i];
                        let b = &self.vertices[(i + 1) % n];
                        let cross = (&b.0 - &a.0) * (y - &a.1) - (&b.1 - &a.1) * (x - &a.0);
                        if cross.is_positive() {
                            return false;
                        }
                    }
                    // And the point must lie inside the bounding box.
                    let (mut lo, mut hi) = (None::<&Rational>, None::<&Rational>);
                    let (mut lot, mut hit) = (None::<&Rational>, None::<&Rational>);
                    for (vx, vy) in &self.vertices {
                        lo = Some(lo.map_or(vx, |l| l.min(vx)));
                        hi = Some(hi.map_or(vx, |h| h.max(vx)));
                        lot = Some(lot.map_or(vy, |l| l.min(vy)));
                        hit = Some(hit.map_or(vy, |h| h.max(vy)));
                    }
                    return lo.unwrap() <= x
                        && x <= hi.unwrap()
                        && lot.unwrap() <= y
                        && y <= hit.unwrap();
                }
                true
            }
        }
    }

    /// Closed x-interval cut out at height y, if any.
    pub fn row_interval(&self, y: &Rational) -> Option<(Rational, Rational)> {
        if self.vertices.is_empty() {
            return None;
        }
        let mut lo: Option<Rational> = None;
        let mut hi: Option<Rational> = None;
        let mut push = |x: Rational| {
            lo = Some(match lo.take() {
                None => x.clone(),
                Some(l) => l.min(x.clone()),
            });
            hi = Some(match hi.take() {
                None => x,
                Some(h) => h.max(x),
            });
        };
        let n = self.vertices.len();
        for i in 0..n {
            let (ax, ay) = &self.vertices[i];
            let (bx, by) = &self.vertices[(i + 1) % n];
            if ay == y {
                push(ax.clone());
            }
            let (lo_y, hi_y) = if ay <= by { (ay, by) } else { (by, ay) };
            if lo_y < y && y < hi_y {
                // Edge strictly crosses the row.
                let t = (y - ay) / (by - ay);
                push(ax + (bx - ax) * t);
            }
        }
        match (lo, hi) {
            (Some(l), Some(h)) => Some((l, h)),
            _ => None,
        }
    }

    fn y_range(&self) -> Option<(Rational, Rational)> {
        let ys: Vec<&Rational> = self.vertices.iter().map(|(_, y)| y).collect();
        let lo = ys.iter().min()?;
        let hi = ys.iter().max()?;
        Some(((*lo).clone(), (*hi).clone()))
    }
}

/// Evaluate the region's vertices at m. Degenerate results are flagged on
/// the returned polygon; non-convex instantiations are an error.
pub fn instantiate(region: &RegionSpec, m: i64) -> Result<Polygon> {
    assert!(m >= 1, "m must be positive");
    Polygon::new(
        region
            .vertices
            .iter()
            .map(|(s, t)| (s.eval(m), t.eval(m)))
            .collect(),
    )
}

/// Σ of s over the lattice points of the instantiated region.
pub fn lattice_sum_s(region: &RegionSpec, m: i64) -> Result<BigInt> {
    union_lattice_sum_s(std::slice::from_ref(region), m)
}

/// Σ of s over the lattice points of a union of regions, each point counted
/// once (pieces may share boundary).
pub fn union_lattice_sum_s(regions: &[RegionSpec], m: i64) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for_each_union_row(regions, m, |_, lo, hi| {
        // Σ s for s in [lo, hi].
        total += (hi * (hi + 1) - (lo - 1) * lo) / 2;
    })?;
    Ok(total)
}

/// Number of lattice points of a union of regions, each counted once.
pub fn union_lattice_count(regions: &[RegionSpec], m: i64) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for_each_union_row(regions, m, |_, lo, hi| {
        total += hi - lo + 1;
    })?;
    Ok(total)
}

/// Visit each row y of the union with its merged integer s-ranges.
fn for_each_union_row(
    regions: &[RegionSpec],
    m: i64,
    mut visit: impl FnMut(&BigInt, &BigInt, &BigInt),
) -> Result<()> {
    let polys: Vec<Polygon> = regions
        .iter()
        .map(|r| instantiate(r, m))
        .collect::<Result<_>>()?;
    let mut y_lo: Option<BigInt> = None;
    let mut y_hi: Option<BigInt> = None;
    for p in &polys {
        if let Some((lo, hi)) = p.y_range() {
            let lo = lo.ceil().to_integer();
            let hi = hi.floor().to_integer();
            y_lo = Some(y_lo.map_or(lo.clone(), |v| v.min(lo)));
            y_hi = Some(y_hi.map_or(hi.clone(), |v| v.max(hi)));
        }
    }
    let (Some(y_lo), Some(y_hi)) = (y_lo, y_hi) else {
        return Ok(());
    };
    let mut y = y_lo;
    while y <= y_hi {
        let yq = Rational::from_integer(y.clone());
        let mut ranges: Vec<(BigInt, BigInt)> = Vec::new();
        for p in &polys {
            if let Some((lo, hi)) = p.row_interval(&yq) {
                let lo = lo.ceil().to_integer();
                let hi = hi.floor().to_integer();
                if lo <= hi {
                    ranges.push((lo, hi));
                }
            }
        }
        ranges.sort();
        let mut merged: Vec<(BigInt, BigInt)> = Vec::new();
        for (lo, hi) in ranges {
            match merged.last_mut() {
                Some((_, mhi)) if lo <= &*mhi + 1 => {
                    if hi > *mhi {
                        *mhi = hi;
                    }
                }
                _ => merged.push((lo, hi)),
            }
        }
        for (lo, hi) in merged {
            visit(&y, &lo, &hi);
        }
        y += 1;
    }
    Ok(())
}

/// Exact ∬ s dA over a convex polygon via the shoelace moment formula.
pub fn first_moment_s(polygon: &Polygon) -> Result<Rational> {
    if polygon.is_degenerate() {
        return Ok(Rational::zero());
    }
    let vs = &polygon.vertices;
    let n = vs.len();
    let mut acc = Rational::zero();
    for i in 0..n {
        let (x0, y0) = &vs[i];
        let (x1, y1) = &vs[(i + 1) % n];
        acc += (x0 * y1 - x1 * y0) * (x0 + x1);
    }
    Ok(acc / rat(6))
}

/// m³-coefficient of the lattice sum Σs over the region: the first moment of
/// the slope polygon, cross-validated against an exact cubic fit of the
/// lattice sums at four consecutive valid m.
pub fn leading_coefficient(region: &RegionSpec) -> Result<Rational> {
    if !region.offset_free() {
        return Err(Error::InvalidInput(
            "leading coefficient requires offset-free vertices".into(),
        ));
    }
    let moment = first_moment_s(&region.slope_polygon()?)?;
    let p = region.period();
    let samples: Vec<(i64, Rational)> = (1..=4)
        .map(|k| {
            let m = k * p;
            lattice_sum_s(region, m).map(|s| (m, Rational::from_integer(s)))
        })
        .collect::<Result<_>>()?;
    let cubic = cubic_fit(&samples)?;
    if cubic.c3 != moment {
        return Err(Error::InconsistentFit(format!(
            "lattice cubic has leading coefficient {} but the slope polygon moment is {}",
            cubic.c3, moment
        )));
    }
    Ok(moment)
}

/// c₃ m³ + c₂ m² + c₁ m + c₀.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubicPoly {
    pub c3: Rational,
    pub c2: Rational,
    pub c1: Rational,
    pub c0: Rational,
}

impl CubicPoly {
    pub fn eval(&self, m: i64) -> Rational {
        let m = rat(m);
        ((&self.c3 * &m + &self.c2) * &m + &self.c1) * &m + &self.c0
    }
}

/// Exact interpolating cubic through the samples; an error reports the
/// residuals when more than four samples are inconsistent.
pub fn cubic_fit(samples: &[(i64, Rational)]) -> Result<CubicPoly> {
    if samples.len() < 4 {
        return Err(Error::InvalidInput(
            "cubic fit needs at least 4 samples".into(),
        ));
    }
    let mut seen = std::collections::BTreeSet::new();
    for (m, _) in samples {
        if !seen.insert(*m) {
            return Err(Error::InvalidInput(format!("duplicate sample m = {m}")));
        }
    }
    // Solve the 4×4 Vandermonde system on the first four samples.
    let mut rows: Vec<Vec<Rational>> = samples[..4]
        .iter()
        .map(|(m, v)| {
            let m = rat(*m);
            vec![&m * &m * &m, &m * &m, m.clone(), Rational::one(), v.clone()]
        })
        .collect();
    for col in 0..4 {
        let pivot = (col..4)
            .find(|&r| !rows[r][col].is_zero())
            .expect("distinct m values give a nonsingular system");
        rows.swap(col, pivot);
        let p = rows[col][col].clone();
        for i in 0..4 {
            if i == col {
                continue;
            }
            let factor = &rows[i][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for j in col..5 {
                let delta = &rows[col][j] * &factor;
                rows[i][j] = &rows[i][j] - &delta;
            }
        }
    }
    let coef: Vec<Rational> = (0..4).map(|i| &rows[i][4] / &rows[i][i]).collect();
    let cubic = CubicPoly {
        c3: coef[0].clone(),
        c2: coef[1].clone(),
        c1: coef[2].clone(),
        c0: coef[3].clone(),
    };
    let residuals: Vec<String> = samples[4..]
        .iter()
        .filter(|(m, v)| &cubic.eval(*m) != v)
        .map(|(m, v)| format!("m={} residual={}", m, v - &cubic.eval(*m)))
        .collect();
    if !residuals.is_empty() {
        return Err(Error::InconsistentFit(residuals.join(", ")));
    }
    Ok(cubic)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratq;

    fn reg(slopes: &[((i64, i64), (i64, i64))]) -> RegionSpec {
        RegionSpec::from_slopes(slopes)
    }

    fn unit(v: &[(i64, i64)]) -> RegionSpec {
        RegionSpec::from_slopes(&v.iter().map(|&(s, t)| ((s, 1), (t, 1))).collect::<Vec<_>>())
    }

    /// Brute-force oracle: scan the bounding box with exact membership.
    fn brute_sum_s(regions: &[RegionSpec], m: i64) -> BigInt {
        let polys: Vec<Polygon> = regions.iter().map(|r| instantiate(r, m).unwrap()).collect();
        let bound = 16 * m.max(1);
        let mut total = BigInt::zero();
        for s in 0..=bound {
            for t in 0..=bound {
                let (x, y) = (rat(s), rat(t));
                if polys.iter().any(|p| p.contains(&x, &y)) {
                    total += s;
                }
            }
        }
        total
    }

    #[test]
    fn instantiate_triangle() {
        let r = unit(&[(0, 0), (1, 0), (0, 1)]);
        let p = instantiate(&r, 3).unwrap();
        assert_eq!(p.kind, PolygonKind::Proper);
        assert_eq!(p.vertices[1], (rat(3), rat(0)));
    }

    #[test]
    fn instantiate_quadrilateral_at_two() {
        // (0,0),(2m,0),(m,2m),(0,m) at m = 2.
        let r = unit(&[(0, 0), (2, 0), (1, 2), (0, 1)]);
        let p = instantiate(&r, 2).unwrap();
        assert_eq!(
            p.vertices,
            vec![
                (rat(0), rat(0)),
                (rat(4), rat(0)),
                (rat(2), rat(4)),
                (rat(0), rat(2))
            ]
        );
    }

    #[test]
    fn instantiate_flags_degenerate() {
        let r = unit(&[(0, 0), (1, 0)]);
        let p = instantiate(&r, 5).unwrap();
        assert_eq!(p.kind, PolygonKind::Segment);
        assert!(p.is_degenerate());
        assert!(instantiate(&unit(&[(0, 0), (0, 1), (1, 0)]), 2).is_err());
    }

    #[test]
    fn lattice_sums_small() {
        let tri = unit(&[(0, 0), (1, 0), (0, 1)]);
        assert_eq!(lattice_sum_s(&tri, 1).unwrap(), BigInt::from(1));
        let square = unit(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        assert_eq!(lattice_sum_s(&square, 2).unwrap(), BigInt::from(9));
        let half = unit(&[(0, 0), (1, 0), (1, 1)]);
        assert_eq!(lattice_sum_s(&half, 2).unwrap(), BigInt::from(8));
    }

    #[test]
    fn lattice_sum_matches_brute_force() {
        let regions = [
            unit(&[(0, 0), (2, 0), (1, 2), (0, 1)]),
            reg(&[
                ((5, 4), (3, 4)),
                ((2, 1), (0, 1)),
                ((5, 2), (0, 1)),
                ((5, 4), (5, 4)),
            ]),
        ];
        for m in [1, 2, 3, 4, 7] {
            for r in &regions {
                assert_eq!(
                    lattice_sum_s(r, m).unwrap(),
                    brute_sum_s(std::slice::from_ref(r), m),
                    "m = {m}"
                );
            }
            // Union with a shared edge counts shared points once.
            assert_eq!(
                union_lattice_sum_s(&regions, m).unwrap(),
                brute_sum_s(&regions, m)
            );
        }
    }

    #[test]
    fn degenerate_lattice_sum() {
        let seg = unit(&[(0, 0), (1, 0)]);
        // Points (0,0),(1,0),...,(m,0): Σs = m(m+1)/2.
        assert_eq!(lattice_sum_s(&seg, 4).unwrap(), BigInt::from(10));
    }

    #[test]
    fn moments_of_square_cuts() {
        let tri = |v: &[(i64, i64, i64, i64)]| {
            Polygon::new(
                v.iter()
                    .map(|&(a, b, c, d)| {
                        (
                            Rational::new(a.into(), b.into()),
                            Rational::new(c.into(), d.into()),
                        )
                    })
                    .collect(),
            )
            .unwrap()
        };
        // Bottom and west triangles of the unit square cut by both diagonals.
        let south = tri(&[(0, 1, 0, 1), (1, 1, 0, 1), (1, 2, 1, 2)]);
        assert_eq!(first_moment_s(&south).unwrap(), ratq(3, 24));
        let west = tri(&[(0, 1, 0, 1), (1, 2, 1, 2), (0, 1, 1, 1)]);
        assert_eq!(first_moment_s(&west).unwrap(), ratq(1, 24));
        let unit_tri = tri(&[(0, 1, 0, 1), (1, 1, 0, 1), (0, 1, 1, 1)]);
        assert_eq!(first_moment_s(&unit_tri).unwrap(), ratq(4, 24));
    }

    #[test]
    fn moment_additivity_on_square() {
        // W + S + E + N quarters of the unit square sum to its moment 12/24.
        let q = |v: Vec<(Rational, Rational)>| first_moment_s(&Polygon::new(v).unwrap()).unwrap();
        let h = ratq(1, 2);
        let w = q(vec![
            (rat(0), rat(0)),
            (h.clone(), h.clone()),
            (rat(0), rat(1)),
        ]);
        let s = q(vec![
            (rat(0), rat(0)),
            (rat(1), rat(0)),
            (h.clone(), h.clone()),
        ]);
        let e = q(vec![
            (rat(1), rat(0)),
            (rat(1), rat(1)),
            (h.clone(), h.clone()),
        ]);
        let n = q(vec![
            (rat(0), rat(1)),
            (h.clone(), h.clone()),
            (rat(1), rat(1)),
        ]);
        assert_eq!(w + s + e + n, ratq(12, 24));
    }

    #[test]
    fn leading_coefficients() {
        assert_eq!(
            leading_coefficient(&unit(&[(0, 0), (1, 0), (1, 1)])).unwrap(),
            ratq(8, 24)
        );
        // d5 case 2 quadrilateral.
        assert_eq!(
            leading_coefficient(&unit(&[(0, 0), (2, 0), (1, 2), (0, 1)])).unwrap(),
            ratq(52, 24)
        );
        // Quarter-integral strip region: sampled at multiples of 4.
        let strip = reg(&[
            ((5, 4), (3, 4)),
            ((2, 1), (0, 1)),
            ((5, 2), (0, 1)),
            ((5, 4), (5, 4)),
        ]);
        assert_eq!(strip.period(), 4);
        assert_eq!(leading_coefficient(&strip).unwrap(), ratq(169, 192));
    }

    #[test]
    fn cubic_fit_square_sums() {
        let square = unit(&[(0, 0), (1, 0), (1, 1), (0, 1)]);
        let samples: Vec<(i64, Rational)> = (1..=6)
            .map(|m| {
                (
                    m,
                    Rational::from_integer(lattice_sum_s(&square, m).unwrap()),
                )
            })
            .collect();
        let cubic = cubic_fit(&samples).unwrap();
        assert_eq!(cubic.c3, ratq(1, 2));
        // Σs over [0,m]² = m(m+1)²/2.
        assert_eq!(cubic.eval(10), rat(605));
    }

    #[test]
    fn cubic_fit_constants_and_inconsistency() {
        let flat: Vec<(i64, Rational)> = (1..=5).map(|m| (m, rat(7))).collect();
        let c = cubic_fit(&flat).unwrap();
        assert_eq!((c.c3, c.c2, c.c1, c.c0), (rat(0), rat(0), rat(0), rat(7)));
        // Lattice count of the dilated unit triangle grows quadratically.
        let count: Vec<(i64, Rational)> =
            (1..=4).map(|m| (m, rat((m + 1) * (m + 2) / 2))).collect();
        assert_eq!(cubic_fit(&count).unwrap().c3, rat(0));
        let bad = vec![
            (1, rat(1)),
            (2, rat(8)),
            (3, rat(27)),
            (4, rat(64)),
            (5, rat(999)),
        ];
        assert!(matches!(cubic_fit(&bad), Err(Error::InconsistentFit(_))));
    }
}
