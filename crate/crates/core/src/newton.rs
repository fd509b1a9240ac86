//! Newton polygons and certified lower bounds for log canonical thresholds
//! at the origin.
//!
//! The driver walks the lower-left boundary of the Newton polygon where it
//! meets the diagonal s = t. A vertex or axis-parallel crossing resolves
//! immediately; an edge crossing yields a weight, a weighted-homogeneous
//! leading part and its factor profile. Small factor multiplicities resolve
//! through the min-formula; a dominant linear factor is sheared away and the
//! walk repeats on a strictly steeper edge.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    is_weighted_homogeneous, rat, rational_roots, shear, squarefree_decomposition,
    weighted_leading, BiPoly, Monomial2, Rational, UniPoly, Weight,
};

/// Lower-left boundary of conv(support) + positive quadrant shifts.
/// Vertices are strictly increasing in s and strictly decreasing in t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NewtonPolygon {
    vertices: Vec<Monomial2>,
}

impl NewtonPolygon {
    pub fn vertices(&self) -> &[Monomial2] {
        &self.vertices
    }

    /// Supporting data of each bounded edge: primitive inward normal and its
    /// value on the edge.
    pub fn edges(&self) -> impl Iterator<Item = (Monomial2, Monomial2, Weight, i64)> + '_ {
        self.vertices.windows(2).map(|w| {
            let (a, b) = (w[0], w[1]);
            let ds = b.s as i64 - a.s as i64;
            let dt = a.t as i64 - b.t as i64;
            let weight = Weight::new(dt, ds);
            let value = weight.of(a);
            (a, b, weight, value)
        })
    }

    /// Membership in the polygon region (hull plus quadrant shifts).
    pub fn contains(&self, p: Monomial2) -> bool {
        let first = self.vertices[0];
        let last = *self.vertices.last().unwrap();
        if p.s < first.s || p.t < last.t {
            return false;
        }
        self.edges().all(|(_, _, w, v)| w.of(p) >= v)
    }
}

/// Construct the Newton polygon of a nonzero polynomial.
pub fn newton_polygon(f: &BiPoly) -> Result<NewtonPolygon> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    // Pareto-minimal staircase: per s keep the least t, then require t to
    // strictly drop as s grows.
    let mut pts: Vec<Monomial2> = f.support().collect();
    pts.sort_by_key(|m| (m.s, m.t));
    let mut stair: Vec<Monomial2> = Vec::new();
    for p in pts {
        if let Some(prev) = stair.last() {
            if prev.s == p.s || p.t >= prev.t {
                continue;
            }
        }
        stair.push(p);
    }
    // Lower convex chain over the staircase; collinear interior points drop.
    // Keep the middle point only on a strict left turn (slopes increasing).
    let mut hull: Vec<Monomial2> = Vec::new();
    for p in stair {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.s as i64 - a.s as i64) * (p.t as i64 - a.t as i64)
                - (b.t as i64 - a.t as i64) * (p.s as i64 - a.s as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    Ok(NewtonPolygon { vertices: hull })
}

/// Where the diagonal s = t meets the polygon boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiagonalCrossing {
    /// A hull vertex sits on the diagonal.
    Vertex(Monomial2),
    /// A bounded edge crosses the diagonal strictly inside; the weight is the
    /// edge's primitive inward normal, so the edge slope is −wx/wy.
    Edge {
        lo: Monomial2,
        hi: Monomial2,
        weight: Weight,
    },
    /// The diagonal meets the vertical ray above the first vertex (s_min ≥
    /// top t); the crossing point is (s_min, s_min).
    VerticalRay { vertex: Monomial2 },
    /// The diagonal meets the horizontal ray right of the last vertex.
    HorizontalRay { vertex: Monomial2 },
}

pub fn diagonal_crossing(np: &NewtonPolygon) -> Result<DiagonalCrossing> {
    let vs = np.vertices();
    if vs.is_empty() {
        return Err(Error::InvalidInput("empty Newton polygon".into()));
    }
    if let Some(v) = vs.iter().find(|v| v.s == v.t) {
        return Ok(DiagonalCrossing::Vertex(*v));
    }
    let first = vs[0];
    let last = *vs.last().unwrap();
    if first.s > first.t {
        return Ok(DiagonalCrossing::VerticalRay { vertex: first });
    }
    if last.t > last.s {
        return Ok(DiagonalCrossing::HorizontalRay { vertex: last });
    }
    // first is above the diagonal, last below: a unique sign change exists.
    for w in vs.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a.t > a.s && b.s > b.t {
            let ds = b.s as i64 - a.s as i64;
            let dt = a.t as i64 - b.t as i64;
            return Ok(DiagonalCrossing::Edge {
                lo: a,
                hi: b,
                weight: Weight::new(dt, ds),
            });
        }
    }
    Err(Error::InvalidInput(
        "no diagonal crossing found (degenerate polygon)".into(),
    ))
}

/// One squarefree aggregate of weighted-homogeneous factors: `alpha` is the
/// x-degree of the aggregate and `mult` its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorAggregate {
    pub alpha: u32,
    pub mult: u32,
    pub dehomogenized: UniPoly,
}

/// Decomposition of a weighted-homogeneous polynomial as
/// ε x^a y^b ∏ (factors)^{cᵢ} together with the shear data of the
/// maximal-multiplicity factor when it is linear in x with a rational root.
#[derive(Debug, Clone)]
pub struct FactorProfile {
    pub a: u32,
    pub b: u32,
    pub factors: Vec<FactorAggregate>,
    /// Root A₁ of the dehomogenized maximal factor and the exponent β; the
    /// cancelling substitution is x ↦ x + A₁·y^β.
    pub shear_root: Option<(Rational, u32)>,
    /// True when the rational-root search was exhaustive.
    pub root_search_complete: bool,
}

impl FactorProfile {
    pub fn max_multiplicity(&self) -> u32 {
        self.factors.iter().map(|f| f.mult).max().unwrap_or(0)
    }

    pub fn multiplicities(&self) -> Vec<u32> {
        self.factors.iter().map(|f| f.mult).collect()
    }
}

/// Factor a weighted-homogeneous polynomial through its dehomogenization
/// q(u) with u = x^{wy}/y^{wx}.
pub fn factor_profile(fw: &BiPoly, w: Weight) -> Result<FactorProfile> {
    if fw.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !is_weighted_homogeneous(fw, w) {
        return Err(Error::NotWeightedHomogeneous);
    }
    let content = fw.monomial_content();
    let core = fw.divide_monomial(content);
    if core.num_terms() == 1 {
        return Ok(FactorProfile {
            a: content.s,
            b: content.t,
            factors: Vec::new(),
            shear_root: None,
            root_search_complete: true,
        });
    }
    // Terms of the stripped part sit at s = j·wy, t = t0 − j·wx.
    let wdeg = w.of(core.support().next().unwrap());
    debug_assert!(wdeg % w.wy == 0 && wdeg % w.wx == 0);
    let jmax = (wdeg / (w.wx * w.wy)) as usize;
    let mut coeffs = vec![Rational::zero(); jmax + 1];
    for (m, c) in core.terms() {
        debug_assert_eq!(m.s as i64 % w.wy, 0);
        let j = (m.s as i64 / w.wy) as usize;
        coeffs[j] = c.clone();
    }
    let q = UniPoly::from_coeffs(coeffs);
    let (_, sq) = squarefree_decomposition(&q)?;
    let factors: Vec<FactorAggregate> = sq
        .iter()
        .map(|(p, mult)| FactorAggregate {
            alpha: p.degree().unwrap() as u32 * w.wy as u32,
            mult: *mult,
            dehomogenized: p.clone(),
        })
        .collect();
    let cmax = factors.iter().map(|f| f.mult).max().unwrap_or(0);
    let mut shear_root = None;
    let mut complete = true;
    if w.wy == 1 && cmax > 0 {
        let max_factor = factors.iter().find(|f| f.mult == cmax).unwrap();
        let (roots, full) = rational_roots(&max_factor.dehomogenized);
        complete = full;
        shear_root = roots.into_iter().next().map(|r| (r, w.wx as u32));
    }
    Ok(FactorProfile {
        a: content.s,
        b: content.t,
        factors,
        shear_root,
        root_search_complete: complete,
    })
}

/// A certified lower bound for the log canonical threshold at the origin.
#[derive(Debug, Clone)]
pub struct CertifiedBound {
    pub bound: Rational,
    /// True when the bound is known to be the exact threshold.
    pub exact: bool,
    /// Present when the iteration could not reach the requested multiplicity
    /// cutoff; the bound is still valid.
    pub stalled: Option<String>,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone)]
pub struct TraceStep {
    pub action: StepAction,
    pub weight: Option<Weight>,
    pub wmult: Option<i64>,
    pub multiplicities: Vec<u32>,
    pub stage_bound: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepAction {
    VertexExit,
    VerticalExit,
    HorizontalExit,
    MinFormulaExit,
    Shear { root: Rational, beta: u32 },
    SwapAxes,
    Stall { reason: String },
}

/// The min-formula threshold of a weighted-homogeneous polynomial:
/// min{1/a, 1/b, 1/c, (wx+wy)/wmult} with absent entries omitted.
pub fn lct_weighted_homog(fw: &BiPoly, w: Weight) -> Result<CertifiedBound> {
    let profile = factor_profile(fw, w)?;
    let (wmult, _) = weighted_leading(fw, w)?;
    if wmult == 0 {
        return Err(Error::InvalidInput(
            "unit at the origin has no threshold".into(),
        ));
    }
    let (bound, exact) = min_formula(&profile, w, wmult);
    Ok(CertifiedBound {
        bound: bound.clone(),
        exact,
        stalled: None,
        trace: vec![TraceStep {
            action: StepAction::MinFormulaExit,
            weight: Some(w),
            wmult: Some(wmult),
            multiplicities: profile.multiplicities(),
            stage_bound: Some(bound),
        }],
    })
}

fn min_formula(profile: &FactorProfile, w: Weight, wmult: i64) -> (Rational, bool) {
    let lambda = Rational::new((w.wx + w.wy).into(), wmult.into());
    let mut bound = lambda.clone();
    if profile.a > 0 {
        bound = bound.min(Rational::new(1.into(), profile.a.into()));
    }
    if profile.b > 0 {
        bound = bound.min(Rational::new(1.into(), profile.b.into()));
    }
    let c = profile.max_multiplicity();
    if c > 0 {
        bound = bound.min(Rational::new(1.into(), c.into()));
    }
    // Log canonical away from the origin at level λ: every component
    // coefficient λ·a, λ·b, λ·cᵢ stays ≤ 1. A bare monomial is simple normal
    // crossings, and a bound of 1 is exact because the threshold of a
    // divisor through the point never exceeds 1.
    let one = Rational::one();
    let check = &lambda * rat(profile.a as i64) <= one
        && &lambda * rat(profile.b as i64) <= one
        && profile
            .factors
            .iter()
            .all(|f| &lambda * rat(f.mult as i64) <= one);
    let monomial = profile.factors.is_empty();
    let exact = check || monomial || bound == one;
    (bound, exact)
}

/// Componentwise exponent sum of the assigned monomials; the product's
/// Newton polygon always contains this point.
pub fn product_anchor(assigned: &[Monomial2]) -> Monomial2 {
    assert!(!assigned.is_empty(), "empty assignment");
    assigned
        .iter()
        .fold(Monomial2::new(0, 0), |acc, m| acc.mul(*m))
}

/// Certified lower bound for the log canonical threshold of f at the origin.
///
/// `threshold` is the multiplicity cutoff: factor multiplicities up to it are
/// resolved by the min-formula, larger ones are sheared away when the
/// dominant factor is linear in x with a rational root.
pub fn lct_lower_bound(f: &BiPoly, threshold: u32) -> Result<CertifiedBound> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !f.coeff(Monomial2::new(0, 0)).is_zero() {
        return Err(Error::InvalidInput(
            "polynomial does not vanish at the origin".into(),
        ));
    }
    let cap = threshold.max(16) + 4;
    let mut work = f.clone();
    let mut trace: Vec<TraceStep> = Vec::new();
    let mut best: Option<(Rational, bool)> = None;

    for _ in 0..cap {
        let np = newton_polygon(&work)?;
        match diagonal_crossing(&np)? {
            DiagonalCrossing::Vertex(v) => {
                // f_w is a single monomial x^a y^a for a vertex-supporting
                // weight; the upper bound (wx+wy)/w(f) collapses to 1/a.
                let bound = Rational::new(1.into(), v.s.into());
                trace.push(TraceStep {
                    action: StepAction::VertexExit,
                    weight: None,
                    wmult: None,
                    multiplicities: vec![],
                    stage_bound: Some(bound.clone()),
                });
                return Ok(CertifiedBound {
                    bound,
                    exact: true,
                    stalled: None,
                    trace,
                });
            }
            DiagonalCrossing::VerticalRay { vertex } => {
                let bound = Rational::new(1.into(), vertex.s.into());
                let exact = np.vertices().len() == 1;
                trace.push(TraceStep {
                    action: StepAction::VerticalExit,
                    weight: None,
                    wmult: None,
                    multiplicities: vec![],
                    stage_bound: Some(bound.clone()),
                });
                return Ok(CertifiedBound {
                    bound,
                    exact,
                    stalled: None,
                    trace,
                });
            }
            DiagonalCrossing::HorizontalRay { vertex } => {
                let bound = Rational::new(1.into(), vertex.t.into());
                let exact = np.vertices().len() == 1;
                trace.push(TraceStep {
                    action: StepAction::HorizontalExit,
                    weight: None,
                    wmult: None,
                    multiplicities: vec![],
                    stage_bound: Some(bound.clone()),
                });
                return Ok(CertifiedBound {
                    bound,
                    exact,
                    stalled: None,
                    trace,
                });
            }
            DiagonalCrossing::Edge { weight, .. } => {
                if weight.wx < weight.wy {
                    // Mirror so the crossing edge has slope ≤ −1.
                    work = work.swap_xy();
                    trace.push(TraceStep {
                        action: StepAction::SwapAxes,
                        weight: Some(weight),
                        wmult: None,
                        multiplicities: vec![],
                        stage_bound: None,
                    });
                    continue;
                }
                let (wmult, fw) = weighted_leading(&work, weight)?;
                let profile = factor_profile(&fw, weight)?;
                let (stage_bound, stage_exact) = min_formula(&profile, weight, wmult);
                let improved = best.as_ref().map_or(true, |(b, _)| stage_bound > *b);
                if improved {
                    best = Some((stage_bound.clone(), stage_exact));
                }
                let c = profile.max_multiplicity();
                if c <= threshold {
                    trace.push(TraceStep {
                        action: StepAction::MinFormulaExit,
                        weight: Some(weight),
                        wmult: Some(wmult),
                        multiplicities: profile.multiplicities(),
                        stage_bound: Some(stage_bound.clone()),
                    });
                    return Ok(CertifiedBound {
                        bound: stage_bound,
                        exact: stage_exact,
                        stalled: None,
                        trace,
                    });
                }
                if weight.wy != 1 {
                    let reason = "stalled: dominant factor not linear in x".to_string();
                    trace.push(TraceStep {
                        action: StepAction::Stall {
                            reason: reason.clone(),
                        },
                        weight: Some(weight),
                        wmult: Some(wmult),
                        multiplicities: profile.multiplicities(),
                        stage_bound: Some(stage_bound.clone()),
                    });
                    return Ok(stalled_result(best, reason, trace));
                }
                let Some((root, beta)) = profile.shear_root.clone() else {
                    let reason = if profile.root_search_complete {
                        "stalled: irrational factor root".to_string()
                    } else {
                        "stalled: factor root search inconclusive".to_string()
                    };
                    trace.push(TraceStep {
                        action: StepAction::Stall {
                            reason: reason.clone(),
                        },
                        weight: Some(weight),
                        wmult: Some(wmult),
                        multiplicities: profile.multiplicities(),
                        stage_bound: Some(stage_bound.clone()),
                    });
                    return Ok(stalled_result(best, reason, trace));
                };
                // x ↦ x + A₁·y^β cancels the dominant factor. For β = 1 the
                // factor turns into x-content whose multiplicity exceeds half
                // the lowest degree on anchored runs, so the next crossing
                // edge is strictly steeper than slope −1.
                work = shear(&work, &-root.clone(), beta);
                trace.push(TraceStep {
                    action: StepAction::Shear { root, beta },
                    weight: Some(weight),
                    wmult: Some(wmult),
                    multiplicities: profile.multiplicities(),
                    stage_bound: Some(stage_bound),
                });
            }
        }
    }
    let reason = "stalled: iteration cap reached".to_string();
    Ok(stalled_result(best, reason, trace))
}

fn stalled_result(
    best: Option<(Rational, bool)>,
    reason: String,
    trace: Vec<TraceStep>,
) -> CertifiedBound {
    let (bound, _) = best.unwrap_or_else(|| (Rational::zero(), false));
    CertifiedBound {
        bound,
        exact: false,
        stalled: Some(reason),
        trace,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_bipoly, ratq};

    fn poly(text: &str) -> BiPoly {
        parse_bipoly(text).unwrap()
    }

    fn mono(s: u32, t: u32) -> Monomial2 {
        Monomial2::new(s, t)
    }

    #[test]
    fn polygon_two_point_hull() {
        let np = newton_polygon(&poly("x^2 + y^3")).unwrap();
        assert_eq!(np.vertices(), &[mono(0, 3), mono(2, 0)]);
    }

    #[test]
    fn polygon_with_interior_vertex() {
        // (1,1) lies below the segment (0,3)–(2,0): 3·1 + 2·1 < 6.
        let np = newton_polygon(&poly("x^2 + x*y + y^3")).unwrap();
        assert_eq!(np.vertices(), &[mono(0, 3), mono(1, 1), mono(2, 0)]);
    }

    #[test]
    fn polygon_single_point() {
        let np = newton_polygon(&poly("x*y")).unwrap();
        assert_eq!(np.vertices(), &[mono(1, 1)]);
    }

    #[test]
    fn polygon_supporting_lines_match_weighted_leading() {
        let f = poly("x^4 + x^2*y + x*y^2 + y^5 + x^3*y^4");
        let np = newton_polygon(&f).unwrap();
        for (_, _, w, v) in np.edges() {
            let (wm, fw) = weighted_leading(&f, w).unwrap();
            assert_eq!(wm, v);
            assert!(fw.support().all(|m| w.of(m) == v));
        }
    }

    #[test]
    fn crossing_vertex() {
        let np = newton_polygon(&poly("x*y")).unwrap();
        assert_eq!(
            diagonal_crossing(&np).unwrap(),
            DiagonalCrossing::Vertex(mono(1, 1))
        );
        let np = newton_polygon(&poly("x^3 + x*y + y^3")).unwrap();
        assert_eq!(
            diagonal_crossing(&np).unwrap(),
            DiagonalCrossing::Vertex(mono(1, 1))
        );
    }

    #[test]
    fn crossing_edge_with_primitive_normal() {
        let np = newton_polygon(&poly("x^2 + y^3")).unwrap();
        assert_eq!(
            diagonal_crossing(&np).unwrap(),
            DiagonalCrossing::Edge {
                lo: mono(0, 3),
                hi: mono(2, 0),
                weight: Weight::new(3, 2)
            }
        );
    }

    #[test]
    fn crossing_rays() {
        let np = newton_polygon(&poly("x^3*y^5")).unwrap();
        assert_eq!(
            diagonal_crossing(&np).unwrap(),
            DiagonalCrossing::HorizontalRay { vertex: mono(3, 5) }
        );
        let np = newton_polygon(&poly("x^5*y^3")).unwrap();
        assert_eq!(
            diagonal_crossing(&np).unwrap(),
            DiagonalCrossing::VerticalRay { vertex: mono(5, 3) }
        );
    }

    #[test]
    fn profile_reads_off_shear_data() {
        // x·(x + y^2)^3 under (2,1): content x, factor (u+1)^3, root −1, β=2.
        let f = poly("x + y^2").pow(3).mul(&poly("x"));
        let p = factor_profile(&f, Weight::new(2, 1)).unwrap();
        assert_eq!((p.a, p.b), (1, 0));
        assert_eq!(p.multiplicities(), vec![3]);
        assert_eq!(p.factors[0].alpha, 1);
        assert_eq!(p.shear_root, Some((rat(-1), 2)));
    }

    #[test]
    fn profile_pure_monomial() {
        let p = factor_profile(&poly("x^2*y^3"), Weight::new(1, 1)).unwrap();
        assert_eq!((p.a, p.b), (2, 3));
        assert!(p.factors.is_empty());
    }

    #[test]
    fn profile_non_linear_factor() {
        // (x^2 + y^3)^2 under (3,2): single aggregate of x-degree 2, mult 2.
        let f = poly("x^2 + y^3").pow(2);
        let p = factor_profile(&f, Weight::new(3, 2)).unwrap();
        assert_eq!((p.a, p.b), (0, 0));
        assert_eq!(p.multiplicities(), vec![2]);
        assert_eq!(p.factors[0].alpha, 2);
        assert!(p.shear_root.is_none());
    }

    #[test]
    fn profile_rejects_inhomogeneous() {
        assert_eq!(
            factor_profile(&poly("x^2 + y^3"), Weight::new(1, 1)).unwrap_err(),
            Error::NotWeightedHomogeneous
        );
    }

    #[test]
    fn min_formula_cusp() {
        let b = lct_weighted_homog(&poly("x^2 + y^3"), Weight::new(3, 2)).unwrap();
        assert_eq!(b.bound, ratq(5, 6));
        assert!(b.exact);
    }

    #[test]
    fn min_formula_monomial_is_exact() {
        let b = lct_weighted_homog(&poly("x^3*y^5"), Weight::new(1, 1)).unwrap();
        assert_eq!(b.bound, ratq(1, 5));
        assert!(b.exact);
    }

    #[test]
    fn min_formula_high_multiplicity() {
        let f = poly("x + y").pow(4).mul(&poly("x"));
        let b = lct_weighted_homog(&f, Weight::new(1, 1)).unwrap();
        assert_eq!(b.bound, ratq(1, 4));
    }

    #[test]
    fn anchor_sums_componentwise() {
        let all3: Vec<Monomial2> = (0u32..=3)
            .flat_map(|d| (0..=d).map(move |t| mono(d - t, t)))
            .collect();
        assert_eq!(product_anchor(&all3), mono(10, 10));
        assert_eq!(product_anchor(&[mono(1, 0), mono(0, 1)]), mono(1, 1));
        let degree_two: Vec<Monomial2> = vec![
            mono(0, 0),
            mono(1, 0),
            mono(0, 1),
            mono(2, 0),
            mono(1, 1),
            mono(0, 2),
        ];
        assert_eq!(product_anchor(&degree_two), mono(4, 4));
    }

    #[test]
    fn loop_on_monomials() {
        let b = lct_lower_bound(&poly("x*y"), 10).unwrap();
        assert_eq!(b.bound, rat(1));
        assert!(b.exact);
        let b = lct_lower_bound(&poly("x^7"), 10).unwrap();
        assert_eq!(b.bound, ratq(1, 7));
        assert!(b.exact);
        let b = lct_lower_bound(&poly("x^3*y^5"), 10).unwrap();
        assert_eq!(b.bound, ratq(1, 5));
        assert!(b.exact);
    }

    #[test]
    fn loop_shears_dominant_factor() {
        // (x + y^2)^10 + y^30 with cutoff 5: one shear, then the stage
        // x^10 + y^30 under (3,1) gives min{1, 4/30} = 2/15 ≥ 1/10.
        let f = poly("x + y^2").pow(10).add(&poly("y^30"));
        let b = lct_lower_bound(&f, 5).unwrap();
        let oracle = lct_weighted_homog(&poly("x^10 + y^30"), Weight::new(3, 1)).unwrap();
        assert_eq!(b.bound, oracle.bound);
        assert_eq!(b.bound, ratq(2, 15));
        assert!(b.bound >= ratq(1, 10));
        assert!(b
            .trace
            .iter()
            .any(|s| matches!(s.action, StepAction::Shear { beta: 2, .. })));
    }

    #[test]
    fn loop_anchored_cubic_product() {
        // Product of the ten monomials of degree ≤ 3 anchors at (10,10).
        let all3: Vec<BiPoly> = (0u32..=3)
            .flat_map(|d| (0..=d).map(move |t| BiPoly::monomial(mono(d - t, t), rat(1))))
            .collect();
        let f = all3.iter().skip(1).fold(BiPoly::one(), |acc, p| acc.mul(p));
        let b = lct_lower_bound(&f, 10).unwrap();
        assert!(b.bound >= ratq(1, 10));
        assert!(b.exact);
    }

    #[test]
    fn loop_rejects_units() {
        assert!(lct_lower_bound(&poly("1 + x"), 5).is_err());
        assert!(lct_lower_bound(&BiPoly::zero(), 5).is_err());
    }

    #[test]
    fn stall_on_irrational_root() {
        // (x^2 − 2y^2)^3 · y: dominant factor root √2 with cutoff 2.
        let f = poly("x^2 - 2*y^2").pow(3).mul(&poly("y"));
        let b = lct_lower_bound(&f, 2).unwrap();
        assert!(b.stalled.is_some());
        assert!(!b.exact);
        // The stage bound min{1/1, 1/3, 2/7} is still certified.
        assert_eq!(b.bound, ratq(2, 7).min(ratq(1, 3)));
    }

    #[test]
    fn slope_one_edge_resolved_by_unit_shear() {
        // (x + y)^8 + x^11 + y^11 crosses on a slope −1 edge with c = 8;
        // after x ↦ x − y the stage 11xy^10 + x^8 under (10,7) exits with
        // min{1, 1, 17/80}.
        let f = poly("x + y").pow(8).add(&poly("x^11 + y^11"));
        let b = lct_lower_bound(&f, 4).unwrap();
        assert!(b.stalled.is_none());
        assert!(b
            .trace
            .iter()
            .any(|s| matches!(s.action, StepAction::Shear { beta: 1, .. })));
        assert_eq!(b.bound, ratq(17, 80));
        assert!(b.exact);
    }
}
