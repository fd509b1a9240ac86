//! Intersection-inequality systems over named variables and their exact
//! projection to the exponent plane by Fourier–Motzkin elimination, with the
//! parameter m carried symbolically through the constants.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{rat, Rational};
use crate::regions::{AffineInM, Polygon, RegionSpec};

/// Affine form Σ coeffs·vars + m_coef·m + constant.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LinExpr {
    pub coeffs: BTreeMap<String, Rational>,
    pub m_coef: Rational,
    pub constant: Rational,
}

impl LinExpr {
    pub fn new() -> Self {
        LinExpr::default()
    }

    pub fn var(mut self, name: &str, c: i64) -> Self {
        let entry = self
            .coeffs
            .entry(name.to_string())
            .or_insert_with(Rational::zero);
        *entry += rat(c);
        if entry.is_zero() {
            self.coeffs.remove(name);
        }
        self
    }

    pub fn var_q(mut self, name: &str, num: i64, den: i64) -> Self {
        let entry = self
            .coeffs
            .entry(name.to_string())
            .or_insert_with(Rational::zero);
        *entry += Rational::new(num.into(), den.into());
        if entry.is_zero() {
            self.coeffs.remove(name);
        }
        self
    }

    pub fn m(mut self, c: i64) -> Self {
        self.m_coef += rat(c);
        self
    }

    pub fn m_q(mut self, num: i64, den: i64) -> Self {
        self.m_coef += Rational::new(num.into(), den.into());
        self
    }

    pub fn constant(mut self, c: i64) -> Self {
        self.constant += rat(c);
        self
    }
}

/// Inequality system (each expression ≥ 0) with designated exponent
/// coordinates; every named variable is implicitly ≥ 0.
#[derive(Debug, Clone)]
pub struct ConstraintSystem {
    pub vars: Vec<String>,
    pub inequalities: Vec<LinExpr>,
    pub s_expr: LinExpr,
    pub t_expr: LinExpr,
}

/// Dense row over [s, t, vars...]; the inequality is coeffs·x + m·m + c ≥ 0.
/// `history` is the bitset of original rows this one combines; by Imbert's
/// acceleration criterion a row combining more than (eliminated + 1)
/// originals is redundant and can be dropped.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct Row {
    coeffs: Vec<Rational>,
    m: Rational,
    c: Rational,
    history: u64,
}

impl Row {
    /// Value of the affine constant at a given m.
    fn constant_at(&self, m: i64) -> Rational {
        &self.m * rat(m) + &self.c
    }

    /// True when the constant part is ≥ 0 for every m ≥ 1.
    fn constant_nonneg_all_m(&self) -> bool {
        !self.m.is_negative() && !(&self.m + &self.c).is_negative()
    }

    /// Scale to a primitive integer vector, preserving direction.
    fn normalize(&mut self) {
        let mut lcm = num_bigint::BigInt::one();
        for c in self.coeffs.iter().chain([&self.m, &self.c]) {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = num_bigint::BigInt::zero();
        let scaled: Vec<num_bigint::BigInt> = self
            .coeffs
            .iter()
            .chain([&self.m, &self.c])
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        for v in &scaled {
            gcd = gcd.gcd(v);
        }
        if gcd.is_zero() {
            return;
        }
        let factor = Rational::new(lcm, gcd);
        for c in &mut self.coeffs {
            *c *= &factor;
        }
        self.m *= &factor;
        self.c *= &factor;
    }
}

fn expr_to_row(expr: &LinExpr, vars: &[String]) -> Result<Row> {
    for name in expr.coeffs.keys() {
        if !vars.contains(name) {
            return Err(Error::InvalidInput(format!("undeclared variable {name}")));
        }
    }
    Ok(Row {
        coeffs: vars
            .iter()
            .map(|v| expr.coeffs.get(v).cloned().unwrap_or_else(Rational::zero))
            .collect(),
        m: expr.m_coef.clone(),
        c: expr.constant.clone(),
        history: 0,
    })
}

/// Eliminate every auxiliary variable, keeping s and t; returns the
/// two-variable inequality rows.
fn eliminate(system: &ConstraintSystem) -> Result<Vec<Row>> {
    eliminate_inner(system, true)
}

fn eliminate_inner(system: &ConstraintSystem, imbert: bool) -> Result<Vec<Row>> {
    let mut vars: Vec<String> = vec!["#s".into(), "#t".into()];
    vars.extend(system.vars.iter().cloned());
    let mut rows: Vec<Row> = Vec::new();
    for ineq in &system.inequalities {
        rows.push(expr_to_row(ineq, &vars)?);
    }
    // s and t are pinned to their defining expressions.
    for (idx, expr) in [(0usize, &system.s_expr), (1usize, &system.t_expr)] {
        let base = expr_to_row(expr, &vars)?;
        let mut le = base.clone();
        le.coeffs[idx] -= Rational::one();
        le = negate(le);
        let mut ge = base;
        ge.coeffs[idx] -= Rational::one();
        rows.push(negate(ge.clone()));
        rows.push(negate(le));
    }
    // Non-negativity of the auxiliary variables.
    for i in 2..vars.len() {
        let mut r = Row {
            coeffs: vec![Rational::zero(); vars.len()],
            m: Rational::zero(),
            c: Rational::zero(),
            history: 0,
        };
        r.coeffs[i] = Rational::one();
        rows.push(r);
    }
    assert!(
        rows.len() <= 64,
        "too many base rows for the history bitset"
    );
    for (i, r) in rows.iter_mut().enumerate() {
        r.history = 1u64 << i;
    }

    let mut remaining = vars.len() - 2;
    let mut eliminated = 0usize;
    while remaining > 0 {
        // Greedy order: eliminate the variable with the fewest combinations.
        let ncols = rows.first().map_or(2, |r| r.coeffs.len());
        let var_index = (2..ncols)
            .min_by_key(|&i| {
                let pos = rows.iter().filter(|r| r.coeffs[i].is_positive()).count();
                let neg = rows.iter().filter(|r| r.coeffs[i].is_negative()).count();
                pos * neg
            })
            .expect("variables remain");
        let mut kept: Vec<Row> = Vec::new();
        let mut pos: Vec<Row> = Vec::new();
        let mut neg: Vec<Row> = Vec::new();
        for mut r in rows {
            let c = r.coeffs[var_index].clone();
            if c.is_zero() {
                r.coeffs.remove(var_index);
                kept.push(r);
            } else if c.is_positive() {
                pos.push(r);
            } else {
                neg.push(r);
            }
        }
        eliminated += 1;
        for p in &pos {
            for n in &neg {
                let history = p.history | n.history;
                if imbert && history.count_ones() as usize > eliminated + 1 {
                    continue;
                }
                let a = p.coeffs[var_index].clone();
                let b = -n.coeffs[var_index].clone();
                // b·p + a·n has a zero coefficient on the variable.
                let mut coeffs: Vec<Rational> = Vec::with_capacity(p.coeffs.len() - 1);
                for i in 0..p.coeffs.len() {
                    if i == var_index {
                        continue;
                    }
                    coeffs.push(&p.coeffs[i] * &b + &n.coeffs[i] * &a);
                }
                let mut row = Row {
                    coeffs,
                    m: &p.m * &b + &n.m * &a,
                    c: &p.c * &b + &n.c * &a,
                    history,
                };
                row.normalize();
                kept.push(row);
            }
        }
        rows = prune(kept)?;
        remaining -= 1;
    }
    Ok(rows)
}

/// Deduplicate, drop tautologies, detect constant infeasibility, and keep
/// only the tightest row per normal direction.
fn prune(mut rows: Vec<Row>) -> Result<Vec<Row>> {
    for r in &mut rows {
        r.normalize();
    }
    rows.sort();
    // Identical inequalities keep the representative with fewest ancestors.
    rows.dedup_by(|a, b| a.coeffs == b.coeffs && a.m == b.m && a.c == b.c);
    let mut out: Vec<Row> = Vec::new();
    for r in rows {
        if r.coeffs.iter().all(|c| c.is_zero()) {
            if r.constant_nonneg_all_m() {
                continue;
            }
            return Err(Error::Infeasible(format!(
                "constant row {}m + {} < 0 for some m ≥ 1",
                r.m, r.c
            )));
        }
        out.push(r);
    }
    // Same normal: keep the row whose constant is smaller for every m ≥ 1.
    let mut result: Vec<Row> = Vec::new();
    'outer: for r in out {
        for kept in &mut result {
            if kept.coeffs == r.coeffs {
                let dm = &r.m - &kept.m;
                let dc = &r.c - &kept.c;
                if !dm.is_negative() && !(&dm + &dc).is_negative() {
                    continue 'outer; // r is weaker everywhere
                }
                let dm2 = -dm;
                let dc2 = -dc;
                if !dm2.is_negative() && !(&dm2 + &dc2).is_negative() {
                    *kept = r; // r is tighter everywhere
                    continue 'outer;
                }
                // Incomparable: keep both.
            }
        }
        result.push(r);
    }
    Ok(result)
}

fn negate(r: Row) -> Row {
    Row {
        coeffs: r.coeffs.iter().map(|c| -c).collect(),
        m: -r.m,
        c: -r.c,
        history: r.history,
    }
}

/// Halfplane intersection of two-variable rows at a fixed m. Returns the
/// hull vertices (CCW) and, per vertex, the indices of the tight rows.
fn polygon_at(rows: &[Row], m: i64) -> Result<(Vec<(Rational, Rational)>, Vec<Vec<usize>>)> {
    let guard = rat(1_000_000) * rat(m.max(1));
    let mut planes: Vec<(Rational, Rational, Rational)> = rows
        .iter()
        .map(|r| (r.coeffs[0].clone(), r.coeffs[1].clone(), r.constant_at(m)))
        .collect();
    let guard_start = planes.len();
    planes.push((rat(-1), rat(0), guard.clone())); // s ≤ guard
    planes.push((rat(0), rat(-1), guard.clone())); // t ≤ guard
    planes.push((rat(1), rat(0), guard.clone())); // s ≥ −guard
    planes.push((rat(0), rat(1), guard.clone()));

    let mut candidates: Vec<(Rational, Rational)> = Vec::new();
    for i in 0..planes.len() {
        for j in (i + 1)..planes.len() {
            let (a1, b1, c1) = &planes[i];
            let (a2, b2, c2) = &planes[j];
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            let x = (-c1 * b2 + c2 * b1) / &det;
            let y = (-(a1 * c2) + a2 * c1) / &det;
            if planes
                .iter()
                .all(|(a, b, c)| !(a * &x + b * &y + c).is_negative())
            {
                candidates.push((x, y));
            }
        }
    }
    candidates.sort();
    candidates.dedup();
    if candidates.is_empty() {
        return Err(Error::Infeasible(format!("no feasible point at m = {m}")));
    }
    let hull = convex_hull(candidates);
    for (x, y) in &hull {
        if x.abs() == guard || y.abs() == guard {
            return Err(Error::Infeasible(
                "projection is unbounded in the exponent plane".into(),
            ));
        }
    }
    let tight: Vec<Vec<usize>> = hull
        .iter()
        .map(|(x, y)| {
            (0..guard_start)
                .filter(|&i| {
                    let (a, b, c) = &planes[i];
                    (a * x + b * y + c).is_zero()
                })
                .collect()
        })
        .collect();
    Ok((hull, tight))
}

/// Convex hull (monotone chain), CCW, collinear points dropped. Degenerate
/// inputs return the distinct extreme points (possibly 1 or 2).
pub(crate) fn convex_hull(mut pts: Vec<(Rational, Rational)>) -> Vec<(Rational, Rational)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let cross = |o: &(Rational, Rational), a: &(Rational, Rational), b: &(Rational, Rational)| {
        (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0)
    };
    let mut lower: Vec<(Rational, Rational)> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<(Rational, Rational)> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.is_empty() {
        // All points collinear: keep the two extremes.
        let mut v = pts;
        let first = v.first().cloned().unwrap();
        let last = v.pop().unwrap();
        return if first == last {
            vec![first]
        } else {
            vec![first, last]
        };
    }
    lower
}

const PROBE_M: i64 = 840;
const VERIFY_M: [i64; 10] = [1, 2, 3, 4, 5, 6, 8, 12, 97, 840];

/// Project the system to the exponent plane, treating m symbolically with
/// m ≥ 1. The vertex structure is resolved at a large probe value and then
/// verified across small and large m; a change of structure is an error.
pub fn project(system: &ConstraintSystem) -> Result<RegionSpec> {
    let rows = eliminate(system)?;
    let (hull, tight) = polygon_at(&rows, PROBE_M)?;
    let mut vertices: Vec<(AffineInM, AffineInM)> = Vec::new();
    for (point, tights) in hull.iter().zip(&tight) {
        let lifted = lift_vertex(&rows, point, tights).ok_or_else(|| {
            Error::MDependentCombinatorics(format!(
                "vertex ({}, {}) is not pinned by two independent rows",
                point.0, point.1
            ))
        })?;
        vertices.push(lifted);
    }
    let region = RegionSpec { vertices };
    for m in VERIFY_M {
        let direct = match polygon_at(&rows, m) {
            Ok((h, _)) => h,
            Err(Error::Infeasible(_)) => Vec::new(),
            Err(e) => return Err(e),
        };
        let lifted_points: Vec<(Rational, Rational)> = region
            .vertices
            .iter()
            .map(|(s, t)| (s.eval(m), t.eval(m)))
            .collect();
        let a = convex_hull(lifted_points);
        let b = convex_hull(direct);
        if a != b {
            return Err(Error::MDependentCombinatorics(format!(
                "instantiation at m = {m} disagrees with the direct intersection"
            )));
        }
    }
    Ok(region)
}

fn lift_vertex(
    rows: &[Row],
    point: &(Rational, Rational),
    tight: &[usize],
) -> Option<(AffineInM, AffineInM)> {
    for (k, &i) in tight.iter().enumerate() {
        for &j in &tight[k + 1..] {
            let (a1, b1) = (&rows[i].coeffs[0], &rows[i].coeffs[1]);
            let (a2, b2) = (&rows[j].coeffs[0], &rows[j].coeffs[1]);
            let det = a1 * b2 - a2 * b1;
            if det.is_zero() {
                continue;
            }
            // a·s + b·t + (m_coef·m + c) = 0 for both rows; solve by Cramer.
            let g1m = &rows[i].m;
            let g1c = &rows[i].c;
            let g2m = &rows[j].m;
            let g2c = &rows[j].c;
            let s = AffineInM::new(
                (-(g1m * b2) + g2m * b1) / &det,
                (-(g1c * b2) + g2c * b1) / &det,
            );
            let t = AffineInM::new(
                (-(a1 * g2m) + a2 * g1m) / &det,
                (-(a1 * g2c) + a2 * g1c) / &det,
            );
            if (s.eval(PROBE_M), t.eval(PROBE_M)) == (point.0.clone(), point.1.clone()) {
                return Some((s, t));
            }
        }
    }
    None
}

/// Point-set equality of two regions for all m, decided symbolically after
/// dropping collinear vertices and aligning the vertex cycles.
pub fn region_equal(a: &RegionSpec, b: &RegionSpec) -> bool {
    canonical_cycle(a) == canonical_cycle(b)
}

type AffinePair = (AffineInM, AffineInM);

fn canonical_cycle(region: &RegionSpec) -> Vec<AffinePair> {
    let mut vs: Vec<AffinePair> = region.vertices.clone();
    // Remove cyclically-duplicate vertices.
    let mut i = 0;
    while vs.len() > 1 && i < vs.len() {
        let next = (i + 1) % vs.len();
        if vs[i] == vs[next] {
            vs.remove(next.max(i).min(vs.len() - 1));
        } else {
            i += 1;
        }
    }
    // Remove vertices that are collinear with their neighbours for every m.
    loop {
        let n = vs.len();
        if n < 3 {
            break;
        }
        let mut removed = false;
        for i in 0..n {
            let a = &vs[(i + n - 1) % n];
            let b = &vs[i];
            let c = &vs[(i + 1) % n];
            if collinear_all_m(a, b, c) {
                vs.remove(i);
                removed = true;
                break;
            }
        }
        if !removed {
            break;
        }
    }
    // Rotate to the lexicographically smallest vertex.
    if !vs.is_empty() {
        let key = |v: &AffinePair| {
            (
                v.0.slope.clone(),
                v.0.offset.clone(),
                v.1.slope.clone(),
                v.1.offset.clone(),
            )
        };
        let start = (0..vs.len())
            .min_by(|&i, &j| key(&vs[i]).cmp(&key(&vs[j])))
            .unwrap();
        vs.rotate_left(start);
    }
    vs
}

fn collinear_all_m(a: &AffinePair, b: &AffinePair, c: &AffinePair) -> bool {
    // cross(b − a, c − b) is a quadratic in m; collinear for all m iff it is
    // identically zero.
    let dx1 = affine_sub(&b.0, &a.0);
    let dy1 = affine_sub(&b.1, &a.1);
    let dx2 = affine_sub(&c.0, &b.0);
    let dy2 = affine_sub(&c.1, &b.1);
    let q = quad_sub(affine_mul(&dx1, &dy2), affine_mul(&dy1, &dx2));
    q.0.is_zero() && q.1.is_zero() && q.2.is_zero()
}

fn affine_sub(a: &AffineInM, b: &AffineInM) -> AffineInM {
    AffineInM::new(&a.slope - &b.slope, &a.offset - &b.offset)
}

fn affine_mul(a: &AffineInM, b: &AffineInM) -> (Rational, Rational, Rational) {
    (
        &a.slope * &b.slope,
        &a.slope * &b.offset + &a.offset * &b.slope,
        &a.offset * &b.offset,
    )
}

fn quad_sub(
    a: (Rational, Rational, Rational),
    b: (Rational, Rational, Rational),
) -> (Rational, Rational, Rational) {
    (a.0 - b.0, a.1 - b.1, a.2 - b.2)
}

/// Every lattice point of the instantiated region, via membership tests.
pub fn lattice_points(polygon: &Polygon, bound: i64) -> Vec<(i64, i64)> {
    let mut pts = Vec::new();
    for s in 0..=bound {
        for t in 0..=bound {
            if polygon.contains(&rat(s), &rat(t)) {
                pts.push((s, t));
            }
        }
    }
    pts
}
