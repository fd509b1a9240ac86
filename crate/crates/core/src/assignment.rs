//! Coefficient matrices of polynomial lists, exact row echelon form with a
//! recorded transform, pivot monomials, and the injective polynomial-to-
//! monomial assignment via bipartite matching; plus the shear-stability
//! check for the pivot set.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{shear, BiPoly, Monomial2, MonomialOrder, Rational};

/// Rows are polynomials, columns the monomials up to a degree cap in a fixed
/// order.
#[derive(Debug, Clone)]
pub struct CoeffMatrix {
    pub rows: Vec<Vec<Rational>>,
    pub cols: Vec<Monomial2>,
    pub order: MonomialOrder,
}

/// M = T·E with E in row echelon form (no zero rows) and T invertible.
#[derive(Debug, Clone)]
pub struct EchelonResult {
    pub e: Vec<Vec<Rational>>,
    pub t: Vec<Vec<Rational>>,
    /// Column index of each row's pivot, strictly increasing.
    pub pivots: Vec<usize>,
}

/// Injective map row index → monomial; the image is exactly the pivot set
/// and every polynomial owns a nonzero coefficient at its assigned monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub assigned: Vec<Monomial2>,
}

pub fn coefficient_matrix(
    polys: &[BiPoly],
    order: MonomialOrder,
    degree_cap: u32,
) -> Result<CoeffMatrix> {
    for (i, p) in polys.iter().enumerate() {
        if p.total_degree().unwrap_or(0) > degree_cap {
            return Err(Error::InvalidInput(format!(
                "polynomial {i} exceeds the degree cap {degree_cap}"
            )));
        }
    }
    let cols = order.monomials_up_to(degree_cap);
    let rows = polys
        .iter()
        .map(|p| cols.iter().map(|m| p.coeff(*m)).collect())
        .collect();
    Ok(CoeffMatrix { rows, cols, order })
}

/// Exact Gaussian elimination; errors when the rows are dependent.
pub fn row_echelon(matrix: &CoeffMatrix) -> Result<EchelonResult> {
    let nrows = matrix.rows.len();
    let ncols = matrix.cols.len();
    let mut e = matrix.rows.clone();
    // Maintain M = T·E: a row operation E ← L·E updates T ← T·L⁻¹.
    let mut t: Vec<Vec<Rational>> = (0..nrows)
        .map(|i| {
            (0..nrows)
                .map(|j| {
                    if i == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::with_capacity(nrows);
    let mut row = 0usize;
    for col in 0..ncols {
        if row == nrows {
            break;
        }
        let Some(pivot_row) = (row..nrows).find(|&r| !e[r][col].is_zero()) else {
            continue;
        };
        if pivot_row != row {
            e.swap(pivot_row, row);
            for tr in t.iter_mut() {
                tr.swap(pivot_row, row);
            }
        }
        let p = e[row][col].clone();
        for r in (row + 1)..nrows {
            let factor = &e[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..ncols {
                let delta = &e[row][c] * &factor;
                e[r][c] = &e[r][c] - &delta;
            }
            // E_r ← E_r − factor·E_row, so column-wise T_row ← T_row + factor·T_r.
            for tr in t.iter_mut() {
                let delta = &tr[r] * &factor;
                tr[row] = &tr[row] + &delta;
            }
        }
        pivots.push(col);
        row += 1;
    }
    if row < nrows {
        return Err(Error::RankDeficient);
    }
    debug_assert!(verify_product(&matrix.rows, &t, &e));
    Ok(EchelonResult { e, t, pivots })
}

fn verify_product(m: &[Vec<Rational>], t: &[Vec<Rational>], e: &[Vec<Rational>]) -> bool {
    let nrows = m.len();
    let ncols = if nrows > 0 { m[0].len() } else { 0 };
    for i in 0..nrows {
        for j in 0..ncols {
            let mut acc = Rational::zero();
            for k in 0..nrows {
                acc += &t[i][k] * &e[k][j];
            }
            if acc != m[i][j] {
                return false;
            }
        }
    }
    true
}

/// Build the pivot minor Ẽ, form M̃ = T·Ẽ (equivalently the pivot-column
/// submatrix of M), and choose one nonzero entry per row and column by
/// augmenting-path matching; nonsingularity guarantees a perfect matching.
pub fn injective_assignment(polys: &[BiPoly], order: MonomialOrder) -> Result<Assignment> {
    let cap = polys
        .iter()
        .map(|p| p.total_degree().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let matrix = coefficient_matrix(polys, order, cap)?;
    let ech = row_echelon(&matrix)?;
    let n = polys.len();
    // Pivot-column submatrix of M; cross-check against T·Ẽ.
    let mtilde: Vec<Vec<Rational>> = matrix
        .rows
        .iter()
        .map(|r| ech.pivots.iter().map(|&c| r[c].clone()).collect())
        .collect();
    debug_assert!({
        let etilde: Vec<Vec<Rational>> = ech
            .e
            .iter()
            .map(|r| ech.pivots.iter().map(|&c| r[c].clone()).collect())
            .collect();
        verify_product(&mtilde, &ech.t, &etilde)
    });
    // Kuhn's matching on the nonzero pattern, rows processed in order.
    let mut row_of_col: Vec<Option<usize>> = vec![None; n];
    for start in 0..n {
        let mut visited = vec![false; n];
        if !augment(start, &mtilde, &mut visited, &mut row_of_col) {
            return Err(Error::RankDeficient);
        }
    }
    let mut assigned = vec![Monomial2::new(0, 0); n];
    for (col, row) in row_of_col.iter().enumerate() {
        let row = row.expect("perfect matching");
        assigned[row] = matrix.cols[ech.pivots[col]];
    }
    Ok(Assignment { assigned })
}

fn augment(
    row: usize,
    mtilde: &[Vec<Rational>],
    visited: &mut [bool],
    row_of_col: &mut [Option<usize>],
) -> bool {
    for col in 0..mtilde[row].len() {
        if mtilde[row][col].is_zero() || visited[col] {
            continue;
        }
        visited[col] = true;
        let free = match row_of_col[col] {
            None => true,
            Some(other) => augment(other, mtilde, visited, row_of_col),
        };
        if free {
            row_of_col[col] = Some(row);
            return true;
        }
    }
    false
}

/// Pivot monomial set of a polynomial list.
pub fn pivot_monomials(polys: &[BiPoly], order: MonomialOrder) -> Result<Vec<Monomial2>> {
    let cap = polys
        .iter()
        .map(|p| p.total_degree().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let matrix = coefficient_matrix(polys, order, cap)?;
    let ech = row_echelon(&matrix)?;
    Ok(ech.pivots.iter().map(|&c| matrix.cols[c]).collect())
}

/// True iff shearing every polynomial by x ↦ x − A·y^β (β ≥ 2) leaves the
/// pivot monomial set unchanged.
pub fn assert_shear_stability(
    polys: &[BiPoly],
    a: &Rational,
    beta: u32,
    order: MonomialOrder,
) -> Result<bool> {
    if beta < 2 {
        return Err(Error::InvalidInput(
            "shear stability is only claimed for beta ≥ 2".into(),
        ));
    }
    let before: std::collections::BTreeSet<Monomial2> =
        pivot_monomials(polys, order)?.into_iter().collect();
    let sheared: Vec<BiPoly> = polys.iter().map(|p| shear(p, a, beta)).collect();
    let after: std::collections::BTreeSet<Monomial2> =
        pivot_monomials(&sheared, order)?.into_iter().collect();
    Ok(before == after)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_bipoly, rat};

    fn polys(texts: &[&str]) -> Vec<BiPoly> {
        texts.iter().map(|t| parse_bipoly(t).unwrap()).collect()
    }

    #[test]
    fn matrix_of_monomial_basis_is_identity() {
        let m = coefficient_matrix(&polys(&["1", "x", "y"]), MonomialOrder::GrlexXY, 1).unwrap();
        for (i, row) in m.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                assert_eq!(*v == rat(1), i == j);
            }
        }
    }

    #[test]
    fn matrix_rows_read_coefficients() {
        let m = coefficient_matrix(&polys(&["x + y", "x - y"]), MonomialOrder::GrlexXY, 1).unwrap();
        assert_eq!(m.rows[0], vec![rat(0), rat(1), rat(1)]);
        assert_eq!(m.rows[1], vec![rat(0), rat(1), rat(-1)]);
        assert!(coefficient_matrix(&polys(&["x^2"]), MonomialOrder::GrlexXY, 1).is_err());
    }

    #[test]
    fn echelon_identity_and_rank() {
        let m = coefficient_matrix(&polys(&["1", "x", "y"]), MonomialOrder::GrlexXY, 1).unwrap();
        let ech = row_echelon(&m).unwrap();
        assert_eq!(ech.pivots, vec![0, 1, 2]);
        let dep =
            coefficient_matrix(&polys(&["x + y", "2*x + 2*y"]), MonomialOrder::GrlexXY, 1).unwrap();
        assert_eq!(row_echelon(&dep).unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn echelon_reconstruction_on_mixed_rows() {
        let m = coefficient_matrix(
            &polys(&["y + x", "x - y", "1 + x + y"]),
            MonomialOrder::GrlexXY,
            1,
        )
        .unwrap();
        let ech = row_echelon(&m).unwrap();
        assert!(verify_product(&m.rows, &ech.t, &ech.e));
        assert_eq!(ech.pivots.len(), 3);
        for w in ech.pivots.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn assignment_monomial_basis_is_identity() {
        let ps = polys(&["1", "x", "y", "x^2"]);
        let a = injective_assignment(&ps, MonomialOrder::GrlexXY).unwrap();
        for (p, m) in ps.iter().zip(&a.assigned) {
            assert_eq!(*p, BiPoly::monomial(*m, rat(1)));
        }
    }

    #[test]
    fn assignment_resolves_shared_support() {
        // {1, x, x+y}: pivots {1, x, y}; the third row owns y.
        let ps = polys(&["1", "x", "x + y"]);
        let a = injective_assignment(&ps, MonomialOrder::GrlexXY).unwrap();
        assert_eq!(a.assigned[0], Monomial2::new(0, 0));
        assert_eq!(a.assigned[1], Monomial2::new(1, 0));
        assert_eq!(a.assigned[2], Monomial2::new(0, 1));
    }

    #[test]
    fn assignment_for_tangent_cone_basis() {
        // The degree-5 case-2 tangent basis under y ≺ x: the last polynomial
        // x²y + xy² is assigned xy².
        let ps = polys(&["1", "x", "y", "x^2", "x*y", "x^2*y + x*y^2"]);
        let a = injective_assignment(&ps, MonomialOrder::GrlexYX).unwrap();
        assert_eq!(a.assigned[5], Monomial2::new(1, 2));
        // Validity: injective, and each row has the assigned monomial.
        let mut seen = std::collections::BTreeSet::new();
        for (p, m) in ps.iter().zip(&a.assigned) {
            assert!(seen.insert(*m));
            assert!(!p.coeff(*m).is_zero());
        }
    }

    #[test]
    fn shear_stability_examples() {
        let ps = polys(&["1", "x", "x + y"]);
        assert!(assert_shear_stability(&ps, &rat(1), 2, MonomialOrder::GrlexXY).unwrap());
        let monos = polys(&["1", "x", "y", "x^2", "x*y", "y^2"]);
        assert!(assert_shear_stability(&monos, &rat(-3), 5, MonomialOrder::GrlexYX).unwrap());
        assert!(assert_shear_stability(&monos, &rat(1), 1, MonomialOrder::GrlexXY).is_err());
    }
}
