//! Acceptance suite: one test per criterion, each printing a pass/fail line
//! (run with `cargo test --test acceptance -- --nocapture` to see them all).

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use delcert::assignment::{assert_shear_stability, injective_assignment, pivot_monomials};
use delcert::atlas::standard_atlas;
use delcert::cases::{
    case_registry, delta_lower_bound, expected_bound, verify_anchor_bound, Surface, SystemCheck,
};
use delcert::exact::{rat, ratq, BiPoly, Monomial2, MonomialOrder, Rational};
use delcert::newton::lct_lower_bound;
use delcert::project::{project, region_equal};
use delcert::regions::{
    cubic_fit, first_moment_s, instantiate, leading_coefficient, union_lattice_sum_s, Polygon,
    RegionSpec,
};
use delcert::toric::{delta_m_upper, delta_upper_limit, ToricSurface};

fn brute_union_sum(regions: &[RegionSpec], m: i64) -> BigInt {
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
fn criterion_1_figure1_labels() {
    let t0 = Instant::now();
    let mut failures = Vec::new();
    for entry in standard_atlas() {
        let moment = entry.exact_moment().unwrap();
        let ok = moment == entry.declared;
        if !ok {
            failures.push(format!(
                "  {}: computed {} vs label {}",
                entry.id, moment, entry.label
            ));
        }
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(1), "runtime {elapsed:?}");
    if failures.is_empty() {
        println!("criterion 1: PASS — all table labels reproduced exactly ({elapsed:?})");
    } else {
        println!(
            "criterion 1: FAIL — {} of {} labels differ from the exact moment:",
            failures.len(),
            standard_atlas().len()
        );
        for f in &failures {
            println!("{f}");
        }
        println!(
            "  the strip label 1 upward-rounds the exact moment 169/192; see the \
             figure1_labels_verified_values companion test and the project notes"
        );
        panic!("criterion 1 label mismatch (known upstream rounding)");
    }
}

/// Companion to criterion 1: the independently verified exact moments.
#[test]
fn figure1_labels_verified_values() {
    for entry in standard_atlas() {
        let moment = entry.exact_moment().unwrap();
        if entry.declared_is_exact {
            assert_eq!(moment, entry.declared, "{}", entry.id);
        } else {
            assert_eq!(moment, ratq(169, 192), "{}", entry.id);
            assert!(moment < entry.declared, "declared label must dominate");
        }
        // Second route: exact cubic fit of the lattice sums.
        assert_eq!(
            leading_coefficient(&entry.region).unwrap(),
            moment,
            "{}",
            entry.id
        );
    }
}

#[test]
fn criterion_2_main_theorem_table() {
    let t0 = Instant::now();
    let expected_bounds: Vec<(Surface, Rational)> = vec![
        (Surface::DelPezzo(1), ratq(3, 2)),
        (Surface::DelPezzo(2), ratq(6, 5)),
        (Surface::DelPezzo(3), ratq(36, 31)),
        (Surface::DelPezzo(4), ratq(12, 11)),
        (Surface::DelPezzo(5), ratq(15, 14)),
        (Surface::DelPezzo(6), Rational::one()),
        (Surface::P2, Rational::one()),
        (Surface::P1xP1, Rational::one()),
    ];
    for (surface, expected) in &expected_bounds {
        let cert = delta_lower_bound(*surface).unwrap();
        assert_eq!(cert.bound, *expected, "{}", surface.name());
        assert_eq!(cert.bound, expected_bound(*surface));
        if matches!(surface, Surface::DelPezzo(d) if *d <= 5) {
            assert!(cert.bound >= ratq(15, 14), "uniform bound for low degrees");
        }
    }
    // Every printed intermediate ratio, surface by surface.
    let printed: Vec<(&str, Vec<Rational>)> = vec![
        ("dp1", vec![rat(3), ratq(3, 2)]),
        ("dp2", vec![ratq(6, 5), rat(2), rat(2)]),
        (
            "dp3",
            vec![ratq(12, 7), ratq(36, 31), ratq(18, 11), ratq(9, 7)],
        ),
        ("dp4", vec![ratq(3, 2), ratq(3, 2), ratq(12, 11)]),
        ("dp5", vec![ratq(15, 14), ratq(15, 13)]),
        ("dp6", vec![ratq(9, 8), rat(1), rat(1)]),
        ("p2", vec![rat(1)]),
        ("p1xp1", vec![rat(1)]),
    ];
    for (name, mut expected) in printed {
        let mut got: Vec<Rational> = case_registry()
            .iter()
            .filter(|c| c.surface.name() == name && c.printed)
            .map(|c| c.ratio().unwrap())
            .collect();
        got.sort();
        expected.sort();
        assert_eq!(got, expected, "printed ratios of {name}");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(10), "runtime {elapsed:?}");
    println!(
        "criterion 2: PASS — bound table 3/2, 6/5, 36/31, 12/11, 15/14, 1, 1, 1 ({elapsed:?})"
    );
}

#[test]
fn criterion_3_toric_upper_bounds() {
    let t0 = Instant::now();
    for m in 1..=50 {
        let (f1, _) = delta_m_upper(ToricSurface::F1, m).unwrap();
        assert_eq!(f1 * rat(7 * m + 4), rat(6 * m + 3), "f1 at m = {m}");
        let (dp7, _) = delta_m_upper(ToricSurface::DP7, m).unwrap();
        assert_eq!(
            dp7 * rat(25 * m * m + 27 * m + 8),
            rat(21 * m * (m + 1) + 6),
            "dp7 at m = {m}"
        );
    }
    assert_eq!(delta_upper_limit(ToricSurface::F1).unwrap(), ratq(6, 7));
    assert_eq!(delta_upper_limit(ToricSurface::DP7).unwrap(), ratq(21, 25));
    for s in [ToricSurface::P2, ToricSurface::P1xP1, ToricSurface::DP6] {
        assert_eq!(delta_upper_limit(s).unwrap(), Rational::one());
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(5), "runtime {elapsed:?}");
    println!("criterion 3: PASS — closed forms for m = 1..50, limits 6/7 and 21/25 ({elapsed:?})");
}

#[test]
fn criterion_4_lattice_moment_consistency() {
    let t0 = Instant::now();
    let mut checked = 0;
    for case in case_registry() {
        for piece in &case.pieces {
            let kappa = leading_coefficient(&piece.region).unwrap();
            let p = piece.region.period();
            let samples: Vec<(i64, Rational)> = (1..=4)
                .map(|k| {
                    let m = k * p;
                    (
                        m,
                        Rational::from_integer(
                            union_lattice_sum_s(std::slice::from_ref(&piece.region), m).unwrap(),
                        ),
                    )
                })
                .collect();
            let fit = cubic_fit(&samples).unwrap();
            assert_eq!(fit.c3, kappa, "{}", case.label);
            assert_eq!(
                kappa,
                first_moment_s(&piece.region.slope_polygon().unwrap()).unwrap()
            );
            checked += 1;
        }
        // Brute-force spot verification of the union sum at m = 7.
        assert_eq!(
            union_lattice_sum_s(&case.regions(), 7).unwrap(),
            brute_union_sum(&case.regions(), 7),
            "{}",
            case.label
        );
    }
    let elapsed = t0.elapsed();
    println!("criterion 4: PASS — {checked} regions fit-consistent; m = 7 brute-force agrees ({elapsed:?})");
}

fn monomial_basis_deg3() -> Vec<BiPoly> {
    (0u32..=3)
        .flat_map(|d| (0..=d).map(move |t| BiPoly::monomial(Monomial2::new(d - t, t), rat(1))))
        .collect()
}

#[test]
fn criterion_5_lct_oracles_and_anchor() {
    let t0 = Instant::now();
    // Known thresholds, exactness required.
    for (f, expected) in [
        ("x^5", ratq(1, 5)),
        ("x^3*y^7", ratq(1, 7)),
        ("x^2 + y^3", ratq(5, 6)),
        ("x^2 + y^5", ratq(7, 10)),
    ] {
        let poly = delcert::exact::parse_bipoly(f).unwrap();
        let cert = lct_lower_bound(&poly, 40).unwrap();
        assert_eq!(cert.bound, expected, "{f}");
        assert!(cert.exact, "{f}");
    }
    for a in 1u32..=8 {
        for b in 0u32..=8 {
            if a + b == 0 {
                continue;
            }
            let f = BiPoly::monomial(Monomial2::new(a, b), rat(1));
            let cert = lct_lower_bound(&f, 40).unwrap();
            assert_eq!(cert.bound, Rational::new(1.into(), a.max(b).into()));
            assert!(cert.exact);
        }
    }
    // 100 random integer bases certify the plane anchor bound at m = 1.
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0001);
    for trial in 0..100 {
        let mut basis = monomial_basis_deg3();
        let n = basis.len();
        for _ in 0..24 {
            let i = rng.gen_range(0..n);
            let mut j = rng.gen_range(0..n);
            while j == i {
                j = rng.gen_range(0..n);
            }
            let k = [-2i64, -1, 1, 2][rng.gen_range(0..4)];
            basis[i] = basis[i].add(&basis[j].scale(&rat(k)));
        }
        let cert = verify_anchor_bound(1, &basis).unwrap_or_else(|e| panic!("trial {trial}: {e}"));
        assert!(cert.bound >= ratq(1, 10), "trial {trial}");
    }
    let elapsed = t0.elapsed();
    assert!(elapsed < Duration::from_secs(30), "runtime {elapsed:?}");
    println!("criterion 5: PASS — oracle corpus exact; 100 random bases ≥ 1/10 ({elapsed:?})");
}

#[test]
fn criterion_6_assignment_properties() {
    let t0 = Instant::now();
    let orders = [
        MonomialOrder::GrlexXY,
        MonomialOrder::GrlexYX,
        MonomialOrder::DiagonalFirst,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xacce_0002);
    let random_basis = |rng: &mut ChaCha8Rng, nrows: usize, cap: u32, order: MonomialOrder| loop {
        let monos = order.monomials_up_to(cap);
        let polys: Vec<BiPoly> = (0..nrows)
            .map(|_| {
                BiPoly::from_terms(monos.iter().filter_map(|m| {
                    if rng.gen_range(0..3) == 0 {
                        None
                    } else {
                        Some((*m, rat(rng.gen_range(-4i64..=4))))
                    }
                }))
            })
            .collect();
        if polys.iter().all(|p| !p.is_zero()) && injective_assignment(&polys, order).is_ok() {
            return polys;
        }
    };
    for trial in 0..200usize {
        let order = orders[trial % 3];
        let nrows = 2 + trial % 14;
        let polys = random_basis(&mut rng, nrows, 6, order);
        let assignment = injective_assignment(&polys, order).unwrap();
        let pivots: std::collections::BTreeSet<Monomial2> = pivot_monomials(&polys, order)
            .unwrap()
            .into_iter()
            .collect();
        let mut seen = std::collections::BTreeSet::new();
        for (p, m) in polys.iter().zip(&assignment.assigned) {
            assert!(seen.insert(*m));
            assert!(pivots.contains(m));
            assert!(!p.coeff(*m).is_zero());
        }
        assert_eq!(seen.len(), pivots.len());
    }
    for trial in 0..100usize {
        let order = orders[trial % 3];
        let polys = random_basis(&mut rng, 2 + trial % 8, 4, order);
        let a = ratq(rng.gen_range(-5i64..=5).max(1), rng.gen_range(1i64..=3));
        let beta = rng.gen_range(2u32..=5);
        assert!(
            assert_shear_stability(&polys, &a, beta, order).unwrap(),
            "trial {trial}"
        );
    }
    let elapsed = t0.elapsed();
    println!("criterion 6: PASS — 200 assignments valid, 100 shears stable ({elapsed:?})");
}

#[test]
fn criterion_7_projection_agreement() {
    let t0 = Instant::now();
    let must_match = ["d1-case1", "d3-case2-sub3", "d4-case3", "p1xp1-rulings"];
    let mut advisory = Vec::new();
    for case in case_registry() {
        for sys in &case.systems {
            let region = project(&sys.system).unwrap();
            match sys.check {
                SystemCheck::Exact { piece } => {
                    assert!(
                        region_equal(&region, &case.pieces[piece].region),
                        "{} / {}",
                        case.label,
                        sys.name
                    );
                }
                SystemCheck::Advisory => {
                    let shadow_kappa = first_moment_s(&region.slope_polygon().unwrap()).unwrap();
                    advisory.push(format!(
                        "  advisory {} / {}: shadow κ = {}, stored κ = {}",
                        case.label,
                        sys.name,
                        shadow_kappa,
                        case.exact_kappa().unwrap()
                    ));
                }
            }
        }
    }
    for label in must_match {
        let case = case_registry()
            .into_iter()
            .find(|c| c.label == label)
            .unwrap();
        assert!(
            case.systems
                .iter()
                .any(|s| matches!(s.check, SystemCheck::Exact { .. })),
            "{label} must carry an exact projection"
        );
    }
    let elapsed = t0.elapsed();
    println!("criterion 7: PASS — exact projections agree; advisory cases:");
    for line in advisory {
        println!("{line}");
    }
    println!("criterion 7 runtime: {elapsed:?}");
}
