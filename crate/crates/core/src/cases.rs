//! Per-surface bound pipelines: the registry of every case and subcase,
//! leading coefficients of the exponent sums, and the final δ lower bounds
//! with machine-checkable certificates.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::assignment::injective_assignment;
use crate::error::{Error, Result};
use crate::exact::{rat, ratq, BiPoly, Monomial2, MonomialOrder, Rational};
use crate::newton::{lct_lower_bound, product_anchor, CertifiedBound};
use crate::project::{ConstraintSystem, LinExpr};
use crate::regions::{
    cubic_fit, first_moment_s, union_lattice_count, union_lattice_sum_s, RegionSpec,
};

/// Surfaces with a lower-bound pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    /// Smooth del Pezzo of this degree (1–6).
    DelPezzo(u8),
    P2,
    P1xP1,
}

impl Surface {
    pub fn parse(name: &str) -> Result<Surface> {
        match name.to_ascii_lowercase().as_str() {
            "dp1" => Ok(Surface::DelPezzo(1)),
            "dp2" => Ok(Surface::DelPezzo(2)),
            "dp3" => Ok(Surface::DelPezzo(3)),
            "dp4" => Ok(Surface::DelPezzo(4)),
            "dp5" => Ok(Surface::DelPezzo(5)),
            "dp6" => Ok(Surface::DelPezzo(6)),
            "p2" => Ok(Surface::P2),
            "p1xp1" => Ok(Surface::P1xP1),
            other => Err(Error::UnknownSurface(other.into())),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Surface::DelPezzo(d) => format!("dp{d}"),
            Surface::P2 => "p2".into(),
            Surface::P1xP1 => "p1xp1".into(),
        }
    }

    /// m³-coefficient of m·ℓ_m for this pipeline's chart.
    pub fn normalizer(&self) -> Rational {
        match self {
            Surface::DelPezzo(d) => ratq(*d as i64, 2),
            Surface::P2 => ratq(9, 2),
            Surface::P1xP1 => rat(4),
        }
    }

    pub fn all() -> [Surface; 8] {
        [
            Surface::DelPezzo(1),
            Surface::DelPezzo(2),
            Surface::DelPezzo(3),
            Surface::DelPezzo(4),
            Surface::DelPezzo(5),
            Surface::DelPezzo(6),
            Surface::P2,
            Surface::P1xP1,
        ]
    }

    /// ℓ_m of the pipeline's section space.
    pub fn ell(&self, m: i64) -> BigInt {
        match self {
            Surface::DelPezzo(d) => {
                BigInt::from(*d) * BigInt::from(m) * BigInt::from(m + 1) / 2 + 1
            }
            Surface::P2 => BigInt::from(3 * m + 1) * BigInt::from(3 * m + 2) / 2,
            Surface::P1xP1 => {
                let k = BigInt::from(2 * m + 1);
                &k * &k
            }
        }
    }
}

/// One convex piece of a case's exponent region. `declared` overrides the
/// exact moment in the certified ratio; it must dominate the exact value
/// (overestimating v_m only weakens the δ bound) and is checked.
#[derive(Debug, Clone)]
pub struct CasePiece {
    pub region: RegionSpec,
    pub declared: Option<Rational>,
}

/// How a stored inequality system relates to the authoritative region.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemCheck {
    /// The projection must equal the indicated piece exactly.
    Exact { piece: usize },
    /// The projection is reported next to the authoritative region; the
    /// written region simplifies or dominates it rather than equals it.
    Advisory,
}

#[derive(Debug, Clone)]
pub struct CaseSystem {
    pub name: &'static str,
    pub system: ConstraintSystem,
    pub check: SystemCheck,
}

/// One pipeline case: authoritative region (a union of convex pieces),
/// the intersection-inequality systems, the optional generator monomials,
/// and the expected limsup ratio.
#[derive(Debug, Clone)]
pub struct CaseSpec {
    pub surface: Surface,
    pub label: &'static str,
    pub pieces: Vec<CasePiece>,
    pub systems: Vec<CaseSystem>,
    pub generators: Option<Vec<Monomial2>>,
    pub expected_ratio: Rational,
    /// True when the ratio belongs to the published bound table.
    pub printed: bool,
    /// True when the region's lattice count equals ℓ_m (the a = 0 cases).
    pub count_equals_basis: bool,
}

impl CaseSpec {
    pub fn regions(&self) -> Vec<RegionSpec> {
        self.pieces.iter().map(|p| p.region.clone()).collect()
    }

    /// Exact m³-coefficient of the exponent sum: Σ piece moments.
    pub fn exact_kappa(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for p in &self.pieces {
            acc += first_moment_s(&p.region.slope_polygon()?)?;
        }
        Ok(acc)
    }

    /// Declared coefficient: exact moments with any per-piece override.
    pub fn declared_kappa(&self) -> Result<Rational> {
        let mut acc = Rational::zero();
        for p in &self.pieces {
            acc += match &p.declared {
                Some(v) => v.clone(),
                None => first_moment_s(&p.region.slope_polygon()?)?,
            };
        }
        Ok(acc)
    }

    /// Certified case ratio: normalizer ÷ declared κ.
    pub fn ratio(&self) -> Result<Rational> {
        Ok(self.surface.normalizer() / self.declared_kappa()?)
    }

    pub fn lattice_sum(&self, m: i64) -> Result<BigInt> {
        union_lattice_sum_s(&self.regions(), m)
    }

    pub fn lattice_count(&self, m: i64) -> Result<BigInt> {
        union_lattice_count(&self.regions(), m)
    }
}

fn unit_region(v: &[(i64, i64)]) -> RegionSpec {
    RegionSpec::from_slopes(&v.iter().map(|&(s, t)| ((s, 1), (t, 1))).collect::<Vec<_>>())
}

fn piece(v: &[(i64, i64)]) -> CasePiece {
    CasePiece {
        region: unit_region(v),
        declared: None,
    }
}

fn piece_q(v: &[((i64, i64), (i64, i64))], declared: Option<Rational>) -> CasePiece {
    CasePiece {
        region: RegionSpec::from_slopes(v),
        declared,
    }
}

fn mono(s: u32, t: u32) -> Monomial2 {
    Monomial2::new(s, t)
}

/// System over the exponents of generator monomials: exponent sums with
/// Σ nᵢ = m; its shadow is the scaled convex hull of the generators.
fn generator_simplex(gens: &[Monomial2]) -> ConstraintSystem {
    let vars: Vec<String> = (0..gens.len()).map(|i| format!("n{i}")).collect();
    let mut total = LinExpr::new().m(1);
    let mut s = LinExpr::new();
    let mut t = LinExpr::new();
    for (i, g) in gens.iter().enumerate() {
        let name = format!("n{i}");
        total = total.var(&name, -1);
        s = s.var(&name, g.s as i64);
        t = t.var(&name, g.t as i64);
    }
    let mut neg = LinExpr::new().m(-1);
    for i in 0..gens.len() {
        neg = neg.var(&format!("n{i}"), 1);
    }
    ConstraintSystem {
        vars,
        inequalities: vec![total, neg],
        s_expr: s,
        t_expr: t,
    }
}

/// Diagonal-family system: i ≤ m, den·(n₁+n₂) ≤ num·(m − i), exponents
/// (i + n₁, i + n₂).
fn diagonal_family(num: i64, den: i64) -> ConstraintSystem {
    ConstraintSystem {
        vars: vec!["i".into(), "n1".into(), "n2".into()],
        inequalities: vec![
            LinExpr::new().m(1).var("i", -1),
            LinExpr::new()
                .m_q(num, den)
                .var_q("i", -num, den)
                .var("n1", -1)
                .var("n2", -1),
        ],
        s_expr: LinExpr::new().var("i", 1).var("n1", 1),
        t_expr: LinExpr::new().var("i", 1).var("n2", 1),
    }
}

/// Offset-simplex system: exponents (base_s·m + u₁, base_t·m + u₂) with
/// u₁ + u₂ ≤ m.
fn shifted_simplex(base_s: i64, base_t: i64) -> ConstraintSystem {
    ConstraintSystem {
        vars: vec!["u1".into(), "u2".into()],
        inequalities: vec![LinExpr::new().m(1).var("u1", -1).var("u2", -1)],
        s_expr: LinExpr::new().m(base_s).var("u1", 1),
        t_expr: LinExpr::new().m(base_t).var("u2", 1),
    }
}

/// The complete case registry.
pub fn case_registry() -> Vec<CaseSpec> {
    let mut cases = Vec::new();

    // Degree 1, case 1: a smooth anchor cubic bounds the multiplicity by m.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(1),
        label: "d1-case1",
        pieces: vec![piece(&[(0, 0), (1, 0), (0, 1)])],
        systems: vec![CaseSystem {
            name: "multiplicity-at-most-m",
            system: ConstraintSystem {
                vars: vec!["n1".into(), "n2".into()],
                inequalities: vec![LinExpr::new().m(1).var("n1", -1).var("n2", -1)],
                s_expr: LinExpr::new().var("n1", 1),
                t_expr: LinExpr::new().var("n2", 1),
            },
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: None,
        expected_ratio: rat(3),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 1, case 2: singular anchor cubic; the written comparison region
    // dominates the x-exponent of the true diagonal family.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(1),
        label: "d1-case2",
        pieces: vec![piece(&[(0, 0), (1, 0), (1, 1)])],
        systems: vec![CaseSystem {
            name: "diagonal-family-half",
            system: diagonal_family(1, 2),
            check: SystemCheck::Advisory,
        }],
        generators: Some(vec![mono(0, 0), mono(1, 1)]),
        expected_ratio: ratq(3, 2),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 2, case 1: three tangent monomials of degree ≤ 1.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(2),
        label: "d2-case1",
        pieces: vec![
            piece(&[(0, 0), (1, 0), (0, 1)]),
            piece(&[(1, 0), (2, 0), (1, 1)]),
        ],
        systems: vec![
            CaseSystem {
                name: "base-simplex",
                system: generator_simplex(&[mono(0, 0), mono(1, 0), mono(0, 1)]),
                check: SystemCheck::Exact { piece: 0 },
            },
            CaseSystem {
                name: "extremal-strip",
                system: shifted_simplex(1, 0),
                check: SystemCheck::Exact { piece: 1 },
            },
        ],
        generators: Some(vec![mono(0, 0), mono(1, 0), mono(0, 1)]),
        expected_ratio: ratq(6, 5),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 2, case 2, subcase 1: irreducible singular anchor cubic.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(2),
        label: "d2-case2-sub1",
        pieces: vec![piece(&[(0, 0), (1, 0), (1, 1), (0, 1)])],
        systems: vec![CaseSystem {
            name: "diagonal-family",
            system: diagonal_family(1, 1),
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: None,
        expected_ratio: rat(2),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 2, case 2, subcase 2: line plus conic.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(2),
        label: "d2-case2-sub2",
        pieces: vec![piece(&[(0, 0), (1, 0), (1, 1), (0, 1)])],
        systems: vec![CaseSystem {
            name: "line-conic",
            system: ConstraintSystem {
                vars: vec!["m1".into(), "m2".into(), "n1".into(), "n2".into()],
                inequalities: vec![
                    LinExpr::new().m(1).var("m1", -1),
                    LinExpr::new().m(1).var("m2", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", 1)
                        .var("m2", -2)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", -2)
                        .var("m2", 1)
                        .var("n1", -1)
                        .var("n2", -1),
                ],
                s_expr: LinExpr::new().var("m1", 1).var("n1", 1),
                t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
            },
            check: SystemCheck::Advisory,
        }],
        generators: None,
        expected_ratio: rat(2),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 3, case 1: irreducible singular anchor cubic.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(3),
        label: "d3-case1",
        pieces: vec![piece_q(
            &[
                ((0, 1), (0, 1)),
                ((3, 2), (0, 1)),
                ((1, 1), (1, 1)),
                ((0, 1), (3, 2)),
            ],
            None,
        )],
        systems: vec![CaseSystem {
            name: "diagonal-family-three-halves",
            system: diagonal_family(3, 2),
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: None,
        expected_ratio: ratq(12, 7),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 3, case 2, subcase 1 (line through one blown-up point).
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(3),
        label: "d3-case2-sub1-line1",
        pieces: vec![piece_q(
            &[
                ((0, 1), (0, 1)),
                ((1, 1), (0, 1)),
                ((3, 2), (1, 2)),
                ((0, 1), (2, 1)),
            ],
            None,
        )],
        systems: vec![CaseSystem {
            name: "line-conic-one-point",
            system: ConstraintSystem {
                vars: vec!["m1".into(), "m2".into(), "n1".into(), "n2".into()],
                inequalities: vec![
                    LinExpr::new().m(1).var("m2", -1),
                    LinExpr::new().m(1).var("m1", -2).var("m2", 1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", -2)
                        .var("m2", 1)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(2)
                        .var("m2", -2)
                        .var("n1", -1)
                        .var("n2", -1),
                ],
                s_expr: LinExpr::new().var("m1", 1).var("n1", 1),
                t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
            },
            check: SystemCheck::Advisory,
        }],
        generators: None,
        expected_ratio: ratq(36, 23),
        printed: false,
        count_equals_basis: false,
    });

    // Degree 3, case 2, subcase 1 (line through two blown-up points).
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(3),
        label: "d3-case2-sub1-line2",
        pieces: vec![piece_q(
            &[
                ((0, 1), (0, 1)),
                ((2, 1), (0, 1)),
                ((1, 2), (3, 2)),
                ((0, 1), (1, 1)),
            ],
            None,
        )],
        systems: vec![CaseSystem {
            name: "line-conic-two-points",
            system: ConstraintSystem {
                vars: vec!["m1".into(), "m2".into(), "n1".into(), "n2".into()],
                inequalities: vec![
                    LinExpr::new().m(1).var("m1", -1),
                    LinExpr::new().m(1).var("m1", 1).var("m2", -2),
                    LinExpr::new()
                        .m(1)
                        .var("m1", 1)
                        .var("m2", -2)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(2)
                        .var("m1", -2)
                        .var("n1", -1)
                        .var("n2", -1),
                ],
                s_expr: LinExpr::new().var("m1", 1).var("n1", 1),
                t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
            },
            check: SystemCheck::Advisory,
        }],
        generators: None,
        expected_ratio: ratq(36, 31),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 3, case 2, subcase 2: three lines, node at the point.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(3),
        label: "d3-case2-sub2",
        pieces: vec![piece_q(
            &[
                ((0, 1), (0, 1)),
                ((1, 1), (0, 1)),
                ((3, 2), (1, 2)),
                ((1, 2), (3, 2)),
                ((0, 1), (1, 1)),
            ],
            None,
        )],
        systems: vec![CaseSystem {
            name: "three-lines-node",
            system: ConstraintSystem {
                vars: vec![
                    "m1".into(),
                    "m2".into(),
                    "m3".into(),
                    "n1".into(),
                    "n2".into(),
                ],
                inequalities: vec![
                    LinExpr::new().m(1).var("m1", -1),
                    LinExpr::new().m(1).var("m2", -1),
                    LinExpr::new().m(1).var("m3", -1),
                    LinExpr::new().m(1).var("m3", 1).var("m1", -1).var("m2", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", 1)
                        .var("m2", -1)
                        .var("m3", -1)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", -1)
                        .var("m2", 1)
                        .var("m3", -1)
                        .var("n1", -1)
                        .var("n2", -1),
                ],
                s_expr: LinExpr::new().var("m1", 1).var("n1", 1),
                t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
            },
            check: SystemCheck::Advisory,
        }],
        generators: None,
        expected_ratio: ratq(18, 11),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 3, case 2, subcase 3: three concurrent lines.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(3),
        label: "d3-case2-sub3",
        pieces: vec![piece(&[(0, 0), (1, 0), (2, 1), (0, 1)])],
        systems: vec![CaseSystem {
            name: "three-concurrent-lines",
            system: ConstraintSystem {
                vars: vec![
                    "m1".into(),
                    "m2".into(),
                    "m3".into(),
                    "n1".into(),
                    "n2".into(),
                ],
                inequalities: vec![
                    LinExpr::new().m(1).var("m1", -1),
                    LinExpr::new().m(1).var("m2", -1),
                    LinExpr::new().m(1).var("m3", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", 1)
                        .var("m2", -1)
                        .var("m3", -1)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", -1)
                        .var("m2", 1)
                        .var("m3", -1)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", -1)
                        .var("m2", -1)
                        .var("m3", 1)
                        .var("n1", -1)
                        .var("n2", -1),
                ],
                s_expr: LinExpr::new().var("m1", 1).var("m3", 1).var("n1", 1),
                t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
            },
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: None,
        expected_ratio: ratq(9, 7),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 4, case 1: no exceptional curve through the point.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(4),
        label: "d4-case1",
        pieces: vec![piece(&[(0, 0), (2, 0), (0, 2)])],
        systems: vec![CaseSystem {
            name: "diagonal-family-double",
            system: diagonal_family(2, 1),
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: None,
        expected_ratio: ratq(3, 2),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 4, case 2: one exceptional curve through the point.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(4),
        label: "d4-case2",
        pieces: vec![piece(&[(0, 0), (2, 0), (0, 2)])],
        systems: vec![CaseSystem {
            name: "line-conic-one-curve",
            system: ConstraintSystem {
                vars: vec!["m1".into(), "m2".into(), "n1".into(), "n2".into()],
                inequalities: vec![
                    LinExpr::new()
                        .m(1)
                        .var("m1", 1)
                        .var("m2", -2)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(2)
                        .var("m1", -2)
                        .var("n1", -1)
                        .var("n2", -1),
                ],
                s_expr: LinExpr::new().var("m1", 1).var("n1", 1),
                t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
            },
            check: SystemCheck::Advisory,
        }],
        generators: None,
        expected_ratio: ratq(3, 2),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 4, case 3: two exceptional curves through the point.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(4),
        label: "d4-case3",
        pieces: vec![
            piece(&[(0, 0), (1, 0), (2, 1), (0, 1)]),
            piece(&[(1, 1), (2, 1), (1, 2)]),
        ],
        systems: vec![
            CaseSystem {
                name: "generator-simplex",
                system: generator_simplex(&[
                    mono(0, 0),
                    mono(1, 0),
                    mono(0, 1),
                    mono(1, 1),
                    mono(2, 1),
                ]),
                check: SystemCheck::Exact { piece: 0 },
            },
            CaseSystem {
                name: "upper-strip",
                system: shifted_simplex(1, 1),
                check: SystemCheck::Exact { piece: 1 },
            },
            CaseSystem {
                name: "three-lines-raw",
                system: ConstraintSystem {
                    vars: vec![
                        "m1".into(),
                        "m2".into(),
                        "m3".into(),
                        "n1".into(),
                        "n2".into(),
                    ],
                    inequalities: vec![
                        LinExpr::new().m(1).var("m1", -1),
                        LinExpr::new().m(1).var("m2", -1),
                        LinExpr::new().m(1).var("m3", -1),
                        LinExpr::new()
                            .m(1)
                            .var("m1", 1)
                            .var("m2", -1)
                            .var("m3", -1)
                            .var("n1", -1)
                            .var("n2", -1),
                        LinExpr::new()
                            .m(1)
                            .var("m1", -1)
                            .var("m2", 1)
                            .var("m3", -1)
                            .var("n1", -1)
                            .var("n2", -1),
                        LinExpr::new()
                            .m(2)
                            .var("m1", -1)
                            .var("m2", -1)
                            .var("n1", -1)
                            .var("n2", -1),
                        // Total degree of the section is 3m.
                        LinExpr::new()
                            .m(3)
                            .var("m1", -1)
                            .var("m2", -1)
                            .var("m3", -1)
                            .var("n1", -1)
                            .var("n2", -1),
                    ],
                    s_expr: LinExpr::new().var("m1", 1).var("m3", 1).var("n1", 1),
                    t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
                },
                check: SystemCheck::Advisory,
            },
        ],
        generators: Some(vec![
            mono(0, 0),
            mono(1, 0),
            mono(0, 1),
            mono(1, 1),
            mono(2, 1),
        ]),
        expected_ratio: ratq(12, 11),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 5, case 1: no anticanonical member with a triple point. The
    // strip piece carries the declared coefficient 1 (exact moment 169/192).
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(5),
        label: "d5-case1",
        pieces: vec![
            piece(&[(0, 0), (2, 0), (0, 2)]),
            piece_q(
                &[
                    ((5, 4), (3, 4)),
                    ((2, 1), (0, 1)),
                    ((5, 2), (0, 1)),
                    ((5, 4), (5, 4)),
                ],
                Some(Rational::one()),
            ),
        ],
        systems: vec![
            CaseSystem {
                name: "generator-simplex",
                system: generator_simplex(&[
                    mono(0, 0),
                    mono(1, 0),
                    mono(0, 1),
                    mono(2, 0),
                    mono(1, 1),
                    mono(0, 2),
                ]),
                check: SystemCheck::Exact { piece: 0 },
            },
            CaseSystem {
                name: "right-strip",
                system: ConstraintSystem {
                    vars: vec!["sg".into(), "tu".into()],
                    inequalities: vec![
                        LinExpr::new().m(-5).var("sg", 4),
                        LinExpr::new().m(-2).var("sg", 1).var("tu", 1),
                        LinExpr::new().m(5).var("sg", -2).var("tu", -2),
                    ],
                    s_expr: LinExpr::new().var("sg", 1),
                    t_expr: LinExpr::new().var("tu", 1),
                },
                check: SystemCheck::Exact { piece: 1 },
            },
        ],
        generators: Some(vec![
            mono(0, 0),
            mono(1, 0),
            mono(0, 1),
            mono(2, 0),
            mono(1, 1),
            mono(0, 2),
        ]),
        expected_ratio: ratq(15, 14),
        printed: true,
        count_equals_basis: false,
    });

    // Degree 5, case 2: an anticanonical member with a triple point.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(5),
        label: "d5-case2",
        pieces: vec![piece(&[(0, 0), (2, 0), (1, 2), (0, 1)])],
        systems: vec![CaseSystem {
            name: "generator-simplex",
            system: generator_simplex(&[
                mono(0, 0),
                mono(1, 0),
                mono(0, 1),
                mono(2, 0),
                mono(1, 1),
                mono(1, 2),
            ]),
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: Some(vec![
            mono(0, 0),
            mono(1, 0),
            mono(0, 1),
            mono(2, 0),
            mono(1, 1),
            mono(1, 2),
        ]),
        expected_ratio: ratq(15, 13),
        printed: true,
        count_equals_basis: true,
    });

    // Degree 6, case 1, subcase 1: the point on no exceptional curve.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(6),
        label: "dp6-case1-sub1",
        pieces: vec![piece(&[(0, 0), (2, 0), (2, 1), (0, 2)])],
        systems: vec![CaseSystem {
            name: "generator-simplex",
            system: generator_simplex(&[
                mono(0, 0),
                mono(1, 0),
                mono(0, 1),
                mono(2, 0),
                mono(1, 1),
                mono(0, 2),
                mono(2, 1),
            ]),
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: Some(vec![
            mono(0, 0),
            mono(1, 0),
            mono(0, 1),
            mono(2, 0),
            mono(1, 1),
            mono(0, 2),
            mono(2, 1),
        ]),
        expected_ratio: ratq(9, 8),
        printed: true,
        count_equals_basis: true,
    });

    // Degree 6, case 1, subcase 2: the point on a single exceptional curve.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(6),
        label: "dp6-case1-sub2",
        pieces: vec![piece(&[(0, 0), (2, 0), (2, 1), (1, 2), (0, 1)])],
        systems: vec![CaseSystem {
            name: "generator-simplex",
            system: generator_simplex(&[
                mono(0, 0),
                mono(1, 0),
                mono(0, 1),
                mono(2, 0),
                mono(1, 1),
                mono(2, 1),
                mono(1, 2),
            ]),
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: Some(vec![
            mono(0, 0),
            mono(1, 0),
            mono(0, 1),
            mono(2, 0),
            mono(1, 1),
            mono(2, 1),
            mono(1, 2),
        ]),
        expected_ratio: rat(1),
        printed: true,
        count_equals_basis: true,
    });

    // Degree 6, case 2: intersection point of two exceptional curves; the
    // pipeline runs in the bidegree chart.
    cases.push(CaseSpec {
        surface: Surface::DelPezzo(6),
        label: "dp6-case2",
        pieces: vec![piece(&[(0, 0), (1, 0), (2, 1), (2, 2), (1, 2), (0, 1)])],
        systems: vec![CaseSystem {
            name: "two-rulings",
            system: ConstraintSystem {
                vars: vec!["m1".into(), "m2".into(), "n1".into(), "n2".into()],
                inequalities: vec![
                    LinExpr::new().m(2).var("m1", -1),
                    LinExpr::new().m(2).var("m2", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", 1)
                        .var("m2", -1)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(1)
                        .var("m1", -1)
                        .var("m2", 1)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new().m(2).var("m1", -1).var("n1", -1),
                    LinExpr::new().m(2).var("m2", -1).var("n2", -1),
                ],
                s_expr: LinExpr::new().var("m1", 1).var("n1", 1),
                t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
            },
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: None,
        expected_ratio: rat(1),
        printed: true,
        count_equals_basis: true,
    });

    // The quadric surface: both rulings through the point.
    cases.push(CaseSpec {
        surface: Surface::P1xP1,
        label: "p1xp1-rulings",
        pieces: vec![piece(&[(0, 0), (2, 0), (2, 2), (0, 2)])],
        systems: vec![CaseSystem {
            name: "two-rulings",
            system: ConstraintSystem {
                vars: vec!["m1".into(), "m2".into(), "n1".into(), "n2".into()],
                inequalities: vec![
                    LinExpr::new().m(2).var("m1", -1),
                    LinExpr::new().m(2).var("m2", -1),
                    LinExpr::new()
                        .m(2)
                        .var("m2", -1)
                        .var("n1", -1)
                        .var("n2", -1),
                    LinExpr::new()
                        .m(2)
                        .var("m1", -1)
                        .var("n1", -1)
                        .var("n2", -1),
                ],
                s_expr: LinExpr::new().var("m1", 1).var("n1", 1),
                t_expr: LinExpr::new().var("m2", 1).var("n2", 1),
            },
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: None,
        expected_ratio: rat(1),
        printed: true,
        count_equals_basis: true,
    });

    // The plane: the full space of degree ≤ 3m monomials; v_m = m·ℓ_m.
    cases.push(CaseSpec {
        surface: Surface::P2,
        label: "p2-anchor",
        pieces: vec![piece(&[(0, 0), (3, 0), (0, 3)])],
        systems: vec![CaseSystem {
            name: "degree-bound",
            system: ConstraintSystem {
                vars: vec!["sg".into(), "tu".into()],
                inequalities: vec![LinExpr::new().m(3).var("sg", -1).var("tu", -1)],
                s_expr: LinExpr::new().var("sg", 1),
                t_expr: LinExpr::new().var("tu", 1),
            },
            check: SystemCheck::Exact { piece: 0 },
        }],
        generators: None,
        expected_ratio: rat(1),
        printed: true,
        count_equals_basis: true,
    });

    cases
}

pub fn cases_for(surface: Surface) -> Vec<CaseSpec> {
    case_registry()
        .into_iter()
        .filter(|c| c.surface == surface)
        .collect()
}

pub fn find_case(label: &str) -> Result<CaseSpec> {
    case_registry()
        .into_iter()
        .find(|c| c.label == label)
        .ok_or_else(|| Error::UnknownCase(label.into()))
}

/// Sampled m values of every certificate.
pub const CERTIFICATE_SAMPLES: [i64; 4] = [4, 8, 12, 16];

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub label: String,
    pub pieces: Vec<RegionSpec>,
    /// Declared κ (drives the ratio).
    pub kappa: Rational,
    /// Exact κ; differs from `kappa` only on the rounded strip piece.
    pub kappa_exact: Rational,
    pub ratio: Rational,
    pub samples: Vec<(i64, BigInt)>,
    pub fit_c3: Rational,
}

/// Machine-checkable record of a surface's δ lower bound.
#[derive(Debug, Clone)]
pub struct DeltaCertificate {
    pub surface: Surface,
    pub cases: Vec<CaseReport>,
    pub bound: Rational,
    pub notes: Vec<String>,
}

/// Assemble the certificate: per-case κ with cubic-fit cross-check, ratio,
/// and the final bound = min over the surface's cases.
pub fn delta_lower_bound(surface: Surface) -> Result<DeltaCertificate> {
    let cases = cases_for(surface);
    if cases.is_empty() {
        return Err(Error::UnknownSurface(surface.name()));
    }
    let mut reports = Vec::new();
    let mut notes = Vec::new();
    let mut bound: Option<Rational> = None;
    for case in &cases {
        let kappa_exact = case.exact_kappa()?;
        let kappa = case.declared_kappa()?;
        if kappa < kappa_exact {
            return Err(Error::InvalidInput(format!(
                "{}: declared coefficient underestimates the exact moment",
                case.label
            )));
        }
        if kappa != kappa_exact {
            notes.push(format!(
                "{}: declared coefficient {} rounds the exact moment {} upward; the ratio \
                 stays a valid lower bound",
                case.label, kappa, kappa_exact
            ));
        }
        let samples: Vec<(i64, Rational)> = CERTIFICATE_SAMPLES
            .iter()
            .map(|&m| case.lattice_sum(m).map(|s| (m, Rational::from_integer(s))))
            .collect::<Result<_>>()?;
        let fit = cubic_fit(&samples)?;
        if fit.c3 != kappa_exact {
            return Err(Error::InconsistentFit(format!(
                "{}: lattice cubic leading coefficient {} differs from the exact moment {}",
                case.label, fit.c3, kappa_exact
            )));
        }
        let ratio = case.ratio()?;
        if ratio != case.expected_ratio {
            return Err(Error::InvalidInput(format!(
                "{}: computed ratio {} differs from the registered {}",
                case.label, ratio, case.expected_ratio
            )));
        }
        bound = Some(match bound {
            None => ratio.clone(),
            Some(b) => b.min(ratio.clone()),
        });
        reports.push(CaseReport {
            label: case.label.to_string(),
            pieces: case.regions(),
            kappa,
            kappa_exact,
            ratio,
            samples: CERTIFICATE_SAMPLES
                .iter()
                .map(|&m| (m, case.lattice_sum(m).unwrap()))
                .collect(),
            fit_c3: fit.c3,
        });
    }
    Ok(DeltaCertificate {
        surface,
        cases: reports,
        bound: bound.unwrap(),
        notes,
    })
}

/// Expected δ lower bounds of the pipelines.
pub fn expected_bound(surface: Surface) -> Rational {
    match surface {
        Surface::DelPezzo(1) => ratq(3, 2),
        Surface::DelPezzo(2) => ratq(6, 5),
        Surface::DelPezzo(3) => ratq(36, 31),
        Surface::DelPezzo(4) => ratq(12, 11),
        Surface::DelPezzo(5) => ratq(15, 14),
        Surface::DelPezzo(6) | Surface::P2 | Surface::P1xP1 => Rational::one(),
        Surface::DelPezzo(_) => unreachable!("degrees 1-6 only"),
    }
}

/// End-to-end plane pipeline at level m: assignment → anchor → threshold
/// loop, certifying c₀ ≥ 1/(m·ℓ_m) for the product of a section basis.
pub fn verify_anchor_bound(m: i64, basis: &[BiPoly]) -> Result<CertifiedBound> {
    let ell = Surface::P2.ell(m);
    if BigInt::from(basis.len()) != ell {
        return Err(Error::InvalidInput(format!(
            "expected {} basis elements, got {}",
            ell,
            basis.len()
        )));
    }
    // Sheared bases may exceed degree 3m; the binding requirement is that
    // the assignment's anchor lands on (m·ℓ_m, m·ℓ_m), checked below.
    let assignment = injective_assignment(basis, MonomialOrder::GrlexXY)?;
    let anchor = product_anchor(&assignment.assigned);
    let m_ell = BigInt::from(m) * &ell;
    let m_ell_i64 = i64::try_from(&m_ell).expect("m·ℓ_m fits i64");
    if BigInt::from(anchor.s) != m_ell || BigInt::from(anchor.t) != m_ell {
        return Err(Error::InvalidInput(format!(
            "assignment anchor ({}, {}) is not the expected ({m_ell}, {m_ell})",
            anchor.s, anchor.t
        )));
    }
    // Basis elements that are units at the origin contribute divisors missing
    // the point; drop them (this can only raise the threshold, and the anchor
    // inequality survives since their assigned weight is non-negative).
    let vanishing: Vec<&BiPoly> = basis
        .iter()
        .filter(|p| p.coeff(Monomial2::new(0, 0)).is_zero())
        .collect();
    if vanishing.is_empty() {
        return Ok(CertifiedBound {
            bound: Rational::one(),
            exact: true,
            stalled: None,
            trace: vec![],
        });
    }
    let product = vanishing.iter().fold(BiPoly::one(), |acc, p| acc.mul(p));
    let result = lct_lower_bound(&product, m_ell_i64 as u32)?;
    let target = Rational::new(BigInt::one(), m_ell);
    if result.bound < target {
        return Err(Error::InvalidInput(format!(
            "certified bound {} fell below 1/(m·ℓ_m) = {}",
            result.bound, target
        )));
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::shear;
    use num_traits::Signed;

    #[test]
    fn registry_is_complete_and_labelled_once() {
        let cases = case_registry();
        assert_eq!(cases.len(), 20);
        let mut labels: Vec<&str> = cases.iter().map(|c| c.label).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 20);
        for d in 1..=6u8 {
            assert!(!cases_for(Surface::DelPezzo(d)).is_empty());
        }
    }

    #[test]
    fn registered_regions_and_ratios() {
        let d3s3 = find_case("d3-case2-sub3").unwrap();
        assert_eq!(d3s3.pieces.len(), 1);
        assert_eq!(d3s3.ratio().unwrap(), ratq(9, 7));
        let dp6c2 = find_case("dp6-case2").unwrap();
        assert_eq!(dp6c2.exact_kappa().unwrap(), rat(3));
        let d1c2 = find_case("d1-case2").unwrap();
        assert_eq!(d1c2.exact_kappa().unwrap(), ratq(8, 24));
    }

    #[test]
    fn printed_ratio_values() {
        let expect: Vec<(&str, Rational)> = vec![
            ("d1-case1", rat(3)),
            ("d1-case2", ratq(3, 2)),
            ("d2-case1", ratq(6, 5)),
            ("d2-case2-sub1", rat(2)),
            ("d2-case2-sub2", rat(2)),
            ("d3-case1", ratq(12, 7)),
            ("d3-case2-sub1-line2", ratq(36, 31)),
            ("d3-case2-sub2", ratq(18, 11)),
            ("d3-case2-sub3", ratq(9, 7)),
            ("d4-case1", ratq(3, 2)),
            ("d4-case2", ratq(3, 2)),
            ("d4-case3", ratq(12, 11)),
            ("d5-case1", ratq(15, 14)),
            ("d5-case2", ratq(15, 13)),
            ("dp6-case1-sub1", ratq(9, 8)),
            ("dp6-case1-sub2", rat(1)),
            ("dp6-case2", rat(1)),
            ("p1xp1-rulings", rat(1)),
            ("p2-anchor", rat(1)),
        ];
        for (label, value) in expect {
            let case = find_case(label).unwrap();
            assert_eq!(case.ratio().unwrap(), value, "{label}");
            assert_eq!(case.expected_ratio, value, "{label}");
        }
        let aux = find_case("d3-case2-sub1-line1").unwrap();
        assert!(!aux.printed);
        assert_eq!(aux.ratio().unwrap(), ratq(36, 23));
    }

    #[test]
    fn delta_bounds_match_expected_table() {
        for surface in Surface::all() {
            let cert = delta_lower_bound(surface).unwrap();
            assert_eq!(cert.bound, expected_bound(surface), "{}", surface.name());
        }
    }

    #[test]
    fn basis_count_cases_match_ell() {
        for case in case_registry() {
            if !case.count_equals_basis {
                continue;
            }
            for m in 1..=30 {
                assert_eq!(
                    case.lattice_count(m).unwrap(),
                    case.surface.ell(m),
                    "{} at m = {m}",
                    case.label
                );
            }
        }
    }

    #[test]
    fn lattice_sums_converge_to_kappa() {
        // |Σs(m)/m³ − κ| ≤ C/m with C from the fitted cubic, on the valid
        // sampling grid up to m = 50.
        for case in case_registry() {
            for piece in &case.pieces {
                let region = &piece.region;
                let p = region.period();
                let kappa = crate::regions::leading_coefficient(region).unwrap();
                let samples: Vec<(i64, Rational)> = (1..=4)
                    .map(|k| {
                        let m = k * p;
                        (
                            m,
                            Rational::from_integer(
                                crate::regions::lattice_sum_s(region, m).unwrap(),
                            ),
                        )
                    })
                    .collect();
                let fit = cubic_fit(&samples).unwrap();
                let c = fit.c2.clone().abs() + fit.c1.clone().abs() + fit.c0.clone().abs();
                let mut m = p;
                while m <= 50 {
                    let sum =
                        Rational::from_integer(crate::regions::lattice_sum_s(region, m).unwrap());
                    let m3 = rat(m) * rat(m) * rat(m);
                    let diff = (sum / m3 - &kappa).abs();
                    assert!(diff <= &c / rat(m), "{} at m = {m}", case.label);
                    m += p;
                }
            }
        }
    }

    #[test]
    fn certificates_are_deterministic() {
        let a = format!("{:?}", delta_lower_bound(Surface::DelPezzo(5)).unwrap());
        let b = format!("{:?}", delta_lower_bound(Surface::DelPezzo(5)).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn anchor_bound_monomial_basis() {
        let basis: Vec<BiPoly> = (0u32..=3)
            .flat_map(|d| (0..=d).map(move |t| BiPoly::monomial(mono(d - t, t), rat(1))))
            .collect();
        let cert = verify_anchor_bound(1, &basis).unwrap();
        assert!(cert.bound >= ratq(1, 10));
    }

    #[test]
    fn anchor_bound_pre_sheared_basis() {
        let basis: Vec<BiPoly> = (0u32..=3)
            .flat_map(|d| (0..=d).map(move |t| BiPoly::monomial(mono(d - t, t), rat(1))))
            .map(|p| shear(&p, &rat(1), 2))
            .collect();
        let cert = verify_anchor_bound(1, &basis).unwrap();
        assert!(cert.bound >= ratq(1, 10));
        // Pivots are untouched by the degree-raising shear.
        assert!(crate::assignment::assert_shear_stability(
            &basis,
            &rat(-1),
            2,
            MonomialOrder::GrlexXY
        )
        .unwrap());
    }

    #[test]
    fn anchor_bound_rejects_wrong_size() {
        assert!(verify_anchor_bound(1, &[BiPoly::one()]).is_err());
    }
}
