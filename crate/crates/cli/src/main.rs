//! Command-line entry point: threshold bounds, region tables, projections,
//! assignments, toric bounds, and the δ certificates, all printed as exact
//! fractions.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};
use num_traits::Signed;
use serde_json::{json, Value};

use delcert::atlas::standard_atlas;
use delcert::cases::{
    case_registry, delta_lower_bound, expected_bound, find_case, verify_anchor_bound, Surface,
    SystemCheck,
};
use delcert::exact::{parse_bipoly, BiPoly, MonomialOrder, Rational};
use delcert::newton::{lct_lower_bound, newton_polygon, StepAction};
use delcert::project::{lattice_points, project, region_equal};
use delcert::regions::{instantiate, AffineInM, RegionSpec};
use delcert::svg::{render_newton, render_regions};
use delcert::toric::{delta_m_upper, delta_upper_limit, divisor_coefficient, ToricSurface};
use delcert::Error;

#[derive(Parser)]
#[command(
    name = "delcert",
    version,
    about = "Exact delta-invariant certification toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Append k-digit decimal approximations to exact fractions.
    #[arg(long, global = true, value_name = "K")]
    decimal: Option<u32>,
}

#[derive(Subcommand)]
enum Command {
    /// Certified lower bound for the log canonical threshold at the origin.
    Lct {
        /// Polynomial text, e.g. "x^2 + y^3".
        #[arg(long)]
        poly: String,
        /// Multiplicity cutoff of the resolution loop.
        #[arg(long, default_value_t = 24)]
        threshold: u32,
        /// Print the iteration trace as JSON.
        #[arg(long)]
        trace: bool,
        /// Write the Newton polygon diagram.
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Standard moment table (same as `figure1`).
    Regions {
        #[arg(long)]
        figure1: bool,
    },
    /// The labelled sub-polygon moment table.
    Figure1,
    /// Instantiate a region from JSON and sum/describe it.
    Region {
        /// JSON file: {"vertices": [[[s_slope,s_offset],[t_slope,t_offset]], ...]}.
        #[arg(long, value_name = "FILE")]
        spec: PathBuf,
        #[arg(long)]
        m: i64,
        #[arg(long, value_name = "FILE")]
        svg: Option<PathBuf>,
    },
    /// Project a registered case's systems and compare with the stored region.
    Project {
        /// Case label, e.g. d3-case2-sub3; use `--list` to enumerate.
        #[arg(long, required_unless_present = "list")]
        case: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Injective polynomial → monomial assignment of a basis file.
    Assign {
        /// One polynomial per line.
        #[arg(long, value_name = "FILE")]
        polys: PathBuf,
        #[arg(long, default_value = "grlex-xy")]
        order: String,
    },
    /// δ_m upper bound on a toric surface via its basis-type divisor.
    Toric {
        #[arg(long)]
        surface: String,
        #[arg(long, default_value_t = 1)]
        m: i64,
        /// Emit CSV m,bound for m = 1..=M.
        #[arg(long, value_name = "M")]
        sweep: Option<i64>,
    },
    /// δ lower-bound certificate for a pipeline surface.
    Delta {
        #[arg(long)]
        surface: String,
        /// Restrict the report to one case label.
        #[arg(long)]
        case: Option<String>,
        #[arg(long, value_name = "FILE")]
        json: Option<PathBuf>,
        /// Directory for per-case diagrams at m = 4.
        #[arg(long, value_name = "DIR")]
        svg: Option<PathBuf>,
    },
    /// Run the moment-table and bound-table checks; nonzero exit on mismatch.
    Selftest,
}

fn q(r: &Rational, decimal: Option<u32>) -> String {
    match decimal {
        None => r.to_string(),
        Some(k) => format!("{} ({})", r, decimal_digits(r, k)),
    }
}

fn decimal_digits(r: &Rational, k: u32) -> String {
    let scale = num_bigint::BigInt::from(10u8).pow(k);
    let scaled = (r * Rational::from_integer(scale.clone())).round();
    let whole = scaled.numer() / &scale;
    let frac = (scaled.numer() - &whole * &scale).abs();
    let sign = if r.is_negative() && whole.sign() == num_bigint::Sign::NoSign {
        "-"
    } else {
        ""
    };
    if k == 0 {
        format!("{sign}{whole}")
    } else {
        format!(
            "{sign}{whole}.{:0>width$}",
            frac.to_string(),
            width = k as usize
        )
    }
}

fn region_to_json(region: &RegionSpec) -> Value {
    Value::Array(
        region
            .vertices
            .iter()
            .map(|(s, t)| {
                json!([
                    [s.slope.to_string(), s.offset.to_string()],
                    [t.slope.to_string(), t.offset.to_string()]
                ])
            })
            .collect(),
    )
}

fn region_from_json(value: &Value) -> Result<RegionSpec, Error> {
    let arr = value
        .get("vertices")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::InvalidInput("missing \"vertices\" array".into()))?;
    let mut vertices = Vec::new();
    for v in arr {
        let pair = v
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::InvalidInput("vertex must be a pair".into()))?;
        let mut coords = Vec::new();
        for c in pair {
            let sl = c
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::InvalidInput("coordinate must be [slope, offset]".into()))?;
            let parse = |x: &Value| -> Result<Rational, Error> {
                let text = x
                    .as_str()
                    .map(str::to_string)
                    .or_else(|| x.as_i64().map(|n| n.to_string()))
                    .ok_or_else(|| Error::InvalidInput("expected \"p/q\" string".into()))?;
                Rational::from_str(&text)
                    .map_err(|e| Error::InvalidInput(format!("bad rational {text:?}: {e}")))
            };
            coords.push(AffineInM::new(parse(&sl[0])?, parse(&sl[1])?));
        }
        let t = coords.pop().unwrap();
        let s = coords.pop().unwrap();
        vertices.push((s, t));
    }
    Ok(RegionSpec { vertices })
}

fn region_display(region: &RegionSpec) -> String {
    let term = |a: &AffineInM| -> String {
        use num_traits::{One, Zero};
        if a.slope.is_zero() {
            a.offset.to_string()
        } else {
            let head = if a.slope.is_one() {
                "m".to_string()
            } else {
                format!("{}m", a.slope)
            };
            if a.offset.is_zero() {
                head
            } else {
                format!("{head}+{}", a.offset)
            }
        }
    };
    let parts: Vec<String> = region
        .vertices
        .iter()
        .map(|(s, t)| format!("({}, {})", term(s), term(t)))
        .collect();
    format!("[{}]", parts.join(", "))
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let dec = cli.decimal;
    match cli.command {
        Command::Lct {
            poly,
            threshold,
            trace,
            svg,
        } => {
            let f = parse_bipoly(&poly)?;
            let cert = lct_lower_bound(&f, threshold)?;
            println!("bound: {}", q(&cert.bound, dec));
            println!("exact: {}", cert.exact);
            if let Some(reason) = &cert.stalled {
                println!("stalled: {reason}");
            }
            if trace {
                let steps: Vec<Value> = cert
                    .trace
                    .iter()
                    .map(|s| {
                        let action = match &s.action {
                            StepAction::VertexExit => json!({"kind": "vertex-exit"}),
                            StepAction::VerticalExit => json!({"kind": "vertical-exit"}),
                            StepAction::HorizontalExit => json!({"kind": "horizontal-exit"}),
                            StepAction::MinFormulaExit => json!({"kind": "min-formula-exit"}),
                            StepAction::Shear { root, beta } => json!({
                                "kind": "shear",
                                "root": root.to_string(),
                                "beta": beta,
                            }),
                            StepAction::SwapAxes => json!({"kind": "swap-axes"}),
                            StepAction::Stall { reason } => json!({
                                "kind": "stall",
                                "reason": reason,
                            }),
                        };
                        json!({
                            "action": action,
                            "weight": s.weight.map(|w| json!([w.wx, w.wy])),
                            "wmult": s.wmult,
                            "multiplicities": s.multiplicities,
                            "stage_bound": s.stage_bound.as_ref().map(|b| b.to_string()),
                        })
                    })
                    .collect();
                println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({ "trace": steps })).unwrap()
                );
            }
            if let Some(path) = svg {
                let np = newton_polygon(&f)?;
                let support: Vec<(u32, u32)> = f.support().map(|m| (m.s, m.t)).collect();
                fs::write(&path, render_newton(&np, &support))
                    .map_err(|e| Error::InvalidInput(format!("write {}: {e}", path.display())))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Regions { figure1 } => {
            if !figure1 {
                return Err(Error::InvalidInput(
                    "use --figure1 to print the table".into(),
                ));
            }
            print_figure1(dec)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Figure1 => {
            print_figure1(dec)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Region { spec, m, svg } => {
            if m < 1 {
                return Err(Error::InvalidInput("m must be positive".into()));
            }
            let text = fs::read_to_string(&spec)
                .map_err(|e| Error::InvalidInput(format!("read {}: {e}", spec.display())))?;
            let value: Value = serde_json::from_str(&text)
                .map_err(|e| Error::InvalidInput(format!("bad JSON: {e}")))?;
            let region = region_from_json(&value)?;
            let poly = instantiate(&region, m)?;
            println!("vertices at m={m}:");
            for (s, t) in &poly.vertices {
                println!("  ({}, {})", q(s, dec), q(t, dec));
            }
            println!("degenerate: {}", poly.is_degenerate());
            let sum = delcert::regions::lattice_sum_s(&region, m)?;
            println!("lattice sum of s: {sum}");
            if region.offset_free() {
                println!(
                    "leading coefficient: {}",
                    q(&delcert::regions::leading_coefficient(&region)?, dec)
                );
            }
            if let Some(path) = svg {
                let bound = 3 * m + 2;
                let dots = lattice_points(&poly, bound);
                fs::write(&path, render_regions(&[poly], &dots, true))
                    .map_err(|e| Error::InvalidInput(format!("write {}: {e}", path.display())))?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Project { case, list } => {
            if list {
                for c in case_registry() {
                    println!("{}", c.label);
                }
                return Ok(ExitCode::SUCCESS);
            }
            let case = find_case(&case.unwrap())?;
            println!("case {} — stored region:", case.label);
            for p in &case.pieces {
                println!("  {}", region_display(&p.region));
            }
            for sys in &case.systems {
                let region = project(&sys.system)?;
                println!("system {} projects to:", sys.name);
                println!("  {}", region_display(&region));
                match sys.check {
                    SystemCheck::Exact { piece } => {
                        let ok = region_equal(&region, &case.pieces[piece].region);
                        println!(
                            "  verdict: exact match with stored piece {} = {}",
                            piece, ok
                        );
                    }
                    SystemCheck::Advisory => {
                        println!("  verdict: advisory (stored region simplifies the shadow)");
                    }
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Assign { polys, order } => {
            let order = MonomialOrder::parse(&order)
                .ok_or_else(|| Error::InvalidInput(format!("unknown order {order:?}")))?;
            let text = fs::read_to_string(&polys)
                .map_err(|e| Error::InvalidInput(format!("read {}: {e}", polys.display())))?;
            let list: Vec<BiPoly> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .map(parse_bipoly)
                .collect::<Result<_, _>>()?;
            if list.is_empty() {
                return Err(Error::InvalidInput("no polynomials in file".into()));
            }
            let assignment = delcert::assignment::injective_assignment(&list, order)?;
            for (p, m) in list.iter().zip(&assignment.assigned) {
                println!("{p}  ->  {m}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Toric { surface, m, sweep } => {
            let surface = ToricSurface::parse(&surface)?;
            if let Some(max) = sweep {
                println!("m,bound");
                for m in 1..=max.max(1) {
                    let (v, _) = delta_m_upper(surface, m)?;
                    println!("{m},{v}");
                }
            } else {
                if m < 1 {
                    return Err(Error::InvalidInput("m must be positive".into()));
                }
                let (v, witness) = delta_m_upper(surface, m)?;
                println!("{}", q(&v, dec));
                println!("witness divisor: {witness}");
                println!(
                    "divisor coefficient: {}",
                    q(&divisor_coefficient(surface, m, witness)?, dec)
                );
                println!("limit: {}", q(&delta_upper_limit(surface)?, dec));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Delta {
            surface,
            case,
            json: json_out,
            svg,
        } => {
            let surface = Surface::parse(&surface)?;
            let cert = delta_lower_bound(surface)?;
            let mut all_matched = true;
            if let Some(label) = case {
                let spec = find_case(&label)?;
                if spec.surface != surface {
                    return Err(Error::InvalidInput(format!(
                        "case {label} belongs to {}",
                        spec.surface.name()
                    )));
                }
                let report = cert.cases.iter().find(|c| c.label == label).unwrap();
                println!("case {label}");
                println!("  kappa: {}", q(&report.kappa, dec));
                if report.kappa_exact != report.kappa {
                    println!("  kappa (exact moment): {}", q(&report.kappa_exact, dec));
                }
                println!("  ratio: {}", q(&report.ratio, dec));
                for (m, v) in &report.samples {
                    println!("  v_{m} = {v}");
                }
            } else {
                for report in &cert.cases {
                    println!("{}: ratio {}", report.label, q(&report.ratio, dec));
                }
                println!("{}", q(&cert.bound, dec));
                if cert.bound != expected_bound(surface) {
                    all_matched = false;
                }
            }
            for note in &cert.notes {
                println!("note: {note}");
            }
            if let Some(path) = json_out {
                let cases: Vec<Value> = cert
                    .cases
                    .iter()
                    .map(|c| {
                        json!({
                            "label": c.label,
                            "region": c.pieces.iter().map(region_to_json).collect::<Vec<_>>(),
                            "kappa": c.kappa.to_string(),
                            "kappa_exact": c.kappa_exact.to_string(),
                            "ratio": c.ratio.to_string(),
                            "samples": c.samples.iter()
                                .map(|(m, v)| json!([m, v.to_string()]))
                                .collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                let doc = json!({
                    "surface": surface.name(),
                    "cases": cases,
                    "bound": cert.bound.to_string(),
                    "notes": cert.notes,
                });
                fs::write(&path, serde_json::to_string_pretty(&doc).unwrap())
                    .map_err(|e| Error::InvalidInput(format!("write {}: {e}", path.display())))?;
            }
            if let Some(dir) = svg {
                fs::create_dir_all(&dir)
                    .map_err(|e| Error::InvalidInput(format!("mkdir {}: {e}", dir.display())))?;
                for spec in case_registry().iter().filter(|c| c.surface == surface) {
                    let m = 4;
                    let polys: Vec<_> = spec
                        .pieces
                        .iter()
                        .map(|p| instantiate(&p.region, m))
                        .collect::<Result<_, _>>()?;
                    let mut dots = Vec::new();
                    for p in &polys {
                        for d in lattice_points(p, 16 * m) {
                            if !dots.contains(&d) {
                                dots.push(d);
                            }
                        }
                    }
                    let path = dir.join(format!("{}.svg", spec.label));
                    fs::write(&path, render_regions(&polys, &dots, true)).map_err(|e| {
                        Error::InvalidInput(format!("write {}: {e}", path.display()))
                    })?;
                }
            }
            Ok(if all_matched {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            })
        }
        Command::Selftest => selftest(),
    }
}

fn print_figure1(dec: Option<u32>) -> Result<(), Error> {
    println!("{:<22} {:>12} {:>12}  note", "polygon", "moment", "label");
    for entry in standard_atlas() {
        let moment = entry.exact_moment()?;
        let note = if entry.declared_is_exact {
            ""
        } else {
            "label rounds the exact moment upward"
        };
        let shown = if moment == entry.declared {
            entry.label.to_string()
        } else {
            q(&moment, dec)
        };
        println!(
            "{:<22} {:>12} {:>12}  {}",
            entry.id, shown, entry.label, note
        );
    }
    Ok(())
}

fn selftest() -> Result<ExitCode, Error> {
    let mut mismatches = 0u32;
    for entry in standard_atlas() {
        let moment = entry.exact_moment()?;
        let ok = if entry.declared_is_exact {
            moment == entry.declared
        } else {
            moment < entry.declared
        };
        println!(
            "moment {:<22} {}",
            entry.id,
            if ok { "ok" } else { "MISMATCH" }
        );
        if !ok {
            mismatches += 1;
        }
    }
    for case in case_registry() {
        let ok = case.ratio()? == case.expected_ratio;
        println!(
            "ratio  {:<22} {}",
            case.label,
            if ok { "ok" } else { "MISMATCH" }
        );
        if !ok {
            mismatches += 1;
        }
    }
    for surface in Surface::all() {
        let cert = delta_lower_bound(surface)?;
        let ok = cert.bound == expected_bound(surface);
        println!(
            "bound  {:<22} {} {}",
            surface.name(),
            cert.bound,
            if ok { "ok" } else { "MISMATCH" }
        );
        if !ok {
            mismatches += 1;
        }
    }
    // Anchor pipeline smoke run at m = 1.
    let basis: Vec<BiPoly> = (0u32..=3)
        .flat_map(|d| {
            (0..=d).map(move |t| {
                BiPoly::monomial(
                    delcert::exact::Monomial2::new(d - t, t),
                    delcert::exact::rat(1),
                )
            })
        })
        .collect();
    let anchor = verify_anchor_bound(1, &basis)?;
    let anchor_ok = anchor.bound >= delcert::exact::ratq(1, 10);
    println!(
        "anchor p2 m=1              {}",
        if anchor_ok { "ok" } else { "MISMATCH" }
    );
    if !anchor_ok {
        mismatches += 1;
    }
    if mismatches > 0 {
        println!("selftest: {mismatches} mismatches");
        return Ok(ExitCode::from(3));
    }
    println!("selftest: all checks passed");
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    // Default SIGPIPE disposition so piping into `head` terminates quietly.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
