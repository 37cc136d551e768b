//! rcbij: Kirillov-Reshetikhin crystals, rigged configurations and the
//! bijection between them, for all nonexceptional affine types.
//!
//! Exit status: 0 on success, 1 on a domain error, 2 on verification
//! failure. The environment variable RCBIJ_BUDGET overrides the node
//! budget.

use clap::{Parser, Subcommand};
use rcbij_core::bijection;
use rcbij_core::cartan::{AffineType, Family};
use rcbij_core::crystal::DEFAULT_BUDGET;
use rcbij_core::energy;
use rcbij_core::error::Error;
use rcbij_core::json::{self, PathJson, RcJson};
use rcbij_core::kr::FactorSpec;
use rcbij_core::rc::MultArray;
use rcbij_core::verify;
use rcbij_core::world::World;
use serde_json::json;

#[derive(Parser)]
#[command(name = "rcbij", about = "KR crystals, rigged configurations and the bijection between them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Map a highest weight path to its rigged configuration
    Phi {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        factors: String,
        #[arg(long = "in")]
        input: String,
        /// emit the full ladder of intermediate path / configuration pairs
        #[arg(long)]
        trace: bool,
    },
    /// Map a rigged configuration back to its highest weight path
    PhiInv {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        factors: String,
        #[arg(long = "in")]
        input: String,
    },
    /// List the highest weight paths of a tensor product
    EnumPaths {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        factors: String,
        #[arg(long)]
        weight: Option<String>,
    },
    /// List the rigged configurations of a multiplicity array
    EnumRcs {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        factors: String,
        #[arg(long)]
        weight: Option<String>,
    },
    /// Intrinsic energy of a path
    Energy {
        #[arg(long)]
        path: String,
    },
    /// Apply combinatorial R-matrices at the given positions (from the right)
    Rmatrix {
        #[arg(long = "in")]
        input: String,
        #[arg(long)]
        positions: String,
    },
    /// One-dimensional sum X and fermionic sum M at a weight
    Xm {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        factors: String,
        #[arg(long)]
        weight: String,
    },
    /// Run the verification suites over an instance catalog
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value = "default")]
        catalog: String,
        #[arg(long)]
        out: Option<String>,
    },
    /// Classical decomposition and maximal element of one KR factor
    Describe {
        #[arg(long = "type")]
        typ: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        factor: String,
    },
}

fn budget() -> usize {
    std::env::var("RCBIJ_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

fn parse_type(name: &str, rank: usize) -> Result<AffineType, Error> {
    let family = Family::from_name(name)
        .ok_or_else(|| Error::Malformed(format!("unknown family {name:?}")))?;
    AffineType::new(family, rank)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &str) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Malformed(format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Error::Malformed(format!("bad JSON in {path}: {e}")))
}

fn run() -> Result<i32, Error> {
    let cli = Cli::parse();
    let budget = budget();
    match cli.command {
        Command::Phi {
            typ,
            rank,
            factors,
            input,
            trace,
        } => {
            let typ = parse_type(&typ, rank)?;
            let factors = json::parse_factors(&factors)?;
            json::check_factors(typ, &factors)?;
            let pj: PathJson = read_json(&input)?;
            let path = json::path_from_json(&pj)?;
            if path.typ != typ || path.factors != factors {
                return Err(Error::Malformed(
                    "path file does not match the requested type and factors".into(),
                ));
            }
            let w = World::new(typ)?;
            let rc = w.phi(&path)?;
            let mut out = serde_json::to_value(json::rc_to_json(&rc)).unwrap();
            if trace {
                let steps = if typ.is_simply_laced() {
                    let (replayed, steps) = bijection::phi_inv_traced(typ, &factors, &rc)?;
                    if replayed != path {
                        return Err(Error::Internal("trace replay mismatch".into()));
                    }
                    steps
                } else {
                    // ambient ladder for the folded families
                    let folded = rcbij_core::virt::Folded::new(typ)?;
                    let ambient = rcbij_core::virt::flatten(&folded, &path)?;
                    let amb_rc = bijection::phi(&ambient)?;
                    let (replayed, steps) =
                        bijection::phi_inv_traced(folded.ambient_typ(), &ambient.factors, &amb_rc)?;
                    if replayed != ambient {
                        return Err(Error::Internal("trace replay mismatch".into()));
                    }
                    steps
                };
                out["trace"] = serde_json::to_value(json::trace_to_json(&steps)?).unwrap();
            }
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Command::PhiInv {
            typ,
            rank,
            factors,
            input,
        } => {
            let typ = parse_type(&typ, rank)?;
            let factors = json::parse_factors(&factors)?;
            json::check_factors(typ, &factors)?;
            let rj: RcJson = read_json(&input)?;
            let rc = json::rc_from_json(&rj)?;
            if rc.typ != typ {
                return Err(Error::Malformed("configuration type mismatch".into()));
            }
            let w = World::new(typ)?;
            let path = w.phi_inv(&factors, &rc)?;
            let out = json::path_to_json(&path)?;
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Command::EnumPaths {
            typ,
            rank,
            factors,
            weight,
        } => {
            let typ = parse_type(&typ, rank)?;
            let factors = json::parse_factors(&factors)?;
            json::check_factors(typ, &factors)?;
            let w = World::new(typ)?;
            let lam = weight
                .map(|s| json::parse_weight(&s, typ.rank))
                .transpose()?;
            let mut out = Vec::new();
            for p in w.enumerate_highest(&factors, budget)? {
                let pw = w.path_weight(&p);
                if lam.as_ref().is_none_or(|l| *l == pw) {
                    out.push(json!({
                        "weight": pw,
                        "path": json::path_to_json(&p)?,
                    }));
                }
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "paths": out })).unwrap()
            );
        }
        Command::EnumRcs {
            typ,
            rank,
            factors,
            weight,
        } => {
            let typ = parse_type(&typ, rank)?;
            let factors = json::parse_factors(&factors)?;
            json::check_factors(typ, &factors)?;
            let l = MultArray::from_factors(&factors);
            let lams = match weight {
                Some(s) => vec![json::parse_weight(&s, typ.rank)?],
                None => verify::rc_weights(typ, &l),
            };
            let mut out = Vec::new();
            for lam in lams {
                for rc in rcbij_core::rc::enumerate_rcs(typ, &l, &lam, budget)? {
                    out.push(json!({
                        "weight": lam,
                        "cc2x": rc.cocharge_2x(&l),
                        "rc": json::rc_to_json(&rc),
                    }));
                }
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({ "rcs": out })).unwrap()
            );
        }
        Command::Energy { path } => {
            let pj: PathJson = read_json(&path)?;
            let p = json::path_from_json(&pj)?;
            let w = World::new(p.typ)?;
            if !w.path_is_highest(&p) {
                return Err(Error::ShapeMismatch(
                    "energy is reported for highest weight paths".into(),
                ));
            }
            let (d2x, prov) = energy::intrinsic_energy_2x(&w, &p, budget)?;
            let d = if d2x % 2 == 0 {
                json!(d2x / 2)
            } else {
                json!(d2x as f64 / 2.0)
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "D": d,
                    "D2x": d2x,
                    "provenance": prov.as_str(),
                }))
                .unwrap()
            );
        }
        Command::Rmatrix { input, positions } => {
            let pj: PathJson = read_json(&input)?;
            let mut p = json::path_from_json(&pj)?;
            let w = World::new(p.typ)?;
            for part in positions.split(',') {
                let pos: usize = part
                    .trim()
                    .parse()
                    .map_err(|_| Error::Malformed(format!("bad position {part:?}")))?;
                p = energy::apply_r_at(&w, &p, pos, budget)?;
            }
            println!(
                "{}",
                serde_json::to_string_pretty(&json::path_to_json(&p)?).unwrap()
            );
        }
        Command::Xm {
            typ,
            rank,
            factors,
            weight,
        } => {
            let typ = parse_type(&typ, rank)?;
            let factors = json::parse_factors(&factors)?;
            json::check_factors(typ, &factors)?;
            let lam = json::parse_weight(&weight, typ.rank)?;
            let w = World::new(typ)?;
            let l = MultArray::from_factors(&factors);
            let (x, prov) = verify::x_polynomial(&w, &factors, &lam, budget)?;
            let m = verify::m_polynomial(typ, &l, &lam, budget)?;
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "X": x.to_string(),
                    "M": m.to_string(),
                    "equal": x == m,
                    "provenance": prov.as_str(),
                }))
                .unwrap()
            );
            if x != m {
                return Ok(2);
            }
        }
        Command::Verify { suite, catalog, out } => {
            let suites: Vec<&str> = if suite == "all" {
                verify::ALL_SUITES.to_vec()
            } else {
                suite.split(',').map(|s| s.trim()).collect()
            };
            for s in &suites {
                if !verify::ALL_SUITES.contains(s) {
                    return Err(Error::Malformed(format!("unknown suite {s:?}")));
                }
            }
            let instances = match catalog.as_str() {
                "default" => verify::default_catalog(),
                other => return Err(Error::Malformed(format!("unknown catalog {other:?}"))),
            };
            let report = verify::run_suites(&suites, &instances, budget);
            for c in &report.checks {
                let status = if c.status { "PASS" } else { "FAIL" };
                println!("{status} {} [{}]", c.name, c.instance);
                if let Some(wit) = &c.witness {
                    println!("     {wit}");
                }
            }
            println!("passed: {}, failed: {}", report.passed(), report.failed());
            if let Some(path) = out {
                let j = json::report_to_json(&report);
                std::fs::write(&path, serde_json::to_string_pretty(&j).unwrap())
                    .map_err(|e| Error::Malformed(format!("cannot write {path}: {e}")))?;
            }
            if report.failed() > 0 {
                return Ok(2);
            }
        }
        Command::Describe { typ, rank, factor } => {
            let typ = parse_type(&typ, rank)?;
            let factors = json::parse_factors(&factor)?;
            let spec: FactorSpec = factors[0];
            json::check_factors(typ, &factors)?;
            let w = World::new(typ)?;
            let elems = w.factor_elements(spec, budget)?;
            let mut components = Vec::new();
            for lam in decomposition(&w, spec, &elems) {
                let count = elems
                    .iter()
                    .filter(|e| w.component_weight(e) == lam)
                    .count();
                components.push(json!({ "weight": lam, "size": count }));
            }
            let maximal = w.maximal(spec)?;
            let p = rcbij_core::paths::Path::new(typ, vec![spec], vec![maximal]);
            println!(
                "{}",
                serde_json::to_string_pretty(&json!({
                    "type": { "family": typ.family.name(), "rank": typ.rank },
                    "r": spec.r,
                    "s": spec.s,
                    "elements": elems.len(),
                    "components": components,
                    "maximal": json::path_to_json(&p)?.factors[0],
                }))
                .unwrap()
            );
        }
    }
    Ok(0)
}

fn decomposition(
    w: &World,
    _spec: FactorSpec,
    elems: &[rcbij_core::crystal::Node],
) -> Vec<Vec<i64>> {
    let mut lams: Vec<Vec<i64>> = elems.iter().map(|e| w.component_weight(e)).collect();
    lams.sort();
    lams.dedup();
    lams
}

fn main() {
    match run() {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::to_string(&json!({
                    "error": e.code(),
                    "message": e.to_string(),
                }))
                .unwrap()
            );
            std::process::exit(1);
        }
    }
}
