//! Stable JSON formats: affine types, paths, rigged configurations,
//! multiplicity arrays, verification reports and bijection traces.
//! Half-integers are serialized doubled under keys suffixed `2x`.

use crate::bijection::TraceStep;
use crate::cartan::{AffineType, Family};
use crate::crystal::{Node, Tableau};
use crate::error::{Error, Result};
use crate::kr::{self, FactorSpec};
use crate::paths::Path;
use crate::rc::{Rc, RcString};
use crate::verify::{Check, Report};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeJson {
    pub family: String,
    pub rank: usize,
}

impl TypeJson {
    pub fn from(typ: AffineType) -> TypeJson {
        TypeJson {
            family: typ.family.name().to_string(),
            rank: typ.rank,
        }
    }

    pub fn parse(&self) -> Result<AffineType> {
        let family = Family::from_name(&self.family)
            .ok_or_else(|| Error::Malformed(format!("unknown family {:?}", self.family)))?;
        AffineType::new(family, self.rank)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorJson {
    pub r: usize,
    pub s: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<Vec<i64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub signs: Option<Vec<Vec<i8>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ambient: Option<Vec<FactorJson>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PathJson {
    #[serde(rename = "type")]
    pub typ: TypeJson,
    pub factors: Vec<FactorJson>,
}

/// Encode one native factor element.
fn encode_elem(spec: FactorSpec, node: &Node) -> Result<FactorJson> {
    let mut out = FactorJson {
        r: spec.r,
        s: spec.s,
        rows: None,
        signs: None,
        ambient: None,
    };
    match node {
        Node::Letter(x) => out.rows = Some(vec![vec![*x]]),
        Node::Tab(t) => out.rows = Some(t.row_vecs()),
        Node::Spin(s) => out.signs = Some(s.iter().map(|&x| vec![x]).collect()),
        Node::Tensor(cols) => {
            // spin grid: rows of signs across the columns
            let mut grid: Vec<Vec<i8>> = Vec::new();
            for (c, col) in cols.iter().enumerate() {
                match col {
                    Node::Spin(signs) => {
                        if c == 0 {
                            grid = signs.iter().map(|&x| vec![x]).collect();
                        } else {
                            for (i, &x) in signs.iter().enumerate() {
                                grid[i].push(x);
                            }
                        }
                    }
                    _ => return Err(Error::Malformed("unsupported factor payload".into())),
                }
            }
            out.signs = Some(grid);
        }
        Node::Dual(_) => return Err(Error::Malformed("dual nodes are not serialized".into())),
    }
    Ok(out)
}

fn decode_elem(cl: crate::cartan::Classical, f: &FactorJson) -> Result<Node> {
    let spec = FactorSpec::new(f.r, f.s);
    if let Some(rows) = &f.rows {
        if rows.len() != spec.r || rows.iter().any(|row| row.len() != spec.s) {
            return Err(Error::Malformed(format!(
                "factor ({},{}) has a malformed grid",
                f.r, f.s
            )));
        }
        if (spec.r, spec.s) == (1, 1) {
            return Ok(Node::Letter(rows[0][0]));
        }
        let entries = rows.concat();
        return Ok(Node::Tab(Tableau::new(spec.r, spec.s, entries)));
    }
    if let Some(signs) = &f.signs {
        let n = cl.rank();
        if signs.len() != n || signs.iter().any(|row| row.len() != spec.s) {
            return Err(Error::Malformed("malformed spin grid".into()));
        }
        if signs.iter().flatten().any(|&x| x != 1 && x != -1) {
            return Err(Error::Malformed("spin entries must be +1 or -1".into()));
        }
        if spec.s == 1 {
            return Ok(Node::Spin(signs.iter().map(|row| row[0]).collect()));
        }
        let cols: Vec<Node> = (0..spec.s)
            .map(|c| Node::Spin(signs.iter().map(|row| row[c]).collect()))
            .collect();
        return Ok(Node::Tensor(cols));
    }
    Err(Error::Malformed("factor carries no element data".into()))
}

pub fn path_to_json(p: &Path) -> Result<PathJson> {
    let typ = p.typ;
    let mut factors = Vec::new();
    if typ.is_simply_laced() {
        for (spec, el) in p.factors.iter().zip(&p.elems) {
            factors.push(encode_elem(*spec, el)?);
        }
    } else {
        for (spec, block) in p.factors.iter().zip(&p.elems) {
            let afs = typ.ambient_factors(spec.r, spec.s)?;
            let parts = crate::virt::Folded::block_parts(block, afs.len());
            let ambient = afs
                .into_iter()
                .zip(parts)
                .map(|((r, s), el)| encode_elem(FactorSpec::new(r, s), &el))
                .collect::<Result<Vec<_>>>()?;
            factors.push(FactorJson {
                r: spec.r,
                s: spec.s,
                rows: None,
                signs: None,
                ambient: Some(ambient),
            });
        }
    }
    Ok(PathJson {
        typ: TypeJson::from(typ),
        factors,
    })
}

pub fn path_from_json(j: &PathJson) -> Result<Path> {
    let typ = j.typ.parse()?;
    let mut factors = Vec::new();
    let mut elems = Vec::new();
    if typ.is_simply_laced() {
        let cl = typ.classical();
        for f in &j.factors {
            factors.push(FactorSpec::new(f.r, f.s));
            elems.push(decode_elem(cl, f)?);
        }
    } else {
        let fold = typ.folding()?;
        let amb_cl = fold.ambient.classical();
        for f in &j.factors {
            let spec = FactorSpec::new(f.r, f.s);
            let afs = typ.ambient_factors(f.r, f.s)?;
            let ambient = f
                .ambient
                .as_ref()
                .ok_or_else(|| Error::Malformed("folded factor needs an ambient list".into()))?;
            if ambient.len() != afs.len()
                || ambient
                    .iter()
                    .zip(&afs)
                    .any(|(aj, &(r, s))| (aj.r, aj.s) != (r, s))
            {
                return Err(Error::Malformed(
                    "ambient list does not match the factor realization".into(),
                ));
            }
            let parts = ambient
                .iter()
                .map(|aj| decode_elem(amb_cl, aj))
                .collect::<Result<Vec<_>>>()?;
            let block = crate::virt::Folded::block_of(parts);
            factors.push(spec);
            elems.push(block);
        }
    }
    let path = Path::new(typ, factors, elems);
    if !typ.is_simply_laced() {
        let folded = crate::virt::Folded::new(typ)?;
        for block in &path.elems {
            if !folded.is_aligned(block) {
                return Err(Error::OffImage);
            }
        }
    }
    Ok(path)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RcJson {
    #[serde(rename = "type")]
    pub typ: TypeJson,
    pub nu: Vec<Vec<i64>>,
    pub rigging2x: Vec<Vec<i64>>,
}

pub fn rc_to_json(rc: &Rc) -> RcJson {
    RcJson {
        typ: TypeJson::from(rc.typ),
        nu: rc
            .parts
            .iter()
            .map(|p| p.iter().map(|s| s.len).collect())
            .collect(),
        rigging2x: rc
            .parts
            .iter()
            .map(|p| p.iter().map(|s| s.rig2x).collect())
            .collect(),
    }
}

pub fn rc_from_json(j: &RcJson) -> Result<Rc> {
    let typ = j.typ.parse()?;
    if j.nu.len() != typ.rank || j.rigging2x.len() != typ.rank {
        return Err(Error::Malformed(
            "configuration needs one partition per classical node".into(),
        ));
    }
    let parts = j
        .nu
        .iter()
        .zip(&j.rigging2x)
        .map(|(lens, rigs)| {
            if lens.len() != rigs.len() {
                return Err(Error::Malformed("riggings do not match the partition".into()));
            }
            Ok(lens
                .iter()
                .zip(rigs)
                .map(|(&len, &rig2x)| RcString { len, rig2x })
                .collect())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Rc::new(typ, parts))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckJson {
    pub name: String,
    pub instance: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub passed: usize,
    pub failed: usize,
    pub checks: Vec<CheckJson>,
}

pub fn report_to_json(r: &Report) -> ReportJson {
    ReportJson {
        passed: r.passed(),
        failed: r.failed(),
        checks: r
            .checks
            .iter()
            .map(|c: &Check| CheckJson {
                name: c.name.clone(),
                instance: c.instance.clone(),
                status: if c.status { "pass" } else { "fail" }.into(),
                witness: c.witness.clone(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TraceStepJson {
    pub rc_op: String,
    pub path_op: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub emitted: Option<FactorJson>,
    pub selections: Vec<(usize, i64)>,
    pub rc: RcJson,
    pub path: PathJson,
}

pub fn trace_to_json(steps: &[TraceStep]) -> Result<Vec<TraceStepJson>> {
    steps
        .iter()
        .map(|s| {
            let emitted = match &s.emitted {
                Some(Node::Letter(x)) => Some(encode_elem(FactorSpec::new(1, 1), &Node::Letter(*x))?),
                Some(Node::Spin(signs)) => Some(encode_elem(
                    FactorSpec::new(signs.len(), 1),
                    &Node::Spin(signs.clone()),
                )?),
                Some(other) => {
                    return Err(Error::Internal(format!("unexpected emitted element {other}")))
                }
                None => None,
            };
            Ok(TraceStepJson {
                rc_op: s.rc_op.to_string(),
                path_op: s.path_op.to_string(),
                emitted,
                selections: s.selections.clone(),
                rc: rc_to_json(&s.rc_after),
                path: path_to_json(&s.path_after)?,
            })
        })
        .collect()
}

/// Parse "r,s;r,s;..." into a factor list.
pub fn parse_factors(input: &str) -> Result<Vec<FactorSpec>> {
    let mut out = Vec::new();
    for part in input.split(';') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let mut it = part.split(',');
        let r = it
            .next()
            .and_then(|x| x.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Malformed(format!("bad factor spec {part:?}")))?;
        let s = it
            .next()
            .and_then(|x| x.trim().parse::<usize>().ok())
            .ok_or_else(|| Error::Malformed(format!("bad factor spec {part:?}")))?;
        if it.next().is_some() || r < 1 || s < 1 {
            return Err(Error::Malformed(format!("bad factor spec {part:?}")));
        }
        out.push(FactorSpec::new(r, s));
    }
    if out.is_empty() {
        return Err(Error::Malformed("empty factor list".into()));
    }
    Ok(out)
}

/// Parse a comma-separated weight "1,0,2".
pub fn parse_weight(input: &str, rank: usize) -> Result<Vec<i64>> {
    let coeffs = input
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Malformed(format!("bad weight {input:?}")))?;
    if coeffs.len() != rank {
        return Err(Error::Malformed(format!(
            "weight needs {rank} coefficients, got {}",
            coeffs.len()
        )));
    }
    Ok(coeffs)
}

/// Validate factor heights against the type.
pub fn check_factors(typ: AffineType, factors: &[FactorSpec]) -> Result<()> {
    for f in factors {
        if f.r < 1 || f.r > typ.rank || f.s < 1 {
            return Err(Error::InvalidFactor { r: f.r, s: f.s });
        }
        let _ = kr::is_spin(typ.classical(), f.r);
    }
    Ok(())
}
