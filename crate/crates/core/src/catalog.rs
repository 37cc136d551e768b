//! Factor catalogs for the simply-laced types: highest-weight fillings,
//! full KR crystal element sets, highest-path enumeration and the width-s
//! row splitter lb^{(s)}.
//!
//! A highest-weight KR tableau is the inverse bijection image of the unique
//! single-factor rigged configuration of its weight; each factor is the
//! closure of its fillings under the classical lowering operators. Away from
//! the top component the fillings are genuine KR tableaux, with rows that
//! need not weakly increase.

use crate::cartan::{AffineType, Weight};
use crate::crystal::{apply, ComponentGraph, Node, Op, Tableau};
use crate::error::{Error, Result};
use crate::kr::{self, FactorSpec};
use crate::paths::Path;
use crate::rc::{enumerate_rcs, MultArray, Rc};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// The unique rigged configuration of a single factor with the given
/// classical highest weight.
pub fn single_factor_rc(typ: AffineType, spec: FactorSpec, lambda: &Weight) -> Result<Rc> {
    let l = MultArray::from_factors(&[spec]);
    let rcs = enumerate_rcs(typ, &l, lambda, crate::crystal::DEFAULT_BUDGET)?;
    match rcs.len() {
        0 => Err(Error::ShapeMismatch(format!(
            "weight {lambda:?} is not in the decomposition of B^{{{},{}}}",
            spec.r, spec.s
        ))),
        1 => Ok(rcs.into_iter().next().unwrap()),
        k => Err(Error::Internal(format!(
            "single KR factor must be multiplicity free, found {k} configurations"
        ))),
    }
}

/// The unique I_0-highest element of weight `lambda` inside B^{r,s}.
pub fn hw_filling(typ: AffineType, spec: FactorSpec, lambda: &Weight) -> Result<Node> {
    let cl = typ.classical();
    if !kr::classical_decomposition(cl, spec).contains(lambda) {
        return Err(Error::ShapeMismatch(format!(
            "weight {lambda:?} is not in the decomposition of B^{{{},{}}}",
            spec.r, spec.s
        )));
    }
    // top component and spin columns: the maximal element directly
    let max = kr::maximal(cl, spec);
    if crate::crystal::weight(cl, &max) == *lambda {
        return Ok(max);
    }
    let rc = single_factor_rc(typ, spec, lambda)?;
    let p = crate::bijection::phi_inv(typ, &[spec], &rc)?;
    Ok(p.elems.into_iter().next().unwrap())
}

/// All elements of B^{r,s}, cached per (type, spec).
pub fn kr_elements(typ: AffineType, spec: FactorSpec, budget: usize) -> Result<Arc<Vec<Node>>> {
    static CACHE: OnceLock<Mutex<HashMap<(AffineType, FactorSpec), Arc<Vec<Node>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    {
        let hit = cache.lock().unwrap();
        if let Some(found) = hit.get(&(typ, spec)) {
            return Ok(found.clone());
        }
    }
    let cl = typ.classical();
    let mut out = Vec::new();
    for lambda in kr::classical_decomposition(cl, spec) {
        let seed = hw_filling(typ, spec, &lambda)?;
        let g = ComponentGraph::generate(cl, &seed, budget)?;
        out.extend(g.elements);
    }
    out.sort();
    let arc = Arc::new(out);
    cache.lock().unwrap().insert((typ, spec), arc.clone());
    Ok(arc)
}

/// All I_0-highest elements of the tensor product. Factors are scanned
/// right to left; a prefix extends by x exactly when eps_i(x) stays within
/// the weight of the prefix.
pub fn enumerate_highest(
    typ: AffineType,
    factors: &[FactorSpec],
    budget: usize,
) -> Result<Vec<Path>> {
    let cl = typ.classical();
    let catalogs: Vec<Arc<Vec<Node>>> = factors
        .iter()
        .map(|&f| kr_elements(typ, f, budget))
        .collect::<Result<Vec<_>>>()?;
    let n = cl.rank();
    let mut states: Vec<(Vec<Node>, Weight)> = vec![(Vec::new(), vec![0i64; n])];
    for catalog in catalogs.iter().rev() {
        let mut next: Vec<(Vec<Node>, Weight)> = Vec::new();
        for (chosen, wt) in &states {
            for x in catalog.iter() {
                let mut ok = true;
                for i in 1..=n {
                    let (_, eps) = crate::crystal::stats(cl, i, x);
                    if eps > wt[i - 1] {
                        ok = false;
                        break;
                    }
                }
                if ok {
                    if next.len() >= budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    let mut chosen2 = chosen.clone();
                    chosen2.push(x.clone());
                    let wt2 = crate::cartan::weight_add(wt, &crate::crystal::weight(cl, x));
                    next.push((chosen2, wt2));
                }
            }
        }
        states = next;
    }
    let mut out: Vec<Path> = states
        .into_iter()
        .map(|(mut chosen, _)| {
            chosen.reverse();
            Path::new(typ, factors.to_vec(), chosen)
        })
        .collect();
    out.sort_by(|a, b| a.elems.cmp(&b.elems));
    Ok(out)
}

/// lb^{(s)} on a single type D factor B^{r,s} with 1 < r <= n-2: the
/// highest-weight element of weight (s-N) Lambda_r + Lambda_{r-k_N} + ... +
/// Lambda_{r-k_1} maps to
///   `r ... r (r-k_N+1)bar ... (r-k_1+1)bar  (x)  u_{lambda_-}`
/// and the rest of the map commutes with the lowering operators.
pub fn lb_s_factor(
    typ: AffineType,
    spec: FactorSpec,
    node: &Node,
    budget: usize,
) -> Result<(Node, Node)> {
    let cl = typ.classical();
    let n = cl.rank();
    let (r, s) = (spec.r, spec.s);
    if !matches!(typ.family, crate::cartan::Family::D1) || r < 2 || r > n - 2 {
        return Err(Error::ShapeMismatch(format!(
            "lb^(s) needs a type D factor with 1 < r <= n-2, got ({r},{s})"
        )));
    }
    let _ = budget;
    let (hw, raise_word) = crate::crystal::raise(cl, node);
    let lambda = crate::crystal::weight(cl, &hw);
    // removal amounts k_i, largest first
    let mut ks: Vec<usize> = Vec::new();
    for a in 1..r {
        for _ in 0..lambda[a - 1] {
            ks.push(r - a);
        }
    }
    let full: i64 = lambda[r - 1];
    let deficient = s as i64 - full;
    while (ks.len() as i64) < deficient {
        ks.push(r);
    }
    ks.sort_unstable_by(|x, y| y.cmp(x));
    let mut row: Vec<i64> = vec![r as i64; full as usize];
    for &k in ks.iter().rev() {
        row.push(-((r - k + 1) as i64));
    }
    debug_assert_eq!(row.len(), s);
    let mut lambda_minus = vec![0i64; n];
    lambda_minus[r - 2] = full;
    for &k in &ks {
        let idx = r - k + 1;
        if idx >= 1 {
            lambda_minus[idx - 1] += 1;
        }
    }
    let b1 = if s == 1 {
        Node::Letter(row[0])
    } else {
        Node::Tab(Tableau::new(1, s, row))
    };
    let b2 = hw_filling(typ, FactorSpec::new(r - 1, s), &lambda_minus)?;
    let image_hw = Node::Tensor(vec![b1, b2]);
    debug_assert!(crate::crystal::is_highest(cl, &image_hw));
    let mut cur = image_hw;
    for &i in raise_word.iter().rev() {
        cur = apply(cl, Op::F, i, &cur)
            .ok_or_else(|| Error::Internal("lb^(s) image replay left the component".into()))?;
    }
    match cur {
        Node::Tensor(mut parts) => {
            let second = parts.pop().unwrap();
            let first = parts.pop().unwrap();
            Ok((first, second))
        }
        _ => unreachable!(),
    }
}

/// lb^{(s)} as a path map: split the leftmost factor.
pub fn lb_s_path(p: &Path, budget: usize) -> Result<Path> {
    let spec = *p
        .factors
        .first()
        .ok_or_else(|| Error::ShapeMismatch("empty path".into()))?;
    let (b1, b2) = lb_s_factor(p.typ, spec, &p.elems[0], budget)?;
    let mut factors = vec![FactorSpec::new(1, spec.s), FactorSpec::new(spec.r - 1, spec.s)];
    factors.extend_from_slice(&p.factors[1..]);
    let mut elems = vec![b1, b2];
    elems.extend_from_slice(&p.elems[1..]);
    Ok(Path::new(p.typ, factors, elems))
}
