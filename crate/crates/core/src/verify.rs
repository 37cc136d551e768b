//! Batch verification: the desk-scale instance catalog, the X and M
//! generating polynomials, and the suites realizing the structural
//! propositions and the X = M identity as executable checks.

use crate::bijection::{self, Driver};
use crate::cartan::{AffineType, Family, Weight};
use crate::energy::{self, Provenance};
use crate::error::{Error, Result};
use crate::kr::FactorSpec;
use crate::paths::Path;
use crate::poly::QPoly;
use crate::rc::{ambient_mult_array, emb_rc, emb_rc_inv, enumerate_rcs, MultArray, Rc};
use crate::world::World;
use std::collections::{BTreeMap, BTreeSet};

/// A test instance: affine type plus an ordered factor list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub typ: AffineType,
    pub factors: Vec<FactorSpec>,
}

impl std::fmt::Display for Instance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} n={}:", self.typ.family.name(), self.typ.rank)?;
        for spec in &self.factors {
            write!(f, " B{},{}", spec.r, spec.s)?;
        }
        Ok(())
    }
}

/// Ambient box count of one factor (its own boxes for the simply-laced
/// families).
pub fn ambient_boxes(typ: AffineType, spec: FactorSpec) -> usize {
    match typ.ambient_factors(spec.r, spec.s) {
        Ok(afs) => afs.into_iter().map(|(r, s)| r * s).sum(),
        Err(_) => spec.r * spec.s,
    }
}

/// The default catalog: each family at its minimal rank and one above,
/// factor multisets of size <= 3 drawn from {(1,1),(2,1),(1,2),(2,2),(n,1)},
/// at most 10 ambient boxes in total.
pub fn default_catalog() -> Vec<Instance> {
    let mut out = Vec::new();
    for family in Family::ALL {
        for rank in [family.min_rank(), family.min_rank() + 1] {
            let typ = AffineType::new(family, rank).unwrap();
            let mut shapes: Vec<FactorSpec> = vec![
                FactorSpec::new(1, 1),
                FactorSpec::new(2, 1),
                FactorSpec::new(1, 2),
                FactorSpec::new(2, 2),
                FactorSpec::new(rank, 1),
            ];
            shapes.retain(|s| s.r >= 1 && s.r <= rank);
            shapes.sort();
            shapes.dedup();
            // multisets of size 1..=3 under the box cap
            let mut sets: Vec<Vec<FactorSpec>> = Vec::new();
            let k = shapes.len();
            for i in 0..k {
                sets.push(vec![shapes[i]]);
                for j in i..k {
                    sets.push(vec![shapes[i], shapes[j]]);
                    for m in j..k {
                        sets.push(vec![shapes[i], shapes[j], shapes[m]]);
                    }
                }
            }
            for mut factors in sets {
                let boxes: usize = factors
                    .iter()
                    .map(|&s| ambient_boxes(typ, s))
                    .sum();
                if boxes > 10 {
                    continue;
                }
                // display order: taller and wider factors first
                factors.sort_by(|a, b| (b.r, b.s).cmp(&(a.r, a.s)));
                out.push(Instance { typ, factors });
            }
        }
    }
    out.dedup();
    out
}

/// All dominant weights that can carry a rigged configuration for the
/// multiplicity array: scan the box-count grid bounded by the solution of
/// the zero-weight system.
pub fn rc_weights(typ: AffineType, l: &MultArray) -> Vec<Weight> {
    let n = typ.rank;
    let cart = typ.classical_cartan();
    let a2 = matches!(typ.family, Family::A2Even | Family::A2EvenDagger);
    // doubled modified Cartan matrix
    let mat2: Vec<Vec<i64>> = (1..=n)
        .map(|a| {
            (1..=n)
                .map(|b| {
                    if a2 {
                        let x = match typ.family {
                            Family::A2Even => b,
                            _ => a,
                        };
                        if x == n {
                            cart[a - 1][b - 1]
                        } else {
                            2 * cart[a - 1][b - 1]
                        }
                    } else {
                        2 * cart[a - 1][b - 1]
                    }
                })
                .collect()
        })
        .collect();
    let sbar: Vec<i64> = (1..=n)
        .map(|a| {
            l.0.iter()
                .filter(|((r, _), _)| *r == a)
                .map(|((_, s), &c)| c * *s as i64)
                .sum()
        })
        .collect();
    // bound: eta <= solution of (2 Abar) eta = 2 sbar
    let bound = match rational_solve_floor(&mat2, &sbar.iter().map(|&x| 2 * x).collect::<Vec<_>>())
    {
        Some(b) => b,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    let mut eta = vec![0i64; n];
    'outer: loop {
        // lambda_a = kappa_a (sbar_a - Abar eta): in doubled units
        let mut ok = true;
        let mut lam = vec![0i64; n];
        for a in 1..=n {
            let dot: i64 = (1..=n).map(|b| mat2[a - 1][b - 1] * eta[b - 1]).sum();
            let lam2x = typ.kappa(a) * (2 * sbar[a - 1] - dot);
            if lam2x < 0 || lam2x % 2 != 0 {
                ok = false;
                break;
            }
            lam[a - 1] = lam2x / 2;
        }
        if ok {
            out.push(lam);
        }
        let mut a = 0;
        while a < n {
            eta[a] += 1;
            if eta[a] <= bound[a] {
                continue 'outer;
            }
            eta[a] = 0;
            a += 1;
        }
        break;
    }
    out.sort();
    out.dedup();
    out
}

/// Exact rational solve with floors, for the eta bound.
fn rational_solve_floor(mat: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<i64>> {
    let n = mat.len();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut row: Vec<i128> = mat[i].iter().map(|&x| x as i128).collect();
            row.push(rhs[i] as i128);
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| m[r][col] != 0)?;
        m.swap(col, p);
        for r in 0..n {
            if r != col && m[r][col] != 0 {
                let (x, y) = (m[col][col], m[r][col]);
                for c in 0..=n {
                    m[r][c] = m[r][c] * x - m[col][c] * y;
                }
            }
        }
    }
    let mut out = vec![0i64; n];
    for i in 0..n {
        let (p, q) = (m[i][n], m[i][i]);
        if q == 0 {
            return None;
        }
        let v = p.div_euclid(q);
        out[i] = v.max(0) as i64;
    }
    Some(out)
}

/// M(L, lambda; q): the fermionic sum over rigged configurations.
pub fn m_polynomial(
    typ: AffineType,
    l: &MultArray,
    lambda: &Weight,
    budget: usize,
) -> Result<QPoly> {
    let mut p = QPoly::zero();
    for rc in enumerate_rcs(typ, l, lambda, budget)? {
        p.add_term(rc.cocharge_2x(l), 1);
    }
    Ok(p)
}

/// X(B, lambda; q): the one-dimensional sum over paths, with the provenance
/// of the energy values.
pub fn x_polynomial(
    w: &World,
    factors: &[FactorSpec],
    lambda: &Weight,
    budget: usize,
) -> Result<(QPoly, Provenance)> {
    let mut p = QPoly::zero();
    let mut prov = if w.has_zero_ops() {
        Provenance::Independent
    } else {
        Provenance::ViaPhi
    };
    for path in w.enumerate_highest(factors, budget)? {
        if w.path_weight(&path) != *lambda {
            continue;
        }
        let (d2x, pr) = energy::intrinsic_energy_2x(w, &path, budget)?;
        if pr == Provenance::ViaPhi {
            prov = Provenance::ViaPhi;
        }
        p.add_term(d2x, 1);
    }
    Ok((p, prov))
}

/// One verification outcome.
#[derive(Debug, Clone)]
pub struct Check {
    pub name: String,
    pub instance: String,
    pub status: bool,
    pub witness: Option<String>,
}

#[derive(Debug, Default)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn ok(&mut self, name: &str, instance: &Instance) {
        self.checks.push(Check {
            name: name.into(),
            instance: instance.to_string(),
            status: true,
            witness: None,
        });
    }

    pub fn fail(&mut self, name: &str, instance: &Instance, witness: String) {
        self.checks.push(Check {
            name: name.into(),
            instance: instance.to_string(),
            status: false,
            witness: Some(witness),
        });
    }

    pub fn record(&mut self, name: &str, instance: &Instance, outcome: Result<()>) {
        match outcome {
            Ok(()) => self.ok(name, instance),
            Err(e) => self.fail(name, instance, e.to_string()),
        }
    }

    pub fn passed(&self) -> usize {
        self.checks.iter().filter(|c| c.status).count()
    }

    pub fn failed(&self) -> usize {
        self.checks.len() - self.passed()
    }
}

fn err(msg: String) -> Error {
    Error::Internal(msg)
}

/// Bijection suite: cardinalities per weight, injectivity, both round trips.
pub fn suite_bijection(inst: &Instance, budget: usize, report: &mut Report) {
    let outcome = (|| -> Result<()> {
        let w = World::new(inst.typ)?;
        let l = MultArray::from_factors(&inst.factors);
        let paths = w.enumerate_highest(&inst.factors, budget)?;
        let mut by_weight: BTreeMap<Weight, Vec<&Path>> = BTreeMap::new();
        for p in &paths {
            by_weight.entry(w.path_weight(p)).or_default().push(p);
        }
        let rc_lams: BTreeSet<Weight> = rc_weights(inst.typ, &l)
            .into_iter()
            .filter(|lam| !enumerate_rcs(inst.typ, &l, lam, budget).unwrap_or_default().is_empty())
            .collect();
        let path_lams: BTreeSet<Weight> = by_weight.keys().cloned().collect();
        if rc_lams != path_lams {
            return Err(err(format!(
                "weight supports differ: paths {path_lams:?} vs configurations {rc_lams:?}"
            )));
        }
        let mut seen: BTreeSet<Rc> = BTreeSet::new();
        for (lam, ps) in &by_weight {
            let rcs = enumerate_rcs(inst.typ, &l, lam, budget)?;
            if rcs.len() != ps.len() {
                return Err(err(format!(
                    "cardinality mismatch at {lam:?}: {} paths vs {} configurations",
                    ps.len(),
                    rcs.len()
                )));
            }
            let mut images = BTreeSet::new();
            for p in ps {
                let rc = w.phi(p)?;
                rc.validate(&l)?;
                if rc.weight(&l) != *lam {
                    return Err(err(format!("weight not preserved on {p}")));
                }
                if !seen.insert(rc.clone()) {
                    return Err(err(format!("phi not injective at {p}")));
                }
                images.insert(rc.clone());
                let back = w.phi_inv(&inst.factors, &rc)?;
                if back != **p {
                    return Err(err(format!("phi_inv(phi(p)) != p at {p}")));
                }
            }
            for rc in &rcs {
                if !images.contains(rc) {
                    return Err(err(format!("configuration {rc} not in the image")));
                }
                let p = w.phi_inv(&inst.factors, rc)?;
                if w.phi(&p)? != *rc {
                    return Err(err(format!("phi(phi_inv(rc)) != rc at {rc}")));
                }
            }
        }
        Ok(())
    })();
    report.record("bijection", inst, outcome);
}

/// X = M suite: polynomial identity where the energy is independent,
/// q = 1 cardinality identity plus the theorem-flagged polynomial identity
/// otherwise.
pub fn suite_xm(inst: &Instance, budget: usize, report: &mut Report) {
    let outcome = (|| -> Result<()> {
        let w = World::new(inst.typ)?;
        let l = MultArray::from_factors(&inst.factors);
        let paths = w.enumerate_highest(&inst.factors, budget)?;
        let mut lams: BTreeSet<Weight> = BTreeSet::new();
        for p in &paths {
            lams.insert(w.path_weight(p));
        }
        for lam in lams {
            let (x, prov) = x_polynomial(&w, &inst.factors, &lam, budget)?;
            let m = m_polynomial(inst.typ, &l, &lam, budget)?;
            if x.eval_at_one() != m.eval_at_one() {
                return Err(err(format!(
                    "X(1) != M(1) at {lam:?}: {} vs {}",
                    x.eval_at_one(),
                    m.eval_at_one()
                )));
            }
            if x != m {
                return Err(err(format!(
                    "X != M at {lam:?} ({}): {x} vs {m}",
                    prov.as_str()
                )));
            }
        }
        Ok(())
    })();
    let name = if World::new(inst.typ).map(|w| w.has_zero_ops()).unwrap_or(false) {
        "xm-independent"
    } else {
        "xm-via-Phi"
    };
    report.record(name, inst, outcome);
}

/// R-matrix suite: u (x) u' -> u' (x) u, inverses, invariance of phi, and
/// the Yang-Baxter identity on triples.
pub fn suite_rmatrix(inst: &Instance, budget: usize, report: &mut Report) {
    let outcome = (|| -> Result<()> {
        let w = World::new(inst.typ)?;
        // maximal exchange and round trip on all pairs of factor elements
        for i in 0..inst.factors.len() {
            for j in 0..inst.factors.len() {
                if i == j {
                    continue;
                }
                let (s1, s2) = (inst.factors[i], inst.factors[j]);
                let u1 = w.maximal(s1)?;
                let u2 = w.maximal(s2)?;
                let (a, b) = energy::rmatrix_pair(&w, (s1, s2), (&u1, &u2), budget)?;
                if a != u2 || b != u1 {
                    return Err(err(format!("R(u (x) u') != u' (x) u for B{},{} B{},{}", s1.r, s1.s, s2.r, s2.s)));
                }
                let c1 = w.factor_elements(s1, budget)?;
                let c2 = w.factor_elements(s2, budget)?;
                if c1.len() * c2.len() <= 4000 {
                    for x in c1.iter() {
                        for y in c2.iter() {
                            let (a, b) = energy::rmatrix_pair(&w, (s1, s2), (x, y), budget)?;
                            let (x2, y2) = energy::rmatrix_pair(&w, (s2, s1), (&a, &b), budget)?;
                            if (&x2, &y2) != (x, y) {
                                return Err(err(format!("R o R != id at {x} (x) {y}")));
                            }
                        }
                    }
                }
            }
        }
        // phi is R-invariant on every highest path
        let paths = w.enumerate_highest(&inst.factors, budget)?;
        for p in &paths {
            let rc = w.phi(p)?;
            for pos in 1..inst.factors.len() {
                let q = energy::apply_r_at(&w, p, pos, budget)?;
                if !w.path_is_highest(&q) {
                    return Err(err(format!("R image of a highest path is not highest: {p}")));
                }
                if w.phi(&q)? != rc {
                    return Err(err(format!("phi changed under R at {p} pos {pos}")));
                }
            }
        }
        // Yang-Baxter on triples, on all highest paths
        if inst.factors.len() == 3 {
            for p in &paths {
                let lhs = energy::apply_r_at(
                    &w,
                    &energy::apply_r_at(&w, &energy::apply_r_at(&w, p, 1, budget)?, 2, budget)?,
                    1,
                    budget,
                )?;
                let rhs = energy::apply_r_at(
                    &w,
                    &energy::apply_r_at(&w, &energy::apply_r_at(&w, p, 2, budget)?, 1, budget)?,
                    2,
                    budget,
                )?;
                if lhs != rhs {
                    return Err(err(format!("Yang-Baxter fails at {p}")));
                }
            }
        }
        Ok(())
    })();
    report.record("rmatrix", inst, outcome);
}

/// Involution suite: phi intertwines hwstar with theta, and sigma with
/// varsigma for the simply-laced types.
pub fn suite_involution(inst: &Instance, budget: usize, report: &mut Report) {
    let outcome = (|| -> Result<()> {
        let w = World::new(inst.typ)?;
        let l = MultArray::from_factors(&inst.factors);
        let paths = w.enumerate_highest(&inst.factors, budget)?;
        for p in &paths {
            let q = w.path_hwstar(p);
            if !w.path_is_highest(&q) {
                return Err(err(format!("hwstar image not highest at {p}")));
            }
            let double = w.path_hwstar(&q);
            if double != *p {
                return Err(err(format!("hwstar not involutive at {p}")));
            }
            let lhs = w.phi(&q)?;
            let rhs = w.phi(p)?.theta(&l);
            if lhs != rhs {
                return Err(err(format!("phi o hwstar != theta o phi at {p}")));
            }
        }
        if inst.typ.is_simply_laced() {
            for p in &paths {
                let sp = crate::paths::sigma_path(p)?;
                let lhs = crate::bijection::phi(&sp)?;
                let rhs = bijection::varsigma(&w.phi(p)?)?;
                if lhs != rhs {
                    return Err(err(format!("phi o sigma != varsigma o phi at {p}")));
                }
            }
        }
        Ok(())
    })();
    report.record("involution", inst, outcome);
}

/// Virtualization suite: alignment, image characterization round trips,
/// cocharge and energy scaling, image preservation of the lifted ladder.
pub fn suite_virtual(inst: &Instance, budget: usize, report: &mut Report) {
    if inst.typ.is_simply_laced() {
        return;
    }
    let outcome = (|| -> Result<()> {
        let w = World::new(inst.typ)?;
        let folded = match &w {
            World::Folded(f) => f,
            _ => unreachable!(),
        };
        let gamma0 = inst.typ.scaling_factors()[0];
        for &spec in &inst.factors {
            for el in folded.factor_elements(spec, budget)? {
                if !folded.is_aligned(&el) {
                    return Err(err(format!("misaligned element {el}")));
                }
            }
        }
        let l = MultArray::from_factors(&inst.factors);
        let amb_l = ambient_mult_array(inst.typ, &l)?;
        for lam in rc_weights(inst.typ, &l) {
            for rc in enumerate_rcs(inst.typ, &l, &lam, budget)? {
                let amb = emb_rc(&rc)?;
                amb.validate(&amb_l)?;
                if emb_rc_inv(inst.typ, &amb)? != rc {
                    return Err(err(format!("embedding round trip failed at {rc}")));
                }
                if amb.cocharge_2x(&amb_l) != gamma0 * rc.cocharge_2x(&l) {
                    return Err(err(format!("cc(emb) != gamma_0 cc at {rc}")));
                }
            }
        }
        // lifted ladder agrees with the primary bijection, with image
        // preservation checked at every rung
        let paths = w.enumerate_highest(&inst.factors, budget)?;
        for p in &paths {
            let primary = w.phi(p)?;
            let stepwise = crate::lifted::phi_folded_stepwise(p, budget)?;
            if primary != stepwise {
                return Err(err(format!("stepwise ladder disagrees at {p}")));
            }
        }
        // energy scaling for the ambient type A worlds, computed with the
        // independent ambient machinery on the flattened path
        if w.has_zero_ops() {
            let amb_world = World::new(folded.ambient_typ())?;
            for p in &paths {
                let flat = crate::virt::flatten(folded, p)?;
                let d_folded =
                    energy::intrinsic_energy_independent_2x(&w, p, budget)?;
                let d_ambient =
                    energy::intrinsic_energy_independent_2x(&amb_world, &flat, budget)?;
                if d_ambient != gamma0 * d_folded {
                    return Err(err(format!(
                        "D(emb(b)) != gamma_0 D(b) at {p}: {d_ambient} vs {gamma0}*{d_folded}"
                    )));
                }
            }
        }
        Ok(())
    })();
    report.record("virtual", inst, outcome);
}

/// Commutation suite: left and right path operations commute, the
/// configuration operations commute with the theta-conjugates, the width-s
/// splitter behaves, the box-removal tie break does not matter, and the
/// convexity recurrence holds.
pub fn suite_commutation(inst: &Instance, budget: usize, report: &mut Report) {
    let outcome = (|| -> Result<()> {
        let w = World::new(inst.typ)?;
        let l = MultArray::from_factors(&inst.factors);
        let paths = w.enumerate_highest(&inst.factors, budget)?;
        // [lx, ry] = 0 for the simply-laced types (the folded path maps are
        // the lifted ladders, exercised in the virtual suite)
        if inst.typ.is_simply_laced() && inst.factors.len() >= 2 {
            for p in &paths {
                check_left_right(p)?;
            }
        }
        // [xi, zeta-tilde] = 0 on configurations
        for lam in rc_weights(inst.typ, &l) {
            for rc in enumerate_rcs(inst.typ, &l, &lam, budget)? {
                check_xi_zeta(inst.typ, &rc, &l, budget)?;
                if inst.typ.is_simply_laced() {
                    check_convexity(inst.typ, &rc, &l)?;
                    if l.get(1, 1) >= 1 {
                        let all = bijection::delta_all_choices(&rc, &l, Driver::Box)?;
                        if all.len() != 1 {
                            return Err(err(format!("delta tie-break dependence at {rc}")));
                        }
                    }
                    if inst.typ.family == Family::D1 {
                        for r in [inst.typ.rank - 1, inst.typ.rank] {
                            if l.get(r, 1) >= 1 {
                                let all =
                                    bijection::delta_all_choices(&rc, &l, Driver::Spin(r))?;
                                if all.len() != 1 {
                                    return Err(err(format!(
                                        "delta_sp tie-break dependence at {rc}"
                                    )));
                                }
                            }
                        }
                    }
                }
            }
        }
        // lb^{(s)} corresponds to beta^{(s)} under phi (type D, wide leftmost)
        if inst.typ.family == Family::D1 {
            let spec = inst.factors[0];
            if spec.r >= 2 && spec.r <= inst.typ.rank - 2 {
                for p in &paths {
                    let split = crate::catalog::lb_s_path(p, budget)?;
                    let lhs = bijection::phi(&split)?;
                    let rhs = bijection::beta_s(&bijection::phi(p)?, &l, spec.r, spec.s)?;
                    if lhs != rhs {
                        return Err(err(format!("lb^(s) vs beta^(s) mismatch at {p}")));
                    }
                    // beta^{(s)} preserves vacancy numbers
                    let rc = bijection::phi(p)?;
                    let mut l_new = l.clone();
                    l_new.add(spec.r, spec.s, -1);
                    l_new.add(1, spec.s, 1);
                    l_new.add(spec.r - 1, spec.s, 1);
                    for a in 1..=inst.typ.rank {
                        for i in 1..=4i64 {
                            if rc.vacancy_2x(&l, a, Some(i)) != rhs.vacancy_2x(&l_new, a, Some(i)) {
                                return Err(err(format!(
                                    "beta^(s) changed a vacancy number at {rc}"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    })();
    report.record("commutation", inst, outcome);
}

fn check_left_right(p: &Path) -> Result<()> {
    let apply_left = |p: &Path| -> Result<Path> {
        let spec = p.factors[0];
        let cl = p.cl();
        Ok(if spec.s >= 2 {
            crate::paths::ls(p)?
        } else if crate::kr::is_spin(cl, spec.r) {
            crate::paths::lh_sp(p)?.1
        } else if spec.r >= 2 {
            crate::paths::lb(p)?
        } else {
            crate::paths::lh(p)?.1
        })
    };
    let apply_right = |p: &Path| -> Result<Path> {
        let spec = *p.factors.last().unwrap();
        let cl = p.cl();
        if spec.s >= 2 {
            crate::paths::rs(p)
        } else if crate::kr::is_spin(cl, spec.r) {
            crate::paths::rh_sp(p)
        } else if spec.r >= 2 {
            crate::paths::rb(p)
        } else {
            crate::paths::rh(p)
        }
    };
    let a = apply_right(&apply_left(p)?)?;
    let b = apply_left(&apply_right(p)?)?;
    if a != b {
        return Err(err(format!("[lx, ry] != 0 at {p}")));
    }
    Ok(())
}

/// Available configuration operations for the multiplicity array, with the
/// consumed factor.
fn rc_ops(typ: AffineType, l: &MultArray) -> Vec<(String, FactorSpec)> {
    let n = typ.rank;
    let mut out = Vec::new();
    for (&(r, s), &cnt) in &l.0 {
        if cnt < 1 {
            continue;
        }
        let spin = match typ.family {
            Family::D1 => r >= n - 1,
            Family::D2 | Family::B1 => r == n,
            _ => false,
        };
        if s >= 2 {
            out.push((format!("gamma({r},{s})"), FactorSpec::new(r, s)));
        } else if spin {
            out.push((format!("delta_sp({r})"), FactorSpec::new(r, s)));
        } else if r >= 2 {
            out.push((format!("beta({r})"), FactorSpec::new(r, s)));
        } else {
            out.push(("delta".to_string(), FactorSpec::new(1, 1)));
        }
    }
    out
}

fn apply_rc_op(
    typ: AffineType,
    rc: &Rc,
    l: &MultArray,
    name: &str,
    spec: FactorSpec,
    budget: usize,
) -> Result<(Rc, MultArray)> {
    let mut l_new = l.clone();
    if name.starts_with("gamma") {
        l_new.add(spec.r, spec.s, -1);
        l_new.add(spec.r, 1, 1);
        l_new.add(spec.r, spec.s - 1, 1);
        let out = bijection::gamma_split(rc, l, spec.r, spec.s)?;
        return Ok((out, l_new));
    }
    if name.starts_with("beta") {
        l_new.add(spec.r, 1, -1);
        l_new.add(1, 1, 1);
        l_new.add(spec.r - 1, 1, 1);
        let out = bijection::beta(rc, l, spec.r)?;
        return Ok((out, l_new));
    }
    l_new.add(spec.r, 1, -1);
    if typ.is_simply_laced() {
        let driver = if name.starts_with("delta_sp") {
            Driver::Spin(spec.r)
        } else {
            Driver::Box
        };
        let out = bijection::delta(rc, l, driver)?;
        Ok((out.rc, l_new))
    } else {
        let out = if name.starts_with("delta_sp") {
            crate::lifted::folded_delta_sp(typ, rc, l, budget)?
        } else {
            crate::lifted::folded_delta(typ, rc, l, budget)?
        };
        Ok((out, l_new))
    }
}

fn check_xi_zeta(typ: AffineType, rc: &Rc, l: &MultArray, budget: usize) -> Result<()> {
    let ops = rc_ops(typ, l);
    for (name1, spec1) in &ops {
        for (name2, spec2) in &ops {
            if spec1 == spec2 && l.get(spec1.r, spec1.s) < 2 {
                continue;
            }
            // xi then zeta-tilde
            let first = apply_rc_op(typ, rc, l, name1, *spec1, budget);
            let (rc1, l1) = match first {
                Ok(x) => x,
                Err(_) => continue,
            };
            let tilde_then = {
                let t = rc1.theta(&l1);
                match apply_rc_op(typ, &t, &l1, name2, *spec2, budget) {
                    Ok((r2, l2)) => Some((r2.theta(&l2), l2)),
                    Err(_) => None,
                }
            };
            // zeta-tilde then xi
            let other = {
                let t = rc.theta(l);
                match apply_rc_op(typ, &t, l, name2, *spec2, budget) {
                    Ok((r2, l2)) => {
                        let r2 = r2.theta(&l2);
                        apply_rc_op(typ, &r2, &l2, name1, *spec1, budget).ok()
                    }
                    Err(_) => None,
                }
            };
            if let (Some((a, la)), Some((b, lb))) = (tilde_then, other) {
                if la != lb || a != b {
                    return Err(err(format!(
                        "[{name1}, {name2}-tilde] != 0 at {rc}"
                    )));
                }
            }
        }
    }
    Ok(())
}

fn check_convexity(typ: AffineType, rc: &Rc, l: &MultArray) -> Result<()> {
    let n = typ.rank;
    let cart = typ.classical_cartan();
    let max_len = rc
        .parts
        .iter()
        .flat_map(|p| p.iter().map(|s| s.len))
        .max()
        .unwrap_or(0);
    for a in 1..=n {
        for i in 1..=max_len + 1 {
            let lhs = -rc.vacancy_2x(l, a, Some(i - 1)) + 2 * rc.vacancy_2x(l, a, Some(i))
                - rc.vacancy_2x(l, a, Some(i + 1));
            let rhs: i64 = 2 * l.get(a, i as usize)
                - (1..=n)
                    .map(|b| 2 * cart[a - 1][b - 1] * rc.mult(b, i))
                    .sum::<i64>();
            if lhs != rhs {
                return Err(err(format!("convexity fails at (a={a}, i={i}) on {rc}")));
            }
        }
    }
    Ok(())
}

/// Run the selected suites over the catalog.
pub fn run_suites(
    suites: &[&str],
    instances: &[Instance],
    budget: usize,
) -> Report {
    let mut report = Report::default();
    for inst in instances {
        for &suite in suites {
            match suite {
                "bijection" => suite_bijection(inst, budget, &mut report),
                "xm" => suite_xm(inst, budget, &mut report),
                "rmatrix" => suite_rmatrix(inst, budget, &mut report),
                "involution" => suite_involution(inst, budget, &mut report),
                "virtual" => suite_virtual(inst, budget, &mut report),
                "commutation" => suite_commutation(inst, budget, &mut report),
                _ => {}
            }
        }
    }
    report
}

pub const ALL_SUITES: [&str; 6] = [
    "bijection",
    "xm",
    "rmatrix",
    "involution",
    "virtual",
    "commutation",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::DEFAULT_BUDGET;

    #[test]
    fn catalog_is_populated_for_every_family() {
        let cat = default_catalog();
        for family in Family::ALL {
            assert!(
                cat.iter().filter(|i| i.typ.family == family).count() > 0,
                "{family:?}"
            );
        }
        for inst in &cat {
            assert!(inst.factors.len() <= 3);
            let boxes: usize = inst
                .factors
                .iter()
                .map(|&s| ambient_boxes(inst.typ, s))
                .sum();
            assert!(boxes <= 10);
        }
    }

    #[test]
    fn rc_weight_support_matches_paths_a2() {
        let typ = AffineType::new(Family::A1, 2).unwrap();
        let l = MultArray::from_factors(&[FactorSpec::new(1, 1); 3]);
        let lams = rc_weights(typ, &l);
        assert!(lams.contains(&vec![1, 1]));
        assert!(lams.contains(&vec![3, 0]));
        assert!(lams.contains(&vec![0, 0]));
    }

    #[test]
    fn xm_examples_from_the_corollary() {
        // A_2, three letters, lambda = (1,1): X = M = q + q^2
        let typ = AffineType::new(Family::A1, 2).unwrap();
        let w = World::new(typ).unwrap();
        let factors = vec![FactorSpec::new(1, 1); 3];
        let l = MultArray::from_factors(&factors);
        let (x, prov) = x_polynomial(&w, &factors, &vec![1, 1], DEFAULT_BUDGET).unwrap();
        assert_eq!(prov, Provenance::Independent);
        assert_eq!(x.to_string(), "q+q^2");
        let m = m_polynomial(typ, &l, &vec![1, 1], DEFAULT_BUDGET).unwrap();
        assert_eq!(x, m);
        // A_1, two letters, lambda = 0: X = M = q
        let typ = AffineType::new(Family::A1, 1).unwrap();
        let w = World::new(typ).unwrap();
        let factors = vec![FactorSpec::new(1, 1); 2];
        let l = MultArray::from_factors(&factors);
        let (x, _) = x_polynomial(&w, &factors, &vec![0], DEFAULT_BUDGET).unwrap();
        assert_eq!(x.to_string(), "q");
        assert_eq!(m_polynomial(typ, &l, &vec![0], DEFAULT_BUDGET).unwrap(), x);
        // maximal weight: a single constant term
        let (x, _) = x_polynomial(&w, &factors, &vec![2], DEFAULT_BUDGET).unwrap();
        assert_eq!(x.to_string(), "1");
    }

    #[test]
    fn wider_instances_beyond_the_catalog() {
        // taller and wider factors than the default catalog carries
        let mut instances = Vec::new();
        for (f, n, factors) in [
            (Family::D1, 5usize, vec![FactorSpec::new(3, 2)]),
            (Family::D1, 5, vec![FactorSpec::new(3, 2), FactorSpec::new(1, 1)]),
            (Family::D1, 6, vec![FactorSpec::new(2, 2), FactorSpec::new(6, 1)]),
            // mixed spin heights, leading with either column kind
            (Family::D1, 4, vec![FactorSpec::new(3, 1), FactorSpec::new(4, 1), FactorSpec::new(1, 1)]),
            (Family::D1, 4, vec![FactorSpec::new(4, 1), FactorSpec::new(3, 1), FactorSpec::new(2, 1)]),
            (Family::D1, 4, vec![FactorSpec::new(4, 2), FactorSpec::new(1, 1)]),
            (Family::C1, 3, vec![FactorSpec::new(3, 2)]),
            (Family::C1, 4, vec![FactorSpec::new(2, 1), FactorSpec::new(4, 1)]),
            (Family::B1, 4, vec![FactorSpec::new(2, 2)]),
            // wide spin pairs drive the width splitting of the lifted ladder
            (Family::B1, 3, vec![FactorSpec::new(3, 2)]),
            (Family::A2Odd, 3, vec![FactorSpec::new(3, 2)]),
            (Family::A2Even, 3, vec![FactorSpec::new(3, 1), FactorSpec::new(1, 1)]),
            (Family::D2, 3, vec![FactorSpec::new(3, 2)]),
            (Family::A2Odd, 4, vec![FactorSpec::new(4, 1), FactorSpec::new(1, 1)]),
        ] {
            instances.push(Instance {
                typ: AffineType::new(f, n).unwrap(),
                factors,
            });
        }
        let report = run_suites(&["bijection", "virtual", "commutation"], &instances, DEFAULT_BUDGET);
        let failures: Vec<&Check> = report.checks.iter().filter(|c| !c.status).collect();
        assert!(
            failures.is_empty(),
            "failures: {:?}",
            failures
                .iter()
                .map(|c| format!("{} [{}]: {:?}", c.name, c.instance, c.witness))
                .collect::<Vec<_>>()
        );
    }

    #[test]
    fn suites_pass_on_a_small_cross_section() {
        let mut instances = Vec::new();
        for (f, n, factors) in [
            (Family::A1, 2usize, vec![FactorSpec::new(1, 1); 3]),
            (Family::A1, 2, vec![FactorSpec::new(2, 2), FactorSpec::new(1, 1)]),
            (Family::D1, 4, vec![FactorSpec::new(4, 1), FactorSpec::new(2, 2)]),
            (Family::C1, 2, vec![FactorSpec::new(2, 1), FactorSpec::new(1, 1)]),
            (Family::D2, 2, vec![FactorSpec::new(1, 1), FactorSpec::new(2, 1)]),
            (Family::B1, 3, vec![FactorSpec::new(3, 1)]),
            (Family::A2Odd, 3, vec![FactorSpec::new(3, 1)]),
            (Family::A2EvenDagger, 1, vec![FactorSpec::new(1, 1), FactorSpec::new(1, 1)]),
        ] {
            instances.push(Instance {
                typ: AffineType::new(f, n).unwrap(),
                factors,
            });
        }
        let report = run_suites(&ALL_SUITES, &instances, DEFAULT_BUDGET);
        let failures: Vec<&Check> = report.checks.iter().filter(|c| !c.status).collect();
        assert!(
            failures.is_empty(),
            "failures: {:?}",
            failures
                .iter()
                .map(|c| format!("{} [{}]: {:?}", c.name, c.instance, c.witness))
                .collect::<Vec<_>>()
        );
    }
}
