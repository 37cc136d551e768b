//! Virtual crystals: the folded families realized inside ambient type A or D
//! crystals. A folded-type element is stored as its ambient image (one block
//! per KR factor); the virtual operators act on blocks as products of ambient
//! operators over the node orbits.
//!
//! The classical highest elements of a folded factor are found by pushing the
//! ambient classical highest elements through the ambient bijection and
//! keeping those whose rigged configuration satisfies the explicit image
//! characterization of the embedding; each factor is then the closure of
//! those seeds under the virtual lowering operators.

use crate::cartan::{AffineType, Classical, Family, FoldingData, Weight};
use crate::crystal::{self, Node, Op};
use crate::error::{Error, Result};
use crate::kr::{self, FactorSpec};
use crate::paths::Path;
use crate::rc::{ambient_mult_array, emb_rc, emb_rc_inv, MultArray, Rc};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Folded world data.
#[derive(Debug, Clone)]
pub struct Folded {
    pub typ: AffineType,
    pub fold: FoldingData,
}

impl Folded {
    pub fn new(typ: AffineType) -> Result<Folded> {
        Ok(Folded {
            typ,
            fold: typ.folding()?,
        })
    }

    pub fn ambient_cl(&self) -> Classical {
        self.fold.ambient.classical()
    }

    pub fn ambient_typ(&self) -> AffineType {
        self.fold.ambient
    }

    /// Assemble a block from the ambient factor elements.
    pub fn block_of(parts: Vec<Node>) -> Node {
        if parts.len() == 1 {
            parts.into_iter().next().unwrap()
        } else {
            Node::Tensor(parts)
        }
    }

    /// Split a block back into its ambient factor elements.
    pub fn block_parts(block: &Node, count: usize) -> Vec<Node> {
        if count == 1 {
            vec![block.clone()]
        } else {
            match block {
                Node::Tensor(ps) if ps.len() == count => ps.clone(),
                _ => panic!("malformed ambient block"),
            }
        }
    }

    /// emb of the maximal element: the tensor of ambient maximal elements.
    pub fn maximal_block(&self, spec: FactorSpec) -> Result<Node> {
        let cl = self.ambient_cl();
        let parts = self
            .typ
            .ambient_factors(spec.r, spec.s)?
            .into_iter()
            .map(|(r, s)| kr::maximal(cl, FactorSpec::new(r, s)))
            .collect();
        Ok(Self::block_of(parts))
    }

    /// Folded statistics (phi_a, eps_a) of a block or whole path tensor;
    /// checks the alignment conditions.
    pub fn stats(&self, a: usize, node: &Node) -> (i64, i64) {
        let cl = self.ambient_cl();
        let g = self.fold.gamma[a];
        let vals: Vec<(i64, i64)> = self.fold.orbit[a]
            .iter()
            .map(|&b| crystal::stats(cl, b, node))
            .collect();
        for v in &vals {
            assert_eq!(*v, vals[0], "virtual image is not aligned at node {a}");
        }
        let (phi, eps) = vals[0];
        assert!(
            phi % g == 0 && eps % g == 0,
            "virtual image is not gamma-divisible at node {a}"
        );
        (phi / g, eps / g)
    }

    /// Check alignment without panicking.
    pub fn is_aligned(&self, node: &Node) -> bool {
        let cl = self.ambient_cl();
        for a in 1..=self.typ.rank {
            let g = self.fold.gamma[a];
            let vals: Vec<(i64, i64)> = self.fold.orbit[a]
                .iter()
                .map(|&b| crystal::stats(cl, b, node))
                .collect();
            if vals.iter().any(|v| *v != vals[0]) {
                return false;
            }
            if vals[0].0 % g != 0 || vals[0].1 % g != 0 {
                return false;
            }
        }
        true
    }

    /// Virtual operator on a block: the product over the orbit of the
    /// gamma-th powers of the ambient operators.
    pub fn apply(&self, op: Op, a: usize, node: &Node) -> Option<Node> {
        let cl = self.ambient_cl();
        let (phi, eps) = self.stats(a, node);
        let room = match op {
            Op::E => eps,
            Op::F => phi,
        };
        if room == 0 {
            return None;
        }
        let mut cur = node.clone();
        for &b in &self.fold.orbit[a] {
            for _ in 0..self.fold.gamma[a] {
                cur = crystal::apply(cl, op, b, &cur)
                    .expect("aligned virtual operator application must not fail");
            }
        }
        Some(cur)
    }

    /// Folded classical weight of a block or path tensor.
    pub fn weight(&self, node: &Node) -> Weight {
        (1..=self.typ.rank)
            .map(|a| {
                let (phi, eps) = self.stats(a, node);
                phi - eps
            })
            .collect()
    }

    pub fn is_highest(&self, node: &Node) -> bool {
        (1..=self.typ.rank).all(|a| self.stats(a, node).1 == 0)
    }

    /// Classical highest elements of the folded factor B^{r,s}: ambient
    /// classical highest elements whose rigged configuration lies in the
    /// image of the rigged-configuration embedding.
    pub fn hw_blocks(&self, spec: FactorSpec, budget: usize) -> Result<Vec<Node>> {
        let afs: Vec<FactorSpec> = self
            .typ
            .ambient_factors(spec.r, spec.s)?
            .into_iter()
            .map(|(r, s)| FactorSpec::new(r, s))
            .collect();
        let l = MultArray::from_factors(&[spec]);
        let ambient_hw = crate::catalog::enumerate_highest(self.ambient_typ(), &afs, budget)?;
        let mut out = Vec::new();
        for p in ambient_hw {
            let rc_amb = crate::bijection::phi(&p)?;
            if let Ok(rc) = emb_rc_inv(self.typ, &rc_amb) {
                if rc.validate(&l).is_ok() {
                    out.push(Self::block_of(p.elems));
                }
            }
        }
        Ok(out)
    }

    /// The full folded factor: closure of the highest blocks under the
    /// virtual lowering operators.
    pub fn factor_elements(&self, spec: FactorSpec, budget: usize) -> Result<Vec<Node>> {
        let key = (self.typ, spec);
        {
            let cache = factor_cache().lock().unwrap();
            if let Some(hit) = cache.get(&key) {
                return Ok(hit.as_ref().clone());
            }
        }
        let mut out: Vec<Node> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for seed in self.hw_blocks(spec, budget)? {
            if !seen.insert(seed.clone()) {
                continue;
            }
            let mut queue = vec![seed.clone()];
            out.push(seed);
            while let Some(cur) = queue.pop() {
                for a in 1..=self.typ.rank {
                    if let Some(next) = self.apply(Op::F, a, &cur) {
                        if seen.insert(next.clone()) {
                            if out.len() >= budget {
                                return Err(Error::BudgetExceeded(budget));
                            }
                            out.push(next.clone());
                            queue.push(next);
                        }
                    }
                }
            }
        }
        out.sort();
        let mut cache = factor_cache().lock().unwrap();
        cache.insert(key, Arc::new(out.clone()));
        Ok(out)
    }

    /// Virtual Lusztig involution of a block inside its factor.
    pub fn star_block(&self, node: &Node) -> Node {
        // raise with the virtual operators, recording the word
        let mut cur = node.clone();
        let mut word = Vec::new();
        'raise: loop {
            for a in 1..=self.typ.rank {
                if let Some(next) = self.apply(Op::E, a, &cur) {
                    cur = next;
                    word.push(a);
                    continue 'raise;
                }
            }
            break;
        }
        // lower to the virtual lowest
        'lower: loop {
            for a in 1..=self.typ.rank {
                if let Some(next) = self.apply(Op::F, a, &cur) {
                    cur = next;
                    continue 'lower;
                }
            }
            break;
        }
        let cl0 = self.typ.classical();
        for &a in word.iter().rev() {
            cur = self
                .apply(Op::E, crystal::tau(cl0, a), &cur)
                .expect("virtual star replay must stay inside the component");
        }
        cur
    }
}

fn factor_cache() -> &'static Mutex<HashMap<(AffineType, FactorSpec), Arc<Vec<Node>>>> {
    static CACHE: OnceLock<Mutex<HashMap<(AffineType, FactorSpec), Arc<Vec<Node>>>>> =
        OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

// ---------------------------------------------------------------------------
// Folded paths
// ---------------------------------------------------------------------------

/// Folded statistics of a whole path: signature rule over the blocks using
/// the folded per-block statistics.
pub fn path_stats(w: &Folded, p: &Path, a: usize) -> (i64, i64) {
    let st: Vec<(i64, i64)> = p.elems.iter().map(|e| w.stats(a, e)).collect();
    crystal::signature(&st).stats()
}

pub fn path_apply(w: &Folded, p: &Path, op: Op, a: usize) -> Option<Path> {
    let st: Vec<(i64, i64)> = p.elems.iter().map(|e| w.stats(a, e)).collect();
    let k = crystal::signature(&st).pick(op)?;
    let new = w.apply(op, a, &p.elems[k])?;
    let mut out = p.clone();
    out.elems[k] = new;
    Some(out)
}

pub fn path_weight(w: &Folded, p: &Path) -> Weight {
    (1..=w.typ.rank)
        .map(|a| {
            let (phi, eps) = path_stats(w, p, a);
            phi - eps
        })
        .collect()
}

pub fn path_is_highest(w: &Folded, p: &Path) -> bool {
    (1..=w.typ.rank).all(|a| path_stats(w, p, a).1 == 0)
}

pub fn path_raise(w: &Folded, p: &Path) -> (Path, Vec<usize>) {
    let mut cur = p.clone();
    let mut word = Vec::new();
    'outer: loop {
        for a in 1..=w.typ.rank {
            if let Some(next) = path_apply(w, &cur, Op::E, a) {
                cur = next;
                word.push(a);
                continue 'outer;
            }
        }
        return (cur, word);
    }
}

/// Folded hwstar: reverse the blocks, star each block, raise.
pub fn path_hwstar(w: &Folded, p: &Path) -> Path {
    let factors: Vec<FactorSpec> = p.factors.iter().rev().copied().collect();
    let elems: Vec<Node> = p.elems.iter().rev().map(|e| w.star_block(e)).collect();
    path_raise(w, &Path::new(p.typ, factors, elems)).0
}

/// Flatten a folded path into its ambient path.
pub fn flatten(w: &Folded, p: &Path) -> Result<Path> {
    let mut factors = Vec::new();
    let mut elems = Vec::new();
    for (spec, block) in p.factors.iter().zip(&p.elems) {
        let afs = w.typ.ambient_factors(spec.r, spec.s)?;
        let parts = Folded::block_parts(block, afs.len());
        for ((r, s), el) in afs.into_iter().zip(parts) {
            factors.push(FactorSpec::new(r, s));
            elems.push(el);
        }
    }
    Ok(Path::new(w.ambient_typ(), factors, elems))
}

/// Group an ambient path back into folded blocks.
pub fn unflatten(w: &Folded, factors: &[FactorSpec], ambient: &Path) -> Result<Path> {
    let mut elems = Vec::new();
    let mut pos = 0usize;
    for spec in factors {
        let afs = w.typ.ambient_factors(spec.r, spec.s)?;
        let mut parts = Vec::with_capacity(afs.len());
        for (r, s) in afs {
            if pos >= ambient.factors.len() || ambient.factors[pos] != FactorSpec::new(r, s) {
                return Err(Error::ShapeMismatch(
                    "ambient path does not match the folded factor list".into(),
                ));
            }
            parts.push(ambient.elems[pos].clone());
            pos += 1;
        }
        elems.push(Folded::block_of(parts));
    }
    if pos != ambient.factors.len() {
        return Err(Error::ShapeMismatch("ambient path has extra factors".into()));
    }
    Ok(Path::new(w.typ, factors.to_vec(), elems))
}

/// Phi for a folded type: virtualize, run the ambient bijection, retract.
pub fn phi_folded(p: &Path) -> Result<Rc> {
    let w = Folded::new(p.typ)?;
    let ambient = flatten(&w, p)?;
    let rc_amb = crate::bijection::phi(&ambient)?;
    emb_rc_inv(p.typ, &rc_amb)
}

/// Inverse of phi for a folded type.
pub fn phi_folded_inv(typ: AffineType, factors: &[FactorSpec], rc: &Rc) -> Result<Path> {
    let w = Folded::new(typ)?;
    let l = MultArray::from_factors(factors);
    rc.validate(&l)?;
    let rc_amb = emb_rc(rc)?;
    let mut afs = Vec::new();
    for spec in factors {
        for (r, s) in typ.ambient_factors(spec.r, spec.s)? {
            afs.push(FactorSpec::new(r, s));
        }
    }
    debug_assert_eq!(
        MultArray::from_factors(&afs),
        ambient_mult_array(typ, &l)?
    );
    let ambient = crate::bijection::phi_inv(w.ambient_typ(), &afs, &rc_amb)?;
    unflatten(&w, factors, &ambient)
}

/// All folded highest weight paths over the given factors.
pub fn enumerate_highest_folded(
    typ: AffineType,
    factors: &[FactorSpec],
    budget: usize,
) -> Result<Vec<Path>> {
    let w = Folded::new(typ)?;
    let catalogs: Vec<Vec<Node>> = factors
        .iter()
        .map(|&f| w.factor_elements(f, budget))
        .collect::<Result<Vec<_>>>()?;
    let n = typ.rank;
    let mut states: Vec<(Vec<Node>, Weight)> = vec![(Vec::new(), vec![0i64; n])];
    for catalog in catalogs.iter().rev() {
        let mut next = Vec::new();
        for (chosen, wt) in &states {
            for x in catalog {
                let ok = (1..=n).all(|a| w.stats(a, x).1 <= wt[a - 1]);
                if ok {
                    if next.len() >= budget {
                        return Err(Error::BudgetExceeded(budget));
                    }
                    let mut chosen2 = chosen.clone();
                    chosen2.push(x.clone());
                    let wt2 = crate::cartan::weight_add(wt, &w.weight(x));
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

/// Affine virtual operator at node zero; available when the ambient world is
/// type A (the ambient affine operators come from promotion).
pub fn path_apply_zero(w: &Folded, p: &Path, op: Op) -> Result<Option<Path>> {
    if w.ambient_typ().family != Family::A1 {
        return Err(Error::AffineUnavailable);
    }
    let cl = w.ambient_cl();
    let amb = flatten(w, p)?;
    let mut cur = amb.as_tensor();
    for _ in 0..w.fold.gamma[0] {
        match kr::affine_apply_a(cl, op, &cur) {
            Some(next) => cur = next,
            None => return Ok(None),
        }
    }
    let elems = match cur {
        Node::Tensor(parts) => parts,
        single => vec![single],
    };
    let ambient = Path::new(w.ambient_typ(), amb.factors, elems);
    Ok(Some(unflatten(w, &p.factors, &ambient)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crystal::Tableau;

    fn ty(f: Family, n: usize) -> AffineType {
        AffineType::new(f, n).unwrap()
    }

    const BUDGET: usize = 1_000_000;

    #[test]
    fn d2_box_factor_matches_closed_form() {
        // D_3^{(2)} (n = 2): B^{1,1} has 2n + 2 = 6 elements with the
        // closed-form images a (x) (2n-a+1)^vee etc. inside
        // B_A^{1,1} (x) B_A^{3,1} of A_3^{(1)}
        let typ = ty(Family::D2, 2);
        let w = Folded::new(typ).unwrap();
        let els = w.factor_elements(FactorSpec::new(1, 1), BUDGET).unwrap();
        assert_eq!(els.len(), 6);
        let col_missing = |a: i64| -> Node {
            let entries: Vec<i64> = (1..=4).filter(|&x| x != a).collect();
            Node::Tab(Tableau::new(3, 1, entries))
        };
        let pair = |x: i64, missing: i64| Node::Tensor(vec![Node::Letter(x), col_missing(missing)]);
        // a -> a (x) (2n-a+1)^vee, abar -> (2n-a+1) (x) a^vee,
        // 0 -> n (x) n^vee, empty -> 2n (x) (2n)^vee
        for expected in [
            pair(1, 4),
            pair(2, 3),
            pair(3, 2),
            pair(4, 1),
            pair(2, 2),
            pair(4, 4),
        ] {
            assert!(els.contains(&expected), "missing {expected}");
        }
        // the lambda = 0 seed is the image of the empty-letter element
        let hw = w.hw_blocks(FactorSpec::new(1, 1), BUDGET).unwrap();
        assert_eq!(hw.len(), 2);
        assert!(hw.contains(&pair(1, 4)));
        assert!(hw.contains(&pair(4, 4)));
    }

    #[test]
    fn b1_spin_factor_matches_closed_form() {
        // B_3^{(1)}: emb(s_1,s_2,s_3) = (s, s4^-) (x) (s, s4^+) in
        // B_D^{3,1} (x) B_D^{4,1} of D_4^{(1)}
        let typ = ty(Family::B1, 3);
        let w = Folded::new(typ).unwrap();
        let els = w.factor_elements(FactorSpec::new(3, 1), BUDGET).unwrap();
        assert_eq!(els.len(), 8);
        for s1 in [1i8, -1] {
            for s2 in [1i8, -1] {
                for s3 in [1i8, -1] {
                    let prod = (s1 as i64) * (s2 as i64) * (s3 as i64);
                    let minus: i8 = if prod > 0 { -1 } else { 1 };
                    let plus: i8 = -minus;
                    let expected = Node::Tensor(vec![
                        Node::Spin(vec![s1, s2, s3, minus]),
                        Node::Spin(vec![s1, s2, s3, plus]),
                    ]);
                    assert!(els.contains(&expected), "missing {expected}");
                }
            }
        }
        // every image element satisfies sigma(b) = R(b)
        let amb = w.ambient_typ();
        let amb_world = crate::world::World::new(amb).unwrap();
        let specs = (
            crate::kr::FactorSpec::new(3, 1),
            crate::kr::FactorSpec::new(4, 1),
        );
        for el in &els {
            let (x, y) = match el {
                Node::Tensor(ps) => (ps[0].clone(), ps[1].clone()),
                _ => unreachable!(),
            };
            let (a, b) =
                crate::energy::rmatrix_pair(&amb_world, specs, (&x, &y), BUDGET).unwrap();
            let (_, sx) = crate::paths::sigma_factor(amb, specs.0, &x).unwrap();
            let (_, sy) = crate::paths::sigma_factor(amb, specs.1, &y).unwrap();
            assert_eq!((a, b), (sx, sy), "{x} (x) {y}");
        }
    }

    #[test]
    fn maximal_blocks_have_kappa_scaled_weights() {
        // wt(u) = s kappa_r Lambda-bar_r across all folded families
        for (f, n) in [
            (Family::C1, 2usize),
            (Family::D2, 2),
            (Family::A2Even, 2),
            (Family::A2EvenDagger, 2),
            (Family::B1, 3),
            (Family::A2Odd, 3),
        ] {
            let typ = ty(f, n);
            let w = Folded::new(typ).unwrap();
            for r in 1..=n {
                for s in 1..=2usize {
                    let block = w.maximal_block(FactorSpec::new(r, s)).unwrap();
                    let mut expect = vec![0i64; n];
                    expect[r - 1] = s as i64 * typ.kappa(r);
                    assert_eq!(w.weight(&block), expect, "{f:?} ({r},{s})");
                    assert!(w.is_highest(&block));
                }
            }
        }
    }

    #[test]
    fn folded_factor_cardinalities() {
        // B^{1,1} sizes: C_2 -> 4, A_4^{(2)} -> 5, A_4^{(2)+} -> 5 (B_2
        // vector crystal plus empty), B_3 -> 7, A_5^{(2)} -> 6
        for (f, n, expect) in [
            (Family::C1, 2usize, 4usize),
            (Family::A2Even, 2, 5),
            (Family::A2EvenDagger, 2, 5),
            (Family::B1, 3, 7),
            (Family::A2Odd, 3, 6),
            (Family::D2, 2, 6),
        ] {
            let w = Folded::new(ty(f, n)).unwrap();
            let els = w.factor_elements(FactorSpec::new(1, 1), BUDGET).unwrap();
            assert_eq!(els.len(), expect, "{f:?}");
            for el in &els {
                assert!(w.is_aligned(el), "{f:?}: {el}");
            }
        }
    }

    #[test]
    fn folded_axioms_on_catalogs() {
        for (f, n) in [(Family::C1, 2), (Family::D2, 2), (Family::A2Even, 1)] {
            let typ = ty(f, n);
            let w = Folded::new(typ).unwrap();
            for spec in [FactorSpec::new(1, 1), FactorSpec::new(n, 1)] {
                for el in w.factor_elements(spec, BUDGET).unwrap() {
                    let wt = w.weight(&el);
                    for a in 1..=n {
                        let (phi, eps) = w.stats(a, &el);
                        assert_eq!(phi, eps + wt[a - 1]);
                        if let Some(next) = w.apply(Op::F, a, &el) {
                            assert_eq!(w.apply(Op::E, a, &next), Some(el.clone()));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn c2_phi_folded_round_trip_two_letters() {
        // C_2^{(1)}, (B^{1,1})^{(x)2}, lambda = 0: a unique path and a unique
        // configuration matched by the bijection
        let typ = ty(Family::C1, 2);
        let factors = vec![FactorSpec::new(1, 1); 2];
        let ps = enumerate_highest_folded(typ, &factors, BUDGET).unwrap();
        let l = MultArray::from_factors(&factors);
        let zero: Vec<Path> = ps
            .iter()
            .filter(|p| {
                let w = Folded::new(typ).unwrap();
                path_weight(&w, p) == vec![0, 0]
            })
            .cloned()
            .collect();
        assert_eq!(zero.len(), 1);
        let rcs = crate::rc::enumerate_rcs(typ, &l, &vec![0, 0], BUDGET).unwrap();
        assert_eq!(rcs.len(), 1);
        let rc = phi_folded(&zero[0]).unwrap();
        assert_eq!(rc, rcs[0]);
        let back = phi_folded_inv(typ, &factors, &rc).unwrap();
        assert_eq!(back, zero[0]);
    }

    #[test]
    fn folded_round_trips_all_families_one_factor() {
        for (f, n) in [
            (Family::C1, 2usize),
            (Family::D2, 2),
            (Family::A2Even, 2),
            (Family::A2EvenDagger, 2),
            (Family::B1, 3),
            (Family::A2Odd, 3),
        ] {
            let typ = ty(f, n);
            let spec = FactorSpec::new(2.min(n), 1);
            let factors = vec![spec];
            let l = MultArray::from_factors(&factors);
            let ps = enumerate_highest_folded(typ, &factors, BUDGET).unwrap();
            let w = Folded::new(typ).unwrap();
            let mut by_weight: std::collections::BTreeMap<Weight, usize> =
                std::collections::BTreeMap::new();
            for p in &ps {
                *by_weight.entry(path_weight(&w, p)).or_insert(0) += 1;
                let rc = phi_folded(p).unwrap();
                rc.validate(&l).unwrap();
                assert_eq!(rc.weight(&l), path_weight(&w, p), "{f:?}");
                let back = phi_folded_inv(typ, &factors, &rc).unwrap();
                assert_eq!(back, *p, "{f:?}");
            }
            // cardinality match per weight
            for (lam, count) in by_weight {
                let rcs = crate::rc::enumerate_rcs(typ, &l, &lam, BUDGET).unwrap();
                assert_eq!(rcs.len(), count, "{f:?} lambda {lam:?}");
            }
        }
    }

    #[test]
    fn virtual_e0_exists_for_ambient_a() {
        let typ = ty(Family::C1, 2);
        let w = Folded::new(typ).unwrap();
        let factors = vec![FactorSpec::new(1, 1); 2];
        let p = Path::new(
            typ,
            factors.clone(),
            vec![
                w.maximal_block(FactorSpec::new(1, 1)).unwrap(),
                w.maximal_block(FactorSpec::new(1, 1)).unwrap(),
            ],
        );
        let dn = path_apply_zero(&w, &p, Op::E).unwrap();
        assert!(dn.is_some());
        // and unavailable for ambient D
        let typ = ty(Family::B1, 3);
        let w = Folded::new(typ).unwrap();
        let p = Path::new(
            typ,
            vec![FactorSpec::new(1, 1)],
            vec![w.maximal_block(FactorSpec::new(1, 1)).unwrap()],
        );
        assert!(matches!(
            path_apply_zero(&w, &p, Op::E),
            Err(Error::AffineUnavailable)
        ));
    }
}
