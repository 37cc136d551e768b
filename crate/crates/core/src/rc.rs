//! Rigged configurations: vacancy numbers, validation, enumeration, the
//! complement-rigging involution theta, weight, cocharge, and the ambient
//! embeddings of rigged configurations.
//!
//! Riggings and every other half-integer-capable quantity are stored doubled
//! (suffix `2x`). Type A_{2n}^{(2)dagger} riggings on odd-length rows of the
//! n-th partition are the odd doubled values.

use crate::cartan::{solve_box_counts, AffineType, Family, Weight};
use crate::error::{Error, Result};
use crate::kr::FactorSpec;
use std::collections::BTreeMap;

/// Multiplicity array L_s^{(r)}: number of B^{r,s} factors.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultArray(pub BTreeMap<(usize, usize), i64>);

impl MultArray {
    pub fn from_factors(factors: &[FactorSpec]) -> MultArray {
        let mut m = BTreeMap::new();
        for f in factors {
            *m.entry((f.r, f.s)).or_insert(0) += 1;
        }
        MultArray(m)
    }

    pub fn get(&self, r: usize, s: usize) -> i64 {
        self.0.get(&(r, s)).copied().unwrap_or(0)
    }

    pub fn add(&mut self, r: usize, s: usize, k: i64) {
        let e = self.0.entry((r, s)).or_insert(0);
        *e += k;
        assert!(*e >= 0, "multiplicity array went negative at ({r},{s})");
        if *e == 0 {
            self.0.remove(&(r, s));
        }
    }

    /// sum over s of L_s^{(r)} * min(i, s)
    fn l_term(&self, r: usize, i: i64) -> i64 {
        self.0
            .iter()
            .filter(|((fr, _), _)| *fr == r)
            .map(|((_, fs), &cnt)| cnt * i.min(*fs as i64))
            .sum()
    }

    /// sum over s of L_s^{(r)} * s (number of boxes in column r factors)
    fn box_term(&self, r: usize) -> i64 {
        self.0
            .iter()
            .filter(|((fr, _), _)| *fr == r)
            .map(|((_, fs), &cnt)| cnt * *fs as i64)
            .sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One string: a row length together with its doubled rigging.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RcString {
    pub len: i64,
    pub rig2x: i64,
}

/// A rigged configuration: for each classical node a multiset of strings,
/// kept sorted by decreasing length then decreasing rigging.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rc {
    pub typ: AffineType,
    pub parts: Vec<Vec<RcString>>,
}

impl std::fmt::Display for Rc {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (a, part) in self.parts.iter().enumerate() {
            if a > 0 {
                write!(f, " | ")?;
            }
            if part.is_empty() {
                write!(f, "-")?;
            } else {
                let s: Vec<String> = part
                    .iter()
                    .map(|st| {
                        if st.rig2x % 2 == 0 {
                            format!("{}:{}", st.len, st.rig2x / 2)
                        } else {
                            format!("{}:{}/2", st.len, st.rig2x)
                        }
                    })
                    .collect();
                write!(f, "{}", s.join(","))?;
            }
        }
        Ok(())
    }
}

impl Rc {
    pub fn empty(typ: AffineType) -> Rc {
        Rc {
            typ,
            parts: vec![Vec::new(); typ.rank],
        }
    }

    pub fn new(typ: AffineType, parts: Vec<Vec<RcString>>) -> Rc {
        let mut rc = Rc { typ, parts };
        rc.normalize();
        rc
    }

    pub fn normalize(&mut self) {
        for part in &mut self.parts {
            part.sort_by(|x, y| (y.len, y.rig2x).cmp(&(x.len, x.rig2x)));
        }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.iter().all(|p| p.is_empty())
    }

    /// number of rows of length i in the a-th partition (a is 1-based)
    pub fn mult(&self, a: usize, i: i64) -> i64 {
        self.parts[a - 1].iter().filter(|s| s.len == i).count() as i64
    }

    pub fn boxes(&self, a: usize) -> i64 {
        self.parts[a - 1].iter().map(|s| s.len).sum()
    }

    /// Doubled vacancy number p_i^{(a)}; `len = None` evaluates at infinity.
    pub fn vacancy_2x(&self, l: &MultArray, a: usize, len: Option<i64>) -> i64 {
        let typ = self.typ;
        let n = typ.rank;
        let cart = typ.classical_cartan();
        let a2_override = matches!(typ.family, Family::A2Even | Family::A2EvenDagger);
        let gamma = typ.scaling_factors();
        let mut acc2x: i64 = match len {
            Some(i) => 2 * l.l_term(a, i),
            None => 2 * l.box_term(a),
        };
        for b in 1..=n {
            let aab = cart[a - 1][b - 1];
            if aab == 0 {
                continue;
            }
            let m_sum: i64 = match len {
                Some(i) => {
                    if a2_override {
                        self.parts[b - 1]
                            .iter()
                            .map(|s| i.min(s.len))
                            .sum()
                    } else {
                        let (ga, gb) = (gamma[a], gamma[b]);
                        self.parts[b - 1]
                            .iter()
                            .map(|s| (ga * i).min(gb * s.len))
                            .sum()
                    }
                }
                None => {
                    if a2_override {
                        self.boxes(b)
                    } else {
                        gamma[b] * self.boxes(b)
                    }
                }
            };
            // doubled coefficient of the m-sum
            let coeff2x = if a2_override {
                let x = match typ.family {
                    Family::A2Even => b,
                    _ => a,
                };
                if x == n {
                    aab
                } else {
                    2 * aab
                }
            } else {
                2 * aab / gamma[b]
            };
            acc2x -= coeff2x * m_sum;
        }
        acc2x
    }

    /// A string is singular when its rigging equals its vacancy number.
    pub fn is_singular(&self, l: &MultArray, a: usize, st: RcString) -> bool {
        st.rig2x == self.vacancy_2x(l, a, Some(st.len))
    }

    /// Check all defining conditions against the multiplicity array.
    pub fn validate(&self, l: &MultArray) -> Result<()> {
        let n = self.typ.rank;
        if self.parts.len() != n {
            return Err(Error::InvalidRc(format!(
                "expected {n} partitions, got {}",
                self.parts.len()
            )));
        }
        for a in 1..=n {
            for st in &self.parts[a - 1] {
                if st.len < 1 {
                    return Err(Error::InvalidRc(format!("empty row in partition {a}")));
                }
                let p2x = self.vacancy_2x(l, a, Some(st.len));
                if st.rig2x < 0 || st.rig2x > p2x {
                    return Err(Error::InvalidRc(format!(
                        "rigging {}/2 out of range [0, {}/2] at (a={a}, i={})",
                        st.rig2x, p2x, st.len
                    )));
                }
                let want_odd = self.typ.family == Family::A2EvenDagger
                    && a == n
                    && st.len % 2 == 1;
                if want_odd != (st.rig2x % 2 == 1) {
                    return Err(Error::InvalidRc(format!(
                        "rigging parity violation at (a={a}, i={}, x2={})",
                        st.len, st.rig2x
                    )));
                }
            }
        }
        Ok(())
    }

    /// Classical weight: lambda_a = kappa_a * p_infinity^{(a)}.
    pub fn weight(&self, l: &MultArray) -> Weight {
        (1..=self.typ.rank)
            .map(|a| {
                let p2x = self.vacancy_2x(l, a, None);
                debug_assert!(p2x % 2 == 0, "infinite vacancy must be integral");
                self.typ.kappa(a) * p2x / 2
            })
            .collect()
    }

    /// Affine level coordinate: k_0 with <c, wt> = 0, doubled.
    pub fn k0_2x(&self, l: &MultArray) -> i64 {
        let (_, cv) = self.typ.marks();
        let lam = self.weight(l);
        let sum: i64 = (1..=self.typ.rank).map(|a| cv[a] * lam[a - 1]).sum();
        debug_assert_eq!((2 * sum) % cv[0], 0);
        -2 * sum / cv[0]
    }

    /// Complement every rigging to its corigging.
    pub fn theta(&self, l: &MultArray) -> Rc {
        let parts = (1..=self.typ.rank)
            .map(|a| {
                self.parts[a - 1]
                    .iter()
                    .map(|st| RcString {
                        len: st.len,
                        rig2x: self.vacancy_2x(l, a, Some(st.len)) - st.rig2x,
                    })
                    .collect()
            })
            .collect();
        Rc::new(self.typ, parts)
    }

    /// Cocharge, doubled.
    pub fn cocharge_2x(&self, l: &MultArray) -> i64 {
        let typ = self.typ;
        let mut acc4x: i64 = 0;
        for a in 1..=typ.rank {
            let t2x = typ.tee_vee_2x(a);
            // group rows by length
            let mut lens: Vec<i64> = self.parts[a - 1].iter().map(|s| s.len).collect();
            lens.dedup();
            for &i in lens.iter() {
                let m = self.mult(a, i);
                let lt = l.l_term(a, i);
                let p2x = self.vacancy_2x(l, a, Some(i));
                let term = t2x * m * (2 * lt - p2x);
                debug_assert_eq!(term % 2, 0);
                acc4x += term / 2;
            }
            for st in &self.parts[a - 1] {
                acc4x += t2x * st.rig2x;
            }
        }
        debug_assert_eq!(acc4x % 2, 0, "cocharge must be a half-integer");
        acc4x / 2
    }
}

/// All rigged configurations of the given classical weight: solve the
/// box-count system, enumerate partition shapes, keep shapes whose occupied
/// vacancy numbers are nonnegative, and attach every admissible rigging
/// multiset.
pub fn enumerate_rcs(
    typ: AffineType,
    l: &MultArray,
    lambda: &Weight,
    budget: usize,
) -> Result<Vec<Rc>> {
    let n = typ.rank;
    let cart = typ.classical_cartan();
    let a2_override = matches!(typ.family, Family::A2Even | Family::A2EvenDagger);
    // doubled modified Cartan matrix for the box-count system
    let mat: Vec<Vec<i64>> = (1..=n)
        .map(|a| {
            (1..=n)
                .map(|b| {
                    if a2_override {
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
    let rhs: Vec<i64> = (1..=n)
        .map(|a| {
            let k = typ.kappa(a);
            debug_assert_eq!((2 * lambda[a - 1]) % k, 0);
            2 * l.box_term(a) - 2 * lambda[a - 1] / k
        })
        .collect();
    let eta = match solve_box_counts(&mat, &rhs) {
        Some(x) => x,
        None => return Ok(Vec::new()),
    };
    // enumerate partitions of each eta_a
    fn partitions(total: i64) -> Vec<Vec<i64>> {
        fn rec(rem: i64, max: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if rem == 0 {
                out.push(cur.clone());
                return;
            }
            let top = rem.min(max);
            for part in (1..=top).rev() {
                cur.push(part);
                rec(rem - part, part, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(total, total.max(0), &mut Vec::new(), &mut out);
        out
    }
    let shapes_per_node: Vec<Vec<Vec<i64>>> = eta.iter().map(|&e| partitions(e)).collect();
    let mut out: Vec<Rc> = Vec::new();
    let mut idx = vec![0usize; n];
    'outer: loop {
        // build the shape tuple
        let parts: Vec<Vec<RcString>> = (0..n)
            .map(|a| {
                shapes_per_node[a][idx[a]]
                    .iter()
                    .map(|&len| RcString { len, rig2x: 0 })
                    .collect()
            })
            .collect();
        let shape_rc = Rc::new(typ, parts);
        // vacancies at occupied lengths must admit riggings
        let mut ok = true;
        let mut slots: Vec<(usize, i64, i64, bool)> = Vec::new(); // (a, len, p2x, odd)
        for a in 1..=n {
            let mut lens: Vec<i64> = shape_rc.parts[a - 1].iter().map(|s| s.len).collect();
            lens.dedup();
            for &len in &lens {
                let p2x = shape_rc.vacancy_2x(l, a, Some(len));
                let odd = typ.family == Family::A2EvenDagger && a == n && len % 2 == 1;
                let lo = if odd { 1 } else { 0 };
                if p2x < lo {
                    ok = false;
                    break;
                }
                slots.push((a, len, p2x, odd));
            }
            if !ok {
                break;
            }
        }
        if ok {
            // for each (a,len) group choose a weakly decreasing rigging list
            fn rig_choices(m: i64, p2x: i64, odd: bool) -> Vec<Vec<i64>> {
                let vals: Vec<i64> = if odd {
                    (0..).map(|k| 1 + 2 * k).take_while(|&v| v <= p2x).collect()
                } else {
                    (0..).map(|k| 2 * k).take_while(|&v| v <= p2x).collect()
                };
                fn rec(m: i64, vals: &[i64], hi: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
                    if m == 0 {
                        out.push(cur.clone());
                        return;
                    }
                    for vi in (0..=hi).rev() {
                        cur.push(vals[vi]);
                        rec(m - 1, vals, vi, cur, out);
                        cur.pop();
                    }
                }
                let mut out = Vec::new();
                if !vals.is_empty() {
                    rec(m, &vals, vals.len() - 1, &mut Vec::new(), &mut out);
                }
                out
            }
            let group_choices: Vec<((usize, i64), Vec<Vec<i64>>)> = slots
                .iter()
                .map(|&(a, len, p2x, odd)| {
                    ((a, len), rig_choices(shape_rc.mult(a, len), p2x, odd))
                })
                .collect();
            // cartesian product over groups
            let mut cidx = vec![0usize; group_choices.len()];
            loop {
                let mut rc = shape_rc.clone();
                for (g, ((a, len), choices)) in group_choices.iter().enumerate() {
                    let rigs = &choices[cidx[g]];
                    let mut k = 0usize;
                    for st in rc.parts[a - 1].iter_mut() {
                        if st.len == *len {
                            st.rig2x = rigs[k];
                            k += 1;
                        }
                    }
                }
                rc.normalize();
                debug_assert!(rc.validate(l).is_ok());
                if out.len() >= budget {
                    return Err(Error::BudgetExceeded(budget));
                }
                out.push(rc);
                // advance
                let mut g = 0usize;
                while g < group_choices.len() {
                    cidx[g] += 1;
                    if cidx[g] < group_choices[g].1.len() {
                        break;
                    }
                    cidx[g] = 0;
                    g += 1;
                }
                if g == group_choices.len() {
                    break;
                }
            }
        }
        // advance shape tuple
        let mut a = 0usize;
        while a < n {
            idx[a] += 1;
            if idx[a] < shapes_per_node[a].len() {
                continue 'outer;
            }
            idx[a] = 0;
            a += 1;
        }
        break;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Doubling map on rigged configurations: lengths and riggings doubled.
pub fn emb_2x(rc: &Rc) -> Rc {
    let parts = rc
        .parts
        .iter()
        .map(|p| {
            p.iter()
                .map(|s| RcString {
                    len: 2 * s.len,
                    rig2x: 2 * s.rig2x,
                })
                .collect()
        })
        .collect();
    Rc::new(rc.typ, parts)
}

pub fn emb_2x_inv(rc: &Rc) -> Result<Rc> {
    let parts = rc
        .parts
        .iter()
        .map(|p| {
            p.iter()
                .map(|s| {
                    if s.len % 2 != 0 || s.rig2x % 2 != 0 {
                        Err(Error::OffImage)
                    } else {
                        Ok(RcString {
                            len: s.len / 2,
                            rig2x: s.rig2x / 2,
                        })
                    }
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Rc::new(rc.typ, parts))
}

/// The multiplicity array of the ambient realization.
pub fn ambient_mult_array(typ: AffineType, l: &MultArray) -> Result<MultArray> {
    let mut out = MultArray::default();
    for (&(r, s), &cnt) in &l.0 {
        for (ar, asz) in typ.ambient_factors(r, s)? {
            out.add(ar, asz, cnt);
        }
    }
    Ok(out)
}

/// Embed a rigged configuration into its ambient type: lengths scale by
/// gamma_a, riggings by gamma_a (by 2 at the n-node of the A_{2n}^{(2)}
/// types, where lengths do not scale), copied across the orbit of each node.
pub fn emb_rc(rc: &Rc) -> Result<Rc> {
    let typ = rc.typ;
    let fold = typ.folding()?;
    let n = typ.rank;
    let a2 = matches!(typ.family, Family::A2Even | Family::A2EvenDagger);
    let mut parts: Vec<Vec<RcString>> = vec![Vec::new(); fold.ambient.rank];
    for a in 1..=n {
        let (len_scale, rig_scale) = if a2 && a == n {
            (1, 2)
        } else {
            (fold.gamma[a], fold.gamma[a])
        };
        for &b in &fold.orbit[a] {
            parts[b - 1] = rc.parts[a - 1]
                .iter()
                .map(|s| RcString {
                    len: len_scale * s.len,
                    rig2x: rig_scale * s.rig2x,
                })
                .collect();
        }
    }
    Ok(Rc::new(fold.ambient, parts))
}

/// Retract an ambient rigged configuration along the embedding; errors when
/// the characterization of the image fails.
pub fn emb_rc_inv(typ: AffineType, ambient: &Rc) -> Result<Rc> {
    let fold = typ.folding()?;
    if ambient.typ != fold.ambient {
        return Err(Error::ShapeMismatch("ambient type mismatch".into()));
    }
    let n = typ.rank;
    let a2 = matches!(typ.family, Family::A2Even | Family::A2EvenDagger);
    let mut parts: Vec<Vec<RcString>> = Vec::with_capacity(n);
    for a in 1..=n {
        let (len_scale, rig_scale) = if a2 && a == n {
            (1i64, 2i64)
        } else {
            (fold.gamma[a], fold.gamma[a])
        };
        let first = &ambient.parts[fold.orbit[a][0] - 1];
        for &b in &fold.orbit[a][1..] {
            if ambient.parts[b - 1] != *first {
                return Err(Error::OffImage);
            }
        }
        let rows = first
            .iter()
            .map(|s| {
                if s.len % len_scale != 0 || s.rig2x % rig_scale != 0 {
                    Err(Error::OffImage)
                } else {
                    Ok(RcString {
                        len: s.len / len_scale,
                        rig2x: s.rig2x / rig_scale,
                    })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        parts.push(rows);
    }
    Ok(Rc::new(typ, parts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;
    use crate::crystal::DEFAULT_BUDGET;

    fn ty(f: Family, n: usize) -> AffineType {
        AffineType::new(f, n).unwrap()
    }

    fn rc_of(typ: AffineType, data: &[&[(i64, i64)]]) -> Rc {
        let parts = data
            .iter()
            .map(|rows| {
                rows.iter()
                    .map(|&(len, rig2x)| RcString { len, rig2x })
                    .collect()
            })
            .collect();
        Rc::new(typ, parts)
    }

    #[test]
    fn vacancy_empty_configuration() {
        let typ = ty(Family::A1, 2);
        let l = MultArray::from_factors(&[FactorSpec::new(1, 1); 3]);
        let rc = Rc::empty(typ);
        assert_eq!(rc.vacancy_2x(&l, 1, Some(1)), 6);
        assert_eq!(rc.vacancy_2x(&l, 2, Some(2)), 0);
    }

    #[test]
    fn worked_example_start_vacancies() {
        // D_4^{(1)}, L = {B^{4,1}, B^{2,2}}, nu = ((2),(2,2),(2),(2))
        let typ = ty(Family::D1, 4);
        let l = MultArray::from_factors(&[FactorSpec::new(4, 1), FactorSpec::new(2, 2)]);
        let rc = rc_of(
            typ,
            &[
                &[(2, 0)],
                &[(2, 0), (2, 0)],
                &[(2, 0)],
                &[(2, 2)],
            ],
        );
        assert_eq!(rc.vacancy_2x(&l, 1, Some(2)), 0);
        assert_eq!(rc.vacancy_2x(&l, 2, Some(2)), 0);
        assert_eq!(rc.vacancy_2x(&l, 3, Some(2)), 0);
        assert_eq!(rc.vacancy_2x(&l, 4, Some(2)), 2);
        rc.validate(&l).unwrap();
        // weight is Lambda-bar_4
        assert_eq!(rc.weight(&l), vec![0, 0, 0, 1]);
    }

    #[test]
    fn c5_printed_example_validates() {
        let typ = ty(Family::C1, 5);
        let l = MultArray::from_factors(&[
            FactorSpec::new(2, 4),
            FactorSpec::new(1, 2),
            FactorSpec::new(5, 1),
            FactorSpec::new(3, 2),
        ]);
        let rc = rc_of(
            typ,
            &[
                &[(5, 0), (1, 0)],
                &[(5, 0), (4, 2), (2, 0)],
                &[(5, 0), (4, 0), (2, 0), (2, 0)],
                &[(5, 0), (4, 0), (2, 0), (2, 0)],
                &[(3, 0), (2, 2), (1, 2), (1, 0)],
            ],
        );
        rc.validate(&l).unwrap();
        // printed vacancy spot checks
        assert_eq!(rc.vacancy_2x(&l, 1, Some(5)), 2);
        assert_eq!(rc.vacancy_2x(&l, 1, Some(1)), 0);
        assert_eq!(rc.vacancy_2x(&l, 2, Some(2)), 2);
        assert_eq!(rc.vacancy_2x(&l, 5, Some(3)), 0);
        assert_eq!(rc.vacancy_2x(&l, 5, Some(2)), 2);
        assert_eq!(rc.vacancy_2x(&l, 5, Some(1)), 2);
        // weight is Lambda_1 + Lambda_2 + Lambda_4
        assert_eq!(rc.weight(&l), vec![1, 1, 0, 1, 0]);
        // a rigging above its vacancy is rejected
        let mut bad = rc.clone();
        bad.parts[0][1].rig2x = 2;
        assert!(bad.validate(&l).is_err());
    }

    #[test]
    fn enumerate_small_type_a() {
        // A_2, three letters, lambda = (1,1): two configurations
        let typ = ty(Family::A1, 2);
        let l = MultArray::from_factors(&[FactorSpec::new(1, 1); 3]);
        let rcs = enumerate_rcs(typ, &l, &vec![1, 1], DEFAULT_BUDGET).unwrap();
        assert_eq!(rcs.len(), 2);
        for rc in &rcs {
            assert_eq!(rc.parts[0].len(), 1);
            assert_eq!(rc.parts[0][0].len, 1);
            assert!(rc.parts[1].is_empty());
        }
        let rigs: Vec<i64> = rcs.iter().map(|rc| rc.parts[0][0].rig2x).collect();
        assert_eq!(rigs, vec![0, 2]);
        // maximal weight: only the empty configuration
        let rcs = enumerate_rcs(typ, &l, &vec![3, 0], DEFAULT_BUDGET).unwrap();
        assert_eq!(rcs.len(), 1);
        assert!(rcs[0].is_empty());
        // A_1 two letters, lambda = 0
        let typ = ty(Family::A1, 1);
        let l = MultArray::from_factors(&[FactorSpec::new(1, 1); 2]);
        let rcs = enumerate_rcs(typ, &l, &vec![0], DEFAULT_BUDGET).unwrap();
        assert_eq!(rcs.len(), 1);
        assert_eq!(rcs[0].parts[0], vec![RcString { len: 1, rig2x: 0 }]);
    }

    #[test]
    fn theta_involution_and_weight_preservation() {
        let typ = ty(Family::A1, 2);
        let l = MultArray::from_factors(&[FactorSpec::new(1, 1); 3]);
        for lam in [vec![1, 1], vec![0, 0], vec![3, 0]] {
            for rc in enumerate_rcs(typ, &l, &lam, DEFAULT_BUDGET).unwrap() {
                let t = rc.theta(&l);
                t.validate(&l).unwrap();
                assert_eq!(t.theta(&l), rc);
                assert_eq!(t.weight(&l), rc.weight(&l));
            }
        }
    }

    #[test]
    fn cocharge_examples() {
        // A_1, two letters, nu = (1) rigging 0: cc = 1
        let typ = ty(Family::A1, 1);
        let l = MultArray::from_factors(&[FactorSpec::new(1, 1); 2]);
        let rc = rc_of(typ, &[&[(1, 0)]]);
        assert_eq!(rc.cocharge_2x(&l), 2);
        // empty: 0
        assert_eq!(Rc::empty(typ).cocharge_2x(&l), 0);
        // D_4, single factor B^{2,2}: nu = ((1),(1,1),(1),(1)), riggings 0 -> cc = 1
        let typ = ty(Family::D1, 4);
        let l = MultArray::from_factors(&[FactorSpec::new(2, 2)]);
        let rc = rc_of(typ, &[&[(1, 0)], &[(1, 0), (1, 0)], &[(1, 0)], &[(1, 0)]]);
        rc.validate(&l).unwrap();
        assert_eq!(rc.cocharge_2x(&l), 2);
    }

    #[test]
    fn convexity_recurrence_simply_laced() {
        // -p_{i-1} + 2 p_i - p_{i+1} = L_i - sum_b A_ab m_i^{(b)}
        let typ = ty(Family::D1, 4);
        let l = MultArray::from_factors(&[FactorSpec::new(4, 1), FactorSpec::new(2, 2)]);
        let rc = rc_of(
            typ,
            &[&[(2, 0)], &[(2, 0), (2, 0)], &[(2, 0)], &[(2, 2)]],
        );
        let cart = typ.classical_cartan();
        for a in 1..=4usize {
            for i in 1..=4i64 {
                let lhs = -rc.vacancy_2x(&l, a, Some(i - 1)) + 2 * rc.vacancy_2x(&l, a, Some(i))
                    - rc.vacancy_2x(&l, a, Some(i + 1));
                let rhs: i64 = 2 * l.get(a, i as usize)
                    - (1..=4usize)
                        .map(|b| 2 * cart[a - 1][b - 1] * rc.mult(b, i))
                        .sum::<i64>();
                assert_eq!(lhs, rhs, "a={a} i={i}");
            }
        }
    }

    #[test]
    fn emb_2x_roundtrip_and_theta() {
        let typ = ty(Family::D1, 4);
        let l = MultArray::from_factors(&[FactorSpec::new(2, 2)]);
        let rc = rc_of(typ, &[&[(1, 0)], &[(1, 0), (1, 0)], &[(1, 0)], &[(1, 0)]]);
        let doubled = emb_2x(&rc);
        assert_eq!(doubled.parts[0][0], RcString { len: 2, rig2x: 0 });
        assert_eq!(emb_2x_inv(&doubled).unwrap(), rc);
        // [emb_2x, theta] = 0 needs the doubled multiplicity array
        let mut l2 = MultArray::default();
        for (&(r, s), &c) in &l.0 {
            l2.add(r, 2 * s, c);
        }
        assert_eq!(emb_2x(&rc.theta(&l)), emb_2x(&rc).theta(&l2));
    }

    #[test]
    fn emb_rc_examples() {
        // C_2: nu^{(1)} = (1) rigging x maps to both nu^{(1)} and nu^{(3)}
        let typ = ty(Family::C1, 2);
        let rc = rc_of(typ, &[&[(1, 2)], &[]]);
        let amb = emb_rc(&rc).unwrap();
        assert_eq!(amb.typ, ty(Family::A1, 3));
        assert_eq!(amb.parts[0], vec![RcString { len: 1, rig2x: 2 }]);
        assert_eq!(amb.parts[2], vec![RcString { len: 1, rig2x: 2 }]);
        assert!(amb.parts[1].is_empty());
        assert_eq!(emb_rc_inv(typ, &amb).unwrap(), rc);
        // vacancy scaling: ambient p = gamma_a p (and 2p at the A2 n-node)
        let l = MultArray::from_factors(&[FactorSpec::new(1, 1), FactorSpec::new(2, 1)]);
        let amb_l = ambient_mult_array(typ, &l).unwrap();
        for a in 1..=2usize {
            let fold = typ.folding().unwrap();
            for &b in &fold.orbit[a] {
                for i in 1..=3i64 {
                    assert_eq!(
                        amb.vacancy_2x(&amb_l, b, Some(fold.gamma[a] * i)),
                        fold.gamma[a] * rc.vacancy_2x(&l, a, Some(i)),
                        "a={a} b={b} i={i}"
                    );
                }
            }
        }
        // off-image: asymmetric ambient configuration
        let mut bad = amb.clone();
        bad.parts[0].clear();
        assert!(emb_rc_inv(typ, &bad).is_err());
    }

    #[test]
    fn cc_scales_by_gamma0_under_emb() {
        for (f, n, factors) in [
            (Family::C1, 2usize, vec![FactorSpec::new(1, 1), FactorSpec::new(1, 1)]),
            (Family::D2, 2, vec![FactorSpec::new(1, 1), FactorSpec::new(2, 1)]),
            (Family::A2Even, 2, vec![FactorSpec::new(1, 1), FactorSpec::new(1, 1)]),
            (Family::A2EvenDagger, 2, vec![FactorSpec::new(1, 1)]),
            (Family::B1, 3, vec![FactorSpec::new(1, 1)]),
        ] {
            let typ = ty(f, n);
            let l = MultArray::from_factors(&factors);
            let amb_l = ambient_mult_array(typ, &l).unwrap();
            let gamma0 = typ.scaling_factors()[0];
            // enumerate over a few dominant weights
            let zero = vec![0i64; n];
            let mut lams = vec![zero.clone()];
            for a in 0..n {
                let mut w = zero.clone();
                w[a] = typ.kappa(a + 1);
                lams.push(w);
            }
            for lam in lams {
                for rc in enumerate_rcs(typ, &l, &lam, DEFAULT_BUDGET).unwrap() {
                    let amb = emb_rc(&rc).unwrap();
                    amb.validate(&amb_l).unwrap_or_else(|e| {
                        panic!("embedded rc invalid for {f:?}: {e} ({rc})")
                    });
                    assert_eq!(
                        amb.cocharge_2x(&amb_l),
                        gamma0 * rc.cocharge_2x(&l),
                        "{f:?} {rc}"
                    );
                    assert_eq!(emb_rc_inv(typ, &amb).unwrap(), rc);
                }
            }
        }
    }
}
