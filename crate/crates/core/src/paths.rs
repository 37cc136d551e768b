//! Paths: elements of tensor products of KR crystals, displayed left to
//! right with the rightmost factor at tensor position 1, together with the
//! left splitting maps lh / lh_sp / lb / ls / lb^{(s)}, their right analogs
//! and the twisted automorphism sigma.

use crate::cartan::{AffineType, Classical, Family, Weight};
use crate::crystal::{apply, is_highest, lusztig_star, raise, weight, Node, Op, Tableau};
use crate::error::{Error, Result};
use crate::kr::{self, FactorSpec};

/// An element of a tensor product of KR crystals of a simply-laced type.
/// Folded types store their ambient realization and are handled in `virt`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub typ: AffineType,
    pub factors: Vec<FactorSpec>,
    pub elems: Vec<Node>,
}

impl std::fmt::Display for Path {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.elems.is_empty() {
            return write!(f, "(empty)");
        }
        let parts: Vec<String> = self.elems.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" (x) "))
    }
}

impl Path {
    pub fn new(typ: AffineType, factors: Vec<FactorSpec>, elems: Vec<Node>) -> Path {
        assert_eq!(factors.len(), elems.len());
        Path { typ, factors, elems }
    }

    pub fn empty(typ: AffineType) -> Path {
        Path {
            typ,
            factors: Vec::new(),
            elems: Vec::new(),
        }
    }

    pub fn cl(&self) -> Classical {
        self.typ.classical()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn as_tensor(&self) -> Node {
        Node::Tensor(self.elems.clone())
    }

    pub fn maximal(typ: AffineType, factors: Vec<FactorSpec>) -> Path {
        let cl = typ.classical();
        let elems = factors.iter().map(|&f| kr::maximal(cl, f)).collect();
        Path::new(typ, factors, elems)
    }

    pub fn weight(&self) -> Weight {
        weight(self.cl(), &self.as_tensor())
    }

    pub fn is_highest(&self) -> bool {
        is_highest(self.cl(), &self.as_tensor())
    }

    /// Apply a classical operator to the whole tensor.
    pub fn apply(&self, op: Op, i: usize) -> Option<Path> {
        let cl = self.cl();
        let st: Vec<(i64, i64)> = self
            .elems
            .iter()
            .map(|e| crate::crystal::stats(cl, i, e))
            .collect();
        let k = crate::crystal::signature(&st).pick(op)?;
        let new = apply(cl, op, i, &self.elems[k])?;
        let mut out = self.clone();
        out.elems[k] = new;
        Some(out)
    }

    /// Raise to the I_0-highest path, smallest index first.
    pub fn raise(&self) -> (Path, Vec<usize>) {
        let cl = self.cl();
        let mut cur = self.clone();
        let mut word = Vec::new();
        'outer: loop {
            for i in 1..=cl.rank() {
                if let Some(next) = cur.apply(Op::E, i) {
                    cur = next;
                    word.push(i);
                    continue 'outer;
                }
            }
            return (cur, word);
        }
    }

    /// Lusztig involution: reverse the factors and star each one inside its
    /// own KR crystal.
    pub fn star(&self) -> Path {
        let cl = self.cl();
        let factors: Vec<FactorSpec> = self.factors.iter().rev().copied().collect();
        let elems: Vec<Node> = self.elems.iter().rev().map(|e| lusztig_star(cl, e)).collect();
        Path::new(self.typ, factors, elems)
    }

    /// hwstar = raise after star, written `<>` in commutation tests.
    pub fn hwstar(&self) -> Path {
        self.star().raise().0
    }
}

fn norm_spin_block(cols: Vec<Node>) -> Node {
    if cols.len() == 1 {
        cols.into_iter().next().unwrap()
    } else {
        Node::Tensor(cols)
    }
}

fn spin_cols(node: &Node, s: usize) -> Result<Vec<Node>> {
    match node {
        Node::Spin(_) if s == 1 => Ok(vec![node.clone()]),
        Node::Tensor(cols) if cols.len() == s => Ok(cols.clone()),
        _ => Err(Error::ShapeMismatch("expected a spin block of width s".into())),
    }
}

/// Column node of a (r,1) factor: a Letter when r = 1, else a one-column
/// tableau.
fn column_node(entries: Vec<i64>) -> Node {
    if entries.len() == 1 {
        Node::Letter(entries[0])
    } else {
        let r = entries.len();
        Node::Tab(Tableau::new(r, 1, entries))
    }
}

pub fn column_entries(node: &Node) -> Result<Vec<i64>> {
    match node {
        Node::Letter(x) => Ok(vec![*x]),
        Node::Tab(t) if t.cols == 1 => Ok(t.column(0)),
        _ => Err(Error::ShapeMismatch("expected a single-column factor".into())),
    }
}

/// lh: drop the leftmost B^{1,1} factor, returning the removed letter.
pub fn lh(p: &Path) -> Result<(i64, Path)> {
    let spec = *p.factors.first().ok_or_else(|| Error::ShapeMismatch("empty path".into()))?;
    if (spec.r, spec.s) != (1, 1) {
        return Err(Error::ShapeMismatch(format!(
            "lh needs a leftmost (1,1) factor, got ({},{})",
            spec.r, spec.s
        )));
    }
    let letter = match &p.elems[0] {
        Node::Letter(x) => *x,
        other => {
            return Err(Error::ShapeMismatch(format!(
                "lh expected a letter, got {other}"
            )))
        }
    };
    let rest = Path::new(p.typ, p.factors[1..].to_vec(), p.elems[1..].to_vec());
    Ok((letter, rest))
}

/// lh_sp: drop the leftmost spin column (type D, r in {n-1, n}, s = 1).
pub fn lh_sp(p: &Path) -> Result<(Vec<i8>, Path)> {
    let spec = *p.factors.first().ok_or_else(|| Error::ShapeMismatch("empty path".into()))?;
    if spec.s != 1 || !kr::is_spin(p.cl(), spec.r) {
        return Err(Error::ShapeMismatch("lh_sp needs a leftmost spin column".into()));
    }
    let signs = match &p.elems[0] {
        Node::Spin(s) => s.clone(),
        other => {
            return Err(Error::ShapeMismatch(format!(
                "lh_sp expected a spin column, got {other}"
            )))
        }
    };
    let rest = Path::new(p.typ, p.factors[1..].to_vec(), p.elems[1..].to_vec());
    Ok((signs, rest))
}

/// lb: move the bottom entry of the leftmost height-r column to a new
/// leading (1,1) factor.
pub fn lb(p: &Path) -> Result<Path> {
    let spec = *p.factors.first().ok_or_else(|| Error::ShapeMismatch("empty path".into()))?;
    let cl = p.cl();
    if spec.s != 1 || spec.r < 2 || kr::is_spin(cl, spec.r) {
        return Err(Error::ShapeMismatch(format!(
            "lb needs a leftmost nonspin column of height >= 2, got ({},{})",
            spec.r, spec.s
        )));
    }
    let mut col = column_entries(&p.elems[0])?;
    let bottom = col.pop().unwrap();
    let mut factors = vec![FactorSpec::new(1, 1), FactorSpec::new(spec.r - 1, 1)];
    factors.extend_from_slice(&p.factors[1..]);
    let mut elems = vec![Node::Letter(bottom), column_node(col)];
    elems.extend_from_slice(&p.elems[1..]);
    Ok(Path::new(p.typ, factors, elems))
}

/// Inverse of lb given the already-split path.
pub fn lb_inv(p: &Path) -> Result<Path> {
    if p.factors.len() < 2 || (p.factors[0].r, p.factors[0].s) != (1, 1) || p.factors[1].s != 1 {
        return Err(Error::ShapeMismatch("lb_inv needs (1,1) then (r-1,1)".into()));
    }
    let bottom = column_entries(&p.elems[0])?[0];
    let mut col = column_entries(&p.elems[1])?;
    col.push(bottom);
    let r = col.len();
    let mut factors = vec![FactorSpec::new(r, 1)];
    factors.extend_from_slice(&p.factors[2..]);
    let mut elems = vec![column_node(col)];
    elems.extend_from_slice(&p.elems[2..]);
    Ok(Path::new(p.typ, factors, elems))
}

/// ls: split the first column off the leftmost width-s factor.
pub fn ls(p: &Path) -> Result<Path> {
    let spec = *p.factors.first().ok_or_else(|| Error::ShapeMismatch("empty path".into()))?;
    if spec.s < 2 {
        return Err(Error::ShapeMismatch("ls needs a leftmost factor of width >= 2".into()));
    }
    let cl = p.cl();
    let (first, rest_node) = if kr::is_spin(cl, spec.r) {
        let cols = spin_cols(&p.elems[0], spec.s)?;
        (cols[0].clone(), norm_spin_block(cols[1..].to_vec()))
    } else {
        match &p.elems[0] {
            Node::Tab(t) => {
                let col = t.column(0);
                let rest_entries: Vec<i64> = (0..t.rows)
                    .flat_map(|r| (1..t.cols).map(move |c| (r, c)))
                    .map(|(r, c)| t.get(r, c))
                    .collect();
                let rest = if spec.s - 1 == 1 && spec.r == 1 {
                    Node::Letter(rest_entries[0])
                } else {
                    Node::Tab(Tableau::new(spec.r, spec.s - 1, rest_entries))
                };
                (column_node(col), rest)
            }
            other => {
                return Err(Error::ShapeMismatch(format!(
                    "ls expected a tableau, got {other}"
                )))
            }
        }
    };
    let mut factors = vec![FactorSpec::new(spec.r, 1), FactorSpec::new(spec.r, spec.s - 1)];
    factors.extend_from_slice(&p.factors[1..]);
    let mut elems = vec![first, rest_node];
    elems.extend_from_slice(&p.elems[1..]);
    Ok(Path::new(p.typ, factors, elems))
}

/// Inverse of ls given the already-split path.
pub fn ls_inv(p: &Path) -> Result<Path> {
    if p.factors.len() < 2 {
        return Err(Error::ShapeMismatch("ls_inv needs two leading factors".into()));
    }
    let (c, rest) = (p.factors[0], p.factors[1]);
    if c.s != 1 || rest.r != c.r {
        return Err(Error::ShapeMismatch("ls_inv needs (r,1) then (r,s-1)".into()));
    }
    let cl = p.cl();
    let merged = if kr::is_spin(cl, c.r) {
        let mut cols = vec![p.elems[0].clone()];
        cols.extend(spin_cols(&p.elems[1], rest.s)?);
        norm_spin_block(cols)
    } else {
        let col = column_entries(&p.elems[0])?;
        let rest_entries = match &p.elems[1] {
            Node::Tab(t) if t.rows == c.r => t.row_vecs(),
            Node::Letter(x) if c.r == 1 => vec![vec![*x]],
            other => {
                return Err(Error::ShapeMismatch(format!(
                    "ls_inv expected a ({},{}) tableau, got {other}",
                    rest.r, rest.s
                )))
            }
        };
        let mut entries = Vec::with_capacity(c.r * (rest.s + 1));
        for (row, rest_row) in rest_entries.iter().enumerate() {
            entries.push(col[row]);
            entries.extend_from_slice(rest_row);
        }
        Node::Tab(Tableau::new(c.r, rest.s + 1, entries))
    };
    let mut factors = vec![FactorSpec::new(c.r, rest.s + 1)];
    factors.extend_from_slice(&p.factors[2..]);
    let mut elems = vec![merged];
    elems.extend_from_slice(&p.elems[2..]);
    Ok(Path::new(p.typ, factors, elems))
}

/// Right analogs: conjugate the left maps by hwstar.
pub fn rh(p: &Path) -> Result<Path> {
    let (_, rest) = lh(&p.hwstar())?;
    Ok(rest.hwstar())
}

pub fn rh_sp(p: &Path) -> Result<Path> {
    let (_, rest) = lh_sp(&p.hwstar())?;
    Ok(rest.hwstar())
}

pub fn rb(p: &Path) -> Result<Path> {
    Ok(lb(&p.hwstar())?.hwstar())
}

pub fn rs(p: &Path) -> Result<Path> {
    Ok(ls(&p.hwstar())?.hwstar())
}

/// The twisted automorphism sigma on a single native factor; returns the
/// image spec and element.
pub fn sigma_factor(typ: AffineType, spec: FactorSpec, node: &Node) -> Result<(FactorSpec, Node)> {
    let cl = typ.classical();
    match typ.family {
        Family::A1 => {
            let n = typ.rank;
            let target = FactorSpec::new(n + 1 - spec.r, spec.s);
            let (_, word) = raise(cl, node);
            let mut cur = kr::maximal(cl, target);
            for &i in word.iter().rev() {
                cur = apply(cl, Op::F, n + 1 - i, &cur)
                    .ok_or_else(|| Error::Internal("sigma word replay failed".into()))?;
            }
            Ok((target, cur))
        }
        Family::D1 => {
            let n = typ.rank as i64;
            fn swap_letter(n: i64, x: i64) -> i64 {
                if x == n {
                    -n
                } else if x == -n {
                    n
                } else {
                    x
                }
            }
            let out = match node {
                Node::Letter(x) => Node::Letter(swap_letter(n, *x)),
                Node::Tab(t) => {
                    let entries = t.entries.iter().map(|&x| swap_letter(n, x)).collect();
                    Node::Tab(Tableau::new(t.rows, t.cols, entries))
                }
                Node::Spin(s) => {
                    let mut s2 = s.clone();
                    *s2.last_mut().unwrap() = -s2.last().unwrap();
                    Node::Spin(s2)
                }
                Node::Tensor(cols) => Node::Tensor(
                    cols.iter()
                        .map(|c| sigma_factor(typ, FactorSpec::new(spec.r, 1), c).map(|x| x.1))
                        .collect::<Result<Vec<_>>>()?,
                ),
                Node::Dual(_) => return Err(Error::ShapeMismatch("sigma on dual".into())),
            };
            let target = if kr::is_spin(cl, spec.r) {
                let n = typ.rank;
                let r2 = if spec.r == n { n - 1 } else { n };
                FactorSpec::new(r2, spec.s)
            } else {
                spec
            };
            Ok((target, out))
        }
        _ => Err(Error::NotNative(typ.family.name())),
    }
}

/// sigma applied factor-wise to a whole path.
pub fn sigma_path(p: &Path) -> Result<Path> {
    let mut factors = Vec::with_capacity(p.factors.len());
    let mut elems = Vec::with_capacity(p.elems.len());
    for (spec, el) in p.factors.iter().zip(&p.elems) {
        let (f2, e2) = sigma_factor(p.typ, *spec, el)?;
        factors.push(f2);
        elems.push(e2);
    }
    Ok(Path::new(p.typ, factors, elems))
}


#[cfg(test)]
impl AffineType {
    fn cl_check(self) -> Classical {
        self.classical()
    }
}
