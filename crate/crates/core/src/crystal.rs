//! Generic finite-crystal engine: elements, operators, tensor products via
//! the signature rule, component generation, highest-weight search and the
//! Lusztig involution.
//!
//! Tensors are stored in display order: index 0 is the leftmost factor b_L,
//! the last index is the rightmost factor b_1 (tensor position 1). The
//! signature rule follows the convention opposite to Kashiwara's: signs are
//! written -^phi +^eps per factor from left to right, consecutive +- pairs
//! cancel, e_i acts at the leftmost surviving + and f_i at the rightmost
//! surviving -.

use crate::cartan::{Classical, Weight};
use crate::error::{Error, Result};
use std::collections::HashMap;
use std::fmt;

/// Raising or lowering.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    E,
    F,
}

impl Op {
    pub fn flip(self) -> Op {
        match self {
            Op::E => Op::F,
            Op::F => Op::E,
        }
    }
}

/// Rectangular grid of letters; classical operators act through the column
/// reading word (columns left to right, each column bottom to top).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tableau {
    pub rows: usize,
    pub cols: usize,
    /// row-major entries; type A letters are 1..=m, type D barred letters are
    /// negative
    pub entries: Vec<i64>,
}

impl Tableau {
    pub fn new(rows: usize, cols: usize, entries: Vec<i64>) -> Tableau {
        assert_eq!(entries.len(), rows * cols);
        Tableau { rows, cols, entries }
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.entries[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: i64) {
        self.entries[row * self.cols + col] = v;
    }

    /// Cell visited at the k-th step of the reading order.
    pub fn reading_cell(&self, k: usize) -> (usize, usize) {
        let col = k / self.rows;
        let row = self.rows - 1 - (k % self.rows);
        (row, col)
    }

    pub fn reading_word(&self) -> Vec<i64> {
        (0..self.rows * self.cols)
            .map(|k| {
                let (r, c) = self.reading_cell(k);
                self.get(r, c)
            })
            .collect()
    }

    pub fn column(&self, col: usize) -> Vec<i64> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c)).collect())
            .collect()
    }

    pub fn is_semistandard(&self, max: i64) -> bool {
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if v < 1 || v > max {
                    return false;
                }
                if c + 1 < self.cols && self.get(r, c + 1) < v {
                    return false;
                }
                if r + 1 < self.rows && self.get(r + 1, c) <= v {
                    return false;
                }
            }
        }
        true
    }
}

/// A crystal element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Node {
    /// Letter of the vector crystal (type A: 1..=m; type D: 1..=n and
    /// -1..=-n for barred letters).
    Letter(i64),
    /// Spin column in the +/- vector description, entries +1/-1.
    Spin(Vec<i8>),
    /// Rectangular tableau.
    Tab(Tableau),
    /// Tensor product in display order (index 0 leftmost).
    Tensor(Vec<Node>),
    /// Contragredient dual wrapper.
    Dual(Box<Node>),
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Letter(x) => {
                if *x < 0 {
                    write!(f, "{}b", -x)
                } else {
                    write!(f, "{x}")
                }
            }
            Node::Spin(s) => {
                for v in s {
                    write!(f, "{}", if *v > 0 { '+' } else { '-' })?;
                }
                Ok(())
            }
            Node::Tab(t) => {
                let rows: Vec<String> = t
                    .row_vecs()
                    .iter()
                    .map(|r| {
                        r.iter()
                            .map(|x| {
                                if *x < 0 {
                                    format!("{}b", -x)
                                } else {
                                    format!("{x}")
                                }
                            })
                            .collect::<Vec<_>>()
                            .join(",")
                    })
                    .collect();
                write!(f, "[{}]", rows.join("/"))
            }
            Node::Tensor(parts) => {
                let s: Vec<String> = parts.iter().map(|p| p.to_string()).collect();
                write!(f, "{}", s.join("(x)"))
            }
            Node::Dual(inner) => write!(f, "{inner}^v"),
        }
    }
}

/// Statistics (phi_i, eps_i) of a node for a classical index i in I_0.
pub fn stats(cl: Classical, i: usize, node: &Node) -> (i64, i64) {
    match node {
        Node::Letter(x) => letter_stats(cl, i, *x),
        Node::Spin(s) => spin_stats(cl, i, s),
        Node::Tab(t) => {
            let word = t.reading_word();
            let parts: Vec<(i64, i64)> = word.iter().map(|&x| letter_stats(cl, i, x)).collect();
            signature(&parts).stats()
        }
        Node::Tensor(parts) => {
            let st: Vec<(i64, i64)> = parts.iter().map(|p| stats(cl, i, p)).collect();
            signature(&st).stats()
        }
        Node::Dual(inner) => {
            let (phi, eps) = stats(cl, i, inner);
            (eps, phi)
        }
    }
}

/// Apply e_i or f_i; None is the crystal zero.
pub fn apply(cl: Classical, op: Op, i: usize, node: &Node) -> Option<Node> {
    match node {
        Node::Letter(x) => letter_apply(cl, op, i, *x).map(Node::Letter),
        Node::Spin(s) => spin_apply(cl, op, i, s).map(Node::Spin),
        Node::Tab(t) => {
            let word = t.reading_word();
            let parts: Vec<(i64, i64)> = word.iter().map(|&x| letter_stats(cl, i, x)).collect();
            let k = signature(&parts).pick(op)?;
            let (row, col) = t.reading_cell(k);
            let new = letter_apply(cl, op, i, t.get(row, col))?;
            let mut t2 = t.clone();
            t2.set(row, col, new);
            Some(Node::Tab(t2))
        }
        Node::Tensor(parts) => {
            let st: Vec<(i64, i64)> = parts.iter().map(|p| stats(cl, i, p)).collect();
            let k = signature(&st).pick(op)?;
            let new = apply(cl, op, i, &parts[k])?;
            let mut parts2 = parts.clone();
            parts2[k] = new;
            Some(Node::Tensor(parts2))
        }
        Node::Dual(inner) => apply(cl, op.flip(), i, inner).map(|x| Node::Dual(Box::new(x))),
    }
}

/// Classical weight in the fundamental-weight basis: wt_i = phi_i - eps_i.
pub fn weight(cl: Classical, node: &Node) -> Weight {
    (1..=cl.rank())
        .map(|i| {
            let (phi, eps) = stats(cl, i, node);
            phi - eps
        })
        .collect()
}

pub fn is_highest(cl: Classical, node: &Node) -> bool {
    (1..=cl.rank()).all(|i| stats(cl, i, node).1 == 0)
}

/// Reduced-signature bookkeeping for one index i.
pub struct Signature {
    /// factor indices carrying the surviving minuses, left to right
    pub minus: Vec<usize>,
    /// factor indices carrying the surviving pluses, left to right
    pub plus: Vec<usize>,
}

impl Signature {
    /// (phi_i, eps_i) of the whole tensor.
    pub fn stats(&self) -> (i64, i64) {
        (self.minus.len() as i64, self.plus.len() as i64)
    }

    pub fn pick(&self, op: Op) -> Option<usize> {
        match op {
            Op::E => self.plus.first().copied(),
            Op::F => self.minus.last().copied(),
        }
    }
}

/// Run the signature rule over per-factor (phi, eps) pairs in display order.
pub fn signature(parts: &[(i64, i64)]) -> Signature {
    let mut plus: Vec<usize> = Vec::new();
    let mut minus: Vec<usize> = Vec::new();
    for (k, &(phi, eps)) in parts.iter().enumerate() {
        let mut m = phi;
        while m > 0 && !plus.is_empty() {
            plus.pop();
            m -= 1;
        }
        for _ in 0..m {
            minus.push(k);
        }
        for _ in 0..eps {
            plus.push(k);
        }
    }
    Signature { minus, plus }
}

fn letter_stats(cl: Classical, i: usize, x: i64) -> (i64, i64) {
    let f_hits = letter_apply(cl, Op::F, i, x).is_some() as i64;
    let e_hits = letter_apply(cl, Op::E, i, x).is_some() as i64;
    (f_hits, e_hits)
}

fn letter_apply(cl: Classical, op: Op, i: usize, x: i64) -> Option<i64> {
    match op {
        Op::F => letter_f(cl, i, x),
        Op::E => {
            // invert the f arrows
            let candidates: Vec<i64> = letter_domain(cl);
            candidates.into_iter().find(|&y| letter_f(cl, i, y) == Some(x))
        }
    }
}

fn letter_domain(cl: Classical) -> Vec<i64> {
    match cl {
        Classical::A(n) => (1..=(n as i64 + 1)).collect(),
        Classical::D(n) => {
            let n = n as i64;
            (1..=n).chain((1..=n).map(|x| -x)).collect()
        }
        _ => Vec::new(),
    }
}

fn letter_f(cl: Classical, i: usize, x: i64) -> Option<i64> {
    match cl {
        Classical::A(n) => {
            let i = i as i64;
            debug_assert!(i >= 1 && i <= n as i64);
            (x == i).then_some(i + 1)
        }
        Classical::D(n) => {
            let (i, n) = (i as i64, n as i64);
            if i <= n - 2 {
                if x == i {
                    Some(i + 1)
                } else if x == -(i + 1) {
                    Some(-i)
                } else {
                    None
                }
            } else if i == n - 1 {
                if x == n - 1 {
                    Some(n)
                } else if x == -n {
                    Some(-(n - 1))
                } else {
                    None
                }
            } else {
                // i == n
                if x == n - 1 {
                    Some(-n)
                } else if x == n {
                    Some(-(n - 1))
                } else {
                    None
                }
            }
        }
        _ => None,
    }
}

fn spin_stats(cl: Classical, i: usize, s: &[i8]) -> (i64, i64) {
    let f = spin_apply(cl, Op::F, i, s).is_some() as i64;
    let e = spin_apply(cl, Op::E, i, s).is_some() as i64;
    (f, e)
}

fn spin_apply(cl: Classical, op: Op, i: usize, s: &[i8]) -> Option<Vec<i8>> {
    let n = cl.rank();
    debug_assert!(matches!(cl, Classical::D(_)));
    debug_assert_eq!(s.len(), n);
    let mut out = s.to_vec();
    if i < n {
        let (want, repl) = match op {
            Op::F => ((1i8, -1i8), (-1i8, 1i8)),
            Op::E => ((-1i8, 1i8), (1i8, -1i8)),
        };
        if (s[i - 1], s[i]) == want {
            out[i - 1] = repl.0;
            out[i] = repl.1;
            Some(out)
        } else {
            None
        }
    } else {
        let (want, repl) = match op {
            Op::F => ((1i8, 1i8), (-1i8, -1i8)),
            Op::E => ((-1i8, -1i8), (1i8, 1i8)),
        };
        if (s[n - 2], s[n - 1]) == want {
            out[n - 2] = repl.0;
            out[n - 1] = repl.1;
            Some(out)
        } else {
            None
        }
    }
}

/// Diagram automorphism tau given by -w_0 on the classical weights.
pub fn tau(cl: Classical, i: usize) -> usize {
    match cl {
        Classical::A(n) => n + 1 - i,
        Classical::D(n) if n % 2 == 1 => {
            if i == n - 1 {
                n
            } else if i == n {
                n - 1
            } else {
                i
            }
        }
        _ => i,
    }
}

/// Raise to the I_0-highest element, smallest index first; returns the
/// highest node and the word of indices applied (in application order).
pub fn raise(cl: Classical, node: &Node) -> (Node, Vec<usize>) {
    let mut cur = node.clone();
    let mut word = Vec::new();
    'outer: loop {
        for i in 1..=cl.rank() {
            if let Some(next) = apply(cl, Op::E, i, &cur) {
                cur = next;
                word.push(i);
                continue 'outer;
            }
        }
        return (cur, word);
    }
}

/// Lower to the I_0-lowest element, smallest index first.
pub fn lower(cl: Classical, node: &Node) -> Node {
    let mut cur = node.clone();
    'outer: loop {
        for i in 1..=cl.rank() {
            if let Some(next) = apply(cl, Op::F, i, &cur) {
                cur = next;
                continue 'outer;
            }
        }
        return cur;
    }
}

/// Lusztig involution on a single-factor element: raise to the highest
/// element recording the word, then replay e_{tau(i)} from the lowest
/// element of the component.
pub fn lusztig_star(cl: Classical, node: &Node) -> Node {
    if let Node::Tensor(parts) = node {
        // (b_2 (x) b_1)^* = b_1^* (x) b_2^*
        let starred: Vec<Node> = parts.iter().rev().map(|p| lusztig_star(cl, p)).collect();
        return Node::Tensor(starred);
    }
    let (highest, raise_word) = raise(cl, node);
    let low = lower(cl, &highest);
    let mut cur = low;
    for &i in raise_word.iter().rev() {
        cur = apply(cl, Op::E, tau(cl, i), &cur)
            .expect("Lusztig involution replay must stay inside the component");
    }
    cur
}

/// Contragredient dual.
pub fn contragredient_dual(node: &Node) -> Node {
    match node {
        Node::Dual(inner) => (**inner).clone(),
        Node::Tensor(parts) => {
            Node::Tensor(parts.iter().rev().map(contragredient_dual).collect())
        }
        other => Node::Dual(Box::new(other.clone())),
    }
}

pub const DEFAULT_BUDGET: usize = 1_000_000;

/// A generated classical component: elements, edges and one recorded f-word
/// per node from the highest element.
pub struct ComponentGraph {
    pub cl: Classical,
    pub highest: Node,
    pub elements: Vec<Node>,
    pub index: HashMap<Node, usize>,
    /// f-word from the highest element, in application order
    pub word: Vec<Vec<usize>>,
    pub lowest: usize,
}

impl ComponentGraph {
    /// Breadth-first closure of the highest element of the seed's component
    /// under the lowering operators.
    pub fn generate(cl: Classical, seed: &Node, budget: usize) -> Result<ComponentGraph> {
        let (highest, _) = raise(cl, seed);
        let mut elements = vec![highest.clone()];
        let mut index = HashMap::new();
        index.insert(highest.clone(), 0usize);
        let mut word: Vec<Vec<usize>> = vec![Vec::new()];
        let mut lowest = None;
        let mut head = 0usize;
        while head < elements.len() {
            let cur = elements[head].clone();
            let mut any_f = false;
            for i in 1..=cl.rank() {
                if let Some(next) = apply(cl, Op::F, i, &cur) {
                    any_f = true;
                    if !index.contains_key(&next) {
                        if elements.len() >= budget {
                            return Err(Error::BudgetExceeded(budget));
                        }
                        index.insert(next.clone(), elements.len());
                        let mut w = word[head].clone();
                        w.push(i);
                        word.push(w);
                        elements.push(next);
                    }
                }
            }
            if !any_f {
                lowest = Some(head);
            }
            head += 1;
        }
        let lowest = lowest.ok_or_else(|| {
            Error::Internal("finite component must contain a lowest element".into())
        })?;
        Ok(ComponentGraph {
            cl,
            highest,
            elements,
            index,
            word,
            lowest,
        })
    }
}
