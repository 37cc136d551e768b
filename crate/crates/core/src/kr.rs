//! Concrete Kirillov-Reshetikhin crystals for the simply-laced types:
//! type A rectangles with the promotion-based affine structure, and type D
//! KR tableaux including spin columns.

use crate::cartan::{Classical, Weight};
use crate::crystal::{apply, raise, stats, weight, Node, Op, Tableau};

/// KR factor spec B^{r,s}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSpec {
    pub r: usize,
    pub s: usize,
}

impl FactorSpec {
    pub fn new(r: usize, s: usize) -> FactorSpec {
        FactorSpec { r, s }
    }
}

/// Spin factors exist for type D at heights n-1 and n.
pub fn is_spin(cl: Classical, r: usize) -> bool {
    match cl {
        Classical::D(n) => r == n || r == n - 1,
        _ => false,
    }
}

/// The maximal element of B^{r,s}, of weight s kappa_r Lambda-bar_r.
pub fn maximal(cl: Classical, spec: FactorSpec) -> Node {
    let (r, s) = (spec.r, spec.s);
    if is_spin(cl, r) {
        let n = cl.rank();
        let mut signs = vec![1i8; n];
        if r == n - 1 {
            signs[n - 1] = -1;
        }
        let col = Node::Spin(signs);
        if s == 1 {
            col
        } else {
            Node::Tensor(vec![col; s])
        }
    } else if (r, s) == (1, 1) {
        Node::Letter(1)
    } else {
        let mut entries = Vec::with_capacity(r * s);
        for row in 0..r {
            entries.extend(std::iter::repeat_n(row as i64 + 1, s));
        }
        Node::Tab(Tableau::new(r, s, entries))
    }
}

/// Classical decomposition of B^{r,s} as a list of highest weights.
///
/// Type A is a single component; type D nonspin components are indexed by
/// column-height vectors congruent to r mod 2 (vertical dominoes removed
/// from the full rectangle); spin factors are single components.
pub fn classical_decomposition(cl: Classical, spec: FactorSpec) -> Vec<Weight> {
    let n = cl.rank();
    let (r, s) = (spec.r, spec.s);
    match cl {
        Classical::A(_) => {
            let mut w = vec![0i64; n];
            w[r - 1] = s as i64;
            vec![w]
        }
        Classical::D(_) => {
            if is_spin(cl, r) {
                let mut w = vec![0i64; n];
                w[r - 1] = s as i64;
                return vec![w];
            }
            // weakly decreasing height vectors over the s columns with all
            // heights in {r, r-2, ...}
            let heights: Vec<usize> = (0..=r / 2).map(|k| r - 2 * k).collect();
            let mut out = Vec::new();
            let mut cur = vec![0usize; s];
            fn rec(
                heights: &[usize],
                s: usize,
                pos: usize,
                max_idx: usize,
                cur: &mut Vec<usize>,
                out: &mut Vec<Vec<usize>>,
            ) {
                if pos == s {
                    out.push(cur.clone());
                    return;
                }
                for (idx, &h) in heights.iter().enumerate().skip(max_idx) {
                    cur[pos] = h;
                    rec(heights, s, pos + 1, idx, cur, out);
                }
            }
            let mut cols = Vec::new();
            rec(&heights, s, 0, 0, &mut cur, &mut cols);
            for hv in cols {
                let mut w = vec![0i64; n];
                for &h in &hv {
                    if h > 0 {
                        w[h - 1] += 1;
                    }
                }
                out.push(w);
            }
            out
        }
        _ => Vec::new(),
    }
}

// ---------------------------------------------------------------------------
// Promotion and the type A affine structure
// ---------------------------------------------------------------------------

/// Schutzenberger promotion on a rectangular semistandard tableau with
/// entries in 1..=m: remove the m's, jeu-de-taquin the holes to the top row
/// (vacated cells processed column by column from the left), add one to
/// every entry and fill the holes with 1.
pub fn promote_tab(t: &Tableau, m: i64) -> Tableau {
    let (r, s) = (t.rows, t.cols);
    let mut grid: Vec<Vec<Option<i64>>> = t
        .row_vecs()
        .into_iter()
        .map(|row| row.into_iter().map(Some).collect())
        .collect();
    // all m's sit in the bottom row, right justified
    let mut holes: Vec<(usize, usize)> = Vec::new();
    for c in 0..s {
        if grid[r - 1][c] == Some(m) {
            grid[r - 1][c] = None;
            holes.push((r - 1, c));
        }
    }
    for &(mut hr, mut hc) in &holes {
        loop {
            let above = if hr > 0 { grid[hr - 1][hc] } else { None };
            let left = if hc > 0 { grid[hr][hc - 1] } else { None };
            match (above, left) {
                (Some(a), Some(b)) => {
                    if a >= b {
                        grid[hr][hc] = Some(a);
                        grid[hr - 1][hc] = None;
                        hr -= 1;
                    } else {
                        grid[hr][hc] = Some(b);
                        grid[hr][hc - 1] = None;
                        hc -= 1;
                    }
                }
                (Some(a), None) => {
                    grid[hr][hc] = Some(a);
                    grid[hr - 1][hc] = None;
                    hr -= 1;
                }
                (None, Some(b)) => {
                    grid[hr][hc] = Some(b);
                    grid[hr][hc - 1] = None;
                    hc -= 1;
                }
                (None, None) => break,
            }
        }
    }
    let entries: Vec<i64> = (0..r)
        .flat_map(|row| {
            let grid = &grid;
            (0..s).map(move |col| match grid[row][col] {
                Some(v) => v + 1,
                None => 1,
            })
        })
        .collect();
    let out = Tableau::new(r, s, entries);
    debug_assert!(out.is_semistandard(m));
    out
}

/// Inverse promotion: remove the 1's, slide the holes to the bottom row
/// (processed column by column from the right), subtract one and fill
/// with m.
pub fn promote_inv_tab(t: &Tableau, m: i64) -> Tableau {
    let (r, s) = (t.rows, t.cols);
    let mut grid: Vec<Vec<Option<i64>>> = t
        .row_vecs()
        .into_iter()
        .map(|row| row.into_iter().map(Some).collect())
        .collect();
    let mut holes: Vec<(usize, usize)> = Vec::new();
    for c in (0..s).rev() {
        if grid[0][c] == Some(1) {
            grid[0][c] = None;
            holes.push((0, c));
        }
    }
    for &(mut hr, mut hc) in &holes {
        loop {
            let below = if hr + 1 < r { grid[hr + 1][hc] } else { None };
            let right = if hc + 1 < s { grid[hr][hc + 1] } else { None };
            match (below, right) {
                (Some(a), Some(b)) => {
                    if a <= b {
                        grid[hr][hc] = Some(a);
                        grid[hr + 1][hc] = None;
                        hr += 1;
                    } else {
                        grid[hr][hc] = Some(b);
                        grid[hr][hc + 1] = None;
                        hc += 1;
                    }
                }
                (Some(a), None) => {
                    grid[hr][hc] = Some(a);
                    grid[hr + 1][hc] = None;
                    hr += 1;
                }
                (None, Some(b)) => {
                    grid[hr][hc] = Some(b);
                    grid[hr][hc + 1] = None;
                    hc += 1;
                }
                (None, None) => break,
            }
        }
    }
    let entries: Vec<i64> = (0..r)
        .flat_map(|row| {
            let grid = &grid;
            (0..s).map(move |col| match grid[row][col] {
                Some(v) => v - 1,
                None => m,
            })
        })
        .collect();
    let out = Tableau::new(r, s, entries);
    debug_assert!(out.is_semistandard(m));
    out
}

/// Bender-Knuth involution on letters k, k+1; used as an independent
/// cross-check of jeu-de-taquin promotion.
pub fn bender_knuth(t: &Tableau, k: i64) -> Tableau {
    let (r, s) = (t.rows, t.cols);
    let mut out = t.clone();
    for row in 0..r {
        let mut free: Vec<usize> = Vec::new();
        for col in 0..s {
            let v = t.get(row, col);
            if v == k {
                let locked = row + 1 < r && t.get(row + 1, col) == k + 1;
                if !locked {
                    free.push(col);
                }
            } else if v == k + 1 {
                let locked = row > 0 && t.get(row - 1, col) == k;
                if !locked {
                    free.push(col);
                }
            }
        }
        let a = free.iter().filter(|&&c| t.get(row, c) == k).count();
        let b = free.len() - a;
        for (idx, &col) in free.iter().enumerate() {
            out.set(row, col, if idx < b { k } else { k + 1 });
        }
    }
    out
}

/// Promotion as a composite of Bender-Knuth involutions (sigma_{m-1} first).
pub fn promote_bk(t: &Tableau, m: i64) -> Tableau {
    let mut cur = t.clone();
    for k in (1..m).rev() {
        cur = bender_knuth(&cur, k);
    }
    cur
}

/// Promotion applied to any type A node (letters, tableaux, tensors).
pub fn promote_node(m: i64, node: &Node) -> Node {
    match node {
        Node::Letter(x) => Node::Letter(if *x == m { 1 } else { *x + 1 }),
        Node::Tab(t) => Node::Tab(promote_tab(t, m)),
        Node::Tensor(parts) => Node::Tensor(parts.iter().map(|p| promote_node(m, p)).collect()),
        _ => panic!("promotion is defined on type A nodes only"),
    }
}

pub fn promote_inv_node(m: i64, node: &Node) -> Node {
    match node {
        Node::Letter(x) => Node::Letter(if *x == 1 { m } else { *x - 1 }),
        Node::Tab(t) => Node::Tab(promote_inv_tab(t, m)),
        Node::Tensor(parts) => {
            Node::Tensor(parts.iter().map(|p| promote_inv_node(m, p)).collect())
        }
        _ => panic!("promotion is defined on type A nodes only"),
    }
}

/// Affine e_0/f_0 on a type A_{m-1} node via promotion.
pub fn affine_apply_a(cl: Classical, op: Op, node: &Node) -> Option<Node> {
    let m = cl.rank() as i64 + 1;
    let shifted = promote_node(m, node);
    let moved = apply(cl, op, 1, &shifted)?;
    Some(promote_inv_node(m, &moved))
}

/// (phi_0, eps_0) on a type A node.
pub fn affine_stats_a(cl: Classical, node: &Node) -> (i64, i64) {
    let m = cl.rank() as i64 + 1;
    stats(cl, 1, &promote_node(m, node))
}

/// Classify a factor element into its classical component and return the
/// component's highest weight.
pub fn component_weight(cl: Classical, node: &Node) -> Weight {
    let (hw, _) = raise(cl, node);
    weight(cl, &hw)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Classical;
    use crate::crystal::{ComponentGraph, DEFAULT_BUDGET};

    #[test]
    fn maximal_weights() {
        let a2 = Classical::A(2);
        let m = maximal(a2, FactorSpec::new(2, 3));
        if let Node::Tab(t) = &m {
            assert_eq!(t.row_vecs(), vec![vec![1, 1, 1], vec![2, 2, 2]]);
        } else {
            panic!();
        }
        assert_eq!(weight(a2, &m), vec![0, 3]);
        let d4 = Classical::D(4);
        let sp = maximal(d4, FactorSpec::new(4, 2));
        assert_eq!(weight(d4, &sp), vec![0, 0, 0, 2]);
        let sp3 = maximal(d4, FactorSpec::new(3, 1));
        assert_eq!(weight(d4, &sp3), vec![0, 0, 1, 0]);
    }

    #[test]
    fn d4_b22_decomposition_list() {
        let d4 = Classical::D(4);
        let decomp = classical_decomposition(d4, FactorSpec::new(2, 2));
        assert_eq!(decomp.len(), 3);
        assert!(decomp.contains(&vec![0, 2, 0, 0]));
        assert!(decomp.contains(&vec![0, 1, 0, 0]));
        assert!(decomp.contains(&vec![0, 0, 0, 0]));
        // B^{1,s} is a single component in type D
        assert_eq!(classical_decomposition(d4, FactorSpec::new(1, 3)).len(), 1);
    }

    #[test]
    fn promotion_rotates_content_and_has_full_period() {
        let a2 = Classical::A(2);
        let m = 3i64;
        for spec in [FactorSpec::new(1, 1), FactorSpec::new(2, 2), FactorSpec::new(1, 3)] {
            let g = ComponentGraph::generate(a2, &maximal(a2, spec), DEFAULT_BUDGET).unwrap();
            for el in &g.elements {
                let content = |n: &Node| -> Vec<i64> {
                    let mut c = vec![0i64; m as usize];
                    let walk = |n: &Node, c: &mut Vec<i64>| match n {
                        Node::Letter(x) => c[(*x - 1) as usize] += 1,
                        Node::Tab(t) => t.entries.iter().for_each(|&x| c[(x - 1) as usize] += 1),
                        _ => panic!(),
                    };
                    walk(n, &mut c);
                    c
                };
                let p = promote_node(m, el);
                let c0 = content(el);
                let c1 = content(&p);
                for i in 0..m as usize {
                    assert_eq!(c1[(i + 1) % m as usize], c0[i]);
                }
                assert_eq!(promote_inv_node(m, &p), *el);
                if let (Node::Tab(t), Node::Tab(pt)) = (el, &p) {
                    assert_eq!(promote_bk(t, m), *pt);
                }
                let mut cur = el.clone();
                for _ in 0..m {
                    cur = promote_node(m, &cur);
                }
                assert_eq!(cur, *el);
            }
        }
    }

    #[test]
    fn affine_zero_ops_satisfy_axioms() {
        let a1 = Classical::A(1);
        let u = Node::Tensor(vec![Node::Letter(1), Node::Letter(1)]);
        assert!(affine_apply_a(a1, Op::E, &u).is_some());
        let x = Node::Tensor(vec![Node::Letter(2), Node::Letter(1)]);
        let y = affine_apply_a(a1, Op::E, &x).unwrap();
        assert_eq!(y, Node::Tensor(vec![Node::Letter(2), Node::Letter(2)]));
        assert_eq!(affine_apply_a(a1, Op::F, &y), Some(x));
    }
}
