//! Static affine root data for the eight nonexceptional families.
//!
//! Cartan matrices are stored per family straight off the Dynkin diagrams;
//! the Kac labels (marks) are *computed* as kernel vectors of the matrix
//! rather than transcribed, so a transcription error in a matrix shows up
//! immediately as a failed kernel test.
//!
//! Half-integers (spin weight coordinates, `t_a^vee`) are handled as doubled
//! integers throughout the crate; values carrying that convention use a `2x`
//! suffix.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The eight nonexceptional affine families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// A_n^{(1)}
    A1,
    /// B_n^{(1)}
    B1,
    /// C_n^{(1)}
    C1,
    /// D_n^{(1)}
    D1,
    /// A_{2n}^{(2)}
    A2Even,
    /// A_{2n}^{(2)dagger} (A_{2n}^{(2)} with nodes relabeled i <-> n-i)
    A2EvenDagger,
    /// A_{2n-1}^{(2)}
    A2Odd,
    /// D_{n+1}^{(2)}
    D2,
}

impl Family {
    pub const ALL: [Family; 8] = [
        Family::A1,
        Family::B1,
        Family::C1,
        Family::D1,
        Family::A2Even,
        Family::A2EvenDagger,
        Family::A2Odd,
        Family::D2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::A1 => "A(1)",
            Family::B1 => "B(1)",
            Family::C1 => "C(1)",
            Family::D1 => "D(1)",
            Family::A2Even => "A(2)even",
            Family::A2EvenDagger => "A(2)even\u{2020}",
            Family::A2Odd => "A(2)odd",
            Family::D2 => "D(2)",
        }
    }

    pub fn from_name(s: &str) -> Option<Family> {
        match s {
            "A(1)" => Some(Family::A1),
            "B(1)" => Some(Family::B1),
            "C(1)" => Some(Family::C1),
            "D(1)" => Some(Family::D1),
            "A(2)even" => Some(Family::A2Even),
            "A(2)even\u{2020}" | "A(2)even+" | "A(2)evendagger" => Some(Family::A2EvenDagger),
            "A(2)odd" => Some(Family::A2Odd),
            "D(2)" => Some(Family::D2),
            _ => None,
        }
    }

    /// Minimal legal rank per the Dynkin table.
    pub fn min_rank(self) -> usize {
        match self {
            Family::A1 => 1,
            Family::B1 => 3,
            Family::C1 => 2,
            Family::D1 => 4,
            Family::A2Even => 1,
            Family::A2EvenDagger => 1,
            Family::A2Odd => 3,
            Family::D2 => 2,
        }
    }
}

/// Classical subalgebra g_0 determined by the index set I_0.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classical {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
}

impl Classical {
    pub fn rank(self) -> usize {
        match self {
            Classical::A(n) | Classical::B(n) | Classical::C(n) | Classical::D(n) => n,
        }
    }
}

/// A nonexceptional affine type: family plus rank n (index set I = {0,...,n}).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineType {
    pub family: Family,
    pub rank: usize,
}

/// Classical weight in the fundamental-weight basis (coeff of Lambda-bar_a at
/// index a-1).
pub type Weight = Vec<i64>;

pub fn weight_is_dominant(w: &Weight) -> bool {
    w.iter().all(|&c| c >= 0)
}

pub fn weight_add(a: &Weight, b: &Weight) -> Weight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Diagram folding data: the ambient simply-laced type, the fibers of the
/// node map phi, and the scaling factors gamma.
#[derive(Debug, Clone)]
pub struct FoldingData {
    pub ambient: AffineType,
    /// orbit[a] = phi^{-1}(a) as ambient node indices, for a in I.
    pub orbit: Vec<Vec<usize>>,
    /// gamma[a] for a in I.
    pub gamma: Vec<i64>,
}

impl AffineType {
    pub fn new(family: Family, rank: usize) -> Result<AffineType> {
        if rank < family.min_rank() {
            return Err(Error::InvalidRank {
                family: family.name(),
                rank,
            });
        }
        Ok(AffineType { family, rank })
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self.family, Family::A1 | Family::D1)
    }

    /// Classical subalgebra attached to I_0.
    pub fn classical(self) -> Classical {
        let n = self.rank;
        match self.family {
            Family::A1 => Classical::A(n),
            Family::B1 | Family::A2EvenDagger | Family::D2 => Classical::B(n),
            Family::C1 | Family::A2Even | Family::A2Odd => Classical::C(n),
            Family::D1 => Classical::D(n),
        }
    }

    /// Affine Cartan matrix over I x I, read off the Dynkin diagrams.
    ///
    /// Convention: A[i][j] = <alpha_i^vee, alpha_j>; an arrow pointing at a
    /// node marks its root as the short one, and the short root's row carries
    /// the -2 (or -4 for A_2^{(2)}).
    pub fn cartan_matrix(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut a = vec![vec![0i64; n + 1]; n + 1];
        for i in 0..=n {
            a[i][i] = 2;
        }
        fn chain(a: &mut [Vec<i64>], i: usize, j: usize) {
            a[i][j] = -1;
            a[j][i] = -1;
        }
        match self.family {
            Family::A1 => {
                if n == 1 {
                    a[0][1] = -2;
                    a[1][0] = -2;
                } else {
                    for i in 0..n {
                        chain(&mut a, i, i + 1);
                    }
                    chain(&mut a, 0, n);
                }
            }
            Family::B1 => {
                chain(&mut a, 0, 2);
                for i in 1..n - 1 {
                    chain(&mut a, i, i + 1);
                }
                // n-1 => n, alpha_n short
                a[n - 1][n] = -1;
                a[n][n - 1] = -2;
            }
            Family::C1 => {
                // 0 => 1 (alpha_1 short), n-1 <= n (alpha_{n-1} short)
                a[0][1] = -1;
                a[1][0] = -2;
                for i in 1..n - 1 {
                    chain(&mut a, i, i + 1);
                }
                a[n - 1][n] = -2;
                a[n][n - 1] = -1;
            }
            Family::D1 => {
                chain(&mut a, 0, 2);
                for i in 1..n - 1 {
                    chain(&mut a, i, i + 1);
                }
                chain(&mut a, n - 2, n);
            }
            Family::A2Even => {
                if n == 1 {
                    // quadruple bond, alpha_0 short
                    a[0][1] = -4;
                    a[1][0] = -1;
                } else {
                    // 0 <= 1 (alpha_0 short), n-1 <= n (alpha_{n-1} short)
                    a[0][1] = -2;
                    a[1][0] = -1;
                    for i in 1..n - 1 {
                        chain(&mut a, i, i + 1);
                    }
                    a[n - 1][n] = -2;
                    a[n][n - 1] = -1;
                }
            }
            Family::A2EvenDagger => {
                // A_{2n}^{(2)} with nodes relabeled i <-> n-i
                let base = AffineType {
                    family: Family::A2Even,
                    rank: n,
                }
                .cartan_matrix();
                for i in 0..=n {
                    for j in 0..=n {
                        a[i][j] = base[n - i][n - j];
                    }
                }
            }
            Family::A2Odd => {
                chain(&mut a, 0, 2);
                for i in 1..n - 1 {
                    chain(&mut a, i, i + 1);
                }
                // n-1 <= n, alpha_{n-1} short (classical C_n)
                a[n - 1][n] = -2;
                a[n][n - 1] = -1;
            }
            Family::D2 => {
                // 0 <= 1 (alpha_0 short), n-1 => n (alpha_n short)
                a[0][1] = -2;
                a[1][0] = -1;
                for i in 1..n - 1 {
                    chain(&mut a, i, i + 1);
                }
                a[n - 1][n] = -1;
                a[n][n - 1] = -2;
            }
        }
        a
    }

    /// Classical Cartan matrix over I_0 x I_0 (1-based nodes at index a-1).
    pub fn classical_cartan(self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let full = self.cartan_matrix();
        (1..=n)
            .map(|i| (1..=n).map(|j| full[i][j]).collect())
            .collect()
    }

    /// Kac labels (c, c_dual): smallest positive integer vectors spanning the
    /// right and left kernels of the affine Cartan matrix.
    pub fn marks(self) -> (Vec<i64>, Vec<i64>) {
        let a = self.cartan_matrix();
        let c = kernel_vector(&a, false);
        let c_dual = kernel_vector(&a, true);
        (c, c_dual)
    }

    /// Scaling factors gamma over I; all ones for the simply-laced families.
    pub fn scaling_factors(self) -> Vec<i64> {
        let n = self.rank;
        let mut g = vec![1i64; n + 1];
        match self.family {
            Family::A1 | Family::D1 | Family::A2Odd | Family::D2 => {}
            Family::B1 => {
                for x in g.iter_mut().take(n) {
                    *x = 2;
                }
            }
            Family::C1 => {
                g[0] = 2;
                g[n] = 2;
            }
            Family::A2Even => g[n] = 2,
            Family::A2EvenDagger => g[0] = 2,
        }
        g
    }

    /// Diagram folding onto the ambient simply-laced type.
    pub fn folding(self) -> Result<FoldingData> {
        let n = self.rank;
        match self.family {
            Family::A1 | Family::D1 => Err(Error::NotFolded(self.family.name())),
            Family::C1 | Family::A2Even | Family::A2EvenDagger | Family::D2 => {
                // ambient A_{2n-1}^{(1)}
                let ambient = AffineType::new(Family::A1, 2 * n - 1)?;
                let mut orbit = vec![vec![0usize]];
                for a in 1..n {
                    orbit.push(vec![a, 2 * n - a]);
                }
                orbit.push(vec![n]);
                Ok(FoldingData {
                    ambient,
                    orbit,
                    gamma: self.scaling_factors(),
                })
            }
            Family::B1 | Family::A2Odd => {
                // ambient D_{n+1}^{(1)}
                let ambient = AffineType::new(Family::D1, n + 1)?;
                let mut orbit: Vec<Vec<usize>> = (0..n).map(|a| vec![a]).collect();
                orbit.push(vec![n, n + 1]);
                Ok(FoldingData {
                    ambient,
                    orbit,
                    gamma: self.scaling_factors(),
                })
            }
        }
    }

    /// kappa_r = 1 unless the type is A_{2n}^{(2)dagger} and r = n.
    pub fn kappa(self, r: usize) -> i64 {
        if self.family == Family::A2EvenDagger && r == self.rank {
            2
        } else {
            1
        }
    }

    /// t_a^vee = max(c_a^vee / c_a, c_0), doubled; forced to 1 for
    /// A_{2n}^{(2)dagger}.
    pub fn tee_vee_2x(self, a: usize) -> i64 {
        if self.family == Family::A2EvenDagger {
            return 2;
        }
        let (c, cv) = self.marks();
        // ratio and c_0 are 1/2, 1 or 2 for these families; compare doubled
        let ratio_2x = 2 * cv[a] / c[a];
        let c0_2x = 2 * c[0];
        ratio_2x.max(c0_2x)
    }

    /// Ambient factor specs realizing the folded KR crystal B^{r,s}.
    pub fn ambient_factors(self, r: usize, s: usize) -> Result<Vec<(usize, usize)>> {
        let n = self.rank;
        if r < 1 || r > n || s < 1 {
            return Err(Error::InvalidFactor { r, s });
        }
        match self.family {
            Family::A1 | Family::D1 => Err(Error::NotFolded(self.family.name())),
            Family::C1 => Ok(if r < n {
                vec![(r, s), (2 * n - r, s)]
            } else {
                vec![(n, 2 * s)]
            }),
            Family::D2 => Ok(if r < n {
                vec![(r, s), (2 * n - r, s)]
            } else {
                vec![(n, s)]
            }),
            Family::A2Even | Family::A2EvenDagger => Ok(if r < n {
                vec![(r, s), (2 * n - r, s)]
            } else {
                vec![(n, s), (n, s)]
            }),
            Family::B1 => Ok(if r < n {
                vec![(r, 2 * s)]
            } else {
                vec![(n, s), (n + 1, s)]
            }),
            Family::A2Odd => Ok(if r < n {
                vec![(r, s)]
            } else {
                vec![(n, s), (n + 1, s)]
            }),
        }
    }

    /// Classical weight embedding Psi: Lambda-bar_a -> gamma_a * sum over the
    /// orbit of a of ambient fundamental weights.
    pub fn psi_embed(self, w: &Weight) -> Result<Weight> {
        let fold = self.folding()?;
        let m = fold.ambient.rank;
        let mut out = vec![0i64; m];
        for (a, &coeff) in w.iter().enumerate() {
            let node = a + 1;
            for &b in &fold.orbit[node] {
                out[b - 1] += fold.gamma[node] * coeff;
            }
        }
        Ok(out)
    }

    /// Inverse of [`psi_embed`] where defined; errors off the image.
    pub fn psi_retract(self, ambient: &Weight) -> Result<Weight> {
        let fold = self.folding()?;
        let n = self.rank;
        let mut out = vec![0i64; n];
        for a in 1..=n {
            let g = fold.gamma[a];
            let vals: Vec<i64> = fold.orbit[a].iter().map(|&b| ambient[b - 1]).collect();
            if vals.iter().any(|&v| v != vals[0]) || vals[0] % g != 0 {
                return Err(Error::OffWeightImage);
            }
            out[a - 1] = vals[0] / g;
        }
        // all ambient nodes lie in some classical orbit, so matching the
        // orbit data is the whole condition
        if self.psi_embed(&out)? != *ambient {
            return Err(Error::OffWeightImage);
        }
        Ok(out)
    }

    /// Classical weight as a weakly decreasing sequence in the standard
    /// epsilon-coordinates, entries doubled (spin nodes give half-entries).
    pub fn weight_to_partition_2x(self, w: &Weight) -> Result<Vec<i64>> {
        if !weight_is_dominant(w) {
            return Err(Error::NonDominant);
        }
        Ok(classical_weight_to_partition_2x(self.classical(), w))
    }
}

/// Epsilon-coordinates of a dominant classical weight, doubled.
pub fn classical_weight_to_partition_2x(cl: Classical, w: &Weight) -> Vec<i64> {
    let n = cl.rank();
    let mut out = vec![0i64; n];
    match cl {
        Classical::A(_) | Classical::C(_) => {
            for i in 0..n {
                out[i] = 2 * w[i..].iter().sum::<i64>();
            }
        }
        Classical::B(_) => {
            for i in 0..n {
                let body: i64 = w[i..n - 1].iter().sum();
                out[i] = 2 * body + w[n - 1];
            }
        }
        Classical::D(_) => {
            for i in 0..n {
                let body: i64 = if i <= n.saturating_sub(2) {
                    w[i..n - 2].iter().sum()
                } else {
                    0
                };
                if i < n - 1 {
                    out[i] = 2 * body + w[n - 2] + w[n - 1];
                } else {
                    out[i] = w[n - 1] - w[n - 2];
                }
            }
        }
    }
    out
}

/// Smallest positive integer vector spanning the (co)kernel of a corank-1
/// integer matrix. `left` selects the left kernel.
fn kernel_vector(a: &[Vec<i64>], left: bool) -> Vec<i64> {
    let n = a.len();
    let get = |i: usize, j: usize| if left { a[j][i] } else { a[i][j] };
    // fraction-free Gaussian elimination over i128
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| get(i, j) as i128).collect())
        .collect();
    let mut pivot_col_of_row = vec![usize::MAX; n];
    let mut row = 0usize;
    for col in 0..n {
        if row == n {
            break;
        }
        if let Some(p) = (row..n).find(|&r| m[r][col] != 0) {
            m.swap(row, p);
            for r in 0..n {
                if r != row && m[r][col] != 0 {
                    let (x, y) = (m[row][col], m[r][col]);
                    for c in 0..n {
                        m[r][c] = m[r][c] * x - m[row][c] * y;
                    }
                }
            }
            pivot_col_of_row[row] = col;
            row += 1;
        }
    }
    let pivots: Vec<usize> = pivot_col_of_row[..row].to_vec();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    assert_eq!(free.len(), 1, "affine Cartan matrix must have corank 1");
    let f = free[0];
    // back-substitute with rational arithmetic via a common scale
    let mut num = vec![0i128; n];
    let mut den = vec![1i128; n];
    num[f] = 1;
    for (r, &pc) in pivots.iter().enumerate() {
        // m[r][pc] * x_pc + m[r][f] * x_f = 0
        num[pc] = -m[r][f];
        den[pc] = m[r][pc];
    }
    let scale = den.iter().fold(1i128, |l, &d| lcm(l, d.abs()));
    let mut v: Vec<i128> = (0..n).map(|i| num[i] * (scale / den[i])).collect();
    let g = v.iter().fold(0i128, |g, &x| gcd(g, x.abs()));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
    if v.iter().sum::<i128>() < 0 {
        for x in v.iter_mut() {
            *x = -*x;
        }
    }
    assert!(v.iter().all(|&x| x > 0), "marks must be positive");
    v.into_iter().map(|x| x as i64).collect()
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Exact solve of an integer linear system M * eta = rhs. Returns eta when
/// the solution is a nonnegative integer vector, None otherwise.
pub fn solve_box_counts(mat: &[Vec<i64>], rhs: &[i64]) -> Option<Vec<i64>> {
    let n = mat.len();
    let mut m: Vec<Vec<i128>> = (0..n)
        .map(|i| {
            let mut row: Vec<i128> = mat[i].iter().map(|&x| x as i128).collect();
            row.push(rhs[i] as i128);
            row
        })
        .collect();
    // fraction-free elimination, then exact back substitution
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
    let mut eta = vec![0i64; n];
    for i in 0..n {
        let (p, q) = (m[i][n], m[i][i]);
        if q == 0 || p % q != 0 {
            return None;
        }
        let v = p / q;
        if v < 0 || v > i64::MAX as i128 {
            return None;
        }
        eta[i] = v as i64;
    }
    Some(eta)
}
