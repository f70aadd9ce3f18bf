//! The power-trace code: the F_p-row space of the rm x (q-1) matrix whose
//! column for alpha in F_q^* stacks the coordinate vectors of alpha, alpha^2,
//! ..., alpha^r. Its codewords are exactly the words (Tr f(alpha))_alpha for
//! f = a_1 x + ... + a_r x^r, which ties the minimum distance to the largest
//! trace-zero set of such polynomials.

mod gray;
mod orbit;
mod search;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use search::{SearchOptions, Strategy, DEFAULT_WORK_LIMIT};

pub(crate) use orbit::{orbit_search, orbit_work_estimate};

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};
use crate::linalg::rank_mod_p;

/// f(x) = a_1 x + ... + a_r x^r, stored as `[a_1, ..., a_r]`.
///
/// Ordering is lexicographic on that slice (a_1 compared first), each
/// coefficient by its encoding index. Polynomials of different stored length
/// compare as if padded with zeros.
#[derive(Clone, Debug, Default)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn new(coeffs: Vec<FqElem>) -> Self {
        FqPoly { coeffs }
    }

    pub fn zero(r: usize) -> Self {
        FqPoly {
            coeffs: vec![FqElem::ZERO; r],
        }
    }

    pub fn from_indices(indices: &[u32]) -> Self {
        FqPoly::new(indices.iter().map(|&i| FqElem::from_index(i)).collect())
    }

    /// Coefficients a_1..a_len.
    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    /// Coefficient of x^k (k >= 1), zero beyond the stored length.
    pub fn coeff(&self, k: usize) -> FqElem {
        debug_assert!(k >= 1);
        self.coeffs.get(k - 1).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn indices(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.index()).collect()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero()).map(|i| i + 1)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, ctx: &FieldCtx, x: FqElem) -> FqElem {
        let acc = self
            .coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &a| ctx.add(ctx.mul(acc, x), a));
        ctx.mul(acc, x)
    }

    /// Padded to length `r` with zero coefficients.
    pub fn padded(&self, r: usize) -> FqPoly {
        let mut c = self.coeffs.clone();
        if c.len() < r {
            c.resize(r, FqElem::ZERO);
        }
        FqPoly::new(c)
    }

    fn cmp_padded(&self, other: &Self) -> Ordering {
        let n = self.coeffs.len().max(other.coeffs.len());
        (1..=n)
            .map(|k| self.coeff(k).cmp(&other.coeff(k)))
            .find(|o| o.is_ne())
            .unwrap_or(Ordering::Equal)
    }
}

impl PartialEq for FqPoly {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_padded(other).is_eq()
    }
}

impl Eq for FqPoly {}

impl std::hash::Hash for FqPoly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        let len = self.degree().unwrap_or(0);
        self.coeffs[..len].hash(state);
    }
}

impl PartialOrd for FqPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FqPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_padded(other)
    }
}

impl fmt::Display for FqPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Outcome of a minimum-distance search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinDistance {
    pub d: u64,
    /// Lexicographically smallest f of weight `d`.
    pub witness: FqPoly,
    /// Number of nonzero f whose codeword has weight `d`.
    pub min_weight_count: u64,
    /// Polynomials (or orbit representatives) whose weight was evaluated.
    pub evaluated: u64,
    /// Curves among the evaluated ones violating the Hasse-Weil inequality.
    pub hasse_weil_violations: u64,
    pub strategy: Strategy,
}

#[derive(Clone, Debug)]
pub struct PowerTraceCode {
    ctx: Arc<FieldCtx>,
    r: u32,
    rows: Vec<Vec<u32>>,
}

impl PowerTraceCode {
    /// Builds the generator matrix; requires 1 <= r < p.
    pub fn new(ctx: Arc<FieldCtx>, r: u32) -> Result<Self> {
        check_degree_bound(&ctx, r)?;
        let m = ctx.m() as usize;
        let n = ctx.group_order() as usize;
        let mut rows = vec![vec![0u32; n]; r as usize * m];
        for (col, alpha) in ctx.nonzero_elements().enumerate() {
            let mut power = FqElem::ONE;
            for k in 0..r as usize {
                power = ctx.mul(power, alpha);
                for (j, c) in ctx.to_vector(power).into_iter().enumerate() {
                    rows[k * m + j][col] = c;
                }
            }
        }
        Ok(PowerTraceCode { ctx, r, rows })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// Code length n = q - 1.
    pub fn len(&self) -> usize {
        self.ctx.group_order() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Generator matrix rows; row (k-1)*m + j holds coordinate j of alpha^k.
    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.rows
    }

    /// F_p-rank of the generator matrix.
    pub fn dimension(&self) -> usize {
        rank_mod_p(&self.rows, self.ctx.p())
    }

    /// Rank of the columns with the given 0-based indices (column i is alpha_{i+1}).
    pub fn columns_rank(&self, cols: &[usize]) -> Result<usize> {
        let n = self.len();
        if let Some(&bad) = cols.iter().find(|&&c| c >= n) {
            return Err(Error::IndexOutOfRange { index: bad, len: n });
        }
        let columns: Vec<Vec<u32>> = cols
            .iter()
            .map(|&c| self.rows.iter().map(|row| row[c]).collect())
            .collect();
        Ok(rank_mod_p(&columns, self.ctx.p()))
    }

    fn check_poly(&self, f: &FqPoly) -> Result<()> {
        if f.degree().unwrap_or(0) > self.r as usize {
            return Err(Error::InvalidArgument(format!(
                "polynomial of degree {} exceeds r = {}",
                f.degree().unwrap_or(0),
                self.r
            )));
        }
        Ok(())
    }

    /// (Tr f(alpha_1), ..., Tr f(alpha_{q-1})), by direct evaluation.
    pub fn codeword(&self, f: &FqPoly) -> Result<Vec<u32>> {
        self.check_poly(f)?;
        Ok(self
            .ctx
            .nonzero_elements()
            .map(|x| self.ctx.trace(f.eval(&self.ctx, x)))
            .collect())
    }

    /// Hamming weight of the codeword of f; f must be nonzero.
    pub fn weight(&self, f: &FqPoly) -> Result<usize> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(self.codeword(f)?.iter().filter(|&&c| c != 0).count())
    }

    /// Row-combination coefficients u with u * A = codeword(f):
    /// u_{(k-1)m + j} = Tr(a_k t^j).
    pub fn row_coefficients(&self, f: &FqPoly) -> Result<Vec<u32>> {
        self.check_poly(f)?;
        let ctx = &self.ctx;
        let m = ctx.m();
        let mut u = Vec::with_capacity(self.rows.len());
        for k in 1..=self.r as usize {
            let a = f.coeff(k);
            for j in 0..m {
                u.push(ctx.trace(ctx.mul(a, ctx.elem(ctx.p().pow(j)))));
            }
        }
        Ok(u)
    }

    /// Inverse of [`row_coefficients`](Self::row_coefficients): a_k = sum_j u_{kj} beta_j
    /// over the trace-dual basis.
    pub fn poly_from_row_coefficients(&self, u: &[u32]) -> FqPoly {
        let dual = self.ctx.dual_basis();
        poly_from_coeffs_with_dual(&self.ctx, &dual, self.r as usize, u)
    }

    /// u * A over F_p.
    pub fn combine_rows(&self, u: &[u32]) -> Vec<u32> {
        let p = self.ctx.p() as u64;
        let mut acc = vec![0u64; self.len()];
        for (row, &c) in self.rows.iter().zip(u) {
            if c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(row) {
                *a = (*a + c as u64 * x as u64) % p;
            }
        }
        acc.into_iter().map(|x| x as u32).collect()
    }

    /// Exact minimum distance with the lexicographically smallest witness.
    pub fn min_distance(&self, opts: &SearchOptions) -> Result<MinDistance> {
        let q = self.ctx.q() as u64;
        match opts.strategy {
            Strategy::Gray => gray::gray_search(self, opts),
            Strategy::Orbit => {
                let out = orbit_search(&self.ctx, self.r, opts)?;
                Ok(MinDistance {
                    d: q - out.max_zeros,
                    witness: out.witness,
                    min_weight_count: out.count,
                    evaluated: out.evaluated,
                    hasse_weil_violations: out.hasse_weil_violations,
                    strategy: Strategy::Orbit,
                })
            }
        }
    }

    /// Estimated elementary operations for a strategy.
    pub fn work_estimate(&self, strategy: Strategy) -> f64 {
        match strategy {
            Strategy::Gray => gray::gray_work_estimate(&self.ctx, self.r),
            Strategy::Orbit => orbit_work_estimate(&self.ctx, self.r),
        }
    }
}

pub(crate) fn check_degree_bound(ctx: &FieldCtx, r: u32) -> Result<()> {
    if r == 0 || r >= ctx.p() {
        return Err(Error::DegreeBound { r, p: ctx.p() });
    }
    Ok(())
}

pub(crate) fn poly_from_coeffs_with_dual(
    ctx: &FieldCtx,
    dual: &[FqElem],
    r: usize,
    u: &[u32],
) -> FqPoly {
    let m = ctx.m() as usize;
    FqPoly::new(
        (0..r)
            .map(|k| {
                (0..m).fold(FqElem::ZERO, |acc, j| {
                    let c = u[k * m + j];
                    if c == 0 {
                        acc
                    } else {
                        ctx.add(acc, ctx.scale(c, dual[j]))
                    }
                })
            })
            .collect(),
    )
}

/// Exact-integer Hasse-Weil check for y^p - y = f with deg f = s and
/// |Z_f| = zeros: (N - 1 - q)^2 <= (s-1)^2 (p-1)^2 q with N = 1 + p * zeros.
pub(crate) fn hasse_weil_holds(p: u64, q: u64, s: u64, zeros: u64) -> bool {
    let dev = (p * zeros) as i128 - q as i128;
    let g2 = (s.saturating_sub(1) as i128) * (p as i128 - 1);
    dev * dev <= g2 * g2 * q as i128
}
