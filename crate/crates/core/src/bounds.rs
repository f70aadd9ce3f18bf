//! Integer evaluators for the point-count bounds and a few class-field
//! degree and genus formulas. Square roots are integer square roots, so every
//! comparison is exact.

use crate::error::{Error, Result};
use crate::powcode::FqPoly;

fn isqrt(x: u128) -> u128 {
    x.isqrt()
}

/// floor(2 sqrt(q)).
pub fn floor_two_sqrt(q: u64) -> u64 {
    isqrt(4 * q as u128) as u64
}

/// q + 1 + floor(2 g sqrt(q)).
pub fn hasse_weil(q: u64, g: u64) -> u64 {
    let g = g as u128;
    q + 1 + isqrt(4 * g * g * q as u128) as u64
}

/// q + 1 + g floor(2 sqrt(q)).
pub fn serre(q: u64, g: u64) -> u64 {
    q + 1 + g * floor_two_sqrt(q)
}

/// 1 + p(q - d).
pub fn new_bound(p: u64, m: u32, d: u64) -> Result<u64> {
    let q = p.pow(m);
    if d == 0 || d > q - 1 {
        return Err(Error::InvalidArgument(format!(
            "minimum distance {d} outside 1..={}",
            q - 1
        )));
    }
    Ok(1 + p * (q - d))
}

fn div_ceil_signed(num: i128, den: i128) -> i128 {
    debug_assert!(den > 0);
    let q = num.div_euclid(den);
    if num.rem_euclid(den) == 0 {
        q
    } else {
        q + 1
    }
}

/// ceil(q - p^(m-1) - (r-1)(p-1)/(2p) * floor(2 sqrt q)).
pub fn d_lower_bound(p: u64, m: u32, r: u32) -> i64 {
    let q = p.pow(m) as i128;
    let p = p as i128;
    let num = 2 * p * (q - q / p) - (r as i128 - 1) * (p - 1) * floor_two_sqrt(q as u64) as i128;
    div_ceil_signed(num, 2 * p) as i64
}

/// Weil bound on the trace-zero set: ||Z_f| - q/p| <= (r-1)(p-1) sqrt(q) / p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct WeilZfBound {
    pub p: u64,
    pub q: u64,
    pub r: u32,
}

impl WeilZfBound {
    pub fn radius(&self) -> f64 {
        (self.r as f64 - 1.0) * (self.p as f64 - 1.0) * (self.q as f64).sqrt() / self.p as f64
    }

    /// Exact test: (p z - q)^2 <= (r-1)^2 (p-1)^2 q.
    pub fn contains(&self, zeros: u64) -> bool {
        let dev = (self.p * zeros) as i128 - self.q as i128;
        let c = (self.r as i128 - 1) * (self.p as i128 - 1);
        dev * dev <= c * c * self.q as i128
    }

    /// Smallest and largest admissible |Z_f| in 0..=q.
    pub fn admissible(&self) -> (u64, u64) {
        let lo = (0..=self.q).find(|&z| self.contains(z)).unwrap_or(0);
        let hi = (0..=self.q).rev().find(|&z| self.contains(z)).unwrap_or(self.q);
        (lo, hi)
    }
}

pub fn weil_zf_bound(p: u64, m: u32, r: u32) -> WeilZfBound {
    WeilZfBound {
        p,
        q: p.pow(m),
        r,
    }
}

/// Genus of K(Lambda_{P^n}) for P of degree d over F_q, from
/// 2g - 2 = q^(d(n-1)) [ (qdn - dn - q)(q^d - 1)/(q - 1) - d ].
pub fn cyclotomic_genus(q: u64, d: u32, n: u32) -> Result<u64> {
    if q < 2 || d == 0 || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "cyclotomic genus needs q >= 2, d, n >= 1 (got {q}, {d}, {n})"
        )));
    }
    let qi = q as i128;
    let (di, ni) = (d as i128, n as i128);
    let lead = qi.pow(d * (n - 1));
    let geom = (qi.pow(d) - 1) / (qi - 1);
    let two_g_minus_2 = lead * ((qi * di * ni - di * ni - qi) * geom - di);
    let two_g = two_g_minus_2 + 2;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "2g - 2 = {two_g_minus_2} does not give a genus"
        )));
    }
    Ok((two_g / 2) as u64)
}

/// Euler function of an effective divisor sum c_j Q_j, given as (deg Q_j, c_j).
pub fn euler_phi_divisor(q: u64, parts: &[(u32, u32)]) -> u64 {
    parts
        .iter()
        .map(|&(deg, c)| (q.pow(deg) - 1) * q.pow((c - 1) * deg))
        .product()
}

/// [F_S^D : F] = h_F * t * phi(D) / (q - 1).
pub fn ray_class_degree(q: u64, t: u64, phi_d: u64, h: u64) -> Result<u64> {
    if q < 2 || t == 0 || phi_d == 0 || h == 0 {
        return Err(Error::InvalidArgument("ray class degree inputs must be positive".into()));
    }
    let num = h as u128 * t as u128 * phi_d as u128;
    if !num.is_multiple_of(q as u128 - 1) {
        return Err(Error::InvalidArgument(format!(
            "h t phi(D) = {num} is not divisible by q - 1 = {}",
            q - 1
        )));
    }
    Ok((num / (q as u128 - 1)) as u64)
}

/// One row of the comparison tables.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundRow {
    pub p: u64,
    pub m: u32,
    pub r: u32,
    pub q: u64,
    pub n: u64,
    pub k: usize,
    pub d: Option<u64>,
    pub genus: u64,
    pub hasse_weil: u64,
    pub serre: u64,
    pub our_bound: Option<u64>,
    pub d_lower: i64,
    /// Largest N_f found by exhaustive search, when it was run.
    pub max_points: Option<u64>,
    pub witness: Option<FqPoly>,
    /// Curves whose point count was checked against Hasse-Weil, and failures.
    pub curves_checked: u64,
    pub hasse_weil_violations: u64,
    pub seconds: f64,
    /// Reason the minimum distance was not computed.
    pub skipped: Option<String>,
}

impl BoundRow {
    /// Hasse-Weil for even m, Serre for odd m.
    pub fn classical(&self) -> u64 {
        if self.m.is_multiple_of(2) {
            self.hasse_weil
        } else {
            self.serre
        }
    }

    /// `Some(true)` when the point search reached the code bound.
    pub fn tight(&self) -> Option<bool> {
        Some(self.max_points? == self.our_bound?)
    }

    /// Checks our bound <= Serre, the lower bound on d, Singleton and Hasse-Weil.
    pub fn validate(&self) -> Result<()> {
        if self.hasse_weil_violations > 0 {
            return Err(Error::Invariant(format!(
                "{}^{} r={}: {} curves violate Hasse-Weil",
                self.p, self.m, self.r, self.hasse_weil_violations
            )));
        }
        let (Some(d), Some(ours)) = (self.d, self.our_bound) else {
            return Ok(());
        };
        if ours > self.serre {
            return Err(Error::Invariant(format!(
                "{}^{} r={}: bound {ours} exceeds the Serre bound {}",
                self.p, self.m, self.r, self.serre
            )));
        }
        if (d as i64) < self.d_lower {
            return Err(Error::Invariant(format!(
                "{}^{} r={}: d={d} below the lower bound {}",
                self.p, self.m, self.r, self.d_lower
            )));
        }
        if d + self.k as u64 > self.n + 1 {
            return Err(Error::Invariant(format!(
                "{}^{} r={}: [{}, {}, {d}] violates Singleton",
                self.p, self.m, self.r, self.n, self.k
            )));
        }
        if let Some(nmax) = self.max_points {
            if nmax > ours {
                return Err(Error::Invariant(format!(
                    "{}^{} r={}: a curve with {nmax} points exceeds the bound {ours}",
                    self.p, self.m, self.r
                )));
            }
        }
        Ok(())
    }
}
