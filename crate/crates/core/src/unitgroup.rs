//! The group (F_q[T]/(T^(r+1)))^* / F_q^* of truncated units.
//!
//! Classes are stored by their representative 1 + a_1 T + ... + a_r T^r. For
//! r < p the group is elementary abelian of order q^r and the truncated
//! logarithm is an isomorphism onto (F_q^r, +).

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::gf::{inv_mod, FieldCtx, FqElem};
use crate::linalg::rank_mod_p;

/// The class of 1 + a_1 T + ... + a_r T^r.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruncatedUnit {
    coeffs: Vec<FqElem>,
}

impl TruncatedUnit {
    /// (a_1, ..., a_r).
    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn r(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(|a| a.is_zero())
    }
}

#[derive(Clone, Copy, Debug)]
pub struct UnitGroup<'a> {
    ctx: &'a FieldCtx,
    r: u32,
}

/// Largest subgroup `subgroup_order` will enumerate.
const MAX_CLOSURE: usize = 1 << 22;

impl<'a> UnitGroup<'a> {
    pub fn new(ctx: &'a FieldCtx, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidArgument("truncation degree must be positive".into()));
        }
        Ok(UnitGroup { ctx, r })
    }

    pub fn ctx(&self) -> &FieldCtx {
        self.ctx
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// p^(rm) when r < p.
    pub fn order(&self) -> u64 {
        (self.ctx.q() as u64).pow(self.r)
    }

    pub fn identity(&self) -> TruncatedUnit {
        TruncatedUnit {
            coeffs: vec![FqElem::ZERO; self.r as usize],
        }
    }

    /// 1 + a_1 T + ... + a_r T^r.
    pub fn unit(&self, a: Vec<FqElem>) -> Result<TruncatedUnit> {
        if a.len() != self.r as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} coefficients, got {}",
                self.r,
                a.len()
            )));
        }
        Ok(TruncatedUnit { coeffs: a })
    }

    /// 1 + alpha T.
    pub fn linear(&self, alpha: FqElem) -> TruncatedUnit {
        let mut coeffs = vec![FqElem::ZERO; self.r as usize];
        coeffs[0] = alpha;
        TruncatedUnit { coeffs }
    }

    /// The class of c_0 + c_1 T + ... + c_r T^r, scaled to constant term 1.
    pub fn from_series(&self, c: &[FqElem]) -> Result<TruncatedUnit> {
        let c0 = *c.first().ok_or(Error::ZeroInverse)?;
        let inv = self.ctx.inv(c0)?;
        let mut coeffs: Vec<FqElem> = c.iter().skip(1).map(|&x| self.ctx.mul(x, inv)).collect();
        coeffs.resize(self.r as usize, FqElem::ZERO);
        coeffs.truncate(self.r as usize);
        Ok(TruncatedUnit { coeffs })
    }

    fn check(&self, u: &TruncatedUnit) -> Result<()> {
        if u.r() != self.r as usize {
            return Err(Error::InvalidArgument(format!(
                "unit truncated at degree {} used in a group of degree {}",
                u.r(),
                self.r
            )));
        }
        Ok(())
    }

    fn series(u: &TruncatedUnit) -> Vec<FqElem> {
        std::iter::once(FqElem::ONE).chain(u.coeffs.iter().copied()).collect()
    }

    /// Product of truncated series of length r + 1.
    fn series_mul(&self, a: &[FqElem], b: &[FqElem]) -> Vec<FqElem> {
        let len = self.r as usize + 1;
        let mut out = vec![FqElem::ZERO; len];
        for (i, &x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, &y) in b.iter().enumerate().take(len - i) {
                out[i + j] = self.ctx.add(out[i + j], self.ctx.mul(x, y));
            }
        }
        out
    }

    pub fn mul(&self, u: &TruncatedUnit, v: &TruncatedUnit) -> Result<TruncatedUnit> {
        self.check(u)?;
        self.check(v)?;
        let prod = self.series_mul(&Self::series(u), &Self::series(v));
        Ok(TruncatedUnit {
            coeffs: prod[1..].to_vec(),
        })
    }

    pub fn pow(&self, u: &TruncatedUnit, mut e: u64) -> Result<TruncatedUnit> {
        self.check(u)?;
        let mut base = u.clone();
        let mut acc = self.identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            base = self.mul(&base, &base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    fn require_log(&self) -> Result<()> {
        if self.r >= self.ctx.p() {
            return Err(Error::DegreeBound {
                r: self.r,
                p: self.ctx.p(),
            });
        }
        Ok(())
    }

    fn recip(&self, j: u32) -> FqElem {
        let p = self.ctx.p() as u64;
        self.ctx.from_prime(inv_mod(j as u64 % p, p))
    }

    /// Coefficients (c_1..c_r) of log(u) = sum_j (-1)^(j-1) (u-1)^j / j mod T^(r+1).
    pub fn log(&self, u: &TruncatedUnit) -> Result<Vec<FqElem>> {
        self.require_log()?;
        self.check(u)?;
        let z: Vec<FqElem> = std::iter::once(FqElem::ZERO).chain(u.coeffs.iter().copied()).collect();
        let mut zj = z.clone();
        let mut acc = vec![FqElem::ZERO; self.r as usize + 1];
        for j in 1..=self.r {
            let mut c = self.recip(j);
            if j % 2 == 0 {
                c = self.ctx.neg(c);
            }
            for (a, &t) in acc.iter_mut().zip(&zj) {
                *a = self.ctx.add(*a, self.ctx.mul(c, t));
            }
            zj = self.series_mul(&zj, &z);
        }
        Ok(acc[1..].to_vec())
    }

    /// Inverse of [`log`](Self::log): sum_j c^j / j! mod T^(r+1).
    pub fn exp(&self, c: &[FqElem]) -> Result<TruncatedUnit> {
        self.require_log()?;
        if c.len() != self.r as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} log coordinates, got {}",
                self.r,
                c.len()
            )));
        }
        let z: Vec<FqElem> = std::iter::once(FqElem::ZERO).chain(c.iter().copied()).collect();
        let mut term = vec![FqElem::ZERO; self.r as usize + 1];
        term[0] = FqElem::ONE;
        let mut acc = term.clone();
        for j in 1..=self.r {
            term = self.series_mul(&term, &z);
            let inv_j = self.recip(j);
            term.iter_mut().for_each(|t| *t = self.ctx.mul(*t, inv_j));
            for (a, &t) in acc.iter_mut().zip(&term) {
                *a = self.ctx.add(*a, t);
            }
        }
        self.from_series(&acc)
    }

    /// Component j is (-1)^(j-1) j [T^j] log(1 + b_1 T + ... + b_r T^r):
    /// b_1, b_1^2 - 2 b_2, b_1^3 - 3 b_1 b_2 + 3 b_3, ...
    pub fn power_sum_targets(&self, b: &[FqElem]) -> Result<Vec<FqElem>> {
        let logs = self.log(&self.unit(b.to_vec())?)?;
        Ok(logs
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                let j = i as u32 + 1;
                let c = self.ctx.scale(j % self.ctx.p(), c);
                if j.is_multiple_of(2) {
                    self.ctx.neg(c)
                } else {
                    c
                }
            })
            .collect())
    }

    /// log(u) flattened to F_p^(rm), block k holding the coordinates of c_k.
    pub fn log_vector(&self, u: &TruncatedUnit) -> Result<Vec<u32>> {
        Ok(self
            .log(u)?
            .into_iter()
            .flat_map(|c| self.ctx.to_vector(c))
            .collect())
    }

    /// F_p-rank of the log images; the generated subgroup has p^rank elements.
    pub fn span_rank(&self, units: &[TruncatedUnit]) -> Result<usize> {
        self.require_log()?;
        let rows = units
            .iter()
            .map(|u| self.log_vector(u))
            .collect::<Result<Vec<_>>>()?;
        Ok(rank_mod_p(&rows, self.ctx.p()))
    }

    /// Size of the subgroup generated by `units`, by closing under products.
    pub fn subgroup_order(&self, units: &[TruncatedUnit]) -> Result<u64> {
        for u in units {
            self.check(u)?;
        }
        let mut seen: HashSet<TruncatedUnit> = HashSet::new();
        seen.insert(self.identity());
        let mut frontier = vec![self.identity()];
        while let Some(x) = frontier.pop() {
            for g in units {
                let y = self.mul(&x, g)?;
                if seen.insert(y.clone()) {
                    if seen.len() > MAX_CLOSURE {
                        return Err(Error::InvalidArgument(format!(
                            "subgroup exceeds {MAX_CLOSURE} elements"
                        )));
                    }
                    frontier.push(y);
                }
            }
        }
        Ok(seen.len() as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(i: u32) -> FqElem {
        FqElem::from_index(i)
    }

    #[test]
    fn group_law() {
        let ctx = FieldCtx::new(5, 1).unwrap();
        let g = UnitGroup::new(&ctx, 2).unwrap();
        let (a, b) = (e(2), e(4));
        let prod = g.mul(&g.linear(a), &g.linear(b)).unwrap();
        assert_eq!(prod.coeffs(), &[ctx.add(a, b), ctx.mul(a, b)]);
        let u = g.unit(vec![e(3), e(1)]).unwrap();
        assert_eq!(g.mul(&u, &g.identity()).unwrap(), u);
        assert!(g.pow(&u, 5).unwrap().is_identity());
        assert!(g.mul(&u, &UnitGroup::new(&ctx, 3).unwrap().identity()).is_err());
    }

    #[test]
    fn normalization() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        let g = UnitGroup::new(&ctx, 2).unwrap();
        let u = g.from_series(&[e(3), e(6), e(2)]).unwrap();
        assert_eq!(u.coeffs(), &[e(2), ctx.div(e(2), e(3)).unwrap()]);
        assert!(g.from_series(&[e(0), e(1)]).is_err());
    }

    #[test]
    fn small_logs() {
        let ctx = FieldCtx::new(7, 1).unwrap();
        let g1 = UnitGroup::new(&ctx, 1).unwrap();
        assert_eq!(g1.log(&g1.linear(e(5))).unwrap(), vec![e(5)]);
        let g2 = UnitGroup::new(&ctx, 2).unwrap();
        let a = e(3);
        let half = ctx.inv(e(2)).unwrap();
        let expect = ctx.neg(ctx.mul(ctx.mul(a, a), half));
        assert_eq!(g2.log(&g2.linear(a)).unwrap(), vec![a, expect]);
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert!(UnitGroup::new(&f3, 3).unwrap().log(&UnitGroup::new(&f3, 3).unwrap().identity()).is_err());
    }

    #[test]
    fn targets_for_r2() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        let g = UnitGroup::new(&ctx, 2).unwrap();
        for (b1, b2) in [(3u32, 7u32), (0, 11), (24, 0)] {
            let (b1, b2) = (e(b1), e(b2));
            let t = g.power_sum_targets(&[b1, b2]).unwrap();
            assert_eq!(t[0], b1);
            assert_eq!(t[1], ctx.sub(ctx.mul(b1, b1), ctx.scale(2, b2)));
        }
    }

    #[test]
    fn span_of_prime_field_units() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let g = UnitGroup::new(&ctx, 2).unwrap();
        assert_eq!(g.span_rank(&[]).unwrap(), 0);
        let units = [g.linear(e(1)), g.linear(e(2))];
        assert_eq!(g.span_rank(&units).unwrap(), 2);
        assert_eq!(g.subgroup_order(&units).unwrap(), 9);
    }
}
