//! Rational points of Artin-Schreier curves y^p - y = f(x) over F_q.
//!
//! For deg f = r prime to p the curve has one rational place at infinity and
//! p places above every alpha with Tr f(alpha) = 0, so N_f = 1 + p |Z_f|.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};
use crate::powcode::{
    check_degree_bound, hasse_weil_holds, orbit_search, FqPoly, PowerTraceCode, SearchOptions,
    Strategy,
};

/// y^p - y = constant + f(x) over a fixed field.
#[derive(Clone, Debug)]
pub struct CurveSpec<'a> {
    ctx: &'a FieldCtx,
    f: FqPoly,
    constant: FqElem,
}

impl<'a> CurveSpec<'a> {
    pub fn new(ctx: &'a FieldCtx, f: FqPoly) -> Result<Self> {
        Self::with_constant(ctx, f, FqElem::ZERO)
    }

    pub fn with_constant(ctx: &'a FieldCtx, f: FqPoly, constant: FqElem) -> Result<Self> {
        let deg = f.degree().ok_or(Error::ZeroPolynomial)? as u32;
        if deg.is_multiple_of(ctx.p()) {
            return Err(Error::DegreeDivisibleByP { deg, p: ctx.p() });
        }
        Ok(CurveSpec { ctx, f, constant })
    }

    pub fn degree(&self) -> u32 {
        self.f.degree().expect("nonzero by construction") as u32
    }

    pub fn genus(&self) -> u64 {
        genus(self.ctx.p(), self.degree()).expect("degree checked at construction")
    }

    pub fn conductor_exponent(&self) -> u32 {
        conductor_exponent(self.degree())
    }

    /// |Z_f|, counting the constant term.
    pub fn zero_set_size(&self) -> u64 {
        let ctx = self.ctx;
        ctx.elements()
            .filter(|&x| ctx.trace(ctx.add(self.f.eval(ctx, x), self.constant)) == 0)
            .count() as u64
    }

    pub fn count_points(&self) -> u64 {
        1 + self.ctx.p() as u64 * self.zero_set_size()
    }
}

/// #{alpha in F_q : Tr(f(alpha)) = 0} for f with zero constant term.
pub fn zero_set_size(ctx: &FieldCtx, f: &FqPoly) -> u64 {
    ctx.elements()
        .filter(|&x| ctx.trace(f.eval(ctx, x)) == 0)
        .count() as u64
}

/// N_f = 1 + p |Z_f|.
pub fn count_points(ctx: &FieldCtx, f: &FqPoly) -> Result<u64> {
    Ok(CurveSpec::new(ctx, f.clone())?.count_points())
}

/// g = (p-1)(r-1)/2.
pub fn genus(p: u32, r: u32) -> Result<u64> {
    if r == 0 || r.is_multiple_of(p) {
        return Err(Error::DegreeDivisibleByP { deg: r, p });
    }
    Ok((p as u64 - 1) * (r as u64 - 1) / 2)
}

/// Exponent of the conductor (r+1) * infinity.
pub fn conductor_exponent(r: u32) -> u32 {
    r + 1
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaxPoints {
    pub n_max: u64,
    /// Lexicographically smallest f attaining `n_max`.
    pub witness: FqPoly,
    /// Number of f attaining `n_max`.
    pub count: u64,
    pub evaluated: u64,
    pub hasse_weil_violations: u64,
}

/// Maximum of N_f over nonzero f of degree <= r with zero constant term.
pub fn max_points(ctx: &Arc<FieldCtx>, r: u32, opts: &SearchOptions) -> Result<MaxPoints> {
    check_degree_bound(ctx, r)?;
    let p = ctx.p() as u64;
    match opts.strategy {
        Strategy::Orbit => {
            let out = orbit_search(ctx, r, opts)?;
            Ok(MaxPoints {
                n_max: 1 + p * out.max_zeros,
                witness: out.witness,
                count: out.count,
                evaluated: out.evaluated,
                hasse_weil_violations: out.hasse_weil_violations,
            })
        }
        Strategy::Gray => {
            let code = PowerTraceCode::new(ctx.clone(), r)?;
            let md = code.min_distance(opts)?;
            Ok(MaxPoints {
                n_max: 1 + p * (ctx.q() as u64 - md.d),
                witness: md.witness,
                count: md.min_weight_count,
                evaluated: md.evaluated,
                hasse_weil_violations: md.hasse_weil_violations,
            })
        }
    }
}

/// Exact Hasse-Weil inequality |N - 1 - q| <= (r-1)(p-1) sqrt(q), squared.
pub fn satisfies_hasse_weil(p: u32, q: u64, r: u32, n_points: u64) -> bool {
    debug_assert!(n_points >= 1 && (n_points - 1).is_multiple_of(p as u64));
    hasse_weil_holds(p as u64, q, r as u64, (n_points - 1) / p as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_counts() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        let x = FqPoly::from_indices(&[1]);
        assert_eq!(zero_set_size(&f3, &x), 1);
        assert_eq!(count_points(&f3, &x).unwrap(), 4);
        let f = FqPoly::from_indices(&[2, 1]);
        assert_eq!(zero_set_size(&f3, &f), 2);
        assert_eq!(count_points(&f3, &f).unwrap(), 7);
    }

    #[test]
    fn x_over_f9() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let x = FqPoly::from_indices(&[1]);
        assert_eq!(zero_set_size(&f9, &x), 3);
        assert_eq!(count_points(&f9, &x).unwrap(), 10);
    }

    #[test]
    fn rejects_degenerate_curves() {
        let f3 = FieldCtx::new(3, 1).unwrap();
        assert_eq!(
            count_points(&f3, &FqPoly::zero(2)).unwrap_err(),
            Error::ZeroPolynomial
        );
        assert_eq!(
            count_points(&f3, &FqPoly::from_indices(&[0, 0, 1])).unwrap_err(),
            Error::DegreeDivisibleByP { deg: 3, p: 3 }
        );
    }

    #[test]
    fn genus_and_conductor() {
        assert_eq!(genus(5, 1).unwrap(), 0);
        assert_eq!(genus(3, 2).unwrap(), 1);
        assert_eq!(genus(7, 3).unwrap(), 6);
        assert_eq!(genus(2, 1).unwrap(), 0);
        assert!(genus(3, 3).is_err());
        assert_eq!(conductor_exponent(1), 2);
        assert_eq!(conductor_exponent(2), 3);
        assert_eq!(conductor_exponent(5), 6);
    }

    #[test]
    fn constant_term_shifts_the_trace() {
        let f9 = FieldCtx::new(3, 2).unwrap();
        let f = FqPoly::from_indices(&[1]);
        // Tr(x + c) = 0 has q/p solutions whatever c is, for linear f
        for c in f9.elements() {
            let spec = CurveSpec::with_constant(&f9, f.clone(), c).unwrap();
            assert_eq!(spec.zero_set_size(), 3);
            assert_eq!(spec.genus(), 0);
            assert_eq!(spec.conductor_exponent(), 2);
        }
    }

    #[test]
    fn small_maximum() {
        let ctx = Arc::new(FieldCtx::new(3, 1).unwrap());
        for strategy in [Strategy::Orbit, Strategy::Gray] {
            let mp = max_points(&ctx, 2, &SearchOptions::new(strategy, 1)).unwrap();
            assert_eq!(mp.n_max, 7);
            assert_eq!(mp.witness, FqPoly::from_indices(&[1, 1]));
            assert_eq!(mp.count, 4);
        }
        assert!(max_points(&ctx, 3, &SearchOptions::default()).is_err());
    }

    #[test]
    fn hasse_weil_check() {
        assert!(satisfies_hasse_weil(3, 3, 2, 7));
        assert!(!satisfies_hasse_weil(3, 3, 2, 10));
    }
}
