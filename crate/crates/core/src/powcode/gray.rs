//! Exhaustive minimum-weight search over the row space in reflected base-p
//! Gray order.
//!
//! The coefficient vector u in F_p^{rm} runs through all p^{rm} values so that
//! consecutive vectors differ in one digit by +-1; the cached codeword u * A is
//! updated by adding or subtracting one generator row. Each worker owns a
//! contiguous range of Gray ranks and rebuilds its starting codeword directly.

use std::ops::Range;

use super::search::run_partitioned;
use super::{hasse_weil_holds, poly_from_coeffs_with_dual, FqPoly, MinDistance, PowerTraceCode};
use super::{SearchOptions, Strategy};
use crate::error::Result;
use crate::gf::FieldCtx;

pub(crate) fn gray_work_estimate(ctx: &FieldCtx, r: u32) -> f64 {
    (ctx.q() as f64).powi(r as i32 + 1)
}

/// Codeword symbol storage; the narrowest type that holds 2(p-1).
trait Lane: Copy + Default + PartialEq + PartialOrd + Send + Sync {
    fn from_u32(v: u32) -> Self;
    fn wrapping_add(self, other: Self) -> Self;
    fn wrapping_sub(self, other: Self) -> Self;
}

macro_rules! lane {
    ($t:ty) => {
        impl Lane for $t {
            #[inline(always)]
            fn from_u32(v: u32) -> Self {
                v as $t
            }
            #[inline(always)]
            fn wrapping_add(self, other: Self) -> Self {
                <$t>::wrapping_add(self, other)
            }
            #[inline(always)]
            fn wrapping_sub(self, other: Self) -> Self {
                <$t>::wrapping_sub(self, other)
            }
        }
    };
}

lane!(u8);
lane!(u16);
lane!(u32);

/// acc += row (mod p); returns the number of nonzero entries afterwards.
///
/// Branch-free and overflow-check-free so that it vectorizes in every
/// profile: a + b - p wraps above a + b exactly when a + b < p, so the minimum
/// is the reduced sum. Zeros are tallied in a narrow counter per 64-lane chunk.
#[inline(always)]
fn add_row<T: Lane>(acc: &mut [T], row: &[T], p: T) -> usize {
    let zero = T::default();
    let mut zeros = 0usize;
    for (ca, cb) in acc.chunks_mut(64).zip(row.chunks(64)) {
        let mut z = 0u8;
        for (a, &b) in ca.iter_mut().zip(cb) {
            let s = a.wrapping_add(b);
            let t = s.wrapping_sub(p);
            let s = if t < s { t } else { s };
            *a = s;
            z = z.wrapping_add((s == zero) as u8);
        }
        zeros += z as usize;
    }
    acc.len() - zeros
}

struct Local {
    best: u64,
    count: u64,
    witness: Option<FqPoly>,
    evaluated: u64,
    violations: u64,
}

pub(crate) fn gray_search(code: &PowerTraceCode, opts: &SearchOptions) -> Result<MinDistance> {
    let ctx = code.ctx();
    opts.check_work(gray_work_estimate(ctx, code.r()))?;
    let p = ctx.p();
    if p < 128 {
        run::<u8>(code, opts)
    } else if p < 32768 {
        run::<u16>(code, opts)
    } else {
        run::<u32>(code, opts)
    }
}

fn run<T: Lane>(code: &PowerTraceCode, opts: &SearchOptions) -> Result<MinDistance> {
    let ctx = code.ctx();
    let p = ctx.p();
    let digits = code.matrix().len();
    let total = (p as u64).pow(digits as u32);
    let rows: Vec<Vec<T>> = code
        .matrix()
        .iter()
        .map(|r| r.iter().map(|&x| T::from_u32(x)).collect())
        .collect();
    let neg_rows: Vec<Vec<T>> = code
        .matrix()
        .iter()
        .map(|r| r.iter().map(|&x| T::from_u32((p - x) % p)).collect())
        .collect();
    let dual = ctx.dual_basis();

    let results = run_partitioned(1..total, opts.threads, |range| {
        scan(code, &rows, &neg_rows, &dual, range)
    });

    let best = results.iter().map(|l| l.best).min().expect("at least one codeword");
    let mut count = 0;
    let mut witness: Option<FqPoly> = None;
    let (mut evaluated, mut violations) = (0, 0);
    for l in results {
        evaluated += l.evaluated;
        violations += l.violations;
        if l.best != best {
            continue;
        }
        count += l.count;
        let w = l.witness.expect("a best weight has a witness");
        if witness.as_ref().is_none_or(|cur| w < *cur) {
            witness = Some(w);
        }
    }
    Ok(MinDistance {
        d: best,
        witness: witness.unwrap().padded(code.r() as usize),
        min_weight_count: count,
        evaluated,
        hasse_weil_violations: violations,
        strategy: Strategy::Gray,
    })
}

fn scan<T: Lane>(
    code: &PowerTraceCode,
    rows: &[Vec<T>],
    neg_rows: &[Vec<T>],
    dual: &[crate::gf::FqElem],
    range: Range<u64>,
) -> Local {
    let ctx = code.ctx();
    let p = ctx.p();
    let q = ctx.q() as u64;
    let m = ctx.m() as usize;
    let r = code.r() as usize;
    let ndig = rows.len();
    let n = code.len();

    // rank digits (least significant first), Gray digits, and reflection flags
    let mut rank = vec![0u32; ndig];
    let mut x = range.start;
    for d in rank.iter_mut() {
        *d = (x % p as u64) as u32;
        x /= p as u64;
    }
    let mut gray = vec![0u32; ndig];
    let mut reflected = vec![false; ndig];
    let mut rev = false;
    for i in (0..ndig).rev() {
        gray[i] = if rev { p - 1 - rank[i] } else { rank[i] };
        reflected[i] = rev;
        rev ^= gray[i] % 2 == 1;
    }

    let start = code.combine_rows(&gray);
    let mut word: Vec<T> = start.iter().map(|&x| T::from_u32(x)).collect();
    let mut weight = start.iter().filter(|&&x| x != 0).count();
    let pl = T::from_u32(p);

    let mut local = Local {
        best: u64::MAX,
        count: 0,
        witness: None,
        evaluated: 0,
        violations: 0,
    };
    let mut pos = range.start;
    loop {
        let w = weight as u64;
        local.evaluated += 1;
        if w <= local.best {
            let f = poly_from_coeffs_with_dual(ctx, dual, r, &gray);
            if w < local.best {
                local.best = w;
                local.count = 0;
                local.witness = None;
            }
            local.count += 1;
            if local.witness.as_ref().is_none_or(|cur| f < *cur) {
                local.witness = Some(f);
            }
        }
        // Hasse-Weil with the true degree: the highest nonzero block of u.
        let deg = (0..r)
            .rev()
            .find(|&k| gray[k * m..(k + 1) * m].iter().any(|&d| d != 0))
            .map_or(0, |k| k + 1) as u64;
        if !hasse_weil_holds(p as u64, q, deg, q - w) {
            local.violations += 1;
        }

        pos += 1;
        if pos >= range.end {
            break;
        }
        let mut i = 0;
        while rank[i] == p - 1 {
            rank[i] = 0;
            reflected[i] = !reflected[i];
            i += 1;
        }
        rank[i] += 1;
        if reflected[i] {
            gray[i] -= 1;
            weight = add_row(&mut word[..n], &neg_rows[i], pl);
        } else {
            gray[i] += 1;
            weight = add_row(&mut word[..n], &rows[i], pl);
        }
    }
    local
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;

    fn code(p: u32, m: u32, r: u32) -> PowerTraceCode {
        PowerTraceCode::new(Arc::new(FieldCtx::new(p, m).unwrap()), r).unwrap()
    }

    #[test]
    fn gray_sequence_is_a_single_step_permutation() {
        // replay the stepping rule on 3 base-5 digits
        let p = 5u32;
        let ndig = 3;
        let mut seen = std::collections::HashSet::new();
        let mut rank = vec![0u32; ndig];
        let mut gray = vec![0u32; ndig];
        let mut reflected = vec![false; ndig];
        seen.insert(gray.clone());
        for _ in 1..125 {
            let prev = gray.clone();
            let mut i = 0;
            while rank[i] == p - 1 {
                rank[i] = 0;
                reflected[i] = !reflected[i];
                i += 1;
            }
            rank[i] += 1;
            if reflected[i] {
                gray[i] -= 1;
            } else {
                gray[i] += 1;
            }
            let diff: u32 = prev.iter().zip(&gray).map(|(a, b)| a.abs_diff(*b)).sum();
            assert_eq!(diff, 1);
            assert!(seen.insert(gray.clone()));
        }
        assert_eq!(seen.len(), 125);
    }

    #[test]
    fn chunk_start_state_matches_stepping() {
        // the direct rank -> Gray conversion used at chunk starts must agree
        // with stepping from zero
        let c = code(5, 1, 3);
        let whole = scan_all(&c, 1..125);
        let split: Vec<Local> = [1..40, 40..41, 41..125]
            .into_iter()
            .map(|r| scan_all(&c, r))
            .collect();
        let best = split.iter().map(|l| l.best).min().unwrap();
        assert_eq!(best, whole.best);
        let count: u64 = split.iter().filter(|l| l.best == best).map(|l| l.count).sum();
        assert_eq!(count, whole.count);
    }

    fn scan_all(c: &PowerTraceCode, range: Range<u64>) -> Local {
        let p = c.ctx().p();
        let rows: Vec<Vec<u8>> = c.matrix().iter().map(|r| r.iter().map(|&x| x as u8).collect()).collect();
        let neg: Vec<Vec<u8>> = c
            .matrix()
            .iter()
            .map(|r| r.iter().map(|&x| ((p - x) % p) as u8).collect())
            .collect();
        scan(c, &rows, &neg, &c.ctx().dual_basis(), range)
    }

    #[test]
    fn tiny_code() {
        let c = code(3, 1, 2);
        let md = gray_search(&c, &SearchOptions::new(Strategy::Gray, 1)).unwrap();
        assert_eq!(md.d, 1);
        assert_eq!(md.witness, FqPoly::from_indices(&[1, 1]));
        assert_eq!(md.min_weight_count, 4);
        assert_eq!(md.evaluated, 8);
        assert_eq!(md.hasse_weil_violations, 0);
    }
}
