//! Randomized invariant suites, shared by the test targets and `selftest`.
//!
//! Every suite is seeded, so a failure reproduces exactly.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::ascurve::{max_points, satisfies_hasse_weil, zero_set_size, CurveSpec};
use crate::error::{Error, Result};
use crate::gf::{FieldCtx, FqElem};
use crate::powcode::{FqPoly, PowerTraceCode, SearchOptions, Strategy};
use crate::quadform::{
    bound_r2, closed_form_d2, count_even, count_odd, quadratic_character, trace_form_character,
    trace_form_weight, DiagonalForm,
};
use crate::unitgroup::{TruncatedUnit, UnitGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tier {
    Quick,
    Full,
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "quick" => Ok(Tier::Quick),
            "full" => Ok(Tier::Full),
            other => Err(Error::InvalidArgument(format!("unknown tier {other:?}"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: u64,
    pub failures: Vec<String>,
    pub seconds: f64,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<28} {:>10} cases  {:>8.2}s  {}",
            self.name,
            self.cases,
            self.seconds,
            if self.passed() {
                "ok".to_string()
            } else {
                format!("FAILED ({})", self.failures.len())
            }
        )?;
        for msg in self.failures.iter().take(5) {
            write!(f, "\n    {msg}")?;
        }
        Ok(())
    }
}

struct Recorder {
    name: &'static str,
    cases: u64,
    failures: Vec<String>,
    start: Instant,
}

impl Recorder {
    fn new(name: &'static str) -> Self {
        Recorder {
            name,
            cases: 0,
            failures: Vec::new(),
            start: Instant::now(),
        }
    }

    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(msg());
        }
    }

    fn fail(&mut self, msg: String) {
        self.cases += 1;
        self.failures.push(msg);
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            cases: self.cases,
            failures: self.failures,
            seconds: self.start.elapsed().as_secs_f64(),
        }
    }
}

const SEED: u64 = 0x7261_6365_626f_756e;

fn configs(tier: Tier) -> Vec<(u32, u32, u32)> {
    let mut v = vec![
        (3, 1, 2),
        (3, 2, 2),
        (3, 4, 2),
        (5, 2, 3),
        (5, 2, 4),
        (7, 2, 3),
        (7, 2, 5),
        (5, 3, 3),
        (11, 2, 3),
    ];
    if tier == Tier::Full {
        v.extend([(13, 2, 3), (7, 3, 3), (3, 6, 2), (11, 2, 6), (43, 2, 3), (5, 4, 4)]);
    }
    v
}

fn random_elem(rng: &mut StdRng, ctx: &FieldCtx) -> FqElem {
    FqElem::from_index(rng.gen_range(0..ctx.q()))
}

fn random_nonzero(rng: &mut StdRng, ctx: &FieldCtx) -> FqElem {
    FqElem::from_index(rng.gen_range(1..ctx.q()))
}

fn random_poly(rng: &mut StdRng, ctx: &FieldCtx, r: u32) -> FqPoly {
    loop {
        let f = FqPoly::new((0..r).map(|_| random_elem(rng, ctx)).collect());
        if !f.is_zero() {
            return f;
        }
    }
}

/// (a) codeword weight = q - |Z_f|, by trace evaluation and by combining
/// generator rows.
pub fn weight_suite(tier: Tier) -> SuiteReport {
    let mut rec = Recorder::new("a: weight = q - |Z_f|");
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xa);
    for (p, m, r) in configs(tier) {
        let ctx = Arc::new(FieldCtx::new(p, m).expect("valid field"));
        let code = PowerTraceCode::new(ctx.clone(), r).expect("r < p");
        let q = ctx.q() as u64;
        for _ in 0..1000 {
            let f = random_poly(&mut rng, &ctx, r);
            let w = code.weight(&f).expect("nonzero f") as u64;
            let z = zero_set_size(&ctx, &f);
            rec.check(w == q - z, || format!("{p}^{m} r={r} f={f}: weight {w}, |Z_f| {z}"));
            let u = code.row_coefficients(&f).expect("degree <= r");
            let via_rows = code.combine_rows(&u);
            let w_rows = via_rows.iter().filter(|&&c| c != 0).count() as u64;
            rec.check(w_rows == w, || {
                format!("{p}^{m} r={r} f={f}: row combination weight {w_rows} != {w}")
            });
            rec.check(code.poly_from_row_coefficients(&u) == f, || {
                format!("{p}^{m} r={r} f={f}: dual basis does not invert row coefficients")
            });
        }
    }
    rec.finish()
}

fn random_subset(rng: &mut StdRng, pool: &[usize], max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(1..=max_len.min(pool.len()).max(1));
    let mut pool = pool.to_vec();
    for i in 0..len.min(pool.len()) {
        let j = rng.gen_range(i..pool.len());
        pool.swap(i, j);
    }
    pool.truncate(len);
    pool
}

/// (b) the log-coordinate rank of {1 + alpha_i T} equals the column rank of
/// the generator matrix at {alpha_i}; the generated subgroup has p^rank elements.
pub fn rank_equivalence_suite(tier: Tier) -> SuiteReport {
    let mut rec = Recorder::new("b: rank equivalence");
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xb);
    for (p, m, r) in configs(tier) {
        let ctx = Arc::new(FieldCtx::new(p, m).expect("valid field"));
        let code = PowerTraceCode::new(ctx.clone(), r).expect("r < p");
        let group = UnitGroup::new(&ctx, r).expect("r > 0");
        let rm = (r * m) as usize;
        let n = code.len();
        let all: Vec<usize> = (0..n).collect();
        for trial in 0..1000 {
            let cols = if trial % 2 == 0 {
                random_subset(&mut rng, &all, 2 * rm + 2)
            } else {
                // columns inside a random hyperplane w . x = 0 cannot reach rank rm
                let w: Vec<u32> = loop {
                    let w: Vec<u32> = (0..rm).map(|_| rng.gen_range(0..p)).collect();
                    if w.iter().any(|&x| x != 0) {
                        break w;
                    }
                };
                let inside: Vec<usize> = all
                    .iter()
                    .copied()
                    .filter(|&c| {
                        code.matrix()
                            .iter()
                            .zip(&w)
                            .map(|(row, &wi)| row[c] as u64 * wi as u64)
                            .sum::<u64>()
                            % p as u64
                            == 0
                    })
                    .collect();
                if inside.is_empty() {
                    continue;
                }
                random_subset(&mut rng, &inside, 2 * rm + 2)
            };
            let col_rank = code.columns_rank(&cols).expect("in range");
            let units: Vec<TruncatedUnit> = cols
                .iter()
                .map(|&c| group.linear(ctx.elem(c as u32 + 1)))
                .collect();
            let span = match group.span_rank(&units) {
                Ok(s) => s,
                Err(e) => {
                    rec.fail(format!("{p}^{m} r={r}: {e}"));
                    continue;
                }
            };
            rec.check(span == col_rank, || {
                format!("{p}^{m} r={r} cols={cols:?}: span rank {span} != column rank {col_rank}")
            });
            rec.check((span == rm) == (col_rank == rm), || {
                format!("{p}^{m} r={r} cols={cols:?}: full-rank disagreement")
            });
            if trial % 2 == 1 {
                rec.check(col_rank < rm, || {
                    format!("{p}^{m} r={r} cols={cols:?}: hyperplane subset has full rank")
                });
            }
            if (p as u64).pow(span as u32) <= 20_000 && trial % 10 < 2 {
                let order = group.subgroup_order(&units).expect("small subgroup");
                rec.check(order == (p as u64).pow(span as u32), || {
                    format!("{p}^{m} r={r} cols={cols:?}: subgroup order {order}, rank {span}")
                });
            }
        }
    }
    rec.finish()
}

fn brute_count(form: &DiagonalForm, c: u32) -> u64 {
    let p = form.p();
    let n = form.num_vars() as u32;
    let mut z = vec![0u32; n as usize];
    let mut count = 0;
    for code in 0..(p as u64).pow(n) {
        let mut x = code;
        for zi in z.iter_mut() {
            *zi = (x % p as u64) as u32;
            x /= p as u64;
        }
        count += (form.eval(&z) == c) as u64;
    }
    count
}

/// (c) diagonal-form solution counts against brute force, and the degree-2
/// closed forms against direct weights.
pub fn quadratic_form_suite(tier: Tier) -> SuiteReport {
    let mut rec = Recorder::new("c: quadratic form counts");
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xc);
    for p in [3u32, 5, 7, 11] {
        let nonresidue = (2..p)
            .find(|&x| quadratic_character(p, x as i64).unwrap() == -1)
            .expect("odd p has a nonresidue");
        for n in 1..=4usize {
            for mask in 0..1u32 << n {
                let coeffs: Vec<u32> = (0..n)
                    .map(|i| if mask >> i & 1 == 1 { nonresidue } else { 1 })
                    .collect();
                let form = DiagonalForm::new(p, coeffs).expect("nonzero entries");
                let mut total = 0;
                for c in 0..p {
                    let formula = if n % 2 == 0 {
                        count_even(&form, c)
                    } else {
                        count_odd(&form, c)
                    }
                    .expect("parity matches");
                    let brute = brute_count(&form, c);
                    total += formula;
                    rec.check(formula == brute, || {
                        format!("p={p} form={:?} c={c}: formula {formula}, brute {brute}", form.coeffs())
                    });
                }
                rec.check(total == (p as u64).pow(n as u32), || {
                    format!("p={p} form={:?}: counts do not partition F_p^n", form.coeffs())
                });
            }
        }
    }

    let fields: &[(u32, u32)] = match tier {
        Tier::Quick => &[(3, 1), (3, 2), (5, 2), (7, 2), (3, 3), (5, 3), (3, 4)],
        Tier::Full => &[(3, 1), (3, 2), (5, 2), (7, 2), (3, 3), (5, 3), (3, 4), (11, 2), (3, 5), (13, 2), (7, 3), (43, 2)],
    };
    for &(p, m) in fields {
        let ctx = Arc::new(FieldCtx::new(p, m).expect("valid field"));
        let code = PowerTraceCode::new(ctx.clone(), 2).expect("p odd");
        let q = ctx.q() as u64;
        let d2 = closed_form_d2(p, m).unwrap();
        let b2 = bound_r2(p, m).unwrap();
        rec.check(b2 == 1 + p as u64 * (q - d2), || {
            format!("{p}^{m}: bound_r2 {b2} != 1 + p(q - {d2})")
        });
        for _ in 0..1000 {
            let a = random_nonzero(&mut rng, &ctx);
            let b = random_elem(&mut rng, &ctx);
            let f = FqPoly::new(vec![b, a]);
            let direct = code.weight(&f).unwrap() as u64;
            match trace_form_weight(&ctx, a, b) {
                Ok(w) => rec.check(w == direct, || {
                    format!("{p}^{m} a={a} b={b}: quadratic-form weight {w}, direct {direct}")
                }),
                Err(e) => rec.fail(format!("{p}^{m} a={a} b={b}: {e}")),
            }
            rec.check(direct >= d2, || format!("{p}^{m} a={a} b={b}: weight {direct} < {d2}"));
        }
        if m % 2 == 0 {
            let squares = ctx
                .nonzero_elements()
                .filter(|&a| trace_form_character(&ctx, a).unwrap() == 1)
                .count() as u64;
            rec.check(squares == (q - 1) / 2, || {
                format!("{p}^{m}: {squares} of {} determinant classes are squares", q - 1)
            });
        }
    }
    rec.finish()
}

/// (d) log/exp inversion, the homomorphism property, the order-p law and the
/// power-sum identities.
pub fn unit_group_suite(tier: Tier) -> SuiteReport {
    let mut rec = Recorder::new("d: truncated unit group");
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xd);
    let exhaustive_limit: u64 = match tier {
        Tier::Quick => 20_000,
        Tier::Full => 100_000,
    };
    for (p, m, r) in configs(tier) {
        let ctx = FieldCtx::new(p, m).expect("valid field");
        let g = UnitGroup::new(&ctx, r).expect("r > 0");
        let random_unit = |rng: &mut StdRng| {
            g.unit((0..r).map(|_| random_elem(rng, &ctx)).collect()).unwrap()
        };
        for _ in 0..3000 {
            let u = random_unit(&mut rng);
            let v = random_unit(&mut rng);
            let lu = g.log(&u).unwrap();
            rec.check(g.exp(&lu).unwrap() == u, || format!("{p}^{m} r={r}: exp(log u) != u"));
            let c: Vec<FqElem> = (0..r).map(|_| random_elem(&mut rng, &ctx)).collect();
            rec.check(g.log(&g.exp(&c).unwrap()).unwrap() == c, || {
                format!("{p}^{m} r={r}: log(exp c) != c")
            });
            let lv = g.log(&v).unwrap();
            let luv = g.log(&g.mul(&u, &v).unwrap()).unwrap();
            let sum: Vec<FqElem> = lu.iter().zip(&lv).map(|(&a, &b)| ctx.add(a, b)).collect();
            rec.check(luv == sum, || format!("{p}^{m} r={r}: log(uv) != log u + log v"));
        }
        let order = g.order();
        if order <= exhaustive_limit {
            for code in 1..order {
                let q = ctx.q() as u64;
                let coeffs = (0..r)
                    .map(|i| FqElem::from_index((code / q.pow(i) % q) as u32))
                    .collect();
                let u = g.unit(coeffs).unwrap();
                rec.check(g.pow(&u, p as u64).unwrap().is_identity(), || {
                    format!("{p}^{m} r={r}: u^p != 1")
                });
            }
        } else {
            for _ in 0..2000 {
                let u = random_unit(&mut rng);
                rec.check(g.pow(&u, p as u64).unwrap().is_identity(), || {
                    format!("{p}^{m} r={r}: u^p != 1")
                });
            }
        }
    }

    for (p, m) in [(7u32, 1u32), (7, 2), (11, 1), (13, 1)] {
        let ctx = FieldCtx::new(p, m).expect("valid field");
        let g = UnitGroup::new(&ctx, 5).unwrap();
        let s = |c: u32, x: FqElem| ctx.scale(c % p, x);
        for _ in 0..1000 {
            let b: Vec<FqElem> = (0..5).map(|_| random_elem(&mut rng, &ctx)).collect();
            let t = g.power_sum_targets(&b).unwrap();
            let mul = |xs: &[FqElem]| xs.iter().fold(FqElem::ONE, |acc, &x| ctx.mul(acc, x));
            let sum = |xs: &[FqElem]| xs.iter().fold(FqElem::ZERO, |acc, &x| ctx.add(acc, x));
            let neg = |x: FqElem| ctx.neg(x);
            let (b1, b2, b3, b4, b5) = (b[0], b[1], b[2], b[3], b[4]);
            let expected = [
                b1,
                sum(&[mul(&[b1, b1]), neg(s(2, b2))]),
                sum(&[mul(&[b1, b1, b1]), neg(s(3, mul(&[b1, b2]))), s(3, b3)]),
                sum(&[
                    mul(&[b1, b1, b1, b1]),
                    neg(s(4, mul(&[b1, b1, b2]))),
                    s(4, mul(&[b1, b3])),
                    s(2, mul(&[b2, b2])),
                    neg(s(4, b4)),
                ]),
                sum(&[
                    mul(&[b1, b1, b1, b1, b1]),
                    neg(s(5, mul(&[b1, b1, b1, b2]))),
                    s(5, mul(&[b1, b1, b3])),
                    s(5, mul(&[b1, b2, b2])),
                    neg(s(5, mul(&[b1, b4]))),
                    neg(s(5, mul(&[b2, b3]))),
                    s(5, b5),
                ]),
            ];
            for j in 0..5 {
                rec.check(t[j] == expected[j], || {
                    format!("{p}^{m}: power-sum target {} wrong for b={b:?}", j + 1)
                });
            }
        }
    }
    rec.finish()
}

/// (e) every enumerated curve satisfies (N - 1 - q)^2 <= (2g)^2 q.
pub fn hasse_weil_suite(tier: Tier) -> SuiteReport {
    let mut rec = Recorder::new("e: Hasse-Weil on all curves");
    let mut rng = StdRng::seed_from_u64(SEED ^ 0xe);
    let searches: &[(u32, u32, u32)] = match tier {
        Tier::Quick => &[(3, 1, 2), (3, 2, 2), (5, 1, 4), (5, 2, 3), (7, 1, 6), (3, 4, 2)],
        Tier::Full => &[(3, 1, 2), (3, 2, 2), (5, 1, 4), (5, 2, 3), (7, 1, 6), (3, 4, 2), (5, 2, 4), (7, 2, 3), (3, 5, 2), (5, 3, 3)],
    };
    for &(p, m, r) in searches {
        let ctx = Arc::new(FieldCtx::new(p, m).expect("valid field"));
        for strategy in [Strategy::Gray, Strategy::Orbit] {
            match max_points(&ctx, r, &SearchOptions::new(strategy, 1)) {
                Ok(mp) => rec.check(mp.hasse_weil_violations == 0, || {
                    format!(
                        "{p}^{m} r={r} {strategy}: {} of {} curves violate Hasse-Weil",
                        mp.hasse_weil_violations, mp.evaluated
                    )
                }),
                Err(e) => rec.fail(format!("{p}^{m} r={r} {strategy}: {e}")),
            }
        }
    }
    for (p, m, r) in configs(tier) {
        let ctx = FieldCtx::new(p, m).expect("valid field");
        for _ in 0..300 {
            let f = random_poly(&mut rng, &ctx, r);
            let Ok(curve) = CurveSpec::with_constant(&ctx, f.clone(), random_elem(&mut rng, &ctx))
            else {
                continue;
            };
            let n = curve.count_points();
            rec.check(satisfies_hasse_weil(p, ctx.q() as u64, curve.degree(), n), || {
                format!("{p}^{m} f={f}: N = {n} violates Hasse-Weil")
            });
        }
    }
    rec.finish()
}

pub fn run_all(tier: Tier) -> Vec<SuiteReport> {
    vec![
        weight_suite(tier),
        rank_equivalence_suite(tier),
        quadratic_form_suite(tier),
        unit_group_suite(tier),
        hasse_weil_suite(tier),
    ]
}
