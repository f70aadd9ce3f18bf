//! Symmetry-reduced enumeration of trace-zero counts.
//!
//! The maps f(x) -> c * sigma^t(f)(lambda x), with c in F_p^*, lambda in F_q^*
//! and sigma the coefficient Frobenius, form a group of order (p-1)(q-1)m that
//! preserves |Z_f| = #{x in F_q : Tr f(x) = 0}. A polynomial of degree s has
//! its leading coefficient moved by the subgroup F_p^* (F_q^*)^s and by
//! Frobenius, so it suffices to enumerate f whose leading coefficient g^j has
//! j the least element of its cycle under j -> jp modulo
//! e_s = gcd(s, (q-1)/(p-1)), with all lower coefficients free. Every orbit is
//! hit at least once; exact counts and the lexicographic witness are recovered
//! afterwards by walking the full orbits of the extremal representatives.

use std::collections::HashMap;
use std::ops::Range;

use super::search::run_partitioned;
use super::{hasse_weil_holds, FqPoly, SearchOptions};
use crate::error::Result;
use crate::gf::{FieldCtx, FqElem};

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Representatives for polynomials of exact degree `s`.
#[derive(Debug)]
struct Block {
    s: usize,
    /// Discrete logs of the admissible leading coefficients.
    leads: Vec<u64>,
    offset: u64,
    size: u64,
}

fn blocks(ctx: &FieldCtx, r: u32) -> Vec<Block> {
    let n = ctx.group_order() as u64;
    let p = ctx.p() as u64;
    let q = ctx.q() as u64;
    let h = n / (p - 1);
    let mut offset = 0;
    (1..=r as usize)
        .map(|s| {
            let e = gcd(s as u64, h);
            let leads: Vec<u64> = (0..e)
                .filter(|&j| {
                    // j is the least element of its cycle under j -> jp (mod e)
                    let mut x = j * p % e;
                    while x != j {
                        if x < j {
                            return false;
                        }
                        x = x * p % e;
                    }
                    true
                })
                .collect();
            let size = leads.len() as u64 * q.pow(s as u32 - 1);
            let b = Block {
                s,
                leads,
                offset,
                size,
            };
            offset += size;
            b
        })
        .collect()
}

pub(crate) fn orbit_work_estimate(ctx: &FieldCtx, r: u32) -> f64 {
    let reps: f64 = blocks(ctx, r).iter().map(|b| b.size as f64).sum();
    reps * ctx.q() as f64
}

/// Result of maximizing |Z_f| over nonzero f of degree <= r with zero constant term.
#[derive(Clone, Debug)]
pub(crate) struct OrbitOutcome {
    pub max_zeros: u64,
    /// Lexicographically smallest maximizer.
    pub witness: FqPoly,
    /// Number of maximizers.
    pub count: u64,
    pub evaluated: u64,
    pub hasse_weil_violations: u64,
}

struct Local {
    best: u64,
    reps: Vec<FqPoly>,
    evaluated: u64,
    violations: u64,
}

pub(crate) fn orbit_search(ctx: &FieldCtx, r: u32, opts: &SearchOptions) -> Result<OrbitOutcome> {
    super::check_degree_bound(ctx, r)?;
    opts.check_work(orbit_work_estimate(ctx, r))?;
    let blocks = blocks(ctx, r);
    let total: u64 = blocks.iter().map(|b| b.size).sum();
    let tr = ctx.trace_of_power();
    let doubled: Vec<u32> = tr.iter().chain(tr.iter()).copied().collect();

    let results = run_partitioned(0..total, opts.threads, |range| {
        scan(ctx, r, &blocks, &doubled, range)
    });

    let best = results.iter().map(|l| l.best).max().expect("nonempty search");
    let mut evaluated = 0;
    let mut violations = 0;
    let canon = Canonicalizer::new(ctx, r as usize);
    let mut orbits: HashMap<FqPoly, u64> = HashMap::new();
    for l in results {
        evaluated += l.evaluated;
        violations += l.violations;
        if l.best != best {
            continue;
        }
        for rep in l.reps {
            let (c, size) = canon.canonical(&rep);
            orbits.insert(c, size);
        }
    }
    let count = orbits.values().sum();
    let witness = orbits.into_keys().min().expect("maximizer exists");
    Ok(OrbitOutcome {
        max_zeros: best,
        witness: witness.padded(r as usize),
        count,
        evaluated,
        hasse_weil_violations: violations,
    })
}

fn scan(ctx: &FieldCtx, r: u32, blocks: &[Block], doubled: &[u32], range: Range<u64>) -> Local {
    let p = ctx.p();
    let q = ctx.q() as u64;
    let n = ctx.group_order() as usize;
    let tr = &doubled[..n];
    let mut local = Local {
        best: 0,
        reps: Vec::new(),
        evaluated: 0,
        violations: 0,
    };
    let mut partial = vec![0u32; n];

    for block in blocks {
        let lo = range.start.max(block.offset);
        let hi = range.end.min(block.offset + block.size);
        if lo >= hi {
            continue;
        }
        let s = block.s;
        let lower = q.pow(s as u32 - 1);
        // digits: a_1..a_{s-1} as element indices, a_1 fastest
        let mut idx = lo - block.offset;
        let mut lead = (idx / lower) as usize;
        let mut digits = vec![0u32; s - 1];
        let mut rest = idx % lower;
        for d in digits.iter_mut() {
            *d = (rest % q) as u32;
            rest /= q;
        }
        let mut stale = true;
        while idx < hi - block.offset {
            if stale {
                // everything but a_1
                partial.iter_mut().for_each(|x| *x = 0);
                let mut add_term = |k: usize, log: u64| {
                    let mut e = log as usize;
                    for x in partial.iter_mut() {
                        *x = x.wrapping_add(tr[e]);
                        e += k;
                        if e >= n {
                            e -= n;
                        }
                    }
                };
                add_term(s, block.leads[lead]);
                for k in 2..s {
                    if let Some(l) = ctx.log(FqElem::from_index(digits[k - 1])) {
                        add_term(k, l as u64);
                    }
                }
                partial.iter_mut().for_each(|x| *x %= p);
                stale = false;
            }

            let zeros = 1 + if s == 1 {
                partial.iter().filter(|&&x| x == 0).count()
            } else {
                match ctx.log(FqElem::from_index(digits[0])) {
                    None => partial.iter().filter(|&&x| x == 0).count(),
                    Some(l) => {
                        let rot = &doubled[l as usize..l as usize + n];
                        partial
                            .iter()
                            .zip(rot)
                            .filter(|&(&a, &b)| {
                                let v = a.wrapping_add(b);
                                v == 0 || v == p
                            })
                            .count()
                    }
                }
            } as u64;

            local.evaluated += 1;
            if !hasse_weil_holds(p as u64, q, s as u64, zeros) {
                local.violations += 1;
            }
            if zeros >= local.best {
                if zeros > local.best {
                    local.best = zeros;
                    local.reps.clear();
                }
                let mut coeffs: Vec<FqElem> = digits.iter().map(|&d| FqElem::from_index(d)).collect();
                coeffs.push(ctx.exp(block.leads[lead]));
                coeffs.resize(r as usize, FqElem::ZERO);
                local.reps.push(FqPoly::new(coeffs));
            }

            // advance
            idx += 1;
            if s == 1 {
                lead += 1;
                stale = true;
                continue;
            }
            let mut i = 0;
            loop {
                digits[i] += 1;
                if (digits[i] as u64) < q {
                    break;
                }
                digits[i] = 0;
                i += 1;
                if i == s - 1 {
                    lead += 1;
                    break;
                }
            }
            if i > 0 {
                stale = true;
            }
        }
    }
    local
}

/// Computes lexicographically smallest orbit members.
///
/// Only group elements that make the first nonzero coefficient as small as
/// possible are visited. For fixed (t, c) the reachable logs of that
/// coefficient form a coset of g = gcd(k, q - 1), whose smallest element is
/// tabulated once per search.
pub(crate) struct Canonicalizer<'a> {
    ctx: &'a FieldCtx,
    /// For each g = gcd(k, q - 1), k = 1..=r: the log of least index in each class mod g.
    min_in_class: HashMap<u64, Vec<u64>>,
}

impl<'a> Canonicalizer<'a> {
    pub(crate) fn new(ctx: &'a FieldCtx, r: usize) -> Self {
        let n = ctx.group_order() as u64;
        let exp = ctx.exp_table();
        let mut min_in_class = HashMap::new();
        for k in 1..=r as u64 {
            let g = gcd(k, n);
            min_in_class.entry(g).or_insert_with(|| {
                let mut best = vec![u64::MAX; g as usize];
                for l in 0..n {
                    let slot = &mut best[(l % g) as usize];
                    if *slot == u64::MAX || exp[l as usize] < exp[*slot as usize] {
                        *slot = l;
                    }
                }
                best
            });
        }
        Canonicalizer { ctx, min_in_class }
    }

    /// Lexicographically smallest member of the orbit of f, and the orbit size.
    pub(crate) fn canonical(&self, f: &FqPoly) -> (FqPoly, u64) {
        let ctx = self.ctx;
        let n = ctx.group_order() as u64;
        let p = ctx.p() as u64;
        let m = ctx.m() as u64;
        let h = n / (p - 1);
        let exp = ctx.exp_table();
        let logs: Vec<Option<u64>> = f.coeffs().iter().map(|&a| ctx.log(a).map(u64::from)).collect();
        let Some(k0) = logs.iter().position(Option::is_some) else {
            return (f.clone(), 1);
        };
        let k = k0 as u64 + 1;
        let l0 = logs[k0].expect("nonzero");
        let g = gcd(k, n);
        let table = &self.min_in_class[&g];
        // lambda runs over solutions of k * lambda = delta (mod n)
        let (kg, ng) = (k / g, n / g);
        let kg_inv = if ng == 1 { 0 } else { mod_inverse(kg % ng, ng) };

        let mut best: Option<Vec<u32>> = None;
        let mut hits = 0u64;
        let mut candidate = vec![0u32; logs.len()];
        let mut frob = 1u64;
        for _t in 0..m {
            for i in 0..p - 1 {
                let c = h * i;
                let base = (c + frob * l0) % n;
                let target = table[(base % g) as usize];
                let delta = (target + n - base) % n;
                let lam0 = (delta / g) % ng * kg_inv % ng;
                for j in 0..g {
                    let lam = lam0 + j * ng;
                    for (kk, l) in logs.iter().enumerate() {
                        candidate[kk] = match l {
                            None => 0,
                            Some(l) => exp[((c + (kk as u64 + 1) * lam + frob * l) % n) as usize],
                        };
                    }
                    match &mut best {
                        Some(b) if candidate > *b => {}
                        Some(b) if candidate == *b => hits += 1,
                        slot => {
                            *slot = Some(candidate.clone());
                            hits = 1;
                        }
                    }
                }
            }
            frob = frob * p % n.max(1);
        }
        let group = m * n * (p - 1);
        debug_assert!(hits > 0 && group.is_multiple_of(hits));
        (FqPoly::from_indices(&best.expect("at least one candidate")), group / hits)
    }
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (n as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(n as i128) as u64
}

/// Lexicographically smallest member of the orbit of f, and the orbit size.
#[cfg(test)]
pub(crate) fn orbit_canonical(ctx: &FieldCtx, f: &FqPoly) -> (FqPoly, u64) {
    Canonicalizer::new(ctx, f.len().max(1)).canonical(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn brute_orbit(ctx: &FieldCtx, f: &FqPoly) -> HashSet<Vec<u32>> {
        let mut out = HashSet::new();
        for t in 0..ctx.m() {
            for lam in ctx.nonzero_elements() {
                for c in 1..ctx.p() {
                    let img: Vec<u32> = f
                        .coeffs()
                        .iter()
                        .enumerate()
                        .map(|(k, &a)| {
                            let lk = ctx.pow(lam, k as u64 + 1);
                            ctx.scale(c, ctx.mul(lk, ctx.frobenius(a, t))).index()
                        })
                        .collect();
                    out.insert(img);
                }
            }
        }
        out
    }

    #[test]
    fn canonical_form_matches_brute_orbit() {
        let ctx = FieldCtx::new(5, 2).unwrap();
        for f in [[1u32, 0, 3], [0, 7, 1], [13, 2, 24], [0, 0, 6]] {
            let f = FqPoly::from_indices(&f);
            let orbit = brute_orbit(&ctx, &f);
            let (canon, size) = orbit_canonical(&ctx, &f);
            assert_eq!(size as usize, orbit.len());
            assert_eq!(canon.indices(), orbit.iter().min().unwrap().clone());
        }
    }

    #[test]
    fn canonical_form_on_many_fields() {
        for (p, m, r) in [(7u32, 1u32, 3usize), (3, 3, 2), (5, 2, 4), (3, 4, 2), (13, 1, 6)] {
            let ctx = FieldCtx::new(p, m).unwrap();
            let q = ctx.q();
            let canon = Canonicalizer::new(&ctx, r);
            let mut seed = 12345u64;
            for _ in 0..40 {
                let c: Vec<u32> = (0..r)
                    .map(|_| {
                        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                        // bias towards zeros so leading gaps occur
                        let v = (seed >> 33) as u32 % (q + q / 2);
                        if v >= q { 0 } else { v }
                    })
                    .collect();
                let f = FqPoly::from_indices(&c);
                if f.is_zero() {
                    continue;
                }
                let orbit = brute_orbit(&ctx, &f);
                let (min, size) = canon.canonical(&f);
                assert_eq!(size as usize, orbit.len(), "{p}^{m} {c:?}");
                assert_eq!(min.indices(), orbit.iter().min().unwrap().clone(), "{p}^{m} {c:?}");
            }
        }
    }

    #[test]
    fn representatives_meet_every_orbit() {
        for (p, m, r) in [(3u32, 2u32, 2u32), (5, 2, 3), (3, 3, 2), (7, 1, 3)] {
            let ctx = FieldCtx::new(p, m).unwrap();
            let q = ctx.q() as u64;
            let bl = blocks(&ctx, r);
            let mut hit = HashSet::new();
            for b in &bl {
                let lower = q.pow(b.s as u32 - 1);
                for &lead in &b.leads {
                    for low in 0..lower {
                        let mut c: Vec<u32> = (0..b.s - 1).map(|i| ((low / q.pow(i as u32)) % q) as u32).collect();
                        c.push(ctx.exp(lead).index());
                        c.resize(r as usize, 0);
                        hit.insert(orbit_canonical(&ctx, &FqPoly::from_indices(&c)).0);
                    }
                }
            }
            // every nonzero polynomial's canonical form must be among those hit
            let total = q.pow(r);
            for code in 1..total {
                let c: Vec<u32> = (0..r).map(|i| ((code / q.pow(i)) % q) as u32).collect();
                let canon = orbit_canonical(&ctx, &FqPoly::from_indices(&c)).0;
                assert!(hit.contains(&canon), "orbit of {c:?} missed for {p}^{m}, r={r}");
            }
        }
    }

    #[test]
    fn orbit_sizes_partition_the_space() {
        let ctx = FieldCtx::new(3, 2).unwrap();
        let q = 9u64;
        let mut orbits: HashMap<FqPoly, u64> = HashMap::new();
        for code in 1..q * q {
            let f = FqPoly::from_indices(&[(code % q) as u32, (code / q) as u32]);
            let (c, s) = orbit_canonical(&ctx, &f);
            orbits.insert(c, s);
        }
        assert_eq!(orbits.values().sum::<u64>(), q * q - 1);
    }
}
