//! Arithmetic in the prime field F_p and its extensions F_q, q = p^m.
//!
//! An element of F_q is stored as the integer whose base-p digits are its
//! coordinates in the polynomial basis 1, t, ..., t^(m-1), lowest degree in
//! the least significant digit. Index `i` in `1..q` is the i-th element of the
//! fixed enumeration of F_q^*, so column order, witness encoding and ordering
//! all derive from this one convention.

use std::fmt;

use crate::error::{Error, Result};

/// Default upper limit on q.
pub const DEFAULT_MAX_FIELD_SIZE: u64 = 1 << 22;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Distinct prime factors in increasing order.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of F_q, encoded by its base-p coordinate digits.
///
/// The derived ordering is the fixed encoding order used for tie-breaking.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    pub const fn from_index(index: u32) -> Self {
        FqElem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete model of F_{p^m}.
///
/// Immutable once built; all lookups are table driven.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    pow_p: Vec<u32>,
    generator: FqElem,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u32>,
    trace_exp: Vec<u32>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldCtx")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .field("generator", &self.generator)
            .finish_non_exhaustive()
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

const NO_LOG: u32 = u32::MAX;

impl FieldCtx {
    pub fn new(p: u32, m: u32) -> Result<Self> {
        Self::with_limit(p, m, DEFAULT_MAX_FIELD_SIZE)
    }

    pub fn with_limit(p: u32, m: u32, max_size: u64) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        let too_large = || Error::FieldTooLarge {
            p: p as u64,
            m,
            limit: max_size,
        };
        let q = (p as u64).checked_pow(m).ok_or_else(too_large)?;
        if q > max_size || q > u32::MAX as u64 {
            return Err(too_large());
        }

        let modulus = smallest_irreducible(p, m);
        let pow_p: Vec<u32> = (0..=m).map(|i| (p as u64).pow(i) as u32).collect();
        let mut ctx = FieldCtx {
            p,
            m,
            q: q as u32,
            modulus,
            pow_p,
            generator: FqElem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
            trace: Vec::new(),
            trace_exp: Vec::new(),
        };
        ctx.generator = ctx.find_generator();
        ctx.build_tables();
        Ok(ctx)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Order of the multiplicative group, q - 1.
    pub fn group_order(&self) -> u32 {
        self.q - 1
    }

    /// Modulus coefficients c_0..c_m, lowest degree first; c_m = 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Smallest-index primitive element.
    pub fn generator(&self) -> FqElem {
        self.generator
    }

    pub fn elem(&self, index: u32) -> FqElem {
        debug_assert!(index < self.q);
        FqElem(index)
    }

    /// The prime subfield element `c mod p`.
    pub fn from_prime(&self, c: u64) -> FqElem {
        FqElem((c % self.p as u64) as u32)
    }

    /// All of F_q in encoding order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    /// The fixed enumeration alpha_1, ..., alpha_{q-1} of F_q^*.
    pub fn nonzero_elements(&self) -> impl Iterator<Item = FqElem> {
        (1..self.q).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.m == 1 {
            let s = a.0 + b.0;
            return FqElem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        let p = self.p;
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0u32, 1u32);
        while x != 0 || y != 0 {
            let s = x % p + y % p;
            out += if s >= p { s - p } else { s } * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.p == 2 {
            return a;
        }
        let p = self.p;
        let (mut x, mut out, mut place) = (a.0, 0u32, 1u32);
        while x != 0 {
            let d = x % p;
            if d != 0 {
                out += (p - d) * place;
            }
            x /= p;
            place = place.wrapping_mul(p);
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.0 == 0 || b.0 == 0 {
            return FqElem::ZERO;
        }
        let n = self.q - 1;
        let e = self.log[a.0 as usize] + self.log[b.0 as usize];
        FqElem(self.exp[(if e >= n { e - n } else { e }) as usize])
    }

    /// Multiplication by an element of the prime subfield.
    pub fn scale(&self, c: u32, a: FqElem) -> FqElem {
        self.mul(self.from_prime(c as u64), a)
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(FqElem(self.exp[((n - l) % n) as usize]))
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FqElem, e: u64) -> FqElem {
        if e == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FqElem(self.exp[((l * (e % n)) % n) as usize])
    }

    /// x^(p^t).
    pub fn frobenius(&self, a: FqElem, t: u32) -> FqElem {
        self.pow(a, self.pow_p[(t % self.m) as usize] as u64)
    }

    /// Discrete logarithm to the base [`FieldCtx::generator`]; `None` at zero.
    pub fn log(&self, a: FqElem) -> Option<u32> {
        match self.log[a.0 as usize] {
            NO_LOG => None,
            l => Some(l),
        }
    }

    /// g^e for the fixed generator g; `e` is reduced mod q - 1.
    pub fn exp(&self, e: u64) -> FqElem {
        FqElem(self.exp[(e % (self.q - 1) as u64) as usize])
    }

    /// Absolute trace to F_p, as an integer in `0..p`.
    pub fn trace(&self, a: FqElem) -> u32 {
        self.trace[a.0 as usize]
    }

    /// `trace_of_power()[e] = Tr(g^e)` for e in 0..q-1.
    pub fn trace_of_power(&self) -> &[u32] {
        &self.trace_exp
    }

    pub(crate) fn exp_table(&self) -> &[u32] {
        &self.exp
    }

    /// Coordinates in the polynomial basis, lowest degree first.
    pub fn to_vector(&self, a: FqElem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.m)
            .map(|_| {
                let d = x % self.p;
                x /= self.p;
                d
            })
            .collect()
    }

    pub fn from_vector(&self, coords: &[u32]) -> Result<FqElem> {
        if coords.len() != self.m as usize {
            return Err(Error::InvalidArgument(format!(
                "expected {} coordinates, got {}",
                self.m,
                coords.len()
            )));
        }
        let mut out = 0u32;
        for (i, &c) in coords.iter().enumerate() {
            if c >= self.p {
                return Err(Error::InvalidArgument(format!(
                    "coordinate {c} is not reduced mod {}",
                    self.p
                )));
            }
            out += c * self.pow_p[i];
        }
        Ok(FqElem(out))
    }

    /// The trace-dual of the polynomial basis: Tr(beta_i t^j) = [i == j].
    pub fn dual_basis(&self) -> Vec<FqElem> {
        let m = self.m as usize;
        let p = self.p as u64;
        // Gram matrix of the trace form on 1, t, ..., t^(m-1); invert it over F_p.
        let basis: Vec<FqElem> = (0..m).map(|j| FqElem(self.pow_p[j])).collect();
        let mut aug: Vec<Vec<u64>> = (0..m)
            .map(|i| {
                let mut row: Vec<u64> = (0..m)
                    .map(|j| self.trace(self.mul(basis[i], basis[j])) as u64)
                    .collect();
                row.extend((0..m).map(|j| (i == j) as u64));
                row
            })
            .collect();
        for col in 0..m {
            let piv = (col..m)
                .find(|&r| aug[r][col] != 0)
                .expect("trace form is nondegenerate");
            aug.swap(col, piv);
            let inv = inv_mod(aug[col][col], p);
            for v in aug[col].iter_mut() {
                *v = *v * inv % p;
            }
            for r in 0..m {
                if r != col && aug[r][col] != 0 {
                    let f = aug[r][col];
                    for c in 0..2 * m {
                        aug[r][c] = (aug[r][c] + (p - f) * aug[col][c]) % p;
                    }
                }
            }
        }
        // beta_i = sum_j (G^-1)_{ij} t^j
        (0..m)
            .map(|i| {
                let coords: Vec<u32> = (0..m).map(|j| aug[i][m + j] as u32).collect();
                self.from_vector(&coords).expect("reduced coordinates")
            })
            .collect()
    }

    fn poly_of(&self, a: u32) -> Vec<u32> {
        self.to_vector(FqElem(a))
    }

    fn index_of(&self, coeffs: &[u32]) -> u32 {
        coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| c * self.pow_p[i])
            .sum()
    }

    /// Schoolbook product of two elements given as coordinate vectors.
    fn slow_mul(&self, a: &[u32], b: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        let m = self.m as usize;
        let mut prod = vec![0u64; 2 * m];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        reduce_mod(&mut prod, &self.modulus, p);
        prod.truncate(m);
        prod.into_iter().map(|c| c as u32).collect()
    }

    fn slow_pow(&self, a: &[u32], mut e: u64) -> Vec<u32> {
        let mut acc = self.poly_of(1);
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(&acc, &base);
            }
            base = self.slow_mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn find_generator(&self) -> FqElem {
        let n = (self.q - 1) as u64;
        if n == 1 {
            return FqElem::ONE;
        }
        let factors = prime_factors(n);
        let one = self.poly_of(1);
        (1..self.q)
            .find(|&x| {
                let v = self.poly_of(x);
                factors.iter().all(|&l| self.slow_pow(&v, n / l) != one)
            })
            .map(FqElem)
            .expect("F_q^* is cyclic")
    }

    fn build_tables(&mut self) {
        let q = self.q as usize;
        let n = q - 1;
        let g = self.poly_of(self.generator.0);
        let mut exp = vec![0u32; n];
        let mut log = vec![NO_LOG; q];
        let mut cur = self.poly_of(1);
        for e in 0..n {
            let idx = self.index_of(&cur);
            exp[e] = idx;
            log[idx as usize] = e as u32;
            cur = self.slow_mul(&cur, &g);
        }
        self.exp = exp;
        self.log = log;

        // Tr is F_p-linear: tabulate Tr(t^j) by summing conjugates, then expand.
        let p = self.p;
        let basis_traces: Vec<u32> = (0..self.m as usize)
            .map(|j| {
                let b = FqElem(self.pow_p[j]);
                let mut acc = FqElem::ZERO;
                for i in 0..self.m {
                    acc = self.add(acc, self.pow(b, self.pow_p[i as usize] as u64));
                }
                assert!(acc.0 < p, "trace left the prime field");
                acc.0
            })
            .collect();
        let mut trace = vec![0u32; q];
        for (x, t) in trace.iter_mut().enumerate() {
            let mut rest = x as u32;
            let mut acc = 0u64;
            for &bt in &basis_traces {
                acc += (rest % p) as u64 * bt as u64;
                rest /= p;
            }
            *t = (acc % p as u64) as u32;
        }
        self.trace_exp = self.exp.iter().map(|&x| trace[x as usize]).collect();
        self.trace = trace;
    }
}

/// Reduce `a` (low-first) modulo the monic `modulus` in place.
fn reduce_mod(a: &mut Vec<u64>, modulus: &[u32], p: u64) {
    let m = modulus.len() - 1;
    while a.len() > m {
        let top = a.pop().unwrap() % p;
        if top == 0 {
            continue;
        }
        let shift = a.len() - m;
        for (i, &c) in modulus[..m].iter().enumerate() {
            a[shift + i] = (a[shift + i] + (p - top) * c as u64) % p;
        }
    }
}

// Polynomials over F_p as low-first coefficient vectors, used only to pick the modulus.

fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mulmod(a: &[u64], b: &[u64], modulus: &[u32], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    reduce_mod(&mut prod, modulus, p);
    trim(&mut prod);
    prod
}

fn poly_powmod(base: &[u64], mut e: u64, modulus: &[u32], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    while r.len() > db {
        let top = r[r.len() - 1] * lead_inv % p;
        let shift = r.len() - 1 - db;
        for (i, &c) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - top) * c) % p;
        }
        trim(&mut r);
    }
    r
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = poly_rem(&x, &y, p);
        x = y;
        y = r;
    }
    x
}

/// Ben-Or test: f of degree m is irreducible iff gcd(t^(p^i) - t, f) = 1 for i <= m/2.
pub(crate) fn is_irreducible(modulus: &[u32], p: u32) -> bool {
    let m = modulus.len() - 1;
    if m == 1 {
        return true;
    }
    let p = p as u64;
    let f: Vec<u64> = modulus.iter().map(|&c| c as u64).collect();
    let t = vec![0u64, 1];
    let mut h = t.clone();
    for _ in 0..m / 2 {
        h = poly_powmod(&h, p, modulus, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        if diff.is_empty() {
            return false;
        }
        if poly_gcd(&f, &diff, p).len() > 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree m: the lower
/// coefficients c_0..c_{m-1}, read as base-p digits with c_0 least significant,
/// form the smallest integer.
pub(crate) fn smallest_irreducible(p: u32, m: u32) -> Vec<u32> {
    let total = (p as u64).pow(m);
    (0..total)
        .map(|n| {
            let mut c = Vec::with_capacity(m as usize + 1);
            let mut x = n;
            for _ in 0..m {
                c.push((x % p as u64) as u32);
                x /= p as u64;
            }
            c.push(1);
            c
        })
        .find(|c| is_irreducible(c, p))
        .expect("irreducible polynomials exist in every degree")
}
