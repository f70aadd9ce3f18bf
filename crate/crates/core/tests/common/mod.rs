//! Schoolbook models used as oracles. They share nothing with the library's
//! table-driven arithmetic except the choice of modulus.

#![allow(dead_code)]

/// F_p[t]/(modulus) with elements as coordinate vectors, lowest degree first.
pub struct NaiveField {
    pub p: u64,
    pub m: usize,
    pub modulus: Vec<u64>,
}

impl NaiveField {
    pub fn new(p: u32, modulus: &[u32]) -> Self {
        NaiveField {
            p: p as u64,
            m: modulus.len() - 1,
            modulus: modulus.iter().map(|&c| c as u64).collect(),
        }
    }

    pub fn q(&self) -> u64 {
        self.p.pow(self.m as u32)
    }

    pub fn elem(&self, mut i: u64) -> Vec<u64> {
        (0..self.m)
            .map(|_| {
                let d = i % self.p;
                i /= self.p;
                d
            })
            .collect()
    }

    pub fn index(&self, a: &[u64]) -> u64 {
        a.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| (x + y) % self.p).collect()
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = self.p;
        let mut prod = vec![0u64; 2 * self.m];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for k in (self.m..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (j, &mc) in self.modulus[..self.m].iter().enumerate() {
                let t = k - self.m + j;
                prod[t] = (prod[t] + (p - c) * mc % p) % p;
            }
        }
        prod.truncate(self.m);
        prod
    }

    pub fn pow(&self, a: &[u64], e: u64) -> Vec<u64> {
        let mut acc = self.elem(1);
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    /// a + a^p + ... + a^(p^(m-1)), which lies in F_p.
    pub fn trace(&self, a: &[u64]) -> u64 {
        let mut sum = vec![0u64; self.m];
        let mut conj = a.to_vec();
        for _ in 0..self.m {
            sum = self.add(&sum, &conj);
            conj = self.pow(&conj, self.p);
        }
        assert!(sum[1..].iter().all(|&c| c == 0), "trace left F_p");
        sum[0]
    }

    /// |Z_f| for f = sum_k coeffs[k-1] x^k, coefficients as element indices.
    pub fn zero_count(&self, coeffs: &[u64]) -> u64 {
        let cs: Vec<Vec<u64>> = coeffs.iter().map(|&c| self.elem(c)).collect();
        (0..self.q())
            .filter(|&xi| {
                let x = self.elem(xi);
                let mut acc = vec![0u64; self.m];
                let mut xk = x.clone();
                for c in &cs {
                    acc = self.add(&acc, &self.mul(c, &xk));
                    xk = self.mul(&xk, &x);
                }
                self.trace(&acc) == 0
            })
            .count() as u64
    }
}

/// (d, lexicographically smallest minimizer, number of minimizers) by
/// evaluating every nonzero f of degree <= r.
pub fn brute_min_distance(field: &NaiveField, r: u32) -> (u64, Vec<u64>, u64) {
    let q = field.q();
    let mut best = (u64::MAX, Vec::new(), 0u64);
    for code in 1..q.pow(r) {
        let coeffs: Vec<u64> = (0..r).map(|i| code / q.pow(i) % q).collect();
        let w = q - field.zero_count(&coeffs);
        // lex order reads a_1 first
        if w < best.0 || (w == best.0 && coeffs < best.1) {
            let count = if w == best.0 { best.2 } else { 0 };
            best = (w, coeffs, count);
        }
        if w == best.0 {
            best.2 += 1;
        }
    }
    best
}
