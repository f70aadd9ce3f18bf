//! Degree-2 closed forms.
//!
//! Tr(a x^2 + b x) is a quadratic polynomial over F_p in the coordinates of x.
//! Diagonalizing its quadratic part and completing squares turns the zero
//! count into the classical solution counts for diagonal forms, which give
//! d(p, m, 2) and the tight bound for deg f = 2 in closed form.

use crate::error::{Error, Result};
use crate::gf::{inv_mod, is_prime, pow_mod, FieldCtx, FqElem};

fn check_odd_prime(p: u32) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    Ok(())
}

/// Legendre symbol via Euler's criterion; eta(0) = 0.
pub fn quadratic_character(p: u32, c: i64) -> Result<i8> {
    check_odd_prime(p)?;
    let c = c.rem_euclid(p as i64) as u64;
    if c == 0 {
        return Ok(0);
    }
    Ok(if pow_mod(c, (p as u64 - 1) / 2, p as u64) == 1 {
        1
    } else {
        -1
    })
}

/// v(0) = q - 1, v(c) = -1 otherwise.
pub fn v_function(q: u64, c: u64) -> i64 {
    if c == 0 {
        q as i64 - 1
    } else {
        -1
    }
}

/// a_1 z_1^2 + ... + a_n z_n^2 over F_p with every a_i nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalForm {
    p: u32,
    coeffs: Vec<u32>,
}

impl DiagonalForm {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Result<Self> {
        check_odd_prime(p)?;
        if coeffs.is_empty() {
            return Err(Error::InvalidArgument("a form needs at least one variable".into()));
        }
        let coeffs: Vec<u32> = coeffs.into_iter().map(|a| a % p).collect();
        if coeffs.contains(&0) {
            return Err(Error::InvalidArgument("degenerate diagonal form".into()));
        }
        Ok(DiagonalForm { p, coeffs })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn num_vars(&self) -> usize {
        self.coeffs.len()
    }

    /// Product of the diagonal entries mod p.
    pub fn determinant(&self) -> u32 {
        let p = self.p as u64;
        self.coeffs.iter().fold(1u64, |acc, &a| acc * a as u64 % p) as u32
    }

    pub fn eval(&self, z: &[u32]) -> u32 {
        let p = self.p as u64;
        self.coeffs
            .iter()
            .zip(z)
            .fold(0u64, |acc, (&a, &x)| (acc + a as u64 * x as u64 % p * x as u64) % p) as u32
    }

    /// Number of solutions in F_p^n of form(z) = c.
    pub fn count(&self, c: u32) -> u64 {
        if self.num_vars().is_multiple_of(2) {
            count_even(self, c).expect("parity checked")
        } else {
            count_odd(self, c).expect("parity checked")
        }
    }
}

/// p^(n-1) + v(c) p^((n-2)/2) eta((-1)^(n/2) Delta), n even.
pub fn count_even(form: &DiagonalForm, c: u32) -> Result<u64> {
    let n = form.num_vars() as u32;
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("{n} variables is not even")));
    }
    let p = form.p;
    let sign = if (n / 2).is_multiple_of(2) { 1 } else { -1 };
    let eta = quadratic_character(p, sign * form.determinant() as i64)? as i64;
    let pp = p as i64;
    let out = pp.pow(n - 1) + v_function(p as u64, (c % p) as u64) * pp.pow((n - 2) / 2) * eta;
    Ok(out as u64)
}

/// p^(n-1) + p^((n-1)/2) eta((-1)^((n-1)/2) c Delta), n odd.
pub fn count_odd(form: &DiagonalForm, c: u32) -> Result<u64> {
    let n = form.num_vars() as u32;
    if n % 2 != 1 {
        return Err(Error::InvalidArgument(format!("{n} variables is not odd")));
    }
    let p = form.p;
    let sign = if ((n - 1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let arg = sign * (c % p) as i64 * form.determinant() as i64;
    let eta = quadratic_character(p, arg)? as i64;
    let pp = p as i64;
    Ok((pp.pow(n - 1) + pp.pow((n - 1) / 2) * eta) as u64)
}

/// d(p, m, 2).
pub fn closed_form_d2(p: u32, m: u32) -> Result<u64> {
    check_odd_prime(p)?;
    let p = p as u64;
    Ok(if m.is_multiple_of(2) {
        (p - 1) * p.pow(m - 1) - (p - 1) * p.pow((m - 2) / 2)
    } else {
        (p - 1) * p.pow(m - 1) - p.pow((m - 1) / 2)
    })
}

/// The tight bound on N_f for deg f = 2.
pub fn bound_r2(p: u32, m: u32) -> Result<u64> {
    check_odd_prime(p)?;
    let p = p as u64;
    let q = p.pow(m);
    Ok(if m % 2 == 1 {
        q + 1 + p.pow(m.div_ceil(2))
    } else {
        q + 1 + (p - 1) * p.pow(m / 2)
    })
}

/// Tr(a x^2 + b x) = 0 rewritten as sum_i d_i z_i^2 = c after a change of
/// coordinates x = P y and the shift z_i = y_i + b'_i / (2 d_i).
#[derive(Clone, Debug)]
pub struct TraceFormReduction {
    pub form: DiagonalForm,
    /// Linear coefficients b' in the diagonal coordinates y.
    pub linear: Vec<u32>,
    pub constant: u32,
    /// Columns of P in the polynomial-basis coordinates of x.
    pub transform: Vec<Vec<u32>>,
}

/// Gram matrix (Tr(a t^i t^j))_{i,j} of x -> Tr(a x^2).
pub fn trace_gram_matrix(ctx: &FieldCtx, a: FqElem) -> Vec<Vec<u32>> {
    let m = ctx.m() as usize;
    let basis: Vec<FqElem> = (0..m).map(|j| ctx.elem(ctx.p().pow(j as u32))).collect();
    (0..m)
        .map(|i| {
            (0..m)
                .map(|j| ctx.trace(ctx.mul(a, ctx.mul(basis[i], basis[j]))))
                .collect()
        })
        .collect()
}

/// Symmetric Gaussian elimination: returns (diagonal, P) with P^T S P = diag.
pub fn diagonalize_symmetric(s: &[Vec<u32>], p: u32) -> Result<(Vec<u32>, Vec<Vec<u32>>)> {
    let m = s.len();
    let pp = p as u64;
    let mut s: Vec<Vec<u64>> = s.iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect();
    // pm[row][col]
    let mut pm: Vec<Vec<u64>> = (0..m).map(|i| (0..m).map(|j| (i == j) as u64).collect()).collect();

    let swap = |s: &mut Vec<Vec<u64>>, pm: &mut Vec<Vec<u64>>, a: usize, b: usize| {
        s.swap(a, b);
        for row in s.iter_mut() {
            row.swap(a, b);
        }
        for row in pm.iter_mut() {
            row.swap(a, b);
        }
    };
    // index `dst` += f * index `src`, on both sides
    let add = |s: &mut Vec<Vec<u64>>, pm: &mut Vec<Vec<u64>>, dst: usize, src: usize, f: u64| {
        for c in 0..m {
            s[dst][c] = (s[dst][c] + f * s[src][c]) % pp;
        }
        for row in s.iter_mut() {
            row[dst] = (row[dst] + f * row[src]) % pp;
        }
        for row in pm.iter_mut() {
            row[dst] = (row[dst] + f * row[src]) % pp;
        }
    };

    for k in 0..m {
        if s[k][k] == 0 {
            if let Some(i) = (k + 1..m).find(|&i| s[i][i] != 0) {
                swap(&mut s, &mut pm, k, i);
            } else if let Some(i) = (k + 1..m).find(|&i| s[k][i] != 0) {
                add(&mut s, &mut pm, k, i, 1);
            } else {
                return Err(Error::Invariant(format!(
                    "degenerate quadratic form over F_{p}: row {k} vanishes"
                )));
            }
        }
        let inv = inv_mod(s[k][k], pp);
        for j in k + 1..m {
            if s[j][k] != 0 {
                let f = (pp - s[j][k] * inv % pp) % pp;
                add(&mut s, &mut pm, j, k, f);
            }
        }
    }
    let diag = (0..m).map(|i| s[i][i] as u32).collect();
    let pm = pm.into_iter().map(|r| r.into_iter().map(|x| x as u32).collect()).collect();
    Ok((diag, pm))
}

pub fn reduce_trace_form(ctx: &FieldCtx, a: FqElem, b: FqElem) -> Result<TraceFormReduction> {
    check_odd_prime(ctx.p())?;
    if a.is_zero() {
        return Err(Error::InvalidArgument("a must be nonzero".into()));
    }
    let p = ctx.p() as u64;
    let m = ctx.m() as usize;
    let gram = trace_gram_matrix(ctx, a);
    let (diag, pm) = diagonalize_symmetric(&gram, ctx.p())?;
    let lin: Vec<u64> = (0..m)
        .map(|i| ctx.trace(ctx.mul(b, ctx.elem(ctx.p().pow(i as u32)))) as u64)
        .collect();
    // b' = L P
    let linear: Vec<u32> = (0..m)
        .map(|j| ((0..m).map(|i| lin[i] * pm[i][j] as u64).sum::<u64>() % p) as u32)
        .collect();
    let inv4 = inv_mod(4, p);
    let constant = diag
        .iter()
        .zip(&linear)
        .map(|(&d, &bl)| bl as u64 * bl as u64 % p * inv4 % p * inv_mod(d as u64, p) % p)
        .sum::<u64>()
        % p;
    let transform = (0..m).map(|j| (0..m).map(|i| pm[i][j]).collect()).collect();
    Ok(TraceFormReduction {
        form: DiagonalForm::new(ctx.p(), diag)?,
        linear,
        constant: constant as u32,
        transform,
    })
}

/// Weight of (Tr(a x^2 + b x))_{x in F_q^*} from the diagonal-form counts.
pub fn trace_form_weight(ctx: &FieldCtx, a: FqElem, b: FqElem) -> Result<u64> {
    let red = reduce_trace_form(ctx, a, b)?;
    let solutions = red.form.count(red.constant);
    // x = 0 is always a solution and is not a code coordinate
    Ok(ctx.q() as u64 - solutions)
}

/// eta((-1)^(m/2) Delta_a) for the quadratic part of Tr(a x^2).
pub fn trace_form_character(ctx: &FieldCtx, a: FqElem) -> Result<i8> {
    let red = reduce_trace_form(ctx, a, FqElem::ZERO)?;
    let m = ctx.m();
    let sign = if (m / 2).is_multiple_of(2) { 1 } else { -1 };
    quadratic_character(ctx.p(), sign * red.form.determinant() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn characters() {
        for p in [3u32, 5, 7, 11, 13] {
            assert_eq!(quadratic_character(p, 1).unwrap(), 1);
            assert_eq!(quadratic_character(p, 0).unwrap(), 0);
        }
        assert_eq!(quadratic_character(3, 2).unwrap(), -1);
        assert_eq!(quadratic_character(7, 2).unwrap(), 1);
        assert_eq!(quadratic_character(7, -1).unwrap(), -1);
        assert_eq!(quadratic_character(2, 1), Err(Error::EvenCharacteristic));
    }

    #[test]
    fn v_sums_to_zero() {
        for q in [3u64, 9, 25] {
            assert_eq!((0..q).map(|c| v_function(q, c)).sum::<i64>(), 0);
        }
    }

    #[test]
    fn small_counts() {
        let f = DiagonalForm::new(3, vec![1, 1]).unwrap();
        assert_eq!(count_even(&f, 0).unwrap(), 1);
        assert_eq!(count_even(&f, 1).unwrap(), 4);
        assert!(count_odd(&f, 0).is_err());
        let g = DiagonalForm::new(3, vec![1]).unwrap();
        assert_eq!(count_odd(&g, 1).unwrap(), 2);
        assert_eq!(count_odd(&g, 2).unwrap(), 0);
        assert!(count_even(&g, 0).is_err());
        for p in [3u32, 5, 7] {
            assert_eq!(count_odd(&DiagonalForm::new(p, vec![1]).unwrap(), 0).unwrap(), 1);
        }
        assert!(DiagonalForm::new(5, vec![1, 0]).is_err());
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_d2(3, 1).unwrap(), 1);
        assert_eq!(closed_form_d2(7, 2).unwrap(), 36);
        assert_eq!(closed_form_d2(5, 3).unwrap(), 95);
        assert_eq!(closed_form_d2(3, 4).unwrap(), 48);
        assert_eq!(closed_form_d2(3, 5).unwrap(), 153);
        assert_eq!(bound_r2(3, 1).unwrap(), 7);
        assert_eq!(bound_r2(7, 2).unwrap(), 92);
        assert_eq!(bound_r2(5, 3).unwrap(), 151);
        assert_eq!(closed_form_d2(2, 3), Err(Error::EvenCharacteristic));
        assert_eq!(bound_r2(2, 3), Err(Error::EvenCharacteristic));
    }

    #[test]
    fn diagonalization_is_a_congruence() {
        let s = vec![vec![0, 1, 2], vec![1, 0, 1], vec![2, 1, 0]];
        let (d, pm) = diagonalize_symmetric(&s, 5).unwrap();
        // P^T S P
        for i in 0..3 {
            for j in 0..3 {
                let mut v = 0u64;
                for a in 0..3 {
                    for b in 0..3 {
                        v += pm[a][i] as u64 * s[a][b] as u64 * pm[b][j] as u64;
                    }
                }
                assert_eq!(v % 5, if i == j { d[i] as u64 } else { 0 });
            }
        }
        assert!(diagonalize_symmetric(&[vec![1, 0], vec![0, 0]], 5).is_err());
    }

    #[test]
    fn f3_weight() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        assert_eq!(trace_form_weight(&ctx, FqElem::ONE, FqElem::ZERO).unwrap(), 2);
    }
}
