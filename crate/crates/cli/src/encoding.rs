//! Text encodings of field elements and polynomials.
//!
//! A coefficient is either a decimal element index or its base-p coordinates
//! separated by colons, lowest degree first: over F_49 = F_7[t]/(t^2+1),
//! "3:1" and "10" both mean t + 3.

use tracebound_core::{Error, FieldCtx, FqElem, FqPoly, Result};

pub fn parse_elem(ctx: &FieldCtx, s: &str) -> Result<FqElem> {
    let s = s.trim();
    if s.contains(':') {
        let mut digits = s
            .split(':')
            .map(|d| {
                d.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidArgument(format!("bad coordinate {d:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if digits.len() > ctx.m() as usize {
            return Err(Error::InvalidArgument(format!(
                "{s:?} has more than {} coordinates",
                ctx.m()
            )));
        }
        digits.resize(ctx.m() as usize, 0);
        ctx.from_vector(&digits)
    } else {
        let index: u32 = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad coefficient {s:?}")))?;
        if index >= ctx.q() {
            return Err(Error::InvalidArgument(format!(
                "coefficient index {index} outside F_{}",
                ctx.q()
            )));
        }
        Ok(ctx.elem(index))
    }
}

/// Comma-separated a_1, ..., a_r.
pub fn parse_poly(ctx: &FieldCtx, s: &str) -> Result<FqPoly> {
    let coeffs = s
        .split(',')
        .map(|c| parse_elem(ctx, c))
        .collect::<Result<Vec<_>>>()?;
    Ok(FqPoly::new(coeffs))
}

pub fn format_elem(ctx: &FieldCtx, a: FqElem) -> String {
    if ctx.m() == 1 {
        a.index().to_string()
    } else {
        ctx.to_vector(a)
            .iter()
            .map(u32::to_string)
            .collect::<Vec<_>>()
            .join(":")
    }
}

/// "[a_1,...,a_r]" in the input encoding.
pub fn format_coeffs(ctx: &FieldCtx, f: &FqPoly) -> String {
    let parts: Vec<String> = f.coeffs().iter().map(|&a| format_elem(ctx, a)).collect();
    format!("[{}]", parts.join(","))
}

/// An element as a polynomial in t.
fn elem_in_t(ctx: &FieldCtx, a: FqElem) -> String {
    let v = ctx.to_vector(a);
    let mut terms = Vec::new();
    for (j, &c) in v.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match j {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{j}"),
        };
        terms.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}{mono}"),
        });
    }
    terms.join("+")
}

/// Human-readable f, e.g. "x^2+x" or "(t+3)x^3+2x".
pub fn format_poly(ctx: &FieldCtx, f: &FqPoly) -> String {
    let mut terms = Vec::new();
    for (i, &a) in f.coeffs().iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let k = i + 1;
        let mono = if k == 1 { "x".to_string() } else { format!("x^{k}") };
        let c = elem_in_t(ctx, a);
        terms.push(if c == "1" {
            mono
        } else if c.contains('+') {
            format!("({c}){mono}")
        } else {
            format!("{c}{mono}")
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let ctx = FieldCtx::new(7, 2).unwrap();
        assert_eq!(parse_elem(&ctx, "3:1").unwrap(), parse_elem(&ctx, "10").unwrap());
        let f = parse_poly(&ctx, "3:1,0,1").unwrap();
        assert_eq!(format_coeffs(&ctx, &f), "[3:1,0:0,1:0]");
        assert_eq!(format_poly(&ctx, &f), "x^3+(t+3)x");
        assert!(parse_elem(&ctx, "49").is_err());
        assert!(parse_elem(&ctx, "1:2:3").is_err());
        assert!(parse_elem(&ctx, "7:0").is_err());
    }

    #[test]
    fn prime_field() {
        let ctx = FieldCtx::new(3, 1).unwrap();
        let f = parse_poly(&ctx, "2,1").unwrap();
        assert_eq!(format_coeffs(&ctx, &f), "[2,1]");
        assert_eq!(format_poly(&ctx, &f), "x^2+2x");
    }
}
