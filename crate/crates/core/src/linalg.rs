//! Dense Gaussian elimination over F_p.

use crate::gf::inv_mod;

/// Rank over F_p of the matrix whose rows are given. Entries must be reduced.
pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as u64).collect())
        .collect();
    let p = p as u64;
    let ncols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..ncols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inv_mod(a[rank][col], p);
        for v in a[rank][col..].iter_mut() {
            *v = *v * inv % p;
        }
        let (top, bottom) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        for row in bottom.iter_mut() {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                *x = (*x + (p - f) * y) % p;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_ranks() {
        assert_eq!(rank_mod_p(&[], 3), 0);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![1, 1]], 3), 2);
        assert_eq!(rank_mod_p(&[vec![1, 2], vec![2, 1]], 3), 1);
        assert_eq!(rank_mod_p(&[vec![0, 0, 0]], 5), 0);
        assert_eq!(
            rank_mod_p(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]], 2),
            2
        );
        assert_eq!(
            rank_mod_p(&[vec![1, 0, 1], vec![0, 1, 1], vec![1, 1, 0]], 3),
            3
        );
    }
}
