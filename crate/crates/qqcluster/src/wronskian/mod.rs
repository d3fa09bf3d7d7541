//! Type `A_n` quantum Wronskians over `K_ℤ` and exact minor identities on
//! the open double Bruhat cell of `SL(n+1)`.
//!
//! In `SL(N)` the generalized minor `Δ_{uϖ_i, vϖ_i}` is the ordinary minor
//! with rows `u{1..i}` and columns `v{1..i}`, where `s_j` swaps `j, j+1`.

mod bruhat;
mod quantum;

pub use bruhat::{bruhat_minor_identity_check, in_open_cell, random_sl, reconstruct, BruhatTrial};
pub use quantum::{build_wronskian, check_wronskian, check_wronskian_for, minor, SeriesMatrix};

/// `p[x] = w(x)` on `0..size` for `w = s_{a_1}⋯s_{a_t}` (rightmost first).
pub fn word_perm(word: &[usize], size: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..size).collect();
    for x in p.iter_mut() {
        for &a in word.iter().rev() {
            if *x == a - 1 {
                *x = a;
            } else if *x == a {
                *x = a - 1;
            }
        }
    }
    p
}

/// The index set `w{1..i}`, sorted, 0-based.
pub fn weight_set(p: &[usize], i: usize) -> Vec<usize> {
    let mut s: Vec<usize> = p[..i].to_vec();
    s.sort_unstable();
    s
}

/// `c^k` as a permutation.
pub fn perm_power(p: &[usize], k: usize) -> Vec<usize> {
    let mut out: Vec<usize> = (0..p.len()).collect();
    for _ in 0..k {
        out = out.iter().map(|&x| p[x]).collect();
    }
    out
}

/// Smallest `k` with `c^k{1..i} = {N−i+1..N}`.
pub fn m_index(c: &[usize], i: usize) -> usize {
    let size = c.len();
    let target: Vec<usize> = (size - i..size).collect();
    (0..=size * size).find(|&k| weight_set(&perm_power(c, k), i) == target).expect("a Coxeter element reaches w0 on every fundamental weight")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coxeter_shifts_basis() {
        // c = s1s2s3 sends e_j to e_{j+1}.
        assert_eq!(word_perm(&[1, 2, 3], 4), vec![1, 2, 3, 0]);
        assert_eq!(word_perm(&[2, 1], 3), vec![2, 0, 1]);
        assert_eq!((1..=3).map(|i| m_index(&word_perm(&[1, 2, 3], 4), i)).collect::<Vec<_>>(), vec![3, 2, 1]);
        assert_eq!(m_index(&word_perm(&[2, 1], 3), 1), 1);
    }
}
