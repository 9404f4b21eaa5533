//! Binomial coefficients and combination ranking in the combinatorial
//! number system. Ranks order k-subsets of `0..n` lexicographically, which
//! is what lets searches slice the subset space into contiguous chunks.

use crate::error::{Error, Result};

/// `C(n, k)` in u128, or `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}

/// `C(n, k)` as u128, refusing sizes that overflow.
pub fn binomial_checked(n: u64, k: u64) -> Result<u128> {
    binomial(n, k).ok_or_else(|| {
        Error::Refused(format!(
            "C({n}, {k}) overflows 128-bit arithmetic; this instance is beyond \
             the supported enumeration range"
        ))
    })
}

/// The `rank`-th k-subset of `0..n` in lexicographic order, as a sorted vector.
pub fn unrank_combination(n: usize, k: usize, mut rank: u128) -> Vec<usize> {
    let mut combo = Vec::with_capacity(k);
    let mut next = 0usize;
    for slot in 0..k {
        let mut c = next;
        loop {
            let tail = binomial((n - c - 1) as u64, (k - slot - 1) as u64)
                .expect("tail count fits u128 whenever the total rank does");
            if tail <= rank {
                rank -= tail;
                c += 1;
            } else {
                combo.push(c);
                next = c + 1;
                break;
            }
        }
    }
    combo
}

/// Inverse of [`unrank_combination`]; `combo` must be strictly increasing.
pub fn rank_combination(n: usize, combo: &[usize]) -> u128 {
    let k = combo.len();
    let mut rank: u128 = 0;
    let mut prev = 0usize;
    for (slot, &c) in combo.iter().enumerate() {
        for j in prev..c {
            rank += binomial((n - j - 1) as u64, (k - slot - 1) as u64)
                .expect("partial rank fits u128");
        }
        prev = c + 1;
    }
    rank
}

/// Advance a sorted k-subset of `0..n` to its lexicographic successor.
/// Returns false (leaving the subset unspecified) when it was the last one.
pub fn next_combination(n: usize, combo: &mut [usize]) -> bool {
    let k = combo.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if combo[i] < n - k + i {
            combo[i] += 1;
            for j in i + 1..k {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
