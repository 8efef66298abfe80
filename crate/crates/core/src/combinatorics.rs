//! Small combinatorial helpers: binomials and lexicographic k-subset iteration.

use num_bigint::BigUint;

/// C(n, k) as u128; `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// Row n of Pascal's triangle, exact.
pub fn binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::from(1u32);
    row.push(c.clone());
    for i in 0..n {
        c = c * BigUint::from(n - i) / BigUint::from(i + 1);
        row.push(c.clone());
    }
    row
}

/// Advances `idx` (strictly increasing, entries < n) to the next k-subset in
/// lexicographic order. Returns false after the last subset.
pub fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Calls `visit` for every k-subset of 0..n in lexicographic order, stopping
/// early when it returns false.
pub fn for_each_combination(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !visit(&idx) {
            return;
        }
        if k == 0 || !next_combination(&mut idx, n) {
            return;
        }
    }
}

/// Position of a sorted k-subset of 0..n in lexicographic order (combinatorial number system).
pub fn combination_rank(subset: &[usize], n: usize) -> usize {
    let k = subset.len();
    let mut rank = 0usize;
    let mut prev = 0usize;
    for (i, &x) in subset.iter().enumerate() {
        for y in prev..x {
            rank += binomial((n - y - 1) as u64, (k - i - 1) as u64).unwrap() as usize;
        }
        prev = x + 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(52, 3), Some(22100));
        assert_eq!(binomial(5, 7), Some(0));
        assert_eq!(binomial_row(4), [1u32, 4, 6, 4, 1].map(BigUint::from).to_vec());
    }

    #[test]
    fn combinations_enumerated_in_rank_order() {
        let n = 7;
        for k in 0..=n {
            let mut count = 0usize;
            for_each_combination(n, k, |c| {
                assert_eq!(combination_rank(c, n), count);
                count += 1;
                true
            });
            assert_eq!(count as u128, binomial(n as u64, k as u64).unwrap());
        }
    }
}
