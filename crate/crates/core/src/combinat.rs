//! Integer sequences and permutations shared by the generators.

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of `k`-element multisets drawn from `n` types.
pub fn multichoose(n: usize, k: usize) -> BigInt {
    if k == 0 {
        BigInt::one()
    } else if n == 0 {
        BigInt::zero()
    } else {
        binomial(n + k - 1, k)
    }
}

pub fn stirling2(n: usize, k: usize) -> BigInt {
    // row-by-row recurrence S(i, j) = j S(i-1, j) + S(i-1, j-1)
    let mut row = vec![BigInt::zero(); k + 1];
    row[0] = BigInt::one();
    for _ in 0..n {
        for j in (1..=k).rev() {
            let prev = std::mem::take(&mut row[j]);
            row[j] = prev * j + &row[j - 1];
        }
        row[0] = BigInt::zero();
    }
    row[k].clone()
}

/// Surjections from an `a`-set onto a `b`-set.
pub fn surjections(a: usize, b: usize) -> BigInt {
    factorial(b) * stirling2(a, b)
}

/// All permutations of `0..k` in lexicographic order, each with its sign.
pub fn signed_permutations(k: usize) -> Vec<(Vec<usize>, i32)> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..k).collect();
    loop {
        out.push((perm.clone(), permutation_sign(&perm)));
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut inversions = 0usize;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(5), BigInt::from(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(2, 3), BigInt::zero());
        assert_eq!(multichoose(0, 0), BigInt::one());
        assert_eq!(multichoose(0, 2), BigInt::zero());
        assert_eq!(multichoose(2, 3), BigInt::from(4));
        assert_eq!(stirling2(4, 3), BigInt::from(6));
        assert_eq!(stirling2(0, 0), BigInt::one());
        assert_eq!(stirling2(3, 0), BigInt::zero());
        assert_eq!(surjections(4, 3), BigInt::from(36));
    }

    #[test]
    fn surjections_match_brute_force() {
        for a in 0..6usize {
            for b in 0..5usize {
                let mut count = 0u64;
                let total = b.pow(a as u32);
                for code in 0..total {
                    let mut hit = vec![false; b];
                    let mut c = code;
                    for _ in 0..a {
                        hit[c % b] = true;
                        c /= b;
                    }
                    if hit.iter().all(|&h| h) {
                        count += 1;
                    }
                }
                if b == 0 {
                    count = u64::from(a == 0);
                }
                assert_eq!(surjections(a, b), BigInt::from(count), "a={a} b={b}");
            }
        }
    }

    #[test]
    fn permutation_signs() {
        let perms = signed_permutations(3);
        assert_eq!(perms.len(), 6);
        assert_eq!(perms.iter().map(|p| p.1).sum::<i32>(), 0);
        assert_eq!(perms[0], (vec![0, 1, 2], 1));
        assert_eq!(perms[1], (vec![0, 2, 1], -1));
        assert_eq!(signed_permutations(0), vec![(vec![], 1)]);
    }
}
