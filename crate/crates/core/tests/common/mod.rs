//! Brute-force permutation enumeration, independent of the partition-based
//! class data in the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

/// Every permutation of `0..m` (Heap's algorithm).
pub fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut a: Vec<usize> = (0..m).collect();
    let mut c = vec![0usize; m];
    let mut out = vec![a.clone()];
    let mut i = 0;
    while i < m {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            out.push(a.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Cycle lengths in nonincreasing order.
pub fn cycle_type(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

pub fn fixed_points(perm: &[usize]) -> i64 {
    perm.iter().enumerate().filter(|(i, &p)| *i == p).count() as i64
}

/// Sign by counting inversions.
pub fn sign(perm: &[usize]) -> i64 {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Cycle type → number of permutations with it.
pub fn class_counts(m: usize) -> BTreeMap<Vec<u32>, u64> {
    let mut counts = BTreeMap::new();
    for perm in permutations(m) {
        *counts.entry(cycle_type(&perm)).or_insert(0) += 1;
    }
    counts
}

/// `(Σ value^power, count)` over permutations of the given sign
/// (`0` for all), where value is `fix - 1`, times the sign when `twisted`.
pub fn brute_moment(m: usize, want_sign: i64, twisted: bool, power: u32) -> (i64, i64) {
    let mut total = 0;
    let mut count = 0;
    for perm in permutations(m) {
        let s = sign(&perm);
        if want_sign != 0 && s != want_sign {
            continue;
        }
        let v = fixed_points(&perm) - 1;
        let v = if twisted { s * v } else { v };
        total += v.pow(power);
        count += 1;
    }
    (total, count)
}
