#![allow(dead_code)]

use twobridge::ContinuedFraction;

/// Every canonical continued fraction (`n >= 2`, `a_1, a_n >= 2`) with `Σa_i <= max_sum`.
pub fn canonical_cfs(max_sum: u64) -> Vec<ContinuedFraction> {
    fn extend(prefix: &mut Vec<u64>, remaining: u64, out: &mut Vec<ContinuedFraction>) {
        if prefix.len() >= 2 && prefix[0] >= 2 && *prefix.last().unwrap() >= 2 {
            out.push(ContinuedFraction::new(prefix.clone()).unwrap());
        }
        for a in 1..=remaining {
            if prefix.is_empty() && a < 2 {
                continue;
            }
            prefix.push(a);
            extend(prefix, remaining - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), max_sum, &mut out);
    out
}

/// Closed form `Σa_i + 2(n - 3) - #{a_i = 1}`, written out independently of the library.
pub fn closed_form_upper(entries: &[u64]) -> i64 {
    let sum: i64 = entries.iter().map(|&a| a as i64).sum();
    let n = entries.len() as i64;
    let r = entries.iter().filter(|&&a| a == 1).count() as i64;
    sum + 2 * (n - 3) - r
}

pub fn brute_gcd(a: u64, b: u64) -> u64 {
    (1..=a.min(b))
        .rev()
        .find(|&d| a.is_multiple_of(d) && b.is_multiple_of(d))
        .unwrap_or(a.max(b))
}

/// Modular inverse by exhaustive search.
pub fn brute_inverse(q: u64, p: u64) -> u64 {
    (1..p)
        .find(|x| (q * x) % p == 1)
        .unwrap_or(if p == 2 { 1 } else { 0 })
}
