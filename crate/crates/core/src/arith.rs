//! Small integer helpers shared by the group code.

pub use num_integer::{gcd, lcm};

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of `n` in increasing order.
pub fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: usize, p: usize) -> usize {
    assert!(p >= 2, "p_part needs p >= 2");
    let mut part = 1;
    while n > 0 && n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

/// Returns `(p, k)` when `n = p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: usize) -> Option<(usize, u32)> {
    let ps = prime_divisors(n);
    if ps.len() != 1 {
        return None;
    }
    let p = ps[0];
    let mut k = 0;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    Some((p, k))
}

/// The part of `n` made of primes accepted by `in_pi`.
pub fn pi_part(n: usize, in_pi: impl Fn(usize) -> bool) -> usize {
    prime_divisors(n)
        .into_iter()
        .filter(|&p| in_pi(p))
        .map(|p| p_part(n, p))
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_parts() {
        assert!(is_prime(2) && is_prime(31) && !is_prime(1) && !is_prime(49));
        assert_eq!(prime_divisors(60), vec![2, 3, 5]);
        assert_eq!(prime_divisors(1), Vec::<usize>::new());
        assert_eq!(p_part(48, 2), 16);
        assert_eq!(p_part(48, 5), 1);
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(pi_part(360, |p| p != 2), 45);
    }
}
