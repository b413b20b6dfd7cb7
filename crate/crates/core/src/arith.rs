//! Small integer helpers shared by the algebraic modules.

use num_bigint::BigInt;
use num_traits::One;

/// `gcd(a, 0) = a`, so `gcd(n, 0) = n` and `gcd(0, 0) = 0`.
pub fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd3(a: usize, b: usize, c: usize) -> usize {
    gcd(gcd(a, b), c)
}

/// Divisors of `n` in ascending order; empty for `n = 0`.
pub fn divisors(n: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Prime factorization as `(p, a)` pairs with ascending primes.
pub fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut a = 0;
            while n % p == 0 {
                n /= p;
                a += 1;
            }
            out.push((p, a));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: usize) -> usize {
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Binomial coefficient for `0 <= b <= a`; zero when `b > a`.
pub fn binomial(a: usize, b: usize) -> BigInt {
    if b > a {
        return BigInt::from(0);
    }
    let b = b.min(a - b);
    let mut acc = BigInt::one();
    for i in 0..b {
        acc *= a - i;
        acc /= i + 1;
    }
    acc
}

/// Returns `(g, u, v)` with `a*u + b*v = g = gcd(a, b)`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, u, v) = ext_gcd(b, a.rem_euclid(b));
        (g, v, u - a.div_euclid(b) * v)
    }
}

pub fn modulo(a: i64, n: usize) -> usize {
    a.rem_euclid(n as i64) as usize
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_conventions() {
        assert_eq!(gcd(6, 0), 6);
        assert_eq!(gcd(0, 6), 6);
        assert_eq!(gcd3(0, 0, 5), 5);
        assert_eq!(gcd3(6, 4, 2), 2);
    }

    #[test]
    fn divisors_and_factors() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(factorize(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert!(factorize(1).is_empty());
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 3), BigInt::from(20));
        assert_eq!(binomial(0, 0), BigInt::from(1));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    fn bezout() {
        for a in 1..30i64 {
            for b in 1..30i64 {
                let (g, u, v) = ext_gcd(a, b);
                assert_eq!(g as usize, gcd(a as usize, b as usize));
                assert_eq!(a * u + b * v, g);
            }
        }
    }
}
