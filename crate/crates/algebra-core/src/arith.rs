//! Elementary integer arithmetic on `u64`: modular operations, deterministic
//! primality testing, integer factorization, and multiplicative-order
//! computations.
//!
//! Everything here is exact and deterministic.  The factorization routine
//! (trial division plus Pollard's rho with Brent cycle detection) is adequate
//! for the sizes that arise in this workspace (orders of roots of unity,
//! `2^d - 1` for `d <= 63`, group exponents).

/// Returns `(a + b) mod m` without overflow for any `a, b < m <= u64::MAX`.
#[inline]
pub fn addmod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(a < m && b < m);
    let (s, carry) = a.overflowing_add(b);
    if carry || s >= m {
        s.wrapping_sub(m)
    } else {
        s
    }
}

/// Returns `(a - b) mod m`.
#[inline]
pub fn submod(a: u64, b: u64, m: u64) -> u64 {
    debug_assert!(a < m && b < m);
    if a >= b {
        a - b
    } else {
        a.wrapping_sub(b).wrapping_add(m)
    }
}

/// Returns `(a * b) mod m`, computed through `u128`.
#[inline]
pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128) * (b as u128) % (m as u128)) as u64
}

/// Returns `a^e mod m` by binary exponentiation.
pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    a %= m;
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Greatest common divisor.
pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple; panics on overflow.
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Returns `a^{-1} mod m` if `gcd(a, m) = 1`.
pub fn invmod(a: u64, m: u64) -> Option<u64> {
    // Extended Euclid over i128 to dodge sign gymnastics.
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        let t = old_r - q * r;
        old_r = r;
        r = t;
        let t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if old_r != 1 {
        return None;
    }
    let mut inv = old_s % m as i128;
    if inv < 0 {
        inv += m as i128;
    }
    Some(inv as u64)
}

/// Deterministic Miller–Rabin primality test, exact for all `u64`.
///
/// The base set `{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}` is known to be
/// a deterministic witness set for every integer below `3.3 * 10^24`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard's rho (Brent variant) for one nontrivial factor of an odd
/// composite `n`.
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(n > 1 && !is_prime(n) && n % 2 == 1);
    // Deterministic sweep over polynomial offsets; each is a full Brent run.
    for c in 1..n {
        let f = |x: u64| addmod(mulmod(x, x, n), c, n);
        let (mut x, mut ys) = (2u64, 2u64);
        let (mut y, mut d) = (2u64, 1u64);
        let mut q = 1u64;
        let m = 128u64;
        let mut r = 1u64;
        while d == 1 {
            x = y;
            for _ in 0..r {
                y = f(y);
            }
            let mut k = 0u64;
            while k < r && d == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y);
                    q = mulmod(q, x.abs_diff(y), n);
                }
                d = gcd(q, n);
                k += m;
            }
            r <<= 1;
        }
        if d == n {
            // Backtrack one step at a time.
            loop {
                ys = f(ys);
                d = gcd(x.abs_diff(ys), n);
                if d > 1 {
                    break;
                }
            }
        }
        if d != n {
            return d;
        }
    }
    unreachable!("pollard_rho: no factor found for {n}");
}

/// Full factorization of `n` as a sorted list of `(prime, exponent)` pairs.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    let mut out: Vec<(u64, u32)> = Vec::new();
    if n < 2 {
        return out;
    }
    let mut stack = vec![n];
    let mut primes: Vec<u64> = Vec::new();
    while let Some(mut m) = stack.pop() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            while m % p == 0 {
                primes.push(p);
                m /= p;
            }
        }
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    primes.sort_unstable();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for (p, _) in factor(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// Multiplicative order of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn multiplicative_order(a: u64, m: u64) -> u64 {
    assert!(m > 0 && gcd(a % m, m) == 1, "order undefined: gcd != 1");
    if m == 1 {
        return 1;
    }
    let mut ord = euler_phi(m);
    for (p, _) in factor(ord) {
        while ord % p == 0 && powmod(a, ord / p, m) == 1 {
            ord /= p;
        }
    }
    ord
}

/// Least primitive root modulo an odd prime `p`.
pub fn least_primitive_root(p: u64) -> u64 {
    assert!(is_prime(p), "{p} is not prime");
    if p == 2 {
        return 1;
    }
    let facs = factor(p - 1);
    'outer: for g in 2..p {
        for &(f, _) in &facs {
            if powmod(g, (p - 1) / f, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root modulo {p}");
}

/// 2-adic valuation of a positive integer.
pub fn v2(n: u64) -> u32 {
    assert!(n > 0);
    n.trailing_zeros()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modular_basics() {
        assert_eq!(addmod(u64::MAX - 1, u64::MAX - 2, u64::MAX), u64::MAX - 3);
        assert_eq!(submod(3, 5, 7), 5);
        assert_eq!(mulmod(u64::MAX - 1, u64::MAX - 1, u64::MAX), 1);
        assert_eq!(powmod(3, 100, 101), 1); // Fermat
        assert_eq!(invmod(17, 3120), Some(2753)); // RSA textbook pair
        assert_eq!(invmod(6, 9), None);
    }

    #[test]
    fn primality_known_values() {
        let primes = [2u64, 3, 13, 313, 337, 1321, 9241, 25537, 2521, 1_000_000_007];
        for p in primes {
            assert!(is_prime(p), "{p} should be prime");
        }
        let composites = [1u64, 6385, 12769, 19153, 4095, 531440];
        for c in composites {
            assert!(!is_prime(c), "{c} should be composite");
        }
    }

    #[test]
    fn factor_known_values() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(9240), vec![(2, 3), (3, 1), (5, 1), (7, 1), (11, 1)]);
        assert_eq!(factor(531440), vec![(2, 4), (5, 1), (7, 1), (13, 1), (73, 1)]);
        // 2^60 - 1, used when searching primitive elements of GF(2^60).
        assert_eq!(
            factor((1u64 << 60) - 1),
            vec![
                (3, 2),
                (5, 2),
                (7, 1),
                (11, 1),
                (13, 1),
                (31, 1),
                (41, 1),
                (61, 1),
                (151, 1),
                (331, 1),
                (1321, 1)
            ]
        );
    }

    #[test]
    fn orders_and_roots() {
        assert_eq!(euler_phi(1155), 480);
        assert_eq!(euler_phi(9240), 1920);
        assert_eq!(multiplicative_order(2, 1155), 60);
        assert_eq!(multiplicative_order(2, 399), 18);
        assert_eq!(multiplicative_order(2, 105), 12);
        assert_eq!(multiplicative_order(2, 165), 20);
        assert_eq!(least_primitive_root(3), 2);
        assert_eq!(least_primitive_root(5), 2);
        assert_eq!(least_primitive_root(7), 3);
        assert_eq!(least_primitive_root(313), 10);
        assert_eq!(v2(48), 4);
    }
}
