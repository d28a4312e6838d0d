//! Small machine-integer number theory used throughout the crate.

use num_integer::Integer;

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inv_mod(a: i64, m: i64) -> Option<i64> {
    let e = a.rem_euclid(m).extended_gcd(&m);
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m))
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Writes `q = p^r` with `p` prime, or returns `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let divisors = prime_divisors(q);
    if divisors.len() != 1 {
        return None;
    }
    let p = divisors[0];
    let mut r = 0;
    let mut m = q;
    while m > 1 {
        m /= p;
        r += 1;
    }
    Some((p, r))
}

/// Multiplicative order of `a` modulo `n`; `a` must be a unit.
pub fn multiplicative_order(a: u64, n: u64) -> Option<u32> {
    if n == 1 {
        return Some(1);
    }
    if a.gcd(&n) != 1 {
        return None;
    }
    let mut x = a % n;
    let mut k = 1;
    while x != 1 {
        x = mul_mod(x, a, n);
        k += 1;
    }
    Some(k)
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

/// All prime powers `p^r <= limit` (r >= 1), increasing.
pub fn prime_powers_up_to(limit: u64) -> Vec<u64> {
    let mut out = Vec::new();
    for p in primes_up_to(limit) {
        let mut q = p;
        loop {
            out.push(q);
            match q.checked_mul(p) {
                Some(next) if next <= limit => q = next,
                _ => break,
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn euler_phi(n: u32) -> u32 {
    let mut result = n as u64;
    for p in prime_divisors(n as u64) {
        result = result / p * (p - 1);
    }
    result as u32
}
