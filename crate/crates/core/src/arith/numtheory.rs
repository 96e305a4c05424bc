//! Small-integer number theory used throughout: primality, factorization,
//! totients, primitive roots and Kronecker symbols.

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Primes `q` with `lo <= q < hi`, ascending.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi <= 2 {
        return Vec::new();
    }
    let n = hi as usize;
    let mut sieve = vec![true; n];
    sieve[0] = false;
    if n > 1 {
        sieve[1] = false;
    }
    let mut i = 2;
    while i * i < n {
        if sieve[i] {
            let mut j = i * i;
            while j < n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (lo as usize..n).filter(|&q| sieve[q]).map(|q| q as u64).collect()
}

/// Prime factorization as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn totient(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(q, _)| acc / q * (q - 1))
}

pub fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

pub fn divisors(n: u64) -> Vec<u64> {
    let mut out: Vec<u64> = (1..=n).take_while(|d| d * d <= n).filter(|d| n % d == 0).collect();
    let mut big: Vec<u64> = out.iter().filter(|&&d| d * d != n).map(|d| n / d).collect();
    big.reverse();
    out.extend(big);
    out
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

pub fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    if modulus == 1 {
        return 0;
    }
    let m = modulus as u128;
    let mut b = (base as u128) % m;
    let mut acc: u128 = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as u64
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i128, m: i128) -> Option<i128> {
    let (mut old_r, mut r) = (a.rem_euclid(m), m);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m))
}

/// Smallest generator of `(Z/p^2)^×`, which generates `(Z/p^n)^×` for all `n` (p odd).
pub fn primitive_root_prime_power(p: u64) -> u64 {
    let pm1 = factorize(p - 1);
    let p2 = p * p;
    let order = p * (p - 1);
    (2..p)
        .find(|&g| {
            pm1.iter().all(|&(q, _)| mod_pow(g, (p - 1) / q, p) != 1)
                && mod_pow(g, order / p, p2) != 1
        })
        .expect("odd primes have primitive roots")
}

/// Kronecker symbol `(d / n)` for a discriminant `d` and `n >= 1`.
pub fn kronecker(d: i64, n: u64) -> i32 {
    if n == 0 {
        return i32::from(d.abs() == 1);
    }
    let mut result = 1;
    let mut n = n;
    while n % 2 == 0 {
        n /= 2;
        let r = d.rem_euclid(8);
        if r % 2 == 0 {
            return 0;
        }
        if r == 3 || r == 5 {
            result = -result;
        }
    }
    result * jacobi(d, n)
}

/// Jacobi symbol `(a / n)` for odd `n >= 1`.
pub fn jacobi(a: i64, n: u64) -> i32 {
    assert!(n % 2 == 1);
    let mut a = a.rem_euclid(n as i64) as u64;
    let mut n = n;
    let mut result = 1;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let r = n % 8;
            if r == 3 || r == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// `v_p(n)` for `n != 0`.
pub fn valuation_u64(mut n: u64, p: u64) -> u32 {
    assert!(n != 0);
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `floor(log_p(j))` for `j >= 1`.
pub fn floor_log(j: u64, p: u64) -> u32 {
    let mut t = 0;
    let mut acc = p;
    while acc <= j {
        t += 1;
        acc = acc.saturating_mul(p);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_matches_trial_division() {
        let sieved = primes_in(0, 500);
        let trial: Vec<u64> = (0..500).filter(|&n| is_prime(n)).collect();
        assert_eq!(sieved, trial);
    }

    #[test]
    fn primitive_roots() {
        assert_eq!(primitive_root_prime_power(3), 2);
        assert_eq!(primitive_root_prime_power(5), 2);
        assert_eq!(primitive_root_prime_power(7), 3);
        // 10 is a primitive root mod 487 but not mod 487^2.
        let g = primitive_root_prime_power(487);
        assert_ne!(mod_pow(g, 486, 487 * 487), 1);
    }

    #[test]
    fn kronecker_symbols() {
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-4, 7), -1);
        assert_eq!(kronecker(-3, 7), 1);
        assert_eq!(kronecker(-7, 2), 1);
        assert_eq!(kronecker(-8, 3), 1);
        assert_eq!(kronecker(-4, 2), 0);
    }

    #[test]
    fn arithmetic_functions() {
        assert_eq!(totient(2058), 588);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(floor_log(81, 3), 4);
        assert_eq!(floor_log(80, 3), 3);
        assert_eq!(mod_inv(3, 7), Some(5));
    }
}
