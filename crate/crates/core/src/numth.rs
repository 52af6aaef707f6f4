//! Elementary number theory: factorization, Möbius and totient functions,
//! multiplicative orders and Zsigmondy primitive prime divisors.
//!
//! Everything here is exact integer arithmetic on `u64` inputs. Group orders
//! that exceed 64 bits (factorials and the like) are never factorized.

use crate::error::SaxlError;

/// Deterministic Miller-Rabin primality test, valid for all `u64` inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // this witness set is known to be exact for all n < 2^64
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
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

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Pollard's rho with Brent cycle detection; `n` must be odd, composite and > 1.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = (mul_mod(x, x, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            y = (mul_mod(y, y, n) + c) % n;
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as a sorted list of (prime, exponent) pairs.
///
/// Trial division by small primes, then Pollard rho for any stubborn cofactor.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize requires n >= 1");
    let mut out: Vec<(u64, u32)> = Vec::new();
    let mut n = n;
    for p in 2u64.. {
        if p * p > n || p > 100_000 {
            break;
        }
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    // remaining cofactor is 1, a prime, or a product of primes > 10^5
    let mut stack = vec![n];
    let mut rest: Vec<u64> = Vec::new();
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            rest.push(m);
        } else {
            let d = pollard_rho(m);
            stack.push(d);
            stack.push(m / d);
        }
    }
    rest.sort_unstable();
    for p in rest {
        match out.iter_mut().find(|(q, _)| *q == p) {
            Some((_, e)) => *e += 1,
            None => out.push((p, 1)),
        }
    }
    out.sort_unstable();
    out
}

/// Classical Möbius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius requires n >= 1");
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient function.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi requires n >= 1");
    let mut out = n;
    for (p, _) in factorize(n) {
        out = out / p * (p - 1);
    }
    out
}

/// All divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors requires n >= 1");
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let base = out.clone();
        let mut pk = 1u64;
        for _ in 0..e {
            pk *= p;
            out.extend(base.iter().map(|d| d * pk));
        }
    }
    out.sort_unstable();
    out
}

/// True iff `n = p^k` for a prime `p` and `k >= 1`.
pub fn is_prime_power(n: u64) -> bool {
    n >= 2 && factorize(n).len() == 1
}

/// Multiplicative order of `q` modulo `r`; requires `gcd(q, r) = 1`.
pub fn multiplicative_order(q: u64, r: u64) -> Result<u64, SaxlError> {
    if r == 0 || q == 0 || gcd(q % r.max(1), r) != 1 {
        return Err(SaxlError::BadParameter(format!(
            "multiplicative_order({q}, {r}) requires coprime positive arguments"
        )));
    }
    if r == 1 {
        return Ok(1);
    }
    // the order divides phi(r); scan its divisors in ascending order
    let phi = euler_phi(r);
    for d in divisors(phi) {
        if pow_mod(q % r, d, r) == 1 {
            return Ok(d);
        }
    }
    unreachable!("order of a unit divides phi(r)")
}

/// Sign parameter for `q^n - eps`, matching the linear/unitary split.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn as_i64(self) -> i64 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Eps::Plus => '+',
            Eps::Minus => '-',
        }
    }
}

impl std::str::FromStr for Eps {
    type Err = SaxlError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+" | "plus" | "1" => Ok(Eps::Plus),
            "-" | "minus" | "-1" => Ok(Eps::Minus),
            other => Err(SaxlError::BadParameter(format!("unknown sign `{other}`"))),
        }
    }
}

/// A primitive prime divisor of `q^n - eps`: a prime dividing `q^n - eps^n`
/// but none of `q^j - eps^j` for `0 < j < n`. Returns `None` exactly in the
/// known exception cases (with the second base equal to 1): `eps = +` with
/// `n = 2` and `q + 1` a power of two; `(q, n, eps) = (2, 6, +)`; and
/// `(q, n, eps) = (2, 3, -)`.
pub fn zsigmondy_primitive_prime(q: u64, n: u32, eps: Eps) -> Option<u64> {
    assert!(q >= 2 && n >= 2, "zsigmondy requires q >= 2, n >= 2");
    let signed_pow = |j: u32| -> i128 {
        let s = match eps {
            Eps::Plus => 1i128,
            Eps::Minus => {
                if j % 2 == 0 {
                    1
                } else {
                    -1
                }
            }
        };
        (q as i128).pow(j) - s
    };
    let target = signed_pow(n);
    debug_assert!(target > 0);
    let target = target as u64;
    for (p, _) in factorize(target) {
        let primitive = (1..n).all(|j| {
            let v = signed_pow(j);
            v == 0 || (v.unsigned_abs() % p as u128) != 0
        });
        if primitive {
            return Some(p);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mobius_small_values() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(6), 1);
    }

    #[test]
    fn phi_and_divisors() {
        assert_eq!(euler_phi(12), 4);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(1), 1);
    }

    #[test]
    fn mobius_sum_over_divisors() {
        for n in 1..=10_000u64 {
            let s: i64 = divisors(n).into_iter().map(mobius).sum();
            assert_eq!(s, if n == 1 { 1 } else { 0 }, "n = {n}");
        }
    }

    #[test]
    fn phi_sum_over_divisors() {
        for n in 1..=10_000u64 {
            let s: u64 = divisors(n).into_iter().map(euler_phi).sum();
            assert_eq!(s, n, "n = {n}");
        }
    }

    #[test]
    fn primality() {
        assert!(is_prime((1u64 << 31) - 1));
        assert!(!is_prime(1));
        assert!(is_prime(2));
        assert!(!is_prime(561)); // Carmichael
        assert!(is_prime(1_000_000_007));
    }

    #[test]
    fn factorize_roundtrip() {
        for n in [2u64, 360, 1 << 20, 10200960, 999_999_937 * 2] {
            let f = factorize(n);
            let back: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(back, n);
        }
    }

    #[test]
    fn orders() {
        assert_eq!(multiplicative_order(2, 5).unwrap(), 4);
        assert_eq!(multiplicative_order(7, 19).unwrap(), 3);
        assert_eq!(multiplicative_order(2, 31).unwrap(), 5);
        assert!(multiplicative_order(6, 9).is_err());
    }

    #[test]
    fn zsigmondy_exceptions_and_values() {
        assert_eq!(zsigmondy_primitive_prime(2, 6, Eps::Plus), None);
        assert_eq!(zsigmondy_primitive_prime(2, 3, Eps::Minus), None);
        assert_eq!(zsigmondy_primitive_prime(2, 4, Eps::Plus), Some(5));
        assert_eq!(zsigmondy_primitive_prime(3, 2, Eps::Plus), None); // 3 + 1 = 4
        assert_eq!(zsigmondy_primitive_prime(2, 5, Eps::Plus), Some(31));
    }

    #[test]
    fn prime_powers() {
        assert!(is_prime_power(32));
        assert!(is_prime_power(27));
        assert!(!is_prime_power(1));
        assert!(!is_prime_power(21));
    }
}
