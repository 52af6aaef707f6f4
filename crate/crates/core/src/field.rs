//! Finite fields `F_{p^k}` with `p^k <= 2^20`.
//!
//! Elements are encoded as integers `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! giving the coefficient vector over the prime field with respect to the
//! stored irreducible modulus (the lexicographically first one found, so the
//! construction is deterministic). Multiplication runs over exp/log tables of
//! a verified generator of the cyclic multiplicative group.

use crate::error::SaxlError;
use crate::numth::{factorize, is_prime};

pub const MAX_FIELD: u64 = 1 << 20;

#[derive(Clone)]
pub struct FiniteField {
    p: u64,
    k: u32,
    q: u64,
    /// monic modulus, little-endian coefficients, length k+1
    modulus: Vec<u64>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
}

fn poly_mul_mod(a: &[u64], b: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai * bj) % p;
        }
    }
    // reduce: modulus is monic
    for i in (k..prod.len()).rev() {
        let c = prod[i];
        if c == 0 {
            continue;
        }
        prod[i] = 0;
        for j in 0..k {
            let t = (c * modulus[j]) % p;
            let idx = i - k + j;
            prod[idx] = (prod[idx] + p - t) % p;
        }
    }
    prod.truncate(k.max(1));
    prod
}

fn poly_pow_mod(base: &[u64], mut e: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let k = modulus.len() - 1;
    let mut acc = vec![0u64; k.max(1)];
    acc[0] = 1;
    let mut b = base.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mul_mod(&acc, &b, modulus, p);
        }
        b = poly_mul_mod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&c| c == 0)
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let trim = |v: &[u64]| -> Vec<u64> {
        let mut v = v.to_vec();
        while v.len() > 1 && *v.last().unwrap() == 0 {
            v.pop();
        }
        v
    };
    let mut a = trim(a);
    let mut b = trim(b);
    while !poly_is_zero(&b) {
        // a mod b
        let db = b.len() - 1;
        let lead_inv = mod_inv(b[db], p);
        while a.len() > db && !poly_is_zero(&a) {
            let da = a.len() - 1;
            if da < db {
                break;
            }
            let c = (a[da] * lead_inv) % p;
            if c != 0 {
                for j in 0..=db {
                    let t = (c * b[j]) % p;
                    a[da - db + j] = (a[da - db + j] + p - t) % p;
                }
            }
            a = trim(&a);
            if a.len() == 1 && a[0] == 0 {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        b = trim(&b);
        a = trim(&a);
    }
    trim(&a)
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // p prime
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Irreducibility over F_p: x^{p^k} = x mod f and, for each prime r | k,
/// gcd(x^{p^{k/r}} - x, f) = 1.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    let x = vec![0u64, 1];
    let mut t = x.clone();
    let mut powers = Vec::with_capacity(k as usize + 1);
    powers.push(t.clone());
    for _ in 0..k {
        t = poly_pow_mod(&t, p, f, p);
        powers.push(t.clone());
    }
    // x^{p^k} == x
    let mut top = powers[k as usize].clone();
    top.resize(top.len().max(2), 0);
    if top[1] != 1 || top.iter().enumerate().any(|(i, &c)| i != 1 && c != 0) {
        return false;
    }
    for (r, _) in factorize(k as u64) {
        let j = (k / r as u32) as usize;
        let mut diff = powers[j].clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = poly_gcd(&diff, f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<FiniteField, SaxlError> {
        if !is_prime(p) || k < 1 {
            return Err(SaxlError::BadParameter(format!(
                "field parameters ({p}, {k}) need a prime p and k >= 1"
            )));
        }
        let q = p.checked_pow(k).filter(|&q| q <= MAX_FIELD).ok_or_else(|| {
            SaxlError::BadParameter(format!("field size p^k = {p}^{k} exceeds 2^20"))
        })?;

        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            // first irreducible monic polynomial in lexicographic coefficient
            // order c_0 + c_1 p + ...
            let mut found = None;
            'search: for v in 0..q {
                let mut f = Vec::with_capacity(k as usize + 1);
                let mut rest = v;
                for _ in 0..k {
                    f.push(rest % p);
                    rest /= p;
                }
                f.push(1);
                if is_irreducible(&f, p) {
                    found = Some(f);
                    break 'search;
                }
            }
            found.expect("an irreducible polynomial of each degree exists")
        };

        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            generator: 0,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let generator = field.find_generator()?;
        field.generator = generator;

        // exp/log tables from the generator
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut cur = 1u32;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = cur;
            log[cur as usize] = i as u32;
            cur = field.mul_slow(cur, generator);
        }
        if cur != 1 {
            return Err(SaxlError::Inconsistent(
                "generator order verification failed".into(),
            ));
        }
        field.exp = exp;
        field.log = log;
        Ok(field)
    }

    fn find_generator(&self) -> Result<u32, SaxlError> {
        let order = self.q - 1;
        if order == 1 {
            return Ok(1);
        }
        let prime_divisors: Vec<u64> = factorize(order).into_iter().map(|(r, _)| r).collect();
        'cand: for g in 2..self.q {
            let g = g as u32;
            for &r in &prime_divisors {
                if self.pow_slow(g, order / r) == 1 {
                    continue 'cand;
                }
            }
            if self.pow_slow(g, order) != 1 {
                continue;
            }
            return Ok(g);
        }
        Err(SaxlError::SearchFailed(
            "no multiplicative generator found".into(),
        ))
    }

    fn decode(&self, a: u32) -> Vec<u64> {
        let mut out = vec![0u64; self.k as usize];
        let mut rest = a as u64;
        for slot in out.iter_mut() {
            *slot = rest % self.p;
            rest /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: &[u64]) -> u32 {
        let mut out = 0u64;
        for &c in coeffs.iter().rev() {
            out = out * self.p + (c % self.p);
        }
        out as u32
    }

    fn mul_slow(&self, a: u32, b: u32) -> u32 {
        let prod = poly_mul_mod(&self.decode(a), &self.decode(b), &self.modulus, self.p);
        self.encode(&prod)
    }

    fn pow_slow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> u32 {
        self.generator
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.decode(a), self.decode(b));
        let sum: Vec<u64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % self.p).collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: u32) -> u32 {
        let da = self.decode(a);
        let n: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        self.encode(&n)
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let e = self.log[a as usize] as u64 + self.log[b as usize] as u64;
        self.exp[(e % (self.q - 1)) as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "division by zero in finite field");
        let e = self.log[a as usize] as u64;
        self.exp[((self.q - 1 - e) % (self.q - 1)) as usize]
    }

    pub fn div(&self, a: u32, b: u32) -> u32 {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let le = self.log[a as usize] as u64;
        self.exp[((le % (self.q - 1)) * (e % (self.q - 1)) % (self.q - 1)) as usize]
    }

    pub fn element_order(&self, a: u32) -> u64 {
        assert!(a != 0);
        let e = self.log[a as usize] as u64;
        (self.q - 1) / num_integer::gcd(e, self.q - 1)
    }

    /// Evaluates a polynomial with prime-field coefficients at `x`.
    pub fn eval_prime_poly(&self, coeffs: &[u64], x: u32) -> u32 {
        let mut acc = 0u32;
        for &c in coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), (c % self.p) as u32);
        }
        acc
    }

    /// Roots in this field of a polynomial with prime-field coefficients.
    pub fn prime_poly_roots(&self, coeffs: &[u64]) -> Vec<u32> {
        (0..self.q as u32)
            .filter(|&x| self.eval_prime_poly(coeffs, x) == 0)
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    #[test]
    fn prime_field() {
        let f7 = FiniteField::new(7, 1).unwrap();
        assert_eq!(f7.q(), 7);
        assert_eq!(f7.mul(3, 5), 1);
        assert_eq!(f7.element_order(f7.generator()), 6);
    }

    #[test]
    fn f9_uses_first_irreducible() {
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(f9.q(), 9);
        // x^2 + 1 is the lexicographically first irreducible over F_3
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        assert_eq!(f9.element_order(f9.generator()), 8);
    }

    #[test]
    fn f32_and_inverse_sampling() {
        let f = FiniteField::new(2, 5).unwrap();
        assert_eq!(f.q(), 32);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        for _ in 0..1000 {
            let a = rng.gen_range(1..f.q()) as u32;
            assert_eq!(f.mul(a, f.inv(a)), 1);
        }
        assert_eq!(f.element_order(f.generator()), 31);
    }

    #[test]
    fn distributivity_spot_check() {
        let f = FiniteField::new(7, 3).unwrap();
        assert_eq!(f.q(), 343);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..500 {
            let a = rng.gen_range(0..f.q()) as u32;
            let b = rng.gen_range(0..f.q()) as u32;
            let c = rng.gen_range(0..f.q()) as u32;
            assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = FiniteField::new(2, 6).unwrap();
        for a in 0..f.q() as u32 {
            for b in 0..f.q() as u32 {
                if (a + b) % 13 != 0 {
                    continue; // thin the grid
                }
                assert_eq!(f.pow(f.add(a, b), 2), f.add(f.pow(a, 2), f.pow(b, 2)));
            }
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(FiniteField::new(6, 1).is_err());
        assert!(FiniteField::new(2, 25).is_err());
    }
}
