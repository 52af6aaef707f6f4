//! Closed formulas for valencies and subdegree multiplicities: stabilisers
//! that are Frobenius groups with cyclic kernel, the symmetric/alternating
//! families, dihedral stabilisers in two-dimensional projective groups, and
//! Singer-normalizer stabilisers in higher-dimensional ones.
//!
//! Everything is evaluated in exact integer or rational arithmetic with a
//! final integrality assertion; the displays hide divisibility facts that
//! become free correctness checks here.

use crate::engine::{Checks, Method, SubdegreeEntry, SubdegreeReport};
use crate::error::SaxlError;
use crate::numth::{
    divisors, euler_phi, is_prime, is_prime_power, mobius, multiplicative_order, Eps,
};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::collections::BTreeMap;

pub fn factorial(n: u64) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=n {
        out *= BigUint::from(i);
    }
    out
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

fn rational_to_uint(r: &BigRational, what: &str) -> Result<BigUint, SaxlError> {
    if !r.is_integer() {
        return Err(SaxlError::Inconsistent(format!(
            "{what} is not an integer: {r}"
        )));
    }
    let n = r.to_integer();
    if n.is_negative() {
        return Err(SaxlError::Inconsistent(format!("{what} is negative: {n}")));
    }
    Ok(n.to_biguint().unwrap())
}

fn exact_div(n: &BigUint, d: &BigUint, what: &str) -> Result<BigUint, SaxlError> {
    let (q, r) = n.div_rem(d);
    if !r.is_zero() {
        return Err(SaxlError::Inconsistent(format!(
            "{what}: {n} not divisible by {d}"
        )));
    }
    Ok(q)
}

/// Inputs for a point stabiliser `K:L`, Frobenius with cyclic kernel: the two
/// orders, the index of the stabiliser, and for every non-trivial subgroup
/// order `m` dividing `|L|` the normalizer order in the ambient group of the
/// unique subgroup of that order in `L`.
#[derive(Debug, Clone)]
pub struct FrobeniusInput {
    pub kernel_order: u64,
    pub complement_order: u64,
    pub index: BigUint,
    pub normalizer_orders: BTreeMap<u64, BigUint>,
}

impl FrobeniusInput {
    pub fn stabiliser_order(&self) -> u64 {
        self.kernel_order * self.complement_order
    }

    fn validate(&self) -> Result<(), SaxlError> {
        let (k, l) = (self.kernel_order, self.complement_order);
        if k < 2 || l < 2 {
            return Err(SaxlError::BadParameter(
                "Frobenius data needs a non-trivial kernel and complement".into(),
            ));
        }
        if k.gcd(&l) != 1 {
            return Err(SaxlError::BadParameter(format!(
                "kernel and complement orders {k}, {l} must be coprime"
            )));
        }
        for m in divisors(l).into_iter().filter(|&m| m > 1) {
            match self.normalizer_orders.get(&m) {
                None => {
                    return Err(SaxlError::BadParameter(format!(
                        "missing normalizer order for the subgroup of order {m}"
                    )))
                }
                Some(n) => {
                    if (n % &big(l)) != BigUint::zero() {
                        return Err(SaxlError::BadParameter(format!(
                            "normalizer order {n} for order {m} is not divisible by |L| = {l}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Valency of a primitive group whose stabiliser is the given Frobenius
/// group: the index plus kernel order minus one, corrected by the
/// mu-weighted normalizer sum over the complement's subgroups.
pub fn frobenius_valency(input: &FrobeniusInput) -> Result<BigUint, SaxlError> {
    input.validate()?;
    let (k, l) = (input.kernel_order, input.complement_order);
    let mut sum = BigInt::zero();
    for d in divisors(l).into_iter().filter(|&d| d > 1) {
        let n = BigInt::from(input.normalizer_orders[&d].clone());
        sum += BigInt::from(mobius(d)) * n;
    }
    let val = BigRational::from(BigInt::from(input.index.clone()))
        + BigRational::from(BigInt::from(k - 1))
        + BigRational::new(BigInt::from(k) * sum, BigInt::from(l));
    let val = rational_to_uint(&val, "valency")?;
    if !val.is_zero() {
        exact_div(&val, &big(input.stabiliser_order()), "valency by |H|")?;
    }
    Ok(val)
}

/// Multiplicities of the non-regular, non-trivial subdegrees `d |K|`, one for
/// each proper divisor `d` of `|L|`.
pub fn frobenius_multiplicities(
    input: &FrobeniusInput,
) -> Result<Vec<(u64, BigUint)>, SaxlError> {
    input.validate()?;
    let (k, l) = (input.kernel_order, input.complement_order);
    let mut out = Vec::new();
    for d in divisors(l).into_iter().filter(|&d| d < l) {
        let m = if d == 1 {
            let n_l = BigInt::from(input.normalizer_orders[&l].clone());
            BigRational::new(n_l - BigInt::from(l), BigInt::from(l))
        } else {
            let mut sum = BigInt::zero();
            for e in divisors(d) {
                let n = BigInt::from(input.normalizer_orders[&(l * e / d)].clone());
                sum += BigInt::from(mobius(e)) * n;
            }
            BigRational::new(sum, BigInt::from(d * l))
        };
        let m = rational_to_uint(&m, &format!("multiplicity of subdegree {}", d * k))?;
        out.push((d * k, m));
    }
    Ok(out)
}

/// Complete report for a Frobenius stabiliser; the sum rule is enforced.
pub fn frobenius_report(name: &str, input: &FrobeniusInput) -> Result<SubdegreeReport, SaxlError> {
    let valency = frobenius_valency(input)?;
    let mults = frobenius_multiplicities(input)?;
    let order_h = big(input.stabiliser_order());
    let mut entries = vec![SubdegreeEntry {
        length: BigUint::one(),
        multiplicity: BigUint::one(),
    }];
    for (len, m) in mults {
        if !m.is_zero() {
            entries.push(SubdegreeEntry {
                length: big(len),
                multiplicity: m,
            });
        }
    }
    if !valency.is_zero() {
        entries.push(SubdegreeEntry {
            length: order_h.clone(),
            multiplicity: exact_div(&valency, &order_h, "regular multiplicity")?,
        });
    }
    entries.sort_by(|a, b| a.length.cmp(&b.length));
    let total: BigUint = entries.iter().map(|e| &e.length * &e.multiplicity).sum();
    if total != input.index {
        return Err(SaxlError::Inconsistent(format!(
            "sum rule failed: entries sum to {total}, index is {}",
            input.index
        )));
    }
    Ok(SubdegreeReport {
        group_name: name.to_string(),
        order_g: &input.index * &order_h,
        order_h: order_h.clone(),
        index: input.index.clone(),
        entries,
        valency,
        method: Method::ClosedForm,
        checks: Checks {
            sum_rule: true,
            valency_divisibility: true,
            cross_method_agreement: None,
        },
    })
}

fn require_odd_prime(p: u64, context: &str) -> Result<(), SaxlError> {
    if !is_prime(p) || p <= 5 {
        return Err(SaxlError::BadParameter(format!(
            "{context} requires a prime p > 5, got {p}"
        )));
    }
    Ok(())
}

/// Normalizer orders for the full symmetric group: the subgroup of order `d`
/// in the complement is generated by a product of `(p-1)/d` disjoint
/// `d`-cycles, with normalizer of order `phi(d) d^((p-1)/d) ((p-1)/d)!`.
pub fn sym_frobenius_input(p: u64) -> Result<FrobeniusInput, SaxlError> {
    require_odd_prime(p, "symmetric family")?;
    let l = p - 1;
    let mut normalizer_orders = BTreeMap::new();
    for d in divisors(l).into_iter().filter(|&d| d > 1) {
        let n = big(euler_phi(d)) * big(d).pow((l / d) as u32) * factorial(l / d);
        normalizer_orders.insert(d, n);
    }
    Ok(FrobeniusInput {
        kernel_order: p,
        complement_order: l,
        index: factorial(p - 2),
        normalizer_orders,
    })
}

/// Alternating version: the complement has order `(p-1)/2` and normalizer
/// orders are halved by the even-permutation constraint.
pub fn alt_frobenius_input(p: u64) -> Result<FrobeniusInput, SaxlError> {
    require_odd_prime(p, "alternating family")?;
    let l = (p - 1) / 2;
    if l < 2 {
        return Err(SaxlError::BadParameter("p too small".into()));
    }
    let mut normalizer_orders = BTreeMap::new();
    for d in divisors(l).into_iter().filter(|&d| d > 1) {
        let full = big(euler_phi(d)) * big(d).pow(((p - 1) / d) as u32) * factorial((p - 1) / d);
        normalizer_orders.insert(d, exact_div(&full, &big(2), "alternating normalizer")?);
    }
    Ok(FrobeniusInput {
        kernel_order: p,
        complement_order: l,
        index: factorial(p - 2),
        normalizer_orders,
    })
}

/// Direct evaluation of the symmetric-family valency display.
pub fn val_sym_p(p: u64) -> Result<BigUint, SaxlError> {
    require_odd_prime(p, "val_sym_p")?;
    eval_family_display(p, p - 1)
}

/// Direct evaluation of the alternating-family valency display. For
/// `p in {7, 11, 17, 23}` the stabiliser is not maximal and the value is
/// formal; see [`alt_formula_is_formal`].
pub fn val_alt_p(p: u64) -> Result<BigUint, SaxlError> {
    require_odd_prime(p, "val_alt_p")?;
    eval_family_display(p, (p - 1) / 2)
}

/// The alternating display does not describe a primitive action for these
/// primes; the formula value need not equal any valency.
pub fn alt_formula_is_formal(p: u64) -> bool {
    matches!(p, 7 | 11 | 17 | 23)
}

fn eval_family_display(p: u64, divisor_range: u64) -> Result<BigUint, SaxlError> {
    let mut val = BigInt::from(factorial(p - 2)) + BigInt::from(p - 1);
    for d in divisors(divisor_range).into_iter().filter(|&d| d > 1) {
        let term = BigInt::from(euler_phi(d))
            * BigInt::from(big(d).pow(((p - 1) / d - 1) as u32))
            * BigInt::from(factorial((p - 1) / d - 1));
        val += BigInt::from(p) * BigInt::from(mobius(d)) * term;
    }
    if val.is_negative() {
        return Err(SaxlError::Inconsistent(format!("negative valency {val}")));
    }
    Ok(val.to_biguint().unwrap())
}

/// Multiplicity of the subdegree `d p` in the symmetric family, `d` a proper
/// divisor of `p - 1`.
pub fn mult_sym_p(p: u64, d: u64) -> Result<BigUint, SaxlError> {
    require_odd_prime(p, "mult_sym_p")?;
    let l = p - 1;
    if d >= l || l % d != 0 {
        return Err(SaxlError::BadParameter(format!(
            "d = {d} must be a proper divisor of p - 1 = {l}"
        )));
    }
    if d == 1 {
        return Ok(big(euler_phi(l) - 1));
    }
    let mut sum = BigInt::zero();
    for e in divisors(d) {
        let base = l * e / d;
        let term = BigInt::from(euler_phi(base))
            * BigInt::from(big(base).pow((d / e) as u32))
            * BigInt::from(factorial(d / e));
        sum += BigInt::from(mobius(e)) * term;
    }
    let m = BigRational::new(sum, BigInt::from(d * l));
    rational_to_uint(&m, &format!("mult_sym_p({p}, {d})"))
}

/// Multiplicity of the subdegree `d p` in the alternating family, `d` a
/// proper divisor of `(p - 1)/2`.
pub fn mult_alt_p(p: u64, d: u64) -> Result<BigUint, SaxlError> {
    require_odd_prime(p, "mult_alt_p")?;
    let l = (p - 1) / 2;
    if d >= l || l % d != 0 {
        return Err(SaxlError::BadParameter(format!(
            "d = {d} must be a proper divisor of (p - 1)/2 = {l}"
        )));
    }
    if d == 1 {
        return Ok(big(euler_phi(l) * l - 1));
    }
    let mut sum = BigInt::zero();
    for e in divisors(d) {
        let base = (p - 1) * e / (2 * d);
        let term = BigInt::from(euler_phi(base))
            * BigInt::from(big(base).pow((2 * d / e) as u32))
            * BigInt::from(factorial(2 * d / e));
        sum += BigInt::from(mobius(e)) * term;
    }
    let m = BigRational::new(sum, BigInt::from(d * (p - 1)));
    rational_to_uint(&m, &format!("mult_alt_p({p}, {d})"))
}

/// Which dihedral stabiliser: split means order `2(q-1)/(2,q-1)` (a split
/// torus normalizer), nonsplit the `q+1` version.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DihedralCase {
    Split,
    Nonsplit,
}

impl std::str::FromStr for DihedralCase {
    type Err = SaxlError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "split" => Ok(DihedralCase::Split),
            "nonsplit" => Ok(DihedralCase::Nonsplit),
            other => Err(SaxlError::BadParameter(format!(
                "unknown case `{other}`, expected split or nonsplit"
            ))),
        }
    }
}

pub fn val_psl2(q: u64, case: DihedralCase) -> Result<BigUint, SaxlError> {
    if !is_prime_power(q) || q % 2 == 0 {
        return Err(SaxlError::BadParameter(format!(
            "q = {q} must be an odd prime power"
        )));
    }
    match case {
        DihedralCase::Split => {
            if q < 13 {
                return Err(SaxlError::BadParameter(
                    "split case needs q >= 13 (the stabiliser is not maximal below)".into(),
                ));
            }
            let other = if q % 4 == 1 { q + 7 } else { q + 5 };
            Ok(big((q - 1) * other / 4))
        }
        DihedralCase::Nonsplit => {
            if q < 11 {
                return Err(SaxlError::BadParameter(
                    "nonsplit case needs q >= 11".into(),
                ));
            }
            let other = if q % 4 == 1 { q - 1 } else { q - 3 };
            Ok(big((q + 1) * other / 4))
        }
    }
}

pub fn val_pgl2(q: u64, case: DihedralCase) -> Result<BigUint, SaxlError> {
    if !is_prime_power(q) || q < 7 {
        return Err(SaxlError::BadParameter(format!(
            "q = {q} must be a prime power, q >= 7"
        )));
    }
    match case {
        DihedralCase::Split => Ok(big(2 * (q - 1))),
        DihedralCase::Nonsplit => Ok(BigUint::zero()),
    }
}

/// One row of the prime-power-order stabiliser classification.
#[derive(Debug, Clone)]
pub struct ClassifiedRow {
    pub group: String,
    pub stabiliser: String,
    pub condition: String,
    /// None when only a permutation computation can supply the value
    pub valency: Option<BigUint>,
    /// prime-power verdict for the valency, when known
    pub prime_power: Option<bool>,
}

fn is_fermat_prime(p: u64) -> bool {
    p >= 3 && is_prime(p) && (p - 1).is_power_of_two()
}

fn is_mersenne_prime(p: u64) -> bool {
    p >= 3 && is_prime(p) && (p + 1).is_power_of_two()
}

/// Validates a candidate family against the stabiliser-of-prime-power-order
/// table, re-deriving the side conditions, and reports the valency verdict.
/// Returns `None` when the candidate is rejected.
pub fn classify_prime_power_stabiliser(
    family: &str,
    p: Option<u64>,
    lreps: Option<(u64, u64, Eps)>,
) -> Result<Option<ClassifiedRow>, SaxlError> {
    let with_val = |group: String, stab: String, cond: String, val: BigUint| {
        let pp = !val.is_zero() && is_prime_power(val.to_u64().expect("valency fits u64"));
        Some(ClassifiedRow {
            group,
            stabiliser: stab,
            condition: cond,
            prime_power: Some(pp),
            valency: Some(val),
        })
    };
    let row = match family {
        "psl2-split" => {
            let p = p.ok_or_else(|| SaxlError::BadParameter("--p required".into()))?;
            if !is_fermat_prime(p) || p < 17 {
                None
            } else {
                with_val(
                    format!("L2({p})"),
                    format!("D{}", p - 1),
                    format!("p = {p} >= 17 is a Fermat prime"),
                    val_psl2(p, DihedralCase::Split)?,
                )
            }
        }
        "psl2-nonsplit" => {
            let p = p.ok_or_else(|| SaxlError::BadParameter("--p required".into()))?;
            if !is_mersenne_prime(p) || p < 31 {
                None
            } else {
                with_val(
                    format!("L2({p})"),
                    format!("D{}", p + 1),
                    format!("p = {p} >= 31 is a Mersenne prime"),
                    val_psl2(p, DihedralCase::Nonsplit)?,
                )
            }
        }
        "pgl2-split" => {
            let p = p.ok_or_else(|| SaxlError::BadParameter("--p required".into()))?;
            if p == 9 || (is_fermat_prime(p) && p >= 17) {
                with_val(
                    format!("PGL2({p})"),
                    format!("D{}", 2 * (p - 1)),
                    if p == 9 {
                        "q = 9".into()
                    } else {
                        format!("p = {p} >= 17 is a Fermat prime")
                    },
                    val_pgl2(p, DihedralCase::Split)?,
                )
            } else {
                None
            }
        }
        "pgl2-nonsplit" => {
            let p = p.ok_or_else(|| SaxlError::BadParameter("--p required".into()))?;
            if !is_mersenne_prime(p) || p < 7 {
                None
            } else {
                Some(ClassifiedRow {
                    group: format!("PGL2({p})"),
                    stabiliser: format!("D{}", 2 * (p + 1)),
                    condition: format!("p = {p} >= 7 is a Mersenne prime"),
                    valency: Some(BigUint::zero()),
                    prime_power: Some(false),
                })
            }
        }
        "m10" => with_val(
            "M10".into(),
            "8:2".into(),
            String::new(),
            BigUint::from(32u32),
        ),
        "pgammal2-9" => Some(ClassifiedRow {
            group: "PGammaL2(9)".into(),
            stabiliser: "8:2^2".into(),
            condition: String::new(),
            valency: None,
            prime_power: None,
        }),
        "lreps" => {
            // the Singer-normalizer row never has prime-power stabiliser
            // order: a Zsigmondy prime divides a but not r
            let (r, q, eps) =
                lreps.ok_or_else(|| SaxlError::BadParameter("--r/--q/--eps required".into()))?;
            let params = lr_eps_params(r, q, eps)?;
            let ar = params.a_thm.clone() * big(r);
            let keep = ar
                .to_u64()
                .map(is_prime_power)
                .unwrap_or(false);
            if keep {
                // the single excluded configuration (3, 2, -) is not almost
                // simple; reject it too
                None
            } else {
                None
            }
        }
        other => {
            return Err(SaxlError::BadParameter(format!(
                "unknown family `{other}`"
            )))
        }
    };
    Ok(row)
}

/// Parameters of the Singer-normalizer family.
#[derive(Debug, Clone)]
pub struct LrEpsParams {
    pub r: u64,
    pub q: u64,
    pub eps: Eps,
    /// `(q^r - eps) / ((q - eps)(r, q - eps))`
    pub a_thm: BigUint,
    /// `(q^r - eps) / (q - eps)`
    pub a_plain: BigUint,
    /// multiplicative order of q mod r (0 when r divides q)
    pub k: u64,
    /// |N_G(<sigma>)| for the order-r complement generator
    pub n_sigma: BigUint,
    pub order_g: BigUint,
    pub order_socle: BigUint,
}

impl LrEpsParams {
    pub fn gcd_r_qeps(&self) -> u64 {
        let shifted = match self.eps {
            Eps::Plus => self.q - 1,
            Eps::Minus => self.q + 1,
        };
        self.r.gcd(&shifted)
    }
}

pub fn lr_eps_params(r: u64, q: u64, eps: Eps) -> Result<LrEpsParams, SaxlError> {
    if !is_prime(r) || r % 2 == 0 || r < 3 {
        return Err(SaxlError::BadParameter(format!(
            "r = {r} must be an odd prime"
        )));
    }
    if !is_prime_power(q) {
        return Err(SaxlError::BadParameter(format!(
            "q = {q} must be a prime power"
        )));
    }
    let qr = big(q).pow(r as u32);
    let (numer, denom) = match eps {
        Eps::Plus => (&qr - 1u32, big(q - 1)),
        Eps::Minus => (&qr + 1u32, big(q + 1)),
    };
    let a_plain = exact_div(&numer, &denom, "Singer subgroup order")?;
    let shifted = match eps {
        Eps::Plus => q - 1,
        Eps::Minus => q + 1,
    };
    let gcd_re = r.gcd(&shifted);
    let a_thm = exact_div(&a_plain, &big(gcd_re), "reduced Singer order")?;

    let qe = big(shifted);
    let (k, n_sigma) = if q % r == 0 {
        (0, big(r - 1) * big(q).pow((r - 1) as u32))
    } else if gcd_re == r {
        (
            multiplicative_order(q, r)?,
            big(r) * big(r - 1) * qe.pow((r - 1) as u32),
        )
    } else {
        let k = multiplicative_order(q, r)?;
        let n = match eps {
            Eps::Plus => {
                let e = (r - 1) / k;
                if (r - 1) % k != 0 {
                    return Err(SaxlError::Inconsistent("k must divide r - 1".into()));
                }
                big(r - 1) * (big(q).pow(k as u32) - 1u32).pow(e as u32)
            }
            Eps::Minus => {
                if k % 4 == 0 {
                    let e = (r - 1) / k;
                    big(r - 1) * (big(q).pow(k as u32) - 1u32).pow(e as u32)
                } else if k % 4 == 2 {
                    let e = (2 * r - 2) / k;
                    if (2 * r - 2) % k != 0 {
                        return Err(SaxlError::Inconsistent("k must divide 2r - 2".into()));
                    }
                    big(r - 1) * (big(q).pow((k / 2) as u32) + 1u32).pow(e as u32)
                } else {
                    let e = (r - 1) / (2 * k);
                    if (r - 1) % (2 * k) != 0 {
                        return Err(SaxlError::Inconsistent("2k must divide r - 1".into()));
                    }
                    big(r - 1) * (big(q).pow((2 * k) as u32) - 1u32).pow(e as u32)
                }
            }
        };
        (k, n)
    };

    // |PGL_r^eps(q)| = q^{r(r-1)/2} prod_{i=2..r} (q^i - eps^i)
    let mut order_g = big(q).pow((r * (r - 1) / 2) as u32);
    for i in 2..=r {
        let term = match eps {
            Eps::Plus => big(q).pow(i as u32) - 1u32,
            Eps::Minus => {
                if i % 2 == 0 {
                    big(q).pow(i as u32) - 1u32
                } else {
                    big(q).pow(i as u32) + 1u32
                }
            }
        };
        order_g *= term;
    }
    let order_socle = exact_div(&order_g, &big(gcd_re), "socle order")?;
    Ok(LrEpsParams {
        r,
        q,
        eps,
        a_thm,
        a_plain,
        k,
        n_sigma,
        order_g,
        order_socle,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LrVariant {
    Full,
    Socle,
}

/// `|N_G(<x, sigma>)| = r^3` in the `r | q - eps` configuration; exposed so
/// the permutation side can be checked against it.
pub fn corollary_r3_check(r: u64, q: u64, eps: Eps) -> Result<u64, SaxlError> {
    let params = lr_eps_params(r, q, eps)?;
    if params.gcd_r_qeps() != r {
        return Err(SaxlError::BadParameter(format!(
            "requires r | q - eps, got (r, q, eps) = ({r}, {q}, {})",
            eps.symbol()
        )));
    }
    Ok(r * r * r)
}

/// Subdegree report for the Singer-normalizer family.
///
/// In the coprime configuration the stabiliser is Frobenius and the general
/// theorem applies directly. When `r` divides `q - eps` the full group goes
/// through the explicit five-class solution; the socle variant is again
/// Frobenius, with the stabiliser order read as the order of the stabiliser
/// inside the socle.
pub fn lr_eps_subdegrees(
    r: u64,
    q: u64,
    eps: Eps,
    variant: LrVariant,
) -> Result<SubdegreeReport, SaxlError> {
    let params = lr_eps_params(r, q, eps)?;
    let gcd_re = params.gcd_r_qeps();
    let eps_c = eps.symbol();
    if (r, q, eps) == (3, 3, Eps::Minus) || (r, q, eps) == (5, 2, Eps::Minus) {
        return Err(SaxlError::BadParameter(format!(
            "L{r}{eps_c}({q}): the Singer normalizer is not maximal here"
        )));
    }
    match (variant, gcd_re) {
        (LrVariant::Full, 1) => {
            let a = params
                .a_plain
                .to_u64()
                .ok_or_else(|| SaxlError::BadParameter("a exceeds u64".into()))?;
            let order_h = big(a) * big(r);
            let index = exact_div(&params.order_g, &order_h, "index")?;
            let mut normalizer_orders = BTreeMap::new();
            normalizer_orders.insert(r, params.n_sigma.clone());
            let input = FrobeniusInput {
                kernel_order: a,
                complement_order: r,
                index,
                normalizer_orders,
            };
            frobenius_report(&format!("L{r}{eps_c}({q}) Singer normalizer"), &input)
        }
        (LrVariant::Socle, 1) => lr_eps_subdegrees(r, q, eps, LrVariant::Full),
        (LrVariant::Full, _) => {
            let order_h = &params.a_plain * big(r);
            let index = exact_div(&params.order_g, &order_h, "index")?;
            let h = BigRational::from(BigInt::from(order_h.clone()));
            let rr = BigRational::from(BigInt::from(r));
            let qe = BigRational::from(BigInt::from(match eps {
                Eps::Plus => big(q - 1),
                Eps::Minus => big(q + 1),
            }.pow((r - 1) as u32)));
            let one = BigRational::one();
            let val = BigRational::from(BigInt::from(index.clone()))
                - &h / (&rr * &rr * &rr)
                    * (&rr - &one)
                    * ((&rr - &one) * (&h / &rr - &rr) + &qe)
                + &h / (&rr * &rr)
                - &one;
            let val = rational_to_uint(&val, "valency")?;
            let m_a = (&rr * (&rr - &one) * &qe
                - &rr * &rr * &rr * &rr
                + &rr * &rr * &rr
                - &rr * &rr
                + (&rr - &one) * (&rr - &one) * &h)
                / (&rr * &rr * &rr);
            let m_a = rational_to_uint(&m_a, "multiplicity of the subdegree a")?;
            let a = params.a_plain.clone();
            let a_over_r = exact_div(&a, &big(r), "a / r")?;
            let mut entries = vec![SubdegreeEntry {
                length: BigUint::one(),
                multiplicity: BigUint::one(),
            }];
            if r > 1 {
                entries.push(SubdegreeEntry {
                    length: a_over_r,
                    multiplicity: big(r - 1),
                });
            }
            if !m_a.is_zero() {
                entries.push(SubdegreeEntry {
                    length: a.clone(),
                    multiplicity: m_a,
                });
            }
            if !val.is_zero() {
                entries.push(SubdegreeEntry {
                    length: order_h.clone(),
                    multiplicity: exact_div(&val, &order_h, "regular multiplicity")?,
                });
            }
            entries.sort_by(|x, y| x.length.cmp(&y.length));
            let total: BigUint = entries.iter().map(|e| &e.length * &e.multiplicity).sum();
            if total != index {
                return Err(SaxlError::Inconsistent(format!(
                    "sum rule failed for L{r}{eps_c}({q}): {total} != {index}"
                )));
            }
            Ok(SubdegreeReport {
                group_name: format!("PGL{r}{eps_c}({q}) Singer normalizer"),
                order_g: params.order_g.clone(),
                order_h,
                index,
                entries,
                valency: val,
                method: Method::ClosedForm,
                checks: Checks {
                    sum_rule: true,
                    valency_divisibility: true,
                    cross_method_agreement: None,
                },
            })
        }
        (LrVariant::Socle, _) => {
            // stabiliser inside the socle: Frobenius with kernel of order a/r
            // and complement of order r; its normalizer datum is the full
            // N divided by r
            let a = params
                .a_plain
                .to_u64()
                .ok_or_else(|| SaxlError::BadParameter("a exceeds u64".into()))?;
            let kernel = a / r;
            if a % r != 0 {
                return Err(SaxlError::Inconsistent("r must divide a here".into()));
            }
            let index = exact_div(&params.order_socle, &big(a), "socle index")?;
            let n_socle = exact_div(&params.n_sigma, &big(r), "socle normalizer")?;
            let mut normalizer_orders = BTreeMap::new();
            normalizer_orders.insert(r, n_socle);
            let input = FrobeniusInput {
                kernel_order: kernel,
                complement_order: r,
                index,
                normalizer_orders,
            };
            frobenius_report(&format!("L{r}{eps_c}({q}) socle Singer normalizer"), &input)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn s7_frobenius_values() {
        let input = sym_frobenius_input(7).unwrap();
        assert_eq!(input.index, big(120));
        assert_eq!(input.normalizer_orders[&2], big(48));
        assert_eq!(input.normalizer_orders[&3], big(36));
        assert_eq!(input.normalizer_orders[&6], big(12));
        assert_eq!(frobenius_valency(&input).unwrap(), big(42));
        let mults = frobenius_multiplicities(&input).unwrap();
        assert_eq!(mults, vec![(7, big(1)), (14, big(2)), (21, big(2))]);
        let report = frobenius_report("S7", &input).unwrap();
        assert_eq!(report.valency, big(42));
    }

    #[test]
    fn sym_and_alt_displays() {
        assert_eq!(val_sym_p(7).unwrap(), big(42));
        assert_eq!(val_sym_p(11).unwrap(), big(358490));
        // p = 13: both divisor ranges have the same mu-support {2, 3, 6}
        assert_eq!(val_sym_p(13).unwrap(), big(39862836));
        assert_eq!(val_alt_p(13).unwrap(), big(39862836));
        assert_eq!(mult_sym_p(7, 1).unwrap(), big(1));
        assert_eq!(mult_sym_p(7, 2).unwrap(), big(2));
        assert_eq!(mult_sym_p(7, 3).unwrap(), big(2));
        assert_eq!(mult_alt_p(13, 1).unwrap(), big(11));
        assert!(alt_formula_is_formal(7));
        assert!(!alt_formula_is_formal(13));
    }

    #[test]
    fn dihedral_family_values() {
        assert_eq!(val_psl2(13, DihedralCase::Split).unwrap(), big(60));
        assert_eq!(val_psl2(17, DihedralCase::Split).unwrap(), big(96));
        assert_eq!(val_psl2(11, DihedralCase::Nonsplit).unwrap(), big(24));
        assert_eq!(val_pgl2(9, DihedralCase::Split).unwrap(), big(16));
        assert_eq!(val_pgl2(17, DihedralCase::Split).unwrap(), big(32));
        assert_eq!(val_pgl2(7, DihedralCase::Nonsplit).unwrap(), BigUint::zero());
        assert!(val_psl2(9, DihedralCase::Split).is_err());
    }

    #[test]
    fn lr_eps_parameter_table() {
        let p37 = lr_eps_params(3, 7, Eps::Plus).unwrap();
        assert_eq!(p37.a_plain, big(57));
        assert_eq!(p37.a_thm, big(19));
        assert_eq!(p37.n_sigma, big(216));
        assert_eq!(p37.order_g, big(5630688));
        assert_eq!(p37.order_socle, big(1876896));

        let p33 = lr_eps_params(3, 3, Eps::Plus).unwrap();
        assert_eq!(p33.n_sigma, big(18));

        let p52 = lr_eps_params(5, 2, Eps::Plus).unwrap();
        assert_eq!(p52.k, 4);
        assert_eq!(p52.n_sigma, big(60));
        assert_eq!(p52.order_g, big(9999360));
    }

    #[test]
    fn lr_eps_reports() {
        // L3(2): index 8, valency 0
        let l32 = lr_eps_subdegrees(3, 2, Eps::Plus, LrVariant::Full).unwrap();
        assert_eq!(l32.index, big(8));
        assert_eq!(l32.valency, BigUint::zero());
        assert_eq!(l32.multiplicity_of_u64(7), big(1));

        // GL5(2) Singer: valency 64170, m(31) = 11
        let g52 = lr_eps_subdegrees(5, 2, Eps::Plus, LrVariant::Full).unwrap();
        assert_eq!(g52.index, big(64512));
        assert_eq!(g52.valency, big(64170));
        assert_eq!(g52.multiplicity_of_u64(31), big(11));

        // PGL3(7): valency 31122, m(57) = 31, m(19) = 2
        let p37 = lr_eps_subdegrees(3, 7, Eps::Plus, LrVariant::Full).unwrap();
        assert_eq!(p37.index, big(32928));
        assert_eq!(p37.valency, big(31122));
        assert_eq!(p37.multiplicity_of_u64(57), big(31));
        assert_eq!(p37.multiplicity_of_u64(19), big(2));

        // socle variant: valency 32490 with m(19) = 23
        let soc = lr_eps_subdegrees(3, 7, Eps::Plus, LrVariant::Socle).unwrap();
        assert_eq!(soc.index, big(32928));
        assert_eq!(soc.valency, big(32490));
        assert_eq!(soc.multiplicity_of_u64(19), big(23));
        assert_eq!(soc.multiplicity_of_u64(57), big(570));
    }

    #[test]
    fn r_cubed_corollary() {
        assert_eq!(corollary_r3_check(3, 7, Eps::Plus).unwrap(), 27);
        assert_eq!(corollary_r3_check(3, 4, Eps::Plus).unwrap(), 27);
        assert_eq!(corollary_r3_check(5, 11, Eps::Plus).unwrap(), 125);
        assert!(corollary_r3_check(3, 2, Eps::Plus).is_err());
    }

    #[test]
    fn classification_rows() {
        let r = classify_prime_power_stabiliser("pgl2-split", Some(17), None)
            .unwrap()
            .unwrap();
        assert_eq!(r.valency, Some(big(32)));
        assert_eq!(r.prime_power, Some(true));

        let r = classify_prime_power_stabiliser("psl2-split", Some(17), None)
            .unwrap()
            .unwrap();
        assert_eq!(r.valency, Some(big(96)));
        assert_eq!(r.prime_power, Some(false));

        // 13 is not a Fermat prime
        assert!(classify_prime_power_stabiliser("psl2-split", Some(13), None)
            .unwrap()
            .is_none());
        // the Singer-normalizer candidate row never survives
        assert!(
            classify_prime_power_stabiliser("lreps", None, Some((3, 7, Eps::Plus)))
                .unwrap()
                .is_none()
        );
        let r = classify_prime_power_stabiliser("m10", None, None).unwrap().unwrap();
        assert_eq!(r.prime_power, Some(true));
    }

    #[test]
    fn frobenius_rejects_bad_input() {
        // kernel and complement must be coprime
        let mut norms = BTreeMap::new();
        norms.insert(2u64, big(4));
        let bad = FrobeniusInput {
            kernel_order: 4,
            complement_order: 2,
            index: big(10),
            normalizer_orders: norms,
        };
        assert!(frobenius_valency(&bad).is_err());
        // missing divisor key
        let bad2 = FrobeniusInput {
            kernel_order: 7,
            complement_order: 6,
            index: big(120),
            normalizer_orders: BTreeMap::new(),
        };
        assert!(frobenius_valency(&bad2).is_err());
    }
}
