//! Exact arithmetic in the cyclotomic field `Q(zeta_m)`.
//!
//! Elements are stored in the power basis `1, zeta, ..., zeta^(phi(m)-1)`,
//! always reduced modulo the `m`-th cyclotomic polynomial.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Integer polynomial, coefficients from the constant term upwards.
pub type IntPoly = Vec<BigInt>;

/// The field `Q(zeta_m)` together with its reduction data.
#[derive(Debug)]
pub struct CycloField {
    conductor: u32,
    modulus: IntPoly,
    /// `powers[k]` is `zeta^k` in the power basis, for `0 <= k < m`.
    powers: Vec<Vec<BigRational>>,
}

impl CycloField {
    pub fn new(conductor: u32) -> Arc<Self> {
        assert!(conductor >= 1, "conductor must be positive");
        let modulus = cyclotomic_polynomial(conductor);
        let degree = modulus.len() - 1;
        let mut powers = Vec::with_capacity(conductor as usize);
        let mut current = vec![BigRational::zero(); degree];
        current[0] = BigRational::one();
        for _ in 0..conductor {
            powers.push(current.clone());
            // multiply by x, then eliminate x^degree with the monic modulus
            let top = current[degree - 1].clone();
            for i in (1..degree).rev() {
                current[i] = current[i - 1].clone();
            }
            current[0] = BigRational::zero();
            if !top.is_zero() {
                for (i, c) in modulus.iter().take(degree).enumerate() {
                    current[i] -= &top * BigRational::from_integer(c.clone());
                }
            }
        }
        Arc::new(CycloField {
            conductor,
            modulus,
            powers,
        })
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// `phi(m)`, the dimension over `Q`.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }
}

impl PartialEq for CycloField {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor
    }
}

impl Eq for CycloField {}

/// `Phi_m`, obtained by exact division of `x^m - 1` by `Phi_d` for the
/// proper divisors `d` of `m`.
pub fn cyclotomic_polynomial(m: u32) -> IntPoly {
    let mut table: Vec<(u32, IntPoly)> = Vec::new();
    for d in 1..=m {
        if !m.is_multiple_of(d) {
            continue;
        }
        let mut num = x_pow_minus_one(d);
        for (e, phi_e) in &table {
            if d % e == 0 && *e < d {
                num = exact_div_monic(&num, phi_e);
            }
        }
        table.push((d, num));
    }
    table.pop().map(|(_, p)| p).expect("m >= 1 has itself as divisor")
}

/// `x^m - 1` as an integer polynomial.
pub fn x_pow_minus_one(m: u32) -> IntPoly {
    let mut p = vec![BigInt::zero(); m as usize + 1];
    p[0] = -BigInt::one();
    p[m as usize] = BigInt::one();
    p
}

fn exact_div_monic(num: &IntPoly, den: &IntPoly) -> IntPoly {
    let dn = den.len() - 1;
    debug_assert!(den[dn].is_one());
    let mut rem = num.clone();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for k in (0..qlen).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division was not exact");
    quot
}

/// Integer polynomial product, trailing zeros trimmed.
pub fn int_poly_mul(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    while out.len() > 1 && out.last().is_some_and(Zero::is_zero) {
        out.pop();
    }
    out
}

/// An element of `Q(zeta_m)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl Cyclotomic {
    pub fn zero(field: &Arc<CycloField>) -> Self {
        Cyclotomic {
            field: field.clone(),
            coeffs: vec![BigRational::zero(); field.degree()],
        }
    }

    pub fn from_rational(field: &Arc<CycloField>, r: BigRational) -> Self {
        let mut z = Self::zero(field);
        z.coeffs[0] = r;
        z
    }

    pub fn from_integer(field: &Arc<CycloField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn one(field: &Arc<CycloField>) -> Self {
        Self::from_integer(field, 1)
    }

    /// `zeta_m^k` for any integer `k`.
    pub fn root_of_unity(field: &Arc<CycloField>, k: i64) -> Self {
        let m = field.conductor as i64;
        let idx = k.mod_floor(&m) as usize;
        Cyclotomic {
            field: field.clone(),
            coeffs: field.powers[idx].clone(),
        }
    }

    /// Builds an element from (possibly unreduced) power-basis coefficients.
    pub fn from_power_coeffs(field: &Arc<CycloField>, raw: &[BigRational]) -> Self {
        let mut z = Self::zero(field);
        let m = field.conductor as usize;
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in field.powers[k % m].iter().enumerate() {
                if !p.is_zero() {
                    z.coeffs[i] += c * p;
                }
            }
        }
        z
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    /// Number of nonzero power-basis coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    fn same_field(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) || self.field.conductor == other.field.conductor
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "conductor mismatch");
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "conductor mismatch");
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert!(self.same_field(other), "conductor mismatch");
        let m = self.field.conductor as usize;
        let deg = self.field.degree();
        if let Some(r) = other.as_rational() {
            return self.scale(r);
        }
        if let Some(r) = self.as_rational() {
            return other.scale(r);
        }
        // collect into exponents mod m, then reduce once per exponent
        let mut raw = vec![BigRational::zero(); m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[(i + j) % m] += a * b;
            }
        }
        let mut out = vec![BigRational::zero(); deg];
        for (k, c) in raw.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (i, p) in self.field.powers[k].iter().enumerate() {
                if !p.is_zero() {
                    out[i] += c * p;
                }
            }
        }
        Cyclotomic {
            field: self.field.clone(),
            coeffs: out,
        }
    }

    pub fn scale(&self, r: &BigRational) -> Self {
        Cyclotomic {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in
    /// `Q[x]` modulo `Phi_m`. Returns `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(r) = self.as_rational() {
            return Some(Self::from_rational(&self.field, r.recip()));
        }
        let modulus: Vec<BigRational> = self
            .field
            .modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let (g, s) = rat_poly_ext_gcd(&trim(self.coeffs.clone()), &modulus);
        // g is a nonzero constant since Phi_m is irreducible
        debug_assert_eq!(g.len(), 1);
        let c = g[0].recip();
        let s: Vec<BigRational> = s.into_iter().map(|a| a * &c).collect();
        Some(Self::from_power_coeffs(&self.field, &s))
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Self::one(&self.field);
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    /// `ζ_m^k` if this element equals some root of unity of order dividing `m`.
    pub fn root_exponent(&self) -> Option<u32> {
        (0..self.field.conductor)
            .find(|&k| self.coeffs == self.field.powers[k as usize])
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn rat_poly_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    let mut rem = trim(a.to_vec());
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() >= b.len() && !(rem.len() == 1 && rem[0].is_zero()) {
        let k = rem.len() - 1 - db;
        let c = rem.last().unwrap() / &lead;
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        quot[k] = c;
        rem.pop();
        if rem.is_empty() {
            rem.push(BigRational::zero());
            break;
        }
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn rat_poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn rat_poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Returns `(g, s)` with `s*a ≡ g (mod b)`, `g = gcd(a, b)`.
fn rat_poly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = trim(a.to_vec());
    let mut r1 = trim(b.to_vec());
    let mut s0 = vec![BigRational::one()];
    let mut s1 = vec![BigRational::zero()];
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = rat_poly_divrem(&r0, &r1);
        let s2 = rat_poly_sub(&s0, &rat_poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coeffs == other.coeffs
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

pub(crate) fn fmt_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Cyclotomic {
    /// Power-basis form, e.g. `-1 - zeta(3)` or `1/2*zeta(4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = self.field.conductor;
        let mut parts: Vec<String> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let root = match k {
                0 => String::new(),
                1 => format!("zeta({m})"),
                _ => format!("zeta({m})^{k}"),
            };
            let s = if root.is_empty() {
                fmt_rational(c)
            } else if c.is_one() {
                root
            } else if (-c).is_one() {
                format!("-{root}")
            } else {
                format!("{}*{root}", fmt_rational(c))
            };
            parts.push(s);
        }
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", join_signed(&parts))
    }
}

/// Joins already-signed summands with ` + ` / ` - `.
pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(m: u32) -> Arc<CycloField> {
        CycloField::new(m)
    }

    #[test]
    fn cyclotomic_polynomials_multiply_to_x_pow_m_minus_one() {
        for m in 1..=24u32 {
            let mut prod: IntPoly = vec![BigInt::one()];
            for d in (1..=m).filter(|d| m % d == 0) {
                prod = int_poly_mul(&prod, &cyclotomic_polynomial(d));
            }
            assert_eq!(prod, x_pow_minus_one(m), "m = {m}");
        }
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn zeta4_squared_is_minus_one() {
        let f = field(4);
        let z = Cyclotomic::root_of_unity(&f, 1);
        assert_eq!(z.mul(&z), Cyclotomic::from_integer(&f, -1));
    }

    #[test]
    fn zeta3_squared_reduces() {
        let f = field(3);
        let z = Cyclotomic::root_of_unity(&f, 1);
        let expected = Cyclotomic::from_integer(&f, -1).sub(&z);
        assert_eq!(z.mul(&z), expected);
        assert_eq!(z.mul(&z).to_string(), "-1 - zeta(3)");
    }

    #[test]
    fn root_of_unity_inverse() {
        for m in [2u32, 3, 4, 5, 6, 8, 12] {
            let f = field(m);
            for k in 0..m as i64 {
                let z = Cyclotomic::root_of_unity(&f, k);
                assert_eq!(z.inv().unwrap(), Cyclotomic::root_of_unity(&f, m as i64 - k));
            }
        }
    }

    /// Inverse through the norm: the product of all nontrivial Galois
    /// conjugates divided by the (rational) norm.
    fn norm_inverse(a: &Cyclotomic) -> Cyclotomic {
        let f = a.field().clone();
        let m = f.conductor() as i64;
        let mut prod = Cyclotomic::one(&f);
        for k in 2..m {
            if num_integer::gcd(k, m) != 1 {
                continue;
            }
            let raw: Vec<BigRational> = {
                let mut v = vec![BigRational::zero(); m as usize];
                for (i, c) in a.coeffs().iter().enumerate() {
                    v[(i as i64 * k % m) as usize] += c;
                }
                v
            };
            prod = prod.mul(&Cyclotomic::from_power_coeffs(&f, &raw));
        }
        let norm = a.mul(&prod);
        let n = norm.as_rational().expect("norm is rational").clone();
        prod.scale(&n.recip())
    }

    #[test]
    fn euclid_inverse_matches_norm_inverse() {
        for m in [3u32, 4, 5, 7, 8, 9, 12] {
            let f = field(m);
            let deg = f.degree();
            for seed in 0..20i64 {
                let raw: Vec<BigRational> = (0..deg)
                    .map(|i| BigRational::new(((seed * 7 + i as i64 * 3) % 5 - 2).into(), ((i as i64 + seed) % 3 + 1).into()))
                    .collect();
                let a = Cyclotomic::from_power_coeffs(&f, &raw);
                if a.is_zero() {
                    continue;
                }
                let inv = a.inv().unwrap();
                assert!(a.mul(&inv).is_one());
                assert_eq!(inv, norm_inverse(&a));
            }
        }
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(Cyclotomic::zero(&field(5)).inv().is_none());
    }
}
