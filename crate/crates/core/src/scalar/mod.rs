//! Laurent polynomials over `Q(zeta_m)` in a fixed list of named parameters.

mod cyclotomic;

pub use cyclotomic::{cyclotomic_polynomial, int_poly_mul, x_pow_minus_one, CycloField, Cyclotomic, IntPoly};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::expr::{self, Expr};
use cyclotomic::join_signed;

/// Conductor and parameter names shared by all scalars of one presentation.
#[derive(Debug)]
pub struct ScalarContext {
    field: Arc<CycloField>,
    params: Vec<String>,
}

impl ScalarContext {
    pub fn new(conductor: u32, params: Vec<String>) -> Arc<Self> {
        Arc::new(ScalarContext {
            field: CycloField::new(conductor),
            params,
        })
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn conductor(&self) -> u32 {
        self.field.conductor()
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    fn compatible(&self, other: &ScalarContext) -> bool {
        self.conductor() == other.conductor() && self.params == other.params
    }
}

/// Exponent vector of a Laurent monomial.
pub type Exponents = Vec<i32>;

#[derive(Clone)]
pub struct Scalar {
    ctx: Arc<ScalarContext>,
    terms: BTreeMap<Exponents, Cyclotomic>,
}

/// Binary operations exposed to callers that need a recoverable mismatch.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl Scalar {
    pub fn zero(ctx: &Arc<ScalarContext>) -> Self {
        Scalar {
            ctx: ctx.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn from_cyclotomic(ctx: &Arc<ScalarContext>, c: Cyclotomic) -> Self {
        let mut s = Self::zero(ctx);
        if !c.is_zero() {
            s.terms.insert(vec![0; ctx.params.len()], c);
        }
        s
    }

    pub fn from_rational(ctx: &Arc<ScalarContext>, r: BigRational) -> Self {
        Self::from_cyclotomic(ctx, Cyclotomic::from_rational(&ctx.field, r))
    }

    pub fn from_integer(ctx: &Arc<ScalarContext>, n: i64) -> Self {
        Self::from_cyclotomic(ctx, Cyclotomic::from_integer(&ctx.field, n))
    }

    pub fn one(ctx: &Arc<ScalarContext>) -> Self {
        Self::from_integer(ctx, 1)
    }

    /// `zeta_m^k`.
    pub fn root_of_unity(ctx: &Arc<ScalarContext>, k: i64) -> Self {
        Self::from_cyclotomic(ctx, Cyclotomic::root_of_unity(&ctx.field, k))
    }

    /// The monomial `param^1`.
    pub fn param(ctx: &Arc<ScalarContext>, index: usize) -> Self {
        let mut e = vec![0; ctx.params.len()];
        e[index] = 1;
        Self::monomial(ctx, e, Cyclotomic::one(&ctx.field))
    }

    pub fn monomial(ctx: &Arc<ScalarContext>, exps: Exponents, coeff: Cyclotomic) -> Self {
        let mut s = Self::zero(ctx);
        if !coeff.is_zero() {
            s.terms.insert(exps, coeff);
        }
        s
    }

    pub fn ctx(&self) -> &Arc<ScalarContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, Cyclotomic> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(e, c)| e.iter().all(|&x| x == 0) && c.is_one())
    }

    /// A unit is a single Laurent monomial with nonzero coefficient.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    /// The value as an element of `Q(zeta_m)` when no parameter occurs.
    pub fn as_constant(&self) -> Option<Cyclotomic> {
        match self.terms.len() {
            0 => Some(Cyclotomic::zero(&self.ctx.field)),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                e.iter().all(|&x| x == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn check_ctx(&self, other: &Scalar) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.compatible(&other.ctx) {
            Ok(())
        } else {
            Err(Error::spec(format!(
                "scalar context mismatch: conductor {} with {:?} vs conductor {} with {:?}",
                self.ctx.conductor(),
                self.ctx.params,
                other.ctx.conductor(),
                other.ctx.params
            )))
        }
    }

    /// Arithmetic that reports a context mismatch instead of panicking.
    pub fn checked_arith(op: ArithOp, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        a.check_ctx(b)?;
        Ok(match op {
            ArithOp::Add => a.add_unchecked(b, false),
            ArithOp::Sub => a.add_unchecked(b, true),
            ArithOp::Mul => a.mul_unchecked(b),
        })
    }

    fn add_unchecked(&self, other: &Scalar, negate: bool) -> Scalar {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let c = if negate { c.neg() } else { c.clone() };
            match terms.get_mut(e) {
                Some(existing) => {
                    let sum = existing.add(&c);
                    if sum.is_zero() {
                        terms.remove(e);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    terms.insert(e.clone(), c);
                }
            }
        }
        Scalar {
            ctx: self.ctx.clone(),
            terms,
        }
    }

    fn mul_unchecked(&self, other: &Scalar) -> Scalar {
        let mut out = Scalar::zero(&self.ctx);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Exponents = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                let c = c1.mul(c2);
                match out.terms.get_mut(&e) {
                    Some(existing) => {
                        let sum = existing.add(&c);
                        if sum.is_zero() {
                            out.terms.remove(&e);
                        } else {
                            *existing = sum;
                        }
                    }
                    None => {
                        if !c.is_zero() {
                            out.terms.insert(e, c);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn negated(&self) -> Scalar {
        Scalar {
            ctx: self.ctx.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    /// Inverse of a unit.
    pub fn inv(&self) -> Result<Scalar> {
        if self.terms.len() != 1 {
            return Err(Error::NotAUnit(self.to_string()));
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let c = c.inv().ok_or_else(|| Error::NotAUnit(self.to_string()))?;
        Ok(Scalar::monomial(&self.ctx, e.iter().map(|x| -x).collect(), c))
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, k: i64) -> Result<Scalar> {
        if k < 0 {
            return self.inv()?.pow(-k);
        }
        if self.terms.len() == 1 {
            let (e, c) = self.terms.iter().next().unwrap();
            let exps = e.iter().map(|x| x * k as i32).collect();
            return Ok(Scalar::monomial(&self.ctx, exps, c.pow(k).expect("nonnegative power")));
        }
        let mut acc = Scalar::one(&self.ctx);
        let mut base = self.clone();
        let mut k = k as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Substitutes concrete values for every parameter.
    pub fn evaluate(&self, values: &BTreeMap<String, Cyclotomic>) -> Result<Cyclotomic> {
        let field = &self.ctx.field;
        let mut acc = Cyclotomic::zero(field);
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (idx, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = &self.ctx.params[idx];
                let v = values
                    .get(name)
                    .ok_or_else(|| Error::SymbolicParameter(name.clone()))?;
                let p = v
                    .pow(k as i64)
                    .ok_or_else(|| Error::spec(format!("parameter `{name}` instantiated to 0 but occurs with a negative exponent")))?;
                t = t.mul(&p);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Parses an expression in the scalar grammar.
    pub fn parse(text: &str, ctx: &Arc<ScalarContext>) -> Result<Scalar> {
        let e = expr::parse(text)?;
        Self::from_expr(&e, ctx)
    }

    pub fn from_expr(e: &Expr, ctx: &Arc<ScalarContext>) -> Result<Scalar> {
        use expr::ExprKind::*;
        Ok(match &e.kind {
            Rational(r) => Scalar::from_rational(ctx, r.clone()),
            Ident(name) => match ctx.param_index(name) {
                Some(i) => Scalar::param(ctx, i),
                None => return Err(Error::parse(1, e.column, format!("unknown identifier `{name}`"))),
            },
            Call(name, args) if name == "zeta" => {
                let m = ctx.conductor() as i64;
                match args.as_slice() {
                    [d] if *d > 0 && m % d == 0 => Scalar::root_of_unity(ctx, m / d),
                    [d] => {
                        return Err(Error::parse(
                            1,
                            e.column,
                            format!("zeta({d}) requires {d} to divide the conductor {m}"),
                        ))
                    }
                    _ => return Err(Error::parse(1, e.column, "zeta takes exactly one argument")),
                }
            }
            Call(name, _) => {
                return Err(Error::parse(1, e.column, format!("`{name}(...)` is not a scalar")))
            }
            Generator(_) => {
                return Err(Error::parse(1, e.column, "algebra generator in a scalar expression"))
            }
            Neg(a) => Self::from_expr(a, ctx)?.negated(),
            Add(a, b) => &Self::from_expr(a, ctx)? + &Self::from_expr(b, ctx)?,
            Sub(a, b) => &Self::from_expr(a, ctx)? - &Self::from_expr(b, ctx)?,
            Mul(a, b) => &Self::from_expr(a, ctx)? * &Self::from_expr(b, ctx)?,
            Pow(a, k) => Self::from_expr(a, ctx)?
                .pow(*k)
                .map_err(|err| Error::parse(1, e.column, err.to_string()))?,
        })
    }

    fn monomial_string(&self, e: &[i32]) -> String {
        let mut parts = Vec::new();
        for (idx, &k) in e.iter().enumerate() {
            match k {
                0 => {}
                1 => parts.push(self.ctx.params[idx].clone()),
                _ => parts.push(format!("{}^{}", self.ctx.params[idx], k)),
            }
        }
        parts.join("*")
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.compatible(&other.ctx) && self.terms == other.terms
    }
}

impl Eq for Scalar {}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mono = self.monomial_string(e);
            let coeff = c.to_string();
            let s = if mono.is_empty() {
                coeff
            } else if c.is_one() {
                mono
            } else if c.neg().is_one() {
                format!("-{mono}")
            } else if c.weight() == 1 {
                format!("{coeff}*{mono}")
            } else {
                format!("({coeff})*{mono}")
            };
            parts.push(s);
        }
        write!(f, "{}", join_signed(&parts))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.check_ctx(rhs).expect("scalar context mismatch");
                $body(self, rhs)
            }
        }
        impl $trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &Scalar, b: &Scalar| a.add_unchecked(b, false));
forward_binop!(Sub, sub, |a: &Scalar, b: &Scalar| a.add_unchecked(b, true));
forward_binop!(Mul, mul, |a: &Scalar, b: &Scalar| a.mul_unchecked(b));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::negated(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::negated(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx(m: u32, params: &[&str]) -> Arc<ScalarContext> {
        ScalarContext::new(m, params.iter().map(|s| s.to_string()).collect())
    }

    fn parse(text: &str, c: &Arc<ScalarContext>) -> Scalar {
        Scalar::parse(text, c).unwrap()
    }

    #[test]
    fn reductions_in_small_fields() {
        let c4 = ctx(4, &[]);
        assert_eq!(parse("zeta(4)*zeta(4)", &c4), Scalar::from_integer(&c4, -1));
        let c3 = ctx(3, &[]);
        assert_eq!(parse("zeta(3)*zeta(3)", &c3).to_string(), "-1 - zeta(3)");
        assert_eq!(parse("zeta(3)+zeta(3)^2", &c3), Scalar::from_integer(&c3, -1));
    }

    #[test]
    fn additive_inverse_cancels() {
        let c = ctx(4, &["q", "lambda"]);
        let a = parse("q*lambda", &c);
        assert!((&a + &a.negated()).is_zero());
    }

    #[test]
    fn inverses() {
        let c = ctx(6, &["q", "lambda"]);
        for k in 0..6 {
            let z = Scalar::root_of_unity(&c, k);
            assert_eq!(z.inv().unwrap(), Scalar::root_of_unity(&c, 6 - k));
        }
        assert_eq!(parse("q^-1", &c).inv().unwrap(), parse("q", &c));
        assert!(matches!(parse("1 + lambda", &c).inv(), Err(Error::NotAUnit(_))));
        assert!(matches!(Scalar::zero(&c).inv(), Err(Error::NotAUnit(_))));
    }

    #[test]
    fn parse_literal_forms() {
        let c = ctx(4, &["p"]);
        let s = parse("-(1/2)*zeta(4)*p^2", &c);
        assert_eq!(s.terms().len(), 1);
        let (e, coeff) = s.terms().iter().next().unwrap();
        assert_eq!(e, &vec![2]);
        let expected = Cyclotomic::root_of_unity(c.field(), 1)
            .scale(&BigRational::new((-1).into(), 2.into()));
        assert_eq!(coeff, &expected);
        assert_eq!(s.to_string(), "-1/2*zeta(4)*p^2");
    }

    #[test]
    fn parse_errors() {
        let c = ctx(4, &["q"]);
        assert!(matches!(Scalar::parse("r", &c), Err(Error::Parse { .. })));
        assert!(matches!(Scalar::parse("zeta(3)", &c), Err(Error::Parse { .. })));
        assert!(matches!(Scalar::parse("q/2", &c), Err(Error::Parse { .. })));
        assert!(matches!(Scalar::parse("q^", &c), Err(Error::Parse { column: 3, .. })));
    }

    #[test]
    fn context_mismatch_is_a_spec_error() {
        let a = Scalar::one(&ctx(4, &["q"]));
        let b = Scalar::one(&ctx(3, &["q"]));
        assert!(matches!(Scalar::checked_arith(ArithOp::Add, &a, &b), Err(Error::Spec { .. })));
    }

    #[test]
    fn print_parse_fixed_point() {
        let c = ctx(12, &["q", "p"]);
        for text in [
            "q^-1",
            "(1 + zeta(3))*q - 2*p^3*q^-2 + 7/3",
            "-(1/2)*zeta(4)*p^2 + zeta(12)^5",
            "(q + p)^3",
            "0",
        ] {
            let a = parse(text, &c);
            let b = parse(&a.to_string(), &c);
            assert_eq!(a, b, "{text}");
            assert_eq!(a.to_string(), b.to_string());
        }
    }

    #[test]
    fn evaluation() {
        let c = ctx(4, &["q", "lambda"]);
        let s = parse("q^-1*lambda + 2", &c);
        let mut vals = BTreeMap::new();
        vals.insert("q".to_string(), Cyclotomic::root_of_unity(c.field(), 1));
        assert!(matches!(s.evaluate(&vals), Err(Error::SymbolicParameter(_))));
        vals.insert("lambda".to_string(), Cyclotomic::from_integer(c.field(), 1));
        // zeta^-1 + 2 = 2 - zeta
        let expected = Cyclotomic::from_integer(c.field(), 2).sub(&Cyclotomic::root_of_unity(c.field(), 1));
        assert_eq!(s.evaluate(&vals).unwrap(), expected);
    }

    fn arb_scalar(c: Arc<ScalarContext>) -> impl Strategy<Value = Scalar> {
        let deg = c.field().degree();
        prop::collection::vec(
            (
                prop::collection::vec(-2i32..=2, 2),
                prop::collection::vec(-3i64..=3, deg),
            ),
            0..4,
        )
        .prop_map(move |terms| {
            let mut s = Scalar::zero(&c);
            for (e, coeffs) in terms {
                let raw: Vec<BigRational> = coeffs.into_iter().map(|x| BigRational::from_integer(x.into())).collect();
                let cy = Cyclotomic::from_power_coeffs(c.field(), &raw);
                s = s + Scalar::monomial(&c, e, cy);
            }
            s
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn ring_axioms(
            (a, b, c) in {
                let cx = ctx(6, &["q", "p"]);
                (arb_scalar(cx.clone()), arb_scalar(cx.clone()), arb_scalar(cx))
            }
        ) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn unit_inverse_involution(e in prop::collection::vec(-3i32..=3, 2), k in 0i64..12, r in 1i64..5) {
            let cx = ctx(12, &["q", "p"]);
            let coeff = Cyclotomic::root_of_unity(cx.field(), k).scale(&BigRational::from_integer(r.into()));
            let u = Scalar::monomial(&cx, e, coeff);
            let inv = u.inv().unwrap();
            prop_assert!((&u * &inv).is_one());
            prop_assert_eq!(inv.inv().unwrap(), u);
        }
    }
}
