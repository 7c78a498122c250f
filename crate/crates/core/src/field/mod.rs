//! Exact scalars: the rationals, prime fields `F_p` with `3 < p < 2^64`, and a
//! single quadratic extension layer over either.
//!
//! Every [`Scalar`] carries its [`FieldDescriptor`]. Arithmetic between
//! different fields is an error (`FieldMismatch`); moving a base-field value
//! into an extension over that base is done explicitly with
//! [`Scalar::embed`].
//!
//! Quadratic extensions use a canonical generator so that a field has exactly
//! one descriptor: over `Q` the squarefree part of the discriminant, over
//! `F_p` the least quadratic non-residue.

mod encoding;
pub(crate) mod modular;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use encoding::{scalar_from_json, scalar_to_json};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),
    #[error("{0} has no square root in {1} and the extension tower is capped at one layer")]
    ExtensionDepthExceeded(String, String),
    #[error("{0} is not a prime in (3, 2^64)")]
    InvalidPrime(String),
    #[error("{0} is a square in {1}; it does not define an extension")]
    SquareDiscriminant(String, String),
    #[error("quadratic extensions can only be built over Q or F_p")]
    TowerTooDeep,
    #[error("cannot parse scalar {0:?}: {1}")]
    Parse(String, String),
}

pub type Result<T, E = FieldError> = std::result::Result<T, E>;

/// Element of a base field. Which variant is valid is fixed by the owning
/// descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) enum Elem {
    Q(BigRational),
    P(u64),
}

/// Arithmetic context for base elements: `None` is `Q`, `Some(p)` is `F_p`.
#[derive(Clone, Copy)]
struct Base(Option<u64>);

impl Base {
    fn zero(self) -> Elem {
        match self.0 {
            None => Elem::Q(BigRational::zero()),
            Some(_) => Elem::P(0),
        }
    }

    fn from_i64(self, n: i64) -> Elem {
        match self.0 {
            None => Elem::Q(BigRational::from_integer(n.into())),
            Some(p) => Elem::P((n as i128).rem_euclid(p as i128) as u64),
        }
    }

    fn add(self, x: &Elem, y: &Elem) -> Elem {
        match (x, y, self.0) {
            (Elem::Q(a), Elem::Q(b), None) => Elem::Q(a + b),
            (Elem::P(a), Elem::P(b), Some(p)) => Elem::P(modular::add(*a, *b, p)),
            _ => unreachable!("base element does not match its field"),
        }
    }

    fn sub(self, x: &Elem, y: &Elem) -> Elem {
        match (x, y, self.0) {
            (Elem::Q(a), Elem::Q(b), None) => Elem::Q(a - b),
            (Elem::P(a), Elem::P(b), Some(p)) => Elem::P(modular::sub(*a, *b, p)),
            _ => unreachable!("base element does not match its field"),
        }
    }

    fn mul(self, x: &Elem, y: &Elem) -> Elem {
        match (x, y, self.0) {
            (Elem::Q(a), Elem::Q(b), None) => Elem::Q(a * b),
            (Elem::P(a), Elem::P(b), Some(p)) => Elem::P(modular::mul(*a, *b, p)),
            _ => unreachable!("base element does not match its field"),
        }
    }

    fn neg(self, x: &Elem) -> Elem {
        match (x, self.0) {
            (Elem::Q(a), None) => Elem::Q(-a),
            (Elem::P(a), Some(p)) => Elem::P(modular::neg(*a, p)),
            _ => unreachable!("base element does not match its field"),
        }
    }

    fn inv(self, x: &Elem) -> Result<Elem> {
        if is_zero(x) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (x, self.0) {
            (Elem::Q(a), None) => Elem::Q(a.recip()),
            (Elem::P(a), Some(p)) => Elem::P(modular::inv(*a, p)),
            _ => unreachable!("base element does not match its field"),
        })
    }

    fn is_square(self, x: &Elem) -> bool {
        match (x, self.0) {
            (Elem::Q(a), None) => rational_sqrt_exact(a).is_some(),
            (Elem::P(a), Some(p)) => modular::legendre(*a, p) >= 0,
            _ => unreachable!("base element does not match its field"),
        }
    }

    /// Square root inside the base field, if one exists.
    fn sqrt(self, x: &Elem) -> Option<Elem> {
        match (x, self.0) {
            (Elem::Q(a), None) => rational_sqrt_exact(a).map(Elem::Q),
            (Elem::P(a), Some(p)) => modular::sqrt(*a, p).map(Elem::P),
            _ => unreachable!("base element does not match its field"),
        }
    }
}

fn is_zero(x: &Elem) -> bool {
    match x {
        Elem::Q(a) => a.is_zero(),
        Elem::P(a) => *a == 0,
    }
}

fn rational_sqrt_exact(a: &BigRational) -> Option<BigRational> {
    if a.is_negative() {
        return None;
    }
    let n = a.numer().sqrt();
    let d = a.denom().sqrt();
    (&n * &n == *a.numer() && &d * &d == *a.denom()).then(|| BigRational::new(n, d))
}

/// Writes `n = s^2 * d`, removing square factors of primes below a fixed
/// trial-division bound and a perfect-square cofactor. `d` keeps the sign.
pub(crate) fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    const TRIAL_BOUND: u32 = 20_000;
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut rest = n.abs();
    let mut s = BigInt::one();
    let mut q = 2u32;
    while q < TRIAL_BOUND {
        let qq = BigInt::from(q) * BigInt::from(q);
        if qq > rest {
            break;
        }
        while (&rest % &qq).is_zero() {
            rest /= &qq;
            s *= q;
        }
        q += if q == 2 { 1 } else { 2 };
    }
    let r = rest.sqrt();
    if &r * &r == rest && !rest.is_one() {
        s *= r;
        rest = BigInt::one();
    }
    (s, rest * sign)
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct Extension {
    base: FieldDescriptor,
    d: Elem,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rationals,
    Prime(u64),
    Quadratic(Arc<Extension>),
}

/// Identifies the field a [`Scalar`] lives in.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldDescriptor(Repr);

/// Borrowed view of a [`FieldDescriptor`].
#[derive(Debug, Clone)]
pub enum FieldKind<'a> {
    Rationals,
    PrimeField(u64),
    QuadraticExtension { base: &'a FieldDescriptor, d: Scalar },
}

impl FieldDescriptor {
    pub fn rationals() -> Self {
        FieldDescriptor(Repr::Rationals)
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p <= 3 || !modular::is_prime(p) {
            return Err(FieldError::InvalidPrime(p.to_string()));
        }
        Ok(FieldDescriptor(Repr::Prime(p)))
    }

    /// Parses a decimal prime; values at or above 2^64 are rejected.
    pub fn prime_from_str(text: &str) -> Result<Self> {
        let p: u64 = text
            .trim()
            .parse()
            .map_err(|_| FieldError::InvalidPrime(text.to_string()))?;
        Self::prime(p)
    }

    /// The extension `base(sqrt(d))`, returned with the factor `r` such that
    /// `sqrt(d) = r * sqrt(d0)` for the canonical generator `d0`.
    pub fn adjoin_sqrt(d: &Scalar) -> Result<(FieldDescriptor, Scalar)> {
        let base = d.field().clone();
        if base.is_extension() {
            return Err(FieldError::TowerTooDeep);
        }
        let ctx = base.ctx();
        if ctx.is_square(&d.a) {
            return Err(FieldError::SquareDiscriminant(d.to_string(), base.to_string()));
        }
        let (d0, r) = match &d.a {
            Elem::Q(q) => {
                let (s, d0) = squarefree_split(&(q.numer() * q.denom()));
                (Elem::Q(BigRational::from_integer(d0)), Elem::Q(BigRational::new(s, q.denom().clone())))
            }
            Elem::P(a) => {
                let p = base.modulus().expect("prime field");
                let d0 = modular::least_non_residue(p);
                let ratio = modular::mul(*a, modular::inv(d0, p), p);
                let r = modular::sqrt(ratio, p).expect("quotient of non-residues is a residue");
                (Elem::P(d0), Elem::P(r))
            }
        };
        let field = FieldDescriptor(Repr::Quadratic(Arc::new(Extension { base: base.clone(), d: d0 })));
        Ok((field, Scalar::base_value(&base, r)))
    }

    pub fn kind(&self) -> FieldKind<'_> {
        match &self.0 {
            Repr::Rationals => FieldKind::Rationals,
            Repr::Prime(p) => FieldKind::PrimeField(*p),
            Repr::Quadratic(ext) => FieldKind::QuadraticExtension {
                base: &ext.base,
                d: Scalar::base_value(&ext.base, ext.d.clone()),
            },
        }
    }

    pub fn is_extension(&self) -> bool {
        matches!(self.0, Repr::Quadratic(_))
    }

    /// The base field: `self` unless this is an extension.
    pub fn base(&self) -> &FieldDescriptor {
        match &self.0 {
            Repr::Quadratic(ext) => &ext.base,
            _ => self,
        }
    }

    /// The characteristic for prime fields and their extensions.
    pub fn modulus(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rationals => None,
            Repr::Prime(p) => Some(*p),
            Repr::Quadratic(ext) => ext.base.modulus(),
        }
    }

    fn ctx(&self) -> Base {
        Base(self.modulus())
    }

    fn ext_d(&self) -> Option<&Elem> {
        match &self.0 {
            Repr::Quadratic(ext) => Some(&ext.d),
            _ => None,
        }
    }

    /// Smallest field containing both, if one is contained in the other.
    pub fn join(&self, other: &FieldDescriptor) -> Result<FieldDescriptor> {
        if self == other || (self.is_extension() && self.base() == other) {
            Ok(self.clone())
        } else if other.is_extension() && other.base() == self {
            Ok(other.clone())
        } else {
            Err(FieldError::FieldMismatch(self.to_string(), other.to_string()))
        }
    }

    pub fn join_all<'a>(fields: impl IntoIterator<Item = &'a FieldDescriptor>) -> Result<FieldDescriptor> {
        let mut iter = fields.into_iter();
        let first = iter.next().cloned().unwrap_or_else(FieldDescriptor::rationals);
        iter.try_fold(first, |acc, f| acc.join(f))
    }

    pub fn zero(&self) -> Scalar {
        Scalar::base_value(self.base(), self.ctx().zero()).embed_unchecked(self)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        Scalar::base_value(self.base(), self.ctx().from_i64(n)).embed_unchecked(self)
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        let e = match self.modulus() {
            None => Elem::Q(BigRational::from_integer(n.clone())),
            Some(p) => Elem::P(n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced residue")),
        };
        Scalar::base_value(self.base(), e).embed_unchecked(self)
    }

    /// `num / den` in this field (for `F_p`, a modular quotient).
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).try_div(&self.from_i64(den))
    }

    /// Parses a base-field scalar: a decimal integer, or `a/b` over `Q`.
    pub fn parse_base(&self, text: &str) -> Result<Scalar> {
        let base = self.base();
        let t = text.trim();
        let err = |m: &str| FieldError::Parse(text.to_string(), m.to_string());
        let e = match base.modulus() {
            None => Elem::Q(BigRational::from_str(t).map_err(|e| err(&e.to_string()))?),
            Some(p) => {
                let n = BigInt::from_str(t).map_err(|e| err(&e.to_string()))?;
                Elem::P(n.mod_floor(&BigInt::from(p)).to_u64().expect("reduced residue"))
            }
        };
        Ok(Scalar::base_value(base, e).embed_unchecked(self))
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rationals => write!(f, "Q"),
            Repr::Prime(p) => write!(f, "F_{p}"),
            Repr::Quadratic(ext) => {
                write!(f, "{}(sqrt({}))", ext.base, Scalar::base_value(&ext.base, ext.d.clone()))
            }
        }
    }
}

impl fmt::Debug for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// An exact field element in canonical form.
///
/// Over `Q` a reduced fraction with positive denominator, over `F_p` the least
/// nonnegative residue, and in an extension the pair `(a, b)` for `a + b*sqrt(d)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    field: FieldDescriptor,
    a: Elem,
    b: Option<Elem>,
}

impl Scalar {
    fn base_value(base: &FieldDescriptor, a: Elem) -> Scalar {
        Scalar { field: base.clone(), a, b: None }
    }

    fn embed_unchecked(self, target: &FieldDescriptor) -> Scalar {
        if self.field == *target {
            return self;
        }
        let zero = target.ctx().zero();
        Scalar { field: target.clone(), a: self.a, b: Some(zero) }
    }

    fn from_parts(field: &FieldDescriptor, a: Elem, b: Elem) -> Scalar {
        if field.is_extension() {
            Scalar { field: field.clone(), a, b: Some(b) }
        } else {
            debug_assert!(is_zero(&b));
            Scalar { field: field.clone(), a, b: None }
        }
    }

    /// `a + b*sqrt(d)` with `a, b, d` in one base field. When `d` is a square
    /// the result stays in the base field.
    pub fn adjoin(a: &Scalar, b: &Scalar, d: &Scalar) -> Result<Scalar> {
        let base = a.field.join(&b.field)?.join(&d.field)?;
        if base.is_extension() {
            return Err(FieldError::TowerTooDeep);
        }
        let ctx = base.ctx();
        if let Some(root) = ctx.sqrt(&d.a) {
            return Ok(Scalar::base_value(&base, ctx.add(&a.a, &ctx.mul(&b.a, &root))));
        }
        let (field, r) = FieldDescriptor::adjoin_sqrt(d)?;
        Ok(Scalar::from_parts(&field, a.a.clone(), ctx.mul(&b.a, &r.a)))
    }

    pub fn field(&self) -> &FieldDescriptor {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        is_zero(&self.a) && self.b.as_ref().is_none_or(is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == self.field.one()
    }

    /// True for values of the base field (including embedded ones).
    pub fn is_base(&self) -> bool {
        self.b.as_ref().is_none_or(is_zero)
    }

    /// Base-field components `(a, b)` of `a + b*sqrt(d)`; `b = 0` outside an
    /// extension.
    pub fn components(&self) -> (Scalar, Scalar) {
        let base = self.field.base();
        let b = self.b.clone().unwrap_or_else(|| base.ctx().zero());
        (Scalar::base_value(base, self.a.clone()), Scalar::base_value(base, b))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match (&self.a, &self.b) {
            (Elem::Q(q), None) => Some(q),
            _ => None,
        }
    }

    pub fn as_residue(&self) -> Option<u64> {
        match (&self.a, &self.b) {
            (Elem::P(r), None) => Some(*r),
            _ => None,
        }
    }

    /// Moves the value into `target`, which must equal or extend this field.
    pub fn embed(&self, target: &FieldDescriptor) -> Result<Scalar> {
        if self.field == *target {
            return Ok(self.clone());
        }
        if !self.field.is_extension() && target.base() == &self.field {
            return Ok(self.clone().embed_unchecked(target));
        }
        if self.field.is_extension() && self.is_base() && target == self.field.base() {
            return Ok(Scalar::base_value(target, self.a.clone()));
        }
        Err(FieldError::FieldMismatch(self.field.to_string(), target.to_string()))
    }

    fn check(&self, other: &Scalar) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch(self.field.to_string(), other.field.to_string()))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let ctx = self.field.ctx();
        Ok(Scalar {
            field: self.field.clone(),
            a: ctx.add(&self.a, &other.a),
            b: zip_b(&self.b, &other.b, |x, y| ctx.add(x, y)),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let ctx = self.field.ctx();
        Ok(Scalar {
            field: self.field.clone(),
            a: ctx.sub(&self.a, &other.a),
            b: zip_b(&self.b, &other.b, |x, y| ctx.sub(x, y)),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        let ctx = self.field.ctx();
        let (a, b) = match (&self.b, &other.b, self.field.ext_d()) {
            (Some(b1), Some(b2), Some(d)) => {
                let a = ctx.add(&ctx.mul(&self.a, &other.a), &ctx.mul(d, &ctx.mul(b1, b2)));
                let b = ctx.add(&ctx.mul(&self.a, b2), &ctx.mul(&other.a, b1));
                (a, Some(b))
            }
            _ => (ctx.mul(&self.a, &other.a), None),
        };
        Ok(Scalar { field: self.field.clone(), a, b })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn try_eq(&self, other: &Scalar) -> Result<bool> {
        self.check(other)?;
        Ok(self == other)
    }

    pub fn inv(&self) -> Result<Scalar> {
        let ctx = self.field.ctx();
        match (&self.b, self.field.ext_d()) {
            (Some(b), Some(d)) => {
                let norm = ctx.sub(&ctx.mul(&self.a, &self.a), &ctx.mul(d, &ctx.mul(b, b)));
                let n_inv = ctx.inv(&norm)?;
                Ok(Scalar {
                    field: self.field.clone(),
                    a: ctx.mul(&self.a, &n_inv),
                    b: Some(ctx.neg(&ctx.mul(b, &n_inv))),
                })
            }
            _ => Ok(Scalar { field: self.field.clone(), a: ctx.inv(&self.a)?, b: None }),
        }
    }

    pub fn pow(&self, mut exp: u64) -> Scalar {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// `a^2 - d*b^2`, an element of the base field.
    pub fn norm(&self) -> Scalar {
        let ctx = self.field.ctx();
        let base = self.field.base();
        let n = match (&self.b, self.field.ext_d()) {
            (Some(b), Some(d)) => ctx.sub(&ctx.mul(&self.a, &self.a), &ctx.mul(d, &ctx.mul(b, b))),
            _ => ctx.mul(&self.a, &self.a),
        };
        Scalar::base_value(base, n)
    }

    /// `a + b*sqrt(d) -> a - b*sqrt(d)`; the identity on base fields.
    pub fn conjugate(&self) -> Scalar {
        let ctx = self.field.ctx();
        Scalar { field: self.field.clone(), a: self.a.clone(), b: self.b.as_ref().map(|b| ctx.neg(b)) }
    }

    pub fn is_square(&self) -> bool {
        self.sqrt_in_field().is_some()
    }

    fn sqrt_in_field(&self) -> Option<Scalar> {
        let ctx = self.field.ctx();
        let (Some(b), Some(d)) = (&self.b, self.field.ext_d()) else {
            return ctx.sqrt(&self.a).map(|r| Scalar::base_value(&self.field, r));
        };
        let field = &self.field;
        if is_zero(b) {
            if let Some(r) = ctx.sqrt(&self.a) {
                return Some(Scalar::from_parts(field, r, ctx.zero()));
            }
            let over_d = ctx.mul(&self.a, &ctx.inv(d).ok()?);
            return ctx.sqrt(&over_d).map(|r| Scalar::from_parts(field, ctx.zero(), r));
        }
        let norm = ctx.sub(&ctx.mul(&self.a, &self.a), &ctx.mul(d, &ctx.mul(b, b)));
        let n = ctx.sqrt(&norm)?;
        let half = ctx.inv(&ctx.from_i64(2)).ok()?;
        for candidate in [ctx.add(&self.a, &n), ctx.sub(&self.a, &n)] {
            let x_sq = ctx.mul(&candidate, &half);
            if is_zero(&x_sq) {
                continue;
            }
            if let Some(x) = ctx.sqrt(&x_sq) {
                let y = ctx.mul(b, &ctx.inv(&ctx.mul(&ctx.from_i64(2), &x)).ok()?);
                return Some(Scalar::from_parts(field, x, y));
            }
        }
        None
    }

    /// A square root. Base-field non-squares move to the canonical quadratic
    /// extension; inside an extension only existing roots are returned.
    pub fn sqrt(&self) -> Result<Scalar> {
        if let Some(r) = self.sqrt_in_field() {
            return Ok(r);
        }
        if self.field.is_extension() {
            return Err(FieldError::ExtensionDepthExceeded(self.to_string(), self.field.to_string()));
        }
        let (field, r) = FieldDescriptor::adjoin_sqrt(self)?;
        Ok(Scalar::from_parts(&field, self.field.ctx().zero(), r.a))
    }

    /// Byte key: equal scalars give equal keys, and byte order is a fixed
    /// total order independent of platform. Zero sorts last.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(24);
        match &self.field.0 {
            Repr::Rationals => out.push(0),
            Repr::Prime(p) => {
                out.push(1);
                out.extend_from_slice(&p.to_be_bytes());
            }
            Repr::Quadratic(ext) => {
                out.push(2);
                out.extend_from_slice(&Scalar::base_value(&ext.base, ext.d.clone()).canonical_key());
            }
        }
        push_elem(&mut out, &self.a);
        if let Some(b) = &self.b {
            push_elem(&mut out, b);
        }
        out
    }
}

fn zip_b(x: &Option<Elem>, y: &Option<Elem>, f: impl Fn(&Elem, &Elem) -> Elem) -> Option<Elem> {
    match (x, y) {
        (Some(x), Some(y)) => Some(f(x, y)),
        _ => None,
    }
}

// Zero sorts after every nonzero value, so that `[1,0,0]` precedes `[0,0,1]`.
fn push_elem(out: &mut Vec<u8>, e: &Elem) {
    match e {
        Elem::P(r) => {
            out.push(u8::from(*r == 0));
            out.extend_from_slice(&r.to_be_bytes());
        }
        Elem::Q(q) => {
            let sign = match q.numer().sign() {
                Sign::Plus => 0u8,
                Sign::Minus => 1,
                Sign::NoSign => 2,
            };
            out.push(sign);
            for n in [q.numer(), q.denom()] {
                let (_, mag) = n.to_bytes_be();
                out.extend_from_slice(&(mag.len() as u32).to_be_bytes());
                out.extend_from_slice(&mag);
            }
        }
    }
}

/// Orders scalars by [`Scalar::canonical_key`].
pub fn key_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    a.canonical_key().cmp(&b.canonical_key())
}

fn fmt_elem(e: &Elem, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    match e {
        Elem::Q(q) if q.is_integer() => write!(f, "{}", q.numer()),
        Elem::Q(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        Elem::P(r) => write!(f, "{r}"),
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_elem(&self.a, f)?;
        if let (Some(b), Some(d)) = (&self.b, self.field.ext_d()) {
            if !is_zero(b) {
                write!(f, " + (")?;
                fmt_elem(b, f)?;
                write!(f, ")*sqrt(")?;
                fmt_elem(d, f)?;
                write!(f, ")")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {}", self.field)
    }
}

// Operator forms panic on a field mismatch; callers that cannot guarantee a
// shared field use the `try_*` methods.
macro_rules! forward_op {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).expect(concat!("Scalar::", stringify!($m)))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                self.$m(&rhs)
            }
        }
    };
}

forward_op!(Add, add, try_add);
forward_op!(Sub, sub, try_sub);
forward_op!(Mul, mul, try_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        let ctx = self.field.ctx();
        Scalar { field: self.field.clone(), a: ctx.neg(&self.a), b: self.b.as_ref().map(|b| ctx.neg(b)) }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}
