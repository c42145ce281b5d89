//! Exact arithmetic in GF(p^m).
//!
//! Elements are encoded as integers in `[0, q)`: the base-p digits of the
//! integer, least significant first, are the coordinates in the polynomial
//! basis `1, x, ..., x^(m-1)`. This gives a total order on the field that is
//! used for every deterministic tie-break in the crate (smallest primitive
//! element, smaller square root, ascending enumeration).
//!
//! A [`Field`] is a cheap, immutable, shareable handle. Raw elements are the
//! [`Elem`] newtype; arithmetic goes through the owning field. The bound
//! [`FieldElement`] pairs an element with its field and checks that operands
//! agree.

mod poly;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest order for which a modulus is chosen automatically.
pub const MAX_TABLE_ORDER: u32 = 1 << 16;
/// Largest order accepted with an explicit modulus.
pub const MAX_ORDER: u32 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NonPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("modulus must be monic of degree {degree} with coefficients below {p}: {reason}")]
    InvalidModulus { p: u32, degree: u32, reason: String },
    #[error("modulus {0:?} is reducible")]
    ReducibleModulus(Vec<u32>),
    #[error("unsupported field size {0}")]
    UnsupportedSize(u64),
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("quadratic character is undefined in characteristic 2")]
    EvenCharacteristic,
    #[error("{sub} does not divide the extension degree {degree}")]
    NotASubfieldDegree { sub: u32, degree: u32 },
    #[error("{rep} is not an element of GF({q})")]
    NotAnElement { rep: u64, q: u32 },
    #[error("malformed field spec {0:?}")]
    BadFieldSpec(String),
}

/// A field element in integer encoding. Meaningless without its [`Field`].
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn rep(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct FieldData {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1), g the smallest primitive element.
    exp: Vec<u32>,
    /// log[x] for x != 0; log[0] unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add_table: Option<Vec<u16>>,
    primitive: u32,
}

/// Handle to GF(p^m). Cloning is cheap.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.0.p)
            .field("m", &self.0.m)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` as `p^m`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p, m))
}

fn checked_order(p: u32, m: u32) -> Option<u32> {
    let mut q: u64 = 1;
    for _ in 0..m {
        q *= p as u64;
        if q > MAX_ORDER as u64 {
            return None;
        }
    }
    Some(q as u32)
}

/// The monic irreducible polynomial of degree m over GF(p) whose lower
/// coefficients, read as base-p digits, form the smallest integer.
pub fn default_modulus(p: u32, m: u32) -> Result<Vec<u32>, FieldError> {
    if !is_prime(p) {
        return Err(FieldError::NonPrime(p));
    }
    if m == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = checked_order(p, m)
        .filter(|&q| q <= MAX_TABLE_ORDER)
        .ok_or(FieldError::UnsupportedSize((p as u64).saturating_pow(m)))?;
    if m == 1 {
        return Ok(vec![0, 1]);
    }
    for value in 0..q {
        let mut coeffs = digits(value, p, m);
        if coeffs[0] == 0 {
            continue;
        }
        coeffs.push(1);
        if poly::is_irreducible(&coeffs, p) {
            return Ok(coeffs);
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

fn digits(mut value: u32, p: u32, m: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(m as usize);
    for _ in 0..m {
        out.push(value % p);
        value /= p;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

impl Field {
    /// Builds GF(p^m). Without a modulus the smallest irreducible one is used
    /// (orders up to 2^16).
    pub fn new(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NonPrime(p));
        }
        if m == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q =
            checked_order(p, m).ok_or(FieldError::UnsupportedSize((p as u64).saturating_pow(m)))?;
        let modulus = match modulus {
            Some(c) => {
                let invalid = |reason: &str| FieldError::InvalidModulus {
                    p,
                    degree: m,
                    reason: reason.to_string(),
                };
                if c.len() != m as usize + 1 {
                    return Err(invalid("expected m+1 coefficients"));
                }
                if c.iter().any(|&x| x >= p) {
                    return Err(invalid("coefficient out of range"));
                }
                if c[m as usize] != 1 {
                    return Err(invalid("leading coefficient must be 1"));
                }
                if !poly::is_irreducible(&c.to_vec(), p) {
                    return Err(FieldError::ReducibleModulus(c.to_vec()));
                }
                c.to_vec()
            }
            None => default_modulus(p, m)?,
        };
        Ok(Field(Arc::new(FieldData::build(p, m, q, modulus))))
    }

    /// GF(q) with the default modulus.
    pub fn with_order(q: u32) -> Result<Field, FieldError> {
        let (p, m) = prime_power(q).ok_or(FieldError::NonPrime(q))?;
        Field::new(p, m, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.m
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_even(&self) -> bool {
        self.0.p == 2
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        Elem(1)
    }

    pub fn elem(&self, rep: u64) -> Result<Elem, FieldError> {
        if rep < self.0.q as u64 {
            Ok(Elem(rep as u32))
        } else {
            Err(FieldError::NotAnElement { rep, q: self.0.q })
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.0 < self.0.q
    }

    /// The image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// All elements in ascending rep order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> {
        (1..self.0.q).map(Elem)
    }

    /// Polynomial-basis coordinates, constant term first.
    pub fn coordinates(&self, x: Elem) -> Vec<u32> {
        digits(x.0, self.0.p, self.0.m)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let d = &*self.0;
        if d.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if d.m == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= d.p { s - d.p } else { s });
        }
        if let Some(t) = &d.add_table {
            return Elem(t[(a.0 * d.q + b.0) as usize] as u32);
        }
        Elem(d.add_digits(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.0.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem(0);
        }
        let d = &*self.0;
        Elem(d.exp[(d.log[a.0 as usize] + d.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem, FieldError> {
        if a.0 == 0 {
            return Err(FieldError::DivisionByZero);
        }
        let d = &*self.0;
        let l = d.log[a.0 as usize];
        Ok(Elem(d.exp[((d.q - 1 - l) % (d.q - 1)) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `x^e` by square-and-multiply; negative exponents go through the
    /// inverse. `pow(0, 0) = 1`.
    pub fn pow(&self, x: Elem, e: i64) -> Result<Elem, FieldError> {
        let base = if e < 0 { self.inv(x)? } else { x };
        let mut e = e.unsigned_abs();
        let mut result = self.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, sq);
            }
            sq = self.mul(sq, sq);
            e >>= 1;
        }
        Ok(result)
    }

    /// `x^e` for a non-negative exponent.
    pub fn pow_u(&self, x: Elem, e: u64) -> Elem {
        self.pow(x, e as i64).expect("non-negative exponent")
    }

    pub fn square(&self, x: Elem) -> Elem {
        self.mul(x, x)
    }

    pub fn product<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.one(), |acc, x| self.mul(acc, x))
    }

    pub fn sum<I: IntoIterator<Item = Elem>>(&self, xs: I) -> Elem {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(acc, x))
    }

    /// Generator of the multiplicative group with the smallest rep.
    pub fn primitive_element(&self) -> Elem {
        Elem(self.0.primitive)
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, x: Elem) -> Result<u32, FieldError> {
        if x.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.0.q - 1;
        let l = self.0.log[x.0 as usize];
        Ok(n / num_integer::gcd(n, l))
    }

    /// +1 on nonzero squares, -1 on non-squares, 0 at 0 (odd q only).
    pub fn quadratic_character(&self, x: Elem) -> Result<i8, FieldError> {
        if self.is_even() {
            return Err(FieldError::EvenCharacteristic);
        }
        if x.is_zero() {
            return Ok(0);
        }
        let e = (self.0.q as i64 - 1) / 2;
        let r = self.pow(x, e)?;
        Ok(if r == self.one() { 1 } else { -1 })
    }

    pub fn is_square(&self, x: Elem) -> bool {
        if self.is_even() || x.is_zero() {
            return true;
        }
        self.quadratic_character(x) == Ok(1)
    }

    /// A square root of `x`: `x^(q/2)` in characteristic 2, otherwise the
    /// root with the smaller rep (found by exhaustive search), or `None`.
    pub fn square_root(&self, x: Elem) -> Option<Elem> {
        if x.is_zero() {
            return Some(x);
        }
        if self.is_even() {
            return Some(self.pow_u(x, self.0.q as u64 / 2));
        }
        self.nonzero_elements().find(|&r| self.mul(r, r) == x)
    }

    /// The subfield GF(p^sub) as the fixed points of `x -> x^(p^sub)`, in
    /// ascending order.
    pub fn subfield_elements(&self, sub: u32) -> Result<Vec<Elem>, FieldError> {
        if sub == 0 || !self.0.m.is_multiple_of(sub) {
            return Err(FieldError::NotASubfieldDegree {
                sub,
                degree: self.0.m,
            });
        }
        let e = (self.0.p as u64).pow(sub);
        Ok(self.elements().filter(|&x| self.pow_u(x, e) == x).collect())
    }

    pub fn bind(&self, x: Elem) -> FieldElement {
        FieldElement {
            field: self.clone(),
            elem: x,
        }
    }

    /// Bound element from a rep.
    pub fn element(&self, rep: u64) -> Result<FieldElement, FieldError> {
        Ok(self.bind(self.elem(rep)?))
    }

    /// Text form accepted by [`FromStr`].
    pub fn spec_string(&self) -> String {
        let coeffs: Vec<String> = self.0.modulus.iter().map(|c| c.to_string()).collect();
        format!("q={},poly={}", self.0.q, coeffs.join(","))
    }
}

impl FieldData {
    fn build(p: u32, m: u32, q: u32, modulus: Vec<u32>) -> FieldData {
        let slow_mul = |a: u32, b: u32| -> u32 {
            let prod = poly::mul_mod(&digits(a, p, m), &digits(b, p, m), &modulus, p);
            let mut c = prod;
            c.resize(m as usize, 0);
            undigits(&c, p)
        };
        let slow_pow = |x: u32, mut e: u64| -> u32 {
            let mut result = 1u32;
            let mut sq = x;
            while e > 0 {
                if e & 1 == 1 {
                    result = slow_mul(result, sq);
                }
                sq = slow_mul(sq, sq);
                e >>= 1;
            }
            result
        };

        let n = q - 1;
        let factors = {
            let mut out = Vec::new();
            let mut rest = n;
            let mut d = 2;
            while d * d <= rest {
                if rest.is_multiple_of(d) {
                    out.push(d);
                    while rest.is_multiple_of(d) {
                        rest /= d;
                    }
                }
                d += 1;
            }
            if rest > 1 {
                out.push(rest);
            }
            out
        };
        let primitive = (1..q)
            .find(|&g| factors.iter().all(|&r| slow_pow(g, (n / r) as u64) != 1))
            .expect("the multiplicative group is cyclic");

        let mut exp = vec![0u32; 2 * n as usize];
        let mut log = vec![0u32; q as usize];
        let mut cur = 1u32;
        for i in 0..n {
            exp[i as usize] = cur;
            log[cur as usize] = i;
            cur = slow_mul(cur, primitive);
        }
        for i in n..2 * n {
            exp[i as usize] = exp[(i - n) as usize];
        }

        let neg = (0..q)
            .map(|x| {
                let c: Vec<u32> = digits(x, p, m).iter().map(|&d| (p - d) % p).collect();
                undigits(&c, p)
            })
            .collect();

        let mut data = FieldData {
            p,
            m,
            q,
            modulus,
            exp,
            log,
            neg,
            add_table: None,
            primitive,
        };
        if p != 2 && m > 1 && q <= ADD_TABLE_LIMIT {
            let mut table = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = data.add_digits(a, b) as u16;
                }
            }
            data.add_table = Some(table);
        }
        data
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.m {
            let s = (a % self.p + b % self.p) % self.p;
            out += s * place;
            place *= self.p;
            a /= self.p;
            b /= self.p;
        }
        out
    }
}

impl FromStr for Field {
    type Err = FieldError;

    /// `q=<p^m>` or `q=<p^m>,poly=<c0,c1,...,cm>`.
    fn from_str(s: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::BadFieldSpec(s.to_string());
        let s = s.trim();
        let rest = s.strip_prefix("q=").ok_or_else(bad)?;
        let (q_text, poly_text) = match rest.split_once(",poly=") {
            Some((a, b)) => (a, Some(b)),
            None => (rest, None),
        };
        let q: u32 = q_text.trim().parse().map_err(|_| bad())?;
        let (p, m) = prime_power(q).ok_or(FieldError::NonPrime(q))?;
        match poly_text {
            None => Field::new(p, m, None),
            Some(text) => {
                let coeffs = text
                    .split(',')
                    .map(|c| c.trim().parse::<u32>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| bad())?;
                Field::new(p, m, Some(&coeffs))
            }
        }
    }
}

/// An element together with its field; arithmetic checks that both operands
/// live in the same field.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    elem: Elem,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.elem.0, self.field)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elem(&self) -> Elem {
        self.elem
    }

    pub fn rep(&self) -> u32 {
        self.elem.0
    }

    fn same_field(&self, other: &FieldElement) -> Result<(), FieldError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(FieldError::FieldMismatch)
        }
    }

    fn with(&self, elem: Elem) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            elem,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.elem, other.elem)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.elem, other.elem)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement, FieldError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.elem, other.elem)))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.elem))
    }

    pub fn inv(&self) -> Result<FieldElement, FieldError> {
        Ok(self.with(self.field.inv(self.elem)?))
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement, FieldError> {
        Ok(self.with(self.field.pow(self.elem, e)?))
    }
}
