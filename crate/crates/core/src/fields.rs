//! Arithmetic in GF(p^m).
//!
//! Elements are stored as their canonical integer encoding in `[0, q)`: the
//! polynomial `c_0 + c_1 x + ... + c_{m-1} x^{m-1}` over GF(p) encodes as
//! `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`. Hot loops work on these raw `u32`
//! values through the [`Field`] methods; [`FieldElem`] is a checked handle for
//! API-level code.
//!
//! For `q <= 256` every operation is a table lookup. Larger fields fall back
//! to polynomial arithmetic on the base-`p` digits.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;
/// Largest supported extension degree.
pub const MAX_DEGREE: u32 = 8;
const TABLE_LIMIT: u32 = 256;

struct Tables {
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

/// A finite field GF(p^m) with a fixed irreducible modulus.
///
/// Immutable after construction; share it behind an `Arc`.
pub struct Field {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, little-endian, length `m + 1`.
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
            || (self.p == other.p && self.m == other.m && self.modulus == other.modulus)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.m == 1 {
            write!(f, "GF({})", self.p)
        } else {
            write!(f, "GF({}^{})", self.p, self.m)
        }
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, m)` with `q = p^m`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

// Polynomials over GF(p), little-endian, no trailing zeros (zero is empty).
fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let factor = (*r.last().unwrap() as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &bc) in b.iter().enumerate() {
            let sub = (bc as u64 * factor as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        poly_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime and small
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let quot = r / new_r;
        (t, new_t) = (new_t, t - quot * new_t);
        (r, new_r) = (new_r, r - quot * new_r);
    }
    t.rem_euclid(p as i64) as u32
}

fn digits(mut v: u32, p: u32, m: u32) -> Vec<u32> {
    (0..m)
        .map(|_| {
            let d = v % p;
            v /= p;
            d
        })
        .collect()
}

fn undigits(d: &[u32], p: u32) -> u32 {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for t in 0..count {
            let mut divisor = digits(t as u32, p, d as u32);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).is_empty() {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Builds GF(p^m) using the lexicographically smallest monic irreducible
    /// modulus (coefficients compared from the highest degree down).
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if m == 0 || m > MAX_DEGREE || (p as u64).checked_pow(m).is_none_or(|q| q > MAX_ORDER) {
            return Err(Error::UnsupportedSize { p, m });
        }
        let q = p.pow(m);
        // Numeric order of the low coefficients (c_{m-1} most significant)
        // is exactly the high-degree-first lexicographic order.
        let modulus = (0..q)
            .map(|t| {
                let mut poly = digits(t, p, m);
                poly.push(1);
                poly
            })
            .find(|poly| is_irreducible(poly, p))
            .expect("an irreducible polynomial of every degree exists");
        let mut field = Field { p, m, q, modulus, tables: None };
        if q <= TABLE_LIMIT {
            field.tables = Some(field.build_tables());
        }
        Ok(field)
    }

    /// Builds the field of order `q`, factoring it as `p^m`.
    pub fn from_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, m)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let mut add = vec![0u8; q * q];
        let mut mul = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        let mut inv = vec![0u8; q];
        for a in 0..self.q {
            neg[a as usize] = self.poly_neg(a) as u8;
            for b in 0..self.q {
                add[a as usize * q + b as usize] = self.poly_add(a, b) as u8;
                let prod = self.poly_mul(a, b);
                mul[a as usize * q + b as usize] = prod as u8;
                if prod == 1 {
                    inv[a as usize] = b as u8;
                }
            }
        }
        Tables { add, mul, neg, inv }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    /// The modulus as little-endian coefficients (monic, length `m + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    fn poly_add(&self, a: u32, b: u32) -> u32 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out
    }

    fn poly_neg(&self, a: u32) -> u32 {
        if self.m == 1 {
            return (self.p - a) % self.p;
        }
        let d: Vec<u32> = digits(a, self.p, self.m).iter().map(|&c| (self.p - c) % self.p).collect();
        undigits(&d, self.p)
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        if self.m == 1 {
            return (a as u64 * b as u64 % p) as u32;
        }
        let (da, db) = (digits(a, self.p, self.m), digits(b, self.p, self.m));
        let mut prod = vec![0u32; 2 * self.m as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p) as u32;
            }
        }
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.m as usize, 0);
        undigits(&r, self.p)
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.add[(a * self.q + b) as usize] as u32,
            None => self.poly_add(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize] as u32,
            None => self.poly_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => t.mul[(a * self.q + b) as usize] as u32,
            None => self.poly_mul(a, b),
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `DivisionByZero` on zero.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => t.inv[a as usize] as u32,
            None => self.pow(a, self.q as u64 - 2),
        })
    }

    /// Inverse of a value the caller knows to be nonzero.
    #[inline]
    pub(crate) fn inv_nonzero(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        match &self.tables {
            Some(t) => t.inv[a as usize] as u32,
            None => self.pow(a, self.q as u64 - 2),
        }
    }

    /// Checked handle for an encoded value.
    pub fn elem(&self, value: u32) -> Result<FieldElem<'_>> {
        if value >= self.q {
            return Err(Error::OutOfRange(format!("{value} is not an element of {self}")));
        }
        Ok(FieldElem { field: self, value })
    }

    pub fn zero(&self) -> FieldElem<'_> {
        FieldElem { field: self, value: 0 }
    }

    pub fn one(&self) -> FieldElem<'_> {
        FieldElem { field: self, value: 1 }
    }

    /// Decodes polynomial coefficients (little-endian, each in `[0, p)`).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElem<'_>> {
        if coeffs.len() > self.m as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::OutOfRange(format!("{coeffs:?} are not coefficients over {self}")));
        }
        Ok(FieldElem { field: self, value: undigits(coeffs, self.p) })
    }

    /// All `q` elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem<'_>> + '_ {
        (0..self.q).map(move |value| FieldElem { field: self, value })
    }
}

/// An element tied to its field. Operators panic on a field mismatch; the
/// `try_*` methods report it instead.
#[derive(Clone, Copy)]
pub struct FieldElem<'f> {
    field: &'f Field,
    value: u32,
}

impl<'f> FieldElem<'f> {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> &'f Field {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Little-endian polynomial coefficients, length `m`.
    pub fn coeffs(self) -> Vec<u32> {
        digits(self.value, self.field.p, self.field.m)
    }

    fn check(self, other: Self) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn try_add(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldElem { field: self.field, value: self.field.add(self.value, other.value) })
    }

    pub fn try_mul(self, other: Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldElem { field: self.field, value: self.field.mul(self.value, other.value) })
    }

    pub fn inv(self) -> Result<Self> {
        Ok(FieldElem { field: self.field, value: self.field.inv(self.value)? })
    }

    pub fn pow(self, e: u64) -> Self {
        FieldElem { field: self.field, value: self.field.pow(self.value, e) }
    }
}

impl PartialEq for FieldElem<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.value == other.value
    }
}

impl Eq for FieldElem<'_> {}

impl fmt::Debug for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.value, self.field)
    }
}

impl fmt::Display for FieldElem<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl<'f> Add for FieldElem<'f> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.try_add(rhs).expect("field mismatch")
    }
}

impl<'f> Sub for FieldElem<'f> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.try_add(-rhs).expect("field mismatch")
    }
}

impl<'f> Mul for FieldElem<'f> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(rhs).expect("field mismatch")
    }
}

impl<'f> Neg for FieldElem<'f> {
    type Output = Self;
    fn neg(self) -> Self {
        FieldElem { field: self.field, value: self.field.neg(self.value) }
    }
}
