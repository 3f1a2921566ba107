//! Exact arithmetic in finite fields `F_{p^n}`.
//!
//! A [`Field`] is a cheap-to-clone handle on a descriptor `(p, n, modulus)`.
//! The modulus is chosen deterministically: the least monic irreducible of
//! degree `n` over `F_p`, where polynomials are ordered by the base-`p`
//! value of their coefficient sequence (constant coefficient least
//! significant).  Two fields with equal `(p, n)` therefore carry identical
//! moduli and their elements interoperate.
//!
//! Elements are canonical coefficient vectors, so equality is coefficient-wise
//! and the derived ordering (highest-degree coefficient most significant) is
//! the ordering used everywhere a "least" element is selected.

mod poly;
mod ratfun;

pub use poly::Poly;
pub use ratfun::RationalFunction;

use crate::{Error, Result};
use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// Maximum extension degree.  Keeps every exhaustive enumeration at desk scale.
pub const MAX_DEGREE: usize = 16;

/// Coefficient buffer for one field element; entries beyond `n` are zero.
pub type ElemBuf = [u64; MAX_DEGREE];

#[derive(Debug)]
pub struct FieldData {
    p: u64,
    n: usize,
    /// Low `n` coefficients of the monic degree-`n` modulus.
    modulus: ElemBuf,
    order: u128,
}

/// Handle on a field descriptor `F_{p^n}`.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{{{}^{}}}", self.p(), self.n())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // deterministic construction: (p, n) pins the modulus
        self.p() == other.p() && self.n() == other.n()
    }
}
impl Eq for Field {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

// ---- dense F_p[x] helpers for modulus construction (small degrees only) ----

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Remainder of `a` modulo monic `m` over `F_p`.
fn fp_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r: Vec<u64> = a.to_vec();
    fp_trim(&mut r);
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = r[r.len() - 1];
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for j in 0..dm {
                let t = (lead as u128 * m[j] as u128) % p as u128;
                let idx = shift + j;
                r[idx] = ((r[idx] as u128 + p as u128 - t) % p as u128) as u64;
            }
        }
        r.pop();
        fp_trim(&mut r);
    }
    r
}

fn fp_is_divisible(a: &[u64], m: &[u64], p: u64) -> bool {
    fp_rem(a, m, p).is_empty()
}

/// Decode index `t` into the coefficient vector `(c_0, ..., c_{d-1})` base `p`.
fn decode_base_p(mut t: u128, p: u64, d: usize) -> Vec<u64> {
    let mut c = vec![0u64; d];
    for ci in c.iter_mut() {
        *ci = (t % p as u128) as u64;
        t /= p as u128;
    }
    c
}

/// Trial-division irreducibility for a monic polynomial over `F_p`.
fn fp_irreducible(cand: &[u64], p: u64) -> bool {
    let n = cand.len() - 1;
    for d in 1..=(n / 2) {
        let count = (p as u128).pow(d as u32);
        for t in 0..count {
            let mut div = decode_base_p(t, p, d);
            div.push(1);
            if fp_is_divisible(cand, &div, p) {
                return false;
            }
        }
    }
    true
}

impl Field {
    /// Constructs `F_{p^n}` with the deterministically least monic irreducible
    /// modulus of degree `n`.
    pub fn new(p: u64, n: u32) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let n = n as usize;
        if n < 1 || n > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange { p, n: n as u32 });
        }
        // keep p^n enumerable and products inside u128 accumulators
        if p >= 1 << 31 {
            return Err(Error::DegreeOutOfRange { p, n: n as u32 });
        }
        let order = (p as u128)
            .checked_pow(n as u32)
            .ok_or(Error::DegreeOutOfRange { p, n: n as u32 })?;

        let count = order;
        let mut modulus_low = None;
        for t in 0..count {
            let mut cand = decode_base_p(t, p, n);
            cand.push(1);
            if fp_irreducible(&cand, p) {
                cand.pop();
                modulus_low = Some(cand);
                break;
            }
        }
        // a monic irreducible of every degree exists over every F_p
        let low = modulus_low.expect("no irreducible modulus found");
        let mut modulus = [0u64; MAX_DEGREE];
        modulus[..n].copy_from_slice(&low);
        Ok(Field(Arc::new(FieldData { p, n, modulus, order })))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn n(&self) -> usize {
        self.0.n
    }

    /// Cardinality `p^n`.
    pub fn order(&self) -> u128 {
        self.0.order
    }

    /// Monic modulus as `n + 1` coefficients, constant term first.
    pub fn modulus_coeffs(&self) -> Vec<u64> {
        let mut v = self.0.modulus[..self.0.n].to_vec();
        v.push(1);
        v
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), c: [0; MAX_DEGREE] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_u64(1)
    }

    pub fn from_u64(&self, v: u64) -> FieldElement {
        let mut c = [0u64; MAX_DEGREE];
        c[0] = v % self.p();
        FieldElement { field: self.clone(), c }
    }

    pub fn from_int(&self, v: i64) -> FieldElement {
        let p = self.p() as i64;
        let r = ((v % p) + p) % p;
        self.from_u64(r as u64)
    }

    /// Element from coefficients, constant term first; values reduced mod `p`.
    pub fn elem(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.n() {
            return Err(Error::InvalidInput(format!(
                "{} coefficients given for an extension of degree {}",
                coeffs.len(),
                self.n()
            )));
        }
        let mut c = [0u64; MAX_DEGREE];
        for (i, &v) in coeffs.iter().enumerate() {
            c[i] = v % self.p();
        }
        Ok(FieldElement { field: self.clone(), c })
    }

    /// All field elements in ascending canonical order.
    pub fn elements(&self) -> ElementIter {
        ElementIter { field: self.clone(), cur: [0; MAX_DEGREE], remaining: self.order() }
    }

    /// The element at position `idx` in canonical order.
    pub fn nth_element(&self, idx: u128) -> FieldElement {
        let mut t = idx % self.order();
        let mut c = [0u64; MAX_DEGREE];
        for ci in c.iter_mut().take(self.n()) {
            *ci = (t % self.p() as u128) as u64;
            t /= self.p() as u128;
        }
        FieldElement { field: self.clone(), c }
    }

    /// True if `r` is a power `p^d` with `d >= 1`; returns `d`.
    pub fn power_of_p(&self, r: u64) -> Option<u32> {
        let p = self.p();
        let mut v = r;
        let mut d = 0;
        while v > 1 && v % p == 0 {
            v /= p;
            d += 1;
        }
        if v == 1 && d >= 1 {
            Some(d)
        } else {
            None
        }
    }

    pub(crate) fn data(&self) -> &FieldData {
        &self.0
    }

    // ---- raw buffer kernels (no owner bookkeeping, used by hot loops) ----

    pub(crate) fn add_raw(&self, a: &ElemBuf, b: &ElemBuf) -> ElemBuf {
        let d = self.data();
        let mut c = [0u64; MAX_DEGREE];
        for i in 0..d.n {
            let s = a[i] + b[i];
            c[i] = if s >= d.p { s - d.p } else { s };
        }
        c
    }

    pub(crate) fn sub_raw(&self, a: &ElemBuf, b: &ElemBuf) -> ElemBuf {
        let d = self.data();
        let mut c = [0u64; MAX_DEGREE];
        for i in 0..d.n {
            c[i] = if a[i] >= b[i] { a[i] - b[i] } else { a[i] + d.p - b[i] };
        }
        c
    }

    pub(crate) fn neg_raw(&self, a: &ElemBuf) -> ElemBuf {
        let d = self.data();
        let mut c = [0u64; MAX_DEGREE];
        for i in 0..d.n {
            c[i] = if a[i] == 0 { 0 } else { d.p - a[i] };
        }
        c
    }

    pub(crate) fn mul_raw(&self, a: &ElemBuf, b: &ElemBuf) -> ElemBuf {
        let d = self.data();
        let n = d.n;
        let p = d.p as u128;
        let mut acc = [0u128; 2 * MAX_DEGREE];
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            let ai = a[i] as u128;
            for j in 0..n {
                acc[i + j] += ai * b[j] as u128;
            }
        }
        // reduce by the monic modulus, top degree down
        for i in (n..2 * n - 1).rev() {
            let lead = acc[i] % p;
            acc[i] = 0;
            if lead != 0 {
                let neg = p - lead;
                for j in 0..n {
                    acc[i - n + j] += neg * d.modulus[j] as u128;
                }
            }
        }
        let mut c = [0u64; MAX_DEGREE];
        for i in 0..n {
            c[i] = (acc[i] % p) as u64;
        }
        c
    }

    pub(crate) fn is_zero_raw(&self, a: &ElemBuf) -> bool {
        a[..self.data().n].iter().all(|&x| x == 0)
    }

    pub(crate) fn inv_raw(&self, a: &ElemBuf) -> Result<ElemBuf> {
        let d = self.data();
        if self.is_zero_raw(a) {
            return Err(Error::DivisionByZero);
        }
        let p = d.p;
        // extended Euclid in F_p[x]: invert a modulo the field modulus
        let mut r0: Vec<u64> = d.modulus[..d.n].to_vec();
        r0.push(1);
        let mut r1: Vec<u64> = a[..d.n].to_vec();
        fp_trim(&mut r1);
        let mut s0: Vec<u64> = vec![];
        let mut s1: Vec<u64> = vec![1];
        while !r1.is_empty() {
            let (q, r) = fp_divrem(&r0, &r1, p);
            let qs1 = fp_mul(&q, &s1, p);
            let s = fp_sub(&s0, &qs1, p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
        }
        // r0 = gcd, a unit constant since the modulus is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = inv_mod_u64(r0[0], p);
        let mut out = [0u64; MAX_DEGREE];
        for (i, &v) in s0.iter().enumerate() {
            out[i] = (v as u128 * c as u128 % p as u128) as u64;
        }
        Ok(out)
    }

    pub(crate) fn pow_raw(&self, a: &ElemBuf, mut e: u128) -> ElemBuf {
        let mut base = *a;
        let mut acc = self.one().c;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(&acc, &base);
            }
            base = self.mul_raw(&base, &base);
            e >>= 1;
        }
        acc
    }
}

fn inv_mod_u64(a: u64, p: u64) -> u64 {
    // extended Euclid on integers
    let (mut old_r, mut r) = (a as i128, p as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        old_r -= q * r;
        std::mem::swap(&mut old_r, &mut r);
        old_s -= q * s;
        std::mem::swap(&mut old_s, &mut s);
    }
    (((old_s % p as i128) + p as i128) % p as i128) as u64
}

fn fp_divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let binv = inv_mod_u64(b[db], p);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db || (r.len() == db + 1) {
        if r.len() < db + 1 {
            break;
        }
        let shift = r.len() - 1 - db;
        let coef = (r[r.len() - 1] as u128 * binv as u128 % p as u128) as u64;
        q[shift] = coef;
        for j in 0..=db {
            let t = (coef as u128 * b[j] as u128) % p as u128;
            r[shift + j] = ((r[shift + j] as u128 + p as u128 - t) % p as u128) as u64;
        }
        fp_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    fp_trim(&mut q);
    (q, r)
}

fn fp_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] = ((out[i + j] as u128 + ai as u128 * bj as u128) % p as u128) as u64;
        }
    }
    fp_trim(&mut out);
    out
}

fn fp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let av = a.get(i).copied().unwrap_or(0);
        let bv = b.get(i).copied().unwrap_or(0);
        *o = ((av as u128 + p as u128 - bv as u128) % p as u128) as u64;
    }
    fp_trim(&mut out);
    out
}

/// Iterator over all field elements in ascending canonical order.
pub struct ElementIter {
    field: Field,
    cur: ElemBuf,
    remaining: u128,
}

impl Iterator for ElementIter {
    type Item = FieldElement;

    fn next(&mut self) -> Option<FieldElement> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let out = FieldElement { field: self.field.clone(), c: self.cur };
        // odometer increment
        let p = self.field.p();
        for digit in self.cur.iter_mut().take(self.field.n()) {
            *digit += 1;
            if *digit < p {
                break;
            }
            *digit = 0;
        }
        Some(out)
    }
}

/// Element of `F_{p^n}` in canonical reduced form.
#[derive(Clone)]
pub struct FieldElement {
    field: Field,
    c: ElemBuf,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.field.n() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.c[i])?;
        }
        write!(f, "]")
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.c == other.c
    }
}
impl Eq for FieldElement {}

impl std::hash::Hash for FieldElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    /// Canonical order: base-`p` value of the coefficient sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        for i in (0..MAX_DEGREE).rev() {
            match self.c[i].cmp(&other.c[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.c[..self.field.n()].to_vec()
    }

    pub(crate) fn buf(&self) -> &ElemBuf {
        &self.c
    }

    pub(crate) fn from_buf(field: &Field, c: ElemBuf) -> FieldElement {
        FieldElement { field: field.clone(), c }
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero_raw(&self.c)
    }

    fn check_same(&self, other: &FieldElement) {
        assert!(self.field == other.field, "elements belong to different fields");
    }

    pub fn add(&self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement { field: self.field.clone(), c: self.field.add_raw(&self.c, &rhs.c) }
    }

    pub fn sub(&self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement { field: self.field.clone(), c: self.field.sub_raw(&self.c, &rhs.c) }
    }

    pub fn mul(&self, rhs: &FieldElement) -> FieldElement {
        self.check_same(rhs);
        FieldElement { field: self.field.clone(), c: self.field.mul_raw(&self.c, &rhs.c) }
    }

    pub fn neg(&self) -> FieldElement {
        FieldElement { field: self.field.clone(), c: self.field.neg_raw(&self.c) }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement { field: self.field.clone(), c: self.field.inv_raw(&self.c)? })
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.check_same(rhs);
        let inv = self.field.inv_raw(&rhs.c)?;
        Ok(FieldElement { field: self.field.clone(), c: self.field.mul_raw(&self.c, &inv) })
    }

    pub fn pow(&self, e: u128) -> FieldElement {
        FieldElement { field: self.field.clone(), c: self.field.pow_raw(&self.c, e) }
    }

    /// `x^r` for `r` a power of the characteristic.
    pub fn frobenius(&self, r: u64) -> Result<FieldElement> {
        match self.field.power_of_p(r) {
            Some(_) => Ok(self.pow(r as u128)),
            None => Err(Error::NotPowerOfP { r, p: self.field.p() }),
        }
    }

    /// Trace down to `sub`: `sum_j x^{|sub|^j}`, returned as an element of `sub`.
    pub fn trace_to(&self, sub: &Field) -> Result<FieldElement> {
        let emb = Embedding::new(sub, &self.field)?;
        let steps = self.field.n() / sub.n();
        let s = sub.order();
        let mut acc = self.field.zero();
        let mut term = self.clone();
        for _ in 0..steps {
            acc = acc.add(&term);
            term = term.pow(s);
        }
        emb.preimage(&acc).ok_or(Error::Inconsistent("trace left the subfield".into()))
    }

    /// Exponent in `Z/p` of the additive character `chi_self(rhs)`,
    /// i.e. `tr_{F_q/F_p}(self * rhs)`.
    pub fn additive_character(&self, alpha: &FieldElement) -> Result<u32> {
        self.check_same(alpha);
        let prime = Field::new(self.field.p(), 1)?;
        let t = self.mul(alpha).trace_to(&prime)?;
        Ok(t.coeffs()[0] as u32)
    }

    /// Quadratic character: `0` on zero, `+1` on nonzero squares, `-1` otherwise.
    pub fn quadratic_character(&self) -> Result<i8> {
        if self.field.p() == 2 {
            return Err(Error::EvenCharacteristic);
        }
        if self.is_zero() {
            return Ok(0);
        }
        let e = (self.field.order() - 1) / 2;
        let v = self.pow(e);
        if v == self.field.one() {
            Ok(1)
        } else {
            Ok(-1)
        }
    }
}

macro_rules! elem_binop {
    ($trait:ident, $m:ident) => {
        impl std::ops::$trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $m(self, rhs: &FieldElement) -> FieldElement {
                FieldElement::$m(self, rhs)
            }
        }
    };
}
elem_binop!(Add, add);
elem_binop!(Sub, sub);
elem_binop!(Mul, mul);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement::neg(self)
    }
}

/// Canonical subfield embedding `F_{p^m} -> F_{p^n}` (`m | n`): the generator
/// of the subfield maps to the least root of the subfield modulus.
pub struct Embedding {
    sub: Field,
    sup: Field,
    /// powers of the image generator: gen^0 .. gen^(m-1)
    powers: Vec<ElemBuf>,
    back: HashMap<ElemBuf, ElemBuf>,
}

impl Embedding {
    pub fn new(sub: &Field, sup: &Field) -> Result<Embedding> {
        if sub.p() != sup.p() || sup.n() % sub.n() != 0 {
            return Err(Error::NotASubfield);
        }
        let m = sub.n();
        if sub == sup {
            // identity embedding
            let mut powers = Vec::with_capacity(m);
            let mut gbuf = [0u64; MAX_DEGREE];
            gbuf[if m > 1 { 1 } else { 0 }] = if m > 1 { 1 } else { 1 };
            if m == 1 {
                gbuf = sup.one().c;
            }
            let mut acc = sup.one().c;
            for _ in 0..m {
                powers.push(acc);
                acc = sup.mul_raw(&acc, &gbuf);
            }
            let mut back = HashMap::new();
            for x in sub.elements() {
                back.insert(x.c, x.c);
            }
            return Ok(Embedding { sub: sub.clone(), sup: sup.clone(), powers, back });
        }
        // least root of the subfield modulus inside sup, by ascending scan
        let modulus = sub.modulus_coeffs();
        let root = sup
            .elements()
            .find(|x| {
                // Horner evaluation of the modulus at x
                let mut acc = sup.zero();
                for &c in modulus.iter().rev() {
                    acc = acc.mul(x);
                    acc = acc.add(&sup.from_u64(c));
                }
                acc.is_zero()
            })
            .ok_or(Error::NotASubfield)?;
        let mut powers = Vec::with_capacity(m);
        let mut acc = sup.one().c;
        for _ in 0..m {
            powers.push(acc);
            acc = sup.mul_raw(&acc, &root.c);
        }
        let emb = Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            powers,
            back: HashMap::new(),
        };
        let mut back = HashMap::with_capacity(sub.order() as usize);
        for x in sub.elements() {
            back.insert(emb.apply(&x).c, x.c);
        }
        Ok(Embedding { back, ..emb })
    }

    pub fn sub(&self) -> &Field {
        &self.sub
    }

    pub fn sup(&self) -> &Field {
        &self.sup
    }

    pub fn apply(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.sub, "element not in the embedding source");
        let mut acc = [0u64; MAX_DEGREE];
        for i in 0..self.sub.n() {
            if x.c[i] == 0 {
                continue;
            }
            let mut scaled = [0u64; MAX_DEGREE];
            scaled[0] = x.c[i];
            let term = self.sup.mul_raw(&self.powers[i], &scaled);
            acc = self.sup.add_raw(&acc, &term);
        }
        FieldElement { field: self.sup.clone(), c: acc }
    }

    /// Inverse image, if the element lies in the embedded subfield.
    pub fn preimage(&self, y: &FieldElement) -> Option<FieldElement> {
        assert!(y.field() == &self.sup, "element not in the embedding target");
        self.back.get(&y.c).map(|c| FieldElement { field: self.sub.clone(), c: *c })
    }
}

/// Named field operation, for dispatch from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Inv,
    Neg,
}

/// Validated binary/unary arithmetic on elements, for the CLI front end.
pub fn field_arithmetic(
    x: &FieldElement,
    y: Option<&FieldElement>,
    op: FieldOp,
    exponent: Option<u128>,
) -> Result<FieldElement> {
    let need_y = matches!(op, FieldOp::Add | FieldOp::Sub | FieldOp::Mul | FieldOp::Div);
    if need_y {
        let y = y.ok_or_else(|| Error::InvalidInput("missing second operand".into()))?;
        if x.field() != y.field() {
            return Err(Error::MismatchedFields);
        }
        return match op {
            FieldOp::Add => Ok(x.add(y)),
            FieldOp::Sub => Ok(x.sub(y)),
            FieldOp::Mul => Ok(x.mul(y)),
            FieldOp::Div => x.div(y),
            _ => unreachable!(),
        };
    }
    match op {
        FieldOp::Neg => Ok(x.neg()),
        FieldOp::Inv => x.inv(),
        FieldOp::Pow => {
            let e = exponent.ok_or_else(|| Error::InvalidInput("missing exponent".into()))?;
            Ok(x.pow(e))
        }
        _ => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_is_least_irreducible() {
        // degree-1 case: modulus is x
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f2.modulus_coeffs(), vec![0, 1]);

        // oracle: enumerate monic quadratics over F_3 in canonical order and
        // trial-factor to find the least irreducible
        let p = 3u64;
        let mut expect = None;
        'outer: for t in 0..9u64 {
            let c0 = t % 3;
            let c1 = t / 3;
            for r in 0..p {
                if (r * r + c1 * r + c0) % p == 0 {
                    continue 'outer;
                }
            }
            expect = Some(vec![c0, c1, 1]);
            break;
        }
        assert_eq!(expect, Some(vec![1, 0, 1])); // x^2 + 1
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(f9.modulus_coeffs(), expect.unwrap());

        // same enumeration oracle over F_5
        let mut expect5 = None;
        'outer5: for t in 0..25u64 {
            let c0 = t % 5;
            let c1 = t / 5;
            for r in 0..5u64 {
                if (r * r + c1 * r + c0) % 5 == 0 {
                    continue 'outer5;
                }
            }
            expect5 = Some(vec![c0, c1, 1]);
            break;
        }
        assert_eq!(expect5, Some(vec![2, 0, 1])); // x^2 + 2
        let f25 = Field::new(5, 2).unwrap();
        assert_eq!(f25.modulus_coeffs(), expect5.unwrap());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Field::new(4, 1), Err(Error::NotPrime(4)).map(|_: Field| unreachable!()));
        assert!(Field::new(3, 0).is_err());
        assert!(Field::new(3, 17).is_err());
    }

    #[test]
    fn basic_arithmetic() {
        let f5 = Field::new(5, 1).unwrap();
        let two = f5.from_u64(2);
        assert_eq!(two.inv().unwrap(), f5.from_u64(3));

        // in F_9 = F_3[i]/(i^2+1): i*i = -1 = 2
        let f9 = Field::new(3, 2).unwrap();
        let i = f9.elem(&[0, 1]).unwrap();
        assert_eq!(i.mul(&i), f9.from_u64(2));

        // g^(p^n - 1) = 1 for every nonzero g
        for g in f9.elements().filter(|g| !g.is_zero()) {
            assert_eq!(g.pow(8), f9.one());
        }
        assert!(f9.zero().inv().is_err());
    }

    #[test]
    fn frobenius_examples() {
        let f9 = Field::new(3, 2).unwrap();
        let i = f9.elem(&[0, 1]).unwrap();
        assert_eq!(i.frobenius(3).unwrap(), i.neg());
        for x in f9.elements() {
            assert_eq!(x.frobenius(9).unwrap(), x);
        }
        let c = f9.from_u64(2);
        assert_eq!(c.frobenius(3).unwrap(), c);
        assert!(i.frobenius(6).is_err());
    }

    #[test]
    fn frobenius_is_automorphism() {
        let f = Field::new(5, 2).unwrap();
        let xs: Vec<_> = f.elements().collect();
        for a in xs.iter().step_by(3) {
            for b in xs.iter().step_by(5) {
                let fr = |x: &FieldElement| x.frobenius(5).unwrap();
                assert_eq!(fr(&a.add(b)), fr(a).add(&fr(b)));
                assert_eq!(fr(&a.mul(b)), fr(a).mul(&fr(b)));
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f9 = Field::new(3, 2).unwrap();
        let f3 = Field::new(3, 1).unwrap();
        let i = f9.elem(&[0, 1]).unwrap();
        assert_eq!(i.trace_to(&f3).unwrap(), f3.zero());

        // trace of 1 from F_{p^n} to F_p is n mod p
        let f8 = Field::new(2, 3).unwrap();
        let f2 = Field::new(2, 1).unwrap();
        assert_eq!(f8.one().trace_to(&f2).unwrap(), f2.from_u64(3 % 2));

        // surjectivity: every target c in F_3 is hit from F_9
        for c in f3.elements() {
            assert!(f9.elements().any(|x| x.trace_to(&f3).unwrap() == c));
        }
        assert!(f9.one().trace_to(&Field::new(2, 1).unwrap()).is_err());
    }

    #[test]
    fn trace_linear_and_surjective_exhaustive() {
        // every subfield pair with |F_q| <= 81
        for (p, n, m) in [(2u64, 4u32, 2u32), (2, 6, 3), (3, 2, 1), (3, 4, 2), (5, 2, 1), (7, 2, 1), (3, 3, 1)] {
            let sup = Field::new(p, n).unwrap();
            let sub = Field::new(p, m).unwrap();
            let emb = Embedding::new(&sub, &sup).unwrap();
            // F_sub-linearity: tr(x + y) = tr(x) + tr(y), tr(c·x) = c·tr(x)
            let elements: Vec<FieldElement> = sup.elements().collect();
            for (i, x) in elements.iter().enumerate() {
                let y = &elements[(i * 7 + 3) % elements.len()];
                let lhs = x.add(y).trace_to(&sub).unwrap();
                let rhs = x.trace_to(&sub).unwrap().add(&y.trace_to(&sub).unwrap());
                assert_eq!(lhs, rhs);
            }
            for c in sub.elements() {
                let cx = emb.apply(&c).mul(&elements[1]);
                let lhs = cx.trace_to(&sub).unwrap();
                let rhs = c.mul(&elements[1].trace_to(&sub).unwrap());
                assert_eq!(lhs, rhs);
            }
            // surjectivity onto the subfield
            let mut hit: std::collections::HashSet<Vec<u64>> = Default::default();
            for x in sup.elements() {
                hit.insert(x.trace_to(&sub).unwrap().coeffs());
            }
            assert_eq!(hit.len() as u128, sub.order());
        }
    }

    #[test]
    fn additive_character_is_additive() {
        let f9 = Field::new(3, 2).unwrap();
        let beta = f9.elem(&[1, 2]).unwrap();
        // chi_0 is trivial
        for a in f9.elements() {
            assert_eq!(f9.zero().additive_character(&a).unwrap(), 0);
        }
        assert_eq!(beta.additive_character(&f9.zero()).unwrap(), 0);
        for a in f9.elements() {
            for b in f9.elements() {
                let lhs = beta.additive_character(&a.add(&b)).unwrap();
                let rhs =
                    (beta.additive_character(&a).unwrap() + beta.additive_character(&b).unwrap()) % 3;
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn quadratic_character_examples() {
        let f5 = Field::new(5, 1).unwrap();
        assert_eq!(f5.zero().quadratic_character().unwrap(), 0);
        assert_eq!(f5.from_u64(4).quadratic_character().unwrap(), 1);
        assert_eq!(f5.from_u64(2).quadratic_character().unwrap(), -1);
        // oracle: squares mod 5 are exactly {1, 4}
        let squares: std::collections::HashSet<u64> = (1..5u64).map(|x| x * x % 5).collect();
        for x in 1..5u64 {
            let expect = if squares.contains(&x) { 1 } else { -1 };
            assert_eq!(f5.from_u64(x).quadratic_character().unwrap(), expect);
        }
        let f4 = Field::new(2, 2).unwrap();
        assert!(f4.one().quadratic_character().is_err());
    }

    #[test]
    fn field_axioms_randomized() {
        let mut rng = 0x2545F4914F6CDD1Du64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for (p, n) in [(2, 4), (3, 3), (5, 2), (7, 1), (13, 2)] {
            let f = Field::new(p, n).unwrap();
            let order = f.order() as u64;
            let pick = |r: u64| {
                let mut coeffs = vec![0u64; n as usize];
                let mut t = r % order;
                for c in coeffs.iter_mut() {
                    *c = t % p;
                    t /= p;
                }
                f.elem(&coeffs).unwrap()
            };
            for _ in 0..40 {
                let a = pick(next());
                let b = pick(next());
                let c = pick(next());
                assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
                assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
                assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
                assert_eq!(a.add(&a.neg()), f.zero());
                if !a.is_zero() {
                    assert_eq!(a.mul(&a.inv().unwrap()), f.one());
                }
            }
        }
    }

    #[test]
    fn embedding_roundtrip() {
        let f3 = Field::new(3, 1).unwrap();
        let f81 = Field::new(3, 4).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        let emb = Embedding::new(&f9, &f81).unwrap();
        for x in f9.elements() {
            let y = emb.apply(&x);
            assert_eq!(emb.preimage(&y).unwrap(), x);
        }
        // embedding is a ring homomorphism
        for x in f9.elements().step_by(2) {
            for y in f9.elements().step_by(3) {
                assert_eq!(emb.apply(&x.mul(&y)), emb.apply(&x).mul(&emb.apply(&y)));
                assert_eq!(emb.apply(&x.add(&y)), emb.apply(&x).add(&emb.apply(&y)));
            }
        }
        assert!(Embedding::new(&f81, &f9).is_err());
        assert!(Embedding::new(&f3, &Field::new(2, 2).unwrap()).is_err());
    }
}
