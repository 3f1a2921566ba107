//! Dense univariate polynomials over a finite field.

use super::{ElemBuf, Field, FieldElement, MAX_DEGREE};
use crate::{Error, Result};
use std::fmt;

const KARATSUBA_CUTOFF: usize = 32;

/// Polynomial in one variable, coefficients low degree first, trailing zeros
/// stripped (the zero polynomial has no coefficients).
#[derive(Clone)]
pub struct Poly {
    field: Field,
    coeffs: Vec<ElemBuf>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if self.field.is_zero_raw(c) {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let e = FieldElement::from_buf(&self.field, *c);
            match i {
                0 => write!(f, "{:?}", e)?,
                1 => write!(f, "{:?}*u", e)?,
                _ => write!(f, "{:?}*u^{}", e, i)?,
            }
        }
        Ok(())
    }
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Poly {
        let field = c.field().clone();
        let mut p = Poly { field, coeffs: vec![*c.buf()] };
        p.trim();
        p
    }

    /// The monomial `c * x^d`.
    pub fn monomial(c: FieldElement, d: usize) -> Poly {
        let field = c.field().clone();
        if c.is_zero() {
            return Poly::zero(&field);
        }
        let mut coeffs = vec![[0u64; MAX_DEGREE]; d + 1];
        coeffs[d] = *c.buf();
        Poly { field, coeffs }
    }

    /// The variable `x`.
    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field.one(), 1)
    }

    pub fn from_elements(field: &Field, coeffs: &[FieldElement]) -> Poly {
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            assert!(c.field() == field, "coefficient from a different field");
            out.push(*c.buf());
        }
        let mut p = Poly { field: field.clone(), coeffs: out };
        p.trim();
        p
    }

    /// Integer coefficients reduced into the field, constant term first.
    pub fn from_int_coeffs(field: &Field, coeffs: &[i64]) -> Poly {
        let elems: Vec<FieldElement> = coeffs.iter().map(|&v| field.from_int(v)).collect();
        Poly::from_elements(field, &elems)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn trim(&mut self) {
        while let Some(last) = self.coeffs.last() {
            if self.field.is_zero_raw(last) {
                self.coeffs.pop();
            } else {
                break;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        if i < self.coeffs.len() {
            FieldElement::from_buf(&self.field, self.coeffs[i])
        } else {
            self.field.zero()
        }
    }

    pub fn coefficients(&self) -> Vec<FieldElement> {
        self.coeffs.iter().map(|c| FieldElement::from_buf(&self.field, *c)).collect()
    }

    pub fn leading_coeff(&self) -> FieldElement {
        match self.coeffs.last() {
            Some(c) => FieldElement::from_buf(&self.field, *c),
            None => self.field.zero(),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff() == self.field.one()
    }

    fn check_same(&self, other: &Poly) {
        assert!(self.field == other.field, "polynomials over different fields");
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        let zero = [0u64; MAX_DEGREE];
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = rhs.coeffs.get(i).unwrap_or(&zero);
            out.push(self.field.add_raw(a, b));
        }
        let mut p = Poly { field: self.field.clone(), coeffs: out };
        p.trim();
        p
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        let zero = [0u64; MAX_DEGREE];
        for i in 0..n {
            let a = self.coeffs.get(i).unwrap_or(&zero);
            let b = rhs.coeffs.get(i).unwrap_or(&zero);
            out.push(self.field.sub_raw(a, b));
        }
        let mut p = Poly { field: self.field.clone(), coeffs: out };
        p.trim();
        p
    }

    pub fn neg(&self) -> Poly {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg_raw(c)).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let coeffs = mul_rec(&self.field, &self.coeffs, &rhs.coeffs);
        let mut p = Poly { field: self.field.clone(), coeffs };
        p.trim();
        p
    }

    pub fn mul_elem(&self, c: &FieldElement) -> Poly {
        assert!(c.field() == &self.field);
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let coeffs = self.coeffs.iter().map(|a| self.field.mul_raw(a, c.buf())).collect();
        Poly { field: self.field.clone(), coeffs }
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![[0u64; MAX_DEGREE]; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, rhs: &Poly) -> Result<(Poly, Poly)> {
        self.check_same(rhs);
        let db = rhs.degree().ok_or(Error::DivisionByZero)?;
        let mut r = self.coeffs.clone();
        if r.len() < db + 1 {
            return Ok((Poly::zero(&self.field), self.clone()));
        }
        let binv = rhs.leading_coeff().inv()?;
        let mut q = vec![[0u64; MAX_DEGREE]; r.len() - db];
        let f = &self.field;
        let mut top = r.len();
        while top > db {
            let lead = r[top - 1];
            if !f.is_zero_raw(&lead) {
                let coef = f.mul_raw(&lead, binv.buf());
                let shift = top - 1 - db;
                q[shift] = coef;
                for j in 0..=db {
                    let t = f.mul_raw(&coef, &rhs.coeffs[j]);
                    r[shift + j] = f.sub_raw(&r[shift + j], &t);
                }
            }
            top -= 1;
        }
        let mut qp = Poly { field: f.clone(), coeffs: q };
        qp.trim();
        let mut rp = Poly { field: f.clone(), coeffs: r[..db.min(r.len())].to_vec() };
        rp.trim();
        Ok((qp, rp))
    }

    pub fn rem(&self, rhs: &Poly) -> Result<Poly> {
        Ok(self.divrem(rhs)?.1)
    }

    /// Exact division; errors if the remainder is nonzero.
    pub fn div_exact(&self, rhs: &Poly) -> Result<Poly> {
        let (q, r) = self.divrem(rhs)?;
        if !r.is_zero() {
            return Err(Error::NotExact("polynomial division left a remainder".into()));
        }
        Ok(q)
    }

    /// Monic normalization (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        self.mul_elem(&self.leading_coeff().inv().expect("nonzero leading coefficient"))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        self.check_same(rhs);
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = std::mem::replace(&mut b, r);
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for i in 1..self.coeffs.len() {
            let mut scale = [0u64; MAX_DEGREE];
            scale[0] = (i as u64) % f.p();
            out.push(f.mul_raw(&self.coeffs[i], &scale));
        }
        let mut p = Poly { field: f.clone(), coeffs: out };
        p.trim();
        p
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        assert!(x.field() == &self.field);
        let f = &self.field;
        let mut acc = [0u64; MAX_DEGREE];
        for c in self.coeffs.iter().rev() {
            acc = f.mul_raw(&acc, x.buf());
            acc = f.add_raw(&acc, c);
        }
        FieldElement::from_buf(f, acc)
    }

    /// Substitute `x + c` for the variable.
    pub fn shift_variable(&self, c: &FieldElement) -> Poly {
        assert!(c.field() == &self.field);
        let lin = Poly::from_elements(&self.field, &[c.clone(), self.field.one()]);
        let mut acc = Poly::zero(&self.field);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(&lin);
            acc = acc.add(&Poly::constant(FieldElement::from_buf(&self.field, *coeff)));
        }
        acc
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.check_same(inner);
        let mut acc = Poly::zero(&self.field);
        for coeff in self.coeffs.iter().rev() {
            acc = acc.mul(inner);
            acc = acc.add(&Poly::constant(FieldElement::from_buf(&self.field, *coeff)));
        }
        acc
    }

    /// Coefficient-wise image under a subfield embedding.
    pub fn map_into(&self, emb: &super::Embedding) -> Poly {
        let coeffs: Vec<FieldElement> = self
            .coeffs
            .iter()
            .map(|c| emb.apply(&FieldElement::from_buf(&self.field, *c)))
            .collect();
        Poly::from_elements(emb.sup(), &coeffs)
    }

    /// `p`-th root of a polynomial all of whose exponents are multiples of `p`.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.p() as usize;
        let inv_frob = f.order() / f.p() as u128; // x -> x^(order/p) inverts Frobenius
        let mut out = vec![];
        let mut i = 0;
        while i < self.coeffs.len() {
            let e = FieldElement::from_buf(f, self.coeffs[i]);
            out.push(e.pow(inv_frob));
            i += p;
        }
        Poly::from_elements(f, &out)
    }

    /// Squarefree decomposition `self = lc * prod_i g_i^i` with the `g_i`
    /// monic, squarefree and pairwise coprime; returns `(g_i, i)` pairs with
    /// `g_i` nonconstant.  Correct in characteristic `p` (perfect base field).
    pub fn squarefree_decomposition(&self) -> Vec<(Poly, u64)> {
        let mut out: Vec<(Poly, u64)> = vec![];
        self.squarefree_inner(1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        out
    }

    fn squarefree_inner(&self, mult_scale: u64, out: &mut Vec<(Poly, u64)>) {
        let f = self.monic();
        if f.degree().unwrap_or(0) == 0 {
            return;
        }
        let deriv = f.derivative();
        if deriv.is_zero() {
            // f = h(x^p); recurse on the p-th root with multiplicities scaled
            f.pth_root().squarefree_inner(mult_scale * self.field.p(), out);
            return;
        }
        // u holds factors with one copy removed per peeled level; v_i is the
        // product of distinct factors of multiplicity >= i prime to p.
        let mut u = f.gcd(&deriv);
        let mut v = f.div_exact(&u).expect("gcd divides");
        let mut i = 1u64;
        while v.degree().unwrap_or(0) > 0 {
            let v_next = u.gcd(&v);
            let chunk = v.div_exact(&v_next).expect("gcd divides");
            if chunk.degree().unwrap_or(0) > 0 {
                out.push((chunk, i * mult_scale));
            }
            u = u.div_exact(&v_next).expect("gcd divides");
            v = v_next;
            i += 1;
        }
        if u.degree().unwrap_or(0) > 0 {
            // leftover is the p-th-power part
            u.pth_root().squarefree_inner(mult_scale * self.field.p(), out);
        }
    }

    /// All roots in the given field (scanned exhaustively), ascending.
    pub fn roots_in(&self, ambient: &Field) -> Result<Vec<FieldElement>> {
        let local = if ambient == &self.field {
            self.clone()
        } else {
            let emb = super::Embedding::new(&self.field, ambient)?;
            self.map_into(&emb)
        };
        Ok(ambient.elements().filter(|x| local.eval(x).is_zero()).collect())
    }
}

fn mul_school(field: &Field, a: &[ElemBuf], b: &[ElemBuf]) -> Vec<ElemBuf> {
    let mut out = vec![[0u64; MAX_DEGREE]; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if field.is_zero_raw(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let t = field.mul_raw(ai, bj);
            out[i + j] = field.add_raw(&out[i + j], &t);
        }
    }
    out
}

fn mul_rec(field: &Field, a: &[ElemBuf], b: &[ElemBuf]) -> Vec<ElemBuf> {
    if a.len().min(b.len()) < KARATSUBA_CUTOFF {
        return mul_school(field, a, b);
    }
    let m = a.len().max(b.len()) / 2;
    let (a0, a1) = a.split_at(m.min(a.len()));
    let (b0, b1) = b.split_at(m.min(b.len()));
    let add_slices = |x: &[ElemBuf], y: &[ElemBuf]| -> Vec<ElemBuf> {
        let n = x.len().max(y.len());
        let zero = [0u64; MAX_DEGREE];
        (0..n)
            .map(|i| field.add_raw(x.get(i).unwrap_or(&zero), y.get(i).unwrap_or(&zero)))
            .collect()
    };
    let z0 = if a0.is_empty() || b0.is_empty() { vec![] } else { mul_rec(field, a0, b0) };
    let z2 = if a1.is_empty() || b1.is_empty() { vec![] } else { mul_rec(field, a1, b1) };
    let sa = add_slices(a0, a1);
    let sb = add_slices(b0, b1);
    let mut z1 = mul_rec(field, &sa, &sb);
    // z1 -= z0 + z2
    for (i, v) in z0.iter().enumerate() {
        z1[i] = field.sub_raw(&z1[i], v);
    }
    for (i, v) in z2.iter().enumerate() {
        if i < z1.len() {
            z1[i] = field.sub_raw(&z1[i], v);
        }
    }
    let mut out = vec![[0u64; MAX_DEGREE]; a.len() + b.len() - 1];
    for (i, v) in z0.iter().enumerate() {
        out[i] = field.add_raw(&out[i], v);
    }
    for (i, v) in z1.iter().enumerate() {
        if !field.is_zero_raw(v) {
            out[i + m] = field.add_raw(&out[i + m], v);
        }
    }
    for (i, v) in z2.iter().enumerate() {
        out[i + 2 * m] = field.add_raw(&out[i + 2 * m], v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::new(5, 1).unwrap()
    }

    #[test]
    fn divrem_basics() {
        let f = f5();
        let a = Poly::from_int_coeffs(&f, &[-1, 0, 1]); // x^2 - 1
        let b = Poly::from_int_coeffs(&f, &[-1, 1]); // x - 1
        let (q, r) = a.divrem(&b).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, Poly::from_int_coeffs(&f, &[1, 1]));
        assert!(a.divrem(&Poly::zero(&f)).is_err());
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let f = Field::new(3, 2).unwrap();
        let mut rng = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            rng ^= rng << 13;
            rng ^= rng >> 7;
            rng ^= rng << 17;
            rng
        };
        for _ in 0..5 {
            let mk = |len: usize, next: &mut dyn FnMut() -> u64| {
                let coeffs: Vec<FieldElement> =
                    (0..len).map(|_| f.elem(&[next() % 3, next() % 3]).unwrap()).collect();
                Poly::from_elements(&f, &coeffs)
            };
            let a = mk(97, &mut next);
            let b = mk(123, &mut next);
            let fast = a.mul(&b);
            let slow = Poly {
                field: f.clone(),
                coeffs: mul_school(&f, &a.coeffs, &b.coeffs),
            };
            let mut slow = slow;
            slow.trim();
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn gcd_and_eval() {
        let f = f5();
        let a = Poly::from_int_coeffs(&f, &[-1, 0, 1]); // (x-1)(x+1)
        let b = Poly::from_int_coeffs(&f, &[1, 2, 1]); // (x+1)^2
        let g = a.gcd(&b);
        assert_eq!(g, Poly::from_int_coeffs(&f, &[1, 1]));
        assert_eq!(a.eval(&f.from_u64(2)), f.from_u64(3));
    }

    #[test]
    fn shift_variable_is_substitution() {
        let f = f5();
        let a = Poly::from_int_coeffs(&f, &[1, 2, 0, 1]);
        let c = f.from_u64(3);
        let shifted = a.shift_variable(&c);
        for x in f.elements() {
            assert_eq!(shifted.eval(&x), a.eval(&x.add(&c)));
        }
    }

    #[test]
    fn squarefree_decomposition_char_p() {
        let f = Field::new(3, 1).unwrap();
        // x^2 * (x-1)^3: the cube is invisible to the derivative in char 3
        let x = Poly::x(&f);
        let xm1 = Poly::from_int_coeffs(&f, &[-1, 1]);
        let poly = x.pow(2).mul(&xm1.pow(3));
        let dec = poly.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        assert_eq!(dec[0], (x.clone(), 2));
        assert_eq!(dec[1], (xm1.clone(), 3));

        // reassemble
        let mut prod = Poly::one(&f);
        for (g, m) in &dec {
            prod = prod.mul(&g.pow(*m as u32));
        }
        assert_eq!(prod, poly.monic());

        // multiplicity p + 1 must be reported exactly
        let quartic = xm1.pow(4);
        assert_eq!(quartic.squarefree_decomposition(), vec![(xm1.clone(), 4)]);

        // mixed: x^3 * (x-1)^4 * (x+1)
        let xp1 = Poly::from_int_coeffs(&f, &[1, 1]);
        let mixed = x.pow(3).mul(&xm1.pow(4)).mul(&xp1);
        let dec = mixed.squarefree_decomposition();
        assert_eq!(dec, vec![(xp1, 1), (x, 3), (xm1, 4)]);
    }

    #[test]
    fn roots_scan() {
        let f9 = Field::new(3, 2).unwrap();
        let f3 = Field::new(3, 1).unwrap();
        // x^3 - x has all of F_3 as roots, seen inside F_9
        let wp = Poly::from_int_coeffs(&f3, &[0, -1, 0, 1]);
        let roots = wp.roots_in(&f9).unwrap();
        assert_eq!(roots.len(), 3);
    }
}
