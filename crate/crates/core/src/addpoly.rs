//! Monic separable additive polynomials, the bijection between them and
//! finite additive subgroups, and the complement `B` with `A ∘ B = ℘_q`.
//!
//! Composition is computed in the twisted-polynomial representation: if
//! `A = Σ a_i x^{p^i}` and `B = Σ b_j x^{p^j}` then the composite has
//! coefficient `Σ_{i+j=k} a_i b_j^{p^i}` at degree `p^k`.

use crate::ff::{Embedding, Field, FieldElement, Poly};
use crate::{Error, Result};
use std::collections::HashSet;
use std::fmt;

/// `Σ a_i x^{p^i}` with `a_ν = 1` (monic) and `a_0 ≠ 0` (separable).
#[derive(Clone, PartialEq, Eq)]
pub struct AdditivePolynomial {
    field: Field,
    /// `a_0 .. a_ν`, constant-index first; `a_ν = 1`.
    coeffs: Vec<FieldElement>,
}

impl fmt::Debug for AdditivePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.field.p();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{:?}*x^{}", c, (p as u128).pow(i as u32))?;
        }
        Ok(())
    }
}

impl AdditivePolynomial {
    /// From twisted coefficients `a_0 .. a_ν`.
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Result<AdditivePolynomial> {
        if coeffs.is_empty() {
            return Err(Error::NotAdditivePolynomial);
        }
        for c in &coeffs {
            if c.field() != field {
                return Err(Error::MismatchedFields);
            }
        }
        if coeffs.last().unwrap() != &field.one() || coeffs[0].is_zero() {
            return Err(Error::NotAdditivePolynomial);
        }
        Ok(AdditivePolynomial { field: field.clone(), coeffs })
    }

    /// The Artin-Schreier polynomial `℘_q = x^q - x` (requires `q = p^e`).
    pub fn wp(field: &Field, q: u64) -> Result<AdditivePolynomial> {
        let e = field.power_of_p(q).ok_or(Error::NotPowerOfP { r: q, p: field.p() })?;
        let mut coeffs = vec![field.zero(); e as usize + 1];
        coeffs[0] = field.one().neg();
        coeffs[e as usize] = field.one();
        AdditivePolynomial::new(field, coeffs)
    }

    /// The identity `x`.
    pub fn identity(field: &Field) -> AdditivePolynomial {
        AdditivePolynomial { field: field.clone(), coeffs: vec![field.one()] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    /// Twisted coefficients `a_0 .. a_ν`.
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// ν, so the degree is `p^ν`.
    pub fn nu(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn degree(&self) -> u128 {
        (self.field.p() as u128).pow(self.nu() as u32)
    }

    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let p = x.field().p() as u128;
        let mut acc = x.field().zero();
        let mut power = x.clone();
        // power runs through x^(p^i)
        for (i, a) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power.pow(p);
            }
            if !a.is_zero() {
                // coefficient may live in a subfield of x's field
                let a_up = if a.field() == x.field() {
                    a.clone()
                } else {
                    let emb = Embedding::new(a.field(), x.field()).expect("coefficient subfield");
                    emb.apply(a)
                };
                acc = acc.add(&a_up.mul(&power));
            }
        }
        acc
    }

    /// Expansion as an ordinary polynomial.
    pub fn to_poly(&self) -> Poly {
        let p = self.field.p() as u128;
        let deg = self.degree();
        assert!(deg <= (1 << 20), "additive polynomial too large to expand");
        let mut elems = vec![self.field.zero(); deg as usize + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            let idx = p.pow(i as u32) as usize;
            elems[idx] = a.clone();
        }
        Poly::from_elements(&self.field, &elems)
    }

    /// Reinterpret an ordinary polynomial with only `p`-power exponents.
    pub fn from_poly(poly: &Poly) -> Result<AdditivePolynomial> {
        let field = poly.field().clone();
        let p = field.p() as u128;
        let deg = poly.degree().ok_or(Error::NotAdditivePolynomial)? as u128;
        let mut nu = 0u32;
        while p.pow(nu) < deg {
            nu += 1;
        }
        if p.pow(nu) != deg {
            return Err(Error::NotAdditivePolynomial);
        }
        let mut coeffs = vec![field.zero(); nu as usize + 1];
        for (i, c) in poly.coefficients().into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut k = None;
            for j in 0..=nu {
                if p.pow(j) == i as u128 {
                    k = Some(j);
                    break;
                }
            }
            match k {
                Some(j) => coeffs[j as usize] = c,
                None => return Err(Error::NotAdditivePolynomial),
            }
        }
        AdditivePolynomial::new(&field, coeffs)
    }

    /// Twisted-polynomial composition `self ∘ rhs`.
    pub fn compose(&self, rhs: &AdditivePolynomial) -> Result<AdditivePolynomial> {
        if self.field != rhs.field {
            return Err(Error::MismatchedFields);
        }
        let p = self.field.p() as u128;
        let n = self.nu() + rhs.nu();
        let mut out = vec![self.field.zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let twist = p.pow(i as u32);
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = a.mul(&b.pow(twist));
                out[i + j] = out[i + j].add(&term);
            }
        }
        AdditivePolynomial::new(&self.field, out)
    }

    /// Additivity spot-check on a few pairs from the ambient field.
    pub fn check_additive(&self, ambient: &Field) -> Result<()> {
        let emb = Embedding::new(&self.field, ambient)?;
        let lifted = self.map_into(&emb)?;
        let mut seed = 0x51afab1e_u64;
        let order = ambient.order();
        for _ in 0..8 {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            let xi = (seed as u128) % order;
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            let yi = (seed as u128) % order;
            let x = ambient.nth_element(xi);
            let y = ambient.nth_element(yi);
            let lhs = lifted.eval(&x.add(&y));
            let rhs = lifted.eval(&x).add(&lifted.eval(&y));
            if lhs != rhs {
                return Err(Error::NotAdditivePolynomial);
            }
        }
        Ok(())
    }

    /// Coefficient-wise image under an embedding.
    pub fn map_into(&self, emb: &Embedding) -> Result<AdditivePolynomial> {
        if emb.sub() != &self.field {
            return Err(Error::MismatchedFields);
        }
        let coeffs = self.coeffs.iter().map(|c| emb.apply(c)).collect();
        AdditivePolynomial::new(emb.sup(), coeffs)
    }
}

/// Finite additive subgroup of a field, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGroup {
    field: Field,
    elements: Vec<FieldElement>,
}

impl RootGroup {
    /// Validates closure under addition and negation and membership of zero.
    pub fn new(field: &Field, mut elements: Vec<FieldElement>) -> Result<RootGroup> {
        elements.sort();
        elements.dedup();
        let set: HashSet<&FieldElement> = elements.iter().collect();
        if !set.contains(&field.zero()) {
            return Err(Error::NotAdditiveGroup);
        }
        for x in &elements {
            if x.field() != field {
                return Err(Error::MismatchedFields);
            }
            if !set.contains(&x.neg()) {
                return Err(Error::NotAdditiveGroup);
            }
            for y in &elements {
                if !set.contains(&x.add(y)) {
                    return Err(Error::NotAdditiveGroup);
                }
            }
        }
        // cardinality must be a power of p
        let mut c = elements.len() as u64;
        let p = field.p();
        while c % p == 0 {
            c /= p;
        }
        if c != 1 {
            return Err(Error::NotAdditiveGroup);
        }
        Ok(RootGroup { field: field.clone(), elements })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn elements(&self) -> &[FieldElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// `A_H(x) = Π_{α ∈ H} (x - α)`, expanded and checked to be additive.
pub fn roots_to_poly(group: &RootGroup) -> Result<AdditivePolynomial> {
    let field = group.field();
    let mut prod = Poly::one(field);
    for alpha in group.elements() {
        let lin = Poly::from_elements(field, &[alpha.neg(), field.one()]);
        prod = prod.mul(&lin);
    }
    AdditivePolynomial::from_poly(&prod)
}

/// The group of all roots of `A` inside `ambient`; errors if any root is
/// missing from the ambient field.
pub fn poly_to_roots(a: &AdditivePolynomial, ambient: &Field) -> Result<RootGroup> {
    let emb = Embedding::new(a.field(), ambient)?;
    let lifted = a.map_into(&emb)?;
    let roots: Vec<FieldElement> =
        ambient.elements().filter(|x| lifted.eval(x).is_zero()).collect();
    let expected = a.degree() as usize;
    if roots.len() != expected {
        return Err(Error::AmbientTooSmall { found: roots.len(), expected });
    }
    RootGroup::new(ambient, roots)
}

/// The complement `B` of `A` with respect to `℘_q`: the additive polynomial
/// of the image subgroup `A(F_q)`.  Both compositions are verified to equal
/// `℘_q` before returning.
pub fn complement(a: &AdditivePolynomial, q: u64) -> Result<AdditivePolynomial> {
    let p = a.field().p();
    let e = a.field().power_of_p(q).ok_or(Error::NotPowerOfP { r: q, p })?;
    let fq = Field::new(p, e)?;
    // the roots of A must all lie in F_q
    let a_in_fq = if a.field() == &fq {
        a.clone()
    } else {
        // coefficients must embed into F_q (A_H has coefficients in the field
        // generated by stabilizing H, a subfield of F_q when roots lie there)
        let emb = Embedding::new(a.field(), &fq).map_err(|_| Error::AmbientTooSmall {
            found: 0,
            expected: a.degree() as usize,
        })?;
        a.map_into(&emb)?
    };
    poly_to_roots(&a_in_fq, &fq)?;
    // image subgroup A(F_q)
    let mut image: Vec<FieldElement> = fq.elements().map(|x| a_in_fq.eval(&x)).collect();
    image.sort();
    image.dedup();
    let image_group = RootGroup::new(&fq, image)?;
    let b = roots_to_poly(&image_group)?;
    let wp = AdditivePolynomial::wp(&fq, q)?;
    if a_in_fq.compose(&b)? != wp || b.compose(&a_in_fq)? != wp {
        return Err(Error::Inconsistent("complement composition is not ℘_q".into()));
    }
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_to_poly_examples() {
        let f3 = Field::new(3, 1).unwrap();
        // trivial group -> x
        let trivial = RootGroup::new(&f3, vec![f3.zero()]).unwrap();
        assert_eq!(roots_to_poly(&trivial).unwrap(), AdditivePolynomial::identity(&f3));

        // all of F_3 -> ℘_3
        let whole = RootGroup::new(&f3, f3.elements().collect()).unwrap();
        assert_eq!(roots_to_poly(&whole).unwrap(), AdditivePolynomial::wp(&f3, 3).unwrap());

        // {0, i, -i} in F_9 -> x^3 + x  (expand (x)(x-i)(x+i) = x^3 - i^2 x)
        let f9 = Field::new(3, 2).unwrap();
        let i = f9.elem(&[0, 1]).unwrap();
        let g = RootGroup::new(&f9, vec![f9.zero(), i.clone(), i.neg()]).unwrap();
        let a = roots_to_poly(&g).unwrap();
        assert_eq!(a.coeffs(), &[f9.one(), f9.one()]);

        // non-closed set is rejected
        assert!(RootGroup::new(&f9, vec![f9.zero(), i.clone()]).is_err());
    }

    #[test]
    fn poly_to_roots_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        let wp3 = AdditivePolynomial::wp(&f3, 3).unwrap();
        let roots = poly_to_roots(&wp3, &f9).unwrap();
        // ℘_3 over F_9 has the embedded F_3 as roots
        assert_eq!(roots.len(), 3);

        // x^3 + x over F_9: {0, i, -i}
        let a = AdditivePolynomial::new(&f9, vec![f9.one(), f9.one()]).unwrap();
        let roots = poly_to_roots(&a, &f9).unwrap();
        let i = f9.elem(&[0, 1]).unwrap();
        assert!(roots.elements().contains(&i));
        assert!(roots.elements().contains(&i.neg()));
        assert_eq!(roots.len(), 3);

        // x^3 + x over F_3: only the root 0 is visible
        let a3 = AdditivePolynomial::new(&f3, vec![f3.one(), f3.one()]).unwrap();
        assert_eq!(
            poly_to_roots(&a3, &f3),
            Err(Error::AmbientTooSmall { found: 1, expected: 3 })
        );
    }

    #[test]
    fn compose_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let a = AdditivePolynomial::new(&f3, vec![f3.one(), f3.one()]).unwrap(); // x^3 + x
        let b = AdditivePolynomial::wp(&f3, 3).unwrap(); // x^3 - x

        // identity composes trivially
        let id = AdditivePolynomial::identity(&f3);
        assert_eq!(id.compose(&b).unwrap(), b);
        assert_eq!(b.compose(&id).unwrap(), b);

        // (x^3 + x) ∘ (x^3 - x) = x^9 - x = ℘_9
        let c = a.compose(&b).unwrap();
        assert_eq!(c, AdditivePolynomial::wp(&f3, 9).unwrap());

        // ℘_3 ∘ ℘_3 = x^9 + x^3 + x, cross-checked against direct substitution
        let c2 = b.compose(&b).unwrap();
        assert_eq!(
            c2.coeffs(),
            &[f3.one(), f3.one(), f3.one()]
        );
        let direct = b.to_poly().compose(&b.to_poly());
        assert_eq!(c2.to_poly(), direct);
    }

    #[test]
    fn complement_examples() {
        let f3 = Field::new(3, 1).unwrap();
        let f5 = Field::new(5, 1).unwrap();

        // A = ℘_q -> B = x
        let wp9_field = Field::new(3, 2).unwrap();
        let wp9 = AdditivePolynomial::wp(&wp9_field, 9).unwrap();
        assert_eq!(complement(&wp9, 9).unwrap(), AdditivePolynomial::identity(&wp9_field));

        // A = x^3 + x over F_3, q = 9 -> B = x^3 - x
        let a = AdditivePolynomial::new(&f3, vec![f3.one(), f3.one()]).unwrap();
        let b = complement(&a, 9).unwrap();
        let f9 = Field::new(3, 2).unwrap();
        assert_eq!(b, AdditivePolynomial::wp(&f9, 3).unwrap());

        // A = x^5 + x over F_5, q = 25 -> B = x^5 - x, composition ℘_25
        let a5 = AdditivePolynomial::new(&f5, vec![f5.one(), f5.one()]).unwrap();
        let b5 = complement(&a5, 25).unwrap();
        let f25 = Field::new(5, 2).unwrap();
        assert_eq!(b5, AdditivePolynomial::wp(&f25, 5).unwrap());

        // roots of A not inside F_q is an error: x^3 + x has roots outside F_3
        assert!(complement(&a, 3).is_err());
    }

    #[test]
    fn image_kernel_counting() {
        // |roots| * |A(F_q)| = q whenever the roots lie in F_q
        let f9 = Field::new(3, 2).unwrap();
        let a = AdditivePolynomial::new(&f9, vec![f9.one(), f9.one()]).unwrap();
        let roots = poly_to_roots(&a, &f9).unwrap();
        let mut image: Vec<FieldElement> = f9.elements().map(|x| a.eval(&x)).collect();
        image.sort();
        image.dedup();
        assert_eq!(roots.len() * image.len(), 9);
    }

    #[test]
    fn roundtrip_exhaustive_f9() {
        // every additive subgroup of F_9 round-trips through its polynomial
        let f9 = Field::new(3, 2).unwrap();
        let all: Vec<FieldElement> = f9.elements().collect();
        // subgroups: {0}, three lines, and the whole field
        let mut groups: Vec<Vec<FieldElement>> = vec![vec![f9.zero()], all.clone()];
        for g in &all {
            if g.is_zero() {
                continue;
            }
            let line = vec![f9.zero(), g.clone(), g.neg()];
            groups.push(line);
        }
        for els in groups {
            if let Ok(h) = RootGroup::new(&f9, els) {
                let a = roots_to_poly(&h).unwrap();
                let h2 = poly_to_roots(&a, &f9).unwrap();
                assert_eq!(h, h2);
            }
        }
    }
}
