//! Reduced rational functions over a finite field.

use super::{Field, FieldElement, Poly};
use crate::{Error, Result};
use std::fmt;

/// `num/den` with `gcd(num, den) = 1` and `den` monic, maintained on every
/// construction and operation.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

impl RationalFunction {
    pub fn new(num: Poly, den: Poly) -> Result<RationalFunction> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        assert!(num.field() == den.field(), "numerator and denominator over different fields");
        let mut rf = RationalFunction { num, den };
        rf.reduce();
        Ok(rf)
    }

    pub fn from_poly(num: Poly) -> RationalFunction {
        let den = Poly::one(num.field());
        RationalFunction { num, den }
    }

    pub fn zero(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::zero(field))
    }

    pub fn one(field: &Field) -> RationalFunction {
        RationalFunction::from_poly(Poly::one(field))
    }

    pub fn constant(c: FieldElement) -> RationalFunction {
        RationalFunction::from_poly(Poly::constant(c))
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = Poly::one(self.num.field());
            return;
        }
        let g = self.num.gcd(&self.den);
        if g.degree() != Some(0) {
            self.num = self.num.div_exact(&g).expect("gcd divides");
            self.den = self.den.div_exact(&g).expect("gcd divides");
        }
        let lc = self.den.leading_coeff();
        if lc != self.num.field().one() {
            let inv = lc.inv().expect("nonzero leading coefficient");
            self.num = self.num.mul_elem(&inv);
            self.den = self.den.mul_elem(&inv);
        }
    }

    pub fn field(&self) -> &Field {
        self.num.field()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn add(&self, rhs: &RationalFunction) -> RationalFunction {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        let mut rf = RationalFunction { num, den };
        rf.reduce();
        rf
    }

    pub fn sub(&self, rhs: &RationalFunction) -> RationalFunction {
        let num = self.num.mul(&rhs.den).sub(&rhs.num.mul(&self.den));
        let den = self.den.mul(&rhs.den);
        let mut rf = RationalFunction { num, den };
        rf.reduce();
        rf
    }

    pub fn neg(&self) -> RationalFunction {
        RationalFunction { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, rhs: &RationalFunction) -> RationalFunction {
        let num = self.num.mul(&rhs.num);
        let den = self.den.mul(&rhs.den);
        let mut rf = RationalFunction { num, den };
        rf.reduce();
        rf
    }

    pub fn div(&self, rhs: &RationalFunction) -> Result<RationalFunction> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.num.mul(&rhs.den);
        let den = self.den.mul(&rhs.num);
        let mut rf = RationalFunction { num, den };
        rf.reduce();
        Ok(rf)
    }

    pub fn inv(&self) -> Result<RationalFunction> {
        RationalFunction::one(self.field()).div(self)
    }

    pub fn pow(&self, e: u32) -> RationalFunction {
        RationalFunction { num: self.num.pow(e), den: self.den.pow(e) }
    }

    /// Value at `x`, or `None` at a pole.
    pub fn eval(&self, x: &FieldElement) -> Option<FieldElement> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(x).div(&d).expect("nonzero denominator"))
    }

    /// Substitute `x + c` for the variable.
    pub fn shift_variable(&self, c: &FieldElement) -> RationalFunction {
        let mut rf = RationalFunction {
            num: self.num.shift_variable(c),
            den: self.den.shift_variable(c),
        };
        rf.reduce();
        rf
    }

    /// Degree as a morphism to `P^1`: `max(deg num, deg den)`.
    pub fn map_degree(&self) -> usize {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    /// Pole order at infinity (0 when regular there).
    pub fn pole_order_at_infinity(&self) -> usize {
        let dn = self.num.degree().map(|d| d as i64).unwrap_or(i64::MIN);
        let dd = self.den.degree().unwrap_or(0) as i64;
        (dn - dd).max(0) as usize
    }

    /// Multiplicities of the finite poles, via squarefree decomposition of the
    /// denominator: each entry is `(squarefree factor, multiplicity)`; every
    /// root of the factor is a pole of that order.
    pub fn finite_pole_structure(&self) -> Vec<(Poly, u64)> {
        self.den.squarefree_decomposition()
    }

    /// The full multiset of geometric pole orders (with the number of
    /// geometric points carrying each): `(order, count)` pairs.
    pub fn pole_type(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = vec![];
        for (g, m) in self.finite_pole_structure() {
            out.push((m, g.degree().unwrap_or(0) as u64));
        }
        let inf = self.pole_order_at_infinity();
        if inf > 0 {
            out.push((inf as u64, 1));
        }
        out.sort();
        out
    }

    /// Errors unless every pole order (finite and infinite) is prime to `p`.
    pub fn check_pole_orders_prime_to_p(&self) -> Result<()> {
        let p = self.field().p();
        for (order, _count) in self.pole_type() {
            if order % p == 0 {
                return Err(Error::PoleOrderDivisibleByP { order, p });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> Field {
        Field::new(5, 1).unwrap()
    }

    #[test]
    fn reduction_on_construction() {
        let f = f5();
        // (u^2 - 1)/(u - 1) reduces to u + 1
        let num = Poly::from_int_coeffs(&f, &[-1, 0, 1]);
        let den = Poly::from_int_coeffs(&f, &[-1, 1]);
        let rf = RationalFunction::new(num, den).unwrap();
        assert_eq!(rf.num(), &Poly::from_int_coeffs(&f, &[1, 1]));
        assert_eq!(rf.den(), &Poly::one(&f));
    }

    #[test]
    fn additive_inverse() {
        let f = f5();
        let num = Poly::from_int_coeffs(&f, &[2, 3, 1]);
        let den = Poly::from_int_coeffs(&f, &[1, 4]);
        let rf = RationalFunction::new(num, den).unwrap();
        assert!(rf.add(&rf.neg()).is_zero());
    }

    #[test]
    fn wp_q_over_u() {
        // (u^q - u)/u = u^4 - 1 in F_5(u) with q = 5
        let f = f5();
        let mut wp = vec![0i64; 6];
        wp[1] = -1;
        wp[5] = 1;
        let num = Poly::from_int_coeffs(&f, &wp);
        let den = Poly::x(&f);
        let rf = RationalFunction::new(num, den).unwrap();
        assert_eq!(rf.num(), &Poly::from_int_coeffs(&f, &[-1, 0, 0, 0, 1]));
        assert!(rf.is_polynomial());
    }

    #[test]
    fn always_lowest_terms() {
        let f = Field::new(3, 1).unwrap();
        let mk = |n: &[i64], d: &[i64]| {
            RationalFunction::new(Poly::from_int_coeffs(&f, n), Poly::from_int_coeffs(&f, d))
                .unwrap()
        };
        let a = mk(&[1, 2, 1], &[0, 1]);
        let b = mk(&[2], &[1, 1, 1]);
        for op in 0..4 {
            let r = match op {
                0 => a.add(&b),
                1 => a.sub(&b),
                2 => a.mul(&b),
                _ => a.div(&b).unwrap(),
            };
            assert_eq!(r.num().gcd(r.den()).degree(), Some(0));
            assert!(r.den().is_monic());
        }
    }

    #[test]
    fn pole_types() {
        let f = f5();
        // x^2 + 1/x: poles of order 2 at infinity, order 1 at zero
        let num = Poly::from_int_coeffs(&f, &[1, 0, 0, 1]);
        let den = Poly::x(&f);
        let rf = RationalFunction::new(num, den).unwrap();
        assert_eq!(rf.pole_type(), vec![(1, 1), (2, 1)]);
        assert!(rf.check_pole_orders_prime_to_p().is_ok());

        // 1/x^5 has a pole order divisible by p = 5
        let bad = RationalFunction::new(Poly::one(&f), Poly::x(&f).pow(5)).unwrap();
        assert!(bad.check_pole_orders_prime_to_p().is_err());
    }

    #[test]
    fn eval_and_poles() {
        let f = f5();
        let rf = RationalFunction::new(
            Poly::from_int_coeffs(&f, &[1, 1]),
            Poly::from_int_coeffs(&f, &[0, 1]),
        )
        .unwrap();
        assert_eq!(rf.eval(&f.from_u64(0)), None);
        assert_eq!(rf.eval(&f.from_u64(2)), Some(f.from_u64(4)));
    }
}
