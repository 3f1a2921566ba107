//! Elliptic curves over `k(u)` in general Weierstrass form, with the full
//! chord-tangent group law (valid in every characteristic) and the x-only
//! duplication map used by the height chains.

use crate::ff::{Field, Poly, RationalFunction};
use crate::{Error, Result};

/// `Y² + a1 XY + a3 Y = X³ + a2 X² + a4 X + a6` with `a_i ∈ k[u]`.
#[derive(Clone, Debug)]
pub struct FFEllipticCurve {
    field: Field,
    pub a1: Poly,
    pub a2: Poly,
    pub a3: Poly,
    pub a4: Poly,
    pub a6: Poly,
    // b-invariants of the duplication map
    b2: Poly,
    b4: Poly,
    b6: Poly,
    b8: Poly,
    disc: Poly,
}

impl FFEllipticCurve {
    pub fn new(a1: Poly, a2: Poly, a3: Poly, a4: Poly, a6: Poly) -> Result<FFEllipticCurve> {
        let field = a1.field().clone();
        for c in [&a2, &a3, &a4, &a6] {
            if c.field() != &field {
                return Err(Error::MismatchedFields);
            }
        }
        let int = |v: i64| Poly::constant(field.from_int(v));
        let b2 = a1.mul(&a1).add(&int(4).mul(&a2));
        let b4 = int(2).mul(&a4).add(&a1.mul(&a3));
        let b6 = a3.mul(&a3).add(&int(4).mul(&a6));
        let b8 = a1
            .mul(&a1)
            .mul(&a6)
            .add(&int(4).mul(&a2).mul(&a6))
            .sub(&a1.mul(&a3).mul(&a4))
            .add(&a2.mul(&a3).mul(&a3))
            .sub(&a4.mul(&a4));
        // discriminant: -b2²b8 - 8b4³ - 27b6² + 9b2b4b6
        let disc = int(-1)
            .mul(&b2.mul(&b2).mul(&b8))
            .sub(&int(8).mul(&b4.pow(3)))
            .sub(&int(27).mul(&b6.mul(&b6)))
            .add(&int(9).mul(&b2).mul(&b4).mul(&b6));
        if disc.is_zero() {
            return Err(Error::InvalidInput("curve is singular (zero discriminant)".into()));
        }
        Ok(FFEllipticCurve { field, a1, a2, a3, a4, a6, b2, b4, b6, b8, disc })
    }

    pub fn discriminant(&self) -> &Poly {
        &self.disc
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn rf(&self, p: &Poly) -> RationalFunction {
        RationalFunction::from_poly(p.clone())
    }

    /// Left minus right side of the Weierstrass equation at `(x, y)`.
    fn equation_defect(&self, x: &RationalFunction, y: &RationalFunction) -> RationalFunction {
        let lhs = y
            .mul(y)
            .add(&self.rf(&self.a1).mul(x).mul(y))
            .add(&self.rf(&self.a3).mul(y));
        let rhs = x
            .mul(x)
            .mul(x)
            .add(&self.rf(&self.a2).mul(x).mul(x))
            .add(&self.rf(&self.a4).mul(x))
            .add(&self.rf(&self.a6));
        lhs.sub(&rhs)
    }

    pub fn contains(&self, point: &FFPoint) -> bool {
        match point {
            FFPoint::Infinity => true,
            FFPoint::Affine(x, y) => self.equation_defect(x, y).is_zero(),
        }
    }

    fn check_on_curve(&self, p: &FFPoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::OffCurve)
        }
    }

    pub fn neg(&self, p: &FFPoint) -> FFPoint {
        match p {
            FFPoint::Infinity => FFPoint::Infinity,
            FFPoint::Affine(x, y) => {
                let ny = y.neg().sub(&self.rf(&self.a1).mul(x)).sub(&self.rf(&self.a3));
                FFPoint::Affine(x.clone(), ny)
            }
        }
    }

    /// Chord-tangent addition; inputs are validated against the equation.
    pub fn add(&self, p: &FFPoint, q: &FFPoint) -> Result<FFPoint> {
        self.check_on_curve(p)?;
        self.check_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    pub(crate) fn add_unchecked(&self, p: &FFPoint, q: &FFPoint) -> FFPoint {
        let (x1, y1) = match p {
            FFPoint::Infinity => return q.clone(),
            FFPoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            FFPoint::Infinity => return p.clone(),
            FFPoint::Affine(x, y) => (x, y),
        };
        let a1 = self.rf(&self.a1);
        let a3 = self.rf(&self.a3);
        let lambda = if x1 == x2 {
            // either inverse points or a tangent
            let denom = y1.add(y1).add(&a1.mul(x1)).add(&a3);
            if y2.add(y1).add(&a1.mul(x1)).add(&a3).is_zero() {
                return FFPoint::Infinity;
            }
            let a2 = self.rf(&self.a2);
            let a4 = self.rf(&self.a4);
            let three_x2 = x1.mul(x1).mul(&RationalFunction::constant(self.field.from_int(3)));
            let two_a2x = a2.mul(x1).mul(&RationalFunction::constant(self.field.from_int(2)));
            let num = three_x2.add(&two_a2x).add(&a4).sub(&a1.mul(y1));
            num.div(&denom).expect("tangent denominator nonzero")
        } else {
            y2.sub(y1).div(&x2.sub(x1)).expect("distinct x-coordinates")
        };
        let nu = y1.sub(&lambda.mul(x1));
        let a2 = self.rf(&self.a2);
        let x3 = lambda.mul(&lambda).add(&a1.mul(&lambda)).sub(&a2).sub(x1).sub(x2);
        let y3 = lambda.add(&a1).mul(&x3).add(&nu).add(&a3).neg();
        FFPoint::Affine(x3, y3)
    }

    pub fn double(&self, p: &FFPoint) -> Result<FFPoint> {
        self.add(p, p)
    }

    /// `n · P` by double-and-add (negative `n` allowed).
    pub fn mul_scalar(&self, p: &FFPoint, n: i64) -> Result<FFPoint> {
        self.check_on_curve(p)?;
        let (mut n, base) = if n < 0 { (-n, self.neg(p)) } else { (n, p.clone()) };
        let mut acc = FFPoint::Infinity;
        let mut cur = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add_unchecked(&acc, &cur);
            }
            n >>= 1;
            if n > 0 {
                cur = self.add_unchecked(&cur, &cur);
            }
        }
        Ok(acc)
    }

    /// One step of the x-only duplication map on a reduced fraction
    /// `x = num/den`; returns `None` when the double is the origin.
    pub(crate) fn double_x(&self, num: &Poly, den: &Poly) -> Option<(Poly, Poly)> {
        let n2 = num.mul(num);
        let d2 = den.mul(den);
        let int = |v: i64| Poly::constant(self.field.from_int(v));
        // φ₂ = x⁴ - b4x² - 2b6x - b8, ψ₂² = 4x³ + b2x² + 2b4x + b6
        // (terms with a zero b-invariant are skipped: both built-in families
        // have several, and these products dominate the chain cost)
        let n2d2 = if self.b4.is_zero() && self.b2.is_zero() { None } else { Some(n2.mul(&d2)) };
        let d4 = if self.b8.is_zero() && self.b6.is_zero() { None } else { Some(d2.mul(&d2)) };
        let mut phi = n2.mul(&n2);
        if let Some(n2d2) = &n2d2 {
            if !self.b4.is_zero() {
                phi = phi.sub(&self.b4.mul(n2d2));
            }
        }
        if !self.b6.is_zero() {
            let nd3 = num.mul(&d2.mul(den));
            phi = phi.sub(&int(2).mul(&self.b6).mul(&nd3));
        }
        if let Some(d4) = &d4 {
            if !self.b8.is_zero() {
                phi = phi.sub(&self.b8.mul(d4));
            }
        }
        let mut psi = int(4).mul(&n2.mul(num)).mul(den);
        if let Some(n2d2) = &n2d2 {
            if !self.b2.is_zero() {
                psi = psi.add(&self.b2.mul(n2d2));
            }
        }
        if !self.b4.is_zero() {
            let nd3 = num.mul(&d2.mul(den));
            psi = psi.add(&int(2).mul(&self.b4).mul(&nd3));
        }
        if let Some(d4) = &d4 {
            if !self.b6.is_zero() {
                psi = psi.add(&self.b6.mul(d4));
            }
        }
        if psi.is_zero() {
            return None;
        }
        let (mut new_num, mut new_den) = self.reduce_with_disc(phi, psi);
        let lc = new_den.leading_coeff().inv().expect("nonzero leading coefficient");
        new_num = new_num.mul_elem(&lc);
        new_den = new_den.mul_elem(&lc);
        Some((new_num, new_den))
    }

    /// Cancels the common factor of a duplication-image fraction.  Any common
    /// prime divides the discriminant (on a good fiber the duplication map is
    /// a morphism of degree 4, so its two coordinates cannot share a root),
    /// which keeps every gcd here at discriminant-sized degree instead of the
    /// degree of the chain polynomials.
    fn reduce_with_disc(&self, mut num: Poly, mut den: Poly) -> (Poly, Poly) {
        let mut h = self.disc.gcd(&den);
        loop {
            if h.degree().unwrap_or(0) == 0 {
                return (num, den);
            }
            let c0 = h.gcd(&num.rem(&h).expect("nonzero modulus"));
            if c0.degree().unwrap_or(0) == 0 {
                return (num, den);
            }
            let c = c0.gcd(&den.rem(&c0).expect("nonzero modulus"));
            if c.degree().unwrap_or(0) == 0 {
                return (num, den);
            }
            num = num.div_exact(&c).expect("common factor divides");
            den = den.div_exact(&c).expect("common factor divides");
            h = c;
        }
    }
}

/// Point with rational-function coordinates, or the origin at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FFPoint {
    Infinity,
    Affine(RationalFunction, RationalFunction),
}

impl FFPoint {
    pub fn affine(x: RationalFunction, y: RationalFunction) -> FFPoint {
        FFPoint::Affine(x, y)
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, FFPoint::Infinity)
    }

    pub fn x(&self) -> Option<&RationalFunction> {
        match self {
            FFPoint::Infinity => None,
            FFPoint::Affine(x, _) => Some(x),
        }
    }

    pub fn y(&self) -> Option<&RationalFunction> {
        match self {
            FFPoint::Infinity => None,
            FFPoint::Affine(_, y) => Some(y),
        }
    }

    /// Degree of the x-coordinate as a map to `P¹`; the origin has height 0.
    pub fn naive_height(&self) -> u64 {
        match self {
            FFPoint::Infinity => 0,
            FFPoint::Affine(x, _) => x.map_degree() as u64,
        }
    }

    /// Stable hash key from the reduced coordinates.
    pub(crate) fn cache_key(&self) -> Vec<u64> {
        match self {
            FFPoint::Infinity => vec![u64::MAX],
            FFPoint::Affine(x, y) => {
                let mut out = vec![];
                for poly in [x.num(), x.den(), y.num(), y.den()] {
                    out.push(poly.degree().map(|d| d as u64 + 1).unwrap_or(0));
                    for c in poly.coefficients() {
                        out.extend(c.coeffs());
                    }
                }
                out
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// `Y² + tY = X³` over `F_25(u)` with `t = u^5 - u`.
    fn iso_curve_q5() -> FFEllipticCurve {
        let k = Field::new(5, 2).unwrap();
        let mut t = vec![0i64; 6];
        t[1] = -1;
        t[5] = 1;
        let t = Poly::from_int_coeffs(&k, &t);
        let zero = Poly::zero(&k);
        FFEllipticCurve::new(zero.clone(), zero.clone(), t, zero.clone(), zero).unwrap()
    }

    fn family_point(e: &FFEllipticCurve, i: u32, alpha: i64) -> FFPoint {
        let k = e.field().clone();
        // ζ: least solution of x² + x + 1 = 0
        let zeta = k
            .elements()
            .find(|x| {
                let v = x.mul(x).add(x).add(&k.one());
                v.is_zero()
            })
            .unwrap();
        let u_plus_a = Poly::from_int_coeffs(&k, &[alpha, 1]);
        let x = u_plus_a.pow(2).mul_elem(&zeta.pow(i as u128));
        FFPoint::affine(
            RationalFunction::from_poly(x),
            RationalFunction::from_poly(u_plus_a),
        )
    }

    #[test]
    fn group_law_identities() {
        let e = iso_curve_q5();
        let p = family_point(&e, 0, 0);
        assert!(e.contains(&p));
        // P + O = P
        assert_eq!(e.add(&p, &FFPoint::Infinity).unwrap(), p);
        // P + (-P) = O
        let np = e.neg(&p);
        assert!(e.contains(&np));
        assert!(e.add(&p, &np).unwrap().is_infinity());
        // Σ_i P_{i,α} = O
        let p0 = family_point(&e, 0, 2);
        let p1 = family_point(&e, 1, 2);
        let p2 = family_point(&e, 2, 2);
        let s = e.add(&e.add(&p0, &p1).unwrap(), &p2).unwrap();
        assert!(s.is_infinity());
    }

    #[test]
    fn torsion_order_three() {
        let e = iso_curve_q5();
        let k = e.field().clone();
        let t_poly = e.a3.clone();
        let zero = RationalFunction::zero(&k);
        let t0 = FFPoint::affine(zero.clone(), zero.clone());
        let t1 = FFPoint::affine(zero, RationalFunction::from_poly(t_poly.neg()));
        assert!(e.contains(&t0));
        assert!(e.contains(&t1));
        assert_eq!(e.double(&t0).unwrap(), t1);
        assert!(e.mul_scalar(&t0, 3).unwrap().is_infinity());
    }

    #[test]
    fn associativity_randomized() {
        let e = iso_curve_q5();
        let pts = [
            family_point(&e, 0, 0),
            family_point(&e, 1, 1),
            family_point(&e, 2, 3),
            family_point(&e, 0, 4),
        ];
        for a in &pts {
            for b in &pts {
                for c in &pts {
                    let ab_c = e.add(&e.add(a, b).unwrap(), c).unwrap();
                    let a_bc = e.add(a, &e.add(b, c).unwrap()).unwrap();
                    assert_eq!(ab_c, a_bc);
                }
            }
        }
    }

    #[test]
    fn x_only_duplication_agrees_with_group_law() {
        let e = iso_curve_q5();
        for (i, alpha) in [(0u32, 0i64), (1, 2), (2, 4)] {
            let p = family_point(&e, i, alpha);
            let d = e.double(&p).unwrap();
            let x = p.x().unwrap();
            let (num, den) = e.double_x(x.num(), x.den()).unwrap();
            match d {
                FFPoint::Affine(dx, _) => {
                    assert_eq!(dx.num(), &num);
                    assert_eq!(dx.den(), &den);
                }
                FFPoint::Infinity => panic!("family points are non-torsion"),
            }
        }
    }

    #[test]
    fn x_only_duplication_char2() {
        // the characteristic-2 isotrivial curve: inseparable duplication
        let fam = crate::mwlattice::iso_family(8).unwrap();
        for idx in [0usize, 5, 13] {
            let p = &fam.points[idx];
            let d = fam.curve.double(p).unwrap();
            let x = p.x().unwrap();
            let (num, den) = fam.curve.double_x(x.num(), x.den()).unwrap();
            match d {
                FFPoint::Affine(dx, _) => {
                    assert_eq!(dx.num(), &num);
                    assert_eq!(dx.den(), &den);
                }
                FFPoint::Infinity => panic!("family points are non-torsion"),
            }
        }
    }

    #[test]
    fn off_curve_rejected() {
        let e = iso_curve_q5();
        let k = e.field().clone();
        let bad = FFPoint::affine(
            RationalFunction::one(&k),
            RationalFunction::one(&k),
        );
        assert_eq!(e.add(&bad, &FFPoint::Infinity), Err(Error::OffCurve));
    }

    #[test]
    fn singular_curve_rejected() {
        let k = Field::new(5, 1).unwrap();
        let zero = Poly::zero(&k);
        // Y² = X³ is singular
        assert!(FFEllipticCurve::new(
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zero
        )
        .is_err());
    }
}
