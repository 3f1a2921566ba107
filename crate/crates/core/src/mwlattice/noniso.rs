//! The non-isotrivial family `Y² = X(X + 16b²)(X + t²)` over `F_q(u)`,
//! `t = u^q - u`, `q` odd: the `q` points `P_α`, the fiber traces `tr_γ`
//! that perturb the height pairings, and the closed-form Gram matrix.

use super::curve::{FFEllipticCurve, FFPoint};
use super::lattice::Gram;
use crate::ff::{Field, FieldElement, Poly, RationalFunction};
use crate::linalg::ratio;
use crate::orbits::factor_prime_power;
use crate::{Error, Result};
use num_rational::BigRational;

pub struct NonisoFamily {
    pub q: u64,
    pub field: Field,
    pub b: FieldElement,
    pub curve: FFEllipticCurve,
    /// the elements of `F_q`, ascending
    pub alphas: Vec<FieldElement>,
    /// `P_α` in the order of `alphas`
    pub points: Vec<FFPoint>,
}

fn check_q(q: u64) -> Result<(u64, u32)> {
    let (p, e) = factor_prime_power(q)?;
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    Ok((p, e))
}

/// Builds the curve and the `q` points `P_α`; `b` must avoid `{0, 1, -1}`.
pub fn noniso_family(q: u64, b: &FieldElement) -> Result<NonisoFamily> {
    let (p, e) = check_q(q)?;
    let field = Field::new(p, e)?;
    if b.field() != &field {
        return Err(Error::MismatchedFields);
    }
    if b.is_zero() || *b == field.one() || *b == field.one().neg() {
        return Err(Error::InvalidInput("b must avoid 0 and ±1".into()));
    }
    let mut t_c = vec![0i64; q as usize + 1];
    t_c[1] = -1;
    t_c[q as usize] = 1;
    let t = Poly::from_int_coeffs(&field, &t_c);
    let b2_16 = Poly::constant(field.from_int(16).mul(b).mul(b));
    let t2 = t.mul(&t);
    // Y² = X³ + (16b² + t²)X² + 16b²t²X
    let zero = Poly::zero(&field);
    let curve = FFEllipticCurve::new(
        zero.clone(),
        b2_16.add(&t2),
        zero.clone(),
        b2_16.mul(&t2),
        zero,
    )?;

    // P(u): X = 4bt (u^q + 4b)/u,  Y = 4bt (4b + t)(u² + 4bu)^((q+1)/2) / u²
    let four_b = field.from_u64(4).mul(b);
    let mut uq_c = vec![field.zero(); q as usize + 1];
    uq_c[0] = four_b.clone();
    uq_c[q as usize] = field.one();
    let uq_plus_4b = Poly::from_elements(&field, &uq_c);
    let x_num = t.mul(&uq_plus_4b).mul_elem(&four_b);
    let x = RationalFunction::new(x_num, Poly::x(&field))?;
    let u2_4bu = Poly::from_elements(&field, &[field.zero(), four_b.clone(), field.one()]);
    let y_num = t
        .mul(&t.add(&Poly::constant(four_b.clone())))
        .mul(&u2_4bu.pow(((q + 1) / 2) as u32))
        .mul_elem(&four_b);
    let y = RationalFunction::new(y_num, Poly::x(&field).pow(2))?;
    let base = FFPoint::affine(x, y);
    if !curve.contains(&base) {
        return Err(Error::OffCurve);
    }

    let alphas: Vec<FieldElement> = field.elements().collect();
    let mut points = Vec::with_capacity(q as usize);
    for alpha in &alphas {
        let na = alpha.neg();
        let pt = match &base {
            FFPoint::Affine(x, y) => {
                FFPoint::affine(x.shift_variable(&na), y.shift_variable(&na))
            }
            FFPoint::Infinity => unreachable!(),
        };
        if !curve.contains(&pt) {
            return Err(Error::OffCurve);
        }
        points.push(pt);
    }
    Ok(NonisoFamily { q, field, b: b.clone(), curve, alphas, points })
}

impl NonisoFamily {
    pub fn label(&self, idx: usize) -> String {
        format!("P[{:?}]", self.alphas[idx])
    }

    /// Basis indices `{P_α : α ≠ 0}` for the discriminant.
    pub fn basis_indices(&self) -> Vec<usize> {
        (0..self.points.len())
            .filter(|&i| !self.alphas[i].is_zero())
            .collect()
    }

    /// The single relation: `Σ_α P_α` is torsion.
    pub fn relations(&self) -> Vec<Vec<i64>> {
        vec![vec![1i64; self.points.len()]]
    }

    /// Closed-form entry `⟨P_α, P_β⟩` from the height table.
    pub fn closed_pairing(&self, alpha: &FieldElement, beta: &FieldElement) -> Result<BigRational> {
        let q = self.q as i64;
        if alpha == beta {
            return Ok(ratio((3 * q - 1) * (q - 1), 4 * q) + ratio(1, 2));
        }
        let delta = alpha.sub(beta);
        let four_b = self.field.from_u64(4).mul(&self.b);
        let base = ratio(1 - 3 * q, 4 * q);
        if delta == four_b || delta == four_b.neg() {
            let chi_m1 = self.field.one().neg().quadratic_character()?;
            Ok(base + ratio(chi_m1 as i64, 4))
        } else {
            let tr = trace_gamma(self.q, &self.b, &delta)?;
            Ok(base + BigRational::new(tr.into(), 4.into()))
        }
    }
}

/// `tr_γ = -1 - Σ_β χ(β(β + 4b)(β - γ)(β - γ + 4b))`.
pub fn trace_gamma(q: u64, b: &FieldElement, gamma: &FieldElement) -> Result<i64> {
    check_q(q)?;
    let field = b.field().clone();
    if gamma.field() != &field {
        return Err(Error::MismatchedFields);
    }
    let four_b = field.from_u64(4).mul(b);
    let mut sum = 0i64;
    for beta in field.elements() {
        let v = beta
            .mul(&beta.add(&four_b))
            .mul(&beta.sub(gamma))
            .mul(&beta.sub(gamma).add(&four_b));
        sum += v.quadratic_character()? as i64;
    }
    Ok(-1 - sum)
}

/// Exhaustive point count of the fiber curve
/// `s₃² = (s₁² - 4a)(s₁² - 2γs₁ + γ² - 4a)` with `a = b²`, counted as a
/// hyperelliptic model: affine pairs plus the two points at infinity (the
/// quartic is monic).  For `γ ∉ {0, ±4b}` this is the smooth genus-1 curve
/// and `tr_γ = q + 1 - count`.
pub fn fiber_point_count(q: u64, b: &FieldElement, gamma: &FieldElement) -> Result<u64> {
    check_q(q)?;
    let field = b.field().clone();
    let a4 = field.from_u64(4).mul(b).mul(b); // 4a = 4b²
    let mut count = 2u64; // monic quartic: two rational points at infinity
    for s1 in field.elements() {
        let s1sq = s1.mul(&s1);
        let v = s1sq.sub(&a4).mul(
            &s1sq
                .sub(&field.from_u64(2).mul(gamma).mul(&s1))
                .add(&gamma.mul(gamma))
                .sub(&a4),
        );
        for s3 in field.elements() {
            if s3.mul(&s3) == v {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The `q × q` Gram matrix of the `P_α` from the closed-form table.
pub fn noniso_gram_closed(q: u64, b: &FieldElement) -> Result<Gram> {
    let fam = noniso_family(q, b)?;
    let n = q as usize;
    let mut entries = vec![vec![BigRational::default(); n]; n];
    for i in 0..n {
        for j in 0..n {
            entries[i][j] = fam.closed_pairing(&fam.alphas[i], &fam.alphas[j])?;
        }
    }
    let labels = (0..n).map(|i| fam.label(i)).collect();
    Gram::new(labels, entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn b2_f5() -> (Field, FieldElement) {
        let f5 = Field::new(5, 1).unwrap();
        let b = f5.from_u64(2);
        (f5, b)
    }

    #[test]
    fn family_q5() {
        let (_, b) = b2_f5();
        let fam = noniso_family(5, &b).unwrap();
        assert_eq!(fam.points.len(), 5);
        for pt in &fam.points {
            // X(P_α) is a polynomial of degree 2q - 1 = 9
            let x = pt.x().unwrap();
            assert!(x.is_polynomial());
            assert_eq!(x.num().degree(), Some(9));
        }
        // bad parameters
        let f5 = Field::new(5, 1).unwrap();
        assert!(noniso_family(5, &f5.zero()).is_err());
        assert!(noniso_family(5, &f5.one()).is_err());
        assert!(noniso_family(5, &f5.from_u64(4)).is_err()); // -1
        assert!(noniso_family(4, &b).is_err()); // even q
    }

    #[test]
    fn closed_gram_values_q5() {
        let (_, b) = b2_f5();
        let g = noniso_gram_closed(5, &b).unwrap();
        let e = g.entries();
        // diagonal: 33/10
        assert_eq!(e[0][0], ratio(33, 10));
        // α - β = ±4b: -9/20 (χ(-1) = 1 since 5 ≡ 1 mod 4)
        let fam = noniso_family(5, &b).unwrap();
        let four_b = fam.field.from_u64(8); // 4b = 8 = 3 mod 5
        for i in 0..5 {
            for j in 0..5 {
                let d = fam.alphas[i].sub(&fam.alphas[j]);
                if d == four_b || d == four_b.neg() {
                    assert_eq!(e[i][j], ratio(-9, 20));
                }
            }
        }
        // every row sums to zero
        for row in e {
            let s: BigRational = row.iter().cloned().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn trace_identities_q5() {
        let (f5, b) = b2_f5();
        // tr_γ = q + 1 - #X'_γ(F_q) for all γ
        for gamma in f5.elements() {
            let tr = trace_gamma(5, &b, &gamma).unwrap();
            let count = fiber_point_count(5, &b, &gamma).unwrap();
            assert_eq!(tr, 5 + 1 - count as i64);
        }
        // Σ_{γ≠0,±4b} tr_γ + 2χ(-1) + 2 = 0
        let four_b = f5.from_u64(8);
        let chi_m1 = f5.one().neg().quadratic_character().unwrap() as i64;
        let mut s = 0i64;
        for gamma in f5.elements() {
            if gamma.is_zero() || gamma == four_b || gamma == four_b.neg() {
                continue;
            }
            s += trace_gamma(5, &b, &gamma).unwrap();
        }
        assert_eq!(s + 2 * chi_m1 + 2, 0);
    }

    #[test]
    fn hasse_bound_q5_q7() {
        for (q, n) in [(5u64, 1u32), (7, 1)] {
            let f = Field::new(q, n).unwrap();
            let b = f.from_u64(if q == 5 { 2 } else { 3 });
            let four_b = f.from_u64(4).mul(&b);
            let hasse = 2 * (q as f64).sqrt().floor() as i64;
            for gamma in f.elements() {
                if gamma.is_zero() || gamma == four_b || gamma == four_b.neg() {
                    continue;
                }
                let tr = trace_gamma(q, &b, &gamma).unwrap();
                assert!(tr.abs() <= hasse, "tr_{gamma:?} = {tr} violates Hasse");
            }
        }
    }

    #[test]
    fn oracle_diagonal_q5() {
        use crate::mwlattice::HeightOracle;
        let (_, b) = b2_f5();
        let fam = noniso_family(5, &b).unwrap();
        let oracle = HeightOracle::new(&fam.curve, 5);
        let h = oracle.height(&fam.points[0]).unwrap();
        assert_eq!(h, ratio(33, 10));
    }

    #[test]
    fn sum_of_family_is_torsion() {
        let (_, b) = b2_f5();
        let fam = noniso_family(5, &b).unwrap();
        let mut acc = FFPoint::Infinity;
        for p in &fam.points {
            acc = fam.curve.add(&acc, p).unwrap();
        }
        // torsion ⟺ zero canonical height
        use crate::mwlattice::HeightOracle;
        let oracle = HeightOracle::new(&fam.curve, 5);
        assert!(oracle.height(&acc).unwrap().is_zero());
    }

    #[test]
    fn oracle_full_gram_matches_closed_q5() {
        use crate::mwlattice::HeightOracle;
        let (_, b) = b2_f5();
        let fam = noniso_family(5, &b).unwrap();
        let closed = noniso_gram_closed(5, &b).unwrap();
        let oracle = HeightOracle::new(&fam.curve, 5);
        let m = oracle.gram(&fam.points, 4).unwrap();
        assert_eq!(&m, closed.entries());
    }
}
