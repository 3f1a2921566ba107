//! The isotrivial family `Y² + tY = X³` over `F_{q²}(u)`, `t = u^q - u`,
//! for `q ≡ 2 (mod 3)`: the `3q` visible points, their closed-form height
//! pairings, the 3-torsion, and the extra points indexed by `β`.

use super::curve::{FFEllipticCurve, FFPoint};
use super::lattice::Gram;
use crate::ff::{Field, FieldElement, Poly, RationalFunction};
use crate::linalg::ratio;
use crate::orbits::factor_prime_power;
use crate::{Error, Result};
use num_rational::BigRational;

pub struct IsoFamily {
    pub q: u64,
    /// the constant field `F_{q²}`
    pub field: Field,
    pub curve: FFEllipticCurve,
    /// fixed primitive cube root of unity (least solution of `x² + x + 1 = 0`)
    pub zeta: FieldElement,
    /// the elements of `F_q` inside `F_{q²}`, ascending
    pub alphas: Vec<FieldElement>,
    /// `P_{i,α}` indexed by `i * q + alpha_index`
    pub points: Vec<FFPoint>,
    /// the non-trivial 3-torsion points `(0,0)` and `(0,-t)`
    pub torsion: [FFPoint; 2],
}

fn check_q(q: u64) -> Result<(u64, u32)> {
    let (p, e) = factor_prime_power(q)?;
    if q % 3 != 2 {
        return Err(Error::InvalidInput(format!("q = {q} is not 2 mod 3")));
    }
    Ok((p, e))
}

/// `t = u^q - u` over `field`.
fn t_poly(field: &Field, q: u64) -> Poly {
    let mut c = vec![0i64; q as usize + 1];
    c[1] = -1;
    c[q as usize] = 1;
    Poly::from_int_coeffs(field, &c)
}

pub(crate) fn subfield_elements(field: &Field, q: u64) -> Vec<FieldElement> {
    field.elements().filter(|x| x.pow(q as u128) == *x).collect()
}

/// Builds the curve and all `3q` points `P_{i,α}`, verifying each lies on
/// the curve and that the two listed torsion points have order 3.
pub fn iso_family(q: u64) -> Result<IsoFamily> {
    let (p, e) = check_q(q)?;
    let field = Field::new(p, 2 * e)?;
    let t = t_poly(&field, q);
    let zero = Poly::zero(&field);
    let curve =
        FFEllipticCurve::new(zero.clone(), zero.clone(), t.clone(), zero.clone(), zero)?;
    let zeta = field
        .elements()
        .find(|x| x.mul(x).add(x).add(&field.one()).is_zero())
        .ok_or_else(|| Error::InvalidInput("no cube root of unity".into()))?;
    let alphas = subfield_elements(&field, q);
    debug_assert_eq!(alphas.len() as u64, q);
    let exp = (q + 1) / 3;
    let mut points = Vec::with_capacity(3 * q as usize);
    for i in 0..3u32 {
        let zi = zeta.pow(i as u128);
        for alpha in &alphas {
            let u_plus_a = Poly::from_elements(&field, &[alpha.clone(), field.one()]);
            let x = u_plus_a.pow(exp as u32).mul_elem(&zi);
            let pt = FFPoint::affine(
                RationalFunction::from_poly(x),
                RationalFunction::from_poly(u_plus_a),
            );
            if !curve.contains(&pt) {
                return Err(Error::OffCurve);
            }
            points.push(pt);
        }
    }
    let zero_rf = RationalFunction::zero(&field);
    let torsion = [
        FFPoint::affine(zero_rf.clone(), zero_rf.clone()),
        FFPoint::affine(zero_rf, RationalFunction::from_poly(t.neg())),
    ];
    for tp in &torsion {
        if !curve.contains(tp) {
            return Err(Error::OffCurve);
        }
        if !curve.mul_scalar(tp, 3)?.is_infinity() || curve.double(tp)?.is_infinity() {
            return Err(Error::Inconsistent("torsion point does not have order 3".into()));
        }
    }
    Ok(IsoFamily { q, field, curve, zeta, alphas, points, torsion })
}

impl IsoFamily {
    pub fn point(&self, i: usize, alpha_idx: usize) -> &FFPoint {
        &self.points[i * self.q as usize + alpha_idx]
    }

    pub fn label(&self, idx: usize) -> String {
        let i = idx / self.q as usize;
        let a = idx % self.q as usize;
        format!("P[{},{:?}]", i, self.alphas[a])
    }

    /// Indices of the discriminant basis `{P_{i,α} : i ∈ {1,2}, α ≠ 0}`.
    pub fn basis_indices(&self) -> Vec<usize> {
        let q = self.q as usize;
        let zero_idx = self.alphas.iter().position(|a| a.is_zero()).expect("0 in F_q");
        let mut out = vec![];
        for i in 1..3 {
            for a in 0..q {
                if a != zero_idx {
                    out.push(i * q + a);
                }
            }
        }
        out
    }

    /// Known relations: `Σ_i P_{i,α}` vanishes and `Σ_α P_{i,α}` is torsion.
    pub fn relations(&self) -> Vec<Vec<i64>> {
        let q = self.q as usize;
        let mut rels = vec![];
        for a in 0..q {
            let mut v = vec![0i64; 3 * q];
            for i in 0..3 {
                v[i * q + a] = 1;
            }
            rels.push(v);
        }
        for i in 0..3 {
            let mut v = vec![0i64; 3 * q];
            for a in 0..q {
                v[i * q + a] = 1;
            }
            rels.push(v);
        }
        rels
    }

    /// Closed-form entry `⟨P_{i,α}, P_{j,β}⟩`.
    pub fn closed_pairing(&self, i: usize, alpha: &FieldElement, j: usize, beta: &FieldElement) -> BigRational {
        let qm1 = (self.q - 1) as i64;
        let same_i = i == j;
        let same_a = alpha == beta;
        match (same_i, same_a) {
            (true, true) => ratio(2 * qm1, 3),
            (true, false) => ratio(-2, 3),
            (false, true) => ratio(-qm1, 3),
            (false, false) => ratio(1, 3),
        }
    }
}

/// The `3q × 3q` Gram matrix of the visible points from the closed-form
/// height table.
pub fn iso_gram_closed(q: u64) -> Result<Gram> {
    check_q(q)?;
    let fam = iso_family(q)?;
    let n = 3 * q as usize;
    let mut entries = vec![vec![BigRational::default(); n]; n];
    for bi in 0..n {
        for bj in 0..n {
            let (i, a) = (bi / q as usize, bi % q as usize);
            let (j, b) = (bj / q as usize, bj % q as usize);
            entries[bi][bj] =
                fam.closed_pairing(i, &fam.alphas[a], j, &fam.alphas[b]);
        }
    }
    let labels = (0..n).map(|idx| fam.label(idx)).collect();
    Gram::new(labels, entries)
}

/// The base extra points `P_β`, one per solution of `β^{q-1} = -1` when `p`
/// is odd, or one per `β ∈ F_{q²} \ F_q` when `p = 2`; all verified on-curve.
pub fn iso_extra_points(fam: &IsoFamily) -> Result<Vec<FFPoint>> {
    let field = &fam.field;
    let q = fam.q;
    let exp3 = ((q + 1) / 3) as u32;
    let mut out = vec![];
    if field.p() > 2 {
        let minus_one = field.one().neg();
        for beta in field.elements() {
            if beta.is_zero() || beta.pow((q - 1) as u128) != minus_one {
                continue;
            }
            // X = -((u² - β²)/(2β))^((q+1)/3), Y = (u - β)^(q+1)/(2β)
            let inv_2b = field.from_u64(2).mul(&beta).inv()?;
            let beta2 = beta.mul(&beta);
            let u2_minus_b2 =
                Poly::from_elements(field, &[beta2.neg(), field.zero(), field.one()]);
            let x = u2_minus_b2.mul_elem(&inv_2b).pow(exp3).neg();
            let u_minus_b = Poly::from_elements(field, &[beta.neg(), field.one()]);
            let y = u_minus_b.pow(q as u32 + 1).mul_elem(&inv_2b);
            let pt =
                FFPoint::affine(RationalFunction::from_poly(x), RationalFunction::from_poly(y));
            if !fam.curve.contains(&pt) {
                return Err(Error::OffCurve);
            }
            out.push(pt);
        }
        debug_assert_eq!(out.len() as u64, q - 1);
    } else {
        for beta in field.elements() {
            if beta.pow(q as u128) == beta {
                continue; // β must avoid F_q
            }
            let beta_q = beta.pow(q as u128);
            let s_inv = beta.add(&beta_q).inv()?;
            let u_plus_b = Poly::from_elements(field, &[beta.clone(), field.one()]);
            let u_plus_bq = Poly::from_elements(field, &[beta_q, field.one()]);
            let x = u_plus_b.mul(&u_plus_bq).mul_elem(&s_inv).pow(exp3);
            let y = u_plus_b.pow(q as u32 + 1).mul_elem(&s_inv);
            let pt =
                FFPoint::affine(RationalFunction::from_poly(x), RationalFunction::from_poly(y));
            if !fam.curve.contains(&pt) {
                return Err(Error::OffCurve);
            }
            out.push(pt);
        }
        debug_assert_eq!(out.len() as u64, q * q - q);
    }
    Ok(out)
}

/// Full orbit of the extra points under `u ↦ u + α` and `X ↦ ζX`:
/// `3q(q-1)` points for odd `p`.
pub fn iso_extra_orbit(fam: &IsoFamily) -> Result<Vec<FFPoint>> {
    let base = iso_extra_points(fam)?;
    let mut out = vec![];
    for pt in &base {
        let (x, y) = match pt {
            FFPoint::Affine(x, y) => (x, y),
            FFPoint::Infinity => unreachable!("extra points are affine"),
        };
        for alpha in &fam.alphas {
            let na = alpha.neg();
            let xs = x.shift_variable(&na);
            let ys = y.shift_variable(&na);
            for i in 0..3u32 {
                let zi = fam.zeta.pow(i as u128);
                let xi = xs.mul(&RationalFunction::constant(zi));
                let pt = FFPoint::affine(xi, ys.clone());
                debug_assert!(fam.curve.contains(&pt));
                out.push(pt);
            }
        }
    }
    // fold duplicates in the p = 2 parameterization down to the stated orbit
    let mut seen = std::collections::HashSet::new();
    out.retain(|p| seen.insert(p.cache_key()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_q5() {
        let fam = iso_family(5).unwrap();
        assert_eq!(fam.points.len(), 15);
        // Σ_α P_{i,α} is a non-trivial 3-torsion point: the divisor of
        // X - ζ^i Y^((q+1)/3) is (0,0) + Σ_α P_{i,α} - 6·O, so the sum is
        // -(0,0) = (0,-t)
        for i in 0..3 {
            let mut acc = FFPoint::Infinity;
            for a in 0..5 {
                acc = fam.curve.add(&acc, fam.point(i, a)).unwrap();
            }
            assert_eq!(acc, fam.torsion[1]);
            assert_eq!(acc, fam.curve.neg(&fam.torsion[0]));
        }
        // Σ_i P_{i,α} = O
        for a in 0..5 {
            let mut acc = FFPoint::Infinity;
            for i in 0..3 {
                acc = fam.curve.add(&acc, fam.point(i, a)).unwrap();
            }
            assert!(acc.is_infinity());
        }
        assert!(iso_family(7).is_err()); // 7 ≡ 1 mod 3
        assert!(iso_family(9).is_err()); // 9 ≡ 0 mod 3
    }

    #[test]
    fn closed_gram_row_sums() {
        // rows of the i-blocks sum to zero over i for fixed α
        let g = iso_gram_closed(5).unwrap();
        let e = g.entries();
        for row in 0..15 {
            // sum over the three translates (i, α), (i+1, α), (i+2, α)
            let a = row % 5;
            let s: BigRational =
                (0..3).map(|i| e[row][i * 5 + a].clone()).sum();
            assert_eq!(s, BigRational::default());
        }
    }

    #[test]
    fn extra_points_q5() {
        let fam = iso_family(5).unwrap();
        let base = iso_extra_points(&fam).unwrap();
        assert_eq!(base.len(), 4);
        let orbit = iso_extra_orbit(&fam).unwrap();
        assert_eq!(orbit.len(), 60);
        // coordinates live in F_{q²}(u) by construction; on-curve verified
    }

    #[test]
    fn extra_points_q8() {
        let fam = iso_family(8).unwrap();
        assert_eq!(fam.points.len(), 24);
        let base = iso_extra_points(&fam).unwrap();
        assert_eq!(base.len(), 56);
        let orbit = iso_extra_orbit(&fam).unwrap();
        assert_eq!(orbit.len(), 3 * 8 * 7);
    }
}
