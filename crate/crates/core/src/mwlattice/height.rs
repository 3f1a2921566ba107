//! Canonical height pairing by the doubling limit: `⟨P,P⟩` is the limit of
//! the estimates `e_n = 4^{-n} · h_x(2^n P)` where `h_x` is the x-coordinate
//! degree.  The fiber corrections `h_x(2^n P) - 4^n ⟨P,P⟩` are bounded and
//! become 2-periodic in `n` (each bad fiber contributes through a component
//! position that doubles each step, and the contribution is symmetric under
//! negation), so the lag-2 difference `r_n = (16 e_{n+2} - e_n)/15` reaches
//! the limit exactly at small depth.  Each `r_n` is rounded to the nearest
//! rational with denominator dividing `12 q²` and the chain stops once three
//! consecutive rounded values coincide; a chain that fails to stabilize by
//! the depth cap is an error, never rounded silently.  Off-diagonal pairings
//! come from the polarization identity.

use super::curve::{FFEllipticCurve, FFPoint};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Mutex;

pub const DOUBLING_CAP: u32 = 8;

pub struct HeightOracle<'a> {
    curve: &'a FFEllipticCurve,
    rounding_den: u64,
    cache: Mutex<HashMap<Vec<u64>, BigRational>>,
}

impl<'a> HeightOracle<'a> {
    /// Oracle for a family with parameter `q`; rounding denominator `12 q²`.
    pub fn new(curve: &'a FFEllipticCurve, q: u64) -> HeightOracle<'a> {
        HeightOracle { curve, rounding_den: 12 * q * q, cache: Mutex::new(HashMap::new()) }
    }

    pub fn with_denominator(curve: &'a FFEllipticCurve, d: u64) -> HeightOracle<'a> {
        HeightOracle { curve, rounding_den: d, cache: Mutex::new(HashMap::new()) }
    }

    /// Nearest multiple of `1/D` (half rounds away from zero toward +∞).
    fn round_to_denominator(&self, x: &BigRational) -> BigRational {
        let d = BigInt::from(self.rounding_den);
        let scaled = x * BigRational::from_integer(d.clone());
        let num: BigInt = scaled.numer() * 2 + scaled.denom();
        let den: BigInt = scaled.denom() * 2;
        BigRational::new(num.div_floor(&den), d)
    }

    /// Canonical `⟨P,P⟩` by the accelerated doubling protocol.
    pub fn height(&self, p: &FFPoint) -> Result<BigRational> {
        if p.is_infinity() {
            return Ok(BigRational::zero());
        }
        let key = p.cache_key();
        if let Some(v) = self.cache.lock().unwrap().get(&key) {
            return Ok(v.clone());
        }
        if !self.curve.contains(p) {
            return Err(Error::OffCurve);
        }
        let x = p.x().expect("affine point");
        let mut num = x.num().clone();
        let mut den = x.den().clone();
        let mut reached_origin = false;
        let mut estimates: Vec<BigRational> =
            vec![BigRational::from_integer(p.naive_height().into())];
        let mut rounded: Vec<BigRational> = vec![];
        let sixteen = BigRational::from_integer(16.into());
        let fifteen = BigRational::from_integer(15.into());
        let mut result = None;
        for n in 1..=DOUBLING_CAP {
            let h = if reached_origin {
                0
            } else {
                match self.curve.double_x(&num, &den) {
                    Some((nn, nd)) => {
                        num = nn;
                        den = nd;
                        num.degree().unwrap_or(0).max(den.degree().unwrap_or(0)) as u64
                    }
                    None => {
                        reached_origin = true;
                        0
                    }
                }
            };
            let pow4 = BigRational::from_integer(BigInt::from(1u64 << (2 * n.min(31))));
            estimates.push(BigRational::from_integer(h.into()) / pow4);
            if estimates.len() >= 3 {
                let k = estimates.len() - 3;
                let r = (&sixteen * &estimates[k + 2] - &estimates[k]) / &fifteen;
                rounded.push(self.round_to_denominator(&r));
                let m = rounded.len();
                if m >= 3 && rounded[m - 1] == rounded[m - 2] && rounded[m - 2] == rounded[m - 3]
                {
                    result = Some(rounded[m - 1].clone());
                    break;
                }
            }
        }
        let value = result.ok_or(Error::NoStabilization { cap: DOUBLING_CAP })?;
        self.cache.lock().unwrap().insert(key, value.clone());
        Ok(value)
    }

    /// `⟨P,Q⟩ = (⟨P+Q,P+Q⟩ - ⟨P,P⟩ - ⟨Q,Q⟩)/2`.
    pub fn pairing(&self, p: &FFPoint, q: &FFPoint) -> Result<BigRational> {
        if p == q {
            return self.height(p);
        }
        let sum = self.curve.add(p, q)?;
        let hs = self.height(&sum)?;
        let hp = self.height(p)?;
        let hq = self.height(q)?;
        Ok((hs - hp - hq) / BigRational::from_integer(2.into()))
    }

    /// Full pairing matrix of a list of points, computed in parallel.
    pub fn gram(&self, points: &[FFPoint], threads: usize) -> Result<Vec<Vec<BigRational>>> {
        let n = points.len();
        let mut pairs: Vec<(usize, usize)> = vec![];
        for i in 0..n {
            for j in i..n {
                pairs.push((i, j));
            }
        }
        let threads = threads.max(1).min(64);
        let chunk = pairs.len().div_ceil(threads);
        let results: Vec<Result<Vec<(usize, usize, BigRational)>>> =
            std::thread::scope(|scope| {
                let mut handles = vec![];
                for t in 0..threads {
                    let lo = t * chunk;
                    let hi = ((t + 1) * chunk).min(pairs.len());
                    let pairs = &pairs;
                    let this = &*self;
                    handles.push(scope.spawn(move || {
                        let mut out = vec![];
                        for &(i, j) in &pairs[lo..hi] {
                            out.push((i, j, this.pairing(&points[i], &points[j])?));
                        }
                        Ok(out)
                    }));
                }
                handles.into_iter().map(|h| h.join().expect("gram thread panicked")).collect()
            });
        let mut m = vec![vec![BigRational::zero(); n]; n];
        for r in results {
            for (i, j, v) in r? {
                m[i][j] = v.clone();
                m[j][i] = v;
            }
        }
        Ok(m)
    }
}

/// One-off pairing with the family rounding denominator `12 q²`.
pub fn canonical_pairing(
    curve: &FFEllipticCurve,
    p: &FFPoint,
    q_point: &FFPoint,
    q: u64,
) -> Result<BigRational> {
    HeightOracle::new(curve, q).pairing(p, q_point)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ff::{Field, Poly, RationalFunction};
    use crate::linalg::ratio;

    fn iso_q5() -> (FFEllipticCurve, Field) {
        let k = Field::new(5, 2).unwrap();
        let mut t = vec![0i64; 6];
        t[1] = -1;
        t[5] = 1;
        let t = Poly::from_int_coeffs(&k, &t);
        let zero = Poly::zero(&k);
        (
            FFEllipticCurve::new(zero.clone(), zero.clone(), t, zero.clone(), zero).unwrap(),
            k,
        )
    }

    fn zeta_of(k: &Field) -> crate::ff::FieldElement {
        k.elements()
            .find(|x| x.mul(x).add(x).add(&k.one()).is_zero())
            .expect("cube root of unity")
    }

    fn family_point(e: &FFEllipticCurve, i: u32, alpha: i64) -> FFPoint {
        let k = e.field().clone();
        let zeta = zeta_of(&k);
        let u_plus_a = Poly::from_int_coeffs(&k, &[alpha, 1]);
        FFPoint::affine(
            RationalFunction::from_poly(u_plus_a.pow(2).mul_elem(&zeta.pow(i as u128))),
            RationalFunction::from_poly(u_plus_a),
        )
    }

    #[test]
    fn torsion_height_zero() {
        let (e, k) = iso_q5();
        let zero = RationalFunction::zero(&k);
        let t0 = FFPoint::affine(zero.clone(), zero);
        let oracle = HeightOracle::new(&e, 5);
        assert_eq!(oracle.height(&t0).unwrap(), BigRational::zero());
        assert_eq!(oracle.height(&FFPoint::Infinity).unwrap(), BigRational::zero());
    }

    #[test]
    fn diagonal_matches_closed_form() {
        // ⟨P_{0,0}, P_{0,0}⟩ = 2(q-1)/3 = 8/3 at q = 5
        let (e, _) = iso_q5();
        let oracle = HeightOracle::new(&e, 5);
        let p = family_point(&e, 0, 0);
        assert_eq!(p.naive_height(), 2);
        assert_eq!(oracle.height(&p).unwrap(), ratio(8, 3));
    }

    #[test]
    fn off_diagonal_matches_closed_form() {
        let (e, _) = iso_q5();
        let oracle = HeightOracle::new(&e, 5);
        // i = j, α ≠ β: -2/3
        let a = family_point(&e, 0, 0);
        let b = family_point(&e, 0, 1);
        assert_eq!(oracle.pairing(&a, &b).unwrap(), ratio(-2, 3));
        // i ≠ j, α = β: -(q-1)/3 = -4/3
        let c = family_point(&e, 1, 0);
        assert_eq!(oracle.pairing(&a, &c).unwrap(), ratio(-4, 3));
        // i ≠ j, α ≠ β: 1/3
        let d = family_point(&e, 2, 3);
        assert_eq!(oracle.pairing(&a, &d).unwrap(), ratio(1, 3));
    }

    #[test]
    fn quadraticity() {
        let (e, _) = iso_q5();
        let oracle = HeightOracle::new(&e, 5);
        let p = family_point(&e, 1, 2);
        let two_p = e.double(&p).unwrap();
        let h1 = oracle.height(&p).unwrap();
        let h2 = oracle.height(&two_p).unwrap();
        assert_eq!(h2, h1 * BigRational::from_integer(4.into()));
    }
}
