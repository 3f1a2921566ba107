//! Closed-form invariants of Artin-Schreier covers `z^q - z = f`:
//! genus, p-rank, Hodge polygon, the Newton-equals-Hodge congruence,
//! endomorphism-algebra dimensions, and the degree-p isogeny decomposition.

use crate::orbits::factor_prime_power;
use crate::{Error, Result};
use num_rational::Rational64;

/// Combinatorial data of a cover: only the pole multiplicities matter for
/// every formula implemented here, so pole points stay anonymous.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ASCoverSpec {
    pub p: u64,
    pub q: u64,
    pub base_genus: u64,
    pub base_prank: u64,
    pub poles: Vec<u64>,
}

impl ASCoverSpec {
    pub fn new(p: u64, q: u64, poles: Vec<u64>) -> Result<ASCoverSpec> {
        ASCoverSpec::with_base(p, q, 0, 0, poles)
    }

    pub fn with_base(
        p: u64,
        q: u64,
        base_genus: u64,
        base_prank: u64,
        poles: Vec<u64>,
    ) -> Result<ASCoverSpec> {
        let (pp, _) = factor_prime_power(q)?;
        if pp != p {
            return Err(Error::NotPowerOfP { r: q, p });
        }
        if poles.is_empty() {
            return Err(Error::InvalidInput("at least one pole is required".into()));
        }
        for &a in &poles {
            if a == 0 || a % p == 0 {
                return Err(Error::PoleOrderDivisibleByP { order: a, p });
            }
        }
        if base_prank > base_genus {
            return Err(Error::InvalidInput("base p-rank exceeds base genus".into()));
        }
        let mut poles = poles;
        poles.sort_unstable();
        Ok(ASCoverSpec { p, q, base_genus, base_prank, poles })
    }

    pub fn pole_count(&self) -> u64 {
        self.poles.len() as u64
    }

    pub fn sum_ai_plus_1(&self) -> u64 {
        self.poles.iter().map(|&a| a + 1).sum()
    }
}

/// Genus from `2g - 2 = q(2g_C - 2) + (q-1) Σ (a_i + 1)`.
pub fn as_genus(spec: &ASCoverSpec) -> Result<u64> {
    let q = spec.q as i128;
    let rhs = q * (2 * spec.base_genus as i128 - 2) + (q - 1) * spec.sum_ai_plus_1() as i128;
    let two_g = rhs + 2;
    if two_g < 0 || two_g % 2 != 0 {
        return Err(Error::InvalidInput(format!("genus formula gives 2g = {two_g}")));
    }
    Ok((two_g / 2) as u64)
}

/// Multiplicity of the regular character block in the middle cohomology of
/// a cover of `P¹`: the integer `R = -2 + Σ (a_i + 1) = 2g/(q-1)`.
pub fn rep_multiplicity(spec: &ASCoverSpec) -> Result<u64> {
    if spec.base_genus != 0 {
        return Err(Error::InvalidInput("defined for rational base only".into()));
    }
    Ok(spec.sum_ai_plus_1() - 2)
}

/// p-rank from the Deuring-Shafarevich formula `s = 1 + q(s_C - 1) + m(q-1)`.
pub fn as_prank(spec: &ASCoverSpec) -> u64 {
    let q = spec.q as i128;
    let s = 1 + q * (spec.base_prank as i128 - 1) + spec.pole_count() as i128 * (q - 1);
    debug_assert!(s >= 0);
    s as u64
}

/// Sorted multiset of Newton/Hodge slopes: rationals in `[0,1]`, symmetric
/// under `λ ↔ 1-λ`, `2g` entries summing to `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlopeSet {
    slopes: Vec<Rational64>,
}

impl SlopeSet {
    pub fn new(mut slopes: Vec<Rational64>) -> Result<SlopeSet> {
        slopes.sort();
        let n = slopes.len();
        if n % 2 != 0 {
            return Err(Error::InvalidInput("slope count must be even".into()));
        }
        let one = Rational64::new(1, 1);
        for i in 0..n {
            let s = slopes[i];
            if s < Rational64::new(0, 1) || s > one {
                return Err(Error::InvalidInput(format!("slope {s} outside [0,1]")));
            }
            // symmetry: the multiset is fixed by λ ↦ 1-λ
            if one - s != slopes[n - 1 - i] {
                return Err(Error::InvalidInput("slopes are not symmetric".into()));
            }
        }
        let total: Rational64 = slopes.iter().sum();
        if total != Rational64::new(n as i64 / 2, 1) {
            return Err(Error::InvalidInput("slopes do not sum to the genus".into()));
        }
        Ok(SlopeSet { slopes })
    }

    pub fn empty() -> SlopeSet {
        SlopeSet { slopes: vec![] }
    }

    pub fn slopes(&self) -> &[Rational64] {
        &self.slopes
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn genus(&self) -> u64 {
        (self.slopes.len() / 2) as u64
    }

    /// Multiplicity of slope 0.
    pub fn zero_multiplicity(&self) -> u64 {
        self.slopes.iter().take_while(|s| **s == Rational64::new(0, 1)).count() as u64
    }

    /// True when `self` (as a lower convex polygon) lies on or above `other`
    /// with the same endpoints.
    pub fn lies_on_or_above(&self, other: &SlopeSet) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let mut acc_self = Rational64::new(0, 1);
        let mut acc_other = Rational64::new(0, 1);
        for i in 0..self.len() {
            acc_self += self.slopes[i];
            acc_other += other.slopes[i];
            if acc_self < acc_other {
                return false;
            }
        }
        acc_self == acc_other
    }
}

/// The Hodge polygon of a cover of `P^1`: slopes 0 and 1 with multiplicity
/// `(m-1)(q-1)`, and for each pole of order `a > 1` the slopes `j/a`
/// (`0 < j < a`) each with multiplicity `q-1`.
pub fn hodge_polygon(spec: &ASCoverSpec) -> Result<SlopeSet> {
    if spec.base_genus != 0 {
        return Err(Error::InvalidInput("Hodge polygon requires a rational base".into()));
    }
    let qm1 = (spec.q - 1) as i64;
    let edge = (spec.pole_count() as i64 - 1) * qm1;
    let mut slopes = vec![];
    for _ in 0..edge {
        slopes.push(Rational64::new(0, 1));
        slopes.push(Rational64::new(1, 1));
    }
    for &a in &spec.poles {
        for j in 1..a {
            for _ in 0..qm1 {
                slopes.push(Rational64::new(j as i64, a as i64));
            }
        }
    }
    let hp = SlopeSet::new(slopes)?;
    debug_assert_eq!(hp.len() as u64, 2 * as_genus(spec)?);
    Ok(hp)
}

/// Newton equals Hodge iff `p ≡ 1 (mod lcm(a_i))`.
pub fn newton_equals_hodge(spec: &ASCoverSpec) -> Result<bool> {
    if spec.base_genus != 0 {
        return Err(Error::InvalidInput("criterion requires a rational base".into()));
    }
    let mut l = 1u64;
    for &a in &spec.poles {
        l = num_integer::lcm(l, a);
    }
    Ok(spec.p % l == 1 % l)
}

/// Which endomorphism-algebra dimension to report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EndoRegime {
    /// image of the group algebra of `F_q`: dimension `q - 1`
    ImageOfGroupAlgebra,
    /// ordinary Jacobian: commutative of dimension `2g`
    Ordinary,
    /// supersingular Jacobian: invariants of dimension `4g²/(q-1)`
    SupersingularInvariants,
}

/// Endomorphism-algebra dimensions.  `Ordinary` requires the spec to actually
/// be ordinary; supersingularity is asserted by the caller (this module never
/// decides it).
pub fn endo_dims(spec: &ASCoverSpec, regime: EndoRegime) -> Result<u64> {
    match regime {
        EndoRegime::ImageOfGroupAlgebra => Ok(spec.q - 1),
        EndoRegime::Ordinary => {
            let g = as_genus(spec)?;
            if as_prank(spec) != g {
                return Err(Error::InvalidInput("spec is not ordinary".into()));
            }
            Ok(2 * g)
        }
        EndoRegime::SupersingularInvariants => {
            let g = as_genus(spec)?;
            let num = 4 * g * g;
            if num % (spec.q - 1) != 0 {
                return Err(Error::NotExact(format!(
                    "4g² = {num} not divisible by q-1 = {}",
                    spec.q - 1
                )));
            }
            Ok(num / (spec.q - 1))
        }
    }
}

/// Isogeny decomposition over a rational base: `(q-1)/(p-1)` copies of the
/// degree-`p` cover with the same pole type.
pub fn decompose(spec: &ASCoverSpec) -> Result<Vec<ASCoverSpec>> {
    if spec.base_genus != 0 {
        return Err(Error::InvalidInput("decomposition requires a rational base".into()));
    }
    let copies = (spec.q - 1) / (spec.p - 1);
    let factor = ASCoverSpec::new(spec.p, spec.p, spec.poles.clone())?;
    Ok(vec![factor; copies as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_examples() {
        let s = ASCoverSpec::new(3, 9, vec![1, 1]).unwrap();
        assert_eq!(as_genus(&s).unwrap(), 8);
        let s = ASCoverSpec::new(2, 4, vec![3]).unwrap();
        assert_eq!(as_genus(&s).unwrap(), 3);
        let s = ASCoverSpec::new(3, 3, vec![2]).unwrap();
        assert_eq!(as_genus(&s).unwrap(), 1);
        // positive-genus base
        let s = ASCoverSpec::with_base(2, 4, 1, 1, vec![1, 1]).unwrap();
        assert_eq!(as_genus(&s).unwrap(), 4 + 3); // q(2g-2)=0, (q-1)Σ=12, 2g=14
    }

    #[test]
    fn prank_examples() {
        // single pole: p-rank 0
        for q in [2u64, 4, 3, 9, 5, 25] {
            let p = factor_prime_power(q).unwrap().0;
            let s = ASCoverSpec::new(p, q, vec![1]).unwrap();
            assert_eq!(as_prank(&s), 0);
        }
        // simple poles: ordinary
        let s = ASCoverSpec::new(3, 9, vec![1, 1]).unwrap();
        assert_eq!(as_prank(&s), 8);
        assert_eq!(as_prank(&s), as_genus(&s).unwrap());
        // elliptic base with two simple poles
        let s = ASCoverSpec::with_base(2, 4, 1, 1, vec![1, 1]).unwrap();
        assert_eq!(as_prank(&s), 1 + 4 * 0 + 2 * 3);
    }

    #[test]
    fn prank_at_most_genus() {
        for p in [2u64, 3, 5] {
            for e in 1..=2u32 {
                let q = p.pow(e);
                for poles in [vec![1], vec![2], vec![3], vec![4], vec![1, 1], vec![2, 1]] {
                    if poles.iter().any(|a| a % p == 0) {
                        continue;
                    }
                    let s = ASCoverSpec::new(p, q, poles).unwrap();
                    assert!(as_prank(&s) <= as_genus(&s).unwrap());
                }
            }
        }
    }

    #[test]
    fn hodge_examples() {
        let s = ASCoverSpec::new(3, 3, vec![2]).unwrap();
        let hp = hodge_polygon(&s).unwrap();
        assert_eq!(hp.slopes(), &[Rational64::new(1, 2), Rational64::new(1, 2)]);

        let s = ASCoverSpec::new(5, 5, vec![4]).unwrap();
        let hp = hodge_polygon(&s).unwrap();
        let mut expect = vec![];
        for j in 1..4 {
            for _ in 0..4 {
                expect.push(Rational64::new(j, 4));
            }
        }
        expect.sort();
        assert_eq!(hp.slopes(), &expect[..]);

        let s = ASCoverSpec::new(3, 9, vec![1, 1]).unwrap();
        let hp = hodge_polygon(&s).unwrap();
        assert_eq!(hp.zero_multiplicity(), 8);
        assert_eq!(hp.len(), 16);
        // symmetric with sum g is enforced by the constructor
        assert_eq!(hp.genus(), 8);
    }

    #[test]
    fn newton_hodge_criterion() {
        let s = ASCoverSpec::new(5, 5, vec![4]).unwrap();
        assert!(newton_equals_hodge(&s).unwrap());
        // all simple poles: lcm 1, always true
        let s = ASCoverSpec::new(7, 7, vec![1, 1, 1]).unwrap();
        assert!(newton_equals_hodge(&s).unwrap());
        // 3 ≡ 1 mod 2
        let s = ASCoverSpec::new(3, 3, vec![2]).unwrap();
        assert!(newton_equals_hodge(&s).unwrap());
        // 3 ≢ 1 mod 4
        let s = ASCoverSpec::new(3, 3, vec![4]).unwrap();
        assert!(!newton_equals_hodge(&s).unwrap());
    }

    #[test]
    fn rep_multiplicity_is_2g_over_qm1() {
        for (p, q, poles) in [(3u64, 9u64, vec![1u64, 1]), (2, 4, vec![3]), (5, 5, vec![4])] {
            let s = ASCoverSpec::new(p, q, poles).unwrap();
            let r = rep_multiplicity(&s).unwrap();
            assert_eq!(r * (q - 1), 2 * as_genus(&s).unwrap());
        }
    }

    #[test]
    fn endo_dimensions() {
        let s = ASCoverSpec::new(3, 9, vec![1, 1]).unwrap();
        assert_eq!(endo_dims(&s, EndoRegime::Ordinary).unwrap(), 16);
        assert_eq!(endo_dims(&s, EndoRegime::ImageOfGroupAlgebra).unwrap(), 8);
        let s = ASCoverSpec::new(2, 4, vec![3]).unwrap();
        assert_eq!(endo_dims(&s, EndoRegime::SupersingularInvariants).unwrap(), 12);
        // ordinary regime rejected for a non-ordinary spec
        assert!(endo_dims(&s, EndoRegime::Ordinary).is_err());
    }

    #[test]
    fn decompose_examples() {
        let s = ASCoverSpec::new(2, 2, vec![3]).unwrap();
        assert_eq!(decompose(&s).unwrap(), vec![s.clone()]);

        let s = ASCoverSpec::new(2, 4, vec![3]).unwrap();
        let parts = decompose(&s).unwrap();
        assert_eq!(parts.len(), 3);
        for part in &parts {
            assert_eq!(part.q, 2);
            assert_eq!(part.poles, vec![3]);
        }
        // genus additivity over a rational base
        let g_total: u64 = as_genus(&s).unwrap();
        let g_sum: u64 = parts.iter().map(|t| as_genus(t).unwrap()).sum();
        assert_eq!(g_total, g_sum);
    }

    #[test]
    fn genus_additivity_exhaustive_small() {
        for p in [2u64, 3] {
            for e in 1..=2u32 {
                let q = p.pow(e);
                if q > 16 {
                    continue;
                }
                for poles in [vec![1], vec![2], vec![3], vec![1, 1], vec![2, 1], vec![1, 1, 1]] {
                    if poles.iter().any(|a| a % p == 0) {
                        continue;
                    }
                    let s = ASCoverSpec::new(p, q, poles).unwrap();
                    let parts = decompose(&s).unwrap();
                    let g_sum: u64 = parts.iter().map(|t| as_genus(t).unwrap()).sum();
                    assert_eq!(as_genus(&s).unwrap(), g_sum);
                }
            }
        }
    }

    #[test]
    fn spec_validation() {
        assert!(ASCoverSpec::new(3, 9, vec![3]).is_err());
        assert!(ASCoverSpec::new(3, 8, vec![1]).is_err());
        assert!(ASCoverSpec::new(3, 9, vec![]).is_err());
        assert!(ASCoverSpec::with_base(3, 9, 1, 2, vec![1]).is_err());
    }
}
