//! Frobenius orbits on character groups, self-dual orbit enumeration,
//! conductor parity bookkeeping, and the resulting lower bounds on analytic
//! rank and supersingular multiplicity.
//!
//! Characters of the geometric Galois group are identified with field
//! elements `β`; the arithmetic Frobenius acts by `β ↦ β^r`.  An orbit is
//! self-dual when it is closed under negation.

use crate::addpoly::{poly_to_roots, AdditivePolynomial};
use crate::ff::{Field, FieldElement};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;

/// Partition of a Frobenius-stable set into orbits of `x ↦ x^r`.
///
/// The orbit `{0}` is listed first when present; the remaining orbits are
/// ordered by their least element, and each orbit starts at its least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitPartition {
    pub r: u64,
    pub orbits: Vec<Vec<FieldElement>>,
}

impl OrbitPartition {
    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    /// Orbits other than `{0}`.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<FieldElement>> {
        self.orbits.iter().filter(|o| !(o.len() == 1 && o[0].is_zero()))
    }
}

/// Partitions `set` into orbits of the `r`-power Frobenius.  The set must be
/// stable under `x ↦ x^r`.
pub fn frobenius_orbits(set: &[FieldElement], r: u64) -> Result<OrbitPartition> {
    if set.is_empty() {
        return Ok(OrbitPartition { r, orbits: vec![] });
    }
    let field = set[0].field().clone();
    for x in set {
        if x.field() != &field {
            return Err(Error::MismatchedFields);
        }
    }
    if field.power_of_p(r).is_none() {
        return Err(Error::NotPowerOfP { r, p: field.p() });
    }
    let mut members: Vec<FieldElement> = set.to_vec();
    members.sort();
    members.dedup();
    let member_set: std::collections::HashSet<&FieldElement> = members.iter().collect();
    for x in &members {
        if !member_set.contains(&x.pow(r as u128)) {
            return Err(Error::NotFrobeniusStable);
        }
    }
    let mut seen: std::collections::HashSet<FieldElement> = Default::default();
    let mut orbits: Vec<Vec<FieldElement>> = vec![];
    for x in &members {
        if seen.contains(x) {
            continue;
        }
        let mut orbit = vec![x.clone()];
        seen.insert(x.clone());
        let mut cur = x.pow(r as u128);
        while &cur != x {
            seen.insert(cur.clone());
            orbit.push(cur.clone());
            cur = cur.pow(r as u128);
        }
        orbits.push(orbit);
    }
    // {0} first, then by least element (members are scanned in ascending
    // order, so orbits are already sorted by least element)
    orbits.sort_by_key(|o| !(o.len() == 1 && o[0].is_zero()));
    Ok(OrbitPartition { r, orbits })
}

/// Nontrivial orbits of `Fr_r` on the roots of `z^{r^ν} + z`, each verified
/// self-dual.  Returns the orbit count together with the partition.
///
/// `r` must be odd.  The count is always at least `(r^ν - 1)/(2ν)` and each
/// orbit has size at most `2ν`.
pub fn self_dual_orbits(r: u64, nu: u32) -> Result<(u64, OrbitPartition)> {
    if r % 2 == 0 {
        return Err(Error::EvenR);
    }
    if nu == 0 {
        return Err(Error::InvalidInput("ν must be positive".into()));
    }
    let (p, e) = factor_prime_power(r)?;
    let ambient = Field::new(p, 2 * nu * e)?;
    // roots of z^{r^ν} + z, i.e. z with z^{r^ν} = -z
    let rv = pow_u64(r, nu)?;
    let mut coeffs = vec![ambient.zero(); (nu * e) as usize + 1];
    coeffs[0] = ambient.one();
    coeffs[(nu * e) as usize] = ambient.one();
    let a = AdditivePolynomial::new(&ambient, coeffs)?;
    let roots = poly_to_roots(&a, &ambient)?;
    let partition = frobenius_orbits(roots.elements(), r)?;
    let mut count = 0u64;
    for orbit in partition.nontrivial() {
        if orbit.len() as u64 > 2 * nu as u64 {
            return Err(Error::Inconsistent("orbit larger than 2ν".into()));
        }
        // self-duality: the orbit is closed under negation
        for x in orbit {
            if !orbit.contains(&x.neg()) {
                return Err(Error::Inconsistent("orbit is not self-dual".into()));
            }
        }
        count += 1;
    }
    let bound = (rv - 1) / (2 * nu as u64);
    if count < bound {
        return Err(Error::Inconsistent(format!(
            "self-dual orbit count {count} below the bound {bound}"
        )));
    }
    Ok((count, partition))
}

/// Conductor data of a self-dual representation twisted by wilder
/// Artin-Schreier characters: ramification shared with the characters sits in
/// `ramified_places`, the remaining conductor in `away_part`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConductorData {
    /// characteristic, used to validate pole orders
    pub p: u64,
    /// `(pole order a_v, deg v)` at each shared ramified place
    pub ramified_places: Vec<(u64, u64)>,
    /// `(conductor exponent f_v, deg v)` away from the shared places
    pub away_part: Vec<(u64, u64)>,
    /// degree of the representation; even and at least 2 in the symplectic case
    pub rho_degree: u64,
}

impl ConductorData {
    pub fn new(
        p: u64,
        ramified_places: Vec<(u64, u64)>,
        away_part: Vec<(u64, u64)>,
        rho_degree: u64,
    ) -> Result<ConductorData> {
        if rho_degree < 2 || rho_degree % 2 != 0 {
            return Err(Error::InvalidInput("deg(ρ) must be even and at least 2".into()));
        }
        let cd = ConductorData { p, ramified_places, away_part, rho_degree };
        cd.check_pole_orders()?;
        Ok(cd)
    }

    fn check_pole_orders(&self) -> Result<()> {
        for &(a, _) in &self.ramified_places {
            if a == 0 || a % self.p == 0 {
                return Err(Error::PoleOrderDivisibleByP { order: a, p: self.p });
            }
        }
        Ok(())
    }

    /// Degree of the conductor part away from the shared places.
    pub fn away_degree(&self) -> u64 {
        self.away_part.iter().map(|&(f, d)| f * d).sum()
    }
}

/// Degree of `cond(ρ ⊗ χ_β)` for any `β ≠ 0`: the character is wilder than ρ
/// at every shared place, so the local exponent there is `deg(ρ)·(a_v + 1)`.
pub fn twisted_conductor_degree(cd: &ConductorData) -> Result<u64> {
    cd.check_pole_orders()?;
    let shared: u64 =
        cd.ramified_places.iter().map(|&(a, d)| cd.rho_degree * (a + 1) * d).sum();
    Ok(shared + cd.away_degree())
}

/// Lower bounds on the order of vanishing at the center point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankBound {
    pub over_k: BigRational,
    pub over_kprime: u64,
    pub parity_satisfied: bool,
}

/// Bound `(r^ν - 1)/(2ν)` over `k` and `r^ν - 1` over the degree-`2ν`
/// extension, provided the away-part of the conductor has odd degree;
/// both bounds are zero otherwise.
pub fn analytic_rank_lower_bound(r: u64, nu: u32, cd: &ConductorData) -> Result<RankBound> {
    if r % 2 == 0 {
        return Err(Error::EvenR);
    }
    let (p, _) = factor_prime_power(r)?;
    if p != cd.p {
        return Err(Error::InvalidInput("conductor data has a different characteristic".into()));
    }
    cd.check_pole_orders()?;
    let parity = cd.away_degree() % 2 == 1;
    if !parity {
        return Ok(RankBound {
            over_k: BigRational::from_integer(0.into()),
            over_kprime: 0,
            parity_satisfied: false,
        });
    }
    let rv = pow_u64(r, nu)?;
    let over_k = BigRational::new(BigInt::from(rv - 1), BigInt::from(2 * nu as u64));
    Ok(RankBound { over_k, over_kprime: rv - 1, parity_satisfied: true })
}

/// Multiplicity of a supersingular elliptic curve forced into the Jacobian:
/// `(r^ν - 1)/2` when `Σ (a_i + 1)` is odd, zero otherwise.
pub fn ss_multiplicity_lower_bound(r: u64, nu: u32, pole_type: &[u64]) -> Result<u64> {
    if r % 2 == 0 {
        return Err(Error::EvenR);
    }
    let (p, _) = factor_prime_power(r)?;
    for &a in pole_type {
        if a == 0 || a % p == 0 {
            return Err(Error::PoleOrderDivisibleByP { order: a, p });
        }
    }
    let sum: u64 = pole_type.iter().map(|&a| a + 1).sum();
    if sum % 2 == 1 {
        Ok((pow_u64(r, nu)? - 1) / 2)
    } else {
        Ok(0)
    }
}

/// Splits a prime power `r = p^e`; errors if `r` is not a prime power.
pub fn factor_prime_power(r: u64) -> Result<(u64, u32)> {
    if r < 2 {
        return Err(Error::InvalidInput(format!("{r} is not a prime power")));
    }
    let mut p = 0u64;
    for d in 2..=r {
        if d * d > r && p == 0 {
            p = r; // r itself is prime
            break;
        }
        if r % d == 0 {
            p = d;
            break;
        }
    }
    let mut v = r;
    let mut e = 0u32;
    while v % p == 0 {
        v /= p;
        e += 1;
    }
    if v != 1 {
        return Err(Error::InvalidInput(format!("{r} is not a prime power")));
    }
    Ok((p, e))
}

fn pow_u64(r: u64, nu: u32) -> Result<u64> {
    r.checked_pow(nu)
        .filter(|&v| v <= 1 << 40)
        .ok_or_else(|| Error::InvalidInput(format!("r^ν = {r}^{nu} too large")))
}
