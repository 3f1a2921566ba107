//! Gram matrices of height pairings, lattice rank/discriminant reports, and
//! the index comparison between the visible subgroup and its extension by
//! the extra points.

use super::curve::FFPoint;
use super::height::HeightOracle;
use super::iso::{iso_extra_orbit, iso_family, IsoFamily};
use crate::linalg;
use crate::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Symmetric positive-semidefinite matrix of exact rational height pairings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gram {
    labels: Vec<String>,
    entries: Vec<Vec<BigRational>>,
}

impl Gram {
    pub fn new(labels: Vec<String>, entries: Vec<Vec<BigRational>>) -> Result<Gram> {
        let n = labels.len();
        if entries.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("Gram matrix is not square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::Inconsistent("Gram matrix is not symmetric".into()));
                }
            }
        }
        if !linalg::is_positive_semidefinite(&entries) {
            return Err(Error::Inconsistent("Gram matrix is not positive semidefinite".into()));
        }
        Ok(Gram { labels, entries })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn entries(&self) -> &Vec<Vec<BigRational>> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn rank(&self) -> usize {
        linalg::rank(&self.entries)
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        self.entries.iter().map(|r| r.iter().cloned().sum()).collect()
    }

    pub fn submatrix(&self, idx: &[usize]) -> Vec<Vec<BigRational>> {
        idx.iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j].clone()).collect())
            .collect()
    }
}

/// Rank, chosen basis, discriminant, and the relations used to choose it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeReport {
    pub rank: usize,
    pub basis: Vec<String>,
    pub discriminant: BigRational,
    pub relations: Vec<Vec<i64>>,
}

/// Builds the report: rank of the full Gram matrix, determinant of the
/// basis block, and verification that the supplied relations annihilate the
/// matrix and that the basis is as large as the rank.
pub fn lattice_report(
    gram: &Gram,
    basis_indices: &[usize],
    relations: &[Vec<i64>],
) -> Result<LatticeReport> {
    let n = gram.dim();
    for rel in relations {
        if rel.len() != n {
            return Err(Error::InvalidInput("relation length mismatch".into()));
        }
        for row in gram.entries() {
            let s: BigRational = row
                .iter()
                .zip(rel)
                .map(|(v, &c)| v * BigRational::from_integer(c.into()))
                .sum();
            if !s.is_zero() {
                return Err(Error::Inconsistent("relation does not annihilate the Gram matrix".into()));
            }
        }
    }
    let rank = gram.rank();
    if rank != basis_indices.len() {
        return Err(Error::Inconsistent(format!(
            "rank {rank} does not match basis size {}",
            basis_indices.len()
        )));
    }
    let sub = gram.submatrix(basis_indices);
    let discriminant = linalg::det(&sub);
    if discriminant.is_zero() {
        return Err(Error::Inconsistent("basis Gram is singular at full rank".into()));
    }
    Ok(LatticeReport {
        rank,
        basis: basis_indices.iter().map(|&i| gram.labels()[i].clone()).collect(),
        discriminant,
        relations: relations.to_vec(),
    })
}

/// The closed-form discriminant `R' = q^{2(q-2)} 3^{1-q}` of the visible
/// isotrivial lattice.
pub fn iso_reference_discriminant(q: u64) -> BigRational {
    let num = BigInt::from(q).pow(2 * (q as u32 - 2));
    let den = BigInt::from(3).pow(q as u32 - 1);
    BigRational::new(num, den)
}

/// Outcome of the visible-index comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexReport {
    pub q: u64,
    pub det_v: BigRational,
    pub det_v1: BigRational,
    pub index: BigRational,
    pub conjectured: BigInt,
    pub matched: bool,
}

/// Compares `[V₁ : V]` with `q^{(2/3)(q-2)}`, where `V` is generated by the
/// visible points and `V₁` additionally by the extra-point orbit.  Heights
/// come from the doubling oracle; the index is recovered as the square root
/// of `det V / det V₁` with integrality checked.
pub fn index_conjecture_check(q: u64, max_q: u64, threads: usize) -> Result<IndexReport> {
    if q > max_q {
        return Err(Error::BudgetExceeded { needed: q, budget: max_q });
    }
    let fam = iso_family(q)?;
    let oracle = HeightOracle::new(&fam.curve, q);
    let basis_idx = fam.basis_indices();
    let basis: Vec<FFPoint> = basis_idx.iter().map(|&i| fam.points[i].clone()).collect();
    let g_v = oracle.gram(&basis, threads)?;
    let det_v = linalg::det(&g_v);
    let reference = iso_reference_discriminant(q);
    if det_v != reference {
        return Err(Error::Inconsistent(format!(
            "det V = {det_v} differs from the closed form {reference}"
        )));
    }

    // coordinates of every extra point relative to the visible basis
    let extras = iso_extra_orbit(&fam)?;
    let coords = extra_coordinates(&fam, &oracle, &g_v, &extras, threads)?;

    // lattice generated by Z^n and the coordinate vectors, via HNF at the
    // common denominator
    let n = basis.len();
    let mut denom = BigInt::one();
    for v in &coords {
        for c in v {
            denom = num_integer::Integer::lcm(&denom, c.denom());
        }
    }
    let mut rows: Vec<Vec<BigInt>> = vec![];
    for i in 0..n {
        let mut r = vec![BigInt::zero(); n];
        r[i] = denom.clone();
        rows.push(r);
    }
    for v in &coords {
        rows.push(v.iter().map(|c| (c * BigRational::from_integer(denom.clone())).to_integer()).collect());
    }
    let hnf = linalg::hnf_row_basis(&rows, n);
    if hnf.len() != n {
        return Err(Error::Inconsistent("extra points left the rational span of V".into()));
    }

    // Gram of the V₁ basis (rows of HNF / denom, in V-basis coordinates)
    let b_rat: Vec<Vec<BigRational>> = hnf
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| BigRational::new(c.clone(), denom.clone()))
                .collect()
        })
        .collect();
    let mut g_v1 = vec![vec![BigRational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = BigRational::zero();
            for k in 0..n {
                for l in 0..n {
                    if b_rat[i][k].is_zero() || b_rat[j][l].is_zero() {
                        continue;
                    }
                    acc += &b_rat[i][k] * &g_v[k][l] * &b_rat[j][l];
                }
            }
            g_v1[i][j] = acc;
        }
    }
    let det_v1 = linalg::det(&g_v1);
    let ratio = &det_v / &det_v1;
    let index = linalg::exact_sqrt_rational(&ratio)?;
    if !index.is_integer() || index.is_negative() {
        return Err(Error::NotExact(format!("index {index} is not a positive integer")));
    }
    let exponent = 2 * (q as u32 - 2) / 3;
    let conjectured = BigInt::from(q).pow(exponent);
    let matched = index == BigRational::from_integer(conjectured.clone());
    Ok(IndexReport { q, det_v, det_v1, index, conjectured, matched })
}

/// Solves `G_V x = (⟨R, v_i⟩)_i` for every extra point `R`, in parallel.
fn extra_coordinates(
    fam: &IsoFamily,
    oracle: &HeightOracle,
    g_v: &[Vec<BigRational>],
    extras: &[FFPoint],
    threads: usize,
) -> Result<Vec<Vec<BigRational>>> {
    let basis_idx = fam.basis_indices();
    let basis: Vec<&FFPoint> = basis_idx.iter().map(|&i| &fam.points[i]).collect();
    let threads = threads.max(1).min(64);
    let chunk = extras.len().div_ceil(threads);
    let results: Vec<Result<Vec<Vec<BigRational>>>> = std::thread::scope(|scope| {
        let mut handles = vec![];
        for t in 0..threads {
            let lo = t * chunk;
            let hi = ((t + 1) * chunk).min(extras.len());
            let basis = &basis;
            handles.push(scope.spawn(move || {
                let mut out = vec![];
                for r in &extras[lo..hi] {
                    let rhs: Result<Vec<BigRational>> =
                        basis.iter().map(|v| oracle.pairing(r, v)).collect();
                    out.push(linalg::solve(g_v, &rhs?)?);
                }
                Ok(out)
            }));
        }
        handles.into_iter().map(|h| h.join().expect("coordinate thread panicked")).collect()
    });
    let mut coords = vec![];
    for r in results {
        coords.extend(r?);
    }
    Ok(coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;
    use crate::mwlattice::iso::iso_gram_closed;

    #[test]
    fn closed_iso_lattice_q5() {
        let gram = iso_gram_closed(5).unwrap();
        assert_eq!(gram.dim(), 15);
        assert_eq!(gram.rank(), 8);
        let fam = iso_family(5).unwrap();
        let report = lattice_report(&gram, &fam.basis_indices(), &fam.relations()).unwrap();
        assert_eq!(report.rank, 8);
        assert_eq!(report.discriminant, ratio(15625, 81));
        assert_eq!(report.discriminant, iso_reference_discriminant(5));
    }

    #[test]
    fn iso_closed_gram_is_kronecker_product() {
        // A₂* ⊗ (1/3)A₄*: block structure over (i, α)
        let gram = iso_gram_closed(5).unwrap();
        let fam = iso_family(5).unwrap();
        let a2 = |i: usize, j: usize| if i == j { ratio(2, 1) } else { ratio(-1, 1) };
        let a4s = |a: usize, b: usize| if a == b { ratio(4, 3) } else { ratio(-1, 3) };
        let idx = fam.basis_indices();
        let sub = gram.submatrix(&idx);
        for (r, &bi) in idx.iter().enumerate() {
            for (c, &bj) in idx.iter().enumerate() {
                let (i, a) = (bi / 5, bi % 5);
                let (j, b) = (bj / 5, bj % 5);
                assert_eq!(sub[r][c], a2(i, j) * a4s(a, b));
            }
        }
    }

    #[test]
    fn closed_noniso_lattice_q5() {
        let f5 = crate::ff::Field::new(5, 1).unwrap();
        let b = f5.from_u64(2);
        let gram = super::super::noniso::noniso_gram_closed(5, &b).unwrap();
        assert_eq!(gram.rank(), 4);
        let fam = super::super::noniso::noniso_family(5, &b).unwrap();
        let report = lattice_report(&gram, &fam.basis_indices(), &fam.relations()).unwrap();
        assert_eq!(report.rank, 4);
    }

    #[test]
    fn bad_relation_rejected() {
        let gram = iso_gram_closed(5).unwrap();
        let fam = iso_family(5).unwrap();
        let mut rels = fam.relations();
        rels[0][0] += 1;
        assert!(lattice_report(&gram, &fam.basis_indices(), &rels).is_err());
    }
}
