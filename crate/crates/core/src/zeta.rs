//! Brute-force zeta oracle: exhaustive point counting of Artin-Schreier-type
//! covers of `P^1` over extension fields, exact L-polynomial reconstruction
//! via Newton's identities, Newton-polygon slope extraction, p-rank readout,
//! and supersingular-factor divisibility.
//!
//! Counting convention for the smooth projective model of `A(z) = f(x)`:
//! the cover is totally ramified above every pole of `f`, so a pole rational
//! over the extension contributes exactly one point; over every other
//! rational `x` the fiber has `#ker(A)` points when `f(x)` lies in the image
//! of `A` on the extension field and none otherwise.

use crate::addpoly::AdditivePolynomial;
use crate::ascurve::{as_genus, ASCoverSpec, SlopeSet};
use crate::ff::{ElemBuf, Embedding, Field, FieldElement, Poly, RationalFunction, MAX_DEGREE};
use crate::{Error, Result};
use num_rational::Rational64;

/// Default per-count evaluation budget (`2^24`).
pub const DEFAULT_BUDGET: u64 = 1 << 24;

/// A curve to count: an Artin-Schreier cover `z^q - z = f(x)` or, more
/// generally, an additive cover `A(z) = f(x)` over the base field.
#[derive(Clone, Debug)]
pub struct CurveEquation {
    base: Field,
    a_poly: AdditivePolynomial,
    f: RationalFunction,
}

impl CurveEquation {
    /// `z^q - z = f(x)` over the base field of `f`.
    pub fn artin_schreier(q: u64, f: RationalFunction) -> Result<CurveEquation> {
        let base = f.field().clone();
        let a = AdditivePolynomial::wp(&base, q)?;
        CurveEquation::additive_cover(a, f)
    }

    /// `A(z) = f(x)`; all pole orders of `f` must be prime to `p`.
    pub fn additive_cover(a_poly: AdditivePolynomial, f: RationalFunction) -> Result<CurveEquation> {
        let base = f.field().clone();
        if a_poly.field() != &base {
            return Err(Error::MismatchedFields);
        }
        f.check_pole_orders_prime_to_p()?;
        Ok(CurveEquation { base, a_poly, f })
    }

    pub fn base_field(&self) -> &Field {
        &self.base
    }

    pub fn f(&self) -> &RationalFunction {
        &self.f
    }

    pub fn a_poly(&self) -> &AdditivePolynomial {
        &self.a_poly
    }

    /// Cover degree `deg A`.
    pub fn cover_degree(&self) -> u64 {
        self.a_poly.degree() as u64
    }

    /// Combinatorial spec (pole multiplicities over the algebraic closure).
    pub fn cover_spec(&self) -> Result<ASCoverSpec> {
        let mut poles = vec![];
        for (order, count) in self.f.pole_type() {
            for _ in 0..count {
                poles.push(order);
            }
        }
        ASCoverSpec::new(self.base.p(), self.cover_degree(), poles)
    }

    /// Genus of the smooth projective model.
    pub fn genus(&self) -> Result<u64> {
        as_genus(&self.cover_spec()?)
    }
}

/// Precomputed image-membership test for an additive map on an extension
/// field, seen as an `F_p`-linear map on coefficient vectors.
struct ImageTest {
    p: u64,
    n: usize,
    /// reduced row echelon rows of the image, with pivot columns
    rows: Vec<([u64; MAX_DEGREE], usize)>,
    kernel_size: u64,
}

impl ImageTest {
    fn new(a: &AdditivePolynomial, ext: &Field) -> ImageTest {
        let p = ext.p();
        let n = ext.n();
        // images of the F_p-basis x^i under A
        let mut rows: Vec<[u64; MAX_DEGREE]> = vec![];
        for i in 0..n {
            let mut basis = [0u64; MAX_DEGREE];
            basis[i] = 1;
            let e = FieldElement::from_buf(ext, basis);
            rows.push(*a.eval(&e).buf());
        }
        // row reduce over F_p
        let mut reduced: Vec<([u64; MAX_DEGREE], usize)> = vec![];
        for mut row in rows {
            for (r, pivot) in &reduced {
                let c = row[*pivot];
                if c != 0 {
                    for j in 0..n {
                        row[j] = (row[j] + (p - c) * r[j]) % p;
                    }
                }
            }
            if let Some(pivot) = (0..n).find(|&j| row[j] != 0) {
                let inv = mod_inv(row[pivot], p);
                for v in row.iter_mut().take(n) {
                    *v = *v * inv % p;
                }
                reduced.push((row, pivot));
            }
        }
        let rank = reduced.len();
        let kernel_size = p.pow((n - rank) as u32);
        ImageTest { p, n, rows: reduced, kernel_size }
    }

    #[inline]
    fn contains(&self, elem: &ElemBuf) -> bool {
        let mut v = *elem;
        for (row, pivot) in &self.rows {
            let c = v[*pivot];
            if c != 0 {
                for j in 0..self.n {
                    v[j] = (v[j] + (self.p - c) * row[j]) % self.p;
                }
            }
        }
        v[..self.n].iter().all(|&x| x == 0)
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    result
}

/// Points of the smooth projective model over the degree-`k` extension of the
/// base field.  Deterministic regardless of `threads`.
pub fn count_points(eq: &CurveEquation, k: u32, budget: u64, threads: usize) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidInput("extension degree must be positive".into()));
    }
    let base_order = eq.base.order();
    let ext_order = base_order
        .checked_pow(k)
        .ok_or(Error::BudgetExceeded { needed: u64::MAX, budget })?;
    if ext_order > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed: ext_order.min(u64::MAX as u128) as u64,
            budget,
        });
    }
    let ext_n = eq.base.n() * k as usize;
    if ext_n > MAX_DEGREE {
        return Err(Error::DegreeOutOfRange { p: eq.base.p(), n: ext_n as u32 });
    }
    let ext = Field::new(eq.base.p(), ext_n as u32)?;
    let emb = Embedding::new(&eq.base, &ext)?;
    let num = eq.f.num().map_into(&emb);
    let den = eq.f.den().map_into(&emb);
    let a_ext = eq.a_poly.map_into(&emb)?;
    let image = ImageTest::new(&a_ext, &ext);

    let total = ext_order as u64;
    let threads = threads.max(1).min(64);
    let chunk = total.div_ceil(threads as u64);
    let mut partials = vec![0u64; threads];
    std::thread::scope(|scope| {
        let mut handles = vec![];
        for t in 0..threads {
            let lo = (t as u64) * chunk;
            let hi = ((t as u64 + 1) * chunk).min(total);
            let ext = &ext;
            let num = &num;
            let den = &den;
            let image = &image;
            handles.push(scope.spawn(move || count_range(ext, num, den, image, lo, hi)));
        }
        for (t, h) in handles.into_iter().enumerate() {
            partials[t] = h.join().expect("counting thread panicked");
        }
    });
    let mut n_points: u64 = partials.iter().sum();

    // the place at infinity
    if eq.f.pole_order_at_infinity() > 0 {
        n_points += 1;
    } else {
        let dn = num.degree().map(|d| d as i64).unwrap_or(-1);
        let dd = den.degree().unwrap_or(0) as i64;
        let c_inf = if dn == dd {
            num.leading_coeff().div(&den.leading_coeff()).expect("nonzero leading coefficient")
        } else {
            ext.zero()
        };
        if image.contains(c_inf.buf()) {
            n_points += image.kernel_size;
        }
    }
    Ok(n_points)
}

/// Count fibers over element indices `lo..hi` (finite places only).
fn count_range(
    ext: &Field,
    num: &Poly,
    den: &Poly,
    image: &ImageTest,
    lo: u64,
    hi: u64,
) -> u64 {
    const CHUNK: usize = 512;
    let mut count = 0u64;
    let mut x = *ext.nth_element(lo as u128).buf();
    let p = ext.p();
    let n = ext.n();
    let num_bufs: Vec<ElemBuf> = num.coefficients().iter().map(|c| *c.buf()).collect();
    let den_bufs: Vec<ElemBuf> = den.coefficients().iter().map(|c| *c.buf()).collect();
    let mut nums: Vec<ElemBuf> = Vec::with_capacity(CHUNK);
    let mut dens: Vec<ElemBuf> = Vec::with_capacity(CHUNK);
    let mut idx = lo;
    while idx < hi {
        nums.clear();
        dens.clear();
        let end = (idx + CHUNK as u64).min(hi);
        while idx < end {
            let dv = horner(ext, &den_bufs, &x);
            if ext.is_zero_raw(&dv) {
                // totally ramified: one point above this pole
                count += 1;
            } else {
                nums.push(horner(ext, &num_bufs, &x));
                dens.push(dv);
            }
            // odometer step
            for digit in x.iter_mut().take(n) {
                *digit += 1;
                if *digit < p {
                    break;
                }
                *digit = 0;
            }
            idx += 1;
        }
        // batched inversion of the denominators
        if !dens.is_empty() {
            let m = dens.len();
            let mut prefix: Vec<ElemBuf> = Vec::with_capacity(m);
            let mut acc = dens[0];
            prefix.push(acc);
            for d in dens.iter().skip(1) {
                acc = ext.mul_raw(&acc, d);
                prefix.push(acc);
            }
            let mut inv = ext.inv_raw(&acc).expect("nonzero product");
            for i in (0..m).rev() {
                let xi_inv = if i == 0 { inv } else { ext.mul_raw(&inv, &prefix[i - 1]) };
                if i > 0 {
                    inv = ext.mul_raw(&inv, &dens[i]);
                }
                let c = ext.mul_raw(&nums[i], &xi_inv);
                if image.contains(&c) {
                    count += image.kernel_size;
                }
            }
        }
    }
    count
}

#[inline]
fn horner(ext: &Field, coeffs: &[ElemBuf], x: &ElemBuf) -> ElemBuf {
    let mut acc = [0u64; MAX_DEGREE];
    for c in coeffs.iter().rev() {
        acc = ext.mul_raw(&acc, x);
        acc = ext.add_raw(&acc, c);
    }
    acc
}

/// Counts over extensions `1..=k_max`.  The budget is checked against the
/// largest extension up front, so an infeasible request fails before any
/// counting starts.
pub fn count_through(
    eq: &CurveEquation,
    k_max: u32,
    budget: u64,
    threads: usize,
) -> Result<Vec<u64>> {
    if k_max > 0 {
        let needed = eq
            .base
            .order()
            .checked_pow(k_max)
            .ok_or(Error::BudgetExceeded { needed: u64::MAX, budget })?;
        if needed > budget as u128 {
            return Err(Error::BudgetExceeded {
                needed: needed.min(u64::MAX as u128) as u64,
                budget,
            });
        }
        if eq.base.n() * k_max as usize > MAX_DEGREE {
            return Err(Error::DegreeOutOfRange {
                p: eq.base.p(),
                n: (eq.base.n() * k_max as usize) as u32,
            });
        }
    }
    (1..=k_max).map(|k| count_points(eq, k, budget, threads)).collect()
}

/// Integer numerator of the zeta function, `a_0 = 1`, with the functional
/// equation `a_{2g-i} = r^{g-i} a_i` verified at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    coeffs: Vec<i128>,
    base_size: u64,
}

impl LPolynomial {
    /// Reconstruction from `N_1..N_{2g}` by Newton's identities on the power
    /// sums `s_k = r^k + 1 - N_k`.
    pub fn from_counts(counts: &[u64], g: u64, r: u64) -> Result<LPolynomial> {
        if counts.len() as u64 != 2 * g {
            return Err(Error::InvalidInput(format!(
                "expected {} counts, got {}",
                2 * g,
                counts.len()
            )));
        }
        let two_g = 2 * g as usize;
        let mut s = vec![0i128; two_g + 1];
        for k in 1..=two_g {
            let rk = (r as i128)
                .checked_pow(k as u32)
                .ok_or_else(|| Error::InvalidInput("r^k overflow".into()))?;
            s[k] = rk + 1 - counts[k - 1] as i128;
        }
        // e_k: elementary symmetric functions of the inverse roots
        let mut e = vec![0i128; two_g + 1];
        e[0] = 1;
        for k in 1..=two_g {
            let mut acc = 0i128;
            for i in 1..=k {
                let term = e[k - i]
                    .checked_mul(s[i])
                    .ok_or_else(|| Error::InvalidInput("coefficient overflow".into()))?;
                if i % 2 == 1 {
                    acc = acc.checked_add(term).ok_or_else(|| {
                        Error::InvalidInput("coefficient overflow".into())
                    })?;
                } else {
                    acc -= term;
                }
            }
            if acc % k as i128 != 0 {
                return Err(Error::Inconsistent(
                    "Newton identities gave a non-integer coefficient".into(),
                ));
            }
            e[k] = acc / k as i128;
        }
        let coeffs: Vec<i128> =
            (0..=two_g).map(|k| if k % 2 == 0 { e[k] } else { -e[k] }).collect();
        let l = LPolynomial { coeffs, base_size: r };
        l.check_functional_equation()?;
        l.check_weil_bounds()?;
        Ok(l)
    }

    /// Directly from integer coefficients (functional equation still checked).
    pub fn from_coeffs(coeffs: Vec<i128>, base_size: u64) -> Result<LPolynomial> {
        if coeffs.first() != Some(&1) {
            return Err(Error::InvalidInput("a_0 must be 1".into()));
        }
        if coeffs.len() % 2 == 0 {
            return Err(Error::InvalidInput("degree must be even".into()));
        }
        let l = LPolynomial { coeffs, base_size };
        l.check_functional_equation()?;
        Ok(l)
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn base_size(&self) -> u64 {
        self.base_size
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn genus(&self) -> u64 {
        (self.degree() / 2) as u64
    }

    fn check_functional_equation(&self) -> Result<()> {
        let g = self.genus() as usize;
        let r = self.base_size as i128;
        for i in 0..=g {
            let factor = r.pow((g - i) as u32);
            if self.coeffs[2 * g - i] != factor * self.coeffs[i] {
                return Err(Error::FunctionalEquation);
            }
        }
        Ok(())
    }

    /// Every inverse root must have absolute value `sqrt(r)`; checked on the
    /// squarefree part with a floating root finder (1e-9 sanity bound only).
    fn check_weil_bounds(&self) -> Result<()> {
        if self.degree() == 0 {
            return Ok(());
        }
        let sqf = squarefree_real(&self.coeffs);
        let roots = durand_kerner(&sqf);
        let target = 1.0 / (self.base_size as f64).sqrt();
        for (re, im) in roots {
            let m = (re * re + im * im).sqrt();
            if (m - target).abs() > 1e-9 * target.max(1.0) {
                return Err(Error::Inconsistent(format!(
                    "inverse root modulus {} deviates from sqrt(r)",
                    1.0 / m
                )));
            }
        }
        Ok(())
    }

    /// Product with another L-polynomial over the same base.
    pub fn mul(&self, rhs: &LPolynomial) -> Result<LPolynomial> {
        if self.base_size != rhs.base_size {
            return Err(Error::InvalidInput("different base sizes".into()));
        }
        let mut out = vec![0i128; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        LPolynomial::from_coeffs(out, self.base_size)
    }

    /// Slopes of the `p`-adic Newton polygon, normalized by `v_p(r)`.
    pub fn slopes(&self, p: u64) -> Result<SlopeSet> {
        let two_g = self.degree();
        if two_g == 0 {
            return Ok(SlopeSet::empty());
        }
        let e = {
            let mut v = self.base_size;
            let mut e = 0i64;
            while v % p == 0 {
                v /= p;
                e += 1;
            }
            if v != 1 {
                return Err(Error::NotPowerOfP { r: self.base_size, p });
            }
            e
        };
        // lower convex hull of (i, v_p(a_i)), a_i != 0
        let pts: Vec<(i64, i64)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| **a != 0)
            .map(|(i, a)| (i as i64, vp(*a, p)))
            .collect();
        let mut hull: Vec<(i64, i64)> = vec![];
        for pt in pts {
            while hull.len() >= 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                // drop b if it lies on or above segment a..pt
                if (b.1 - a.1) * (pt.0 - a.0) >= (pt.1 - a.1) * (b.0 - a.0) {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(pt);
        }
        let mut slopes = vec![];
        for w in hull.windows(2) {
            let (x0, y0) = w[0];
            let (x1, y1) = w[1];
            let slope = Rational64::new(y1 - y0, (x1 - x0) * e);
            for _ in 0..(x1 - x0) {
                slopes.push(slope);
            }
        }
        SlopeSet::new(slopes)
    }

    /// p-rank: the multiplicity of slope 0.
    pub fn prank(&self, p: u64) -> Result<u64> {
        Ok(self.slopes(p)?.zero_multiplicity())
    }

    /// Exact multiplicity of `(1 + r^ν T^{2ν})` as a factor, by repeated
    /// exact polynomial division over the integers.
    pub fn ss_divisibility(&self, r: u64, nu: u32) -> u64 {
        let rv = (r as i128).pow(nu);
        let step = 2 * nu as usize;
        let mut mult = 0u64;
        let mut cur = self.coeffs.clone();
        'outer: loop {
            if cur.len() <= step {
                return mult;
            }
            // divide by 1 + rv*T^step from the bottom (constant term 1)
            let mut quo = vec![0i128; cur.len() - step];
            let mut rem = cur.clone();
            for i in 0..quo.len() {
                let c = rem[i];
                quo[i] = c;
                rem[i] = 0;
                match rem[i + step].checked_sub(match c.checked_mul(rv) {
                    Some(v) => v,
                    None => break 'outer,
                }) {
                    Some(v) => rem[i + step] = v,
                    None => break 'outer,
                }
            }
            if rem.iter().any(|&c| c != 0) {
                return mult;
            }
            mult += 1;
            cur = quo;
        }
        mult
    }
}

fn vp(mut a: i128, p: u64) -> i64 {
    debug_assert!(a != 0);
    let mut v = 0;
    while a % p as i128 == 0 {
        a /= p as i128;
        v += 1;
    }
    v
}

/// Squarefree part of an integer polynomial, as f64 coefficients.
fn squarefree_real(coeffs: &[i128]) -> Vec<f64> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let to_rat = |v: &[i128]| -> Vec<BigRational> {
        v.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect()
    };
    let mut f = to_rat(coeffs);
    let mut d: Vec<BigRational> = f
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i as i64)))
        .collect();
    trim_rat(&mut f);
    trim_rat(&mut d);
    let g = rat_gcd(f.clone(), d);
    let q = rat_div(&f, &g);
    q.iter().map(|c| rat_to_f64(c)).collect()
}

fn trim_rat(v: &mut Vec<num_rational::BigRational>) {
    use num_traits::Zero;
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn rat_rem(
    a: &[num_rational::BigRational],
    b: &[num_rational::BigRational],
) -> Vec<num_rational::BigRational> {
    use num_traits::Zero;
    let mut r = a.to_vec();
    trim_rat(&mut r);
    let db = b.len() - 1;
    while r.len() > db {
        let coef = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        for j in 0..=db {
            let t = &coef * &b[j];
            r[shift + j] = &r[shift + j] - t;
        }
        r.pop();
        trim_rat(&mut r);
        if r.iter().all(|c| c.is_zero()) {
            return vec![];
        }
    }
    r
}

fn rat_gcd(
    mut a: Vec<num_rational::BigRational>,
    mut b: Vec<num_rational::BigRational>,
) -> Vec<num_rational::BigRational> {
    while !b.is_empty() {
        let r = rat_rem(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    // monic normalization
    let lead = a.last().unwrap().clone();
    a.iter().map(|c| c / &lead).collect()
}

fn rat_div(
    a: &[num_rational::BigRational],
    b: &[num_rational::BigRational],
) -> Vec<num_rational::BigRational> {
    use num_traits::Zero;
    let mut r = a.to_vec();
    trim_rat(&mut r);
    let db = b.len() - 1;
    let mut q = vec![num_rational::BigRational::zero(); r.len() - db];
    while r.len() > db {
        let coef = r.last().unwrap() / b.last().unwrap();
        let shift = r.len() - 1 - db;
        q[shift] = coef.clone();
        for j in 0..=db {
            let t = &coef * &b[j];
            r[shift + j] = &r[shift + j] - t;
        }
        r.pop();
        trim_rat(&mut r);
    }
    q
}

fn rat_to_f64(c: &num_rational::BigRational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(0.0)
}

/// Durand-Kerner root finder for a real polynomial with simple roots.
fn durand_kerner(coeffs: &[f64]) -> Vec<(f64, f64)> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return vec![];
    }
    let lead = coeffs[deg];
    let monic: Vec<f64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: (f64, f64)| -> (f64, f64) {
        let mut acc = (0.0f64, 0.0f64);
        for &c in monic.iter().rev() {
            let re = acc.0 * z.0 - acc.1 * z.1 + c;
            let im = acc.0 * z.1 + acc.1 * z.0;
            acc = (re, im);
        }
        acc
    };
    let mut roots: Vec<(f64, f64)> = (0..deg)
        .map(|i| {
            let theta = 0.4 + 2.0 * std::f64::consts::PI * i as f64 / deg as f64;
            (0.9 * theta.cos(), 0.9 * theta.sin())
        })
        .collect();
    for _ in 0..400 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let zi = roots[i];
            let mut denom = (1.0f64, 0.0f64);
            for (j, zj) in roots.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = (zi.0 - zj.0, zi.1 - zj.1);
                denom = (denom.0 * d.0 - denom.1 * d.1, denom.0 * d.1 + denom.1 * d.0);
            }
            let f = eval(zi);
            let nd = denom.0 * denom.0 + denom.1 * denom.1;
            if nd == 0.0 {
                continue;
            }
            let delta = ((f.0 * denom.0 + f.1 * denom.1) / nd, (f.1 * denom.0 - f.0 * denom.1) / nd);
            roots[i] = (zi.0 - delta.0, zi.1 - delta.1);
            moved += delta.0.abs() + delta.1.abs();
        }
        if moved < 1e-14 {
            break;
        }
    }
    roots
}

/// Verifies `L(C_{q,f}) = Π_μ L(Z_μ)` where `μ` runs over coset
/// representatives of `F_p^×` in `F_q^×` and `Z_μ : z^p - z = μ f`.
pub fn decompose_check(
    q: u64,
    f: &RationalFunction,
    budget: u64,
    threads: usize,
) -> Result<bool> {
    let base = f.field().clone();
    let p = base.p();
    let eq = CurveEquation::artin_schreier(q, f.clone())?;
    let g = eq.genus()?;
    let counts = count_through(&eq, 2 * g as u32, budget, threads)?;
    let l_big = LPolynomial::from_counts(&counts, g, base_size_u64(&base)?)?;

    // F_q inside the base field, and coset representatives of F_p^* in F_q^*
    let e_q = base
        .power_of_p(q)
        .ok_or(Error::NotPowerOfP { r: q, p })?;
    if base.n() % e_q as usize != 0 {
        return Err(Error::NotASubfield);
    }
    let fq_elements: Vec<FieldElement> =
        base.elements().filter(|x| x.pow(q as u128) == *x && !x.is_zero()).collect();
    let mut reps: Vec<FieldElement> = vec![];
    let mut covered: std::collections::HashSet<FieldElement> = Default::default();
    for mu in fq_elements {
        if covered.contains(&mu) {
            continue;
        }
        for c in 1..p {
            covered.insert(mu.mul(&base.from_u64(c)));
        }
        reps.push(mu);
    }
    debug_assert_eq!(reps.len() as u64, (q - 1) / (p - 1));

    let mut product: Option<LPolynomial> = None;
    for mu in reps {
        let scaled = f.mul(&RationalFunction::constant(mu));
        let eq_mu = CurveEquation::artin_schreier(p, scaled)?;
        let g_mu = eq_mu.genus()?;
        let counts = count_through(&eq_mu, 2 * g_mu as u32, budget, threads)?;
        let l_mu = LPolynomial::from_counts(&counts, g_mu, base_size_u64(&base)?)?;
        product = Some(match product {
            None => l_mu,
            Some(acc) => acc.mul(&l_mu)?,
        });
    }
    Ok(product.expect("at least one factor") == l_big)
}

pub(crate) fn base_size_u64(field: &Field) -> Result<u64> {
    u64::try_from(field.order())
        .map_err(|_| Error::InvalidInput("base field too large".into()))
}
