//! Exact multigraded polynomial and power-series arithmetic in the
//! variables `x1..xn`, `t`, and optionally `z`, together with the closed
//! series forms attached to matchings on the Taylor complex.
//!
//! Polynomials carry integer coefficients; truncated expansions carry
//! rational ones so the same engine serves Euler-characteristic style
//! computations. Truncation is by weight `|alpha| + t`.

use crate::betti::BettiTable;
use crate::complex::Matching;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Term key: multidegree, t-power, z-power.
pub type Term = (Vec<u32>, u32, u32);

/// A multigraded polynomial with exact integer coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MGPoly {
    pub terms: BTreeMap<Term, BigInt>,
}

impl MGPoly {
    pub fn zero() -> Self {
        MGPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: i64) -> Self {
        let mut p = MGPoly::zero();
        p.add_term(vec![0; n], 0, 0, BigInt::from(c));
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, 1)
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, t: u32, z: u32, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let key = (alpha, t, z);
        let entry = self.terms.entry(key.clone()).or_insert_with(BigInt::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &MGPoly) -> MGPoly {
        let mut out = self.clone();
        for ((a, t, z), c) in &other.terms {
            out.add_term(a.clone(), *t, *z, c.clone());
        }
        out
    }

    pub fn neg(&self) -> MGPoly {
        MGPoly {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MGPoly) -> MGPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MGPoly) -> MGPoly {
        let mut out = MGPoly::zero();
        for ((a1, t1, z1), c1) in &self.terms {
            for ((a2, t2, z2), c2) in &other.terms {
                let alpha: Vec<u32> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
                out.add_term(alpha, t1 + t2, z1 + z2, c1 * c2);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitute `t := 1` and rename `z` to `t`.
    pub fn set_t_one_z_to_t(&self) -> MGPoly {
        let mut out = MGPoly::zero();
        for ((a, _t, z), c) in &self.terms {
            out.add_term(a.clone(), *z, 0, c.clone());
        }
        out
    }

    /// Substitute `z := -1`.
    pub fn set_z_minus_one(&self) -> MGPoly {
        let mut out = MGPoly::zero();
        for ((a, t, z), c) in &self.terms {
            let sign = if z % 2 == 0 { c.clone() } else { -c };
            out.add_term(a.clone(), *t, 0, sign);
        }
        out
    }

    /// Substitute `t := 1` and `z := -t`.
    pub fn set_t_one_z_minus_t(&self) -> MGPoly {
        let mut out = MGPoly::zero();
        for ((a, _t, z), c) in &self.terms {
            let sign = if z % 2 == 0 { c.clone() } else { -c };
            out.add_term(a.clone(), *z, 0, sign);
        }
        out
    }

    /// Substitute `t := -t`.
    pub fn set_t_minus_t(&self) -> MGPoly {
        let mut out = MGPoly::zero();
        for ((a, t, z), c) in &self.terms {
            let sign = if t % 2 == 0 { c.clone() } else { -c };
            out.add_term(a.clone(), *t, *z, sign);
        }
        out
    }

    /// `prod_{i=1}^{n} (1 + sign * x_i t)`.
    pub fn product_one_plus_xt(n: usize, sign: i64) -> MGPoly {
        let mut acc = MGPoly::one(n);
        for i in 0..n {
            let mut factor = MGPoly::one(n);
            let mut alpha = vec![0; n];
            alpha[i] = 1;
            factor.add_term(alpha, 1, 0, BigInt::from(sign));
            acc = acc.mul(&factor);
        }
        acc
    }
}

fn fmt_term(f: &mut fmt::Formatter<'_>, alpha: &[u32], t: u32, z: u32) -> fmt::Result {
    let mono = Monomial::from_exponents(alpha.to_vec());
    let mut wrote = false;
    if !mono.is_one() {
        write!(f, "{}", mono)?;
        wrote = true;
    }
    if t > 0 {
        if wrote {
            write!(f, "*")?;
        }
        if t == 1 {
            write!(f, "t")?;
        } else {
            write!(f, "t^{}", t)?;
        }
        wrote = true;
    }
    if z > 0 {
        if wrote {
            write!(f, "*")?;
        }
        if z == 1 {
            write!(f, "z")?;
        } else {
            write!(f, "z^{}", z)?;
        }
        wrote = true;
    }
    if !wrote {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for MGPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // order by weight then key for readable output
        let mut keys: Vec<&Term> = self.terms.keys().collect();
        keys.sort_by_key(|(a, t, z)| (a.iter().sum::<u32>() + t + z, a.clone(), *t, *z));
        for (idx, key) in keys.iter().enumerate() {
            let c = &self.terms[*key];
            let (a, t, z) = key;
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            let unit_term = a.iter().all(|&e| e == 0) && *t == 0 && *z == 0;
            if !abs.is_one() || unit_term {
                write!(f, "{}", abs)?;
                if !unit_term {
                    write!(f, "*")?;
                }
            }
            if !unit_term {
                fmt_term(f, a, *t, *z)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MGPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A rational closed form `num / den`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FracForm {
    pub num: MGPoly,
    pub den: MGPoly,
}

impl FracForm {
    pub fn expand(&self, n: usize, bound: u32) -> SeriesExpansion {
        let num = SeriesExpansion::from_poly(&self.num, n, bound);
        let den = SeriesExpansion::from_poly(&self.den, n, bound);
        num.div(&den)
    }
}

impl fmt::Display for FracForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Truncated power series with exact rational coefficients; every stored
/// term satisfies `|alpha| + t <= bound`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesExpansion {
    pub n: usize,
    pub bound: u32,
    pub terms: BTreeMap<(Vec<u32>, u32), BigRational>,
}

fn weight(alpha: &[u32], t: u32) -> u32 {
    alpha.iter().sum::<u32>() + t
}

impl SeriesExpansion {
    pub fn zero(n: usize, bound: u32) -> Self {
        SeriesExpansion {
            n,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: &MGPoly, n: usize, bound: u32) -> Self {
        let mut s = SeriesExpansion::zero(n, bound);
        for ((a, t, z), c) in &p.terms {
            assert_eq!(*z, 0, "series expansion requires z-free polynomials");
            if weight(a, *t) <= bound {
                s.add_term(a.clone(), *t, BigRational::from_integer(c.clone()));
            }
        }
        s
    }

    pub fn add_term(&mut self, alpha: Vec<u32>, t: u32, coeff: BigRational) {
        if coeff.is_zero() || weight(&alpha, t) > self.bound {
            return;
        }
        let key = (alpha, t);
        let entry = self
            .terms
            .entry(key.clone())
            .or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn coeff(&self, alpha: &[u32], t: u32) -> BigRational {
        self.terms
            .get(&(alpha.to_vec(), t))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, other: &SeriesExpansion) -> SeriesExpansion {
        assert_eq!(self.bound, other.bound);
        let mut out = self.clone();
        for ((a, t), c) in &other.terms {
            out.add_term(a.clone(), *t, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SeriesExpansion) -> SeriesExpansion {
        assert_eq!(self.bound, other.bound);
        let mut out = self.clone();
        for ((a, t), c) in &other.terms {
            out.add_term(a.clone(), *t, -c.clone());
        }
        out
    }

    pub fn mul(&self, other: &SeriesExpansion) -> SeriesExpansion {
        assert_eq!(self.bound, other.bound);
        let mut out = SeriesExpansion::zero(self.n, self.bound);
        for ((a1, t1), c1) in &self.terms {
            let w1 = weight(a1, *t1);
            for ((a2, t2), c2) in &other.terms {
                if w1 + weight(a2, *t2) > self.bound {
                    continue;
                }
                let alpha: Vec<u32> = a1.iter().zip(a2).map(|(x, y)| x + y).collect();
                out.add_term(alpha, t1 + t2, c1 * c2);
            }
        }
        out
    }

    /// Division by a series with constant term 1, by forward elimination in
    /// increasing weight order. The quotient is exact within the bound.
    pub fn div(&self, den: &SeriesExpansion) -> SeriesExpansion {
        assert_eq!(self.bound, den.bound);
        let one_key = (vec![0u32; self.n], 0u32);
        assert!(
            den.terms.get(&one_key).map(|c| c.is_one()).unwrap_or(false),
            "series inversion requires constant term 1"
        );
        let den_rest: Vec<(&(Vec<u32>, u32), &BigRational)> =
            den.terms.iter().filter(|(k, _)| **k != one_key).collect();
        // acc starts as the numerator; as terms become final (lowest weight
        // first) their multiples of the denominator tail are subtracted.
        let mut acc: BTreeMap<(Vec<u32>, u32), BigRational> = self.terms.clone();
        let mut result = SeriesExpansion::zero(self.n, self.bound);
        for w in 0..=self.bound {
            let finals: Vec<((Vec<u32>, u32), BigRational)> = acc
                .iter()
                .filter(|((a, t), _)| weight(a, *t) == w)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect();
            for ((a, t), c) in finals {
                if c.is_zero() {
                    continue;
                }
                result.add_term(a.clone(), t, c.clone());
                for ((da, dt), dc) in &den_rest {
                    let nw = w + weight(da, *dt);
                    if nw > self.bound {
                        continue;
                    }
                    let alpha: Vec<u32> = a.iter().zip(da.iter()).map(|(x, y)| x + y).collect();
                    let key = (alpha, t + dt);
                    let entry = acc.entry(key.clone()).or_insert_with(BigRational::zero);
                    *entry -= &c * *dc;
                    if entry.is_zero() {
                        acc.remove(&key);
                    }
                }
            }
        }
        result
    }

    /// Terms with a negative coefficient, smallest weight first.
    pub fn negative_terms(&self) -> Vec<((Vec<u32>, u32), BigRational)> {
        let mut out: Vec<_> = self
            .terms
            .iter()
            .filter(|(_, c)| c.is_negative())
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        out.sort_by_key(|((a, t), _)| (weight(a, *t), a.clone(), *t));
        out
    }

    /// Restrict to the rectangle `t <= h`, `|alpha| <= d`.
    pub fn rectangle(&self, h: u32, d: u32) -> BTreeMap<(Vec<u32>, u32), BigRational> {
        self.terms
            .iter()
            .filter(|((a, t), _)| *t <= h && a.iter().sum::<u32>() <= d)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect()
    }

    /// Collapse the multigrading: coefficients of `t^j` with all `x_i := 1`.
    pub fn specialize_x_one(&self) -> BTreeMap<u32, BigRational> {
        let mut out: BTreeMap<u32, BigRational> = BTreeMap::new();
        for ((_, t), c) in &self.terms {
            *out.entry(*t).or_insert_with(BigRational::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeriesError {
    NonGradedMatching,
    DegreeNotTwo,
}

impl fmt::Display for SeriesError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeriesError::NonGradedMatching => {
                write!(f, "matching has an edge with unequal multidegrees")
            }
            SeriesError::DegreeNotTwo => write!(f, "ideal has a generator of degree != 2"),
        }
    }
}

impl std::error::Error for SeriesError {}

/// Which generator subsets enter a numerator sum.
pub enum SubsetMode<'a> {
    AllSubsets,
    Survivors(&'a Matching),
}

/// Masks selected by the mode, always including the empty subset.
fn selected_masks(ideal: &MonomialIdeal, mode: &SubsetMode) -> Result<Vec<u64>, SeriesError> {
    let l = ideal.n_gens();
    match mode {
        SubsetMode::AllSubsets => Ok((0..(1u64 << l)).collect()),
        SubsetMode::Survivors(matching) => {
            let mut matched = std::collections::BTreeSet::new();
            for e in &matching.edges {
                if ideal.lcm_of(e.upper.1) != ideal.lcm_of(e.lower.1) {
                    return Err(SeriesError::NonGradedMatching);
                }
                matched.insert(e.upper.1);
                matched.insert(e.lower.1);
            }
            Ok((0..(1u64 << l)).filter(|m| !matched.contains(m)).collect())
        }
    }
}

/// Numerator `sum (-1)^{|I|} m_I t^{|m_I|}` over the selected subsets
/// (the empty subset contributes the constant 1).
pub fn hilbert_numerator(
    ideal: &MonomialIdeal,
    mode: SubsetMode,
) -> Result<MGPoly, SeriesError> {
    let mut p = MGPoly::zero();
    for mask in selected_masks(ideal, &mode)? {
        let lcm = ideal.lcm_of(mask);
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        p.add_term(lcm.0.clone(), lcm.total_degree(), 0, BigInt::from(sign));
    }
    Ok(p)
}

/// Closed form and expansion of the multigraded Hilbert series of the
/// quotient by the ideal. Expansion is exact for all `|alpha| <= d`.
pub fn hilbert_series(
    ideal: &MonomialIdeal,
    mode: SubsetMode,
    d: u32,
) -> Result<(FracForm, SeriesExpansion), SeriesError> {
    let n = ideal.n_vars();
    let num = hilbert_numerator(ideal, mode)?;
    let den = denominator_one_minus_xt(n);
    let form = FracForm { num, den };
    // terms are x^a t^{|a|}, so weight 2|a| must fit under the bound
    let expansion = form.expand(n, 2 * d);
    Ok((form, expansion))
}

fn denominator_one_minus_xt(n: usize) -> MGPoly {
    MGPoly::product_one_plus_xt(n, -1)
}

/// Direct monomial count of the quotient ring: `sum x^a t^{|a|}` over all
/// `a` with `|a| <= d` and `x^a` outside the ideal. Independent of the
/// resolution machinery; used as ground truth.
pub fn quotient_monomial_series(ideal: &MonomialIdeal, d: u32) -> SeriesExpansion {
    let n = ideal.n_vars();
    let mut s = SeriesExpansion::zero(n, 2 * d);
    let mut stack = vec![vec![0u32; 0]];
    while let Some(prefix) = stack.pop() {
        if prefix.len() == n {
            let m = Monomial::from_exponents(prefix.clone());
            if !ideal.contains(&m) {
                s.add_term(prefix.clone(), m.total_degree(), BigRational::one());
            }
            continue;
        }
        let used: u32 = prefix.iter().sum();
        for e in 0..=(d - used) {
            let mut next = prefix.clone();
            next.push(e);
            stack.push(next);
        }
    }
    s
}

/// The three-variable closed form `1 / (1 + sum_{I surviving the first
/// sequence} (-1)^{cl(I)} m_I t^{|m_I|} z^{cl(I)+|I|})`.
pub fn hilb_r(ideal: &MonomialIdeal, m1_survivors: &[u64]) -> FracForm {
    let n = ideal.n_vars();
    let mut den = MGPoly::zero();
    for &mask in m1_survivors {
        let s = ideal.subset(mask);
        let sign = if s.cl.is_multiple_of(2) { 1 } else { -1 };
        den.add_term(
            s.lcm.0.clone(),
            s.lcm.total_degree(),
            (s.cl + s.cardinality()) as u32,
            BigInt::from(sign),
        );
    }
    if !m1_survivors.contains(&0) {
        den = den.add(&MGPoly::one(n));
    }
    FracForm {
        num: MGPoly::one(n),
        den,
    }
}

/// Result of expanding the conjectured Poincare-Betti form; negative
/// coefficients falsify the closed form for the instance and are reported.
pub struct PoincareExpansion {
    pub form: FracForm,
    pub expansion: SeriesExpansion,
    pub negative_terms: Vec<((Vec<u32>, u32), BigRational)>,
}

/// `prod (1 + x_i t) / (1 + sum_{I surviving the first sequence}
/// (-1)^{cl(I)} m_I t^{cl(I)+|I|})`, expanded to the weight bound.
pub fn conjectured_poincare(
    ideal: &MonomialIdeal,
    m1_survivors: &[u64],
    bound: u32,
) -> PoincareExpansion {
    let n = ideal.n_vars();
    let num = MGPoly::product_one_plus_xt(n, 1);
    let den = hilb_r(ideal, m1_survivors).den.set_t_one_z_to_t();
    let form = FracForm { num, den };
    let expansion = form.expand(n, bound);
    let negative_terms = expansion.negative_terms();
    PoincareExpansion {
        form,
        expansion,
        negative_terms,
    }
}

/// The numerator form of the Hilbert series obtained from the same
/// survivor data: `(1 + sum (-1)^{|I|} m_I t^{|m_I|}) / prod (1 - x_i t)`.
pub fn survivor_hilbert_form(ideal: &MonomialIdeal, m1_survivors: &[u64]) -> FracForm {
    let n = ideal.n_vars();
    let num = hilb_r(ideal, m1_survivors).den.set_z_minus_one();
    FracForm {
        num,
        den: denominator_one_minus_xt(n),
    }
}

/// For ideals generated in degree two: every first-sequence survivor
/// satisfies `|m_I| = cl(I) + |I|` iff the quotient's Hilbert series
/// determines the Poincare-Betti series in the Koszul-dual way. Returns
/// the per-survivor criterion.
pub fn koszul_identity_check(
    ideal: &MonomialIdeal,
    m1_survivors: &[u64],
) -> Result<bool, SeriesError> {
    if !ideal.is_equigenerated(2) {
        return Err(SeriesError::DegreeNotTwo);
    }
    for &mask in m1_survivors {
        let s = ideal.subset(mask);
        if s.lcm.total_degree() as usize != s.cl + s.cardinality() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The Golod upper-bound series `prod (1 + x_i t) / (1 - t sum_{i>=1}
/// beta_{i,alpha} x^alpha t^i)` expanded to the weight bound.
pub fn golod_series(n: usize, betti: &BettiTable, bound: u32) -> (FracForm, SeriesExpansion) {
    let num = MGPoly::product_one_plus_xt(n, 1);
    let mut den = MGPoly::one(n);
    for ((i, alpha), dim) in &betti.entries {
        if *i == 0 {
            continue;
        }
        den.add_term(
            alpha.0.clone(),
            (*i + 1) as u32,
            0,
            -BigInt::from(*dim as i64),
        );
    }
    let form = FracForm { num, den };
    let expansion = form.expand(n, bound);
    (form, expansion)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::minimalize_generators;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn ideal(gens: &[&[u32]], n: usize) -> MonomialIdeal {
        minimalize_generators(gens.iter().map(|e| m(e)).collect(), n).unwrap()
    }

    #[test]
    fn numerator_path_ideal() {
        // <xy, yz>: 1 - xy t^2 - yz t^2 + xyz t^3
        let a = ideal(&[&[1, 1, 0], &[0, 1, 1]], 3);
        let p = hilbert_numerator(&a, SubsetMode::AllSubsets).unwrap();
        let mut expected = MGPoly::one(3);
        expected.add_term(vec![1, 1, 0], 2, 0, BigInt::from(-1));
        expected.add_term(vec![0, 1, 1], 2, 0, BigInt::from(-1));
        expected.add_term(vec![1, 1, 1], 3, 0, BigInt::from(1));
        assert_eq!(p, expected);
        // empty ideal -> 1
        let trivial = hilbert_numerator(&ideal(&[], 2), SubsetMode::AllSubsets).unwrap();
        assert_eq!(trivial, MGPoly::one(2));
    }

    #[test]
    fn hilbert_series_matches_monomial_count() {
        // k[x]/<x^2> = 1 + x t
        let a = ideal(&[&[2]], 1);
        let (form, exp) = hilbert_series(&a, SubsetMode::AllSubsets, 6).unwrap();
        assert_eq!(form.num.terms.len(), 2);
        let direct = quotient_monomial_series(&a, 6);
        assert_eq!(exp, direct);
        assert_eq!(exp.coeff(&[1], 1), BigRational::one());
        assert_eq!(exp.coeff(&[2], 2), BigRational::zero());

        // free polynomial ring in 2 vars
        let free = ideal(&[], 2);
        let (_, exp) = hilbert_series(&free, SubsetMode::AllSubsets, 5).unwrap();
        assert_eq!(exp, quotient_monomial_series(&free, 5));

        // 5-gon
        let pentagon = ideal(
            &[
                &[1, 1, 0, 0, 0],
                &[0, 1, 1, 0, 0],
                &[0, 0, 1, 1, 0],
                &[0, 0, 0, 1, 1],
                &[1, 0, 0, 0, 1],
            ],
            5,
        );
        let (_, exp) = hilbert_series(&pentagon, SubsetMode::AllSubsets, 5).unwrap();
        assert_eq!(exp, quotient_monomial_series(&pentagon, 5));
    }

    #[test]
    fn hilb_r_closed_forms() {
        // <xy, yz> with empty first sequence: all four subsets survive
        let a = ideal(&[&[1, 1, 0], &[0, 1, 1]], 3);
        let survivors: Vec<u64> = (0..4).collect();
        let form = hilb_r(&a, &survivors);
        let mut den = MGPoly::one(3);
        den.add_term(vec![1, 1, 0], 2, 2, BigInt::from(-1));
        den.add_term(vec![0, 1, 1], 2, 2, BigInt::from(-1));
        den.add_term(vec![1, 1, 1], 3, 3, BigInt::from(-1));
        assert_eq!(form.den, den);

        // <xy, zw>: the coprime pair has cl = 2, so its sign flips
        let b = ideal(&[&[1, 1, 0, 0], &[0, 0, 1, 1]], 4);
        let form = hilb_r(&b, &(0..4).collect::<Vec<u64>>());
        let mut den = MGPoly::one(4);
        den.add_term(vec![1, 1, 0, 0], 2, 2, BigInt::from(-1));
        den.add_term(vec![0, 0, 1, 1], 2, 2, BigInt::from(-1));
        den.add_term(vec![1, 1, 1, 1], 4, 4, BigInt::from(1));
        assert_eq!(form.den, den);
    }

    #[test]
    fn poincare_for_one_squared_variable() {
        // k[x]/<x^2>: (1+xt)/(1-x^2 t^2) = sum x^i t^i
        let a = ideal(&[&[2]], 1);
        let p = conjectured_poincare(&a, &[0, 1], 16);
        assert!(p.negative_terms.is_empty());
        for i in 0..=8u32 {
            assert_eq!(p.expansion.coeff(&[i], i), BigRational::one());
        }
        assert_eq!(p.expansion.coeff(&[2], 1), BigRational::zero());
        // empty ideal: Koszul resolution
        let free = ideal(&[], 2);
        let p = conjectured_poincare(&free, &[0], 8);
        assert_eq!(p.form.den, MGPoly::one(2));
        assert_eq!(p.expansion.coeff(&[1, 1], 2), BigRational::one());
    }

    #[test]
    fn golod_series_single_generator() {
        // <xy>: (1+xt)(1+yt)/(1 - xy t^2)
        let _a = ideal(&[&[1, 1]], 2);
        let mut betti = BettiTable::new();
        betti.add(0, m(&[0, 0]), 1);
        betti.add(1, m(&[1, 1]), 1);
        let (form, exp) = golod_series(2, &betti, 10);
        let mut den = MGPoly::one(2);
        den.add_term(vec![1, 1], 2, 0, BigInt::from(-1));
        assert_eq!(form.den, den);
        assert_eq!(exp.coeff(&[1, 1], 2), BigRational::one() + BigRational::one());
    }

    #[test]
    fn koszul_identity_degree_two_only() {
        let a = ideal(&[&[1, 1, 1]], 3);
        assert!(matches!(
            koszul_identity_check(&a, &[0, 1]),
            Err(SeriesError::DegreeNotTwo)
        ));
    }

    #[test]
    fn survivor_hilbert_form_matches_all_subsets_when_nothing_is_matched() {
        let a = ideal(&[&[1, 1, 0], &[0, 1, 1]], 3);
        let survivors: Vec<u64> = (0..4).collect();
        let via_survivors = survivor_hilbert_form(&a, &survivors);
        let (direct, _) = hilbert_series(&a, SubsetMode::AllSubsets, 4).unwrap();
        assert_eq!(via_survivors.num, direct.num);
        assert_eq!(via_survivors.den, direct.den);
    }

    #[test]
    fn division_recovers_geometric_series() {
        // 1/(1 - x t) = sum x^i t^i
        let mut den = MGPoly::one(1);
        den.add_term(vec![1], 1, 0, BigInt::from(-1));
        let form = FracForm {
            num: MGPoly::one(1),
            den,
        };
        let s = form.expand(1, 10);
        for i in 0..=5u32 {
            assert_eq!(s.coeff(&[i], i), BigRational::one());
        }
        // multiply back
        let den_s = SeriesExpansion::from_poly(&form.den, 1, 10);
        let prod = s.mul(&den_s);
        let one = SeriesExpansion::from_poly(&MGPoly::one(1), 1, 10);
        assert_eq!(prod, one);
    }
}
