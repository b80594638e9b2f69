//! Brute-force Koszul homology of a monomial quotient: exact ranks and
//! cycle representatives per multidegree slice, the induced product with
//! reduction modulo boundaries, and triviality verdicts.
//!
//! The Koszul complex over the quotient splits per multidegree into small
//! finite-dimensional slices because each graded piece of the quotient is
//! spanned by at most one monomial. Everything here is independent of the
//! Morse machinery and serves as its ground truth.

use crate::betti::BettiTable;
use crate::ideal::MonomialIdeal;
use crate::linalg::{FieldCtx, Mat, RowSpace};
use crate::monomial::Monomial;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A homology class: homological degree, multidegree, basis index.
pub type ClassId = (usize, Monomial, usize);

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    MultidegreeOutOfBound { degree: u32, bound: u32 },
    ProductNotACycle,
    /// a product of classes with non-coprime multidegrees failed to vanish
    CoprimeVanishingViolated { left: ClassId, right: ClassId },
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::MultidegreeOutOfBound { degree, bound } => {
                write!(f, "multidegree of total degree {} exceeds the bound {}", degree, bound)
            }
            OracleError::ProductNotACycle => write!(f, "product of cycles failed the cycle check"),
            OracleError::CoprimeVanishingViolated { left, right } => write!(
                f,
                "product of classes ({},{}) and ({},{}) with a common variable did not vanish",
                left.0, left.1, right.0, right.1
            ),
        }
    }
}

impl std::error::Error for OracleError {}

struct Slice<F: FieldCtx> {
    /// wedge masks J with |J| = i, J inside the support, quotient
    /// monomial outside the ideal; ascending
    basis: Vec<u32>,
    /// image of the next differential
    boundary: RowSpace<F>,
    /// homology representatives, reduced against the boundary and each
    /// other, in deterministic insertion order
    class_space: RowSpace<F>,
    class_vecs: Vec<Vec<F::Elem>>,
}

/// Exact Koszul homology of the quotient by the ideal, computed slice by
/// slice on demand and cached.
pub struct KoszulOracle<F: FieldCtx> {
    ideal: MonomialIdeal,
    field: F,
    bound: u32,
    slices: BTreeMap<(usize, Monomial), Slice<F>>,
}

impl<F: FieldCtx> KoszulOracle<F> {
    pub fn new(ideal: &MonomialIdeal, field: F, bound: u32) -> Self {
        KoszulOracle {
            ideal: ideal.clone(),
            field,
            bound,
            slices: BTreeMap::new(),
        }
    }

    /// A bound covering all pairwise products of lcm-lattice classes.
    pub fn product_bound(ideal: &MonomialIdeal) -> u32 {
        2 * ideal.lcm_of((1u64 << ideal.n_gens()) - 1).total_degree()
    }

    pub fn ideal(&self) -> &MonomialIdeal {
        &self.ideal
    }

    fn wedge_basis(&self, i: usize, alpha: &Monomial) -> Vec<u32> {
        let supp = alpha.support();
        if i > supp.len() {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut combo: Vec<usize> = (0..i).collect();
        loop {
            let mask: u32 = combo.iter().map(|&k| 1u32 << supp[k]).sum();
            let rest = strip_vars(alpha, mask);
            if !self.ideal.contains(&rest) {
                out.push(mask);
            }
            if i == 0 {
                break;
            }
            // next combination
            let mut k = i;
            loop {
                if k == 0 {
                    return {
                        out.sort();
                        out
                    };
                }
                k -= 1;
                if combo[k] < supp.len() - (i - k) {
                    combo[k] += 1;
                    for j in k + 1..i {
                        combo[j] = combo[j - 1] + 1;
                    }
                    break;
                }
            }
        }
        out.sort();
        out
    }

    /// Differential of a slice basis element as a vector over the next
    /// slice basis down; terms whose quotient monomial falls into the
    /// ideal are absent from that basis and vanish.
    fn differential_vector(&self, j_mask: u32, lower_basis: &[u32]) -> Vec<F::Elem> {
        let f = &self.field;
        let index: BTreeMap<u32, usize> = lower_basis
            .iter()
            .enumerate()
            .map(|(k, m)| (*m, k))
            .collect();
        let mut v = vec![f.zero(); lower_basis.len()];
        let vars: Vec<usize> = (0..32).filter(|&b| j_mask >> b & 1 == 1).collect();
        for (pos, &b) in vars.iter().enumerate() {
            let sub = j_mask & !(1u32 << b);
            if let Some(&col) = index.get(&sub) {
                let sign = if pos % 2 == 0 { 1i64 } else { -1 };
                let val = f.embed_bigint(&num_bigint::BigInt::from(sign));
                v[col] = f.add(&v[col], &val);
            }
        }
        v
    }

    fn ensure_slice(&mut self, i: usize, alpha: &Monomial) {
        if self.slices.contains_key(&(i, alpha.clone())) {
            return;
        }
        let f = self.field.clone();
        let basis = self.wedge_basis(i, alpha);
        let upper = self.wedge_basis(i + 1, alpha);
        let lower = if i > 0 {
            self.wedge_basis(i - 1, alpha)
        } else {
            Vec::new()
        };
        let mut boundary = RowSpace::new(&f, basis.len());
        for &jp in &upper {
            let v = self.differential_vector(jp, &basis);
            boundary.insert(v);
        }
        // kernel of the outgoing differential
        let mut mat = Mat::zeros(&f, lower.len(), basis.len());
        for (c, &j) in basis.iter().enumerate() {
            let col = self.differential_vector(j, &lower);
            for (r, val) in col.into_iter().enumerate() {
                mat.set(r, c, val);
            }
        }
        let kernel = if lower.is_empty() {
            // everything is a cycle
            (0..basis.len())
                .map(|k| {
                    let mut v = vec![f.zero(); basis.len()];
                    v[k] = f.one();
                    v
                })
                .collect()
        } else {
            mat.kernel_basis(&f)
        };
        let mut class_space = RowSpace::new(&f, basis.len());
        let mut class_vecs = Vec::new();
        let mut combined = RowSpace::new(&f, basis.len());
        for &jp in &upper {
            let v = self.differential_vector(jp, &basis);
            combined.insert(v);
        }
        for v in kernel {
            if let Some(row) = combined.insert(v) {
                class_space.insert(row.clone());
                class_vecs.push(row);
            }
        }
        self.slices.insert(
            (i, alpha.clone()),
            Slice {
                basis,
                boundary,
                class_space,
                class_vecs,
            },
        );
    }

    pub fn dim(&mut self, i: usize, alpha: &Monomial) -> usize {
        self.ensure_slice(i, alpha);
        self.slices[&(i, alpha.clone())].class_vecs.len()
    }

    /// The representative chain of a class, as (wedge mask, coefficient)
    /// pairs over the slice basis.
    pub fn representative(&mut self, id: &ClassId) -> Vec<(u32, F::Elem)> {
        self.ensure_slice(id.0, &id.1);
        let slice = &self.slices[&(id.0, id.1.clone())];
        slice
            .basis
            .iter()
            .zip(&slice.class_vecs[id.2])
            .filter(|(_, c)| !self.field.is_zero(c))
            .map(|(m, c)| (*m, c.clone()))
            .collect()
    }

    /// The multidegrees where homology can live: lcms of generator
    /// subsets, within the bound.
    pub fn lattice_multidegrees(&self) -> Vec<Monomial> {
        let l = self.ideal.n_gens();
        let mut set = BTreeSet::new();
        for mask in 0..(1u64 << l) {
            let m = self.ideal.lcm_of(mask);
            if m.total_degree() <= self.bound {
                set.insert(m);
            }
        }
        set.into_iter().collect()
    }

    /// Betti numbers of the quotient: dimensions of the Koszul homology
    /// per homological degree and lcm-lattice multidegree.
    pub fn betti_table(&mut self) -> BettiTable {
        let mut table = BettiTable::new();
        let n = self.ideal.n_vars();
        for alpha in self.lattice_multidegrees() {
            for i in 0..=n {
                let d = self.dim(i, &alpha);
                table.add(i, alpha.clone(), d);
            }
        }
        table
    }

    /// All positive-degree classes over the lcm lattice.
    pub fn positive_classes(&mut self) -> Vec<ClassId> {
        let n = self.ideal.n_vars();
        let mut out = Vec::new();
        for alpha in self.lattice_multidegrees() {
            if alpha.is_one() {
                continue;
            }
            for i in 1..=n {
                for k in 0..self.dim(i, &alpha) {
                    out.push((i, alpha.clone(), k));
                }
            }
        }
        out
    }

    /// Wedge two chains and expand the resulting class in the stored
    /// basis of the product slice. Vanishing is an empty expansion.
    pub fn multiply_chains(
        &mut self,
        left: (usize, &Monomial, &[(u32, F::Elem)]),
        right: (usize, &Monomial, &[(u32, F::Elem)]),
    ) -> Result<Vec<(ClassId, F::Elem)>, OracleError> {
        let gamma = left.1.mul(right.1);
        if gamma.total_degree() > self.bound {
            return Err(OracleError::MultidegreeOutOfBound {
                degree: gamma.total_degree(),
                bound: self.bound,
            });
        }
        let degree = left.0 + right.0;
        self.ensure_slice(degree, &gamma);
        let f = self.field.clone();
        let basis: Vec<u32> = self.slices[&(degree, gamma.clone())].basis.clone();
        let index: BTreeMap<u32, usize> = basis.iter().enumerate().map(|(k, m)| (*m, k)).collect();
        let mut chain = vec![f.zero(); basis.len()];
        for (jl, cl) in left.2 {
            for (jr, cr) in right.2 {
                if jl & jr != 0 {
                    continue;
                }
                let merged = jl | jr;
                let Some(&col) = index.get(&merged) else {
                    // quotient monomial lies in the ideal: the term is zero
                    continue;
                };
                let sign = shuffle_sign(*jl, *jr);
                let mut term = f.mul(cl, cr);
                if sign < 0 {
                    term = f.neg(&term);
                }
                chain[col] = f.add(&chain[col], &term);
            }
        }
        // the product of cycles must be a cycle
        if degree > 0 {
            let lower = self.wedge_basis(degree - 1, &gamma);
            let mut image = vec![f.zero(); lower.len()];
            for (c, &j) in basis.iter().enumerate() {
                if f.is_zero(&chain[c]) {
                    continue;
                }
                let dv = self.differential_vector(j, &lower);
                for (r, val) in dv.into_iter().enumerate() {
                    image[r] = f.add(&image[r], &f.mul(&chain[c], &val));
                }
            }
            if image.iter().any(|x| !f.is_zero(x)) {
                return Err(OracleError::ProductNotACycle);
            }
        }
        let slice = &self.slices[&(degree, gamma.clone())];
        let reduced = slice.boundary.reduce(chain);
        let coords = slice
            .class_space
            .coordinates(&reduced)
            .expect("a reduced cycle expands in the homology basis");
        Ok(coords
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(k, c)| ((degree, gamma.clone(), k), c))
            .collect())
    }

    /// Multiply two classes: wedge the representatives, verify the result
    /// is a cycle, reduce modulo boundaries, and expand in the stored
    /// class basis of the product slice. Products of classes with a
    /// common variable in their multidegrees must vanish; a violation is
    /// surfaced as an error rather than a value.
    pub fn product(
        &mut self,
        left: &ClassId,
        right: &ClassId,
    ) -> Result<Vec<(ClassId, F::Elem)>, OracleError> {
        let rep_l = self.representative(left);
        let rep_r = self.representative(right);
        let expansion = self.multiply_chains(
            (left.0, &left.1, &rep_l),
            (right.0, &right.1, &rep_r),
        )?;
        if !left.1.is_coprime(&right.1) && !expansion.is_empty() {
            return Err(OracleError::CoprimeVanishingViolated {
                left: left.clone(),
                right: right.clone(),
            });
        }
        Ok(expansion)
    }

    /// The stored class representative as a full coordinate vector, and
    /// the basis it refers to.
    pub fn class_basis_and_vectors(
        &mut self,
        i: usize,
        alpha: &Monomial,
    ) -> (Vec<u32>, Vec<Vec<F::Elem>>) {
        self.ensure_slice(i, alpha);
        let slice = &self.slices[&(i, alpha.clone())];
        (slice.basis.clone(), slice.class_vecs.clone())
    }

    /// Whether all pairwise products of positive-degree classes vanish;
    /// returns the first nonzero product as a witness otherwise.
    pub fn product_trivial(&mut self) -> Result<TrivialityVerdict<F>, OracleError> {
        let classes = self.positive_classes();
        for a in 0..classes.len() {
            for b in a..classes.len() {
                let exp = self.product(&classes[a], &classes[b])?;
                if !exp.is_empty() {
                    return Ok(TrivialityVerdict {
                        trivial: false,
                        witness: Some(Box::new(ProductWitness {
                            left: classes[a].clone(),
                            right: classes[b].clone(),
                            expansion: exp,
                        })),
                    });
                }
            }
        }
        Ok(TrivialityVerdict {
            trivial: true,
            witness: None,
        })
    }

    /// Rewrite a class representative so that every wedge set contains
    /// the given variable (which must divide the multidegree), staying in
    /// the same homology class. Returns the rewritten chain.
    pub fn normalize_with_variable(
        &mut self,
        id: &ClassId,
        var: usize,
    ) -> Option<Vec<(u32, F::Elem)>> {
        assert!(id.1.exponent(var) > 0, "variable must divide the multidegree");
        self.ensure_slice(id.0, &id.1);
        let f = self.field.clone();
        let slice = &self.slices[&(id.0, id.1.clone())];
        let basis = slice.basis.clone();
        let target = slice.class_vecs[id.2].clone();
        let upper = self.wedge_basis(id.0 + 1, &id.1);
        // columns: boundaries of all upper basis elements, then the basis
        // elements containing the variable
        let var_cols: Vec<usize> = (0..basis.len())
            .filter(|&k| basis[k] >> var & 1 == 1)
            .collect();
        let mut mat = Mat::zeros(&f, basis.len(), upper.len() + var_cols.len());
        for (c, &jp) in upper.iter().enumerate() {
            let v = self.differential_vector(jp, &basis);
            for (r, val) in v.into_iter().enumerate() {
                mat.set(r, c, val);
            }
        }
        for (c, &k) in var_cols.iter().enumerate() {
            mat.set(k, upper.len() + c, f.one());
        }
        let solution = mat.solve(&f, &target)?;
        let mut chain = Vec::new();
        for (c, &k) in var_cols.iter().enumerate() {
            let coeff = solution[upper.len() + c].clone();
            if !f.is_zero(&coeff) {
                chain.push((basis[k], coeff));
            }
        }
        Some(chain)
    }

    /// Reduce an arbitrary chain at a slice to homology-class coordinates
    /// (None when it is not a cycle representative of the slice).
    pub fn class_coordinates(
        &mut self,
        i: usize,
        alpha: &Monomial,
        chain: &[(u32, F::Elem)],
    ) -> Option<Vec<F::Elem>> {
        self.ensure_slice(i, alpha);
        let f = &self.field;
        let slice = &self.slices[&(i, alpha.clone())];
        let index: BTreeMap<u32, usize> = slice
            .basis
            .iter()
            .enumerate()
            .map(|(k, m)| (*m, k))
            .collect();
        let mut v = vec![f.zero(); slice.basis.len()];
        for (mask, coeff) in chain {
            let &col = index.get(mask)?;
            v[col] = f.add(&v[col], coeff);
        }
        let reduced = slice.boundary.reduce(v);
        slice.class_space.coordinates(&reduced)
    }
}

#[derive(Debug, Clone)]
pub struct ProductWitness<F: FieldCtx> {
    pub left: ClassId,
    pub right: ClassId,
    pub expansion: Vec<(ClassId, F::Elem)>,
}

#[derive(Debug, Clone)]
pub struct TrivialityVerdict<F: FieldCtx> {
    pub trivial: bool,
    pub witness: Option<Box<ProductWitness<F>>>,
}

/// Remove the variables of `mask` (one power each) from the monomial.
fn strip_vars(alpha: &Monomial, mask: u32) -> Monomial {
    let mut e = alpha.0.clone();
    for b in 0..e.len() {
        if mask >> b & 1 == 1 {
            assert!(e[b] > 0);
            e[b] -= 1;
        }
    }
    Monomial::from_exponents(e)
}

/// Sign of merging two disjoint ascending wedge sets: parity of the pairs
/// (a in left, b in right) with b < a.
fn shuffle_sign(left: u32, right: u32) -> i32 {
    let mut inversions = 0u32;
    for a in 0..32 {
        if left >> a & 1 == 1 {
            inversions += (right & ((1u32 << a) - 1)).count_ones();
        }
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Convenience: Betti table of the quotient over the chosen field, with
/// representatives retained in the returned oracle.
pub fn koszul_homology<F: FieldCtx>(
    ideal: &MonomialIdeal,
    field: F,
    bound: u32,
) -> (BettiTable, KoszulOracle<F>) {
    let mut oracle = KoszulOracle::new(ideal, field, bound);
    let table = oracle.betti_table();
    (table, oracle)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::minimalize_generators;
    use crate::linalg::Rationals;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn ideal(gens: &[&[u32]], n: usize) -> MonomialIdeal {
        minimalize_generators(gens.iter().map(|e| m(e)).collect(), n).unwrap()
    }

    fn oracle(gens: &[&[u32]], n: usize) -> KoszulOracle<Rationals> {
        let a = ideal(gens, n);
        let bound = KoszulOracle::<Rationals>::product_bound(&a);
        KoszulOracle::new(&a, Rationals, bound)
    }

    #[test]
    fn single_generator_betti() {
        let mut o = oracle(&[&[1, 1]], 2);
        let t = o.betti_table();
        assert_eq!(t.get(0, &m(&[0, 0])), 1);
        assert_eq!(t.get(1, &m(&[1, 1])), 1);
        assert_eq!(t.entries.len(), 2);
    }

    #[test]
    fn triangle_betti() {
        let mut o = oracle(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]], 3);
        let t = o.betti_table();
        assert_eq!(t.total(1), 3);
        assert_eq!(t.get(2, &m(&[1, 1, 1])), 2);
        assert_eq!(t.total(3), 0);
    }

    #[test]
    fn shuffle_signs() {
        // e1 ^ e2 keeps order, e2 ^ e1 swaps
        assert_eq!(shuffle_sign(0b01, 0b10), 1);
        assert_eq!(shuffle_sign(0b10, 0b01), -1);
        assert_eq!(shuffle_sign(0b101, 0b010), -1);
    }

    #[test]
    fn complete_intersection_product_is_nonzero() {
        let mut o = oracle(&[&[1, 1, 0, 0], &[0, 0, 1, 1]], 4);
        let verdict = o.product_trivial().unwrap();
        assert!(!verdict.trivial);
        let w = verdict.witness.unwrap();
        assert_eq!(w.left.1.mul(&w.right.1), m(&[1, 1, 1, 1]));
    }

    #[test]
    fn connected_pair_products_vanish() {
        let mut o = oracle(&[&[1, 1, 0], &[0, 1, 1]], 3);
        let verdict = o.product_trivial().unwrap();
        assert!(verdict.trivial);
    }

    #[test]
    fn pentagon_product_witness() {
        let mut o = oracle(
            &[
                &[1, 1, 0, 0, 0],
                &[0, 1, 1, 0, 0],
                &[0, 0, 1, 1, 0],
                &[0, 0, 0, 1, 1],
                &[1, 0, 0, 0, 1],
            ],
            5,
        );
        let verdict = o.product_trivial().unwrap();
        assert!(!verdict.trivial, "the 5-gon has a nontrivial product");
    }

    #[test]
    fn normalization_keeps_the_class() {
        let mut o = oracle(&[&[1, 1, 0], &[0, 1, 1]], 3);
        let classes = o.positive_classes();
        for id in classes {
            for var in id.1.support() {
                let chain = o
                    .normalize_with_variable(&id, var)
                    .expect("normalization must exist");
                for (mask, _) in &chain {
                    assert_eq!(mask >> var & 1, 1);
                }
                let coords = o
                    .class_coordinates(id.0, &id.1, &chain)
                    .expect("normalized chain is a cycle");
                // must be the unit vector at the class index
                for (k, c) in coords.iter().enumerate() {
                    if k == id.2 {
                        assert_eq!(c, &num_rational::BigRational::from_integer(1.into()));
                    } else {
                        assert!(num_traits::Zero::is_zero(c));
                    }
                }
            }
        }
    }
}
