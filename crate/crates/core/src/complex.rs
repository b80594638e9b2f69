//! Finitely based multigraded chain complexes, acyclic matchings, and the
//! Morse complex obtained by rerouting the differential along matched
//! edges.
//!
//! Cells carry a homological degree, an opaque `u64` label (generator
//! masks for Taylor-derived complexes), and a multidegree. Differential
//! coefficients are exact integers times a monomial; the monomial of an
//! entry is always the quotient of the endpoint multidegrees. The only
//! base rings are the polynomial ring itself and, after `tensor_k`, the
//! coefficient field; other base rings are unsupported.

use crate::linalg::{FieldCtx, Mat};
use crate::monomial::Monomial;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

/// (homological degree, label); labels are unique within a degree.
pub type CellKey = (usize, u64);

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Coefficient {
    pub scalar: BigInt,
    pub monomial: Monomial,
}

impl Coefficient {
    pub fn new(scalar: BigInt, monomial: Monomial) -> Self {
        Coefficient { scalar, monomial }
    }

    pub fn is_unit(&self) -> bool {
        self.monomial.is_one() && (self.scalar == BigInt::one() || self.scalar == -BigInt::one())
    }
}

#[derive(Clone, Debug, Default)]
pub struct BasedComplex {
    pub n_vars: usize,
    /// degree -> label -> multidegree
    pub cells: BTreeMap<usize, BTreeMap<u64, Monomial>>,
    /// source cell -> ordered differential entries
    pub diff: BTreeMap<CellKey, Vec<(CellKey, Coefficient)>>,
}

impl BasedComplex {
    pub fn new(n_vars: usize) -> Self {
        BasedComplex {
            n_vars,
            cells: BTreeMap::new(),
            diff: BTreeMap::new(),
        }
    }

    pub fn add_cell(&mut self, degree: usize, label: u64, mdeg: Monomial) {
        let prev = self.cells.entry(degree).or_default().insert(label, mdeg);
        assert!(prev.is_none(), "duplicate cell label within a degree");
    }

    pub fn has_cell(&self, key: CellKey) -> bool {
        self.cells
            .get(&key.0)
            .map(|m| m.contains_key(&key.1))
            .unwrap_or(false)
    }

    pub fn mdeg(&self, key: CellKey) -> &Monomial {
        &self.cells[&key.0][&key.1]
    }

    /// Add to the differential entry `from -> to`, merging with an
    /// existing entry for the same target.
    pub fn add_entry(&mut self, from: CellKey, to: CellKey, coeff: Coefficient) {
        assert_eq!(from.0, to.0 + 1, "differential must drop degree by one");
        if coeff.scalar.is_zero() {
            return;
        }
        let entries = self.diff.entry(from).or_default();
        if let Some((_, existing)) = entries.iter_mut().find(|(k, _)| *k == to) {
            assert_eq!(existing.monomial, coeff.monomial, "homogeneity fixes the monomial");
            existing.scalar += coeff.scalar;
            if existing.scalar.is_zero() {
                entries.retain(|(k, _)| *k != to);
            }
            return;
        }
        entries.push((to, coeff));
    }

    pub fn entries(&self, from: CellKey) -> &[(CellKey, Coefficient)] {
        self.diff.get(&from).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn entry(&self, from: CellKey, to: CellKey) -> Option<&Coefficient> {
        self.entries(from)
            .iter()
            .find(|(k, _)| *k == to)
            .map(|(_, c)| c)
    }

    pub fn n_cells(&self) -> usize {
        self.cells.values().map(|m| m.len()).sum()
    }

    pub fn max_degree(&self) -> usize {
        self.cells.keys().copied().max().unwrap_or(0)
    }

    pub fn cell_keys(&self) -> Vec<CellKey> {
        self.cells
            .iter()
            .flat_map(|(d, m)| m.keys().map(move |l| (*d, *l)))
            .collect()
    }

    /// Verify multidegree homogeneity: each entry's monomial equals the
    /// quotient of the endpoint multidegrees.
    pub fn check_homogeneous(&self) -> Result<(), (CellKey, CellKey)> {
        for (from, entries) in &self.diff {
            for (to, coeff) in entries {
                let src = self.mdeg(*from);
                let dst = self.mdeg(*to);
                if !dst.divides(src) || src.div(dst) != coeff.monomial {
                    return Err((*from, *to));
                }
            }
        }
        Ok(())
    }

    /// Verify that the composite of two differentials vanishes.
    pub fn check_dd_zero(&self) -> Result<(), (CellKey, CellKey)> {
        for (&from, entries) in &self.diff {
            let mut acc: BTreeMap<CellKey, BigInt> = BTreeMap::new();
            for (mid, c1) in entries {
                for (to, c2) in self.entries(*mid) {
                    *acc.entry(*to).or_insert_with(BigInt::zero) += &c1.scalar * &c2.scalar;
                }
            }
            for (to, scalar) in acc {
                if !scalar.is_zero() {
                    return Err((from, to));
                }
            }
        }
        Ok(())
    }

    /// Per-multidegree Euler characteristic `sum_i (-1)^i #cells_{i,alpha}`.
    pub fn euler_per_multidegree(&self) -> BTreeMap<Monomial, i64> {
        let mut out: BTreeMap<Monomial, i64> = BTreeMap::new();
        for (d, m) in &self.cells {
            let sign = if d % 2 == 0 { 1 } else { -1 };
            for mdeg in m.values() {
                *out.entry(mdeg.clone()).or_insert(0) += sign;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    /// Replace every coefficient by its scalar part, dropping entries whose
    /// monomial is not 1. This is the complex tensored with the residue
    /// field.
    pub fn tensor_k(&self) -> BasedComplex {
        let mut out = self.clone();
        for entries in out.diff.values_mut() {
            entries.retain(|(_, c)| c.monomial.is_one());
        }
        out.diff.retain(|_, v| !v.is_empty());
        out
    }

    /// Deterministic debug dump: per degree, one line per cell with its
    /// multidegree and differential entries.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (d, cells) in &self.cells {
            s.push_str(&format!("degree {}:\n", d));
            for (label, mdeg) in cells {
                s.push_str(&format!("  {} [{}] ->", fmt_label(*label), mdeg));
                let mut entries = self.entries((*d, *label)).to_vec();
                entries.sort_by_key(|(k, _)| *k);
                if entries.is_empty() {
                    s.push_str(" 0");
                }
                for (to, c) in entries {
                    s.push_str(&format!(
                        " ({}, {}, {})",
                        c.scalar,
                        c.monomial,
                        fmt_label(to.1)
                    ));
                }
                s.push('\n');
            }
        }
        s
    }
}

/// Render a label as the set of its bit positions (1-based).
pub fn fmt_label(label: u64) -> String {
    if label == 0 {
        return "{}".to_string();
    }
    let mut parts = Vec::new();
    for i in 0..64 {
        if label >> i & 1 == 1 {
            parts.push(format!("{}", i + 1));
        }
    }
    format!("{{{}}}", parts.join(","))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatchEdge {
    pub upper: CellKey,
    pub lower: CellKey,
    /// construction stage the edge came from (1-based sequence index)
    pub seq: usize,
}

#[derive(Clone, Default, PartialEq, Eq, Debug)]
pub struct Matching {
    pub edges: Vec<MatchEdge>,
}

impl Matching {
    pub fn new() -> Self {
        Matching { edges: Vec::new() }
    }

    pub fn add(&mut self, upper: CellKey, lower: CellKey, seq: usize) {
        self.edges.push(MatchEdge { upper, lower, seq });
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn matched_cells(&self) -> BTreeSet<CellKey> {
        self.edges
            .iter()
            .flat_map(|e| [e.upper, e.lower])
            .collect()
    }

    /// Deterministic dump, one `seq=i upper -> lower [lcm]` line per edge.
    pub fn dump(&self, cx: &BasedComplex) -> String {
        let mut edges = self.edges.clone();
        edges.sort_by_key(|e| (e.seq, e.upper, e.lower));
        let mut s = String::new();
        for e in edges {
            s.push_str(&format!(
                "seq={} {} -> {} [{}]\n",
                e.seq,
                fmt_label(e.upper.1),
                fmt_label(e.lower.1),
                cx.mdeg(e.upper)
            ));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    DanglingCell(CellKey),
    InvalidMatching(Box<ValidationReport>),
    NonScalarCoefficient(CellKey, CellKey),
}

impl fmt::Display for EngineError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EngineError::DanglingCell((d, l)) => {
                write!(f, "matching references missing cell {} at degree {}", fmt_label(*l), d)
            }
            EngineError::InvalidMatching(report) => {
                write!(f, "matching failed validation: {}", report.summary())
            }
            EngineError::NonScalarCoefficient(from, to) => write!(
                f,
                "entry {} -> {} carries a non-scalar coefficient",
                fmt_label(from.1),
                fmt_label(to.1)
            ),
        }
    }
}

impl std::error::Error for EngineError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    /// first cell found in two edges, if any
    pub matching_violation: Option<CellKey>,
    /// first matched edge whose coefficient is not a unit, if any
    pub invertibility_violation: Option<(CellKey, CellKey)>,
    /// a directed cycle in the rerouted graph, if any
    pub cycle_witness: Option<Vec<CellKey>>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.matching_violation.is_none()
            && self.invertibility_violation.is_none()
            && self.cycle_witness.is_none()
    }

    pub fn summary(&self) -> String {
        if self.ok() {
            return "valid".to_string();
        }
        let mut parts = Vec::new();
        if let Some((d, l)) = self.matching_violation {
            parts.push(format!("cell {} at degree {} lies in two edges", fmt_label(l), d));
        }
        if let Some((u, l)) = self.invertibility_violation {
            parts.push(format!(
                "edge {} -> {} has non-unit coefficient",
                fmt_label(u.1),
                fmt_label(l.1)
            ));
        }
        if let Some(cycle) = &self.cycle_witness {
            let path: Vec<String> = cycle.iter().map(|(_, l)| fmt_label(*l)).collect();
            parts.push(format!("directed cycle {}", path.join(" -> ")));
        }
        parts.join("; ")
    }
}

/// Check the three matching conditions against a complex: each cell in at
/// most one edge, unit coefficients on matched edges, and no directed
/// cycle after reversing matched edges. Cycles alternate between adjacent
/// degrees, so acyclicity is checked one degree layer at a time.
pub fn validate_matching(
    cx: &BasedComplex,
    matching: &Matching,
) -> Result<ValidationReport, EngineError> {
    for e in &matching.edges {
        for key in [e.upper, e.lower] {
            if !cx.has_cell(key) {
                return Err(EngineError::DanglingCell(key));
            }
        }
    }
    let mut seen: BTreeSet<CellKey> = BTreeSet::new();
    let mut matching_violation = None;
    for e in &matching.edges {
        for key in [e.upper, e.lower] {
            if !seen.insert(key) && matching_violation.is_none() {
                matching_violation = Some(key);
            }
        }
    }
    let mut invertibility_violation = None;
    for e in &matching.edges {
        let unit = cx.entry(e.upper, e.lower).map(|c| c.is_unit()).unwrap_or(false);
        if !unit {
            invertibility_violation = Some((e.upper, e.lower));
            break;
        }
    }
    let mut cycle_witness = None;
    if matching_violation.is_none() {
        let degrees: Vec<usize> = cx.cells.keys().copied().collect();
        for &d in &degrees {
            if d == 0 {
                continue;
            }
            if let Some(cycle) = layer_cycle(cx, matching, d) {
                cycle_witness = Some(cycle);
                break;
            }
        }
    }
    Ok(ValidationReport {
        matching_violation,
        invertibility_violation,
        cycle_witness,
    })
}

/// Adjacency of the rerouted graph restricted to degrees `d` and `d-1`.
fn layer_edges(
    cx: &BasedComplex,
    matching: &Matching,
    d: usize,
) -> BTreeMap<CellKey, Vec<(CellKey, BigInt)>> {
    let matched_pairs: BTreeSet<(CellKey, CellKey)> = matching
        .edges
        .iter()
        .filter(|e| e.upper.0 == d)
        .map(|e| (e.upper, e.lower))
        .collect();
    let mut adj: BTreeMap<CellKey, Vec<(CellKey, BigInt)>> = BTreeMap::new();
    if let Some(cells) = cx.cells.get(&d) {
        for &label in cells.keys() {
            let from = (d, label);
            for (to, coeff) in cx.entries(from) {
                if matched_pairs.contains(&(from, *to)) {
                    continue;
                }
                adj.entry(from).or_default().push((*to, coeff.scalar.clone()));
            }
        }
    }
    for (upper, lower) in &matched_pairs {
        // reversed edge with weight -1/[upper:lower]; the coefficient is
        // +-1 for validated matchings
        let scalar = cx
            .entry(*upper, *lower)
            .map(|c| c.scalar.clone())
            .unwrap_or_else(BigInt::one);
        let w = if scalar == BigInt::one() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        adj.entry(*lower).or_default().push((*upper, w));
    }
    adj
}

/// Find a directed cycle in one degree layer, or None if acyclic.
fn layer_cycle(cx: &BasedComplex, matching: &Matching, d: usize) -> Option<Vec<CellKey>> {
    let adj = layer_edges(cx, matching, d);
    let mut nodes: BTreeSet<CellKey> = BTreeSet::new();
    for (from, tos) in &adj {
        nodes.insert(*from);
        for (to, _) in tos {
            nodes.insert(*to);
        }
    }
    let mut indeg: BTreeMap<CellKey, usize> = nodes.iter().map(|k| (*k, 0)).collect();
    for tos in adj.values() {
        for (to, _) in tos {
            *indeg.get_mut(to).unwrap() += 1;
        }
    }
    let mut queue: VecDeque<CellKey> = indeg
        .iter()
        .filter(|(_, &v)| v == 0)
        .map(|(k, _)| *k)
        .collect();
    let mut removed = 0usize;
    while let Some(v) = queue.pop_front() {
        removed += 1;
        if let Some(tos) = adj.get(&v) {
            for (to, _) in tos {
                let e = indeg.get_mut(to).unwrap();
                *e -= 1;
                if *e == 0 {
                    queue.push_back(*to);
                }
            }
        }
    }
    if removed == nodes.len() {
        return None;
    }
    // remaining nodes all lie on or feed cycles; walk until a repeat
    let remaining: BTreeSet<CellKey> = indeg
        .iter()
        .filter(|(_, &v)| v > 0)
        .map(|(k, _)| *k)
        .collect();
    let start = *remaining.iter().next().unwrap();
    let mut path = vec![start];
    let mut seen: BTreeMap<CellKey, usize> = BTreeMap::new();
    seen.insert(start, 0);
    let mut current = start;
    loop {
        let next = adj
            .get(&current)
            .and_then(|tos| tos.iter().map(|(to, _)| *to).find(|to| remaining.contains(to)))
            .expect("node in cyclic remainder must have a successor in it");
        if let Some(&pos) = seen.get(&next) {
            return Some(path[pos..].to_vec());
        }
        seen.insert(next, path.len());
        path.push(next);
        current = next;
    }
}

/// The Morse complex of a validated acyclic matching: critical cells with
/// differential entries given by summed path weights. Path sums are
/// computed by dynamic programming over a topological order of each degree
/// layer, never by path enumeration.
pub fn morse_complex(cx: &BasedComplex, matching: &Matching) -> Result<BasedComplex, EngineError> {
    let report = validate_matching(cx, matching)?;
    if !report.ok() {
        return Err(EngineError::InvalidMatching(Box::new(report)));
    }
    let matched = matching.matched_cells();
    let mut out = BasedComplex::new(cx.n_vars);
    for (d, cells) in &cx.cells {
        for (label, mdeg) in cells {
            if !matched.contains(&(*d, *label)) {
                out.add_cell(*d, *label, mdeg.clone());
            }
        }
    }
    let degrees: Vec<usize> = cx.cells.keys().copied().filter(|&d| d > 0).collect();
    for d in degrees {
        let adj = layer_edges(cx, matching, d);
        let order = topological_order(&adj);
        let position: BTreeMap<CellKey, usize> =
            order.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let criticals_d: Vec<u64> = cx
            .cells
            .get(&d)
            .map(|cells| {
                cells
                    .keys()
                    .copied()
                    .filter(|l| !matched.contains(&(d, *l)))
                    .collect()
            })
            .unwrap_or_default();
        for source_label in criticals_d {
            let source = (d, source_label);
            let gamma = path_sums(&adj, &order, &position, source);
            let mut entries: Vec<(CellKey, Coefficient)> = Vec::new();
            for (target, scalar) in gamma {
                if target.0 != d - 1 || matched.contains(&target) || scalar.is_zero() {
                    continue;
                }
                let monomial = cx.mdeg(source).div(cx.mdeg(target));
                entries.push((target, Coefficient::new(scalar, monomial)));
            }
            entries.sort_by_key(|(k, _)| *k);
            for (target, coeff) in entries {
                out.add_entry(source, target, coeff);
            }
        }
    }
    Ok(out)
}

fn topological_order(adj: &BTreeMap<CellKey, Vec<(CellKey, BigInt)>>) -> Vec<CellKey> {
    let mut nodes: BTreeSet<CellKey> = BTreeSet::new();
    for (from, tos) in adj {
        nodes.insert(*from);
        for (to, _) in tos {
            nodes.insert(*to);
        }
    }
    let mut indeg: BTreeMap<CellKey, usize> = nodes.iter().map(|k| (*k, 0)).collect();
    for tos in adj.values() {
        for (to, _) in tos {
            *indeg.get_mut(to).unwrap() += 1;
        }
    }
    let mut queue: std::collections::BinaryHeap<std::cmp::Reverse<CellKey>> = indeg
        .iter()
        .filter(|(_, &v)| v == 0)
        .map(|(k, _)| std::cmp::Reverse(*k))
        .collect();
    let mut order = Vec::with_capacity(nodes.len());
    while let Some(std::cmp::Reverse(v)) = queue.pop() {
        order.push(v);
        if let Some(tos) = adj.get(&v) {
            for (to, _) in tos {
                let e = indeg.get_mut(to).unwrap();
                *e -= 1;
                if *e == 0 {
                    queue.push(std::cmp::Reverse(*to));
                }
            }
        }
    }
    assert_eq!(order.len(), nodes.len(), "layer graph must be acyclic here");
    order
}

/// Sum of weighted path scalars from `source` to every reachable node, by
/// a forward sweep in topological order.
fn path_sums(
    adj: &BTreeMap<CellKey, Vec<(CellKey, BigInt)>>,
    order: &[CellKey],
    position: &BTreeMap<CellKey, usize>,
    source: CellKey,
) -> BTreeMap<CellKey, BigInt> {
    let mut sums: BTreeMap<CellKey, BigInt> = BTreeMap::new();
    sums.insert(source, BigInt::one());
    let start = match position.get(&source) {
        Some(&p) => p,
        None => return BTreeMap::new(),
    };
    for key in &order[start..] {
        let Some(value) = sums.get(key).cloned() else {
            continue;
        };
        if value.is_zero() {
            continue;
        }
        if let Some(tos) = adj.get(key) {
            for (to, w) in tos {
                *sums.entry(*to).or_insert_with(BigInt::zero) += &value * w;
            }
        }
    }
    sums.remove(&source);
    sums
}

/// Exact homology ranks of a complex over the field, per homological
/// degree and multidegree. All coefficients must be scalars (monomial 1).
pub fn complex_homology<F: FieldCtx>(
    cx: &BasedComplex,
    field: &F,
) -> Result<BTreeMap<(usize, Monomial), usize>, EngineError> {
    for (from, entries) in &cx.diff {
        for (to, coeff) in entries {
            if !coeff.monomial.is_one() {
                return Err(EngineError::NonScalarCoefficient(*from, *to));
            }
        }
    }
    // group cells per (degree, multidegree)
    let mut slices: BTreeMap<(usize, Monomial), Vec<u64>> = BTreeMap::new();
    for (d, cells) in &cx.cells {
        for (label, mdeg) in cells {
            slices.entry((*d, mdeg.clone())).or_default().push(*label);
        }
    }
    // rank of the differential leaving degree d within multidegree alpha
    let rank_at = |d: usize, alpha: &Monomial| -> usize {
        let cols = match slices.get(&(d, alpha.clone())) {
            Some(v) => v,
            None => return 0,
        };
        let rows = match slices.get(&(d.wrapping_sub(1), alpha.clone())) {
            Some(v) if d > 0 => v,
            _ => return 0,
        };
        let row_index: BTreeMap<u64, usize> =
            rows.iter().enumerate().map(|(i, l)| (*l, i)).collect();
        let mut mat = Mat::zeros(field, rows.len(), cols.len());
        for (c, label) in cols.iter().enumerate() {
            for (to, coeff) in cx.entries((d, *label)) {
                if let Some(&r) = row_index.get(&to.1) {
                    if to.0 == d - 1 && cx.mdeg(*to) == alpha {
                        mat.set(r, c, field.embed_bigint(&coeff.scalar));
                    }
                }
            }
        }
        mat.rank(field)
    };
    let mut out = BTreeMap::new();
    for ((d, alpha), labels) in &slices {
        let rank_out = rank_at(*d, alpha);
        let rank_in = rank_at(*d + 1, alpha);
        let dim = labels.len() - rank_out - rank_in;
        if dim > 0 {
            out.insert((*d, alpha.clone()), dim);
        }
    }
    Ok(out)
}
