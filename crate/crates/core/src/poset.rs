//! Naturally labeled posets, their order-complex ideals, the recursion
//! polynomials `w_i`, path-count coefficients, and the word languages
//! that count the quadratic quotient's resolution basis.

use crate::ideal::{minimalize_generators, MonomialIdeal};
use crate::monomial::Monomial;
use crate::series::MGPoly;
use crate::taylor::{lex_rank, nbc_sets, sting_chain_sets};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A strict partial order on `{0..p}` compatible with the natural order:
/// `i` precedes `j` only when `i < j`. Stored transitively closed.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poset {
    p: usize,
    prec: Vec<Vec<bool>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PosetError {
    Empty,
    BadRelation { from: usize, to: usize },
    OutOfRange { index: usize },
}

impl fmt::Display for PosetError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PosetError::Empty => write!(f, "poset must have at least one element"),
            PosetError::BadRelation { from, to } => write!(
                f,
                "relation {} < {} violates the labeling convention (need i < j)",
                from, to
            ),
            PosetError::OutOfRange { index } => write!(f, "element {} out of range", index),
        }
    }
}

impl std::error::Error for PosetError {}

impl Poset {
    /// Build from relations given as 1-based pairs `(i, j)` meaning
    /// `i` precedes `j`; the transitive closure is taken.
    pub fn from_relations(p: usize, relations: &[(usize, usize)]) -> Result<Poset, PosetError> {
        if p == 0 {
            return Err(PosetError::Empty);
        }
        let mut prec = vec![vec![false; p]; p];
        for &(i, j) in relations {
            if i == 0 || j == 0 || i > p || j > p {
                return Err(PosetError::OutOfRange { index: i.max(j) });
            }
            if i >= j {
                return Err(PosetError::BadRelation { from: i, to: j });
            }
            prec[i - 1][j - 1] = true;
        }
        // transitive closure; relations only point upward so one pass per
        // intermediate vertex suffices
        for k in 0..p {
            for i in 0..p {
                if prec[i][k] {
                    for j in 0..p {
                        if prec[k][j] {
                            prec[i][j] = true;
                        }
                    }
                }
            }
        }
        Ok(Poset { p, prec })
    }

    pub fn antichain(p: usize) -> Poset {
        Poset::from_relations(p, &[]).unwrap()
    }

    pub fn chain(p: usize) -> Poset {
        let rel: Vec<(usize, usize)> = (1..p).map(|i| (i, i + 1)).collect();
        Poset::from_relations(p, &rel).unwrap()
    }

    pub fn len(&self) -> usize {
        self.p
    }

    pub fn is_empty(&self) -> bool {
        self.p == 0
    }

    /// 0-based strict precedence.
    pub fn precedes(&self, i: usize, j: usize) -> bool {
        self.prec[i][j]
    }

    /// Incomparable pairs `(i, j)` with `i < j`, 0-based.
    pub fn incomparable_pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.p {
            for j in i + 1..self.p {
                if !self.prec[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The ideal generated by `x_i x_j` over the incomparable pairs.
    pub fn order_complex_ideal(&self) -> MonomialIdeal {
        let gens: Vec<Monomial> = self
            .incomparable_pairs()
            .iter()
            .map(|&(i, j)| {
                let mut e = vec![0u32; self.p];
                e[i] = 1;
                e[j] = 1;
                Monomial::from_exponents(e)
            })
            .collect();
        minimalize_generators(gens, self.p).expect("quadratic generators are always valid")
    }
}

/// Parse the poset text format: a `p: <count>` header, then one relation
/// `i < j` per line; `#` starts a comment.
pub fn parse_poset(text: &str) -> Result<Poset, crate::ideal::ParseError> {
    use crate::ideal::ParseError;
    let err = |line: usize, msg: &str| ParseError {
        line,
        message: msg.to_string(),
    };
    let mut p: Option<usize> = None;
    let mut relations = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(pos) => &line[..pos],
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("p:") {
            if p.is_some() {
                return Err(err(lineno + 1, "duplicate p header"));
            }
            p = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| err(lineno + 1, "invalid element count"))?,
            );
            continue;
        }
        if p.is_none() {
            return Err(err(lineno + 1, "missing `p: <count>` header"));
        }
        let parts: Vec<&str> = line.split('<').map(|s| s.trim()).collect();
        if parts.len() != 2 {
            return Err(err(lineno + 1, "expected a relation `i < j`"));
        }
        let i: usize = parts[0]
            .parse()
            .map_err(|_| err(lineno + 1, "invalid element"))?;
        let j: usize = parts[1]
            .parse()
            .map_err(|_| err(lineno + 1, "invalid element"))?;
        relations.push((i, j));
    }
    let p = p.ok_or_else(|| err(0, "missing `p: <count>` header"))?;
    Poset::from_relations(p, &relations).map_err(|e| err(0, &e.to_string()))
}

/// The recursion polynomials: `w_n = 0` and, descending,
/// `w_i = t x_i sum_{j > i incomparable} (w_j + t x_j - t x_j sum_{r > j}
/// w_r) prod_{r=i+1}^{j-1} (1 + t x_r)`.
pub fn w_polynomials(poset: &Poset) -> Vec<MGPoly> {
    let p = poset.len();
    let mut w: Vec<MGPoly> = vec![MGPoly::zero(); p];
    for i in (0..p).rev() {
        let mut acc = MGPoly::zero();
        for j in i + 1..p {
            if poset.precedes(i, j) {
                continue;
            }
            let mut tail = MGPoly::zero();
            for r in j + 1..p {
                tail = tail.add(&w[r]);
            }
            let mut txj = MGPoly::zero();
            txj.add_term(unit_vec(p, j), 1, 0, BigInt::from(1));
            // w_j + t x_j - t x_j * tail
            let inner = w[j].add(&txj).sub(&txj.mul(&tail));
            let mut prod = MGPoly::one(p);
            for r in i + 1..j {
                let mut f = MGPoly::one(p);
                f.add_term(unit_vec(p, r), 1, 0, BigInt::from(1));
                prod = prod.mul(&f);
            }
            acc = acc.add(&inner.mul(&prod));
        }
        let mut txi = MGPoly::zero();
        txi.add_term(unit_vec(p, i), 1, 0, BigInt::from(1));
        w[i] = txi.mul(&acc);
    }
    w
}

fn unit_vec(p: usize, i: usize) -> Vec<u32> {
    let mut e = vec![0u32; p];
    e[i] = 1;
    e
}

/// Number of paths from the first to the last vertex of the strictly
/// increasing sequence in the incomparability digraph restricted to the
/// sequence; paths need not pass through every vertex.
pub fn path_count(poset: &Poset, seq: &[usize]) -> i64 {
    assert!(seq.windows(2).all(|w| w[0] < w[1]), "sequence must increase");
    let k = seq.len();
    if k < 2 {
        return if k == 1 { 1 } else { 0 };
    }
    // d[v] = number of paths from seq[0] to seq[v]
    let mut d = vec![0i64; k];
    d[0] = 1;
    for v in 1..k {
        for u in 0..v {
            if !poset.precedes(seq[u], seq[v]) {
                d[v] += d[u];
            }
        }
    }
    d[k - 1]
}

/// The alternating coefficient: sum over splittings of the sequence into
/// consecutive blocks of length at least two of `(-1)^{#blocks}` times
/// the product of the blocks' path counts.
pub fn path_coefficients(poset: &Poset, seq: &[usize]) -> (i64, i64) {
    assert!(
        seq.len() >= 2 && seq.windows(2).all(|w| w[0] < w[1]),
        "need a strictly increasing sequence of length >= 2"
    );
    let d = path_count(poset, seq);
    let mut memo: BTreeMap<usize, i64> = BTreeMap::new();
    let c = c_from(poset, seq, 0, &mut memo);
    (d, c)
}

/// c over the suffix starting at `from`:
/// `c(s) = -d(s) - sum_{2 <= a <= len-2} d(first a) c(rest)`.
fn c_from(poset: &Poset, seq: &[usize], from: usize, memo: &mut BTreeMap<usize, i64>) -> i64 {
    if let Some(&v) = memo.get(&from) {
        return v;
    }
    let len = seq.len() - from;
    let mut total = -path_count(poset, &seq[from..]);
    for a in 2..=len.saturating_sub(2) {
        let head = path_count(poset, &seq[from..from + a]);
        total -= head * c_from(poset, seq, from + a, memo);
    }
    memo.insert(from, total);
    total
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WMethod {
    Recursion,
    StingChains,
    Nbc,
    PathCoefficients,
}

impl WMethod {
    pub const ALL: [WMethod; 4] = [
        WMethod::Recursion,
        WMethod::StingChains,
        WMethod::Nbc,
        WMethod::PathCoefficients,
    ];
}

impl fmt::Display for WMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WMethod::Recursion => write!(f, "recursion"),
            WMethod::StingChains => write!(f, "sting-chains"),
            WMethod::Nbc => write!(f, "nbc"),
            WMethod::PathCoefficients => write!(f, "path-coeffs"),
        }
    }
}

/// The denominator polynomial `W` of the order complex, by any of the
/// four routes; all must agree.
pub fn w_poly(poset: &Poset, method: WMethod) -> MGPoly {
    let p = poset.len();
    match method {
        WMethod::Recursion => {
            let mut w = MGPoly::one(p);
            for wi in w_polynomials(poset) {
                w = w.sub(&wi);
            }
            w
        }
        WMethod::StingChains => {
            let ideal = poset.order_complex_ideal();
            let mut w = MGPoly::one(p);
            for subset in sting_chain_sets(poset) {
                let sign = if subset.cl % 2 == 0 { 1 } else { -1 };
                w.add_term(
                    subset.lcm.0.clone(),
                    (subset.cl + subset.cardinality()) as u32,
                    0,
                    BigInt::from(sign),
                );
            }
            let _ = ideal;
            w
        }
        WMethod::Nbc => {
            let ideal = poset.order_complex_ideal();
            let rank = lex_rank(&ideal);
            let mut w = MGPoly::zero();
            for mask in nbc_sets(&ideal, &rank).expect("order-complex ideals are quadratic") {
                let s = ideal.subset(mask);
                let sign = if s.cl.is_multiple_of(2) { 1 } else { -1 };
                w.add_term(
                    s.lcm.0.clone(),
                    (s.cl + s.cardinality()) as u32,
                    0,
                    BigInt::from(sign),
                );
            }
            w
        }
        WMethod::PathCoefficients => {
            let mut w = MGPoly::one(p);
            let mut subsets: Vec<Vec<usize>> = vec![vec![]];
            for v in 0..p {
                let mut extended = Vec::new();
                for s in &subsets {
                    let mut t = s.clone();
                    t.push(v);
                    extended.push(t);
                }
                subsets.extend(extended);
            }
            for seq in subsets.iter().filter(|s| s.len() >= 2) {
                let (_, c) = path_coefficients(poset, seq);
                if c == 0 {
                    continue;
                }
                let mut alpha = vec![0u32; p];
                for &v in seq {
                    alpha[v] = 1;
                }
                w.add_term(alpha, seq.len() as u32, 0, BigInt::from(c));
            }
            w
        }
    }
}

/// Enumerate all posets on `p` naturally labeled elements (transitively
/// closed relations inside `i < j`). Exponential in `p(p-1)/2`; intended
/// for `p <= 5`.
pub fn all_posets(p: usize) -> Vec<Poset> {
    let pairs: Vec<(usize, usize)> = {
        let mut v = Vec::new();
        for i in 1..=p {
            for j in i + 1..=p {
                v.push((i, j));
            }
        }
        v
    };
    let mut out = Vec::new();
    for bits in 0..(1u64 << pairs.len()) {
        let rel: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .map(|(_, &pr)| pr)
            .collect();
        let poset = Poset::from_relations(p, &rel).unwrap();
        // keep only relations that were already transitively closed
        let closed = poset
            .incomparable_pairs()
            .len()
            == pairs.len() - rel.len();
        if closed {
            out.push(poset);
        }
    }
    out
}

/// A random naturally labeled poset: each upward pair is related with the
/// given probability, then closed transitively.
pub fn random_poset<R: rand::Rng>(p: usize, edge_prob: f64, rng: &mut R) -> Poset {
    let mut relations = Vec::new();
    for i in 1..=p {
        for j in i + 1..=p {
            if rng.gen_bool(edge_prob) {
                relations.push((i, j));
            }
        }
    }
    Poset::from_relations(p, &relations).unwrap()
}

/// Words over the variables starting at a fixed letter that spell out the
/// resolution basis of a quadratic squarefree quotient.
#[derive(Clone, Debug)]
pub struct WordLanguageSpec {
    pub ideal: MonomialIdeal,
    /// 0-based start variable
    pub start: usize,
    pub max_len: usize,
}

/// All words of the start-indexed language up to the length bound. A word
/// `x_j x_{i_2} .. x_{i_r}` qualifies when every letter after the first
/// exceeds `j` and every position `l >= 2` has an earlier position `l'`
/// with `x_{i_{l'}} x_{i_l}` in the ideal and all letters strictly
/// between larger than `x_{i_l}`.
pub fn words_lj(ideal: &MonomialIdeal, start: usize, max_len: usize) -> Vec<Vec<usize>> {
    let n = ideal.n_vars();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<usize>> = vec![vec![start]];
    while let Some(word) = stack.pop() {
        if word.len() >= 2 {
            out.push(word.clone());
        }
        if word.len() == max_len {
            continue;
        }
        for letter in start + 1..n {
            if extension_allowed(ideal, &word, letter) {
                let mut next = word.clone();
                next.push(letter);
                stack.push(next);
            }
        }
    }
    out.sort();
    out
}

fn extension_allowed(ideal: &MonomialIdeal, word: &[usize], letter: usize) -> bool {
    let n = ideal.n_vars();
    for lp in 0..word.len() {
        let mut pair = vec![0u32; n];
        pair[word[lp]] += 1;
        pair[letter] += 1;
        if !ideal.contains(&Monomial::from_exponents(pair)) {
            continue;
        }
        if word[lp + 1..].iter().all(|&t| t > letter) {
            return true;
        }
    }
    false
}

fn word_multidegree(n: usize, word: &[usize]) -> Monomial {
    let mut e = vec![0u32; n];
    for &v in word {
        e[v] += 1;
    }
    Monomial::from_exponents(e)
}

/// Counts of one start-indexed language per (length, multidegree).
pub fn language_counts(spec: &WordLanguageSpec) -> BTreeMap<(usize, Monomial), u64> {
    let mut out = BTreeMap::new();
    for word in words_lj(&spec.ideal, spec.start, spec.max_len) {
        let key = (word.len(), word_multidegree(spec.ideal.n_vars(), &word));
        *out.entry(key).or_insert(0) += 1;
    }
    out
}

/// Counts of the composed language: concatenations of start-indexed words
/// with weakly decreasing start letters (blocks from the same start may
/// repeat, matching the geometric factors of the word-counting product).
pub fn full_language_counts(
    ideal: &MonomialIdeal,
    max_len: usize,
) -> BTreeMap<(usize, Monomial), u64> {
    let n = ideal.n_vars();
    let per_start: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|j| words_lj(ideal, j, max_len))
        .collect();
    let mut out = BTreeMap::new();
    // descending DFS over start letters; the same start may repeat
    fn rec(
        per_start: &[Vec<Vec<usize>>],
        n: usize,
        start_at_most: usize,
        current: Vec<usize>,
        max_len: usize,
        out: &mut BTreeMap<(usize, Monomial), u64>,
    ) {
        if !current.is_empty() {
            let key = (current.len(), word_multidegree(n, &current));
            *out.entry(key).or_insert(0) += 1;
        }
        for j in (0..=start_at_most.min(n - 1)).rev() {
            for w in &per_start[j] {
                if current.len() + w.len() <= max_len {
                    let mut next = current.clone();
                    next.extend_from_slice(w);
                    rec(per_start, n, j, next, max_len, out);
                }
            }
        }
    }
    rec(&per_start, n, n - 1, Vec::new(), max_len, &mut out);
    out
}

/// Count monomials of the partially commutative ring on the connected
/// broken-circuit-free sets per (total letter degree, multidegree).
/// Letters of coprime multidegree commute; a monomial is a commutation
/// class of letter sequences, counted via explicit closure under adjacent
/// swaps of commuting letters.
pub fn r_monomial_counts(
    ideal: &MonomialIdeal,
    max_len: usize,
) -> Result<BTreeMap<(usize, Monomial), u64>, crate::taylor::NbcError> {
    let rank = lex_rank(ideal);
    let letters: Vec<(u64, Monomial, usize)> = nbc_sets(ideal, &rank)?
        .into_iter()
        .filter(|&m| m != 0 && crate::ideal::component_classes(ideal, m).0 == 1)
        .map(|m| {
            let lcm = ideal.lcm_of(m);
            let degree = m.count_ones() as usize + 1;
            (m, lcm, degree)
        })
        .collect();
    let coprime: Vec<Vec<bool>> = letters
        .iter()
        .map(|(_, a, _)| letters.iter().map(|(_, b, _)| a.is_coprime(b)).collect())
        .collect();
    // enumerate all letter sequences within the degree bound and keep one
    // canonical representative per commutation class
    let mut canon: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![(Vec::new(), 0)];
    while let Some((seq, degree)) = stack.pop() {
        if !seq.is_empty() {
            canon.insert(canonical_word(&seq, &coprime));
        }
        for (idx, (_, _, d)) in letters.iter().enumerate() {
            if degree + d <= max_len {
                let mut next = seq.clone();
                next.push(idx);
                stack.push((next, degree + d));
            }
        }
    }
    let mut out = BTreeMap::new();
    let n = ideal.n_vars();
    for seq in canon {
        let mut alpha = Monomial::one(n);
        let mut degree = 0usize;
        for &idx in &seq {
            alpha = alpha.mul(&letters[idx].1);
            degree += letters[idx].2;
        }
        *out.entry((degree, alpha)).or_insert(0) += 1;
    }
    Ok(out)
}

/// Lexicographically smallest word reachable by swapping adjacent
/// commuting letters; a full closure walk, exact for any commutation
/// pattern.
fn canonical_word(seq: &[usize], coprime: &[Vec<bool>]) -> Vec<usize> {
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut queue: Vec<Vec<usize>> = vec![seq.to_vec()];
    seen.insert(seq.to_vec());
    while let Some(word) = queue.pop() {
        for pos in 0..word.len().saturating_sub(1) {
            let (a, b) = (word[pos], word[pos + 1]);
            if a != b && coprime[a][b] {
                let mut sw = word.clone();
                sw.swap(pos, pos + 1);
                if seen.insert(sw.clone()) {
                    queue.push(sw);
                }
            }
        }
    }
    seen.into_iter().next().unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn order_complex_ideals() {
        assert!(Poset::chain(3).order_complex_ideal().is_empty());
        let anti = Poset::antichain(3).order_complex_ideal();
        assert_eq!(anti.n_gens(), 3);
        // V poset 1<2, 1<3: only incomparable pair is (2,3)
        let v = Poset::from_relations(3, &[(1, 2), (1, 3)]).unwrap();
        let ideal = v.order_complex_ideal();
        assert_eq!(ideal.gens(), &[mono(&[0, 1, 1])]);
    }

    #[test]
    fn transitive_closure_applies() {
        let p = Poset::from_relations(3, &[(1, 2), (2, 3)]).unwrap();
        assert!(p.precedes(0, 2));
        assert!(Poset::from_relations(3, &[(2, 1)]).is_err());
    }

    #[test]
    fn w_polynomials_small_cases() {
        // chain: all w_i = 0
        let w = w_polynomials(&Poset::chain(3));
        assert!(w.iter().all(|wi| wi.is_zero()));
        // antichain(2): w_1 = t^2 x1 x2, w_2 = 0
        let w = w_polynomials(&Poset::antichain(2));
        let mut expected = MGPoly::zero();
        expected.add_term(vec![1, 1], 2, 0, BigInt::from(1));
        assert_eq!(w[0], expected);
        assert!(w[1].is_zero());
    }

    #[test]
    fn w_agreement_antichain3() {
        let poset = Poset::antichain(3);
        let mut expected = MGPoly::one(3);
        expected.add_term(vec![1, 1, 0], 2, 0, BigInt::from(-1));
        expected.add_term(vec![1, 0, 1], 2, 0, BigInt::from(-1));
        expected.add_term(vec![0, 1, 1], 2, 0, BigInt::from(-1));
        expected.add_term(vec![1, 1, 1], 3, 0, BigInt::from(-2));
        for method in WMethod::ALL {
            assert_eq!(w_poly(&poset, method), expected, "method {}", method);
        }
    }

    #[test]
    fn w_agreement_chain_is_one() {
        for method in WMethod::ALL {
            assert_eq!(w_poly(&Poset::chain(4), method), MGPoly::one(4));
        }
    }

    #[test]
    fn path_counts_on_antichain() {
        let poset = Poset::antichain(3);
        assert_eq!(path_count(&poset, &[0, 1]), 1);
        // direct edge and the route through the middle vertex
        assert_eq!(path_count(&poset, &[0, 1, 2]), 2);
        let (d, c) = path_coefficients(&poset, &[0, 1, 2]);
        assert_eq!((d, c), (2, -2));
        // length two: c = -d
        let (d, c) = path_coefficients(&poset, &[0, 2]);
        assert_eq!(c, -d);
    }

    #[test]
    fn sting_chain_counts_match_paths() {
        // bijection: sting-chains with squarefree lcm x_{i1}..x_{iv}
        // correspond to paths in the restricted digraph
        for poset in [
            Poset::antichain(3),
            Poset::antichain(4),
            Poset::from_relations(4, &[(1, 2), (3, 4)]).unwrap(),
            Poset::from_relations(5, &[(1, 3), (2, 4), (1, 5)]).unwrap(),
        ] {
            let ideal = poset.order_complex_ideal();
            let chains = crate::taylor::sting_chains(&poset);
            let mut by_lcm: BTreeMap<Monomial, u64> = BTreeMap::new();
            for &mask in &chains {
                *by_lcm.entry(ideal.lcm_of(mask)).or_insert(0) += 1;
            }
            // every increasing sequence of length >= 2
            let p = poset.len();
            let mut subsets: Vec<Vec<usize>> = vec![vec![]];
            for v in 0..p {
                let ext: Vec<Vec<usize>> = subsets
                    .iter()
                    .map(|s| {
                        let mut t = s.clone();
                        t.push(v);
                        t
                    })
                    .collect();
                subsets.extend(ext);
            }
            for seq in subsets.iter().filter(|s| s.len() >= 2) {
                let mut alpha = vec![0u32; p];
                for &v in seq {
                    alpha[v] = 1;
                }
                let lcm = Monomial::from_exponents(alpha);
                let d = path_count(&poset, seq) as u64;
                assert_eq!(
                    by_lcm.get(&lcm).copied().unwrap_or(0),
                    d,
                    "poset {:?} seq {:?}",
                    poset,
                    seq
                );
            }
        }
    }

    #[test]
    fn sting_chain_enumeration_matches_literal_check() {
        for poset in [
            Poset::antichain(3),
            Poset::antichain(4),
            Poset::from_relations(4, &[(1, 2)]).unwrap(),
            Poset::from_relations(5, &[(1, 2), (2, 5), (3, 4)]).unwrap(),
        ] {
            let ideal = poset.order_complex_ideal();
            let enumerated: BTreeSet<u64> =
                crate::taylor::sting_chains(&poset).into_iter().collect();
            for mask in 1..(1u64 << ideal.n_gens()) {
                assert_eq!(
                    enumerated.contains(&mask),
                    crate::taylor::is_sting_chain(&poset, &ideal, mask),
                    "poset {:?} mask {:#b}",
                    poset,
                    mask
                );
            }
        }
    }

    #[test]
    fn chain_poset_has_no_sting_chains() {
        assert!(sting_chain_sets(&Poset::chain(3)).is_empty());
        assert!(crate::taylor::sting_chains(&Poset::chain(4)).is_empty());
    }

    #[test]
    fn antichain3_sting_chain_sets() {
        // singles: three singletons plus {12,23} and {12,13}; no separated
        // unions exist on three vertices
        let sets = sting_chain_sets(&Poset::antichain(3));
        assert_eq!(sets.len(), 5);
        assert!(sets.iter().all(|s| s.cl == 1));
        assert_eq!(sets.iter().filter(|s| s.cardinality() == 2).count(), 2);
    }

    #[test]
    fn all_posets_counts() {
        assert_eq!(all_posets(1).len(), 1);
        assert_eq!(all_posets(2).len(), 2);
        assert_eq!(all_posets(3).len(), 7);
        assert_eq!(all_posets(4).len(), 40);
    }

    #[test]
    fn language_triangle_start_one() {
        let ideal = Poset::antichain(3).order_complex_ideal();
        let words = words_lj(&ideal, 0, 3);
        let expected: Vec<Vec<usize>> =
            vec![vec![0, 1], vec![0, 1, 2], vec![0, 2], vec![0, 2, 1]];
        assert_eq!(words, expected);
    }

    #[test]
    fn language_single_generator() {
        let ideal = crate::ideal::minimalize_generators(vec![mono(&[1, 1])], 2).unwrap();
        let words = words_lj(&ideal, 0, 4);
        assert_eq!(words, vec![vec![0, 1]]);
    }

    #[test]
    fn full_language_matches_r_monomials_triangle() {
        let ideal = Poset::antichain(3).order_complex_ideal();
        let lang = full_language_counts(&ideal, 6);
        let ring = r_monomial_counts(&ideal, 6).unwrap();
        assert_eq!(lang, ring);
    }
}
