//! The Taylor complex of a monomial ideal and the matching families that
//! minimize it: graded standard matchings built sequence by sequence, the
//! broken-circuit matching for quadratic squarefree ideals, the gcd
//! matching attached to a strong-gcd order, and sting-chain data for
//! order-complex ideals.

use crate::complex::{
    morse_complex, validate_matching, BasedComplex, CellKey, Coefficient, EngineError, Matching,
};
use crate::ideal::{IdealError, MonomialIdeal, DEFAULT_GEN_CAP};
use crate::monomial::Monomial;
use crate::poset::Poset;
use crate::series::MGPoly;
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Build the Taylor complex. Cells are the nonempty generator subsets in
/// homological degree `|I| - 1`; with `augmented` the empty subset enters
/// in degree 0 and every subset shifts to degree `|I|`, resolving the
/// quotient rather than the ideal.
pub fn build_taylor(ideal: &MonomialIdeal, augmented: bool) -> Result<BasedComplex, IdealError> {
    let l = ideal.n_gens();
    if l > DEFAULT_GEN_CAP {
        return Err(IdealError::TooManyGenerators {
            count: l,
            cap: DEFAULT_GEN_CAP,
        });
    }
    let shift = if augmented { 0 } else { 1 };
    let mut cx = BasedComplex::new(ideal.n_vars());
    if augmented {
        cx.add_cell(0, 0, Monomial::one(ideal.n_vars()));
    }
    for mask in 1..(1u64 << l) {
        let degree = mask.count_ones() as usize - shift;
        cx.add_cell(degree, mask, ideal.lcm_of(mask));
    }
    for mask in 1..(1u64 << l) {
        let card = mask.count_ones() as usize;
        if card == 1 && !augmented {
            continue;
        }
        let degree = card - shift;
        let lcm = ideal.lcm_of(mask);
        let members: Vec<usize> = (0..l).filter(|&i| mask >> i & 1 == 1).collect();
        for (pos, &member) in members.iter().enumerate() {
            let sub = mask & !(1u64 << member);
            let sub_lcm = ideal.lcm_of(sub);
            let sign = if (pos + 1) % 2 == 0 { 1 } else { -1 };
            cx.add_entry(
                (degree, mask),
                (degree - 1, sub),
                Coefficient::new(BigInt::from(sign), lcm.div(&sub_lcm)),
            );
        }
    }
    Ok(cx)
}

/// Tie-break policy for greedy standard-matching construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Policy {
    /// smallest lcm (degree, then lex), then smallest lower mask
    LexFirst,
    /// smallest lower mask, then smallest upper mask
    MaskFirst,
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::LexFirst => write!(f, "lexfirst"),
            Policy::MaskFirst => write!(f, "maskfirst"),
        }
    }
}

/// One closure batch of a standard matching: a chosen pair together with
/// all of its coprime translates, applied to the complex current at the
/// time.
#[derive(Clone, Debug)]
pub struct Stage {
    pub seq: usize,
    /// (upper mask, lower mask) pairs
    pub edges: Vec<(u64, u64)>,
}

#[derive(Clone, Debug)]
pub struct StandardMatching {
    pub policy: Policy,
    /// the number of generators of the ideal the matching was built for
    pub n_gens: usize,
    pub stages: Vec<Stage>,
    pub final_complex: BasedComplex,
    pub minimal: bool,
    pub max_seq: usize,
    /// translates skipped because a cell was gone or a coefficient was not
    /// a unit; nonempty values flag departures from the expected closure
    pub anomalies: Vec<String>,
}

impl StandardMatching {
    pub fn matched_masks(&self) -> BTreeSet<u64> {
        self.stages
            .iter()
            .flat_map(|s| s.edges.iter().flat_map(|(u, l)| [*u, *l]))
            .collect()
    }

    /// Masks matched by sequences `< i` (by edge tag, not construction
    /// order).
    pub fn matched_before_seq(&self, i: usize) -> BTreeSet<u64> {
        self.stages
            .iter()
            .filter(|s| s.seq < i)
            .flat_map(|s| s.edges.iter().flat_map(|(u, l)| [*u, *l]))
            .collect()
    }

    pub fn final_survivors(&self) -> Vec<u64> {
        self.final_complex.cell_keys().iter().map(|(_, l)| *l).collect()
    }

    /// Nonempty masks surviving the first sequence.
    pub fn m1_survivors(&self) -> Vec<u64> {
        self.survivors_before_seq(2)
    }

    /// Nonempty masks not matched by any sequence `< i`.
    pub fn survivors_before_seq(&self, i: usize) -> Vec<u64> {
        let matched = self.matched_before_seq(i);
        (1..(1u64 << self.n_gens))
            .filter(|m| !matched.contains(m))
            .collect()
    }

    /// The whole matching as edges on the Taylor complex's mask labels,
    /// with the sequence index as metadata. Only the per-stage pieces are
    /// matchings on actual complexes; this is bookkeeping for dumps and
    /// survivor queries.
    pub fn as_matching(&self) -> Matching {
        let mut m = Matching::new();
        for stage in &self.stages {
            for (u, l) in &stage.edges {
                m.add(
                    (u.count_ones() as usize - 1, *u),
                    (l.count_ones() as usize - 1, *l),
                    stage.seq,
                );
            }
        }
        m
    }

    /// The first-sequence stages as one matching on the Taylor complex.
    /// These stages pair cells of equal multidegree, so the matching is
    /// graded and usable for survivor-mode numerators.
    pub fn m1_matching(&self) -> Matching {
        let mut m = Matching::new();
        for stage in self.stages.iter().filter(|s| s.seq == 1) {
            for (u, l) in &stage.edges {
                m.add(
                    (u.count_ones() as usize - 1, *u),
                    (l.count_ones() as usize - 1, *l),
                    1,
                );
            }
        }
        m
    }
}

/// `sum_I (-1)^{cl(I)} m_I t^{cl(I)+|I|}` over the given masks plus the
/// constant 1 for the empty subset (when absent from the list).
pub fn survivor_sum(ideal: &MonomialIdeal, masks: &[u64]) -> MGPoly {
    let mut p = MGPoly::zero();
    for &mask in masks {
        let s = ideal.subset(mask);
        let sign = if s.cl.is_multiple_of(2) { 1 } else { -1 };
        p.add_term(
            s.lcm.0.clone(),
            (s.cl + s.cardinality()) as u32,
            0,
            BigInt::from(sign),
        );
    }
    if !masks.contains(&0) {
        p = p.add(&MGPoly::one(ideal.n_vars()));
    }
    p
}

#[derive(Debug, Clone)]
pub enum MatchingFailure {
    Ideal(IdealError),
    Engine(EngineError),
    IterationCap { iterations: usize, dump: String },
    NonMinimal(Box<NonMinimalReport>),
}

impl fmt::Display for MatchingFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatchingFailure::Ideal(e) => write!(f, "{}", e),
            MatchingFailure::Engine(e) => write!(f, "{}", e),
            MatchingFailure::IterationCap { iterations, .. } => {
                write!(f, "matching construction exceeded {} iterations", iterations)
            }
            MatchingFailure::NonMinimal(r) => write!(
                f,
                "greedy construction terminated non-minimal under {} policies (\
                 {} equal-multidegree entries remain)",
                r.attempts.len(),
                r.remaining_pairs
            ),
        }
    }
}

impl std::error::Error for MatchingFailure {}

/// Emitted when no policy reaches a minimal complex; carries the terminal
/// state for inspection instead of asserting any series identity.
#[derive(Debug, Clone)]
pub struct NonMinimalReport {
    pub attempts: Vec<Policy>,
    pub remaining_pairs: usize,
    pub dump: String,
}

/// Equal-multidegree differential entries of a complex (candidate edges
/// for further matching).
fn graded_pairs(cx: &BasedComplex) -> Vec<(CellKey, CellKey)> {
    let mut out = Vec::new();
    for (from, entries) in &cx.diff {
        for (to, _) in entries {
            if cx.mdeg(*from) == cx.mdeg(*to) {
                out.push((*from, *to));
            }
        }
    }
    out
}

/// Construct a standard matching greedily. Each round takes the graded
/// pairs of the current complex, finds the smallest component count `i`
/// admitting a pair with `cl(upper) = 1`, `cl(lower) = i`, and no proper
/// subset of the lower cell acting as the upper of a pair with the same
/// pattern, matches the chosen pair together with its coprime translates
/// (tagged as sequence `i`), and passes to the Morse complex. Rounds
/// repeat until no graded pair remains (the complex is then minimal) or
/// no pair fits any pattern.
pub fn standard_matching(
    ideal: &MonomialIdeal,
    policy: Policy,
) -> Result<StandardMatching, MatchingFailure> {
    let taylor = build_taylor(ideal, false).map_err(MatchingFailure::Ideal)?;
    let l = ideal.n_gens();
    let mut current = taylor;
    let mut stages: Vec<Stage> = Vec::new();
    let mut anomalies: Vec<String> = Vec::new();
    let mut max_seq = 0usize;
    let cap = (1usize << l.min(20)) * 4 + 64;
    let mut iterations = 0usize;
    let cl_of = |mask: u64| crate::ideal::component_classes(ideal, mask).0;
    loop {
        iterations += 1;
        if iterations > cap {
            return Err(MatchingFailure::IterationCap {
                iterations,
                dump: current.dump(),
            });
        }
        let pairs = graded_pairs(&current);
        if pairs.is_empty() {
            break;
        }
        let mut chosen: Option<(usize, CellKey, CellKey)> = None;
        for seq in 1..=l.max(1) {
            // subsets collapsing with the same pattern block a candidate
            let pattern_uppers: BTreeSet<u64> = pairs
                .iter()
                .filter(|(u, w)| cl_of(u.1) == 1 && cl_of(w.1) == seq)
                .map(|(u, _)| u.1)
                .collect();
            let mut candidates: Vec<(CellKey, CellKey)> = pairs
                .iter()
                .filter(|(u, w)| {
                    cl_of(u.1) == 1
                        && cl_of(w.1) == seq
                        && current
                            .entry(*u, *w)
                            .map(|c| c.is_unit())
                            .unwrap_or(false)
                        && no_proper_subset_matchable(&current, w.1, &pattern_uppers)
                })
                .copied()
                .collect();
            if candidates.is_empty() {
                continue;
            }
            candidates.sort_by(|a, b| match policy {
                Policy::LexFirst => {
                    let ma = current.mdeg(a.0);
                    let mb = current.mdeg(b.0);
                    ma.cmp_deglex(mb)
                        .then_with(|| a.1 .1.cmp(&b.1 .1))
                        .then_with(|| a.0 .1.cmp(&b.0 .1))
                }
                Policy::MaskFirst => a.1 .1.cmp(&b.1 .1).then_with(|| a.0 .1.cmp(&b.0 .1)),
            });
            chosen = Some((seq, candidates[0].0, candidates[0].1));
            break;
        }
        let Some((seq, upper, lower)) = chosen else {
            break;
        };
        max_seq = max_seq.max(seq);
        let batch = translate_closure(ideal, &current, upper, lower, seq, &mut anomalies);
        let report = validate_matching(&current, &batch).map_err(MatchingFailure::Engine)?;
        if !report.ok() {
            return Err(MatchingFailure::Engine(EngineError::InvalidMatching(
                Box::new(report),
            )));
        }
        current = morse_complex(&current, &batch).map_err(MatchingFailure::Engine)?;
        stages.push(Stage {
            seq,
            edges: batch.edges.iter().map(|e| (e.upper.1, e.lower.1)).collect(),
        });
    }
    let minimal = graded_pairs(&current).is_empty();
    Ok(StandardMatching {
        policy,
        n_gens: l,
        stages,
        final_complex: current,
        minimal,
        max_seq: max_seq.max(1),
        anomalies,
    })
}

/// Try the default policy, then the alternate; a minimal outcome wins,
/// otherwise a structured non-minimality report is returned.
pub fn standard_matching_auto(
    ideal: &MonomialIdeal,
) -> Result<StandardMatching, MatchingFailure> {
    let first = standard_matching(ideal, Policy::LexFirst)?;
    if first.minimal {
        return Ok(first);
    }
    let second = standard_matching(ideal, Policy::MaskFirst)?;
    if second.minimal {
        return Ok(second);
    }
    Err(MatchingFailure::NonMinimal(Box::new(NonMinimalReport {
        attempts: vec![Policy::LexFirst, Policy::MaskFirst],
        remaining_pairs: graded_pairs(&second.final_complex).len(),
        dump: second.final_complex.dump(),
    })))
}

fn no_proper_subset_matchable(
    cx: &BasedComplex,
    lower_mask: u64,
    matchable_uppers: &BTreeSet<u64>,
) -> bool {
    // iterate proper nonempty submasks
    let mut sub = (lower_mask.wrapping_sub(1)) & lower_mask;
    while sub != 0 {
        if matchable_uppers.contains(&sub) {
            let degree = sub.count_ones() as usize - 1;
            if cx.has_cell((degree, sub)) {
                return false;
            }
        }
        sub = (sub.wrapping_sub(1)) & lower_mask;
    }
    true
}

/// All edges `(upper|K, lower|K)` over coprime translate masks `K` whose
/// cells are present with unit coefficients in the current complex.
fn translate_closure(
    ideal: &MonomialIdeal,
    cx: &BasedComplex,
    upper: CellKey,
    lower: CellKey,
    seq: usize,
    anomalies: &mut Vec<String>,
) -> Matching {
    let l = ideal.n_gens();
    let upper_lcm = ideal.lcm_of(upper.1);
    let occupied = upper.1 | lower.1;
    let candidates: Vec<usize> = (0..l)
        .filter(|&g| occupied >> g & 1 == 0 && ideal.gens()[g].is_coprime(&upper_lcm))
        .collect();
    let mut batch = Matching::new();
    let mut used: BTreeSet<u64> = BTreeSet::new();
    for bits in 0..(1u64 << candidates.len()) {
        let mut k_mask = 0u64;
        for (pos, &g) in candidates.iter().enumerate() {
            if bits >> pos & 1 == 1 {
                k_mask |= 1 << g;
            }
        }
        let up_mask = upper.1 | k_mask;
        let low_mask = lower.1 | k_mask;
        let up_key = (up_mask.count_ones() as usize - 1, up_mask);
        let low_key = (low_mask.count_ones() as usize - 1, low_mask);
        if !cx.has_cell(up_key) || !cx.has_cell(low_key) {
            if k_mask != 0 {
                anomalies.push(format!(
                    "seq {}: translate K={:#b} of ({:#b} -> {:#b}) missing from complex",
                    seq, k_mask, upper.1, lower.1
                ));
            }
            continue;
        }
        if used.contains(&up_mask) || used.contains(&low_mask) {
            continue;
        }
        let unit = cx.entry(up_key, low_key).map(|c| c.is_unit()).unwrap_or(false);
        if !unit {
            anomalies.push(format!(
                "seq {}: translate K={:#b} of ({:#b} -> {:#b}) lacks a unit coefficient",
                seq, k_mask, upper.1, lower.1
            ));
            continue;
        }
        used.insert(up_mask);
        used.insert(low_mask);
        batch.add(up_key, low_key, seq);
    }
    batch
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NbcError {
    NotDegreeTwoSquarefree,
}

impl fmt::Display for NbcError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nbc machinery requires a squarefree ideal generated in degree two")
    }
}

impl std::error::Error for NbcError {}

fn edge_endpoints(g: &Monomial) -> (usize, usize) {
    let s = g.support();
    (s[0], s[1])
}

fn require_quadratic(ideal: &MonomialIdeal) -> Result<(), NbcError> {
    if ideal.is_squarefree() && ideal.is_equigenerated(2) {
        Ok(())
    } else {
        Err(NbcError::NotDegreeTwoSquarefree)
    }
}

/// Rank of each generator in the default monomial order (lexicographic
/// with `x1` heaviest); rank 0 is the smallest generator.
pub fn lex_rank(ideal: &MonomialIdeal) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..ideal.n_gens()).collect();
    idx.sort_by(|&a, &b| ideal.gens()[a].cmp_lex(&ideal.gens()[b]));
    let mut rank = vec![0usize; ideal.n_gens()];
    for (r, &g) in idx.iter().enumerate() {
        rank[g] = r;
    }
    rank
}

/// All simple cycles of the generator graph, as generator masks. Each
/// cycle is found once, anchored at its smallest vertex.
pub fn circuits(ideal: &MonomialIdeal) -> Result<Vec<u64>, NbcError> {
    require_quadratic(ideal)?;
    let n = ideal.n_vars();
    let mut edge_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (g, gen) in ideal.gens().iter().enumerate() {
        edge_of.insert(edge_endpoints(gen), g);
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in edge_of.keys() {
        adj[a].push(b);
        adj[b].push(a);
    }
    for list in adj.iter_mut() {
        list.sort();
    }
    let mut out: BTreeSet<u64> = BTreeSet::new();
    // DFS paths anchored at their minimal vertex, second vertex smaller
    // than the last to see each cycle once
    for start in 0..n {
        let mut path = vec![start];
        let mut visited = vec![false; n];
        visited[start] = true;
        dfs_cycles(start, start, &adj, &edge_of, &mut path, &mut visited, &mut out);
    }
    Ok(out.into_iter().collect())
}

fn dfs_cycles(
    start: usize,
    current: usize,
    adj: &[Vec<usize>],
    edge_of: &BTreeMap<(usize, usize), usize>,
    path: &mut Vec<usize>,
    visited: &mut Vec<bool>,
    out: &mut BTreeSet<u64>,
) {
    for &next in &adj[current] {
        if next == start && path.len() >= 3 && path[1] < *path.last().unwrap() {
            let mut mask = 0u64;
            for w in path.windows(2) {
                let key = (w[0].min(w[1]), w[0].max(w[1]));
                mask |= 1 << edge_of[&key];
            }
            let key = (start.min(current), start.max(current));
            mask |= 1 << edge_of[&key];
            out.insert(mask);
        }
        if next > start && !visited[next] {
            visited[next] = true;
            path.push(next);
            dfs_cycles(start, next, adj, edge_of, path, visited, out);
            path.pop();
            visited[next] = false;
        }
    }
}

/// Circuits with their maximal edge removed, under the given rank.
pub fn broken_circuits(ideal: &MonomialIdeal, rank: &[usize]) -> Result<Vec<u64>, NbcError> {
    let mut out = Vec::new();
    for z in circuits(ideal)? {
        let max_edge = (0..ideal.n_gens())
            .filter(|&g| z >> g & 1 == 1)
            .max_by_key(|&g| rank[g])
            .unwrap();
        out.push(z & !(1u64 << max_edge));
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Subsets whose edge graph contains no broken circuit, enumerated
/// directly by growing edge sets (never by scanning all subsets).
pub fn nbc_sets(ideal: &MonomialIdeal, rank: &[usize]) -> Result<Vec<u64>, NbcError> {
    let broken = broken_circuits(ideal, rank)?;
    let mut all: BTreeSet<u64> = BTreeSet::new();
    collect_nbc(0, 0, ideal.n_gens(), &broken, &mut all);
    Ok(all.into_iter().collect())
}

fn collect_nbc(mask: u64, from: usize, l: usize, broken: &[u64], out: &mut BTreeSet<u64>) {
    out.insert(mask);
    for g in from..l {
        let cand = mask | (1 << g);
        if broken.iter().all(|bc| bc & cand != *bc) {
            collect_nbc(cand, g + 1, l, broken, out);
        }
    }
}

/// The broken-circuit matching: process circuits by decreasing size and
/// pair every unmatched superset of a circuit with the set lacking the
/// circuit's maximal edge. Returns the matching on the Taylor complex and
/// the surviving masks.
pub fn nbc_matching(
    ideal: &MonomialIdeal,
    rank: &[usize],
) -> Result<(Matching, Vec<u64>), NbcError> {
    require_quadratic(ideal)?;
    let l = ideal.n_gens();
    let mut circuit_list = circuits(ideal)?;
    circuit_list.sort_by_key(|z| (std::cmp::Reverse(z.count_ones()), *z));
    let mut matched: BTreeSet<u64> = BTreeSet::new();
    let mut matching = Matching::new();
    for z in circuit_list {
        let max_edge = (0..l)
            .filter(|&g| z >> g & 1 == 1)
            .max_by_key(|&g| rank[g])
            .unwrap();
        let ubit = 1u64 << max_edge;
        for mask in 1..(1u64 << l) {
            if mask & z != z || matched.contains(&mask) {
                continue;
            }
            let low = mask & !ubit;
            if matched.contains(&low) {
                continue;
            }
            matched.insert(mask);
            matched.insert(low);
            matching.add(
                (mask.count_ones() as usize - 1, mask),
                (low.count_ones() as usize - 1, low),
                1,
            );
        }
    }
    let survivors: Vec<u64> = (1..(1u64 << l)).filter(|m| !matched.contains(m)).collect();
    Ok((matching, survivors))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcdMatchingError {
    /// a coprime pair with no admissible larger divisor of its lcm
    StrongGcdViolated { smaller: usize, larger: usize },
    /// a survivor with two or more components remained
    DisconnectedSurvivor { mask: u64 },
}

impl fmt::Display for GcdMatchingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GcdMatchingError::StrongGcdViolated { smaller, larger } => write!(
                f,
                "coprime pair (generators {}, {}) admits no later generator dividing its lcm",
                smaller + 1,
                larger + 1
            ),
            GcdMatchingError::DisconnectedSurvivor { mask } => write!(
                f,
                "survivor {:#b} has two or more components",
                mask
            ),
        }
    }
}

impl std::error::Error for GcdMatchingError {}

/// Check that the order (a permutation of generator indices, smallest
/// first) witnesses the strong gcd condition.
pub fn check_strong_gcd_order(ideal: &MonomialIdeal, order: &[usize]) -> Result<(), GcdMatchingError> {
    let l = ideal.n_gens();
    assert_eq!(order.len(), l, "order must be a permutation of the generators");
    for a in 0..l {
        for b in a + 1..l {
            let (g, h) = (order[a], order[b]);
            if !ideal.gens()[g].is_coprime(&ideal.gens()[h]) {
                continue;
            }
            let lcm = ideal.gens()[g].lcm(&ideal.gens()[h]);
            let found = (a + 1..l).any(|c| {
                let u = order[c];
                u != h && ideal.gens()[u].divides(&lcm)
            });
            if !found {
                return Err(GcdMatchingError::StrongGcdViolated { smaller: g, larger: h });
            }
        }
    }
    Ok(())
}

/// The matching attached to a strong-gcd order: for each generator `g` in
/// order and each later coprime partner `h`, the smallest admissible `u`
/// pairs every set containing `{g,h,u}` with the set lacking `u`. Rounds
/// after the first only touch sets with two or more components. Every
/// survivor is connected; a disconnected survivor is an error.
pub fn gcd_matching(ideal: &MonomialIdeal, order: &[usize]) -> Result<Matching, GcdMatchingError> {
    check_strong_gcd_order(ideal, order)?;
    let l = ideal.n_gens();
    let mut matched: BTreeSet<u64> = BTreeSet::new();
    let mut matching = Matching::new();
    for a in 0..l {
        let g = order[a];
        for b in a + 1..l {
            let h = order[b];
            if !ideal.gens()[g].is_coprime(&ideal.gens()[h]) {
                continue;
            }
            let lcm = ideal.gens()[g].lcm(&ideal.gens()[h]);
            let u = (a + 1..l)
                .map(|c| order[c])
                .find(|&u| u != h && ideal.gens()[u].divides(&lcm))
                .expect("checked above");
            let fixed = (1u64 << g) | (1u64 << h);
            let ubit = 1u64 << u;
            let free: Vec<usize> = (0..l)
                .filter(|&x| x != g && x != h && x != u)
                .collect();
            for bits in 0..(1u64 << free.len()) {
                let mut i_mask = 0u64;
                for (pos, &x) in free.iter().enumerate() {
                    if bits >> pos & 1 == 1 {
                        i_mask |= 1 << x;
                    }
                }
                let low = fixed | i_mask;
                let up = low | ubit;
                if matched.contains(&low) || matched.contains(&up) {
                    continue;
                }
                if a > 0 {
                    let (cl, _) = crate::ideal::component_classes(ideal, low);
                    if cl < 2 {
                        continue;
                    }
                }
                matched.insert(low);
                matched.insert(up);
                matching.add(
                    (up.count_ones() as usize - 1, up),
                    (low.count_ones() as usize - 1, low),
                    a + 1,
                );
            }
        }
    }
    for mask in 1..(1u64 << l) {
        if !matched.contains(&mask) {
            let (cl, _) = crate::ideal::component_classes(ideal, mask);
            if cl >= 2 {
                return Err(GcdMatchingError::DisconnectedSurvivor { mask });
            }
        }
    }
    Ok(matching)
}

/// A sting-chain of an order-complex ideal: a strictly increasing
/// backbone of incomparable consecutive pairs spanning the support, with
/// optional stings inside each gap hanging forward off the gap's left end
/// or backward onto its right end.
pub fn sting_chains(poset: &Poset) -> Vec<u64> {
    let ideal = poset.order_complex_ideal();
    let p = poset.len();
    let mut edge_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (g, gen) in ideal.gens().iter().enumerate() {
        edge_of.insert(edge_endpoints(gen), g);
    }
    let mut out: BTreeSet<u64> = BTreeSet::new();
    // enumerate backbones: increasing vertex sequences with consecutive
    // incomparable pairs
    let mut stack: Vec<Vec<usize>> = (0..p).map(|v| vec![v]).collect();
    while let Some(backbone) = stack.pop() {
        let last = *backbone.last().unwrap();
        if backbone.len() >= 2 {
            expand_stings(poset, &edge_of, &backbone, &mut out);
        }
        for next in last + 1..p {
            if !poset.precedes(last, next) {
                let mut nb = backbone.clone();
                nb.push(next);
                stack.push(nb);
            }
        }
    }
    out.into_iter().collect()
}

fn expand_stings(
    poset: &Poset,
    edge_of: &BTreeMap<(usize, usize), usize>,
    backbone: &[usize],
    out: &mut BTreeSet<u64>,
) {
    let mut base = 0u64;
    for w in backbone.windows(2) {
        base |= 1 << edge_of[&(w[0], w[1])];
    }
    // per interior vertex of each gap: skip, sting forward from the left
    // end, or sting backward onto the right end (the latter requires the
    // left end to precede the vertex in the poset)
    let mut slots: Vec<Vec<u64>> = Vec::new();
    for w in backbone.windows(2) {
        let (a, b) = (w[0], w[1]);
        for v in a + 1..b {
            let mut options = vec![0u64];
            if !poset.precedes(a, v) {
                options.push(1 << edge_of[&(a, v)]);
            }
            if poset.precedes(a, v) && !poset.precedes(v, b) {
                options.push(1 << edge_of[&(v, b)]);
            }
            slots.push(options);
        }
    }
    let mut masks = vec![base];
    for options in &slots {
        let mut next = Vec::with_capacity(masks.len() * options.len());
        for m in &masks {
            for o in options {
                next.push(m | o);
            }
        }
        masks = next;
    }
    for m in masks {
        out.insert(m);
    }
}

/// Literal membership test against the sting-chain conditions; used to
/// cross-check the direct enumeration.
pub fn is_sting_chain(poset: &Poset, ideal: &MonomialIdeal, mask: u64) -> bool {
    if mask == 0 {
        return false;
    }
    let lcm = ideal.lcm_of(mask);
    let supp = lcm.support();
    let (lo, hi) = (supp[0], *supp.last().unwrap());
    let members: Vec<(usize, usize)> = (0..ideal.n_gens())
        .filter(|&g| mask >> g & 1 == 1)
        .map(|g| edge_endpoints(&ideal.gens()[g]))
        .collect();
    // all increasing backbones from lo to hi using member edges
    let mut stack: Vec<Vec<usize>> = vec![vec![lo]];
    while let Some(seq) = stack.pop() {
        let last = *seq.last().unwrap();
        if last == hi && seq.len() >= 2 && backbone_covers(poset, &members, &seq) {
            return true;
        }
        for &(a, b) in &members {
            if a == last && b > last {
                let mut ns = seq.clone();
                ns.push(b);
                stack.push(ns);
            }
        }
    }
    false
}

fn backbone_covers(poset: &Poset, members: &[(usize, usize)], seq: &[usize]) -> bool {
    let in_i = |r: usize, s: usize| members.contains(&(r, s));
    for &(r, s) in members {
        let mut ok = false;
        for w in seq.windows(2) {
            let (ij, ij1) = (w[0], w[1]);
            if (r, s) == (ij, ij1)
                || (r == ij && s < ij1 && !in_i(s, ij1))
                || (r > ij && s == ij1 && poset.precedes(ij, r))
            {
                ok = true;
                break;
            }
        }
        if !ok {
            return false;
        }
    }
    true
}

/// Chains of sting-chains: unions of sting-chains whose supports are
/// separated, each chain's maximal variable below the next one's minimal
/// variable. Returned as subsets of the order-complex ideal.
pub fn sting_chain_sets(poset: &Poset) -> Vec<crate::ideal::GenSubset> {
    let ideal = poset.order_complex_ideal();
    let singles = sting_chains(poset);
    // (min support, max support, mask), sorted for the separated-union walk
    let mut spans: Vec<(usize, usize, u64)> = singles
        .iter()
        .map(|&m| {
            let supp = ideal.lcm_of(m).support();
            (supp[0], *supp.last().unwrap(), m)
        })
        .collect();
    spans.sort();
    let mut out: Vec<u64> = Vec::new();
    let mut stack: Vec<(u64, usize)> = spans
        .iter()
        .enumerate()
        .map(|(i, &(_, _, m))| (m, i))
        .collect();
    while let Some((mask, idx)) = stack.pop() {
        out.push(mask);
        let max_here = spans[idx].1;
        for (j, &(lo, _, m)) in spans.iter().enumerate() {
            if lo > max_here {
                stack.push((mask | m, j));
            }
        }
    }
    out.sort();
    out.dedup();
    out.into_iter().map(|m| ideal.subset(m)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::complex_homology;
    use crate::ideal::minimalize_generators;
    use crate::linalg::Rationals;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn ideal(gens: &[&[u32]], n: usize) -> MonomialIdeal {
        minimalize_generators(gens.iter().map(|e| m(e)).collect(), n).unwrap()
    }

    fn path3() -> MonomialIdeal {
        ideal(&[&[1, 1, 0], &[0, 1, 1]], 3)
    }

    fn triangle() -> MonomialIdeal {
        ideal(&[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]], 3)
    }

    #[test]
    fn taylor_single_generator() {
        let a = ideal(&[&[1, 1]], 2);
        let cx = build_taylor(&a, false).unwrap();
        assert_eq!(cx.n_cells(), 1);
        assert!(cx.entries((0, 1)).is_empty());
    }

    #[test]
    fn taylor_differential_of_pair() {
        // d{1,2} = z {1} - x {2} for <xy, yz>
        let cx = build_taylor(&path3(), false).unwrap();
        assert_eq!(cx.n_cells(), 3);
        let entries = cx.entries((1, 0b11));
        let to1 = entries.iter().find(|(k, _)| k.1 == 0b01).unwrap();
        let to2 = entries.iter().find(|(k, _)| k.1 == 0b10).unwrap();
        assert_eq!(to1.1.scalar, BigInt::from(1));
        assert_eq!(to1.1.monomial, m(&[0, 0, 1]));
        assert_eq!(to2.1.scalar, BigInt::from(-1));
        assert_eq!(to2.1.monomial, m(&[1, 0, 0]));
    }

    #[test]
    fn taylor_dd_zero() {
        for augmented in [false, true] {
            let cx = build_taylor(&triangle(), augmented).unwrap();
            assert_eq!(cx.n_cells(), 7 + augmented as usize);
            assert!(cx.check_dd_zero().is_ok());
            assert!(cx.check_homogeneous().is_ok());
        }
    }

    #[test]
    fn graded_is_necessary_for_invertibility() {
        // matching {xy,xz} -> {xz} carries the coefficient y, not a unit
        let a = ideal(&[&[1, 1, 0], &[1, 0, 1]], 3);
        let cx = build_taylor(&a, false).unwrap();
        let mut matching = Matching::new();
        matching.add((1, 0b11), (0, 0b10), 1);
        let report = validate_matching(&cx, &matching).unwrap();
        assert_eq!(report.invertibility_violation, Some(((1, 0b11), (0, 0b10))));
    }

    #[test]
    fn taylor_homology_of_triangle() {
        let cx = build_taylor(&triangle(), false).unwrap().tensor_k();
        let h = complex_homology(&cx, &Rationals).unwrap();
        let h0: usize = h.iter().filter(|((d, _), _)| *d == 0).map(|(_, v)| v).sum();
        assert_eq!(h0, 3);
        assert_eq!(h[&(1, m(&[1, 1, 1]))], 2);
        assert!(h.keys().all(|(d, _)| *d < 2));
    }

    #[test]
    fn taylor_homology_of_path() {
        // H_0: xy and yz classes, H_1: one class at xyz
        let cx = build_taylor(&path3(), false).unwrap().tensor_k();
        let h = complex_homology(&cx, &Rationals).unwrap();
        assert_eq!(h[&(0, m(&[1, 1, 0]))], 1);
        assert_eq!(h[&(0, m(&[0, 1, 1]))], 1);
        assert_eq!(h[&(1, m(&[1, 1, 1]))], 1);
        assert_eq!(h.len(), 3);
    }

    #[test]
    fn standard_matching_taylor_minimal_is_empty() {
        let sm = standard_matching(&path3(), Policy::LexFirst).unwrap();
        assert!(sm.stages.is_empty());
        assert!(sm.minimal);
        assert_eq!(sm.final_complex.n_cells(), 3);
    }

    #[test]
    fn standard_matching_triangle() {
        let sm = standard_matching(&triangle(), Policy::LexFirst).unwrap();
        assert!(sm.minimal);
        // survivors: 3 singletons + 2 pairs
        let survivors = sm.final_survivors();
        assert_eq!(survivors.iter().filter(|s| s.count_ones() == 1).count(), 3);
        assert_eq!(survivors.iter().filter(|s| s.count_ones() == 2).count(), 2);
        assert_eq!(survivors.len(), 5);
        // homology preserved
        let taylor = build_taylor(&triangle(), false).unwrap();
        let h0 = complex_homology(&taylor.tensor_k(), &Rationals).unwrap();
        let h1 = complex_homology(&sm.final_complex.tensor_k(), &Rationals).unwrap();
        assert_eq!(h0, h1);
    }

    #[test]
    fn standard_matching_policy_independent_sums() {
        // triangle plus a coprime edge: both sequences act
        let a = ideal(
            &[
                &[1, 1, 0, 0, 0],
                &[1, 0, 1, 0, 0],
                &[0, 1, 1, 0, 0],
                &[0, 0, 0, 1, 1],
            ],
            5,
        );
        let lex = standard_matching(&a, Policy::LexFirst).unwrap();
        let mask = standard_matching(&a, Policy::MaskFirst).unwrap();
        let top = lex.max_seq.max(mask.max_seq) + 1;
        for i in 1..=top {
            let s1 = survivor_sum(&a, &lex.survivors_before_seq(i));
            let s2 = survivor_sum(&a, &mask.survivors_before_seq(i));
            assert_eq!(s1, s2, "sequence {}", i);
        }
    }

    #[test]
    fn nbc_triangle_counts() {
        let a = triangle();
        let rank = lex_rank(&a);
        let zs = circuits(&a).unwrap();
        assert_eq!(zs.len(), 1);
        let sets = nbc_sets(&a, &rank).unwrap();
        let count = |card: u32| sets.iter().filter(|s| s.count_ones() == card).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (1, 3, 2, 0));
    }

    #[test]
    fn nbc_path_has_all_subsets() {
        let a = path3();
        let rank = lex_rank(&a);
        let sets = nbc_sets(&a, &rank).unwrap();
        assert_eq!(sets.len(), 4);
    }

    #[test]
    fn nbc_matching_survivors_are_nbc_sets() {
        let a = triangle();
        let rank = lex_rank(&a);
        let (matching, survivors) = nbc_matching(&a, &rank).unwrap();
        let taylor = build_taylor(&a, false).unwrap();
        let report = validate_matching(&taylor, &matching).unwrap();
        assert!(report.ok(), "{}", report.summary());
        let mut nbc: Vec<u64> = nbc_sets(&a, &rank).unwrap();
        nbc.retain(|&s| s != 0);
        assert_eq!(survivors, nbc);
        // the Morse complex is the restriction of the Taylor differential
        let morse = morse_complex(&taylor, &matching).unwrap();
        for (from, entries) in &morse.diff {
            for (to, coeff) in entries {
                assert_eq!(taylor.entry(*from, *to), Some(coeff));
            }
        }
    }

    #[test]
    fn nbc_requires_quadratic_squarefree() {
        let a = ideal(&[&[1, 1, 1]], 3);
        assert!(nbc_sets(&a, &[0]).is_err());
    }

    #[test]
    fn gcd_matching_examples() {
        // all pairs share a variable: empty matching, survivors connected
        let a = triangle();
        let matching = gcd_matching(&a, &[0, 1, 2]).unwrap();
        assert!(matching.is_empty());

        // <xy, zw, yz> with xy first: the coprime pair (xy, zw) has the
        // bridge yz dividing its lcm; {xy,yz,zw} -> {xy,zw}
        // canonical generator order: xy(0), yz(1), zw(2)
        let b = ideal(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 1, 1, 0]], 4);
        let matching = gcd_matching(&b, &[0, 1, 2]).unwrap();
        assert_eq!(matching.len(), 1);
        let e = &matching.edges[0];
        assert_eq!(e.upper.1, 0b111);
        assert_eq!(e.lower.1, 0b101);
        let taylor = build_taylor(&b, false).unwrap();
        let report = validate_matching(&taylor, &matching).unwrap();
        assert!(report.ok());
        let morse = morse_complex(&taylor, &matching).unwrap();
        for (_, label) in morse.cell_keys() {
            assert_eq!(crate::ideal::component_classes(&b, label).0, 1);
        }

        // 5-gon fails the precondition for every order
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
        assert!(matches!(
            gcd_matching(&pentagon, &[0, 1, 2, 3, 4]),
            Err(GcdMatchingError::StrongGcdViolated { .. })
        ));
    }
}
