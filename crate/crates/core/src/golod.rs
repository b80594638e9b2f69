//! Golod classification: combinatorial gcd conditions, the backtracking
//! search for a strong-gcd order, and the assembled verdict backed by the
//! product and resolution oracles.

use crate::ideal::MonomialIdeal;
use crate::koszul::{ClassId, KoszulOracle};
use crate::linalg::FieldCtx;
use crate::monomial::Monomial;
use crate::series::golod_series;
use crate::tor::tor_a_kk;
use num_rational::BigRational;
use std::fmt;

/// Every coprime generator pair admits a third generator dividing its
/// lcm.
pub fn gcd_condition(ideal: &MonomialIdeal) -> bool {
    let l = ideal.n_gens();
    for a in 0..l {
        for b in a + 1..l {
            if !ideal.gens()[a].is_coprime(&ideal.gens()[b]) {
                continue;
            }
            let lcm = ideal.gens()[a].lcm(&ideal.gens()[b]);
            let found = (0..l).any(|u| u != a && u != b && ideal.gens()[u].divides(&lcm));
            if !found {
                return false;
            }
        }
    }
    true
}

pub const STRONG_GCD_SEARCH_CAP: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongGcdOutcome {
    /// a witness order, as generator indices smallest-first
    Witness(Vec<usize>),
    /// exhaustive search found no order
    Refuted,
    /// too many generators for the exhaustive search
    CapExceeded,
}

impl StrongGcdOutcome {
    pub fn witness(&self) -> Option<&[usize]> {
        match self {
            StrongGcdOutcome::Witness(w) => Some(w),
            _ => None,
        }
    }
}

/// Search for a linear order witnessing the strong gcd condition: for
/// every coprime pair, some generator placed after the pair's smaller
/// member divides the pair's lcm. Backtracking over prefixes with early
/// pruning at each placement.
pub fn strong_gcd_condition(ideal: &MonomialIdeal) -> StrongGcdOutcome {
    strong_gcd_condition_capped(ideal, STRONG_GCD_SEARCH_CAP)
}

pub fn strong_gcd_condition_capped(ideal: &MonomialIdeal, cap: usize) -> StrongGcdOutcome {
    let l = ideal.n_gens();
    if l > cap {
        return StrongGcdOutcome::CapExceeded;
    }
    if !gcd_condition(ideal) {
        // the strong condition implies the plain one
        return StrongGcdOutcome::Refuted;
    }
    // candidates[u] for a coprime pair (a,b): generators dividing the lcm
    let mut coprime_pairs: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for a in 0..l {
        for b in a + 1..l {
            if ideal.gens()[a].is_coprime(&ideal.gens()[b]) {
                let lcm = ideal.gens()[a].lcm(&ideal.gens()[b]);
                let cands: Vec<usize> = (0..l)
                    .filter(|&u| u != a && u != b && ideal.gens()[u].divides(&lcm))
                    .collect();
                coprime_pairs.push((a, b, cands));
            }
        }
    }
    let mut order: Vec<usize> = Vec::new();
    let mut position = vec![usize::MAX; l];
    if place_next(ideal, &coprime_pairs, &mut order, &mut position) {
        StrongGcdOutcome::Witness(order)
    } else {
        StrongGcdOutcome::Refuted
    }
}

fn place_next(
    ideal: &MonomialIdeal,
    coprime_pairs: &[(usize, usize, Vec<usize>)],
    order: &mut Vec<usize>,
    position: &mut Vec<usize>,
) -> bool {
    let l = ideal.n_gens();
    if order.len() == l {
        return true;
    }
    'next_gen: for g in 0..l {
        if position[g] != usize::MAX {
            continue;
        }
        position[g] = order.len();
        order.push(g);
        // every fully placed coprime pair needs a candidate placed after
        // its smaller member or still unplaced
        for (a, b, cands) in coprime_pairs {
            if position[*a] == usize::MAX || position[*b] == usize::MAX {
                continue;
            }
            let h_pos = position[*a].min(position[*b]);
            let ok = cands
                .iter()
                .any(|&u| position[u] == usize::MAX || position[u] > h_pos);
            if !ok {
                order.pop();
                position[g] = usize::MAX;
                continue 'next_gen;
            }
        }
        if place_next(ideal, coprime_pairs, order, position) {
            return true;
        }
        order.pop();
        position[g] = usize::MAX;
    }
    false
}

/// No lcm collapses anywhere in the subset lattice, i.e. the full subset
/// complex is already minimal.
pub fn taylor_is_minimal(ideal: &MonomialIdeal) -> bool {
    let l = ideal.n_gens();
    for mask in 1..(1u64 << l) {
        let lcm = ideal.lcm_of(mask);
        for g in 0..l {
            if mask >> g & 1 == 1 && mask.count_ones() > 1 && ideal.lcm_of(mask & !(1 << g)) == lcm
            {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Golod,
    NotGolod,
    Undetermined,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Golod => write!(f, "golod"),
            Verdict::NotGolod => write!(f, "not-golod"),
            Verdict::Undetermined => write!(f, "undetermined"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SeriesDeficit {
    pub degree: usize,
    pub alpha: Monomial,
    pub bound_coeff: BigRational,
    pub actual: BigRational,
}

#[derive(Clone, Debug)]
pub struct GolodReport {
    pub h_bound: usize,
    pub d_bound: u32,
    pub gcd_condition: bool,
    pub strong_gcd: StrongGcdOutcome,
    pub pairwise_noncoprime: bool,
    pub product_trivial: bool,
    pub product_witness: Option<(ClassId, ClassId)>,
    /// the nonzero product expanded in the homology basis, rendered
    pub product_witness_expansion: Option<String>,
    pub series_match: bool,
    pub series_deficit: Option<SeriesDeficit>,
    /// None when the ideal is not equigenerated
    pub degree_bound_golod: Option<bool>,
    /// a class with a proved closed Poincare form, when recognized
    pub proved_class: Option<String>,
    pub verdict: Verdict,
    pub provenance: Vec<String>,
    pub conflict_dump: Option<String>,
}

/// Assemble the classification: combinatorial conditions, the product
/// oracle, and the comparison of the residue-field resolution against
/// the Golod bound series over the tested rectangle.
pub fn golod_verdict<F: FieldCtx>(
    ideal: &MonomialIdeal,
    h_bound: usize,
    d_bound: u32,
    field: &F,
) -> GolodReport {
    let l = ideal.n_gens();
    let gcd_ok = gcd_condition(ideal);
    let strong = strong_gcd_condition(ideal);
    let pairwise_noncoprime = (0..l).all(|a| {
        (a + 1..l).all(|b| !ideal.gens()[a].is_coprime(&ideal.gens()[b]))
    });

    let bound = KoszulOracle::<F>::product_bound(ideal);
    let mut oracle = KoszulOracle::new(ideal, field.clone(), bound);
    let betti = oracle.betti_table();
    let triviality = oracle.product_trivial();
    let (product_trivial, product_witness, product_witness_expansion) = match triviality {
        Ok(v) => match v.witness {
            Some(w) => {
                let expansion: Vec<String> = w
                    .expansion
                    .iter()
                    .map(|((i, m, k), c)| format!("{} * ({},{},{})", c, i, m, k))
                    .collect();
                (
                    v.trivial,
                    Some((w.left.clone(), w.right.clone())),
                    Some(expansion.join(" + ")),
                )
            }
            None => (v.trivial, None, None),
        },
        Err(_) => (false, None, None),
    };

    // equigenerated degree-bound criterion
    let degree_bound_golod = ideal
        .gens()
        .first()
        .map(|g| g.total_degree())
        .filter(|&deg| ideal.is_equigenerated(deg))
        .map(|deg| {
            betti.entries.iter().all(|((i, alpha), dim)| {
                *i == 0
                    || *dim == 0
                    || (alpha.total_degree() as i64 - *i as i64) < 2 * (deg as i64 - 1)
            })
        });

    // Golod bound series vs the actual residue-field resolution
    let weight = h_bound as u32 + d_bound;
    let (_, bound_series) = golod_series(ideal.n_vars(), &betti, weight);
    let tor = tor_a_kk(ideal, h_bound, d_bound, field);
    let mut series_match = true;
    let mut series_deficit = None;
    let mut excess = false;
    for ((alpha_vec, t), c) in bound_series.rectangle(h_bound as u32, d_bound) {
        let alpha = Monomial::from_exponents(alpha_vec);
        let actual =
            BigRational::from_integer((tor.table.get(t as usize, &alpha) as i64).into());
        if actual != c {
            series_match = false;
            if actual > c {
                excess = true;
            }
            if series_deficit.is_none() {
                series_deficit = Some(SeriesDeficit {
                    degree: t as usize,
                    alpha,
                    bound_coeff: c,
                    actual,
                });
            }
        }
    }
    // entries of the table outside the bound's support are impossible;
    // scan the other direction too
    for ((i, alpha), dim) in &tor.table.entries {
        if *i <= h_bound && alpha.total_degree() <= d_bound {
            let c = bound_series.coeff(&alpha.0, *i as u32);
            if c != BigRational::from_integer((*dim as i64).into()) && series_match {
                series_match = false;
            }
        }
    }

    let proved_class = if ideal.is_equigenerated(2) {
        Some("quadratic".to_string())
    } else if taylor_is_minimal(ideal) {
        Some("taylor-minimal".to_string())
    } else {
        None
    };

    let mut negatives: Vec<String> = Vec::new();
    if !gcd_ok {
        negatives.push("gcd condition fails (necessary for Golod)".to_string());
    }
    if let Some((left, right)) = &product_witness {
        negatives.push(format!(
            "nontrivial Koszul product: ({},{}) * ({},{})",
            left.0, left.1, right.0, right.1
        ));
    }
    if let Some(d) = &series_deficit {
        negatives.push(format!(
            "Poincare series falls below the Golod bound at ({}, {}): {} < {}",
            d.degree, d.alpha, d.actual, d.bound_coeff
        ));
    }
    let mut positives: Vec<String> = Vec::new();
    if pairwise_noncoprime {
        positives.push("all generator pairs share a variable".to_string());
    }
    if degree_bound_golod == Some(true) {
        positives.push("resolution degrees stay below the equigenerated threshold".to_string());
    }
    if strong.witness().is_some() {
        match &proved_class {
            Some(class) => positives.push(format!(
                "strong gcd order exists and the closed form is proved for {} ideals",
                class
            )),
            None => {
                // conditional on the closed form; recorded but not
                // decisive on its own
            }
        }
    }
    if series_match && product_trivial {
        positives.push(format!(
            "residue-field resolution attains the Golod bound up to (h={}, d={})",
            h_bound, d_bound
        ));
    }

    let (verdict, provenance, conflict_dump) = if excess {
        (
            Verdict::Undetermined,
            vec!["resolution exceeds the Golod bound; machinery inconsistency".to_string()],
            Some(format!("betti:\n{}\ntor:\n{}", betti, tor.table)),
        )
    } else if !negatives.is_empty() && !positives.is_empty() {
        let mut all = negatives;
        all.extend(positives);
        (
            Verdict::Undetermined,
            all.clone(),
            Some(format!(
                "conflicting evidence\nbetti:\n{}\ntor:\n{}",
                betti, tor.table
            )),
        )
    } else if !negatives.is_empty() {
        (Verdict::NotGolod, negatives, None)
    } else if !positives.is_empty() {
        (Verdict::Golod, positives, None)
    } else {
        (
            Verdict::Undetermined,
            vec!["no decisive criterion within bounds".to_string()],
            None,
        )
    };

    GolodReport {
        h_bound,
        d_bound,
        gcd_condition: gcd_ok,
        strong_gcd: strong,
        pairwise_noncoprime,
        product_trivial,
        product_witness,
        product_witness_expansion,
        series_match,
        series_deficit,
        degree_bound_golod,
        proved_class,
        verdict,
        provenance,
        conflict_dump,
    }
}

impl fmt::Display for GolodReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verdict: {}", self.verdict)?;
        writeln!(f, "gcd-condition: {}", self.gcd_condition)?;
        match &self.strong_gcd {
            StrongGcdOutcome::Witness(w) => {
                let order: Vec<String> = w.iter().map(|g| format!("{}", g + 1)).collect();
                writeln!(f, "strong-gcd: witness order [{}]", order.join(", "))?;
            }
            StrongGcdOutcome::Refuted => writeln!(f, "strong-gcd: no order exists")?,
            StrongGcdOutcome::CapExceeded => {
                writeln!(f, "strong-gcd: undetermined (search cap exceeded)")?
            }
        }
        writeln!(f, "pairwise-noncoprime: {}", self.pairwise_noncoprime)?;
        writeln!(f, "product-trivial: {}", self.product_trivial)?;
        if let Some((l, r)) = &self.product_witness {
            writeln!(
                f,
                "product-witness: ({}, {}) * ({}, {})",
                l.0, l.1, r.0, r.1
            )?;
            if let Some(expansion) = &self.product_witness_expansion {
                writeln!(f, "product-witness-value: {}", expansion)?;
            }
        }
        writeln!(
            f,
            "series-match (h={}, d={}): {}",
            self.h_bound, self.d_bound, self.series_match
        )?;
        if let Some(d) = &self.series_deficit {
            writeln!(
                f,
                "series-deficit: at ({}, {}) actual {} vs bound {}",
                d.degree, d.alpha, d.actual, d.bound_coeff
            )?;
        }
        if let Some(db) = self.degree_bound_golod {
            writeln!(f, "degree-bound criterion: {}", db)?;
        }
        if let Some(c) = &self.proved_class {
            writeln!(f, "proved class: {}", c)?;
        }
        for p in &self.provenance {
            writeln!(f, "because: {}", p)?;
        }
        Ok(())
    }
}
