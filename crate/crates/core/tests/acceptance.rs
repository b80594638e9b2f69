//! Acceptance suite: twelve exact criteria over the built-in corpus,
//! random ideal families, and poset families. Every comparison is exact
//! (tolerance zero); instances where a closed form is only conjectural
//! are reported as findings without failing the suite.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see one
//! pass/fail line per criterion.

use num_rational::BigRational;
use taylor_morse::checks::*;
use taylor_morse::complex::{morse_complex, validate_matching};
use taylor_morse::corpus::*;
use taylor_morse::golod::{golod_verdict, strong_gcd_condition, StrongGcdOutcome, Verdict};
use taylor_morse::ideal::MonomialIdeal;
use taylor_morse::koszul::KoszulOracle;
use taylor_morse::linalg::{FieldCtx, PrimeField, Rationals};
use taylor_morse::monomial::Monomial;
use taylor_morse::poset::{all_posets, w_poly, WMethod};
use taylor_morse::series::conjectured_poincare;
use taylor_morse::taylor::{
    build_taylor, gcd_matching, lex_rank, nbc_matching, nbc_sets, standard_matching_auto,
};
use taylor_morse::tor::tor_a_kk;

fn conclude(number: usize, description: &str, result: Result<(), String>) {
    match result {
        Ok(()) => println!("criterion {:2}: PASS - {}", number, description),
        Err(e) => {
            println!("criterion {:2}: FAIL - {}: {}", number, description, e);
            panic!("criterion {} failed: {}", number, e);
        }
    }
}

/// The battery: all named corpus ideals plus seeded random ones, at least
/// fifty in total, all with at most 5 variables and 8 generators.
fn battery_ideals() -> Vec<(String, MonomialIdeal)> {
    let mut out: Vec<(String, MonomialIdeal)> = corpus_ideals()
        .into_iter()
        .map(|(n, a)| (n.to_string(), a))
        .collect();
    for (k, a) in random_ideals(35, 424242).into_iter().enumerate() {
        out.push((format!("random-{}", k), a));
    }
    assert!(out.len() >= 50);
    for (_, a) in &out {
        assert!(a.n_vars() <= 5 && a.n_gens() <= 8);
    }
    out
}

#[test]
fn criterion_01_morse_correctness() {
    let run = || -> Result<(), String> {
        for (name, ideal) in battery_ideals() {
            let taylor = build_taylor(&ideal, false).map_err(|e| e.to_string())?;
            taylor
                .check_dd_zero()
                .map_err(|_| format!("{}: taylor differential does not square to zero", name))?;
            let sm = standard_matching_auto(&ideal).map_err(|e| format!("{}: {}", name, e))?;
            // replay the construction, revalidating every batch and every
            // intermediate complex
            let mut current = taylor.clone();
            for stage in &sm.stages {
                let mut batch = taylor_morse::complex::Matching::new();
                for (u, l) in &stage.edges {
                    batch.add(
                        (u.count_ones() as usize - 1, *u),
                        (l.count_ones() as usize - 1, *l),
                        stage.seq,
                    );
                }
                let report =
                    validate_matching(&current, &batch).map_err(|e| format!("{}: {}", name, e))?;
                if !report.ok() {
                    return Err(format!("{}: batch fails validation: {}", name, report.summary()));
                }
                current = morse_complex(&current, &batch).map_err(|e| format!("{}: {}", name, e))?;
                current
                    .check_dd_zero()
                    .map_err(|_| format!("{}: intermediate complex has dd != 0", name))?;
            }
            let h_taylor = homology_over(&taylor, &Rationals);
            let h_final = homology_over(&current, &Rationals);
            if h_taylor != h_final {
                return Err(format!("{}: homology changed", name));
            }
            // the other matching families validate too, where defined
            if ideal.is_squarefree() && ideal.is_equigenerated(2) {
                let rank = lex_rank(&ideal);
                let (matching, _) = nbc_matching(&ideal, &rank).map_err(|e| e.to_string())?;
                let report =
                    validate_matching(&taylor, &matching).map_err(|e| e.to_string())?;
                if !report.ok() {
                    return Err(format!("{}: nbc matching invalid: {}", name, report.summary()));
                }
            }
            if let StrongGcdOutcome::Witness(order) = strong_gcd_condition(&ideal) {
                let matching =
                    gcd_matching(&ideal, &order).map_err(|e| format!("{}: {}", name, e))?;
                let report =
                    validate_matching(&taylor, &matching).map_err(|e| e.to_string())?;
                if !report.ok() {
                    return Err(format!("{}: gcd matching invalid: {}", name, report.summary()));
                }
            }
        }
        Ok(())
    };
    conclude(
        1,
        "matchings validate, Morse complexes square to zero, homology is preserved (53 ideals)",
        run(),
    );
}

#[test]
fn criterion_02_minimality_and_betti() {
    let run = || -> Result<(), String> {
        for (name, ideal) in battery_ideals() {
            let sm = standard_matching_auto(&ideal).map_err(|e| format!("{}: {}", name, e))?;
            if !sm.minimal {
                return Err(format!("{}: terminal complex is not minimal", name));
            }
            for (from, entries) in &sm.final_complex.diff {
                for (to, _) in entries {
                    if sm.final_complex.mdeg(*from) == sm.final_complex.mdeg(*to) {
                        return Err(format!("{}: equal-multidegree entry survived", name));
                    }
                }
            }
            let bound = KoszulOracle::<Rationals>::product_bound(&ideal);
            let mut oracle = KoszulOracle::new(&ideal, Rationals, bound);
            let betti = oracle.betti_table();
            let mut cells = std::collections::BTreeMap::new();
            for (d, labels) in &sm.final_complex.cells {
                for mdeg in labels.values() {
                    *cells.entry((*d + 1, mdeg.clone())).or_insert(0usize) += 1;
                }
            }
            let mut expected = betti.entries.clone();
            expected.remove(&(0, Monomial::one(ideal.n_vars())));
            if cells != expected {
                return Err(format!("{}: ranks differ from Koszul dimensions", name));
            }
        }
        Ok(())
    };
    conclude(
        2,
        "terminal complexes are minimal with ranks equal to Koszul homology dimensions",
        run(),
    );
}

#[test]
fn criterion_03_hilbert_series() {
    let run = || -> Result<(), String> {
        for (name, ideal) in corpus_ideals() {
            hilbert_battery(&ideal, 8).map_err(|e| format!("{}: {}", name, e))?;
        }
        Ok(())
    };
    conclude(
        3,
        "Hilbert expansions to d=8 equal direct monomial counts; numerator modes agree",
        run(),
    );
}

#[test]
fn criterion_04_policy_independence() {
    let run = || -> Result<(), String> {
        for (name, ideal) in battery_ideals() {
            policy_battery(&ideal).map_err(|e| format!("{}: {}", name, e))?;
        }
        Ok(())
    };
    conclude(
        4,
        "both tie-break policies give identical survivor sums at every sequence stage",
        run(),
    );
}

#[test]
fn criterion_05_nbc() {
    let run = || -> Result<(), String> {
        let triangle = triangle();
        let rank = lex_rank(&triangle);
        let sets = nbc_sets(&triangle, &rank).map_err(|e| e.to_string())?;
        let count = |card: u32| sets.iter().filter(|s| s.count_ones() == card).count();
        if (count(0), count(1), count(2), count(3)) != (1, 3, 2, 0) {
            return Err("triangle nbc counts differ from (1, 3, 2, 0)".to_string());
        }
        for (name, ideal) in degree_two_corpus() {
            nbc_battery(&ideal).map_err(|e| format!("{}: {}", name, e))?;
        }
        Ok(())
    };
    conclude(
        5,
        "triangle nbc counts are (1,3,2,0) and Betti numbers stay below nbc counts",
        run(),
    );
}

#[test]
fn criterion_06_poset_w_agreement() {
    let run = || -> Result<(), String> {
        let mut checked = 0usize;
        for p in 1..=5 {
            for poset in all_posets(p) {
                let reference = w_poly(&poset, WMethod::Recursion);
                for method in [WMethod::StingChains, WMethod::Nbc, WMethod::PathCoefficients] {
                    if w_poly(&poset, method) != reference {
                        return Err(format!("{:?}: {} disagrees", poset, method));
                    }
                }
                checked += 1;
            }
        }
        if checked < 400 {
            return Err(format!("only {} posets with p <= 5", checked));
        }
        let mut random_checked = 0usize;
        for p in [6usize, 7] {
            for poset in random_posets(110, p, 31337 + p as u64) {
                let reference = w_poly(&poset, WMethod::Recursion);
                for method in [WMethod::StingChains, WMethod::Nbc, WMethod::PathCoefficients] {
                    if w_poly(&poset, method) != reference {
                        return Err(format!("{:?}: {} disagrees", poset, method));
                    }
                }
                random_checked += 1;
            }
        }
        if random_checked < 200 {
            return Err("fewer than 200 random posets checked".to_string());
        }
        Ok(())
    };
    conclude(
        6,
        "four denominator computations agree termwise (exhaustive p<=5, 220 random p in {6,7})",
        run(),
    );
}

#[test]
fn criterion_07_poincare_conjecture_corpus() {
    let run = || -> Result<(), String> {
        let mut proved = Vec::new();
        for (name, ideal) in taylor_minimal_corpus() {
            proved.push((format!("taylor-minimal {}", name), ideal));
        }
        for (name, ideal) in degree_two_corpus() {
            proved.push((format!("quadratic {}", name), ideal));
        }
        for p in 1..=4 {
            for (k, poset) in all_posets(p).into_iter().enumerate() {
                let ideal = poset.order_complex_ideal();
                if !ideal.is_empty() {
                    proved.push((format!("order-complex p={} #{}", p, k), ideal));
                }
            }
        }
        for (name, poset) in corpus_posets() {
            let ideal = poset.order_complex_ideal();
            if !ideal.is_empty() {
                proved.push((format!("order-complex {}", name), ideal));
            }
        }
        for (name, ideal) in proved {
            let cmp = poincare_comparison(&ideal, 6, 8, &Rationals)
                .map_err(|e| format!("{}: {}", name, e))?;
            if !cmp.matches {
                return Err(format!(
                    "{}: conjectured series differs at {:?}",
                    name, cmp.first_mismatch
                ));
            }
        }
        // general corpus members: conjecture status is reported, never a
        // suite failure
        for (name, ideal) in corpus_ideals() {
            match poincare_comparison(&ideal, 4, 6, &Rationals) {
                Ok(cmp) if cmp.matches => {}
                Ok(cmp) => println!(
                    "  finding: conjectured series for {} differs at {:?}",
                    name, cmp.first_mismatch
                ),
                Err(e) => println!("  finding: comparison for {} incomplete: {}", name, e),
            }
        }
        Ok(())
    };
    conclude(
        7,
        "conjectured Poincare series equals the residue-field resolution to (h=6, d=8) on proved classes",
        run(),
    );
}

#[test]
fn criterion_08_koszul_identity() {
    let run = || -> Result<(), String> {
        for (name, ideal) in degree_two_corpus() {
            koszul_identity_battery(&ideal).map_err(|e| format!("{}: {}", name, e))?;
        }
        Ok(())
    };
    conclude(
        8,
        "the Koszul duality identity holds for every quadratic corpus ideal",
        run(),
    );
}

#[test]
fn criterion_09_language_counts() {
    let run = || -> Result<(), String> {
        for (name, ideal) in degree_two_corpus() {
            language_battery(&ideal, 6).map_err(|e| format!("{}: {}", name, e))?;
        }
        Ok(())
    };
    conclude(
        9,
        "word language counts equal ring monomial counts to length 6",
        run(),
    );
}

#[test]
fn criterion_10_golod_battery() {
    let run = || -> Result<(), String> {
        let report = golod_verdict(&pentagon(), 5, 6, &Rationals);
        if !report.gcd_condition {
            return Err("pentagon must satisfy the gcd condition".to_string());
        }
        if report.strong_gcd != StrongGcdOutcome::Refuted {
            return Err("pentagon must refute the strong gcd condition".to_string());
        }
        if report.product_trivial || report.product_witness.is_none() {
            return Err("pentagon must have a nontrivial product with witness".to_string());
        }
        if report.verdict != Verdict::NotGolod {
            return Err(format!("pentagon verdict was {}", report.verdict));
        }

        let report = golod_verdict(&path_ideal(3), 6, 8, &Rationals);
        if report.verdict != Verdict::Golod {
            return Err(format!("path ideal verdict was {}", report.verdict));
        }

        let two_edges = corpus_ideals()
            .into_iter()
            .find(|(n, _)| *n == "two-edges")
            .unwrap()
            .1;
        let report = golod_verdict(&two_edges, 5, 8, &Rationals);
        if report.verdict != Verdict::NotGolod {
            return Err(format!("two coprime edges verdict was {}", report.verdict));
        }

        for (name, ideal) in strong_gcd_corpus() {
            let report = golod_verdict(&ideal, 4, 6, &Rationals);
            if !report.product_trivial {
                return Err(format!("{} has a strong gcd order but a nontrivial product", name));
            }
            if !report.series_match {
                return Err(format!("{} has a strong gcd order but misses the bound", name));
            }
            if report.verdict != Verdict::Golod {
                return Err(format!("{} verdict was {}", name, report.verdict));
            }
            golod_battery(&ideal, 4, 6).map_err(|e| format!("{}: {}", name, e))?;
        }
        for (name, ideal) in corpus_ideals() {
            golod_battery(&ideal, 4, 6).map_err(|e| format!("{}: {}", name, e))?;
        }
        Ok(())
    };
    conclude(
        10,
        "pentagon not-golod with witness; pairwise-connected golod; coprime pair not-golod; strong-gcd corpus golod",
        run(),
    );
}

#[test]
fn criterion_11_one_squared_variable() {
    let run = || -> Result<(), String> {
        let ideal = taylor_morse::ideal::minimalize_generators(
            vec![Monomial::from_exponents(vec![2])],
            1,
        )
        .unwrap();
        let res = tor_a_kk(&ideal, 8, 8, &Rationals);
        for i in 0..=8usize {
            if res.table.get(i, &Monomial::from_exponents(vec![i as u32])) != 1 {
                return Err(format!("resolution rank at step {} is not 1", i));
            }
        }
        if res.table.entries.len() != 9 {
            return Err("unexpected extra Betti entries".to_string());
        }
        let p = conjectured_poincare(&ideal, &[0, 1], 16);
        for i in 0..=8u32 {
            if p.expansion.coeff(&[i], i) != BigRational::from_integer(1.into()) {
                return Err(format!("specialized coefficient at t^{} is not 1", i));
            }
        }
        let diagonal: usize = p.expansion.terms.len();
        if diagonal != 9 {
            return Err("expansion has off-diagonal terms".to_string());
        }
        Ok(())
    };
    conclude(
        11,
        "one squared variable: periodic rank-one resolution and geometric Poincare series",
        run(),
    );
}

#[test]
fn criterion_12_characteristic_stability() {
    fn per_char<F: FieldCtx>(name: &str, ideal: &MonomialIdeal, field: &F) -> Result<Vec<String>, String> {
        let mut findings = Vec::new();
        let taylor = build_taylor(ideal, false).map_err(|e| e.to_string())?;
        let sm = standard_matching_auto(ideal).map_err(|e| format!("{}: {}", name, e))?;
        // exact at any characteristic: the rerouted complex keeps homology
        let h_taylor = homology_over(&taylor, field);
        let h_final = homology_over(&sm.final_complex, field);
        if h_taylor != h_final {
            return Err(format!(
                "{}: homology not preserved at char {}",
                name,
                field.characteristic()
            ));
        }
        // and the Koszul dimensions agree with the subset complex at the
        // same characteristic
        let bound = KoszulOracle::<F>::product_bound(ideal);
        let mut oracle = KoszulOracle::new(ideal, field.clone(), bound);
        let betti = oracle.betti_table();
        let mut shifted = std::collections::BTreeMap::new();
        for ((i, alpha), dim) in &betti.entries {
            if *i >= 1 {
                shifted.insert((*i - 1, alpha.clone()), *dim);
            }
        }
        if h_taylor != shifted {
            return Err(format!(
                "{}: Koszul dims differ from subset-complex homology at char {}",
                name,
                field.characteristic()
            ));
        }
        // char-dependence of the Betti numbers themselves is a finding,
        // not a failure
        let bound0 = KoszulOracle::<Rationals>::product_bound(ideal);
        let mut oracle0 = KoszulOracle::new(ideal, Rationals, bound0);
        if oracle0.betti_table().entries != betti.entries {
            findings.push(format!(
                "{}: Betti table differs between char 0 and char {}",
                name,
                field.characteristic()
            ));
        }
        Ok(findings)
    }
    let run = || -> Result<(), String> {
        let mut findings = Vec::new();
        for (name, ideal) in corpus_ideals() {
            for p in [2u64, 3] {
                findings.extend(per_char(name, &ideal, &PrimeField::new(p))?);
            }
        }
        for f in &findings {
            println!("  finding: {}", f);
        }
        Ok(())
    };
    conclude(
        12,
        "criteria 1-2 hold at characteristics 2 and 3; characteristic differences are findings",
        run(),
    );
}
