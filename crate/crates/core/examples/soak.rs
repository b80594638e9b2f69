use std::io::Write;
use std::time::Instant;
use taylor_morse::checks::*;
use taylor_morse::corpus::{random_ideals, random_posets};
use taylor_morse::linalg::{PrimeField, Rationals};
use taylor_morse::poset::{w_poly, WMethod};

fn main() {
    let t = Instant::now();
    let mut failures = 0usize;
    let mut conjecture_mismatches = 0usize;
    let mut char_findings = 0usize;
    for (k, ideal) in random_ideals(500, 777).iter().enumerate() {
        for (what, r) in [
            ("morse", morse_battery(ideal, &Rationals)),
            ("morse@2", morse_battery(ideal, &PrimeField::new(2))),
            ("morse@3", morse_battery(ideal, &PrimeField::new(3))),
            ("policy", policy_battery(ideal)),
            ("oracle", oracle_battery(ideal)),
            ("hilbert", hilbert_battery(ideal, 4)),
            ("golod", golod_battery(ideal, 3, 5)),
            ("monotone", poincare_monotonicity_battery(ideal, 3)),
            ("structure", standard_structure_battery(ideal)),
        ] {
            if let Err(e) = r {
                println!("FAIL #{} {} ({}): {}", k, what, ideal, e);
                failures += 1;
            }
        }
        match poincare_comparison(ideal, 4, 6, &Rationals) {
            Ok(c) if !c.matches => {
                conjecture_mismatches += 1;
                println!("conjecture mismatch: {} at {:?}", ideal, c.first_mismatch);
            }
            Err(e) => {
                println!("poincare error: {} ({})", ideal, e);
                failures += 1;
            }
            _ => {}
        }
        char_findings += tor_characteristic_findings(ideal, 3, 4, &[2, 3]).len();
        if k % 50 == 0 {
            print!(".");
            std::io::stdout().flush().unwrap();
        }
    }
    println!();
    let mut poset_fail = 0usize;
    for p in [5usize, 6, 7] {
        for poset in random_posets(170, p, 900 + p as u64) {
            let reference = w_poly(&poset, WMethod::Recursion);
            for m in [WMethod::StingChains, WMethod::Nbc, WMethod::PathCoefficients] {
                if w_poly(&poset, m) != reference {
                    println!("W mismatch p={} {:?} method {}", p, poset, m);
                    poset_fail += 1;
                }
            }
        }
    }
    println!(
        "soak done in {:?}: {} failures, {} conjecture mismatches, {} characteristic findings, {} poset failures",
        t.elapsed(),
        failures,
        conjecture_mismatches,
        char_findings,
        poset_fail
    );
}
