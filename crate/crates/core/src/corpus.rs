//! The built-in corpus: named small ideals and posets exercised by the
//! self test and the acceptance suite, plus seeded random families.

use crate::ideal::{minimalize_generators, MonomialIdeal};
use crate::monomial::Monomial;
use crate::poset::Poset;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn mk(gens: &[&[u32]], n: usize) -> MonomialIdeal {
    let raw = gens
        .iter()
        .map(|e| Monomial::from_exponents(e.to_vec()))
        .collect();
    minimalize_generators(raw, n).expect("corpus entries are valid")
}

/// Cycle over `n` vertices as a quadratic squarefree ideal.
pub fn cycle_ideal(n: usize) -> MonomialIdeal {
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for i in 0..n {
        let mut e = vec![0u32; n];
        e[i] = 1;
        e[(i + 1) % n] = 1;
        gens.push(e);
    }
    mk(&gens.iter().map(|v| v.as_slice()).collect::<Vec<_>>(), n)
}

/// Path over `n` vertices as a quadratic squarefree ideal.
pub fn path_ideal(n: usize) -> MonomialIdeal {
    let mut gens: Vec<Vec<u32>> = Vec::new();
    for i in 0..n - 1 {
        let mut e = vec![0u32; n];
        e[i] = 1;
        e[i + 1] = 1;
        gens.push(e);
    }
    mk(&gens.iter().map(|v| v.as_slice()).collect::<Vec<_>>(), n)
}

pub fn pentagon() -> MonomialIdeal {
    cycle_ideal(5)
}

pub fn triangle() -> MonomialIdeal {
    cycle_ideal(3)
}

/// Named corpus ideals. Small on purpose: every acceptance criterion
/// runs over all of these.
pub fn corpus_ideals() -> Vec<(&'static str, MonomialIdeal)> {
    vec![
        ("single-edge", mk(&[&[1, 1]], 2)),
        ("path3", path_ideal(3)),
        ("path4", path_ideal(4)),
        ("path5", path_ideal(5)),
        ("triangle", triangle()),
        ("square", cycle_ideal(4)),
        ("pentagon", pentagon()),
        ("star4", mk(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[1, 0, 0, 1]], 4)),
        (
            "whiskered-triangle",
            mk(&[&[1, 1, 0, 0], &[1, 0, 1, 0], &[0, 1, 1, 0], &[0, 0, 1, 1]], 4),
        ),
        (
            "chorded-square",
            mk(
                &[&[1, 1, 0, 0], &[0, 1, 1, 0], &[0, 0, 1, 1], &[1, 0, 0, 1], &[1, 0, 1, 0]],
                4,
            ),
        ),
        ("two-edges", mk(&[&[1, 1, 0, 0], &[0, 0, 1, 1]], 4)),
        ("bridged-edges", mk(&[&[1, 1, 0, 0], &[0, 0, 1, 1], &[0, 1, 1, 0]], 4)),
        ("one-squared", mk(&[&[2]], 1)),
        ("powers-ci", mk(&[&[2, 0], &[0, 3]], 2)),
        ("mixed-powers", mk(&[&[2, 1], &[0, 3]], 2)),
        ("generic3", mk(&[&[3, 1, 0], &[1, 0, 2], &[0, 2, 1]], 3)),
        ("ci3", mk(&[&[2, 0, 0], &[0, 2, 0], &[0, 0, 2]], 3)),
        ("square-with-powers", mk(&[&[2, 1, 0], &[0, 1, 2], &[1, 0, 1]], 3)),
    ]
}

/// The quadratic squarefree members.
pub fn degree_two_corpus() -> Vec<(&'static str, MonomialIdeal)> {
    corpus_ideals()
        .into_iter()
        .filter(|(_, a)| a.is_squarefree() && a.is_equigenerated(2))
        .collect()
}

/// Members whose full subset complex is already minimal.
pub fn taylor_minimal_corpus() -> Vec<(&'static str, MonomialIdeal)> {
    corpus_ideals()
        .into_iter()
        .filter(|(_, a)| crate::golod::taylor_is_minimal(a))
        .collect()
}

/// Members with a strong-gcd order (within the search cap).
pub fn strong_gcd_corpus() -> Vec<(&'static str, MonomialIdeal)> {
    corpus_ideals()
        .into_iter()
        .filter(|(_, a)| crate::golod::strong_gcd_condition(a).witness().is_some())
        .collect()
}

/// Named corpus posets.
pub fn corpus_posets() -> Vec<(&'static str, Poset)> {
    vec![
        ("chain3", Poset::chain(3)),
        ("chain5", Poset::chain(5)),
        ("antichain2", Poset::antichain(2)),
        ("antichain3", Poset::antichain(3)),
        ("antichain4", Poset::antichain(4)),
        ("antichain5", Poset::antichain(5)),
        ("v", Poset::from_relations(3, &[(1, 2), (1, 3)]).unwrap()),
        ("lambda", Poset::from_relations(3, &[(1, 3), (2, 3)]).unwrap()),
        (
            "diamond",
            Poset::from_relations(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]).unwrap(),
        ),
        ("n-poset", Poset::from_relations(4, &[(1, 3), (2, 3), (2, 4)]).unwrap()),
        (
            "fence5",
            Poset::from_relations(5, &[(1, 3), (2, 3), (2, 5), (4, 5)]).unwrap(),
        ),
        ("two-plus-two", Poset::from_relations(4, &[(1, 2), (3, 4)]).unwrap()),
        ("three-plus-one", Poset::from_relations(4, &[(1, 2), (2, 3)]).unwrap()),
        (
            "mixed5",
            Poset::from_relations(5, &[(1, 4), (2, 4), (2, 5), (3, 5)]).unwrap(),
        ),
    ]
}

/// Seeded random monomial ideals with at most 5 variables and 8
/// generators, all inside the square of the maximal ideal (a linear
/// generator just deletes a variable and falsifies the closed series
/// forms, so the random families stay in degree two and up).
pub fn random_ideals(count: usize, seed: u64) -> Vec<MonomialIdeal> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=5);
        let raw_count = rng.gen_range(2..=6);
        let mut raw = Vec::new();
        for _ in 0..raw_count {
            let mut e = vec![0u32; n];
            let support = rng.gen_range(1..=3usize.min(n));
            let mut placed = 0;
            while placed < support {
                let v = rng.gen_range(0..n);
                if e[v] == 0 {
                    e[v] = if support == 1 {
                        rng.gen_range(2..=3)
                    } else {
                        rng.gen_range(1..=2)
                    };
                    placed += 1;
                }
            }
            raw.push(Monomial::from_exponents(e));
        }
        if let Ok(ideal) = minimalize_generators(raw, n) {
            if !ideal.is_empty() && ideal.n_gens() <= 8 {
                out.push(ideal);
            }
        }
    }
    out
}

/// Seeded random naturally labeled posets with mixed edge densities.
pub fn random_posets(count: usize, p: usize, seed: u64) -> Vec<Poset> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let densities = [0.15, 0.3, 0.5, 0.7];
    (0..count)
        .map(|k| crate::poset::random_poset(p, densities[k % densities.len()], &mut rng))
        .collect()
}
