//! Multigraded Betti tables: homological degree and multidegree to rank.

use crate::monomial::Monomial;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    pub fn new() -> Self {
        BettiTable {
            entries: BTreeMap::new(),
        }
    }

    pub fn add(&mut self, i: usize, alpha: Monomial, dim: usize) {
        if dim > 0 {
            *self.entries.entry((i, alpha)).or_insert(0) += dim;
        }
    }

    pub fn get(&self, i: usize, alpha: &Monomial) -> usize {
        self.entries.get(&(i, alpha.clone())).copied().unwrap_or(0)
    }

    /// Total Betti number in homological degree `i`.
    pub fn total(&self, i: usize) -> usize {
        self.entries
            .iter()
            .filter(|((d, _), _)| *d == i)
            .map(|(_, v)| *v)
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        self.entries.keys().map(|(d, _)| *d).max().unwrap_or(0)
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((i, alpha), dim) in &self.entries {
            writeln!(f, "i={} alpha={} dim={}", i, alpha, dim)?;
        }
        Ok(())
    }
}
