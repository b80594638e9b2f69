//! Monomials as exponent vectors over a fixed set of variables `x1..xn`.

use std::fmt;

/// A monomial in `n` variables, stored as its exponent vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The single variable `x_{i+1}` (0-based index) in `n` variables.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn from_exponents(e: Vec<u32>) -> Self {
        Monomial(e)
    }

    pub fn n_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.0.len(), other.0.len());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Exact quotient `self / other`; panics unless `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Monomial {
        assert!(other.divides(self), "monomial quotient must be exact");
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    /// Degree-lexicographic comparison with `x1` heaviest: compare total
    /// degree first, then exponent vectors from `x1` on, larger exponent
    /// of an earlier variable meaning the larger monomial.
    pub fn cmp_deglex(&self, other: &Monomial) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }

    /// Pure lexicographic comparison with `x1 > x2 > ... > xn`.
    pub fn cmp_lex(&self, other: &Monomial) -> std::cmp::Ordering {
        self.0.cmp(&other.0)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{}", i + 1)?;
            } else {
                write!(f, "x{}^{}", i + 1, e)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn lcm_gcd_divides() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 0, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 1, 3]));
        assert_eq!(a.gcd(&b), m(&[1, 0, 0]));
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 1, 0]).is_coprime(&m(&[0, 0, 2])));
        assert!(m(&[1, 0, 0]).divides(&a));
        assert_eq!(a.div(&m(&[1, 1, 0])), m(&[1, 0, 0]));
    }

    #[test]
    fn deglex_order_puts_x1_heaviest() {
        // x1*x2 > x1*x3 > x2*x3 within degree 2
        let x1x2 = m(&[1, 1, 0]);
        let x1x3 = m(&[1, 0, 1]);
        let x2x3 = m(&[0, 1, 1]);
        assert_eq!(x1x2.cmp_deglex(&x1x3), std::cmp::Ordering::Greater);
        assert_eq!(x1x3.cmp_deglex(&x2x3), std::cmp::Ordering::Greater);
        // degree dominates
        assert_eq!(x1x2.cmp_deglex(&m(&[0, 0, 3])), std::cmp::Ordering::Less);
    }

    #[test]
    fn display_forms() {
        assert_eq!(m(&[0, 0]).to_string(), "1");
        assert_eq!(m(&[1, 2]).to_string(), "x1*x2^2");
    }
}
