//! Monomial ideals given by their minimal generating system, generator
//! subsets with cached lcm and component data, and polarization.

use crate::monomial::Monomial;
use std::fmt;

/// Generator masks are machine words; ideals above this cap are rejected.
pub const DEFAULT_GEN_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealError {
    NoVariables,
    UnitGenerator,
    WrongLength { expected: usize, got: usize },
    TooManyGenerators { count: usize, cap: usize },
    NonMinimalOrder,
}

impl fmt::Display for IdealError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealError::NoVariables => write!(f, "variable count must be positive"),
            IdealError::UnitGenerator => {
                write!(f, "generator with all exponents zero defines the unit ideal")
            }
            IdealError::WrongLength { expected, got } => {
                write!(f, "monomial has {} exponents, expected {}", got, expected)
            }
            IdealError::TooManyGenerators { count, cap } => {
                write!(f, "{} generators exceed the cap of {}", count, cap)
            }
            IdealError::NonMinimalOrder => {
                write!(f, "explicit generator order must already be minimal")
            }
        }
    }
}

impl std::error::Error for IdealError {}

/// A monomial ideal with a fixed ordered minimal generating system.
#[derive(Clone, PartialEq, Eq)]
pub struct MonomialIdeal {
    n: usize,
    gens: Vec<Monomial>,
}

/// Drop generators divisible by another one and apply the canonical order
/// (total degree, then lexicographic with `x1` heaviest, larger first
/// within a degree so `x1*x2` precedes `x2*x3`).
pub fn minimalize_generators(raw: Vec<Monomial>, n: usize) -> Result<MonomialIdeal, IdealError> {
    minimalize_with_cap(raw, n, DEFAULT_GEN_CAP)
}

pub fn minimalize_with_cap(
    raw: Vec<Monomial>,
    n: usize,
    cap: usize,
) -> Result<MonomialIdeal, IdealError> {
    if n == 0 {
        return Err(IdealError::NoVariables);
    }
    for g in &raw {
        if g.n_vars() != n {
            return Err(IdealError::WrongLength {
                expected: n,
                got: g.n_vars(),
            });
        }
        if g.is_one() {
            return Err(IdealError::UnitGenerator);
        }
    }
    let mut gens: Vec<Monomial> = Vec::new();
    for g in &raw {
        let has_proper_divisor = raw.iter().any(|h| h != g && h.divides(g));
        if !has_proper_divisor && !gens.contains(g) {
            gens.push(g.clone());
        }
    }
    gens.sort_by(|a, b| {
        a.total_degree()
            .cmp(&b.total_degree())
            .then_with(|| b.cmp_lex(a))
    });
    if gens.len() > cap {
        return Err(IdealError::TooManyGenerators {
            count: gens.len(),
            cap,
        });
    }
    Ok(MonomialIdeal { n, gens })
}

impl MonomialIdeal {
    /// Build an ideal keeping the caller's generator order. The list must
    /// already be minimal; intended for order-sensitive constructions.
    pub fn with_order(gens: Vec<Monomial>, n: usize) -> Result<MonomialIdeal, IdealError> {
        let minimal = minimalize_with_cap(gens.clone(), n, DEFAULT_GEN_CAP)?;
        if minimal.gens.len() != gens.len() {
            return Err(IdealError::NonMinimalOrder);
        }
        Ok(MonomialIdeal { n, gens })
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn n_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    /// True when a monomial lies in the ideal.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// All generators have the given total degree.
    pub fn is_equigenerated(&self, degree: u32) -> bool {
        self.gens.iter().all(|g| g.total_degree() == degree)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(|g| g.is_squarefree())
    }

    pub fn subset(&self, mask: u64) -> GenSubset {
        assert!(mask < (1u64 << self.gens.len()), "mask out of range");
        let mut lcm = Monomial::one(self.n);
        for i in 0..self.gens.len() {
            if mask >> i & 1 == 1 {
                lcm = lcm.lcm(&self.gens[i]);
            }
        }
        let (cl, _) = component_classes(self, mask);
        GenSubset { mask, lcm, cl }
    }

    /// lcm of the generators selected by `mask`.
    pub fn lcm_of(&self, mask: u64) -> Monomial {
        let mut lcm = Monomial::one(self.n);
        for i in 0..self.gens.len() {
            if mask >> i & 1 == 1 {
                lcm = lcm.lcm(&self.gens[i]);
            }
        }
        lcm
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g)?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A subset of generator indices with its cached lcm and component count.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GenSubset {
    pub mask: u64,
    pub lcm: Monomial,
    pub cl: usize,
}

impl GenSubset {
    pub fn cardinality(&self) -> usize {
        self.mask.count_ones() as usize
    }
}

/// Connected components of the selected generators under the transitive
/// closure of "shares a variable". Returns the component count `cl` and
/// the component masks (empty mask gives `cl = 0`).
pub fn component_classes(ideal: &MonomialIdeal, mask: u64) -> (usize, Vec<u64>) {
    let members: Vec<usize> = (0..ideal.n_gens()).filter(|&i| mask >> i & 1 == 1).collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for a in 0..members.len() {
        for b in a + 1..members.len() {
            if !ideal.gens()[members[a]].is_coprime(&ideal.gens()[members[b]]) {
                let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                if ra != rb {
                    parent[ra] = rb;
                }
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
    for a in 0..members.len() {
        let r = find(&mut parent, a);
        *comps.entry(r).or_insert(0) |= 1u64 << members[a];
    }
    let mut out: Vec<u64> = comps.into_values().collect();
    out.sort();
    (out.len(), out)
}

/// Provenance of polarized variables: for each new variable, the original
/// variable index and the 1-based copy number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolarizationMap {
    pub var_origin: Vec<(usize, u32)>,
}

/// Standard polarization: exponent `e` of variable `i` splits into `e`
/// distinct squarefree variables. Squarefree ideals map to themselves.
pub fn polarize(ideal: &MonomialIdeal) -> (MonomialIdeal, PolarizationMap) {
    let n = ideal.n_vars();
    let mut max_exp = vec![0u32; n];
    for g in ideal.gens() {
        for i in 0..n {
            max_exp[i] = max_exp[i].max(g.exponent(i));
        }
    }
    // Variables with no occurrence keep one copy so variable indices stay
    // meaningful for series comparisons.
    let mut var_origin = Vec::new();
    let mut offset = vec![0usize; n];
    for i in 0..n {
        offset[i] = var_origin.len();
        for c in 0..max_exp[i].max(1) {
            var_origin.push((i, c + 1));
        }
    }
    let new_n = var_origin.len();
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let mut e = vec![0u32; new_n];
            for i in 0..n {
                for c in 0..g.exponent(i) {
                    e[offset[i] + c as usize] = 1;
                }
            }
            Monomial::from_exponents(e)
        })
        .collect();
    let out = MonomialIdeal { n: new_n, gens };
    (out, PolarizationMap { var_origin })
}

/// Parse the ideal text format: a `vars: n` header, then one monomial per
/// line in product form (`x1*x2^2`) or exponent-vector form (`[1,2,0]`).
/// `#` starts a comment.
pub fn parse_ideal(text: &str) -> Result<MonomialIdeal, ParseError> {
    let mut n: Option<usize> = None;
    let mut raw = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("vars:") {
            if n.is_some() {
                return Err(ParseError::new(lineno + 1, "duplicate vars header"));
            }
            let v: usize = rest
                .trim()
                .parse()
                .map_err(|_| ParseError::new(lineno + 1, "invalid variable count"))?;
            if v == 0 {
                return Err(ParseError::new(lineno + 1, "variable count must be positive"));
            }
            n = Some(v);
            continue;
        }
        let n = n.ok_or_else(|| ParseError::new(lineno + 1, "missing `vars: n` header"))?;
        raw.push(parse_monomial(line, n).map_err(|msg| ParseError::new(lineno + 1, &msg))?);
    }
    let n = n.ok_or_else(|| ParseError::new(0, "missing `vars: n` header"))?;
    minimalize_generators(raw, n).map_err(|e| ParseError::new(0, &e.to_string()))
}

pub fn parse_monomial(s: &str, n: usize) -> Result<Monomial, String> {
    let s = s.trim();
    if let Some(body) = s.strip_prefix('[') {
        let body = body
            .strip_suffix(']')
            .ok_or_else(|| "unterminated exponent vector".to_string())?;
        let exps: Result<Vec<u32>, _> = body
            .split(',')
            .map(|p| p.trim().parse::<u32>())
            .collect();
        let exps = exps.map_err(|_| "invalid exponent".to_string())?;
        if exps.len() != n {
            return Err(format!("expected {} exponents, got {}", n, exps.len()));
        }
        return Ok(Monomial::from_exponents(exps));
    }
    let mut e = vec![0u32; n];
    if s == "1" {
        return Ok(Monomial::from_exponents(e));
    }
    for factor in s.split('*') {
        let factor = factor.trim();
        let rest = factor
            .strip_prefix('x')
            .ok_or_else(|| format!("expected variable `x<i>`, got `{}`", factor))?;
        let (idx, pow) = match rest.find('^') {
            Some(p) => (&rest[..p], rest[p + 1..].parse::<u32>().map_err(|_| "invalid power")?),
            None => (rest, 1),
        };
        let idx: usize = idx.parse().map_err(|_| format!("invalid variable `{}`", factor))?;
        if idx == 0 || idx > n {
            return Err(format!("variable x{} out of range 1..{}", idx, n));
        }
        e[idx - 1] += pow;
    }
    Ok(Monomial::from_exponents(e))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    fn new(line: usize, message: &str) -> Self {
        ParseError {
            line,
            message: message.to_string(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line > 0 {
            write!(f, "line {}: {}", self.line, self.message)
        } else {
            write!(f, "{}", self.message)
        }
    }
}

impl std::error::Error for ParseError {}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    fn ideal(gens: &[&[u32]], n: usize) -> MonomialIdeal {
        minimalize_generators(gens.iter().map(|e| m(e)).collect(), n).unwrap()
    }

    #[test]
    fn minimalize_drops_multiples() {
        // [xy, xyz, yz] -> [xy, yz]
        let a = ideal(&[&[1, 1, 0], &[1, 1, 1], &[0, 1, 1]], 3);
        assert_eq!(a.gens(), &[m(&[1, 1, 0]), m(&[0, 1, 1])]);
        // already minimal
        let b = ideal(&[&[1, 1, 0], &[0, 1, 1]], 3);
        assert_eq!(b.gens(), &[m(&[1, 1, 0]), m(&[0, 1, 1])]);
        // [x^2, x^2 y, x y^3] -> [x^2, x y^3]
        let c = ideal(&[&[2, 0], &[2, 1], &[1, 3]], 2);
        assert_eq!(c.gens(), &[m(&[2, 0]), m(&[1, 3])]);
    }

    #[test]
    fn minimalize_rejects_bad_input() {
        assert!(matches!(
            minimalize_generators(vec![m(&[0, 0])], 2),
            Err(IdealError::UnitGenerator)
        ));
        assert!(matches!(
            minimalize_generators(vec![], 0),
            Err(IdealError::NoVariables)
        ));
        assert!(matches!(
            minimalize_generators(vec![m(&[1])], 2),
            Err(IdealError::WrongLength { .. })
        ));
    }

    #[test]
    fn component_classes_examples() {
        // <xy, yz>: the pair shares y
        let a = ideal(&[&[1, 1, 0], &[0, 1, 1]], 3);
        assert_eq!(component_classes(&a, 0b11).0, 1);
        // <xy, zw>: coprime pair
        let b = ideal(&[&[1, 1, 0, 0], &[0, 0, 1, 1]], 4);
        assert_eq!(component_classes(&b, 0b11).0, 2);
        // 5-gon: connected cycle
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
        assert_eq!(component_classes(&pentagon, 0b11111).0, 1);
        assert_eq!(component_classes(&pentagon, 0).0, 0);
    }

    #[test]
    fn subset_caches_lcm_and_cl() {
        let b = ideal(&[&[1, 1, 0, 0], &[0, 0, 1, 1]], 4);
        let s = b.subset(0b11);
        assert_eq!(s.lcm, m(&[1, 1, 1, 1]));
        assert_eq!(s.cl, 2);
        assert_eq!(s.cardinality(), 2);
    }

    #[test]
    fn polarize_examples() {
        // <x^2> in 1 var -> squarefree in 2 vars
        let a = ideal(&[&[2]], 1);
        let (pa, map) = polarize(&a);
        assert_eq!(pa.n_vars(), 2);
        assert_eq!(pa.gens(), &[m(&[1, 1])]);
        assert_eq!(map.var_origin, vec![(0, 1), (0, 2)]);
        // squarefree ideal is fixed
        let b = ideal(&[&[1, 1, 0], &[0, 1, 1]], 3);
        let (pb, _) = polarize(&b);
        assert_eq!(pb.gens(), b.gens());
        // <x^2 y, y^3>
        let c = ideal(&[&[2, 1], &[0, 3]], 2);
        let (pc, _) = polarize(&c);
        // new vars: x(1) x(2) y(1) y(2) y(3)
        assert_eq!(pc.n_vars(), 5);
        assert_eq!(
            pc.gens(),
            &[m(&[1, 1, 1, 0, 0]), m(&[0, 0, 1, 1, 1])]
        );
    }

    #[test]
    fn parse_both_forms() {
        let text = "vars: 3\n# triangle\nx1*x2\n[1,0,1]\nx2*x3\n";
        let a = parse_ideal(text).unwrap();
        assert_eq!(a.n_gens(), 3);
        assert_eq!(a.gens()[0], m(&[1, 1, 0]));
        let err = parse_ideal("x1*x2\n").unwrap_err();
        assert_eq!(err.line, 1);
        let err = parse_ideal("vars: 2\nx3\n").unwrap_err();
        assert_eq!(err.line, 2);
    }
}
