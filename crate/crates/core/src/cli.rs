//! Command-line front end: parse ideals or posets, run the requested
//! computation, and print text or structured reports deterministically.
//!
//! Exit codes: 0 success, 1 usage or parse failure, 2 computation could
//! not be decided within bounds, 3 an invariant violation was detected.

use crate::checks;
use crate::corpus;
use crate::golod::{golod_verdict, StrongGcdOutcome, Verdict};
use crate::ideal::{parse_ideal, MonomialIdeal};
use crate::koszul::KoszulOracle;
use crate::linalg::{is_prime, FieldCtx, PrimeField, Rationals};
use crate::poset::{
    full_language_counts, language_counts, parse_poset, r_monomial_counts, w_poly, WMethod,
    WordLanguageSpec,
};
use crate::series::{
    conjectured_poincare, golod_series, hilbert_series, FracForm, SeriesExpansion, SubsetMode,
};
use crate::taylor::{build_taylor, standard_matching, Policy};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::path::PathBuf;

pub const SCHEMA: &str = "tmorse.v1";

#[derive(Parser)]
#[command(
    name = "tmorse",
    about = "Resolutions, series, and Golod classification of monomial ideals",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// truncation bound for internal degrees
    #[arg(long, global = true, default_value_t = 8)]
    bound_d: u32,
    /// truncation bound for homological degrees
    #[arg(long, global = true, default_value_t = 6)]
    bound_h: usize,
    /// field characteristic: 0 or a prime
    #[arg(long = "char", global = true, default_value_t = 0)]
    characteristic: u64,
    /// tie-break policy for the greedy matching
    #[arg(long, global = true, value_enum, default_value_t = PolicyArg::Lexfirst)]
    policy: PolicyArg,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PolicyArg {
    Lexfirst,
    Maskfirst,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Policy {
        match p {
            PolicyArg::Lexfirst => Policy::LexFirst,
            PolicyArg::Maskfirst => Policy::MaskFirst,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Recursion,
    StingChains,
    Nbc,
    PathCoeffs,
}

impl From<MethodArg> for WMethod {
    fn from(m: MethodArg) -> WMethod {
        match m {
            MethodArg::Recursion => WMethod::Recursion,
            MethodArg::StingChains => WMethod::StingChains,
            MethodArg::Nbc => WMethod::Nbc,
            MethodArg::PathCoeffs => WMethod::PathCoefficients,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Multigraded Hilbert series of the quotient
    Hilbert { input: PathBuf },
    /// Conjectured multigraded Poincare-Betti series
    Poincare {
        input: PathBuf,
        /// also print the Golod bound series and compare
        #[arg(long)]
        golod_bound: bool,
    },
    /// Multigraded Betti numbers of the quotient
    Betti { input: PathBuf },
    /// Build, validate, and dump the standard matching
    Matching { input: PathBuf },
    /// Koszul homology dimensions and the product table
    Koszul { input: PathBuf },
    /// Golod classification report
    Golod { input: PathBuf },
    /// Denominator polynomial of an order complex by each method
    Poset {
        input: PathBuf,
        #[arg(long, value_enum)]
        method: Option<MethodArg>,
    },
    /// Word language counts against the ring counts
    Language {
        input: PathBuf,
        /// 1-based start variable; all words of one start language
        #[arg(long)]
        start: Option<usize>,
        #[arg(long, default_value_t = 6)]
        length: usize,
    },
    /// Run the invariant batteries on the built-in corpus
    Selftest,
}

pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // keep help and version on stdout with success
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    if cli.characteristic != 0 && !is_prime(cli.characteristic) {
        eprintln!("--char must be 0 or a prime, got {}", cli.characteristic);
        return 1;
    }
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            1
        }
    }
}

fn read_ideal(path: &PathBuf) -> Result<MonomialIdeal, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {}", path.display(), e))?;
    parse_ideal(&text).map_err(|e| format!("{}: {}", path.display(), e))
}

fn series_records(s: &SeriesExpansion) -> serde_json::Value {
    let records: Vec<serde_json::Value> = s
        .terms
        .iter()
        .map(|((alpha, t), c)| {
            json!({
                "alpha": alpha,
                "t": t,
                "coeff": { "num": c.numer().to_string(), "den": c.denom().to_string() },
            })
        })
        .collect();
    json!(records)
}

fn print_series_text(s: &SeriesExpansion) {
    for ((alpha, t), c) in &s.terms {
        let mono = crate::monomial::Monomial::from_exponents(alpha.clone());
        println!("  [{}] t^{} : {}", mono, t, c);
    }
}

fn print_form(label: &str, form: &FracForm) {
    println!("{}: numerator   {}", label, form.num);
    println!("{}: denominator {}", label, form.den);
}

fn run(cli: Cli) -> Result<i32, String> {
    let d = cli.bound_d;
    let h = cli.bound_h;
    if d == 0 || h == 0 {
        return Err("bounds must be positive".to_string());
    }
    match &cli.command {
        Command::Hilbert { input } => {
            let ideal = read_ideal(input)?;
            let (form, expansion) =
                hilbert_series(&ideal, SubsetMode::AllSubsets, d).map_err(|e| e.to_string())?;
            match cli.format {
                Format::Text => {
                    println!("ideal: {}", ideal);
                    print_form("hilbert", &form);
                    println!("expansion to total degree {}:", d);
                    print_series_text(&expansion);
                }
                Format::Structured => {
                    let v = json!({
                        "schema": SCHEMA,
                        "command": "hilbert",
                        "ideal": ideal.to_string(),
                        "numerator": form.num.to_string(),
                        "denominator": form.den.to_string(),
                        "bound_d": d,
                        "expansion": series_records(&expansion),
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            Ok(0)
        }
        Command::Poincare { input, golod_bound } => {
            let ideal = read_ideal(input)?;
            let sm = match standard_matching(&ideal, cli.policy.into()) {
                Ok(sm) => sm,
                Err(e) => {
                    eprintln!("matching construction failed: {}", e);
                    return Ok(2);
                }
            };
            let p = conjectured_poincare(&ideal, &sm.m1_survivors(), h as u32 + d);
            let code = if p.negative_terms.is_empty() { 0 } else { 3 };
            match cli.format {
                Format::Text => {
                    println!("ideal: {}", ideal);
                    print_form("poincare", &p.form);
                    println!("expansion to weight {}:", h as u32 + d);
                    print_series_text(&p.expansion);
                    if !p.negative_terms.is_empty() {
                        println!("negative coefficients found (closed form falsified):");
                        for ((alpha, t), c) in &p.negative_terms {
                            let mono = crate::monomial::Monomial::from_exponents(alpha.clone());
                            println!("  [{}] t^{} : {}", mono, t, c);
                        }
                    }
                    if *golod_bound {
                        let field = Rationals;
                        let bound = KoszulOracle::<Rationals>::product_bound(&ideal);
                        let mut oracle = KoszulOracle::new(&ideal, field, bound);
                        let betti = oracle.betti_table();
                        let (bform, bseries) =
                            golod_series(ideal.n_vars(), &betti, h as u32 + d);
                        print_form("golod-bound", &bform);
                        let equal = bseries == p.expansion;
                        println!("conjectured series attains the Golod bound: {}", equal);
                    }
                }
                Format::Structured => {
                    let negatives: Vec<serde_json::Value> = p
                        .negative_terms
                        .iter()
                        .map(|((alpha, t), c)| {
                            json!({
                                "alpha": alpha,
                                "t": t,
                                "coeff": { "num": c.numer().to_string(), "den": c.denom().to_string() },
                            })
                        })
                        .collect();
                    let mut v = json!({
                        "schema": SCHEMA,
                        "command": "poincare",
                        "ideal": ideal.to_string(),
                        "numerator": p.form.num.to_string(),
                        "denominator": p.form.den.to_string(),
                        "bound_h": h,
                        "bound_d": d,
                        "minimal_matching": sm.minimal,
                        "negative_terms": negatives,
                        "expansion": series_records(&p.expansion),
                    });
                    if *golod_bound {
                        let bound = KoszulOracle::<Rationals>::product_bound(&ideal);
                        let mut oracle = KoszulOracle::new(&ideal, Rationals, bound);
                        let betti = oracle.betti_table();
                        let (bform, bseries) =
                            golod_series(ideal.n_vars(), &betti, h as u32 + d);
                        v["golod_bound_denominator"] = json!(bform.den.to_string());
                        v["attains_golod_bound"] = json!(bseries == p.expansion);
                    }
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            Ok(code)
        }
        Command::Betti { input } => {
            let ideal = read_ideal(input)?;
            fn compute<F: FieldCtx>(ideal: &MonomialIdeal, field: &F) -> crate::betti::BettiTable {
                let bound = KoszulOracle::<F>::product_bound(ideal);
                let mut oracle = KoszulOracle::new(ideal, field.clone(), bound);
                oracle.betti_table()
            }
            let table = if cli.characteristic == 0 {
                compute(&ideal, &Rationals)
            } else {
                compute(&ideal, &PrimeField::new(cli.characteristic))
            };
            match cli.format {
                Format::Text => {
                    println!("ideal: {}", ideal);
                    println!("char: {}", cli.characteristic);
                    print!("{}", table);
                }
                Format::Structured => {
                    let records: Vec<serde_json::Value> = table
                        .entries
                        .iter()
                        .map(|((i, alpha), dim)| {
                            json!({"i": i, "alpha": alpha.0, "dim": dim})
                        })
                        .collect();
                    let v = json!({
                        "schema": SCHEMA,
                        "command": "betti",
                        "ideal": ideal.to_string(),
                        "char": cli.characteristic,
                        "table": records,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            Ok(0)
        }
        Command::Matching { input } => {
            let ideal = read_ideal(input)?;
            let sm = match standard_matching(&ideal, cli.policy.into()) {
                Ok(sm) => sm,
                Err(e) => {
                    eprintln!("matching construction failed: {}", e);
                    return Ok(2);
                }
            };
            let taylor = build_taylor(&ideal, false).map_err(|e| e.to_string())?;
            let matching = sm.as_matching();
            let report =
                crate::complex::validate_matching(&taylor, &sm.m1_matching())
                    .map_err(|e| e.to_string())?;
            match cli.format {
                Format::Text => {
                    println!("ideal: {}", ideal);
                    println!("policy: {}", sm.policy);
                    println!("minimal: {}", sm.minimal);
                    println!("first sequence on the full complex: {}", report.summary());
                    print!("{}", matching.dump(&taylor));
                    println!("terminal complex:");
                    print!("{}", sm.final_complex.dump());
                }
                Format::Structured => {
                    let edges: Vec<serde_json::Value> = matching
                        .edges
                        .iter()
                        .map(|e| json!({"seq": e.seq, "upper": e.upper.1, "lower": e.lower.1}))
                        .collect();
                    let v = json!({
                        "schema": SCHEMA,
                        "command": "matching",
                        "ideal": ideal.to_string(),
                        "policy": sm.policy.to_string(),
                        "minimal": sm.minimal,
                        "edges": edges,
                        "survivors": sm.final_survivors(),
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            if sm.minimal {
                Ok(0)
            } else {
                Ok(2)
            }
        }
        Command::Koszul { input } => {
            let ideal = read_ideal(input)?;
            koszul_command(&ideal, cli.characteristic, cli.format)
        }
        Command::Golod { input } => {
            let ideal = read_ideal(input)?;
            let report = if cli.characteristic == 0 {
                golod_verdict(&ideal, h, d, &Rationals)
            } else {
                golod_verdict(&ideal, h, d, &PrimeField::new(cli.characteristic))
            };
            match cli.format {
                Format::Text => {
                    println!("ideal: {}", ideal);
                    print!("{}", report);
                }
                Format::Structured => {
                    let strong = match &report.strong_gcd {
                        StrongGcdOutcome::Witness(w) => {
                            json!({"outcome": "witness", "order": w})
                        }
                        StrongGcdOutcome::Refuted => json!({"outcome": "refuted"}),
                        StrongGcdOutcome::CapExceeded => json!({"outcome": "cap-exceeded"}),
                    };
                    let v = json!({
                        "schema": SCHEMA,
                        "command": "golod",
                        "ideal": ideal.to_string(),
                        "bounds": {"h": h, "d": d},
                        "gcd_condition": report.gcd_condition,
                        "strong_gcd": strong,
                        "pairwise_noncoprime": report.pairwise_noncoprime,
                        "product_trivial": report.product_trivial,
                        "product_witness": report.product_witness_expansion,
                        "series_match": report.series_match,
                        "degree_bound_golod": report.degree_bound_golod,
                        "proved_class": report.proved_class,
                        "verdict": report.verdict.to_string(),
                        "provenance": report.provenance,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            match report.verdict {
                Verdict::Undetermined => Ok(2),
                _ => Ok(0),
            }
        }
        Command::Poset { input, method } => {
            let text = std::fs::read_to_string(input)
                .map_err(|e| format!("{}: {}", input.display(), e))?;
            let poset =
                parse_poset(&text).map_err(|e| format!("{}: {}", input.display(), e))?;
            let methods: Vec<WMethod> = match method {
                Some(m) => vec![(*m).into()],
                None => WMethod::ALL.to_vec(),
            };
            let polys: Vec<(WMethod, crate::series::MGPoly)> = methods
                .iter()
                .map(|m| (*m, w_poly(&poset, *m)))
                .collect();
            let agree = polys.windows(2).all(|w| w[0].1 == w[1].1);
            match cli.format {
                Format::Text => {
                    println!("poset on {} elements", poset.len());
                    println!("order complex ideal: {}", poset.order_complex_ideal());
                    for (m, p) in &polys {
                        println!("W ({}): {}", m, p);
                    }
                    if polys.len() > 1 {
                        println!("methods agree: {}", agree);
                    }
                }
                Format::Structured => {
                    let per: Vec<serde_json::Value> = polys
                        .iter()
                        .map(|(m, p)| json!({"method": m.to_string(), "w": p.to_string()}))
                        .collect();
                    let v = json!({
                        "schema": SCHEMA,
                        "command": "poset",
                        "p": poset.len(),
                        "ideal": poset.order_complex_ideal().to_string(),
                        "w": per,
                        "agree": agree,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            if agree {
                Ok(0)
            } else {
                Ok(3)
            }
        }
        Command::Language { input, start, length } => {
            let ideal = read_ideal(input)?;
            if !(ideal.is_squarefree() && ideal.is_equigenerated(2)) {
                return Err(
                    "language counts need a squarefree ideal generated in degree two".to_string(),
                );
            }
            let lang = match start {
                Some(j) => {
                    if *j == 0 || *j > ideal.n_vars() {
                        return Err(format!("start variable {} out of range", j));
                    }
                    language_counts(&WordLanguageSpec {
                        ideal: ideal.clone(),
                        start: j - 1,
                        max_len: *length,
                    })
                }
                None => full_language_counts(&ideal, *length),
            };
            let ring = r_monomial_counts(&ideal, *length).map_err(|e| e.to_string())?;
            let compare_full = start.is_none();
            let counts_equal = !compare_full || lang == ring;
            match cli.format {
                Format::Text => {
                    println!("ideal: {}", ideal);
                    for ((len, alpha), c) in &lang {
                        println!("  length {} [{}] : {}", len, alpha, c);
                    }
                    if compare_full {
                        println!("word counts equal ring monomial counts: {}", counts_equal);
                    }
                }
                Format::Structured => {
                    let records: Vec<serde_json::Value> = lang
                        .iter()
                        .map(|((len, alpha), c)| {
                            json!({"length": len, "alpha": alpha.0, "count": c})
                        })
                        .collect();
                    let v = json!({
                        "schema": SCHEMA,
                        "command": "language",
                        "ideal": ideal.to_string(),
                        "start": start,
                        "length": length,
                        "counts": records,
                        "matches_ring": if compare_full { Some(counts_equal) } else { None },
                    });
                    println!("{}", serde_json::to_string_pretty(&v).unwrap());
                }
            }
            if counts_equal {
                Ok(0)
            } else {
                Ok(3)
            }
        }
        Command::Selftest => Ok(selftest()),
    }
}

fn koszul_command(ideal: &MonomialIdeal, characteristic: u64, format: Format) -> Result<i32, String> {
    fn inner<F: FieldCtx>(
        ideal: &MonomialIdeal,
        field: &F,
        format: Format,
        characteristic: u64,
    ) -> Result<i32, String> {
        let bound = KoszulOracle::<F>::product_bound(ideal);
        let mut oracle = KoszulOracle::new(ideal, field.clone(), bound);
        let table = oracle.betti_table();
        let classes = oracle.positive_classes();
        let mut products: Vec<(String, String, String)> = Vec::new();
        let mut trivial = true;
        for a in 0..classes.len() {
            for b in a..classes.len() {
                let expansion = oracle
                    .product(&classes[a], &classes[b])
                    .map_err(|e| e.to_string())?;
                if !expansion.is_empty() {
                    trivial = false;
                    let target: Vec<String> = expansion
                        .iter()
                        .map(|((i, m, k), c)| format!("{} * ({},{},{})", c, i, m, k))
                        .collect();
                    products.push((
                        format!("({},{},{})", classes[a].0, classes[a].1, classes[a].2),
                        format!("({},{},{})", classes[b].0, classes[b].1, classes[b].2),
                        target.join(" + "),
                    ));
                }
            }
        }
        match format {
            Format::Text => {
                println!("ideal: {}", ideal);
                println!("char: {}", characteristic);
                print!("{}", table);
                println!("product trivial: {}", trivial);
                for (l, r, t) in &products {
                    println!("  {} * {} = {}", l, r, t);
                }
            }
            Format::Structured => {
                let records: Vec<serde_json::Value> = table
                    .entries
                    .iter()
                    .map(|((i, alpha), dim)| json!({"i": i, "alpha": alpha.0, "dim": dim}))
                    .collect();
                let prods: Vec<serde_json::Value> = products
                    .iter()
                    .map(|(l, r, t)| json!({"left": l, "right": r, "value": t}))
                    .collect();
                let v = json!({
                    "schema": SCHEMA,
                    "command": "koszul",
                    "ideal": ideal.to_string(),
                    "char": characteristic,
                    "table": records,
                    "product_trivial": trivial,
                    "products": prods,
                });
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            }
        }
        Ok(0)
    }
    if characteristic == 0 {
        inner(ideal, &Rationals, format, characteristic)
    } else {
        inner(ideal, &PrimeField::new(characteristic), format, characteristic)
    }
}

fn selftest() -> i32 {
    let mut failures = 0usize;
    let mut cases = 0usize;
    let mut check = |name: &str, what: &str, r: Result<(), String>| {
        cases += 1;
        match r {
            Ok(()) => println!("ok   {:<22} {}", name, what),
            Err(e) => {
                failures += 1;
                println!("FAIL {:<22} {}: {}", name, what, e);
            }
        }
    };
    for (name, ideal) in corpus::corpus_ideals() {
        check(name, "morse", checks::morse_battery(&ideal, &Rationals));
        check(name, "hilbert", checks::hilbert_battery(&ideal, 5));
        check(name, "policy", checks::policy_battery(&ideal));
        check(name, "oracle", checks::oracle_battery(&ideal));
        check(name, "golod", checks::golod_battery(&ideal, 4, 6));
        check(name, "polarize", checks::polarization_battery(&ideal));
        check(name, "structure", checks::standard_structure_battery(&ideal));
        check(name, "strong-gcd", checks::strong_gcd_consistency(&ideal));
    }
    for (name, ideal) in corpus::degree_two_corpus() {
        check(name, "nbc", checks::nbc_battery(&ideal));
        check(name, "koszul-identity", checks::koszul_identity_battery(&ideal));
        check(name, "language", checks::language_battery(&ideal, 5));
        check(name, "monotone", checks::poincare_monotonicity_battery(&ideal, 4));
        for finding in checks::tor_characteristic_findings(&ideal, 3, 4, &[2]) {
            println!("     {:<22} finding: {}", name, finding);
        }
    }
    for (name, poset) in corpus::corpus_posets() {
        check(name, "poset-w", checks::poset_battery(&poset, 4));
    }
    for (k, ideal) in corpus::random_ideals(10, 7).iter().enumerate() {
        let name = format!("random-{}", k);
        check(&name, "morse", checks::morse_battery(ideal, &Rationals));
        check(&name, "hilbert", checks::hilbert_battery(ideal, 4));
    }
    println!("selftest: {} checks, {} failures", cases, failures);
    if failures == 0 {
        0
    } else {
        3
    }
}
