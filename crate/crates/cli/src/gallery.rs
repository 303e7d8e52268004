//! Worked examples recomputed from scratch at several characteristics.

use fthresh_core::filtration::{Filtration, PrimePower};
use fthresh_core::hypergraph::Hypergraph;
use fthresh_core::nu::{self, NuValue, ThresholdResult, DEFAULT_HORIZON};
use fthresh_core::polyhedra::{skew_waldschmidt, WeightVector};
use fthresh_core::rational::{self, frac};
use fthresh_core::{Monomial, MonomialIdeal, Result};
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

pub struct Config {
    pub primes: Vec<u64>,
    pub e_max: u32,
    pub only: Option<String>,
    pub corrupt: Option<String>,
}

#[derive(Serialize)]
pub struct Row {
    pub fixture: &'static str,
    pub expected: String,
    pub computed: String,
    pub status: &'static str,
    #[serde(skip)]
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

enum Computed {
    Value(BigRational),
    Bracket(BigRational, Option<BigRational>),
}

struct Check {
    expected: BigRational,
    computed: Computed,
    /// Side conditions checked across every `(p, e)`; the first failure.
    problem: Option<String>,
}

impl Check {
    fn value(expected: BigRational, computed: BigRational) -> Self {
        Check {
            expected,
            computed: Computed::Value(computed),
            problem: None,
        }
    }

    fn flag(ok: bool, problem: Option<String>) -> Self {
        Check {
            expected: BigRational::one(),
            computed: Computed::Value(if ok { BigRational::one() } else { rational::int(0) }),
            problem,
        }
    }

    fn bracket(expected: BigRational, r: &ThresholdResult) -> Self {
        Check {
            expected,
            computed: Computed::Bracket(r.lower().clone(), r.upper().cloned()),
            problem: None,
        }
    }

    fn note(mut self, problem: Option<String>) -> Self {
        self.problem = self.problem.or(problem);
        self
    }
}

type Fixture = (&'static str, fn(&Config) -> Result<Check>);

const FIXTURES: &[Fixture] = &[
    ("alpha-half", |c| alpha(c, frac(1, 2))),
    ("alpha-seven-fifths", |c| alpha(c, frac(7, 5))),
    ("alpha-three", |c| alpha(c, rational::int(3))),
    ("pairwise-primes-threshold", pairwise_threshold),
    ("pairwise-primes-nu", pairwise_nu),
    ("pairwise-primes-witness", pairwise_witness),
    ("pairwise-primes-ordinary", pairwise_ordinary),
    ("square-of-m", square_of_m),
    ("pure-powers", pure_powers_threshold),
    ("pure-powers-nu", pure_powers_nu),
    ("pure-powers-closure-nu", pure_powers_closure_nu),
    ("pure-powers-plus-corner", pure_powers_plus_corner),
    ("chordal-k4-minus-edge", |c| {
        let g = Hypergraph::graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])?;
        chordal(c, g, frac(3, 2))
    }),
    ("chordal-clique-sum", |c| {
        let mut edges = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        edges.extend([(3, 4), (3, 5), (4, 5), (5, 6)]);
        chordal(c, Hypergraph::graph(7, &edges)?, frac(4, 3))
    }),
    ("odd-cycle-bracket", odd_cycle_bracket),
    ("odd-cycle-waldschmidt", odd_cycle_waldschmidt),
    ("hamiltonian-c6", |c| hamiltonian(c, Hypergraph::cycle(6))),
    ("hamiltonian-c7", |c| hamiltonian(c, Hypergraph::cycle(7))),
    ("hamiltonian-chorded", |c| {
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.extend([(0, 3), (1, 4)]);
        hamiltonian(c, Hypergraph::graph(6, &edges)?)
    }),
    ("perfect-matching", |c| {
        hamiltonian(c, Hypergraph::graph(6, &[(0, 1), (2, 3), (4, 5)])?)
    }),
    ("prime-power-intersection", prime_power_intersection),
    ("big-height-witness", big_height_witness),
    ("big-height-triangle", |c| {
        big_height(c, ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]), 2)
    }),
    ("big-height-c5-edges", |c| big_height(c, Hypergraph::cycle(5).edge_ideal(), 3)),
    ("interleaved", interleaved),
    ("disjoint-laws", disjoint_laws),
];

pub fn names() -> Vec<&'static str> {
    FIXTURES.iter().map(|(n, _)| *n).collect()
}

pub fn run(cfg: &Config) -> Result<Vec<Row>> {
    let mut rows = Vec::new();
    for (name, fixture) in FIXTURES {
        if cfg.only.as_deref().is_some_and(|o| o != *name) {
            continue;
        }
        let mut check = fixture(cfg)?;
        if cfg.corrupt.as_deref() == Some(*name) {
            check.expected += BigRational::one();
        }
        let (matches, computed) = match &check.computed {
            Computed::Value(v) => (*v == check.expected, rational::to_string(v)),
            Computed::Bracket(lo, hi) => (
                *lo <= check.expected && hi.as_ref().is_none_or(|h| check.expected <= *h),
                format!(
                    "[{}, {}]",
                    rational::to_string(lo),
                    hi.as_ref().map(rational::to_string).unwrap_or_else(|| "inf".into())
                ),
            ),
        };
        let pass = matches && check.problem.is_none();
        rows.push(Row {
            fixture: name,
            expected: rational::to_string(&check.expected),
            computed,
            status: if pass { "pass" } else { "fail" },
            pass,
            detail: check.problem,
        });
    }
    Ok(rows)
}

fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, gens.iter().map(|g| g.to_vec()).collect())
        .expect("fixture ideals are well formed")
}

/// `∩_{i<j} (x_i, x_j)`, generated by the products of `n − 1` variables.
fn pairwise_primes(n: usize) -> MonomialIdeal {
    let gens = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i != j)).collect())
        .collect();
    MonomialIdeal::from_exponents(n, gens).expect("fixture ideals are well formed")
}

/// Largest prime in the run: its `p^e_max` is the representative point.
fn top(cfg: &Config) -> u64 {
    *cfg.primes.iter().max().expect("at least one prime")
}

fn q_of(p: u64, e: u32) -> u64 {
    p.pow(e)
}

/// Check `ν(p^e) = expected(q)` at every `(p, e)`; return the value at the top.
fn nu_matches(
    cfg: &Config,
    f: &Filtration,
    target: &MonomialIdeal,
    expected: impl Fn(u64) -> u64,
) -> Result<Check> {
    let mut problem = None;
    for &p in &cfg.primes {
        let seq = nu::nu_sequence(f, target, p, cfg.e_max)?;
        for r in &seq.records {
            if r.nu != NuValue::Finite(expected(r.q)) && problem.is_none() {
                problem = Some(format!("p={p} e={}: ν={}, want {}", r.e, r.nu, expected(r.q)));
            }
        }
    }
    let q = q_of(top(cfg), cfg.e_max);
    let got = nu::nu(f, target, top(cfg), cfg.e_max)?.nu;
    let got = got.finite().map(rational::from_u64).unwrap_or_else(|| rational::int(-1));
    Ok(Check::value(rational::from_u64(expected(q)), got).note(problem))
}

fn exact(r: &ThresholdResult) -> BigRational {
    r.exact_value().cloned().unwrap_or_else(|| r.lower().clone())
}

fn alpha(cfg: &Config, alpha: BigRational) -> Result<Check> {
    let n = 2u64;
    let m = MonomialIdeal::maximal(n as usize);
    let f = Filtration::ceiling(m.clone(), rational::from_u64(n) / &alpha)?;
    let mut problem = None;
    let mut shown = None;
    for &p in &cfg.primes {
        let seq = nu::nu_sequence(&f, &m, p, cfg.e_max)?;
        if seq.doubling_violation.is_some() {
            problem.get_or_insert(format!("p={p}: ν(pq) < p·ν(q)"));
        }
        for r in &seq.records {
            let v = rational::from_u64(r.nu.finite().unwrap_or(u64::MAX));
            let lo = (&alpha * rational::from_u64(r.q - 1)).ceil() - BigRational::one();
            if v < lo || v >= &alpha * rational::from_u64(r.q) {
                problem.get_or_insert(format!("p={p} e={}: ν={}", r.e, r.nu));
            }
        }
        let b = nu::fthreshold_bracket(&f, &m, p, cfg.e_max, &[])?;
        let cap = (&alpha + rational::from_u64(n)) / rational::from_u64(q_of(p, cfg.e_max));
        let width = b.upper().map(|u| u - b.lower());
        if width.is_none_or(|w| w > cap) {
            problem.get_or_insert(format!("p={p}: bracket wider than {cap}"));
        }
        if p == top(cfg) {
            shown = Some(b);
        }
    }
    let b = shown.expect("top prime is in the run");
    Ok(Check::bracket(alpha, &b).note(problem))
}

fn pairwise_threshold(_: &Config) -> Result<Check> {
    let r = nu::fthreshold_symbolic_squarefree(&pairwise_primes(4))?;
    Ok(Check::value(rational::int(2), exact(&r)))
}

fn pairwise_nu(cfg: &Config) -> Result<Check> {
    let f = Filtration::symbolic_squarefree(pairwise_primes(3))?;
    nu_matches(cfg, &f, &MonomialIdeal::maximal(3), |q| 2 * (q - 1))
}

fn pairwise_witness(cfg: &Config) -> Result<Check> {
    let n = 3;
    let f = Filtration::symbolic_squarefree(pairwise_primes(n))?;
    let m = MonomialIdeal::maximal(n);
    let mut problem = None;
    for &p in &cfg.primes {
        for e in 1..=cfg.e_max {
            let q = q_of(p, e);
            let w = Monomial::uniform(n, q - 1);
            let inside = f.member(2 * (q - 1), &w)?;
            let escapes = !m.bracket_power(q)?.contains_monomial(&w)?;
            let sharp = f.level_contained_in(2 * (q - 1) + 1, &m.bracket_power(q)?)?;
            if !(inside && escapes && sharp) {
                problem.get_or_insert(format!("p={p} e={e}"));
            }
        }
    }
    Ok(Check::flag(problem.is_none(), problem))
}

fn pairwise_ordinary(cfg: &Config) -> Result<Check> {
    let n = 4u64;
    let a = pairwise_primes(n as usize);
    let r = nu::fthreshold_ordinary(&a)?;
    // n⌊(q−1)/(n−1)⌋ ≤ ν(q) ≤ n(q−1)/(n−1)
    let f = Filtration::ordinary(a)?;
    let m = MonomialIdeal::maximal(n as usize);
    let mut problem = None;
    for &p in &cfg.primes {
        for e in 0..=cfg.e_max.min(3) {
            let q = q_of(p, e);
            let v = nu::nu(&f, &m, p, e)?.nu.finite().unwrap_or(u64::MAX);
            if v < n * ((q - 1) / (n - 1)) || v * (n - 1) > n * (q - 1) {
                problem.get_or_insert(format!("p={p} e={e}: ν={v}"));
            }
        }
    }
    Ok(Check::value(frac(n as i64, n as i64 - 1), exact(&r)).note(problem))
}

fn square_of_m(cfg: &Config) -> Result<Check> {
    let n = 4;
    let a = MonomialIdeal::maximal(n).power(2)?;
    let f = Filtration::symbolic(a.clone())?;
    let r = nu::fthreshold(&f, &MonomialIdeal::maximal(n), top(cfg), cfg.e_max)?;
    let c = exact(&r);
    let problem = (c >= rational::from_u64(a.height()? as u64)).then(|| "not below the height".into());
    Ok(Check::value(rational::int(2), c).note(problem))
}

fn pure_powers() -> MonomialIdeal {
    ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]])
}

fn pure_powers_threshold(cfg: &Config) -> Result<Check> {
    let f = Filtration::symbolic(pure_powers())?;
    let r = nu::fthreshold(&f, &MonomialIdeal::maximal(3), top(cfg), cfg.e_max)?;
    Ok(Check::value(frac(31, 30), exact(&r)))
}

/// `max{r : (x1x2x3)^{q−1} ∈ a^r}` counts each pure power separately.
fn pure_powers_nu(cfg: &Config) -> Result<Check> {
    let f = Filtration::symbolic(pure_powers())?;
    nu_matches(cfg, &f, &MonomialIdeal::maximal(3), |q| {
        [2, 3, 5].iter().map(|a| (q - 1) / a).sum()
    })
}

fn pure_powers_closure_nu(cfg: &Config) -> Result<Check> {
    let f = Filtration::integral_closure(pure_powers())?;
    nu_matches(cfg, &f, &MonomialIdeal::maximal(3), |q| (q - 1) * 31 / 30)
}

fn pure_powers_plus_corner(cfg: &Config) -> Result<Check> {
    let b = ideal(3, &[&[4, 0, 0], &[0, 4, 0], &[0, 0, 4], &[1, 1, 1]]);
    let f = Filtration::symbolic(b)?;
    let r = nu::fthreshold(&f, &MonomialIdeal::maximal(3), top(cfg), cfg.e_max)?;
    Ok(Check::value(rational::int(1), exact(&r)))
}

fn chordal(_: &Config, g: Hypergraph, expected: BigRational) -> Result<Check> {
    let omega = g.clique_number()? as i64;
    let mut problem = None;
    if !g.is_chordal()? {
        problem = Some("graph is not chordal".into());
    } else if frac(omega, omega - 1) != expected {
        problem = Some(format!("clique number {omega}"));
    }
    let r = nu::fthreshold_ordinary(&g.cover_ideal())?;
    Ok(Check::value(expected, exact(&r)).note(problem))
}

fn odd_cycle_bracket(cfg: &Config) -> Result<Check> {
    let f = Filtration::symbolic_squarefree(Hypergraph::cycle(5).cover_ideal())?;
    let m = MonomialIdeal::maximal(5);
    let mut problem = None;
    let mut shown = None;
    for &p in &cfg.primes {
        let b = nu::fthreshold_bracket(&f, &m, p, cfg.e_max, &[])?;
        let q = q_of(p, cfg.e_max) as i64;
        if *b.lower() != frac(2 * (q - 1), q) || b.upper() != Some(&rational::int(2)) {
            problem.get_or_insert(format!("p={p}: [{}, {:?}]", b.lower(), b.upper()));
        }
        if p == top(cfg) {
            shown = Some(b);
        }
    }
    Ok(Check::bracket(rational::int(2), &shown.expect("top prime is in the run")).note(problem))
}

fn odd_cycle_waldschmidt(_: &Config) -> Result<Check> {
    let f = Filtration::symbolic_squarefree(Hypergraph::cycle(5).cover_ideal())?;
    let sw = skew_waldschmidt(&WeightVector::degree(5), &f, DEFAULT_HORIZON)?;
    let problem = sw.exact.is_none().then(|| "no exact value".into());
    Ok(Check::value(frac(5, 2), sw.exact.unwrap_or(sw.upper)).note(problem))
}

fn hamiltonian(cfg: &Config, g: Hypergraph) -> Result<Check> {
    let n = g.vertex_count() as u64;
    let i = g.edge_ideal();
    let r = nu::fthreshold_ordinary(&i)?;
    // ν(q) ≥ n⌊(q−1)/2⌋ from (x1⋯xn)^2 ∈ I^n
    let f = Filtration::ordinary(i)?;
    let m = MonomialIdeal::maximal(n as usize);
    let mut problem = None;
    for &p in &cfg.primes {
        for e in 0..=cfg.e_max.min(3) {
            let q = q_of(p, e);
            let v = nu::nu(&f, &m, p, e)?.nu.finite().unwrap_or(u64::MAX);
            if v < n * ((q - 1) / 2) {
                problem.get_or_insert(format!("p={p} e={e}: ν={v}"));
            }
        }
    }
    Ok(Check::value(frac(n as i64, 2), exact(&r)).note(problem))
}

fn prime_power_intersection(cfg: &Config) -> Result<Check> {
    let comps = vec![
        PrimePower {
            vars: vec![0, 1],
            omega: 1,
        },
        PrimePower {
            vars: vec![1, 2],
            omega: 2,
        },
    ];
    let r = nu::fthreshold_prime_power_intersection(3, &comps)?;
    let f = Filtration::prime_power_intersection(3, comps)?;
    let mut problem = None;
    for &p in &cfg.primes {
        let b = nu::fthreshold_bracket(&f, &MonomialIdeal::maximal(3), p, cfg.e_max, &[])?;
        if !b.contains(&exact(&r)) {
            problem.get_or_insert(format!("p={p}: ν bracket misses the value"));
        }
    }
    Ok(Check::value(rational::int(1), exact(&r)).note(problem))
}

fn big_height_witness(cfg: &Config) -> Result<Check> {
    let a = pairwise_primes(3);
    let mut problem = None;
    for &p in &cfg.primes {
        if !nu::symbolic_fsplit_witness(&a, p)? {
            problem.get_or_insert(format!("p={p}"));
        }
    }
    Ok(Check::flag(problem.is_none(), problem))
}

fn big_height(cfg: &Config, a: MonomialIdeal, expected: u64) -> Result<Check> {
    let m = MonomialIdeal::maximal(a.nvars());
    let mut value = rational::from_u64(a.big_height()? as u64);
    for &p in &cfg.primes {
        let rep = nu::big_height_criterion(&a, &m, p, cfg.e_max)?;
        if let Some(ub) = rep.upper_bound {
            value = value.min(ub);
        }
    }
    Ok(Check::value(rational::from_u64(expected), value))
}

fn interleaved(cfg: &Config) -> Result<Check> {
    let a = ideal(2, &[&[1, 0], &[0, 1]]);
    let b = ideal(2, &[&[1, 0], &[0, 2]]);
    let f = Filtration::interleaved(a, b.clone())?;
    let r = nu::fthreshold(&f, &MonomialIdeal::maximal(2), top(cfg), cfg.e_max)?;
    let inner = exact(&nu::fthreshold_ordinary(&b)?);
    let problem = (inner != frac(3, 2)).then(|| format!("C(b) = {inner}"));
    Ok(Check::value(rational::int(3), exact(&r)).note(problem))
}

fn disjoint_laws(cfg: &Config) -> Result<Check> {
    let f = Filtration::ordinary(ideal(2, &[&[2, 0], &[0, 3]]))?;
    let g = Filtration::symbolic_squarefree(pairwise_primes(3))?;
    let mut problem = None;
    for &p in &cfg.primes {
        let rep = nu::check_sum_product_laws(
            &f,
            &MonomialIdeal::maximal(2),
            &g,
            &MonomialIdeal::maximal(3),
            p,
            cfg.e_max,
        )?;
        if let Some(row) = rep.rows.iter().find(|r| !r.holds) {
            problem.get_or_insert(format!("p={p} e={} {}: {} vs {}", row.e, row.law, row.lhs, row.rhs));
        }
    }
    Ok(Check::flag(problem.is_none(), problem))
}
