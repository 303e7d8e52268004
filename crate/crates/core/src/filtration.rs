//! Monomial filtrations `a_0 = R ⊇ a_1 ⊇ a_2 ⊇ ...` given by rules.
//!
//! Every rule answers "what is the largest `r` with `u ∈ a_r`" for a single
//! exponent vector, which is all a ν computation needs. Generators of a level
//! are produced lazily and kept in a small per-filtration LRU cache.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::monomial::{divides_slice, Monomial, MonomialIdeal, INF};
use crate::polyhedra::{self, NewtonPolyhedron};
use crate::rational;

/// Number of levels whose generators are cached per filtration.
pub const LEVEL_CACHE_CAPACITY: usize = 48;

/// Lattice points the integral-closure generator enumeration may visit.
pub const CLOSURE_BOX_LIMIT: u128 = 4_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Finite(u64),
    Infinite,
}

impl Level {
    pub fn at_least(self, r: u64) -> bool {
        match self {
            Level::Finite(l) => l >= r,
            Level::Infinite => true,
        }
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Level::Finite(l) => Some(l),
            Level::Infinite => None,
        }
    }

    fn plus(self, o: Level) -> Level {
        match (self, o) {
            (Level::Finite(a), Level::Finite(b)) => Level::Finite(a.saturating_add(b)),
            _ => Level::Infinite,
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Finite(l) => write!(f, "{l}"),
            Level::Infinite => write!(f, "inf"),
        }
    }
}

/// `P^ω` for `P = (x_j : j ∈ vars)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PrimePower {
    pub vars: Vec<usize>,
    pub omega: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rule {
    /// `a_r = I^r`.
    Ordinary(MonomialIdeal),
    /// `a_r = ∩_P P^r` over the minimal primes of a square-free ideal.
    SymbolicSquarefree(MonomialIdeal),
    /// `a_r = ∩_i P_i^{ω_i r}`.
    PrimePowerIntersection(Vec<PrimePower>),
    /// `a_r = \overline{I^r}`.
    IntegralClosurePowers(MonomialIdeal),
    /// `a_r = I^{⌈βr⌉}`.
    CeilingPower {
        ideal: MonomialIdeal,
        beta: BigRational,
    },
    Product(Filtration, Filtration),
    Intersection(Filtration, Filtration),
    /// `a_r = Σ_{i ≤ r} F_i G_{r-i}`.
    BinomialSum(Filtration, Filtration),
    /// Same levels as `inner`, annotated with `a_{kd} = a_d^k`.
    Veronese { inner: Filtration, degree: u64 },
    /// `a_{2i} = b^i`, `a_{2i+1} = a b^i` for `a^2 ⊆ b ⊆ a`.
    Interleaved {
        odd: MonomialIdeal,
        even: MonomialIdeal,
    },
    /// `inner` extended from variables `offset..offset+inner.nvars` to `nvars`.
    Embed {
        inner: Filtration,
        offset: usize,
        nvars: usize,
    },
    /// Listed levels; level `r ≥ len` repeats the last entry.
    Explicit(Vec<MonomialIdeal>),
}

struct LevelCache {
    map: HashMap<u64, MonomialIdeal>,
    order: VecDeque<u64>,
}

impl LevelCache {
    fn new() -> Self {
        LevelCache {
            map: HashMap::new(),
            order: VecDeque::new(),
        }
    }

    fn get(&mut self, r: u64) -> Option<MonomialIdeal> {
        let hit = self.map.get(&r).cloned();
        if hit.is_some() {
            self.order.retain(|&k| k != r);
            self.order.push_back(r);
        }
        hit
    }

    fn put(&mut self, r: u64, ideal: MonomialIdeal) {
        if self.map.insert(r, ideal).is_none() {
            self.order.push_back(r);
        }
        while self.order.len() > LEVEL_CACHE_CAPACITY {
            if let Some(old) = self.order.pop_front() {
                self.map.remove(&old);
            }
        }
    }
}

struct Node {
    nvars: usize,
    rule: Rule,
    // Newton polyhedron of the underlying ideal for Ordinary, IntegralClosure, Ceiling
    np: Option<NewtonPolyhedron>,
    // (variable mask, ω) constraints for the two symbolic rules
    primes: Vec<(u64, u64)>,
    cache: Mutex<LevelCache>,
}

#[derive(Clone)]
pub struct Filtration(Arc<Node>);

impl PartialEq for Filtration {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.nvars == other.0.nvars && self.0.rule == other.0.rule)
    }
}

impl Eq for Filtration {}

impl fmt::Debug for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Filtration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.rule {
            Rule::Ordinary(i) => write!(f, "ordinary{i}"),
            Rule::SymbolicSquarefree(i) => write!(f, "symbolic{i}"),
            Rule::PrimePowerIntersection(ps) => {
                write!(f, "prime_powers[")?;
                for (k, p) in ps.iter().enumerate() {
                    if k > 0 {
                        write!(f, ", ")?;
                    }
                    let vars: Vec<String> = p.vars.iter().map(|j| format!("x{}", j + 1)).collect();
                    write!(f, "({})^{}", vars.join(","), p.omega)?;
                }
                write!(f, "]")
            }
            Rule::IntegralClosurePowers(i) => write!(f, "closure{i}"),
            Rule::CeilingPower { ideal, beta } => write!(f, "ceiling{ideal}^{beta}"),
            Rule::Product(a, b) => write!(f, "product({a}, {b})"),
            Rule::Intersection(a, b) => write!(f, "intersection({a}, {b})"),
            Rule::BinomialSum(a, b) => write!(f, "binomial_sum({a}, {b})"),
            Rule::Veronese { inner, degree } => write!(f, "veronese({inner}, {degree})"),
            Rule::Interleaved { odd, even } => write!(f, "interleaved({odd}, {even})"),
            Rule::Embed {
                inner,
                offset,
                nvars,
            } => write!(f, "embed({inner}, {offset}, {nvars})"),
            Rule::Explicit(levels) => write!(f, "explicit[{} levels]", levels.len()),
        }
    }
}

fn mask_of(vars: &[usize]) -> u64 {
    vars.iter().fold(0u64, |m, &j| m | (1u64 << j))
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::AmbientMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

impl Filtration {
    fn build(nvars: usize, rule: Rule) -> Result<Self> {
        let mut np = None;
        let mut primes = Vec::new();
        match &rule {
            Rule::Ordinary(i) | Rule::IntegralClosurePowers(i) | Rule::CeilingPower { ideal: i, .. } => {
                if i.is_proper_nonzero() {
                    np = Some(polyhedra::newton_polyhedron(i)?);
                }
            }
            Rule::SymbolicSquarefree(i) => {
                primes = i
                    .minimal_primes()?
                    .iter()
                    .map(|p| (mask_of(p), 1))
                    .collect();
            }
            Rule::PrimePowerIntersection(ps) => {
                primes = ps.iter().map(|p| (mask_of(&p.vars), p.omega)).collect();
            }
            _ => {}
        }
        Ok(Filtration(Arc::new(Node {
            nvars,
            rule,
            np,
            primes,
            cache: Mutex::new(LevelCache::new()),
        })))
    }

    pub fn ordinary(ideal: MonomialIdeal) -> Result<Self> {
        Self::build(ideal.nvars(), Rule::Ordinary(ideal))
    }

    /// Symbolic powers. Square-free ideals use their minimal primes; an
    /// `m`-primary ideal has only `m` as associated prime, so its symbolic
    /// powers are the ordinary ones. Anything else is rejected.
    pub fn symbolic(ideal: MonomialIdeal) -> Result<Self> {
        if ideal.is_squarefree() {
            return Self::symbolic_squarefree(ideal);
        }
        if ideal.is_m_primary() {
            return Self::ordinary(ideal);
        }
        Err(Error::UnsupportedSymbolic(format!(
            "{ideal} is neither square-free nor primary to the maximal ideal"
        )))
    }

    pub fn symbolic_squarefree(ideal: MonomialIdeal) -> Result<Self> {
        if !ideal.is_squarefree() {
            return Err(Error::NotSquarefree(ideal.to_string()));
        }
        if !ideal.is_proper_nonzero() {
            return Err(Error::InvalidArgument(
                "symbolic powers need a nonzero proper ideal".into(),
            ));
        }
        Self::build(ideal.nvars(), Rule::SymbolicSquarefree(ideal))
    }

    pub fn prime_power_intersection(nvars: usize, components: Vec<PrimePower>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidArgument("no prime components given".into()));
        }
        if nvars > 64 {
            return Err(Error::SizeGuard("at most 64 variables".into()));
        }
        for c in &components {
            if c.vars.is_empty() || c.omega == 0 {
                return Err(Error::InvalidArgument(
                    "each component needs variables and a positive exponent".into(),
                ));
            }
            if let Some(&j) = c.vars.iter().find(|&&j| j >= nvars) {
                return Err(Error::InvalidArgument(format!("variable {j} out of range")));
            }
        }
        let components = components
            .into_iter()
            .map(|mut c| {
                c.vars.sort();
                c.vars.dedup();
                c
            })
            .collect();
        Self::build(nvars, Rule::PrimePowerIntersection(components))
    }

    pub fn integral_closure(ideal: MonomialIdeal) -> Result<Self> {
        Self::build(ideal.nvars(), Rule::IntegralClosurePowers(ideal))
    }

    pub fn ceiling(ideal: MonomialIdeal, beta: BigRational) -> Result<Self> {
        if !beta.is_positive() {
            return Err(Error::InvalidArgument("β must be positive".into()));
        }
        Self::build(ideal.nvars(), Rule::CeilingPower { ideal, beta })
    }

    pub fn product(a: Filtration, b: Filtration) -> Result<Self> {
        check_same(a.nvars(), b.nvars())?;
        Self::build(a.nvars(), Rule::Product(a, b))
    }

    pub fn intersection(a: Filtration, b: Filtration) -> Result<Self> {
        check_same(a.nvars(), b.nvars())?;
        Self::build(a.nvars(), Rule::Intersection(a, b))
    }

    pub fn binomial_sum(a: Filtration, b: Filtration) -> Result<Self> {
        check_same(a.nvars(), b.nvars())?;
        Self::build(a.nvars(), Rule::BinomialSum(a, b))
    }

    /// Annotate `inner` with a Veronese degree; checked by [`Self::verify_veronese`].
    pub fn veronese(inner: Filtration, degree: u64) -> Result<Self> {
        if degree == 0 {
            return Err(Error::InvalidArgument("Veronese degree must be positive".into()));
        }
        Self::build(inner.nvars(), Rule::Veronese { inner, degree })
    }

    pub fn interleaved(odd: MonomialIdeal, even: MonomialIdeal) -> Result<Self> {
        check_same(odd.nvars(), even.nvars())?;
        let sq = odd.power(2)?;
        if !even.contains_ideal(&sq)? || !odd.contains_ideal(&even)? {
            return Err(Error::InvalidArgument(
                "interleaving needs a^2 ⊆ b ⊆ a".into(),
            ));
        }
        Self::build(odd.nvars(), Rule::Interleaved { odd, even })
    }

    pub fn embed(inner: Filtration, offset: usize, nvars: usize) -> Result<Self> {
        if offset + inner.nvars() > nvars {
            return Err(Error::InvalidArgument(format!(
                "block {}..{} does not fit in {nvars} variables",
                offset,
                offset + inner.nvars()
            )));
        }
        Self::build(
            nvars,
            Rule::Embed {
                inner,
                offset,
                nvars,
            },
        )
    }

    pub fn explicit(nvars: usize, levels: Vec<MonomialIdeal>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidArgument("explicit filtration needs levels".into()));
        }
        for l in &levels {
            check_same(nvars, l.nvars())?;
        }
        Self::build(nvars, Rule::Explicit(levels))
    }

    /// `a_0 = R` and `a_r = 0` for `r ≥ 1`.
    pub fn zero(nvars: usize) -> Self {
        Self::explicit(nvars, vec![MonomialIdeal::unit(nvars), MonomialIdeal::zero(nvars)])
            .expect("well-formed levels")
    }

    pub fn nvars(&self) -> usize {
        self.0.nvars
    }

    pub fn rule(&self) -> &Rule {
        &self.0.rule
    }

    /// The Newton polyhedron attached to ordinary, closure and ceiling rules.
    pub fn newton_polyhedron(&self) -> Option<&NewtonPolyhedron> {
        self.0.np.as_ref()
    }

    fn check_point(&self, u: &[u64]) -> Result<()> {
        check_same(self.nvars(), u.len())
    }

    /// `u ∈ a_r`.
    pub fn member(&self, r: u64, u: &Monomial) -> Result<bool> {
        self.check_point(u.exponents())?;
        self.member_slice(r, u.exponents())
    }

    /// Membership for a raw exponent slice; [`INF`] entries are unbounded.
    pub fn member_slice(&self, r: u64, u: &[u64]) -> Result<bool> {
        match &self.0.rule {
            Rule::Explicit(levels) => {
                let idx = (r as usize).min(levels.len() - 1);
                Ok(levels[idx].contains_slice(u))
            }
            Rule::Product(a, b) => {
                if r == 0 {
                    return Ok(true);
                }
                if let Some(l) = disjoint_product_level(a, b, u)? {
                    return Ok(l.at_least(r));
                }
                product_member(a, b, r, u)
            }
            _ => {
                if r == 0 {
                    return Ok(true);
                }
                Ok(self.max_level_slice(u)?.at_least(r))
            }
        }
    }

    /// Largest `r` with `u ∈ a_r`.
    pub fn max_level(&self, u: &Monomial) -> Result<Level> {
        self.check_point(u.exponents())?;
        self.max_level_slice(u.exponents())
    }

    pub fn max_level_slice(&self, u: &[u64]) -> Result<Level> {
        let node = &*self.0;
        match &node.rule {
            Rule::Ordinary(i) => Ok(ordinary_order(i, node.np.as_ref(), u)),
            Rule::SymbolicSquarefree(_) | Rule::PrimePowerIntersection(_) => {
                Ok(prime_constraint_level(&node.primes, u))
            }
            Rule::IntegralClosurePowers(i) => Ok(if i.is_zero() {
                Level::Finite(0)
            } else if i.is_unit() {
                Level::Infinite
            } else {
                node.np.as_ref().expect("polyhedron").level(u)
            }),
            Rule::CeilingPower { ideal, beta } => {
                Ok(match ordinary_order(ideal, node.np.as_ref(), u) {
                    Level::Infinite => Level::Infinite,
                    Level::Finite(o) => {
                        let q = rational::from_u64(o) / beta;
                        Level::Finite(rational::floor_u64(&q).expect("non-negative"))
                    }
                })
            }
            Rule::Intersection(a, b) => Ok(a.max_level_slice(u)?.min(b.max_level_slice(u)?)),
            Rule::Product(a, b) => {
                if let Some(l) = disjoint_product_level(a, b, u)? {
                    return Ok(l);
                }
                let hi = a.max_level_slice(u)?.min(b.max_level_slice(u)?);
                search_level(hi, |r| product_member(a, b, r, u))
            }
            Rule::BinomialSum(a, b) => binomial_sum_level(a, b, u),
            Rule::Veronese { inner, .. } => inner.max_level_slice(u),
            Rule::Interleaved { odd, even } => {
                let ev = ordinary_order(even, None, u);
                if ev == Level::Infinite {
                    return Ok(Level::Infinite);
                }
                let mut best = match ev {
                    Level::Finite(l) => Level::Finite(2 * l),
                    Level::Infinite => unreachable!(),
                };
                for g in odd.generators() {
                    if divides_slice(g.exponents(), u) {
                        let rest = sub_slice(u, g.exponents());
                        if let Level::Finite(l) = ordinary_order(even, None, &rest) {
                            best = best.max(Level::Finite(2 * l + 1));
                        }
                    }
                }
                Ok(best)
            }
            Rule::Embed { inner, offset, .. } => {
                inner.max_level_slice(&u[*offset..*offset + inner.nvars()])
            }
            Rule::Explicit(levels) => {
                for (r, l) in levels.iter().enumerate() {
                    if !l.contains_slice(u) {
                        return Ok(Level::Finite(r.saturating_sub(1) as u64));
                    }
                }
                Ok(Level::Infinite)
            }
        }
    }

    /// Minimal generators of `a_r`.
    pub fn generators(&self, r: u64) -> Result<MonomialIdeal> {
        if let Some(hit) = self.0.cache.lock().expect("cache lock").get(r) {
            return Ok(hit);
        }
        let g = self.compute_generators(r)?;
        self.0.cache.lock().expect("cache lock").put(r, g.clone());
        Ok(g)
    }

    fn compute_generators(&self, r: u64) -> Result<MonomialIdeal> {
        let n = self.nvars();
        if let Rule::Explicit(levels) = &self.0.rule {
            return Ok(levels[(r as usize).min(levels.len() - 1)].clone());
        }
        if r == 0 {
            return Ok(MonomialIdeal::unit(n));
        }
        match &self.0.rule {
            Rule::Ordinary(i) => i.power(r),
            Rule::SymbolicSquarefree(_) | Rule::PrimePowerIntersection(_) => {
                let cons: Vec<(u64, u64)> = self
                    .0
                    .primes
                    .iter()
                    .map(|&(m, w)| {
                        w.checked_mul(r)
                            .map(|b| (m, b))
                            .ok_or(Error::Overflow("symbolic level"))
                    })
                    .collect::<Result<_>>()?;
                Ok(minimal_points(n, &cons))
            }
            Rule::IntegralClosurePowers(i) => closure_generators(i, self.0.np.as_ref(), r),
            Rule::CeilingPower { ideal, beta } => {
                let k = rational::ceil_u64(&(beta * rational::from_u64(r)))
                    .ok_or(Error::Overflow("ceiling exponent"))?;
                ideal.power(k)
            }
            Rule::Product(a, b) => a.generators(r)?.product(&b.generators(r)?),
            Rule::Intersection(a, b) => a.generators(r)?.intersect(&b.generators(r)?),
            Rule::BinomialSum(a, b) => {
                let mut acc = MonomialIdeal::zero(n);
                for i in 0..=r {
                    acc = acc.sum(&a.generators(i)?.product(&b.generators(r - i)?)?)?;
                }
                Ok(acc)
            }
            Rule::Veronese { inner, .. } => inner.generators(r),
            Rule::Interleaved { odd, even } => {
                let half = even.power(r / 2)?;
                if r.is_multiple_of(2) {
                    Ok(half)
                } else {
                    odd.product(&half)
                }
            }
            Rule::Embed {
                inner,
                offset,
                nvars,
            } => {
                let g = inner.generators(r)?;
                let gens = g
                    .generators()
                    .iter()
                    .map(|m| {
                        let mut e = vec![0u64; *nvars];
                        e[*offset..*offset + inner.nvars()].copy_from_slice(m.exponents());
                        Monomial::new(e)
                    })
                    .collect();
                MonomialIdeal::new(*nvars, gens)
            }
            Rule::Explicit(_) => unreachable!(),
        }
    }

    /// `a_r ⊆ J`, decided on the maximal standard monomials of `J`.
    pub fn level_contained_in(&self, r: u64, j: &MonomialIdeal) -> Result<bool> {
        check_same(self.nvars(), j.nvars())?;
        for s in j.corner_witnesses(1)? {
            if self.member_slice(r, &s)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `v(a_r)` for a non-negative weight vector.
    pub fn valuation_at(&self, w: &[BigRational], r: u64) -> Result<BigRational> {
        let node = &*self.0;
        let from_gens = |g: MonomialIdeal| -> Result<BigRational> {
            g.generators()
                .iter()
                .map(|m| weighted(w, m.exponents()))
                .min()
                .ok_or_else(|| Error::InvalidArgument("valuation of a zero level is infinite".into()))
        };
        if let Rule::Explicit(_) = node.rule {
            return from_gens(self.generators(r)?);
        }
        if r == 0 {
            return Ok(BigRational::zero());
        }
        let ideal_value = |i: &MonomialIdeal| from_gens(i.clone());
        match &node.rule {
            Rule::Ordinary(i) | Rule::IntegralClosurePowers(i) => {
                Ok(ideal_value(i)? * rational::from_u64(r))
            }
            Rule::CeilingPower { ideal, beta } => {
                let k = rational::ceil_u64(&(beta * rational::from_u64(r)))
                    .ok_or(Error::Overflow("ceiling exponent"))?;
                Ok(ideal_value(ideal)? * rational::from_u64(k))
            }
            Rule::Product(a, b) => Ok(a.valuation_at(w, r)? + b.valuation_at(w, r)?),
            Rule::BinomialSum(a, b) => {
                let mut best: Option<BigRational> = None;
                for i in 0..=r {
                    let v = a.valuation_at(w, i)? + b.valuation_at(w, r - i)?;
                    best = Some(match best {
                        Some(x) if x <= v => x,
                        _ => v,
                    });
                }
                Ok(best.expect("r >= 0"))
            }
            Rule::Veronese { inner, .. } => inner.valuation_at(w, r),
            Rule::Interleaved { odd, even } => {
                let half = ideal_value(even)? * rational::from_u64(r / 2);
                if r.is_multiple_of(2) {
                    Ok(half)
                } else {
                    Ok(half + ideal_value(odd)?)
                }
            }
            Rule::Embed { inner, offset, .. } => {
                inner.valuation_at(&w[*offset..*offset + inner.nvars()], r)
            }
            _ => from_gens(self.generators(r)?),
        }
    }

    /// Constraints `⟨w_k, x⟩ ≥ c_k` whose rational solution set `Q` satisfies
    /// `a_r ≈ r·Q` up to a bounded shift, when the rule has such a form.
    pub(crate) fn asymptotic_polyhedron(&self) -> Option<Vec<(Vec<BigRational>, BigRational)>> {
        let node = &*self.0;
        let n = node.nvars;
        let facets = |np: &NewtonPolyhedron, scale: &BigRational| {
            np.essential_facets()
                .iter()
                .map(|f| {
                    (
                        f.normal.iter().map(|&x| rational::from_u64(x)).collect(),
                        rational::from_u64(f.offset) * scale,
                    )
                })
                .collect::<Vec<_>>()
        };
        match &node.rule {
            Rule::Ordinary(i) | Rule::IntegralClosurePowers(i) => {
                if i.is_zero() {
                    None
                } else if i.is_unit() {
                    Some(Vec::new())
                } else {
                    Some(facets(node.np.as_ref()?, &BigRational::one()))
                }
            }
            Rule::CeilingPower { ideal, beta } => {
                if ideal.is_zero() {
                    None
                } else if ideal.is_unit() {
                    Some(Vec::new())
                } else {
                    Some(facets(node.np.as_ref()?, beta))
                }
            }
            Rule::SymbolicSquarefree(_) | Rule::PrimePowerIntersection(_) => Some(
                node.primes
                    .iter()
                    .map(|&(mask, w)| {
                        (
                            (0..n).map(|j| rational::int((mask >> j & 1) as i64)).collect(),
                            rational::from_u64(w),
                        )
                    })
                    .collect(),
            ),
            Rule::Intersection(a, b) => {
                let mut c = a.asymptotic_polyhedron()?;
                c.extend(b.asymptotic_polyhedron()?);
                Some(c)
            }
            Rule::Veronese { inner, .. } => inner.asymptotic_polyhedron(),
            Rule::Embed {
                inner,
                offset,
                nvars,
            } => Some(
                inner
                    .asymptotic_polyhedron()?
                    .into_iter()
                    .map(|(w, c)| {
                        let mut full = vec![BigRational::zero(); *nvars];
                        for (k, x) in w.into_iter().enumerate() {
                            full[offset + k] = x;
                        }
                        (full, c)
                    })
                    .collect(),
            ),
            _ => None,
        }
    }

    /// Exact `v̂(a_•) = lim v(a_r)/r` when the rule determines it; `None`
    /// for explicit level lists.
    pub fn asymptotic_valuation(&self, w: &[BigRational]) -> Result<Option<BigRational>> {
        check_same(self.nvars(), w.len())?;
        if let Some(cons) = self.asymptotic_polyhedron() {
            return polyhedra::polyhedral_minimum(w, &cons).map(Some);
        }
        let node = &*self.0;
        let pair = |a: &Filtration, b: &Filtration| -> Result<Option<(BigRational, BigRational)>> {
            Ok(match (a.asymptotic_valuation(w)?, b.asymptotic_valuation(w)?) {
                (Some(x), Some(y)) => Some((x, y)),
                _ => None,
            })
        };
        Ok(match &node.rule {
            Rule::Ordinary(_) | Rule::IntegralClosurePowers(_) | Rule::CeilingPower { .. } => {
                return Err(Error::InvalidArgument(
                    "valuation of the zero filtration is infinite".into(),
                ))
            }
            Rule::Product(a, b) => pair(a, b)?.map(|(x, y)| x + y),
            Rule::BinomialSum(a, b) => pair(a, b)?.map(|(x, y)| x.min(y)),
            Rule::Interleaved { even, .. } => {
                let v = even
                    .generators()
                    .iter()
                    .map(|m| weighted(w, m.exponents()))
                    .min()
                    .expect("nonzero even ideal");
                Some(v / rational::int(2))
            }
            Rule::Veronese { inner, degree } => match inner.asymptotic_valuation(w)? {
                Some(v) => Some(v),
                None => {
                    self.verify_veronese(4)?;
                    Some(inner.valuation_at(w, *degree)? / rational::from_u64(*degree))
                }
            },
            Rule::Embed { inner, offset, .. } => {
                let slice = &w[*offset..*offset + inner.nvars()];
                if slice.iter().all(|x| x.is_zero()) {
                    Some(BigRational::zero())
                } else {
                    inner.asymptotic_valuation(slice)?
                }
            }
            Rule::Intersection(..) | Rule::Explicit(_) => None,
            Rule::SymbolicSquarefree(_) | Rule::PrimePowerIntersection(_) => unreachable!(),
        })
    }

    /// `lim ν(p^e)/p^e` for the pure-power target `(x_j^{m_j})`, when it
    /// follows from the rule. The second value names the argument used.
    pub fn threshold_closed_form(&self, m: &[u64]) -> Option<(BigRational, &'static str)> {
        if m.len() != self.nvars() {
            return None;
        }
        let node = &*self.0;
        let from_poly = |cons: Vec<(Vec<BigRational>, BigRational)>| -> Option<BigRational> {
            cons.iter()
                .filter(|(_, c)| c.is_positive())
                .map(|(w, c)| {
                    w.iter()
                        .zip(m)
                        .fold(BigRational::zero(), |a, (x, &y)| a + x * rational::from_u64(y))
                        / c
                })
                .min()
        };
        match &node.rule {
            Rule::Ordinary(_) | Rule::IntegralClosurePowers(_) | Rule::CeilingPower { .. } => {
                Some((from_poly(self.asymptotic_polyhedron()?)?, "rees_valuation"))
            }
            Rule::SymbolicSquarefree(_) => {
                Some((from_poly(self.asymptotic_polyhedron()?)?, "symbolic_squarefree"))
            }
            Rule::PrimePowerIntersection(_) => {
                Some((from_poly(self.asymptotic_polyhedron()?)?, "prime_power_min"))
            }
            Rule::Intersection(a, b) => {
                let (x, _) = a.threshold_closed_form(m)?;
                let (y, _) = b.threshold_closed_form(m)?;
                Some((x.min(y), "prime_power_min"))
            }
            Rule::Veronese { inner, .. } => inner
                .threshold_closed_form(m)
                .map(|(v, _)| (v, "veronese_reduction")),
            Rule::Interleaved { even, .. } => {
                let f = Filtration::ordinary(even.clone()).ok()?;
                let (v, _) = f.threshold_closed_form(m)?;
                Some((v * rational::int(2), "veronese_reduction"))
            }
            Rule::Embed { inner, offset, .. } => {
                inner.threshold_closed_form(&m[*offset..*offset + inner.nvars()])
            }
            Rule::BinomialSum(a, b) if disjoint_blocks(a, b) => {
                let (x, t) = a.threshold_closed_form(m)?;
                let (y, _) = b.threshold_closed_form(m)?;
                Some((x + y, t))
            }
            _ => None,
        }
    }

    /// Check `a_{kd} = a_d^k` for `k ≤ k_max` on generators.
    pub fn verify_veronese(&self, k_max: u64) -> Result<()> {
        let Rule::Veronese { inner, degree } = &self.0.rule else {
            return Err(Error::InvalidArgument("not a Veronese annotation".into()));
        };
        let base = inner.generators(*degree)?;
        for k in 1..=k_max {
            let lhs = inner.generators(k * degree)?;
            let rhs = base.power(k)?;
            if lhs != rhs {
                return Err(Error::VeroneseMismatch(format!(
                    "a_{} differs from a_{}^{}",
                    k * degree,
                    degree,
                    k
                )));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("descriptor serializes")
    }
}

fn disjoint_blocks(a: &Filtration, b: &Filtration) -> bool {
    match (&a.0.rule, &b.0.rule) {
        (
            Rule::Embed {
                inner: ia,
                offset: oa,
                ..
            },
            Rule::Embed {
                inner: ib,
                offset: ob,
                ..
            },
        ) => oa + ia.nvars() <= *ob || ob + ib.nvars() <= *oa,
        _ => false,
    }
}

/// For filtrations living in disjoint variable blocks, `u ∈ a_r b_r` iff each
/// block of `u` lies in its own factor.
fn disjoint_product_level(a: &Filtration, b: &Filtration, u: &[u64]) -> Result<Option<Level>> {
    if !disjoint_blocks(a, b) {
        return Ok(None);
    }
    Ok(Some(a.max_level_slice(u)?.min(b.max_level_slice(u)?)))
}

fn product_member(a: &Filtration, b: &Filtration, r: u64, u: &[u64]) -> Result<bool> {
    let ga = a.generators(r)?;
    for g in ga.generators() {
        if divides_slice(g.exponents(), u) && b.member_slice(r, &sub_slice(u, g.exponents()))? {
            return Ok(true);
        }
    }
    Ok(false)
}

fn binomial_sum_level(a: &Filtration, b: &Filtration, u: &[u64]) -> Result<Level> {
    let la = a.max_level_slice(u)?;
    let lb = b.max_level_slice(u)?;
    if la == Level::Infinite || lb == Level::Infinite {
        return Ok(Level::Infinite);
    }
    if disjoint_blocks(a, b) {
        return Ok(la.plus(lb));
    }
    let top = la.finite().expect("finite");
    let mut best = la.max(lb);
    for i in 1..=top {
        for g in a.generators(i)?.generators() {
            if divides_slice(g.exponents(), u) {
                let l = Level::Finite(i).plus(b.max_level_slice(&sub_slice(u, g.exponents()))?);
                best = best.max(l);
            }
        }
    }
    Ok(best)
}

/// Largest `r ≤ hi` with `member(r)`, assuming antitone membership.
fn search_level(hi: Level, member: impl Fn(u64) -> Result<bool>) -> Result<Level> {
    let hi = match hi {
        Level::Finite(h) => h,
        Level::Infinite => {
            let mut r = 1u64;
            while member(r)? {
                if r >= 1 << 12 {
                    return Err(Error::Capability(
                        "product level exceeds the search cap; membership looks unbounded".into(),
                    ));
                }
                r *= 2;
            }
            r - 1
        }
    };
    let (mut lo, mut hi) = (0u64, hi);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if member(mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(Level::Finite(lo))
}

fn sub_slice(u: &[u64], g: &[u64]) -> Vec<u64> {
    u.iter()
        .zip(g)
        .map(|(&a, &b)| if a == INF { INF } else { a - b })
        .collect()
}

fn weighted(w: &[BigRational], e: &[u64]) -> BigRational {
    w.iter()
        .zip(e)
        .fold(BigRational::zero(), |acc, (x, &y)| {
            if y == 0 {
                acc
            } else {
                acc + x * BigRational::from_integer(BigInt::from(y))
            }
        })
}

fn prime_constraint_level(primes: &[(u64, u64)], u: &[u64]) -> Level {
    let mut best = Level::Infinite;
    for &(mask, omega) in primes {
        let mut s: u128 = 0;
        let mut inf = false;
        for (j, &x) in u.iter().enumerate() {
            if mask >> j & 1 == 1 {
                if x == INF {
                    inf = true;
                    break;
                }
                s += x as u128;
            }
        }
        if !inf {
            let l = u64::try_from(s / omega as u128).unwrap_or(u64::MAX - 1);
            best = best.min(Level::Finite(l));
        }
    }
    best
}

/// `ord_I(u)`: the largest `r` with `u ∈ I^r`.
pub(crate) fn ordinary_order(ideal: &MonomialIdeal, np: Option<&NewtonPolyhedron>, u: &[u64]) -> Level {
    if ideal.is_zero() {
        return Level::Finite(0);
    }
    if ideal.is_unit() {
        return Level::Infinite;
    }
    let gens: Vec<&[u64]> = ideal.generators().iter().map(|g| g.exponents()).collect();
    // a generator supported on unbounded coordinates has unbounded powers below u
    if gens
        .iter()
        .any(|g| g.iter().zip(u).all(|(&e, &x)| e == 0 || x == INF))
    {
        return Level::Infinite;
    }
    // generators on pairwise distinct single variables: the order splits
    let singles: Option<Vec<(usize, u64)>> = gens
        .iter()
        .map(|g| {
            let s: Vec<usize> = (0..g.len()).filter(|&j| g[j] > 0).collect();
            (s.len() == 1).then(|| (s[0], g[s[0]]))
        })
        .collect();
    if let Some(singles) = singles {
        let mut seen = 0u128;
        let distinct = singles.iter().all(|&(j, _)| {
            let fresh = seen >> j & 1 == 0;
            seen |= 1 << j;
            fresh
        });
        if distinct && ideal.nvars() <= 128 {
            let total = singles
                .iter()
                .fold(0u64, |acc, &(j, a)| acc.saturating_add(u[j] / a));
            return Level::Finite(total);
        }
    }
    let owned;
    let np = match np {
        Some(np) => np,
        None => {
            owned = polyhedra::newton_polyhedron(ideal).expect("proper nonzero ideal");
            &owned
        }
    };
    let mut order: Vec<&[u64]> = gens;
    // large generators first: they have the fewest choices
    order.sort_by_key(|g| std::cmp::Reverse(g.iter().sum::<u64>()));
    let mut best = 0u64;
    let mut rem = u.to_vec();
    order_search(&order, 0, &mut rem, 0, &mut best, np);
    Level::Finite(best)
}

fn order_search(
    gens: &[&[u64]],
    i: usize,
    rem: &mut Vec<u64>,
    cur: u64,
    best: &mut u64,
    np: &NewtonPolyhedron,
) {
    if i == gens.len() {
        *best = (*best).max(cur);
        return;
    }
    let bound = match np.level(rem) {
        Level::Finite(b) => b,
        Level::Infinite => u64::MAX / 4,
    };
    if cur.saturating_add(bound) <= *best {
        return;
    }
    let g = gens[i];
    let max_l = g
        .iter()
        .zip(rem.iter())
        .filter(|(&e, &x)| e > 0 && x != INF)
        .map(|(&e, &x)| x / e)
        .min()
        .expect("generator meets a bounded coordinate");
    if i + 1 == gens.len() {
        *best = (*best).max(cur + max_l);
        return;
    }
    for l in (0..=max_l).rev() {
        let saved = rem.clone();
        for (x, &e) in rem.iter_mut().zip(g) {
            if *x != INF {
                *x -= l * e;
            }
        }
        order_search(gens, i + 1, rem, cur + l, best, np);
        *rem = saved;
    }
}

/// Minimal lattice points of `{u ≥ 0 : Σ_{j ∈ S_i} u_j ≥ b_i}`.
fn minimal_points(n: usize, cons: &[(u64, u64)]) -> MonomialIdeal {
    let cap: Vec<u64> = (0..n)
        .map(|j| {
            cons.iter()
                .filter(|(m, _)| m >> j & 1 == 1)
                .map(|&(_, b)| b)
                .max()
                .unwrap_or(0)
        })
        .collect();
    // last variable index appearing in each constraint
    let last: Vec<usize> = cons
        .iter()
        .map(|&(m, _)| 63 - m.leading_zeros() as usize)
        .collect();
    let mut out = Vec::new();
    let mut u = vec![0u64; n];
    let mut sums = vec![0u64; cons.len()];
    fn rec(
        j: usize,
        n: usize,
        cons: &[(u64, u64)],
        cap: &[u64],
        last: &[usize],
        u: &mut Vec<u64>,
        sums: &mut Vec<u64>,
        out: &mut Vec<Monomial>,
    ) {
        if j == n {
            // feasibility already enforced; check minimality
            let minimal = (0..n).all(|k| {
                u[k] == 0
                    || cons
                        .iter()
                        .zip(sums.iter())
                        .any(|(&(m, b), &s)| m >> k & 1 == 1 && s == b)
            });
            if minimal {
                out.push(Monomial::new(u.clone()));
            }
            return;
        }
        for x in 0..=cap[j] {
            u[j] = x;
            for (i, &(m, _)) in cons.iter().enumerate() {
                if m >> j & 1 == 1 {
                    sums[i] += x;
                }
            }
            // constraints whose variables are all assigned must hold
            let mut ok = cons
                .iter()
                .zip(sums.iter())
                .zip(last)
                .all(|((&(_, b), &s), &l)| l != j || s >= b);
            // a positive entry must be able to sit on a tight constraint
            if ok {
                for k in 0..=j {
                    if u[k] > 0
                        && !cons
                            .iter()
                            .zip(sums.iter())
                            .any(|(&(m, b), &s)| m >> k & 1 == 1 && s <= b)
                    {
                        ok = false;
                        break;
                    }
                }
            }
            let overshoot = !ok
                && x > 0
                && cons
                    .iter()
                    .zip(sums.iter())
                    .filter(|(&(m, _), _)| m >> j & 1 == 1)
                    .all(|(&(_, b), &s)| s > b);
            if ok {
                rec(j + 1, n, cons, cap, last, u, sums, out);
            }
            for (i, &(m, _)) in cons.iter().enumerate() {
                if m >> j & 1 == 1 {
                    sums[i] -= x;
                }
            }
            // raising u_j further only overshoots every constraint through j
            if overshoot {
                break;
            }
        }
        u[j] = 0;
    }
    rec(0, n, cons, &cap, &last, &mut u, &mut sums, &mut out);
    MonomialIdeal::from_gens_unchecked(n, out)
}

fn closure_generators(i: &MonomialIdeal, np: Option<&NewtonPolyhedron>, r: u64) -> Result<MonomialIdeal> {
    let n = i.nvars();
    if i.is_zero() {
        return Ok(MonomialIdeal::zero(n));
    }
    if i.is_unit() {
        return Ok(MonomialIdeal::unit(n));
    }
    let np = np.expect("polyhedron for proper nonzero ideal");
    let bounds: Vec<u64> = (0..n)
        .map(|j| {
            let m = i.generators().iter().map(|g| g.exponents()[j]).max().unwrap_or(0);
            m.checked_mul(r).ok_or(Error::Overflow("closure box"))
        })
        .collect::<Result<_>>()?;
    let size = bounds.iter().fold(1u128, |a, &b| a.saturating_mul(b as u128 + 1));
    if size > CLOSURE_BOX_LIMIT {
        return Err(Error::Capability(format!(
            "integral closure generators at level {r} need {size} lattice points"
        )));
    }
    let mut pts = Vec::new();
    let mut u = vec![0u64; n];
    loop {
        if np.contains(r, &u) {
            let minimal = (0..n).all(|j| {
                if u[j] == 0 {
                    return true;
                }
                u[j] -= 1;
                let inside = np.contains(r, &u);
                u[j] += 1;
                !inside
            });
            if minimal {
                pts.push(Monomial::new(u.clone()));
            }
        }
        let mut j = 0;
        loop {
            if j == n {
                return Ok(MonomialIdeal::from_gens_unchecked(n, pts));
            }
            if u[j] < bounds[j] {
                u[j] += 1;
                break;
            }
            u[j] = 0;
            j += 1;
        }
    }
}

/// First violation found by [`verify_filtration_axioms`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomViolation {
    LevelZeroNotUnit,
    NotDescending { level: u64, witness: Vec<u64> },
    NotMultiplicative { i: u64, j: u64, witness: Vec<u64> },
    GeneratorMismatch { level: u64, witness: Vec<u64> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub r_max: u64,
    pub violation: Option<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Check `a_0 = R`, `a_{r+1} ⊆ a_r`, `a_i a_j ⊆ a_{i+j}` for `i + j ≤ r_max`,
/// and that produced generators are members of their own level.
pub fn verify_filtration_axioms(f: &Filtration, r_max: u64) -> Result<AxiomReport> {
    let report = |v| AxiomReport {
        r_max,
        violation: v,
    };
    if !f.generators(0)?.is_unit() {
        return Ok(report(Some(AxiomViolation::LevelZeroNotUnit)));
    }
    let levels: Vec<MonomialIdeal> = (0..=r_max).map(|r| f.generators(r)).collect::<Result<_>>()?;
    for r in 1..=r_max {
        for g in levels[r as usize].generators() {
            if !f.member_slice(r, g.exponents())? {
                return Ok(report(Some(AxiomViolation::GeneratorMismatch {
                    level: r,
                    witness: g.exponents().to_vec(),
                })));
            }
            if !levels[r as usize - 1].contains_slice(g.exponents()) {
                return Ok(report(Some(AxiomViolation::NotDescending {
                    level: r,
                    witness: g.exponents().to_vec(),
                })));
            }
        }
    }
    let pairs: Vec<(u64, u64)> = (1..=r_max)
        .flat_map(|i| (i..=r_max - i).map(move |j| (i, j)))
        .collect();
    let found = pairs
        .par_iter()
        .map(|&(i, j)| -> Result<Option<AxiomViolation>> {
            let target = &levels[(i + j) as usize];
            for g in levels[i as usize].generators() {
                for h in levels[j as usize].generators() {
                    let prod: Vec<u64> = g
                        .exponents()
                        .iter()
                        .zip(h.exponents())
                        .map(|(a, b)| a + b)
                        .collect();
                    if !target.contains_slice(&prod) {
                        return Ok(Some(AxiomViolation::NotMultiplicative { i, j, witness: prod }));
                    }
                }
            }
            Ok(None)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(report(found.into_iter().flatten().next()))
}

/// Finite check of the admissibility certificate: `a_k ⊆ I` and
/// `a_{(h+m)p^e+c} ⊆ (a_{m+1})^{[p^e]}` for `m ≤ m_max`, `e ≤ e_max`.
#[allow(clippy::too_many_arguments)]
pub fn is_admissible_witness(
    f: &Filtration,
    i: &MonomialIdeal,
    p: u64,
    h: u64,
    c: i64,
    k: u64,
    e_max: u32,
    m_max: u64,
) -> Result<bool> {
    if !f.level_contained_in(k, i)? {
        return Ok(false);
    }
    for e in 0..=e_max {
        let q = p.checked_pow(e).ok_or(Error::Overflow("p^e"))?;
        for m in 0..=m_max {
            let big = (h as i128 + m as i128) * q as i128 + c as i128;
            let level = u64::try_from(big.max(0)).map_err(|_| Error::Overflow("admissible level"))?;
            let target = f.generators(m + 1)?.bracket_power(q)?;
            if !f.level_contained_in(level, &target)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
enum Descriptor {
    Ordinary {
        ideal: MonomialIdeal,
    },
    Symbolic {
        ideal: MonomialIdeal,
    },
    PrimePowerIntersection {
        nvars: usize,
        components: Vec<PrimePower>,
    },
    IntegralClosure {
        ideal: MonomialIdeal,
    },
    Ceiling {
        ideal: MonomialIdeal,
        #[serde(with = "rational::serde_string")]
        beta: BigRational,
    },
    Product {
        left: Box<Descriptor>,
        right: Box<Descriptor>,
    },
    Intersection {
        left: Box<Descriptor>,
        right: Box<Descriptor>,
    },
    BinomialSum {
        left: Box<Descriptor>,
        right: Box<Descriptor>,
    },
    Veronese {
        inner: Box<Descriptor>,
        degree: u64,
    },
    Interleaved {
        odd: MonomialIdeal,
        even: MonomialIdeal,
    },
    Embed {
        inner: Box<Descriptor>,
        offset: usize,
        nvars: usize,
    },
    Explicit {
        levels: Vec<MonomialIdeal>,
    },
}

impl Descriptor {
    fn of(f: &Filtration) -> Descriptor {
        let bx = |g: &Filtration| Box::new(Descriptor::of(g));
        match &f.0.rule {
            Rule::Ordinary(i) => Descriptor::Ordinary { ideal: i.clone() },
            Rule::SymbolicSquarefree(i) => Descriptor::Symbolic { ideal: i.clone() },
            Rule::PrimePowerIntersection(c) => Descriptor::PrimePowerIntersection {
                nvars: f.nvars(),
                components: c.clone(),
            },
            Rule::IntegralClosurePowers(i) => Descriptor::IntegralClosure { ideal: i.clone() },
            Rule::CeilingPower { ideal, beta } => Descriptor::Ceiling {
                ideal: ideal.clone(),
                beta: beta.clone(),
            },
            Rule::Product(a, b) => Descriptor::Product {
                left: bx(a),
                right: bx(b),
            },
            Rule::Intersection(a, b) => Descriptor::Intersection {
                left: bx(a),
                right: bx(b),
            },
            Rule::BinomialSum(a, b) => Descriptor::BinomialSum {
                left: bx(a),
                right: bx(b),
            },
            Rule::Veronese { inner, degree } => Descriptor::Veronese {
                inner: bx(inner),
                degree: *degree,
            },
            Rule::Interleaved { odd, even } => Descriptor::Interleaved {
                odd: odd.clone(),
                even: even.clone(),
            },
            Rule::Embed {
                inner,
                offset,
                nvars,
            } => Descriptor::Embed {
                inner: bx(inner),
                offset: *offset,
                nvars: *nvars,
            },
            Rule::Explicit(levels) => Descriptor::Explicit {
                levels: levels.clone(),
            },
        }
    }

    fn build(self) -> Result<Filtration> {
        match self {
            Descriptor::Ordinary { ideal } => Filtration::ordinary(ideal),
            Descriptor::Symbolic { ideal } => Filtration::symbolic(ideal),
            Descriptor::PrimePowerIntersection { nvars, components } => {
                Filtration::prime_power_intersection(nvars, components)
            }
            Descriptor::IntegralClosure { ideal } => Filtration::integral_closure(ideal),
            Descriptor::Ceiling { ideal, beta } => Filtration::ceiling(ideal, beta),
            Descriptor::Product { left, right } => Filtration::product(left.build()?, right.build()?),
            Descriptor::Intersection { left, right } => {
                Filtration::intersection(left.build()?, right.build()?)
            }
            Descriptor::BinomialSum { left, right } => {
                Filtration::binomial_sum(left.build()?, right.build()?)
            }
            Descriptor::Veronese { inner, degree } => Filtration::veronese(inner.build()?, degree),
            Descriptor::Interleaved { odd, even } => Filtration::interleaved(odd, even),
            Descriptor::Embed {
                inner,
                offset,
                nvars,
            } => Filtration::embed(inner.build()?, offset, nvars),
            Descriptor::Explicit { levels } => {
                let n = levels.first().map(|l| l.nvars()).unwrap_or(0);
                Filtration::explicit(n, levels)
            }
        }
    }
}

impl Serialize for Filtration {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Descriptor::of(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Filtration {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Descriptor::deserialize(d)?
            .build()
            .map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn triangle() -> MonomialIdeal {
        ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])
    }

    #[test]
    fn symbolic_witness_membership() {
        let f = Filtration::symbolic(triangle()).unwrap();
        let q = 9u64;
        let u = Monomial::uniform(3, q - 1);
        assert!(f.member(2 * (q - 1), &u).unwrap());
        assert!(!f.member(2 * (q - 1) + 1, &u).unwrap());
    }

    #[test]
    fn level_zero_is_everything() {
        let f = Filtration::ordinary(MonomialIdeal::maximal(2)).unwrap();
        assert!(f.member(0, &Monomial::one(2)).unwrap());
    }

    #[test]
    fn ceiling_membership() {
        let f = Filtration::ceiling(MonomialIdeal::maximal(2), rational::int(2)).unwrap();
        assert!(!f.member(3, &Monomial::new(vec![5, 0])).unwrap());
        assert!(f.member(3, &Monomial::new(vec![6, 0])).unwrap());
    }

    #[test]
    fn generator_examples() {
        let f = Filtration::ordinary(MonomialIdeal::maximal(2)).unwrap();
        assert_eq!(f.generators(2).unwrap(), ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        let s = Filtration::symbolic(triangle()).unwrap();
        assert_eq!(
            s.generators(2).unwrap(),
            ideal(3, &[&[1, 1, 1], &[2, 2, 0], &[2, 0, 2], &[0, 2, 2]])
        );
    }

    #[test]
    fn ordinary_order_by_search() {
        // (x^2 y, x y^3): x^5 y^6 = (x^2 y)^2 (x y^3)... order 3
        let i = ideal(2, &[&[2, 1], &[1, 3]]);
        let f = Filtration::ordinary(i.clone()).unwrap();
        let u = [5u64, 6];
        let brute = (0..10u64)
            .filter(|&r| i.power(r).unwrap().contains_slice(&u))
            .max()
            .unwrap();
        assert_eq!(f.max_level_slice(&u).unwrap(), Level::Finite(brute));
    }

    #[test]
    fn unbounded_coordinates() {
        let f = Filtration::ordinary(ideal(2, &[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(f.max_level_slice(&[INF, 3]).unwrap(), Level::Infinite);
        let g = Filtration::ordinary(ideal(2, &[&[1, 1]])).unwrap();
        assert_eq!(g.max_level_slice(&[INF, 3]).unwrap(), Level::Finite(3));
    }

    #[test]
    fn zero_filtration_levels() {
        let z = Filtration::zero(2);
        assert!(z.member(0, &Monomial::one(2)).unwrap());
        assert!(!z.member(1, &Monomial::uniform(2, 100)).unwrap());
        assert_eq!(z.max_level_slice(&[INF, INF]).unwrap(), Level::Finite(0));
    }

    #[test]
    fn interleaved_levels() {
        let a = MonomialIdeal::maximal(2);
        let b = ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]);
        let f = Filtration::interleaved(a, b).unwrap();
        // x^3 ∈ m·(m^2)^1 = a_3 but not b^2 = a_4
        assert_eq!(f.max_level_slice(&[3, 0]).unwrap(), Level::Finite(3));
        assert!(verify_filtration_axioms(&f, 8).unwrap().passed());
        assert!(Filtration::interleaved(ideal(1, &[&[2]]), ideal(1, &[&[1]])).is_err());
    }

    #[test]
    fn axioms_hold_and_corruption_is_caught() {
        let f = Filtration::ceiling(MonomialIdeal::maximal(2), frac(2, 7)).unwrap();
        assert!(verify_filtration_axioms(&f, 6).unwrap().passed());
        let bad = Filtration::explicit(
            1,
            vec![
                MonomialIdeal::unit(1),
                ideal(1, &[&[2]]),
                ideal(1, &[&[1]]),
            ],
        )
        .unwrap();
        let rep = verify_filtration_axioms(&bad, 3).unwrap();
        assert!(matches!(
            rep.violation,
            Some(AxiomViolation::NotDescending { level: 2, .. })
        ));
        let sub = Filtration::explicit(
            1,
            vec![MonomialIdeal::unit(1), ideal(1, &[&[1]]), ideal(1, &[&[3]])],
        )
        .unwrap();
        assert!(verify_filtration_axioms(&sub, 1).unwrap().passed());
        assert!(matches!(
            verify_filtration_axioms(&sub, 2).unwrap().violation,
            Some(AxiomViolation::NotMultiplicative { i: 1, j: 1, .. })
        ));
    }

    #[test]
    fn admissible_certificates() {
        let a = triangle();
        let m = MonomialIdeal::maximal(3);
        let ord = Filtration::ordinary(a.clone()).unwrap();
        assert!(is_admissible_witness(&ord, &m, 2, a.len() as u64, 0, 1, 2, 2).unwrap());
        let sym = Filtration::symbolic(a.clone()).unwrap();
        let hb = a.big_height().unwrap() as u64;
        assert!(is_admissible_witness(&sym, &m, 2, hb, -(hb as i64 - 1), 1, 2, 2).unwrap());
        assert!(!is_admissible_witness(&ord, &m, 2, 0, 0, 1, 1, 1).unwrap());
    }

    #[test]
    fn symbolic_rejections() {
        assert!(matches!(
            Filtration::symbolic(ideal(2, &[&[2, 1]])),
            Err(Error::UnsupportedSymbolic(_))
        ));
        let primary = Filtration::symbolic(ideal(2, &[&[2, 0], &[0, 3]])).unwrap();
        assert!(matches!(primary.rule(), Rule::Ordinary(_)));
    }

    #[test]
    fn descriptor_round_trip() {
        let a = Filtration::symbolic(triangle()).unwrap();
        let b = Filtration::ceiling(MonomialIdeal::maximal(3), frac(7, 5)).unwrap();
        let f = Filtration::intersection(a, b).unwrap();
        let s = f.to_json();
        let back: Filtration = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert_eq!(back.to_json(), s);
        let text = r#"{"rule":"ceiling","ideal":"x1;x2","beta":"7/5"}"#;
        let c: Filtration = serde_json::from_str(text).unwrap();
        assert!(matches!(c.rule(), Rule::CeilingPower { .. }));
    }

    #[test]
    fn veronese_check() {
        let s = Filtration::symbolic(triangle()).unwrap();
        assert!(Filtration::veronese(s.clone(), 2).unwrap().verify_veronese(3).is_ok());
        assert!(matches!(
            Filtration::veronese(s, 1).unwrap().verify_veronese(2),
            Err(Error::VeroneseMismatch(_))
        ));
    }

    #[test]
    fn cache_is_bounded() {
        let f = Filtration::ordinary(MonomialIdeal::maximal(2)).unwrap();
        for r in 0..(LEVEL_CACHE_CAPACITY as u64 + 10) {
            f.generators(r).unwrap();
        }
        let c = f.0.cache.lock().unwrap();
        assert_eq!(c.map.len(), LEVEL_CACHE_CAPACITY);
        assert!(!c.map.contains_key(&0));
    }
}
