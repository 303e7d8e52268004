//! ν-invariants `ν(q) = max{r : a_r ⊄ I^[q]}` and F-thresholds.
//!
//! For a monomial target the maximal standard monomials of `I^[q]` decide
//! every containment, so `ν(q)` is the largest level reached by one of them.
//! Thresholds come either from a closed form (tagged with the argument used)
//! or as a bracket built from finitely many ν values.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::json;

use crate::error::{Error, Result};
use crate::filtration::{Filtration, Level, PrimePower, Rule};
use crate::lp::{LinearProgram, Relation, Sense};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::polyhedra::{self, WeightVector};
use crate::rational;

/// Horizon used for finite-level valuation estimates.
pub const DEFAULT_HORIZON: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NuValue {
    /// Unit target: no level escapes `R`.
    NegInfinite,
    Finite(u64),
    /// Every level escapes the target.
    Infinite,
}

impl NuValue {
    pub fn finite(self) -> Option<u64> {
        match self {
            NuValue::Finite(v) => Some(v),
            _ => None,
        }
    }

    fn add(self, o: NuValue) -> NuValue {
        use NuValue::*;
        match (self, o) {
            (NegInfinite, _) | (_, NegInfinite) => NegInfinite,
            (Infinite, _) | (_, Infinite) => Infinite,
            (Finite(a), Finite(b)) => Finite(a.saturating_add(b)),
        }
    }
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::NegInfinite => write!(f, "-inf"),
            NuValue::Finite(v) => write!(f, "{v}"),
            NuValue::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for NuValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            NuValue::Finite(v) => s.serialize_u64(*v),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NuRecord {
    pub e: u32,
    pub q: u64,
    pub nu: NuValue,
    /// `ν/q` when `ν` is finite.
    #[serde(with = "rational::serde_string_opt")]
    pub ratio: Option<BigRational>,
}

impl NuRecord {
    fn new(e: u32, q: u64, nu: NuValue) -> Self {
        let ratio = nu
            .finite()
            .map(|v| rational::from_u64(v) / rational::from_u64(q));
        NuRecord { e, q, nu, ratio }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_power(p: u64, e: u32) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    p.checked_pow(e).ok_or(Error::Overflow("p^e"))
}

fn check_target(f: &Filtration, target: &MonomialIdeal) -> Result<()> {
    if f.nvars() != target.nvars() {
        return Err(Error::AmbientMismatch {
            expected: f.nvars(),
            found: target.nvars(),
        });
    }
    Ok(())
}

/// `ν(q)` for an arbitrary positive integer `q`, via corner witnesses.
pub fn nu_at(f: &Filtration, target: &MonomialIdeal, q: u64) -> Result<NuValue> {
    check_target(f, target)?;
    let mut best = NuValue::NegInfinite;
    for s in target.corner_witnesses(q)? {
        match f.max_level_slice(&s)? {
            Level::Infinite => return Ok(NuValue::Infinite),
            Level::Finite(l) => best = best.max(NuValue::Finite(l)),
        }
    }
    Ok(best)
}

pub fn nu(f: &Filtration, target: &MonomialIdeal, p: u64, e: u32) -> Result<NuRecord> {
    let q = prime_power(p, e)?;
    Ok(NuRecord::new(e, q, nu_at(f, target, q)?))
}

/// `ν(p^e)` straight from the definition: the first level whose generators
/// lie in `I^[q]`. Levels above `r_cap` are not examined; if none is
/// contained up to there the value is reported as infinite.
pub fn nu_by_generators(
    f: &Filtration,
    target: &MonomialIdeal,
    p: u64,
    e: u32,
    r_cap: u64,
) -> Result<NuRecord> {
    check_target(f, target)?;
    let q = prime_power(p, e)?;
    let bracket = target.bracket_power(q)?;
    let escapes = |r: u64| -> Result<bool> { Ok(!bracket.contains_ideal(&f.generators(r)?)?) };
    if !escapes(0)? {
        return Ok(NuRecord::new(e, q, NuValue::NegInfinite));
    }
    let mut hi = 1u64;
    while escapes(hi)? {
        if hi >= r_cap {
            return Ok(NuRecord::new(e, q, NuValue::Infinite));
        }
        hi = (hi * 2).min(r_cap);
    }
    let mut lo = hi / 2;
    // escapes(lo) holds and escapes(hi) fails
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if escapes(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(NuRecord::new(e, q, NuValue::Finite(lo)))
}

#[derive(Clone, Debug, Serialize)]
pub struct NuSequence {
    pub p: u64,
    pub records: Vec<NuRecord>,
    /// Running supremum of the ratios up to each `e`.
    #[serde(with = "rational::serde_string_vec_opt")]
    pub running_sup: Vec<Option<BigRational>>,
    /// First `e` with `p·ν(p^e) > ν(p^{e+1})`, if any.
    pub doubling_violation: Option<u32>,
}

impl NuSequence {
    pub fn supremum(&self) -> Option<&BigRational> {
        self.running_sup.last().and_then(|x| x.as_ref())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("e,q,nu,ratio\n");
        for r in &self.records {
            let ratio = r.ratio.as_ref().map(rational::to_string).unwrap_or_default();
            out.push_str(&format!("{},{},{},{}\n", r.e, r.q, r.nu, ratio));
        }
        out
    }
}

pub fn nu_sequence(f: &Filtration, target: &MonomialIdeal, p: u64, e_max: u32) -> Result<NuSequence> {
    prime_power(p, e_max)?;
    let records = (0..=e_max)
        .into_par_iter()
        .map(|e| nu(f, target, p, e))
        .collect::<Result<Vec<_>>>()?;
    let mut running_sup = Vec::with_capacity(records.len());
    let mut sup: Option<BigRational> = None;
    for r in &records {
        if let Some(x) = &r.ratio {
            if sup.as_ref().is_none_or(|s| x > s) {
                sup = Some(x.clone());
            }
        }
        running_sup.push(sup.clone());
    }
    let doubling_violation = records.windows(2).find_map(|w| {
        let ok = match (w[0].nu, w[1].nu) {
            (NuValue::Finite(a), NuValue::Finite(b)) => a.saturating_mul(p) <= b,
            (NuValue::Finite(_), NuValue::Infinite) => true,
            (NuValue::Infinite, NuValue::Infinite) => true,
            (NuValue::NegInfinite, NuValue::NegInfinite) => true,
            _ => false,
        };
        (!ok).then_some(w[0].e)
    });
    Ok(NuSequence {
        p,
        records,
        running_sup,
        doubling_violation,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ReesValuation,
    SymbolicSquarefree,
    PrimePowerMin,
    VeroneseReduction,
    NuSupremumBracket,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ThresholdResult {
    Exact {
        #[serde(with = "rational::serde_string")]
        value: BigRational,
        method: Method,
        certificate: serde_json::Value,
    },
    Bracket {
        #[serde(with = "rational::serde_string")]
        lower: BigRational,
        #[serde(with = "rational::serde_string_opt")]
        upper: Option<BigRational>,
        e_max: u32,
        p: u64,
        method: Method,
        /// False when the upper end rests on a finite-horizon estimate.
        upper_certified: bool,
    },
}

impl ThresholdResult {
    pub fn exact_value(&self) -> Option<&BigRational> {
        match self {
            ThresholdResult::Exact { value, .. } => Some(value),
            _ => None,
        }
    }

    pub fn method(&self) -> Method {
        match self {
            ThresholdResult::Exact { method, .. } | ThresholdResult::Bracket { method, .. } => *method,
        }
    }

    pub fn lower(&self) -> &BigRational {
        match self {
            ThresholdResult::Exact { value, .. } => value,
            ThresholdResult::Bracket { lower, .. } => lower,
        }
    }

    pub fn upper(&self) -> Option<&BigRational> {
        match self {
            ThresholdResult::Exact { value, .. } => Some(value),
            ThresholdResult::Bracket { upper, .. } => upper.as_ref(),
        }
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.lower() <= x && self.upper().is_none_or(|u| x <= u)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("result serializes")
    }
}

fn facet_json(normal: &[u64], offset: u64) -> serde_json::Value {
    json!({"normal": normal, "offset": offset})
}

/// `min{s : s·(1,…,1) ∈ NP(I)}` by linear programming over the generators.
fn diagonal_scale(i: &MonomialIdeal) -> Result<BigRational> {
    let k = i.len();
    let n = i.nvars();
    let mut obj = vec![BigRational::zero(); k + 1];
    obj[0] = BigRational::one();
    let mut lp = LinearProgram::new(Sense::Min, obj);
    for j in 0..n {
        let mut row = vec![-BigRational::one()];
        row.extend(i.generators().iter().map(|g| rational::from_u64(g.exponents()[j])));
        lp.add(row, Relation::Le, BigRational::zero());
    }
    let mut row = vec![BigRational::zero()];
    row.extend(std::iter::repeat_n(BigRational::one(), k));
    lp.add(row, Relation::Eq, BigRational::one());
    let sol = lp.solve();
    if !sol.verify(&lp) {
        return Err(Error::Capability("diagonal LP did not certify".into()));
    }
    Ok(sol.value.expect("optimal"))
}

fn require_proper(i: &MonomialIdeal) -> Result<()> {
    if !i.is_proper_nonzero() {
        return Err(Error::InvalidArgument(
            "threshold needs a nonzero proper ideal".into(),
        ));
    }
    Ok(())
}

/// `C^m(I^•) = min ⟨w,1⟩/v(I)` over the Rees valuations of `I`, cross-checked
/// against the diagonal of the Newton polyhedron.
pub fn fthreshold_ordinary(i: &MonomialIdeal) -> Result<ThresholdResult> {
    require_proper(i)?;
    let np = polyhedra::newton_polyhedron(i)?;
    let (facet, value) = np
        .essential_facets()
        .iter()
        .map(|f| {
            let total: u64 = f.normal.iter().sum();
            (f, rational::frac(total as i64, f.offset as i64))
        })
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("proper nonzero ideal has an essential facet");
    let scale = diagonal_scale(i)?;
    if scale.recip() != value {
        return Err(Error::Capability(format!(
            "facet value {value} disagrees with diagonal scale {scale}"
        )));
    }
    Ok(ThresholdResult::Exact {
        value,
        method: Method::ReesValuation,
        certificate: json!({
            "facet": facet_json(&facet.normal, facet.offset),
            "diagonal_scale": rational::to_string(&scale),
            "rees_valuations": np.essential_facets().len(),
        }),
    })
}

fn ratio_sup(seq: &NuSequence) -> Result<BigRational> {
    if seq.records.iter().any(|r| r.nu == NuValue::Infinite) {
        return Err(Error::Capability("ν is infinite: the threshold is +∞".into()));
    }
    Ok(seq.supremum().cloned().unwrap_or_else(BigRational::zero))
}

/// Ordinary powers against a pure-power target other than `m`: the lower end
/// is the ν supremum, the upper end the polyhedral value for that target.
pub fn fthreshold_ordinary_target(
    i: &MonomialIdeal,
    target: &MonomialIdeal,
    p: u64,
    e_max: u32,
) -> Result<ThresholdResult> {
    require_proper(i)?;
    if target.is_maximal() {
        return fthreshold_ordinary(i);
    }
    let f = Filtration::ordinary(i.clone())?;
    let seq = nu_sequence(&f, target, p, e_max)?;
    let upper = target
        .pure_power_exponents()
        .and_then(|m| f.threshold_closed_form(&m))
        .map(|(v, _)| v);
    Ok(ThresholdResult::Bracket {
        lower: ratio_sup(&seq)?,
        upper_certified: upper.is_some(),
        upper,
        e_max,
        p,
        method: Method::NuSupremumBracket,
    })
}

/// `C^m(a^{(•)}) = ht(a)` for square-free `a`.
pub fn fthreshold_symbolic_squarefree(i: &MonomialIdeal) -> Result<ThresholdResult> {
    if !i.is_squarefree() {
        return Err(Error::NotSquarefree(i.to_string()));
    }
    require_proper(i)?;
    let primes = i.minimal_primes()?;
    let prime = primes
        .iter()
        .min_by_key(|p| (p.len(), (*p).clone()))
        .expect("proper ideal has a minimal prime");
    let h = prime.len() as u64;
    let f = Filtration::symbolic_squarefree(i.clone())?;
    let n = i.nvars();
    let mut chain = Vec::new();
    for e in 1..=3u32 {
        let q = 2u64.pow(e);
        let witness = Monomial::uniform(n, q - 1);
        let level = h * (q - 1);
        if !f.member(level, &witness)? {
            return Err(Error::Capability(format!(
                "witness (x1⋯xn)^{} not in level {level}",
                q - 1
            )));
        }
        chain.push(json!({"q": q, "level": level}));
    }
    Ok(ThresholdResult::Exact {
        value: rational::from_u64(h),
        method: Method::SymbolicSquarefree,
        certificate: json!({"prime": prime, "height": h, "witness_chain": chain}),
    })
}

/// `min_i |S_i|/ω_i` for `∩ P_i^{ω_i r}`.
pub fn fthreshold_prime_power_intersection(
    nvars: usize,
    components: &[PrimePower],
) -> Result<ThresholdResult> {
    let f = Filtration::prime_power_intersection(nvars, components.to_vec())?;
    let Rule::PrimePowerIntersection(cs) = f.rule() else {
        unreachable!()
    };
    let (best, value) = cs
        .iter()
        .map(|c| (c, rational::frac(c.vars.len() as i64, c.omega as i64)))
        .min_by(|a, b| a.1.cmp(&b.1))
        .expect("nonempty components");
    Ok(ThresholdResult::Exact {
        value,
        method: Method::PrimePowerMin,
        certificate: json!({"component": best}),
    })
}

/// Bracket `[sup_{e ≤ e_max} ν/p^e, min_v v(x_1⋯x_n)/v̂]`. Valuations default
/// to the degree. The upper end is only given for the target `m`.
pub fn fthreshold_bracket(
    f: &Filtration,
    target: &MonomialIdeal,
    p: u64,
    e_max: u32,
    valuations: &[WeightVector],
) -> Result<ThresholdResult> {
    let seq = nu_sequence(f, target, p, e_max)?;
    let lower = ratio_sup(&seq)?;
    let mut upper = None;
    let mut upper_certified = false;
    if target.is_maximal() {
        let defaults = [WeightVector::degree(f.nvars())];
        let vals = if valuations.is_empty() {
            &defaults[..]
        } else {
            valuations
        };
        let mut certified: Option<BigRational> = None;
        let mut heuristic: Option<BigRational> = None;
        for v in vals {
            let sw = polyhedra::skew_waldschmidt(v, f, DEFAULT_HORIZON)?;
            if !sw.lower.is_positive() {
                continue;
            }
            let cand = v.total() / &sw.lower;
            let slot = if sw.lower_certified {
                &mut certified
            } else {
                &mut heuristic
            };
            if slot.as_ref().is_none_or(|x| &cand < x) {
                *slot = Some(cand);
            }
        }
        if certified.is_some() {
            upper = certified;
            upper_certified = true;
        } else {
            upper = heuristic;
        }
    }
    Ok(ThresholdResult::Bracket {
        lower,
        upper,
        upper_certified,
        e_max,
        p,
        method: Method::NuSupremumBracket,
    })
}

/// `C(a_•) = d·C(a_d^•)` for a filtration with `a_{kd} = a_d^k`.
pub fn veronese_reduce(
    f: &Filtration,
    target: &MonomialIdeal,
    p: u64,
    e_max: u32,
) -> Result<ThresholdResult> {
    check_target(f, target)?;
    let (degree, base) = match f.rule() {
        Rule::Veronese { inner, degree } => {
            f.verify_veronese(4)?;
            (*degree, inner.generators(*degree)?)
        }
        Rule::Interleaved { even, .. } => (2, even.clone()),
        _ => {
            return Err(Error::InvalidArgument(
                "Veronese reduction needs a Veronese or interleaved filtration".into(),
            ))
        }
    };
    let d = rational::from_u64(degree);
    let reduced = fthreshold_ordinary_target(&base, target, p, e_max)?;
    Ok(match reduced {
        ThresholdResult::Exact {
            value, certificate, ..
        } => ThresholdResult::Exact {
            value: value * &d,
            method: Method::VeroneseReduction,
            certificate: json!({"degree": degree, "base": base, "base_certificate": certificate}),
        },
        ThresholdResult::Bracket {
            upper,
            upper_certified,
            ..
        } => {
            let seq = nu_sequence(f, target, p, e_max)?;
            ThresholdResult::Bracket {
                lower: ratio_sup(&seq)?,
                upper: upper.map(|u| u * &d),
                upper_certified,
                e_max,
                p,
                method: Method::NuSupremumBracket,
            }
        }
    })
}

/// Threshold by the strongest available route: a closed form for the target
/// `m`, otherwise a bracket.
pub fn fthreshold(f: &Filtration, target: &MonomialIdeal, p: u64, e_max: u32) -> Result<ThresholdResult> {
    check_target(f, target)?;
    if !target.is_maximal() {
        let seq = nu_sequence(f, target, p, e_max)?;
        let upper = target
            .pure_power_exponents()
            .and_then(|m| f.threshold_closed_form(&m))
            .map(|(v, _)| v);
        return Ok(ThresholdResult::Bracket {
            lower: ratio_sup(&seq)?,
            upper_certified: upper.is_some(),
            upper,
            e_max,
            p,
            method: Method::NuSupremumBracket,
        });
    }
    match f.rule() {
        Rule::Ordinary(i) if i.is_proper_nonzero() => return fthreshold_ordinary(i),
        Rule::SymbolicSquarefree(i) => return fthreshold_symbolic_squarefree(i),
        Rule::PrimePowerIntersection(cs) => {
            return fthreshold_prime_power_intersection(f.nvars(), cs)
        }
        Rule::Veronese { .. } | Rule::Interleaved { .. } => return veronese_reduce(f, target, p, e_max),
        _ => {}
    }
    let ones = vec![1u64; f.nvars()];
    if let Some((value, tag)) = f.threshold_closed_form(&ones) {
        let method = match tag {
            "symbolic_squarefree" => Method::SymbolicSquarefree,
            "prime_power_min" => Method::PrimePowerMin,
            "veronese_reduction" => Method::VeroneseReduction,
            _ => Method::ReesValuation,
        };
        return Ok(ThresholdResult::Exact {
            value,
            method,
            certificate: json!({"filtration": f.to_string()}),
        });
    }
    fthreshold_bracket(f, target, p, e_max, &[])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawRow {
    pub law: &'static str,
    pub e: u32,
    pub lhs: NuValue,
    pub rhs: NuValue,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub rows: Vec<LawRow>,
}

impl LawReport {
    pub fn holds(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }
}

/// `ν_{a∩b}(p^e) = min(ν_a(p^e), ν_b(p^e))`.
pub fn check_min_law(
    f: &Filtration,
    g: &Filtration,
    target: &MonomialIdeal,
    p: u64,
    e_max: u32,
) -> Result<LawReport> {
    let h = Filtration::intersection(f.clone(), g.clone())?;
    let rows = (0..=e_max)
        .into_par_iter()
        .map(|e| -> Result<LawRow> {
            let lhs = nu(&h, target, p, e)?.nu;
            let rhs = nu(f, target, p, e)?.nu.min(nu(g, target, p, e)?.nu);
            Ok(LawRow {
                law: "min",
                e,
                lhs,
                rhs,
                holds: lhs == rhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LawReport { rows })
}

/// `I` as an ideal in `nvars` variables, on the block starting at `offset`.
pub fn shift_ideal(i: &MonomialIdeal, offset: usize, nvars: usize) -> Result<MonomialIdeal> {
    if offset + i.nvars() > nvars {
        return Err(Error::InvalidArgument("block does not fit".into()));
    }
    if i.is_zero() {
        return Ok(MonomialIdeal::zero(nvars));
    }
    let gens = i
        .generators()
        .iter()
        .map(|g| {
            let mut e = vec![0u64; nvars];
            e[offset..offset + i.nvars()].copy_from_slice(g.exponents());
            Monomial::new(e)
        })
        .collect();
    MonomialIdeal::new(nvars, gens)
}

/// For `a_•` in the first block with target `I` and `b_•` in the second with
/// target `J`: `ν^{I+J}` of `Σ a_i b_{r-i}` is `ν_a^I + ν_b^J`, and `ν^{IJ}`
/// of `a_r b_r` is `max(ν_a^I, ν_b^J)`.
pub fn check_sum_product_laws(
    f: &Filtration,
    i: &MonomialIdeal,
    g: &Filtration,
    j: &MonomialIdeal,
    p: u64,
    e_max: u32,
) -> Result<LawReport> {
    check_target(f, i)?;
    check_target(g, j)?;
    let (n1, n) = (f.nvars(), f.nvars() + g.nvars());
    let fe = Filtration::embed(f.clone(), 0, n)?;
    let ge = Filtration::embed(g.clone(), n1, n)?;
    let sum = Filtration::binomial_sum(fe.clone(), ge.clone())?;
    let prod = Filtration::product(fe, ge)?;
    let ie = shift_ideal(i, 0, n)?;
    let je = shift_ideal(j, n1, n)?;
    let i_plus_j = ie.sum(&je)?;
    let i_times_j = ie.product(&je)?;
    let rows = (0..=e_max)
        .into_par_iter()
        .map(|e| -> Result<Vec<LawRow>> {
            let a = nu(f, i, p, e)?.nu;
            let b = nu(g, j, p, e)?.nu;
            let s = nu(&sum, &i_plus_j, p, e)?.nu;
            let m = nu(&prod, &i_times_j, p, e)?.nu;
            Ok(vec![
                LawRow {
                    law: "sum",
                    e,
                    lhs: s,
                    rhs: a.add(b),
                    holds: s == a.add(b),
                },
                LawRow {
                    law: "product",
                    e,
                    lhs: m,
                    rhs: a.max(b),
                    holds: m == a.max(b),
                },
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LawReport {
        rows: rows.into_iter().flatten().collect(),
    })
}

/// `ν_G(p^e) ≤ ν_F(p^e) + k` for `e ≤ e_max`.
pub fn check_nu_shift(
    f: &Filtration,
    g: &Filtration,
    k: u64,
    target: &MonomialIdeal,
    p: u64,
    e_max: u32,
) -> Result<LawReport> {
    let rows = (0..=e_max)
        .map(|e| -> Result<LawRow> {
            let lhs = nu(g, target, p, e)?.nu;
            let rhs = nu(f, target, p, e)?.nu.add(NuValue::Finite(k));
            Ok(LawRow {
                law: "shift",
                e,
                lhs,
                rhs,
                holds: lhs <= rhs,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LawReport { rows })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigHeightRow {
    pub e: u32,
    pub q: u64,
    pub level: u64,
    pub contained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BigHeightReport {
    pub big_height: u64,
    pub height: u64,
    pub rows: Vec<BigHeightRow>,
    /// `H − 1/q` at the first `e` where containment holds.
    #[serde(with = "rational::serde_string_opt")]
    pub upper_bound: Option<BigRational>,
}

impl BigHeightReport {
    pub fn never_contained(&self) -> bool {
        self.rows.iter().all(|r| !r.contained)
    }
}

/// Test `a^{(H(q−1))} ⊆ J^[q]` for `q = p^e`, `e ≤ e_max`, where `H` is the
/// big height of the square-free ideal `a` and `J ⊇ a` is radical.
pub fn big_height_criterion(
    a: &MonomialIdeal,
    j: &MonomialIdeal,
    p: u64,
    e_max: u32,
) -> Result<BigHeightReport> {
    if !a.is_squarefree() {
        return Err(Error::NotSquarefree(a.to_string()));
    }
    if !j.is_squarefree() {
        return Err(Error::NotSquarefree(format!("target {j} is not radical")));
    }
    if !j.contains_ideal(a)? {
        return Err(Error::InvalidArgument(format!("{a} is not contained in {j}")));
    }
    let f = Filtration::symbolic_squarefree(a.clone())?;
    let h = a.big_height()? as u64;
    let rows = (0..=e_max)
        .map(|e| -> Result<BigHeightRow> {
            let q = prime_power(p, e)?;
            let level = h * (q - 1);
            Ok(BigHeightRow {
                e,
                q,
                level,
                contained: f.level_contained_in(level, &j.bracket_power(q)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let upper_bound = rows
        .iter()
        .find(|r| r.contained && r.e > 0)
        .map(|r| rational::from_u64(h) - rational::frac(1, r.q as i64));
    Ok(BigHeightReport {
        big_height: h,
        height: a.height()? as u64,
        rows,
        upper_bound,
    })
}

/// `a^{(H(p−1))} ⊄ m^{[p]}`.
pub fn symbolic_fsplit_witness(a: &MonomialIdeal, p: u64) -> Result<bool> {
    let report = big_height_criterion(a, &MonomialIdeal::maximal(a.nvars()), p, 1)?;
    Ok(!report.rows[1].contained)
}
