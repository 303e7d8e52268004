//! Newton polyhedra of monomial ideals, their Rees valuations, and
//! asymptotic valuation values of filtrations.
//!
//! The facet list comes from a double-description pass over the cone
//! `{(w, t) : w ≥ 0, ⟨w, g⟩ + t ≥ 0 for every generator g}`: its extreme rays
//! with `t < 0` are exactly the inequalities `⟨w, x⟩ ≥ -t` cutting out the
//! bounded-from-below part of `conv(exponents) + R^n_{≥0}`.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::filtration::{Filtration, Level};
use crate::lp::{LinearProgram, LpStatus, Relation, Sense};
use crate::monomial::{Monomial, MonomialIdeal, INF};
use crate::rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WeightRepr", into = "WeightRepr")]
pub struct WeightVector {
    weights: Vec<BigRational>,
}

#[derive(Serialize, Deserialize)]
struct WeightRepr {
    #[serde(with = "rational::serde_string_vec")]
    weights: Vec<BigRational>,
}

impl TryFrom<WeightRepr> for WeightVector {
    type Error = Error;
    fn try_from(r: WeightRepr) -> Result<Self> {
        WeightVector::new(r.weights)
    }
}

impl From<WeightVector> for WeightRepr {
    fn from(w: WeightVector) -> Self {
        WeightRepr { weights: w.weights }
    }
}

impl WeightVector {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.iter().any(|w| w.is_negative()) {
            return Err(Error::InvalidArgument("weights must be non-negative".into()));
        }
        if weights.iter().all(|w| w.is_zero()) {
            return Err(Error::InvalidArgument("weights must not all vanish".into()));
        }
        Ok(WeightVector { weights })
    }

    pub fn from_integers(w: &[u64]) -> Result<Self> {
        Self::new(w.iter().map(|&x| rational::from_u64(x)).collect())
    }

    /// The degree valuation `α`.
    pub fn degree(nvars: usize) -> Self {
        WeightVector {
            weights: vec![rational::int(1); nvars],
        }
    }

    /// `v_P` for the prime generated by `vars`: the order of vanishing along it.
    pub fn prime(nvars: usize, vars: &[usize]) -> Result<Self> {
        let mut w = vec![rational::int(0); nvars];
        for &j in vars {
            if j >= nvars {
                return Err(Error::InvalidArgument(format!("variable {j} out of range")));
            }
            w[j] = rational::int(1);
        }
        Self::new(w)
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    pub fn scale(&self, c: &BigRational) -> Result<Self> {
        Self::new(self.weights.iter().map(|w| w * c).collect())
    }

    pub fn eval(&self, u: &Monomial) -> BigRational {
        self.weights
            .iter()
            .zip(u.exponents())
            .fold(BigRational::zero(), |acc, (w, &e)| acc + w * rational::from_u64(e))
    }

    /// `v(x_1 ⋯ x_n)`.
    pub fn total(&self) -> BigRational {
        self.weights.iter().fold(BigRational::zero(), |a, w| a + w)
    }
}

/// `⟨normal, x⟩ ≥ offset` with a primitive non-negative integer normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FacetInequality {
    pub normal: Vec<u64>,
    pub offset: u64,
}

impl FacetInequality {
    /// `⟨normal, u⟩`, or `None` when an unbounded coordinate meets the support.
    pub fn value(&self, u: &[u64]) -> Option<u128> {
        let mut s: u128 = 0;
        for (&w, &x) in self.normal.iter().zip(u) {
            if w == 0 {
                continue;
            }
            if x == INF {
                return None;
            }
            s += w as u128 * x as u128;
        }
        Some(s)
    }

    pub fn weight_vector(&self) -> WeightVector {
        WeightVector::from_integers(&self.normal).expect("facet normals are nonzero")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolyhedron {
    #[serde(skip)]
    source: MonomialIdeal,
    /// Facets with positive offset; these are the Rees valuations.
    essential: Vec<FacetInequality>,
    /// Coordinates `j` for which `x_j ≥ 0` is a facet.
    coordinate: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesValuation {
    pub valuation: WeightVector,
    /// `v(I)`, the facet offset.
    pub value: u64,
}

impl NewtonPolyhedron {
    pub fn source(&self) -> &MonomialIdeal {
        &self.source
    }

    pub fn essential_facets(&self) -> &[FacetInequality] {
        &self.essential
    }

    pub fn coordinate_facets(&self) -> &[usize] {
        &self.coordinate
    }

    /// Essential facets followed by the coordinate facets `x_j ≥ 0`.
    pub fn all_facets(&self) -> Vec<FacetInequality> {
        let n = self.source.nvars();
        let mut out = self.essential.clone();
        for &j in &self.coordinate {
            let mut w = vec![0; n];
            w[j] = 1;
            out.push(FacetInequality { normal: w, offset: 0 });
        }
        out
    }

    /// `u ∈ \overline{I^r}`, i.e. `u ∈ r·NP(I)`.
    pub fn contains(&self, r: u64, u: &[u64]) -> bool {
        self.essential.iter().all(|f| match f.value(u) {
            None => true,
            Some(s) => s >= r as u128 * f.offset as u128,
        })
    }

    /// Largest `r` with `u ∈ \overline{I^r}`.
    pub fn level(&self, u: &[u64]) -> Level {
        let mut best = Level::Infinite;
        for f in &self.essential {
            if let Some(s) = f.value(u) {
                let l = s / f.offset as u128;
                let l = Level::Finite(u64::try_from(l).unwrap_or(u64::MAX - 1));
                best = best.min(l);
            }
        }
        best
    }

    /// `max { t : u ∈ t·NP(I) }` as an exact rational, `None` when unbounded.
    pub fn fractional_level(&self, u: &[u64]) -> Option<BigRational> {
        self.essential
            .iter()
            .filter_map(|f| {
                f.value(u)
                    .map(|s| rational_from_u128(s) / rational::from_u64(f.offset))
            })
            .min()
    }

    pub fn rees_valuations(&self) -> Vec<ReesValuation> {
        self.essential
            .iter()
            .map(|f| ReesValuation {
                valuation: f.weight_vector(),
                value: f.offset,
            })
            .collect()
    }

    /// Check by LP that every essential facet is needed: dropping it admits a
    /// point of the orthant violating it.
    pub fn is_irredundant(&self) -> bool {
        let n = self.source.nvars();
        (0..self.essential.len()).all(|k| {
            let target = &self.essential[k];
            let mut lp = LinearProgram::new(
                Sense::Min,
                target.normal.iter().map(|&w| rational::from_u64(w)).collect(),
            );
            for (i, f) in self.essential.iter().enumerate() {
                if i != k {
                    lp.add(
                        f.normal.iter().map(|&w| rational::from_u64(w)).collect(),
                        Relation::Ge,
                        rational::from_u64(f.offset),
                    );
                }
            }
            let s = lp.solve();
            debug_assert!(n == 0 || s.status == LpStatus::Optimal);
            match s.value {
                Some(v) => v < rational::from_u64(target.offset),
                None => false,
            }
        })
    }
}

fn rational_from_u128(x: u128) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(x))
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1u64 << (i % 64);
    }
    fn and(&self, o: &Bits) -> Bits {
        Bits(self.0.iter().zip(&o.0).map(|(a, b)| a & b).collect())
    }
    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }
    fn is_superset(&self, o: &Bits) -> bool {
        self.0.iter().zip(&o.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    v: Vec<i128>,
    zeros: Bits,
}

fn ovf() -> Error {
    Error::Overflow("facet enumeration")
}

fn dot_i128(a: &[i128], b: &[i128]) -> Result<i128> {
    a.iter().zip(b).try_fold(0i128, |acc, (x, y)| {
        x.checked_mul(*y).and_then(|p| acc.checked_add(p)).ok_or_else(ovf)
    })
}

fn primitive(v: &mut [i128]) {
    let g = v.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Facet description of `conv(exponents of I) + R^n_{≥0}`.
pub fn newton_polyhedron(ideal: &MonomialIdeal) -> Result<NewtonPolyhedron> {
    if !ideal.is_proper_nonzero() {
        return Err(Error::InvalidArgument(
            "Newton polyhedron needs a nonzero proper ideal".into(),
        ));
    }
    let n = ideal.nvars();
    let d = n + 1;
    let gens: Vec<Vec<i128>> = ideal
        .generators()
        .iter()
        .map(|g| {
            g.exponents()
                .iter()
                .map(|&e| i128::try_from(e).map_err(|_| ovf()))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    // constraint rows: e_0..e_{n-1}, then (g, 1) for each generator
    let mut rows: Vec<Vec<i128>> = (0..n)
        .map(|j| {
            let mut r = vec![0; d];
            r[j] = 1;
            r
        })
        .collect();
    for g in &gens {
        let mut r = g.clone();
        r.push(1);
        rows.push(r);
    }
    let nrows = rows.len();

    // initial simplicial cone from rows 0..=n
    let g0 = &gens[0];
    let mut rays: Vec<Ray> = Vec::with_capacity(d);
    for j in 0..n {
        let mut v = vec![0i128; d];
        v[j] = 1;
        v[n] = -g0[j];
        let mut zeros = Bits::new(nrows);
        for i in 0..=n {
            if i != j {
                zeros.set(i);
            }
        }
        rays.push(Ray { v, zeros });
    }
    {
        let mut v = vec![0i128; d];
        v[n] = 1;
        let mut zeros = Bits::new(nrows);
        for i in 0..n {
            zeros.set(i);
        }
        rays.push(Ray { v, zeros });
    }

    for (k, row) in rows.iter().enumerate().skip(n + 1) {
        let vals: Vec<i128> = rays
            .iter()
            .map(|r| dot_i128(row, &r.v))
            .collect::<Result<_>>()?;
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        if neg.is_empty() {
            for (i, r) in rays.iter_mut().enumerate() {
                if vals[i] == 0 {
                    r.zeros.set(k);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zeros.and(&rays[q].zeros);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(i, r)| i == p || i == q || !r.zeros.is_superset(&common));
                if !adjacent {
                    continue;
                }
                let (sp, sq) = (vals[p], -vals[q]);
                let mut v = rays[q]
                    .v
                    .iter()
                    .zip(&rays[p].v)
                    .map(|(&a, &b)| {
                        a.checked_mul(sp)
                            .and_then(|x| b.checked_mul(sq).and_then(|y| x.checked_add(y)))
                            .ok_or_else(ovf)
                    })
                    .collect::<Result<Vec<_>>>()?;
                primitive(&mut v);
                let mut zeros = common;
                zeros.set(k);
                fresh.push(Ray { v, zeros });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, mut r) in rays.into_iter().enumerate() {
            if vals[i] > 0 {
                next.push(r);
            } else if vals[i] == 0 {
                r.zeros.set(k);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }

    let mut essential = Vec::new();
    let mut coordinate = Vec::new();
    for r in rays {
        let w = &r.v[..n];
        let t = r.v[n];
        if w.iter().all(|&x| x == 0) {
            continue;
        }
        debug_assert!(w.iter().all(|&x| x >= 0) && t <= 0);
        if t == 0 {
            let support: Vec<usize> = (0..n).filter(|&j| w[j] != 0).collect();
            debug_assert_eq!(support.len(), 1);
            coordinate.push(support[0]);
        } else {
            essential.push(FacetInequality {
                normal: w.iter().map(|&x| x as u64).collect(),
                offset: (-t) as u64,
            });
        }
    }
    essential.sort();
    essential.dedup();
    coordinate.sort();
    coordinate.dedup();
    Ok(NewtonPolyhedron {
        source: ideal.clone(),
        essential,
        coordinate,
    })
}

/// `u ∈ \overline{I^r}`.
pub fn integral_closure_member(ideal: &MonomialIdeal, r: u64, u: &Monomial) -> Result<bool> {
    if u.nvars() != ideal.nvars() {
        return Err(Error::AmbientMismatch {
            expected: ideal.nvars(),
            found: u.nvars(),
        });
    }
    if r == 0 || ideal.is_unit() {
        return Ok(true);
    }
    if ideal.is_zero() {
        return Ok(false);
    }
    Ok(newton_polyhedron(ideal)?.contains(r, u.exponents()))
}

pub fn rees_valuations(ideal: &MonomialIdeal) -> Result<Vec<ReesValuation>> {
    Ok(newton_polyhedron(ideal)?.rees_valuations())
}

/// `v(I) = min over generators of v(g)`. The zero ideal has no finite value.
pub fn valuation_of_ideal(v: &WeightVector, ideal: &MonomialIdeal) -> Result<BigRational> {
    if v.nvars() != ideal.nvars() {
        return Err(Error::AmbientMismatch {
            expected: ideal.nvars(),
            found: v.nvars(),
        });
    }
    ideal
        .generators()
        .iter()
        .map(|g| v.eval(g))
        .min()
        .ok_or_else(|| Error::InvalidArgument("valuation of the zero ideal is infinite".into()))
}

/// `v(a_r)`.
pub fn valuation_of_level(v: &WeightVector, f: &Filtration, r: u64) -> Result<BigRational> {
    if v.nvars() != f.nvars() {
        return Err(Error::AmbientMismatch {
            expected: f.nvars(),
            found: v.nvars(),
        });
    }
    f.valuation_at(v.weights(), r)
}

/// `min ⟨v, x⟩` over `{x ≥ 0 : ⟨w_k, x⟩ ≥ c_k}`.
pub(crate) fn polyhedral_minimum(
    v: &[BigRational],
    constraints: &[(Vec<BigRational>, BigRational)],
) -> Result<BigRational> {
    let mut lp = LinearProgram::new(Sense::Min, v.to_vec());
    for (w, c) in constraints {
        lp.add(w.clone(), Relation::Ge, c.clone());
    }
    let s = lp.solve();
    match s.status {
        LpStatus::Optimal => {
            debug_assert!(s.verify(&lp));
            Ok(s.value.expect("optimal"))
        }
        LpStatus::Infeasible => Err(Error::InvalidArgument(
            "asymptotic polyhedron is empty".into(),
        )),
        LpStatus::Unbounded => unreachable!("non-negative objective over the orthant"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkewWaldschmidt {
    #[serde(with = "rational::serde_string")]
    pub lower: BigRational,
    #[serde(with = "rational::serde_string")]
    pub upper: BigRational,
    #[serde(with = "rational::serde_string_opt")]
    pub exact: Option<BigRational>,
    /// False when `lower` is only the subadditivity heuristic `upper - v(a_1)/R`.
    pub lower_certified: bool,
    pub horizon: u64,
}

/// Bounds on `v̂(a_•) = inf_r v(a_r)/r`.
///
/// `upper` is the finite-horizon minimum over `1 ≤ r ≤ horizon`. When the
/// filtration has a closed asymptotic form the exact value is returned and
/// also used as the lower bound.
pub fn skew_waldschmidt(v: &WeightVector, f: &Filtration, horizon: u64) -> Result<SkewWaldschmidt> {
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be positive".into()));
    }
    if v.nvars() != f.nvars() {
        return Err(Error::AmbientMismatch {
            expected: f.nvars(),
            found: v.nvars(),
        });
    }
    let mut upper: Option<BigRational> = None;
    let mut first: Option<BigRational> = None;
    for r in 1..=horizon {
        let val = f.valuation_at(v.weights(), r)? / rational::from_u64(r);
        if r == 1 {
            first = Some(val.clone());
        }
        upper = Some(match upper {
            Some(u) if u <= val => u,
            _ => val,
        });
    }
    let upper = upper.expect("horizon >= 1");
    let exact = f.asymptotic_valuation(v.weights())?;
    let (lower, certified) = match &exact {
        Some(e) => (e.clone(), true),
        None => {
            let h = &upper - first.expect("r = 1 evaluated") / rational::from_u64(horizon);
            (if h.is_negative() { rational::int(0) } else { h }, false)
        }
    };
    Ok(SkewWaldschmidt {
        lower,
        upper,
        exact,
        lower_certified: certified,
        horizon,
    })
}
