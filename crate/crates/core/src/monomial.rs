//! Monomials and monomial ideals in `n` variables.
//!
//! Exponents are `u64` with checked arithmetic. The value [`INF`] is reserved
//! as an "unbounded exponent" for membership queries against maximal standard
//! monomials; ordinary constructors never produce it.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hypergraph;

/// Sentinel exponent meaning "arbitrarily large".
pub const INF: u64 = u64::MAX;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Monomial(Vec<u64>);

impl Monomial {
    pub fn new(exponents: Vec<u64>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    /// `x_1^e * ... * x_n^e`.
    pub fn uniform(nvars: usize, e: u64) -> Self {
        Monomial(vec![e; nvars])
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u64] {
        &self.0
    }

    pub fn into_exponents(self) -> Vec<u64> {
        self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().fold(0u64, |a, &e| a.saturating_add(e))
    }

    pub fn is_squarefree(&self) -> bool {
        self.0.iter().all(|&e| e <= 1)
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    /// Bitmask of the support; only meaningful for `nvars <= 64`.
    pub fn support_mask(&self) -> u64 {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .fold(0u64, |m, (i, _)| m | (1u64 << i))
    }

    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        check_len(self.nvars(), other.nvars())?;
        Ok(self.divides_unchecked(other))
    }

    #[inline]
    pub(crate) fn divides_unchecked(&self, other: &Monomial) -> bool {
        divides_slice(&self.0, &other.0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        check_len(self.nvars(), other.nvars())?;
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_add(*b).ok_or(Error::Overflow("monomial product")))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.min(b)).collect())
    }

    /// `self / gcd(self, other)`: each exponent reduced by `min(self_i, other_i)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a - (*a).min(*b))
                .collect(),
        )
    }

    pub fn pow(&self, q: u64) -> Result<Monomial> {
        self.0
            .iter()
            .map(|e| e.checked_mul(q).ok_or(Error::Overflow("monomial power")))
            .collect::<Result<Vec<_>>>()
            .map(Monomial)
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

#[inline]
pub(crate) fn divides_slice(a: &[u64], b: &[u64]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::AmbientMismatch { expected, found });
    }
    Ok(())
}

/// A monomial ideal stored as its minimal generating antichain, sorted
/// lexicographically. No generators means the zero ideal; the single
/// generator `1` means the unit ideal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MonomialIdeal {
    nvars: usize,
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(nvars: usize, gens: Vec<Monomial>) -> Result<Self> {
        for g in &gens {
            check_len(nvars, g.nvars())?;
        }
        Ok(Self::from_gens_unchecked(nvars, gens))
    }

    pub fn from_exponents(nvars: usize, gens: Vec<Vec<u64>>) -> Result<Self> {
        Self::new(nvars, gens.into_iter().map(Monomial).collect())
    }

    pub(crate) fn from_gens_unchecked(nvars: usize, gens: Vec<Monomial>) -> Self {
        MonomialIdeal {
            nvars,
            gens: minimalize(gens),
        }
    }

    pub fn zero(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: Vec::new(),
        }
    }

    pub fn unit(nvars: usize) -> Self {
        MonomialIdeal {
            nvars,
            gens: vec![Monomial::one(nvars)],
        }
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_n)`.
    pub fn maximal(nvars: usize) -> Self {
        Self::from_gens_unchecked(nvars, (0..nvars).map(|i| Monomial::var(i, nvars)).collect())
    }

    /// `(x_i : i in vars)`.
    pub fn prime(nvars: usize, vars: &[usize]) -> Result<Self> {
        if let Some(&bad) = vars.iter().find(|&&v| v >= nvars) {
            return Err(Error::InvalidArgument(format!(
                "variable index {bad} out of range for {nvars} variables"
            )));
        }
        Ok(Self::from_gens_unchecked(
            nvars,
            vars.iter().map(|&i| Monomial::var(i, nvars)).collect(),
        ))
    }

    /// `(x_1^{m_1}, ..., x_n^{m_n})`.
    pub fn pure_powers(exponents: &[u64]) -> Result<Self> {
        let n = exponents.len();
        if exponents.contains(&0) {
            return Err(Error::InvalidArgument(
                "pure-power exponents must be positive".into(),
            ));
        }
        Ok(Self::from_gens_unchecked(
            n,
            exponents
                .iter()
                .enumerate()
                .map(|(i, &m)| {
                    let mut e = vec![0; n];
                    e[i] = m;
                    Monomial(e)
                })
                .collect(),
        ))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper_nonzero(&self) -> bool {
        !self.is_zero() && !self.is_unit()
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    pub fn contains_monomial(&self, w: &Monomial) -> Result<bool> {
        check_len(self.nvars, w.nvars())?;
        Ok(self.contains_slice(w.exponents()))
    }

    /// Membership for a raw exponent slice; [`INF`] entries behave as unbounded.
    #[inline]
    pub(crate) fn contains_slice(&self, w: &[u64]) -> bool {
        self.gens.iter().any(|g| divides_slice(&g.0, w))
    }

    /// `self ⊇ other`, i.e. every generator of `other` lies in `self`.
    pub fn contains_ideal(&self, other: &MonomialIdeal) -> Result<bool> {
        check_len(self.nvars, other.nvars)?;
        Ok(other.gens.iter().all(|g| self.contains_slice(&g.0)))
    }

    pub fn sum(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_len(self.nvars, other.nvars)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_gens_unchecked(self.nvars, gens))
    }

    pub fn product(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_len(self.nvars, other.nvars)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.mul(b)?);
            }
        }
        Ok(Self::from_gens_unchecked(self.nvars, gens))
    }

    pub fn power(&self, r: u64) -> Result<MonomialIdeal> {
        let mut acc = Self::unit(self.nvars);
        let mut base = self.clone();
        let mut k = r;
        // square-and-multiply; minimalization after each product keeps sizes small
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.product(&base)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.product(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_len(self.nvars, other.nvars)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::from_gens_unchecked(self.nvars, gens))
    }

    /// `I : u`.
    pub fn colon(&self, u: &Monomial) -> Result<MonomialIdeal> {
        check_len(self.nvars, u.nvars())?;
        Ok(Self::from_gens_unchecked(
            self.nvars,
            self.gens.iter().map(|g| g.colon(u)).collect(),
        ))
    }

    /// `I : J^∞`, iterating `I ↦ ∩_{g ∈ gens(J)} (I : g)` until it stabilizes.
    pub fn saturate(&self, j: &MonomialIdeal) -> Result<MonomialIdeal> {
        check_len(self.nvars, j.nvars)?;
        if j.is_zero() {
            // I : 0 = R
            return Ok(Self::unit(self.nvars));
        }
        let mut cur = self.clone();
        loop {
            let mut next: Option<MonomialIdeal> = None;
            for g in &j.gens {
                let c = cur.colon(g)?;
                next = Some(match next {
                    None => c,
                    Some(acc) => acc.intersect(&c)?,
                });
            }
            let next = next.expect("nonzero J has a generator");
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Frobenius power `I^[q]`.
    pub fn bracket_power(&self, q: u64) -> Result<MonomialIdeal> {
        if q < 1 {
            return Err(Error::InvalidArgument("bracket power needs q >= 1".into()));
        }
        let gens = self
            .gens
            .iter()
            .map(|g| g.pow(q))
            .collect::<Result<Vec<_>>>()?;
        Ok(MonomialIdeal {
            nvars: self.nvars,
            gens,
        })
    }

    /// Exponents `m` when `I = (x_1^{m_1}, ..., x_n^{m_n})` uses every variable.
    pub fn pure_power_exponents(&self) -> Option<Vec<u64>> {
        if self.gens.len() != self.nvars {
            return None;
        }
        let mut m = vec![0u64; self.nvars];
        for g in &self.gens {
            let s = g.support();
            if s.len() != 1 || m[s[0]] != 0 {
                return None;
            }
            m[s[0]] = g.0[s[0]];
        }
        Some(m)
    }

    pub fn is_maximal(&self) -> bool {
        matches!(self.pure_power_exponents(), Some(m) if m.iter().all(|&e| e == 1))
    }

    /// True when some pure power of every variable lies in `I`.
    pub fn is_m_primary(&self) -> bool {
        (0..self.nvars).all(|i| {
            self.gens
                .iter()
                .any(|g| g.support() == vec![i])
        })
    }

    /// Variables appearing in some generator.
    pub fn support(&self) -> Vec<bool> {
        let mut s = vec![false; self.nvars];
        for g in &self.gens {
            for (i, &e) in g.0.iter().enumerate() {
                if e > 0 {
                    s[i] = true;
                }
            }
        }
        s
    }

    /// `α(I)`, the least generator degree. `None` for the zero ideal.
    pub fn initial_degree(&self) -> Option<u64> {
        self.gens.iter().map(Monomial::degree).min()
    }

    fn require_squarefree(&self) -> Result<()> {
        if !self.is_squarefree() {
            return Err(Error::NotSquarefree(self.to_string()));
        }
        if self.nvars > 64 {
            return Err(Error::SizeGuard(
                "square-free routines support at most 64 variables".into(),
            ));
        }
        Ok(())
    }

    /// Minimal primes as sorted variable-index sets: the minimal transversals
    /// of the generator supports (those of the radical).
    pub fn minimal_primes(&self) -> Result<Vec<Vec<usize>>> {
        if self.nvars > 64 {
            return Err(Error::SizeGuard("prime routines support at most 64 variables".into()));
        }
        if !self.is_proper_nonzero() {
            return Err(Error::InvalidArgument(
                "minimal primes need a nonzero proper ideal".into(),
            ));
        }
        let edges: Vec<u64> = self.gens.iter().map(Monomial::support_mask).collect();
        let covers = hypergraph::minimal_transversals(self.nvars, &edges);
        Ok(covers.into_iter().map(hypergraph::mask_to_vec).collect())
    }

    pub fn height(&self) -> Result<usize> {
        Ok(self
            .minimal_primes()?
            .iter()
            .map(Vec::len)
            .min()
            .expect("proper nonzero ideal has a minimal prime"))
    }

    /// For square-free ideals `Ass = Min`, so this is the largest minimal prime.
    pub fn big_height(&self) -> Result<usize> {
        self.require_squarefree()?;
        Ok(self
            .minimal_primes()?
            .iter()
            .map(Vec::len)
            .max()
            .expect("proper nonzero ideal has a minimal prime"))
    }

    /// Irredundant irreducible decomposition `I = ∩ (x_j^{b_j} : j ∈ T)`.
    ///
    /// Each component is a list of `(variable, exponent)` pairs. The unit
    /// ideal has no components; the zero ideal has one empty component.
    pub fn irreducible_components(&self) -> Vec<Vec<(usize, u64)>> {
        if self.is_unit() {
            return Vec::new();
        }
        if self.is_zero() {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        split_components(self.nvars, self.gens.clone(), &mut out);
        // drop components that contain another one
        let mut keep: Vec<Vec<(usize, u64)>> = Vec::new();
        out.sort();
        out.dedup();
        for (i, c) in out.iter().enumerate() {
            let redundant = out
                .iter()
                .enumerate()
                .any(|(j, d)| j != i && component_contains(c, d) && (c != d));
            if !redundant {
                keep.push(c.clone());
            }
        }
        keep
    }

    /// Maximal standard monomials of `I^[q]` (one per irreducible component),
    /// with [`INF`] in the coordinates a component does not constrain.
    pub fn corner_witnesses(&self, q: u64) -> Result<Vec<Vec<u64>>> {
        self.irreducible_components()
            .into_iter()
            .map(|comp| {
                let mut w = vec![INF; self.nvars];
                for (j, b) in comp {
                    let qb = b.checked_mul(q).ok_or(Error::Overflow("bracket power"))?;
                    w[j] = qb - 1;
                }
                Ok(w)
            })
            .collect()
    }
}

/// `c ⊇ d` for irreducible components given as `(var, exp)` lists.
fn component_contains(c: &[(usize, u64)], d: &[(usize, u64)]) -> bool {
    d.iter()
        .all(|(j, b)| c.iter().any(|(i, a)| i == j && a <= b))
}

fn split_components(nvars: usize, gens: Vec<Monomial>, out: &mut Vec<Vec<(usize, u64)>>) {
    let gens = minimalize(gens);
    match gens.iter().position(|g| g.support().len() > 1) {
        None => {
            let mut comp: Vec<(usize, u64)> = gens
                .iter()
                .map(|g| {
                    let j = g.support()[0];
                    (j, g.0[j])
                })
                .collect();
            comp.sort();
            out.push(comp);
        }
        Some(k) => {
            let g = &gens[k];
            let j = g.support()[0];
            let mut pure = vec![0; nvars];
            pure[j] = g.0[j];
            let mut rest = g.0.clone();
            rest[j] = 0;
            let mut left = gens.clone();
            left[k] = Monomial(pure);
            let mut right = gens;
            right[k] = Monomial(rest);
            split_components(nvars, left, out);
            split_components(nvars, right, out);
        }
    }
}

/// Reduce a generating list to its minimal antichain, sorted lexicographically.
pub(crate) fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !kept.iter().any(|k| k.divides_unchecked(&g)) {
            kept.push(g);
        }
    }
    kept.sort();
    kept
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

#[derive(Serialize, Deserialize)]
struct IdealRepr {
    nvars: usize,
    generators: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IdealInput {
    Repr(IdealRepr),
    Text(String),
}

impl Serialize for MonomialIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        IdealRepr {
            nvars: self.nvars,
            generators: self.gens.iter().map(|g| g.0.clone()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for MonomialIdeal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match IdealInput::deserialize(d)? {
            IdealInput::Repr(r) => {
                MonomialIdeal::from_exponents(r.nvars, r.generators).map_err(serde::de::Error::custom)
            }
            IdealInput::Text(t) => {
                crate::text::parse_ideal(&t, None).map_err(serde::de::Error::custom)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
    }

    fn m(e: &[u64]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn divisibility() {
        assert!(m(&[1, 0]).divides(&m(&[2, 3])).unwrap());
        assert!(!m(&[2, 1]).divides(&m(&[1, 5])).unwrap());
        assert!(m(&[4, 2]).divides(&m(&[4, 2])).unwrap());
        assert!(matches!(
            m(&[1]).divides(&m(&[1, 2])),
            Err(Error::AmbientMismatch { .. })
        ));
    }

    #[test]
    fn monomial_membership() {
        let i = ideal(2, &[&[2, 0], &[0, 3]]);
        assert!(i.contains_monomial(&m(&[1, 3])).unwrap());
        assert!(!i.contains_monomial(&m(&[1, 2])).unwrap());
        assert!(!MonomialIdeal::zero(2).contains_monomial(&m(&[5, 5])).unwrap());
    }

    #[test]
    fn ideal_containment() {
        let a = ideal(2, &[&[2, 1]]);
        let b = MonomialIdeal::maximal(2);
        assert!(b.contains_ideal(&a).unwrap());
        assert!(!ideal(1, &[&[2]]).contains_ideal(&ideal(1, &[&[1]])).unwrap());
        assert!(b.contains_ideal(&MonomialIdeal::zero(2)).unwrap());
    }

    #[test]
    fn products_and_powers() {
        let x = ideal(2, &[&[1, 0]]);
        let y = ideal(2, &[&[0, 1]]);
        assert_eq!(x.product(&y).unwrap(), ideal(2, &[&[1, 1]]));
        let m2 = MonomialIdeal::maximal(2).power(2).unwrap();
        assert_eq!(m2, ideal(2, &[&[2, 0], &[1, 1], &[0, 2]]));
        assert!(MonomialIdeal::maximal(3).power(0).unwrap().is_unit());
        assert_eq!(x.sum(&y).unwrap(), MonomialIdeal::maximal(2));
    }

    #[test]
    fn intersections() {
        let x = ideal(2, &[&[1, 0]]);
        let y = ideal(2, &[&[0, 1]]);
        assert_eq!(x.intersect(&y).unwrap(), ideal(2, &[&[1, 1]]));
        let a = ideal(2, &[&[2, 0], &[0, 1]]);
        assert_eq!(a.intersect(&x).unwrap(), ideal(2, &[&[2, 0], &[1, 1]]));
        assert_eq!(a.intersect(&MonomialIdeal::unit(2)).unwrap(), a);
    }

    #[test]
    fn colon_and_saturation() {
        let i = ideal(2, &[&[2, 1]]);
        assert_eq!(i.colon(&m(&[1, 0])).unwrap(), ideal(2, &[&[1, 1]]));
        assert_eq!(i.colon(&Monomial::one(2)).unwrap(), i);
    }

    #[test]
    fn saturation_matches_brute_force() {
        // (x^2 y, y^3) : y^∞ computed by the fixpoint iteration, compared with
        // the direct description {u : u * y^k ∈ I for some k} on exponents ≤ 5.
        let i = ideal(2, &[&[2, 1], &[0, 3]]);
        let y = ideal(2, &[&[0, 1]]);
        let sat = i.saturate(&y).unwrap();
        for a in 0..=5u64 {
            for b in 0..=5u64 {
                let brute = (0..=10u64).any(|k| i.contains_slice(&[a, b + k]));
                assert_eq!(sat.contains_slice(&[a, b]), brute, "({a},{b})");
            }
        }
        assert!(sat.is_unit());
    }

    #[test]
    fn bracket_powers() {
        let mm = MonomialIdeal::maximal(2);
        assert_eq!(mm.bracket_power(3).unwrap(), ideal(2, &[&[3, 0], &[0, 3]]));
        let i = ideal(2, &[&[2, 1]]);
        assert_eq!(i.bracket_power(1).unwrap(), i);
        assert_eq!(i.bracket_power(2).unwrap(), ideal(2, &[&[4, 2]]));
        assert!(i.bracket_power(0).is_err());
    }

    #[test]
    fn primes_and_heights() {
        let tri = ideal(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        assert_eq!(
            tri.minimal_primes().unwrap(),
            vec![vec![0, 1], vec![0, 2], vec![1, 2]]
        );
        assert_eq!(tri.height().unwrap(), 2);
        assert_eq!(tri.big_height().unwrap(), 2);

        let x = ideal(1, &[&[1]]);
        assert_eq!(x.minimal_primes().unwrap(), vec![vec![0]]);
        assert_eq!(x.height().unwrap(), 1);

        let i = ideal(3, &[&[1, 1, 0], &[0, 0, 1]]);
        assert_eq!(i.minimal_primes().unwrap(), vec![vec![0, 2], vec![1, 2]]);
        assert_eq!(i.height().unwrap(), 2);

        assert_eq!(ideal(2, &[&[2, 1]]).minimal_primes().unwrap(), vec![vec![0], vec![1]]);
        assert!(matches!(
            ideal(2, &[&[2, 0]]).big_height(),
            Err(Error::NotSquarefree(_))
        ));
    }

    #[test]
    fn irreducible_decomposition_reconstructs_ideal() {
        let i = ideal(3, &[&[2, 1, 0], &[0, 3, 1], &[1, 0, 2]]);
        let comps = i.irreducible_components();
        let mut acc = MonomialIdeal::unit(3);
        for c in &comps {
            let gens = c
                .iter()
                .map(|&(j, b)| {
                    let mut e = vec![0; 3];
                    e[j] = b;
                    Monomial::new(e)
                })
                .collect();
            acc = acc.intersect(&MonomialIdeal::new(3, gens).unwrap()).unwrap();
        }
        assert_eq!(acc, i);
        assert!(MonomialIdeal::unit(2).irreducible_components().is_empty());
        assert_eq!(MonomialIdeal::zero(2).irreducible_components(), vec![vec![]]);
    }

    #[test]
    fn corner_witnesses_of_maximal_ideal() {
        let w = MonomialIdeal::maximal(3).corner_witnesses(4).unwrap();
        assert_eq!(w, vec![vec![3, 3, 3]]);
        let w = MonomialIdeal::prime(3, &[0]).unwrap().corner_witnesses(2).unwrap();
        assert_eq!(w, vec![vec![1, INF, INF]]);
    }

    #[test]
    fn serde_round_trip_and_text_input() {
        let i = ideal(3, &[&[1, 1, 0], &[0, 0, 2]]);
        let s = serde_json::to_string(&i).unwrap();
        assert_eq!(s, r#"{"nvars":3,"generators":[[0,0,2],[1,1,0]]}"#);
        let back: MonomialIdeal = serde_json::from_str(&s).unwrap();
        assert_eq!(back, i);
        let t: MonomialIdeal = serde_json::from_str(r#""x1*x2;x3^2""#).unwrap();
        assert_eq!(t, i);
    }
}
