//! Simple hypergraphs on at most 64 vertices, stored as `u64` vertex masks.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpStatus, Relation, Sense};
use crate::monomial::{Monomial, MonomialIdeal};
use crate::rational;

/// Largest independent-set family the fractional chromatic LP will build.
pub const MAX_INDEPENDENT_SETS: usize = 4096;

pub fn mask_to_vec(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

pub fn vec_to_mask(v: &[usize]) -> u64 {
    v.iter().fold(0u64, |m, &i| m | (1u64 << i))
}

/// Minimal transversals of the edge family, sorted by (size, mask).
///
/// Berge's incremental scheme: covers of the first k edges are extended by
/// one vertex of edge k+1 when they miss it, then minimalized.
pub fn minimal_transversals(_n: usize, edges: &[u64]) -> Vec<u64> {
    let mut covers: Vec<u64> = vec![0];
    for &e in edges {
        let mut next = Vec::with_capacity(covers.len() * 2);
        for &t in &covers {
            if t & e != 0 {
                next.push(t);
            } else {
                let mut rest = e;
                while rest != 0 {
                    let v = rest & rest.wrapping_neg();
                    next.push(t | v);
                    rest ^= v;
                }
            }
        }
        covers = minimal_sets(next);
    }
    covers.sort_by_key(|&c| (c.count_ones(), c));
    covers
}

fn minimal_sets(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|&c| (c.count_ones(), c));
    sets.dedup();
    let mut kept: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !kept.iter().any(|&k| k & !s == 0) {
            kept.push(s);
        }
    }
    kept
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "HypergraphRepr", into = "HypergraphRepr")]
pub struct Hypergraph {
    n: usize,
    edges: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct HypergraphRepr {
    n: usize,
    edges: Vec<Vec<usize>>,
}

impl TryFrom<HypergraphRepr> for Hypergraph {
    type Error = Error;
    fn try_from(r: HypergraphRepr) -> Result<Self> {
        Hypergraph::new(r.n, r.edges)
    }
}

impl From<Hypergraph> for HypergraphRepr {
    fn from(h: Hypergraph) -> Self {
        HypergraphRepr {
            n: h.n,
            edges: h.edges(),
        }
    }
}

impl Hypergraph {
    pub fn new(n: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if n > 64 {
            return Err(Error::SizeGuard("hypergraphs support at most 64 vertices".into()));
        }
        let mut masks = Vec::with_capacity(edges.len());
        for e in &edges {
            if e.is_empty() {
                return Err(Error::InvalidArgument("edges must be nonempty".into()));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= n) {
                return Err(Error::InvalidArgument(format!(
                    "vertex {v} out of range for {n} vertices"
                )));
            }
            masks.push(vec_to_mask(e));
        }
        masks.sort_by_key(|&c| (c.count_ones(), c));
        masks.dedup();
        for (i, &a) in masks.iter().enumerate() {
            if masks.iter().skip(i + 1).any(|&b| a & b == a) {
                return Err(Error::InvalidArgument(
                    "edges must be pairwise incomparable".into(),
                ));
            }
        }
        Ok(Hypergraph { n, edges: masks })
    }

    pub fn graph(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Self::new(n, edges.iter().map(|&(a, b)| vec![a, b]).collect())
    }

    pub fn cycle(n: usize) -> Self {
        Self::graph(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>())
            .expect("cycle with n >= 3")
    }

    pub fn complete(n: usize) -> Self {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Self::graph(n, &e).expect("complete graph")
    }

    /// The hypergraph of generator supports of a square-free ideal.
    pub fn from_squarefree_ideal(i: &MonomialIdeal) -> Result<Self> {
        if !i.is_squarefree() {
            return Err(Error::NotSquarefree(i.to_string()));
        }
        Self::new(
            i.nvars(),
            i.generators().iter().map(Monomial::support).collect(),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> Vec<Vec<usize>> {
        self.edges.iter().map(|&e| mask_to_vec(e)).collect()
    }

    pub fn edge_masks(&self) -> &[u64] {
        &self.edges
    }

    pub fn is_graph(&self) -> bool {
        self.edges.iter().all(|e| e.count_ones() == 2)
    }

    pub fn min_edge_size(&self) -> Option<usize> {
        self.edges.iter().map(|e| e.count_ones() as usize).min()
    }

    fn ideal_of(&self, sets: &[u64]) -> MonomialIdeal {
        MonomialIdeal::from_gens_unchecked(
            self.n,
            sets.iter()
                .map(|&s| {
                    Monomial::new((0..self.n).map(|i| s >> i & 1).collect())
                })
                .collect(),
        )
    }

    pub fn edge_ideal(&self) -> MonomialIdeal {
        self.ideal_of(&self.edges)
    }

    pub fn minimal_covers(&self) -> Vec<u64> {
        minimal_transversals(self.n, &self.edges)
    }

    pub fn cover_ideal(&self) -> MonomialIdeal {
        self.ideal_of(&self.minimal_covers())
    }

    /// τ(H), the minimum transversal size.
    pub fn transversal_number(&self) -> usize {
        self.minimal_covers()
            .first()
            .map(|c| c.count_ones() as usize)
            .unwrap_or(0)
    }

    pub fn independence_number(&self) -> usize {
        self.n - self.transversal_number()
    }

    /// Maximal sets containing no edge: complements of minimal transversals.
    pub fn maximal_independent_sets(&self) -> Vec<u64> {
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        let mut v: Vec<u64> = self.minimal_covers().iter().map(|c| full & !c).collect();
        v.sort();
        v
    }

    /// Maximum number of pairwise disjoint edges.
    pub fn matching_number(&self) -> usize {
        fn go(edges: &[u64], used: u64, size: usize, best: &mut usize) {
            if size + edges.len() <= *best {
                return;
            }
            match edges.split_first() {
                None => *best = (*best).max(size),
                Some((&e, rest)) => {
                    if e & used == 0 {
                        go(rest, used | e, size + 1, best);
                    }
                    go(rest, used, size, best);
                }
            }
        }
        let mut best = 0;
        go(&self.edges, 0, 0, &mut best);
        best
    }

    /// max Σ f(e) subject to Σ_{e ∋ v} f(e) ≤ 1, f ≥ 0.
    pub fn fractional_matching_number(&self) -> BigRational {
        if self.edges.is_empty() {
            return rational::int(0);
        }
        let m = self.edges.len();
        let mut lp = LinearProgram::new(Sense::Max, vec![rational::int(1); m]);
        for v in 0..self.n {
            let row: Vec<BigRational> = self
                .edges
                .iter()
                .map(|e| rational::int((e >> v & 1) as i64))
                .collect();
            if row.iter().any(|x| *x != rational::int(0)) {
                lp.add(row, Relation::Le, rational::int(1));
            }
        }
        let s = lp.solve();
        debug_assert!(s.verify(&lp));
        s.value.expect("fractional matching LP is bounded and feasible")
    }

    /// min Σ y(S) over maximal independent sets S with Σ_{S ∋ v} y(S) ≥ 1.
    pub fn fractional_chromatic(&self) -> Result<BigRational> {
        if self.n == 0 {
            return Ok(rational::int(0));
        }
        if self.edges.iter().any(|e| e.count_ones() == 1) {
            return Err(Error::InvalidArgument(
                "a singleton edge admits no proper colouring".into(),
            ));
        }
        if self.n > 24 {
            return Err(Error::SizeGuard(format!(
                "fractional chromatic number limited to 24 vertices, got {}",
                self.n
            )));
        }
        let sets = self.maximal_independent_sets();
        if sets.len() > MAX_INDEPENDENT_SETS {
            return Err(Error::SizeGuard(format!(
                "{} maximal independent sets exceed the limit {}",
                sets.len(),
                MAX_INDEPENDENT_SETS
            )));
        }
        let mut lp = LinearProgram::new(Sense::Min, vec![rational::int(1); sets.len()]);
        for v in 0..self.n {
            let row = sets
                .iter()
                .map(|s| rational::int((s >> v & 1) as i64))
                .collect();
            lp.add(row, Relation::Ge, rational::int(1));
        }
        let s = lp.solve();
        match s.status {
            LpStatus::Optimal => {
                debug_assert!(s.verify(&lp));
                Ok(s.value.expect("optimal"))
            }
            _ => Err(Error::InvalidArgument("colouring LP has no optimum".into())),
        }
    }

    fn require_graph(&self) -> Result<()> {
        if !self.is_graph() {
            return Err(Error::InvalidArgument("operation needs a graph".into()));
        }
        Ok(())
    }

    fn adjacency(&self) -> Vec<u64> {
        let mut adj = vec![0u64; self.n];
        for &e in &self.edges {
            let v = mask_to_vec(e);
            for &a in &v {
                adj[a] |= e & !(1u64 << a);
            }
        }
        adj
    }

    /// Maximal cliques by Bron–Kerbosch with Tomita pivoting, sorted by mask.
    pub fn max_cliques(&self) -> Result<Vec<Vec<usize>>> {
        self.require_graph()?;
        let adj = self.adjacency();
        let mut out = Vec::new();
        let all = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        bron_kerbosch(&adj, 0, all, 0, &mut out);
        out.sort();
        Ok(out.into_iter().map(mask_to_vec).collect())
    }

    pub fn clique_number(&self) -> Result<usize> {
        Ok(self
            .max_cliques()?
            .iter()
            .map(Vec::len)
            .max()
            .unwrap_or(0))
    }

    /// Maximum cardinality search, then check the reverse order is a
    /// perfect elimination ordering.
    pub fn is_chordal(&self) -> Result<bool> {
        self.require_graph()?;
        let adj = self.adjacency();
        let n = self.n;
        let mut weight = vec![0usize; n];
        let mut numbered = 0u64;
        let mut order = Vec::with_capacity(n);
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| numbered >> v & 1 == 0)
                .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
                .expect("unnumbered vertex");
            numbered |= 1u64 << v;
            order.push(v);
            for u in mask_to_vec(adj[v] & !numbered) {
                weight[u] += 1;
            }
        }
        // order[i] visited i-th; its earlier-visited neighbours must form a clique
        let mut pos = vec![0usize; n];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        for &v in &order {
            let earlier: Vec<usize> = mask_to_vec(adj[v])
                .into_iter()
                .filter(|&u| pos[u] < pos[v])
                .collect();
            let Some(&parent) = earlier.iter().max_by_key(|&&u| pos[u]) else {
                continue;
            };
            for &u in &earlier {
                if u != parent && adj[parent] >> u & 1 == 0 {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Combinatorial invariants of `H` next to the thresholds of its edge ideal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThresholdBoundsReport {
    pub n: usize,
    pub min_edge_size: usize,
    pub transversal_number: usize,
    pub matching_number: usize,
    #[serde(with = "rational::serde_string")]
    pub fractional_matching: BigRational,
    /// Absent when some edge is a single vertex.
    #[serde(with = "rational::serde_string_opt")]
    pub fractional_chromatic: Option<BigRational>,
    /// `C^m(I(H)^•)`.
    #[serde(with = "rational::serde_string")]
    pub ordinary_threshold: BigRational,
    /// `C^m(I(H)^{(•)})`.
    #[serde(with = "rational::serde_string")]
    pub symbolic_threshold: BigRational,
    /// `n/d`.
    #[serde(with = "rational::serde_string")]
    pub ordinary_bound: BigRational,
    /// `n(χ_f − 1)/χ_f`.
    #[serde(with = "rational::serde_string_opt")]
    pub symbolic_bound: Option<BigRational>,
    pub ordinary_bound_holds: bool,
    pub ordinary_bound_tight: bool,
    pub symbolic_bound_holds: bool,
    pub symbolic_bound_tight: bool,
    pub matching_identity: bool,
    /// `χ_f = n/(n − τ)`.
    pub chromatic_equality: bool,
}

pub fn threshold_bounds_report(h: &Hypergraph) -> Result<ThresholdBoundsReport> {
    let n = h.vertex_count();
    let d = h.min_edge_size().expect("nonempty edge set");
    let tau = h.transversal_number();
    let edge = h.edge_ideal();
    let ordinary = crate::nu::fthreshold_ordinary(&edge)?
        .exact_value()
        .cloned()
        .expect("exact");
    let symbolic = crate::nu::fthreshold_symbolic_squarefree(&edge)?
        .exact_value()
        .cloned()
        .expect("exact");
    let chi = if d >= 2 { Some(h.fractional_chromatic()?) } else { None };
    let nn = rational::from_u64(n as u64);
    let ordinary_bound = &nn / rational::from_u64(d as u64);
    let symbolic_bound = chi
        .as_ref()
        .map(|c| &nn * (c - rational::int(1)) / c);
    let fm = h.fractional_matching_number();
    Ok(ThresholdBoundsReport {
        n,
        min_edge_size: d,
        transversal_number: tau,
        matching_number: h.matching_number(),
        ordinary_bound_holds: ordinary <= ordinary_bound,
        ordinary_bound_tight: ordinary == ordinary_bound,
        symbolic_bound_holds: symbolic_bound.as_ref().is_none_or(|b| &symbolic <= b),
        symbolic_bound_tight: symbolic_bound.as_ref() == Some(&symbolic),
        matching_identity: ordinary == fm,
        chromatic_equality: n > tau
            && chi.as_ref() == Some(&(&nn / rational::from_u64((n - tau) as u64))),
        fractional_matching: fm,
        fractional_chromatic: chi,
        ordinary_threshold: ordinary,
        symbolic_threshold: symbolic,
        ordinary_bound,
        symbolic_bound,
    })
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let px = p | x;
    let pivot = mask_to_vec(px)
        .into_iter()
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .expect("nonempty");
    let mut cand = p & !adj[pivot];
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        let bit = 1u64 << v;
        cand ^= bit;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}
