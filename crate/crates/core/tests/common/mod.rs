#![allow(dead_code)]

use std::collections::HashSet;

use fthresh_core::filtration::{Filtration, PrimePower};
use fthresh_core::hypergraph::Hypergraph;
use fthresh_core::lp::{LinearProgram, Relation, Sense};
use fthresh_core::rational;
use fthresh_core::{Monomial, MonomialIdeal};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ideal(n: usize, gens: &[&[u64]]) -> MonomialIdeal {
    MonomialIdeal::from_exponents(n, gens.iter().map(|g| g.to_vec()).collect()).unwrap()
}

/// Nonzero proper ideal with up to `max_gens` generators and exponents `≤ max_exp`.
pub fn random_ideal(r: &mut ChaCha8Rng, n: usize, max_gens: usize, max_exp: u64) -> MonomialIdeal {
    loop {
        let k = r.gen_range(1..=max_gens);
        let gens: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..n).map(|_| r.gen_range(0..=max_exp)).collect())
            .collect();
        let i = MonomialIdeal::from_exponents(n, gens).unwrap();
        if i.is_proper_nonzero() {
            return i;
        }
    }
}

pub fn random_squarefree(r: &mut ChaCha8Rng, n: usize, max_gens: usize) -> MonomialIdeal {
    loop {
        let k = r.gen_range(1..=max_gens);
        let gens: Vec<Vec<u64>> = (0..k)
            .map(|_| (0..n).map(|_| r.gen_range(0..=1u64)).collect())
            .collect();
        let i = MonomialIdeal::from_exponents(n, gens).unwrap();
        if i.is_proper_nonzero() {
            return i;
        }
    }
}

/// A filtration of a randomly chosen rule, small enough for generator work.
pub fn random_filtration(r: &mut ChaCha8Rng, n: usize) -> Filtration {
    match r.gen_range(0..7) {
        0 => Filtration::ordinary(random_ideal(r, n, 3, 3)).unwrap(),
        1 => Filtration::symbolic_squarefree(random_squarefree(r, n, 4)).unwrap(),
        2 => Filtration::integral_closure(random_ideal(r, n, 3, 3)).unwrap(),
        3 => {
            let beta = rational::frac(r.gen_range(1..=7), r.gen_range(1..=4));
            Filtration::ceiling(random_ideal(r, n, 2, 2), beta).unwrap()
        }
        4 => {
            let k = r.gen_range(1..=3);
            let comps = (0..k)
                .map(|_| {
                    let mut vars: Vec<usize> = (0..n).filter(|_| r.gen_bool(0.5)).collect();
                    if vars.is_empty() {
                        vars.push(r.gen_range(0..n));
                    }
                    PrimePower {
                        vars,
                        omega: r.gen_range(1..=2),
                    }
                })
                .collect();
            Filtration::prime_power_intersection(n, comps).unwrap()
        }
        5 => {
            let a = Filtration::symbolic_squarefree(random_squarefree(r, n, 3)).unwrap();
            let b = Filtration::ordinary(random_ideal(r, n, 2, 2)).unwrap();
            Filtration::intersection(a, b).unwrap()
        }
        _ => {
            let a = random_ideal(r, n, 2, 2);
            let b = a.power(2).unwrap().sum(&random_monomial_multiple(r, &a)).unwrap();
            Filtration::interleaved(a, b).unwrap()
        }
    }
}

/// `(g·x_j)` for a random generator `g` of `a` and variable `x_j`: lies in `a`.
fn random_monomial_multiple(r: &mut ChaCha8Rng, a: &MonomialIdeal) -> MonomialIdeal {
    let g = a.generators().choose(r).unwrap().clone();
    let j = r.gen_range(0..a.nvars());
    let m = g.mul(&Monomial::var(j, a.nvars())).unwrap();
    MonomialIdeal::new(a.nvars(), vec![m]).unwrap()
}

/// All exponent vectors in `[0, bound]^n`.
pub fn box_points(n: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Minimum vertex cover size of the support hypergraph, by subset enumeration.
pub fn brute_height(i: &MonomialIdeal) -> usize {
    let n = i.nvars();
    let masks: Vec<u64> = i.generators().iter().map(|g| g.support_mask()).collect();
    (0u64..1 << n)
        .filter(|s| masks.iter().all(|m| m & s != 0))
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap()
}

/// `max{t : t·(1,…,1) ≥ Σ λ_g g, Σ λ_g = 1}` inverted: the diagonal value of NP(I).
pub fn lp_diagonal_threshold(i: &MonomialIdeal) -> BigRational {
    let k = i.len();
    let mut obj = vec![BigRational::zero(); k + 1];
    obj[0] = BigRational::one();
    let mut lp = LinearProgram::new(Sense::Min, obj);
    for j in 0..i.nvars() {
        let mut row = vec![-BigRational::one()];
        row.extend(i.generators().iter().map(|g| rational::from_u64(g.exponents()[j])));
        lp.add(row, Relation::Le, BigRational::zero());
    }
    let mut row = vec![BigRational::zero()];
    row.extend(std::iter::repeat_n(BigRational::one(), k));
    lp.add(row, Relation::Eq, BigRational::one());
    let s = lp.solve();
    assert!(s.verify(&lp));
    s.value.unwrap().recip()
}

/// `u/r ∈ conv(gens) + R^n_{≥0}` by LP feasibility.
pub fn lp_closure_member(i: &MonomialIdeal, r: u64, u: &[u64]) -> bool {
    if r == 0 {
        return true;
    }
    let k = i.len();
    let mut lp = LinearProgram::new(Sense::Max, vec![BigRational::zero(); k]);
    for (j, &x) in u.iter().enumerate() {
        let row = i
            .generators()
            .iter()
            .map(|g| rational::from_u64(g.exponents()[j] * r))
            .collect();
        lp.add(row, Relation::Le, rational::from_u64(x));
    }
    lp.add(vec![BigRational::one(); k], Relation::Eq, BigRational::one());
    lp.solve().value.is_some()
}

/// `u^k ∈ I^{rk}` for some `k ≤ k_max`.
pub fn power_closure_member(i: &MonomialIdeal, r: u64, u: &[u64], k_max: u64) -> bool {
    (1..=k_max).any(|k| {
        let uk = Monomial::new(u.iter().map(|x| x * k).collect());
        i.power(r * k).unwrap().contains_monomial(&uk).unwrap()
    })
}

fn canonical(n: usize, edges: u64, pairs: &[(usize, usize)]) -> u64 {
    let mut deg = vec![0usize; n];
    for (b, &(a, c)) in pairs.iter().enumerate() {
        if edges >> b & 1 == 1 {
            deg[a] += 1;
            deg[c] += 1;
        }
    }
    // relabelings that list vertices by non-increasing degree
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    for v in order {
        match classes.last_mut() {
            Some(c) if deg[c[0]] == deg[v] => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let index = |a: usize, c: usize| -> usize {
        let (a, c) = if a < c { (a, c) } else { (c, a) };
        pairs.iter().position(|&p| p == (a, c)).unwrap()
    };
    let mut best = u64::MAX;
    let mut perm = vec![0usize; n];
    fn go(
        ci: usize,
        classes: &mut [Vec<usize>],
        next: usize,
        perm: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if ci == classes.len() {
            f(perm);
            return;
        }
        let len = classes[ci].len();
        permute(classes, ci, 0, len, next, perm, f);
    }
    fn permute(
        classes: &mut [Vec<usize>],
        ci: usize,
        k: usize,
        len: usize,
        next: usize,
        perm: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if k == len {
            for (t, &v) in classes[ci].iter().enumerate() {
                perm[v] = next + t;
            }
            go(ci + 1, classes, next + len, perm, f);
            return;
        }
        for t in k..len {
            classes[ci].swap(k, t);
            permute(classes, ci, k + 1, len, next, perm, f);
            classes[ci].swap(k, t);
        }
    }
    go(0, &mut classes, 0, &mut perm, &mut |perm: &[usize]| {
        let mut code = 0u64;
        for (b, &(a, c)) in pairs.iter().enumerate() {
            if edges >> b & 1 == 1 {
                code |= 1 << index(perm[a], perm[c]);
            }
        }
        best = best.min(code);
    });
    best
}

/// One representative per isomorphism class of graphs on `n` vertices with
/// at least one edge.
pub fn graphs_up_to_iso(n: usize) -> Vec<Hypergraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|a| (a + 1..n).map(move |c| (a, c)))
        .collect();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut layer: Vec<u64> = vec![0];
    let mut out = Vec::new();
    for _ in 0..pairs.len() {
        let mut next = Vec::new();
        for &g in &layer {
            for b in 0..pairs.len() {
                if g >> b & 1 == 0 {
                    let c = canonical(n, g | 1 << b, &pairs);
                    if seen.insert(c) {
                        next.push(c);
                    }
                }
            }
        }
        for &g in &next {
            let edges: Vec<(usize, usize)> = (0..pairs.len())
                .filter(|b| g >> b & 1 == 1)
                .map(|b| pairs[b])
                .collect();
            out.push(Hypergraph::graph(n, &edges).unwrap());
        }
        layer = next;
    }
    out
}

/// Chordal graph built by attaching each new vertex to part of an existing
/// maximal clique; also returns the clique number.
pub fn random_chordal(r: &mut ChaCha8Rng, n: usize) -> (Hypergraph, usize) {
    loop {
        let mut cliques: Vec<Vec<usize>> = vec![vec![0]];
        let mut edges = Vec::new();
        for v in 1..n {
            let k = cliques.choose(r).unwrap().clone();
            let s: Vec<usize> = k.iter().copied().filter(|_| r.gen_bool(0.7)).collect();
            for &u in &s {
                edges.push((u, v));
            }
            let mut c = s.clone();
            c.push(v);
            if s.len() == k.len() {
                cliques.retain(|x| *x != k);
            }
            cliques.push(c);
        }
        if edges.is_empty() {
            continue;
        }
        let g = Hypergraph::graph(n, &edges).unwrap();
        let omega = brute_clique_number(&g);
        return (g, omega);
    }
}

pub fn brute_clique_number(g: &Hypergraph) -> usize {
    let n = g.vertex_count();
    let adj: Vec<u64> = (0..n)
        .map(|v| {
            g.edge_masks()
                .iter()
                .filter(|e| *e >> v & 1 == 1)
                .fold(0u64, |a, e| a | (e & !(1 << v)))
        })
        .collect();
    (0u64..1 << n)
        .filter(|s| (0..n).all(|v| s >> v & 1 == 0 || (s & !(1 << v)) & !adj[v] == 0))
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap()
}

pub fn report(name: &str, ok: bool, detail: &str) {
    println!("{} {name}: {detail}", if ok { "PASS" } else { "FAIL" });
}
