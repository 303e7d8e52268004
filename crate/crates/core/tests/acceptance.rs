mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use fthresh_core::filtration::{verify_filtration_axioms, Filtration};
use fthresh_core::hypergraph::{threshold_bounds_report, Hypergraph};
use fthresh_core::nu::{
    big_height_criterion, check_min_law, check_sum_product_laws, fthreshold, fthreshold_bracket,
    fthreshold_ordinary, fthreshold_symbolic_squarefree, nu, nu_by_generators, nu_sequence, NuValue,
};
use fthresh_core::polyhedra::newton_polyhedron;
use fthresh_core::rational::{self, frac};
use fthresh_core::{Monomial, MonomialIdeal};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::Rng;

type Outcome = (bool, String);

fn floor_u64(x: &BigRational) -> u64 {
    x.floor().to_integer().to_u64().unwrap()
}

/// `∩_{i<j} (x_i, x_j)`, built from the primes.
fn pairwise_primes(n: usize) -> MonomialIdeal {
    let mut acc = MonomialIdeal::unit(n);
    for i in 0..n {
        for j in i + 1..n {
            acc = acc.intersect(&MonomialIdeal::prime(n, &[i, j]).unwrap()).unwrap();
        }
    }
    acc
}

fn criterion_1() -> Outcome {
    let mut bad = Vec::new();
    for n in 3..=5usize {
        let a = pairwise_primes(n);
        let m = MonomialIdeal::maximal(n);
        let f = Filtration::symbolic(a.clone()).unwrap();
        for p in [2u64, 3, 5] {
            for e in 0..=5u32 {
                let q = p.pow(e);
                let got = nu(&f, &m, p, e).unwrap().nu;
                if got != NuValue::Finite(2 * (q - 1)) {
                    bad.push(format!("n={n} p={p} e={e}: ν={got}"));
                }
            }
        }
        let sym = fthreshold_symbolic_squarefree(&a).unwrap();
        if sym.exact_value() != Some(&rational::int(2)) {
            bad.push(format!("n={n}: symbolic threshold {:?}", sym.exact_value()));
        }
        let ord = fthreshold_ordinary(&a).unwrap();
        let want = frac(n as i64, n as i64 - 1);
        if ord.exact_value() != Some(&want) {
            bad.push(format!("n={n}: ordinary threshold {:?}, want {want}", ord.exact_value()));
        }
    }
    (bad.is_empty(), summary("n=3..5, p∈{2,3,5}, e≤5", &bad))
}

fn criterion_2() -> Outcome {
    let a = ideal(3, &[&[2, 0, 0], &[0, 3, 0], &[0, 0, 5]]);
    let m = MonomialIdeal::maximal(3);
    let f = Filtration::symbolic(a).unwrap();
    let mut bad = Vec::new();
    for p in [2u64, 3] {
        for e in 0..=6u32 {
            let q = p.pow(e);
            let got = nu(&f, &m, p, e).unwrap().nu;
            let stated = floor_u64(&(rational::from_u64(q - 1) * frac(31, 30)));
            // direct count: the witness splits into independent pure powers
            let counted = (q - 1) / 2 + (q - 1) / 3 + (q - 1) / 5;
            if got != NuValue::Finite(counted) {
                bad.push(format!("p={p} e={e}: engine {got} but direct count {counted}"));
            }
            if got != NuValue::Finite(stated) {
                bad.push(format!("p={p} e={e}: ν={got}, stated ⌊(q−1)·31/30⌋={stated}"));
            }
        }
    }
    let t = fthreshold(&f, &m, 2, 4).unwrap();
    if t.exact_value() != Some(&frac(31, 30)) {
        bad.push(format!("threshold {:?}", t.exact_value()));
    }
    (bad.is_empty(), summary("(x1^2,x2^3,x3^5), p∈{2,3}, e≤6", &bad))
}

fn criterion_3() -> Outcome {
    let n = 2u64;
    let m = MonomialIdeal::maximal(n as usize);
    let mut bad = Vec::new();
    for alpha in [frac(1, 2), frac(7, 5), rational::int(3)] {
        let f = Filtration::ceiling(m.clone(), rational::from_u64(n) / &alpha).unwrap();
        for (p, e_max) in [(2u64, 6u32), (3, 4)] {
            let seq = nu_sequence(&f, &m, p, e_max).unwrap();
            if seq.doubling_violation.is_some() {
                bad.push(format!("α={alpha} p={p}: doubling violated"));
            }
            for r in &seq.records {
                let v = rational::from_u64(r.nu.finite().unwrap());
                let lo = (&alpha * rational::from_u64(r.q - 1)).ceil() - rational::int(1);
                let hi = &alpha * rational::from_u64(r.q);
                if !(lo <= v && v < hi) {
                    bad.push(format!("α={alpha} p={p} e={}: ν={}", r.e, r.nu));
                }
            }
            let b = fthreshold_bracket(&f, &m, p, e_max, &[]).unwrap();
            let width = b.upper().unwrap() - b.lower();
            let cap = (&alpha + rational::from_u64(n)) / rational::from_u64(p.pow(e_max));
            if !b.contains(&alpha) || width > cap {
                bad.push(format!("α={alpha} p={p}: bracket [{}, {:?}]", b.lower(), b.upper()));
            }
        }
    }
    (bad.is_empty(), summary("α∈{1/2,7/5,3}, n=2, p∈{2,3}", &bad))
}

fn criterion_4() -> Outcome {
    let mut r = rng(4);
    let mut bad = Vec::new();
    for t in 0..50 {
        let n = r.gen_range(2..=4);
        let i = random_ideal(&mut r, n, 6, 5);
        let m = MonomialIdeal::maximal(n);
        let c = fthreshold_ordinary(&i).unwrap().exact_value().unwrap().clone();
        if c != lp_diagonal_threshold(&i) {
            bad.push(format!("#{t} {i}: facet value {c} differs from LP"));
        }
        let closure = Filtration::integral_closure(i.clone()).unwrap();
        let ordinary = Filtration::ordinary(i.clone()).unwrap();
        for e in 0..=6u32 {
            let q = 2u64.pow(e);
            let got = nu(&closure, &m, 2, e).unwrap().nu;
            let want = floor_u64(&(&c * rational::from_u64(q - 1)));
            if got != NuValue::Finite(want) {
                bad.push(format!("#{t} {i} e={e}: ν={got}, ⌊C(q−1)⌋={want}"));
            }
            if e <= 4 && nu(&ordinary, &m, 2, e).unwrap().nu > got {
                bad.push(format!("#{t} {i} e={e}: ordinary ν above closure ν"));
            }
        }
    }
    (bad.is_empty(), summary("50 random ideals, p=2, e≤6", &bad))
}

fn criterion_5() -> Outcome {
    let mut r = rng(5);
    let mut bad = Vec::new();
    let mut mixed = 0;
    for t in 0..50 {
        let n = r.gen_range(2..=7);
        let i = random_squarefree(&mut r, n, 8);
        let h = brute_height(&i);
        let c = fthreshold_symbolic_squarefree(&i).unwrap();
        if c.exact_value() != Some(&rational::from_u64(h as u64)) {
            bad.push(format!("#{t} {i}: threshold {:?}, height {h}", c.exact_value()));
        }
        let m = MonomialIdeal::maximal(n);
        let mut hit = false;
        for p in [2u64, 3] {
            let rep = big_height_criterion(&i, &m, p, 4).unwrap();
            if !rep.never_contained() {
                let e = rep.rows.iter().find(|x| x.contained).unwrap().e;
                bad.push(format!(
                    "#{t} {i}: a^(H(q−1)) ⊆ m^[q] at p={p} e={e} (ht={}, H={})",
                    rep.height, rep.big_height
                ));
                hit = true;
            }
        }
        if hit {
            mixed += 1;
        }
    }
    let note = if mixed > 0 {
        format!("{mixed} of 50 ideals have height < big height")
    } else {
        String::new()
    };
    (bad.is_empty(), summary(&format!("50 random square-free ideals, n≤7 {note}"), &bad))
}

fn random_target(r: &mut rand_chacha::ChaCha8Rng, n: usize) -> MonomialIdeal {
    if r.gen_bool(0.5) {
        MonomialIdeal::maximal(n)
    } else {
        random_ideal(r, n, 2, 2)
    }
}

fn criterion_6() -> Outcome {
    let mut r = rng(6);
    let mut bad = Vec::new();
    for t in 0..30 {
        let n = r.gen_range(2..=4);
        let m = MonomialIdeal::maximal(n);
        let f = random_filtration(&mut r, n);
        let g = random_filtration(&mut r, n);
        let rep = check_min_law(&f, &g, &m, 2, 4).unwrap();
        if !rep.holds() {
            bad.push(format!("#{t} min law: {f} / {g}"));
        }
        let both = Filtration::intersection(f.clone(), g.clone()).unwrap();
        for e in 0..=1 {
            if nu(&both, &m, 2, e).unwrap() != nu_by_generators(&both, &m, 2, e, 256).unwrap() {
                bad.push(format!("#{t} intersection ν differs from generator ν at e={e}"));
            }
        }

        let (n1, n2) = (r.gen_range(1..=3), r.gen_range(1..=3));
        let a = random_filtration(&mut r, n1.max(2));
        let b = random_filtration(&mut r, n2.max(2));
        let (i, j) = (random_target(&mut r, a.nvars()), random_target(&mut r, b.nvars()));
        let rep = check_sum_product_laws(&a, &i, &b, &j, 2, 4).unwrap();
        if !rep.holds() {
            let row = rep.rows.iter().find(|x| !x.holds).unwrap();
            bad.push(format!("#{t} {} law at e={}: {} vs {}", row.law, row.e, row.lhs, row.rhs));
        }
        // definition-level oracle on the combined filtrations for q = 1, 2
        let nn = a.nvars() + b.nvars();
        let ae = Filtration::embed(a.clone(), 0, nn).unwrap();
        let be = Filtration::embed(b.clone(), a.nvars(), nn).unwrap();
        let mm = MonomialIdeal::maximal(nn);
        for comb in [
            Filtration::binomial_sum(ae.clone(), be.clone()).unwrap(),
            Filtration::product(ae, be).unwrap(),
        ] {
            for e in 0..=1 {
                if nu(&comb, &mm, 2, e).unwrap() != nu_by_generators(&comb, &mm, 2, e, 256).unwrap() {
                    bad.push(format!("#{t} {comb}: witness and generator ν differ at e={e}"));
                }
            }
        }
    }
    (bad.is_empty(), summary("30 random pairs, p=2, e≤4", &bad))
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 2..=7 {
        for g in graphs_up_to_iso(n) {
            count += 1;
            let c = fthreshold_ordinary(&g.edge_ideal()).unwrap();
            let fm = g.fractional_matching_number();
            if c.exact_value() != Some(&fm) {
                bad.push(format!("{:?}: threshold {:?} vs matching {fm}", g.edges(), c.exact_value()));
            }
            let rep = threshold_bounds_report(&g).unwrap();
            if !rep.ordinary_bound_holds || !rep.symbolic_bound_holds {
                bad.push(format!("{:?}: bound violated", g.edges()));
            }
        }
    }
    let mut r = rng(7);
    for _ in 0..40 {
        let n = r.gen_range(3..=6);
        let i = random_squarefree(&mut r, n, 5);
        let h = Hypergraph::from_squarefree_ideal(&i).unwrap();
        let rep = threshold_bounds_report(&h).unwrap();
        if !rep.ordinary_bound_holds || !rep.symbolic_bound_holds {
            bad.push(format!("hypergraph {:?}: bound violated", h.edges()));
        }
    }
    let c5 = Hypergraph::cycle(5).cover_ideal();
    let s = fthreshold_symbolic_squarefree(&c5).unwrap();
    if s.exact_value() != Some(&rational::int(2)) {
        bad.push(format!("C5 cover ideal: {:?}", s.exact_value()));
    }
    for _ in 0..10 {
        let n = r.gen_range(4..=8);
        let (g, omega) = random_chordal(&mut r, n);
        if !g.is_chordal().unwrap() {
            bad.push(format!("{:?} not recognised as chordal", g.edges()));
        }
        let c = fthreshold_ordinary(&g.cover_ideal()).unwrap();
        let want = frac(omega as i64, omega as i64 - 1);
        if c.exact_value() != Some(&want) {
            bad.push(format!("chordal {:?}: {:?} vs {want}", g.edges(), c.exact_value()));
        }
    }
    (bad.is_empty(), summary(&format!("{count} graphs up to isomorphism, 40 hypergraphs, 10 chordal"), &bad))
}

fn criterion_8() -> Outcome {
    let mut r = rng(8);
    let mut bad = Vec::new();
    let mut sequences = 0;
    let mut filtrations = 0;
    for t in 0..40 {
        let n = r.gen_range(2..=3);
        let f = random_filtration(&mut r, n);
        let target = random_target(&mut r, n);
        for (p, e_max) in [(2u64, 4u32), (3, 3)] {
            sequences += 1;
            let seq = nu_sequence(&f, &target, p, e_max).unwrap();
            if let Some(e) = seq.doubling_violation {
                bad.push(format!("#{t} {f}: doubling fails at p={p} e={e}"));
            }
        }
        filtrations += 1;
        let rep = verify_filtration_axioms(&f, 12).unwrap();
        if !rep.passed() {
            bad.push(format!("#{t} {f}: {:?}", rep.violation));
        }
    }
    for t in 0..8 {
        let n = r.gen_range(4..=5);
        let f = Filtration::symbolic_squarefree(random_squarefree(&mut r, n, 5)).unwrap();
        let g = Filtration::ordinary(random_ideal(&mut r, 2, 2, 2)).unwrap();
        let h = Filtration::ordinary(random_ideal(&mut r, 2, 2, 2)).unwrap();
        for c in [
            f,
            Filtration::product(g.clone(), h.clone()).unwrap(),
            Filtration::binomial_sum(g, h).unwrap(),
        ] {
            filtrations += 1;
            let rep = verify_filtration_axioms(&c, 12).unwrap();
            if !rep.passed() {
                bad.push(format!("#{t} {c}: {:?}", rep.violation));
            }
        }
    }
    let mut points = 0;
    for t in 0..30 {
        let n = r.gen_range(1..=3);
        let i = random_ideal(&mut r, n, 4, 4);
        let np = newton_polyhedron(&i).unwrap();
        if !np.is_irredundant() {
            bad.push(format!("#{t} {i}: redundant facet"));
        }
        for f in np.essential_facets() {
            let values: Vec<u128> = i
                .generators()
                .iter()
                .map(|g| f.value(g.exponents()).unwrap())
                .collect();
            if values.iter().any(|&v| v < f.offset as u128) || !values.contains(&(f.offset as u128)) {
                bad.push(format!("#{t} {i}: facet {f:?} does not support the generators"));
            }
        }
        for rr in 1..=3u64 {
            for _ in 0..40 {
                let u: Vec<u64> = (0..n).map(|_| r.gen_range(0..=4 * rr)).collect();
                points += 1;
                let poly = np.contains(rr, &u);
                if poly != lp_closure_member(&i, rr, &u) {
                    bad.push(format!("#{t} {i} r={rr} u={u:?}: facets say {poly}"));
                }
                if !poly && power_closure_member(&i, rr, &u, 3) {
                    bad.push(format!("#{t} {i} r={rr} u={u:?}: a power lands in I^(rk)"));
                }
                let direct = i.power(rr).unwrap().contains_monomial(&Monomial::new(u.clone())).unwrap();
                if direct && !poly {
                    bad.push(format!("#{t} {i} r={rr} u={u:?}: member of I^r outside closure"));
                }
            }
        }
    }
    (
        bad.is_empty(),
        summary(
            &format!("{sequences} sequences, {filtrations} filtrations to level 12, {points} closure points"),
            &bad,
        ),
    )
}

fn summary(scope: &str, bad: &[String]) -> String {
    if bad.is_empty() {
        scope.to_string()
    } else {
        let shown: Vec<&str> = bad.iter().take(4).map(String::as_str).collect();
        format!("{scope}; {} mismatches, e.g. {}", bad.len(), shown.join("; "))
    }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("criterion 1 (pairwise-prime symbolic ν and thresholds)", criterion_1),
        ("criterion 2 (pure-power ideal ν formula and 31/30)", criterion_2),
        ("criterion 3 (prescribed threshold α)", criterion_3),
        ("criterion 4 (facet threshold vs closure ν)", criterion_4),
        ("criterion 5 (symbolic threshold = height, big-height witness)", criterion_5),
        ("criterion 6 (min, sum and product laws)", criterion_6),
        ("criterion 7 (graph and hypergraph cross-checks)", criterion_7),
        ("criterion 8 (doubling, axioms, facet oracle)", criterion_8),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (name, run) in criteria {
        let t = Instant::now();
        let (ok, detail) = run();
        report(name, ok, &format!("{detail} [{:.1}s]", t.elapsed().as_secs_f64()));
        if !ok {
            failed += 1;
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        8 - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
