//! Acceptance criteria, one test per criterion. Each test prints a single
//! `PASS`/`FAIL` line; all comparisons are exact.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use mobius_cli::{cmd_verify, load, Source, Suite};
use mobius_core::fan::{
    compose_alpha, maximal_chains, psi_i, psi_vector, pullback_divisor, pullback_pl,
    verify_subdivision,
};
use mobius_core::macaulay::binomial_representation;
use mobius_core::matroid::k_subsets;
use mobius_core::{
    build_algebra, build_fan, catalog, macaulay_pseudopower, AugmentedMatroid, Budget,
    ChowRing, ElementSet, FanKind, FlatLattice, Matroid, MobiusAlgebra,
};
use num_rational::BigRational;

fn report(id: &str, what: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("PASS criterion {id}: {what}");
    } else {
        println!("FAIL criterion {id}: {what}");
        for f in failures {
            println!("    {f}");
        }
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
}

fn entries() -> Vec<(String, Matroid, bool)> {
    catalog()
        .into_iter()
        .map(|e| (e.name.to_string(), e.spec.build().unwrap(), e.graphic))
        .collect()
}

fn algebra(m: &Matroid) -> MobiusAlgebra {
    build_algebra(m, &Budget::default()).unwrap()
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

#[test]
fn criterion_01_hard_lefschetz() {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (name, m, _) in entries() {
        let alg = algebra(&m);
        let r = alg.rank();
        for p in (0..r).take_while(|p| 2 * p < r) {
            let rep = alg.verify_hard_lefschetz(p);
            if rep.rank != alg.dim(p) || rep.cols != alg.dim(p) || rep.rows != alg.dim(r - p) {
                failures.push(format!("{name} p={p}: {rep:?}"));
            }
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(60) {
        failures.push(format!("took {elapsed:?}"));
    }
    report("1", &format!("L^(r-2p) has rank |L^p| for all p < r/2 ({elapsed:.2?})"), &failures);
}

#[test]
fn criterion_02_top_heavy_and_matchings() {
    let mut failures = Vec::new();
    let mut count = 0;
    for (name, m, _) in entries() {
        let alg = algebra(&m);
        let r = alg.rank();
        let lat = alg.lattice();
        for p in 0..=r {
            for q in p..=r - p {
                count += 1;
                if lat.level(p).len() > lat.level(r - q).len() {
                    failures.push(format!("{name} ({p},{q}): counts"));
                }
                match alg.extract_matching(p, q) {
                    Ok(mm) => {
                        let sources: BTreeSet<_> = mm.pairs.iter().map(|x| x.0).collect();
                        let targets: BTreeSet<_> = mm.pairs.iter().map(|x| x.1).collect();
                        let ok = sources.len() == lat.level(p).len()
                            && targets.len() == mm.pairs.len()
                            && mm.pairs.iter().all(|(f, g)| {
                                f.is_subset(*g)
                                    && m.is_flat(*f)
                                    && m.is_flat(*g)
                                    && m.rank(*f) == p
                                    && m.rank(*g) == r - q
                            });
                        if !ok {
                            failures.push(format!("{name} ({p},{q}): bad matching"));
                        }
                    }
                    Err(e) => failures.push(format!("{name} ({p},{q}): {e}")),
                }
            }
        }
    }
    report("2", &format!("top-heavy counts and injective matchings ({count} cases)"), &failures);
}

/// All representations `a = Σ C(a_k, k)` with `a_p > ... > a_s >= s >= 1`, by search.
fn all_representations(a: u128, p: usize) -> Vec<Vec<(usize, usize)>> {
    fn binom(n: usize, k: usize) -> u128 {
        if k > n {
            return 0;
        }
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }
    fn walk(rest: u128, k: usize, max_top: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if k == 0 {
            return;
        }
        for top in k..=max_top {
            let c = binom(top, k);
            if c > rest {
                break;
            }
            cur.push((top, k));
            walk(rest - c, k - 1, top - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if a == 0 {
        return vec![Vec::new()];
    }
    walk(a, p, a as usize + p, &mut Vec::new(), &mut out);
    out
}

#[test]
fn criterion_03_macaulay_bound() {
    let mut failures = Vec::new();
    for (name, m, _) in entries() {
        let alg = algebra(&m);
        let r = alg.rank();
        let w = alg.lattice().whitney_numbers();
        for p in (1..r).take_while(|p| 2 * p < r) {
            let step = w[p + 1] as i128 - w[p] as i128;
            let base = w[p] as i128 - w[p - 1] as i128;
            let ok = step >= 0 && base >= 0 && step as u128 <= macaulay_pseudopower(base as u128, p);
            if !ok || !alg.check_h_vector(p).holds {
                failures.push(format!("{name} p={p}: {w:?}"));
            }
        }
    }
    for p in 1..=6 {
        for a in 0..=100u128 {
            let reps = all_representations(a, p);
            if reps.len() != 1 || reps[0] != binomial_representation(a, p) {
                failures.push(format!("representation of {a} in degree {p}"));
                continue;
            }
            let power: u128 = reps[0]
                .iter()
                .map(|&(t, k)| (0..k + 1).fold(1u128, |acc, i| acc * (t + 1 - i) as u128 / (i + 1) as u128))
                .sum();
            if power != macaulay_pseudopower(a, p) {
                failures.push(format!("pseudopower of {a} in degree {p}"));
            }
        }
    }
    report("3", "h-vector bound on catalog; pseudopower matches exhaustive oracle", &failures);
}

#[test]
fn criterion_04_phi_embedding() {
    let b = Budget::default();
    let mut failures = Vec::new();
    let mut checked = Vec::new();
    for (name, m, _) in entries().into_iter().filter(|e| e.1.size() <= 6) {
        let alg = algebra(&m);
        let ring = ChowRing::new(AugmentedMatroid::new(alg.lattice()), &b).unwrap();
        let r = alg.rank();
        for p in 0..=r {
            let rep = ring.verify_phi_injective(p);
            if !rep.injective || rep.rank != alg.dim(p) {
                failures.push(format!("{name}: φ not injective in degree {p}"));
            }
        }
        match ring.verify_phi_homomorphism(&alg) {
            Ok(h) if h.holds && h.basis_choices_checked > 0 => {}
            other => failures.push(format!("{name}: homomorphism {other:?}")),
        }
        match ring.verify_relations(&b) {
            Ok(rel) if !rel.r3_sampled && rel.beta_definitions_agree && rel.top_value != "0" => {}
            other => failures.push(format!("{name}: relations {other:?}")),
        }
        if ring.dim(r) != 1 {
            failures.push(format!("{name}: top degree has dimension {}", ring.dim(r)));
        }
        checked.push(name);
    }
    report(
        "4",
        &format!("φ injective ring map, R1-R3 exact on {}", checked.join(",")),
        &failures,
    );
}

#[test]
fn criterion_05_fans() {
    let b = Budget::default();
    let mut failures = Vec::new();
    for n in 1..=4usize {
        let counts = [FanKind::Simplex, FanKind::Cube, FanKind::Permutohedron]
            .map(|k| build_fan(k, n, &b).unwrap().cones.len());
        let expected = [n + 1, 1 << n, (1..=n + 1).product()];
        if counts != expected {
            failures.push(format!("n={n}: counts {counts:?}"));
        }
        let sub = verify_subdivision(n, &b).unwrap();
        if !sub.holds || sub.chains != maximal_chains(n).len() {
            failures.push(format!("n={n}: subdivision"));
        }
        let fan = build_fan(FanKind::Permutohedron, n, &b).unwrap();
        for i in 1..=n {
            let formula = pullback_pl(i, n, &b).unwrap();
            if formula != compose_alpha(i, n, &b).unwrap() {
                failures.push(format!("n={n} i={i}: pullback formula"));
            }
            for ray in &fan.rays {
                let s = ray.subset.unwrap();
                if psi_i(s, i) != psi_vector(s, n)[i - 1] {
                    failures.push(format!("n={n} i={i}: case split at {s}"));
                }
            }
        }
        let alg = algebra(&Matroid::boolean(n).unwrap());
        let ring = ChowRing::new(AugmentedMatroid::new(alg.lattice()), &b).unwrap();
        for i in 1..=n {
            let divisor: Vec<_> = pullback_divisor(i, n).into_iter().map(|s| (s.base, s.zero)).collect();
            if ring.restrict_from_boolean(&divisor) != ring.beta(i) {
                failures.push(format!("n={n} i={i}: divisor does not restrict to β_i"));
            }
        }
    }
    report("5", "cone counts, subdivision, pullbacks, Boolean bridge for n <= 4", &failures);
}

/// `(b, b_i, b_ij)` by testing every `r`-subset for independence.
fn basis_counts(m: &Matroid) -> (u64, Vec<u64>, Vec<Vec<u64>>) {
    let n = m.size();
    let r = m.rank_total();
    let mut total = 0;
    let mut through = vec![0; n];
    let mut pairs = vec![vec![0; n]; n];
    for s in k_subsets(m.ground(), r) {
        if m.rank(s) != r {
            continue;
        }
        total += 1;
        for i in s {
            through[i - 1] += 1;
            for j in s {
                if i != j {
                    pairs[i - 1][j - 1] += 1;
                }
            }
        }
    }
    (total, through, pairs)
}

#[test]
fn criterion_06_hodge_riemann_and_ratios() {
    let b = Budget::default();
    let mut failures = Vec::new();
    let two = ratio(2, 1);
    let one = ratio(1, 1);
    for (name, m, graphic) in entries() {
        let alg = algebra(&m);
        if alg.rank() < 2 {
            continue;
        }
        let inertia = alg.hr_signature(&b).unwrap();
        if inertia.positive != 1 {
            failures.push(format!("{name}: inertia {inertia:?}"));
        }
        if !alg.hr_form_check(&b).unwrap().holds {
            failures.push(format!("{name}: deg(L^(r-2) y_i y_j) != (r-2)! b_ij"));
        }
        let hr = alg.hr_matrix(&b).unwrap();
        let (total, through, pairs) = basis_counts(&m);
        if hr.bases != total || hr.through != through || hr.entries != pairs {
            failures.push(format!("{name}: basis counts disagree with subset oracle"));
        }
        for i in 1..=m.size() {
            for j in i + 1..=m.size() {
                let v = alg.correlation_ratio(i, j, &b).unwrap();
                let expect = ratio(
                    (total * pairs[i - 1][j - 1]) as i64,
                    (through[i - 1] * through[j - 1]) as i64,
                );
                if v != expect || v >= two || (graphic && v > one) {
                    failures.push(format!("{name}: ratio({i},{j}) = {v}"));
                }
            }
        }
    }
    let u23 = algebra(&Matroid::uniform(3, 2).unwrap());
    let r = u23.correlation_ratio(1, 2, &b).unwrap();
    if r != ratio(3, 4) {
        failures.push(format!("U(2,3) ratio {r}"));
    }
    // K4 edges in catalog order 12,13,14,23,24,34: edges 1 and 6 are disjoint,
    // edges 1 and 2 share a vertex
    let k4 = algebra(&load(&Source::Catalog("k4".into()), false).unwrap().matroid);
    let disjoint = k4.correlation_ratio(1, 6, &b).unwrap();
    let adjacent = k4.correlation_ratio(1, 2, &b).unwrap();
    if adjacent != ratio(3, 4) {
        failures.push(format!("K4 adjacent-pair ratio {adjacent}"));
    }
    println!("    K4 ratios: disjoint pair {disjoint}, adjacent pair {adjacent}");
    report("6", "one positive eigenvalue, HR form, ratios < 2 (graphic <= 1), U(2,3) = 3/4", &failures);
}

/// The literal statement pins the K4 disjoint-pair ratio at 3/4. Counting
/// spanning trees gives 4 through a disjoint pair and 3 through an adjacent
/// pair, so the disjoint ratio is 16·4/(8·8) = 1 and 3/4 belongs to the
/// adjacent pair (checked in criterion 6).
#[test]
#[ignore = "stated value conflicts with the spanning-tree count; run with --ignored to see it fail"]
fn criterion_06_k4_disjoint_pair_ratio_as_stated() {
    let b = Budget::default();
    let k4 = algebra(&load(&Source::Catalog("k4".into()), false).unwrap().matroid);
    let disjoint = k4.correlation_ratio(1, 6, &b).unwrap();
    let failures = if disjoint == ratio(3, 4) {
        Vec::new()
    } else {
        vec![format!("K4 disjoint-pair ratio is {disjoint}, stated 3/4")]
    };
    report("6 (K4 disjoint pair = 3/4)", "literal K4 disjoint-pair value", &failures);
}

fn closure_oracle(m: &Matroid) -> Vec<usize> {
    let mut flats = BTreeSet::new();
    for s in m.ground().subsets() {
        flats.insert(m.closure(s));
    }
    let mut w = vec![0; m.rank_total() + 1];
    for f in flats {
        w[m.rank(f)] += 1;
    }
    w
}

#[test]
fn criterion_07_whitney_golden() {
    let mut failures = Vec::new();
    let golden: [(&str, &[usize]); 4] = [
        ("u34", &[1, 4, 6, 1]),
        ("fano", &[1, 7, 7, 1]),
        ("k4", &[1, 6, 7, 1]),
        ("b3", &[1, 3, 3, 1]),
    ];
    for (name, expected) in golden {
        let m = load(&Source::Catalog(name.into()), false).unwrap().matroid;
        let bfs = FlatLattice::enumerate(&m, &Budget::default()).unwrap().whitney_numbers();
        let brute = closure_oracle(&m);
        if bfs != expected || brute != expected {
            failures.push(format!("{name}: bfs {bfs:?}, oracle {brute:?}, expected {expected:?}"));
        }
    }
    for e in catalog() {
        let m = e.spec.build().unwrap();
        if m.size() <= 10 && closure_oracle(&m) != e.whitney {
            failures.push(format!("{}: catalog golden data", e.name));
        }
    }
    report("7", "Whitney numbers: BFS = closure oracle = golden", &failures);
}

#[test]
fn criterion_08_support_law() {
    let mut failures = Vec::new();
    let mut entries_checked = 0usize;
    for (name, m, _) in entries() {
        let alg = algebra(&m);
        let lat = alg.lattice();
        let r = alg.rank();
        for p in 0..=r {
            for k in 0..=r - p {
                let counts = alg.lefschetz_power_counts(p, k);
                for (gi, g) in lat.level(p + k).iter().enumerate() {
                    for (fi, f) in lat.level(p).iter().enumerate() {
                        entries_checked += 1;
                        let nonzero = counts[gi][fi] != 0.into();
                        if nonzero != f.members.is_subset(g.members) {
                            failures.push(format!("{name}: {} -> {}", f.members, g.members));
                        }
                    }
                }
            }
        }
    }
    report("8", &format!("Lefschetz support = containment ({entries_checked} entries)"), &failures);
}

fn rank_axiom_failures(name: &str, m: &Matroid) -> Vec<String> {
    let mut out = Vec::new();
    let all: Vec<ElementSet> = m.ground().subsets().collect();
    let rank: std::collections::HashMap<ElementSet, usize> = all.iter().map(|&s| (s, m.rank(s))).collect();
    for &a in &all {
        if rank[&a] > a.len() {
            out.push(format!("{name}: r({a}) > |{a}|"));
        }
        for &b in &all {
            if a.is_subset(b) && rank[&a] > rank[&b] {
                out.push(format!("{name}: monotonicity {a} {b}"));
            }
            if rank[&a.union(b)] + rank[&a.intersection(b)] > rank[&a] + rank[&b] {
                out.push(format!("{name}: submodularity {a} {b}"));
            }
        }
    }
    out
}

#[test]
fn criterion_09_matroid_cross_checks() {
    let b = Budget::default();
    let mut failures = Vec::new();
    for (name, m, _) in entries().into_iter().filter(|e| e.1.size() <= 8) {
        failures.extend(rank_axiom_failures(&name, &m));
    }
    let mut linear = vec![
        ("fano".to_string(), load(&Source::Catalog("fano".into()), false).unwrap().matroid),
        ("nonfano".to_string(), load(&Source::Catalog("nonfano".into()), false).unwrap().matroid),
    ];
    for (n, r) in [(5, 2), (6, 3), (7, 4)] {
        linear.push((format!("vandermonde({n},{r})"), Matroid::vandermonde(n, r).unwrap()));
    }
    for (name, m) in linear {
        failures.extend(rank_axiom_failures(&name, &m));
        let rebuilt = Matroid::from_bases(m.size(), &m.bases(&b).unwrap()).unwrap();
        if m.ground().subsets().any(|s| m.rank(s) != rebuilt.rank(s)) {
            failures.push(format!("{name}: bases-built ranks differ"));
        }
    }
    report("9", "rank axioms for n <= 8; bases-built matroids reproduce linear ranks", &failures);
}

#[test]
fn criterion_10_determinism() {
    let mut failures = Vec::new();
    let suites = [
        Suite::HardLefschetz,
        Suite::TopHeavy,
        Suite::HVector,
        Suite::HodgeRiemann,
        Suite::Chow,
    ];
    for name in ["u34", "fano", "k4", "b4"] {
        let loaded = load(&Source::Catalog(name.into()), false).unwrap();
        let b = Budget::default();
        let first = cmd_verify(&loaded, &suites, &b).unwrap().to_json();
        let second = cmd_verify(&loaded, &suites, &b).unwrap().to_json();
        if first != second {
            failures.push(format!("{name}: library reports differ"));
        }
    }
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_mobius-lab"))
            .args(["verify", "--catalog", "k4", "--suite", "hl,topheavy,hvector,hr,chow"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    if !a.status.success() || a.stdout.is_empty() || a.stdout != b.stdout {
        failures.push("binary output differs between runs".into());
    }
    report("10", "cmd_verify JSON is byte-identical across runs", &failures);
}
