use mobius_core::lattice::FlatLattice;
use mobius_core::{catalog, build_algebra, Budget, Matroid, MobiusAlgebra};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};

fn algebras() -> Vec<(String, MobiusAlgebra, bool)> {
    let b = Budget::default();
    catalog()
        .into_iter()
        .map(|e| {
            let m = e.spec.build().unwrap();
            (e.name.to_string(), build_algebra(&m, &b).unwrap(), e.graphic)
        })
        .collect()
}

#[test]
fn support_law_and_nonnegativity() {
    for (name, alg, _) in algebras() {
        let lat: &FlatLattice = alg.lattice();
        let r = alg.rank();
        for p in 0..=r {
            for k in 0..=r - p {
                let counts = alg.lefschetz_power_counts(p, k);
                for (gi, g) in lat.level(p + k).iter().enumerate() {
                    for (fi, f) in lat.level(p).iter().enumerate() {
                        let v = &counts[gi][fi];
                        assert!(!v.is_negative(), "{name}");
                        assert_eq!(
                            !v.is_zero(),
                            f.members.is_subset(g.members),
                            "{name}: p={p} k={k} {} -> {}",
                            f.members,
                            g.members
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn multiplication_is_commutative_and_associative() {
    for (name, alg, _) in algebras() {
        if alg.lattice().size() > 7 {
            continue;
        }
        let lat = alg.lattice();
        let ids = 0..lat.len();
        for a in ids.clone() {
            for b in ids.clone() {
                assert_eq!(alg.basis_product(a, b), alg.basis_product(b, a), "{name}");
                for c in ids.clone() {
                    let left = alg.basis_product(a, b).and_then(|ab| alg.basis_product(ab, c));
                    let right = alg.basis_product(b, c).and_then(|bc| alg.basis_product(a, bc));
                    assert_eq!(left, right, "{name}");
                }
            }
        }
    }
}

#[test]
fn top_degree_of_lefschetz_power() {
    let b = Budget::default();
    for (name, alg, _) in algebras() {
        let r = alg.rank();
        let bases = alg.lattice().matroid().bases(&b).unwrap().len();
        let factorial: u64 = (1..=r as u64).product();
        let mut l = alg.unit();
        for _ in 0..r {
            l = alg.multiply(&l, &alg.lefschetz()).unwrap();
        }
        let deg = alg.degree_map(&l).unwrap();
        assert_eq!(deg.to_integer(), BigInt::from(factorial * bases as u64), "{name}");
    }
}

#[test]
fn hard_lefschetz_and_top_heavy_on_catalog() {
    for (name, alg, _) in algebras() {
        let r = alg.rank();
        for p in 0..=r / 2 {
            if 2 * p == r {
                continue;
            }
            let hl = alg.verify_hard_lefschetz(p);
            assert!(hl.injective, "{name} p={p}: {hl:?}");
        }
        for p in 0..=r {
            for q in p..=r - p {
                assert!(alg.top_heavy_check(p, q).unwrap().holds, "{name}");
                let m = alg.extract_matching(p, q).unwrap();
                assert_eq!(m.pairs.len(), alg.dim(p));
                assert!(m.is_injective() && m.respects_containment(), "{name} ({p},{q})");
            }
        }
    }
}

#[test]
fn hodge_riemann_data() {
    let b = Budget::default();
    for (name, alg, graphic) in algebras() {
        if alg.rank() < 2 {
            continue;
        }
        assert!(alg.hr_form_check(&b).unwrap().holds, "{name}");
        assert_eq!(alg.hr_signature(&b).unwrap().positive, 1, "{name}");
        let n = alg.lattice().size();
        for i in 1..=n {
            for j in i + 1..=n {
                let ratio = alg.correlation_ratio(i, j, &b).unwrap();
                assert!(ratio < BigInt::from(2).into(), "{name}");
                if graphic {
                    assert!(ratio <= BigInt::from(1).into(), "{name}");
                }
            }
        }
    }
}

#[test]
fn boolean_hr_is_all_ones() {
    let b = Budget::default();
    let alg = build_algebra(&Matroid::boolean(4).unwrap(), &b).unwrap();
    let hr = alg.hr_matrix(&b).unwrap();
    for i in 1..=4 {
        for j in 1..=4 {
            assert_eq!(hr.get(i, j), u64::from(i != j));
        }
    }
    assert_eq!(alg.correlation_ratio(1, 3, &b).unwrap(), BigInt::from(1).into());
    let b3 = build_algebra(&Matroid::boolean(3).unwrap(), &b).unwrap();
    let sig = b3.hr_signature(&b).unwrap();
    assert_eq!((sig.positive, sig.negative, sig.zero), (1, 2, 0));
}

#[test]
fn h_vector_bound_on_catalog() {
    for (name, alg, _) in algebras() {
        let r = alg.rank();
        for p in 1..r {
            if 2 * p >= r {
                break;
            }
            assert!(alg.check_h_vector(p).holds, "{name} p={p}");
        }
    }
}
