use std::str::FromStr;
use std::thread;

use mobius_core::chow::AugmentedMatroid;
use mobius_core::fan::{compose_alpha, pullback_divisor, pullback_pl, verify_subdivision};
use mobius_core::mobius::correlation_from;
use mobius_core::{
    build_algebra, build_fan, catalog, emit_variety_equations, Budget, ChowRing, Error, FanKind,
    FlatLattice, MobiusAlgebra,
};
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};

use crate::{load, CliError, Loaded, Report, Result, Source};
use crate::report::Check;

/// Flat listings longer than this are suppressed unless asked for.
pub const DEFAULT_LISTING_LIMIT: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    HardLefschetz,
    TopHeavy,
    HVector,
    HodgeRiemann,
    Chow,
}

impl Suite {
    /// Suites run when none are named; the Chow ring is opt-in.
    pub const DEFAULT: [Suite; 4] = [
        Suite::HardLefschetz,
        Suite::TopHeavy,
        Suite::HVector,
        Suite::HodgeRiemann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::HardLefschetz => "hl",
            Suite::TopHeavy => "topheavy",
            Suite::HVector => "hvector",
            Suite::HodgeRiemann => "hr",
            Suite::Chow => "chow",
        }
    }
}

impl FromStr for Suite {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "hl" => Ok(Suite::HardLefschetz),
            "topheavy" => Ok(Suite::TopHeavy),
            "hvector" => Ok(Suite::HVector),
            "hr" => Ok(Suite::HodgeRiemann),
            "chow" => Ok(Suite::Chow),
            other => Err(CliError::Usage(format!(
                "unknown suite {other:?}; expected hl, topheavy, hvector, hr or chow"
            ))),
        }
    }
}

pub fn cmd_flats(loaded: &Loaded, budget: &Budget, listing_limit: usize) -> Result<Report> {
    let lattice = FlatLattice::enumerate(&loaded.matroid, budget)?;
    let whitney = lattice.whitney_numbers();
    let mut checks = Vec::new();
    if let Some(golden) = &loaded.golden {
        checks.push(Check::new(
            "whitney.golden",
            &whitney == golden,
            format!("{} vs golden {}", profile(&whitney), profile(golden)),
            json!({ "computed": whitney, "golden": golden }),
        ));
    }
    let listing = (lattice.len() <= listing_limit).then(|| {
        lattice
            .flats()
            .iter()
            .map(|f| json!({ "elements": f.members, "rank": f.rank }))
            .collect::<Vec<_>>()
    });
    let data = json!({
        "whitney": whitney,
        "flat_count": lattice.len(),
        "flats": listing,
    });
    Ok(Report::new("flats", Some(loaded.descriptor.clone()), checks, data))
}

pub fn cmd_verify(loaded: &Loaded, suites: &[Suite], budget: &Budget) -> Result<Report> {
    let alg = build_algebra(&loaded.matroid, budget)?;
    let mut suites = suites.to_vec();
    suites.sort();
    suites.dedup();
    // suites are independent; results are collected in suite order
    let results: Vec<Result<Vec<Check>>> = thread::scope(|scope| {
        let handles: Vec<_> = suites
            .iter()
            .map(|&suite| {
                let alg = &alg;
                scope.spawn(move || run_suite(suite, alg, loaded.graphic, budget))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("suite thread panicked"))
            .collect()
    });
    let mut checks = Vec::new();
    for r in results {
        checks.extend(r?);
    }
    let data = json!({
        "whitney": alg.lattice().whitney_numbers(),
        "suites": suites.iter().map(|s| s.name()).collect::<Vec<_>>(),
    });
    Ok(Report::new("verify", Some(loaded.descriptor.clone()), checks, data))
}

fn run_suite(suite: Suite, alg: &MobiusAlgebra, graphic: bool, budget: &Budget) -> Result<Vec<Check>> {
    match suite {
        Suite::HardLefschetz => Ok(hard_lefschetz_checks(alg)),
        Suite::TopHeavy => top_heavy_checks(alg),
        Suite::HVector => Ok(h_vector_checks(alg)),
        Suite::HodgeRiemann => hodge_riemann_checks(alg, graphic, budget),
        Suite::Chow => chow_checks(alg, budget),
    }
}

fn hard_lefschetz_checks(alg: &MobiusAlgebra) -> Vec<Check> {
    let r = alg.rank();
    (0..r)
        .take_while(|p| 2 * p < r)
        .map(|p| {
            let rep = alg.verify_hard_lefschetz(p);
            Check::new(
                format!("hl.p{p}"),
                rep.injective,
                format!(
                    "L^{}: B^{p} -> B^{} has rank {} of {}",
                    rep.power,
                    r - p,
                    rep.rank,
                    rep.cols
                ),
                json!(rep),
            )
        })
        .collect()
}

fn top_heavy_checks(alg: &MobiusAlgebra) -> Result<Vec<Check>> {
    let r = alg.rank();
    let mut checks = Vec::new();
    for p in 0..=r {
        for q in p..=r.saturating_sub(p) {
            if p + q > r {
                continue;
            }
            let rep = alg.top_heavy_check(p, q)?;
            let name = format!("topheavy.p{p}.q{q}");
            let check = match alg.extract_matching(p, q) {
                Ok(m) => {
                    let ok = rep.holds
                        && m.pairs.len() == rep.lower
                        && m.is_injective()
                        && m.respects_containment();
                    Check::new(
                        name,
                        ok,
                        format!("|L^{p}| = {} <= |L^{}| = {}, matching of size {}", rep.lower, r - q, rep.upper, m.pairs.len()),
                        json!({ "counts": rep, "matching": m.pairs }),
                    )
                }
                Err(e @ (Error::RankDeficient { .. } | Error::MatchingIncomplete { .. })) => {
                    Check::new(name, false, e.to_string(), json!({ "counts": rep, "error": e.to_string() }))
                }
                Err(e) => return Err(e.into()),
            };
            checks.push(check);
        }
    }
    Ok(checks)
}

fn h_vector_checks(alg: &MobiusAlgebra) -> Vec<Check> {
    let r = alg.rank();
    (1..r)
        .take_while(|p| 2 * p < r)
        .map(|p| {
            let rep = alg.check_h_vector(p);
            let bound = rep.bound.map_or("undefined".to_string(), |b| b.to_string());
            Check::new(
                format!("hvector.p{p}"),
                rep.holds,
                format!("0 <= {} <= {bound}", rep.step),
                json!(rep),
            )
        })
        .collect()
}

fn hodge_riemann_checks(alg: &MobiusAlgebra, graphic: bool, budget: &Budget) -> Result<Vec<Check>> {
    if alg.rank() < 2 {
        return Ok(Vec::new());
    }
    let mut checks = Vec::new();
    let inertia = alg.hr_signature(budget)?;
    checks.push(Check::new(
        "hr.signature",
        inertia.positive == 1,
        format!("inertia (+{}, -{}, 0:{})", inertia.positive, inertia.negative, inertia.zero),
        json!(inertia),
    ));
    let form = alg.hr_form_check(budget)?;
    checks.push(Check::new(
        "hr.form",
        form.holds,
        format!("deg(L^(r-2) y_i y_j) = {}·b_ij, {} mismatches", form.factor, form.mismatches.len()),
        json!(form),
    ));
    let hr = alg.hr_matrix(budget)?;
    let sweep = ratio_table(&hr);
    checks.extend(ratio_checks("hr", &sweep, graphic));
    Ok(checks)
}

struct RatioTable {
    pairs: Vec<(usize, usize, BigRational)>,
    max: Option<(usize, usize, BigRational)>,
}

impl RatioTable {
    fn to_json(&self) -> Value {
        json!({
            "pairs": self.pairs.iter().map(|(i, j, v)| json!([i, j, v.to_string()])).collect::<Vec<_>>(),
            "max": self.max.as_ref().map(|(i, j, v)| json!({ "pair": [i, j], "ratio": v.to_string() })),
        })
    }
}

fn ratio_table(hr: &mobius_core::mobius::HrMatrix) -> RatioTable {
    let mut pairs = Vec::new();
    for i in 1..=hr.n {
        for j in i + 1..=hr.n {
            pairs.push((i, j, correlation_from(hr, i, j)));
        }
    }
    let max = pairs
        .iter()
        .fold(None::<&(usize, usize, BigRational)>, |best, cur| match best {
            Some(b) if b.2 >= cur.2 => Some(b),
            _ => Some(cur),
        })
        .cloned();
    RatioTable { pairs, max }
}

fn ratio_checks(prefix: &str, table: &RatioTable, graphic: bool) -> Vec<Check> {
    let two = BigRational::from_integer(2.into());
    let max = table.max.as_ref().map(|m| m.2.clone());
    let max_text = max.as_ref().map_or("none".to_string(), |m| m.to_string());
    let mut checks = vec![Check::new(
        format!("{prefix}.ratio_below_two"),
        max.as_ref().is_none_or(|m| *m < two),
        format!("max ratio {max_text} < 2"),
        table.to_json(),
    )];
    if graphic {
        checks.push(Check::new(
            format!("{prefix}.ratio_graphic"),
            max.as_ref().is_none_or(|m| *m <= BigRational::one()),
            format!("max ratio {max_text} <= 1"),
            json!({ "max": max_text }),
        ));
    }
    checks
}

fn chow_checks(alg: &MobiusAlgebra, budget: &Budget) -> Result<Vec<Check>> {
    let ring = ChowRing::new(AugmentedMatroid::new(alg.lattice()), budget)?;
    let mut checks = Vec::new();
    let dims = ring.dims();
    match ring.verify_relations(budget) {
        Ok(rep) => checks.push(Check::new(
            "chow.relations",
            rep.beta_definitions_agree,
            format!(
                "dims {}, top value {} on {} chains",
                profile(&dims),
                rep.top_value,
                rep.r3_chains
            ),
            json!({ "dims": dims, "report": rep }),
        )),
        Err(e @ Error::RelationViolated { .. }) => {
            checks.push(Check::new("chow.relations", false, e.to_string(), json!({ "dims": dims })))
        }
        Err(e) => return Err(e.into()),
    }
    for p in 0..=alg.rank() {
        let rep = ring.verify_phi_injective(p);
        checks.push(Check::new(
            format!("chow.phi_injective.p{p}"),
            rep.injective,
            format!("rank {} of {} into A^{p} (dim {})", rep.rank, rep.source_dim, rep.target_dim),
            json!(rep),
        ));
    }
    let hom = ring.verify_phi_homomorphism(alg)?;
    checks.push(Check::new(
        "chow.phi_homomorphism",
        hom.holds,
        format!(
            "{} basis choices, {} products",
            hom.basis_choices_checked, hom.products_checked
        ),
        json!(hom),
    ));
    Ok(checks)
}

pub fn cmd_matching(loaded: &Loaded, p: usize, q: usize, budget: &Budget) -> Result<Report> {
    let r = loaded.matroid.rank_total();
    if p > q {
        return Err(CliError::Usage(format!("need p <= q, got p={p}, q={q}")));
    }
    if p + q > r {
        return Err(CliError::Usage(format!("need p + q <= r = {r}, got p={p}, q={q}")));
    }
    let alg = build_algebra(&loaded.matroid, budget)?;
    let m = alg.extract_matching(p, q)?;
    let ok = m.is_injective() && m.respects_containment() && m.pairs.len() == alg.dim(p);
    let check = Check::new(
        "matching",
        ok,
        format!("{} pairs L^{p} -> L^{}", m.pairs.len(), r - q),
        json!({ "injective": m.is_injective(), "containment": m.respects_containment() }),
    );
    let data = json!({
        "p": p,
        "q": q,
        "source_rank": m.source_rank,
        "target_rank": m.target_rank,
        "pairs": m.pairs,
    });
    Ok(Report::new("matching", Some(loaded.descriptor.clone()), vec![check], data))
}

pub fn cmd_fans(n: usize, budget: &Budget) -> Result<Report> {
    if n == 0 {
        return Err(CliError::Usage("fan dimension must be at least 1".into()));
    }
    let simplex = build_fan(FanKind::Simplex, n, budget)?;
    let cube = build_fan(FanKind::Cube, n, budget)?;
    let perm = build_fan(FanKind::Permutohedron, n, budget)?;
    let counts = [simplex.cones.len(), cube.cones.len(), perm.cones.len()];
    let expected = [n + 1, 1usize << n, (1..=n + 1).product()];
    let mut checks = vec![Check::new(
        "fans.cone_counts",
        counts == expected,
        format!("maximal cones {counts:?}, expected {expected:?}"),
        json!({ "simplex": counts[0], "cube": counts[1], "permutohedron": counts[2] }),
    )];
    let sub = verify_subdivision(n, budget)?;
    checks.push(Check::new(
        "fans.subdivision",
        sub.holds,
        format!("{} permutohedral cones checked", sub.chains),
        json!(sub),
    ));
    let mut divisors = Vec::new();
    for i in 1..=n {
        let formula = pullback_pl(i, n, budget)?;
        let composed = compose_alpha(i, n, budget)?;
        checks.push(Check::new(
            format!("fans.pullback.{i}"),
            formula == composed,
            format!("{} ray values compared", formula.values.len()),
            json!({ "rays": formula.values.len() }),
        ));
        divisors.push(json!({ "i": i, "rays": pullback_divisor(i, n) }));
    }
    let data = json!({ "n": n, "pullback_divisors": divisors });
    Ok(Report::new("fans", None, checks, data))
}

pub fn cmd_equations(loaded: &Loaded, budget: &Budget) -> Result<Report> {
    let eqs = emit_variety_equations(&loaded.matroid, budget).map_err(|error| match error {
        Error::NotLinear => CliError::Core {
            error,
            hint: Some("supply a linear realization, e.g. a signed incidence matrix for a graph"),
        },
        other => other.into(),
    })?;
    let summary = if eqs.is_empty() {
        "no circuits".to_string()
    } else {
        let trinomials = eqs.iter().filter(|e| e.terms.len() == 3).count();
        format!("{} equations, {trinomials} trinomials", eqs.len())
    };
    let listing: Vec<_> = eqs
        .iter()
        .map(|e| json!({ "circuit": e.circuit, "equation": e.to_string(), "terms": e.terms }))
        .collect();
    let check = Check::new("equations", true, summary, json!({ "count": eqs.len() }));
    Ok(Report::new(
        "equations",
        Some(loaded.descriptor.clone()),
        vec![check],
        json!({ "equations": listing }),
    ))
}

/// Correlation ratios over the catalog, or over the single named entry.
pub fn cmd_ratio_sweep(selector: Option<&str>, budget: &Budget) -> Result<Report> {
    let names: Vec<String> = match selector {
        Some(name) => vec![name.to_string()],
        None => catalog().iter().map(|e| e.name.to_string()).collect(),
    };
    let mut checks = Vec::new();
    let mut rows = Vec::new();
    for name in names {
        let loaded = load(&Source::Catalog(name.clone()), false)?;
        let alg = build_algebra(&loaded.matroid, budget)?;
        if alg.rank() < 2 {
            continue;
        }
        let hr = alg.hr_matrix(budget)?;
        let table = ratio_table(&hr);
        checks.extend(ratio_checks(&name, &table, loaded.graphic));
        rows.push(json!({
            "name": name,
            "graphic": loaded.graphic,
            "bases": hr.bases,
            "ratios": table.to_json(),
        }));
    }
    Ok(Report::new("ratio-sweep", None, checks, json!({ "matroids": rows })))
}

fn profile(v: &[usize]) -> String {
    let parts: Vec<_> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in [Suite::HardLefschetz, Suite::TopHeavy, Suite::HVector, Suite::HodgeRiemann, Suite::Chow] {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!(matches!("lefschetz".parse::<Suite>(), Err(CliError::Usage(_))));
    }

    #[test]
    fn profile_formatting() {
        assert_eq!(profile(&[1, 4, 6, 1]), "(1,4,6,1)");
    }
}
