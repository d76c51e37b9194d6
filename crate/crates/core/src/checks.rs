//! Verification suites over lattices: the geometric-lattice axioms, the
//! shadow-count bound, structural cover facts, and randomized/exhaustive
//! suites for the modular-complement and atom-sublattice constructions.
//!
//! Failures are report content, not errors; every report serializes to JSON
//! deterministically.

use crate::lattice::Lattice;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Outcome of one named check, with a counterexample when it failed.
#[derive(Debug, Clone, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl NamedCheck {
    fn pass(name: &str) -> NamedCheck {
        NamedCheck {
            name: name.into(),
            passed: true,
            witness: None,
        }
    }

    fn fail(name: &str, witness: String) -> NamedCheck {
        NamedCheck {
            name: name.into(),
            passed: false,
            witness: Some(witness),
        }
    }
}

/// Aggregated result of the geometric-lattice axiom checks.
#[derive(Debug, Clone, Serialize)]
pub struct GeometricReport {
    pub checks: Vec<NamedCheck>,
}

impl GeometricReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&NamedCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Checks the four geometric-lattice invariants exhaustively: unique bounds
/// with all maximal chains of equal length, semimodularity, atomisticity, and
/// rank submodularity (which also certifies that meets and joins exist).
pub fn verify_geometric(lat: &Lattice) -> GeometricReport {
    let checks = vec![
        check_bounds_and_grading(lat),
        check_semimodular(lat),
        check_atomistic(lat),
        check_rank_submodular(lat),
    ];
    GeometricReport { checks }
}

fn check_bounds_and_grading(lat: &Lattice) -> NamedCheck {
    let name = "bounds_and_grading";
    let minimals: Vec<usize> = (0..lat.len())
        .filter(|&x| lat.covers_down(x).is_empty())
        .collect();
    if minimals.len() != 1 {
        return NamedCheck::fail(
            name,
            format!(
                "{} minimal elements: {}",
                minimals.len(),
                flats_str(lat, &minimals)
            ),
        );
    }
    let maximals: Vec<usize> = (0..lat.len())
        .filter(|&x| lat.covers_up(x).is_empty())
        .collect();
    if maximals.len() != 1 {
        return NamedCheck::fail(
            name,
            format!(
                "{} maximal elements: {}",
                maximals.len(),
                flats_str(lat, &maximals)
            ),
        );
    }
    for x in 0..lat.len() {
        for &y in lat.covers_up(x) {
            if lat.rank_of(y) != lat.rank_of(x) + 1 {
                return NamedCheck::fail(
                    name,
                    format!(
                        "cover {} -> {} skips from rank {} to {}; maximal chains differ in length",
                        lat.flat(x),
                        lat.flat(y),
                        lat.rank_of(x),
                        lat.rank_of(y)
                    ),
                );
            }
        }
    }
    NamedCheck::pass(name)
}

fn check_semimodular(lat: &Lattice) -> NamedCheck {
    let name = "semimodular";
    for a in 0..lat.len() {
        let ups = lat.covers_up(a);
        for (i, &b) in ups.iter().enumerate() {
            for &c in &ups[i + 1..] {
                let joined = lat
                    .covers_up(b)
                    .iter()
                    .any(|d| lat.covers_up(c).contains(d));
                if !joined {
                    return NamedCheck::fail(
                        name,
                        format!(
                            "a={}, b={}, c={} have no common upper cover",
                            lat.flat(a),
                            lat.flat(b),
                            lat.flat(c)
                        ),
                    );
                }
            }
        }
    }
    NamedCheck::pass(name)
}

fn check_atomistic(lat: &Lattice) -> NamedCheck {
    let name = "atomistic";
    for x in 0..lat.len() {
        let mut acc = lat.bottom();
        for a in lat.atoms_under(x) {
            match lat.try_join(acc, a) {
                Some(j) => acc = j,
                None => {
                    return NamedCheck::fail(
                        name,
                        format!("no join of {} and {}", lat.flat(acc), lat.flat(a)),
                    )
                }
            }
        }
        if acc != x {
            return NamedCheck::fail(
                name,
                format!(
                    "{} is not the join of its atoms (got {})",
                    lat.flat(x),
                    lat.flat(acc)
                ),
            );
        }
    }
    NamedCheck::pass(name)
}

fn check_rank_submodular(lat: &Lattice) -> NamedCheck {
    let name = "rank_submodular";
    for x in 0..lat.len() {
        for y in x..lat.len() {
            let Some(j) = lat.try_join(x, y) else {
                return NamedCheck::fail(
                    name,
                    format!(
                        "not a lattice: {} and {} have no join",
                        lat.flat(x),
                        lat.flat(y)
                    ),
                );
            };
            let Some(m) = lat.try_meet(x, y) else {
                return NamedCheck::fail(
                    name,
                    format!(
                        "not a lattice: {} and {} have no meet",
                        lat.flat(x),
                        lat.flat(y)
                    ),
                );
            };
            if lat.rank_of(j) + lat.rank_of(m) > lat.rank_of(x) + lat.rank_of(y) {
                return NamedCheck::fail(
                    name,
                    format!(
                        "r({0} v {1}) + r({0} ^ {1}) > r({0}) + r({1})",
                        lat.flat(x),
                        lat.flat(y)
                    ),
                );
            }
        }
    }
    NamedCheck::pass(name)
}

/// Result of the shadow-count bound check over all non-incident
/// atom/hyperplane pairs.
#[derive(Debug, Clone, Serialize)]
pub struct ShadowBoundReport {
    pub pairs_checked: usize,
    /// Minimum of `|hyperplanes over p| - |atoms under h|` over checked pairs.
    pub min_slack: Option<i64>,
    pub violations: Vec<String>,
}

impl ShadowBoundReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every atom `p` and hyperplane `h` with `p` not below `h`, the number
/// of atoms under `h` is at most the number of hyperplanes over `p`.
pub fn check_shadow_bound(lat: &Lattice) -> ShadowBoundReport {
    assert!(lat.height() >= 2, "shadow bound needs rank >= 2");
    let under_counts: Vec<(usize, usize)> = lat
        .hyperplanes()
        .iter()
        .map(|&h| (h, lat.atoms_under(h).len()))
        .collect();
    let mut report = ShadowBoundReport {
        pairs_checked: 0,
        min_slack: None,
        violations: Vec::new(),
    };
    for &p in lat.atoms() {
        let over_p = lat.hyperplanes_over(p).len();
        for &(h, under_h) in &under_counts {
            if lat.leq(p, h) {
                continue;
            }
            report.pairs_checked += 1;
            let slack = over_p as i64 - under_h as i64;
            report.min_slack = Some(report.min_slack.map_or(slack, |m: i64| m.min(slack)));
            if slack < 0 {
                report.violations.push(format!(
                    "atom {} not below hyperplane {}: {} atoms under it exceed {} hyperplanes over the atom",
                    lat.flat(p),
                    lat.flat(h),
                    under_h,
                    over_p
                ));
            }
        }
    }
    report
}

/// For distinct lower covers `x`, `y` of any element `z`, the common upper
/// bounds of `x` and `y` are exactly the elements above `z`.
pub fn check_cover_join(lat: &Lattice) -> NamedCheck {
    let name = "cover_join";
    for z in 0..lat.len() {
        let downs = lat.covers_down(z);
        for (i, &x) in downs.iter().enumerate() {
            for &y in &downs[i + 1..] {
                for w in 0..lat.len() {
                    let common = lat.leq(x, w) && lat.leq(y, w);
                    let above = lat.leq(z, w);
                    if common != above {
                        return NamedCheck::fail(
                            name,
                            format!(
                                "lower covers {} and {} of {}: {} separates their common upper bounds from the up-set",
                                lat.flat(x),
                                lat.flat(y),
                                lat.flat(z),
                                lat.flat(w)
                            ),
                        );
                    }
                }
            }
        }
    }
    NamedCheck::pass(name)
}

/// No 4-crown: no pair of distinct elements in one rank covered by two common
/// distinct elements of the next rank.
pub fn check_no_four_crown(lat: &Lattice) -> NamedCheck {
    let name = "no_four_crown";
    for v in 0..lat.len() {
        for w in v + 1..lat.len() {
            if lat.rank_of(v) != lat.rank_of(w) {
                continue;
            }
            let shared: Vec<usize> = lat
                .covers_down(v)
                .iter()
                .copied()
                .filter(|d| lat.covers_down(w).contains(d))
                .collect();
            if shared.len() >= 2 {
                return NamedCheck::fail(
                    name,
                    format!(
                        "{} and {} share lower covers {} and {}",
                        lat.flat(v),
                        lat.flat(w),
                        lat.flat(shared[0]),
                        lat.flat(shared[1])
                    ),
                );
            }
        }
    }
    NamedCheck::pass(name)
}

/// Outcome of a randomized or exhaustive suite run.
#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub exhaustive: bool,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Runs the modular-complement construction over triples `a <= x <= b`:
/// exhaustively when the lattice has at most `exhaustive_cap` elements,
/// otherwise on `samples` seeded random triples.
pub fn modular_complement_suite(
    lat: &Lattice,
    exhaustive_cap: usize,
    samples: usize,
    seed: u64,
) -> SuiteReport {
    let mut report = SuiteReport {
        name: "modular_complement".into(),
        exhaustive: lat.len() <= exhaustive_cap,
        cases: 0,
        failures: Vec::new(),
    };
    let mut run = |a: usize, b: usize, x: usize| {
        report.cases += 1;
        if let Err(e) = lat.modular_complement(a, b, x) {
            report.failures.push(format!(
                "a={}, b={}, x={}: {e}",
                lat.flat(a),
                lat.flat(b),
                lat.flat(x)
            ));
        }
    };
    if lat.len() <= exhaustive_cap {
        for a in 0..lat.len() {
            for b in 0..lat.len() {
                if !lat.leq(a, b) {
                    continue;
                }
                for x in 0..lat.len() {
                    if lat.leq(a, x) && lat.leq(x, b) {
                        run(a, b, x);
                    }
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let x = rng.gen_range(0..lat.len());
            let down: Vec<usize> = (0..lat.len()).filter(|&z| lat.leq(z, x)).collect();
            let up: Vec<usize> = (0..lat.len()).filter(|&z| lat.leq(x, z)).collect();
            let a = down[rng.gen_range(0..down.len())];
            let b = up[rng.gen_range(0..up.len())];
            run(a, b, x);
        }
    }
    report
}

/// Runs the atom-sublattice construction on seeded random generator sets and
/// verifies each result against the geometric axioms. The construction itself
/// checks its structural conclusions and surfaces violations as errors.
pub fn atom_sublattice_suite(lat: &Lattice, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport {
        name: "atom_sublattice".into(),
        exhaustive: false,
        cases: 0,
        failures: Vec::new(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut pool: Vec<usize> = lat.atoms().to_vec();
        pool.shuffle(&mut rng);
        let size = rng.gen_range(0..=pool.len());
        let mut generators: Vec<usize> = pool[..size].to_vec();
        generators.sort_unstable();
        report.cases += 1;
        match lat.atom_sublattice(&generators) {
            Err(e) => report
                .failures
                .push(format!("generators {generators:?}: {e}")),
            Ok(sub) => {
                let geo = verify_geometric(&sub.lattice);
                if !geo.all_passed() {
                    let failed: Vec<&str> = geo
                        .checks
                        .iter()
                        .filter(|c| !c.passed)
                        .map(|c| c.name.as_str())
                        .collect();
                    report.failures.push(format!(
                        "generators {generators:?}: sublattice fails {}",
                        failed.join(", ")
                    ));
                }
            }
        }
    }
    report
}

fn flats_str(lat: &Lattice, elems: &[usize]) -> String {
    elems
        .iter()
        .map(|&e| lat.flat(e).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}
