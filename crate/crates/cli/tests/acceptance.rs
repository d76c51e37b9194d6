//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Run `cargo test -p geomlat-cli --test acceptance -- --nocapture` to see
//! the per-criterion lines. Expected values come from brute-force oracles
//! defined in this file, independent of the library's implementation paths.

use geomlat::checks::{
    atom_sublattice_suite, check_shadow_bound, modular_complement_suite, verify_geometric,
};
use geomlat::matching::{
    check_case2_classification, check_milner_shelah, match_hall, match_milner_shelah,
    verify_matching,
};
use geomlat::society::{
    extract_obstruction, lattice_society, max_espousal, verify_obstruction, Society,
};
use geomlat::Lattice;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

const CORPUS_SEED: u64 = 0;
const RANDOM_MATROIDS: usize = 50;

fn corpus() -> &'static [(String, Lattice)] {
    static CORPUS: OnceLock<Vec<(String, Lattice)>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        geomlat::corpus::standard_corpus(CORPUS_SEED, RANDOM_MATROIDS)
            .into_iter()
            .map(|entry| {
                let lat = Lattice::from_matroid(&entry.matroid)
                    .unwrap_or_else(|e| panic!("{}: {e}", entry.name));
                (entry.name, lat)
            })
            .collect()
    })
}

fn conclude(number: usize, name: &str, failures: Vec<String>) {
    if failures.is_empty() {
        println!("criterion {number} ({name}): PASS");
    } else {
        println!("criterion {number} ({name}): FAIL");
        panic!(
            "criterion {number} ({name}) failed with {} issue(s):\n{}",
            failures.len(),
            failures.join("\n")
        );
    }
}

/// Brute-force matching existence: backtracking over atoms in index order,
/// assigning unused hyperplanes above each. Independent of the espousal
/// engine.
fn matching_exists_by_backtracking(lat: &Lattice) -> bool {
    fn place(lat: &Lattice, atoms: &[usize], i: usize, used: &mut Vec<bool>) -> bool {
        if i == atoms.len() {
            return true;
        }
        for (slot, &h) in lat.hyperplanes().iter().enumerate() {
            if !used[slot] && lat.leq(atoms[i], h) {
                used[slot] = true;
                if place(lat, atoms, i + 1, used) {
                    return true;
                }
                used[slot] = false;
            }
        }
        false
    }
    let mut used = vec![false; lat.hyperplanes().len()];
    place(lat, lat.atoms(), 0, &mut used)
}

/// Independent deficiency oracle: max over subsets of men of
/// `|A| - |K[A]|`, by bitmask dynamic programming. Requires at most 20 men.
fn defect_oracle(society: &Society) -> usize {
    let men: Vec<usize> = society.men().iter().copied().collect();
    let women: Vec<usize> = society.women().iter().copied().collect();
    assert!(men.len() <= 20);
    let nbr: Vec<u64> = men
        .iter()
        .map(|&m| {
            let mut bits = 0u64;
            for w in society.neighbors(m) {
                bits |= 1 << women.iter().position(|&x| x == w).unwrap();
            }
            bits
        })
        .collect();
    let mut best = 0usize;
    let mut union = vec![0u64; 1 << men.len()];
    for mask in 1usize..1 << men.len() {
        let low = mask.trailing_zeros() as usize;
        union[mask] = union[mask & (mask - 1)] | nbr[low];
        best = best
            .max((mask.count_ones() as usize).saturating_sub(union[mask].count_ones() as usize));
    }
    best
}

fn random_society(rng: &mut ChaCha8Rng) -> Society {
    let m = rng.gen_range(0..=12);
    let w = rng.gen_range(0..=12);
    let density: f64 = rng.gen_range(0.0..=1.0);
    let mut edges = Vec::new();
    for i in 0..m {
        for j in 0..w {
            if rng.gen_bool(density) {
                edges.push((i, j));
            }
        }
    }
    Society::from_counts(m, w, &edges).expect("generated society is valid")
}

#[test]
fn criterion_1_geometric_axiom_suite() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for (name, lat) in corpus() {
        let report = verify_geometric(lat);
        for check in &report.checks {
            if !check.passed {
                failures.push(format!(
                    "{name}: {} fails ({})",
                    check.name,
                    check.witness.clone().unwrap_or_default()
                ));
            }
        }
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(60) {
        failures.push(format!("suite took {elapsed:?}, over the 60 s budget"));
    }
    conclude(1, "geometric axiom suite", failures);
}

#[test]
fn criterion_2_hall_matching_with_backtracking_oracle() {
    let mut failures = Vec::new();
    for (name, lat) in corpus() {
        if lat.height() < 2 {
            failures.push(format!("{name}: corpus lattice of rank < 2"));
            continue;
        }
        match match_hall(lat) {
            Err(e) => failures.push(format!("{name}: hall matcher failed: {e}")),
            Ok(matching) => {
                let verdict = verify_matching(lat, &matching);
                if !verdict.passed {
                    failures.push(format!("{name}: {}", verdict.violation.unwrap_or_default()));
                }
            }
        }
        if lat.atoms().len() <= 12 && !matching_exists_by_backtracking(lat) {
            failures.push(format!("{name}: backtracking oracle finds no matching"));
        }
    }
    conclude(2, "hall matching vs backtracking oracle", failures);
}

#[test]
fn criterion_3_modular_complement_suite() {
    let mut failures = Vec::new();
    for (name, lat) in corpus() {
        let report = modular_complement_suite(lat, 200, 1000, 1);
        if lat.len() <= 200 && !report.exhaustive {
            failures.push(format!("{name}: expected exhaustive triples"));
        }
        for f in report.failures {
            failures.push(format!("{name}: {f}"));
        }
    }
    conclude(3, "modular complement identities", failures);
}

#[test]
fn criterion_4_shadow_bound_suite() {
    let mut failures = Vec::new();
    for (name, lat) in corpus() {
        let report = check_shadow_bound(lat);
        for v in report.violations {
            failures.push(format!("{name}: {v}"));
        }
    }
    conclude(4, "shadow bound", failures);
}

#[test]
fn criterion_5_atom_sublattice_suite() {
    let mut failures = Vec::new();
    for (name, lat) in corpus() {
        let report = atom_sublattice_suite(lat, 200, 2);
        for f in report.failures {
            failures.push(format!("{name}: {f}"));
        }
    }
    conclude(5, "atom sublattice conclusions", failures);
}

#[test]
fn criterion_6_case2_classification_suite() {
    let mut failures = Vec::new();
    for (name, lat) in corpus() {
        if lat.height() < 3 {
            continue;
        }
        for &h0 in lat.hyperplanes() {
            let report = check_case2_classification(lat, h0);
            for f in report.failures {
                failures.push(format!("{name}: {f}"));
            }
        }
    }
    conclude(6, "lower-cover classification", failures);
}

#[test]
fn criterion_7_obstruction_dichotomy() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xA11CE);
    let mut obstructed = 0usize;
    for case in 0..10_000 {
        let society = random_society(&mut rng);
        let unmatched = max_espousal(&society).1.len();
        let espousable = unmatched == 0;
        if unmatched != defect_oracle(&society) {
            failures.push(format!(
                "case {case}: deficiency {unmatched} differs from the subset-defect oracle {}",
                defect_oracle(&society)
            ));
        }
        match extract_obstruction(&society) {
            None => {
                if !espousable {
                    failures.push(format!("case {case}: deficient but no obstruction"));
                }
            }
            Some(witness) => {
                obstructed += 1;
                if espousable {
                    failures.push(format!("case {case}: espousable but obstructed"));
                }
                let check = verify_obstruction(&witness, &society);
                if !check.passed() {
                    failures.push(format!(
                        "case {case}: witness fails {:?}",
                        check.failed_clauses()
                    ));
                }
                if defect_oracle(&witness.pi) != witness.kappa {
                    failures.push(format!(
                        "case {case}: oracle deficiency {} differs from kappa {}",
                        defect_oracle(&witness.pi),
                        witness.kappa
                    ));
                }
            }
        }
        if failures.len() > 20 {
            break;
        }
    }
    if obstructed == 0 {
        failures.push("no obstructed societies generated".into());
    }
    let elapsed = started.elapsed();
    if elapsed > Duration::from_secs(120) {
        failures.push(format!("suite took {elapsed:?}, over the 120 s budget"));
    }
    conclude(7, "espousal-xor-obstruction over 10000 societies", failures);
}

#[test]
fn criterion_8_degree_condition_matching() {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0xB0B);
    let mut eligible = 0usize;
    for case in 0..10_000 {
        let society = random_society(&mut rng);
        if !check_milner_shelah(&society) {
            continue;
        }
        eligible += 1;
        match match_milner_shelah(&society) {
            Err(e) => failures.push(format!("case {case}: {e}")),
            Ok(espousal) => {
                if !espousal.is_total(&society) {
                    failures.push(format!("case {case}: espousal not total"));
                }
            }
        }
    }
    if eligible == 0 {
        failures.push("no societies satisfied the degree condition".into());
    }
    // Equicardinal corpus lattices must satisfy the degree condition and
    // espouse totally.
    for (name, lat) in corpus() {
        if lat.height() < 3 {
            continue;
        }
        let shadow_sizes: Vec<usize> = lat
            .hyperplanes()
            .iter()
            .map(|&h| lat.atoms_under(h).len())
            .collect();
        if shadow_sizes.windows(2).any(|w| w[0] != w[1]) {
            continue;
        }
        let society = lattice_society(lat).expect("rank checked");
        if !check_milner_shelah(&society) {
            failures.push(format!(
                "{name}: equicardinal lattice fails the degree condition"
            ));
            continue;
        }
        match match_milner_shelah(&society) {
            Err(e) => failures.push(format!("{name}: {e}")),
            Ok(espousal) => {
                if !espousal.is_total(&society) {
                    failures.push(format!("{name}: espousal not total"));
                }
            }
        }
    }
    conclude(8, "degree-condition matching", failures);
}

#[test]
fn criterion_9_deterministic_reports() {
    let mut failures = Vec::new();
    let dir = tempfile::tempdir().unwrap();
    let corpus_dir = dir.path().join("corpus");
    let generated = std::process::Command::new(env!("CARGO_BIN_EXE_geomlat"))
        .args([
            "gen-corpus",
            "--out",
            corpus_dir.to_str().unwrap(),
            "--count",
            "2",
        ])
        .output()
        .expect("binary runs");
    assert!(generated.status.success());

    let runs: Vec<Vec<String>> = vec![
        vec![
            "match".into(),
            "--input".into(),
            corpus_dir.join("k4.json").display().to_string(),
            "--strategy".into(),
            "bjorner".into(),
            "--seed".into(),
            "5".into(),
        ],
        vec![
            "match".into(),
            "--input".into(),
            corpus_dir.join("fano.json").display().to_string(),
            "--strategy".into(),
            "auto".into(),
            "--seed".into(),
            "5".into(),
        ],
        vec![
            "verify".into(),
            "--input".into(),
            corpus_dir.join("u34.json").display().to_string(),
            "--seed".into(),
            "7".into(),
        ],
    ];
    for args in runs {
        let mut outputs = Vec::new();
        for run in 0..2 {
            let out_file = dir.path().join(format!("report_{run}.json"));
            let mut full = args.clone();
            full.push("--out".into());
            full.push(out_file.display().to_string());
            let output = std::process::Command::new(env!("CARGO_BIN_EXE_geomlat"))
                .args(&full)
                .output()
                .expect("binary runs");
            if !output.status.success() {
                failures.push(format!("{args:?}: exit {:?}", output.status.code()));
            }
            outputs.push((output.stdout, std::fs::read(&out_file).unwrap()));
        }
        if outputs[0] != outputs[1] {
            failures.push(format!("{args:?}: reports differ between runs"));
        }
    }
    conclude(9, "byte-identical reports under a fixed seed", failures);
}

/// Every strategy that completes returns a matching satisfying the three
/// invariants, on every corpus lattice.
#[test]
fn strategy_matrix_on_corpus() {
    use geomlat::matching::{match_dispatch, Strategy};
    let mut failures = Vec::new();
    for (name, lat) in corpus() {
        for strategy in [Strategy::Hall, Strategy::Bjorner, Strategy::Auto] {
            match match_dispatch(lat, strategy) {
                Err(e) => failures.push(format!("{name} via {strategy}: {e}")),
                Ok((matching, report)) => {
                    if !report.verified || !verify_matching(lat, &matching).passed {
                        failures.push(format!("{name} via {strategy}: unverified matching"));
                    }
                }
            }
        }
        if lat.height() >= 3 {
            let society = lattice_society(lat).expect("rank checked");
            if check_milner_shelah(&society) {
                if let Err(e) = match_dispatch(lat, Strategy::MilnerShelah) {
                    failures.push(format!("{name} via milner-shelah: {e}"));
                }
            }
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}
