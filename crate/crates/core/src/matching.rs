//! Atom-to-hyperplane matchings of geometric lattices.
//!
//! Four strategies: `hall` (maximum espousal on the incidence society),
//! `milner-shelah` (degree-condition matcher), `bjorner` (the recursive
//! case construction with hall fallback), and `auto`. Every returned
//! matching is re-verified against the lattice order.
//!
//! The case constructions return `None` instead of failing hard: their
//! success arguments lean on cardinality facts that finite lattices need not
//! supply, so the dispatcher falls back to `hall` and records the decision.

use crate::lattice::{Lattice, LatticeError};
use crate::society::{lattice_society, max_espousal, Society};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatchError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("degree condition violated at edge ({man},{woman}): {codegree} suitors exceed the man's {degree} choices")]
    DegreeCondition {
        man: usize,
        woman: usize,
        degree: usize,
        codegree: usize,
    },
    #[error("degree condition violated: man {0} has no neighbors")]
    EmptyNeighborhood(usize),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

/// A matching: an injective map from atoms to hyperplanes with each atom
/// below its image.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Matching {
    pairs: BTreeMap<usize, usize>,
}

impl Matching {
    pub fn from_pairs(pairs: BTreeMap<usize, usize>) -> Matching {
        Matching { pairs }
    }

    pub fn pairs(&self) -> &BTreeMap<usize, usize> {
        &self.pairs
    }

    pub fn get(&self, atom: usize) -> Option<usize> {
        self.pairs.get(&atom).copied()
    }
}

/// Outcome of checking a matching against the lattice order.
#[derive(Debug, Clone, Serialize)]
pub struct MatchingVerdict {
    pub passed: bool,
    pub violation: Option<String>,
}

/// Checks totality on the atoms, injectivity, that values are hyperplanes,
/// and that each atom lies below its image. The first violation is reported.
pub fn verify_matching(lat: &Lattice, matching: &Matching) -> MatchingVerdict {
    let fail = |violation: String| MatchingVerdict {
        passed: false,
        violation: Some(violation),
    };
    for key in matching.pairs.keys() {
        if !lat.atoms().contains(key) {
            return fail(format!("domain element {} is not an atom", lat.flat(*key)));
        }
    }
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for &p in lat.atoms() {
        let Some(h) = matching.get(p) else {
            return fail(format!("no image for atom {}", lat.flat(p)));
        };
        if !lat.hyperplanes().contains(&h) {
            return fail(format!(
                "image {} of atom {} is not a hyperplane",
                lat.flat(h),
                lat.flat(p)
            ));
        }
        if !lat.leq(p, h) {
            return fail(format!(
                "atom {} is not below its image {}",
                lat.flat(p),
                lat.flat(h)
            ));
        }
        if !used.insert(h) {
            return fail(format!("hyperplane {} is used twice", lat.flat(h)));
        }
    }
    MatchingVerdict {
        passed: true,
        violation: None,
    }
}

/// The identity matching of a rank-2 lattice, where atoms and hyperplanes
/// coincide.
fn identity_matching(lat: &Lattice) -> Matching {
    Matching {
        pairs: lat.atoms().iter().map(|&a| (a, a)).collect(),
    }
}

/// Matching by maximum espousal on the atom/hyperplane society. Rank 2 takes
/// the identity. A non-total espousal on a geometric lattice is impossible,
/// so it surfaces as an internal error.
pub fn match_hall(lat: &Lattice) -> Result<Matching, MatchError> {
    if lat.height() < 2 {
        return Err(LatticeError::Precondition(format!(
            "matching needs rank >= 2, got {}",
            lat.height()
        ))
        .into());
    }
    if lat.height() == 2 {
        return Ok(identity_matching(lat));
    }
    let society = lattice_society(lat)?;
    let (espousal, unmatched) = max_espousal(&society);
    if !unmatched.is_empty() {
        return Err(MatchError::Internal(format!(
            "Hall violation in verified geometric lattice: {} atoms unmatched",
            unmatched.len()
        )));
    }
    Ok(Matching {
        pairs: espousal.pairs().clone(),
    })
}

/// First violation of the degree condition, scanning men then edges in
/// ascending order.
fn degree_condition_violation(society: &Society) -> Option<MatchError> {
    let mut codegree: BTreeMap<usize, usize> = BTreeMap::new();
    for &(_, w) in society.edges() {
        *codegree.entry(w).or_insert(0) += 1;
    }
    let mut degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &(m, _) in society.edges() {
        *degree.entry(m).or_insert(0) += 1;
    }
    for &m in society.men() {
        if !degree.contains_key(&m) {
            return Some(MatchError::EmptyNeighborhood(m));
        }
    }
    for &(m, w) in society.edges() {
        if codegree[&w] > degree[&m] {
            return Some(MatchError::DegreeCondition {
                man: m,
                woman: w,
                degree: degree[&m],
                codegree: codegree[&w],
            });
        }
    }
    None
}

/// True when every man has a neighbor and no edge pairs a man with a woman
/// of larger degree.
pub fn check_milner_shelah(society: &Society) -> bool {
    degree_condition_violation(society).is_none()
}

/// Total espousal under the degree condition. The condition is checked
/// first and reported with a witness when it fails; once it holds, a finite
/// society always espouses totally.
pub fn match_milner_shelah(society: &Society) -> Result<crate::society::Espousal, MatchError> {
    if let Some(violation) = degree_condition_violation(society) {
        return Err(violation);
    }
    let (espousal, unmatched) = max_espousal(society);
    if !unmatched.is_empty() {
        return Err(MatchError::Internal(
            "degree condition held but the espousal is not total".into(),
        ));
    }
    Ok(espousal)
}

/// Requested matching strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Hall,
    MilnerShelah,
    Bjorner,
    Auto,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Strategy::Hall => "hall",
            Strategy::MilnerShelah => "milner-shelah",
            Strategy::Bjorner => "bjorner",
            Strategy::Auto => "auto",
        };
        write!(f, "{name}")
    }
}

impl FromStr for Strategy {
    type Err = String;

    fn from_str(s: &str) -> Result<Strategy, String> {
        match s {
            "hall" => Ok(Strategy::Hall),
            "milner-shelah" => Ok(Strategy::MilnerShelah),
            "bjorner" => Ok(Strategy::Bjorner),
            "auto" => Ok(Strategy::Auto),
            other => Err(format!(
                "unknown strategy {other:?} (expected hall, milner-shelah, bjorner or auto)"
            )),
        }
    }
}

/// Every decision taken while producing a matching.
#[derive(Debug, Clone, Serialize)]
pub struct StrategyReport {
    pub strategy: Strategy,
    pub preconditions: Vec<String>,
    pub trace: Vec<String>,
    pub fallbacks: usize,
    pub verified: bool,
}

struct Recorder {
    trace: Vec<String>,
    fallbacks: usize,
}

impl Recorder {
    fn new() -> Recorder {
        Recorder {
            trace: Vec::new(),
            fallbacks: 0,
        }
    }

    fn note(&mut self, depth: usize, msg: impl AsRef<str>) {
        self.trace
            .push(format!("{}{}", "  ".repeat(depth), msg.as_ref()));
    }

    fn fallback(&mut self, depth: usize, msg: impl AsRef<str>) {
        self.fallbacks += 1;
        self.note(depth, msg);
    }
}

fn ensure_case_preconditions(lat: &Lattice, q: usize, lines: &[usize]) -> Result<(), LatticeError> {
    if lat.height() < 3 {
        return Err(LatticeError::Precondition(format!(
            "case construction needs rank >= 3, got {}",
            lat.height()
        )));
    }
    if !lat.atoms().contains(&q) {
        return Err(LatticeError::Precondition(format!(
            "{} is not an atom",
            lat.flat(q)
        )));
    }
    for &l in lines {
        if lat.rank_of(l) != 2 || !lat.leq(q, l) {
            return Err(LatticeError::Precondition(format!(
                "{} is not a rank-2 element above {}",
                lat.flat(l),
                lat.flat(q)
            )));
        }
    }
    Ok(())
}

/// First case construction: pivot on an atom `q` and a rank-2 element `l0`
/// above it whose sibling covers all hold exactly two atoms.
///
/// Lifts the atoms outside `l0` through `p v q` into a recursive matching of
/// the upper interval at `q`, then routes the leftover atoms of `l0` through
/// a modular complement below a hyperplane over `l0`. Returns `None` when
/// the hypothesis fails or a choice set empties.
pub fn match_bjorner_case1(
    lat: &Lattice,
    q: usize,
    l0: usize,
) -> Result<Option<Matching>, MatchError> {
    ensure_case_preconditions(lat, q, &[l0])?;
    let mut recorder = Recorder::new();
    case1_inner(lat, q, l0, lat.height(), 0, &mut recorder)
}

fn case1_inner(
    lat: &Lattice,
    q: usize,
    l0: usize,
    budget: usize,
    depth: usize,
    rec: &mut Recorder,
) -> Result<Option<Matching>, MatchError> {
    for &x in lat.covers_up(q) {
        if x != l0 && lat.atoms_under(x).len() != 2 {
            rec.note(
                depth,
                format!(
                    "case1 q={} l0={}: hypothesis fails, cover {} holds {} atoms",
                    lat.flat(q),
                    lat.flat(l0),
                    lat.flat(x),
                    lat.atoms_under(x).len()
                ),
            );
            return Ok(None);
        }
    }
    rec.note(
        depth,
        format!(
            "case1 q={} l0={}: hypothesis holds",
            lat.flat(q),
            lat.flat(l0)
        ),
    );
    let under_l0: Vec<usize> = lat.atoms_under(l0);
    let outside: Vec<usize> = lat
        .atoms()
        .iter()
        .copied()
        .filter(|&p| !lat.leq(p, l0))
        .collect();
    let mut lift: BTreeMap<usize, usize> = BTreeMap::new();
    let mut lifted: BTreeSet<usize> = BTreeSet::new();
    for &p in &outside {
        let s = lat.join(p, q);
        if !lifted.insert(s) {
            rec.note(depth, "case1: lift map not injective");
            return Ok(None);
        }
        lift.insert(p, s);
    }
    let up = lat.interval(q, lat.top())?;
    let t_sub = bjorner_recursive(&up.lattice, budget - 1, depth + 1, rec)?;
    let t = |parent: usize| -> Result<usize, MatchError> {
        let sub = up.from_parent(parent).ok_or_else(|| {
            MatchError::Internal(format!(
                "{} missing from the upper interval",
                lat.flat(parent)
            ))
        })?;
        let image = t_sub.get(sub).ok_or_else(|| {
            MatchError::Internal(format!("upper matching misses {}", lat.flat(parent)))
        })?;
        Ok(up.to_parent(image))
    };
    let mut pairs: BTreeMap<usize, usize> = BTreeMap::new();
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for (&p, &s) in &lift {
        let h = t(s)?;
        pairs.insert(p, h);
        used.insert(h);
    }
    let image_q = t(l0)?;
    pairs.insert(q, image_q);
    used.insert(image_q);
    let over_l0 = lat.hyperplanes_over(l0);
    let Some(&h0) = over_l0.first() else {
        return Err(MatchError::Internal(format!(
            "no hyperplane over {}",
            lat.flat(l0)
        )));
    };
    let z = lat.modular_complement(lat.bottom(), h0, l0)?;
    for &p in under_l0.iter().filter(|&&p| p != q) {
        let raised = lat.join(p, z);
        let choice = lat
            .covers_up(raised)
            .iter()
            .copied()
            .find(|&h| h != h0 && !used.contains(&h));
        match choice {
            Some(h) => {
                pairs.insert(p, h);
                used.insert(h);
            }
            None => {
                rec.note(
                    depth,
                    format!(
                        "case1 q={} l0={}: no free hyperplane over {}",
                        lat.flat(q),
                        lat.flat(l0),
                        lat.flat(raised)
                    ),
                );
                return Ok(None);
            }
        }
    }
    let matching = Matching { pairs };
    let verdict = verify_matching(lat, &matching);
    if verdict.passed {
        rec.note(
            depth,
            format!("case1 q={} l0={}: success", lat.flat(q), lat.flat(l0)),
        );
        Ok(Some(matching))
    } else {
        rec.note(
            depth,
            format!(
                "case1 q={} l0={}: verification failed ({})",
                lat.flat(q),
                lat.flat(l0),
                verdict.violation.unwrap_or_default()
            ),
        );
        Ok(None)
    }
}

/// Second case construction: pivot on an atom `q` with two rank-2 covers
/// `l0 != l1` where `l1` holds at least three atoms.
///
/// Picks a hyperplane `h0` over `l0` missing `l1`'s extra atoms, matches the
/// lower interval at `h0` recursively, splits the lower covers of `h0` by
/// how many hyperplanes sit over them, and routes the atoms outside `h0`
/// through an injection into the thickly-covered ones. Returns `None` when
/// that injection cannot exist or a cover choice empties.
pub fn match_bjorner_case2(
    lat: &Lattice,
    q: usize,
    l0: usize,
    l1: usize,
) -> Result<Option<Matching>, MatchError> {
    ensure_case_preconditions(lat, q, &[l0, l1])?;
    if l0 == l1 {
        return Err(LatticeError::Precondition("need two distinct rank-2 covers".into()).into());
    }
    if lat.atoms_under(l1).len() < 3 {
        return Err(LatticeError::Precondition(format!(
            "{} holds fewer than 3 atoms",
            lat.flat(l1)
        ))
        .into());
    }
    let mut recorder = Recorder::new();
    case2_inner(lat, q, l0, l1, lat.height(), 0, &mut recorder)
}

fn case2_inner(
    lat: &Lattice,
    q: usize,
    l0: usize,
    l1: usize,
    budget: usize,
    depth: usize,
    rec: &mut Recorder,
) -> Result<Option<Matching>, MatchError> {
    let mut spare = lat.atoms_under(l1).into_iter().filter(|&p| p != q);
    let (p1, p2) = match (spare.next(), spare.next()) {
        (Some(a), Some(b)) => (a, b),
        _ => {
            return Err(MatchError::Internal(format!(
                "{} lost its spare atoms",
                lat.flat(l1)
            )))
        }
    };
    let h0 = lat.modular_complement(l0, lat.top(), lat.join(l0, p1))?;
    if lat.leq(p1, h0) || lat.leq(p2, h0) {
        return Err(MatchError::Internal(format!(
            "complement {} fails to avoid the spare atoms of {}",
            lat.flat(h0),
            lat.flat(l1)
        )));
    }
    rec.note(
        depth,
        format!(
            "case2 q={} l0={} l1={}: pivot hyperplane {}",
            lat.flat(q),
            lat.flat(l0),
            lat.flat(l1),
            lat.flat(h0)
        ),
    );
    let lower_covers = lat.covers_down(h0);
    let thick: Vec<usize> = lower_covers
        .iter()
        .copied()
        .filter(|&c| lat.hyperplanes_over(c).len() != 2)
        .collect();
    let outside: Vec<usize> = lat
        .atoms()
        .iter()
        .copied()
        .filter(|&p| !lat.leq(p, h0))
        .collect();
    if outside.len() > thick.len() {
        rec.note(
            depth,
            format!(
                "case2 q={} l0={} l1={}: {} outside atoms exceed {} thick covers",
                lat.flat(q),
                lat.flat(l0),
                lat.flat(l1),
                outside.len(),
                thick.len()
            ),
        );
        return Ok(None);
    }
    let down = lat.interval(lat.bottom(), h0)?;
    let g_sub = bjorner_recursive(&down.lattice, budget - 1, depth + 1, rec)?;
    let mut pairs: BTreeMap<usize, usize> = BTreeMap::new();
    let mut routed: BTreeMap<usize, usize> = BTreeMap::new();
    for (&p, &c) in outside.iter().zip(thick.iter()) {
        let h = lat.join(p, c);
        if h == h0 || lat.rank_of(h) != lat.height() - 1 {
            return Err(MatchError::Internal(format!(
                "{} v {} is not a hyperplane distinct from the pivot",
                lat.flat(p),
                lat.flat(c)
            )));
        }
        pairs.insert(p, h);
        routed.insert(c, p);
    }
    for &p in &lat.atoms_under(h0) {
        let sub = down.from_parent(p).ok_or_else(|| {
            MatchError::Internal(format!("{} missing from the lower interval", lat.flat(p)))
        })?;
        let g_image = g_sub.get(sub).ok_or_else(|| {
            MatchError::Internal(format!("lower matching misses {}", lat.flat(p)))
        })?;
        let cover = down.to_parent(g_image);
        let avoid = routed.get(&cover).map(|outsider| pairs[outsider]);
        let choice = lat
            .covers_up(cover)
            .iter()
            .copied()
            .find(|&h| h != h0 && Some(h) != avoid);
        match choice {
            Some(h) => {
                pairs.insert(p, h);
            }
            None => {
                rec.note(
                    depth,
                    format!(
                        "case2 q={} l0={} l1={}: no admissible cover over {}",
                        lat.flat(q),
                        lat.flat(l0),
                        lat.flat(l1),
                        lat.flat(cover)
                    ),
                );
                return Ok(None);
            }
        }
    }
    let matching = Matching { pairs };
    let verdict = verify_matching(lat, &matching);
    if verdict.passed {
        rec.note(
            depth,
            format!(
                "case2 q={} l0={} l1={}: success",
                lat.flat(q),
                lat.flat(l0),
                lat.flat(l1)
            ),
        );
        Ok(Some(matching))
    } else {
        rec.note(
            depth,
            format!(
                "case2 q={} l0={} l1={}: verification failed ({})",
                lat.flat(q),
                lat.flat(l0),
                lat.flat(l1),
                verdict.violation.unwrap_or_default()
            ),
        );
        Ok(None)
    }
}

/// Classification report for the lower covers of a hyperplane, used by the
/// second case construction.
#[derive(Debug, Clone, Serialize)]
pub struct Case2ClassificationReport {
    pub hyperplane: crate::subset::Subset,
    pub doubly_covered: usize,
    pub failures: Vec<String>,
}

impl Case2ClassificationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks, for a hyperplane `h0`, that a lower cover sits under exactly two
/// hyperplanes precisely when it is `h0 ^ h` for some hyperplane `h` over
/// the join of the atoms outside `h0`; and that for each lower cover `x`,
/// the atom sets `under(k) - under(x)` over the covers `k` of `x` partition
/// the atoms outside `x`.
pub fn check_case2_classification(lat: &Lattice, h0: usize) -> Case2ClassificationReport {
    assert!(lat.height() >= 3, "classification needs rank >= 3");
    assert!(
        lat.hyperplanes().contains(&h0),
        "element {} is not a hyperplane",
        lat.flat(h0)
    );
    let outside: Vec<usize> = lat
        .atoms()
        .iter()
        .copied()
        .filter(|&p| !lat.leq(p, h0))
        .collect();
    assert!(!outside.is_empty(), "no atoms outside {}", lat.flat(h0));
    let mut report = Case2ClassificationReport {
        hyperplane: lat.flat(h0),
        doubly_covered: 0,
        failures: Vec::new(),
    };
    let y = lat.join_all(outside.iter().copied());
    let over_y = lat.hyperplanes_over(y);
    for &x in lat.covers_down(h0) {
        let doubly = lat.hyperplanes_over(x).len() == 2;
        if doubly {
            report.doubly_covered += 1;
        }
        let meets_over_y = over_y.iter().any(|&h| lat.meet(h0, h) == x);
        if doubly != meets_over_y {
            report.failures.push(format!(
                "lower cover {}: doubly covered = {}, but h0-meet characterization = {}",
                lat.flat(x),
                doubly,
                meets_over_y
            ));
        }
        for &a in lat.atoms() {
            if lat.leq(a, x) {
                continue;
            }
            let hits = lat.covers_up(x).iter().filter(|&&k| lat.leq(a, k)).count();
            if hits != 1 {
                report.failures.push(format!(
                    "partition fact fails at lower cover {}: atom {} lies in {} cover differences",
                    lat.flat(x),
                    lat.flat(a),
                    hits
                ));
            }
        }
    }
    report
}

fn bjorner_recursive(
    lat: &Lattice,
    budget: usize,
    depth: usize,
    rec: &mut Recorder,
) -> Result<Matching, MatchError> {
    if lat.height() < 2 {
        return Err(LatticeError::Precondition(format!(
            "matching needs rank >= 2, got {}",
            lat.height()
        ))
        .into());
    }
    if lat.height() == 2 {
        rec.note(depth, "rank-2 base: identity matching");
        return Ok(identity_matching(lat));
    }
    if budget == 0 {
        rec.fallback(depth, "depth budget exhausted: fallback to hall");
        return match_hall(lat);
    }
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for &q in lat.atoms() {
        let weight = lat.hyperplanes_over(q).len();
        for &l0 in lat.covers_up(q) {
            candidates.push((weight, q, l0));
        }
    }
    candidates.sort_unstable();
    for &(_, q, l0) in &candidates {
        if let Some(matching) = case1_inner(lat, q, l0, budget, depth, rec)? {
            return Ok(matching);
        }
        let sibling = lat
            .covers_up(q)
            .iter()
            .copied()
            .find(|&l1| l1 != l0 && lat.atoms_under(l1).len() >= 3);
        if let Some(l1) = sibling {
            if let Some(matching) = case2_inner(lat, q, l0, l1, budget, depth, rec)? {
                return Ok(matching);
            }
        } else {
            rec.note(
                depth,
                format!(
                    "case2 q={} l0={}: no rank-2 cover with 3 atoms",
                    lat.flat(q),
                    lat.flat(l0)
                ),
            );
        }
    }
    rec.fallback(depth, "all case candidates exhausted: fallback to hall");
    match_hall(lat)
}

/// Produces a matching by the requested strategy and records every decision.
/// The returned matching always passes verification.
pub fn match_dispatch(
    lat: &Lattice,
    strategy: Strategy,
) -> Result<(Matching, StrategyReport), MatchError> {
    let mut report = StrategyReport {
        strategy,
        preconditions: Vec::new(),
        trace: Vec::new(),
        fallbacks: 0,
        verified: false,
    };
    if lat.height() < 2 {
        return Err(LatticeError::Precondition(format!(
            "matching needs rank >= 2, got {}",
            lat.height()
        ))
        .into());
    }
    report
        .preconditions
        .push(format!("rank {} >= 2", lat.height()));
    let matching = if lat.height() == 2 {
        report.trace.push("rank-2 base: identity matching".into());
        identity_matching(lat)
    } else {
        match strategy {
            Strategy::Hall => {
                report
                    .trace
                    .push("maximum espousal on the incidence society".into());
                match_hall(lat)?
            }
            Strategy::MilnerShelah => {
                let society = lattice_society(lat)?;
                let espousal = match_milner_shelah(&society)?;
                report.preconditions.push("degree condition holds".into());
                report
                    .trace
                    .push("degree-condition espousal on the incidence society".into());
                Matching {
                    pairs: espousal.pairs().clone(),
                }
            }
            Strategy::Bjorner => {
                let mut rec = Recorder::new();
                let matching = bjorner_recursive(lat, lat.height(), 0, &mut rec)?;
                report.trace.append(&mut rec.trace);
                report.fallbacks = rec.fallbacks;
                matching
            }
            Strategy::Auto => {
                let society = lattice_society(lat)?;
                if check_milner_shelah(&society) {
                    report.preconditions.push("degree condition holds".into());
                    report
                        .trace
                        .push("auto: degree-condition espousal applies".into());
                    Matching {
                        pairs: match_milner_shelah(&society)?.pairs().clone(),
                    }
                } else {
                    report
                        .trace
                        .push("auto: degree condition fails, case construction".into());
                    let mut rec = Recorder::new();
                    let matching = bjorner_recursive(lat, lat.height(), 0, &mut rec)?;
                    report.trace.append(&mut rec.trace);
                    report.fallbacks = rec.fallbacks;
                    matching
                }
            }
        }
    };
    let verdict = verify_matching(lat, &matching);
    if !verdict.passed {
        return Err(MatchError::Internal(format!(
            "dispatched matching failed verification: {}",
            verdict.violation.unwrap_or_default()
        )));
    }
    report.verified = true;
    Ok((matching, report))
}
