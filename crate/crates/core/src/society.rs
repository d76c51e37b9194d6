//! Societies: finite bipartite structures with espousals, deficiency,
//! criticality, saturation, and obstruction extraction.
//!
//! The two sides are separate index namespaces, so a man and a woman may
//! carry the same integer id without clashing. All operations are
//! deterministic: ties break lowest-index-first everywhere.

use crate::lattice::{Lattice, LatticeError};
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SocietyError {
    #[error("invalid society: {0}")]
    Invalid(String),
    #[error("not a subsociety: {0}")]
    NotSubsociety(String),
    #[error("lattice of rank {0} has no atom/hyperplane society (rank >= 3 required)")]
    RankTooLow(usize),
}

/// A society: two disjoint finite index sets and an edge relation between
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Society {
    men: BTreeSet<usize>,
    women: BTreeSet<usize>,
    edges: BTreeSet<(usize, usize)>,
}

impl Society {
    pub fn new(
        men: BTreeSet<usize>,
        women: BTreeSet<usize>,
        edges: BTreeSet<(usize, usize)>,
    ) -> Result<Society, SocietyError> {
        for &(m, w) in &edges {
            if !men.contains(&m) || !women.contains(&w) {
                return Err(SocietyError::Invalid(format!(
                    "edge ({m},{w}) leaves the declared index sets"
                )));
            }
        }
        Ok(Society { men, women, edges })
    }

    /// Builds a society on `{0..m-1}` and `{0..w-1}` from an edge list, the
    /// shape used by instance files.
    pub fn from_counts(
        m: usize,
        w: usize,
        edges: &[(usize, usize)],
    ) -> Result<Society, SocietyError> {
        Society::new(
            (0..m).collect(),
            (0..w).collect(),
            edges.iter().copied().collect(),
        )
    }

    pub fn men(&self) -> &BTreeSet<usize> {
        &self.men
    }

    pub fn women(&self) -> &BTreeSet<usize> {
        &self.women
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn has_edge(&self, m: usize, w: usize) -> bool {
        self.edges.contains(&(m, w))
    }

    /// Neighbors of one man, ascending.
    pub fn neighbors(&self, m: usize) -> Vec<usize> {
        self.edges
            .range((m, 0)..=(m, usize::MAX))
            .map(|&(_, w)| w)
            .collect()
    }

    /// Joint neighborhood of a set of men.
    pub fn neighborhood<'a, I: IntoIterator<Item = &'a usize>>(&self, men: I) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &m in men {
            out.extend(self.neighbors(m));
        }
        out
    }

    /// The subsociety induced by a set of men and a set of women.
    pub fn subsociety(&self, men: &BTreeSet<usize>, women: &BTreeSet<usize>) -> Society {
        Society {
            men: men.intersection(&self.men).copied().collect(),
            women: women.intersection(&self.women).copied().collect(),
            edges: self
                .edges
                .iter()
                .copied()
                .filter(|(m, w)| men.contains(m) && women.contains(w))
                .collect(),
        }
    }

    /// Removes a set of men, keeping all women.
    pub fn remove_men(&self, removed: &BTreeSet<usize>) -> Society {
        let keep: BTreeSet<usize> = self.men.difference(removed).copied().collect();
        self.subsociety(&keep, &self.women.clone())
    }

    /// The quotient by a subsociety: both of its sides removed.
    pub fn quotient(&self, sub: &Society) -> Society {
        self.subsociety(
            &self.men.difference(&sub.men).copied().collect(),
            &self.women.difference(&sub.women).copied().collect(),
        )
    }

    /// True when `self` is the subsociety of `other` induced by its sides.
    pub fn is_subsociety_of(&self, other: &Society) -> bool {
        self.men.is_subset(&other.men)
            && self.women.is_subset(&other.women)
            && self.edges
                == other
                    .edges
                    .iter()
                    .copied()
                    .filter(|(m, w)| self.men.contains(m) && self.women.contains(w))
                    .collect()
    }
}

/// An espousal: an injective partial map from men to women along edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Espousal {
    pairs: BTreeMap<usize, usize>,
}

impl Espousal {
    pub fn new(society: &Society, pairs: BTreeMap<usize, usize>) -> Result<Espousal, SocietyError> {
        let mut used = BTreeSet::new();
        for (&m, &w) in &pairs {
            if !society.has_edge(m, w) {
                return Err(SocietyError::Invalid(format!(
                    "espousal pair ({m},{w}) is not an edge"
                )));
            }
            if !used.insert(w) {
                return Err(SocietyError::Invalid(format!("espousal reuses woman {w}")));
            }
        }
        Ok(Espousal { pairs })
    }

    pub fn pairs(&self) -> &BTreeMap<usize, usize> {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Total on the society's men.
    pub fn is_total(&self, society: &Society) -> bool {
        society.men.iter().all(|m| self.pairs.contains_key(m))
    }

    /// Surjective onto the society's women.
    pub fn is_onto(&self, society: &Society) -> bool {
        let hit: BTreeSet<usize> = self.pairs.values().copied().collect();
        hit == society.women
    }
}

/// Maximum-cardinality espousal by augmenting paths, plus the unmatched men.
///
/// Men are processed in ascending order and each search tries women in
/// ascending order, so the result is deterministic.
pub fn max_espousal(society: &Society) -> (Espousal, BTreeSet<usize>) {
    let mut woman_match: BTreeMap<usize, usize> = BTreeMap::new();
    for &m in &society.men {
        let mut visited: BTreeSet<usize> = BTreeSet::new();
        augment(society, m, &mut woman_match, &mut visited);
    }
    let pairs: BTreeMap<usize, usize> = woman_match.iter().map(|(&w, &m)| (m, w)).collect();
    let unmatched: BTreeSet<usize> = society
        .men
        .iter()
        .copied()
        .filter(|m| !pairs.contains_key(m))
        .collect();
    (Espousal { pairs }, unmatched)
}

fn augment(
    society: &Society,
    m: usize,
    woman_match: &mut BTreeMap<usize, usize>,
    visited: &mut BTreeSet<usize>,
) -> bool {
    for w in society.neighbors(m) {
        if !visited.insert(w) {
            continue;
        }
        let free = match woman_match.get(&w) {
            None => true,
            Some(&m2) => augment(society, m2, woman_match, visited),
        };
        if free {
            woman_match.insert(w, m);
            return true;
        }
    }
    false
}

/// Minimum number of men whose removal leaves an espousable society.
pub fn deficiency(society: &Society) -> usize {
    max_espousal(society).1.len()
}

/// A society is critical when it has a total espousal and every espousal is
/// surjective, i.e. the two sides have equal size.
pub fn is_critical(society: &Society) -> bool {
    society.men.len() == society.women.len() && deficiency(society) == 0
}

/// Saturation of a subsociety: every neighbor (in the ambient society) of
/// one of its men already belongs to it.
pub fn is_saturated(sub: &Society, ambient: &Society) -> Result<bool, SocietyError> {
    if !sub.is_subsociety_of(ambient) {
        return Err(SocietyError::NotSubsociety(
            "saturation is only defined for induced subsocieties".into(),
        ));
    }
    Ok(ambient.neighborhood(sub.men.iter()).is_subset(&sub.women))
}

/// A finite obstruction: a saturated subsociety that turns critical after
/// deleting `kappa` of its men.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionWitness {
    pub pi: Society,
    pub deleted: BTreeSet<usize>,
    pub kappa: usize,
    pub espousal: Espousal,
}

/// Extracts an obstruction when the society has no total espousal.
///
/// The defect-maximizing set of men is read off the maximum matching: the
/// men reachable from the unmatched ones by alternating paths. The induced
/// subsociety on that set and its joint neighborhood is saturated, its
/// deficiency is the global deficiency, and deleting its unmatched men under
/// a fresh maximum espousal leaves a critical society.
pub fn extract_obstruction(society: &Society) -> Option<ObstructionWitness> {
    let (espousal, unmatched) = max_espousal(society);
    if unmatched.is_empty() {
        return None;
    }
    // Alternating reachability: man -> any neighbor, woman -> her partner.
    let woman_match: BTreeMap<usize, usize> =
        espousal.pairs.iter().map(|(&m, &w)| (w, m)).collect();
    let mut reach_men: BTreeSet<usize> = unmatched.clone();
    let mut reach_women: BTreeSet<usize> = BTreeSet::new();
    let mut frontier: Vec<usize> = reach_men.iter().copied().collect();
    while let Some(m) = frontier.pop() {
        for w in society.neighbors(m) {
            if reach_women.insert(w) {
                if let Some(&m2) = woman_match.get(&w) {
                    if reach_men.insert(m2) {
                        frontier.push(m2);
                    }
                }
            }
        }
    }
    let pi = society.subsociety(&reach_men, &reach_women);
    let kappa = pi.men.len() - pi.women.len();
    let (pi_espousal, pi_unmatched) = max_espousal(&pi);
    debug_assert_eq!(pi_unmatched.len(), kappa);
    let kept: BTreeSet<usize> = pi.men.difference(&pi_unmatched).copied().collect();
    let restricted = Espousal {
        pairs: pi_espousal
            .pairs
            .iter()
            .filter(|(m, _)| kept.contains(m))
            .map(|(&m, &w)| (m, w))
            .collect(),
    };
    Some(ObstructionWitness {
        pi,
        deleted: pi_unmatched,
        kappa,
        espousal: restricted,
    })
}

/// Outcome of independently re-checking an obstruction witness.
#[derive(Debug, Clone, Serialize)]
pub struct ObstructionCheck {
    pub clauses: Vec<(String, bool)>,
}

impl ObstructionCheck {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|(_, ok)| *ok)
    }

    pub fn failed_clauses(&self) -> Vec<&str> {
        self.clauses
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.as_str())
            .collect()
    }
}

/// Recomputes every clause an obstruction witness asserts: structural
/// validity, saturation in the ambient society, criticality after deletion,
/// and that the recomputed deficiency of the subsociety equals `kappa`.
pub fn verify_obstruction(witness: &ObstructionWitness, ambient: &Society) -> ObstructionCheck {
    let mut clauses = Vec::new();

    let structural = witness.kappa >= 1
        && witness.deleted.len() == witness.kappa
        && witness.deleted.is_subset(&witness.pi.men)
        && witness.pi.is_subsociety_of(ambient)
        && Espousal::new(&witness.pi, witness.espousal.pairs.clone()).is_ok()
        && witness
            .espousal
            .pairs
            .keys()
            .all(|m| witness.pi.men.contains(m) && !witness.deleted.contains(m));
    clauses.push(("structural".to_string(), structural));

    let saturated = is_saturated(&witness.pi, ambient).unwrap_or(false);
    clauses.push(("saturated".to_string(), saturated));

    let reduced = witness.pi.remove_men(&witness.deleted);
    let critical = is_critical(&reduced)
        && witness.espousal.is_total(&reduced)
        && witness.espousal.is_onto(&reduced);
    clauses.push(("critical_after_deletion".to_string(), critical));

    let delta = deficiency(&witness.pi);
    clauses.push((
        "deficiency_equals_kappa".to_string(),
        delta == witness.kappa,
    ));

    ObstructionCheck { clauses }
}

/// The atom/hyperplane society of a lattice of rank at least 3: men are the
/// atoms, women the hyperplanes, and edges the incidences.
pub fn lattice_society(lat: &Lattice) -> Result<Society, LatticeError> {
    if lat.height() < 3 {
        return Err(LatticeError::Precondition(format!(
            "lattice society needs rank >= 3, got {}",
            lat.height()
        )));
    }
    let men: BTreeSet<usize> = lat.atoms().iter().copied().collect();
    let women: BTreeSet<usize> = lat.hyperplanes().iter().copied().collect();
    let mut edges = BTreeSet::new();
    for &p in lat.atoms() {
        for &h in lat.hyperplanes() {
            if lat.leq(p, h) {
                edges.insert((p, h));
            }
        }
    }
    Ok(Society { men, women, edges })
}
