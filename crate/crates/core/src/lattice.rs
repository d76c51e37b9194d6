//! The lattice of flats of a matroid, and finite lattices built from an
//! explicit family of subsets ordered by inclusion.
//!
//! Elements are indexed `0..N-1` in (rank, lexicographic flat) order, so every
//! construction is deterministic. Atoms are the covers of the bottom element,
//! hyperplanes the lower covers of the top.

use crate::matroid::{Matroid, MatroidError, DEFAULT_FLAT_CAP};
use crate::subset::Subset;
use std::collections::HashMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LatticeError {
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error("degenerate matroid of rank 0 has no atoms")]
    Degenerate,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant breached: {0}")]
    Internal(String),
}

/// Atom and hyperplane shadows of an element: the atoms below it and the
/// hyperplanes above it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Shadows {
    pub under: Vec<usize>,
    pub over: Vec<usize>,
}

/// A finite lattice whose elements are labelled by subsets and ordered by
/// inclusion.
#[derive(Debug, Clone)]
pub struct Lattice {
    flats: Vec<Subset>,
    ranks: Vec<usize>,
    covers_up: Vec<Vec<usize>>,
    covers_down: Vec<Vec<usize>>,
    atoms: Vec<usize>,
    hyperplanes: Vec<usize>,
    bottom: usize,
    top: usize,
    height: usize,
    index: HashMap<u64, usize>,
}

/// A lattice extracted from a parent (an interval or an atom-generated
/// sublattice) together with the index map back into the parent.
#[derive(Debug, Clone)]
pub struct SubLattice {
    pub lattice: Lattice,
    to_parent: Vec<usize>,
    from_parent: HashMap<usize, usize>,
}

impl SubLattice {
    pub fn to_parent(&self, sub: usize) -> usize {
        self.to_parent[sub]
    }

    pub fn from_parent(&self, parent: usize) -> Option<usize> {
        self.from_parent.get(&parent).copied()
    }

    pub fn parent_indices(&self) -> &[usize] {
        &self.to_parent
    }
}

impl Lattice {
    /// Builds the lattice of flats of a matroid with the default flat cap.
    pub fn from_matroid(m: &Matroid) -> Result<Lattice, LatticeError> {
        Lattice::from_matroid_capped(m, DEFAULT_FLAT_CAP)
    }

    /// Builds the lattice of flats of a matroid.
    ///
    /// Elements are the flats ordered by inclusion; meet is flat intersection
    /// and join the closure of the union. A rank-0 matroid is rejected.
    pub fn from_matroid_capped(m: &Matroid, cap: usize) -> Result<Lattice, LatticeError> {
        let flats = m.flats_capped(cap)?;
        let ranks: Vec<usize> = flats.iter().map(|&f| m.rank(f)).collect();
        let height = *ranks.last().expect("flat family is never empty");
        if height == 0 {
            return Err(LatticeError::Degenerate);
        }
        let n = flats.len();
        let index: HashMap<u64, usize> = flats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.bits(), i))
            .collect();
        // Flats come sorted by (rank, lex), so rank levels are contiguous and
        // covers only join adjacent levels.
        let mut level_start = vec![n; height + 2];
        for (i, &r) in ranks.iter().enumerate() {
            if level_start[r] == n {
                level_start[r] = i;
            }
        }
        level_start[height + 1] = n;
        for r in (0..=height).rev() {
            if level_start[r] == n {
                level_start[r] = level_start[r + 1];
            }
        }
        let mut covers_up: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut covers_down: Vec<Vec<usize>> = vec![Vec::new(); n];
        for r in 0..height {
            for x in level_start[r]..level_start[r + 1] {
                for y in level_start[r + 1]..level_start[r + 2] {
                    if flats[x].is_proper_subset_of(flats[y]) {
                        covers_up[x].push(y);
                        covers_down[y].push(x);
                    }
                }
            }
        }
        let atoms = covers_up[0].clone();
        let hyperplanes = covers_down[n - 1].clone();
        Ok(Lattice {
            flats,
            ranks,
            covers_up,
            covers_down,
            atoms,
            hyperplanes,
            bottom: 0,
            top: n - 1,
            height,
            index,
        })
    }

    /// Builds a lattice (or a candidate one) from an arbitrary family of
    /// subsets ordered by inclusion. Ranks are chain lengths from the minimal
    /// elements; nothing geometric is assumed, so defective inputs can be fed
    /// to [`crate::checks::verify_geometric`] and fail there.
    pub fn from_flat_family<I: IntoIterator<Item = Subset>>(
        family: I,
    ) -> Result<Lattice, LatticeError> {
        let mut flats: Vec<Subset> = family.into_iter().collect();
        flats.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        flats.dedup();
        if flats.is_empty() {
            return Err(LatticeError::Precondition(
                "cannot build a lattice from an empty family".into(),
            ));
        }
        let n = flats.len();
        // Lower covers = inclusion-maximal proper subsets; flats are in
        // ascending size order so candidates precede their supersets.
        let mut covers_down: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut ranks = vec![0usize; n];
        for y in 0..n {
            let mut down: Vec<usize> = Vec::new();
            for x in (0..y).rev() {
                if flats[x].is_proper_subset_of(flats[y])
                    && !down.iter().any(|&d| flats[x].is_proper_subset_of(flats[d]))
                {
                    down.push(x);
                }
            }
            down.sort_unstable();
            ranks[y] = down.iter().map(|&d| ranks[d] + 1).max().unwrap_or(0);
            covers_down[y] = down;
        }
        // Re-index deterministically by (rank, lex).
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| ranks[a].cmp(&ranks[b]).then(flats[a].cmp(&flats[b])));
        let mut position = vec![0usize; n];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        let new_flats: Vec<Subset> = order.iter().map(|&o| flats[o]).collect();
        let new_ranks: Vec<usize> = order.iter().map(|&o| ranks[o]).collect();
        let mut new_down: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut new_up: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (new_y, &old_y) in order.iter().enumerate() {
            for &old_x in &covers_down[old_y] {
                let new_x = position[old_x];
                new_down[new_y].push(new_x);
                new_up[new_x].push(new_y);
            }
        }
        for list in new_down.iter_mut().chain(new_up.iter_mut()) {
            list.sort_unstable();
        }
        let index: HashMap<u64, usize> = new_flats
            .iter()
            .enumerate()
            .map(|(i, f)| (f.bits(), i))
            .collect();
        // Nominal bounds; uniqueness is a verification concern, not a build
        // concern.
        let bottom = 0;
        let top = (0..n)
            .filter(|&i| new_up[i].is_empty())
            .max_by_key(|&i| (new_ranks[i], i))
            .expect("finite nonempty poset has a maximal element");
        let atoms = new_up[bottom].clone();
        let hyperplanes = new_down[top].clone();
        let height = new_ranks[top];
        Ok(Lattice {
            flats: new_flats,
            ranks: new_ranks,
            covers_up: new_up,
            covers_down: new_down,
            atoms,
            hyperplanes,
            bottom,
            top,
            height,
            index,
        })
    }

    pub fn len(&self) -> usize {
        self.flats.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Height of the lattice: the rank of the top element.
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn atoms(&self) -> &[usize] {
        &self.atoms
    }

    pub fn hyperplanes(&self) -> &[usize] {
        &self.hyperplanes
    }

    pub fn flat(&self, x: usize) -> Subset {
        self.flats[x]
    }

    pub fn rank_of(&self, x: usize) -> usize {
        self.ranks[x]
    }

    pub fn covers_up(&self, x: usize) -> &[usize] {
        &self.covers_up[x]
    }

    pub fn covers_down(&self, x: usize) -> &[usize] {
        &self.covers_down[x]
    }

    /// Element index of a flat, if present.
    pub fn element(&self, flat: Subset) -> Option<usize> {
        self.index.get(&flat.bits()).copied()
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.flats[x].is_subset_of(self.flats[y])
    }

    /// Least upper bound, if the family has one for this pair.
    pub fn try_join(&self, x: usize, y: usize) -> Option<usize> {
        let union = self.flats[x].union(self.flats[y]);
        if let Some(&i) = self.index.get(&union.bits()) {
            return Some(i);
        }
        let mut bound: Option<Subset> = None;
        for &f in &self.flats {
            if union.is_subset_of(f) {
                bound = Some(match bound {
                    None => f,
                    Some(b) => b.intersect(f),
                });
            }
        }
        let m = bound?;
        self.index
            .get(&m.bits())
            .copied()
            .filter(|&i| union.is_subset_of(self.flats[i]))
    }

    /// Greatest lower bound, if the family has one for this pair.
    pub fn try_meet(&self, x: usize, y: usize) -> Option<usize> {
        let inter = self.flats[x].intersect(self.flats[y]);
        if let Some(&i) = self.index.get(&inter.bits()) {
            return Some(i);
        }
        let mut bound: Option<Subset> = None;
        let mut any = false;
        for &f in &self.flats {
            if f.is_subset_of(inter) {
                any = true;
                bound = Some(match bound {
                    None => f,
                    Some(b) => b.union(f),
                });
            }
        }
        if !any {
            return None;
        }
        let m = bound?;
        self.index.get(&m.bits()).copied()
    }

    /// Join of two elements. Panics if the family is not a lattice.
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.try_join(x, y)
            .unwrap_or_else(|| panic!("no join of {} and {}", self.flats[x], self.flats[y]))
    }

    /// Meet of two elements. Panics if the family is not a lattice.
    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.try_meet(x, y)
            .unwrap_or_else(|| panic!("no meet of {} and {}", self.flats[x], self.flats[y]))
    }

    /// Join of an arbitrary element set; the empty join is the bottom.
    pub fn join_all<I: IntoIterator<Item = usize>>(&self, elems: I) -> usize {
        elems
            .into_iter()
            .fold(self.bottom, |acc, e| self.join(acc, e))
    }

    /// Atom and hyperplane shadows of `x`.
    pub fn shadows(&self, x: usize) -> Shadows {
        Shadows {
            under: self
                .atoms
                .iter()
                .copied()
                .filter(|&a| self.leq(a, x))
                .collect(),
            over: self
                .hyperplanes
                .iter()
                .copied()
                .filter(|&h| self.leq(x, h))
                .collect(),
        }
    }

    pub fn atoms_under(&self, x: usize) -> Vec<usize> {
        self.shadows(x).under
    }

    pub fn hyperplanes_over(&self, x: usize) -> Vec<usize> {
        self.shadows(x).over
    }

    /// Modular complement of `x` in the interval `[a, b]`: an element `y`
    /// with `x ∧ y = a`, `x ∨ y = b` and `r(x) + r(y) = r(a) + r(b)`.
    ///
    /// Walks a maximal chain from `x` to `b` (lowest-indexed cover first),
    /// picks for each step the lowest-indexed atom below the new link but not
    /// the old, and joins those atoms onto `a`. The three identities are
    /// checked before returning.
    pub fn modular_complement(&self, a: usize, b: usize, x: usize) -> Result<usize, LatticeError> {
        let n = self.len();
        if a >= n || b >= n || x >= n {
            return Err(LatticeError::Precondition(
                "element index out of range".into(),
            ));
        }
        if !self.leq(a, x) || !self.leq(x, b) {
            return Err(LatticeError::Precondition(format!(
                "need a <= x <= b, got a={}, x={}, b={}",
                self.flats[a], self.flats[x], self.flats[b]
            )));
        }
        let mut y = a;
        let mut prev = x;
        while prev != b {
            let next = self.covers_up[prev]
                .iter()
                .copied()
                .find(|&c| self.leq(c, b))
                .ok_or_else(|| {
                    LatticeError::Internal(format!(
                        "no cover of {} inside the interval below {}",
                        self.flats[prev], self.flats[b]
                    ))
                })?;
            let atom = self
                .atoms
                .iter()
                .copied()
                .find(|&p| self.leq(p, next) && !self.leq(p, prev))
                .ok_or_else(|| {
                    LatticeError::Internal(format!(
                        "no atom below {} avoids {}",
                        self.flats[next], self.flats[prev]
                    ))
                })?;
            y = self.join(y, atom);
            prev = next;
        }
        let ok = self.meet(x, y) == a
            && self.join(x, y) == b
            && self.ranks[x] + self.ranks[y] == self.ranks[a] + self.ranks[b];
        if !ok {
            return Err(LatticeError::Internal(format!(
                "modular complement identities fail for a={}, b={}, x={}, y={}",
                self.flats[a], self.flats[b], self.flats[x], self.flats[y]
            )));
        }
        Ok(y)
    }

    /// The sublattice generated by a set of atoms: all joins of subsets of
    /// `generators`, including the empty join (the bottom element).
    ///
    /// The result is materialized by a fixed point of pairwise joins and
    /// returned as a standalone lattice with its embedding. Construction
    /// checks the structural conclusions this operation is contracted to
    /// provide: the sub-atoms are exactly the generators, the height is the
    /// parent rank of their join, the embedding preserves order and covers,
    /// bottoms coincide, and when the generators span the top every
    /// sub-hyperplane is a parent hyperplane.
    pub fn atom_sublattice(&self, generators: &[usize]) -> Result<SubLattice, LatticeError> {
        for &g in generators {
            if !self.atoms.contains(&g) {
                return Err(LatticeError::Precondition(format!(
                    "generator {} is not an atom",
                    self.flats
                        .get(g)
                        .map_or("<bad index>".to_string(), |f| f.to_string())
                )));
            }
        }
        let mut members: Vec<usize> = vec![self.bottom];
        members.extend(generators.iter().copied());
        members.sort_unstable();
        members.dedup();
        let mut present: Vec<bool> = vec![false; self.len()];
        for &e in &members {
            present[e] = true;
        }
        let mut frontier = members.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &x in &frontier {
                for &y in &members {
                    let j = self.join(x, y);
                    if !present[j] {
                        present[j] = true;
                        next.push(j);
                    }
                }
            }
            members.extend(next.iter().copied());
            members.sort_unstable();
            frontier = next;
        }
        let sub = Lattice::from_flat_family(members.iter().map(|&e| self.flats[e]))?;
        let embedded = self.embed(sub)?;
        self.check_sublattice_contract(&embedded, generators)?;
        Ok(embedded)
    }

    /// The closed interval `[lo, hi]` as a standalone lattice plus embedding.
    /// Intervals of geometric lattices are again geometric.
    pub fn interval(&self, lo: usize, hi: usize) -> Result<SubLattice, LatticeError> {
        if !self.leq(lo, hi) {
            return Err(LatticeError::Precondition(format!(
                "interval needs lo <= hi, got {} and {}",
                self.flats[lo], self.flats[hi]
            )));
        }
        let members: Vec<Subset> = (0..self.len())
            .filter(|&z| self.leq(lo, z) && self.leq(z, hi))
            .map(|z| self.flats[z])
            .collect();
        let sub = Lattice::from_flat_family(members)?;
        self.embed(sub)
    }

    fn embed(&self, sub: Lattice) -> Result<SubLattice, LatticeError> {
        let mut to_parent = Vec::with_capacity(sub.len());
        let mut from_parent = HashMap::with_capacity(sub.len());
        for i in 0..sub.len() {
            let p = self.element(sub.flat(i)).ok_or_else(|| {
                LatticeError::Internal(format!("sub-element {} missing from parent", sub.flat(i)))
            })?;
            to_parent.push(p);
            from_parent.insert(p, i);
        }
        Ok(SubLattice {
            lattice: sub,
            to_parent,
            from_parent,
        })
    }

    fn check_sublattice_contract(
        &self,
        embedded: &SubLattice,
        generators: &[usize],
    ) -> Result<(), LatticeError> {
        let sub = &embedded.lattice;
        let fail = |msg: String| Err(LatticeError::Internal(format!("atom sublattice: {msg}")));
        if embedded.to_parent(sub.bottom()) != self.bottom {
            return fail("bottom does not coincide with the parent bottom".into());
        }
        let mut sub_atoms: Vec<usize> =
            sub.atoms().iter().map(|&a| embedded.to_parent(a)).collect();
        sub_atoms.sort_unstable();
        let mut gens: Vec<usize> = generators.to_vec();
        gens.sort_unstable();
        gens.dedup();
        if sub_atoms != gens {
            return fail(format!(
                "atoms {sub_atoms:?} differ from generators {gens:?}"
            ));
        }
        let span = self.join_all(generators.iter().copied());
        if sub.height() != self.ranks[span] {
            return fail(format!(
                "height {} differs from parent rank {} of the generator join",
                sub.height(),
                self.ranks[span]
            ));
        }
        for x in 0..sub.len() {
            for y in 0..sub.len() {
                if sub.leq(x, y) != self.leq(embedded.to_parent(x), embedded.to_parent(y)) {
                    return fail(format!(
                        "embedding is not an order embedding at {} and {}",
                        sub.flat(x),
                        sub.flat(y)
                    ));
                }
            }
            for &y in sub.covers_up(x) {
                let (px, py) = (embedded.to_parent(x), embedded.to_parent(y));
                if self.ranks[py] != self.ranks[px] + 1 {
                    return fail(format!(
                        "cover {} -> {} is not a parent cover",
                        sub.flat(x),
                        sub.flat(y)
                    ));
                }
            }
        }
        if embedded.to_parent(sub.top()) == self.top {
            for &h in sub.hyperplanes() {
                if !self.hyperplanes.contains(&embedded.to_parent(h)) {
                    return fail(format!(
                        "sub-hyperplane {} is not a parent hyperplane",
                        sub.flat(h)
                    ));
                }
            }
        }
        Ok(())
    }
}
