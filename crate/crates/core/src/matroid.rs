//! Matroid descriptions with rank and closure oracles.
//!
//! Four kinds are supported: uniform, graphic (cycle matroid of a multigraph),
//! linear over a prime field GF(p), and an explicit family of flats. All four
//! expose the same oracle surface: `rank`, `closure`, and flat enumeration.

use crate::society::Society;
use crate::subset::{Subset, MAX_GROUND};
use serde::Deserialize;
use std::collections::{HashMap, HashSet, VecDeque};
use thiserror::Error;

/// Default ceiling on the number of flats enumerated before giving up.
pub const DEFAULT_FLAT_CAP: usize = 100_000;

#[derive(Debug, Error)]
pub enum MatroidError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
    #[error("flat cap {cap} exceeded; {found} flats found before aborting")]
    FlatCapExceeded { cap: usize, found: usize },
}

#[derive(Debug, Clone)]
pub enum MatroidKind {
    /// Rank function `min(|S|, k)`.
    Uniform { k: usize },
    /// Cycle matroid: ground elements are edges of a multigraph.
    Graphic {
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    /// Column matroid over GF(p): ground element `i` is `columns[i]`.
    Linear {
        modulus: u64,
        columns: Vec<Vec<u64>>,
    },
    /// Explicit flat family, validated at construction.
    ExplicitFlats {
        flats: Vec<Subset>,
        flat_rank: HashMap<u64, usize>,
    },
}

/// A finite matroid on ground set `{0, .., n-1}` with rank/closure oracles.
#[derive(Debug, Clone)]
pub struct Matroid {
    n: usize,
    kind: MatroidKind,
}

/// One parsed instance file: either a matroid or a society.
#[derive(Debug, Clone)]
pub enum ParsedInstance {
    Matroid(Matroid),
    Society(Society),
}

#[derive(Deserialize)]
#[serde(tag = "kind", deny_unknown_fields)]
enum RawInstance {
    #[serde(rename = "uniform")]
    Uniform { n: usize, k: usize },
    #[serde(rename = "graphic")]
    Graphic {
        n: usize,
        vertices: usize,
        edges: Vec<(usize, usize)>,
    },
    #[serde(rename = "linear")]
    Linear {
        n: usize,
        p: u64,
        columns: Vec<Vec<u64>>,
    },
    #[serde(rename = "flats")]
    Flats { n: usize, flats: Vec<Vec<usize>> },
    #[serde(rename = "society")]
    Society {
        #[serde(rename = "M")]
        m: usize,
        #[serde(rename = "W")]
        w: usize,
        edges: Vec<(usize, usize)>,
    },
}

/// Parses an instance file that may hold a matroid or a society.
pub fn parse_instance(text: &str) -> Result<ParsedInstance, MatroidError> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| MatroidError::Parse(e.to_string()))?;
    match raw {
        RawInstance::Uniform { n, k } => Ok(ParsedInstance::Matroid(Matroid::uniform(k, n)?)),
        RawInstance::Graphic { n, vertices, edges } => {
            if edges.len() != n {
                return Err(MatroidError::Validation(format!(
                    "graphic instance declares n={n} but lists {} edges",
                    edges.len()
                )));
            }
            Ok(ParsedInstance::Matroid(Matroid::graphic(vertices, edges)?))
        }
        RawInstance::Linear { n, p, columns } => {
            if columns.len() != n {
                return Err(MatroidError::Validation(format!(
                    "linear instance declares n={n} but lists {} columns",
                    columns.len()
                )));
            }
            Ok(ParsedInstance::Matroid(Matroid::linear(p, columns)?))
        }
        RawInstance::Flats { n, flats } => {
            let mut family = Vec::with_capacity(flats.len());
            for f in &flats {
                for &i in f {
                    if i >= n {
                        return Err(MatroidError::Validation(format!(
                            "flat {f:?} mentions element {i} outside ground set of size {n}"
                        )));
                    }
                }
                family.push(Subset::from_indices(f.iter().copied()));
            }
            Ok(ParsedInstance::Matroid(Matroid::explicit_flats(n, family)?))
        }
        RawInstance::Society { m, w, edges } => Ok(ParsedInstance::Society(
            Society::from_counts(m, w, &edges)
                .map_err(|e| MatroidError::Validation(e.to_string()))?,
        )),
    }
}

/// Parses an instance file that must hold a matroid.
pub fn parse_matroid(text: &str) -> Result<Matroid, MatroidError> {
    match parse_instance(text)? {
        ParsedInstance::Matroid(m) => Ok(m),
        ParsedInstance::Society(_) => Err(MatroidError::Validation(
            "expected a matroid instance, found kind \"society\"".into(),
        )),
    }
}

fn check_ground_size(n: usize) -> Result<(), MatroidError> {
    if n > MAX_GROUND {
        return Err(MatroidError::Validation(format!(
            "ground set size {n} exceeds the supported maximum {MAX_GROUND}"
        )));
    }
    Ok(())
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Matroid {
    pub fn uniform(k: usize, n: usize) -> Result<Matroid, MatroidError> {
        check_ground_size(n)?;
        if k > n {
            return Err(MatroidError::Validation(format!(
                "uniform matroid needs k <= n, got k={k}, n={n}"
            )));
        }
        Ok(Matroid {
            n,
            kind: MatroidKind::Uniform { k },
        })
    }

    pub fn graphic(vertices: usize, edges: Vec<(usize, usize)>) -> Result<Matroid, MatroidError> {
        check_ground_size(edges.len())?;
        if vertices == 0 && !edges.is_empty() {
            return Err(MatroidError::Validation(
                "graphic matroid with edges needs at least one vertex".into(),
            ));
        }
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u >= vertices || v >= vertices {
                return Err(MatroidError::Validation(format!(
                    "edge {i} = ({u},{v}) has an endpoint outside 0..{vertices}"
                )));
            }
        }
        Ok(Matroid {
            n: edges.len(),
            kind: MatroidKind::Graphic { vertices, edges },
        })
    }

    pub fn linear(modulus: u64, columns: Vec<Vec<u64>>) -> Result<Matroid, MatroidError> {
        check_ground_size(columns.len())?;
        if !is_prime(modulus) {
            return Err(MatroidError::Validation(format!(
                "linear matroid needs a prime modulus, got {modulus}"
            )));
        }
        // Products of residues must fit in u64.
        if modulus > u32::MAX as u64 {
            return Err(MatroidError::Validation(format!(
                "modulus {modulus} exceeds the supported maximum {}",
                u32::MAX
            )));
        }
        let dim = columns.first().map_or(0, Vec::len);
        for (i, col) in columns.iter().enumerate() {
            if col.len() != dim {
                return Err(MatroidError::Validation(format!(
                    "column {i} has {} entries, expected {dim}",
                    col.len()
                )));
            }
            for &x in col {
                if x >= modulus {
                    return Err(MatroidError::Validation(format!(
                        "column {i} holds {x}, not a residue mod {modulus}"
                    )));
                }
            }
        }
        if !columns.is_empty() && dim == 0 {
            return Err(MatroidError::Validation(
                "linear matroid columns must have at least one row".into(),
            ));
        }
        Ok(Matroid {
            n: columns.len(),
            kind: MatroidKind::Linear { modulus, columns },
        })
    }

    /// Builds a matroid from an explicit flat family, validating the flat
    /// axioms: ground set present, closure under pairwise intersection, and
    /// the cover partition property. Ranks are then read off chain lengths,
    /// checked to be well defined.
    pub fn explicit_flats(n: usize, mut flats: Vec<Subset>) -> Result<Matroid, MatroidError> {
        check_ground_size(n)?;
        let ground = Subset::full(n);
        flats.sort();
        flats.dedup();
        if !flats.contains(&ground) {
            return Err(MatroidError::Validation(
                "flat family violates the ground-set axiom: the full ground set is missing".into(),
            ));
        }
        let present: HashSet<u64> = flats.iter().map(|f| f.bits()).collect();
        for (i, &a) in flats.iter().enumerate() {
            for &b in &flats[i + 1..] {
                let meet = a.intersect(b);
                if !present.contains(&meet.bits()) {
                    return Err(MatroidError::Validation(format!(
                        "flat family violates the intersection axiom: {a} \u{2229} {b} = {meet} is not a flat"
                    )));
                }
            }
        }
        // Covers of F = inclusion-minimal flats properly containing F.
        let mut covers_map: HashMap<u64, Vec<Subset>> = HashMap::new();
        for &f in &flats {
            let mut sup: Vec<Subset> = flats
                .iter()
                .copied()
                .filter(|&g| f.is_proper_subset_of(g))
                .collect();
            sup.sort_by_key(|s| s.len());
            let mut covers: Vec<Subset> = Vec::new();
            for g in sup {
                if !covers.iter().any(|&c| c.is_proper_subset_of(g)) {
                    covers.push(g);
                }
            }
            covers_map.insert(f.bits(), covers);
        }
        for &f in &flats {
            if f == ground {
                continue;
            }
            let covers = &covers_map[&f.bits()];
            for e in ground.minus(f).iter() {
                let hits = covers.iter().filter(|c| c.contains(e)).count();
                if hits != 1 {
                    return Err(MatroidError::Validation(format!(
                        "flat family violates the cover partition axiom: element {e} lies in {hits} covers of {f}"
                    )));
                }
            }
        }
        // Chain-length validation: longest and shortest chains from the
        // bottom flat must agree, giving a well-defined rank per flat.
        let bottom = flats
            .iter()
            .copied()
            .fold(ground, |acc, f| acc.intersect(f));
        let mut order: Vec<Subset> = flats.clone();
        order.sort_by_key(|f| f.len());
        let mut longest: HashMap<u64, usize> = HashMap::new();
        let mut shortest: HashMap<u64, usize> = HashMap::new();
        longest.insert(bottom.bits(), 0);
        shortest.insert(bottom.bits(), 0);
        for &f in &order {
            if f == bottom {
                continue;
            }
            let mut lo = usize::MAX;
            let mut hi = 0usize;
            for &g in &order {
                if g.is_proper_subset_of(f) && covers_map[&g.bits()].contains(&f) {
                    lo = lo.min(shortest[&g.bits()] + 1);
                    hi = hi.max(longest[&g.bits()] + 1);
                }
            }
            if lo != hi {
                return Err(MatroidError::Validation(format!(
                    "flat family fails chain-length validation at {f}: chains of length {lo} and {hi}"
                )));
            }
            longest.insert(f.bits(), hi);
            shortest.insert(f.bits(), lo);
        }
        let flat_rank: HashMap<u64, usize> = longest;
        Ok(Matroid {
            n,
            kind: MatroidKind::ExplicitFlats { flats, flat_rank },
        })
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn ground(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn kind(&self) -> &MatroidKind {
        &self.kind
    }

    /// Matroid rank of a subset of the ground set.
    pub fn rank(&self, s: Subset) -> usize {
        debug_assert!(s.is_subset_of(self.ground()));
        match &self.kind {
            MatroidKind::Uniform { k } => s.len().min(*k),
            MatroidKind::Graphic { vertices, edges } => {
                let mut uf = UnionFind::new(*vertices);
                let mut rank = 0;
                for i in s.iter() {
                    let (u, v) = edges[i];
                    if uf.union(u, v) {
                        rank += 1;
                    }
                }
                rank
            }
            MatroidKind::Linear { modulus, columns } => {
                gf_rank(*modulus, s.iter().map(|i| columns[i].as_slice()))
            }
            MatroidKind::ExplicitFlats { flat_rank, .. } => flat_rank[&self.closure(s).bits()],
        }
    }

    /// Closure oracle: all ground elements whose addition leaves the rank
    /// unchanged.
    pub fn closure(&self, s: Subset) -> Subset {
        debug_assert!(s.is_subset_of(self.ground()));
        match &self.kind {
            MatroidKind::ExplicitFlats { flats, .. } => flats
                .iter()
                .copied()
                .filter(|f| s.is_subset_of(*f))
                .fold(self.ground(), |acc, f| acc.intersect(f)),
            _ => {
                let r = self.rank(s);
                let mut c = s;
                for e in self.ground().minus(s).iter() {
                    if self.rank(s.with(e)) == r {
                        c = c.with(e);
                    }
                }
                c
            }
        }
    }

    /// Enumerates every flat, sorted by (rank, lexicographic set order),
    /// using the default flat cap.
    pub fn flats(&self) -> Result<Vec<Subset>, MatroidError> {
        self.flats_capped(DEFAULT_FLAT_CAP)
    }

    /// Enumerates every flat with an explicit cap on the flat count.
    ///
    /// Small ground sets take the closure of every subset (with a memoized
    /// rank table); larger ones grow flats breadth-first through single-element
    /// extensions.
    pub fn flats_capped(&self, cap: usize) -> Result<Vec<Subset>, MatroidError> {
        let mut found: HashSet<u64> = HashSet::new();
        if let MatroidKind::ExplicitFlats { flats, .. } = &self.kind {
            found.extend(flats.iter().map(|f| f.bits()));
            if found.len() > cap {
                return Err(MatroidError::FlatCapExceeded {
                    cap,
                    found: found.len(),
                });
            }
        } else if self.n <= 20 {
            let mut rank_memo: Vec<u8> = vec![u8::MAX; 1usize << self.n];
            let mut rank_of = |m: &Matroid, bits: u64| -> usize {
                let slot = &mut rank_memo[bits as usize];
                if *slot == u8::MAX {
                    *slot = m.rank(Subset::from_bits(bits)) as u8;
                }
                *slot as usize
            };
            for bits in 0..1u64 << self.n {
                let r = rank_of(self, bits);
                let mut c = bits;
                for e in 0..self.n {
                    if c >> e & 1 == 0 && rank_of(self, bits | 1 << e) == r {
                        c |= 1 << e;
                    }
                }
                if found.insert(c) && found.len() > cap {
                    return Err(MatroidError::FlatCapExceeded {
                        cap,
                        found: found.len(),
                    });
                }
            }
        } else {
            let bottom = self.closure(Subset::EMPTY);
            let mut queue = VecDeque::from([bottom]);
            found.insert(bottom.bits());
            while let Some(f) = queue.pop_front() {
                for e in self.ground().minus(f).iter() {
                    let c = self.closure(f.with(e));
                    if found.insert(c.bits()) {
                        if found.len() > cap {
                            return Err(MatroidError::FlatCapExceeded {
                                cap,
                                found: found.len(),
                            });
                        }
                        queue.push_back(c);
                    }
                }
            }
        }
        let mut flats: Vec<Subset> = found.into_iter().map(Subset::from_bits).collect();
        flats.sort_by(|a, b| self.rank(*a).cmp(&self.rank(*b)).then(a.cmp(b)));
        Ok(flats)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let root = self.find(self.parent[x]);
            self.parent[x] = root;
        }
        self.parent[x]
    }

    /// Returns true when the edge joined two components.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            false
        } else {
            self.parent[ra] = rb;
            true
        }
    }
}

/// Rank of a set of column vectors over GF(p) by Gaussian elimination.
fn gf_rank<'a, I: Iterator<Item = &'a [u64]>>(p: u64, columns: I) -> usize {
    let mut rows: Vec<Vec<u64>> = columns.map(<[u64]>::to_vec).collect();
    if rows.is_empty() {
        return 0;
    }
    let dim = rows[0].len();
    let mut rank = 0;
    for col in 0..dim {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_multiple_of(p)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = mod_inverse(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            let factor = row[col];
            if r != rank && factor != 0 {
                for (x, &pv) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - factor) * pv) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat: a^(p-2) mod p for prime p.
    let mut base = a % p;
    let mut exp = p - 2;
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Matroid {
        // Vertices 0..4, edges in lexicographic order:
        // 0=(0,1) 1=(0,2) 2=(0,3) 3=(1,2) 4=(1,3) 5=(2,3)
        Matroid::graphic(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn fano() -> Matroid {
        let cols = (1u64..8)
            .map(|v| vec![v >> 2 & 1, v >> 1 & 1, v & 1])
            .collect();
        Matroid::linear(2, cols).unwrap()
    }

    #[test]
    fn parse_uniform() {
        let m = parse_matroid(r#"{"kind":"uniform","n":4,"k":3}"#).unwrap();
        assert_eq!(m.ground_size(), 4);
        assert!(matches!(m.kind(), MatroidKind::Uniform { k: 3 }));
    }

    #[test]
    fn parse_graphic_k4() {
        let m = parse_matroid(
            r#"{"kind":"graphic","n":6,"vertices":4,
                "edges":[[0,1],[0,2],[0,3],[1,2],[1,3],[2,3]]}"#,
        )
        .unwrap();
        assert_eq!(m.ground_size(), 6);
        assert_eq!(m.rank(m.ground()), 3);
    }

    #[test]
    fn parse_rejects_flats_without_ground() {
        let err = parse_matroid(r#"{"kind":"flats","n":2,"flats":[[],[0],[1]]}"#).unwrap_err();
        assert!(matches!(err, MatroidError::Validation(ref msg) if msg.contains("ground-set")));
    }

    #[test]
    fn parse_reports_bad_json() {
        let err = parse_matroid("{not json").unwrap_err();
        assert!(matches!(err, MatroidError::Parse(_)));
    }

    #[test]
    fn uniform_rank_below_k_is_cardinality() {
        let m = Matroid::uniform(3, 4).unwrap();
        assert_eq!(m.rank(Subset::from_indices([0, 1])), 2);
        assert_eq!(m.rank(m.ground()), 3);
        assert_eq!(m.rank(Subset::EMPTY), 0);
    }

    #[test]
    fn graphic_rank_is_spanning_forest_size() {
        let m = k4();
        assert_eq!(m.rank(m.ground()), 3);
        // Two disjoint edges (0,1) and (2,3).
        assert_eq!(m.rank(Subset::from_indices([0, 5])), 2);
        // A triangle has rank 2.
        assert_eq!(m.rank(Subset::from_indices([0, 1, 3])), 2);
    }

    #[test]
    fn linear_gf2_rank_matches_span_enumeration() {
        // Columns (1,0,0), (0,1,0), (1,1,0): the third is the sum of the
        // first two, so the rank is 2. Oracle: count the distinct vectors in
        // the XOR span; the rank is its log2.
        let cols = vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0]];
        let m = Matroid::linear(2, cols.clone()).unwrap();
        let mut span: HashSet<Vec<u64>> = HashSet::new();
        for mask in 0u32..8 {
            let mut v = vec![0u64; 3];
            for (i, col) in cols.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (a, b) in v.iter_mut().zip(col) {
                        *a ^= b;
                    }
                }
            }
            span.insert(v);
        }
        assert_eq!(span.len(), 4);
        assert_eq!(m.rank(m.ground()), 2);
    }

    #[test]
    fn closure_examples() {
        let u34 = Matroid::uniform(3, 4).unwrap();
        assert_eq!(u34.closure(Subset::singleton(0)), Subset::singleton(0));

        let m = k4();
        // Edges (0,1) and (2,3): no further edge joins the two components.
        let s = Subset::from_indices([0, 5]);
        assert_eq!(m.closure(s), s);

        // Fano: the closure of two points is the 3-point line through them.
        // Points are indexed by their GF(2)^3 vectors 1..=7; the line through
        // vectors 1 and 2 also holds 3 = 1 XOR 2.
        let f = fano();
        assert_eq!(
            f.closure(Subset::from_indices([0, 1])),
            Subset::from_indices([0, 1, 2])
        );
    }

    #[test]
    fn flat_counts() {
        assert_eq!(Matroid::uniform(3, 4).unwrap().flats().unwrap().len(), 12);
        assert_eq!(Matroid::uniform(2, 3).unwrap().flats().unwrap().len(), 5);
        assert_eq!(k4().flats().unwrap().len(), 15);
        assert_eq!(fano().flats().unwrap().len(), 16);
    }

    #[test]
    fn flats_sorted_and_intersection_closed() {
        for m in [k4(), fano(), Matroid::uniform(3, 5).unwrap()] {
            let flats = m.flats().unwrap();
            let set: HashSet<u64> = flats.iter().map(|f| f.bits()).collect();
            for w in flats.windows(2) {
                let (ra, rb) = (m.rank(w[0]), m.rank(w[1]));
                assert!(ra < rb || (ra == rb && w[0] < w[1]));
            }
            for &a in &flats {
                for &b in &flats {
                    assert!(set.contains(&a.intersect(b).bits()));
                }
            }
        }
    }

    #[test]
    fn breadth_first_path_agrees_with_formula() {
        // n = 22 exceeds the subset-enumeration threshold.
        let m = Matroid::uniform(2, 22).unwrap();
        let flats = m.flats().unwrap();
        assert_eq!(flats.len(), 1 + 22 + 1);
    }

    #[test]
    fn flat_cap_reports_partial_count() {
        let m = Matroid::uniform(3, 6).unwrap();
        let err = m.flats_capped(5).unwrap_err();
        match err {
            MatroidError::FlatCapExceeded { cap, found } => {
                assert_eq!(cap, 5);
                assert!(found > 5);
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn explicit_flats_round_trip() {
        let m = Matroid::uniform(2, 3).unwrap();
        let flats = m.flats().unwrap();
        let e = Matroid::explicit_flats(3, flats.clone()).unwrap();
        assert_eq!(e.flats().unwrap(), flats);
        assert_eq!(e.rank(e.ground()), 2);
        assert_eq!(e.rank(Subset::singleton(1)), 1);
        assert_eq!(e.closure(Subset::from_indices([0, 1])), e.ground());
    }

    #[test]
    fn explicit_flats_reject_partition_violation() {
        // The only cover of {} is {0}, so elements 1 and 2 lie in no cover
        // of {} at all.
        let family = vec![
            Subset::EMPTY,
            Subset::singleton(0),
            Subset::from_indices([0, 1, 2]),
        ];
        let err = Matroid::explicit_flats(3, family).unwrap_err();
        assert!(matches!(err, MatroidError::Validation(ref msg) if msg.contains("partition")));
    }

    #[test]
    fn non_prime_modulus_rejected() {
        let err = Matroid::linear(4, vec![vec![1], vec![3]]).unwrap_err();
        assert!(matches!(err, MatroidError::Validation(ref msg) if msg.contains("prime")));
    }

    #[test]
    fn society_instance_parses() {
        let inst =
            parse_instance(r#"{"kind":"society","M":2,"W":1,"edges":[[0,0],[1,0]]}"#).unwrap();
        match inst {
            ParsedInstance::Society(s) => {
                assert_eq!(s.men().len(), 2);
                assert_eq!(s.women().len(), 1);
                assert_eq!(s.edges().len(), 2);
            }
            ParsedInstance::Matroid(_) => panic!("expected society"),
        }
    }
}
