//! Built-in instance generators, so the test corpus needs no external data:
//! uniform matroids, complete graphs, projective planes over small prime
//! fields, seeded random GF(2) column matroids, and a few small societies.

use crate::matroid::Matroid;
use crate::society::Society;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A named corpus instance.
pub struct CorpusEntry {
    pub name: String,
    pub matroid: Matroid,
}

pub fn uniform(k: usize, n: usize) -> Matroid {
    Matroid::uniform(k, n).expect("uniform corpus parameters are valid")
}

/// The cycle matroid of the complete graph on `v` vertices, edges in
/// lexicographic order.
pub fn complete_graph(v: usize) -> Matroid {
    let mut edges = Vec::new();
    for a in 0..v {
        for b in a + 1..v {
            edges.push((a, b));
        }
    }
    Matroid::graphic(v, edges).expect("complete graph parameters are valid")
}

/// The projective plane of order `q` (for prime `q`) as a linear matroid:
/// one column per projective point of GF(q)^3, normalized so the first
/// nonzero coordinate is 1, in lexicographic order.
pub fn projective_plane(q: u64) -> Matroid {
    let mut columns = Vec::new();
    for a in 0..q {
        for b in 0..q {
            for c in 0..q {
                let v = [a, b, c];
                let first = v.iter().find(|&&x| x != 0);
                if first == Some(&1) {
                    columns.push(v.to_vec());
                }
            }
        }
    }
    Matroid::linear(q, columns).expect("projective plane parameters are valid")
}

/// A seeded random GF(2) column matroid with 4 to 8 columns of dimension 2
/// to 4, re-drawn until the rank is at least 2. Zero and repeated columns
/// are allowed, so loops and parallel atoms occur.
pub fn random_gf2(rng: &mut ChaCha8Rng) -> Matroid {
    loop {
        let n = rng.gen_range(4..=8);
        let dim = rng.gen_range(2..=4);
        let columns: Vec<Vec<u64>> = (0..n)
            .map(|_| (0..dim).map(|_| rng.gen_range(0..2u64)).collect())
            .collect();
        let m = Matroid::linear(2, columns).expect("generated columns are valid");
        if m.rank(m.ground()) >= 2 {
            return m;
        }
    }
}

/// The standard corpus: uniform(k, n) for 2 <= k <= n <= 6, the complete
/// graphs K4 and K5, the projective planes of orders 2 and 3, and
/// `random_count` seeded random GF(2) matroids.
pub fn standard_corpus(seed: u64, random_count: usize) -> Vec<CorpusEntry> {
    let mut entries = Vec::new();
    for n in 2..=6 {
        for k in 2..=n {
            entries.push(CorpusEntry {
                name: format!("u{k}{n}"),
                matroid: uniform(k, n),
            });
        }
    }
    entries.push(CorpusEntry {
        name: "k4".into(),
        matroid: complete_graph(4),
    });
    entries.push(CorpusEntry {
        name: "k5".into(),
        matroid: complete_graph(5),
    });
    entries.push(CorpusEntry {
        name: "fano".into(),
        matroid: projective_plane(2),
    });
    entries.push(CorpusEntry {
        name: "pg23".into(),
        matroid: projective_plane(3),
    });
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..random_count {
        entries.push(CorpusEntry {
            name: format!("rand_gf2_{i:02}"),
            matroid: random_gf2(&mut rng),
        });
    }
    entries
}

/// Small example societies for the obstruction tooling.
pub fn sample_societies() -> Vec<(String, Society)> {
    vec![
        (
            "society_onepair".into(),
            Society::from_counts(1, 1, &[(0, 0)]).expect("valid"),
        ),
        (
            "society_2v1".into(),
            Society::from_counts(2, 1, &[(0, 0), (1, 0)]).expect("valid"),
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Lattice;

    #[test]
    fn projective_plane_point_counts() {
        assert_eq!(projective_plane(2).ground_size(), 7);
        assert_eq!(projective_plane(3).ground_size(), 13);
        let l = Lattice::from_matroid(&projective_plane(3)).unwrap();
        assert_eq!(l.len(), 2 + 13 + 13);
        assert_eq!(l.atoms().len(), 13);
        assert_eq!(l.hyperplanes().len(), 13);
        for &h in l.hyperplanes() {
            assert_eq!(l.atoms_under(h).len(), 4);
        }
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = standard_corpus(42, 5);
        let b = standard_corpus(42, 5);
        assert_eq!(a.len(), b.len());
        assert_eq!(a.len(), 15 + 2 + 2 + 5);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            let (lx, ly) = (
                Lattice::from_matroid(&x.matroid).unwrap(),
                Lattice::from_matroid(&y.matroid).unwrap(),
            );
            assert_eq!(lx.len(), ly.len());
            for i in 0..lx.len() {
                assert_eq!(lx.flat(i), ly.flat(i));
            }
        }
    }

    #[test]
    fn random_matroids_have_rank_at_least_2() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let m = random_gf2(&mut rng);
            assert!(m.rank(m.ground()) >= 2);
            assert!(m.ground_size() <= 8);
        }
    }
}
