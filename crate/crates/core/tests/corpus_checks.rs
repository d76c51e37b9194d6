//! Corpus-wide structural facts: cover joins, crown freedom, and the
//! geometricity of intervals and incidence shadows.

use geomlat::checks::{
    check_cover_join, check_no_four_crown, check_shadow_bound, verify_geometric,
};
use geomlat::Lattice;

fn corpus() -> Vec<(String, Lattice)> {
    geomlat::corpus::standard_corpus(0, 20)
        .into_iter()
        .map(|e| (e.name.clone(), Lattice::from_matroid(&e.matroid).unwrap()))
        .collect()
}

#[test]
fn common_upper_bounds_of_cover_pairs() {
    for (name, lat) in corpus() {
        let check = check_cover_join(&lat);
        assert!(check.passed, "{name}: {:?}", check.witness);
    }
}

#[test]
fn no_four_crowns_anywhere() {
    for (name, lat) in corpus() {
        let check = check_no_four_crown(&lat);
        assert!(check.passed, "{name}: {:?}", check.witness);
    }
}

#[test]
fn intervals_are_geometric() {
    for (name, lat) in corpus() {
        if lat.height() < 3 {
            continue;
        }
        let q = lat.atoms()[0];
        let h = *lat.hyperplanes().last().unwrap();
        for sub in [
            lat.interval(q, lat.top()).unwrap(),
            lat.interval(lat.bottom(), h).unwrap(),
        ] {
            let report = verify_geometric(&sub.lattice);
            assert!(report.all_passed(), "{name}: {:?}", report.checks);
            assert_eq!(sub.lattice.height(), lat.height() - 1);
        }
    }
}

#[test]
fn loops_and_parallel_elements_are_absorbed_by_flats() {
    use geomlat::matching::{match_dispatch, verify_matching, Strategy};
    use geomlat::Matroid;

    // K4 plus a self-loop at vertex 0 and a parallel copy of edge (0,1):
    // the loop sinks into the bottom flat, the parallel edge into its
    // partner's atom, and the lattice is still the one of K4.
    let m = Matroid::graphic(
        4,
        vec![
            (0, 1),
            (0, 2),
            (0, 3),
            (1, 2),
            (1, 3),
            (2, 3),
            (0, 0),
            (0, 1),
        ],
    )
    .unwrap();
    let lat = Lattice::from_matroid(&m).unwrap();
    assert_eq!((lat.len(), lat.height()), (15, 3));
    assert_eq!((lat.atoms().len(), lat.hyperplanes().len()), (6, 7));
    // Bottom flat = the loop; the parallel pair forms one atom.
    assert_eq!(lat.flat(lat.bottom()).indices(), vec![6]);
    assert!(lat
        .atoms()
        .iter()
        .any(|&a| lat.flat(a).indices() == vec![0, 6, 7]));
    assert!(verify_geometric(&lat).all_passed());
    assert!(check_shadow_bound(&lat).passed());
    for strategy in [Strategy::Hall, Strategy::Bjorner] {
        let (matching, report) = match_dispatch(&lat, strategy).unwrap();
        assert!(report.verified);
        assert!(verify_matching(&lat, &matching).passed);
    }

    // A zero column over GF(3) is a loop; duplicate columns are parallel.
    let m = Matroid::linear(
        3,
        vec![vec![0, 0], vec![1, 0], vec![1, 0], vec![0, 1], vec![1, 2]],
    )
    .unwrap();
    let lat = Lattice::from_matroid(&m).unwrap();
    assert_eq!(lat.flat(lat.bottom()).indices(), vec![0]);
    assert_eq!(lat.atoms().len(), 3);
    assert!(verify_geometric(&lat).all_passed());
}

#[test]
fn shadow_bound_forces_degree_condition_on_equicardinal_members() {
    use geomlat::matching::check_milner_shelah;
    use geomlat::society::lattice_society;
    for (name, lat) in corpus() {
        if lat.height() < 3 {
            continue;
        }
        assert!(check_shadow_bound(&lat).passed(), "{name}");
        let sizes: Vec<usize> = lat
            .hyperplanes()
            .iter()
            .map(|&h| lat.atoms_under(h).len())
            .collect();
        if sizes.windows(2).all(|w| w[0] == w[1]) {
            let society = lattice_society(&lat).unwrap();
            assert!(
                check_milner_shelah(&society),
                "{name}: equicardinal but condition fails"
            );
        }
    }
}
