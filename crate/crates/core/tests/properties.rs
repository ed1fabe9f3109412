use std::collections::BTreeSet;

use proptest::prelude::*;
use skewlines::groupoid::{apply_switch, explore_cluster, is_connected_move};
use skewlines::invariants::*;
use skewlines::io::{from_json, to_json, StateFile};
use skewlines::lincore::*;
use skewlines::matrix::IntMatrix;
use skewlines::projection::*;
use skewlines::rational::Rational;
use skewlines::sampling::{random_config, rng_for};

fn config(n: usize, seed: u64) -> LineConfig {
    random_config(n, &mut rng_for(seed, 1000 + n as u64)).unwrap()
}

fn legal_classes_six() -> BTreeSet<Rational> {
    // reciprocal-root sums of the four annihilating polynomials of the squared sum
    [Rational::new(-21, 16), Rational::new(-3, 2), Rational::new(-23, 18), Rational::new(-209, 360)].into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chirality_and_tensor_are_well_formed(seed in any::<u64>(), n in 3usize..9) {
        let c = config(n, seed);
        let p = c.chirality().unwrap();
        let t = c.direction_tensor().unwrap();
        for i in 0..n {
            prop_assert_eq!(p.get(i, i), 0);
            for j in 0..n {
                if i != j {
                    prop_assert_eq!(p.get(i, j), p.get(j, i));
                    prop_assert_eq!(p.get(i, j).abs(), 1);
                }
                for k in 0..n {
                    prop_assert_eq!(t.get(i, j, k), t.get(j, k, i));
                    prop_assert_eq!(t.get(i, j, k), -t.get(j, i, k));
                }
            }
        }
        prop_assert!(validate_tensor(&t).is_empty());
        let s = c.state().unwrap();
        prop_assert_eq!(s.mirror().mirror(), s);
    }

    #[test]
    fn six_line_components_are_annihilated(seed in any::<u64>()) {
        let t = config(6, seed).direction_tensor().unwrap();
        for i in 0..6 {
            let m = t.component(i);
            let m2 = &m * &m;
            let inner = &(&(&m2 * &m2) + &m2.scale(10)) + &IntMatrix::identity(6).scale(5);
            prop_assert!((&m2 * &inner).is_zero());
        }
        prop_assert!(legal_classes_six().contains(&class_of(&t)));
    }

    #[test]
    fn ring_entries_are_bounded(seed in any::<u64>(), n in 4usize..8) {
        let s = config(n, seed).state().unwrap();
        let r = ring_from_state(&s).unwrap();
        let top = ((n - 2) * (n - 3) / 2) as i64;
        for i in 0..n {
            for j in 0..n {
                prop_assert!((0..=top).contains(&r.get(i, j)));
            }
        }
    }

    #[test]
    fn invariants_ignore_relabeling(seed in any::<u64>(), shuffle in Just((0..6).collect::<Vec<usize>>()).prop_shuffle(),
                                    flips in prop::collection::vec(prop::sample::select(vec![-1i8, 1]), 6)) {
        let s = config(6, seed).state().unwrap();
        let t = s.transform(&shuffle, &flips);
        prop_assert_eq!(inv_p(&s.p).ok(), inv_p(&t.p).ok());
        prop_assert_eq!(inv_configuration(&s).ok(), inv_configuration(&t).ok());
        prop_assert_eq!(class_of(&s.dir), class_of(&t.dir));
    }

    #[test]
    fn plane_projection_identities(seed in any::<u64>(), n in 4usize..8, x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let c = config(n, seed);
        let p = c.chirality().unwrap();
        let u = [x, y, 0.9];
        let b = project_plane(&c, &u).unwrap();
        let uu = IntMatrix::ones_off_diagonal(n);
        prop_assert!(ring_of(&uu, &b.prm).unwrap().matrix().is_zero());
        let (lhs, rhs) = square_root_identity(&p, &b);
        prop_assert_eq!(lhs, rhs);
        let nc = d3(&b.prm);
        prop_assert!(validate_tensor(&nc).is_empty());
        // recover_h checks every index triple before returning
        let h = p.matrix().hadamard(&b.overlap);
        let rec = recover_h(&b.prm).unwrap();
        prop_assert!(rec == h || rec == -&h);
        let twisted = d2(&h, &c.direction_tensor().unwrap());
        prop_assert!(ring_of(&uu, &twisted).unwrap().matrix().is_zero());
        if n == 6 {
            prop_assert!(legal_classes_six().contains(&class_of(&nc)));
        }
    }

    #[test]
    fn pseudo_projection_round_trip(seed in any::<u64>(), n in 4usize..8) {
        let s = config(n, seed).state().unwrap();
        let uu = IntMatrix::ones_off_diagonal(n);
        for (c, pivot, sign) in pseudo_variants(n) {
            let prm = pseudo_projection(&s.dir, c, pivot, sign).unwrap();
            prop_assert_eq!(d3(&prm), s.dir.clone());
            prop_assert!(ring_of(&uu, &prm).unwrap().matrix().is_zero());
        }
    }

    #[test]
    fn moves_are_symmetric(seed in any::<u64>(), i in 0usize..6, j in 0usize..6, k in 0usize..6) {
        prop_assume!(i != j && j != k && i != k);
        let s = config(6, seed).state().unwrap();
        let t = apply_switch(&s, (i, j, k));
        prop_assert_eq!(is_connected_move(&s, &t).is_accept(), is_connected_move(&t, &s).is_accept());
    }

    #[test]
    fn state_files_round_trip(seed in any::<u64>(), n in 2usize..9) {
        let s = config(n, seed).state().unwrap();
        let back = from_json::<StateFile>(&to_json(&StateFile::from_state(&s)).unwrap()).unwrap().to_state().unwrap();
        prop_assert_eq!(back.canonical_key(), s.canonical_key());
    }
}

#[test]
fn exploration_does_not_depend_on_the_start() {
    for seed in 0..4 {
        let s = config(6, seed).state().unwrap();
        let a = explore_cluster(&s).unwrap();
        let other = a.state(a.labeled_size() / 2);
        let b = explore_cluster(&other).unwrap();
        assert_eq!(a.states, b.states);
        assert_eq!(a.gsum(), b.gsum());
        let invp = inv_p(&s.p).ok();
        for idx in (0..a.labeled_size()).step_by(7) {
            let t = a.state(idx);
            assert_eq!(t.p, s.p);
            assert_eq!(inv_p(&t.p).ok(), invp);
        }
        for (v, nb) in a.orbit_adjacency().iter().enumerate() {
            for &w in nb {
                assert!(a.orbit_adjacency()[w].contains(&v));
            }
        }
    }
}

#[test]
fn far_points_are_outside() {
    for seed in 0..20 {
        let c = config(6, seed);
        let far = [1.0e3, 2.0e3, -1.5e3];
        let (ring, sandwich) = outside_tests(&c, &far).unwrap();
        assert!(ring && sandwich);
    }
}
