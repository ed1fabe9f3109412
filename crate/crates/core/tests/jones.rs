use std::path::Path;

use num_rational::BigRational;
use proptest::prelude::*;
use skewlines::groupoid::explore_cluster;
use skewlines::io::{read_json, StateFile};
use skewlines::jones::*;
use skewlines::lincore::{ChiralityMatrix, DirectionTensor, DiscreteState};
use skewlines::matrix::IntMatrix;
use skewlines::projection::*;
use skewlines::rational::big_to_f64;
use skewlines::reference::*;
use skewlines::sampling::{random_config, rng_for};

fn poly(t: Terms) -> LaurentPoly {
    LaurentPoly::from_terms(t)
}

/// Plain `2^m` state sum with every loop weighing `d`; loops are traced by
/// alternating smoothing arcs and graph edges.
fn brute_force(g: &BracketGraph) -> LaurentPoly {
    let m = g.crossing_count();
    let d = LaurentPoly::loop_value();
    let mut total = LaurentPoly::zero();
    for mask in 0u64..(1 << m) {
        let mut mate = vec![usize::MAX; g.partner.len()];
        for (v, pairs) in g.vertices.iter().enumerate() {
            let s = ((mask >> v) & 1) as usize;
            for &(x, y) in &pairs[s] {
                mate[x] = y;
                mate[y] = x;
            }
        }
        let mut seen = vec![false; g.partner.len()];
        let mut loops = 0u32;
        for start in 0..g.partner.len() {
            if seen[start] {
                continue;
            }
            let mut h = start;
            loop {
                seen[h] = true;
                let q = mate[h];
                seen[q] = true;
                h = g.partner[q];
                if h == start {
                    break;
                }
            }
            loops += 1;
        }
        let a_count = (0..m).filter(|v| (mask >> v) & 1 == 0).count() as i32;
        let mut term = LaurentPoly::monomial(2 * a_count - m as i32, 1);
        term = &term * &d.pow(loops);
        total += &term;
    }
    total
}

fn printed_bundle() -> (ChiralityMatrix, ProjectionBundle) {
    let p = ChiralityMatrix::from_rows(&ENTANGLED_SIX_CHIRALITY.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap();
    let comps: Vec<IntMatrix> = ENTANGLED_SIX_PROJECTION
        .iter()
        .map(|c| IntMatrix::from_rows(&c.iter().map(|r| r.iter().map(|&v| v as i64).collect()).collect::<Vec<_>>()).unwrap())
        .collect();
    let prm = DirectionTensor::from_components(&comps).unwrap();
    let h = recover_h(&prm).unwrap();
    let overlap = h.hadamard(p.matrix());
    (p, bundle_from_parts(prm, overlap))
}

fn printed_diagram() -> ProjectiveDiagram {
    let (p, b) = printed_bundle();
    diagram_from_bundle(&b, &p).unwrap()
}

fn linked_six() -> DiscreteState {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/linked_six.json");
    read_json::<StateFile>(&path).unwrap().to_state().unwrap()
}

fn pseudo_diagram(state: &DiscreteState, variant: (usize, usize, i8)) -> ProjectiveDiagram {
    let b = pseudo_bundle(state, variant.0, variant.1, variant.2).unwrap();
    diagram_from_bundle(&b, &state.p).unwrap()
}

/// Plane projection of a random configuration with the given line count.
fn random_diagram(n: usize, seed: u64) -> (ChiralityMatrix, ProjectiveDiagram) {
    let mut rng = rng_for(seed, n as u64);
    let c = random_config(n, &mut rng).unwrap();
    let p = c.chirality().unwrap();
    let b = project_plane(&c, &[0.31, -0.17, 1.0]).unwrap();
    let d = diagram_from_bundle(&b, &p).unwrap();
    (p, d)
}

fn three_lines(det: i128) -> ProjectiveDiagram {
    (0..)
        .map(|s| random_diagram(3, s))
        .find(|(p, _)| p.det() == det)
        .unwrap()
        .1
}

fn at_08(p: &LaurentPoly) -> f64 {
    big_to_f64(&eval_poly(p, &parse_rational("0.8").unwrap()).unwrap())
}

#[test]
fn two_line_anchors() {
    let (_, d) = random_diagram(2, 1);
    assert_eq!(d.crossing_count(), 1);
    assert_eq!(jd(&d).unwrap(), poly(JD_TWO_LINES));
    assert_eq!(jm(&d).unwrap(), poly(JM_TWO_LINES));
    assert_eq!(
        disentanglement_check(&poly(JD_TWO_LINES), &poly(JM_TWO_LINES)),
        Disentanglement::Trivializable { hopf: 1, unknot: -1 }
    );
}

#[test]
fn three_line_anchors() {
    let d = three_lines(2);
    assert_eq!(jd(&d).unwrap(), poly(JD_THREE_LINES));
    assert_eq!(jm(&d).unwrap(), poly(JM_THREE_LINES));
    assert_eq!(-&poly(JD_THREE_LINES).substitute_power(2), poly(JM_THREE_LINES));
    let mirror = three_lines(-2);
    assert_eq!(jd(&mirror).unwrap(), poly(JD_THREE_LINES_MIRROR_INVERTED));
}

#[test]
fn mirror_inverts_the_variable() {
    for s in 0..5 {
        let (_, d) = random_diagram(5, s);
        let mut m = d.clone();
        m.over = d.over.scale(-1);
        assert_eq!(jd(&m).unwrap(), jd(&d).unwrap().substitute_power(-1));
        assert_eq!(jm(&m).unwrap(), jm(&d).unwrap().substitute_power(-1));
    }
}

#[test]
fn printed_diagram_polynomials() {
    let d = printed_diagram();
    assert_eq!(d.crossing_count(), 15);
    let j = jd(&d).unwrap();
    let m = jm(&d).unwrap();
    assert_eq!(j, poly(JD_ENTANGLED_SMALL));
    assert_eq!(m, poly(JM_ENTANGLED_SMALL));
    assert!((at_08(&j) - 83.23852).abs() < 1e-5);
    assert_eq!(disentanglement_check(&j, &m), Disentanglement::Nontrivial);
}

#[test]
fn linked_six_polynomials() {
    let s = linked_six();
    assert_eq!(s.p.det(), 27);
    let d = pseudo_diagram(&s, (0, 1, 1));
    let j = jd(&d).unwrap();
    let m = jm(&d).unwrap();
    assert_eq!(j, poly(JD_ENTANGLED_LARGE));
    assert_eq!(m, poly(JM_ENTANGLED_LARGE));
    assert!((at_08(&j) - 81.85074).abs() < 1e-5);
    let h = LaurentPoly::hopf_value();
    let u = LaurentPoly::loop_value();
    assert_eq!(&(-&j.substitute_power(2)) * &h, &m * &u);
    assert_eq!(disentanglement_check(&j, &m), Disentanglement::Trivializable { hopf: 1, unknot: -1 });
}

#[test]
fn state_sum_matches_brute_force() {
    let d = printed_diagram();
    let g = projective_graph(&d);
    let weights = LoopWeights { contractible: LaurentPoly::loop_value(), noncontractible: LaurentPoly::loop_value() };
    assert_eq!(state_sum(&g, &weights, 64).unwrap(), brute_force(&g));
    for n in 3..6 {
        let (_, d) = random_diagram(n, 11);
        let g = double(&d);
        assert_eq!(state_sum(&g, &weights, 64).unwrap(), brute_force(&g), "n = {n}");
    }
}

#[test]
fn at_most_one_noncontractible_loop() {
    // With the marker weight a^1000 the exponent counts noncontractible loops.
    let marker = LoopWeights { contractible: LaurentPoly::loop_value(), noncontractible: LaurentPoly::monomial(1000, 1) };
    for n in 2..7 {
        let (_, d) = random_diagram(n, 5);
        let raw = state_sum(&projective_graph(&d), &marker, 64).unwrap();
        let expected = (n % 2) as i32;
        for (e, _) in raw.terms() {
            assert_eq!((e + 500).div_euclid(1000), expected, "n = {n}");
        }
    }
}

#[test]
fn pseudo_variants_agree() {
    let s = linked_six();
    let reference = pseudo_diagram(&s, (0, 1, 1));
    let (j0, m0) = (jd(&reference).unwrap(), jm(&reference).unwrap());
    for v in pseudo_variants(6) {
        let d = pseudo_diagram(&s, v);
        assert_eq!(jd(&d).unwrap(), j0, "{v:?}");
        assert_eq!(jm(&d).unwrap(), m0, "{v:?}");
    }
}

#[test]
fn cluster_states_share_the_bracket() {
    let (p, b) = printed_bundle();
    let seed = DiscreteState::new(p, d3(&b.prm)).unwrap();
    let cluster = explore_cluster(&seed).unwrap();
    let expected = poly(JD_ENTANGLED_SMALL);
    for idx in cluster.orbit_representatives() {
        let d = pseudo_diagram(&cluster.state(idx), (0, 1, 1));
        assert_eq!(jd(&d).unwrap(), expected, "state {idx}");
    }
}

#[test]
fn disjoint_union_multiplies() {
    let (_, d1) = random_diagram(3, 2);
    let (_, d2) = random_diagram(4, 3);
    let (g1, g2) = (double(&d1), double(&d2));
    let shift = g1.partner.len();
    let mut vertices = g1.vertices.clone();
    vertices.extend(g2.vertices.iter().map(|v| v.map(|pairs| pairs.map(|(x, y)| (x + shift, y + shift)))));
    let mut partner = g1.partner.clone();
    partner.extend(g2.partner.iter().map(|&x| x + shift));
    let boundary = vec![false; partner.len()];
    let union = BracketGraph { vertices, partner, boundary };
    let lhs = kauffman_bracket(&union, 64).unwrap();
    let rhs = &(&kauffman_bracket(&g1, 64).unwrap() * &kauffman_bracket(&g2, 64).unwrap()) * &LaurentPoly::loop_value();
    assert_eq!(lhs, rhs);
}

#[test]
fn non_total_order_is_rejected() {
    let (p, b) = printed_bundle();
    let mut prm = b.prm.clone();
    prm.set(0, 1, 2, -prm.get(0, 1, 2));
    let broken = bundle_from_parts(prm, b.overlap.clone());
    // a single flipped comparison breaks either realizability or totality
    match diagram_from_bundle(&broken, &p) {
        Err(skewlines::Error::NotRealizable(_)) => {}
        Ok(d) => assert_ne!(d, diagram_from_bundle(&b, &p).unwrap()),
        Err(e) => panic!("unexpected error {e}"),
    }
}

#[test]
fn exact_evaluation() {
    let v = eval_poly(&poly(JD_ENTANGLED_SMALL), &parse_rational("4/5").unwrap()).unwrap();
    assert_eq!(v, eval_poly(&poly(JD_ENTANGLED_SMALL), &parse_rational("0.8").unwrap()).unwrap());
    assert_eq!(eval_poly(&LaurentPoly::one(), &parse_rational("-2.5").unwrap()).unwrap(), BigRational::from_integer(1.into()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plane_and_pseudo_projections_agree(seed in 0u64..10_000, n in 3usize..6) {
        let mut rng = rng_for(seed, 99);
        let c = random_config(n, &mut rng).unwrap();
        let p = c.chirality().unwrap();
        let state = c.state().unwrap();
        let plane = project_plane(&c, &[0.2, 0.1, 1.0]).unwrap();
        let via_plane = diagram_from_bundle(&plane, &p).unwrap();
        let via_pseudo = pseudo_diagram(&state, (0, 1, 1));
        prop_assert_eq!(jd(&via_plane).unwrap(), jd(&via_pseudo).unwrap());
        prop_assert_eq!(jm(&via_plane).unwrap(), jm(&via_pseudo).unwrap());
    }

    #[test]
    fn bracket_is_direction_independent(seed in 0u64..10_000, x in -1.0f64..1.0, y in -1.0f64..1.0) {
        let mut rng = rng_for(seed, 7);
        let c = random_config(5, &mut rng).unwrap();
        let p = c.chirality().unwrap();
        let a = project_plane(&c, &[0.0, 0.0, 1.0]).unwrap();
        let b = project_plane(&c, &[x, y, 0.7]).unwrap();
        let da = diagram_from_bundle(&a, &p).unwrap();
        let db = diagram_from_bundle(&b, &p).unwrap();
        prop_assert_eq!(jd(&da).unwrap(), jd(&db).unwrap());
    }

    #[test]
    fn polynomial_ring_laws(a in prop::collection::vec((-6i32..6, -5i64..5), 0..6),
                            b in prop::collection::vec((-6i32..6, -5i64..5), 0..6),
                            c in prop::collection::vec((-6i32..6, -5i64..5), 0..6)) {
        let (a, b, c) = (LaurentPoly::from_terms(&a), LaurentPoly::from_terms(&b), LaurentPoly::from_terms(&c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
        prop_assert_eq!(a.to_string().parse::<LaurentPoly>().unwrap(), a);
    }
}
