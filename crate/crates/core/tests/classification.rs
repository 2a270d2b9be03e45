//! End-to-end checks through the public API: fan files, wall tables,
//! simplification and classification on the worked examples.

use num_traits::{One, Zero};

use toric_core::classify::{
    analyze_divisor, blown_up_projective_space, catalog, classify_fano_with_divisor, divisor_star_fan,
    find_transverse_extremal, projective_bundle, projective_divisors, simplify_pair, theorem1_check, CaseTag,
    Simplification,
};
use toric_core::format::{fan_to_json, parse_fan_json};
use toric_core::mori::{contraction_info, ContractionKind};
use toric_core::{anticanonical_degree, fans_isomorphic, is_fano, Cone, Error, Fan, Int};

const P3: &str = r#"{"dim":3,"rays":[[1,0,0],[0,1,0],[0,0,1],[-1,-1,-1]],
  "max_cones":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#;

/// P^1 x P^2 with rays u+, u-, b1, b2, b0.
const P1_P2: &str = r#"{"dim":3,"rays":[[1,0,0],[-1,0,0],[0,1,0],[0,0,1],[0,-1,-1]],
  "max_cones":[[0,2,3],[0,3,4],[0,2,4],[1,2,3],[1,3,4],[1,2,4]]}"#;

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn parse_and_wall_table() {
    let p3 = parse_fan_json(P3).unwrap();
    assert_eq!(p3, Fan::projective_space(3));
    let walls = p3.walls().unwrap();
    assert_eq!(walls.len(), 6);
    for w in walls {
        assert_eq!(w.coeffs, ints(&[1, 1]));
        assert_eq!(anticanonical_degree(w), Int::from(4));
    }
}

#[test]
fn parse_errors_name_the_problem() {
    let bad = r#"{"dim":3,"rays":[[2,0,0],[0,1,0],[0,0,1],[-1,-1,-1]],"max_cones":[[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#;
    assert_eq!(parse_fan_json(bad).unwrap_err().to_string(), "invalid fan: ray 0 not primitive");
    let bad = r#"{"dim":3,"rays":[[1,0,0],[0,1,0],[0,0,1],[-1,-1,-1]],"max_cones":[[0,1],[0,1,3],[0,2,3],[1,2,3]]}"#;
    assert_eq!(parse_fan_json(bad).unwrap_err().to_string(), "invalid fan: cone 0 has size 2, expected 3");
    assert!(matches!(parse_fan_json("{\"dim\":3"), Err(Error::Parse(_))));
}

#[test]
fn json_round_trip_of_catalog() {
    for e in catalog(4).unwrap() {
        let text = fan_to_json(&e.fan).to_string();
        assert_eq!(parse_fan_json(&text).unwrap(), e.fan);
    }
}

#[test]
fn projective_divisors_of_the_examples() {
    let p1p2 = parse_fan_json(P1_P2).unwrap();
    let found: Vec<(usize, Int)> =
        projective_divisors(&p1p2).unwrap().into_iter().map(|a| (a.ray_index, a.d.unwrap())).collect();
    assert_eq!(found, vec![(0, Int::zero()), (1, Int::zero())]);

    let star = divisor_star_fan(&p1p2, 0).unwrap();
    assert!(fans_isomorphic(&star, &Fan::projective_space(2)).is_some());

    let bl = blown_up_projective_space(3);
    let e = bl.ray_count() - 1;
    assert!(!analyze_divisor(&bl, e).unwrap().is_proj_space);
}

#[test]
fn extremal_contractions() {
    let p3 = Fan::projective_space(3);
    let info = contraction_info(&p3, &p3.walls().unwrap()[0]).unwrap();
    assert_eq!((info.alpha, info.beta, info.kind), (0, 0, ContractionKind::Fibration));

    let bl = Fan::projective_space(3).star_subdivide(&Cone::new(vec![0, 1, 2])).unwrap();
    let w = bl.walls().unwrap().iter().find(|w| w.contains(4)).unwrap().clone();
    let info = contraction_info(&bl, &w).unwrap();
    assert_eq!((info.alpha, info.beta, info.kind), (1, 1, ContractionKind::Divisorial));
    assert_eq!((info.exc_dim, info.image_dim), (Some(2), Some(0)));
}

#[test]
fn transverse_wall_and_simplification() {
    let p1p2 = parse_fan_json(P1_P2).unwrap();
    let bl = p1p2.star_subdivide(&Cone::new(vec![0, 2])).unwrap();
    let w = find_transverse_extremal(&bl, 0).unwrap().unwrap();
    assert_eq!((w.wall_rays.clone(), w.coeffs.clone()), (vec![3, 5], ints(&[0, -1])));

    let Simplification::Step(step) = simplify_pair(&bl, 0).unwrap() else { panic!("expected a step") };
    assert_eq!(step.result_fan, p1p2);
    assert_eq!((step.input_d, step.result_d), (Int::from(-1), Int::zero()));
}

#[test]
fn simplification_of_case_four_nu_one() {
    let cat = catalog(3).unwrap();
    let e = cat.iter().find(|e| e.case == CaseTag::IV && e.nu == Some(1)).unwrap();
    let iii = |nu| &cat.iter().find(|c| c.case == CaseTag::III && c.nu == Some(nu)).unwrap().fan;

    // the strict transform (d = 1) blows down to P(O + O(2)) with d = 2
    let fs = &e.divisors[0];
    assert_eq!(fs.d, Int::one());
    let Simplification::Step(step) = simplify_pair(&e.fan, fs.ray).unwrap() else { panic!("expected a step") };
    assert_eq!(step.result_d, Int::from(2));
    assert!(fans_isomorphic(&step.result_fan, iii(2)).is_some());
    assert_eq!(step.center_normal_degrees().unwrap(), (Int::from(2), Int::one()));

    // the other section (d = -2) has a second blow-down, onto P(O + O(1))
    let other = &e.divisors[1];
    let Simplification::Step(step) = simplify_pair(&e.fan, other.ray).unwrap() else { panic!("expected a step") };
    assert_eq!((step.input_d.clone(), step.result_d.clone()), (Int::from(-2), Int::from(-1)));
    assert!(fans_isomorphic(&step.result_fan, iii(1)).is_some());
    assert!(is_fano(&step.result_fan).unwrap());
}

#[test]
fn classification_examples() {
    let c = classify_fano_with_divisor(&Fan::projective_space(3), 3).unwrap();
    assert_eq!((c.case, c.nu, c.depth()), (CaseTag::I, None, 0));

    let bl = Fan::projective_space(3).star_subdivide(&Cone::new(vec![0, 1, 2])).unwrap();
    let c = classify_fano_with_divisor(&bl, 4).unwrap();
    assert_eq!((c.case, c.nu), (CaseTag::III, Some(1)));
    assert_eq!(c.witness.ray_map.len(), 5);

    let p1p2 = parse_fan_json(P1_P2).unwrap();
    let c = classify_fano_with_divisor(&p1p2.star_subdivide(&Cone::new(vec![0, 2])).unwrap(), 0).unwrap();
    assert_eq!((c.case, c.nu, c.depth()), (CaseTag::IV, Some(0), 1));
}

#[test]
fn classification_refuses_bad_input() {
    assert!(matches!(classify_fano_with_divisor(&projective_bundle(3, 3), 1), Err(Error::NotFano)));
    assert!(matches!(classify_fano_with_divisor(&Fan::projective_space(3), 9), Err(Error::RayIndex { .. })));
}

#[test]
fn point_blow_up_counts() {
    let r = theorem1_check(&Fan::projective_space(4)).unwrap();
    assert_eq!((r.fano_blow_ups(), r.points.len()), (5, 5));
    let r = theorem1_check(&blown_up_projective_space(4)).unwrap();
    assert_eq!((r.fano_blow_ups(), r.points.len()), (2, 8));
    assert!(r.is_clean());
    let r = theorem1_check(&projective_bundle(3, 2)).unwrap();
    assert_eq!(r.fano_blow_ups(), 0);
}
