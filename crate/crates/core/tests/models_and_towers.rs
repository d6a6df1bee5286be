use std::path::PathBuf;

use proptest::prelude::*;

use lietower::cdgl::differential_check;
use lietower::model::{based_component_model, global_model, indecomposables_homology};
use lietower::simpset::{load_simplicial_set, load_simplicial_set_file, reduced_homology, SimplicialSetSpec};
use lietower::tower::{completion_tower, fundamental_group_data, tower_homotopy};
use lietower::Error;

fn fixture(stem: &str) -> SimplicialSetSpec {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    load_simplicial_set_file(dir.join(stem)).unwrap()
}

/// One vertex, `circles` loops and `spheres` collapsed triangles.
fn wedge_document(circles: usize, spheres: usize) -> String {
    let loop_faces = r#"[[[], "v"], [[], "v"]]"#;
    let tri_faces = r#"[[[0], "v"], [[0], "v"], [[0], "v"]]"#;
    let edges: Vec<String> =
        (0..circles).map(|i| format!(r#"{{"id": "e{i}", "faces": {loop_faces}}}"#)).collect();
    let tris: Vec<String> = (0..spheres).map(|i| format!(r#"{{"id": "t{i}", "faces": {tri_faces}}}"#)).collect();
    format!(
        r#"{{"name": "W", "simplices": {{"0": ["v"], "1": [{}], "2": [{}]}}}}"#,
        edges.join(","),
        tris.join(",")
    )
}

fn witt(k: usize, len: usize) -> usize {
    // small cases by hand: Σ_{d|len} μ(d) k^{len/d} / len
    let mu = |d: usize| match d {
        1 => 1i64,
        2 | 3 | 5 => -1,
        4 => 0,
        6 => 1,
        _ => unreachable!(),
    };
    let s: i64 = (1..=len).filter(|d| len % d == 0).map(|d| mu(d) * (k as i64).pow((len / d) as u32)).sum();
    (s / len as i64) as usize
}

#[test]
fn circle_stages_are_one_dimensional() {
    let t = completion_tower(&fixture("s1"), 4).unwrap();
    assert_eq!(t.stages.len(), 3);
    for s in &t.stages {
        let g = fundamental_group_data(&s.cdgl).unwrap();
        assert_eq!((g.dim, g.class, g.abelianization_dim), (1, 1, 1));
    }
}

#[test]
fn point_tower_is_trivial() {
    let r = tower_homotopy(&fixture("point"), 4, 3).unwrap();
    assert!(r.dims.iter().flatten().all(|&d| d == 0));
    assert!(r.stabilization.iter().all(|s| s.stable_from == Some(2)));
}

#[test]
fn sphere_stabilization() {
    let r = tower_homotopy(&fixture("s2"), 5, 4).unwrap();
    let from: Vec<_> = r.stabilization.iter().map(|s| s.stable_from).collect();
    assert_eq!(from, vec![Some(2), Some(2), Some(3), Some(2)]);
    let g = fundamental_group_data(&completion_tower(&fixture("s2"), 3).unwrap().stages[0].cdgl).unwrap();
    assert_eq!(g.dim, 0);
}

#[test]
fn last_stage_changes_are_not_stability() {
    // S² through stage 3 only: π₃ appears at the final stage
    let r = tower_homotopy(&fixture("s2"), 3, 3).unwrap();
    assert_eq!(r.dims[2], vec![0, 1]);
    assert_eq!(r.stabilization[2].stable_from, None);
}

#[test]
fn the_pi1_action_on_the_torus_is_trivial() {
    let r = tower_homotopy(&fixture("torus"), 4, 2).unwrap();
    for s in &r.records {
        assert_eq!(s.group_dim, 2);
        assert_eq!(s.group_class, 1);
        // H₀ is abelian, so e^{ad α} − id kills H₀ after one step
        assert_eq!(s.action[0].vanishes_after, Some(1));
    }
}

#[test]
fn towers_need_a_reduced_input_and_two_stages() {
    let two = load_simplicial_set(r#"{"name": "two", "simplices": {"0": ["p", "q"]}}"#).unwrap();
    assert!(matches!(completion_tower(&two, 3), Err(Error::InvalidInput(_))));
    assert!(matches!(completion_tower(&fixture("s1"), 1), Err(Error::InvalidInput(_))));
    // the global model itself is fine without a single vertex
    let g = global_model(&two, 3).unwrap();
    assert_eq!(g.cdgl.mc_generators().len(), 2);
}

#[test]
fn degenerate_faces_map_to_zero() {
    let g = global_model(&fixture("s2"), 3).unwrap();
    let t = g.characteristic.iter().find(|c| c.simplex == "t").unwrap();
    let edges: Vec<_> = t.images.iter().filter(|(m, _)| m.len() == 3).collect();
    assert_eq!(edges.len(), 3);
    assert!(edges.iter().all(|(_, img)| img.is_none()), "{edges:?}");
    g.check_linear_part(&fixture("s2")).unwrap();
}

#[test]
fn based_component_drops_the_vertex() {
    for stem in ["s1", "wedge", "s2", "s3", "torus"] {
        let c = based_component_model(&fixture(stem), 4).unwrap();
        assert!(c.gens().index_of("v").is_none(), "{stem}");
        assert!(differential_check(&c).is_empty(), "{stem}");
    }
}

#[test]
fn broken_fixture_names_the_edge() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures/broken");
    match load_simplicial_set_file(dir) {
        Err(Error::Simplex { simplex, .. }) => assert_eq!(simplex, "e"),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn wedges_of_circles_follow_witt_sums(k in 1usize..=3) {
        let x = load_simplicial_set(&wedge_document(k, 0)).unwrap();
        let r = tower_homotopy(&x, 4, 1).unwrap();
        let sums: Vec<usize> = (2..=4).map(|n| (1..n).map(|q| witt(k, q)).sum()).collect();
        prop_assert_eq!(&r.dims[0], &sums);
    }

    #[test]
    fn indecomposables_see_reduced_homology(circles in 0usize..=3, spheres in 0usize..=2) {
        let x = load_simplicial_set(&wedge_document(circles, spheres)).unwrap();
        let reduced = reduced_homology(&x);
        let l = based_component_model(&x, 3).unwrap();
        for (p, d) in indecomposables_homology(&l).unwrap() {
            prop_assert_eq!(d, reduced.get((p + 1) as usize).copied().unwrap_or(0));
        }
        prop_assert_eq!(reduced.get(1).copied().unwrap_or(0), circles);
        prop_assert_eq!(reduced.get(2).copied().unwrap_or(0), spheres);
    }
}
