use super::*;

fn z(n: usize) -> FiniteGroup {
    FiniteGroup::cyclic(n)
}

#[test]
fn regular_and_trivial_spaces() {
    let g = FiniteGroup::symmetric3();
    assert!(FiniteGSpace::regular(&g).is_free());
    assert!(!FiniteGSpace::point(&g).is_free());
    assert!(FiniteGSpace::point(&FiniteGroup::trivial()).is_free());
}

#[test]
fn invalid_actions_are_rejected() {
    let g = z(2);
    let labels = vec!["a".to_string(), "b".to_string()];
    // identity moves a point
    let bad = FiniteGSpace::new("bad", g.clone(), labels.clone(), vec![vec![1, 0], vec![0, 1]]);
    assert!(matches!(bad, Err(ClassicError::InvalidAction(_))));
    let swap = FiniteGSpace::new("swap", g, labels, vec![vec![0, 1], vec![1, 0]]).unwrap();
    assert!(swap.is_free());
    let g3 = z(3);
    // 0 -> 1 -> 0 is not a ℤ/3 action
    let bad = FiniteGSpace::new("bad", g3, vec!["a".into(), "b".into()], vec![vec![0, 1, 0], vec![1, 0, 1]]);
    assert!(bad.is_err());
}

#[test]
fn grid_parsing() {
    assert_eq!(parse_grid("0,0.5,1").unwrap(), default_grid());
    assert_eq!(parse_grid("1, 1/2, 0, 0.5").unwrap(), default_grid());
    assert!(parse_grid("0,0.5").is_err());
    assert!(parse_grid("0,2,1").is_err());
}

#[test]
fn z2_join_counts() {
    let x = FiniteGSpace::regular(&z(2));
    let j = build_join(&x, &x, &default_grid()).unwrap();
    assert_eq!(j.layer_counts(), vec![2, 4, 2]);
    assert_eq!(j.num_classes(), 8);
    assert!(check_free(&j));
    assert!(j.is_idempotent());
}

#[test]
fn cone_and_suspension_layers() {
    let g = z(2);
    let x = FiniteGSpace::regular(&g);
    // one-point Y: the t = 0 layer is the apex
    let cone = build_join(&x, &FiniteGSpace::point(&g), &default_grid()).unwrap();
    assert_eq!(cone.layer_counts(), vec![1, 2, 2]);
    let two = FiniteGSpace::trivial(&g, 2);
    let s = build_join(&x, &two, &default_grid()).unwrap();
    assert_eq!(s.layer_counts(), vec![2, 4, 2]);
}

#[test]
fn group_mismatch() {
    let x = FiniteGSpace::regular(&z(2));
    let y = FiniteGSpace::regular(&z(3));
    assert!(matches!(build_join(&x, &y, &default_grid()), Err(ClassicError::GroupMismatch(..))));
}

#[test]
fn join_prime_counts() {
    let x = FiniteGSpace::regular(&z(2));
    let j = build_join_prime(&x, &default_grid()).unwrap();
    assert_eq!(j.layer_counts(), vec![2, 4, 2]);
    let s3 = FiniteGroup::symmetric3();
    let j = build_join_prime(&FiniteGSpace::regular(&s3), &default_grid()).unwrap();
    assert_eq!(*j.layer_counts().last().unwrap(), 6);
    assert!(j.is_idempotent());
}

#[test]
fn trivial_group_models_coincide() {
    let g = FiniteGroup::trivial();
    let x = FiniteGSpace::trivial(&g, 3);
    let grid = parse_grid("0,1/3,2/3,1").unwrap();
    let j = build_join(&x, &FiniteGSpace::regular(&g), &grid).unwrap();
    let p = build_join_prime(&x, &grid).unwrap();
    assert_eq!(j.layer_counts(), p.layer_counts());
    for ti in 0..grid.len() {
        for xi in 0..3 {
            assert_eq!(j.class_of(ti, xi, 0), p.class_of(ti, xi, 0));
        }
    }
    assert!(check_map_eq6(&x, &grid).unwrap().passed());
    assert!(check_free(&j));
}

#[test]
fn identification_map_for_small_groups() {
    for g in FiniteGroup::all_up_to_order_6() {
        let rep = check_map_eq6(&FiniteGSpace::regular(&g), &default_grid()).unwrap();
        assert!(rep.passed(), "{}: {rep:?}", g.name());
    }
    let rep = check_map_eq6(&FiniteGSpace::regular(&z(2)), &default_grid()).unwrap();
    assert_eq!(rep.layers.iter().map(|l| l.classes).sum::<usize>(), 8);
}

#[test]
fn identification_map_with_non_free_x() {
    let g = z(3);
    let mut x = FiniteGSpace::regular(&g);
    x = build_join(&x, &FiniteGSpace::point(&g), &default_grid()).unwrap().as_gspace();
    assert!(!x.is_free());
    assert!(check_map_eq6(&x, &default_grid()).unwrap().passed());
}

#[test]
fn free_inputs_give_free_joins() {
    for g in FiniteGroup::all_up_to_order_6() {
        let x = FiniteGSpace::regular(&g);
        assert!(check_free(&build_join(&x, &x, &default_grid()).unwrap()), "{}", g.name());
        assert!(check_free(&build_join_prime(&x, &default_grid()).unwrap()), "{}", g.name());
    }
}

#[test]
fn fixed_points_survive() {
    let g = z(2);
    let pt = FiniteGSpace::point(&g);
    let x = FiniteGSpace::regular(&g);
    // fixed class in the t = 1 layer, indexed by the fixed point of X
    let j = build_join(&pt, &x, &default_grid()).unwrap();
    let (c, _) = j.fixed_class().unwrap();
    assert_eq!(j.layer_of(c), 2);
    // both factors fixed: interior classes are fixed too
    let j = build_join(&pt, &pt, &default_grid()).unwrap();
    assert!((0..j.num_classes()).any(|c| j.layer_of(c) == 1 && j.act(c, 1) == c));
    assert!(!check_free(&j));
}

#[test]
fn census() {
    let rep = iterated_join_sphere_census(4, &default_grid()).unwrap();
    let totals: Vec<usize> = rep.stages.iter().map(|s| s.classes).collect();
    // c₀ = 2, c_{n+1} = 2 + 2·c_n + c_n on {0, ½, 1}
    let mut expected = vec![2usize];
    for _ in 0..4 {
        let c = *expected.last().unwrap();
        expected.push(2 + 2 * c + c);
    }
    assert_eq!(totals, expected);
    assert_eq!(totals, vec![2, 8, 26, 80, 242]);
    assert_eq!(rep.stages[1].layers, vec![2, 4, 2]);
    assert!(rep.all_free());
    assert!(matches!(iterated_join_sphere_census(5, &default_grid()), Err(ClassicError::TooDeep(5))));
}

#[test]
fn as_gspace_is_valid() {
    let x = FiniteGSpace::regular(&FiniteGroup::symmetric3());
    let j = build_join(&x, &x, &default_grid()).unwrap();
    let s = j.as_gspace();
    let again = FiniteGSpace::new("copy", s.group().clone(), s.labels().to_vec(), s.action.clone()).unwrap();
    assert_eq!(again.len(), j.num_classes());
}
