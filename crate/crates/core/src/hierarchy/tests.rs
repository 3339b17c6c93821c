use super::*;
use crate::coxeter::{CoxeterSystem, Order};
use crate::davis::tests::{davis, pentagon};

fn dihedral(m: Order) -> CoxeterSystem {
    CoxeterSystem::from_fn(vec!["a".into(), "b".into()], |_, _| m).unwrap()
}

fn line_family(r: usize) -> (ChamberComplex, WallFamily) {
    let w = dihedral(Order::Infinite);
    let u = davis(&w, r);
    let walls = u.walls().unwrap();
    let q = FiniteQuotient::from_permutations(&w, "a: (1 2)\nb: (1 2)\n").unwrap();
    let family = WallFamily::from_quotient(&u, &walls, &q);
    (u, family)
}

#[test]
fn line_cut_in_the_middle() {
    let w = dihedral(Order::Infinite);
    let u = davis(&w, 1);
    let walls = u.walls().unwrap();
    assert_eq!(walls.len(), 2);
    let once = u.cut_open(&walls[0].panels).unwrap();
    assert_eq!(once.chamber_components().len(), 2);
    let real = once.realize().unwrap();
    assert_eq!(real.complex.components().len(), 2);
    assert!(matches!(
        once.cut_open(&walls[0].panels),
        Err(Error::PanelNotActive(_))
    ));
}

#[test]
fn line_hierarchy_with_index_two_subgroup() {
    let (u, family) = line_family(3);
    assert_eq!(family.len(), 2);
    let trace = run_hierarchy(&u, &family, false).unwrap();
    assert!(trace.pass, "{trace:#?}");
    assert_eq!(trace.steps.len(), 2);
    assert_eq!(trace.terminal.components, 7);
    for s in &trace.steps {
        assert!(s.mayer_vietoris.pass);
        let mv = &s.mayer_vietoris;
        assert_eq!(mv.chi_m, mv.chi_n - mv.chi_f);
    }
}

#[test]
fn hexagon_cut_wall_by_wall() {
    let w = dihedral(Order::Finite(3));
    let u = davis(&w, 3);
    let walls = u.walls().unwrap();
    let family = WallFamily::singletons(&u, &walls);
    let trace = run_hierarchy(&u, &family, false).unwrap();
    assert!(trace.pass, "{trace:#?}");
    assert_eq!(trace.steps.len(), 3);
    assert_eq!(trace.terminal.components, 6);
    assert_eq!(trace.steps[0].components_after, 2);
}

#[test]
fn pentagon_hierarchy_mod_three() {
    let w = pentagon();
    let u = davis(&w, 2);
    let walls = u.walls().unwrap();
    let q = FiniteQuotient::reflection_mod_p(&w, 3).unwrap();
    let family = WallFamily::from_quotient(&u, &walls, &q);
    let trace = run_hierarchy(&u, &family, false).unwrap();
    assert!(trace.pass);
    assert_eq!(trace.terminal.components, u.chamber_count());
    assert!(trace.steps.iter().all(|s| s.mayer_vietoris.exact));
}

#[test]
fn crossing_walls_in_one_class_are_not_tidy() {
    let w = CoxeterSystem::from_fn(vec!["a".into(), "b".into(), "c".into()], |_, _| {
        Order::Finite(3)
    })
    .unwrap();
    let u = davis(&w, 2);
    let walls = u.walls().unwrap();
    let family = WallFamily::from_quotient(&u, &walls, &FiniteQuotient::trivial(&w));
    let cert = check_tidy(&u, &family).unwrap();
    assert!(!cert.pass);
    assert!(!cert.classes_acyclic.witnesses.is_empty());
    assert!(matches!(
        run_hierarchy(&u, &family, false),
        Err(Error::TidyViolation { step: 0, .. })
    ));
    let forced = run_hierarchy(&u, &family, true).unwrap();
    assert!(forced.overridden);
    assert!(!forced.pass);
}

#[test]
fn order_does_not_change_the_end_state() {
    let w = dihedral(Order::Finite(3));
    let u = davis(&w, 3);
    let family = WallFamily::singletons(&u, &u.walls().unwrap());
    let a = run_hierarchy(&u, &family, false).unwrap();
    let b = run_hierarchy(&u, &family.reordered(&[2, 0, 1]).unwrap(), false).unwrap();
    assert_eq!(a.terminal.components, b.terminal.components);
    assert_eq!(
        a.terminal_stage().chamber_components(),
        b.terminal_stage().chamber_components()
    );
    assert!(family.reordered(&[0, 0, 1]).is_err());
    assert!(family.reordered(&[0, 1]).is_err());
}

#[test]
fn induced_hierarchies() {
    let (u, family) = line_family(3);
    let trace = run_hierarchy(&u, &family, false).unwrap();
    let after_first = &trace.stages()[1];
    let halves = after_first.chamber_components();
    assert!(halves.len() >= 2);
    let big = halves.iter().max_by_key(|c| c.len()).unwrap();
    let induced = induced_hierarchy(&trace, big, None).unwrap();
    assert_eq!(induced.steps.len(), 1);
    assert!(induced.pass);

    let single = vec![u.members()[0]];
    let empty = induced_hierarchy(&trace, &single, None).unwrap();
    assert!(empty.steps.is_empty());
    assert!(empty.terminal.pass);

    let scattered = vec![u.members()[0], u.members()[3]];
    assert!(matches!(
        induced_hierarchy(&trace, &scattered, None),
        Err(Error::NotAComponent(_))
    ));
}

#[test]
fn induced_hierarchy_on_a_pentagon_piece_rechecks_tidiness() {
    let w = pentagon();
    let u = davis(&w, 2);
    let q = FiniteQuotient::reflection_mod_p(&w, 3).unwrap();
    let family = WallFamily::from_quotient(&u, &u.walls().unwrap(), &q);
    let trace = run_hierarchy(&u, &family, false).unwrap();
    let m1 = &trace.stages()[1];
    let piece = m1.chamber_components().into_iter().max_by_key(Vec::len).unwrap();
    let induced = induced_hierarchy(&trace, &piece, Some(&q)).unwrap();
    assert!(induced.initial_tidy.pass);
    assert!(induced.pass);
    assert_eq!(induced.stabilizer.as_deref(), Some(&["1".to_string()][..]));
}
