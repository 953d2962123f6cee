use std::time::Instant;

use stmod_core::ghost_number::{ghost_number_bounds, GroupUpper};
use stmod_core::{Field, GroupExpr};

fn c(n: usize) -> GroupExpr {
    GroupExpr::Cyclic(n)
}

fn prod(v: &[usize]) -> GroupExpr {
    GroupExpr::Product(v.iter().map(|&n| c(n)).collect())
}

fn check(e: GroupExpr, p: u32, lo: usize, hi: usize) {
    let t = Instant::now();
    let b = ghost_number_bounds(&e, Field::new(p).unwrap(), 8, 8).unwrap();
    eprintln!("{e:?}: [{}, {}] via {} in {:?}", b.lower, b.upper, b.upper_method, t.elapsed());
    assert_eq!((b.lower, b.upper), (lo, hi), "{e:?}");
}

#[test]
fn cyclic_rows() {
    check(c(2), 2, 1, 1);
    check(c(3), 3, 1, 1);
    check(c(4), 2, 2, 2);
    check(c(5), 5, 2, 2);
    check(c(9), 3, 4, 4);
    check(c(8), 2, 4, 4);
}

#[test]
fn elementary_abelian_rows() {
    check(prod(&[2, 2]), 2, 2, 2);
    check(prod(&[2, 2, 2]), 2, 3, 3);
    check(prod(&[3, 3]), 3, 3, 3);
    check(prod(&[2, 4]), 2, 4, 4);
}

#[test]
fn dihedral_and_quaternion_rows() {
    check(GroupExpr::Dihedral(8), 2, 3, 3);
    check(GroupExpr::Dihedral(16), 2, 5, 5);
    check(GroupExpr::Quaternion8, 2, 3, 4);
}

#[test]
fn order_27() {
    check(prod(&[3, 9]), 3, 9, 9);
    check(prod(&[3, 3, 3]), 3, 5, 6);
    check(c(27), 3, 13, 13);
}

#[test]
fn theorem_upper_bounds_are_labelled() {
    let b = ghost_number_bounds(&GroupExpr::Dihedral(8), Field::new(2).unwrap(), 4, 4).unwrap();
    assert!(matches!(b.upper_method, GroupUpper::Theorem(_)));
    let b = ghost_number_bounds(&c(9), Field::new(3).unwrap(), 4, 4).unwrap();
    assert_eq!(b.upper_method, GroupUpper::CyclicExhaustive);
    assert_eq!(b.modules.len(), 8);
    assert!(b.modules.iter().all(|m| m.is_tight()));
    let b = ghost_number_bounds(&c(27), Field::new(3).unwrap(), 4, 4).unwrap();
    let gl: Vec<usize> = b.modules.iter().map(|m| m.lower).collect();
    let want: Vec<usize> = (1..27).map(|d: usize| d.min(27 - d)).collect();
    assert_eq!(gl, want);
    assert!(b.modules.iter().all(|m| m.is_tight()));
}
