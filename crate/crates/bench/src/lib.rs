//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stmod_core::constructions::cyclic_module;
use stmod_core::groups::{FiniteGroup, GroupExpr};
use stmod_core::modules::{free_module, sub_or_quotient, Which};
use stmod_core::{Field, FpMatrix, GModule};

pub fn random_matrix(field: Field, rows: usize, cols: usize, seed: u64) -> FpMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = FpMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, rng.gen_range(0..field.p()) as u8);
        }
    }
    m
}

pub fn group(e: &GroupExpr) -> Arc<FiniteGroup> {
    FiniteGroup::build(e).expect("benchmark groups are valid")
}

pub fn c3xc3() -> Arc<FiniteGroup> {
    group(&GroupExpr::Product(vec![GroupExpr::Cyclic(3), GroupExpr::Cyclic(3)]))
}

/// A quotient of `kG ⊕ kG` by a random cyclic submodule.
pub fn random_quotient(g: &Arc<FiniteGroup>, field: Field, seed: u64) -> GModule {
    let base = free_module(g, field, 2);
    let w = base.spin(&random_matrix(field, 1, base.dim(), seed));
    sub_or_quotient(&base, w.basis(), Which::Quotient).expect("quotient exists").0
}

pub fn cyclic(n: usize, p: u32, d: usize) -> GModule {
    let f = Field::new(p).expect("prime");
    cyclic_module(&group(&GroupExpr::Cyclic(n)), f, d).expect("d < n")
}
