//! Shared inputs for the benchmarks in `benches/`.

use contactlab::random::random_kernel;
use contactlab::{PrecontactAlgebra, RandomSpec};

/// `count` seeded algebras on `atoms` atoms at density 0.4.
pub fn algebras(atoms: usize, count: usize) -> Vec<PrecontactAlgebra> {
    (0..count as u64)
        .map(|seed| {
            random_kernel(&RandomSpec::new(atoms, 0.4, seed)).expect("atoms within the cap")
        })
        .collect()
}
