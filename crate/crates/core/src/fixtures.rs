//! Small named instances used across tests, the CLI, and benchmarks.

use crate::boolean::BooleanAlgebra;
use crate::mask::Mask;
use crate::precontact::{rho_l, rho_s, PrecontactAlgebra};
use crate::structures::{validate_pcs, TwoPrecontactSpace};
use crate::topology::FiniteSpace;

fn algebra(n: usize) -> BooleanAlgebra {
    BooleanAlgebra::new(n).expect("fixture sizes are small")
}

/// Point names `x0, x1, …`.
pub fn point_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// The four-element algebra with the overlap contact.
pub fn b4_rho_s() -> PrecontactAlgebra {
    rho_s(algebra(2))
}

/// The four-element algebra with the largest contact.
pub fn b4_rho_l() -> PrecontactAlgebra {
    rho_l(algebra(2))
}

/// The eight-element algebra with kernel `{(0,1), (1,2)}`.
pub fn b8_path() -> PrecontactAlgebra {
    PrecontactAlgebra::from_pairs(algebra(3), [(0, 1), (1, 2)]).expect("pairs in range")
}

pub fn x_l_names() -> Vec<String> {
    ["Γ1", "Γ2", "Γ3"].iter().map(|s| s.to_string()).collect()
}

/// Three points where `Γ3` lies in the closure of both `Γ1` and `Γ2`.
pub fn x_l_space() -> FiniteSpace {
    FiniteSpace::from_closed_base(x_l_names(), &[0, 0b101, 0b110, 0b111]).expect("valid fixture")
}

/// `(X_L, {Γ1, Γ2}, X0²)`.
pub fn x_l_pcs() -> TwoPrecontactSpace {
    validate_pcs(x_l_space(), 0b011, &[0b011, 0b011, 0]).expect("well-formed fixture")
}

/// `(X_L, {Γ1, Γ2}, diagonal)`, which fails the closure-contact axiom.
pub fn x_l_diagonal() -> TwoPrecontactSpace {
    validate_pcs(x_l_space(), 0b011, &[0b001, 0b010, 0]).expect("well-formed fixture")
}

pub fn discrete(n: usize) -> FiniteSpace {
    FiniteSpace::discrete(point_names(n)).expect("fixture sizes are small")
}

pub fn indiscrete(n: usize) -> FiniteSpace {
    FiniteSpace::indiscrete(point_names(n)).expect("fixture sizes are small")
}

/// `(X, X, D_X)` on a discrete space.
pub fn discrete_pcs(n: usize) -> TwoPrecontactSpace {
    let rows: Vec<Mask> = (0..n).map(crate::mask::bit).collect();
    validate_pcs(discrete(n), crate::mask::full(n), &rows).expect("well-formed fixture")
}

/// Two points, open sets `∅, {x1}, X`.
pub fn sierpinski() -> FiniteSpace {
    FiniteSpace::from_closed_base(point_names(2), &[0, 0b01, 0b11]).expect("valid fixture")
}
