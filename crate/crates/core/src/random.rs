//! Seeded random instances. The same spec always yields the same instance.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::boolean::{BooleanAlgebra, BooleanHom};
use crate::error::{Error, Result};
use crate::mask;
use crate::precontact::{PcaMorphism, PrecontactAlgebra, RelationKernel};

/// Rejection sampling gives up after this many draws.
const MAX_ATTEMPTS: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Constraint {
    #[default]
    None,
    /// Reflexive and symmetric.
    Contact,
    /// Connected kernel graph, by rejection sampling.
    Connected,
    /// Complete algebras. Every finite algebra is complete, so this adds
    /// nothing beyond the contact axioms.
    Complete,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RandomSpec {
    pub atoms: usize,
    pub density: f64,
    pub seed: u64,
    pub constraint: Constraint,
}

impl RandomSpec {
    pub fn new(atoms: usize, density: f64, seed: u64) -> Self {
        RandomSpec {
            atoms,
            density,
            seed,
            constraint: Constraint::None,
        }
    }

    pub fn with_constraint(mut self, constraint: Constraint) -> Self {
        self.constraint = constraint;
        self
    }

    fn check(&self) -> Result<BooleanAlgebra> {
        if !(0.0..=1.0).contains(&self.density) {
            return Err(Error::Domain(format!(
                "density {} is outside [0, 1]",
                self.density
            )));
        }
        BooleanAlgebra::new(self.atoms)
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn draw_kernel(alg: BooleanAlgebra, density: f64, rng: &mut ChaCha8Rng) -> RelationKernel {
    let n = alg.atom_count();
    let rows = (0..n)
        .map(|_| {
            (0..n)
                .filter(|_| rng.random_bool(density))
                .fold(0, |m, q| m | mask::bit(q))
        })
        .collect();
    RelationKernel::from_rows(alg, rows).expect("rows within the algebra")
}

pub fn random_kernel(spec: &RandomSpec) -> Result<PrecontactAlgebra> {
    let alg = spec.check()?;
    let mut rng = rng(spec.seed);
    random_kernel_with(alg, spec.density, spec.constraint, &mut rng)
}

pub fn random_kernel_with(
    alg: BooleanAlgebra,
    density: f64,
    constraint: Constraint,
    rng: &mut ChaCha8Rng,
) -> Result<PrecontactAlgebra> {
    match constraint {
        Constraint::None => Ok(PrecontactAlgebra::new(draw_kernel(alg, density, rng))),
        Constraint::Contact | Constraint::Complete => {
            let k = draw_kernel(alg, density, rng);
            let rows = k
                .rows()
                .iter()
                .zip(k.transpose().rows())
                .enumerate()
                .map(|(p, (a, b))| a | b | mask::bit(p))
                .collect();
            Ok(PrecontactAlgebra::new(RelationKernel::from_rows(
                alg, rows,
            )?))
        }
        Constraint::Connected => {
            for _ in 0..MAX_ATTEMPTS {
                let k = draw_kernel(alg, density, rng);
                if k.is_weakly_connected() {
                    return Ok(PrecontactAlgebra::new(k));
                }
            }
            Err(Error::Precondition(format!(
                "no connected kernel in {MAX_ATTEMPTS} draws at density {density}"
            )))
        }
    }
}

/// A random morphism out of `source` into a fresh algebra with
/// `target_atoms` atoms. The target kernel is drawn among the pairs the
/// morphism condition allows, so the result is always valid.
pub fn random_morphism(
    source: &PrecontactAlgebra,
    target_atoms: usize,
    density: f64,
    rng: &mut ChaCha8Rng,
) -> Result<PcaMorphism> {
    let n = source.atom_count();
    if n == 0 && target_atoms > 0 {
        return Err(Error::Domain(
            "the one-element algebra only maps to itself".into(),
        ));
    }
    let target = BooleanAlgebra::new(target_atoms)?;
    let atom_map: Vec<usize> = (0..target_atoms).map(|_| rng.random_range(0..n)).collect();
    let rows = (0..target_atoms)
        .map(|q1| {
            (0..target_atoms)
                .filter(|&q2| {
                    source.kernel().contains(atom_map[q1], atom_map[q2]) && rng.random_bool(density)
                })
                .fold(0, |m, q2| m | mask::bit(q2))
        })
        .collect();
    let tgt = PrecontactAlgebra::new(RelationKernel::from_rows(target, rows)?);
    let hom = BooleanHom::new(source.algebra(), target, atom_map)?;
    PcaMorphism::new(hom, source.clone(), tgt)
}
