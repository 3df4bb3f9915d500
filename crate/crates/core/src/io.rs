//! JSON instance files.
//!
//! Every file carries `"schema_version": "1"` and a `"kind"` tag selecting
//! the payload. Elements are bitmasks over atoms, points are indices into
//! the `points` list.

use serde::{Deserialize, Serialize};

use crate::adjacency::AdjacencySpace;
use crate::boolean::{BooleanAlgebra, BooleanHom};
use crate::duality::PcsMorphism;
use crate::error::{Error, Result};
use crate::mask::{self, Mask};
use crate::precontact::{
    normalize_relation, PcaMorphism, PrecontactAlgebra, RawRelation, RelationKernel,
};
use crate::structures::{validate_cs, validate_pcs, TwoContactSpace, TwoPrecontactSpace};
use crate::topology::{FiniteSpace, MereotopologicalPair};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub schema_version: String,
    #[serde(flatten)]
    pub instance: Instance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Instance {
    Algebra(AlgebraDto),
    Pca(PcaDto),
    Space(SpaceDto),
    Pair(PairDto),
    Pcs(PcsDto),
    Cs(PairDto),
    Mereo(MereoDto),
    Morphism(MorphismDto),
    Adjacency(AdjacencyDto),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraDto {
    pub atoms: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcaDto {
    pub algebra: AlgebraDto,
    #[serde(default)]
    pub kernel: Vec<(usize, usize)>,
    /// Pairs of elements; normalized to a kernel and merged with `kernel`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<Vec<(Mask, Mask)>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceDto {
    pub points: Vec<String>,
    pub closed_base: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairDto {
    pub space: SpaceDto,
    pub x0: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PcsDto {
    pub space: SpaceDto,
    pub x0: Vec<usize>,
    pub relation: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MereoDto {
    pub space: SpaceDto,
    /// Members of the subalgebra of regular closed sets, as point lists.
    pub region: Vec<Vec<usize>>,
}

/// A morphism between two `pca` or two `pcs` instances. For algebras `map`
/// sends each target atom to a source atom; for spaces each source point to
/// a target point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MorphismDto {
    pub source: Box<Instance>,
    pub target: Box<Instance>,
    pub map: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdjacencyDto {
    pub cells: Vec<String>,
    #[serde(rename = "R")]
    pub r: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topology: Option<SpaceDto>,
}

/// A parsed and validated instance. Axiom failures are not errors here;
/// objects carry their own reports.
#[derive(Debug, Clone)]
pub enum Model {
    Algebra(BooleanAlgebra),
    Pca(PrecontactAlgebra),
    Space(FiniteSpace),
    Pair(FiniteSpace, Mask),
    Pcs(TwoPrecontactSpace),
    Cs(TwoContactSpace),
    Mereo(MereotopologicalPair),
    PcaMorphism(PcaMorphism),
    PcsMorphism(PcsMorphism),
    Adjacency(AdjacencySpace),
}

impl Instance {
    pub fn kind(&self) -> &'static str {
        match self {
            Instance::Algebra(_) => "algebra",
            Instance::Pca(_) => "pca",
            Instance::Space(_) => "space",
            Instance::Pair(_) => "pair",
            Instance::Pcs(_) => "pcs",
            Instance::Cs(_) => "cs",
            Instance::Mereo(_) => "mereo",
            Instance::Morphism(_) => "morphism",
            Instance::Adjacency(_) => "adjacency",
        }
    }

    pub fn build(&self) -> Result<Model> {
        Ok(match self {
            Instance::Algebra(a) => Model::Algebra(BooleanAlgebra::new(a.atoms)?),
            Instance::Pca(p) => Model::Pca(p.build()?),
            Instance::Space(s) => Model::Space(s.build()?),
            Instance::Pair(p) => {
                let space = p.space.build()?;
                let x0 = indices(&p.x0, space.len(), "x0")?;
                Model::Pair(space, x0)
            }
            Instance::Pcs(p) => Model::Pcs(p.build()?),
            Instance::Cs(p) => {
                let space = p.space.build()?;
                let x0 = indices(&p.x0, space.len(), "x0")?;
                Model::Cs(validate_cs(space, x0)?)
            }
            Instance::Mereo(m) => {
                let space = m.space.build()?;
                let members = m
                    .region
                    .iter()
                    .map(|r| indices(r, space.len(), "region"))
                    .collect::<Result<Vec<_>>>()?;
                Model::Mereo(MereotopologicalPair::new(space, &members)?)
            }
            Instance::Morphism(m) => match (m.source.build()?, m.target.build()?) {
                (Model::Pca(s), Model::Pca(t)) => {
                    let hom = BooleanHom::new(s.algebra(), t.algebra(), m.map.clone())?;
                    Model::PcaMorphism(PcaMorphism::new(hom, s, t)?)
                }
                (Model::Pcs(s), Model::Pcs(t)) => {
                    Model::PcsMorphism(PcsMorphism::new(s, t, m.map.clone())?)
                }
                _ => {
                    return Err(Error::Parse(
                        "morphism source and target must both be pca or both be pcs".into(),
                    ))
                }
            },
            Instance::Adjacency(a) => {
                let sp = AdjacencySpace::new(a.cells.clone(), a.r.iter().copied())?;
                match &a.topology {
                    Some(t) => Model::Adjacency(sp.with_topology(t.build()?)?),
                    None => Model::Adjacency(sp),
                }
            }
        })
    }
}

fn indices(list: &[usize], n: usize, field: &str) -> Result<Mask> {
    if let Some(&bad) = list.iter().find(|&&i| i >= n) {
        return Err(Error::Parse(format!(
            "{field}: index {bad} out of range for {n} points"
        )));
    }
    Ok(mask::from_indices(list.iter().copied()))
}

fn index_list(m: Mask) -> Vec<usize> {
    mask::ones(m).collect()
}

impl PcaDto {
    pub fn build(&self) -> Result<PrecontactAlgebra> {
        let alg = BooleanAlgebra::new(self.algebra.atoms)?;
        let mut kernel = RelationKernel::new(alg, self.kernel.iter().copied())?;
        if let Some(raw) = &self.relation {
            let extra = normalize_relation(&RawRelation::new(alg, raw.iter().copied())?)?;
            let rows = kernel
                .rows()
                .iter()
                .zip(extra.rows())
                .map(|(a, b)| a | b)
                .collect();
            kernel = RelationKernel::from_rows(alg, rows)?;
        }
        Ok(PrecontactAlgebra::new(kernel))
    }
}

impl From<&PrecontactAlgebra> for PcaDto {
    fn from(p: &PrecontactAlgebra) -> Self {
        PcaDto {
            algebra: AlgebraDto {
                atoms: p.atom_count(),
            },
            kernel: p.kernel().pairs(),
            relation: None,
        }
    }
}

impl SpaceDto {
    pub fn build(&self) -> Result<FiniteSpace> {
        let n = self.points.len();
        let base = self
            .closed_base
            .iter()
            .map(|b| indices(b, n, "closed_base"))
            .collect::<Result<Vec<_>>>()?;
        FiniteSpace::from_closed_base(self.points.clone(), &base)
    }
}

impl From<&FiniteSpace> for SpaceDto {
    /// Point closures form a closed base.
    fn from(s: &FiniteSpace) -> Self {
        let mut base: Vec<Mask> = s.point_closures().to_vec();
        base.sort_by(|a, b| mask::support_order(*a, *b));
        base.dedup();
        SpaceDto {
            points: s.names().to_vec(),
            closed_base: base.into_iter().map(index_list).collect(),
        }
    }
}

impl PcsDto {
    pub fn build(&self) -> Result<TwoPrecontactSpace> {
        let space = self.space.build()?;
        let n = space.len();
        let x0 = indices(&self.x0, n, "x0")?;
        let mut rows = vec![0; n];
        for &(x, y) in &self.relation {
            if x >= n || y >= n {
                return Err(Error::Parse(format!(
                    "relation: pair ({x},{y}) out of range"
                )));
            }
            rows[x] |= mask::bit(y);
        }
        validate_pcs(space, x0, &rows)
    }
}

impl From<&TwoPrecontactSpace> for PcsDto {
    fn from(p: &TwoPrecontactSpace) -> Self {
        let relation = (0..p.space().len())
            .flat_map(|x| mask::ones(p.relation()[x]).map(move |y| (x, y)))
            .collect();
        PcsDto {
            space: p.space().into(),
            x0: index_list(p.x0()),
            relation,
        }
    }
}

impl From<&PcsMorphism> for MorphismDto {
    fn from(f: &PcsMorphism) -> Self {
        MorphismDto {
            source: Box::new(Instance::Pcs(f.source().into())),
            target: Box::new(Instance::Pcs(f.target().into())),
            map: f.map().to_vec(),
        }
    }
}

impl From<&PcaMorphism> for MorphismDto {
    fn from(f: &PcaMorphism) -> Self {
        MorphismDto {
            source: Box::new(Instance::Pca(f.source().into())),
            target: Box::new(Instance::Pca(f.target().into())),
            map: f.hom().atom_map().to_vec(),
        }
    }
}

impl From<&AdjacencySpace> for AdjacencyDto {
    fn from(a: &AdjacencySpace) -> Self {
        AdjacencyDto {
            cells: a.names().to_vec(),
            r: a.pairs(),
            topology: a.topology().map(Into::into),
        }
    }
}

impl Model {
    pub fn to_instance(&self) -> Instance {
        match self {
            Model::Algebra(a) => Instance::Algebra(AlgebraDto {
                atoms: a.atom_count(),
            }),
            Model::Pca(p) => Instance::Pca(p.into()),
            Model::Space(s) => Instance::Space(s.into()),
            Model::Pair(s, x0) => Instance::Pair(PairDto {
                space: s.into(),
                x0: index_list(*x0),
            }),
            Model::Pcs(p) => Instance::Pcs(p.into()),
            Model::Cs(c) => Instance::Cs(PairDto {
                space: c.space().into(),
                x0: index_list(c.x0()),
            }),
            Model::Mereo(m) => Instance::Mereo(MereoDto {
                space: m.space().into(),
                region: m.region().members().into_iter().map(index_list).collect(),
            }),
            Model::PcaMorphism(f) => Instance::Morphism(f.into()),
            Model::PcsMorphism(f) => Instance::Morphism(f.into()),
            Model::Adjacency(a) => Instance::Adjacency(a.into()),
        }
    }
}

/// Parses a file, checking the schema version. Errors carry the line and
/// column of the problem.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let file: InstanceFile = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let msg = msg.split(" at line ").next().unwrap_or_default();
        Error::Parse(format!("line {} column {}: {msg}", e.line(), e.column()))
    })?;
    if file.schema_version != SCHEMA_VERSION {
        return Err(Error::Parse(format!(
            "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
            file.schema_version
        )));
    }
    Ok(file.instance)
}

pub fn to_json(instance: &Instance) -> String {
    let file = InstanceFile {
        schema_version: SCHEMA_VERSION.into(),
        instance: instance.clone(),
    };
    serde_json::to_string_pretty(&file).expect("instances always serialize")
}
