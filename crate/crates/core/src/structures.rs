//! 2-precontact spaces, 2-contact spaces, Stone 2-spaces, their canonical
//! constructions from algebras, and mereocompactness.

use std::collections::HashMap;

use crate::adjacency::is_closed_relation;
use crate::boolean::{element_name, BooleanAlgebra};
use crate::error::{Error, Result};
use crate::limits::limits;
use crate::mask::{self, Mask};
use crate::precontact::{Clan, PrecontactAlgebra, RelationKernel};
use crate::report::DualityReport;
use crate::topology::{
    rc_pair_of, u_point_of_pair, FiniteSpace, MereotopologicalPair, RegionAlgebra,
};

/// A space `X`, a subset `X0`, a relation `R` on `X0`, and the verdict of
/// each axiom. Construction never fails on axiom violations; they are
/// recorded in [`report`](Self::report).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPrecontactSpace {
    space: FiniteSpace,
    x0: Mask,
    relation: Vec<Mask>,
    report: DualityReport,
}

fn check_subset(space: &FiniteSpace, x0: Mask) -> Result<()> {
    if x0 & !space.full() != 0 {
        return Err(Error::Domain("X0 has points outside the space".into()));
    }
    Ok(())
}

/// Components of `X0` and the closures of their unions.
fn component_names(space: &FiniteSpace, comps: &[Mask], element: Mask) -> String {
    space.format(mask::ones(element).fold(0, |m, i| m | comps[i]))
}

/// Whether `X0` is a Stone subspace, i.e. discrete in the subspace topology.
fn x0_stone_failure(space: &FiniteSpace, x0: Mask) -> Option<String> {
    mask::ones(x0).find_map(|x| {
        let c = space.point_closure(x) & x0 & !mask::bit(x);
        (c != 0).then(|| {
            format!(
                "{} lies in the closure of {} within X0",
                space.format(c),
                space.names()[x]
            )
        })
    })
}

fn density_failure(space: &FiniteSpace, x0: Mask) -> Option<String> {
    let cl = space.closure(x0);
    (cl != space.full()).then(|| format!("closure of X0 is {}", space.format(cl)))
}

fn t0_failure(space: &FiniteSpace) -> Option<String> {
    let n = space.len();
    (0..n).find_map(|x| {
        (0..x)
            .find(|&y| space.point_closure(x) == space.point_closure(y))
            .map(|y| {
                format!(
                    "{} and {} have the same closure",
                    space.names()[y],
                    space.names()[x]
                )
            })
    })
}

fn as_check(failure: Option<String>) -> std::result::Result<(), String> {
    match failure {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// Every clique of `kernel#` is among `traces`; otherwise the first missing one.
fn unrealized_clan(kernel: &RelationKernel, traces: &[Mask]) -> Option<Mask> {
    PrecontactAlgebra::new(kernel.clone())
        .clans()
        .into_iter()
        .map(|c| c.support)
        .find(|s| !traces.contains(s))
}

/// `C_R` lifted to the components of `X0`.
fn component_kernel(comps: &[Mask], relation: &[Mask]) -> RelationKernel {
    let k = comps.len();
    let alg = BooleanAlgebra::with_limit(k, 63).expect("at most 64 points");
    let rows = comps
        .iter()
        .map(|&ci| {
            let reach = mask::ones(ci).fold(0, |m, x| m | relation[x]);
            (0..k)
                .filter(|&j| comps[j] & reach != 0)
                .fold(0, |m, j| m | mask::bit(j))
        })
        .collect();
    RelationKernel::from_rows(alg, rows).expect("rows within components")
}

pub fn validate_pcs(space: FiniteSpace, x0: Mask, relation: &[Mask]) -> Result<TwoPrecontactSpace> {
    check_subset(&space, x0)?;
    if relation.len() != space.len() {
        return Err(Error::Domain(
            "one relation row per point is required".into(),
        ));
    }
    if let Some(x) = (0..space.len())
        .find(|&x| relation[x] & !x0 != 0 || (!mask::has(x0, x) && relation[x] != 0))
    {
        return Err(Error::Domain(format!(
            "relation leaves X0 at point {}",
            space.names()[x]
        )));
    }
    let mut report = DualityReport::new("2-precontact space axioms");
    let pcs1 = density_failure(&space, x0).or_else(|| t0_failure(&space));
    report.record("PCS1", as_check(pcs1));

    let pcs2 = x0_stone_failure(&space, x0).or_else(|| {
        let sub = space.subspace(x0);
        let idx: Vec<usize> = mask::ones(x0).collect();
        let rows: Vec<Mask> = idx
            .iter()
            .map(|&x| {
                idx.iter()
                    .enumerate()
                    .filter(|(_, &y)| mask::has(relation[x], y))
                    .fold(0, |m, (i, _)| m | mask::bit(i))
            })
            .collect();
        (!is_closed_relation(&rows, &sub)).then(|| "R is not closed in X0 × X0".to_string())
    });
    report.record("PCS2", as_check(pcs2));

    let rc = rc_pair_of(&space, x0);
    report.record("PCS3", as_check(space.closed_base_failure(rc.atoms())));

    let comps = space.components(x0);
    let cr = component_kernel(&comps, relation);
    let sharp = cr.sharp();
    let delta = rc.intersection_kernel();
    let pcs4 = delta
        .pairs()
        .into_iter()
        .find(|&(i, j)| !sharp.contains(i, j))
        .map(|(i, j)| format!("({},{})", space.format(comps[i]), space.format(comps[j])));
    report.record("PCS4", as_check(pcs4));

    let traces: Vec<Mask> = (0..space.len()).map(|x| rc.sigma(x)).collect();
    let pcs5 = unrealized_clan(&cr, &traces).map(|s| {
        format!(
            "clan generated by {} is no Γ_x",
            component_names(&space, &comps, s)
        )
    });
    report.record("PCS5", as_check(pcs5));

    Ok(TwoPrecontactSpace {
        space,
        x0,
        relation: relation.to_vec(),
        report,
    })
}

impl TwoPrecontactSpace {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn x0(&self) -> Mask {
        self.x0
    }

    /// `relation()[x]` is the set of `y` with `x R y`.
    pub fn relation(&self) -> &[Mask] {
        &self.relation
    }

    pub fn report(&self) -> &DualityReport {
        &self.report
    }

    pub fn is_valid(&self) -> bool {
        self.report.passed()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        mask::has(self.relation[x], y)
    }

    pub fn components(&self) -> Vec<Mask> {
        self.space.components(self.x0)
    }

    /// `RC(X, X0)`, atom `i` being the closure of component `i` of `X0`.
    pub fn rc_pair(&self) -> RegionAlgebra {
        rc_pair_of(&self.space, self.x0)
    }

    /// `C_R` on `CO(X0)`.
    pub fn cr_kernel(&self) -> RelationKernel {
        component_kernel(&self.components(), &self.relation)
    }

    /// Support of `Γ_{x,X0}` over the components of `X0`.
    pub fn gamma(&self, x: usize) -> Mask {
        self.rc_pair().sigma(x)
    }

    fn require_valid(&self) -> Result<()> {
        match self.report.first_failure() {
            None => Ok(()),
            Some(c) => Err(Error::Validation(format!(
                "({}): {}",
                c.name,
                c.witness.clone().unwrap_or_default()
            ))),
        }
    }
}

/// `(RC(X, X0), C_X)` with `F C_X G ⟺ ∃x ∈ F∩X0, y ∈ G∩X0. x R y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalAlgebra {
    pub pca: PrecontactAlgebra,
    /// Point sets of the atoms.
    pub region: RegionAlgebra,
}

pub fn canonical_pca_of_pcs(pcs: &TwoPrecontactSpace) -> Result<CanonicalAlgebra> {
    pcs.require_valid()?;
    let region = pcs.rc_pair();
    let k = region.atom_count();
    let alg = BooleanAlgebra::new(k)?;
    // Atom i meets X0 exactly in component i.
    let comps = pcs.components();
    let rows = component_kernel(&comps, &pcs.relation).rows().to_vec();
    let pca = PrecontactAlgebra::new(RelationKernel::from_rows(alg, rows)?);
    Ok(CanonicalAlgebra { pca, region })
}

/// The canonical 2-precontact space of an algebra: points are clans, `X0`
/// the ultrafilters, closed base `g(a) = {Γ : a ∈ Γ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSpace {
    pub algebra: PrecontactAlgebra,
    pub clans: Vec<Clan>,
    pub pcs: TwoPrecontactSpace,
    index: HashMap<Mask, usize>,
}

impl CanonicalSpace {
    pub fn point_of(&self, support: Mask) -> Option<usize> {
        self.index.get(&support).copied()
    }

    /// `g_B(a)`, the clans containing `a`.
    pub fn g(&self, a: Mask) -> Mask {
        self.clans
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(a))
            .fold(0, |m, (i, _)| m | mask::bit(i))
    }
}

pub fn clan_name(support: Mask) -> String {
    format!("Γ{}", mask::fmt_set(support))
}

pub fn canonical_pcs_of_pca(pca: &PrecontactAlgebra) -> Result<CanonicalSpace> {
    let n = pca.atom_count();
    if n == 0 {
        return Err(Error::Degenerate(
            "the one-element algebra has no ultrafilters to serve as X0".into(),
        ));
    }
    let clans = pca.clans();
    limits().check_points(clans.len())?;
    let names: Vec<String> = clans.iter().map(|c| clan_name(c.support)).collect();
    let base: Vec<Mask> = pca
        .algebra()
        .masks()
        .map(|a| {
            clans
                .iter()
                .enumerate()
                .filter(|(_, c)| c.contains(a))
                .fold(0, |m, (i, _)| m | mask::bit(i))
        })
        .take(if n <= limits().max_exhaustive_atoms {
            usize::MAX
        } else {
            0
        })
        .collect();
    let space = if base.is_empty() {
        // Too many elements to list the base: use the point closures it
        // generates, cl{Γ} = {Δ : S_Γ ⊆ S_Δ}.
        let closures = clans
            .iter()
            .map(|c| {
                clans
                    .iter()
                    .enumerate()
                    .filter(|(_, d)| c.support & !d.support == 0)
                    .fold(0, |m, (i, _)| m | mask::bit(i))
            })
            .collect();
        FiniteSpace::from_closures(names, closures)?
    } else {
        FiniteSpace::from_closed_base(names, &base)?
    };
    // Canonical order puts the n singleton supports first.
    let x0 = mask::full(n);
    let mut relation = vec![0; clans.len()];
    relation[..n].copy_from_slice(pca.kernel().rows());
    let pcs = validate_pcs(space, x0, &relation)?;
    let index = clans
        .iter()
        .enumerate()
        .map(|(i, c)| (c.support, i))
        .collect();
    Ok(CanonicalSpace {
        algebra: pca.clone(),
        clans,
        pcs,
        index,
    })
}

fn cs_checks(space: &FiniteSpace, x0: Mask, subject: &str) -> DualityReport {
    let mut report = DualityReport::new(subject);
    report.record("density", as_check(density_failure(space, x0)));
    report.record("CS1", as_check(t0_failure(space)));
    report.record("CS2", as_check(x0_stone_failure(space, x0)));
    let rc = rc_pair_of(space, x0);
    report.record("CS3", as_check(space.closed_base_failure(rc.atoms())));
    report
}

/// A topological pair with the verdict of each 2-contact axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoContactSpace {
    space: FiniteSpace,
    x0: Mask,
    report: DualityReport,
}

impl TwoContactSpace {
    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn x0(&self) -> Mask {
        self.x0
    }

    pub fn report(&self) -> &DualityReport {
        &self.report
    }

    pub fn is_valid(&self) -> bool {
        self.report.passed()
    }

    pub fn rc_pair(&self) -> RegionAlgebra {
        rc_pair_of(&self.space, self.x0)
    }
}

pub fn validate_cs(space: FiniteSpace, x0: Mask) -> Result<TwoContactSpace> {
    check_subset(&space, x0)?;
    let mut report = cs_checks(&space, x0, "2-contact space axioms");
    let rc = rc_pair_of(&space, x0);
    let comps = space.components(x0);
    let traces: Vec<Mask> = (0..space.len()).map(|x| rc.sigma(x)).collect();
    let cs4 = unrealized_clan(&rc.intersection_kernel(), &traces).map(|s| {
        format!(
            "δ-clan generated by {} is no Γ_x",
            component_names(&space, &comps, s)
        )
    });
    report.record("CS4", as_check(cs4));
    Ok(TwoContactSpace { space, x0, report })
}

/// A topological pair with the verdict of each Stone 2-space axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoneTwoSpace {
    pub space: FiniteSpace,
    pub x0: Mask,
    pub report: DualityReport,
}

pub fn validate_s2s(space: FiniteSpace, x0: Mask) -> Result<StoneTwoSpace> {
    check_subset(&space, x0)?;
    let mut report = cs_checks(&space, x0, "Stone 2-space axioms");
    let rc = rc_pair_of(&space, x0);
    let comps = space.components(x0);
    let traces: Vec<Mask> = (0..space.len()).map(|x| rc.sigma(x)).collect();
    let s2s4 = (1..=mask::full(comps.len()))
        .find(|s| !traces.contains(s))
        .map(|s| {
            format!(
                "grill generated by {} is no Γ_x",
                component_names(&space, &comps, s)
            )
        });
    report.record("S2S4", as_check(s2s4));
    Ok(StoneTwoSpace { space, x0, report })
}

/// The canonical 2-contact space of a contact algebra: its canonical
/// 2-precontact space without the relation.
pub fn canonical_cs_of_ca(pca: &PrecontactAlgebra) -> Result<TwoContactSpace> {
    if !pca.axiom_report().is_contact {
        return Err(Error::Precondition(format!(
            "not a contact algebra: {}",
            pca.axiom_report()
                .witnesses
                .iter()
                .map(|(k, v)| format!("({k}) {v}"))
                .collect::<Vec<_>>()
                .join("; ")
        )));
    }
    let canon = canonical_pcs_of_pca(pca)?;
    validate_cs(canon.pcs.space().clone(), canon.pcs.x0())
}

/// `x R y` iff the closures of any clopen neighbourhoods of `x` and `y` in
/// `X0` meet. Rows are indexed by points of `X`.
pub fn contact_relation_of_pair(pair: &TwoContactSpace) -> Result<Vec<Mask>> {
    if let Some(c) = pair.report.first_failure() {
        return Err(Error::Validation(format!("({}) fails", c.name)));
    }
    let space = &pair.space;
    let rc = pair.rc_pair();
    let comps = space.components(pair.x0);
    let k = comps.len();
    let comp_of = |x: usize| {
        comps
            .iter()
            .position(|&c| mask::has(c, x))
            .expect("x in X0")
    };
    let mut rows = vec![0; space.len()];
    let literal = k <= limits().max_exhaustive_atoms;
    for x in mask::ones(pair.x0) {
        for y in mask::ones(pair.x0) {
            let (cx, cy) = (comp_of(x), comp_of(y));
            let related = if literal {
                let u = |c: usize| (0..=mask::full(k)).filter(move |f| mask::has(*f, c));
                u(cx).all(|f| u(cy).all(|g| rc.to_points(f) & rc.to_points(g) != 0))
            } else {
                rc.atoms()[cx] & rc.atoms()[cy] != 0
            };
            if related {
                rows[x] |= mask::bit(y);
            }
        }
    }
    Ok(rows)
}

/// Every reflexive symmetric relation on `X0` turning the pair into a valid
/// 2-precontact space, by exhaustive search.
pub fn pcs_relations_of_pair(space: &FiniteSpace, x0: Mask) -> Result<Vec<Vec<Mask>>> {
    let pts: Vec<usize> = mask::ones(x0).collect();
    let edges: Vec<(usize, usize)> = pts
        .iter()
        .enumerate()
        .flat_map(|(i, &x)| pts[i + 1..].iter().map(move |&y| (x, y)))
        .collect();
    limits().check_search(edges.len())?;
    let mut out = Vec::new();
    for code in 0u64..1 << edges.len() {
        let mut rows = vec![0; space.len()];
        for &x in &pts {
            rows[x] |= mask::bit(x);
        }
        for (e, &(x, y)) in edges.iter().enumerate() {
            if mask::has(code, e) {
                rows[x] |= mask::bit(y);
                rows[y] |= mask::bit(x);
            }
        }
        if validate_pcs(space.clone(), x0, &rows)?.is_valid() {
            out.push(rows);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MereocompactReport {
    /// `B` is a closed base of `X`.
    pub is_space: bool,
    pub is_t0: bool,
    pub is_mereocompact: bool,
    /// The u-points of `(X, B)`.
    pub u_set: Mask,
    /// A second subset with the properties of `u_set`, if one exists.
    pub uniqueness_witness: Option<Mask>,
    pub checks: DualityReport,
}

/// Every clan of `(B, C_X ∩ B²)` is some `σ_x^B`.
pub fn is_mereocompact(pair: &MereotopologicalPair) -> bool {
    mereocompact_failure(pair).is_none()
}

fn mereocompact_failure(pair: &MereotopologicalPair) -> Option<Mask> {
    let traces: Vec<Mask> = (0..pair.space().len()).map(|x| pair.sigma(x)).collect();
    unrealized_clan(&pair.region().intersection_kernel(), &traces)
}

/// Dense Stone subsets `Y` with `RC(X, Y) = B`, by exhaustive search.
fn subsets_realizing(pair: &MereotopologicalPair) -> Result<Vec<Mask>> {
    let space = pair.space();
    limits().check_search(space.len())?;
    let mut target: Vec<Mask> = pair.region().atoms().to_vec();
    target.sort_unstable();
    Ok((1..=space.full())
        .filter(|&y| {
            density_failure(space, y).is_none() && x0_stone_failure(space, y).is_none() && {
                let mut atoms = rc_pair_of(space, y).atoms().to_vec();
                atoms.sort_unstable();
                atoms == target
            }
        })
        .collect())
}

pub fn mereo_report(pair: &MereotopologicalPair) -> Result<MereocompactReport> {
    let space = pair.space();
    let region = pair.region();
    let n = space.len();
    let mut checks = DualityReport::new("mereotopological pair");
    let base_failure = space.closed_base_failure(region.atoms());
    let is_space = base_failure.is_none();
    checks.record("closed base", as_check(base_failure));
    let t0 = t0_failure(space);
    let is_t0 = t0.is_none();
    checks.record("T0", as_check(t0));
    let mc = mereocompact_failure(pair);
    let is_mereocompact = mc.is_none();
    checks.record(
        "mereocompact",
        as_check(mc.map(|s| format!("clan with support {} is no σ_x", mask::fmt_set(s)))),
    );
    let mut u_set = 0;
    for x in 0..n {
        if u_point_of_pair(pair, x)? {
            u_set |= mask::bit(x);
        }
    }
    // u-points are exactly the points whose trace is an ultrafilter.
    let ultra = (0..n)
        .filter(|&x| pair.sigma(x).count_ones() == 1)
        .fold(0, |m, x| m | mask::bit(x));
    checks.push(
        "u-points have ultrafilter traces",
        ultra == u_set,
        Some(format!(
            "u-points {} vs {}",
            space.format(u_set),
            space.format(ultra)
        )),
    );
    let mut uniqueness_witness = None;
    if is_space && is_t0 && is_mereocompact {
        checks.record("u-set dense", as_check(density_failure(space, u_set)));
        checks.record("u-set Stone", as_check(x0_stone_failure(space, u_set)));
        let mut got: Vec<Mask> = rc_pair_of(space, u_set).atoms().to_vec();
        let mut want: Vec<Mask> = region.atoms().to_vec();
        got.sort_unstable();
        want.sort_unstable();
        checks.push(
            "RC(X,u) = B",
            got == want,
            Some(format!("RC(X,u) atoms {got:?} vs B atoms {want:?}")),
        );
        let realizing = subsets_realizing(pair)?;
        uniqueness_witness = realizing.iter().copied().find(|&y| y != u_set);
        checks.push(
            "u-set unique",
            realizing == [u_set],
            Some(match uniqueness_witness {
                Some(y) => format!("{} also qualifies", space.format(y)),
                None => "u-set itself does not qualify".into(),
            }),
        );
        let cs = validate_cs(space.clone(), u_set)?;
        checks.record(
            "(X,u) is a 2-contact space",
            match cs.report.first_failure() {
                None => Ok(()),
                Some(c) => Err(format!(
                    "({}) {}",
                    c.name,
                    c.witness.clone().unwrap_or_default()
                )),
            },
        );
    }
    Ok(MereocompactReport {
        is_space,
        is_t0,
        is_mereocompact,
        u_set,
        uniqueness_witness,
        checks,
    })
}

/// Names of the atoms of `RC(X,X0)` as point sets, for messages.
pub fn describe_region(space: &FiniteSpace, region: &RegionAlgebra, element: Mask) -> String {
    if region.atom_count() <= 6 {
        format!(
            "{} = {}",
            element_name(element, region.atom_count()),
            space.format(region.to_points(element))
        )
    } else {
        space.format(region.to_points(element))
    }
}
