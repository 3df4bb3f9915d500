//! The duality functors between precontact algebras and 2-precontact spaces,
//! the natural isomorphisms `g` and `t`, and the specializations to
//! subcategories.

use crate::adjacency::AdjacencySpace;
use crate::boolean::{all_homs, BooleanAlgebra, BooleanHom};
use crate::error::{Error, Result};
use crate::limits::limits;
use crate::mask::{self, Mask};
use crate::precontact::{
    find_pca_isomorphism, is_pca_isomorphism, PcaMorphism, PrecontactAlgebra, RelationKernel,
};
use crate::report::DualityReport;
use crate::structures::{
    canonical_cs_of_ca, canonical_pca_of_pcs, canonical_pcs_of_pca, contact_relation_of_pair,
    mereo_report, CanonicalAlgebra, CanonicalSpace, TwoPrecontactSpace,
};
use crate::topology::{is_c_semiregular, MereotopologicalPair, RegionAlgebra};

/// A continuous map of 2-precontact spaces sending `X0` into `X0′` and
/// preserving the relation on `X0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcsMorphism {
    source: TwoPrecontactSpace,
    target: TwoPrecontactSpace,
    map: Vec<usize>,
}

/// First reason `map` is not a morphism `source → target`.
pub fn pcs_morphism_failure(
    source: &TwoPrecontactSpace,
    target: &TwoPrecontactSpace,
    map: &[usize],
) -> Option<String> {
    let (xs, ys) = (source.space(), target.space());
    if map.len() != xs.len() {
        return Some(format!(
            "map has {} entries for {} points",
            map.len(),
            xs.len()
        ));
    }
    if let Some(x) = (0..xs.len()).find(|&x| map[x] >= ys.len()) {
        return Some(format!("{} is sent outside the target", xs.names()[x]));
    }
    let name = |x: usize| xs.names()[x].as_str();
    let tname = |y: usize| ys.names()[y].as_str();
    for y in 0..xs.len() {
        for x in mask::ones(xs.point_closure(y)) {
            if !mask::has(ys.point_closure(map[y]), map[x]) {
                return Some(format!(
                    "not continuous: {} ∈ cl{{{}}} but {} ∉ cl{{{}}}",
                    name(x),
                    name(y),
                    tname(map[x]),
                    tname(map[y])
                ));
            }
        }
    }
    if let Some(x) = mask::ones(source.x0()).find(|&x| !mask::has(target.x0(), map[x])) {
        return Some(format!(
            "{} ∈ X0 is sent to {} ∉ X0′",
            name(x),
            tname(map[x])
        ));
    }
    for x in mask::ones(source.x0()) {
        for y in mask::ones(source.relation()[x]) {
            if !target.related(map[x], map[y]) {
                return Some(format!(
                    "{} R {} but not {} R′ {}",
                    name(x),
                    name(y),
                    tname(map[x]),
                    tname(map[y])
                ));
            }
        }
    }
    None
}

impl PcsMorphism {
    pub fn new(
        source: TwoPrecontactSpace,
        target: TwoPrecontactSpace,
        map: Vec<usize>,
    ) -> Result<Self> {
        if let Some(w) = pcs_morphism_failure(&source, &target, &map) {
            return Err(Error::Validation(w));
        }
        Ok(PcsMorphism {
            source,
            target,
            map,
        })
    }

    fn unchecked(source: TwoPrecontactSpace, target: TwoPrecontactSpace, map: Vec<usize>) -> Self {
        PcsMorphism {
            source,
            target,
            map,
        }
    }

    pub fn identity(space: &TwoPrecontactSpace) -> Self {
        PcsMorphism {
            source: space.clone(),
            target: space.clone(),
            map: (0..space.space().len()).collect(),
        }
    }

    pub fn source(&self) -> &TwoPrecontactSpace {
        &self.source
    }

    pub fn target(&self) -> &TwoPrecontactSpace {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn image(&self, set: Mask) -> Mask {
        mask::ones(set).fold(0, |m, x| m | mask::bit(self.map[x]))
    }

    pub fn preimage(&self, set: Mask) -> Mask {
        (0..self.map.len())
            .filter(|&x| mask::has(set, self.map[x]))
            .fold(0, |m, x| m | mask::bit(x))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PcsMorphism) -> Result<PcsMorphism> {
        if self.target != next.source {
            return Err(Error::DomainMismatch("morphisms are not composable".into()));
        }
        Ok(PcsMorphism {
            source: self.source.clone(),
            target: next.target.clone(),
            map: self.map.iter().map(|&y| next.map[y]).collect(),
        })
    }

    /// Bijective, with continuous inverse, `X0` onto `X0′`, and reflecting `R`.
    pub fn isomorphism_failure(&self) -> Option<String> {
        let (xs, ys) = (self.source.space(), self.target.space());
        if xs.len() != ys.len() || self.image(xs.full()) != ys.full() {
            return Some("map is not a bijection".into());
        }
        for x in 0..xs.len() {
            for y in 0..xs.len() {
                if mask::has(ys.point_closure(self.map[y]), self.map[x])
                    && !mask::has(xs.point_closure(y), x)
                {
                    return Some(format!(
                        "inverse not continuous at ({},{})",
                        xs.names()[x],
                        xs.names()[y]
                    ));
                }
            }
        }
        if self.image(self.source.x0()) != self.target.x0() {
            return Some("X0 is not mapped onto X0′".into());
        }
        for x in mask::ones(self.source.x0()) {
            for y in mask::ones(self.source.x0()) {
                if self.target.related(self.map[x], self.map[y]) && !self.source.related(x, y) {
                    return Some(format!(
                        "{} R′ {} is not reflected",
                        ys.names()[self.map[x]],
                        ys.names()[self.map[y]]
                    ));
                }
            }
        }
        None
    }

    pub fn is_isomorphism(&self) -> bool {
        self.isomorphism_failure().is_none()
    }

    /// Whether `f⁻¹(H) = cl(X0 ∩ f⁻¹(H))` for every `H` in `RC(Y, Y0)`.
    /// Continuity alone does not force this once `Y` is not Hausdorff.
    pub fn regularity_failure(&self) -> Option<String> {
        let (xs, ys) = (self.source.space(), self.target.space());
        self.target.rc_pair().atoms().iter().find_map(|&h| {
            let pre = self.preimage(h);
            let hull = xs.closure(self.source.x0() & pre);
            (pre != hull).then(|| {
                format!(
                    "f⁻¹({}) = {} but cl(X0 ∩ f⁻¹(H)) = {}",
                    ys.format(h),
                    xs.format(pre),
                    xs.format(hull)
                )
            })
        })
    }

    pub fn is_regular(&self) -> bool {
        self.regularity_failure().is_none()
    }
}

/// A natural-isomorphism component together with its verification report.
#[derive(Debug, Clone)]
pub struct Iso<T> {
    pub map: T,
    pub report: DualityReport,
}

/// `G^a` on objects: the canonical 2-precontact space.
pub fn ga_object(pca: &PrecontactAlgebra) -> Result<CanonicalSpace> {
    canonical_pcs_of_pca(pca)
}

/// `G^t` on objects: the canonical precontact algebra `RC(X, X0)`.
pub fn gt_object(pcs: &TwoPrecontactSpace) -> Result<CanonicalAlgebra> {
    canonical_pca_of_pcs(pcs)
}

/// `G^a(φ) : G^a(B′) → G^a(A)`, `Γ ↦ φ⁻¹(Γ)`.
pub fn ga_morphism(phi: &PcaMorphism) -> Result<PcsMorphism> {
    let src = ga_object(phi.target())?;
    let tgt = ga_object(phi.source())?;
    ga_morphism_between(phi, &src, &tgt)
}

/// As [`ga_morphism`], reusing already computed duals of the target and
/// source of `φ`.
pub fn ga_morphism_between(
    phi: &PcaMorphism,
    dual_target: &CanonicalSpace,
    dual_source: &CanonicalSpace,
) -> Result<PcsMorphism> {
    let map = dual_target
        .clans
        .iter()
        .map(|c| {
            let s = phi.hom().preimage_support(c.support);
            dual_source.point_of(s).ok_or_else(|| {
                Error::Precondition(format!(
                    "preimage of clan {} has support {}, which is no clan",
                    mask::fmt_set(c.support),
                    mask::fmt_set(s)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    PcsMorphism::new(dual_target.pcs.clone(), dual_source.pcs.clone(), map)
}

/// `G^t(f) : G^t(T) → G^t(S)` for `f : S → T`, sending `cl(F′)` to
/// `cl(X0 ∩ f⁻¹(F′))`. On atoms it maps each component of `X0` to the
/// component of `Y0` containing its image.
pub fn gt_morphism(f: &PcsMorphism) -> Result<PcaMorphism> {
    let gs = gt_object(&f.source)?;
    let gtt = gt_object(&f.target)?;
    gt_morphism_between(f, &gtt, &gs)
}

pub fn gt_morphism_between(
    f: &PcsMorphism,
    dual_target: &CanonicalAlgebra,
    dual_source: &CanonicalAlgebra,
) -> Result<PcaMorphism> {
    let xc = f.source.components();
    let yc = f.target.components();
    let atom_map = xc
        .iter()
        .map(|&c| {
            let img = f.image(c);
            yc.iter().position(|&d| img & !d == 0).ok_or_else(|| {
                Error::Precondition(format!(
                    "image of component {} spreads over several components",
                    f.source.space().format(c)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let hom = BooleanHom::new(
        dual_target.pca.algebra(),
        dual_source.pca.algebra(),
        atom_map,
    )?;
    PcaMorphism::new(hom, dual_target.pca.clone(), dual_source.pca.clone())
}

/// `G^t(f)` computed literally from `cl_X(X0 ∩ f⁻¹(F′))` on every element,
/// compared with [`gt_morphism`]. Returns the first disagreeing element.
pub fn gt_literal_failure(f: &PcsMorphism, psi: &PcaMorphism) -> Option<String> {
    let (xs, ys) = (f.source.space(), f.target.space());
    let (rx, ry) = (f.source.rc_pair(), f.target.rc_pair());
    elements(ry.atom_count()).find_map(|h| {
        let lhs = xs.closure(f.source.x0() & f.preimage(ry.to_points(h)));
        let rhs = rx.to_points(psi.hom().apply_mask(h));
        (lhs != rhs).then(|| {
            format!(
                "F′ = {}: cl(X0 ∩ f⁻¹F′) = {} but G^t(f)(F′) = {}",
                ys.format(ry.to_points(h)),
                xs.format(lhs),
                xs.format(rhs)
            )
        })
    })
}

/// Every element when the algebra is small, otherwise the atoms and 0, 1;
/// homomorphisms are determined by their values on atoms.
fn elements(atoms: usize) -> Box<dyn Iterator<Item = Mask>> {
    if atoms <= limits().max_exhaustive_atoms {
        Box::new(0..=mask::full(atoms))
    } else {
        Box::new(
            std::iter::once(0)
                .chain((0..atoms).map(mask::bit))
                .chain(std::iter::once(mask::full(atoms))),
        )
    }
}

fn record_failure(report: &mut DualityReport, name: &str, failure: Option<String>) {
    report.record(name, failure.map_or(Ok(()), Err));
}

fn t_map(pcs: &TwoPrecontactSpace, dual: &CanonicalSpace) -> Result<Vec<usize>> {
    let rc = pcs.rc_pair();
    (0..pcs.space().len())
        .map(|x| {
            let s = rc.sigma(x);
            dual.point_of(s).ok_or_else(|| {
                Error::Validation(format!(
                    "σ_{} has support {}, which is no clan",
                    pcs.space().names()[x],
                    mask::fmt_set(s)
                ))
            })
        })
        .collect()
}

/// `t_X : S → G^a(G^t(S))`, `x ↦ σ_x`.
pub fn t_iso(pcs: &TwoPrecontactSpace) -> Result<Iso<PcsMorphism>> {
    let alg = gt_object(pcs)?;
    let dual = ga_object(&alg.pca)?;
    let map = t_map(pcs, &dual)?;
    let mut report = DualityReport::new(format!("t for a {}-point space", pcs.space().len()));
    let failure = pcs_morphism_failure(pcs, &dual.pcs, &map);
    let t = PcsMorphism::unchecked(pcs.clone(), dual.pcs.clone(), map);
    let is_morphism = failure.is_none();
    record_failure(&mut report, "t_X is a PCS-morphism", failure);
    record_failure(
        &mut report,
        "t_X is a PCS-isomorphism",
        if is_morphism {
            t.isomorphism_failure()
        } else {
            Some("not a morphism".into())
        },
    );
    Ok(Iso { map: t, report })
}

/// `g_B : A → G^t(G^a(A))`, `a ↦ {Γ : a ∈ Γ}`.
pub fn g_iso(pca: &PrecontactAlgebra) -> Result<Iso<BooleanHom>> {
    let dual = ga_object(pca)?;
    let alg = gt_object(&dual.pcs)?;
    g_iso_with(pca, &dual, &alg)
}

fn g_hom(
    pca: &PrecontactAlgebra,
    dual: &CanonicalSpace,
    alg: &CanonicalAlgebra,
) -> Result<BooleanHom> {
    let atom_map = alg
        .region
        .atoms()
        .iter()
        .map(|&f| {
            (0..pca.atom_count())
                .find(|&p| dual.g(mask::bit(p)) == f)
                .ok_or_else(|| {
                    Error::Validation(format!(
                        "RC atom {} is no g_B(p)",
                        dual.pcs.space().format(f)
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;
    BooleanHom::new(pca.algebra(), alg.pca.algebra(), atom_map)
}

fn g_iso_with(
    pca: &PrecontactAlgebra,
    dual: &CanonicalSpace,
    alg: &CanonicalAlgebra,
) -> Result<Iso<BooleanHom>> {
    let space = dual.pcs.space();
    let mut report = DualityReport::new(format!("g for {pca}"));
    let hom = g_hom(pca, dual, alg)?;
    report.push("g_B is a Boolean isomorphism", hom.is_bijective(), None);
    let literal = elements(pca.atom_count()).find_map(|a| {
        let direct = dual.g(a);
        let via = alg.region.to_points(hom.apply_mask(a));
        (direct != via).then(|| {
            format!(
                "a = {}: {{Γ : a ∈ Γ}} = {} but the hom gives {}",
                mask::fmt_set(a),
                space.format(direct),
                space.format(via)
            )
        })
    });
    record_failure(&mut report, "g_B(a) = {Γ : a ∈ Γ}", literal);
    report.push(
        "g_B is a PCA-isomorphism onto G^t(G^a(B))",
        is_pca_isomorphism(&hom, pca, &alg.pca),
        Some(format!(
            "kernel {} vs {}",
            pca.kernel().display_pairs(),
            alg.pca.kernel().display_pairs()
        )),
    );
    let sharp = PrecontactAlgebra::new(pca.kernel().sharp());
    let delta = PrecontactAlgebra::new(alg.region.intersection_kernel());
    report.push(
        "g_B: (B,C#) ≅ (RC(X,X0),C_(X,X0))",
        is_pca_isomorphism(&hom, &sharp, &delta),
        Some(format!(
            "C# {} vs C_(X,X0) {}",
            sharp.kernel().display_pairs(),
            delta.kernel().display_pairs()
        )),
    );
    report.push(
        "RC(X) = RC(X,X0)",
        same_atoms(&space.rc_algebra(), &alg.region),
        Some("regular closed sets of X and of the pair differ".into()),
    );
    Ok(Iso { map: hom, report })
}

fn same_atoms(a: &RegionAlgebra, b: &RegionAlgebra) -> bool {
    let mut x = a.atoms().to_vec();
    let mut y = b.atoms().to_vec();
    x.sort_unstable();
    y.sort_unstable();
    x == y
}

/// Both natural isomorphisms on the algebra and on its dual.
pub fn roundtrip_pca(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    let mut report = DualityReport::new(format!("round trip of {pca}"));
    let dual = ga_object(pca)?;
    record_failure(
        &mut report,
        "G^a(B) is a 2-precontact space",
        dual.pcs
            .report()
            .first_failure()
            .map(|c| format!("({}) {}", c.name, c.witness.clone().unwrap_or_default())),
    );
    let alg = gt_object(&dual.pcs)?;
    report.absorb("g", g_iso_with(pca, &dual, &alg)?.report);
    report.absorb("t", t_iso(&dual.pcs)?.report);
    Ok(report)
}

pub fn roundtrip_pcs(pcs: &TwoPrecontactSpace) -> Result<DualityReport> {
    let mut report =
        DualityReport::new(format!("round trip of a {}-point space", pcs.space().len()));
    report.absorb("t", t_iso(pcs)?.report);
    let alg = gt_object(pcs)?;
    report.absorb("g", g_iso(&alg.pca)?.report);
    Ok(report)
}

/// The g-square `g_B′ ∘ φ = ψ♯ ∘ g_A` with `ψ = G^a(φ)`, `ψ♯ = G^t(ψ)`.
pub fn check_naturality_pca(phi: &PcaMorphism) -> Result<DualityReport> {
    let mut report = DualityReport::new("naturality of g");
    let da = ga_object(phi.source())?;
    let db = ga_object(phi.target())?;
    let psi = match ga_morphism_between(phi, &db, &da) {
        Ok(psi) => psi,
        Err(e) => {
            report.push("G^a(φ) is a PCS-morphism", false, Some(e.to_string()));
            return Ok(report);
        }
    };
    report.push("G^a(φ) is a PCS-morphism", true, None);
    let ga = gt_object(&da.pcs)?;
    let gb = gt_object(&db.pcs)?;
    let psi_sharp = gt_morphism_between(&psi, &ga, &gb)?;
    let failure = elements(phi.source().atom_count()).find_map(|a| {
        let left = db.g(phi.hom().apply_mask(a));
        let Some(ra) = ga.region.from_points(da.g(a)) else {
            return Some(format!("g_A({}) is not regular closed", mask::fmt_set(a)));
        };
        let right = gb.region.to_points(psi_sharp.hom().apply_mask(ra));
        (left != right).then(|| {
            format!(
                "a = {}: g(φ(a)) = {} but ψ♯(g(a)) = {}",
                mask::fmt_set(a),
                db.pcs.space().format(left),
                db.pcs.space().format(right)
            )
        })
    });
    record_failure(&mut report, "g_B′ ∘ φ = ψ♯ ∘ g_A", failure);
    Ok(report)
}

/// The t-square `f♯ ∘ t_X = t_Y ∘ f` with `f♯ = G^a(G^t(f))`, plus
/// `G^t(f)(H) = f⁻¹(H)` and the literal form of `G^t(f)`.
pub fn check_naturality_pcs(f: &PcsMorphism) -> Result<DualityReport> {
    let mut report = DualityReport::new("naturality of t");
    let gx = gt_object(&f.source)?;
    let gy = gt_object(&f.target)?;
    let psi = gt_morphism_between(f, &gy, &gx)?;
    record_failure(
        &mut report,
        "G^t(f) = cl(X0 ∩ f⁻¹(-))",
        gt_literal_failure(f, &psi),
    );
    record_failure(
        &mut report,
        "G^t(f)(H) = f⁻¹(H)",
        gt_preimage_failure(f, &psi),
    );
    let dx = ga_object(&gx.pca)?;
    let dy = ga_object(&gy.pca)?;
    let f_sharp = ga_morphism_between(&psi, &dx, &dy)?;
    let tx = t_map(&f.source, &dx)?;
    let ty = t_map(&f.target, &dy)?;
    let failure = (0..tx.len()).find_map(|x| {
        let (l, r) = (f_sharp.map[tx[x]], ty[f.map[x]]);
        (l != r).then(|| {
            format!(
                "x = {}: f♯(t(x)) = {} but t(f(x)) = {}",
                f.source.space().names()[x],
                dy.pcs.space().names()[l],
                dy.pcs.space().names()[r]
            )
        })
    });
    record_failure(&mut report, "f♯ ∘ t_X = t_Y ∘ f", failure);
    Ok(report)
}

fn gt_preimage_failure(f: &PcsMorphism, psi: &PcaMorphism) -> Option<String> {
    let (rx, ry) = (f.source.rc_pair(), f.target.rc_pair());
    elements(ry.atom_count()).find_map(|h| {
        let pre = f.preimage(ry.to_points(h));
        let img = rx.to_points(psi.hom().apply_mask(h));
        (pre != img).then(|| {
            format!(
                "H = {}: f⁻¹(H) = {} but G^t(f)(H) = {}",
                f.target.space().format(ry.to_points(h)),
                f.source.space().format(pre),
                f.source.space().format(img)
            )
        })
    })
}

/// `G^t(f)(H) = f⁻¹(H)` for one element `H` of `RC(Y, Y0)`.
pub fn gt_as_preimage(f: &PcsMorphism, h: Mask) -> Result<bool> {
    let psi = gt_morphism(f)?;
    let (rx, ry) = (f.source.rc_pair(), f.target.rc_pair());
    ry.algebra().check_mask(h)?;
    Ok(f.preimage(ry.to_points(h)) == rx.to_points(psi.hom().apply_mask(h)))
}

/// Composition is reversed by both functors, on one composable pair each.
pub fn check_functoriality_pca(phi: &PcaMorphism, psi: &PcaMorphism) -> Result<DualityReport> {
    let mut report = DualityReport::new("functoriality of G^a");
    let comp = phi.then(psi)?;
    let whole = ga_morphism(&comp)?;
    let parts = ga_morphism(psi)?.then(&ga_morphism(phi)?)?;
    report.push(
        "G^a(ψ∘φ) = G^a(φ)∘G^a(ψ)",
        whole.map == parts.map,
        Some(format!("{:?} vs {:?}", whole.map, parts.map)),
    );
    Ok(report)
}

pub fn check_functoriality_pcs(f: &PcsMorphism, g: &PcsMorphism) -> Result<DualityReport> {
    let mut report = DualityReport::new("functoriality of G^t");
    let comp = f.then(g)?;
    let whole = gt_morphism(&comp)?;
    let parts = gt_morphism(g)?.then(&gt_morphism(f)?)?;
    report.push(
        "G^t(g∘f) = G^t(f)∘G^t(g)",
        whole.hom().atom_map() == parts.hom().atom_map(),
        Some(format!(
            "{:?} vs {:?}",
            whole.hom().atom_map(),
            parts.hom().atom_map()
        )),
    );
    Ok(report)
}

pub fn enumerate_pca_morphisms(
    source: &PrecontactAlgebra,
    target: &PrecontactAlgebra,
) -> Vec<PcaMorphism> {
    all_homs(source.algebra(), target.algebra())
        .into_iter()
        .filter_map(|h| PcaMorphism::new(h, source.clone(), target.clone()).ok())
        .collect()
}

/// Point maps satisfying the morphism conditions, by backtracking in point
/// order. With `iso`, only bijections whose inverse also qualifies.
fn search_maps(
    source: &TwoPrecontactSpace,
    target: &TwoPrecontactSpace,
    iso: bool,
    first_only: bool,
) -> Result<Vec<Vec<usize>>> {
    let (xs, ys) = (source.space(), target.space());
    limits().check_search(xs.len())?;
    limits().check_search(ys.len())?;
    if iso && xs.len() != ys.len() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut map = Vec::with_capacity(xs.len());
    struct Ctx<'a> {
        s: &'a TwoPrecontactSpace,
        t: &'a TwoPrecontactSpace,
        iso: bool,
        first_only: bool,
    }
    fn fits(c: &Ctx, map: &[usize], y: usize) -> bool {
        let x = map.len();
        let (xs, ys) = (c.s.space(), c.t.space());
        let in_x0 = mask::has(c.s.x0(), x);
        if in_x0 && !mask::has(c.t.x0(), y)
            || c.iso && (in_x0 != mask::has(c.t.x0(), y) || map.contains(&y))
        {
            return false;
        }
        let both = |a: bool, b: bool| if c.iso { a == b } else { !a || b };
        let consistent = |z: usize, fz: usize| {
            both(xs.leq(x, z), ys.leq(y, fz))
                && both(xs.leq(z, x), ys.leq(fz, y))
                && (!in_x0
                    || !mask::has(c.s.x0(), z)
                    || both(c.s.related(x, z), c.t.related(y, fz))
                        && both(c.s.related(z, x), c.t.related(fz, y)))
        };
        (0..x).all(|z| consistent(z, map[z])) && consistent(x, y)
    }
    fn go(c: &Ctx, map: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if c.first_only && !out.is_empty() {
            return;
        }
        if map.len() == c.s.space().len() {
            out.push(map.clone());
            return;
        }
        for y in 0..c.t.space().len() {
            if fits(c, map, y) {
                map.push(y);
                go(c, map, out);
                map.pop();
            }
        }
    }
    go(
        &Ctx {
            s: source,
            t: target,
            iso,
            first_only,
        },
        &mut map,
        &mut out,
    );
    Ok(out)
}

pub fn enumerate_pcs_morphisms(
    source: &TwoPrecontactSpace,
    target: &TwoPrecontactSpace,
) -> Result<Vec<PcsMorphism>> {
    Ok(search_maps(source, target, false, false)?
        .into_iter()
        .map(|m| PcsMorphism::unchecked(source.clone(), target.clone(), m))
        .collect())
}

/// The morphisms that are also [regular](PcsMorphism::is_regular).
pub fn enumerate_regular_pcs_morphisms(
    source: &TwoPrecontactSpace,
    target: &TwoPrecontactSpace,
) -> Result<Vec<PcsMorphism>> {
    Ok(enumerate_pcs_morphisms(source, target)?
        .into_iter()
        .filter(PcsMorphism::is_regular)
        .collect())
}

pub fn find_pcs_isomorphism(
    source: &TwoPrecontactSpace,
    target: &TwoPrecontactSpace,
) -> Result<Option<PcsMorphism>> {
    Ok(search_maps(source, target, true, true)?
        .pop()
        .map(|m| PcsMorphism::unchecked(source.clone(), target.clone(), m)))
}

/// `|PCA(A, B′)|` against `|PCS(G^a(B′), G^a(A))|`, and whether `G^a` is a
/// bijection onto all morphisms and onto the regular ones.
pub fn homset_report(a: &PrecontactAlgebra, b: &PrecontactAlgebra) -> Result<DualityReport> {
    let mut report = DualityReport::new("hom-set bijection");
    let da = ga_object(a)?;
    let db = ga_object(b)?;
    let algebraic = enumerate_pca_morphisms(a, b);
    let spatial = enumerate_pcs_morphisms(&db.pcs, &da.pcs)?;
    let images = algebraic
        .iter()
        .map(|phi| ga_morphism_between(phi, &db, &da))
        .collect::<Result<Vec<_>>>()?;
    let mut image_maps: Vec<Vec<usize>> = images.iter().map(|m| m.map.clone()).collect();
    image_maps.sort();
    let distinct = image_maps.windows(2).all(|w| w[0] != w[1]);
    let mut all: Vec<Vec<usize>> = spatial.iter().map(|m| m.map.clone()).collect();
    all.sort();
    let mut regular: Vec<Vec<usize>> = spatial
        .iter()
        .filter(|m| m.is_regular())
        .map(|m| m.map.clone())
        .collect();
    regular.sort();
    report.push("G^a is injective on morphisms", distinct, None);
    record_failure(
        &mut report,
        "G^a(φ) is regular",
        images.iter().find_map(PcsMorphism::regularity_failure),
    );
    report.push(
        "G^a is onto the regular PCS hom-set",
        image_maps == regular,
        Some(format!(
            "images {image_maps:?} vs regular morphisms {regular:?}"
        )),
    );
    report.push(
        "|PCA(A,B′)| = |PCS(G^a(B′),G^a(A))|",
        algebraic.len() == all.len(),
        Some(format!(
            "{} algebra morphisms but {} space morphisms, e.g. {:?}",
            algebraic.len(),
            all.len(),
            all.iter().find(|m| !image_maps.contains(m))
        )),
    );
    Ok(report)
}

/// `F^t(X, X0, R) = (X0, R)` as a Stone adjacency space.
pub fn ft_object(pcs: &TwoPrecontactSpace) -> Result<AdjacencySpace> {
    let idx: Vec<usize> = mask::ones(pcs.x0()).collect();
    let names = idx
        .iter()
        .map(|&x| pcs.space().names()[x].clone())
        .collect();
    let rows = idx
        .iter()
        .map(|&x| {
            idx.iter()
                .enumerate()
                .filter(|(_, &y)| pcs.related(x, y))
                .fold(0, |m, (i, _)| m | mask::bit(i))
        })
        .collect();
    AdjacencySpace::from_rows(names, rows)?.with_topology(pcs.space().subspace(pcs.x0()))
}

/// `F^t(f) = f|X0`, in the renumbering of [`ft_object`].
pub fn ft_morphism(f: &PcsMorphism) -> Vec<usize> {
    let ty: Vec<usize> = mask::ones(f.target.x0()).collect();
    mask::ones(f.source.x0())
        .map(|x| {
            ty.iter()
                .position(|&y| y == f.map[x])
                .expect("X0 maps into X0′")
        })
        .collect()
}

/// Two morphisms that agree on `X0` but differ elsewhere.
pub fn faithfulness_violation(f: &PcsMorphism, g: &PcsMorphism) -> Option<String> {
    if f.source != g.source || f.target != g.target || ft_morphism(f) != ft_morphism(g) {
        return None;
    }
    (0..f.map.len())
        .find(|&x| f.map[x] != g.map[x])
        .map(|x| format!("agree on X0 but differ at {}", f.source.space().names()[x]))
}

/// The 2-precontact space determined by a Stone adjacency space.
#[derive(Debug, Clone)]
pub struct Reconstruction {
    pub dual: CanonicalSpace,
    pub report: DualityReport,
}

pub fn reconstruct_from_sas(sas: &AdjacencySpace) -> Result<Reconstruction> {
    if !sas.is_stone() {
        return Err(Error::Precondition(
            "cells must carry the discrete topology".into(),
        ));
    }
    let n = sas.len();
    let alg = BooleanAlgebra::new(n)?;
    let pca = PrecontactAlgebra::new(RelationKernel::from_rows(alg, sas.rows().to_vec())?);
    let dual = ga_object(&pca)?;
    let mut report = DualityReport::new("reconstruction from a Stone adjacency space");
    record_failure(
        &mut report,
        "result is a 2-precontact space",
        dual.pcs.report().first_failure().map(|c| c.name.clone()),
    );
    let back = ft_object(&dual.pcs)?;
    report.push(
        "F^t of the result is the input",
        back.rows() == sas.rows(),
        Some(format!("rows {:?} vs {:?}", back.rows(), sas.rows())),
    );
    Ok(Reconstruction { dual, report })
}

/// Whether a candidate space is isomorphic to the reconstruction.
pub fn reconstruction_matches(
    rec: &Reconstruction,
    candidate: &TwoPrecontactSpace,
) -> Result<Option<PcsMorphism>> {
    find_pcs_isomorphism(&rec.dual.pcs, candidate)
}

fn classify(pass: bool, subcategory: &'static str, test: &str) -> Result<()> {
    if pass {
        Ok(())
    } else {
        Err(Error::Classification {
            subcategory,
            test: test.into(),
        })
    }
}

fn is_diagonal(pca: &PrecontactAlgebra) -> bool {
    pca.kernel()
        .rows()
        .iter()
        .enumerate()
        .all(|(p, &r)| r == mask::bit(p))
}

fn is_full(pca: &PrecontactAlgebra) -> bool {
    let top = pca.algebra().top_mask();
    pca.kernel().rows().iter().all(|&r| r == top)
}

/// Boolean algebras with `ρ_s` map to discrete triples `(X, X, D_X)`.
pub fn stone_corollary(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    classify(is_diagonal(pca), "Bool", "C = ρ_s")?;
    let dual = ga_object(pca)?;
    let n = pca.atom_count();
    let space = dual.pcs.space();
    let mut report = DualityReport::new("Stone duality");
    report.push(
        "clans = ultrafilters",
        dual.clans.iter().all(|c| c.is_ultrafilter()) && dual.clans.len() == n,
        None,
    );
    report.push(
        "X0 = X",
        dual.pcs.x0() == space.full(),
        Some(format!("X0 = {}", space.format(dual.pcs.x0()))),
    );
    report.push(
        "R = D_X",
        (0..space.len()).all(|x| dual.pcs.relation()[x] == mask::bit(x)),
        None,
    );
    report.push("X is a Stone space", space.predicates().is_stone, None);
    Ok(report)
}

/// Boolean algebras with `ρ_l` map to `(X, X0, X0²)` with `X` connected.
pub fn connected_stone_corollary(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    classify(is_full(pca), "Boo", "C = ρ_l")?;
    let dual = ga_object(pca)?;
    let n = pca.atom_count();
    let space = dual.pcs.space();
    let x0 = dual.pcs.x0();
    let mut report = DualityReport::new("connected Stone duality");
    let supports: Vec<Mask> = dual.clans.iter().map(|c| c.support).collect();
    report.push(
        "clans = grills",
        supports.len() as u64 == mask::full(n)
            && (1..=mask::full(n)).all(|s| supports.contains(&s)),
        Some(format!(
            "{} clans for {} grills",
            supports.len(),
            mask::full(n)
        )),
    );
    report.push(
        "R = X0²",
        mask::ones(x0).all(|x| dual.pcs.relation()[x] == x0),
        None,
    );
    report.push("X is connected", space.predicates().is_connected, None);
    Ok(report)
}

fn axiom_summary(pca: &PrecontactAlgebra) -> String {
    pca.axiom_report()
        .witnesses
        .iter()
        .map(|(k, v)| format!("({k}) {v}"))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Contact algebras through the 2-contact space functors: the relation is
/// recovered from the pair alone.
pub fn contact_corollary(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    classify(pca.is_contact(), "CA", "Cref and Csym")?;
    let dual = ga_object(pca)?;
    let cs = canonical_cs_of_ca(pca)?;
    let mut report = DualityReport::new("contact duality");
    report.absorb("F^c", cs.report().clone());
    let recovered = contact_relation_of_pair(&cs)?;
    report.push(
        "R recovered from (X,X0) equals the dual relation",
        recovered == dual.pcs.relation(),
        Some(format!("{:?} vs {:?}", recovered, dual.pcs.relation())),
    );
    let delta = cs.rc_pair().contact_algebra();
    report.push(
        "F^d(F^c(B)) ≅ B",
        find_pca_isomorphism(pca, &delta).is_some(),
        Some(format!("C_(X,X0) = {}", delta.kernel().display_pairs())),
    );
    Ok(report)
}

/// Every finite algebra is complete, so the dual satisfies `RC(X) =
/// RC(X,X0)` and is C-semiregular.
pub fn complete_contact_corollary(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    classify(pca.is_contact(), "complete CA", "Cref and Csym")?;
    let dual = ga_object(pca)?;
    let space = dual.pcs.space();
    let mut report = DualityReport::new("complete contact duality");
    report.push(
        "RC(X) = RC(X,X0)",
        same_atoms(&space.rc_algebra(), &dual.pcs.rc_pair()),
        None,
    );
    report.push("X is C-semiregular", is_c_semiregular(space), None);
    let rc = space.rc_algebra().contact_algebra();
    report.push(
        "(RC(X),C_X) ≅ B",
        find_pca_isomorphism(pca, &rc).is_some(),
        Some(format!("C_X = {}", rc.kernel().display_pairs())),
    );
    Ok(report)
}

/// Contact algebras through mereotopological pairs: `u(X, RC(X))` recovers
/// `X0`.
pub fn mereo_corollary(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    classify(pca.is_contact(), "CA", "Cref and Csym")?;
    let dual = ga_object(pca)?;
    let space = dual.pcs.space();
    let pair = MereotopologicalPair::full(space.clone());
    let m = mereo_report(&pair)?;
    let mut report = DualityReport::new("mereocompact duality");
    report.absorb("F^g", m.checks);
    report.push(
        "u(X,B) = X0",
        m.u_set == dual.pcs.x0(),
        Some(format!(
            "u = {} but X0 = {}",
            space.format(m.u_set),
            space.format(dual.pcs.x0())
        )),
    );
    report.push(
        "F^h(F^g(B)) ≅ B",
        find_pca_isomorphism(pca, &pair.contact_algebra()).is_some(),
        None,
    );
    Ok(report)
}

/// Connected algebras have connected duals.
pub fn connected_corollary(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    classify(pca.is_connected(), "connected PCA", "Ccon")?;
    let dual = ga_object(pca)?;
    let mut report = DualityReport::new("connected duality");
    report.push(
        "X(B) is connected",
        dual.pcs.space().predicates().is_connected,
        None,
    );
    Ok(report)
}

/// `Cref`, `Csym`, `Ctr`, `Ccon` against the matching property of the dual.
pub fn axiom_correspondence(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    let dual = ga_object(pca)?;
    axiom_correspondence_with(pca, &dual)
}

fn axiom_correspondence_with(
    pca: &PrecontactAlgebra,
    dual: &CanonicalSpace,
) -> Result<DualityReport> {
    let ax = pca.axiom_report();
    let sas = ft_object(&dual.pcs)?;
    let connected = dual.pcs.space().predicates().is_connected;
    let mut report = DualityReport::new(format!("axiom correspondence for {pca}"));
    let summary = axiom_summary(pca);
    report.push(
        "Cref iff R reflexive",
        ax.cref == sas.is_reflexive(),
        Some(summary.clone()),
    );
    report.push(
        "Csym iff R symmetric",
        ax.csym == sas.is_symmetric(),
        Some(summary.clone()),
    );
    report.push(
        "Ctr iff R transitive",
        ax.ctr == sas.is_transitive(),
        Some(summary.clone()),
    );
    report.push(
        "Ccon iff X connected",
        ax.ccon == connected,
        Some(format!("Ccon = {}, connected = {connected}", ax.ccon)),
    );
    Ok(report)
}

/// `ψ_f : B_Y → B_X, F ↦ f⁻¹(F)` for a continuous map of mereotopological
/// pairs.
pub fn gmcs_check(
    x: &MereotopologicalPair,
    y: &MereotopologicalPair,
    map: &[usize],
) -> Result<DualityReport> {
    let (xs, ys) = (x.space(), y.space());
    if map.len() != xs.len() || map.iter().any(|&v| v >= ys.len()) {
        return Err(Error::Domain("map does not run between the spaces".into()));
    }
    let mut report = DualityReport::new("GMCS morphism");
    let pre = |set: Mask| {
        (0..map.len())
            .filter(|&i| mask::has(set, map[i]))
            .fold(0, |m, i| m | mask::bit(i))
    };
    let continuous =
        (0..xs.len()).all(|b| mask::ones(xs.point_closure(b)).all(|a| ys.leq(map[a], map[b])));
    report.push("f is continuous", continuous, None);
    let (bx, by) = (x.region(), y.region());
    let k = by.atom_count();
    let mut psi = Vec::new();
    let mut outside = None;
    for h in elements(k) {
        match bx.from_points(pre(by.to_points(h))) {
            Some(e) => psi.push((h, e)),
            None if outside.is_none() => {
                outside = Some(format!("f⁻¹({}) is not in B_X", ys.format(by.to_points(h))))
            }
            None => {}
        }
    }
    record_failure(&mut report, "ψ_f maps B_Y into B_X", outside.clone());
    if outside.is_none() {
        let value = |h: Mask| psi.iter().find(|(g, _)| *g == h).map(|&(_, e)| e);
        let atoms_ok = (0..k).all(|p| value(mask::bit(p)).is_some());
        let hom = atoms_ok
            && psi.iter().all(|&(h, e)| {
                let joined = mask::ones(h).fold(0, |m, p| m | value(mask::bit(p)).unwrap_or(0));
                e == joined
            })
            && value(mask::full(k)) == Some(mask::full(bx.atom_count()))
            && (0..k).all(|p| {
                (0..p).all(|q| {
                    value(mask::bit(p)).unwrap_or(0) & value(mask::bit(q)).unwrap_or(0) == 0
                })
            });
        report.push("ψ_f is a Boolean homomorphism", hom, None);
    }
    Ok(report)
}

type Specialisation = fn(&PrecontactAlgebra) -> Result<DualityReport>;

/// The specializations that apply to this algebra, merged into one report.
pub fn corollary_suite(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    let mut report = DualityReport::new(format!("corollaries for {pca}"));
    report.absorb("axioms", axiom_correspondence(pca)?);
    let runs: [(&str, Specialisation); 6] = [
        ("Bool", stone_corollary),
        ("ECS", connected_stone_corollary),
        ("CA", contact_corollary),
        ("complete CA", complete_contact_corollary),
        ("MCS", mereo_corollary),
        ("connected", connected_corollary),
    ];
    for (prefix, run) in runs {
        match run(pca) {
            Ok(r) => report.absorb(prefix, r),
            Err(Error::Classification { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::precontact::{rho_l, rho_s};
    use crate::structures::validate_pcs;
    use crate::topology::FiniteSpace;

    fn b(n: usize) -> BooleanAlgebra {
        BooleanAlgebra::new(n).unwrap()
    }

    fn point_pcs() -> TwoPrecontactSpace {
        fixtures::discrete_pcs(1)
    }

    #[test]
    fn ga_object_examples() {
        assert_eq!(
            ga_object(&fixtures::b4_rho_s()).unwrap().pcs.space().len(),
            2
        );
        assert_eq!(
            ga_object(&fixtures::b4_rho_l()).unwrap().pcs.space().len(),
            3
        );
        assert_eq!(
            ga_object(&fixtures::b8_path()).unwrap().pcs.space().len(),
            5
        );
        assert!(matches!(ga_object(&rho_s(b(0))), Err(Error::Degenerate(_))));
    }

    #[test]
    fn ga_morphism_examples() {
        // B2 has the single atom w, sent to p.
        for (a, t) in [(rho_s(b(2)), rho_s(b(1))), (rho_l(b(2)), rho_l(b(1)))] {
            let hom = BooleanHom::new(b(2), b(1), vec![0]).unwrap();
            let phi = PcaMorphism::new(hom, a, t).unwrap();
            let f = ga_morphism(&phi).unwrap();
            // The only clan of B2 goes to the ultrafilter of p, point 0.
            assert_eq!(f.map(), &[0]);
        }
        let id = PcaMorphism::identity(&fixtures::b8_path());
        assert_eq!(ga_morphism(&id).unwrap().map(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn gt_object_examples() {
        let l = gt_object(&fixtures::x_l_pcs()).unwrap();
        assert!(find_pca_isomorphism(&l.pca, &fixtures::b4_rho_l()).is_some());
        let s = gt_object(&fixtures::discrete_pcs(2)).unwrap();
        assert!(find_pca_isomorphism(&s.pca, &fixtures::b4_rho_s()).is_some());
        let path = fixtures::b8_path();
        let back = gt_object(&ga_object(&path).unwrap().pcs).unwrap();
        assert!(find_pca_isomorphism(&back.pca, &path).is_some());
        assert!(matches!(
            gt_object(&fixtures::x_l_diagonal()),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn gt_morphism_examples() {
        let f = PcsMorphism::new(fixtures::x_l_pcs(), point_pcs(), vec![0, 0, 0]).unwrap();
        let h = gt_morphism(&f).unwrap();
        assert_eq!(h.hom().apply_mask(0), 0);
        assert_eq!(h.hom().apply_mask(1), 0b11);
        assert!(gt_as_preimage(&f, 1).unwrap());
        let id = PcsMorphism::identity(&fixtures::x_l_pcs());
        assert_eq!(gt_morphism(&id).unwrap().hom().atom_map(), &[0, 1]);
        for hm in 0..4 {
            assert!(gt_as_preimage(&id, hm).unwrap());
        }
    }

    #[test]
    fn t_iso_examples() {
        let t = t_iso(&fixtures::x_l_pcs()).unwrap();
        assert!(t.report.passed(), "{}", t.report);
        // Γ3 goes to the clan with support {0,1}, Γ1 to the ultrafilter of atom 0.
        assert_eq!(t.map.map(), &[0, 1, 2]);
        let one = t_iso(&point_pcs()).unwrap();
        assert!(one.report.passed());
        assert_eq!(one.map.map(), &[0]);
    }

    #[test]
    fn g_iso_examples() {
        let g = g_iso(&fixtures::b4_rho_l()).unwrap();
        assert!(g.report.passed(), "{}", g.report);
        let dual = ga_object(&fixtures::b4_rho_l()).unwrap();
        assert_eq!(dual.g(0b01), 0b101);
        assert_eq!(dual.g(0b11), 0b111);
        let path = ga_object(&fixtures::b8_path()).unwrap();
        // r is atom 2: ↑r and the {q,r} clan.
        let pts: Vec<Mask> = mask::ones(path.g(0b100))
            .map(|i| path.clans[i].support)
            .collect();
        assert_eq!(pts, vec![0b100, 0b110]);
        assert!(g_iso(&fixtures::b8_path()).unwrap().report.passed());
    }

    #[test]
    fn naturality_examples() {
        let id = PcsMorphism::identity(&fixtures::x_l_pcs());
        assert!(check_naturality_pcs(&id).unwrap().passed());
        let hom = BooleanHom::new(b(2), b(1), vec![0]).unwrap();
        let phi = PcaMorphism::new(hom, rho_s(b(2)), rho_s(b(1))).unwrap();
        assert!(check_naturality_pca(&phi).unwrap().passed());
        let f = PcsMorphism::new(fixtures::x_l_pcs(), point_pcs(), vec![0, 0, 0]).unwrap();
        let r = check_naturality_pcs(&f).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn morphism_validation() {
        // Sending Γ3 into X0 breaks continuity: Γ3 ∈ cl{Γ1}, Γ3 ↦ Γ2, Γ1 ↦ Γ1.
        let e = PcsMorphism::new(fixtures::x_l_pcs(), fixtures::x_l_pcs(), vec![0, 1, 1]);
        assert!(matches!(e, Err(Error::Validation(_))));
        let e = PcsMorphism::new(fixtures::x_l_pcs(), fixtures::x_l_diagonal(), vec![0, 1, 2]);
        assert!(matches!(e, Err(Error::Validation(w)) if w.contains("R")));
    }

    #[test]
    fn hom_sets_match_on_small_algebras() {
        let algebras: Vec<PrecontactAlgebra> = (1..=2)
            .flat_map(|n| {
                (0..1u64 << (n * n)).map(move |code| {
                    let rows = (0..n).map(|p| (code >> (p * n)) & mask::full(n)).collect();
                    PrecontactAlgebra::new(RelationKernel::from_rows(b(n), rows).unwrap())
                })
            })
            .collect();
        for a in &algebras {
            for t in &algebras {
                let r = homset_report(a, t).unwrap();
                let regular = r.checks.iter().filter(|c| !c.name.starts_with('|'));
                assert!(regular.clone().all(|c| c.pass), "{a} → {t}: {r}");
            }
        }
    }

    #[test]
    fn functoriality_on_path() {
        let path = fixtures::b8_path();
        let homs =
            enumerate_pca_morphisms(&path, &PrecontactAlgebra::new(RelationKernel::empty(b(1))));
        assert!(!homs.is_empty());
        let id = PcaMorphism::identity(&path);
        for h in &homs {
            assert!(check_functoriality_pca(&id, h).unwrap().passed());
        }
        let f = PcsMorphism::new(fixtures::x_l_pcs(), point_pcs(), vec![0, 0, 0]).unwrap();
        let id = PcsMorphism::identity(&fixtures::x_l_pcs());
        assert!(check_functoriality_pcs(&id, &f).unwrap().passed());
    }

    #[test]
    fn ft_and_faithfulness() {
        let sas = ft_object(&fixtures::x_l_pcs()).unwrap();
        assert_eq!(sas.len(), 2);
        assert_eq!(sas.rows(), &[0b11, 0b11]);
        let d = ft_object(&fixtures::discrete_pcs(2)).unwrap();
        assert_eq!(d.rows(), &[0b01, 0b10]);
        let xl = fixtures::x_l_pcs();
        let regular = enumerate_regular_pcs_morphisms(&xl, &xl).unwrap();
        for f in &regular {
            for g in &regular {
                assert_eq!(faithfulness_violation(f, g), None);
            }
        }
        // X0 maps: keep, swap, or collapse onto either point.
        assert_eq!(regular.len(), 4);
        // Collapsing X0 onto Γ1 leaves Γ3 free to stay put, which continuity
        // allows but regularity does not.
        let all = enumerate_pcs_morphisms(&xl, &xl).unwrap();
        let loose = all.iter().find(|f| f.map() == [0, 0, 2]).unwrap();
        assert!(!loose.is_regular());
        let tight = all.iter().find(|f| f.map() == [0, 0, 0]).unwrap();
        assert!(faithfulness_violation(tight, loose).is_some());
        assert!(!check_naturality_pcs(loose).unwrap().passed());
    }

    #[test]
    fn reconstruction_examples() {
        let names = fixtures::point_names(2);
        let full = AdjacencySpace::new(names.clone(), [(0, 0), (0, 1), (1, 0), (1, 1)]).unwrap();
        let r = reconstruct_from_sas(&full).unwrap();
        assert!(r.report.passed());
        assert!(reconstruction_matches(&r, &fixtures::x_l_pcs())
            .unwrap()
            .is_some());
        let diag = AdjacencySpace::new(names, [(0, 0), (1, 1)]).unwrap();
        let r = reconstruct_from_sas(&diag).unwrap();
        assert_eq!(r.dual.pcs.space().len(), 2);
        assert_eq!(r.dual.pcs.x0(), 0b11);
        let path = AdjacencySpace::new(fixtures::point_names(3), [(0, 1), (1, 2)]).unwrap();
        let r = reconstruct_from_sas(&path).unwrap();
        assert_eq!(r.dual.pcs.space().len(), 5);
        let expected = ga_object(&fixtures::b8_path()).unwrap();
        assert!(reconstruction_matches(&r, &expected.pcs).unwrap().is_some());
        assert!(reconstruction_matches(&r, &fixtures::x_l_pcs())
            .unwrap()
            .is_none());
    }

    #[test]
    fn corollary_examples() {
        assert!(connected_corollary(&fixtures::b4_rho_l()).unwrap().passed());
        let ax = axiom_correspondence(&fixtures::b4_rho_s()).unwrap();
        assert!(ax.passed());
        assert!(
            !ga_object(&fixtures::b4_rho_s())
                .unwrap()
                .pcs
                .space()
                .predicates()
                .is_connected
        );
        assert!(matches!(
            connected_corollary(&fixtures::b4_rho_s()),
            Err(Error::Classification { .. })
        ));
        assert!(stone_corollary(&fixtures::b4_rho_s()).unwrap().passed());
        assert!(connected_stone_corollary(&fixtures::b4_rho_l())
            .unwrap()
            .passed());
        assert!(matches!(
            stone_corollary(&fixtures::b4_rho_l()),
            Err(Error::Classification { .. })
        ));
        for pca in [
            fixtures::b4_rho_s(),
            fixtures::b4_rho_l(),
            fixtures::b8_path(),
        ] {
            let r = corollary_suite(&pca).unwrap();
            assert!(r.passed(), "{r}");
        }
        let xl = MereotopologicalPair::full(fixtures::x_l_space());
        let pt =
            MereotopologicalPair::full(FiniteSpace::discrete(fixtures::point_names(1)).unwrap());
        assert!(gmcs_check(&xl, &pt, &[0, 0, 0]).unwrap().passed());
    }

    #[test]
    fn invalid_triple_is_not_round_tripped() {
        let bad = validate_pcs(fixtures::x_l_space(), 0b011, &[0b001, 0b010, 0]).unwrap();
        assert!(t_iso(&bad).is_err());
    }
}
