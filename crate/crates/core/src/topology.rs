//! Finite topological spaces.
//!
//! A finite space is determined by the closures of its points: a set is
//! closed iff it is a union of point closures, i.e. a down-set of the
//! specialization preorder `x ⊑ y ⟺ x ∈ cl{y}`. Open sets are the up-sets.

use serde::Serialize;

use crate::boolean::{BooleanAlgebra, ElementFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::limits::limits;
use crate::mask::{self, Mask};
use crate::precontact::{PrecontactAlgebra, RelationKernel};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    names: Vec<String>,
    closures: Vec<Mask>,
    ups: Vec<Mask>,
}

impl FiniteSpace {
    /// The space whose closed sets are the intersections of finite unions of
    /// `base` members, together with `∅` and the whole set.
    pub fn from_closed_base(names: Vec<String>, base: &[Mask]) -> Result<Self> {
        let n = names.len();
        limits().check_points(n)?;
        let full = mask::full(n);
        if let Some(b) = base.iter().find(|&&b| b & !full != 0) {
            return Err(Error::Domain(format!(
                "base member {b:#b} has points outside the space"
            )));
        }
        let closures = (0..n)
            .map(|x| {
                base.iter()
                    .filter(|&&b| mask::has(b, x))
                    .fold(full, |acc, &b| acc & b)
            })
            .collect();
        Ok(Self::build(names, closures))
    }

    /// The space with the given point closures; they must form a preorder.
    pub fn from_closures(names: Vec<String>, closures: Vec<Mask>) -> Result<Self> {
        let n = names.len();
        limits().check_points(n)?;
        if closures.len() != n {
            return Err(Error::Domain("one closure per point is required".into()));
        }
        for (x, &c) in closures.iter().enumerate() {
            if c & !mask::full(n) != 0 || !mask::has(c, x) {
                return Err(Error::Domain(format!("closure of point {x} is malformed")));
            }
            if let Some(y) = mask::ones(c).find(|&y| closures[y] & !c != 0) {
                return Err(Error::Domain(format!(
                    "closure of point {x} contains {y} but not its closure"
                )));
            }
        }
        Ok(Self::build(names, closures))
    }

    fn build(names: Vec<String>, closures: Vec<Mask>) -> Self {
        let n = names.len();
        let ups = (0..n)
            .map(|x| {
                (0..n)
                    .filter(|&y| mask::has(closures[y], x))
                    .fold(0, |m, y| m | mask::bit(y))
            })
            .collect();
        FiniteSpace {
            names,
            closures,
            ups,
        }
    }

    pub fn discrete(names: Vec<String>) -> Result<Self> {
        let closures = (0..names.len()).map(mask::bit).collect();
        Self::from_closures(names, closures)
    }

    pub fn indiscrete(names: Vec<String>) -> Result<Self> {
        let full = mask::full(names.len());
        let closures = vec![full; names.len()];
        Self::from_closures(names, closures)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn full(&self) -> Mask {
        mask::full(self.len())
    }

    /// `cl{x}`.
    pub fn point_closure(&self, x: usize) -> Mask {
        self.closures[x]
    }

    pub fn point_closures(&self) -> &[Mask] {
        &self.closures
    }

    /// The smallest open set containing `x`.
    pub fn up(&self, x: usize) -> Mask {
        self.ups[x]
    }

    /// `x ⊑ y`, i.e. `x ∈ cl{y}`.
    pub fn leq(&self, x: usize, y: usize) -> bool {
        mask::has(self.closures[y], x)
    }

    pub fn closure(&self, m: Mask) -> Mask {
        mask::ones(m).fold(0, |acc, x| acc | self.closures[x])
    }

    pub fn interior(&self, m: Mask) -> Mask {
        self.full() & !self.closure(self.full() & !m)
    }

    pub fn open_hull(&self, m: Mask) -> Mask {
        mask::ones(m).fold(0, |acc, x| acc | self.ups[x])
    }

    pub fn is_closed(&self, m: Mask) -> bool {
        self.closure(m) == m
    }

    pub fn is_open(&self, m: Mask) -> bool {
        self.open_hull(m) == m
    }

    pub fn is_regular_closed(&self, m: Mask) -> bool {
        self.closure(self.interior(m)) == m
    }

    pub fn format(&self, m: Mask) -> String {
        mask::fmt_named(m, &self.names)
    }

    /// All closed sets, by counting through subsets.
    pub fn closed_sets(&self) -> Result<Vec<Mask>> {
        limits().check_search(self.len())?;
        Ok((0..=self.full()).filter(|&m| self.is_closed(m)).collect())
    }

    pub fn open_sets(&self) -> Result<Vec<Mask>> {
        limits().check_search(self.len())?;
        Ok((0..=self.full()).filter(|&m| self.is_open(m)).collect())
    }

    /// Connected components of the subspace on `subset`, each listed once in
    /// order of its smallest point.
    pub fn components(&self, subset: Mask) -> Vec<Mask> {
        let mut out = Vec::new();
        let mut left = subset;
        while left != 0 {
            let start = left & left.wrapping_neg();
            let mut comp = start;
            let mut frontier = start;
            while frontier != 0 {
                let next = mask::ones(frontier)
                    .fold(0, |acc, x| acc | self.closures[x] | self.ups[x])
                    & subset
                    & !comp;
                comp |= next;
                frontier = next;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    /// Classes of the specialization preorder that are maximal, as point sets.
    pub fn maximal_classes(&self) -> Vec<Mask> {
        let mut out = Vec::new();
        let mut seen = 0;
        for x in 0..self.len() {
            if mask::has(seen, x) {
                continue;
            }
            // Maximal: everything above x is equivalent to x.
            if self.ups[x] & !self.closures[x] == 0 {
                out.push(self.ups[x]);
                seen |= self.ups[x];
            }
        }
        out
    }

    /// Whether `family` consists of closed sets and generates every closed set
    /// by intersections of finite unions.
    pub fn is_closed_base(&self, family: &[Mask]) -> bool {
        self.closed_base_failure(family).is_none()
    }

    /// A point whose closure is not the intersection of the family members
    /// containing it, or a non-closed member.
    pub fn closed_base_failure(&self, family: &[Mask]) -> Option<String> {
        if let Some(&f) = family.iter().find(|&&f| !self.is_closed(f)) {
            return Some(format!("{} is not closed", self.format(f)));
        }
        (0..self.len()).find_map(|x| {
            let hull = family
                .iter()
                .filter(|&&f| mask::has(f, x))
                .fold(self.full(), |acc, &f| acc & f);
            (hull != self.closures[x]).then(|| {
                format!(
                    "cl{{{}}} = {} but the family only cuts down to {}",
                    self.names[x],
                    self.format(self.closures[x]),
                    self.format(hull)
                )
            })
        })
    }

    /// The subspace on `subset`, points renumbered in increasing order.
    pub fn subspace(&self, subset: Mask) -> FiniteSpace {
        let idx: Vec<usize> = mask::ones(subset).collect();
        let names = idx.iter().map(|&x| self.names[x].clone()).collect();
        let closures = idx
            .iter()
            .map(|&x| {
                let c = self.closures[x] & subset;
                idx.iter()
                    .enumerate()
                    .filter(|(_, &y)| mask::has(c, y))
                    .fold(0, |m, (i, _)| m | mask::bit(i))
            })
            .collect();
        Self::build(names, closures)
    }

    pub fn predicates(&self) -> SpacePredicates {
        space_predicates(self)
    }

    /// `RC(X)`: atoms are the down-sets of maximal classes.
    pub fn rc_algebra(&self) -> RegionAlgebra {
        let atoms = self
            .maximal_classes()
            .into_iter()
            .map(|c| self.closure(c))
            .collect();
        RegionAlgebra::from_atoms_unchecked(self.len(), atoms)
    }
}

pub fn space_from_closed_base(names: Vec<String>, base: &[Mask]) -> Result<FiniteSpace> {
    FiniteSpace::from_closed_base(names, base)
}

pub fn closure(space: &FiniteSpace, m: Mask) -> Mask {
    space.closure(m)
}

pub fn interior(space: &FiniteSpace, m: Mask) -> Mask {
    space.interior(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpacePredicates {
    pub is_t0: bool,
    pub is_semiregular: bool,
    pub is_connected: bool,
    pub is_compact: bool,
    pub is_hausdorff: bool,
    pub is_zero_dimensional: bool,
    pub is_stone: bool,
    pub is_extremally_disconnected: bool,
}

pub fn space_predicates(space: &FiniteSpace) -> SpacePredicates {
    let n = space.len();
    let is_t0 = (0..n).all(|x| (0..x).all(|y| space.closures[x] != space.closures[y]));
    // Finite spaces: T2 = T1, every point closed.
    let is_hausdorff = (0..n).all(|x| space.closures[x] == mask::bit(x));
    // A clopen base exists iff the specialization preorder is symmetric.
    let is_zero_dimensional = (0..n).all(|x| space.closures[x] == space.ups[x]);
    let is_compact = true;
    let is_extremally_disconnected = (0..n).all(|x| space.is_open(space.closure(space.ups[x])));
    let rc = space.rc_algebra();
    let is_semiregular = space.is_closed_base(&rc.atoms);
    SpacePredicates {
        is_t0,
        is_semiregular,
        is_connected: space.components(space.full()).len() <= 1,
        is_compact,
        is_hausdorff,
        is_zero_dimensional,
        is_stone: is_compact && is_hausdorff && is_zero_dimensional,
        is_extremally_disconnected,
    }
}

/// A finite Boolean algebra of point sets of a space, given by its atoms.
/// Every atom has a point lying in no other atom, so an element (a set of
/// atoms) is determined by the union of its atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionAlgebra {
    points: usize,
    atoms: Vec<Mask>,
}

impl RegionAlgebra {
    pub(crate) fn from_atoms_unchecked(points: usize, atoms: Vec<Mask>) -> Self {
        RegionAlgebra { points, atoms }
    }

    pub fn new(points: usize, atoms: Vec<Mask>) -> Result<Self> {
        for (i, &a) in atoms.iter().enumerate() {
            let others = atoms
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(0, |m, (_, &b)| m | b);
            if a & !mask::full(points) != 0 || a & !others == 0 {
                return Err(Error::Domain(format!(
                    "region atom {i} has no private point"
                )));
            }
        }
        Ok(RegionAlgebra { points, atoms })
    }

    pub fn atoms(&self) -> &[Mask] {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn algebra(&self) -> BooleanAlgebra {
        BooleanAlgebra::with_limit(self.atoms.len(), 63).expect("at most 64 points")
    }

    pub fn to_points(&self, element: Mask) -> Mask {
        mask::ones(element).fold(0, |m, i| m | self.atoms[i])
    }

    /// The element whose point set is `set`, if there is one.
    pub fn from_points(&self, set: Mask) -> Option<Mask> {
        let element = self
            .atoms
            .iter()
            .enumerate()
            .filter(|(_, &a)| a & !set == 0)
            .fold(0, |m, (i, _)| m | mask::bit(i));
        (self.to_points(element) == set).then_some(element)
    }

    /// All members as point sets, in element-mask order.
    pub fn members(&self) -> Vec<Mask> {
        self.algebra().masks().map(|e| self.to_points(e)).collect()
    }

    /// Atoms containing `x`: the support of the grill `σ_x`.
    pub fn sigma(&self, x: usize) -> Mask {
        self.atoms
            .iter()
            .enumerate()
            .filter(|(_, &a)| mask::has(a, x))
            .fold(0, |m, (i, _)| m | mask::bit(i))
    }

    /// Kernel of the contact `F C G ⟺ F ∩ G ≠ ∅`.
    pub fn intersection_kernel(&self) -> RelationKernel {
        let k = self.atoms.len();
        let rows = (0..k)
            .map(|i| {
                (0..k)
                    .filter(|&j| self.atoms[i] & self.atoms[j] != 0)
                    .fold(0, |m, j| m | mask::bit(j))
            })
            .collect();
        RelationKernel::from_rows(self.algebra(), rows).expect("rows within algebra")
    }

    /// `(B, C_X)`, the algebra with the intersection contact.
    pub fn contact_algebra(&self) -> PrecontactAlgebra {
        PrecontactAlgebra::new(self.intersection_kernel())
    }
}

pub fn rc_algebra(space: &FiniteSpace) -> RegionAlgebra {
    space.rc_algebra()
}

/// A space with a dense subset.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopologicalPair {
    space: FiniteSpace,
    subset: Mask,
}

impl TopologicalPair {
    pub fn new(space: FiniteSpace, subset: Mask) -> Result<Self> {
        if subset & !space.full() != 0 {
            return Err(Error::Domain("subset has points outside the space".into()));
        }
        if space.closure(subset) != space.full() {
            return Err(Error::Validation(format!(
                "{} is not dense: its closure is {}",
                space.format(subset),
                space.format(space.closure(subset))
            )));
        }
        Ok(TopologicalPair { space, subset })
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn subset(&self) -> Mask {
        self.subset
    }

    /// Components of `X0`; `CO(X0)` is the algebra of their unions.
    pub fn components(&self) -> Vec<Mask> {
        self.space.components(self.subset)
    }

    pub fn co_algebra(&self) -> BooleanAlgebra {
        BooleanAlgebra::with_limit(self.components().len(), 63).expect("at most 64 points")
    }

    /// `RC(X, X0)`: closures of clopen subsets of `X0`, atom `i` being the
    /// closure of component `i`.
    pub fn rc_pair(&self) -> RegionAlgebra {
        rc_pair_of(&self.space, self.subset)
    }

    /// Support of `Γ_{x,X0}` over the components of `X0`.
    pub fn gamma(&self, x: usize) -> Mask {
        self.rc_pair().sigma(x)
    }

    /// Kernel of `δ_(X,X0)` on `CO(X0)`: closures meet.
    pub fn delta_kernel(&self) -> RelationKernel {
        self.rc_pair().intersection_kernel()
    }

    /// `F ↦ F ∩ X0` on regular closed sets of `X`.
    pub fn r_map(&self, f: Mask) -> Result<Mask> {
        if !self.space.is_regular_closed(f) {
            return Err(Error::Domain(format!(
                "{} is not regular closed",
                self.space.format(f)
            )));
        }
        Ok(f & self.subset)
    }

    /// `G ↦ cl_X(G)` on regular closed sets of the subspace `X0`.
    pub fn e_map(&self, g: Mask) -> Result<Mask> {
        let x0 = self.subset;
        let cl0 = |m: Mask| self.space.closure(m) & x0;
        let int0 = |m: Mask| x0 & !cl0(x0 & !m);
        if g & !x0 != 0 || cl0(int0(g)) != g {
            return Err(Error::Domain(format!(
                "{} is not regular closed in the subspace",
                self.space.format(g)
            )));
        }
        Ok(self.space.closure(g))
    }
}

pub(crate) fn rc_pair_of(space: &FiniteSpace, subset: Mask) -> RegionAlgebra {
    let atoms = space
        .components(subset)
        .into_iter()
        .map(|c| space.closure(c))
        .collect();
    RegionAlgebra::from_atoms_unchecked(space.len(), atoms)
}

pub fn rc_pair_algebra(pair: &TopologicalPair) -> RegionAlgebra {
    pair.rc_pair()
}

/// `σ_x^B` as a family of elements of `B`.
pub fn sigma(region: &RegionAlgebra, x: usize) -> ElementFamily {
    let support = region.sigma(x);
    let alg = region.algebra();
    let members = alg.masks().filter(|&e| e & support != 0).collect();
    ElementFamily::trusted(FamilyKind::Arbitrary, alg, members)
}

/// `ν_x^B = {F ∈ B : x ∈ int F}`.
pub fn nu(space: &FiniteSpace, region: &RegionAlgebra, x: usize) -> Result<ElementFamily> {
    limits().check_exhaustive(region.atom_count())?;
    let alg = region.algebra();
    let members = alg
        .masks()
        .filter(|&e| mask::has(space.interior(region.to_points(e)), x))
        .collect();
    Ok(ElementFamily::trusted(FamilyKind::Arbitrary, alg, members))
}

/// `Γ_{x,X0}` as a family of elements of `CO(X0)`.
pub fn gamma(pair: &TopologicalPair, x: usize) -> ElementFamily {
    sigma(&pair.rc_pair(), x)
}

/// Whether `x ∈ cl U ∩ cl V ⟹ x ∈ cl(U ∩ V)` for all open `U`, `V`. It is
/// enough to test the minimal open sets of points above `x`.
pub fn is_u_point(space: &FiniteSpace, x: usize) -> bool {
    let above: Vec<usize> = mask::ones(space.up(x)).collect();
    above
        .iter()
        .all(|&y| above.iter().all(|&z| space.up(y) & space.up(z) != 0))
}

/// Whether `x ∈ F ∩ G ⟹ x ∈ cl(int(F ∩ G))` for all members `F`, `G`.
pub fn u_point_of_pair(pair: &MereotopologicalPair, x: usize) -> Result<bool> {
    let region = pair.region();
    limits().check_exhaustive(region.atom_count())?;
    let space = pair.space();
    let members = region.members();
    Ok(members.iter().all(|&f| {
        members.iter().all(|&g| {
            let both = f & g;
            !mask::has(both, x) || mask::has(space.closure(space.interior(both)), x)
        })
    }))
}

/// Semiregular, T0, and every clan of `(RC(X), C_X)` is some `σ_x`.
pub fn is_c_semiregular(space: &FiniteSpace) -> bool {
    let p = space.predicates();
    if !(p.is_semiregular && p.is_t0) {
        return false;
    }
    let rc = space.rc_algebra();
    let traces: Vec<Mask> = (0..space.len()).map(|x| rc.sigma(x)).collect();
    rc.contact_algebra()
        .clans()
        .iter()
        .all(|c| traces.contains(&c.support))
}

/// A space with a Boolean subalgebra of `RC(X)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MereotopologicalPair {
    space: FiniteSpace,
    region: RegionAlgebra,
}

impl MereotopologicalPair {
    /// Validates `members` as a Boolean subalgebra of `RC(X)`.
    pub fn new(space: FiniteSpace, members: &[Mask]) -> Result<Self> {
        let rc = space.rc_algebra();
        let mut elems = Vec::with_capacity(members.len());
        for &m in members {
            match rc.from_points(m) {
                Some(e) if space.is_regular_closed(m) => elems.push(e),
                _ => {
                    return Err(Error::Validation(format!(
                        "{} is not regular closed",
                        space.format(m)
                    )))
                }
            }
        }
        elems.sort_unstable();
        elems.dedup();
        let top = mask::full(rc.atom_count());
        let has = |e: Mask| elems.binary_search(&e).is_ok();
        if !has(0) || !has(top) {
            return Err(Error::Validation("members must include ∅ and X".into()));
        }
        for &a in &elems {
            if !has(top & !a) {
                return Err(Error::Validation(format!(
                    "complement of {} is missing",
                    space.format(rc.to_points(a))
                )));
            }
            for &b in &elems {
                if !has(a | b) {
                    return Err(Error::Validation(format!(
                        "join of {} and {} is missing",
                        space.format(rc.to_points(a)),
                        space.format(rc.to_points(b))
                    )));
                }
            }
        }
        let atoms = elems
            .iter()
            .copied()
            .filter(|&a| a != 0 && elems.iter().all(|&b| b == 0 || b == a || b & !a != 0))
            .map(|a| rc.to_points(a))
            .collect();
        Ok(MereotopologicalPair {
            space,
            region: RegionAlgebra::from_atoms_unchecked(rc_points(&rc), atoms),
        })
    }

    /// `(X, RC(X))`.
    pub fn full(space: FiniteSpace) -> Self {
        let region = space.rc_algebra();
        MereotopologicalPair { space, region }
    }

    /// `(X, RC(X, X0))` for a topological pair.
    pub fn of_pair(pair: &TopologicalPair) -> Self {
        MereotopologicalPair {
            space: pair.space().clone(),
            region: pair.rc_pair(),
        }
    }

    pub fn space(&self) -> &FiniteSpace {
        &self.space
    }

    pub fn region(&self) -> &RegionAlgebra {
        &self.region
    }

    pub fn sigma(&self, x: usize) -> Mask {
        self.region.sigma(x)
    }

    /// `(B, C_X ∩ B²)`.
    pub fn contact_algebra(&self) -> PrecontactAlgebra {
        self.region.contact_algebra()
    }
}

fn rc_points(rc: &RegionAlgebra) -> usize {
    rc.points
}
