//! Finite Boolean algebras.
//!
//! A finite Boolean algebra with `n` atoms is the powerset of its atoms, so an
//! element is just the set of atoms below it. The carrier is never stored;
//! iteration counts through the `2^n` masks.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::limits;
use crate::mask::{self, Mask};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BooleanAlgebra {
    atoms: usize,
}

impl BooleanAlgebra {
    /// The algebra of all subsets of `atoms` atoms. Zero atoms gives the
    /// one-element algebra where `0 = 1`.
    pub fn new(atoms: usize) -> Result<Self> {
        Self::with_limit(atoms, limits().max_atoms)
    }

    pub fn with_limit(atoms: usize, limit: usize) -> Result<Self> {
        let limit = limit.min(63);
        if atoms > limit {
            return Err(Error::Capacity {
                what: "atoms",
                requested: atoms,
                limit,
            });
        }
        Ok(BooleanAlgebra { atoms })
    }

    pub fn atom_count(&self) -> usize {
        self.atoms
    }

    /// Number of elements, `2^atoms`.
    pub fn size(&self) -> u64 {
        1u64 << self.atoms
    }

    pub fn is_degenerate(&self) -> bool {
        self.atoms == 0
    }

    pub fn top_mask(&self) -> Mask {
        mask::full(self.atoms)
    }

    pub fn contains_mask(&self, m: Mask) -> bool {
        m & !self.top_mask() == 0
    }

    pub fn check_mask(&self, m: Mask) -> Result<()> {
        if self.contains_mask(m) {
            Ok(())
        } else {
            Err(Error::Domain(format!(
                "mask {m:#b} has atoms outside an algebra with {} atoms",
                self.atoms
            )))
        }
    }

    /// All element masks in increasing numeric order.
    pub fn masks(&self) -> impl Iterator<Item = Mask> + Clone {
        0..self.size()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> + '_ {
        self.masks().map(|mask| Element {
            algebra: *self,
            mask,
        })
    }

    pub fn element(&self, mask: Mask) -> Result<Element> {
        self.check_mask(mask)?;
        Ok(Element {
            algebra: *self,
            mask,
        })
    }

    pub fn zero(&self) -> Element {
        Element {
            algebra: *self,
            mask: 0,
        }
    }

    pub fn one(&self) -> Element {
        Element {
            algebra: *self,
            mask: self.top_mask(),
        }
    }

    pub fn atom(&self, i: usize) -> Result<Element> {
        if i >= self.atoms {
            return Err(Error::Domain(format!(
                "atom {i} out of range for {} atoms",
                self.atoms
            )));
        }
        Ok(Element {
            algebra: *self,
            mask: mask::bit(i),
        })
    }

    pub fn complement_mask(&self, m: Mask) -> Mask {
        !m & self.top_mask()
    }

    fn same(&self, other: &BooleanAlgebra) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::DomainMismatch(format!(
                "{} atoms vs {} atoms",
                self.atoms, other.atoms
            )))
        }
    }
}

/// An element of a finite Boolean algebra, stored as its atom set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    algebra: BooleanAlgebra,
    mask: Mask,
}

impl Element {
    pub fn algebra(&self) -> BooleanAlgebra {
        self.algebra
    }

    pub fn mask(&self) -> Mask {
        self.mask
    }

    pub fn atoms(&self) -> impl Iterator<Item = usize> {
        mask::ones(self.mask)
    }

    pub fn is_zero(&self) -> bool {
        self.mask == 0
    }

    pub fn is_one(&self) -> bool {
        self.mask == self.algebra.top_mask()
    }

    pub fn join(&self, other: &Element) -> Result<Element> {
        self.algebra.same(&other.algebra)?;
        Ok(Element {
            algebra: self.algebra,
            mask: self.mask | other.mask,
        })
    }

    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.algebra.same(&other.algebra)?;
        Ok(Element {
            algebra: self.algebra,
            mask: self.mask & other.mask,
        })
    }

    pub fn complement(&self) -> Element {
        Element {
            algebra: self.algebra,
            mask: self.algebra.complement_mask(self.mask),
        }
    }

    pub fn leq(&self, other: &Element) -> Result<bool> {
        self.algebra.same(&other.algebra)?;
        Ok(self.mask & !other.mask == 0)
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_element(self.mask, self.algebra.atom_count(), f)
    }
}

/// Writes `0`, `1` or a sum of atoms such as `a0+a2`.
fn fmt_element(m: Mask, atoms: usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if m == mask::full(atoms) {
        return f.write_str("1");
    }
    if m == 0 {
        return f.write_str("0");
    }
    let parts: Vec<String> = mask::ones(m).map(|i| format!("a{i}")).collect();
    f.write_str(&parts.join("+"))
}

/// Formats a raw element mask the same way [`Element`] displays.
pub fn element_name(m: Mask, atoms: usize) -> String {
    struct W(Mask, usize);
    impl fmt::Display for W {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            fmt_element(self.0, self.1, f)
        }
    }
    W(m, atoms).to_string()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    Filter,
    Ultrafilter,
    Grill,
    ClanCandidate,
    Arbitrary,
}

/// A set of elements of one algebra, tagged with the structure it is meant to
/// have. Constructors validate the tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementFamily {
    algebra: BooleanAlgebra,
    kind: FamilyKind,
    members: BTreeSet<Mask>,
}

impl ElementFamily {
    pub fn new(kind: FamilyKind, algebra: BooleanAlgebra, members: BTreeSet<Mask>) -> Result<Self> {
        for &m in &members {
            algebra.check_mask(m)?;
        }
        if !is_family(kind, algebra, &members) {
            return Err(Error::Validation(format!("members do not form a {kind:?}")));
        }
        Ok(ElementFamily {
            algebra,
            kind,
            members,
        })
    }

    pub(crate) fn trusted(
        kind: FamilyKind,
        algebra: BooleanAlgebra,
        members: BTreeSet<Mask>,
    ) -> Self {
        ElementFamily {
            algebra,
            kind,
            members,
        }
    }

    pub fn algebra(&self) -> BooleanAlgebra {
        self.algebra
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn members(&self) -> &BTreeSet<Mask> {
        &self.members
    }

    pub fn contains(&self, m: Mask) -> bool {
        self.members.contains(&m)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &ElementFamily) -> bool {
        self.algebra == other.algebra && self.members.is_subset(&other.members)
    }

    /// Atoms that are members. For a grill this is the set of ultrafilters
    /// whose union it is.
    pub fn atom_support(&self) -> Mask {
        (0..self.algebra.atom_count())
            .filter(|&i| self.members.contains(&mask::bit(i)))
            .fold(0, |m, i| m | mask::bit(i))
    }

    /// Meet of all members; for a filter of a finite algebra this generates it.
    pub fn meet_of_members(&self) -> Mask {
        self.members
            .iter()
            .fold(self.algebra.top_mask(), |acc, &m| acc & m)
    }
}

/// Checks the invariants of `kind` on an explicit member set.
pub fn is_family(kind: FamilyKind, algebra: BooleanAlgebra, s: &BTreeSet<Mask>) -> bool {
    match kind {
        FamilyKind::Arbitrary => s.iter().all(|&m| algebra.contains_mask(m)),
        FamilyKind::Filter => is_filter(algebra, s),
        FamilyKind::Ultrafilter => {
            is_filter(algebra, s)
                && algebra
                    .masks()
                    .all(|a| s.contains(&a) || s.contains(&algebra.complement_mask(a)))
        }
        FamilyKind::Grill | FamilyKind::ClanCandidate => is_grill(algebra, s),
    }
}

fn upward_closed(algebra: BooleanAlgebra, s: &BTreeSet<Mask>) -> bool {
    s.iter().all(|&a| {
        algebra
            .masks()
            .filter(|b| a & !b == 0)
            .all(|b| s.contains(&b))
    })
}

fn is_filter(algebra: BooleanAlgebra, s: &BTreeSet<Mask>) -> bool {
    if !s.iter().all(|&m| algebra.contains_mask(m)) {
        return false;
    }
    s.contains(&algebra.top_mask())
        && !s.contains(&0)
        && upward_closed(algebra, s)
        && s.iter().all(|&a| s.iter().all(|&b| s.contains(&(a & b))))
}

fn is_grill(algebra: BooleanAlgebra, s: &BTreeSet<Mask>) -> bool {
    if s.is_empty() || s.contains(&0) || !s.iter().all(|&m| algebra.contains_mask(m)) {
        return false;
    }
    if !upward_closed(algebra, s) {
        return false;
    }
    algebra.masks().all(|a| {
        algebra
            .masks()
            .all(|b| !s.contains(&(a | b)) || s.contains(&a) || s.contains(&b))
    })
}

/// `↑a`, the principal filter of a nonzero element.
pub fn principal_filter(algebra: BooleanAlgebra, a: Mask) -> Result<ElementFamily> {
    algebra.check_mask(a)?;
    if a == 0 {
        return Err(Error::Domain(
            "the principal filter of 0 is not proper".into(),
        ));
    }
    let members = algebra.masks().filter(|b| a & !b == 0).collect();
    let kind = if a.count_ones() == 1 {
        FamilyKind::Ultrafilter
    } else {
        FamilyKind::Filter
    };
    Ok(ElementFamily::trusted(kind, algebra, members))
}

/// The grill `{a : a meets support}`, the union of the ultrafilters of the
/// atoms in `support`.
pub fn grill_of_support(algebra: BooleanAlgebra, support: Mask) -> Result<ElementFamily> {
    algebra.check_mask(support)?;
    if support == 0 {
        return Err(Error::Domain("a grill needs a nonempty support".into()));
    }
    let members = algebra.masks().filter(|a| a & support != 0).collect();
    Ok(ElementFamily::trusted(FamilyKind::Grill, algebra, members))
}

/// `Ult(B)`: the principal ultrafilters `↑p`, ordered by atom index.
pub fn ultrafilters(algebra: BooleanAlgebra) -> Vec<ElementFamily> {
    (0..algebra.atom_count())
        .map(|p| principal_filter(algebra, mask::bit(p)).expect("atom is nonzero"))
        .collect()
}

/// Every grill, as the union of a nonempty set of ultrafilters, in canonical
/// support order.
pub fn grills(algebra: BooleanAlgebra) -> Vec<ElementFamily> {
    let mut supports: Vec<Mask> = algebra.masks().skip(1).collect();
    supports.sort_by(|a, b| mask::support_order(*a, *b));
    supports
        .into_iter()
        .map(|s| grill_of_support(algebra, s).expect("nonempty support"))
        .collect()
}

/// Stone map `s(a) = {u ∈ Ult(B) : a ∈ u}`, returned as the set of indices of
/// the ultrafilters in [`ultrafilters`] order.
pub fn stone_map(a: &Element) -> Mask {
    // ↑p contains a exactly when p ≤ a.
    a.mask()
}

/// An ultrafilter `U` with `F ⊆ U ⊆ G`. Among the candidates the one of the
/// smallest atom index is returned.
pub fn grill_lemma_witness(filter: &ElementFamily, grill: &ElementFamily) -> Result<ElementFamily> {
    let algebra = filter.algebra();
    algebra.same(&grill.algebra())?;
    if !is_filter(algebra, filter.members()) {
        return Err(Error::Precondition("first argument is not a filter".into()));
    }
    if !is_grill(algebra, grill.members()) {
        return Err(Error::Precondition("second argument is not a grill".into()));
    }
    if !filter.is_subset(grill) {
        return Err(Error::Precondition(
            "the filter is not contained in the grill".into(),
        ));
    }
    let generator = filter.meet_of_members();
    for p in mask::ones(generator) {
        let u = principal_filter(algebra, mask::bit(p))?;
        if u.is_subset(grill) {
            return Ok(u);
        }
    }
    Err(Error::Validation(
        "no ultrafilter between filter and grill".into(),
    ))
}

/// A homomorphism between finite Boolean algebras, given dually by a map from
/// the atoms of the target to the atoms of the source:
/// `h(a) = {q : atom_map(q) ∈ a}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BooleanHom {
    source: BooleanAlgebra,
    target: BooleanAlgebra,
    atom_map: Vec<usize>,
}

impl BooleanHom {
    pub fn new(
        source: BooleanAlgebra,
        target: BooleanAlgebra,
        atom_map: Vec<usize>,
    ) -> Result<Self> {
        if atom_map.len() != target.atom_count() {
            return Err(Error::Domain(format!(
                "atom map has {} entries but the target has {} atoms",
                atom_map.len(),
                target.atom_count()
            )));
        }
        if let Some(&bad) = atom_map.iter().find(|&&p| p >= source.atom_count()) {
            return Err(Error::Domain(format!(
                "atom map value {bad} out of range for {} source atoms",
                source.atom_count()
            )));
        }
        if source.is_degenerate() && !target.is_degenerate() {
            return Err(Error::Domain(
                "no homomorphism from the one-element algebra to a nondegenerate one".into(),
            ));
        }
        Ok(BooleanHom {
            source,
            target,
            atom_map,
        })
    }

    pub fn identity(algebra: BooleanAlgebra) -> Self {
        BooleanHom {
            source: algebra,
            target: algebra,
            atom_map: (0..algebra.atom_count()).collect(),
        }
    }

    /// The homomorphism sending each source atom `p` to `images[p]`. The images
    /// must partition the target atoms.
    pub fn from_atom_images(
        source: BooleanAlgebra,
        target: BooleanAlgebra,
        images: &[Mask],
    ) -> Result<Self> {
        if images.len() != source.atom_count() {
            return Err(Error::Domain(
                "one image per source atom is required".into(),
            ));
        }
        let mut atom_map = vec![usize::MAX; target.atom_count()];
        for (p, &img) in images.iter().enumerate() {
            target.check_mask(img)?;
            for q in mask::ones(img) {
                if atom_map[q] != usize::MAX {
                    return Err(Error::Validation(format!(
                        "atom images overlap at target atom {q}"
                    )));
                }
                atom_map[q] = p;
            }
        }
        if atom_map.contains(&usize::MAX) {
            return Err(Error::Validation(
                "atom images do not cover the target".into(),
            ));
        }
        BooleanHom::new(source, target, atom_map)
    }

    pub fn source(&self) -> BooleanAlgebra {
        self.source
    }

    pub fn target(&self) -> BooleanAlgebra {
        self.target
    }

    pub fn atom_map(&self) -> &[usize] {
        &self.atom_map
    }

    pub fn apply_mask(&self, a: Mask) -> Mask {
        self.atom_map
            .iter()
            .enumerate()
            .filter(|(_, &p)| mask::has(a, p))
            .fold(0, |m, (q, _)| m | mask::bit(q))
    }

    pub fn apply(&self, a: &Element) -> Result<Element> {
        self.source.same(&a.algebra())?;
        Ok(Element {
            algebra: self.target,
            mask: self.apply_mask(a.mask()),
        })
    }

    /// `h⁻¹` of the grill with the given target support is the grill whose
    /// support is the image of that support under the atom map.
    pub fn preimage_support(&self, support: Mask) -> Mask {
        mask::ones(support).fold(0, |m, q| m | mask::bit(self.atom_map[q]))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &BooleanHom) -> Result<BooleanHom> {
        self.target.same(&next.source)?;
        let atom_map = next.atom_map.iter().map(|&q| self.atom_map[q]).collect();
        Ok(BooleanHom {
            source: self.source,
            target: next.target,
            atom_map,
        })
    }

    pub fn is_injective(&self) -> bool {
        let hit = self.atom_map.iter().fold(0, |m, &p| m | mask::bit(p));
        hit == self.source.top_mask()
    }

    pub fn is_bijective(&self) -> bool {
        self.source.atom_count() == self.target.atom_count() && self.is_injective()
    }
}

/// All homomorphisms between two algebras, by enumerating atom maps.
pub fn all_homs(source: BooleanAlgebra, target: BooleanAlgebra) -> Vec<BooleanHom> {
    let n = source.atom_count();
    let k = target.atom_count();
    if n == 0 {
        return if k == 0 {
            vec![BooleanHom::identity(source)]
        } else {
            Vec::new()
        };
    }
    let total = n.pow(k as u32);
    (0..total)
        .map(|mut code| {
            let atom_map = (0..k)
                .map(|_| {
                    let p = code % n;
                    code /= n;
                    p
                })
                .collect();
            BooleanHom {
                source,
                target,
                atom_map,
            }
        })
        .collect()
}
