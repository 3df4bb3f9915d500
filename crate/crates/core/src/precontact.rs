//! Precontact relations on finite Boolean algebras.
//!
//! A relation satisfying (C0) and (C+) on a finite algebra is determined by
//! the atom pairs it relates, so it is stored as an atom-pair kernel and the
//! element-level relation is always derived from it.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::boolean::{element_name, BooleanAlgebra, BooleanHom, ElementFamily, FamilyKind};
use crate::error::{Error, Result};
use crate::limits::limits;
use crate::mask::{self, Mask};

/// Atom-pair kernel: `rows[p]` holds every `q` with `(p, q)` in the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationKernel {
    algebra: BooleanAlgebra,
    rows: Vec<Mask>,
}

impl RelationKernel {
    pub fn empty(algebra: BooleanAlgebra) -> Self {
        RelationKernel {
            algebra,
            rows: vec![0; algebra.atom_count()],
        }
    }

    pub fn new(
        algebra: BooleanAlgebra,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = algebra.atom_count();
        let mut rows = vec![0; n];
        for (p, q) in pairs {
            if p >= n || q >= n {
                return Err(Error::Domain(format!(
                    "kernel pair ({p},{q}) out of range for {n} atoms"
                )));
            }
            rows[p] |= mask::bit(q);
        }
        Ok(RelationKernel { algebra, rows })
    }

    pub fn from_rows(algebra: BooleanAlgebra, rows: Vec<Mask>) -> Result<Self> {
        if rows.len() != algebra.atom_count() {
            return Err(Error::Domain("one kernel row per atom is required".into()));
        }
        for &r in &rows {
            algebra.check_mask(r)?;
        }
        Ok(RelationKernel { algebra, rows })
    }

    pub fn algebra(&self) -> BooleanAlgebra {
        self.algebra
    }

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    pub fn contains(&self, p: usize, q: usize) -> bool {
        mask::has(self.rows[p], q)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(p, &r)| mask::ones(r).map(move |q| (p, q)))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    /// `a C b`: some kernel pair lies below `(a, b)`.
    pub fn holds(&self, a: Mask, b: Mask) -> bool {
        mask::ones(a).any(|p| self.rows[p] & b != 0)
    }

    /// Atoms related to some atom of `a` on the right.
    pub fn image(&self, a: Mask) -> Mask {
        mask::ones(a).fold(0, |m, p| m | self.rows[p])
    }

    pub fn transpose(&self) -> Self {
        let mut rows = vec![0; self.rows.len()];
        for (p, q) in self.pairs() {
            rows[q] |= mask::bit(p);
        }
        RelationKernel {
            algebra: self.algebra,
            rows,
        }
    }

    /// Kernel of `C#`: symmetric closure plus the diagonal.
    pub fn sharp(&self) -> Self {
        let t = self.transpose();
        let rows = (0..self.rows.len())
            .map(|p| self.rows[p] | t.rows[p] | mask::bit(p))
            .collect();
        RelationKernel {
            algebra: self.algebra,
            rows,
        }
    }

    pub fn is_subset(&self, other: &RelationKernel) -> bool {
        self.rows.len() == other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.rows.len()).all(|p| self.contains(p, p))
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_transitive(&self) -> bool {
        (0..self.rows.len()).all(|p| self.image(self.rows[p]) & !self.rows[p] == 0)
    }

    /// Connectedness of the undirected graph underlying the kernel.
    pub fn is_weakly_connected(&self) -> bool {
        let n = self.rows.len();
        if n == 0 {
            return true;
        }
        let sym = self.sharp();
        let mut seen = mask::bit(0);
        let mut frontier = seen;
        while frontier != 0 {
            let next = sym.image(frontier) & !seen;
            seen |= next;
            frontier = next;
        }
        seen == mask::full(n)
    }

    /// Expands the kernel to the element-level relation over the full carrier.
    pub fn expand(&self) -> RawRelation {
        let alg = self.algebra;
        let pairs = alg
            .masks()
            .flat_map(|a| alg.masks().map(move |b| (a, b)))
            .filter(|&(a, b)| self.holds(a, b))
            .collect();
        RawRelation {
            algebra: alg,
            pairs,
        }
    }

    pub fn display_pairs(&self) -> String {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(p, q)| format!("({p},{q})"))
            .collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// An explicit element-level relation, used only as validation input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawRelation {
    pub algebra: BooleanAlgebra,
    pub pairs: BTreeSet<(Mask, Mask)>,
}

impl RawRelation {
    pub fn new(
        algebra: BooleanAlgebra,
        pairs: impl IntoIterator<Item = (Mask, Mask)>,
    ) -> Result<Self> {
        let pairs: BTreeSet<(Mask, Mask)> = pairs.into_iter().collect();
        for &(a, b) in &pairs {
            algebra.check_mask(a)?;
            algebra.check_mask(b)?;
        }
        Ok(RawRelation { algebra, pairs })
    }

    fn has(&self, a: Mask, b: Mask) -> bool {
        self.pairs.contains(&(a, b))
    }
}

/// Recovers the kernel of a raw relation, rejecting relations that violate
/// (C0) or (C+).
pub fn normalize_relation(raw: &RawRelation) -> Result<RelationKernel> {
    let alg = raw.algebra;
    limits().check_exhaustive(alg.atom_count())?;
    let n = alg.atom_count();
    if let Some(&(a, b)) = raw.pairs.iter().find(|(a, b)| *a == 0 || *b == 0) {
        return Err(Error::axiom(
            "C0",
            format!("({}, {})", element_name(a, n), element_name(b, n)),
        ));
    }
    let kernel = RelationKernel::new(
        alg,
        raw.pairs
            .iter()
            .filter(|(a, b)| a.count_ones() == 1 && b.count_ones() == 1)
            .map(|(a, b)| (a.trailing_zeros() as usize, b.trailing_zeros() as usize)),
    )?;
    for a in alg.masks() {
        for b in alg.masks() {
            if raw.has(a, b) != kernel.holds(a, b) {
                let (x, y, z, left) = additivity_witness(raw, a, b);
                let w = if left {
                    format!(
                        "({}+{}) vs {}",
                        element_name(x, n),
                        element_name(y, n),
                        element_name(z, n)
                    )
                } else {
                    format!(
                        "{} vs ({}+{})",
                        element_name(x, n),
                        element_name(y, n),
                        element_name(z, n)
                    )
                };
                return Err(Error::axiom("C+", w));
            }
        }
    }
    Ok(kernel)
}

/// Given a pair where the raw relation disagrees with its atom restriction,
/// splits arguments until an additivity failure appears. Returns
/// `(x, y, z, left)`: for `left`, `(x+y) R z` disagrees with `xRz ∨ yRz`;
/// otherwise `x R (y+z)` disagrees with `xRy ∨ xRz`.
fn additivity_witness(raw: &RawRelation, a: Mask, b: Mask) -> (Mask, Mask, Mask, bool) {
    let atomic = |a: Mask, b: Mask| {
        mask::ones(a).any(|p| mask::ones(b).any(|q| raw.has(mask::bit(p), mask::bit(q))))
    };
    let (mut a, mut b) = (a, b);
    loop {
        if b.count_ones() > 1 {
            let b1 = b & b.wrapping_neg();
            let b2 = b & !b1;
            if raw.has(a, b) != (raw.has(a, b1) || raw.has(a, b2)) {
                return (a, b1, b2, false);
            }
            b = if raw.has(a, b1) != atomic(a, b1) {
                b1
            } else {
                b2
            };
        } else if a.count_ones() > 1 {
            let a1 = a & a.wrapping_neg();
            let a2 = a & !a1;
            if raw.has(a, b) != (raw.has(a1, b) || raw.has(a2, b)) {
                return (a1, a2, b, true);
            }
            a = if raw.has(a1, b) != atomic(a1, b) {
                a1
            } else {
                a2
            };
        } else {
            // Atom pairs always agree and zero arguments were rejected as C0.
            unreachable!("disagreement cannot reach atom level");
        }
    }
}

/// Flags of the optional axioms, each decided over the whole carrier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub cref: bool,
    pub csym: bool,
    pub ctr: bool,
    pub ctr_sharp: bool,
    pub ccon: bool,
    pub c6: bool,
    pub is_contact: bool,
    pub is_normal_contact: bool,
    /// First counterexample per failing axiom.
    pub witnesses: BTreeMap<String, String>,
}

#[derive(Debug)]
pub struct PrecontactAlgebra {
    kernel: RelationKernel,
    report: OnceLock<AxiomReport>,
}

impl Clone for PrecontactAlgebra {
    fn clone(&self) -> Self {
        PrecontactAlgebra {
            kernel: self.kernel.clone(),
            report: self.report.clone(),
        }
    }
}

impl PartialEq for PrecontactAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.kernel == other.kernel
    }
}

impl Eq for PrecontactAlgebra {}

impl fmt::Display for PrecontactAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "PCA({} atoms, kernel {})",
            self.atom_count(),
            self.kernel.display_pairs()
        )
    }
}

impl PrecontactAlgebra {
    pub fn new(kernel: RelationKernel) -> Self {
        PrecontactAlgebra {
            kernel,
            report: OnceLock::new(),
        }
    }

    pub fn from_pairs(
        algebra: BooleanAlgebra,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        Ok(Self::new(RelationKernel::new(algebra, pairs)?))
    }

    pub fn from_raw(raw: &RawRelation) -> Result<Self> {
        Ok(Self::new(normalize_relation(raw)?))
    }

    pub fn algebra(&self) -> BooleanAlgebra {
        self.kernel.algebra
    }

    pub fn atom_count(&self) -> usize {
        self.kernel.algebra.atom_count()
    }

    pub fn kernel(&self) -> &RelationKernel {
        &self.kernel
    }

    pub fn holds(&self, a: Mask, b: Mask) -> bool {
        self.kernel.holds(a, b)
    }

    /// `a ≪ b` iff not `a C b*`.
    pub fn ll(&self, a: Mask, b: Mask) -> bool {
        !self.holds(a, self.algebra().complement_mask(b))
    }

    pub fn c_sharp(&self) -> PrecontactAlgebra {
        PrecontactAlgebra::new(self.kernel.sharp())
    }

    pub fn axiom_report(&self) -> &AxiomReport {
        self.report.get_or_init(|| {
            if self.atom_count() <= limits().max_exhaustive_atoms {
                axiom_report_exhaustive(self)
            } else {
                axiom_report_kernel(self)
            }
        })
    }

    pub fn is_contact(&self) -> bool {
        self.kernel.is_reflexive() && self.kernel.is_symmetric()
    }

    pub fn is_connected(&self) -> bool {
        self.kernel.is_weakly_connected()
    }

    pub fn clans(&self) -> Vec<Clan> {
        clans(self)
    }

    /// The smallest `b` with `a ≪ b ≪ c`, if any.
    pub fn interpolant(&self, a: Mask, c: Mask) -> Option<Mask> {
        self.algebra()
            .masks()
            .find(|&b| self.ll(a, b) && self.ll(b, c))
    }
}

pub fn rho_s(algebra: BooleanAlgebra) -> PrecontactAlgebra {
    PrecontactAlgebra::from_pairs(algebra, (0..algebra.atom_count()).map(|p| (p, p)))
        .expect("diagonal is in range")
}

pub fn rho_l(algebra: BooleanAlgebra) -> PrecontactAlgebra {
    let n = algebra.atom_count();
    PrecontactAlgebra::new(RelationKernel {
        algebra,
        rows: vec![mask::full(n); n],
    })
}

/// A dense element-level binary relation over a carrier of `2^n` elements.
#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(size: usize) -> Self {
        let words = size.div_ceil(64);
        BitMatrix {
            words,
            bits: vec![0; words * size],
        }
    }

    fn get(&self, a: Mask, b: Mask) -> bool {
        let (a, b) = (a as usize, b as usize);
        self.bits[a * self.words + b / 64] >> (b % 64) & 1 == 1
    }

    fn set(&mut self, a: Mask, b: Mask) {
        let (a, b) = (a as usize, b as usize);
        self.bits[a * self.words + b / 64] |= 1 << (b % 64);
    }

    fn row(&self, a: Mask) -> &[u64] {
        let a = a as usize;
        &self.bits[a * self.words..(a + 1) * self.words]
    }
}

/// The element-level ≪ relation of an algebra with a materialised carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LlRelation {
    algebra: BooleanAlgebra,
    matrix: BitMatrix,
}

impl LlRelation {
    pub fn new(
        algebra: BooleanAlgebra,
        pairs: impl IntoIterator<Item = (Mask, Mask)>,
    ) -> Result<Self> {
        limits().check_exhaustive(algebra.atom_count())?;
        let mut matrix = BitMatrix::new(algebra.size() as usize);
        for (a, b) in pairs {
            algebra.check_mask(a)?;
            algebra.check_mask(b)?;
            matrix.set(a, b);
        }
        Ok(LlRelation { algebra, matrix })
    }

    pub fn of(pca: &PrecontactAlgebra) -> Result<Self> {
        let alg = pca.algebra();
        limits().check_exhaustive(alg.atom_count())?;
        let mut matrix = BitMatrix::new(alg.size() as usize);
        for a in alg.masks() {
            for b in alg.masks() {
                if pca.ll(a, b) {
                    matrix.set(a, b);
                }
            }
        }
        Ok(LlRelation {
            algebra: alg,
            matrix,
        })
    }

    pub fn algebra(&self) -> BooleanAlgebra {
        self.algebra
    }

    pub fn get(&self, a: Mask, b: Mask) -> bool {
        self.matrix.get(a, b)
    }

    pub fn pairs(&self) -> Vec<(Mask, Mask)> {
        let alg = self.algebra;
        alg.masks()
            .flat_map(|a| alg.masks().map(move |b| (a, b)))
            .filter(|&(a, b)| self.get(a, b))
            .collect()
    }

    /// `∃b. a ≪ b ≪ c` for every `(a, c)` at once: row `a` of the result is
    /// the union of the rows of its successors.
    fn composed(&self) -> BitMatrix {
        let size = self.algebra.size();
        let mut out = BitMatrix::new(size as usize);
        for a in 0..size {
            let mut acc = vec![0u64; self.matrix.words];
            for b in 0..size {
                if self.get(a, b) {
                    for (w, x) in acc.iter_mut().zip(self.matrix.row(b)) {
                        *w |= x;
                    }
                }
            }
            let start = a as usize * out.words;
            out.bits[start..start + out.words].copy_from_slice(&acc);
        }
        out
    }
}

fn interpolates(ll: &LlRelation) -> Option<(Mask, Mask)> {
    let comp = ll.composed();
    let alg = ll.algebra;
    for a in alg.masks() {
        for c in alg.masks() {
            if ll.get(a, c) && !comp.get(a, c) {
                return Some((a, c));
            }
        }
    }
    None
}

/// Axiom flags by quantifying over every element of the carrier.
pub fn axiom_report_exhaustive(pca: &PrecontactAlgebra) -> AxiomReport {
    let alg = pca.algebra();
    let n = alg.atom_count();
    let top = alg.top_mask();
    let name = |m: Mask| element_name(m, n);
    let mut witnesses = BTreeMap::new();

    let cref = match alg.masks().find(|&a| a != 0 && !pca.holds(a, a)) {
        Some(a) => {
            witnesses.insert("Cref".into(), format!("not {0} C {0}", name(a)));
            false
        }
        None => true,
    };
    let mut csym = true;
    'sym: for a in alg.masks() {
        for b in alg.masks() {
            if pca.holds(a, b) && !pca.holds(b, a) {
                witnesses.insert("Csym".into(), format!("{} C {} only", name(a), name(b)));
                csym = false;
                break 'sym;
            }
        }
    }
    let ll = LlRelation::of(pca).expect("within exhaustive limit");
    let ctr = match interpolates(&ll) {
        Some((a, c)) => {
            witnesses.insert(
                "Ctr".into(),
                format!("{} ≪ {} without interpolant", name(a), name(c)),
            );
            false
        }
        None => true,
    };
    let sharp_ll = LlRelation::of(&pca.c_sharp()).expect("within exhaustive limit");
    let ctr_sharp = match interpolates(&sharp_ll) {
        Some((a, c)) => {
            witnesses.insert(
                "Ctr#".into(),
                format!("{} ≪# {} without interpolant", name(a), name(c)),
            );
            false
        }
        None => true,
    };
    let ccon = match alg.masks().find(|&a| {
        let ac = alg.complement_mask(a);
        a != 0 && a != top && !pca.holds(a, ac) && !pca.holds(ac, a)
    }) {
        Some(a) => {
            witnesses.insert(
                "Ccon".into(),
                format!("{} separated from its complement", name(a)),
            );
            false
        }
        None => true,
    };
    let c6 = match alg
        .masks()
        .find(|&a| a != top && alg.masks().all(|b| b == 0 || pca.holds(b, a)))
    {
        Some(a) => {
            witnesses.insert("C6".into(), format!("every nonzero b contacts {}", name(a)));
            false
        }
        None => true,
    };
    let is_contact = cref && csym;
    AxiomReport {
        cref,
        csym,
        ctr,
        ctr_sharp,
        ccon,
        c6,
        is_contact,
        is_normal_contact: is_contact && ctr_sharp && c6,
        witnesses,
    }
}

/// Axiom flags from kernel-level characterisations. Used above the
/// exhaustive width limit; agreement with the exhaustive report is tested.
pub fn axiom_report_kernel(pca: &PrecontactAlgebra) -> AxiomReport {
    let k = pca.kernel();
    let n = pca.atom_count();
    let mut witnesses = BTreeMap::new();
    let cref = k.is_reflexive();
    if let Some(p) = (0..n).find(|&p| !k.contains(p, p)) {
        witnesses.insert("Cref".into(), format!("atom {p} not self-related"));
    }
    let csym = k.is_symmetric();
    if let Some((p, q)) = k.pairs().into_iter().find(|&(p, q)| !k.contains(q, p)) {
        witnesses.insert("Csym".into(), format!("kernel pair ({p},{q}) not reversed"));
    }
    let ctr = k.is_transitive();
    if !ctr {
        witnesses.insert("Ctr".into(), "kernel not transitive".into());
    }
    let ctr_sharp = k.sharp().is_transitive();
    if !ctr_sharp {
        witnesses.insert("Ctr#".into(), "C# kernel not transitive".into());
    }
    let ccon = k.is_weakly_connected();
    if !ccon {
        witnesses.insert("Ccon".into(), "kernel graph disconnected".into());
    }
    // C6 reduces to: for every atom r some atom q relates to nothing but r.
    let c6 = (0..n).all(|r| (0..n).any(|q| k.rows()[q] & !mask::bit(r) == 0));
    if !c6 {
        witnesses.insert("C6".into(), "some coatom contacts every atom".into());
    }
    let is_contact = cref && csym;
    AxiomReport {
        cref,
        csym,
        ctr,
        ctr_sharp,
        ccon,
        c6,
        is_contact,
        is_normal_contact: is_contact && ctr_sharp && c6,
        witnesses,
    }
}

/// Flags of the ≪ axioms, decided exhaustively.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LlAxiomReport {
    pub ll1: bool,
    pub ll2: bool,
    pub ll3: bool,
    pub ll4: bool,
    pub ll5: bool,
    pub ll6: bool,
    pub ll7: bool,
    pub ll2_prime: bool,
    pub ll4_prime: bool,
}

impl LlAxiomReport {
    /// The axiom set that characterises precontact relations.
    pub fn is_precontact(&self) -> bool {
        self.ll2 && self.ll2_prime && self.ll3 && self.ll4 && self.ll4_prime
    }

    fn first_precontact_failure(&self) -> Option<&'static str> {
        [
            ("≪2", self.ll2),
            ("≪2′", self.ll2_prime),
            ("≪3", self.ll3),
            ("≪4", self.ll4),
            ("≪4′", self.ll4_prime),
        ]
        .into_iter()
        .find(|(_, ok)| !ok)
        .map(|(name, _)| name)
    }
}

pub fn ll_axiom_report(ll: &LlRelation) -> LlAxiomReport {
    let alg = ll.algebra();
    let top = alg.top_mask();
    let elems: Vec<Mask> = alg.masks().collect();
    let leq = |a: Mask, b: Mask| a & !b == 0;
    let all2 =
        |f: &dyn Fn(Mask, Mask) -> bool| elems.iter().all(|&a| elems.iter().all(|&b| f(a, b)));

    let ll1 = all2(&|a, b| !ll.get(a, b) || leq(a, b));
    let ll2 = ll.get(0, 0);
    // Downward closed on the left and upward closed on the right is the
    // same as (≪3); checking single steps suffices.
    let ll3 = all2(&|b, c| {
        !ll.get(b, c)
            || (mask::ones(b).all(|p| ll.get(b & !mask::bit(p), c))
                && mask::ones(alg.complement_mask(c)).all(|p| ll.get(b, c | mask::bit(p))))
    });
    let ll4 = elems.iter().all(|&a| {
        elems
            .iter()
            .all(|&b| !ll.get(a, b) || elems.iter().all(|&c| !ll.get(a, c) || ll.get(a, b & c)))
    });
    let ll4_prime = elems.iter().all(|&c| {
        elems
            .iter()
            .all(|&a| !ll.get(a, c) || elems.iter().all(|&b| !ll.get(b, c) || ll.get(a | b, c)))
    });
    let ll5 = interpolates(ll).is_none();
    let ll6 = elems
        .iter()
        .all(|&a| a == 0 || elems.iter().any(|&b| b != 0 && ll.get(b, a)));
    let ll7 = all2(&|a, b| !ll.get(a, b) || ll.get(alg.complement_mask(b), alg.complement_mask(a)));
    let ll2_prime = ll.get(top, top);
    LlAxiomReport {
        ll1,
        ll2,
        ll3,
        ll4,
        ll5,
        ll6,
        ll7,
        ll2_prime,
        ll4_prime,
    }
}

/// Recovers `C` from `≪` via `a C b ⟺ not a ≪ b*`.
pub fn relation_from_ll(ll: &LlRelation) -> Result<RelationKernel> {
    let report = ll_axiom_report(ll);
    if let Some(name) = report.first_precontact_failure() {
        return Err(Error::axiom(name, "≪ relation fails this axiom"));
    }
    let alg = ll.algebra();
    let raw = RawRelation {
        algebra: alg,
        pairs: alg
            .masks()
            .flat_map(|a| alg.masks().map(move |b| (a, b)))
            .filter(|&(a, b)| !ll.get(a, alg.complement_mask(b)))
            .collect(),
    };
    normalize_relation(&raw)
}

/// A clan, identified by the atoms whose principal ultrafilters it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clan {
    pub support: Mask,
}

impl Clan {
    pub fn contains(&self, a: Mask) -> bool {
        a & self.support != 0
    }

    pub fn is_ultrafilter(&self) -> bool {
        self.support.count_ones() == 1
    }

    pub fn family(&self, algebra: BooleanAlgebra) -> ElementFamily {
        let members = algebra.masks().filter(|&a| self.contains(a)).collect();
        ElementFamily::trusted(FamilyKind::ClanCandidate, algebra, members)
    }
}

/// Nonempty cliques of the `C#` kernel in canonical support order.
pub fn clans(pca: &PrecontactAlgebra) -> Vec<Clan> {
    let sharp = pca.kernel().sharp();
    let n = pca.atom_count();
    let mut out = Vec::new();
    fn grow(
        rows: &[Mask],
        n: usize,
        from: usize,
        current: Mask,
        allowed: Mask,
        out: &mut Vec<Mask>,
    ) {
        for p in from..n {
            if mask::has(allowed, p) {
                let next = current | mask::bit(p);
                out.push(next);
                grow(rows, n, p + 1, next, allowed & rows[p], out);
            }
        }
    }
    grow(sharp.rows(), n, 0, 0, mask::full(n), &mut out);
    out.sort_by(|a, b| mask::support_order(*a, *b));
    out.into_iter().map(|support| Clan { support }).collect()
}

pub fn is_clan_support(pca: &PrecontactAlgebra, support: Mask) -> bool {
    let sharp = pca.kernel().sharp();
    support != 0
        && pca.algebra().contains_mask(support)
        && mask::ones(support).all(|p| support & !sharp.rows()[p] == 0)
}

/// Element-level clan test: a grill whose members are pairwise `C#`-related.
pub fn is_clan(pca: &PrecontactAlgebra, members: &BTreeSet<Mask>) -> bool {
    let alg = pca.algebra();
    if !crate::boolean::is_family(FamilyKind::Grill, alg, members) {
        return false;
    }
    let sharp = pca.c_sharp();
    members
        .iter()
        .all(|&a| members.iter().all(|&b| sharp.holds(a, b)))
}

/// Restricts the relation to the subalgebra whose atoms are the given
/// blocks. Also returns the embedding of the subalgebra into the original.
pub fn restrict_relation(
    pca: &PrecontactAlgebra,
    blocks: &[Mask],
) -> Result<(PrecontactAlgebra, BooleanHom)> {
    let alg = pca.algebra();
    let mut seen = 0;
    for &b in blocks {
        alg.check_mask(b)?;
        if b == 0 {
            return Err(Error::Domain("empty block in partition".into()));
        }
        if seen & b != 0 {
            return Err(Error::Domain("blocks of the partition overlap".into()));
        }
        seen |= b;
    }
    if seen != alg.top_mask() {
        return Err(Error::Domain("blocks do not cover every atom".into()));
    }
    let sub = BooleanAlgebra::new(blocks.len())?;
    let pairs = (0..blocks.len())
        .flat_map(|i| (0..blocks.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| pca.holds(blocks[i], blocks[j]));
    let restricted = PrecontactAlgebra::from_pairs(sub, pairs)?;
    let embedding = BooleanHom::from_atom_images(sub, alg, blocks)?;
    Ok((restricted, embedding))
}

/// A Boolean homomorphism reflecting the relation: `φ(a) C′ φ(b) ⟹ a C b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PcaMorphism {
    hom: BooleanHom,
    source: PrecontactAlgebra,
    target: PrecontactAlgebra,
}

impl PcaMorphism {
    pub fn new(
        hom: BooleanHom,
        source: PrecontactAlgebra,
        target: PrecontactAlgebra,
    ) -> Result<Self> {
        if let Some((q1, q2)) = pca_morphism_violation(&hom, &source, &target)? {
            return Err(Error::Validation(format!(
                "target kernel pair ({q1},{q2}) maps to source atoms ({},{}) which are not related",
                hom.atom_map()[q1],
                hom.atom_map()[q2]
            )));
        }
        Ok(PcaMorphism {
            hom,
            source,
            target,
        })
    }

    pub fn identity(pca: &PrecontactAlgebra) -> Self {
        PcaMorphism {
            hom: BooleanHom::identity(pca.algebra()),
            source: pca.clone(),
            target: pca.clone(),
        }
    }

    pub fn hom(&self) -> &BooleanHom {
        &self.hom
    }

    pub fn source(&self) -> &PrecontactAlgebra {
        &self.source
    }

    pub fn target(&self) -> &PrecontactAlgebra {
        &self.target
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &PcaMorphism) -> Result<PcaMorphism> {
        if self.target != next.source {
            return Err(Error::DomainMismatch("morphisms are not composable".into()));
        }
        Ok(PcaMorphism {
            hom: self.hom.then(&next.hom)?,
            source: self.source.clone(),
            target: next.target.clone(),
        })
    }
}

fn pca_morphism_violation(
    hom: &BooleanHom,
    source: &PrecontactAlgebra,
    target: &PrecontactAlgebra,
) -> Result<Option<(usize, usize)>> {
    if hom.source() != source.algebra() || hom.target() != target.algebra() {
        return Err(Error::Domain(
            "homomorphism does not run between the given algebras".into(),
        ));
    }
    let m = hom.atom_map();
    Ok(target
        .kernel()
        .pairs()
        .into_iter()
        .find(|&(q1, q2)| !source.kernel().contains(m[q1], m[q2])))
}

/// Decides the morphism condition on kernel pairs of the target.
pub fn is_pca_morphism(
    hom: &BooleanHom,
    source: &PrecontactAlgebra,
    target: &PrecontactAlgebra,
) -> Result<bool> {
    Ok(pca_morphism_violation(hom, source, target)?.is_none())
}

/// Calls `f` on every permutation of `0..n`.
pub(crate) fn for_each_permutation(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(perm: &mut Vec<usize>, used: &mut Vec<bool>, n: usize, f: &mut dyn FnMut(&[usize])) {
        if perm.len() == n {
            f(perm);
            return;
        }
        for i in 0..n {
            if !used[i] {
                used[i] = true;
                perm.push(i);
                go(perm, used, n, f);
                perm.pop();
                used[i] = false;
            }
        }
    }
    go(&mut Vec::with_capacity(n), &mut vec![false; n], n, f);
}

/// Lexicographically least sorted kernel-pair list over all atom
/// permutations. Two algebras are isomorphic iff their forms agree.
pub fn canonical_form(pca: &PrecontactAlgebra) -> Result<Vec<(usize, usize)>> {
    let n = pca.atom_count();
    if n > 8 {
        return Err(Error::Capacity {
            what: "atoms for canonical form",
            requested: n,
            limit: 8,
        });
    }
    let pairs = pca.kernel().pairs();
    let mut best: Option<Vec<(usize, usize)>> = None;
    for_each_permutation(n, &mut |perm| {
        let mut mapped: Vec<(usize, usize)> =
            pairs.iter().map(|&(p, q)| (perm[p], perm[q])).collect();
        mapped.sort_unstable();
        if best.as_ref().is_none_or(|b| mapped < *b) {
            best = Some(mapped);
        }
    });
    Ok(best.unwrap_or_default())
}

/// A PCA-isomorphism `a → b`, found by backtracking over atom bijections.
pub fn find_pca_isomorphism(a: &PrecontactAlgebra, b: &PrecontactAlgebra) -> Option<PcaMorphism> {
    let n = a.atom_count();
    if n != b.atom_count() || a.kernel().len() != b.kernel().len() {
        return None;
    }
    let (ka, kb) = (a.kernel(), b.kernel());
    let sig = |k: &RelationKernel, p: usize| {
        (
            k.rows()[p].count_ones(),
            k.transpose().rows()[p].count_ones(),
            k.contains(p, p),
        )
    };
    // forward[p] = image of source atom p.
    let mut forward = vec![usize::MAX; n];
    let mut used = 0;
    fn search(
        p: usize,
        n: usize,
        ka: &RelationKernel,
        kb: &RelationKernel,
        forward: &mut Vec<usize>,
        used: &mut Mask,
        sig: &dyn Fn(&RelationKernel, usize) -> (u32, u32, bool),
    ) -> bool {
        if p == n {
            return true;
        }
        for q in 0..n {
            if mask::has(*used, q) || sig(ka, p) != sig(kb, q) {
                continue;
            }
            let consistent = (0..p).all(|r| {
                ka.contains(p, r) == kb.contains(q, forward[r])
                    && ka.contains(r, p) == kb.contains(forward[r], q)
            }) && ka.contains(p, p) == kb.contains(q, q);
            if consistent {
                forward[p] = q;
                *used |= mask::bit(q);
                if search(p + 1, n, ka, kb, forward, used, sig) {
                    return true;
                }
                *used &= !mask::bit(q);
            }
        }
        false
    }
    if !search(0, n, ka, kb, &mut forward, &mut used, &sig) {
        return None;
    }
    let images: Vec<Mask> = forward.iter().map(|&q| mask::bit(q)).collect();
    let hom = BooleanHom::from_atom_images(a.algebra(), b.algebra(), &images).ok()?;
    PcaMorphism::new(hom, a.clone(), b.clone()).ok()
}

/// Whether a bijective hom carries `C` exactly onto `C′`.
pub fn is_pca_isomorphism(hom: &BooleanHom, a: &PrecontactAlgebra, b: &PrecontactAlgebra) -> bool {
    if !hom.is_bijective() || hom.source() != a.algebra() || hom.target() != b.algebra() {
        return false;
    }
    let m = hom.atom_map();
    // Bijective: the atom map is a permutation; relation must match exactly.
    let n = a.atom_count();
    (0..n)
        .all(|q1| (0..n).all(|q2| b.kernel().contains(q1, q2) == a.kernel().contains(m[q1], m[q2])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolean::{grills, ultrafilters};

    fn b(n: usize) -> BooleanAlgebra {
        BooleanAlgebra::new(n).unwrap()
    }

    fn path() -> PrecontactAlgebra {
        PrecontactAlgebra::from_pairs(b(3), [(0, 1), (1, 2)]).unwrap()
    }

    fn all_kernels(n: usize) -> impl Iterator<Item = PrecontactAlgebra> {
        let alg = b(n);
        (0u64..1 << (n * n)).map(move |code| {
            let rows = (0..n).map(|p| (code >> (p * n)) & mask::full(n)).collect();
            PrecontactAlgebra::new(RelationKernel::from_rows(alg, rows).unwrap())
        })
    }

    #[test]
    fn normalize_examples() {
        let b4 = b(2);
        let overlap = RawRelation::new(
            b4,
            b4.masks()
                .flat_map(|a| b4.masks().map(move |c| (a, c)))
                .filter(|(a, c)| a & c != 0),
        )
        .unwrap();
        let k = normalize_relation(&overlap).unwrap();
        assert_eq!(k.pairs(), vec![(0, 0), (1, 1)]);

        let bad = RawRelation::new(b4, [(0b11, 0)]).unwrap();
        match normalize_relation(&bad) {
            Err(Error::AxiomViolation { axiom, witness }) => {
                assert_eq!(axiom, "C0");
                assert_eq!(witness, "(1, 0)");
            }
            other => panic!("{other:?}"),
        }
        let bad = RawRelation::new(b4, [(0b01, 0b11)]).unwrap();
        match normalize_relation(&bad) {
            Err(Error::AxiomViolation { axiom, witness }) => {
                assert_eq!(axiom, "C+");
                assert_eq!(witness, "a0 vs (a0+a1)");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn holds_examples() {
        let s = rho_s(b(2));
        assert!(s.holds(0b01, 0b11));
        assert!(!s.holds(0, 0b11));
        assert!(path().holds(0b001, 0b110));
    }

    #[test]
    fn axiom_report_examples() {
        let r = rho_s(b(2)).axiom_report().clone();
        assert!(r.cref && r.csym && r.ctr && r.is_normal_contact);
        assert!(rho_l(b(2)).axiom_report().ccon);
        let p = path();
        let r = p.axiom_report();
        assert!(!r.csym && !r.ctr);
        assert!(r.witnesses.contains_key("Csym"));
    }

    #[test]
    fn c_sharp_examples() {
        assert_eq!(
            path().c_sharp().kernel().pairs(),
            vec![(0, 0), (0, 1), (1, 0), (1, 1), (1, 2), (2, 1), (2, 2)]
        );
        assert_eq!(rho_s(b(2)).c_sharp(), rho_s(b(2)));
        let empty = PrecontactAlgebra::new(RelationKernel::empty(b(2)));
        assert_eq!(empty.c_sharp(), rho_s(b(2)));
    }

    #[test]
    fn ll_examples() {
        let s = rho_s(b(2));
        for a in 0..4 {
            for c in 0..4 {
                assert_eq!(s.ll(a, c), a & !c == 0);
            }
        }
        let l = rho_l(b(2));
        for a in 0..4 {
            for c in 0..4 {
                assert_eq!(l.ll(a, c), a == 0 || c == 0b11);
            }
        }
        let p = path();
        let ll = LlRelation::of(&p).unwrap();
        assert_eq!(relation_from_ll(&ll).unwrap(), *p.kernel());
    }

    #[test]
    fn ll_axiom_report_examples() {
        let le = LlRelation::new(
            b(2),
            (0..4u64)
                .flat_map(|a| (0..4u64).map(move |c| (a, c)))
                .filter(|(a, c)| a & !c == 0),
        )
        .unwrap();
        let r = ll_axiom_report(&le);
        assert!(r.ll1 && r.ll2 && r.ll3 && r.ll4 && r.ll5 && r.ll6 && r.ll7);

        let r = ll_axiom_report(&LlRelation::of(&rho_l(b(2))).unwrap());
        assert!(r.ll1);
        assert!(!r.ll6);

        let empty = LlRelation::new(b(2), []).unwrap();
        assert!(!ll_axiom_report(&empty).ll2);
        assert!(matches!(
            relation_from_ll(&empty),
            Err(Error::AxiomViolation { .. })
        ));
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(rho_s(b(2)).kernel().pairs(), vec![(0, 0), (1, 1)]);
        assert_eq!(rho_l(b(2)).kernel().len(), 4);
        assert_eq!(rho_s(b(1)), rho_l(b(1)));
    }

    #[test]
    fn clans_examples() {
        let supports =
            |p: &PrecontactAlgebra| p.clans().iter().map(|c| c.support).collect::<Vec<_>>();
        assert_eq!(supports(&rho_s(b(2))), vec![0b01, 0b10]);
        assert_eq!(supports(&rho_l(b(2))), vec![0b01, 0b10, 0b11]);
        assert_eq!(supports(&path()), vec![0b001, 0b010, 0b100, 0b011, 0b110]);
        let ult: Vec<_> = ultrafilters(b(2))
            .iter()
            .map(|u| u.members().clone())
            .collect();
        let via: Vec<_> = rho_s(b(2))
            .clans()
            .iter()
            .map(|c| c.family(b(2)).members().clone())
            .collect();
        assert_eq!(ult, via);
        let gr: Vec<_> = grills(b(2)).iter().map(|u| u.members().clone()).collect();
        let via: Vec<_> = rho_l(b(2))
            .clans()
            .iter()
            .map(|c| c.family(b(2)).members().clone())
            .collect();
        assert_eq!(gr, via);
    }

    #[test]
    fn restrict_examples() {
        let (r, emb) = restrict_relation(&path(), &[0b001, 0b110]).unwrap();
        assert_eq!(r.atom_count(), 2);
        assert_eq!(r.kernel().pairs(), vec![(0, 1), (1, 1)]);
        assert_eq!(emb.apply_mask(0b10), 0b110);
        let (same, _) = restrict_relation(&path(), &[0b001, 0b010, 0b100]).unwrap();
        assert_eq!(same, path());
        let (one, _) = restrict_relation(&path(), &[0b111]).unwrap();
        assert_eq!(one.atom_count(), 1);
        assert!(one.kernel().contains(0, 0));
        assert!(matches!(
            restrict_relation(&path(), &[0b011, 0b110]),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn pca_morphism_examples() {
        let phi = BooleanHom::new(b(2), b(1), vec![0]).unwrap();
        assert!(is_pca_morphism(&phi, &rho_s(b(2)), &rho_s(b(1))).unwrap());
        let id = BooleanHom::identity(b(2));
        assert!(is_pca_morphism(&id, &rho_l(b(2)), &rho_l(b(2))).unwrap());
        let empty = PrecontactAlgebra::new(RelationKernel::empty(b(2)));
        assert!(!is_pca_morphism(&phi, &empty, &rho_s(b(1))).unwrap());
        assert!(matches!(
            is_pca_morphism(&phi, &rho_s(b(3)), &rho_s(b(1))),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn kernel_is_complete_invariant() {
        for n in 0..=2 {
            for pca in all_kernels(n) {
                let raw = pca.kernel().expand();
                assert_eq!(normalize_relation(&raw).unwrap(), *pca.kernel());
                // (C0) and (C+) of the expansion, checked directly.
                let alg = b(n);
                for x in alg.masks() {
                    assert!(!pca.holds(x, 0) && !pca.holds(0, x));
                    for y in alg.masks() {
                        for z in alg.masks() {
                            assert_eq!(pca.holds(x, y | z), pca.holds(x, y) || pca.holds(x, z));
                            assert_eq!(pca.holds(y | z, x), pca.holds(y, x) || pca.holds(z, x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn kernel_and_exhaustive_reports_agree() {
        for n in 0..=3 {
            for pca in all_kernels(n) {
                let ex = axiom_report_exhaustive(&pca);
                let kr = axiom_report_kernel(&pca);
                assert_eq!(
                    (ex.cref, ex.csym, ex.ctr, ex.ctr_sharp, ex.ccon, ex.c6),
                    (kr.cref, kr.csym, kr.ctr, kr.ctr_sharp, kr.ccon, kr.c6),
                    "{pca}"
                );
            }
        }
    }

    #[test]
    fn sharp_is_idempotent_contact_and_between_extremes() {
        for n in 1..=3 {
            for pca in all_kernels(n) {
                let s = pca.c_sharp();
                assert!(axiom_report_exhaustive(&s).is_contact);
                assert_eq!(s.c_sharp(), s);
                assert_eq!(pca.clans(), s.clans());
                if pca.is_contact() {
                    assert!(rho_s(b(n)).kernel().is_subset(pca.kernel()));
                    assert!(pca.kernel().is_subset(rho_l(b(n)).kernel()));
                }
            }
        }
    }

    #[test]
    fn clans_match_element_level_definition() {
        for pca in all_kernels(2).chain(all_kernels(3).step_by(7)) {
            let alg = pca.algebra();
            let listed: BTreeSet<Mask> = pca.clans().iter().map(|c| c.support).collect();
            for support in alg.masks().skip(1) {
                let members = Clan { support }.family(alg).members().clone();
                assert_eq!(is_clan(&pca, &members), listed.contains(&support));
            }
        }
    }

    #[test]
    fn restriction_preserves_clans() {
        for pca in all_kernels(3).step_by(5) {
            for blocks in [vec![0b001, 0b110], vec![0b011, 0b100], vec![0b111]] {
                let (sub, emb) = restrict_relation(&pca, &blocks).unwrap();
                for clan in pca.clans() {
                    // Γ ∩ A: block i belongs iff its image meets the support.
                    let restricted = (0..blocks.len())
                        .filter(|&i| emb.apply_mask(mask::bit(i)) & clan.support != 0)
                        .fold(0, |m, i| m | mask::bit(i));
                    assert!(is_clan_support(&sub, restricted));
                }
            }
        }
    }

    #[test]
    fn pca_morphism_kernel_test_matches_exhaustive() {
        for src in all_kernels(2) {
            for tgt in all_kernels(1).chain(all_kernels(2).step_by(3)) {
                for hom in crate::boolean::all_homs(src.algebra(), tgt.algebra()) {
                    let alg = src.algebra();
                    let exhaustive = alg.masks().all(|a| {
                        alg.masks().all(|c| {
                            !tgt.holds(hom.apply_mask(a), hom.apply_mask(c)) || src.holds(a, c)
                        })
                    });
                    assert_eq!(is_pca_morphism(&hom, &src, &tgt).unwrap(), exhaustive);
                }
            }
        }
    }

    #[test]
    fn isomorphism_search_agrees_with_canonical_form() {
        let ks: Vec<_> = all_kernels(2).collect();
        for x in &ks {
            for y in &ks {
                let iso = find_pca_isomorphism(x, y);
                assert_eq!(
                    iso.is_some(),
                    canonical_form(x).unwrap() == canonical_form(y).unwrap()
                );
                if let Some(m) = iso {
                    assert!(is_pca_isomorphism(m.hom(), x, y));
                }
            }
        }
    }
}
