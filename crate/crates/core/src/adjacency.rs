//! Adjacency spaces, their precontact algebras, and the representation of a
//! precontact algebra on its ultrafilters.

use serde::Serialize;

use crate::boolean::{ultrafilters, BooleanAlgebra};
use crate::error::{Error, Result};
use crate::limits::limits;
use crate::mask::{self, Mask};
use crate::precontact::{restrict_relation, PrecontactAlgebra, RelationKernel};
use crate::report::DualityReport;
use crate::topology::FiniteSpace;

/// A nonempty set of cells with an adjacency relation and optionally a
/// topology on the cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdjacencySpace {
    names: Vec<String>,
    rows: Vec<Mask>,
    topology: Option<FiniteSpace>,
}

impl AdjacencySpace {
    pub fn new(
        names: Vec<String>,
        pairs: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let n = names.len();
        let mut rows = vec![0; n];
        for (x, y) in pairs {
            if x >= n || y >= n {
                return Err(Error::Domain(format!(
                    "pair ({x},{y}) out of range for {n} cells"
                )));
            }
            rows[x] |= mask::bit(y);
        }
        Self::from_rows(names, rows)
    }

    pub fn from_rows(names: Vec<String>, rows: Vec<Mask>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::Degenerate(
                "an adjacency space needs at least one cell".into(),
            ));
        }
        limits().check_points(names.len())?;
        if rows.len() != names.len() || rows.iter().any(|&r| r & !mask::full(names.len()) != 0) {
            return Err(Error::Domain("relation rows do not match the cells".into()));
        }
        Ok(AdjacencySpace {
            names,
            rows,
            topology: None,
        })
    }

    pub fn with_topology(mut self, topology: FiniteSpace) -> Result<Self> {
        if topology.len() != self.names.len() {
            return Err(Error::Domain(
                "topology has a different number of points".into(),
            ));
        }
        self.topology = Some(topology);
        Ok(self)
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

    pub fn rows(&self) -> &[Mask] {
        &self.rows
    }

    pub fn topology(&self) -> Option<&FiniteSpace> {
        self.topology.as_ref()
    }

    pub fn related(&self, x: usize, y: usize) -> bool {
        mask::has(self.rows[x], y)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &r)| mask::ones(r).map(move |y| (x, y)))
            .collect()
    }

    /// Stone adjacency space: discrete topology (finite Stone) with a closed
    /// relation. No topology counts as discrete.
    pub fn is_stone(&self) -> bool {
        match &self.topology {
            None => true,
            Some(t) => t.predicates().is_stone && is_closed_relation(&self.rows, t),
        }
    }

    fn kernel(&self) -> RelationKernel {
        let alg = BooleanAlgebra::with_limit(self.len(), 63).expect("at most 64 cells");
        RelationKernel::from_rows(alg, self.rows.clone()).expect("rows within cells")
    }

    pub fn is_reflexive(&self) -> bool {
        self.kernel().is_reflexive()
    }

    pub fn is_symmetric(&self) -> bool {
        self.kernel().is_symmetric()
    }

    pub fn is_transitive(&self) -> bool {
        self.kernel().is_transitive()
    }

    /// Every two distinct cells are joined by a path of `R^♭`.
    pub fn is_connected(&self) -> bool {
        self.kernel().is_weakly_connected()
    }

    /// Every two distinct cells are joined by a directed `R`-path in at
    /// least one direction.
    pub fn is_connected_directed(&self) -> bool {
        let n = self.len();
        let reach: Vec<Mask> = (0..n)
            .map(|x| {
                let mut seen = self.rows[x];
                let mut frontier = seen;
                while frontier != 0 {
                    let next = mask::ones(frontier).fold(0, |m, y| m | self.rows[y]) & !seen;
                    seen |= next;
                    frontier = next;
                }
                seen
            })
            .collect();
        (0..n).all(|x| (0..n).all(|y| x == y || mask::has(reach[x], y) || mask::has(reach[y], x)))
    }
}

/// `R^♭`: reflexive and symmetric closure.
pub fn r_flat(space: &AdjacencySpace) -> AdjacencySpace {
    let n = space.len();
    let rows = (0..n)
        .map(|x| {
            let back = (0..n)
                .filter(|&y| space.related(y, x))
                .fold(0, |m, y| m | mask::bit(y));
            space.rows[x] | back | mask::bit(x)
        })
        .collect();
    AdjacencySpace {
        names: space.names.clone(),
        rows,
        topology: space.topology.clone(),
    }
}

/// `(2^W, C_R)`, or its restriction to the subalgebra whose atoms are the
/// given blocks of cells.
pub fn contact_from_adjacency(
    space: &AdjacencySpace,
    carrier: Option<&[Mask]>,
) -> Result<PrecontactAlgebra> {
    let alg = BooleanAlgebra::new(space.len())?;
    let full = PrecontactAlgebra::new(RelationKernel::from_rows(alg, space.rows.clone())?);
    match carrier {
        None => Ok(full),
        Some(blocks) => Ok(restrict_relation(&full, blocks)?.0),
    }
}

/// Both sides of each biconditional relating properties of `R` to axioms of
/// `C_R`, computed independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdjacencyAxiomReport {
    pub reflexive_symmetric: bool,
    pub is_contact: bool,
    pub contact_iff: bool,
    pub transitive: bool,
    pub ctr: bool,
    pub ctr_iff: bool,
    /// Connectedness of `R^♭`.
    pub connected: bool,
    pub ccon: bool,
    pub ccon_iff: bool,
    /// The directed-path reading of connectedness, kept for comparison.
    pub connected_directed: bool,
    pub directed_iff: bool,
}

pub fn adjacency_axiom_report(space: &AdjacencySpace) -> Result<AdjacencyAxiomReport> {
    let pca = contact_from_adjacency(space, None)?;
    let axioms = pca.axiom_report();
    let reflexive_symmetric = space.is_reflexive() && space.is_symmetric();
    let transitive = space.is_transitive();
    let connected = space.is_connected();
    let connected_directed = space.is_connected_directed();
    Ok(AdjacencyAxiomReport {
        reflexive_symmetric,
        is_contact: axioms.is_contact,
        contact_iff: reflexive_symmetric == axioms.is_contact,
        transitive,
        ctr: axioms.ctr,
        ctr_iff: transitive == axioms.ctr,
        connected,
        ccon: axioms.ccon,
        ccon_iff: connected == axioms.ccon,
        connected_directed,
        directed_iff: connected_directed == axioms.ccon,
    })
}

/// `(Ult(B), R_B)` with the discrete topology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalAdjacency {
    pub source: PrecontactAlgebra,
    pub space: AdjacencySpace,
}

/// Cells are the principal ultrafilters `↑p`; `↑p R_B ↑q` iff `(p, q)` is a
/// kernel pair.
pub fn canonical_adjacency(pca: &PrecontactAlgebra) -> Result<CanonicalAdjacency> {
    let n = pca.atom_count();
    if n == 0 {
        return Err(Error::Degenerate(
            "the one-element algebra has no ultrafilters".into(),
        ));
    }
    let names: Vec<String> = (0..n).map(|p| format!("↑a{p}")).collect();
    let topology = FiniteSpace::discrete(names.clone())?;
    let space =
        AdjacencySpace::from_rows(names, pca.kernel().rows().to_vec())?.with_topology(topology)?;
    Ok(CanonicalAdjacency {
        source: pca.clone(),
        space,
    })
}

/// `R_B` straight from its definition `U1 R U2 ⟺ U1 × U2 ⊆ C`, quantifying
/// over all members of each pair of ultrafilters.
pub fn canonical_adjacency_literal(pca: &PrecontactAlgebra) -> Result<Vec<Mask>> {
    limits().check_exhaustive(pca.atom_count())?;
    let ults = ultrafilters(pca.algebra());
    Ok(ults
        .iter()
        .map(|u1| {
            ults.iter()
                .enumerate()
                .filter(|(_, u2)| {
                    u1.members()
                        .iter()
                        .all(|&a| u2.members().iter().all(|&b| pca.holds(a, b)))
                })
                .fold(0, |m, (j, _)| m | mask::bit(j))
        })
        .collect())
}

/// Whether `R` is closed in `X × X`. The closure of a relation in a finite
/// product is the union of `cl{x} × cl{y}` over its pairs.
pub fn is_closed_relation(rows: &[Mask], space: &FiniteSpace) -> bool {
    relation_closure(rows, space) == rows
}

pub fn relation_closure(rows: &[Mask], space: &FiniteSpace) -> Vec<Mask> {
    let mut out = vec![0; rows.len()];
    for (x, &r) in rows.iter().enumerate() {
        if r == 0 {
            continue;
        }
        let right = space.closure(r);
        for x2 in mask::ones(space.point_closure(x)) {
            out[x2] |= right;
        }
    }
    out
}

/// Verifies that the Stone map is a PCA-isomorphism onto the clopen algebra of
/// the canonical adjacency space, and that reflexivity, symmetry, and
/// transitivity of `R_B` match the corresponding axioms.
pub fn representation_check(pca: &PrecontactAlgebra) -> Result<DualityReport> {
    let canon = canonical_adjacency(pca)?;
    let n = pca.atom_count();
    let alg = pca.algebra();
    let mut report = DualityReport::new(format!("representation of {pca}"));
    let exhaustive = n <= limits().max_exhaustive_atoms;
    let rows: Vec<Mask> = if exhaustive {
        canonical_adjacency_literal(pca)?
    } else {
        canon.space.rows.clone()
    };
    report.record(
        "R_B agrees with U1×U2 ⊆ C",
        if rows == canon.space.rows {
            Ok(())
        } else {
            Err(format!(
                "literal rows {rows:?} vs kernel rows {:?}",
                canon.space.rows
            ))
        },
    );
    // The Stone map, computed from ultrafilter membership.
    let ults = ultrafilters(alg);
    let stone = |a: Mask| {
        ults.iter()
            .enumerate()
            .filter(|(_, u)| u.contains(a))
            .fold(0, |m, (i, _)| m | mask::bit(i))
    };
    let c_r = |m: Mask, k: Mask| mask::ones(m).any(|x| rows[x] & k != 0);
    let elems: Vec<Mask> = if exhaustive {
        alg.masks().collect()
    } else {
        (0..n).map(mask::bit).chain([0, alg.top_mask()]).collect()
    };
    let images: Vec<Mask> = elems.iter().map(|&a| stone(a)).collect();
    let mut sorted = images.clone();
    sorted.sort_unstable();
    sorted.dedup();
    let bijective =
        sorted.len() == elems.len() && (!exhaustive || sorted.len() as u64 == alg.size());
    report.push(
        "Stone map is a bijection onto CO(S(B))",
        bijective,
        Some("two elements share an image".into()),
    );
    let mut iso = Ok(());
    'outer: for (i, &a) in elems.iter().enumerate() {
        for (j, &b) in elems.iter().enumerate() {
            if pca.holds(a, b) != c_r(images[i], images[j]) {
                iso = Err(format!(
                    "({}, {})",
                    crate::boolean::element_name(a, n),
                    crate::boolean::element_name(b, n)
                ));
                break 'outer;
            }
        }
    }
    report.record("Stone map preserves and reflects contact", iso);
    let axioms = pca.axiom_report();
    let adj = &canon.space;
    for (name, ax, rel) in [
        ("Cref iff R_B reflexive", axioms.cref, adj.is_reflexive()),
        ("Csym iff R_B symmetric", axioms.csym, adj.is_symmetric()),
        ("Ctr iff R_B transitive", axioms.ctr, adj.is_transitive()),
    ] {
        report.push(name, ax == rel, Some(format!("axiom {ax}, relation {rel}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn cells(n: usize) -> Vec<String> {
        ["x", "y", "z", "w"][..n]
            .iter()
            .map(|s| s.to_string())
            .collect()
    }

    fn all_adjacency(n: usize) -> impl Iterator<Item = AdjacencySpace> {
        (0u64..1 << (n * n)).map(move |code| {
            let rows = (0..n).map(|x| (code >> (x * n)) & mask::full(n)).collect();
            AdjacencySpace::from_rows(cells(n), rows).unwrap()
        })
    }

    #[test]
    fn r_flat_examples() {
        let a = AdjacencySpace::new(cells(2), [(0, 1)]).unwrap();
        assert_eq!(r_flat(&a).pairs(), vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let f = r_flat(&a);
        assert_eq!(r_flat(&f), f);
        let b = AdjacencySpace::new(cells(3), [(0, 1), (1, 2)]).unwrap();
        assert_eq!(r_flat(&b).pairs().len(), 7);
        assert!(matches!(
            AdjacencySpace::new(vec![], []),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn contact_from_adjacency_examples() {
        let a = AdjacencySpace::new(cells(2), [(0, 1)]).unwrap();
        assert_eq!(
            contact_from_adjacency(&a, None).unwrap().kernel().pairs(),
            vec![(0, 1)]
        );
        let rs = r_flat(&a);
        assert!(
            contact_from_adjacency(&rs, None)
                .unwrap()
                .axiom_report()
                .is_contact
        );
        let b = AdjacencySpace::new(cells(3), [(0, 1), (1, 2)]).unwrap();
        assert!(!contact_from_adjacency(&b, None).unwrap().axiom_report().ctr);
    }

    #[test]
    fn adjacency_axioms_examples() {
        let a = AdjacencySpace::new(cells(2), [(0, 1)]).unwrap();
        let r = adjacency_axiom_report(&a).unwrap();
        assert!(r.transitive && r.ctr && r.ctr_iff);
        assert!(r.connected && r.ccon && r.ccon_iff);
        let e = AdjacencySpace::new(cells(2), []).unwrap();
        let r = adjacency_axiom_report(&e).unwrap();
        assert!(!r.connected && !r.ccon && r.ccon_iff);
    }

    #[test]
    fn directed_reading_of_connectedness_is_too_strong() {
        // x → y ← z: every nontrivial split has a crossing pair, but x and z
        // are not joined by a directed path either way.
        let a = AdjacencySpace::new(cells(3), [(0, 1), (2, 1)]).unwrap();
        let r = adjacency_axiom_report(&a).unwrap();
        assert!(r.ccon && r.connected && !r.connected_directed);
        assert!(r.ccon_iff && !r.directed_iff);
    }

    #[test]
    fn adjacency_axioms_exhaustive() {
        for n in 1..=3 {
            for a in all_adjacency(n) {
                let r = adjacency_axiom_report(&a).unwrap();
                assert!(r.contact_iff && r.ctr_iff && r.ccon_iff, "{a:?}");
                let flat = r_flat(&a);
                assert_eq!(r_flat(&flat), flat);
                assert!(flat.is_reflexive() && flat.is_symmetric());
                let cr = contact_from_adjacency(&a, None).unwrap();
                assert_eq!(contact_from_adjacency(&flat, None).unwrap(), cr.c_sharp());
                if a.is_reflexive() && a.is_symmetric() {
                    assert_eq!(cr.c_sharp(), cr);
                }
                // Representation recovers R on the ultrafilters.
                let canon = canonical_adjacency(&cr).unwrap();
                assert_eq!(canon.space.rows(), a.rows());
                assert_eq!(canonical_adjacency_literal(&cr).unwrap(), a.rows());
                assert!(representation_check(&cr).unwrap().passed());
            }
        }
    }

    #[test]
    fn canonical_adjacency_examples() {
        let p = canonical_adjacency(&fixtures::b8_path()).unwrap();
        assert_eq!(p.space.pairs(), vec![(0, 1), (1, 2)]);
        let s = canonical_adjacency(&fixtures::b4_rho_s()).unwrap();
        assert_eq!(s.space.pairs(), vec![(0, 0), (1, 1)]);
        let l = canonical_adjacency(&fixtures::b4_rho_l()).unwrap();
        assert_eq!(l.space.pairs().len(), 4);
        let degenerate =
            PrecontactAlgebra::new(RelationKernel::empty(BooleanAlgebra::new(0).unwrap()));
        assert!(canonical_adjacency(&degenerate).is_err());
    }

    #[test]
    fn closed_relation_examples() {
        let d = fixtures::discrete(2);
        assert!(is_closed_relation(&[0b10, 0b01], &d));
        let xl = fixtures::x_l_space();
        assert!(!is_closed_relation(&[0b010, 0, 0], &xl));
        assert_eq!(relation_closure(&[0b010, 0, 0], &xl), vec![0b110, 0, 0b110]);
        assert!(is_closed_relation(&[0, 0, 0], &xl));
    }

    #[test]
    fn closed_relation_matches_product_topology() {
        // Brute force: R is closed iff its complement is a union of open boxes.
        let xl = fixtures::x_l_space();
        let opens = xl.open_sets().unwrap();
        for code in 0u64..1 << 9 {
            let rows: Vec<Mask> = (0..3).map(|x| (code >> (3 * x)) & 0b111).collect();
            let complement_open = (0..3).all(|x| {
                mask::ones(0b111 & !rows[x]).all(|y| {
                    opens.iter().any(|&u| {
                        mask::has(u, x)
                            && opens.iter().any(|&v| {
                                mask::has(v, y) && mask::ones(u).all(|x2| rows[x2] & v == 0)
                            })
                    })
                })
            });
            assert_eq!(is_closed_relation(&rows, &xl), complement_open);
        }
    }

    #[test]
    fn representation_examples() {
        let r = representation_check(&fixtures::b8_path()).unwrap();
        assert!(r.passed());
        assert!(!fixtures::b8_path().axiom_report().csym);
        assert!(representation_check(&fixtures::b4_rho_s())
            .unwrap()
            .passed());
        assert!(
            representation_check(&crate::precontact::rho_l(BooleanAlgebra::new(1).unwrap()))
                .unwrap()
                .passed()
        );
    }
}
