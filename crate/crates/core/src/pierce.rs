//! Stalks of the Pierce decomposition, the discrete patchwork property,
//! and a search for algebras that are directly indecomposable without
//! being subdirectly irreducible.
//!
//! Over a finite algebra the Boolean algebra of central elements is
//! finite, so its Stone space is just the set of atoms. The stalk at an
//! atom is the quotient by the congruence that collapses the atom onto
//! the one tuple, and the natural map into the product of all stalks
//! should recover the algebra. A directly indecomposable algebra has the
//! single atom `1` and its lone stalk is the algebra itself.

use std::collections::BTreeSet;

use crate::algebra::{
    decode_family, encode_family, find_isomorphism, is_homomorphism, product, product_family,
    quotient, subalgebra_generated, FiniteAlgebra,
};
use crate::center::{center, CentralElement};
use crate::congruence::{
    all_congruences, is_directly_indecomposable, is_subdirectly_irreducible, Congruence,
    CongruenceLattice,
};
use crate::error::AlgebraError;
use crate::op::Element;
use crate::Limits;

/// One stalk of the Pierce decomposition.
#[derive(Clone, Debug)]
pub struct Stalk {
    /// The atom of the center this stalk sits over.
    pub atom: CentralElement,
    /// The quotient of the base algebra by the atom's `theta1`.
    pub algebra: FiniteAlgebra,
    pub directly_indecomposable: bool,
    /// The monolith when the stalk is subdirectly irreducible.
    pub monolith: Option<Congruence>,
    pub simple: bool,
}

impl Stalk {
    pub fn subdirectly_irreducible(&self) -> bool {
        self.monolith.is_some()
    }
}

/// The full decomposition: stalks over every atom and whether the natural
/// map onto their product is an isomorphism.
#[derive(Clone, Debug)]
pub struct StalkReport {
    pub stalks: Vec<Stalk>,
    /// The map sending `x` to its family of stalk classes, encoded.
    pub natural_map: Vec<Element>,
    /// The natural map is an isomorphism onto the product of the stalks.
    pub product_recovers_algebra: bool,
}

/// Computes the stalk over every atom of the center, in the lexicographic
/// order of the atoms, and checks that the natural map into the product
/// of the stalks is an isomorphism.
pub fn pierce_stalks(a: &FiniteAlgebra, limits: &Limits) -> Result<StalkReport, AlgebraError> {
    let z = center(a, limits)?;
    let mut stalks = Vec::new();
    for idx in z.atoms() {
        let atom = z.elements()[idx].clone();
        let algebra = quotient(a, &atom.theta1)?;
        let directly_indecomposable = is_directly_indecomposable(&algebra, limits)?;
        let monolith = is_subdirectly_irreducible(&algebra, limits)?;
        let simple = crate::congruence::is_simple(&algebra, limits)?;
        stalks.push(Stalk {
            atom,
            algebra,
            directly_indecomposable,
            monolith,
            simple,
        });
    }

    let sizes: Vec<usize> = stalks.iter().map(|s| s.algebra.universe()).collect();
    let natural_map: Vec<Element> = (0..a.universe())
        .map(|x| {
            let coords: Vec<Element> = stalks
                .iter()
                .map(|s| s.atom.theta1.block_of(x))
                .collect();
            encode_family(&coords, &sizes)
        })
        .collect();

    let product_recovers_algebra = if stalks.is_empty() {
        false
    } else {
        let factors: Vec<&FiniteAlgebra> = stalks.iter().map(|s| &s.algebra).collect();
        let prod = product_family(&factors)?;
        let mut seen = vec![false; prod.universe()];
        let bijective = prod.universe() == a.universe()
            && natural_map.iter().all(|&y| {
                let fresh = !seen[y];
                seen[y] = true;
                fresh
            });
        bijective && is_homomorphism(&natural_map, a, &prod)?
    };

    Ok(StalkReport {
        stalks,
        natural_map,
        product_recovers_algebra,
    })
}

/// A failed patch: the tuple agreeing with `x` on the marked coordinates
/// and with `y` elsewhere is missing from the subuniverse.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatchworkCounterexample {
    pub x: Vec<Element>,
    pub y: Vec<Element>,
    /// `pattern[i]` marks the coordinates taken from `x`.
    pub pattern: Vec<bool>,
    pub patch: Vec<Element>,
}

/// Outcome of a discrete patchwork check.
#[derive(Clone, Debug)]
pub struct PatchworkReport {
    pub holds: bool,
    pub patches_checked: u64,
    pub counterexample: Option<PatchworkCounterexample>,
}

/// Checks the patchwork property of a subuniverse `b` of the product of
/// `factors` with the topology discrete: for every `x, y` in `b` and
/// every set `u` of coordinates, the tuple that copies `x` on `u` and `y`
/// off `u` must again lie in `b`.
///
/// `b` holds encoded product elements and must be subdirect: each factor
/// must be covered by the corresponding coordinates.
pub fn check_patchwork_discrete(
    factors: &[&FiniteAlgebra],
    b: &[Element],
) -> Result<PatchworkReport, AlgebraError> {
    if factors.is_empty() {
        return Err(AlgebraError::EmptyGeneration);
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.universe()).collect();
    let total: usize = sizes.iter().product();
    if let Some(&bad) = b.iter().find(|&&x| x >= total) {
        return Err(AlgebraError::ElementOutOfRange {
            value: bad,
            universe: total,
        });
    }
    let members: BTreeSet<Element> = b.iter().copied().collect();
    let decoded: Vec<Vec<Element>> = members.iter().map(|&x| decode_family(x, &sizes)).collect();
    for (i, &size) in sizes.iter().enumerate() {
        let covered: BTreeSet<Element> = decoded.iter().map(|t| t[i]).collect();
        if covered.len() != size {
            return Err(AlgebraError::NotSubdirect { factor: i });
        }
    }

    let width = sizes.len();
    let mut patches_checked = 0u64;
    for x in &decoded {
        for y in &decoded {
            for mask in 0..(1u32 << width) {
                let pattern: Vec<bool> = (0..width).map(|i| mask >> i & 1 == 1).collect();
                let patch: Vec<Element> = (0..width)
                    .map(|i| if pattern[i] { x[i] } else { y[i] })
                    .collect();
                patches_checked += 1;
                if !members.contains(&encode_family(&patch, &sizes)) {
                    return Ok(PatchworkReport {
                        holds: false,
                        patches_checked,
                        counterexample: Some(PatchworkCounterexample {
                            x: x.clone(),
                            y: y.clone(),
                            pattern,
                            patch,
                        }),
                    });
                }
            }
        }
    }
    Ok(PatchworkReport {
        holds: true,
        patches_checked,
        counterexample: None,
    })
}

/// A subalgebra of `base * base` that is directly indecomposable but not
/// subdirectly irreducible.
#[derive(Clone, Debug)]
pub struct DiNotSiWitness {
    /// Generators inside the square, encoded.
    pub generators: Vec<Element>,
    /// The subalgebra universe as encoded elements of the square.
    pub embedding: Vec<Element>,
    pub algebra: FiniteAlgebra,
    pub lattice: CongruenceLattice,
    /// At least two minimal congruences above the diagonal, so the meet
    /// of all nontrivial congruences is the diagonal.
    pub minimal_congruences: Vec<Congruence>,
}

/// Searches the square of `base` for subalgebras, generated by one or two
/// elements, that are directly indecomposable but not subdirectly
/// irreducible.
///
/// Candidate generators are scanned in ascending encoded order, repeated
/// subuniverses are skipped, and witnesses isomorphic to an earlier one
/// are dropped, so the result is deterministic.
pub fn search_di_not_si(
    base: &FiniteAlgebra,
    size_cap: usize,
    limits: &Limits,
) -> Result<Vec<DiNotSiWitness>, AlgebraError> {
    let square = product(base, base)?;
    let n = square.universe();

    let mut gen_sets: Vec<Vec<Element>> = (0..n).map(|g| vec![g]).collect();
    for g1 in 0..n {
        for g2 in g1 + 1..n {
            gen_sets.push(vec![g1, g2]);
        }
    }

    let mut seen_universes: BTreeSet<Vec<Element>> = BTreeSet::new();
    let mut witnesses: Vec<DiNotSiWitness> = Vec::new();
    for gens in gen_sets {
        let (sub, embedding) = subalgebra_generated(&square, &gens)?;
        if sub.universe() < 2 || sub.universe() > size_cap {
            continue;
        }
        if !seen_universes.insert(embedding.clone()) {
            continue;
        }
        let lattice = all_congruences(&sub, limits)?;
        let decomposable = lattice.congruences().iter().any(|theta| {
            !theta.is_diagonal()
                && lattice.congruences().iter().any(|delta| {
                    !delta.is_diagonal()
                        && crate::congruence::is_factor_pair_unchecked(theta, delta)
                })
        });
        if decomposable {
            continue;
        }
        let mut meet_of_nontrivial: Option<Congruence> = None;
        for c in lattice.congruences() {
            if !c.is_diagonal() {
                meet_of_nontrivial = Some(match meet_of_nontrivial {
                    None => c.clone(),
                    Some(m) => m.meet(c)?,
                });
            }
        }
        let subdirectly_irreducible = meet_of_nontrivial.is_some_and(|m| !m.is_diagonal());
        if subdirectly_irreducible {
            continue;
        }
        if witnesses
            .iter()
            .any(|w| matches!(find_isomorphism(&w.algebra, &sub, limits), Ok(Some(_))))
        {
            continue;
        }
        let nontrivial: Vec<&Congruence> = lattice
            .proper()
            .filter(|c| !c.is_diagonal())
            .collect();
        let minimal_congruences: Vec<Congruence> = nontrivial
            .iter()
            .filter(|c| !nontrivial.iter().any(|d| d != *c && d.refines(c)))
            .map(|c| (*c).clone())
            .collect();
        witnesses.push(DiNotSiWitness {
            generators: gens,
            embedding,
            algebra: sub,
            lattice,
            minimal_congruences,
        });
    }
    Ok(witnesses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{chain3_lattice, two_chain_lattice, z2_group};

    #[test]
    fn a_directly_indecomposable_algebra_is_its_own_single_stalk() {
        let a = two_chain_lattice();
        let report = pierce_stalks(&a, &Limits::default()).unwrap();
        assert_eq!(report.stalks.len(), 1);
        let stalk = &report.stalks[0];
        assert_eq!(stalk.algebra.universe(), 2);
        assert!(stalk.directly_indecomposable);
        assert!(stalk.subdirectly_irreducible());
        assert!(stalk.simple);
        assert!(report.product_recovers_algebra);
        assert_eq!(report.natural_map, vec![0, 1]);
    }

    #[test]
    fn the_square_splits_into_two_stalks() {
        let a = two_chain_lattice();
        let sq = product(&a, &a).unwrap();
        let report = pierce_stalks(&sq, &Limits::default()).unwrap();
        assert_eq!(report.stalks.len(), 2);
        for stalk in &report.stalks {
            assert_eq!(stalk.algebra.universe(), 2);
            assert!(stalk.simple);
            assert!(
                find_isomorphism(&stalk.algebra, &a, &Limits::default())
                    .unwrap()
                    .is_some()
            );
        }
        assert!(report.product_recovers_algebra);
    }

    #[test]
    fn stalk_flags_distinguish_indecomposable_from_irreducible() {
        let a = chain3_lattice();
        let report = pierce_stalks(&a, &Limits::default()).unwrap();
        assert_eq!(report.stalks.len(), 1);
        let stalk = &report.stalks[0];
        assert_eq!(stalk.algebra.universe(), 3);
        assert!(stalk.directly_indecomposable);
        assert!(!stalk.subdirectly_irreducible());
        assert!(!stalk.simple);
        assert!(report.product_recovers_algebra);
    }

    #[test]
    fn stalks_need_a_constant_frame() {
        let a = z2_group();
        assert!(matches!(
            pierce_stalks(&a, &Limits::default()),
            Err(AlgebraError::NoConstantFrame)
        ));
    }

    #[test]
    fn full_product_has_the_patchwork_property() {
        let a = two_chain_lattice();
        let all: Vec<Element> = (0..4).collect();
        let report = check_patchwork_discrete(&[&a, &a], &all).unwrap();
        assert!(report.holds);
        assert_eq!(report.patches_checked, 16 * 4);
        assert!(report.counterexample.is_none());
    }

    #[test]
    fn the_diagonal_fails_the_patchwork_property() {
        let a = two_chain_lattice();
        let diag = vec![0, 3];
        let report = check_patchwork_discrete(&[&a, &a], &diag).unwrap();
        assert!(!report.holds);
        let ce = report.counterexample.unwrap();
        assert_eq!(ce.patch.len(), 2);
        assert_ne!(ce.patch[0], ce.patch[1]);
        let sizes = [2, 2];
        assert!(!diag.contains(&encode_family(&ce.patch, &sizes)));
        for i in 0..2 {
            let expected = if ce.pattern[i] { ce.x[i] } else { ce.y[i] };
            assert_eq!(ce.patch[i], expected);
        }
    }

    #[test]
    fn patchwork_requires_subdirectness() {
        let a = two_chain_lattice();
        let missing_one = vec![0];
        assert!(matches!(
            check_patchwork_discrete(&[&a, &a], &missing_one),
            Err(AlgebraError::NotSubdirect { factor: 0 })
        ));
    }

    #[test]
    fn group_squares_contain_no_di_not_si_subalgebra() {
        let witnesses = search_di_not_si(&z2_group(), 4, &Limits::default()).unwrap();
        assert!(witnesses.is_empty());
    }

    #[test]
    fn di_not_si_witnesses_carry_their_own_evidence() {
        let a = chain3_lattice();
        let witnesses = search_di_not_si(&a, 9, &Limits::default()).unwrap();
        for w in &witnesses {
            assert!(is_directly_indecomposable(&w.algebra, &Limits::default()).unwrap());
            assert!(
                is_subdirectly_irreducible(&w.algebra, &Limits::default())
                    .unwrap()
                    .is_none()
            );
            assert!(w.minimal_congruences.len() >= 2);
            let mut meet = w.minimal_congruences[0].clone();
            for c in &w.minimal_congruences[1..] {
                meet = meet.meet(c).unwrap();
            }
            assert!(meet.is_diagonal());
            assert_eq!(w.embedding.len(), w.algebra.universe());
        }
        let again = search_di_not_si(&a, 9, &Limits::default()).unwrap();
        assert_eq!(witnesses.len(), again.len());
        for (w, v) in witnesses.iter().zip(again.iter()) {
            assert_eq!(w.generators, v.generators);
            assert_eq!(w.embedding, v.embedding);
        }
    }
}
