//! Central elements of an algebra with designated constants, and the
//! Boolean algebra they form.

use crate::algebra::{self, FiniteAlgebra};
use crate::congruence::{congruence_generated, is_factor_pair_unchecked, Congruence};
use crate::error::AlgebraError;
use crate::op::{all_tuples, Element};
use crate::Limits;

/// A tuple `e` in `A^N` that decomposes the algebra: the congruences
/// generated by `e ~ 0` and `e ~ 1` (componentwise against the designated
/// constant tuples) form a factor pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralElement {
    pub e: Vec<Element>,
    /// Congruence generated by the pairs `(0_k, e_k)`.
    pub theta0: Congruence,
    /// Congruence generated by the pairs `(1_k, e_k)`.
    pub theta1: Congruence,
}

/// Tests whether `e` is central, returning its factor pair if so.
///
/// Requires a nonempty constant frame and an `N`-tuple over the universe.
pub fn is_central(
    a: &FiniteAlgebra,
    e: &[Element],
) -> Result<Option<CentralElement>, AlgebraError> {
    let n_frame = a.frame_width();
    if n_frame == 0 {
        return Err(AlgebraError::NoConstantFrame);
    }
    if e.len() != n_frame {
        return Err(AlgebraError::ArityMismatch {
            expected: n_frame,
            got: e.len(),
        });
    }
    if let Some(&bad) = e.iter().find(|&&v| v >= a.universe()) {
        return Err(AlgebraError::ElementOutOfRange {
            value: bad,
            universe: a.universe(),
        });
    }
    let zero = a.zero_tuple();
    let one = a.one_tuple();
    let pairs0: Vec<(Element, Element)> = zero.iter().copied().zip(e.iter().copied()).collect();
    let pairs1: Vec<(Element, Element)> = one.iter().copied().zip(e.iter().copied()).collect();
    let theta0 = congruence_generated(a, &pairs0)?;
    let theta1 = congruence_generated(a, &pairs1)?;
    if is_factor_pair_unchecked(&theta0, &theta1) {
        Ok(Some(CentralElement {
            e: e.to_vec(),
            theta0,
            theta1,
        }))
    } else {
        Ok(None)
    }
}

/// The central elements of `a` with their Boolean structure.
///
/// Elements are listed in lexicographic order of their tuples. The order
/// of the Boolean algebra is inclusion of `theta0`; meet and join are
/// computed through the congruence lattice operations and resolved back
/// to central elements.
#[derive(Clone, Debug)]
pub struct CenterAlgebra {
    elements: Vec<CentralElement>,
    zero: usize,
    one: usize,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    complement: Vec<usize>,
}

impl CenterAlgebra {
    pub fn elements(&self) -> &[CentralElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Index of the bottom element `0`.
    pub fn zero(&self) -> usize {
        self.zero
    }

    /// Index of the top element `1`.
    pub fn one(&self) -> usize {
        self.one
    }

    /// True when the designated tuples coincide, collapsing the Boolean
    /// algebra to a point.
    pub fn is_degenerate(&self) -> bool {
        self.zero == self.one
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn complement(&self, i: usize) -> usize {
        self.complement[i]
    }

    /// The Boolean order: `e <= e'` when `theta0(e)` refines `theta0(e')`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.elements[i].theta0.refines(&self.elements[j].theta0)
    }

    /// Indices of the atoms: elements covering the bottom.
    pub fn atoms(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| {
                i != self.zero
                    && (0..self.len())
                        .all(|j| j == i || j == self.zero || !self.leq(j, i))
            })
            .collect()
    }

    /// Index of a central element by its tuple.
    pub fn index_of(&self, e: &[Element]) -> Option<usize> {
        self.elements.iter().position(|c| c.e == e)
    }
}

/// Enumerates all central elements and assembles their Boolean algebra.
///
/// Fails if the algebra has no constant frame, the tuple space `n^N`
/// exceeds `limits.max_center_tuples`, or the central elements do not
/// carry the expected Boolean structure (missing bottom or top, a shared
/// factor congruence, a meet or join falling outside the center, a missing
/// complement, or a distributivity failure).
pub fn center(a: &FiniteAlgebra, limits: &Limits) -> Result<CenterAlgebra, AlgebraError> {
    let n_frame = a.frame_width();
    if n_frame == 0 {
        return Err(AlgebraError::NoConstantFrame);
    }
    let space = (a.universe() as u64)
        .checked_pow(n_frame as u32)
        .unwrap_or(u64::MAX);
    if space > limits.max_center_tuples {
        return Err(AlgebraError::CapExceeded {
            what: "central element tuple space",
            needed: space,
            cap: limits.max_center_tuples,
        });
    }
    let mut elements = Vec::new();
    for e in all_tuples(a.universe(), n_frame) {
        if let Some(ce) = is_central(a, &e)? {
            elements.push(ce);
        }
    }

    let zero = elements
        .iter()
        .position(|c| c.e == a.zero_tuple())
        .ok_or_else(|| AlgebraError::NotBoolean("designated zero tuple is not central".into()))?;
    let one = elements
        .iter()
        .position(|c| c.e == a.one_tuple())
        .ok_or_else(|| AlgebraError::NotBoolean("designated one tuple is not central".into()))?;

    for i in 0..elements.len() {
        for j in (i + 1)..elements.len() {
            if elements[i].theta0 == elements[j].theta0 {
                return Err(AlgebraError::NotBoolean(format!(
                    "central elements {:?} and {:?} share a factor congruence",
                    elements[i].e, elements[j].e
                )));
            }
        }
    }

    let resolve = |theta: &Congruence, what: &str| -> Result<usize, AlgebraError> {
        elements
            .iter()
            .position(|c| &c.theta0 == theta)
            .ok_or_else(|| {
                AlgebraError::NotBoolean(format!("{what} congruence has no central element"))
            })
    };

    let m = elements.len();
    let mut meet = vec![vec![0; m]; m];
    let mut join = vec![vec![0; m]; m];
    for i in 0..m {
        for j in 0..m {
            let lo = elements[i]
                .theta0
                .meet(&elements[j].theta0)
                .expect("same universe");
            let hi = elements[i]
                .theta0
                .join(&elements[j].theta0)
                .expect("same universe");
            meet[i][j] = resolve(&lo, "meet")?;
            join[i][j] = resolve(&hi, "join")?;
        }
    }
    let mut complement = vec![0; m];
    for i in 0..m {
        let c = elements
            .iter()
            .position(|d| d.theta0 == elements[i].theta1 && d.theta1 == elements[i].theta0)
            .ok_or_else(|| {
                AlgebraError::NotBoolean(format!("no complement for {:?}", elements[i].e))
            })?;
        complement[i] = c;
        if meet[i][c] != zero || join[i][c] != one {
            return Err(AlgebraError::NotBoolean(format!(
                "complement laws fail for {:?}",
                elements[i].e
            )));
        }
    }
    for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                if meet[i][join[j][k]] != join[meet[i][j]][meet[i][k]] {
                    return Err(AlgebraError::NotBoolean(format!(
                        "distributivity fails at indices ({i}, {j}, {k})"
                    )));
                }
            }
        }
    }

    Ok(CenterAlgebra {
        elements,
        zero,
        one,
        meet,
        join,
        complement,
    })
}

/// A direct decomposition induced by a central element: the two quotients
/// by its factor congruences and the natural isomorphism onto their
/// product.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// `A / theta0`.
    pub left: FiniteAlgebra,
    /// `A / theta1`.
    pub right: FiniteAlgebra,
    /// The map `x -> (x mod theta0, x mod theta1)` in the pair encoding of
    /// [`algebra::encode_pair`]; always an isomorphism.
    pub iso: Vec<Element>,
}

/// Splits `a` along a central element.
pub fn decompose(
    a: &FiniteAlgebra,
    ce: &CentralElement,
) -> Result<Decomposition, AlgebraError> {
    let left = algebra::quotient(a, &ce.theta0)?;
    let right = algebra::quotient(a, &ce.theta1)?;
    let iso: Vec<Element> = (0..a.universe())
        .map(|x| {
            algebra::encode_pair(
                ce.theta0.block_of(x),
                ce.theta1.block_of(x),
                ce.theta1.num_blocks(),
            )
        })
        .collect();
    let prod = algebra::product(&left, &right)?;
    debug_assert_eq!(prod.universe(), a.universe());
    let mut seen = vec![false; prod.universe()];
    for &p in &iso {
        if seen[p] {
            return Err(AlgebraError::NotBoolean(
                "factor pair does not separate points".into(),
            ));
        }
        seen[p] = true;
    }
    if !algebra::is_homomorphism(&iso, a, &prod)? {
        return Err(AlgebraError::NotBoolean(
            "natural map onto the product is not a homomorphism".into(),
        ));
    }
    Ok(Decomposition { left, right, iso })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::product;
    use crate::testutil::{chain3_lattice, two_chain_lattice};

    #[test]
    fn bounds_of_the_two_chain_are_its_central_elements() {
        let two = two_chain_lattice();
        let z = center(&two, &Limits::default()).unwrap();
        assert_eq!(z.len(), 2);
        assert_eq!(z.elements()[z.zero()].e, vec![0]);
        assert_eq!(z.elements()[z.one()].e, vec![1]);
        assert_eq!(z.complement(z.zero()), z.one());
        assert!(!z.is_degenerate());
    }

    #[test]
    fn middle_of_a_three_chain_is_not_central() {
        let chain = chain3_lattice();
        assert!(is_central(&chain, &[1]).unwrap().is_none());
        let z = center(&chain, &Limits::default()).unwrap();
        assert_eq!(z.len(), 2);
    }

    #[test]
    fn center_of_a_product_is_the_product_of_centers() {
        let two = two_chain_lattice();
        let square = product(&two, &two).unwrap();
        let z = center(&square, &Limits::default()).unwrap();
        assert_eq!(z.len(), 4);
        let e = z.index_of(&[algebra::encode_pair(0, 1, 2)]).unwrap();
        assert_eq!(z.complement(e), z.index_of(&[algebra::encode_pair(1, 0, 2)]).unwrap());
        assert_eq!(z.atoms().len(), 2);
    }

    #[test]
    fn factor_pair_of_a_central_element_composes_both_ways() {
        let two = two_chain_lattice();
        let square = product(&two, &two).unwrap();
        let z = center(&square, &Limits::default()).unwrap();
        for ce in z.elements() {
            assert!(ce.theta0.compose(&ce.theta1).unwrap().is_full());
            assert!(ce.theta1.compose(&ce.theta0).unwrap().is_full());
        }
    }

    #[test]
    fn mixed_pair_in_a_product_is_central() {
        let two = two_chain_lattice();
        let square = product(&two, &two).unwrap();
        let e = algebra::encode_pair(0, 1, 2);
        let ce = is_central(&square, &[e]).unwrap().expect("central");
        assert!(!ce.theta0.is_diagonal());
        assert!(!ce.theta0.is_universal());
    }

    #[test]
    fn no_frame_is_an_error() {
        let z2 = crate::testutil::z2_group();
        assert!(matches!(
            is_central(&z2, &[0]),
            Err(AlgebraError::NoConstantFrame)
        ));
        assert!(matches!(
            center(&z2, &Limits::default()),
            Err(AlgebraError::NoConstantFrame)
        ));
    }

    #[test]
    fn coinciding_designations_break_the_boolean_structure() {
        let meet = crate::op::Operation::from_fn("meet", 2, 2, |t| t[0].min(t[1])).unwrap();
        let join = crate::op::Operation::from_fn("join", 2, 2, |t| t[0].max(t[1])).unwrap();
        let c0 = crate::op::Operation::constant("c0", 2, 0);
        let a = FiniteAlgebra::new(
            2,
            vec![meet, join, c0],
            vec!["c0".into()],
            vec!["c0".into()],
        )
        .unwrap();
        assert!(matches!(
            center(&a, &Limits::default()),
            Err(AlgebraError::NotBoolean(_))
        ));
    }

    #[test]
    fn one_element_algebra_has_a_degenerate_center() {
        let c = crate::op::Operation::constant("c", 1, 0);
        let a = FiniteAlgebra::new(1, vec![c], vec!["c".into()], vec!["c".into()]).unwrap();
        let z = center(&a, &Limits::default()).unwrap();
        assert_eq!(z.len(), 1);
        assert!(z.is_degenerate());
    }

    #[test]
    fn decompose_splits_along_the_factor_pair() {
        let two = two_chain_lattice();
        let square = product(&two, &two).unwrap();
        let z = center(&square, &Limits::default()).unwrap();
        let e = z.index_of(&[algebra::encode_pair(0, 1, 2)]).unwrap();
        let d = decompose(&square, &z.elements()[e]).unwrap();
        assert_eq!(d.left.universe() * d.right.universe(), 4);
        let prod = product(&d.left, &d.right).unwrap();
        assert!(algebra::is_homomorphism(&d.iso, &square, &prod).unwrap());
    }

    #[test]
    fn decompose_by_the_bottom_gives_the_algebra_and_a_point() {
        let two = two_chain_lattice();
        let z = center(&two, &Limits::default()).unwrap();
        let d = decompose(&two, &z.elements()[z.zero()]).unwrap();
        assert_eq!(d.left.universe(), 2);
        assert_eq!(d.right.universe(), 1);
    }

    #[test]
    fn center_cap_is_enforced() {
        let two = two_chain_lattice();
        let limits = Limits {
            max_center_tuples: 1,
            ..Limits::default()
        };
        assert!(matches!(
            center(&two, &limits),
            Err(AlgebraError::CapExceeded { .. })
        ));
    }
}
