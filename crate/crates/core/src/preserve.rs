//! Relation preservation with explicit counterexamples.

use crate::error::AlgebraError;
use crate::op::{Element, Operation};
use crate::relation::Relation;

/// Outcome of a preservation check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Preservation {
    /// Every choice of relation tuples maps back into the relation.
    Holds,
    /// Some choice escapes; the witness records the least one found.
    Fails(PreservationWitness),
}

impl Preservation {
    pub fn holds(&self) -> bool {
        matches!(self, Preservation::Holds)
    }

    pub fn witness(&self) -> Option<&PreservationWitness> {
        match self {
            Preservation::Holds => None,
            Preservation::Fails(w) => Some(w),
        }
    }
}

/// A counterexample to preservation: `rows` are `k` tuples of the
/// relation, and applying the operation position by position yields
/// `image`, which is outside the relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationWitness {
    pub rows: Vec<Vec<Element>>,
    pub image: Vec<Element>,
}

impl PreservationWitness {
    /// Re-derives the witness from scratch: every row must lie in the
    /// relation, the image must be the positionwise application of the
    /// operation, and the image must lie outside the relation.
    pub fn verify(&self, op: &Operation, rho: &Relation) -> bool {
        if self.rows.len() != op.arity() || self.image.len() != rho.arity() {
            return false;
        }
        if !self.rows.iter().all(|r| rho.contains(r)) {
            return false;
        }
        let mut args = vec![0; op.arity()];
        for j in 0..rho.arity() {
            for (i, row) in self.rows.iter().enumerate() {
                args[i] = row[j];
            }
            match op.evaluate(&args) {
                Ok(v) if v == self.image[j] => {}
                _ => return false,
            }
        }
        !rho.contains(&self.image)
    }
}

/// Checks whether an operation preserves a relation.
///
/// The operation `f` of arity `k` preserves the `h`-ary relation `rho`
/// when for every choice of `k` tuples from `rho` the tuple
/// `(f(r_1[j], .., r_k[j]))_{j < h}` again lies in `rho`. A nullary
/// operation preserves `rho` exactly when its constant `h`-tuple is a
/// member.
///
/// Choices are scanned in lexicographic order of row indices, so a failure
/// reports the least counterexample under that order.
pub fn preserves(op: &Operation, rho: &Relation) -> Result<Preservation, AlgebraError> {
    if op.universe() != rho.universe() {
        return Err(AlgebraError::UniverseMismatch {
            left: op.universe(),
            right: rho.universe(),
        });
    }
    let k = op.arity();
    let h = rho.arity();
    let m = rho.len();
    if m == 0 && k > 0 {
        return Ok(Preservation::Holds);
    }

    let mut choice = vec![0usize; k];
    let mut args = vec![0 as Element; k];
    let mut image = vec![0 as Element; h];
    loop {
        for j in 0..h {
            for (i, &row) in choice.iter().enumerate() {
                args[i] = rho.tuples()[row][j];
            }
            image[j] = op.apply(&args);
        }
        if !rho.contains(&image) {
            let rows = choice.iter().map(|&i| rho.tuples()[i].clone()).collect();
            return Ok(Preservation::Fails(PreservationWitness {
                rows,
                image,
            }));
        }

        let mut pos = k;
        while pos > 0 {
            pos -= 1;
            if choice[pos] + 1 < m {
                choice[pos] += 1;
                choice[pos + 1..].fill(0);
                break;
            }
            if pos == 0 {
                return Ok(Preservation::Holds);
            }
        }
        if k == 0 {
            return Ok(Preservation::Holds);
        }
    }
}
