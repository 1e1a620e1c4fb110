//! Finitary relations on a finite universe, stored as sorted tuple sets.

use crate::error::AlgebraError;
use crate::op::{all_tuples, Element};

/// An `h`-ary relation on `{0, .., n-1}`: a duplicate-free, lexically
/// sorted set of `h`-tuples.
///
/// Sorting is part of the representation, so equality of relations is
/// plain structural equality and membership is a binary search.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    universe: usize,
    arity: usize,
    tuples: Vec<Vec<Element>>,
}

impl Relation {
    /// Builds a relation from any collection of tuples, sorting and
    /// deduplicating them.
    ///
    /// Fails if `arity` is zero, a tuple has the wrong length, or an entry
    /// lies outside the universe.
    pub fn new(
        universe: usize,
        arity: usize,
        tuples: impl IntoIterator<Item = Vec<Element>>,
    ) -> Result<Relation, AlgebraError> {
        if arity == 0 {
            return Err(AlgebraError::WrongRelationShape {
                expected: "arity at least 1",
            });
        }
        let mut tuples: Vec<Vec<Element>> = tuples.into_iter().collect();
        for t in &tuples {
            if t.len() != arity {
                return Err(AlgebraError::ArityMismatch {
                    expected: arity,
                    got: t.len(),
                });
            }
            if let Some(&bad) = t.iter().find(|&&v| v >= universe) {
                return Err(AlgebraError::ElementOutOfRange {
                    value: bad,
                    universe,
                });
            }
        }
        tuples.sort();
        tuples.dedup();
        Ok(Relation {
            universe,
            arity,
            tuples,
        })
    }

    /// The full relation `{0, .., n-1}^h`.
    pub fn full(universe: usize, arity: usize) -> Relation {
        Relation::new(universe, arity, all_tuples(universe, arity))
            .expect("full relation is always valid")
    }

    /// The binary diagonal `{(x, x)}`.
    pub fn diagonal(universe: usize) -> Relation {
        Relation::new(universe, 2, (0..universe).map(|x| vec![x, x]))
            .expect("diagonal is always valid")
    }

    /// The equivalence relation with the given blocks, as a set of pairs.
    ///
    /// The blocks must partition the universe.
    pub fn equivalence_from_blocks(
        universe: usize,
        blocks: &[Vec<Element>],
    ) -> Result<Relation, AlgebraError> {
        let mut seen = vec![false; universe];
        for block in blocks {
            for &x in block {
                if x >= universe {
                    return Err(AlgebraError::ElementOutOfRange {
                        value: x,
                        universe,
                    });
                }
                if seen[x] {
                    return Err(AlgebraError::WrongRelationShape {
                        expected: "disjoint blocks",
                    });
                }
                seen[x] = true;
            }
        }
        if !seen.iter().all(|&s| s) {
            return Err(AlgebraError::WrongRelationShape {
                expected: "blocks covering the universe",
            });
        }
        let mut pairs = Vec::new();
        for block in blocks {
            for &x in block {
                for &y in block {
                    pairs.push(vec![x, y]);
                }
            }
        }
        Relation::new(universe, 2, pairs)
    }

    /// The least totally reflexive, totally symmetric `h`-ary relation
    /// whose center contains the given elements: all tuples with a
    /// repeated entry plus all tuples that meet `center`.
    ///
    /// For a nonempty proper `center` and `h < n` this is a central
    /// relation in the sense of [`crate::classify`].
    pub fn central_hull(
        universe: usize,
        arity: usize,
        center: &[Element],
    ) -> Result<Relation, AlgebraError> {
        if let Some(&bad) = center.iter().find(|&&v| v >= universe) {
            return Err(AlgebraError::ElementOutOfRange {
                value: bad,
                universe,
            });
        }
        let tuples = all_tuples(universe, arity).filter(|t| {
            let repeat = (0..t.len()).any(|i| t[i + 1..].contains(&t[i]));
            repeat || t.iter().any(|x| center.contains(x))
        });
        Relation::new(universe, arity, tuples)
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn tuples(&self) -> &[Vec<Element>] {
        &self.tuples
    }

    pub fn len(&self) -> usize {
        self.tuples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tuples.is_empty()
    }

    /// Membership test by binary search.
    pub fn contains(&self, tuple: &[Element]) -> bool {
        self.tuples
            .binary_search_by(|t| t.as_slice().cmp(tuple))
            .is_ok()
    }

    /// Whether the relation is all of `{0, .., n-1}^h`.
    pub fn is_full(&self) -> bool {
        crate::op::table_len(self.universe, self.arity)
            .map(|full| self.tuples.len() == full)
            .unwrap_or(false)
    }
}
