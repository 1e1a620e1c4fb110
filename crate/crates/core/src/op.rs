//! Finitary operations stored as full value tables.

use crate::error::AlgebraError;

/// An element of a finite universe `{0, .., n-1}`.
pub type Element = usize;

/// A `k`-ary operation on `{0, .., n-1}`, stored as a table of `n^k`
/// values.
///
/// The table is indexed in mixed radix with the first argument most
/// significant: the value at arguments `(a_0, .., a_{k-1})` sits at index
/// `a_0 * n^{k-1} + a_1 * n^{k-2} + .. + a_{k-1}`. A nullary operation has
/// a one-entry table holding its constant value.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Operation {
    name: String,
    arity: usize,
    universe: usize,
    table: Vec<Element>,
}

/// Number of entries in the table of a `k`-ary operation on `n` elements,
/// or `None` if `n^k` overflows.
pub fn table_len(universe: usize, arity: usize) -> Option<usize> {
    universe.checked_pow(u32::try_from(arity).ok()?)
}

/// Table index of an argument tuple, first argument most significant.
pub fn tuple_index(universe: usize, args: &[Element]) -> usize {
    args.iter().fold(0, |acc, &a| acc * universe + a)
}

/// Iterator over all tuples in `{0, .., n-1}^k` in lexicographic order.
///
/// For `k = 0` it yields exactly the empty tuple. For `n = 0` and `k > 0`
/// it yields nothing.
pub fn all_tuples(universe: usize, arity: usize) -> Tuples {
    Tuples {
        universe,
        current: vec![0; arity],
        done: universe == 0 && arity > 0,
    }
}

/// See [`all_tuples`].
pub struct Tuples {
    universe: usize,
    current: Vec<Element>,
    done: bool,
}

impl Iterator for Tuples {
    type Item = Vec<Element>;

    fn next(&mut self) -> Option<Vec<Element>> {
        if self.done {
            return None;
        }
        let item = self.current.clone();
        self.done = true;
        for i in (0..self.current.len()).rev() {
            if self.current[i] + 1 < self.universe {
                self.current[i] += 1;
                self.current[i + 1..].fill(0);
                self.done = false;
                break;
            }
        }
        Some(item)
    }
}

impl Operation {
    /// Wraps a table as an operation, validating its length and entries.
    pub fn new(
        name: impl Into<String>,
        universe: usize,
        arity: usize,
        table: Vec<Element>,
    ) -> Result<Operation, AlgebraError> {
        let expected = table_len(universe, arity).ok_or(AlgebraError::TableLength {
            expected: usize::MAX,
            got: table.len(),
        })?;
        if table.len() != expected {
            return Err(AlgebraError::TableLength {
                expected,
                got: table.len(),
            });
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= universe) {
            return Err(AlgebraError::ElementOutOfRange {
                value: bad,
                universe,
            });
        }
        Ok(Operation {
            name: name.into(),
            arity,
            universe,
            table,
        })
    }

    /// Builds the table of a `k`-ary operation from a closure.
    pub fn from_fn(
        name: impl Into<String>,
        universe: usize,
        arity: usize,
        mut f: impl FnMut(&[Element]) -> Element,
    ) -> Result<Operation, AlgebraError> {
        let table: Vec<Element> = all_tuples(universe, arity).map(|t| f(&t)).collect();
        Operation::new(name, universe, arity, table)
    }

    /// The `k`-ary projection onto argument `index`.
    pub fn projection(universe: usize, arity: usize, index: usize) -> Operation {
        assert!(index < arity, "projection index out of range");
        Operation::from_fn(format!("pr{arity}_{index}"), universe, arity, |t| t[index])
            .expect("projection table is always valid")
    }

    /// The nullary operation with the given value.
    pub fn constant(name: impl Into<String>, universe: usize, value: Element) -> Operation {
        assert!(value < universe, "constant value out of range");
        Operation {
            name: name.into(),
            arity: 0,
            universe,
            table: vec![value],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    /// Returns the same operation under a different name.
    pub fn renamed(&self, name: impl Into<String>) -> Operation {
        Operation {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Applies the operation to a full argument tuple.
    pub fn evaluate(&self, args: &[Element]) -> Result<Element, AlgebraError> {
        if args.len() != self.arity {
            return Err(AlgebraError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        if let Some(&bad) = args.iter().find(|&&a| a >= self.universe) {
            return Err(AlgebraError::ElementOutOfRange {
                value: bad,
                universe: self.universe,
            });
        }
        Ok(self.table[tuple_index(self.universe, args)])
    }

    /// Applies the operation without validating the arguments.
    ///
    /// Callers must guarantee `args.len()` equals the arity and every entry
    /// lies in the universe; hot loops use this after validating once.
    pub fn apply(&self, args: &[Element]) -> Element {
        debug_assert_eq!(args.len(), self.arity);
        self.table[tuple_index(self.universe, args)]
    }

    /// If this operation is a projection, returns the argument index it
    /// projects onto.
    ///
    /// On a one-element universe every operation is every projection; the
    /// least index wins.
    pub fn projection_index(&self) -> Option<usize> {
        (0..self.arity).find(|&i| {
            all_tuples(self.universe, self.arity)
                .enumerate()
                .all(|(pos, t)| self.table[pos] == t[i])
        })
    }
}
