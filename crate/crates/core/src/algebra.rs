//! Finite algebras: a universe size, named operations, and optional
//! designated tuples of constants, plus the standard constructions.

use std::collections::BTreeSet;

use crate::congruence::{compatibility_violation, Congruence};
use crate::error::AlgebraError;
use crate::op::{all_tuples, Element, Operation};
use crate::Limits;

/// A finite algebra on `{0, .., n-1}`.
///
/// Besides its operations, an algebra may designate two equal-width tuples
/// of nullary operation names, written `0 = (0_1, .., 0_N)` and
/// `1 = (1_1, .., 1_N)`. The width `N` is the constant frame width; most
/// algebras use `N = 0` (no designation) or small `N`. The designated
/// tuples anchor the notion of central element in [`crate::center`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteAlgebra {
    universe: usize,
    operations: Vec<Operation>,
    zero: Vec<String>,
    one: Vec<String>,
}

impl FiniteAlgebra {
    /// Assembles and validates an algebra.
    ///
    /// Fails on an empty universe, an operation on the wrong universe, a
    /// duplicate operation name, designated names that are missing or not
    /// nullary, or designated tuples of different widths.
    pub fn new(
        universe: usize,
        operations: Vec<Operation>,
        zero: Vec<String>,
        one: Vec<String>,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        if universe == 0 {
            return Err(AlgebraError::ElementOutOfRange { value: 0, universe: 0 });
        }
        for op in &operations {
            if op.universe() != universe {
                return Err(AlgebraError::UniverseMismatch {
                    left: universe,
                    right: op.universe(),
                });
            }
        }
        let mut names: Vec<&str> = operations.iter().map(|o| o.name()).collect();
        names.sort_unstable();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(AlgebraError::DuplicateOperation(w[0].to_string()));
        }
        if zero.len() != one.len() {
            return Err(AlgebraError::ConstantWidthMismatch {
                zero: zero.len(),
                one: one.len(),
            });
        }
        let algebra = FiniteAlgebra {
            universe,
            operations,
            zero,
            one,
        };
        for name in algebra.zero.iter().chain(algebra.one.iter()) {
            match algebra.op_by_name(name) {
                Some(op) if op.arity() == 0 => {}
                _ => return Err(AlgebraError::BadConstantName(name.clone())),
            }
        }
        Ok(algebra)
    }

    /// An algebra with no designated constants (`N = 0`).
    pub fn without_frame(
        universe: usize,
        operations: Vec<Operation>,
    ) -> Result<FiniteAlgebra, AlgebraError> {
        FiniteAlgebra::new(universe, operations, Vec::new(), Vec::new())
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn operations(&self) -> &[Operation] {
        &self.operations
    }

    pub fn op_by_name(&self, name: &str) -> Option<&Operation> {
        self.operations.iter().find(|o| o.name() == name)
    }

    /// Width `N` of the designated constant tuples.
    pub fn frame_width(&self) -> usize {
        self.zero.len()
    }

    pub fn zero_names(&self) -> &[String] {
        &self.zero
    }

    pub fn one_names(&self) -> &[String] {
        &self.one
    }

    /// The tuple of values of the designated zero constants.
    pub fn zero_tuple(&self) -> Vec<Element> {
        self.zero
            .iter()
            .map(|n| self.op_by_name(n).expect("validated").table()[0])
            .collect()
    }

    /// The tuple of values of the designated one constants.
    pub fn one_tuple(&self) -> Vec<Element> {
        self.one
            .iter()
            .map(|n| self.op_by_name(n).expect("validated").table()[0])
            .collect()
    }

    /// Adds one more operation, keeping the designation.
    pub fn with_operation(&self, op: Operation) -> Result<FiniteAlgebra, AlgebraError> {
        let mut operations = self.operations.clone();
        operations.push(op);
        FiniteAlgebra::new(self.universe, operations, self.zero.clone(), self.one.clone())
    }

    /// Checks that two algebras list the same operation names and arities
    /// in the same order and designate the same constant names.
    pub fn same_signature(&self, other: &FiniteAlgebra) -> Result<(), AlgebraError> {
        if self.operations.len() != other.operations.len() {
            return Err(AlgebraError::SignatureMismatch(format!(
                "{} operations vs {}",
                self.operations.len(),
                other.operations.len()
            )));
        }
        for (a, b) in self.operations.iter().zip(other.operations.iter()) {
            if a.name() != b.name() || a.arity() != b.arity() {
                return Err(AlgebraError::SignatureMismatch(format!(
                    "`{}`/{} vs `{}`/{}",
                    a.name(),
                    a.arity(),
                    b.name(),
                    b.arity()
                )));
            }
        }
        if self.zero != other.zero || self.one != other.one {
            return Err(AlgebraError::SignatureMismatch(
                "designated constants differ".to_string(),
            ));
        }
        Ok(())
    }
}

/// Pairing `(x, y) -> x * |B| + y` used for binary products.
pub fn encode_pair(x: Element, y: Element, right_universe: usize) -> Element {
    x * right_universe + y
}

/// Inverse of [`encode_pair`].
pub fn decode_pair(p: Element, right_universe: usize) -> (Element, Element) {
    (p / right_universe, p % right_universe)
}

/// Mixed-radix encoding of a coordinate tuple, first factor most
/// significant; consistent with [`encode_pair`] for two factors.
pub fn encode_family(coords: &[Element], sizes: &[usize]) -> Element {
    coords
        .iter()
        .zip(sizes.iter())
        .fold(0, |acc, (&c, &s)| acc * s + c)
}

/// Inverse of [`encode_family`].
pub fn decode_family(p: Element, sizes: &[usize]) -> Vec<Element> {
    let mut coords = vec![0; sizes.len()];
    let mut rest = p;
    for i in (0..sizes.len()).rev() {
        coords[i] = rest % sizes[i];
        rest /= sizes[i];
    }
    coords
}

/// The direct product `A x B` with elements encoded by [`encode_pair`].
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    product_family(&[a, b])
}

/// The direct product of a nonempty family, coordinates encoded by
/// [`encode_family`].
pub fn product_family(factors: &[&FiniteAlgebra]) -> Result<FiniteAlgebra, AlgebraError> {
    let first = factors.first().ok_or(AlgebraError::EmptyGeneration)?;
    for f in &factors[1..] {
        first.same_signature(f)?;
    }
    let sizes: Vec<usize> = factors.iter().map(|f| f.universe()).collect();
    let universe: usize = sizes.iter().product();
    let mut operations = Vec::with_capacity(first.operations().len());
    for (i, op) in first.operations().iter().enumerate() {
        let k = op.arity();
        let factor_ops: Vec<&Operation> = factors.iter().map(|f| &f.operations()[i]).collect();
        let mut coords = vec![Vec::new(); factors.len()];
        let table = all_tuples(universe, k)
            .map(|args| {
                for c in coords.iter_mut() {
                    c.clear();
                }
                for &arg in &args {
                    let decoded = decode_family(arg, &sizes);
                    for (c, d) in coords.iter_mut().zip(decoded) {
                        c.push(d);
                    }
                }
                let outs: Vec<Element> = factor_ops
                    .iter()
                    .zip(coords.iter())
                    .map(|(f, c)| f.apply(c))
                    .collect();
                encode_family(&outs, &sizes)
            })
            .collect();
        operations.push(Operation::new(op.name(), universe, k, table)?);
    }
    FiniteAlgebra::new(
        universe,
        operations,
        first.zero_names().to_vec(),
        first.one_names().to_vec(),
    )
}

/// The quotient `A / theta`, with elements the canonical block ids of
/// `theta` and operations acting on block representatives.
///
/// Fails with the concrete compatibility violation if `theta` is not a
/// congruence of `a`.
pub fn quotient(a: &FiniteAlgebra, theta: &Congruence) -> Result<FiniteAlgebra, AlgebraError> {
    if theta.universe() != a.universe() {
        return Err(AlgebraError::UniverseMismatch {
            left: a.universe(),
            right: theta.universe(),
        });
    }
    if let Some(v) = compatibility_violation(a, theta)? {
        return Err(AlgebraError::NotACongruence(v));
    }
    let reps: Vec<Element> = theta.blocks().iter().map(|b| b[0]).collect();
    let m = theta.num_blocks();
    let mut operations = Vec::with_capacity(a.operations().len());
    for op in a.operations() {
        let k = op.arity();
        let table = all_tuples(m, k)
            .map(|blocks| {
                let args: Vec<Element> = blocks.iter().map(|&b| reps[b]).collect();
                theta.block_of(op.apply(&args))
            })
            .collect();
        operations.push(Operation::new(op.name(), m, k, table)?);
    }
    FiniteAlgebra::new(
        m,
        operations,
        a.zero_names().to_vec(),
        a.one_names().to_vec(),
    )
}

/// The subalgebra of `a` generated by `gens`: closes the generators and
/// all constants under every operation.
///
/// Returns the subalgebra (universe re-indexed to `{0, .., m-1}`) together
/// with the embedding that lists, for each new index, the original
/// element. Generating from no elements requires at least one constant in
/// the signature.
pub fn subalgebra_generated(
    a: &FiniteAlgebra,
    gens: &[Element],
) -> Result<(FiniteAlgebra, Vec<Element>), AlgebraError> {
    let n = a.universe();
    if let Some(&bad) = gens.iter().find(|&&g| g >= n) {
        return Err(AlgebraError::ElementOutOfRange {
            value: bad,
            universe: n,
        });
    }
    let mut members: BTreeSet<Element> = gens.iter().copied().collect();
    for op in a.operations() {
        if op.arity() == 0 {
            members.insert(op.table()[0]);
        }
    }
    if members.is_empty() {
        return Err(AlgebraError::EmptyGeneration);
    }
    loop {
        let snapshot: Vec<Element> = members.iter().copied().collect();
        let before = members.len();
        for op in a.operations() {
            let k = op.arity();
            if k == 0 {
                continue;
            }
            let mut args = vec![0; k];
            for idx in all_tuples(snapshot.len(), k) {
                for (slot, &i) in args.iter_mut().zip(idx.iter()) {
                    *slot = snapshot[i];
                }
                members.insert(op.apply(&args));
            }
        }
        if members.len() == before {
            break;
        }
    }
    let embedding: Vec<Element> = members.iter().copied().collect();
    let mut index_of: Vec<Option<usize>> = vec![None; n];
    for (i, &x) in embedding.iter().enumerate() {
        index_of[x] = Some(i);
    }
    let m = embedding.len();
    let mut operations = Vec::with_capacity(a.operations().len());
    for op in a.operations() {
        let k = op.arity();
        let table = all_tuples(m, k)
            .map(|idx| {
                let args: Vec<Element> = idx.iter().map(|&i| embedding[i]).collect();
                index_of[op.apply(&args)].expect("closed under operations")
            })
            .collect();
        operations.push(Operation::new(op.name(), m, k, table)?);
    }
    let sub = FiniteAlgebra::new(
        m,
        operations,
        a.zero_names().to_vec(),
        a.one_names().to_vec(),
    )?;
    Ok((sub, embedding))
}

/// Whether `map` (a total function given as a vector over `A`) is a
/// homomorphism from `a` to `b`.
pub fn is_homomorphism(
    map: &[Element],
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
) -> Result<bool, AlgebraError> {
    a.same_signature(b)?;
    if map.len() != a.universe() {
        return Err(AlgebraError::MapLength {
            expected: a.universe(),
            got: map.len(),
        });
    }
    if let Some(&bad) = map.iter().find(|&&v| v >= b.universe()) {
        return Err(AlgebraError::ElementOutOfRange {
            value: bad,
            universe: b.universe(),
        });
    }
    for (fa, fb) in a.operations().iter().zip(b.operations()) {
        let k = fa.arity();
        for args in all_tuples(a.universe(), k) {
            let image: Vec<Element> = args.iter().map(|&x| map[x]).collect();
            if map[fa.apply(&args)] != fb.apply(&image) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Searches for an isomorphism from `a` to `b` by backtracking with
/// forced-image propagation; returns the first one found under the
/// deterministic order (least unassigned element, candidate images
/// ascending).
///
/// Requires equal universe sizes not exceeding `limits.max_iso_universe`
/// and equal signatures.
pub fn find_isomorphism(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    limits: &Limits,
) -> Result<Option<Vec<Element>>, AlgebraError> {
    a.same_signature(b)?;
    if a.universe() != b.universe() {
        return Err(AlgebraError::UniverseMismatch {
            left: a.universe(),
            right: b.universe(),
        });
    }
    if a.universe() > limits.max_iso_universe {
        return Err(AlgebraError::CapExceeded {
            what: "isomorphism search universe",
            needed: a.universe() as u64,
            cap: limits.max_iso_universe as u64,
        });
    }
    let mut phi: Vec<Option<Element>> = vec![None; a.universe()];
    let mut used = vec![false; b.universe()];
    Ok(search_iso(a, b, &mut phi, &mut used))
}

fn propagate_iso(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    phi: &mut [Option<Element>],
    used: &mut [bool],
) -> bool {
    loop {
        let mut changed = false;
        for (fa, fb) in a.operations().iter().zip(b.operations()) {
            let k = fa.arity();
            'tuple: for args in all_tuples(a.universe(), k) {
                let mut image = Vec::with_capacity(k);
                for &x in &args {
                    match phi[x] {
                        Some(y) => image.push(y),
                        None => continue 'tuple,
                    }
                }
                let z = fa.apply(&args);
                let w = fb.apply(&image);
                match phi[z] {
                    Some(pz) => {
                        if pz != w {
                            return false;
                        }
                    }
                    None => {
                        if used[w] {
                            return false;
                        }
                        phi[z] = Some(w);
                        used[w] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search_iso(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    phi: &mut Vec<Option<Element>>,
    used: &mut Vec<bool>,
) -> Option<Vec<Element>> {
    if !propagate_iso(a, b, phi, used) {
        return None;
    }
    let unassigned = phi.iter().position(|p| p.is_none());
    let x = match unassigned {
        None => {
            let map: Vec<Element> = phi.iter().map(|p| p.expect("assigned")).collect();
            let hom = is_homomorphism(&map, a, b).expect("validated inputs");
            return if hom { Some(map) } else { None };
        }
        Some(x) => x,
    };
    for y in 0..b.universe() {
        if used[y] {
            continue;
        }
        let mut phi2 = phi.clone();
        let mut used2 = used.clone();
        phi2[x] = Some(y);
        used2[y] = true;
        if let Some(map) = search_iso(a, b, &mut phi2, &mut used2) {
            return Some(map);
        }
    }
    None
}
