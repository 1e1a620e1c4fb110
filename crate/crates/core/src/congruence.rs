//! Congruences as canonical partitions, principal congruence generation,
//! full congruence lattices, factor congruence pairs, and the factorable
//! congruence property for binary products.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::FiniteAlgebra;
use crate::error::AlgebraError;
use crate::op::{all_tuples, Element};
use crate::relation::Relation;
use crate::Limits;

/// A partition of `{0, .., n-1}` in canonical form: block ids are assigned
/// by first occurrence, so `block_id[0] == 0` and each new block takes the
/// next unused id.
///
/// The name reflects intended use; whether a given partition is compatible
/// with an algebra is checked by [`is_congruence`], and the constructors
/// in this module ([`principal_congruence`], [`congruence_generated`],
/// [`all_congruences`]) only ever produce compatible partitions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    block_id: Vec<usize>,
    num_blocks: usize,
}

impl Congruence {
    /// Canonicalizes an arbitrary block labelling.
    pub fn from_block_ids(raw: &[usize]) -> Congruence {
        // Labels exceeding the universe size cannot index the remap table;
        // use the linear-scan path for those.
        if raw.iter().any(|&r| r >= raw.len()) {
            return Congruence::from_labels_slow(raw);
        }
        let mut remap: Vec<Option<usize>> = vec![None; raw.len()];
        let mut block_id = Vec::with_capacity(raw.len());
        let mut next = 0;
        for &r in raw {
            let id = match remap[r] {
                Some(id) => id,
                None => {
                    let id = next;
                    next += 1;
                    remap[r] = Some(id);
                    id
                }
            };
            block_id.push(id);
        }
        Congruence {
            block_id,
            num_blocks: next,
        }
    }

    fn from_labels_slow(raw: &[usize]) -> Congruence {
        let mut seen: Vec<usize> = Vec::new();
        let mut block_id = Vec::with_capacity(raw.len());
        for &r in raw {
            let id = match seen.iter().position(|&s| s == r) {
                Some(id) => id,
                None => {
                    seen.push(r);
                    seen.len() - 1
                }
            };
            block_id.push(id);
        }
        Congruence {
            num_blocks: seen.len(),
            block_id,
        }
    }

    /// The identity partition: every element alone.
    pub fn diagonal(universe: usize) -> Congruence {
        Congruence {
            block_id: (0..universe).collect(),
            num_blocks: universe,
        }
    }

    /// The one-block partition.
    pub fn universal(universe: usize) -> Congruence {
        Congruence {
            block_id: vec![0; universe],
            num_blocks: if universe == 0 { 0 } else { 1 },
        }
    }

    /// The least partition relating every listed pair.
    pub fn from_pairs(
        universe: usize,
        pairs: &[(Element, Element)],
    ) -> Result<Congruence, AlgebraError> {
        let mut uf = UnionFind::new(universe);
        for &(x, y) in pairs {
            for v in [x, y] {
                if v >= universe {
                    return Err(AlgebraError::ElementOutOfRange { value: v, universe });
                }
            }
            uf.union(x, y);
        }
        Ok(uf.into_congruence())
    }

    pub fn universe(&self) -> usize {
        self.block_id.len()
    }

    pub fn num_blocks(&self) -> usize {
        self.num_blocks
    }

    pub fn block_of(&self, x: Element) -> usize {
        self.block_id[x]
    }

    pub fn related(&self, x: Element, y: Element) -> bool {
        self.block_id[x] == self.block_id[y]
    }

    pub fn is_diagonal(&self) -> bool {
        self.num_blocks == self.universe()
    }

    pub fn is_universal(&self) -> bool {
        self.num_blocks <= 1
    }

    /// The blocks in order of their least element.
    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let mut blocks = vec![Vec::new(); self.num_blocks];
        for (x, &b) in self.block_id.iter().enumerate() {
            blocks[b].push(x);
        }
        blocks
    }

    /// Whether every block of `self` lies inside a block of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        debug_assert_eq!(self.universe(), other.universe());
        let mut image: Vec<Option<usize>> = vec![None; self.num_blocks];
        for (x, &b) in self.block_id.iter().enumerate() {
            match image[b] {
                None => image[b] = Some(other.block_id[x]),
                Some(o) if o == other.block_id[x] => {}
                Some(_) => return false,
            }
        }
        true
    }

    /// Least upper bound in the partition lattice.
    pub fn join(&self, other: &Congruence) -> Result<Congruence, AlgebraError> {
        self.check_same_universe(other)?;
        let mut uf = UnionFind::new(self.universe());
        for c in [self, other] {
            let mut first: Vec<Option<Element>> = vec![None; c.num_blocks];
            for (x, &b) in c.block_id.iter().enumerate() {
                match first[b] {
                    None => first[b] = Some(x),
                    Some(f) => {
                        uf.union(f, x);
                    }
                }
            }
        }
        Ok(uf.into_congruence())
    }

    /// Greatest lower bound in the partition lattice.
    pub fn meet(&self, other: &Congruence) -> Result<Congruence, AlgebraError> {
        self.check_same_universe(other)?;
        let raw: Vec<usize> = (0..self.universe())
            .map(|x| self.block_id[x] * other.num_blocks + other.block_id[x])
            .collect();
        Ok(Congruence::from_labels_slow(&raw))
    }

    /// The relational composition `self ; other`: all pairs `(x, z)` with
    /// some `y` satisfying `x self y` and `y other z`.
    ///
    /// Composition of partitions is not symmetric in general, so the
    /// result is returned as a plain binary relation.
    pub fn compose(&self, other: &Congruence) -> Result<Relation, AlgebraError> {
        self.check_same_universe(other)?;
        let n = self.universe();
        let covered = self.coverage(other);
        let mut pairs = Vec::new();
        for x in 0..n {
            for z in 0..n {
                if covered[self.block_id[x]][z] {
                    pairs.push(vec![x, z]);
                }
            }
        }
        Relation::new(n, 2, pairs)
    }

    /// For each block `B` of `self`, which elements are reachable from `B`
    /// by one `other`-step.
    fn coverage(&self, other: &Congruence) -> Vec<Vec<bool>> {
        let n = self.universe();
        let mut covered = vec![vec![false; n]; self.num_blocks];
        for y in 0..n {
            let row = &mut covered[self.block_id[y]];
            for z in 0..n {
                if other.block_id[y] == other.block_id[z] {
                    row[z] = true;
                }
            }
        }
        covered
    }

    fn check_same_universe(&self, other: &Congruence) -> Result<(), AlgebraError> {
        if self.universe() != other.universe() {
            return Err(AlgebraError::UniverseMismatch {
                left: self.universe(),
                right: other.universe(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks = self.blocks();
        write!(f, "{{")?;
        for (i, block) in blocks.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "}}")
    }
}

/// The congruence of the product `A x B` whose classes are products of a
/// `ca`-class and a `cb`-class, under the pairing `(x, y) -> x * |B| + y`.
pub fn product_congruence(ca: &Congruence, cb: &Congruence) -> Congruence {
    let nb = cb.universe();
    let mut raw = Vec::with_capacity(ca.universe() * nb);
    for x in 0..ca.universe() {
        for y in 0..nb {
            raw.push(ca.block_of(x) * cb.num_blocks() + cb.block_of(y));
        }
    }
    Congruence::from_labels_slow(&raw)
}

/// Union-find with path halving, canonical root = least element.
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `x` and `y`; returns whether they were
    /// previously distinct.
    pub(crate) fn union(&mut self, x: usize, y: usize) -> bool {
        let rx = self.find(x);
        let ry = self.find(y);
        if rx == ry {
            return false;
        }
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }

    pub(crate) fn into_congruence(mut self) -> Congruence {
        let raw: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_block_ids(&raw)
    }
}

/// One incompatibility between a partition and an operation: two argument
/// tuples that differ in a single position by a related pair, whose
/// outputs land in different blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityViolation {
    pub op: String,
    pub args_x: Vec<Element>,
    pub args_y: Vec<Element>,
    pub out_x: Element,
    pub out_y: Element,
}

impl fmt::Display for CompatibilityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "op `{}` sends related arguments {:?} and {:?} to unrelated outputs {} and {}",
            self.op, self.args_x, self.args_y, self.out_x, self.out_y
        )
    }
}

/// Whether a partition is compatible with every operation of the algebra.
pub fn is_congruence(a: &FiniteAlgebra, c: &Congruence) -> Result<bool, AlgebraError> {
    compatibility_violation(a, c).map(|v| v.is_none())
}

/// Like [`is_congruence`] but returns the first violation found, scanning
/// operations, argument positions, and argument fillings in order.
///
/// Checking single-position changes suffices: a change in several
/// positions is a chain of single-position changes, and blocks are
/// transitively closed.
pub fn compatibility_violation(
    a: &FiniteAlgebra,
    c: &Congruence,
) -> Result<Option<CompatibilityViolation>, AlgebraError> {
    if c.universe() != a.universe() {
        return Err(AlgebraError::UniverseMismatch {
            left: a.universe(),
            right: c.universe(),
        });
    }
    let n = a.universe();
    let related_pairs: Vec<(Element, Element)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .filter(|&(u, v)| c.related(u, v))
        .collect();
    for op in a.operations() {
        let k = op.arity();
        if k == 0 {
            continue;
        }
        for p in 0..k {
            for filling in all_tuples(n, k - 1) {
                for &(u, v) in &related_pairs {
                    let mut args_x = filling.clone();
                    args_x.insert(p, u);
                    let mut args_y = filling.clone();
                    args_y.insert(p, v);
                    let out_x = op.apply(&args_x);
                    let out_y = op.apply(&args_y);
                    if !c.related(out_x, out_y) {
                        return Ok(Some(CompatibilityViolation {
                            op: op.name().to_string(),
                            args_x,
                            args_y,
                            out_x,
                            out_y,
                        }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// All distinct unary translation tables of the algebra: every operation
/// with one argument position left open and the rest filled by constants.
pub(crate) fn translations(a: &FiniteAlgebra) -> Vec<Vec<Element>> {
    let n = a.universe();
    let mut set: BTreeSet<Vec<Element>> = BTreeSet::new();
    for op in a.operations() {
        let k = op.arity();
        if k == 0 {
            continue;
        }
        for p in 0..k {
            for filling in all_tuples(n, k - 1) {
                let mut args = filling.clone();
                args.insert(p, 0);
                let table: Vec<Element> = (0..n)
                    .map(|z| {
                        args[p] = z;
                        op.apply(&args)
                    })
                    .collect();
                if (0..n).any(|z| table[z] != z) {
                    set.insert(table);
                }
            }
        }
    }
    set.into_iter().collect()
}

fn generated_with_translations(
    universe: usize,
    trans: &[Vec<Element>],
    seeds: &[(Element, Element)],
) -> Congruence {
    let mut uf = UnionFind::new(universe);
    let mut worklist: Vec<(Element, Element)> = seeds.to_vec();
    while let Some((x, y)) = worklist.pop() {
        if !uf.union(x, y) {
            continue;
        }
        for t in trans {
            let (tx, ty) = (t[x], t[y]);
            if uf.find(tx) != uf.find(ty) {
                worklist.push((tx, ty));
            }
        }
    }
    uf.into_congruence()
}

/// The least congruence of `a` relating `x` and `y`.
///
/// Computed by closing the seed pair under all unary translations inside a
/// union-find; a pair belongs to the principal congruence exactly when it
/// is connected by a chain of translated copies of the seed, so the
/// fixpoint of this closure is the whole congruence.
pub fn principal_congruence(
    a: &FiniteAlgebra,
    x: Element,
    y: Element,
) -> Result<Congruence, AlgebraError> {
    congruence_generated(a, &[(x, y)])
}

/// The least congruence of `a` relating every listed pair.
pub fn congruence_generated(
    a: &FiniteAlgebra,
    pairs: &[(Element, Element)],
) -> Result<Congruence, AlgebraError> {
    let n = a.universe();
    for &(x, y) in pairs {
        for v in [x, y] {
            if v >= n {
                return Err(AlgebraError::ElementOutOfRange { value: v, universe: n });
            }
        }
    }
    let trans = translations(a);
    Ok(generated_with_translations(n, &trans, pairs))
}

/// The congruence lattice of a finite algebra, as a sorted list of
/// canonical partitions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CongruenceLattice {
    congruences: Vec<Congruence>,
}

impl CongruenceLattice {
    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    pub fn len(&self) -> usize {
        self.congruences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.congruences.is_empty()
    }

    pub fn contains(&self, c: &Congruence) -> bool {
        self.congruences.binary_search(c).is_ok()
    }

    /// The nontrivial congruences: everything except the diagonal and the
    /// universal partition.
    pub fn proper(&self) -> impl Iterator<Item = &Congruence> {
        self.congruences
            .iter()
            .filter(|c| !c.is_diagonal() && !c.is_universal())
    }

    /// Cover relations of the lattice order (refinement), as index pairs
    /// `(lower, upper)` into [`Self::congruences`].
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.congruences.len();
        let leq: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.congruences[i].refines(&self.congruences[j]))
                    .collect()
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !leq[i][j] {
                    continue;
                }
                let covered = (0..n)
                    .any(|k| k != i && k != j && leq[i][k] && leq[k][j] && !leq[k][i] && !leq[j][k]);
                if !covered {
                    edges.push((i, j));
                }
            }
        }
        edges
    }
}

/// Enumerates every congruence of `a` as the join closure of the
/// principal congruences.
///
/// Every congruence is the join of the principal congruences it contains,
/// so closing the principal ones under binary join reaches the whole
/// lattice. Fails when the universe exceeds `limits.max_lattice_universe`.
pub fn all_congruences(
    a: &FiniteAlgebra,
    limits: &Limits,
) -> Result<CongruenceLattice, AlgebraError> {
    let n = a.universe();
    if n > limits.max_lattice_universe {
        return Err(AlgebraError::CapExceeded {
            what: "congruence lattice universe",
            needed: n as u64,
            cap: limits.max_lattice_universe as u64,
        });
    }
    let trans = translations(a);
    let mut set: BTreeSet<Congruence> = BTreeSet::new();
    set.insert(Congruence::diagonal(n));
    let mut frontier: Vec<Congruence> = Vec::new();
    for x in 0..n {
        for y in (x + 1)..n {
            let c = generated_with_translations(n, &trans, &[(x, y)]);
            if set.insert(c.clone()) {
                frontier.push(c);
            }
        }
    }
    while !frontier.is_empty() {
        let snapshot: Vec<Congruence> = set.iter().cloned().collect();
        let mut fresh: Vec<Congruence> = Vec::new();
        for f in &frontier {
            for s in &snapshot {
                let j = f.join(s).expect("same universe");
                if !set.contains(&j) {
                    set.insert(j.clone());
                    fresh.push(j);
                }
            }
        }
        frontier = fresh;
    }
    Ok(CongruenceLattice {
        congruences: set.into_iter().collect(),
    })
}

/// A pair of congruences witnessing a direct factorization: they meet in
/// the diagonal and compose to the universal relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPair {
    pub theta: Congruence,
    pub delta: Congruence,
}

/// Whether `(theta, delta)` is a factor pair of `a`: both compatible,
/// `theta meet delta` diagonal, and `theta ; delta` universal.
///
/// Composition is checked in the one order given; for factor pairs the
/// other order follows, which the test suite checks independently.
pub fn is_factor_pair(
    a: &FiniteAlgebra,
    theta: &Congruence,
    delta: &Congruence,
) -> Result<bool, AlgebraError> {
    for c in [theta, delta] {
        if let Some(v) = compatibility_violation(a, c)? {
            return Err(AlgebraError::NotACongruence(v));
        }
    }
    Ok(is_factor_pair_unchecked(theta, delta))
}

/// The factor pair conditions on two partitions assumed compatible.
pub(crate) fn is_factor_pair_unchecked(theta: &Congruence, delta: &Congruence) -> bool {
    if !theta.meet(delta).expect("same universe").is_diagonal() {
        return false;
    }
    let n = theta.universe();
    theta
        .coverage(delta)
        .iter()
        .all(|row| row.iter().filter(|&&b| b).count() == n)
}

/// All ordered factor pairs of `a`, sorted.
pub fn factor_pairs(a: &FiniteAlgebra, limits: &Limits) -> Result<Vec<FactorPair>, AlgebraError> {
    let lattice = all_congruences(a, limits)?;
    let mut pairs = Vec::new();
    for theta in lattice.congruences() {
        for delta in lattice.congruences() {
            if is_factor_pair_unchecked(theta, delta) {
                pairs.push(FactorPair {
                    theta: theta.clone(),
                    delta: delta.clone(),
                });
            }
        }
    }
    Ok(pairs)
}

/// Outcome of the factorable congruence check for a binary product.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FhpReport {
    /// Every congruence of `A x B` is a product of congruences.
    pub holds: bool,
    /// Size of the congruence lattice of `A x B`.
    pub product_lattice: usize,
    /// Number of product congruences `theta_A x theta_B`.
    pub expected: usize,
    /// A congruence of `A x B` that is not a product, if any.
    pub counterexample: Option<Congruence>,
}

/// Checks whether every congruence of `A x B` factors as a product of a
/// congruence of `A` and a congruence of `B`.
pub fn check_fhp(
    a: &FiniteAlgebra,
    b: &FiniteAlgebra,
    limits: &Limits,
) -> Result<FhpReport, AlgebraError> {
    let prod = crate::algebra::product(a, b)?;
    let lattice = all_congruences(&prod, limits)?;
    let lat_a = all_congruences(a, limits)?;
    let lat_b = all_congruences(b, limits)?;
    let mut products: BTreeSet<Congruence> = BTreeSet::new();
    for ca in lat_a.congruences() {
        for cb in lat_b.congruences() {
            products.insert(product_congruence(ca, cb));
        }
    }
    let counterexample = lattice
        .congruences()
        .iter()
        .find(|c| !products.contains(c))
        .cloned();
    Ok(FhpReport {
        holds: counterexample.is_none(),
        product_lattice: lattice.len(),
        expected: products.len(),
        counterexample,
    })
}

/// If `a` is subdirectly irreducible, returns its monolith: the least
/// congruence above the diagonal. Returns `None` for one-element algebras
/// and for algebras whose nontrivial congruences meet in the diagonal.
pub fn is_subdirectly_irreducible(
    a: &FiniteAlgebra,
    limits: &Limits,
) -> Result<Option<Congruence>, AlgebraError> {
    if a.universe() < 2 {
        return Ok(None);
    }
    let lattice = all_congruences(a, limits)?;
    let mut monolith: Option<Congruence> = None;
    for c in lattice.congruences() {
        if c.is_diagonal() {
            continue;
        }
        monolith = Some(match monolith {
            None => c.clone(),
            Some(m) => m.meet(c).expect("same universe"),
        });
    }
    Ok(monolith.filter(|m| !m.is_diagonal()))
}

/// Whether `a` has at least two elements and no congruences besides the
/// diagonal and the universal partition.
pub fn is_simple(a: &FiniteAlgebra, limits: &Limits) -> Result<bool, AlgebraError> {
    if a.universe() < 2 {
        return Ok(false);
    }
    let lattice = all_congruences(a, limits)?;
    Ok(lattice.len() == 2)
}

/// Whether `a` has more than one element and only the trivial factor
/// pairs, so it is not a direct product of smaller algebras.
pub fn is_directly_indecomposable(
    a: &FiniteAlgebra,
    limits: &Limits,
) -> Result<bool, AlgebraError> {
    if a.universe() < 2 {
        return Ok(false);
    }
    let pairs = factor_pairs(a, limits)?;
    Ok(pairs
        .iter()
        .all(|p| p.theta.is_diagonal() || p.delta.is_diagonal()))
}
