//! Clones of relation-preserving operations.
//!
//! The central object is the algebra `P_sigma` whose operations are all
//! operations preserving a fixed relation `sigma`, truncated to a small
//! arity cap so it fits in memory. This module enumerates those
//! operations, assembles the truncated algebra with a designated constant
//! frame, closes operation sets under composition, and builds or refutes
//! the specific terms that drive the verification pipelines: the Pierce
//! instruction `U`, the guarded switch `f` for equivalence relations, and
//! general `u`-terms with `u(x, y, 0) = x` and `u(x, y, 1) = y`.

use std::collections::BTreeSet;

use crate::algebra::FiniteAlgebra;
use crate::classify::{classify, is_central_relation, RelationClass};
use crate::error::AlgebraError;
use crate::op::{all_tuples, table_len, tuple_index, Element, Operation};
use crate::relation::Relation;
use crate::Limits;

/// The ternary discriminator: `t(x, y, z) = z` when `x = y`, else `x`.
pub fn discriminator(universe: usize) -> Operation {
    Operation::from_fn("t", universe, 3, |a| if a[0] == a[1] { a[2] } else { a[0] })
        .expect("discriminator table is always valid")
}

/// Enumerates every operation of the given arity that preserves `sigma`,
/// in lexicographic order of their tables.
///
/// Nullary results are named `c<value>`, others `f<arity>_<index>`. The
/// candidate space `n^(n^arity)` must not exceed
/// `limits.max_pol_candidates`; the search itself prunes with constraint
/// tables, so the bound is on the space, not the work actually spent.
pub fn pol(
    sigma: &Relation,
    arity: usize,
    limits: &Limits,
) -> Result<Vec<Operation>, AlgebraError> {
    let n = sigma.universe();
    let cells = match table_len(n, arity) {
        Some(c) => c,
        None => {
            return Err(AlgebraError::CapExceeded {
                what: "operation table size",
                needed: u64::MAX,
                cap: limits.max_pol_candidates,
            })
        }
    };
    let candidates = u32::try_from(cells)
        .ok()
        .and_then(|c| (n as u64).checked_pow(c))
        .unwrap_or(u64::MAX);
    if candidates > limits.max_pol_candidates {
        return Err(AlgebraError::CapExceeded {
            what: "candidate operation tables",
            needed: candidates,
            cap: limits.max_pol_candidates,
        });
    }

    let h = sigma.arity();
    let member = membership_mask(sigma);

    // Every choice of `arity` rows from sigma constrains the table at `h`
    // cell positions: the values there must form a member tuple. Distinct
    // choices often hit the same cells, so constraints are deduplicated
    // and bucketed by their largest cell for checking during the scan.
    let mut constraints: BTreeSet<Vec<usize>> = BTreeSet::new();
    for choice in all_tuples(sigma.len(), arity) {
        let cell_row: Vec<usize> = (0..h)
            .map(|j| {
                let args: Vec<Element> =
                    choice.iter().map(|&i| sigma.tuples()[i][j]).collect();
                tuple_index(n, &args)
            })
            .collect();
        constraints.insert(cell_row);
    }
    let mut buckets: Vec<Vec<Vec<usize>>> = vec![Vec::new(); cells.max(1)];
    for c in constraints {
        let max = *c.iter().max().expect("h >= 1");
        buckets[max].push(c);
    }

    let mut tables: Vec<Vec<Element>> = Vec::new();
    let mut table = vec![0 as Element; cells];
    scan(0, n, &mut table, &buckets, &member, &mut tables);

    Ok(tables
        .into_iter()
        .enumerate()
        .map(|(i, t)| {
            let name = if arity == 0 {
                format!("c{}", t[0])
            } else {
                format!("f{arity}_{i}")
            };
            Operation::new(name, n, arity, t).expect("scanned tables are valid")
        })
        .collect())
}

fn membership_mask(sigma: &Relation) -> Vec<bool> {
    let full = table_len(sigma.universe(), sigma.arity()).expect("relation fits in memory");
    let mut mask = vec![false; full];
    for t in sigma.tuples() {
        mask[tuple_index(sigma.universe(), t)] = true;
    }
    mask
}

fn scan(
    depth: usize,
    n: usize,
    table: &mut Vec<Element>,
    buckets: &[Vec<Vec<usize>>],
    member: &[bool],
    out: &mut Vec<Vec<Element>>,
) {
    if depth == table.len() {
        // An empty table (possible only over an empty universe) still has
        // its constraints checked through bucket zero being empty.
        out.push(table.clone());
        return;
    }
    'value: for v in 0..n {
        table[depth] = v;
        for c in &buckets[depth] {
            let code = c.iter().fold(0, |acc, &cell| acc * n + table[cell]);
            if !member[code] {
                continue 'value;
            }
        }
        scan(depth + 1, n, table, buckets, member, out);
    }
}

/// Zero and one elements of a binary central relation together with
/// `sigma`-preserving operations `plus` and `times` satisfying
/// `x + 0 = 0 + x = x`, `x * 0 = 0 * x = 0`, and `x * 1 = 1 * x = x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PierceTerms {
    pub zero: Element,
    pub one: Element,
    pub plus: Operation,
    pub times: Operation,
}

impl PierceTerms {
    /// The instruction `U(x, y, v, w) = (x * w) + (y * v)`, which then
    /// satisfies `U(x, y, 0, 1) = x` and `U(x, y, 1, 0) = y`.
    pub fn compose_u(&self) -> Operation {
        let n = self.plus.universe();
        Operation::from_fn("U", n, 4, |a| {
            let xw = self.times.apply(&[a[0], a[3]]);
            let yv = self.times.apply(&[a[1], a[2]]);
            self.plus.apply(&[xw, yv])
        })
        .expect("composed table is valid")
    }
}

/// Searches a binary central relation for Pierce terms, scanning zero/one
/// pairs lexicographically and tables in enumeration order, so the least
/// solution is returned.
pub fn find_pierce_terms(
    sigma: &Relation,
    limits: &Limits,
) -> Result<Option<PierceTerms>, AlgebraError> {
    if sigma.arity() != 2 || !is_central_relation(sigma) {
        return Err(AlgebraError::WrongRelationShape {
            expected: "binary central relation",
        });
    }
    let n = sigma.universe();
    let binary = pol(sigma, 2, limits)?;
    for zero in 0..n {
        for one in 0..n {
            if zero == one {
                continue;
            }
            let plus = binary.iter().find(|op| {
                (0..n).all(|x| op.apply(&[x, zero]) == x && op.apply(&[zero, x]) == x)
            });
            let times = binary.iter().find(|op| {
                (0..n).all(|x| {
                    op.apply(&[x, zero]) == zero
                        && op.apply(&[zero, x]) == zero
                        && op.apply(&[x, one]) == x
                        && op.apply(&[one, x]) == x
                })
            });
            if let (Some(plus), Some(times)) = (plus, times) {
                return Ok(Some(PierceTerms {
                    zero,
                    one,
                    plus: plus.renamed("plus"),
                    times: times.renamed("times"),
                }));
            }
        }
    }
    Ok(None)
}

/// Builds the guarded switch for an equivalence relation `sigma` and
/// representatives `zero`, `one` of distinct blocks:
///
/// ```text
/// f(x, y, v, w) = x     if (v, zero) and (w, one) are in sigma
///               = y     if (v, one) and (w, zero) are in sigma
///               = zero  otherwise
/// ```
///
/// The guards are mutually exclusive because the blocks are distinct.
pub fn build_f(
    sigma: &Relation,
    zero: Element,
    one: Element,
) -> Result<Operation, AlgebraError> {
    let n = sigma.universe();
    let blocks = match classify(sigma) {
        RelationClass::NontrivialEquivalence { blocks } => blocks,
        _ => {
            return Err(AlgebraError::WrongRelationShape {
                expected: "nontrivial proper equivalence relation",
            })
        }
    };
    for v in [zero, one] {
        if v >= n {
            return Err(AlgebraError::ElementOutOfRange { value: v, universe: n });
        }
    }
    let same_block = blocks
        .iter()
        .any(|b| b.contains(&zero) && b.contains(&one));
    if same_block {
        return Err(AlgebraError::DesignationImpossible(format!(
            "{zero} and {one} lie in the same block"
        )));
    }
    Operation::from_fn("f", n, 4, |a| {
        let (x, y, v, w) = (a[0], a[1], a[2], a[3]);
        if sigma.contains(&[v, zero]) && sigma.contains(&[w, one]) {
            x
        } else if sigma.contains(&[v, one]) && sigma.contains(&[w, zero]) {
            y
        } else {
            zero
        }
    })
}

/// A certificate that no operation `u` preserving a central relation of
/// arity `h >= 3` can satisfy `u(x, y, a) = x` and `u(x, y, b) = y` for
/// the recorded switching tuples `a != b`.
///
/// The matrix `rows` has `h` rows of width `2 + N`. Reading it columnwise
/// gives `2 + N` member tuples of `sigma` (each column repeats an entry,
/// so total reflexivity certifies membership); applying a hypothetical `u`
/// to the rows forces, through the two identities, the `output` tuple,
/// which lies outside `sigma`. So such a `u` cannot preserve `sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RefutationWitness {
    /// `h` argument rows for the hypothetical `u`.
    pub rows: Vec<Vec<Element>>,
    /// The forced image tuple, outside `sigma`.
    pub output: Vec<Element>,
    /// The switching tuple on which `u` must return its first argument.
    pub a_vec: Vec<Element>,
    /// The switching tuple on which `u` must return its second argument.
    pub b_vec: Vec<Element>,
}

impl RefutationWitness {
    /// The columns of the row matrix: the member tuples a preservation
    /// check would select.
    pub fn columns(&self) -> Vec<Vec<Element>> {
        let width = 2 + self.a_vec.len();
        (0..width)
            .map(|j| self.rows.iter().map(|r| r[j]).collect())
            .collect()
    }

    /// Re-checks the whole certificate against `sigma` using only
    /// membership lookups: every column is a member, every row forces its
    /// output through one of the two identities, and the output tuple is
    /// not a member.
    pub fn verify(&self, sigma: &Relation) -> bool {
        let h = sigma.arity();
        let width = 2 + self.a_vec.len();
        if self.rows.len() != h || self.output.len() != h || self.a_vec == self.b_vec {
            return false;
        }
        if self.rows.iter().any(|r| r.len() != width) {
            return false;
        }
        for (j, row) in self.rows.iter().enumerate() {
            let frame = &row[2..];
            let forced = if frame == self.a_vec.as_slice() {
                row[0]
            } else if frame == self.b_vec.as_slice() {
                row[1]
            } else {
                return false;
            };
            if self.output[j] != forced {
                return false;
            }
        }
        self.columns().iter().all(|c| sigma.contains(c)) && !sigma.contains(&self.output)
    }
}

/// Builds the refutation certificate for a central relation of arity
/// `h >= 3` and switching tuples `a_vec != b_vec`.
///
/// The construction pairs up the entries of the least tuple `c` outside
/// `sigma`: rows `(c_1, c_2, a)` and `(c_1, c_2, b)` force outputs `c_1`
/// and `c_2`, and so on; odd `h` ends with the padding row
/// `(c_h, c_h, a)`, forcing `c_h`. Every column of the matrix repeats an
/// entry, so total reflexivity puts all columns in `sigma`, while the
/// forced output is exactly `c`.
pub fn refute_u_term(
    sigma: &Relation,
    a_vec: &[Element],
    b_vec: &[Element],
) -> Result<RefutationWitness, AlgebraError> {
    let h = sigma.arity();
    if h < 3 || !is_central_relation(sigma) {
        return Err(AlgebraError::WrongRelationShape {
            expected: "central relation of arity at least 3",
        });
    }
    let n = sigma.universe();
    if a_vec.len() != b_vec.len() || a_vec.is_empty() {
        return Err(AlgebraError::ArityMismatch {
            expected: a_vec.len().max(1),
            got: b_vec.len(),
        });
    }
    if let Some(&bad) = a_vec.iter().chain(b_vec.iter()).find(|&&v| v >= n) {
        return Err(AlgebraError::ElementOutOfRange { value: bad, universe: n });
    }
    if a_vec == b_vec {
        return Err(AlgebraError::RefutationUnavailable(
            "switching tuples must differ".into(),
        ));
    }
    let outside = all_tuples(n, h)
        .find(|t| !sigma.contains(t))
        .ok_or(AlgebraError::RefutationUnavailable(
            "relation is full".into(),
        ))?;

    let mut rows = Vec::with_capacity(h);
    let mut j = 0;
    while j + 1 < h {
        let mut row_a = vec![outside[j], outside[j + 1]];
        row_a.extend_from_slice(a_vec);
        rows.push(row_a);
        let mut row_b = vec![outside[j], outside[j + 1]];
        row_b.extend_from_slice(b_vec);
        rows.push(row_b);
        j += 2;
    }
    if j < h {
        let mut pad = vec![outside[j], outside[j]];
        pad.extend_from_slice(a_vec);
        rows.push(pad);
    }
    let witness = RefutationWitness {
        rows,
        output: outside,
        a_vec: a_vec.to_vec(),
        b_vec: b_vec.to_vec(),
    };
    if !witness.verify(sigma) {
        return Err(AlgebraError::RefutationUnavailable(
            "constructed certificate failed its own verification".into(),
        ));
    }
    Ok(witness)
}

/// Result of closing a set of operations under composition.
#[derive(Clone, Debug)]
pub struct CloneClosure {
    /// All distinct tables reached, sorted by arity then table, named
    /// `g<arity>_<index>`.
    pub ops: Vec<Operation>,
    /// No further composition produces a new table.
    pub reached_fixpoint: bool,
    /// Number of composition rounds performed.
    pub rounds: usize,
    /// Growth stopped because `limits.max_clone_tables` was reached.
    pub table_cap_hit: bool,
    /// Growth stopped because `limits.max_clone_work` was reached.
    pub work_cap_hit: bool,
}

struct ClosureEntry {
    table: Vec<Element>,
    round_added: usize,
    is_projection: bool,
}

struct ClosureState {
    universe: usize,
    max_arity: usize,
    by_arity: Vec<Vec<ClosureEntry>>,
    seen: BTreeSet<(usize, Vec<Element>)>,
    round: usize,
    work: u64,
    max_tables: usize,
    max_work: u64,
    table_cap_hit: bool,
    work_cap_hit: bool,
}

impl ClosureState {
    fn new(universe: usize, gens: &[Operation], max_arity: usize, limits: &Limits) -> ClosureState {
        let mut state = ClosureState {
            universe,
            max_arity,
            by_arity: (0..=max_arity.max(
                gens.iter().map(|g| g.arity()).max().unwrap_or(0),
            ))
                .map(|_| Vec::new())
                .collect(),
            seen: BTreeSet::new(),
            round: 0,
            work: 0,
            max_tables: limits.max_clone_tables,
            max_work: limits.max_clone_work,
            table_cap_hit: false,
            work_cap_hit: false,
        };
        for arity in 1..=max_arity {
            for i in 0..arity {
                let p = Operation::projection(universe, arity, i);
                state.insert(arity, p.table().to_vec());
            }
        }
        let mut sorted: Vec<&Operation> = gens.iter().collect();
        sorted.sort_by_key(|g| (g.arity(), g.table().to_vec()));
        for g in sorted {
            state.insert(g.arity(), g.table().to_vec());
        }
        state
    }

    fn total(&self) -> usize {
        self.by_arity.iter().map(|v| v.len()).sum()
    }

    fn insert(&mut self, arity: usize, table: Vec<Element>) -> bool {
        if self.table_cap_hit || !self.seen.insert((arity, table.clone())) {
            return false;
        }
        if self.total() >= self.max_tables {
            self.table_cap_hit = true;
            self.seen.remove(&(arity, table));
            return false;
        }
        let is_projection = Operation::new("x", self.universe, arity, table.clone())
            .map(|o| o.projection_index().is_some())
            .unwrap_or(false);
        self.by_arity[arity].push(ClosureEntry {
            table,
            round_added: self.round,
            is_projection,
        });
        true
    }

    /// One semi-naive composition sweep: combines every outer operation
    /// with every equal-arity tuple of inner operations where at least one
    /// participant is new, skipping projection outers (their compositions
    /// reproduce an inner operation).
    fn step(&mut self) -> bool {
        self.round += 1;
        let round = self.round;
        let mut produced: Vec<(usize, Vec<Element>)> = Vec::new();
        'outer_arity: for k in 0..self.by_arity.len() {
            for gi in 0..self.by_arity[k].len() {
                let g_new = self.by_arity[k][gi].round_added == round - 1;
                if self.by_arity[k][gi].is_projection {
                    continue;
                }
                for m in 0..=self.max_arity {
                    let inner_count = self.by_arity[m].len();
                    // A nullary outer takes the empty inner tuple and
                    // yields the m-ary constant map, so it needs no
                    // inner operations at all.
                    if inner_count == 0 && k > 0 {
                        continue;
                    }
                    let cells = match table_len(self.universe, m) {
                        Some(c) => c,
                        None => continue,
                    };
                    for combo in all_tuples(inner_count, k) {
                        let any_new = g_new
                            || combo
                                .iter()
                                .any(|&fi| self.by_arity[m][fi].round_added == round - 1);
                        if !any_new {
                            continue;
                        }
                        self.work += cells as u64;
                        if self.work > self.max_work {
                            self.work_cap_hit = true;
                            break 'outer_arity;
                        }
                        let g_table = &self.by_arity[k][gi].table;
                        let mut args = vec![0 as Element; k];
                        let table: Vec<Element> = (0..cells)
                            .map(|idx| {
                                for (slot, &fi) in args.iter_mut().zip(combo.iter()) {
                                    *slot = self.by_arity[m][fi].table[idx];
                                }
                                g_table[tuple_index(self.universe, &args)]
                            })
                            .collect();
                        if !self.seen.contains(&(m, table.clone())) {
                            produced.push((m, table));
                        }
                    }
                }
            }
        }
        let mut grew = false;
        produced.sort();
        produced.dedup();
        for (m, table) in produced {
            if self.insert(m, table) {
                grew = true;
            }
        }
        grew
    }

    fn into_closure(self, reached_fixpoint: bool) -> CloneClosure {
        let mut ops = Vec::new();
        for (arity, entries) in self.by_arity.iter().enumerate() {
            let mut tables: Vec<&Vec<Element>> = entries.iter().map(|e| &e.table).collect();
            tables.sort();
            for (i, t) in tables.into_iter().enumerate() {
                ops.push(
                    Operation::new(format!("g{arity}_{i}"), self.universe, arity, t.clone())
                        .expect("closure tables are valid"),
                );
            }
        }
        CloneClosure {
            ops,
            reached_fixpoint,
            rounds: self.round,
            table_cap_hit: self.table_cap_hit,
            work_cap_hit: self.work_cap_hit,
        }
    }
}

/// Closes `gens` (plus all projections of arity up to `max_arity`) under
/// one-step composition `g(f_1, .., f_k)` with equal-arity inner
/// operations, which reaches every term of arity up to `max_arity` over
/// the generators.
///
/// Stops at a fixpoint, after `max_rounds` sweeps, or at the table or work
/// caps in `limits`; the outcome records which.
pub fn clone_closure(
    universe: usize,
    gens: &[Operation],
    max_arity: usize,
    max_rounds: usize,
    limits: &Limits,
) -> Result<CloneClosure, AlgebraError> {
    for g in gens {
        if g.universe() != universe {
            return Err(AlgebraError::UniverseMismatch {
                left: universe,
                right: g.universe(),
            });
        }
    }
    let mut state = ClosureState::new(universe, gens, max_arity, limits);
    let mut fixpoint = false;
    while state.round < max_rounds && !state.table_cap_hit && !state.work_cap_hit {
        if !state.step() {
            fixpoint = !state.table_cap_hit && !state.work_cap_hit;
            break;
        }
    }
    Ok(state.into_closure(fixpoint))
}

/// Whether the term operations of `a` include every operation of arity at
/// most `arity`.
///
/// Returns an error if the clone closure hits a cap before either finding
/// all tables or reaching a fixpoint, since the question is then
/// undecided.
pub fn is_primal_upto(
    a: &FiniteAlgebra,
    arity: usize,
    limits: &Limits,
) -> Result<bool, AlgebraError> {
    let n = a.universe();
    let mut expected: u64 = 0;
    for k in 0..=arity {
        let cells = table_len(n, k).ok_or(AlgebraError::CapExceeded {
            what: "operation table size",
            needed: u64::MAX,
            cap: limits.max_clone_tables as u64,
        })?;
        expected += u32::try_from(cells)
            .ok()
            .and_then(|c| (n as u64).checked_pow(c))
            .ok_or(AlgebraError::CapExceeded {
                what: "primality table count",
                needed: u64::MAX,
                cap: limits.max_clone_tables as u64,
            })?;
    }
    let closure = clone_closure(n, a.operations(), arity, usize::MAX, limits)?;
    let reached = closure.ops.iter().filter(|o| o.arity() <= arity).count() as u64;
    if reached == expected {
        return Ok(true);
    }
    if closure.reached_fixpoint {
        return Ok(false);
    }
    Err(AlgebraError::CapExceeded {
        what: "clone closure during primality check",
        needed: expected,
        cap: reached,
    })
}

/// Outcome of a `u`-term search.
#[derive(Clone, Debug)]
pub struct UTermSearch {
    /// The least qualifying table found, as an operation named `u`.
    pub term: Option<Operation>,
    /// The closure reached a fixpoint, so a `None` is exhaustive for the
    /// explored arity bound.
    pub reached_fixpoint: bool,
    pub rounds: usize,
    pub tables_explored: usize,
    pub table_cap_hit: bool,
    pub work_cap_hit: bool,
}

/// Searches the term operations of `a` for a `u` of arity `2 + N` with
/// `u(x, y, 0) = x` and `u(x, y, 1) = y`, where `0` and `1` are the
/// designated constant tuples.
///
/// Scans the generators first and then each composition round as it
/// completes, returning the least qualifying table of the earliest round
/// that contains one.
pub fn find_u_term(
    a: &FiniteAlgebra,
    max_arity: usize,
    max_rounds: usize,
    limits: &Limits,
) -> Result<UTermSearch, AlgebraError> {
    let width = a.frame_width();
    if width == 0 {
        return Err(AlgebraError::NoConstantFrame);
    }
    let n = a.universe();
    let target = 2 + width;
    let zero = a.zero_tuple();
    let one = a.one_tuple();

    let qualifies = |table: &[Element]| -> bool {
        let mut args = vec![0 as Element; target];
        for x in 0..n {
            for y in 0..n {
                args[0] = x;
                args[1] = y;
                args[2..].copy_from_slice(&zero);
                if table[tuple_index(n, &args)] != x {
                    return false;
                }
                args[2..].copy_from_slice(&one);
                if table[tuple_index(n, &args)] != y {
                    return false;
                }
            }
        }
        true
    };

    let mut state = ClosureState::new(n, a.operations(), max_arity, limits);
    let scan_round = |state: &ClosureState, round: usize| -> Option<Vec<Element>> {
        if target >= state.by_arity.len() {
            return None;
        }
        let mut found: Option<&Vec<Element>> = None;
        for e in &state.by_arity[target] {
            if e.round_added == round && qualifies(&e.table) {
                found = match found {
                    Some(best) if best <= &e.table => Some(best),
                    _ => Some(&e.table),
                };
            }
        }
        found.cloned()
    };

    let mut term = scan_round(&state, 0);
    let mut fixpoint = false;
    while term.is_none()
        && state.round < max_rounds
        && !state.table_cap_hit
        && !state.work_cap_hit
    {
        let grew = state.step();
        term = scan_round(&state, state.round);
        if !grew {
            fixpoint = !state.table_cap_hit && !state.work_cap_hit;
            break;
        }
    }
    Ok(UTermSearch {
        term: term.map(|t| {
            Operation::new("u", n, target, t).expect("closure tables are valid")
        }),
        reached_fixpoint: fixpoint,
        rounds: state.round,
        tables_explored: state.total(),
        table_cap_hit: state.table_cap_hit,
        work_cap_hit: state.work_cap_hit,
    })
}

/// The algebra of all `sigma`-preserving operations up to an arity cap,
/// with designated zero and one elements encoded as the constant frame
/// `0 = (c_zero, c_one)`, `1 = (c_one, c_zero)`.
#[derive(Clone, Debug)]
pub struct TruncatedPreprimal {
    pub algebra: FiniteAlgebra,
    /// The arity cap that was asked for.
    pub requested_arity: usize,
    /// The largest arity actually enumerated; smaller than requested only
    /// in the truncating mode.
    pub achieved_arity: usize,
    pub zero_elt: Element,
    pub one_elt: Element,
}

impl TruncatedPreprimal {
    pub fn is_truncated(&self) -> bool {
        self.achieved_arity < self.requested_arity
    }
}

/// Assembles the truncated algebra `P_sigma`, failing if any arity up to
/// the cap is infeasible to enumerate.
///
/// The zero and one elements are designated by the shape of `sigma`: for a
/// nontrivial equivalence, the least representatives of the two least
/// blocks; for a binary central relation, the pair found by
/// [`find_pierce_terms`]; for a central relation of arity at least three,
/// the least pair of distinct elements.
pub fn build_preprimal(
    sigma: &Relation,
    arity_cap: usize,
    limits: &Limits,
) -> Result<TruncatedPreprimal, AlgebraError> {
    assemble_preprimal(sigma, arity_cap, limits, false)
}

/// Like [`build_preprimal`], but on hitting the candidate cap it keeps the
/// arities that were feasible and records the smaller achieved cap.
pub fn build_preprimal_truncating(
    sigma: &Relation,
    arity_cap: usize,
    limits: &Limits,
) -> Result<TruncatedPreprimal, AlgebraError> {
    assemble_preprimal(sigma, arity_cap, limits, true)
}

fn assemble_preprimal(
    sigma: &Relation,
    arity_cap: usize,
    limits: &Limits,
    truncate: bool,
) -> Result<TruncatedPreprimal, AlgebraError> {
    let (zero_elt, one_elt) = match classify(sigma) {
        RelationClass::NontrivialEquivalence { blocks } => (blocks[0][0], blocks[1][0]),
        RelationClass::Central { .. } if sigma.arity() == 2 => {
            match find_pierce_terms(sigma, limits)? {
                Some(terms) => (terms.zero, terms.one),
                None => {
                    return Err(AlgebraError::DesignationImpossible(
                        "no Pierce terms for this binary central relation".into(),
                    ))
                }
            }
        }
        RelationClass::Central { .. } => (0, 1),
        other => {
            return Err(AlgebraError::DesignationImpossible(format!(
                "unsupported relation shape {other:?}"
            )))
        }
    };

    let mut operations = Vec::new();
    let mut achieved = arity_cap;
    for k in 0..=arity_cap {
        match pol(sigma, k, limits) {
            Ok(ops) => operations.extend(ops),
            Err(AlgebraError::CapExceeded { .. }) if truncate && k > 0 => {
                achieved = k - 1;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let algebra = FiniteAlgebra::new(
        sigma.universe(),
        operations,
        vec![format!("c{zero_elt}"), format!("c{one_elt}")],
        vec![format!("c{one_elt}"), format!("c{zero_elt}")],
    )?;
    Ok(TruncatedPreprimal {
        algebra,
        requested_arity: arity_cap,
        achieved_arity: achieved,
        zero_elt,
        one_elt,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preserve::{preserves, Preservation};

    fn sigma_e() -> Relation {
        Relation::equivalence_from_blocks(3, &[vec![0, 1], vec![2]]).unwrap()
    }

    fn sigma_c2() -> Relation {
        Relation::central_hull(3, 2, &[2]).unwrap()
    }

    fn sigma_c3() -> Relation {
        Relation::central_hull(4, 3, &[3]).unwrap()
    }

    #[test]
    fn pol_agrees_with_brute_force_preservation() {
        for sigma in [sigma_e(), sigma_c2()] {
            for arity in 0..=2 {
                let fast: Vec<Vec<Element>> = pol(&sigma, arity, &Limits::default())
                    .unwrap()
                    .iter()
                    .map(|o| o.table().to_vec())
                    .collect();
                let n = sigma.universe();
                let cells = table_len(n, arity).unwrap();
                let brute: Vec<Vec<Element>> = all_tuples(n, cells)
                    .filter(|t| {
                        let op = Operation::new("x", n, arity, t.clone()).unwrap();
                        preserves(&op, &sigma).unwrap().holds()
                    })
                    .collect();
                assert_eq!(fast, brute, "arity {arity}");
            }
        }
    }

    #[test]
    fn pol_counts_for_the_block_equivalence() {
        let limits = Limits::default();
        assert_eq!(pol(&sigma_e(), 0, &limits).unwrap().len(), 3);
        assert_eq!(pol(&sigma_e(), 1, &limits).unwrap().len(), 15);
        assert_eq!(pol(&sigma_e(), 2, &limits).unwrap().len(), 1275);
    }

    #[test]
    fn pol_counts_for_the_ternary_central_relation() {
        let limits = Limits::default();
        assert_eq!(pol(&sigma_c3(), 0, &limits).unwrap().len(), 4);
        assert_eq!(pol(&sigma_c3(), 1, &limits).unwrap().len(), 202);
        assert!(matches!(
            pol(&sigma_c3(), 2, &limits),
            Err(AlgebraError::CapExceeded { .. })
        ));
    }

    #[test]
    fn unary_preservers_of_the_ternary_central_relation_match_brute_force() {
        let sigma = sigma_c3();
        let brute = all_tuples(4, 4)
            .filter(|t| {
                let op = Operation::new("x", 4, 1, t.clone()).unwrap();
                preserves(&op, &sigma).unwrap().holds()
            })
            .count();
        assert_eq!(brute, 202);
    }

    #[test]
    fn discriminator_breaks_binary_central_relations() {
        let sigma = sigma_c2();
        let t = discriminator(3);
        match preserves(&t, &sigma).unwrap() {
            Preservation::Fails(w) => {
                assert!(w.verify(&t, &sigma));
                assert!(!sigma.contains(&w.image));
            }
            Preservation::Holds => panic!("discriminator must not preserve a central relation"),
        }
    }

    #[test]
    fn pierce_terms_for_the_binary_central_relation() {
        let terms = find_pierce_terms(&sigma_c2(), &Limits::default())
            .unwrap()
            .expect("solution exists");
        assert_eq!((terms.zero, terms.one), (0, 1));
        for x in 0..3 {
            assert_eq!(terms.plus.apply(&[x, 0]), x);
            assert_eq!(terms.plus.apply(&[0, x]), x);
            assert_eq!(terms.times.apply(&[x, 0]), 0);
            assert_eq!(terms.times.apply(&[0, x]), 0);
            assert_eq!(terms.times.apply(&[x, 1]), x);
            assert_eq!(terms.times.apply(&[1, x]), x);
        }
        assert!(preserves(&terms.plus, &sigma_c2()).unwrap().holds());
        assert!(preserves(&terms.times, &sigma_c2()).unwrap().holds());
    }

    #[test]
    fn composed_u_switches_on_the_zero_one_pair_and_preserves_sigma() {
        let sigma = sigma_c2();
        let terms = find_pierce_terms(&sigma, &Limits::default())
            .unwrap()
            .unwrap();
        let u = terms.compose_u();
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(u.apply(&[x, y, terms.zero, terms.one]), x);
                assert_eq!(u.apply(&[x, y, terms.one, terms.zero]), y);
            }
        }
        assert!(preserves(&u, &sigma).unwrap().holds());
    }

    #[test]
    fn pierce_terms_require_a_binary_central_relation() {
        assert!(matches!(
            find_pierce_terms(&sigma_e(), &Limits::default()),
            Err(AlgebraError::WrongRelationShape { .. })
        ));
        assert!(matches!(
            find_pierce_terms(&sigma_c3(), &Limits::default()),
            Err(AlgebraError::WrongRelationShape { .. })
        ));
    }

    #[test]
    fn guarded_switch_matches_its_definition_pointwise() {
        let f = build_f(&sigma_e(), 0, 2).unwrap();
        assert_eq!(f.apply(&[1, 2, 0, 2]), 1);
        assert_eq!(f.apply(&[1, 2, 2, 0]), 2);
        assert_eq!(f.apply(&[1, 2, 1, 1]), 0);
        assert_eq!(f.apply(&[1, 2, 1, 2]), 1);
        assert!(preserves(&f, &sigma_e()).unwrap().holds());
    }

    #[test]
    fn guarded_switch_rejects_bad_designations() {
        assert!(matches!(
            build_f(&sigma_e(), 0, 1),
            Err(AlgebraError::DesignationImpossible(_))
        ));
        assert!(matches!(
            build_f(&sigma_c2(), 0, 2),
            Err(AlgebraError::WrongRelationShape { .. })
        ));
    }

    #[test]
    fn refutation_for_the_ternary_central_relation() {
        let w = refute_u_term(&sigma_c3(), &[0], &[1]).unwrap();
        assert_eq!(w.output, vec![0, 1, 2]);
        assert_eq!(
            w.rows,
            vec![vec![0, 1, 0], vec![0, 1, 1], vec![2, 2, 0]]
        );
        assert!(w.verify(&sigma_c3()));
        for c in w.columns() {
            assert!(sigma_c3().contains(&c));
        }
    }

    #[test]
    fn refutation_for_an_even_arity_central_relation_needs_no_padding() {
        let sigma = Relation::central_hull(5, 4, &[4]).unwrap();
        let w = refute_u_term(&sigma, &[0], &[1]).unwrap();
        assert_eq!(w.output, vec![0, 1, 2, 3]);
        assert_eq!(w.rows.len(), 4);
        assert!(w.verify(&sigma));
    }

    #[test]
    fn refutation_handles_wider_switching_tuples() {
        let w = refute_u_term(&sigma_c3(), &[0, 1], &[1, 0]).unwrap();
        assert!(w.verify(&sigma_c3()));
        assert_eq!(w.rows[0].len(), 4);
    }

    #[test]
    fn refutation_preconditions_are_checked() {
        assert!(matches!(
            refute_u_term(&sigma_c2(), &[0], &[1]),
            Err(AlgebraError::WrongRelationShape { .. })
        ));
        assert!(matches!(
            refute_u_term(&sigma_c3(), &[0], &[0]),
            Err(AlgebraError::RefutationUnavailable(_))
        ));
        assert!(matches!(
            refute_u_term(&sigma_c3(), &[0], &[1, 1]),
            Err(AlgebraError::ArityMismatch { .. })
        ));
    }

    #[test]
    fn tampered_refutations_fail_verification() {
        let sigma = sigma_c3();
        let w = refute_u_term(&sigma, &[0], &[1]).unwrap();
        let mut bad = w.clone();
        bad.output = vec![0, 1, 3];
        assert!(!bad.verify(&sigma));
        let mut bad_rows = w.clone();
        bad_rows.rows[0] = vec![1, 1, 0];
        assert!(!bad_rows.verify(&sigma));
        let mut bad_frame = w.clone();
        bad_frame.rows[2] = vec![2, 2, 3];
        assert!(!bad_frame.verify(&sigma));
    }

    #[test]
    fn closure_of_negation_reaches_its_fixpoint() {
        let neg = Operation::new("neg", 2, 1, vec![1, 0]).unwrap();
        let closure = clone_closure(2, &[neg], 1, usize::MAX, &Limits::default()).unwrap();
        assert!(closure.reached_fixpoint);
        let tables: Vec<&[Element]> = closure.ops.iter().map(|o| o.table()).collect();
        assert_eq!(tables, vec![&[0, 1][..], &[1, 0][..]]);
    }

    #[test]
    fn closure_composes_across_arities() {
        // min and a constant: closing must produce the unary map x -> 0
        // as min(x, c0) and the nullary 0.
        let min = Operation::from_fn("min", 2, 2, |t| t[0].min(t[1])).unwrap();
        let c1 = Operation::constant("c1", 2, 1);
        let neg = Operation::new("neg", 2, 1, vec![1, 0]).unwrap();
        let closure = clone_closure(2, &[min, c1, neg], 2, usize::MAX, &Limits::default())
            .unwrap();
        assert!(closure.reached_fixpoint);
        let has = |arity: usize, table: &[Element]| {
            closure
                .ops
                .iter()
                .any(|o| o.arity() == arity && o.table() == table)
        };
        assert!(has(0, &[0]), "nullary 0 = min(c1, neg c1)");
        assert!(has(1, &[0, 0]), "constant-0 unary map");
        assert!(has(2, &[1, 1, 1, 0]), "nand-like composite neg(min)");
    }

    #[test]
    fn closure_respects_the_table_cap() {
        let min = Operation::from_fn("min", 2, 2, |t| t[0].min(t[1])).unwrap();
        let c1 = Operation::constant("c1", 2, 1);
        let limits = Limits {
            max_clone_tables: 5,
            ..Limits::default()
        };
        let closure = clone_closure(2, &[min, c1], 2, usize::MAX, &limits).unwrap();
        assert!(closure.table_cap_hit);
        assert!(!closure.reached_fixpoint);
        assert!(closure.ops.len() <= 5);
    }

    #[test]
    fn discriminator_with_constants_is_primal_up_to_arity_two() {
        let t = discriminator(2);
        let c0 = Operation::constant("c0", 2, 0);
        let c1 = Operation::constant("c1", 2, 1);
        let a = FiniteAlgebra::without_frame(2, vec![t, c0, c1]).unwrap();
        assert!(is_primal_upto(&a, 2, &Limits::default()).unwrap());
    }

    #[test]
    fn monotone_clone_is_not_primal() {
        let a = crate::testutil::two_chain_lattice();
        assert!(!is_primal_upto(&a, 2, &Limits::default()).unwrap());
    }

    #[test]
    fn u_term_found_among_generators_before_any_composition() {
        let a = crate::testutil::two_chain_lattice();
        let ite = Operation::from_fn("sel", 2, 3, |t| if t[2] == 0 { t[0] } else { t[1] })
            .unwrap();
        let a = a.with_operation(ite.clone()).unwrap();
        let search = find_u_term(&a, 3, usize::MAX, &Limits::default()).unwrap();
        let u = search.term.expect("selector qualifies");
        assert_eq!(u.table(), ite.table());
        assert_eq!(search.rounds, 0);
    }

    #[test]
    fn monotone_generators_admit_no_u_term() {
        let a = crate::testutil::two_chain_lattice();
        let search = find_u_term(&a, 3, usize::MAX, &Limits::default()).unwrap();
        assert!(search.term.is_none());
        assert!(search.reached_fixpoint);
    }

    #[test]
    fn preprimal_of_the_block_equivalence() {
        let p = build_preprimal(&sigma_e(), 2, &Limits::default()).unwrap();
        assert_eq!(p.algebra.operations().len(), 3 + 15 + 1275);
        assert_eq!((p.zero_elt, p.one_elt), (0, 2));
        assert!(!p.is_truncated());
        assert_eq!(p.algebra.zero_tuple(), vec![0, 2]);
        assert_eq!(p.algebra.one_tuple(), vec![2, 0]);
    }

    #[test]
    fn preprimal_of_the_ternary_central_relation_truncates_to_unary() {
        let limits = Limits::default();
        assert!(matches!(
            build_preprimal(&sigma_c3(), 2, &limits),
            Err(AlgebraError::CapExceeded { .. })
        ));
        let p = build_preprimal_truncating(&sigma_c3(), 2, &limits).unwrap();
        assert!(p.is_truncated());
        assert_eq!(p.achieved_arity, 1);
        assert_eq!(p.algebra.operations().len(), 4 + 202);
        assert_eq!((p.zero_elt, p.one_elt), (0, 1));
    }

    #[test]
    fn preprimal_designation_requires_a_supported_shape() {
        let cycle = Relation::new(3, 2, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap();
        assert!(matches!(
            build_preprimal(&cycle, 1, &Limits::default()),
            Err(AlgebraError::DesignationImpossible(_))
        ));
    }

    #[test]
    fn every_closure_member_preserves_what_the_generators_preserve() {
        let sigma = sigma_c2();
        let gens = [
            pol(&sigma, 1, &Limits::default()).unwrap()[3].clone(),
            pol(&sigma, 2, &Limits::default()).unwrap()[10].clone(),
            Operation::constant("c2", 3, 2),
        ];
        let closure = clone_closure(3, &gens, 2, 3, &Limits::default()).unwrap();
        for op in &closure.ops {
            assert!(
                preserves(op, &sigma).unwrap().holds(),
                "composition {} must preserve sigma",
                op.name()
            );
        }
    }
}
