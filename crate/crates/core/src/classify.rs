//! Classification of finitary relations into the shapes that induce
//! maximal clones on a finite set.

use crate::op::Element;
use crate::relation::Relation;

/// The recognized relation shapes, with the evidence for each.
///
/// [`classify`] tests the shapes in the declaration order below and
/// returns the first match, so relations fitting several shapes (the
/// diagonal is both an equivalence and totally symmetric, a one-element
/// center makes a unary relation both a proper subset and vacuously
/// central) classify deterministically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RelationClass {
    /// A unary relation that is a nonempty proper subset of the universe.
    ProperSubset { members: Vec<Element> },
    /// The graph of a fixpoint-free permutation all of whose cycles share
    /// one prime length.
    PrimePermutationGraph { cycle_length: usize, cycles: usize },
    /// A partial order with a least and a greatest element.
    BoundedPartialOrder { least: Element, greatest: Element },
    /// A totally symmetric, totally reflexive proper relation with a
    /// nonempty center.
    Central { center: Vec<Element> },
    /// An equivalence relation other than the diagonal and the full
    /// relation.
    NontrivialEquivalence { blocks: Vec<Vec<Element>> },
    /// None of the above.
    Unclassified,
}

/// Whether every permutation of every member tuple is again a member.
pub fn is_totally_symmetric(rho: &Relation) -> bool {
    rho.tuples().iter().all(|t| {
        let mut perm: Vec<usize> = (0..t.len()).collect();
        permutations(&mut perm, 0, &mut |p| {
            let image: Vec<Element> = p.iter().map(|&i| t[i]).collect();
            rho.contains(&image)
        })
    })
}

fn permutations(items: &mut Vec<usize>, from: usize, check: &mut impl FnMut(&[usize]) -> bool) -> bool {
    if from == items.len() {
        return check(items);
    }
    for i in from..items.len() {
        items.swap(from, i);
        let ok = permutations(items, from + 1, check);
        items.swap(from, i);
        if !ok {
            return false;
        }
    }
    true
}

/// Whether every tuple with at least two equal entries is a member.
///
/// For binary relations this is ordinary reflexivity; for unary relations
/// it holds vacuously.
pub fn is_totally_reflexive(rho: &Relation) -> bool {
    let n = rho.universe();
    let h = rho.arity();
    crate::op::all_tuples(n, h)
        .filter(|t| (0..h).any(|i| t[i + 1..].contains(&t[i])))
        .all(|t| rho.contains(&t))
}

/// The center: all elements `c` such that every tuple containing `c` is a
/// member.
///
/// Computed over tuples that already have `c` in the first position; total
/// symmetry extends this to every position for symmetric relations.
pub fn center_of(rho: &Relation) -> Vec<Element> {
    let n = rho.universe();
    let h = rho.arity();
    (0..n)
        .filter(|&c| {
            crate::op::all_tuples(n, h - 1).all(|rest| {
                let mut t = Vec::with_capacity(h);
                t.push(c);
                t.extend_from_slice(&rest);
                rho.contains(&t)
            })
        })
        .collect()
}

/// Whether `rho` is a central relation: totally symmetric, totally
/// reflexive, proper, and with a nonempty center.
pub fn is_central_relation(rho: &Relation) -> bool {
    !rho.is_full()
        && is_totally_symmetric(rho)
        && is_totally_reflexive(rho)
        && !center_of(rho).is_empty()
}

/// Whether a binary relation is an equivalence, returning its blocks.
fn equivalence_blocks(rho: &Relation) -> Option<Vec<Vec<Element>>> {
    if rho.arity() != 2 {
        return None;
    }
    let n = rho.universe();
    let reflexive = (0..n).all(|x| rho.contains(&[x, x]));
    if !reflexive {
        return None;
    }
    let symmetric = rho.tuples().iter().all(|t| rho.contains(&[t[1], t[0]]));
    if !symmetric {
        return None;
    }
    let transitive = rho.tuples().iter().all(|s| {
        rho.tuples()
            .iter()
            .filter(|t| t[0] == s[1])
            .all(|t| rho.contains(&[s[0], t[1]]))
    });
    if !transitive {
        return None;
    }
    let mut uf = crate::congruence::UnionFind::new(n);
    for t in rho.tuples() {
        uf.union(t[0], t[1]);
    }
    Some(uf.into_congruence().blocks())
}

/// If the binary relation is the graph `{(x, pi(x))}` of a permutation,
/// returns the cycle lengths of `pi`.
fn permutation_cycle_lengths(rho: &Relation) -> Option<Vec<usize>> {
    if rho.arity() != 2 {
        return None;
    }
    let n = rho.universe();
    if rho.len() != n {
        return None;
    }
    let mut pi: Vec<Option<Element>> = vec![None; n];
    for t in rho.tuples() {
        if pi[t[0]].is_some() {
            return None;
        }
        pi[t[0]] = Some(t[1]);
    }
    let pi: Vec<Element> = pi.into_iter().collect::<Option<_>>()?;
    let mut hit = vec![false; n];
    for &y in &pi {
        if hit[y] {
            return None;
        }
        hit[y] = true;
    }
    let mut seen = vec![false; n];
    let mut lengths = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = pi[x];
        }
        lengths.push(len);
    }
    Some(lengths)
}

fn is_prime(p: usize) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// If the binary relation is a partial order with both bounds, returns
/// `(least, greatest)`.
fn bounded_order(rho: &Relation) -> Option<(Element, Element)> {
    if rho.arity() != 2 {
        return None;
    }
    let n = rho.universe();
    let reflexive = (0..n).all(|x| rho.contains(&[x, x]));
    let antisymmetric = rho
        .tuples()
        .iter()
        .all(|t| t[0] == t[1] || !rho.contains(&[t[1], t[0]]));
    let transitive = rho.tuples().iter().all(|s| {
        rho.tuples()
            .iter()
            .filter(|t| t[0] == s[1])
            .all(|t| rho.contains(&[s[0], t[1]]))
    });
    if !(reflexive && antisymmetric && transitive) {
        return None;
    }
    let least = (0..n).find(|&l| (0..n).all(|x| rho.contains(&[l, x])))?;
    let greatest = (0..n).find(|&g| (0..n).all(|x| rho.contains(&[x, g])))?;
    Some((least, greatest))
}

/// Classifies a relation, testing the shapes in the fixed order
/// documented on [`RelationClass`].
pub fn classify(rho: &Relation) -> RelationClass {
    let n = rho.universe();
    if rho.arity() == 1 {
        if !rho.is_empty() && rho.len() < n {
            return RelationClass::ProperSubset {
                members: rho.tuples().iter().map(|t| t[0]).collect(),
            };
        }
        return RelationClass::Unclassified;
    }
    if let Some(lengths) = permutation_cycle_lengths(rho) {
        let p = lengths[0];
        if is_prime(p) && lengths.iter().all(|&l| l == p) {
            return RelationClass::PrimePermutationGraph {
                cycle_length: p,
                cycles: lengths.len(),
            };
        }
    }
    if let Some((least, greatest)) = bounded_order(rho) {
        return RelationClass::BoundedPartialOrder { least, greatest };
    }
    if is_central_relation(rho) {
        return RelationClass::Central {
            center: center_of(rho),
        };
    }
    if let Some(blocks) = equivalence_blocks(rho) {
        let nontrivial = blocks.len() > 1 && blocks.len() < n;
        if nontrivial {
            return RelationClass::NontrivialEquivalence { blocks };
        }
    }
    RelationClass::Unclassified
}
