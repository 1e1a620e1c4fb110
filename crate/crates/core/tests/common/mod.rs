//! Independent oracles and corpus algebras for the acceptance suite.
//!
//! Everything here recomputes results from first principles: preservation
//! by direct enumeration of row choices, congruences by filtering all
//! partitions of the universe, factor pairs by checking the meet and the
//! composition pointwise. None of it shares code with the library's
//! algorithms beyond the basic data types.

#![allow(dead_code)]

use ualg_core::{Congruence, Element, FiniteAlgebra, Operation, Relation};

/// Advances a mixed-radix counter; returns false once it wraps to zero.
pub fn odometer_next(idx: &mut [usize], bases: &[usize]) -> bool {
    for p in (0..idx.len()).rev() {
        idx[p] += 1;
        if idx[p] < bases[p] {
            return true;
        }
        idx[p] = 0;
    }
    false
}

fn member(rho: &Relation, t: &[Element]) -> bool {
    rho.tuples().iter().any(|u| u.as_slice() == t)
}

/// Preservation by brute force: try every choice of rows, build the image
/// through `Operation::evaluate`, and look it up by linear scan.
pub fn naive_preserves(op: &Operation, rho: &Relation) -> bool {
    let k = op.arity();
    let h = rho.arity();
    let m = rho.len();
    if k == 0 {
        let v = op.evaluate(&[]).expect("nullary evaluation");
        return member(rho, &vec![v; h]);
    }
    if m == 0 {
        return true;
    }
    let bases = vec![m; k];
    let mut idx = vec![0usize; k];
    loop {
        let image: Vec<Element> = (0..h)
            .map(|j| {
                let args: Vec<Element> = idx.iter().map(|&i| rho.tuples()[i][j]).collect();
                op.evaluate(&args).expect("evaluation in range")
            })
            .collect();
        if !member(rho, &image) {
            return false;
        }
        if !odometer_next(&mut idx, &bases) {
            return true;
        }
    }
}

/// Every partition of `{0, .., n-1}`, by restricted growth strings.
pub fn all_partitions(n: usize) -> Vec<Congruence> {
    fn rec(labels: &mut Vec<usize>, next: usize, n: usize, out: &mut Vec<Congruence>) {
        if labels.len() == n {
            out.push(Congruence::from_block_ids(labels));
            return;
        }
        for b in 0..=next {
            labels.push(b);
            rec(labels, if b == next { next + 1 } else { next }, n, out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 0, n, &mut out);
    out.sort();
    out
}

/// Compatibility checked on its definition: for every operation and every
/// pair of blockwise-related argument tuples, the results must be related.
pub fn oracle_is_congruence(a: &FiniteAlgebra, c: &Congruence) -> bool {
    let n = a.universe();
    let blocks = c.blocks();
    let block_of: Vec<usize> = (0..n).map(|x| c.block_of(x)).collect();
    for op in a.operations() {
        let k = op.arity();
        if k == 0 {
            continue;
        }
        let mut u = vec![0 as Element; k];
        let outer = vec![n; k];
        loop {
            let lists: Vec<&Vec<Element>> = u.iter().map(|&x| &blocks[block_of[x]]).collect();
            let inner: Vec<usize> = lists.iter().map(|l| l.len()).collect();
            let mut sel = vec![0usize; k];
            loop {
                let v: Vec<Element> = sel.iter().zip(&lists).map(|(&s, l)| l[s]).collect();
                if block_of[op.apply(&u)] != block_of[op.apply(&v)] {
                    return false;
                }
                if !odometer_next(&mut sel, &inner) {
                    break;
                }
            }
            if !odometer_next(&mut u, &outer) {
                break;
            }
        }
    }
    true
}

/// All congruences, by filtering every partition of the universe.
pub fn oracle_congruences(a: &FiniteAlgebra) -> Vec<Congruence> {
    all_partitions(a.universe())
        .into_iter()
        .filter(|c| oracle_is_congruence(a, c))
        .collect()
}

/// The meet of two partitions, rebuilt from label pairs.
pub fn oracle_meet(a: &Congruence, b: &Congruence) -> Congruence {
    let n = a.universe();
    let mut seen: Vec<(usize, usize)> = Vec::new();
    let labels: Vec<usize> = (0..n)
        .map(|x| {
            let key = (a.block_of(x), b.block_of(x));
            match seen.iter().position(|&p| p == key) {
                Some(i) => i,
                None => {
                    seen.push(key);
                    seen.len() - 1
                }
            }
        })
        .collect();
    Congruence::from_block_ids(&labels)
}

/// The least congruence in `congs` relating `x` and `y`: the meet of all
/// of them, since congruences are closed under meets.
pub fn oracle_principal(congs: &[Congruence], x: Element, y: Element) -> Congruence {
    congs
        .iter()
        .filter(|c| c.related(x, y))
        .cloned()
        .reduce(|acc, c| oracle_meet(&acc, &c))
        .expect("the universal partition relates everything")
}

/// The factor pair conditions checked pointwise: trivial meet and a
/// composition that reaches every ordered pair.
pub fn oracle_is_factor_pair(theta: &Congruence, delta: &Congruence) -> bool {
    let n = theta.universe();
    for x in 0..n {
        for y in 0..n {
            if x != y && theta.related(x, y) && delta.related(x, y) {
                return false;
            }
        }
    }
    for x in 0..n {
        for z in 0..n {
            if !(0..n).any(|y| theta.related(x, y) && delta.related(y, z)) {
                return false;
            }
        }
    }
    true
}

pub fn z_mod(n: usize) -> FiniteAlgebra {
    let add = Operation::from_fn("add", n, 2, |t| (t[0] + t[1]) % n).unwrap();
    FiniteAlgebra::without_frame(n, vec![add]).unwrap()
}

pub fn klein4() -> FiniteAlgebra {
    let add = Operation::from_fn("add", 4, 2, |t| t[0] ^ t[1]).unwrap();
    FiniteAlgebra::without_frame(4, vec![add]).unwrap()
}

/// The `n`-element chain as a bounded lattice with designated bounds.
pub fn chain_lattice(n: usize) -> FiniteAlgebra {
    let meet = Operation::from_fn("meet", n, 2, |t| t[0].min(t[1])).unwrap();
    let join = Operation::from_fn("join", n, 2, |t| t[0].max(t[1])).unwrap();
    let c0 = Operation::constant("c0", n, 0);
    let c1 = Operation::constant("c1", n, n - 1);
    FiniteAlgebra::new(
        n,
        vec![meet, join, c0, c1],
        vec!["c0".into()],
        vec!["c1".into()],
    )
    .unwrap()
}

pub fn two_chain() -> FiniteAlgebra {
    chain_lattice(2)
}

pub fn sigma_e() -> Relation {
    Relation::equivalence_from_blocks(3, &[vec![0, 1], vec![2]]).unwrap()
}

pub fn sigma_c2() -> Relation {
    Relation::central_hull(3, 2, &[2]).unwrap()
}

pub fn sigma_c3() -> Relation {
    Relation::central_hull(4, 3, &[3]).unwrap()
}

pub fn sigma_c4() -> Relation {
    Relation::central_hull(5, 4, &[4]).unwrap()
}
