//! Small hand-checked algebras shared by the unit tests.

use crate::algebra::FiniteAlgebra;
use crate::op::Operation;

/// The two-element group `(Z_2, +)`.
pub fn z2_group() -> FiniteAlgebra {
    let add = Operation::new("add", 2, 2, vec![0, 1, 1, 0]).unwrap();
    FiniteAlgebra::without_frame(2, vec![add]).unwrap()
}

/// The four-element cyclic group `(Z_4, +)`.
pub fn z4_group() -> FiniteAlgebra {
    let add = Operation::from_fn("add", 4, 2, |t| (t[0] + t[1]) % 4).unwrap();
    FiniteAlgebra::without_frame(4, vec![add]).unwrap()
}

/// The two-element bounded lattice with designated bounds (`N = 1`).
pub fn two_chain_lattice() -> FiniteAlgebra {
    let meet = Operation::from_fn("meet", 2, 2, |t| t[0].min(t[1])).unwrap();
    let join = Operation::from_fn("join", 2, 2, |t| t[0].max(t[1])).unwrap();
    let c0 = Operation::constant("c0", 2, 0);
    let c1 = Operation::constant("c1", 2, 1);
    FiniteAlgebra::new(
        2,
        vec![meet, join, c0, c1],
        vec!["c0".into()],
        vec!["c1".into()],
    )
    .unwrap()
}

/// The three-element chain as a bounded lattice (`N = 1`).
pub fn chain3_lattice() -> FiniteAlgebra {
    let meet = Operation::from_fn("meet", 3, 2, |t| t[0].min(t[1])).unwrap();
    let join = Operation::from_fn("join", 3, 2, |t| t[0].max(t[1])).unwrap();
    let c0 = Operation::constant("c0", 3, 0);
    let c1 = Operation::constant("c1", 3, 2);
    FiniteAlgebra::new(
        3,
        vec![meet, join, c0, c1],
        vec!["c0".into()],
        vec!["c1".into()],
    )
    .unwrap()
}

/// The three-element cyclic group `(Z_3, +)`.
pub fn z3_group() -> FiniteAlgebra {
    let add = Operation::from_fn("add", 3, 2, |t| (t[0] + t[1]) % 3).unwrap();
    FiniteAlgebra::without_frame(3, vec![add]).unwrap()
}
