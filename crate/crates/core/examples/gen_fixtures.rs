//! Regenerates the files in `fixtures/` from their canonical
//! constructors. Run from anywhere in the workspace:
//!
//! ```text
//! cargo run -p ualg-core --example gen_fixtures
//! ```

use std::fs;
use std::path::PathBuf;

use ualg_core::io::{write_algebra, write_relation};
use ualg_core::{FiniteAlgebra, Operation, Relation};

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
    fs::create_dir_all(&dir).expect("create fixtures directory");

    let relations = [
        (
            "sigma_e.rel",
            Relation::equivalence_from_blocks(3, &[vec![0, 1], vec![2]]).unwrap(),
        ),
        ("sigma_c2.rel", Relation::central_hull(3, 2, &[2]).unwrap()),
        ("sigma_c3.rel", Relation::central_hull(4, 3, &[3]).unwrap()),
        ("sigma_c4.rel", Relation::central_hull(5, 4, &[4]).unwrap()),
        (
            "chain_order.rel",
            Relation::new(
                3,
                2,
                vec![
                    vec![0, 0],
                    vec![0, 1],
                    vec![0, 2],
                    vec![1, 1],
                    vec![1, 2],
                    vec![2, 2],
                ],
            )
            .unwrap(),
        ),
        (
            "three_cycle.rel",
            Relation::new(3, 2, vec![vec![0, 1], vec![1, 2], vec![2, 0]]).unwrap(),
        ),
        (
            "unary_twoset.rel",
            Relation::new(3, 1, vec![vec![0], vec![1]]).unwrap(),
        ),
    ];
    for (name, rho) in &relations {
        let path = dir.join(name);
        fs::write(&path, write_relation(rho)).expect("write relation fixture");
        println!("wrote {}", path.display());
    }

    let algebras = [
        ("two_chain.alg", two_chain()),
        ("chain3.alg", chain3()),
        ("z4.alg", z4()),
        ("klein4.alg", klein4()),
    ];
    for (name, a) in &algebras {
        let path = dir.join(name);
        fs::write(&path, write_algebra(a)).expect("write algebra fixture");
        println!("wrote {}", path.display());
    }
}

fn two_chain() -> FiniteAlgebra {
    let meet = Operation::from_fn("meet", 2, 2, |t| t[0].min(t[1])).unwrap();
    let join = Operation::from_fn("join", 2, 2, |t| t[0].max(t[1])).unwrap();
    let c0 = Operation::constant("c0", 2, 0);
    let c1 = Operation::constant("c1", 2, 1);
    FiniteAlgebra::new(2, vec![meet, join, c0, c1], vec!["c0".into()], vec!["c1".into()])
        .unwrap()
}

fn chain3() -> FiniteAlgebra {
    let meet = Operation::from_fn("meet", 3, 2, |t| t[0].min(t[1])).unwrap();
    let join = Operation::from_fn("join", 3, 2, |t| t[0].max(t[1])).unwrap();
    let c0 = Operation::constant("c0", 3, 0);
    let c1 = Operation::constant("c1", 3, 2);
    FiniteAlgebra::new(3, vec![meet, join, c0, c1], vec!["c0".into()], vec!["c1".into()])
        .unwrap()
}

fn z4() -> FiniteAlgebra {
    let add = Operation::from_fn("add", 4, 2, |t| (t[0] + t[1]) % 4).unwrap();
    FiniteAlgebra::without_frame(4, vec![add]).unwrap()
}

fn klein4() -> FiniteAlgebra {
    let add = Operation::from_fn("add", 4, 2, |t| t[0] ^ t[1]).unwrap();
    FiniteAlgebra::without_frame(4, vec![add]).unwrap()
}
