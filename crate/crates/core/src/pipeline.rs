//! End-to-end verification pipelines.
//!
//! Each pipeline takes a relation of a particular shape, builds the
//! truncated algebra of its preserving operations, and checks a fixed
//! list of clauses about terms, congruences, and decomposability. Every
//! clause records whether it passed and a short evidence string, so a
//! report can be audited line by line.

use crate::algebra::quotient;
use crate::classify::{classify, RelationClass};
use crate::congruence::{
    all_congruences, is_directly_indecomposable, is_simple, is_subdirectly_irreducible,
    Congruence,
};
use crate::error::AlgebraError;
use crate::preprimal::{
    build_preprimal, build_preprimal_truncating, build_f, discriminator, find_pierce_terms,
    find_u_term, is_primal_upto, refute_u_term,
};
use crate::preserve::{preserves, Preservation};
use crate::relation::Relation;
use crate::Limits;

/// One checked fact inside a pipeline report.
#[derive(Clone, Debug)]
pub struct Clause {
    pub id: &'static str,
    pub pass: bool,
    pub evidence: String,
}

/// The outcome of a verification pipeline.
#[derive(Clone, Debug)]
pub struct PipelineReport {
    /// The relation shape the pipeline is for.
    pub shape: &'static str,
    pub clauses: Vec<Clause>,
}

impl PipelineReport {
    pub fn pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

fn clause(id: &'static str, pass: bool, evidence: impl Into<String>) -> Clause {
    Clause {
        id,
        pass,
        evidence: evidence.into(),
    }
}

/// Verifies the pipeline for a nontrivial proper equivalence `sigma`:
/// the truncated algebra `P` of `sigma`-preserving operations has
/// congruence lattice `{diagonal, sigma, universal}`, is subdirectly
/// irreducible with monolith `sigma` but not simple, the guarded switch
/// `f` preserves `sigma` and satisfies the selector identities, the
/// quotient `P/sigma` is primal up to the arity cap, and adjoining `f`
/// makes the selector term search succeed.
pub fn verify_equivalence(
    sigma: &Relation,
    limits: &Limits,
) -> Result<PipelineReport, AlgebraError> {
    if !matches!(classify(sigma), RelationClass::NontrivialEquivalence { .. }) {
        return Err(AlgebraError::WrongRelationShape {
            expected: "nontrivial proper equivalence relation",
        });
    }
    let p = build_preprimal(sigma, 2, limits)?;
    let a = &p.algebra;
    let n = a.universe();
    let sigma_con = Congruence::from_pairs(
        n,
        &sigma
            .tuples()
            .iter()
            .map(|t| (t[0], t[1]))
            .collect::<Vec<_>>(),
    )?;
    let mut clauses = Vec::new();

    let lattice = all_congruences(a, limits)?;
    let expected = {
        let mut v = vec![
            Congruence::diagonal(n),
            sigma_con.clone(),
            Congruence::universal(n),
        ];
        v.sort();
        v.dedup();
        v
    };
    clauses.push(clause(
        "eq-con-lattice",
        lattice.congruences() == expected.as_slice(),
        format!(
            "congruences of the preserver algebra: {}, expected diagonal, the block partition {}, universal",
            lattice.len(),
            sigma_con
        ),
    ));

    let f = build_f(sigma, p.zero_elt, p.one_elt)?;
    let f_preserves = preserves(&f, sigma)?.holds();
    clauses.push(clause(
        "eq-f-preserves",
        f_preserves,
        format!(
            "guarded switch with zero={} one={} preserves the relation: {}",
            p.zero_elt, p.one_elt, f_preserves
        ),
    ));

    let zero = a.zero_tuple();
    let one = a.one_tuple();
    let mut identities = true;
    for x in 0..n {
        for y in 0..n {
            identities &= f.apply(&[x, y, zero[0], zero[1]]) == x;
            identities &= f.apply(&[x, y, one[0], one[1]]) == y;
        }
    }
    clauses.push(clause(
        "eq-u-identities",
        identities,
        format!("f(x,y,{},{}) = x and f(x,y,{},{}) = y", zero[0], zero[1], one[0], one[1]),
    ));

    let q = quotient(a, &sigma_con)?;
    let primal = is_primal_upto(&q, 2, limits)?;
    clauses.push(clause(
        "eq-quotient-primal",
        primal,
        format!(
            "quotient by the block partition has {} elements and is primal up to arity 2: {}",
            q.universe(),
            primal
        ),
    ));

    let monolith = is_subdirectly_irreducible(a, limits)?;
    let simple = is_simple(a, limits)?;
    let monolith_is_sigma = monolith.as_ref() == Some(&sigma_con);
    clauses.push(clause(
        "eq-si-monolith",
        monolith_is_sigma && !simple,
        format!(
            "monolith: {}, simple: {simple}",
            monolith
                .map(|m| m.to_string())
                .unwrap_or_else(|| "none".into())
        ),
    ));

    let with_f = a.clone().with_operation(f.clone())?;
    let search = find_u_term(&with_f, 4, usize::MAX, limits)?;
    let found_f = search.term.as_ref().map(|u| u.table()) == Some(f.table());
    clauses.push(clause(
        "eq-u-term-found",
        found_f,
        format!(
            "selector term search with f adjoined found a term after {} rounds; it is f's table: {found_f}",
            search.rounds
        ),
    ));

    Ok(PipelineReport {
        shape: "nontrivial equivalence",
        clauses,
    })
}

/// Verifies the pipeline for a binary central relation `sigma`: Pierce
/// terms exist, the instruction `U` built from them satisfies the
/// selector identities and preserves `sigma`, the ternary discriminator
/// does not preserve `sigma` (witnessed), and the truncated preserver
/// algebra is directly indecomposable and subdirectly irreducible.
pub fn verify_central_binary(
    sigma: &Relation,
    limits: &Limits,
) -> Result<PipelineReport, AlgebraError> {
    let central = matches!(classify(sigma), RelationClass::Central { .. });
    if !central || sigma.arity() != 2 {
        return Err(AlgebraError::WrongRelationShape {
            expected: "binary central relation",
        });
    }
    let n = sigma.universe();
    let mut clauses = Vec::new();

    let terms = find_pierce_terms(sigma, limits)?;
    clauses.push(clause(
        "cb-terms-found",
        terms.is_some(),
        match &terms {
            Some(t) => format!("plus and times found with zero={} one={}", t.zero, t.one),
            None => "no plus and times satisfy the unit laws".to_string(),
        },
    ));
    let terms = terms.ok_or(AlgebraError::DesignationImpossible(
        "no Pierce terms for this binary central relation".into(),
    ))?;

    let u = terms.compose_u();
    let mut identities = true;
    for x in 0..n {
        for y in 0..n {
            identities &= u.apply(&[x, y, terms.zero, terms.one]) == x;
            identities &= u.apply(&[x, y, terms.one, terms.zero]) == y;
        }
    }
    clauses.push(clause(
        "cb-u-identities",
        identities,
        format!(
            "U(x,y,{z},{o}) = x and U(x,y,{o},{z}) = y",
            z = terms.zero,
            o = terms.one
        ),
    ));

    let u_preserves = preserves(&u, sigma)?.holds();
    clauses.push(clause(
        "cb-u-preserves",
        u_preserves,
        format!("U = (x*w)+(y*v) preserves the relation: {u_preserves}"),
    ));

    let disc = discriminator(n);
    let refuted = match preserves(&disc, sigma)? {
        Preservation::Fails(w) => {
            let ok = w.verify(&disc, sigma);
            clauses.push(clause(
                "cb-disc-refuted",
                ok,
                format!(
                    "discriminator fails preservation at rows {:?} with image {:?}",
                    w.rows, w.image
                ),
            ));
            ok
        }
        Preservation::Holds => {
            clauses.push(clause(
                "cb-disc-refuted",
                false,
                "discriminator unexpectedly preserves the relation",
            ));
            false
        }
    };
    let _ = refuted;

    let p = build_preprimal(sigma, 2, limits)?;
    let di = is_directly_indecomposable(&p.algebra, limits)?;
    let monolith = is_subdirectly_irreducible(&p.algebra, limits)?;
    clauses.push(clause(
        "cb-di-si",
        di && monolith.is_some(),
        format!(
            "preserver algebra: directly indecomposable: {di}, monolith: {}",
            monolith
                .map(|m| m.to_string())
                .unwrap_or_else(|| "none".into())
        ),
    ));

    Ok(PipelineReport {
        shape: "binary central",
        clauses,
    })
}

/// Verifies the pipeline for a central relation of arity at least three:
/// the preserver enumeration truncates at arity 1, a refutation
/// certificate rules out any preserving selector term on the designated
/// frame tuples, and the bounded search over the truncated algebra
/// accordingly finds none.
pub fn verify_central_h3(
    sigma: &Relation,
    limits: &Limits,
) -> Result<PipelineReport, AlgebraError> {
    let central = matches!(classify(sigma), RelationClass::Central { .. });
    if !central || sigma.arity() < 3 {
        return Err(AlgebraError::WrongRelationShape {
            expected: "central relation of arity at least 3",
        });
    }
    let mut clauses = Vec::new();

    let p = build_preprimal_truncating(sigma, 2, limits)?;
    clauses.push(clause(
        "ch3-truncation",
        p.is_truncated() && p.achieved_arity == 1,
        format!(
            "requested arity {} but enumeration was feasible up to arity {}; {} operations",
            p.requested_arity,
            p.achieved_arity,
            p.algebra.operations().len()
        ),
    ));

    let zero = p.algebra.zero_tuple();
    let one = p.algebra.one_tuple();
    let witness = refute_u_term(sigma, &zero, &one)?;
    let verified = witness.verify(sigma);
    clauses.push(clause(
        "ch3-refutation",
        verified,
        format!(
            "no preserving term can switch on {:?} vs {:?}: forced output {:?} lies outside the relation",
            zero, one, witness.output
        ),
    ));

    let search = find_u_term(&p.algebra, 2 + p.algebra.frame_width(), usize::MAX, limits)?;
    clauses.push(clause(
        "ch3-no-u-term",
        search.term.is_none(),
        format!(
            "selector search over {} tables found none (fixpoint: {}, table cap: {}, work cap: {})",
            search.tables_explored,
            search.reached_fixpoint,
            search.table_cap_hit,
            search.work_cap_hit
        ),
    ));

    Ok(PipelineReport {
        shape: "central of arity at least 3",
        clauses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn equivalence_pipeline_passes_every_clause() {
        let report = verify_equivalence(&sigma_e(), &Limits::default()).unwrap();
        let ids: Vec<&str> = report.clauses.iter().map(|c| c.id).collect();
        assert_eq!(
            ids,
            vec![
                "eq-con-lattice",
                "eq-f-preserves",
                "eq-u-identities",
                "eq-quotient-primal",
                "eq-si-monolith",
                "eq-u-term-found",
            ]
        );
        for c in &report.clauses {
            assert!(c.pass, "{}: {}", c.id, c.evidence);
        }
        assert!(report.pass());
    }

    #[test]
    fn binary_central_pipeline_passes_every_clause() {
        let report = verify_central_binary(&sigma_c2(), &Limits::default()).unwrap();
        let ids: Vec<&str> = report.clauses.iter().map(|c| c.id).collect();
        assert_eq!(
            ids,
            vec![
                "cb-terms-found",
                "cb-u-identities",
                "cb-u-preserves",
                "cb-disc-refuted",
                "cb-di-si",
            ]
        );
        for c in &report.clauses {
            assert!(c.pass, "{}: {}", c.id, c.evidence);
        }
    }

    #[test]
    fn wide_central_pipeline_passes_every_clause() {
        let report = verify_central_h3(&sigma_c3(), &Limits::default()).unwrap();
        let ids: Vec<&str> = report.clauses.iter().map(|c| c.id).collect();
        assert_eq!(ids, vec!["ch3-truncation", "ch3-refutation", "ch3-no-u-term"]);
        for c in &report.clauses {
            assert!(c.pass, "{}: {}", c.id, c.evidence);
        }
    }

    #[test]
    fn pipelines_reject_mismatched_shapes() {
        let limits = Limits::default();
        assert!(matches!(
            verify_equivalence(&sigma_c2(), &limits),
            Err(AlgebraError::WrongRelationShape { .. })
        ));
        assert!(matches!(
            verify_central_binary(&sigma_e(), &limits),
            Err(AlgebraError::WrongRelationShape { .. })
        ));
        assert!(matches!(
            verify_central_h3(&sigma_c2(), &limits),
            Err(AlgebraError::WrongRelationShape { .. })
        ));
    }
}
