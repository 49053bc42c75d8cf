//! Classification predicates: faithful, cofaithful, subgenerator, generator,
//! subdirect irreducibility, and the finitely-(Rees-)cogenerated checks.
//!
//! On finite acts, finitely cogenerated holds automatically (the congruence
//! lattice is finite); the check reports that with a triviality flag so
//! callers cannot mistake it for information. The substantive content is the
//! extraction of a minimum finite subfamily from an explicit family.

use crate::act::{Act, Subact};
use crate::congruence::{self, Congruence, CongruenceError};
use crate::hom::{self, HomError};
use itertools::Itertools;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClassifyError {
    #[error("subset of elements must be nonempty")]
    EmptySubset,
    #[error("family meet is not the diagonal")]
    FamilyMeetNotDiagonal,
    #[error("family intersection has more than one element")]
    FamilyIntersectionTooLarge,
    #[error("implication chain violated: {0}")]
    ChainViolation(String),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("hom computation failed: {0}")]
    Hom(String),
}

impl From<HomError> for ClassifyError {
    fn from(e: HomError) -> Self {
        ClassifyError::Hom(e.to_string())
    }
}

/// `R_S(B) = {(s,t) | as = at for all a in B}` as a congruence on the
/// regular act, i.e. the meet of the annihilator congruences `ker λ_a`.
pub fn right_annihilator(act: &Act, subset: Option<&[usize]>) -> Result<Congruence, ClassifyError> {
    let elements: Vec<usize> = match subset {
        Some(set) => set.to_vec(),
        None => (0..act.size()).collect(),
    };
    if elements.is_empty() {
        return Err(ClassifyError::EmptySubset);
    }
    let n = act.monoid().size();
    let mut current = Congruence::full(n);
    for &a in &elements {
        let kernel = hom::lambda(act, a).kernel();
        current = current.meet(&kernel)?;
    }
    Ok(current)
}

pub fn is_faithful(act: &Act) -> Result<bool, ClassifyError> {
    Ok(right_annihilator(act, None)?.is_diagonal())
}

/// A minimum-cardinality element subset `B` with `R_S(B) = Δ`, plus the
/// explicit embedding `s ↦ (a_1 s, .., a_n s)` of the regular act into the
/// `n`-th power. Absent iff the act is not faithful.
#[derive(Debug, Clone, Serialize)]
pub struct CofaithfulWitness {
    pub elements: Vec<usize>,
    pub power: usize,
    /// The regular act embedded into the product of `power` copies.
    pub embedding: Vec<usize>,
}

pub fn cofaithful_witness(act: &Act) -> Result<Option<CofaithfulWitness>, ClassifyError> {
    if !is_faithful(act)? {
        return Ok(None);
    }
    let m = act.size();
    let n = act.monoid().size();
    for k in 1..=m {
        for combo in (0..m).combinations(k) {
            if right_annihilator(act, Some(&combo))?.is_diagonal() {
                let embedding: Vec<usize> = (0..n)
                    .map(|s| combo.iter().fold(0, |acc, &a| acc * m + act.act(a, s)))
                    .collect();
                debug_assert_eq!(embedding.iter().unique().count(), n);
                return Ok(Some(CofaithfulWitness {
                    elements: combo,
                    power: k,
                    embedding,
                }));
            }
        }
    }
    unreachable!("faithful acts admit the full element set as witness");
}

/// The least element `a` with `ker λ_a = Δ`, i.e. with `λ_a` embedding the
/// regular act.
pub fn subgenerator_witness(act: &Act) -> Option<usize> {
    (0..act.size()).find(|&a| hom::lambda(act, a).is_injective())
}

pub fn is_subdirectly_irreducible(act: &Act) -> Result<bool, ClassifyError> {
    if act.size() < 2 {
        return Ok(false);
    }
    Ok(congruence::monolith(act)?.is_some())
}

/// Every pairwise meet of non-diagonal congruences is non-diagonal;
/// induction extends this to all finite meets.
pub fn is_irreducible(act: &Act) -> Result<bool, ClassifyError> {
    if act.size() < 2 {
        return Ok(false);
    }
    let all = congruence::all_congruences(act)?;
    let nondiag: Vec<&Congruence> = all.iter().filter(|c| !c.is_diagonal()).collect();
    for (i, c) in nondiag.iter().enumerate() {
        for d in &nondiag[i..] {
            if c.meet(d)?.is_diagonal() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Outcome of a finitely-(Rees-)cogenerated check.
#[derive(Debug, Clone, Serialize)]
pub struct FiniteCheck {
    pub holds: bool,
    /// True when the answer is automatic for finite acts and carries no
    /// information.
    pub trivial_for_finite: bool,
    /// Indices into the supplied family forming a minimum subfamily, when a
    /// family was supplied.
    pub witness: Option<Vec<usize>>,
}

/// With no explicit family, the condition is automatic for a finite act and
/// the triviality flag is set. With a family whose meet is the diagonal,
/// returns a minimum-size subfamily whose meet is still the diagonal.
pub fn finitely_cogenerated_check(
    act: &Act,
    family: Option<&[Congruence]>,
) -> Result<FiniteCheck, ClassifyError> {
    let Some(family) = family else {
        return Ok(FiniteCheck {
            holds: true,
            trivial_for_finite: true,
            witness: None,
        });
    };
    let total = Congruence::meet_all(act.size(), family.iter())?;
    if !total.is_diagonal() {
        return Err(ClassifyError::FamilyMeetNotDiagonal);
    }
    for k in 0..=family.len() {
        for combo in (0..family.len()).combinations(k) {
            let meet = Congruence::meet_all(act.size(), combo.iter().map(|&i| &family[i]))?;
            if meet.is_diagonal() {
                return Ok(FiniteCheck {
                    holds: true,
                    trivial_for_finite: false,
                    witness: Some(combo),
                });
            }
        }
    }
    unreachable!("full family meets to the diagonal");
}

/// Same check with subact families in place of Rees congruence families:
/// if the whole family intersects in at most one element, a minimum
/// subfamily already does.
pub fn finitely_rees_cogenerated_check(
    act: &Act,
    family: Option<&[Subact]>,
) -> Result<FiniteCheck, ClassifyError> {
    let Some(family) = family else {
        return Ok(FiniteCheck {
            holds: true,
            trivial_for_finite: true,
            witness: None,
        });
    };
    let intersect = |indices: &[usize]| -> Vec<usize> {
        let mut elements: Vec<usize> = (0..act.size()).collect();
        for &i in indices {
            elements.retain(|&a| family[i].contains(a));
        }
        elements
    };
    let all: Vec<usize> = (0..family.len()).collect();
    if intersect(&all).len() > 1 {
        return Err(ClassifyError::FamilyIntersectionTooLarge);
    }
    for k in 0..=family.len() {
        for combo in (0..family.len()).combinations(k) {
            if intersect(&combo).len() <= 1 {
                return Ok(FiniteCheck {
                    holds: true,
                    trivial_for_finite: false,
                    witness: Some(combo),
                });
            }
        }
    }
    unreachable!("full family intersects in at most one element");
}

/// All classification predicates for one act, with the implication chain
/// asserted during construction.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub faithful: bool,
    pub cofaithful: Option<CofaithfulWitness>,
    pub subgenerator: Option<usize>,
    pub generator: bool,
    pub subdirectly_irreducible: bool,
    pub irreducible: bool,
    pub finitely_cogenerated: FiniteCheck,
    pub finitely_rees_cogenerated: FiniteCheck,
}

pub fn classification_report(act: &Act) -> Result<Classification, ClassifyError> {
    let faithful = is_faithful(act)?;
    let cofaithful = cofaithful_witness(act)?;
    let subgenerator = subgenerator_witness(act);
    let generator = hom::is_generator(act)?.is_some();
    let report = Classification {
        faithful,
        cofaithful,
        subgenerator,
        generator,
        subdirectly_irreducible: is_subdirectly_irreducible(act)?,
        irreducible: is_irreducible(act)?,
        finitely_cogenerated: finitely_cogenerated_check(act, None)?,
        finitely_rees_cogenerated: finitely_rees_cogenerated_check(act, None)?,
    };
    if report.generator && report.subgenerator.is_none() {
        return Err(ClassifyError::ChainViolation(
            "generator without subgenerator".into(),
        ));
    }
    if report.subgenerator.is_some() && report.cofaithful.is_none() {
        return Err(ClassifyError::ChainViolation(
            "subgenerator without cofaithful witness".into(),
        ));
    }
    if report.cofaithful.is_some() && !report.faithful {
        return Err(ClassifyError::ChainViolation(
            "cofaithful without faithful".into(),
        ));
    }
    Ok(report)
}
