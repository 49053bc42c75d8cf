//! Large and ∩-large subacts, socle, radical, simplicity, and essential
//! monomorphisms.
//!
//! A subact `B` is large in `A` when every non-diagonal congruence on `A`
//! meets the Rees congruence of `B` non-diagonally; essential monomorphisms
//! are decided through largeness of the image, which keeps the check finite
//! and quantifier-free.

use crate::act::{Act, ActError, Subact};
use crate::congruence::{self, CongruenceError};
use crate::hom::Hom;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error(transparent)]
    Act(#[from] ActError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("the monoid has no zero, or the act has no unique fixed point")]
    NoZero,
    #[error("the subact must differ from the one-element zero subact")]
    NonZeroRequired,
    #[error("hom is not injective")]
    NotInjective,
}

/// `B ⊆' A`: every non-diagonal congruence on `A` intersects the Rees
/// congruence of `B` non-diagonally. The whole act is always large.
pub fn is_large(act: &Act, sub: &Subact) -> Result<bool, StructureError> {
    let rees = congruence::rees_congruence(act, sub)?;
    let all = congruence::all_congruences(act)?;
    for theta in all.iter().filter(|c| !c.is_diagonal()) {
        if theta.meet(&rees)?.is_diagonal() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn large_subacts(act: &Act) -> Result<Vec<Subact>, StructureError> {
    act.subacts()
        .into_iter()
        .filter_map(|sub| match is_large(act, &sub) {
            Ok(true) => Some(Ok(sub)),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect()
}

/// `B` is ∩-large: it meets every non-zero subact in more than the zero.
/// Requires the monoid to have a zero and the act a unique fixed point.
pub fn is_intersection_large(act: &Act, sub: &Subact) -> Result<bool, StructureError> {
    if act.monoid().zero().is_none() {
        return Err(StructureError::NoZero);
    }
    let theta = act.theta().ok_or(StructureError::NoZero)?;
    if sub.elements() == [theta] {
        return Err(StructureError::NonZeroRequired);
    }
    // every subact contains b·0 = θ, so intersections are never empty
    Ok(act
        .subacts()
        .iter()
        .filter(|c| c.elements() != [theta])
        .all(|c| sub.intersect(c).len() >= 2))
}

/// `Soc(A)`: the intersection of all large subacts, absent when empty.
pub fn socle(act: &Act) -> Result<Option<Subact>, StructureError> {
    let large = large_subacts(act)?;
    let mut elements: Vec<usize> = (0..act.size()).collect();
    for sub in &large {
        elements.retain(|&a| sub.contains(a));
    }
    Ok(if elements.is_empty() {
        None
    } else {
        Some(Subact::unchecked(elements))
    })
}

/// Proper subacts are either absent entirely or a single one-element subact.
pub fn is_theta_simple(act: &Act) -> bool {
    let proper: Vec<Subact> = act
        .subacts()
        .into_iter()
        .filter(|s| s.len() < act.size())
        .collect();
    match proper.as_slice() {
        [] => true,
        [only] => only.len() == 1,
        _ => false,
    }
}

/// No proper subacts at all.
pub fn is_simple(act: &Act) -> bool {
    act.subacts().len() == 1
}

pub fn theta_simple_subacts(act: &Act) -> Vec<Subact> {
    act.subacts()
        .into_iter()
        .filter(|sub| is_theta_simple(&act.subact_as_act(sub)))
        .collect()
}

/// `S(A)`: the union of the θ-simple subacts. Requires a monoid with zero.
pub fn s_socle(act: &Act) -> Result<Subact, StructureError> {
    if act.monoid().zero().is_none() {
        return Err(StructureError::NoZero);
    }
    let mut elements = Vec::new();
    for sub in theta_simple_subacts(act) {
        elements.extend_from_slice(sub.elements());
    }
    Ok(Subact::unchecked(elements))
}

/// Maximal proper subacts, and `Rad(A)` as their intersection. `Rad(A) = A`
/// when no maximal subact exists; absent when the intersection is empty.
pub fn radical(act: &Act) -> (Option<Subact>, Vec<Subact>) {
    let subs = act.subacts();
    let proper: Vec<&Subact> = subs.iter().filter(|s| s.len() < act.size()).collect();
    let maximal: Vec<Subact> = proper
        .iter()
        .copied()
        .filter(|&s| {
            proper
                .iter()
                .all(|&t| t.len() <= s.len() || !s.elements().iter().all(|a| t.contains(*a)))
        })
        .cloned()
        .collect();
    if maximal.is_empty() {
        return (Some(Subact::unchecked((0..act.size()).collect())), maximal);
    }
    let mut elements: Vec<usize> = (0..act.size()).collect();
    for sub in &maximal {
        elements.retain(|&a| sub.contains(a));
    }
    let rad = if elements.is_empty() {
        None
    } else {
        Some(Subact::unchecked(elements))
    };
    (rad, maximal)
}

/// Every indecomposable component is simple.
pub fn is_completely_reducible(act: &Act) -> bool {
    act.indecomposable_components()
        .into_iter()
        .all(|comp| is_simple(&act.subact_as_act(&comp)))
}

/// An injective hom is essential iff its image is large in the target.
pub fn is_essential_mono(src: &Act, dst: &Act, hom: &Hom) -> Result<bool, StructureError> {
    if !hom.is_injective() {
        return Err(StructureError::NotInjective);
    }
    debug_assert!(crate::hom::is_hom(src, dst, &hom.map));
    let image = Subact::unchecked(hom.map.clone());
    is_large(dst, &image)
}

/// Summary of the structural subact landscape of one act.
#[derive(Debug, Clone, serde::Serialize)]
pub struct StructureReport {
    pub socle: Option<Subact>,
    /// Absent when the monoid has no zero.
    pub s_socle: Option<Subact>,
    pub radical: Option<Subact>,
    pub maximal_subacts: Vec<Subact>,
    pub large_subacts: Vec<Subact>,
    pub theta_simple_subacts: Vec<Subact>,
}

pub fn structure_report(act: &Act) -> Result<StructureReport, StructureError> {
    let (radical, maximal_subacts) = radical(act);
    Ok(StructureReport {
        socle: socle(act)?,
        s_socle: s_socle(act).ok(),
        radical,
        maximal_subacts,
        large_subacts: large_subacts(act)?,
        theta_simple_subacts: theta_simple_subacts(act),
    })
}
