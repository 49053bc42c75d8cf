//! Structural claims checked exhaustively across a universe of small
//! monoids and acts.
//!
//! Each claim is a pure function tallying per-instance outcomes: confirmed,
//! skipped (hypothesis not met), or violated. Violations are data, not
//! panics; a run fails only when a claim not marked report-only has
//! violations. Report-only claims record how often a conclusion holds where
//! its usual proof needs hypotheses that finiteness makes trivial or
//! unavailable.

use crate::act::Act;
use crate::classify;
use crate::congruence::{self, Congruence};
use crate::hom::{self, CogenerationWitness};
use crate::monoid::Monoid;
use crate::par;
use crate::structure;
use crate::universe::Universe;
use itertools::Itertools;
use serde::Serialize;
use std::sync::Arc;

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Violation {
    pub monoid: Vec<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub act: Option<Vec<Vec<usize>>>,
    pub details: String,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: String,
    pub checked: usize,
    pub confirmed: usize,
    pub skipped: usize,
    pub report_only: bool,
    pub violations: Vec<Violation>,
}

impl ClaimResult {
    pub fn is_consistent(&self) -> bool {
        self.checked == self.confirmed + self.skipped + self.violations.len()
    }

    pub fn hard_failure(&self) -> bool {
        !self.report_only && !self.violations.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    confirmed: usize,
    skipped: usize,
    violations: Vec<Violation>,
}

impl Tally {
    fn confirm(&mut self) {
        self.checked += 1;
        self.confirmed += 1;
    }

    fn skip(&mut self) {
        self.checked += 1;
        self.skipped += 1;
    }

    fn violate(&mut self, monoid: &Monoid, act: Option<&Act>, details: String) {
        self.checked += 1;
        self.violations.push(Violation {
            monoid: monoid.table().clone(),
            act: act.map(|a| a.action().clone()),
            details,
        });
    }

    fn outcome(&mut self, ok: bool, monoid: &Monoid, act: Option<&Act>, details: impl Fn() -> String) {
        if ok {
            self.confirm();
        } else {
            self.violate(monoid, act, details());
        }
    }
}

type ClaimFn = fn(&Arc<Monoid>, &[Act], &mut Tally);

pub struct ClaimSpec {
    pub id: &'static str,
    pub description: &'static str,
    pub report_only: bool,
    check: ClaimFn,
}

pub fn registry() -> &'static [ClaimSpec] {
    &[
        ClaimSpec {
            id: "chain",
            description: "generator implies subgenerator implies cofaithful implies faithful",
            report_only: false,
            check: check_chain,
        },
        ClaimSpec {
            id: "faithful-cogeneration",
            description: "faithful iff cogenerates the regular act iff cogenerates every \
                          cyclic retract eS",
            report_only: false,
            check: check_faithful_cogeneration,
        },
        ClaimSpec {
            id: "faithful-cogeneration-coproducts",
            description: "whether faithful acts also cogenerate small coproducts of cyclic \
                          retracts; fails on finite instances where distinct summands share \
                          an absorbing image, so tallied rather than asserted",
            report_only: true,
            check: check_faithful_cogeneration_coproducts,
        },
        ClaimSpec {
            id: "cotrace-minimality",
            description: "the cotrace is the smallest congruence whose factor act the class \
                          cogenerates",
            report_only: false,
            check: check_cotrace_minimality,
        },
        ClaimSpec {
            id: "cotrace-monotonicity",
            description: "cogenerated classes can only coarsen the cotrace",
            report_only: false,
            check: check_cotrace_monotonicity,
        },
        ClaimSpec {
            id: "cog-closure",
            description: "cogenerated acts are closed under subacts and finite products",
            report_only: false,
            check: check_cog_closure,
        },
        ClaimSpec {
            id: "cog-sandwich",
            description: "cogeneration by the product implies by the class implies by the \
                          coproduct",
            report_only: false,
            check: check_cog_sandwich,
        },
        ClaimSpec {
            id: "si-consistency",
            description: "monolith-based subdirect irreducibility agrees with the lattice \
                          minimum and is inherited by subacts",
            report_only: false,
            check: check_si_consistency,
        },
        ClaimSpec {
            id: "subdirect-decomposition",
            description: "subdirect decompositions meet to the diagonal with all factors \
                          subdirectly irreducible",
            report_only: false,
            check: check_subdirect_decomposition,
        },
        ClaimSpec {
            id: "radical-embedding",
            description: "the radical factor embeds into the product of the maximal-subact \
                          factors, each theta-simple up to a simple split-off complement",
            report_only: false,
            check: check_radical_embedding,
        },
        ClaimSpec {
            id: "factor-correspondence",
            description: "congruences above theta correspond to congruences of the factor \
                          act, preserving order both ways",
            report_only: false,
            check: check_factor_correspondence,
        },
        ClaimSpec {
            id: "minimal-congruence",
            description: "every act with at least two elements has an atom in its congruence \
                          lattice",
            report_only: false,
            check: check_minimal_congruence,
        },
        ClaimSpec {
            id: "cofaithful-equivalence",
            description: "a cofaithful witness subset yields an injective hom from the \
                          regular act into the matching power",
            report_only: false,
            check: check_cofaithful_equivalence,
        },
        ClaimSpec {
            id: "faithful-subact",
            description: "the subact generated by a cofaithful witness is faithful; over \
                          commutative monoids a faithful subact forces cofaithfulness",
            report_only: false,
            check: check_faithful_subact,
        },
        ClaimSpec {
            id: "irreducible-regular",
            description: "when the regular act is irreducible, every cofaithful act is a \
                          subgenerator",
            report_only: false,
            check: check_irreducible_regular,
        },
        ClaimSpec {
            id: "irreducible-regular-converse",
            description: "over a commutative monoid where all cofaithful universe acts are \
                          subgenerators, the regular act is irreducible (universe-relative)",
            report_only: true,
            check: check_irreducible_regular_converse,
        },
        ClaimSpec {
            id: "faithful-implies-cofaithful",
            description: "every faithful finite act is cofaithful",
            report_only: false,
            check: check_faithful_implies_cofaithful,
        },
        ClaimSpec {
            id: "socle-report",
            description: "tallies whether the socle is nonempty and large, per act",
            report_only: true,
            check: check_socle_report,
        },
    ]
}

pub fn claim_ids() -> Vec<&'static str> {
    registry().iter().map(|c| c.id).collect()
}

fn selected<'a>(selection: Option<&[String]>) -> Vec<&'a ClaimSpec> {
    match selection {
        None => registry().iter().collect(),
        Some(ids) => registry()
            .iter()
            .filter(|c| ids.iter().any(|id| id == c.id))
            .collect(),
    }
}

fn merge(claims: &[&ClaimSpec], per_monoid: Vec<Vec<Tally>>) -> Vec<ClaimResult> {
    claims
        .iter()
        .enumerate()
        .map(|(ci, spec)| {
            let mut result = ClaimResult {
                claim: spec.id.to_string(),
                checked: 0,
                confirmed: 0,
                skipped: 0,
                report_only: spec.report_only,
                violations: Vec::new(),
            };
            for tallies in &per_monoid {
                let t = &tallies[ci];
                result.checked += t.checked;
                result.confirmed += t.confirmed;
                result.skipped += t.skipped;
                result.violations.extend(t.violations.iter().cloned());
            }
            result
        })
        .collect()
}

fn eval_monoid(universe: &Universe, mi: usize, claims: &[&ClaimSpec]) -> Vec<Tally> {
    let monoid = &universe.monoids[mi];
    let acts = &universe.acts[mi];
    claims
        .iter()
        .map(|spec| {
            let mut tally = Tally::default();
            (spec.check)(monoid, acts, &mut tally);
            tally
        })
        .collect()
}

/// Runs the selected claims (all by default) across the universe. Work fans
/// out per monoid; output order is fixed by the registry and the universe,
/// so reports are byte-identical across runs and job counts.
pub fn run_claims(universe: &Universe, selection: Option<&[String]>) -> Vec<ClaimResult> {
    let claims = selected(selection);
    let per_monoid = par::map_range(universe.monoids.len(), |mi| {
        eval_monoid(universe, mi, &claims)
    });
    merge(&claims, per_monoid)
}

/// Sequential variant of [`run_claims`] with identical output, kept for the
/// benchmark comparison.
pub fn run_claims_seq(universe: &Universe, selection: Option<&[String]>) -> Vec<ClaimResult> {
    let claims = selected(selection);
    let per_monoid = par::map_range_seq(universe.monoids.len(), |mi| {
        eval_monoid(universe, mi, &claims)
    });
    merge(&claims, per_monoid)
}

fn check_chain(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for act in acts {
        let faithful = match classify::is_faithful(act) {
            Ok(v) => v,
            Err(e) => {
                t.violate(monoid, Some(act), e.to_string());
                continue;
            }
        };
        let cofaithful = match classify::cofaithful_witness(act) {
            Ok(v) => v.is_some(),
            Err(e) => {
                t.violate(monoid, Some(act), e.to_string());
                continue;
            }
        };
        let subgenerator = classify::subgenerator_witness(act).is_some();
        let generator = match hom::is_generator(act) {
            Ok(v) => v.is_some(),
            Err(e) => {
                t.violate(monoid, Some(act), e.to_string());
                continue;
            }
        };
        let broken = if generator && !subgenerator {
            Some("generator but not subgenerator")
        } else if subgenerator && !cofaithful {
            Some("subgenerator but not cofaithful")
        } else if cofaithful && !faithful {
            Some("cofaithful but not faithful")
        } else {
            None
        };
        match broken {
            None => t.confirm(),
            Some(msg) => t.violate(monoid, Some(act), msg.to_string()),
        }
    }
}

/// The cyclic retracts `eS` of the regular act, one per idempotent `e`.
fn cyclic_retracts(monoid: &Arc<Monoid>) -> Vec<Act> {
    let regular = Act::regular(monoid.clone());
    monoid
        .idempotents()
        .into_iter()
        .map(|e| regular.subact_as_act(&regular.cyclic_subact(e)))
        .collect()
}

/// Coproducts of two or three cyclic retracts, repetition allowed.
fn retract_coproducts(monoid: &Arc<Monoid>) -> Vec<Act> {
    let cyclic = cyclic_retracts(monoid);
    let mut family = Vec::new();
    for k in 2..=3usize {
        for combo in (0..cyclic.len()).combinations_with_replacement(k) {
            let parts: Vec<&Act> = combo.iter().map(|&i| &cyclic[i]).collect();
            family.push(Act::coproduct(&parts).unwrap().0);
        }
    }
    family
}

fn check_faithful_cogeneration(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    let regular = Act::regular(monoid.clone());
    let retracts = cyclic_retracts(monoid);
    for act in acts {
        let run = || -> Result<Option<&'static str>, String> {
            let faithful = classify::is_faithful(act).map_err(|e| e.to_string())?;
            let cogen_regular = hom::cogenerates(&[act], &regular)
                .map_err(|e| e.to_string())?
                .is_some();
            if cogen_regular != faithful {
                return Ok(Some("cogenerates the regular act iff faithful"));
            }
            let mut cogen_all = true;
            for p in &retracts {
                cogen_all &= hom::cogenerates(&[act], p)
                    .map_err(|e| e.to_string())?
                    .is_some();
            }
            if cogen_all != faithful {
                return Ok(Some("cogenerates all cyclic retracts iff faithful"));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg.to_string()),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn check_faithful_cogeneration_coproducts(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    let family = retract_coproducts(monoid);
    for act in acts {
        match classify::is_faithful(act) {
            Ok(true) => {}
            Ok(false) => {
                t.skip();
                continue;
            }
            Err(e) => {
                t.violate(monoid, Some(act), e.to_string());
                continue;
            }
        }
        let run = || -> Result<Option<String>, String> {
            for p in &family {
                let cg = hom::cogenerates(&[act], p)
                    .map_err(|e| e.to_string())?
                    .is_some();
                if !cg {
                    return Ok(Some(format!(
                        "faithful but does not cogenerate a {}-element retract coproduct",
                        p.size()
                    )));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

/// All one- and two-element classes drawn from the act list.
fn small_classes(acts: &[Act]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = (0..acts.len()).map(|i| vec![i]).collect();
    classes.extend((0..acts.len()).tuple_combinations().map(|(i, j)| vec![i, j]));
    classes
}

fn check_cotrace_minimality(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for class_idx in small_classes(acts) {
        let class: Vec<&Act> = class_idx.iter().map(|&i| &acts[i]).collect();
        for act in acts {
            let run = || -> Result<Option<String>, String> {
                let cot = hom::cotrace(act, &class).map_err(|e| e.to_string())?;
                let (cot_factor, _) =
                    congruence::factor_act(act, &cot).map_err(|e| e.to_string())?;
                if hom::cogenerates(&class, &cot_factor)
                    .map_err(|e| e.to_string())?
                    .is_none()
                {
                    return Ok(Some(format!(
                        "class {class_idx:?}: the cotrace factor is not cogenerated"
                    )));
                }
                for theta in congruence::all_congruences(act).map_err(|e| e.to_string())? {
                    let (factor, _) =
                        congruence::factor_act(act, &theta).map_err(|e| e.to_string())?;
                    let cg = hom::cogenerates(&class, &factor)
                        .map_err(|e| e.to_string())?
                        .is_some();
                    if cg && !cot.leq(&theta) {
                        return Ok(Some(format!(
                            "class {:?}: cogenerated factor congruence {:?} does not \
                             contain the cotrace",
                            class_idx,
                            theta.labels()
                        )));
                    }
                }
                Ok(None)
            };
            match run() {
                Ok(None) => t.confirm(),
                Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
                Err(e) => t.violate(monoid, Some(act), e),
            }
        }
    }
}

fn check_cotrace_monotonicity(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for class_idx in small_classes(acts) {
        let class: Vec<&Act> = class_idx.iter().map(|&i| &acts[i]).collect();
        let cogenerated: Vec<bool> = match acts
            .iter()
            .map(|d| hom::cogenerates(&class, d).map(|w| w.is_some()))
            .collect::<Result<_, _>>()
        {
            Ok(v) => v,
            Err(e) => {
                t.violate(monoid, None, e.to_string());
                continue;
            }
        };
        for act in acts {
            let run = || -> Result<Option<String>, String> {
                let cot_class = hom::cotrace(act, &class).map_err(|e| e.to_string())?;
                for (di, d) in acts.iter().enumerate() {
                    if !cogenerated[di] {
                        continue;
                    }
                    let cot_d = hom::cotrace(act, &[d]).map_err(|e| e.to_string())?;
                    if !cot_class.leq(&cot_d) {
                        return Ok(Some(format!(
                            "class {class_idx:?}: cotrace not below the cotrace of \
                             cogenerated act {di}"
                        )));
                    }
                }
                Ok(None)
            };
            match run() {
                Ok(None) => t.confirm(),
                Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
                Err(e) => t.violate(monoid, Some(act), e),
            }
        }
    }
}

/// Meet of the kernels of `maps` on an act of `size` elements.
fn kernel_meet(size: usize, maps: &[Vec<usize>]) -> Congruence {
    let mut acc = Congruence::full(size);
    for map in maps {
        acc = acc
            .meet(&Congruence::from_class_ids(map))
            .expect("same size");
    }
    acc
}

fn check_cog_closure(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for class_idx in small_classes(acts) {
        let class: Vec<&Act> = class_idx.iter().map(|&i| &acts[i]).collect();
        let witnesses: Vec<Option<CogenerationWitness>> = match acts
            .iter()
            .map(|a| hom::cogenerates(&class, a))
            .collect::<Result<_, _>>()
        {
            Ok(ws) => ws,
            Err(e) => {
                t.violate(monoid, None, e.to_string());
                continue;
            }
        };
        // subact closure: restrict the witness family to each subact and
        // re-verify that the kernels still meet to the diagonal
        for (act, witness) in acts.iter().zip(&witnesses) {
            let Some(witness) = witness else { continue };
            for sub in act.subacts() {
                let restricted: Vec<Vec<usize>> = witness
                    .family
                    .iter()
                    .map(|(_, h)| hom::restrict(h, &sub).map)
                    .collect();
                let ok = sub.len() <= 1 || kernel_meet(sub.len(), &restricted).is_diagonal();
                t.outcome(ok, monoid, Some(act), || {
                    format!(
                        "class {:?}: restricted witness family fails on subact {:?}",
                        class_idx,
                        sub.elements()
                    )
                });
            }
        }
        // product closure: compose each factor's witness family with the
        // projection and verify the composites are homs whose kernels meet
        // to the diagonal
        for (i, j) in (0..acts.len()).tuple_combinations() {
            let (Some(wi), Some(wj)) = (&witnesses[i], &witnesses[j]) else {
                continue;
            };
            let (product, projections) = match Act::product(&[&acts[i], &acts[j]]) {
                Ok(p) => p,
                Err(e) => {
                    t.violate(monoid, None, e.to_string());
                    continue;
                }
            };
            let mut composites: Vec<Vec<usize>> = Vec::new();
            let mut all_homs = true;
            for (w, proj) in [(wi, &projections[0]), (wj, &projections[1])] {
                for (ci, h) in &w.family {
                    let comp = proj.compose(h);
                    all_homs &= hom::is_hom(&product, class[*ci], &comp.map);
                    composites.push(comp.map);
                }
            }
            let ok = all_homs && kernel_meet(product.size(), &composites).is_diagonal();
            t.outcome(ok, monoid, None, || {
                format!(
                    "class {:?}: composed witness family fails on the product of acts {} \
                     and {}",
                    class_idx, i, j
                )
            });
        }
    }
}

fn check_cog_sandwich(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for class_idx in small_classes(acts) {
        let class: Vec<&Act> = class_idx.iter().map(|&i| &acts[i]).collect();
        let (product, _) = Act::product(&class).unwrap();
        let (coproduct, _) = Act::coproduct(&class).unwrap();
        for act in acts {
            let run = || -> Result<Option<String>, String> {
                let by_product = hom::cogenerates(&[&product], act)
                    .map_err(|e| e.to_string())?
                    .is_some();
                let by_class = hom::cogenerates(&class, act)
                    .map_err(|e| e.to_string())?
                    .is_some();
                let by_coproduct = hom::cogenerates(&[&coproduct], act)
                    .map_err(|e| e.to_string())?
                    .is_some();
                if by_product && !by_class {
                    return Ok(Some(format!(
                        "class {class_idx:?}: cogenerated by the product but not the class"
                    )));
                }
                if by_class && !by_coproduct {
                    return Ok(Some(format!(
                        "class {class_idx:?}: cogenerated by the class but not the coproduct"
                    )));
                }
                Ok(None)
            };
            match run() {
                Ok(None) => t.confirm(),
                Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
                Err(e) => t.violate(monoid, Some(act), e),
            }
        }
    }
}

fn check_si_consistency(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for act in acts {
        if act.size() < 2 {
            t.skip();
            continue;
        }
        let run = || -> Result<Option<String>, String> {
            let monolith = congruence::monolith(act).map_err(|e| e.to_string())?;
            let all = congruence::all_congruences(act).map_err(|e| e.to_string())?;
            let nondiag: Vec<&Congruence> = all.iter().filter(|c| !c.is_diagonal()).collect();
            let lattice_min = nondiag
                .iter()
                .find(|c| nondiag.iter().all(|d| c.leq(d)))
                .copied();
            if monolith.as_ref() != lattice_min {
                return Ok(Some("monolith disagrees with the lattice minimum".into()));
            }
            if monolith.is_some() {
                for sub in act.subacts() {
                    if sub.len() < 2 {
                        continue;
                    }
                    let sub_act = act.subact_as_act(&sub);
                    let si = classify::is_subdirectly_irreducible(&sub_act)
                        .map_err(|e| e.to_string())?;
                    if !si {
                        return Ok(Some(format!(
                            "subact {:?} of a subdirectly irreducible act is not \
                             subdirectly irreducible",
                            sub.elements()
                        )));
                    }
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn check_subdirect_decomposition(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for act in acts {
        if act.size() < 2 {
            t.skip();
            continue;
        }
        let run = || -> Result<Option<String>, String> {
            let decomposition = hom::subdirect_decomposition(act).map_err(|e| e.to_string())?;
            let meet = Congruence::meet_all(
                act.size(),
                decomposition.iter().map(|(theta, _)| theta),
            )
            .map_err(|e| e.to_string())?;
            if !meet.is_diagonal() {
                return Ok(Some("decomposition congruences do not meet to the diagonal".into()));
            }
            for (theta, factor) in &decomposition {
                let si =
                    classify::is_subdirectly_irreducible(factor).map_err(|e| e.to_string())?;
                if !si {
                    return Ok(Some(format!(
                        "factor by {:?} is not subdirectly irreducible",
                        theta.labels()
                    )));
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn check_radical_embedding(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for act in acts {
        let (rad, maximals) = structure::radical(act);
        let applicable = !maximals.is_empty() && rad.as_ref().is_some_and(|r| r.len() < act.size());
        let Some(rad) = rad.filter(|_| applicable) else {
            t.skip();
            continue;
        };
        let run = || -> Result<Option<String>, String> {
            let rho_rad = congruence::rees_congruence(act, &rad).map_err(|e| e.to_string())?;
            let (rad_factor, _) =
                congruence::factor_act(act, &rho_rad).map_err(|e| e.to_string())?;
            let mut factor_congruences = Vec::new();
            for m in &maximals {
                let rho = congruence::rees_congruence(act, m).map_err(|e| e.to_string())?;
                let (factor, pi) =
                    congruence::factor_act(act, &rho).map_err(|e| e.to_string())?;
                // the collapsed class is the factor's zero; the only other
                // proper subact a maximal subact permits is a split-off
                // complement, which must then be simple
                let zero = pi.apply(m.elements()[0]);
                for sub in factor.subacts() {
                    if sub.len() == factor.size() || sub.elements() == [zero] {
                        continue;
                    }
                    let is_complement = sub.len() == factor.size() - 1 && !sub.contains(zero);
                    let simple_complement =
                        is_complement && structure::is_simple(&factor.subact_as_act(&sub));
                    if !simple_complement {
                        return Ok(Some(format!(
                            "factor by maximal subact {:?} has unexpected proper subact {:?}",
                            m.elements(),
                            sub.elements()
                        )));
                    }
                }
                factor_congruences.push(rho);
            }
            // the induced map into the product of factors is injective iff
            // the maximal-subact congruences meet inside the radical one
            let meet = Congruence::meet_all(act.size(), factor_congruences.iter())
                .map_err(|e| e.to_string())?;
            if !meet.leq(&rho_rad) {
                return Ok(Some(format!(
                    "induced map from the {}-element radical factor is not injective",
                    rad_factor.size()
                )));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn check_factor_correspondence(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for act in acts {
        let run = || -> Result<Option<String>, String> {
            for theta in congruence::all_congruences(act).map_err(|e| e.to_string())? {
                let (factor, _) = congruence::factor_act(act, &theta).map_err(|e| e.to_string())?;
                let above = congruence::congruences_above(act, &theta).map_err(|e| e.to_string())?;
                let mut all_factor = congruence::all_congruences(&factor).map_err(|e| e.to_string())?;
                let mut sorted_images: Vec<Congruence> =
                    above.iter().map(|(_, img)| img.clone()).collect();
                sorted_images.sort_by(|a, b| a.labels().cmp(b.labels()));
                all_factor.sort_by(|a, b| a.labels().cmp(b.labels()));
                if sorted_images.iter().duplicates().next().is_some() {
                    return Ok(Some("correspondence is not injective".into()));
                }
                if sorted_images != all_factor {
                    return Ok(Some("correspondence is not onto the factor lattice".into()));
                }
                for (i, (a, ai)) in above.iter().enumerate() {
                    for (b, bi) in above.iter().skip(i) {
                        if a.leq(b) != ai.leq(bi) {
                            return Ok(Some("correspondence does not preserve order".into()));
                        }
                    }
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn check_minimal_congruence(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for act in acts {
        if act.size() < 2 {
            t.skip();
            continue;
        }
        match congruence::atoms(act) {
            Ok(atoms) => t.outcome(!atoms.is_empty(), monoid, Some(act), || {
                "no minimal congruence found".into()
            }),
            Err(e) => t.violate(monoid, Some(act), e.to_string()),
        }
    }
}

fn check_cofaithful_equivalence(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    let regular = Act::regular(monoid.clone());
    for act in acts {
        let run = || -> Result<Option<String>, String> {
            match classify::cofaithful_witness(act).map_err(|e| e.to_string())? {
                Some(witness) => {
                    let copies: Vec<&Act> = (0..witness.power).map(|_| act).collect();
                    let (power, _) = Act::product(&copies).map_err(|e| e.to_string())?;
                    if witness.embedding.len() != monoid.size() {
                        return Ok(Some("embedding has the wrong source size".into()));
                    }
                    if witness.embedding.iter().duplicates().next().is_some() {
                        return Ok(Some("embedding is not injective".into()));
                    }
                    if !hom::is_hom(&regular, &power, &witness.embedding) {
                        return Ok(Some("embedding is not a homomorphism".into()));
                    }
                }
                None => {
                    let full = classify::right_annihilator(act, None).map_err(|e| e.to_string())?;
                    if full.is_diagonal() {
                        return Ok(Some(
                            "no witness reported although the full element set works".into(),
                        ));
                    }
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn check_faithful_subact(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    let commutative = monoid.is_commutative();
    for act in acts {
        let run = || -> Result<Option<String>, String> {
            if let Some(witness) = classify::cofaithful_witness(act).map_err(|e| e.to_string())? {
                let mut elements = Vec::new();
                for &b in &witness.elements {
                    elements.extend(act.cyclic_subact(b).elements().iter().copied());
                }
                let generated = act.subact(elements).map_err(|e| e.to_string())?;
                let generated_act = act.subact_as_act(&generated);
                if !classify::is_faithful(&generated_act).map_err(|e| e.to_string())? {
                    return Ok(Some(
                        "subact generated by the cofaithful witness is not faithful".into(),
                    ));
                }
            }
            if commutative {
                for sub in act.subacts() {
                    let sub_act = act.subact_as_act(&sub);
                    if classify::is_faithful(&sub_act).map_err(|e| e.to_string())?
                        && classify::cofaithful_witness(act)
                            .map_err(|e| e.to_string())?
                            .is_none()
                    {
                        return Ok(Some(format!(
                            "faithful subact {:?} but the act is not cofaithful",
                            sub.elements()
                        )));
                    }
                }
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn regular_irreducible(monoid: &Arc<Monoid>) -> Result<bool, String> {
    let regular = Act::regular(monoid.clone());
    classify::is_irreducible(&regular).map_err(|e| e.to_string())
}

fn check_irreducible_regular(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    let irreducible = match regular_irreducible(monoid) {
        Ok(v) => v,
        Err(e) => {
            t.violate(monoid, None, e);
            return;
        }
    };
    for act in acts {
        if !irreducible {
            t.skip();
            continue;
        }
        let run = || -> Result<Option<String>, String> {
            let cofaithful = classify::cofaithful_witness(act)
                .map_err(|e| e.to_string())?
                .is_some();
            if cofaithful && classify::subgenerator_witness(act).is_none() {
                return Ok(Some(
                    "cofaithful act over an irreducible regular act is not a subgenerator"
                        .into(),
                ));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn check_irreducible_regular_converse(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    if !monoid.is_commutative() {
        t.skip();
        return;
    }
    let run = || -> Result<Option<String>, String> {
        for act in acts {
            let cofaithful = classify::cofaithful_witness(act)
                .map_err(|e| e.to_string())?
                .is_some();
            if cofaithful && classify::subgenerator_witness(act).is_none() {
                // hypothesis fails within the universe
                return Ok(None);
            }
        }
        if !regular_irreducible(monoid)? {
            return Ok(Some(
                "all cofaithful universe acts are subgenerators but the regular act is \
                 reducible"
                    .into(),
            ));
        }
        Ok(None)
    };
    match run() {
        Ok(None) => t.confirm(),
        Ok(Some(msg)) => t.violate(monoid, None, msg),
        Err(e) => t.violate(monoid, None, e),
    }
}

fn check_faithful_implies_cofaithful(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for act in acts {
        let run = || -> Result<Option<String>, String> {
            let faithful = classify::is_faithful(act).map_err(|e| e.to_string())?;
            if !faithful {
                return Ok(None);
            }
            if classify::cofaithful_witness(act)
                .map_err(|e| e.to_string())?
                .is_none()
            {
                return Ok(Some("faithful act without a cofaithful witness".into()));
            }
            Ok(None)
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

fn check_socle_report(monoid: &Arc<Monoid>, acts: &[Act], t: &mut Tally) {
    for act in acts {
        let run = || -> Result<Option<String>, String> {
            match structure::socle(act).map_err(|e| e.to_string())? {
                None => Ok(Some("socle is empty".into())),
                Some(soc) => {
                    if structure::is_large(act, &soc).map_err(|e| e.to_string())? {
                        Ok(None)
                    } else {
                        Ok(Some(format!("socle {:?} is not large", soc.elements())))
                    }
                }
            }
        };
        match run() {
            Ok(None) => t.confirm(),
            Ok(Some(msg)) => t.violate(monoid, Some(act), msg),
            Err(e) => t.violate(monoid, Some(act), e),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub monoid: Vec<Vec<usize>>,
    pub act: Vec<Vec<usize>>,
    pub details: String,
}

pub const COUNTEREXAMPLE_PREDICATES: &[&str] = &[
    "cofaithful-not-subgenerator",
    "faithful-not-cofaithful",
    "subgenerator-not-generator",
];

/// Searches the universe in order (monoid order, then act size, then table
/// order) for the smallest act separating two adjacent chain properties.
/// Returns the first hit, or absence; absence is itself informative for
/// separations that cannot occur on finite acts.
pub fn find_counterexample(
    predicate: &str,
    universe: &Universe,
) -> Result<Option<Counterexample>, String> {
    if !COUNTEREXAMPLE_PREDICATES.contains(&predicate) {
        return Err(format!(
            "unknown predicate {predicate:?}; expected one of {COUNTEREXAMPLE_PREDICATES:?}"
        ));
    }
    for (monoid, acts) in universe.monoids.iter().zip(&universe.acts) {
        for act in acts {
            let hit = match predicate {
                "cofaithful-not-subgenerator" => {
                    classify::cofaithful_witness(act)
                        .map_err(|e| e.to_string())?
                        .is_some()
                        && classify::subgenerator_witness(act).is_none()
                }
                "faithful-not-cofaithful" => {
                    classify::is_faithful(act).map_err(|e| e.to_string())?
                        && classify::cofaithful_witness(act)
                            .map_err(|e| e.to_string())?
                            .is_none()
                }
                "subgenerator-not-generator" => {
                    classify::subgenerator_witness(act).is_some()
                        && hom::is_generator(act).map_err(|e| e.to_string())?.is_none()
                }
                _ => unreachable!(),
            };
            if hit {
                return Ok(Some(Counterexample {
                    monoid: monoid.table().clone(),
                    act: act.action().clone(),
                    details: predicate.to_string(),
                }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universe::Universe;

    fn small_universe() -> Universe {
        Universe::bounded(2, 3).unwrap()
    }

    fn diamond_universe() -> Universe {
        Universe::from_monoids(vec![Monoid::diamond_semilattice()], 3).unwrap()
    }

    #[test]
    fn all_claims_clean_on_small_universe() {
        let u = small_universe();
        for result in run_claims(&u, None) {
            assert!(result.is_consistent(), "{:?}", result.claim);
            assert!(
                result.report_only || result.violations.is_empty(),
                "claim {} violated: {:?}",
                result.claim,
                result.violations.first()
            );
            assert!(result.checked > 0, "claim {} checked nothing", result.claim);
        }
    }

    #[test]
    fn selection_restricts_the_run() {
        let u = small_universe();
        let only = run_claims(&u, Some(&["chain".to_string()]));
        assert_eq!(only.len(), 1);
        assert_eq!(only[0].claim, "chain");
        assert!(only[0].violations.is_empty());
    }

    #[test]
    fn parallel_and_sequential_runs_agree() {
        let u = small_universe();
        let a = run_claims(&u, None);
        let b = run_claims_seq(&u, None);
        assert_eq!(a, b);
        let json_a = serde_json::to_string(&a).unwrap();
        let json_b = serde_json::to_string(&run_claims(&u, None)).unwrap();
        assert_eq!(json_a, json_b);
    }

    #[test]
    fn diamond_universe_confirms_hard_claims() {
        let u = diamond_universe();
        for result in run_claims(&u, None) {
            assert!(result.is_consistent());
            assert!(
                result.report_only || result.violations.is_empty(),
                "claim {} violated: {:?}",
                result.claim,
                result.violations.first()
            );
        }
    }

    #[test]
    fn counterexample_cofaithful_not_subgenerator_found_at_diamond() {
        let u = diamond_universe();
        let hit = find_counterexample("cofaithful-not-subgenerator", &u)
            .unwrap()
            .expect("the three-element subact of the diamond separates these");
        assert_eq!(hit.monoid.len(), 4);
        assert!(hit.act.len() <= 3);
    }

    #[test]
    fn counterexample_faithful_not_cofaithful_absent() {
        for u in [small_universe(), diamond_universe()] {
            assert!(find_counterexample("faithful-not-cofaithful", &u)
                .unwrap()
                .is_none());
        }
    }

    #[test]
    fn unknown_predicate_rejected() {
        assert!(find_counterexample("nonsense", &small_universe()).is_err());
    }
}
