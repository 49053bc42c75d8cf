//! Homomorphism enumeration, cotrace, and cogeneration.
//!
//! Homs are enumerated by backtracking: images are chosen for one generator
//! per cyclic generator class and propagated along the action, rejecting on
//! conflict. Cotrace meets kernels with an early exit once the diagonal is
//! reached, since a meet can only shrink.

use crate::act::{Act, ActError, Subact};
use crate::congruence::{self, Congruence, CongruenceError};
use itertools::Itertools;
use std::ops::ControlFlow;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomError {
    #[error(transparent)]
    Act(#[from] ActError),
    #[error(transparent)]
    Congruence(#[from] CongruenceError),
    #[error("act must have at least two elements")]
    TooSmall,
    #[error("hom is not injective")]
    NotInjective,
}

/// A total map between two acts commuting with every monoid element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Hom {
    pub map: Vec<usize>,
}

impl Hom {
    pub fn identity(m: usize) -> Hom {
        Hom {
            map: (0..m).collect(),
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// The congruence identifying elements with equal images.
    pub fn kernel(&self) -> Congruence {
        Congruence::from_class_ids(&self.map)
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.map.iter().all(|&v| seen.insert(v))
    }

    pub fn is_surjective(&self, target_size: usize) -> bool {
        let mut hit = vec![false; target_size];
        for &v in &self.map {
            hit[v] = true;
        }
        hit.iter().all(|&b| b)
    }

    /// `self` followed by `then`.
    pub fn compose(&self, then: &Hom) -> Hom {
        Hom {
            map: self.map.iter().map(|&v| then.map[v]).collect(),
        }
    }
}

pub fn is_hom(src: &Act, dst: &Act, map: &[usize]) -> bool {
    if map.len() != src.size() || map.iter().any(|&v| v >= dst.size()) {
        return false;
    }
    let n = src.monoid().size();
    (0..src.size()).all(|a| (0..n).all(|s| map[src.act(a, s)] == dst.act(map[a], s)))
}

/// A generating sequence: greedily picks the least element not yet in the
/// closure of the previous picks.
pub fn generators(act: &Act) -> Vec<usize> {
    let mut reached = vec![false; act.size()];
    let mut gens = Vec::new();
    for x in 0..act.size() {
        if !reached[x] {
            gens.push(x);
            for y in act.cyclic_subact(x).elements() {
                reached[*y] = true;
            }
        }
    }
    gens
}

struct HomSearch<'a> {
    src: &'a Act,
    dst: &'a Act,
    map: Vec<usize>,
    assigned: Vec<bool>,
}

impl HomSearch<'_> {
    fn propagate(&mut self, from: usize, trail: &mut Vec<usize>) -> bool {
        let n = self.src.monoid().size();
        let mut queue = vec![from];
        while let Some(x) = queue.pop() {
            for s in 0..n {
                let xs = self.src.act(x, s);
                let want = self.dst.act(self.map[x], s);
                if self.assigned[xs] {
                    if self.map[xs] != want {
                        return false;
                    }
                } else {
                    self.map[xs] = want;
                    self.assigned[xs] = true;
                    trail.push(xs);
                    queue.push(xs);
                }
            }
        }
        true
    }

    fn search<F>(
        &mut self,
        gens: &[usize],
        gi: usize,
        trail: &mut Vec<usize>,
        f: &mut F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if gi == gens.len() {
            return f(&self.map);
        }
        let g = gens[gi];
        for v in 0..self.dst.size() {
            let checkpoint = trail.len();
            self.map[g] = v;
            self.assigned[g] = true;
            trail.push(g);
            if self.propagate(g, trail) {
                let flow = self.search(gens, gi + 1, trail, f);
                if flow.is_break() {
                    return flow;
                }
            }
            for &x in &trail[checkpoint..] {
                self.assigned[x] = false;
            }
            trail.truncate(checkpoint);
        }
        ControlFlow::Continue(())
    }
}

/// Visits every hom `src -> dst` in a deterministic order; the visitor can
/// stop the enumeration early.
pub fn for_each_hom<F>(src: &Act, dst: &Act, mut f: F) -> Result<ControlFlow<()>, ActError>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if !src.same_monoid(dst) {
        return Err(ActError::MixedMonoids);
    }
    let gens = generators(src);
    let mut search = HomSearch {
        src,
        dst,
        map: vec![0; src.size()],
        assigned: vec![false; src.size()],
    };
    let mut trail = Vec::new();
    Ok(search.search(&gens, 0, &mut trail, &mut f))
}

pub fn enumerate_homs(src: &Act, dst: &Act) -> Result<Vec<Hom>, ActError> {
    let mut out = Vec::new();
    let _ = for_each_hom(src, dst, |map| {
        out.push(Hom { map: map.to_vec() });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

/// The first hom satisfying `pred`, if any.
pub fn find_hom<F>(src: &Act, dst: &Act, mut pred: F) -> Option<Vec<usize>>
where
    F: FnMut(&[usize]) -> bool,
{
    let mut found = None;
    let _ = for_each_hom(src, dst, |map| {
        if pred(map) {
            found = Some(map.to_vec());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })
    .ok()?;
    found
}

/// `λ_a : S_S -> A`, `s ↦ a·s`.
pub fn lambda(act: &Act, a: usize) -> Hom {
    Hom {
        map: (0..act.monoid().size()).map(|s| act.act(a, s)).collect(),
    }
}

/// Meet of the kernels of all homs from `act` into members of `class`.
/// The meet over an empty hom-set is the full relation.
pub fn cotrace(act: &Act, class: &[&Act]) -> Result<Congruence, HomError> {
    assert!(!class.is_empty(), "cotrace over an empty class");
    let mut current = Congruence::full(act.size());
    for target in class {
        if !act.same_monoid(target) {
            return Err(HomError::Act(ActError::MixedMonoids));
        }
        let mut error = None;
        let _ = for_each_hom(act, target, |map| {
            let kernel = Congruence::from_class_ids(map);
            match current.meet(&kernel) {
                Ok(next) => current = next,
                Err(e) => {
                    error = Some(e);
                    return ControlFlow::Break(());
                }
            }
            if current.is_diagonal() {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if let Some(e) = error {
            return Err(e.into());
        }
        if current.is_diagonal() {
            break;
        }
    }
    Ok(current)
}

/// A finite hom family with kernel meet equal to the diagonal, together with
/// the induced embedding into the product of the family's targets.
#[derive(Debug, Clone)]
pub struct CogenerationWitness {
    /// Pairs of (index into the cogenerating class, hom into that member).
    pub family: Vec<(usize, Hom)>,
    /// Product of the family's targets, in family order.
    pub product: Act,
    /// The induced injective hom into `product`.
    pub embedding: Hom,
}

/// Decides whether `class` cogenerates `act`, returning an explicit witness
/// on success. The family is built greedily: a hom is kept iff it strictly
/// shrinks the running kernel meet.
pub fn cogenerates(class: &[&Act], act: &Act) -> Result<Option<CogenerationWitness>, HomError> {
    assert!(!class.is_empty(), "empty cogenerating class");
    if act.size() == 1 {
        // a one-element act embeds into the empty product
        return Ok(Some(CogenerationWitness {
            family: Vec::new(),
            product: Act::singleton(act.monoid().clone()),
            embedding: Hom { map: vec![0] },
        }));
    }
    let mut current = Congruence::full(act.size());
    let mut family: Vec<(usize, Hom)> = Vec::new();
    for (ci, target) in class.iter().enumerate() {
        if !act.same_monoid(target) {
            return Err(HomError::Act(ActError::MixedMonoids));
        }
        let _ = for_each_hom(act, target, |map| {
            let kernel = Congruence::from_class_ids(map);
            let next = current.meet(&kernel).expect("same act");
            if next != current {
                current = next;
                family.push((ci, Hom { map: map.to_vec() }));
            }
            if current.is_diagonal() {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if current.is_diagonal() {
            break;
        }
    }
    if !current.is_diagonal() {
        return Ok(None);
    }
    let targets: Vec<&Act> = family.iter().map(|(ci, _)| class[*ci]).collect();
    let (product, _) = Act::product(&targets)?;
    let sizes: Vec<usize> = targets.iter().map(|t| t.size()).collect();
    let embedding = Hom {
        map: (0..act.size())
            .map(|a| {
                family
                    .iter()
                    .zip(&sizes)
                    .fold(0, |acc, ((_, h), &sz)| acc * sz + h.map[a])
            })
            .collect(),
    };
    debug_assert!(is_hom(act, &product, &embedding.map));
    debug_assert!(embedding.is_injective());
    Ok(Some(CogenerationWitness {
        family,
        product,
        embedding,
    }))
}

#[derive(Debug, Clone)]
pub struct WitnessFamily {
    pub homs: Vec<Hom>,
    /// False when the exact subset sweep exceeded its budget and a greedy
    /// cover was returned instead.
    pub proven_minimal: bool,
}

/// Exact subset-enumeration budget for [`minimal_witness`].
const MINIMAL_WITNESS_BUDGET: usize = 2_000_000;

/// A minimum-cardinality family of homs `act -> target` whose kernels meet
/// to the diagonal, or `None` when no family at all works.
pub fn minimal_witness(target: &Act, act: &Act) -> Result<Option<WitnessFamily>, HomError> {
    let homs = enumerate_homs(act, target)?;
    let kernels: Vec<Congruence> = homs.iter().map(|h| h.kernel()).collect();
    let total = Congruence::meet_all(act.size(), kernels.iter())?;
    if !total.is_diagonal() {
        return Ok(None);
    }
    let mut spent = 0usize;
    // size 0 succeeds exactly for one-element acts
    for k in 0..=homs.len() {
        for combo in (0..homs.len()).combinations(k) {
            spent += 1;
            if spent > MINIMAL_WITNESS_BUDGET {
                // greedy set-cover fallback
                let mut current = Congruence::full(act.size());
                let mut picked = Vec::new();
                for (h, ker) in homs.iter().zip(&kernels) {
                    let next = current.meet(ker)?;
                    if next != current {
                        current = next;
                        picked.push(h.clone());
                    }
                    if current.is_diagonal() {
                        break;
                    }
                }
                return Ok(Some(WitnessFamily {
                    homs: picked,
                    proven_minimal: false,
                }));
            }
            let meet =
                Congruence::meet_all(act.size(), combo.iter().map(|&i| &kernels[i]))?;
            if meet.is_diagonal() {
                return Ok(Some(WitnessFamily {
                    homs: combo.into_iter().map(|i| homs[i].clone()).collect(),
                    proven_minimal: true,
                }));
            }
        }
    }
    unreachable!("full family meets to the diagonal");
}

/// For each pair of distinct elements, a congruence maximal among those not
/// relating the pair; the returned congruences meet to the diagonal and every
/// factor is subdirectly irreducible. Redundant factors are pruned greedily
/// by descending factor size.
pub fn subdirect_decomposition(act: &Act) -> Result<Vec<(Congruence, Act)>, HomError> {
    if act.size() < 2 {
        return Err(HomError::TooSmall);
    }
    let all = congruence::all_congruences(act)?;
    let mut chosen: Vec<Congruence> = Vec::new();
    for a in 0..act.size() {
        for b in a + 1..act.size() {
            let candidates: Vec<&Congruence> =
                all.iter().filter(|c| !c.relates(a, b)).collect();
            // maximal elements among congruences separating (a, b)
            let maximal = candidates
                .iter()
                .copied()
                .filter(|&c| candidates.iter().all(|&d| !c.leq(d) || c == d))
                .min_by_key(|c| (c.num_classes(), c.labels().to_vec()))
                .expect("the diagonal separates every distinct pair");
            if !chosen.contains(maximal) {
                chosen.push(maximal.clone());
            }
        }
    }
    // prune: drop a factor when the rest still meet to the diagonal,
    // trying small factors (many classes) last
    chosen.sort_by_key(|c| (std::cmp::Reverse(c.num_classes()), c.labels().to_vec()));
    let mut keep: Vec<Congruence> = chosen.clone();
    let mut i = 0;
    while i < keep.len() {
        let rest = Congruence::meet_all(
            act.size(),
            keep.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| c),
        )?;
        if rest.is_diagonal() && keep.len() > 1 {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    keep.into_iter()
        .map(|theta| {
            let (factor, _) = congruence::factor_act(act, &theta)?;
            Ok((theta, factor))
        })
        .collect()
}

/// A surjective hom onto the regular act, when one exists.
pub fn is_generator(act: &Act) -> Result<Option<Hom>, HomError> {
    let regular = Act::regular(act.monoid().clone());
    let n = regular.size();
    Ok(find_hom(act, &regular, |map| {
        let mut hit = vec![false; n];
        for &v in map {
            hit[v] = true;
        }
        hit.iter().all(|&b| b)
    })
    .map(|map| Hom { map }))
}

/// Restriction of a hom on `act` to a subact, as a hom from the reindexed
/// subact.
pub fn restrict(hom: &Hom, sub: &Subact) -> Hom {
    Hom {
        map: sub.elements().iter().map(|&a| hom.map[a]).collect(),
    }
}
