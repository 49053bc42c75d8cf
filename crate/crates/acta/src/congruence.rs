//! Congruences as canonical action-compatible partitions.
//!
//! A congruence is stored as a label vector where `labels[a]` is the least
//! element of `a`'s class. Two congruences are equal iff their label vectors
//! are equal, which gives O(m) equality and hashability.

use crate::act::{Act, ActError, Subact};
use crate::hom::Hom;
use thiserror::Error;

/// Default bound on act size for full lattice enumeration; override with the
/// `ACTA_MAX_LATTICE` environment variable.
pub const DEFAULT_LATTICE_LIMIT: usize = 10;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("act size {size} exceeds the congruence lattice guard ({limit}); set ACTA_MAX_LATTICE to raise it")]
    SizeLimitExceeded { size: usize, limit: usize },
    #[error("partition is not action-compatible")]
    NotACongruence,
    #[error("congruences live on acts of different sizes")]
    MixedActs,
    #[error(transparent)]
    Act(#[from] ActError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    labels: Vec<usize>,
}

impl Congruence {
    /// Canonicalizes an arbitrary class-id vector: each element is relabeled
    /// by the least index of its class.
    pub fn from_class_ids(ids: &[usize]) -> Congruence {
        let mut first: std::collections::HashMap<usize, usize> = std::collections::HashMap::new();
        let mut labels = vec![0; ids.len()];
        for (a, &id) in ids.iter().enumerate() {
            let rep = *first.entry(id).or_insert(a);
            labels[a] = rep;
        }
        Congruence { labels }
    }

    pub fn diagonal(m: usize) -> Congruence {
        Congruence {
            labels: (0..m).collect(),
        }
    }

    pub fn full(m: usize) -> Congruence {
        Congruence {
            labels: vec![0; m],
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn relates(&self, a: usize, b: usize) -> bool {
        self.labels[a] == self.labels[b]
    }

    pub fn is_diagonal(&self) -> bool {
        self.labels.iter().enumerate().all(|(a, &l)| l == a)
    }

    pub fn num_classes(&self) -> usize {
        self.labels
            .iter()
            .enumerate()
            .filter(|&(a, &l)| l == a)
            .count()
    }

    /// Classes ordered by their least representative.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut reps: Vec<usize> = self
            .labels
            .iter()
            .enumerate()
            .filter(|&(a, &l)| l == a)
            .map(|(a, _)| a)
            .collect();
        reps.sort_unstable();
        reps.iter()
            .map(|&r| {
                (0..self.labels.len())
                    .filter(|&a| self.labels[a] == r)
                    .collect()
            })
            .collect()
    }

    /// `self ⊆ other` as relations.
    pub fn leq(&self, other: &Congruence) -> bool {
        assert_eq!(self.labels.len(), other.labels.len());
        (0..self.labels.len()).all(|a| other.labels[a] == other.labels[self.labels[a]])
    }

    /// Intersection of the two relations. Always a congruence when both are.
    pub fn meet(&self, other: &Congruence) -> Result<Congruence, CongruenceError> {
        if self.labels.len() != other.labels.len() {
            return Err(CongruenceError::MixedActs);
        }
        let m = self.labels.len();
        let mut key_to_id = std::collections::HashMap::new();
        let mut ids = vec![0; m];
        for a in 0..m {
            let key = (self.labels[a], other.labels[a]);
            let next = key_to_id.len();
            ids[a] = *key_to_id.entry(key).or_insert(next);
        }
        Ok(Congruence::from_class_ids(&ids))
    }

    pub fn meet_all<'a, I: IntoIterator<Item = &'a Congruence>>(
        m: usize,
        items: I,
    ) -> Result<Congruence, CongruenceError> {
        let mut acc = Congruence::full(m);
        for c in items {
            acc = acc.meet(c)?;
        }
        Ok(acc)
    }

    pub fn is_congruence_on(&self, act: &Act) -> bool {
        if self.labels.len() != act.size() {
            return false;
        }
        let n = act.monoid().size();
        (0..act.size()).all(|a| {
            let r = self.labels[a];
            (0..n).all(|s| self.labels[act.act(a, s)] == self.labels[act.act(r, s)])
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(m: usize) -> Self {
        UnionFind {
            parent: (0..m).collect(),
        }
    }

    fn root(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.root(a), self.root(b));
        if ra == rb {
            return false;
        }
        // keep the smaller index as root so labels come out canonical
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|x| self.root(x)).collect()
    }
}

/// Smallest congruence containing the seed pairs: union-find merging with
/// compatibility closure (merged (x, y) forces merged (xs, ys)).
fn generated_congruence(act: &Act, seeds: &[(usize, usize)]) -> Congruence {
    let n = act.monoid().size();
    let mut uf = UnionFind::new(act.size());
    let mut worklist: Vec<(usize, usize)> = seeds.to_vec();
    while let Some((x, y)) = worklist.pop() {
        if uf.union(x, y) {
            for s in 0..n {
                worklist.push((act.act(x, s), act.act(y, s)));
            }
        }
    }
    Congruence { labels: uf.labels() }
}

/// The smallest congruence identifying `a` and `b`.
pub fn principal_congruence(act: &Act, a: usize, b: usize) -> Congruence {
    generated_congruence(act, &[(a, b)])
}

/// `B × B ∪ Δ` for a subact `B`.
pub fn rees_congruence(act: &Act, sub: &Subact) -> Result<Congruence, CongruenceError> {
    if !act.is_subact(sub.elements()) {
        return Err(CongruenceError::Act(ActError::NotASubact));
    }
    let rep = sub.elements()[0];
    let labels = (0..act.size())
        .map(|a| if sub.contains(a) { rep } else { a })
        .collect();
    Ok(Congruence { labels })
}

/// Transitive closure of the union, followed by compatibility closure.
pub fn join(act: &Act, c1: &Congruence, c2: &Congruence) -> Result<Congruence, CongruenceError> {
    if c1.size() != act.size() || c2.size() != act.size() {
        return Err(CongruenceError::MixedActs);
    }
    let seeds: Vec<(usize, usize)> = (0..act.size())
        .flat_map(|a| [(a, c1.labels[a]), (a, c2.labels[a])])
        .collect();
    Ok(generated_congruence(act, &seeds))
}

fn lattice_limit() -> usize {
    std::env::var("ACTA_MAX_LATTICE")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_LATTICE_LIMIT)
}

/// The full congruence lattice `Con(A)`: the join-closure of all principal
/// congruences together with the diagonal. Sorted by (number of classes
/// descending, labels), so the diagonal comes first.
pub fn all_congruences(act: &Act) -> Result<Vec<Congruence>, CongruenceError> {
    let limit = lattice_limit();
    if act.size() > limit {
        return Err(CongruenceError::SizeLimitExceeded {
            size: act.size(),
            limit,
        });
    }
    let m = act.size();
    let mut known: std::collections::HashSet<Congruence> = std::collections::HashSet::new();
    let mut list: Vec<Congruence> = Vec::new();
    let mut push = |c: Congruence, list: &mut Vec<Congruence>| {
        if known.insert(c.clone()) {
            list.push(c);
        }
    };
    push(Congruence::diagonal(m), &mut list);
    for a in 0..m {
        for b in a + 1..m {
            push(principal_congruence(act, a, b), &mut list);
        }
    }
    let mut i = 0;
    while i < list.len() {
        for j in 0..i {
            let joined = join(act, &list[i], &list[j])?;
            push(joined, &mut list);
        }
        i += 1;
    }
    list.sort_unstable_by_key(|c| (std::cmp::Reverse(c.num_classes()), c.labels.clone()));
    Ok(list)
}

/// Minimal non-diagonal congruences (the atoms of the lattice).
pub fn atoms(act: &Act) -> Result<Vec<Congruence>, CongruenceError> {
    let all = all_congruences(act)?;
    let nondiag: Vec<&Congruence> = all.iter().filter(|c| !c.is_diagonal()).collect();
    Ok(nondiag
        .iter()
        .filter(|c| {
            nondiag
                .iter()
                .all(|d| !(d.leq(c) && *d != **c))
        })
        .map(|c| (*c).clone())
        .collect())
}

/// The minimum non-diagonal congruence, when the meet of all non-diagonal
/// congruences is itself non-diagonal. Present iff the act is subdirectly
/// irreducible. Absent for one-element acts, which have no proper congruence.
pub fn monolith(act: &Act) -> Result<Option<Congruence>, CongruenceError> {
    let all = all_congruences(act)?;
    let nondiag: Vec<&Congruence> = all.iter().filter(|c| !c.is_diagonal()).collect();
    if nondiag.is_empty() {
        return Ok(None);
    }
    let meet = Congruence::meet_all(act.size(), nondiag.into_iter())?;
    Ok(if meet.is_diagonal() { None } else { Some(meet) })
}

/// Classes of `theta` with the induced action, plus the canonical surjection.
/// Factor element `i` is the `i`-th class ordered by least representative.
pub fn factor_act(act: &Act, theta: &Congruence) -> Result<(Act, Hom), CongruenceError> {
    if !theta.is_congruence_on(act) {
        return Err(CongruenceError::NotACongruence);
    }
    let classes = theta.classes();
    let mut class_of = vec![0; act.size()];
    for (i, class) in classes.iter().enumerate() {
        for &a in class {
            class_of[a] = i;
        }
    }
    let n = act.monoid().size();
    let action = classes
        .iter()
        .map(|class| (0..n).map(|s| class_of[act.act(class[0], s)]).collect())
        .collect();
    let factor = Act::from_action(act.monoid().clone(), action)?;
    let names = classes
        .iter()
        .map(|class| {
            let inner: Vec<String> = class.iter().map(|&a| act.name(a)).collect();
            format!("[{}]", inner.join(" "))
        })
        .collect();
    Ok((factor.with_names(names), Hom { map: class_of }))
}

/// All congruences containing `theta`, each paired with its image in
/// `Con(A/theta)` under the canonical order-isomorphism.
pub fn congruences_above(
    act: &Act,
    theta: &Congruence,
) -> Result<Vec<(Congruence, Congruence)>, CongruenceError> {
    if !theta.is_congruence_on(act) {
        return Err(CongruenceError::NotACongruence);
    }
    let (_, pi) = factor_act(act, theta)?;
    let all = all_congruences(act)?;
    Ok(all
        .into_iter()
        .filter(|sigma| theta.leq(sigma))
        .map(|sigma| {
            let k = pi.map.iter().max().unwrap() + 1;
            let mut ids = vec![usize::MAX; k];
            for a in 0..act.size() {
                ids[pi.map[a]] = sigma.labels[a];
            }
            let image = Congruence::from_class_ids(&ids);
            (sigma, image)
        })
        .collect())
}
