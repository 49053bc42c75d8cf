//! Finite right acts over a monoid, given as explicit action tables.
//!
//! Acts are nonempty and immutable after validation. Subacts are sorted index
//! sets closed under the action. Products encode elements as mixed-radix
//! integers with the first factor most significant, so product tables are
//! reproducible bit for bit.

use crate::hom::Hom;
use crate::monoid::Monoid;
use itertools::Itertools;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ActError {
    #[error("action entry out of range: action[{row}][{col}] = {value}, expected < {m}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        m: usize,
    },
    #[error("action table row {row} has length {len}, expected {n}")]
    BadRowLength { row: usize, len: usize, n: usize },
    #[error("empty act: acts are nonempty")]
    Empty,
    #[error("not unital: a*1 != a for a = {0}")]
    NotUnital(usize),
    #[error("not compatible: (a*s)*t != a*(st) for (a,s,t) = ({0}, {1}, {2})")]
    NotCompatible(usize, usize, usize),
    #[error("acts are over different monoids")]
    MixedMonoids,
    #[error("element set is not a subact")]
    NotASubact,
}

/// An action-closed, nonempty, sorted set of elements of an act.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(transparent)]
pub struct Subact {
    elements: Vec<usize>,
}

impl Subact {
    /// Wraps an element set without checking closure. Callers that need the
    /// subact invariant should go through [`Act::subact`].
    pub fn unchecked(mut elements: Vec<usize>) -> Subact {
        elements.sort_unstable();
        elements.dedup();
        Subact { elements }
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.elements.binary_search(&a).is_ok()
    }

    pub fn intersect(&self, other: &Subact) -> Vec<usize> {
        self.elements
            .iter()
            .copied()
            .filter(|&x| other.contains(x))
            .collect()
    }

    fn from_mask(mask: u64) -> Subact {
        Subact {
            elements: (0..64).filter(|&i| mask >> i & 1 == 1).collect(),
        }
    }

    fn mask(&self) -> u64 {
        self.elements.iter().fold(0u64, |m, &e| m | 1 << e)
    }
}

#[derive(Debug, Clone)]
pub struct Act {
    monoid: Arc<Monoid>,
    action: Vec<Vec<usize>>,
    names: Option<Vec<String>>,
}

impl PartialEq for Act {
    fn eq(&self, other: &Self) -> bool {
        *self.monoid == *other.monoid && self.action == other.action
    }
}

impl Eq for Act {}

impl std::hash::Hash for Act {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.monoid.hash(state);
        self.action.hash(state);
    }
}

impl Act {
    /// Validates an `m x n` action table over `monoid`.
    pub fn from_action(monoid: Arc<Monoid>, action: Vec<Vec<usize>>) -> Result<Self, ActError> {
        let m = action.len();
        let n = monoid.size();
        if m == 0 {
            return Err(ActError::Empty);
        }
        for (row, r) in action.iter().enumerate() {
            if r.len() != n {
                return Err(ActError::BadRowLength {
                    row,
                    len: r.len(),
                    n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= m {
                    return Err(ActError::EntryOutOfRange { row, col, value, m });
                }
            }
        }
        let e = monoid.identity();
        for a in 0..m {
            if action[a][e] != a {
                return Err(ActError::NotUnital(a));
            }
        }
        for a in 0..m {
            for s in 0..n {
                for t in 0..n {
                    if action[action[a][s]][t] != action[a][monoid.mul(s, t)] {
                        return Err(ActError::NotCompatible(a, s, t));
                    }
                }
            }
        }
        Ok(Act {
            monoid,
            action,
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.size());
        self.names = Some(names);
        self
    }

    /// The monoid acting on itself by right multiplication.
    pub fn regular(monoid: Arc<Monoid>) -> Act {
        let action = monoid.table().clone();
        let names = monoid.names().map(|ns| ns.to_vec());
        let mut act = Act::from_action(monoid, action).expect("monoid axioms imply act axioms");
        if let Some(names) = names {
            act = act.with_names(names);
        }
        act
    }

    /// The one-element act.
    pub fn singleton(monoid: Arc<Monoid>) -> Act {
        let n = monoid.size();
        Act::from_action(monoid, vec![vec![0; n]]).unwrap()
    }

    pub fn monoid(&self) -> &Arc<Monoid> {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.action.len()
    }

    pub fn act(&self, a: usize, s: usize) -> usize {
        self.action[a][s]
    }

    pub fn action(&self) -> &Vec<Vec<usize>> {
        &self.action
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn same_monoid(&self, other: &Act) -> bool {
        Arc::ptr_eq(&self.monoid, &other.monoid) || *self.monoid == *other.monoid
    }

    /// Elements fixed by every monoid element.
    pub fn fixed_points(&self) -> Vec<usize> {
        (0..self.size())
            .filter(|&a| (0..self.monoid.size()).all(|s| self.act(a, s) == a))
            .collect()
    }

    /// The unique fixed point, when there is exactly one.
    pub fn theta(&self) -> Option<usize> {
        let fps = self.fixed_points();
        match fps.as_slice() {
            [t] => Some(*t),
            _ => None,
        }
    }

    /// The smallest subact containing `a`, i.e. `aS`.
    pub fn cyclic_subact(&self, a: usize) -> Subact {
        let mut elements: Vec<usize> = (0..self.monoid.size()).map(|s| self.act(a, s)).collect();
        elements.sort_unstable();
        elements.dedup();
        Subact { elements }
    }

    /// Every nonempty action-closed subset, i.e. every union of cyclic
    /// subacts. Includes the act itself.
    pub fn subacts(&self) -> Vec<Subact> {
        assert!(self.size() <= 64, "subact enumeration uses 64-bit masks");
        let cyclic: Vec<u64> = (0..self.size())
            .map(|a| self.cyclic_subact(a).mask())
            .unique()
            .collect();
        let mut masks: Vec<u64> = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for bits in 1u64..(1 << cyclic.len()) {
            let mut m = 0u64;
            for (i, &c) in cyclic.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    m |= c;
                }
            }
            if seen.insert(m) {
                masks.push(m);
            }
        }
        masks.sort_unstable_by_key(|&m| (m.count_ones(), m));
        masks.into_iter().map(Subact::from_mask).collect()
    }

    pub fn is_subact(&self, elements: &[usize]) -> bool {
        if elements.is_empty() || elements.iter().any(|&a| a >= self.size()) {
            return false;
        }
        let sub = Subact {
            elements: elements.iter().copied().sorted().dedup().collect(),
        };
        sub.elements
            .iter()
            .all(|&a| (0..self.monoid.size()).all(|s| sub.contains(self.act(a, s))))
    }

    pub fn subact(&self, elements: Vec<usize>) -> Result<Subact, ActError> {
        if !self.is_subact(&elements) {
            return Err(ActError::NotASubact);
        }
        Ok(Subact {
            elements: elements.into_iter().sorted().dedup().collect(),
        })
    }

    /// A subact reindexed as an act in its own right. Element `i` of the
    /// result is `sub.elements()[i]`.
    pub fn subact_as_act(&self, sub: &Subact) -> Act {
        let n = self.monoid.size();
        let pos = |x: usize| sub.elements.binary_search(&x).unwrap();
        let action = sub
            .elements
            .iter()
            .map(|&a| (0..n).map(|s| pos(self.act(a, s))).collect())
            .collect();
        let act = Act::from_action(self.monoid.clone(), action).unwrap();
        let names = sub.elements.iter().map(|&a| self.name(a)).collect();
        act.with_names(names)
    }

    /// Componentwise product. Element indices are mixed-radix encodings of
    /// coordinate tuples, first factor most significant. Also returns the
    /// projection homs.
    pub fn product(acts: &[&Act]) -> Result<(Act, Vec<Hom>), ActError> {
        assert!(!acts.is_empty(), "product of an empty family");
        let monoid = acts[0].monoid.clone();
        if acts.iter().any(|a| !acts[0].same_monoid(a)) {
            return Err(ActError::MixedMonoids);
        }
        let sizes: Vec<usize> = acts.iter().map(|a| a.size()).collect();
        let total: usize = sizes.iter().product();
        let n = monoid.size();
        let decode = |mut idx: usize| -> Vec<usize> {
            let mut coords = vec![0; sizes.len()];
            for k in (0..sizes.len()).rev() {
                coords[k] = idx % sizes[k];
                idx /= sizes[k];
            }
            coords
        };
        let encode = |coords: &[usize]| -> usize {
            coords
                .iter()
                .zip(&sizes)
                .fold(0, |acc, (&c, &sz)| acc * sz + c)
        };
        let mut action = Vec::with_capacity(total);
        for idx in 0..total {
            let coords = decode(idx);
            action.push(
                (0..n)
                    .map(|s| {
                        let moved: Vec<usize> = coords
                            .iter()
                            .zip(acts.iter())
                            .map(|(&c, a)| a.act(c, s))
                            .collect();
                        encode(&moved)
                    })
                    .collect(),
            );
        }
        let product = Act::from_action(monoid, action)?;
        let projections = (0..acts.len())
            .map(|k| Hom {
                map: (0..total).map(|idx| decode(idx)[k]).collect(),
            })
            .collect();
        Ok((product, projections))
    }

    /// Disjoint union with the inherited action, plus the injection homs.
    /// Elements of factor `k` occupy a contiguous block after all earlier
    /// factors.
    pub fn coproduct(acts: &[&Act]) -> Result<(Act, Vec<Hom>), ActError> {
        assert!(!acts.is_empty(), "coproduct of an empty family");
        let monoid = acts[0].monoid.clone();
        if acts.iter().any(|a| !acts[0].same_monoid(a)) {
            return Err(ActError::MixedMonoids);
        }
        let n = monoid.size();
        let mut action = Vec::new();
        let mut injections = Vec::new();
        let mut offset = 0;
        for a in acts {
            for x in 0..a.size() {
                action.push((0..n).map(|s| offset + a.act(x, s)).collect());
            }
            injections.push(Hom {
                map: (0..a.size()).map(|x| offset + x).collect(),
            });
            offset += a.size();
        }
        Ok((Act::from_action(monoid, action)?, injections))
    }

    /// Connected components of the relation `a ~ b iff aS ∩ bS ≠ ∅`,
    /// transitively closed. Each component is an indecomposable subact and
    /// their disjoint union is the act.
    pub fn indecomposable_components(&self) -> Vec<Subact> {
        let m = self.size();
        let masks: Vec<u64> = (0..m).map(|a| self.cyclic_subact(a).mask()).collect();
        let mut parent: Vec<usize> = (0..m).collect();
        fn root(parent: &mut Vec<usize>, mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for a in 0..m {
            for b in a + 1..m {
                if masks[a] & masks[b] != 0 {
                    let (ra, rb) = (root(&mut parent, a), root(&mut parent, b));
                    if ra != rb {
                        parent[ra.max(rb)] = ra.min(rb);
                    }
                }
            }
        }
        let mut comps: Vec<Vec<usize>> = Vec::new();
        let mut index: Vec<Option<usize>> = vec![None; m];
        for a in 0..m {
            let r = root(&mut parent, a);
            match index[r] {
                Some(i) => comps[i].push(a),
                None => {
                    index[r] = Some(comps.len());
                    comps.push(vec![a]);
                }
            }
        }
        comps.into_iter().map(|elements| Subact { elements }).collect()
    }

    /// A bijective hom to `other`, when one exists.
    pub fn isomorphism(&self, other: &Act) -> Option<Vec<usize>> {
        if !self.same_monoid(other) || self.size() != other.size() {
            return None;
        }
        crate::hom::find_hom(self, other, |map| {
            let mut seen = vec![false; map.len()];
            map.iter().all(|&v| !std::mem::replace(&mut seen[v], true))
        })
    }

    /// Lexicographically least flattened action table over all relabelings
    /// of the act's elements. Isomorphic acts over the same monoid collide.
    pub fn canonical_key(&self) -> Vec<usize> {
        let m = self.size();
        let n = self.monoid.size();
        assert!(m <= 8, "canonical key enumerates all permutations");
        let mut best: Option<Vec<usize>> = None;
        for perm in (0..m).permutations(m) {
            let mut inv = vec![0; m];
            for (old, &new) in perm.iter().enumerate() {
                inv[new] = old;
            }
            let mut flat = Vec::with_capacity(m * n);
            for i in 0..m {
                for s in 0..n {
                    flat.push(perm[self.action[inv[i]][s]]);
                }
            }
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        }
        best.unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::ChainOp;

    fn arc(m: Monoid) -> Arc<Monoid> {
        Arc::new(m)
    }

    #[test]
    fn regular_act_is_valid() {
        for m in [
            Monoid::trivial(),
            Monoid::diamond_semilattice(),
            Monoid::chain_semilattice(3, ChainOp::Max, false),
        ] {
            let a = Act::regular(arc(m));
            assert_eq!(a.size(), a.monoid().size());
        }
    }

    #[test]
    fn regular_act_over_chain_has_zero() {
        let a = Act::regular(arc(Monoid::chain_semilattice(3, ChainOp::Max, false)));
        assert_eq!(a.theta(), Some(2));
    }

    #[test]
    fn rejects_incompatible_action() {
        // over the diamond semilattice, send everything through e but break
        // the e*f = 0 relation on element 2
        let m = arc(Monoid::diamond_semilattice());
        let bad = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 1, 1],
            vec![2, 1, 2, 2], // 2*f should be 1 for compatibility with ef = 0
            vec![3, 1, 1, 3],
        ];
        let err = Act::from_action(m, bad).unwrap_err();
        assert!(matches!(err, ActError::NotCompatible(..)));
    }

    #[test]
    fn rejects_empty_act() {
        assert_eq!(
            Act::from_action(arc(Monoid::trivial()), vec![]).unwrap_err(),
            ActError::Empty
        );
    }

    #[test]
    fn cyclic_subact_of_identity_is_everything() {
        let a = Act::regular(arc(Monoid::diamond_semilattice()));
        assert_eq!(a.cyclic_subact(0).elements(), &[0, 1, 2, 3]);
        // e generates {e, 0}
        assert_eq!(a.cyclic_subact(2).elements(), &[1, 2]);
        // the zero generates itself
        assert_eq!(a.cyclic_subact(1).elements(), &[1]);
    }

    #[test]
    fn subacts_of_chain_form_a_chain() {
        let a = Act::regular(arc(Monoid::chain_semilattice(3, ChainOp::Max, false)));
        let subs = a.subacts();
        let sets: Vec<&[usize]> = subs.iter().map(|s| s.elements()).collect();
        assert_eq!(sets, vec![&[2][..], &[1, 2][..], &[0, 1, 2][..]]);
    }

    #[test]
    fn subacts_of_diamond_regular_act() {
        let a = Act::regular(arc(Monoid::diamond_semilattice()));
        let subs = a.subacts();
        let sets: Vec<Vec<usize>> = subs.iter().map(|s| s.elements().to_vec()).collect();
        assert_eq!(
            sets,
            vec![
                vec![1],
                vec![1, 2],
                vec![1, 3],
                vec![1, 2, 3],
                vec![0, 1, 2, 3]
            ]
        );
    }

    #[test]
    fn cyclic_subact_is_smallest_containing_oracle() {
        let a = Act::regular(arc(Monoid::diamond_semilattice()));
        let subs = a.subacts();
        for x in 0..a.size() {
            let meet: Vec<usize> = (0..a.size())
                .filter(|&y| {
                    subs.iter()
                        .filter(|s| s.contains(x))
                        .all(|s| s.contains(y))
                })
                .collect();
            assert_eq!(a.cyclic_subact(x).elements(), meet.as_slice());
        }
    }

    #[test]
    fn product_sizes_and_validity() {
        let m = arc(Monoid::chain_semilattice(2, ChainOp::Max, false));
        let a = Act::regular(m.clone());
        let (p, projs) = Act::product(&[&a, &a]).unwrap();
        assert_eq!(p.size(), 4);
        assert_eq!(projs.len(), 2);
        // componentwise max: (0,1)*a where a is the chain top
        // index of (0,1) is 0*2+1 = 1; acting by index-1 gives (1,1) = 3
        assert_eq!(p.act(1, 1), 3);
        for h in &projs {
            assert!(crate::hom::is_hom(&p, &a, &h.map));
        }
    }

    #[test]
    fn coproduct_sizes_and_fixed_points() {
        let m = arc(Monoid::trivial());
        let s = Act::singleton(m.clone());
        let (c, injs) = Act::coproduct(&[&s, &s]).unwrap();
        assert_eq!(c.size(), 2);
        assert_eq!(c.fixed_points(), vec![0, 1]);
        assert_eq!(injs[1].map, vec![1]);
    }

    #[test]
    fn mixed_monoids_rejected() {
        let a = Act::regular(arc(Monoid::trivial()));
        let b = Act::regular(arc(Monoid::diamond_semilattice()));
        assert_eq!(Act::product(&[&a, &b]).unwrap_err(), ActError::MixedMonoids);
    }

    #[test]
    fn regular_act_is_one_component() {
        let a = Act::regular(arc(Monoid::diamond_semilattice()));
        assert_eq!(a.indecomposable_components().len(), 1);
    }

    #[test]
    fn coproduct_components_recovered() {
        let m = arc(Monoid::chain_semilattice(2, ChainOp::Max, false));
        let a = Act::regular(m.clone());
        let (c, _) = Act::coproduct(&[&a, &a]).unwrap();
        let comps = c.indecomposable_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].elements(), &[0, 1]);
        assert_eq!(comps[1].elements(), &[2, 3]);
    }

    #[test]
    fn component_indecomposability_oracle() {
        // no component splits into two disjoint subacts
        let a = Act::regular(arc(Monoid::diamond_semilattice()));
        for comp in a.indecomposable_components() {
            let sub = a.subact_as_act(&comp);
            let k = sub.size();
            if k < 2 {
                continue;
            }
            for bits in 1..(1u32 << k) - 1 {
                let left: Vec<usize> = (0..k).filter(|&i| bits >> i & 1 == 1).collect();
                let right: Vec<usize> = (0..k).filter(|&i| bits >> i & 1 == 0).collect();
                assert!(
                    !(sub.is_subact(&left) && sub.is_subact(&right)),
                    "component split into two subacts"
                );
            }
        }
    }

    #[test]
    fn distinct_two_element_acts_not_isomorphic() {
        // over the 2-element semilattice {1, a}: both points fixed vs one
        // point absorbing
        let m = arc(Monoid::from_table(vec![vec![0, 1], vec![1, 1]]).unwrap());
        let both_fixed = Act::from_action(m.clone(), vec![vec![0, 0], vec![1, 1]]).unwrap();
        let absorbing = Act::from_action(m.clone(), vec![vec![0, 1], vec![1, 1]]).unwrap();
        assert!(both_fixed.isomorphism(&absorbing).is_none());
        assert!(both_fixed.isomorphism(&both_fixed).is_some());
        assert_ne!(both_fixed.canonical_key(), absorbing.canonical_key());
    }

    #[test]
    fn isomorphism_ignores_labeling() {
        let m = arc(Monoid::chain_semilattice(2, ChainOp::Max, false));
        let a = Act::from_action(m.clone(), vec![vec![0, 1], vec![1, 1]]).unwrap();
        let b = Act::from_action(m.clone(), vec![vec![0, 0], vec![1, 0]]).unwrap();
        let w = a.isomorphism(&b).unwrap();
        assert_eq!(w, vec![1, 0]);
        assert_eq!(a.canonical_key(), b.canonical_key());
    }
}
