//! Randomized invariants over acts sampled from the bounded enumeration.
//! Complements the exhaustive harness: these properties quantify over
//! random picks (acts, congruence pairs, homs, permutations) rather than
//! full cross products, so they stay cheap while still exercising the
//! algebra from angles the fixed oracles do not.

use acta::act::Act;
use acta::congruence;
use acta::hom::{self, Hom};
use acta::structure;
use acta::universe::Universe;
use proptest::prelude::*;
use proptest::sample::Index;
use std::sync::OnceLock;

fn pool() -> &'static Vec<Act> {
    static POOL: OnceLock<Vec<Act>> = OnceLock::new();
    POOL.get_or_init(|| {
        let universe = Universe::bounded(3, 4).unwrap();
        universe.acts.into_iter().flatten().collect()
    })
}

fn pick<'a, T>(items: &'a [T], ix: &Index) -> &'a T {
    &items[ix.index(items.len())]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn meet_is_greatest_lower_bound(act_ix: Index, i: Index, j: Index) {
        let act = pick(pool(), &act_ix);
        let cons = congruence::all_congruences(act).unwrap();
        let (c1, c2) = (pick(&cons, &i), pick(&cons, &j));
        let m = c1.meet(c2).unwrap();
        prop_assert!(m.leq(c1) && m.leq(c2));
        for c in &cons {
            if c.leq(c1) && c.leq(c2) {
                prop_assert!(c.leq(&m));
            }
        }
    }

    #[test]
    fn join_is_least_upper_bound(act_ix: Index, i: Index, j: Index) {
        let act = pick(pool(), &act_ix);
        let cons = congruence::all_congruences(act).unwrap();
        let (c1, c2) = (pick(&cons, &i), pick(&cons, &j));
        let jn = congruence::join(act, c1, c2).unwrap();
        prop_assert!(c1.leq(&jn) && c2.leq(&jn));
        for c in &cons {
            if c1.leq(c) && c2.leq(c) {
                prop_assert!(jn.leq(c));
            }
        }
    }

    #[test]
    fn lattice_operations_commute_and_idempotent(act_ix: Index, i: Index, j: Index) {
        let act = pick(pool(), &act_ix);
        let cons = congruence::all_congruences(act).unwrap();
        let (c1, c2) = (pick(&cons, &i), pick(&cons, &j));
        prop_assert_eq!(c1.meet(c2).unwrap(), c2.meet(c1).unwrap());
        prop_assert_eq!(
            congruence::join(act, c1, c2).unwrap(),
            congruence::join(act, c2, c1).unwrap()
        );
        prop_assert_eq!(&c1.meet(c1).unwrap(), c1);
        prop_assert_eq!(&congruence::join(act, c1, c1).unwrap(), c1);
    }

    #[test]
    fn factor_by_kernel_is_isomorphic_to_image(src_ix: Index, dst_ix: Index, hom_ix: Index) {
        let src = pick(pool(), &src_ix);
        let all = pool();
        // restrict the target to acts over the same monoid
        let targets: Vec<&Act> = all
            .iter()
            .filter(|a| std::sync::Arc::ptr_eq(a.monoid(), src.monoid()))
            .collect();
        let dst = pick(&targets, &dst_ix);
        let homs = hom::enumerate_homs(src, dst).unwrap();
        if homs.is_empty() {
            return Ok(());
        }
        let h = pick(&homs, &hom_ix);
        let (factor, _) = congruence::factor_act(src, &h.kernel()).unwrap();
        let image: Vec<usize> = {
            let mut im = h.map.clone();
            im.sort_unstable();
            im.dedup();
            im
        };
        let image_act = dst.subact_as_act(&dst.subact(image).unwrap());
        prop_assert!(factor.isomorphism(&image_act).is_some());
    }

    #[test]
    fn cyclic_subact_is_smallest_containing_generator(act_ix: Index, elem: Index) {
        let act = pick(pool(), &act_ix);
        let a = elem.index(act.size());
        let cyclic = act.cyclic_subact(a);
        prop_assert!(cyclic.contains(a));
        for sub in act.subacts() {
            if sub.contains(a) {
                prop_assert!(cyclic.elements().iter().all(|&x| sub.contains(x)));
            }
        }
    }

    #[test]
    fn product_projections_and_coproduct_injections_are_homs(i: Index, j: Index) {
        let all = pool();
        let a = pick(all, &i);
        let same: Vec<&Act> = all
            .iter()
            .filter(|b| std::sync::Arc::ptr_eq(b.monoid(), a.monoid()))
            .collect();
        let b = pick(&same, &j);
        if a.size() * b.size() <= 16 {
            let (prod, projections) = Act::product(&[a, b]).unwrap();
            prop_assert_eq!(prod.size(), a.size() * b.size());
            prop_assert!(hom::is_hom(&prod, a, &projections[0].map));
            prop_assert!(hom::is_hom(&prod, b, &projections[1].map));
        }
        let (coprod, injections) = Act::coproduct(&[a, b]).unwrap();
        prop_assert_eq!(coprod.size(), a.size() + b.size());
        prop_assert!(hom::is_hom(a, &coprod, &injections[0].map));
        prop_assert!(hom::is_hom(b, &coprod, &injections[1].map));
    }

    #[test]
    fn canonical_key_is_permutation_invariant(act_ix: Index, seed: u64) {
        let act = pick(pool(), &act_ix);
        let m = act.size();
        // Fisher-Yates with a simple multiplicative step; quality does not
        // matter, distinctness of permutations does
        let mut perm: Vec<usize> = (0..m).collect();
        let mut state = seed | 1;
        for k in (1..m).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(k, (state >> 33) as usize % (k + 1));
        }
        let mut action = vec![vec![0; act.monoid().size()]; m];
        for a in 0..m {
            for s in 0..act.monoid().size() {
                action[perm[a]][s] = perm[act.act(a, s)];
            }
        }
        let relabeled = Act::from_action(act.monoid().clone(), action).unwrap();
        prop_assert_eq!(relabeled.canonical_key(), act.canonical_key());
        prop_assert!(relabeled.isomorphism(act).is_some());
    }

    #[test]
    fn hom_composition_and_injective_kernels(src_ix: Index, mid_ix: Index, h1_ix: Index, h2_ix: Index) {
        let all = pool();
        let src = pick(all, &src_ix);
        let same: Vec<&Act> = all
            .iter()
            .filter(|a| std::sync::Arc::ptr_eq(a.monoid(), src.monoid()))
            .collect();
        let mid = pick(&same, &mid_ix);
        let dst = pick(&same, &h2_ix);
        let first = hom::enumerate_homs(src, mid).unwrap();
        let second = hom::enumerate_homs(mid, dst).unwrap();
        if first.is_empty() || second.is_empty() {
            return Ok(());
        }
        let f = pick(&first, &h1_ix);
        let g = pick(&second, &h2_ix);
        let composed = f.compose(g);
        prop_assert!(hom::is_hom(src, dst, &composed.map));
        prop_assert_eq!(composed.is_injective(), composed.kernel().is_diagonal());
        // kernel of the composite refines nothing finer than ker f
        prop_assert!(f.kernel().leq(&composed.kernel()));
    }

    #[test]
    fn rees_congruence_collapses_exactly_the_subact(act_ix: Index, sub_ix: Index) {
        let act = pick(pool(), &act_ix);
        let subs = act.subacts();
        let sub = pick(&subs, &sub_ix);
        let rho = congruence::rees_congruence(act, sub).unwrap();
        for a in 0..act.size() {
            for b in 0..act.size() {
                let expected = a == b || (sub.contains(a) && sub.contains(b));
                prop_assert_eq!(rho.relates(a, b), expected);
            }
        }
    }

    #[test]
    fn s_socle_inside_socle(act_ix: Index) {
        let act = pick(pool(), &act_ix);
        let report = structure::structure_report(act).unwrap();
        if let (Some(ss), Some(soc)) = (&report.s_socle, &report.socle) {
            prop_assert!(ss.elements().iter().all(|&a| soc.contains(a)));
        }
    }

    #[test]
    fn indecomposable_components_partition_the_act(act_ix: Index) {
        let act = pick(pool(), &act_ix);
        let components = act.indecomposable_components();
        let mut covered = vec![false; act.size()];
        for c in &components {
            for &a in c.elements() {
                prop_assert!(!covered[a], "components overlap at {}", a);
                covered[a] = true;
            }
        }
        prop_assert!(covered.iter().all(|&x| x));
    }

    #[test]
    fn congruences_above_is_an_order_isomorphism(act_ix: Index, theta_ix: Index) {
        let act = pick(pool(), &act_ix);
        let cons = congruence::all_congruences(act).unwrap();
        let theta = pick(&cons, &theta_ix);
        let (factor, _) = congruence::factor_act(act, theta).unwrap();
        let above = congruence::congruences_above(act, theta).unwrap();
        let factor_cons = congruence::all_congruences(&factor).unwrap();
        prop_assert_eq!(above.len(), factor_cons.len());
        for (upper, image) in &above {
            prop_assert!(theta.leq(upper));
            prop_assert!(factor_cons.contains(image));
        }
        for i in 0..above.len() {
            for j in 0..above.len() {
                prop_assert_eq!(above[i].0.leq(&above[j].0), above[i].1.leq(&above[j].1));
            }
        }
    }

    #[test]
    fn lambda_maps_are_homs_into_cyclic_subacts(act_ix: Index, elem: Index) {
        let act = pick(pool(), &act_ix);
        let a = elem.index(act.size());
        let lam: Hom = hom::lambda(act, a);
        let regular = Act::regular(act.monoid().clone());
        prop_assert!(hom::is_hom(&regular, act, &lam.map));
        prop_assert_eq!(lam.map[act.monoid().identity()], a);
    }
}
