//! Bounded enumeration of monoids and acts up to isomorphism.
//!
//! Monoid tables are generated by backtracking with the identity pinned at
//! index 0 and associativity checked incrementally; act tables likewise with
//! the identity column pinned and compatibility checked incrementally.
//! Isomorphism rejection keys on the lexicographically least relabeled table,
//! keeping the first representative found, so output order is deterministic.

use crate::act::Act;
use crate::monoid::Monoid;
use std::collections::HashSet;
use std::sync::Arc;
use thiserror::Error;

pub const MONOID_CAP: usize = 4;
pub const ACT_CAP: usize = 4;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum UniverseError {
    #[error("requested bound {requested} exceeds cap {cap}")]
    CapExceeded { requested: usize, cap: usize },
}

const UNSET: usize = usize::MAX;

fn associativity_consistent(table: &[Vec<usize>], n: usize) -> bool {
    for s in 0..n {
        for t in 0..n {
            let st = table[s][t];
            if st == UNSET {
                continue;
            }
            for u in 0..n {
                let tu = table[t][u];
                if tu == UNSET {
                    continue;
                }
                let left = table[st][u];
                let right = table[s][tu];
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// All monoids of order exactly `n` up to isomorphism, each with its
/// identity at index 0.
pub fn enumerate_monoids(n: usize, cap: usize) -> Result<Vec<Monoid>, UniverseError> {
    if n > cap || n > MONOID_CAP {
        return Err(UniverseError::CapExceeded {
            requested: n,
            cap: cap.min(MONOID_CAP),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut table = vec![vec![UNSET; n]; n];
    for i in 0..n {
        table[0][i] = i;
        table[i][0] = i;
    }
    let cells: Vec<(usize, usize)> = (1..n)
        .flat_map(|i| (1..n).map(move |j| (i, j)))
        .collect();
    let mut found = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    fn rec(
        table: &mut Vec<Vec<usize>>,
        cells: &[(usize, usize)],
        pos: usize,
        n: usize,
        found: &mut Vec<Monoid>,
        seen: &mut HashSet<Vec<usize>>,
    ) {
        if pos == cells.len() {
            let monoid = Monoid::from_table(table.clone()).expect("pruned table is a monoid");
            if seen.insert(monoid.canonical_key()) {
                found.push(monoid);
            }
            return;
        }
        let (i, j) = cells[pos];
        for v in 0..n {
            table[i][j] = v;
            if associativity_consistent(table, n) {
                rec(table, cells, pos + 1, n, found, seen);
            }
        }
        table[i][j] = UNSET;
    }
    rec(&mut table, &cells, 0, n, &mut found, &mut seen);
    Ok(found)
}

fn compatibility_consistent(action: &[Vec<usize>], monoid: &Monoid, m: usize) -> bool {
    let n = monoid.size();
    for a in 0..m {
        for s in 0..n {
            let r = action[a][s];
            if r == UNSET {
                continue;
            }
            for t in 0..n {
                let left = action[r][t];
                let right = action[a][monoid.mul(s, t)];
                if left != UNSET && right != UNSET && left != right {
                    return false;
                }
            }
        }
    }
    true
}

/// All acts of size exactly `m` over `monoid`, up to isomorphism.
pub fn enumerate_acts(
    monoid: &Arc<Monoid>,
    m: usize,
    cap: usize,
) -> Result<Vec<Act>, UniverseError> {
    if m > cap || m > ACT_CAP {
        return Err(UniverseError::CapExceeded {
            requested: m,
            cap: cap.min(ACT_CAP),
        });
    }
    if m == 0 {
        return Ok(Vec::new());
    }
    let n = monoid.size();
    let e = monoid.identity();
    let mut action = vec![vec![UNSET; n]; m];
    for a in 0..m {
        action[a][e] = a;
    }
    let cells: Vec<(usize, usize)> = (0..m)
        .flat_map(|a| (0..n).filter(move |&s| s != e).map(move |s| (a, s)))
        .collect();
    struct Ctx<'a> {
        monoid: &'a Arc<Monoid>,
        cells: Vec<(usize, usize)>,
        m: usize,
        found: Vec<Act>,
        seen: HashSet<Vec<usize>>,
    }
    fn rec(action: &mut Vec<Vec<usize>>, pos: usize, ctx: &mut Ctx) {
        if pos == ctx.cells.len() {
            let act = Act::from_action(ctx.monoid.clone(), action.clone())
                .expect("pruned table is an act");
            if ctx.seen.insert(act.canonical_key()) {
                ctx.found.push(act);
            }
            return;
        }
        let (a, s) = ctx.cells[pos];
        for v in 0..ctx.m {
            action[a][s] = v;
            if compatibility_consistent(action, ctx.monoid, ctx.m) {
                rec(action, pos + 1, ctx);
            }
        }
        action[a][s] = UNSET;
    }
    let mut ctx = Ctx {
        monoid,
        cells,
        m,
        found: Vec::new(),
        seen: HashSet::new(),
    };
    rec(&mut action, 0, &mut ctx);
    Ok(ctx.found)
}

/// A finite test universe: pairwise non-isomorphic monoids, and for each
/// monoid all acts up to `max_act_size` up to isomorphism.
#[derive(Debug, Clone)]
pub struct Universe {
    pub monoids: Vec<Arc<Monoid>>,
    /// `acts[i]` are the acts over `monoids[i]`, smaller sizes first.
    pub acts: Vec<Vec<Act>>,
    pub max_act_size: usize,
}

impl Universe {
    pub fn from_monoids(
        monoids: Vec<Monoid>,
        max_act_size: usize,
    ) -> Result<Universe, UniverseError> {
        let monoids: Vec<Arc<Monoid>> = monoids.into_iter().map(Arc::new).collect();
        let mut acts = Vec::with_capacity(monoids.len());
        for monoid in &monoids {
            let mut over = Vec::new();
            for m in 1..=max_act_size {
                over.extend(enumerate_acts(monoid, m, ACT_CAP)?);
            }
            acts.push(over);
        }
        Ok(Universe {
            monoids,
            acts,
            max_act_size,
        })
    }

    /// All monoids of order at most `max_monoid` plus their acts.
    pub fn bounded(max_monoid: usize, max_act_size: usize) -> Result<Universe, UniverseError> {
        let mut monoids = Vec::new();
        for n in 1..=max_monoid {
            monoids.extend(enumerate_monoids(n, MONOID_CAP)?);
        }
        Universe::from_monoids(monoids, max_act_size)
    }

    /// Monoids of order at most 3, plus the four-element diamond
    /// semilattice, with acts of size at most 4. The standard harness
    /// universe: small enough for exhaustive claim checks, large enough to
    /// contain every worked example.
    pub fn default_universe() -> Universe {
        let mut monoids = Vec::new();
        for n in 1..=3 {
            monoids.extend(enumerate_monoids(n, MONOID_CAP).unwrap());
        }
        monoids.push(Monoid::diamond_semilattice());
        Universe::from_monoids(monoids, 4).unwrap()
    }

    pub fn total_acts(&self) -> usize {
        self.acts.iter().map(|v| v.len()).sum()
    }
}
