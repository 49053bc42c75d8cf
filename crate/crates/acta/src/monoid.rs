//! Finite monoids as explicit multiplication tables.
//!
//! Elements are dense indices `0..n`. The identity is located during
//! validation rather than being pinned to a fixed index, so user tables need
//! no reordering. A zero (two-sided absorbing element) is detected
//! automatically when present.

use itertools::Itertools;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("table entry out of range: table[{row}][{col}] = {value}, expected < {n}")]
    EntryOutOfRange {
        row: usize,
        col: usize,
        value: usize,
        n: usize,
    },
    #[error("table is not square: row {row} has length {len}, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("empty table: a monoid has at least one element")]
    Empty,
    #[error("not associative: (s*t)*u != s*(t*u) for (s,t,u) = ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("no identity element")]
    NoIdentity,
}

/// Lattice operation used by [`Monoid::chain_semilattice`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainOp {
    Min,
    Max,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monoid {
    table: Vec<Vec<usize>>,
    identity: usize,
    zero: Option<usize>,
    names: Option<Vec<String>>,
}

impl Monoid {
    /// Validates a multiplication table and locates the identity and the
    /// zero (if any).
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, MonoidError> {
        let n = table.len();
        if n == 0 {
            return Err(MonoidError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != n {
                return Err(MonoidError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            for (col, &value) in r.iter().enumerate() {
                if value >= n {
                    return Err(MonoidError::EntryOutOfRange { row, col, value, n });
                }
            }
        }
        for s in 0..n {
            for t in 0..n {
                for u in 0..n {
                    if table[table[s][t]][u] != table[s][table[t][u]] {
                        return Err(MonoidError::NotAssociative(s, t, u));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|s| table[e][s] == s && table[s][e] == s))
            .ok_or(MonoidError::NoIdentity)?;
        let zeros: Vec<usize> = (0..n)
            .filter(|&z| (0..n).all(|s| table[z][s] == z && table[s][z] == z))
            .collect();
        // An identity and a zero are unique when they exist.
        debug_assert!(zeros.len() <= 1 || n == 1);
        Ok(Monoid {
            table,
            identity,
            zero: zeros.first().copied(),
            names: None,
        })
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.size());
        self.names = Some(names);
        self
    }

    /// The one-element monoid.
    pub fn trivial() -> Self {
        Monoid::from_table(vec![vec![0]]).unwrap()
    }

    /// The chain `{1, .., k}` under `min` or `max`, optionally with an
    /// external identity adjoined.
    ///
    /// Element `v` (1-based) sits at index `v - 1`; the adjoined identity,
    /// when requested, is the last index and is named `ε`.
    pub fn chain_semilattice(k: usize, op: ChainOp, adjoin_identity: bool) -> Self {
        assert!(k >= 1, "chain must have at least one element");
        let n = if adjoin_identity { k + 1 } else { k };
        let mut table = vec![vec![0; n]; n];
        for i in 0..k {
            for j in 0..k {
                table[i][j] = match op {
                    ChainOp::Min => i.min(j),
                    ChainOp::Max => i.max(j),
                };
            }
        }
        if adjoin_identity {
            for i in 0..n {
                table[k][i] = i;
                table[i][k] = i;
            }
        }
        let mut names: Vec<String> = (1..=k).map(|v| v.to_string()).collect();
        if adjoin_identity {
            names.push("ε".to_string());
        }
        Monoid::from_table(table).unwrap().with_names(names)
    }

    /// The four-element semilattice `{1, 0, e, f}` with `ee = e`, `ff = f`,
    /// `ef = fe = 0`, `0` absorbing and `1` the identity.
    pub fn diamond_semilattice() -> Self {
        // indices: 1 -> 0, 0 -> 1, e -> 2, f -> 3
        let table = vec![
            vec![0, 1, 2, 3],
            vec![1, 1, 1, 1],
            vec![2, 1, 2, 1],
            vec![3, 1, 1, 3],
        ];
        let names = ["1", "0", "e", "f"].map(String::from).to_vec();
        Monoid::from_table(table).unwrap().with_names(names)
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn mul(&self, s: usize, t: usize) -> usize {
        self.table[s][t]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn zero(&self) -> Option<usize> {
        self.zero
    }

    pub fn table(&self) -> &Vec<Vec<usize>> {
        &self.table
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, i: usize) -> String {
        match &self.names {
            Some(names) => names[i].clone(),
            None => i.to_string(),
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.size();
        (0..n).all(|s| (s + 1..n).all(|t| self.table[s][t] == self.table[t][s]))
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.size()).filter(|&e| self.mul(e, e) == e).collect()
    }

    /// Lexicographically least flattened table over all relabelings.
    /// Isomorphic monoids collide on this key.
    pub fn canonical_key(&self) -> Vec<usize> {
        let n = self.size();
        let mut best: Option<Vec<usize>> = None;
        for perm in (0..n).permutations(n) {
            let mut flat = Vec::with_capacity(n * n);
            let mut inv = vec![0; n];
            for (old, &new) in perm.iter().enumerate() {
                inv[new] = old;
            }
            for i in 0..n {
                for j in 0..n {
                    flat.push(perm[self.table[inv[i]][inv[j]]]);
                }
            }
            if best.as_ref().is_none_or(|b| flat < *b) {
                best = Some(flat);
            }
        }
        best.unwrap()
    }
}
