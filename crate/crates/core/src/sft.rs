//! Brute-force ground truth on one-sided subshifts of finite type.
//!
//! A system is an alphabet `{0, …, n−1}` and a finite set of forbidden
//! words. Open sets are the cylinders `[w]` of words with no forbidden
//! factor. Transitivity is decided on the window graph; periodic density
//! and shared periodic orbits are decided by exhaustive enumeration up to
//! explicit depth and period bounds, which every report carries.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::text::format_word;

pub type Word = Vec<u8>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SftSystem {
    alphabet: u8,
    forbidden: BTreeSet<Word>,
}

impl SftSystem {
    pub fn new(alphabet: u8, forbidden: impl IntoIterator<Item = Word>) -> Result<Self> {
        if !(2..=10).contains(&alphabet) {
            return Err(Error::InvalidAlphabet(alphabet));
        }
        let forbidden: BTreeSet<Word> = forbidden.into_iter().collect();
        for w in &forbidden {
            if w.is_empty() {
                return Err(Error::EmptyForbiddenWord);
            }
            if let Some(&symbol) = w.iter().find(|&&s| s >= alphabet) {
                return Err(Error::SymbolOutOfRange { symbol, alphabet });
            }
        }
        Ok(Self { alphabet, forbidden })
    }

    pub fn full(alphabet: u8) -> Result<Self> {
        Self::new(alphabet, [])
    }

    pub fn alphabet(&self) -> u8 {
        self.alphabet
    }

    pub fn forbidden(&self) -> &BTreeSet<Word> {
        &self.forbidden
    }

    pub fn max_forbidden_len(&self) -> usize {
        self.forbidden.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Smallest window length for which the window graph sees every
    /// forbidden word.
    pub fn min_order(&self) -> usize {
        self.max_forbidden_len().saturating_sub(1).max(1)
    }

    fn ends_forbidden(&self, w: &[u8]) -> bool {
        self.forbidden.iter().any(|f| w.ends_with(f))
    }

    /// No forbidden factor anywhere in `w`.
    pub fn avoids(&self, w: &[u8]) -> bool {
        (1..=w.len()).all(|end| !self.ends_forbidden(&w[..end]))
    }

    /// Words of length `n` with no forbidden factor, in lexicographic order.
    pub fn allowed_words(&self, n: usize) -> Vec<Word> {
        let mut out = Vec::new();
        let mut prefix = Vec::with_capacity(n);
        self.extend_allowed(&mut prefix, n, &mut out);
        out
    }

    fn extend_allowed(&self, prefix: &mut Word, n: usize, out: &mut Vec<Word>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for s in 0..self.alphabet {
            prefix.push(s);
            if !self.ends_forbidden(prefix) {
                self.extend_allowed(prefix, n, out);
            }
            prefix.pop();
        }
    }

    /// Whether the periodic point `w^∞` avoids every forbidden word.
    pub fn admits_periodic(&self, w: &[u8]) -> bool {
        if w.is_empty() {
            return false;
        }
        let reps = 1 + self.max_forbidden_len().div_ceil(w.len());
        self.avoids(&w.repeat(reps))
    }

    /// Fixed points of `σ^n`, listed by their length-`n` words.
    pub fn periodic_points(&self, n: usize) -> PeriodicPoints {
        let words: Vec<Word> = self
            .allowed_words(n)
            .into_iter()
            .filter(|w| self.admits_periodic(w))
            .collect();
        let transfer_trace = self.transfer_matrix().map(|m| trace(&matrix_power(&m, n)));
        PeriodicPoints {
            n,
            count: words.len(),
            words: words.iter().map(|w| format_word(w)).collect(),
            transfer_trace,
        }
    }

    /// Transition matrix on symbols, defined when no forbidden word is
    /// longer than 2.
    pub fn transfer_matrix(&self) -> Option<Vec<Vec<u128>>> {
        if self.max_forbidden_len() > 2 {
            return None;
        }
        let a = usize::from(self.alphabet);
        let mut m = vec![vec![0; a]; a];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = u128::from(self.avoids(&[i as u8, j as u8]));
            }
        }
        Some(m)
    }

    /// Window graph on allowed words of length `order`; `u → v` when
    /// `u` and `v` overlap in `order − 1` symbols and the joined word is
    /// allowed.
    pub fn window_graph(&self, order: usize) -> Result<WindowGraph> {
        if order < self.min_order() {
            return Err(Error::WindowTooShort {
                order,
                needed: self.min_order(),
            });
        }
        let vertices = self.allowed_words(order);
        let edges = vertices
            .iter()
            .map(|u| {
                vertices
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| u[1..] == v[..order - 1] && {
                        let mut joined = u.clone();
                        joined.push(*v.last().expect("order >= 1"));
                        self.avoids(&joined)
                    })
                    .map(|(j, _)| j)
                    .collect()
            })
            .collect();
        Ok(WindowGraph { vertices, edges })
    }

    /// Transitivity decided on the essential part of the window graph.
    pub fn is_transitive(&self, order: usize) -> Result<Transitivity> {
        let graph = self.window_graph(order)?;
        let reach = graph.reachability();
        let essential: Vec<usize> = (0..graph.vertices.len()).filter(|&v| reach[v][v]).collect();
        let strongly_connected = essential
            .iter()
            .all(|&u| essential.iter().all(|&v| reach[u][v]));
        Ok(Transitivity {
            transitive: !essential.is_empty() && strongly_connected,
            essential_vertices: essential.len(),
            empty_subshift: essential.is_empty(),
        })
    }

    /// Periodic points of period `1..=period_bound`, ordered by period then
    /// lexicographically by word.
    fn periodic_catalog(&self, period_bound: usize) -> Vec<Word> {
        (1..=period_bound)
            .flat_map(|n| self.allowed_words(n).into_iter().filter(|w| self.admits_periodic(w)))
            .collect()
    }

    /// Searches for a periodic point of period at most `period_bound` whose
    /// orbit enters both `[u]` and `[v]`.
    pub fn def7_check(&self, u: &[u8], v: &[u8], period_bound: usize) -> Def7Outcome {
        for w in self.periodic_catalog(period_bound) {
            if let (Some(t_u), Some(t_v)) = (first_hit(&w, u), first_hit(&w, v)) {
                return Def7Outcome::Shared {
                    word: format_word(&w),
                    t_u,
                    t_v,
                };
            }
        }
        Def7Outcome::Refuted { period_bound }
    }

    /// Decides transitivity, periodic density and shared periodic orbits on
    /// every allowed cylinder of length `1..=depth`, and checks that the
    /// last is equivalent to the conjunction of the first two.
    pub fn proposition_crosscheck(&self, depth: usize, period_bound: usize) -> OracleReport {
        let order = self.min_order();
        let transitivity = self.is_transitive(order).expect("order is the minimum valid one");

        let cylinders: Vec<Word> = (1..=depth).flat_map(|n| self.allowed_words(n)).collect();
        let catalog = self.periodic_catalog(period_bound);
        let blocks = catalog.len().div_ceil(64);
        let mut starts = vec![vec![0u64; blocks]; cylinders.len()];
        let mut visits = vec![vec![0u64; blocks]; cylinders.len()];
        for (j, w) in catalog.iter().enumerate() {
            for (c, cyl) in cylinders.iter().enumerate() {
                if let Some(t) = first_hit(w, cyl) {
                    visits[c][j / 64] |= 1 << (j % 64);
                    if t == 0 {
                        starts[c][j / 64] |= 1 << (j % 64);
                    }
                }
            }
        }

        let density_gap = cylinders
            .iter()
            .zip(&starts)
            .find(|(_, bits)| bits.iter().all(|&b| b == 0))
            .map(|(w, _)| format_word(w));

        let mut counterexample = None;
        'pairs: for (i, u) in cylinders.iter().enumerate() {
            for (j, v) in cylinders.iter().enumerate() {
                let shared = visits[i].iter().zip(&visits[j]).any(|(a, b)| a & b != 0);
                if !shared {
                    counterexample = Some((format_word(u), format_word(v)));
                    break 'pairs;
                }
            }
        }

        let transitive = transitivity.transitive;
        let dense = density_gap.is_none();
        let def7 = counterexample.is_none();
        OracleReport {
            system: self.clone(),
            open_sets: OPEN_SET_READING.to_owned(),
            depth,
            period_bound,
            window_order: order,
            transitive,
            empty_subshift: transitivity.empty_subshift,
            periodic_dense_to_depth: dense,
            def7_to_depth: def7,
            equivalence_holds: def7 == (transitive && dense),
            density_gap,
            counterexample,
        }
    }

    /// Every system over `{0,1}` whose forbidden set is a subset of the
    /// binary words of length `word_len`.
    pub fn binary_family(word_len: usize) -> Vec<SftSystem> {
        let words: Vec<Word> = (0..1u32 << word_len)
            .map(|bits| (0..word_len).rev().map(|i| ((bits >> i) & 1) as u8).collect())
            .collect();
        (0..1u64 << words.len())
            .map(|mask| {
                let chosen = words
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, w)| w.clone());
                SftSystem::new(2, chosen).expect("binary words")
            })
            .collect()
    }
}

pub const OPEN_SET_READING: &str =
    "open sets are cylinders [w] of words w with no forbidden factor, length 1..=depth";

/// First time `t < |w|` at which the orbit of `w^∞` starts with `u`.
fn first_hit(w: &[u8], u: &[u8]) -> Option<usize> {
    (0..w.len()).find(|&t| u.iter().enumerate().all(|(i, &s)| w[(t + i) % w.len()] == s))
}

pub fn matrix_power(m: &[Vec<u128>], n: usize) -> Vec<Vec<u128>> {
    let size = m.len();
    let mut result: Vec<Vec<u128>> = (0..size)
        .map(|i| (0..size).map(|j| u128::from(i == j)).collect())
        .collect();
    for _ in 0..n {
        result = (0..size)
            .map(|i| {
                (0..size)
                    .map(|j| (0..size).map(|l| result[i][l] * m[l][j]).sum())
                    .collect()
            })
            .collect();
    }
    result
}

pub fn trace(m: &[Vec<u128>]) -> u128 {
    (0..m.len()).map(|i| m[i][i]).sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicPoints {
    pub n: usize,
    pub count: usize,
    pub words: Vec<String>,
    /// `tr(Tⁿ)` when the system has a symbol transfer matrix.
    pub transfer_trace: Option<u128>,
}

impl PeriodicPoints {
    /// Enumeration and transfer-matrix trace agree, when both exist.
    pub fn consistent(&self) -> bool {
        self.transfer_trace.is_none_or(|t| t == self.count as u128)
    }
}

#[derive(Debug, Clone)]
pub struct WindowGraph {
    pub vertices: Vec<Word>,
    pub edges: Vec<Vec<usize>>,
}

impl WindowGraph {
    /// `reach[u][v]`: a path of length at least one leads from `u` to `v`.
    pub fn reachability(&self) -> Vec<Vec<bool>> {
        let n = self.vertices.len();
        (0..n)
            .map(|start| {
                let mut seen = vec![false; n];
                let mut stack: Vec<usize> = self.edges[start].clone();
                while let Some(v) = stack.pop() {
                    if !seen[v] {
                        seen[v] = true;
                        stack.extend(&self.edges[v]);
                    }
                }
                seen
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transitivity {
    pub transitive: bool,
    pub essential_vertices: usize,
    /// No window lies on a cycle: the subshift has no points.
    pub empty_subshift: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum Def7Outcome {
    Shared { word: String, t_u: usize, t_v: usize },
    Refuted { period_bound: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub system: SftSystem,
    pub open_sets: String,
    pub depth: usize,
    pub period_bound: usize,
    pub window_order: usize,
    pub transitive: bool,
    pub empty_subshift: bool,
    pub periodic_dense_to_depth: bool,
    pub def7_to_depth: bool,
    /// `def7 ⟺ (transitive ∧ dense)`. False marks a discrepancy.
    pub equivalence_holds: bool,
    /// First allowed word whose cylinder holds no periodic point.
    pub density_gap: Option<String>,
    /// First pair of cylinders sharing no periodic orbit.
    pub counterexample: Option<(String, String)>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &str) -> SftSystem {
        s.parse().unwrap()
    }

    fn words(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| format_word(w)).collect()
    }

    #[test]
    fn allowed_word_examples() {
        assert_eq!(words(&sys("forbid=").allowed_words(2)), ["00", "01", "10", "11"]);
        assert_eq!(
            words(&sys("forbid=11").allowed_words(3)),
            ["000", "001", "010", "100", "101"]
        );
        assert_eq!(words(&sys("forbid=01,10").allowed_words(3)), ["000", "111"]);
    }

    #[test]
    fn allowed_words_match_filtered_enumeration() {
        let s = sys("forbid=11,010");
        for n in 1..=8 {
            let brute: Vec<Word> = (0..1u32 << n)
                .map(|b| (0..n).rev().map(|i| ((b >> i) & 1) as u8).collect::<Word>())
                .filter(|w| !s.forbidden().iter().any(|f| w.windows(f.len()).any(|x| x == &f[..])))
                .collect();
            assert_eq!(s.allowed_words(n), brute, "n = {n}");
        }
    }

    #[test]
    fn transitivity_examples() {
        assert!(sys("forbid=").is_transitive(1).unwrap().transitive);
        assert!(sys("forbid=11").is_transitive(1).unwrap().transitive);
        assert!(!sys("forbid=01,10").is_transitive(1).unwrap().transitive);
        assert!(!sys("forbid=01").is_transitive(1).unwrap().transitive);
        let empty = sys("forbid=00,01,10,11").is_transitive(1).unwrap();
        assert!(!empty.transitive && empty.empty_subshift);
        assert!(matches!(
            sys("forbid=101").is_transitive(1),
            Err(Error::WindowTooShort { order: 1, needed: 2 })
        ));
    }

    #[test]
    fn dead_end_windows_are_not_essential() {
        // a 0 can never be followed, so only 1^∞ survives
        let t = sys("forbid=00,01").is_transitive(1).unwrap();
        assert!(t.transitive);
        assert_eq!(t.essential_vertices, 1);
    }

    #[test]
    fn periodic_point_examples() {
        assert_eq!(sys("forbid=").periodic_points(3).count, 8);
        let counts: Vec<usize> = (1..=5).map(|n| sys("forbid=11").periodic_points(n).count).collect();
        assert_eq!(counts, [1, 3, 4, 7, 11]);
        let p = sys("forbid=01,10").periodic_points(4);
        assert_eq!(p.words, ["0000", "1111"]);
    }

    #[test]
    fn periodic_extension_checks_wraparound() {
        let s = sys("forbid=11");
        assert!(!s.admits_periodic(&[1, 0, 1]));
        assert!(s.admits_periodic(&[1, 0, 0]));
        // a forbidden word longer than the period must still be caught
        let s = sys("forbid=0000");
        assert!(!s.admits_periodic(&[0]));
        assert!(s.admits_periodic(&[0, 0, 1]));
    }

    #[test]
    fn transfer_trace_matches_enumeration() {
        for s in SftSystem::binary_family(2) {
            for n in 1..=12 {
                let p = s.periodic_points(n);
                assert!(p.consistent(), "{s} n={n}: {} vs {:?}", p.count, p.transfer_trace);
            }
        }
        assert_eq!(sys("forbid=101").transfer_matrix(), None);
    }

    #[test]
    fn def7_examples() {
        let hit = sys("forbid=").def7_check(&[0], &[1], 10);
        assert_eq!(hit, Def7Outcome::Shared { word: "01".into(), t_u: 0, t_v: 1 });
        let miss = sys("forbid=01,10").def7_check(&[0], &[1], 10);
        assert_eq!(miss, Def7Outcome::Refuted { period_bound: 10 });
        let fixed = sys("forbid=11").def7_check(&[0], &[0], 10);
        assert_eq!(fixed, Def7Outcome::Shared { word: "0".into(), t_u: 0, t_v: 0 });
    }

    #[test]
    fn crosscheck_examples() {
        let r = sys("forbid=").proposition_crosscheck(5, 10);
        assert!(r.transitive && r.periodic_dense_to_depth && r.def7_to_depth && r.equivalence_holds);
        let r = sys("forbid=01,10").proposition_crosscheck(5, 10);
        assert!(!r.transitive && r.periodic_dense_to_depth && !r.def7_to_depth);
        assert!(r.equivalence_holds);
        assert_eq!(r.counterexample, Some(("0".into(), "1".into())));
    }

    #[test]
    fn crosscheck_agrees_with_direct_search() {
        let s = sys("forbid=00");
        let r = s.proposition_crosscheck(3, 6);
        let direct = (1..=3)
            .flat_map(|n| s.allowed_words(n))
            .all(|u| {
                (1..=3)
                    .flat_map(|n| s.allowed_words(n))
                    .all(|v| matches!(s.def7_check(&u, &v, 6), Def7Outcome::Shared { .. }))
            });
        assert_eq!(r.def7_to_depth, direct);
    }

    #[test]
    fn binary_family_sizes() {
        assert_eq!(SftSystem::binary_family(1).len(), 4);
        assert_eq!(SftSystem::binary_family(2).len(), 16);
        assert_eq!(SftSystem::binary_family(2)[0], sys("forbid="));
    }

    #[test]
    fn invalid_systems_are_rejected() {
        assert_eq!(SftSystem::new(1, []), Err(Error::InvalidAlphabet(1)));
        assert_eq!(SftSystem::new(2, [vec![]]), Err(Error::EmptyForbiddenWord));
        assert!(matches!(SftSystem::new(2, [vec![2]]), Err(Error::SymbolOutOfRange { .. })));
    }
}
