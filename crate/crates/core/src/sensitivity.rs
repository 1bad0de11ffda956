//! Constructive sensitive dependence for the shift.
//!
//! The pipeline fixes a pair of disjoint periodic orbits and an index `η`
//! separating them before any input point is seen, derives the sensitivity
//! index `α` from `η` alone, and then for each `x` and neighborhood `N_x`
//! builds a point of `N_x` whose orbit is `α`-separated from the orbit of
//! `x` at an explicit time `m`.
//!
//! Because every entourage here is an equivalence relation, two balls of the
//! same index are either equal or disjoint. The final case split rests on
//! exactly that.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Cylinder, FiberLabel, FiberWord, Point};
use crate::uniformity::{separating_index, UIndex};
use crate::witness::{periodic_point_in, transitivity_witness};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityConfig {
    /// Fiber carrying the alternating periodic point.
    pub designated: FiberLabel,
}

/// The two periodic points and their separating index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPair {
    pub r: Point,
    pub s: Point,
    pub eta: UIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Chosen {
    Y,
    P,
}

/// Audit record of one sensitivity construction. Every intermediate is
/// kept; [`verify_sensitive`] only reads `alpha`, `chosen` and `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SensitivityWitness {
    pub alpha: UIndex,
    pub q: Point,
    /// Primitive period of `p`.
    pub n: usize,
    /// `W₀ … W_n`.
    pub chain: Vec<Cylinder>,
    /// Transitivity time from `U` into `W_n`.
    pub k: usize,
    pub a: usize,
    pub b: usize,
    pub y: Point,
    pub p: Point,
    pub chosen_from: Chosen,
    pub chosen: Point,
    /// Separation time `a·n`.
    pub m: usize,
}

/// `r = 0`, `s` alternating `1010…` on the designated fiber, and `η` the
/// join of the separating indices of every `(r_i, s_j)` orbit pair.
pub fn canonical_pair_and_eta(cfg: &SensitivityConfig) -> CanonicalPair {
    let r = Point::zero();
    let s = Point::zero().with_word(
        cfg.designated.clone(),
        FiberWord::periodic(vec![true, false]).expect("nonempty"),
    );
    let orbit_r = r.orbit(usize::MAX).points;
    let orbit_s = s.orbit(usize::MAX).points;
    let eta = orbit_r
        .iter()
        .flat_map(|u| orbit_s.iter().map(move |v| (u, v)))
        .map(|(u, v)| separating_index(u, v).expect("orbits of r and s are disjoint"))
        .reduce(|acc, i| acc.join(&i))
        .expect("both orbits are nonempty");
    CanonicalPair { r, s, eta }
}

/// The orbit point `q_j = σ^{j mod period}(q)`.
fn orbit_point(q: &Point, j: usize) -> Point {
    let period = q.primitive_period().expect("q is periodic");
    q.shift(j % period)
}

/// Picks whichever of `r`, `s` keeps its whole orbit `η`-away from `x`,
/// preferring `r`.
pub fn select_q(x: &Point, pair: &CanonicalPair) -> Point {
    let clear = |q: &Point| q.orbit(usize::MAX).points.iter().all(|qj| !pair.eta.ball(qj).contains(x));
    if clear(&pair.r) {
        pair.r.clone()
    } else {
        debug_assert!(clear(&pair.s), "x cannot be near both disjoint orbits");
        pair.s.clone()
    }
}

/// From `η`, take `β` composing into `η`, then `β₀` symmetric to `β`, and
/// join them. With equivalence-relation entourages all three coincide.
pub fn lemma2_alpha(eta: &UIndex) -> UIndex {
    let beta = eta.composition_witness();
    let beta0 = beta.symmetry_witness();
    beta.join(&beta0)
}

/// `W₀ = V_α(q_n)` and `W_i = σ⁻¹(W_{i−1}) ∩ V_α(q_{n−i})` for `1 ≤ i ≤ n`.
pub fn backward_chain(q: &Point, n: usize, alpha: &UIndex) -> Result<Vec<Cylinder>> {
    if q.primitive_period().is_none() {
        return Err(Error::Invariant(format!("chain base {q} is not periodic")));
    }
    let mut chain = vec![alpha.ball(&orbit_point(q, n))];
    for i in 1..=n {
        let next = chain[i - 1]
            .preimage(1)
            .intersect(&alpha.ball(&orbit_point(q, n - i)))
            .ok_or_else(|| Error::Invariant(format!("chain link W_{i} is empty")))?;
        chain.push(next);
    }
    Ok(chain)
}

/// Builds a sensitivity witness for `x` inside `nbhd`.
pub fn sensitivity_witness(x: &Point, nbhd: &Cylinder, cfg: &SensitivityConfig) -> Result<SensitivityWitness> {
    if !nbhd.contains(x) {
        return Err(Error::OutsideNeighborhood {
            point: x.to_string(),
            nbhd: nbhd.to_string(),
        });
    }
    let pair = canonical_pair_and_eta(cfg);
    let alpha = lemma2_alpha(&pair.eta);
    let q = select_q(x, &pair);

    let u = nbhd
        .intersect(&alpha.ball(x))
        .ok_or_else(|| Error::Invariant("x lies in both N_x and its own ball".into()))?;
    let p = periodic_point_in(&u, &cfg.designated);
    let n = p
        .primitive_period()
        .ok_or_else(|| Error::Invariant(format!("{p} is not periodic")))?;

    let chain = backward_chain(&q, n, &alpha)?;
    let target = chain.last().expect("chain has n + 1 >= 2 links");
    let transit = transitivity_witness(&u, target, &cfg.designated);
    let k = transit.k;
    let y = transit.w.zero_fill_point();

    // k = a·n − b with 0 ≤ b < n
    let a = k.div_ceil(n);
    let b = a * n - k;
    let m = a * n;

    let chosen_from = if alpha.relates(&x.shift(m), &y.shift(m)) {
        Chosen::P
    } else {
        Chosen::Y
    };
    let chosen = match chosen_from {
        Chosen::Y => y.clone(),
        Chosen::P => p.clone(),
    };
    Ok(SensitivityWitness {
        alpha,
        q,
        n,
        chain,
        k,
        a,
        b,
        y,
        p,
        chosen_from,
        chosen,
        m,
    })
}

/// Checks the sensitive-dependence contract by evaluation only: the chosen
/// point is in `nbhd`, differs from `x`, and after `m` steps lies outside
/// the `alpha`-ball of `σ^m(x)`.
pub fn verify_sensitive(x: &Point, witness: &SensitivityWitness, nbhd: &Cylinder) -> bool {
    nbhd.contains(&witness.chosen)
        && witness.chosen != *x
        && !witness
            .alpha
            .relates(&x.shift(witness.m), &witness.chosen.shift(witness.m))
}
