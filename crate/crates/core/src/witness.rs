//! Witness-producing transitivity, periodic density and shared periodic
//! orbits for the shift on `{0,1}^A`.
//!
//! Generators return plain data. The `verify_*` functions re-check a
//! witness by evaluating points against cylinders and never look at how it
//! was built.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::space::{Coordinate, Cylinder, FiberLabel, FiberWord, Point};

/// `σ^k(W) ⊆ V` with `W ⊆ U`, so `σ^k(U) ∩ V ≠ ∅`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitivityWitness {
    pub k: usize,
    pub w: Cylinder,
}

/// A periodic point whose orbit meets `U` at time `t_u` and `V` at time
/// `t_v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharedOrbitWitness {
    pub p: Point,
    pub t_u: usize,
    pub t_v: usize,
}

/// Builds `N(K(S, k₁+k₂), ψ)` from the normal forms `(S₁,k₁,φ₁)` of `u` and
/// `(S₂,k₂,φ₂)` of `v`: `ψ` copies `φ₁` on the first `k₁` positions of
/// `S₁`, copies `φ₂` shifted by `k₁` on `S₂`, and is 0 elsewhere.
///
/// `anchor` only matters when an argument is the whole space.
pub fn transitivity_witness(u: &Cylinder, v: &Cylinder, anchor: &FiberLabel) -> TransitivityWitness {
    let first = u.normalize(anchor);
    let second = v.normalize(anchor);
    let k1 = first.depth;
    let k2 = second.depth;
    let fibers = first.fibers.union(&second.fibers);

    let mut constraints = Vec::new();
    for fiber in fibers {
        for i in 1..=k1 + k2 {
            let bit = if first.fibers.contains(fiber) && i <= k1 {
                first.bit(fiber, i)
            } else if second.fibers.contains(fiber) && i > k1 {
                second.bit(fiber, i - k1)
            } else {
                false
            };
            let c = Coordinate::new(fiber.clone(), i).expect("i >= 1");
            constraints.push((c, bit));
        }
    }
    let w = Cylinder::new(constraints).expect("K(S,k) coordinates are distinct");
    TransitivityWitness { k: k1, w }
}

pub fn verify_transitivity(u: &Cylinder, v: &Cylinder, witness: &TransitivityWitness) -> bool {
    witness.k >= 1 && witness.w.is_subset_of(u) && witness.w.image(witness.k).is_subset_of(v)
}

/// A point of `u` fixed by `σ^k`, where `(S,k,φ)` is the normal form of
/// `u`: each fiber of `S` repeats its block `φ(α,1) … φ(α,k)` forever.
pub fn periodic_point_in(u: &Cylinder, anchor: &FiberLabel) -> Point {
    let basic = u.normalize(anchor);
    Point::from_fibers(basic.fibers.iter().map(|f| {
        let word = FiberWord::periodic(basic.block(f)).expect("depth >= 1");
        (f.clone(), word)
    }))
    .expect("fiber set has no duplicates")
}

/// A point of `U` together with a return time `k ≥ 1`: `σ^k(f) = f`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicWitness {
    pub f: Point,
    pub k: usize,
}

pub fn periodic_witness(u: &Cylinder, anchor: &FiberLabel) -> PeriodicWitness {
    PeriodicWitness {
        f: periodic_point_in(u, anchor),
        k: u.normalize(anchor).depth,
    }
}

pub fn verify_periodic(u: &Cylinder, witness: &PeriodicWitness) -> bool {
    witness.k >= 1 && u.contains(&witness.f) && witness.f.shift(witness.k) == witness.f
}

/// Pulls `v` back along the transitivity witness, meets it with `u`, and
/// takes the periodic point of the result. Its orbit is in `u` at time 0
/// and in `v` at time `k`.
pub fn shared_orbit_witness(u: &Cylinder, v: &Cylinder, anchor: &FiberLabel) -> Result<SharedOrbitWitness> {
    let TransitivityWitness { k, .. } = transitivity_witness(u, v, anchor);
    let meet = v.preimage(k).intersect(u).ok_or_else(|| {
        Error::Invariant(format!("σ^-{k}({v}) ∩ {u} is empty"))
    })?;
    let p = periodic_point_in(&meet, anchor);
    Ok(SharedOrbitWitness { p, t_u: 0, t_v: k })
}

pub fn verify_shared_orbit(u: &Cylinder, v: &Cylinder, witness: &SharedOrbitWitness) -> bool {
    witness.p.primitive_period().is_some()
        && u.contains(&witness.p.shift(witness.t_u))
        && v.contains(&witness.p.shift(witness.t_v))
}

/// The transitivity time a shared orbit implies: the least `n ≥ 1`
/// congruent to `t_v − t_u` modulo the period of `p`. Then
/// `σ^{t_u}(p) ∈ U` and `σ^n(σ^{t_u}(p)) ∈ V`.
pub fn transit_time(witness: &SharedOrbitWitness) -> Option<usize> {
    let period = witness.p.primitive_period()?;
    let diff = (witness.t_v + period - witness.t_u % period) % period;
    Some(if diff == 0 { period } else { diff })
}
