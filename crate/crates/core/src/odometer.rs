//! The binary odometer on one fiber, and the two independence demos: a
//! system with dense periodic points that is not transitive, and a
//! transitive map with no periodic points.
//!
//! The odometer adds 1 with carry to a fiber read as a 2-adic integer,
//! least significant bit at position 1. It stands in for an irrational
//! rotation, which is not representable here.

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::sample;
use crate::sft::{OracleReport, SftSystem};
use crate::space::FiberWord;

fn constant(bit: bool) -> FiberWord {
    FiberWord::periodic(vec![bit]).expect("nonempty")
}

/// Flips the run of `from` bits at the front and the first `!from` after
/// it. The all-`from` word wraps to the all-`!from` word.
fn carry(w: &FiberWord, from: bool) -> FiberWord {
    if *w == constant(from) {
        return constant(!from);
    }
    let first = (1..=w.description_len())
        .find(|&i| w.bit(i) != from)
        .expect("a non-constant canonical word shows the other bit within its description");
    (1..first).fold(w.with_bit(first, from), |acc, i| acc.with_bit(i, !from))
}

/// `x + 1`.
pub fn step(w: &FiberWord) -> FiberWord {
    carry(w, true)
}

/// `x − 1`.
pub fn step_back(w: &FiberWord) -> FiberWord {
    carry(w, false)
}

pub fn iterate(w: &FiberWord, n: usize) -> FiberWord {
    (0..n).fold(w.clone(), |acc, _| step(&acc))
}

fn prefix(w: &FiberWord, depth: usize) -> String {
    (1..=depth).map(|i| if w.bit(i) { '1' } else { '0' }).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OdometerReport {
    pub depth: usize,
    /// Depth-`depth` prefixes along the orbit of zero, one full cycle.
    pub prefix_cycle: Vec<String>,
    /// From a point in every depth-`depth` cylinder, the orbit enters every
    /// depth-`depth` cylinder within `2^depth` steps.
    pub transitive_to_depth: bool,
    pub samples: usize,
    pub period_bound: usize,
    /// Sampled points `x` with `stepⁿ(x) = x` for some `1 ≤ n ≤ period_bound`.
    pub periodic_points_found: usize,
    /// `step_back ∘ step` and `step ∘ step_back` fix every sample.
    pub bijective_on_samples: bool,
}

pub fn odometer_report(depth: usize, period_bound: usize, samples: usize, seed: u64) -> OdometerReport {
    let cycle_len = 1usize << depth;
    let prefix_cycle: Vec<String> = (0..cycle_len)
        .scan(FiberWord::zero(), |w, _| {
            let p = prefix(w, depth);
            *w = step(w);
            Some(p)
        })
        .collect();

    let transitive_to_depth = (0..cycle_len).all(|start| {
        let bits = (0..depth).map(|i| start >> i & 1 == 1).collect();
        let mut w = FiberWord::finite(bits);
        let mut seen = vec![false; cycle_len];
        for _ in 0..cycle_len {
            w = step(&w);
            let value = (1..=depth).filter(|&i| w.bit(i)).map(|i| 1 << (i - 1)).sum::<usize>();
            seen[value] = true;
        }
        seen.into_iter().all(|s| s)
    });

    let mut rng = StdRng::seed_from_u64(seed);
    let mut periodic_points_found = 0;
    let mut bijective_on_samples = true;
    for _ in 0..samples {
        let x = sample::word(&mut rng);
        bijective_on_samples &= step_back(&step(&x)) == x && step(&step_back(&x)) == x;
        let mut w = x.clone();
        for _ in 1..=period_bound {
            w = step(&w);
            if w == x {
                periodic_points_found += 1;
                break;
            }
        }
    }

    OdometerReport {
        depth,
        prefix_cycle,
        transitive_to_depth,
        samples,
        period_bound,
        periodic_points_found,
        bijective_on_samples,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemarkReport {
    /// Constant sequences only: dense periodic points, not transitive.
    pub dense_not_transitive: OracleReport,
    /// Transitive on cylinders, no periodic points among samples.
    pub transitive_not_periodic: OdometerReport,
    pub note: String,
    pub clean: bool,
}

pub fn remark_demos(depth: usize, period_bound: usize, samples: usize, seed: u64) -> RemarkReport {
    let constants = SftSystem::new(2, [vec![0, 1], vec![1, 0]]).expect("binary words");
    let dense_not_transitive = constants.proposition_crosscheck(depth, period_bound);
    let transitive_not_periodic = odometer_report(depth, period_bound, samples, seed);
    let clean = dense_not_transitive.periodic_dense_to_depth
        && !dense_not_transitive.transitive
        && dense_not_transitive.equivalence_holds
        && transitive_not_periodic.transitive_to_depth
        && transitive_not_periodic.periodic_points_found == 0
        && transitive_not_periodic.bijective_on_samples;
    RemarkReport {
        dense_not_transitive,
        transitive_not_periodic,
        note: "the binary odometer is a discrete analogue of an irrational rotation, not the rotation itself"
            .to_owned(),
        clean,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FiberWord {
        s.parse().unwrap()
    }

    #[test]
    fn step_examples() {
        let one = step(&FiberWord::zero());
        assert_eq!(one, w("1|0"));
        assert_eq!(step(&one), w("01|0"));
        assert_eq!(step(&w("|1")), FiberWord::zero());
        assert_eq!(step(&w("11|0")), w("001|0"));
        // ...0101 + 1 with the pattern 10 repeating from position 1
        assert_eq!(step(&w("|10")), w("01|10"));
        let order: Vec<String> = (0..4).map(|n| prefix(&iterate(&FiberWord::zero(), n), 2)).collect();
        assert_eq!(order, ["00", "10", "01", "11"]);
    }

    #[test]
    fn step_back_inverts_step() {
        assert_eq!(step_back(&FiberWord::zero()), w("|1"));
        for s in ["|1", "1|0", "0110|01", "|011", "10|0"] {
            assert_eq!(step_back(&step(&w(s))), w(s), "{s}");
            assert_eq!(step(&step_back(&w(s))), w(s), "{s}");
        }
    }

    #[test]
    fn report_on_depth_six() {
        let r = odometer_report(6, 12, 200, 0);
        assert_eq!(r.prefix_cycle.len(), 64);
        let distinct: std::collections::BTreeSet<_> = r.prefix_cycle.iter().collect();
        assert_eq!(distinct.len(), 64);
        assert!(r.transitive_to_depth);
        assert_eq!(r.periodic_points_found, 0);
        assert!(r.bijective_on_samples);
    }

    #[test]
    fn remark_report_is_clean() {
        let r = remark_demos(5, 10, 50, 1);
        assert!(r.clean);
        assert!(!r.dense_not_transitive.transitive);
        assert!(r.dense_not_transitive.periodic_dense_to_depth);
    }
}
