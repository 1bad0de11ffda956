//! Seeded generators for points, cylinders, indices and systems.
//!
//! Sizes are kept small (at most four fibers, depth at most four) so that
//! randomly drawn pairs overlap often enough to exercise every code path.

use std::collections::BTreeSet;

use rand::seq::index::sample as sample_indices;
use rand::Rng;

use crate::sft::SftSystem;
use crate::space::{Coordinate, Cylinder, FiberLabel, FiberWord, Point};
use crate::uniformity::UIndex;

pub const FIBER_POOL: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

pub fn label(rng: &mut impl Rng) -> FiberLabel {
    FiberLabel::new(FIBER_POOL[rng.gen_range(0..FIBER_POOL.len())]).expect("pool labels are valid")
}

fn labels(rng: &mut impl Rng, count: usize) -> Vec<FiberLabel> {
    sample_indices(rng, FIBER_POOL.len(), count)
        .into_iter()
        .map(|i| FiberLabel::new(FIBER_POOL[i]).expect("pool labels are valid"))
        .collect()
}

fn bits(rng: &mut impl Rng, len: usize) -> Vec<bool> {
    (0..len).map(|_| rng.gen()).collect()
}

pub fn word(rng: &mut impl Rng) -> FiberWord {
    let t = rng.gen_range(0..=4);
    let p = rng.gen_range(1..=4);
    FiberWord::new(bits(rng, t), bits(rng, p)).expect("period is nonempty")
}

/// Up to three nonzero fibers, each with transient ≤ 4 and period ≤ 4.
pub fn point(rng: &mut impl Rng) -> Point {
    let n = rng.gen_range(0..=3);
    Point::from_fibers(labels(rng, n).into_iter().map(|l| (l, word(rng)))).expect("labels distinct")
}

/// A periodic point (every fiber has empty transient).
pub fn periodic_point(rng: &mut impl Rng) -> Point {
    let n = rng.gen_range(0..=3);
    Point::from_fibers(labels(rng, n).into_iter().map(|l| {
        let p = rng.gen_range(1..=4);
        (l, FiberWord::periodic(bits(rng, p)).expect("period is nonempty"))
    }))
    .expect("labels distinct")
}

/// At most `max_fibers` fibers, positions in `1..=max_depth`. May be the
/// whole space.
pub fn cylinder_with(rng: &mut impl Rng, max_fibers: usize, max_depth: usize) -> Cylinder {
    let n = rng.gen_range(0..=max_fibers.min(FIBER_POOL.len()));
    let mut constraints = Vec::new();
    for l in labels(rng, n) {
        let count = rng.gen_range(1..=max_depth);
        for i in sample_indices(rng, max_depth, count) {
            let c = Coordinate::new(l.clone(), i + 1).expect("positive");
            constraints.push((c, rng.gen()));
        }
    }
    Cylinder::new(constraints).expect("positions drawn without replacement")
}

pub fn cylinder(rng: &mut impl Rng) -> Cylinder {
    cylinder_with(rng, 4, 4)
}

/// A cylinder containing `x`: random coordinates pinned to `x`'s bits.
pub fn cylinder_containing(rng: &mut impl Rng, x: &Point) -> Cylinder {
    let shape = cylinder_with(rng, 3, 5);
    Cylinder::new(shape.constraints().map(|(c, _)| (c.clone(), x.eval(c)))).expect("same coordinates")
}

pub fn index(rng: &mut impl Rng) -> UIndex {
    let n = rng.gen_range(1..=3);
    let fibers: BTreeSet<FiberLabel> = labels(rng, n).into_iter().collect();
    UIndex::new(fibers, rng.gen_range(1..=4)).expect("nonempty, depth >= 1")
}

/// A point equal to `x` except at one coordinate. Half of the time the
/// flipped coordinate lies outside `K(S,k)` of `idx`, so the result is
/// related to `x`; otherwise it is anywhere in a small window.
pub fn nearby_point(rng: &mut impl Rng, x: &Point, idx: &UIndex) -> Point {
    let c = if rng.gen_bool(0.5) {
        let fiber = label(rng);
        let pos = if idx.fibers().contains(&fiber) {
            rng.gen_range(idx.depth() + 1..=idx.depth() + 4)
        } else {
            rng.gen_range(1..=6)
        };
        Coordinate::new(fiber, pos).expect("positive")
    } else {
        Coordinate::new(label(rng), rng.gen_range(1..=6)).expect("positive")
    };
    x.with_bit(&c, !x.eval(&c))
}

/// Binary system whose forbidden words have length 1..=3.
pub fn sft(rng: &mut impl Rng) -> SftSystem {
    let count = rng.gen_range(0..=3);
    let forbidden: Vec<Vec<u8>> = (0..count)
        .map(|_| {
            let len = rng.gen_range(1..=3);
            (0..len).map(|_| rng.gen_range(0..2)).collect()
        })
        .collect();
    SftSystem::new(2, forbidden).expect("binary symbols, nonempty words")
}
