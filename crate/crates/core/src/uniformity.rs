//! The product uniformity on `{0,1}^A`, realized by the base of entourages
//! "agree on the first `k` positions of every fiber in `S`".
//!
//! Each index `(S,k)` yields balls that are cylinders over `K(S,k)`, and the
//! underlying relation is an equivalence relation. That is why the symmetry
//! and composition axioms of a uniform neighborhood system are witnessed by
//! the index itself.

use std::collections::BTreeSet;
use std::fmt;

use rand::rngs::StdRng;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sample;
use crate::space::{lcm, Coordinate, Cylinder, FiberLabel, Point};

/// Index `(S,k)` of the uniform neighborhood system.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UIndex {
    fibers: BTreeSet<FiberLabel>,
    depth: usize,
}

impl UIndex {
    pub fn new(fibers: BTreeSet<FiberLabel>, depth: usize) -> Result<Self> {
        if fibers.is_empty() || depth == 0 {
            return Err(Error::DegenerateIndex);
        }
        Ok(Self { fibers, depth })
    }

    pub fn single(fiber: FiberLabel, depth: usize) -> Result<Self> {
        Self::new(BTreeSet::from([fiber]), depth)
    }

    pub fn fibers(&self) -> &BTreeSet<FiberLabel> {
        &self.fibers
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    /// The coordinate block `K(S,k)`.
    pub fn coordinates(&self) -> impl Iterator<Item = Coordinate> + '_ {
        self.fibers.iter().flat_map(move |f| {
            (1..=self.depth).map(move |i| Coordinate::new(f.clone(), i).expect("i >= 1"))
        })
    }

    /// `V_(S,k)(p)`: the cylinder pinning `p`'s bits on `K(S,k)`.
    pub fn ball(&self, p: &Point) -> Cylinder {
        Cylinder::new(self.coordinates().map(|c| {
            let b = p.eval(&c);
            (c, b)
        }))
        .expect("K(S,k) coordinates are distinct")
    }

    /// `q ∈ V_(S,k)(p)`.
    pub fn relates(&self, p: &Point, q: &Point) -> bool {
        self.coordinates().all(|c| p.eval(&c) == q.eval(&c))
    }

    /// Upper bound of both indices in the directed order.
    pub fn join(&self, other: &UIndex) -> UIndex {
        UIndex {
            fibers: self.fibers.union(&other.fibers).cloned().collect(),
            depth: self.depth.max(other.depth),
        }
    }

    /// `self ≽ other`: `self` is at least as fine as `other`.
    pub fn refines(&self, other: &UIndex) -> bool {
        self.fibers.is_superset(&other.fibers) && self.depth >= other.depth
    }

    /// The `β` promised by the symmetry axiom for `self`.
    pub fn symmetry_witness(&self) -> UIndex {
        self.clone()
    }

    /// The `β` promised by the composition axiom for `self`.
    pub fn composition_witness(&self) -> UIndex {
        self.clone()
    }
}

/// Index of the first coordinate where `p` and `q` differ: fibers in
/// lexicographic order, then positions ascending. Its balls around `p` and
/// `q` are disjoint.
pub fn separating_index(p: &Point, q: &Point) -> Result<UIndex> {
    let labels: BTreeSet<&FiberLabel> = p.fibers().chain(q.fibers()).map(|(l, _)| l).collect();
    for label in labels {
        let (u, v) = (p.word(label), q.word(label));
        let horizon = u.transient().len()
            + v.transient().len()
            + lcm(u.period().len(), v.period().len());
        if let Some(i) = (1..=horizon).find(|&i| u.bit(i) != v.bit(i)) {
            return UIndex::single(label.clone(), i);
        }
    }
    Err(Error::IdenticalPoints)
}

/// The operations a uniform neighborhood system exposes to the axiom
/// checker. [`CoordinateUniformity`] is the only real implementation; the
/// trait exists so the checker itself can be tested against broken systems.
pub trait NeighborhoodSystem {
    fn ball(&self, idx: &UIndex, p: &Point) -> Cylinder;
    fn refines(&self, a: &UIndex, b: &UIndex) -> bool;
    fn join(&self, a: &UIndex, b: &UIndex) -> UIndex;
    fn symmetry_witness(&self, idx: &UIndex) -> UIndex;
    fn composition_witness(&self, idx: &UIndex) -> UIndex;

    fn relates(&self, idx: &UIndex, p: &Point, q: &Point) -> bool {
        self.ball(idx, p).contains(q)
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CoordinateUniformity;

impl NeighborhoodSystem for CoordinateUniformity {
    fn ball(&self, idx: &UIndex, p: &Point) -> Cylinder {
        idx.ball(p)
    }

    fn refines(&self, a: &UIndex, b: &UIndex) -> bool {
        a.refines(b)
    }

    fn join(&self, a: &UIndex, b: &UIndex) -> UIndex {
        a.join(b)
    }

    fn symmetry_witness(&self, idx: &UIndex) -> UIndex {
        idx.symmetry_witness()
    }

    fn composition_witness(&self, idx: &UIndex) -> UIndex {
        idx.composition_witness()
    }

    fn relates(&self, idx: &UIndex, p: &Point, q: &Point) -> bool {
        idx.relates(p, q)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomId {
    #[serde(rename = "UNS1")]
    Uns1,
    #[serde(rename = "UNS2")]
    Uns2,
    #[serde(rename = "UNS3")]
    Uns3,
    #[serde(rename = "UNS4")]
    Uns4,
    #[serde(rename = "UNS5")]
    Uns5,
    /// Every entourage contains the diagonal.
    #[serde(rename = "ENT1")]
    Ent1,
    /// Entourages are closed under inversion.
    #[serde(rename = "ENT2")]
    Ent2,
    /// `V∘V ⊆ U` with `V = U`.
    #[serde(rename = "ENT3")]
    Ent3,
    /// Intersections contain the entourage of the join.
    #[serde(rename = "ENT4")]
    Ent4,
    /// Supersets of entourages are entourages.
    #[serde(rename = "ENT5")]
    Ent5,
    /// Distinct points have disjoint balls.
    #[serde(rename = "HAUSDORFF")]
    Hausdorff,
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            AxiomId::Uns1 => "UNS1",
            AxiomId::Uns2 => "UNS2",
            AxiomId::Uns3 => "UNS3",
            AxiomId::Uns4 => "UNS4",
            AxiomId::Uns5 => "UNS5",
            AxiomId::Ent1 => "ENT1",
            AxiomId::Ent2 => "ENT2",
            AxiomId::Ent3 => "ENT3",
            AxiomId::Ent4 => "ENT4",
            AxiomId::Ent5 => "ENT5",
            AxiomId::Hausdorff => "HAUSDORFF",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub samples: usize,
    pub failures: Vec<String>,
}

impl AxiomReport {
    fn new(axiom: AxiomId) -> Self {
        Self {
            axiom,
            samples: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if !ok {
            self.failures.push(describe());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleSpec {
    pub instances: usize,
    pub seed: u64,
}

impl Default for SampleSpec {
    fn default() -> Self {
        Self {
            instances: 1000,
            seed: 7,
        }
    }
}

/// Runs UNS(1)–UNS(5) and the entourage axioms on sampled instances of
/// `(α, β, x, y, z)`, where `y` is drawn near `x` and `z` near `y` so the
/// implications are rarely vacuous.
pub fn uns_axioms_check(system: &impl NeighborhoodSystem, spec: SampleSpec) -> Vec<AxiomReport> {
    use AxiomId::*;
    let mut rng = StdRng::seed_from_u64(spec.seed);
    let mut reports: Vec<AxiomReport> = [Uns1, Uns2, Uns3, Uns4, Uns5, Ent1, Ent2, Ent3, Ent4, Ent5]
        .into_iter()
        .map(AxiomReport::new)
        .collect();

    for _ in 0..spec.instances {
        let alpha = sample::index(&mut rng);
        let beta = sample::index(&mut rng);
        let x = sample::point(&mut rng);
        let y = sample::nearby_point(&mut rng, &x, &alpha);
        let z = sample::nearby_point(&mut rng, &y, &alpha);
        let join = system.join(&alpha, &beta);
        let rel = |i: &UIndex, p: &Point, q: &Point| system.relates(i, p, q);
        let ctx = || format!("alpha={alpha} beta={beta} x={x} y={y} z={z}");

        reports[0].record(system.ball(&alpha, &x).contains(&x), ctx);

        reports[1].record(
            system.refines(&join, &alpha) && system.refines(&join, &beta),
            || format!("join {join} is not an upper bound; {}", ctx()),
        );

        let mut nested = true;
        for (fine, coarse) in [(&alpha, &beta), (&beta, &alpha), (&join, &alpha), (&join, &beta)] {
            if system.refines(fine, coarse) {
                nested &= system.ball(fine, &x).is_subset_of(&system.ball(coarse, &x));
            }
        }
        reports[2].record(nested, || format!("order does not shrink balls; {}", ctx()));

        let b4 = system.symmetry_witness(&alpha);
        reports[3].record(!rel(&b4, &y, &x) || rel(&alpha, &x, &y), || {
            format!("symmetry witness {b4} fails; {}", ctx())
        });

        let b5 = system.composition_witness(&alpha);
        reports[4].record(
            !(rel(&b5, &x, &y) && rel(&b5, &y, &z)) || rel(&alpha, &x, &z),
            || format!("composition witness {b5} fails; {}", ctx()),
        );

        reports[5].record(rel(&alpha, &x, &x), ctx);
        reports[6].record(!rel(&alpha, &x, &y) || rel(&alpha, &y, &x), ctx);
        reports[7].record(
            !(rel(&alpha, &x, &y) && rel(&alpha, &y, &z)) || rel(&alpha, &x, &z),
            ctx,
        );
        reports[8].record(
            !rel(&join, &x, &y) || (rel(&alpha, &x, &y) && rel(&beta, &x, &y)),
            ctx,
        );
        reports[9].record(
            !system.refines(&alpha, &beta) || !rel(&alpha, &x, &y) || rel(&beta, &x, &y),
            ctx,
        );
    }
    reports
}

/// Checks on sampled distinct pairs that [`separating_index`] yields
/// disjoint balls.
pub fn hausdorff_check(samples: usize, seed: u64) -> AxiomReport {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut report = AxiomReport::new(AxiomId::Hausdorff);
    while report.samples < samples {
        let p = sample::point(&mut rng);
        let q = sample::point(&mut rng);
        if p == q {
            continue;
        }
        match separating_index(&p, &q) {
            Ok(idx) => report.record(idx.ball(&p).intersect(&idx.ball(&q)).is_none(), || {
                format!("balls of {idx} around {p} and {q} meet")
            }),
            Err(e) => report.record(false, || format!("{p} vs {q}: {e}")),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idx(s: &str) -> UIndex {
        s.parse().unwrap()
    }

    fn pt(s: &str) -> Point {
        s.parse().unwrap()
    }

    fn cyl(s: &str) -> Cylinder {
        s.parse().unwrap()
    }

    #[test]
    fn ball_examples() {
        assert_eq!(idx("<{a},2>").ball(&pt("zero")), cyl("{a:1=0,a:2=0}"));
        assert_eq!(idx("<{a},2>").ball(&pt("a=|10")), cyl("{a:1=1,a:2=0}"));
        assert_eq!(idx("<{a,b},1>").ball(&pt("a=|1")), cyl("{a:1=1,b:1=0}"));
    }

    #[test]
    fn relates_examples() {
        assert!(idx("<{a},2>").relates(&pt("zero"), &pt("zero")));
        assert!(!idx("<{a},2>").relates(&pt("a=|10"), &pt("a=|01")));
        assert!(idx("<{a},1>").relates(&pt("zero"), &pt("a=|01")));
        let i = idx("<{a,c},3>");
        let (p, q) = (pt("a=1|0;c=|01"), pt("a=1|0;c=|011"));
        assert_eq!(i.relates(&p, &q), i.ball(&p).contains(&q));
    }

    #[test]
    fn join_and_order_examples() {
        assert_eq!(idx("<{a},1>").join(&idx("<{b},2>")), idx("<{a,b},2>"));
        assert!(idx("<{a,b},2>").refines(&idx("<{a},1>")));
        assert!(!idx("<{a},1>").refines(&idx("<{a,b},2>")));
        assert!(!idx("<{a},3>").refines(&idx("<{b},1>")));
        let x = idx("<{a,c},4>");
        assert_eq!(x.join(&x), x);
    }

    #[test]
    fn separating_index_examples() {
        assert_eq!(separating_index(&pt("zero"), &pt("a=|10")), Ok(idx("<{a},1>")));
        assert_eq!(separating_index(&pt("zero"), &pt("a=|01")), Ok(idx("<{a},2>")));
        assert_eq!(
            separating_index(&pt("a=|10"), &pt("a=|10")),
            Err(Error::IdenticalPoints)
        );
    }

    #[test]
    fn separating_index_reaches_late_differences() {
        // periods 2 and 3 first disagree past both transients
        let p = pt("a=0000|10");
        let q = pt("a=0000|100");
        let i = separating_index(&p, &q).unwrap();
        let first = (1..).find(|&n| p.bit(&"a".parse().unwrap(), n) != q.bit(&"a".parse().unwrap(), n));
        assert_eq!(Some(i.depth()), first);
        assert!(i.ball(&p).intersect(&i.ball(&q)).is_none());
        // lexicographic fiber order wins over position
        assert_eq!(separating_index(&pt("b=|1"), &pt("a=|01;b=|1")), Ok(idx("<{a},2>")));
    }

    #[test]
    fn default_axiom_suite_passes() {
        for report in uns_axioms_check(&CoordinateUniformity, SampleSpec::default()) {
            assert!(report.passed(), "{}: {:?}", report.axiom, &report.failures[..1]);
            assert_eq!(report.samples, 1000);
        }
    }

    /// Reverses the order and hands back a strictly coarser index as the
    /// join. The checker must notice.
    struct InvertedOrder;

    impl NeighborhoodSystem for InvertedOrder {
        fn ball(&self, idx: &UIndex, p: &Point) -> Cylinder {
            idx.ball(p)
        }
        fn refines(&self, a: &UIndex, b: &UIndex) -> bool {
            b.refines(a)
        }
        fn join(&self, a: &UIndex, b: &UIndex) -> UIndex {
            a.join(b)
        }
        fn symmetry_witness(&self, idx: &UIndex) -> UIndex {
            idx.clone()
        }
        fn composition_witness(&self, idx: &UIndex) -> UIndex {
            idx.clone()
        }
    }

    #[test]
    fn inverted_order_is_caught() {
        let reports = uns_axioms_check(&InvertedOrder, SampleSpec { instances: 200, seed: 7 });
        let uns3 = reports.iter().find(|r| r.axiom == AxiomId::Uns3).unwrap();
        assert!(!uns3.failures.is_empty());
        let uns2 = reports.iter().find(|r| r.axiom == AxiomId::Uns2).unwrap();
        assert!(!uns2.failures.is_empty());
    }

    /// Uses a coarser index as the composition witness.
    struct CoarseWitness;

    impl NeighborhoodSystem for CoarseWitness {
        fn ball(&self, idx: &UIndex, p: &Point) -> Cylinder {
            idx.ball(p)
        }
        fn refines(&self, a: &UIndex, b: &UIndex) -> bool {
            a.refines(b)
        }
        fn join(&self, a: &UIndex, b: &UIndex) -> UIndex {
            a.join(b)
        }
        fn symmetry_witness(&self, idx: &UIndex) -> UIndex {
            idx.clone()
        }
        fn composition_witness(&self, idx: &UIndex) -> UIndex {
            let first = idx.fibers().iter().next().unwrap().clone();
            UIndex::single(first, 1).unwrap()
        }
    }

    #[test]
    fn weak_composition_witness_is_caught() {
        let reports = uns_axioms_check(&CoarseWitness, SampleSpec { instances: 500, seed: 3 });
        let uns5 = reports.iter().find(|r| r.axiom == AxiomId::Uns5).unwrap();
        assert!(!uns5.failures.is_empty());
    }

    #[test]
    fn hausdorff_on_random_pairs() {
        let r = hausdorff_check(500, 11);
        assert_eq!(r.samples, 500);
        assert!(r.passed(), "{:?}", r.failures);
    }
}
