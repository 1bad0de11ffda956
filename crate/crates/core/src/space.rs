//! The generalized Cantor space `{0,1}^A`, its finitely described points,
//! cylinder sets, and the shift map.
//!
//! The index set `A` is a disjoint union of countable fibers `A_α`, each
//! enumerated by positions `1, 2, 3, ...`. The shift drops the first symbol
//! of every fiber simultaneously. Fiber labels are opaque tokens; `A` itself
//! is never enumerated.
//!
//! A [`Point`] stores finitely many fibers, each an eventually periodic
//! [`FiberWord`] in canonical form, and every other fiber is identically
//! zero. This class is closed under the shift and contains every point the
//! witness constructions produce.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::error::{Error, Result};

/// Characters that carry meaning in the text grammar.
pub const RESERVED: &[char] = &[':', '=', ',', ';', '|', '{', '}', '<', '>'];

/// Label of one fiber `A_α` of the index set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiberLabel(String);

impl FiberLabel {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        let valid = !token.is_empty()
            && token
                .chars()
                .all(|c| !c.is_whitespace() && !c.is_control() && !RESERVED.contains(&c));
        if valid {
            Ok(Self(token))
        } else {
            Err(Error::InvalidFiberLabel(token))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub(crate) fn is_label_char(c: char) -> bool {
        !c.is_whitespace() && !c.is_control() && !RESERVED.contains(&c)
    }
}

impl Default for FiberLabel {
    fn default() -> Self {
        Self("a".to_owned())
    }
}

/// A coordinate `x_{α,i}`: fiber plus 1-based position.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    fiber: FiberLabel,
    pos: usize,
}

impl Coordinate {
    pub fn new(fiber: FiberLabel, pos: usize) -> Result<Self> {
        if pos == 0 {
            return Err(Error::ZeroPosition);
        }
        Ok(Self { fiber, pos })
    }

    pub fn fiber(&self) -> &FiberLabel {
        &self.fiber
    }

    pub fn pos(&self) -> usize {
        self.pos
    }

    fn moved(&self, pos: usize) -> Self {
        debug_assert!(pos >= 1);
        Self {
            fiber: self.fiber.clone(),
            pos,
        }
    }
}

/// Eventually periodic bit sequence `transient · period · period · ...`,
/// always held in canonical form.
///
/// Canonical means the period is primitive and the transient cannot be
/// shortened by rotating its last bit into the period. Two words denote the
/// same sequence iff their canonical forms are identical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FiberWord {
    transient: Vec<bool>,
    period: Vec<bool>,
}

impl FiberWord {
    pub fn new(transient: Vec<bool>, period: Vec<bool>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(Self::canonical(transient, period))
    }

    pub fn zero() -> Self {
        Self {
            transient: Vec::new(),
            period: vec![false],
        }
    }

    pub fn periodic(period: Vec<bool>) -> Result<Self> {
        Self::new(Vec::new(), period)
    }

    /// A finite prefix followed by zeros forever.
    pub fn finite(prefix: Vec<bool>) -> Self {
        Self::canonical(prefix, vec![false])
    }

    fn canonical(mut transient: Vec<bool>, period: Vec<bool>) -> Self {
        let root = primitive_root_len(&period);
        let mut period = period[..root].to_vec();
        while let (Some(&t), Some(&p)) = (transient.last(), period.last()) {
            if t != p {
                break;
            }
            transient.pop();
            period.rotate_right(1);
        }
        Self { transient, period }
    }

    pub fn transient(&self) -> &[bool] {
        &self.transient
    }

    pub fn period(&self) -> &[bool] {
        &self.period
    }

    pub fn is_zero(&self) -> bool {
        self.transient.is_empty() && self.period == [false]
    }

    pub fn is_periodic(&self) -> bool {
        self.transient.is_empty()
    }

    /// Bit at 1-based position `pos`.
    pub fn bit(&self, pos: usize) -> bool {
        assert!(pos >= 1, "positions are 1-based");
        let i = pos - 1;
        match self.transient.get(i) {
            Some(&b) => b,
            None => self.period[(i - self.transient.len()) % self.period.len()],
        }
    }

    pub fn shift(&self, m: usize) -> Self {
        if m <= self.transient.len() {
            return Self::canonical(self.transient[m..].to_vec(), self.period.clone());
        }
        let mut period = self.period.clone();
        let offset = (m - self.transient.len()) % period.len();
        period.rotate_left(offset);
        Self {
            transient: Vec::new(),
            period,
        }
    }

    /// The same sequence with position `pos` overwritten.
    pub fn with_bit(&self, pos: usize, bit: bool) -> Self {
        assert!(pos >= 1, "positions are 1-based");
        let len = pos.max(self.transient.len());
        let mut transient: Vec<bool> = (1..=len).map(|i| self.bit(i)).collect();
        transient[pos - 1] = bit;
        let mut period = self.period.clone();
        let offset = (len - self.transient.len()) % period.len();
        period.rotate_left(offset);
        Self::canonical(transient, period)
    }

    /// `|transient| + |period|`. Both bit values that occur anywhere in the
    /// sequence occur within these positions.
    pub fn description_len(&self) -> usize {
        self.transient.len() + self.period.len()
    }
}

fn primitive_root_len(word: &[bool]) -> usize {
    let n = word.len();
    (1..=n)
        .find(|&d| n % d == 0 && (d..n).all(|i| word[i] == word[i - d]))
        .unwrap_or(n)
}

pub(crate) fn gcd(mut a: usize, mut b: usize) -> usize {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A finitely described element of `{0,1}^A`.
///
/// Fibers missing from the table are identically zero; all-zero words are
/// never stored, so derived equality is equality of points.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    fibers: BTreeMap<FiberLabel, FiberWord>,
}

impl Point {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Builds a point from per-fiber words, dropping zero fibers.
    pub fn from_fibers(fibers: impl IntoIterator<Item = (FiberLabel, FiberWord)>) -> Result<Self> {
        let mut table = BTreeMap::new();
        for (label, word) in fibers {
            if table.contains_key(&label) {
                return Err(Error::DuplicateFiber(label.0));
            }
            table.insert(label, word);
        }
        table.retain(|_, w| !w.is_zero());
        Ok(Self { fibers: table })
    }

    pub fn is_zero(&self) -> bool {
        self.fibers.is_empty()
    }

    /// Nonzero fibers in lexicographic label order.
    pub fn fibers(&self) -> impl Iterator<Item = (&FiberLabel, &FiberWord)> {
        self.fibers.iter()
    }

    pub fn word(&self, fiber: &FiberLabel) -> FiberWord {
        self.fibers.get(fiber).cloned().unwrap_or_else(FiberWord::zero)
    }

    pub fn bit(&self, fiber: &FiberLabel, pos: usize) -> bool {
        self.fibers.get(fiber).is_some_and(|w| w.bit(pos))
    }

    pub fn eval(&self, c: &Coordinate) -> bool {
        self.bit(&c.fiber, c.pos)
    }

    pub fn with_word(&self, fiber: FiberLabel, word: FiberWord) -> Self {
        let mut fibers = self.fibers.clone();
        if word.is_zero() {
            fibers.remove(&fiber);
        } else {
            fibers.insert(fiber, word);
        }
        Self { fibers }
    }

    pub fn with_bit(&self, c: &Coordinate, bit: bool) -> Self {
        let word = self.word(&c.fiber).with_bit(c.pos, bit);
        self.with_word(c.fiber.clone(), word)
    }

    /// `σ^m`.
    pub fn shift(&self, m: usize) -> Self {
        if m == 0 {
            return self.clone();
        }
        let fibers = self
            .fibers
            .iter()
            .map(|(l, w)| (l.clone(), w.shift(m)))
            .filter(|(_, w)| !w.is_zero())
            .collect();
        Self { fibers }
    }

    /// Least `n >= 1` with `σ^n(p) = p`, or `None` if `p` is not periodic.
    pub fn primitive_period(&self) -> Option<usize> {
        self.fibers.values().try_fold(1, |acc, w| {
            w.is_periodic().then(|| lcm(acc, w.period.len()))
        })
    }

    /// Forward orbit `p, σp, σ²p, ...`, stopping at the first repeated
    /// point or after `bound` points.
    pub fn orbit(&self, bound: usize) -> Orbit {
        let mut seen = HashSet::new();
        let mut points = Vec::new();
        let mut current = self.clone();
        while points.len() < bound {
            if !seen.insert(current.clone()) {
                return Orbit {
                    points,
                    closed: true,
                };
            }
            let next = current.shift(1);
            points.push(current);
            current = next;
        }
        let closed = seen.contains(&current);
        Orbit { points, closed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<Point>,
    /// The successor of the last listed point is already in the list.
    pub closed: bool,
}

/// Basic open set `N(B, φ)`: all points agreeing with `φ` on the finite
/// coordinate set `B`. The empty constraint set is the whole space.
///
/// The empty region is not a `Cylinder`; operations that can produce it
/// return `Option<Cylinder>` with `None` standing for it.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cylinder {
    constraints: BTreeMap<Coordinate, bool>,
}

impl Cylinder {
    pub fn whole() -> Self {
        Self::default()
    }

    pub fn new(constraints: impl IntoIterator<Item = (Coordinate, bool)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (c, b) in constraints {
            if map.insert(c.clone(), b).is_some() {
                return Err(Error::DuplicateCoordinate(format!("{}:{}", c.fiber.0, c.pos)));
            }
        }
        Ok(Self { constraints: map })
    }

    pub fn is_whole(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    pub fn constraints(&self) -> impl Iterator<Item = (&Coordinate, bool)> {
        self.constraints.iter().map(|(c, &b)| (c, b))
    }

    pub fn get(&self, c: &Coordinate) -> Option<bool> {
        self.constraints.get(c).copied()
    }

    pub fn fibers(&self) -> BTreeSet<FiberLabel> {
        self.constraints.keys().map(|c| c.fiber.clone()).collect()
    }

    /// Largest constrained position, 0 for the whole space.
    pub fn depth(&self) -> usize {
        self.constraints.keys().map(|c| c.pos).max().unwrap_or(0)
    }

    /// `None` when some coordinate is forced to both bits.
    pub fn intersect(&self, other: &Cylinder) -> Option<Cylinder> {
        let mut constraints = self.constraints.clone();
        for (c, &b) in &other.constraints {
            match constraints.insert(c.clone(), b) {
                Some(prev) if prev != b => return None,
                _ => {}
            }
        }
        Some(Self { constraints })
    }

    /// `σ^{-m}(self)`.
    pub fn preimage(&self, m: usize) -> Cylinder {
        let constraints = self
            .constraints
            .iter()
            .map(|(c, &b)| (c.moved(c.pos + m), b))
            .collect();
        Self { constraints }
    }

    /// `σ^m(self)`. Exact because σ is onto and coordinates are independent.
    pub fn image(&self, m: usize) -> Cylinder {
        let constraints = self
            .constraints
            .iter()
            .filter(|(c, _)| c.pos > m)
            .map(|(c, &b)| (c.moved(c.pos - m), b))
            .collect();
        Self { constraints }
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.constraints.iter().all(|(c, &b)| p.eval(c) == b)
    }

    /// `self ⊆ other`: every constraint of `other` appears in `self`.
    pub fn is_subset_of(&self, other: &Cylinder) -> bool {
        other
            .constraints
            .iter()
            .all(|(c, b)| self.constraints.get(c) == Some(b))
    }

    /// Selects the basic set `N(K(S,k), ψ)` inside `self`, where `S` is the
    /// set of constrained fibers, `k` the deepest constrained position, and
    /// `ψ` extends the constraints with 0 everywhere else on `K(S,k)`.
    ///
    /// The whole space mentions no fiber; it normalizes to `K({anchor}, 1)`
    /// with bit 0.
    pub fn normalize(&self, anchor: &FiberLabel) -> BasicCylinder {
        let (fibers, depth) = if self.is_whole() {
            (BTreeSet::from([anchor.clone()]), 1)
        } else {
            (self.fibers(), self.depth())
        };
        let constraints = fibers
            .iter()
            .flat_map(|f| (1..=depth).map(move |i| Coordinate { fiber: f.clone(), pos: i }))
            .map(|c| {
                let b = self.get(&c).unwrap_or(false);
                (c, b)
            })
            .collect();
        BasicCylinder {
            fibers,
            depth,
            cylinder: Cylinder { constraints },
        }
    }

    /// The member of `self` that is 0 at every unconstrained coordinate.
    pub fn zero_fill_point(&self) -> Point {
        let mut prefixes: BTreeMap<FiberLabel, Vec<bool>> = BTreeMap::new();
        for (c, &b) in &self.constraints {
            let prefix = prefixes.entry(c.fiber.clone()).or_default();
            if prefix.len() < c.pos {
                prefix.resize(c.pos, false);
            }
            prefix[c.pos - 1] = b;
        }
        Point::from_fibers(prefixes.into_iter().map(|(l, p)| (l, FiberWord::finite(p))))
            .expect("labels are distinct map keys")
    }
}

/// A cylinder over a full block `K(S,k) = {x_{α,i} | α ∈ S, 1 ≤ i ≤ k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicCylinder {
    pub fibers: BTreeSet<FiberLabel>,
    pub depth: usize,
    pub cylinder: Cylinder,
}

impl BasicCylinder {
    pub fn bit(&self, fiber: &FiberLabel, pos: usize) -> bool {
        self.cylinder
            .constraints
            .get(&Coordinate {
                fiber: fiber.clone(),
                pos,
            })
            .copied()
            .unwrap_or(false)
    }

    /// The block word `ψ(x_{α,1}) ... ψ(x_{α,k})` of one fiber.
    pub fn block(&self, fiber: &FiberLabel) -> Vec<bool> {
        (1..=self.depth).map(|i| self.bit(fiber, i)).collect()
    }
}
