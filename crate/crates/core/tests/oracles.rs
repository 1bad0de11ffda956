//! Checks against values computed by routes independent of the library:
//! linear recurrences, direct iteration, and hand enumeration.

use cantor_core::sft::SftSystem;
use cantor_core::space::{FiberLabel, Point};

/// `tr(Aⁿ)` for `A = [[1,1],[1,0]]` satisfies `t(n) = t(n−1) + t(n−2)`
/// with `t(0) = 2`, `t(1) = 1`.
fn golden_mean_traces(up_to: usize) -> Vec<usize> {
    let mut t = vec![2, 1];
    while t.len() <= up_to {
        let n = t.len();
        t.push(t[n - 1] + t[n - 2]);
    }
    t[1..].to_vec()
}

#[test]
fn golden_mean_periodic_counts() {
    let expected = golden_mean_traces(12);
    assert_eq!(&expected[..5], &[1, 3, 4, 7, 11]);
    let sys: SftSystem = "forbid=11".parse().unwrap();
    for n in 1..=12 {
        let p = sys.periodic_points(n);
        assert_eq!(p.count, expected[n - 1], "n = {n}");
        assert_eq!(p.transfer_trace, Some(expected[n - 1] as u128));
    }
}

#[test]
fn golden_mean_word_counts_are_fibonacci() {
    let sys: SftSystem = "forbid=11".parse().unwrap();
    let counts: Vec<usize> = (1..=12).map(|n| sys.allowed_words(n).len()).collect();
    for n in 2..counts.len() {
        assert_eq!(counts[n], counts[n - 1] + counts[n - 2]);
    }
    assert_eq!(&counts[..3], &[2, 3, 5]);
}

#[test]
fn full_shift_counts() {
    let sys = SftSystem::full(2).unwrap();
    for n in 1..=12 {
        assert_eq!(sys.periodic_points(n).count, 1 << n);
    }
}

#[test]
fn sweep_of_length_two_systems() {
    let family = SftSystem::binary_family(2);
    assert_eq!(family.len(), 16);
    for sys in family {
        let r = sys.proposition_crosscheck(5, 10);
        assert!(r.equivalence_holds, "{sys}: {r:?}");
    }
}

#[test]
fn absorption_matches_raw_sequence() {
    let p: Point = "a=10|10".parse().unwrap();
    let a = FiberLabel::new("a").unwrap();
    // raw 10|10 is 1 0 1 0 1 0 1 0
    let raw = [true, false, true, false, true, false, true, false];
    for (i, &b) in raw.iter().enumerate() {
        assert_eq!(p.bit(&a, i + 1), b);
    }
    assert_eq!(p.to_string(), "a=|10");
}

#[test]
fn two_fiber_period_by_iteration() {
    let p: Point = "a=|10;b=|110".parse().unwrap();
    let mut q = p.shift(1);
    let mut n = 1;
    while q != p {
        q = q.shift(1);
        n += 1;
    }
    assert_eq!(n, 6);
    assert_eq!(p.primitive_period(), Some(6));
}
