//! Structural properties tying the modules together: endpoint sets of the
//! path partition, flippable-pair semantics, and amortization of the flip
//! checks along generated cycles.

use std::collections::BTreeSet;

use midlevels::flipsel::is_flip_vertex;
use midlevels::trees::{h_inv, h_map};
use midlevels::{
    ham_cycle, path_from_first, BitString, CycleIterator, LatticeClass, RootedTree, TauClass,
};

fn strings_in(len: usize, class: LatticeClass, weight: usize) -> Vec<BitString> {
    let mut out = Vec::new();
    for code in 0u32..(1 << len) {
        let bits: Vec<u8> = (0..len).map(|i| ((code >> i) & 1) as u8).collect();
        let x = BitString::from_bits(&bits);
        if x.weight() == weight && x.classify() == class {
            out.push(x);
        }
    }
    out
}

/// First and last vertex sets of the plain and flipped paths both equal
/// D^{=0} and D^- exactly.
#[test]
fn endpoint_sets_match_both_flip_values() {
    for n in 1..=5usize {
        let first_expected: BTreeSet<BitString> =
            strings_in(2 * n, LatticeClass::Eq0, n).into_iter().collect();
        let last_expected: BTreeSet<BitString> =
            strings_in(2 * n, LatticeClass::Minus, n).into_iter().collect();
        for flip in [false, true] {
            let mut firsts = BTreeSet::new();
            let mut lasts = BTreeSet::new();
            for x0 in &first_expected {
                let path = path_from_first(n, x0, flip).unwrap();
                firsts.insert(path.first().unwrap().clone());
                lasts.insert(path.last().unwrap().clone());
            }
            assert_eq!(firsts, first_expected, "n={n} flip={flip}");
            assert_eq!(lasts, last_expected, "n={n} flip={flip}");
        }
    }
}

/// The partner of a flip vertex through the tau rewrite of its tree.
fn partner(x: &BitString) -> Option<BitString> {
    let t = RootedTree::from_dyck(h_inv(x).unwrap()).unwrap();
    let image = match t.tau_classify() {
        TauClass::T1Pre => t.tau1().unwrap(),
        TauClass::T1Img => t.tau1_inv().unwrap(),
        TauClass::T2Pre => t.tau2().unwrap(),
        TauClass::T2Img => t.tau2_inv().unwrap(),
        TauClass::None => return None,
    };
    Some(h_map(image.dyck()).unwrap())
}

/// Every selected flip vertex has exactly one selected partner, and the
/// flipped paths of the pair cover the same vertices with last vertices
/// exchanged; lengths shift by 0 or -4/+4.
#[test]
fn flippable_pairs_small() {
    for n in 2..=6usize {
        for x in strings_in(2 * n, LatticeClass::Eq0, n) {
            if !is_flip_vertex(n, &x).unwrap() {
                continue;
            }
            let y = partner(&x).expect("selected vertices come from a tau set");
            assert_ne!(y, x);
            assert!(is_flip_vertex(n, &y).unwrap(), "partner consistency");
            assert_eq!(partner(&y).unwrap(), x, "partnering is an involution");

            let p = path_from_first(n, &x, false).unwrap();
            let p2 = path_from_first(n, &y, false).unwrap();
            let r = path_from_first(n, &x, true).unwrap();
            let r2 = path_from_first(n, &y, true).unwrap();
            let plain: BTreeSet<&BitString> = p.iter().chain(&p2).collect();
            let flipped: BTreeSet<&BitString> = r.iter().chain(&r2).collect();
            assert_eq!(plain, flipped, "vertex sets agree at n={n} x={x}");
            assert_eq!(r.first(), p.first());
            assert_eq!(r2.first(), p2.first());
            assert_eq!(r.last(), p2.last(), "last vertices cross");
            assert_eq!(r2.last(), p.last(), "last vertices cross");
            let shift = r.len() as i64 - p.len() as i64;
            assert!(shift == 0 || shift == 4 || shift == -4, "shift={shift}");
            assert_eq!(
                r2.len() as i64 - p2.len() as i64,
                -shift,
                "length shifts balance"
            );
        }
    }
}

/// Between two steps that consult the flip selection there are always at
/// least 4n-3 cheap steps.
#[test]
fn flip_checks_are_amortized() {
    for n in [4usize, 6, 8] {
        let start = BitString::ones_then_zeros(n, n + 1);
        let mut it = CycleIterator::new(n, &start).unwrap();
        let mut count = 0u64;
        loop {
            let v = it.advance().unwrap();
            count += 1;
            if v == &start {
                break;
            }
        }
        let stats = it.stats();
        assert_eq!(stats.steps, count);
        assert!(stats.flip_checks > 0);
        assert!(
            stats.min_cheap_gap >= (4 * n - 3) as u64,
            "n={n} gap={}",
            stats.min_cheap_gap
        );
    }
}

/// Sampled windows at sizes beyond the exhaustive range stay Gray and the
/// split/prefix contract holds.
#[test]
fn sampled_windows_large_n() {
    for n in [10usize, 12] {
        let start = BitString::ones_then_zeros(n, n + 1);
        let window = ham_cycle(n, &start, 2000).unwrap();
        let mut prev = start.clone();
        for v in &window {
            let diff: usize = (0..v.len()).filter(|&i| v.bit(i) != prev.bit(i)).count();
            assert_eq!(diff, 1);
            assert!(v.weight() == n || v.weight() == n + 1);
            assert_ne!(v.weight(), prev.weight());
            prev = v.clone();
        }
        let set: BTreeSet<&BitString> = window.iter().collect();
        assert_eq!(set.len(), window.len(), "window repeats a vertex");
        // resumability: continuing from the middle matches the long run
        let tail = ham_cycle(n, &window[999], 1000).unwrap();
        assert_eq!(tail, window[1000..]);
    }
}
