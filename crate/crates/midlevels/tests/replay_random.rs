//! Randomized replay checks beyond the exhaustive small sizes: the lazy
//! view must agree with naive recomputation under arbitrary operation
//! schedules, and the fast path step must agree with the reference at
//! sizes where exhaustive enumeration is out of reach.

use midlevels::paths::{paths_step, paths_step_fast, Direction, PathQuery};
use midlevels::{BitString, LatticeClass, LazyView};

struct XorShift(u64);

impl XorShift {
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }

    fn below(&mut self, bound: u64) -> u64 {
        self.next() % bound
    }
}

fn naive_revpi(x: &BitString) -> BitString {
    x.pi_perm().unwrap().rev_inv()
}

/// 100_000 random schedules over random bases of length up to 40.
#[test]
fn lazyview_replay_randomized() {
    let mut rng = XorShift(0x5eed_1234_abcd_0001);
    for _ in 0..100_000 {
        let half = 1 + rng.below(20) as usize;
        let len = 2 * half;
        let mut bits = Vec::with_capacity(len);
        for _ in 0..len {
            bits.push((rng.next() & 1) as u8);
        }
        let x = BitString::from_bits(&bits);
        let mut view = LazyView::new(&x).unwrap();
        let mut word = x.clone();
        let rounds = rng.below(half as u64 + 1);
        for _ in 0..rounds {
            if rng.next() & 1 == 1 {
                view.apply_revpi();
                word = naive_revpi(&word);
            }
            if word.len() >= 4 && rng.next() & 1 == 1 {
                view.drop_last_two().unwrap();
                word = word.prefix(word.len() - 2);
            }
            let i = rng.below(word.len() as u64) as usize;
            assert_eq!(view.bit(i).unwrap(), word.bit(i));
            assert_eq!(view.classify(), word.classify());
            assert_eq!(view.weight(), word.weight());
        }
        assert_eq!(view.materialize(), word);
    }
}

/// Random weight-n and weight-(n+1) vertices at n up to 32: production and
/// reference steps agree (the 10^6-query sweep runs in the acceptance
/// suite; this is the smoke-sized version exercised on every test run).
#[test]
fn fast_step_matches_reference_randomized() {
    let mut rng = XorShift(0x5eed_5678_0042_cafe);
    for _ in 0..20_000 {
        let n = 2 + rng.below(31) as usize;
        let w = n + rng.below(2) as usize;
        let x = random_vertex(&mut rng, 2 * n, w);
        let mut dir = if rng.next() & 1 == 1 {
            Direction::Next
        } else {
            Direction::Prev
        };
        let cls = x.classify();
        if dir == Direction::Prev && cls == LatticeClass::Eq0 && x.weight() == n {
            dir = Direction::Next;
        }
        if dir == Direction::Next && cls == LatticeClass::Minus && x.weight() == n {
            dir = Direction::Prev;
        }
        let flip = rng.next() & 1 == 1;
        let q = PathQuery::new(n, n, x, dir, flip);
        let reference = paths_step(&q).unwrap();
        let fast = paths_step_fast(&q).unwrap();
        assert_eq!(reference, fast, "n={n} x={} {dir:?} flip={flip}", q.x);
    }
}

fn random_vertex(rng: &mut XorShift, len: usize, weight: usize) -> BitString {
    let mut bits = vec![0u8; len];
    for b in bits.iter_mut().take(weight) {
        *b = 1;
    }
    // Fisher-Yates
    for i in (1..len).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        bits.swap(i, j);
    }
    BitString::from_bits(&bits)
}

/// The instrumented operation count of the fast step grows linearly in n
/// along random queries: ops(n) stays within a fixed multiple of n.
#[test]
fn fast_step_ops_grow_linearly() {
    let mut rng = XorShift(0x5eed_0bad_f00d_0777);
    for n in [4usize, 8, 16, 32, 64] {
        let mut worst = 0u64;
        for _ in 0..200 {
            let w = n + rng.below(2) as usize;
            let x = random_vertex(&mut rng, 2 * n, w);
            let mut dir = if rng.next() & 1 == 1 {
                Direction::Next
            } else {
                Direction::Prev
            };
            let cls = x.classify();
            if dir == Direction::Prev && cls == LatticeClass::Eq0 && x.weight() == n {
                dir = Direction::Next;
            }
            if dir == Direction::Next && cls == LatticeClass::Minus && x.weight() == n {
                dir = Direction::Prev;
            }
            let mut ops = 0u64;
            let q = PathQuery::new(n, n, x, dir, false);
            midlevels::paths::paths_step_fast_counted(&q, &mut ops).unwrap();
            worst = worst.max(ops);
        }
        // one descent visits at most n levels of O(1) view work, plus the
        // O(n) initial scan
        assert!(worst <= 16 * n as u64, "n={n} worst={worst}");
    }
}
