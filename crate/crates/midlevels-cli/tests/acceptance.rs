//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the numbers it checked. Criterion 9 (allocation accounting) lives in
//! `acceptance_space.rs` because it needs a counting global allocator.

use std::collections::BTreeSet;
use std::time::Instant;

use midlevels::flipsel::is_flip_vertex;
use midlevels::paths::{paths_step, paths_step_fast, Direction, PathQuery};
use midlevels::{ham_cycle, path_from_first, BitString, CycleIterator, LatticeClass, RootedTree};
use midlevels_cli::oracle::{
    build_g, build_h, dyck_words, first_vertex_sequence, flip_partner, is_spanning_tree,
    two_factor, verify_cycle, vertex_count, weight_strings, Bitset, TauLabel, VertexRanker,
};

fn bs(s: &str) -> BitString {
    s.parse().unwrap()
}

fn default_start(n: usize) -> BitString {
    BitString::ones_then_zeros(n, n + 1)
}

fn strings_in(len: usize, class: LatticeClass, weight: usize) -> Vec<BitString> {
    weight_strings(len, weight)
        .into_iter()
        .filter(|x| x.classify() == class)
        .collect()
}

/// Criterion 1: for n = 1..8 the full stream of length N = 2 C(2n+1,n)
/// passes every cycle check, within 10 seconds overall.
#[test]
fn criterion_01_hamiltonicity_to_n8() {
    let expected_n = [6usize, 20, 70, 252, 924, 3432, 12870, 48620];
    let clock = Instant::now();
    for n in 1..=8usize {
        let total = vertex_count(n) as usize;
        assert_eq!(total, expected_n[n - 1], "cycle length at n={n}");
        let seq = ham_cycle(n, &default_start(n), total).unwrap();
        let report = verify_cycle(n, &seq);
        assert!(report.all_ok(), "n={n}: {report:?}");
        assert_eq!(seq.last(), Some(&default_start(n)), "start comes last");
    }
    let elapsed = clock.elapsed();
    assert!(elapsed.as_secs() < 10, "took {elapsed:?}");
    println!(
        "acceptance criterion 1 (hamiltonicity n=1..8): PASS — lengths {expected_n:?} in {:.2}s",
        elapsed.as_secs_f64()
    );
}

/// Criterion 2: the quoted step examples and the four explicit paths
/// reproduce bit-exactly.
#[test]
fn criterion_02_quoted_examples() {
    use Direction::{Next, Prev};
    let step = |n, k, x: &str, dir, flip| {
        paths_step(&PathQuery::new(n, k, bs(x), dir, flip)).unwrap()
    };
    assert_eq!(step(1, 1, "10", Next, false), bs("11"));
    assert_eq!(step(1, 1, "11", Prev, false), bs("10"));
    assert_eq!(step(2, 2, "1100", Next, false), bs("1101"));
    assert_eq!(step(2, 2, "1101", Prev, false), bs("1100"));

    let collect = |n, x0: &str, flip| -> Vec<BitString> {
        path_from_first(n, &bs(x0), flip).unwrap()
    };
    let p: Vec<BitString> = ["1100", "1101", "0101", "0111", "0011", "1011", "1001"]
        .map(bs)
        .to_vec();
    let p2: Vec<BitString> = ["1010", "1110", "0110"].map(bs).to_vec();
    let r: Vec<BitString> = ["1100", "1110", "0110"].map(bs).to_vec();
    let r2: Vec<BitString> = ["1010", "1011", "0011", "0111", "0101", "1101", "1001"]
        .map(bs)
        .to_vec();
    assert_eq!(collect(2, "1100", false), p);
    assert_eq!(collect(2, "1010", false), p2);
    assert_eq!(collect(2, "1100", true), r);
    assert_eq!(collect(2, "1010", true), r2);
    println!("acceptance criterion 2 (quoted step and path examples): PASS — 4 steps, 4 paths");
}

/// Criterion 3: cycle counts of the unflipped 2-factor are 1, 1, 2, 3 for
/// n = 1..4 and match the independently enumerated plane-tree counts for
/// n = 5..7.
#[test]
fn criterion_03_two_factor_structure() {
    let mut counts = Vec::new();
    for (n, want) in [(1usize, 1usize), (2, 1), (3, 2), (4, 3)] {
        let got = two_factor(n, false).unwrap().cycles.len();
        assert_eq!(got, want, "n={n}");
        counts.push(got);
    }
    for (n, frozen) in [(5usize, 6usize), (6, 14), (7, 34)] {
        let keys: BTreeSet<_> = dyck_words(n)
            .into_iter()
            .map(|w| RootedTree::from_dyck(w).unwrap().plane_key())
            .collect();
        assert_eq!(keys.len(), frozen, "frozen plane-tree count at n={n}");
        let got = two_factor(n, false).unwrap().cycles.len();
        assert_eq!(got, keys.len(), "n={n}");
        counts.push(got);
    }
    println!("acceptance criterion 3 (2-factor cycle counts): PASS — {counts:?}");
}

/// Criterion 4: first/last vertex sets of the plain and flipped path
/// families equal D^{=0} and D^- exactly, n <= 6.
#[test]
fn criterion_04_endpoint_sets() {
    for n in 1..=6usize {
        let first_expected: BTreeSet<BitString> =
            strings_in(2 * n, LatticeClass::Eq0, n).into_iter().collect();
        let last_expected: BTreeSet<BitString> = strings_in(2 * n, LatticeClass::Minus, n)
            .into_iter()
            .collect();
        for flip in [false, true] {
            let mut firsts = BTreeSet::new();
            let mut lasts = BTreeSet::new();
            for x0 in &first_expected {
                let path = path_from_first(n, x0, flip).unwrap();
                firsts.insert(path.first().unwrap().clone());
                lasts.insert(path.last().unwrap().clone());
            }
            assert_eq!(firsts, first_expected, "first vertices, n={n} flip={flip}");
            assert_eq!(lasts, last_expected, "last vertices, n={n} flip={flip}");
        }
    }
    println!("acceptance criterion 4 (endpoint sets n<=6): PASS");
}

/// Criterion 5: every flip-designated pair covers the same vertices with
/// crossed last vertices, n <= 6.
#[test]
fn criterion_05_flippable_pairs() {
    let mut pairs_checked = 0usize;
    for n in 2..=6usize {
        for x in strings_in(2 * n, LatticeClass::Eq0, n) {
            if !is_flip_vertex(n, &x).unwrap() {
                continue;
            }
            let y = flip_partner(n, &x)
                .unwrap()
                .expect("flip vertices have partners");
            assert_ne!(y, x, "partner is distinct");
            assert!(is_flip_vertex(n, &y).unwrap(), "partner is selected too");
            assert_eq!(flip_partner(n, &y).unwrap().unwrap(), x, "pairing is mutual");
            let p = path_from_first(n, &x, false).unwrap();
            let p2 = path_from_first(n, &y, false).unwrap();
            let r = path_from_first(n, &x, true).unwrap();
            let r2 = path_from_first(n, &y, true).unwrap();
            let plain: BTreeSet<&BitString> = p.iter().chain(&p2).collect();
            let flipped: BTreeSet<&BitString> = r.iter().chain(&r2).collect();
            assert_eq!(plain, flipped, "vertex sets, n={n} x={x}");
            assert_eq!(r.first(), p.first());
            assert_eq!(r2.first(), p2.first());
            assert_eq!(r.last(), p2.last(), "crossed last vertices");
            assert_eq!(r2.last(), p.last(), "crossed last vertices");
            pairs_checked += 1;
        }
    }
    println!("acceptance criterion 5 (flippable pairs n<=6): PASS — {pairs_checked} pair sides");
}

/// Criterion 6: the selected edges span the plane-tree graph for n = 1..8;
/// the n = 3 graph has 2 nodes and 1 edge; the n = 6 selection has exactly
/// 2 tau2 edges.
#[test]
fn criterion_06_spanning_tree() {
    for n in 1..=8usize {
        let g = build_g(n).unwrap();
        let h = build_h(n).unwrap();
        assert!(is_spanning_tree(&h, &g).unwrap(), "n={n}");
    }
    let g3 = build_g(3).unwrap();
    assert_eq!((g3.nodes.len(), g3.edges.len()), (2, 1));
    let h6 = build_h(6).unwrap();
    assert_eq!(h6.edge_count_with_label(TauLabel::Tau2), 2);
    println!("acceptance criterion 6 (spanning tree n=1..8): PASS — G_3 = (2,1), H_6 tau2 = 2");
}

/// Criterion 7: production and reference steps agree on every valid query
/// for n <= 6 (exhaustive over all layers, directions and flip values) and
/// on 10^6 random queries up to n = 32.
#[test]
fn criterion_07_oracle_equivalence() {
    let mut exhaustive = 0u64;
    for n in 1..=6usize {
        for k in n..=(2 * n - 1) {
            for flip in [false, true] {
                for x0 in strings_in(2 * n, LatticeClass::Eq0, k) {
                    // walk the whole path at layer k, checking both
                    // directions at every vertex
                    let mut cur = x0;
                    let mut steps = 0;
                    loop {
                        for dir in [Direction::Prev, Direction::Next] {
                            let q = PathQuery::new(n, k, cur.clone(), dir, flip);
                            let reference = paths_step(&q);
                            let fast = paths_step_fast(&q);
                            assert_eq!(reference.is_ok(), fast.is_ok(), "{q:?}");
                            if let (Ok(a), Ok(b)) = (&reference, &fast) {
                                assert_eq!(a, b, "{q:?}");
                                exhaustive += 1;
                            }
                        }
                        if cur.weight() == k && cur.classify() == LatticeClass::Minus {
                            break;
                        }
                        cur = paths_step(&PathQuery::new(n, k, cur, Direction::Next, flip))
                            .unwrap();
                        steps += 1;
                        assert!(steps <= 4 * n, "path too long at n={n} k={k}");
                    }
                }
            }
        }
    }

    let mut rng = 0x00c0_ffee_d00d_f00du64;
    let mut next = move || {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        rng
    };
    let mut random = 0u64;
    for _ in 0..1_000_000u32 {
        let n = 2 + (next() % 31) as usize;
        let w = n + (next() % 2) as usize;
        let mut bits = vec![0u8; 2 * n];
        for b in bits.iter_mut().take(w) {
            *b = 1;
        }
        for i in (1..bits.len()).rev() {
            let j = (next() % (i as u64 + 1)) as usize;
            bits.swap(i, j);
        }
        let x = BitString::from_bits(&bits);
        let mut dir = if next() % 2 == 0 {
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
        let q = PathQuery::new(n, n, x, dir, next() % 2 == 0);
        assert_eq!(
            paths_step(&q).unwrap(),
            paths_step_fast(&q).unwrap(),
            "{q:?}"
        );
        random += 1;
    }
    println!(
        "acceptance criterion 7 (oracle equivalence): PASS — {exhaustive} exhaustive + {random} random queries"
    );
}

/// Criterion 8: a full instrumented n = 12 cycle (about 1.04 * 10^7 steps)
/// keeps at least 4n-3 cheap steps between flip checks, a linear mean
/// operation count per step, and finishes within 5 minutes.
#[test]
fn criterion_08_amortization_n12() {
    let n = 12usize;
    let clock = Instant::now();
    let start = default_start(n);
    let ranker = VertexRanker::new(n).unwrap();
    let total = ranker.total();
    assert_eq!(total, 10_400_600);
    let mut visited = Bitset::new(total);
    let mut it = CycleIterator::new(n, &start).unwrap();
    for step in 0..total {
        let v = it.advance().unwrap();
        let rank = ranker.rank(v).expect("stepper stays in the graph");
        assert!(!visited.set(rank), "vertex repeated at step {step}");
    }
    assert_eq!(it.current(), &start, "cycle closes after N steps");
    let elapsed = clock.elapsed();
    let stats = *it.stats();
    assert_eq!(stats.steps, total);
    assert!(
        stats.min_cheap_gap >= (4 * n - 3) as u64,
        "cheap gap {} below {}",
        stats.min_cheap_gap,
        4 * n - 3
    );
    // frozen regression constant: measured ~5n ops/step, bounded at 8n
    let ops_per_step = stats.basic_ops as f64 / stats.steps as f64;
    assert!(
        ops_per_step <= 8.0 * n as f64,
        "ops per step {ops_per_step:.2} exceeds 8n"
    );
    assert!(elapsed.as_secs() < 300, "took {elapsed:?}");
    println!(
        "acceptance criterion 8 (amortization n=12): PASS — N={total}, min gap {}, {:.2} ops/step, {:.1}s",
        stats.min_cheap_gap,
        ops_per_step,
        elapsed.as_secs_f64()
    );
}

/// Criterion 10: path lengths follow 2|x_l| + 2 and first vertices sit
/// exactly 4n+2 apart on the unflipped 2-factor cycles, n <= 8.
#[test]
fn criterion_10_path_lengths_and_spacing() {
    for n in 1..=8usize {
        for x0 in strings_in(2 * n, LatticeClass::Eq0, n) {
            let mut h = 0i64;
            let mut first_return = 0;
            for (i, &b) in x0.bits().iter().enumerate() {
                h += if b == 1 { 1 } else { -1 };
                if h == 0 {
                    first_return = i;
                    break;
                }
            }
            let path = path_from_first(n, &x0, false).unwrap();
            assert_eq!(path.len() - 1, 2 * (first_return - 1) + 2, "x0={x0}");
            assert!(path.len() - 1 <= 4 * n - 2);
        }

        for cycle in two_factor(n, false).unwrap().cycles {
            let len = cycle.len();
            let firsts: Vec<usize> = (0..len)
                .filter(|&i| {
                    let v = &cycle[i];
                    v.bit(2 * n) == 0 && {
                        let prefix = v.prefix(2 * n);
                        prefix.weight() == n && prefix.classify() == LatticeClass::Eq0
                    }
                })
                .collect();
            assert!(!firsts.is_empty());
            assert_eq!(len % (4 * n + 2), 0, "cycle length is a spacing multiple");
            for (j, &i) in firsts.iter().enumerate() {
                let next = firsts[(j + 1) % firsts.len()];
                let spacing = (next + len - i) % len;
                let spacing = if spacing == 0 { len } else { spacing };
                assert_eq!(spacing, 4 * n + 2, "n={n}");
            }
        }
    }
    // the sequences of first vertices partition, for n = 4, all 14 trees
    let duty: usize = two_factor(4, false)
        .unwrap()
        .cycles
        .iter()
        .map(|c| first_vertex_sequence(4, c).len())
        .sum();
    assert_eq!(duty, 14);
    println!("acceptance criterion 10 (path lengths and 4n+2 spacing, n<=8): PASS");
}
