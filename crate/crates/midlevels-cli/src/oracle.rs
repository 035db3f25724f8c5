//! Brute-force ground truth at desk scale. Everything here materializes
//! graphs or full vertex sets and is bounded accordingly; the generator
//! itself never depends on this module.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use midlevels::trees::{h_inv, h_map};
use midlevels::{
    BitString, CycleIterator, Error, FlipPolicy, LatticeClass, Result, RootedTree, TauClass,
};

/// Full-graph oracles refuse n beyond this point (N grows as 2 C(2n+1,n)).
pub const DESK_BOUND: usize = 8;

/// Stepper-only checks with a ranked visited bitset stay feasible a bit
/// longer.
pub const STREAM_BOUND: usize = 12;

pub fn binom(a: u64, b: u64) -> u128 {
    if b > a {
        return 0;
    }
    let b = b.min(a - b);
    let mut out: u128 = 1;
    for i in 0..b {
        out = out * (a - i) as u128 / (i + 1) as u128;
    }
    out
}

/// Number of vertices of Q_{2n+1}(n,n+1).
pub fn vertex_count(n: usize) -> u128 {
    2 * binom(2 * n as u64 + 1, n as u64)
}

/// All bitstrings of the given length and weight, lexicographic (0 < 1).
pub fn weight_strings(len: usize, weight: usize) -> Vec<BitString> {
    fn rec(len: usize, weight: usize, buf: &mut Vec<u8>, out: &mut Vec<BitString>) {
        if buf.len() == len {
            out.push(BitString::from_bits(buf));
            return;
        }
        let left = len - buf.len();
        let placed: usize = buf.iter().map(|&b| b as usize).sum();
        let need = weight - placed;
        if need < left {
            buf.push(0);
            rec(len, weight, buf, out);
            buf.pop();
        }
        if need > 0 {
            buf.push(1);
            rec(len, weight, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    if weight <= len {
        rec(len, weight, &mut Vec::with_capacity(len), &mut out);
    }
    out
}

/// All vertices of Q_{2n+1}(n,n+1), lexicographic.
pub fn middle_level_vertices(n: usize) -> Vec<BitString> {
    let mut out = weight_strings(2 * n + 1, n);
    out.extend(weight_strings(2 * n + 1, n + 1));
    out.sort();
    out
}

/// All Dyck words with n upsteps, lexicographic.
pub fn dyck_words(n: usize) -> Vec<BitString> {
    fn rec(ones: usize, zeros: usize, h: i64, buf: &mut Vec<u8>, out: &mut Vec<BitString>) {
        if ones == 0 && zeros == 0 {
            out.push(BitString::from_bits(buf));
            return;
        }
        if zeros > 0 && h > 0 {
            buf.push(0);
            rec(ones, zeros - 1, h - 1, buf, out);
            buf.pop();
        }
        if ones > 0 {
            buf.push(1);
            rec(ones - 1, zeros, h + 1, buf, out);
            buf.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, 0, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// The middle levels graph as explicit vertex and edge lists.
#[derive(Debug)]
pub struct MiddleLevelsGraph {
    pub n: usize,
    pub vertices: Vec<BitString>,
    /// Index pairs (i, j), i < j, of vertices differing in exactly one bit.
    pub edges: Vec<(usize, usize)>,
}

/// Q_{2n+1}(n,n+1) with N = 2 C(2n+1,n) vertices and (n+1) C(2n+1,n+1)
/// edges. Rejects n above [`DESK_BOUND`].
pub fn build_middle_levels(n: usize) -> Result<MiddleLevelsGraph> {
    build_middle_levels_bounded(n, DESK_BOUND)
}

pub fn build_middle_levels_bounded(n: usize, bound: usize) -> Result<MiddleLevelsGraph> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1"));
    }
    if n > bound {
        return Err(Error::ResourceLimit("middle levels graph beyond desk bound"));
    }
    let vertices = middle_level_vertices(n);
    let index: HashMap<&BitString, usize> =
        vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        if v.weight() != n + 1 {
            continue;
        }
        // flip each 1 down; that enumerates every edge exactly once
        for pos in 0..v.len() {
            if v.bit(pos) == 1 {
                let mut u = v.clone();
                u.flip_bit(pos);
                let j = index[&u];
                edges.push((i.min(j), i.max(j)));
            }
        }
    }
    Ok(MiddleLevelsGraph { n, vertices, edges })
}

/// Outcome of checking a vertex sequence against the Gray code definition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleReport {
    pub all_valid_vertices: bool,
    pub gray_steps: bool,
    pub all_distinct: bool,
    pub covers_all: bool,
    pub closes_cyclically: bool,
    /// Position of the first violated element, if any check failed.
    pub first_violation: Option<usize>,
}

impl CycleReport {
    pub fn all_ok(&self) -> bool {
        self.all_valid_vertices
            && self.gray_steps
            && self.all_distinct
            && self.covers_all
            && self.closes_cyclically
    }
}

fn one_bit_apart(a: &BitString, b: &BitString) -> bool {
    a.len() == b.len()
        && (0..a.len())
            .filter(|&i| a.bit(i) != b.bit(i))
            .take(2)
            .count()
            == 1
}

/// Checks a sequence against the middle levels Gray code definition: valid
/// vertices, single-bit steps, no repeats, full coverage, cyclic closure.
pub fn verify_cycle(n: usize, seq: &[BitString]) -> CycleReport {
    let mut report = CycleReport {
        all_valid_vertices: true,
        gray_steps: true,
        all_distinct: true,
        covers_all: false,
        closes_cyclically: false,
        first_violation: None,
    };
    let violate = |report_flag: &mut bool, at: usize, first: &mut Option<usize>| {
        *report_flag = false;
        if first.is_none_or(|f| at < f) {
            *first = Some(at);
        }
    };
    let mut seen: HashSet<&BitString> = HashSet::with_capacity(seq.len());
    for (i, v) in seq.iter().enumerate() {
        let w = v.weight();
        if v.len() != 2 * n + 1 || (w != n && w != n + 1) {
            violate(&mut report.all_valid_vertices, i, &mut report.first_violation);
        }
        if i > 0 && !one_bit_apart(&seq[i - 1], v) {
            violate(&mut report.gray_steps, i, &mut report.first_violation);
        }
        if !seen.insert(v) {
            violate(&mut report.all_distinct, i, &mut report.first_violation);
        }
    }
    report.covers_all =
        report.all_distinct && report.all_valid_vertices && seq.len() as u128 == vertex_count(n);
    if !report.covers_all && report.first_violation.is_none() {
        report.first_violation = Some(seq.len());
    }
    report.closes_cyclically = match seq {
        [] | [_] => false,
        [first, .., last] => one_bit_apart(last, first),
    };
    if !report.closes_cyclically && report.first_violation.is_none() {
        report.first_violation = Some(seq.len().saturating_sub(1));
    }
    report
}

/// A set of disjoint cycles covering every vertex.
pub struct CycleDecomposition {
    pub cycles: Vec<Vec<BitString>>,
}

impl CycleDecomposition {
    pub fn lengths(&self) -> Vec<usize> {
        let mut out: Vec<usize> = self.cycles.iter().map(|c| c.len()).collect();
        out.sort_unstable();
        out
    }
}

/// Runs the stepper from every not-yet-visited vertex and collects the
/// cycles. With `use_flips` the result is a single Hamilton cycle; without
/// it, the plain 2-factor with one cycle per plane tree.
pub fn two_factor(n: usize, use_flips: bool) -> Result<CycleDecomposition> {
    if n > DESK_BOUND {
        return Err(Error::ResourceLimit("2-factor extraction beyond desk bound"));
    }
    let policy = if use_flips {
        FlipPolicy::Canonical
    } else {
        FlipPolicy::Never
    };
    let total = vertex_count(n) as usize;
    let mut visited: HashSet<BitString> = HashSet::with_capacity(total);
    let mut cycles = Vec::new();
    for seed in middle_level_vertices(n) {
        if visited.contains(&seed) {
            continue;
        }
        let mut cycle = vec![seed.clone()];
        visited.insert(seed.clone());
        let mut it = CycleIterator::with_policy(n, &seed, policy)?;
        loop {
            let v = it.advance()?.clone();
            if v == seed {
                break;
            }
            if !visited.insert(v.clone()) || cycle.len() > total {
                return Err(Error::Domain("stepper left its cycle"));
            }
            cycle.push(v);
        }
        cycles.push(cycle);
    }
    Ok(CycleDecomposition { cycles })
}

/// The first vertices x (of paths, i.e. x in D_{2n}^{=0}(n) with the cycle
/// visiting x0) in traversal order along one cycle.
pub fn first_vertex_sequence(n: usize, cycle: &[BitString]) -> Vec<BitString> {
    cycle
        .iter()
        .filter(|v| {
            v.bit(2 * n) == 0 && {
                let prefix = v.prefix(2 * n);
                prefix.weight() == n && prefix.classify() == LatticeClass::Eq0
            }
        })
        .map(|v| v.prefix(2 * n))
        .collect()
}

/// Edge labels of the auxiliary plane-tree graphs.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum TauLabel {
    Tau1,
    Tau2,
}

/// One directed edge, kept distinct per source tree so parallel edges stay
/// apart.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct AuxEdge {
    pub from: usize,
    pub to: usize,
    pub label: TauLabel,
    pub source_tree: BitString,
}

/// Directed multigraph on plane trees (rotation classes of rooted trees
/// with n edges), with an edge per tau1/tau2 rewrite.
pub struct AuxGraph {
    /// Canonical orbit representatives, sorted.
    pub nodes: Vec<BitString>,
    pub edges: Vec<AuxEdge>,
}

impl AuxGraph {
    pub fn node_index(&self, key: &BitString) -> Option<usize> {
        self.nodes.binary_search(key).ok()
    }

    pub fn edge_count_with_label(&self, label: TauLabel) -> usize {
        self.edges.iter().filter(|e| e.label == label).count()
    }
}

fn build_aux(n: usize, only_selected: bool) -> Result<AuxGraph> {
    if n > DESK_BOUND {
        return Err(Error::ResourceLimit("auxiliary graph beyond desk bound"));
    }
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1"));
    }
    let words = dyck_words(n);
    let mut nodes: Vec<BitString> = words
        .iter()
        .map(|w| {
            RootedTree::from_dyck(w.clone())
                .expect("enumerated dyck word")
                .plane_key()
                .canonical()
                .clone()
        })
        .collect();
    nodes.sort();
    nodes.dedup();
    let index: HashMap<&BitString, usize> = nodes.iter().enumerate().map(|(i, k)| (k, i)).collect();
    let mut edges = Vec::new();
    for w in &words {
        let t = RootedTree::from_dyck(w.clone()).expect("enumerated dyck word");
        let (label, image, selected) = match t.tau_classify() {
            TauClass::T1Pre => (
                TauLabel::Tau1,
                t.tau1()?,
                midlevels::flipsel::is_flip_tree_1(&t)?,
            ),
            TauClass::T2Pre => (
                TauLabel::Tau2,
                t.tau2()?,
                midlevels::flipsel::is_flip_tree_2(&t)?,
            ),
            _ => continue,
        };
        if only_selected && !selected {
            continue;
        }
        edges.push(AuxEdge {
            from: index[t.plane_key().canonical()],
            to: index[image.plane_key().canonical()],
            label,
            source_tree: w.clone(),
        });
    }
    Ok(AuxGraph { nodes, edges })
}

/// All possible rewrites: one edge per tau1/tau2 preimage tree.
pub fn build_g(n: usize) -> Result<AuxGraph> {
    build_aux(n, false)
}

/// Only the rewrites the flip selection actually performs.
pub fn build_h(n: usize) -> Result<AuxGraph> {
    build_aux(n, true)
}

/// True iff `h` is a spanning tree of `g`: same nodes, every edge of `h`
/// an edge of `g`, and the undirected edge set a tree on all nodes.
pub fn is_spanning_tree(h: &AuxGraph, g: &AuxGraph) -> Result<bool> {
    if h.nodes != g.nodes {
        return Err(Error::InvalidArgument(
            "spanning tree check requires a shared node set",
        ));
    }
    let g_edges: HashSet<&AuxEdge> = g.edges.iter().collect();
    if !h.edges.iter().all(|e| g_edges.contains(e)) {
        return Ok(false);
    }
    let nodes = h.nodes.len();
    if h.edges.len() != nodes.saturating_sub(1) {
        return Ok(false);
    }
    // connectivity via union-find
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut components = nodes;
    for e in &h.edges {
        let (a, b) = (find(&mut parent, e.from), find(&mut parent, e.to));
        if a != b {
            parent[a] = b;
            components -= 1;
        }
    }
    Ok(components == 1)
}

/// DOT rendering of the auxiliary graphs: tau1 edges solid, tau2 edges
/// dashed, edges selected by the flip functions (those of `h`) bold grey.
pub fn aux_graphs_to_dot(g: &AuxGraph, h: &AuxGraph) -> String {
    let selected: HashSet<&AuxEdge> = h.edges.iter().collect();
    let mut out = String::new();
    out.push_str("digraph aux {\n");
    for (i, key) in g.nodes.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{key}\"];");
    }
    for e in &g.edges {
        let style = match e.label {
            TauLabel::Tau1 => "solid",
            TauLabel::Tau2 => "dashed",
        };
        let extra = if selected.contains(e) {
            ", color=grey, penwidth=3"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  n{} -> n{} [style={style}{extra}, label=\"{}\"];",
            e.from, e.to, e.source_tree
        );
    }
    out.push_str("}\n");
    out
}

/// For a flip vertex x, the first vertex of the other path in its flippable
/// pair: apply the matching tau rewrite to h^-1(x) and map back.
pub fn flip_partner(n: usize, x: &BitString) -> Result<Option<BitString>> {
    if x.len() != 2 * n || !x.is_dyck() {
        return Err(Error::InvalidArgument("partner is defined on D_{2n}^{=0}(n)"));
    }
    let t = RootedTree::from_dyck(h_inv(x)?)?;
    let image = match t.tau_classify() {
        TauClass::T1Pre => t.tau1()?,
        TauClass::T1Img => t.tau1_inv()?,
        TauClass::T2Pre => t.tau2()?,
        TauClass::T2Img => t.tau2_inv()?,
        TauClass::None => return Ok(None),
    };
    Ok(Some(h_map(image.dyck())?))
}

/// Ranks vertices of Q_{2n+1}(n,n+1) into 0..N for bitset bookkeeping.
pub struct VertexRanker {
    n: usize,
    /// binom[a][b] for a <= 2n+1.
    table: Vec<Vec<u64>>,
}

impl VertexRanker {
    pub fn new(n: usize) -> Result<VertexRanker> {
        if n > STREAM_BOUND {
            return Err(Error::ResourceLimit("ranker beyond streaming bound"));
        }
        let size = 2 * n + 2;
        let mut table = vec![vec![0u64; size]; size];
        for a in 0..size {
            table[a][0] = 1;
            for b in 1..=a {
                table[a][b] = table[a - 1][b - 1] + if b < a { table[a - 1][b] } else { 0 };
            }
        }
        Ok(VertexRanker { n, table })
    }

    pub fn total(&self) -> u64 {
        2 * self.table[2 * self.n + 1][self.n]
    }

    /// Lexicographic rank within the weight class, offset by the class.
    pub fn rank(&self, x: &BitString) -> Option<u64> {
        let l = 2 * self.n + 1;
        if x.len() != l {
            return None;
        }
        let w = x.weight();
        if w != self.n && w != self.n + 1 {
            return None;
        }
        let mut rank = 0u64;
        let mut ones_left = w;
        for i in 0..l {
            if x.bit(i) == 1 {
                rank += self.table[l - 1 - i][ones_left];
                ones_left -= 1;
            }
        }
        let offset = if w == self.n {
            0
        } else {
            self.table[l][self.n]
        };
        Some(offset + rank)
    }
}

/// Plain growable bitset.
pub struct Bitset {
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: u64) -> Bitset {
        Bitset {
            words: vec![0; len.div_ceil(64) as usize],
        }
    }

    /// Sets the bit; returns whether it was already set.
    pub fn set(&mut self, i: u64) -> bool {
        let (w, b) = ((i / 64) as usize, i % 64);
        let was = self.words[w] >> b & 1 == 1;
        self.words[w] |= 1 << b;
        was
    }

    pub fn heap_bytes(&self) -> usize {
        self.words.capacity() * 8
    }
}
