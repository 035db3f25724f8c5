//! Ordered rooted trees encoded as Dyck words, plane trees as rotation
//! orbits, the local rewrites `tau1`/`tau2`, and the recursive bijection `h`
//! on Dyck words.
//!
//! The encoding reads the word left to right: a 1-bit adds a new rightmost
//! child to the current vertex and moves there, a 0-bit moves back to the
//! parent. Vertices are numbered in that creation order (preorder), root = 0,
//! so ascending vertex ids are exactly the left-to-right order used for leaf
//! geometry.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitseq::{pi_perm_in_place, BitString};
use crate::error::{Error, Result};

/// An ordered rooted tree, canonically represented by its Dyck word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootedTree {
    dyck: BitString,
}

impl core::fmt::Debug for RootedTree {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "RootedTree({})", self.dyck)
    }
}

/// Canonical representative of a rotation orbit: the lexicographically
/// smallest member under the elementwise 0 < 1 order. Equal keys iff the
/// trees are the same plane tree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct PlaneTreeKey {
    canonical: BitString,
}

impl PlaneTreeKey {
    pub fn canonical(&self) -> &BitString {
        &self.canonical
    }
}

/// Which of the four disjoint template sets a tree belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TauClass {
    T1Pre,
    T1Img,
    T2Pre,
    T2Img,
    None,
}

/// Parent/children adjacency with left-to-right child order, rebuilt on
/// demand from the Dyck word.
#[derive(Clone, Debug)]
pub(crate) struct TreeIndex {
    pub parent: Vec<Option<usize>>,
    pub children: Vec<Vec<usize>>,
    /// Index of the 1-bit that created each non-root vertex.
    pub enter_bit: Vec<usize>,
    pub depth: Vec<usize>,
}

impl TreeIndex {
    pub fn vertex_count(&self) -> usize {
        self.parent.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.children[v].len() + usize::from(v != 0)
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.degree(v) == 1
    }

    /// The unique neighbor of a leaf.
    pub fn leaf_neighbor(&self, v: usize) -> usize {
        match self.parent[v] {
            Some(p) => p,
            None => self.children[v][0],
        }
    }

    /// Leaves in the cyclic counterclockwise (left-to-right) order; the
    /// root, when it is a leaf, comes first.
    pub fn leaves_in_order(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.is_leaf(v)).collect()
    }
}

fn build_index(bits: &[u8]) -> TreeIndex {
    let nv = bits.len() / 2 + 1;
    let mut idx = TreeIndex {
        parent: vec![None; nv],
        children: vec![Vec::new(); nv],
        enter_bit: vec![usize::MAX; nv],
        depth: vec![0; nv],
    };
    let mut cur = 0usize;
    let mut next_id = 1usize;
    for (i, &b) in bits.iter().enumerate() {
        if b == 1 {
            let v = next_id;
            next_id += 1;
            idx.parent[v] = Some(cur);
            idx.depth[v] = idx.depth[cur] + 1;
            idx.enter_bit[v] = i;
            idx.children[cur].push(v);
            cur = v;
        } else {
            cur = idx.parent[cur].expect("dyck word never dips below the root");
        }
    }
    debug_assert_eq!(cur, 0);
    debug_assert_eq!(next_id, nv);
    idx
}

/// Position of the 0-bit matching the 1-bit at `start`.
fn matching_zero(bits: &[u8], start: usize) -> usize {
    debug_assert_eq!(bits[start], 1);
    let mut h = 0i64;
    for (i, &b) in bits.iter().enumerate().skip(start) {
        h += if b == 1 { 1 } else { -1 };
        if h == 0 {
            return i;
        }
    }
    unreachable!("unbalanced dyck word")
}

/// Rotation on the raw word: (1) T_l (0) T_r becomes T_l (1) T_r (0).
pub(crate) fn rot_word(bits: &[u8]) -> Vec<u8> {
    let p = matching_zero(bits, 0);
    let mut out = Vec::with_capacity(bits.len());
    out.extend_from_slice(&bits[1..p]);
    out.push(1);
    out.extend_from_slice(&bits[p + 1..]);
    out.push(0);
    out
}

impl RootedTree {
    pub fn from_dyck(dyck: BitString) -> Result<Self> {
        if !dyck.is_dyck() {
            return Err(Error::InvalidArgument(
                "a rooted tree is encoded by a balanced dyck word",
            ));
        }
        Ok(RootedTree { dyck })
    }

    pub fn dyck(&self) -> &BitString {
        &self.dyck
    }

    pub fn edge_count(&self) -> usize {
        self.dyck.len() / 2
    }

    pub(crate) fn index(&self) -> TreeIndex {
        build_index(self.dyck.bits())
    }

    /// Shifts the root to its leftmost child. After 2n/s rotations the tree
    /// repeats, where s is the symmetry of the underlying plane tree.
    pub fn rot(&self) -> Result<RootedTree> {
        if self.dyck.is_empty() {
            return Err(Error::InvalidArgument("cannot rotate the empty tree"));
        }
        Ok(RootedTree {
            dyck: BitString::from_bits(&rot_word(self.dyck.bits())),
        })
    }

    /// All distinct rotations, in rotation order starting at self.
    pub fn orbit(&self) -> Vec<RootedTree> {
        let mut out = vec![self.clone()];
        if self.dyck.is_empty() {
            return out;
        }
        let mut cur = self.rot().expect("nonempty");
        while cur != *self {
            out.push(cur.clone());
            cur = cur.rot().expect("nonempty");
        }
        out
    }

    /// Canonical representative of the rotation orbit.
    pub fn plane_key(&self) -> PlaneTreeKey {
        let canonical = self
            .orbit()
            .into_iter()
            .map(|t| t.dyck)
            .min()
            .expect("orbit is never empty");
        PlaneTreeKey { canonical }
    }

    /// The unique rotation of this tree rooted at `r` with leftmost child
    /// `u`, for an edge (r, u). Vertex ids refer to this tree's preorder.
    pub fn reroot(&self, r: usize, u: usize) -> Result<RootedTree> {
        let idx = self.index();
        let nv = idx.vertex_count();
        if r >= nv || u >= nv || !(idx.parent[u] == Some(r) || idx.parent[r] == Some(u)) {
            return Err(Error::InvalidArgument("reroot requires an edge (r, u)"));
        }
        let neigh = neighbors_cyclic(&idx);
        Ok(emit_rooted(&neigh, r, u))
    }

    /// Leaves (root included) whose unique neighbor has degree exactly 2,
    /// ascending vertex ids. Requires at least 2 edges.
    pub fn thin_leaves(&self) -> Result<Vec<usize>> {
        if self.edge_count() < 2 {
            return Err(Error::InvalidArgument(
                "thin/thick classification needs at least 2 edges",
            ));
        }
        let idx = self.index();
        Ok((0..idx.vertex_count())
            .filter(|&v| idx.is_leaf(v) && idx.degree(idx.leaf_neighbor(v)) == 2)
            .collect())
    }

    /// The clockwise-next leaf from leaf `u`: its predecessor in the cyclic
    /// left-to-right leaf order.
    pub fn cw_next_leaf(&self, u: usize) -> Result<usize> {
        self.adjacent_leaf(u, true)
    }

    /// The counterclockwise-next leaf from leaf `u`: its successor in the
    /// cyclic left-to-right leaf order.
    pub fn ccw_next_leaf(&self, u: usize) -> Result<usize> {
        self.adjacent_leaf(u, false)
    }

    fn adjacent_leaf(&self, u: usize, clockwise: bool) -> Result<usize> {
        let idx = self.index();
        if u >= idx.vertex_count() || !idx.is_leaf(u) {
            return Err(Error::InvalidArgument("not a leaf"));
        }
        let leaves = idx.leaves_in_order();
        if leaves.len() < 2 {
            return Err(Error::InvalidArgument("need at least 2 leaves"));
        }
        let pos = leaves.iter().position(|&v| v == u).expect("u is a leaf");
        let m = leaves.len();
        Ok(if clockwise {
            leaves[(pos + m - 1) % m]
        } else {
            leaves[(pos + 1) % m]
        })
    }

    fn t1_pre(&self) -> bool {
        let b = self.dyck.bits();
        b.len() >= 6 && b[..4] == [1, 1, 0, 0]
    }

    fn t1_img(&self) -> bool {
        let b = self.dyck.bits();
        b.len() >= 6 && b[..4] == [1, 0, 1, 0]
    }

    /// Template match for the tau2 preimage set: positions of the hanging
    /// 2-chain (1,1,0,0), the moved leaf (1,0), and the spine length k.
    fn t2_pre_parts(&self, idx: &TreeIndex) -> Option<(usize, usize, usize)> {
        let up = *idx.children[0].first()?;
        let uc = &idx.children[up];
        if uc.len() < 2 {
            return None;
        }
        let u = *uc.last().unwrap();
        if !idx.children[u].is_empty() {
            return None;
        }
        let z = uc[uc.len() - 2];
        let mut b = z;
        while let Some(&c) = idx.children[b].last() {
            b = c;
        }
        if b == z {
            return None;
        }
        let a = idx.parent[b].unwrap();
        if idx.children[a].len() != 1 {
            return None;
        }
        let k = idx.depth[a] - 2;
        debug_assert_eq!(idx.enter_bit[u], idx.enter_bit[a] + 4 + k);
        Some((idx.enter_bit[a], idx.enter_bit[u], k))
    }

    /// Template match for the tau2 image set: position of the hanging
    /// 3-chain (1,1,1,0,0,0) and the spine length k.
    fn t2_img_parts(&self, idx: &TreeIndex) -> Option<(usize, usize)> {
        let up = *idx.children[0].first()?;
        let mut c = up;
        while let Some(&w) = idx.children[c].last() {
            c = w;
        }
        if idx.depth[c] < 4 {
            return None;
        }
        let b = idx.parent[c].unwrap();
        let a = idx.parent[b].unwrap();
        if idx.children[b].len() != 1 || idx.children[a].len() != 1 {
            return None;
        }
        let k = idx.depth[a] - 2;
        Some((idx.enter_bit[a], k))
    }

    /// Exactly one of the four template sets, or `None`. The sets are
    /// mutually disjoint by construction.
    pub fn tau_classify(&self) -> TauClass {
        let idx = self.index();
        let t1p = self.t1_pre();
        let t1i = self.t1_img();
        let t2p = self.t2_pre_parts(&idx).is_some();
        let t2i = self.t2_img_parts(&idx).is_some();
        debug_assert!(
            usize::from(t1p) + usize::from(t1i) + usize::from(t2p) + usize::from(t2i) <= 1,
            "tau template sets must be disjoint: {}",
            self.dyck
        );
        if t1p {
            TauClass::T1Pre
        } else if t1i {
            TauClass::T1Img
        } else if t2p {
            TauClass::T2Pre
        } else if t2i {
            TauClass::T2Img
        } else {
            TauClass::None
        }
    }

    /// (1,1,0,0) T' becomes (1,0,1,0) T': the two-edge leftmost subtree of
    /// the root turns into two leftmost leaf children.
    pub fn tau1(&self) -> Result<RootedTree> {
        if !self.t1_pre() {
            return Err(Error::Domain("tau1 preimage template does not match"));
        }
        let mut bits = self.dyck.bits().to_vec();
        bits[1] = 0;
        bits[2] = 1;
        Ok(RootedTree {
            dyck: BitString::from_bits(&bits),
        })
    }

    pub fn tau1_inv(&self) -> Result<RootedTree> {
        if !self.t1_img() {
            return Err(Error::Domain("tau1 image template does not match"));
        }
        let mut bits = self.dyck.bits().to_vec();
        bits[1] = 1;
        bits[2] = 0;
        Ok(RootedTree {
            dyck: BitString::from_bits(&bits),
        })
    }

    /// Rewrites ... (1,1,0,0) 0^k (1,0) (0) ... into ... (1,1,1,0,0,0) 0^k
    /// (0) ...: the thick leaf u moves below the thin leaf's chain,
    /// decreasing the leaf count by one.
    pub fn tau2(&self) -> Result<RootedTree> {
        let idx = self.index();
        let (e_a, e_u, k) = self
            .t2_pre_parts(&idx)
            .ok_or(Error::Domain("tau2 preimage template does not match"))?;
        let bits = self.dyck.bits();
        let mut out = Vec::with_capacity(bits.len());
        out.extend_from_slice(&bits[..e_a]);
        out.extend_from_slice(&[1, 1, 1, 0, 0, 0]);
        out.resize(out.len() + k, 0);
        out.push(0);
        out.extend_from_slice(&bits[e_u + 3..]);
        let t = RootedTree {
            dyck: BitString::from_bits(&out),
        };
        debug_assert!(t.dyck.is_dyck());
        Ok(t)
    }

    pub fn tau2_inv(&self) -> Result<RootedTree> {
        let idx = self.index();
        let (e_a, k) = self
            .t2_img_parts(&idx)
            .ok_or(Error::Domain("tau2 image template does not match"))?;
        let bits = self.dyck.bits();
        let mut out = Vec::with_capacity(bits.len());
        out.extend_from_slice(&bits[..e_a]);
        out.extend_from_slice(&[1, 1, 0, 0]);
        out.resize(out.len() + k, 0);
        out.extend_from_slice(&[1, 0, 0]);
        out.extend_from_slice(&bits[e_a + 6 + k + 1..]);
        let t = RootedTree {
            dyck: BitString::from_bits(&out),
        };
        debug_assert!(t.dyck.is_dyck());
        Ok(t)
    }
}

/// Cyclic neighbor orders of the plane tree underlying a rooted tree: the
/// root's cycle is its child order; any other vertex lists its parent first.
pub(crate) fn neighbors_cyclic(idx: &TreeIndex) -> Vec<Vec<usize>> {
    (0..idx.vertex_count())
        .map(|v| {
            let mut cyc = Vec::with_capacity(idx.degree(v));
            if let Some(p) = idx.parent[v] {
                cyc.push(p);
            }
            cyc.extend_from_slice(&idx.children[v]);
            cyc
        })
        .collect()
}

/// Pulls out `root` with leftmost child `first` from cyclic neighbor
/// orders, writing the Dyck word of the resulting ordered rooted tree.
pub(crate) fn emit_rooted(neigh: &[Vec<usize>], root: usize, first: usize) -> RootedTree {
    fn emit(neigh: &[Vec<usize>], v: usize, exclude: Option<usize>, start: usize, out: &mut Vec<u8>) {
        let cyc = &neigh[v];
        let s = cyc
            .iter()
            .position(|&w| w == start)
            .expect("start must be a neighbor");
        for t in 0..cyc.len() {
            let w = cyc[(s + t) % cyc.len()];
            if Some(w) == exclude {
                continue;
            }
            out.push(1);
            if neigh[w].len() > 1 {
                let pv = neigh[w]
                    .iter()
                    .position(|&z| z == v)
                    .expect("edges are symmetric");
                let next = neigh[w][(pv + 1) % neigh[w].len()];
                emit(neigh, w, Some(v), next, out);
            }
            out.push(0);
        }
    }
    let edges = neigh.len() - 1;
    let mut out = Vec::with_capacity(2 * edges);
    emit(neigh, root, None, first, &mut out);
    debug_assert_eq!(out.len(), 2 * edges);
    RootedTree {
        dyck: BitString::from_bits(&out),
    }
}

/// The recursive bijection on Dyck words: h(()) = () and
/// h((1) x_l (0) x_r) = (1) pi_perm(h(x_l)) (0) h(x_r), splitting at the
/// first return to height 0.
pub fn h_map(x: &BitString) -> Result<BitString> {
    if !x.is_dyck() {
        return Err(Error::InvalidArgument("h is defined on Dyck words"));
    }
    Ok(BitString::from_bits(&h_word(x.bits())))
}

/// Inverse of [`h_map`]: swaps the order of the pi_perm and the recursion.
pub fn h_inv(x: &BitString) -> Result<BitString> {
    if !x.is_dyck() {
        return Err(Error::InvalidArgument("h is defined on Dyck words"));
    }
    Ok(BitString::from_bits(&h_inv_word(x.bits())))
}

// Both transforms work in place over segment worklists, so live memory
// stays O(n) even on deeply nested words.

fn h_word(bits: &[u8]) -> Vec<u8> {
    enum Task {
        Split(usize, usize),
        Pi(usize, usize),
    }
    let mut out = bits.to_vec();
    let mut tasks = vec![Task::Split(0, out.len())];
    while let Some(task) = tasks.pop() {
        match task {
            Task::Split(s, e) => {
                if s == e {
                    continue;
                }
                let p = matching_zero(&out, s);
                // transform the left part, then swap its pairs, then the rest
                tasks.push(Task::Split(p + 1, e));
                tasks.push(Task::Pi(s + 1, p));
                tasks.push(Task::Split(s + 1, p));
            }
            Task::Pi(s, e) => pi_perm_in_place(&mut out[s..e]),
        }
    }
    out
}

fn h_inv_word(bits: &[u8]) -> Vec<u8> {
    let mut out = bits.to_vec();
    let mut tasks = vec![(0, out.len())];
    while let Some((s, e)) = tasks.pop() {
        if s == e {
            continue;
        }
        let p = matching_zero(&out, s);
        // pair swap comes before the recursive transform on the inverse side
        pi_perm_in_place(&mut out[s + 1..p]);
        tasks.push((p + 1, e));
        tasks.push((s + 1, p));
    }
    out
}
