//! Flip selection: decides, per first vertex x of a path, whether the cycle
//! stepper follows the plain path or the flipped one. The decisions are
//! made on the tree h^-1(x) and are arranged so that, over all plane trees,
//! the selected flips join every cycle of the plain 2-factor into a single
//! Hamilton cycle (the selected tau edges form a spanning tree of the
//! auxiliary plane-tree graph).

use alloc::vec::Vec;

use crate::bitseq::BitString;
use crate::error::{Error, Result};
use crate::trees::{emit_rooted, h_inv, RootedTree, TauClass};

/// True iff `t` (a tau1 preimage) is the lexicographically smallest among
/// the rotations of `t` that are also tau1 preimages.
pub fn is_flip_tree_1(t: &RootedTree) -> Result<bool> {
    flip_tree_1(t, &mut 0)
}

/// The tau2 selection rule. For a tau2 preimage `t`: the exceptional tree
/// (1)^{n-1} (0)^{n-2} (1,0,0) and trees with more than one thin leaf are
/// never selected. Otherwise the unique thin leaf v moves from its parent
/// v' to its grandparent (immediately left of v'), the result is rerooted
/// at the clockwise-next leaf w of v, and the rerooted tree T' competes on
/// d = depth of its leftmost leaf: `t` is selected iff no comparable
/// rotation of T' has a larger d and T' is lexicographically smallest among
/// those that tie.
pub fn is_flip_tree_2(t: &RootedTree) -> Result<bool> {
    flip_tree_2(t, &mut 0)
}

/// Dispatch on the four disjoint template sets of h^-1(x); vertices whose
/// tree lies in none of them are never flipped.
pub fn is_flip_vertex(n: usize, x: &BitString) -> Result<bool> {
    is_flip_vertex_counted(n, x, &mut 0)
}

/// As [`is_flip_vertex`], accumulating a work measure into `ops`.
pub fn is_flip_vertex_counted(n: usize, x: &BitString, ops: &mut u64) -> Result<bool> {
    if n < 1 || x.len() != 2 * n || !x.is_dyck() {
        return Err(Error::InvalidArgument(
            "flip vertices lie in D_{2n}^{=0}(n)",
        ));
    }
    *ops += 4 * n as u64;
    let t = RootedTree::from_dyck(h_inv(x)?)?;
    match t.tau_classify() {
        TauClass::T1Pre => flip_tree_1(&t, ops),
        TauClass::T1Img => flip_tree_1(&t.tau1_inv()?, ops),
        TauClass::T2Pre => flip_tree_2(&t, ops),
        TauClass::T2Img => flip_tree_2(&t.tau2_inv()?, ops),
        TauClass::None => Ok(false),
    }
}

fn flip_tree_1(t: &RootedTree, ops: &mut u64) -> Result<bool> {
    if t.tau_classify() != TauClass::T1Pre {
        return Err(Error::Domain("is_flip_tree_1 requires a tau1 preimage"));
    }
    // stream the rotations one at a time; only O(n) lives at once
    let mut cur = t.rot()?;
    while cur != *t {
        *ops += cur.dyck().len() as u64;
        if cur.tau_classify() == TauClass::T1Pre && cur.dyck() < t.dyck() {
            return Ok(false);
        }
        cur = cur.rot()?;
    }
    Ok(true)
}

fn flip_tree_2(t: &RootedTree, ops: &mut u64) -> Result<bool> {
    if t.tau_classify() != TauClass::T2Pre {
        return Err(Error::Domain("is_flip_tree_2 requires a tau2 preimage"));
    }
    let n = t.edge_count();
    *ops += 4 * n as u64;
    if *t.dyck() == exceptional_tree(n) {
        return Ok(false);
    }
    let thin = t.thin_leaves()?;
    if thin.len() != 1 {
        debug_assert!(!thin.is_empty(), "a tau2 preimage has a thin leaf");
        return Ok(false);
    }
    let v = thin[0];
    let idx = t.index();
    let vp = idx.parent[v].ok_or(Error::Domain("unique thin leaf sits on a chain"))?;
    let vpp = idx.parent[vp].ok_or(Error::Domain("unique thin leaf sits on a chain"))?;
    let w = t.cw_next_leaf(v)?;

    // move v from v' to v'', immediately left of v'
    let mut parent = idx.parent.clone();
    let mut children = idx.children.clone();
    children[vp].retain(|&c| c != v);
    let at = children[vpp]
        .iter()
        .position(|&c| c == vp)
        .expect("v' is a child of v''");
    children[vpp].insert(at, v);
    parent[v] = Some(vpp);

    let neigh: Vec<Vec<usize>> = (0..parent.len())
        .map(|z| {
            let mut cyc = Vec::with_capacity(children[z].len() + 1);
            if let Some(p) = parent[z] {
                cyc.push(p);
            }
            cyc.extend_from_slice(&children[z]);
            cyc
        })
        .collect();
    if neigh[w].len() != 1 {
        return Err(Error::Domain("w must still be a leaf after the move"));
    }
    let t_prime = emit_rooted(&neigh, w, neigh[w][0]);
    let d = match candidate_depth(&t_prime) {
        Some(d) => d,
        None => return Err(Error::Domain("rerooted tree lost its leaf pair")),
    };

    // all other rotations whose root is a leaf and whose leftmost leaf has
    // a leaf sibling immediately to its right
    let mut smallest_at_d = true;
    let mut cur = t_prime.rot()?;
    while cur != t_prime {
        *ops += cur.dyck().len() as u64;
        if let Some(dp) = candidate_depth(&cur) {
            if dp > d {
                return Ok(false);
            }
            if dp == d && cur.dyck() < t_prime.dyck() {
                smallest_at_d = false;
            }
        }
        cur = cur.rot()?;
    }
    Ok(smallest_at_d)
}

/// The tree (1)^{n-1} (0)^{n-2} (1,0,0) that is exempt from tau2 selection.
fn exceptional_tree(n: usize) -> BitString {
    let mut bits = Vec::with_capacity(2 * n);
    bits.resize(n - 1, 1);
    bits.resize(2 * n - 3, 0);
    bits.extend_from_slice(&[1, 0, 0]);
    BitString::from_bits(&bits)
}

/// For a rotation to compete in the tau2 rule its root must be a leaf and
/// the parent of its leftmost leaf must have another leaf as the child
/// immediately to the right; returns the depth of the leftmost leaf.
fn candidate_depth(t: &RootedTree) -> Option<usize> {
    let idx = t.index();
    if idx.children[0].len() != 1 {
        return None;
    }
    let mut x = 0;
    while let Some(&c) = idx.children[x].first() {
        x = c;
    }
    let p = idx.parent[x]?;
    let &sib = idx.children[p].get(1)?;
    if !idx.children[sib].is_empty() {
        return None;
    }
    Some(idx.depth[x])
}
