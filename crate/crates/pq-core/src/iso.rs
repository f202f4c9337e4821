//! Homomorphism checking and exact isomorphism search for finite magmas.
//!
//! The search backtracks over candidate images, filtered by cheap
//! isomorphism-invariant element keys (kernel size, row/column value
//! profiles, fixed-point counts). The keys never prune a true isomorphism:
//! each is preserved by any operation-respecting bijection, so key-mismatched
//! elements cannot correspond.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::kernel::kernel;
use crate::magma::FiniteMagma;
use crate::Limits;

/// A bijection on `0..n` that carries one operation table onto another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsomorphismWitness {
    pub mapping: Vec<usize>,
    pub verified: bool,
}

impl IsomorphismWitness {
    /// The inverse bijection (not re-verified; see [`verify_mapping`]).
    pub fn inverted(&self) -> Vec<usize> {
        let mut inv = vec![0usize; self.mapping.len()];
        for (x, &y) in self.mapping.iter().enumerate() {
            inv[y] = x;
        }
        inv
    }
}

/// Whether `f` respects the operations: `f(x*y) = f(x)*f(y)` for all pairs.
pub fn verify_mapping(a: &FiniteMagma, b: &FiniteMagma, f: &[usize]) -> bool {
    a.size() == b.size()
        && f.len() == a.size()
        && (0..a.size()).all(|x| (0..a.size()).all(|y| f[a.op(x, y)] == b.op(f[x], f[y])))
}

/// Result of an exhaustive homomorphism check.
#[derive(Clone, Debug)]
pub struct HomReport {
    pub holds: bool,
    /// First pair `(x, y)` with `f(x*y) != f(x)*f(y)`.
    pub counterexample: Option<(usize, usize)>,
}

/// Checks a total map `f: a -> b` for the homomorphism law.
pub fn check_homomorphism(a: &FiniteMagma, b: &FiniteMagma, f: &[usize]) -> Result<HomReport> {
    if f.len() != a.size() {
        return Err(Error::BadParameter(format!(
            "map has {} entries, expected {}",
            f.len(),
            a.size()
        )));
    }
    for (index, &image) in f.iter().enumerate() {
        if image >= b.size() {
            return Err(Error::BadMap {
                index,
                image,
                size: b.size(),
            });
        }
    }
    for x in 0..a.size() {
        for y in 0..a.size() {
            if f[a.op(x, y)] != b.op(f[x], f[y]) {
                return Ok(HomReport {
                    holds: false,
                    counterexample: Some((x, y)),
                });
            }
        }
    }
    Ok(HomReport {
        holds: true,
        counterexample: None,
    })
}

/// Isomorphism-invariant fingerprint of one element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct ElementKey {
    idempotent: bool,
    kernel_size: usize,
    right_fixes: usize,
    left_fixes: usize,
    row_profile: Vec<u32>,
    col_profile: Vec<u32>,
}

fn element_keys(m: &FiniteMagma) -> Vec<ElementKey> {
    let n = m.size();
    (0..n)
        .map(|x| {
            let mut row_counts = vec![0u32; n];
            let mut col_counts = vec![0u32; n];
            let mut right_fixes = 0;
            let mut left_fixes = 0;
            for y in 0..n {
                row_counts[m.op(x, y)] += 1;
                col_counts[m.op(y, x)] += 1;
                if m.op(x, y) == x {
                    right_fixes += 1;
                }
                if m.op(y, x) == x {
                    left_fixes += 1;
                }
            }
            let mut row_profile: Vec<u32> = row_counts.into_iter().filter(|&c| c > 0).collect();
            row_profile.sort_unstable();
            let mut col_profile: Vec<u32> = col_counts.into_iter().filter(|&c| c > 0).collect();
            col_profile.sort_unstable();
            ElementKey {
                idempotent: m.op(x, x) == x,
                kernel_size: kernel(m, x).len(),
                right_fixes,
                left_fixes,
                row_profile,
                col_profile,
            }
        })
        .collect()
}

struct Search<'a> {
    a: &'a FiniteMagma,
    b: &'a FiniteMagma,
    order: Vec<usize>,
    candidates: Vec<Vec<usize>>,
    mapped: Vec<Option<usize>>,
    used: Vec<bool>,
    assigned: Vec<usize>,
}

impl Search<'_> {
    /// Partial consistency after tentatively adding the latest assignment:
    /// every product among assigned elements whose value is also assigned
    /// must commute with the map.
    fn consistent(&self) -> bool {
        for &u in &self.assigned {
            let fu = self.mapped[u].expect("assigned");
            for &v in &self.assigned {
                let fv = self.mapped[v].expect("assigned");
                if let Some(fp) = self.mapped[self.a.op(u, v)] {
                    if self.b.op(fu, fv) != fp {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for idx in 0..self.candidates[x].len() {
            let y = self.candidates[x][idx];
            if self.used[y] {
                continue;
            }
            self.mapped[x] = Some(y);
            self.used[y] = true;
            self.assigned.push(x);
            if self.consistent() && self.run(depth + 1) {
                return true;
            }
            self.assigned.pop();
            self.used[y] = false;
            self.mapped[x] = None;
        }
        false
    }
}

/// Exact isomorphism search: returns a verified witness when the magmas are
/// isomorphic, `None` when they are not. No false negatives within the size
/// cap.
pub fn find_isomorphism(
    a: &FiniteMagma,
    b: &FiniteMagma,
    limits: &Limits,
) -> Result<Option<IsomorphismWitness>> {
    if a.size() != b.size() {
        return Ok(None);
    }
    let n = a.size();
    if n > limits.max_iso {
        return Err(Error::SizeLimit {
            what: "isomorphism search size",
            actual: n,
            cap: limits.max_iso,
        });
    }
    let keys_a = element_keys(a);
    let keys_b = element_keys(b);
    let mut sorted_a = keys_a.clone();
    let mut sorted_b = keys_b.clone();
    sorted_a.sort_unstable();
    sorted_b.sort_unstable();
    if sorted_a != sorted_b {
        return Ok(None);
    }
    let mut by_key: HashMap<&ElementKey, Vec<usize>> = HashMap::new();
    for (y, key) in keys_b.iter().enumerate() {
        by_key.entry(key).or_default().push(y);
    }
    let candidates: Vec<Vec<usize>> = keys_a
        .iter()
        .map(|key| by_key.get(key).cloned().unwrap_or_default())
        .collect();
    if candidates.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| candidates[x].len());

    let mut search = Search {
        a,
        b,
        order,
        candidates,
        mapped: vec![None; n],
        used: vec![false; n],
        assigned: Vec::with_capacity(n),
    };
    if !search.run(0) {
        return Ok(None);
    }
    let mapping: Vec<usize> = search
        .mapped
        .iter()
        .map(|m| m.expect("complete assignment"))
        .collect();
    let verified = verify_mapping(a, b, &mapping);
    debug_assert!(verified);
    Ok(Some(IsomorphismWitness { mapping, verified }))
}
