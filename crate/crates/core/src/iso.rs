//! Brute-force matroid isomorphism with signature pruning.

use crate::maps::GroundMap;
use crate::matroid::Matroid;
use crate::set::ElemSet;

/// Search for a ground-set bijection carrying the circuits of `m` onto the
/// circuits of `n`.
///
/// The search assigns source elements in index order, trying target
/// candidates in ascending order, so the first hit is the lexicographically
/// smallest assignment vector. Candidates are pruned by per-element
/// circuit-size signatures and by checking each circuit as soon as all of
/// its members are assigned.
pub fn isomorphic(m: &Matroid, n: &Matroid) -> Option<GroundMap> {
    let size = m.num_elements();
    if size != n.num_elements() || m.circuits().len() != n.circuits().len() {
        return None;
    }
    let mut m_sizes: Vec<usize> = m.circuits().iter().map(|c| c.len()).collect();
    let mut n_sizes: Vec<usize> = n.circuits().iter().map(|c| c.len()).collect();
    m_sizes.sort_unstable();
    n_sizes.sort_unstable();
    if m_sizes != n_sizes {
        return None;
    }

    let sig_m = signatures(m);
    let sig_n = signatures(n);
    {
        let mut a = sig_m.clone();
        let mut b = sig_n.clone();
        a.sort();
        b.sort();
        if a != b {
            return None;
        }
    }

    // Circuits of m indexed by their largest member: each is checked the
    // moment that member is assigned.
    let mut closing_at: Vec<Vec<usize>> = vec![Vec::new(); size];
    for (ci, c) in m.circuits().iter().enumerate() {
        closing_at[c.iter().last().unwrap()].push(ci);
    }

    let mut assignment = vec![0usize; size];
    let mut used = vec![false; size];
    if search(
        m,
        n,
        &sig_m,
        &sig_n,
        &closing_at,
        0,
        &mut assignment,
        &mut used,
    ) {
        Some(
            GroundMap::new(m.ground().clone(), n.ground().clone(), assignment)
                .expect("bijection assignment is total and in range"),
        )
    } else {
        None
    }
}

/// Multiset of sizes of the circuits through each element.
fn signatures(m: &Matroid) -> Vec<Vec<usize>> {
    (0..m.num_elements())
        .map(|e| {
            let mut sizes: Vec<usize> = m
                .circuits()
                .iter()
                .filter(|c| c.contains(e))
                .map(|c| c.len())
                .collect();
            sizes.sort_unstable();
            sizes
        })
        .collect()
}

#[allow(clippy::too_many_arguments)]
fn search(
    m: &Matroid,
    n: &Matroid,
    sig_m: &[Vec<usize>],
    sig_n: &[Vec<usize>],
    closing_at: &[Vec<usize>],
    pos: usize,
    assignment: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == m.num_elements() {
        return true;
    }
    for t in 0..n.num_elements() {
        if used[t] || sig_n[t] != sig_m[pos] {
            continue;
        }
        assignment[pos] = t;
        let closed_ok = closing_at[pos].iter().all(|&ci| {
            let image: ElemSet = m.circuits()[ci].iter().map(|e| assignment[e]).collect();
            n.is_circuit(image)
        });
        if closed_ok {
            used[t] = true;
            if search(m, n, sig_m, sig_n, closing_at, pos + 1, assignment, used) {
                return true;
            }
            used[t] = false;
        }
    }
    false
}
