//! Test-only oracles, kept out of the library: an independent GF(2)
//! representability check for the binary predicate, and a direct
//! brute-force circuit-axiom filter for validating the constructor and
//! the enumerator.

// Shared between test targets; not every target uses every oracle.
#![allow(dead_code)]

use matroid_hom::{ElemSet, Matroid};

/// GF(2) representability by explicit construction: build the candidate
/// representation over a greedy basis (basis elements become unit vectors,
/// every other element the sum of its fundamental circuit's basis part)
/// and compare the matrix matroid's circuits with the input's. A matroid
/// is binary exactly when this candidate represents it.
pub fn gf2_representable(m: &Matroid) -> bool {
    let n = m.num_elements();
    let full = m.ground().full_set();

    // Greedy maximal independent set; maximal = maximum in a matroid.
    let mut basis: Vec<usize> = Vec::new();
    let mut basis_set = ElemSet::EMPTY;
    for e in 0..n {
        if m.is_independent(basis_set.with(e)) {
            basis.push(e);
            basis_set = basis_set.with(e);
        }
    }

    // Column of e: unit vector for basis elements; otherwise the basis part
    // of the unique circuit inside basis ∪ {e}.
    let mut columns = vec![0u64; n];
    for (i, &b) in basis.iter().enumerate() {
        columns[b] = 1 << i;
    }
    for (e, column) in columns.iter_mut().enumerate() {
        if basis_set.contains(e) {
            continue;
        }
        let inside = basis_set.with(e);
        let fundamental: Vec<ElemSet> = m
            .circuits()
            .iter()
            .copied()
            .filter(|c| c.is_subset_of(inside))
            .collect();
        assert_eq!(
            fundamental.len(),
            1,
            "a maximal independent set plus one element holds exactly one circuit"
        );
        let mut v = 0u64;
        for (i, &b) in basis.iter().enumerate() {
            if fundamental[0].contains(b) {
                v |= 1 << i;
            }
        }
        *column = v;
    }

    // Circuits of the matrix matroid: minimal subsets whose columns are
    // GF(2)-dependent.
    let mut dependent: Vec<ElemSet> = Vec::new();
    for s in full.subsets() {
        if !s.is_empty() && gf2_rank(s.iter().map(|i| columns[i])) < s.len() {
            dependent.push(s);
        }
    }
    let mut matrix_circuits: Vec<ElemSet> = dependent
        .iter()
        .copied()
        .filter(|&c| !dependent.iter().any(|&d| d.is_proper_subset_of(c)))
        .collect();
    matrix_circuits.sort();
    matrix_circuits == m.circuits()
}

fn gf2_rank(vectors: impl Iterator<Item = u64>) -> usize {
    let mut basis: Vec<u64> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            let pivot = 1u64 << (63 - b.leading_zeros());
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            basis.push(v);
        }
    }
    basis.len()
}

/// Direct statement of the circuit axioms, independent of the library's
/// validating constructor: nonempty members, an antichain, and weak
/// elimination. Assumes `family` is duplicate-free.
pub fn oracle_is_circuit_family(family: &[ElemSet]) -> bool {
    if family.iter().any(|c| c.is_empty()) {
        return false;
    }
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i + 1..] {
            if a.is_subset_of(b) || b.is_subset_of(a) {
                return false;
            }
        }
    }
    for (i, &a) in family.iter().enumerate() {
        for &b in &family[i + 1..] {
            for e in a.intersect(b).iter() {
                let target = a.union(b).without(e);
                if !family.iter().any(|c| c.is_subset_of(target)) {
                    return false;
                }
            }
        }
    }
    true
}

/// Every family of distinct nonempty subsets of `{0..n}`, by selection
/// bitmask over the `2^n − 1` nonempty masks. Usable up to `n = 4`.
pub fn all_families(n: usize) -> impl Iterator<Item = Vec<ElemSet>> {
    let masks: Vec<u64> = (1..(1u64 << n)).collect();
    assert!(masks.len() <= 20, "family space too large");
    (0u64..(1 << masks.len())).map(move |selection| {
        masks
            .iter()
            .enumerate()
            .filter(|(i, _)| selection & (1 << i) != 0)
            .map(|(_, &bits)| ElemSet::from_bits(bits))
            .collect()
    })
}
