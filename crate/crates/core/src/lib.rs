//! Circuit-set matroids, matroid homomorphisms, and their decomposition
//! into a homeomorphism followed by a circuit injection.
//!
//! The crate provides:
//!
//! - validated circuit-set matroids and the usual single-matroid queries
//!   (rank, co-rank, connectivity, series classes, binary test),
//! - ground-set maps with the homomorphism / homeomorphism / circuit
//!   injection predicates and exhaustive map search,
//! - executable forms of the structural facts about connected matroids of
//!   small co-rank, and the constructive decomposition `f = h ∘ g` of a
//!   homomorphism onto a binary, non-circuit target,
//! - exhaustive enumeration of all labelled matroids on small ground sets
//!   and verification suites that quantify the facts and theorems over the
//!   enumerated catalog,
//! - JSON documents for matroids and maps, shared with the CLI.
//!
//! With the default `parallel` feature the verification suites fan
//! instances out across a rayon thread pool; disabling it leaves a purely
//! sequential build. Both produce identical reports.

pub mod catalog;
pub mod construct;
pub mod iso;
pub mod json;
pub mod maps;
pub mod matroid;
mod par;
pub mod set;
pub mod structure;

pub use construct::{cycle_matroid, series_quotient, subdivide, uniform};
pub use iso::isomorphic;
pub use maps::{
    all_homomorphisms, all_surjections, is_circuit_injection, is_homeomorphism, is_homomorphism,
    GroundMap, MapError,
};
pub use matroid::{GroundSet, LabelSet, Matroid, MatroidError, SeriesPartition};
pub use set::ElemSet;

#[cfg(test)]
pub(crate) mod fixtures {
    use std::collections::BTreeMap;

    use crate::maps::GroundMap;
    use crate::matroid::{GroundSet, Matroid};
    use crate::set::ElemSet;

    fn circuits(masks: &[&[usize]]) -> Vec<ElemSet> {
        masks
            .iter()
            .map(|c| c.iter().copied().collect())
            .collect()
    }

    pub fn u12() -> Matroid {
        let g = GroundSet::new(["x", "y"]).unwrap();
        Matroid::from_circuits(g, circuits(&[&[0, 1]])).unwrap()
    }

    pub fn u13() -> Matroid {
        u13_relabeled(&["x", "y", "z"])
    }

    pub fn u13_relabeled(labels: &[&str]) -> Matroid {
        let g = GroundSet::new(labels.iter().copied()).unwrap();
        Matroid::from_circuits(g, circuits(&[&[0, 1], &[0, 2], &[1, 2]])).unwrap()
    }

    pub fn u23() -> Matroid {
        let g = GroundSet::new(["x", "y", "z"]).unwrap();
        Matroid::from_circuits(g, circuits(&[&[0, 1, 2]])).unwrap()
    }

    pub fn u24() -> Matroid {
        let g = GroundSet::new(["a", "b", "c", "d"]).unwrap();
        Matroid::from_circuits(
            g,
            circuits(&[&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]]),
        )
        .unwrap()
    }

    /// The theta matroid: cycle matroid of two vertices joined by three
    /// internally disjoint two-edge paths.
    pub fn theta() -> Matroid {
        let g = GroundSet::new(["a1", "a2", "b1", "b2", "c1", "c2"]).unwrap();
        Matroid::from_circuits(
            g,
            circuits(&[&[0, 1, 2, 3], &[0, 1, 4, 5], &[2, 3, 4, 5]]),
        )
        .unwrap()
    }

    /// theta -> U_{1,3}: collapse each series pair.
    pub fn theta_collapse() -> (Matroid, Matroid, GroundMap) {
        let theta = theta();
        let u13 = u13();
        let f = GroundMap::new(
            theta.ground().clone(),
            u13.ground().clone(),
            vec![0, 0, 1, 1, 2, 2],
        )
        .unwrap();
        (theta, u13, f)
    }

    /// theta -> U_{1,2}: a1,b1,c1 -> x and a2,b2,c2 -> y.
    pub fn theta_onto_u12() -> (Matroid, Matroid, GroundMap) {
        let theta = theta();
        let u12 = u12();
        let f = GroundMap::new(
            theta.ground().clone(),
            u12.ground().clone(),
            vec![0, 1, 0, 1, 0, 1],
        )
        .unwrap();
        (theta, u12, f)
    }

    pub fn fibers(spec: &[(&str, &[&str])]) -> BTreeMap<String, Vec<String>> {
        spec.iter()
            .map(|(k, v)| (k.to_string(), v.iter().map(|s| s.to_string()).collect()))
            .collect()
    }
}
