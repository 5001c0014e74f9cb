//! Circuit-set matroids: validated construction and single-matroid queries.
//!
//! A matroid is stored as its ground set plus the family of circuits
//! (minimal dependent sets). Construction checks the circuit axioms:
//!
//! - (C1) no circuit is empty,
//! - (C2) the family is an antichain under inclusion,
//! - (C3) weak elimination: for distinct circuits `A`, `B` and
//!   `e ∈ A ∩ B` there is a circuit inside `(A ∪ B) − {e}`.
//!
//! The circuit list is kept sorted, so matroid equality is structural.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::set::{ElemSet, MAX_ELEMENTS};

/// A set of element labels, used in error messages and witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelSet(pub Vec<String>);

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("duplicate label `{0}` in ground set")]
    DuplicateLabel(String),
    #[error("empty label in ground set")]
    EmptyLabel,
    #[error("ground set has {got} elements; at most {MAX_ELEMENTS} are supported")]
    TooManyElements { got: usize },
    #[error("element `{0}` is not in the ground set")]
    ElementNotInGround(String),
    #[error("a circuit is empty")]
    EmptyCircuit,
    #[error("circuit family is not an antichain: {inner} is contained in {outer}")]
    NotAntichain { inner: LabelSet, outer: LabelSet },
    #[error("weak elimination fails for circuits {a} and {b} at element `{e}`")]
    EliminationFails { a: LabelSet, b: LabelSet, e: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("edge references vertex {vertex} but the graph has {vertices} vertices")]
    InvalidVertex { vertex: usize, vertices: usize },
    #[error("fibers overlap at label `{0}`")]
    FiberOverlap(String),
    #[error("fiber for element `{0}` is empty or missing")]
    EmptyFiber(String),
    #[error("matroid is not connected")]
    NotConnected,
    #[error("matroid has coloops")]
    HasColoops,
}

/// An ordered ground set of distinct element labels.
///
/// Elements are addressed by dense index `0..n`; the label order is the
/// input order and is part of the value (two ground sets are equal only
/// if their label sequences are equal).
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    labels: Arc<Vec<String>>,
}

impl GroundSet {
    pub fn new<I, S>(labels: I) -> Result<Self, MatroidError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.len() > MAX_ELEMENTS {
            return Err(MatroidError::TooManyElements { got: labels.len() });
        }
        for (i, l) in labels.iter().enumerate() {
            if l.is_empty() {
                return Err(MatroidError::EmptyLabel);
            }
            if labels[..i].contains(l) {
                return Err(MatroidError::DuplicateLabel(l.clone()));
            }
        }
        Ok(GroundSet {
            labels: Arc::new(labels),
        })
    }

    /// Ground set `e0, e1, .., e(n-1)`.
    pub fn indexed(n: usize) -> Self {
        GroundSet::new((0..n).map(|i| format!("e{i}"))).expect("indexed labels are distinct")
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_set(&self) -> ElemSet {
        ElemSet::full(self.len())
    }

    /// Resolve a collection of labels to an element set.
    pub fn set_of<'a, I: IntoIterator<Item = &'a str>>(
        &self,
        labels: I,
    ) -> Result<ElemSet, MatroidError> {
        let mut s = ElemSet::EMPTY;
        for l in labels {
            let i = self
                .index_of(l)
                .ok_or_else(|| MatroidError::ElementNotInGround(l.to_string()))?;
            s = s.with(i);
        }
        Ok(s)
    }

    /// Render an element set as its labels, in element order.
    pub fn labels_of(&self, set: ElemSet) -> Vec<String> {
        set.iter().map(|i| self.labels[i].clone()).collect()
    }

    pub fn label_set(&self, set: ElemSet) -> LabelSet {
        LabelSet(self.labels_of(set))
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.labels.join(","))
    }
}

/// Partition of a matroid's elements by circuit incidence.
///
/// `classes` covers exactly the elements lying in at least one circuit of
/// size two or more; two elements share a class iff they lie in exactly
/// the same circuits. Loops (singleton circuits) and coloops (elements in
/// no circuit) are reported separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPartition {
    pub classes: Vec<ElemSet>,
    pub loops: ElemSet,
    pub coloops: ElemSet,
}

/// A matroid given by its ground set and circuit family.
#[derive(Clone, PartialEq, Eq)]
pub struct Matroid {
    ground: GroundSet,
    circuits: Vec<ElemSet>,
}

impl Matroid {
    /// Validate the circuit axioms (C1)-(C3) and build the matroid.
    ///
    /// The family is deduplicated and stored in canonical (lexicographic)
    /// order, so equality of `Matroid` values is structural equality.
    pub fn from_circuits<I>(ground: GroundSet, family: I) -> Result<Self, MatroidError>
    where
        I: IntoIterator<Item = ElemSet>,
    {
        let full = ground.full_set();
        let mut circuits: Vec<ElemSet> = Vec::new();
        for c in family {
            if !c.is_subset_of(full) {
                let stray = c.minus(full).min_elem().unwrap();
                return Err(MatroidError::ElementNotInGround(format!("#{stray}")));
            }
            if c.is_empty() {
                return Err(MatroidError::EmptyCircuit);
            }
            circuits.push(c);
        }
        circuits.sort();
        circuits.dedup();

        for i in 0..circuits.len() {
            for j in 0..circuits.len() {
                if i != j && circuits[i].is_proper_subset_of(circuits[j]) {
                    return Err(MatroidError::NotAntichain {
                        inner: ground.label_set(circuits[i]),
                        outer: ground.label_set(circuits[j]),
                    });
                }
            }
        }

        for i in 0..circuits.len() {
            for j in i + 1..circuits.len() {
                let (a, b) = (circuits[i], circuits[j]);
                let union = a.union(b);
                for e in a.intersect(b).iter() {
                    let target = union.without(e);
                    if !circuits.iter().any(|c| c.is_subset_of(target)) {
                        return Err(MatroidError::EliminationFails {
                            a: ground.label_set(a),
                            b: ground.label_set(b),
                            e: ground.label(e).to_string(),
                        });
                    }
                }
            }
        }

        Ok(Matroid { ground, circuits })
    }

    /// Build without re-checking the axioms. `circuits` must be sorted,
    /// deduplicated, and satisfy (C1)-(C3).
    pub(crate) fn from_parts_unchecked(ground: GroundSet, circuits: Vec<ElemSet>) -> Self {
        debug_assert!(circuits.windows(2).all(|w| w[0] < w[1]));
        Matroid { ground, circuits }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn num_elements(&self) -> usize {
        self.ground.len()
    }

    pub fn circuits(&self) -> &[ElemSet] {
        &self.circuits
    }

    pub fn is_circuit(&self, set: ElemSet) -> bool {
        self.circuits.binary_search(&set).is_ok()
    }

    /// Independent = contains no circuit.
    pub fn is_independent(&self, set: ElemSet) -> bool {
        !self.circuits.iter().any(|c| c.is_subset_of(set))
    }

    pub(crate) fn check_subset(&self, a: ElemSet) -> Result<(), MatroidError> {
        if a.is_subset_of(self.ground.full_set()) {
            Ok(())
        } else {
            let stray = a.minus(self.ground.full_set()).min_elem().unwrap();
            Err(MatroidError::ElementNotInGround(format!("#{stray}")))
        }
    }

    pub(crate) fn check_element(&self, x: usize) -> Result<(), MatroidError> {
        if x < self.ground.len() {
            Ok(())
        } else {
            Err(MatroidError::ElementNotInGround(format!("#{x}")))
        }
    }

    /// Restriction `M|A`: the circuits of `M` contained in `A`, on ground `A`.
    pub fn restrict(&self, a: ElemSet) -> Result<Matroid, MatroidError> {
        self.check_subset(a)?;
        let members: Vec<usize> = a.iter().collect();
        let ground = GroundSet::new(members.iter().map(|&i| self.ground.label(i)))
            .expect("labels of a restriction stay distinct");
        let mut circuits: Vec<ElemSet> = self
            .circuits
            .iter()
            .filter(|c| c.is_subset_of(a))
            .map(|c| {
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, &old)| c.contains(old))
                    .map(|(new, _)| new)
                    .collect()
            })
            .collect();
        circuits.sort();
        Ok(Matroid::from_parts_unchecked(ground, circuits))
    }

    /// Rank of `A`: the size of a largest subset of `A` containing no
    /// circuit, by brute-force subset search.
    pub fn rank(&self, a: ElemSet) -> Result<usize, MatroidError> {
        self.check_subset(a)?;
        Ok(self.rank_within(a))
    }

    pub(crate) fn rank_within(&self, a: ElemSet) -> usize {
        let mut best = 0;
        for s in a.subsets() {
            if s.len() > best && self.is_independent(s) {
                best = s.len();
            }
        }
        best
    }

    pub fn full_rank(&self) -> usize {
        self.rank_within(self.ground.full_set())
    }

    /// Co-rank: `|E(M)| − r(M)`.
    pub fn corank(&self) -> usize {
        self.ground.len() - self.full_rank()
    }

    pub(crate) fn corank_within(&self, a: ElemSet) -> usize {
        a.len() - self.rank_within(a)
    }

    /// Connected: at most one element, or every pair of distinct elements
    /// lies in a common circuit.
    pub fn is_connected(&self) -> bool {
        self.is_connected_within(self.ground.full_set())
    }

    /// Connectivity of the restriction to `a`, without building it.
    pub(crate) fn is_connected_within(&self, a: ElemSet) -> bool {
        if a.len() <= 1 {
            return true;
        }
        for x in a.iter() {
            let mut covered = ElemSet::EMPTY;
            for c in &self.circuits {
                if c.contains(x) && c.is_subset_of(a) {
                    covered = covered.union(*c);
                }
            }
            if !a.without(x).is_subset_of(covered) {
                return false;
            }
        }
        true
    }

    /// `CR^k`: connected and of co-rank `k`.
    pub fn is_crk(&self, k: usize) -> bool {
        self.is_connected() && self.corank() == k
    }

    pub(crate) fn is_crk_within(&self, a: ElemSet, k: usize) -> bool {
        self.is_connected_within(a) && self.corank_within(a) == k
    }

    /// True iff every circuit contains both of `x`, `y` or neither.
    pub fn in_series(&self, x: usize, y: usize) -> Result<bool, MatroidError> {
        self.check_element(x)?;
        self.check_element(y)?;
        Ok(self
            .circuits
            .iter()
            .all(|c| c.contains(x) == c.contains(y)))
    }

    /// Partition the ground set into maximal series classes, loops, and
    /// coloops. See [`SeriesPartition`].
    pub fn series_partition(&self) -> SeriesPartition {
        let mut loops = ElemSet::EMPTY;
        let mut coloops = ElemSet::EMPTY;
        let mut classified: Vec<(Vec<usize>, ElemSet)> = Vec::new();
        for x in 0..self.ground.len() {
            let incidence: Vec<usize> = (0..self.circuits.len())
                .filter(|&i| self.circuits[i].contains(x))
                .collect();
            if incidence.is_empty() {
                coloops = coloops.with(x);
            } else if self.is_circuit(ElemSet::singleton(x)) {
                loops = loops.with(x);
            } else if let Some(entry) = classified.iter_mut().find(|(sig, _)| *sig == incidence) {
                entry.1 = entry.1.with(x);
            } else {
                classified.push((incidence, ElemSet::singleton(x)));
            }
        }
        let mut classes: Vec<ElemSet> = classified.into_iter().map(|(_, c)| c).collect();
        classes.sort();
        SeriesPartition {
            classes,
            loops,
            coloops,
        }
    }

    /// Binary test by the symmetric-difference characterization: for every
    /// pair of distinct circuits, `A Δ B` is a disjoint union of circuits.
    pub fn is_binary(&self) -> bool {
        self.first_non_binary_pair().is_none()
    }

    /// The first (in stored order) pair of distinct circuits whose symmetric
    /// difference is not a disjoint union of circuits, if any.
    pub fn first_non_binary_pair(&self) -> Option<(ElemSet, ElemSet)> {
        for i in 0..self.circuits.len() {
            for j in i + 1..self.circuits.len() {
                let diff = self.circuits[i].sym_diff(self.circuits[j]);
                if !self.is_disjoint_union_of_circuits(diff) {
                    return Some((self.circuits[i], self.circuits[j]));
                }
            }
        }
        None
    }

    fn is_disjoint_union_of_circuits(&self, set: ElemSet) -> bool {
        // Exact cover by circuits, branching on the smallest uncovered element.
        let Some(e) = set.min_elem() else {
            return true;
        };
        self.circuits
            .iter()
            .filter(|c| c.contains(e) && c.is_subset_of(set))
            .any(|c| self.is_disjoint_union_of_circuits(set.minus(*c)))
    }

    /// True iff the whole ground set is the unique circuit (`U_{n-1,n}`).
    pub fn is_single_circuit(&self) -> bool {
        self.circuits.len() == 1 && self.circuits[0] == self.ground.full_set()
    }

    /// Circuits rendered as label lists, for reports.
    pub fn circuit_labels(&self) -> Vec<Vec<String>> {
        self.circuits
            .iter()
            .map(|c| self.ground.labels_of(*c))
            .collect()
    }

    /// Compact one-line rendering, used in witness descriptions.
    pub fn describe(&self) -> String {
        let circuits: Vec<String> = self
            .circuits
            .iter()
            .map(|c| self.ground.label_set(*c).to_string())
            .collect();
        format!(
            "ground {{{}}} circuits [{}]",
            self.ground.labels().join(","),
            circuits.join(" ")
        )
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matroid({})", self.describe())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(m: &Matroid, labels: &[&str]) -> ElemSet {
        m.ground().set_of(labels.iter().copied()).unwrap()
    }

    #[test]
    fn single_circuit_family_is_accepted() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let m = Matroid::from_circuits(g, [ElemSet::full(2)]).unwrap();
        assert_eq!(m.circuits().len(), 1);
        assert!(m.is_single_circuit());
    }

    #[test]
    fn uniform_family_is_accepted() {
        let m = fixtures::u24();
        assert_eq!(m.circuits().len(), 4);
    }

    #[test]
    fn nested_circuits_are_rejected() {
        let g = GroundSet::new(["a", "b", "c"]).unwrap();
        let inner: ElemSet = [0, 1].into_iter().collect();
        let outer = ElemSet::full(3);
        let err = Matroid::from_circuits(g, [inner, outer]).unwrap_err();
        assert!(matches!(err, MatroidError::NotAntichain { .. }));
    }

    #[test]
    fn elimination_violation_is_rejected() {
        // {a,b,c} and {a,b,d} intersect at a and b but nothing covers the
        // complement of either, so weak elimination fails.
        let g = GroundSet::new(["a", "b", "c", "d"]).unwrap();
        let fam: Vec<ElemSet> = vec![
            [0, 1, 2].into_iter().collect(),
            [0, 1, 3].into_iter().collect(),
        ];
        let err = Matroid::from_circuits(g, fam).unwrap_err();
        assert!(matches!(err, MatroidError::EliminationFails { .. }));
    }

    #[test]
    fn empty_circuit_is_rejected() {
        let g = GroundSet::new(["a"]).unwrap();
        let err = Matroid::from_circuits(g, [ElemSet::EMPTY]).unwrap_err();
        assert_eq!(err, MatroidError::EmptyCircuit);
    }

    #[test]
    fn duplicate_circuits_collapse() {
        let g = GroundSet::new(["a", "b"]).unwrap();
        let m = Matroid::from_circuits(g, [ElemSet::full(2), ElemSet::full(2)]).unwrap();
        assert_eq!(m.circuits().len(), 1);
    }

    #[test]
    fn restriction_filters_circuits() {
        let u24 = fixtures::u24();
        let r = u24.restrict(set(&u24, &["a", "b", "c"])).unwrap();
        assert_eq!(r.circuits(), &[ElemSet::full(3)]);
        assert_eq!(r.ground().labels(), &["a", "b", "c"]);

        let all = u24.restrict(u24.ground().full_set()).unwrap();
        assert_eq!(all, u24);

        let theta = fixtures::theta();
        let r = theta
            .restrict(set(&theta, &["a1", "a2", "b1", "b2"]))
            .unwrap();
        assert_eq!(r.circuits().len(), 1);
        assert!(r.is_single_circuit());
    }

    #[test]
    fn rank_and_corank() {
        let u24 = fixtures::u24();
        assert_eq!(u24.rank(u24.ground().full_set()).unwrap(), 2);
        assert_eq!(u24.rank(ElemSet::EMPTY).unwrap(), 0);
        assert_eq!(u24.corank(), 2);

        let theta = fixtures::theta();
        assert_eq!(theta.full_rank(), 4);
        assert_eq!(theta.corank(), 2);

        let free = Matroid::from_circuits(GroundSet::indexed(3), []).unwrap();
        assert_eq!(free.corank(), 0);
    }

    #[test]
    fn rank_rejects_foreign_elements() {
        let u24 = fixtures::u24();
        let err = u24.rank(ElemSet::singleton(9)).unwrap_err();
        assert!(matches!(err, MatroidError::ElementNotInGround(_)));
    }

    #[test]
    fn connectivity() {
        assert!(fixtures::u24().is_connected());
        assert!(fixtures::theta().is_connected());

        let g = GroundSet::new(["a", "b", "c", "d"]).unwrap();
        let two: Vec<ElemSet> = vec![
            [0, 1].into_iter().collect(),
            [2, 3].into_iter().collect(),
        ];
        let m = Matroid::from_circuits(g, two).unwrap();
        assert!(!m.is_connected());

        let loner = Matroid::from_circuits(GroundSet::indexed(1), []).unwrap();
        assert!(loner.is_connected());
    }

    #[test]
    fn crk_flags() {
        assert!(fixtures::u24().is_crk(2));
        assert!(!fixtures::u24().is_crk(3));
        assert!(fixtures::u23().is_crk(1));
        assert!(fixtures::theta().is_crk(2));
    }

    #[test]
    fn series_partition_groups_by_incidence() {
        let theta = fixtures::theta();
        let p = theta.series_partition();
        let classes: Vec<Vec<String>> = p
            .classes
            .iter()
            .map(|c| theta.ground().labels_of(*c))
            .collect();
        assert_eq!(classes, vec![vec!["a1", "a2"], vec!["b1", "b2"], vec!["c1", "c2"]]);
        assert!(p.loops.is_empty());
        assert!(p.coloops.is_empty());

        let u24 = fixtures::u24();
        assert_eq!(u24.series_partition().classes.len(), 4);

        let u23 = fixtures::u23();
        assert_eq!(u23.series_partition().classes, vec![ElemSet::full(3)]);
    }

    #[test]
    fn series_partition_reports_loops_and_coloops() {
        let g = GroundSet::new(["l", "x", "y", "c"]).unwrap();
        let fam: Vec<ElemSet> = vec![ElemSet::singleton(0), [1, 2].into_iter().collect()];
        let m = Matroid::from_circuits(g, fam).unwrap();
        let p = m.series_partition();
        assert_eq!(p.loops, ElemSet::singleton(0));
        assert_eq!(p.coloops, ElemSet::singleton(3));
        assert_eq!(p.classes, vec![[1, 2].into_iter().collect::<ElemSet>()]);
    }

    #[test]
    fn in_series_checks_every_circuit() {
        let theta = fixtures::theta();
        let a1 = theta.ground().index_of("a1").unwrap();
        let a2 = theta.ground().index_of("a2").unwrap();
        let b1 = theta.ground().index_of("b1").unwrap();
        assert!(theta.in_series(a1, a2).unwrap());
        assert!(!theta.in_series(a1, b1).unwrap());
        assert!(theta.in_series(a1, a1).unwrap());
        assert!(theta.in_series(9, 0).is_err());
    }

    #[test]
    fn binary_by_symmetric_difference() {
        // {a,b,c} Δ {a,b,d} = {c,d} contains no circuit of U_{2,4}.
        assert!(!fixtures::u24().is_binary());
        assert!(fixtures::u23().is_binary());
        assert!(fixtures::theta().is_binary());
        let free = Matroid::from_circuits(GroundSet::indexed(2), []).unwrap();
        assert!(free.is_binary());
    }

    #[test]
    fn single_circuit_flag() {
        assert!(fixtures::u23().is_single_circuit());
        assert!(!fixtures::u13().is_single_circuit());
        let free = Matroid::from_circuits(GroundSet::indexed(2), []).unwrap();
        assert!(!free.is_single_circuit());
    }
}
