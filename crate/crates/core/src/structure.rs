//! Executable forms of the structural facts about connected matroids of
//! small co-rank, the image-equality lemma, the dichotomy and decomposition
//! theorems for homomorphisms onto binary targets, and the binary-source
//! consequence.
//!
//! Every check re-verifies its own postconditions instead of assuming the
//! statement it encodes; a failed postcondition surfaces as
//! [`StructureError::InternalTheoremViolation`] or a failing [`Witness`],
//! so the suites double as falsification harnesses.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::construct::{subdivide, uniform};
use crate::iso::isomorphic;
use crate::maps::{
    is_circuit_injection, is_homeomorphism, is_homomorphism, GroundMap, MapError,
};
use crate::matroid::{LabelSet, Matroid, MatroidError, SeriesPartition};
use crate::set::ElemSet;

/// Identifier of a verifiable statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    Fact1,
    Fact2,
    Fact3,
    Fact4,
    Fact5,
    Fact6,
    Fact7,
    Lemma1,
    Theorem1,
    Theorem3,
    Theorem4,
}

impl CheckId {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckId::Fact1 => "fact1",
            CheckId::Fact2 => "fact2",
            CheckId::Fact3 => "fact3",
            CheckId::Fact4 => "fact4",
            CheckId::Fact5 => "fact5",
            CheckId::Fact6 => "fact6",
            CheckId::Fact7 => "fact7",
            CheckId::Lemma1 => "lemma1",
            CheckId::Theorem1 => "theorem1",
            CheckId::Theorem3 => "theorem3",
            CheckId::Theorem4 => "theorem4",
        }
    }

    pub const ALL: [CheckId; 11] = [
        CheckId::Fact1,
        CheckId::Fact2,
        CheckId::Fact3,
        CheckId::Fact4,
        CheckId::Fact5,
        CheckId::Fact6,
        CheckId::Fact7,
        CheckId::Lemma1,
        CheckId::Theorem1,
        CheckId::Theorem3,
        CheckId::Theorem4,
    ];
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Outcome of one instantiated check, with the named sets that back it.
/// Each named set is a circuit or element of the matroid under test, so
/// the verdict can be re-derived from the witness alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub check: CheckId,
    pub verdict: bool,
    pub sets: Vec<(&'static str, Vec<String>)>,
}

impl Witness {
    fn new(check: CheckId, verdict: bool) -> Self {
        Witness {
            check,
            verdict,
            sets: Vec::new(),
        }
    }

    fn with_set(mut self, name: &'static str, labels: Vec<String>) -> Self {
        self.sets.push((name, labels));
        self
    }

    /// Failing witness assembled outside a check operation (used by the
    /// suite for quantifier-level statements such as the set-image
    /// identities).
    pub(crate) fn fail_with(check: CheckId, sets: Vec<(&'static str, Vec<String>)>) -> Self {
        Witness {
            check,
            verdict: false,
            sets,
        }
    }

    pub fn is_pass(&self) -> bool {
        self.verdict
    }

    /// `name={a,b} name2={c}` rendering for reports.
    pub fn describe_sets(&self) -> String {
        self.sets
            .iter()
            .map(|(name, labels)| format!("{name}={}", LabelSet(labels.clone())))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("matroid is not CR^2")]
    NotCR2,
    #[error("no circuit contains `{x}` and meets {a}")]
    NoSuchCircuit { x: String, a: LabelSet },
    #[error("no circuit covers {a} Δ {b}; this falsifies the covering-circuit fact")]
    NoCoveringCircuit { a: LabelSet, b: LabelSet },
    #[error("no circuit contains both `{x1}` and `{x2}`")]
    NoSuchB { x1: String, x2: String },
    #[error("theorem postcondition failed: {0}")]
    InternalTheoremViolation(String),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
    #[error(transparent)]
    Map(#[from] MapError),
}

fn precondition(msg: impl Into<String>) -> StructureError {
    StructureError::PreconditionViolated(msg.into())
}

/// Among the circuits containing `x` and meeting `a`, pick one whose part
/// outside `a` is inclusion-minimal; ties broken by smallest `|B − A|`,
/// then lexicographically smallest circuit.
pub fn find_extending_circuit(
    m: &Matroid,
    a: ElemSet,
    x: usize,
) -> Result<ElemSet, StructureError> {
    m.check_subset(a)?;
    m.check_element(x)?;
    if a.is_empty() {
        return Err(precondition("the set A is empty"));
    }
    if a.contains(x) {
        return Err(precondition(format!(
            "element `{}` already lies in A",
            m.ground().label(x)
        )));
    }
    let candidates: Vec<ElemSet> = m
        .circuits()
        .iter()
        .copied()
        .filter(|c| c.contains(x) && c.intersects(a))
        .collect();
    select_minimal_outside(&candidates, a).ok_or_else(|| StructureError::NoSuchCircuit {
        x: m.ground().label(x).to_string(),
        a: m.ground().label_set(a),
    })
}

/// Inclusion-minimal `B − A`, then smallest `|B − A|`, then lexicographic `B`.
fn select_minimal_outside(candidates: &[ElemSet], a: ElemSet) -> Option<ElemSet> {
    let minimal: Vec<ElemSet> = candidates
        .iter()
        .copied()
        .filter(|&b| {
            !candidates
                .iter()
                .any(|&other| other.minus(a).is_proper_subset_of(b.minus(a)))
        })
        .collect();
    minimal
        .into_iter()
        .min_by(|x, y| {
            x.minus(a)
                .len()
                .cmp(&y.minus(a).len())
                .then_with(|| x.cmp(y))
        })
}

/// Extending a `CR^k` restriction by a minimally chosen circuit raises the
/// co-rank by exactly one.
pub fn check_fact2(
    m: &Matroid,
    a: ElemSet,
    x: usize,
    k: usize,
) -> Result<Witness, StructureError> {
    m.check_subset(a)?;
    m.check_element(x)?;
    if !m.is_connected() {
        return Err(precondition("source disconnected"));
    }
    if k == 0 {
        return Err(precondition("co-rank k must be positive"));
    }
    if !m.is_crk_within(a, k) {
        return Err(precondition(format!("the restriction to A is not CR^{k}")));
    }
    if a.contains(x) {
        return Err(precondition("x must lie outside A"));
    }
    let b = find_extending_circuit(m, a, x)?;
    let union = a.union(b);
    let verdict = m.is_crk_within(union, k + 1);
    Ok(Witness::new(CheckId::Fact2, verdict)
        .with_set("A", m.ground().labels_of(a))
        .with_set("x", vec![m.ground().label(x).to_string()])
        .with_set("B", m.ground().labels_of(b))
        .with_set("A∪B", m.ground().labels_of(union)))
}

/// In a `CR^2` matroid some circuit covers the symmetric difference of any
/// two circuits; returns the lexicographically first one.
pub fn covering_circuit_cr2(
    m: &Matroid,
    a: ElemSet,
    b: ElemSet,
) -> Result<ElemSet, StructureError> {
    if !m.is_crk(2) {
        return Err(StructureError::NotCR2);
    }
    if !m.is_circuit(a) || !m.is_circuit(b) {
        return Err(precondition("A and B must be circuits"));
    }
    if a == b {
        return Err(precondition("A and B must be distinct"));
    }
    let diff = a.sym_diff(b);
    m.circuits()
        .iter()
        .copied()
        .find(|c| diff.is_subset_of(*c))
        .ok_or_else(|| StructureError::NoCoveringCircuit {
            a: m.ground().label_set(a),
            b: m.ground().label_set(b),
        })
}

/// Two `CR^2` restrictions whose union is `CR^3` intersect in a circuit.
pub fn check_fact4(m: &Matroid, e1: ElemSet, e2: ElemSet) -> Result<Witness, StructureError> {
    m.check_subset(e1)?;
    m.check_subset(e2)?;
    if !m.is_crk_within(e1, 2) || !m.is_crk_within(e2, 2) {
        return Err(precondition("both restrictions must be CR^2"));
    }
    let union = e1.union(e2);
    if !m.is_crk_within(union, 3) {
        return Err(precondition("the union restriction must be CR^3"));
    }
    let meet = e1.intersect(e2);
    let inner = m.circuits().iter().copied().find(|c| c.is_subset_of(meet));
    let mut w = Witness::new(CheckId::Fact4, inner.is_some())
        .with_set("E1", m.ground().labels_of(e1))
        .with_set("E2", m.ground().labels_of(e2))
        .with_set("E1∩E2", m.ground().labels_of(meet));
    if let Some(c) = inner {
        w = w.with_set("C", m.ground().labels_of(c));
    }
    Ok(w)
}

/// The structure of a `CR^2` matroid: a certified isomorphism onto a
/// subdivided uniform matroid `U_{k,k+2}`.
#[derive(Debug, Clone)]
pub struct Cr2Structure {
    pub k: usize,
    pub partition: SeriesPartition,
    /// `subdivide(uniform(k, k+2), classes)`, carrying this matroid's labels.
    pub subdivided_uniform: Matroid,
    /// Verified isomorphism from the input onto `subdivided_uniform`.
    pub iso: GroundMap,
}

/// Certify that a `CR^2` matroid is a subdivision of `U_{k,k+2}`: its
/// circuits are exactly the complements of its `k+2` series classes.
pub fn cr2_structure(m: &Matroid) -> Result<Cr2Structure, StructureError> {
    if !m.is_crk(2) {
        return Err(StructureError::NotCR2);
    }
    let partition = m.series_partition();
    if !partition.loops.is_empty() || !partition.coloops.is_empty() {
        return Err(StructureError::InternalTheoremViolation(
            "CR^2 matroid with loops or coloops".into(),
        ));
    }
    let classes = &partition.classes;
    if classes.len() < 3 {
        return Err(StructureError::InternalTheoremViolation(format!(
            "CR^2 matroid with only {} series classes on {}",
            classes.len(),
            m.describe()
        )));
    }
    let k = classes.len() - 2;

    // The circuit family must be exactly { E − P_j : j }.
    let full = m.ground().full_set();
    let mut expected: Vec<ElemSet> = classes.iter().map(|p| full.minus(*p)).collect();
    expected.sort();
    if expected != m.circuits() {
        return Err(StructureError::InternalTheoremViolation(format!(
            "circuits of {} are not the class complements",
            m.describe()
        )));
    }

    let u = uniform(k, k + 2)?;
    let fibers: BTreeMap<String, Vec<String>> = u
        .ground()
        .labels()
        .iter()
        .zip(classes.iter())
        .map(|(label, class)| (label.clone(), m.ground().labels_of(*class)))
        .collect();
    let (subdivided, _) = subdivide(&u, &fibers)?;
    let assignment: Vec<usize> = m
        .ground()
        .labels()
        .iter()
        .map(|l| {
            subdivided
                .ground()
                .index_of(l)
                .expect("subdivision reuses the input labels")
        })
        .collect();
    let iso = GroundMap::new(
        m.ground().clone(),
        subdivided.ground().clone(),
        assignment,
    )?;
    for &c in m.circuits() {
        let image = iso.image_of_set(c)?;
        if !subdivided.is_circuit(image) {
            return Err(StructureError::InternalTheoremViolation(format!(
                "label bijection does not carry {} onto the subdivided uniform matroid",
                m.ground().label_set(c)
            )));
        }
    }
    Ok(Cr2Structure {
        k,
        partition,
        subdivided_uniform: subdivided,
        iso,
    })
}

/// In a `CR^3` matroid a circuit disjoint from one other circuit meets
/// every remaining circuit.
pub fn check_fact6(
    m: &Matroid,
    a: ElemSet,
    b: ElemSet,
    c: ElemSet,
) -> Result<Witness, StructureError> {
    if !m.is_crk(3) {
        return Err(precondition("matroid is not CR^3"));
    }
    if !m.is_circuit(a) || !m.is_circuit(b) || !m.is_circuit(c) {
        return Err(precondition("A, B, C must be circuits"));
    }
    if b == c {
        return Err(precondition("B and C must be distinct"));
    }
    if a.intersects(b) {
        return Err(precondition("A and B must be disjoint"));
    }
    Ok(Witness::new(CheckId::Fact6, a.intersects(c))
        .with_set("A", m.ground().labels_of(a))
        .with_set("B", m.ground().labels_of(b))
        .with_set("C", m.ground().labels_of(c)))
}

/// In a `CR^3` matroid the union of two meeting circuits, when proper, is
/// a `CR^2` restriction.
pub fn check_fact7(m: &Matroid, a: ElemSet, b: ElemSet) -> Result<Witness, StructureError> {
    if !m.is_crk(3) {
        return Err(precondition("matroid is not CR^3"));
    }
    if !m.is_circuit(a) || !m.is_circuit(b) {
        return Err(precondition("A and B must be circuits"));
    }
    if a == b {
        return Err(precondition("A and B must be distinct"));
    }
    if !a.intersects(b) {
        return Err(precondition("A and B must intersect"));
    }
    let union = a.union(b);
    if union == m.ground().full_set() {
        return Err(precondition("A ∪ B must be a proper subset of the ground set"));
    }
    Ok(Witness::new(CheckId::Fact7, m.is_crk_within(union, 2))
        .with_set("A", m.ground().labels_of(a))
        .with_set("B", m.ground().labels_of(b))
        .with_set("A∪B", m.ground().labels_of(union)))
}

fn check_hom_preconditions(
    f: &GroundMap,
    m: &Matroid,
    n: &Matroid,
) -> Result<(), StructureError> {
    let verdict = is_homomorphism(f, m, n)?;
    if !verdict.holds() {
        return Err(precondition(format!(
            "map is not a homomorphism: {verdict:?}"
        )));
    }
    if !m.is_connected() {
        return Err(precondition("source disconnected"));
    }
    if !n.is_binary() {
        return Err(precondition("target not binary"));
    }
    Ok(())
}

/// Two elements of one fiber force equal circuit images: with `B` chosen
/// through `x1, x2` with `B − A` minimal, `f(A) = f(B)`.
pub fn lemma1_check(
    f: &GroundMap,
    m: &Matroid,
    n: &Matroid,
    x1: usize,
    x2: usize,
    a: ElemSet,
) -> Result<Witness, StructureError> {
    check_hom_preconditions(f, m, n)?;
    m.check_element(x1)?;
    m.check_element(x2)?;
    if x1 == x2 {
        return Err(precondition("x1 and x2 must be distinct"));
    }
    if f.apply(x1) != f.apply(x2) {
        return Err(precondition("x1 and x2 must share an image"));
    }
    if !m.is_circuit(a) {
        return Err(precondition("A must be a circuit"));
    }
    if !a.contains(x1) || a.contains(x2) {
        return Err(precondition("A must contain x1 and avoid x2"));
    }
    let candidates: Vec<ElemSet> = m
        .circuits()
        .iter()
        .copied()
        .filter(|c| c.contains(x1) && c.contains(x2))
        .collect();
    let b = select_minimal_outside(&candidates, a).ok_or_else(|| StructureError::NoSuchB {
        x1: m.ground().label(x1).to_string(),
        x2: m.ground().label(x2).to_string(),
    })?;
    let fa = f.image_of_set(a)?;
    let fb = f.image_of_set(b)?;
    Ok(Witness::new(CheckId::Lemma1, fa == fb)
        .with_set("x1", vec![m.ground().label(x1).to_string()])
        .with_set("x2", vec![m.ground().label(x2).to_string()])
        .with_set("A", m.ground().labels_of(a))
        .with_set("B", m.ground().labels_of(b))
        .with_set("f(A)", n.ground().labels_of(fa))
        .with_set("f(B)", n.ground().labels_of(fb)))
}

/// Verdict of the fiber dichotomy check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Theorem1Outcome {
    /// Every fiber is pairwise in series in the source.
    FibersAllSeries,
    /// Some fiber is not in series, and the target is a single circuit.
    TargetIsSingleCircuit,
    /// Some fiber is not in series and the target is not a single circuit;
    /// this would falsify the dichotomy.
    Counterexample(Witness),
}

/// For a homomorphism from a connected matroid onto a binary one: either
/// every fiber is pairwise in series, or the target is a single circuit.
pub fn theorem1_check(
    f: &GroundMap,
    m: &Matroid,
    n: &Matroid,
) -> Result<Theorem1Outcome, StructureError> {
    check_hom_preconditions(f, m, n)?;
    for (y, fiber) in f.fibers().into_iter().enumerate() {
        let members: Vec<usize> = fiber.iter().collect();
        for (i, &x1) in members.iter().enumerate() {
            for &x2 in &members[i + 1..] {
                if m.in_series(x1, x2)? {
                    continue;
                }
                if n.is_single_circuit() {
                    return Ok(Theorem1Outcome::TargetIsSingleCircuit);
                }
                let separating = m
                    .circuits()
                    .iter()
                    .copied()
                    .find(|c| c.contains(x1) != c.contains(x2))
                    .expect("a non-series pair has a separating circuit");
                let witness = Witness::new(CheckId::Theorem1, false)
                    .with_set("y", vec![n.ground().label(y).to_string()])
                    .with_set("x1", vec![m.ground().label(x1).to_string()])
                    .with_set("x2", vec![m.ground().label(x2).to_string()])
                    .with_set("separating circuit", m.ground().labels_of(separating));
                return Ok(Theorem1Outcome::Counterexample(witness));
            }
        }
    }
    Ok(Theorem1Outcome::FibersAllSeries)
}

/// Record of the post-checks performed by [`decompose`]. All fields are
/// true in any returned value; failures surface as errors instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub g_is_homeomorphism: bool,
    pub h_is_circuit_injection: bool,
    pub composition_equals_f: bool,
    pub h_circuits_subset_of_target: bool,
    pub source_isomorphic_to_subdivision: bool,
}

/// The decomposition `f = h ∘ g` of a homomorphism through the image
/// matroid `H` on the target's ground set.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// The intermediate matroid: circuits are the images of the source's.
    pub h: Matroid,
    /// `f` retargeted onto `H`; a homeomorphism.
    pub g: GroundMap,
    /// The identity assignment `E(H) → E(N)`; a circuit injection.
    pub h_map: GroundMap,
    /// Verified isomorphism from the source onto `subdivide(H, fibers of f)`.
    pub subdivision_iso: GroundMap,
    pub certificate: Certificate,
}

/// Decompose a homomorphism from a connected matroid onto a binary,
/// non-circuit target as a homeomorphism followed by a circuit injection.
///
/// Every certificate condition is re-checked; a failure is reported as
/// [`StructureError::InternalTheoremViolation`] rather than assumed away.
pub fn decompose(f: &GroundMap, m: &Matroid, n: &Matroid) -> Result<Decomposition, StructureError> {
    check_hom_preconditions(f, m, n)?;
    if n.is_single_circuit() {
        return Err(precondition("target is a single circuit"));
    }

    let images: Vec<ElemSet> = m.circuits().iter().map(|&c| f.image_unchecked(c)).collect();
    let h = Matroid::from_circuits(n.ground().clone(), images).map_err(|e| {
        StructureError::InternalTheoremViolation(format!(
            "image circuit family fails the circuit axioms: {e}"
        ))
    })?;

    let g = GroundMap::new(
        m.ground().clone(),
        h.ground().clone(),
        f.assignment().to_vec(),
    )?;
    let g_verdict = is_homeomorphism(&g, m, &h)?;
    if !g_verdict.holds() {
        return Err(StructureError::InternalTheoremViolation(format!(
            "retargeted map is not a homeomorphism onto the image matroid: {g_verdict:?}"
        )));
    }

    let h_map = GroundMap::identity(n.ground())?;
    let h_verdict = is_circuit_injection(&h_map, &h, n)?;
    if !h_verdict.holds() {
        return Err(StructureError::InternalTheoremViolation(format!(
            "identity map on the target ground set is not a circuit injection: {h_verdict:?}"
        )));
    }
    let h_circuits_subset = h.circuits().iter().all(|&c| n.is_circuit(c));
    if !h_circuits_subset {
        return Err(StructureError::InternalTheoremViolation(
            "image circuits are not circuits of the target".into(),
        ));
    }

    let composed = GroundMap::compose(&h_map, &g)?;
    if composed != *f {
        return Err(StructureError::InternalTheoremViolation(
            "h ∘ g differs from f".into(),
        ));
    }

    let fibers: BTreeMap<String, Vec<String>> = f
        .fibers()
        .into_iter()
        .enumerate()
        .map(|(y, fiber)| {
            (
                n.ground().label(y).to_string(),
                m.ground().labels_of(fiber),
            )
        })
        .collect();
    let (subdivided, _) = subdivide(&h, &fibers)?;
    let subdivision_iso = isomorphic(m, &subdivided).ok_or_else(|| {
        StructureError::InternalTheoremViolation(format!(
            "source is not isomorphic to the subdivision of the image matroid by the fibers: {} vs {}",
            m.describe(),
            subdivided.describe()
        ))
    })?;

    Ok(Decomposition {
        h,
        g,
        h_map,
        subdivision_iso,
        certificate: Certificate {
            g_is_homeomorphism: true,
            h_is_circuit_injection: true,
            composition_equals_f: true,
            h_circuits_subset_of_target: true,
            source_isomorphic_to_subdivision: true,
        },
    })
}

/// A connected source admitting a homomorphism onto a binary, non-circuit
/// target is itself binary.
pub fn theorem4_check(
    f: &GroundMap,
    m: &Matroid,
    n: &Matroid,
) -> Result<Witness, StructureError> {
    check_hom_preconditions(f, m, n)?;
    if n.is_single_circuit() {
        return Err(precondition("target is a single circuit"));
    }
    match m.first_non_binary_pair() {
        None => Ok(Witness::new(CheckId::Theorem4, true)),
        Some((a, b)) => Ok(Witness::new(CheckId::Theorem4, false)
            .with_set("A", m.ground().labels_of(a))
            .with_set("B", m.ground().labels_of(b))
            .with_set("AΔB", m.ground().labels_of(a.sym_diff(b)))),
    }
}
