//! Exhaustive enumeration of small labelled matroids, curated named
//! matroids, and the verification suites that quantify the structural
//! facts and the homomorphism theorems over the enumerated catalog.
//!
//! Enumeration is by depth-first search over antichains of nonempty
//! subsets in ascending mask order, pruning branches whose outstanding
//! weak-elimination obligations can no longer be met. It is labelled (not
//! reduced up to isomorphism): the suites quantify over every instance.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::construct::{cycle_matroid, subdivide, uniform};
use crate::maps::{all_homomorphisms, GroundMap};
use crate::matroid::{GroundSet, Matroid};
use crate::par;
use crate::set::ElemSet;
use crate::structure::{
    check_fact2, check_fact4, check_fact6, check_fact7, covering_circuit_cr2, cr2_structure,
    decompose, lemma1_check, theorem1_check, theorem4_check, CheckId, StructureError,
    Theorem1Outcome, Witness,
};

/// Exhaustive enumeration is guarded at this ground size; the antichain
/// space over a 7-set is out of reach.
pub const MAX_EXHAUSTIVE_GROUND: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("ground size {got} exceeds the exhaustive-enumeration guard of {max}")]
    SpecTooLarge { got: usize, max: usize },
    #[error("unknown matroid name `{0}`")]
    UnknownName(String),
}

/// Which part of the enumerated catalog a suite quantifies over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogSpec {
    pub max_ground_size: usize,
    pub connected_only: bool,
    pub coloop_free: bool,
    pub binary_only: bool,
    pub crk: Option<usize>,
}

impl CatalogSpec {
    /// All labelled matroids on 1..=`max_ground_size` elements.
    pub fn up_to(max_ground_size: usize) -> Self {
        CatalogSpec {
            max_ground_size,
            connected_only: false,
            coloop_free: false,
            binary_only: false,
            crk: None,
        }
    }

    pub fn validate(&self) -> Result<(), CatalogError> {
        if self.max_ground_size > MAX_EXHAUSTIVE_GROUND {
            return Err(CatalogError::SpecTooLarge {
                got: self.max_ground_size,
                max: MAX_EXHAUSTIVE_GROUND,
            });
        }
        Ok(())
    }

    pub fn matches(&self, m: &Matroid) -> bool {
        if self.connected_only && !m.is_connected() {
            return false;
        }
        if self.coloop_free && !m.series_partition().coloops.is_empty() {
            return false;
        }
        if self.binary_only && !m.is_binary() {
            return false;
        }
        if let Some(k) = self.crk {
            if !m.is_crk(k) {
                return false;
            }
        }
        true
    }

    fn describe(&self) -> String {
        let mut s = format!("n <= {}", self.max_ground_size);
        if self.connected_only {
            s.push_str(", connected");
        }
        if self.coloop_free {
            s.push_str(", coloop-free");
        }
        if self.binary_only {
            s.push_str(", binary");
        }
        if let Some(k) = self.crk {
            s.push_str(&format!(", CR^{k}"));
        }
        s
    }
}

/// Every labelled matroid on ground `e0..e(n-1)`, each exactly once, in a
/// fixed depth-first order.
pub fn enumerate_ground(n: usize) -> Result<Vec<Matroid>, CatalogError> {
    if n > MAX_EXHAUSTIVE_GROUND {
        return Err(CatalogError::SpecTooLarge {
            got: n,
            max: MAX_EXHAUSTIVE_GROUND,
        });
    }
    let ground = GroundSet::indexed(n);
    let mut out = Vec::new();
    let mut family: Vec<ElemSet> = Vec::new();
    enumerate_rec(n, &ground, &mut family, &[], 1, &mut out);
    Ok(out)
}

/// DFS node: `family` is an antichain added in ascending mask order;
/// `unresolved` holds the masks `(A ∪ B) − {e}` of elimination obligations
/// not yet met by any member. A branch dies once an obligation's mask is
/// numerically at most the last added subset: every subset of the mask
/// would already have been considered.
fn enumerate_rec(
    n: usize,
    ground: &GroundSet,
    family: &mut Vec<ElemSet>,
    unresolved: &[ElemSet],
    start: u64,
    out: &mut Vec<Matroid>,
) {
    if unresolved.is_empty() {
        let mut circuits = family.clone();
        circuits.sort();
        out.push(Matroid::from_parts_unchecked(ground.clone(), circuits));
    }
    for bits in start..(1u64 << n) {
        let s = ElemSet::from_bits(bits);
        if family
            .iter()
            .any(|c| c.is_subset_of(s) || s.is_subset_of(*c))
        {
            continue;
        }
        let mut next_unresolved: Vec<ElemSet> = unresolved
            .iter()
            .copied()
            .filter(|m| !s.is_subset_of(*m))
            .collect();
        let mut dead = next_unresolved.iter().any(|m| m.bits() <= bits);
        if !dead {
            'pairs: for &a in family.iter() {
                let union = a.union(s);
                for e in a.intersect(s).iter() {
                    let target = union.without(e);
                    if family.iter().any(|c| c.is_subset_of(target)) {
                        continue;
                    }
                    if target.bits() <= bits {
                        dead = true;
                        break 'pairs;
                    }
                    next_unresolved.push(target);
                }
            }
        }
        if dead {
            continue;
        }
        family.push(s);
        enumerate_rec(n, ground, family, &next_unresolved, bits + 1, out);
        family.pop();
    }
}

/// The catalog selected by `spec`: all ground sizes `1..=max`, filtered.
pub fn enumerate_matroids(spec: &CatalogSpec) -> Result<Vec<Matroid>, CatalogError> {
    spec.validate()?;
    let mut out = Vec::new();
    for n in 1..=spec.max_ground_size {
        out.extend(
            enumerate_ground(n)?
                .into_iter()
                .filter(|m| spec.matches(m)),
        );
    }
    Ok(out)
}

/// Curated matroids by name: `theta`, `mk4`, `fano`, `uniform(r,n)` (alias
/// `u(r,n)`), and `single_circuit(n)` (alias `circuit(n)`).
pub fn named(name: &str) -> Result<Matroid, CatalogError> {
    let key = name.trim().to_ascii_lowercase();
    match key.as_str() {
        "theta" => {
            let g = cycle_matroid(5, &[(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
                .expect("theta graph is valid");
            let labels = GroundSet::new(["a1", "a2", "b1", "b2", "c1", "c2"]).unwrap();
            Ok(g.relabel(labels).expect("six edge labels"))
        }
        "mk4" | "m(k4)" => {
            let g = cycle_matroid(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
                .expect("K4 is valid");
            let labels = GroundSet::new(["e01", "e02", "e03", "e12", "e13", "e23"]).unwrap();
            Ok(g.relabel(labels).expect("six edge labels"))
        }
        "fano" | "f7" => Ok(fano()),
        _ => {
            if let Some((r, n)) = parse_args2(&key, &["uniform", "u"]) {
                return uniform(r, n)
                    .map_err(|_| CatalogError::UnknownName(name.trim().to_string()));
            }
            if let Some(n) = parse_args1(&key, &["single_circuit", "circuit"]) {
                if n >= 1 {
                    return Ok(uniform(n - 1, n).expect("single circuit parameters are valid"));
                }
            }
            Err(CatalogError::UnknownName(name.trim().to_string()))
        }
    }
}

fn parse_args2(key: &str, prefixes: &[&str]) -> Option<(usize, usize)> {
    for p in prefixes {
        if let Some(rest) = key.strip_prefix(p) {
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            let (a, b) = inner.split_once(',')?;
            return Some((a.trim().parse().ok()?, b.trim().parse().ok()?));
        }
    }
    None
}

fn parse_args1(key: &str, prefixes: &[&str]) -> Option<usize> {
    for p in prefixes {
        if let Some(rest) = key.strip_prefix(p) {
            let inner = rest.strip_prefix('(')?.strip_suffix(')')?;
            return inner.trim().parse().ok();
        }
    }
    None
}

/// The Fano plane, with circuits computed from its GF(2) representation
/// (the seven nonzero vectors of GF(2)^3) rather than transcribed.
fn fano() -> Matroid {
    let columns: Vec<u8> = (1..=7).collect();
    let n = columns.len();
    let full = ElemSet::full(n);
    let mut dependent: Vec<ElemSet> = Vec::new();
    for s in full.subsets() {
        if s.is_empty() {
            continue;
        }
        if gf2_rank(s.iter().map(|i| columns[i])) < s.len() {
            dependent.push(s);
        }
    }
    let circuits: Vec<ElemSet> = dependent
        .iter()
        .copied()
        .filter(|&c| {
            !dependent
                .iter()
                .any(|&d| d.is_proper_subset_of(c))
        })
        .collect();
    let ground = GroundSet::new((1..=7).map(|i| format!("p{i}"))).unwrap();
    Matroid::from_circuits(ground, circuits).expect("the Fano plane is a matroid")
}

fn gf2_rank(vectors: impl Iterator<Item = u8>) -> usize {
    let mut basis: Vec<u8> = Vec::new();
    for mut v in vectors {
        for &b in &basis {
            let pivot = 1 << (7 - b.leading_zeros());
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

// ---------------------------------------------------------------------------
// Suite reports
// ---------------------------------------------------------------------------

/// One failing instance: a description of the quantified objects plus the
/// witness (when the check produced one) or the error text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub instance: String,
    pub message: String,
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteEntry {
    pub id: CheckId,
    pub run: u64,
    pub skipped: u64,
    pub failures: Vec<Failure>,
}

/// Aggregated result of a verification suite. The report content is
/// deterministic for a given spec; `duration` is informational only and is
/// excluded from [`SuiteReport::to_json`].
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub title: String,
    pub parameters: String,
    pub entries: Vec<SuiteEntry>,
    pub observations: Vec<(String, String)>,
    pub duration: Duration,
}

impl SuiteReport {
    pub fn checks_run(&self) -> u64 {
        self.entries.iter().map(|e| e.run).sum()
    }

    pub fn skipped(&self) -> u64 {
        self.entries.iter().map(|e| e.skipped).sum()
    }

    pub fn failure_count(&self) -> u64 {
        self.entries.iter().map(|e| e.failures.len() as u64).sum()
    }

    pub fn passed(&self) -> bool {
        self.failure_count() == 0
    }

    /// Line-oriented rendering for terminals.
    pub fn render_text(&self) -> String {
        let mut s = String::new();
        s.push_str(&format!("{} ({})\n", self.title, self.parameters));
        for e in &self.entries {
            s.push_str(&format!(
                "  {:<10} run {:>10}  skipped {:>10}  failures {:>4}  {}\n",
                e.id.as_str(),
                e.run,
                e.skipped,
                e.failures.len(),
                if e.failures.is_empty() { "PASS" } else { "FAIL" }
            ));
        }
        for (k, v) in &self.observations {
            s.push_str(&format!("  note: {k}: {v}\n"));
        }
        s.push_str(&format!(
            "  total: {} checks, {} skipped, {} failures — {} ({:.2?})\n",
            self.checks_run(),
            self.skipped(),
            self.failure_count(),
            if self.passed() { "PASS" } else { "FAIL" },
            self.duration
        ));
        let mut shown = 0;
        for e in &self.entries {
            for f in &e.failures {
                if shown == 20 {
                    s.push_str("  ... further failures elided\n");
                    return s;
                }
                s.push_str(&format!("  FAIL {}: {}", e.id.as_str(), f.instance));
                if !f.message.is_empty() {
                    s.push_str(&format!(" — {}", f.message));
                }
                if let Some(w) = &f.witness {
                    s.push_str(&format!(" — {}", w.describe_sets()));
                }
                s.push('\n');
                shown += 1;
            }
        }
        s
    }

    /// Canonical JSON rendering. Deterministic: two runs with the same
    /// parameters produce identical values (the wall-clock duration is
    /// deliberately left out).
    pub fn to_json(&self) -> serde_json::Value {
        use serde_json::{json, Map, Value};
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|e| {
                let failures: Vec<Value> = e
                    .failures
                    .iter()
                    .map(|f| {
                        let mut obj = Map::new();
                        obj.insert("instance".into(), json!(f.instance));
                        if !f.message.is_empty() {
                            obj.insert("message".into(), json!(f.message));
                        }
                        if let Some(w) = &f.witness {
                            obj.insert("witness".into(), witness_json(w));
                        }
                        Value::Object(obj)
                    })
                    .collect();
                json!({
                    "id": e.id.as_str(),
                    "run": e.run,
                    "skipped": e.skipped,
                    "failures": failures,
                })
            })
            .collect();
        let observations: Map<String, Value> = self
            .observations
            .iter()
            .map(|(k, v)| (k.clone(), json!(v)))
            .collect();
        json!({
            "title": self.title,
            "parameters": self.parameters,
            "checks_run": self.checks_run(),
            "skipped": self.skipped(),
            "failures": self.failure_count(),
            "passed": self.passed(),
            "entries": entries,
            "observations": observations,
        })
    }
}

fn witness_json(w: &Witness) -> serde_json::Value {
    use serde_json::{json, Map, Value};
    let mut sets = Map::new();
    for (name, labels) in &w.sets {
        sets.insert((*name).into(), json!(labels));
    }
    json!({
        "check": w.check.as_str(),
        "verdict": if w.verdict { "pass" } else { "fail" },
        "sets": Value::Object(sets),
    })
}

/// Per-worker accumulation, merged deterministically.
#[derive(Debug, Clone, Default)]
struct Tally {
    run: u64,
    skipped: u64,
    failures: Vec<Failure>,
}

#[derive(Debug, Clone, Default)]
struct Tallies {
    map: BTreeMap<CheckId, Tally>,
}

impl Tallies {
    fn entry(&mut self, id: CheckId) -> &mut Tally {
        self.map.entry(id).or_default()
    }

    fn pass(&mut self, id: CheckId) {
        self.entry(id).run += 1;
    }

    fn skip(&mut self, id: CheckId) {
        self.entry(id).skipped += 1;
    }

    fn record(&mut self, id: CheckId, witness: Witness, instance: impl FnOnce() -> String) {
        let t = self.entry(id);
        t.run += 1;
        if !witness.is_pass() {
            t.failures.push(Failure {
                instance: instance(),
                message: String::new(),
                witness: Some(witness),
            });
        }
    }

    fn error(&mut self, id: CheckId, err: &StructureError, instance: impl FnOnce() -> String) {
        let t = self.entry(id);
        t.run += 1;
        t.failures.push(Failure {
            instance: instance(),
            message: err.to_string(),
            witness: None,
        });
    }

    fn merge(&mut self, other: Tallies) {
        for (id, tally) in other.map {
            let t = self.entry(id);
            t.run += tally.run;
            t.skipped += tally.skipped;
            t.failures.extend(tally.failures);
        }
    }

    fn into_entries(self, order: &[CheckId]) -> Vec<SuiteEntry> {
        let mut map = self.map;
        order
            .iter()
            .map(|id| {
                let t = map.remove(id).unwrap_or_default();
                SuiteEntry {
                    id: *id,
                    run: t.run,
                    skipped: t.skipped,
                    failures: t.failures,
                }
            })
            .collect()
    }
}

fn distribution(map: &BTreeMap<usize, u64>) -> String {
    let parts: Vec<String> = map.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

// ---------------------------------------------------------------------------
// Facts suite
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Default)]
struct FactsObs {
    fact5_k: BTreeMap<usize, u64>,
    fact7_boundary: u64,
    fact7_boundary_cr2: u64,
}

impl FactsObs {
    fn merge(&mut self, other: FactsObs) {
        for (k, v) in other.fact5_k {
            *self.fact5_k.entry(k).or_default() += v;
        }
        self.fact7_boundary += other.fact7_boundary;
        self.fact7_boundary_cr2 += other.fact7_boundary_cr2;
    }
}

/// Instantiate the set-image identities and the structural facts over the
/// enumerated catalog (the set-image identities over all functions between
/// abstract sets of size at most four), aggregating any failures.
pub fn verify_facts_suite(spec: &CatalogSpec) -> Result<SuiteReport, CatalogError> {
    run_facts(spec, par::default_parallel())
}

/// Sequential variant of [`verify_facts_suite`]; reports are identical.
pub fn verify_facts_suite_seq(spec: &CatalogSpec) -> Result<SuiteReport, CatalogError> {
    run_facts(spec, false)
}

fn run_facts(spec: &CatalogSpec, parallel: bool) -> Result<SuiteReport, CatalogError> {
    spec.validate()?;
    let start = Instant::now();
    let catalog = enumerate_matroids(spec)?;

    let mut tallies = Tallies::default();
    fact1_sweep(&mut tallies);

    let per_matroid = par::map_collect(&catalog, parallel, facts_for_matroid);
    let mut obs = FactsObs::default();
    for (t, o) in per_matroid {
        tallies.merge(t);
        obs.merge(o);
    }

    let order = [
        CheckId::Fact1,
        CheckId::Fact2,
        CheckId::Fact3,
        CheckId::Fact4,
        CheckId::Fact5,
        CheckId::Fact6,
        CheckId::Fact7,
    ];
    let mut observations = vec![(
        "fact5 subdivided-uniform k distribution".to_string(),
        distribution(&obs.fact5_k),
    )];
    observations.push((
        "fact7 boundary instances (A∪B = E)".to_string(),
        format!(
            "{} seen, {} satisfy the CR^2 conclusion",
            obs.fact7_boundary, obs.fact7_boundary_cr2
        ),
    ));
    Ok(SuiteReport {
        title: "facts suite".into(),
        parameters: format!("catalog: {}; set functions on sizes <= 4", spec.describe()),
        entries: tallies.into_entries(&order),
        observations,
        duration: start.elapsed(),
    })
}

/// `f(A∪B) = f(A)∪f(B)`, `f(A)−f(B) ⊆ f(A−B)`, `f(A)Δf(B) ⊆ f(AΔB)` for
/// every function between sets of size at most four and all pairs `A`, `B`.
fn fact1_sweep(tallies: &mut Tallies) {
    for s in 1..=4usize {
        for t in 1..=4usize {
            let source = GroundSet::new((0..s).map(|i| format!("s{i}"))).unwrap();
            let target = GroundSet::new((0..t).map(|i| format!("t{i}"))).unwrap();
            let mut assignment = vec![0usize; s];
            loop {
                let f = GroundMap::new(source.clone(), target.clone(), assignment.clone())
                    .expect("odometer assignment is in range");
                let full = source.full_set();
                for a in full.subsets() {
                    for b in full.subsets() {
                        let fa = f.image_of_set(a).unwrap();
                        let fb = f.image_of_set(b).unwrap();
                        let union_ok = f.image_of_set(a.union(b)).unwrap() == fa.union(fb);
                        let minus_ok =
                            fa.minus(fb).is_subset_of(f.image_of_set(a.minus(b)).unwrap());
                        let sym_ok = fa
                            .sym_diff(fb)
                            .is_subset_of(f.image_of_set(a.sym_diff(b)).unwrap());
                        if union_ok && minus_ok && sym_ok {
                            tallies.pass(CheckId::Fact1);
                        } else {
                            let witness = Witness::fail_with(
                                CheckId::Fact1,
                                vec![
                                    ("A", source.labels_of(a)),
                                    ("B", source.labels_of(b)),
                                    ("f(A)", target.labels_of(fa)),
                                    ("f(B)", target.labels_of(fb)),
                                ],
                            );
                            let f_desc = f.describe();
                            tallies.record(CheckId::Fact1, witness, || {
                                format!("function {f_desc}")
                            });
                        }
                    }
                }
                if !bump(&mut assignment, t) {
                    break;
                }
            }
        }
    }
}

fn bump(v: &mut [usize], base: usize) -> bool {
    for i in (0..v.len()).rev() {
        v[i] += 1;
        if v[i] < base {
            return true;
        }
        v[i] = 0;
    }
    false
}

fn facts_for_matroid(m: &Matroid) -> (Tallies, FactsObs) {
    let mut t = Tallies::default();
    let mut obs = FactsObs::default();
    let full = m.ground().full_set();
    let n = m.num_elements();

    // Connectivity and co-rank of every restriction, reused by several
    // facts below.
    let mut connected = vec![false; 1 << n];
    let mut corank = vec![0usize; 1 << n];
    for a in full.subsets() {
        connected[a.bits() as usize] = m.is_connected_within(a);
        corank[a.bits() as usize] = a.len() - m.rank_within(a);
    }
    let crk_within =
        |a: ElemSet, k: usize| connected[a.bits() as usize] && corank[a.bits() as usize] == k;

    // Extending a CR^k restriction by a circuit through an outside element.
    if !connected[full.bits() as usize] {
        t.skip(CheckId::Fact2);
    } else {
        for a in full.subsets() {
            if a.is_empty() || a == full {
                continue;
            }
            let k = corank[a.bits() as usize];
            if k == 0 || !connected[a.bits() as usize] {
                continue;
            }
            for x in full.minus(a).iter() {
                match check_fact2(m, a, x, k) {
                    Ok(w) => t.record(CheckId::Fact2, w, || {
                        format!("M={} A={} x={}", m.describe(), m.ground().label_set(a), m.ground().label(x))
                    }),
                    Err(StructureError::NoSuchCircuit { .. }) => t.skip(CheckId::Fact2),
                    Err(e) => t.error(CheckId::Fact2, &e, || {
                        format!("M={} A={} x={}", m.describe(), m.ground().label_set(a), m.ground().label(x))
                    }),
                }
            }
        }
    }

    let is_cr2 = crk_within(full, 2);
    let is_cr3 = crk_within(full, 3);

    // Covering circuit for symmetric differences in CR^2 matroids.
    if is_cr2 {
        for i in 0..m.circuits().len() {
            for j in i + 1..m.circuits().len() {
                let (a, b) = (m.circuits()[i], m.circuits()[j]);
                match covering_circuit_cr2(m, a, b) {
                    Ok(c) => {
                        debug_assert!(a.sym_diff(b).is_subset_of(c));
                        t.pass(CheckId::Fact3);
                    }
                    Err(e) => t.error(CheckId::Fact3, &e, || {
                        format!(
                            "M={} A={} B={}",
                            m.describe(),
                            m.ground().label_set(a),
                            m.ground().label_set(b)
                        )
                    }),
                }
            }
        }
    } else {
        t.skip(CheckId::Fact3);
    }

    // Circuit in the intersection of two CR^2 restrictions with CR^3 union.
    let cr2_subsets: Vec<ElemSet> = full
        .subsets()
        .filter(|a| crk_within(*a, 2))
        .collect();
    for (i, &e1) in cr2_subsets.iter().enumerate() {
        for &e2 in &cr2_subsets[i..] {
            if !crk_within(e1.union(e2), 3) {
                t.skip(CheckId::Fact4);
                continue;
            }
            match check_fact4(m, e1, e2) {
                Ok(w) => t.record(CheckId::Fact4, w, || {
                    format!(
                        "M={} E1={} E2={}",
                        m.describe(),
                        m.ground().label_set(e1),
                        m.ground().label_set(e2)
                    )
                }),
                Err(e) => t.error(CheckId::Fact4, &e, || {
                    format!(
                        "M={} E1={} E2={}",
                        m.describe(),
                        m.ground().label_set(e1),
                        m.ground().label_set(e2)
                    )
                }),
            }
        }
    }

    // CR^2 matroids are subdivided uniform matroids.
    if is_cr2 {
        match cr2_structure(m) {
            Ok(s) => {
                *obs.fact5_k.entry(s.k).or_default() += 1;
                t.pass(CheckId::Fact5);
            }
            Err(e) => t.error(CheckId::Fact5, &e, || format!("M={}", m.describe())),
        }
    } else {
        t.skip(CheckId::Fact5);
    }

    // Disjointness propagation and unions of meeting circuits in CR^3.
    if is_cr3 {
        let circuits = m.circuits();
        for (bi, &b) in circuits.iter().enumerate() {
            for (ci, &c) in circuits.iter().enumerate() {
                if bi == ci {
                    continue;
                }
                for &a in circuits {
                    if a.intersects(b) {
                        continue;
                    }
                    match check_fact6(m, a, b, c) {
                        Ok(w) => t.record(CheckId::Fact6, w, || {
                            format!(
                                "M={} A={} B={} C={}",
                                m.describe(),
                                m.ground().label_set(a),
                                m.ground().label_set(b),
                                m.ground().label_set(c)
                            )
                        }),
                        Err(e) => t.error(CheckId::Fact6, &e, || format!("M={}", m.describe())),
                    }
                }
            }
        }
        for i in 0..circuits.len() {
            for j in i + 1..circuits.len() {
                let (a, b) = (circuits[i], circuits[j]);
                if !a.intersects(b) {
                    continue;
                }
                if a.union(b) == full {
                    obs.fact7_boundary += 1;
                    if crk_within(full, 2) {
                        obs.fact7_boundary_cr2 += 1;
                    }
                    t.skip(CheckId::Fact7);
                    continue;
                }
                match check_fact7(m, a, b) {
                    Ok(w) => t.record(CheckId::Fact7, w, || {
                        format!(
                            "M={} A={} B={}",
                            m.describe(),
                            m.ground().label_set(a),
                            m.ground().label_set(b)
                        )
                    }),
                    Err(e) => t.error(CheckId::Fact7, &e, || format!("M={}", m.describe())),
                }
            }
        }
    } else {
        t.skip(CheckId::Fact6);
        t.skip(CheckId::Fact7);
    }

    (t, obs)
}

// ---------------------------------------------------------------------------
// Theorems suite
// ---------------------------------------------------------------------------

/// Extra sources built by subdividing connected base matroids with every
/// fiber-size assignment up to `max_fiber`.
#[derive(Debug, Clone)]
pub struct SubdivisionSources {
    pub base: CatalogSpec,
    pub max_fiber: usize,
}

#[derive(Debug, Clone)]
pub struct TheoremsParams {
    pub sources: CatalogSpec,
    pub targets: CatalogSpec,
    pub subdivision_sources: Option<SubdivisionSources>,
}

#[derive(Debug, Clone, Default)]
struct TheoremsObs {
    homs: u64,
    vacuous_pairs: u64,
    fibers_all_series: u64,
    target_single_circuit: u64,
    lemma1_classes: BTreeMap<usize, u64>,
}

impl TheoremsObs {
    fn merge(&mut self, other: TheoremsObs) {
        self.homs += other.homs;
        self.vacuous_pairs += other.vacuous_pairs;
        self.fibers_all_series += other.fibers_all_series;
        self.target_single_circuit += other.target_single_circuit;
        for (k, v) in other.lemma1_classes {
            *self.lemma1_classes.entry(k).or_default() += v;
        }
    }
}

/// For every connected source, every target, and every homomorphism
/// between them: check the fiber dichotomy and the image-equality lemma
/// when the target is binary, and the full decomposition plus the
/// binary-source consequence when it is also not a single circuit.
pub fn verify_theorems_suite(params: &TheoremsParams) -> Result<SuiteReport, CatalogError> {
    run_theorems(params, par::default_parallel())
}

/// Sequential variant of [`verify_theorems_suite`]; reports are identical.
pub fn verify_theorems_suite_seq(params: &TheoremsParams) -> Result<SuiteReport, CatalogError> {
    run_theorems(params, false)
}

fn run_theorems(params: &TheoremsParams, parallel: bool) -> Result<SuiteReport, CatalogError> {
    params.sources.validate()?;
    params.targets.validate()?;
    let start = Instant::now();

    let mut sources: Vec<Matroid> = enumerate_matroids(&params.sources)?
        .into_iter()
        .filter(|m| m.is_connected())
        .collect();
    let mut parameters = format!(
        "sources: {} (connected); targets: {}",
        params.sources.describe(),
        params.targets.describe()
    );
    if let Some(sub) = &params.subdivision_sources {
        sub.base.validate()?;
        parameters.push_str(&format!(
            "; plus subdivisions of {} (connected) with fiber sizes <= {}",
            sub.base.describe(),
            sub.max_fiber
        ));
        for base in enumerate_matroids(&sub.base)? {
            if !base.is_connected() {
                continue;
            }
            // Subdividing a coloop disconnects it, so re-gate.
            sources.extend(
                subdivisions_of(&base, sub.max_fiber)
                    .into_iter()
                    .filter(Matroid::is_connected),
            );
        }
    }
    let targets = enumerate_matroids(&params.targets)?;

    let per_source = par::map_collect(&sources, parallel, |m| theorems_for_source(m, &targets));
    let mut tallies = Tallies::default();
    let mut obs = TheoremsObs::default();
    for (t, o) in per_source {
        tallies.merge(t);
        obs.merge(o);
    }

    let order = [
        CheckId::Theorem1,
        CheckId::Lemma1,
        CheckId::Theorem3,
        CheckId::Theorem4,
    ];
    let observations = vec![
        ("homomorphisms found".to_string(), obs.homs.to_string()),
        (
            "source/target pairs with no homomorphism (vacuous)".to_string(),
            obs.vacuous_pairs.to_string(),
        ),
        (
            "dichotomy outcomes".to_string(),
            format!(
                "fibers-all-series {}, target-single-circuit {}",
                obs.fibers_all_series, obs.target_single_circuit
            ),
        ),
        (
            "lemma1 series-class counts of M|(A∪B)".to_string(),
            distribution(&obs.lemma1_classes),
        ),
    ];
    Ok(SuiteReport {
        title: "theorems suite".into(),
        parameters,
        entries: tallies.into_entries(&order),
        observations,
        duration: start.elapsed(),
    })
}

/// All subdivisions of `base` with fiber sizes `1..=max_fiber`, in
/// lexicographic order of the size assignment. Fiber labels are
/// `<label>.1`, `<label>.2`, ...
pub fn subdivisions_of(base: &Matroid, max_fiber: usize) -> Vec<Matroid> {
    let n = base.num_elements();
    let mut out = Vec::new();
    let mut sizes = vec![1usize; n];
    loop {
        let fibers: BTreeMap<String, Vec<String>> = base
            .ground()
            .labels()
            .iter()
            .enumerate()
            .map(|(i, l)| {
                (
                    l.clone(),
                    (1..=sizes[i]).map(|j| format!("{l}.{j}")).collect(),
                )
            })
            .collect();
        let (m, _) = subdivide(base, &fibers).expect("generated fibers are disjoint and nonempty");
        out.push(m);
        // Next size vector: odometer over 1..=max_fiber.
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if sizes[i] < max_fiber {
                sizes[i] += 1;
                for s in sizes.iter_mut().skip(i + 1) {
                    *s = 1;
                }
                break;
            }
        }
    }
}

fn theorems_for_source(m: &Matroid, targets: &[Matroid]) -> (Tallies, TheoremsObs) {
    let mut t = Tallies::default();
    let mut obs = TheoremsObs::default();
    if !m.is_connected() {
        t.skip(CheckId::Theorem1);
        return (t, obs);
    }
    for n in targets {
        let homs = all_homomorphisms(m, n);
        if homs.is_empty() {
            obs.vacuous_pairs += 1;
            continue;
        }
        obs.homs += homs.len() as u64;
        let n_binary = n.is_binary();
        let n_single = n.is_single_circuit();
        for f in &homs {
            let instance = || {
                format!(
                    "M={} N={} f=[{}]",
                    m.describe(),
                    n.describe(),
                    f.describe()
                )
            };
            if !n_binary {
                t.skip(CheckId::Theorem1);
                continue;
            }
            match theorem1_check(f, m, n) {
                Ok(Theorem1Outcome::FibersAllSeries) => {
                    obs.fibers_all_series += 1;
                    t.pass(CheckId::Theorem1);
                }
                Ok(Theorem1Outcome::TargetIsSingleCircuit) => {
                    obs.target_single_circuit += 1;
                    t.pass(CheckId::Theorem1);
                }
                Ok(Theorem1Outcome::Counterexample(w)) => {
                    t.record(CheckId::Theorem1, w, instance)
                }
                Err(e) => t.error(CheckId::Theorem1, &e, instance),
            }

            lemma1_for_hom(m, n, f, &mut t, &mut obs);

            if n_single {
                t.skip(CheckId::Theorem3);
                t.skip(CheckId::Theorem4);
                continue;
            }
            match decompose(f, m, n) {
                Ok(_) => t.pass(CheckId::Theorem3),
                Err(e) => t.error(CheckId::Theorem3, &e, instance),
            }
            match theorem4_check(f, m, n) {
                Ok(w) => t.record(CheckId::Theorem4, w, instance),
                Err(e) => t.error(CheckId::Theorem4, &e, instance),
            }
        }
    }
    (t, obs)
}

fn lemma1_for_hom(
    m: &Matroid,
    n: &Matroid,
    f: &GroundMap,
    t: &mut Tallies,
    obs: &mut TheoremsObs,
) {
    let elems = m.num_elements();
    for x1 in 0..elems {
        for x2 in 0..elems {
            if x1 == x2 || f.apply(x1) != f.apply(x2) {
                continue;
            }
            for &a in m.circuits() {
                if !a.contains(x1) || a.contains(x2) {
                    continue;
                }
                let instance = || {
                    format!(
                        "M={} N={} f=[{}] x1={} x2={} A={}",
                        m.describe(),
                        n.describe(),
                        f.describe(),
                        m.ground().label(x1),
                        m.ground().label(x2),
                        m.ground().label_set(a)
                    )
                };
                match lemma1_check(f, m, n, x1, x2, a) {
                    Ok(w) => {
                        if let Some((_, b_labels)) = w.sets.iter().find(|(k, _)| *k == "B") {
                            let b = m
                                .ground()
                                .set_of(b_labels.iter().map(String::as_str))
                                .expect("witness labels come from this ground set");
                            let union = a.union(b);
                            let classes = m
                                .restrict(union)
                                .expect("A∪B is a subset of the ground set")
                                .series_partition()
                                .classes
                                .len();
                            *obs.lemma1_classes.entry(classes).or_default() += 1;
                        }
                        t.record(CheckId::Lemma1, w, instance);
                    }
                    Err(e) => t.error(CheckId::Lemma1, &e, instance),
                }
            }
        }
    }
}
