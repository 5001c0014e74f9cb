//! Ground-set maps between matroids and the three map classes:
//! homomorphism (onto, circuit-preserving), homeomorphism (preimages of
//! circuits are circuits as well), and circuit injection (bijective
//! homomorphism). Also exhaustive enumeration of surjections and of all
//! homomorphisms between two matroids.

use std::fmt;

use thiserror::Error;

use crate::matroid::{GroundSet, Matroid};
use crate::set::ElemSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("ground maps between empty ground sets are not supported")]
    EmptyGround,
    #[error("assignment has {got} entries for a source of {expected} elements")]
    AssignmentLength { expected: usize, got: usize },
    #[error("assignment sends element {index} to target index {image}, out of range")]
    ImageOutOfRange { index: usize, image: usize },
    #[error("ground sets do not match: {0}")]
    GroundMismatch(String),
    #[error("no surjection exists: source has {source_size} elements, target has {target_size}")]
    SizeMismatch {
        source_size: usize,
        target_size: usize,
    },
    #[error("element `{0}` is not in the ground set")]
    ElementNotInGround(String),
}

/// A total map between two ground sets, stored as one target index per
/// source element. Surjectivity is a computed property, never declared.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundMap {
    source: GroundSet,
    target: GroundSet,
    assignment: Vec<usize>,
}

impl GroundMap {
    pub fn new(
        source: GroundSet,
        target: GroundSet,
        assignment: Vec<usize>,
    ) -> Result<Self, MapError> {
        if source.is_empty() || target.is_empty() {
            return Err(MapError::EmptyGround);
        }
        if assignment.len() != source.len() {
            return Err(MapError::AssignmentLength {
                expected: source.len(),
                got: assignment.len(),
            });
        }
        for (i, &t) in assignment.iter().enumerate() {
            if t >= target.len() {
                return Err(MapError::ImageOutOfRange { index: i, image: t });
            }
        }
        Ok(GroundMap {
            source,
            target,
            assignment,
        })
    }

    pub fn identity(ground: &GroundSet) -> Result<Self, MapError> {
        GroundMap::new(ground.clone(), ground.clone(), (0..ground.len()).collect())
    }

    pub fn source(&self) -> &GroundSet {
        &self.source
    }

    pub fn target(&self) -> &GroundSet {
        &self.target
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn apply(&self, i: usize) -> usize {
        self.assignment[i]
    }

    pub fn is_surjective(&self) -> bool {
        self.image_unchecked(self.source.full_set()) == self.target.full_set()
    }

    pub fn is_injective(&self) -> bool {
        self.image_unchecked(self.source.full_set()).len() == self.source.len()
    }

    /// `{ f(a) : a ∈ A }`.
    pub fn image_of_set(&self, a: ElemSet) -> Result<ElemSet, MapError> {
        if !a.is_subset_of(self.source.full_set()) {
            let stray = a.minus(self.source.full_set()).min_elem().unwrap();
            return Err(MapError::ElementNotInGround(format!("#{stray}")));
        }
        Ok(self.image_unchecked(a))
    }

    pub(crate) fn image_unchecked(&self, a: ElemSet) -> ElemSet {
        a.iter().map(|i| self.assignment[i]).collect()
    }

    /// `{ s : f(s) ∈ A }`.
    pub fn preimage_of_set(&self, a: ElemSet) -> Result<ElemSet, MapError> {
        if !a.is_subset_of(self.target.full_set()) {
            let stray = a.minus(self.target.full_set()).min_elem().unwrap();
            return Err(MapError::ElementNotInGround(format!("#{stray}")));
        }
        Ok(self.preimage_unchecked(a))
    }

    pub(crate) fn preimage_unchecked(&self, a: ElemSet) -> ElemSet {
        self.assignment
            .iter()
            .enumerate()
            .filter(|(_, &t)| a.contains(t))
            .map(|(i, _)| i)
            .collect()
    }

    /// The fibers `f^{-1}(y)`, indexed by target element.
    pub fn fibers(&self) -> Vec<ElemSet> {
        let mut fibers = vec![ElemSet::EMPTY; self.target.len()];
        for (i, &t) in self.assignment.iter().enumerate() {
            fibers[t] = fibers[t].with(i);
        }
        fibers
    }

    /// Pointwise composition `h ∘ g`; requires `g`'s target to equal `h`'s
    /// source.
    pub fn compose(h: &GroundMap, g: &GroundMap) -> Result<GroundMap, MapError> {
        if g.target != h.source {
            return Err(MapError::GroundMismatch(
                "target of the inner map differs from source of the outer map".into(),
            ));
        }
        GroundMap::new(
            g.source.clone(),
            h.target.clone(),
            g.assignment.iter().map(|&i| h.assignment[i]).collect(),
        )
    }

    /// Compact `a->x b->y` rendering for reports.
    pub fn describe(&self) -> String {
        self.assignment
            .iter()
            .enumerate()
            .map(|(i, &t)| format!("{}->{}", self.source.label(i), self.target.label(t)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Debug for GroundMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroundMap({})", self.describe())
    }
}

/// Verdict of the homomorphism predicate. Failures carry witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomVerdict {
    Holds,
    /// `f` is not onto; carries the uncovered target elements.
    NotOnto { uncovered: Vec<String> },
    /// Some circuit's image is not a circuit of the target.
    ImageNotCircuit {
        circuit: Vec<String>,
        image: Vec<String>,
    },
}

impl HomVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, HomVerdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HomeoVerdict {
    Holds,
    NotHomomorphism(HomVerdict),
    /// Some target circuit's preimage is not a circuit of the source.
    PreimageNotCircuit {
        circuit: Vec<String>,
        preimage: Vec<String>,
    },
}

impl HomeoVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, HomeoVerdict::Holds)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InjectionVerdict {
    Holds,
    NotHomomorphism(HomVerdict),
    /// Two source elements share an image.
    NotInjective { x: String, y: String },
}

impl InjectionVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, InjectionVerdict::Holds)
    }
}

fn check_grounds(f: &GroundMap, m: &Matroid, n: &Matroid) -> Result<(), MapError> {
    if f.source() != m.ground() {
        return Err(MapError::GroundMismatch(
            "map source differs from the source matroid's ground set".into(),
        ));
    }
    if f.target() != n.ground() {
        return Err(MapError::GroundMismatch(
            "map target differs from the target matroid's ground set".into(),
        ));
    }
    Ok(())
}

/// Is `f` an onto map sending every circuit of `m` to a circuit of `n`?
pub fn is_homomorphism(f: &GroundMap, m: &Matroid, n: &Matroid) -> Result<HomVerdict, MapError> {
    check_grounds(f, m, n)?;
    let covered = f.image_unchecked(f.source().full_set());
    if covered != n.ground().full_set() {
        let uncovered = n.ground().labels_of(n.ground().full_set().minus(covered));
        return Ok(HomVerdict::NotOnto { uncovered });
    }
    for &c in m.circuits() {
        let image = f.image_unchecked(c);
        if !n.is_circuit(image) {
            return Ok(HomVerdict::ImageNotCircuit {
                circuit: m.ground().labels_of(c),
                image: n.ground().labels_of(image),
            });
        }
    }
    Ok(HomVerdict::Holds)
}

/// Is `f` a homomorphism whose preimages of target circuits are circuits?
pub fn is_homeomorphism(
    f: &GroundMap,
    m: &Matroid,
    n: &Matroid,
) -> Result<HomeoVerdict, MapError> {
    let hom = is_homomorphism(f, m, n)?;
    if !hom.holds() {
        return Ok(HomeoVerdict::NotHomomorphism(hom));
    }
    for &c in n.circuits() {
        let pre = f.preimage_unchecked(c);
        if !m.is_circuit(pre) {
            return Ok(HomeoVerdict::PreimageNotCircuit {
                circuit: n.ground().labels_of(c),
                preimage: m.ground().labels_of(pre),
            });
        }
    }
    Ok(HomeoVerdict::Holds)
}

/// Is `f` a bijective homomorphism? When it holds, the target is a
/// refinement of the source: the source circuit family maps into the
/// target's.
pub fn is_circuit_injection(
    f: &GroundMap,
    m: &Matroid,
    n: &Matroid,
) -> Result<InjectionVerdict, MapError> {
    check_grounds(f, m, n)?;
    if !f.is_injective() {
        let mut seen = vec![None; n.ground().len()];
        for (i, &t) in f.assignment().iter().enumerate() {
            if let Some(prev) = seen[t] {
                return Ok(InjectionVerdict::NotInjective {
                    x: m.ground().label(prev).to_string(),
                    y: m.ground().label(i).to_string(),
                });
            }
            seen[t] = Some(i);
        }
        unreachable!("non-injective map has a colliding pair");
    }
    let hom = is_homomorphism(f, m, n)?;
    if !hom.holds() {
        return Ok(InjectionVerdict::NotHomomorphism(hom));
    }
    Ok(InjectionVerdict::Holds)
}

/// All onto maps from `source` to `target`, each exactly once, in
/// lexicographic order of the assignment vector.
pub fn all_surjections(source: &GroundSet, target: &GroundSet) -> Result<Surjections, MapError> {
    if source.is_empty() || target.is_empty() {
        return Err(MapError::EmptyGround);
    }
    if source.len() < target.len() {
        return Err(MapError::SizeMismatch {
            source_size: source.len(),
            target_size: target.len(),
        });
    }
    Ok(Surjections {
        source: source.clone(),
        target: target.clone(),
        next: Some(vec![0; source.len()]),
    })
}

pub struct Surjections {
    source: GroundSet,
    target: GroundSet,
    next: Option<Vec<usize>>,
}

impl Surjections {
    fn bump(&mut self) {
        let Some(v) = self.next.as_mut() else {
            return;
        };
        let base = self.target.len();
        for i in (0..v.len()).rev() {
            v[i] += 1;
            if v[i] < base {
                return;
            }
            v[i] = 0;
        }
        self.next = None;
    }
}

impl Iterator for Surjections {
    type Item = GroundMap;

    fn next(&mut self) -> Option<GroundMap> {
        loop {
            let cur = self.next.clone()?;
            self.bump();
            let covered: ElemSet = cur.iter().copied().collect();
            if covered == self.target.full_set() {
                return Some(
                    GroundMap::new(self.source.clone(), self.target.clone(), cur)
                        .expect("odometer assignments are in range"),
                );
            }
        }
    }
}

/// All homomorphisms from `m` onto `n`, in lexicographic order of the
/// assignment vector.
///
/// Implemented as a depth-first search over partial assignments, pruning
/// when a partially mapped circuit can no longer complete to a circuit of
/// `n` and when too few positions remain to reach every target element.
/// The result equals filtering [`all_surjections`] by [`is_homomorphism`].
pub fn all_homomorphisms(m: &Matroid, n: &Matroid) -> Vec<GroundMap> {
    let ns = m.num_elements();
    let nt = n.num_elements();
    if ns == 0 || nt == 0 || ns < nt {
        return Vec::new();
    }

    // For the completion prune: is some circuit of n a superset of the mask?
    // Table only for small targets; otherwise scan.
    let superset_table: Option<Vec<bool>> = if nt <= 12 {
        let mut t = vec![false; 1 << nt];
        for &c in n.circuits() {
            for s in c.subsets() {
                t[s.bits() as usize] = true;
            }
        }
        Some(t)
    } else {
        None
    };
    let can_complete = |mask: ElemSet| -> bool {
        match &superset_table {
            Some(t) => t[mask.bits() as usize],
            None => n.circuits().iter().any(|c| mask.is_subset_of(*c)),
        }
    };

    let circuits = m.circuits();
    let mut circuits_at: Vec<Vec<usize>> = vec![Vec::new(); ns];
    for (ci, c) in circuits.iter().enumerate() {
        for e in c.iter() {
            circuits_at[e].push(ci);
        }
    }

    struct Search<'a, F: Fn(ElemSet) -> bool> {
        m: &'a Matroid,
        n: &'a Matroid,
        circuits_at: &'a [Vec<usize>],
        can_complete: F,
        assignment: Vec<usize>,
        partial_image: Vec<ElemSet>,
        unassigned_in: Vec<usize>,
        covered: ElemSet,
        out: Vec<GroundMap>,
    }

    impl<F: Fn(ElemSet) -> bool> Search<'_, F> {
        fn run(&mut self, pos: usize) {
            let ns = self.m.num_elements();
            let nt = self.n.num_elements();
            if pos == ns {
                if self.covered == self.n.ground().full_set() {
                    self.out.push(
                        GroundMap::new(
                            self.m.ground().clone(),
                            self.n.ground().clone(),
                            self.assignment.clone(),
                        )
                        .expect("search assignments are in range"),
                    );
                }
                return;
            }
            // Not enough positions left to cover the remaining targets.
            if nt - self.covered.len() > ns - pos {
                return;
            }
            't: for t in 0..nt {
                for &ci in &self.circuits_at[pos] {
                    let img = self.partial_image[ci].with(t);
                    let ok = if self.unassigned_in[ci] == 1 {
                        self.n.is_circuit(img)
                    } else {
                        (self.can_complete)(img)
                    };
                    if !ok {
                        continue 't;
                    }
                }
                let prev_cov = self.covered;
                self.assignment[pos] = t;
                self.covered = self.covered.with(t);
                for &ci in &self.circuits_at[pos] {
                    self.partial_image[ci] = self.partial_image[ci].with(t);
                    self.unassigned_in[ci] -= 1;
                }
                self.run(pos + 1);
                for &ci in &self.circuits_at[pos] {
                    self.unassigned_in[ci] += 1;
                    // Recompute: another member may map to the same target.
                    let c = self.m.circuits()[ci];
                    self.partial_image[ci] = c
                        .iter()
                        .take_while(|&e| e < pos)
                        .map(|e| self.assignment[e])
                        .collect();
                }
                self.covered = prev_cov;
            }
        }
    }

    let mut search = Search {
        m,
        n,
        circuits_at: &circuits_at,
        can_complete,
        assignment: vec![0; ns],
        partial_image: vec![ElemSet::EMPTY; circuits.len()],
        unassigned_in: circuits.iter().map(|c| c.len()).collect(),
        covered: ElemSet::EMPTY,
        out: Vec::new(),
    };
    search.run(0);
    search.out
}
