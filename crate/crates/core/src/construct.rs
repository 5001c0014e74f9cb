//! Matroid constructors: uniform matroids, cycle matroids of multigraphs,
//! subdivision, and the series-class quotient.

use std::collections::BTreeMap;

use crate::maps::GroundMap;
use crate::matroid::{GroundSet, Matroid, MatroidError};
use crate::set::{ElemSet, MAX_ELEMENTS};

/// The uniform matroid `U_{r,n}`: circuits are all `(r+1)`-subsets of an
/// `n`-element ground set (no circuits when `r = n`).
pub fn uniform(r: usize, n: usize) -> Result<Matroid, MatroidError> {
    if r > n || n > MAX_ELEMENTS {
        return Err(MatroidError::InvalidParameters(format!(
            "uniform({r},{n}) requires 0 <= r <= n <= {MAX_ELEMENTS}"
        )));
    }
    let ground = GroundSet::indexed(n);
    let circuits = if r == n {
        Vec::new()
    } else {
        subsets_of_size(n, r + 1)
    };
    Ok(Matroid::from_circuits(ground, circuits).expect("uniform circuit family is a matroid"))
}

fn subsets_of_size(n: usize, k: usize) -> Vec<ElemSet> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<ElemSet>) {
        if current.len() == k {
            out.push(current.iter().copied().collect());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(n, k, i + 1, current, out);
            current.pop();
        }
    }
    rec(n, k, 0, &mut current, &mut out);
    out
}

/// Practical cap on edge count for cycle enumeration by subset search.
const MAX_CYCLE_EDGES: usize = 20;

/// The cycle matroid of a multigraph: elements are the edges (labelled
/// `e0..`, in input order), circuits are the edge sets of simple cycles.
/// Self-loops and parallel edges are allowed.
pub fn cycle_matroid(vertices: usize, edges: &[(usize, usize)]) -> Result<Matroid, MatroidError> {
    for &(u, v) in edges {
        if u >= vertices || v >= vertices {
            return Err(MatroidError::InvalidVertex {
                vertex: u.max(v),
                vertices,
            });
        }
    }
    if edges.len() > MAX_CYCLE_EDGES {
        return Err(MatroidError::InvalidParameters(format!(
            "cycle_matroid supports at most {MAX_CYCLE_EDGES} edges, got {}",
            edges.len()
        )));
    }
    let m = edges.len();
    let mut circuits = Vec::new();
    // A subset of edges is a simple cycle iff every touched vertex has
    // degree exactly 2 (self-loops contribute 2) and the subgraph is
    // connected.
    for mask in 1u64..(1u64 << m) {
        let set = ElemSet::from_bits(mask);
        if is_simple_cycle(vertices, edges, set) {
            circuits.push(set);
        }
    }
    Ok(Matroid::from_circuits(GroundSet::indexed(m), circuits)
        .expect("cycle family of a multigraph is a matroid"))
}

fn is_simple_cycle(vertices: usize, edges: &[(usize, usize)], set: ElemSet) -> bool {
    let mut degree = vec![0usize; vertices];
    for e in set.iter() {
        let (u, v) = edges[e];
        degree[u] += 1;
        degree[v] += 1;
    }
    let touched: Vec<usize> = (0..vertices).filter(|&v| degree[v] > 0).collect();
    if touched.iter().any(|&v| degree[v] != 2) {
        return false;
    }
    // Connectivity over touched vertices via the selected edges.
    let start = touched[0];
    let mut seen = vec![false; vertices];
    seen[start] = true;
    let mut queue = vec![start];
    while let Some(u) = queue.pop() {
        for e in set.iter() {
            let (a, b) = edges[e];
            for (x, y) in [(a, b), (b, a)] {
                if x == u && !seen[y] {
                    seen[y] = true;
                    queue.push(y);
                }
            }
        }
    }
    touched.into_iter().all(|v| seen[v])
}

/// Replace each element of `h` by a nonempty fiber of fresh labels; every
/// circuit inflates to the union of its members' fibers.
///
/// Returns the subdivided matroid together with the collapse map sending
/// each new element to its originating element of `h`; the collapse map is
/// a homeomorphism onto `h`.
pub fn subdivide(
    h: &Matroid,
    fibers: &BTreeMap<String, Vec<String>>,
) -> Result<(Matroid, GroundMap), MatroidError> {
    for key in fibers.keys() {
        if h.ground().index_of(key).is_none() {
            return Err(MatroidError::InvalidParameters(format!(
                "fiber given for `{key}`, which is not an element of the matroid"
            )));
        }
    }
    let mut labels: Vec<String> = Vec::new();
    let mut assignment: Vec<usize> = Vec::new();
    let mut fiber_sets: Vec<ElemSet> = Vec::new();
    for (i, label) in h.ground().labels().iter().enumerate() {
        let fiber = fibers
            .get(label)
            .ok_or_else(|| MatroidError::EmptyFiber(label.clone()))?;
        let mut members: Vec<String> = fiber.clone();
        members.sort();
        members.dedup();
        if members.is_empty() {
            return Err(MatroidError::EmptyFiber(label.clone()));
        }
        let mut set = ElemSet::EMPTY;
        for m in members {
            if labels.contains(&m) {
                return Err(MatroidError::FiberOverlap(m));
            }
            set = set.with(labels.len());
            labels.push(m);
            assignment.push(i);
        }
        fiber_sets.push(set);
    }
    let ground = GroundSet::new(labels)?;
    let circuits: Vec<ElemSet> = h
        .circuits()
        .iter()
        .map(|c| {
            c.iter()
                .fold(ElemSet::EMPTY, |acc, e| acc.union(fiber_sets[e]))
        })
        .collect();
    let m = Matroid::from_circuits(ground.clone(), circuits)
        .expect("subdivision of a matroid is a matroid");
    let collapse = GroundMap::new(ground, h.ground().clone(), assignment)
        .expect("collapse assignment is total and in range");
    Ok((m, collapse))
}

/// Collapse each maximal series class of a connected, coloop-free matroid
/// to a single element. Returns the quotient together with the collapse
/// map, which is a homeomorphism; subdividing the quotient by the classes
/// reproduces the input up to isomorphism.
pub fn series_quotient(m: &Matroid) -> Result<(Matroid, GroundMap), MatroidError> {
    if m.ground().is_empty() {
        return Err(MatroidError::InvalidParameters(
            "series quotient of an empty matroid".into(),
        ));
    }
    if !m.is_connected() {
        return Err(MatroidError::NotConnected);
    }
    let partition = m.series_partition();
    if !partition.coloops.is_empty() {
        return Err(MatroidError::HasColoops);
    }
    // Connected matroids on >= 2 elements have no loops; a single loop is
    // its own unit.
    let mut units: Vec<ElemSet> = partition.classes.clone();
    units.extend(partition.loops.iter().map(ElemSet::singleton));
    units.sort();

    let reps: Vec<usize> = units.iter().map(|u| u.min_elem().unwrap()).collect();
    let ground = GroundSet::new(reps.iter().map(|&r| m.ground().label(r)))
        .expect("class representatives have distinct labels");
    let mut unit_of = vec![0usize; m.num_elements()];
    for (ui, u) in units.iter().enumerate() {
        for e in u.iter() {
            unit_of[e] = ui;
        }
    }
    let circuits: Vec<ElemSet> = m
        .circuits()
        .iter()
        .map(|c| c.iter().map(|e| unit_of[e]).collect())
        .collect();
    let h = Matroid::from_circuits(ground.clone(), circuits)
        .expect("series-class collapse of a matroid is a matroid");
    let map = GroundMap::new(m.ground().clone(), ground, unit_of)
        .expect("collapse assignment is total and in range");
    Ok((h, map))
}

impl Matroid {
    /// The same circuit family on a different ground set of equal size.
    pub fn relabel(&self, ground: GroundSet) -> Result<Matroid, MatroidError> {
        if ground.len() != self.num_elements() {
            return Err(MatroidError::InvalidParameters(format!(
                "relabel needs {} labels, got {}",
                self.num_elements(),
                ground.len()
            )));
        }
        Ok(Matroid::from_parts_unchecked(
            ground,
            self.circuits().to_vec(),
        ))
    }
}
