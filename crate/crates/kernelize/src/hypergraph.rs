//! Hypergraphs over labeled vertices, constructive sunflower search, and the
//! edge-deletion-only hitting-set kernelization.
//!
//! A sunflower of cardinality r is a set of r edges whose pairwise
//! intersections all equal one common core. The finder implements the
//! classic counting recursion: greedily collect pairwise disjoint edges in
//! canonical order; when that stalls, recurse on the link of the most
//! frequent vertex. Above the counting bound (r-1)^d * d! on a d-uniform
//! edge family the search cannot fail.
//!
//! The hitting-set kernel only ever deletes whole edges. Deleting one petal
//! of a sunflower of cardinality k+2 preserves the answer at parameter k:
//! any hitting set of at most k elements must meet the core of the k+1
//! remaining petals, and the core is contained in the deleted edge.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::hash::Hash;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("sunflower cardinality must be at least 1")]
    ZeroCardinality,
    #[error("hypergraph is not uniform")]
    NotUniform,
    #[error("operation requires nonempty edges")]
    EmptyEdge,
    #[error("hypergraph dimension {dim} exceeds the declared bound {bound}")]
    DimensionExceeded { dim: usize, bound: usize },
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A set system over labeled vertices. Vertex and edge order are canonical:
/// first insertion wins, and all tie-breaking follows these orders.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hypergraph<V> {
    vertices: Vec<V>,
    vindex: HashMap<V, usize>,
    edges: Vec<BTreeSet<usize>>,
    edge_keys: HashSet<BTreeSet<usize>>,
}

impl<V: Clone + Eq + Hash + Ord> Default for Hypergraph<V> {
    fn default() -> Self {
        Hypergraph {
            vertices: Vec::new(),
            vindex: HashMap::new(),
            edges: Vec::new(),
            edge_keys: HashSet::new(),
        }
    }
}

impl<V: Clone + Eq + Hash + Ord> Hypergraph<V> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_vertex(&mut self, label: V) -> usize {
        if let Some(&i) = self.vindex.get(&label) {
            return i;
        }
        let i = self.vertices.len();
        self.vertices.push(label.clone());
        self.vindex.insert(label, i);
        i
    }

    /// Inserts an edge given as vertex labels; unseen labels become new
    /// vertices in the given order. Returns false if the edge already exists.
    pub fn add_edge<I>(&mut self, labels: I) -> bool
    where
        I: IntoIterator<Item = V>,
    {
        let edge: BTreeSet<usize> = labels.into_iter().map(|l| self.add_vertex(l)).collect();
        if self.edge_keys.contains(&edge) {
            return false;
        }
        self.edge_keys.insert(edge.clone());
        self.edges.push(edge);
        true
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> &[V] {
        &self.vertices
    }

    pub fn contains_edge(&self, labels: &BTreeSet<V>) -> bool {
        let Some(edge) = labels.iter().map(|l| self.vindex.get(l).copied()).collect::<Option<BTreeSet<usize>>>() else {
            return false;
        };
        self.edge_keys.contains(&edge)
    }

    /// Edges as label sets, in canonical edge order.
    pub fn edge_sets(&self) -> Vec<BTreeSet<V>> {
        self.edges.iter().map(|e| self.labels(e)).collect()
    }

    fn labels(&self, edge: &BTreeSet<usize>) -> BTreeSet<V> {
        edge.iter().map(|&i| self.vertices[i].clone()).collect()
    }

    /// Maximum edge cardinality; 0 for an edgeless hypergraph.
    pub fn dimension(&self) -> usize {
        self.edges.iter().map(|e| e.len()).max().unwrap_or(0)
    }

    /// `Some(d)` when every edge has cardinality exactly d.
    pub fn uniform_dimension(&self) -> Option<usize> {
        let mut sizes = self.edges.iter().map(|e| e.len());
        let first = sizes.next()?;
        sizes.all(|s| s == first).then_some(first)
    }

    pub fn has_empty_edge(&self) -> bool {
        self.edges.iter().any(|e| e.is_empty())
    }

    /// Finds a sunflower of cardinality `r` in a uniform hypergraph. Always
    /// succeeds when there are more than (r-1)^d * d! edges; below that
    /// bound a sunflower may still be returned if the search happens upon
    /// one.
    pub fn find_sunflower_uniform(&self, r: usize) -> Result<Option<Sunflower<V>>, HypergraphError> {
        if r == 0 {
            return Err(HypergraphError::ZeroCardinality);
        }
        if self.edges.is_empty() {
            return Ok(None);
        }
        if self.uniform_dimension().is_none() {
            return Err(HypergraphError::NotUniform);
        }
        Ok(find_in_indexed(&self.edges, r).map(|(petals, core)| Sunflower {
            petals: petals.iter().map(|p| self.labels(p)).collect(),
            core: self.labels(&core),
        }))
    }

    /// Finds a sunflower of cardinality `r` in a mixed-dimension hypergraph
    /// by scanning cardinality classes in increasing order. Guaranteed to
    /// succeed with more than (r-1)^d * d! * d edges of dimension at most d.
    pub fn find_sunflower(&self, r: usize) -> Result<Option<Sunflower<V>>, HypergraphError> {
        if self.has_empty_edge() {
            return Err(HypergraphError::EmptyEdge);
        }
        let found = find_mixed_indexed(&self.edges, r)?;
        Ok(found.map(|(petals, core)| Sunflower {
            petals: petals.iter().map(|p| self.labels(p)).collect(),
            core: self.labels(&core),
        }))
    }
}

/// A found sunflower: petals plus the shared core.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sunflower<V> {
    pub petals: Vec<BTreeSet<V>>,
    pub core: BTreeSet<V>,
}

impl<V: Clone + Eq + Ord> Sunflower<V> {
    pub fn cardinality(&self) -> usize {
        self.petals.len()
    }

    /// Exhaustive pairwise check of the sunflower condition: all petals are
    /// distinct, every pair intersects in exactly the core, and the core is
    /// contained in every petal.
    pub fn verify(&self) -> bool {
        for (i, a) in self.petals.iter().enumerate() {
            if !self.core.is_subset(a) {
                return false;
            }
            for b in self.petals.iter().skip(i + 1) {
                if a == b {
                    return false;
                }
                let inter: BTreeSet<V> = a.intersection(b).cloned().collect();
                if inter != self.core {
                    return false;
                }
            }
        }
        true
    }
}

type IndexedSunflower = (Vec<BTreeSet<usize>>, BTreeSet<usize>);

/// Recursive finder on uniform indexed edges. Edges must all share one
/// cardinality; preserves the order of `edges` for all tie-breaking.
fn find_in_indexed(edges: &[BTreeSet<usize>], r: usize) -> Option<IndexedSunflower> {
    // greedy maximal pairwise-disjoint family in canonical edge order
    let mut used: HashSet<usize> = HashSet::new();
    let mut disjoint: Vec<&BTreeSet<usize>> = Vec::new();
    for edge in edges {
        if edge.iter().all(|v| !used.contains(v)) {
            used.extend(edge.iter().copied());
            disjoint.push(edge);
            if disjoint.len() == r {
                return Some((disjoint.into_iter().cloned().collect(), BTreeSet::new()));
            }
        }
    }

    // every edge meets the union of the disjoint family; recurse on the
    // link of the most frequent vertex (ties: canonical vertex order)
    let mut counts: HashMap<usize, usize> = HashMap::new();
    for edge in edges {
        for &v in edge {
            *counts.entry(v).or_insert(0) += 1;
        }
    }
    let best = counts.into_iter().max_by_key(|&(v, c)| (c, std::cmp::Reverse(v)))?.0;

    let mut seen: HashSet<BTreeSet<usize>> = HashSet::new();
    let mut link: Vec<BTreeSet<usize>> = Vec::new();
    for edge in edges {
        if edge.contains(&best) {
            let mut reduced = edge.clone();
            reduced.remove(&best);
            if seen.insert(reduced.clone()) {
                link.push(reduced);
            }
        }
    }
    let (petals, mut core) = find_in_indexed(&link, r)?;
    let petals = petals
        .into_iter()
        .map(|mut p| {
            p.insert(best);
            p
        })
        .collect();
    core.insert(best);
    Some((petals, core))
}

/// Mixed-dimension finder: scan cardinality classes in increasing order and
/// delegate to the uniform finder on the first class exceeding its counting
/// bound; below every bound, try each class opportunistically.
fn find_mixed_indexed(
    edges: &[BTreeSet<usize>],
    r: usize,
) -> Result<Option<IndexedSunflower>, HypergraphError> {
    if r == 0 {
        return Err(HypergraphError::ZeroCardinality);
    }
    let mut classes: Vec<(usize, Vec<BTreeSet<usize>>)> = Vec::new();
    for edge in edges {
        debug_assert!(!edge.is_empty());
        let d = edge.len();
        match classes.iter_mut().find(|(dim, _)| *dim == d) {
            Some((_, class)) => class.push(edge.clone()),
            None => classes.push((d, vec![edge.clone()])),
        }
    }
    classes.sort_by_key(|(d, _)| *d);

    for (d, class) in &classes {
        if class.len() as u128 > uniform_sunflower_bound(r, *d) {
            return match find_in_indexed(class, r) {
                Some(found) => Ok(Some(found)),
                None => Err(HypergraphError::Internal(format!(
                    "no sunflower of cardinality {r} among {} edges of cardinality {d}",
                    class.len()
                ))),
            };
        }
    }
    for (_, class) in &classes {
        if let Some(found) = find_in_indexed(class, r) {
            return Ok(Some(found));
        }
    }
    Ok(None)
}

/// (r-1)^d * d!, the uniform counting bound.
fn uniform_sunflower_bound(r: usize, d: usize) -> u128 {
    let base = (r - 1) as u128;
    let mut bound: u128 = 1;
    for i in 1..=d {
        bound = bound.saturating_mul(base).saturating_mul(i as u128);
    }
    bound
}

/// (k+1)^s * s! * s, the edge budget of the hitting-set kernel.
pub fn hitting_set_edge_bound(k: usize, s: usize) -> u128 {
    let base = (k as u128).saturating_add(1);
    let mut bound: u128 = 1;
    for i in 1..=s {
        bound = bound.saturating_mul(base).saturating_mul(i as u128);
    }
    bound.saturating_mul(s as u128)
}

/// Edge-deletion-only kernelization for hitting set with edge cardinalities
/// at most `s`. While more than (k+1)^s * s! * s edges remain, finds a
/// sunflower of cardinality k+2 and deletes its lexicographically largest
/// petal. The result keeps a subset of the original edges, drops isolated
/// vertices, and is hitting-set-equivalent to the input at parameter k.
pub fn kernelize_hitting_set<V: Clone + Eq + Hash + Ord>(
    h: &Hypergraph<V>,
    k: usize,
    s: usize,
) -> Result<Hypergraph<V>, HypergraphError> {
    if h.has_empty_edge() {
        return Err(HypergraphError::EmptyEdge);
    }
    if h.dimension() > s {
        return Err(HypergraphError::DimensionExceeded { dim: h.dimension(), bound: s });
    }
    let bound = hitting_set_edge_bound(k, s);
    let mut edges: Vec<BTreeSet<usize>> = h.edges.clone();
    while edges.len() as u128 > bound {
        let Some((petals, _)) = find_mixed_indexed(&edges, k + 2)? else {
            return Err(HypergraphError::Internal(format!(
                "sunflower of cardinality {} not found among {} edges over bound {bound}",
                k + 2,
                edges.len()
            )));
        };
        let victim = petals.iter().max().expect("sunflower has petals").clone();
        let pos = edges.iter().position(|e| *e == victim).expect("petal is an edge");
        edges.remove(pos);
    }

    let mut kept = Hypergraph::new();
    let mut live: BTreeSet<usize> = BTreeSet::new();
    for e in &edges {
        live.extend(e.iter().copied());
    }
    for &v in &live {
        kept.add_vertex(h.vertices[v].clone());
    }
    // reinsertion preserves the original vertex order because live is
    // ordered by original index
    for e in &edges {
        kept.add_edge(e.iter().map(|&v| h.vertices[v].clone()));
    }
    Ok(kept)
}
