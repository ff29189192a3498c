//! Sign-structure classification and the reducibility / weak-irreducibility
//! machinery: representation graph, connected components, and the block
//! partition used by the per-block eigenvalue computation.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::tensor::SymTensor;

/// Sign-structure flags of a tensor.
///
/// `symmetric` is always true for canonical storage; it is kept because the
/// classification is reported alongside tensors parsed from general input.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct StructureClass {
    pub symmetric: bool,
    pub nonnegative: bool,
    pub essentially_nonnegative: bool,
    pub essentially_nonpositive: bool,
}

/// Computes all flags in a single pass over stored entries.
pub fn classify(a: &SymTensor) -> StructureClass {
    let mut nonnegative = true;
    let mut essentially_nonnegative = true;
    let mut essentially_nonpositive = true;
    for (key, value) in a.entries() {
        if value < 0.0 {
            nonnegative = false;
        }
        if !key.is_diagonal() {
            if value < 0.0 {
                essentially_nonnegative = false;
            }
            if value > 0.0 {
                essentially_nonpositive = false;
            }
        }
    }
    StructureClass {
        symmetric: true,
        nonnegative,
        essentially_nonnegative,
        essentially_nonpositive,
    }
}

/// Decomposes an essentially nonnegative tensor as A = B + cI with B
/// nonnegative, taking c = min(0, d_min(A)).
pub fn essential_decomposition(a: &SymTensor) -> Result<(SymTensor, f64)> {
    if !classify(a).essentially_nonnegative {
        return Err(Error::NotEssentiallyNonnegative);
    }
    let c = a.diag_stats().min.min(0.0);
    let b = a.add_scaled_identity(-c);
    Ok((b, c))
}

/// Undirected co-occurrence graph on the tensor's indices: {i, j} is an
/// edge iff some nonzero entry contains both i and j, i != j. For symmetric
/// tensors its connectivity is weak irreducibility.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepresentationGraph {
    vertices: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl RepresentationGraph {
    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    /// Edges as ordered pairs (i, j) with i < j.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Connected components sorted by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.vertices);
        for &(i, j) in &self.edges {
            uf.union(i, j);
        }
        uf.sets()
    }
}

/// Builds the representation graph. Diagonal entries induce no edges: an
/// entry (i, ..., i) links no distinct labels, so an index carrying only a
/// diagonal entry stays a singleton.
pub fn representation_graph(a: &SymTensor) -> RepresentationGraph {
    let mut edges = BTreeSet::new();
    for (key, _) in a.entries() {
        let idx = key.indices();
        for p in 0..idx.len() {
            for q in (p + 1)..idx.len() {
                if idx[p] != idx[q] {
                    edges.insert((idx[p].min(idx[q]), idx[p].max(idx[q])));
                }
            }
        }
    }
    RepresentationGraph {
        vertices: a.dim(),
        edges,
    }
}

/// True iff the representation graph is connected over all of 0..n.
pub fn is_weakly_irreducible(a: &SymTensor) -> bool {
    representation_graph(a).is_connected()
}

/// The block decomposition into weakly irreducible parts: connected
/// components of the representation graph, ordered by smallest member.
/// No nonzero entry crosses two blocks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

pub fn weakly_irreducible_partition(a: &SymTensor) -> Partition {
    Partition {
        blocks: representation_graph(a).components(),
    }
}

/// Maximum dimension for the exhaustive reducing-set fallback.
const REDUCIBLE_ENUM_LIMIT: usize = 12;

/// Searches for a reducing index set: a proper nonempty I with
/// a_{i_1 ... i_k} = 0 whenever i_1 is in I and i_2, ..., i_k are all
/// outside I.
///
/// A disconnected representation graph always yields a witness (any
/// component). When the graph is connected, an exhaustive subset scan runs
/// for n <= 12; beyond that only component analysis is attempted, so a
/// `None` answer is a certificate of irreducibility only for n <= 12.
pub fn is_reducible(a: &SymTensor) -> Option<Vec<usize>> {
    let n = a.dim();
    if n < 2 {
        return None;
    }
    let components = representation_graph(a).components();
    if components.len() > 1 {
        return Some(components[0].clone());
    }
    if n > REDUCIBLE_ENUM_LIMIT {
        return None;
    }
    // For symmetric storage, I fails iff some nonzero entry has exactly one
    // of its k index occurrences inside I: that occurrence serves as i_1 and
    // the remaining k-1 all lie outside.
    let entry_indices: Vec<&[usize]> = a.entries().map(|(key, _)| key.indices()).collect();
    for mask in 1u32..((1u32 << n) - 1) {
        let reducing = entry_indices.iter().all(|idx| {
            let inside = idx.iter().filter(|&&i| mask & (1 << i) != 0).count();
            inside != 1
        });
        if reducing {
            return Some((0..n).filter(|&i| mask & (1 << i) != 0).collect());
        }
    }
    None
}

#[derive(Debug)]
struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(len: usize) -> UnionFind {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, x: usize, y: usize) {
        let mut xr = self.find(x);
        let mut yr = self.find(y);
        if xr == yr {
            return;
        }
        if self.size[xr] < self.size[yr] {
            std::mem::swap(&mut xr, &mut yr);
        }
        self.parent[yr] = xr;
        self.size[xr] += self.size[yr];
    }

    /// Component member lists sorted by smallest member.
    fn sets(&mut self) -> Vec<Vec<usize>> {
        let len = self.parent.len();
        let mut groups = vec![Vec::new(); len];
        for x in 0..len {
            let root = self.find(x);
            groups[root].push(x);
        }
        groups.retain(|g| !g.is_empty());
        groups.sort_by_key(|g| g[0]);
        groups
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zero_diag_example() -> SymTensor {
        SymTensor::from_entries(
            3,
            3,
            vec![
                (vec![0, 0, 2], 2.0),
                (vec![1, 1, 2], 2.0),
                (vec![0, 1, 2], -1.0),
            ],
        )
        .unwrap()
    }

    /// Block-diagonal tensor with all-ones blocks on the given index sets.
    fn block_all_ones(order: usize, dim: usize, blocks: &[&[usize]]) -> SymTensor {
        let mut t = SymTensor::zero(order, dim).unwrap();
        for block in blocks {
            let ones = SymTensor::all_ones(order, block.len()).unwrap();
            for (key, value) in ones.entries() {
                let mapped: Vec<usize> = key.indices().iter().map(|&i| block[i]).collect();
                t.set(mapped, value).unwrap();
            }
        }
        t
    }

    #[test]
    fn classify_examples() {
        let j = SymTensor::all_ones(3, 2).unwrap();
        let c = classify(&j);
        assert!(c.symmetric && c.nonnegative && c.essentially_nonnegative);
        assert!(!c.essentially_nonpositive);

        let neg_id = SymTensor::identity(3, 3).unwrap().scale(-1.0);
        let c = classify(&neg_id);
        assert!(!c.nonnegative);
        assert!(c.essentially_nonnegative && c.essentially_nonpositive);

        let c = classify(&zero_diag_example());
        assert!(!c.essentially_nonnegative && !c.essentially_nonpositive);
    }

    #[test]
    fn essential_decomposition_examples() {
        let j = SymTensor::all_ones(3, 2).unwrap();
        let (b, c) = essential_decomposition(&j).unwrap();
        assert_eq!(c, 0.0);
        assert_eq!(b, j);

        let neg_id = SymTensor::identity(3, 3).unwrap().scale(-1.0);
        let (b, c) = essential_decomposition(&neg_id).unwrap();
        assert_eq!(c, -1.0);
        assert_eq!(b.nnz(), 0);

        // diag (-2, 3), off-diagonal 1 at k=3, n=2.
        let mut a = SymTensor::all_ones(3, 2).unwrap();
        a.set(vec![0, 0, 0], -2.0).unwrap();
        a.set(vec![1, 1, 1], 3.0).unwrap();
        let (b, c) = essential_decomposition(&a).unwrap();
        assert_eq!(c, -2.0);
        assert_eq!(b.get(&[0, 0, 0]), 0.0);
        assert_eq!(b.get(&[1, 1, 1]), 5.0);
        assert_eq!(b.get(&[0, 0, 1]), 1.0);
        assert!(classify(&b).nonnegative);
        // Exact reconstruction.
        assert_eq!(b.add_scaled_identity(c), a);

        assert!(matches!(
            essential_decomposition(&zero_diag_example()),
            Err(Error::NotEssentiallyNonnegative)
        ));
    }

    #[test]
    fn representation_graph_examples() {
        let j = SymTensor::all_ones(3, 3).unwrap();
        let g = representation_graph(&j);
        assert_eq!(g.edges().count(), 3);
        assert!(is_weakly_irreducible(&j));

        let id = SymTensor::identity(3, 3).unwrap();
        let g = representation_graph(&id);
        assert_eq!(g.edges().count(), 0);
        assert!(!is_weakly_irreducible(&id));

        let g = representation_graph(&zero_diag_example());
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 1), (0, 2), (1, 2)]);
        assert!(g.is_connected());
    }

    #[test]
    fn partition_examples() {
        let j = SymTensor::all_ones(3, 4).unwrap();
        assert_eq!(weakly_irreducible_partition(&j).blocks(), &[vec![0, 1, 2, 3]]);

        let id = SymTensor::identity(3, 3).unwrap();
        let p = weakly_irreducible_partition(&id);
        assert_eq!(p.blocks(), &[vec![0], vec![1], vec![2]]);

        let t = block_all_ones(3, 4, &[&[0, 1], &[2, 3]]);
        let p = weakly_irreducible_partition(&t);
        assert_eq!(p.blocks(), &[vec![0, 1], vec![2, 3]]);
        // Each block is weakly irreducible after extraction.
        for block in p.blocks() {
            assert!(is_weakly_irreducible(&t.subtensor(block).unwrap()));
        }
    }

    #[test]
    fn reducibility_examples() {
        let id = SymTensor::identity(3, 3).unwrap();
        assert_eq!(is_reducible(&id), Some(vec![0]));

        let j = SymTensor::all_ones(3, 3).unwrap();
        assert_eq!(is_reducible(&j), None);

        let t = block_all_ones(3, 4, &[&[0, 1], &[2, 3]]);
        assert_eq!(is_reducible(&t), Some(vec![0, 1]));

        // Weakly irreducible but reducible: only the (1,1,2) orbit is
        // nonzero, so I = {1} works even though the graph is connected.
        let t = SymTensor::from_entries(3, 2, vec![(vec![0, 0, 1], 1.0)]).unwrap();
        assert!(is_weakly_irreducible(&t));
        assert_eq!(is_reducible(&t), Some(vec![0]));
    }

    #[test]
    fn reducible_witness_is_sound() {
        let t = block_all_ones(3, 5, &[&[0, 2], &[1, 3, 4]]);
        let witness = is_reducible(&t).unwrap();
        let inside = |i: usize| witness.contains(&i);
        for (key, value) in t.entries() {
            let idx = key.indices();
            // No nonzero entry may have exactly one occurrence inside the
            // witness set.
            let count = idx.iter().filter(|&&i| inside(i)).count();
            assert!(value == 0.0 || count != 1);
        }
    }
}
