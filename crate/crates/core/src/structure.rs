//! The Boolean system `M_f`, the inequality graph `G_f`, the canonical
//! family `𝒰(f)` of unions of its components, and the inseparable
//! decomposition.
//!
//! Building `G_f` costs `Θ(2^n·n²)` slack evaluations in the worst case:
//! an edge `{u,v}` is settled by the first face on that pair with nonzero
//! slack, but an absent edge needs all `2^(n−2)` faces on the pair.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::require_submodular;
use crate::dsu::ParityUnionFind;
use crate::error::{Error, Result};
use crate::setfn::{faces_on_pair, phi, phi_face, GroundSet, Oracle, Subset, TwoFace};
use crate::Rational;

/// Row `p` of `M_f`: the pair indicator when `Φ̌_f(p) ≠ 0`, else zero.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BooleanRow {
    pub face: TwoFace,
    pub support: Option<(usize, usize)>,
}

impl BooleanRow {
    /// `M_f[p,·]·χ_S mod 2`.
    pub fn apply(&self, s: Subset) -> bool {
        match self.support {
            Some((u, v)) => s.contains(u) ^ s.contains(v),
            None => false,
        }
    }
}

pub fn boolean_row<O: Oracle + ?Sized>(f: &O, face: TwoFace) -> BooleanRow {
    let support = (!phi_face(f, face).is_zero()).then(|| face.pair());
    BooleanRow { face, support }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityGraph {
    ground: GroundSet,
    edges: Vec<(usize, usize)>,
    components: Vec<Subset>,
}

impl InequalityGraph {
    /// Builds the graph from an explicit edge list over `ground`.
    pub fn from_edges(ground: GroundSet, mut edges: Vec<(usize, usize)>) -> Self {
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
        }
        edges.sort_unstable();
        edges.dedup();
        let components = components_of(ground.len(), &edges);
        InequalityGraph {
            ground,
            edges,
            components,
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        let e = if u < v { (u, v) } else { (v, u) };
        self.edges.binary_search(&e).is_ok()
    }

    /// Connected components ordered by their lowest element.
    pub fn components(&self) -> &[Subset] {
        &self.components
    }

    /// `S ∈ 𝒰(f)`: every component lies entirely inside or outside `S`.
    pub fn is_union_of_components(&self, s: Subset) -> bool {
        self.components
            .iter()
            .all(|&c| (c & s).is_empty() || c.is_subset_of(s))
    }

    pub fn canonical_family(&self) -> Result<CanonicalFamily> {
        CanonicalFamily::new(self.components.clone(), Subset::EMPTY)
    }
}

fn components_of(n: usize, edges: &[(usize, usize)]) -> Vec<Subset> {
    let mut uf = ParityUnionFind::new(n);
    for &(u, v) in edges {
        // all-zero parities never conflict
        let _ = uf.union(u, v, false);
    }
    group_by_root(&mut uf)
}

pub(crate) fn group_by_root(uf: &mut ParityUnionFind) -> Vec<Subset> {
    let n = uf.len();
    let mut by_root = vec![Subset::EMPTY; n];
    for i in 0..n {
        let (root, _) = uf.find(i);
        by_root[root] = by_root[root].with(i);
    }
    let mut blocks: Vec<Subset> = by_root.into_iter().filter(|s| !s.is_empty()).collect();
    blocks.sort_by_key(|s| s.min_element());
    blocks
}

/// `G_f = (V, E_f)` with `{u,v} ∈ E_f` iff some face on `{u,v}` has `Φ̌_f ≠ 0`.
pub fn inequality_graph<O: Oracle + ?Sized>(f: &O) -> InequalityGraph {
    let n = f.ground().len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if faces_on_pair(n, u, v).any(|p| !phi_face(f, p).is_zero()) {
                edges.push((u, v));
            }
        }
    }
    InequalityGraph::from_edges(f.ground().clone(), edges)
}

/// Largest component count for which unions are enumerated.
pub const UNION_ENUMERATION_CAP: usize = 24;

/// All `2^k` unions of a block partition, each shifted by a fixed offset,
/// in Gray-code order starting from the offset itself.
#[derive(Clone, Debug)]
pub struct CanonicalFamily {
    blocks: Vec<Subset>,
    current: Subset,
    step: u64,
}

impl CanonicalFamily {
    pub(crate) fn new(blocks: Vec<Subset>, start: Subset) -> Result<Self> {
        Self::with_cap(blocks, start, UNION_ENUMERATION_CAP)
    }

    pub(crate) fn with_cap(blocks: Vec<Subset>, start: Subset, cap: usize) -> Result<Self> {
        if blocks.len() > cap {
            return Err(Error::TooManyUnions {
                k: blocks.len(),
                cap,
            });
        }
        Ok(CanonicalFamily {
            blocks,
            current: start,
            step: 0,
        })
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn total(&self) -> u64 {
        1u64 << self.blocks.len()
    }
}

impl Iterator for CanonicalFamily {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        if self.step >= self.total() {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current = self.current ^ self.blocks[flip];
        }
        self.step += 1;
        Some(self.current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.total() - self.step) as usize;
        (left, Some(left))
    }
}

/// `𝒰(f)`, streamed.
pub fn canonical_family<O: Oracle + ?Sized>(f: &O) -> Result<CanonicalFamily> {
    inequality_graph(f).canonical_family()
}

/// Whether `f∘σ_S` is submodular, decided by component membership of `S`.
/// `f` must be submodular.
pub fn is_sd_submodular<O: Oracle + ?Sized>(f: &O, s: Subset) -> Result<bool> {
    f.ground().check(s)?;
    require_submodular(f)?;
    Ok(inequality_graph(f).is_union_of_components(s))
}

/// Same test against a precomputed graph of a submodular function.
pub fn is_sd_submodular_in(graph: &InequalityGraph, s: Subset) -> Result<bool> {
    graph.ground().check(s)?;
    Ok(graph.is_union_of_components(s))
}

/// `Φ_f(U, V∖U) = 0`, for a proper nonempty `U`.
pub fn is_separable<O: Oracle + ?Sized>(f: &O, u: Subset) -> Result<bool> {
    let ground = f.ground();
    ground.check(u)?;
    if u.is_empty() || u == ground.full() {
        return Err(Error::Domain("separability needs ∅ ≠ U ≠ V".into()));
    }
    Ok(phi(f, u, ground.complement(u)).is_zero())
}

#[derive(Clone, Copy, Debug)]
pub struct DecompositionOptions {
    /// Verify additivity on every subset up to this ground-set size.
    pub exhaustive_up_to: usize,
    /// Random subsets checked above the exhaustive threshold.
    pub samples: usize,
    pub seed: u64,
}

impl Default for DecompositionOptions {
    fn default() -> Self {
        DecompositionOptions {
            exhaustive_up_to: 14,
            samples: 10_000,
            seed: 0x5d_5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub parts: Vec<Subset>,
    /// `ρ(X) = Σ ρ(X ∩ U_i)` held on every checked subset.
    pub verified: bool,
    pub checked: usize,
    pub exhaustive: bool,
}

pub fn inseparable_decomposition<O: Oracle + ?Sized>(f: &O) -> Result<Decomposition> {
    inseparable_decomposition_with(f, DecompositionOptions::default())
}

/// Components of `G_f`, then a replay of additivity of `ρ = f − f(∅)`
/// across them. A failed replay is reported as an error: for submodular
/// input it can only come from a bug.
pub fn inseparable_decomposition_with<O: Oracle + ?Sized>(
    f: &O,
    options: DecompositionOptions,
) -> Result<Decomposition> {
    require_submodular(f)?;
    let parts = inequality_graph(f).components().to_vec();
    let n = f.ground().len();
    let empty = f.value(Subset::EMPTY);
    let rho = |x: Subset| -> Rational { f.value(x) - &empty };
    let additive = |x: Subset| rho(x) == parts.iter().map(|&p| rho(x & p)).sum::<Rational>();

    let exhaustive = n <= options.exhaustive_up_to;
    let checked = if exhaustive {
        if let Some(bad) = Subset::all(n).find(|&x| !additive(x)) {
            return Err(Error::DecompositionMismatch(bad));
        }
        1usize << n
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
        let full = Subset::full(n).0;
        for _ in 0..options.samples {
            let x = Subset(rng.gen::<u32>() & full);
            if !additive(x) {
                return Err(Error::DecompositionMismatch(x));
            }
        }
        options.samples
    };
    Ok(Decomposition {
        parts,
        verified: true,
        checked,
        exhaustive,
    })
}
