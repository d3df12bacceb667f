//! Canonical sets: the subsets `T` for which `g∘σ_T` is submodular.
//!
//! Each face `p = (Z, {u,v})` with `Φ̌_g(p) ≠ 0` demands
//! `χ_T(u) + χ_T(v) ≡ [Φ̌_g(p) < 0] (mod 2)`; faces with zero slack demand
//! nothing. `T` is canonical exactly when it meets every demand, for any
//! set function `g`.

pub mod adversary;

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::classify::is_submodular;
use crate::dsu::ParityUnionFind;
use crate::error::{Error, Result};
use crate::setfn::{enumerate_faces, phi_face, GroundSet, Oracle, Subset, TwoFace};
use crate::structure::{group_by_root, CanonicalFamily};
use crate::transform::sd_view;
use crate::value::sign;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ParityConstraint {
    pub pair: (usize, usize),
    /// `true` when `T` must split the pair.
    pub parity: bool,
    pub witness: TwoFace,
}

impl ParityConstraint {
    pub fn is_satisfied_by(&self, t: Subset) -> bool {
        (t.contains(self.pair.0) ^ t.contains(self.pair.1)) == self.parity
    }
}

pub fn face_constraint<O: Oracle + ?Sized>(g: &O, face: TwoFace) -> Option<ParityConstraint> {
    let parity = match sign(&phi_face(g, face)) {
        Ordering::Equal => return None,
        Ordering::Less => true,
        Ordering::Greater => false,
    };
    Some(ParityConstraint {
        pair: face.pair(),
        parity,
        witness: face,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Conflict {
    /// Two faces on the same pair demand opposite parities.
    SamePair {
        first: ParityConstraint,
        second: ParityConstraint,
    },
    /// A constraint contradicts the parity forced by a chain of others.
    Cycle {
        closing: ParityConstraint,
        path: Vec<ParityConstraint>,
    },
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SystemStatus {
    Feasible,
    Infeasible(Conflict),
}

/// The reduced parity system: at most one constraint per pair.
#[derive(Clone, Debug)]
pub struct ParitySystem {
    ground: GroundSet,
    constraints: Vec<ParityConstraint>,
    status: SystemStatus,
}

impl ParitySystem {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// One constraint per constrained pair, sorted by pair; each carries the
    /// first witness face in canonical face order.
    pub fn constraints(&self) -> &[ParityConstraint] {
        &self.constraints
    }

    pub fn status(&self) -> &SystemStatus {
        &self.status
    }

    pub fn is_feasible(&self) -> bool {
        self.status == SystemStatus::Feasible
    }

    pub fn is_satisfied_by(&self, t: Subset) -> bool {
        self.is_feasible() && self.constraints.iter().all(|c| c.is_satisfied_by(t))
    }

    pub fn solve(&self) -> Option<SolutionFamily> {
        if !self.is_feasible() {
            return None;
        }
        let n = self.ground.len();
        let mut uf = ParityUnionFind::new(n);
        for c in &self.constraints {
            uf.union(c.pair.0, c.pair.1, c.parity)
                .expect("feasible system has no conflict");
        }
        let blocks = group_by_root(&mut uf);
        let mut representative = Subset::EMPTY;
        for &block in &blocks {
            let anchor = block.min_element().expect("blocks are nonempty");
            for i in block.elements() {
                if uf.relation(anchor, i) == Some(true) {
                    representative = representative.with(i);
                }
            }
        }
        Some(SolutionFamily {
            ground: self.ground.clone(),
            blocks,
            representative,
        })
    }
}

pub fn build_parity_system<O: Oracle + ?Sized>(g: &O) -> ParitySystem {
    let ground = g.ground().clone();
    let n = ground.len();
    let mut per_pair: Vec<Option<ParityConstraint>> = vec![None; n * n];
    let mut clash = None;
    for face in enumerate_faces(&ground) {
        let Some(c) = face_constraint(g, face) else {
            continue;
        };
        let slot = &mut per_pair[c.pair.0 * n + c.pair.1];
        match slot {
            None => *slot = Some(c),
            Some(first) if first.parity != c.parity => {
                clash = Some(Conflict::SamePair {
                    first: *first,
                    second: c,
                });
                break;
            }
            Some(_) => {}
        }
    }
    let mut constraints: Vec<ParityConstraint> = per_pair.into_iter().flatten().collect();
    constraints.sort_by_key(|c| c.pair);
    let status = match clash.or_else(|| find_cycle_conflict(n, &constraints)) {
        Some(conflict) => SystemStatus::Infeasible(conflict),
        None => SystemStatus::Feasible,
    };
    ParitySystem {
        ground,
        constraints,
        status,
    }
}

fn find_cycle_conflict(n: usize, constraints: &[ParityConstraint]) -> Option<Conflict> {
    let mut uf = ParityUnionFind::new(n);
    let mut accepted: Vec<ParityConstraint> = Vec::new();
    for c in constraints {
        match uf.union(c.pair.0, c.pair.1, c.parity) {
            Ok(_) => accepted.push(*c),
            Err(_) => {
                let path = tree_path(n, &accepted, c.pair.0, c.pair.1);
                return Some(Conflict::Cycle { closing: *c, path });
            }
        }
    }
    None
}

// Breadth-first path from `from` to `to` over accepted constraints.
fn tree_path(
    n: usize,
    accepted: &[ParityConstraint],
    from: usize,
    to: usize,
) -> Vec<ParityConstraint> {
    let mut adjacency: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, c) in accepted.iter().enumerate() {
        adjacency[c.pair.0].push((c.pair.1, k));
        adjacency[c.pair.1].push((c.pair.0, k));
    }
    let mut via: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::from([from]);
    seen[from] = true;
    while let Some(x) = queue.pop_front() {
        if x == to {
            break;
        }
        for &(y, k) in &adjacency[x] {
            if !seen[y] {
                seen[y] = true;
                via[y] = Some((x, k));
                queue.push_back(y);
            }
        }
    }
    let mut path = Vec::new();
    let mut cur = to;
    while let Some((prev, k)) = via[cur] {
        path.push(accepted[k]);
        cur = prev;
    }
    path.reverse();
    path
}

/// Largest solution family `SolutionFamily::solutions` will enumerate.
pub const SOLUTION_ENUMERATION_CAP: usize = 20;

/// All canonical sets: within each block the membership pattern is fixed up
/// to flipping the whole block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionFamily {
    ground: GroundSet,
    blocks: Vec<Subset>,
    representative: Subset,
}

impl SolutionFamily {
    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    /// Blocks ordered by lowest element.
    pub fn blocks(&self) -> &[Subset] {
        &self.blocks
    }

    /// The solution leaving every block's lowest element outside `T`.
    pub fn representative(&self) -> Subset {
        self.representative
    }

    /// `log2` of the number of solutions.
    pub fn free_bits(&self) -> usize {
        self.blocks.len()
    }

    pub fn contains(&self, t: Subset) -> bool {
        self.blocks.iter().all(|&b| {
            let here = t & b;
            let rep = self.representative & b;
            here == rep || here == b - rep
        })
    }

    pub fn solutions(&self) -> Result<CanonicalFamily> {
        CanonicalFamily::with_cap(
            self.blocks.clone(),
            self.representative,
            SOLUTION_ENUMERATION_CAP,
        )
    }
}

/// Every `T` with `g∘σ_T` submodular, or `None` if there is none.
pub fn solve_canonical<O: Oracle + ?Sized>(g: &O) -> Option<SolutionFamily> {
    build_parity_system(g).solve()
}

/// Linear-query canonical set for an SD-transform of a strictly submodular
/// function, anchored at element 0. Queries exactly `g(∅)`, `g({u*})` and
/// `g({v})`, `g({u*,v})` for each other `v`: `2n` distinct subsets.
pub fn strict_canonical<O: Oracle + ?Sized>(g: &O) -> Result<Subset> {
    strict_canonical_anchored(g, 0)
}

pub fn strict_canonical_anchored<O: Oracle + ?Sized>(g: &O, anchor: usize) -> Result<Subset> {
    let n = g.ground().len();
    if anchor >= n {
        return Err(Error::Domain(format!(
            "anchor {anchor} outside a ground set of size {n}"
        )));
    }
    let empty = g.value(Subset::EMPTY);
    let at_anchor = g.value(Subset::singleton(anchor));
    let mut t = Subset::EMPTY;
    for v in (0..n).filter(|&v| v != anchor) {
        let single = g.value(Subset::singleton(v));
        let both = g.value(Subset::pair(anchor, v));
        let slack = &at_anchor + single - both - &empty;
        match sign(&slack) {
            Ordering::Less => t = t.with(v),
            Ordering::Greater => {}
            Ordering::Equal => {
                return Err(Error::ZeroSlack(TwoFace::new(Subset::EMPTY, anchor, v)?));
            }
        }
    }
    Ok(t)
}

/// Brute-force replay: does `g∘σ_T` pass the full 2-face scan?
pub fn verify_canonical<O: Oracle + ?Sized>(g: &O, t: Subset) -> bool {
    is_submodular(&sd_view(g, t)).is_yes()
}
