//! Brute-force oracles that work on raw value tables and share no code
//! with the library beyond the generators used to build inputs.
#![allow(dead_code)]

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sdmod_core::value::int;
use sdmod_core::zoo;
use sdmod_core::{sd_transform, GroundSet, Rational, SetFunction, Subset};

pub type Table = Vec<Rational>;

pub fn table(f: &SetFunction) -> Table {
    f.values().to_vec()
}

pub fn n_of(t: &Table) -> usize {
    t.len().trailing_zeros() as usize
}

/// `f(A) + f(B) − f(A∪B) − f(A∩B)` for every ordered pair of subsets.
pub fn all_pairs_slacks(t: &Table) -> impl Iterator<Item = Rational> + '_ {
    let m = t.len() as u32;
    (0..m).flat_map(move |a| {
        (0..m).map(move |b| {
            &t[a as usize] + &t[b as usize] - &t[(a | b) as usize] - &t[(a & b) as usize]
        })
    })
}

pub fn brute_submodular(t: &Table) -> bool {
    all_pairs_slacks(t).all(|s| s >= Rational::zero())
}

pub fn brute_modular(t: &Table) -> bool {
    all_pairs_slacks(t).all(|s| s.is_zero())
}

/// Strict: positive slack whenever neither set contains the other.
pub fn brute_strict(t: &Table) -> bool {
    let m = t.len() as u32;
    (0..m).all(|a| {
        (0..m).all(|b| {
            if a & !b == 0 || b & !a == 0 {
                return true;
            }
            &t[a as usize] + &t[b as usize] - &t[(a | b) as usize] - &t[(a & b) as usize]
                > Rational::zero()
        })
    })
}

pub fn brute_transform(t: &Table, s: u32) -> Table {
    (0..t.len() as u32)
        .map(|x| t[(x ^ s) as usize].clone())
        .collect()
}

/// Does some set avoiding `u` and `v` have nonzero slack on `{u, v}`?
pub fn brute_edge(t: &Table, u: usize, v: usize) -> bool {
    let (bu, bv) = (1u32 << u, 1u32 << v);
    (0..t.len() as u32).filter(|x| x & (bu | bv) == 0).any(|x| {
        let s = &t[(x | bu) as usize] + &t[(x | bv) as usize]
            - &t[(x | bu | bv) as usize]
            - &t[x as usize];
        !s.is_zero()
    })
}

/// Components by depth-first search, each as a bitmask, sorted by lowest element.
pub fn brute_components(t: &Table) -> Vec<u32> {
    let n = n_of(t);
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut mask = 0u32;
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(u) = stack.pop() {
            mask |= 1 << u;
            for (v, seen_v) in seen.iter_mut().enumerate() {
                if !*seen_v && brute_edge(t, u.min(v), u.max(v)) {
                    *seen_v = true;
                    stack.push(v);
                }
            }
        }
        out.push(mask);
    }
    out
}

pub fn is_union_of(parts: &[u32], s: u32) -> bool {
    parts.iter().all(|&p| s & p == 0 || s & p == p)
}

/// Every `T` for which the transformed table passes the all-pairs test.
pub fn brute_solutions(t: &Table) -> Vec<u32> {
    (0..t.len() as u32)
        .filter(|&s| brute_submodular(&brute_transform(t, s)))
        .collect()
}

/// Lovász extension by thresholding: `f(∅) + ∫_0^1 (f({x ≥ θ}) − f(∅)) dθ`
/// for points in `[0,1]^n`.
pub fn brute_lovasz(t: &Table, x: &[Rational]) -> Rational {
    let mut cuts: Vec<Rational> = x.to_vec();
    cuts.push(int(0));
    cuts.push(int(1));
    cuts.sort();
    cuts.dedup();
    let base = t[0].clone();
    let mut total = base.clone();
    for w in cuts.windows(2) {
        let (lo, hi) = (&w[0], &w[1]);
        // level set for θ in (lo, hi]
        let level = x
            .iter()
            .enumerate()
            .filter(|(_, xi)| *xi >= hi)
            .fold(0u32, |m, (i, _)| m | 1 << i);
        total += (hi - lo) * (&t[level as usize] - &base);
    }
    total
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_partition(rng: &mut ChaCha8Rng, n: usize) -> Vec<Subset> {
    let k = rng.gen_range(1..=n);
    let mut labels: Vec<usize> = (0..n)
        .map(|i| if i < k { i } else { rng.gen_range(0..k) })
        .collect();
    labels.shuffle(rng);
    let mut parts = vec![Subset::EMPTY; k];
    for (i, &l) in labels.iter().enumerate() {
        parts[l] = parts[l].with(i);
    }
    parts.sort_by_key(|p| p.min_element());
    parts
}

pub fn random_table(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Table {
    (0..1usize << n)
        .map(|_| int(rng.gen_range(-range..=range)))
        .collect()
}

/// Zoo members on `n` elements. Covers submodular, strictly submodular,
/// modular and several non-submodular families, plus transforms of
/// submodular members and random tables.
pub fn zoo(n: usize, seed: u64) -> Vec<SetFunction> {
    let ground = GroundSet::numbered(n).unwrap();
    let mut r = rng(seed ^ n as u64);
    let mut out = Vec::new();
    if n == 3 {
        out.push(zoo::not_clique());
        out.push(zoo::figure1_like());
        out.push(zoo::no_canonical());
    }
    for _ in 0..3 {
        let parts = random_partition(&mut r, n);
        out.push(zoo::partition_distance(&ground, &parts).unwrap());
        out.push(zoo::block_quadratic(&ground, &parts).unwrap());
    }
    let singles: Vec<Subset> = (0..n).map(Subset::singleton).collect();
    out.push(zoo::partition_distance(&ground, &singles).unwrap());
    out.push(zoo::part_min(&ground, ground.full()).unwrap());
    let u = Subset::full(n / 2 + 1);
    out.push(zoo::part_min(&ground, u).unwrap());
    for x in Subset::all(n) {
        out.push(zoo::min_dip(&ground, x));
    }
    let weights: Vec<Rational> = (0..n)
        .map(|_| Rational::new(r.gen_range(-5..=5).into(), r.gen_range(1..=3).into()))
        .collect();
    out.push(zoo::modular(&ground, &weights, int(r.gen_range(-3..=3))).unwrap());
    if n >= 2 {
        out.push(zoo::quadratic_strict(&ground).unwrap());
    }
    let mut edges = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if r.gen_bool(0.5) {
                edges.push((a, b, int(r.gen_range(0..=3))));
            }
        }
    }
    out.push(zoo::cut(&ground, &edges).unwrap());

    let submodular: Vec<SetFunction> = out
        .iter()
        .filter(|f| brute_submodular(&table(f)))
        .cloned()
        .collect();
    for f in submodular.iter().take(4) {
        let s = Subset(r.gen_range(0..1u32 << n));
        out.push(sd_transform(f, s));
    }
    for _ in 0..3 {
        let t = random_table(&mut r, n, 3);
        out.push(
            SetFunction::from_values(ground.clone(), t)
                .unwrap()
                .with_provenance("random"),
        );
    }
    out
}
