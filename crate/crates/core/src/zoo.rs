//! Constructors for the example families and test fixtures.
//!
//! Every generator labels its output with its kind and parameters.

use std::fmt::Write as _;

use crate::canonical::{build_parity_system, verify_canonical, Conflict, SystemStatus};
use crate::classify::is_submodular;
use crate::error::{Error, Result};
use crate::setfn::{enumerate_faces, GroundSet, SetFunction, Subset};
use crate::structure::boolean_row;
use crate::value::{format_rational, half, int};
use crate::Rational;

fn label_sets(ground: &GroundSet, sets: &[Subset]) -> String {
    let mut s = String::from("[");
    for (k, part) in sets.iter().enumerate() {
        if k > 0 {
            s.push(';');
        }
        let _ = write!(s, "{}", ground.format_subset(*part));
    }
    s.push(']');
    s
}

/// `f(∅) = 0`, `f({1,3}) = 2`, and `1` elsewhere, on `V = {1,2,3}`.
/// Submodular, with a connected inequality graph that is not a clique.
pub fn not_clique() -> SetFunction {
    let ground = GroundSet::numbered(3).expect("three names");
    let one_three = Subset::from_elements([0, 2]);
    SetFunction::tabulate(ground, |x| {
        if x.is_empty() {
            int(0)
        } else if x == one_three {
            int(2)
        } else {
            int(1)
        }
    })
    .with_provenance("not_clique")
}

fn check_partition(ground: &GroundSet, parts: &[Subset]) -> Result<()> {
    let mut seen = Subset::EMPTY;
    for &p in parts {
        ground
            .check(p)
            .map_err(|_| Error::InvalidPartition(format!("part {p} leaves the ground set")))?;
        if p.is_empty() {
            return Err(Error::InvalidPartition("empty part".into()));
        }
        if !p.is_disjoint(seen) {
            return Err(Error::InvalidPartition(format!(
                "part {p} overlaps an earlier part"
            )));
        }
        seen = seen | p;
    }
    if seen != ground.full() {
        return Err(Error::InvalidPartition(format!(
            "parts miss {}",
            ground.full() - seen
        )));
    }
    Ok(())
}

/// Distance to the nearest union of parts:
/// `f(X) = Σ_i min{|X ∩ U_i|, |U_i ∖ X|}`.
pub fn partition_distance(ground: &GroundSet, parts: &[Subset]) -> Result<SetFunction> {
    check_partition(ground, parts)?;
    let label = format!("partition_distance(parts={})", label_sets(ground, parts));
    Ok(SetFunction::tabulate(ground.clone(), |x| {
        let d: usize = parts
            .iter()
            .map(|&p| (x & p).len().min((p - x).len()))
            .sum();
        int(d as i64)
    })
    .with_provenance(label))
}

/// `h_U(X) = min{|X ∩ U|, |U ∖ X|}`.
pub fn part_min(ground: &GroundSet, u: Subset) -> Result<SetFunction> {
    ground.check(u)?;
    if u.is_empty() {
        return Err(Error::Domain("part_min needs U ≠ ∅".into()));
    }
    let label = format!("part_min(U={{{}}})", ground.format_subset(u));
    Ok(SetFunction::tabulate(ground.clone(), |x| {
        int((x & u).len().min((u - x).len()) as i64)
    })
    .with_provenance(label))
}

/// `g_U(X) = |X| − ½·[X = U]`. Any `U` is accepted; canonical sets are
/// `U` and `V∖U`.
pub fn min_dip(ground: &GroundSet, u: Subset) -> SetFunction {
    let label = format!("min_dip(U={{{}}})", ground.format_subset(u));
    SetFunction::tabulate(ground.clone(), |x| {
        let card = int(x.len() as i64);
        if x == u {
            card - half()
        } else {
            card
        }
    })
    .with_provenance(label)
}

/// `f(X) = offset + Σ_{i∈X} weights[i]`.
pub fn modular(ground: &GroundSet, weights: &[Rational], offset: Rational) -> Result<SetFunction> {
    if weights.len() != ground.len() {
        return Err(Error::WrongLength {
            expected: ground.len(),
            found: weights.len(),
        });
    }
    let label = format!(
        "modular(weights=[{}], offset={})",
        weights
            .iter()
            .map(format_rational)
            .collect::<Vec<_>>()
            .join(","),
        format_rational(&offset)
    );
    Ok(SetFunction::tabulate(ground.clone(), |x| {
        x.elements()
            .fold(offset.clone(), |acc, i| acc + &weights[i])
    })
    .with_provenance(label))
}

/// `f(X) = −|X|²`; every face has slack exactly 2.
pub fn quadratic_strict(ground: &GroundSet) -> Result<SetFunction> {
    if ground.len() < 2 {
        return Err(Error::Domain("quadratic_strict needs n ≥ 2".into()));
    }
    Ok(SetFunction::tabulate(ground.clone(), |x| {
        let k = x.len() as i64;
        int(-k * k)
    })
    .with_provenance("quadratic_strict"))
}

/// `f(X) = −Σ_i |X ∩ U_i|²`: strictly submodular inside each part and
/// additive across parts.
pub fn block_quadratic(ground: &GroundSet, parts: &[Subset]) -> Result<SetFunction> {
    check_partition(ground, parts)?;
    let label = format!("block_quadratic(parts={})", label_sets(ground, parts));
    Ok(SetFunction::tabulate(ground.clone(), |x| {
        let total: i64 = parts
            .iter()
            .map(|&p| (x & p).len() as i64)
            .map(|k| k * k)
            .sum();
        int(-total)
    })
    .with_provenance(label))
}

/// Weighted cut function of an undirected graph.
pub fn cut(ground: &GroundSet, edges: &[(usize, usize, Rational)]) -> Result<SetFunction> {
    let n = ground.len();
    for (u, v, w) in edges {
        if u == v {
            return Err(Error::Domain(format!(
                "self-loop at element {}",
                ground.name(*u)
            )));
        }
        if *u >= n || *v >= n {
            return Err(Error::Domain(format!(
                "edge ({u},{v}) leaves the ground set"
            )));
        }
        if *w < int(0) {
            return Err(Error::Domain("cut weights must be nonnegative".into()));
        }
    }
    let label = format!(
        "cut(edges=[{}])",
        edges
            .iter()
            .map(|(u, v, w)| format!(
                "{}-{}:{}",
                ground.name(*u),
                ground.name(*v),
                format_rational(w)
            ))
            .collect::<Vec<_>>()
            .join(",")
    );
    Ok(SetFunction::tabulate(ground.clone(), |x| {
        edges
            .iter()
            .filter(|(u, v, _)| x.contains(*u) != x.contains(*v))
            .fold(int(0), |acc, (_, _, w)| acc + w)
    })
    .with_provenance(label))
}

// Frozen outputs of `search_figure1_like` and `search_no_canonical`,
// indexed by bitmask over V = {1,2,3}.
const FIGURE1_TABLE: [i64; 8] = [0, 0, 0, 0, 1, 0, 1, 0];
const NO_CANONICAL_TABLE: [i64; 8] = [0, 0, 0, 0, 0, 1, 1, 0];

fn from_table(table: &[i64; 8], label: &str) -> SetFunction {
    let ground = GroundSet::numbered(3).expect("three names");
    SetFunction::from_values(ground, table.iter().map(|&v| int(v)).collect())
        .expect("eight values")
        .with_provenance(label)
}

/// A submodular function on `{1,2,3}` whose only nonzero face slacks are
/// at `(∅,{1,3})` and `({2},{1,3})`, so `G_f` has the single edge `{1,3}`.
pub fn figure1_like() -> SetFunction {
    from_table(&FIGURE1_TABLE, "figure1_like")
}

/// A function on `{1,2,3}` none of whose SD-transforms is submodular: two
/// faces on one pair demand opposite parities.
pub fn no_canonical() -> SetFunction {
    from_table(&NO_CANONICAL_TABLE, "no_canonical")
}

// Tables with values in 0..=2, in lexicographic order of (f(∅), f({1}), ...).
fn small_tables() -> impl Iterator<Item = [i64; 8]> {
    (0..3u32.pow(8)).map(|mut code| {
        let mut t = [0i64; 8];
        for slot in t.iter_mut().rev() {
            *slot = i64::from(code % 3);
            code /= 3;
        }
        t
    })
}

/// First small table matching the `figure1_like` structure.
pub fn search_figure1_like() -> Option<[i64; 8]> {
    small_tables().find(|t| {
        let f = from_table(t, "candidate");
        is_submodular(&f).is_yes()
            && enumerate_faces(f.ground()).all(|p| {
                let wanted = p.pair() == (0, 2);
                boolean_row(&f, p).support.is_some() == wanted
            })
    })
}

/// First small table whose parity system has a same-pair clash and whose
/// eight SD-transforms all fail the submodularity scan.
pub fn search_no_canonical() -> Option<[i64; 8]> {
    small_tables().find(|t| {
        let f = from_table(t, "candidate");
        matches!(
            build_parity_system(&f).status(),
            SystemStatus::Infeasible(Conflict::SamePair { .. })
        ) && Subset::all(3).all(|s| !verify_canonical(&f, s))
    })
}

/// Declarative description of a generator call.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    NotClique,
    PartitionDistance {
        ground: GroundSet,
        parts: Vec<Subset>,
    },
    PartMin {
        ground: GroundSet,
        dip: Subset,
    },
    MinDip {
        ground: GroundSet,
        dip: Subset,
    },
    Modular {
        ground: GroundSet,
        weights: Vec<Rational>,
        offset: Rational,
    },
    QuadraticStrict {
        ground: GroundSet,
    },
    BlockQuadratic {
        ground: GroundSet,
        parts: Vec<Subset>,
    },
    Cut {
        ground: GroundSet,
        edges: Vec<(usize, usize, Rational)>,
    },
    Figure1Like,
    NoCanonical,
}

impl GeneratorSpec {
    pub fn generate(&self) -> Result<SetFunction> {
        match self {
            GeneratorSpec::NotClique => Ok(not_clique()),
            GeneratorSpec::PartitionDistance { ground, parts } => partition_distance(ground, parts),
            GeneratorSpec::PartMin { ground, dip } => part_min(ground, *dip),
            GeneratorSpec::MinDip { ground, dip } => {
                ground.check(*dip)?;
                Ok(min_dip(ground, *dip))
            }
            GeneratorSpec::Modular {
                ground,
                weights,
                offset,
            } => modular(ground, weights, offset.clone()),
            GeneratorSpec::QuadraticStrict { ground } => quadratic_strict(ground),
            GeneratorSpec::BlockQuadratic { ground, parts } => block_quadratic(ground, parts),
            GeneratorSpec::Cut { ground, edges } => cut(ground, edges),
            GeneratorSpec::Figure1Like => Ok(figure1_like()),
            GeneratorSpec::NoCanonical => Ok(no_canonical()),
        }
    }
}
