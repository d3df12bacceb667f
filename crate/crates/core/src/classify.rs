//! Class membership via the 2-face criterion, and the Lovász extension.
//!
//! Every classifier scans faces in canonical order and stops at the first
//! face violating the class condition, so the reported witness is the
//! lexicographically first one.

use std::cmp::Ordering;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::setfn::{enumerate_faces, phi_face, Oracle, Subset, TwoFace};
use crate::value::sign;
use crate::Rational;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FunctionClass {
    Submodular,
    StrictlySubmodular,
    Modular,
}

impl FunctionClass {
    /// Whether a single face slack is admissible for the class.
    pub fn admits(self, slack: &Rational) -> bool {
        let s = sign(slack);
        match self {
            FunctionClass::Submodular => s != Ordering::Less,
            FunctionClass::StrictlySubmodular => s == Ordering::Greater,
            FunctionClass::Modular => s == Ordering::Equal,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FaceWitness {
    pub face: TwoFace,
    pub slack: Rational,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassCertificate {
    pub class: FunctionClass,
    pub verdict: Verdict,
    /// Present exactly when the verdict is `No`.
    pub witness: Option<FaceWitness>,
}

impl ClassCertificate {
    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }
}

pub fn certify<O: Oracle + ?Sized>(f: &O, class: FunctionClass) -> ClassCertificate {
    let witness = enumerate_faces(f.ground()).find_map(|face| {
        let slack = phi_face(f, face);
        (!class.admits(&slack)).then_some(FaceWitness { face, slack })
    });
    ClassCertificate {
        class,
        verdict: if witness.is_some() {
            Verdict::No
        } else {
            Verdict::Yes
        },
        witness,
    }
}

pub fn is_submodular<O: Oracle + ?Sized>(f: &O) -> ClassCertificate {
    certify(f, FunctionClass::Submodular)
}

/// A single-element ground set has no faces and so is vacuously strict.
pub fn is_strictly_submodular<O: Oracle + ?Sized>(f: &O) -> ClassCertificate {
    certify(f, FunctionClass::StrictlySubmodular)
}

pub fn is_modular<O: Oracle + ?Sized>(f: &O) -> ClassCertificate {
    certify(f, FunctionClass::Modular)
}

/// Returns an error naming the first negative face unless `f` is submodular.
pub fn require_submodular<O: Oracle + ?Sized>(f: &O) -> Result<()> {
    match is_submodular(f).witness {
        None => Ok(()),
        Some(FaceWitness { face, slack }) => Err(Error::NotSubmodular { face, slack }),
    }
}

/// `f̂(x) = f(∅) + Σ_i x(v_i)·(f(P_i) − f(P_{i−1}))` with coordinates sorted
/// in descending order and ties broken by ascending element index.
pub fn lovasz_extension<O: Oracle + ?Sized>(f: &O, x: &[Rational]) -> Result<Rational> {
    let n = f.ground().len();
    if x.len() != n {
        return Err(Error::WrongLength {
            expected: n,
            found: x.len(),
        });
    }
    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps ascending index among ties
    order.sort_by(|&a, &b| x[b].cmp(&x[a]));
    let mut prefix = Subset::EMPTY;
    let mut prev = f.value(prefix);
    let mut total = prev.clone();
    for i in order {
        prefix = prefix.with(i);
        let cur = f.value(prefix);
        if !x[i].is_zero() {
            total += &x[i] * (&cur - &prev);
        }
        prev = cur;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setfn::GroundSet;
    use crate::value::{frac, half, int};
    use crate::zoo;

    fn face(base: &[usize], u: usize, v: usize) -> TwoFace {
        TwoFace::new(Subset::from_elements(base.iter().copied()), u, v).unwrap()
    }

    #[test]
    fn not_clique_classes() {
        let f = zoo::not_clique();
        assert!(is_submodular(&f).is_yes());
        let strict = is_strictly_submodular(&f);
        assert_eq!(strict.verdict, Verdict::No);
        assert_eq!(
            strict.witness,
            Some(FaceWitness {
                face: face(&[], 0, 2),
                slack: int(0)
            })
        );
        assert_eq!(is_modular(&f).verdict, Verdict::No);
    }

    #[test]
    fn min_dip_is_not_submodular() {
        let g = GroundSet::numbered(3).unwrap();
        let f = zoo::min_dip(&g, Subset::from_elements([0, 1]));
        let cert = is_submodular(&f);
        assert_eq!(cert.verdict, Verdict::No);
        assert_eq!(
            cert.witness,
            Some(FaceWitness {
                face: face(&[0], 1, 2),
                slack: frac(-1, 2)
            })
        );
        assert!(matches!(
            require_submodular(&f),
            Err(Error::NotSubmodular { .. })
        ));
    }

    #[test]
    fn quadratic_is_strict() {
        let f = zoo::quadratic_strict(&GroundSet::numbered(5).unwrap()).unwrap();
        assert!(is_strictly_submodular(&f).is_yes());
        for p in enumerate_faces(f.ground()) {
            assert_eq!(phi_face(&f, p), int(2));
        }
    }

    #[test]
    fn modular_classes() {
        let g = GroundSet::numbered(4).unwrap();
        let w = [frac(1, 3), int(-2), int(0), frac(7, 2)];
        let f = zoo::modular(&g, &w, frac(5, 4)).unwrap();
        assert!(is_modular(&f).is_yes());
        assert!(is_submodular(&f).is_yes());
        assert_eq!(is_strictly_submodular(&f).verdict, Verdict::No);
        let card = zoo::modular(&g, &[int(1), int(1), int(1), int(1)], int(0)).unwrap();
        assert!(is_modular(&card).is_yes());
    }

    #[test]
    fn single_element_ground_set() {
        let g = GroundSet::numbered(1).unwrap();
        let f = crate::setfn::SetFunction::from_values(g, vec![int(0), int(5)]).unwrap();
        assert!(is_submodular(&f).is_yes());
        assert!(is_modular(&f).is_yes());
    }

    #[test]
    fn lovasz_examples() {
        let f = zoo::not_clique();
        for x in Subset::all(3) {
            let point: Vec<Rational> = (0..3)
                .map(|i| if x.contains(i) { int(1) } else { int(0) })
                .collect();
            assert_eq!(lovasz_extension(&f, &point).unwrap(), *f.get(x));
        }
        assert_eq!(
            lovasz_extension(&f, &[int(0), int(0), int(0)]).unwrap(),
            int(0)
        );
        // midpoint of χ_{X∪{u}} and χ_{X∪{v}} for X = {1}, pair {2,3}
        let mid = [int(1), half(), half()];
        let expected = (f.get(Subset::singleton(0)) + f.get(Subset::full(3))) * half();
        assert_eq!(lovasz_extension(&f, &mid).unwrap(), expected);
        assert!(lovasz_extension(&f, &[int(1)]).is_err());
    }

    #[test]
    fn lovasz_tie_breaking_is_by_index() {
        // f(X) = 1 iff X = {1}: non-submodular, so ties matter
        let g = GroundSet::numbered(2).unwrap();
        let f = crate::setfn::SetFunction::from_values(g, vec![int(0), int(1), int(0), int(0)])
            .unwrap();
        // prefix order {1}, {1,2}: 1·(1−0) + 1·(0−1) = 0; value with x=(1,1)
        assert_eq!(lovasz_extension(&f, &[int(1), int(1)]).unwrap(), int(0));
        // x=(1/2,1/2): 1/2·1 + 1/2·(−1) = 0, and x=(1, 1/2) gives 1 − 1/2
        assert_eq!(lovasz_extension(&f, &[int(1), half()]).unwrap(), half());
        assert_eq!(lovasz_extension(&f, &[half(), int(1)]).unwrap(), int(0));
    }
}
