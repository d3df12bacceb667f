//! Symmetric-difference maps `X ↦ X △ S`, the transformed functions
//! `f∘σ_S`, the induced map on 2-faces and element relabeling.

use crate::error::{Error, Result};
use crate::setfn::{Corner, GroundSet, Oracle, SetFunction, Subset, TwoFace};
use crate::Rational;

/// The involution `σ_S`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct SdMap {
    canon: Subset,
}

impl SdMap {
    pub fn new(canon: Subset) -> Self {
        SdMap { canon }
    }

    pub fn canon(self) -> Subset {
        self.canon
    }

    pub fn apply(self, x: Subset) -> Subset {
        x ^ self.canon
    }

    /// `σ_S ∘ σ_T = σ_{S△T}`.
    pub fn then(self, other: SdMap) -> SdMap {
        SdMap::new(self.canon ^ other.canon)
    }

    pub fn apply_face(self, face: TwoFace) -> TwoFace {
        face_sd_map(self.canon, face)
    }
}

pub fn sd_map(s: Subset, x: Subset) -> Subset {
    x ^ s
}

/// `g(X) = f(X △ S)` as a fresh table.
pub fn sd_transform(f: &SetFunction, s: Subset) -> SetFunction {
    let label = if f.provenance().is_empty() {
        format!("sd_transform(S={s})")
    } else {
        format!("{}∘σ{s}", f.provenance())
    };
    SetFunction::tabulate(f.ground().clone(), |x| f.get(x ^ s).clone()).with_provenance(label)
}

/// Lazy `O∘σ_S`; every query is forwarded to the wrapped oracle.
#[derive(Debug, Clone)]
pub struct SdView<O> {
    inner: O,
    shift: Subset,
}

impl<O: Oracle> SdView<O> {
    pub fn new(inner: O, shift: Subset) -> Self {
        SdView { inner, shift }
    }

    pub fn shift(&self) -> Subset {
        self.shift
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }
}

impl<O: Oracle> Oracle for SdView<O> {
    fn ground(&self) -> &GroundSet {
        self.inner.ground()
    }

    fn value(&self, set: Subset) -> Rational {
        self.inner.value(set ^ self.shift)
    }
}

pub fn sd_view<O: Oracle>(inner: O, s: Subset) -> SdView<O> {
    SdView::new(inner, s)
}

/// `σ̌_S(X, {u,v}) = ((X △ S) ∖ {u,v}, {u,v})`.
pub fn face_sd_map(s: Subset, face: TwoFace) -> TwoFace {
    let (u, v) = face.pair();
    let base = (face.base() ^ s) - face.pair_set();
    TwoFace::new_unchecked(base, u, v)
}

/// For each corner of `face` (in `Corner::ALL` order), the corner of
/// `σ̌_S(face)` that its `σ_S`-image lands on.
pub fn corner_correspondence(s: Subset, face: TwoFace) -> [Corner; 4] {
    let (u, v) = face.pair();
    let flip_u = s.contains(u);
    let flip_v = s.contains(v);
    Corner::ALL.map(|c| {
        let (has_u, has_v) = match c {
            Corner::Base => (false, false),
            Corner::U => (true, false),
            Corner::V => (false, true),
            Corner::Top => (true, true),
        };
        match (has_u ^ flip_u, has_v ^ flip_v) {
            (false, false) => Corner::Base,
            (true, false) => Corner::U,
            (false, true) => Corner::V,
            (true, true) => Corner::Top,
        }
    })
}

/// `g(π(X)) = f(X)`, where bit `i` moves to bit `perm[i]`.
pub fn relabel(f: &SetFunction, perm: &[usize]) -> Result<SetFunction> {
    let n = f.n();
    if perm.len() != n {
        return Err(Error::NotAPermutation(n));
    }
    let mut inverse = vec![usize::MAX; n];
    for (i, &p) in perm.iter().enumerate() {
        if p >= n || inverse[p] != usize::MAX {
            return Err(Error::NotAPermutation(n));
        }
        inverse[p] = i;
    }
    let pull = |x: Subset| Subset::from_elements(x.elements().map(|j| inverse[j]));
    let label = format!("relabel({perm:?})");
    Ok(
        SetFunction::tabulate(f.ground().clone(), |x| f.get(pull(x)).clone())
            .with_provenance(label),
    )
}
