//! Ground sets, subsets as bitmasks, exact set-function tables, the
//! discrete slacks `Φ` and `Φ̌`, 2-face enumeration and oracle-call
//! accounting.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not, Sub};
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::Rational;

/// Hard ceiling imposed by the `u32` bitmask representation.
pub const MAX_ELEMENTS: usize = 31;

/// Default ceiling for dense tables; `GroundSet::with_limit` overrides it.
pub const DEFAULT_SIZE_LIMIT: usize = 20;

/// A subset of the ground set; bit `i` stands for element `i`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn pair(u: usize, v: usize) -> Self {
        Subset((1 << u) | (1 << v))
    }

    /// The full set on `n` elements.
    pub fn full(n: usize) -> Self {
        if n >= 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Self {
        elements.into_iter().fold(Subset::EMPTY, |s, i| s.with(i))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Subset(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    pub fn complement_in(self, n: usize) -> Self {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }

    /// Lowest element, if any.
    pub fn min_element(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// All subsets of `self` in ascending mask order.
    pub fn submasks(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            let succ = (cur | !mask).wrapping_add(1) & mask;
            next = (succ != 0).then_some(succ);
            Some(Subset(cur))
        })
    }

    /// Every subset of an `n`-element ground set, ascending.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0..=Subset::full(n).0).map(Subset)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.elements().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl BitXor for Subset {
    type Output = Subset;
    fn bitxor(self, rhs: Subset) -> Subset {
        Subset(self.0 ^ rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

/// The finite ground set `V`: ordered, distinct, nonempty element names.
#[derive(Clone, PartialEq, Eq)]
pub struct GroundSet {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_limit(names, DEFAULT_SIZE_LIMIT)
    }

    pub fn with_limit<I, S>(names: I, limit: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let limit = limit.min(MAX_ELEMENTS);
        if names.is_empty() {
            return Err(Error::InvalidGroundSet("no elements".into()));
        }
        if names.len() > limit {
            return Err(Error::TooLarge {
                n: names.len(),
                limit,
            });
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidGroundSet(format!(
                    "element {i} has an empty name"
                )));
            }
            if name.contains(',') {
                return Err(Error::InvalidGroundSet(format!(
                    "element name `{name}` contains a comma"
                )));
            }
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::InvalidGroundSet(format!(
                    "duplicate element `{name}`"
                )));
            }
        }
        Ok(GroundSet { names, index })
    }

    /// Elements named `1`, `2`, ..., `n`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::with_limit((1..=n).map(|i| i.to_string()), MAX_ELEMENTS)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn position(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn full(&self) -> Subset {
        Subset::full(self.len())
    }

    pub fn subset_count(&self) -> usize {
        1usize << self.len()
    }

    pub fn check(&self, set: Subset) -> Result<()> {
        if set.is_subset_of(self.full()) {
            Ok(())
        } else {
            Err(Error::SubsetOutOfRange {
                mask: set.0,
                n: self.len(),
            })
        }
    }

    pub fn complement(&self, set: Subset) -> Subset {
        set.complement_in(self.len())
    }

    /// Parses a comma-joined list of element names; the empty string is `∅`.
    pub fn parse_subset(&self, text: &str) -> Result<Subset> {
        let text = text.trim();
        if text.is_empty() {
            return Ok(Subset::EMPTY);
        }
        text.split(',')
            .map(|name| self.position(name.trim()))
            .try_fold(Subset::EMPTY, |s, i| Ok(s.with(i?)))
    }

    pub fn names_of(&self, set: Subset) -> Vec<String> {
        set.elements().map(|i| self.names[i].clone()).collect()
    }

    /// Comma-joined names in ground order.
    pub fn format_subset(&self, set: Subset) -> String {
        self.names_of(set).join(",")
    }
}

impl fmt::Debug for GroundSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.names).finish()
    }
}

/// Read access to a set function.
pub trait Oracle {
    fn ground(&self) -> &GroundSet;

    /// Value on `set`; `set` must lie inside the ground set.
    fn value(&self, set: Subset) -> Rational;

    fn evaluate(&self, set: Subset) -> Result<Rational> {
        self.ground().check(set)?;
        Ok(self.value(set))
    }
}

impl<O: Oracle + ?Sized> Oracle for &O {
    fn ground(&self) -> &GroundSet {
        (**self).ground()
    }

    fn value(&self, set: Subset) -> Rational {
        (**self).value(set)
    }
}

/// A dense table of exact values, one per subset.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SetFunction {
    ground: GroundSet,
    values: Vec<Rational>,
    provenance: String,
}

impl SetFunction {
    pub fn from_values(ground: GroundSet, values: Vec<Rational>) -> Result<Self> {
        let expected = ground.subset_count();
        if values.len() != expected {
            return Err(Error::WrongLength {
                expected,
                found: values.len(),
            });
        }
        Ok(SetFunction {
            ground,
            values,
            provenance: String::new(),
        })
    }

    pub fn tabulate<F>(ground: GroundSet, mut f: F) -> Self
    where
        F: FnMut(Subset) -> Rational,
    {
        let values = Subset::all(ground.len()).map(&mut f).collect();
        SetFunction {
            ground,
            values,
            provenance: String::new(),
        }
    }

    /// Materializes any oracle into a table.
    pub fn from_oracle<O: Oracle>(oracle: &O) -> Self {
        Self::tabulate(oracle.ground().clone(), |s| oracle.value(s))
    }

    pub fn with_provenance(mut self, label: impl Into<String>) -> Self {
        self.provenance = label.into();
        self
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, set: Subset) -> &Rational {
        &self.values[set.index()]
    }
}

impl Oracle for SetFunction {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn value(&self, set: Subset) -> Rational {
        self.values[set.index()].clone()
    }
}

/// `Φ_f(X, Y) = f(X) + f(Y) − f(X ∪ Y) − f(X ∩ Y)`.
pub fn phi<O: Oracle + ?Sized>(f: &O, x: Subset, y: Subset) -> Rational {
    f.value(x) + f.value(y) - f.value(x | y) - f.value(x & y)
}

/// `Φ̌_f(X, {u,v}) = f(X∪{u}) + f(X∪{v}) − f(X∪{u,v}) − f(X)`.
pub fn phi_face<O: Oracle + ?Sized>(f: &O, face: TwoFace) -> Rational {
    let x = face.base();
    let (u, v) = face.pair();
    f.value(x.with(u)) + f.value(x.with(v)) - f.value(x.with(u).with(v)) - f.value(x)
}

/// Corner of a 2-face `(X, {u,v})`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Corner {
    /// `X`
    Base,
    /// `X ∪ {u}`
    U,
    /// `X ∪ {v}`
    V,
    /// `X ∪ {u,v}`
    Top,
}

impl Corner {
    pub const ALL: [Corner; 4] = [Corner::Base, Corner::U, Corner::V, Corner::Top];
}

/// A 2-face `(X, {u,v})` of the hypercube, stored with `u < v`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TwoFace {
    // field order gives the canonical face order: base, then pair
    base: Subset,
    u: usize,
    v: usize,
}

impl TwoFace {
    pub fn new(base: Subset, u: usize, v: usize) -> Result<Self> {
        if u == v {
            return Err(Error::InvalidFace(format!(
                "pair has a repeated element {u}"
            )));
        }
        let (u, v) = if u < v { (u, v) } else { (v, u) };
        if v >= MAX_ELEMENTS {
            return Err(Error::InvalidFace(format!("element {v} out of range")));
        }
        if base.contains(u) || base.contains(v) {
            return Err(Error::InvalidFace(format!(
                "base {base} meets pair {{{u},{v}}}"
            )));
        }
        Ok(TwoFace { u, v, base })
    }

    pub(crate) fn new_unchecked(base: Subset, u: usize, v: usize) -> Self {
        debug_assert!(u < v && !base.contains(u) && !base.contains(v));
        TwoFace { u, v, base }
    }

    pub fn base(self) -> Subset {
        self.base
    }

    pub fn pair(self) -> (usize, usize) {
        (self.u, self.v)
    }

    pub fn pair_set(self) -> Subset {
        Subset::pair(self.u, self.v)
    }

    pub fn corner(self, c: Corner) -> Subset {
        match c {
            Corner::Base => self.base,
            Corner::U => self.base.with(self.u),
            Corner::V => self.base.with(self.v),
            Corner::Top => self.base.with(self.u).with(self.v),
        }
    }

    pub fn corners(self) -> [Subset; 4] {
        Corner::ALL.map(|c| self.corner(c))
    }

    pub fn check_in(self, ground: &GroundSet) -> Result<()> {
        if self.v >= ground.len() {
            return Err(Error::InvalidFace(format!(
                "element {} outside a ground set of size {}",
                self.v,
                ground.len()
            )));
        }
        ground.check(self.base)
    }

    pub fn describe(self, ground: &GroundSet) -> String {
        format!(
            "({{{}}}, {{{},{}}})",
            ground.format_subset(self.base),
            ground.name(self.u),
            ground.name(self.v)
        )
    }
}

impl fmt::Display for TwoFace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{{},{}}})", self.base, self.u, self.v)
    }
}

/// Number of 2-faces of the `n`-cube: `2^(n−2)·n(n−1)/2`.
pub fn face_count(n: usize) -> usize {
    if n < 2 {
        0
    } else {
        (1usize << (n - 2)) * n * (n - 1) / 2
    }
}

/// Faces in canonical order: bases ascending by mask, then pairs
/// lexicographically among the elements outside the base.
#[derive(Clone, Debug)]
pub struct Faces {
    n: usize,
    base: u32,
    u: usize,
    v: usize,
    done: bool,
}

impl Faces {
    fn new(n: usize) -> Self {
        let mut faces = Faces {
            n,
            base: 0,
            u: 0,
            v: 1,
            done: n < 2,
        };
        faces.seek();
        faces
    }

    // Advances (base, u, v) to the next valid face at or after the current
    // position; v moves fastest, base slowest.
    fn seek(&mut self) {
        let limit = 1u64 << self.n;
        while !self.done {
            if self.v >= self.n {
                self.u += 1;
                self.v = self.u + 1;
            }
            if self.u + 1 >= self.n {
                self.base += 1;
                self.u = 0;
                self.v = 1;
                self.done = u64::from(self.base) >= limit;
                continue;
            }
            let base = Subset(self.base);
            if base.contains(self.u) {
                self.u += 1;
                self.v = self.u + 1;
            } else if base.contains(self.v) {
                self.v += 1;
            } else {
                return;
            }
        }
    }
}

impl Iterator for Faces {
    type Item = TwoFace;

    fn next(&mut self) -> Option<TwoFace> {
        if self.done {
            return None;
        }
        let face = TwoFace::new_unchecked(Subset(self.base), self.u, self.v);
        self.v += 1;
        self.seek();
        Some(face)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (0, Some(face_count(self.n)))
    }
}

pub fn enumerate_faces(ground: &GroundSet) -> Faces {
    Faces::new(ground.len())
}

/// Faces on one fixed pair, bases ascending.
pub fn faces_on_pair(n: usize, u: usize, v: usize) -> impl Iterator<Item = TwoFace> {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    let rest = Subset::full(n) - Subset::pair(u, v);
    rest.submasks()
        .map(move |x| TwoFace::new_unchecked(x, u, v))
}

#[derive(Default, Debug)]
struct QueryLog {
    distinct: BTreeSet<Subset>,
    total: u64,
}

/// Wraps an oracle and records every query.
#[derive(Debug)]
pub struct CountedOracle<O = SetFunction> {
    inner: O,
    log: Mutex<QueryLog>,
}

impl<O: Oracle> CountedOracle<O> {
    pub fn new(inner: O) -> Self {
        CountedOracle {
            inner,
            log: Mutex::new(QueryLog::default()),
        }
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn into_inner(self) -> O {
        self.inner
    }

    pub fn distinct_queries(&self) -> usize {
        self.log.lock().expect("query log poisoned").distinct.len()
    }

    pub fn total_calls(&self) -> u64 {
        self.log.lock().expect("query log poisoned").total
    }

    /// Distinct queried subsets, ascending.
    pub fn queried(&self) -> Vec<Subset> {
        self.log
            .lock()
            .expect("query log poisoned")
            .distinct
            .iter()
            .copied()
            .collect()
    }

    pub fn reset(&self) {
        *self.log.lock().expect("query log poisoned") = QueryLog::default();
    }
}

impl<O: Oracle> Oracle for CountedOracle<O> {
    fn ground(&self) -> &GroundSet {
        self.inner.ground()
    }

    fn value(&self, set: Subset) -> Rational {
        {
            let mut log = self.log.lock().expect("query log poisoned");
            log.total += 1;
            log.distinct.insert(set);
        }
        self.inner.value(set)
    }
}

pub fn counted<O: Oracle>(f: O) -> CountedOracle<O> {
    CountedOracle::new(f)
}
