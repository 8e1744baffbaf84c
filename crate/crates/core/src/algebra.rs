//! Boolean-algebra carriers.
//!
//! Two carrier families are supported:
//!
//! * [`FiniteCarrier`]: the powerset of a finite, ordered list of named
//!   atoms. Elements are [`AtomSet`] bitmasks, so enumeration is exhaustive
//!   and equality is exact.
//! * [`TailCarrier`]: the algebra of `k`-tuples whose components are either a
//!   finite subset of the naturals or the complement of one. It models the
//!   regions of `k` disjoint copies of the discrete naturals and is the
//!   smallest family with disjoint unbounded elements.
//!
//! The dynamically-typed [`Carrier`] / [`Element`] pair offers checked
//! arithmetic across both families; the checkers work through the
//! [`BooleanAlgebra`] trait on the concrete carriers.

use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Largest finite carrier the crate will build. Sets of elements are stored
/// as `u64` bitmasks indexed by element, which caps `2^n` at 64.
pub const MAX_ATOMS: usize = 6;

/// Operations shared by every carrier.
pub trait BooleanAlgebra {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn bottom(&self) -> Self::Elem;
    fn top(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn complement(&self, a: &Self::Elem) -> Self::Elem;

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.meet(a, b) == *a
    }

    fn is_bottom(&self, a: &Self::Elem) -> bool {
        *a == self.bottom()
    }

    fn is_top(&self, a: &Self::Elem) -> bool {
        *a == self.top()
    }

    /// Human-readable rendering used in witnesses.
    fn render(&self, a: &Self::Elem) -> String;
}

// ---------------------------------------------------------------------------
// Finite carriers
// ---------------------------------------------------------------------------

/// An element of a finite carrier: a subset of the atom indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct AtomSet(pub u64);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn singleton(atom: usize) -> Self {
        AtomSet(1 << atom)
    }

    pub fn full(n: usize) -> Self {
        if n == 0 {
            AtomSet(0)
        } else {
            AtomSet(u64::MAX >> (64 - n))
        }
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, atom: usize) -> bool {
        self.0 >> atom & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        AtomSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        AtomSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        AtomSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Atom indices in increasing order.
    pub fn atoms(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |i| bits >> i & 1 == 1)
    }

    /// Index of this element in the enumeration order of its carrier.
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A set of elements of one finite carrier, stored as a bitmask indexed by
/// [`AtomSet::index`]. Clusters, delta-ideals and dual-space point sets are
/// all values of this type.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ElementSet(pub u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub fn from_elements<I: IntoIterator<Item = AtomSet>>(elems: I) -> Self {
        let mut s = ElementSet::EMPTY;
        for e in elems {
            s.insert(e);
        }
        s
    }

    pub fn contains(self, a: AtomSet) -> bool {
        self.0 >> a.index() & 1 == 1
    }

    pub fn insert(&mut self, a: AtomSet) {
        self.0 |= 1 << a.index();
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    /// Members in enumeration order.
    pub fn iter(self) -> impl Iterator<Item = AtomSet> {
        let bits = self.0;
        (0..64u64).filter(move |i| bits >> i & 1 == 1).map(AtomSet)
    }
}

/// The powerset algebra of an ordered list of distinct atom names.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteCarrier {
    atoms: Vec<String>,
}

impl FiniteCarrier {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let atoms: Vec<String> = names.into_iter().map(Into::into).collect();
        if atoms.len() > MAX_ATOMS {
            return Err(Error::SizeLimit {
                what: "finite carrier".into(),
                got: atoms.len(),
                limit: MAX_ATOMS,
            });
        }
        let mut seen = BTreeSet::new();
        for a in &atoms {
            if !seen.insert(a.as_str()) {
                return Err(Error::Malformed(format!("duplicate atom name `{a}`")));
            }
        }
        Ok(FiniteCarrier { atoms })
    }

    /// Carrier with atoms named `a0, a1, ...`.
    pub fn with_size(n: usize) -> Result<Self> {
        Self::new((0..n).map(|i| format!("a{i}")))
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_names(&self) -> &[String] {
        &self.atoms
    }

    pub fn atom_index(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    /// Number of elements, `2^n`.
    pub fn size(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn full(&self) -> AtomSet {
        AtomSet::full(self.atoms.len())
    }

    pub fn contains(&self, a: AtomSet) -> bool {
        a.is_subset(self.full())
    }

    /// All `2^n` elements in increasing bitmask order.
    pub fn elements(&self) -> impl Iterator<Item = AtomSet> {
        (0..self.size() as u64).map(AtomSet)
    }

    /// Every element as an [`ElementSet`].
    pub fn all_elements(&self) -> ElementSet {
        if self.size() == 64 {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << self.size()) - 1)
        }
    }

    /// Element from a list of atom names.
    pub fn element<S: AsRef<str>>(&self, names: &[S]) -> Result<AtomSet> {
        let mut set = AtomSet::EMPTY;
        for n in names {
            let n = n.as_ref();
            let i = self
                .atom_index(n)
                .ok_or_else(|| Error::Malformed(format!("unknown atom `{n}`")))?;
            set = set.union(AtomSet::singleton(i));
        }
        Ok(set)
    }

    pub fn render_set(&self, s: ElementSet) -> String {
        let parts: Vec<String> = s.iter().map(|a| self.render(&a)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

impl BooleanAlgebra for FiniteCarrier {
    type Elem = AtomSet;

    fn bottom(&self) -> AtomSet {
        AtomSet::EMPTY
    }

    fn top(&self) -> AtomSet {
        self.full()
    }

    fn meet(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        a.intersection(*b)
    }

    fn join(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        a.union(*b)
    }

    fn complement(&self, a: &AtomSet) -> AtomSet {
        self.full().difference(*a)
    }

    fn leq(&self, a: &AtomSet, b: &AtomSet) -> bool {
        a.is_subset(*b)
    }

    fn render(&self, a: &AtomSet) -> String {
        let names: Vec<&str> = a.atoms().map(|i| self.atoms[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

// ---------------------------------------------------------------------------
// Tail carriers
// ---------------------------------------------------------------------------

/// One branch of a tail element: a finite set of naturals, or (when
/// `cofinite`) the complement of `points`.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Part {
    pub cofinite: bool,
    pub points: BTreeSet<u32>,
}

impl Part {
    pub fn finite<I: IntoIterator<Item = u32>>(points: I) -> Self {
        Part {
            cofinite: false,
            points: points.into_iter().collect(),
        }
    }

    pub fn cofinite<I: IntoIterator<Item = u32>>(excluded: I) -> Self {
        Part {
            cofinite: true,
            points: excluded.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Part::finite([])
    }

    pub fn everything() -> Self {
        Part::cofinite([])
    }

    pub fn contains(&self, i: u32) -> bool {
        self.points.contains(&i) != self.cofinite
    }

    pub fn is_empty(&self) -> bool {
        !self.cofinite && self.points.is_empty()
    }

    pub fn complement(&self) -> Part {
        Part {
            cofinite: !self.cofinite,
            points: self.points.clone(),
        }
    }

    pub fn meet(&self, other: &Part) -> Part {
        match (self.cofinite, other.cofinite) {
            (false, false) => Part::finite(self.points.intersection(&other.points).copied()),
            (false, true) => Part::finite(self.points.difference(&other.points).copied()),
            (true, false) => Part::finite(other.points.difference(&self.points).copied()),
            (true, true) => Part::cofinite(self.points.union(&other.points).copied()),
        }
    }

    pub fn join(&self, other: &Part) -> Part {
        match (self.cofinite, other.cofinite) {
            (false, false) => Part::finite(self.points.union(&other.points).copied()),
            (false, true) => Part::cofinite(other.points.difference(&self.points).copied()),
            (true, false) => Part::cofinite(self.points.difference(&other.points).copied()),
            (true, true) => Part::cofinite(self.points.intersection(&other.points).copied()),
        }
    }

    /// Smallest natural in this part.
    pub fn first_point(&self) -> Option<u32> {
        if self.cofinite {
            (0..).find(|i| !self.points.contains(i))
        } else {
            self.points.iter().next().copied()
        }
    }
}

impl fmt::Display for Part {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pts: Vec<String> = self.points.iter().map(|p| p.to_string()).collect();
        if self.cofinite {
            write!(f, "~{{{}}}", pts.join(","))
        } else {
            write!(f, "{{{}}}", pts.join(","))
        }
    }
}

/// An element of a [`TailCarrier`]: one [`Part`] per branch.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TailElem {
    pub parts: Vec<Part>,
}

impl TailElem {
    pub fn new(parts: Vec<Part>) -> Self {
        TailElem { parts }
    }

    pub fn bottom(branches: usize) -> Self {
        TailElem::new(vec![Part::empty(); branches])
    }

    pub fn top(branches: usize) -> Self {
        TailElem::new(vec![Part::everything(); branches])
    }

    /// The whole of one branch and nothing elsewhere.
    pub fn full_branch(branches: usize, branch: usize) -> Self {
        let mut e = TailElem::bottom(branches);
        e.parts[branch] = Part::everything();
        e
    }

    /// The single point `index` of `branch`.
    pub fn point(branches: usize, branch: usize, index: u32) -> Self {
        let mut e = TailElem::bottom(branches);
        e.parts[branch] = Part::finite([index]);
        e
    }

    pub fn branches(&self) -> usize {
        self.parts.len()
    }

    pub fn contains_point(&self, branch: usize, index: u32) -> bool {
        self.parts[branch].contains(index)
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Part::is_empty)
    }

    /// True when no branch is cofinite, i.e. the element is a finite set of
    /// points.
    pub fn is_finite(&self) -> bool {
        self.parts.iter().all(|p| !p.cofinite)
    }

    /// Smallest point in branch order, then index order.
    pub fn first_point(&self) -> Option<(usize, u32)> {
        self.parts
            .iter()
            .enumerate()
            .find_map(|(b, p)| p.first_point().map(|i| (b, i)))
    }

    fn zip(&self, other: &TailElem, f: impl Fn(&Part, &Part) -> Part) -> TailElem {
        TailElem::new(
            self.parts
                .iter()
                .zip(&other.parts)
                .map(|(x, y)| f(x, y))
                .collect(),
        )
    }
}

impl fmt::Display for TailElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "[{}]", parts.join(" | "))
    }
}

/// The finite/cofinite algebra over `branches` disjoint copies of the
/// naturals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TailCarrier {
    branches: usize,
}

impl TailCarrier {
    pub fn new(branches: usize) -> Result<Self> {
        if branches == 0 {
            return Err(Error::Malformed(
                "tail carrier needs at least one branch".into(),
            ));
        }
        Ok(TailCarrier { branches })
    }

    pub fn branches(&self) -> usize {
        self.branches
    }

    pub fn contains(&self, a: &TailElem) -> bool {
        a.parts.len() == self.branches
    }

    /// Elements every sample must contain: 0, 1, each full branch, each
    /// singleton `{(b, 0)}` and its complement. Duplicates are dropped, so
    /// for one branch this is exactly `0, 1, {0}, ~{0}`.
    pub fn mandated_samples(&self) -> Vec<TailElem> {
        let k = self.branches;
        let mut seeds = vec![TailElem::bottom(k), TailElem::top(k)];
        seeds.extend((0..k).map(|b| TailElem::full_branch(k, b)));
        for b in 0..k {
            let p = TailElem::point(k, b, 0);
            seeds.push(self.complement(&p));
            seeds.insert(seeds.len() - 1, p);
        }
        let mut out: Vec<TailElem> = Vec::with_capacity(seeds.len());
        for e in seeds {
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }

    /// Deterministic pseudo-random sample of `max(budget, mandated)` distinct
    /// elements, starting with [`TailCarrier::mandated_samples`].
    pub fn sample_elements(&self, budget: usize, seed: u64) -> Vec<TailElem> {
        let mut out = self.mandated_samples();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut attempts = 0usize;
        while out.len() < budget && attempts < budget.saturating_mul(1000) {
            attempts += 1;
            let parts = (0..self.branches)
                .map(|_| {
                    let cofinite = rng.gen_bool(0.5);
                    let points = (0u32..8).filter(|_| rng.gen_bool(0.3));
                    Part {
                        cofinite,
                        points: points.collect(),
                    }
                })
                .collect();
            let e = TailElem::new(parts);
            if !out.contains(&e) {
                out.push(e);
            }
        }
        out
    }
}

impl BooleanAlgebra for TailCarrier {
    type Elem = TailElem;

    fn bottom(&self) -> TailElem {
        TailElem::bottom(self.branches)
    }

    fn top(&self) -> TailElem {
        TailElem::top(self.branches)
    }

    fn meet(&self, a: &TailElem, b: &TailElem) -> TailElem {
        a.zip(b, Part::meet)
    }

    fn join(&self, a: &TailElem, b: &TailElem) -> TailElem {
        a.zip(b, Part::join)
    }

    fn complement(&self, a: &TailElem) -> TailElem {
        TailElem::new(a.parts.iter().map(Part::complement).collect())
    }

    fn is_bottom(&self, a: &TailElem) -> bool {
        a.is_zero()
    }

    fn render(&self, a: &TailElem) -> String {
        a.to_string()
    }
}

// ---------------------------------------------------------------------------
// Dynamically-typed carriers and elements
// ---------------------------------------------------------------------------

/// Either carrier family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Carrier {
    Finite(FiniteCarrier),
    Tail(TailCarrier),
}

/// An element tagged with the shape of the carrier it belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Finite { width: usize, atoms: AtomSet },
    Tail(TailElem),
}

impl Element {
    fn shape(&self) -> String {
        match self {
            Element::Finite { width, .. } => format!("finite carrier with {width} atoms"),
            Element::Tail(t) => format!("tail carrier with {} branches", t.branches()),
        }
    }

    fn same_shape(&self, other: &Element) -> bool {
        match (self, other) {
            (Element::Finite { width: w1, .. }, Element::Finite { width: w2, .. }) => w1 == w2,
            (Element::Tail(a), Element::Tail(b)) => a.branches() == b.branches(),
            _ => false,
        }
    }

    fn binary(
        &self,
        other: &Element,
        fin: impl Fn(AtomSet, AtomSet, usize) -> AtomSet,
        tail: impl Fn(&TailCarrier, &TailElem, &TailElem) -> TailElem,
    ) -> Result<Element> {
        if !self.same_shape(other) {
            return Err(Error::CarrierMismatch {
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(match (self, other) {
            (Element::Finite { width, atoms: a }, Element::Finite { atoms: b, .. }) => {
                Element::Finite {
                    width: *width,
                    atoms: fin(*a, *b, *width),
                }
            }
            (Element::Tail(a), Element::Tail(b)) => {
                let c = TailCarrier::new(a.branches())?;
                Element::Tail(tail(&c, a, b))
            }
            _ => unreachable!("shapes checked above"),
        })
    }

    pub fn meet(&self, other: &Element) -> Result<Element> {
        self.binary(other, |a, b, _| a.intersection(b), |c, a, b| c.meet(a, b))
    }

    pub fn join(&self, other: &Element) -> Result<Element> {
        self.binary(other, |a, b, _| a.union(b), |c, a, b| c.join(a, b))
    }

    pub fn complement(&self) -> Element {
        match self {
            Element::Finite { width, atoms } => Element::Finite {
                width: *width,
                atoms: AtomSet::full(*width).difference(*atoms),
            },
            Element::Tail(t) => Element::Tail(TailElem::new(
                t.parts.iter().map(Part::complement).collect(),
            )),
        }
    }

    pub fn leq(&self, other: &Element) -> Result<bool> {
        Ok(self.meet(other)? == *self)
    }
}

impl Carrier {
    fn shape(&self) -> String {
        match self {
            Carrier::Finite(c) => format!("finite carrier with {} atoms", c.atom_count()),
            Carrier::Tail(c) => format!("tail carrier with {} branches", c.branches()),
        }
    }

    /// Errors unless `a` is a well-formed element of this carrier.
    pub fn check(&self, a: &Element) -> Result<()> {
        let ok = match (self, a) {
            (Carrier::Finite(c), Element::Finite { width, atoms }) => {
                *width == c.atom_count() && c.contains(*atoms)
            }
            (Carrier::Tail(c), Element::Tail(t)) => c.contains(t),
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::CarrierMismatch {
                left: self.shape(),
                right: a.shape(),
            })
        }
    }

    pub fn top(&self) -> Element {
        match self {
            Carrier::Finite(c) => Element::Finite {
                width: c.atom_count(),
                atoms: c.top(),
            },
            Carrier::Tail(c) => Element::Tail(c.top()),
        }
    }

    pub fn bottom(&self) -> Element {
        match self {
            Carrier::Finite(c) => Element::Finite {
                width: c.atom_count(),
                atoms: c.bottom(),
            },
            Carrier::Tail(c) => Element::Tail(c.bottom()),
        }
    }

    pub fn meet(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        a.meet(b)
    }

    pub fn join(&self, a: &Element, b: &Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        a.join(b)
    }

    pub fn complement(&self, a: &Element) -> Result<Element> {
        self.check(a)?;
        Ok(a.complement())
    }

    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        a.leq(b)
    }

    /// All elements of a finite carrier in bitmask order.
    pub fn enumerate_elements(&self) -> Result<Vec<Element>> {
        match self {
            Carrier::Finite(c) => Ok(c
                .elements()
                .map(|atoms| Element::Finite {
                    width: c.atom_count(),
                    atoms,
                })
                .collect()),
            Carrier::Tail(_) => Err(Error::UnsupportedCarrier(
                "tail carriers cannot be enumerated; use sample_elements".into(),
            )),
        }
    }

    /// Sample of a tail carrier; see [`TailCarrier::sample_elements`].
    pub fn sample_elements(&self, budget: usize, seed: u64) -> Result<Vec<Element>> {
        match self {
            Carrier::Tail(c) => Ok(c
                .sample_elements(budget, seed)
                .into_iter()
                .map(Element::Tail)
                .collect()),
            Carrier::Finite(_) => Err(Error::UnsupportedCarrier(
                "finite carriers are enumerated, not sampled".into(),
            )),
        }
    }

    pub fn render(&self, a: &Element) -> String {
        match (self, a) {
            (Carrier::Finite(c), Element::Finite { atoms, .. }) => c.render(atoms),
            (_, Element::Tail(t)) => t.to_string(),
            (_, Element::Finite { atoms, .. }) => format!("{:#b}", atoms.bits()),
        }
    }
}
