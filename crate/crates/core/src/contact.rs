//! Contact relations and local contact structures.
//!
//! A structure is a carrier together with a contact relation `rho` and an
//! ideal of bounded elements. From these come the non-tangential inclusion
//! `a << b` (defined as "a is not in contact with the complement of b") and
//! the Alexandroff extension, which additionally puts every two unbounded
//! elements in contact.

use std::collections::BTreeSet;

use crate::algebra::{
    AtomSet, BooleanAlgebra, Carrier, Element, ElementSet, FiniteCarrier, Part, TailCarrier,
    TailElem,
};
use crate::error::{Error, Result};

/// Which contact relation a check is run against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ContactMode {
    /// The structure's own relation `rho`.
    Rho,
    /// `a C b` iff `a rho b`, or neither `a` nor `b` is bounded.
    Alexandroff,
}

impl ContactMode {
    pub fn label(self) -> &'static str {
        match self {
            ContactMode::Rho => "rho",
            ContactMode::Alexandroff => "alexandroff",
        }
    }
}

/// How the contact relation is given.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ContactSpec {
    /// Regions touch iff they share an atom (or a point, on tail carriers).
    Overlap,
    /// Regions touch iff some atom of one is adjacent to some atom of the
    /// other. Entry `i` is the neighbourhood of atom `i`; the graph must be
    /// reflexive and symmetric. Finite carriers only.
    AtomGraph(Vec<AtomSet>),
    /// Contact given pair by pair. Must be symmetric. Finite carriers only.
    ExplicitTable(BTreeSet<(AtomSet, AtomSet)>),
}

impl ContactSpec {
    /// Adjacency from a list of ordered atom pairs; no closure is applied.
    pub fn atom_graph(atoms: usize, pairs: &[(usize, usize)]) -> Result<ContactSpec> {
        let mut rows = vec![AtomSet::EMPTY; atoms];
        for &(i, j) in pairs {
            if i >= atoms || j >= atoms {
                return Err(Error::Malformed(format!(
                    "adjacency pair ({i},{j}) out of range for {atoms} atoms"
                )));
            }
            rows[i] = rows[i].union(AtomSet::singleton(j));
        }
        Ok(ContactSpec::AtomGraph(rows))
    }

    /// Every atom adjacent to every atom.
    pub fn full_adjacency(atoms: usize) -> ContactSpec {
        ContactSpec::AtomGraph(vec![AtomSet::full(atoms); atoms])
    }

    pub fn explicit<I: IntoIterator<Item = (AtomSet, AtomSet)>>(pairs: I) -> ContactSpec {
        ContactSpec::ExplicitTable(pairs.into_iter().collect())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            ContactSpec::Overlap => "overlap",
            ContactSpec::AtomGraph(_) => "atom-graph",
            ContactSpec::ExplicitTable(_) => "explicit-table",
        }
    }
}

/// The ideal of bounded elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Bounded {
    /// Every element is bounded.
    All,
    /// Finite carriers: the principal ideal of elements below the given one.
    /// Only `GeneratedBy(1)` can satisfy (BC3); the others exist to exercise
    /// failure reporting.
    GeneratedBy(AtomSet),
    /// Tail carriers: elements with no cofinite branch.
    FiniteElements,
}

/// Operations the generic checkers need from a structure.
///
/// `domain` is the set universal quantifiers range over. It is the whole
/// carrier when `exhaustive` is true and a fixed sample otherwise;
/// existential witnesses are searched in `domain` followed by
/// `extra_witnesses` for the tuple at hand.
pub trait Structure: BooleanAlgebra {
    fn rho(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn is_bounded(&self, a: &Self::Elem) -> bool;
    fn domain(&self) -> &[Self::Elem];
    fn exhaustive(&self) -> bool;

    fn extra_witnesses(&self, _tuple: &[&Self::Elem]) -> Vec<Self::Elem> {
        Vec::new()
    }

    fn contact(&self, mode: ContactMode, a: &Self::Elem, b: &Self::Elem) -> bool {
        match mode {
            ContactMode::Rho => self.rho(a, b),
            ContactMode::Alexandroff => {
                self.rho(a, b) || (!self.is_bounded(a) && !self.is_bounded(b))
            }
        }
    }

    fn way_below(&self, mode: ContactMode, a: &Self::Elem, b: &Self::Elem) -> bool {
        !self.contact(mode, a, &self.complement(b))
    }

    fn top_bounded(&self) -> bool {
        self.is_bounded(&self.top())
    }
}

// ---------------------------------------------------------------------------
// Finite structures
// ---------------------------------------------------------------------------

/// A local contact structure on a finite carrier, with the contact relation
/// tabulated on construction.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteLca {
    carrier: FiniteCarrier,
    contact: ContactSpec,
    bounded: Bounded,
    elements: Vec<AtomSet>,
    rows: Vec<ElementSet>,
    bounded_set: ElementSet,
}

impl FiniteLca {
    pub fn new(carrier: FiniteCarrier, contact: ContactSpec, bounded: Bounded) -> Result<Self> {
        let n = carrier.atom_count();
        let full = carrier.full();
        match &contact {
            ContactSpec::Overlap => {}
            ContactSpec::AtomGraph(rows) => {
                if rows.len() != n {
                    return Err(Error::Malformed(format!(
                        "adjacency has {} rows for {n} atoms",
                        rows.len()
                    )));
                }
                for (i, row) in rows.iter().enumerate() {
                    if !row.is_subset(full) {
                        return Err(Error::Malformed(format!("adjacency row {i} out of range")));
                    }
                    if !row.contains(i) {
                        return Err(Error::Malformed(format!(
                            "adjacency is not reflexive at atom `{}`",
                            carrier.atom_names()[i]
                        )));
                    }
                    for j in row.atoms() {
                        if !rows[j].contains(i) {
                            return Err(Error::Malformed(format!(
                                "adjacency is not symmetric: `{}`~`{}` without the converse",
                                carrier.atom_names()[i],
                                carrier.atom_names()[j]
                            )));
                        }
                    }
                }
            }
            ContactSpec::ExplicitTable(pairs) => {
                for &(a, b) in pairs {
                    if !carrier.contains(a) || !carrier.contains(b) {
                        return Err(Error::Malformed(
                            "contact table mentions an element outside the carrier".into(),
                        ));
                    }
                    if !pairs.contains(&(b, a)) {
                        return Err(Error::Malformed(format!(
                            "contact table is not symmetric: {} C {} without the converse",
                            carrier.render(&a),
                            carrier.render(&b)
                        )));
                    }
                }
            }
        }
        let bounded_set = match &bounded {
            Bounded::All => carrier.all_elements(),
            Bounded::GeneratedBy(s) => {
                if !carrier.contains(*s) {
                    return Err(Error::Malformed(
                        "bounded generator outside the carrier".into(),
                    ));
                }
                ElementSet::from_elements(carrier.elements().filter(|a| a.is_subset(*s)))
            }
            Bounded::FiniteElements => {
                return Err(Error::UnsupportedCarrier(
                    "the finite-elements ideal is only defined on tail carriers".into(),
                ))
            }
        };
        let elements: Vec<AtomSet> = carrier.elements().collect();
        let rows = elements
            .iter()
            .map(|&a| {
                ElementSet::from_elements(
                    elements
                        .iter()
                        .copied()
                        .filter(|&b| raw_contact(&contact, a, b)),
                )
            })
            .collect();
        Ok(FiniteLca {
            carrier,
            contact,
            bounded,
            elements,
            rows,
            bounded_set,
        })
    }

    /// Overlap contact with every element bounded: the regular-closed
    /// algebra of a finite discrete space.
    pub fn overlap(carrier: FiniteCarrier) -> Self {
        FiniteLca::new(carrier, ContactSpec::Overlap, Bounded::All)
            .expect("overlap structures are always well formed")
    }

    pub fn full_adjacency(carrier: FiniteCarrier) -> Self {
        let n = carrier.atom_count();
        FiniteLca::new(carrier, ContactSpec::full_adjacency(n), Bounded::All)
            .expect("full adjacency is reflexive and symmetric")
    }

    pub fn carrier(&self) -> &FiniteCarrier {
        &self.carrier
    }

    pub fn contact_spec(&self) -> &ContactSpec {
        &self.contact
    }

    pub fn bounded(&self) -> &Bounded {
        &self.bounded
    }

    pub fn atom_count(&self) -> usize {
        self.carrier.atom_count()
    }

    pub fn elements(&self) -> &[AtomSet] {
        &self.elements
    }

    pub fn bounded_set(&self) -> ElementSet {
        self.bounded_set
    }

    pub fn all_elements(&self) -> ElementSet {
        self.carrier.all_elements()
    }

    /// Elements in `rho`-contact with `a`.
    pub fn contact_row(&self, a: AtomSet) -> ElementSet {
        self.rows[a.index()]
    }

    /// Elements in contact with `a` under `mode`.
    pub fn contact_row_in(&self, a: AtomSet, mode: ContactMode) -> ElementSet {
        let row = self.rows[a.index()];
        match mode {
            ContactMode::Rho => row,
            ContactMode::Alexandroff if !self.bounded_set.contains(a) => {
                row.union(self.all_elements().difference(self.bounded_set))
            }
            ContactMode::Alexandroff => row,
        }
    }

    pub fn render_set(&self, s: ElementSet) -> String {
        self.carrier.render_set(s)
    }

    pub fn element(&self, e: AtomSet) -> Element {
        Element::Finite {
            width: self.atom_count(),
            atoms: e,
        }
    }
}

fn raw_contact(spec: &ContactSpec, a: AtomSet, b: AtomSet) -> bool {
    match spec {
        ContactSpec::Overlap => a.intersects(b),
        ContactSpec::AtomGraph(rows) => {
            let reach = a.atoms().fold(AtomSet::EMPTY, |acc, i| acc.union(rows[i]));
            reach.intersects(b)
        }
        ContactSpec::ExplicitTable(pairs) => pairs.contains(&(a, b)),
    }
}

impl BooleanAlgebra for FiniteLca {
    type Elem = AtomSet;

    fn bottom(&self) -> AtomSet {
        AtomSet::EMPTY
    }

    fn top(&self) -> AtomSet {
        self.carrier.full()
    }

    fn meet(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        a.intersection(*b)
    }

    fn join(&self, a: &AtomSet, b: &AtomSet) -> AtomSet {
        a.union(*b)
    }

    fn complement(&self, a: &AtomSet) -> AtomSet {
        self.carrier.full().difference(*a)
    }

    fn leq(&self, a: &AtomSet, b: &AtomSet) -> bool {
        a.is_subset(*b)
    }

    fn render(&self, a: &AtomSet) -> String {
        self.carrier.render(a)
    }
}

impl Structure for FiniteLca {
    fn rho(&self, a: &AtomSet, b: &AtomSet) -> bool {
        self.rows[a.index()].contains(*b)
    }

    fn is_bounded(&self, a: &AtomSet) -> bool {
        self.bounded_set.contains(*a)
    }

    fn domain(&self) -> &[AtomSet] {
        &self.elements
    }

    fn exhaustive(&self) -> bool {
        true
    }
}

// ---------------------------------------------------------------------------
// Tail structures
// ---------------------------------------------------------------------------

/// Default number of sampled elements for tail-carrier checks.
pub const DEFAULT_TAIL_SAMPLE: usize = 20;

/// The tail carrier with overlap contact and either every element bounded
/// or only the finite ones. Universal checks range over a seeded sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailLca {
    carrier: TailCarrier,
    bounded: Bounded,
    seed: u64,
    sample: Vec<TailElem>,
}

impl TailLca {
    pub fn new(carrier: TailCarrier, bounded: Bounded, budget: usize, seed: u64) -> Result<Self> {
        match bounded {
            Bounded::All | Bounded::FiniteElements => {}
            Bounded::GeneratedBy(_) => {
                return Err(Error::UnsupportedCarrier(
                    "principal bounded ideals are only defined on finite carriers".into(),
                ))
            }
        }
        let sample = carrier.sample_elements(budget, seed);
        Ok(TailLca {
            carrier,
            bounded,
            seed,
            sample,
        })
    }

    /// `k` branches, finite elements bounded, default sample.
    pub fn standard(branches: usize, seed: u64) -> Result<Self> {
        TailLca::new(
            TailCarrier::new(branches)?,
            Bounded::FiniteElements,
            DEFAULT_TAIL_SAMPLE,
            seed,
        )
    }

    pub fn carrier(&self) -> &TailCarrier {
        &self.carrier
    }

    pub fn branches(&self) -> usize {
        self.carrier.branches()
    }

    pub fn bounded(&self) -> &Bounded {
        &self.bounded
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sample(&self) -> &[TailElem] {
        &self.sample
    }

    pub fn full_branch(&self, branch: usize) -> TailElem {
        TailElem::full_branch(self.branches(), branch)
    }

    pub fn point(&self, branch: usize, index: u32) -> TailElem {
        TailElem::point(self.branches(), branch, index)
    }
}

impl BooleanAlgebra for TailLca {
    type Elem = TailElem;

    fn bottom(&self) -> TailElem {
        self.carrier.bottom()
    }

    fn top(&self) -> TailElem {
        self.carrier.top()
    }

    fn meet(&self, a: &TailElem, b: &TailElem) -> TailElem {
        self.carrier.meet(a, b)
    }

    fn join(&self, a: &TailElem, b: &TailElem) -> TailElem {
        self.carrier.join(a, b)
    }

    fn complement(&self, a: &TailElem) -> TailElem {
        self.carrier.complement(a)
    }

    fn is_bottom(&self, a: &TailElem) -> bool {
        a.is_zero()
    }

    fn render(&self, a: &TailElem) -> String {
        a.to_string()
    }
}

impl Structure for TailLca {
    fn rho(&self, a: &TailElem, b: &TailElem) -> bool {
        a.parts
            .iter()
            .zip(&b.parts)
            .any(|(x, y)| !x.meet(y).is_empty())
    }

    fn is_bounded(&self, a: &TailElem) -> bool {
        match self.bounded {
            Bounded::All => true,
            _ => a.is_finite(),
        }
    }

    fn domain(&self) -> &[TailElem] {
        &self.sample
    }

    fn exhaustive(&self) -> bool {
        false
    }

    /// Closed-form witness candidates: the tuple, complements, pairwise
    /// meets of those, and the first-point singleton of each nonzero one.
    fn extra_witnesses(&self, tuple: &[&TailElem]) -> Vec<TailElem> {
        let k = self.branches();
        let mut base: Vec<TailElem> = Vec::new();
        for t in tuple {
            base.push((*t).clone());
            base.push(self.complement(t));
        }
        let mut out: Vec<TailElem> = Vec::new();
        let push = |e: TailElem, out: &mut Vec<TailElem>| {
            if !out.contains(&e) {
                out.push(e);
            }
        };
        for e in &base {
            push(e.clone(), &mut out);
        }
        for (i, x) in base.iter().enumerate() {
            for y in &base[i + 1..] {
                push(self.meet(x, y), &mut out);
            }
        }
        let singletons: Vec<TailElem> = out
            .iter()
            .filter_map(|e| e.first_point())
            .map(|(b, i)| TailElem::point(k, b, i))
            .collect();
        for s in singletons {
            push(s, &mut out);
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Either kind
// ---------------------------------------------------------------------------

/// A finite or tail structure behind one element-level API.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LcaStructure {
    Finite(FiniteLca),
    Tail(TailLca),
}

impl LcaStructure {
    pub fn carrier(&self) -> Carrier {
        match self {
            LcaStructure::Finite(l) => Carrier::Finite(l.carrier().clone()),
            LcaStructure::Tail(t) => Carrier::Tail(*t.carrier()),
        }
    }

    pub fn as_finite(&self) -> Result<&FiniteLca> {
        match self {
            LcaStructure::Finite(l) => Ok(l),
            LcaStructure::Tail(_) => Err(Error::UnsupportedCarrier(
                "operation needs a finite carrier".into(),
            )),
        }
    }

    pub fn as_tail(&self) -> Result<&TailLca> {
        match self {
            LcaStructure::Tail(t) => Ok(t),
            LcaStructure::Finite(_) => Err(Error::UnsupportedCarrier(
                "operation needs a tail carrier".into(),
            )),
        }
    }

    fn relation(
        &self,
        a: &Element,
        b: &Element,
        fin: impl Fn(&FiniteLca, &AtomSet, &AtomSet) -> bool,
        tail: impl Fn(&TailLca, &TailElem, &TailElem) -> bool,
    ) -> Result<bool> {
        let carrier = self.carrier();
        carrier.check(a)?;
        carrier.check(b)?;
        Ok(match (self, a, b) {
            (
                LcaStructure::Finite(l),
                Element::Finite { atoms: x, .. },
                Element::Finite { atoms: y, .. },
            ) => fin(l, x, y),
            (LcaStructure::Tail(t), Element::Tail(x), Element::Tail(y)) => tail(t, x, y),
            _ => unreachable!("carrier membership checked above"),
        })
    }

    /// `a rho b`.
    pub fn contact(&self, a: &Element, b: &Element) -> Result<bool> {
        self.relation(a, b, |l, x, y| l.rho(x, y), |t, x, y| t.rho(x, y))
    }

    /// `a << b` with respect to `rho`.
    pub fn way_below(&self, a: &Element, b: &Element) -> Result<bool> {
        self.relation(
            a,
            b,
            |l, x, y| l.way_below(ContactMode::Rho, x, y),
            |t, x, y| t.way_below(ContactMode::Rho, x, y),
        )
    }

    /// The Alexandroff extension `C_rho`.
    pub fn alexandroff_contact(&self, a: &Element, b: &Element) -> Result<bool> {
        self.relation(
            a,
            b,
            |l, x, y| l.contact(ContactMode::Alexandroff, x, y),
            |t, x, y| t.contact(ContactMode::Alexandroff, x, y),
        )
    }

    pub fn is_bounded(&self, a: &Element) -> Result<bool> {
        self.carrier().check(a)?;
        Ok(match (self, a) {
            (LcaStructure::Finite(l), Element::Finite { atoms, .. }) => l.is_bounded(atoms),
            (LcaStructure::Tail(t), Element::Tail(x)) => t.is_bounded(x),
            _ => unreachable!("carrier membership checked above"),
        })
    }
}

/// The tail element with `part` on `branch` and nothing elsewhere.
pub fn tail_on_branch(branches: usize, branch: usize, part: Part) -> TailElem {
    let mut e = TailElem::bottom(branches);
    e.parts[branch] = part;
    e
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> FiniteLca {
        FiniteLca::overlap(FiniteCarrier::new(["x", "y"]).unwrap())
    }

    fn pq_full() -> FiniteLca {
        FiniteLca::full_adjacency(FiniteCarrier::new(["p", "q"]).unwrap())
    }

    #[test]
    fn overlap_examples() {
        let l = LcaStructure::Finite(xy());
        let c = l.carrier();
        let x = Element::Finite {
            width: 2,
            atoms: AtomSet(1),
        };
        let y = Element::Finite {
            width: 2,
            atoms: AtomSet(2),
        };
        assert!(l.contact(&x, &c.top()).unwrap());
        assert!(!l.contact(&x, &y).unwrap());
    }

    #[test]
    fn atom_graph_matches_explicit_table() {
        let g = pq_full();
        let table = ContactSpec::explicit(
            g.elements()
                .iter()
                .flat_map(|&a| g.elements().iter().map(move |&b| (a, b)))
                .filter(|(a, b)| !a.is_empty() && !b.is_empty()),
        );
        let t = FiniteLca::new(g.carrier().clone(), table, Bounded::All).unwrap();
        let p = AtomSet(1);
        let q = AtomSet(2);
        assert!(g.rho(&p, &q));
        for &a in g.elements() {
            for &b in g.elements() {
                assert_eq!(g.rho(&a, &b), t.rho(&a, &b));
            }
        }
    }

    #[test]
    fn overlap_way_below_is_inclusion() {
        let l = FiniteLca::overlap(FiniteCarrier::with_size(3).unwrap());
        for &a in l.elements() {
            assert!(l.way_below(ContactMode::Rho, &a, &a));
            for &b in l.elements() {
                assert_eq!(l.way_below(ContactMode::Rho, &a, &b), a.is_subset(b));
            }
        }
    }

    #[test]
    fn full_adjacency_p_not_way_below_p() {
        let g = pq_full();
        assert!(!g.way_below(ContactMode::Rho, &AtomSet(1), &AtomSet(1)));
    }

    #[test]
    fn alexandroff_on_tail_branches() {
        let t = TailLca::standard(2, 0).unwrap();
        let e = t.full_branch(0);
        let o = t.full_branch(1);
        assert!(!t.rho(&e, &o));
        assert!(t.contact(ContactMode::Alexandroff, &e, &o));
        let p = t.point(0, 3);
        for b in t.sample() {
            assert_eq!(
                t.contact(ContactMode::Alexandroff, &p, b),
                t.rho(&p, b),
                "bounded element: extension must agree with rho"
            );
        }
    }

    #[test]
    fn finite_alexandroff_equals_rho_when_all_bounded() {
        for n in 0..=4 {
            let l = FiniteLca::overlap(FiniteCarrier::with_size(n).unwrap());
            for &a in l.elements() {
                for &b in l.elements() {
                    assert_eq!(l.contact(ContactMode::Alexandroff, &a, &b), l.rho(&a, &b));
                }
            }
        }
    }

    #[test]
    fn malformed_graphs_rejected() {
        let c = FiniteCarrier::new(["p", "q"]).unwrap();
        let not_symmetric = ContactSpec::atom_graph(2, &[(0, 0), (1, 1), (0, 1)]).unwrap();
        assert!(matches!(
            FiniteLca::new(c.clone(), not_symmetric, Bounded::All),
            Err(Error::Malformed(_))
        ));
        let not_reflexive = ContactSpec::atom_graph(2, &[(0, 0)]).unwrap();
        assert!(FiniteLca::new(c.clone(), not_reflexive, Bounded::All).is_err());
        let table = ContactSpec::explicit([(AtomSet(1), AtomSet(3))]);
        assert!(matches!(
            FiniteLca::new(c, table, Bounded::All),
            Err(Error::Malformed(_))
        ));
    }

    #[test]
    fn mixed_carrier_relation_rejected() {
        let l = LcaStructure::Finite(xy());
        let other = Carrier::Finite(FiniteCarrier::with_size(3).unwrap()).top();
        assert!(matches!(
            l.contact(&other, &other),
            Err(Error::CarrierMismatch { .. })
        ));
    }

    #[test]
    fn tail_extra_witnesses_include_singletons() {
        let t = TailLca::standard(2, 0).unwrap();
        let a = t.full_branch(1);
        let w = t.extra_witnesses(&[&a]);
        assert!(w.contains(&t.point(1, 0)));
        assert!(w.contains(&t.complement(&a)));
    }
}
