//! Delta-ideals: ideals of bounded elements in which every member is way
//! below another member. They form a frame whose prime elements match the
//! bounded clusters.

use crate::algebra::{AtomSet, BooleanAlgebra, ElementSet, TailElem};
use crate::clusters::{bounded_clusters, cluster_label, trace};
use crate::contact::{Bounded, ContactMode, FiniteLca, Structure, TailLca};
use crate::error::{Error, Result};
use crate::report::{Check, Report, Status};

/// Largest carrier [`check_frame`] accepts: the check ranges over every
/// subfamily of the ideal lattice.
pub const FRAME_ATOM_LIMIT: usize = 3;

/// A delta-ideal of either carrier family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DeltaIdeal {
    Explicit(ElementSet),
    /// `{b bounded : b << u}` on a tail carrier.
    Principal(TailElem),
}

impl DeltaIdeal {
    pub fn contains_tail(&self, t: &TailLca, b: &TailElem) -> bool {
        match self {
            DeltaIdeal::Principal(u) => t.is_bounded(b) && t.way_below(ContactMode::Rho, b, u),
            DeltaIdeal::Explicit(_) => false,
        }
    }
}

/// First violated delta-ideal rule as a failing check, or `None`.
pub fn delta_ideal_violation(l: &FiniteLca, set: ElementSet) -> Option<Check> {
    let r = |a: AtomSet| l.render(&a);
    if let Some(a) = set.difference(l.bounded_set()).iter().next() {
        return Some(Check::fail("contained-in-bounded").with_witness("a", r(a)));
    }
    if !set.contains(AtomSet::EMPTY) {
        return Some(Check::fail("zero"));
    }
    for a in set.iter() {
        for &b in l.elements() {
            if b.is_subset(a) && !set.contains(b) {
                return Some(
                    Check::fail("down-closed")
                        .with_witness("a", r(a))
                        .with_witness("b", r(b)),
                );
            }
        }
    }
    for a in set.iter() {
        for b in set.iter() {
            if !set.contains(a.union(b)) {
                return Some(
                    Check::fail("join-closed")
                        .with_witness("a", r(a))
                        .with_witness("b", r(b)),
                );
            }
        }
    }
    for a in set.iter() {
        if !set.iter().any(|b| l.way_below(ContactMode::Rho, &a, &b)) {
            return Some(Check::fail("interpolation").with_witness("a", r(a)));
        }
    }
    None
}

pub fn is_delta_ideal(l: &FiniteLca, set: ElementSet) -> bool {
    delta_ideal_violation(l, set).is_none()
}

/// `I_a = {b bounded : b << a}`.
pub fn principal_delta_ideal(l: &FiniteLca, a: AtomSet) -> ElementSet {
    ElementSet::from_elements(
        l.elements()
            .iter()
            .copied()
            .filter(|b| l.is_bounded(b) && l.way_below(ContactMode::Rho, b, &a)),
    )
}

pub fn tail_principal_delta_ideal(a: &TailElem) -> DeltaIdeal {
    DeltaIdeal::Principal(a.clone())
}

/// Down-set of `s`.
pub fn down_set(l: &FiniteLca, s: AtomSet) -> ElementSet {
    ElementSet::from_elements(l.elements().iter().copied().filter(|b| b.is_subset(s)))
}

/// All delta-ideals, ordered by generator. Every ideal of a finite algebra
/// is the down-set of its largest element, so only down-sets of bounded
/// elements are candidates.
pub fn delta_ideals(l: &FiniteLca) -> Vec<ElementSet> {
    l.elements()
        .iter()
        .filter(|s| l.is_bounded(s))
        .map(|&s| down_set(l, s))
        .filter(|&i| is_delta_ideal(l, i))
        .collect()
}

/// The largest delta-ideal.
pub fn top_ideal(l: &FiniteLca) -> ElementSet {
    delta_ideals(l)
        .into_iter()
        .max_by_key(|i| i.len())
        .unwrap_or(ElementSet::EMPTY)
}

fn require(l: &FiniteLca, i: ElementSet, role: &str) -> Result<()> {
    match delta_ideal_violation(l, i) {
        None => Ok(()),
        Some(v) => Err(Error::Contract(format!(
            "{role} {} is not a delta-ideal ({})",
            l.render_set(i),
            v.id
        ))),
    }
}

pub fn ideal_meet(l: &FiniteLca, i: ElementSet, j: ElementSet) -> Result<ElementSet> {
    require(l, i, "operand")?;
    require(l, j, "operand")?;
    let m = i.intersection(j);
    require(l, m, "meet")?;
    Ok(m)
}

pub fn ideal_join(l: &FiniteLca, i: ElementSet, j: ElementSet) -> Result<ElementSet> {
    ideal_join_many(l, &[i, j])
}

/// Finite joins of one representative from each of finitely many members
/// of the family; the empty family gives `{0}`.
pub fn ideal_join_many(l: &FiniteLca, family: &[ElementSet]) -> Result<ElementSet> {
    for &i in family {
        require(l, i, "operand")?;
    }
    let j = join_formula(family);
    require(l, j, "join")?;
    Ok(j)
}

fn join_formula(family: &[ElementSet]) -> ElementSet {
    let mut acc = ElementSet::from_elements([AtomSet::EMPTY]);
    for &i in family {
        let mut next = acc;
        for x in acc.iter() {
            for y in i.iter() {
                next.insert(x.union(y));
            }
        }
        acc = next;
    }
    acc
}

/// Smallest ideal containing every member, by closing the union under
/// down-sets and binary joins until stable.
pub fn ideal_generated(l: &FiniteLca, family: &[ElementSet]) -> ElementSet {
    let mut s = family
        .iter()
        .fold(ElementSet::from_elements([AtomSet::EMPTY]), |a, b| {
            a.union(*b)
        });
    loop {
        let mut next = s;
        for a in s.iter() {
            for b in s.iter() {
                next.insert(a.union(b));
            }
            for &b in l.elements() {
                if b.is_subset(a) {
                    next.insert(b);
                }
            }
        }
        if next == s {
            return s;
        }
        s = next;
    }
}

/// Frame laws over every subfamily of the delta-ideal lattice.
pub fn check_frame(l: &FiniteLca) -> Result<Report> {
    if l.atom_count() > FRAME_ATOM_LIMIT {
        return Err(Error::SizeLimit {
            what: "frame check".into(),
            got: l.atom_count(),
            limit: FRAME_ATOM_LIMIT,
        });
    }
    let ideals = delta_ideals(l);
    let family = |mask: u64| -> Vec<ElementSet> {
        ideals
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| *s)
            .collect()
    };
    let count = 1u64 << ideals.len();
    let rs = |s: ElementSet| l.render_set(s);
    let mut r = Report::new("frame");

    let mut closed = Check::pass("closed");
    let mut formula = Check::pass("join-formula");
    let mut lub = Check::pass("least-upper-bound");
    'families: for mask in 0..count {
        let fam = family(mask);
        let j = ideal_join_many(l, &fam)?;
        if !is_delta_ideal(l, j) {
            closed = Check::fail("closed").with_witness("join", rs(j));
            break 'families;
        }
        let g = ideal_generated(l, &fam);
        if g != j && formula.status == Status::Pass {
            formula = Check::fail("join-formula")
                .with_witness("formula", rs(j))
                .with_witness("generated", rs(g));
        }
        let above: Vec<ElementSet> = ideals
            .iter()
            .copied()
            .filter(|u| fam.iter().all(|m| m.is_subset(*u)))
            .collect();
        let least = fam.iter().all(|m| m.is_subset(j)) && above.iter().all(|u| j.is_subset(*u));
        if !least && lub.status == Status::Pass {
            lub = Check::fail("least-upper-bound").with_witness("join", rs(j));
        }
    }
    for &a in &ideals {
        for &b in &ideals {
            let m = ideal_meet(l, a, b)?;
            if !is_delta_ideal(l, m) && !closed.status.is_fail() {
                closed = Check::fail("closed").with_witness("meet", rs(m));
            }
        }
    }

    let mut idem = Check::pass("idempotence");
    for &a in &ideals {
        if ideal_meet(l, a, a)? != a || ideal_join(l, a, a)? != a {
            idem = Check::fail("idempotence").with_witness("I", rs(a));
            break;
        }
    }

    let mut dist = Check::pass("distributivity");
    'dist: for &a in &ideals {
        for mask in 0..count {
            let fam = family(mask);
            let lhs = ideal_meet(l, a, ideal_join_many(l, &fam)?)?;
            let meets = fam
                .iter()
                .map(|&s| ideal_meet(l, a, s))
                .collect::<Result<Vec<_>>>()?;
            let rhs = ideal_join_many(l, &meets)?;
            if lhs != rhs {
                dist = Check::fail("distributivity")
                    .with_witness("a", rs(a))
                    .with_witness("lhs", rs(lhs))
                    .with_witness("rhs", rs(rhs));
                break 'dist;
            }
        }
    }

    for c in [closed, formula, lub, idem, dist] {
        r.push(c.with_note(format!(
            "{} delta-ideals, {count} subfamilies",
            ideals.len()
        )));
    }
    Ok(r)
}

/// Outcome of a primality test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeVerdict {
    Prime,
    /// The largest delta-ideal, excluded by definition.
    Top,
    NotDeltaIdeal,
    /// Two delta-ideals, both different from `J`, meeting in `J`.
    Split(ElementSet, ElementSet),
}

impl PrimeVerdict {
    pub fn is_prime(&self) -> bool {
        *self == PrimeVerdict::Prime
    }
}

/// Exhaustive pair scan over the delta-ideal lattice.
pub fn prime_verdict(l: &FiniteLca, j: ElementSet) -> PrimeVerdict {
    if !is_delta_ideal(l, j) {
        return PrimeVerdict::NotDeltaIdeal;
    }
    if j == top_ideal(l) {
        return PrimeVerdict::Top;
    }
    let ideals = delta_ideals(l);
    for &a in &ideals {
        for &b in &ideals {
            if a.intersection(b) == j && a != j && b != j {
                return PrimeVerdict::Split(a, b);
            }
        }
    }
    PrimeVerdict::Prime
}

pub fn is_prime_delta_ideal(l: &FiniteLca, j: ElementSet) -> bool {
    prime_verdict(l, j).is_prime()
}

pub fn prime_delta_ideals(l: &FiniteLca) -> Vec<ElementSet> {
    delta_ideals(l)
        .into_iter()
        .filter(|&j| is_prime_delta_ideal(l, j))
        .collect()
}

/// Bounded elements outside the cluster.
pub fn cluster_to_prime(l: &FiniteLca, sigma: ElementSet) -> ElementSet {
    l.bounded_set().difference(sigma)
}

/// The unique bounded cluster whose trace is the complement of `j` in the
/// bounded elements.
pub fn prime_to_cluster(l: &FiniteLca, j: ElementSet) -> Result<ElementSet> {
    if !is_prime_delta_ideal(l, j) {
        return Err(Error::Contract(format!(
            "{} is not a prime delta-ideal",
            l.render_set(j)
        )));
    }
    let wanted = l.bounded_set().difference(j);
    if *l.bounded() == Bounded::All {
        if crate::clusters::is_cluster(l, wanted, ContactMode::Alexandroff) {
            return Ok(wanted);
        }
        return Err(Error::Contract(format!(
            "complement of {} is not a cluster",
            l.render_set(j)
        )));
    }
    let matches: Vec<ElementSet> = bounded_clusters(l)?
        .into_iter()
        .filter(|&s| trace(l, s) == wanted)
        .collect();
    match matches.as_slice() {
        [s] => Ok(*s),
        [] => Err(Error::Contract(format!(
            "no cluster has trace {}",
            l.render_set(wanted)
        ))),
        _ => Err(Error::Contract(format!(
            "several clusters have trace {}",
            l.render_set(wanted)
        ))),
    }
}

/// Both round trips between bounded clusters and prime delta-ideals.
pub fn check_prime_correspondence(l: &FiniteLca) -> Result<Report> {
    let clusters = bounded_clusters(l)?;
    let primes = prime_delta_ideals(l);
    let mut r = Report::new("prime-correspondence");

    let mut forward = Check::pass("cluster-to-prime-to-cluster");
    for &s in &clusters {
        let j = cluster_to_prime(l, s);
        let ok = is_prime_delta_ideal(l, j) && prime_to_cluster(l, j).ok() == Some(s);
        if !ok {
            forward = Check::fail("cluster-to-prime-to-cluster")
                .with_witness("sigma", cluster_label(l, s));
            break;
        }
    }
    let mut backward = Check::pass("prime-to-cluster-to-prime");
    for &j in &primes {
        let ok = prime_to_cluster(l, j).map(|s| cluster_to_prime(l, s)).ok() == Some(j);
        if !ok {
            backward = Check::fail("prime-to-cluster-to-prime").with_witness("J", l.render_set(j));
            break;
        }
    }
    let note = format!(
        "{} bounded clusters, {} prime delta-ideals",
        clusters.len(),
        primes.len()
    );
    let counts = Check::new("counts", Status::from_bool(clusters.len() == primes.len()));
    for c in [forward, backward, counts] {
        r.push(c.with_note(note.clone()));
    }
    Ok(r)
}

/// Every element is the join of the bounded elements way below it.
pub fn check_eq_sup_bounded(l: &FiniteLca) -> Report {
    let mut r = Report::new("sup-bounded");
    let mut check = Check::pass("sup-bounded");
    for &a in l.elements() {
        let join = principal_delta_ideal(l, a)
            .iter()
            .fold(AtomSet::EMPTY, |acc, b| acc.union(b));
        if join != a {
            check = Check::fail("sup-bounded")
                .with_witness("a", l.render(&a))
                .with_witness("join", l.render(&join));
            break;
        }
    }
    r.push(check);
    r
}

/// Tail form of [`check_eq_sup_bounded`]. Every member of `I_a` is below
/// `a`; and for every sampled `c` not above `a`, the first point of `a - c`
/// is a singleton in `I_a` outside `c`, so `c` is not an upper bound.
pub fn check_tail_eq_sup_bounded(t: &TailLca) -> Report {
    let mut r = Report::new("sup-bounded");
    let k = t.branches();
    let mut upper = Check::new("sup-bounded:upper-bound", Status::SampledPass);
    let mut least = Check::pass("sup-bounded:least")
        .with_note("closed form: singletons of points of a are bounded and way below a");
    'outer: for a in t.sample() {
        let ia = DeltaIdeal::Principal(a.clone());
        for b in t.sample() {
            if ia.contains_tail(t, b) && !t.leq(b, a) {
                upper = Check::fail("sup-bounded:upper-bound")
                    .with_witness("a", a.to_string())
                    .with_witness("b", b.to_string());
                break 'outer;
            }
        }
        for c in t.sample().iter().filter(|c| !t.leq(a, c)) {
            let gap = t.meet(a, &t.complement(c));
            let certified = gap.first_point().is_some_and(|(br, i)| {
                let p = TailElem::point(k, br, i);
                ia.contains_tail(t, &p) && !t.leq(&p, c)
            });
            if !certified {
                least = Check::fail("sup-bounded:least")
                    .with_witness("a", a.to_string())
                    .with_witness("c", c.to_string());
                break 'outer;
            }
        }
    }
    r.push(upper);
    r.push(least);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FiniteCarrier;

    fn xy() -> FiniteLca {
        FiniteLca::overlap(FiniteCarrier::new(["x", "y"]).unwrap())
    }

    fn set(elems: &[u64]) -> ElementSet {
        ElementSet::from_elements(elems.iter().map(|&e| AtomSet(e)))
    }

    #[test]
    fn principal_is_down_set_under_overlap() {
        for n in 0..=4 {
            let l = FiniteLca::overlap(FiniteCarrier::with_size(n).unwrap());
            for &a in l.elements() {
                assert_eq!(principal_delta_ideal(&l, a), down_set(&l, a));
            }
        }
    }

    #[test]
    fn small_delta_ideals() {
        let l = FiniteLca::overlap(FiniteCarrier::new(["x", "y", "z"]).unwrap());
        assert!(is_delta_ideal(&l, set(&[0, 1])));
        let full = FiniteLca::full_adjacency(FiniteCarrier::new(["p", "q"]).unwrap());
        let v = delta_ideal_violation(&full, set(&[0, 1])).unwrap();
        assert_eq!(v.id, "interpolation");
        assert_eq!(v.witness_value("a"), Some("{p}"));
    }

    #[test]
    fn joins_and_meets() {
        let l = xy();
        let ix = principal_delta_ideal(&l, AtomSet(1));
        let iy = principal_delta_ideal(&l, AtomSet(2));
        assert_eq!(
            ideal_join(&l, ix, iy).unwrap(),
            principal_delta_ideal(&l, AtomSet(3))
        );
        assert_eq!(ideal_meet(&l, ix, iy).unwrap(), set(&[0]));
        assert_eq!(ideal_join_many(&l, &[]).unwrap(), set(&[0]));
        assert!(matches!(
            ideal_meet(&l, set(&[1]), ix),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn frame_laws() {
        for n in 0..=3 {
            let l = FiniteLca::overlap(FiniteCarrier::with_size(n).unwrap());
            let r = check_frame(&l).unwrap();
            assert!(r.passed(), "n={n}: {r:?}");
        }
        assert_eq!(delta_ideals(&xy()).len(), 4);
    }

    #[test]
    fn primes_on_two_atoms() {
        let l = xy();
        let iy = principal_delta_ideal(&l, AtomSet(2));
        assert_eq!(iy, set(&[0, 2]));
        assert!(is_prime_delta_ideal(&l, iy));
        assert_eq!(prime_to_cluster(&l, iy).unwrap(), set(&[1, 3]));
        assert_eq!(cluster_to_prime(&l, set(&[1, 3])), iy);
        assert_eq!(prime_verdict(&l, l.all_elements()), PrimeVerdict::Top);
        assert!(matches!(
            prime_verdict(&l, set(&[0])),
            PrimeVerdict::Split(_, _)
        ));
        assert!(prime_to_cluster(&l, set(&[0])).is_err());
        assert!(check_prime_correspondence(&l).unwrap().passed());
    }

    #[test]
    fn degenerate_has_no_primes() {
        let l = FiniteLca::overlap(FiniteCarrier::with_size(0).unwrap());
        assert!(prime_delta_ideals(&l).is_empty());
        assert!(check_prime_correspondence(&l).unwrap().passed());
    }

    #[test]
    fn sup_bounded() {
        for n in 0..=4 {
            let l = FiniteLca::overlap(FiniteCarrier::with_size(n).unwrap());
            assert!(check_eq_sup_bounded(&l).passed());
        }
        for k in [1, 2] {
            let t = TailLca::standard(k, 5).unwrap();
            let r = check_tail_eq_sup_bounded(&t);
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.status_of("sup-bounded:least"), Status::Pass);
        }
    }
}
