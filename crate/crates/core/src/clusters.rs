//! Clusters: nonempty element sets that are pairwise in contact (K1), prime
//! (K2) and closed under "touches every member" (K3).
//!
//! On finite carriers clusters are [`ElementSet`]s and every decision is
//! exact. On tail carriers they are described by a [`TailFamily`]; point
//! and infinity families are decided in closed form, other shapes are
//! refuted against the sample where a sound refutation exists.

use std::collections::BTreeSet;

use crate::algebra::{AtomSet, BooleanAlgebra, ElementSet, TailElem};
use crate::axioms::ca_checks;
use crate::contact::{Bounded, ContactMode, FiniteLca, Structure, TailLca};
use crate::error::{Error, Result};
use crate::report::{Check, Report, Status};

/// Largest carrier cluster enumeration accepts without an explicit limit.
pub const CLUSTER_ATOM_LIMIT: usize = 4;

/// A validated cluster of either carrier family.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Cluster {
    Explicit(ElementSet),
    /// Every element containing point `index` of `branch`.
    Point {
        branch: usize,
        index: u32,
    },
    /// Every unbounded element.
    Infinity,
}

/// First violated cluster condition, as a failing check named after it, or
/// `None` when `set` is a cluster.
pub fn cluster_violation(l: &FiniteLca, set: ElementSet, mode: ContactMode) -> Option<Check> {
    let render = |a: AtomSet| l.render(&a);
    if set.is_empty() {
        return Some(Check::fail("nonempty"));
    }
    for a in set.iter() {
        let row = l.contact_row_in(a, mode);
        if let Some(b) = set.difference(row).iter().next() {
            return Some(
                Check::fail("K1")
                    .with_witness("a", render(a))
                    .with_witness("b", render(b)),
            );
        }
    }
    for &a in l.elements() {
        for &b in l.elements() {
            if set.contains(a.union(b)) && !set.contains(a) && !set.contains(b) {
                return Some(
                    Check::fail("K2")
                        .with_witness("a", render(a))
                        .with_witness("b", render(b)),
                );
            }
        }
    }
    for &a in l.elements() {
        if !set.contains(a) && set.is_subset(l.contact_row_in(a, mode)) {
            return Some(Check::fail("K3").with_witness("a", render(a)));
        }
    }
    None
}

pub fn is_cluster(l: &FiniteLca, set: ElementSet, mode: ContactMode) -> bool {
    cluster_violation(l, set, mode).is_none()
}

fn guard(l: &FiniteLca, limit: usize) -> Result<()> {
    if l.atom_count() > limit {
        return Err(Error::SizeLimit {
            what: "cluster enumeration".into(),
            got: l.atom_count(),
            limit,
        });
    }
    Ok(())
}

/// Every subset of the carrier tested directly. Exponential in `2^n`.
pub fn naive_clusters(l: &FiniteLca, mode: ContactMode) -> Result<Vec<ElementSet>> {
    guard(l, CLUSTER_ATOM_LIMIT)?;
    let count = 1u64 << l.elements().len();
    Ok((0..count)
        .map(ElementSet)
        .filter(|&s| is_cluster(l, s, mode))
        .collect())
}

pub fn enumerate_clusters(l: &FiniteLca, mode: ContactMode) -> Result<Vec<ElementSet>> {
    enumerate_clusters_up_to(l, mode, CLUSTER_ATOM_LIMIT)
}

/// Clusters in increasing [`ElementSet`] order, so point clusters follow
/// atom order.
///
/// When (C2)-(C4) hold every cluster is the set of elements meeting some
/// nonempty clique of atoms, and only those candidates are tested.
/// Otherwise this falls back to [`naive_clusters`].
pub fn enumerate_clusters_up_to(
    l: &FiniteLca,
    mode: ContactMode,
    limit: usize,
) -> Result<Vec<ElementSet>> {
    guard(l, limit)?;
    let ca = ca_checks(l, mode);
    let usable = ca
        .iter()
        .filter(|c| c.id == "C2" || c.id == "C4")
        .all(|c| !c.status.is_fail());
    if !usable {
        return naive_clusters(l, mode);
    }
    let n = l.atom_count();
    let mut out = Vec::new();
    for s in 1..(1u64 << n) {
        let s = AtomSet(s);
        let clique = s.atoms().all(|i| {
            s.atoms()
                .all(|j| l.contact(mode, &AtomSet::singleton(i), &AtomSet::singleton(j)))
        });
        if !clique {
            continue;
        }
        let sigma =
            ElementSet::from_elements(l.elements().iter().copied().filter(|a| a.intersects(s)));
        if is_cluster(l, sigma, mode) {
            out.push(sigma);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Clusters of the Alexandroff extension that contain a bounded element.
pub fn bounded_clusters(l: &FiniteLca) -> Result<Vec<ElementSet>> {
    Ok(enumerate_clusters(l, ContactMode::Alexandroff)?
        .into_iter()
        .filter(|s| s.intersects(l.bounded_set()))
        .collect())
}

/// The unbounded elements, validated as a cluster of the Alexandroff
/// extension.
pub fn sigma_infinity(l: &FiniteLca) -> Result<ElementSet> {
    if l.top_bounded() {
        return Err(Error::Precondition(
            "1 is bounded, so there is no cluster at infinity".into(),
        ));
    }
    let s = l.all_elements().difference(l.bounded_set());
    match cluster_violation(l, s, ContactMode::Alexandroff) {
        None => Ok(s),
        Some(v) => Err(Error::Contract(format!(
            "the unbounded elements fail {} as a cluster",
            v.id
        ))),
    }
}

/// Elements containing `atom`.
pub fn point_cluster(l: &FiniteLca, atom: usize) -> Result<ElementSet> {
    if atom >= l.atom_count() {
        return Err(Error::Malformed(format!("no atom with index {atom}")));
    }
    Ok(ElementSet::from_elements(
        l.elements().iter().copied().filter(|a| a.contains(atom)),
    ))
}

/// `σ` followed by the atoms the cluster contains, e.g. `σ{x}`.
pub fn cluster_label(l: &FiniteLca, set: ElementSet) -> String {
    let atoms = (0..l.atom_count())
        .filter(|&i| set.contains(AtomSet::singleton(i)))
        .fold(AtomSet::EMPTY, |acc, i| acc.union(AtomSet::singleton(i)));
    format!("σ{}", l.render(&atoms))
}

/// Bounded members.
pub fn trace(l: &FiniteLca, set: ElementSet) -> ElementSet {
    set.intersection(l.bounded_set())
}

/// In a normal contact structure, every `a` outside a cluster is way below
/// some `b` outside it. Each cluster's check lists the chosen `b` per `a`.
pub fn check_fed1(l: &FiniteLca) -> Result<Report> {
    let mut r = Report::new("fed1");
    if !crate::axioms::nca_checks(l, ContactMode::Rho)
        .iter()
        .all(|c| !c.status.is_fail())
    {
        r.push(Check::skipped(
            "fed1",
            "structure is not a normal contact structure",
        ));
        return Ok(r);
    }
    let clusters = enumerate_clusters(l, ContactMode::Rho)?;
    if clusters.is_empty() {
        r.push(Check::pass("fed1").with_note("no clusters"));
        return Ok(r);
    }
    for sigma in clusters {
        let id = format!("fed1:{}", cluster_label(l, sigma));
        let mut check = Check::pass(&id);
        for &a in l.elements().iter().filter(|a| !sigma.contains(**a)) {
            let b = l
                .elements()
                .iter()
                .find(|b| !sigma.contains(**b) && l.way_below(ContactMode::Rho, &a, b));
            match b {
                Some(b) => check = check.with_witness(l.render(&a), l.render(b)),
                None => {
                    check = Check::fail(&id).with_witness("a", l.render(&a));
                    break;
                }
            }
        }
        r.push(check);
    }
    Ok(r)
}

/// Distinct clusters of the Alexandroff extension have distinct bounded
/// traces.
pub fn check_cluster_trace_uniqueness(l: &FiniteLca) -> Result<Report> {
    let clusters = enumerate_clusters(l, ContactMode::Alexandroff)?;
    let mut r = Report::new("trace-uniqueness");
    let mut check = Check::pass("trace-uniqueness");
    'outer: for (i, s1) in clusters.iter().enumerate() {
        for s2 in &clusters[i + 1..] {
            if trace(l, *s1) == trace(l, *s2) {
                check = Check::fail("trace-uniqueness")
                    .with_witness("sigma1", cluster_label(l, *s1))
                    .with_witness("sigma2", cluster_label(l, *s2));
                break 'outer;
            }
        }
    }
    let traces: BTreeSet<ElementSet> = clusters.iter().map(|s| trace(l, *s)).collect();
    r.push(check.with_note(format!(
        "{} clusters, {} distinct traces",
        clusters.len(),
        traces.len()
    )));
    Ok(r)
}

// ---------------------------------------------------------------------------
// Tail carriers
// ---------------------------------------------------------------------------

/// A candidate cluster on a tail carrier, given by a membership rule.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailFamily {
    Point {
        branch: usize,
        index: u32,
    },
    /// Unbounded elements.
    Infinity,
    /// Elements cofinite on at least one of the listed branches.
    CofiniteOnAny(BTreeSet<usize>),
    /// Elements cofinite on every listed branch.
    CofiniteOnAll(BTreeSet<usize>),
    /// Exactly the listed elements.
    Explicit(Vec<TailElem>),
}

impl TailFamily {
    pub fn contains(&self, t: &TailLca, a: &TailElem) -> bool {
        match self {
            TailFamily::Point { branch, index } => a.contains_point(*branch, *index),
            TailFamily::Infinity => !t.is_bounded(a),
            TailFamily::CofiniteOnAny(s) => s.iter().any(|&b| a.parts[b].cofinite),
            TailFamily::CofiniteOnAll(s) => s.iter().all(|&b| a.parts[b].cofinite),
            TailFamily::Explicit(v) => v.contains(a),
        }
    }

    /// True when every member is unbounded, decided from the shape.
    fn all_unbounded(&self, t: &TailLca) -> bool {
        if *t.bounded() == Bounded::All {
            return false;
        }
        match self {
            TailFamily::Infinity => true,
            TailFamily::CofiniteOnAny(_) => true,
            TailFamily::CofiniteOnAll(s) => !s.is_empty(),
            TailFamily::Explicit(v) => v.iter().all(|a| !t.is_bounded(a)),
            TailFamily::Point { .. } => false,
        }
    }

    pub fn label(&self) -> String {
        let list = |s: &BTreeSet<usize>| {
            s.iter()
                .map(|b| b.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        match self {
            TailFamily::Point { branch, index } => format!("σ({branch},{index})"),
            TailFamily::Infinity => "σ∞".into(),
            TailFamily::CofiniteOnAny(s) => format!("cofinite-on-any{{{}}}", list(s)),
            TailFamily::CofiniteOnAll(s) => format!("cofinite-on-all{{{}}}", list(s)),
            TailFamily::Explicit(v) => format!("explicit[{}]", v.len()),
        }
    }

    fn validate(&self, t: &TailLca) -> Result<()> {
        let k = t.branches();
        let bad = match self {
            TailFamily::Point { branch, .. } => *branch >= k,
            TailFamily::CofiniteOnAny(s) | TailFamily::CofiniteOnAll(s) => {
                s.iter().any(|&b| b >= k)
            }
            TailFamily::Explicit(v) => v.iter().any(|a| a.branches() != k),
            TailFamily::Infinity => false,
        };
        if bad {
            Err(Error::Malformed(format!(
                "{} does not fit a carrier with {k} branches",
                self.label()
            )))
        } else {
            Ok(())
        }
    }
}

/// Elements the sampled checks range over: the structure's sample plus the
/// listed elements of an explicit family.
fn tail_pool(t: &TailLca, fam: &TailFamily) -> Vec<TailElem> {
    let mut pool: Vec<TailElem> = t.sample().to_vec();
    if let TailFamily::Explicit(v) = fam {
        for a in v {
            if !pool.contains(a) {
                pool.push(a.clone());
            }
        }
    }
    pool
}

/// Cluster decision on a tail carrier. Returns a check named after the
/// first violated condition, or `cluster` on success. Point families and
/// the infinity family are decided in closed form; other shapes are
/// refuted on the sample and otherwise reported as a sampled pass.
pub fn tail_cluster_check(t: &TailLca, fam: &TailFamily, mode: ContactMode) -> Result<Check> {
    fam.validate(t)?;
    let k = t.branches();
    let r = |a: &TailElem| a.to_string();
    match fam {
        TailFamily::Point { .. } => {
            return Ok(Check::pass("cluster").with_note(
                "closed form: members share the point, and a touches the point's singleton iff it contains the point",
            ));
        }
        TailFamily::Infinity if *t.bounded() == Bounded::FiniteElements => {
            if mode == ContactMode::Rho && k >= 2 {
                let e0 = t.full_branch(0);
                let e1 = t.full_branch(1);
                return Ok(Check::fail("K1")
                    .with_witness("a", r(&e0))
                    .with_witness("b", r(&e1)));
            }
            return Ok(Check::pass("cluster").with_note(
                "closed form: unbounded elements touch, joins of bounded elements are bounded, and a bounded a misses its unbounded complement",
            ));
        }
        TailFamily::Infinity => {
            return Ok(Check::fail("nonempty").with_note("every element is bounded"))
        }
        _ => {}
    }
    let pool = tail_pool(t, fam);
    let members: Vec<&TailElem> = pool.iter().filter(|a| fam.contains(t, a)).collect();
    if members.is_empty() {
        if let TailFamily::Explicit(v) = fam {
            if v.is_empty() {
                return Ok(Check::fail("nonempty"));
            }
        }
        if !fam.contains(t, &t.top()) {
            return Ok(Check::fail("nonempty").with_note("1 is not a member, so no element is"));
        }
    }
    for a in &members {
        for b in &members {
            if !t.contact(mode, a, b) {
                return Ok(Check::fail("K1")
                    .with_witness("a", r(a))
                    .with_witness("b", r(b)));
            }
        }
    }
    for a in &pool {
        for b in &pool {
            if fam.contains(t, &t.join(a, b)) && !fam.contains(t, a) && !fam.contains(t, b) {
                return Ok(Check::fail("K2")
                    .with_witness("a", r(a))
                    .with_witness("b", r(b)));
            }
        }
    }
    // Sound K3 refutations: an unbounded non-member when every member is
    // unbounded (Alexandroff mode), or any non-member touching every listed
    // element of an explicit family.
    if mode == ContactMode::Alexandroff && fam.all_unbounded(t) {
        let mut candidates: Vec<TailElem> = (0..k).map(|b| t.full_branch(b)).collect();
        candidates.extend(pool.iter().cloned());
        if let Some(a) = candidates
            .iter()
            .find(|a| !t.is_bounded(a) && !fam.contains(t, a))
        {
            return Ok(Check::fail("K3").with_witness("a", r(a)).with_note(
                "every member is unbounded, so every unbounded element touches all of them",
            ));
        }
    }
    if let TailFamily::Explicit(v) = fam {
        let mut candidates = vec![t.top()];
        candidates.extend(pool.iter().cloned());
        if let Some(a) = candidates
            .iter()
            .find(|a| !fam.contains(t, a) && v.iter().all(|m| t.contact(mode, a, m)))
        {
            return Ok(Check::fail("K3").with_witness("a", r(a)));
        }
    }
    Ok(
        Check::new("cluster", Status::SampledPass).with_note(format!(
            "no counterexample among {} sampled elements",
            pool.len()
        )),
    )
}

/// The family at infinity, validated in the Alexandroff extension.
pub fn tail_sigma_infinity(t: &TailLca) -> Result<TailFamily> {
    if t.top_bounded() {
        return Err(Error::Precondition(
            "1 is bounded, so there is no cluster at infinity".into(),
        ));
    }
    let c = tail_cluster_check(t, &TailFamily::Infinity, ContactMode::Alexandroff)?;
    if c.status.is_fail() {
        return Err(Error::Contract(format!("σ∞ fails {}", c.id)));
    }
    Ok(TailFamily::Infinity)
}

pub fn tail_point_cluster(t: &TailLca, branch: usize, index: u32) -> Result<TailFamily> {
    let f = TailFamily::Point { branch, index };
    f.validate(t)?;
    Ok(f)
}

/// Point clusters have pairwise distinct traces (the trace of `σ(b,i)`
/// holds the singleton of `(b,i)` and no other singleton), and the trace of
/// the cluster at infinity is empty.
pub fn check_tail_trace_uniqueness(t: &TailLca) -> Report {
    let mut r = Report::new("trace-uniqueness");
    let mut check = Check::pass("trace-uniqueness:points")
        .with_note("closed form: a singleton lies in exactly one point cluster");
    'outer: for b in 0..t.branches() {
        for i in 0..4u32 {
            let single = t.point(b, i);
            for b2 in 0..t.branches() {
                for i2 in 0..4u32 {
                    let member = TailFamily::Point {
                        branch: b2,
                        index: i2,
                    }
                    .contains(t, &single);
                    if member != ((b, i) == (b2, i2)) {
                        check = Check::fail("trace-uniqueness:points")
                            .with_witness("a", single.to_string());
                        break 'outer;
                    }
                }
            }
        }
    }
    r.push(check);
    let inf = if t.top_bounded() {
        Check::skipped("trace-uniqueness:infinity", "1 is bounded")
    } else {
        Check::pass("trace-uniqueness:infinity").with_note("closed form: σ∞ has no bounded member")
    };
    r.push(inf);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{FiniteCarrier, Part};
    use crate::contact::tail_on_branch;

    fn xy() -> FiniteLca {
        FiniteLca::overlap(FiniteCarrier::new(["x", "y"]).unwrap())
    }

    fn set(elems: &[u64]) -> ElementSet {
        ElementSet::from_elements(elems.iter().map(|&e| AtomSet(e)))
    }

    #[test]
    fn sigma_x_is_a_cluster() {
        let l = xy();
        assert!(is_cluster(&l, set(&[1, 3]), ContactMode::Rho));
        let v = cluster_violation(&l, set(&[1, 2, 3]), ContactMode::Rho).unwrap();
        assert_eq!(v.id, "K1");
        assert_eq!(v.witness_value("a"), Some("{x}"));
        assert_eq!(v.witness_value("b"), Some("{y}"));
        assert_eq!(
            cluster_violation(&l, ElementSet::EMPTY, ContactMode::Rho)
                .unwrap()
                .id,
            "nonempty"
        );
    }

    #[test]
    fn small_enumerations() {
        let l = xy();
        assert_eq!(
            enumerate_clusters(&l, ContactMode::Rho).unwrap(),
            vec![set(&[1, 3]), set(&[2, 3])]
        );
        let one = FiniteLca::overlap(FiniteCarrier::new(["x"]).unwrap());
        assert_eq!(
            enumerate_clusters(&one, ContactMode::Rho).unwrap(),
            vec![set(&[1])]
        );
        let full = FiniteLca::full_adjacency(FiniteCarrier::new(["p", "q"]).unwrap());
        assert_eq!(
            enumerate_clusters(&full, ContactMode::Rho).unwrap(),
            vec![set(&[1, 2, 3])]
        );
        let empty = FiniteLca::overlap(FiniteCarrier::with_size(0).unwrap());
        assert!(enumerate_clusters(&empty, ContactMode::Rho)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn size_guard() {
        let l = FiniteLca::overlap(FiniteCarrier::with_size(5).unwrap());
        assert!(matches!(
            enumerate_clusters(&l, ContactMode::Rho),
            Err(Error::SizeLimit { .. })
        ));
        assert_eq!(
            enumerate_clusters_up_to(&l, ContactMode::Rho, 5)
                .unwrap()
                .len(),
            5
        );
    }

    #[test]
    fn bounded_and_points() {
        let l = xy();
        assert_eq!(bounded_clusters(&l).unwrap().len(), 2);
        assert_eq!(point_cluster(&l, 0).unwrap(), set(&[1, 3]));
        assert!(matches!(sigma_infinity(&l), Err(Error::Precondition(_))));
        assert_eq!(cluster_label(&l, set(&[1, 3])), "σ{x}");
    }

    #[test]
    fn fed1_witness() {
        let l = xy();
        let r = check_fed1(&l).unwrap();
        let c = r.get("fed1:σ{x}").unwrap();
        assert_eq!(c.status, Status::Pass);
        assert_eq!(c.witness_value("{y}"), Some("{y}"));
        let z = FiniteLca::overlap(FiniteCarrier::with_size(0).unwrap());
        assert!(check_fed1(&z).unwrap().passed());
    }

    #[test]
    fn trace_uniqueness_three_atoms() {
        let l = FiniteLca::overlap(FiniteCarrier::new(["x", "y", "z"]).unwrap());
        let r = check_cluster_trace_uniqueness(&l).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.checks[0].note.as_deref(),
            Some("3 clusters, 3 distinct traces")
        );
    }

    #[test]
    fn tail_families() {
        let t1 = TailLca::standard(1, 0).unwrap();
        assert_eq!(tail_sigma_infinity(&t1).unwrap(), TailFamily::Infinity);
        let t2 = TailLca::standard(2, 0).unwrap();
        let inf = tail_cluster_check(&t2, &TailFamily::Infinity, ContactMode::Alexandroff).unwrap();
        assert_eq!(inf.status, Status::Pass);
        let inf_rho = tail_cluster_check(&t2, &TailFamily::Infinity, ContactMode::Rho).unwrap();
        assert_eq!(inf_rho.id, "K1");
        let only0 = TailFamily::CofiniteOnAny([0].into());
        let c = tail_cluster_check(&t2, &only0, ContactMode::Alexandroff).unwrap();
        assert_eq!(c.id, "K3");
        assert_eq!(
            c.witness_value("a"),
            Some(t2.full_branch(1).to_string().as_str())
        );
        let all = TailFamily::CofiniteOnAll([0, 1].into());
        let c = tail_cluster_check(&t2, &all, ContactMode::Alexandroff).unwrap();
        assert_eq!(c.id, "K2");
        let any_all = TailFamily::CofiniteOnAny([0, 1].into());
        let c = tail_cluster_check(&t2, &any_all, ContactMode::Alexandroff).unwrap();
        assert_eq!(c.status, Status::SampledPass);
    }

    #[test]
    fn tail_explicit_family_refuted() {
        let t = TailLca::standard(1, 0).unwrap();
        let fam = TailFamily::Explicit(vec![t.top()]);
        let c = tail_cluster_check(&t, &fam, ContactMode::Alexandroff).unwrap();
        assert!(c.status.is_fail());
        let fam = TailFamily::Explicit(vec![tail_on_branch(1, 0, Part::finite([2]))]);
        assert_eq!(
            tail_cluster_check(&t, &fam, ContactMode::Rho).unwrap().id,
            "K3"
        );
    }

    #[test]
    fn tail_traces() {
        let t = TailLca::standard(2, 0).unwrap();
        assert!(check_tail_trace_uniqueness(&t).passed());
        assert!(tail_point_cluster(&t, 2, 0).is_err());
    }
}
