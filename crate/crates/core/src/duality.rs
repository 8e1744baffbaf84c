//! Object-level duality between finite discrete spaces and finite local
//! contact structures, plus the symbolic dual of the tail carrier.
//!
//! A space goes to the algebra of its subsets under overlap contact
//! ([`psi_t`]); a structure goes to the space of its bounded clusters
//! ([`psi_a`]). [`lambda_g`] sends an element to the clusters containing it,
//! and [`iota`] extends that to delta-ideals.

use std::collections::BTreeSet;

use crate::algebra::{
    AtomSet, BooleanAlgebra, ElementSet, FiniteCarrier, Part, TailElem, MAX_ATOMS,
};
use crate::axioms::{lca_checks, nca_checks};
use crate::clusters::{
    bounded_clusters, cluster_label, tail_cluster_check, tail_sigma_infinity, TailFamily,
};
use crate::contact::{ContactMode, FiniteLca, Structure, TailLca};
use crate::error::{Error, Result};
use crate::ideals::{delta_ideals, principal_delta_ideal};
use crate::report::{Check, Report, Status};

/// A finite discrete space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteSpace {
    points: Vec<String>,
}

impl FiniteSpace {
    pub fn new<I, S>(points: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let points: Vec<String> = points.into_iter().map(Into::into).collect();
        let mut seen = BTreeSet::new();
        for p in &points {
            if !seen.insert(p.as_str()) {
                return Err(Error::Malformed(format!("duplicate point label `{p}`")));
            }
        }
        if points.len() > MAX_ATOMS {
            return Err(Error::SizeLimit {
                what: "finite space".into(),
                got: points.len(),
                limit: MAX_ATOMS,
            });
        }
        Ok(FiniteSpace { points })
    }

    /// Points named `p0, p1, ...`.
    pub fn with_size(n: usize) -> Result<Self> {
        FiniteSpace::new((0..n).map(|i| format!("p{i}")))
    }

    pub fn points(&self) -> &[String] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.points.iter().position(|p| p == label)
    }
}

/// A function between finite discrete spaces, given by the index of each
/// point's image.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ContinuousMap {
    source: FiniteSpace,
    target: FiniteSpace,
    table: Vec<usize>,
}

impl ContinuousMap {
    pub fn new(source: FiniteSpace, target: FiniteSpace, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::Malformed(format!(
                "map table has {} entries for {} source points",
                table.len(),
                source.len()
            )));
        }
        if let Some(&bad) = table.iter().find(|&&y| y >= target.len()) {
            return Err(Error::Malformed(format!(
                "map sends a point to index {bad}, target has {} points",
                target.len()
            )));
        }
        Ok(ContinuousMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(x: &FiniteSpace) -> Self {
        ContinuousMap {
            source: x.clone(),
            target: x.clone(),
            table: (0..x.len()).collect(),
        }
    }

    pub fn source(&self) -> &FiniteSpace {
        &self.source
    }

    pub fn target(&self) -> &FiniteSpace {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// Every function from `source` to `target`, read as mixed-radix
    /// numbers with point 0 least significant; the first is constant at the
    /// first target point.
    pub fn all_maps(source: &FiniteSpace, target: &FiniteSpace) -> Vec<ContinuousMap> {
        let n = source.len();
        let m = target.len();
        if n == 0 {
            return vec![ContinuousMap::new(source.clone(), target.clone(), vec![]).unwrap()];
        }
        if m == 0 {
            return vec![];
        }
        let total = m.pow(n as u32);
        (0..total)
            .map(|mut code| {
                let table = (0..n)
                    .map(|_| {
                        let d = code % m;
                        code /= m;
                        d
                    })
                    .collect();
                ContinuousMap {
                    source: source.clone(),
                    target: target.clone(),
                    table,
                }
            })
            .collect()
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &ContinuousMap) -> Result<ContinuousMap> {
        if first.target != self.source {
            return Err(Error::ObjectMismatch(
                "composed maps do not share the middle space".into(),
            ));
        }
        Ok(ContinuousMap {
            source: first.source.clone(),
            target: self.target.clone(),
            table: first.table.iter().map(|&y| self.table[y]).collect(),
        })
    }

    /// Points of the source sent into `set`.
    pub fn preimage(&self, set: AtomSet) -> AtomSet {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &y)| set.contains(y))
            .fold(AtomSet::EMPTY, |acc, (x, _)| {
                acc.union(AtomSet::singleton(x))
            })
    }
}

/// The subset algebra of `x` with overlap contact and everything bounded.
pub fn psi_t(x: &FiniteSpace) -> FiniteLca {
    FiniteLca::overlap(FiniteCarrier::new(x.points.iter().cloned()).expect("labels are distinct"))
}

/// The bounded clusters of a structure, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualSpace {
    points: Vec<ElementSet>,
    origin: FiniteLca,
}

impl DualSpace {
    pub fn points(&self) -> &[ElementSet] {
        &self.points
    }

    pub fn origin(&self) -> &FiniteLca {
        &self.origin
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn labels(&self) -> Vec<String> {
        self.points
            .iter()
            .map(|&s| cluster_label(&self.origin, s))
            .collect()
    }

    pub fn index_of(&self, sigma: ElementSet) -> Option<usize> {
        self.points.iter().position(|&s| s == sigma)
    }

    /// The dual as a finite discrete space labelled by cluster.
    pub fn as_space(&self) -> FiniteSpace {
        FiniteSpace::new(self.labels()).expect("distinct clusters have distinct labels")
    }

    /// Subset of dual points, as a set of point indices.
    pub fn render(&self, s: AtomSet) -> String {
        let labels = self.labels();
        let names: Vec<&str> = s.atoms().map(|i| labels[i].as_str()).collect();
        format!("{{{}}}", names.join(","))
    }
}

fn passes(checks: &[Check]) -> bool {
    checks.iter().all(|c| !c.status.is_fail())
}

/// The space of bounded clusters. Requires the local and normal contact
/// axioms.
pub fn psi_a(l: &FiniteLca) -> Result<DualSpace> {
    if !passes(&lca_checks(l)) {
        return Err(Error::Contract(
            "structure fails the local contact axioms".into(),
        ));
    }
    if !passes(&nca_checks(l, ContactMode::Rho)) {
        return Err(Error::Contract(
            "structure fails the normal contact axioms".into(),
        ));
    }
    Ok(DualSpace {
        points: bounded_clusters(l)?,
        origin: l.clone(),
    })
}

/// Dual points containing `a`, as a set of point indices.
pub fn lambda_g(dual: &DualSpace, a: AtomSet) -> AtomSet {
    dual.points
        .iter()
        .enumerate()
        .filter(|(_, s)| s.contains(a))
        .fold(AtomSet::EMPTY, |acc, (i, _)| {
            acc.union(AtomSet::singleton(i))
        })
}

/// Union of [`lambda_g`] over the members of a delta-ideal.
pub fn iota(dual: &DualSpace, ideal: ElementSet) -> AtomSet {
    ideal
        .iter()
        .fold(AtomSet::EMPTY, |acc, a| acc.union(lambda_g(dual, a)))
}

/// `x ↦ σ_x`, as indices into the dual of [`psi_t`]`(x)`.
pub fn t_map(x: &FiniteSpace) -> Result<Vec<usize>> {
    let l = psi_t(x);
    let dual = psi_a(&l)?;
    (0..x.len())
        .map(|i| {
            let sigma = crate::clusters::point_cluster(&l, i)?;
            dual.index_of(sigma)
                .ok_or_else(|| Error::Contract(format!("σ{{{}}} is not a dual point", x.points[i])))
        })
        .collect()
}

pub fn check_t_bijection(x: &FiniteSpace) -> Result<Report> {
    let t = t_map(x)?;
    let dual = psi_a(&psi_t(x))?;
    let image: BTreeSet<usize> = t.iter().copied().collect();
    let mut r = Report::new("t-bijection");
    r.push(
        Check::new(
            "t-bijection",
            Status::from_bool(image.len() == t.len() && t.len() == dual.len()),
        )
        .with_note(format!("{} points, {} dual points", x.len(), dual.len())),
    );
    Ok(r)
}

/// A Boolean isomorphism between finite structures that preserves contact
/// and boundedness both ways, tabulated by source element index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcaIso {
    source: FiniteLca,
    target: FiniteLca,
    table: Vec<AtomSet>,
}

impl LcaIso {
    pub fn new(source: FiniteLca, target: FiniteLca, table: Vec<AtomSet>) -> Result<Self> {
        let iso = LcaIso {
            source,
            target,
            table,
        };
        if let Some(v) = iso.violations().into_iter().next() {
            return Err(Error::Contract(format!("not an isomorphism: {}", v.id)));
        }
        Ok(iso)
    }

    /// Relabelling of atoms: atom `i` goes to atom `perm[i]`.
    pub fn from_permutation(source: FiniteLca, target: FiniteLca, perm: &[usize]) -> Result<Self> {
        if perm.len() != source.atom_count() || perm.iter().any(|&p| p >= target.atom_count()) {
            return Err(Error::Contract(
                "permutation does not fit the carriers".into(),
            ));
        }
        let table = source
            .elements()
            .iter()
            .map(|a| {
                a.atoms().fold(AtomSet::EMPTY, |acc, i| {
                    acc.union(AtomSet::singleton(perm[i]))
                })
            })
            .collect();
        LcaIso::new(source, target, table)
    }

    pub fn identity(l: &FiniteLca) -> Self {
        LcaIso {
            source: l.clone(),
            target: l.clone(),
            table: l.elements().to_vec(),
        }
    }

    pub fn source(&self) -> &FiniteLca {
        &self.source
    }

    pub fn target(&self) -> &FiniteLca {
        &self.target
    }

    pub fn apply(&self, a: AtomSet) -> AtomSet {
        self.table[a.index()]
    }

    pub fn inverse(&self) -> LcaIso {
        let mut table = vec![AtomSet::EMPTY; self.target.elements().len()];
        for &a in self.source.elements() {
            table[self.apply(a).index()] = a;
        }
        LcaIso {
            source: self.target.clone(),
            target: self.source.clone(),
            table,
        }
    }

    /// Failing checks among: table size, injective, surjective, Boolean
    /// operations, contact, boundedness.
    fn violations(&self) -> Vec<Check> {
        let s = &self.source;
        let t = &self.target;
        let mut out = Vec::new();
        if self.table.len() != s.elements().len()
            || self.table.iter().any(|&b| !t.carrier().contains(b))
        {
            out.push(Check::fail("table"));
            return out;
        }
        let image: BTreeSet<AtomSet> = self.table.iter().copied().collect();
        if image.len() != self.table.len() {
            out.push(Check::fail("injective"));
        }
        if image.len() != t.elements().len() {
            out.push(Check::fail("surjective"));
        }
        out.extend(
            self.operation_checks()
                .into_iter()
                .filter(|c| c.status.is_fail()),
        );
        out
    }

    fn operation_checks(&self) -> Vec<Check> {
        let s = &self.source;
        let t = &self.target;
        let f = |a: AtomSet| self.apply(a);
        let rs = |a: AtomSet| s.render(&a);
        let mut boolean = Check::pass("boolean");
        let mut contact = Check::pass("contact");
        let mut bounded = Check::pass("bounded");
        if f(s.bottom()) != t.bottom() || f(s.top()) != t.top() {
            boolean = Check::fail("boolean").with_note("0 or 1 not preserved");
        }
        for &a in s.elements() {
            if f(s.complement(&a)) != t.complement(&f(a)) && !boolean.status.is_fail() {
                boolean = Check::fail("boolean")
                    .with_witness("a", rs(a))
                    .with_note("complement");
            }
            if s.is_bounded(&a) != t.is_bounded(&f(a)) && !bounded.status.is_fail() {
                bounded = Check::fail("bounded").with_witness("a", rs(a));
            }
            for &b in s.elements() {
                if (f(a.union(b)) != f(a).union(f(b))
                    || f(a.intersection(b)) != f(a).intersection(f(b)))
                    && !boolean.status.is_fail()
                {
                    boolean = Check::fail("boolean")
                        .with_witness("a", rs(a))
                        .with_witness("b", rs(b));
                }
                if s.rho(&a, &b) != t.rho(&f(a), &f(b)) && !contact.status.is_fail() {
                    contact = Check::fail("contact")
                        .with_witness("a", rs(a))
                        .with_witness("b", rs(b));
                }
            }
        }
        vec![boolean, contact, bounded]
    }
}

/// `λ^g` as an isomorphism onto the subset algebra of the dual.
pub fn lambda_iso(dual: &DualSpace) -> Result<LcaIso> {
    let target = psi_t(&dual.as_space());
    let table = dual
        .origin
        .elements()
        .iter()
        .map(|&a| lambda_g(dual, a))
        .collect();
    LcaIso::new(dual.origin.clone(), target, table)
}

/// `λ^g` is injective, onto every subset of the dual, a Boolean map,
/// contact-reflecting (dual regions meet iff the elements touch) and
/// bound-preserving; atom images are singletons partitioning the dual.
pub fn check_lambda_iso(l: &FiniteLca) -> Result<Report> {
    let dual = psi_a(l)?;
    let target = psi_t(&dual.as_space());
    let images: Vec<AtomSet> = l.elements().iter().map(|&a| lambda_g(&dual, a)).collect();
    let distinct: BTreeSet<AtomSet> = images.iter().copied().collect();
    let iso = LcaIso {
        source: l.clone(),
        target: target.clone(),
        table: images.clone(),
    };
    let mut r = Report::new("lambda-iso");
    r.push(Check::new(
        "injective",
        Status::from_bool(distinct.len() == images.len()),
    ));
    r.push(Check::new(
        "surjective",
        Status::from_bool(distinct.len() == target.elements().len()),
    ));
    for c in iso.operation_checks() {
        r.push(c);
    }
    let atoms: Vec<AtomSet> = (0..l.atom_count())
        .map(|i| lambda_g(&dual, AtomSet::singleton(i)))
        .collect();
    let partition = atoms.iter().all(|s| s.len() == 1)
        && atoms.iter().fold(AtomSet::EMPTY, |acc, s| acc.union(*s)) == AtomSet::full(dual.len())
        && atoms.iter().map(|s| s.len()).sum::<usize>() == dual.len();
    r.push(Check::new("atoms-partition", Status::from_bool(partition)));
    Ok(r)
}

/// `ι` is a bijection from delta-ideals onto all subsets of the dual that
/// preserves and reflects order, binary meets and joins of every
/// subfamily, and sends `I_a` to `λ^g(a)`.
pub fn check_iota_frame_iso(l: &FiniteLca) -> Result<Report> {
    let dual = psi_a(l)?;
    let ideals = delta_ideals(l);
    let images: Vec<AtomSet> = ideals.iter().map(|&i| iota(&dual, i)).collect();
    let distinct: BTreeSet<AtomSet> = images.iter().copied().collect();
    let opens = 1usize << dual.len();
    let mut r = Report::new("iota-iso");
    let note = format!("{} delta-ideals, {opens} opens", ideals.len());
    r.push(
        Check::new(
            "bijective",
            Status::from_bool(distinct.len() == images.len() && images.len() == opens),
        )
        .with_note(note),
    );

    let mut order = Check::pass("order");
    let mut meets = Check::pass("meets");
    for (a, &i) in ideals.iter().enumerate() {
        for (b, &j) in ideals.iter().enumerate() {
            if i.is_subset(j) != images[a].is_subset(images[b]) && order.status == Status::Pass {
                order = Check::fail("order")
                    .with_witness("I", l.render_set(i))
                    .with_witness("J", l.render_set(j));
            }
            if iota(&dual, i.intersection(j)) != images[a].intersection(images[b])
                && meets.status == Status::Pass
            {
                meets = Check::fail("meets")
                    .with_witness("I", l.render_set(i))
                    .with_witness("J", l.render_set(j));
            }
        }
    }
    r.push(order);
    r.push(meets);

    let mut joins = Check::pass("joins");
    let families = if ideals.len() <= 8 {
        1u64 << ideals.len()
    } else {
        0
    };
    for mask in 0..families {
        let fam: Vec<ElementSet> = (0..ideals.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| ideals[i])
            .collect();
        let j = crate::ideals::ideal_join_many(l, &fam)?;
        let union = (0..ideals.len())
            .filter(|i| mask >> i & 1 == 1)
            .fold(AtomSet::EMPTY, |acc, i| acc.union(images[i]));
        if iota(&dual, j) != union {
            joins = Check::fail("joins").with_witness("join", l.render_set(j));
            break;
        }
    }
    if families == 0 {
        joins = Check::skipped("joins", "more than 8 delta-ideals");
    }
    r.push(joins);

    let mut principal = Check::pass("principal");
    for &a in l.elements() {
        if iota(&dual, principal_delta_ideal(l, a)) != lambda_g(&dual, a) {
            principal = Check::fail("principal").with_witness("a", l.render(&a));
            break;
        }
    }
    r.push(principal);
    Ok(r)
}

/// The full object-level round trip for one space: axioms of `psi_t(x)`,
/// the dual point count, `t`, `λ^g` and `ι`.
pub fn check_round_trip(x: &FiniteSpace) -> Result<Report> {
    let l = psi_t(x);
    let mut r = Report::new("round-trip");
    let lca = passes(&lca_checks(&l));
    let nca = passes(&nca_checks(&l, ContactMode::Rho));
    r.push(Check::new("psi-t-axioms", Status::from_bool(lca && nca)));
    let dual = psi_a(&l)?;
    r.push(
        Check::new("dual-size", Status::from_bool(dual.len() == x.len())).with_note(format!(
            "{} points, {} dual points",
            x.len(),
            dual.len()
        )),
    );
    r.extend(check_t_bijection(x)?);
    for mut c in check_lambda_iso(&l)?.checks {
        c.id = format!("lambda:{}", c.id);
        r.push(c);
    }
    if l.atom_count() <= crate::ideals::FRAME_ATOM_LIMIT {
        for mut c in check_iota_frame_iso(&l)?.checks {
            c.id = format!("iota:{}", c.id);
            r.push(c);
        }
    }
    Ok(r)
}

// ---------------------------------------------------------------------------
// Tail carriers
// ---------------------------------------------------------------------------

/// `λ^g(a)` on a tail carrier: the point clusters `σ(b,i)` with `(b,i)` in
/// `a`. The cluster at infinity is unbounded and never included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailLambda {
    pub element: TailElem,
}

impl TailLambda {
    pub fn contains(&self, family: &TailFamily) -> bool {
        match family {
            TailFamily::Point { branch, index } => self.element.contains_point(*branch, *index),
            _ => false,
        }
    }

    /// Points per branch.
    pub fn points(&self) -> &[Part] {
        &self.element.parts
    }
}

impl std::fmt::Display for TailLambda {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{σ(b,i) : (b,i) ∈ {}}}", self.element)
    }
}

pub fn tail_lambda_g(a: &TailElem) -> TailLambda {
    TailLambda { element: a.clone() }
}

/// Points probed per branch by the tail checks.
const PROBE_POINTS: u32 = 8;

/// The dual of a tail structure: its bounded clusters are the point
/// clusters, the cluster at infinity is a cluster of the Alexandroff
/// extension but unbounded, no other cofinite-shaped family survives, and
/// the point clusters are dense.
pub fn tail_dual_description(t: &TailLca) -> Result<Report> {
    let k = t.branches();
    let mut r = Report::new("tail-dual");
    let m = ContactMode::Alexandroff;

    let mut points = Check::pass("point-family").with_note(format!(
        "σ(b,i) for {k} branches and i < {PROBE_POINTS}, each containing its bounded singleton"
    ));
    'pts: for b in 0..k {
        for i in 0..PROBE_POINTS {
            let fam = TailFamily::Point {
                branch: b,
                index: i,
            };
            let c = tail_cluster_check(t, &fam, m)?;
            if c.status.is_fail()
                || !fam.contains(t, &t.point(b, i))
                || !t.is_bounded(&t.point(b, i))
            {
                points = Check::fail("point-family").with_witness("cluster", fam.label());
                break 'pts;
            }
        }
    }
    r.push(points);

    let inf = if t.top_bounded() {
        Check::skipped("sigma-infinity", "1 is bounded")
    } else {
        tail_sigma_infinity(t)?;
        let bounded_member = t
            .sample()
            .iter()
            .find(|a| TailFamily::Infinity.contains(t, a) && t.is_bounded(a));
        match bounded_member {
            None => Check::pass("sigma-infinity")
                .with_note("cluster of the extension, no bounded member, excluded from the dual"),
            Some(a) => Check::fail("sigma-infinity").with_witness("a", a.to_string()),
        }
    };
    r.push(inf);

    let mut survivors: Vec<String> = Vec::new();
    let mut shape = Check::new("shape-refutation", Status::SampledPass);
    for mask in 1u32..(1 << k) {
        let s: BTreeSet<usize> = (0..k).filter(|b| mask >> b & 1 == 1).collect();
        for fam in [
            TailFamily::CofiniteOnAny(s.clone()),
            TailFamily::CofiniteOnAll(s.clone()),
        ] {
            let c = tail_cluster_check(t, &fam, m)?;
            if c.status.is_fail() {
                continue;
            }
            survivors.push(fam.label());
            let same = t
                .sample()
                .iter()
                .all(|a| fam.contains(t, a) == TailFamily::Infinity.contains(t, a));
            if !same && !shape.status.is_fail() {
                shape = Check::fail("shape-refutation").with_witness("survivor", fam.label());
            }
        }
    }
    r.push(shape.with_note(format!("surviving shapes: {}", survivors.join(", "))));

    let mut dense = Check::new("density", Status::SampledPass)
        .with_note("every sampled nonzero element lies in some point cluster");
    for a in t.sample().iter().filter(|a| !a.is_zero()) {
        let hit = a.first_point().is_some_and(|(b, i)| {
            tail_lambda_g(a).contains(&TailFamily::Point {
                branch: b,
                index: i,
            })
        });
        if !hit {
            dense = Check::fail("density").with_witness("a", a.to_string());
            break;
        }
    }
    r.push(dense);

    let mut lambda = Check::new("lambda", Status::SampledPass)
        .with_note("λ^g(a) holds σ(b,i) iff (b,i) ∈ a, never σ∞");
    'lam: for a in t.sample() {
        let lam = tail_lambda_g(a);
        if lam.contains(&TailFamily::Infinity) {
            lambda = Check::fail("lambda").with_witness("a", a.to_string());
            break;
        }
        for b in 0..k {
            for i in 0..PROBE_POINTS {
                let fam = TailFamily::Point {
                    branch: b,
                    index: i,
                };
                if lam.contains(&fam) != fam.contains(t, a) {
                    lambda = Check::fail("lambda").with_witness("a", a.to_string());
                    break 'lam;
                }
            }
        }
    }
    r.push(lambda);

    let eo = if k >= 2 {
        let e = t.full_branch(0);
        let o = t.full_branch(1);
        let ok = !t.rho(&e, &o) && t.contact(ContactMode::Alexandroff, &e, &o);
        Check::new("unbounded-contact", Status::from_bool(ok))
            .with_witness("E", e.to_string())
            .with_witness("O", o.to_string())
            .with_note("E and O are disjoint but both unbounded")
    } else {
        Check::skipped("unbounded-contact", "needs two branches")
    };
    r.push(eo);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(names: &[&str]) -> FiniteSpace {
        FiniteSpace::new(names.iter().copied()).unwrap()
    }

    #[test]
    fn psi_t_shapes() {
        let l = psi_t(&space(&["x", "y"]));
        assert_eq!(l.elements().len(), 4);
        assert_eq!(l.bounded_set(), l.all_elements());
        assert_eq!(psi_t(&space(&[])).elements().len(), 1);
        assert!(FiniteSpace::new(["x", "x"]).is_err());
    }

    #[test]
    fn dual_of_two_points() {
        let d = psi_a(&psi_t(&space(&["x", "y"]))).unwrap();
        assert_eq!(d.labels(), ["σ{x}", "σ{y}"]);
        assert_eq!(lambda_g(&d, AtomSet(1)), AtomSet(1));
        assert_eq!(lambda_g(&d, AtomSet(3)), AtomSet(3));
        assert_eq!(lambda_g(&d, AtomSet(0)), AtomSet(0));
        assert!(psi_a(&psi_t(&space(&[]))).unwrap().is_empty());
    }

    #[test]
    fn psi_a_rejects_non_normal() {
        let full = FiniteLca::full_adjacency(FiniteCarrier::new(["p", "q"]).unwrap());
        assert!(matches!(psi_a(&full), Err(Error::Contract(_))));
    }

    #[test]
    fn round_trips() {
        for n in 0..=4 {
            let x = FiniteSpace::with_size(n).unwrap();
            let r = check_round_trip(&x).unwrap();
            assert!(r.passed(), "n={n}: {r:?}");
            assert_eq!(t_map(&x).unwrap(), (0..n).collect::<Vec<_>>());
        }
    }

    #[test]
    fn iota_examples() {
        let l = psi_t(&space(&["x", "y"]));
        let d = psi_a(&l).unwrap();
        assert_eq!(iota(&d, principal_delta_ideal(&l, AtomSet(1))), AtomSet(1));
        assert_eq!(iota(&d, l.all_elements()), AtomSet(3));
        assert_eq!(
            iota(&d, ElementSet::from_elements([AtomSet(0)])),
            AtomSet(0)
        );
    }

    #[test]
    fn maps() {
        let x = space(&["a", "b", "c"]);
        let all = ContinuousMap::all_maps(&x, &x);
        assert_eq!(all.len(), 27);
        assert_eq!(all[0].table(), [0, 0, 0]);
        assert_eq!(all[1].table(), [1, 0, 0]);
        assert_eq!(ContinuousMap::all_maps(&space(&[]), &x).len(), 1);
        assert!(ContinuousMap::all_maps(&x, &space(&[])).is_empty());
        let f = &all[5];
        assert_eq!(ContinuousMap::identity(&x).after(f).unwrap(), *f);
        assert_eq!(f.table(), [2, 1, 0]);
        assert_eq!(f.preimage(AtomSet(1)), AtomSet(0b100));
    }

    #[test]
    fn tail_duals() {
        for k in [1, 2] {
            let t = TailLca::standard(k, 3).unwrap();
            let r = tail_dual_description(&t).unwrap();
            assert!(r.passed(), "k={k}: {r:?}");
        }
        let t = TailLca::standard(1, 0).unwrap();
        let a = t.complement(&t.point(0, 2));
        let lam = tail_lambda_g(&a);
        assert!(lam.contains(&TailFamily::Point {
            branch: 0,
            index: 0
        }));
        assert!(!lam.contains(&TailFamily::Point {
            branch: 0,
            index: 2
        }));
        assert!(!lam.contains(&TailFamily::Infinity));
    }
}
