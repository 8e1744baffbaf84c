//! Suite dispatch: which core checkers run on which loaded entries.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use lcdual_core::category::{
    check_category_laws, check_eq_preimage_iota, check_functor_a, check_functor_t, check_morphism,
    check_morphism_bijection, check_naturality_algebra, check_naturality_space, compose,
    delta_t_map, generate_morphisms, identity, MdhlcMorphism,
};
use lcdual_core::clusters::{
    bounded_clusters, check_cluster_trace_uniqueness, check_fed1, check_tail_trace_uniqueness,
    cluster_label, enumerate_clusters, naive_clusters, sigma_infinity, tail_cluster_check,
    CLUSTER_ATOM_LIMIT,
};
use lcdual_core::duality::{
    check_iota_frame_iso, check_lambda_iso, check_round_trip, check_t_bijection,
    tail_dual_description,
};
use lcdual_core::ideals::{
    check_eq_sup_bounded, check_frame, check_prime_correspondence, check_tail_eq_sup_bounded,
    FRAME_ATOM_LIMIT,
};
use lcdual_core::{
    Check, ContactMode, FiniteLca, LcaStructure, Report, Status, Structure, TailFamily, TailLca,
};

use crate::instance::{Object, StructureObj, Workspace};

/// Largest object the category suite generates morphism families for.
pub const CATEGORY_ATOM_LIMIT: usize = 3;
/// Generated morphisms per ordered pair of objects.
pub const FAMILY_BUDGET: usize = 3;

#[derive(
    Clone,
    Copy,
    Debug,
    PartialEq,
    Eq,
    PartialOrd,
    Ord,
    Hash,
    Serialize,
    Deserialize,
    clap::ValueEnum,
)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Axioms,
    Clusters,
    Ideals,
    Duality,
    Category,
    Naturality,
    All,
}

impl Suite {
    pub const ORDER: [Suite; 6] = [
        Suite::Axioms,
        Suite::Clusters,
        Suite::Ideals,
        Suite::Duality,
        Suite::Category,
        Suite::Naturality,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Clusters => "clusters",
            Suite::Ideals => "ideals",
            Suite::Duality => "duality",
            Suite::Category => "category",
            Suite::Naturality => "naturality",
            Suite::All => "all",
        }
    }

    pub fn members(self) -> Vec<Suite> {
        match self {
            Suite::All => Suite::ORDER.to_vec(),
            s => vec![s],
        }
    }

    fn covers(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

/// A check attributed to the entry it was run on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubjectCheck {
    pub subject: String,
    #[serde(flatten)]
    pub check: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub status: Status,
    pub checks: Vec<SubjectCheck>,
}

struct Sink {
    checks: Vec<SubjectCheck>,
}

impl Sink {
    fn one(&mut self, subject: &str, check: Check) {
        self.checks.push(SubjectCheck {
            subject: subject.to_string(),
            check,
        });
    }

    fn report(&mut self, subject: &str, r: Report) {
        for mut c in r.checks {
            c.id = format!("{}/{}", r.title, c.id);
            self.one(subject, c);
        }
    }

    fn result(&mut self, subject: &str, what: &str, r: lcdual_core::Result<Report>) {
        match r {
            Ok(r) => self.report(subject, r),
            Err(e) => self.one(subject, Check::fail(what).with_note(e.to_string())),
        }
    }

    fn skip(&mut self, subject: &str, what: &str, why: impl Into<String>) {
        self.one(subject, Check::skipped(what, why));
    }
}

/// The entries each member suite runs on. Without suite requests every
/// entry is in scope; otherwise only the targets of requests covering the
/// suite (a request without targets covers everything).
pub fn scope(ws: &Workspace, suite: Suite) -> BTreeSet<String> {
    let all: BTreeSet<String> = ws.entries.iter().map(|e| e.id.clone()).collect();
    let reqs: Vec<_> = ws.requests().collect();
    if reqs.is_empty() {
        return all;
    }
    let mut out = BTreeSet::new();
    for r in reqs.into_iter().filter(|r| r.suite.covers(suite)) {
        match &r.targets {
            None => return all,
            Some(ts) => out.extend(ts.iter().cloned()),
        }
    }
    out
}

pub fn run(ws: &Workspace, suite: Suite, seed: u64) -> Vec<SuiteReport> {
    suite
        .members()
        .into_iter()
        .map(|s| {
            let in_scope = scope(ws, s);
            let mut sink = Sink { checks: Vec::new() };
            match s {
                Suite::Axioms => axioms(ws, &in_scope, &mut sink),
                Suite::Clusters => clusters(ws, &in_scope, &mut sink),
                Suite::Ideals => ideals(ws, &in_scope, &mut sink),
                Suite::Duality => duality(ws, &in_scope, &mut sink),
                Suite::Category => category(ws, &in_scope, seed, &mut sink),
                Suite::Naturality => naturality(ws, &in_scope, &mut sink),
                Suite::All => unreachable!("`all` expands to its members"),
            }
            SuiteReport {
                suite: s,
                status: Status::combine(sink.checks.iter().map(|c| c.check.status)),
                checks: sink.checks,
            }
        })
        .collect()
}

fn entries<'a>(
    ws: &'a Workspace,
    scope: &'a BTreeSet<String>,
) -> impl Iterator<Item = (&'a str, &'a Object)> {
    ws.entries
        .iter()
        .filter(move |e| scope.contains(&e.id))
        .map(|e| (e.id.as_str(), &e.object))
}

fn is_normal_lca(l: &FiniteLca) -> bool {
    let s = LcaStructure::Finite(l.clone());
    s.check_lca().passed() && s.check_nca().passed()
}

fn axioms(ws: &Workspace, scope: &BTreeSet<String>, sink: &mut Sink) {
    for (id, obj) in entries(ws, scope) {
        match obj {
            Object::Structure(StructureObj::Finite(l)) => {
                let s = LcaStructure::Finite((**l).clone());
                sink.report(id, s.check_nca());
                sink.report(id, s.check_ll_axioms());
                sink.report(id, s.check_ca_ll_equivalence());
                sink.report(id, s.check_lca());
                sink.report(id, s.check_alexandroff_nca());
            }
            Object::Structure(StructureObj::Tail(t)) => {
                let s = LcaStructure::Tail(t.clone());
                sink.report(id, s.check_ca());
                sink.report(id, s.check_lca());
                sink.report(id, s.check_alexandroff_nca());
            }
            _ => {}
        }
    }
}

fn clusters(ws: &Workspace, scope: &BTreeSet<String>, sink: &mut Sink) {
    for (id, obj) in entries(ws, scope) {
        match obj {
            Object::Structure(StructureObj::Finite(l)) => finite_clusters(id, l, sink),
            Object::Structure(StructureObj::Tail(t)) => tail_clusters(id, t, sink),
            _ => {}
        }
    }
}

fn finite_clusters(id: &str, l: &FiniteLca, sink: &mut Sink) {
    if l.atom_count() > CLUSTER_ATOM_LIMIT {
        sink.skip(
            id,
            "clusters",
            format!("enumeration is capped at {CLUSTER_ATOM_LIMIT} atoms"),
        );
        return;
    }
    match enumerate_clusters(l, ContactMode::Rho) {
        Ok(cs) => {
            let labels: Vec<String> = cs.iter().map(|&c| cluster_label(l, c)).collect();
            sink.one(
                id,
                Check::pass("clusters/enumerate").with_note(format!("[{}]", labels.join(", "))),
            );
            if l.atom_count() <= 3 {
                let same = naive_clusters(l, ContactMode::Rho).map(|n| n == cs);
                sink.one(
                    id,
                    match same {
                        Ok(ok) => Check::new("clusters/pruned-equals-naive", Status::from_bool(ok)),
                        Err(e) => {
                            Check::fail("clusters/pruned-equals-naive").with_note(e.to_string())
                        }
                    },
                );
            }
        }
        Err(e) => sink.one(
            id,
            Check::fail("clusters/enumerate").with_note(e.to_string()),
        ),
    }
    match bounded_clusters(l) {
        Ok(bs) => sink.one(
            id,
            Check::pass("clusters/bounded").with_note(format!("{} bounded clusters", bs.len())),
        ),
        Err(e) => sink.one(id, Check::fail("clusters/bounded").with_note(e.to_string())),
    }
    if !l.top_bounded() {
        sink.one(
            id,
            match sigma_infinity(l) {
                Ok(s) => Check::pass("clusters/sigma-infinity").with_note(cluster_label(l, s)),
                Err(e) => Check::fail("clusters/sigma-infinity").with_note(e.to_string()),
            },
        );
    }
    sink.result(id, "fed1", check_fed1(l));
    sink.result(id, "trace-uniqueness", check_cluster_trace_uniqueness(l));
}

fn tail_clusters(id: &str, t: &TailLca, sink: &mut Sink) {
    let m = ContactMode::Alexandroff;
    for b in 0..t.branches() {
        let fam = TailFamily::Point {
            branch: b,
            index: 0,
        };
        match tail_cluster_check(t, &fam, m) {
            Ok(c) => sink.one(id, relabel(c, &format!("clusters/{}", fam.label()))),
            Err(e) => sink.one(
                id,
                Check::fail(format!("clusters/{}", fam.label())).with_note(e.to_string()),
            ),
        }
    }
    if t.top_bounded() {
        sink.skip(id, "clusters/σ∞", "1 is bounded");
    } else {
        match tail_cluster_check(t, &TailFamily::Infinity, m) {
            Ok(c) => sink.one(id, relabel(c, "clusters/σ∞")),
            Err(e) => sink.one(id, Check::fail("clusters/σ∞").with_note(e.to_string())),
        }
    }
    sink.report(id, check_tail_trace_uniqueness(t));
}

/// Keeps the verdict of a cluster check under a stable id; a failing
/// axiom id is kept in the note.
fn relabel(c: Check, id: &str) -> Check {
    let mut out = Check::new(id, c.status);
    if c.status.is_fail() {
        out = out.with_note(format!("fails {}", c.id));
    } else if let Some(n) = c.note {
        out = out.with_note(n);
    }
    for (k, v) in c.witness {
        out = out.with_witness(k, v);
    }
    out
}

fn ideals(ws: &Workspace, scope: &BTreeSet<String>, sink: &mut Sink) {
    for (id, obj) in entries(ws, scope) {
        match obj {
            Object::Structure(StructureObj::Finite(l)) => {
                if l.atom_count() > FRAME_ATOM_LIMIT {
                    sink.skip(
                        id,
                        "ideals",
                        format!("frame checks are capped at {FRAME_ATOM_LIMIT} atoms"),
                    );
                    continue;
                }
                if !LcaStructure::Finite((**l).clone()).check_lca().passed() {
                    sink.skip(id, "ideals", "not a local contact structure");
                    continue;
                }
                sink.result(id, "frame", check_frame(l));
                sink.result(id, "prime-correspondence", check_prime_correspondence(l));
                sink.report(id, check_eq_sup_bounded(l));
            }
            Object::Structure(StructureObj::Tail(t)) => {
                sink.report(id, check_tail_eq_sup_bounded(t))
            }
            _ => {}
        }
    }
}

fn duality(ws: &Workspace, scope: &BTreeSet<String>, sink: &mut Sink) {
    for (id, obj) in entries(ws, scope) {
        match obj {
            Object::Space(x) => {
                sink.result(id, "round-trip", check_round_trip(x));
                sink.result(id, "t-bijection", check_t_bijection(x));
            }
            Object::Structure(StructureObj::Finite(l)) => {
                if l.atom_count() > CLUSTER_ATOM_LIMIT {
                    sink.skip(
                        id,
                        "duality",
                        format!("duals are computed up to {CLUSTER_ATOM_LIMIT} atoms"),
                    );
                } else if !is_normal_lca(l) {
                    sink.skip(id, "duality", "not a normal local contact structure");
                } else {
                    sink.result(id, "lambda-iso", check_lambda_iso(l));
                    sink.result(id, "iota-frame-iso", check_iota_frame_iso(l));
                }
            }
            Object::Structure(StructureObj::Tail(t)) => {
                sink.result(id, "tail-dual", tail_dual_description(t))
            }
            _ => {}
        }
    }
}

fn category(ws: &Workspace, scope: &BTreeSet<String>, seed: u64, sink: &mut Sink) {
    let mut objects: Vec<Arc<FiniteLca>> = Vec::new();
    let mut declared: Vec<MdhlcMorphism> = Vec::new();
    let mut spaces = Vec::new();
    let mut maps = Vec::new();
    for (id, obj) in entries(ws, scope) {
        match obj {
            Object::Morphism(phi) => {
                let r = check_morphism(phi);
                let valid = r.passed();
                sink.report(id, r);
                if valid {
                    sink.result(id, "preimage-iota", check_eq_preimage_iota(phi));
                    declared.push(phi.clone());
                }
            }
            Object::Structure(StructureObj::Finite(l))
                if l.atom_count() <= CATEGORY_ATOM_LIMIT && is_normal_lca(l) =>
            {
                objects.push(l.clone());
            }
            Object::Space(x) if x.len() <= 3 => spaces.push((id, x)),
            Object::Map(f) => maps.push((id, f)),
            _ => {}
        }
    }
    if !objects.is_empty() {
        let mut family: Vec<MdhlcMorphism> = Vec::new();
        for a in &objects {
            for b in &objects {
                match generate_morphisms(a, b, FAMILY_BUDGET, seed) {
                    Ok(v) => family.extend(v),
                    Err(e) => sink.one(
                        "generated",
                        Check::fail("generate").with_note(e.to_string()),
                    ),
                }
            }
            family.push(identity(a));
        }
        for phi in &declared {
            if objects.iter().any(|o| **o == **phi.source())
                && objects.iter().any(|o| **o == **phi.target())
            {
                family.push(phi.clone());
            }
        }
        let mut uniq: Vec<MdhlcMorphism> = Vec::new();
        for m in family {
            if !uniq.contains(&m) {
                uniq.push(m);
            }
        }
        sink.result("generated", "category-laws", check_category_laws(&uniq));
        sink.result("generated", "functor-a", check_functor_a(&uniq));
    }
    for (id, x) in &spaces {
        sink.result(id, "functor-t", check_functor_t(x, x, x));
    }
    for (fid, f) in &maps {
        for (gid, g) in &maps {
            if f.target() != g.source() {
                continue;
            }
            let subject = format!("{gid}∘{fid}");
            let c = g.after(f).and_then(|gf| {
                let lhs = delta_t_map(&gf);
                let rhs = compose(&delta_t_map(f), &delta_t_map(g))?;
                Ok(Check::new(
                    "functor-t/composition",
                    Status::from_bool(lhs == rhs),
                ))
            });
            sink.one(
                &subject,
                c.unwrap_or_else(|e| Check::fail("functor-t/composition").with_note(e.to_string())),
            );
        }
    }
    for (xid, x) in spaces.iter().filter(|(_, x)| x.len() <= 2) {
        for (yid, y) in spaces.iter().filter(|(_, y)| y.len() <= 2) {
            let subject = format!("{xid}->{yid}");
            match check_morphism_bijection(x, y) {
                Ok(c) => sink.one(&subject, relabel_keep(c, "map-bijection")),
                Err(e) => sink.one(
                    &subject,
                    Check::fail("map-bijection").with_note(e.to_string()),
                ),
            }
        }
    }
}

fn relabel_keep(mut c: Check, prefix: &str) -> Check {
    c.id = format!("{prefix}/{}", c.id);
    c
}

fn naturality(ws: &Workspace, scope: &BTreeSet<String>, sink: &mut Sink) {
    for (id, obj) in entries(ws, scope) {
        match obj {
            Object::Map(f) => {
                if f.source().len() > CLUSTER_ATOM_LIMIT || f.target().len() > CLUSTER_ATOM_LIMIT {
                    sink.skip(
                        id,
                        "naturality",
                        format!("duals are computed up to {CLUSTER_ATOM_LIMIT} points"),
                    );
                    continue;
                }
                sink.result(id, "naturality-space", check_naturality_space(f));
                sink.result(
                    id,
                    "naturality-algebra",
                    check_naturality_algebra(&delta_t_map(f)),
                );
            }
            Object::Morphism(phi) => {
                if check_morphism(phi).passed() {
                    sink.result(id, "naturality-algebra", check_naturality_algebra(phi));
                } else {
                    sink.skip(id, "naturality-algebra", "not a valid morphism");
                }
            }
            Object::Structure(StructureObj::Finite(l))
                if l.atom_count() <= CATEGORY_ATOM_LIMIT && is_normal_lca(l) =>
            {
                sink.result(
                    id,
                    "naturality-algebra",
                    check_naturality_algebra(&identity(l)),
                );
            }
            _ => {}
        }
    }
}
