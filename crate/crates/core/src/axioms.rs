//! Axiom checkers for contact, normal contact and local contact structures,
//! and for the non-tangential inclusion.
//!
//! Universal quantifiers range over [`Structure::domain`] in enumeration
//! order, so the first counterexample found is the smallest one. On a
//! sampled domain a pass is reported as [`Status::SampledPass`].

use crate::contact::{ContactMode, LcaStructure, Structure};
use crate::report::{Check, Report, Status};

/// Note attached to sampled failures of a for-all/exists axiom.
pub const NO_SAMPLED_WITNESS: &str = "no witness found in the sampled pool";

fn ok<S: Structure>(s: &S) -> Status {
    if s.exhaustive() {
        Status::Pass
    } else {
        Status::SampledPass
    }
}

fn failed<S: Structure>(s: &S, id: &str, vars: &[(&str, &S::Elem)]) -> Check {
    vars.iter()
        .fold(Check::fail(id), |c, (n, e)| c.with_witness(*n, s.render(e)))
}

/// Failure of an axiom with an existential conclusion.
fn failed_exists<S: Structure>(s: &S, id: &str, vars: &[(&str, &S::Elem)]) -> Check {
    let c = failed(s, id, vars);
    if s.exhaustive() {
        c
    } else {
        c.with_note(NO_SAMPLED_WITNESS)
    }
}

fn exists<S: Structure>(s: &S, tuple: &[&S::Elem], pred: impl Fn(&S::Elem) -> bool) -> bool {
    s.domain().iter().any(&pred) || s.extra_witnesses(tuple).iter().any(&pred)
}

fn c1<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        if !s.is_bottom(a) && !s.contact(m, a, a) {
            return failed(s, "C1", &[("a", a)]);
        }
    }
    Check::new("C1", ok(s))
}

fn c2<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        for b in s.domain() {
            if s.contact(m, a, b) && (s.is_bottom(a) || s.is_bottom(b)) {
                return failed(s, "C2", &[("a", a), ("b", b)]);
            }
        }
    }
    Check::new("C2", ok(s))
}

fn c3<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        for b in s.domain() {
            if s.contact(m, a, b) && !s.contact(m, b, a) {
                return failed(s, "C3", &[("a", a), ("b", b)]);
            }
        }
    }
    Check::new("C3", ok(s))
}

fn c4<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        for b in s.domain() {
            for c in s.domain() {
                let lhs = s.contact(m, a, &s.join(b, c));
                let rhs = s.contact(m, a, b) || s.contact(m, a, c);
                if lhs != rhs {
                    let dir = if lhs {
                        "a C (b v c) but neither a C b nor a C c"
                    } else {
                        "a C b or a C c but not a C (b v c)"
                    };
                    return failed(s, "C4", &[("a", a), ("b", b), ("c", c)]).with_note(dir);
                }
            }
        }
    }
    Check::new("C4", ok(s))
}

fn c5<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        for b in s.domain() {
            if s.contact(m, a, b) {
                continue;
            }
            let found = exists(s, &[a, b], |c| {
                !s.contact(m, a, c) && !s.contact(m, b, &s.complement(c))
            });
            if !found {
                return failed_exists(s, "C5", &[("a", a), ("b", b)]);
            }
        }
    }
    Check::new("C5", ok(s))
}

fn c6<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        if s.is_top(a) {
            continue;
        }
        if !exists(s, &[a], |b| !s.is_bottom(b) && !s.contact(m, b, a)) {
            return failed_exists(s, "C6", &[("a", a)]);
        }
    }
    Check::new("C6", ok(s))
}

/// (C1)-(C4) for the chosen relation.
pub fn ca_checks<S: Structure>(s: &S, mode: ContactMode) -> Vec<Check> {
    vec![c1(s, mode), c2(s, mode), c3(s, mode), c4(s, mode)]
}

/// (C1)-(C6) for the chosen relation.
pub fn nca_checks<S: Structure>(s: &S, mode: ContactMode) -> Vec<Check> {
    let mut v = ca_checks(s, mode);
    v.push(c5(s, mode));
    v.push(c6(s, mode));
    v
}

fn ll1<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        for b in s.domain() {
            if s.way_below(m, a, b) && !s.leq(a, b) {
                return failed(s, "LL1", &[("a", a), ("b", b)]);
            }
        }
    }
    Check::new("LL1", ok(s))
}

fn ll2<S: Structure>(s: &S, m: ContactMode) -> Check {
    let z = s.bottom();
    if s.way_below(m, &z, &z) {
        Check::pass("LL2")
    } else {
        failed(s, "LL2", &[("a", &z)])
    }
}

fn ll3<S: Structure>(s: &S, m: ContactMode) -> Check {
    let d = s.domain();
    for a in d {
        for b in d.iter().filter(|b| s.leq(a, b)) {
            for c in d.iter().filter(|c| s.way_below(m, b, c)) {
                for t in d.iter().filter(|t| s.leq(c, t)) {
                    if !s.way_below(m, a, t) {
                        return failed(s, "LL3", &[("a", a), ("b", b), ("c", c), ("t", t)]);
                    }
                }
            }
        }
    }
    Check::new("LL3", ok(s))
}

fn ll4<S: Structure>(s: &S, m: ContactMode) -> Check {
    let d = s.domain();
    for a in d {
        for b in d {
            for c in d {
                if s.way_below(m, a, c) && s.way_below(m, b, c) && !s.way_below(m, &s.join(a, b), c)
                {
                    return failed(s, "LL4", &[("a", a), ("b", b), ("c", c)]);
                }
            }
        }
    }
    Check::new("LL4", ok(s))
}

fn ll5<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        for c in s.domain() {
            if !s.way_below(m, a, c) {
                continue;
            }
            if !exists(s, &[a, c], |b| s.way_below(m, a, b) && s.way_below(m, b, c)) {
                return failed_exists(s, "LL5", &[("a", a), ("c", c)]);
            }
        }
    }
    Check::new("LL5", ok(s))
}

fn ll6<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        if s.is_bottom(a) {
            continue;
        }
        if !exists(s, &[a], |b| !s.is_bottom(b) && s.way_below(m, b, a)) {
            return failed_exists(s, "LL6", &[("a", a)]);
        }
    }
    Check::new("LL6", ok(s))
}

fn ll7<S: Structure>(s: &S, m: ContactMode) -> Check {
    for a in s.domain() {
        for b in s.domain() {
            if s.way_below(m, a, b) && !s.way_below(m, &s.complement(b), &s.complement(a)) {
                return failed(s, "LL7", &[("a", a), ("b", b)]);
            }
        }
    }
    Check::new("LL7", ok(s))
}

/// The seven axioms of the non-tangential inclusion derived from the chosen
/// relation.
pub fn ll_checks<S: Structure>(s: &S, mode: ContactMode) -> Vec<Check> {
    vec![
        ll1(s, mode),
        ll2(s, mode),
        ll3(s, mode),
        ll4(s, mode),
        ll5(s, mode),
        ll6(s, mode),
        ll7(s, mode),
    ]
}

/// `0` is bounded, and the bounded elements are closed downwards and under
/// binary joins.
pub fn ideal_check<S: Structure>(s: &S) -> Check {
    let z = s.bottom();
    if !s.is_bounded(&z) {
        return failed(s, "ideal", &[("a", &z)]).with_note("0 is not bounded");
    }
    for a in s.domain().iter().filter(|a| s.is_bounded(a)) {
        for b in s.domain() {
            if s.leq(b, a) && !s.is_bounded(b) {
                return failed(s, "ideal", &[("a", a), ("b", b)])
                    .with_note("b <= a, a bounded, b not bounded");
            }
            if s.is_bounded(b) && !s.is_bounded(&s.join(a, b)) {
                return failed(s, "ideal", &[("a", a), ("b", b)]).with_note("a v b not bounded");
            }
        }
    }
    Check::new("ideal", ok(s))
}

fn bc1<S: Structure>(s: &S) -> Check {
    let m = ContactMode::Rho;
    for a in s.domain().iter().filter(|a| s.is_bounded(a)) {
        for c in s.domain() {
            if !s.way_below(m, a, c) {
                continue;
            }
            let found = exists(s, &[a, c], |b| {
                s.is_bounded(b) && s.way_below(m, a, b) && s.way_below(m, b, c)
            });
            if !found {
                return failed_exists(s, "BC1", &[("a", a), ("c", c)]);
            }
        }
    }
    Check::new("BC1", ok(s))
}

fn bc2<S: Structure>(s: &S) -> Check {
    for a in s.domain() {
        for b in s.domain() {
            if !s.rho(a, b) {
                continue;
            }
            if !exists(s, &[a, b], |c| s.is_bounded(c) && s.rho(a, &s.meet(c, b))) {
                return failed_exists(s, "BC2", &[("a", a), ("b", b)]);
            }
        }
    }
    Check::new("BC2", ok(s))
}

fn bc3<S: Structure>(s: &S) -> Check {
    for a in s.domain() {
        if s.is_bottom(a) {
            continue;
        }
        let found = exists(s, &[a], |b| {
            s.is_bounded(b) && !s.is_bottom(b) && s.way_below(ContactMode::Rho, b, a)
        });
        if !found {
            return failed_exists(s, "BC3", &[("a", a)]);
        }
    }
    Check::new("BC3", ok(s))
}

/// (C1)-(C4) for `rho`, the ideal laws for the bounded elements and
/// (BC1)-(BC3).
pub fn lca_checks<S: Structure>(s: &S) -> Vec<Check> {
    let mut v = ca_checks(s, ContactMode::Rho);
    v.push(ideal_check(s));
    v.push(bc1(s));
    v.push(bc2(s));
    v.push(bc3(s));
    v
}

fn report(title: &str, checks: Vec<Check>) -> Report {
    let mut r = Report::new(title);
    for c in checks {
        r.push(c);
    }
    r
}

/// Compares the contact-side and inclusion-side verdicts group by group.
pub fn ca_ll_equivalence<S: Structure>(s: &S) -> Report {
    let m = ContactMode::Rho;
    let c = nca_checks(s, m);
    let l = ll_checks(s, m);
    let pick = |v: &[Check], ids: &[&str]| -> Vec<Check> {
        v.iter()
            .filter(|c| ids.contains(&c.id.as_str()))
            .cloned()
            .collect()
    };
    let groups: [(&str, Vec<Check>, Vec<Check>); 3] = [
        (
            "C1-C4<=>LL1-LL4,LL7",
            pick(&c, &["C1", "C2", "C3", "C4"]),
            pick(&l, &["LL1", "LL2", "LL3", "LL4", "LL7"]),
        ),
        ("C5<=>LL5", pick(&c, &["C5"]), pick(&l, &["LL5"])),
        ("C6<=>LL6", pick(&c, &["C6"]), pick(&l, &["LL6"])),
    ];
    let mut r = Report::new("ca-ll-equivalence");
    for (id, left, right) in groups {
        let lp = left.iter().all(|c| !c.status.is_fail());
        let rp = right.iter().all(|c| !c.status.is_fail());
        let mut check = Check::new(id, Status::from_bool(lp == rp));
        let mut failing: Vec<&str> = Vec::new();
        for c in left.iter().chain(&right).filter(|c| c.status.is_fail()) {
            failing.push(&c.id);
            for (k, v) in &c.witness {
                check = check.with_witness(format!("{}.{k}", c.id), v.clone());
            }
        }
        let note = if failing.is_empty() {
            "both sides pass".to_string()
        } else {
            format!("failing: {}", failing.join(", "))
        };
        r.push(check.with_note(note));
    }
    r
}

/// The Alexandroff extension must be a normal contact relation whenever the
/// structure is a local contact structure. The precondition verdict is
/// reported first; the contact checks run regardless.
pub fn alexandroff_nca<S: Structure>(s: &S) -> Report {
    let lca = lca_checks(s);
    let bad: Vec<&str> = lca
        .iter()
        .filter(|c| c.status.is_fail())
        .map(|c| c.id.as_str())
        .collect();
    let pre = if bad.is_empty() {
        Check::new(
            "lca-precondition",
            Status::combine(lca.iter().map(|c| c.status)),
        )
    } else {
        Check::fail("lca-precondition").with_note(format!("failing: {}", bad.join(", ")))
    };
    let mut checks = vec![pre];
    checks.extend(nca_checks(s, ContactMode::Alexandroff));
    report("alexandroff-nca", checks)
}

/// With every element bounded, a local contact structure is a normal
/// contact structure.
pub fn remark_nca<S: Structure>(s: &S) -> Report {
    let lca = Report {
        title: String::new(),
        checks: lca_checks(s),
    };
    if !lca.passed() {
        return report(
            "remark-nca",
            vec![Check::skipped(
                "remark-nca",
                "structure fails the local contact axioms",
            )],
        );
    }
    if !s.top_bounded() {
        return report(
            "remark-nca",
            vec![Check::skipped("remark-nca", "1 is not bounded")],
        );
    }
    report("remark-nca", nca_checks(s, ContactMode::Rho))
}

macro_rules! dispatch {
    ($self:expr, $s:ident => $body:expr) => {
        match $self {
            LcaStructure::Finite($s) => $body,
            LcaStructure::Tail($s) => $body,
        }
    };
}

impl LcaStructure {
    pub fn check_ca(&self) -> Report {
        dispatch!(self, s => report("ca", ca_checks(s, ContactMode::Rho)))
    }

    pub fn check_nca(&self) -> Report {
        dispatch!(self, s => report("nca", nca_checks(s, ContactMode::Rho)))
    }

    pub fn check_lca(&self) -> Report {
        dispatch!(self, s => report("lca", lca_checks(s)))
    }

    pub fn check_ll_axioms(&self) -> Report {
        dispatch!(self, s => report("ll", ll_checks(s, ContactMode::Rho)))
    }

    /// Finite carriers only; the tail carrier yields a skipped check.
    pub fn check_ca_ll_equivalence(&self) -> Report {
        match self {
            LcaStructure::Finite(s) => ca_ll_equivalence(s),
            LcaStructure::Tail(_) => report(
                "ca-ll-equivalence",
                vec![Check::skipped(
                    "ca-ll-equivalence",
                    "needs a finite carrier",
                )],
            ),
        }
    }

    pub fn check_remark_nca(&self) -> Report {
        dispatch!(self, s => remark_nca(s))
    }

    pub fn check_alexandroff_nca(&self) -> Report {
        dispatch!(self, s => alexandroff_nca(s))
    }
}
