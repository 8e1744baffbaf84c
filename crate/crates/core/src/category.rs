//! The category of finite local contact structures with multi-valued
//! morphisms: each element of the source goes to a delta-ideal of the
//! target. Composition joins images of images; the identity sends `a` to
//! `I_a`.
//!
//! The functors to and from finite discrete spaces are [`delta_t_map`]
//! (a function `f: X -> Y` gives a morphism `psi_t(Y) -> psi_t(X)`) and
//! [`delta_a_map`] (a morphism `A -> B` gives a function between duals,
//! `psi_a(B) -> psi_a(A)`).

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AtomSet, BooleanAlgebra, ElementSet};
use crate::clusters::trace;
use crate::contact::{ContactMode, FiniteLca, Structure};
use crate::duality::{
    iota, lambda_g, lambda_iso, psi_a, psi_t, t_map, ContinuousMap, FiniteSpace, LcaIso,
};
use crate::error::{Error, Result};
use crate::ideals::{
    delta_ideal_violation, delta_ideals, down_set, prime_to_cluster, principal_delta_ideal,
};
use crate::report::{Check, Report, Status};

/// Largest object [`enumerate_all_morphisms`] accepts.
pub const TABLE_ATOM_LIMIT: usize = 2;

/// A candidate morphism: one target element set per source element, in
/// source enumeration order. Equality is extensional.
#[derive(Clone)]
pub struct MdhlcMorphism {
    source: Arc<FiniteLca>,
    target: Arc<FiniteLca>,
    table: Vec<ElementSet>,
}

impl PartialEq for MdhlcMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table
            && same_object(&self.source, &other.source)
            && same_object(&self.target, &other.target)
    }
}

impl Eq for MdhlcMorphism {}

impl fmt::Debug for MdhlcMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MdhlcMorphism({self})")
    }
}

impl fmt::Display for MdhlcMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let entries: Vec<String> = self
            .source
            .elements()
            .iter()
            .map(|a| {
                format!(
                    "{} -> {}",
                    self.source.render(a),
                    self.target.render_set(self.table[a.index()])
                )
            })
            .collect();
        write!(f, "{}", entries.join("; "))
    }
}

fn same_object(a: &Arc<FiniteLca>, b: &Arc<FiniteLca>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl MdhlcMorphism {
    pub fn new(
        source: Arc<FiniteLca>,
        target: Arc<FiniteLca>,
        table: Vec<ElementSet>,
    ) -> Result<Self> {
        if table.len() != source.elements().len() {
            return Err(Error::Malformed(format!(
                "morphism table has {} entries for {} source elements",
                table.len(),
                source.elements().len()
            )));
        }
        if table.iter().any(|s| !s.is_subset(target.all_elements())) {
            return Err(Error::Malformed(
                "morphism table names elements outside the target".into(),
            ));
        }
        Ok(MdhlcMorphism {
            source,
            target,
            table,
        })
    }

    pub fn source(&self) -> &Arc<FiniteLca> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteLca> {
        &self.target
    }

    pub fn table(&self) -> &[ElementSet] {
        &self.table
    }

    pub fn apply(&self, a: AtomSet) -> ElementSet {
        self.table[a.index()]
    }

    pub fn is_valid(&self) -> bool {
        check_morphism(self).passed()
    }
}

/// Join of a family of target sets by the finite-joins formula, without
/// validating the operands.
fn raw_join(family: impl IntoIterator<Item = ElementSet>) -> ElementSet {
    let mut acc = ElementSet::from_elements([AtomSet::EMPTY]);
    for i in family {
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

/// Largest delta-ideal inside `s`, i.e. the meet computed in the frame.
fn frame_meet(l: &FiniteLca, ideals: &[ElementSet], s: ElementSet) -> ElementSet {
    ideals
        .iter()
        .copied()
        .filter(|i| i.is_subset(s))
        .max_by_key(|i| i.len())
        .unwrap_or(ElementSet::EMPTY)
        .intersection(l.all_elements())
}

/// Axioms (M1)-(M6). (M2) is checked with the meet taken both in the
/// frame of delta-ideals and as plain intersection.
pub fn check_morphism(phi: &MdhlcMorphism) -> Report {
    let (a_obj, b_obj) = (&*phi.source, &*phi.target);
    let ra = |a: AtomSet| a_obj.render(&a);
    let rb = |s: ElementSet| b_obj.render_set(s);
    let elems = a_obj.elements();
    let bounded: Vec<AtomSet> = elems
        .iter()
        .copied()
        .filter(|a| a_obj.is_bounded(a))
        .collect();
    let mut r = Report::new("morphism");

    let mut m1 = Check::pass("M1");
    for &a in elems {
        if let Some(v) = delta_ideal_violation(b_obj, phi.apply(a)) {
            m1 = Check::fail("M1")
                .with_witness("a", ra(a))
                .with_witness("image", rb(phi.apply(a)))
                .with_note(format!("image fails {}", v.id));
            break;
        }
    }
    r.push(m1);

    let ideals = delta_ideals(b_obj);
    let mut m2 = Check::pass("M2");
    'm2: for &a in elems {
        for &b in elems {
            let lhs = phi.apply(a.intersection(b));
            let cap = phi.apply(a).intersection(phi.apply(b));
            let meet = frame_meet(b_obj, &ideals, cap);
            if lhs != cap || lhs != meet {
                m2 = Check::fail("M2")
                    .with_witness("a", ra(a))
                    .with_witness("b", ra(b))
                    .with_note(if lhs != meet {
                        "differs from the frame meet"
                    } else {
                        "differs from the intersection"
                    });
                break 'm2;
            }
        }
    }
    r.push(m2);

    let mut m3 = Check::pass("M3");
    for &a in elems {
        let join = raw_join(
            bounded
                .iter()
                .filter(|b| a_obj.way_below(ContactMode::Rho, b, &a))
                .map(|&b| phi.apply(b)),
        );
        if join != phi.apply(a) {
            m3 = Check::fail("M3")
                .with_witness("a", ra(a))
                .with_witness("join", rb(join));
            break;
        }
    }
    r.push(m3);

    let zero = ElementSet::from_elements([AtomSet::EMPTY]);
    r.push(if phi.apply(AtomSet::EMPTY) == zero {
        Check::pass("M4")
    } else {
        Check::fail("M4").with_witness("image", rb(phi.apply(AtomSet::EMPTY)))
    });

    let pairs: Vec<(AtomSet, AtomSet)> = bounded
        .iter()
        .flat_map(|&a| bounded.iter().map(move |&b| (a, b)))
        .filter(|(a, b)| a_obj.way_below(ContactMode::Rho, a, b))
        .collect();
    let mut m5 = Check::pass("M5");
    'm5: for &(a1, b1) in &pairs {
        for &(a2, b2) in &pairs {
            let lhs = phi.apply(a1.union(a2));
            let rhs = raw_join([phi.apply(b1), phi.apply(b2)]);
            if !lhs.is_subset(rhs) {
                m5 = Check::fail("M5")
                    .with_witness("a1", ra(a1))
                    .with_witness("b1", ra(b1))
                    .with_witness("a2", ra(a2))
                    .with_witness("b2", ra(b2));
                break 'm5;
            }
        }
    }
    r.push(m5);

    let covered = bounded
        .iter()
        .fold(ElementSet::EMPTY, |acc, &a| acc.union(phi.apply(a)));
    let missing = b_obj.bounded_set().difference(covered);
    r.push(match missing.iter().next() {
        None => Check::pass("M6"),
        Some(b) => Check::fail("M6").with_witness("b", b_obj.render(&b)),
    });
    r
}

/// `a ↦ I_a`.
pub fn identity(l: &Arc<FiniteLca>) -> MdhlcMorphism {
    MdhlcMorphism {
        source: l.clone(),
        target: l.clone(),
        table: l
            .elements()
            .iter()
            .map(|&a| principal_delta_ideal(l, a))
            .collect(),
    }
}

/// `(ψ ⋄ φ)(a) = ⋁{ψ(b) : b ∈ φ(a)}`.
pub fn compose(psi: &MdhlcMorphism, phi: &MdhlcMorphism) -> Result<MdhlcMorphism> {
    if !same_object(&phi.target, &psi.source) {
        return Err(Error::ObjectMismatch(
            "the first morphism's target is not the second morphism's source".into(),
        ));
    }
    let table = phi
        .table
        .iter()
        .map(|img| raw_join(img.iter().map(|b| psi.apply(b))))
        .collect();
    Ok(MdhlcMorphism {
        source: phi.source.clone(),
        target: psi.target.clone(),
        table,
    })
}

/// `φ_f(G) = {F : F ⊆ f⁻¹(G)}`, from `psi_t(target of f)` to
/// `psi_t(source of f)`.
pub fn delta_t_map(f: &ContinuousMap) -> MdhlcMorphism {
    let src = Arc::new(psi_t(f.target()));
    let tgt = Arc::new(psi_t(f.source()));
    let table = src
        .elements()
        .iter()
        .map(|&g| down_set(&tgt, f.preimage(g)))
        .collect();
    MdhlcMorphism {
        source: src,
        target: tgt,
        table,
    }
}

/// Bounded trace of `f_φ(σ')`: the `a` such that every `b` with `a << b`
/// has `φ(b)` meeting `σ'`.
fn dual_trace(phi: &MdhlcMorphism, sigma: ElementSet) -> ElementSet {
    let a_obj = &*phi.source;
    ElementSet::from_elements(a_obj.elements().iter().copied().filter(|a| {
        a_obj.is_bounded(a)
            && a_obj
                .elements()
                .iter()
                .filter(|b| a_obj.way_below(ContactMode::Rho, a, b))
                .all(|&b| phi.apply(b).intersects(sigma))
    }))
}

/// The dual function `psi_a(target) -> psi_a(source)`, as indices, with
/// each trace resolved through the prime delta-ideal it complements.
pub fn delta_a_map(phi: &MdhlcMorphism) -> Result<Vec<usize>> {
    let da = psi_a(&phi.source)?;
    let db = psi_a(&phi.target)?;
    db.points()
        .iter()
        .map(|&s| {
            let t = dual_trace(phi, s);
            let j = phi.source.bounded_set().difference(t);
            let sigma = prime_to_cluster(&phi.source, j)
                .map_err(|e| Error::Contract(format!("trace does not resolve: {e}")))?;
            da.index_of(sigma)
                .ok_or_else(|| Error::Contract("resolved cluster is not a dual point".into()))
        })
        .collect()
}

/// [`delta_a_map`] by scanning the source's dual for the matching trace.
pub fn delta_a_map_by_scan(phi: &MdhlcMorphism) -> Result<Vec<usize>> {
    let da = psi_a(&phi.source)?;
    let db = psi_a(&phi.target)?;
    db.points()
        .iter()
        .map(|&s| {
            let t = dual_trace(phi, s);
            let hits: Vec<usize> = (0..da.len())
                .filter(|&i| trace(&phi.source, da.points()[i]) == t)
                .collect();
            match hits.as_slice() {
                [i] => Ok(*i),
                _ => Err(Error::Contract(format!(
                    "{} clusters match a trace",
                    hits.len()
                ))),
            }
        })
        .collect()
}

/// The dual function as a map between the duals viewed as spaces.
pub fn delta_a_continuous(phi: &MdhlcMorphism) -> Result<ContinuousMap> {
    let table = delta_a_map(phi)?;
    let da = psi_a(&phi.source)?.as_space();
    let db = psi_a(&phi.target)?.as_space();
    ContinuousMap::new(db, da, table)
}

/// For bounded `a`, the preimage of `λ^g(a)` under the dual function is
/// `ι(φ(a))`; so `ι(φ(1))` is the whole dual when `1` is bounded.
pub fn check_eq_preimage_iota(phi: &MdhlcMorphism) -> Result<Report> {
    let f = delta_a_map(phi)?;
    let da = psi_a(&phi.source)?;
    let db = psi_a(&phi.target)?;
    let preimage = |s: AtomSet| {
        (0..f.len())
            .filter(|&i| s.contains(f[i]))
            .fold(AtomSet::EMPTY, |acc, i| acc.union(AtomSet::singleton(i)))
    };
    let mut r = Report::new("preimage-iota");
    let mut eq = Check::pass("preimage-iota");
    for &a in phi
        .source
        .elements()
        .iter()
        .filter(|a| phi.source.is_bounded(a))
    {
        let lhs = preimage(lambda_g(&da, a));
        let rhs = iota(&db, phi.apply(a));
        if lhs != rhs {
            eq = Check::fail("preimage-iota")
                .with_witness("a", phi.source.render(&a))
                .with_witness("preimage", db.render(lhs))
                .with_witness("iota", db.render(rhs));
            break;
        }
    }
    r.push(eq);
    let top = phi.source.top();
    r.push(if !phi.source.is_bounded(&top) {
        Check::skipped("total", "1 is not bounded")
    } else {
        Check::new(
            "total",
            Status::from_bool(iota(&db, phi.apply(top)) == AtomSet::full(db.len())),
        )
    });
    Ok(r)
}

/// `θ̃(a) = I_{θ(a)}`.
pub fn tilde(theta: &LcaIso) -> MdhlcMorphism {
    let src = Arc::new(theta.source().clone());
    let tgt = Arc::new(theta.target().clone());
    let table = src
        .elements()
        .iter()
        .map(|&a| principal_delta_ideal(&tgt, theta.apply(a)))
        .collect();
    MdhlcMorphism {
        source: src,
        target: tgt,
        table,
    }
}

/// `λ̃` for `l`: from `l` to the subset algebra of its dual.
pub fn lambda_tilde(l: &FiniteLca) -> Result<MdhlcMorphism> {
    Ok(tilde(&lambda_iso(&psi_a(l)?)?))
}

fn with_object(
    mut phi: MdhlcMorphism,
    source: Option<&Arc<FiniteLca>>,
    target: Option<&Arc<FiniteLca>>,
) -> MdhlcMorphism {
    if let Some(s) = source {
        if **s == *phi.source {
            phi.source = s.clone();
        }
    }
    if let Some(t) = target {
        if **t == *phi.target {
            phi.target = t.clone();
        }
    }
    phi
}

/// `λ̃_B ⋄ φ = Δ^t(Δ^a(φ)) ⋄ λ̃_A`.
pub fn check_naturality_algebra(phi: &MdhlcMorphism) -> Result<Report> {
    let la = lambda_tilde(&phi.source)?;
    let lb = lambda_tilde(&phi.target)?;
    let dd = delta_t_map(&delta_a_continuous(phi)?);
    let left = compose(&lb, phi)?;
    let right = compose(&dd, &la)?;
    let mut r = Report::new("naturality-algebra");
    let ok = left.table == right.table && *left.target == *right.target;
    let mut c = Check::new("naturality-algebra", Status::from_bool(ok));
    if !ok {
        if let Some(a) = phi
            .source
            .elements()
            .iter()
            .find(|a| left.apply(**a) != right.apply(**a))
        {
            c = c.with_witness("a", phi.source.render(a));
        }
    }
    r.push(c);
    Ok(r)
}

/// `t_Y ∘ f = Δ^a(Δ^t(f)) ∘ t_X`, pointwise.
pub fn check_naturality_space(f: &ContinuousMap) -> Result<Report> {
    let tx = t_map(f.source())?;
    let ty = t_map(f.target())?;
    let g = delta_a_map(&delta_t_map(f))?;
    let mut r = Report::new("naturality-space");
    let bad = (0..f.source().len()).find(|&x| ty[f.apply(x)] != g[tx[x]]);
    r.push(match bad {
        None => Check::pass("naturality-space"),
        Some(x) => {
            Check::fail("naturality-space").with_witness("x", f.source().points()[x].clone())
        }
    });
    Ok(r)
}

/// Deterministic family of valid morphisms `a -> b`: for each function `g`
/// between the duals, `λ̃_B⁻¹ ⋄ Δ^t(g) ⋄ λ̃_A`; then `θ̃` for every atom
/// permutation that is an isomorphism; then, when `a == b`, pairwise
/// composites. Duplicates and invalid tables are dropped. If more than
/// `budget` remain, the first is kept and the rest is a seeded sample.
pub fn generate_morphisms(
    a: &Arc<FiniteLca>,
    b: &Arc<FiniteLca>,
    budget: usize,
    seed: u64,
) -> Result<Vec<MdhlcMorphism>> {
    let da = psi_a(a)?;
    let db = psi_a(b)?;
    let la = with_object(tilde(&lambda_iso(&da)?), Some(a), None);
    let lb_inv = with_object(tilde(&lambda_iso(&db)?.inverse()), None, Some(b));
    let mut out: Vec<MdhlcMorphism> = Vec::new();
    let push = |m: MdhlcMorphism, out: &mut Vec<MdhlcMorphism>| {
        if !out.contains(&m) && m.is_valid() {
            out.push(m);
        }
    };
    for g in ContinuousMap::all_maps(&db.as_space(), &da.as_space()) {
        let mid = delta_t_map(&g);
        let m = compose(&lb_inv, &compose(&mid, &la)?)?;
        push(with_object(m, Some(a), Some(b)), &mut out);
    }
    if a.atom_count() == b.atom_count() {
        for perm in permutations(a.atom_count()) {
            if let Ok(theta) = LcaIso::from_permutation((**a).clone(), (**b).clone(), &perm) {
                push(with_object(tilde(&theta), Some(a), Some(b)), &mut out);
            }
        }
    }
    if same_object(a, b) {
        let base = out.clone();
        for p in &base {
            for q in &base {
                push(compose(p, q)?, &mut out);
            }
        }
    }
    if out.len() > budget && budget > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked: Vec<usize> = sample(&mut rng, out.len() - 1, budget - 1)
            .into_iter()
            .map(|i| i + 1)
            .collect();
        picked.sort_unstable();
        let mut chosen = vec![out[0].clone()];
        chosen.extend(picked.into_iter().map(|i| out[i].clone()));
        out = chosen;
    } else if budget == 0 {
        out.clear();
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// Every valid table from `a` to `b`, by brute force over all assignments
/// of target delta-ideals to source elements.
pub fn enumerate_all_morphisms(
    a: &Arc<FiniteLca>,
    b: &Arc<FiniteLca>,
) -> Result<Vec<MdhlcMorphism>> {
    for l in [a, b] {
        if l.atom_count() > TABLE_ATOM_LIMIT {
            return Err(Error::SizeLimit {
                what: "morphism table enumeration".into(),
                got: l.atom_count(),
                limit: TABLE_ATOM_LIMIT,
            });
        }
    }
    let ideals = delta_ideals(b);
    let n = a.elements().len();
    let m = ideals.len();
    let total = m.pow(n as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let table = (0..n)
            .map(|_| {
                let d = code % m;
                code /= m;
                ideals[d]
            })
            .collect();
        let phi = MdhlcMorphism {
            source: a.clone(),
            target: b.clone(),
            table,
        };
        if phi.is_valid() {
            out.push(phi);
        }
    }
    Ok(out)
}

/// Identity laws, closure and associativity over a family of morphisms.
/// Every composable pair and triple in the family is tested.
pub fn check_category_laws(family: &[MdhlcMorphism]) -> Result<Report> {
    let mut r = Report::new("category-laws");
    let mut ids = Check::pass("identity");
    let mut valid = Check::pass("valid");
    let mut closed = Check::pass("composition-valid");
    let mut assoc = Check::pass("associativity");
    let mut pairs = 0usize;
    let mut triples = 0usize;
    for (i, phi) in family.iter().enumerate() {
        if !phi.is_valid() && valid.status == Status::Pass {
            valid = Check::fail("valid").with_witness("morphism", i.to_string());
        }
        let left = compose(&identity(&phi.target), phi)?;
        let right = compose(phi, &identity(&phi.source))?;
        if (left != *phi || right != *phi) && ids.status == Status::Pass {
            ids = Check::fail("identity").with_witness("morphism", i.to_string());
        }
    }
    let mut composites: Vec<Vec<Option<MdhlcMorphism>>> =
        vec![vec![None; family.len()]; family.len()];
    for (i, phi) in family.iter().enumerate() {
        for (j, psi) in family.iter().enumerate() {
            if !same_object(&phi.target, &psi.source) {
                continue;
            }
            pairs += 1;
            let pp = compose(psi, phi)?;
            if closed.status == Status::Pass && !pp.is_valid() {
                closed = Check::fail("composition-valid")
                    .with_witness("phi", i.to_string())
                    .with_witness("psi", j.to_string());
            }
            composites[i][j] = Some(pp);
        }
    }
    for (i, phi) in family.iter().enumerate() {
        for (j, pp) in composites[i].iter().enumerate() {
            let Some(pp) = pp else {
                continue;
            };
            for (k, chi) in family.iter().enumerate() {
                let Some(cp) = &composites[j][k] else {
                    continue;
                };
                triples += 1;
                if compose(chi, pp)? != compose(cp, phi)? && assoc.status == Status::Pass {
                    assoc = Check::fail("associativity")
                        .with_witness("phi", i.to_string())
                        .with_witness("psi", j.to_string())
                        .with_witness("chi", k.to_string());
                }
            }
        }
    }
    let note = format!(
        "{} morphisms, {pairs} composable pairs, {triples} composable triples",
        family.len()
    );
    for c in [valid, ids, closed, assoc] {
        r.push(c.with_note(note.clone()));
    }
    Ok(r)
}

/// `Δ^t(g ∘ f) = Δ^t(f) ⋄ Δ^t(g)` for all `f: X -> Y`, `g: Y -> Z`, and
/// `Δ^t(id) = i`.
pub fn check_functor_t(x: &FiniteSpace, y: &FiniteSpace, z: &FiniteSpace) -> Result<Report> {
    let mut r = Report::new("functor-t");
    let mut law = Check::pass("composition");
    let mut count = 0usize;
    'outer: for f in ContinuousMap::all_maps(x, y) {
        let df = delta_t_map(&f);
        for g in ContinuousMap::all_maps(y, z) {
            count += 1;
            let lhs = delta_t_map(&g.after(&f)?);
            let rhs = compose(&df, &delta_t_map(&g))?;
            if lhs != rhs {
                law = Check::fail("composition")
                    .with_witness("f", format!("{:?}", f.table()))
                    .with_witness("g", format!("{:?}", g.table()));
                break 'outer;
            }
        }
    }
    r.push(law.with_note(format!("{count} pairs")));
    let id = delta_t_map(&ContinuousMap::identity(x));
    r.push(Check::new(
        "identity",
        Status::from_bool(id == identity(&id.source)),
    ));
    Ok(r)
}

/// `Δ^a(ψ ⋄ φ) = Δ^a(φ) ∘ Δ^a(ψ)` for composable pairs of the family, and
/// `Δ^a(i) = id`. The prime-ideal and scanning routes are compared too.
pub fn check_functor_a(family: &[MdhlcMorphism]) -> Result<Report> {
    let mut r = Report::new("functor-a");
    let mut law = Check::pass("composition");
    let mut routes = Check::pass("trace-routes");
    let mut ident = Check::pass("identity");
    let mut objects: Vec<Arc<FiniteLca>> = Vec::new();
    for (i, phi) in family.iter().enumerate() {
        if delta_a_map(phi)? != delta_a_map_by_scan(phi)? && routes.status == Status::Pass {
            routes = Check::fail("trace-routes").with_witness("morphism", i.to_string());
        }
        for o in [&phi.source, &phi.target] {
            if !objects.iter().any(|p| same_object(p, o)) {
                objects.push(o.clone());
            }
        }
    }
    for o in &objects {
        let d = delta_a_map(&identity(o))?;
        if d != (0..d.len()).collect::<Vec<_>>() && ident.status == Status::Pass {
            ident =
                Check::fail("identity").with_witness("object", o.carrier().atom_names().join(","));
        }
    }
    for (i, phi) in family.iter().enumerate() {
        for (j, psi) in family.iter().enumerate() {
            if !same_object(&phi.target, &psi.source) {
                continue;
            }
            let lhs = delta_a_map(&compose(psi, phi)?)?;
            let fphi = delta_a_map(phi)?;
            let rhs: Vec<usize> = delta_a_map(psi)?.into_iter().map(|y| fphi[y]).collect();
            if lhs != rhs {
                law = Check::fail("composition")
                    .with_witness("phi", i.to_string())
                    .with_witness("psi", j.to_string());
                break;
            }
        }
        if law.status.is_fail() {
            break;
        }
    }
    r.push(ident);
    r.push(routes);
    r.push(law);
    Ok(r)
}

/// `f ↦ Δ^t(f)` is a bijection from functions `X -> Y` onto the valid
/// morphisms `psi_t(Y) -> psi_t(X)`, by full enumeration of both sides.
pub fn check_morphism_bijection(x: &FiniteSpace, y: &FiniteSpace) -> Result<Check> {
    let maps = ContinuousMap::all_maps(x, y);
    let images: Vec<MdhlcMorphism> = maps.iter().map(delta_t_map).collect();
    let src = images
        .first()
        .map(|m| m.source.clone())
        .unwrap_or_else(|| Arc::new(psi_t(y)));
    let tgt = images
        .first()
        .map(|m| m.target.clone())
        .unwrap_or_else(|| Arc::new(psi_t(x)));
    let all = enumerate_all_morphisms(&src, &tgt)?;
    let distinct: BTreeSet<Vec<ElementSet>> = images.iter().map(|m| m.table.clone()).collect();
    let valid: BTreeSet<Vec<ElementSet>> = all.iter().map(|m| m.table.clone()).collect();
    let ok = distinct.len() == images.len() && distinct == valid;
    let id = format!("bijection:{}->{}", x.len(), y.len());
    Ok(Check::new(&id, Status::from_bool(ok)).with_note(format!(
        "{} functions, {} valid tables",
        maps.len(),
        all.len()
    )))
}

/// `θ̃⁻¹ ⋄ θ̃ = i` and `θ̃ ⋄ θ̃⁻¹ = i`, with `θ̃` valid.
pub fn check_tilde_iso(theta: &LcaIso) -> Result<Report> {
    let t = tilde(theta);
    let ti = tilde(&theta.inverse());
    let ti = with_object(ti, Some(&t.target), Some(&t.source));
    let mut r = Report::new("tilde-iso");
    r.push(Check::new(
        "valid",
        Status::from_bool(t.is_valid() && ti.is_valid()),
    ));
    r.push(Check::new(
        "left-inverse",
        Status::from_bool(compose(&ti, &t)? == identity(&t.source)),
    ));
    r.push(Check::new(
        "right-inverse",
        Status::from_bool(compose(&t, &ti)? == identity(&t.target)),
    ));
    Ok(r)
}
