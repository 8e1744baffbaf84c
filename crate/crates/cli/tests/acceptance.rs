//! Acceptance gate: one line per criterion, each under a wall-clock limit.
//! Exits nonzero if any criterion fails or runs over its limit.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::{Duration, Instant};

use lcdual_cli::{check, CheckArgs, Format, Suite};
use lcdual_core::category::{
    check_category_laws, check_functor_t, check_morphism_bijection, check_naturality_algebra,
    check_naturality_space, delta_t_map, enumerate_all_morphisms, generate_morphisms, identity,
    MdhlcMorphism,
};
use lcdual_core::clusters::{
    check_cluster_trace_uniqueness, enumerate_clusters, naive_clusters, tail_cluster_check,
};
use lcdual_core::duality::{check_iota_frame_iso, psi_t, tail_dual_description};
use lcdual_core::ideals::{
    check_frame, check_prime_correspondence, check_tail_eq_sup_bounded, cluster_to_prime,
    delta_ideals, ideal_generated, ideal_join_many, prime_delta_ideals, prime_to_cluster,
};
use lcdual_core::{
    BooleanAlgebra, Bounded, ContactMode, ContactSpec, ContinuousMap, ElementSet, FiniteCarrier,
    FiniteLca, FiniteSpace, LcaStructure, Report, Status, Structure, TailFamily, TailLca,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict, u64);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn exact_pass(r: &Report, what: &str) -> Result<(), String> {
    match r.checks.iter().find(|c| c.status != Status::Pass) {
        None => Ok(()),
        Some(c) => Err(format!("{what}: {} is {:?}", c.id, c.status)),
    }
}

fn space(n: usize) -> FiniteSpace {
    FiniteSpace::with_size(n).unwrap()
}

fn point_filters(n: usize) -> BTreeSet<ElementSet> {
    let c = FiniteCarrier::with_size(n).unwrap();
    (0..n)
        .map(|x| ElementSet::from_elements(c.elements().filter(|a| a.contains(x))))
        .collect()
}

fn criterion_1() -> Verdict {
    for n in 0..=4 {
        let s = LcaStructure::Finite(psi_t(&space(n)));
        exact_pass(&s.check_nca(), &format!("|X|={n} nca"))?;
        exact_pass(&s.check_ll_axioms(), &format!("|X|={n} ll"))?;
        exact_pass(&s.check_lca(), &format!("|X|={n} lca"))?;
    }
    let full = LcaStructure::Finite(FiniteLca::full_adjacency(
        FiniteCarrier::new(["p", "q"]).unwrap(),
    ));
    let nca = full.check_nca();
    let ll = full.check_ll_axioms();
    let nf: Vec<_> = nca.failures().collect();
    let lf: Vec<_> = ll.failures().collect();
    ensure(
        nf.len() == 1 && nf[0].id == "C6",
        format!("full adjacency contact failures: {nf:?}"),
    )?;
    ensure(
        lf.len() == 1 && lf[0].id == "LL6",
        format!("full adjacency inclusion failures: {lf:?}"),
    )?;
    ensure(
        nf[0].witness_value("a") == Some("{p}"),
        "C6 witness is not p",
    )?;
    ensure(
        lf[0].witness_value("a") == Some("{p}"),
        "LL6 witness is not p",
    )?;
    Ok(
        "5 discrete instances pass every axiom; full adjacency on {p,q} fails only C6 and LL6 at p"
            .into(),
    )
}

fn criterion_2() -> Verdict {
    for n in 0..=4 {
        let l = psi_t(&space(n));
        let got: BTreeSet<ElementSet> = enumerate_clusters(&l, ContactMode::Rho)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        ensure(
            got == point_filters(n),
            format!("|X|={n}: clusters differ from point filters"),
        )?;
        if n <= 3 {
            let naive: BTreeSet<ElementSet> = naive_clusters(&l, ContactMode::Rho)
                .map_err(|e| e.to_string())?
                .into_iter()
                .collect();
            ensure(
                naive == got,
                format!("|X|={n}: pruned and naive searches disagree"),
            )?;
        }
    }
    Ok(
        "clusters are exactly the point filters for |X| <= 4; naive scan agrees for |X| <= 3"
            .into(),
    )
}

fn criterion_3() -> Verdict {
    let mut families = 0usize;
    for n in 0..=3 {
        let l = psi_t(&space(n));
        exact_pass(
            &check_frame(&l).map_err(|e| e.to_string())?,
            &format!("n={n} frame"),
        )?;
        exact_pass(
            &check_iota_frame_iso(&l).map_err(|e| e.to_string())?,
            &format!("n={n} iota"),
        )?;
        let ideals = delta_ideals(&l);
        for mask in 0u32..(1 << ideals.len()) {
            let fam: Vec<ElementSet> = (0..ideals.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ideals[i])
                .collect();
            let join = ideal_join_many(&l, &fam).map_err(|e| e.to_string())?;
            ensure(
                join == ideal_generated(&l, &fam),
                format!("n={n}: join formula differs from closure"),
            )?;
            families += 1;
        }
    }
    Ok(format!(
        "frame laws, ideal isomorphism and join formula over {families} subfamilies"
    ))
}

fn criterion_4() -> Verdict {
    let mut instances = 0usize;
    for n in 0..=3 {
        let carrier = FiniteCarrier::with_size(n).unwrap();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for mask in 0u32..(1 << edges.len()) {
            let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
            for (k, &(i, j)) in edges.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    pairs.push((i, j));
                    pairs.push((j, i));
                }
            }
            let spec = ContactSpec::atom_graph(n, &pairs).unwrap();
            for gen in carrier.elements() {
                let l = FiniteLca::new(carrier.clone(), spec.clone(), Bounded::GeneratedBy(gen))
                    .unwrap();
                if !LcaStructure::Finite(l.clone()).check_lca().passed() {
                    continue;
                }
                instances += 1;
                exact_pass(
                    &check_prime_correspondence(&l).map_err(|e| e.to_string())?,
                    "prime correspondence",
                )?;
                exact_pass(
                    &check_cluster_trace_uniqueness(&l).map_err(|e| e.to_string())?,
                    "trace uniqueness",
                )?;
                for j in prime_delta_ideals(&l) {
                    let s = prime_to_cluster(&l, j).map_err(|e| e.to_string())?;
                    ensure(cluster_to_prime(&l, s) == j, "prime round trip")?;
                }
            }
        }
    }
    Ok(format!(
        "mutually inverse on {instances} local contact instances with n <= 3"
    ))
}

fn objects(max: usize) -> Vec<Arc<FiniteLca>> {
    (0..=max).map(|n| Arc::new(psi_t(&space(n)))).collect()
}

fn criterion_5() -> Verdict {
    let objs = objects(3);
    let mut family: Vec<MdhlcMorphism> = Vec::new();
    for a in &objs {
        family.push(identity(a));
        for b in &objs {
            family.extend(generate_morphisms(a, b, usize::MAX, 0).map_err(|e| e.to_string())?);
        }
    }
    let r = check_category_laws(&family).map_err(|e| e.to_string())?;
    exact_pass(&r, "generated")?;
    let generated_note = r.checks[0].note.clone().unwrap_or_default();

    let small = objects(2);
    let mut all: Vec<MdhlcMorphism> = Vec::new();
    for a in &small {
        for b in &small {
            all.extend(enumerate_all_morphisms(a, b).map_err(|e| e.to_string())?);
        }
    }
    let r = check_category_laws(&all).map_err(|e| e.to_string())?;
    exact_pass(&r, "exhaustive")?;
    Ok(format!(
        "generated: {generated_note}; exhaustive tables: {} valid morphisms",
        all.len()
    ))
}

fn criterion_6() -> Verdict {
    let spaces: Vec<FiniteSpace> = (0..=3).map(space).collect();
    let mut maps = 0usize;
    for x in &spaces {
        for y in &spaces {
            for z in &spaces {
                exact_pass(
                    &check_functor_t(x, y, z).map_err(|e| e.to_string())?,
                    "functor law",
                )?;
            }
            for f in ContinuousMap::all_maps(x, y) {
                maps += 1;
                exact_pass(
                    &check_naturality_space(&f).map_err(|e| e.to_string())?,
                    "space naturality",
                )?;
                exact_pass(
                    &check_naturality_algebra(&delta_t_map(&f)).map_err(|e| e.to_string())?,
                    "algebra naturality",
                )?;
            }
        }
    }
    let endo = ContinuousMap::all_maps(&spaces[3], &spaces[3]).len();
    ensure(endo == 27, format!("{endo} endofunctions on 3 points"))?;
    Ok(format!(
        "functor law on all composable pairs; both squares for {maps} functions"
    ))
}

fn criterion_7() -> Verdict {
    let mut pairs = 0;
    for n in 0..=2 {
        for m in 0..=2 {
            let c = check_morphism_bijection(&space(n), &space(m)).map_err(|e| e.to_string())?;
            ensure(c.status == Status::Pass, format!("{n}->{m}: {:?}", c.note))?;
            pairs += 1;
        }
    }
    Ok(format!("bijection on all {pairs} size pairs"))
}

fn criterion_8() -> Verdict {
    for k in 1..=2 {
        let t = TailLca::standard(k, 0).map_err(|e| e.to_string())?;
        let lca = LcaStructure::Tail(t.clone()).check_lca();
        for id in ["BC1", "BC2", "BC3"] {
            ensure(
                lca.status_of(id) == Status::SampledPass,
                format!("k={k}: {id} is {:?}", lca.status_of(id)),
            )?;
        }
        let inf = tail_cluster_check(&t, &TailFamily::Infinity, ContactMode::Alexandroff)
            .map_err(|e| e.to_string())?;
        ensure(!inf.status.is_fail(), format!("k={k}: σ∞ fails {}", inf.id))?;
        let sup = check_tail_eq_sup_bounded(&t);
        ensure(
            sup.status_of("sup-bounded:least") == Status::Pass,
            "supremum identity not closed form",
        )?;
        ensure(!sup.status().is_fail(), "supremum identity fails")?;
        let dual = tail_dual_description(&t).map_err(|e| e.to_string())?;
        ensure(
            dual.status_of("shape-refutation") == Status::SampledPass,
            "shape refutation",
        )?;
        if k == 2 {
            let (e, o) = (t.full_branch(0), t.full_branch(1));
            ensure(
                t.contact(ContactMode::Alexandroff, &e, &o) && !t.rho(&e, &o),
                "E/O contact",
            )?;
            ensure(
                dual.status_of("unbounded-contact") == Status::Pass,
                "unbounded-contact check",
            )?;
        }
        ensure(!t.is_bounded(&t.top()), "1 must be unbounded")?;
    }
    Ok(
        "bounded-ideal axioms sampled-pass, σ∞ a cluster, E C O without E ρ O, no rival shape"
            .into(),
    )
}

fn corpus() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus");
    let mut files: Vec<PathBuf> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    files
}

fn criterion_9() -> Verdict {
    let args = CheckArgs {
        suite: Suite::All,
        files: corpus(),
        seed: 7,
        max_atoms: 4,
        out: None,
        format: Format::Json,
        timing: false,
    };
    let a = check(&args).map_err(|e| e.to_string())?.rendered;
    let b = check(&args).map_err(|e| e.to_string())?.rendered;
    ensure(a == b, "reports differ between runs")?;
    Ok(format!(
        "two runs over {} corpus files give identical {}-byte reports",
        args.files.len(),
        a.len()
    ))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("axiom suites", criterion_1, 5),
        ("cluster oracle", criterion_2, 10),
        ("delta-ideal frame", criterion_3, 5),
        ("cluster/prime correspondence", criterion_4, 2),
        ("category laws", criterion_5, 30),
        ("functoriality and naturality", criterion_6, 30),
        ("duality bijection on small spaces", criterion_7, 10),
        ("non-compact features", criterion_8, 10),
        ("determinism", criterion_9, 10),
    ];
    let mut failed = 0;
    for (i, (name, f, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = f();
        let took = start.elapsed();
        let over = took > Duration::from_secs(*limit);
        let (tag, detail) = match (&verdict, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over time limit; {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!(
            "criterion {} {tag} [{name}] {:.2}s (limit {limit}s): {detail}",
            i + 1,
            took.as_secs_f64()
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 9 criteria passed");
}
