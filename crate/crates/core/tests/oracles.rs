//! Brute-force oracles written against raw bitmasks, compared with the
//! library on every small instance.

use std::collections::BTreeSet;

use lcdual_core::axioms::{ca_ll_equivalence, nca_checks};
use lcdual_core::category::{check_morphism_bijection, delta_t_map, enumerate_all_morphisms};
use lcdual_core::clusters::{enumerate_clusters, naive_clusters};
use lcdual_core::duality::psi_t;
use lcdual_core::ideals::{delta_ideals, ideal_generated, ideal_join, prime_delta_ideals};
use lcdual_core::{
    AtomSet, Bounded, ContactMode, ContactSpec, ContinuousMap, ElementSet, FiniteCarrier,
    FiniteLca, FiniteSpace, Status,
};

/// Contact relation as a plain predicate on bitmasks.
struct Oracle {
    n: usize,
    rel: Box<dyn Fn(u64, u64) -> bool>,
}

impl Oracle {
    fn elems(&self) -> Vec<u64> {
        (0..1u64 << self.n).collect()
    }

    fn comp(&self, a: u64) -> u64 {
        !a & ((1 << self.n) - 1)
    }

    fn wb(&self, a: u64, b: u64) -> bool {
        !(self.rel)(a, self.comp(b))
    }

    fn axioms(&self) -> [bool; 6] {
        let e = self.elems();
        let c = &self.rel;
        let c1 = e.iter().all(|&a| a == 0 || c(a, a));
        let c2 = e
            .iter()
            .all(|&a| e.iter().all(|&b| !c(a, b) || (a != 0 && b != 0)));
        let c3 = e.iter().all(|&a| e.iter().all(|&b| c(a, b) == c(b, a)));
        let c4 = e.iter().all(|&a| {
            e.iter()
                .all(|&b| e.iter().all(|&d| c(a, b | d) == (c(a, b) || c(a, d))))
        });
        let c5 = e.iter().all(|&a| {
            e.iter()
                .all(|&b| c(a, b) || e.iter().any(|&d| !c(a, d) && !c(b, self.comp(d))))
        });
        let top = (1 << self.n) - 1;
        let c6 = e
            .iter()
            .all(|&a| a == top || e.iter().any(|&b| b != 0 && !c(b, a)));
        [c1, c2, c3, c4, c5, c6]
    }

    /// Clusters by direct scan of every family of elements.
    fn clusters(&self) -> BTreeSet<u64> {
        let e = self.elems();
        let c = &self.rel;
        let mut out = BTreeSet::new();
        for fam in 1u64..(1u64 << e.len()) {
            let mem = |a: u64| fam >> a & 1 == 1;
            let members: Vec<u64> = e.iter().copied().filter(|&a| mem(a)).collect();
            let k1 = members.iter().all(|&a| members.iter().all(|&b| c(a, b)));
            let k2 = e
                .iter()
                .all(|&a| e.iter().all(|&b| !mem(a | b) || mem(a) || mem(b)));
            let k3 = e
                .iter()
                .all(|&a| mem(a) || members.iter().any(|&b| !c(a, b)));
            if k1 && k2 && k3 {
                out.insert(fam);
            }
        }
        out
    }

    /// Delta-ideals with every element bounded, by direct scan.
    fn delta_ideals(&self) -> BTreeSet<u64> {
        let e = self.elems();
        let mut out = BTreeSet::new();
        for fam in 1u64..(1u64 << e.len()) {
            let mem = |a: u64| fam >> a & 1 == 1;
            let ok = mem(0)
                && e.iter()
                    .all(|&a| !mem(a) || e.iter().all(|&b| b & !a != 0 || mem(b)))
                && e.iter()
                    .all(|&a| e.iter().all(|&b| !(mem(a) && mem(b)) || mem(a | b)))
                && e.iter()
                    .all(|&a| !mem(a) || e.iter().any(|&b| mem(b) && self.wb(a, b)));
            if ok {
                out.insert(fam);
            }
        }
        out
    }
}

fn graph_oracle(n: usize, adj: Vec<u64>) -> Oracle {
    Oracle {
        n,
        rel: Box::new(move |a, b| (0..n).any(|i| a >> i & 1 == 1 && adj[i] & b != 0)),
    }
}

fn overlap_oracle(n: usize) -> Oracle {
    Oracle {
        n,
        rel: Box::new(|a, b| a & b != 0),
    }
}

fn as_bits(s: ElementSet) -> u64 {
    s.iter().fold(0, |acc, a| acc | 1 << a.bits())
}

/// Every reflexive symmetric graph on `n` atoms.
fn all_graphs(n: usize) -> Vec<Vec<(usize, usize)>> {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    (0..1u32 << edges.len())
        .map(|mask| {
            edges
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect()
}

fn adjacency(n: usize, pairs: &[(usize, usize)]) -> Vec<u64> {
    let mut adj: Vec<u64> = (0..n).map(|i| 1 << i).collect();
    for &(i, j) in pairs {
        adj[i] |= 1 << j;
        adj[j] |= 1 << i;
    }
    adj
}

fn graph_lca(n: usize, pairs: &[(usize, usize)]) -> FiniteLca {
    FiniteLca::new(
        FiniteCarrier::with_size(n).unwrap(),
        ContactSpec::atom_graph(n, &closed_pairs(n, pairs)).unwrap(),
        Bounded::All,
    )
    .unwrap()
}

#[test]
fn axiom_verdicts_match_oracle_on_all_graphs() {
    for n in 0..=3 {
        for pairs in all_graphs(n) {
            let l = graph_lca(n, &pairs);
            let expect = graph_oracle(n, adjacency(n, &pairs)).axioms();
            let got = nca_checks(&l, ContactMode::Rho);
            for (k, want) in expect.iter().enumerate() {
                let id = format!("C{}", k + 1);
                let c = got.iter().find(|c| c.id == id).unwrap();
                assert_eq!(!c.status.is_fail(), *want, "n={n} {pairs:?} {id}");
            }
            assert!(ca_ll_equivalence(&l).passed(), "n={n} {pairs:?}");
        }
    }
}

#[test]
fn clusters_match_oracle_on_all_graphs() {
    for n in 0..=3 {
        for pairs in all_graphs(n) {
            let l = graph_lca(n, &pairs);
            let expect = graph_oracle(n, adjacency(n, &pairs)).clusters();
            let got: BTreeSet<u64> = enumerate_clusters(&l, ContactMode::Rho)
                .unwrap()
                .into_iter()
                .map(as_bits)
                .collect();
            assert_eq!(got, expect, "n={n} {pairs:?}");
        }
    }
}

#[test]
fn discrete_clusters_are_point_filters() {
    for n in 0..=4 {
        let l = psi_t(&FiniteSpace::with_size(n).unwrap());
        let expect: Vec<u64> = (0..n)
            .map(|x| {
                (0u64..1 << n)
                    .filter(|a| a >> x & 1 == 1)
                    .fold(0, |acc, a| acc | 1 << a)
            })
            .collect();
        let mut got: Vec<u64> = enumerate_clusters(&l, ContactMode::Rho)
            .unwrap()
            .into_iter()
            .map(as_bits)
            .collect();
        got.sort_unstable();
        let mut want = expect.clone();
        want.sort_unstable();
        assert_eq!(got, want, "n={n}");
        if n <= 2 {
            assert_eq!(
                naive_clusters(&l, ContactMode::Rho)
                    .unwrap()
                    .into_iter()
                    .map(as_bits)
                    .collect::<BTreeSet<_>>(),
                overlap_oracle(n).clusters()
            );
        }
    }
}

#[test]
fn delta_ideals_match_oracle() {
    for n in 0..=3 {
        for pairs in all_graphs(n) {
            let l = graph_lca(n, &pairs);
            let expect = graph_oracle(n, adjacency(n, &pairs)).delta_ideals();
            let got: BTreeSet<u64> = delta_ideals(&l).into_iter().map(as_bits).collect();
            assert_eq!(got, expect, "n={n} {pairs:?}");
        }
        let l = psi_t(&FiniteSpace::with_size(n).unwrap());
        assert_eq!(delta_ideals(&l).len(), 1 << n);
        assert_eq!(prime_delta_ideals(&l).len(), n);
    }
}

#[test]
fn join_formula_matches_closure() {
    for n in 0..=3 {
        let l = psi_t(&FiniteSpace::with_size(n).unwrap());
        let ideals = delta_ideals(&l);
        for &i in &ideals {
            for &j in &ideals {
                assert_eq!(ideal_join(&l, i, j).unwrap(), ideal_generated(&l, &[i, j]));
            }
        }
    }
}

#[test]
fn morphism_counts_are_function_counts() {
    for n in 0..=2 {
        for m in 0..=2 {
            let x = FiniteSpace::with_size(n).unwrap();
            let y = FiniteSpace::with_size(m).unwrap();
            let a = std::sync::Arc::new(psi_t(&y));
            let b = std::sync::Arc::new(psi_t(&x));
            let all = enumerate_all_morphisms(&a, &b).unwrap();
            assert_eq!(all.len(), m.pow(n as u32), "{n}->{m}");
            for f in ContinuousMap::all_maps(&x, &y) {
                assert!(all.iter().any(|p| p.table() == delta_t_map(&f).table()));
            }
            assert_eq!(
                check_morphism_bijection(&x, &y).unwrap().status,
                Status::Pass
            );
        }
    }
}

#[test]
fn explicit_table_c4_violation() {
    let c = FiniteCarrier::new(["x", "y", "z"]).unwrap();
    let x = c.element(&["x"]).unwrap();
    let yz = c.element(&["y", "z"]).unwrap();
    let mut pairs: BTreeSet<(AtomSet, AtomSet)> = BTreeSet::new();
    for a in c.elements() {
        for b in c.elements() {
            if a.intersects(b) {
                pairs.insert((a, b));
            }
        }
    }
    pairs.insert((x, yz));
    pairs.insert((yz, x));
    let l = FiniteLca::new(c, ContactSpec::ExplicitTable(pairs.clone()), Bounded::All).unwrap();
    let rel = move |a: u64, b: u64| pairs.contains(&(AtomSet(a), AtomSet(b)));
    let expect = Oracle {
        n: 3,
        rel: Box::new(rel),
    }
    .axioms();
    assert!(!expect[3]);
    let got = nca_checks(&l, ContactMode::Rho);
    assert!(got.iter().find(|c| c.id == "C4").unwrap().status.is_fail());
}

fn closed_pairs(n: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for &(i, j) in pairs {
        out.push((i, j));
        out.push((j, i));
    }
    out
}
