//! Fixtures shared by the benchmarks: discrete duals of small spaces and
//! path-adjacency algebras.

use std::sync::Arc;

use lcdual_core::{Bounded, ContactSpec, FiniteCarrier, FiniteLca, FiniteSpace, Result};

pub fn space(n: usize) -> FiniteSpace {
    FiniteSpace::with_size(n).expect("bench sizes are in range")
}

/// The discrete dual of an `n`-point space.
pub fn discrete(n: usize) -> Arc<FiniteLca> {
    Arc::new(lcdual_core::duality::psi_t(&space(n)))
}

/// Atoms `0..n` on a path, each adjacent to itself and its neighbours.
pub fn path(n: usize) -> Result<FiniteLca> {
    let mut pairs: Vec<(usize, usize)> = (0..n).map(|i| (i, i)).collect();
    for i in 1..n {
        pairs.push((i - 1, i));
        pairs.push((i, i - 1));
    }
    FiniteLca::new(
        FiniteCarrier::with_size(n)?,
        ContactSpec::atom_graph(n, &pairs)?,
        Bounded::All,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        assert_eq!(discrete(3).atom_count(), 3);
        assert_eq!(path(4).unwrap().elements().len(), 16);
    }
}
