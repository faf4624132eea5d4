//! Deterministic fixtures shared by the benchmarks.

use monhom::module::{jstar, KCModule, QuotientModule, Side};
use monhom::{FiniteCommMonoid, IntMatrix, MonoidBuilder, Ring};

/// A dense `n × n` matrix with small entries and nontrivial invariant factors.
pub fn snf_fixture(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| ((i * 7 + j * 13 + i * j) % 11) as i64 - 5).collect())
        .collect();
    IntMatrix::from_rows(&rows, n)
}

pub fn klein() -> FiniteCommMonoid {
    "cyclic_group(2)*cyclic_group(2)"
        .parse::<MonoidBuilder>()
        .and_then(|b| b.build())
        .expect("valid builder")
}

/// `j^*` of the regular module, on the given side.
pub fn regular(c: &FiniteCommMonoid, side: Side, ring: Ring) -> QuotientModule {
    jstar(&KCModule::regular(c, ring), side).into()
}
