//! Grillet (co)homology: exact degree-0 groups, the characteristic-zero
//! path through Harrison homology, and two comparisons with the monoid
//! algebra `K[C]` (Kähler differentials and the classical bar complex).

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gamma::{build_complex, harrison, hochschild, leech_cohomology, Direction};
use crate::linalg::{cokernel_group, densify, homology_at, rank, FgAbGroup, IntMatrix, LatticeSolver, Ring};
use crate::module::{derivations, jstar, omega, tabulate_presented, tensor_quotients, KCModule, QuotientModule, Side};
use crate::monoid::FiniteCommMonoid;

/// Largest degree of the bar-complex comparison.
pub const BAR_MAX_DEGREE: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GrilletPath {
    /// Degree 0, computed over ℤ.
    Exact,
    /// Higher degrees, as ℚ-dimensions of Harrison groups one degree up.
    Char0,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GrilletReport {
    pub degree: usize,
    pub group: FgAbGroup,
    pub path: GrilletPath,
}

/// `D_0(C, N) = N ⊗_{H(C)} Ω_C`, checked against `HH_1(G_*(C, N))`.
pub fn d0_homology(c: &FiniteCommMonoid, n: &QuotientModule) -> Result<FgAbGroup> {
    let tensor = tensor_quotients(n, &tabulate_presented(&omega(c)).module)?;
    let hh1 = hochschild(&build_complex(c, n, 2, Direction::Homological)?, 1)?;
    if tensor != hh1 {
        return Err(Error::OracleMismatch(format!("N ⊗ Ω = {tensor} but HH_1 = {hh1}")));
    }
    Ok(tensor)
}

/// `D^0(C, M) = Der(C, M)`, checked against the Leech group `HH^1`.
pub fn d0_cohomology(c: &FiniteCommMonoid, m: &QuotientModule) -> Result<FgAbGroup> {
    let der = derivations(c, m)?.group;
    let hh1 = leech_cohomology(c, m, 1)?;
    if der != hh1 {
        return Err(Error::OracleMismatch(format!("Der = {der} but HH^1 = {hh1}")));
    }
    Ok(der)
}

/// `dim_ℚ D_n = dim Harr_{n+1}` (resp. cohomology) over ℚ.
pub fn grillet_char0(c: &FiniteCommMonoid, coeff: &QuotientModule, n: usize, direction: Direction) -> Result<usize> {
    let cx = build_complex(c, coeff, n + 2, direction)?.with_ring(Ring::Q);
    Ok(harrison(&cx, n + 1)?.free_rank())
}

/// Degree 0 exactly, degrees `1..=n_max` through the characteristic-zero path.
pub fn grillet_report(
    c: &FiniteCommMonoid,
    coeff: &QuotientModule,
    n_max: usize,
    direction: Direction,
) -> Result<Vec<GrilletReport>> {
    let d0 = match direction {
        Direction::Homological => d0_homology(c, coeff)?,
        Direction::Cohomological => d0_cohomology(c, coeff)?,
    };
    let mut out = vec![GrilletReport {
        degree: 0,
        group: d0,
        path: GrilletPath::Exact,
    }];
    for n in 1..=n_max {
        out.push(GrilletReport {
            degree: n,
            group: FgAbGroup::free(grillet_char0(c, coeff, n, direction)?),
            path: GrilletPath::Char0,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KaehlerReport {
    pub pass: bool,
    pub ring: Ring,
    /// Underlying group of `Ω¹_{K[C]}` (dimension only over ℚ).
    pub algebra: FgAbGroup,
    /// Underlying group of `j_*(Ω_C)`.
    pub module: FgAbGroup,
}

/// The `K[C]`-module `Ω¹_{K[C]}` as an abelian group: basis `x·e_a` at
/// index `x·|C| + a`, relations `x(e_{ab} − a e_b − b e_a)` for every
/// `x, a, b`.
fn algebra_differentials(c: &FiniteCommMonoid) -> IntMatrix {
    let m = c.size();
    let mut entries = Vec::new();
    let mut col = 0;
    for x in c.elements() {
        for a in c.elements() {
            for b in c.elements() {
                entries.push((x * m + c.mul(a, b), col, BigInt::from(1)));
                entries.push((c.mul(x, a) * m + b, col, BigInt::from(-1)));
                entries.push((c.mul(x, b) * m + a, col, BigInt::from(-1)));
                col += 1;
            }
        }
    }
    IntMatrix::from_triplets(m * m, col, entries)
}

/// `j_*` of the tabulated `Ω_C`, re-indexed by `t·d_a ↦ t·|C| + a`.
fn module_differentials(c: &FiniteCommMonoid) -> IntMatrix {
    let m = c.size();
    let tab = tabulate_presented(&omega(c));
    let mut entries = Vec::new();
    let mut col = 0;
    for y in c.elements() {
        let rel = tab.module.relations(y);
        for (i, j, v) in rel.triplets() {
            let (g, t) = tab.basis[y][i];
            entries.push((t * m + g, col + j, v.clone()));
        }
        col += rel.cols();
    }
    IntMatrix::from_triplets(m * m, col, entries)
}

fn same_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    let inside = |l: &IntMatrix, m: &IntMatrix| {
        let solver = LatticeSolver::new(l);
        m.columns().iter().all(|col| solver.contains(&densify(col, m.rows())))
    };
    inside(a, b) && inside(b, a)
}

/// Compare `Ω¹_{K[C]}` with `j_*(Ω_C)` under `e_a ↔ d_a`: equal relation
/// lattices (over ℤ) or spans (over ℚ), and equal cokernels.
pub fn kaehler_compare(c: &FiniteCommMonoid, ring: Ring) -> KaehlerReport {
    let alg = algebra_differentials(c);
    let module = module_differentials(c);
    let rows = alg.rows();
    let (pass, algebra, module_group) = match ring {
        Ring::Z => {
            let (ga, gm) = (cokernel_group(&alg), cokernel_group(&module));
            (same_lattice(&alg, &module) && ga == gm, ga, gm)
        }
        Ring::Q => {
            let (ra, rm) = (rank(&alg), rank(&module));
            let joint = rank(&IntMatrix::hstack(&[&alg, &module]));
            (ra == rm && joint == ra, FgAbGroup::free(rows - ra), FgAbGroup::free(rows - rm))
        }
    };
    KaehlerReport {
        pass,
        ring,
        algebra,
        module: module_group,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BarReport {
    pub pass: bool,
    pub n_max: usize,
    /// First degree whose boundary matrices differ.
    pub mismatch: Option<usize>,
    /// `HH_n(K[C], A)` from the classical complex, `n < n_max`.
    pub homology: Vec<FgAbGroup>,
}

/// The classical Hochschild boundary `A ⊗ K[C]^{⊗n} → A ⊗ K[C]^{⊗(n−1)}` on
/// the basis `(a_1..a_n) ⊗ e_j`, index `tuple·rank + j`:
/// `b(m ⊗ r_1 ⊗ … ⊗ r_n) = m r_1 ⊗ r_2 … + Σ (−1)^i m ⊗ … r_i r_{i+1} … + (−1)^n r_n m ⊗ r_1 … r_{n−1}`.
pub fn classical_hochschild_boundary(c: &FiniteCommMonoid, a: &KCModule, n: usize) -> IntMatrix {
    let (m, r) = (c.size(), a.rank());
    let tuples = m.pow(n as u32);
    let lower = if n == 0 { 0 } else { m.pow(n as u32 - 1) * r };
    if n == 0 {
        return IntMatrix::zeros(0, r);
    }
    let index = |t: &[usize]| t.iter().fold(0, |acc, &x| acc * m + x);
    let mut entries = Vec::new();
    for t in 0..tuples {
        let mut digits = vec![0; n];
        let mut rest = t;
        for k in (0..n).rev() {
            digits[k] = rest % m;
            rest /= m;
        }
        for j in 0..r {
            let col = t * r + j;
            let act = |x: usize, sign: i64, tail: &[usize], entries: &mut Vec<(usize, usize, BigInt)>| {
                for (i, v) in a.action(x).column(j) {
                    entries.push((index(tail) * r + i, col, v * sign));
                }
            };
            act(digits[0], 1, &digits[1..], &mut entries);
            for i in 1..n {
                let mut merged = digits[..i - 1].to_vec();
                merged.push(c.mul(digits[i - 1], digits[i]));
                merged.extend_from_slice(&digits[i + 1..]);
                let sign = if i % 2 == 0 { 1 } else { -1 };
                entries.push((index(&merged) * r + j, col, BigInt::from(sign)));
            }
            let sign = if n % 2 == 0 { 1 } else { -1 };
            act(digits[n - 1], sign, &digits[..n - 1], &mut entries);
        }
    }
    IntMatrix::from_triplets(lower, tuples * r, entries)
}

/// Compare the classical Hochschild complex of `K[C]` with coefficients in
/// `A` against `G_*(C, j^*A)` under the canonical basis bijection.
pub fn bar_complex_compare(c: &FiniteCommMonoid, a: &KCModule, n_max: usize) -> Result<BarReport> {
    if n_max > BAR_MAX_DEGREE {
        return Err(Error::BadParams(format!("bar comparison is capped at degree {BAR_MAX_DEGREE}")));
    }
    if a.monoid() != c {
        return Err(Error::BadParams("coefficients over a different monoid".into()));
    }
    let n: QuotientModule = jstar(a, Side::Right).into();
    let cx = build_complex(c, &n, n_max, Direction::Homological)?;
    let classical: Vec<IntMatrix> = (0..=n_max).map(|d| classical_hochschild_boundary(c, a, d)).collect();
    let mismatch = (0..=n_max).find(|&d| cx.differential(d).map(|m| m != &classical[d]).unwrap_or(true));
    let homology = (0..n_max)
        .map(|d| homology_at(&classical[d], &classical[d + 1]))
        .collect::<Result<Vec<_>>>()?;
    Ok(BarReport {
        pass: mismatch.is_none(),
        n_max,
        mismatch,
        homology,
    })
}
