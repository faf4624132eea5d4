//! Verification checks over the suite corpus. Each check runs a family of
//! independent computations and records one line per case; reports contain
//! no timing, so they are byte-stable.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gamma::{
    build_complex_with, epsilon_map, harrison, partitions, y_exactness_check, ComplexOptions, Direction,
    GammaChainComplex, DEFAULT_BUDGET,
};
use crate::grillet::{bar_complex_compare, d0_cohomology, d0_homology, grillet_char0, kaehler_compare};
use crate::hodge::{annihilating_product, eulerian_idempotents, hodge_decomposition, projectors_commute};
use crate::linalg::{cokernel_group, FgAbGroup, IntMatrix, Ring};
use crate::module::{
    boxtimes, derivations, jstar, jstar_mod, omega, std_projective, tabulate_presented, KCModule, ModuleMap,
    QuotientModule, Side,
};
use crate::monoid::{product_monoid, FiniteCommMonoid, MonoidBuilder};
use crate::suite::{free_suite_coefficients, suite_coefficients, suite_monoid, suite_monoids, SuiteMonoid};

/// Check names in the order `all` runs them.
pub const CHECKS: &[&str] = &[
    "complexes",
    "hh-low",
    "lemma-nuli",
    "group-oracle",
    "leech-der",
    "hodge",
    "y-exactness",
    "products",
    "kaehler",
    "grillet-d0",
];

/// Degree cap of the complex-soundness check.
pub const COMPLEX_DEGREE: usize = 5;
/// Degree cap of the weight checks (the complexes are built one higher).
pub const HODGE_DEGREE: usize = 4;
/// Degree cap of the idempotent identities.
pub const IDEMPOTENT_DEGREE: usize = 5;
/// Degree cap of the Young-invariant checks.
pub const Y_DEGREE: usize = 4;
/// Degree cap of the product-formula face check.
pub const PRODUCT_DEGREE: usize = 3;
/// Degree cap of the characteristic-zero acyclicity check.
pub const ACYCLIC_DEGREE: usize = 3;

/// Resolve a suite name (`all` and aliases included) to check names.
pub fn resolve(name: &str) -> Option<Vec<&'static str>> {
    match name {
        "all" => Some(CHECKS.to_vec()),
        "lemma-sizuste" => Some(vec!["y-exactness"]),
        "grillet" => Some(vec!["grillet-d0"]),
        _ => CHECKS.iter().find(|c| **c == name).map(|c| vec![*c]),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    /// The statement being checked.
    pub anchor: String,
    pub pass: bool,
    pub cases: usize,
    pub failures: Vec<String>,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// Monoids for the checks that range over the corpus.
    pub monoids: Vec<SuiteMonoid>,
    pub budget: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            monoids: suite_monoids(),
            budget: DEFAULT_BUDGET,
        }
    }
}

impl VerifyOptions {
    fn complex(
        &self,
        c: &FiniteCommMonoid,
        m: &QuotientModule,
        n_max: usize,
        direction: Direction,
        ring: Ring,
    ) -> Result<GammaChainComplex> {
        build_complex_with(c, m, n_max, direction, ComplexOptions { budget: self.budget, ring })
    }
}

struct Recorder {
    report: CheckReport,
}

impl Recorder {
    fn new(name: &str, anchor: &str) -> Self {
        Recorder {
            report: CheckReport {
                name: name.into(),
                anchor: anchor.into(),
                pass: true,
                cases: 0,
                failures: vec![],
                details: vec![],
            },
        }
    }

    /// Record one case: `Ok((ok, detail))`, or an error that fails it.
    /// Budget overruns abort the whole check.
    fn case(&mut self, label: impl AsRef<str>, outcome: Result<(bool, String)>) -> Result<()> {
        let label = label.as_ref();
        self.report.cases += 1;
        let line = match outcome {
            Ok((ok, detail)) => {
                if !ok {
                    self.report.failures.push(format!("{label}: {detail}"));
                }
                format!("{label}: {detail}")
            }
            Err(e @ Error::ComplexityBudget { .. }) => return Err(e),
            Err(e) => {
                let line = format!("{label}: error {e}");
                self.report.failures.push(line.clone());
                line
            }
        };
        self.report.details.push(line);
        Ok(())
    }

    fn finish(mut self) -> CheckReport {
        self.report.pass = self.report.failures.is_empty();
        self.report
    }
}

fn sides(direction: Direction) -> Side {
    direction.side()
}

fn eq_detail<T: PartialEq + std::fmt::Display>(what: &str, a: &T, b: &T) -> (bool, String) {
    if a == b {
        (true, format!("{what} = {a}"))
    } else {
        (false, format!("{what}: {a} ≠ {b}"))
    }
}

/// Run one named check.
pub fn run_check(name: &str, opts: &VerifyOptions) -> Result<CheckReport> {
    match name {
        "complexes" => check_complexes(opts),
        "hh-low" => check_hh_low(opts),
        "lemma-nuli" => check_lemma_nuli(opts),
        "group-oracle" => check_group_oracle(opts),
        "leech-der" => check_leech_der(opts),
        "hodge" => check_hodge(opts),
        "y-exactness" => check_y_exactness(opts),
        "products" => check_products(opts),
        "kaehler" => check_kaehler(opts),
        "grillet-d0" => check_grillet(opts),
        _ => Err(Error::BadParams(format!("unknown check {name:?}"))),
    }
}

/// Run a suite by name; `timing` receives each check's wall-clock duration.
pub fn run_suite(
    name: &str,
    opts: &VerifyOptions,
    mut timing: impl FnMut(&str, std::time::Duration),
) -> Result<VerifyReport> {
    let names = resolve(name).ok_or_else(|| Error::BadParams(format!("unknown suite {name:?}")))?;
    let mut checks = Vec::with_capacity(names.len());
    for n in names {
        let start = std::time::Instant::now();
        checks.push(run_check(n, opts)?);
        timing(n, start.elapsed());
    }
    Ok(VerifyReport {
        pass: checks.iter().all(|c| c.pass),
        checks,
    })
}

fn check_complexes(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new("complexes", "∂_n ∂_{n+1} = 0 and δ_{n+1} δ_n = 0, n ≤ 5");
    for sm in &opts.monoids {
        for dir in [Direction::Homological, Direction::Cohomological] {
            for k in suite_coefficients(&sm.monoid, sides(dir)) {
                let outcome = opts
                    .complex(&sm.monoid, &k.module, COMPLEX_DEGREE, dir, Ring::Z)
                    .and_then(|cx| {
                        cx.check_squares()?;
                        let dims: Vec<usize> = (0..=COMPLEX_DEGREE).map(|n| cx.dim(n)).collect();
                        Ok((true, format!("dims {dims:?}")))
                    });
                rec.case(format!("{} {} {}", sm.label(), k.label, dir.as_str()), outcome)?;
            }
        }
    }
    Ok(rec.finish())
}

fn check_hh_low(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new("hh-low", "HH_0 = N(1), HH_1 = coker ∂_2, ∂_1 = 0");
    for sm in &opts.monoids {
        let c = &sm.monoid;
        for k in suite_coefficients(c, Side::Right) {
            let outcome = opts.complex(c, &k.module, 2, Direction::Homological, Ring::Z).and_then(|cx| {
                let d1_zero = cx.differential(1)?.is_zero();
                let h0 = cx.homology(0)?;
                let n1 = k.module.value(c.identity());
                let h1 = cx.homology(1)?;
                let coker = cokernel_group(&IntMatrix::hstack(&[cx.differential(2)?, &cx.relations(1)]));
                let ok = d1_zero && h0 == n1 && h1 == coker;
                Ok((ok, format!("∂_1 = 0: {d1_zero}, HH_0 = {h0}, N(1) = {n1}, HH_1 = {h1}, coker ∂_2 = {coker}")))
            });
            rec.case(format!("{} {}", sm.label(), k.label), outcome)?;
        }
    }
    Ok(rec.finish())
}

fn check_lemma_nuli(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new("lemma-nuli", "HH_1(G_*(C,N)) ≅ N ⊗_{H(C)} Ω_C");
    for sm in &opts.monoids {
        let c = &sm.monoid;
        let om = tabulate_presented(&omega(c)).module;
        for k in suite_coefficients(c, Side::Right) {
            let outcome = (|| {
                let hh1 = opts.complex(c, &k.module, 2, Direction::Homological, Ring::Z)?.homology(1)?;
                let tensor = crate::module::tensor_quotients(&k.module, &om)?;
                Ok(eq_detail("HH_1 vs N ⊗ Ω", &hh1, &tensor))
            })();
            rec.case(format!("{} {}", sm.label(), k.label), outcome)?;
        }
    }
    Ok(rec.finish())
}

/// `H_n(ℤ/k; ℤ)`: ℤ, then ℤ/k in odd degrees and 0 in positive even ones.
pub fn cyclic_group_homology(k: u64, n: usize) -> FgAbGroup {
    match n {
        0 => FgAbGroup::free(1),
        _ if n % 2 == 1 => FgAbGroup::cyclic(k),
        _ => FgAbGroup::trivial(),
    }
}

fn check_group_oracle(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new("group-oracle", "HH_n(G_*(ℤ/k, ℤ)) = H_n(ℤ/k; ℤ), n ≤ 4");
    for k in [2u64, 3] {
        let sm = suite_monoid(MonoidBuilder::CyclicGroup(k as usize))?;
        let c = &sm.monoid;
        let triv = KCModule::trivial(c, Ring::Z);
        let cx = opts.complex(c, &jstar(&triv, Side::Right).into(), 5, Direction::Homological, Ring::Z)?;
        let bar = bar_complex_compare(c, &triv, 5);
        let bar_ok = bar.as_ref().map(|b| b.pass).unwrap_or(false);
        rec.case(
            format!("{} bar-complex boundaries", sm.label()),
            bar.clone().map(|b| (b.pass, format!("equal up to degree {}: {}", b.n_max, b.pass))),
        )?;
        for n in 0..5 {
            let outcome = cx.homology(n).map(|h| {
                let expected = cyclic_group_homology(k, n);
                let bar_h = bar.as_ref().ok().map(|b| b.homology[n].clone());
                let ok = bar_ok && h == expected && bar_h.as_ref() == Some(&h);
                let shown = bar_h.map(|g| g.to_string()).unwrap_or_else(|| "?".into());
                (ok, format!("HH_{n} = {h}, bar = {shown}, group homology = {expected}"))
            });
            rec.case(format!("{} degree {n}", sm.label()), outcome)?;
        }
    }
    Ok(rec.finish())
}

fn check_leech_der(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new("leech-der", "HH^0 = M(1), HH^1(G^*(C,M)) ≅ Der(C,M)");
    for sm in &opts.monoids {
        let c = &sm.monoid;
        for k in suite_coefficients(c, Side::Left) {
            let outcome = (|| {
                let cx = opts.complex(c, &k.module, 2, Direction::Cohomological, Ring::Z)?;
                let (h0, h1) = (cx.homology(0)?, cx.homology(1)?);
                let m1 = k.module.value(c.identity());
                let der = derivations(c, &k.module)?.group;
                Ok((
                    h0 == m1 && h1 == der,
                    format!("HH^0 = {h0}, M(1) = {m1}, HH^1 = {h1}, Der = {der}"),
                ))
            })();
            rec.case(format!("{} {}", sm.label(), k.label), outcome)?;
        }
    }
    Ok(rec.finish())
}

fn check_hodge(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new(
        "hodge",
        "e^(i) form a complete orthogonal family, ∏(s_n − (2^i − 2)) = 0; Σ_i dim HH_n^(i) = dim HH_n and Harr_n = HH_n^(1) over ℚ",
    );
    for n in 1..=IDEMPOTENT_DEGREE {
        let outcome = (|| {
            let ids = eulerian_idempotents(n)?.check_identities();
            let ann = annihilating_product(n)?.is_zero();
            Ok((ids && ann, format!("identities {ids}, annihilated {ann}")))
        })();
        rec.case(format!("S_{n}"), outcome)?;
    }
    for sm in &opts.monoids {
        let c = &sm.monoid;
        for dir in [Direction::Homological, Direction::Cohomological] {
            for k in free_suite_coefficients(c, sides(dir)) {
                let cx = match opts.complex(c, &k.module, HODGE_DEGREE + 1, dir, Ring::Q) {
                    Ok(cx) => cx,
                    Err(e) => {
                        rec.case(format!("{} {} {}", sm.label(), k.label, dir.as_str()), Err(e))?;
                        continue;
                    }
                };
                for n in 1..=HODGE_DEGREE {
                    let outcome = (|| {
                        let weights = hodge_decomposition(&cx, n)?;
                        let total = cx.homology(n)?.free_rank();
                        let harr = harrison(&cx, n)?.free_rank();
                        let commute = projectors_commute(&cx, n)?;
                        let ok = weights.iter().sum::<usize>() == total && weights[0] == harr && commute;
                        Ok((ok, format!("weights {weights:?}, dim HH = {total}, dim Harr = {harr}, commute {commute}")))
                    })();
                    rec.case(format!("{} {} {} n={n}", sm.label(), k.label, dir.as_str()), outcome)?;
                }
            }
        }
    }
    Ok(rec.finish())
}

fn check_y_exactness(_opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new(
        "y-exactness",
        "0 → j^*(kℤ) → j^*(ℤ) → j^*(ℤ/k) → 0 is 𝒴-exact, k = 2, 3, partitions of n ≤ 4",
    );
    for k in [2u64, 3] {
        let sm = suite_monoid(MonoidBuilder::CyclicGroup(k as usize))?;
        let c = &sm.monoid;
        let triv = KCModule::trivial(c, Ring::Z);
        let z: QuotientModule = jstar(&triv, Side::Right).into();
        let zk = jstar_mod(&triv, Side::Right, k)?;
        let proj = ModuleMap::projection(&z, &zk)?;
        // kℤ ≅ ℤ embedded by multiplication with k; its image is the kernel.
        let incl = ModuleMap::scalar(&z, k as i64);
        let exact = proj.is_surjective()
            && c.elements().all(|a| {
                let comp = proj.component(a) * incl.component(a);
                comp.columns().iter().all(|col| {
                    col.iter().all(|(_, v)| v % BigInt::from(k) == BigInt::from(0))
                })
            });
        rec.case(format!("{} short exact", sm.label()), Ok((exact, format!("{exact}"))))?;
        for n in 1..=Y_DEGREE {
            for lambda in partitions(n) {
                let outcome = y_exactness_check(&proj, n, &lambda).map(|r| {
                    (
                        r.pass,
                        format!("invariants {} → {}, surjective {}", r.source_invariants, r.target_invariants, r.pass),
                    )
                });
                rec.case(format!("{} λ = {lambda:?}", sm.label()), outcome)?;
            }
        }
    }
    Ok(rec.finish())
}

/// Face matrices of `G_*(C_1×C_2, N_1⊠N_2)` against the tensor product of
/// the factors' face matrices, under `((x_i, y_i)), j ↦ ((x_i), j_1) ⊗ ((y_i), j_2)`.
fn product_faces_agree(
    opts: &VerifyOptions,
    c1: &FiniteCommMonoid,
    n1: &QuotientModule,
    c2: &FiniteCommMonoid,
    n2: &QuotientModule,
) -> Result<bool> {
    let c = product_monoid(c1, c2).monoid;
    let n: QuotientModule = boxtimes(n1.cover(), n2.cover())?.into();
    let d = PRODUCT_DEGREE;
    let cx = opts.complex(&c, &n, d, Direction::Homological, Ring::Z)?;
    let cx1 = opts.complex(c1, n1, d, Direction::Homological, Ring::Z)?;
    let cx2 = opts.complex(c2, n2, d, Direction::Homological, Ring::Z)?;
    let m2 = c2.size();
    let position = |deg: usize, k: usize| -> usize {
        let (digits, j) = cx.basis_element(deg, k);
        let xs: Vec<usize> = digits.iter().map(|p| p / m2).collect();
        let ys: Vec<usize> = digits.iter().map(|p| p % m2).collect();
        let r2 = n2.cover().rank(c2.product(&ys));
        let i1 = cx1.block_offset(deg, cx1.tuple_index(&xs)) + j / r2;
        let i2 = cx2.block_offset(deg, cx2.tuple_index(&ys)) + j % r2;
        i1 * cx2.dim(deg) + i2
    };
    for deg in 1..=d {
        let rows: Vec<usize> = (0..cx.dim(deg - 1)).map(|k| position(deg - 1, k)).collect();
        let cols: Vec<usize> = (0..cx.dim(deg)).map(|k| position(deg, k)).collect();
        for i in 0..=deg {
            let face = epsilon_map(i, deg - 1)?;
            let whole = cx.gamma_matrix(&face)?;
            let moved = IntMatrix::from_triplets(
                whole.rows(),
                whole.cols(),
                whole.triplets().map(|(r, s, v)| (rows[r], cols[s], v.clone())),
            );
            if moved != cx1.gamma_matrix(&face)?.kron(&cx2.gamma_matrix(&face)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn check_products(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new(
        "products",
        "C^(a,b) = C^a ⊠ C^b; G_*(C_1×C_2, N_1⊠N_2) = G_*(C_1,N_1) ⊗ G_*(C_2,N_2); Ω_C = π_1^*Ω_{C_1} ⊕ π_2^*Ω_{C_2}; Der splits",
    );
    let z2 = suite_monoid(MonoidBuilder::CyclicGroup(2))?;
    let z3 = suite_monoid(MonoidBuilder::CyclicGroup(3))?;
    let pairs = [(z2.clone(), z2.clone()), (z2.clone(), z3.clone())];

    // Projectives of the product.
    let (c1, c2) = (&z2.monoid, &z2.monoid);
    let p = product_monoid(c1, c2);
    for side in [Side::Left, Side::Right] {
        for a in c1.elements() {
            for b in c2.elements() {
                let outcome = boxtimes(&std_projective(c1, a, side), &std_projective(c2, b, side)).map(|bt| {
                    let ok = bt == std_projective(&p.monoid, p.pair(a, b), side);
                    (ok, format!("equal {ok}"))
                });
                rec.case(format!("{}x{} {} projective ({a},{b})", z2.label(), z2.label(), side.as_str()), outcome)?;
            }
        }
    }

    for (s1, s2) in &pairs {
        let (c1, c2) = (&s1.monoid, &s2.monoid);
        let tag = format!("{}x{}", s1.label(), s2.label());
        for k1 in free_suite_coefficients(c1, Side::Right) {
            for k2 in free_suite_coefficients(c2, Side::Right) {
                let outcome = product_faces_agree(opts, c1, &k1.module, c2, &k2.module)
                    .map(|ok| (ok, format!("faces agree up to degree {PRODUCT_DEGREE}: {ok}")));
                rec.case(format!("{tag} {} ⊠ {}", k1.label, k2.label), outcome)?;
            }
        }

        let p = product_monoid(c1, c2);
        let om = tabulate_presented(&omega(&p.monoid)).module;
        let om1 = tabulate_presented(&omega(c1)).module.pullback(&p.proj1)?;
        let om2 = tabulate_presented(&omega(c2)).module.pullback(&p.proj2)?;
        for x in p.monoid.elements() {
            let (lhs, rhs) = (om.value(x), om1.value(x).direct_sum(&om2.value(x)));
            rec.case(format!("{tag} Ω at {x}"), Ok(eq_detail("Ω_C vs π_1^*Ω ⊕ π_2^*Ω", &lhs, &rhs)))?;
        }

        for k in suite_coefficients(&p.monoid, Side::Left) {
            let outcome = (|| {
                let whole = derivations(&p.monoid, &k.module)?.group;
                let d1 = derivations(c1, &k.module.pullback(&p.inc1)?)?.group;
                let d2 = derivations(c2, &k.module.pullback(&p.inc2)?)?.group;
                Ok(eq_detail("Der(C,M) vs Der(C_1,M^(1)) ⊕ Der(C_2,M^(2))", &whole, &d1.direct_sum(&d2)))
            })();
            rec.case(format!("{tag} Der {}", k.label), outcome)?;
        }
    }
    Ok(rec.finish())
}

fn check_kaehler(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new("kaehler", "j_*(Ω_C) = Ω^1_{K[C]}, K = ℤ, ℚ");
    for sm in &opts.monoids {
        for ring in [Ring::Z, Ring::Q] {
            let r = kaehler_compare(&sm.monoid, ring);
            rec.case(
                format!("{} {}", sm.label(), ring.as_str()),
                Ok((r.pass, format!("Ω^1 = {}, j_*Ω = {}", r.algebra, r.module))),
            )?;
        }
    }
    Ok(rec.finish())
}

fn check_grillet(opts: &VerifyOptions) -> Result<CheckReport> {
    let mut rec = Recorder::new(
        "grillet-d0",
        "D_0 = N ⊗ Ω_C = HH_1, D^0 = Der = HH^1; D_n ⊗ ℚ = Harr_{n+1}; finite groups are ℚ-acyclic",
    );
    for sm in &opts.monoids {
        let c = &sm.monoid;
        for dir in [Direction::Homological, Direction::Cohomological] {
            for k in suite_coefficients(c, sides(dir)) {
                let outcome = (|| {
                    let d0 = match dir {
                        Direction::Homological => d0_homology(c, &k.module)?,
                        Direction::Cohomological => d0_cohomology(c, &k.module)?,
                    };
                    if k.module.has_relations() {
                        return Ok((true, format!("D_0 = {d0}")));
                    }
                    let q = grillet_char0(c, &k.module, 0, dir)?;
                    Ok((q == d0.rational_dim(), format!("D_0 = {d0}, char-0 dim = {q}")))
                })();
                rec.case(format!("{} {} {}", sm.label(), k.label, dir.as_str()), outcome)?;
            }
            if c.is_group() {
                let triv: QuotientModule = jstar(&KCModule::trivial(c, Ring::Q), sides(dir)).into();
                let outcome = (0..=ACYCLIC_DEGREE)
                    .map(|n| grillet_char0(c, &triv, n, dir))
                    .collect::<Result<Vec<_>>>()
                    .map(|dims| (dims.iter().all(|&d| d == 0), format!("char-0 dims {dims:?}")));
                rec.case(format!("{} trivialQ {} acyclic", sm.label(), dir.as_str()), outcome)?;
            }
        }
    }
    Ok(rec.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyOptions {
        VerifyOptions {
            monoids: vec![suite_monoid(MonoidBuilder::CyclicGroup(2)).unwrap()],
            budget: DEFAULT_BUDGET,
        }
    }

    #[test]
    fn aliases() {
        assert_eq!(resolve("lemma-sizuste"), Some(vec!["y-exactness"]));
        assert_eq!(resolve("all").unwrap().len(), CHECKS.len());
        assert!(resolve("nope").is_none());
    }

    #[test]
    fn cheap_checks_pass_on_z2() {
        let opts = small();
        for name in ["hh-low", "lemma-nuli", "leech-der", "kaehler", "y-exactness"] {
            let r = run_check(name, &opts).unwrap();
            assert!(r.pass, "{:?}", r.failures);
            assert_eq!(r.cases, r.details.len());
        }
    }

    #[test]
    fn group_homology_table() {
        let got: Vec<String> = (0..5).map(|n| cyclic_group_homology(3, n).to_string()).collect();
        let want: Vec<String> = ["Z", "Z/3", "0", "Z/3", "0"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        assert_eq!(got, want);
    }
}
