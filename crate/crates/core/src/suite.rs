//! The fixed corpus of test monoids and coefficient modules shared by the
//! verification checks.

use crate::error::Result;
use crate::linalg::Ring;
use crate::module::{jstar, jstar_mod, std_projective, KCModule, QuotientModule, Side};
use crate::monoid::{FiniteCommMonoid, MonoidBuilder};

#[derive(Clone, Debug)]
pub struct SuiteMonoid {
    pub name: String,
    pub monoid: FiniteCommMonoid,
}

impl SuiteMonoid {
    pub fn new(name: impl Into<String>, monoid: FiniteCommMonoid) -> Self {
        SuiteMonoid {
            name: name.into(),
            monoid,
        }
    }

    pub fn label(&self) -> String {
        self.name.clone()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteCoefficient {
    pub label: String,
    pub module: QuotientModule,
}

fn z2() -> MonoidBuilder {
    MonoidBuilder::CyclicGroup(2)
}

/// trivial, ℤ/2, ℤ/3, `{1,e}`, truncated_add(2), ℤ/2×ℤ/2.
pub fn suite_builders() -> Vec<MonoidBuilder> {
    vec![
        MonoidBuilder::Trivial,
        z2(),
        MonoidBuilder::CyclicGroup(3),
        MonoidBuilder::SemilatticeChain(1),
        MonoidBuilder::TruncatedAdd(2),
        MonoidBuilder::Product(Box::new(z2()), Box::new(z2())),
    ]
}

pub fn suite_monoids() -> Vec<SuiteMonoid> {
    suite_builders()
        .into_iter()
        .map(|b| SuiteMonoid::new(b.to_string(), b.build().expect("suite builders are valid")))
        .collect()
}

pub fn suite_monoid(builder: MonoidBuilder) -> Result<SuiteMonoid> {
    Ok(SuiteMonoid::new(builder.to_string(), builder.build()?))
}

/// Coefficients of one side: `j^*` of the trivial, regular and (when it
/// exists) sign modules, every standard projective, and `j^*(ℤ/4)`.
pub fn suite_coefficients(c: &FiniteCommMonoid, side: Side) -> Vec<SuiteCoefficient> {
    let mut out = Vec::new();
    let mut push = |label: String, module: QuotientModule| out.push(SuiteCoefficient { label, module });
    let triv = KCModule::trivial(c, Ring::Z);
    push("jstar:Z:trivial".into(), jstar(&triv, side).into());
    push("jstar:Z:regular".into(), jstar(&KCModule::regular(c, Ring::Z), side).into());
    if let Ok(sign) = KCModule::sign(c, Ring::Z) {
        push("jstar:Z:sign".into(), jstar(&sign, side).into());
    }
    for a in c.elements() {
        push(format!("projective:{}:{a}", side.as_str()), std_projective(c, a, side).into());
    }
    push("jstar:Zmod4:trivial".into(), jstar_mod(&triv, side, 4).expect("k ≥ 2"));
    out
}

/// The coefficients without relations (the ones Harrison and Hodge accept).
pub fn free_suite_coefficients(c: &FiniteCommMonoid, side: Side) -> Vec<SuiteCoefficient> {
    suite_coefficients(c, side)
        .into_iter()
        .filter(|k| !k.module.has_relations())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corpus_shape() {
        let ms = suite_monoids();
        let sizes: Vec<usize> = ms.iter().map(|m| m.monoid.size()).collect();
        assert_eq!(sizes, vec![1, 2, 3, 2, 3, 4]);
        let z2 = &ms[1].monoid;
        let labels: Vec<String> = suite_coefficients(z2, Side::Right).into_iter().map(|k| k.label).collect();
        assert_eq!(labels.len(), 6);
        assert!(labels.contains(&"jstar:Z:sign".to_string()));
        assert_eq!(free_suite_coefficients(z2, Side::Left).len(), 5);
        assert_eq!(suite_coefficients(&ms[2].monoid, Side::Right).len(), 6);
    }
}
