use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::{SerializeStruct, Serializer};
use serde::{Deserialize, Serialize};

use super::int_matrix::IntMatrix;
use super::snf::invariant_factors;

/// A finitely generated abelian group `ℤ^r ⊕ ℤ/d_1 ⊕ … ⊕ ℤ/d_k` in
/// invariant-factor form: every `d_i ≥ 2` and `d_i | d_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FgAbGroup {
    free_rank: usize,
    torsion: Vec<BigInt>,
}

impl FgAbGroup {
    /// Panics if `torsion` is not a divisibility chain of entries ≥ 2.
    pub fn new(free_rank: usize, torsion: Vec<BigInt>) -> Self {
        assert!(
            torsion.iter().all(|d| d > &BigInt::one()),
            "torsion coefficients must be at least 2"
        );
        assert!(
            torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero()),
            "torsion coefficients must form a divisibility chain"
        );
        FgAbGroup { free_rank, torsion }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        FgAbGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    pub fn cyclic(order: u64) -> Self {
        match order {
            0 => Self::free(1),
            1 => Self::trivial(),
            n => Self::new(0, vec![BigInt::from(n)]),
        }
    }

    /// The cokernel of a map `ℤ^? → ℤ^generators` given its nonzero
    /// invariant factors.
    pub fn from_invariant_factors(generators: usize, factors: &[BigInt]) -> Self {
        assert!(factors.len() <= generators);
        FgAbGroup {
            free_rank: generators - factors.len(),
            torsion: factors.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    /// Normal form of `ℤ^free ⊕ ⨁ ℤ/orders[i]` for arbitrary positive orders.
    pub fn from_cyclic_orders(free: usize, orders: &[BigInt]) -> Self {
        let orders: Vec<BigInt> = orders.iter().filter(|d| !d.is_one()).cloned().collect();
        assert!(orders.iter().all(|d| d.is_positive()), "cyclic orders must be positive");
        let n = orders.len();
        let factors = invariant_factors(&IntMatrix::diagonal(n, n, &orders));
        let mut g = FgAbGroup::from_invariant_factors(n, &factors);
        g.free_rank += free;
        g
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Order of a finite group, `None` if it has free part.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn direct_sum(&self, other: &FgAbGroup) -> FgAbGroup {
        let orders: Vec<BigInt> = self.torsion.iter().chain(&other.torsion).cloned().collect();
        FgAbGroup::from_cyclic_orders(self.free_rank + other.free_rank, &orders)
    }

    /// Dimension after tensoring with ℚ.
    pub fn rational_dim(&self) -> usize {
        self.free_rank
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for FgAbGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("FgAbGroup", 2)?;
        st.serialize_field("free_rank", &self.free_rank)?;
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|d| match d.to_u64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        st.serialize_field("torsion", &torsion)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for FgAbGroup {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Raw {
            free_rank: usize,
            torsion: Vec<serde_json::Value>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let mut torsion = Vec::with_capacity(raw.torsion.len());
        for t in raw.torsion {
            let d = match &t {
                serde_json::Value::Number(n) => n
                    .as_u64()
                    .map(BigInt::from)
                    .ok_or_else(|| de::Error::custom("torsion entries must be positive integers"))?,
                serde_json::Value::String(s) => s
                    .parse::<BigInt>()
                    .map_err(|_| de::Error::custom("bad torsion entry"))?,
                _ => return Err(de::Error::custom("bad torsion entry")),
            };
            torsion.push(d);
        }
        let ok = torsion.iter().all(|d| d > &BigInt::one())
            && torsion.windows(2).all(|w| (&w[1] % &w[0]).is_zero());
        if !ok {
            return Err(de::Error::custom("torsion is not in invariant-factor form"));
        }
        Ok(FgAbGroup {
            free_rank: raw.free_rank,
            torsion,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_of_cyclic_sums() {
        let g = FgAbGroup::from_cyclic_orders(0, &[2.into(), 3.into()]);
        assert_eq!(g, FgAbGroup::cyclic(6));
        let h = FgAbGroup::from_cyclic_orders(1, &[4.into(), 6.into(), 1.into()]);
        assert_eq!(h, FgAbGroup::new(1, vec![2.into(), 12.into()]));
        assert_eq!(h.to_string(), "Z + Z/2 + Z/12");
    }

    #[test]
    fn direct_sum_merges_torsion() {
        let a = FgAbGroup::cyclic(2);
        assert_eq!(a.direct_sum(&a), FgAbGroup::new(0, vec![2.into(), 2.into()]));
        assert_eq!(a.direct_sum(&FgAbGroup::cyclic(3)), FgAbGroup::cyclic(6));
    }

    #[test]
    fn json_shape() {
        let g = FgAbGroup::new(2, vec![2.into(), 4.into()]);
        let s = serde_json::to_string(&g).unwrap();
        assert_eq!(s, r#"{"free_rank":2,"torsion":[2,4]}"#);
        let back: FgAbGroup = serde_json::from_str(&s).unwrap();
        assert_eq!(back, g);
        assert!(serde_json::from_str::<FgAbGroup>(r#"{"free_rank":0,"torsion":[4,2]}"#).is_err());
    }
}
