use std::fmt;

use crate::error::{Error, Result};

/// A basepoint-preserving map `[n] → [m]`, where `[n] = {0, 1, …, n}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointedMap {
    m: usize,
    map: Vec<usize>,
}

impl PointedMap {
    /// `map[j]` is the image of `j`; `map[0]` must be 0.
    pub fn new(m: usize, map: Vec<usize>) -> Result<Self> {
        if map.first() != Some(&0) {
            return Err(Error::BadParams("a pointed map sends 0 to 0".into()));
        }
        if let Some(v) = map.iter().find(|&&v| v > m) {
            return Err(Error::IndexOutOfRange(format!("value {v} outside [{m}]")));
        }
        Ok(PointedMap { m, map })
    }

    pub fn identity(n: usize) -> Self {
        PointedMap {
            m: n,
            map: (0..=n).collect(),
        }
    }

    /// The automorphism of `[n]` moving `i` to `perm[i-1] + 1`.
    pub fn from_permutation(perm: &[usize]) -> Self {
        let mut map = vec![0];
        map.extend(perm.iter().map(|&p| p + 1));
        PointedMap { m: perm.len(), map }
    }

    pub fn source(&self) -> usize {
        self.map.len() - 1
    }

    pub fn target(&self) -> usize {
        self.m
    }

    pub fn apply(&self, j: usize) -> usize {
        self.map[j]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &PointedMap) -> Result<PointedMap> {
        if self.m != other.source() {
            return Err(Error::DegreeMismatch("pointed maps do not compose".into()));
        }
        Ok(PointedMap {
            m: other.m,
            map: self.map.iter().map(|&j| other.map[j]).collect(),
        })
    }
}

impl fmt::Debug for PointedMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]→[{}] {:?}", self.source(), self.m, self.map)
    }
}

/// The face `ε^i: [n+1] → [n]`: `j ↦ j` for `j ≤ i`, `j ↦ j − 1` for
/// `j > i`, and `n+1 ↦ 0` when `i = n + 1`.
pub fn epsilon_map(i: usize, n: usize) -> Result<PointedMap> {
    if i > n + 1 {
        return Err(Error::IndexOutOfRange(format!("face ε^{i} of [{}]", n + 1)));
    }
    let map = (0..=n + 1)
        .map(|j| {
            if j == i && i == n + 1 {
                0
            } else if j <= i {
                j
            } else {
                j - 1
            }
        })
        .collect();
    Ok(PointedMap { m: n, map })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn faces_of_two() {
        assert_eq!(epsilon_map(0, 1).unwrap().map(), &[0, 0, 1]);
        assert_eq!(epsilon_map(1, 1).unwrap().map(), &[0, 1, 1]);
        assert_eq!(epsilon_map(2, 1).unwrap().map(), &[0, 1, 0]);
        assert!(epsilon_map(3, 1).is_err());
    }

    #[test]
    fn faces_of_one_coincide() {
        assert_eq!(epsilon_map(0, 0).unwrap(), epsilon_map(1, 0).unwrap());
    }

    #[test]
    fn composition() {
        let f = epsilon_map(1, 2).unwrap();
        let g = epsilon_map(0, 1).unwrap();
        let h = f.then(&g).unwrap();
        assert_eq!(h.source(), 3);
        assert_eq!(h.map(), &[0, 0, 0, 1]);
        assert!(PointedMap::new(1, vec![1, 0]).is_err());
        assert_eq!(PointedMap::identity(2).then(&f), Err(Error::DegreeMismatch("pointed maps do not compose".into())));
    }
}
