//! Monoid sources and coefficient descriptors.

use std::str::FromStr;

use monhom::codec::decode_tabulated;
use monhom::module::{jstar, jstar_mod, std_projective, KCModule, QuotientModule, Side};
use monhom::{Error, FiniteCommMonoid, MonoidBuilder, Result, Ring};

/// `builtin:<builder>`, or a path (optionally `file:<path>`) to a monoid table.
pub fn load_monoid(source: &str) -> Result<(String, FiniteCommMonoid)> {
    if let Some(b) = source.strip_prefix("builtin:") {
        let builder = MonoidBuilder::from_str(b)?;
        return Ok((format!("builtin:{builder}"), builder.build()?));
    }
    let path = source.strip_prefix("file:").unwrap_or(source);
    let text = std::fs::read_to_string(path).map_err(|e| Error::parse(path, e.to_string()))?;
    Ok((source.to_string(), FiniteCommMonoid::from_json(&text)?))
}

/// A parsed coefficient descriptor. The side is fixed by the computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficient {
    /// `jstar:<base>:<action>` (`trivialZ`, `trivialQ` are shorthands).
    Jstar { base: Base, action: Action },
    Projective { side: Side, element: usize },
    /// A tabulated module file.
    File(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Base {
    Z,
    Q,
    Zmod(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Action {
    Trivial,
    Sign,
    Regular,
}

impl FromStr for Coefficient {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadParams(format!("unknown coefficient descriptor {s:?}"));
        match s {
            "trivialZ" => return Ok(Coefficient::Jstar { base: Base::Z, action: Action::Trivial }),
            "trivialQ" => return Ok(Coefficient::Jstar { base: Base::Q, action: Action::Trivial }),
            _ => {}
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["jstar", base, action] => {
                let base = match *base {
                    "Z" => Base::Z,
                    "Q" => Base::Q,
                    b => {
                        let k: u64 = b.strip_prefix("Zmod").and_then(|k| k.parse().ok()).ok_or_else(bad)?;
                        if k < 2 {
                            return Err(Error::BadParams("Zmod<k> needs k ≥ 2".into()));
                        }
                        Base::Zmod(k)
                    }
                };
                let action = match *action {
                    "trivial" => Action::Trivial,
                    "sign" => Action::Sign,
                    "regular" => Action::Regular,
                    _ => return Err(bad()),
                };
                Ok(Coefficient::Jstar { base, action })
            }
            ["projective", side, a] => Ok(Coefficient::Projective {
                side: side.parse()?,
                element: a.parse().map_err(|_| bad())?,
            }),
            ["file", path] => Ok(Coefficient::File(path.to_string())),
            _ => Err(bad()),
        }
    }
}

impl Coefficient {
    /// `Q` for rational bases, `Z` otherwise.
    pub fn natural_ring(&self) -> Ring {
        match self {
            Coefficient::Jstar { base: Base::Q, .. } => Ring::Q,
            _ => Ring::Z,
        }
    }

    pub fn module(&self, c: &FiniteCommMonoid, side: Side) -> Result<QuotientModule> {
        match self {
            Coefficient::Jstar { base, action } => {
                let kc = match action {
                    Action::Trivial => KCModule::trivial(c, Ring::Z),
                    Action::Sign => KCModule::sign(c, Ring::Z)?,
                    Action::Regular => KCModule::regular(c, Ring::Z),
                };
                match base {
                    Base::Zmod(k) => jstar_mod(&kc, side, *k),
                    _ => Ok(jstar(&kc, side).into()),
                }
            }
            Coefficient::Projective { side: s, element } => {
                if *element >= c.size() {
                    return Err(Error::IndexOutOfRange(format!("element {element} of a monoid of size {}", c.size())));
                }
                if *s != side {
                    return Err(Error::BadParams(format!(
                        "this computation takes {} coefficients",
                        side.as_str()
                    )));
                }
                Ok(std_projective(c, *element, side).into())
            }
            Coefficient::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| Error::parse(path.as_str(), e.to_string()))?;
                let m = decode_tabulated(&text, c)?;
                if m.side() != side {
                    return Err(Error::BadParams(format!(
                        "this computation takes {} coefficients",
                        side.as_str()
                    )));
                }
                Ok(m.into())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors() {
        assert_eq!(
            "jstar:Zmod4:trivial".parse::<Coefficient>().unwrap(),
            Coefficient::Jstar { base: Base::Zmod(4), action: Action::Trivial }
        );
        assert_eq!(
            "projective:left:1".parse::<Coefficient>().unwrap(),
            Coefficient::Projective { side: Side::Left, element: 1 }
        );
        assert_eq!("trivialQ".parse::<Coefficient>().unwrap().natural_ring(), Ring::Q);
        for bad in ["jstar:Zmod1:trivial", "jstar:Z", "projective:up:0", "nope"] {
            assert!(bad.parse::<Coefficient>().is_err(), "{bad}");
        }
    }

    #[test]
    fn sides_are_checked() {
        let c = MonoidBuilder::CyclicGroup(2).build().unwrap();
        let p: Coefficient = "projective:left:1".parse().unwrap();
        assert!(p.module(&c, Side::Right).is_err());
        assert!(p.module(&c, Side::Left).is_ok());
        assert_eq!(load_monoid("builtin:cyclic_group(2)").unwrap().1, c);
    }
}
