use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::FieldError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldKind {
    Prime,
    Extension,
    Cyclotomic,
}

/// Which field to build and the order `r` of the root of unity it must carry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub kind: FieldKind,
    pub p: Option<u64>,
    pub m: Option<u32>,
    pub r: usize,
}

impl FieldSpec {
    pub fn prime(p: u64, r: usize) -> Self {
        Self {
            kind: FieldKind::Prime,
            p: Some(p),
            m: None,
            r,
        }
    }

    pub fn extension(p: u64, m: u32, r: usize) -> Self {
        Self {
            kind: FieldKind::Extension,
            p: Some(p),
            m: Some(m),
            r,
        }
    }

    pub fn cyclotomic(r: usize) -> Self {
        Self {
            kind: FieldKind::Cyclotomic,
            p: None,
            m: None,
            r,
        }
    }

    /// Parse the CLI grammar `cyclo:R`, `gf:P` or `gf:P^M`.
    ///
    /// For `cyclo:R` the root order is `R` itself and `r` must agree with it;
    /// the `gf` forms take their root order from `r`.
    pub fn parse(input: &str, r: usize) -> Result<Self, FieldError> {
        let err = || FieldError::Parse {
            input: input.to_string(),
        };
        let (head, tail) = input.trim().split_once(':').ok_or_else(err)?;
        match head {
            "cyclo" => {
                let order: usize = tail.parse().map_err(|_| err())?;
                if order == 0 || order != r {
                    return Err(err());
                }
                Ok(Self::cyclotomic(order))
            }
            "gf" => match tail.split_once('^') {
                None => Ok(Self::prime(tail.parse().map_err(|_| err())?, r)),
                Some((p, m)) => {
                    let p = p.parse().map_err(|_| err())?;
                    let m: u32 = m.parse().map_err(|_| err())?;
                    if m == 0 {
                        return Err(err());
                    }
                    Ok(Self::extension(p, m, r))
                }
            },
            _ => Err(err()),
        }
    }

    /// Canonical spec string, the inverse of [`FieldSpec::parse`].
    pub fn label(&self) -> String {
        match self.kind {
            FieldKind::Prime => format!("gf:{}", self.p.unwrap_or(0)),
            FieldKind::Extension => format!("gf:{}^{}", self.p.unwrap_or(0), self.m.unwrap_or(1)),
            FieldKind::Cyclotomic => format!("cyclo:{}", self.r),
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p.unwrap_or(0)
    }

    /// Field order, `None` for characteristic zero.
    pub fn cardinality(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Cyclotomic => None,
            FieldKind::Prime => self.p,
            FieldKind::Extension => self.p.map(|p| p.pow(self.m.unwrap_or(1))),
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl FromStr for FieldSpec {
    type Err = FieldError;

    /// Parses with the root order read from `cyclo:R`; `gf` forms need an
    /// explicit `r` and are rejected here.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let r = s
            .strip_prefix("cyclo:")
            .and_then(|t| t.parse().ok())
            .ok_or_else(|| FieldError::Parse {
                input: s.to_string(),
            })?;
        Self::parse(s, r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar() {
        assert_eq!(FieldSpec::parse("gf:7", 3).unwrap(), FieldSpec::prime(7, 3));
        assert_eq!(
            FieldSpec::parse("gf:2^4", 5).unwrap(),
            FieldSpec::extension(2, 4, 5)
        );
        assert_eq!(
            FieldSpec::parse("cyclo:4", 4).unwrap(),
            FieldSpec::cyclotomic(4)
        );
        for bad in ["", "gf", "gf:", "gf:x", "gf:2^0", "cyclo:3", "foo:3", "gf:2^"] {
            assert!(FieldSpec::parse(bad, 4).is_err(), "{bad}");
        }
    }

    #[test]
    fn label_round_trips() {
        for s in ["gf:13", "gf:3^2", "cyclo:6"] {
            assert_eq!(FieldSpec::parse(s, 6).unwrap().label(), s);
        }
    }
}
