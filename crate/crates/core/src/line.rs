//! Cuspidal lines and the line registry.
//!
//! A line stands for the unramified-twist class of one cuspidal
//! representation of G_r; all the calculus ever needs from it is an
//! identity symbol, the degree r, and the line carrying the
//! contragredient.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque symbol naming a cuspidal line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LineId(pub String);

impl LineId {
    pub fn new(id: impl Into<String>) -> Self {
        LineId(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for LineId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for LineId {
    fn from(s: &str) -> Self {
        LineId(s.to_owned())
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LineInfo {
    pub degree: u32,
    pub dual: LineId,
}

/// Registry of declared lines. Lookups never fail: an undeclared line is
/// treated as a degree-1, self-dual line, which is the common case for
/// desk-scale inputs.
#[derive(Clone, Debug, Default)]
pub struct LineRegistry {
    lines: BTreeMap<LineId, LineInfo>,
}

impl LineRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Declares a line. `dual` defaults to the line itself. Declaring the
    /// dual pair in both directions is done automatically; conflicting
    /// redeclarations are rejected.
    pub fn declare(&mut self, id: LineId, degree: u32, dual: Option<LineId>) -> Result<()> {
        if degree == 0 {
            return Err(Error::ZeroDegree);
        }
        let dual = dual.unwrap_or_else(|| id.clone());
        let info = LineInfo {
            degree,
            dual: dual.clone(),
        };
        match self.lines.get(&id) {
            Some(existing) if *existing != info => {
                return Err(Error::LineConflict { id: id.0 })
            }
            _ => {}
        }
        self.lines.insert(id.clone(), info);
        if dual != id {
            let mirror = LineInfo {
                degree,
                dual: id.clone(),
            };
            match self.lines.get(&dual) {
                Some(existing) if *existing != mirror => {
                    return Err(Error::LineConflict { id: dual.0 })
                }
                _ => {}
            }
            self.lines.insert(dual, mirror);
        }
        Ok(())
    }

    pub fn degree(&self, id: &LineId) -> u32 {
        self.lines.get(id).map(|i| i.degree).unwrap_or(1)
    }

    pub fn dual(&self, id: &LineId) -> LineId {
        self.lines
            .get(id)
            .map(|i| i.dual.clone())
            .unwrap_or_else(|| id.clone())
    }

    pub fn is_declared(&self, id: &LineId) -> bool {
        self.lines.contains_key(id)
    }

    pub fn declared(&self) -> impl Iterator<Item = (&LineId, &LineInfo)> {
        self.lines.iter()
    }

    /// Allocates a brand-new line (used for the fresh cuspidal of a
    /// certificate run). Ids are deterministic per registry: `fresh'1`,
    /// `fresh'2`, ... skipping any that happen to be taken.
    pub fn fresh(&mut self, degree: u32, counter: &mut u32) -> LineId {
        loop {
            *counter += 1;
            let id = LineId::new(format!("fresh'{counter}"));
            if !self.is_declared(&id) {
                self.declare(id.clone(), degree, None)
                    .expect("fresh id is unused");
                return id;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_degree_one_self_dual() {
        let reg = LineRegistry::new();
        let id = LineId::from("rho");
        assert_eq!(reg.degree(&id), 1);
        assert_eq!(reg.dual(&id), id);
    }

    #[test]
    fn duality_is_an_involution() {
        let mut reg = LineRegistry::new();
        let a = LineId::from("a");
        let b = LineId::from("b");
        reg.declare(a.clone(), 2, Some(b.clone())).unwrap();
        assert_eq!(reg.dual(&a), b);
        assert_eq!(reg.dual(&reg.dual(&a)), a);
        assert_eq!(reg.degree(&b), 2);
    }

    #[test]
    fn conflicting_redeclaration_rejected() {
        let mut reg = LineRegistry::new();
        let a = LineId::from("a");
        reg.declare(a.clone(), 2, None).unwrap();
        assert_eq!(
            reg.declare(a.clone(), 3, None),
            Err(Error::LineConflict { id: "a".into() })
        );
        assert!(reg.declare(LineId::from("z"), 0, None).is_err());
    }

    #[test]
    fn fresh_lines_do_not_collide() {
        let mut reg = LineRegistry::new();
        reg.declare(LineId::from("fresh'1"), 1, None).unwrap();
        let mut counter = 0;
        let id = reg.fresh(1, &mut counter);
        assert_eq!(id, LineId::from("fresh'2"));
    }
}
