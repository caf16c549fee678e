use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Role of an even coordinate relative to a chosen submanifold `S`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EvenRole {
    /// Coordinate along `S`.
    Base,
    /// Fiber coordinate of the normal bundle of `S`.
    Normal,
}

/// Role of an odd (degree 1) fiber coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OddRole {
    /// Dual to a frame element of the subbundle `E`.
    Sub,
    /// Dual to a frame element of the complement `F`.
    Complement,
    /// No split chosen.
    Plain,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvenCoord {
    pub name: String,
    pub role: EvenRole,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OddCoord {
    pub name: String,
    pub role: OddRole,
}

/// A coordinate index in a chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Coord {
    Even(usize),
    Odd(usize),
}

impl Coord {
    /// Degree of the coordinate function; `∂/∂c` has the negative of it.
    pub fn degree(self) -> i64 {
        match self {
            Coord::Even(_) => 0,
            Coord::Odd(_) => 1,
        }
    }
}

/// Maximum number of odd coordinates (odd monomials are stored as bit sets).
pub const MAX_ODD: usize = 63;

/// Split superdomain: even coordinates `x` (base) and `y` (normal), odd
/// degree-1 coordinates `ξ` tagged by the subbundle they are dual to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Chart {
    pub even: Vec<EvenCoord>,
    pub odd: Vec<OddCoord>,
}

impl Chart {
    pub fn new(even: Vec<EvenCoord>, odd: Vec<OddCoord>) -> Result<Self> {
        if odd.len() > MAX_ODD {
            return Err(Error::Unsupported(format!(
                "{} odd coordinates (at most {MAX_ODD})",
                odd.len()
            )));
        }
        let mut names = HashSet::new();
        for name in even.iter().map(|c| &c.name).chain(odd.iter().map(|c| &c.name)) {
            if name.is_empty() {
                return Err(Error::Precondition("empty coordinate name".into()));
            }
            if !names.insert(name.clone()) {
                return Err(Error::Precondition(format!(
                    "duplicate coordinate name `{name}`"
                )));
            }
        }
        Ok(Chart { even, odd })
    }

    /// Shorthand: `even` and `odd` given as `(name, role)` pairs.
    pub fn build(even: &[(&str, EvenRole)], odd: &[(&str, OddRole)]) -> Result<Self> {
        Chart::new(
            even.iter()
                .map(|(n, r)| EvenCoord {
                    name: n.to_string(),
                    role: *r,
                })
                .collect(),
            odd.iter()
                .map(|(n, r)| OddCoord {
                    name: n.to_string(),
                    role: *r,
                })
                .collect(),
        )
    }

    /// Even coordinates all `Base`, odd all `Plain`.
    pub fn plain(even: &[&str], odd: &[&str]) -> Result<Self> {
        let e: Vec<_> = even.iter().map(|n| (*n, EvenRole::Base)).collect();
        let o: Vec<_> = odd.iter().map(|n| (*n, OddRole::Plain)).collect();
        Chart::build(&e, &o)
    }

    pub fn n_even(&self) -> usize {
        self.even.len()
    }

    pub fn n_odd(&self) -> usize {
        self.odd.len()
    }

    pub fn shape(&self) -> Shape {
        Shape {
            n_even: self.n_even(),
            n_odd: self.n_odd(),
        }
    }

    pub fn coord_name(&self, c: Coord) -> &str {
        match c {
            Coord::Even(i) => &self.even[i].name,
            Coord::Odd(k) => &self.odd[k].name,
        }
    }

    pub fn lookup(&self, name: &str) -> Option<Coord> {
        if let Some(i) = self.even.iter().position(|c| c.name == name) {
            return Some(Coord::Even(i));
        }
        self.odd
            .iter()
            .position(|c| c.name == name)
            .map(Coord::Odd)
    }

    pub fn even_with_role(&self, role: EvenRole) -> Vec<usize> {
        (0..self.n_even())
            .filter(|&i| self.even[i].role == role)
            .collect()
    }

    pub fn odd_with_role(&self, role: OddRole) -> Vec<usize> {
        (0..self.n_odd())
            .filter(|&k| self.odd[k].role == role)
            .collect()
    }

    /// Bit mask of odd coordinates with the given role.
    pub fn odd_mask(&self, role: OddRole) -> u64 {
        self.odd_with_role(role)
            .into_iter()
            .fold(0u64, |m, k| m | (1u64 << k))
    }

    pub fn coords(&self) -> impl Iterator<Item = Coord> + '_ {
        (0..self.n_even())
            .map(Coord::Even)
            .chain((0..self.n_odd()).map(Coord::Odd))
    }

    /// Concatenation `self × other` (used for direct sums over products).
    pub fn product(&self, other: &Chart) -> Result<Chart> {
        let mut even = self.even.clone();
        even.extend(other.even.iter().cloned());
        let mut odd = self.odd.clone();
        odd.extend(other.odd.iter().cloned());
        Chart::new(even, odd)
    }
}

/// Coordinate counts; all functions and fields carry one to detect mixing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Shape {
    pub n_even: usize,
    pub n_odd: usize,
}

impl Shape {
    pub fn new(n_even: usize, n_odd: usize) -> Self {
        Shape { n_even, n_odd }
    }

    pub(crate) fn check(self, other: Shape) -> Result<()> {
        if self != other {
            return Err(Error::ChartMismatch(self.to_string(), other.to_string()));
        }
        Ok(())
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.n_even, self.n_odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_names_rejected() {
        assert!(Chart::plain(&["x", "x"], &[]).is_err());
        assert!(Chart::plain(&["x"], &["x"]).is_err());
    }

    #[test]
    fn roles_and_lookup() {
        let c = Chart::build(
            &[("x", EvenRole::Base), ("y", EvenRole::Normal)],
            &[("a", OddRole::Sub), ("b", OddRole::Complement), ("c", OddRole::Sub)],
        )
        .unwrap();
        assert_eq!(c.lookup("y"), Some(Coord::Even(1)));
        assert_eq!(c.lookup("c"), Some(Coord::Odd(2)));
        assert_eq!(c.odd_mask(OddRole::Sub), 0b101);
        assert_eq!(c.even_with_role(EvenRole::Normal), vec![1]);
    }
}
