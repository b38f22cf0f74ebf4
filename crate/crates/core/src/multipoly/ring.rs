use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

#[derive(PartialEq, Eq, Hash, Debug)]
struct RingData {
    names: Vec<String>,
    n: usize,
    param: Option<usize>,
}

/// Named polynomial ring over the rationals.
///
/// Variables `0..n` are the germ coordinates `x_1..x_n`, the last of which is
/// the line variable. An optional deformation parameter follows, and any
/// further variables are auxiliary (introduced by ideal operations).
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state);
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Ring {
    pub fn new<S: AsRef<str>>(xs: &[S], param: Option<&str>) -> Result<Ring> {
        if xs.is_empty() {
            return Err(Error::InvalidRing("no variables".into()));
        }
        let mut names: Vec<String> = xs.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        let param = match param {
            Some(t) => {
                names.push(t.to_string());
                Some(n)
            }
            None => None,
        };
        Self::from_parts(names, n, param)
    }

    fn from_parts(names: Vec<String>, n: usize, param: Option<usize>) -> Result<Ring> {
        for (i, a) in names.iter().enumerate() {
            if !valid_name(a) {
                return Err(Error::InvalidRing(format!("invalid variable name `{a}`")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidRing(format!("duplicate variable `{a}`")));
            }
        }
        Ok(Ring(Arc::new(RingData { names, n, param })))
    }

    /// Parses `x,y,z` or `x,y,z;t` (parameter after the semicolon).
    pub fn parse_spec(spec: &str) -> Result<Ring> {
        let (xs, t) = match spec.split_once(';') {
            Some((a, b)) => (a, Some(b.trim())),
            None => (spec, None),
        };
        let xs: Vec<&str> = xs.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
        Ring::new(&xs, t.filter(|s| !s.is_empty()))
    }

    /// The same coordinates with a deformation parameter added.
    pub fn with_param(&self, t: &str) -> Result<Ring> {
        if self.0.param.is_some() || self.0.names.len() != self.0.n {
            return Err(Error::InvalidRing("ring already carries extra variables".into()));
        }
        Ring::new(&self.0.names, Some(t))
    }

    /// The coordinate ring without parameter or auxiliary variables.
    pub fn base(&self) -> Ring {
        if self.arity() == self.n() {
            return self.clone();
        }
        Ring::new(&self.0.names[..self.0.n], None).expect("prefix of a valid ring")
    }

    /// Appends an auxiliary variable with a fresh name derived from `hint`.
    pub fn extend(&self, hint: &str) -> Ring {
        let mut name = format!("_{hint}");
        while self.0.names.contains(&name) {
            name.push('_');
        }
        let mut names = self.0.names.clone();
        names.push(name);
        Ring::from_parts(names, self.0.n, self.0.param).expect("fresh name")
    }

    /// Drops trailing auxiliary variables down to `arity`.
    pub fn truncate(&self, arity: usize) -> Ring {
        assert!(arity >= self.0.n + usize::from(self.0.param.is_some()) && arity <= self.arity());
        Ring::from_parts(self.0.names[..arity].to_vec(), self.0.n, self.0.param).expect("prefix")
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn arity(&self) -> usize {
        self.0.names.len()
    }

    /// Number of germ coordinates.
    pub fn n(&self) -> usize {
        self.0.n
    }

    pub fn line_var(&self) -> usize {
        self.0.n - 1
    }

    pub fn param(&self) -> Option<usize> {
        self.0.param
    }

    /// Indices of the variables generating the ideal of the line.
    pub fn i_vars(&self) -> std::ops::Range<usize> {
        0..self.0.n - 1
    }

    pub fn x_vars(&self) -> std::ops::Range<usize> {
        0..self.0.n
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.0
            .names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Canonical spec string accepted by [`Ring::parse_spec`].
    pub fn spec(&self) -> String {
        let xs = self.0.names[..self.0.n].join(",");
        match self.0.param {
            Some(t) => format!("{xs};{}", self.0.names[t]),
            None => xs,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.0.names.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ring() {
        let r = Ring::parse_spec("x,y,z;t").unwrap();
        assert_eq!(r.n(), 3);
        assert_eq!(r.line_var(), 2);
        assert_eq!(r.param(), Some(3));
        assert_eq!(r.i_vars(), 0..2);
        assert_eq!(r.spec(), "x,y,z;t");
        assert_eq!(r.base().arity(), 3);
    }

    #[test]
    fn rejects_duplicates() {
        assert!(Ring::parse_spec("x,x").is_err());
        assert!(Ring::parse_spec("x,y;x").is_err());
        assert!(Ring::parse_spec("").is_err());
        assert!(Ring::parse_spec("x,2y").is_err());
    }

    #[test]
    fn extend_is_fresh() {
        let r = Ring::parse_spec("x,_u").unwrap();
        let e = r.extend("u");
        assert_eq!(e.arity(), 3);
        assert_eq!(e.name(2), "_u_");
        assert_eq!(e.truncate(2), r);
    }
}
