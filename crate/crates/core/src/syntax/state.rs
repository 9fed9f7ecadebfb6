//! Program states: finitely supported maps from variables to integers.

use std::collections::BTreeMap;
use std::fmt;

use crate::{Error, Result};

/// Absent variables read as `0`; zero entries are never stored, so equal
/// states compare equal structurally.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State(BTreeMap<String, i64>);

impl State {
    pub fn new() -> Self {
        State::default()
    }

    pub fn get(&self, x: &str) -> i64 {
        self.0.get(x).copied().unwrap_or(0)
    }

    pub fn set(&mut self, x: &str, v: i64) {
        if v == 0 {
            self.0.remove(x);
        } else {
            self.0.insert(x.to_string(), v);
        }
    }

    /// `σ[x ↦ v]`, leaving `self` untouched.
    pub fn update(&self, x: &str, v: i64) -> State {
        let mut s = self.clone();
        s.set(x, v);
        s
    }

    pub fn support(&self) -> impl Iterator<Item = (&str, i64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }

    pub fn from_pairs<'a, I: IntoIterator<Item = (&'a str, i64)>>(pairs: I) -> Self {
        let mut s = State::new();
        for (k, v) in pairs {
            s.set(k, v);
        }
        s
    }

    /// Parses `x=2,y=3`. The empty string is the all-zero state.
    pub fn parse(text: &str) -> Result<State> {
        let mut s = State::new();
        for (i, part) in text.split(',').enumerate() {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let err = |m: &str| Error::Parse {
                line: 1,
                col: i + 1,
                message: format!("{m} in state literal `{part}`"),
            };
            let (k, v) = part.split_once('=').ok_or_else(|| err("expected `name=value`"))?;
            let k = k.trim();
            if k.is_empty() || !k.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(err("bad variable name"));
            }
            let v: i64 = v.trim().parse().map_err(|_| err("bad integer"))?;
            s.set(k, v);
        }
        Ok(s)
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}={v}")?;
        }
        f.write_str("}")
    }
}
