use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Variable {
    pub id: String,
    pub d: usize,
}

/// Ordered list of discrete variables. Declaration order fixes tensor order:
/// variable 0 is the least significant digit of a flattened state index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainSpec {
    vars: Vec<Variable>,
    index: HashMap<String, usize>,
}

impl DomainSpec {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, usize)>) -> Result<Arc<Self>> {
        let mut out = DomainSpec { vars: Vec::new(), index: HashMap::new() };
        for (id, d) in vars {
            let id = id.into();
            if d == 0 {
                return Err(Error::InvalidInstance(format!("variable `{id}` has d = 0")));
            }
            if out.index.insert(id.clone(), out.vars.len()).is_some() {
                return Err(Error::DuplicateVariable(id));
            }
            out.vars.push(Variable { id, d });
        }
        Ok(Arc::new(out))
    }

    /// `m` variables `{prefix}0 .. {prefix}{m-1}`, each with `d` levels.
    pub fn uniform(prefix: &str, m: usize, d: usize) -> Arc<Self> {
        Self::new((0..m).map(|i| (format!("{prefix}{i}"), d))).expect("uniform domain")
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn vars(&self) -> &[Variable] {
        &self.vars
    }

    pub fn var(&self, i: usize) -> &Variable {
        &self.vars[i]
    }

    pub fn d(&self, i: usize) -> usize {
        self.vars[i].d
    }

    pub fn dims(&self) -> Vec<usize> {
        self.vars.iter().map(|v| v.d).collect()
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownVariable(id.to_string()))
    }

    pub fn check_level(&self, var: usize, level: usize) -> Result<()> {
        let v = &self.vars[var];
        if level >= v.d {
            return Err(Error::LevelOutOfRange { var: v.id.clone(), level, d: v.d });
        }
        Ok(())
    }

    /// Total number of joint assignments, `None` on overflow.
    pub fn state_count(&self) -> Option<usize> {
        self.vars.iter().try_fold(1usize, |acc, v| acc.checked_mul(v.d))
    }

    pub fn state_index(&self, x: &[usize]) -> usize {
        let mut idx = 0;
        for (i, v) in self.vars.iter().enumerate().rev() {
            idx = idx * v.d + x[i];
        }
        idx
    }

    pub fn state_at(&self, mut idx: usize) -> Vec<usize> {
        self.vars
            .iter()
            .map(|v| {
                let k = idx % v.d;
                idx /= v.d;
                k
            })
            .collect()
    }

    /// Every joint assignment, variable 0 varying fastest.
    pub fn states(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        let n = self.state_count().expect("state space too large to enumerate");
        (0..n).map(move |i| self.state_at(i))
    }
}

/// Iterate assignments of the listed variables only (first listed varies fastest).
pub fn sub_assignments(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product();
    (0..total).map(move |mut i| {
        dims.iter()
            .map(|&d| {
                let k = i % d;
                i /= d;
                k
            })
            .collect()
    })
}
