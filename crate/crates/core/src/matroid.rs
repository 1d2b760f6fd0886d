//! Matroid independence oracles, intersections and contraction.

use std::fmt::Debug;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::oracle::Element;

pub trait Matroid: Send + Sync + Debug {
    /// `set` holds distinct elements in no particular order.
    fn is_independent(&self, set: &[Element]) -> bool;
}

/// Independent iff `|S| <= cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniformMatroid {
    pub cap: usize,
}

impl UniformMatroid {
    pub fn new(cap: usize) -> Self {
        Self { cap }
    }
}

impl Matroid for UniformMatroid {
    fn is_independent(&self, set: &[Element]) -> bool {
        set.len() <= self.cap
    }
}

/// Disjoint parts with a capacity each. Elements outside every part are
/// unconstrained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    part_of: Vec<Option<usize>>,
    caps: Vec<usize>,
}

impl PartitionMatroid {
    pub fn new(n: usize, parts: &[Vec<Element>], caps: &[usize]) -> Result<Self> {
        if parts.len() != caps.len() {
            return Err(Error::Spec(format!(
                "partition matroid has {} parts but {} caps",
                parts.len(),
                caps.len()
            )));
        }
        let mut part_of = vec![None; n];
        for (g, part) in parts.iter().enumerate() {
            for &e in part {
                let slot = part_of
                    .get_mut(e)
                    .ok_or(Error::IndexOutOfRange { element: e, n })?;
                if let Some(other) = *slot {
                    return Err(Error::Spec(format!(
                        "element {e} appears in parts {other} and {g}"
                    )));
                }
                *slot = Some(g);
            }
        }
        Ok(Self {
            part_of,
            caps: caps.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.part_of.len()
    }
}

impl Matroid for PartitionMatroid {
    fn is_independent(&self, set: &[Element]) -> bool {
        let mut counts = vec![0usize; self.caps.len()];
        for &e in set {
            if let Some(Some(g)) = self.part_of.get(e) {
                counts[*g] += 1;
                if counts[*g] > self.caps[*g] {
                    return false;
                }
            }
        }
        true
    }
}

/// Contraction by an independent set `A`: `S` is independent iff `S ∪ A`
/// is independent in the parent. Evaluated lazily against the parent.
#[derive(Debug, Clone)]
pub struct Contracted {
    parent: Arc<dyn Matroid>,
    base: Vec<Element>,
}

impl Contracted {
    pub fn base(&self) -> &[Element] {
        &self.base
    }
}

impl Matroid for Contracted {
    fn is_independent(&self, set: &[Element]) -> bool {
        if self.base.is_empty() {
            return self.parent.is_independent(set);
        }
        let mut union = Vec::with_capacity(self.base.len() + set.len());
        union.extend_from_slice(&self.base);
        union.extend(set.iter().copied().filter(|e| !self.base.contains(e)));
        self.parent.is_independent(&union)
    }
}

pub fn contract_matroid(parent: Arc<dyn Matroid>, base: &[Element]) -> Result<Contracted> {
    if !parent.is_independent(base) {
        return Err(Error::Contract(base.to_vec()));
    }
    Ok(Contracted {
        parent,
        base: base.to_vec(),
    })
}

/// `k >= 1` matroids; a set is independent iff every member accepts it.
#[derive(Debug, Clone)]
pub struct MatroidIntersection {
    members: Vec<Arc<dyn Matroid>>,
}

impl MatroidIntersection {
    pub fn new(members: Vec<Arc<dyn Matroid>>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Spec(
                "a matroid intersection needs k >= 1 members".into(),
            ));
        }
        Ok(Self { members })
    }

    pub fn k(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Arc<dyn Matroid>] {
        &self.members
    }

    /// Contracts every member by `base`.
    pub fn contract(&self, base: &[Element]) -> Result<Self> {
        let members = self
            .members
            .iter()
            .map(|m| contract_matroid(Arc::clone(m), base).map(|c| Arc::new(c) as Arc<dyn Matroid>))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { members })
    }
}

impl Matroid for MatroidIntersection {
    fn is_independent(&self, set: &[Element]) -> bool {
        self.members.iter().all(|m| m.is_independent(set))
    }
}
