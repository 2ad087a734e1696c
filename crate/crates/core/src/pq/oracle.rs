//! Memoised intersection oracle shared by every combinatorial search.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, RwLock};

use super::subsets::{mask_of, Mask, MAX_MEMBERS};
use crate::convex::{
    intersect_nonempty, lifted_projection_witness, ConvexSet, Family, LiftedWitness,
};
use crate::error::{Error, Result};
use crate::exact::Point;

/// Answers "do the indexed members share a point?" for a fixed collection.
///
/// `solve` must be a deterministic function of the index set.
pub trait IntersectionOracle: Sync {
    type Witness: Clone + Send + Sync;

    fn len(&self) -> usize;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }

    fn solve(&self, indices: &[usize]) -> Result<Option<Self::Witness>>;
}

/// Joint-LP oracle over a family.
pub struct FamilyOracle<'a>(pub &'a Family);

impl IntersectionOracle for FamilyOracle<'_> {
    type Witness = Point;

    fn len(&self) -> usize {
        self.0.len()
    }

    fn solve(&self, indices: &[usize]) -> Result<Option<Point>> {
        intersect_nonempty(self.0, indices)
    }
}

/// Oracle for the shadows `Π(A ∩ box)` of a family along the last axis.
pub struct ShadowOracle<'a> {
    pub family: &'a Family,
    pub bx: &'a ConvexSet,
}

impl IntersectionOracle for ShadowOracle<'_> {
    type Witness = LiftedWitness;

    fn len(&self) -> usize {
        self.family.len()
    }

    fn solve(&self, indices: &[usize]) -> Result<Option<LiftedWitness>> {
        lifted_projection_witness(self.family, indices, self.bx)
    }
}

/// A cap on LP solves, shareable between several memos.
#[derive(Debug, Default)]
pub struct Budget {
    limit: Option<u64>,
    used: AtomicU64,
}

impl Budget {
    pub fn new(limit: Option<u64>) -> Arc<Self> {
        Arc::new(Budget {
            limit,
            used: AtomicU64::new(0),
        })
    }

    pub fn used(&self) -> u64 {
        self.used.load(Ordering::Relaxed)
    }

    pub fn charge(&self) -> Result<()> {
        let used = self.used.fetch_add(1, Ordering::Relaxed) + 1;
        match self.limit {
            Some(b) if used > b => Err(Error::BudgetExhausted(b)),
            _ => Ok(()),
        }
    }
}

/// Caches verdicts by index set and exploits both closures: a subset of an
/// intersecting set intersects, a superset of an empty one is empty.
///
/// Witnesses are always those of the exact index set asked for, so results
/// do not depend on query order.
pub struct Memo<'o, O: IntersectionOracle> {
    oracle: &'o O,
    verdicts: RwLock<HashMap<Mask, bool>>,
    intersecting: RwLock<Vec<Mask>>,
    empty: RwLock<Vec<Mask>>,
    witnesses: RwLock<HashMap<Mask, Option<O::Witness>>>,
    lp_calls: AtomicU64,
    budget: Arc<Budget>,
}

impl<'o, O: IntersectionOracle> Memo<'o, O> {
    pub fn new(oracle: &'o O) -> Result<Self> {
        if oracle.len() > MAX_MEMBERS {
            return Err(Error::FamilyTooLarge(oracle.len()));
        }
        Ok(Memo {
            oracle,
            verdicts: RwLock::default(),
            intersecting: RwLock::default(),
            empty: RwLock::default(),
            witnesses: RwLock::default(),
            lp_calls: AtomicU64::new(0),
            budget: Budget::new(None),
        })
    }

    /// Charges every LP solve to `budget`; once it is spent, further solves
    /// fail with [`Error::BudgetExhausted`].
    pub fn with_budget(mut self, budget: Arc<Budget>) -> Self {
        self.budget = budget;
        self
    }

    pub fn len(&self) -> usize {
        self.oracle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.oracle.is_empty()
    }

    pub fn lp_calls(&self) -> u64 {
        self.lp_calls.load(Ordering::Relaxed)
    }

    fn charge(&self) -> Result<()> {
        self.lp_calls.fetch_add(1, Ordering::Relaxed);
        self.budget.charge()
    }

    fn lookup(&self, mask: Mask) -> Option<bool> {
        if let Some(&v) = self.verdicts.read().unwrap().get(&mask) {
            return Some(v);
        }
        let derived = if self
            .intersecting
            .read()
            .unwrap()
            .iter()
            .any(|&m| (m & mask) == mask)
        {
            true
        } else if self.empty.read().unwrap().iter().any(|&m| m & !mask == 0) {
            false
        } else {
            return None;
        };
        self.verdicts
            .write()
            .unwrap()
            .entry(mask)
            .or_insert(derived);
        Some(derived)
    }

    fn record(&self, mask: Mask, witness: Option<O::Witness>) -> bool {
        let verdict = witness.is_some();
        self.verdicts
            .write()
            .unwrap()
            .entry(mask)
            .or_insert(verdict);
        let list = if verdict {
            &self.intersecting
        } else {
            &self.empty
        };
        {
            let mut l = list.write().unwrap();
            if !l.contains(&mask) {
                l.push(mask);
            }
        }
        self.witnesses
            .write()
            .unwrap()
            .entry(mask)
            .or_insert(witness);
        verdict
    }

    pub fn intersects(&self, indices: &[usize]) -> Result<bool> {
        if indices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mask = mask_of(indices);
        if let Some(v) = self.lookup(mask) {
            return Ok(v);
        }
        self.charge()?;
        let w = self.oracle.solve(indices)?;
        Ok(self.record(mask, w))
    }

    /// The oracle's witness for exactly this index set (`None` if empty).
    pub fn witness(&self, indices: &[usize]) -> Result<Option<O::Witness>> {
        if indices.is_empty() {
            return Err(Error::EmptyIndexSet);
        }
        let mask = mask_of(indices);
        if let Some(w) = self.witnesses.read().unwrap().get(&mask) {
            return Ok(w.clone());
        }
        if self.lookup(mask) == Some(false) {
            return Ok(None);
        }
        self.charge()?;
        let w = self.oracle.solve(indices)?;
        self.record(mask, w.clone());
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Point;

    fn rays() -> Family {
        // {0}, [1, inf), [2, inf), [3, inf)
        let mut sets = vec![ConvexSet::singleton("F0", Point::from_ints(&[0])).unwrap()];
        for n in 1..=3 {
            sets.push(
                ConvexSet::vrep(
                    format!("F{n}"),
                    1,
                    vec![Point::from_ints(&[n])],
                    vec![Point::from_ints(&[1])],
                )
                .unwrap(),
            );
        }
        Family::new(1, sets).unwrap()
    }

    #[test]
    fn closures_avoid_lp_calls() {
        let fam = rays();
        let oracle = FamilyOracle(&fam);
        let memo = Memo::new(&oracle).unwrap();
        assert!(memo.intersects(&[1, 2, 3]).unwrap());
        assert_eq!(memo.lp_calls(), 1);
        assert!(memo.intersects(&[1, 3]).unwrap());
        assert!(memo.intersects(&[2]).unwrap());
        assert_eq!(memo.lp_calls(), 1);
        assert!(!memo.intersects(&[0, 1]).unwrap());
        assert!(!memo.intersects(&[0, 1, 2]).unwrap());
        assert_eq!(memo.lp_calls(), 2);
    }

    #[test]
    fn witness_is_for_exact_set() {
        let fam = rays();
        let oracle = FamilyOracle(&fam);
        let memo = Memo::new(&oracle).unwrap();
        assert!(memo.intersects(&[1, 2, 3]).unwrap());
        let w = memo.witness(&[1]).unwrap().unwrap();
        assert_eq!(Some(w), intersect_nonempty(&fam, &[1]).unwrap());
        assert_eq!(memo.witness(&[0, 3]).unwrap(), None);
    }

    #[test]
    fn budget_is_enforced() {
        let fam = rays();
        let oracle = FamilyOracle(&fam);
        let memo = Memo::new(&oracle)
            .unwrap()
            .with_budget(Budget::new(Some(1)));
        memo.intersects(&[0]).unwrap();
        assert_eq!(memo.intersects(&[1]), Err(Error::BudgetExhausted(1)));
    }
}
