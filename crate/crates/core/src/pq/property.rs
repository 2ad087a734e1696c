use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::oracle::{FamilyOracle, IntersectionOracle, Memo};
use super::subsets::Combinations;
use crate::convex::{is_bounded, Family};
use crate::error::{Error, Result};

/// Tuples are checked in batches of this size; within a batch they may run
/// in parallel, and the first failure in index order wins.
const BATCH: usize = 512;

/// Verdict of a (p,q)-property check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqReport {
    pub p: usize,
    pub q: usize,
    pub holds: bool,
    pub violating_tuple: Option<Vec<usize>>,
    /// Tuples examined up to and including the violating one.
    pub checked_tuples: u64,
}

/// The first `q`-subset of `tuple` (lexicographically) with a common point.
pub fn find_intersecting<O: IntersectionOracle>(
    memo: &Memo<'_, O>,
    tuple: &[usize],
    q: usize,
) -> Result<Option<Vec<usize>>> {
    for sub in Combinations::new(tuple, q) {
        if memo.intersects(&sub)? {
            return Ok(Some(sub));
        }
    }
    Ok(None)
}

/// Runs `check` over all `k`-subsets of `items` in lexicographic order and
/// returns the position and value of the first subset it rejects.
pub(crate) fn first_failure<F>(
    items: &[usize],
    k: usize,
    check: F,
) -> Result<(u64, Option<Vec<usize>>)>
where
    F: Fn(&[usize]) -> Result<bool> + Sync,
{
    let mut combos = Combinations::new(items, k);
    let mut seen = 0u64;
    loop {
        let batch: Vec<Vec<usize>> = combos.by_ref().take(BATCH).collect();
        if batch.is_empty() {
            return Ok((seen, None));
        }
        let verdicts: Vec<Result<bool>> = batch.par_iter().map(|t| check(t)).collect();
        for (t, v) in batch.into_iter().zip(verdicts) {
            seen += 1;
            if !v? {
                return Ok((seen, Some(t)));
            }
        }
    }
}

/// Exhaustive (p,q)-property check through a shared memo.
pub fn has_pq_property_with<O: IntersectionOracle>(
    memo: &Memo<'_, O>,
    p: usize,
    q: usize,
) -> Result<PqReport> {
    if q == 0 || q > p {
        return Err(Error::InvalidParameter(format!(
            "need p >= q >= 1, got p={p}, q={q}"
        )));
    }
    if p > memo.len() {
        return Err(Error::InvalidParameter(format!(
            "p={p} exceeds family size {}",
            memo.len()
        )));
    }
    let all: Vec<usize> = (0..memo.len()).collect();
    let (checked_tuples, violating_tuple) =
        first_failure(&all, p, |t| Ok(find_intersecting(memo, t, q)?.is_some()))?;
    Ok(PqReport {
        p,
        q,
        holds: violating_tuple.is_none(),
        violating_tuple,
        checked_tuples,
    })
}

pub fn has_pq_property(fam: &Family, p: usize, q: usize) -> Result<PqReport> {
    let oracle = FamilyOracle(fam);
    has_pq_property_with(&Memo::new(&oracle)?, p, q)
}

/// Why a subfamily fails to be m-free.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FreeViolation {
    Unbounded(usize),
    Intersecting(Vec<usize>),
}

/// The first reason the indexed members are not m-free: an unbounded member,
/// else the lexicographically first intersecting `(m+1)`-subset.
pub fn m_free_violation(
    fam: &Family,
    indices: &[usize],
    m: usize,
) -> Result<Option<FreeViolation>> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    fam.check_indices(indices)?;
    for &i in indices {
        if !is_bounded(fam.get(i))? {
            return Ok(Some(FreeViolation::Unbounded(i)));
        }
    }
    let oracle = FamilyOracle(fam);
    let memo = Memo::new(&oracle)?;
    let (_, meeting) = first_failure(indices, m + 1, |t| Ok(!memo.intersects(t)?))?;
    Ok(meeting.map(FreeViolation::Intersecting))
}

/// True iff every indexed member is bounded and no `m+1` of them meet.
pub fn is_m_free(fam: &Family, indices: &[usize], m: usize) -> Result<bool> {
    Ok(m_free_violation(fam, indices, m)?.is_none())
}
