use serde::{Deserialize, Serialize};

use super::oracle::{FamilyOracle, IntersectionOracle, Memo};
use super::subsets::{indices_of, Mask};
use crate::convex::{contains_point, Family};
use crate::error::{Error, Result};
use crate::exact::Point;

/// A partition of the index set into parts that each have a common point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<Vec<usize>>,
    pub optimal: bool,
}

impl Partition {
    /// Part index of every member.
    pub fn assignment(&self, n: usize) -> Vec<usize> {
        let mut out = vec![usize::MAX; n];
        for (j, part) in self.parts.iter().enumerate() {
            for &i in part {
                out[i] = j;
            }
        }
        out
    }
}

struct Search<'m, 'o, O: IntersectionOracle> {
    memo: &'m Memo<'o, O>,
    n: usize,
    best: Option<Vec<Mask>>,
    bound: usize,
}

impl<O: IntersectionOracle> Search<'_, '_, O> {
    fn run(&mut self, i: usize, parts: &mut Vec<Mask>) -> Result<()> {
        if parts.len() >= self.bound {
            return Ok(());
        }
        if i == self.n {
            self.bound = parts.len();
            self.best = Some(parts.clone());
            return Ok(());
        }
        for j in 0..parts.len() {
            let grown = parts[j] | 1 << i;
            if self.memo.intersects(&indices_of(grown))? {
                let old = std::mem::replace(&mut parts[j], grown);
                self.run(i + 1, parts)?;
                parts[j] = old;
            }
        }
        if parts.len() + 1 < self.bound {
            parts.push(1 << i);
            self.run(i + 1, parts)?;
            parts.pop();
        }
        Ok(())
    }
}

/// Minimum partition of all members into intersecting parts.
///
/// Starts from the first-fit partition and improves it by branch and bound.
/// With `limit`, only partitions of at most `limit` parts are searched for;
/// when none exists the first-fit partition is returned with
/// `optimal = false`.
pub fn min_intersecting_partition<O: IntersectionOracle>(
    memo: &Memo<'_, O>,
    limit: Option<usize>,
) -> Result<Partition> {
    let n = memo.len();
    for i in 0..n {
        if !memo.intersects(&[i])? {
            return Err(Error::EmptySet(format!("member {i}")));
        }
    }
    let mut greedy: Vec<Mask> = Vec::new();
    for i in 0..n {
        let mut placed = false;
        for part in greedy.iter_mut() {
            let grown = *part | 1 << i;
            if memo.intersects(&indices_of(grown))? {
                *part = grown;
                placed = true;
                break;
            }
        }
        if !placed {
            greedy.push(1 << i);
        }
    }

    let cap = limit.map_or(usize::MAX, |l| l.saturating_add(1));
    let mut search = Search {
        memo,
        n,
        best: None,
        bound: cap,
    };
    if greedy.len() < cap {
        search.bound = greedy.len();
        search.best = Some(greedy.clone());
    }
    // Any partition needs at least one part, so a single part is optimal.
    if search.bound > 1 {
        search.run(0, &mut Vec::new())?;
    }
    let (masks, optimal) = match search.best {
        Some(b) => (b, true),
        None => (greedy, false),
    };
    Ok(Partition {
        parts: masks.into_iter().map(indices_of).collect(),
        optimal,
    })
}

/// Piercing points for a family with a certificate of which member uses
/// which point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiercingSolution {
    pub points: Vec<Point>,
    /// `assignment[i]` is the index of the point piercing member `i`.
    pub assignment: Vec<usize>,
    pub optimal: bool,
}

impl PiercingSolution {
    pub fn size(&self) -> usize {
        self.points.len()
    }

    /// Re-checks every membership claim exactly.
    pub fn certify(&self, fam: &Family) -> Result<bool> {
        if self.assignment.len() != fam.len() {
            return Ok(false);
        }
        for (i, &j) in self.assignment.iter().enumerate() {
            match self.points.get(j) {
                Some(p) if contains_point(fam.get(i), p)? => {}
                _ => return Ok(false),
            }
        }
        let mut used = vec![false; self.points.len()];
        for &j in &self.assignment {
            used[j] = true;
        }
        Ok(used.into_iter().all(|u| u))
    }
}

pub fn piercing_number_with(
    memo: &Memo<'_, FamilyOracle<'_>>,
    limit: Option<usize>,
) -> Result<PiercingSolution> {
    let partition = min_intersecting_partition(memo, limit)?;
    let mut points = Vec::with_capacity(partition.parts.len());
    for part in &partition.parts {
        let p = memo
            .witness(part)?
            .expect("parts of an intersecting partition have witnesses");
        points.push(p);
    }
    Ok(PiercingSolution {
        assignment: partition.assignment(memo.len()),
        points,
        optimal: partition.optimal,
    })
}

/// Exact piercing number of a finite family, with witnesses.
pub fn piercing_number(fam: &Family, limit: Option<usize>) -> Result<PiercingSolution> {
    let oracle = FamilyOracle(fam);
    let memo = Memo::new(&oracle)?;
    let sol = piercing_number_with(&memo, limit)?;
    debug_assert!(sol.certify(fam)?);
    Ok(sol)
}
