//! Lexicographic k-subset enumeration and bitmask helpers.

/// Bitmask over family indices; families are limited to 128 members.
pub type Mask = u128;

pub const MAX_MEMBERS: usize = 128;

pub fn mask_of(indices: &[usize]) -> Mask {
    indices.iter().fold(0, |m, &i| m | (1 << i))
}

pub fn indices_of(mask: Mask) -> Vec<usize> {
    (0..MAX_MEMBERS).filter(|&i| mask >> i & 1 == 1).collect()
}

/// All `k`-subsets of `items`, in lexicographic order of positions.
#[derive(Clone, Debug)]
pub struct Combinations<'a> {
    items: &'a [usize],
    pos: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(items: &'a [usize], k: usize) -> Self {
        Combinations {
            items,
            pos: (0..k).collect(),
            done: k > items.len(),
        }
    }
}

impl Iterator for Combinations<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.pos.iter().map(|&p| self.items[p]).collect();
        let (n, k) = (self.items.len(), self.pos.len());
        match (0..k).rev().find(|&i| self.pos[i] < n - k + i) {
            Some(i) => {
                self.pos[i] += 1;
                for j in i + 1..k {
                    self.pos[j] = self.pos[j - 1] + 1;
                }
            }
            None => self.done = true,
        }
        Some(out)
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}
