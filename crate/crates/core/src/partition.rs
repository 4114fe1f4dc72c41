//! Communication partitions: disjoint coalitions covering the player set.
//!
//! Coalitions are classified against the resource count `m` into the three
//! cases that drive everything downstream: size divisible by `m`, size below
//! `m`, and the leftover case where no qualified agreement exists.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("coalition {0} is empty")]
    EmptyCoalition(usize),
    #[error("player {0} appears in more than one coalition")]
    DuplicatePlayer(usize),
    #[error("player {0} is not covered by any coalition")]
    MissingPlayer(usize),
    #[error("player {player} out of range for {n} players")]
    PlayerOutOfRange { player: usize, n: usize },
}

/// A partition of players `0..n` into non-empty coalitions.
///
/// Stored canonically: members sorted within each coalition, coalitions
/// sorted by their smallest member.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    coalitions: Vec<Vec<usize>>,
    n: usize,
}

impl Partition {
    pub fn new(coalitions: Vec<Vec<usize>>, n: usize) -> Result<Self, PartitionError> {
        for (idx, c) in coalitions.iter().enumerate() {
            if c.is_empty() {
                return Err(PartitionError::EmptyCoalition(idx));
            }
        }
        let mut seen = vec![false; n];
        for c in &coalitions {
            for &p in c {
                if p >= n {
                    return Err(PartitionError::PlayerOutOfRange { player: p, n });
                }
                if seen[p] {
                    return Err(PartitionError::DuplicatePlayer(p));
                }
                seen[p] = true;
            }
        }
        if let Some(p) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::MissingPlayer(p));
        }
        let mut coalitions: Vec<Vec<usize>> = coalitions
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        coalitions.sort();
        Ok(Partition { coalitions, n })
    }

    /// Consecutive blocks of the given sizes: `[3,2]` gives `{0,1,2},{3,4}`.
    pub fn from_sizes(sizes: &[usize]) -> Result<Self, PartitionError> {
        let mut coalitions = Vec::with_capacity(sizes.len());
        let mut next = 0;
        for (idx, &s) in sizes.iter().enumerate() {
            if s == 0 {
                return Err(PartitionError::EmptyCoalition(idx));
            }
            coalitions.push((next..next + s).collect());
            next += s;
        }
        Partition::new(coalitions, next)
    }

    pub fn grand(n: usize) -> Self {
        Partition::from_sizes(&[n]).expect("n must be positive")
    }

    pub fn singletons(n: usize) -> Self {
        Partition::from_sizes(&vec![1; n]).expect("n must be positive")
    }

    pub fn coalitions(&self) -> &[Vec<usize>] {
        &self.coalitions
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Coalition sizes, largest first.
    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.coalitions.iter().map(|c| c.len()).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }

    /// At most one coalition may be smaller than `m`; the rest must have
    /// sizes divisible by `m`.
    pub fn is_balanced(&self, m: usize) -> bool {
        let mut small = 0;
        for c in &self.coalitions {
            match classify(c.len(), m) {
                CoalitionClass::Divisible => {}
                CoalitionClass::Remainder => small += 1,
                CoalitionClass::Infeasible => return false,
            }
        }
        small <= 1
    }
}

/// How a coalition's size relates to the resource count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoalitionClass {
    /// `m` divides the size: members can spread themselves evenly.
    Divisible,
    /// Fewer members than resources: each member gets a resource alone.
    Remainder,
    /// More members than resources but not a multiple: no qualified
    /// agreement exists.
    Infeasible,
}

pub fn classify(size: usize, m: usize) -> CoalitionClass {
    assert!(size > 0, "coalitions are non-empty");
    assert!(m > 0, "need at least one resource");
    if size.is_multiple_of(m) {
        CoalitionClass::Divisible
    } else if size < m {
        CoalitionClass::Remainder
    } else {
        CoalitionClass::Infeasible
    }
}

/// Integer partitions of `n`, each sorted largest part first, in
/// lexicographically decreasing order starting from `[n]`.
pub fn integer_partitions(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn go(remaining: usize, bound: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for part in (1..=remaining.min(bound)).rev() {
            current.push(part);
            go(remaining - part, part, current, out);
            current.pop();
        }
    }
    go(n, n, &mut current, &mut out);
    out
}

/// One canonical partition per coalition-size multiset of `n` players.
///
/// Players are interchangeable in the unweighted game, so sweeping these
/// covers all partitions up to relabeling.
pub fn enumerate_partitions_by_sizes(n: usize) -> Vec<Partition> {
    integer_partitions(n)
        .iter()
        .map(|sizes| Partition::from_sizes(sizes).expect("parts are positive"))
        .collect()
}

/// A balanced partition: `⌊n/m⌋` coalitions of size `m` plus one of size
/// `n mod m` if the division is not exact.
pub fn make_balanced_partition(n: usize, m: usize) -> Partition {
    let mut sizes = vec![m; n / m];
    if !n.is_multiple_of(m) {
        sizes.push(n % m);
    }
    Partition::from_sizes(&sizes).expect("sizes sum to n")
}

/// All set partitions of `0..n` via restricted growth strings, grand
/// coalition first.
pub fn set_partitions(n: usize) -> SetPartitions {
    SetPartitions {
        next: Some(vec![0; n]),
    }
}

pub struct SetPartitions {
    next: Option<Vec<usize>>,
}

impl SetPartitions {
    fn to_partition(rgs: &[usize]) -> Partition {
        let blocks = rgs.iter().copied().max().map_or(0, |b| b + 1);
        let mut coalitions = vec![Vec::new(); blocks.max(1)];
        for (player, &block) in rgs.iter().enumerate() {
            coalitions[block].push(player);
        }
        if rgs.is_empty() {
            coalitions.clear();
        }
        Partition::new(coalitions, rgs.len()).expect("growth strings are valid partitions")
    }
}

impl Iterator for SetPartitions {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let current = self.next.take()?;
        if current.is_empty() {
            return None;
        }
        // successor: bump the rightmost position that can still grow
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i <= 1 {
                self.next = None;
                break;
            }
            i -= 1;
            let prefix_max = succ[..i].iter().copied().max().unwrap();
            if succ[i] <= prefix_max {
                succ[i] += 1;
                for v in succ[i + 1..].iter_mut() {
                    *v = 0;
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(Self::to_partition(&current))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn canonical_form_sorts_members_and_coalitions() {
        let p = Partition::new(vec![vec![2, 0], vec![1]], 3).unwrap();
        assert_eq!(p.coalitions(), &[vec![0, 2], vec![1]]);
        let q = Partition::new(vec![vec![1], vec![0, 2]], 3).unwrap();
        assert_eq!(p, q);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            Partition::new(vec![vec![0], vec![]], 1),
            Err(PartitionError::EmptyCoalition(1))
        );
        assert_eq!(
            Partition::new(vec![vec![0, 1], vec![1]], 2),
            Err(PartitionError::DuplicatePlayer(1))
        );
        assert_eq!(
            Partition::new(vec![vec![0], vec![2]], 3),
            Err(PartitionError::MissingPlayer(1))
        );
        assert_eq!(
            Partition::new(vec![vec![0], vec![3]], 2),
            Err(PartitionError::PlayerOutOfRange { player: 3, n: 2 })
        );
    }

    #[test]
    fn classify_against_three_resources() {
        assert_eq!(classify(3, 3), CoalitionClass::Divisible);
        assert_eq!(classify(6, 3), CoalitionClass::Divisible);
        assert_eq!(classify(1, 3), CoalitionClass::Remainder);
        assert_eq!(classify(2, 3), CoalitionClass::Remainder);
        assert_eq!(classify(4, 3), CoalitionClass::Infeasible);
        assert_eq!(classify(7, 3), CoalitionClass::Infeasible);
        assert_eq!(classify(5, 1), CoalitionClass::Divisible);
    }

    #[test]
    fn balance_examples() {
        let m = 3;
        assert!(Partition::from_sizes(&[6, 1]).unwrap().is_balanced(m));
        assert!(Partition::from_sizes(&[3, 3, 1]).unwrap().is_balanced(m));
        assert!(Partition::from_sizes(&[3, 3]).unwrap().is_balanced(m));
        // two coalitions below m
        assert!(!Partition::from_sizes(&[3, 2, 2]).unwrap().is_balanced(m));
        // infeasible coalition
        assert!(!Partition::grand(7).is_balanced(m));
        assert!(!Partition::from_sizes(&[4, 3]).unwrap().is_balanced(m));
        // singletons are balanced only when m divides... never for m=3, n=2 players is fine though
        assert!(Partition::singletons(1).is_balanced(m));
        assert!(!Partition::singletons(2).is_balanced(m));
    }

    #[test]
    fn integer_partition_counts() {
        assert_eq!(
            integer_partitions(4),
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
        assert_eq!(integer_partitions(7).len(), 15);
        assert_eq!(integer_partitions(8).len(), 22);
    }

    #[test]
    fn representative_partitions_match_size_multisets() {
        let reps = enumerate_partitions_by_sizes(7);
        assert_eq!(reps.len(), 15);
        let sizes: HashSet<Vec<usize>> = reps.iter().map(|p| p.sizes()).collect();
        assert_eq!(sizes.len(), 15);
        assert!(sizes.contains(&vec![3, 2, 2]));
    }

    #[test]
    fn balanced_partition_construction() {
        assert_eq!(make_balanced_partition(7, 3).sizes(), vec![3, 3, 1]);
        assert_eq!(make_balanced_partition(6, 3).sizes(), vec![3, 3]);
        assert_eq!(make_balanced_partition(2, 3).sizes(), vec![2]);
        assert!(make_balanced_partition(7, 3).is_balanced(3));
    }

    #[test]
    fn set_partition_counts_are_bell_numbers() {
        for (n, bell) in [(1, 1), (2, 2), (3, 5), (4, 15), (5, 52), (6, 203)] {
            let all: Vec<Partition> = set_partitions(n).collect();
            assert_eq!(all.len(), bell, "n={n}");
            let distinct: HashSet<&Partition> = all.iter().collect();
            assert_eq!(distinct.len(), bell);
            assert!(all.iter().all(|p| p.n() == n));
        }
    }

    #[test]
    fn set_partitions_start_with_grand_coalition() {
        let first = set_partitions(4).next().unwrap();
        assert_eq!(first, Partition::grand(4));
        let all: Vec<Partition> = set_partitions(3).collect();
        assert_eq!(*all.last().unwrap(), Partition::singletons(3));
    }
}
