//! Singleton congestion games: `n` players each pick one of `m` identical
//! resources and pay the cost of their resource's total load.
//!
//! Both social costs live here (the total cost over all players and the
//! unit cost of the most-loaded resource) together with the even-distribution
//! test and the optimal values they induce.

use crate::cost::CostFunction;
use crate::rational::{rat_zero, Rat};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("a game needs at least one resource")]
    NoResources,
    #[error("cost function covers loads up to {max_load}, but the game has {n} players")]
    CostTooShort { max_load: usize, n: usize },
    #[error("outcome has {actual} actions, expected {expected}")]
    WrongLength { expected: usize, actual: usize },
    #[error("action {action} out of range for {m} resources")]
    ActionOutOfRange { action: usize, m: usize },
    #[error("player index {index} out of range for {n} players")]
    PlayerOutOfRange { index: usize, n: usize },
}

/// A pure-strategy profile: one resource index per player.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Outcome {
    actions: Vec<usize>,
}

impl Outcome {
    pub fn new(actions: Vec<usize>, m: usize) -> Result<Self, GameError> {
        if let Some(&action) = actions.iter().find(|&&a| a >= m) {
            return Err(GameError::ActionOutOfRange { action, m });
        }
        Ok(Outcome { actions })
    }

    pub fn actions(&self) -> &[usize] {
        &self.actions
    }

    pub fn n(&self) -> usize {
        self.actions.len()
    }
}

/// Per-resource player counts for some group of players.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LoadVector {
    counts: Vec<usize>,
}

impl LoadVector {
    pub fn new(counts: Vec<usize>) -> Self {
        LoadVector { counts }
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn m(&self) -> usize {
        self.counts.len()
    }

    /// Number of players the vector accounts for.
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    pub fn max_load(&self) -> usize {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn min_load(&self) -> usize {
        self.counts.iter().copied().min().unwrap_or(0)
    }

    /// Loads spread as evenly as possible: max and min differ by at most 1.
    pub fn is_evenly_distributed(&self) -> bool {
        self.max_load() - self.min_load() <= 1
    }

    /// Canonical representative of the resource-permutation orbit.
    pub fn sorted_desc(&self) -> LoadVector {
        let mut counts = self.counts.clone();
        counts.sort_unstable_by(|a, b| b.cmp(a));
        LoadVector { counts }
    }

    /// Componentwise sum; both vectors must cover the same resources.
    pub fn add(&self, other: &LoadVector) -> LoadVector {
        assert_eq!(self.m(), other.m(), "mismatched resource counts");
        LoadVector {
            counts: self
                .counts
                .iter()
                .zip(&other.counts)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

/// Counts how many players choose each resource.
pub fn loads(outcome: &Outcome, m: usize) -> LoadVector {
    let mut counts = vec![0usize; m];
    for &a in outcome.actions() {
        counts[a] += 1;
    }
    LoadVector::new(counts)
}

/// The optimal values of both social costs, attained by any evenly
/// distributed outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OptimalCosts {
    /// Minimum total cost over all outcomes.
    pub total: Rat,
    /// Minimum max-resource unit cost over all outcomes.
    pub max: Rat,
}

/// A singleton congestion game `(n, m, f)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    n: usize,
    m: usize,
    cost: CostFunction,
}

impl Game {
    pub fn new(n: usize, m: usize, cost: CostFunction) -> Result<Self, GameError> {
        if n == 0 {
            return Err(GameError::NoPlayers);
        }
        if m == 0 {
            return Err(GameError::NoResources);
        }
        if cost.max_load() < n {
            return Err(GameError::CostTooShort {
                max_load: cost.max_load(),
                n,
            });
        }
        Ok(Game { n, m, cost })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn cost(&self) -> &CostFunction {
        &self.cost
    }

    pub fn check_outcome(&self, outcome: &Outcome) -> Result<(), GameError> {
        if outcome.n() != self.n {
            return Err(GameError::WrongLength {
                expected: self.n,
                actual: outcome.n(),
            });
        }
        if let Some(&action) = outcome.actions().iter().find(|&&a| a >= self.m) {
            return Err(GameError::ActionOutOfRange { action, m: self.m });
        }
        Ok(())
    }

    /// Cost paid by player `i`: the cost of the load on their chosen resource.
    pub fn player_cost(&self, outcome: &Outcome, i: usize) -> Result<Rat, GameError> {
        if i >= self.n {
            return Err(GameError::PlayerOutOfRange { index: i, n: self.n });
        }
        let lv = loads(outcome, self.m);
        Ok(self.cost.value(lv.counts()[outcome.actions()[i]]).clone())
    }

    /// Total cost to all players: `Σ_x n_x · f(n_x)`.
    pub fn total_cost(&self, outcome: &Outcome) -> Rat {
        self.total_cost_of_loads(&loads(outcome, self.m))
    }

    pub fn total_cost_of_loads(&self, lv: &LoadVector) -> Rat {
        lv.counts()
            .iter()
            .filter(|&&k| k > 0)
            .map(|&k| Rat::from_integer(k.into()) * self.cost.value(k))
            .fold(rat_zero(), |acc, v| acc + v)
    }

    /// Unit cost of the most-loaded resource, which is also the highest cost
    /// any single player pays.
    pub fn max_cost(&self, outcome: &Outcome) -> Rat {
        self.max_cost_of_loads(&loads(outcome, self.m))
    }

    pub fn max_cost_of_loads(&self, lv: &LoadVector) -> Rat {
        self.cost.value(lv.max_load()).clone()
    }

    /// The even load vector: `n mod m` resources at `⌊n/m⌋ + 1`, the rest at
    /// `⌊n/m⌋`.
    pub fn even_load_vector(n: usize, m: usize) -> LoadVector {
        let y = n / m;
        let l = n % m;
        let mut counts = vec![y + 1; l];
        counts.extend(std::iter::repeat_n(y, m - l));
        LoadVector::new(counts)
    }

    /// Optimal social costs, computed from the even load vector by the
    /// definitional sums: `l` resources carry `y+1` players at cost `f(y+1)`
    /// each and the rest carry `y`.
    pub fn optimal_costs(&self) -> OptimalCosts {
        let even = Self::even_load_vector(self.n, self.m);
        OptimalCosts {
            total: self.total_cost_of_loads(&even),
            max: self.max_cost_of_loads(&even),
        }
    }

    /// All `m^n` outcomes, in lexicographic action order.
    pub fn outcomes(&self) -> impl Iterator<Item = Outcome> {
        index_tuples(self.n, self.m).map(|actions| Outcome { actions })
    }

    /// Number of outcomes `m^n`, saturating at `usize::MAX`.
    pub fn outcome_count(&self) -> usize {
        saturating_pow(self.m, self.n)
    }
}

pub(crate) fn saturating_pow(base: usize, exp: usize) -> usize {
    let mut acc = 1usize;
    for _ in 0..exp {
        acc = acc.saturating_mul(base);
    }
    acc
}

/// All length-`len` tuples over `0..base`, lexicographically.
pub fn index_tuples(len: usize, base: usize) -> IndexTuples {
    IndexTuples {
        next: Some(vec![0; len]),
        base,
    }
}

pub struct IndexTuples {
    next: Option<Vec<usize>>,
    base: usize,
}

impl Iterator for IndexTuples {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        if self.base == 0 && !current.is_empty() {
            return None;
        }
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                self.next = None;
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.base {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat_int, Rat};

    fn id_game(n: usize, m: usize) -> Game {
        Game::new(n, m, CostFunction::identity(n.max(2))).unwrap()
    }

    #[test]
    fn loads_counts_players_per_resource() {
        let o = Outcome::new(vec![0, 0, 1], 2).unwrap();
        assert_eq!(loads(&o, 2).counts(), &[2, 1]);
        let o = Outcome::new(vec![0, 0, 0], 2).unwrap();
        assert_eq!(loads(&o, 2).counts(), &[3, 0]);
        let o = Outcome::new(vec![0; 5], 3).unwrap();
        assert_eq!(loads(&o, 3).counts(), &[5, 0, 0]);
    }

    #[test]
    fn player_cost_is_own_resource_load_cost() {
        let g = id_game(3, 2);
        let o = Outcome::new(vec![0, 0, 1], 2).unwrap();
        assert_eq!(g.player_cost(&o, 0).unwrap(), rat_int(2));
        assert_eq!(g.player_cost(&o, 2).unwrap(), rat_int(1));
        let all = Outcome::new(vec![0, 0, 0], 2).unwrap();
        assert_eq!(g.player_cost(&all, 1).unwrap(), rat_int(3));
        assert!(matches!(
            g.player_cost(&o, 3),
            Err(GameError::PlayerOutOfRange { .. })
        ));
    }

    #[test]
    fn player_cost_from_table() {
        let f = CostFunction::from_table(vec![rat_int(1), rat_int(2), rat_int(4)]).unwrap();
        let g = Game::new(3, 2, f).unwrap();
        let o = Outcome::new(vec![0, 0, 1], 2).unwrap();
        assert_eq!(g.player_cost(&o, 2).unwrap(), rat_int(1));
    }

    #[test]
    fn total_cost_matches_per_player_sum() {
        let g = id_game(7, 3);
        for o in g.outcomes() {
            let by_resource = g.total_cost(&o);
            let by_player: Rat = (0..7).map(|i| g.player_cost(&o, i).unwrap()).sum();
            assert_eq!(by_resource, by_player);
        }
    }

    #[test]
    fn total_cost_examples() {
        let g = id_game(7, 3);
        assert_eq!(
            g.total_cost_of_loads(&LoadVector::new(vec![3, 2, 2])),
            rat_int(17)
        );
        assert_eq!(
            g.total_cost_of_loads(&LoadVector::new(vec![3, 3, 1])),
            rat_int(19)
        );
        // one player per resource costs n·f(1)
        let g = id_game(3, 3);
        assert_eq!(
            g.total_cost_of_loads(&LoadVector::new(vec![1, 1, 1])),
            rat_int(3)
        );
    }

    #[test]
    fn max_cost_examples() {
        let g = id_game(7, 3);
        assert_eq!(
            g.max_cost_of_loads(&LoadVector::new(vec![3, 2, 2])),
            rat_int(3)
        );
        // uneven (3,3,1) still attains the optimal max cost
        assert_eq!(
            g.max_cost_of_loads(&LoadVector::new(vec![3, 3, 1])),
            rat_int(3)
        );
        assert_eq!(
            g.max_cost_of_loads(&LoadVector::new(vec![1, 1, 1])),
            rat_int(1)
        );
    }

    #[test]
    fn evenly_distributed_examples() {
        assert!(LoadVector::new(vec![3, 2, 2]).is_evenly_distributed());
        assert!(!LoadVector::new(vec![3, 3, 1]).is_evenly_distributed());
        assert!(LoadVector::new(vec![2, 2, 2]).is_evenly_distributed());
    }

    /// Independent oracle: exact minimum of both social costs over all m^n
    /// outcomes.
    fn brute_force_optima(g: &Game) -> (Rat, Rat) {
        let mut best_total: Option<Rat> = None;
        let mut best_max: Option<Rat> = None;
        for o in g.outcomes() {
            let t = g.total_cost(&o);
            let x = g.max_cost(&o);
            if best_total.as_ref().is_none_or(|b| t < *b) {
                best_total = Some(t);
            }
            if best_max.as_ref().is_none_or(|b| x < *b) {
                best_max = Some(x);
            }
        }
        (best_total.unwrap(), best_max.unwrap())
    }

    #[test]
    fn optimal_costs_examples() {
        let g = id_game(7, 3);
        let opt = g.optimal_costs();
        assert_eq!(opt.total, rat_int(17));
        assert_eq!(opt.max, rat_int(3));
        assert_eq!(brute_force_optima(&g), (rat_int(17), rat_int(3)));

        let g = id_game(6, 3);
        let opt = g.optimal_costs();
        assert_eq!((opt.total, opt.max), (rat_int(12), rat_int(2)));

        let g = id_game(3, 2);
        let opt = g.optimal_costs();
        assert_eq!((opt.total.clone(), opt.max.clone()), (rat_int(5), rat_int(2)));
        assert_eq!(brute_force_optima(&g), (rat_int(5), rat_int(2)));
    }

    #[test]
    fn optimal_costs_when_resources_exceed_players() {
        // n=2, m=3: even vector (1,1,0); never evaluates f at load 0
        let g = id_game(2, 3);
        let opt = g.optimal_costs();
        assert_eq!((opt.total, opt.max), (rat_int(2), rat_int(1)));
    }

    #[test]
    fn index_tuples_cover_the_whole_space() {
        let all: Vec<_> = index_tuples(3, 2).collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0], vec![0, 0, 0]);
        assert_eq!(all[7], vec![1, 1, 1]);
        let empty: Vec<_> = index_tuples(0, 3).collect();
        assert_eq!(empty, vec![Vec::<usize>::new()]);
    }
}
