//! Weighted players: each player carries an integer weight, resources charge
//! by total carried weight, and coalition agreements connect to multiway
//! number partitioning.
//!
//! Weighted envy-freeness reduces to an integer test on base weights (the
//! weight a member's resource carries besides their own), and credibility
//! under any strictly increasing effective cost reduces to integer
//! comparisons of shifted loads. Qualified agreements therefore have a
//! purely arithmetic structure: with at most `m` members everyone sits
//! alone, with more than `m` members every resource must host a single
//! weight class sharing one common base weight `b`, and such a `b` is unique
//! when it exists.

use crate::agreement::{CapExceeded, EffectiveCost};
use crate::cost::CostFunction;
use crate::game::{index_tuples, saturating_pow, LoadVector, Outcome};
use crate::partition::{set_partitions, Partition};
use crate::rational::{rat_zero, Rat};
use itertools::Itertools;
use num_integer::Integer;
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightedError {
    #[error("a game needs at least one player")]
    NoPlayers,
    #[error("a game needs at least one resource")]
    NoResources,
    #[error("player {player} has zero weight")]
    ZeroWeight { player: usize },
    #[error("cost function covers loads up to {max_load}, total weight is {total_weight}")]
    CostTooShort { max_load: usize, total_weight: u64 },
    #[error("agreement has {weights} weights but {actions} actions")]
    LengthMismatch { weights: usize, actions: usize },
    #[error("action {action} out of range for {m} resources")]
    ActionOutOfRange { action: usize, m: usize },
}

/// A congestion game where player `i` adds weight `w_i` to their resource
/// and pays the cost of its total weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGame {
    weights: Vec<u64>,
    m: usize,
    cost: CostFunction,
}

impl WeightedGame {
    pub fn new(weights: Vec<u64>, m: usize, cost: CostFunction) -> Result<Self, WeightedError> {
        if weights.is_empty() {
            return Err(WeightedError::NoPlayers);
        }
        if m == 0 {
            return Err(WeightedError::NoResources);
        }
        if let Some(player) = weights.iter().position(|&w| w == 0) {
            return Err(WeightedError::ZeroWeight { player });
        }
        let total: u64 = weights.iter().sum();
        if (cost.max_load() as u64) < total {
            return Err(WeightedError::CostTooShort {
                max_load: cost.max_load(),
                total_weight: total,
            });
        }
        Ok(WeightedGame { weights, m, cost })
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn cost(&self) -> &CostFunction {
        &self.cost
    }

    pub fn total_weight(&self) -> u64 {
        self.weights.iter().sum()
    }

    /// Total weight carried by each resource.
    pub fn weight_loads(&self, outcome: &Outcome) -> Vec<u64> {
        let mut loads = vec![0u64; self.m];
        for (i, &a) in outcome.actions().iter().enumerate() {
            loads[a] += self.weights[i];
        }
        loads
    }

    /// How many players sit on each resource.
    pub fn player_counts(&self, outcome: &Outcome) -> LoadVector {
        crate::game::loads(outcome, self.m)
    }

    pub fn player_cost(&self, outcome: &Outcome, i: usize) -> Rat {
        let loads = self.weight_loads(outcome);
        self.cost.value(loads[outcome.actions()[i]] as usize).clone()
    }

    /// `Σ_x n_x·f(n_x)` over occupied resources, `n_x` the weight load.
    pub fn total_cost(&self, outcome: &Outcome) -> Rat {
        self.total_cost_of_loads(&self.weight_loads(outcome))
    }

    pub fn total_cost_of_loads(&self, loads: &[u64]) -> Rat {
        loads
            .iter()
            .filter(|&&w| w > 0)
            .map(|&w| Rat::from_integer(w.into()) * self.cost.value(w as usize))
            .fold(rat_zero(), |acc, v| acc + v)
    }

    /// Unit cost of the heaviest resource.
    pub fn max_cost(&self, outcome: &Outcome) -> Rat {
        self.max_cost_of_loads(&self.weight_loads(outcome))
    }

    pub fn max_cost_of_loads(&self, loads: &[u64]) -> Rat {
        let max = loads.iter().copied().max().unwrap_or(0);
        self.cost.value(max as usize).clone()
    }
}

/// A standalone coalition's joint action: `actions[i]` is the resource of
/// the member with weight `weights[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightedAgreement {
    weights: Vec<u64>,
    actions: Vec<usize>,
}

impl WeightedAgreement {
    pub fn new(weights: Vec<u64>, actions: Vec<usize>, m: usize) -> Result<Self, WeightedError> {
        if weights.len() != actions.len() {
            return Err(WeightedError::LengthMismatch {
                weights: weights.len(),
                actions: actions.len(),
            });
        }
        if let Some(player) = weights.iter().position(|&w| w == 0) {
            return Err(WeightedError::ZeroWeight { player });
        }
        if let Some(&action) = actions.iter().find(|&&a| a >= m) {
            return Err(WeightedError::ActionOutOfRange { action, m });
        }
        Ok(WeightedAgreement { weights, actions })
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn actions(&self) -> &[usize] {
        &self.actions
    }

    pub fn size(&self) -> usize {
        self.weights.len()
    }

    pub fn weight_loads(&self, m: usize) -> Vec<u64> {
        let mut loads = vec![0u64; m];
        for (&w, &a) in self.weights.iter().zip(&self.actions) {
            loads[a] += w;
        }
        loads
    }

    pub fn count_loads(&self, m: usize) -> LoadVector {
        let mut counts = vec![0usize; m];
        for &a in &self.actions {
            counts[a] += 1;
        }
        LoadVector::new(counts)
    }

    /// Weight a member's resource carries besides their own:
    /// `n_{a_i} - w_i`.
    pub fn base_weights(&self, m: usize) -> Vec<u64> {
        let loads = self.weight_loads(m);
        self.weights
            .iter()
            .zip(&self.actions)
            .map(|(&w, &a)| loads[a] - w)
            .collect()
    }

    /// Counted over members, not weight: every resource used when the
    /// coalition is at least as large as `m`, no resource shared otherwise.
    pub fn is_covering(&self, m: usize) -> bool {
        let counts = self.count_loads(m);
        if self.size() >= m {
            counts.counts().iter().all(|&k| k > 0)
        } else {
            counts.counts().iter().all(|&k| k <= 1)
        }
    }

    /// Members on different resources must have equal base weights.
    pub fn is_envy_free(&self, m: usize) -> bool {
        let bases = self.base_weights(m);
        for (i, &ai) in self.actions.iter().enumerate() {
            for (j, &aj) in self.actions.iter().enumerate().skip(i + 1) {
                if ai != aj && bases[i] != bases[j] {
                    return false;
                }
            }
        }
        true
    }

    /// `g(n_{a_i}) <= g(n_k + w_i)` for every member `i` and every other
    /// resource `k`. For any strictly increasing `g` this is the integer
    /// comparison `n_{a_i} <= n_k + w_i`.
    pub fn is_credible(&self, m: usize, g: &EffectiveCost) -> bool {
        let loads = self.weight_loads(m);
        for (&w, &a) in self.weights.iter().zip(&self.actions) {
            let own = g.value(loads[a] as usize);
            for (k, &load) in loads.iter().enumerate() {
                if k == a {
                    continue;
                }
                if g.value((load + w) as usize) < own {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_qualified(&self, m: usize, g: &EffectiveCost) -> bool {
        self.is_covering(m) && self.is_envy_free(m) && self.is_credible(m, g)
    }
}

/// Shape of a coalition's qualified agreements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightedStructure {
    /// At most `m` members: every injective placement.
    AllDistinct,
    /// One resource, more than one member: everyone piles on.
    SingleResource,
    /// More members than resources: each resource hosts one weight class
    /// whose members all see base weight `b`; resource totals are `b + w`.
    Grouped { b: u64 },
}

/// Whether a coalition with these weights has any qualified agreement over
/// `m` resources, and its shape when it does.
///
/// For more members than resources the base `b` must be a common multiple of
/// the weights, each weight class `w` must split into groups of `b/w + 1`,
/// and the groups must number exactly `m`. The group count strictly
/// decreases in `b`, so at most one `b` works.
pub fn weighted_qualified_conditions(weights: &[u64], m: usize) -> Option<WeightedStructure> {
    assert!(!weights.is_empty(), "coalitions are non-empty");
    assert!(m > 0, "need at least one resource");
    assert!(weights.iter().all(|&w| w > 0), "weights are positive");
    if weights.len() <= m {
        return Some(WeightedStructure::AllDistinct);
    }
    if m == 1 {
        return Some(WeightedStructure::SingleResource);
    }
    let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
    for &w in weights {
        *counts.entry(w).or_insert(0) += 1;
    }
    let lcm = counts.keys().fold(1u64, |acc, &w| acc.lcm(&w));
    let total: u64 = weights.iter().sum();
    let mut b = lcm;
    while b < total {
        let mut groups = 0u64;
        let mut ok = true;
        for (&w, &cnt) in &counts {
            let group_size = b / w + 1;
            if cnt % group_size != 0 {
                ok = false;
                break;
            }
            groups += cnt / group_size;
        }
        if ok && groups == m as u64 {
            return Some(WeightedStructure::Grouped { b });
        }
        b += lcm;
    }
    None
}

/// Distinct ordered weight-load vectors the structure's qualified
/// arrangements can produce.
pub fn structure_load_support(
    weights: &[u64],
    m: usize,
    structure: &WeightedStructure,
) -> BTreeSet<Vec<u64>> {
    match structure {
        WeightedStructure::AllDistinct => {
            let mut padded = weights.to_vec();
            padded.resize(m, 0);
            distinct_permutations(padded)
        }
        WeightedStructure::SingleResource => {
            BTreeSet::from([vec![weights.iter().sum()]])
        }
        WeightedStructure::Grouped { b } => {
            let mut counts: BTreeMap<u64, u64> = BTreeMap::new();
            for &w in weights {
                *counts.entry(w).or_insert(0) += 1;
            }
            let mut totals = Vec::new();
            for (&w, &cnt) in &counts {
                let group_size = b / w + 1;
                for _ in 0..cnt / group_size {
                    totals.push(b + w);
                }
            }
            assert_eq!(totals.len(), m, "grouped structure fills every resource");
            distinct_permutations(totals)
        }
    }
}

fn distinct_permutations(items: Vec<u64>) -> BTreeSet<Vec<u64>> {
    let len = items.len();
    items
        .into_iter()
        .permutations(len)
        .collect()
}

/// Literal route: every joint action filtered through the qualification
/// predicates.
pub fn enumerate_weighted_qualified(
    weights: &[u64],
    m: usize,
    g: &EffectiveCost,
    cap: usize,
) -> Result<Vec<WeightedAgreement>, CapExceeded> {
    let needed = saturating_pow(m, weights.len());
    if needed > cap {
        return Err(CapExceeded { needed, cap });
    }
    Ok(index_tuples(weights.len(), m)
        .map(|actions| {
            WeightedAgreement::new(weights.to_vec(), actions, m).expect("actions in range")
        })
        .filter(|a| a.is_qualified(m, g))
        .collect())
}

/// Objectives for splitting a weight multiset across `m` parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MnpObjective {
    /// Minimize the largest part.
    Minimax,
    /// Maximize the smallest part.
    Maximin,
    /// Minimize largest minus smallest.
    MinGap,
    /// Minimize the sum of squared parts.
    MinVar,
}

/// Optimal value and every load multiset (sorted largest first) attaining
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MnpSolution {
    pub objective: MnpObjective,
    pub value: u128,
    pub loads: BTreeSet<Vec<u64>>,
}

/// Every distinct multiset of part sums over all assignments of the weights
/// to `m` parts, each sorted largest first. Parts may stay empty.
pub fn enumerate_load_multisets(
    weights: &[u64],
    m: usize,
    cap: usize,
) -> Result<BTreeSet<Vec<u64>>, CapExceeded> {
    assert!(m > 0, "need at least one part");
    let mut sorted: Vec<u64> = weights.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut out = BTreeSet::new();
    let mut loads = vec![0u64; m];
    let mut seen: BTreeSet<(usize, Vec<u64>)> = BTreeSet::new();
    let mut budget = cap;
    dfs(&sorted, 0, &mut loads, &mut seen, &mut out, &mut budget)?;
    return Ok(out);

    fn dfs(
        weights: &[u64],
        i: usize,
        loads: &mut Vec<u64>,
        seen: &mut BTreeSet<(usize, Vec<u64>)>,
        out: &mut BTreeSet<Vec<u64>>,
        budget: &mut usize,
    ) -> Result<(), CapExceeded> {
        let mut key = loads.clone();
        key.sort_unstable_by(|a, b| b.cmp(a));
        if i == weights.len() {
            out.insert(key);
            return Ok(());
        }
        if !seen.insert((i, key)) {
            return Ok(());
        }
        if *budget == 0 {
            return Err(CapExceeded {
                needed: 1,
                cap: 0,
            });
        }
        *budget -= 1;
        let mut tried: BTreeSet<u64> = BTreeSet::new();
        for j in 0..loads.len() {
            if !tried.insert(loads[j]) {
                continue;
            }
            loads[j] += weights[i];
            dfs(weights, i + 1, loads, seen, out, budget)?;
            loads[j] -= weights[i];
        }
        Ok(())
    }
}

pub fn mnp_solve(
    weights: &[u64],
    m: usize,
    objective: MnpObjective,
    cap: usize,
) -> Result<MnpSolution, CapExceeded> {
    let multisets = enumerate_load_multisets(weights, m, cap)?;
    let mut best: Option<u128> = None;
    let mut loads: BTreeSet<Vec<u64>> = BTreeSet::new();
    for ms in multisets {
        let value = objective_value(objective, &ms);
        let better = match best {
            None => true,
            Some(b) => match objective {
                MnpObjective::Maximin => value > b,
                _ => value < b,
            },
        };
        if better {
            best = Some(value);
            loads.clear();
        }
        if best == Some(value) {
            loads.insert(ms);
        }
    }
    Ok(MnpSolution {
        objective,
        value: best.expect("at least one assignment exists"),
        loads,
    })
}

fn objective_value(objective: MnpObjective, sorted_desc: &[u64]) -> u128 {
    let max = *sorted_desc.first().expect("at least one part");
    let min = *sorted_desc.last().expect("at least one part");
    match objective {
        MnpObjective::Minimax => max as u128,
        MnpObjective::Maximin => min as u128,
        MnpObjective::MinGap => (max - min) as u128,
        MnpObjective::MinVar => sorted_desc.iter().map(|&l| (l as u128) * (l as u128)).sum(),
    }
}

/// Checks that minimizing total cost under the identity resource cost picks
/// out exactly the minimum-variance part multisets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CbarEquivalence {
    pub agrees: bool,
    pub min_var_loads: BTreeSet<Vec<u64>>,
    pub min_total_loads: BTreeSet<Vec<u64>>,
}

pub fn weighted_c_bar_equivalence_check(
    weights: &[u64],
    m: usize,
    cap: usize,
) -> Result<CbarEquivalence, CapExceeded> {
    let min_var = mnp_solve(weights, m, MnpObjective::MinVar, cap)?;
    let total: u64 = weights.iter().sum();
    let game = WeightedGame::new(
        weights.to_vec(),
        m,
        CostFunction::identity((total as usize).max(2)),
    )
    .expect("identity covers the total weight");
    let mut best: Option<Rat> = None;
    let mut min_total_loads: BTreeSet<Vec<u64>> = BTreeSet::new();
    for ms in enumerate_load_multisets(weights, m, cap)? {
        let value = game.total_cost_of_loads(&ms);
        if best.as_ref().is_none_or(|b| value < *b) {
            best = Some(value.clone());
            min_total_loads.clear();
        }
        if best.as_ref() == Some(&value) {
            min_total_loads.insert(ms);
        }
    }
    Ok(CbarEquivalence {
        agrees: min_var.loads == min_total_loads,
        min_var_loads: min_var.loads,
        min_total_loads,
    })
}

/// Why a partition cannot guarantee the minimax optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HatCRejection {
    /// Some coalition has no qualified agreement at all.
    NoQualifiedAgreement { coalition: Vec<usize> },
    /// A reachable joint load vector misses the optimum.
    SupportExceedsOptimum { witness: Vec<u64>, max: u64 },
}

/// Predicate flags for one way the grand coalition could attain the minimax
/// optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimaxDiagnosis {
    /// Members grouped by shared resource.
    pub groups: Vec<Vec<usize>>,
    /// Weight loads, largest first.
    pub loads: Vec<u64>,
    pub covering: bool,
    pub envy_free: bool,
    pub credible: bool,
    /// Per player, in player order.
    pub base_weights: Vec<u64>,
}

/// Outcome of scanning all partitions for one whose induced play always
/// attains the minimax optimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatCSearch {
    pub t_star: u64,
    pub found: Option<HatCFound>,
    /// Partitions examined before the first success, or all of them when
    /// none succeeds.
    pub rejections: Vec<(Partition, HatCRejection)>,
    /// Why each minimax-optimal grand-coalition arrangement is or is not
    /// qualified.
    pub grand_diagnoses: Vec<MinimaxDiagnosis>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HatCFound {
    pub partition: Partition,
    pub support: BTreeSet<Vec<u64>>,
}

/// Scan set partitions (grand coalition first) for one where every
/// reachable joint load vector attains the minimax optimum `t_star`.
pub fn find_hat_c_optimal_partition(
    game: &WeightedGame,
    cap: usize,
) -> Result<HatCSearch, CapExceeded> {
    let weights = game.weights();
    let m = game.m();
    let t_star = mnp_solve(weights, m, MnpObjective::Minimax, cap)?.value as u64;

    let mut supports: BTreeMap<Vec<u64>, Option<BTreeSet<Vec<u64>>>> = BTreeMap::new();
    let mut rejections = Vec::new();
    let mut found = None;

    'partitions: for partition in set_partitions(weights.len()) {
        let mut joint: BTreeSet<Vec<u64>> = BTreeSet::from([vec![0u64; m]]);
        for coalition in partition.coalitions() {
            let mut cw: Vec<u64> = coalition.iter().map(|&p| weights[p]).collect();
            cw.sort_unstable();
            let support = supports
                .entry(cw.clone())
                .or_insert_with(|| {
                    weighted_qualified_conditions(&cw, m)
                        .map(|s| structure_load_support(&cw, m, &s))
                })
                .clone();
            let support = match support {
                None => {
                    rejections.push((
                        partition.clone(),
                        HatCRejection::NoQualifiedAgreement {
                            coalition: coalition.clone(),
                        },
                    ));
                    continue 'partitions;
                }
                Some(s) => s,
            };
            if joint.len().saturating_mul(support.len()) > cap {
                return Err(CapExceeded {
                    needed: joint.len().saturating_mul(support.len()),
                    cap,
                });
            }
            let mut next = BTreeSet::new();
            for acc in &joint {
                for lv in &support {
                    let sum: Vec<u64> = acc.iter().zip(lv).map(|(a, b)| a + b).collect();
                    next.insert(sum);
                }
            }
            joint = next;
        }
        if let Some(witness) = joint
            .iter()
            .find(|lv| lv.iter().copied().max().unwrap_or(0) > t_star)
        {
            let max = witness.iter().copied().max().unwrap_or(0);
            rejections.push((
                partition.clone(),
                HatCRejection::SupportExceedsOptimum {
                    witness: witness.clone(),
                    max,
                },
            ));
            continue;
        }
        found = Some(HatCFound {
            partition,
            support: joint,
        });
        break;
    }

    let grand_diagnoses = diagnose_grand_minimax(game, t_star, cap)?;
    Ok(HatCSearch {
        t_star,
        found,
        rejections,
        grand_diagnoses,
    })
}

/// One diagnosis per distinct grouping of the grand coalition whose loads
/// attain the minimax optimum.
fn diagnose_grand_minimax(
    game: &WeightedGame,
    t_star: u64,
    cap: usize,
) -> Result<Vec<MinimaxDiagnosis>, CapExceeded> {
    let weights = game.weights();
    let m = game.m();
    let n = weights.len();
    let needed = saturating_pow(m, n);
    if needed > cap {
        return Err(CapExceeded { needed, cap });
    }
    let g = EffectiveCost::from_cost(game.cost());
    let mut seen: BTreeSet<Vec<Vec<usize>>> = BTreeSet::new();
    let mut diagnoses = Vec::new();
    for actions in index_tuples(n, m) {
        let agreement =
            WeightedAgreement::new(weights.to_vec(), actions.clone(), m).expect("in range");
        let loads = agreement.weight_loads(m);
        if loads.iter().copied().max().unwrap_or(0) != t_star {
            continue;
        }
        let mut groups: Vec<Vec<usize>> = vec![Vec::new(); m];
        for (player, &a) in actions.iter().enumerate() {
            groups[a].push(player);
        }
        groups.retain(|g| !g.is_empty());
        groups.sort();
        if !seen.insert(groups.clone()) {
            continue;
        }
        let mut sorted_loads = loads.clone();
        sorted_loads.sort_unstable_by(|a, b| b.cmp(a));
        diagnoses.push(MinimaxDiagnosis {
            groups,
            loads: sorted_loads,
            covering: agreement.is_covering(m),
            envy_free: agreement.is_envy_free(m),
            credible: agreement.is_credible(m, &g),
            base_weights: agreement.base_weights(m),
        });
    }
    Ok(diagnoses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::agreement::DEFAULT_CAP;
    use crate::partition::classify;
    use crate::rational::rat_int;

    fn id_weighted(weights: Vec<u64>, m: usize) -> WeightedGame {
        let total: u64 = weights.iter().sum();
        WeightedGame::new(weights, m, CostFunction::identity((total as usize).max(2))).unwrap()
    }

    #[test]
    fn weight_loads_and_costs() {
        let game = id_weighted(vec![5, 3, 2, 2, 1], 4);
        let o = Outcome::new(vec![0, 1, 2, 3, 2], 4).unwrap();
        assert_eq!(game.weight_loads(&o), vec![5, 3, 3, 2]);
        assert_eq!(game.total_cost(&o), rat_int(47));
        assert_eq!(game.max_cost(&o), rat_int(5));
        assert_eq!(game.player_cost(&o, 4), rat_int(3));

        let o = Outcome::new(vec![0, 1, 1, 2, 3], 4).unwrap();
        assert_eq!(game.weight_loads(&o), vec![5, 5, 2, 1]);
        assert_eq!(game.total_cost(&o), rat_int(55));
    }

    #[test]
    fn base_weights_and_envy() {
        let a = WeightedAgreement::new(vec![1, 2, 3], vec![0, 0, 1], 2).unwrap();
        assert_eq!(a.weight_loads(2), vec![3, 3]);
        assert_eq!(a.base_weights(2), vec![2, 1, 0]);
        assert!(!a.is_envy_free(2));
        assert!(a.is_covering(2));
        let g = EffectiveCost::from_cost(&CostFunction::identity(6));
        assert!(a.is_credible(2, &g));
    }

    #[test]
    fn envy_free_needs_equal_bases_across_resources() {
        // two groups of equal base weight 2
        let a = WeightedAgreement::new(vec![2, 2, 2, 4], vec![0, 0, 1, 1], 2).unwrap();
        assert_eq!(a.weight_loads(2), vec![4, 6]);
        assert_eq!(a.base_weights(2), vec![2, 2, 4, 2]);
        assert!(!a.is_envy_free(2));

        let b = WeightedAgreement::new(vec![2, 2, 2, 4, 4], vec![0, 0, 0, 1, 1], 2).unwrap();
        assert_eq!(b.base_weights(2), vec![4, 4, 4, 4, 4]);
        assert!(b.is_envy_free(2));
    }

    #[test]
    fn qualified_structure_trichotomy() {
        assert_eq!(
            weighted_qualified_conditions(&[1, 2], 3),
            Some(WeightedStructure::AllDistinct)
        );
        assert_eq!(
            weighted_qualified_conditions(&[1, 2, 3], 3),
            Some(WeightedStructure::AllDistinct)
        );
        assert_eq!(
            weighted_qualified_conditions(&[1, 2, 3], 1),
            Some(WeightedStructure::SingleResource)
        );
        assert_eq!(
            weighted_qualified_conditions(&[2, 2, 2, 4, 4], 2),
            Some(WeightedStructure::Grouped { b: 4 })
        );
        assert_eq!(weighted_qualified_conditions(&[1, 2, 3], 2), None);
        assert_eq!(weighted_qualified_conditions(&[2, 2, 4, 4], 2), None);
    }

    #[test]
    fn grouped_support_matches_literal_enumeration() {
        let cases: Vec<(Vec<u64>, usize)> = vec![
            (vec![2, 2, 2, 4, 4], 2),
            (vec![1, 2], 2),
            (vec![1, 2, 3], 2),
            (vec![1, 1, 1], 3),
            (vec![1, 1, 1, 1], 2),
            (vec![3], 2),
            (vec![5, 5], 1),
        ];
        for (weights, m) in cases {
            let total: u64 = weights.iter().sum();
            let g = EffectiveCost::from_cost(&CostFunction::identity((total as usize).max(2)));
            let literal = enumerate_weighted_qualified(&weights, m, &g, DEFAULT_CAP).unwrap();
            let literal_support: BTreeSet<Vec<u64>> =
                literal.iter().map(|a| a.weight_loads(m)).collect();
            match weighted_qualified_conditions(&weights, m) {
                None => assert!(literal_support.is_empty(), "w={weights:?} m={m}"),
                Some(structure) => {
                    let derived = structure_load_support(&weights, m, &structure);
                    assert_eq!(derived, literal_support, "w={weights:?} m={m}");
                }
            }
        }
    }

    #[test]
    fn unit_weights_reduce_to_the_size_trichotomy() {
        use crate::partition::CoalitionClass;
        for size in 1..=6usize {
            for m in 1..=3usize {
                let weights = vec![1u64; size];
                let structure = weighted_qualified_conditions(&weights, m);
                match classify(size, m) {
                    CoalitionClass::Remainder => {
                        assert_eq!(structure, Some(WeightedStructure::AllDistinct))
                    }
                    CoalitionClass::Divisible => {
                        if size <= m {
                            assert_eq!(structure, Some(WeightedStructure::AllDistinct));
                        } else if m == 1 {
                            assert_eq!(structure, Some(WeightedStructure::SingleResource));
                        } else {
                            assert_eq!(
                                structure,
                                Some(WeightedStructure::Grouped {
                                    b: (size / m - 1) as u64
                                }),
                                "size={size} m={m}"
                            );
                        }
                    }
                    CoalitionClass::Infeasible => assert_eq!(structure, None, "size={size} m={m}"),
                }
            }
        }
    }

    #[test]
    fn load_multiset_enumeration() {
        let sets = enumerate_load_multisets(&[1, 1], 2, DEFAULT_CAP).unwrap();
        assert_eq!(sets, BTreeSet::from([vec![1, 1], vec![2, 0]]));
        let sets = enumerate_load_multisets(&[1, 2], 2, DEFAULT_CAP).unwrap();
        assert_eq!(sets, BTreeSet::from([vec![2, 1], vec![3, 0]]));
        let sets = enumerate_load_multisets(&[3, 1], 1, DEFAULT_CAP).unwrap();
        assert_eq!(sets, BTreeSet::from([vec![4]]));
    }

    #[test]
    fn mnp_objectives_on_the_running_example() {
        let w = [5u64, 3, 2, 2, 1];
        let minimax = mnp_solve(&w, 4, MnpObjective::Minimax, DEFAULT_CAP).unwrap();
        assert_eq!(minimax.value, 5);
        assert!(minimax.loads.contains(&vec![5, 3, 3, 2]));
        assert!(minimax.loads.iter().all(|ms| ms[0] == 5));

        let maximin = mnp_solve(&w, 4, MnpObjective::Maximin, DEFAULT_CAP).unwrap();
        assert_eq!(maximin.value, 2);

        let gap = mnp_solve(&w, 4, MnpObjective::MinGap, DEFAULT_CAP).unwrap();
        assert_eq!(gap.value, 3);
        assert_eq!(
            gap.loads,
            BTreeSet::from([vec![5, 3, 3, 2], vec![5, 4, 2, 2]])
        );

        let var = mnp_solve(&w, 4, MnpObjective::MinVar, DEFAULT_CAP).unwrap();
        assert_eq!(var.value, 47);
        assert_eq!(var.loads, BTreeSet::from([vec![5, 3, 3, 2]]));
    }

    #[test]
    fn min_var_matches_total_cost_minimization() {
        for (weights, m) in [
            (vec![5u64, 3, 2, 2, 1], 4usize),
            (vec![1, 2, 3], 2),
            (vec![4, 4, 4], 3),
            (vec![7, 1, 1, 1], 2),
        ] {
            let eq = weighted_c_bar_equivalence_check(&weights, m, DEFAULT_CAP).unwrap();
            assert!(eq.agrees, "w={weights:?} m={m}");
        }
    }

    #[test]
    fn no_partition_guarantees_the_optimum_for_one_two_three() {
        let game = id_weighted(vec![1, 2, 3], 2);
        let search = find_hat_c_optimal_partition(&game, DEFAULT_CAP).unwrap();
        assert_eq!(search.t_star, 3);
        assert!(search.found.is_none());
        assert_eq!(search.rejections.len(), 5);

        let grand_rejection = &search.rejections[0];
        assert_eq!(grand_rejection.0, Partition::grand(3));
        assert!(matches!(
            grand_rejection.1,
            HatCRejection::NoQualifiedAgreement { .. }
        ));

        assert_eq!(search.grand_diagnoses.len(), 1);
        let diag = &search.grand_diagnoses[0];
        assert_eq!(diag.groups, vec![vec![0, 1], vec![2]]);
        assert_eq!(diag.loads, vec![3, 3]);
        assert!(diag.covering);
        assert!(!diag.envy_free);
        assert!(diag.credible);
        assert_eq!(diag.base_weights, vec![2, 1, 0]);
    }

    #[test]
    fn grand_coalition_of_unit_weights_attains_the_optimum() {
        let game = id_weighted(vec![1, 1, 1, 1], 2);
        let search = find_hat_c_optimal_partition(&game, DEFAULT_CAP).unwrap();
        assert_eq!(search.t_star, 2);
        let found = search.found.expect("grand coalition splits evenly");
        assert_eq!(found.partition, Partition::grand(4));
        assert_eq!(found.support, BTreeSet::from([vec![2, 2]]));
        assert!(search.rejections.is_empty());
    }

    #[test]
    fn heavier_variant_needs_a_finer_partition() {
        // t* = 6 via the (6,6) split; the grand coalition has no qualified
        // agreement, but pairing the fours and the twos pins play to (6,6)
        let game = id_weighted(vec![4, 4, 2, 2], 2);
        let search = find_hat_c_optimal_partition(&game, DEFAULT_CAP).unwrap();
        assert_eq!(search.t_star, 6);
        let found = search.found.expect("a finer partition works");
        assert_eq!(
            found.partition,
            Partition::new(vec![vec![0, 1], vec![2, 3]], 4).unwrap()
        );
        assert_eq!(found.support, BTreeSet::from([vec![6, 6]]));
        assert_eq!(search.rejections.len(), 3);
    }

    #[test]
    fn zero_weight_rejected() {
        assert_eq!(
            WeightedGame::new(vec![1, 0], 2, CostFunction::identity(2)),
            Err(WeightedError::ZeroWeight { player: 1 })
        );
    }
}
