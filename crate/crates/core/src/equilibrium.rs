//! Induced partition equilibria: the distribution over load vectors that
//! arises when every coalition plays a qualified agreement and holds
//! symmetric beliefs about everyone else.
//!
//! [`induce`] uses the structural classification (even spread for divisible
//! coalitions, scattered singletons for small ones, failure otherwise).
//! [`brute_force_profile_oracle`] rebuilds the same distribution from raw
//! agreement enumeration and literal qualification checks so the two routes
//! can be compared.

use crate::agreement::{enumerate_qualified_agreements, Agreement, CapExceeded, EffectiveCost};
use crate::belief::{effective_cost, CountPmf};
use crate::game::{saturating_pow, Game, LoadVector};
use crate::partition::{classify, CoalitionClass, Partition};
use crate::rational::{rat, rat_one, rat_zero, Rat};
use itertools::Itertools;
use std::collections::BTreeMap;

/// What a single coalition contributes to the joint profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoalitionBehaviour {
    /// Every resource carries `per_resource` members, with certainty.
    Even { per_resource: usize },
    /// `size` members occupy `size` of the `m` resources exclusively, every
    /// resource subset equally likely.
    Scattered { size: usize },
}

impl CoalitionBehaviour {
    /// Distribution over this coalition's own load vectors.
    pub fn load_distribution(&self, m: usize) -> Vec<(LoadVector, Rat)> {
        match self {
            CoalitionBehaviour::Even { per_resource } => {
                vec![(LoadVector::new(vec![*per_resource; m]), rat_one())]
            }
            CoalitionBehaviour::Scattered { size } => {
                let subsets: Vec<Vec<usize>> = (0..m).combinations(*size).collect();
                let p = rat(1, subsets.len() as i64);
                subsets
                    .into_iter()
                    .map(|subset| {
                        let mut counts = vec![0usize; m];
                        for r in subset {
                            counts[r] = 1;
                        }
                        (LoadVector::new(counts), p.clone())
                    })
                    .collect()
            }
        }
    }
}

/// The behaviour a coalition's class dictates, if any.
pub fn coalition_behaviour(size: usize, m: usize) -> Option<CoalitionBehaviour> {
    match classify(size, m) {
        CoalitionClass::Divisible => Some(CoalitionBehaviour::Even {
            per_resource: size / m,
        }),
        CoalitionClass::Remainder => Some(CoalitionBehaviour::Scattered { size }),
        CoalitionClass::Infeasible => None,
    }
}

/// A distribution over joint load vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedProfile {
    n: usize,
    m: usize,
    support: BTreeMap<LoadVector, Rat>,
}

impl InducedProfile {
    fn from_parts(n: usize, m: usize, parts: Vec<Vec<(LoadVector, Rat)>>) -> Self {
        let mut support: BTreeMap<LoadVector, Rat> = BTreeMap::new();
        support.insert(LoadVector::new(vec![0; m]), rat_one());
        for part in parts {
            let mut next: BTreeMap<LoadVector, Rat> = BTreeMap::new();
            for (acc_lv, acc_p) in &support {
                for (lv, p) in &part {
                    let entry = next
                        .entry(acc_lv.add(lv))
                        .or_insert_with(rat_zero);
                    *entry += acc_p * p;
                }
            }
            support = next;
        }
        InducedProfile { n, m, support }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn support(&self) -> impl Iterator<Item = (&LoadVector, &Rat)> {
        self.support.iter()
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn probability(&self, lv: &LoadVector) -> Rat {
        self.support.get(lv).cloned().unwrap_or_else(rat_zero)
    }

    /// Total probability of all support vectors that sort to the same
    /// multiset as `class`.
    pub fn class_probability(&self, class: &LoadVector) -> Rat {
        let target = class.sorted_desc();
        self.support
            .iter()
            .filter(|(lv, _)| lv.sorted_desc() == target)
            .map(|(_, p)| p)
            .fold(rat_zero(), |acc, p| acc + p)
    }

    pub fn expected_total_cost(&self, game: &Game) -> Rat {
        self.check_game(game);
        self.support
            .iter()
            .map(|(lv, p)| p * game.total_cost_of_loads(lv))
            .fold(rat_zero(), |acc, v| acc + v)
    }

    pub fn expected_max_cost(&self, game: &Game) -> Rat {
        self.check_game(game);
        self.support
            .iter()
            .map(|(lv, p)| p * game.max_cost_of_loads(lv))
            .fold(rat_zero(), |acc, v| acc + v)
    }

    /// Every support vector attains the minimal total cost.
    pub fn is_bar_c_optimal(&self, game: &Game) -> bool {
        self.check_game(game);
        let opt = game.optimal_costs().total;
        self.support
            .keys()
            .all(|lv| game.total_cost_of_loads(lv) == opt)
    }

    /// Every support vector attains the minimal max cost.
    pub fn is_hat_c_optimal(&self, game: &Game) -> bool {
        self.check_game(game);
        let opt = game.optimal_costs().max;
        self.support
            .keys()
            .all(|lv| game.max_cost_of_loads(lv) == opt)
    }

    fn check_game(&self, game: &Game) {
        assert_eq!(game.n(), self.n, "profile built for a different n");
        assert_eq!(game.m(), self.m, "profile built for a different m");
    }
}

/// Result of inducing a profile from a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Induced {
    Equilibrium(InducedProfile),
    /// Some coalition has no qualified agreement; its members are reported.
    NoEquilibrium { coalition: Vec<usize> },
}

impl Induced {
    pub fn profile(&self) -> Option<&InducedProfile> {
        match self {
            Induced::Equilibrium(p) => Some(p),
            Induced::NoEquilibrium { .. } => None,
        }
    }
}

/// Structural route: classify each coalition and compose the dictated
/// behaviours.
pub fn induce(partition: &Partition, m: usize) -> Induced {
    let mut parts = Vec::with_capacity(partition.coalitions().len());
    for coalition in partition.coalitions() {
        match coalition_behaviour(coalition.len(), m) {
            Some(b) => parts.push(b.load_distribution(m)),
            None => {
                return Induced::NoEquilibrium {
                    coalition: coalition.clone(),
                }
            }
        }
    }
    Induced::Equilibrium(InducedProfile::from_parts(partition.n(), m, parts))
}

/// How the oracle assembles the joint distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleGranularity {
    /// Collapse each coalition to its load-vector distribution first.
    Loads,
    /// Multiply out full joint action profiles, then collapse.
    Outcomes,
}

/// Literal route: enumerate every coalition's agreements, keep the qualified
/// ones under beliefs derived from the other coalitions' qualified sets, and
/// compose the uniform distributions over them.
///
/// Requires `m^n <= cap`. When several coalitions lack qualified agreements
/// the blame may fall on a different one than [`induce`] picks, so compare
/// results by variant rather than by the reported coalition.
pub fn brute_force_profile_oracle(
    partition: &Partition,
    game: &Game,
    granularity: OracleGranularity,
    cap: usize,
) -> Result<Induced, CapExceeded> {
    let m = game.m();
    let f = game.cost();
    let needed = saturating_pow(m, partition.n());
    if needed > cap {
        return Err(CapExceeded { needed, cap });
    }

    // first pass: each coalition's qualified set under the raw cost, giving
    // its literal per-resource marginal
    let coalitions = partition.coalitions();
    let mut first_pass: Vec<Vec<Agreement>> = Vec::with_capacity(coalitions.len());
    for coalition in coalitions {
        let g = EffectiveCost::from_cost(f);
        let qualified = enumerate_qualified_agreements(coalition.len(), m, &g, cap)?;
        if qualified.is_empty() {
            return Ok(Induced::NoEquilibrium {
                coalition: coalition.clone(),
            });
        }
        first_pass.push(qualified);
    }

    let marginals: Vec<CountPmf> = first_pass
        .iter()
        .map(|qualified| literal_marginal(qualified, m))
        .collect();

    // second pass: re-qualify each coalition under the effective cost its
    // beliefs induce
    let mut per_coalition: Vec<Vec<Agreement>> = Vec::with_capacity(coalitions.len());
    for (idx, coalition) in coalitions.iter().enumerate() {
        let mut mu = CountPmf::point(0);
        for (jdx, marginal) in marginals.iter().enumerate() {
            if jdx != idx {
                mu = mu.convolve(marginal);
            }
        }
        let g = effective_cost(f, &mu, coalition.len())
            .expect("game cost covers every belief-shifted load");
        let qualified = enumerate_qualified_agreements(coalition.len(), m, &g, cap)?;
        if qualified.is_empty() {
            return Ok(Induced::NoEquilibrium {
                coalition: coalition.clone(),
            });
        }
        per_coalition.push(qualified);
    }

    let profile = match granularity {
        OracleGranularity::Loads => {
            let parts: Vec<Vec<(LoadVector, Rat)>> = per_coalition
                .iter()
                .map(|qualified| uniform_load_distribution(qualified, m))
                .collect();
            InducedProfile::from_parts(partition.n(), m, parts)
        }
        OracleGranularity::Outcomes => {
            let n = partition.n();
            let mut outcomes: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
            outcomes.insert(vec![usize::MAX; n], rat_one());
            for (coalition, qualified) in coalitions.iter().zip(&per_coalition) {
                let p = rat(1, qualified.len() as i64);
                let mut next: BTreeMap<Vec<usize>, Rat> = BTreeMap::new();
                for (actions, acc_p) in &outcomes {
                    for agreement in qualified {
                        let mut extended = actions.clone();
                        for (&member, &action) in coalition.iter().zip(agreement.actions()) {
                            extended[member] = action;
                        }
                        let entry = next.entry(extended).or_insert_with(rat_zero);
                        *entry += acc_p * &p;
                    }
                }
                outcomes = next;
            }
            let mut support: BTreeMap<LoadVector, Rat> = BTreeMap::new();
            for (actions, p) in outcomes {
                let mut counts = vec![0usize; m];
                for a in actions {
                    counts[a] += 1;
                }
                let entry = support
                    .entry(LoadVector::new(counts))
                    .or_insert_with(rat_zero);
                *entry += p;
            }
            InducedProfile {
                n,
                m,
                support,
            }
        }
    };
    Ok(Induced::Equilibrium(profile))
}

/// Distribution of a coalition's load on resource 0 under a uniform pick
/// from its qualified agreements.
fn literal_marginal(qualified: &[Agreement], m: usize) -> CountPmf {
    let p = rat(1, qualified.len() as i64);
    let mut probs: BTreeMap<usize, Rat> = BTreeMap::new();
    for agreement in qualified {
        let count = agreement.coalition_loads(m).counts()[0];
        let entry = probs.entry(count).or_insert_with(rat_zero);
        *entry += &p;
    }
    CountPmf::new(probs).expect("uniform weights sum to one")
}

fn uniform_load_distribution(qualified: &[Agreement], m: usize) -> Vec<(LoadVector, Rat)> {
    let p = rat(1, qualified.len() as i64);
    let mut acc: BTreeMap<LoadVector, Rat> = BTreeMap::new();
    for agreement in qualified {
        let entry = acc
            .entry(agreement.coalition_loads(m))
            .or_insert_with(rat_zero);
        *entry += &p;
    }
    acc.into_iter().collect()
}

/// One row of the partition sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionReport {
    pub sizes: Vec<usize>,
    pub balanced: bool,
    pub exists: bool,
    pub bar_c_optimal: Option<bool>,
    pub hat_c_optimal: Option<bool>,
    pub support_size: usize,
    pub min_support_total: Option<Rat>,
    pub max_support_total: Option<Rat>,
}

/// Every coalition-size multiset of `n` players checked against the
/// balancedness criterion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TheoremReport {
    pub n: usize,
    pub m: usize,
    pub rows: Vec<PartitionReport>,
    /// Equilibrium existence plus total-cost optimality hold exactly for the
    /// balanced partitions, and balanced partitions are also max-cost
    /// optimal.
    pub holds: bool,
}

pub fn partition_report(partition: &Partition, game: &Game) -> PartitionReport {
    let m = game.m();
    let balanced = partition.is_balanced(m);
    match induce(partition, m) {
        Induced::NoEquilibrium { .. } => PartitionReport {
            sizes: partition.sizes(),
            balanced,
            exists: false,
            bar_c_optimal: None,
            hat_c_optimal: None,
            support_size: 0,
            min_support_total: None,
            max_support_total: None,
        },
        Induced::Equilibrium(profile) => {
            let totals: Vec<Rat> = profile
                .support()
                .map(|(lv, _)| game.total_cost_of_loads(lv))
                .collect();
            PartitionReport {
                sizes: partition.sizes(),
                balanced,
                exists: true,
                bar_c_optimal: Some(profile.is_bar_c_optimal(game)),
                hat_c_optimal: Some(profile.is_hat_c_optimal(game)),
                support_size: profile.support_size(),
                min_support_total: totals.iter().min().cloned(),
                max_support_total: totals.iter().max().cloned(),
            }
        }
    }
}

pub fn verify_theorem_1(game: &Game) -> TheoremReport {
    let rows: Vec<PartitionReport> = crate::partition::enumerate_partitions_by_sizes(game.n())
        .iter()
        .map(|p| partition_report(p, game))
        .collect();
    let holds = rows.iter().all(|row| {
        let eq_and_optimal = row.exists && row.bar_c_optimal == Some(true);
        eq_and_optimal == row.balanced && (!row.balanced || row.hat_c_optimal == Some(true))
    });
    TheoremReport {
        n: game.n(),
        m: game.m(),
        rows,
        holds,
    }
}
