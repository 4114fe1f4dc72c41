//! Symmetry-based beliefs: what a coalition expects everyone else to add to
//! each resource, and the effective cost that belief induces.
//!
//! Other coalitions are assumed to play qualified agreements with all
//! resource relabelings equally likely. Per fixed resource that collapses to
//! a tiny marginal: a coalition of size divisible by `m` always contributes
//! `size/m`, a coalition smaller than `m` contributes one member with
//! probability `size/m` and nothing otherwise. Marginals of distinct
//! coalitions are independent, so the outside count is their convolution.

use crate::agreement::EffectiveCost;
use crate::cost::CostFunction;
use crate::partition::{classify, CoalitionClass, Partition};
use crate::rational::{rat, rat_one, rat_zero, Rat};
use num_traits::Zero;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BeliefError {
    #[error("coalition of {size} over {m} resources has no qualified agreement to believe in")]
    InfeasibleCoalition { size: usize, m: usize },
    #[error("cost function covers loads up to {max_load}, beliefs need {required}")]
    CostTooShort { max_load: usize, required: usize },
    #[error("probabilities sum to {sum}, expected 1")]
    BadPmfSum { sum: Rat },
    #[error("negative probability {p} for count {count}")]
    NegativeProb { count: usize, p: Rat },
    #[error("pmf has empty support")]
    EmptyPmf,
    #[error("coalition index {idx} out of range for {count} coalitions")]
    CoalitionOutOfRange { idx: usize, count: usize },
}

/// A finitely supported distribution over player counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountPmf {
    probs: BTreeMap<usize, Rat>,
}

impl CountPmf {
    pub fn new(probs: BTreeMap<usize, Rat>) -> Result<Self, BeliefError> {
        let mut sum = rat_zero();
        for (&count, p) in &probs {
            if p < &rat_zero() {
                return Err(BeliefError::NegativeProb {
                    count,
                    p: p.clone(),
                });
            }
            sum += p;
        }
        let probs: BTreeMap<usize, Rat> =
            probs.into_iter().filter(|(_, p)| !p.is_zero()).collect();
        if probs.is_empty() {
            return Err(BeliefError::EmptyPmf);
        }
        if sum != rat_one() {
            return Err(BeliefError::BadPmfSum { sum });
        }
        Ok(CountPmf { probs })
    }

    pub fn point(count: usize) -> Self {
        CountPmf {
            probs: BTreeMap::from([(count, rat_one())]),
        }
    }

    pub fn prob(&self, count: usize) -> Rat {
        self.probs.get(&count).cloned().unwrap_or_else(rat_zero)
    }

    /// Support entries in increasing count order, zero-probability counts
    /// omitted.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Rat)> {
        self.probs.iter().map(|(&c, p)| (c, p))
    }

    pub fn max_count(&self) -> usize {
        self.probs.keys().next_back().copied().unwrap_or(0)
    }

    pub fn expectation(&self) -> Rat {
        self.probs
            .iter()
            .map(|(&c, p)| Rat::from_integer(c.into()) * p)
            .fold(rat_zero(), |acc, v| acc + v)
    }

    /// Distribution of the sum of two independent counts.
    pub fn convolve(&self, other: &CountPmf) -> CountPmf {
        let mut probs: BTreeMap<usize, Rat> = BTreeMap::new();
        for (a, pa) in &self.probs {
            for (b, pb) in &other.probs {
                let entry = probs.entry(a + b).or_insert_with(rat_zero);
                *entry += pa * pb;
            }
        }
        CountPmf { probs }
    }
}

/// How many members a single coalition is believed to put on a fixed
/// resource.
pub fn coalition_marginal(size: usize, m: usize) -> Result<CountPmf, BeliefError> {
    match classify(size, m) {
        CoalitionClass::Divisible => Ok(CountPmf::point(size / m)),
        CoalitionClass::Remainder => {
            let p_one = rat(size as i64, m as i64);
            let mut probs = BTreeMap::new();
            probs.insert(0, rat_one() - &p_one);
            probs.insert(1, p_one);
            CountPmf::new(probs)
        }
        CoalitionClass::Infeasible => Err(BeliefError::InfeasibleCoalition { size, m }),
    }
}

/// Belief about the total outside load on a fixed resource: the convolution
/// of every other coalition's marginal.
pub fn outside_count_pmf(other_sizes: &[usize], m: usize) -> Result<CountPmf, BeliefError> {
    let mut acc = CountPmf::point(0);
    for &size in other_sizes {
        acc = acc.convolve(&coalition_marginal(size, m)?);
    }
    Ok(acc)
}

/// The cost a believer expects at own-load `v`: `g(v) = Σ_u μ(u)·f(u + v)`,
/// tabulated for `v` in `1..=up_to`.
pub fn effective_cost(
    f: &CostFunction,
    mu: &CountPmf,
    up_to: usize,
) -> Result<EffectiveCost, BeliefError> {
    let required = mu.max_count() + up_to;
    if f.max_load() < required {
        return Err(BeliefError::CostTooShort {
            max_load: f.max_load(),
            required,
        });
    }
    let values: Vec<Rat> = (1..=up_to)
        .map(|v| {
            mu.support()
                .map(|(u, p)| p * f.value(u + v))
                .fold(rat_zero(), |acc, x| acc + x)
        })
        .collect();
    Ok(EffectiveCost::from_values(values)
        .expect("mixtures of shifted costs stay increasing and convex"))
}

/// What one coalition faces: its own size, the belief about outsiders, and
/// the effective cost over its feasible own-loads.
#[derive(Debug, Clone, PartialEq)]
pub struct Subgame {
    pub size: usize,
    pub m: usize,
    pub mu: CountPmf,
    pub g: EffectiveCost,
}

/// Assemble the subgame of coalition `idx` under partition-wide symmetric
/// beliefs.
pub fn subgame(
    partition: &Partition,
    idx: usize,
    m: usize,
    f: &CostFunction,
) -> Result<Subgame, BeliefError> {
    let coalitions = partition.coalitions();
    if idx >= coalitions.len() {
        return Err(BeliefError::CoalitionOutOfRange {
            idx,
            count: coalitions.len(),
        });
    }
    let size = coalitions[idx].len();
    let other_sizes: Vec<usize> = coalitions
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != idx)
        .map(|(_, c)| c.len())
        .collect();
    let mu = outside_count_pmf(&other_sizes, m)?;
    let g = effective_cost(f, &mu, size)?;
    Ok(Subgame { size, m, mu, g })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::{validate_table, StandardCost};
    use crate::rational::rat_int;

    #[test]
    fn marginals_by_class() {
        assert_eq!(coalition_marginal(3, 3).unwrap(), CountPmf::point(1));
        assert_eq!(coalition_marginal(6, 3).unwrap(), CountPmf::point(2));

        let two_of_three = coalition_marginal(2, 3).unwrap();
        assert_eq!(two_of_three.prob(0), rat(1, 3));
        assert_eq!(two_of_three.prob(1), rat(2, 3));
        assert_eq!(two_of_three.prob(2), rat_zero());

        let one_of_two = coalition_marginal(1, 2).unwrap();
        assert_eq!(one_of_two.prob(0), rat(1, 2));
        assert_eq!(one_of_two.prob(1), rat(1, 2));

        assert_eq!(
            coalition_marginal(4, 3),
            Err(BeliefError::InfeasibleCoalition { size: 4, m: 3 })
        );
    }

    #[test]
    fn convolution_of_two_fair_coins_is_binomial() {
        let coin = coalition_marginal(1, 2).unwrap();
        let sum = coin.convolve(&coin);
        assert_eq!(sum.prob(0), rat(1, 4));
        assert_eq!(sum.prob(1), rat(1, 2));
        assert_eq!(sum.prob(2), rat(1, 4));
        assert_eq!(sum.expectation(), rat_int(1));
    }

    #[test]
    fn outside_count_for_three_two_two() {
        // seen from one of the pairs: a divisible 3 plus the other pair
        let mu = outside_count_pmf(&[3, 2], 3).unwrap();
        assert_eq!(mu.prob(1), rat(1, 3));
        assert_eq!(mu.prob(2), rat(2, 3));
        assert_eq!(mu.expectation(), rat(5, 3));
    }

    #[test]
    fn effective_cost_shifts_by_the_belief() {
        let f = StandardCost::Linear.build(6);
        let mu = outside_count_pmf(&[3, 2], 3).unwrap();
        let g = effective_cost(&f, &mu, 2).unwrap();
        assert_eq!(*g.value(1), rat(8, 3));
        assert_eq!(*g.value(2), rat(11, 3));

        // a point belief just translates the cost
        let g = effective_cost(&StandardCost::Square.build(6), &CountPmf::point(2), 3).unwrap();
        assert_eq!(*g.value(1), rat_int(9));
        assert_eq!(*g.value(2), rat_int(16));
        assert_eq!(*g.value(3), rat_int(25));
        assert!(validate_table(g.values()).is_ok());
    }

    #[test]
    fn empty_outside_means_raw_cost() {
        let f = StandardCost::Pow2.build(4);
        let g = effective_cost(&f, &CountPmf::point(0), 4).unwrap();
        assert_eq!(g.values(), f.values());
    }

    #[test]
    fn effective_cost_needs_enough_domain() {
        let f = StandardCost::Linear.build(3);
        assert_eq!(
            effective_cost(&f, &CountPmf::point(2), 2),
            Err(BeliefError::CostTooShort {
                max_load: 3,
                required: 4
            })
        );
    }

    #[test]
    fn subgame_of_a_pair_in_three_two_two() {
        let p = Partition::from_sizes(&[3, 2, 2]).unwrap();
        let f = StandardCost::Linear.build(7);
        let sub = subgame(&p, 1, 3, &f).unwrap();
        assert_eq!(sub.size, 2);
        assert_eq!(*sub.g.value(1), rat(8, 3));
        assert_eq!(*sub.g.value(2), rat(11, 3));

        let sub0 = subgame(&p, 0, 3, &f).unwrap();
        assert_eq!(sub0.size, 3);
        assert_eq!(*sub0.g.value(1), rat(7, 3));
        assert_eq!(*sub0.g.value(3), rat(13, 3));
    }

    #[test]
    fn subgame_of_singleton_next_to_six() {
        let p = Partition::from_sizes(&[6, 1]).unwrap();
        let f = StandardCost::Linear.build(7);
        let sub = subgame(&p, 1, 3, &f).unwrap();
        assert_eq!(sub.mu, CountPmf::point(2));
        assert_eq!(*sub.g.value(1), rat_int(3));
    }

    #[test]
    fn grand_coalition_believes_nothing_outside() {
        let p = Partition::grand(4);
        let f = StandardCost::Square.build(4);
        let sub = subgame(&p, 0, 2, &f).unwrap();
        assert_eq!(sub.g.values(), f.values());
    }

    #[test]
    fn pmf_validation() {
        let mut probs = BTreeMap::new();
        probs.insert(0, rat(1, 2));
        probs.insert(1, rat(1, 3));
        assert!(matches!(
            CountPmf::new(probs),
            Err(BeliefError::BadPmfSum { .. })
        ));

        let mut probs = BTreeMap::new();
        probs.insert(0, rat(3, 2));
        probs.insert(1, rat(-1, 2));
        assert!(matches!(
            CountPmf::new(probs),
            Err(BeliefError::NegativeProb { count: 1, .. })
        ));

        assert_eq!(CountPmf::new(BTreeMap::new()), Err(BeliefError::EmptyPmf));
    }

    #[test]
    fn effective_costs_keep_shape_invariants() {
        let mu = outside_count_pmf(&[2, 1, 3], 3).unwrap();
        for kind in StandardCost::ALL {
            let f = kind.build(10);
            let g = effective_cost(&f, &mu, 5).unwrap();
            assert!(validate_table(g.values()).is_ok(), "{}", kind.name());
        }
    }
}
