//! Singleton congestion games with communication partitions.
//!
//! Players split into coalitions that coordinate internally; coalitions hold
//! symmetry-based beliefs about everyone else. This crate models the games,
//! the agreements coalitions can reach, the beliefs and effective costs they
//! induce, the resulting partition equilibria, and a weighted-player
//! extension connected to multiway number partitioning.

pub mod agreement;
pub mod belief;
pub mod cost;
pub mod equilibrium;
pub mod formats;
pub mod game;
pub mod partition;
pub mod rational;
pub mod weighted;

pub use agreement::{
    enumerate_qualified_agreements, pareto_oracle, qualified_canonical_loads, Agreement,
    AgreementError, CapExceeded, EffectiveCost, DEFAULT_CAP,
};
pub use belief::{
    coalition_marginal, effective_cost, outside_count_pmf, subgame, BeliefError, CountPmf, Subgame,
};
pub use equilibrium::{
    brute_force_profile_oracle, coalition_behaviour, induce, partition_report, verify_theorem_1,
    CoalitionBehaviour, Induced, InducedProfile, OracleGranularity, PartitionReport, TheoremReport,
};
pub use formats::{
    partition_from_lists, partition_to_lists, CostSpec, FormatError, GameSpec, PartitionRowJson,
    ReportJson, WeightedSpec,
};
pub use cost::{CostError, CostFunction, CostKind, StandardCost};
pub use game::{loads, Game, GameError, LoadVector, OptimalCosts, Outcome};
pub use partition::{
    classify, enumerate_partitions_by_sizes, integer_partitions, make_balanced_partition,
    set_partitions, CoalitionClass, Partition, PartitionError,
};
pub use rational::{format_rat, parse_rat, Rat, RatParseError};
pub use weighted::{
    enumerate_load_multisets, enumerate_weighted_qualified, find_hat_c_optimal_partition,
    mnp_solve, structure_load_support, weighted_c_bar_equivalence_check,
    weighted_qualified_conditions, CbarEquivalence, HatCFound, HatCRejection, HatCSearch,
    MinimaxDiagnosis, MnpObjective, MnpSolution, WeightedAgreement, WeightedError, WeightedGame,
    WeightedStructure,
};
