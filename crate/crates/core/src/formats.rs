//! Typed JSON schemas for the external interfaces: game and weighted-game
//! descriptions on the way in, equilibrium reports on the way out.
//!
//! Rationals travel as strings ("3/2", or "3" when integral) so no precision
//! is lost. The structs only carry serde derives; actual JSON text handling
//! lives with the caller.

use crate::cost::{CostError, CostFunction, CostKind};
use crate::equilibrium::TheoremReport;
use crate::game::{Game, GameError};
use crate::partition::{Partition, PartitionError};
use crate::rational::{format_rat, parse_rat, Rat, RatParseError};
use crate::weighted::{WeightedError, WeightedGame};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("bad rational in {field}: {source}")]
    Rat {
        field: &'static str,
        source: RatParseError,
    },
    #[error(transparent)]
    Cost(#[from] CostError),
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Weighted(#[from] WeightedError),
}

fn field_rat(field: &'static str, s: &str) -> Result<Rat, FormatError> {
    parse_rat(s).map_err(|source| FormatError::Rat { field, source })
}

/// Cost function description as it appears in input JSON.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum CostSpec {
    Linear {
        #[serde(default = "one")]
        a: String,
        #[serde(default = "zero")]
        b: String,
    },
    Poly {
        coeffs: Vec<String>,
    },
    Exp {
        base: String,
        #[serde(default = "one")]
        scale: String,
    },
    Table {
        values: Vec<String>,
    },
}

fn one() -> String {
    "1".to_string()
}

fn zero() -> String {
    "0".to_string()
}

impl CostSpec {
    pub fn to_kind(&self) -> Result<CostKind, FormatError> {
        Ok(match self {
            CostSpec::Linear { a, b } => CostKind::Linear {
                a: field_rat("a", a)?,
                b: field_rat("b", b)?,
            },
            CostSpec::Poly { coeffs } => CostKind::Poly {
                coeffs: coeffs
                    .iter()
                    .map(|c| field_rat("coeffs", c))
                    .collect::<Result<_, _>>()?,
            },
            CostSpec::Exp { base, scale } => CostKind::Exp {
                base: field_rat("base", base)?,
                scale: field_rat("scale", scale)?,
            },
            CostSpec::Table { values } => CostKind::Table {
                values: values
                    .iter()
                    .map(|v| field_rat("values", v))
                    .collect::<Result<_, _>>()?,
            },
        })
    }

    pub fn from_kind(kind: &CostKind) -> CostSpec {
        match kind {
            CostKind::Linear { a, b } => CostSpec::Linear {
                a: format_rat(a),
                b: format_rat(b),
            },
            CostKind::Poly { coeffs } => CostSpec::Poly {
                coeffs: coeffs.iter().map(format_rat).collect(),
            },
            CostKind::Exp { base, scale } => CostSpec::Exp {
                base: format_rat(base),
                scale: format_rat(scale),
            },
            CostKind::Table { values } => CostSpec::Table {
                values: values.iter().map(format_rat).collect(),
            },
        }
    }

    pub fn build(&self, max_load: usize) -> Result<CostFunction, FormatError> {
        Ok(CostFunction::new(self.to_kind()?, max_load.max(2))?)
    }
}

/// Input schema for an unweighted game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GameSpec {
    pub n: usize,
    pub m: usize,
    pub cost: CostSpec,
}

impl GameSpec {
    pub fn to_game(&self) -> Result<Game, FormatError> {
        let cost = self.cost.build(self.n)?;
        Ok(Game::new(self.n, self.m, cost)?)
    }

    pub fn from_game(game: &Game) -> GameSpec {
        GameSpec {
            n: game.n(),
            m: game.m(),
            cost: CostSpec::from_kind(game.cost().kind()),
        }
    }
}

/// Input schema for a weighted game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedSpec {
    pub weights: Vec<u64>,
    pub m: usize,
    pub cost: CostSpec,
}

impl WeightedSpec {
    pub fn to_game(&self) -> Result<WeightedGame, FormatError> {
        let total: u64 = self.weights.iter().sum();
        let cost = self.cost.build(total as usize)?;
        Ok(WeightedGame::new(self.weights.clone(), self.m, cost)?)
    }
}

/// A partition travels as a list of coalitions, players 0-based.
pub fn partition_from_lists(lists: Vec<Vec<usize>>, n: usize) -> Result<Partition, FormatError> {
    Ok(Partition::new(lists, n)?)
}

pub fn partition_to_lists(partition: &Partition) -> Vec<Vec<usize>> {
    partition.coalitions().to_vec()
}

/// One partition row of the equilibrium report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRowJson {
    pub sizes: Vec<usize>,
    pub balanced: bool,
    pub equilibrium_exists: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bar_c_optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hat_c_optimal: Option<bool>,
    pub support_size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_support_total_cost: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_support_total_cost: Option<String>,
}

/// Equilibrium report over every coalition-size multiset of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub n: usize,
    pub m: usize,
    pub optimal_total_cost: String,
    pub optimal_max_cost: String,
    pub theorem_holds: bool,
    pub partitions: Vec<PartitionRowJson>,
}

impl ReportJson {
    pub fn from_report(report: &TheoremReport, game: &Game) -> ReportJson {
        let opt = game.optimal_costs();
        ReportJson {
            n: report.n,
            m: report.m,
            optimal_total_cost: format_rat(&opt.total),
            optimal_max_cost: format_rat(&opt.max),
            theorem_holds: report.holds,
            partitions: report
                .rows
                .iter()
                .map(|row| PartitionRowJson {
                    sizes: row.sizes.clone(),
                    balanced: row.balanced,
                    equilibrium_exists: row.exists,
                    bar_c_optimal: row.bar_c_optimal,
                    hat_c_optimal: row.hat_c_optimal,
                    support_size: row.support_size,
                    min_support_total_cost: row.min_support_total.as_ref().map(format_rat),
                    max_support_total_cost: row.max_support_total.as_ref().map(format_rat),
                })
                .collect(),
        }
    }
}
