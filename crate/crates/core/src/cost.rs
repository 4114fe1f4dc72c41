//! Resource cost functions: strictly increasing, weakly convex maps from a
//! load count to an exact rational cost.
//!
//! A cost function is always materialized as a value table on `1..=max_load`
//! and validated eagerly, so the rest of the crate can assume the invariants
//! hold. Convexity is checked through second differences.

use crate::rational::{rat_one, rat_zero, Rat};
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Symbolic description of a cost function; evaluated into a table by
/// [`CostFunction::new`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostKind {
    /// `f(k) = a·k + b`
    Linear { a: Rat, b: Rat },
    /// `f(k) = Σ coeffs[j]·k^j`
    Poly { coeffs: Vec<Rat> },
    /// `f(k) = scale·base^k`
    Exp { base: Rat, scale: Rat },
    /// Explicit values `f(1), f(2), ...`
    Table { values: Vec<Rat> },
}

/// Which invariant a table failed, and where.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CostError {
    #[error("cost table is empty")]
    EmptyTable,
    #[error("max_load must be at least 2, got {0}")]
    MaxLoadTooSmall(usize),
    #[error("cost function must cover loads up to {required}, table has {actual}")]
    TooShort { required: usize, actual: usize },
    #[error("not strictly increasing at k={k}: f({})={next} <= f({k})={value}", k + 1)]
    NotIncreasing { k: usize, value: String, next: String },
    #[error("not weakly convex at k={k}: f({k}) + f({}) < 2·f({})", k + 2, k + 1)]
    NotConvex { k: usize },
    #[error("mixture probabilities sum to {sum}, expected 1")]
    BadMixtureWeights { sum: String },
    #[error("mixture probability {p} is negative")]
    NegativeMixtureWeight { p: String },
    #[error("mixture has no components")]
    EmptyMixture,
}

/// Checks strict monotonicity then weak convexity on a table of values for
/// loads `1..=len`. Reports the first violating index of the first violated
/// invariant.
pub fn validate_table(values: &[Rat]) -> Result<(), CostError> {
    if values.is_empty() {
        return Err(CostError::EmptyTable);
    }
    for k in 0..values.len().saturating_sub(1) {
        if values[k + 1] <= values[k] {
            return Err(CostError::NotIncreasing {
                k: k + 1,
                value: values[k].to_string(),
                next: values[k + 1].to_string(),
            });
        }
    }
    for k in 0..values.len().saturating_sub(2) {
        // second difference f(k+2) + f(k) - 2 f(k+1) must be >= 0
        let second = &values[k + 2] + &values[k] - &values[k + 1] - &values[k + 1];
        if second.is_negative() {
            return Err(CostError::NotConvex { k: k + 1 });
        }
    }
    Ok(())
}

/// A validated cost function on loads `1..=max_load`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFunction {
    kind: CostKind,
    values: Vec<Rat>,
}

impl CostFunction {
    /// Evaluates `kind` on `1..=max_load` and validates the result.
    /// Requires `max_load >= 2` so monotonicity is actually testable.
    pub fn new(kind: CostKind, max_load: usize) -> Result<Self, CostError> {
        if max_load < 2 {
            return Err(CostError::MaxLoadTooSmall(max_load));
        }
        let values = match &kind {
            CostKind::Linear { a, b } => (1..=max_load)
                .map(|k| a * Rat::from_integer(k.into()) + b)
                .collect(),
            CostKind::Poly { coeffs } => (1..=max_load)
                .map(|k| {
                    let x = Rat::from_integer(k.into());
                    coeffs
                        .iter()
                        .rev()
                        .fold(rat_zero(), |acc, c| acc * &x + c)
                })
                .collect(),
            CostKind::Exp { base, scale } => {
                let mut values = Vec::with_capacity(max_load);
                let mut pow = base.clone();
                for _ in 1..=max_load {
                    values.push(scale * &pow);
                    pow *= base;
                }
                values
            }
            CostKind::Table { values } => {
                if values.len() < max_load {
                    return Err(CostError::TooShort {
                        required: max_load,
                        actual: values.len(),
                    });
                }
                values[..max_load].to_vec()
            }
        };
        validate_table(&values)?;
        Ok(CostFunction { kind, values })
    }

    /// An explicit table, validated as-is.
    pub fn from_table(values: Vec<Rat>) -> Result<Self, CostError> {
        if values.is_empty() {
            return Err(CostError::EmptyTable);
        }
        let len = values.len();
        Self::new(CostKind::Table { values }, len)
    }

    /// `f(k) = k`.
    pub fn identity(max_load: usize) -> Self {
        Self::new(
            CostKind::Linear {
                a: rat_one(),
                b: rat_zero(),
            },
            max_load,
        )
        .expect("identity is increasing and convex")
    }

    /// `f(k) = k^2`.
    pub fn square(max_load: usize) -> Self {
        Self::new(
            CostKind::Poly {
                coeffs: vec![rat_zero(), rat_zero(), rat_one()],
            },
            max_load,
        )
        .expect("square is increasing and convex")
    }

    /// `f(k) = 2^k`.
    pub fn pow2(max_load: usize) -> Self {
        Self::new(
            CostKind::Exp {
                base: Rat::from_integer(2.into()),
                scale: rat_one(),
            },
            max_load,
        )
        .expect("2^k is increasing and convex")
    }

    pub fn kind(&self) -> &CostKind {
        &self.kind
    }

    /// Largest load the function covers.
    pub fn max_load(&self) -> usize {
        self.values.len()
    }

    /// `f(k)` for `1 <= k <= max_load`. Panics outside that range; load 0
    /// never carries a cost anywhere in the model.
    pub fn value(&self, k: usize) -> &Rat {
        assert!(
            k >= 1 && k <= self.values.len(),
            "cost function defined on 1..={}, asked for {k}",
            self.values.len()
        );
        &self.values[k - 1]
    }

    pub fn get(&self, k: usize) -> Option<&Rat> {
        if k >= 1 {
            self.values.get(k - 1)
        } else {
            None
        }
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Convex combination `g(k) = Σ p_j · f_j(k)` of cost functions, returned
    /// as a table on the smallest common `max_load`. The probabilities must be
    /// nonnegative and sum to exactly 1; the result is validated like any
    /// other cost function (it always passes when the inputs are valid).
    pub fn mixture(components: &[(Rat, CostFunction)]) -> Result<CostFunction, CostError> {
        if components.is_empty() {
            return Err(CostError::EmptyMixture);
        }
        for (p, _) in components {
            if p.is_negative() {
                return Err(CostError::NegativeMixtureWeight { p: p.to_string() });
            }
        }
        let total: Rat = components.iter().map(|(p, _)| p.clone()).sum();
        if total != rat_one() {
            return Err(CostError::BadMixtureWeights {
                sum: total.to_string(),
            });
        }
        let max_load = components
            .iter()
            .map(|(_, f)| f.max_load())
            .min()
            .expect("nonempty");
        let values: Vec<Rat> = (1..=max_load)
            .map(|k| {
                components
                    .iter()
                    .map(|(p, f)| p * f.value(k))
                    .fold(rat_zero(), |acc, v| acc + v)
            })
            .collect();
        validate_table(&values)?;
        Ok(CostFunction {
            kind: CostKind::Table {
                values: values.clone(),
            },
            values,
        })
    }
}

/// Names for the three cost functions every theorem sweep runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardCost {
    Linear,
    Square,
    Pow2,
}

impl StandardCost {
    pub const ALL: [StandardCost; 3] = [
        StandardCost::Linear,
        StandardCost::Square,
        StandardCost::Pow2,
    ];

    pub fn build(self, max_load: usize) -> CostFunction {
        match self {
            StandardCost::Linear => CostFunction::identity(max_load),
            StandardCost::Square => CostFunction::square(max_load),
            StandardCost::Pow2 => CostFunction::pow2(max_load),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StandardCost::Linear => "linear",
            StandardCost::Square => "square",
            StandardCost::Pow2 => "pow2",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    #[test]
    fn identity_is_valid() {
        let f = CostFunction::identity(10);
        assert_eq!(f.max_load(), 10);
        assert_eq!(*f.value(7), rat_int(7));
    }

    #[test]
    fn table_1_2_4_8_is_valid() {
        // second differences: 4+1-2·2=1, 8+2-2·4=2, both nonnegative;
        // first differences 1,2,4 increasing
        let f =
            CostFunction::from_table(vec![rat_int(1), rat_int(2), rat_int(4), rat_int(8)]).unwrap();
        assert_eq!(*f.value(4), rat_int(8));
    }

    #[test]
    fn convexity_violation_reported_at_first_index() {
        // 4 + 1 = 5 < 6 = 2·3
        let err = CostFunction::from_table(vec![rat_int(1), rat_int(3), rat_int(4)]).unwrap_err();
        assert_eq!(err, CostError::NotConvex { k: 1 });
    }

    #[test]
    fn monotonicity_violation_reported_before_convexity() {
        let err = CostFunction::from_table(vec![rat_int(2), rat_int(2), rat_int(3)]).unwrap_err();
        assert!(matches!(err, CostError::NotIncreasing { k: 1, .. }));
    }

    #[test]
    fn empty_table_rejected() {
        assert_eq!(
            CostFunction::from_table(vec![]).unwrap_err(),
            CostError::EmptyTable
        );
    }

    #[test]
    fn square_and_pow2_tables() {
        let sq = CostFunction::square(5);
        assert_eq!(*sq.value(5), rat_int(25));
        let e = CostFunction::pow2(8);
        assert_eq!(*e.value(8), rat_int(256));
    }

    #[test]
    fn mixture_of_linear_slopes() {
        // ½·k + ½·(11k/10) = 21k/20
        let f = CostFunction::identity(6);
        let g = CostFunction::new(
            CostKind::Linear {
                a: rat(11, 10),
                b: rat_int(0),
            },
            6,
        )
        .unwrap();
        let mix = CostFunction::mixture(&[(rat(1, 2), f), (rat(1, 2), g)]).unwrap();
        for k in 1..=6 {
            assert_eq!(*mix.value(k), rat(21 * k as i64, 20));
        }
    }

    #[test]
    fn mixture_of_tables() {
        let f = CostFunction::from_table(vec![rat_int(1), rat_int(2), rat_int(4)]).unwrap();
        let g = CostFunction::from_table(vec![rat_int(1), rat_int(3), rat_int(9)]).unwrap();
        let mix = CostFunction::mixture(&[(rat(1, 2), f), (rat(1, 2), g)]).unwrap();
        assert_eq!(mix.values(), &[rat_int(1), rat(5, 2), rat(13, 2)]);
    }

    #[test]
    fn singleton_mixture_is_the_function_itself() {
        let f = CostFunction::square(4);
        let mix = CostFunction::mixture(&[(rat_int(1), f.clone())]).unwrap();
        assert_eq!(mix.values(), f.values());
    }

    #[test]
    fn mixture_weights_must_sum_to_one() {
        let f = CostFunction::identity(4);
        let err = CostFunction::mixture(&[(rat(1, 2), f)]).unwrap_err();
        assert!(matches!(err, CostError::BadMixtureWeights { .. }));
    }
}
