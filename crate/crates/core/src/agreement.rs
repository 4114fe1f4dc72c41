//! Coalition agreements and the predicates a qualified agreement must pass:
//! covering, envy-freeness, credibility, and Pareto optimality.
//!
//! Predicates are evaluated under an effective cost `g`, which is either the
//! raw resource cost or a belief-weighted version of it. Pareto optimality
//! has a closed form (it coincides with the covering property whenever `g`
//! is strictly increasing and weakly convex); the literal
//! dominance check is kept as [`pareto_oracle`] so the closed form can be
//! audited against it.

use crate::cost::{validate_table, CostError, CostFunction};
use crate::game::{index_tuples, saturating_pow, LoadVector};
use crate::rational::Rat;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AgreementError {
    #[error("agreement has {members} members but {actions} actions")]
    LengthMismatch { members: usize, actions: usize },
    #[error("member list must be strictly increasing")]
    UnsortedMembers,
    #[error("action {action} out of range for {m} resources")]
    ActionOutOfRange { action: usize, m: usize },
    #[error("effective cost covers loads up to {max_load}, need {required}")]
    EffectiveCostTooShort { max_load: usize, required: usize },
}

/// Enumeration would exceed the configured work cap.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("enumeration needs {needed} states, cap is {cap}")]
pub struct CapExceeded {
    pub needed: usize,
    pub cap: usize,
}

/// Default enumeration cap: 3^8 joint actions.
pub const DEFAULT_CAP: usize = 6561;

/// An effective cost table `g(1), g(2), ...` with the same shape invariants
/// as a resource cost (strictly increasing, weakly convex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectiveCost {
    values: Vec<Rat>,
}

impl EffectiveCost {
    pub fn from_values(values: Vec<Rat>) -> Result<Self, CostError> {
        if values.is_empty() {
            return Err(CostError::EmptyTable);
        }
        validate_table(&values)?;
        Ok(EffectiveCost { values })
    }

    /// Use a resource cost directly as the effective cost.
    pub fn from_cost(f: &CostFunction) -> Self {
        EffectiveCost {
            values: f.values().to_vec(),
        }
    }

    pub fn value(&self, k: usize) -> &Rat {
        assert!(
            k >= 1 && k <= self.values.len(),
            "load {k} outside 1..={}",
            self.values.len()
        );
        &self.values[k - 1]
    }

    pub fn max_load(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }
}

/// A coalition's joint action: `actions[i]` is the resource chosen by
/// `members[i]`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Agreement {
    members: Vec<usize>,
    actions: Vec<usize>,
}

impl Agreement {
    pub fn new(members: Vec<usize>, actions: Vec<usize>, m: usize) -> Result<Self, AgreementError> {
        if members.len() != actions.len() {
            return Err(AgreementError::LengthMismatch {
                members: members.len(),
                actions: actions.len(),
            });
        }
        if !members.windows(2).all(|w| w[0] < w[1]) {
            return Err(AgreementError::UnsortedMembers);
        }
        if let Some(&action) = actions.iter().find(|&&a| a >= m) {
            return Err(AgreementError::ActionOutOfRange { action, m });
        }
        Ok(Agreement { members, actions })
    }

    /// An agreement for the standalone coalition `0..actions.len()`.
    pub fn anonymous(actions: Vec<usize>, m: usize) -> Result<Self, AgreementError> {
        let members = (0..actions.len()).collect();
        Agreement::new(members, actions, m)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn actions(&self) -> &[usize] {
        &self.actions
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }

    /// Loads contributed by this coalition alone.
    pub fn coalition_loads(&self, m: usize) -> LoadVector {
        let mut counts = vec![0usize; m];
        for &a in &self.actions {
            counts[a] += 1;
        }
        LoadVector::new(counts)
    }

    /// Effective cost paid by the `idx`-th member.
    pub fn member_cost(&self, idx: usize, m: usize, g: &EffectiveCost) -> Rat {
        let lv = self.coalition_loads(m);
        g.value(lv.counts()[self.actions[idx]]).clone()
    }

    /// With at least `m` members, every resource must be used; with fewer,
    /// no resource may be shared.
    pub fn is_covering(&self, m: usize) -> bool {
        let lv = self.coalition_loads(m);
        if self.size() >= m {
            lv.counts().iter().all(|&k| k > 0)
        } else {
            lv.counts().iter().all(|&k| k <= 1)
        }
    }

    /// Every member pays the same effective cost.
    pub fn is_envy_free(&self, m: usize, g: &EffectiveCost) -> bool {
        let lv = self.coalition_loads(m);
        let mut it = self.actions.iter().map(|&a| g.value(lv.counts()[a]));
        match it.next() {
            None => true,
            Some(first) => it.all(|v| v == first),
        }
    }

    /// No member can expect to gain by unilaterally switching resources:
    /// `g(load(a_i)) <= g(load(x) + 1)` for every member `i` and every other
    /// resource `x`.
    pub fn is_credible(&self, m: usize, g: &EffectiveCost) -> bool {
        assert!(
            g.max_load() >= self.size(),
            "effective cost covers loads up to {}, need {}",
            g.max_load(),
            self.size()
        );
        let lv = self.coalition_loads(m);
        for &a in &self.actions {
            let own = g.value(lv.counts()[a]);
            for x in 0..m {
                if x == a {
                    continue;
                }
                if g.value(lv.counts()[x] + 1) < own {
                    return false;
                }
            }
        }
        true
    }

    /// Closed form: Pareto optimality coincides with the covering property.
    /// [`pareto_oracle`] performs the literal dominance check.
    pub fn is_pareto_optimal(&self, m: usize) -> bool {
        self.is_covering(m)
    }

    /// Covering, envy-free, credible, and Pareto optimal.
    pub fn is_qualified(&self, m: usize, g: &EffectiveCost) -> bool {
        self.is_covering(m)
            && self.is_envy_free(m, g)
            && self.is_credible(m, g)
            && self.is_pareto_optimal(m)
    }
}

/// Literal Pareto check: enumerate every alternative joint action and look
/// for one that makes no member worse off and some member strictly better.
pub fn pareto_oracle(
    agreement: &Agreement,
    m: usize,
    g: &EffectiveCost,
    cap: usize,
) -> Result<bool, CapExceeded> {
    let size = agreement.size();
    let needed = saturating_pow(m, size);
    if needed > cap {
        return Err(CapExceeded { needed, cap });
    }
    let current: Vec<Rat> = (0..size)
        .map(|i| agreement.member_cost(i, m, g))
        .collect();
    for alt in index_tuples(size, m) {
        let mut counts = vec![0usize; m];
        for &a in &alt {
            counts[a] += 1;
        }
        let mut some_better = false;
        let mut none_worse = true;
        for (i, &a) in alt.iter().enumerate() {
            let c = g.value(counts[a]);
            if *c < current[i] {
                some_better = true;
            } else if *c > current[i] {
                none_worse = false;
                break;
            }
        }
        if some_better && none_worse {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All agreements of a standalone coalition of `size` members over `m`
/// resources that pass every qualification predicate.
pub fn enumerate_qualified_agreements(
    size: usize,
    m: usize,
    g: &EffectiveCost,
    cap: usize,
) -> Result<Vec<Agreement>, CapExceeded> {
    let needed = saturating_pow(m, size);
    if needed > cap {
        return Err(CapExceeded { needed, cap });
    }
    Ok(index_tuples(size, m)
        .map(|actions| Agreement::anonymous(actions, m).expect("actions in range"))
        .filter(|a| a.is_qualified(m, g))
        .collect())
}

/// The load vector every qualified agreement of the coalition induces, up to
/// resource relabeling: even loads when `m` divides the size, one member per
/// resource when the size is below `m`, and nothing otherwise.
pub fn qualified_canonical_loads(size: usize, m: usize) -> Option<LoadVector> {
    if size.is_multiple_of(m) {
        Some(LoadVector::new(vec![size / m; m]))
    } else if size < m {
        let mut counts = vec![1; size];
        counts.extend(std::iter::repeat_n(0, m - size));
        Some(LoadVector::new(counts))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::StandardCost;

    fn id_g(max: usize) -> EffectiveCost {
        EffectiveCost::from_cost(&CostFunction::identity(max.max(2)))
    }

    fn anon(actions: Vec<usize>, m: usize) -> Agreement {
        Agreement::anonymous(actions, m).unwrap()
    }

    #[test]
    fn covering_examples() {
        assert!(anon(vec![0, 1, 0], 2).is_covering(2));
        assert!(!anon(vec![0, 0, 0], 2).is_covering(2));
        // below m: used resources must be exclusive
        assert!(anon(vec![0, 1], 3).is_covering(3));
        assert!(!anon(vec![0, 0], 3).is_covering(3));
        assert!(anon(vec![2], 3).is_covering(3));
    }

    #[test]
    fn envy_free_examples() {
        let g = id_g(4);
        assert!(anon(vec![0, 1], 2).is_envy_free(2, &g));
        assert!(anon(vec![0, 0, 1, 1], 2).is_envy_free(2, &g));
        assert!(!anon(vec![0, 0, 1], 2).is_envy_free(2, &g));
        // unused resources never enter the comparison
        assert!(anon(vec![0, 1], 3).is_envy_free(3, &g));
    }

    #[test]
    fn credible_examples() {
        let g = id_g(4);
        // loads (2,1): pay 2, switching joins a loaded resource for 2
        assert!(anon(vec![0, 0, 1], 2).is_credible(2, &g));
        // loads (3,0): pay 3, switching to the empty resource pays 1
        assert!(!anon(vec![0, 0, 0], 2).is_credible(2, &g));
        // a lone member never wants to move
        assert!(anon(vec![0], 3).is_credible(3, &g));
        assert!(anon(vec![0, 0, 1, 1], 2).is_credible(2, &g));
    }

    #[test]
    fn pareto_closed_form_matches_oracle() {
        for m in 1..=3usize {
            for size in 1..=4usize {
                for kind in [StandardCost::Linear, StandardCost::Square] {
                    let g = EffectiveCost::from_cost(&kind.build(size.max(2) + 1));
                    for actions in index_tuples(size, m) {
                        let a = anon(actions, m);
                        let literal = pareto_oracle(&a, m, &g, DEFAULT_CAP).unwrap();
                        assert_eq!(
                            a.is_pareto_optimal(m),
                            literal,
                            "size={size} m={m} actions={:?}",
                            a.actions()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn pareto_oracle_spot_checks() {
        let g = id_g(4);
        // everyone piled on one resource is dominated by spreading out
        assert!(!pareto_oracle(&anon(vec![0, 0], 2), 2, &g, DEFAULT_CAP).unwrap());
        assert!(pareto_oracle(&anon(vec![0, 1], 2), 2, &g, DEFAULT_CAP).unwrap());
        // covering but uneven: still Pareto optimal, the lighter resource
        // member would have to lose for anyone to gain
        assert!(pareto_oracle(&anon(vec![0, 0, 1], 2), 2, &g, DEFAULT_CAP).unwrap());
    }

    #[test]
    fn pareto_oracle_respects_cap() {
        let a = anon(vec![0; 9], 3);
        assert_eq!(
            pareto_oracle(&a, 3, &id_g(9), DEFAULT_CAP),
            Err(CapExceeded {
                needed: 19683,
                cap: DEFAULT_CAP
            })
        );
    }

    #[test]
    fn qualified_agreements_of_a_pair_on_two_resources() {
        let g = id_g(2);
        let q = enumerate_qualified_agreements(2, 2, &g, DEFAULT_CAP).unwrap();
        let actions: Vec<&[usize]> = q.iter().map(|a| a.actions()).collect();
        assert_eq!(actions, vec![&[0, 1][..], &[1, 0][..]]);
    }

    #[test]
    fn qualified_agreements_of_three_on_three() {
        let g = id_g(3);
        let q = enumerate_qualified_agreements(3, 3, &g, DEFAULT_CAP).unwrap();
        assert_eq!(q.len(), 6);
        for a in &q {
            assert_eq!(a.coalition_loads(3).counts(), &[1, 1, 1]);
        }
    }

    #[test]
    fn no_qualified_agreement_between_resource_count_and_multiple() {
        // size strictly between m and 2m: every agreement fails some predicate
        let g = id_g(3);
        assert!(enumerate_qualified_agreements(3, 2, &g, DEFAULT_CAP)
            .unwrap()
            .is_empty());
        let g = id_g(5);
        assert!(enumerate_qualified_agreements(5, 3, &g, DEFAULT_CAP)
            .unwrap()
            .is_empty());
        assert!(enumerate_qualified_agreements(4, 3, &g, DEFAULT_CAP)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn qualified_loads_match_canonical_shape() {
        let g = id_g(6);
        for (size, m) in [(2usize, 2usize), (4, 2), (2, 3), (3, 3), (6, 3), (1, 4)] {
            let canonical = qualified_canonical_loads(size, m).unwrap().sorted_desc();
            let q = enumerate_qualified_agreements(size, m, &g, 100_000).unwrap();
            assert!(!q.is_empty(), "size={size} m={m}");
            for a in q {
                assert_eq!(a.coalition_loads(m).sorted_desc(), canonical);
            }
        }
        assert_eq!(qualified_canonical_loads(4, 3), None);
        assert_eq!(qualified_canonical_loads(7, 3), None);
        assert_eq!(
            qualified_canonical_loads(2, 3).unwrap().counts(),
            &[1, 1, 0]
        );
    }

    #[test]
    fn mixed_class_counts_under_square_costs() {
        // envy-freeness and credibility react to g, covering does not
        let g = EffectiveCost::from_cost(&StandardCost::Square.build(4));
        let a = anon(vec![0, 0, 1, 1], 2);
        assert!(a.is_qualified(2, &g));
        let b = anon(vec![0, 0, 0, 1], 2);
        assert!(!b.is_envy_free(2, &g));
        assert!(!b.is_credible(2, &g));
    }

    #[test]
    fn effective_cost_validation() {
        use crate::rational::rat_int;
        assert!(EffectiveCost::from_values(vec![rat_int(5)]).is_ok());
        assert!(EffectiveCost::from_values(vec![]).is_err());
        assert!(EffectiveCost::from_values(vec![rat_int(2), rat_int(1)]).is_err());
    }
}
