//! Seeded instance generator.
//!
//! Identical config and seed always produce the identical instance,
//! byte-for-byte through the serializer; sweeps and verification runs
//! rely on that.

use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::instance::{build_instance, Instance};
use crate::rational::{ceil_int, floor_int, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorError(pub String);

impl fmt::Display for GeneratorError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid generator config: {}", self.0)
    }
}

impl std::error::Error for GeneratorError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeShape {
    /// Each new vertex picks a uniform parent among the existing ones.
    Random,
    Path,
    Star,
    /// Complete b-ary tree filled level by level.
    BAry(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CostModel {
    Constant(Rational),
    /// Uniform integer in lo..=hi (lo may be 0 to exercise contraction).
    UniformInt { lo: u64, hi: u64 },
    /// Draw from a fixed alphabet, optionally weighted.
    Alphabet {
        values: Vec<Rational>,
        weights: Option<Vec<u32>>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrizeModel {
    pub lo: Rational,
    pub hi: Rational,
    /// Prizes land on the grid of multiples of 1/denominator.
    pub denominator: u64,
    pub allow_negative: bool,
}

impl PrizeModel {
    pub fn uniform_int(lo: i64, hi: i64) -> Self {
        PrizeModel {
            lo: crate::rational::rat(lo),
            hi: crate::rational::rat(hi),
            denominator: 1,
            allow_negative: lo < 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BudgetPolicy {
    Absolute(Rational),
    /// B = fraction × total edge cost.
    FractionOfTotalCost(Rational),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub seed: u64,
    pub n: usize,
    pub shape: TreeShape,
    pub costs: CostModel,
    pub prizes: PrizeModel,
    pub budget: BudgetPolicy,
    pub threshold: Rational,
}

impl GeneratorConfig {
    fn validate(&self) -> Result<(), GeneratorError> {
        match &self.shape {
            TreeShape::BAry(0) => return Err(GeneratorError("b-ary arity must be ≥ 1".into())),
            _ => {}
        }
        match &self.costs {
            CostModel::UniformInt { lo, hi } if lo > hi => {
                return Err(GeneratorError(format!("cost range {lo}..{hi} is empty")))
            }
            CostModel::Alphabet { values, weights } => {
                if values.is_empty() {
                    return Err(GeneratorError("cost alphabet is empty".into()));
                }
                if values.iter().any(|v| v.is_negative()) {
                    return Err(GeneratorError("cost alphabet has a negative value".into()));
                }
                if let Some(w) = weights {
                    if w.len() != values.len() {
                        return Err(GeneratorError(
                            "alphabet weights must match values in length".into(),
                        ));
                    }
                    if w.iter().all(|&x| x == 0) {
                        return Err(GeneratorError("alphabet weights are all zero".into()));
                    }
                }
            }
            _ => {}
        }
        if self.prizes.lo > self.prizes.hi {
            return Err(GeneratorError("prize range is empty".into()));
        }
        if self.prizes.denominator == 0 {
            return Err(GeneratorError("prize denominator must be ≥ 1".into()));
        }
        if !self.prizes.allow_negative && self.prizes.lo.is_negative() {
            return Err(GeneratorError(
                "negative prize bound without allow_negative".into(),
            ));
        }
        if let BudgetPolicy::FractionOfTotalCost(f) = &self.budget {
            if f.is_negative() {
                return Err(GeneratorError("budget fraction must be ≥ 0".into()));
            }
        }
        if let BudgetPolicy::Absolute(b) = &self.budget {
            if b.is_negative() {
                return Err(GeneratorError("budget must be ≥ 0".into()));
            }
        }
        Ok(())
    }
}

/// Generates the instance determined by `config`.
pub fn generate(config: &GeneratorConfig) -> Result<Instance, GeneratorError> {
    config.validate()?;
    let mut rng = ChaCha12Rng::seed_from_u64(config.seed);
    let n = config.n;

    // Parent (by vertex index; 0 is the root) of each non-root vertex.
    let parents: Vec<usize> = (1..=n)
        .map(|i| match &config.shape {
            TreeShape::Path => i - 1,
            TreeShape::Star => 0,
            TreeShape::BAry(b) => (i - 1) / b,
            TreeShape::Random => rng.gen_range(0..i),
        })
        .collect();

    let costs: Vec<Rational> = (0..n)
        .map(|_| match &config.costs {
            CostModel::Constant(c) => c.clone(),
            CostModel::UniformInt { lo, hi } => {
                crate::rational::rat(rng.gen_range(*lo..=*hi) as i64)
            }
            CostModel::Alphabet { values, weights } => match weights {
                None => values[rng.gen_range(0..values.len())].clone(),
                Some(w) => {
                    let total: u64 = w.iter().map(|&x| x as u64).sum();
                    let mut pick = rng.gen_range(0..total);
                    let mut chosen = 0;
                    for (i, &wi) in w.iter().enumerate() {
                        if pick < wi as u64 {
                            chosen = i;
                            break;
                        }
                        pick -= wi as u64;
                    }
                    values[chosen].clone()
                }
            },
        })
        .collect();

    // Prizes are uniform on the 1/denominator grid inside [lo, hi].
    let den = BigInt::from(config.prizes.denominator);
    let lo_scaled = ceil_int(&(&config.prizes.lo * Rational::from_integer(den.clone())));
    let hi_scaled = floor_int(&(&config.prizes.hi * Rational::from_integer(den.clone())));
    let lo_i = i128::try_from(&lo_scaled).map_err(|_| GeneratorError("prize range too wide".into()))?;
    let hi_i = i128::try_from(&hi_scaled).map_err(|_| GeneratorError("prize range too wide".into()))?;
    if lo_i > hi_i {
        return Err(GeneratorError("prize grid is empty".into()));
    }
    let sample_prize = |rng: &mut ChaCha12Rng| {
        Rational::new(BigInt::from(rng.gen_range(lo_i..=hi_i)), den.clone())
    };
    let prizes: Vec<Rational> = (0..n).map(|_| sample_prize(&mut rng)).collect();

    let mut vertices = vec![("r".to_string(), Rational::from_integer(0.into()))];
    for (i, p) in prizes.into_iter().enumerate() {
        vertices.push((format!("v{}", i + 1), p));
    }
    let id_of = |idx: usize| {
        if idx == 0 {
            "r".to_string()
        } else {
            format!("v{idx}")
        }
    };
    let edges: Vec<(String, String, Rational)> = parents
        .iter()
        .enumerate()
        .map(|(i, &p)| (id_of(p), id_of(i + 1), costs[i].clone()))
        .collect();

    let total_cost: Rational = costs.iter().sum();
    let budget = match &config.budget {
        BudgetPolicy::Absolute(b) => b.clone(),
        BudgetPolicy::FractionOfTotalCost(f) => f * total_cost,
    };

    build_instance(&vertices, &edges, "r", budget, config.threshold.clone())
        .map_err(|e| GeneratorError(format!("generated instance invalid: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format::serialize_instance;
    use crate::rational::{rat, ratio};

    fn base_config() -> GeneratorConfig {
        GeneratorConfig {
            seed: 7,
            n: 5,
            shape: TreeShape::Random,
            costs: CostModel::UniformInt { lo: 1, hi: 9 },
            prizes: PrizeModel::uniform_int(0, 10),
            budget: BudgetPolicy::FractionOfTotalCost(ratio(1, 2)),
            threshold: rat(0),
        }
    }

    #[test]
    fn same_seed_same_bytes() {
        let a = generate(&base_config()).unwrap();
        let b = generate(&base_config()).unwrap();
        assert_eq!(
            serialize_instance(&a, None),
            serialize_instance(&b, None)
        );
    }

    #[test]
    fn different_seeds_differ() {
        let a = generate(&base_config()).unwrap();
        let mut cfg = base_config();
        cfg.seed = 8;
        let b = generate(&cfg).unwrap();
        assert_ne!(serialize_instance(&a, None), serialize_instance(&b, None));
    }

    #[test]
    fn shapes() {
        let mut cfg = base_config();
        cfg.shape = TreeShape::Star;
        let star = generate(&cfg).unwrap();
        assert_eq!(star.tree().child_count(star.tree().root()), 5);

        cfg.shape = TreeShape::Path;
        cfg.n = 3;
        let path = generate(&cfg).unwrap();
        let t = path.tree();
        let v1 = t.index_of("v1").unwrap();
        let v2 = t.index_of("v2").unwrap();
        let v3 = t.index_of("v3").unwrap();
        assert_eq!(t.parent(v1), Some(t.root()));
        assert_eq!(t.parent(v2), Some(v1));
        assert_eq!(t.parent(v3), Some(v2));

        cfg.shape = TreeShape::BAry(2);
        cfg.n = 6;
        let b = generate(&cfg).unwrap();
        let t = b.tree();
        assert_eq!(t.child_count(t.root()), 2);
        assert_eq!(t.child_count(t.index_of("v1").unwrap()), 2);
        assert_eq!(t.child_count(t.index_of("v2").unwrap()), 2);
    }

    #[test]
    fn alphabet_costs_only_draw_from_alphabet() {
        let mut cfg = base_config();
        let alphabet = vec![ratio(1, 3), ratio(5, 2)];
        cfg.costs = CostModel::Alphabet {
            values: alphabet.clone(),
            weights: None,
        };
        cfg.n = 12;
        let inst = generate(&cfg).unwrap();
        for v in inst.tree().vertex_indices() {
            if v != inst.tree().root() {
                assert!(alphabet.contains(inst.cost(v)));
            }
        }
    }

    #[test]
    fn budget_fraction_of_total() {
        let mut cfg = base_config();
        cfg.costs = CostModel::Constant(rat(2));
        cfg.budget = BudgetPolicy::FractionOfTotalCost(ratio(1, 4));
        let inst = generate(&cfg).unwrap();
        assert_eq!(inst.budget(), &ratio(10, 4)); // 5 edges × 2 × 1/4
    }

    #[test]
    fn invalid_configs_are_rejected() {
        let mut cfg = base_config();
        cfg.costs = CostModel::UniformInt { lo: 5, hi: 2 };
        assert!(generate(&cfg).is_err());

        let mut cfg = base_config();
        cfg.prizes = PrizeModel {
            lo: rat(-1),
            hi: rat(1),
            denominator: 1,
            allow_negative: false,
        };
        assert!(generate(&cfg).is_err());

        let mut cfg = base_config();
        cfg.shape = TreeShape::BAry(0);
        assert!(generate(&cfg).is_err());
    }

    #[test]
    fn fractional_prize_grid() {
        let mut cfg = base_config();
        cfg.prizes = PrizeModel {
            lo: rat(0),
            hi: rat(4),
            denominator: 2,
            allow_negative: false,
        };
        let inst = generate(&cfg).unwrap();
        for v in inst.tree().vertex_indices() {
            let scaled = inst.prize(v) * rat(2);
            assert!(crate::rational::is_integer(&scaled));
        }
    }
}
