//! Randomized cross-checks of the linear readings: every model in a grid,
//! every determiner pair, oracle against the categorical and vector backends.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{cap_check, Error, Result};
use crate::eval::{categorical, oracle, TransitiveDenotation};
use crate::finite_model::{masks, BinRel, Mask, Universe};
use crate::lang::Reading;
use crate::quantifier::{GeneralizedQuantifier, QuantifierKind};
use crate::rel::DEFAULT_COMPOSITE_CAP;

pub const GRID_KINDS: [QuantifierKind; 5] = [
    QuantifierKind::Some,
    QuantifierKind::All,
    QuantifierKind::No,
    QuantifierKind::AtLeast(2),
    QuantifierKind::Exactly(1),
];

/// Disagreements kept verbatim in a report; the rest are only counted.
const KEPT: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridConfig {
    pub size: usize,
    pub seed: u64,
    /// Models to draw. When the grid has no more models than this it is
    /// enumerated instead.
    pub samples: usize,
    /// Worker threads; 0 lets the pool decide.
    pub jobs: usize,
}

impl Default for GridConfig {
    fn default() -> Self {
        GridConfig {
            size: 3,
            seed: 0,
            samples: 1000,
            jobs: 1,
        }
    }
}

/// Two nouns and a verb over `e0 .. e{size-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GridModel {
    pub n1: Mask,
    pub n2: Mask,
    /// Pair `(a, b)` at bit `a * size + b`.
    pub verb: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridDisagreement {
    pub model: GridModel,
    pub d1: String,
    pub d2: String,
    pub reading: Reading,
    pub oracle: bool,
    pub categorical: bool,
    pub vector: u128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridReport {
    pub size: usize,
    pub seed: u64,
    pub exhaustive: bool,
    pub models: usize,
    pub cases: usize,
    pub disagreement_count: usize,
    pub disagreements: Vec<GridDisagreement>,
}

/// The models of the grid, in a fixed order for a given config.
pub fn grid_models(cfg: &GridConfig) -> Result<Vec<GridModel>> {
    cap_check("grid universe size", cfg.size, DEFAULT_COMPOSITE_CAP)?;
    let n = cfg.size;
    let total = 1u128 << (2 * n + n * n);
    if total <= cfg.samples as u128 {
        return Ok(masks(n)
            .flat_map(|n1| masks(n).map(move |n2| (n1, n2)))
            .flat_map(|(n1, n2)| (0..1u64 << (n * n)).map(move |verb| GridModel { n1, n2, verb }))
            .collect());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let full = (1u64 << n) - 1;
    Ok((0..cfg.samples)
        .map(|_| GridModel {
            n1: (rng.gen::<u64>() & full) as Mask,
            n2: (rng.gen::<u64>() & full) as Mask,
            verb: rng.gen::<u64>() & ((1u64 << (n * n)) - 1),
        })
        .collect())
}

fn check_model(u: &Universe, m: GridModel) -> Result<Vec<GridDisagreement>> {
    let v = BinRel::from_code(u, m.verb)?;
    let (n1, n2) = (u.subset(m.n1)?, u.subset(m.n2)?);
    let mut out = Vec::new();
    for k1 in GRID_KINDS {
        for k2 in GRID_KINDS {
            let s = TransitiveDenotation {
                d1: GeneralizedQuantifier::builtin(k1),
                n1: n1.clone(),
                v: v.clone(),
                d2: GeneralizedQuantifier::builtin(k2),
                n2: n2.clone(),
            };
            for r in Reading::LINEAR {
                let o = oracle::linear(&s, r)?;
                let c = categorical::linear_truth(&s, r)?;
                let w = categorical::linear_count(&s, r)?;
                if o != c || o != (w > 0) {
                    out.push(GridDisagreement {
                        model: m,
                        d1: k1.to_string(),
                        d2: k2.to_string(),
                        reading: r,
                        oracle: o,
                        categorical: c,
                        vector: w,
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn run_grid(cfg: &GridConfig) -> Result<GridReport> {
    let models = grid_models(cfg)?;
    let u = Universe::anonymous(cfg.size)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| Error::TypeMismatch(format!("thread pool: {e}")))?;
    // Indexed collection keeps the report independent of scheduling.
    let found: Vec<Vec<GridDisagreement>> =
        pool.install(|| models.par_iter().map(|&m| check_model(&u, m)).collect::<Result<_>>())?;
    let all: Vec<GridDisagreement> = found.into_iter().flatten().collect();
    Ok(GridReport {
        size: cfg.size,
        seed: cfg.seed,
        exhaustive: (1u128 << (2 * cfg.size + cfg.size * cfg.size)) <= cfg.samples as u128,
        models: models.len(),
        cases: models.len() * GRID_KINDS.len() * GRID_KINDS.len() * Reading::LINEAR.len(),
        disagreement_count: all.len(),
        disagreements: all.into_iter().take(KEPT).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_grids_are_exhaustive() {
        let cfg = GridConfig {
            size: 1,
            ..GridConfig::default()
        };
        let r = run_grid(&cfg).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.models, 8);
        assert_eq!(r.cases, 8 * 50);
        assert_eq!(r.disagreement_count, 0);
    }

    #[test]
    fn sampling_is_seeded() {
        let cfg = GridConfig {
            size: 3,
            seed: 7,
            samples: 30,
            jobs: 2,
        };
        assert_eq!(grid_models(&cfg).unwrap(), grid_models(&cfg).unwrap());
        let other = grid_models(&GridConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(grid_models(&cfg).unwrap(), other);
        assert_eq!(
            run_grid(&cfg).unwrap(),
            run_grid(&GridConfig { jobs: 1, ..cfg }).unwrap()
        );
    }

    #[test]
    fn four_entities_sampled() {
        let cfg = GridConfig {
            size: 4,
            seed: 1,
            samples: 200,
            jobs: 1,
        };
        let r = run_grid(&cfg).unwrap();
        assert_eq!(r.cases, 10_000);
        assert_eq!(r.disagreement_count, 0, "{:?}", r.disagreements);
    }

    #[test]
    fn grid_size_is_capped() {
        let cfg = GridConfig {
            size: 6,
            ..GridConfig::default()
        };
        assert!(matches!(run_grid(&cfg), Err(Error::CapExceeded { .. })));
    }
}
