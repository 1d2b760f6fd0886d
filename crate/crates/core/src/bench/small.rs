use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::instance::{InstanceSpec, KnapsackSpec, ObjectiveSpec};
use crate::objectives::MatroidSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SmallKind {
    Cut,
    Diversity,
    Coverage,
}

/// A random instance small enough for exhaustive search.
///
/// The first matroid is a cardinality cap; with `k = 2` a partition matroid
/// over the two halves of the ground set is added. Each of the `m`
/// knapsack rows has costs uniform on `[0, 0.5)` and budget 1.
pub fn small_spec(kind: SmallKind, n: usize, k: usize, m: usize, seed: u64) -> InstanceSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let objective = match kind {
        SmallKind::Cut => {
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.4) {
                        edges.push((u, v, rng.gen_range(0.1..1.0)));
                    }
                }
            }
            ObjectiveSpec::Cut { edges }
        }
        SmallKind::Diversity => ObjectiveSpec::Diversity {
            similarity: None,
            features: Some(
                (0..n)
                    .map(|_| (0..3).map(|_| rng.gen::<f64>()).collect())
                    .collect(),
            ),
            lambda: Some(4.0),
        },
        SmallKind::Coverage => {
            let items = 2 * n;
            ObjectiveSpec::Coverage {
                covers: (0..n)
                    .map(|_| {
                        let size = rng.gen_range(1..=4);
                        let mut c = sample(&mut rng, items, size).into_vec();
                        c.sort_unstable();
                        c
                    })
                    .collect(),
                item_weights: (0..items).map(|_| rng.gen_range(0.5..1.5)).collect(),
            }
        }
    };
    let mut matroids = vec![MatroidSpec::Uniform {
        cap: rng.gen_range(2..=(n / 2).max(2)),
    }];
    for _ in 1..k {
        matroids.push(MatroidSpec::Partition {
            parts: vec![(0..n / 2).collect(), (n / 2..n).collect()],
            caps: vec![rng.gen_range(1..=3), rng.gen_range(1..=3)],
        });
    }
    let costs = (0..m)
        .map(|_| (0..n).map(|_| rng.gen_range(0.0..0.5)).collect())
        .collect();
    InstanceSpec {
        n,
        objective,
        matroids,
        knapsacks: KnapsackSpec {
            costs,
            budgets: vec![1.0; m],
        },
    }
}
