#![allow(dead_code)]

use sprout::instance::{InstanceSpec, ObjectiveSpec};
use sprout::objectives::MatroidSpec;
use sprout::Instance;

/// Feasibility straight from the spec's numbers.
pub fn feasible_by_definition(spec: &InstanceSpec, set: &[usize]) -> bool {
    let matroids_ok = spec.matroids.iter().all(|m| match m {
        MatroidSpec::Uniform { cap } => set.len() <= *cap,
        MatroidSpec::Partition { parts, caps } => parts
            .iter()
            .zip(caps)
            .all(|(p, &c)| set.iter().filter(|e| p.contains(e)).count() <= c),
    });
    let knap = &spec.knapsacks;
    let knap_ok = knap
        .costs
        .iter()
        .zip(&knap.budgets)
        .all(|(row, &b)| set.iter().map(|&e| row[e]).sum::<f64>() <= b * (1.0 + 1e-9));
    matroids_ok && knap_ok
}

/// Cut weight recomputed from the edge list.
pub fn cut_by_definition(edges: &[(usize, usize, f64)], set: &[usize]) -> f64 {
    edges
        .iter()
        .filter(|(u, v, _)| set.contains(u) != set.contains(v))
        .map(|e| e.2)
        .sum()
}

/// Optimum over all `2^n` subsets, first bitmask wins ties.
pub fn exhaustive_opt(spec: &InstanceSpec, inst: &Instance) -> (Vec<usize>, f64) {
    let n = spec.n;
    let mut best = (Vec::new(), inst.objective().value(&[]));
    for mask in 1u32..(1 << n) {
        let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if !feasible_by_definition(spec, &set) {
            continue;
        }
        let v = match &spec.objective {
            ObjectiveSpec::Cut { edges } => cut_by_definition(edges, &set),
            _ => inst.objective().value(&set),
        };
        if v > best.1 + 1e-12 {
            best = (set, v);
        }
    }
    best
}

pub const TRIANGLE: &str = r#"{
    "n": 4,
    "objective": {"kind": "cut", "edges": [[1, 2, 1.0], [1, 3, 2.0], [2, 3, 3.0]]},
    "matroids": [{"kind": "uniform", "cap": 1}],
    "knapsacks": {"costs": [[0.0, 0.0, 0.0, 0.0]], "budgets": [1.0]}
}"#;

pub fn triangle() -> Instance {
    InstanceSpec::from_json(TRIANGLE).unwrap().build().unwrap()
}
