mod common;

use common::{exhaustive_opt, feasible_by_definition};
use sprout::bench::{small_spec, SmallKind};
use sprout::sprout::{enumerate_seeds, reduced_ground_set, sprout, sprout_run, SproutParams};
use sprout::theory::{ratio_monotone, ratio_nonmonotone};

#[test]
fn theory_bound_holds_on_random_instances() {
    let eps = 0.25;
    for seed in 0..24u64 {
        let kind = [SmallKind::Cut, SmallKind::Diversity, SmallKind::Coverage][seed as usize % 3];
        let (k, m) = (1 + seed as usize % 2, 1 + (seed as usize / 2) % 2);
        let spec = small_spec(kind, 9, k, m, seed);
        let inst = spec.build().unwrap();
        let (_, opt) = exhaustive_opt(&spec, &inst);
        let params = SproutParams::theory(k, m, eps).unwrap();
        let rec = sprout(&inst, &params).unwrap();
        assert!(feasible_by_definition(&spec, &rec.set));
        assert!((inst.objective().value(&rec.set) - rec.value).abs() < 1e-9);
        let ratio = if kind == SmallKind::Coverage {
            ratio_monotone(k, m, eps)
        } else {
            ratio_nonmonotone(k, m, eps)
        };
        assert!(
            rec.value * ratio >= opt - 1e-9,
            "seed {seed}: {} vs {opt}",
            rec.value
        );
        assert!(rec.value <= opt + 1e-9);
    }
}

#[test]
fn enumeration_matches_feasible_subsets() {
    for seed in 0..4 {
        let spec = small_spec(SmallKind::Cut, 8, 2, 2, seed);
        let inst = spec.build().unwrap();
        for size in 1..=3 {
            let mut expected = Vec::new();
            for mask in 0u32..256 {
                let set: Vec<usize> = (0..8).filter(|i| mask >> i & 1 == 1).collect();
                if set.len() == size && feasible_by_definition(&spec, &set) {
                    expected.push(set);
                }
            }
            expected.sort();
            assert_eq!(enumerate_seeds(&inst, size), expected, "size {size}");
        }
    }
}

#[test]
fn every_collected_set_is_feasible() {
    for seed in 0..6 {
        let spec = small_spec(SmallKind::Diversity, 10, 2, 2, seed);
        let inst = spec.build().unwrap();
        let run = sprout_run(&inst, &SproutParams::empirical()).unwrap();
        for s in &run.seeds {
            for (set, value) in &s.search.collected {
                assert!(feasible_by_definition(&spec, set), "{set:?}");
                assert!((inst.objective().value(set) - value).abs() < 1e-9);
                assert!(set.windows(2).all(|w| w[0] < w[1]));
            }
            assert!(s.search.best_value <= run.record.value);
        }
    }
}

#[test]
fn reduction_keeps_low_marginals_only() {
    let spec = small_spec(SmallKind::Cut, 10, 1, 1, 2);
    let inst = spec.build().unwrap();
    let oracle = inst.oracle();
    let pool = inst.feasible_singletons();
    let base = [pool[0]];
    let f_a = oracle.evaluate(&base);
    let kept = reduced_ground_set(&oracle, &pool, &base, 1);
    for &e in &pool {
        if e == base[0] {
            assert!(!kept.contains(&e));
            continue;
        }
        let gain = oracle.evaluate(&[base[0], e]) - f_a;
        assert_eq!(kept.contains(&e), gain <= f_a, "e = {e}");
    }
}

#[test]
fn pair_seeds_on_tiny_instance() {
    let spec = small_spec(SmallKind::Cut, 7, 1, 1, 5);
    let inst = spec.build().unwrap();
    let (_, opt) = exhaustive_opt(&spec, &inst);
    let params = SproutParams {
        c_enum: 2,
        ..SproutParams::theory(1, 1, 0.25).unwrap()
    };
    let run = sprout_run(&inst, &params).unwrap();
    assert_eq!(run.seeds.len(), enumerate_seeds(&inst, 2).len());
    assert!(run.record.value <= opt + 1e-9);
    assert!(feasible_by_definition(&spec, &run.record.set));
}

#[test]
fn parallel_runs_are_deterministic() {
    let spec = small_spec(SmallKind::Cut, 12, 2, 2, 8);
    let inst = spec.build().unwrap();
    let a = sprout(&inst, &SproutParams::empirical()).unwrap();
    let b = sprout(&inst, &SproutParams::empirical()).unwrap();
    assert_eq!(a.without_timing(), b.without_timing());
}
