mod common;

use common::{exhaustive_opt, feasible_by_definition, triangle};
use sprout::baselines::{brute_force, density_search_sgs, greedy, repeated_greedy};
use sprout::bench::{small_spec, SmallKind};
use sprout::instance::{InstanceSpec, KnapsackSpec, ObjectiveSpec};
use sprout::objectives::MatroidSpec;
use sprout::oracle::Conditioned;
use sprout::search::{binary_search_density, SeedContext};
use sprout::sprout::SproutParams;
use sprout::Error;

#[test]
fn triangle_values() {
    let inst = triangle();
    let g = greedy(&inst);
    assert_eq!((g.value, g.set.clone()), (5.0, vec![3]));
    let b = brute_force(&inst, None).unwrap();
    assert_eq!((b.opt_value, b.opt_set), (5.0, vec![3]));
}

#[test]
fn greedy_is_exact_for_modular_under_cardinality() {
    let weights = vec![3.0, 9.0, 1.0, 7.0, 7.0, 2.0];
    let spec = InstanceSpec {
        n: 6,
        objective: ObjectiveSpec::Modular { weights },
        matroids: vec![MatroidSpec::Uniform { cap: 3 }],
        knapsacks: KnapsackSpec {
            costs: vec![vec![0.1; 6]],
            budgets: vec![1.0],
        },
    };
    let rec = greedy(&spec.build().unwrap());
    assert_eq!(rec.set, vec![1, 3, 4]);
    assert_eq!(rec.value, 23.0);
}

#[test]
fn dominance_against_exhaustive_search() {
    for seed in 0..12u64 {
        let kind = [SmallKind::Cut, SmallKind::Diversity, SmallKind::Coverage][seed as usize % 3];
        let spec = small_spec(kind, 12, 2, 2, seed);
        let inst = spec.build().unwrap();
        let (_, opt) = exhaustive_opt(&spec, &inst);
        let brute = brute_force(&inst, None).unwrap();
        assert!((brute.opt_value - opt).abs() < 1e-9, "seed {seed}");
        assert!(feasible_by_definition(&spec, &brute.opt_set));

        let g = greedy(&inst);
        let rp1 = repeated_greedy(&inst, 1).unwrap();
        let rp3 = repeated_greedy(&inst, 3).unwrap();
        let ds = density_search_sgs(&inst, &SproutParams::empirical()).unwrap();
        assert_eq!(g.set, rp1.set);
        assert!(rp3.value >= g.value);
        for r in [&g, &rp3, &ds] {
            assert!(r.value <= opt + 1e-9, "{} seed {seed}", r.algo);
            assert!(
                feasible_by_definition(&spec, &r.set),
                "{} seed {seed}",
                r.algo
            );
        }
    }
}

#[test]
fn dssgs_is_the_empty_seed_pipeline() {
    for seed in 0..5 {
        let inst = small_spec(SmallKind::Cut, 11, 2, 2, seed).build().unwrap();
        let params = SproutParams::empirical();
        let rec = density_search_sgs(&inst, &params).unwrap();
        let oracle = inst.oracle();
        let z = Conditioned::new(&oracle, &[]);
        let ctx = SeedContext::new(&inst, z, inst.feasible_singletons(), &Default::default())
            .unwrap()
            .unwrap();
        let grid = sprout::search::GridParams {
            gamma: 0.0,
            ..params.grid()
        };
        let out = binary_search_density(&ctx, &grid).unwrap();
        assert_eq!(rec.set, out.best);
        assert_eq!(rec.value, out.best_value);
    }
}

#[test]
fn size_capped_brute_force() {
    let spec = small_spec(SmallKind::Cut, 10, 1, 1, 4);
    let inst = spec.build().unwrap();
    let capped = brute_force(&inst, Some(2)).unwrap();
    assert!(capped.opt_set.len() <= 2);
    let full = brute_force(&inst, None).unwrap();
    assert!(capped.opt_value <= full.opt_value);
    assert_eq!(full.bounds().opt_size, full.opt_set.len());
}

#[test]
fn refusals() {
    let big = small_spec(SmallKind::Cut, 30, 1, 1, 0).build().unwrap();
    assert!(matches!(brute_force(&big, None), Err(Error::TooLarge(_))));
    assert!(brute_force(&big, Some(3)).is_ok());
    assert!(matches!(repeated_greedy(&big, 0), Err(Error::Parameter(_))));
}
