use oscvar_core::jumps::*;
use oscvar_core::measure::*;
use oscvar_core::oscillation::*;
use oscvar_core::variation::*;
use oscvar_core::{IndexSequence, RealPath};
use proptest::prelude::*;

const TOL: f64 = 1e-9;

fn le(a: f64, b: f64) -> bool {
    a <= b * (1.0 + TOL) + TOL
}

fn small_ints(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-2i32..=2).prop_map(f64::from), 1..=max_len)
}

fn reals(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-3.0f64..3.0, 1..=max_len)
}

fn quarters(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec((-12i32..=12).prop_map(|v| f64::from(v) / 4.0), 1..=max_len)
}

fn path(v: &[f64]) -> RealPath {
    RealPath::from_values(v.to_vec()).unwrap()
}

/// Sorted distinct positions below `n` chosen by `mask`, always containing at least one entry.
fn positions_from_mask(n: usize, mask: u64) -> Vec<usize> {
    let mut pos: Vec<usize> = (0..n).filter(|&i| i < 64 && mask & (1u64 << i) != 0).collect();
    if pos.is_empty() {
        pos.push((mask as usize) % n);
    }
    pos
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn variation_matches_oracle(v in small_ints(10), r in prop::sample::select(vec![1.0, 1.5, 2.0, 3.0])) {
        let p = path(&v);
        let dp = variation_seminorm(&p, r).unwrap();
        let ex = variation_oracle(&p, r).unwrap();
        prop_assert!((dp - ex).abs() <= 1e-12 * ex.max(1.0));
    }

    #[test]
    fn jump_counters_match_oracles(v in reals(10), lambda in 0.05f64..4.0) {
        let p = path(&v);
        prop_assert_eq!(jump_count(&p, lambda).unwrap(), jump_count_oracle(&p, lambda).unwrap());
        prop_assert_eq!(jump_count_pairs(&p, lambda).unwrap(), jump_count_pairs_oracle(&p, lambda).unwrap());
    }

    #[test]
    fn jump_counters_match_oracles_with_ties(v in quarters(10), lambda in prop::sample::select(vec![0.25, 0.5, 1.0, 1.5, 2.0])) {
        let p = path(&v);
        prop_assert_eq!(jump_count(&p, lambda).unwrap(), jump_count_oracle(&p, lambda).unwrap());
        prop_assert_eq!(jump_count_pairs(&p, lambda).unwrap(), jump_count_pairs_oracle(&p, lambda).unwrap());
    }

    #[test]
    fn max_oscillation_matches_oracle(v in reals(10), j in 1usize..9, r in prop::sample::select(vec![1.0, 2.0, 2.5])) {
        prop_assume!(j < v.len());
        let p = path(&v);
        let (dp, _) = max_oscillation(&p, r, j).unwrap();
        let (ex, _) = max_oscillation_oracle(&p, r, j).unwrap();
        prop_assert!((dp - ex).abs() <= 1e-12 * ex.max(1.0));
    }

    #[test]
    fn variation_decreases_in_r(v in reals(14)) {
        let p = path(&v);
        let vals: Vec<f64> = [1.0, 1.5, 2.0, 3.0, 8.0].iter().map(|&r| variation_seminorm(&p, r).unwrap()).collect();
        for w in vals.windows(2) {
            prop_assert!(le(w[1], w[0]));
        }
    }

    #[test]
    fn restriction_and_sup_bounds(v in reals(14), mask in any::<u64>(), t0 in 0usize..14, r in 1.0f64..4.0) {
        let p = path(&v);
        let full = variation_seminorm(&p, r).unwrap();
        let sub = p.restrict(&positions_from_mask(v.len(), mask)).unwrap();
        prop_assert!(le(variation_seminorm(&sub, r).unwrap(), full));
        let t0 = t0 % v.len();
        let sup = v.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        prop_assert!(le(sup, v[t0].abs() + full));
        let lr: f64 = v.iter().map(|x| x.abs().powf(r)).sum::<f64>().powf(1.0 / r);
        prop_assert!(le(full, 2.0 * lr));
    }

    #[test]
    fn oscillation_below_variation(v in reals(14), mask in any::<u64>(), r in 1.0f64..4.0) {
        let p = path(&v);
        let pos = positions_from_mask(v.len(), mask);
        let o = oscillation_values(p.values(), &pos, r, true);
        prop_assert!(le(o, variation_seminorm(&p, r).unwrap()));
        if pos.len() >= 2 {
            let i = IndexSequence::from_positions(&p, &pos).unwrap();
            prop_assert!(le(oscillation_seminorm(&p, &i, r).unwrap(), o));
        }
    }

    #[test]
    fn oscillation_is_a_seminorm(a in prop::collection::vec(-3.0f64..3.0, 12), b in prop::collection::vec(-3.0f64..3.0, 12),
                                 c in -4.0f64..4.0, mask in any::<u64>(), r in 1.0f64..4.0) {
        let pos = positions_from_mask(12, mask | 1);
        let sum: Vec<f64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let scaled: Vec<f64> = a.iter().map(|x| c * x).collect();
        let oa = oscillation_values(&a, &pos, r, true);
        let ob = oscillation_values(&b, &pos, r, true);
        prop_assert!(le(oscillation_values(&sum, &pos, r, true), oa + ob));
        prop_assert!((oscillation_values(&scaled, &pos, r, true) - c.abs() * oa).abs() <= 1e-9 * (1.0 + oa));
    }

    #[test]
    fn splitting_blocks(v in reals(14), mask in any::<u64>(), split in any::<u64>(), r in 1.0f64..4.0) {
        let pos = positions_from_mask(v.len(), mask);
        let dev = block_deviations(&v, &pos, true);
        let norm = |sel: &dyn Fn(usize) -> bool| -> f64 {
            dev.iter().enumerate().filter(|(i, _)| sel(*i)).map(|(_, d)| d.powf(r)).sum::<f64>().powf(1.0 / r)
        };
        let all = norm(&|_| true);
        let one = norm(&|i| split & (1 << i) != 0);
        let two = norm(&|i| split & (1 << i) == 0);
        prop_assert!(le(all, one + two));
    }

    #[test]
    fn jump_sandwiches_and_pointwise_bounds(v in reals(16), lambda in 0.05f64..3.0, mask in any::<u64>(), r in 1.0f64..4.0) {
        let p = path(&v);
        let n = jump_count(&p, lambda).unwrap();
        let pairs = jump_count_pairs(&p, lambda).unwrap();
        let half = jump_count(&p, lambda / 2.0).unwrap();
        prop_assert!(n <= pairs && pairs <= half);
        prop_assert!(jump_count(&p, lambda * 1.5).unwrap() <= n);
        prop_assert!(le(lambda * (n as f64).powf(1.0 / r), variation_seminorm(&p, r).unwrap()));
        let pos = positions_from_mask(v.len(), mask);
        let seq = sequential_jump_count_values(&v, lambda, &pos);
        let seq_pairs = sequential_jump_count_pairs_values(&v, lambda, &pos);
        let seq_half = sequential_jump_count_values(&v, lambda / 2.0, &pos);
        prop_assert!(seq <= seq_pairs && seq_pairs <= seq_half);
        prop_assert!(le(lambda * (seq as f64).powf(1.0 / r), oscillation_values(&v, &pos, r, true)));
        prop_assert!(seq <= jump_count_pairs(&p, lambda * 0.999).unwrap());
    }

    #[test]
    fn chain_and_split_inequalities(m in 1u32..7, j0_frac in 0.0f64..1.0, steps in prop::collection::vec(prop::bool::ANY, 64),
                                    mask in any::<u64>(), tau in 0.1f64..0.95) {
        let top = 1usize << m;
        let j0 = ((top as f64) * j0_frac) as usize % top;
        let mut a = vec![0.0];
        for s in steps.iter().take(top - j0) {
            let last = *a.last().unwrap();
            a.push(last + if *s { 1.0 } else { -1.0 });
        }
        let mut idx: Vec<usize> = positions_from_mask(a.len(), mask).iter().map(|p| p + j0).collect();
        if idx.len() < 2 {
            idx = vec![j0, top];
        }
        let chain = rademacher_menshov_check(&a, j0, m, &idx).unwrap();
        prop_assert!(chain.holds(TOL), "{:?}", chain);
        if a.len() >= 2 {
            let local: Vec<usize> = idx.iter().map(|i| i - j0).collect();
            let split = long_short_split(&a, tau, &local).unwrap();
            prop_assert!(split.holds(TOL), "{:?}", split);
        }
    }

    #[test]
    fn weak_norm_properties(vals in prop::collection::vec(-5.0f64..5.0, 1..50), ws in prop::collection::vec(0.01f64..4.0, 50),
                            p in 1.0f64..6.0, c in -3.0f64..3.0, bump in prop::collection::vec(0.0f64..2.0, 50)) {
        let n = vals.len();
        let space = FiniteWeightedSpace::new(ws[..n].to_vec()).unwrap();
        let g = AtomFunction::new(vals.clone());
        let weak = weak_lp_norm(&g, &space, p).unwrap();
        prop_assert!(le(weak, lp_norm(&g, &space, p).unwrap()));
        let scaled = AtomFunction::new(vals.iter().map(|v| c * v).collect());
        prop_assert!((weak_lp_norm(&scaled, &space, p).unwrap() - c.abs() * weak).abs() <= 1e-9 * (1.0 + weak));
        prop_assert!((lp_norm(&scaled, &space, p).unwrap() - c.abs() * lp_norm(&g, &space, p).unwrap()).abs() <= 1e-9 * (1.0 + weak));
        let bigger = AtomFunction::new(vals.iter().zip(&bump).map(|(v, b)| v.abs() + b).collect());
        prop_assert!(le(weak, weak_lp_norm(&bigger, &space, p).unwrap()));
        prop_assert!(le(lp_norm(&g, &space, p).unwrap(), lp_norm(&bigger, &space, p).unwrap()));

        // Definition-level sup: left limits at each attained value, by direct rescans.
        let abs: Vec<f64> = vals.iter().map(|v| v.abs()).collect();
        let mut direct = 0.0f64;
        for &level in &abs {
            let mass: f64 = abs.iter().zip(space.weights()).filter(|(a, _)| **a >= level).map(|(_, w)| w).sum();
            direct = direct.max(level * mass.powf(1.0 / p));
        }
        prop_assert!((direct - weak).abs() <= 1e-9 * weak.max(1e-300));
        // A dense grid never exceeds the sup and approaches it.
        let mut grid = 0.0f64;
        for i in -6000..=1000 {
            let lambda = 10f64.powf(i as f64 / 1000.0);
            let mass: f64 = abs.iter().zip(space.weights()).filter(|(a, _)| **a > lambda).map(|(_, w)| w).sum();
            grid = grid.max(lambda * mass.powf(1.0 / p));
        }
        prop_assert!(le(grid, weak));
        prop_assert!(grid >= weak * (1.0 - 3e-3) || weak < 1e-6);
    }
}
