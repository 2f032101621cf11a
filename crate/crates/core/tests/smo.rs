use hullsep_core::oracle::{brute_force_distance, check_separation, reported_distance, OracleMethod};
use hullsep_core::smo::*;
use hullsep_core::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn one_d() -> LabeledProblem {
    let pts = PointSet::new(vec![vec![0.0], vec![2.0]]).unwrap();
    LabeledProblem::new(pts, vec![-1, 1], f64::INFINITY).unwrap()
}

fn balls(dim: usize, na: usize, nb: usize, factor: f64, seed: u64) -> (PointSet, PointSet) {
    let inst = generate_two_balls(&InstanceSpec::new(dim, na, nb, factor, seed)).unwrap();
    (inst.a, inst.b)
}

#[test]
fn hand_traced_step() {
    let p = one_d();
    let mut s = DualState::new(&p);
    assert_eq!(s.error_cache, vec![1.0, -1.0]);
    assert!(take_step(&mut s, &p, 0, 1));
    assert_eq!(s.alphas, vec![0.5, 0.5]);
    assert_eq!(s.b, -1.0);
    assert_eq!(s.w(), &[1.0]);
    assert_eq!(s.objective, 0.5);
    assert!(s.error_deviation(&p) < 1e-15);
}

#[test]
fn rejected_steps() {
    let p = one_d();
    let mut s = DualState::new(&p);
    assert!(!take_step(&mut s, &p, 1, 1));

    let dup = PointSet::new(vec![vec![1.0, 1.0], vec![1.0, 1.0]]).unwrap();
    let q = LabeledProblem::new(dup, vec![-1, 1], f64::INFINITY).unwrap();
    let mut t = DualState::new(&q);
    assert!(!take_step(&mut t, &q, 0, 1));

    let mut opt = DualState::from_alphas(&p, vec![0.5, 0.5], -1.0).unwrap();
    assert!(!take_step(&mut opt, &p, 0, 1));
    assert_eq!(opt.alphas, vec![0.5, 0.5]);
}

#[test]
fn examine_examples() {
    let p = one_d();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut opt = DualState::from_alphas(&p, vec![0.5, 0.5], -1.0).unwrap();
    assert_eq!(examine_example(&mut opt, &p, 1, 1e-3, &mut rng), 0);

    let mut fresh = DualState::new(&p);
    assert_eq!(examine_example(&mut fresh, &p, 1, 1e-3, &mut rng), 1);
    assert_eq!(fresh.alphas, vec![0.5, 0.5]);

    let dup = PointSet::new(vec![vec![1.0], vec![1.0]]).unwrap();
    let q = LabeledProblem::new(dup, vec![-1, 1], f64::INFINITY).unwrap();
    let mut t = DualState::new(&q);
    assert_eq!(examine_example(&mut t, &q, 1, 1e-3, &mut rng), 0);
}

#[test]
fn one_dimensional_optimum() {
    let sol = smo_solve(&one_d(), &SmoOptions::default()).unwrap();
    assert_eq!(sol.report.status, Status::Separated);
    assert!((sol.w[0] - 1.0).abs() < 1e-12);
    assert!((sol.b + 1.0).abs() < 1e-12);
    assert!((sol.alphas[0] - 0.5).abs() < 1e-12 && (sol.alphas[1] - 0.5).abs() < 1e-12);
    assert!((sol.report.distance_upper - 2.0).abs() < 1e-12);
    assert_eq!(sol.report.sparsity, 2);
}

#[test]
fn separable_instance_matches_oracle() {
    let (a, b) = balls(5, 20, 20, 1.1, 3);
    let sol = smo_separate(&a, &b, f64::INFINITY, &SmoOptions::default()).unwrap();
    assert_eq!(sol.report.status, Status::Separated);
    let oracle = brute_force_distance(&a, &b, OracleMethod::MinNormPoint).unwrap();
    let d = reported_distance(&sol.w, sol.b, &a, &b).unwrap();
    assert!((d - oracle.delta_star).abs() <= 1e-2 * oracle.delta_star);
    assert!(d <= oracle.delta_star + 1e-9);
    let h = Hyperplane::from_svm(sol.w.clone(), sol.b).unwrap();
    assert!(check_separation(&h, &a, &b, 1e-9));
}

#[test]
fn hard_margin_on_overlap_does_not_converge() {
    let (a, b) = balls(3, 15, 15, 0.0, 5);
    let opts = SmoOptions {
        attempts_per_point: 500,
        ..SmoOptions::default()
    };
    let sol = smo_separate(&a, &b, f64::INFINITY, &opts).unwrap();
    assert_eq!(sol.report.status, Status::MaxIterations);
    assert!(sol.report.support_planes.is_none());
}

#[test]
fn soft_margin_on_overlap_converges() {
    let (a, b) = balls(3, 15, 15, 0.0, 5);
    let p = LabeledProblem::from_sets(&a, &b, 1.0).unwrap();
    let sol = smo_solve(&p, &SmoOptions::default()).unwrap();
    assert_ne!(sol.report.status, Status::MaxIterations);
    assert!(sol.alphas.iter().all(|&x| (0.0..=1.0).contains(&x)));
    let state = DualState::from_alphas(&p, sol.alphas.clone(), sol.threshold).unwrap();
    assert!(kkt_violations(&state, &p, 1e-3).is_empty());
}

#[test]
fn single_class_is_an_error() {
    let pts = PointSet::new(vec![vec![0.0], vec![1.0]]).unwrap();
    assert!(matches!(
        LabeledProblem::new(pts, vec![1, 1], f64::INFINITY),
        Err(HullError::SingleClass)
    ));
}

/// Replays a solve step by step, checking feasibility and monotonicity.
fn replay(p: &LabeledProblem, seed: u64) -> std::result::Result<DualState, TestCaseError> {
    let mut s = DualState::new(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = p.c();
    let mut last = s.objective;
    let mut examine_all = true;
    let mut changed = 0;
    let mut sweeps = 0;
    // degenerate duals can crawl for hundreds of sweeps
    while (changed > 0 || examine_all) && sweeps < 5000 {
        changed = 0;
        for i in 0..p.len() {
            if examine_all || (s.alphas[i] > 0.0 && s.alphas[i] < c) {
                let took = examine_example(&mut s, p, i, 1e-3, &mut rng);
                if took == 1 {
                    prop_assert!(s.alphas.iter().all(|&x| x >= 0.0 && x <= c));
                    prop_assert!(s.balance(p).abs() <= 1e-9);
                    prop_assert!(s.objective >= last - 1e-12 * last.abs().max(1.0));
                    last = s.objective;
                }
                changed += took;
            }
        }
        sweeps += 1;
        s.refit_threshold(p);
        if examine_all {
            examine_all = false;
        } else if changed == 0 {
            examine_all = true;
        }
    }
    prop_assert!(sweeps < 5000, "replay did not converge");
    Ok(s)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn smo_invariants(
        dim in 2usize..6,
        na in 2usize..15,
        nb in 2usize..15,
        seed in 0u64..1000,
        soft in any::<bool>(),
    ) {
        let (factor, c) = if soft { (0.3, 2.0) } else { (1.2, f64::INFINITY) };
        let (a, b) = balls(dim, na, nb, factor, seed);
        if !soft {
            // small samples can still overlap; hard margin needs disjoint hulls
            let oracle = brute_force_distance(&a, &b, OracleMethod::MinNormPoint).unwrap();
            prop_assume!(oracle.delta_star > 1e-3);
        }
        let p = LabeledProblem::from_sets(&a, &b, c).unwrap();
        let s = replay(&p, seed)?;
        prop_assert!(kkt_violations(&s, &p, 1e-3).is_empty());
        prop_assert!(s.error_deviation(&p) <= 1e-9);
        let w = weight_vector(&p, &s.alphas);
        let scale = w.iter().map(|x| x.abs()).fold(1.0, f64::max);
        for (x, y) in w.iter().zip(s.w()) {
            prop_assert!((x - y).abs() <= 1e-9 * scale);
        }
        for k in 0..p.len() {
            let f = p.decision(s.w(), s.b, k);
            prop_assert!((f - (s.error_cache[k] + p.label(k))).abs() <= 1e-8);
        }
        let direct = dual_objective(&s, &p);
        prop_assert!((direct - s.objective).abs() <= 1e-9 * direct.abs().max(1.0));
    }
}

#[test]
fn threshold_is_refit_when_every_multiplier_is_at_a_bound() {
    // overlapping triples where the soft optimum puts all six at C
    let (a, b) = balls(2, 3, 3, 0.3, 310);
    let p = LabeledProblem::from_sets(&a, &b, 2.0).unwrap();
    let mut s = DualState::from_alphas(&p, vec![2.0; 6], 0.0).unwrap();
    assert!(!kkt_violations(&s, &p, 1e-3).is_empty());
    assert!(s.refit_threshold(&p));
    assert!(kkt_violations(&s, &p, 1e-3).is_empty());
    assert!(s.error_deviation(&p) < 1e-12);
    assert!(!s.refit_threshold(&p));
}
