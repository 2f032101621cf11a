use hullsep_core::geometry::{closest_segment_points, dist, SegmentPair};
use hullsep_core::oracle::{brute_force_distance, check_separation, OracleMethod};
use hullsep_core::triangle::*;
use hullsep_core::*;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};

fn set(rows: &[&[f64]]) -> PointSet {
    PointSet::new(rows.iter().map(|r| r.to_vec()).collect()).unwrap()
}

fn balls(dim: usize, na: usize, nb: usize, factor: f64, seed: u64) -> (PointSet, PointSet) {
    let inst = generate_two_balls(&InstanceSpec::new(dim, na, nb, factor, seed)).unwrap();
    (inst.a, inst.b)
}

#[test]
fn singletons_give_witness_without_steps() {
    let a = set(&[&[0.0, 0.0]]);
    let b = set(&[&[2.0, 0.0]]);
    let out = ta1_solve(&a, &b, None, None, &TaOptions::default()).unwrap();
    assert_eq!(out.report.iterations, 0);
    let Ta1Result::Witness(w) = out.result else {
        panic!("expected a witness, got {:?}", out.result);
    };
    assert_eq!(w.p.point(), &[0.0, 0.0]);
    assert_eq!(w.q.point(), &[2.0, 0.0]);
    assert!(w.is_valid(&a, &b));
    assert!(check_separation(&w.bisector, &a, &b, 0.0));
    // bisector is x = 1
    assert_eq!(w.bisector.signed_distance(&[1.0, 5.0]), 0.0);
}

#[test]
fn one_pivot_step_reaches_intersection() {
    let a = set(&[&[-1.0], &[1.0]]);
    let b = set(&[&[0.0]]);
    let out = ta1_solve(
        &a,
        &b,
        Some(ConvexIterate::vertex(&a, 0)),
        None,
        &TaOptions::plain(),
    )
    .unwrap();
    assert!(matches!(out.result, Ta1Result::ApproxIntersection));
    assert_eq!(out.report.status, Status::Intersecting);
    assert_eq!(out.report.iterations, 1);
    assert_eq!(out.p.point(), &[0.0]);
    assert_eq!(out.p.coefficients(), &[0.5, 0.5]);
    assert_eq!(out.report.distance_upper, 0.0);
}

#[test]
fn overlapping_balls_intersect() {
    let (a, b) = balls(2, 50, 50, 0.0, 1);
    let out = solve(&a, &b, &TaOptions::default()).unwrap();
    assert_eq!(out.report.status, Status::Intersecting);
    let oracle = brute_force_distance(&a, &b, OracleMethod::MinNormPoint).unwrap();
    assert!(oracle.intersects(&a, &b, 1e-9));
}

#[test]
fn parallel_faces_stop_immediately() {
    let a = set(&[&[0.0, 0.0], &[0.0, 1.0]]);
    let b = set(&[&[3.0, 0.0], &[3.0, 1.0]]);
    let w = WitnessCertificate::new(ConvexIterate::vertex(&a, 0), ConvexIterate::vertex(&b, 0)).unwrap();
    let out = ta2_solve(&w, &a, &b, &TaOptions::default()).unwrap();
    assert_eq!(out.report.status, Status::Separated);
    assert_eq!(out.report.iterations, 0);
    let est = out.estimate.unwrap();
    assert_eq!((est.delta, est.delta_lower, est.e), (3.0, 3.0, 0.0));
    let (hv, hv2) = out.report.support_planes.unwrap();
    for y in [-1.0, 0.5, 7.0] {
        assert!(hv.eval(&[0.0, y]).abs() < 1e-15);
        assert!(hv2.eval(&[3.0, y]).abs() < 1e-15);
    }
}

#[test]
fn singleton_distances_are_exact() {
    for d in [1e-3, 0.5, 2.0, 17.25] {
        let a = set(&[&[0.0, 0.0]]);
        let b = set(&[&[d, 0.0]]);
        let out = solve(&a, &b, &TaOptions::default()).unwrap();
        assert_eq!(out.report.status, Status::Separated);
        assert_eq!(out.report.distance_upper, d);
        assert!((out.report.distance_lower - d).abs() <= 1e-15 * d.max(1.0));
    }
}

#[test]
fn random_separable_matches_oracle() {
    let (a, b) = balls(5, 20, 20, 1.1, 3);
    let out = solve(&a, &b, &TaOptions::default()).unwrap();
    assert_eq!(out.report.status, Status::Separated);
    let oracle = brute_force_distance(&a, &b, OracleMethod::MinNormPoint).unwrap();
    let upper = out.report.distance_upper;
    assert!((upper - oracle.delta_star).abs() <= (1e-3 * upper).max(1e-2));
    assert!(out.report.distance_lower <= oracle.delta_star + 1e-9);
}

#[test]
fn non_witness_is_rejected() {
    let a = set(&[&[-1.0], &[1.0]]);
    let b = set(&[&[0.0], &[3.0]]);
    let w = WitnessCertificate::new(ConvexIterate::vertex(&a, 0), ConvexIterate::vertex(&b, 1)).unwrap();
    assert!(matches!(
        ta2_solve(&w, &a, &b, &TaOptions::default()),
        Err(HullError::NotWitness)
    ));
}

#[test]
fn bad_inputs_are_errors() {
    let a = set(&[&[0.0, 0.0]]);
    let b = set(&[&[2.0, 0.0]]);
    for eps in [0.0, 1.0, -0.5, f64::NAN] {
        let opts = TaOptions {
            epsilon: eps,
            ..TaOptions::default()
        };
        assert!(matches!(solve(&a, &b, &opts), Err(HullError::InvalidEpsilon(_))));
    }
    let c = set(&[&[2.0, 0.0, 1.0]]);
    assert!(matches!(
        solve(&a, &c, &TaOptions::default()),
        Err(HullError::DimensionMismatch { .. })
    ));
}

#[test]
fn iteration_cap_reports_max_iterations() {
    let (a, b) = balls(3, 30, 30, 0.0, 8);
    let opts = TaOptions {
        max_iters: 1,
        ..TaOptions::plain()
    };
    let out = solve(&a, &b, &opts).unwrap();
    assert_eq!(out.report.status, Status::MaxIterations);
    assert!(out.report.iterations <= 1);
}

#[test]
fn joint_step_delegates_to_segment_solver() {
    let p = [0.0, 0.0];
    let v = [2.0, 0.0];
    let p2 = [1.0, 1.0];
    let v2 = [1.0, 3.0];
    let (x, y) = joint_step(&p, &v, &p2, &v2);
    let c = closest_segment_points(&SegmentPair {
        p: &p,
        v: &v,
        p2: &p2,
        v2: &v2,
    });
    assert_eq!((x, y), (c.q, c.q2));

    let (x, y) = joint_step(&[-1.0], &[1.0], &[1.0], &[-1.0]);
    assert_eq!(dist(&x, &y), 0.0);
}

#[test]
fn joint_step_beats_single_moves() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let mut pt = |m: usize| -> Vec<f64> { (0..m).map(|_| rng.random_range(-1.0..1.0)).collect() };
    for trial in 0..100 {
        let m = 2 + trial % 4;
        let (p, v, p2, v2) = (pt(m), pt(m), pt(m), pt(m));
        let (x, y) = joint_step(&p, &v, &p2, &v2);
        let joint = dist(&x, &y);
        let only_p = hullsep_core::geometry::nearest_on_segment(&p2, &p, &v).point;
        let only_q = hullsep_core::geometry::nearest_on_segment(&p, &p2, &v2).point;
        let single = dist(&only_p, &p2).min(dist(&p, &only_q));
        assert!(joint <= single + 1e-12, "trial {trial}: {joint} > {single}");
    }
}

fn zigzag_instance() -> (PointSet, PointSet) {
    let a = set(&[
        &[18.56976615613743, 11.334512592645765],
        &[15.062207920008118, 16.429044045469652],
        &[22.47360687532242, 16.495966429420566],
    ]);
    let b = set(&[&[18.543565882854306, 16.94137107523362]]);
    (a, b)
}

#[test]
fn zigzag_guard_adds_edge_midpoint_and_saves_iterations() {
    let (a, b) = zigzag_instance();
    let start = || Some(ConvexIterate::vertex(&a, 0));
    let on = solve_from(&a, &b, start(), None, &TaOptions::default()).unwrap();
    let off_opts = TaOptions {
        zigzag: None,
        ..TaOptions::default()
    };
    let off = solve_from(&a, &b, start(), None, &off_opts).unwrap();
    assert_eq!(on.report.status, Status::Separated);
    assert_eq!(off.report.status, Status::Separated);
    assert!(on.report.iterations < off.report.iterations);
    assert_eq!(on.diagnostics.synthetic[0], (Side::A, vec![(1, 0.5), (2, 0.5)]));
    assert!(off.diagnostics.synthetic.is_empty());
}

#[test]
fn cache_toggle_does_not_change_results() {
    for k in 0..40u64 {
        let (a, b) = balls(
            2 + (k % 3) as usize,
            3 + (k % 5) as usize,
            4,
            if k % 2 == 0 { 0.0 } else { 1.1 },
            k,
        );
        let on = solve(&a, &b, &TaOptions::default()).unwrap();
        let off = solve(
            &a,
            &b,
            &TaOptions {
                cache: false,
                ..TaOptions::default()
            },
        )
        .unwrap();
        assert_eq!(on.report.status, off.report.status, "seed {k}");
        assert!(
            (on.report.distance_upper - off.report.distance_upper).abs() <= 1e-9,
            "seed {k}"
        );
    }
}

#[test]
fn plain_and_accelerated_agree_on_status_for_clear_cases() {
    for k in 0..10u64 {
        let (a, b) = balls(4, 12, 12, 1.5, k);
        let fast = solve(&a, &b, &TaOptions::default()).unwrap();
        let plain = solve(&a, &b, &TaOptions::plain()).unwrap();
        assert_eq!(fast.report.status, Status::Separated);
        assert_eq!(plain.report.status, Status::Separated);
    }
}

fn check_run(a: &PointSet, b: &PointSet, opts: &TaOptions) -> std::result::Result<(), TestCaseError> {
    let out = solve(a, b, opts).unwrap();
    let scale = a.max_norm().max(b.max_norm());
    let diam = a.diameter().max(b.diameter()).max(1e-300);

    for w in out.diagnostics.gaps.windows(2) {
        prop_assert!(w[1] <= w[0] + 1e-12 * scale, "gap grew: {} -> {}", w[0], w[1]);
    }
    for (it, s) in [(&out.p, a), (&out.q, b)] {
        prop_assert!((it.coefficient_sum() - 1.0).abs() <= 1e-12);
        prop_assert!(it.coefficients().iter().all(|&c| c >= 0.0));
        prop_assert!(it.resynthesis_error(s) <= 1e-8 * s.diameter().max(diam));
    }
    let eps = opts.epsilon;
    match out.report.status {
        Status::Separated => {
            let est = out.estimate.unwrap();
            prop_assert!(est.delta_lower <= est.delta);
            prop_assert!((est.e - est.e_v - est.e_v2).abs() <= 1e-9 * scale.max(1.0));
            prop_assert!(est.e <= eps * est.rho.max(est.rho2) + 1e-12 * scale);
            let w = out.witness.as_ref().unwrap();
            prop_assert!(w.is_valid(a, b));
            prop_assert!(check_separation(&w.bisector, a, b, 1e-9));
            for &(lo, hi) in &out.diagnostics.bounds {
                prop_assert!(lo <= hi);
            }
            let oracle = brute_force_distance(a, b, OracleMethod::MinNormPoint).unwrap();
            prop_assert!(est.delta_lower - 1e-9 <= oracle.delta_star);
            prop_assert!(oracle.delta_star <= est.delta + 1e-9);
        }
        Status::Intersecting => {
            let (v, v2) = &out.diagnostics.last_pivots;
            let gap = dist(out.p.point(), out.q.point());
            let reach = dist(out.p.point(), v).max(dist(out.q.point(), v2));
            prop_assert!(gap <= eps * reach);
        }
        Status::MaxIterations => {}
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn solver_invariants(
        dim in 2usize..5,
        na in 1usize..12,
        nb in 1usize..12,
        factor in prop::sample::select(vec![0.0, 0.5, 1.1, 2.0]),
        seed in 0u64..10_000,
        plain in any::<bool>(),
    ) {
        let (a, b) = balls(dim, na, nb, factor, seed);
        let opts = if plain { TaOptions::plain() } else { TaOptions::default() };
        check_run(&a, &b, &opts)?;
    }
}
