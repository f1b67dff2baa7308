//! Sampling statistics, aggregation and fault injection for the verification harness.

use relpack_core::verify::fixtures::BrokenSigma;
use relpack_core::verify::*;
use relpack_core::*;

fn small_plan(seed: u64) -> SuitePlan {
    SuitePlan {
        seed,
        uniform: 3000,
        boundary: 600,
        midline: 300,
        diameter: 300,
        grid: 400,
        chart_samples: 200,
        curve_areas: 8,
    }
}

/// `E[R^2]` and `Var[R^2]` for the uniform distribution on `B^{2n}(r)`,
/// by composite Simpson quadrature of the radial density `2n rho^{2n-1} / r^{2n}`.
fn radial_moments(n: usize, r: f64) -> (f64, f64) {
    let d = 2 * n;
    let steps = 20_000;
    let h = r / steps as f64;
    let (mut m1, mut m2) = (0.0, 0.0);
    for k in 0..=steps {
        let rho = k as f64 * h;
        let w = if k == 0 || k == steps {
            1.0
        } else if k % 2 == 1 {
            4.0
        } else {
            2.0
        };
        let dens = d as f64 * rho.powi(d as i32 - 1) / r.powi(d as i32);
        m1 += w * dens * rho * rho;
        m2 += w * dens * rho.powi(4);
    }
    let (m1, m2) = (m1 * h / 3.0, m2 * h / 3.0);
    (m1, m2 - m1 * m1)
}

#[test]
fn uniform_ball_moments() {
    for (n, r) in [(2, 0.8), (3, 0.7)] {
        let p = make_params(n, r, None).unwrap();
        let (mean, var) = radial_moments(n, r);
        let nf = n as f64;
        assert!((mean - r * r * nf / (nf + 1.0)).abs() < 1e-12);
        if n == 2 {
            assert!((mean - 2.0 / 3.0 * r * r).abs() < 1e-12);
            assert!((var - r.powi(4) / 18.0).abs() < 1e-12);
        }
        let pts = sample(
            &SampleSpec::new(Strategy::UniformBall, 100_000, 42).unwrap(),
            &p,
        );
        let vals: Vec<f64> = pts.iter().map(|x| x.radius_sq()).collect();
        let emp = vals.iter().sum::<f64>() / vals.len() as f64;
        let se = (var / vals.len() as f64).sqrt();
        assert!(
            (emp - mean).abs() < 3.0 * se,
            "n={n}: {emp} vs {mean} (se {se})"
        );
        let emp_var = vals.iter().map(|v| (v - emp).powi(2)).sum::<f64>() / (vals.len() - 1) as f64;
        assert!(
            (emp_var / var - 1.0).abs() < 0.02,
            "variance {emp_var} vs {var}"
        );
    }
}

#[test]
fn diameter_samples_are_real() {
    let p = make_params(2, 0.8, None).unwrap();
    let pts = sample(&SampleSpec::new(Strategy::DiameterOnly, 10, 5).unwrap(), &p);
    assert_eq!(pts.len(), 10);
    assert!(pts
        .iter()
        .all(|x| x.factors().all(|f| f.p == 0.0) && x.radius_sq() < 0.64));
}

#[test]
fn chunks_are_independent() {
    let p = make_params(2, 0.8, None).unwrap();
    let spec = SampleSpec::new(Strategy::BoundaryBiased, 3 * CHUNK + 17, 9).unwrap();
    let all = sample(&spec, &p);
    assert_eq!(all.len(), spec.count);
    let last = sample_chunk(&spec, &p, 3);
    assert_eq!(&all[3 * CHUNK..], &last[..]);
}

#[test]
fn reports_are_reproducible_and_order_free() {
    let s = Sigma::new(make_params(2, 0.8, None).unwrap()).unwrap();
    let plan = small_plan(11);
    let tol = Tolerances::default();
    let a = run_all(&s, &plan, &tol);
    let b = run_all(&s, &plan, &tol);
    assert_eq!(a, b);

    let mut tally = Tally::default();
    for job in plan.jobs().iter().rev() {
        tally.merge(run_job(&s, &plan, job));
    }
    assert_eq!(finish(&s, &plan, &tol, tally), a);
    assert!(a.overall, "{:#?}", a.failed().collect::<Vec<_>>());
}

#[test]
fn broken_map_fails_only_area() {
    let params = make_params(2, 0.8, None).unwrap();
    let broken = BrokenSigma::new(params).unwrap();
    let report = run_all(&broken, &small_plan(3), &Tolerances::default());
    let failed: Vec<&str> = report.failed().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, ["area_preservation"]);
    let area = report.check("area_preservation").unwrap();
    assert!(
        (area.worst_value - 0.01).abs() < 1e-4,
        "{}",
        area.worst_value
    );
    assert!(!report.overall);
}

#[test]
fn area_on_grid_and_near_boundary() {
    let s = Sigma::new(make_params(2, 0.8, None).unwrap()).unwrap();
    let tol = Tolerances::default();
    let records = check_samples(
        &s,
        &SampleSpec::new(Strategy::Grid, 10_000, 0).unwrap(),
        &tol,
    )
    .unwrap();
    let area = records
        .iter()
        .find(|c| c.name == "area_preservation")
        .unwrap();
    assert!(area.passed && area.samples_used > 7000);

    let r2: f64 = 0.64 - 1e-6;
    let mut worst: f64 = 0.0;
    for k in 0..200 {
        let t = k as f64 * std::f64::consts::TAU / 200.0;
        let z = DiscPoint::new(r2.sqrt() * t.cos(), r2.sqrt() * t.sin());
        worst = worst.max((fd::det2(&s.jacobian(z).unwrap()) - 1.0).abs());
    }
    assert!(worst < 1e-6, "{worst}");
}

#[test]
fn containment_at_origin() {
    let s = Sigma::new(make_params(2, 0.8, None).unwrap()).unwrap();
    let mut tally = Tally::default();
    tally.observe(&s, &ProductPoint::zeros(2), false);
    let records = tally.records(&Tolerances::default());
    let cont = records.iter().find(|c| c.name == "containment").unwrap();
    assert!((cont.worst_value - 1.0 / 3.0).abs() < 1e-15);
}

#[test]
fn lagrangian_probe_signs() {
    let s = Sigma::new(make_params(2, 0.8, None).unwrap()).unwrap();
    let c = 1.0 / 3.0;
    for (p, sign) in [(1e-6, 1.0), (-1e-6, -1.0)] {
        let img = product::phi(&s, &ProductPoint::from_pairs([(0.3, p), (0.0, 0.0)])).unwrap();
        assert_eq!((img.p(0) - c).signum(), sign);
        let z = chart::chart_j(&img).unwrap();
        assert!(chart::clifford_distance(&z, s.params()) > 0.0);
    }
}

#[test]
fn sharpness_identity() {
    for (n, r) in [(2, 0.8), (2, 0.81), (3, 0.7), (4, 0.6)] {
        let p = make_params(n, r, None).unwrap();
        let rec = sharpness_record(&p, 1e-15);
        assert!(rec.passed, "{n} {r}: {rec:?}");
    }
    let near = make_params(2, (2.0f64 / 3.0 - 1e-9).sqrt(), None).unwrap();
    assert!(
        (near.epsilon() / 2.5e-10 - 1.0).abs() < 1e-6,
        "{}",
        near.epsilon()
    );
    assert!(matches!(
        make_params(3, 0.5f64.sqrt(), None),
        Err(Error::RadiusAtOrAboveBound { .. })
    ));
}

#[test]
fn curve_area_grid_spans_range() {
    let p = make_params(2, 0.8, None).unwrap();
    let grid = curve_area_grid(&p, 32);
    assert_eq!(grid.len(), 32);
    assert!(grid.windows(2).all(|w| w[1] < w[0]));
    assert!(grid[0] < p.disc_area() && grid[31] > 0.0);
    assert!(curve_area_record(&p, 32, 1e-6).passed);
}
