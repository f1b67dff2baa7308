//! Worked examples for every public operation.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_complex::Complex64;
use relpack_core::chart::{
    chart_j, chart_j_inv, chart_symplectic_check, clifford_distance, full_embedding, moment_map,
};
use relpack_core::fd::det2;
use relpack_core::product::{phi, property_margins};
use relpack_core::*;

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}

fn sigma(n: usize, r: f64) -> Sigma {
    Sigma::new(make_params(n, r, None).unwrap()).unwrap()
}

#[test]
fn params_examples() {
    let p = make_params(2, 0.8, None).unwrap();
    assert!(close(p.epsilon(), 1.0 / 150.0, 1e-15));
    assert!(matches!(
        make_params(2, (2.0f64 / 3.0).sqrt(), None),
        Err(Error::RadiusAtOrAboveBound { .. })
    ));
    let p = make_params(3, 0.7, None).unwrap();
    assert_eq!(p.c(), 0.25);
    assert!(close(p.epsilon(), 0.005 / 3.0, 1e-15));
    assert!(close(3.0 * p.c() + 0.245 + 3.0 * p.epsilon(), 1.0, 1e-15));
    assert!(matches!(
        make_params(2, 0.8, Some(0.0)),
        Err(Error::InvalidEpsilon { .. })
    ));
    assert!(matches!(
        make_params(2, 0.8, Some(0.01)),
        Err(Error::InvalidEpsilon { .. })
    ));
    assert!(make_params(2, 0.8, Some(0.005)).is_ok());
}

#[test]
fn schedule_limits() {
    let fam = CurveFamily::new(make_params(2, 0.8, None).unwrap()).unwrap();
    let tiny = 1e-12;
    let c = fam.shape_schedule(tiny).unwrap();
    let rad = (tiny / PI).sqrt();
    assert!(close(c.half_height / rad, 1.0, 1e-6));
    assert!(close(c.half_width / rad, 1.0, 1e-6));
    assert!(close(c.exponent, 2.0, 1e-6));

    let eps = fam.params().epsilon();
    let outer = fam.params().disc_area() * (1.0 - 1e-12);
    let c = fam.shape_schedule(outer).unwrap();
    assert!(c.half_height <= outer / (2.0 * PI) + eps);
    assert!(2.0 * c.half_height * (PI - 2.0 * fam.q_margin()) >= outer);
    assert!(close(c.formula_area() / outer, 1.0, 1e-12));
}

#[test]
fn level_curve_points() {
    let fam = CurveFamily::new(make_params(2, 0.8, None).unwrap()).unwrap();
    let area = 0.7;
    let c = fam.shape_schedule(area).unwrap();
    let right = fam.level_curve_point(area, 0.0).unwrap();
    assert!(close(right.Q, FRAC_PI_2 + c.half_width, 1e-14) && right.P == 1.0 / 3.0);
    let top = fam.level_curve_point(area, 0.25).unwrap();
    assert!(close(top.Q, FRAC_PI_2, 1e-14) && close(top.P, 1.0 / 3.0 + c.half_height, 1e-14));
    let left = fam.level_curve_point(area, 0.5).unwrap();
    assert!(close(left.Q, PI - right.Q, 1e-14) && close(left.P, 1.0 / 3.0, 1e-14));
}

#[test]
fn enclosed_area_examples() {
    let fam = CurveFamily::new(make_params(2, 0.8, None).unwrap()).unwrap();
    assert!(close(fam.enclosed_area(0.1).unwrap(), 0.1, 1e-7));
    let half = fam.params().disc_area() / 2.0;
    assert!(close(fam.enclosed_area(half).unwrap() / half, 1.0, 1e-6));
    assert!(close(fam.enclosed_area(1e-9).unwrap() / 1e-9, 1.0, 1e-6));
}

#[test]
fn sigma_examples() {
    let s = sigma(2, 0.8);
    let w = s.sigma(DiscPoint::ORIGIN).unwrap();
    assert_eq!((w.Q, w.P), (FRAC_PI_2, 1.0 / 3.0));

    let z = DiscPoint::new(0.5, 0.3);
    let w = s.sigma(z).unwrap();
    assert!(w.P <= 1.0 / 3.0 + 0.17 + 1.0 / 150.0);
    let m = s.sigma(DiscPoint::new(0.5, -0.3)).unwrap();
    assert!(close(m.Q, w.Q, 1e-12) && close(m.P, 2.0 / 3.0 - w.P, 1e-12));

    let back = s.sigma_inv(w).unwrap();
    assert!(close(back.q, 0.5, 1e-9) && close(back.p, 0.3, 1e-9));
    assert_eq!(
        s.sigma_inv(ChartPoint::new(FRAC_PI_2, 1.0 / 3.0)).unwrap(),
        DiscPoint::ORIGIN
    );

    let u = 0.2;
    let h = s.family().shape_schedule(PI * u).unwrap().half_height;
    let back = s
        .sigma_inv(ChartPoint::new(FRAC_PI_2, 1.0 / 3.0 + h))
        .unwrap();
    assert!(close(back.u(), u, 1e-9));
    assert!(back.p > 0.0);
}

#[test]
fn jacobian_examples() {
    let s = sigma(2, 0.8);
    assert_eq!(
        s.jacobian(DiscPoint::ORIGIN).unwrap(),
        [[1.0, 0.0], [0.0, 1.0]]
    );
    assert!(close(
        det2(&s.jacobian(DiscPoint::new(0.5, 0.3)).unwrap()),
        1.0,
        1e-6
    ));
    let j = s.jacobian(DiscPoint::new(0.6, 0.0)).unwrap();
    assert!(close(det2(&j), 1.0, 1e-6));
    assert!(j[1][0].abs() < 1e-6);
    let j = sigma_jacobian(DiscPoint::new(-0.2, 0.1), s.params()).unwrap();
    assert!(close(det2(&j), 1.0, 1e-6));
}

#[test]
fn product_examples() {
    let s = sigma(2, 0.8);
    let c = 1.0 / 3.0;
    let img = phi(&s, &ProductPoint::zeros(2)).unwrap();
    assert_eq!(img.coords(), &[FRAC_PI_2, c, FRAC_PI_2, c]);

    let img = phi(&s, &ProductPoint::from_pairs([(0.3, 0.0), (-0.5, 0.0)])).unwrap();
    assert!(img.factors().all(|w| w.p == c));

    let m = property_margins(&s, &ProductPoint::zeros(2)).unwrap();
    assert!(m.factors.iter().all(|f| close(f.min(), 1.0 / 150.0, 1e-16)));
    assert!(close(m.global, 1.0 / 3.0, 1e-15));

    let x = ProductPoint::from_pairs([(0.8, 0.0), (0.0, 0.0)]);
    assert!(matches!(phi(&s, &x), Err(Error::OutsideBall { .. })));
}

#[test]
fn chart_examples() {
    let s3 = 1.0 / 3.0f64.sqrt();
    let z = ComplexChartPoint::new(vec![
        Complex64::from_polar(s3, 1.0),
        Complex64::from_polar(s3, 2.5),
    ])
    .unwrap();
    assert!(moment_map(&z).iter().all(|m| close(*m, 1.0 / 3.0, 1e-15)));

    let p = make_params(2, 0.8, None).unwrap();
    let zero = ComplexChartPoint::new(vec![Complex64::new(0.0, 0.0); 2]).unwrap();
    assert_eq!(moment_map(&zero), vec![0.0, 0.0]);
    assert!(close(clifford_distance(&zero, &p), 1.0 / 3.0, 1e-16));
    assert!(clifford_distance(&z, &p) < 1e-15);

    let z = chart_j(&ProductPoint::from_pairs([
        (FRAC_PI_2, 0.25),
        (FRAC_PI_4, 0.25),
    ]))
    .unwrap();
    assert!((z.coords()[0] - Complex64::new(-0.5, 0.0)).norm() < 1e-15);
    assert!((z.coords()[1] - Complex64::new(0.0, 0.5)).norm() < 1e-15);
    let back = chart_j_inv(&z).unwrap();
    assert!(close(back.q(0), FRAC_PI_2, 1e-12) && close(back.q(1), FRAC_PI_4, 1e-12));

    let axis =
        ComplexChartPoint::new(vec![Complex64::new(0.1, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
    assert_eq!(chart_j_inv(&axis), Err(Error::OnAxes { index: 1 }));

    let x = ProductPoint::from_pairs([(0.4, 1.0 / 3.0), (2.0, 1.0 / 3.0)]);
    assert!(clifford_distance(&chart_j(&x).unwrap(), &p) < 1e-15);
    assert!(
        chart_symplectic_check(&ProductPoint::from_pairs([
            (FRAC_PI_2, 0.25),
            (FRAC_PI_4, 0.25)
        ]))
        .unwrap()
            < 1e-6
    );
}

#[test]
fn full_embedding_examples() {
    let s = sigma(2, 0.8);
    let p = *s.params();
    let z = full_embedding(&s, &ProductPoint::zeros(2)).unwrap();
    let root = -(1.0f64 / 3.0).sqrt();
    for w in z.coords() {
        assert!(close(w.re, root, 1e-15) && w.im.abs() < 1e-15);
    }
    assert!(clifford_distance(&z, &p) < 1e-12);

    let real = ProductPoint::from_pairs([(0.3, 0.0), (0.2, 0.0)]);
    assert!(clifford_distance(&full_embedding(&s, &real).unwrap(), &p) < 1e-12);

    let off = ProductPoint::from_pairs([(0.3, 0.1), (0.2, 0.0)]);
    let z = full_embedding(&s, &off).unwrap();
    assert!(clifford_distance(&z, &p) > 0.0);
    assert!(z.coords()[0].norm_sqr() > 1.0 / 3.0);
    assert!(z.norm_sq() < 1.0);
}
