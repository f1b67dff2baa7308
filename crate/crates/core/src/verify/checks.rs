use alloc::vec::Vec;
use core::cmp::Ordering;
use core::f64::consts::PI;

use super::{Bound, CheckRecord, Tolerances};
use crate::chart::{chart_j, chart_symplectic_check, clifford_distance, moment_map};
use crate::fd::det2;
use crate::params::{make_params, PackingParams};
use crate::points::ProductPoint;
use crate::product::margins_of_image;
use crate::sigma::DiscMap;

/// Running maximum of a statistic with the point where it occurred.
///
/// NaN counts as `+inf`. Ties go to the lexicographically smaller point, so
/// merging is order independent.
#[derive(Debug, Clone, PartialEq)]
pub struct Worst {
    value: f64,
    point: Option<Vec<f64>>,
    count: u64,
}

impl Default for Worst {
    fn default() -> Self {
        Worst {
            value: f64::NEG_INFINITY,
            point: None,
            count: 0,
        }
    }
}

fn lex(a: &[f64], b: &[f64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.total_cmp(y) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

impl Worst {
    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn point(&self) -> Option<&[f64]> {
        self.point.as_deref()
    }

    pub fn count(&self) -> u64 {
        self.count
    }

    fn replaces(&self, value: f64, point: &[f64]) -> bool {
        match &self.point {
            None => true,
            Some(cur) => {
                value > self.value || (value == self.value && lex(point, cur) == Ordering::Less)
            }
        }
    }

    pub fn observe(&mut self, value: f64, point: &[f64]) {
        let value = if value.is_nan() { f64::INFINITY } else { value };
        self.count += 1;
        if self.replaces(value, point) {
            self.value = value;
            self.point = Some(point.to_vec());
        }
    }

    pub fn merge(&mut self, other: Worst) {
        self.count += other.count;
        if let Some(p) = other.point {
            if self.replaces(other.value, &p) {
                self.value = other.value;
                self.point = Some(p);
            }
        }
    }
}

/// Sign of `x` as -1, 0 or 1.
fn signum0(x: f64) -> i8 {
    if x > 0.0 {
        1
    } else if x < 0.0 {
        -1
    } else {
        0
    }
}

/// Per-sample check accumulators. Slack-type statistics are stored negated,
/// so every field tracks a maximum.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Tally {
    area: Worst,
    containment: Worst,
    containment_violations: u64,
    band: Worst,
    midline: Worst,
    midline_sign_samples: u64,
    midline_violations: u64,
    round_trip: Worst,
    chart_moment: Worst,
    chart_containment: Worst,
    chart_symplectic: Worst,
    lagrangian: Worst,
    lagrangian_off_slice: u64,
    lagrangian_violations: u64,
}

impl Tally {
    pub fn merge(&mut self, other: Tally) {
        self.area.merge(other.area);
        self.containment.merge(other.containment);
        self.containment_violations += other.containment_violations;
        self.band.merge(other.band);
        self.midline.merge(other.midline);
        self.midline_sign_samples += other.midline_sign_samples;
        self.midline_violations += other.midline_violations;
        self.round_trip.merge(other.round_trip);
        self.chart_moment.merge(other.chart_moment);
        self.chart_containment.merge(other.chart_containment);
        self.chart_symplectic.merge(other.chart_symplectic);
        self.lagrangian.merge(other.lagrangian);
        self.lagrangian_off_slice += other.lagrangian_off_slice;
        self.lagrangian_violations += other.lagrangian_violations;
    }

    fn fail_all(&mut self, at: &[f64], chart: bool) {
        let inf = f64::INFINITY;
        for w in [
            &mut self.area,
            &mut self.containment,
            &mut self.band,
            &mut self.round_trip,
            &mut self.chart_moment,
            &mut self.chart_containment,
        ] {
            w.observe(inf, at);
        }
        if chart {
            self.chart_symplectic.observe(inf, at);
        }
        self.lagrangian.observe(inf, at);
    }

    /// Runs every per-sample check on one source point of the ball.
    pub fn observe<M: DiscMap + ?Sized>(&mut self, map: &M, point: &ProductPoint, chart: bool) {
        let params = map.params();
        let at = point.coords();
        let c = params.c();
        let n = point.n();

        let mut image = Vec::with_capacity(2 * n);
        let mut det_err: f64 = 0.0;
        for z in point.factors() {
            match map.sigma_with_jacobian(z) {
                Ok((w, jac)) => {
                    det_err = det_err.max(libm::fabs(det2(&jac) - 1.0));
                    image.push(w.Q);
                    image.push(w.P);
                }
                Err(_) => return self.fail_all(at, chart),
            }
        }
        let image = ProductPoint::new(image).expect("even length");
        self.area.observe(det_err, at);

        let sum_p: f64 = image.factors().map(|w| w.p).sum();
        self.containment.observe(-(1.0 - sum_p), at);
        let open_box = image.factors().all(|w| w.q > 0.0 && w.q < PI && w.p > 0.0);
        if !open_box || !(sum_p < 1.0) {
            self.containment_violations += 1;
        }

        let margins = margins_of_image(params, point, &image);
        self.band.observe(-margins.band(), at);

        // Midline: exact level on the real slice, and matching signs off it.
        let mut on_line: Option<f64> = None;
        let mut signs_ok = true;
        for (z, w) in point.factors().zip(image.factors()) {
            if z.p == 0.0 {
                let d = libm::fabs(w.p - c);
                on_line = Some(on_line.map_or(d, |m: f64| m.max(d)));
            } else if signum0(w.p - c) != signum0(z.p) {
                signs_ok = false;
            }
        }
        if let Some(d) = on_line {
            self.midline.observe(d, at);
        }
        if point.factors().any(|z| z.p != 0.0) {
            self.midline_sign_samples += 1;
            if !signs_ok {
                self.midline_violations += 1;
            }
        }

        let mut rt: f64 = 0.0;
        for (z, w) in point.factors().zip(image.factors()) {
            let err = match map.sigma_inv(crate::points::ChartPoint::new(w.q, w.p)) {
                Ok(back) => libm::fabs(back.q - z.q).max(libm::fabs(back.p - z.p)),
                Err(_) => f64::INFINITY,
            };
            rt = rt.max(err);
        }
        self.round_trip.observe(rt, at);

        let Ok(zc) = chart_j(&image) else {
            self.chart_moment.observe(f64::INFINITY, at);
            self.chart_containment.observe(f64::INFINITY, at);
            self.lagrangian.observe(f64::INFINITY, at);
            return;
        };
        let moment_err = moment_map(&zc)
            .iter()
            .zip(image.factors())
            .map(|(m, w)| libm::fabs(m - w.p))
            .fold(0.0, f64::max);
        self.chart_moment.observe(moment_err, at);
        self.chart_containment.observe(-(1.0 - zc.norm_sq()), at);
        if chart {
            let defect = chart_symplectic_check(&image).unwrap_or(f64::INFINITY);
            self.chart_symplectic.observe(defect, at);
        }

        self.observe_lagrangian(params, point, &image, clifford_distance(&zc, params));
    }

    fn observe_lagrangian(
        &mut self,
        params: &PackingParams,
        point: &ProductPoint,
        image: &ProductPoint,
        dist: f64,
    ) {
        if point.factors().all(|z| z.p == 0.0) {
            self.lagrangian.observe(dist, point.coords());
        } else if point.factors().any(|z| libm::fabs(z.p) > 1e-6) {
            self.lagrangian_off_slice += 1;
            let c = params.c();
            let signs = point
                .factors()
                .zip(image.factors())
                .all(|(z, w)| signum0(w.p - c) == signum0(z.p));
            if !(dist > 0.0) || !signs {
                self.lagrangian_violations += 1;
            }
        }
    }

    /// The two single-coordinate probes `p_1 = +-1e-6` near the real slice.
    pub fn observe_lagrangian_probes<M: DiscMap + ?Sized>(&mut self, map: &M) {
        let params = *map.params();
        for sign in [1.0, -1.0] {
            let mut coords = alloc::vec![0.0; 2 * params.n()];
            coords[0] = 0.3 * params.r();
            coords[1] = sign * 1e-6;
            let point = ProductPoint::new(coords).expect("even length");
            let image = crate::product::phi(map, &point);
            let z = image.as_ref().ok().and_then(|img| chart_j(img).ok());
            match (image, z) {
                (Ok(image), Some(z)) => {
                    // Probes sit below the 1e-6 cut-off used for samples, so
                    // they are checked here directly.
                    self.lagrangian_off_slice += 1;
                    let w = image.factor(0);
                    let dist = clifford_distance(&z, &params);
                    if !(dist > 0.0) || signum0(w.p - params.c()) != signum0(sign) {
                        self.lagrangian_violations += 1;
                    }
                }
                _ => self.lagrangian_violations += 1,
            }
        }
    }

    /// Records of the per-sample checks, in report order.
    pub fn records(&self, tol: &Tolerances) -> Vec<CheckRecord> {
        let neg = |w: &Worst| {
            let mut w = w.clone();
            w.value = -w.value;
            w
        };
        let mut midline = CheckRecord::from_worst(
            "midline",
            &self.midline,
            Bound::AtMost(tol.midline),
            self.midline_violations,
        );
        midline.samples_used += self.midline_sign_samples;
        let mut lagrangian = CheckRecord::from_worst(
            "lagrangian_preimage",
            &self.lagrangian,
            Bound::AtMost(tol.lagrangian),
            self.lagrangian_violations,
        );
        lagrangian.samples_used += self.lagrangian_off_slice;
        alloc::vec![
            CheckRecord::from_worst("area_preservation", &self.area, Bound::AtMost(tol.area), 0),
            CheckRecord::from_worst(
                "containment",
                &neg(&self.containment),
                Bound::Above(0.0),
                self.containment_violations
            ),
            CheckRecord::from_worst("band", &neg(&self.band), Bound::AtLeast(-tol.band), 0),
            midline,
            CheckRecord::from_worst(
                "round_trip",
                &self.round_trip,
                Bound::AtMost(tol.round_trip),
                0
            ),
            CheckRecord::from_worst(
                "chart_moment",
                &self.chart_moment,
                Bound::AtMost(tol.chart_moment),
                0
            ),
            CheckRecord::from_worst(
                "chart_containment",
                &neg(&self.chart_containment),
                Bound::Above(0.0),
                0
            ),
            CheckRecord::from_worst(
                "chart_symplectic",
                &self.chart_symplectic,
                Bound::AtMost(tol.chart_symplectic),
                0
            ),
            lagrangian,
        ]
    }
}

/// `n c + r^2/2 + n eps_default = 1`, and `eps_default` vanishing at the bound.
pub fn sharpness_record(params: &PackingParams, tol: f64) -> CheckRecord {
    let n = params.n();
    let mut worst = Worst::default();
    let default = make_params(n, params.r(), None).map(|p| p.sharpness_sum());
    worst.observe(
        default.map_or(f64::INFINITY, |s| libm::fabs(s - 1.0)),
        &[params.r()],
    );

    let nf = n as f64;
    let r_near = libm::sqrt(2.0 / (nf + 1.0) - 1e-9);
    let near = make_params(n, r_near, None);
    let mut violations = 0;
    match near {
        Ok(p) if p.epsilon() > 0.0 && p.epsilon() <= 1e-9 / nf => {
            worst.observe(libm::fabs(p.sharpness_sum() - 1.0), &[r_near]);
        }
        _ => violations += 1,
    }
    CheckRecord::from_worst("sharpness_identity", &worst, Bound::AtMost(tol), violations)
}
