use relpack::runner::run;
use relpack_core::verify::{run_all, SuitePlan, Tolerances};
use relpack_core::{make_params, Sigma};

#[test]
fn parallel_report_matches_sequential() {
    let map = Sigma::new(make_params(2, 0.8, None).unwrap()).unwrap();
    let plan = SuitePlan {
        grid: 400,
        midline: 200,
        diameter: 200,
        chart_samples: 100,
        curve_areas: 4,
        ..SuitePlan::new(9000, 5)
    };
    let tol = Tolerances::default();
    let expected = run_all(&map, &plan, &tol);
    for threads in [Some(1), Some(3), None] {
        assert_eq!(run(&map, &plan, &tol, threads), expected, "{threads:?}");
    }
}
