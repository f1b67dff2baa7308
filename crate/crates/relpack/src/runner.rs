use rayon::prelude::*;
use relpack_core::verify::{finish, run_job, SuitePlan, Tally, Tolerances, VerificationReport};
use relpack_core::DiscMap;

/// Environment variable capping the number of worker threads.
pub const THREADS_ENV: &str = "RELPACK_THREADS";

/// Reads [`THREADS_ENV`]; unset or empty means no cap.
pub fn thread_cap() -> Result<Option<usize>, String> {
    match std::env::var(THREADS_ENV) {
        Err(_) => Ok(None),
        Ok(v) if v.trim().is_empty() => Ok(None),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Some(n)),
            _ => Err(format!(
                "{THREADS_ENV} must be a positive integer, got {v:?}"
            )),
        },
    }
}

/// Runs every check, spreading sample chunks over a thread pool.
///
/// The report is identical to [`relpack_core::verify::run_all`] for any
/// thread count.
pub fn run<M: DiscMap + Sync + ?Sized>(
    map: &M,
    plan: &SuitePlan,
    tol: &Tolerances,
    threads: Option<usize>,
) -> VerificationReport {
    let work = || {
        let tally = plan
            .jobs()
            .par_iter()
            .map(|job| run_job(map, plan, job))
            .reduce(Tally::default, |mut a, b| {
                a.merge(b);
                a
            });
        finish(map, plan, tol, tally)
    };
    match threads {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .expect("thread pool")
            .install(work),
        None => work(),
    }
}
