//! Prints coverage and expected length for the 18 reference conditions,
//! computed by exact enumeration rather than sampling.

use f1ci::simulation::{builtin_scenarios, exact_condition_metrics};
use f1ci::Method;

fn main() -> Result<(), f1ci::Error> {
    println!("scenario,n,method,coverage,expected_length,overshoot_prob,degeneracy_prob");
    for s in builtin_scenarios() {
        for n in [25, 50, 100, 500, 1000, 5000] {
            for m in Method::ALL {
                let r = exact_condition_metrics(&s, n, 0.05, m)?;
                println!(
                    "{},{},{},{:.6},{:.6},{:.6},{:.6}",
                    s.id, n, m, r.coverage, r.expected_length, r.overshoot_prob, r.degeneracy_prob
                );
            }
        }
    }
    Ok(())
}
