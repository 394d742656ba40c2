fn main() {
    let t0 = std::time::Instant::now();
    let args: Vec<String> = std::env::args().collect();
    let max_x: usize = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(3);
    let max_ab: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(3);
    let cfg = ordesc_core::sweep::SweepConfig {
        max_a: max_ab,
        max_b: max_ab,
        max_x,
        ..Default::default()
    };
    let report = ordesc_core::sweep::run(&cfg).unwrap();
    println!(
        "ambients={} instances={} effective={} srepi={} oracle_runs={} sampled_neg={} join_differs={} join_ill_typed={} violations={} elapsed={:?}",
        report.ambients, report.instances, report.effective, report.stable_regular_epis,
        report.oracle_runs, report.sampled_negatives, report.join_scope_differs,
        report.join_scope_ill_typed, report.violations.len(), t0.elapsed()
    );
    for v in report.violations.iter().take(5) {
        println!("VIOLATION {}: {}", v.invariant, v.detail);
    }
}
