fn main() {
    for n in [4, 5] {
        let t0 = std::time::Instant::now();
        let report = tiltkit_core::d2n::run_demo(n).expect("pipeline runs");
        println!(
            "n={n}: verdict {:?}, end_dim {:?}, elapsed {:?}",
            report.verdict,
            report.end_dim,
            t0.elapsed()
        );
        assert_eq!(report.end_dim, Some(n * n + 4 * n));
    }
}
