use cwc_core::code::CodeSpec;
use cwc_core::exact;
use std::time::Instant;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let n: usize = args.get(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let secs: u64 = args.get(2).and_then(|s| s.parse().ok()).unwrap_or(60);
    let spec = CodeSpec::cwc(3, n, 3, 3).unwrap();
    let started = Instant::now();
    let r = exact::exact_a(&spec, Some(std::time::Duration::from_secs(secs)), 50_000).unwrap();
    println!("{spec}: value={} bound={} tight={} status={:?} elapsed={:?}",
        r.value, r.bound, r.tight, r.status, started.elapsed());
}
