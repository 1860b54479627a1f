//! Shared inputs for the benchmark harness.

/// Orders and arguments covering the oscillatory, transient and decaying regions.
pub fn hermite_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 0..8 {
        let nu = 0.37 + 1.41 * i as f64;
        for j in 0..7 {
            out.push((nu, -6.0 + 2.0 * j as f64));
        }
    }
    out
}
