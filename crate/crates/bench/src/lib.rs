//! Benchmark-only crate; see `benches/engine.rs`.

/// Elements used by the benchmark sweeps.
pub fn sweep_elements(mode: hecke_core::Mode, max_length: u64) -> Vec<hecke_core::ExtAffineElt> {
    hecke_core::enumerate_elements(mode, max_length)
}
