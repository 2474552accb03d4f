pub mod bench;
pub mod dedupe;
pub mod diagnose;
pub mod sweep;
pub mod synth;
pub mod validate;
