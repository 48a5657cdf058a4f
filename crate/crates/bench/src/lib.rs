//! Benchmark inputs shared by the criterion targets.

use biortho_core::{c64, Params};

/// The two parameter pairs used throughout the checks.
pub fn pairs() -> [Params; 2] {
    [
        Params::new(c64(1.0, 0.0), c64(0.25, 0.0)),
        Params::new(c64(0.75, 0.0), c64(0.0, 0.6)),
    ]
}
