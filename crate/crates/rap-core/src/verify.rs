//! Opt-in verification mode.
//!
//! Setting `RAP_VERIFY=1` enables dual-method cross-checks of the
//! Lobachevskii function and re-verification of admissibility after every
//! constructive operation.

use std::sync::OnceLock;

pub fn enabled() -> bool {
    static FLAG: OnceLock<bool> = OnceLock::new();
    *FLAG.get_or_init(|| std::env::var("RAP_VERIFY").is_ok_and(|v| v == "1"))
}
