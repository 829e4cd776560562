//! Groebner trace verbosity, controlled by `DMOD_GB_TRACE` (0, 1, 2).
//! All trace output goes to stderr only.

use std::sync::OnceLock;

static LEVEL: OnceLock<u8> = OnceLock::new();

pub fn level() -> u8 {
    *LEVEL.get_or_init(|| {
        std::env::var("DMOD_GB_TRACE")
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(0)
    })
}

macro_rules! gb_trace {
    ($lvl:expr, $($arg:tt)*) => {
        if crate::trace::level() >= $lvl {
            eprintln!($($arg)*);
        }
    };
}

pub(crate) use gb_trace;
