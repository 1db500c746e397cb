//! Rigorous numerics: exact dyadics, directed-rounding intervals, and
//! rectangular complex intervals.

mod complex;
mod dyadic;
mod interval;

pub use complex::CIv;
pub use dyadic::{Dyadic, Round};
pub use interval::{ln2, Iv, Prec};

/// Default working precision (bits) used when callers do not override it.
pub const DEFAULT_PREC: Prec = 128;

/// Hard ceiling for precision-doubling loops before an operation reports
/// an undecided verdict instead of looping further.
pub const MAX_PREC: Prec = 4096;
