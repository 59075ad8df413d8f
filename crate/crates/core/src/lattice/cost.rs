//! Element-visit counter used as a portable processing-cost proxy.
//!
//! Every join, order check and decomposition records how many elements it
//! touched. The counter is thread-local: a simulation run owns its thread for
//! the duration of the run, so concurrent runs never mix their counts.

use std::cell::Cell;

thread_local! {
    static VISITS: Cell<u64> = const { Cell::new(0) };
}

#[inline]
pub fn visit(n: usize) {
    VISITS.with(|v| v.set(v.get() + n as u64));
}

/// Visits recorded on this thread since the last [`reset`].
pub fn visits() -> u64 {
    VISITS.with(Cell::get)
}

pub fn reset() {
    VISITS.with(|v| v.set(0));
}

/// Runs `f` and returns its result together with the visits it recorded.
pub fn measure<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let before = visits();
    let out = f();
    (out, visits() - before)
}
