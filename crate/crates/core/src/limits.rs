//! Process-wide resource caps.
//!
//! The word-problem memo cap lives on each [`CoxeterSystem`](crate::CoxeterSystem);
//! the caps here bound the sizes of chain complexes and chamber balls, which are
//! reached through deep call chains.

use std::sync::atomic::{AtomicUsize, Ordering};

pub const DEFAULT_MAX_CELLS: usize = 2_000_000;
pub const DEFAULT_MAX_CHAMBERS: usize = 200_000;
pub const DEFAULT_MEMO_CAP: usize = 10_000_000;

static MAX_CELLS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_CELLS);
static MAX_CHAMBERS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_CHAMBERS);

/// Largest number of simplices (summed over degrees) a chain complex may have.
pub fn max_cells() -> usize {
    MAX_CELLS.load(Ordering::Relaxed)
}

pub fn set_max_cells(cap: usize) {
    MAX_CELLS.store(cap.max(1), Ordering::Relaxed);
}

/// Largest number of group elements a Cayley ball may hold.
pub fn max_chambers() -> usize {
    MAX_CHAMBERS.load(Ordering::Relaxed)
}

pub fn set_max_chambers(cap: usize) {
    MAX_CHAMBERS.store(cap.max(1), Ordering::Relaxed);
}
