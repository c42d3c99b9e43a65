use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};

/// Unprocessed middle segment of the edge ordering.
///
/// Both ends live in one atomic word (`front << 32 | back`), so a take from
/// either side is a single compare-and-swap and no position is handed out twice.
#[derive(Debug)]
pub struct MiddleDeque {
    state: AtomicU64,
}

#[inline]
fn pack(front: u32, back: u32) -> u64 {
    ((front as u64) << 32) | back as u64
}

#[inline]
fn unpack(s: u64) -> (u32, u32) {
    ((s >> 32) as u32, s as u32)
}

impl MiddleDeque {
    /// Panics if `range.end` does not fit in 32 bits.
    pub fn new(range: Range<usize>) -> Self {
        let front = u32::try_from(range.start).expect("position exceeds u32");
        let back = u32::try_from(range.end).expect("position exceeds u32");
        Self { state: AtomicU64::new(pack(front, back.max(front))) }
    }

    pub fn len(&self) -> usize {
        let (f, b) = unpack(self.state.load(Ordering::Acquire));
        (b - f) as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Removes up to `k` positions from the front.
    pub fn take_front(&self, k: usize) -> Option<Range<usize>> {
        self.take(k, true)
    }

    /// Removes up to `k` positions from the back.
    pub fn take_back(&self, k: usize) -> Option<Range<usize>> {
        self.take(k, false)
    }

    fn take(&self, k: usize, front_side: bool) -> Option<Range<usize>> {
        let mut cur = self.state.load(Ordering::Acquire);
        loop {
            let (f, b) = unpack(cur);
            if f >= b || k == 0 {
                return None;
            }
            let n = (b - f).min(k.min(u32::MAX as usize) as u32);
            let (next, got) = if front_side {
                (pack(f + n, b), f..f + n)
            } else {
                (pack(f, b - n), b - n..b)
            };
            match self.state.compare_exchange_weak(cur, next, Ordering::AcqRel, Ordering::Acquire) {
                Ok(_) => return Some(got.start as usize..got.end as usize),
                Err(actual) => cur = actual,
            }
        }
    }
}
