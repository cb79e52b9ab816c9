use std::ops::Range;

use super::{Frame, FrameClass};

/// Largest world count whose relations can be indexed.
pub const MAX_ENUMERATED_WORLDS: usize = 7;

/// Number of relations on `n` labeled worlds.
pub fn relation_count(n: usize) -> u64 {
    assert!(
        (1..=MAX_ENUMERATED_WORLDS).contains(&n),
        "frame enumeration covers 1..={MAX_ENUMERATED_WORLDS} worlds"
    );
    1u64 << (n * n)
}

/// Frames on `n` worlds in class `c`, by increasing relation index.
pub fn enumerate_frames(n: usize, c: FrameClass) -> FrameIter {
    enumerate_frames_range(n, c, 0..relation_count(n))
}

/// The frames of [`enumerate_frames`] whose relation index lies in `range`.
pub fn enumerate_frames_range(n: usize, c: FrameClass, range: Range<u64>) -> FrameIter {
    let end = range.end.min(relation_count(n));
    FrameIter {
        n,
        class: c,
        next: range.start.min(end),
        end,
    }
}

#[derive(Clone, Debug)]
pub struct FrameIter {
    n: usize,
    class: FrameClass,
    next: u64,
    end: u64,
}

impl Iterator for FrameIter {
    type Item = Frame;

    fn next(&mut self) -> Option<Frame> {
        while self.next < self.end {
            let frame = Frame::from_relation_index(self.n, self.next);
            self.next += 1;
            if self.class.holds(&frame) {
                return Some(frame);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_world_counts() {
        assert_eq!(enumerate_frames(2, FrameClass::K).count(), 16);
        assert_eq!(enumerate_frames(2, FrameClass::D).count(), 9);
        assert_eq!(enumerate_frames(2, FrameClass::Four).count(), 13);
    }

    #[test]
    fn non_transitive_two_world_frames_are_the_cross_pairs() {
        // both cross arrows present and at least one loop missing
        let bad: Vec<u64> = (0..16)
            .filter(|&i| !FrameClass::Four.holds(&Frame::from_relation_index(2, i)))
            .collect();
        assert_eq!(bad.len(), 3);
        for i in bad {
            let f = Frame::from_relation_index(2, i);
            assert!(f.has_edge(0, 1) && f.has_edge(1, 0));
            assert!(!(f.has_edge(0, 0) && f.has_edge(1, 1)));
        }
    }

    #[test]
    fn serial_counts_follow_row_formula() {
        for n in 1..=3u32 {
            let expected = (2u64.pow(n) - 1).pow(n);
            assert_eq!(enumerate_frames(n as usize, FrameClass::D).count() as u64, expected);
        }
    }

    #[test]
    fn ranges_partition() {
        let whole: Vec<Frame> = enumerate_frames(3, FrameClass::Four).collect();
        let mut parts = Vec::new();
        for k in 0..8u64 {
            parts.extend(enumerate_frames_range(3, FrameClass::Four, k * 64..(k + 1) * 64));
        }
        assert_eq!(whole, parts);
    }
}
