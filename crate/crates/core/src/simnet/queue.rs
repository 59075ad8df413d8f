use std::cmp::Ordering;
use std::collections::BinaryHeap;

struct Scheduled<E> {
    tick: u64,
    seq: u64,
    event: E,
}

impl<E> PartialEq for Scheduled<E> {
    fn eq(&self, other: &Self) -> bool {
        (self.tick, self.seq) == (other.tick, other.seq)
    }
}

impl<E> Eq for Scheduled<E> {}

impl<E> PartialOrd for Scheduled<E> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<E> Ord for Scheduled<E> {
    // Reversed so the max-heap pops the earliest (tick, seq) first.
    fn cmp(&self, other: &Self) -> Ordering {
        (other.tick, other.seq).cmp(&(self.tick, self.seq))
    }
}

/// Events ordered by `(tick, seq)`, `seq` being a counter assigned at
/// insertion. The same counter numbers events that are never queued, so one
/// sequence covers the whole trace.
pub struct EventQueue<E> {
    heap: BinaryHeap<Scheduled<E>>,
    next_seq: u64,
}

impl<E> Default for EventQueue<E> {
    fn default() -> Self {
        EventQueue {
            heap: BinaryHeap::new(),
            next_seq: 0,
        }
    }
}

impl<E> EventQueue<E> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Takes the next sequence number without queueing anything.
    pub fn bump(&mut self) -> u64 {
        let s = self.next_seq;
        self.next_seq += 1;
        s
    }

    pub fn push(&mut self, tick: u64, event: E) -> u64 {
        let seq = self.bump();
        self.heap.push(Scheduled { tick, seq, event });
        seq
    }

    /// Pops the earliest event if it is due at or before `until`.
    pub fn pop_due(&mut self, until: u64) -> Option<(u64, u64, E)> {
        if self.heap.peek()?.tick > until {
            return None;
        }
        self.heap.pop().map(|s| (s.tick, s.seq, s.event))
    }

    pub fn pop(&mut self) -> Option<(u64, u64, E)> {
        self.heap.pop().map(|s| (s.tick, s.seq, s.event))
    }

    pub fn len(&self) -> usize {
        self.heap.len()
    }

    pub fn is_empty(&self) -> bool {
        self.heap.is_empty()
    }
}
