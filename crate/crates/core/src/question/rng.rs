//! Random decisions for question construction.
//!
//! Every question slot gets its own ChaCha stream keyed by
//! `SHA-256(seed, scope, slot)`, so a slot's output never depends on which
//! worker produced it or in what order.

use std::collections::VecDeque;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

/// Source of the discrete choices made while building questions.
pub trait DecisionSource {
    /// Uniform index in `0..n`. `n` must be positive.
    fn pick(&mut self, n: usize) -> usize;
    /// `true` with probability `p`.
    fn chance(&mut self, p: f64) -> bool;
    /// Index drawn proportionally to non-negative `weights` (positive sum).
    fn pick_weighted(&mut self, weights: &[f64]) -> usize;
}

#[derive(Debug, Clone)]
pub struct KeyedStream(ChaCha8Rng);

impl KeyedStream {
    pub fn new(seed: u64, scope: &str, slot: u64) -> Self {
        let mut h = Sha256::new();
        h.update(seed.to_le_bytes());
        h.update((scope.len() as u64).to_le_bytes());
        h.update(scope.as_bytes());
        h.update(slot.to_le_bytes());
        Self(ChaCha8Rng::from_seed(h.finalize().into()))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform float in [0, 1) from the top 53 bits.
    fn unit(&mut self) -> f64 {
        (self.0.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }
}

impl DecisionSource for KeyedStream {
    fn pick(&mut self, n: usize) -> usize {
        assert!(n > 0, "pick from an empty range");
        self.0.random_range(0..n as u64) as usize
    }

    fn chance(&mut self, p: f64) -> bool {
        self.unit() < p
    }

    fn pick_weighted(&mut self, weights: &[f64]) -> usize {
        let total: f64 = weights.iter().sum();
        assert!(total > 0.0, "weights must have a positive sum");
        let mut u = self.unit() * total;
        let mut last = 0;
        for (i, &w) in weights.iter().enumerate() {
            if w <= 0.0 {
                continue;
            }
            last = i;
            if u < w {
                return i;
            }
            u -= w;
        }
        last
    }
}

/// One scripted decision.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Step {
    Pick(usize),
    Chance(bool),
}

/// Replays a fixed decision sequence; panics when the sequence does not fit
/// the calls made. Used to force specific construction paths in tests.
#[derive(Debug, Clone, Default)]
pub struct ScriptedStream {
    steps: VecDeque<Step>,
}

impl ScriptedStream {
    pub fn new(steps: impl IntoIterator<Item = Step>) -> Self {
        Self {
            steps: steps.into_iter().collect(),
        }
    }

    pub fn is_exhausted(&self) -> bool {
        self.steps.is_empty()
    }

    fn next(&mut self) -> Step {
        self.steps.pop_front().expect("scripted stream exhausted")
    }
}

impl DecisionSource for ScriptedStream {
    fn pick(&mut self, n: usize) -> usize {
        match self.next() {
            Step::Pick(i) if i < n => i,
            other => panic!("expected a pick below {n}, script has {other:?}"),
        }
    }

    fn chance(&mut self, _p: f64) -> bool {
        match self.next() {
            Step::Chance(b) => b,
            other => panic!("expected a chance, script has {other:?}"),
        }
    }

    fn pick_weighted(&mut self, weights: &[f64]) -> usize {
        let i = self.pick(weights.len());
        assert!(weights[i] > 0.0, "scripted pick of a zero-weight option");
        i
    }
}
