//! Memoized evaluation of `f_B` / `f_W` shared by the mask-based engines.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;
use std::time::Instant;

use crate::board::{bit, Mask};
use crate::graph::{Edge, Player};
use crate::outcome::{Outcome, SearchStats};

/// What an engine contributes: a position key and the candidate moves.
pub(crate) trait Game {
    type Key: Hash + Eq;

    fn key(&self, alive: Mask, turn: Player) -> Self::Key;

    /// Candidate moves for `turn`, sorted.
    fn candidates(&self, alive: Mask, turn: Player) -> Vec<Edge>;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    /// Memo table plus OR short-circuit.
    Memo,
    /// Memo table, every child of a fresh node evaluated.
    MemoFull,
    /// No memo and no short-circuit; keys are only collected for stats.
    Plain,
}

pub(crate) struct Search<'a, G: Game> {
    game: &'a G,
    mode: Mode,
    memo: HashMap<G::Key, bool>,
    seen: HashSet<G::Key>,
    stats: SearchStats,
}

impl<'a, G: Game> Search<'a, G> {
    pub(crate) fn new(game: &'a G, mode: Mode) -> Self {
        Search {
            game,
            mode,
            memo: HashMap::new(),
            seen: HashSet::new(),
            stats: SearchStats::default(),
        }
    }

    fn short_circuit(&self) -> bool {
        self.mode == Mode::Memo
    }

    /// Whether the mover wins from `alive`.
    fn eval(&mut self, alive: Mask, turn: Player) -> bool {
        self.stats.node_expansions += 1;
        let key = self.game.key(alive, turn);
        if self.mode == Mode::Plain {
            self.seen.insert(key);
            return self.children(alive, turn).is_some();
        }
        if let Some(&w) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return w;
        }
        let win = self.children(alive, turn).is_some();
        self.memo.insert(key, win);
        win
    }

    /// First winning candidate, evaluating the rest too unless short-circuiting.
    fn children(&mut self, alive: Mask, turn: Player) -> Option<Edge> {
        let mut best = None;
        for e in self.game.candidates(alive, turn) {
            if best.is_some() && self.short_circuit() {
                break;
            }
            let child = alive & !bit(e.u) & !bit(e.v);
            if !self.eval(child, turn.opponent()) && best.is_none() {
                best = Some(e);
            }
        }
        best
    }

    pub(crate) fn run(mut self, alive: Mask, turn: Player) -> Outcome {
        let start = Instant::now();
        self.stats.node_expansions += 1;
        let key = self.game.key(alive, turn);
        let winning_move = self.children(alive, turn);
        if self.mode == Mode::Plain {
            self.seen.insert(key);
        } else {
            self.memo.insert(key, winning_move.is_some());
        }
        self.stats.distinct_keys = match self.mode {
            Mode::Plain => self.seen.len(),
            _ => self.memo.len(),
        } as u64;
        self.stats.elapsed = start.elapsed();
        Outcome {
            winner: if winning_move.is_some() { turn } else { turn.opponent() },
            winning_move,
            stats: self.stats,
        }
    }
}
