use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Player};

/// Search instrumentation shared by every engine.
///
/// `node_expansions` counts nodes of the recursion tree, i.e. every
/// position the search asked for, including ones answered from the memo.
/// `distinct_keys` is the number of distinct canonical keys seen.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    pub node_expansions: u64,
    pub memo_hits: u64,
    pub distinct_keys: u64,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub winner: Player,
    /// Present exactly when the player to move wins.
    pub winning_move: Option<Edge>,
    pub stats: SearchStats,
}

/// Sprague–Grundy value of an impartial position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Grundy(pub u32);

impl Grundy {
    pub fn mover_wins(self) -> bool {
        self.0 != 0
    }
}

impl std::ops::BitXor for Grundy {
    type Output = Grundy;

    fn bitxor(self, rhs: Grundy) -> Grundy {
        Grundy(self.0 ^ rhs.0)
    }
}

/// Minimum excluded value.
pub fn mex(values: impl IntoIterator<Item = u32>) -> u32 {
    let mut seen: Vec<bool> = Vec::new();
    for v in values {
        let v = v as usize;
        if v >= seen.len() {
            seen.resize(v + 1, false);
        }
        seen[v] = true;
    }
    seen.iter().position(|&s| !s).unwrap_or(seen.len()) as u32
}
