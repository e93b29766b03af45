//! Summarising multivariate event sequences with multivariate sequential patterns.
//!
//! A database of aligned categorical sequences is described by a code table of patterns.
//! Patterns are ordered lists of partial multi-events whose occurrences may span several
//! attributes and contain gaps. The best table is the one minimising the total encoded
//! length `L(CT | C) + L(D | CT)`; [`search::mine`] approximates it greedily. [`synth`] plants patterns in random data and [`eval`] scores what was found.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod codetable;
pub mod cover;
pub mod encode;
pub mod error;
pub mod eval;
pub mod search;
pub mod streams;
pub mod synth;
pub mod types;
pub mod window;

pub use codetable::{total_len, CodeTable, UsageStats};
pub use cover::{cover, cover_order, Cover, CoverElement};
pub use encode::{EncodedSize, StandardTable};
pub use error::{Error, Result};
pub use eval::{compression_gain, evaluate, match_patterns, recovery_ratio, RecoveryReport};
pub use search::{ditto, mine, mine_with, MineResult, Miner, MinerConfig, Observer, SearchEvent};
pub use synth::{generate_synthetic, GroundTruth, PlantSpec};
pub use streams::{decode_streams, encode_streams, CodeStreams, GapCode};
pub use types::{pattern_stats, Alphabet, Database, Event, MultiSeq, Occurrence, Pattern};
pub use window::{find_minimal_windows, find_usable_windows, support};
