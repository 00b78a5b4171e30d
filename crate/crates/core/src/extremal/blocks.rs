//! Nested block words built from two base blocks `(x, b)` and `(x+1, b)`.
//!
//! Each level has two blocks that differ only in how often the dominant
//! block of the previous level is repeated, and a tail that every block of
//! the level ends with.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::quotients::QuotientSeq;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockLevel {
    pub level: usize,
    pub blocks: [QuotientSeq; 2],
    pub tail: QuotientSeq,
}

impl BlockLevel {
    /// Level 0: blocks `(x, b)` and `(x+1, b)` with tail `(b)`.
    pub fn base(x: u64, b: u64) -> Result<Self> {
        let blocks = [QuotientSeq::new(vec![x, b])?, QuotientSeq::new(vec![x + 1, b])?];
        Ok(BlockLevel { level: 0, blocks, tail: QuotientSeq::new(vec![b])? })
    }

    /// Next level with `count` and `count + 1` copies of block `dominant`,
    /// each followed by one copy of the other block.
    pub fn next(&self, dominant: usize, count: usize) -> Result<Self> {
        if dominant > 1 || count == 0 {
            return Err(Error::OutOfRange(format!("dominant block {dominant} with count {count}")));
        }
        let dom = &self.blocks[dominant];
        let sub = &self.blocks[1 - dominant];
        let make = |c: usize| QuotientSeq::concat([&dom.repeat(c), sub]);
        Ok(BlockLevel {
            level: self.level + 1,
            blocks: [make(count), make(count + 1)],
            tail: QuotientSeq::concat([&self.tail, sub]),
        })
    }

    /// The block with its trailing copy of the tail removed.
    pub fn strip_tail(&self, i: usize) -> Option<QuotientSeq> {
        let block = self.blocks.get(i)?;
        let cut = block.len().checked_sub(self.tail.len())?;
        (block[cut..] == self.tail[..]).then(|| QuotientSeq::from_vec_unchecked(block[..cut].to_vec()))
    }
}
