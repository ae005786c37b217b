use std::ops::Range;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A contiguous run of qubits holding one code block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Block {
    pub start: usize,
    pub len: usize,
}

impl Block {
    pub fn new(start: usize, len: usize) -> Self {
        Self { start, len }
    }

    pub fn qubits(&self) -> Range<usize> {
        self.start..self.start + self.len
    }

    /// Physical index of the block's `i`-th qubit.
    pub fn qubit(&self, i: usize) -> usize {
        debug_assert!(i < self.len);
        self.start + i
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn overlaps(&self, other: &Block) -> bool {
        self.start < other.end() && other.start < self.end()
    }

    /// Basis-index mask of the block's qubits.
    pub fn mask(&self) -> u64 {
        (if self.len == 64 { u64::MAX } else { (1u64 << self.len) - 1 }) << self.start
    }

    /// The block's bits of basis index `key`, qubit `start` as bit 0.
    pub fn word(&self, key: u64) -> u64 {
        (key & self.mask()) >> self.start
    }

    /// The block after removing `removed` qubits lying below it.
    pub fn shifted_down(&self, removed: &[usize]) -> Block {
        let below = removed.iter().filter(|&&q| q < self.start).count();
        Block::new(self.start - below, self.len)
    }
}

/// Named, disjoint blocks within one register.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct BlockLayout {
    blocks: Vec<(String, Block)>,
}

impl BlockLayout {
    pub fn new() -> Self {
        Self::default()
    }

    /// Lays out `count` consecutive blocks of `len` qubits starting at qubit 0.
    pub fn consecutive(names: &[&str], len: usize) -> Self {
        Self {
            blocks: names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.to_string(), Block::new(i * len, len)))
                .collect(),
        }
    }

    pub fn insert(&mut self, name: impl Into<String>, block: Block) -> Result<()> {
        let name = name.into();
        if self.get(&name).is_some() {
            return invalid(format!("block '{name}' already declared"));
        }
        if let Some((other, _)) = self.blocks.iter().find(|(_, b)| b.overlaps(&block)) {
            return invalid(format!("block '{name}' overlaps '{other}'"));
        }
        self.blocks.push((name, block));
        Ok(())
    }

    /// Appends a block right after the highest declared qubit.
    pub fn push(&mut self, name: impl Into<String>, len: usize) -> Result<Block> {
        let block = Block::new(self.num_qubits(), len);
        self.insert(name, block)?;
        Ok(block)
    }

    pub fn get(&self, name: &str) -> Option<Block> {
        self.blocks.iter().find(|(n, _)| n == name).map(|(_, b)| *b)
    }

    pub fn block(&self, name: &str) -> Result<Block> {
        self.get(name)
            .ok_or_else(|| crate::Error::InvalidArgument(format!("no block named '{name}'")))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, Block)> {
        self.blocks.iter().map(|(n, b)| (n.as_str(), *b))
    }

    /// One past the highest declared qubit.
    pub fn num_qubits(&self) -> usize {
        self.blocks.iter().map(|(_, b)| b.end()).max().unwrap_or(0)
    }

    pub fn mask(&self) -> u64 {
        self.blocks.iter().fold(0, |m, (_, b)| m | b.mask())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_overlap_and_duplicates() {
        let mut l = BlockLayout::consecutive(&["a", "b"], 7);
        assert_eq!(l.block("b").unwrap(), Block::new(7, 7));
        assert!(l.insert("c", Block::new(13, 7)).is_err());
        assert!(l.insert("a", Block::new(30, 7)).is_err());
        assert_eq!(l.push("c", 7).unwrap(), Block::new(14, 7));
        assert_eq!(l.mask(), (1 << 21) - 1);
        assert!(l.block("zz").is_err());
    }

    #[test]
    fn words_and_shifts() {
        let b = Block::new(3, 4);
        assert_eq!(b.word(0b101_0111), 0b1010);
        assert_eq!(b.shifted_down(&[0, 1, 9]), Block::new(1, 4));
    }
}
