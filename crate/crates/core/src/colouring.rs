//! Greedy sequential colouring used as both branching order and bound.
//!
//! Vertices are coloured in ascending index order. Each colour class is
//! grown by repeatedly taking the lowest remaining vertex and striking its
//! neighbours out of the colourable set, one word at a time.

use crate::bitset::Bitset;
use crate::graph::Graph;

/// Vertices in the order they were coloured, and the number of colours in
/// use when each was coloured.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ColourResult {
    pub order: Vec<usize>,
    pub bounds: Vec<u32>,
}

/// Colours `p` greedily. The first `i + 1` entries of `order` can be
/// coloured with `bounds[i]` colours, so no clique among them is larger.
pub fn colour_order(g: &Graph, p: &Bitset) -> ColourResult {
    let mut scratch = ColourScratch::new(g.n());
    let mut result = ColourResult::default();
    scratch.colour(g, p, &mut result.order, &mut result.bounds);
    result
}

/// Reusable buffers for [`colour_order`] in a hot loop.
#[derive(Debug, Clone, Default)]
pub struct ColourScratch {
    uncoloured: Bitset,
    colourable: Bitset,
}

impl ColourScratch {
    pub fn new(n: usize) -> Self {
        ColourScratch {
            uncoloured: Bitset::new(n),
            colourable: Bitset::new(n),
        }
    }

    /// Writes the colouring of `p` into `order` and `bounds`, replacing
    /// their contents.
    pub fn colour(&mut self, g: &Graph, p: &Bitset, order: &mut Vec<usize>, bounds: &mut Vec<u32>) {
        order.clear();
        bounds.clear();
        if self.uncoloured.len() != p.len() {
            *self = ColourScratch::new(p.len());
        }
        self.uncoloured.copy_from(p);
        let mut remaining = p.count();
        let mut colour = 0u32;
        // Words below `start` are known to be zero in `uncoloured`.
        let mut start = 0;
        while remaining > 0 {
            colour += 1;
            self.colourable.copy_from(&self.uncoloured);
            let words = self.colourable.words().len();
            let mut k = start;
            while k < words {
                let word = self.colourable.words()[k];
                if word == 0 {
                    k += 1;
                    continue;
                }
                let v = k * 64 + word.trailing_zeros() as usize;
                order.push(v);
                bounds.push(colour);
                remaining -= 1;
                self.uncoloured.words_mut()[k] &= !(1u64 << (v % 64));
                let row = g.neighbours(v).words();
                let colourable = self.colourable.words_mut();
                colourable[k] &= !(1u64 << (v % 64));
                // Lower words of `colourable` are already empty.
                for j in k..words {
                    colourable[j] &= !row[j];
                }
            }
            while start < words && self.uncoloured.words()[start] == 0 {
                start += 1;
            }
        }
    }
}
