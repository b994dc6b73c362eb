//! The standard test corpus: small standard modules and K-types.

use crate::compactrep::{labels_up_to, CompactGroup, IrrepLabel};
use crate::glstd::{Block, StandardModule};

/// `GL_1` blocks `sgn^0`, `sgn^1`.
pub fn gl1_blocks() -> Vec<Block> {
    vec![Block::gl1(0), Block::gl1(1)]
}

/// Finite-dimensional blocks with `a - b ≤ max_d`, `b ∈ b_range`.
pub fn fd_blocks(max_d: i32, b_range: std::ops::RangeInclusive<i32>) -> Vec<Block> {
    let mut out = Vec::new();
    for b in b_range {
        for d in 0..=max_d {
            out.push(Block::fd(b + d, b).expect("a ≥ b"));
        }
    }
    out
}

pub fn principal_blocks() -> Vec<Block> {
    let mut out = Vec::new();
    for e1 in 0..2 {
        for e2 in 0..2 {
            out.push(Block::ps(e1, e2));
        }
    }
    out
}

/// Every valid discrete series whose finite-dimensional quotient is in `fds`.
pub fn discrete_blocks(fds: &[Block]) -> Vec<Block> {
    let mut out = Vec::new();
    for f in fds {
        if let Block::GL2(crate::glstd::GL2Block::FiniteDim { a, b }) = f {
            for (e1, e2) in [(a.rem_euclid(2), b.rem_euclid(2)), (b.rem_euclid(2), a.rem_euclid(2))] {
                let blk = Block::ds(e1 as u8, e2 as u8, *a, *b).expect("compatible signs");
                if !out.contains(&blk) {
                    out.push(blk);
                }
            }
        }
    }
    out
}

/// Blocks of the main corpus: `sgn^eps`, `F(a,b)` with `a - b ≤ 2`, and the four
/// principal series. `det^b` only matters through the parity of `b` on `O(2)`,
/// so `b ∈ {0, 1}`.
pub fn main_blocks() -> (Vec<Block>, Vec<Block>) {
    let mut gl2 = fd_blocks(2, 0..=1);
    gl2.extend(principal_blocks());
    (gl1_blocks(), gl2)
}

/// All ordered compositions of `n` into parts 1 and 2.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in [1, 2] {
        if first <= n {
            for mut rest in compositions(n - first) {
                rest.insert(0, first);
                out.push(rest);
            }
        }
    }
    out
}

/// Every standard module of size `n` with blocks from the given lists.
pub fn modules(n: usize, gl1: &[Block], gl2: &[Block]) -> Vec<StandardModule> {
    let mut out = Vec::new();
    for shape in compositions(n) {
        let mut acc: Vec<Vec<Block>> = vec![vec![]];
        for size in shape {
            let choices = if size == 1 { gl1 } else { gl2 };
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |b| {
                        let mut v = prefix.clone();
                        v.push(b.clone());
                        v
                    })
                })
                .collect();
        }
        out.extend(acc.into_iter().map(|blocks| StandardModule::new(n, blocks).expect("sizes add up")));
    }
    out
}

pub fn main_modules(n: usize) -> Vec<StandardModule> {
    let (gl1, gl2) = main_blocks();
    modules(n, &gl1, &gl2)
}

/// O(n)-types with `λ_1 ≤ max_first`.
pub fn o_types(n: usize, max_first: i32) -> Vec<IrrepLabel> {
    labels_up_to(CompactGroup::o(n), max_first)
}

/// SO(n)-types with `|λ_1| ≤ max_first`.
pub fn so_types(n: usize, max_first: i32) -> Vec<IrrepLabel> {
    labels_up_to(CompactGroup::so(n), max_first)
}
