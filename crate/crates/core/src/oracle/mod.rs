//! K-type multiplicities by Frobenius reciprocity, independent of the germ
//! machinery.
//!
//! For `π = Ind_P^G(τ_1 ⊗ τ_2)` with `P` the parabolic of block sizes `(n', n'')`,
//! the Iwasawa decomposition `G = PK` gives `π|_K = Ind_{K∩M}^K(τ|_{K∩M})` with
//! `K ∩ M = O(n') × O(n'')`, hence
//! `m(π, ω) = Σ_{α'⊗α''} [ω|_{O(n')×O(n'')} : α'⊗α''] · m(τ_1, α') · m(τ_2, α'')`.
//!
//! Base cases on `GL_1` and `GL_2`:
//!
//! * `GL_1`: `sgn^eps` restricted to `O(1) = {±1}` is `sgn^eps`.
//! * `Sym^d ⊗ det^b` on `O(2)`: its SO(2)-weights are `d, d-2, .., -d`, read off the
//!   `U(2)` character at `diag(z, z^{-1})`. Each pair `±m`, `m > 0`, is the 2-dimensional
//!   `O(2)`-irrep of weight `m`. For even `d` the weight 0 line carries the trace at
//!   `diag(1,-1)`, which is `(-1)^b`: trivial for even `b`, `det` for odd `b`.
//! * Principal series `I(χ_1, χ_2)`: `π|_{O(2)} = Ind_{T∩K}^{O(2)}(χ_1⊗χ_2)` with
//!   `T ∩ K = {diag(±1, ±1)}`. The weight-`m` irrep (`m > 0`) restricts to
//!   `T∩K` as the two characters with value `(-1)^m` at `-I`, so it occurs once iff
//!   `m ≡ eps_1 + eps_2 (mod 2)`. On weight 0, `χ_1 ⊗ χ_2` takes the values
//!   `(-1)^{eps_2}` and `(-1)^{eps_1}` at `diag(1,-1)` and `diag(-1,1)`: the trivial
//!   O(2)-type occurs iff `eps = (0,0)`, `det` iff `eps = (1,1)`, neither otherwise.

mod branch;

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

pub use crate::compactrep::weight_multiplicity;
pub use branch::{branch_multiplicity_by_integral, branch_o_to_oo, decompose_so_pair, Branching};

use crate::compactrep::{o_irreps_from_so, weyl_character, Family, IrrepLabel, OSign};
use crate::error::{Error, Result};
use crate::exactalg::{as_i64, SignedMonomial, Substitution};
use crate::glstd::{Block, GL1Char, GL2Block, StandardModule, VirtualRep};

/// Where the recursion cuts a module with several blocks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Split {
    First,
    Last,
}

fn o2_weight(label: &IrrepLabel) -> i32 {
    label.lambda[0]
}

fn gl1_base(c: &GL1Char, omega: &IrrepLabel) -> i64 {
    let delta = match omega.o_sign {
        Some(OSign::Minus) => 1,
        _ => 0,
    };
    (c.eps == delta) as i64
}

/// SO(2)-weights of `Sym^{a-b} ⊗ det^b` and its trace at `diag(1,-1)`.
fn fd_restriction(a: i32, b: i32) -> Result<(Vec<i32>, i64)> {
    let ch = weyl_character(&IrrepLabel::u(&[a, b])?)?;
    let to_so2 = Substitution::new(
        1,
        vec![SignedMonomial::var(1, 0, false), SignedMonomial { negative: false, exps: [-1].into_iter().collect() }],
    );
    let on_torus = ch.specialize(&to_so2)?;
    let mut weights = Vec::new();
    for (e, c) in on_torus.terms() {
        let c = as_i64(c).ok_or_else(|| Error::NonIntegral(c.to_string()))?;
        weights.extend(std::iter::repeat(e[0]).take(c as usize));
    }
    let refl = Substitution::new(0, vec![SignedMonomial::constant(0, false), SignedMonomial::constant(0, true)]);
    let trace = ch.specialize(&refl)?.constant_term();
    Ok((weights, as_i64(&trace).ok_or_else(|| Error::NonIntegral(trace.to_string()))?))
}

fn gl2_base(block: &GL2Block, omega: &IrrepLabel) -> Result<i64> {
    let m = o2_weight(omega);
    Ok(match block {
        GL2Block::FiniteDim { a, b } => {
            let (weights, trace) = fd_restriction(*a, *b)?;
            if m > 0 {
                weights.iter().filter(|w| **w == m).count() as i64
            } else if !weights.contains(&0) {
                0
            } else {
                let want = if trace > 0 { OSign::Plus } else { OSign::Minus };
                (omega.o_sign == Some(want)) as i64
            }
        }
        GL2Block::Principal(c1, c2) => {
            let parity = (c1.eps + c2.eps) as i32 % 2;
            if m > 0 {
                (m % 2 == parity) as i64
            } else {
                match (c1.eps, c2.eps, omega.o_sign) {
                    (0, 0, Some(OSign::Plus)) | (1, 1, Some(OSign::Minus)) => 1,
                    _ => 0,
                }
            }
        }
        GL2Block::Discrete(c1, c2, a, b) => {
            gl2_base(&GL2Block::Principal(c1.clone(), c2.clone()), omega)?
                - gl2_base(&GL2Block::FiniteDim { a: *a, b: *b }, omega)?
        }
    })
}

type MemoKey = (Vec<Block>, IrrepLabel, Split);

fn memo() -> &'static RwLock<HashMap<MemoKey, i64>> {
    static MEMO: OnceLock<RwLock<HashMap<MemoKey, i64>>> = OnceLock::new();
    MEMO.get_or_init(|| RwLock::new(HashMap::new()))
}

fn check_label(pi_n: usize, omega: &IrrepLabel) -> Result<()> {
    if omega.group.family != Family::O || omega.group.n != pi_n {
        return Err(Error::SizeMismatch(format!("K-type {omega} for a module of size {pi_n}")));
    }
    Ok(())
}

/// `dim Hom_{O(n)}(π, ω)` for a standard module.
pub fn multiplicity_module(pi: &StandardModule, omega: &IrrepLabel, split: Split) -> Result<i64> {
    check_label(pi.n, omega)?;
    if pi.blocks.len() == 1 {
        return match &pi.blocks[0] {
            Block::GL1(c) => Ok(gl1_base(c, omega)),
            Block::GL2(b) => gl2_base(b, omega),
        };
    }
    let key = (pi.blocks.clone(), omega.clone(), split);
    if let Some(v) = memo().read().unwrap().get(&key) {
        return Ok(*v);
    }
    let cut = match split {
        Split::First => 1,
        Split::Last => pi.blocks.len() - 1,
    };
    let (head, tail) = pi.split_at(cut);
    let mut acc = 0;
    for ((a1, a2), c) in branch_o_to_oo(omega, head.n, tail.n)?.iter() {
        let m1 = multiplicity_module(&head, a1, split)?;
        if m1 == 0 {
            continue;
        }
        acc += *c as i64 * m1 * multiplicity_module(&tail, a2, split)?;
    }
    memo().write().unwrap().insert(key, acc);
    Ok(acc)
}

/// Linear extension to virtual representations; the cut is at the first block.
pub fn multiplicity(pi: &VirtualRep, omega: &IrrepLabel) -> Result<i64> {
    pi.check()?;
    let mut acc = 0;
    for t in &pi.terms {
        acc += t.coeff * multiplicity_module(&t.module, omega, Split::First)?;
    }
    Ok(acc)
}

/// `dim Hom_{SO(n)}(π, ω)` from the O(n)-types over the ε-orbit of `ω`.
pub fn multiplicity_so(pi: &VirtualRep, omega: &IrrepLabel) -> Result<i64> {
    if omega.group.family != Family::SO {
        return Err(Error::InvalidLabel(format!("{omega}: expected an SO(n) label")));
    }
    let mut acc = 0;
    for o in o_irreps_from_so(omega)? {
        acc += multiplicity(pi, &o)?;
    }
    Ok(acc)
}
