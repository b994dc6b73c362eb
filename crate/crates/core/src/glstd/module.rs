use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{serde_rat, Rat};

/// The character `t ↦ sgn(t)^eps |t|^s` of `GL_1(ℝ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GL1Char {
    pub eps: u8,
    pub s: Rat,
}

impl GL1Char {
    pub fn new(eps: u8, s: Rat) -> Result<Self> {
        if eps > 1 {
            return Err(Error::InvalidLabel(format!("GL1 sign exponent {eps} not in {{0,1}}")));
        }
        Ok(GL1Char { eps, s })
    }

    pub fn sign(eps: u8) -> Self {
        GL1Char { eps: eps & 1, s: Rat::from_integer(0.into()) }
    }

    /// Value at `±1`; `|±1|^s = 1`.
    pub fn at_sign(&self, negative: bool) -> i64 {
        if negative && self.eps == 1 {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GL2Block {
    /// `Sym^{a-b}(ℂ²) ⊗ det^b`.
    FiniteDim { a: i32, b: i32 },
    /// Normalized induction of `χ_1 ⊗ χ_2` from the Borel subgroup.
    Principal(GL1Char, GL1Char),
    /// The discrete series `[Principal(χ_1, χ_2)] - [FiniteDim(a, b)]`.
    Discrete(GL1Char, GL1Char, i32, i32),
}

impl GL2Block {
    pub fn finite_dim(a: i32, b: i32) -> Result<Self> {
        if a < b {
            return Err(Error::InvalidLabel(format!("finite-dimensional block needs a ≥ b, got ({a},{b})")));
        }
        Ok(GL2Block::FiniteDim { a, b })
    }

    /// A discrete series exists only when the sign exponents of the inducing
    /// characters are those of the extreme weights `t_1^a t_2^b`.
    pub fn discrete(chi1: GL1Char, chi2: GL1Char, a: i32, b: i32) -> Result<Self> {
        Self::finite_dim(a, b)?;
        let mut want = [a.rem_euclid(2) as u8, b.rem_euclid(2) as u8];
        let mut have = [chi1.eps, chi2.eps];
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            return Err(Error::InvalidLabel(format!(
                "discrete series with quotient ({a},{b}) needs sign exponents {want:?}, got {have:?}"
            )));
        }
        Ok(GL2Block::Discrete(chi1, chi2, a, b))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "BlockDesc", into = "BlockDesc")]
pub enum Block {
    GL1(GL1Char),
    GL2(GL2Block),
}

impl Block {
    pub fn size(&self) -> usize {
        match self {
            Block::GL1(_) => 1,
            Block::GL2(_) => 2,
        }
    }

    pub fn gl1(eps: u8) -> Block {
        Block::GL1(GL1Char::sign(eps))
    }

    pub fn fd(a: i32, b: i32) -> Result<Block> {
        Ok(Block::GL2(GL2Block::finite_dim(a, b)?))
    }

    pub fn ps(eps1: u8, eps2: u8) -> Block {
        Block::GL2(GL2Block::Principal(GL1Char::sign(eps1), GL1Char::sign(eps2)))
    }

    pub fn ds(eps1: u8, eps2: u8, a: i32, b: i32) -> Result<Block> {
        Ok(Block::GL2(GL2Block::discrete(GL1Char::sign(eps1), GL1Char::sign(eps2), a, b)?))
    }

    /// `[Block]` as a signed sum of blocks with no discrete series.
    pub fn expand(&self) -> Vec<(i64, Block)> {
        match self {
            Block::GL2(GL2Block::Discrete(c1, c2, a, b)) => vec![
                (1, Block::GL2(GL2Block::Principal(c1.clone(), c2.clone()))),
                (-1, Block::GL2(GL2Block::FiniteDim { a: *a, b: *b })),
            ],
            other => vec![(1, other.clone())],
        }
    }
}

/// The JSON/TOML shape of a block.
#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
enum BlockDesc {
    Gl1 {
        eps: u8,
        #[serde(with = "serde_rat", default = "zero")]
        s: Rat,
    },
    Gl2fd {
        a: i32,
        b: i32,
    },
    Gl2ps {
        eps1: u8,
        #[serde(with = "serde_rat", default = "zero")]
        s1: Rat,
        eps2: u8,
        #[serde(with = "serde_rat", default = "zero")]
        s2: Rat,
    },
    Gl2ds {
        eps1: u8,
        #[serde(with = "serde_rat", default = "zero")]
        s1: Rat,
        eps2: u8,
        #[serde(with = "serde_rat", default = "zero")]
        s2: Rat,
        a: i32,
        b: i32,
    },
}

fn zero() -> Rat {
    Rat::from_integer(0.into())
}

impl TryFrom<BlockDesc> for Block {
    type Error = Error;
    fn try_from(d: BlockDesc) -> Result<Block> {
        Ok(match d {
            BlockDesc::Gl1 { eps, s } => Block::GL1(GL1Char::new(eps, s)?),
            BlockDesc::Gl2fd { a, b } => Block::fd(a, b)?,
            BlockDesc::Gl2ps { eps1, s1, eps2, s2 } => {
                Block::GL2(GL2Block::Principal(GL1Char::new(eps1, s1)?, GL1Char::new(eps2, s2)?))
            }
            BlockDesc::Gl2ds { eps1, s1, eps2, s2, a, b } => {
                Block::GL2(GL2Block::discrete(GL1Char::new(eps1, s1)?, GL1Char::new(eps2, s2)?, a, b)?)
            }
        })
    }
}

impl From<Block> for BlockDesc {
    fn from(b: Block) -> BlockDesc {
        match b {
            Block::GL1(c) => BlockDesc::Gl1 { eps: c.eps, s: c.s },
            Block::GL2(GL2Block::FiniteDim { a, b }) => BlockDesc::Gl2fd { a, b },
            Block::GL2(GL2Block::Principal(c1, c2)) => {
                BlockDesc::Gl2ps { eps1: c1.eps, s1: c1.s, eps2: c2.eps, s2: c2.s }
            }
            Block::GL2(GL2Block::Discrete(c1, c2, a, b)) => {
                BlockDesc::Gl2ds { eps1: c1.eps, s1: c1.s, eps2: c2.eps, s2: c2.s, a, b }
            }
        }
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::GL1(c) => write!(f, "sgn^{}", c.eps),
            Block::GL2(GL2Block::FiniteDim { a, b }) => write!(f, "F({a},{b})"),
            Block::GL2(GL2Block::Principal(c1, c2)) => write!(f, "P({},{})", c1.eps, c2.eps),
            Block::GL2(GL2Block::Discrete(c1, c2, a, b)) => write!(f, "D({},{};{a},{b})", c1.eps, c2.eps),
        }
    }
}

/// Normalized parabolic induction of the outer tensor product of `blocks`
/// from the block upper-triangular parabolic of `GL_n(ℝ)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ModuleDesc")]
pub struct StandardModule {
    pub n: usize,
    pub blocks: Vec<Block>,
}

#[derive(Deserialize)]
struct ModuleDesc {
    n: usize,
    blocks: Vec<Block>,
}

impl TryFrom<ModuleDesc> for StandardModule {
    type Error = Error;
    fn try_from(d: ModuleDesc) -> Result<Self> {
        StandardModule::new(d.n, d.blocks)
    }
}

impl StandardModule {
    pub fn new(n: usize, blocks: Vec<Block>) -> Result<Self> {
        let total: usize = blocks.iter().map(Block::size).sum();
        if total != n || n == 0 {
            return Err(Error::SizeMismatch(format!("block sizes sum to {total}, expected n = {n}")));
        }
        Ok(StandardModule { n, blocks })
    }

    pub fn from_blocks(blocks: Vec<Block>) -> Result<Self> {
        let n = blocks.iter().map(Block::size).sum();
        Self::new(n, blocks)
    }

    pub fn shape(&self) -> Vec<usize> {
        self.blocks.iter().map(Block::size).collect()
    }

    pub fn has_discrete(&self) -> bool {
        self.blocks.iter().any(|b| matches!(b, Block::GL2(GL2Block::Discrete(..))))
    }

    /// Signed expansion into modules without discrete-series blocks.
    pub fn expand(&self) -> Vec<(i64, StandardModule)> {
        let mut acc: Vec<(i64, Vec<Block>)> = vec![(1, Vec::new())];
        for b in &self.blocks {
            let parts = b.expand();
            acc = acc
                .into_iter()
                .flat_map(|(c, prefix)| {
                    parts.iter().map(move |(d, blk)| {
                        let mut v = prefix.clone();
                        v.push(blk.clone());
                        (c * d, v)
                    })
                })
                .collect();
        }
        acc.into_iter().map(|(c, blocks)| (c, StandardModule { n: self.n, blocks })).collect()
    }

    /// The module with the first `split` blocks and the module with the rest.
    pub fn split_at(&self, split: usize) -> (StandardModule, StandardModule) {
        let (a, b) = self.blocks.split_at(split);
        (
            StandardModule::from_blocks(a.to_vec()).expect("nonempty head"),
            StandardModule::from_blocks(b.to_vec()).expect("nonempty tail"),
        )
    }
}

impl fmt::Display for StandardModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "Ind[{}]", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualTerm {
    pub coeff: i64,
    pub module: StandardModule,
}

/// Integer combination of standard modules in the Grothendieck group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualRep {
    pub terms: Vec<VirtualTerm>,
}

impl From<StandardModule> for VirtualRep {
    fn from(m: StandardModule) -> Self {
        VirtualRep { terms: vec![VirtualTerm { coeff: 1, module: m }] }
    }
}

impl VirtualRep {
    pub fn n(&self) -> Option<usize> {
        self.terms.first().map(|t| t.module.n)
    }

    pub fn check(&self) -> Result<usize> {
        let n = self.n().ok_or_else(|| Error::SizeMismatch("empty virtual representation".into()))?;
        if self.terms.iter().any(|t| t.module.n != n) {
            return Err(Error::SizeMismatch("modules of different sizes in one virtual representation".into()));
        }
        Ok(n)
    }

    /// All coefficients nonnegative: an honest representation.
    pub fn is_genuine(&self) -> bool {
        self.terms.iter().all(|t| t.coeff >= 0)
    }

    /// Collected expansion over discrete-series-free modules, in first-seen order.
    pub fn expand(&self) -> Vec<(i64, StandardModule)> {
        let mut order: Vec<StandardModule> = Vec::new();
        let mut coeffs: BTreeMap<StandardModule, i64> = BTreeMap::new();
        for t in &self.terms {
            for (c, m) in t.module.expand() {
                let e = coeffs.entry(m.clone()).or_insert_with(|| {
                    order.push(m);
                    0
                });
                *e += c * t.coeff;
            }
        }
        order
            .into_iter()
            .filter_map(|m| {
                let c = coeffs[&m];
                (c != 0).then_some((c, m))
            })
            .collect()
    }
}
