//! `Φ_π(x) = D^G(x)^{1/2} c_π(x)` at support elements.
//!
//! For `GL_n` the germ of an induced representation at `x` is the sum over the
//! `M`-classes `y` meeting the `G`-class of `x` of `Φ_τ(y)`, with no index
//! factors. The modulus `δ_P^{1/2}` is 1 at every support element because all
//! eigenvalues have absolute value 1.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::module::{Block, GL1Char, GL2Block, StandardModule, VirtualRep};
use crate::compactrep::{orthogonal_weyl_det, EigenData};
use crate::error::{Error, Result};
use crate::exactalg::{abs_cancel, rint, unit_exps, AbsFactor, AbsProduct, LaurentPoly};

/// Which compact group the support elements come from: `SO_n` uses an even
/// number of `-1` eigenvalues, `O_n` any number.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    SO,
    O,
}

/// `diag(I_{n1}, -I_m, t)` with `t` in a product of `k` rotation tori; `m = 2·n2`
/// for [`Variant::SO`] and `m = n2` for [`Variant::O`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SupportElement {
    pub variant: Variant,
    pub n1: usize,
    pub n2: usize,
    pub k: usize,
}

impl SupportElement {
    pub fn new(variant: Variant, n1: usize, n2: usize, k: usize) -> Self {
        SupportElement { variant, n1, n2, k }
    }

    pub fn minus_count(&self) -> usize {
        match self.variant {
            Variant::SO => 2 * self.n2,
            Variant::O => self.n2,
        }
    }

    pub fn n(&self) -> usize {
        self.n1 + self.minus_count() + 2 * self.k
    }

    pub fn eigen(&self) -> EigenData {
        EigenData::new(self.n1, self.minus_count(), self.k)
    }
}

impl fmt::Display for SupportElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({},{},{})", self.variant, self.n1, self.n2, self.k)
    }
}

/// Eigenvalues placed in one block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Assigned {
    Plus,
    Minus,
    PlusPlus,
    PlusMinus,
    MinusMinus,
    /// The pair `(z_j, z_j^{-1})`.
    Rotation(usize),
}

impl Assigned {
    pub fn size(&self) -> usize {
        match self {
            Assigned::Plus | Assigned::Minus => 1,
            _ => 2,
        }
    }
}

/// Representatives of the `M`-classes inside the `G`-class of `x`, for the
/// block Levi `M` of the given shape: every distribution of the eigenvalues of
/// `x` into the blocks, rotation pairs kept whole.
pub fn x_m_classes(x: &SupportElement, shape: &[usize]) -> Vec<Vec<Assigned>> {
    fn rec(
        shape: &[usize],
        plus: usize,
        minus: usize,
        rots: &mut Vec<bool>,
        cur: &mut Vec<Assigned>,
        out: &mut Vec<Vec<Assigned>>,
    ) {
        let Some((&size, rest)) = shape.split_first() else {
            if plus == 0 && minus == 0 && rots.iter().all(|u| *u) {
                out.push(cur.clone());
            }
            return;
        };
        let mut options: Vec<Assigned> = Vec::new();
        if size == 1 {
            if plus >= 1 {
                options.push(Assigned::Plus);
            }
            if minus >= 1 {
                options.push(Assigned::Minus);
            }
        } else if size == 2 {
            if plus >= 2 {
                options.push(Assigned::PlusPlus);
            }
            if plus >= 1 && minus >= 1 {
                options.push(Assigned::PlusMinus);
            }
            if minus >= 2 {
                options.push(Assigned::MinusMinus);
            }
            options.extend((0..rots.len()).filter(|j| !rots[*j]).map(Assigned::Rotation));
        }
        for a in options {
            let (dp, dm) = match a {
                Assigned::Plus => (1, 0),
                Assigned::Minus => (0, 1),
                Assigned::PlusPlus => (2, 0),
                Assigned::PlusMinus => (1, 1),
                Assigned::MinusMinus => (0, 2),
                Assigned::Rotation(_) => (0, 0),
            };
            if let Assigned::Rotation(j) = a {
                rots[j] = true;
            }
            cur.push(a);
            rec(rest, plus - dp, minus - dm, rots, cur, out);
            cur.pop();
            if let Assigned::Rotation(j) = a {
                rots[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    if shape.iter().sum::<usize>() != x.n() {
        return out;
    }
    rec(shape, x.n1, x.minus_count(), &mut vec![false; x.k], &mut Vec::new(), &mut out);
    out
}

/// One summand of `Φ`: a product of symbolic absolute values times a Laurent
/// polynomial in the rotation variables.
pub type PhiTerm = (AbsProduct, LaurentPoly);

fn gl1_value(c: &GL1Char, negative: bool) -> i64 {
    c.at_sign(negative)
}

/// Trace of `Sym^{a-b} ⊗ det^b` at `diag(1, -1)`, summed over its weights
/// `t_1^{a-i} t_2^{b+i}`.
fn fd_trace_at_reflection(a: i32, b: i32) -> i64 {
    (0..=(a - b)).map(|i| if (b + i).rem_euclid(2) == 0 { 1 } else { -1 }).sum()
}

fn fd_phi(a: i32, b: i32, y: Assigned, k: usize) -> Result<PhiTerm> {
    let zero = (AbsProduct::empty(), LaurentPoly::zero(k));
    Ok(match y {
        Assigned::Rotation(j) => {
            let d = a - b;
            let mut num = LaurentPoly::var_pow(k, j, d + 1);
            num.add_term(unit_exps(k, j, -(d + 1)), rint(-1));
            let mut den = LaurentPoly::var_pow(k, j, 1);
            den.add_term(unit_exps(k, j, -1), rint(-1));
            let abs = AbsProduct::from_factors(AbsFactor::mu_minus_conj(&unit_exps(k, j, 1)));
            (abs, num.exact_div(&den)?)
        }
        Assigned::PlusMinus => (AbsProduct::empty(), LaurentPoly::constant(k, rint(2 * fd_trace_at_reflection(a, b)))),
        Assigned::PlusPlus | Assigned::MinusMinus => zero,
        _ => return Err(Error::BadAssignment(format!("{y:?} in a GL2 block"))),
    })
}

fn principal_phi(c1: &GL1Char, c2: &GL1Char, y: Assigned, k: usize) -> Result<PhiTerm> {
    let v = match y {
        Assigned::Rotation(_) => 0,
        Assigned::PlusMinus => gl1_value(c1, false) * gl1_value(c2, true) + gl1_value(c1, true) * gl1_value(c2, false),
        Assigned::PlusPlus => gl1_value(c1, false) * gl1_value(c2, false),
        Assigned::MinusMinus => gl1_value(c1, true) * gl1_value(c2, true),
        _ => return Err(Error::BadAssignment(format!("{y:?} in a GL2 block"))),
    };
    Ok((AbsProduct::empty(), LaurentPoly::constant(k, rint(v))))
}

/// `Φ` of a single block at the eigenvalues `y`, with `k` rotation variables in scope.
pub fn phi_block(block: &Block, y: Assigned, k: usize) -> Result<PhiTerm> {
    match block {
        Block::GL1(c) => match y {
            Assigned::Plus | Assigned::Minus => {
                let v = gl1_value(c, y == Assigned::Minus);
                Ok((AbsProduct::empty(), LaurentPoly::constant(k, rint(v))))
            }
            _ => Err(Error::BadAssignment(format!("{y:?} in a GL1 block"))),
        },
        Block::GL2(GL2Block::FiniteDim { a, b }) => fd_phi(*a, *b, y, k),
        Block::GL2(GL2Block::Principal(c1, c2)) => principal_phi(c1, c2, y, k),
        Block::GL2(GL2Block::Discrete(c1, c2, a, b)) => {
            let (abs_p, p) = principal_phi(c1, c2, y, k)?;
            let (abs_f, f) = fd_phi(*a, *b, y, k)?;
            // Only one of the two carries absolute values at any given `y`.
            if p.is_zero() {
                Ok((abs_f, -&f))
            } else if f.is_zero() {
                Ok((abs_p, p))
            } else {
                debug_assert!(abs_p.is_empty() && abs_f.is_empty());
                Ok((AbsProduct::empty(), &p - &f))
            }
        }
    }
}

/// `Φ_π(x)` as a list of summands, one per nonvanishing `M`-class.
pub fn phi(pi: &StandardModule, x: &SupportElement) -> Result<Vec<PhiTerm>> {
    if pi.n != x.n() {
        return Err(Error::SizeMismatch(format!("{pi} at a support element of size {}", x.n())));
    }
    let mut out = Vec::new();
    'classes: for ys in x_m_classes(x, &pi.shape()) {
        let mut abs = AbsProduct::empty();
        let mut poly = LaurentPoly::one(x.k);
        for (b, y) in pi.blocks.iter().zip(ys) {
            let (a, p) = phi_block(b, y, x.k)?;
            if p.is_zero() {
                continue 'classes;
            }
            abs = abs.mul(&a);
            poly = &poly * &p;
        }
        out.push((abs, poly));
    }
    Ok(out)
}

/// `D^{SO_n}(x)` as symbolic absolute values.
pub fn so_weyl_det(x: &SupportElement) -> AbsProduct {
    orthogonal_weyl_det(&x.eigen())
}

/// `D^{GL_n}(x)^{1/2} = ∏_{i<j, λ_i ≠ λ_j} |λ_i - λ_j|`; with `|λ_i| = 1` each
/// factor is `|1 - λ_j λ_i^{-1}|`.
pub fn gl_weyl_det_half(x: &SupportElement) -> AbsProduct {
    let eig = x.eigen().eigenvalues();
    let mut out = AbsProduct::empty();
    for i in 0..eig.len() {
        for j in (i + 1)..eig.len() {
            let (a, ta) = &eig[i];
            let (b, tb) = &eig[j];
            if ta.is_none() && tb.is_none() && a.negative == b.negative {
                continue;
            }
            let exps = a.exps.iter().zip(&b.exps).map(|(u, v)| v - u).collect();
            if let Some(f) = AbsFactor::one_minus(a.negative != b.negative, exps) {
                out.push(f);
            }
        }
    }
    out
}

/// `D^{SO_n}(x) c_π(x)` as a Laurent polynomial in the rotation variables.
pub fn integrand_term(pi: &StandardModule, x: &SupportElement) -> Result<LaurentPoly> {
    let num = so_weyl_det(x);
    let den = gl_weyl_det_half(x);
    let mut acc = LaurentPoly::zero(x.k);
    for (abs, poly) in phi(pi, x)? {
        let (rn, rd) = abs_cancel(&num.mul(&abs), &den);
        if !rn.is_empty() || !rd.is_empty() {
            return Err(Error::ResidualAbsFactor(format!("{pi} at {x}: {rn:?} / {rd:?}")));
        }
        acc += &poly;
    }
    Ok(acc)
}

/// Linear extension of [`integrand_term`].
pub fn integrand_virtual(pi: &VirtualRep, x: &SupportElement) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::zero(x.k);
    for t in &pi.terms {
        acc += &integrand_term(&t.module, x)?.scale(&rint(t.coeff));
    }
    Ok(acc)
}
