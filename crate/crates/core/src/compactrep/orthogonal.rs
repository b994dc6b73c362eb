//! Character values of O(n) and SO(n) at arbitrary semisimple elements,
//! including the non-identity component of O(n).
//!
//! O(n) characters use the determinantal universal orthogonal character
//! `o_λ = det(h_{λ_i-i+j} - h_{λ_i-i-j})` in the complete homogeneous symmetric
//! functions of the eigenvalues. `o_λ` is the `Plus` label; `Minus` multiplies
//! by the determinant `(-1)^{#(-1)}`.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Serialize};

use super::group::{permutations, CompactGroup, Family};
use super::label::{IrrepLabel, OSign};
use super::weyl::weyl_character;
use crate::error::{Error, Result};
use crate::exactalg::{rint, AbsFactor, AbsProduct, LaurentPoly, SignedMonomial, Substitution};

/// Largest matrix size accepted by the eigenvalue-based evaluators.
pub const MAX_ELEMENT_N: usize = 8;

/// A semisimple element of O(n) up to conjugacy: `plus` eigenvalues 1, `minus`
/// eigenvalues -1 and `rot` symbolic pairs `(z_j, z_j^{-1})`, `j = 1..rot`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EigenData {
    pub plus: usize,
    pub minus: usize,
    pub rot: usize,
}

impl EigenData {
    pub fn new(plus: usize, minus: usize, rot: usize) -> Self {
        EigenData { plus, minus, rot }
    }

    pub fn n(&self) -> usize {
        self.plus + self.minus + 2 * self.rot
    }

    pub fn det_sign(&self) -> i32 {
        if self.minus % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Direct sum; rotation variables of `other` follow those of `self`.
    pub fn direct_sum(&self, other: &EigenData) -> EigenData {
        EigenData::new(self.plus + other.plus, self.minus + other.minus, self.rot + other.rot)
    }

    /// The eigenvalues as signed monomials in `rot` variables, each tagged with
    /// the index of its rotation pair.
    pub fn eigenvalues(&self) -> Vec<(SignedMonomial, Option<usize>)> {
        let k = self.rot;
        let mut out = Vec::with_capacity(self.n());
        out.extend((0..self.plus).map(|_| (SignedMonomial::constant(k, false), None)));
        out.extend((0..self.minus).map(|_| (SignedMonomial::constant(k, true), None)));
        for j in 0..k {
            out.push((SignedMonomial::var(k, j, false), Some(j)));
            let mut inv = SignedMonomial::var(k, j, false);
            inv.exps[j] = -1;
            out.push((inv, Some(j)));
        }
        out
    }
}

/// `D^{SO_n}(x) = |det(1 - Ad(x))|` on `𝔰𝔬_n` modulo the centralizer of `x`.
///
/// `Ad` on `𝔰𝔬_n ≅ Λ²` has eigenvalues `λ_iλ_j` (`i < j`); the products that are
/// identically 1 span the centralizer and are dropped.
pub fn orthogonal_weyl_det(x: &EigenData) -> AbsProduct {
    let eig = x.eigenvalues();
    let mut out = AbsProduct::empty();
    for i in 0..eig.len() {
        for j in (i + 1)..eig.len() {
            let (a, ta) = &eig[i];
            let (b, tb) = &eig[j];
            if ta.is_some() && ta == tb {
                continue;
            }
            let exps = a.exps.iter().zip(&b.exps).map(|(u, v)| u + v).collect();
            if let Some(f) = AbsFactor::one_minus(a.negative != b.negative, exps) {
                out.push(f);
            }
        }
    }
    out
}

/// `h_0 .. h_max` of the eigenvalue multiset of `x`.
fn complete_homogeneous(x: &EigenData, max: usize) -> Vec<LaurentPoly> {
    let k = x.rot;
    let mut h = vec![LaurentPoly::zero(k); max + 1];
    h[0] = LaurentPoly::one(k);
    for (m, _) in x.eigenvalues() {
        let c = rint(if m.negative { -1 } else { 1 });
        for d in 1..=max {
            let shifted = h[d - 1].mul_monomial(&m.exps, &c);
            h[d] = &h[d] + &shifted;
        }
    }
    h
}

fn determinant(m: &[Vec<LaurentPoly>], nvars: usize) -> LaurentPoly {
    let l = m.len();
    let mut acc = LaurentPoly::zero(nvars);
    for perm in permutations(l) {
        let mut term = LaurentPoly::one(nvars);
        for (i, &j) in perm.iter().enumerate() {
            term = &term * &m[i][j];
            if term.is_zero() {
                break;
            }
        }
        let w = super::group::WeylElement { perm: perm.clone(), negate: vec![false; l] };
        acc = if w.sign() == 1 { &acc + &term } else { &acc - &term };
    }
    acc
}

/// Universal orthogonal character `o_λ` at `x`.
fn universal_orthogonal(lambda: &[i32], x: &EigenData) -> LaurentPoly {
    let parts: Vec<i64> = lambda.iter().filter(|v| **v > 0).map(|v| *v as i64).collect();
    let l = parts.len();
    if l == 0 {
        return LaurentPoly::one(x.rot);
    }
    let max = (parts[0] + l as i64) as usize;
    let h = complete_homogeneous(x, max);
    let hh = |d: i64| -> LaurentPoly {
        if d < 0 {
            LaurentPoly::zero(x.rot)
        } else {
            h[d as usize].clone()
        }
    };
    let mut m = vec![vec![LaurentPoly::zero(x.rot); l]; l];
    for i in 0..l {
        for j in 0..l {
            let (i1, j1) = (i as i64 + 1, j as i64 + 1);
            m[i][j] = &hh(parts[i] - i1 + j1) - &hh(parts[i] - i1 - j1);
        }
    }
    determinant(&m, x.rot)
}

type ElementCache = RwLock<HashMap<(IrrepLabel, EigenData), Arc<LaurentPoly>>>;

fn element_cache() -> &'static ElementCache {
    static CACHE: OnceLock<ElementCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

fn check_element(group: CompactGroup, x: &EigenData) -> Result<()> {
    if group.n > MAX_ELEMENT_N {
        return Err(Error::UnsupportedRank { n: group.n, max: MAX_ELEMENT_N });
    }
    if x.n() != group.n {
        return Err(Error::SizeMismatch(format!("{x:?} is not an element of {group}")));
    }
    Ok(())
}

/// Character of an O(n) label at `x`, as a Laurent polynomial in the rotation
/// variables of `x`.
pub fn o_character_on_element(label: &IrrepLabel, x: &EigenData) -> Result<Arc<LaurentPoly>> {
    if label.group.family != Family::O {
        return Err(Error::InvalidLabel(format!("{label}: expected an O(n) label")));
    }
    check_element(label.group, x)?;
    let key = (label.clone(), *x);
    if let Some(p) = element_cache().read().unwrap().get(&key) {
        return Ok(p.clone());
    }
    let mut p = universal_orthogonal(&label.lambda, x);
    if label.o_sign == Some(OSign::Minus) && x.det_sign() == -1 {
        p = p.scale(&rint(-1));
    }
    let arc = Arc::new(p);
    Ok(element_cache().write().unwrap().entry(key).or_insert(arc).clone())
}

/// Torus substitution realizing `x ∈ SO(n)`: rotation pairs first, then `-1`
/// pairs, then `+1` pairs.
pub fn so_torus_point(n: usize, x: &EigenData) -> Result<Substitution> {
    if x.n() != n || x.minus % 2 == 1 {
        return Err(Error::SizeMismatch(format!("{x:?} is not an element of SO({n})")));
    }
    let k = x.rot;
    let mut images: Vec<SignedMonomial> = (0..k).map(|j| SignedMonomial::var(k, j, false)).collect();
    images.extend((0..x.minus / 2).map(|_| SignedMonomial::constant(k, true)));
    images.extend((0..x.plus / 2).map(|_| SignedMonomial::constant(k, false)));
    Ok(Substitution::new(k, images))
}

/// Character of an SO(n) label at an identity-component element `x`.
pub fn so_character_on_element(label: &IrrepLabel, x: &EigenData) -> Result<LaurentPoly> {
    if label.group.family != Family::SO {
        return Err(Error::InvalidLabel(format!("{label}: expected an SO(n) label")));
    }
    check_element(label.group, x)?;
    weyl_character(label)?.specialize(&so_torus_point(label.group.n, x)?)
}
