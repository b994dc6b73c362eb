//! Symbolic absolute values `|1 - μ|` of unit-modulus torus monomials.
//!
//! Weyl determinants and their square roots are products of such factors.
//! Keeping them symbolic lets ratios of determinants cancel exactly instead of
//! introducing square roots.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use super::laurent::{zero_exps, Exps, LaurentPoly};
use super::rat::{rint, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AbsKind {
    /// `|1 - μ|` with μ a (signed) nonconstant monomial.
    OneMinus,
    /// `|1 - (-1)| = 2`.
    Two,
}

/// The factor `|1 - s·z^e|` for `s = ±1`, stored canonically.
///
/// On the unit torus `|1 - μ| = |1 - μ^{-1}|`, so of `e` and `-e` only the
/// lexicographically larger is kept.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbsFactor {
    negative: bool,
    exps: Exps,
}

impl AbsFactor {
    /// `|1 - s·z^e|`; `None` when the factor vanishes identically (`μ = 1`).
    pub fn one_minus(negative: bool, exps: Exps) -> Option<AbsFactor> {
        if exps.iter().all(|v| *v == 0) {
            return if negative { Some(AbsFactor { negative, exps }) } else { None };
        }
        let flipped: Exps = exps.iter().map(|v| -v).collect();
        let exps = if flipped > exps { flipped } else { exps };
        Some(AbsFactor { negative, exps })
    }

    /// `|μ - μ̄| = |1 - μ^2|` for the monomial `μ = z^e`.
    pub fn mu_minus_conj(exps: &[i32]) -> Option<AbsFactor> {
        Self::one_minus(false, exps.iter().map(|v| 2 * v).collect())
    }

    pub fn two(nvars: usize) -> AbsFactor {
        AbsFactor { negative: true, exps: zero_exps(nvars) }
    }

    pub fn kind(&self) -> AbsKind {
        if self.exps.iter().all(|v| *v == 0) {
            AbsKind::Two
        } else {
            AbsKind::OneMinus
        }
    }

    pub fn exps(&self) -> &[i32] {
        &self.exps
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    /// `|1 - μ|^2 = (1 - μ)(1 - μ^{-1})` as a Laurent polynomial.
    pub fn squared(&self) -> LaurentPoly {
        let n = self.exps.len();
        if self.kind() == AbsKind::Two {
            return LaurentPoly::constant(n, rint(4));
        }
        let s = if self.negative { rint(1) } else { rint(-1) };
        let mut a = LaurentPoly::one(n);
        a.add_term(self.exps.clone(), s.clone());
        let mut b = LaurentPoly::one(n);
        b.add_term(self.exps.iter().map(|v| -v).collect(), s);
        &a * &b
    }
}

impl fmt::Debug for AbsFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            AbsKind::Two => write!(f, "2"),
            AbsKind::OneMinus => {
                let mono = LaurentPoly::monomial(self.exps.clone(), Rat::one());
                write!(f, "|1 {} {}|", if self.negative { "+" } else { "-" }, mono)
            }
        }
    }
}

/// Multiset of [`AbsFactor`]s: a free commutative monoid element.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbsProduct {
    factors: BTreeMap<AbsFactor, u32>,
}

impl AbsProduct {
    pub fn empty() -> Self {
        AbsProduct::default()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, f: AbsFactor) {
        *self.factors.entry(f).or_insert(0) += 1;
    }

    pub fn from_factors<I: IntoIterator<Item = AbsFactor>>(it: I) -> Self {
        let mut p = AbsProduct::empty();
        for f in it {
            p.push(f);
        }
        p
    }

    pub fn factors(&self) -> impl Iterator<Item = (&AbsFactor, u32)> {
        self.factors.iter().map(|(f, m)| (f, *m))
    }

    pub fn degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn mul(&self, other: &AbsProduct) -> AbsProduct {
        let mut out = self.clone();
        for (f, m) in other.factors.iter() {
            *out.factors.entry(f.clone()).or_insert(0) += m;
        }
        out
    }

    /// Value as a Laurent polynomial when every nonconstant factor has even
    /// multiplicity; `None` otherwise.
    pub fn to_poly(&self, nvars: usize) -> Option<LaurentPoly> {
        let mut acc = LaurentPoly::one(nvars);
        for (f, m) in self.factors.iter() {
            match f.kind() {
                AbsKind::Two => acc = acc.scale(&Rat::from_integer((1u64 << *m).into())),
                AbsKind::OneMinus => {
                    if m % 2 == 1 {
                        return None;
                    }
                    let sq = f.squared().embed(nvars.max(f.exps.len()));
                    acc = &acc * &sq.pow(m / 2);
                }
            }
        }
        Some(acc)
    }
}

/// Remove the common factors of `numerator` and `denominator`.
pub fn abs_cancel(numerator: &AbsProduct, denominator: &AbsProduct) -> (AbsProduct, AbsProduct) {
    let mut num = numerator.clone();
    let mut den = AbsProduct::empty();
    for (f, m) in denominator.factors.iter() {
        let have = num.factors.get(f).copied().unwrap_or(0);
        let common = have.min(*m);
        if common == have {
            num.factors.remove(f);
        } else {
            num.factors.insert(f.clone(), have - common);
        }
        if *m > common {
            den.factors.insert(f.clone(), m - common);
        }
    }
    (num, den)
}

impl fmt::Debug for AbsProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(fac, m)| if *m == 1 { format!("{fac:?}") } else { format!("{fac:?}^{m}") })
            .collect();
        write!(f, "{}", parts.join("·"))
    }
}
