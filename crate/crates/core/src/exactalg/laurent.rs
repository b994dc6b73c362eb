use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use super::rat::{rint, Rat};
use crate::error::{Error, Result};

/// Dense exponent vector, one entry per torus coordinate.
pub type Exps = SmallVec<[i32; 4]>;

pub fn zero_exps(nvars: usize) -> Exps {
    smallvec::smallvec![0; nvars]
}

pub fn unit_exps(nvars: usize, var: usize, power: i32) -> Exps {
    let mut e = zero_exps(nvars);
    e[var] = power;
    e
}

/// Multivariate Laurent polynomial in `z_1 .. z_nvars` with exact rational
/// coefficients. Zero coefficients are never stored.
///
/// Operands with different variable counts are combined by embedding the
/// smaller one into the leading coordinates of the larger.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Exps, Rat>,
}

/// Image of a single variable under [`LaurentPoly::specialize`]: `±z^exps`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedMonomial {
    pub negative: bool,
    pub exps: Exps,
}

impl SignedMonomial {
    pub fn constant(target_nvars: usize, negative: bool) -> Self {
        SignedMonomial { negative, exps: zero_exps(target_nvars) }
    }

    pub fn var(target_nvars: usize, var: usize, negative: bool) -> Self {
        SignedMonomial { negative, exps: unit_exps(target_nvars, var, 1) }
    }
}

/// A substitution `z_i -> ±(monomial in the target variables)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Substitution {
    target_nvars: usize,
    images: Vec<SignedMonomial>,
}

impl Substitution {
    pub fn new(target_nvars: usize, images: Vec<SignedMonomial>) -> Self {
        debug_assert!(images.iter().all(|m| m.exps.len() == target_nvars));
        Substitution { target_nvars, images }
    }

    pub fn identity(nvars: usize) -> Self {
        let images = (0..nvars).map(|i| SignedMonomial::var(nvars, i, false)).collect();
        Substitution { target_nvars: nvars, images }
    }

    pub fn source_nvars(&self) -> usize {
        self.images.len()
    }

    pub fn target_nvars(&self) -> usize {
        self.target_nvars
    }
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(zero_exps(nvars), c);
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rat::one())
    }

    pub fn monomial(exps: Exps, c: Rat) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// `z_var^power`.
    pub fn var_pow(nvars: usize, var: usize, power: i32) -> Self {
        Self::monomial(unit_exps(nvars, var, power), Rat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Exps, Rat)>>(nvars: usize, terms: I) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent length must match variable count");
            p.add_term(e, c);
        }
        p
    }

    /// Convenience for tests and fixtures: integer coefficients, exponent slices.
    pub fn from_int_terms(nvars: usize, terms: &[(&[i32], i64)]) -> Self {
        Self::from_terms(nvars, terms.iter().map(|(e, c)| (Exps::from_slice(e), rint(*c))))
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Exps, Rat> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[i32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Lexicographically greatest exponent and its coefficient.
    pub fn leading_term(&self) -> Option<(&Exps, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, exps: Exps, c: Rat) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(exps.len(), self.nvars);
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Same polynomial viewed in `nvars >= self.nvars` variables.
    pub fn embed(&self, nvars: usize) -> LaurentPoly {
        assert!(nvars >= self.nvars, "cannot embed into fewer variables");
        if nvars == self.nvars {
            return self.clone();
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.resize(nvars, 0);
                (e2, c.clone())
            })
            .collect();
        LaurentPoly { nvars, terms }
    }

    fn aligned<'a>(
        a: &'a LaurentPoly,
        b: &'a LaurentPoly,
    ) -> (std::borrow::Cow<'a, LaurentPoly>, std::borrow::Cow<'a, LaurentPoly>) {
        use std::borrow::Cow;
        let n = a.nvars.max(b.nvars);
        let a = if a.nvars == n { Cow::Borrowed(a) } else { Cow::Owned(a.embed(n)) };
        let b = if b.nvars == n { Cow::Borrowed(b) } else { Cow::Owned(b.embed(n)) };
        (a, b)
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero(self.nvars);
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul_monomial(&self, exps: &[i32], c: &Rat) -> LaurentPoly {
        let terms = self
            .terms
            .iter()
            .map(|(e, v)| {
                let e2: Exps = e.iter().zip(exps).map(|(a, b)| a + b).collect();
                (e2, v * c)
            })
            .collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn pow(&self, e: u32) -> LaurentPoly {
        let mut acc = LaurentPoly::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Normalized Haar integral over the product of unit circles.
    pub fn constant_term(&self) -> Rat {
        self.terms.get(zero_exps(self.nvars).as_slice()).cloned().unwrap_or_else(Rat::zero)
    }

    /// `constant_term(self * other)` without forming the product.
    pub fn pairing(&self, other: &LaurentPoly) -> Rat {
        let (a, b) = Self::aligned(self, other);
        let (small, large) = if a.len() <= b.len() { (&a, &b) } else { (&b, &a) };
        let mut acc = Rat::zero();
        let mut neg = zero_exps(small.nvars);
        for (e, c) in small.terms.iter() {
            for (slot, v) in neg.iter_mut().zip(e.iter()) {
                *slot = -v;
            }
            if let Some(d) = large.terms.get(neg.as_slice()) {
                acc += c * d;
            }
        }
        acc
    }

    /// Every exponent vector negated; the character of the dual representation.
    pub fn bar(&self) -> LaurentPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.iter().map(|v| -v).collect::<Exps>(), c.clone())).collect();
        LaurentPoly { nvars: self.nvars, terms }
    }

    pub fn specialize(&self, subst: &Substitution) -> Result<LaurentPoly> {
        if subst.source_nvars() != self.nvars {
            return Err(Error::SizeMismatch(format!(
                "substitution for {} variables applied to a polynomial in {}",
                subst.source_nvars(),
                self.nvars
            )));
        }
        let mut out = LaurentPoly::zero(subst.target_nvars);
        for (e, c) in self.terms.iter() {
            let mut img = zero_exps(subst.target_nvars);
            let mut negative = false;
            for (power, m) in e.iter().zip(subst.images.iter()) {
                if *power == 0 {
                    continue;
                }
                if m.negative && power.rem_euclid(2) == 1 {
                    negative = !negative;
                }
                for (slot, v) in img.iter_mut().zip(m.exps.iter()) {
                    *slot += power * v;
                }
            }
            out.add_term(img, if negative { -c.clone() } else { c.clone() });
        }
        Ok(out)
    }

    /// Value with every variable set to 1.
    pub fn eval_at_one(&self) -> Rat {
        self.terms.values().fold(Rat::zero(), |acc, c| acc + c)
    }

    /// Exact quotient `self / den`; fails with `NonDivisible` when the
    /// division leaves a remainder.
    pub fn exact_div(&self, den: &LaurentPoly) -> Result<LaurentPoly> {
        let (num, den) = Self::aligned(self, den);
        let n = num.nvars;
        let (den_lead_e, den_lead_c) = match den.leading_term() {
            Some((e, c)) => (e.clone(), c.clone()),
            None => return Err(Error::NonDivisible),
        };
        let mut quotient = LaurentPoly::zero(n);
        if num.is_zero() {
            return Ok(quotient);
        }
        let den_min = den.terms.keys().next().unwrap().clone();
        let num_min = num.terms.keys().next().unwrap().clone();
        // Lex order is a group order on Z^n, so the quotient's smallest term is
        // num_min - den_min; a leading quotient term below that means a remainder.
        let q_floor: Exps = num_min.iter().zip(den_min.iter()).map(|(a, b)| a - b).collect();
        let mut rem = num.into_owned();
        while let Some((e, c)) = rem.leading_term() {
            let qe: Exps = e.iter().zip(den_lead_e.iter()).map(|(a, b)| a - b).collect();
            if qe < q_floor {
                return Err(Error::NonDivisible);
            }
            let qc = c / &den_lead_c;
            rem = &rem - &den.mul_monomial(&qe, &qc);
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }

    /// Floating-point evaluation; used only by numerical cross-checks.
    pub fn eval_f64(&self, point: &[(f64, f64)]) -> (f64, f64) {
        use num_traits::ToPrimitive;
        let mut re = 0.0;
        let mut im = 0.0;
        for (e, c) in self.terms.iter() {
            let mut tr = c.to_f64().unwrap_or(f64::NAN);
            let mut ti = 0.0;
            for (power, (zr, zi)) in e.iter().zip(point.iter()) {
                let (mut pr, mut pi) = (1.0, 0.0);
                let (br, bi) = if *power >= 0 {
                    (*zr, *zi)
                } else {
                    let m = zr * zr + zi * zi;
                    (zr / m, -zi / m)
                };
                for _ in 0..power.unsigned_abs() {
                    let nr = pr * br - pi * bi;
                    pi = pr * bi + pi * br;
                    pr = nr;
                }
                let nr = tr * pr - ti * pi;
                ti = tr * pi + ti * pr;
                tr = nr;
            }
            re += tr;
            im += ti;
        }
        (re, im)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_negative_coeff(&self) -> bool {
        self.terms.values().any(|c| c.is_negative())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (e, c) in b.terms.iter() {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        if rhs.nvars > self.nvars {
            *self = self.embed(rhs.nvars);
        }
        if rhs.nvars == self.nvars {
            for (e, c) in rhs.terms.iter() {
                self.add_term(e.clone(), c.clone());
            }
        } else {
            let r = rhs.embed(self.nvars);
            for (e, c) in r.terms {
                self.add_term(e, c);
            }
        }
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let mut out = a.into_owned();
        for (e, c) in b.terms.iter() {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect() }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        let (a, b) = LaurentPoly::aligned(self, rhs);
        let n = a.nvars;
        let mut out = LaurentPoly::zero(n);
        if a.is_zero() || b.is_zero() {
            return out;
        }
        let mut e = zero_exps(n);
        for (ea, ca) in a.terms.iter() {
            for (eb, cb) in b.terms.iter() {
                for i in 0..n {
                    e[i] = ea[i] + eb[i];
                }
                out.add_term(e.clone(), ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            let (sign, mag) = if c.is_negative() { ("-", -c.clone()) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let is_const = e.iter().all(|v| *v == 0);
            if is_const || !mag.is_one() {
                write!(f, "{mag}")?;
            }
            let mut wrote = !is_const && !mag.is_one();
            for (i, v) in e.iter().enumerate() {
                if *v == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                wrote = true;
                if *v == 1 {
                    write!(f, "z{}", i + 1)?;
                } else {
                    write!(f, "z{}^{}", i + 1, v)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat::rat;

    fn p1(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|(e, c)| (Exps::from_slice(&[*e]), rint(*c))))
    }

    #[test]
    fn add_examples() {
        assert_eq!(&p1(&[(1, 1)]) + &p1(&[(-1, 1)]), p1(&[(1, 1), (-1, 1)]));
        let p = p1(&[(2, 3), (-1, 1)]);
        assert_eq!(&p + &LaurentPoly::zero(1), p);
        assert!((&p1(&[(1, 1), (0, -1)]) + &p1(&[(0, 1), (1, -1)])).is_zero());
    }

    #[test]
    fn mul_examples() {
        let s = p1(&[(1, 1), (-1, 1)]);
        assert_eq!(&s * &s, p1(&[(2, 1), (0, 2), (-2, 1)]));
        assert_eq!(&s * &LaurentPoly::one(1), s);
        let d = p1(&[(1, 1), (-1, -1)]);
        assert_eq!(&d * &s, p1(&[(2, 1), (-2, -1)]));
    }

    #[test]
    fn constant_term_examples() {
        assert_eq!(p1(&[(1, 1), (0, 2), (-1, 1)]).constant_term(), rint(2));
        assert_eq!(p1(&[(5, 1)]).constant_term(), rint(0));
        let s = p1(&[(1, 1), (-1, 1)]);
        assert_eq!((&s * &s).constant_term(), rint(2));
    }

    #[test]
    fn constant_term_matches_quadrature() {
        let s = p1(&[(1, 1), (-1, 1)]);
        let sq = &s * &s;
        let n = 64;
        let mut acc = 0.0;
        for j in 0..n {
            let t = 2.0 * std::f64::consts::PI * (j as f64) / (n as f64);
            acc += sq.eval_f64(&[(t.cos(), t.sin())]).0;
        }
        assert!((acc / n as f64 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn specialize_examples() {
        // z1 z2 + z1^{-1}, z1 -> -1
        let p = LaurentPoly::from_int_terms(2, &[(&[1, 1], 1), (&[-1, 0], 1)]);
        let sub = Substitution::new(1, vec![SignedMonomial::constant(1, true), SignedMonomial::var(1, 0, false)]);
        assert_eq!(p.specialize(&sub).unwrap(), p1(&[(1, -1), (0, -1)]));
        assert_eq!(p.specialize(&Substitution::identity(2)).unwrap(), p);

        let v = LaurentPoly::from_int_terms(2, &[(&[1, 0], 1), (&[-1, 0], 1), (&[0, 1], 1), (&[0, -1], 1)]);
        let pin = Substitution::new(1, vec![SignedMonomial::constant(1, false), SignedMonomial::var(1, 0, false)]);
        assert_eq!(v.specialize(&pin).unwrap(), p1(&[(0, 2), (1, 1), (-1, 1)]));
    }

    #[test]
    fn exact_div_examples() {
        let d = p1(&[(1, 1), (-1, -1)]);
        assert_eq!(p1(&[(2, 1), (-2, -1)]).exact_div(&d).unwrap(), p1(&[(1, 1), (-1, 1)]));
        let p = p1(&[(3, 2), (-4, 1)]);
        assert_eq!(p.exact_div(&LaurentPoly::one(1)).unwrap(), p);
        assert_eq!(p1(&[(3, 1), (-3, -1)]).exact_div(&d).unwrap(), p1(&[(2, 1), (0, 1), (-2, 1)]));
        assert_eq!(p1(&[(2, 1), (0, 1)]).exact_div(&d), Err(Error::NonDivisible));
        assert_eq!(p.exact_div(&LaurentPoly::zero(1)), Err(Error::NonDivisible));
    }

    #[test]
    fn bar_examples() {
        let p = p1(&[(2, 1), (-1, 3)]);
        assert_eq!(p.bar(), p1(&[(-2, 1), (1, 3)]));
        let s = p1(&[(1, 1), (-1, 1), (0, 4)]);
        assert_eq!(s.bar(), s);
        assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn mixed_variable_counts_embed() {
        let a = p1(&[(1, 1)]);
        let b = LaurentPoly::var_pow(2, 1, 1);
        let s = &a + &b;
        assert_eq!(s.nvars(), 2);
        assert_eq!(s, LaurentPoly::from_int_terms(2, &[(&[1, 0], 1), (&[0, 1], 1)]));
        assert_eq!((&a * &b).coeff(&[1, 1]), rint(1));
    }

    #[test]
    fn display_is_readable() {
        let p = LaurentPoly::from_terms(
            2,
            vec![(Exps::from_slice(&[1, -1]), rat(1, 2)), (Exps::from_slice(&[0, 0]), rint(-3))],
        );
        assert_eq!(p.to_string(), "1/2*z1*z2^-1 - 3");
    }
}
