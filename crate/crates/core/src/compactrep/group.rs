use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    SO,
    O,
    U,
    SU,
}

/// A compact classical group of matrix size `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CompactGroup {
    pub family: Family,
    pub n: usize,
}

/// A signed permutation acting on exponent vectors: `(w·v)_i = ±v_{perm[i]}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub perm: Vec<usize>,
    pub negate: Vec<bool>,
}

impl WeylElement {
    pub fn act(&self, v: &[i32]) -> Vec<i32> {
        self.perm.iter().zip(self.negate.iter()).map(|(&p, &neg)| if neg { -v[p] } else { v[p] }).collect()
    }

    /// Determinant of the signed permutation matrix.
    pub fn sign(&self) -> i32 {
        let mut s = permutation_sign(&self.perm);
        for &neg in &self.negate {
            if neg {
                s = -s;
            }
        }
        s
    }
}

fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut j = start;
        while !seen[j] {
            seen[j] = true;
            j = perm[j];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl CompactGroup {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        let ok = match family {
            Family::SO | Family::O | Family::U => n >= 1,
            Family::SU => n == 2,
        };
        if ok {
            Ok(CompactGroup { family, n })
        } else {
            Err(Error::UnsupportedGroup(format!("{family:?}({n})")))
        }
    }

    pub fn so(n: usize) -> Self {
        CompactGroup { family: Family::SO, n }
    }

    pub fn o(n: usize) -> Self {
        CompactGroup { family: Family::O, n }
    }

    pub fn u(n: usize) -> Self {
        CompactGroup { family: Family::U, n }
    }

    pub fn su2() -> Self {
        CompactGroup { family: Family::SU, n: 2 }
    }

    /// The identity component (SO(n) for O(n), the group itself otherwise).
    pub fn connected(&self) -> Self {
        match self.family {
            Family::O => CompactGroup::so(self.n),
            _ => *self,
        }
    }

    pub fn torus_rank(&self) -> usize {
        match self.family {
            Family::SO | Family::O => self.n / 2,
            Family::U => self.n,
            Family::SU => self.n - 1,
        }
    }

    fn signed(&self) -> bool {
        matches!(self.family, Family::SO | Family::O | Family::SU)
    }

    /// Weyl group of the identity component, as signed permutations of the
    /// torus coordinates.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        let r = self.torus_rank();
        let mut out = Vec::new();
        for perm in permutations(r) {
            if !self.signed() {
                out.push(WeylElement { perm, negate: vec![false; r] });
                continue;
            }
            for mask in 0u32..(1 << r) {
                let negate: Vec<bool> = (0..r).map(|i| mask & (1 << i) != 0).collect();
                let flips = negate.iter().filter(|b| **b).count();
                // SO(2k): only even numbers of sign changes.
                if self.connected().family == Family::SO && self.n % 2 == 0 && flips % 2 == 1 {
                    continue;
                }
                out.push(WeylElement { perm: perm.clone(), negate });
            }
        }
        out
    }

    pub fn weyl_order(&self) -> usize {
        self.weyl_group().len()
    }

    /// Positive roots in torus-coordinate form.
    pub fn positive_roots(&self) -> Vec<Vec<i32>> {
        let r = self.torus_rank();
        let mut roots = Vec::new();
        let unit = |i: usize, v: i32| {
            let mut e = vec![0; r];
            e[i] = v;
            e
        };
        match self.family {
            Family::SO | Family::O => {
                for i in 0..r {
                    for j in (i + 1)..r {
                        let mut a = unit(i, 1);
                        a[j] = -1;
                        roots.push(a);
                        let mut b = unit(i, 1);
                        b[j] = 1;
                        roots.push(b);
                    }
                    if self.n % 2 == 1 {
                        roots.push(unit(i, 1));
                    }
                }
            }
            Family::U => {
                for i in 0..r {
                    for j in (i + 1)..r {
                        let mut a = unit(i, 1);
                        a[j] = -1;
                        roots.push(a);
                    }
                }
            }
            Family::SU => roots.push(vec![2]),
        }
        roots
    }

    /// Twice the half-sum of positive roots.
    pub fn rho_doubled(&self) -> Vec<i32> {
        let r = self.torus_rank();
        let mut acc = vec![0; r];
        for a in self.positive_roots() {
            for (s, v) in acc.iter_mut().zip(a) {
                *s += v;
            }
        }
        acc
    }

    pub fn is_dominant(&self, lambda: &[i32]) -> bool {
        if lambda.len() != self.torus_rank() {
            return false;
        }
        let r = lambda.len();
        match self.connected().family {
            Family::U => lambda.windows(2).all(|w| w[0] >= w[1]),
            Family::SU => lambda[0] >= 0,
            Family::SO => {
                if r == 0 {
                    return true;
                }
                if self.n % 2 == 1 {
                    lambda.windows(2).all(|w| w[0] >= w[1]) && lambda[r - 1] >= 0
                } else {
                    let head_ok = lambda[..r - 1].windows(2).all(|w| w[0] >= w[1]);
                    head_ok && (r == 1 || lambda[r - 2] >= lambda[r - 1].abs())
                }
            }
            Family::O => unreachable!(),
        }
    }

    /// Dominant representative of the Weyl orbit of `mu`.
    pub fn dominant_rep(&self, mu: &[i32]) -> Vec<i32> {
        match self.connected().family {
            Family::U => {
                let mut v = mu.to_vec();
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            }
            Family::SU => vec![mu[0].abs()],
            Family::SO => {
                let negatives = mu.iter().filter(|v| **v < 0).count();
                let has_zero = mu.iter().any(|v| *v == 0);
                let mut v: Vec<i32> = mu.iter().map(|x| x.abs()).collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                if self.n % 2 == 0 && !v.is_empty() && negatives % 2 == 1 && !has_zero {
                    let last = v.len() - 1;
                    v[last] = -v[last];
                }
                v
            }
            Family::O => unreachable!(),
        }
    }
}

impl fmt::Display for CompactGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}({})", self.family, self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        assert_eq!(CompactGroup::so(2).weyl_order(), 1);
        assert_eq!(CompactGroup::so(3).weyl_order(), 2);
        assert_eq!(CompactGroup::so(4).weyl_order(), 4);
        assert_eq!(CompactGroup::so(5).weyl_order(), 8);
        assert_eq!(CompactGroup::so(6).weyl_order(), 24);
        assert_eq!(CompactGroup::so(7).weyl_order(), 48);
        assert_eq!(CompactGroup::u(3).weyl_order(), 6);
        assert_eq!(CompactGroup::su2().weyl_order(), 2);
    }

    #[test]
    fn rho_values() {
        assert_eq!(CompactGroup::so(5).rho_doubled(), vec![3, 1]);
        assert_eq!(CompactGroup::so(4).rho_doubled(), vec![2, 0]);
        assert_eq!(CompactGroup::u(3).rho_doubled(), vec![2, 0, -2]);
        assert_eq!(CompactGroup::su2().rho_doubled(), vec![2]);
    }

    #[test]
    fn dominance() {
        let so4 = CompactGroup::so(4);
        assert!(so4.is_dominant(&[1, -1]));
        assert!(!so4.is_dominant(&[0, 1]));
        assert_eq!(so4.dominant_rep(&[0, -2]), vec![2, 0]);
        assert_eq!(so4.dominant_rep(&[-1, 2]), vec![2, -1]);
        assert_eq!(CompactGroup::so(5).dominant_rep(&[-1, 2]), vec![2, 1]);
        assert!(CompactGroup::so(2).is_dominant(&[-3]));
        assert!(CompactGroup::new(Family::SU, 3).is_err());
    }

    #[test]
    fn signs_are_determinants() {
        let w = WeylElement { perm: vec![1, 0], negate: vec![false, false] };
        assert_eq!(w.sign(), -1);
        let w = WeylElement { perm: vec![0, 1], negate: vec![true, false] };
        assert_eq!(w.sign(), -1);
        assert_eq!(w.act(&[3, 4]), vec![-3, 4]);
    }
}
