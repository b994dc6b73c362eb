//! Multiplicity for finite groups from class data, in the averaged form
//! `|H|^{-1} Σ_h θ(h) χ(h)^{-1}` and the class-sum form `Σ_x |Z_H(x)|^{-1} θ(x) χ(x)^{-1}`.

use std::fmt;
use std::ops::{Add, Mul};

use num_complex::Complex;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactalg::{rint, serde_rat, Rat};

/// Exact complex rational `re + i·im`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CRat(pub Complex<Rat>);

impl CRat {
    pub fn new(re: Rat, im: Rat) -> Self {
        CRat(Complex::new(re, im))
    }

    pub fn real(re: Rat) -> Self {
        Self::new(re, Rat::zero())
    }

    pub fn re(&self) -> &Rat {
        &self.0.re
    }

    pub fn im(&self) -> &Rat {
        &self.0.im
    }

    pub fn conj(&self) -> CRat {
        CRat(self.0.conj())
    }

    pub fn scale(&self, c: &Rat) -> CRat {
        CRat(self.0.scale(c.clone()))
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }
}

impl Add<&CRat> for &CRat {
    type Output = CRat;
    fn add(self, o: &CRat) -> CRat {
        CRat(&self.0 + &o.0)
    }
}

impl Mul<&CRat> for &CRat {
    type Output = CRat;
    fn mul(self, o: &CRat) -> CRat {
        CRat(&self.0 * &o.0)
    }
}

impl fmt::Display for CRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_real() {
            write!(f, "{}", self.re())
        } else {
            write!(f, "{}{:+}i", self.re(), self.im())
        }
    }
}

impl<'de> Deserialize<'de> for CRat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Pair(#[serde(with = "serde_rat")] Rat, #[serde(with = "serde_rat")] Rat);
        let Pair(re, im) = Pair::deserialize(d)?;
        Ok(CRat::new(re, im))
    }
}

impl Serialize for CRat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.re().to_string(), self.im().to_string()].serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassData {
    pub size: u64,
    pub centralizer: u64,
    pub theta: CRat,
    pub chi: CRat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiniteGroupData {
    #[serde(rename = "order_H")]
    pub order_h: u64,
    pub classes: Vec<ClassData>,
}

impl FiniteGroupData {
    pub fn validate(&self) -> Result<()> {
        if self.order_h == 0 || self.classes.is_empty() {
            return Err(Error::BadClassData("empty group".into()));
        }
        let mut total = 0u64;
        for (i, c) in self.classes.iter().enumerate() {
            if c.size == 0 || c.centralizer == 0 {
                return Err(Error::BadClassData(format!("class {i}: zero size or centralizer")));
            }
            if c.size.checked_mul(c.centralizer) != Some(self.order_h) {
                return Err(Error::BadClassData(format!(
                    "class {i}: size {} × centralizer {} ≠ {}",
                    c.size, c.centralizer, self.order_h
                )));
            }
            total += c.size;
        }
        if total != self.order_h {
            return Err(Error::BadClassData(format!("class sizes sum to {total}, not {}", self.order_h)));
        }
        Ok(())
    }
}

/// `χ^{-1}` for a unitary character value is its complex conjugate.
pub fn m_geom_average(data: &FiniteGroupData) -> Result<CRat> {
    data.validate()?;
    let mut acc = CRat::default();
    for c in &data.classes {
        acc = &acc + &(&c.theta * &c.chi.conj()).scale(&rint(c.size as i64));
    }
    Ok(acc.scale(&(rint(1) / rint(data.order_h as i64))))
}

pub fn m_geom_classes(data: &FiniteGroupData) -> Result<CRat> {
    data.validate()?;
    let mut acc = CRat::default();
    for c in &data.classes {
        acc = &acc + &(&c.theta * &c.chi.conj()).scale(&(rint(1) / rint(c.centralizer as i64)));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cls(size: u64, cent: u64, theta: i64, chi: i64) -> ClassData {
        ClassData { size, centralizer: cent, theta: CRat::real(rint(theta)), chi: CRat::real(rint(chi)) }
    }

    fn both(d: &FiniteGroupData) -> CRat {
        let a = m_geom_average(d).unwrap();
        assert_eq!(a, m_geom_classes(d).unwrap());
        a
    }

    #[test]
    fn examples() {
        let s2_regular = FiniteGroupData { order_h: 2, classes: vec![cls(1, 2, 2, 1), cls(1, 2, 0, 1)] };
        assert_eq!(both(&s2_regular), CRat::real(rint(1)));
        let s3_std = FiniteGroupData { order_h: 2, classes: vec![cls(1, 2, 2, 1), cls(1, 2, 0, 1)] };
        assert_eq!(both(&s3_std), CRat::real(rint(1)));
        // Z/4 with the faithful character k ↦ i^k; Gaussian rationals hold its values.
        let i = CRat::new(rint(0), rint(1));
        let powers = [CRat::real(rint(1)), i.clone(), CRat::real(rint(-1)), i.conj()];
        let z4 = FiniteGroupData {
            order_h: 4,
            classes: powers
                .iter()
                .map(|t| ClassData { size: 1, centralizer: 4, theta: t.clone(), chi: CRat::real(rint(1)) })
                .collect(),
        };
        assert_eq!(both(&z4), CRat::default());
    }

    #[test]
    fn rejects_bad_data() {
        let bad = FiniteGroupData { order_h: 3, classes: vec![cls(1, 2, 1, 1)] };
        assert!(matches!(m_geom_average(&bad), Err(Error::BadClassData(_))));
        let bad = FiniteGroupData { order_h: 4, classes: vec![cls(2, 2, 1, 1)] };
        assert!(matches!(m_geom_classes(&bad), Err(Error::BadClassData(_))));
    }

    #[test]
    fn json_round_trip() {
        let s = r#"{"order_H": 2, "classes": [
            {"size": 1, "centralizer": 2, "theta": [2, 0], "chi": [1, 0]},
            {"size": 1, "centralizer": 2, "theta": ["0", "1/2"], "chi": [1, 0]}]}"#;
        let d: FiniteGroupData = serde_json::from_str(s).unwrap();
        assert_eq!(d.classes[1].theta.im(), &Rat::new(1.into(), 2.into()));
        let back: FiniteGroupData = serde_json::from_str(&serde_json::to_string(&d).unwrap()).unwrap();
        assert_eq!(back, d);
    }
}
