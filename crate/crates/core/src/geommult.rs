//! The geometric multiplicity: a weighted sum over support elements of
//! constant terms of `D^{SO_n}(x) c_π(x) θ_{ω^∨}(x)`.
//!
//! | variant | support                    | coefficient          |
//! |---------|----------------------------|----------------------|
//! | SO      | `n1 + 2·n2 + 2k = n`       | `1 / (2^{n-k-1} k!)` |
//! | O       | `n1 + n2 + 2k = n`         | `1 / (2^{n-k} k!)`   |

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::compactrep::{
    o_character_on_element, o_irreps_from_so, so_character_on_element, weyl_character, CompactGroup, Family, IrrepLabel,
};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, pow2, rint, LaurentPoly, Rat};
use crate::glstd::{integrand_virtual, SupportElement, Variant, VirtualRep};

/// All support elements of the variant, ordered by `k`, then `n2`.
pub fn enumerate_support(n: usize, variant: Variant) -> Vec<SupportElement> {
    let mut out = Vec::new();
    for k in 0..=n / 2 {
        let rest = n - 2 * k;
        match variant {
            Variant::SO => {
                for n2 in 0..=rest / 2 {
                    out.push(SupportElement::new(variant, rest - 2 * n2, n2, k));
                }
            }
            Variant::O => {
                for n2 in 0..=rest {
                    out.push(SupportElement::new(variant, rest - n2, n2, k));
                }
            }
        }
    }
    out
}

pub fn support_coefficient(n: usize, x: &SupportElement) -> Rat {
    let shift = match x.variant {
        Variant::SO => 1,
        Variant::O => 0,
    };
    let e = (n - x.k - shift) as u32;
    rint(1) / (pow2(e) * factorial(x.k as u32))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeomResult {
    #[serde(serialize_with = "crate::exactalg::serde_rat::serialize")]
    pub value: Rat,
    pub per_term: Vec<(SupportElement, String)>,
}

/// The `π`-dependent half of the formula, reusable across K-types.
#[derive(Clone, Debug)]
pub struct GeomIntegrands {
    pub n: usize,
    pub variant: Variant,
    pub genuine: bool,
    terms: Vec<(SupportElement, Rat, LaurentPoly)>,
}

impl GeomIntegrands {
    pub fn new(pi: &VirtualRep, variant: Variant) -> Result<Self> {
        let n = pi.check()?;
        let terms = enumerate_support(n, variant)
            .into_iter()
            .map(|x| Ok((x, support_coefficient(n, &x), integrand_virtual(pi, &x)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeomIntegrands { n, variant, genuine: pi.is_genuine(), terms })
    }

    fn theta(&self, omega: &IrrepLabel, x: &SupportElement) -> Result<LaurentPoly> {
        Ok(match self.variant {
            Variant::O => o_character_on_element(omega, &x.eigen())?.bar(),
            Variant::SO => so_character_on_element(omega, &x.eigen())?.bar(),
        })
    }

    pub fn evaluate(&self, omega: &IrrepLabel) -> Result<GeomResult> {
        let want = match self.variant {
            Variant::O => Family::O,
            Variant::SO => Family::SO,
        };
        if omega.group.family != want || omega.group.n != self.n {
            return Err(Error::SizeMismatch(format!(
                "K-type {omega} for the {:?} formula with n = {}",
                self.variant, self.n
            )));
        }
        let mut value = Rat::zero();
        let mut per_term = Vec::with_capacity(self.terms.len());
        for (x, coeff, integrand) in &self.terms {
            let v = if integrand.is_zero() { Rat::zero() } else { integrand.pairing(&self.theta(omega, x)?) * coeff };
            value += &v;
            per_term.push((*x, v.to_string()));
        }
        if self.genuine && (!value.is_integer() || value.is_negative()) {
            return Err(Error::NonIntegral(format!("{value} for {omega}")));
        }
        Ok(GeomResult { value, per_term })
    }
}

pub fn geom_multiplicity(pi: &VirtualRep, omega: &IrrepLabel, variant: Variant) -> Result<GeomResult> {
    GeomIntegrands::new(pi, variant)?.evaluate(omega)
}

/// `|W|^{-1} CT((Σ_w z^{w·τ}) · bar χ_ω)` for a character of the compact torus
/// of a complex group with maximal compact subgroup `H`.
pub fn geom_multiplicity_complex(h: CompactGroup, tau: &[i32], omega: &IrrepLabel) -> Result<Rat> {
    if omega.group != h || tau.len() != h.torus_rank() || !matches!(h.family, Family::U | Family::SU) {
        return Err(Error::SizeMismatch(format!("weight {tau:?} and K-type {omega} for {h}")));
    }
    let w = h.weyl_group();
    let mut orbit = LaurentPoly::zero(h.torus_rank());
    for g in &w {
        orbit.add_term(g.act(tau).into_iter().collect(), rint(1));
    }
    Ok(orbit.pairing(&weyl_character(omega)?.bar()) / rint(w.len() as i64))
}

/// The SO-variant multiplicity assembled from O-variant runs.
pub fn so_from_o(integrands: &GeomIntegrands, so_label: &IrrepLabel) -> Result<Rat> {
    if integrands.variant != Variant::O {
        return Err(Error::SizeMismatch("so_from_o needs O-variant integrands".into()));
    }
    let mut acc = Rat::zero();
    for o in o_irreps_from_so(so_label)? {
        acc += integrands.evaluate(&o)?.value;
    }
    Ok(acc)
}
