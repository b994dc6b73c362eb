//! Exact Haar integration of class functions over SO(m), O(m) and O(m')×O(m'').
//!
//! Each component of O(m) carries mass 1/2. On a component, the Weyl
//! integration formula reduces to a torus of a generic element `x`:
//! `∫ f = w · CT(f(x) · D^{SO_m}(x))`, where the weight `w` is the inverse order
//! of the relevant Weyl group:
//!
//! | component            | generic element           | `1/w`            |
//! |----------------------|---------------------------|------------------|
//! | SO(2r+1)             | `(1, r_z1, .., r_zr)`     | `2^r r!`         |
//! | SO(2r)               | `(r_z1, .., r_zr)`        | `2^{r-1} r!`     |
//! | O(2r+1) \ SO(2r+1)   | `(-1, r_z1, .., r_zr)`    | `2^r r!`         |
//! | O(2r) \ SO(2r)       | `(1, -1, r_z1, .., r_zr-1)` | `2^r (r-1)!`   |

use super::orthogonal::{orthogonal_weyl_det, EigenData};
use crate::error::{Error, Result};
use crate::exactalg::{factorial, pow2, rint, LaurentPoly, Rat};

/// One connected component of O(m), as a generic element and its weight.
#[derive(Clone, Debug)]
pub struct Component {
    pub element: EigenData,
    pub weight: Rat,
}

pub fn identity_component(m: usize) -> Component {
    let r = m / 2;
    let weight = if m % 2 == 1 {
        pow2(r as u32) * factorial(r as u32)
    } else if r == 0 {
        rint(1)
    } else {
        pow2(r as u32 - 1) * factorial(r as u32)
    };
    Component { element: EigenData::new(m % 2, 0, r), weight: rint(1) / weight }
}

pub fn other_component(m: usize) -> Component {
    let r = m / 2;
    let (element, weight) = if m % 2 == 1 {
        (EigenData::new(0, 1, r), pow2(r as u32) * factorial(r as u32))
    } else {
        (EigenData::new(1, 1, r - 1), pow2(r as u32) * factorial(r as u32 - 1))
    };
    Component { element, weight: rint(1) / weight }
}

/// Weyl density on the torus of the generic element `x`.
pub fn density(x: &EigenData) -> Result<LaurentPoly> {
    orthogonal_weyl_det(x)
        .to_poly(x.rot)
        .ok_or_else(|| Error::ResidualAbsFactor(format!("odd density factor at {x:?}")))
}

/// `∫_C f` over a single component with total mass 1.
pub fn integrate_component<F>(c: &Component, f: F) -> Result<Rat>
where
    F: Fn(&EigenData) -> Result<LaurentPoly>,
{
    let v = f(&c.element)?;
    Ok(v.pairing(&density(&c.element)?) * &c.weight)
}

/// `∫_{O(m)} f` for the normalized Haar measure.
pub fn integrate_o<F>(m: usize, f: F) -> Result<Rat>
where
    F: Fn(&EigenData) -> Result<LaurentPoly>,
{
    let a = integrate_component(&identity_component(m), &f)?;
    let b = integrate_component(&other_component(m), &f)?;
    Ok((a + b) / rint(2))
}

/// `∫_{C'×C''} f(x' ⊕ x'')` over a product of components. `f` receives both
/// elements; rotation variables of `x''` follow those of `x'` in the polynomial
/// it returns.
pub fn integrate_component_pair<F>(c1: &Component, c2: &Component, f: F) -> Result<Rat>
where
    F: Fn(&EigenData, &EigenData) -> Result<LaurentPoly>,
{
    let v = f(&c1.element, &c2.element)?;
    let k = c1.element.rot + c2.element.rot;
    let d1 = density(&c1.element)?.embed(k);
    let d2 = shift_vars(&density(&c2.element)?, c1.element.rot);
    Ok(v.pairing(&(&d1 * &d2)) * &c1.weight * &c2.weight)
}

/// `∫_{O(m')×O(m'')} f(x' ⊕ x'')`, as in [`integrate_component_pair`].
pub fn integrate_oo<F>(m1: usize, m2: usize, f: F) -> Result<Rat>
where
    F: Fn(&EigenData, &EigenData) -> Result<LaurentPoly>,
{
    let mut acc = Rat::from_integer(0.into());
    for c1 in [identity_component(m1), other_component(m1)] {
        for c2 in [identity_component(m2), other_component(m2)] {
            acc += integrate_component_pair(&c1, &c2, &f)?;
        }
    }
    Ok(acc / rint(4))
}

/// Rename `z_i` to `z_{i+offset}`.
pub fn shift_vars(p: &LaurentPoly, offset: usize) -> LaurentPoly {
    let n = p.nvars() + offset;
    LaurentPoly::from_terms(
        n,
        p.terms().iter().map(|(e, c)| {
            let mut e2 = crate::exactalg::zero_exps(n);
            e2[offset..].copy_from_slice(e);
            (e2, c.clone())
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compactrep::{labels_up_to, o_character_on_element, CompactGroup};

    #[test]
    fn components_have_unit_mass() {
        for m in 1..=7 {
            let one = |x: &EigenData| Ok(LaurentPoly::one(x.rot));
            assert_eq!(integrate_component(&identity_component(m), one).unwrap(), rint(1), "SO({m})");
            assert_eq!(integrate_component(&other_component(m), one).unwrap(), rint(1), "O({m})-");
        }
    }

    #[test]
    fn o_characters_are_orthonormal() {
        for m in 1..=5 {
            let labels = labels_up_to(CompactGroup::o(m), 3);
            for a in &labels {
                for b in &labels {
                    let ip = integrate_o(m, |x| {
                        let pa = o_character_on_element(a, x)?;
                        let pb = o_character_on_element(b, x)?;
                        Ok(&*pa * &pb.bar())
                    })
                    .unwrap();
                    assert_eq!(ip, rint((a == b) as i64), "O({m}): {a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn product_measure() {
        let got = integrate_oo(2, 3, |x, y| {
            let a =
                o_character_on_element(&crate::compactrep::IrrepLabel::o(2, &[1], crate::compactrep::OSign::Plus)?, x)?;
            let b =
                o_character_on_element(&crate::compactrep::IrrepLabel::o(3, &[1], crate::compactrep::OSign::Plus)?, y)?;
            let ab = &a.embed(x.rot + y.rot) * &shift_vars(&b, x.rot);
            Ok(&ab * &ab.bar())
        })
        .unwrap();
        assert_eq!(got, rint(1));
    }
}
