//! Branching `O(n) → O(n') × O(n'')`.
//!
//! The restriction to `SO(n') × SO(n'')` is decomposed by highest-weight
//! subtraction, giving counts `M(μ', μ'')`. These are invariant under the
//! ε-twist in either factor. An O-label pair is then assembled by case:
//!
//! | `α'`     | `α''`    | multiplicity                          |
//! |----------|----------|---------------------------------------|
//! | unsigned | unsigned | `M`                                   |
//! | unsigned | `(μ'', s'')` | `(2M + s''·B) / 4`                |
//! | `(μ', s')` | unsigned | `(2M + s'·A) / 4`                   |
//! | `(μ', s')` | `(μ'', s'')` | `(M + s'A + s''B + s's''C) / 4` |
//!
//! where `A`, `B`, `C` integrate `χ_ω · χ_{(μ',+)} · χ_{(μ'',+)}` over
//! `O⁻×SO`, `SO×O⁻` and `O⁻×O⁻` respectively (each of mass 1).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::Zero;

use crate::compactrep::haar::{identity_component, integrate_component_pair, other_component, shift_vars, Component};
use crate::compactrep::{
    o_character_on_element, o_irreps_from_so, restrict_torus_character, weyl_character, CompactGroup, EigenData,
    Family, IrrepLabel, OSign,
};
use crate::error::{Error, Result};
use crate::exactalg::{as_i64, rint, LaurentPoly, Rat};

pub type Branching = Vec<((IrrepLabel, IrrepLabel), u64)>;

/// Highest-weight decomposition of a character of `SO(n') × SO(n'')`.
pub fn decompose_so_pair(p: &LaurentPoly, n1: usize, n2: usize) -> Result<BTreeMap<(IrrepLabel, IrrepLabel), i64>> {
    let (g1, g2) = (CompactGroup::so(n1), CompactGroup::so(n2));
    let (r1, r2) = (g1.torus_rank(), g2.torus_rank());
    if p.nvars() != r1 + r2 {
        return Err(Error::EmbeddingMismatch(format!("{} variables for SO({n1})×SO({n2})", p.nvars())));
    }
    let mut rem = p.clone();
    let mut out = BTreeMap::new();
    while let Some((e, c)) = rem.leading_term() {
        let (e1, e2) = e.split_at(r1);
        let l1 = IrrepLabel::new(g1, e1.to_vec(), None)
            .map_err(|_| Error::NotDecomposable(format!("leading weight {e:?}")))?;
        let l2 = IrrepLabel::new(g2, e2.to_vec(), None)
            .map_err(|_| Error::NotDecomposable(format!("leading weight {e:?}")))?;
        let m = as_i64(c).filter(|m| *m > 0).ok_or_else(|| Error::NotDecomposable(format!("coefficient {c}")))?;
        let prod = &weyl_character(&l1)?.embed(r1 + r2) * &shift_vars(&*weyl_character(&l2)?, r1);
        rem = &rem - &prod.scale(&rint(m));
        out.insert((l1, l2), m);
    }
    Ok(out)
}

fn plus_of(label: &IrrepLabel) -> IrrepLabel {
    let mut l = label.clone();
    if l.o_sign.is_some() {
        l.o_sign = Some(OSign::Plus);
    }
    l
}

fn sign_value(label: &IrrepLabel) -> i64 {
    match label.o_sign {
        Some(OSign::Minus) => -1,
        _ => 1,
    }
}

/// `∫_{C'×C''} χ_ω(x'⊕x'') χ_{a'}(x') χ_{a''}(x'')`.
fn twisted_integral(
    omega: &IrrepLabel,
    a1: &IrrepLabel,
    a2: &IrrepLabel,
    c1: &Component,
    c2: &Component,
) -> Result<Rat> {
    integrate_component_pair(c1, c2, |x1: &EigenData, x2: &EigenData| {
        let w = o_character_on_element(omega, &x1.direct_sum(x2))?;
        let k = x1.rot + x2.rot;
        let p1 = o_character_on_element(a1, x1)?.embed(k);
        let p2 = shift_vars(&*o_character_on_element(a2, x2)?, x1.rot);
        Ok(&(&*w * &p1) * &p2)
    })
}

type BranchCache = RwLock<HashMap<(IrrepLabel, usize, usize), Arc<Branching>>>;

fn cache() -> &'static BranchCache {
    static CACHE: OnceLock<BranchCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// `ω|_{O(n')×O(n'')}` as a list of `((α', α''), multiplicity)`, sorted by label.
pub fn branch_o_to_oo(omega: &IrrepLabel, n1: usize, n2: usize) -> Result<Arc<Branching>> {
    if omega.group.family != Family::O || n1 == 0 || n2 == 0 || n1 + n2 != omega.group.n {
        return Err(Error::EmbeddingMismatch(format!("{omega} to O({n1})×O({n2})")));
    }
    let key = (omega.clone(), n1, n2);
    if let Some(b) = cache().read().unwrap().get(&key) {
        return Ok(b.clone());
    }
    let restricted = restrict_torus_character(omega, &[CompactGroup::so(n1), CompactGroup::so(n2)])?;
    let counts = decompose_so_pair(&restricted, n1, n2)?;

    let mut candidates: Vec<(IrrepLabel, IrrepLabel)> = Vec::new();
    for (l1, l2) in counts.keys() {
        for o1 in o_irreps_from_so(l1)? {
            for o2 in o_irreps_from_so(l2)? {
                if !candidates.contains(&(o1.clone(), o2.clone())) {
                    candidates.push((o1.clone(), o2.clone()));
                }
            }
        }
    }
    candidates.sort();

    let (id1, ot1) = (identity_component(n1), other_component(n1));
    let (id2, ot2) = (identity_component(n2), other_component(n2));
    let mut out = Vec::new();
    for (a1, a2) in candidates {
        let m_so =
            counts.get(&(IrrepLabel::so(n1, &a1.lambda)?, IrrepLabel::so(n2, &a2.lambda)?)).copied().unwrap_or(0);
        let (s1, s2) = (sign_value(&a1), sign_value(&a2));
        let (p1, p2) = (plus_of(&a1), plus_of(&a2));
        let four_m = match (a1.is_signed(), a2.is_signed()) {
            (false, false) => rint(4 * m_so),
            (false, true) => rint(2 * m_so) + twisted_integral(omega, &p1, &p2, &id1, &ot2)? * rint(s2),
            (true, false) => rint(2 * m_so) + twisted_integral(omega, &p1, &p2, &ot1, &id2)? * rint(s1),
            (true, true) => {
                let a = twisted_integral(omega, &p1, &p2, &ot1, &id2)?;
                let b = twisted_integral(omega, &p1, &p2, &id1, &ot2)?;
                let c = twisted_integral(omega, &p1, &p2, &ot1, &ot2)?;
                rint(m_so) + a * rint(s1) + b * rint(s2) + c * rint(s1 * s2)
            }
        };
        let m = four_m / rint(4);
        let m = as_i64(&m)
            .filter(|v| *v >= 0)
            .ok_or_else(|| Error::NonIntegral(format!("branching {omega} → {a1}⊗{a2}: {m}")))?;
        if m > 0 {
            out.push(((a1, a2), m as u64));
        }
    }
    let arc = Arc::new(out);
    Ok(cache().write().unwrap().entry(key).or_insert(arc).clone())
}

/// `<ω|, α'⊗α''>` by direct Haar integration over all four component pairs.
pub fn branch_multiplicity_by_integral(omega: &IrrepLabel, a1: &IrrepLabel, a2: &IrrepLabel) -> Result<Rat> {
    let (n1, n2) = (a1.group.n, a2.group.n);
    let mut acc = Rat::zero();
    for c1 in [identity_component(n1), other_component(n1)] {
        for c2 in [identity_component(n2), other_component(n2)] {
            acc += twisted_integral(omega, a1, a2, &c1, &c2)?;
        }
    }
    Ok(acc / rint(4))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compactrep::{dimension, labels_up_to};

    fn o(n: usize, l: &[i32], s: OSign) -> IrrepLabel {
        IrrepLabel::o(n, l, s).unwrap()
    }

    #[test]
    fn examples() {
        for n in 2..=5 {
            let t = IrrepLabel::trivial(CompactGroup::o(n));
            let b = branch_o_to_oo(&t, 1, n - 1).unwrap();
            assert_eq!(
                *b,
                vec![((IrrepLabel::trivial(CompactGroup::o(1)), IrrepLabel::trivial(CompactGroup::o(n - 1))), 1)]
            );
        }
        let b = branch_o_to_oo(&o(2, &[1], OSign::Plus), 1, 1).unwrap();
        let (triv, sgn) = (o(1, &[], OSign::Plus), o(1, &[], OSign::Minus));
        assert_eq!(*b, vec![((triv.clone(), sgn.clone()), 1), ((sgn.clone(), triv.clone()), 1)]);
        // O(3) vector rep = (std of O(2)) ⊗ triv ⊕ triv ⊗ sgn.
        let b = branch_o_to_oo(&o(3, &[1], OSign::Plus), 2, 1).unwrap();
        assert_eq!(*b, vec![((o(2, &[0], OSign::Plus), sgn.clone()), 1), ((o(2, &[1], OSign::Plus), triv.clone()), 1)]);
    }

    #[test]
    fn table_matches_integral_and_dimensions() {
        for n in 2..=4 {
            for omega in labels_up_to(CompactGroup::o(n), 3) {
                for n1 in 1..n {
                    let n2 = n - n1;
                    let b = branch_o_to_oo(&omega, n1, n2).unwrap();
                    let total: u64 =
                        b.iter().map(|((a1, a2), m)| m * dimension(a1).unwrap() * dimension(a2).unwrap()).sum();
                    assert_eq!(total, dimension(&omega).unwrap(), "{omega} → O({n1})×O({n2})");
                    for a1 in labels_up_to(CompactGroup::o(n1), 4) {
                        for a2 in labels_up_to(CompactGroup::o(n2), 4) {
                            let want = branch_multiplicity_by_integral(&omega, &a1, &a2).unwrap();
                            let got = b.iter().find(|(p, _)| p.0 == a1 && p.1 == a2).map_or(0, |(_, m)| *m);
                            assert_eq!(rint(got as i64), want, "{omega} → {a1}⊗{a2}");
                        }
                    }
                }
            }
        }
    }
}
