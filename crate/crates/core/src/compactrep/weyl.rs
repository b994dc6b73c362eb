use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use super::group::{CompactGroup, Family};
use super::label::IrrepLabel;
use crate::error::{Error, Result};
use crate::exactalg::{as_i64, rint, Exps, LaurentPoly, Rat, SignedMonomial, Substitution};

/// `Σ_w det(w) z^{w·mu}` over the Weyl group.
fn alternant(group: CompactGroup, mu: &[i32]) -> LaurentPoly {
    let r = group.torus_rank();
    let mut p = LaurentPoly::zero(r);
    for w in group.weyl_group() {
        p.add_term(Exps::from_vec(w.act(mu)), rint(w.sign() as i64));
    }
    p
}

fn halve_exponents(p: &LaurentPoly) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero(p.nvars());
    for (e, c) in p.terms() {
        if e.iter().any(|v| v % 2 != 0) {
            return Err(Error::NonDivisible);
        }
        out.add_term(e.iter().map(|v| v / 2).collect(), c.clone());
    }
    Ok(out)
}

/// Character of the connected-group irrep with highest weight `lambda`, by the
/// alternating-sum quotient. Exponents are doubled during the division so that
/// half-integral ρ (odd orthogonal groups) stays integral.
fn connected_character(group: CompactGroup, lambda: &[i32]) -> Result<LaurentPoly> {
    let rho2 = group.rho_doubled();
    let top: Vec<i32> = lambda.iter().zip(&rho2).map(|(l, r)| 2 * l + r).collect();
    let num = alternant(group, &top);
    let den = alternant(group, &rho2);
    halve_exponents(&num.exact_div(&den)?)
}

type CharCache = RwLock<HashMap<IrrepLabel, Arc<LaurentPoly>>>;

fn cache() -> &'static CharCache {
    static CACHE: OnceLock<CharCache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Character restricted to the maximal torus of the identity component.
///
/// For an unsigned O(2k) label this is `χ_λ + χ_{ελ}`. Results are memoized;
/// concurrent misses compute the same value and the first insert wins.
pub fn weyl_character(label: &IrrepLabel) -> Result<Arc<LaurentPoly>> {
    if let Some(p) = cache().read().unwrap().get(label) {
        return Ok(p.clone());
    }
    let conn = label.group.connected();
    let poly = if label.group.family == Family::O && !label.is_signed() {
        let twisted = epsilon_twist_weight(label.group.n, &label.lambda);
        &connected_character(conn, &label.lambda)? + &connected_character(conn, &twisted)?
    } else {
        connected_character(conn, &label.lambda)?
    };
    let arc = Arc::new(poly);
    let mut w = cache().write().unwrap();
    Ok(w.entry(label.clone()).or_insert(arc).clone())
}

pub fn dimension(label: &IrrepLabel) -> Result<u64> {
    let d = weyl_character(label)?.eval_at_one();
    as_i64(&d).and_then(|v| u64::try_from(v).ok()).ok_or_else(|| Error::NonIntegral(d.to_string()))
}

/// Product formula `∏_{α>0} <λ+ρ, α> / <ρ, α>` for connected groups.
pub fn weyl_dimension_formula(group: CompactGroup, lambda: &[i32]) -> Rat {
    let rho2 = group.connected().rho_doubled();
    let mut acc = rint(1);
    for a in group.connected().positive_roots() {
        let top: i64 = lambda.iter().zip(&rho2).zip(&a).map(|((l, r), x)| ((2 * l + r) * x) as i64).sum();
        let bottom: i64 = rho2.iter().zip(&a).map(|(r, x)| (r * x) as i64).sum();
        acc *= Rat::new(top.into(), bottom.into());
    }
    acc
}

fn epsilon_twist_weight(n: usize, lambda: &[i32]) -> Vec<i32> {
    let mut v = lambda.to_vec();
    if n % 2 == 0 {
        if let Some(last) = v.last_mut() {
            *last = -*last;
        }
    }
    v
}

/// Conjugation by `diag(-1, 1, ..., 1)` on SO(n) labels.
pub fn epsilon_twist(label: &IrrepLabel) -> Result<IrrepLabel> {
    if label.group.family != Family::SO {
        return Err(Error::InvalidLabel(format!("{label}: ε-twist needs an SO(n) label")));
    }
    IrrepLabel::so(label.group.n, &epsilon_twist_weight(label.group.n, &label.lambda))
}

/// O(n) labels lying over the ε-orbit of an SO(n) label: two signed labels for
/// a fixed point, one unsigned label for an orbit of size two.
pub fn o_irreps_from_so(label: &IrrepLabel) -> Result<Vec<IrrepLabel>> {
    let twisted = epsilon_twist(label)?;
    let n = label.group.n;
    let base: Vec<i32> = label.lambda.iter().map(|v| v.abs()).collect();
    if twisted == *label {
        Ok(vec![
            IrrepLabel::new(super::CompactGroup::o(n), base.clone(), Some(super::OSign::Plus))?,
            IrrepLabel::new(super::CompactGroup::o(n), base, Some(super::OSign::Minus))?,
        ])
    } else {
        Ok(vec![IrrepLabel::new(super::CompactGroup::o(n), base, None)?])
    }
}

/// SO(n) labels in the restriction of an O(n) label.
pub fn so_constituents(label: &IrrepLabel) -> Result<Vec<IrrepLabel>> {
    let n = label.group.n;
    let l = IrrepLabel::so(n, &label.lambda)?;
    if label.is_signed() {
        Ok(vec![l])
    } else {
        let t = epsilon_twist(&l)?;
        Ok(vec![l, t])
    }
}

/// Highest-weight subtraction. With `genuine`, a negative multiplicity is an
/// error; otherwise virtual characters are decomposed with signed multiplicities.
pub fn decompose(p: &LaurentPoly, group: CompactGroup, genuine: bool) -> Result<Vec<(IrrepLabel, i64)>> {
    let conn = group.connected();
    if p.nvars() != conn.torus_rank() {
        return Err(Error::EmbeddingMismatch(format!("polynomial in {} variables for {conn}", p.nvars())));
    }
    let mut rem = p.clone();
    let mut out: BTreeMap<IrrepLabel, i64> = BTreeMap::new();
    while let Some((e, c)) = rem.leading_term() {
        let lambda: Vec<i32> = e.to_vec();
        if !conn.is_dominant(&lambda) {
            return Err(Error::NotDecomposable(format!("leading weight {lambda:?} not dominant")));
        }
        let mult = as_i64(c).ok_or_else(|| Error::NotDecomposable(format!("coefficient {c}")))?;
        if genuine && mult < 0 {
            return Err(Error::NotDecomposable(format!("negative multiplicity at {lambda:?}")));
        }
        let label = IrrepLabel::new(conn, lambda, None)?;
        let ch = weyl_character(&label)?;
        rem = &rem - &ch.scale(&rint(mult));
        *out.entry(label).or_insert(0) += mult;
    }
    Ok(out.into_iter().filter(|(_, m)| *m != 0).collect())
}

/// Placement of the torus coordinates of a block-diagonal subgroup
/// `G_1 × ... × G_r ⊂ G`: each source coordinate maps to a target coordinate or
/// is pinned to 1.
pub fn block_torus_embedding(source: CompactGroup, targets: &[CompactGroup]) -> Result<Substitution> {
    let total: usize = targets.iter().map(|g| g.n).sum();
    let mismatch = |why: String| Err(Error::EmbeddingMismatch(why));
    if total != source.n {
        return mismatch(format!("block sizes sum to {total}, expected {}", source.n));
    }
    let orthogonal = |g: &CompactGroup| matches!(g.family, Family::SO | Family::O);
    let unitary = |g: &CompactGroup| g.family == Family::U;
    let target_rank: usize = targets.iter().map(|g| g.torus_rank()).sum();
    let source_rank = source.torus_rank();
    let mut images = Vec::with_capacity(source_rank);
    if orthogonal(&source) && targets.iter().all(orthogonal) {
        for i in 0..target_rank {
            images.push(SignedMonomial::var(target_rank, i, false));
        }
        // Leftover +1 eigenvalues from odd-sized blocks pair up into pinned coordinates.
        let odd = targets.iter().filter(|g| g.n % 2 == 1).count();
        if source_rank != target_rank + odd / 2 {
            return mismatch(format!("source rank {source_rank} vs target rank {target_rank}"));
        }
        for _ in 0..odd / 2 {
            images.push(SignedMonomial::constant(target_rank, false));
        }
    } else if unitary(&source) && targets.iter().all(unitary) {
        for i in 0..target_rank {
            images.push(SignedMonomial::var(target_rank, i, false));
        }
    } else {
        return mismatch(format!("cannot embed {targets:?} in {source}"));
    }
    Ok(Substitution::new(target_rank, images))
}

/// Character of `label` restricted to the torus of a block-diagonal subgroup.
pub fn restrict_torus_character(label: &IrrepLabel, targets: &[CompactGroup]) -> Result<LaurentPoly> {
    let sub = block_torus_embedding(label.group, targets)?;
    weyl_character(label)?.specialize(&sub)
}

/// Weight multiplicity: coefficient of `z^mu` in the character.
pub fn weight_multiplicity(label: &IrrepLabel, mu: &[i32]) -> Result<i64> {
    let ch = weyl_character(label)?;
    if mu.len() != ch.nvars() {
        return Err(Error::SizeMismatch(format!("weight {mu:?} for {}", label.group)));
    }
    let c = ch.coeff(mu);
    as_i64(&c).ok_or_else(|| Error::NonIntegral(c.to_string()))
}

/// `∏_{all roots}(1 - z^α)`: the Weyl integration density of the identity component.
pub fn weyl_density(group: CompactGroup) -> LaurentPoly {
    let conn = group.connected();
    let r = conn.torus_rank();
    let mut acc = LaurentPoly::one(r);
    for a in conn.positive_roots() {
        for sign in [1, -1] {
            let mut f = LaurentPoly::one(r);
            f.add_term(a.iter().map(|v| sign * v).collect(), rint(-1));
            acc = &acc * &f;
        }
    }
    acc
}

/// `∫_{G°} f` for a class function given on the torus of the identity component.
pub fn haar_connected(group: CompactGroup, f: &LaurentPoly) -> Rat {
    let conn = group.connected();
    f.pairing(&weyl_density(conn)) / rint(conn.weyl_order() as i64)
}

/// Orthogonality pairing `<χ_a, χ_b>` on the identity component.
pub fn inner_product(a: &IrrepLabel, b: &IrrepLabel) -> Result<Rat> {
    let pa = weyl_character(a)?;
    let pb = weyl_character(b)?;
    Ok(haar_connected(a.group, &(&*pa * &pb.bar())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p1(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(1, terms.iter().map(|(e, c)| (Exps::from_slice(&[*e]), rint(*c))))
    }

    #[test]
    fn character_examples() {
        assert_eq!(*weyl_character(&IrrepLabel::so(3, &[1]).unwrap()).unwrap(), p1(&[(1, 1), (0, 1), (-1, 1)]));
        assert_eq!(*weyl_character(&IrrepLabel::su2(2).unwrap()).unwrap(), p1(&[(2, 1), (0, 1), (-2, 1)]));
        let so4 = weyl_character(&IrrepLabel::so(4, &[1, 1]).unwrap()).unwrap();
        let plus = weyl_character(&IrrepLabel::so(4, &[1, -1]).unwrap()).unwrap();
        // Λ² of the 4-dim vector rep, by direct weight enumeration of pairs.
        let weights = [[1, 0], [-1, 0], [0, 1], [0, -1]];
        let mut wedge = LaurentPoly::zero(2);
        for i in 0..4 {
            for j in (i + 1)..4 {
                let e = [weights[i][0] + weights[j][0], weights[i][1] + weights[j][1]];
                wedge.add_term(Exps::from_slice(&e), rint(1));
            }
        }
        assert_eq!(&*so4 + &*plus, wedge);
        assert_eq!(
            *so4,
            LaurentPoly::from_int_terms(2, &[(&[1, 1], 1), (&[1, -1], 0), (&[-1, 1], 0), (&[-1, -1], 1), (&[0, 0], 1)])
        );
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&IrrepLabel::so(3, &[2]).unwrap()).unwrap(), 5);
        assert_eq!(dimension(&IrrepLabel::so(5, &[1, 1]).unwrap()).unwrap(), 10);
        assert_eq!(weyl_dimension_formula(CompactGroup::so(5), &[1, 1]), rint(10));
        for g in [CompactGroup::so(4), CompactGroup::u(3), CompactGroup::su2(), CompactGroup::so(1)] {
            assert_eq!(dimension(&IrrepLabel::trivial(g)).unwrap(), 1);
        }
    }

    #[test]
    fn decompose_examples() {
        let v = weyl_character(&IrrepLabel::su2(1).unwrap()).unwrap();
        let got = decompose(&(&*v * &*v), CompactGroup::su2(), true).unwrap();
        assert_eq!(got, vec![(IrrepLabel::su2(0).unwrap(), 1), (IrrepLabel::su2(2).unwrap(), 1)]);

        let v = weyl_character(&IrrepLabel::so(3, &[1]).unwrap()).unwrap();
        let got = decompose(&(&*v * &*v), CompactGroup::so(3), true).unwrap();
        let labels: Vec<_> = got.iter().map(|(l, m)| (l.lambda[0], *m)).collect();
        assert_eq!(labels, vec![(0, 1), (1, 1), (2, 1)]);

        let l = IrrepLabel::so(5, &[2, 1]).unwrap();
        let got = decompose(&weyl_character(&l).unwrap(), CompactGroup::so(5), true).unwrap();
        assert_eq!(got, vec![(l, 1)]);

        let neg = weyl_character(&IrrepLabel::so(3, &[1]).unwrap()).unwrap().scale(&rint(-1));
        assert!(decompose(&neg, CompactGroup::so(3), true).is_err());
        assert_eq!(decompose(&neg, CompactGroup::so(3), false).unwrap()[0].1, -1);
        assert!(decompose(&p1(&[(1, 1)]), CompactGroup::so(3), true).is_err());
    }

    #[test]
    fn twist_examples() {
        let l = IrrepLabel::so(4, &[1, 1]).unwrap();
        assert_eq!(epsilon_twist(&l).unwrap(), IrrepLabel::so(4, &[1, -1]).unwrap());
        let l = IrrepLabel::so(4, &[1, 0]).unwrap();
        assert_eq!(epsilon_twist(&l).unwrap(), l);
        let l = IrrepLabel::so(5, &[2, 1]).unwrap();
        assert_eq!(epsilon_twist(&l).unwrap(), l);
    }

    #[test]
    fn o_labels_from_so() {
        let got = o_irreps_from_so(&IrrepLabel::so(4, &[1, -1]).unwrap()).unwrap();
        assert_eq!(got, vec![IrrepLabel::new(CompactGroup::o(4), vec![1, 1], None).unwrap()]);
        assert_eq!(o_irreps_from_so(&IrrepLabel::so(3, &[1]).unwrap()).unwrap().len(), 2);
        let got = o_irreps_from_so(&IrrepLabel::so(2, &[-2]).unwrap()).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].lambda, vec![2]);
    }

    #[test]
    fn restriction_examples() {
        let v3 = IrrepLabel::so(3, &[1]).unwrap();
        let got = restrict_torus_character(&v3, &[CompactGroup::so(2), CompactGroup::so(1)]).unwrap();
        assert_eq!(got, p1(&[(1, 1), (0, 1), (-1, 1)]));
        let v4 = IrrepLabel::so(4, &[1, 0]).unwrap();
        let got = restrict_torus_character(&v4, &[CompactGroup::so(2), CompactGroup::so(2)]).unwrap();
        assert_eq!(got, LaurentPoly::from_int_terms(2, &[(&[1, 0], 1), (&[-1, 0], 1), (&[0, 1], 1), (&[0, -1], 1)]));
        let o2 = IrrepLabel::new(CompactGroup::o(2), vec![2], None).unwrap();
        let got = restrict_torus_character(&o2, &[CompactGroup::so(2)]).unwrap();
        assert_eq!(got, p1(&[(2, 1), (-2, 1)]));
        // SO(4) ⊃ SO(1)×SO(3): the leftover +1 pairs with the SO(3) fixed vector.
        let got = restrict_torus_character(&v4, &[CompactGroup::so(1), CompactGroup::so(3)]).unwrap();
        assert_eq!(got, p1(&[(1, 1), (0, 2), (-1, 1)]));
        assert!(matches!(restrict_torus_character(&v4, &[CompactGroup::so(2)]), Err(Error::EmbeddingMismatch(_))));
    }

    #[test]
    fn weight_multiplicity_examples() {
        assert_eq!(weight_multiplicity(&IrrepLabel::su2(2).unwrap(), &[0]).unwrap(), 1);
        assert_eq!(weight_multiplicity(&IrrepLabel::su2(2).unwrap(), &[1]).unwrap(), 0);
        assert_eq!(weight_multiplicity(&IrrepLabel::u(&[2, 0]).unwrap(), &[1, 1]).unwrap(), 1);
    }
}
