//! GL_2 per-term values against characters written out by hand.

use ktype_core::compactrep::{IrrepLabel, OSign};
use ktype_core::exactalg::{parse_rat, rint, Rat};
use ktype_core::geommult::geom_multiplicity;
use ktype_core::glstd::{Block, StandardModule, Variant, VirtualRep};
use ktype_core::oracle;

fn o2_labels() -> Vec<IrrepLabel> {
    let mut out = vec![IrrepLabel::o(2, &[0], OSign::Plus).unwrap(), IrrepLabel::o(2, &[0], OSign::Minus).unwrap()];
    out.extend((1..=5).map(|m| IrrepLabel::o(2, &[m], OSign::Plus).unwrap()));
    out
}

/// `θ_ω` at `I`, `diag(1,-1)`, `-I`, and its Fourier coefficients on SO(2).
struct O2Char {
    at_id: i64,
    at_refl: i64,
    at_minus: i64,
    rot: Vec<(i32, i64)>,
}

fn o2_char(l: &IrrepLabel) -> O2Char {
    let m = l.lambda[0];
    if m == 0 {
        let s = if l.o_sign == Some(OSign::Plus) { 1 } else { -1 };
        O2Char { at_id: 1, at_refl: s, at_minus: 1, rot: vec![(0, 1)] }
    } else {
        O2Char { at_id: 2, at_refl: 0, at_minus: if m % 2 == 0 { 2 } else { -2 }, rot: vec![(m, 1), (-m, 1)] }
    }
}

fn terms(pi: &StandardModule, omega: &IrrepLabel) -> Vec<Rat> {
    let r = geom_multiplicity(&VirtualRep::from(pi.clone()), omega, Variant::O).unwrap();
    r.per_term.iter().map(|(_, v)| parse_rat(v).unwrap()).collect()
}

#[test]
fn finite_dimensional_terms() {
    for a in -2..=4 {
        for b in -3..=a {
            let pi = StandardModule::new(2, vec![Block::fd(a, b).unwrap()]).unwrap();
            let d = a - b;
            let refl: i64 = (0..=d).map(|i| if (b + i).rem_euclid(2) == 0 { 1 } else { -1 }).sum();
            let rot: Vec<i32> = (0..=d).map(|i| d - 2 * i).collect();
            for omega in o2_labels() {
                let w = o2_char(&omega);
                // CT(θ_π(t) · θ_ω(t^{-1})) over the rotation torus.
                let ct: i64 =
                    rot.iter().map(|e| w.rot.iter().filter(|(f, _)| f == e).map(|(_, c)| c).sum::<i64>()).sum();
                let want = vec![rint(0), rint(refl * w.at_refl) / rint(2), rint(0), rint(ct) / rint(2)];
                assert_eq!(terms(&pi, &omega), want, "F({a},{b}) against {omega}");
                let total: Rat = want.iter().sum();
                assert_eq!(total, rint(oracle::multiplicity(&VirtualRep::from(pi.clone()), &omega).unwrap()));
            }
        }
    }
}

#[test]
fn principal_series_terms() {
    let th = |eps: u8, negative: bool| if negative && eps == 1 { -1 } else { 1 };
    for e1 in 0..=1u8 {
        for e2 in 0..=1u8 {
            let pi = StandardModule::new(2, vec![Block::ps(e1, e2)]).unwrap();
            for omega in o2_labels() {
                let w = o2_char(&omega);
                let refl = th(e1, false) * th(e2, true) + th(e1, true) * th(e2, false);
                let want = vec![
                    rint(w.at_id) / rint(4),
                    rint(refl * w.at_refl) / rint(4),
                    rint(th(e1, true) * th(e2, true) * w.at_minus) / rint(4),
                    rint(0),
                ];
                assert_eq!(terms(&pi, &omega), want, "P({e1},{e2}) against {omega}");
            }
        }
    }
}

#[test]
fn spherical_and_twisted() {
    let triv = IrrepLabel::o(2, &[0], OSign::Plus).unwrap();
    let m = |e1, e2| {
        let pi = VirtualRep::from(StandardModule::new(2, vec![Block::ps(e1, e2)]).unwrap());
        geom_multiplicity(&pi, &triv, Variant::O).unwrap().value
    };
    assert_eq!(m(0, 0), rint(1));
    assert_eq!(m(1, 0), rint(0));
    assert_eq!(m(1, 1), rint(0));
}
