use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::{CompactGroup, Family};
use crate::error::{Error, Result};

/// Which of the two O(n)-extensions of an ε-stable SO(n)-irrep is meant;
/// `Minus` is the `Plus` extension tensored with the determinant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OSign {
    Plus,
    Minus,
}

impl OSign {
    pub fn flip(self) -> OSign {
        match self {
            OSign::Plus => OSign::Minus,
            OSign::Minus => OSign::Plus,
        }
    }
}

/// Irreducible representation of a compact group, by highest weight.
///
/// For O(n) the weight is a partition with at most ⌊n/2⌋ parts, padded with
/// zeros. When n is even and the last part is nonzero the restriction to SO(n)
/// is the pair `{λ, ελ}` and `o_sign` is absent; otherwise `o_sign` selects
/// between the two extensions.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IrrepLabel {
    pub group: CompactGroup,
    pub lambda: Vec<i32>,
    pub o_sign: Option<OSign>,
}

impl IrrepLabel {
    pub fn new(group: CompactGroup, lambda: Vec<i32>, o_sign: Option<OSign>) -> Result<Self> {
        let r = group.torus_rank();
        let bad = |why: &str| Err(Error::InvalidLabel(format!("{group} {lambda:?}: {why}")));
        if lambda.len() != r {
            return bad(&format!("expected {r} entries"));
        }
        match group.family {
            Family::O => {
                if lambda.iter().any(|v| *v < 0) || lambda.windows(2).any(|w| w[0] < w[1]) {
                    return bad("O(n) weights are partitions");
                }
                let split = group.n % 2 == 0 && r > 0 && lambda[r - 1] != 0;
                if split && o_sign.is_some() {
                    return bad("labels with a nonzero last part carry no sign");
                }
                if !split && o_sign.is_none() {
                    return bad("a sign is required");
                }
            }
            _ => {
                if o_sign.is_some() {
                    return bad("only O(n) labels carry a sign");
                }
                if !group.is_dominant(&lambda) {
                    return bad("not dominant");
                }
            }
        }
        Ok(IrrepLabel { group, lambda, o_sign })
    }

    pub fn so(n: usize, lambda: &[i32]) -> Result<Self> {
        Self::new(CompactGroup::so(n), lambda.to_vec(), None)
    }

    /// O(n) label; the sign is ignored when the label has no sign.
    pub fn o(n: usize, lambda: &[i32], sign: OSign) -> Result<Self> {
        let r = n / 2;
        let split = n % 2 == 0 && r > 0 && lambda.get(r - 1).copied().unwrap_or(0) != 0;
        Self::new(CompactGroup::o(n), lambda.to_vec(), if split { None } else { Some(sign) })
    }

    pub fn u(lambda: &[i32]) -> Result<Self> {
        Self::new(CompactGroup::u(lambda.len()), lambda.to_vec(), None)
    }

    pub fn su2(m: i32) -> Result<Self> {
        Self::new(CompactGroup::su2(), vec![m], None)
    }

    pub fn trivial(group: CompactGroup) -> Self {
        let lambda = vec![0; group.torus_rank()];
        let o_sign = (group.family == Family::O).then_some(OSign::Plus);
        IrrepLabel { group, lambda, o_sign }
    }

    /// True for an O(n) label whose SO(n)-restriction is irreducible.
    pub fn is_signed(&self) -> bool {
        self.o_sign.is_some()
    }

    /// The other extension (`⊗ det`); identity for unsigned O labels.
    pub fn tensor_det(&self) -> IrrepLabel {
        let mut l = self.clone();
        l.o_sign = l.o_sign.map(OSign::flip);
        l
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.lambda.iter().map(|v| v.to_string()).collect();
        write!(f, "{}[{}]", self.group, parts.join(","))?;
        match self.o_sign {
            Some(OSign::Plus) => write!(f, "+"),
            Some(OSign::Minus) => write!(f, "-"),
            None => Ok(()),
        }
    }
}

/// All dominant labels of `group` whose first weight entry is at most `max_first`
/// (absolute value for U(n)).
pub fn labels_up_to(group: CompactGroup, max_first: i32) -> Vec<IrrepLabel> {
    let r = group.torus_rank();
    let mut out = Vec::new();
    let lo = match group.family {
        Family::U => -max_first,
        Family::SO if group.n % 2 == 0 => -max_first,
        _ => 0,
    };
    let mut cur = vec![0; r];
    fn rec(i: usize, lo: i32, hi: i32, group: CompactGroup, cur: &mut Vec<i32>, out: &mut Vec<IrrepLabel>) {
        if i == cur.len() {
            match group.family {
                Family::O => {
                    if cur.iter().all(|v| *v >= 0) {
                        for s in [OSign::Plus, OSign::Minus] {
                            if let Ok(l) = IrrepLabel::o(group.n, cur, s) {
                                if !out.contains(&l) {
                                    out.push(l);
                                }
                            }
                        }
                    }
                }
                _ => {
                    if let Ok(l) = IrrepLabel::new(group, cur.clone(), None) {
                        out.push(l);
                    }
                }
            }
            return;
        }
        let top = if i == 0 { hi } else { cur[i - 1].max(-cur[i - 1]) };
        for v in (lo..=top).rev() {
            cur[i] = v;
            rec(i + 1, lo, hi, group, cur, out);
        }
    }
    rec(0, lo, max_first, group, &mut cur, &mut out);
    out
}

/// Parse `SO(3)[1]`, `O(2)[0]-`, `U(2)[1,0]`, or the short form `SO:[1]` whose
/// rank comes from `default_n`. Weight entries may be separated by commas or
/// spaces.
pub fn parse_label(text: &str, default_n: Option<usize>) -> Result<IrrepLabel> {
    let bad = |why: &str| Error::InvalidLabel(format!("{text:?}: {why}"));
    let t = text.trim();
    let open = t.find('[').ok_or_else(|| bad("missing '['"))?;
    let close = t.rfind(']').ok_or_else(|| bad("missing ']'"))?;
    if close < open {
        return Err(bad("brackets out of order"));
    }
    let head = t[..open].trim().trim_end_matches(':');
    let (fam, n) = match head.find('(') {
        Some(i) => {
            let n = head[i + 1..]
                .strip_suffix(')')
                .and_then(|v| v.trim().parse::<usize>().ok())
                .ok_or_else(|| bad("bad group size"))?;
            (&head[..i], Some(n))
        }
        None => (head, None),
    };
    let family = match fam.trim().to_ascii_uppercase().as_str() {
        "SO" => Family::SO,
        "O" => Family::O,
        "U" => Family::U,
        "SU" | "SU2" => Family::SU,
        _ => return Err(bad("unknown group family")),
    };
    let lambda = t[open + 1..close]
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i32>().map_err(|_| bad("weights must be integers")))
        .collect::<Result<Vec<i32>>>()?;
    let n = match family {
        Family::SU => 2,
        Family::U => n.unwrap_or(lambda.len()),
        _ => n.or(default_n).ok_or_else(|| bad("group size missing"))?,
    };
    let group = CompactGroup::new(family, n)?;
    let o_sign = match t[close + 1..].trim() {
        "" => None,
        "+" => Some(OSign::Plus),
        "-" => Some(OSign::Minus),
        _ => return Err(bad("trailing text after ']'")),
    };
    let mut lambda = lambda;
    if lambda.len() < group.torus_rank() && family == Family::O {
        lambda.resize(group.torus_rank(), 0);
    }
    if family == Family::O && o_sign.is_none() {
        let r = group.torus_rank();
        let split = n % 2 == 0 && r > 0 && lambda.get(r - 1).copied().unwrap_or(0) != 0;
        if !split {
            return Err(bad("O(n) label needs a trailing + or -"));
        }
    }
    IrrepLabel::new(group, lambda, o_sign)
}
