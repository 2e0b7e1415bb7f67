//! Orbit-level real parabolic induction from GL(k,ℍ) factors, and the
//! strip-and-induce description of nonintegral special unipotent data.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::duality_infchar::{chi_of_dual, chi_prime, equal_mod_w, shape_of_dual, InfChar, WeylType};
use crate::error::{Error, Result};
use crate::partitions::{is_even_orbit, is_type, is_very_even, total_for, transpose, Partition};
use crate::signed_tableaux::{enumerate_K_orbits, rows_valid_for, RealForm, Rows, Sign, SignedTableau};

/// One application of the raising construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InductionStep {
    pub k: usize,
    pub source: SignedTableau,
    pub target: SignedTableau,
    /// The attacked part.
    pub part: usize,
    pub r: usize,
    pub a: usize,
    pub a_prime: usize,
    pub b: usize,
}

/// Data of a representation induced from a unipotent one of a smaller group
/// tensored with trivial characters of GL(kᵢ,ℍ) factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InducedDatum {
    pub base_form: RealForm,
    pub gl_sizes: Vec<usize>,
    pub base_orbit: SignedTableau,
    #[serde(rename = "infchar_doubled")]
    pub infchar: InfChar,
    pub induced_orbit: SignedTableau,
}

/// Candidate row sets obtained by adding two boxes to the `2k` longest rows.
/// When `grow` is set and there are fewer than `2k` rows, the missing rows
/// are grown from nothing into rows of length two.
fn raised_candidates(rows: &Rows, k: usize, grow: bool) -> Result<Vec<Rows>> {
    let mut need = 2 * k;
    let mut fixed = Rows::new();
    let mut boundary = None;
    for len in rows.lengths() {
        let c = rows.count_len(len);
        if c <= need {
            for sign in Sign::BOTH {
                fixed.add(len + 2, sign, rows.count(len, sign));
            }
            need -= c;
        } else {
            boundary = Some(len);
            break;
        }
    }
    let mut rest = Rows::new();
    if let Some(bl) = boundary {
        for (len, sign, c) in rows.iter().filter(|&(l, _, _)| l < bl) {
            rest.add(len, sign, c);
        }
    }
    let with = |extra: &[(usize, Sign, usize)]| {
        let mut out = fixed.clone();
        for &(l, s, c) in extra {
            out.add(l, s, c);
        }
        for (l, s, c) in rest.iter() {
            out.add(l, s, c);
        }
        out
    };
    let mut out = Vec::new();
    match boundary {
        _ if need == 0 => {
            let untouched: Vec<(usize, Sign, usize)> = boundary
                .map(|bl| Sign::BOTH.iter().map(|&s| (bl, s, rows.count(bl, s))).collect())
                .unwrap_or_default();
            out.push(with(&untouched));
        }
        Some(bl) => {
            let (kp, km) = (rows.count(bl, Sign::Plus), rows.count(bl, Sign::Minus));
            for plus in (0..=need.min(kp)).rev() {
                let minus = need - plus;
                if minus > km {
                    continue;
                }
                out.push(with(&[
                    (bl + 2, Sign::Plus, plus),
                    (bl + 2, Sign::Minus, minus),
                    (bl, Sign::Plus, kp - plus),
                    (bl, Sign::Minus, km - minus),
                ]));
            }
        }
        None if grow => {
            for plus in (0..=need).rev() {
                out.push(with(&[(2, Sign::Plus, plus), (2, Sign::Minus, need - plus)]));
            }
        }
        None => {
            return Err(Error::Precondition(format!(
                "{rows} has {} rows, fewer than 2k = {}",
                rows.row_count(),
                2 * k
            )));
        }
    }
    Ok(out)
}

fn raise(s: &SignedTableau, k: usize, grow: bool) -> Result<Vec<SignedTableau>> {
    if k == 0 {
        return Err(Error::Precondition("k must be positive".into()));
    }
    s.validate()?;
    let rf = s.realform().grown(k);
    let mut out: Vec<SignedTableau> = raised_candidates(s.rows(), k, grow)?
        .into_iter()
        .filter(|rows| rows_valid_for(rows, rf))
        .map(|rows| SignedTableau::unchecked(rows, rf))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// All valid tableaux for the grown real form obtained by lengthening the
/// `2k` longest rows of `s` by two boxes each.
pub fn raise_rows(s: &SignedTableau, k: usize) -> Result<Vec<SignedTableau>> {
    raise(s, k, false)
}

/// Like [`raise_rows`], but rows of length zero may be grown when `s` has
/// fewer than `2k` rows.
pub fn raise_rows_growing(s: &SignedTableau, k: usize) -> Result<Vec<SignedTableau>> {
    raise(s, k, true)
}

/// The unique raising that halves the multiplicity pressure on `part`:
/// `k = a′ + b`, where `2b` counts the rows longer than `part`.
pub fn unique_raise(s: &SignedTableau, part: usize, a_prime: usize) -> Result<InductionStep> {
    s.validate()?;
    let family = s.family();
    if part == 0 || part % 2 != family.paired_parity() {
        return Err(Error::Precondition(format!(
            "{part} does not have the paired parity for {family}"
        )));
    }
    let mult = s.rows().count_len(part);
    if mult == 0 {
        return Err(Error::Precondition(format!("{s} has no part {part}")));
    }
    let a = mult / 2;
    if a_prime == 0 || a_prime > a {
        return Err(Error::Precondition(format!(
            "a′ = {a_prime} outside 1..={a} for part {part} of {s}"
        )));
    }
    let longer: usize = s
        .rows()
        .iter()
        .filter(|&(l, _, _)| l > part)
        .map(|(_, _, c)| c)
        .sum();
    if longer % 2 == 1 {
        return Err(Error::Consistency(format!(
            "odd number of rows longer than {part} in {s}"
        )));
    }
    let b = longer / 2;
    let k = a_prime + b;
    let mut targets = raise_rows(s, k)?;
    if targets.len() != 1 {
        return Err(Error::Consistency(format!(
            "raising {s} at part {part} with k = {k} gives {} tableaux, expected one",
            targets.len()
        )));
    }
    Ok(InductionStep {
        k,
        source: s.clone(),
        target: targets.remove(0),
        part,
        r: part / 2,
        a,
        a_prime,
        b,
    })
}

/// `2k` consecutive entries centred at `t`, as doubled values:
/// `2t + (2k−1), 2t + (2k−3), …, 2t − (2k−1)`.
pub fn det_string(k: usize, t_doubled: i64, weyl: WeylType) -> InfChar {
    let top = 2 * k as i64 - 1;
    InfChar::from_doubled((0..2 * k as i64).map(|j| t_doubled + top - 2 * j).collect(), weyl)
}

/// Removes every even part; the removed parts come in pairs `(2kᵢ, 2kᵢ)`.
/// Returns the core and the sizes `k₁ ≥ k₂ ≥ …`.
pub fn strip_even_parts(dual: &Partition) -> Result<(Partition, Vec<usize>)> {
    let mut gl_sizes = Vec::new();
    for (&part, &mult) in dual.multiplicities().iter().rev() {
        if part % 2 == 0 {
            if mult % 2 == 1 {
                return Err(Error::Precondition(format!(
                    "even part {part} of {dual} has odd multiplicity"
                )));
            }
            gl_sizes.extend(std::iter::repeat(part / 2).take(mult / 2));
        }
    }
    let core = Partition::new(dual.parts().iter().copied().filter(|x| x % 2 == 1).collect());
    Ok((core, gl_sizes))
}

/// One datum per K-orbit reached by inducing the orbits of the core's dual
/// through the GL(kᵢ,ℍ) factors, smallest factor first.
/// Compares modulo W, ignoring the sign refinement when the dual partition is
/// very even and so names a pair of orbits.
pub fn infchar_matches(a: &InfChar, b: &InfChar, dual: &Partition) -> Result<bool> {
    if is_very_even(dual) {
        equal_mod_w(&a.clone().with_weyl_type(WeylType::BC), &b.clone().with_weyl_type(WeylType::BC))
    } else {
        equal_mod_w(a, b)
    }
}

pub fn special_unipotent_data(dual: &Partition, rf: RealForm) -> Result<Vec<InducedDatum>> {
    let family = rf.family();
    let t = family.dual_form_type();
    if !is_type(dual, t) || dual.total() != total_for(t, rf.rank()) {
        return Err(Error::TypeMismatch {
            partition: dual.to_string(),
            form: format!("{t} of rank {}", rf.rank()),
        });
    }
    if is_even_orbit(dual, t)? {
        return Err(Error::Precondition(format!(
            "{dual} is even; use the integral route"
        )));
    }
    let (core, gl_sizes) = strip_even_parts(dual)?;
    let big_k: usize = gl_sizes.iter().sum();
    let target_shape = shape_of_dual(dual, family)?;
    let no_orbits = || Error::NoOrbits {
        form: rf.to_string(),
        shape: target_shape.to_string(),
    };
    let base_form = rf.shrunk(big_k).ok_or_else(no_orbits)?;
    let base_shape = shape_of_dual(&core, family)?;
    let odd_column = |s: &Partition| transpose(s).parts().iter().any(|c| c % 2 == 1);
    if odd_column(&target_shape) || odd_column(&base_shape) {
        return Err(no_orbits());
    }

    let mut infchar = chi_prime(&base_shape, family)?;
    for &k in &gl_sizes {
        infchar = infchar.concat(&det_string(k, 0, family.weyl_type()));
    }
    let infchar = infchar.sorted();
    let expected = chi_of_dual(dual, t)?;
    if !infchar_matches(&infchar, &expected, dual)? {
        return Err(Error::Consistency(format!(
            "induced infinitesimal character {infchar} differs from χ({dual}) = {expected}"
        )));
    }

    let mut ascending = gl_sizes.clone();
    ascending.reverse();
    let mut reached: BTreeMap<SignedTableau, Vec<SignedTableau>> = BTreeMap::new();
    for base in enumerate_K_orbits(base_form, &base_shape)? {
        let mut current = vec![base.clone()];
        for &k in &ascending {
            let mut next = Vec::new();
            for c in &current {
                next.extend(raise_rows_growing(c, k)?);
            }
            current = next;
        }
        for target in current {
            if target.shape() != target_shape {
                return Err(Error::Consistency(format!(
                    "induced orbit {target} has shape {}, expected {target_shape}",
                    target.shape()
                )));
            }
            reached.entry(target).or_default().push(base.clone());
        }
    }
    if reached.is_empty() {
        return Err(no_orbits());
    }
    reached
        .into_iter()
        .map(|(target, mut bases)| {
            bases.dedup();
            if bases.len() != 1 {
                return Err(Error::Consistency(format!(
                    "{target} is induced from {} different base orbits",
                    bases.len()
                )));
            }
            Ok(InducedDatum {
                base_form,
                gl_sizes: gl_sizes.clone(),
                base_orbit: bases.remove(0),
                infchar: infchar.clone(),
                induced_orbit: target,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(p: usize, q: usize, text: &str) -> SignedTableau {
        SignedTableau::parse(text, RealForm::Sp { p, q }).unwrap()
    }

    fn names(v: &[SignedTableau]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn worked_raising_example() {
        let s = sp(5, 4, "3+^2 3-^2 2+ 2- 1+^2");
        assert_eq!(
            names(&raise_rows(&s, 1).unwrap()),
            vec!["5+^2 3-^2 2+ 2- 1+^2", "5-^2 3+^2 2+ 2- 1+^2"]
        );
        assert_eq!(names(&raise_rows(&s, 3).unwrap()), vec!["5+^2 5-^2 4+ 4- 1+^2"]);
        assert!(raise_rows(&s, 0).is_err());
        assert!(raise_rows(&s, 5).is_err());
    }

    #[test]
    fn raising_the_zero_orbit() {
        let z = SignedTableau::zero(RealForm::Sp { p: 2, q: 1 });
        assert_eq!(names(&raise_rows(&z, 1).unwrap()), vec!["3+^2 1+^2 1-^2", "3-^2 1+^4"]);
        for s in raise_rows(&z, 1).unwrap() {
            assert_eq!(s.realform(), RealForm::Sp { p: 3, q: 2 });
        }
    }

    #[test]
    fn growing_rows_from_nothing() {
        let empty = SignedTableau::zero(RealForm::Sp { p: 0, q: 0 });
        assert!(raise_rows(&empty, 1).is_err());
        assert_eq!(names(&raise_rows_growing(&empty, 1).unwrap()), vec!["2+ 2-"]);
    }

    #[test]
    fn unique_raise_examples() {
        let s = sp(5, 4, "3+^2 3-^2 2+ 2- 1+^2");
        let step = unique_raise(&s, 2, 1).unwrap();
        assert_eq!((step.r, step.a, step.a_prime, step.b, step.k), (1, 1, 1, 2, 3));
        assert_eq!(step.target.to_string(), "5+^2 5-^2 4+ 4- 1+^2");
        let step = unique_raise(&sp(2, 2, "2+^2 2-^2"), 2, 1).unwrap();
        assert_eq!(step.k, 1);
        assert_eq!(step.target.to_string(), "4+ 4- 2+ 2-");
        assert!(unique_raise(&SignedTableau::zero(RealForm::Sp { p: 1, q: 1 }), 2, 1).is_err());
        assert!(unique_raise(&SignedTableau::zero(RealForm::Sp { p: 1, q: 1 }), 1, 1).is_err());
    }

    #[test]
    fn det_string_examples() {
        assert_eq!(det_string(1, 1, WeylType::BC).to_string(), "1,0");
        assert_eq!(det_string(1, 0, WeylType::BC).to_string(), "1/2,-1/2");
        assert_eq!(det_string(2, 0, WeylType::BC).to_string(), "3/2,1/2,-1/2,-3/2");
    }

    #[test]
    fn strip_examples() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(strip_even_parts(&p("3,2,2")).unwrap(), (p("3"), vec![1]));
        assert_eq!(strip_even_parts(&p("5,4,4,2,2,1,1")).unwrap(), (p("5,1,1"), vec![2, 1]));
        assert_eq!(strip_even_parts(&p("5,3,1")).unwrap(), (p("5,3,1"), vec![]));
        assert!(strip_even_parts(&p("4,1")).is_err());
    }

    #[test]
    fn nonintegral_example() {
        let dual: Partition = "3,2,2".parse().unwrap();
        let data = special_unipotent_data(&dual, RealForm::Sp { p: 2, q: 1 }).unwrap();
        assert!(!data.is_empty());
        for d in &data {
            assert_eq!(d.base_form, RealForm::Sp { p: 1, q: 0 });
            assert_eq!(d.gl_sizes, vec![1]);
            assert_eq!(d.infchar.dominant(), vec![2, 1, 1]);
            assert_eq!(d.induced_orbit.shape(), "3,3".parse().unwrap());
        }
        let even: Partition = "3,1,1".parse().unwrap();
        assert!(special_unipotent_data(&even, RealForm::Sp { p: 1, q: 1 }).is_err());
    }
}
