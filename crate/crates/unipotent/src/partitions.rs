//! Partitions as Jordan types of nilpotent orbits in the classical Lie
//! algebras of types B, C and D.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::duality_infchar::{InfChar, WeylType};
use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

/// Odd orthogonal (B), symplectic (C) or even orthogonal (D).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormType {
    B,
    C,
    D,
}

impl FormType {
    pub const ALL: [FormType; 3] = [FormType::B, FormType::C, FormType::D];

    /// Parity of the parts that must occur with even multiplicity.
    fn restricted_parity(self) -> usize {
        match self {
            FormType::C => 1,
            FormType::B | FormType::D => 0,
        }
    }

    pub fn weyl_type(self) -> WeylType {
        match self {
            FormType::B | FormType::C => WeylType::BC,
            FormType::D => WeylType::D,
        }
    }

    /// Dimension of the complex Lie algebra of the given rank.
    pub fn algebra_dimension(self, rank: usize) -> usize {
        match self {
            FormType::B | FormType::C => rank * (2 * rank + 1),
            FormType::D => rank * (2 * rank).saturating_sub(1),
        }
    }
}

impl fmt::Display for FormType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FormType::B => "B",
            FormType::C => "C",
            FormType::D => "D",
        };
        f.write_str(s)
    }
}

impl FromStr for FormType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "B" | "b" => Ok(FormType::B),
            "C" | "c" => Ok(FormType::C),
            "D" | "d" => Ok(FormType::D),
            other => Err(Error::Parse {
                column: 1,
                message: format!("unknown form type `{other}`"),
            }),
        }
    }
}

impl Partition {
    /// Builds a partition from arbitrary parts: zeros are dropped and the rest sorted.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&x| x > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// `(m, m, ..., m)` with `count` copies.
    pub fn rectangle(m: usize, count: usize) -> Self {
        Partition::new(vec![m; count])
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn largest(&self) -> usize {
        self.parts.first().copied().unwrap_or(0)
    }

    pub fn rank(&self) -> usize {
        self.total() / 2
    }

    /// Part -> multiplicity, in increasing order of parts.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &x in &self.parts {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, part: usize) -> usize {
        self.parts.iter().filter(|&&x| x == part).count()
    }

    pub fn contains(&self, part: usize) -> bool {
        self.parts.contains(&part)
    }

    /// Every part repeated twice, the shape of a "doubled" diagram.
    pub fn doubled(&self) -> Partition {
        Partition::new(self.parts.iter().flat_map(|&x| [x, x]).collect())
    }

    fn partial_sums(&self, len: usize) -> Vec<usize> {
        let mut acc = 0;
        (0..len)
            .map(|i| {
                acc += self.parts.get(i).copied().unwrap_or(0);
                acc
            })
            .collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        f.write_str(&s.join(","))
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.parts.iter())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `5,3,1,1,1`. Whitespace around parts is ignored; the empty
    /// string is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        if s.trim().is_empty() {
            return Ok(Partition::empty());
        }
        let mut parts = Vec::new();
        let mut column = 1;
        for piece in s.split(',') {
            let lead = piece.len() - piece.trim_start().len();
            let token = piece.trim();
            let value: usize = token.parse().map_err(|_| Error::Parse {
                column: column + lead,
                message: format!("expected a positive integer, found `{token}`"),
            })?;
            if value == 0 {
                return Err(Error::Parse {
                    column: column + lead,
                    message: "parts must be positive".into(),
                });
            }
            if let Some(&prev) = parts.last() {
                if value > prev {
                    return Err(Error::Parse {
                        column: column + lead,
                        message: "parts must be weakly decreasing".into(),
                    });
                }
            }
            parts.push(value);
            column += piece.len() + 1;
        }
        Ok(Partition { parts })
    }
}

pub fn transpose(p: &Partition) -> Partition {
    let width = p.largest();
    let parts = (1..=width)
        .map(|j| p.parts.iter().take_while(|&&x| x >= j).count())
        .collect();
    Partition { parts }
}

pub fn is_type(p: &Partition, t: FormType) -> bool {
    let par = t.restricted_parity();
    p.multiplicities()
        .iter()
        .all(|(&part, &mult)| part % 2 != par || mult % 2 == 0)
}

fn require_type(p: &Partition, t: FormType) -> Result<()> {
    if is_type(p, t) {
        Ok(())
    } else {
        Err(Error::TypeMismatch {
            partition: p.to_string(),
            form: t.to_string(),
        })
    }
}

/// True iff every partial sum of `a` is at least the matching partial sum of `b`.
pub fn dominates(a: &Partition, b: &Partition) -> Result<bool> {
    if a.total() != b.total() {
        return Err(Error::TotalMismatch(a.total(), b.total()));
    }
    let len = a.len().max(b.len());
    let (sa, sb) = (a.partial_sums(len), b.partial_sums(len));
    Ok(sa.iter().zip(&sb).all(|(x, y)| x >= y))
}

/// The largest `t`-partition dominated by `p`.
///
/// Repeatedly lowers the last copy of the largest offending part by one and
/// hands the box to the first strictly shorter row that can take it.
pub fn collapse(p: &Partition, t: FormType) -> Result<Partition> {
    if t == FormType::C && p.total() % 2 == 1 {
        return Err(Error::NoValidPartition {
            form: t.to_string(),
            total: p.total(),
        });
    }
    let par = t.restricted_parity();
    let mut parts = p.parts.clone();
    loop {
        let cur = Partition { parts: parts.clone() };
        let offending = cur
            .multiplicities()
            .into_iter()
            .filter(|&(part, mult)| part % 2 == par && mult % 2 == 1)
            .map(|(part, _)| part)
            .max();
        let Some(q) = offending else {
            return Ok(cur);
        };
        let i = parts.iter().rposition(|&x| x == q).expect("part present");
        parts[i] -= 1;
        match parts[i + 1..].iter().position(|&x| x + 1 < q) {
            Some(off) => parts[i + 1 + off] += 1,
            None => parts.push(1),
        }
        parts = Partition::new(parts).parts;
    }
}

/// Every partition of `n`, in reverse lexicographic order.
pub fn partitions_of(n: usize) -> Vec<Partition> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if rest == 0 {
            out.push(Partition { parts: cur.clone() });
            return;
        }
        for x in (1..=rest.min(max)).rev() {
            cur.push(x);
            rec(rest - x, x, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// Exhaustive counterpart of [`collapse`]: the unique dominance-maximum among
/// all `t`-partitions dominated by `p`, or `None` if there is none or it is
/// not unique.
pub fn collapse_oracle(p: &Partition, t: FormType) -> Option<Partition> {
    let below: Vec<Partition> = partitions_of(p.total())
        .into_iter()
        .filter(|c| is_type(c, t) && dominates(p, c).unwrap_or(false))
        .collect();
    let maxima: Vec<&Partition> = below
        .iter()
        .filter(|c| below.iter().all(|d| dominates(c, d).unwrap_or(false)))
        .collect();
    match maxima.as_slice() {
        [only] => Some((*only).clone()),
        _ => None,
    }
}

/// Middle element `h` of a Jacobson-Morozov triple, as its dominant
/// representative of rank `⌊total/2⌋`. The returned value has entries `h`,
/// stored doubled like every other [`InfChar`].
pub fn jm_element(p: &Partition, t: FormType) -> Result<InfChar> {
    require_type(p, t)?;
    let mut all: Vec<i64> = p
        .parts
        .iter()
        .flat_map(|&m| {
            let m = m as i64;
            (0..m).map(move |j| m - 1 - 2 * j)
        })
        .collect();
    all.sort_unstable_by(|a, b| b.cmp(a));
    all.truncate(p.rank());
    Ok(InfChar::from_doubled(
        all.into_iter().map(|h| 2 * h).collect(),
        t.weyl_type(),
    ))
}

/// True iff every coordinate of `h` is even, i.e. the half of `h` is integral.
pub fn is_even_orbit(p: &Partition, t: FormType) -> Result<bool> {
    let h = jm_element(p, t)?;
    Ok(h.doubled().iter().all(|x| (x / 2) % 2 == 0))
}

pub fn orbit_dimension(p: &Partition, t: FormType) -> Result<usize> {
    require_type(p, t)?;
    let dim = t.algebra_dimension(p.rank());
    let squares: usize = transpose(p).parts.iter().map(|c| c * c).sum();
    let odd = p.parts.iter().filter(|&&x| x % 2 == 1).count();
    let correction = match t {
        FormType::C => squares + odd,
        FormType::B | FormType::D => squares - odd,
    };
    Ok(dim - correction / 2)
}

/// Very even: every part is even and occurs with even multiplicity.
/// Such D-partitions label two orbits exchanged by the outer automorphism.
pub fn is_very_even(p: &Partition) -> bool {
    !p.parts.is_empty() && p.multiplicities().iter().all(|(part, m)| part % 2 == 0 && m % 2 == 0)
}

/// Special partitions are exactly those whose transpose is again of the
/// matching type (C for C and D, B for B).
pub fn is_special(p: &Partition, t: FormType) -> bool {
    let tt = transpose(p);
    match t {
        FormType::B => is_type(&tt, FormType::B),
        FormType::C | FormType::D => is_type(&tt, FormType::C),
    }
}

pub fn regular(t: FormType, rank: usize) -> Partition {
    match t {
        FormType::B => Partition::new(vec![2 * rank + 1]),
        FormType::C => Partition::new(vec![2 * rank]),
        FormType::D if rank == 0 => Partition::empty(),
        FormType::D => Partition::new(vec![2 * rank - 1, 1]),
    }
}

pub fn total_for(t: FormType, rank: usize) -> usize {
    match t {
        FormType::B => 2 * rank + 1,
        FormType::C | FormType::D => 2 * rank,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    #[test]
    fn transpose_examples() {
        assert_eq!(transpose(&p("4,4,1,1")), p("4,2,2,2"));
        assert_eq!(transpose(&p("5")), p("1,1,1,1,1"));
        assert_eq!(transpose(&p("2,2")), p("2,2"));
        assert_eq!(transpose(&Partition::empty()), Partition::empty());
    }

    #[test]
    fn type_membership() {
        assert!(is_type(&p("2,2"), FormType::C));
        assert!(!is_type(&p("3,1"), FormType::C));
        assert!(is_type(&p("3,2,2"), FormType::B));
        assert!(!is_type(&p("4,1"), FormType::D));
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(collapse(&p("5,4,1,1"), FormType::B).unwrap(), p("5,3,1,1,1"));
        assert_eq!(collapse(&p("3,2,1"), FormType::C).unwrap(), p("2,2,2"));
        assert_eq!(collapse(&p("3,1,1"), FormType::B).unwrap(), p("3,1,1"));
        assert!(collapse(&p("3"), FormType::C).is_err());
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&p("2,2"), &p("2,1,1")).unwrap());
        assert!(!dominates(&p("4,4,3"), &p("5,4,1,1")).unwrap());
        assert!(dominates(&p("3,1"), &p("3,1")).unwrap());
        assert_eq!(dominates(&p("2"), &p("1")), Err(Error::TotalMismatch(2, 1)));
    }

    #[test]
    fn jm_examples() {
        let h = jm_element(&p("3,1,1"), FormType::B).unwrap();
        assert_eq!(h.doubled(), &[4, 0]);
        assert_eq!(jm_element(&p("4"), FormType::C).unwrap().doubled(), &[6, 2]);
        let zero = jm_element(&p("1,1,1,1,1"), FormType::B).unwrap();
        assert_eq!(zero.doubled(), &[0, 0]);
        assert!(jm_element(&p("3,1"), FormType::C).is_err());
    }

    #[test]
    fn evenness() {
        assert!(is_even_orbit(&p("3,1,1"), FormType::B).unwrap());
        assert!(!is_even_orbit(&p("5,2,2,1,1"), FormType::B).unwrap());
        assert!(is_even_orbit(&p("1,1,1"), FormType::B).unwrap());
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(orbit_dimension(&p("4"), FormType::C).unwrap(), 8);
        assert_eq!(orbit_dimension(&p("2,1,1"), FormType::C).unwrap(), 4);
        assert_eq!(orbit_dimension(&p("1,1,1,1"), FormType::C).unwrap(), 0);
        assert_eq!(orbit_dimension(&p("1,1,1,1,1"), FormType::B).unwrap(), 0);
    }

    #[test]
    fn regular_orbit_dimension_is_dim_minus_rank() {
        for t in FormType::ALL {
            for n in 1..=8 {
                let r = regular(t, n);
                assert_eq!(
                    orbit_dimension(&r, t).unwrap(),
                    t.algebra_dimension(n) - n,
                    "{t} rank {n}"
                );
            }
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!("3,4".parse::<Partition>(), Err(Error::Parse { column: 3, .. })));
        assert!(matches!("3,x".parse::<Partition>(), Err(Error::Parse { column: 3, .. })));
        assert!("0".parse::<Partition>().is_err());
        assert_eq!(" 3, 1 ".parse::<Partition>().unwrap(), p("3,1"));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..10).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22, 30]);
    }

    #[test]
    fn even_orbit_in_b_means_all_parts_odd() {
        for total in (1..=15).step_by(2) {
            for q in partitions_of(total) {
                if is_type(&q, FormType::B) {
                    let all_odd = q.parts().iter().all(|x| x % 2 == 1);
                    assert_eq!(is_even_orbit(&q, FormType::B).unwrap(), all_odd, "{q}");
                }
            }
        }
    }

    #[test]
    fn collapse_is_idempotent_and_valid() {
        for total in 0..=14 {
            for q in partitions_of(total) {
                for t in FormType::ALL {
                    let Ok(c) = collapse(&q, t) else { continue };
                    assert!(is_type(&c, t));
                    assert_eq!(collapse(&c, t).unwrap(), c);
                    if is_type(&q, t) {
                        assert_eq!(c, q);
                    }
                }
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_partition() -> impl Strategy<Value = Partition> {
            proptest::collection::vec(1usize..9, 0..9).prop_map(Partition::new)
        }

        proptest! {
            #[test]
            fn transpose_is_involution(q in arb_partition()) {
                prop_assert_eq!(transpose(&transpose(&q)), q.clone());
                prop_assert_eq!(transpose(&q).total(), q.total());
            }

            #[test]
            fn collapse_is_dominated(q in arb_partition()) {
                for t in FormType::ALL {
                    if let Ok(c) = collapse(&q, t) {
                        prop_assert!(dominates(&q, &c).unwrap());
                    }
                }
            }

            #[test]
            fn display_round_trips(q in arb_partition()) {
                prop_assert_eq!(q.to_string().parse::<Partition>().unwrap(), q);
            }
        }
    }
}
