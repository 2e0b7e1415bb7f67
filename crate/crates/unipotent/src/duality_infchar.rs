//! Spaltenstein duality, the two infinitesimal characters attached to an
//! orbit, and equality up to the Weyl group.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{self, collapse, is_type, transpose, FormType, Partition};
use crate::signed_tableaux::Family;

/// Which signed permutations count as Weyl group elements.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum WeylType {
    /// All sign changes allowed.
    BC,
    /// Only an even number of sign changes.
    D,
}

/// A vector of half-integers stored doubled. Entries keep the order in
/// which they were produced; use [`equal_mod_w`] to compare.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InfChar {
    entries: Vec<i64>,
    weyl: WeylType,
}

impl InfChar {
    pub fn from_doubled(entries: Vec<i64>, weyl: WeylType) -> Self {
        InfChar { entries, weyl }
    }

    pub fn from_integers(values: &[i64], weyl: WeylType) -> Self {
        InfChar::from_doubled(values.iter().map(|v| 2 * v).collect(), weyl)
    }

    pub fn doubled(&self) -> &[i64] {
        &self.entries
    }

    pub fn weyl_type(&self) -> WeylType {
        self.weyl
    }

    pub fn with_weyl_type(mut self, weyl: WeylType) -> Self {
        self.weyl = weyl;
        self
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|x| x % 2 == 0)
    }

    /// Concatenation, keeping this value's Weyl type.
    pub fn concat(&self, other: &InfChar) -> InfChar {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        InfChar::from_doubled(entries, self.weyl)
    }

    /// Absolute values, sorted in decreasing order.
    pub fn dominant(&self) -> Vec<i64> {
        let mut v: Vec<i64> = self.entries.iter().map(|x| x.abs()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Entries sorted in decreasing order (no sign changes).
    pub fn sorted(&self) -> InfChar {
        let mut entries = self.entries.clone();
        entries.sort_unstable_by(|a, b| b.cmp(a));
        InfChar::from_doubled(entries, self.weyl)
    }

    fn negatives(&self) -> usize {
        self.entries.iter().filter(|&&x| x < 0).count()
    }
}

pub fn format_half(doubled: i64) -> String {
    if doubled % 2 == 0 {
        (doubled / 2).to_string()
    } else {
        format!("{doubled}/2")
    }
}

impl fmt::Display for InfChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.entries.iter().map(|&x| format_half(x)).collect();
        f.write_str(&s.join(","))
    }
}

impl Serialize for InfChar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries.iter())
    }
}

/// Equality up to the Weyl group of the common type.
pub fn equal_mod_w(a: &InfChar, b: &InfChar) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::IncomparableInfChar(format!(
            "sizes {} and {}",
            a.len(),
            b.len()
        )));
    }
    if a.weyl != b.weyl {
        return Err(Error::IncomparableInfChar(format!(
            "Weyl types {:?} and {:?}",
            a.weyl, b.weyl
        )));
    }
    if a.dominant() != b.dominant() {
        return Ok(false);
    }
    Ok(match a.weyl {
        WeylType::BC => true,
        WeylType::D => {
            a.entries.contains(&0) || a.negatives() % 2 == b.negatives() % 2
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    CtoB,
    BtoC,
    DtoD,
}

impl Direction {
    pub fn source(self) -> FormType {
        match self {
            Direction::CtoB => FormType::C,
            Direction::BtoC => FormType::B,
            Direction::DtoD => FormType::D,
        }
    }

    pub fn target(self) -> FormType {
        match self {
            Direction::CtoB => FormType::B,
            Direction::BtoC => FormType::C,
            Direction::DtoD => FormType::D,
        }
    }

    pub fn from_source(t: FormType) -> Direction {
        match t {
            FormType::C => Direction::CtoB,
            FormType::B => Direction::BtoC,
            FormType::D => Direction::DtoD,
        }
    }
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .chars()
            .filter(|c| c.is_ascii_alphanumeric())
            .collect::<String>()
            .to_ascii_lowercase();
        match norm.as_str() {
            "ctob" | "cb" => Ok(Direction::CtoB),
            "btoc" | "bc" => Ok(Direction::BtoC),
            "dtod" | "dd" => Ok(Direction::DtoD),
            _ => Err(Error::Parse {
                column: 1,
                message: format!("unknown duality direction `{s}`"),
            }),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Direction::CtoB => "CtoB",
            Direction::BtoC => "BtoC",
            Direction::DtoD => "DtoD",
        };
        f.write_str(s)
    }
}

fn bump_largest(p: &Partition, delta: isize) -> Partition {
    let mut parts = p.parts().to_vec();
    match parts.first_mut() {
        Some(first) => *first = (*first as isize + delta) as usize,
        None if delta > 0 => parts.push(delta as usize),
        None => {}
    }
    Partition::new(parts)
}

pub fn spaltenstein_dual(p: &Partition, direction: Direction) -> Result<Partition> {
    let source = direction.source();
    if !is_type(p, source) {
        return Err(Error::TypeMismatch {
            partition: p.to_string(),
            form: source.to_string(),
        });
    }
    match direction {
        Direction::CtoB => Ok(transpose(&collapse(&bump_largest(p, 1), FormType::B)?)),
        Direction::BtoC => collapse(&transpose(&bump_largest(p, -1)), FormType::C),
        Direction::DtoD => collapse(&transpose(p), FormType::D),
    }
}

/// The orbit dual to a shape of the given family (C to B, or D to D).
pub fn dual_of_shape(shape: &Partition, family: Family) -> Result<Partition> {
    spaltenstein_dual(shape, Direction::from_source(family.form_type()))
}

/// The orbit of the family's own group dual to `dual` (B to C, or D to D).
pub fn shape_of_dual(dual: &Partition, family: Family) -> Result<Partition> {
    spaltenstein_dual(dual, Direction::from_source(family.dual_form_type()))
}

/// The integral infinitesimal character read off the even columns of a shape.
pub fn chi_prime(shape: &Partition, family: Family) -> Result<InfChar> {
    let columns = transpose(shape);
    if let Some(c) = columns.parts().iter().find(|c| *c % 2 == 1) {
        return Err(Error::InvalidShape {
            shape: shape.to_string(),
            reason: format!("column of odd length {c}"),
        });
    }
    let mut values = Vec::with_capacity(shape.rank());
    for (idx, &c) in columns.parts().iter().enumerate() {
        let d = (c / 2) as i64;
        let odd_column = idx % 2 == 0;
        let starts_at_one = match family {
            Family::Sp => odd_column,
            Family::SOStar => !odd_column,
        };
        if starts_at_one {
            values.extend(1..=d);
        } else {
            values.extend(0..d);
        }
    }
    Ok(InfChar::from_integers(&values, family.weyl_type()))
}

/// Half of the Jacobson-Morozov element of `dual`.
pub fn chi_of_dual(dual: &Partition, t: FormType) -> Result<InfChar> {
    let h = partitions::jm_element(dual, t)?;
    let halved = h.doubled().iter().map(|x| x / 2).collect();
    Ok(InfChar::from_doubled(halved, t.weyl_type()))
}

/// Every partition of `2n` whose columns all have even length.
pub fn even_column_shapes(n: usize) -> Vec<Partition> {
    partitions::partitions_of(n)
        .into_iter()
        .map(|q| q.doubled())
        .collect()
}

/// The part-occurrence criterion: every part of the given parity up to the
/// largest part appears.
pub fn occurrence_criterion(shape: &Partition, family: Family) -> bool {
    let parity = match family {
        Family::Sp => 0,
        Family::SOStar => 1,
    };
    (1..=shape.largest())
        .filter(|m| m % 2 == parity)
        .all(|m| shape.contains(m))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IcCounterexample {
    pub shape: Partition,
    pub dual: Partition,
    pub chi_agrees: bool,
    pub dual_even: bool,
    pub criterion: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IcReport {
    pub family: Family,
    pub rank: usize,
    pub instances: usize,
    pub counterexamples: Vec<IcCounterexample>,
}

/// Checks that, at rank `n`, the three conditions "χ(d(O)) ≡ χ′(O)",
/// "d(O) is even" and the part-occurrence criterion coincide on every shape.
pub fn check_ic_equivalence(family: Family, n: usize) -> Result<IcReport> {
    let mut report = IcReport {
        family,
        rank: n,
        instances: 0,
        counterexamples: Vec::new(),
    };
    let dual_type = family.dual_form_type();
    for shape in even_column_shapes(n) {
        let dual = dual_of_shape(&shape, family)?;
        let chi_agrees = equal_mod_w(&chi_of_dual(&dual, dual_type)?, &chi_prime(&shape, family)?)?;
        let dual_even = partitions::is_even_orbit(&dual, dual_type)?;
        let criterion = occurrence_criterion(&shape, family);
        report.instances += 1;
        if chi_agrees != dual_even || dual_even != criterion {
            report.counterexamples.push(IcCounterexample {
                shape,
                dual,
                chi_agrees,
                dual_even,
                criterion,
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn ints(v: &[i64]) -> Vec<i64> {
        v.iter().map(|x| 2 * x).collect()
    }

    #[test]
    fn dual_examples() {
        assert_eq!(spaltenstein_dual(&p("2,2"), Direction::CtoB).unwrap(), p("3,1,1"));
        assert_eq!(spaltenstein_dual(&p("3,1,1"), Direction::BtoC).unwrap(), p("2,2"));
        for n in 1..=6 {
            let zero = Partition::rectangle(1, 2 * n);
            let reg = Partition::new(vec![2 * n]);
            assert_eq!(spaltenstein_dual(&zero, Direction::CtoB).unwrap(), Partition::new(vec![2 * n + 1]));
            assert_eq!(
                spaltenstein_dual(&reg, Direction::CtoB).unwrap(),
                Partition::rectangle(1, 2 * n + 1)
            );
        }
        assert!(spaltenstein_dual(&p("3,1"), Direction::CtoB).is_err());
    }

    #[test]
    fn chi_prime_examples() {
        let c = chi_prime(&p("4,4,1,1"), Family::Sp).unwrap();
        assert_eq!(c.doubled(), ints(&[1, 2, 0, 1, 0]).as_slice());
        let c = chi_prime(&Partition::rectangle(1, 8), Family::Sp).unwrap();
        assert_eq!(c.to_string(), "1,2,3,4");
        let c = chi_prime(&Partition::rectangle(3, 2), Family::Sp).unwrap();
        assert_eq!(c.to_string(), "1,0,1");
        let c = chi_prime(&Partition::rectangle(1, 6), Family::SOStar).unwrap();
        assert_eq!(c.to_string(), "0,1,2");
        assert!(chi_prime(&p("3,1"), Family::Sp).is_err());
    }

    #[test]
    fn chi_of_dual_examples() {
        assert_eq!(chi_of_dual(&p("3,1,1"), FormType::B).unwrap().to_string(), "1,0");
        assert_eq!(chi_of_dual(&p("7"), FormType::B).unwrap().to_string(), "3,2,1");
        assert_eq!(chi_of_dual(&p("3,2,2"), FormType::B).unwrap().to_string(), "1,1/2,1/2");
    }

    #[test]
    fn weyl_equivalence() {
        let bc = |v: &[i64]| InfChar::from_integers(v, WeylType::BC);
        let d = |v: &[i64]| InfChar::from_integers(v, WeylType::D);
        assert!(equal_mod_w(&bc(&[1, 0]), &bc(&[0, -1])).unwrap());
        assert!(!equal_mod_w(&bc(&[1, 0]), &bc(&[1, 1])).unwrap());
        assert!(equal_mod_w(&d(&[1, 0]), &d(&[-1, 0])).unwrap());
        assert!(!equal_mod_w(&d(&[1, 2]), &d(&[-1, 2])).unwrap());
        assert!(equal_mod_w(&d(&[1, 2]), &d(&[-1, -2])).unwrap());
        assert!(equal_mod_w(&bc(&[1]), &bc(&[1, 0])).is_err());
        assert!(equal_mod_w(&bc(&[1]), &d(&[1])).is_err());
        let lhs = chi_of_dual(&spaltenstein_dual(&p("2,2"), Direction::CtoB).unwrap(), FormType::B).unwrap();
        assert!(equal_mod_w(&lhs, &chi_prime(&p("2,2"), Family::Sp).unwrap()).unwrap());
    }

    #[test]
    fn half_rendering() {
        let v = InfChar::from_doubled(vec![3, 1, -1, -3, 4], WeylType::BC);
        assert_eq!(v.to_string(), "3/2,1/2,-1/2,-3/2,2");
    }

    #[test]
    fn ic_examples() {
        assert!(occurrence_criterion(&p("2,2"), Family::Sp));
        assert!(!occurrence_criterion(&p("4,4,1,1"), Family::Sp));
        let d = spaltenstein_dual(&p("4,4,1,1"), Direction::CtoB).unwrap();
        assert_eq!(d, p("5,2,2,1,1"));
        assert!(!chi_of_dual(&d, FormType::B).unwrap().is_integral());
    }

    #[test]
    fn ic_equivalence_small_ranks() {
        for family in [Family::Sp, Family::SOStar] {
            for n in 1..=6 {
                let r = check_ic_equivalence(family, n).unwrap();
                assert!(r.counterexamples.is_empty(), "{r:?}");
                assert!(r.instances > 0);
            }
        }
    }

    #[test]
    fn duals_land_in_target_type() {
        for t in FormType::ALL {
            for rank in 0..=6 {
                let total = partitions::total_for(t, rank);
                let dir = Direction::from_source(t);
                for q in partitions::partitions_of(total).into_iter().filter(|q| is_type(q, t)) {
                    let d = spaltenstein_dual(&q, dir).unwrap();
                    assert!(is_type(&d, dir.target()), "{t} {q} -> {d}");
                    assert_eq!(d.total(), partitions::total_for(dir.target(), rank));
                }
            }
        }
    }

    #[test]
    fn duality_is_involutive_on_specials() {
        let pairs = [
            (Direction::CtoB, Direction::BtoC),
            (Direction::BtoC, Direction::CtoB),
            (Direction::DtoD, Direction::DtoD),
        ];
        for (there, back) in pairs {
            let t = there.source();
            for rank in 0..=8 {
                let total = partitions::total_for(t, rank);
                for q in partitions::partitions_of(total) {
                    if !is_type(&q, t) || !partitions::is_special(&q, t) {
                        continue;
                    }
                    let d = spaltenstein_dual(&q, there).unwrap();
                    assert_eq!(spaltenstein_dual(&d, back).unwrap(), q, "{t} {q} -> {d}");
                }
            }
        }
    }

    #[test]
    fn chi_prime_is_integral_with_rank_entries() {
        for n in 1..=8 {
            for shape in even_column_shapes(n) {
                for family in [Family::Sp, Family::SOStar] {
                    let c = chi_prime(&shape, family).unwrap();
                    assert!(c.is_integral());
                    assert_eq!(c.len(), n);
                }
            }
        }
    }
}
