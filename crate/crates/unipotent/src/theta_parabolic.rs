//! θ-stable parabolic data attached to a K-orbit: promotion, the Levi
//! sequence read off the promoted tableau, the λ parameter, and the
//! reconstruction of the dense orbit by adding signed columns.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::duality_infchar::{chi_prime, equal_mod_w, InfChar};
use crate::error::{Error, Result};
use crate::partitions::{collapse, orbit_dimension, transpose, Partition};
use crate::signed_tableaux::{Family, RealForm, Rows, Sign, SignedTableau};

/// Rows after promotion. All lengths are odd (Sp) or even (SO*), so the
/// usual validity rules no longer apply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PromotedTableau {
    family: Family,
    rows: Rows,
    source: Option<SignedTableau>,
}

impl PromotedTableau {
    pub fn new(family: Family, rows: Rows) -> Self {
        PromotedTableau {
            family,
            rows,
            source: None,
        }
    }

    pub fn rows(&self) -> &Rows {
        &self.rows
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// The tableau this one was promoted from, if any.
    pub fn source(&self) -> Option<&SignedTableau> {
        self.source.as_ref()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.rows.signature()
    }
}

impl fmt::Display for PromotedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rows.fmt(f)
    }
}

/// The pairs `(pᵢ, qᵢ)`, index 0 innermost.
///
/// For Sp the pair at index 0 is the Sp(p₀,q₀) factor and every other index
/// a unitary factor U(pᵢ,qᵢ). For SO* every index is a unitary factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LeviSequence {
    pub family: Family,
    pub pairs: Vec<(usize, usize)>,
}

impl LeviSequence {
    pub fn rank(&self) -> usize {
        self.pairs.iter().map(|(a, b)| a + b).sum()
    }

    pub fn sums(&self) -> (usize, usize) {
        self.pairs
            .iter()
            .fold((0, 0), |(x, y), (a, b)| (x + a, y + b))
    }

    pub fn is_unitary_level(&self, level: usize) -> bool {
        self.family == Family::SOStar || level > 0
    }

    pub fn size(&self, level: usize) -> usize {
        let (a, b) = self.pairs[level];
        a + b
    }
}

impl fmt::Display for LeviSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "[{}]", s.join(","))
    }
}

impl Serialize for LeviSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.pairs.iter().map(|&(a, b)| [a, b]))
    }
}

/// Parameter of a cohomologically induced module A_q(λ).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AqDatum {
    pub levi: LeviSequence,
    /// Doubled λ scalar for each entry of `levi`; zero on the Sp factor.
    pub lambda_doubled: Vec<i64>,
    /// λ + ρ in the coordinates fixed by `factor_order`.
    #[serde(rename = "infchar_doubled")]
    pub infchar: InfChar,
    pub weakly_fair: bool,
    pub dense_orbit: SignedTableau,
    pub multiplicity: usize,
    /// Unitary levels in decreasing order of their grading value.
    pub factor_order: Vec<usize>,
}

fn check_promotable(s: &SignedTableau) -> Result<()> {
    s.validate()?;
    for (part, multiplicity) in s.paired_multiplicities() {
        if multiplicity > 2 {
            return Err(Error::MultiplicityTooLarge { part, multiplicity });
        }
    }
    Ok(())
}

/// Replaces each pair `(m₊, m₋)` of paired parity by `((m+1)₊, (m−1)₋)`.
pub fn promote(s: &SignedTableau) -> Result<PromotedTableau> {
    check_promotable(s)?;
    let par = s.family().paired_parity();
    let mut rows = Rows::new();
    for (len, sign, k) in s.rows().iter() {
        if len % 2 == par {
            if sign == Sign::Plus {
                rows.add(len + 1, Sign::Plus, k);
                rows.add(len - 1, Sign::Minus, k);
            }
        } else {
            rows.add(len, sign, k);
        }
    }
    Ok(PromotedTableau {
        family: s.family(),
        rows,
        source: Some(s.clone()),
    })
}

fn level_length(family: Family, level: usize) -> usize {
    match family {
        Family::Sp => 2 * level + 1,
        Family::SOStar => 2 * level + 2,
    }
}

/// Reads `(pᵢ,qᵢ)` from the leading signs of the longest rows, trims a box
/// from both ends of those rows, and repeats.
pub fn levi_sequence(s1: &PromotedTableau) -> Result<LeviSequence> {
    let family = s1.family;
    let par = match family {
        Family::Sp => 1,
        Family::SOStar => 0,
    };
    if let Some(len) = s1.rows.lengths().into_iter().find(|l| l % 2 != par) {
        return Err(Error::Precondition(format!(
            "promoted {family} tableau has a row of length {len}"
        )));
    }
    let mut rows = s1.rows.clone();
    let max = rows.max_len();
    let top = match family {
        Family::Sp => max.saturating_sub(1) / 2,
        Family::SOStar if max == 0 => {
            return Ok(LeviSequence { family, pairs: Vec::new() });
        }
        Family::SOStar => max / 2 - 1,
    };
    let lowest_unitary = match family {
        Family::Sp => 1,
        Family::SOStar => 0,
    };
    let mut pairs = Vec::new();
    for level in (lowest_unitary..=top).rev() {
        let len = level_length(family, level);
        let plus = rows.count(len, Sign::Plus);
        let minus = rows.count(len, Sign::Minus);
        pairs.push((plus, minus));
        rows.remove(len, Sign::Plus, plus)?;
        rows.remove(len, Sign::Minus, minus)?;
        rows.add(len - 2, Sign::Minus, plus);
        rows.add(len - 2, Sign::Plus, minus);
    }
    if family == Family::Sp {
        let (plus, minus) = (rows.count(1, Sign::Plus), rows.count(1, Sign::Minus));
        if plus % 2 == 1 || minus % 2 == 1 {
            return Err(Error::Consistency(format!(
                "trimmed residue of {s1} has odd signature ({plus},{minus})"
            )));
        }
        pairs.push((plus / 2, minus / 2));
    }
    pairs.reverse();
    Ok(LeviSequence { family, pairs })
}

/// Adds signed columns from the outermost level inward and reads off the rows.
pub fn reconstruct_dense(levi: &LeviSequence) -> Result<PromotedTableau> {
    let family = levi.family;
    // (original length, original lead, current lead, count)
    let mut groups: Vec<(usize, Sign, Sign, usize)> = Vec::new();
    let place = |groups: &mut Vec<(usize, Sign, Sign, usize)>, len: usize, plus: usize, minus: usize| {
        let cont = |sign: Sign| -> usize {
            groups
                .iter()
                .filter(|g| g.2 == sign)
                .map(|g| g.3)
                .sum()
        };
        let (cp, cm) = (cont(Sign::Plus), cont(Sign::Minus));
        if cp > plus || cm > minus {
            return Err(Error::Consistency(format!(
                "alternation conflict at row length {len} in {levi}"
            )));
        }
        groups.push((len, Sign::Plus, Sign::Plus, plus - cp));
        groups.push((len, Sign::Minus, Sign::Minus, minus - cm));
        Ok(())
    };
    let lowest_unitary = match family {
        Family::Sp => 1,
        Family::SOStar => 0,
    };
    for level in (lowest_unitary..levi.pairs.len()).rev() {
        let (p, q) = levi.pairs[level];
        place(&mut groups, level_length(family, level), p, q)?;
        for g in groups.iter_mut() {
            g.2 = g.2.flip();
        }
    }
    if family == Family::Sp {
        let (p0, q0) = levi.pairs.first().copied().unwrap_or((0, 0));
        place(&mut groups, 1, 2 * p0, 2 * q0)?;
    }
    let mut rows = Rows::new();
    for (len, lead, _, k) in groups {
        rows.add(len, lead, k);
    }
    Ok(PromotedTableau::new(family, rows))
}

/// The real form whose signature matches promoted rows.
fn realform_of(s1: &PromotedTableau) -> Result<RealForm> {
    let (plus, minus) = s1.signature();
    match s1.family {
        Family::Sp if plus % 2 == 0 && minus % 2 == 0 => Ok(RealForm::Sp {
            p: plus / 2,
            q: minus / 2,
        }),
        Family::Sp => Err(Error::Precondition(format!(
            "signature ({plus},{minus}) of {s1} is not even"
        ))),
        Family::SOStar => Ok(RealForm::SOStar {
            n: (plus + minus) / 2,
        }),
    }
}

/// Inverse of [`promote`]: merges each `((m+1)₊, (m−1)₋)` back into `(m₊, m₋)`.
pub fn collapse_promoted(s1: &PromotedTableau) -> Result<SignedTableau> {
    let rf = realform_of(s1)?;
    let par = s1.family.paired_parity();
    let mut rows = s1.rows.clone();
    let top = rows.max_len();
    for m in (1..top).filter(|m| m % 2 == par) {
        if rows.count(m + 1, Sign::Plus) % 2 == 0 {
            continue;
        }
        let needs_short = m > 1;
        if needs_short && rows.count(m - 1, Sign::Minus) % 2 == 0 {
            return Err(Error::Precondition(format!(
                "{s1} is not a promoted tableau: no partner for {}+",
                m + 1
            )));
        }
        rows.remove(m + 1, Sign::Plus, 1)?;
        if needs_short {
            rows.remove(m - 1, Sign::Minus, 1)?;
        }
        rows.add(m, Sign::Plus, 1);
        rows.add(m, Sign::Minus, 1);
    }
    SignedTableau::new(rows, rf).map_err(|e| match e {
        Error::InvalidTableau(v) => Error::Precondition(format!(
            "{s1} does not collapse to a valid tableau: {}",
            v.join("; ")
        )),
        other => other,
    })
}

/// Complex orbit induced from the zero orbit of the Levi factor.
pub fn induced_shape(levi: &LeviSequence) -> Result<Partition> {
    let mut heights = Vec::new();
    for (level, &(p, q)) in levi.pairs.iter().enumerate() {
        if levi.is_unitary_level(level) {
            heights.push(p + q);
            heights.push(p + q);
        } else {
            heights.push(2 * (p + q));
        }
    }
    let stacked = transpose(&Partition::new(heights));
    collapse(&stacked, levi.family.form_type())
}

pub fn birational_check(s: &SignedTableau) -> Result<bool> {
    let t = s.family().form_type();
    let levi = levi_sequence(&promote(s)?)?;
    Ok(orbit_dimension(&s.shape(), t)? == orbit_dimension(&induced_shape(&levi)?, t)?)
}

/// Coordinates of the parabolic: unitary blocks in `order`, then the Sp block.
struct Layout {
    /// (level, first coordinate, size)
    blocks: Vec<(usize, usize, usize)>,
    grading: Vec<i64>,
    rank: usize,
}

fn layout(levi: &LeviSequence, order: &[usize]) -> Layout {
    let mut blocks = Vec::new();
    let mut grading = Vec::new();
    let mut at = 0;
    for (k, &level) in order.iter().enumerate() {
        let size = levi.size(level);
        blocks.push((level, at, size));
        grading.extend(std::iter::repeat((order.len() - k) as i64).take(size));
        at += size;
    }
    if levi.family == Family::Sp {
        let size = levi.size(0);
        blocks.push((0, at, size));
        grading.extend(std::iter::repeat(0).take(size));
        at += size;
    }
    Layout {
        blocks,
        grading,
        rank: at,
    }
}

/// Roots `α` with `⟨α, x⟩ > 0`, as integer coordinate vectors.
fn nilradical_roots(family: Family, grading: &[i64]) -> Vec<Vec<i64>> {
    let n = grading.len();
    let mut roots = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for (sa, sb) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
                if sa * grading[a] + sb * grading[b] > 0 {
                    let mut v = vec![0; n];
                    v[a] = sa;
                    v[b] = sb;
                    roots.push(v);
                }
            }
        }
        if family == Family::Sp && grading[a] != 0 {
            let mut v = vec![0; n];
            v[a] = 2 * grading[a].signum();
            roots.push(v);
        }
    }
    roots
}

struct Evaluation {
    lambda_doubled: Vec<i64>,
    infchar: Vec<i64>,
    weakly_fair: bool,
}

/// Given doubled centres `f` for each unitary level, builds λ and checks
/// ⟨λ + ρ(𝔲), α⟩ ≥ 0 on every root of 𝔲.
fn evaluate(levi: &LeviSequence, centres: &[(usize, i64)]) -> Result<(Vec<usize>, Evaluation)> {
    let mut sorted = centres.to_vec();
    sorted.sort_by(|a, b| b.1.cmp(&a.1).then(b.0.cmp(&a.0)));
    let order: Vec<usize> = sorted.iter().map(|c| c.0).collect();
    let lay = layout(levi, &order);
    let roots = nilradical_roots(levi.family, &lay.grading);
    // Sum of the roots of 𝔲 is 2ρ(𝔲), i.e. ρ(𝔲) doubled.
    let mut rho_u = vec![0i64; lay.rank];
    for r in &roots {
        for (x, y) in rho_u.iter_mut().zip(r) {
            *x += y;
        }
    }
    let mut lambda_doubled = vec![0i64; levi.pairs.len()];
    let mut shifted = vec![0i64; lay.rank];
    let mut infchar = vec![0i64; lay.rank];
    for &(level, start, size) in &lay.blocks {
        let unitary = levi.is_unitary_level(level);
        let centre = if unitary {
            sorted.iter().find(|c| c.0 == level).map(|c| c.1).unwrap_or(0)
        } else {
            0
        };
        let c = rho_u.get(start).copied().unwrap_or(0);
        if rho_u[start..start + size].iter().any(|&x| x != c) {
            return Err(Error::Consistency(format!(
                "ρ(𝔲) is not constant on level {level} of {levi}"
            )));
        }
        if unitary {
            lambda_doubled[level] = centre - c;
        }
        for j in 0..size {
            shifted[start + j] = if unitary { centre } else { 0 };
            infchar[start + j] = if unitary {
                centre + (size as i64 - 1) - 2 * j as i64
            } else {
                2 * (size - j) as i64
            };
        }
    }
    let weakly_fair = roots
        .iter()
        .all(|r| r.iter().zip(&shifted).map(|(a, b)| a * b).sum::<i64>() >= 0);
    Ok((
        order,
        Evaluation {
            lambda_doubled,
            infchar,
            weakly_fair,
        },
    ))
}

fn take_all(pool: &mut Vec<(i64, usize)>, values: &[i64]) -> bool {
    let mut taken: Vec<usize> = Vec::new();
    for v in values {
        match pool.iter().position(|&(x, k)| x == v.abs() && k > 0) {
            Some(i) => {
                pool[i].1 -= 1;
                taken.push(i);
            }
            None => {
                for &i in &taken {
                    pool[i].1 += 1;
                }
                return false;
            }
        }
    }
    true
}

fn give_back(pool: &mut [(i64, usize)], values: &[i64]) {
    for v in values {
        if let Some(slot) = pool.iter_mut().find(|(x, _)| *x == v.abs()) {
            slot.1 += 1;
        }
    }
}

fn string(centre: i64, size: usize) -> Vec<i64> {
    (0..size)
        .map(|j| centre + (size as i64 - 1) - 2 * j as i64)
        .collect()
}

struct Search<'a> {
    levi: &'a LeviSequence,
    levels: Vec<usize>,
    bound: i64,
    found_any: bool,
}

impl Search<'_> {
    fn run(
        &mut self,
        idx: usize,
        pool: &mut Vec<(i64, usize)>,
        centres: &mut Vec<(usize, i64)>,
    ) -> Result<Option<(Vec<usize>, Evaluation)>> {
        if idx == self.levels.len() {
            if pool.iter().any(|&(_, k)| k > 0) {
                return Ok(None);
            }
            self.found_any = true;
            let (order, eval) = evaluate(self.levi, centres)?;
            return Ok(eval.weakly_fair.then_some((order, eval)));
        }
        let level = self.levels[idx];
        let size = self.levi.size(level);
        let parity = (size as i64 - 1).rem_euclid(2);
        let mut f = self.bound;
        while f >= -self.bound {
            if f.rem_euclid(2) == parity {
                let entries = string(f, size);
                if take_all(pool, &entries) {
                    centres.push((level, f));
                    let hit = self.run(idx + 1, pool, centres)?;
                    centres.pop();
                    give_back(pool, &entries);
                    if hit.is_some() {
                        return Ok(hit);
                    }
                }
            }
            f -= 1;
        }
        Ok(None)
    }
}

/// Finds λ with λ + ρ ≡ χ′(shape) in the weakly fair range.
///
/// The centre of every unitary block is searched exhaustively against the
/// absolute values of χ′; the blocks are then graded in decreasing order of
/// their centres, and the weakly fair inequalities are checked root by root.
pub fn solve_lambda(s: &SignedTableau) -> Result<AqDatum> {
    let family = s.family();
    let s1 = promote(s)?;
    let levi = levi_sequence(&s1)?;
    let target = chi_prime(&s.shape(), family)?;

    let mut pool: Vec<(i64, usize)> = Vec::new();
    for v in target.dominant() {
        match pool.last_mut() {
            Some(last) if last.0 == v => last.1 += 1,
            _ => pool.push((v, 1)),
        }
    }
    if family == Family::Sp {
        let n0 = levi.size(0);
        let sp_block: Vec<i64> = (1..=n0 as i64).rev().map(|x| 2 * x).collect();
        if !take_all(&mut pool, &sp_block) {
            return Err(Error::Consistency(format!(
                "ρ of the Sp({},{}) factor does not fit inside χ′ = {target} for {s}",
                levi.pairs[0].0, levi.pairs[0].1
            )));
        }
    }
    let levels: Vec<usize> = (0..levi.pairs.len())
        .rev()
        .filter(|&l| levi.is_unitary_level(l) && levi.size(l) > 0)
        .collect();
    let bound = target.dominant().first().copied().unwrap_or(0) + 2 * levi.rank() as i64;
    let mut search = Search {
        levi: &levi,
        levels,
        bound,
        found_any: false,
    };
    let hit = search.run(0, &mut pool, &mut Vec::new())?;
    let Some((factor_order, eval)) = hit else {
        let why = if search.found_any {
            "no weakly fair λ"
        } else {
            "no λ with λ + ρ ≡ χ′"
        };
        return Err(Error::Consistency(format!("{why} for {s} with levi {levi}")));
    };
    let infchar = InfChar::from_doubled(eval.infchar, family.weyl_type());
    if !equal_mod_w(&infchar, &target)? {
        return Err(Error::Consistency(format!(
            "λ + ρ = {infchar} is not conjugate to χ′ = {target} for {s}"
        )));
    }
    Ok(AqDatum {
        levi,
        lambda_doubled: eval.lambda_doubled,
        infchar,
        weakly_fair: eval.weakly_fair,
        dense_orbit: s.clone(),
        multiplicity: 1,
        factor_order,
    })
}

/// Full A_q(λ) datum of an orbit whose paired-parity multiplicities are at
/// most two, including the check that the orbit is dense in the induced one.
pub fn aq_datum(s: &SignedTableau) -> Result<AqDatum> {
    let s1 = promote(s)?;
    let levi = levi_sequence(&s1)?;
    let rebuilt = reconstruct_dense(&levi)?;
    if rebuilt.rows() != s1.rows() {
        return Err(Error::Consistency(format!(
            "columns of {levi} add up to {rebuilt}, expected {s1}"
        )));
    }
    let dense = collapse_promoted(&rebuilt)?;
    if &dense != s {
        return Err(Error::Consistency(format!(
            "dense orbit {dense} differs from {s}"
        )));
    }
    let datum = solve_lambda(s)?;
    if !datum.weakly_fair {
        return Err(Error::Consistency(format!("datum for {s} is not weakly fair")));
    }
    Ok(datum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed_tableaux::all_tableaux;

    fn sp(p: usize, q: usize, text: &str) -> SignedTableau {
        SignedTableau::parse(text, RealForm::Sp { p, q }).unwrap()
    }

    fn so(n: usize, text: &str) -> SignedTableau {
        SignedTableau::parse(text, RealForm::SOStar { n }).unwrap()
    }

    fn levi(family: Family, pairs: &[(usize, usize)]) -> LeviSequence {
        LeviSequence {
            family,
            pairs: pairs.to_vec(),
        }
    }

    #[test]
    fn promote_examples() {
        assert_eq!(promote(&sp(2, 1, "2+ 2- 1+^2")).unwrap().to_string(), "3+ 1+^2 1-");
        assert_eq!(promote(&sp(2, 3, "1+^4 1-^6")).unwrap().to_string(), "1+^4 1-^6");
        assert_eq!(promote(&so(3, "3+ 3-")).unwrap().to_string(), "4+ 2-");
        assert!(matches!(
            promote(&sp(2, 2, "2+^2 2-^2")),
            Err(Error::MultiplicityTooLarge { part: 2, multiplicity: 4 })
        ));
    }

    #[test]
    fn levi_examples() {
        let l = levi_sequence(&promote(&sp(2, 1, "2+ 2- 1+^2")).unwrap()).unwrap();
        assert_eq!(l.pairs, vec![(1, 1), (1, 0)]);
        let l = levi_sequence(&promote(&sp(2, 3, "1+^4 1-^6")).unwrap()).unwrap();
        assert_eq!(l.pairs, vec![(2, 3)]);
        let l = levi_sequence(&promote(&sp(1, 1, "2+ 2-")).unwrap()).unwrap();
        assert_eq!(l.pairs, vec![(0, 1), (1, 0)]);
        let l = levi_sequence(&promote(&so(3, "3+ 3-")).unwrap()).unwrap();
        assert_eq!(l.pairs, vec![(0, 2), (1, 0)]);
    }

    #[test]
    fn reconstruct_examples() {
        let r = reconstruct_dense(&levi(Family::Sp, &[(2, 1)])).unwrap();
        assert_eq!(r.to_string(), "1+^4 1-^2");
        let r = reconstruct_dense(&levi(Family::Sp, &[(0, 1), (1, 0)])).unwrap();
        assert_eq!(r.to_string(), "3+ 1-");
        let r = reconstruct_dense(&levi(Family::Sp, &[(1, 1), (1, 0)])).unwrap();
        assert_eq!(r.to_string(), "3+ 1+^2 1-");
        assert!(reconstruct_dense(&levi(Family::Sp, &[(0, 0), (1, 0)])).is_err());
    }

    #[test]
    fn collapse_promoted_examples() {
        let s1 = promote(&sp(2, 1, "2+ 2- 1+^2")).unwrap();
        assert_eq!(collapse_promoted(&s1).unwrap().to_string(), "2+ 2- 1+^2");
        let s1 = PromotedTableau::new(Family::Sp, "3+^2 1-^2".parse().unwrap());
        assert_eq!(collapse_promoted(&s1).unwrap().to_string(), "3+^2 1-^2");
        let s1 = PromotedTableau::new(Family::SOStar, "4+ 2-".parse().unwrap());
        assert_eq!(collapse_promoted(&s1).unwrap().to_string(), "3+ 3-");
    }

    #[test]
    fn induced_shape_examples() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(induced_shape(&levi(Family::Sp, &[(2, 1)])).unwrap(), p("1,1,1,1,1,1"));
        assert_eq!(induced_shape(&levi(Family::Sp, &[(0, 1), (1, 0)])).unwrap(), p("2,2"));
        assert_eq!(induced_shape(&levi(Family::Sp, &[(1, 1), (1, 0)])).unwrap(), p("2,2,1,1"));
    }

    #[test]
    fn birational_examples() {
        assert!(birational_check(&SignedTableau::zero(RealForm::Sp { p: 2, q: 1 })).unwrap());
        assert!(birational_check(&sp(1, 1, "2+ 2-")).unwrap());
    }

    #[test]
    fn lambda_example() {
        let d = solve_lambda(&sp(1, 1, "2+ 2-")).unwrap();
        assert_eq!(d.levi.pairs, vec![(0, 1), (1, 0)]);
        assert_eq!(d.lambda_doubled, vec![0, -4]);
        assert_eq!(d.infchar.to_string(), "0,1");
        assert!(d.weakly_fair);
    }

    #[test]
    fn zero_orbit_datum_is_trivial() {
        let z = SignedTableau::zero(RealForm::Sp { p: 2, q: 1 });
        let d = aq_datum(&z).unwrap();
        assert_eq!(d.levi.pairs, vec![(2, 1)]);
        assert_eq!(d.lambda_doubled, vec![0]);
        assert_eq!(d.infchar.to_string(), "3,2,1");
        assert_eq!(d.multiplicity, 1);
    }

    #[test]
    fn datum_json_shape() {
        let d = aq_datum(&sp(1, 1, "2+ 2-")).unwrap();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["levi"], serde_json::json!([[0, 1], [1, 0]]));
        assert_eq!(v["lambda_doubled"], serde_json::json!([0, -4]));
        assert_eq!(v["infchar_doubled"], serde_json::json!([0, 2]));
        assert_eq!(v["dense_orbit"], "2+ 2-");
        assert_eq!(v["weakly_fair"], true);
        assert_eq!(v["multiplicity"], 1);
    }

    #[test]
    fn large_multiplicity_is_rejected() {
        assert!(matches!(
            aq_datum(&sp(2, 2, "2+^2 2-^2")),
            Err(Error::MultiplicityTooLarge { .. })
        ));
    }

    #[test]
    fn machine_round_trips_small_ranks() {
        for family in Family::ALL {
            for n in 1..=5 {
                for s in all_tableaux(family, n) {
                    if !s.has_small_multiplicities() {
                        continue;
                    }
                    let s1 = promote(&s).unwrap();
                    assert_eq!(s1.signature(), s.signature(), "{s}");
                    let l = levi_sequence(&s1).unwrap();
                    assert_eq!(l.rank(), n, "{s}");
                    if let RealForm::Sp { p, q } = s.realform() {
                        assert_eq!(l.sums(), (p, q), "{s}");
                    }
                    assert_eq!(reconstruct_dense(&l).unwrap().rows(), s1.rows(), "{s}");
                    assert_eq!(collapse_promoted(&s1).unwrap(), s, "{s}");
                    assert!(birational_check(&s).unwrap(), "{s}");
                    let d = aq_datum(&s).unwrap();
                    assert!(d.weakly_fair);
                }
            }
        }
    }
}
