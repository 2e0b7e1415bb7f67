//! Signed Young tableaux: nilpotent K-orbits on 𝔭 for Sp(p,q) and SO*(2n).

use std::cmp::Reverse;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::duality_infchar::{even_column_shapes, WeylType};
use crate::error::{Error, Result};
use crate::partitions::{is_type, transpose, FormType, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sp,
    SOStar,
}

impl Family {
    pub const ALL: [Family; 2] = [Family::Sp, Family::SOStar];

    /// Type of the complexified Lie algebra.
    pub fn form_type(self) -> FormType {
        match self {
            Family::Sp => FormType::C,
            Family::SOStar => FormType::D,
        }
    }

    /// Type of the Langlands dual algebra.
    pub fn dual_form_type(self) -> FormType {
        match self {
            Family::Sp => FormType::B,
            Family::SOStar => FormType::D,
        }
    }

    pub fn weyl_type(self) -> WeylType {
        self.form_type().weyl_type()
    }

    /// Parity of the row lengths whose two signs must be balanced
    /// (k⁺ = k⁻); rows of the other parity need even k⁺ and k⁻.
    pub fn paired_parity(self) -> usize {
        match self {
            Family::Sp => 0,
            Family::SOStar => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Sp => "sp",
            Family::SOStar => "sostar",
        }
    }

    /// All real forms of complex rank `n`.
    pub fn real_forms(self, n: usize) -> Vec<RealForm> {
        match self {
            Family::Sp => (0..=n).rev().map(|p| RealForm::Sp { p, q: n - p }).collect(),
            Family::SOStar => vec![RealForm::SOStar { n }],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sp" | "sppq" => Ok(Family::Sp),
            "sostar" | "so*" | "sostar2n" => Ok(Family::SOStar),
            other => Err(Error::Parse {
                column: 1,
                message: format!("unknown family `{other}` (expected sp or sostar)"),
            }),
        }
    }
}

impl Serialize for Family {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RealForm {
    Sp { p: usize, q: usize },
    SOStar { n: usize },
}

impl RealForm {
    pub fn family(self) -> Family {
        match self {
            RealForm::Sp { .. } => Family::Sp,
            RealForm::SOStar { .. } => Family::SOStar,
        }
    }

    pub fn rank(self) -> usize {
        match self {
            RealForm::Sp { p, q } => p + q,
            RealForm::SOStar { n } => n,
        }
    }

    pub fn boxes(self) -> usize {
        2 * self.rank()
    }

    /// The form obtained after parabolic induction from a GL(k,ℍ) factor.
    pub fn grown(self, k: usize) -> RealForm {
        match self {
            RealForm::Sp { p, q } => RealForm::Sp { p: p + k, q: q + k },
            RealForm::SOStar { n } => RealForm::SOStar { n: n + 2 * k },
        }
    }

    /// The Levi factor left after removing GL(k,ℍ), if it exists.
    pub fn shrunk(self, k: usize) -> Option<RealForm> {
        match self {
            RealForm::Sp { p, q } => Some(RealForm::Sp {
                p: p.checked_sub(k)?,
                q: q.checked_sub(k)?,
            }),
            RealForm::SOStar { n } => Some(RealForm::SOStar {
                n: n.checked_sub(2 * k)?,
            }),
        }
    }
}

impl fmt::Display for RealForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealForm::Sp { p, q } => write!(f, "Sp({p},{q})"),
            RealForm::SOStar { n } => write!(f, "SO*({})", 2 * n),
        }
    }
}

impl Serialize for RealForm {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Number of `+` and `-` boxes in a row of length `len` starting with `lead`.
pub fn row_signature(len: usize, lead: Sign) -> (usize, usize) {
    let (long, short) = (len.div_ceil(2), len / 2);
    match lead {
        Sign::Plus => (long, short),
        Sign::Minus => (short, long),
    }
}

/// Sign of the last box of a row.
pub fn row_end(len: usize, lead: Sign) -> Sign {
    if len % 2 == 1 {
        lead
    } else {
        lead.flip()
    }
}

/// A multiset of signed rows kept in canonical order: length decreasing,
/// then `+` before `-`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rows {
    counts: BTreeMap<(Reverse<usize>, Sign), usize>,
}

impl Rows {
    pub fn new() -> Self {
        Rows::default()
    }

    pub fn count(&self, len: usize, sign: Sign) -> usize {
        self.counts.get(&(Reverse(len), sign)).copied().unwrap_or(0)
    }

    pub fn count_len(&self, len: usize) -> usize {
        self.count(len, Sign::Plus) + self.count(len, Sign::Minus)
    }

    /// Adds `k` rows; zero-length rows are ignored.
    pub fn add(&mut self, len: usize, sign: Sign, k: usize) {
        if len == 0 || k == 0 {
            return;
        }
        *self.counts.entry((Reverse(len), sign)).or_insert(0) += k;
    }

    pub fn remove(&mut self, len: usize, sign: Sign, k: usize) -> Result<()> {
        let have = self.count(len, sign);
        if have < k {
            return Err(Error::Consistency(format!(
                "cannot remove {k} rows {len}{} from {have}",
                sign.symbol()
            )));
        }
        if have == k {
            self.counts.remove(&(Reverse(len), sign));
        } else {
            self.counts.insert((Reverse(len), sign), have - k);
        }
        Ok(())
    }

    /// `(length, lead, multiplicity)` in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Sign, usize)> + '_ {
        self.counts.iter().map(|(&(Reverse(l), s), &k)| (l, s, k))
    }

    /// Distinct row lengths, decreasing.
    pub fn lengths(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.iter().map(|(l, _, _)| l).collect();
        v.dedup();
        v
    }

    pub fn row_count(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn shape(&self) -> Partition {
        Partition::new(
            self.iter()
                .flat_map(|(l, _, k)| std::iter::repeat(l).take(k))
                .collect(),
        )
    }

    pub fn signature(&self) -> (usize, usize) {
        self.iter().fold((0, 0), |(a, b), (l, s, k)| {
            let (x, y) = row_signature(l, s);
            (a + k * x, b + k * y)
        })
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn max_len(&self) -> usize {
        self.lengths().first().copied().unwrap_or(0)
    }
}

impl fmt::Display for Rows {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let groups: Vec<String> = self
            .iter()
            .map(|(l, s, k)| {
                if k == 1 {
                    format!("{l}{}", s.symbol())
                } else {
                    format!("{l}{}^{k}", s.symbol())
                }
            })
            .collect();
        f.write_str(&groups.join(" "))
    }
}

impl FromStr for Rows {
    type Err = Error;

    /// Parses `3+^2 3-^2 2+ 2- 1+^2`. A `(length, sign)` group may appear
    /// only once and multiplicities must be positive.
    fn from_str(s: &str) -> Result<Self> {
        let mut rows = Rows::new();
        let bytes = s.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let (len, sign, mult) = parse_group(&s[start..i], start + 1)?;
            if rows.count(len, sign) > 0 {
                return Err(Error::Parse {
                    column: start + 1,
                    message: format!("duplicate row group {len}{}", sign.symbol()),
                });
            }
            rows.add(len, sign, mult);
        }
        Ok(rows)
    }
}

fn parse_group(token: &str, column: usize) -> Result<(usize, Sign, usize)> {
    let err = |offset: usize, message: &str| Error::Parse {
        column: column + offset,
        message: message.to_string(),
    };
    let digits = token.bytes().take_while(|b| b.is_ascii_digit()).count();
    if digits == 0 {
        return Err(err(0, "expected a row length"));
    }
    let len: usize = token[..digits]
        .parse()
        .map_err(|_| err(0, "row length out of range"))?;
    if len == 0 {
        return Err(err(0, "row length must be positive"));
    }
    let sign = match token.as_bytes().get(digits) {
        Some(b'+') => Sign::Plus,
        Some(b'-') => Sign::Minus,
        _ => return Err(err(digits, "expected `+` or `-` after the row length")),
    };
    let rest = &token[digits + 1..];
    if rest.is_empty() {
        return Ok((len, sign, 1));
    }
    let Some(exp) = rest.strip_prefix('^') else {
        return Err(err(digits + 1, "expected `^` or whitespace"));
    };
    let mult: usize = exp
        .parse()
        .map_err(|_| err(digits + 2, "expected a multiplicity"))?;
    if mult == 0 {
        return Err(err(digits + 2, "multiplicity must be positive"));
    }
    Ok((len, sign, mult))
}

/// One broken validity rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    /// Rows of this length must have equally many `+` and `-` leads.
    Unbalanced { length: usize, plus: usize, minus: usize },
    /// Rows of this length must have an even number of each lead.
    OddCount { length: usize, sign: char, count: usize },
    /// Box signature does not match the real form.
    Signature { expected: (usize, usize), found: (usize, usize) },
    /// Box count does not match the real form.
    BoxCount { expected: usize, found: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Unbalanced { length, plus, minus } => {
                write!(f, "length {length}: {plus} rows lead with + but {minus} with -")
            }
            Violation::OddCount { length, sign, count } => {
                write!(f, "length {length}: odd number ({count}) of rows leading with {sign}")
            }
            Violation::Signature { expected, found } => write!(
                f,
                "signature ({},{}) but the real form needs ({},{})",
                found.0, found.1, expected.0, expected.1
            ),
            Violation::BoxCount { expected, found } => {
                write!(f, "{found} boxes but the real form needs {expected}")
            }
        }
    }
}

/// Parity rules on rows, without looking at a real form.
pub fn row_violations(rows: &Rows, family: Family) -> Vec<Violation> {
    let mut out = Vec::new();
    for len in rows.lengths() {
        let (plus, minus) = (rows.count(len, Sign::Plus), rows.count(len, Sign::Minus));
        if len % 2 == family.paired_parity() {
            if plus != minus {
                out.push(Violation::Unbalanced { length: len, plus, minus });
            }
        } else {
            for (sign, count) in [(Sign::Plus, plus), (Sign::Minus, minus)] {
                if count % 2 == 1 {
                    out.push(Violation::OddCount {
                        length: len,
                        sign: sign.symbol(),
                        count,
                    });
                }
            }
        }
    }
    out
}

pub fn rows_valid_for(rows: &Rows, rf: RealForm) -> bool {
    form_violations(rows, rf).is_empty()
}

fn form_violations(rows: &Rows, rf: RealForm) -> Vec<Violation> {
    let mut out = row_violations(rows, rf.family());
    match rf {
        RealForm::Sp { p, q } => {
            let found = rows.signature();
            if found != (2 * p, 2 * q) {
                out.push(Violation::Signature {
                    expected: (2 * p, 2 * q),
                    found,
                });
            }
        }
        RealForm::SOStar { n } => {
            let found = rows.shape().total();
            if found != 2 * n {
                out.push(Violation::BoxCount {
                    expected: 2 * n,
                    found,
                });
            }
        }
    }
    out
}

/// A nilpotent K-orbit: signed rows together with the real form they live in.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedTableau {
    realform: RealForm,
    rows: Rows,
}

impl SignedTableau {
    /// Builds a tableau and checks every validity rule.
    pub fn new(rows: Rows, realform: RealForm) -> Result<Self> {
        let s = SignedTableau { realform, rows };
        s.validate()?;
        Ok(s)
    }

    /// Builds a tableau without checking it.
    pub fn unchecked(rows: Rows, realform: RealForm) -> Self {
        SignedTableau { realform, rows }
    }

    pub fn parse(text: &str, realform: RealForm) -> Result<Self> {
        SignedTableau::new(text.parse()?, realform)
    }

    /// The zero orbit.
    pub fn zero(realform: RealForm) -> Self {
        let mut rows = Rows::new();
        match realform {
            RealForm::Sp { p, q } => {
                rows.add(1, Sign::Plus, 2 * p);
                rows.add(1, Sign::Minus, 2 * q);
            }
            RealForm::SOStar { n } => {
                rows.add(1, Sign::Plus, n);
                rows.add(1, Sign::Minus, n);
            }
        }
        SignedTableau { realform, rows }
    }

    pub fn rows(&self) -> &Rows {
        &self.rows
    }

    pub fn realform(&self) -> RealForm {
        self.realform
    }

    pub fn family(&self) -> Family {
        self.realform.family()
    }

    pub fn shape(&self) -> Partition {
        self.rows.shape()
    }

    pub fn signature(&self) -> (usize, usize) {
        self.rows.signature()
    }

    pub fn violations(&self) -> Vec<Violation> {
        form_violations(&self.rows, self.realform)
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidTableau(v.iter().map(|x| x.to_string()).collect()))
        }
    }

    /// Multiplicities of the row lengths that get paired by promotion
    /// (even lengths for Sp, odd lengths for SO*).
    pub fn paired_multiplicities(&self) -> BTreeMap<usize, usize> {
        let par = self.family().paired_parity();
        self.rows
            .lengths()
            .into_iter()
            .filter(|l| l % 2 == par)
            .map(|l| (l, self.rows.count_len(l)))
            .collect()
    }

    /// True iff each paired-parity length occurs at most twice.
    pub fn has_small_multiplicities(&self) -> bool {
        self.paired_multiplicities().values().all(|&m| m <= 2)
    }
}

impl fmt::Display for SignedTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rows.fmt(f)
    }
}

impl Serialize for SignedTableau {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

fn check_shape(rf: RealForm, shape: &Partition) -> Result<()> {
    let bad = |reason: String| Error::InvalidShape {
        shape: shape.to_string(),
        reason,
    };
    let t = rf.family().form_type();
    if !is_type(shape, t) {
        return Err(bad(format!("not a {t}-partition")));
    }
    if shape.total() != rf.boxes() {
        return Err(bad(format!("{} boxes but {rf} needs {}", shape.total(), rf.boxes())));
    }
    if transpose(shape).parts().iter().any(|c| c % 2 == 1) {
        return Err(bad("a column has odd length".into()));
    }
    Ok(())
}

/// All valid tableaux of the given shape for `rf`, in canonical order.
#[allow(non_snake_case)]
pub fn enumerate_K_orbits(rf: RealForm, shape: &Partition) -> Result<Vec<SignedTableau>> {
    check_shape(rf, shape)?;
    Ok(enumerate_signings(rf, shape))
}

/// Every valid signing of `shape` for `rf`; no admissibility check on the shape.
pub fn enumerate_signings(rf: RealForm, shape: &Partition) -> Vec<SignedTableau> {
    let classes: Vec<(usize, usize)> = shape
        .multiplicities()
        .into_iter()
        .rev()
        .collect();
    let mut out = Vec::new();
    let mut rows = Rows::new();
    fn rec(
        idx: usize,
        classes: &[(usize, usize)],
        rows: &mut Rows,
        rf: RealForm,
        out: &mut Vec<SignedTableau>,
    ) {
        if idx == classes.len() {
            if rows_valid_for(rows, rf) {
                out.push(SignedTableau::unchecked(rows.clone(), rf));
            }
            return;
        }
        let (len, mult) = classes[idx];
        for plus in 0..=mult {
            let mut next = rows.clone();
            next.add(len, Sign::Plus, plus);
            next.add(len, Sign::Minus, mult - plus);
            rec(idx + 1, classes, &mut next, rf, out);
        }
    }
    rec(0, &classes, &mut rows, rf, &mut out);
    out.sort();
    out
}

/// Shapes with even columns that carry at least one tableau for `rf`.
pub fn shapes_meeting_p(rf: RealForm) -> Vec<Partition> {
    even_column_shapes(rf.rank())
        .into_iter()
        .filter(|s| !enumerate_signings(rf, s).is_empty())
        .collect()
}

/// Every valid tableau for every real form of the family at rank `n`.
pub fn all_tableaux(family: Family, n: usize) -> Vec<SignedTableau> {
    family
        .real_forms(n)
        .into_iter()
        .flat_map(|rf| {
            even_column_shapes(n)
                .into_iter()
                .flat_map(move |s| enumerate_signings(rf, &s))
        })
        .collect()
}
