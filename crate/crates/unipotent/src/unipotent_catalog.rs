//! Unipotent records, unitarity certificates and the domino tableau check.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::duality_infchar::{
    chi_of_dual, chi_prime, dual_of_shape, equal_mod_w, shape_of_dual, InfChar, WeylType,
};
use crate::error::{Error, Result};
use crate::orbit_induction::{det_string, special_unipotent_data, unique_raise, InducedDatum, InductionStep};
use crate::partitions::{is_even_orbit, is_type, total_for, Partition};
use crate::signed_tableaux::{enumerate_K_orbits, RealForm, SignedTableau};
use crate::theta_parabolic::{aq_datum, AqDatum};

pub const CERTIFICATE_SCHEMA: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnipotentRecord {
    pub realform: RealForm,
    pub orbit: SignedTableau,
    pub shape: Partition,
    #[serde(rename = "infchar_doubled")]
    pub infchar: InfChar,
    pub annihilator_tag: String,
    pub av_multiplicity: usize,
    pub dual_even: Option<Partition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnitarityCertificate {
    Direct(AqDatum),
    Chain {
        steps: Vec<InductionStep>,
        terminal: AqDatum,
    },
    Nonintegral(InducedDatum),
}

impl UnitarityCertificate {
    pub fn kind(&self) -> &'static str {
        match self {
            UnitarityCertificate::Direct(_) => "direct",
            UnitarityCertificate::Chain { .. } => "chain",
            UnitarityCertificate::Nonintegral(_) => "nonintegral",
        }
    }

    pub fn steps(&self) -> &[InductionStep] {
        match self {
            UnitarityCertificate::Chain { steps, .. } => steps,
            _ => &[],
        }
    }

    pub fn terminal(&self) -> Option<&AqDatum> {
        match self {
            UnitarityCertificate::Direct(d) => Some(d),
            UnitarityCertificate::Chain { terminal, .. } => Some(terminal),
            UnitarityCertificate::Nonintegral(_) => None,
        }
    }
}

impl Serialize for UnitarityCertificate {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("UnitarityCertificate", 5)?;
        st.serialize_field("schema", &CERTIFICATE_SCHEMA)?;
        st.serialize_field("kind", self.kind())?;
        st.serialize_field("steps", self.steps())?;
        st.serialize_field("terminal", &self.terminal())?;
        match self {
            UnitarityCertificate::Nonintegral(d) => st.serialize_field("record", d)?,
            _ => st.serialize_field("record", &None::<()>)?,
        }
        st.end()
    }
}

fn record(orbit: SignedTableau) -> Result<UnipotentRecord> {
    let family = orbit.family();
    let shape = orbit.shape();
    let infchar = chi_prime(&shape, family)?;
    let candidate = dual_of_shape(&shape, family)?;
    let dual_even = (is_even_orbit(&candidate, family.dual_form_type())?
        && shape_of_dual(&candidate, family)? == shape)
        .then_some(candidate);
    Ok(UnipotentRecord {
        realform: orbit.realform(),
        annihilator_tag: format!(
            "maximal primitive ideal at {infchar}; associated variety closure of orbit {shape}"
        ),
        orbit,
        shape,
        infchar,
        av_multiplicity: 1,
        dual_even,
    })
}

/// One record per K-orbit on the shape.
pub fn unip_prime(rf: RealForm, shape: &Partition) -> Result<Vec<UnipotentRecord>> {
    let orbits = enumerate_K_orbits(rf, shape)?;
    if orbits.is_empty() {
        return Err(Error::NoOrbits {
            form: rf.to_string(),
            shape: shape.to_string(),
        });
    }
    orbits.into_iter().map(record).collect()
}

/// The paired-parity part with the largest multiplicity above two, largest part on ties.
fn part_to_attack(s: &SignedTableau) -> Option<usize> {
    s.paired_multiplicities()
        .into_iter()
        .filter(|&(_, m)| m > 2)
        .max_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(part, _)| part)
}

/// Checks `χ′(target) ≡ χ′(source) ⊕ det_string(k, ½)`.
pub fn step_infchar_holds(step: &InductionStep) -> Result<bool> {
    let family = step.source.family();
    let source = chi_prime(&step.source.shape(), family)?;
    let target = chi_prime(&step.target.shape(), family)?;
    equal_mod_w(&target, &source.concat(&det_string(step.k, 1, family.weyl_type())))
}

pub fn certify(s: &SignedTableau) -> Result<UnitarityCertificate> {
    s.validate()?;
    let mut steps = Vec::new();
    let mut current = s.clone();
    let limit = s.shape().len().max(1) * s.shape().largest().max(1) + 1;
    while let Some(part) = part_to_attack(&current) {
        if steps.len() >= limit {
            return Err(Error::Consistency(format!(
                "certificate chain for {s} did not terminate after {limit} steps"
            )));
        }
        let step = unique_raise(&current, part, 1)?;
        if !step_infchar_holds(&step)? {
            return Err(Error::Consistency(format!(
                "infinitesimal character bookkeeping fails for {} -> {}",
                step.source, step.target
            )));
        }
        current = step.target.clone();
        steps.push(step);
    }
    let terminal = aq_datum(&current)?;
    Ok(if steps.is_empty() {
        UnitarityCertificate::Direct(terminal)
    } else {
        UnitarityCertificate::Chain { steps, terminal }
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "route", rename_all = "lowercase")]
pub enum CatalogEntry {
    Integral {
        record: UnipotentRecord,
        certificate: UnitarityCertificate,
    },
    Nonintegral {
        datum: InducedDatum,
        certificate: UnitarityCertificate,
    },
}

impl CatalogEntry {
    pub fn certificate(&self) -> &UnitarityCertificate {
        match self {
            CatalogEntry::Integral { certificate, .. } | CatalogEntry::Nonintegral { certificate, .. } => {
                certificate
            }
        }
    }
}

/// Special unipotent data attached to a dual orbit: the integral route when
/// the dual is even, the strip-and-induce route otherwise.
pub fn special_catalog(rf: RealForm, dual: &Partition) -> Result<Vec<CatalogEntry>> {
    let family = rf.family();
    let t = family.dual_form_type();
    if !is_type(dual, t) || dual.total() != total_for(t, rf.rank()) {
        return Err(Error::TypeMismatch {
            partition: dual.to_string(),
            form: format!("{t} of rank {}", rf.rank()),
        });
    }
    if !is_even_orbit(dual, t)? {
        return special_unipotent_data(dual, rf)?
            .into_iter()
            .map(|datum| {
                Ok(CatalogEntry::Nonintegral {
                    certificate: UnitarityCertificate::Nonintegral(datum.clone()),
                    datum,
                })
            })
            .collect();
    }
    let shape = shape_of_dual(dual, family)?;
    let expected = chi_of_dual(dual, t)?;
    let mut out = Vec::new();
    for rec in unip_prime(rf, &shape)? {
        if !equal_mod_w(&rec.infchar, &expected)? {
            return Err(Error::Consistency(format!(
                "χ′({shape}) = {} differs from χ({dual}) = {expected}",
                rec.infchar
            )));
        }
        let certificate = certify(&rec.orbit)?;
        out.push(CatalogEntry::Integral {
            record: rec,
            certificate,
        });
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy)]
struct Domino {
    top: usize,
    bottom: usize,
    horizontal: bool,
}

impl Domino {
    fn strictly_below(&self, other: &Domino) -> bool {
        self.top > other.bottom
    }
}

struct DominoSearch<'a> {
    shape: &'a [usize],
    values: Vec<i64>,
    weyl: WeylType,
    very_even: bool,
    placed: Vec<Domino>,
    filled: Vec<usize>,
}

impl DominoSearch<'_> {
    fn admissible(&self, d: &Domino) -> bool {
        let i = self.placed.len();
        let v = &self.values;
        let first_horizontal = match self.weyl {
            WeylType::BC => v[0] == 0,
            WeylType::D => self.very_even,
        };
        if i == 0 && first_horizontal && !d.horizontal {
            return false;
        }
        if i == 1 && self.weyl == WeylType::D && v[0] == 0 && v[1] == 0 && !d.horizontal {
            return false;
        }
        if i >= 1 && v[i] == v[i - 1] && d.strictly_below(&self.placed[i - 1]) {
            return false;
        }
        true
    }

    fn count(&mut self) -> u64 {
        if self.placed.len() == self.values.len() {
            return 1;
        }
        let mut total = 0;
        for r in 0..self.shape.len() {
            let c = self.filled[r];
            let above = if r == 0 { usize::MAX } else { self.filled[r - 1] };
            let room_above = |w: usize| w <= above;
            if c + 2 <= self.shape[r] && room_above(c + 2) {
                let d = Domino { top: r, bottom: r, horizontal: true };
                if self.admissible(&d) {
                    self.filled[r] += 2;
                    self.placed.push(d);
                    total += self.count();
                    self.placed.pop();
                    self.filled[r] -= 2;
                }
            }
            if r + 1 < self.shape.len()
                && self.filled[r + 1] == c
                && c < self.shape[r + 1]
                && room_above(c + 1)
            {
                let d = Domino { top: r, bottom: r + 1, horizontal: false };
                if self.admissible(&d) {
                    self.filled[r] += 1;
                    self.filled[r + 1] += 1;
                    self.placed.push(d);
                    total += self.count();
                    self.placed.pop();
                    self.filled[r] -= 1;
                    self.filled[r + 1] -= 1;
                }
            }
            if c == 0 {
                break;
            }
        }
        total
    }
}

/// Number of standard domino tableaux of `shape` compatible with `labels`.
///
/// The absolute values of the labels, in increasing order, are attached to
/// the dominoes in the order they are placed. Equal consecutive values
/// forbid the later domino from lying strictly below the earlier one. A
/// leading zero (type BC), a very even shape (type D), or two leading zeros
/// (type D, second domino) force a horizontal domino.
pub fn domino_count(shape: &Partition, labels: &InfChar) -> Result<u64> {
    if 2 * labels.len() != shape.total() {
        return Err(Error::Precondition(format!(
            "{} labels cannot tile {} boxes",
            labels.len(),
            shape.total()
        )));
    }
    if labels.is_empty() {
        return Ok(1);
    }
    let mut values = labels.dominant();
    values.reverse();
    let mut search = DominoSearch {
        shape: shape.parts(),
        values,
        weyl: labels.weyl_type(),
        very_even: shape.parts().iter().all(|x| x % 2 == 0),
        placed: Vec::new(),
        filled: vec![0; shape.len()],
    };
    Ok(search.count())
}
