//! Command-line surface and the exhaustive verification harness.

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::duality_infchar::{
    check_ic_equivalence, chi_of_dual, chi_prime, even_column_shapes, equal_mod_w, shape_of_dual,
    spaltenstein_dual, Direction, InfChar,
};
use crate::error::{Error, Result};
use crate::orbit_induction::{infchar_matches, special_unipotent_data};
use crate::partitions::{
    collapse, collapse_oracle, is_even_orbit, is_special, is_type, partitions_of, total_for, FormType,
    Partition,
};
use crate::signed_tableaux::{all_tableaux, enumerate_K_orbits, shapes_meeting_p, Family, RealForm, SignedTableau};
use crate::theta_parabolic::{
    aq_datum, birational_check, collapse_promoted, levi_sequence, promote, reconstruct_dense, solve_lambda,
};
use crate::unipotent_catalog::{certify, domino_count, special_catalog, step_infchar_holds, UnitarityCertificate};

#[derive(Debug, Parser)]
#[command(name = "unipotent", version, about = "Unipotent data and unitarity certificates for Sp(p,q) and SO*(2n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Emit JSON (the default for structured results).
    #[arg(long, global = true, conflicts_with = "text")]
    pub json: bool,

    /// Emit aligned plain text.
    #[arg(long, global = true)]
    pub text: bool,
}

#[derive(Debug, Args)]
pub struct FormArgs {
    /// Real form family: sp or sostar.
    #[arg(long, alias = "family")]
    pub form: String,
    #[arg(long)]
    pub p: Option<usize>,
    #[arg(long)]
    pub q: Option<usize>,
    #[arg(long)]
    pub n: Option<usize>,
}

impl FormArgs {
    pub fn realform(&self) -> Result<RealForm> {
        let missing = |flag: &str| Error::Precondition(format!("--{flag} is required for --form {}", self.form));
        match self.form.parse::<Family>()? {
            Family::Sp => Ok(RealForm::Sp {
                p: self.p.ok_or_else(|| missing("p"))?,
                q: self.q.ok_or_else(|| missing("q"))?,
            }),
            Family::SOStar => Ok(RealForm::SOStar {
                n: self.n.ok_or_else(|| missing("n"))?,
            }),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spaltenstein dual of a partition.
    Dual {
        #[arg(long)]
        direction: String,
        #[arg(long)]
        shape: String,
    },
    /// χ′ of a shape, or χ of a dual orbit with --dual-shape.
    Infchar {
        #[arg(long, alias = "form")]
        family: String,
        #[arg(long, conflicts_with = "dual_shape")]
        shape: Option<String>,
        #[arg(long)]
        dual_shape: Option<String>,
    },
    /// K-orbits of a real form on a shape, or every shape meeting 𝔭.
    Korbits {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        shape: Option<String>,
    },
    /// θ-stable parabolic datum of a K-orbit.
    Parabolic {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        tableau: String,
    },
    /// Unitarity certificate of a K-orbit.
    Certify {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        tableau: String,
    },
    /// Special unipotent catalog attached to a dual orbit.
    Special {
        #[command(flatten)]
        form: FormArgs,
        #[arg(long)]
        dual_shape: String,
    },
    /// Exhaustive verification of a combinatorial check.
    Verify {
        #[arg(long, required_unless_present = "all")]
        check: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
        /// Include wall-clock time in the report.
        #[arg(long)]
        timing: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CheckId {
    IcEquivalence,
    DominoUnique,
    Roundtrip,
    Lambda,
    Chain,
    Nonintegral,
    CollapseOracle,
    DualityInvolution,
    EvenDualOverlap,
}

impl CheckId {
    pub const ALL: [CheckId; 9] = [
        CheckId::IcEquivalence,
        CheckId::DominoUnique,
        CheckId::Roundtrip,
        CheckId::Lambda,
        CheckId::Chain,
        CheckId::Nonintegral,
        CheckId::CollapseOracle,
        CheckId::DualityInvolution,
        CheckId::EvenDualOverlap,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::IcEquivalence => "ic-equivalence",
            CheckId::DominoUnique => "domino-unique",
            CheckId::Roundtrip => "roundtrip",
            CheckId::Lambda => "lambda",
            CheckId::Chain => "chain",
            CheckId::Nonintegral => "nonintegral",
            CheckId::CollapseOracle => "collapse-oracle",
            CheckId::DualityInvolution => "duality-involution",
            CheckId::EvenDualOverlap => "even-dual-overlap",
        }
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CheckId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
                Error::Precondition(format!("unknown check `{s}` (known: {})", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub instance: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub check: &'static str,
    pub family: String,
    pub max_n: usize,
    pub instances: usize,
    pub failures: Vec<Failure>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    instances: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            instances: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, instance: impl FnOnce() -> String, outcome: Result<Option<String>>) {
        self.instances += 1;
        let detail = match outcome {
            Ok(None) => return,
            Ok(Some(d)) => d,
            Err(e) => e.to_string(),
        };
        self.failures.push(Failure {
            instance: instance(),
            detail,
        });
    }
}

fn describe(s: &SignedTableau) -> String {
    format!("{} {}", s.realform(), s)
}

fn fail_if(cond: bool, detail: impl FnOnce() -> String) -> Option<String> {
    cond.then(detail)
}

fn check_roundtrip(s: &SignedTableau) -> Result<Option<String>> {
    let s1 = promote(s)?;
    let levi = levi_sequence(&s1)?;
    let rebuilt = reconstruct_dense(&levi)?;
    if rebuilt.rows() != s1.rows() {
        return Ok(Some(format!("columns of {levi} give {rebuilt}, expected {s1}")));
    }
    let back = collapse_promoted(&s1)?;
    if &back != s {
        return Ok(Some(format!("collapse of {s1} gives {back}")));
    }
    if let RealForm::Sp { p, q } = s.realform() {
        if levi.sums() != (p, q) {
            return Ok(Some(format!("levi {levi} does not sum to ({p},{q})")));
        }
    }
    if levi.rank() != s.realform().rank() {
        return Ok(Some(format!("levi {levi} has the wrong rank")));
    }
    Ok(fail_if(!birational_check(s)?, || "orbit dimensions differ".into()))
}

fn check_lambda(s: &SignedTableau) -> Result<Option<String>> {
    let d = solve_lambda(s)?;
    let chi = chi_prime(&s.shape(), s.family())?;
    Ok(fail_if(!d.weakly_fair || !equal_mod_w(&d.infchar, &chi)?, || {
        format!("λ + ρ = {} against χ′ = {chi}, weakly fair {}", d.infchar, d.weakly_fair)
    }))
}

fn check_chain(s: &SignedTableau) -> Result<Option<String>> {
    let cert = certify(s)?;
    for step in cert.steps() {
        if !step_infchar_holds(step)? {
            return Ok(Some(format!("step {} -> {} breaks χ′ bookkeeping", step.source, step.target)));
        }
    }
    let terminal = match &cert {
        UnitarityCertificate::Direct(d) | UnitarityCertificate::Chain { terminal: d, .. } => d,
        UnitarityCertificate::Nonintegral(_) => return Ok(Some("unexpected nonintegral certificate".into())),
    };
    Ok(fail_if(!terminal.dense_orbit.has_small_multiplicities(), || {
        format!("terminal {} still has a multiplicity above two", terminal.dense_orbit)
    }))
}

/// Every dual orbit (B for Sp, D for SO*) of rank `n` that is not even.
pub fn noneven_duals(family: Family, n: usize) -> Vec<Partition> {
    let t = family.dual_form_type();
    partitions_of(total_for(t, n))
        .into_iter()
        .filter(|d| is_type(d, t) && !is_even_orbit(d, t).unwrap_or(true))
        .collect()
}

fn check_nonintegral(dual: &Partition, rf: RealForm) -> Result<Option<String>> {
    let family = rf.family();
    let shape = shape_of_dual(dual, family)?;
    let expected = match enumerate_K_orbits(rf, &shape) {
        Ok(v) => v.len(),
        Err(Error::InvalidShape { .. }) => 0,
        Err(e) => return Err(e),
    };
    let data = match special_unipotent_data(dual, rf) {
        Ok(d) => d,
        Err(Error::NoOrbits { .. }) => Vec::new(),
        Err(e) => return Err(e),
    };
    let chi = chi_of_dual(dual, family.dual_form_type())?;
    for d in &data {
        if !infchar_matches(&d.infchar, &chi, dual)? {
            return Ok(Some(format!("infchar {} differs from χ = {chi}", d.infchar)));
        }
        if d.induced_orbit.shape() != shape {
            return Ok(Some(format!("{} does not have shape {shape}", d.induced_orbit)));
        }
    }
    Ok(fail_if(data.len() != expected, || {
        format!("{} data but {expected} K-orbits on {shape}", data.len())
    }))
}

fn families(family: Option<Family>) -> Vec<Family> {
    family.map(|f| vec![f]).unwrap_or_else(|| Family::ALL.to_vec())
}

/// Runs one exhaustive check up to rank `max_n`.
pub fn run_check(check: CheckId, family: Option<Family>, max_n: usize) -> Result<VerifyReport> {
    let start = Instant::now();
    let mut t = Tally::new();
    match check {
        CheckId::IcEquivalence => {
            for f in families(family) {
                for n in 1..=max_n {
                    let r = check_ic_equivalence(f, n)?;
                    t.instances += r.instances;
                    for c in r.counterexamples {
                        t.failures.push(Failure {
                            instance: format!("{f} {}", c.shape),
                            detail: format!(
                                "dual {}: χ agrees {}, dual even {}, criterion {}",
                                c.dual, c.chi_agrees, c.dual_even, c.criterion
                            ),
                        });
                    }
                }
            }
        }
        CheckId::DominoUnique => {
            for f in families(family) {
                for n in 1..=max_n {
                    for shape in even_column_shapes(n) {
                        t.record(
                            || format!("{f} {shape}"),
                            chi_prime(&shape, f).and_then(|labels| {
                                let c = domino_count(&shape, &labels)?;
                                Ok(fail_if(c != 1, || format!("{c} domino tableaux for labels {labels}")))
                            }),
                        );
                    }
                }
            }
        }
        CheckId::Roundtrip | CheckId::Lambda | CheckId::Chain => {
            for f in families(family) {
                for n in 1..=max_n {
                    for s in all_tableaux(f, n) {
                        let outcome = match check {
                            CheckId::Chain => check_chain(&s),
                            _ if !s.has_small_multiplicities() => continue,
                            CheckId::Roundtrip => check_roundtrip(&s),
                            _ => check_lambda(&s),
                        };
                        t.record(|| describe(&s), outcome);
                    }
                }
            }
        }
        CheckId::Nonintegral => {
            for f in families(family) {
                for n in 1..=max_n {
                    for dual in noneven_duals(f, n) {
                        for rf in f.real_forms(n) {
                            t.record(|| format!("{rf} dual {dual}"), check_nonintegral(&dual, rf));
                        }
                    }
                }
            }
        }
        CheckId::CollapseOracle => {
            for total in 0..=2 * max_n {
                for p in partitions_of(total) {
                    for ft in FormType::ALL {
                        let fast = collapse(&p, ft).ok();
                        let slow = collapse_oracle(&p, ft);
                        t.record(
                            || format!("{ft} {p}"),
                            Ok(fail_if(fast != slow, || format!("collapse {fast:?}, oracle {slow:?}"))),
                        );
                    }
                }
            }
        }
        CheckId::DualityInvolution => {
            for (there, back) in [
                (Direction::CtoB, Direction::BtoC),
                (Direction::BtoC, Direction::CtoB),
                (Direction::DtoD, Direction::DtoD),
            ] {
                let ft = there.source();
                for n in 0..=max_n {
                    for p in partitions_of(total_for(ft, n)) {
                        if !is_type(&p, ft) || !is_special(&p, ft) {
                            continue;
                        }
                        t.record(
                            || format!("{there} {p}"),
                            spaltenstein_dual(&p, there).and_then(|d| {
                                let dd = spaltenstein_dual(&d, back)?;
                                Ok(fail_if(dd != p, || format!("{p} -> {d} -> {dd}")))
                            }),
                        );
                    }
                }
            }
        }
        CheckId::EvenDualOverlap => {
            for f in families(family) {
                let dt = f.dual_form_type();
                for n in 1..=max_n {
                    for dual in partitions_of(total_for(dt, n)) {
                        if !is_type(&dual, dt) || !is_even_orbit(&dual, dt)? {
                            continue;
                        }
                        for rf in f.real_forms(n) {
                            let outcome = match special_catalog(rf, &dual) {
                                Ok(entries) => chi_of_dual(&dual, dt).and_then(|chi| {
                                    for e in &entries {
                                        if let crate::unipotent_catalog::CatalogEntry::Integral { record, .. } = e {
                                            if !equal_mod_w(&record.infchar, &chi)? {
                                                return Ok(Some(format!("{} vs χ = {chi}", record.infchar)));
                                            }
                                        }
                                    }
                                    Ok(None)
                                }),
                                Err(Error::NoOrbits { .. } | Error::InvalidShape { .. }) => Ok(None),
                                Err(e) => Err(e),
                            };
                            t.record(|| format!("{rf} dual {dual}"), outcome);
                        }
                    }
                }
            }
        }
    }
    Ok(VerifyReport {
        check: check.name(),
        family: family.map(|f| f.to_string()).unwrap_or_else(|| "both".into()),
        max_n,
        instances: t.instances,
        failures: t.failures,
        wall_time_ms: Some(start.elapsed().as_millis()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputMode {
    Json,
    Text,
    /// JSON for structured results, bare text for single values.
    Auto,
}

fn to_json<T: Serialize>(v: &T) -> Result<String> {
    serde_json::to_string_pretty(v).map_err(|e| Error::Consistency(format!("serialization failed: {e}")))
}

fn parse_partition(s: &str) -> Result<Partition> {
    s.parse()
}

fn render_certificate(out: &mut String, cert: &UnitarityCertificate) {
    let _ = writeln!(out, "kind      {}", cert.kind());
    for step in cert.steps() {
        let _ = writeln!(
            out,
            "step      k={} part={} b={}  {}  ->  {}",
            step.k, step.part, step.b, step.source, step.target
        );
    }
    if let Some(d) = cert.terminal() {
        let _ = writeln!(out, "terminal  {}", d.dense_orbit);
        let _ = writeln!(out, "levi      {}", d.levi);
        let _ = writeln!(out, "infchar   {}", d.infchar);
    }
    if let UnitarityCertificate::Nonintegral(d) = cert {
        let _ = writeln!(out, "base      {} {}", d.base_form, d.base_orbit);
        let _ = writeln!(out, "gl        {:?}", d.gl_sizes);
        let _ = writeln!(out, "induced   {}", d.induced_orbit);
        let _ = writeln!(out, "infchar   {}", d.infchar);
    }
}

/// Runs a parsed command and renders its output.
pub fn execute(cli: &Cli) -> Result<String> {
    let mode = if cli.text {
        OutputMode::Text
    } else if cli.json {
        OutputMode::Json
    } else {
        OutputMode::Auto
    };
    let text = mode == OutputMode::Text;
    match &cli.command {
        Command::Dual { direction, shape } => {
            let dir: Direction = direction.parse()?;
            let d = spaltenstein_dual(&parse_partition(shape)?, dir)?;
            match mode {
                OutputMode::Json => to_json(&serde_json::json!({
                    "direction": dir.to_string(),
                    "shape": shape,
                    "dual": d.to_string(),
                })),
                _ => Ok(d.to_string()),
            }
        }
        Command::Infchar { family, shape, dual_shape } => {
            let family: Family = family.parse()?;
            let value: InfChar = match (shape, dual_shape) {
                (Some(s), None) => chi_prime(&parse_partition(s)?, family)?,
                (None, Some(d)) => chi_of_dual(&parse_partition(d)?, family.dual_form_type())?,
                _ => return Err(Error::Precondition("give exactly one of --shape and --dual-shape".into())),
            };
            match mode {
                OutputMode::Json => to_json(&serde_json::json!({
                    "infchar": value.to_string(),
                    "infchar_doubled": value,
                    "integral": value.is_integral(),
                })),
                _ => Ok(value.to_string()),
            }
        }
        Command::Korbits { form, shape } => {
            let rf = form.realform()?;
            let shapes = match shape {
                Some(s) => vec![parse_partition(s)?],
                None => shapes_meeting_p(rf),
            };
            let mut groups = Vec::new();
            for s in shapes {
                let orbits = enumerate_K_orbits(rf, &s)?;
                groups.push((s, orbits));
            }
            if text {
                let mut out = String::new();
                for (s, orbits) in &groups {
                    for o in orbits {
                        let _ = writeln!(out, "{:<16} {}", s.to_string(), o);
                    }
                }
                Ok(out.trim_end().to_string())
            } else {
                let v: Vec<_> = groups
                    .iter()
                    .map(|(s, o)| serde_json::json!({"shape": s.to_string(), "count": o.len(), "orbits": o}))
                    .collect();
                to_json(&serde_json::json!({"realform": rf, "shapes": v}))
            }
        }
        Command::Parabolic { form, tableau } => {
            let s = SignedTableau::parse(tableau, form.realform()?)?;
            let d = aq_datum(&s)?;
            if text {
                let mut out = String::new();
                let _ = writeln!(out, "orbit     {}", d.dense_orbit);
                let _ = writeln!(out, "promoted  {}", promote(&s)?);
                let _ = writeln!(out, "levi      {}", d.levi);
                let lam: Vec<String> = d
                    .lambda_doubled
                    .iter()
                    .map(|&x| crate::duality_infchar::format_half(x))
                    .collect();
                let _ = writeln!(out, "lambda    {}", lam.join(","));
                let _ = writeln!(out, "infchar   {}", d.infchar);
                let _ = write!(out, "fair      {}", d.weakly_fair);
                Ok(out)
            } else {
                to_json(&d)
            }
        }
        Command::Certify { form, tableau } => {
            let s = SignedTableau::parse(tableau, form.realform()?)?;
            let cert = certify(&s)?;
            if text {
                let mut out = String::new();
                render_certificate(&mut out, &cert);
                Ok(out.trim_end().to_string())
            } else {
                to_json(&cert)
            }
        }
        Command::Special { form, dual_shape } => {
            let rf = form.realform()?;
            let entries = special_catalog(rf, &parse_partition(dual_shape)?)?;
            if text {
                let mut out = String::new();
                for (i, e) in entries.iter().enumerate() {
                    let _ = writeln!(out, "# {}", i + 1);
                    render_certificate(&mut out, e.certificate());
                }
                Ok(out.trim_end().to_string())
            } else {
                to_json(&entries)
            }
        }
        Command::Verify {
            check,
            all,
            family,
            max_n,
            timing,
        } => {
            let family = family.as_deref().map(Family::from_str).transpose()?;
            let checks = if *all {
                CheckId::ALL.to_vec()
            } else {
                vec![check.as_deref().unwrap_or_default().parse()?]
            };
            let mut reports = Vec::new();
            for c in checks {
                let mut r = run_check(c, family, *max_n)?;
                if !timing {
                    r.wall_time_ms = None;
                }
                reports.push(r);
            }
            let failed = reports.iter().any(|r| !r.passed());
            let out = if text {
                let mut out = String::new();
                for r in &reports {
                    let _ = write!(
                        out,
                        "{:<20} {:<7} n<={:<3} instances {:>6}  failures {:>4}",
                        r.check,
                        r.family,
                        r.max_n,
                        r.instances,
                        r.failures.len()
                    );
                    if let Some(ms) = r.wall_time_ms {
                        let _ = write!(out, "  {ms} ms");
                    }
                    out.push('\n');
                    for f in r.failures.iter().take(20) {
                        let _ = writeln!(out, "    {}: {}", f.instance, f.detail);
                    }
                }
                out.trim_end().to_string()
            } else if reports.len() == 1 {
                to_json(&reports[0])?
            } else {
                to_json(&reports)?
            };
            if failed {
                Err(Error::Consistency(format!("verification failed\n{out}")))
            } else {
                Ok(out)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orbit_induction::det_string;

    fn run(args: &[&str]) -> Result<String> {
        let mut full = vec!["unipotent"];
        full.extend_from_slice(args);
        execute(&Cli::try_parse_from(full).unwrap())
    }

    #[test]
    fn scalar_commands() {
        assert_eq!(run(&["dual", "--direction", "CtoB", "--shape", "2,2"]).unwrap(), "3,1,1");
        assert_eq!(run(&["infchar", "--family", "sp", "--shape", "1,1,1,1"]).unwrap(), "1,2");
        assert_eq!(
            run(&["infchar", "--family", "sp", "--dual-shape", "3,2,2"]).unwrap(),
            "1,1/2,1/2"
        );
    }

    #[test]
    fn certify_command_emits_chain() {
        let out = run(&["certify", "--form", "sp", "--p", "2", "--q", "2", "--tableau", "2+^2 2-^2"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["kind"], "chain");
    }

    #[test]
    fn domain_errors_are_not_internal() {
        let e = run(&["certify", "--form", "sp", "--p", "1", "--q", "1", "--tableau", "2+^2"]).unwrap_err();
        assert!(!e.is_internal());
        let e = run(&["korbits", "--form", "sp", "--p", "1"]).unwrap_err();
        assert!(!e.is_internal());
        assert!(run(&["verify", "--check", "nope"]).is_err());
    }

    #[test]
    fn det_string_matches_dual_pair_contribution() {
        for k in 1..=5usize {
            let s = det_string(k, 0, crate::duality_infchar::WeylType::BC);
            let mut want: Vec<i64> = (1..=k as i64).flat_map(|j| [2 * j - 1, 2 * j - 1]).collect();
            want.sort_unstable_by(|a, b| b.cmp(a));
            assert_eq!(s.dominant(), want);
        }
    }

    #[test]
    fn quick_checks_pass() {
        for c in CheckId::ALL {
            let r = run_check(c, None, 4).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.instances > 0, "{}", c.name());
        }
    }
}
