//! Command runners shared by the binary and the tests. Every runner returns
//! a [`RunReport`] whose JSON form is deterministic apart from `timing_ms`.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::AlgebraSpec;
use crate::check::Check;
use crate::colorlie::{
    self, build_color_lie_ring, build_n_and_quotient, check_color_axioms, split_parts, ColorLieRing, GradingMode,
};
use crate::error::{Error, Result};
use crate::hopf::check_hopf_axioms;
use crate::pbw::check_pbw;
use crate::scalar::Cyclotomic;
use crate::specfile::{format_file, format_spec, SpecFile};
use crate::uea::{build_uea, converse_construct, dimension_oracle, iso_check};

pub const DEFAULT_DEGREE: usize = 3;
const TEXT_CERTIFICATES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Check,
    Lie,
    Uea,
    Hopf,
    Converse,
    All,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Check => "check",
            Command::Lie => "lie",
            Command::Uea => "uea",
            Command::Hopf => "hopf",
            Command::Converse => "converse",
            Command::All => "all",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub degree: usize,
    pub quotient: bool,
    pub overrides: BTreeMap<String, Cyclotomic>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            degree: DEFAULT_DEGREE,
            quotient: false,
            overrides: BTreeMap::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Section {
    pub name: &'static str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exploratory: Option<String>,
    pub detail: Value,
    #[serde(skip)]
    certificates: Vec<String>,
}

impl Section {
    fn new(name: &'static str, passed: bool, detail: Value) -> Self {
        Section {
            name,
            passed,
            exploratory: None,
            detail,
            certificates: vec![],
        }
    }

    fn certify(mut self, label: &str, check: &Check) -> Self {
        if check.failed() {
            self.certificates.extend(check.certificates.iter().map(|c| format!("{label}: {c}")));
        }
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: Command,
    pub spec: String,
    pub sections: Vec<Section>,
    pub certificates: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u128>,
    pub exit_code: i32,
}

impl RunReport {
    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Human-readable summary, one line per section plus certificates.
    pub fn render_text(&self) -> String {
        let mut out = format!("{} {}\n", self.command.name(), self.spec);
        for s in &self.sections {
            out.push_str(&format!("  {:<12} {}", s.name, if s.passed { "PASS" } else { "FAIL" }));
            if let Some(e) = &s.exploratory {
                out.push_str(&format!("  (exploratory: {e})"));
            }
            out.push('\n');
            if let Value::Object(map) = &s.detail {
                if let Some(Value::String(t)) = map.get("text") {
                    for line in t.lines() {
                        out.push_str(&format!("    | {line}\n"));
                    }
                }
            }
        }
        for c in self.certificates.iter().take(TEXT_CERTIFICATES) {
            out.push_str(&format!("  certificate: {c}\n"));
        }
        if self.certificates.len() > TEXT_CERTIFICATES {
            out.push_str(&format!(
                "  ... {} more certificates (use --json)\n",
                self.certificates.len() - TEXT_CERTIFICATES
            ));
        }
        out
    }
}

/// Errors that describe bad input rather than a mathematical outcome.
pub fn is_input_error(e: &Error) -> bool {
    matches!(e, Error::Parse { .. } | Error::Spec { .. } | Error::NotAUnit(_) | Error::SymbolicParameter(_))
}

fn math_failure(name: &'static str, e: &Error) -> Section {
    let mut s = Section::new(name, false, json!({ "error": e.to_string() }));
    s.certificates.push(format!("{name}: {e}"));
    s
}

fn need_spec(file: &SpecFile, command: Command) -> Result<&AlgebraSpec> {
    match file {
        SpecFile::Algebra(s) => Ok(s),
        SpecFile::Generic(_) => Err(Error::spec(format!(
            "`{}` needs a presentation, not a [generic-lie] ring",
            command.name()
        ))),
    }
}

fn ring_of(file: &SpecFile) -> Result<ColorLieRing> {
    match file {
        SpecFile::Algebra(s) => build_color_lie_ring(s, true),
        SpecFile::Generic(l) => Ok(l.clone()),
    }
}

pub fn pbw_section(spec: &AlgebraSpec) -> Section {
    let r = check_pbw(spec);
    let mut s = Section::new("pbw", r.verdict, serde_json::to_value(&r).expect("serializable"));
    for (label, c) in [("condition 1", &r.cond1), ("condition 2", &r.cond2), ("condition 3", &r.cond3)] {
        s.certificates.extend(c.violations.iter().map(|v| format!("{label}: {v}")));
    }
    s.certificates.extend(r.oracle_certificates.iter().map(|c| format!("overlap: {c}")));
    s
}

pub fn lie_section(file: &SpecFile, quotient: bool) -> Result<Section> {
    let l = ring_of(file)?;
    match file {
        SpecFile::Algebra(spec) => {
            let q = build_n_and_quotient(spec);
            let mode = if quotient { GradingMode::Quotient(&q.n) } else { GradingMode::Ungraded };
            let axioms = check_color_axioms(&l, mode);
            let braiding = colorlie::check_braiding_compatibility(spec);
            let positive = colorlie::check_prop_positive(&l);
            let passed = axioms.passed() && l.exploratory.is_none() && (!quotient || q.well_defined.passed());
            let mut s = Section::new(
                "lie",
                passed,
                json!({
                    "dimension": l.dim(),
                    "grading": if quotient { "A/N" } else { "ungraded" },
                    "axioms": axioms,
                    "n_generators": q.n.generators().iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "quotient_well_defined": q.well_defined,
                    "braiding_compatible": braiding,
                    "positive_brackets_vanish": positive,
                }),
            );
            s.exploratory = l.exploratory.clone();
            for (label, c) in [
                ("antisymmetry", &axioms.antisymmetry),
                ("jacobi", &axioms.jacobi),
                ("balanced", &axioms.balanced_left),
                ("balanced", &axioms.balanced_middle),
                ("balanced", &axioms.balanced_right),
                ("grading", &axioms.grading),
                ("yetter-drinfeld", &axioms.yetter_drinfeld),
            ] {
                s = s.certify(label, c);
            }
            if quotient {
                s = s.certify("quotient", &q.well_defined);
            }
            Ok(s)
        }
        SpecFile::Generic(_) => {
            let axioms = check_color_axioms(&l, GradingMode::Full);
            let parts = split_parts(&l)?;
            let s = Section::new(
                "lie",
                axioms.passed(),
                json!({
                    "dimension": l.dim(),
                    "grading": "full",
                    "axioms": axioms,
                    "positive": parts.positive.iter().map(|&a| &l.names[a]).collect::<Vec<_>>(),
                    "negative": parts.negative.iter().map(|&a| &l.names[a]).collect::<Vec<_>>(),
                }),
            );
            Ok(s.certify("antisymmetry", &axioms.antisymmetry)
                .certify("jacobi", &axioms.jacobi)
                .certify("grading", &axioms.grading))
        }
    }
}

pub fn uea_section(file: &SpecFile, degree: usize, overrides: &BTreeMap<String, Cyclotomic>) -> Result<Section> {
    let l = ring_of(file)?;
    let u = match build_uea(&l) {
        Ok(u) => u,
        Err(e) if !is_input_error(&e) => return Ok(math_failure("uea", &e)),
        Err(e) => return Err(e),
    };
    match file {
        SpecFile::Algebra(spec) => {
            let iso = iso_check(spec, &l);
            let dim = dimension_oracle(spec, degree, overrides)?;
            let passed = iso.passed() && dim.matches();
            let mut s = Section::new("uea", passed, json!({ "iso": iso, "dimension": dim }));
            s.exploratory = l.exploratory.clone();
            if !dim.matches() {
                s.certificates.push(format!(
                    "dimension: degree {} quotient has dimension {} but the PBW count is {}",
                    dim.degree, dim.quotient_dim, dim.pbw_count
                ));
            }
            Ok(s.certify("iso", &iso.ideal_maps_to_zero)
                .certify("iso", &iso.relations_map_to_zero)
                .certify("iso", &iso.uea_ideal_vanishes))
        }
        SpecFile::Generic(_) => {
            let parts = split_parts(&l)?;
            let mut squares = serde_json::Map::new();
            for &a in &parts.negative {
                let x = u.generator(a);
                let sq = u.normal_form(&u.system.mul(&x, &x));
                squares.insert(u.names[a].clone(), Value::String(u.render(&sq)));
            }
            Ok(Section::new(
                "uea",
                true,
                json!({
                    "generators": u.names,
                    "purely_positive": parts.purely_positive(),
                    "squares_of_negative_generators": squares,
                }),
            ))
        }
    }
}

pub fn hopf_section(spec: &AlgebraSpec, degree: usize) -> Section {
    let r = check_hopf_axioms(spec, degree);
    let mut s = Section::new("hopf", r.passed(), serde_json::to_value(&r).expect("serializable"));
    s.exploratory = r.exploratory.clone();
    s.certify("coproduct", &r.well_defined)
        .certify("coassociativity", &r.coassociativity)
        .certify("counit", &r.counit)
        .certify("antipode", &r.antipode)
}

pub fn converse_section(file: &SpecFile) -> Result<Section> {
    let l = ring_of(file)?;
    let c = match converse_construct(&l) {
        Ok(c) => c,
        Err(e) if !is_input_error(&e) => return Ok(math_failure("converse", &e)),
        Err(e) => return Err(e),
    };
    let verdict = check_pbw(&c.spec).verdict;
    let round_trip = match file {
        SpecFile::Algebra(spec) => Some(c.text == format_spec(spec)),
        SpecFile::Generic(_) => None,
    };
    let passed = c.conditions_hold() && verdict && round_trip != Some(false);
    let mut s = Section::new(
        "converse",
        passed,
        json!({
            "text": c.text,
            "invariance": c.invariance,
            "vanishing": c.vanishing,
            "cond3_prime": c.cond3_prime,
            "pbw": verdict,
            "round_trip": round_trip,
        }),
    );
    if round_trip == Some(false) {
        s.certificates.push("round trip: reconstructed text differs from the canonical input".into());
    }
    Ok(s)
}

/// Runs one command on a parsed file. The `spec` label is echoed verbatim.
pub fn run(command: Command, label: &str, file: &SpecFile, opts: &RunOptions) -> Result<RunReport> {
    let start = Instant::now();
    let mut sections = Vec::new();
    match command {
        Command::Check => sections.push(pbw_section(need_spec(file, command)?)),
        Command::Lie => sections.push(lie_section(file, opts.quotient)?),
        Command::Uea => sections.push(uea_section(file, opts.degree, &opts.overrides)?),
        Command::Hopf => sections.push(hopf_section(need_spec(file, command)?, opts.degree)),
        Command::Converse => sections.push(converse_section(file)?),
        Command::All => match file {
            SpecFile::Algebra(spec) => {
                let pbw = pbw_section(spec);
                let pbw_ok = pbw.passed;
                sections.push(pbw);
                sections.push(lie_section(file, opts.quotient)?);
                sections.push(uea_section(file, opts.degree, &opts.overrides)?);
                let mut hopf = hopf_section(spec, opts.degree);
                if !pbw_ok && hopf.exploratory.is_none() {
                    hopf.exploratory = Some("presentation is not PBW".into());
                }
                sections.push(hopf);
            }
            SpecFile::Generic(_) => {
                sections.push(lie_section(file, false)?);
                sections.push(uea_section(file, opts.degree, &opts.overrides)?);
            }
        },
    }
    let certificates = sections.iter().flat_map(|s| s.certificates.iter().cloned()).collect();
    let exit_code = if sections.iter().all(|s| s.passed) { 0 } else { 2 };
    Ok(RunReport {
        command,
        spec: label.to_string(),
        sections,
        certificates,
        timing_ms: Some(start.elapsed().as_millis()),
        exit_code,
    })
}

/// Normal form of `text` in `H_{q,kappa}` or in the enveloping algebra of a
/// generic ring.
pub fn normal_form(file: &SpecFile, text: &str) -> Result<String> {
    match file {
        SpecFile::Algebra(spec) => {
            let x = spec.parse_element(text)?;
            Ok(spec.render(&spec.rewrite_system().normal_form(&x)))
        }
        SpecFile::Generic(l) => {
            let u = build_uea(l)?;
            let e = crate::expr::parse(text)?;
            let x = u.system.eval_expr(&e, &|name| u.names.iter().position(|n| n == name))?;
            Ok(u.render(&u.normal_form(&x)))
        }
    }
}

pub fn canonical_text(file: &SpecFile) -> Result<String> {
    format_file(file)
}
