//! Report assembly and serialization.  A report is deterministic for a
//! fixed configuration and tool version up to the per-identity wall
//! times; identities appear in suite declaration order.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use bannai_ito::bannaiito::suites::{CheckResult, SuiteRun};
use bannai_ito::bannaiito::Realization;
use bannai_ito::opcalc::CertOutcome;

use crate::text;

#[derive(Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: ConfigEcho,
    pub status: &'static str,
    pub suites: Vec<SuiteReport>,
}

#[derive(Serialize)]
pub struct ConfigEcho {
    pub realization: String,
    pub degree: usize,
    pub suites: Vec<String>,
    pub params: BTreeMap<String, String>,
    pub jobs: Option<usize>,
    pub format: String,
}

#[derive(Serialize)]
pub struct SuiteReport {
    pub name: String,
    pub status: &'static str,
    pub identities: Vec<IdentityReport>,
}

#[derive(Serialize)]
pub struct IdentityReport {
    pub label: String,
    pub anchor: String,
    pub mode: &'static str,
    pub status: &'static str,
    pub degree_certified: Option<usize>,
    pub witness: Option<Witness>,
    pub wall_ms: u64,
}

#[derive(Serialize)]
#[serde(untagged)]
pub enum Witness {
    Module {
        basis: String,
        lhs: String,
        rhs: String,
    },
    GroupAlgebra {
        element: String,
        lhs: String,
        rhs: String,
    },
}

fn status(pass: bool) -> &'static str {
    if pass {
        "pass"
    } else {
        "fail"
    }
}

pub fn assemble(
    config: ConfigEcho,
    realization: &Realization,
    runs: &[SuiteRun],
    names: &[String],
) -> Report {
    let mut suites = Vec::new();
    for run in runs {
        let mut identities = Vec::new();
        for outcome in &run.outcomes {
            let (mode, ok, degree_certified, witness) = match &outcome.result {
                CheckResult::OpEqual { degree } => ("module-action", true, Some(*degree), None),
                CheckResult::OpCounterexample { cert } => {
                    let witness = match &cert.outcome {
                        CertOutcome::Counterexample {
                            basis,
                            lhs_image,
                            rhs_image,
                        } => Some(Witness::Module {
                            basis: text::render_clifford_poly(
                                &basis.to_poly(&realization.shape()),
                                names,
                            ),
                            lhs: text::render_clifford_poly(lhs_image, names),
                            rhs: text::render_clifford_poly(rhs_image, names),
                        }),
                        CertOutcome::Equal => None,
                    };
                    ("module-action", false, None, witness)
                }
                CheckResult::GaEqual => ("group-algebra", true, None, None),
                CheckResult::GaCounterexample { element, lhs, rhs } => (
                    "group-algebra",
                    false,
                    None,
                    Some(Witness::GroupAlgebra {
                        element: text::render_perm(element),
                        lhs: text::render_param_poly(lhs, names),
                        rhs: text::render_param_poly(rhs, names),
                    }),
                ),
            };
            identities.push(IdentityReport {
                label: outcome.label.clone(),
                anchor: outcome.anchor.to_string(),
                mode,
                status: status(ok),
                degree_certified,
                witness,
                wall_ms: outcome.wall_ms as u64,
            });
        }
        suites.push(SuiteReport {
            name: run.suite.name().to_string(),
            status: status(run.passed()),
            identities,
        });
    }
    let all_pass = runs.iter().all(SuiteRun::passed);
    Report {
        tool: "bannai-ito",
        version: env!("CARGO_PKG_VERSION"),
        config,
        status: status(all_pass),
        suites,
    }
}

pub fn to_json(report: &Report) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("report serializes");
    s.push('\n');
    s
}

pub fn to_markdown(report: &Report) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "# Verification report\n\n- tool: {} {}\n- realization: {}\n- degree: {}\n- status: **{}**\n\n",
        report.tool, report.version, report.config.realization, report.config.degree, report.status
    ));
    if !report.config.params.is_empty() {
        out.push_str("- parameters: ");
        let view: Vec<String> = report
            .config
            .params
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect();
        out.push_str(&view.join(", "));
        out.push_str("\n\n");
    }
    for suite in &report.suites {
        out.push_str(&format!("## {} — {}\n\n", suite.name, suite.status));
        out.push_str("| identity | anchor | mode | status | degree | ms |\n");
        out.push_str("|---|---|---|---|---|---|\n");
        for id in &suite.identities {
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} |\n",
                id.label,
                id.anchor,
                id.mode,
                id.status,
                id.degree_certified
                    .map_or_else(|| "—".into(), |d| d.to_string()),
                id.wall_ms
            ));
        }
        out.push('\n');
        for id in &suite.identities {
            if let Some(w) = &id.witness {
                match w {
                    Witness::Module { basis, lhs, rhs } => {
                        out.push_str(&format!(
                            "**{}** witness: basis `{}`\n- lhs: `{}`\n- rhs: `{}`\n\n",
                            id.label, basis, lhs, rhs
                        ));
                    }
                    Witness::GroupAlgebra { element, lhs, rhs } => {
                        out.push_str(&format!(
                            "**{}** witness: element `{}`\n- lhs: `{}`\n- rhs: `{}`\n\n",
                            id.label, element, lhs, rhs
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Write the rendered report atomically: temp file in the target
/// directory, then rename.
pub fn write_atomic(path: &Path, contents: &str) -> std::io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            path.file_name().unwrap_or_default().to_string_lossy()
        )),
        None => std::path::PathBuf::from(format!(
            ".{}.tmp",
            path.file_name().unwrap_or_default().to_string_lossy()
        )),
    };
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(contents.as_bytes())?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, path)
}
