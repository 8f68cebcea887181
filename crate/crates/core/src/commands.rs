//! Command dispatch from an [`Instance`] to a [`Report`].

use std::time::Instant;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::genrep::Schofield;
use crate::gitfan::{wall_system, GitFanEngine, Mode, VerifyConfig};
use crate::io::{self, Check, Instance, ModeKind, Report};

pub const COMMANDS: [&str; 8] = [
    "effective-cone",
    "walls",
    "git-cone",
    "orbit-cone",
    "fan",
    "verify",
    "equivalent",
    "decompose",
];

/// Command-line overrides and arguments.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Options {
    /// Weight names, in the order given.
    pub weights: Vec<String>,
    pub rep: Option<String>,
    pub mode: Option<ModeKind>,
    pub p: Option<u64>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub timing: bool,
}

impl Options {
    fn mode(&self, inst: &Instance) -> Mode {
        let mut config = inst.config.clone();
        if let Some(m) = self.mode {
            config.mode = m;
        }
        if self.p.is_some() {
            config.p = self.p;
        }
        if let Some(s) = self.seed {
            config.seed = s;
        }
        if let Some(n) = self.samples {
            config.samples = n;
        }
        config.resolved_mode()
    }

    fn seed(&self, inst: &Instance) -> u64 {
        self.seed.unwrap_or(inst.config.seed)
    }

    fn weight_names(&self, count: usize) -> Result<&[String]> {
        if self.weights.len() < count {
            let what = if count == 1 { "--weight NAME" } else { "--weight NAME (twice)" };
            return Err(Error::MissingOption(what.into()));
        }
        Ok(&self.weights[..count])
    }
}

pub fn run_command(inst: &Instance, command: &str, opts: &Options) -> Result<Report> {
    if !COMMANDS.contains(&command) {
        return Err(Error::UnknownCommand(command.to_string()));
    }
    let start = Instant::now();
    let budget = inst.config.budget;
    let mut checks = Vec::new();
    let mut mode = None;
    let engine = |mode: Mode| GitFanEngine::new(inst.quiver.clone(), inst.beta.clone(), mode, budget);

    let result = match command {
        "effective-cone" => {
            let s = Schofield::new(&inst.quiver);
            let cone = s.effective_cone(&inst.beta)?;
            let embedded = s.embedded_subvectors(&inst.beta)?;
            json!({
                "cone": io::emit_cone(&cone),
                "embedded": embedded.iter().map(io::dim_vec).collect::<Vec<_>>(),
            })
        }
        "walls" => {
            let walls = wall_system(&inst.quiver, &inst.beta)?;
            let classes: Vec<Value> = walls
                .classes
                .iter()
                .map(|c| {
                    json!({
                        "kind": c.kind.to_string(),
                        "section": io::emit_cone(&c.section),
                        "members": c.members.iter().map(|(d, e)| json!({"dim": io::dim_vec(d), "embeds": e})).collect::<Vec<_>>(),
                    })
                })
                .collect();
            json!({ "effective_cone": io::emit_cone(&walls.effective), "classes": classes })
        }
        "git-cone" => {
            let name = &opts.weight_names(1)?[0];
            let sigma = inst.weight(name)?;
            let m = opts.mode(inst);
            mode = Some(m.to_string());
            let e = engine(m)?;
            let rec = e.git_cone(sigma)?;
            checks.push(check("weight-in-cone", rec.cone.contains(sigma.entries())?, ""));
            checks.push(check("inside-effective-cone", rec.cone.is_subset_of(e.effective_cone()), ""));
            json!({
                "weight": { "name": name, "value": io::weight(sigma) },
                "cone": io::emit_cone(&rec.cone),
                "d_sigma": rec.d_sigma.iter().map(io::dim_vec).collect::<Vec<_>>(),
            })
        }
        "orbit-cone" => {
            let name = opts
                .rep
                .as_ref()
                .ok_or_else(|| Error::MissingOption("--rep NAME".into()))?;
            let rep = inst.rep(name)?;
            let subdims = rep.subrep_dimvectors(budget)?;
            let cone = rep.orbit_cone(budget)?;
            json!({
                "rep": name,
                "p": rep.field().p(),
                "subrep_dimvectors": subdims.iter().map(io::dim_vec).collect::<Vec<_>>(),
                "cone": io::emit_cone(&cone),
            })
        }
        "fan" => {
            let m = opts.mode(inst);
            mode = Some(m.to_string());
            let fan = engine(m)?.git_fan()?;
            json!({ "fan": io::emit_fan(&fan), "cone_count": fan.len(), "maximal_count": fan.maximal_indices().len() })
        }
        "verify" => {
            let m = opts.mode(inst);
            mode = Some(m.to_string());
            let e = engine(m)?;
            let fan = e.git_fan()?;
            let config = VerifyConfig {
                coverage_points: 1000,
                bound: inst.config.bound,
                seed: opts.seed(inst),
            };
            let report = e.verify_fan(&fan, &config)?;
            for c in &report.checks {
                checks.push(Check {
                    name: c.name.clone(),
                    pass: c.pass,
                    detail: c.detail.clone(),
                });
            }
            json!({ "fan": io::emit_fan(&fan), "cone_count": fan.len() })
        }
        "equivalent" => {
            let names = opts.weight_names(2)?;
            let (s1, s2) = (inst.weight(&names[0])?, inst.weight(&names[1])?);
            let m = opts.mode(inst);
            mode = Some(m.to_string());
            let e = engine(m)?;
            let eq = e.git_equivalent(s1, s2)?;
            checks.push(check("semistable-sets-agree", true, "GIT-cones and semistable sets give the same answer"));
            json!({ "weights": names, "equivalent": eq })
        }
        "decompose" => {
            let name = &opts.weight_names(1)?[0];
            let sigma = inst.weight(name)?;
            let d = Schofield::new(&inst.quiver).stable_decomposition(&inst.beta, sigma)?;
            checks.push(check("parts-sum-to-beta", d.total() == inst.beta, ""));
            json!({
                "weight": { "name": name, "value": io::weight(sigma) },
                "parts": d.parts.iter().map(|(g, m)| json!({"multiplicity": m, "dim": io::dim_vec(g)})).collect::<Vec<_>>(),
            })
        }
        _ => unreachable!("checked against COMMANDS"),
    };
    Ok(Report {
        instance: io::emit_instance(inst),
        command: command.to_string(),
        mode,
        result,
        checks,
        timing_ms: opts.timing.then(|| start.elapsed().as_millis()),
    })
}

fn check(name: &str, pass: bool, detail: &str) -> Check {
    Check {
        name: name.to_string(),
        pass,
        detail: detail.to_string(),
    }
}
