//! Command dispatch shared by the binary and the tests.
//!
//! Output is plain text: a verdict line, detail rows, then a
//! `monte-carlo p=<prime> seed=<seed>` trailer. Exit status is 0 for a
//! positive answer, 2 for a negative one and 1 for any error.

use std::fmt::{self, Write as _};
use std::path::PathBuf;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::error::{Error, Result};
use crate::gf::PrimeModulus;
use crate::graph::WeightedGraph;
use crate::lmp::LmpFile;
use crate::matching::{Outcome, Solver, WeightProfile, DEFAULT_RETRIES};
use crate::oracle::{
    enum_parity_bases, enum_perfect_matchings, MAX_MATCHING_VERTICES, MAX_PARITY_LINES,
    MAX_PARITY_VERTICES,
};

pub const EXIT_YES: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NO: i32 = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "cli", derive(clap::ValueEnum))]
pub enum Command {
    /// Does the graph have a perfect matching?
    PmTest,
    /// Print one perfect matching.
    PmFind,
    /// Which weights admit a perfect matching?
    ExactProfile,
    /// Print a perfect matching of weight exactly k.
    ExactFind,
    /// Does the parity instance have a parity base?
    LmpTest,
    /// Which weights admit a parity base?
    LmpProfile,
    /// Print one parity base.
    LmpFind,
}

impl Command {
    pub const ALL: [Command; 7] = [
        Command::PmTest,
        Command::PmFind,
        Command::ExactProfile,
        Command::ExactFind,
        Command::LmpTest,
        Command::LmpProfile,
        Command::LmpFind,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::PmTest => "pm-test",
            Command::PmFind => "pm-find",
            Command::ExactProfile => "exact-profile",
            Command::ExactFind => "exact-find",
            Command::LmpTest => "lmp-test",
            Command::LmpProfile => "lmp-profile",
            Command::LmpFind => "lmp-find",
        }
    }

    pub fn reads_lmp(self) -> bool {
        matches!(
            self,
            Command::LmpTest | Command::LmpProfile | Command::LmpFind
        )
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input_path: PathBuf,
    pub prime: Option<u64>,
    pub seed: u64,
    pub k: Option<usize>,
    pub retries: usize,
    pub oracle: bool,
}

impl RunConfig {
    pub fn new(command: Command, input_path: impl Into<PathBuf>) -> Self {
        Self {
            command,
            input_path: input_path.into(),
            prime: None,
            seed: 0,
            k: None,
            retries: DEFAULT_RETRIES,
            oracle: false,
        }
    }

    pub fn validate(&self) -> std::result::Result<(), String> {
        match (self.command, self.k) {
            (Command::ExactFind, None) => Err("exact-find requires --k".into()),
            (Command::ExactFind, Some(_)) | (_, None) => Ok(()),
            (c, Some(_)) => Err(format!("{c} does not take --k")),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Report {
    fn error(msg: impl fmt::Display) -> Self {
        Self {
            code: EXIT_ERROR,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Reads the input file and runs the command.
pub fn run(config: &RunConfig) -> Report {
    match std::fs::read_to_string(&config.input_path) {
        Ok(text) => run_on_text(config, &text),
        Err(e) => Report::error(format!("cannot read {}: {e}", config.input_path.display())),
    }
}

/// Runs the command on file contents already in memory.
pub fn run_on_text(config: &RunConfig, text: &str) -> Report {
    if let Err(msg) = config.validate() {
        return Report::error(msg);
    }
    let result = if config.command.reads_lmp() {
        text.parse::<LmpFile>().and_then(|f| run_lmp(config, &f))
    } else {
        text.parse::<WeightedGraph>()
            .and_then(|g| run_graph(config, &g))
    };
    match result {
        Ok(r) => r,
        Err(e) => Report::error(e),
    }
}

struct Out {
    positive: bool,
    body: String,
    oracle_row: String,
    oracle_conflict: Option<String>,
}

impl Out {
    fn new(positive: bool, verdict: impl fmt::Display) -> Self {
        Self {
            positive,
            body: format!("{verdict}\n"),
            oracle_row: String::new(),
            oracle_conflict: None,
        }
    }

    fn row(&mut self, row: impl fmt::Display) {
        let _ = writeln!(self.body, "{row}");
    }

    fn oracle(&mut self, agrees: Option<bool>, detail: impl FnOnce() -> String) {
        self.oracle_row = match agrees {
            None => "oracle skipped: input exceeds enumeration limits".into(),
            Some(true) => "oracle agrees".into(),
            Some(false) => {
                let d = detail();
                let row = format!("oracle disagrees: {d}");
                self.oracle_conflict = Some(d);
                row
            }
        };
    }

    fn finish(mut self, config: &RunConfig, modulus: PrimeModulus) -> Report {
        if config.oracle {
            let row = std::mem::take(&mut self.oracle_row);
            self.row(row);
        }
        self.row(format!(
            "monte-carlo p={} seed={}",
            modulus.p(),
            config.seed
        ));
        let (code, stderr) = match self.oracle_conflict {
            Some(d) => (EXIT_ERROR, format!("error: oracle disagrees: {d}\n")),
            None if self.positive => (EXIT_YES, String::new()),
            None => (EXIT_NO, String::new()),
        };
        Report {
            code,
            stdout: self.body,
            stderr,
        }
    }
}

fn solver(config: &RunConfig, n: usize) -> Result<Solver> {
    let modulus = match config.prime {
        Some(p) => PrimeModulus::new(p)?,
        None => PrimeModulus::for_instance_size(n),
    };
    let s = Solver::new(modulus).with_retries(config.retries);
    s.check_size(n)?;
    Ok(s)
}

fn negative_verdict(probable: bool) -> &'static str {
    if probable {
        "no (retries exhausted)"
    } else {
        "no"
    }
}

fn run_graph(config: &RunConfig, g: &WeightedGraph) -> Result<Report> {
    let s = solver(config, g.n())?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = g.n();
    let enumerate = || {
        (config.oracle && n <= MAX_MATCHING_VERTICES)
            .then(|| enum_perfect_matchings(g))
            .transpose()
    };
    let out = match config.command {
        Command::PmTest => {
            let yes = s.has_perfect_matching(g, &mut rng)?;
            let mut out = Out::new(yes, if yes { "yes" } else { "no" });
            let truth = enumerate()?.map(|e| e.count() > 0);
            out.oracle(truth.map(|t| t == yes), || {
                format!("enumeration says {}", if yes { "no" } else { "yes" })
            });
            out
        }
        Command::PmFind => {
            let got = s.find_perfect_matching(g, &mut rng)?;
            let truth = enumerate()?;
            matching_out(got, truth.map(|t| (t.count() > 0, t.matchings)))
        }
        Command::ExactProfile => {
            let profile = s.weight_profile(g, &mut rng)?;
            let truth = enumerate()?.map(|t| t.weight_set(n));
            profile_out(&profile, truth)
        }
        Command::ExactFind => {
            let k = config.k.expect("validated");
            if k > n / 2 {
                return Err(Error::WeightOutOfRange { k, max: n / 2 });
            }
            let got = s.find_exact_matching(g, k, &mut rng)?;
            let truth = enumerate()?.map(|t| {
                let exists = t.weights.contains(&k);
                let of_weight_k = t
                    .matchings
                    .into_iter()
                    .zip(t.weights)
                    .filter(|&(_, w)| w == k)
                    .map(|(m, _)| m)
                    .collect();
                (exists, of_weight_k)
            });
            matching_out(got, truth)
        }
        Command::LmpTest | Command::LmpProfile | Command::LmpFind => unreachable!(),
    };
    Ok(out.finish(config, s.modulus()))
}

fn matching_out(
    got: Outcome<crate::matching::MatchingResult>,
    truth: Option<(bool, Vec<Vec<crate::graph::Edge>>)>,
) -> Out {
    match got {
        Outcome::Found(m) => {
            let mut out = Out::new(true, format!("yes weight={}", m.weight));
            for e in &m.edges {
                out.row(e);
            }
            let agrees = truth.map(|(_, all)| {
                all.into_iter().any(|mut x| {
                    x.sort();
                    x == m.edges
                })
            });
            out.oracle(agrees, || "matching not in the enumeration".into());
            out
        }
        Outcome::Infeasible { probable } => {
            let mut out = Out::new(false, negative_verdict(probable));
            out.oracle(truth.map(|(exists, _)| !exists), || {
                "enumeration finds a matching".into()
            });
            out
        }
    }
}

fn profile_out(profile: &WeightProfile, truth: Option<Vec<bool>>) -> Out {
    let mut out = Out::new(profile.any(), profile);
    out.oracle(truth.as_ref().map(|t| *t == profile.feasible), || {
        let t = truth.clone().unwrap_or_default();
        let ks: Vec<String> = (0..t.len())
            .filter(|&k| t[k])
            .map(|k| k.to_string())
            .collect();
        format!("enumerated weights {{{}}}", ks.join(","))
    });
    out
}

fn run_lmp(config: &RunConfig, file: &LmpFile) -> Result<Report> {
    let s = solver(config, file.nv)?;
    let inst = file.to_instance(s.modulus());
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let enumerate = || {
        (config.oracle && inst.m() <= MAX_PARITY_LINES && inst.nv() <= MAX_PARITY_VERTICES)
            .then(|| enum_parity_bases(&inst))
            .transpose()
    };
    let out = match config.command {
        Command::LmpTest => {
            let yes = s.has_parity_base(&inst, &mut rng)?;
            let mut out = Out::new(yes, if yes { "yes" } else { "no" });
            let truth = enumerate()?.map(|b| !b.is_empty());
            out.oracle(truth.map(|t| t == yes), || {
                format!("enumeration says {}", if yes { "no" } else { "yes" })
            });
            out
        }
        Command::LmpProfile => {
            let profile = s.lmp_weight_profile(&inst, &mut rng)?;
            let truth = enumerate()?.map(|bases| {
                let mut set = vec![false; inst.nv() / 2 + 1];
                for (_, w) in bases {
                    set[w] = true;
                }
                set
            });
            profile_out(&profile, truth)
        }
        Command::LmpFind => {
            let got = s.find_parity_base(&inst, &mut rng)?;
            let truth = enumerate()?;
            match got {
                Outcome::Found(b) => {
                    let mut out = Out::new(true, format!("yes weight={}", b.weight));
                    for l in &b.lines {
                        out.row(l);
                    }
                    let agrees = truth.map(|bases| bases.iter().any(|(ls, _)| *ls == b.lines));
                    out.oracle(agrees, || "base not in the enumeration".into());
                    out
                }
                Outcome::Infeasible { probable } => {
                    let mut out = Out::new(false, negative_verdict(probable));
                    out.oracle(truth.map(|b| b.is_empty()), || {
                        "enumeration finds a parity base".into()
                    });
                    out
                }
            }
        }
        _ => unreachable!(),
    };
    Ok(out.finish(config, s.modulus()))
}

/// A graph rewritten as a parity instance file, one line per edge.
pub fn graph_to_lmp_text(g: &WeightedGraph) -> String {
    LmpFile::from_graph(g).to_string()
}
