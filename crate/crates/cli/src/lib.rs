//! Command-line front end for `flipgroupoid`.
//!
//! Exit status is 0 on success, 1 when a mathematical check fails and 2 on
//! usage errors. Failures print a JSON report on stderr.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::error::{ContextKind, ErrorKind};
use clap::Parser;

pub use config::RunConfig;
use config::Command;
pub use report::{CliError, Outcome};

/// Run the configured sub-command on a pool of `--threads` workers.
pub fn run(config: &RunConfig) -> Result<Outcome, CliError> {
    let budget = config.budget()?;
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(n) = config.threads {
        if n == 0 {
            return Err(CliError::Usage { flag: "--threads".into(), message: "need at least one thread".into() });
        }
        pool = pool.num_threads(n);
    }
    let pool = pool
        .build()
        .map_err(|e| CliError::Usage { flag: "--threads".into(), message: e.to_string() })?;
    pool.install(|| match &config.command {
        Command::Surface(c) => commands::surface(c),
        Command::Enumerate(c) => commands::enumerate(c, budget),
        Command::Relations(c) => commands::relations(c, budget),
        Command::Homology(c) => commands::homology(c, budget),
        Command::Presentation(c) => commands::presentation(c),
        Command::Cover(c) => commands::cover(c, budget),
        Command::Braid(c) => commands::braid(c),
        Command::Export(c) => commands::export(c),
    })
}

fn fail(e: &CliError) -> i32 {
    let text = serde_json::to_string_pretty(&e.report()).expect("reports serialize");
    eprintln!("{text}");
    e.exit_code()
}

/// Parse `args`, run, write the artifact and return the exit status.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match RunConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return 0;
        }
        Err(e) => {
            let flag = e.get(ContextKind::InvalidArg).map(|v| v.to_string()).unwrap_or_else(|| "arguments".into());
            let first = e.render().to_string().lines().next().unwrap_or_default().to_string();
            let message = first.trim_start_matches("error: ").to_string();
            return fail(&CliError::Usage { flag, message });
        }
    };
    match run(&config) {
        Ok(out) => {
            let written = match &config.output {
                Some(path) => report::write(path, &out.artifact),
                None => std::io::stdout()
                    .write_all(out.artifact.as_bytes())
                    .map_err(|e| CliError::Io { path: "stdout".into(), message: e.to_string() }),
            };
            match written {
                Ok(()) => out.exit_code(),
                Err(e) => fail(&e),
            }
        }
        Err(e) => fail(&e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use report::EXIT_USAGE;

    fn outcome(args: &[&str]) -> Result<Outcome, CliError> {
        run(&RunConfig::try_parse_from(args).unwrap())
    }

    #[test]
    fn enumerate_pentagon() {
        let out = outcome(&["fg", "enumerate", "--polygon", "5"]).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.artifact).unwrap();
        assert_eq!(v["vertex_count"], 5);
        assert!(out.passed);
    }

    #[test]
    fn braid_equality() {
        let out = outcome(&["fg", "braid", "eq", "1 2 1", "2 1 2", "--strands", "3"]).unwrap();
        assert_eq!(out.artifact, "Equal\n");
        let out = outcome(&["fg", "braid", "eq", "-1 2", "2 -1", "--strands", "3"]).unwrap();
        assert!(!out.passed);
    }

    #[test]
    fn truncated_relations_need_the_flag() {
        let e = outcome(&["fg", "relations", "--annulus", "1", "1", "--radius", "2"]).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let out = outcome(&["fg", "relations", "--annulus", "1", "1", "--radius", "2", "--allow-incomplete"]).unwrap();
        assert!(out.passed);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(main_with(["fg", "enumerate"]), EXIT_USAGE);
        assert_eq!(main_with(["fg", "enumerate", "--polygon", "3"]), EXIT_USAGE);
        assert_eq!(main_with(["fg", "enumerate", "--polygon", "5", "--annulus", "1", "1"]), EXIT_USAGE);
        assert_eq!(main_with(["fg", "frobnicate"]), EXIT_USAGE);
        assert_eq!(main_with(["fg", "--budget", "0", "enumerate", "--polygon", "5"]), EXIT_USAGE);
        assert_eq!(main_with(["fg", "presentation", "--annulus", "1", "1", "--verify"]), EXIT_USAGE);
    }

    #[test]
    fn budget_overflow_is_a_check_failure() {
        let e = outcome(&["fg", "--budget", "10", "enumerate", "--polygon", "7"]).unwrap_err();
        assert_eq!(e.exit_code(), report::EXIT_CHECK);
        assert_eq!(e.report().kind, "budget");
    }

    #[test]
    fn presentation_verifies_on_discs() {
        let out = outcome(&["fg", "presentation", "--polygon", "6", "--flip", "2,1", "--verify"]).unwrap();
        assert!(out.passed);
        let v: serde_json::Value = serde_json::from_str(&out.artifact).unwrap();
        assert!(v["relations"].as_array().unwrap().len() >= 3);
    }
}
