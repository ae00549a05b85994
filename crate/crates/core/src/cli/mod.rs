//! Command-line driver: jobs, reports and verification suites.

pub mod job;
pub mod ops;
pub mod suites;

use std::io::Write;

use clap::Parser;
use serde_json::json;

pub use job::{Args, Context, FieldSpec, JobSpec, ModuleSpec};
pub use suites::{suite, SuiteReport};

use crate::error::Error;

pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_MATH: i32 = 3;

/// Report for a single job, with the exit status it implies.
pub fn run_job(job: &JobSpec) -> (serde_json::Value, i32) {
    let header = json!({ "job": job });
    let ctx = match job.resolve() {
        Ok(c) => c,
        Err(e) => return (error_report(header, &e), EXIT_PARSE),
    };
    let mut report = json!({
        "job": job,
        "field": ctx.field.describe(),
        "module": ctx.module.describe(),
        "cap": job.cap(),
    });
    match ctx.run() {
        Ok(out) => {
            report["result"] = out.result;
            let code = match out.verdict {
                Some(pass) => {
                    report["pass"] = json!(pass);
                    if pass {
                        0
                    } else {
                        EXIT_VERIFY_FAILED
                    }
                }
                None => 0,
            };
            (report, code)
        }
        Err(e) => {
            let code = if matches!(e, Error::Parse(_)) { EXIT_PARSE } else { EXIT_MATH };
            (error_report(report, &e), code)
        }
    }
}

fn error_report(mut base: serde_json::Value, e: &Error) -> serde_json::Value {
    base["error"] = json!({ "name": e.name(), "message": e.to_string() });
    base
}

fn emit(report: &serde_json::Value, out: Option<&std::path::Path>) -> std::io::Result<()> {
    let text = serde_json::to_string_pretty(report).expect("serializable report") + "\n";
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

/// Entry point; returns the process exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { 0 };
        }
    };
    let mut out = args.out.clone();
    let (report, code) = if let Some(name) = &args.suite {
        match suite(name) {
            Ok(r) => {
                let pass = r.pass;
                (serde_json::to_value(r).expect("serializable report"), if pass { 0 } else { EXIT_VERIFY_FAILED })
            }
            Err(e) => (error_report(json!({ "suite": name }), &e), EXIT_PARSE),
        }
    } else {
        match args.to_job() {
            Ok(job) => {
                out = out.or_else(|| job.out.clone());
                run_job(&job)
            }
            Err(e) => (error_report(json!({}), &e), EXIT_PARSE),
        }
    };
    if let Err(e) = emit(&report, out.as_deref()) {
        eprintln!("cannot write report: {e}");
        return EXIT_MATH;
    }
    code
}
