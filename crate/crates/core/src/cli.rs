// Licensed under the Apache-2.0 license

//! Command-line front end. [`run`] is the whole program; the binary only
//! forwards process arguments and the exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::catalog::{assemble_package, Catalog, CatalogError};
use crate::compat::{cluster_images, compare_images, Compatibility};
use crate::report::{
    exit_code_for, render_groups_text, render_scan_text, render_scenario_text, render_verdict_text, Report,
};
use crate::scanner::{export_certificate, export_file_name, scan_image, ExportFormat};
use crate::sim::{canned_names, canned_scenario_text, run_scenario, ScenarioConfig, ScenarioReport};

pub const CATALOG_ENV: &str = "TZAUDIT_CATALOG";

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const CONFIG: i32 = 2;
    pub const NOTHING_FOUND: i32 = 3;
    pub const NOT_COMPATIBLE: i32 = 4;
    pub const DOWNGRADE_POSSIBLE: i32 = 5;
}

#[derive(Debug, Parser)]
#[command(
    name = "tzaudit",
    version,
    about = "Audit TrustZone firmware images for downgrade exposure"
)]
struct Cli {
    /// Emit JSON on stdout, and JSON error objects on stderr.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit human-readable text (default).
    #[arg(long, global = true)]
    text: bool,
    /// NDJSON catalog file.
    #[arg(long, global = true, env = CATALOG_ENV)]
    catalog: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Find and decode X.509 certificates embedded in an image.
    Scan(ScanArgs),
    /// Manage the image catalog.
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Check whether two cataloged images share a signing key.
    Compare { image_a: String, image_b: String },
    /// Group cataloged images by shared signing keys.
    Cluster,
    /// Run a downgrade scenario.
    Simulate(SimulateArgs),
    /// Write the aggregate JSON report.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct ScanArgs {
    image: PathBuf,
    /// Identifier used in output; defaults to the file name.
    #[arg(long)]
    id: Option<String>,
    /// Write each certificate into this directory.
    #[arg(long)]
    export_dir: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Der)]
    export_format: Format,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Der,
    Pem,
}

impl From<Format> for ExportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Der => ExportFormat::Der,
            Format::Pem => ExportFormat::Pem,
        }
    }
}

#[derive(Debug, Subcommand)]
enum CatalogCommand {
    /// Scan an image (or the files of one split trustlet) and record it.
    Add {
        #[arg(required = true)]
        paths: Vec<String>,
        #[arg(long)]
        id: String,
        #[arg(long, default_value = "")]
        label: String,
        #[arg(long)]
        vendor: Option<String>,
        /// Overwrite an existing record with the same id.
        #[arg(long)]
        force: bool,
    },
    /// List cataloged images.
    List,
}

#[derive(Debug, Args)]
struct SimulateArgs {
    /// Scenario JSON file.
    #[arg(required_unless_present_any = ["canned", "list"], conflicts_with = "canned")]
    scenario: Option<PathBuf>,
    /// Run a bundled scenario by name.
    #[arg(long)]
    canned: Option<String>,
    /// List bundled scenarios.
    #[arg(long)]
    list: bool,
}

#[derive(Debug, Args)]
struct ReportArgs {
    #[arg(long)]
    out: PathBuf,
    /// Scenario files to run and include.
    #[arg(long = "scenario")]
    scenarios: Vec<PathBuf>,
    /// Bundled scenarios to run and include.
    #[arg(long = "canned")]
    canned: Vec<String>,
}

/// A failed command: exit code, error kind and message.
#[derive(Debug)]
struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn io(path: &Path, e: std::io::Error) -> Self {
        Self {
            code: exit::FAILURE,
            kind: "io",
            message: format!("{}: {e}", path.display()),
        }
    }

    fn usage(message: impl Into<String>) -> Self {
        Self {
            code: exit::FAILURE,
            kind: "usage",
            message: message.into(),
        }
    }

    fn config(message: impl Into<String>) -> Self {
        Self {
            code: exit::CONFIG,
            kind: "config",
            message: message.into(),
        }
    }
}

impl From<CatalogError> for Failure {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::SchemaVersionMismatch { .. } => Self::config(e.to_string()),
            CatalogError::Io { .. } => Self {
                code: exit::FAILURE,
                kind: "io",
                message: e.to_string(),
            },
            _ => Self::usage(e.to_string()),
        }
    }
}

struct Ctx<'a> {
    json: bool,
    catalog: Option<PathBuf>,
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Ctx<'_> {
    fn emit<T: Serialize>(&mut self, value: &T, text: impl FnOnce() -> String) {
        let rendered = if self.json {
            serde_json::to_string_pretty(value).expect("output serializes") + "\n"
        } else {
            text()
        };
        let _ = self.out.write_all(rendered.as_bytes());
    }

    fn catalog_path(&self) -> Result<&Path, Failure> {
        self.catalog
            .as_deref()
            .ok_or_else(|| Failure::usage(format!("no catalog given; pass --catalog or set {CATALOG_ENV}")))
    }

    fn open_catalog(&mut self) -> Result<Catalog, Failure> {
        let catalog = Catalog::open(self.catalog_path()?)?;
        for d in &catalog.diagnostics {
            let _ = writeln!(self.err, "warning: catalog line {}: {}", d.line, d.message);
        }
        Ok(catalog)
    }
}

/// Runs the CLI with `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let wants_json = args.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                return exit::OK;
            }
            report_failure(err, wants_json, &Failure::usage(e.to_string().trim_end()));
            return exit::FAILURE;
        }
    };
    let mut ctx = Ctx {
        json: cli.json,
        catalog: cli.catalog,
        out,
        err,
    };
    match dispatch(&mut ctx, cli.command) {
        Ok(code) => code,
        Err(f) => {
            report_failure(ctx.err, ctx.json, &f);
            f.code
        }
    }
}

fn report_failure(err: &mut dyn Write, json: bool, f: &Failure) {
    if json {
        let value = json!({ "error": { "kind": f.kind, "message": f.message }, "exit_code": f.code });
        let _ = writeln!(err, "{value}");
    } else {
        let _ = writeln!(err, "error: {}", f.message);
    }
}

fn dispatch(ctx: &mut Ctx<'_>, command: Command) -> Result<i32, Failure> {
    match command {
        Command::Scan(args) => cmd_scan(ctx, args),
        Command::Catalog(CatalogCommand::Add {
            paths,
            id,
            label,
            vendor,
            force,
        }) => cmd_catalog_add(ctx, &paths, &id, &label, vendor.as_deref(), force),
        Command::Catalog(CatalogCommand::List) => cmd_catalog_list(ctx),
        Command::Compare { image_a, image_b } => cmd_compare(ctx, &image_a, &image_b),
        Command::Cluster => cmd_cluster(ctx),
        Command::Simulate(args) => cmd_simulate(ctx, args),
        Command::Report(args) => cmd_report(ctx, args),
    }
}

fn cmd_scan(ctx: &mut Ctx<'_>, args: ScanArgs) -> Result<i32, Failure> {
    let image = fs::read(&args.image).map_err(|e| Failure::io(&args.image, e))?;
    let id = args.id.unwrap_or_else(|| {
        args.image
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| args.image.display().to_string())
    });
    let result = scan_image(&image, &id);
    if let Some(dir) = &args.export_dir {
        fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
        let format = ExportFormat::from(args.export_format);
        for i in 0..result.certificates.len() {
            let bytes = export_certificate(&result, i, format).expect("index in range");
            let path = dir.join(export_file_name(&id, i, format));
            fs::write(&path, bytes).map_err(|e| Failure::io(&path, e))?;
        }
    }
    ctx.emit(&result, || render_scan_text(&result, &image));
    Ok(if result.certificates.is_empty() {
        exit::NOTHING_FOUND
    } else {
        exit::OK
    })
}

fn cmd_catalog_add(
    ctx: &mut Ctx<'_>,
    paths: &[String],
    id: &str,
    label: &str,
    vendor: Option<&str>,
    force: bool,
) -> Result<i32, Failure> {
    let refs: Vec<&str> = paths.iter().map(String::as_str).collect();
    let package = assemble_package(&refs, |p: &str| fs::read(p))?;
    let mut catalog = ctx.open_catalog()?;
    let record = catalog.ingest(&package, id, label, vendor, force)?.clone();
    for w in &record.source.warnings {
        let _ = writeln!(ctx.err, "warning: {w:?}");
    }
    let summary = json!({
        "image_id": record.image_id,
        "layout": record.source.layout,
        "certificates": record.certificate_count(),
        "signing_keys": record.key_profile,
    });
    ctx.emit(&summary, || {
        format!(
            "added {} ({}, {} certificate(s), {} signing key(s))\n",
            record.image_id,
            record.source.layout,
            record.certificate_count(),
            record.key_profile.len()
        )
    });
    Ok(exit::OK)
}

fn cmd_catalog_list(ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    let catalog = ctx.open_catalog()?;
    let rows: Vec<_> = catalog
        .records
        .iter()
        .map(|r| {
            json!({
                "image_id": r.image_id,
                "build_label": r.build_label,
                "vendor_hint": r.vendor_hint,
                "layout": r.source.layout,
                "certificates": r.certificate_count(),
                "signing_keys": r.key_profile,
            })
        })
        .collect();
    ctx.emit(&rows, || {
        let mut s = String::new();
        for r in &catalog.records {
            let keys: Vec<String> = r.key_profile.iter().map(|k| k.short()).collect();
            s.push_str(&format!(
                "{:<24} {:<12} {:<14} {} cert(s)  keys: {}\n",
                r.image_id,
                r.build_label,
                r.source.layout.to_string(),
                r.certificate_count(),
                keys.join(",")
            ));
        }
        s
    });
    Ok(if catalog.is_empty() {
        exit::NOTHING_FOUND
    } else {
        exit::OK
    })
}

fn cmd_compare(ctx: &mut Ctx<'_>, a: &str, b: &str) -> Result<i32, Failure> {
    let catalog = ctx.open_catalog()?;
    let verdict = compare_images(catalog.require(a)?, catalog.require(b)?);
    ctx.emit(&verdict, || render_verdict_text(a, b, &verdict));
    Ok(match verdict.verdict {
        Compatibility::Mutual => exit::OK,
        Compatibility::None => exit::NOT_COMPATIBLE,
    })
}

fn cmd_cluster(ctx: &mut Ctx<'_>) -> Result<i32, Failure> {
    let catalog = ctx.open_catalog()?;
    let groups = cluster_images(&catalog.records);
    ctx.emit(&groups, || render_groups_text(&groups));
    Ok(if groups.is_empty() {
        exit::NOTHING_FOUND
    } else {
        exit::OK
    })
}

fn load_scenario(path: &Path) -> Result<ScenarioReport, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(path, e))?;
    let config = ScenarioConfig::from_json(&text).map_err(|e| Failure::config(format!("{}: {e}", path.display())))?;
    run_scenario(&config).map_err(|e| Failure::config(format!("{}: {e}", path.display())))
}

fn canned(name: &str) -> Result<ScenarioReport, Failure> {
    let text = canned_scenario_text(name).ok_or_else(|| {
        Failure::usage(format!(
            "unknown canned scenario {name:?} (available: {})",
            canned_names().collect::<Vec<_>>().join(", ")
        ))
    })?;
    let config = ScenarioConfig::from_json(text).map_err(|e| Failure::config(e.to_string()))?;
    run_scenario(&config).map_err(|e| Failure::config(e.to_string()))
}

fn cmd_simulate(ctx: &mut Ctx<'_>, args: SimulateArgs) -> Result<i32, Failure> {
    if args.list {
        let names: Vec<&str> = canned_names().collect();
        ctx.emit(&names, || names.iter().map(|n| format!("{n}\n")).collect());
        return Ok(exit::OK);
    }
    let report = match (&args.scenario, &args.canned) {
        (Some(path), _) => load_scenario(path)?,
        (None, Some(name)) => canned(name)?,
        (None, None) => return Err(Failure::usage("give a scenario file or --canned NAME")),
    };
    ctx.emit(&report, || render_scenario_text(&report));
    Ok(exit_code_for(report.verdict))
}

fn cmd_report(ctx: &mut Ctx<'_>, args: ReportArgs) -> Result<i32, Failure> {
    let catalog = ctx.open_catalog()?;
    let mut scenarios = Vec::new();
    for path in &args.scenarios {
        scenarios.push(load_scenario(path)?);
    }
    for name in &args.canned {
        scenarios.push(canned(name)?);
    }
    let report = Report::build(&catalog.records, scenarios);
    fs::write(&args.out, report.to_json() + "\n").map_err(|e| Failure::io(&args.out, e))?;
    let summary = json!({
        "out": args.out.display().to_string(),
        "images": report.key_profiles.len(),
        "groups": report.groups.len(),
        "scenarios": report.scenarios.len(),
    });
    ctx.emit(&summary, || {
        format!(
            "wrote {} ({} image(s), {} group(s), {} scenario(s))\n",
            args.out.display(),
            report.key_profiles.len(),
            report.groups.len(),
            report.scenarios.len()
        )
    });
    Ok(exit::OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("tzaudit").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn canned_simulation_exit_codes() {
        assert_eq!(
            run_capture(&["simulate", "--canned", "cve-2015-6639"]).0,
            exit::DOWNGRADE_POSSIBLE
        );
        assert_eq!(
            run_capture(&["simulate", "--canned", "cve-2015-6639-version-counter"]).0,
            exit::OK
        );
        assert_eq!(
            run_capture(&["simulate", "--canned", "cve-2015-6639-per-version-keys"]).0,
            exit::OK
        );
    }

    #[test]
    fn usage_errors_exit_one() {
        let (code, _, err) = run_capture(&["--json", "frobnicate"]);
        assert_eq!(code, exit::FAILURE);
        let v: serde_json::Value = serde_json::from_str(err.trim()).unwrap();
        assert_eq!(v["error"]["kind"], "usage");
        assert_eq!(run_capture(&["--help"]).0, exit::OK);
    }

    #[test]
    fn unknown_canned_scenario() {
        let (code, _, err) = run_capture(&["simulate", "--canned", "nope"]);
        assert_eq!(code, exit::FAILURE);
        assert!(err.contains("cve-2015-6639"));
    }
}
