//! Argument handling and dispatch for the `pg0` binary.

use std::io::{Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use pg0_core::burniat::examples;

use crate::config::{parse_config, ConfigDocument, SCHEMA};
use crate::render::{document_figure, render_svg, ChartChoice};
use crate::report::{parse_sections, run_report, Section};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PARSE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "pg0", version, about = "Burniat, Campedelli and Godeaux configuration toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Io {
    /// Input document (JSON); `-` reads stdin.
    #[arg(long, short)]
    pub input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    Validate(Io),
    Classify(Io),
    Invariants(Io),
    Lattice(Io),
    Extend(Io),
    Campedelli(Io),
    Godeaux(Io),
    NodeDeform(Io),
    /// All sections, or the comma separated `--sections` list.
    Report {
        #[command(flatten)]
        io: Io,
        #[arg(long)]
        sections: Option<String>,
    },
    Render {
        #[command(flatten)]
        io: Io,
        #[arg(long, default_value = "auto")]
        chart: ChartChoice,
        /// Draw the seven Campedelli lines of an m = 4 configuration.
        #[arg(long)]
        bridge: bool,
    },
    /// Print a bundled configuration document.
    Example {
        /// One of the bundled names; lists them when omitted.
        name: Option<String>,
        #[arg(long, short)]
        out: Option<PathBuf>,
    },
}

fn read_input(io: &Io, needed: bool) -> Result<Option<String>, String> {
    match &io.input {
        None if needed => Err("missing --input".into()),
        None => Ok(None),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
            Ok(Some(s))
        }
        Some(p) => std::fs::read_to_string(p).map(Some).map_err(|e| format!("{}: {e}", p.display())),
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
    }
}

fn empty_document() -> ConfigDocument {
    ConfigDocument {
        schema: SCHEMA.into(),
        name: None,
        vertices: None,
        extra_points: vec![],
        pencils: None,
        extended: None,
        campedelli: None,
        godeaux: None,
    }
}

/// Runs one invocation; returns the process exit code.
pub fn run(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let single = |s: Section, io: Io| (io, vec![s]);
    let (io, sections) = match cli.command {
        Command::Validate(io) => single(Section::Validate, io),
        Command::Classify(io) => single(Section::Classify, io),
        Command::Invariants(io) => single(Section::Invariants, io),
        Command::Lattice(io) => single(Section::Lattice, io),
        Command::Extend(io) => single(Section::Extend, io),
        Command::Campedelli(io) => single(Section::Campedelli, io),
        Command::Godeaux(io) => single(Section::Godeaux, io),
        Command::NodeDeform(io) => single(Section::NodeDeform, io),
        Command::Report { io, sections } => match sections.as_deref().map(parse_sections) {
            None => (io, Section::ALL.to_vec()),
            Some(Ok(s)) => (io, s),
            Some(Err(e)) => {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_PARSE;
            }
        },
        Command::Render { io, chart, bridge } => return render(&io, chart, bridge, stdout, stderr),
        Command::Example { name, out } => return example(name.as_deref(), &out, stdout, stderr),
    };
    // node-deform and godeaux have content without any input document
    let needed = !sections.iter().all(|s| matches!(s, Section::NodeDeform | Section::Godeaux));
    let doc = match load(&io, needed, stderr) {
        Ok(d) => d,
        Err(code) => return code,
    };
    let report = run_report(&doc, &sections);
    for e in &report.errors {
        let _ = writeln!(stderr, "error: {e}");
    }
    if let Err(e) = emit(&io.out, &report.to_json(), stdout) {
        let _ = writeln!(stderr, "error: {e}");
        return EXIT_INVALID;
    }
    report.exit_code()
}

fn load(io: &Io, needed: bool, stderr: &mut dyn Write) -> Result<ConfigDocument, i32> {
    let text = match read_input(io, needed) {
        Ok(Some(t)) => t,
        Ok(None) => return Ok(empty_document()),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return Err(EXIT_PARSE);
        }
    };
    parse_config(&text).map_err(|e| {
        let _ = writeln!(stderr, "parse error: {e}");
        EXIT_PARSE
    })
}

fn render(io: &Io, chart: ChartChoice, bridge: bool, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let doc = match load(io, true, stderr) {
        Ok(d) => d,
        Err(code) => return code,
    };
    if let Some(cfg) = doc.burniat() {
        let v = pg0_core::burniat::validate_config(&cfg);
        if !v.is_valid() {
            let _ = writeln!(stderr, "error: {}", v.summary());
            return EXIT_INVALID;
        }
    }
    let svg = document_figure(&doc, bridge).and_then(|f| render_svg(&f, chart));
    match svg.and_then(|s| emit(&io.out, &s, stdout)) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}

fn example(name: Option<&str>, out: &Option<PathBuf>, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let named = examples::named();
    let Some(name) = name else {
        let list: String = named.iter().map(|(n, _)| format!("{n}\n")).collect();
        return if emit(out, &list, stdout).is_ok() { EXIT_OK } else { EXIT_INVALID };
    };
    let Some((_, cfg)) = named.iter().find(|(n, _)| *n == name) else {
        let _ = writeln!(stderr, "error: no bundled configuration named {name:?}");
        return EXIT_INVALID;
    };
    match emit(out, &ConfigDocument::from_burniat(name, cfg).to_json(), stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            EXIT_INVALID
        }
    }
}
