use std::path::PathBuf;

use clap::Args;
use knotcalc::diagram::{pd_parse, Diagram};
use knotcalc::presentations::{braid_parse, PlatPresentation, PlatRecord};
use knotcalc::table::KnotTable;

use crate::CliError;

/// Where the diagram comes from. Exactly one source is allowed.
#[derive(Args, Debug)]
pub struct InputArgs {
    /// File holding a PD code, a braid word, or a plat presentation (JSON).
    #[arg(conflicts_with_all = ["knot", "pd", "braid"])]
    pub file: Option<PathBuf>,
    /// Entry of the bundled table, e.g. `6_1`.
    #[arg(long, conflicts_with_all = ["pd", "braid"])]
    pub knot: Option<String>,
    /// PD code given inline.
    #[arg(long, conflicts_with = "braid")]
    pub pd: Option<String>,
    /// Braid word given inline, e.g. `s1 s2^-1 s1`.
    #[arg(long)]
    pub braid: Option<String>,
    /// Use the mirror image.
    #[arg(long)]
    pub mirror: bool,
}

fn input_err(e: impl std::fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Guesses the grammar from the first character: `{` is a plat record,
/// `s` a braid word, anything else PD.
pub fn parse_text(text: &str) -> Result<Diagram, CliError> {
    let t = text.trim();
    if t.starts_with('{') {
        let rec: PlatRecord = serde_json::from_str(t).map_err(|e| input_err(format!("plat record: {e}")))?;
        let p = PlatPresentation::from_record(&rec).map_err(input_err)?;
        p.spine_boundary_knot().map_err(input_err)
    } else if t.starts_with('s') {
        Ok(braid_parse(t, None).map_err(input_err)?.closure())
    } else {
        pd_parse(t).map_err(input_err)
    }
}

impl InputArgs {
    /// The diagram and a short label for reports.
    pub fn load(&self) -> Result<(String, Diagram), CliError> {
        let (label, d) = if let Some(name) = &self.knot {
            let t = KnotTable::bundled();
            let e = t.get(name).ok_or_else(|| input_err(format!("no table entry {name}")))?;
            (name.clone(), e.diagram()?)
        } else if let Some(pd) = &self.pd {
            ("pd".to_string(), pd_parse(pd).map_err(input_err)?)
        } else if let Some(b) = &self.braid {
            ("braid".to_string(), braid_parse(b, None).map_err(input_err)?.closure())
        } else if let Some(path) = &self.file {
            let text = std::fs::read_to_string(path).map_err(|e| input_err(format!("{}: {e}", path.display())))?;
            (path.display().to_string(), parse_text(&text)?)
        } else {
            return Err(input_err("no input: give a file, --knot, --pd or --braid"));
        };
        if self.mirror {
            Ok((format!("mirror of {label}"), d.mirror()))
        } else {
            Ok((label, d))
        }
    }
}
