//! Resolving command-line flags into a validated run configuration.

use std::fs;

use chebotarev::algebra::{FieldDescriptor, FieldRef, FiniteField};
use chebotarev::covers::{make_cover, Cover, GroupElement};
use chebotarev::descriptor::{parse_cover_any, CoverJson};
use chebotarev::theorem::gamma_choices;
use chebotarev::{Error, Result};
use clap::{Args, ValueEnum};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Debug, Clone, Args)]
pub struct FieldArgs {
    /// Field size, a prime power.
    #[arg(long, conflicts_with_all = ["p", "k"])]
    pub q: Option<u64>,
    /// Characteristic, used together with --k.
    #[arg(long)]
    pub p: Option<u64>,
    /// Extension degree over F_p.
    #[arg(long, requires = "p")]
    pub k: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub field: FieldArgs,
    /// Cover as inline descriptor, JSON, or @path to a file holding either.
    #[arg(long)]
    pub cover: String,
    /// Largest place degree to enumerate.
    #[arg(long, default_value_t = 1)]
    pub deg: usize,
    /// Cross-check against the point-enumeration oracle.
    #[arg(long)]
    pub oracle: bool,
    /// Seed for randomized polynomial factorization.
    #[arg(long, default_value_t = chebotarev::algebra::DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<String>,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Cap on the number of candidates any enumeration may visit.
    #[arg(long = "max-enum", default_value_t = chebotarev::algebra::DEFAULT_ENUMERATION_LIMIT)]
    pub max_enum: u64,
}

/// Everything a report needs to be reproduced.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub field: FieldDescriptor,
    pub q: u64,
    pub cover: String,
    pub cover_json: CoverJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<String>,
    pub deg: usize,
    pub oracle: bool,
    pub seed: u64,
    pub format: Format,
    pub workers: usize,
    pub max_enum: u64,
}

pub struct Resolved {
    pub config: RunConfig,
    pub field: FieldRef,
    pub cover: Cover,
}

pub fn resolve_field(args: &FieldArgs) -> Result<FieldRef> {
    match (args.q, args.p, args.k) {
        (Some(q), None, None) => FiniteField::of_order(q),
        (None, Some(_), Some(0)) => Err(Error::Config("--k must be positive".into())),
        (None, Some(p), k) => FiniteField::standard(p, k.unwrap_or(1)),
        _ => Err(Error::Config("give either --q or --p [--k]".into())),
    }
}

fn read_cover_text(arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => {
            fs::read_to_string(path).map_err(|e| Error::Config(format!("cannot read {path}: {e}")))
        }
        None => Ok(arg.to_string()),
    }
}

pub fn resolve(args: &CommonArgs, gamma: Option<&str>) -> Result<Resolved> {
    if args.deg == 0 || args.workers == 0 || args.max_enum == 0 {
        return Err(Error::Config(
            "--deg, --workers and --max-enum must be positive".into(),
        ));
    }
    chebotarev::algebra::set_default_seed(args.seed);
    let field = resolve_field(&args.field)?;
    let descriptor = parse_cover_any(&field, read_cover_text(&args.cover)?.trim())?;
    let cover = make_cover(&field, &descriptor)?;
    let config = RunConfig {
        field: field.descriptor(),
        q: field.order() as u64,
        cover: descriptor.to_string(),
        cover_json: CoverJson::from_descriptor(&descriptor),
        gamma: gamma.map(str::to_string),
        deg: args.deg,
        oracle: args.oracle,
        seed: args.seed,
        format: args.format,
        workers: args.workers,
        max_enum: args.max_enum,
    };
    Ok(Resolved {
        config,
        field,
        cover,
    })
}

/// `"all"` gives the whole coset `F N`; otherwise a single exponent vector
/// such as `1`, `-1` or `(1,0)`, which must lie in that coset.
pub fn resolve_gamma(cover: &Cover, selector: &str) -> Result<Vec<GroupElement>> {
    if selector.trim() == "all" {
        return Ok(gamma_choices(cover));
    }
    let g = cover.group().parse_element(selector)?;
    if !cover.in_frobenius_coset(&g) {
        return Err(Error::GammaNotInCoset(g.to_string()));
    }
    Ok(vec![g])
}
