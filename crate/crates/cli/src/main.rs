//! `ringlab`: classify elements, decompose them, check ring properties and
//! run the structural cross-checks from the command line. Every invocation
//! prints one JSON document.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{Map, Value};

use ringlab_core::classify::classify_element;
use ringlab_core::decompose::{decompose, DecomposeError, Kind};
use ringlab_core::expr::{
    build, elem_json, parse_corpus, parse_elem_literal, parse_ring_expr, resolve_literal, ring_name, BuildError,
    ParseError,
};
use ringlab_core::properties::{
    check_property, check_property_with_witnesses, default_corpus, theorem_suite, zn_kosan_numbertheory, Property,
};
use ringlab_core::report::{class_report_json, decomposition_json, envelope, suite_json, verdict_json, SCHEMA};
use ringlab_core::ring::{Elem, FiniteRing, RingError, RingFactory, DEFAULT_CARRIER_CAP};

const ATLAS_MAX: u64 = 100_000;

#[derive(Parser, Debug)]
#[command(name = "ringlab", version, about = "Exact computations in small finite rings")]
struct Cli {
    /// Largest carrier size any constructed ring may have.
    #[arg(long, global = true, default_value_t = DEFAULT_CARRIER_CAP)]
    cap: usize,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit JSON (the only format).
    #[arg(long, global = true)]
    json: bool,
    /// Exit with status 1 when `check` finds the property false or a `verify` row fails.
    #[arg(long, global = true)]
    strict: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Element flags for one element or the whole ring.
    Classify {
        expr: String,
        #[arg(long)]
        elem: Option<String>,
    },
    /// Decide a ring property.
    Check {
        property: String,
        expr: String,
        /// Include one decomposition per element when the property is defined by them.
        #[arg(long)]
        witnesses: bool,
    },
    /// Decompose an element.
    Decompose {
        kind: String,
        expr: String,
        elem: String,
        #[arg(long)]
        scope: Option<String>,
    },
    /// Run the structural cross-checks over a corpus.
    Verify {
        /// One ring expression per line; `#` starts a comment.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Sweep `Z/n` for `n` in an inclusive range `lo..hi`.
    Atlas { range: String },
}

/// A failed invocation: exit status plus a machine-readable error object.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    extra: Map<String, Value>,
}

impl Failure {
    fn usage(kind: &'static str, message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            kind,
            message: message.into(),
            extra: Map::new(),
        }
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.extra.insert(key.into(), value.into());
        self
    }

    fn to_json(&self) -> Value {
        let mut error = self.extra.clone();
        error.insert("kind".into(), self.kind.into());
        error.insert("message".into(), self.message.clone().into());
        let mut m = Map::new();
        m.insert("schema".into(), SCHEMA.into());
        m.insert("error".into(), Value::Object(error));
        Value::Object(m)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::usage("parse", e.message.clone()).with("offset", e.offset)
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        match e {
            RingError::CapExceeded { .. } => Failure {
                code: 3,
                kind: "cap_exceeded",
                message: e.to_string(),
                extra: Map::new(),
            },
            other => Failure::usage("ring", other.to_string()),
        }
    }
}

impl From<BuildError> for Failure {
    fn from(e: BuildError) -> Self {
        match e {
            BuildError::Ring(r) => r.into(),
            BuildError::Literal(l) => Failure::usage("literal", l.to_string()),
        }
    }
}

struct Ctx {
    factory: RingFactory,
    strict: bool,
}

impl Ctx {
    fn ring(&self, text: &str) -> Result<FiniteRing, Failure> {
        Ok(build(&parse_ring_expr(text)?, &self.factory)?)
    }
}

fn element(ring: &FiniteRing, text: &str) -> Result<Elem, Failure> {
    let lit = parse_elem_literal(text)?;
    resolve_literal(ring, &lit).map_err(|e| Failure::usage("literal", e.to_string()))
}

fn selector<T: std::str::FromStr>(what: &'static str, text: &str) -> Result<T, Failure> {
    text.parse()
        .map_err(|_| Failure::usage("usage", format!("unknown {what} `{text}`")).with(what, text))
}

fn ring_fields(ring: &FiniteRing) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("ring".into(), ring_name(ring).into());
    m.insert("size".into(), ring.size().into());
    m
}

fn classify(ctx: &Ctx, expr: &str, elem: Option<&str>) -> Result<(Value, u8), Failure> {
    let ring = ctx.ring(expr)?;
    let mut m = ring_fields(&ring);
    match elem {
        Some(text) => {
            let a = element(&ring, text)?;
            m.insert("element".into(), class_report_json(&ring, &classify_element(&ring, a)));
        }
        None => {
            let rows: Vec<Value> = ring
                .elements()
                .map(|a| class_report_json(&ring, &classify_element(&ring, a)))
                .collect();
            m.insert("elements".into(), rows.into());
        }
    }
    Ok((envelope("classify", m), 0))
}

fn check(ctx: &Ctx, property: &str, expr: &str, witnesses: bool) -> Result<(Value, u8), Failure> {
    let property: Property = selector("property", property)?;
    let ring = ctx.ring(expr)?;
    let verdict = if witnesses {
        check_property_with_witnesses(&ring, property)
    } else {
        check_property(&ring, property)
    };
    let code = if ctx.strict && !verdict.holds { 1 } else { 0 };
    let mut m = verdict_json(&ring, &verdict);
    m.insert("size".into(), ring.size().into());
    Ok((envelope("check", m), code))
}

fn decompose_cmd(ctx: &Ctx, kind: &str, expr: &str, elem: &str, scope: Option<&str>) -> Result<(Value, u8), Failure> {
    let kind: Kind = selector("kind", kind)?;
    let scope = match scope {
        Some(s) => selector("scope", s)?,
        None => kind.default_scope(),
    };
    let ring = ctx.ring(expr)?;
    let a = element(&ring, elem)?;
    let found = decompose(&ring, a, kind, scope).map_err(|e| match e {
        DecomposeError::ForeignElement => Failure::usage("literal", e.to_string()),
        other => Failure::usage("decompose", other.to_string()),
    })?;
    let mut m = ring_fields(&ring);
    m.insert("kind".into(), kind.name().into());
    m.insert("scope".into(), scope.name().into());
    m.insert("element".into(), elem_json(&ring, a));
    m.insert("exists".into(), found.is_some().into());
    m.insert(
        "decomposition".into(),
        found.map_or(Value::Null, |d| decomposition_json(&ring, &d)),
    );
    Ok((envelope("decompose", m), 0))
}

fn verify(ctx: &Ctx, corpus: Option<&PathBuf>) -> Result<(Value, u8), Failure> {
    let rings = match corpus {
        None => default_corpus(),
        Some(path) => {
            let text =
                fs::read_to_string(path).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display())))?;
            let exprs = parse_corpus(&text).map_err(|e| Failure::from(e.error.clone()).with("line", e.line))?;
            exprs
                .iter()
                .map(|x| build(x, &ctx.factory))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    let report = theorem_suite(&rings);
    let code = if ctx.strict && !report.passed { 1 } else { 0 };
    Ok((envelope("verify", suite_json(&report)), code))
}

fn parse_range(text: &str) -> Result<(u64, u64), Failure> {
    let bad = || Failure::usage("usage", format!("expected a range `lo..hi`, got `{text}`"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let hi = hi.strip_prefix('=').unwrap_or(hi);
    let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: u64 = hi.trim().parse().map_err(|_| bad())?;
    if lo < 1 || lo > hi {
        return Err(bad());
    }
    if hi > ATLAS_MAX {
        return Err(Failure::usage(
            "usage",
            format!("atlas ranges end at most at {ATLAS_MAX}"),
        ));
    }
    Ok((lo, hi))
}

fn atlas_row(factory: &RingFactory, n: u64) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), n.into());
    m.insert("kosan_numbertheory".into(), zn_kosan_numbertheory(n).into());
    let ring = factory.zmod(n as usize).ok();
    for p in Property::ALL {
        let cell = match &ring {
            Some(r) => check_property(r, p).holds.into(),
            None => "skipped".into(),
        };
        m.insert(p.name().into(), cell);
    }
    Value::Object(m)
}

fn atlas(ctx: &Ctx, range: &str) -> Result<(Value, u8), Failure> {
    let (lo, hi) = parse_range(range)?;
    let rows: Vec<Value> = (lo..=hi).into_par_iter().map(|n| atlas_row(&ctx.factory, n)).collect();
    let mut m = Map::new();
    m.insert("lo".into(), lo.into());
    m.insert("hi".into(), hi.into());
    m.insert("cap".into(), ctx.factory.cap().into());
    m.insert("rows".into(), rows.into());
    Ok((envelope("atlas", m), 0))
}

fn run(cli: &Cli) -> Result<(Value, u8), Failure> {
    let ctx = Ctx {
        factory: RingFactory::new(cli.cap),
        strict: cli.strict,
    };
    match &cli.command {
        Command::Classify { expr, elem } => classify(&ctx, expr, elem.as_deref()),
        Command::Check {
            property,
            expr,
            witnesses,
        } => check(&ctx, property, expr, *witnesses),
        Command::Decompose {
            kind,
            expr,
            elem,
            scope,
        } => decompose_cmd(&ctx, kind, expr, elem, scope.as_deref()),
        Command::Verify { corpus } => verify(&ctx, corpus.as_ref()),
        Command::Atlas { range } => atlas(&ctx, range),
    }
}

fn emit(value: &Value, out: Option<&PathBuf>) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("JSON values serialize");
    text.push('\n');
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::usage("io", format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn fail(f: &Failure) -> ExitCode {
    let mut text = serde_json::to_string_pretty(&f.to_json()).expect("JSON values serialize");
    text.push('\n');
    print!("{text}");
    ExitCode::from(f.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return fail(&Failure::usage("usage", e.kind().to_string()));
        }
    };
    match run(&cli).and_then(|(report, code)| emit(&report, cli.out.as_ref()).map(|()| code)) {
        Ok(code) => ExitCode::from(code),
        Err(f) => fail(&f),
    }
}
