//! `gmap`: check, rewrite and render embedded G-maps from the shell.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails or nothing
//! matches, 2 on usage or parse errors.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand};

use gmap_core::consistency::check_rule_consistency;
use gmap_core::gmap::{GMap, GMapSpec, OrbitType};
use gmap_core::io::{parse_gmap, parse_rule_document, write_gmap, RuleDocument};
use gmap_core::report::Report;
use gmap_core::rewrite::{apply, check_dangling, find_matches_with, validate_rule, Match};
use gmap_core::scheme::{eval_expression, find_scheme_matches, instantiate, parse_expression, validate_scheme};
use gmap_core::svg::render;

#[derive(Parser)]
#[command(name = "gmap", version, about = "Embedded generalized maps as labelled graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the topological and embedding checks on a G-map document.
    Check { gmap: PathBuf },
    /// Check a rule or rule scheme for consistency.
    CheckRule {
        rule: PathBuf,
        /// Override the dimension declared by the document.
        #[arg(long)]
        dim: Option<u8>,
        /// Take the embedding declarations from another document.
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// List the matches of a rule's left-hand side, one per line.
    Match {
        rule: PathBuf,
        gmap: PathBuf,
        /// Fix part of the match, as `x=node,y=node`.
        #[arg(long = "match", value_name = "BINDINGS")]
        binding: Option<String>,
        /// Accept an input map that fails its checks.
        #[arg(long)]
        force: bool,
    },
    /// Apply a rule or rule scheme and write the resulting G-map.
    Apply {
        rule: PathBuf,
        gmap: PathBuf,
        /// Fix the match, as `x=node,y=node`; it must resolve to one match
        /// unless `--first` or `--all` is given.
        #[arg(long = "match", value_name = "BINDINGS")]
        binding: Option<String>,
        /// Use the first match in deterministic order.
        #[arg(long, conflicts_with = "all")]
        first: bool,
        /// Apply independently at every match, writing `<k>.gmap` into the
        /// `-o` directory.
        #[arg(long, requires = "output")]
        all: bool,
        /// Skip the consistency and output checks.
        #[arg(long = "unsafe")]
        unchecked: bool,
        /// Accept an input map that fails its checks.
        #[arg(long)]
        force: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the nodes of an orbit in discovery order.
    Orbit {
        gmap: PathBuf,
        node: String,
        /// Orbit type such as `<a0 a1>` or `0,1`.
        orbit: String,
        #[arg(long)]
        force: bool,
    },
    /// Evaluate an embedding expression on a G-map.
    Eval {
        gmap: PathBuf,
        expr: String,
        /// Bind term variables to nodes, as `x=node,y=node`.
        #[arg(long)]
        bind: Option<String>,
        #[arg(long)]
        force: bool,
    },
    /// Render a 2-G-map with point embedding as SVG.
    Render {
        gmap: PathBuf,
        /// Output file; standard output when absent.
        svg: Option<PathBuf>,
        #[arg(long)]
        force: bool,
    },
}

/// Outcome of a command that ran to completion.
enum Status {
    Pass,
    Fail,
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_map(path: &Path, force: bool) -> anyhow::Result<Result<GMap, Report>> {
    let g = parse_gmap(&read(path)?).with_context(|| path.display().to_string())?;
    let report = g.check();
    if report.is_pass() || force {
        Ok(Ok(g))
    } else {
        Ok(Err(report))
    }
}

fn load_rule(path: &Path) -> anyhow::Result<RuleDocument> {
    parse_rule_document(&read(path)?).with_context(|| path.display().to_string())
}

fn parse_bindings(text: Option<&str>) -> anyhow::Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for pair in text.unwrap_or("").split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (x, y) = pair.split_once('=').ok_or_else(|| anyhow!("binding `{pair}` is not `name=node`"))?;
        if out.insert(x.trim().to_string(), y.trim().to_string()).is_some() {
            bail!("`{}` is bound twice", x.trim());
        }
    }
    Ok(out)
}

fn emit(out: &mut impl Write, report: &Report) -> anyhow::Result<Status> {
    write!(out, "{report}")?;
    if report.is_pass() {
        writeln!(out, "PASS")?;
        Ok(Status::Pass)
    } else {
        Ok(Status::Fail)
    }
}

fn spec_from(path: &Path) -> anyhow::Result<GMapSpec> {
    let text = read(path)?;
    match parse_gmap(&text) {
        Ok(g) => Ok(g.spec),
        Err(_) => Ok(parse_rule_document(&text).with_context(|| path.display().to_string())?.spec().clone()),
    }
}

fn with_dimension(spec: &GMapSpec, dim: u8) -> anyhow::Result<GMapSpec> {
    let mut out = GMapSpec::new(dim);
    for op in spec.embeddings() {
        out.add_embedding(op.clone())?;
    }
    Ok(out)
}

fn rule_report(doc: &RuleDocument, spec: &GMapSpec) -> anyhow::Result<Report> {
    Ok(match doc {
        RuleDocument::Rule { rule, .. } => {
            let mut r = validate_rule(rule)?;
            r.extend(check_rule_consistency(rule, spec));
            r
        }
        RuleDocument::Scheme { scheme, .. } => validate_scheme(scheme, spec),
    })
}

fn matches(doc: &RuleDocument, g: &GMap, fixed: &BTreeMap<String, String>) -> Vec<Match> {
    match doc {
        RuleDocument::Rule { rule, .. } => find_matches_with(rule, &g.graph, fixed),
        RuleDocument::Scheme { scheme, .. } => find_scheme_matches(scheme, &g.graph, fixed),
    }
}

/// Applies at one match; `Err` carries the report that blocked it.
fn apply_at(doc: &RuleDocument, m: &Match, g: &GMap) -> anyhow::Result<Result<GMap, Report>> {
    let (rule, matching) = match doc {
        RuleDocument::Rule { rule, .. } => (rule.clone(), m.clone()),
        RuleDocument::Scheme { scheme, .. } => {
            let inst = instantiate(scheme, m, g)?;
            (inst.rule, inst.matching)
        }
    };
    let dangling = check_dangling(&rule, &matching, &g.graph);
    if !dangling.is_pass() {
        return Ok(Err(dangling));
    }
    let d = apply(&rule, &matching, &g.graph)?;
    Ok(Ok(GMap::from_graph(g.spec.clone(), d.graph)?))
}

fn write_output(path: Option<&Path>, text: &str, out: &mut impl Write) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => Ok(out.write_all(text.as_bytes())?),
    }
}

fn run(cli: Cli, out: &mut impl Write) -> anyhow::Result<Status> {
    match cli.command {
        Command::Check { gmap } => {
            let g = parse_gmap(&read(&gmap)?).with_context(|| gmap.display().to_string())?;
            emit(out, &g.check())
        }
        Command::CheckRule { rule, dim, spec } => {
            let doc = load_rule(&rule)?;
            let mut s = match spec {
                Some(p) => spec_from(&p)?,
                None => doc.spec().clone(),
            };
            if let Some(d) = dim {
                s = with_dimension(&s, d)?;
            }
            emit(out, &rule_report(&doc, &s)?)
        }
        Command::Match { rule, gmap, binding, force } => {
            let doc = load_rule(&rule)?;
            let g = match load_map(&gmap, force)? {
                Ok(g) => g,
                Err(report) => return emit(out, &report),
            };
            let found = matches(&doc, &g, &parse_bindings(binding.as_deref())?);
            for m in &found {
                writeln!(out, "MATCH {}", m.describe())?;
            }
            Ok(if found.is_empty() { Status::Fail } else { Status::Pass })
        }
        Command::Apply { rule, gmap, binding, first, all, unchecked, force, output } => {
            let doc = load_rule(&rule)?;
            let g = match load_map(&gmap, force)? {
                Ok(g) => g,
                Err(report) => return emit(out, &report),
            };
            if doc.spec() != &g.spec {
                bail!("{} and {} declare different embeddings", rule.display(), gmap.display());
            }
            if !unchecked {
                let report = rule_report(&doc, &g.spec)?;
                if !report.is_pass() {
                    return emit(out, &report);
                }
            }
            let found = matches(&doc, &g, &parse_bindings(binding.as_deref())?);
            if found.is_empty() {
                writeln!(out, "FAIL no-match")?;
                return Ok(Status::Fail);
            }
            let chosen: Vec<&Match> = if all {
                found.iter().collect()
            } else if first || found.len() == 1 {
                vec![&found[0]]
            } else {
                bail!("{} matches; narrow them with --match or pass --first or --all", found.len());
            };
            let dir = output.as_deref().filter(|_| all);
            if let Some(d) = dir {
                fs::create_dir_all(d).with_context(|| format!("cannot create {}", d.display()))?;
            }
            let mut status = Status::Pass;
            for (k, m) in chosen.into_iter().enumerate() {
                let h = match apply_at(&doc, m, &g)? {
                    Ok(h) => h,
                    Err(report) => {
                        writeln!(out, "# match {}", m.describe())?;
                        emit(out, &report)?;
                        status = Status::Fail;
                        continue;
                    }
                };
                let check = h.check();
                if !unchecked && !check.is_pass() {
                    writeln!(out, "# match {}", m.describe())?;
                    emit(out, &check)?;
                    status = Status::Fail;
                    continue;
                }
                let text = write_gmap(&h);
                match dir {
                    Some(d) => {
                        let path = d.join(format!("{}.gmap", k + 1));
                        write_output(Some(&path), &text, out)?;
                        writeln!(out, "WROTE {} {}", path.display(), m.describe())?;
                    }
                    None => write_output(output.as_deref(), &text, out)?,
                }
            }
            Ok(status)
        }
        Command::Orbit { gmap, node, orbit, force } => {
            let g = match load_map(&gmap, force)? {
                Ok(g) => g,
                Err(report) => return emit(out, &report),
            };
            let o: OrbitType = orbit.parse()?;
            o.check_dimension(g.dimension())?;
            writeln!(out, "{}", g.orbit(&o, &node)?.nodes.join(" "))?;
            Ok(Status::Pass)
        }
        Command::Eval { gmap, expr, bind, force } => {
            let g = match load_map(&gmap, force)? {
                Ok(g) => g,
                Err(report) => return emit(out, &report),
            };
            let e = parse_expression(&expr, &g.spec)?;
            let sigma = parse_bindings(bind.as_deref())?;
            writeln!(out, "{}", eval_expression(&e, &sigma, &g)?)?;
            Ok(Status::Pass)
        }
        Command::Render { gmap, svg, force } => {
            let g = match load_map(&gmap, force)? {
                Ok(g) => g,
                Err(report) => return emit(out, &report),
            };
            write_output(svg.as_deref(), &render(&g)?, out)?;
            Ok(Status::Pass)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(Status::Pass) => ExitCode::SUCCESS,
        Ok(Status::Fail) => ExitCode::from(1),
        Err(e) => {
            let _ = out.flush();
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
