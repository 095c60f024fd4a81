//! `tambara`: structure maps, ideals and quotients of Burnside Tambara functors.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tambara_core::checks::{main_sequence_maps, run_checks, CHECKS};
use tambara_core::fixtures::{fixture, FIXTURES};
use tambara_core::ideal::auto_label;
use tambara_core::mackey::{check_exact, MackeyJson};
use tambara_core::{
    BasisChoice, Burnside, BurnsideElement, Exec, Group, IntMatrix, MackeyMap, MackeyPresentation, QuotientTambara,
    Subgroup, TambaraIdeal,
};

#[derive(Parser)]
#[command(name = "tambara", version, about = "Exact computations with Burnside Tambara functors")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Built-in group name (C2, C4, C8, C2xC2, D8, Q8, ...) or a group JSON file.
    #[arg(long, global = true, default_value = "Q8")]
    group: String,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Compute levels one at a time.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Args)]
struct MapArgs {
    /// Level of the element.
    #[arg(long)]
    from: String,
    /// Target level.
    #[arg(long)]
    to: String,
    element: String,
}

#[derive(Subcommand)]
enum Command {
    /// nm_from^to of an element.
    Norm(MapArgs),
    /// tr_from^to of an element.
    Transfer(MapArgs),
    /// res^from_to of an element.
    Restrict(MapArgs),
    /// Conjugate an element at level `from` by a group element.
    Conj {
        #[arg(long)]
        from: String,
        /// Group element name or index.
        #[arg(long)]
        by: String,
        element: String,
    },
    /// The Tambara ideal generated by an element.
    Ideal {
        #[arg(long)]
        level: String,
        element: String,
        /// Only print these levels.
        #[arg(long)]
        show: Vec<String>,
    },
    /// The quotient of the Burnside functor by a principal ideal.
    Quotient {
        #[arg(long)]
        level: String,
        element: String,
        /// Generators at one level, e.g. "Q8:1,[Q8/I]-2,[Q8/K]-2" (repeatable).
        #[arg(long)]
        basis: Vec<String>,
    },
    /// A catalogue functor for Q8, or constZ/constZ*/constF2 for --group.
    Fixture {
        name: Option<String>,
        #[arg(long)]
        list: bool,
    },
    /// Geometric fixed points of a functor (catalogue name or JSON file).
    Gfp {
        functor: String,
        #[arg(long)]
        normal: String,
    },
    /// Restrict a functor (catalogue name or JSON file) to a subgroup.
    RestrictMackey {
        functor: String,
        #[arg(long)]
        to: String,
    },
    /// Levelwise exactness of A → B → C.
    CheckExact {
        /// Built-in sequence: main-sequence (inflF2^2 → NZ → constZ).
        #[arg(long, conflicts_with_all = ["source", "middle", "target", "first", "second"])]
        preset: Option<String>,
        #[arg(long, requires_all = ["middle", "target", "first", "second"])]
        source: Option<String>,
        #[arg(long)]
        middle: Option<String>,
        #[arg(long)]
        target: Option<String>,
        /// JSON list of per-level matrices (rows) for A → B.
        #[arg(long)]
        first: Option<PathBuf>,
        /// JSON list of per-level matrices (rows) for B → C.
        #[arg(long)]
        second: Option<PathBuf>,
    },
    /// Recompute the catalogue of named identities.
    CheckPaper {
        #[arg(long)]
        only: Vec<String>,
        #[arg(long)]
        list: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            if let Err(e) = emit(&cli.common, &text) {
                eprintln!("error: {e:#}");
                return ExitCode::FAILURE;
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_group(name: &str) -> Result<Arc<Group>> {
    if Path::new(name).is_file() {
        let text = std::fs::read_to_string(name).with_context(|| format!("reading {name}"))?;
        return Ok(Group::parse_json(&text)?);
    }
    Ok(Group::builtin(name)?)
}

fn exec(common: &Common) -> Exec {
    if common.sequential {
        Exec::Sequential
    } else {
        Exec::Parallel
    }
}

fn json<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn element_output(b: &Burnside, x: &BurnsideElement, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => b.format(x) + "\n",
        Format::Json => json(&b.to_json(x))?,
        Format::Latex => format!("${}$\n", b.format(x)),
    })
}

fn mackey_output(m: &MackeyPresentation, format: Format) -> Result<String> {
    Ok(match format {
        Format::Text => m.lewis_diagram(),
        Format::Json => json(&m.to_json())?,
        Format::Latex => m.to_latex(),
    })
}

/// Returns the output text and whether the command succeeded.
fn run(cli: &Cli) -> Result<(String, bool)> {
    let common = &cli.common;
    let format = common.format;
    match &cli.command {
        Command::Norm(a) | Command::Transfer(a) | Command::Restrict(a) => {
            let b = Burnside::new(load_group(&common.group)?);
            let from = b.subgroup(&a.from)?;
            let to = b.subgroup(&a.to)?;
            let x = b.parse(from, &a.element)?;
            let y = match &cli.command {
                Command::Norm(_) => b.nm(&x, to)?,
                Command::Transfer(_) => b.tr(&x, to)?,
                _ => b.res(&x, to)?,
            };
            Ok((element_output(&b, &y, format)?, true))
        }
        Command::Conj { from, by, element } => {
            let b = Burnside::new(load_group(&common.group)?);
            let x = b.parse(b.subgroup(from)?, element)?;
            let g = b.group().element_by_name(by).ok_or_else(|| anyhow!("unknown group element `{by}`"))?;
            Ok((element_output(&b, &b.conj(&x, g), format)?, true))
        }
        Command::Ideal { level, element, show } => {
            let b = Burnside::new(load_group(&common.group)?);
            let x = b.parse(b.subgroup(level)?, element)?;
            let ideal = TambaraIdeal::generated_by(&b, &[(x, element.trim().to_string())], exec(common));
            let shown: Vec<Subgroup> = show.iter().map(|s| b.subgroup(s)).collect::<tambara_core::Result<_>>()?;
            Ok((ideal_output(&b, &ideal, &shown, format)?, true))
        }
        Command::Quotient { level, element, basis } => {
            let b = Burnside::new(load_group(&common.group)?);
            let x = b.parse(b.subgroup(level)?, element)?;
            let ideal = TambaraIdeal::generated_by(&b, &[(x, element.trim().to_string())], exec(common));
            let choice = parse_basis(&b, basis)?;
            let q = QuotientTambara::new(&ideal, &choice)?;
            Ok((mackey_output(q.mackey(), format)?, true))
        }
        Command::Fixture { name, list } => {
            if *list || name.is_none() {
                let mut s = String::new();
                for (n, d) in FIXTURES {
                    let _ = writeln!(s, "{n:<12} {d}");
                }
                return Ok((s, true));
            }
            let m = load_functor(common, name.as_deref().unwrap_or_default())?;
            Ok((mackey_output(&m, format)?, true))
        }
        Command::Gfp { functor, normal } => {
            let m = load_functor(common, functor)?;
            let n = m.group().lattice().find(normal).map(|c| m.group().lattice().rep(c));
            let n = n.ok_or_else(|| anyhow!("unknown subgroup `{normal}`"))?;
            let fp = m.geometric_fixed_points(n)?;
            Ok((mackey_output(&fp.functor, format)?, true))
        }
        Command::RestrictMackey { functor, to } => {
            let m = load_functor(common, functor)?;
            let lat = m.group().lattice();
            let h = lat.find(to).map(|c| lat.rep(c)).ok_or_else(|| anyhow!("unknown subgroup `{to}`"))?;
            Ok((mackey_output(&m.restrict(h)?, format)?, true))
        }
        Command::CheckExact { preset, source, middle, target, first, second } => {
            let (a, b, c, f, g) = match preset.as_deref() {
                Some("main-sequence") => {
                    let nz = fixture("NZ")?;
                    let (f, g) = main_sequence_maps(&nz);
                    (fixture("inflF2^2")?, nz, fixture("constZ")?, f, g)
                }
                Some(other) => bail!("unknown preset `{other}`"),
                None => {
                    let need = |o: &Option<String>| o.clone().ok_or_else(|| anyhow!("give --preset or all of --source, --middle, --target, --first, --second"));
                    let a = load_functor(common, &need(source)?)?;
                    let b = load_functor(common, &need(middle)?)?;
                    let c = load_functor(common, &need(target)?)?;
                    let path = |p: &Option<PathBuf>| p.clone().ok_or_else(|| anyhow!("missing map file"));
                    (a, b, c, load_map(&path(first)?)?, load_map(&path(second)?)?)
                }
            };
            let report = check_exact(&a, &b, &c, &f, &g)?;
            let text = match format {
                Format::Json => json(&report)?,
                _ => report.to_text(),
            };
            Ok((text, report.is_short_exact()))
        }
        Command::CheckPaper { only, list } => {
            if *list {
                let mut s = String::new();
                for c in CHECKS {
                    let _ = writeln!(s, "{:<18} {}", c.id, c.description);
                }
                return Ok((s, true));
            }
            let results = run_checks(only)?;
            let ok = results.iter().all(|r| r.passed);
            let text = match format {
                Format::Json => json(&results)?,
                _ => {
                    let mut s = String::new();
                    for r in &results {
                        let _ = write!(s, "{} {:<18} {}", if r.passed { "PASS" } else { "FAIL" }, r.id, r.description);
                        if let Some(d) = &r.detail {
                            let _ = write!(s, "\n     {d}");
                        }
                        s.push('\n');
                    }
                    let passed = results.iter().filter(|r| r.passed).count();
                    let _ = writeln!(s, "{passed}/{} passed", results.len());
                    s
                }
            };
            Ok((text, ok))
        }
    }
}

/// A catalogue name, a constant functor for `--group`, or a JSON file.
fn load_functor(common: &Common, name: &str) -> Result<MackeyPresentation> {
    if Path::new(name).is_file() {
        let text = std::fs::read_to_string(name).with_context(|| format!("reading {name}"))?;
        let j: MackeyJson = serde_json::from_str(&text).context("parsing functor JSON")?;
        return Ok(MackeyPresentation::from_json(&j)?);
    }
    if common.group != "Q8" {
        let g = load_group(&common.group)?;
        match name {
            "constZ" => return Ok(tambara_core::fixtures::constant_z(g)),
            "constZ*" => return Ok(tambara_core::fixtures::constant_z_dual(g)),
            "constF2" => return Ok(tambara_core::fixtures::constant_f2(g)),
            _ => bail!("only constZ, constZ* and constF2 exist for {}; the catalogue is for Q8", common.group),
        }
    }
    Ok(fixture(name)?)
}

fn load_map(path: &Path) -> Result<MackeyMap> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let raw: Vec<Vec<Vec<i64>>> = serde_json::from_str(&text).context("a map is a list of matrices, one per level")?;
    let components = raw
        .iter()
        .map(|rows| {
            let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
            IntMatrix::from_i64(&refs)
        })
        .collect();
    Ok(MackeyMap { components })
}

/// `LEVEL:x1,x2,...` where each lift is an element at `LEVEL`.
fn parse_basis(b: &Burnside, entries: &[String]) -> Result<BasisChoice> {
    if entries.is_empty() {
        return Ok(BasisChoice::Default);
    }
    let mut out = Vec::new();
    for entry in entries {
        let (label, lifts) = entry.split_once(':').ok_or_else(|| anyhow!("basis `{entry}` must look like LEVEL:x1,x2"))?;
        let level = b.subgroup(label.trim())?;
        let canonical = b.lattice().label_of(level).to_string();
        let mut elems = Vec::new();
        for text in lifts.split(',') {
            let x = b.parse(level, text.trim())?;
            elems.push((auto_label(b, &x), x));
        }
        out.push((canonical, elems));
    }
    Ok(BasisChoice::Explicit(out))
}

fn ideal_output(b: &Burnside, ideal: &TambaraIdeal, shown: &[Subgroup], format: Format) -> Result<String> {
    let lat = b.lattice();
    let keep = |c: usize| shown.is_empty() || shown.iter().any(|&s| lat.class_of(s) == c);
    match format {
        Format::Json => {
            let mut j = ideal.to_json();
            let labels: Vec<String> = (0..lat.len()).filter(|&c| keep(c)).map(|c| lat.label(c).to_string()).collect();
            j.levels.retain(|l| labels.contains(&l.level));
            json(&j)
        }
        _ => {
            let tex = format == Format::Latex;
            let mut s = String::new();
            let _ = writeln!(s, "ideal generated by {} over {}", ideal.generator_names().join(", "), b.group().label());
            for (c, level) in ideal.levels().iter().enumerate().filter(|(c, _)| keep(*c)) {
                let _ = writeln!(s, "level {}: rank {}", lat.label(c), level.lattice().rank());
                for g in level.selected() {
                    let value = b.format(&g.element);
                    if tex {
                        let _ = writeln!(s, "  \\[ {} = {} \\]", g.name, value);
                    } else {
                        let _ = writeln!(s, "  {} = {}", g.name, value);
                    }
                }
                let _ = writeln!(s, "  basis:");
                for row in level.lattice().basis().to_rows() {
                    let _ = writeln!(s, "    {}", b.format(&b.element(level.level(), row)));
                }
            }
            Ok(s)
        }
    }
}
