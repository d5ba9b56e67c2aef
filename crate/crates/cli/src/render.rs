//! Text, JSON and CSV output for each command.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context};
use serde::{Deserialize, Serialize};
use theta_symbols::{
    family_of, find_k0, group_of, overline_theta_family, sorted_family, table_violations,
    theta_set as compute_theta_set, CorrespondenceTable, DualPair, GroupKind, GroupTag, OccurrenceMode,
    PeakDiagnostics, Sign, SweepReport, Symbol, TableRow, ThetaSet,
};

use crate::Format;

fn json<T: Serialize>(value: &T) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn csv_text(header: &[&str], rows: Vec<Vec<String>>) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

#[derive(Serialize)]
struct FamilyList {
    group: String,
    eps: char,
    families: Vec<FamilyMembers>,
}

#[derive(Serialize)]
struct FamilyMembers {
    delta: i32,
    symbols: Vec<Symbol>,
}

pub fn families(group: GroupTag, delta: Option<i32>, eps: Sign, format: Format) -> anyhow::Result<String> {
    let deltas = match delta {
        Some(d) => vec![d],
        None => family_of(group),
    };
    let lists: Vec<FamilyMembers> =
        deltas.iter().map(|&d| FamilyMembers { delta: d, symbols: sorted_family(group.n, d, eps) }).collect();
    match format {
        Format::Json => json(&FamilyList { group: group.to_string(), eps: eps.as_char(), families: lists }),
        Format::Csv => csv_text(
            &["delta", "index", "symbol", "upsilon"],
            lists
                .iter()
                .flat_map(|f| {
                    f.symbols.iter().enumerate().map(move |(i, s)| {
                        vec![f.delta.to_string(), i.to_string(), s.to_string(), s.upsilon().to_string()]
                    })
                })
                .collect(),
        ),
        Format::Plain => {
            let mut out = String::new();
            for f in &lists {
                if delta.is_none() {
                    writeln!(out, "delta {}", f.delta)?;
                }
                for s in &f.symbols {
                    writeln!(out, "{s}")?;
                }
            }
            Ok(out)
        }
    }
}

/// θ̄ image and the targets already used before `s` in its family table.
struct RowContext {
    selected: Option<Symbol>,
    cut: BTreeSet<Symbol>,
}

fn row_context(table: &CorrespondenceTable, index: usize) -> RowContext {
    let cut = if table.tau >= 0 { table.used_before(index) } else { BTreeSet::new() };
    RowContext { selected: table.rows[index].overline.clone(), cut }
}

fn marked(theta: &ThetaSet, ctx: &RowContext) -> Vec<Vec<String>> {
    let max: BTreeSet<&Symbol> = theta.max_order_members().collect();
    theta
        .blocks
        .iter()
        .map(|b| {
            b.members
                .iter()
                .map(|m| {
                    let mut text = String::new();
                    if ctx.cut.contains(m) {
                        text.push('~');
                    }
                    text.push_str(&m.to_string());
                    if ctx.selected.as_ref() == Some(m) {
                        text.push('*');
                    }
                    if max.contains(m) {
                        text.push('!');
                    }
                    text
                })
                .collect()
        })
        .collect()
}

fn row_line(source: &Symbol, theta: &ThetaSet, ctx: &RowContext) -> String {
    let body = if theta.is_empty() {
        "(empty)".to_string()
    } else {
        marked(theta, ctx)
            .into_iter()
            .map(|b| if b.is_empty() { "-".to_string() } else { b.join(" ") })
            .collect::<Vec<_>>()
            .join(" | ")
    };
    format!("{source} => {body}")
}

#[derive(Serialize)]
struct ThetaSetOut<'a> {
    #[serde(flatten)]
    theta: &'a ThetaSet,
    overline: Option<Symbol>,
    cut: Vec<Symbol>,
    #[serde(skip_serializing_if = "Option::is_none")]
    peak: Option<PeakDiagnostics>,
}

pub fn theta_set(pair: &DualPair, s: &Symbol, peak: bool, format: Format) -> anyhow::Result<String> {
    let theta = compute_theta_set(s, pair)?;
    let table = overline_theta_family(pair, s.defect())?;
    let index = table.rows.iter().position(|r| &r.source == s).context("source missing from its family")?;
    let ctx = row_context(&table, index);
    let diagnostics = if peak { Some(find_k0(s, pair)?) } else { None };
    match format {
        Format::Json => json(&ThetaSetOut {
            theta: &theta,
            overline: ctx.selected.clone(),
            cut: theta.members().filter(|m| ctx.cut.contains(*m)).cloned().collect(),
            peak: diagnostics,
        }),
        Format::Csv => {
            let max: BTreeSet<&Symbol> = theta.max_order_members().collect();
            let rows = theta
                .blocks
                .iter()
                .flat_map(|b| {
                    let (max, ctx) = (&max, &ctx);
                    b.members.iter().map(move |m| {
                        vec![
                            b.k.to_string(),
                            m.to_string(),
                            (b.distinguished.as_ref() == Some(m)).to_string(),
                            max.contains(m).to_string(),
                            (ctx.selected.as_ref() == Some(m)).to_string(),
                            ctx.cut.contains(m).to_string(),
                        ]
                    })
                })
                .collect();
            csv_text(&["k", "member", "theta_k", "max_order", "overline", "cut"], rows)
        }
        Format::Plain => {
            let mut out = String::new();
            writeln!(out, "symbol {s}")?;
            writeln!(out, "pair {pair}")?;
            writeln!(out, "tau {}", theta.tau)?;
            if theta.is_empty() {
                writeln!(out, "(empty)")?;
            } else {
                for (b, members) in theta.blocks.iter().zip(marked(&theta, &ctx)) {
                    let body = if members.is_empty() { "-".to_string() } else { members.join(" ") };
                    writeln!(out, "k={}: {body}", b.k)?;
                }
            }
            if let Some(d) = diagnostics {
                let thetas: Vec<String> = theta.blocks.iter().map(|b| opt(&b.distinguished)).collect();
                let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ");
                writeln!(out, "theta_k: {}", thetas.join(" "))?;
                writeln!(out, "ord: {}", join(&d.orders))?;
                writeln!(out, "alpha: {}", join(&d.alpha))?;
                writeln!(out, "beta: {}", join(&d.beta))?;
                writeln!(out, "k0: {}", d.k0)?;
                writeln!(out, "tie: {}", d.tie)?;
            }
            Ok(out)
        }
    }
}

/// On-disk form of a table: the pair and one entry per family.
#[derive(Serialize, Deserialize)]
pub struct TableFile {
    pub pair: String,
    pub families: Vec<FamilyRows>,
}

#[derive(Serialize, Deserialize)]
pub struct FamilyRows {
    pub delta: i32,
    pub tau: i64,
    pub rows: Vec<TableRow>,
}

pub fn table(pair: &DualPair, delta: Option<i32>, format: Format) -> anyhow::Result<String> {
    let deltas = match delta {
        Some(d) => vec![d],
        None => family_of(pair.first),
    };
    let tables = deltas.iter().map(|&d| overline_theta_family(pair, d)).collect::<Result<Vec<_>, _>>()?;
    match format {
        Format::Json => json(&TableFile {
            pair: pair.to_string(),
            families: tables.into_iter().map(|t| FamilyRows { delta: t.delta, tau: t.tau, rows: t.rows }).collect(),
        }),
        Format::Csv => csv_text(
            &["delta", "tau", "source", "underline", "overline", "k0", "tie"],
            tables
                .iter()
                .flat_map(|t| {
                    t.rows.iter().map(move |r| {
                        vec![
                            t.delta.to_string(),
                            t.tau.to_string(),
                            r.source.to_string(),
                            opt(&r.underline),
                            opt(&r.overline),
                            opt(&r.k0),
                            opt(&r.tie),
                        ]
                    })
                })
                .collect(),
        ),
        Format::Plain => {
            let mut out = String::new();
            writeln!(out, "pair {pair}")?;
            for t in &tables {
                writeln!(out, "delta {} tau {}", t.delta, t.tau)?;
                for (i, r) in t.rows.iter().enumerate() {
                    let theta = compute_theta_set(&r.source, pair)?;
                    writeln!(out, "{}", row_line(&r.source, &theta, &row_context(t, i)))?;
                }
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct Occurrence {
    series: String,
    theta: u32,
    underline: u32,
    overline: u32,
}

#[derive(Serialize)]
struct OccurrenceOut {
    symbol: Symbol,
    group: String,
    series: Vec<Occurrence>,
}

pub fn first_occurrence(s: &Symbol, series: Option<GroupKind>, format: Format) -> anyhow::Result<String> {
    let group = group_of(s)?;
    let kinds: Vec<GroupKind> = match series {
        Some(k) => vec![k],
        None if group.kind.is_symplectic() => vec![GroupKind::OPlus, GroupKind::OMinus],
        None => vec![GroupKind::Sp],
    };
    let mut found = Vec::new();
    for k in kinds {
        found.push(Occurrence {
            series: k.to_string(),
            theta: theta_symbols::first_occurrence(s, k, OccurrenceMode::Theta)?,
            underline: theta_symbols::first_occurrence(s, k, OccurrenceMode::Underline)?,
            overline: theta_symbols::first_occurrence(s, k, OccurrenceMode::Overline)?,
        });
    }
    match format {
        Format::Json => json(&OccurrenceOut { symbol: s.clone(), group: group.to_string(), series: found }),
        Format::Csv => csv_text(
            &["symbol", "group", "series", "theta", "underline", "overline"],
            found
                .iter()
                .map(|o| {
                    vec![
                        s.to_string(),
                        group.to_string(),
                        o.series.clone(),
                        o.theta.to_string(),
                        o.underline.to_string(),
                        o.overline.to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Plain => {
            let mut out = format!("symbol {s} group {group}\n");
            for o in &found {
                writeln!(
                    out,
                    "series {}: theta {} underline {} overline {}",
                    o.series, o.theta, o.underline, o.overline
                )?;
            }
            Ok(out)
        }
    }
}

/// Checks a stored table with the structural or totality properties.
pub fn check_table_file(property: &str, path: &Path) -> anyhow::Result<SweepReport> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file: TableFile = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    let pair: DualPair = file.pair.parse()?;
    let mut checked = 0;
    let mut violations = Vec::new();
    for family in file.families {
        let used = family.rows.iter().filter_map(|r| r.overline.clone()).collect();
        let table = CorrespondenceTable { pair, delta: family.delta, tau: family.tau, rows: family.rows, used };
        checked += table.rows.len();
        match property {
            "L0430" => violations.extend(table_violations(&table)),
            "SEMIPERSIST" => {
                for overline in [false, true] {
                    violations.extend(theta_symbols::semi_persistence_violations(&table, overline));
                }
            }
            other => bail!("property {other} cannot be checked on a table file"),
        }
    }
    Ok(SweepReport { property: property.to_string(), max_rank: pair.first.n, checked, violations })
}

pub fn reports(reports: &[SweepReport], format: Format) -> anyhow::Result<String> {
    match format {
        Format::Json if reports.len() == 1 => json(&reports[0]),
        Format::Json => json(&reports),
        Format::Csv => csv_text(
            &["property", "max_rank", "checked", "violations"],
            reports
                .iter()
                .map(|r| {
                    vec![
                        r.property.clone(),
                        r.max_rank.to_string(),
                        r.checked.to_string(),
                        r.violations.len().to_string(),
                    ]
                })
                .collect(),
        ),
        Format::Plain => {
            let mut out = String::new();
            for r in reports {
                let status = if r.passed() { "ok" } else { "FAILED" };
                writeln!(
                    out,
                    "{} max-rank {}: {} checks, {} violations, {status}",
                    r.property,
                    r.max_rank,
                    r.checked,
                    r.violations.len()
                )?;
                for v in &r.violations {
                    writeln!(out, "  {v}")?;
                }
            }
            Ok(out)
        }
    }
}
