// SPDX-License-Identifier: Apache-2.0

//! Regenerates the published classification tables and diffs them against
//! [`crate::fixtures`].

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classify::{classify_space, table_text, ClassificationReport, Relation};
use crate::error::{Error, Result};
use crate::expr::parse_with_arity;
use crate::fixtures::{FIGURE4, TABLE1, TABLE3, TABLE3_AVERAGES, TABLE4};
use crate::groups::{count_orbits, GroupDescriptor, GroupName};
use crate::scan::{diff_against_table5, sep_sample_check, sep_scan_p2_5, ScanOptions};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableId {
    Table1,
    Table3,
    Table4,
    Table5,
    Figure4,
}

impl TableId {
    pub const ALL: [TableId; 5] = [TableId::Table1, TableId::Table3, TableId::Table4, TableId::Table5, TableId::Figure4];

    pub fn as_str(self) -> &'static str {
        match self {
            TableId::Table1 => "table1",
            TableId::Table3 => "table3",
            TableId::Table4 => "table4",
            TableId::Table5 => "table5",
            TableId::Figure4 => "figure4",
        }
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TableId::ALL
            .into_iter()
            .find(|t| t.as_str() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Format(format!("unknown table `{s}`")))
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, Default)]
pub struct TableOptions {
    pub scan: ScanOptions,
    /// Samples for the table5 fallback when the scan runs out of budget.
    pub fallback_samples: u64,
    pub seed: u64,
}

/// A regenerated table plus every cell that differs from the published one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableArtifact {
    pub name: String,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
    pub diffs: Vec<String>,
    pub notes: Vec<String>,
}

impl TableArtifact {
    fn new(name: TableId, headers: &[&str]) -> Self {
        TableArtifact {
            name: name.as_str().into(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
            diffs: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn matches(&self) -> bool {
        self.diffs.is_empty()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
    }

    pub fn to_text(&self) -> String {
        let widths: Vec<usize> = (0..self.headers.len())
            .map(|c| self.rows.iter().map(|r| r[c].len()).chain([self.headers[c].len()]).max().unwrap_or(0))
            .collect();
        let line = |cells: &[String]| {
            cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect::<Vec<_>>().join("  ").trim_end().to_string()
        };
        let mut out = line(&self.headers) + "\n";
        for r in &self.rows {
            out += &line(r);
            out.push('\n');
        }
        out
    }

    fn expect<T: PartialEq + fmt::Debug>(&mut self, cell: &str, expected: T, got: T) {
        if expected != got {
            self.diffs.push(format!("{cell}: expected {expected:?}, got {got:?}"));
        }
    }
}

pub fn reproduce_table(id: TableId, opts: &TableOptions) -> Result<TableArtifact> {
    match id {
        TableId::Table1 => table1(),
        TableId::Table3 => table3(),
        TableId::Table4 => table4(),
        TableId::Table5 => table5(opts),
        TableId::Figure4 => figure4(),
    }
}

fn table1() -> Result<TableArtifact> {
    let mut art = TableArtifact::new(TableId::Table1, &["class", "members", "imp", "size"]);
    let report = classify_space(2, 2, Relation::Imp)?;
    let assignment = report.assignment.as_deref().unwrap_or_default();
    for c in &report.classes {
        let members: Vec<String> = assignment
            .iter()
            .enumerate()
            .filter(|(_, &a)| a as usize + 1 == c.id)
            .map(|(id, _)| crate::expr::to_sp(&crate::KFunction::from_id(2, 2, id as u128).expect("id in range")))
            .collect();
        art.rows.push(vec![c.id.to_string(), members.join("; "), opt(c.imp), c.size.to_string()]);
    }
    art.expect("class count", TABLE1.len(), report.class_count());
    for (i, (members, imp, size)) in TABLE1.iter().enumerate() {
        let classes: Vec<Option<usize>> =
            members.iter().map(|m| parse_with_arity(m, 2, Some(2)).ok().and_then(|f| report.class_of(&f))).collect();
        let first = classes[0];
        if classes.iter().any(|c| *c != first) || first.is_none() {
            art.diffs.push(format!("row {}: members split across classes {classes:?}", i + 1));
            continue;
        }
        let c = &report.classes[first.unwrap_or_default()];
        art.expect(&format!("row {} imp", i + 1), Some(*imp), c.imp);
        art.expect(&format!("row {} size", i + 1), *size, c.size);
    }
    Ok(art)
}

fn opt(v: Option<u64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// Renumbers classes in order of first appearance among `keys`.
fn renumber(keys: &[usize]) -> Vec<u32> {
    let mut seen: HashMap<usize, u32> = HashMap::new();
    keys.iter()
        .map(|k| {
            let next = seen.len() as u32 + 1;
            *seen.entry(*k).or_insert(next)
        })
        .collect()
}

fn table3() -> Result<TableArtifact> {
    let mut art = TableArtifact::new(
        TableId::Table3,
        &[
            "representative", "table", "sep_class", "sep", "sep_size", "sub_class", "sub", "sub_size", "imp_class", "imp",
            "imp_size", "genus_size",
        ],
    );
    let sep = classify_space(2, 3, Relation::Sep)?;
    let sub = classify_space(2, 3, Relation::Sub)?;
    let imp = classify_space(2, 3, Relation::Imp)?;
    let ge = classify_space(2, 3, Relation::Group(GroupName::GE))?;

    let mut funcs = Vec::new();
    for row in &TABLE3 {
        funcs.push(parse_with_arity(row.representative, 2, Some(3))?);
    }
    let class = |r: &ClassificationReport| -> Vec<usize> { funcs.iter().map(|f| r.class_of(f).unwrap_or(usize::MAX)).collect() };
    let (sep_c, sub_c, imp_c, ge_c) = (class(&sep), class(&sub), class(&imp), class(&ge));
    let (sep_n, sub_n, imp_n) = (renumber(&sep_c), renumber(&sub_c), renumber(&imp_c));

    for (i, (row, f)) in TABLE3.iter().zip(&funcs).enumerate() {
        let s = &sep.classes[sep_c[i]];
        let b = &sub.classes[sub_c[i]];
        let m = &imp.classes[imp_c[i]];
        let g = &ge.classes[ge_c[i]];
        let sep_val: u64 = s.sep.iter().sum();
        let sub_val: u64 = b.sub.iter().sum();
        art.rows.push(vec![
            row.representative.to_string(),
            table_text(f),
            sep_n[i].to_string(),
            sep_val.to_string(),
            s.size.to_string(),
            sub_n[i].to_string(),
            sub_val.to_string(),
            b.size.to_string(),
            imp_n[i].to_string(),
            opt(m.imp),
            m.size.to_string(),
            g.size.to_string(),
        ]);
        let r = i + 1;
        art.expect(&format!("row {r} sep_class"), row.sep_class, sep_n[i]);
        art.expect(&format!("row {r} sep"), row.sep, sep_val);
        art.expect(&format!("row {r} sep_size"), row.sep_size, s.size);
        art.expect(&format!("row {r} sub_class"), row.sub_class, sub_n[i]);
        art.expect(&format!("row {r} sub"), row.sub, sub_val);
        art.expect(&format!("row {r} sub_size"), row.sub_size, b.size);
        art.expect(&format!("row {r} imp_class"), row.imp_class, imp_n[i]);
        art.expect(&format!("row {r} imp"), Some(row.imp), m.imp);
        art.expect(&format!("row {r} imp_size"), row.imp_size, m.size);
        art.expect(&format!("row {r} genus_size"), row.genus_size, g.size);
    }
    art.expect("sep classes", 5, sep.class_count());
    art.expect("sub classes", 11, sub.class_count());
    art.expect("imp classes", 13, imp.class_count());
    art.expect("genus classes", 14, ge.class_count());

    let total = 256.0;
    let mean = |r: &ClassificationReport, value: &dyn Fn(&crate::classify::ClassEntry) -> u64| {
        r.classes.iter().map(|c| c.size as f64 * value(c) as f64).sum::<f64>() / total
    };
    let averages = [
        mean(&sep, &|c| c.sep.iter().sum()),
        total / sep.class_count() as f64,
        mean(&sub, &|c| c.sub.iter().sum()),
        total / sub.class_count() as f64,
        mean(&imp, &|c| c.imp.unwrap_or(0)),
        total / imp.class_count() as f64,
        total / ge.class_count() as f64,
    ];
    let fmt1 = |x: f64| format!("{x:.1}");
    let blank = String::new;
    art.rows.push(vec![
        "average".into(),
        blank(),
        blank(),
        fmt1(averages[0]),
        fmt1(averages[1]),
        blank(),
        fmt1(averages[2]),
        fmt1(averages[3]),
        blank(),
        fmt1(averages[4]),
        fmt1(averages[5]),
        fmt1(averages[6]),
    ]);
    for (i, (want, got)) in TABLE3_AVERAGES.iter().zip(averages).enumerate() {
        art.expect(&format!("average {}", i + 1), fmt1(*want), fmt1(got));
    }
    Ok(art)
}

fn table4() -> Result<TableArtifact> {
    let mut art = TableArtifact::new(TableId::Table4, &["n", "t(G)", "t(IM)", "t(SB)", "t(SP)"]);
    for (n, g, im, sb, sp) in TABLE4 {
        let tg = count_orbits(&GroupDescriptor::new(GroupName::G, 2, n)?)?;
        let (ti, ts, tp) = crate::classify::class_counts(2, n)?;
        art.rows.push([n as u64, tg, ti, ts, tp].iter().map(u64::to_string).collect());
        art.expect(&format!("n={n} t(G)"), g, tg);
        art.expect(&format!("n={n} t(IM)"), im, ti);
        art.expect(&format!("n={n} t(SB)"), sb, ts);
        art.expect(&format!("n={n} t(SP)"), sp, tp);
    }
    Ok(art)
}

fn figure4() -> Result<TableArtifact> {
    let mut art = TableArtifact::new(TableId::Figure4, &["group", "t(n=3)", "t(n=4)"]);
    for (name, t3, t4) in FIGURE4 {
        let (c3, c4) = match name {
            "identity" => (1 << 8, 1 << 16),
            _ => {
                let g: GroupName = name.parse()?;
                (count_orbits(&GroupDescriptor::new(g, 2, 3)?)?, count_orbits(&GroupDescriptor::new(g, 2, 4)?)?)
            }
        };
        art.rows.push(vec![name.to_string(), c3.to_string(), c4.to_string()]);
        art.expect(&format!("{name} n=3"), t3, c3);
        art.expect(&format!("{name} n=4"), t4, c4);
    }
    Ok(art)
}

fn table5(opts: &TableOptions) -> Result<TableArtifact> {
    let mut art = TableArtifact::new(TableId::Table5, &["sep5", "sep4", "sep3", "sep2", "sep1", "sep", "size", "representative"]);
    match sep_scan_p2_5(&opts.scan) {
        Ok(report) => {
            for c in &report.classes {
                let mut row: Vec<String> = c.sep.iter().rev().map(u64::to_string).collect();
                row.push(c.sep.iter().sum::<u64>().to_string());
                row.push(c.size.to_string());
                row.push(c.representative.clone());
                art.rows.push(row);
            }
            art.diffs = diff_against_table5(&report);
            art.expect("total", 1u64 << 32, report.classes.iter().map(|c| c.size).sum::<u64>());
        }
        Err(Error::Budget(msg)) if opts.fallback_samples > 0 => {
            art.notes.push(format!("full scan incomplete ({msg}); sampled {} functions instead", opts.fallback_samples));
            let check = sep_sample_check(opts.fallback_samples, opts.seed);
            for v in &check.observed {
                let mut row: Vec<String> = v.iter().rev().map(u64::to_string).collect();
                row.push(v.iter().sum::<u64>().to_string());
                row.push(String::new());
                row.push(String::new());
                art.rows.push(row);
            }
            for t in &check.unknown {
                art.diffs.push(format!("sampled table {t} has an unpublished profile"));
            }
            for t in &check.kernel_mismatches {
                art.diffs.push(format!("kernels disagree on {t}"));
            }
        }
        Err(e) => return Err(e),
    }
    Ok(art)
}
