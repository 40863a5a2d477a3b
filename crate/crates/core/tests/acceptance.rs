// SPDX-License-Identifier: Apache-2.0

//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Invariant checks whose statements are false come out as FAIL. Each of
//! their counterexamples is re-checked here with the brute-force oracle in
//! `common`. The process then exits zero only if nothing else failed and
//! every reported counterexample is confirmed by the oracle.

mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use common::Table;
use fnclass::classify::{classify_space, distinct_imp_values, Relation};
use fnclass::diagram::{self, Implementation};
use fnclass::expr::{parse_with_arity, to_sp};
use fnclass::fixtures::*;
use fnclass::scan::sep_sample_check;
use fnclass::separability::{self, distributive_sets};
use fnclass::tables::{reproduce_table, TableId, TableOptions};
use fnclass::verify::{self, VerifyConfig, VerifyReport};
use fnclass::{KFunction, VarSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<Vec<String>, Vec<String>>;

struct Line {
    id: usize,
    title: &'static str,
    outcome: Outcome,
    secs: f64,
}

fn run(id: usize, title: &'static str, body: impl FnOnce() -> Outcome) -> Line {
    let t = Instant::now();
    let outcome = body();
    Line { id, title, outcome, secs: t.elapsed().as_secs_f64() }
}

fn check(problems: &mut Vec<String>, ok: bool, what: impl Into<String>) {
    if !ok {
        problems.push(what.into());
    }
}

fn finish(problems: Vec<String>, notes: Vec<String>) -> Outcome {
    if problems.is_empty() {
        Ok(notes)
    } else {
        Err(problems)
    }
}

fn f3(text: &str) -> KFunction {
    parse_with_arity(text, 2, Some(3)).unwrap()
}

fn example_values() -> Outcome {
    let mut p = Vec::new();
    for (text, want) in [(EXAMPLE_F, &EXAMPLE_F_VALUES), (EXAMPLE_G, &EXAMPLE_G_VALUES)] {
        let f = f3(text);
        let imp = diagram::imp_count(&f).unwrap();
        let sub: u64 = separability::sub_vector(&f).iter().sum();
        let sep: u64 = separability::sep_vector(&f).iter().sum();
        check(&mut p, (imp, sub, sep) == (want.imp, want.sub, want.sep), format!("{text}: imp/sub/sep = {imp}/{sub}/{sep}"));
    }
    let g = f3(EXAMPLE_G);
    let sep: BTreeSet<VarSet> = separability::separable_sets(&g).into_iter().collect();
    let want: BTreeSet<VarSet> = SEP_G.iter().map(|s| VarSet::parse(s).unwrap()).collect();
    check(&mut p, sep == want, format!("Sep(g) = {sep:?}"));
    let sub: BTreeSet<Vec<u8>> = separability::subfunctions(&g).iter().map(|h| h.values().to_vec()).collect();
    let want: BTreeSet<Vec<u8>> = SUB_G.iter().map(|s| f3(s).values().to_vec()).collect();
    check(&mut p, sub == want, "Sub(g) differs from the listed subfunctions");
    let dis = distributive_sets(VarSet::parse("2,3").unwrap(), &g).unwrap();
    check(&mut p, dis.sets() == [VarSet::singleton(1)], format!("Dis({{x2,x3}}, g) = {:?}", dis.sets()));
    finish(p, vec![])
}

fn diagram_fixtures() -> Outcome {
    let mut p = Vec::new();
    for (text, want) in [(EXAMPLE_F, &EXAMPLE_F_VALUES), (EXAMPLE_G, &EXAMPLE_G_VALUES)] {
        let d = diagram::build_odd(&f3(text), &[1, 2, 3]).unwrap();
        let imp = diagram::implementations_of(&d).unwrap().len() as u64;
        let depth = diagram::depth(&d).unwrap();
        check(&mut p, (imp, depth) == (want.imp_diagram_123, want.depth_123), format!("{text} at 123: imp {imp}, depth {depth}"));
    }
    for (text, ordering, listed) in EXAMPLE_IMPLEMENTATIONS {
        let o = diagram::parse_ordering(ordering).unwrap();
        let got = diagram::implementations_of(&diagram::build_odd(&f3(text), &o).unwrap()).unwrap();
        let want: BTreeSet<Implementation> = listed.iter().map(|s| Implementation::parse(s).unwrap()).collect();
        check(&mut p, got == want, format!("{text} at {ordering}: {:?}", got.iter().map(|i| i.to_string()).collect::<Vec<_>>()));
    }
    finish(p, vec![])
}

fn table(id: TableId) -> Outcome {
    let art = reproduce_table(id, &TableOptions::default()).map_err(|e| vec![e.to_string()])?;
    finish(art.diffs, art.notes)
}

fn table1() -> Outcome {
    let mut p = table(TableId::Table1).err().unwrap_or_default();
    let r = classify_space(2, 2, Relation::Imp).unwrap();
    let mut sizes_by_imp: Vec<(u64, u64)> = r.classes.iter().map(|c| (c.imp.unwrap_or(0), c.size)).collect();
    sizes_by_imp.sort();
    check(&mut p, sizes_by_imp == [(1, 2), (2, 4), (6, 8), (8, 2)], format!("(imp, size) = {sizes_by_imp:?}"));
    finish(p, vec![])
}

fn table5() -> Outcome {
    let mut p = table(TableId::Table5).err().unwrap_or_default();
    let sample = sep_sample_check(1_000_000, 5);
    check(&mut p, sample.passed(), format!("sampled profiles outside the table: {:?} {:?}", sample.unknown, sample.kernel_mismatches));
    finish(p, vec![format!("orbit-sum classification exact; 10^6 samples saw {} profiles, all published", sample.observed.len())])
}

fn parser_round_trip() -> Outcome {
    let mut p = Vec::new();
    let mut cases = 0;
    for n in 0..=3usize {
        for id in 0..1u128 << (1 << n) {
            let f = KFunction::from_id(2, n, id).unwrap();
            let back = parse_with_arity(&to_sp(&f), 2, Some(n));
            check(&mut p, back.as_ref().ok() == Some(&f), format!("k=2 n={n} {}", f.to_digits()));
            cases += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10_000 {
        let f = KFunction::from_fn(3, 3, |_| rng.gen_range(0..3)).unwrap();
        let back = parse_with_arity(&to_sp(&f), 3, Some(3));
        check(&mut p, back.as_ref().ok() == Some(&f), format!("k=3 n=3 {}", f.to_digits()));
        cases += 1;
    }
    p.truncate(5);
    finish(p, vec![format!("{cases} tables")])
}

/// Checks whose statements are false. A failure is accepted only when the
/// oracle confirms its counterexample.
const FALSE_STATEMENTS: [&str; 5] = [
    "implementation_suffix_is_separable",
    "proper_implementation_suffix_is_separable",
    "s_system_member_breaks_set",
    "imp_refines_sep",
    "sub_refines_sep",
];

fn set(v: &[usize]) -> BTreeSet<usize> {
    v.iter().copied().collect()
}

fn subsets(s: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let v: Vec<usize> = s.iter().copied().collect();
    (0..1u32 << v.len()).map(|m| v.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &x)| x).collect()).collect()
}

/// Some implementation ends with exactly the variables of an inseparable
/// set; with `proper`, the word is longer than the set.
fn oracle_suffix_violation(t: &Table, proper: bool) -> Option<String> {
    let sep = t.sep_sets();
    for (vars, consts) in t.implementations() {
        for len in 1..=vars.len() {
            if proper && len == vars.len() {
                continue;
            }
            let m = set(&vars[vars.len() - len..]);
            if !sep.contains(&m) {
                return Some(format!("({vars:?},{consts:?}) ends in inseparable {m:?}"));
            }
        }
    }
    None
}

/// An s-system member `x` and constant `c` with `M` still inside
/// `Ess(f(x=c))`.
fn oracle_member_violation(t: &Table) -> Option<String> {
    let ess = t.ess();
    let sep = t.sep_sets();
    for m in subsets(&ess) {
        if m.is_empty() || m == ess || sep.contains(&m) {
            continue;
        }
        let dis = t.distributive_sets(&m);
        let union: BTreeSet<usize> = dis.iter().flatten().copied().collect();
        for beta in subsets(&union) {
            let hits_all = dis.iter().all(|d| !d.is_disjoint(&beta));
            let sole = beta.iter().all(|x| dis.iter().any(|d| d.intersection(&beta).eq([x])));
            if !(hits_all && sole) {
                continue;
            }
            for &x in &beta {
                for c in 0..t.k {
                    if m.is_subset(&t.fix(x, c).ess()) {
                        return Some(format!("M={m:?} Dis={dis:?} beta={beta:?} x{x}={c}"));
                    }
                }
            }
        }
    }
    None
}

fn hex_arity(text: &str) -> usize {
    (text.len() * 4).trailing_zeros() as usize
}

fn confirm(name: &str, counterexample: &str) -> Option<String> {
    match name {
        "implementation_suffix_is_separable" | "proper_implementation_suffix_is_separable" => {
            let t = Table::hex(counterexample, hex_arity(counterexample));
            oracle_suffix_violation(&t, name.starts_with("proper"))
        }
        "s_system_member_breaks_set" => oracle_member_violation(&Table::hex(counterexample, hex_arity(counterexample))),
        "imp_refines_sep" | "sub_refines_sep" => {
            let (a, b) = counterexample.split_once(',')?;
            let (a, b) = (Table::hex(a, hex_arity(a)), Table::hex(b, hex_arity(b)));
            let same = if name == "imp_refines_sep" { a.imp() == b.imp() } else { a.sub_vector() == b.sub_vector() };
            (same && a.sep_vector() != b.sep_vector()).then(|| format!("sep {:?} vs {:?}", a.sep_vector(), b.sep_vector()))
        }
        _ => None,
    }
}

fn property_suites() -> (Outcome, bool) {
    let configs = [
        VerifyConfig { k: 2, n: 1, exhaustive: Some(true), ..Default::default() },
        VerifyConfig { k: 2, n: 2, exhaustive: Some(true), ..Default::default() },
        VerifyConfig { k: 2, n: 3, exhaustive: Some(true), ..Default::default() },
        VerifyConfig { k: 2, n: 4, samples: 10_000, seed: 1, exhaustive: Some(false), ..Default::default() },
        VerifyConfig { k: 3, n: 2, samples: 10_000, seed: 1, exhaustive: Some(false), ..Default::default() },
    ];
    let mut failures = Vec::new();
    let mut unexplained = Vec::new();
    let mut notes = Vec::new();
    for cfg in &configs {
        let report: VerifyReport = match verify::run(cfg) {
            Ok(r) => r,
            Err(e) => return (Err(vec![e.to_string()]), false),
        };
        let cases: u64 = report.checks.iter().map(|c| c.cases).sum();
        notes.push(format!("k={} n={}: {} functions, {} checks, {cases} cases", cfg.k, cfg.n, report.functions, report.checks.len()));
        for c in report.checks.iter().filter(|c| !c.passed()) {
            let cx = c.counterexample.clone().unwrap_or_default();
            let line = format!("k={} n={} {} violations={}/{} counterexample={cx}", cfg.k, cfg.n, c.name, c.violations, c.cases);
            let confirmed = FALSE_STATEMENTS.contains(&c.name.as_str()).then(|| confirm(&c.name, &cx)).flatten();
            match confirmed {
                Some(why) => failures.push(format!("{line} [oracle: {why}]")),
                None => unexplained.push(line),
            }
        }
    }
    for name in ["imp_does_not_refine_sub", "sub_does_not_refine_imp"] {
        notes.push(format!("{name}: witness pair checked at n=3 and n=4"));
    }
    let mutant = verify::run(&VerifyConfig { n: 3, mutant: true, ..Default::default() }).map(|r| !r.check("diagram_labels_are_essential").unwrap().passed());
    if mutant.as_ref().ok() != Some(&true) {
        unexplained.push("mutant diagram reduction was not detected".into());
    }
    let only_confirmed = unexplained.is_empty();
    let mut problems = unexplained;
    problems.extend(failures);
    if problems.is_empty() {
        (Ok(notes), true)
    } else {
        (Err(problems), only_confirmed)
    }
}

fn documented_witnesses() -> Outcome {
    let mut p = Vec::new();
    // g itself: (23,000) ends in {x2,x3}, which is not separable.
    let g = Table::hex("d8", 3);
    check(&mut p, g.implementations().contains(&(vec![2, 3], vec![0, 0, 0])), "g lacks (23,000)");
    check(&mut p, !g.sep_sets().contains(&set(&[2, 3])), "{x2,x3} separable in g");
    // 8d66, M = {x2,x3}: fixing the s-system member x1 to 0 keeps M essential.
    let t = Table::hex("8d66", 4);
    check(&mut p, t.distributive_sets(&set(&[2, 3])) == [set(&[1, 4])], "Dis({x2,x3}, 8d66)");
    check(&mut p, set(&[2, 3]).is_subset(&t.fix(1, 0).ess()), "8d66(x1=0) loses x2 or x3");
    // equal imp, different sep
    let (a, b) = (Table::hex("013d", 4), Table::hex("01ea", 4));
    check(&mut p, a.imp() == b.imp() && a.sep_vector() != b.sep_vector(), "013d/01ea");
    // equal sub vectors, different sep
    let (a, b) = (Table::hex("0189", 4), Table::hex("01aa", 4));
    check(&mut p, a.sub_vector() == b.sub_vector() && a.sep_vector() != b.sep_vector(), "0189/01aa");
    // below four variables the refinements hold
    let imp3 = classify_space(2, 3, Relation::Imp).unwrap();
    check(&mut p, distinct_imp_values(&imp3).len() == 13, "imp values at n=3");
    finish(p, vec!["false statements reproduced by the oracle".into()])
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut lines = vec![
        run(1, "example values", example_values),
        run(2, "diagram fixtures", diagram_fixtures),
        run(3, "P_2^2 imp classes", table1),
        run(4, "P_2^3 imp/sub/sep classes", || table(TableId::Table3)),
        run(5, "class counts up to n=4", || table(TableId::Table4)),
        run(6, "group orbit counts", || table(TableId::Figure4)),
        run(7, "P_2^5 sep classes", table5),
    ];
    let t = Instant::now();
    let (outcome, only_confirmed) = property_suites();
    lines.push(Line { id: 8, title: "property suites", outcome, secs: t.elapsed().as_secs_f64() });
    lines.push(run(9, "parser round trip", parser_round_trip));
    let witnesses = run(0, "oracle check of false statements", documented_witnesses);

    let mut ok = true;
    for l in lines.iter().chain([&witnesses]) {
        let (tag, details) = match &l.outcome {
            Ok(notes) => ("PASS", notes),
            Err(problems) => ("FAIL", problems),
        };
        if l.id == 0 {
            println!("{tag} oracle: {} ({:.1}s)", l.title, l.secs);
        } else {
            println!("{tag} criterion {}: {} ({:.1}s)", l.id, l.title, l.secs);
        }
        for d in details {
            println!("    {d}");
        }
        let accepted = l.outcome.is_ok() || (l.id == 8 && only_confirmed);
        ok &= accepted;
    }
    println!("total {:.1}s", start.elapsed().as_secs_f64());
    if ok {
        println!("acceptance: every failure above is a confirmed counterexample to a false statement");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures");
        ExitCode::FAILURE
    }
}
