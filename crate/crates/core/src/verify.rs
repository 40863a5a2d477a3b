// SPDX-License-Identifier: Apache-2.0

//! Invariant suite over a function space, exhaustive or sampled.
//!
//! Each check counts cases and violations and keeps the first
//! counterexample table. A mutant switch disables the redundant-node rule
//! of diagram reduction so the label check must fail.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::classify::{classify_space, refinement_witness, table_text, ClassificationReport, Relation};
use crate::diagram::{self, permutations, ReductionRules};
use crate::error::Result;
use crate::expr::parse_with_arity;
use crate::fixtures;
use crate::groups::{self, GroupDescriptor, GroupName, Transformation};
use crate::kfun::{KFunction, VarSet};
use crate::separability::{self, distributive_sets, minimal_transversals, s_systems};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub k: u8,
    pub n: usize,
    /// Random functions to test when the space is not enumerated.
    pub samples: u64,
    pub seed: u64,
    /// Enumerate the whole space; `None` decides by size.
    pub exhaustive: Option<bool>,
    /// Disable redundant-node removal (negative control).
    pub mutant: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig { k: 2, n: 3, samples: 10_000, seed: 1, exhaustive: None, mutant: false }
    }
}

/// Spaces up to this size are enumerated unless told otherwise.
pub const AUTO_EXHAUSTIVE_LIMIT: u64 = 1 << 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub cases: u64,
    pub violations: u64,
    pub counterexample: Option<String>,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub k: u8,
    pub n: usize,
    pub exhaustive: bool,
    pub functions: u64,
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

struct Tally {
    checks: Vec<CheckResult>,
}

impl Tally {
    fn record(&mut self, name: &str, ok: bool, f: &KFunction) {
        self.record_with(name, ok, || table_text(f));
    }

    /// A whole-space check; the counterexample is a pair of tables.
    fn record_space(&mut self, name: &str, counterexample: Option<String>) {
        let ok = counterexample.is_none();
        self.record_with(name, ok, || counterexample.unwrap_or_default());
    }

    fn record_with(&mut self, name: &str, ok: bool, counterexample: impl FnOnce() -> String) {
        let idx = match self.checks.iter().position(|c| c.name == name) {
            Some(i) => i,
            None => {
                self.checks.push(CheckResult { name: name.into(), cases: 0, violations: 0, counterexample: None });
                self.checks.len() - 1
            }
        };
        let c = &mut self.checks[idx];
        c.cases += 1;
        if !ok {
            c.violations += 1;
            if c.counterexample.is_none() {
                c.counterexample = Some(counterexample());
            }
        }
    }
}

pub fn run(cfg: &VerifyConfig) -> Result<VerifyReport> {
    let gd = GroupDescriptor::new(GroupName::FullSym, cfg.k, cfg.n)?;
    let space = gd.space_size();
    let exhaustive = cfg.exhaustive.unwrap_or(matches!(space, Some(s) if s <= AUTO_EXHAUSTIVE_LIMIT));
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut tally = Tally { checks: Vec::new() };
    let full_sym = if exhaustive { groups::group_elements(&gd, 4096).ok() } else { None };

    let mut functions = 0u64;
    let next = |rng: &mut ChaCha8Rng, i: u64| -> Result<Option<KFunction>> {
        if exhaustive {
            match space {
                Some(s) if i < s => Ok(Some(KFunction::from_id(cfg.k, cfg.n, i as u128)?)),
                _ => Ok(None),
            }
        } else if i < cfg.samples {
            Ok(Some(KFunction::from_fn(cfg.k, cfg.n, |_| rng.gen_range(0..cfg.k))?))
        } else {
            Ok(None)
        }
    };
    let mut witness_found = false;
    while let Some(f) = next(&mut rng, functions)? {
        functions += 1;
        check_function(&f, cfg, &mut rng, full_sym.as_deref(), &mut tally, &mut witness_found)?;
    }
    if cfg.k >= 2 {
        tally.record_space("non_bijective_output_map_breaks_invariance", (!witness_found && functions > 0).then(String::new));
    }
    if cfg.k == 2 && (1..=4).contains(&cfg.n) {
        space_checks(cfg.n, &mut tally)?;
    }
    Ok(VerifyReport { k: cfg.k, n: cfg.n, exhaustive, functions, checks: tally.checks })
}

fn check_function(
    f: &KFunction,
    cfg: &VerifyConfig,
    rng: &mut ChaCha8Rng,
    full_sym: Option<&[Transformation]>,
    tally: &mut Tally,
    witness_found: &mut bool,
) -> Result<()> {
    let ess = f.essential_set();
    let e = ess.len();
    let sep = separability::separable_sets(f);

    // distributive sets and s-systems
    for m in ess.subsets().filter(|m| !m.is_empty() && !sep.contains(m)) {
        let dis = distributive_sets(m, f)?;
        let systems = s_systems(&dis);
        tally.record("s_system_exists", !dis.is_empty() && !systems.is_empty(), f);
        let mut sys_sorted = systems.clone();
        sys_sorted.sort();
        tally.record("s_system_is_minimal_transversal", sys_sorted == minimal_transversals(&dis), f);
        for beta in &systems {
            tally.record("s_system_union_separable", sep.contains(&m.union(*beta)), f);
            let proper_ok = beta.subsets().filter(|a| a != beta).all(|a| !sep.contains(&m.union(a)));
            tally.record("s_system_proper_subsets_inseparable", proper_ok, f);
            if m != ess {
                let kills = beta.iter().all(|x| (0..f.k()).all(|c| !m.is_subset(f.cofactor_unchecked(x, c).essential_set())));
                tally.record("s_system_member_breaks_set", kills, f);
            }
        }
        if m != ess {
            let ok = match diagram::find_shallow_ordering(f, m) {
                Ok(o) => diagram::depth(&diagram::build_odd(f, &o)?)? < e + 1,
                Err(_) => false,
            };
            tally.record("inseparable_set_gives_shallow_diagram", ok, f);
        }
    }

    // strongly essential variables
    let se = f.strongly_essential_set().len();
    tally.record("strongly_essential_exists", (e == 0 || se >= 1) && (e < 2 || se >= 2), f);

    // subfunction chains
    for g in separability::subfunctions(f) {
        let ok = match separability::subfunction_chain(f, &g) {
            Ok(chain) => {
                chain.first() == Some(&g)
                    && chain.last() == Some(f)
                    && chain.windows(2).all(|w| {
                        w[1].ess() == w[0].ess() + 1
                            && w[1].essential_set().iter().any(|x| (0..f.k()).any(|c| w[1].cofactor_unchecked(x, c) == w[0]))
                    })
            }
            Err(_) => false,
        };
        tally.record("subfunction_chain_exists", ok, f);
    }

    // diagrams
    let all_vars: Vec<usize> = (1..=f.n()).collect();
    let orderings: Vec<Vec<usize>> = if f.n() <= 4 {
        permutations(&all_vars)
    } else {
        let mut v = all_vars.clone();
        v.shuffle(rng);
        vec![all_vars.clone(), v]
    };
    let rules = ReductionRules { remove_redundant: !cfg.mutant, ..Default::default() };
    for o in &orderings {
        let d = diagram::reduce_with(&diagram::build_odt(f, o)?, rules);
        tally.record("diagram_labels_are_essential", diagram::diagram_labels(&d)? == ess, f);
        let sound = (0..f.len()).all(|i| d.evaluate(&f.point_of(i)).ok() == f.values().get(i).copied());
        tally.record("reduced_diagram_evaluates_f", sound, f);
        tally.record("diagram_depth_bound", diagram::depth(&d)? <= e + 1, f);
        if !cfg.mutant {
            let direct = diagram::build_odd(f, o)?;
            tally.record("reduction_is_canonical", direct.canonical_string() == d.canonical_string(), f);
        }
    }
    if e >= 1 {
        let ok = match diagram::find_full_depth_ordering(f) {
            Ok(o) => diagram::depth(&diagram::build_odd(f, &o)?)? == e + 1,
            Err(_) => false,
        };
        tally.record("full_depth_diagram_exists", ok, f);
    }

    // implementations
    let imps = diagram::implementations(f)?;
    for m in ess.subsets().filter(|m| !m.is_empty()) {
        let separable = sep.contains(&m);
        let suffix = diagram::has_suffix_implementation(&imps, m);
        if separable {
            tally.record("separable_set_is_implementation_suffix", suffix, f);
        }
        if suffix {
            tally.record("implementation_suffix_is_separable", separable, f);
            let proper = imps.iter().any(|p| p.vars.len() > m.len() && p.vars[p.vars.len() - m.len()..].iter().copied().collect::<VarSet>() == m);
            if proper {
                tally.record("proper_implementation_suffix_is_separable", separable, f);
            }
        }
    }
    for i in ess.iter() {
        tally.record("essential_variable_ends_implementation", imps.iter().any(|p| p.vars.last() == Some(&i)), f);
    }
    let count = imps.len() as u64;
    tally.record("imp_recursion_matches_enumeration", diagram::imp_by_recursion(f) == count && diagram::imp_count(f)? == count, f);

    // invariance under value permutations
    let sub = separability::sub_vector(f);
    let sepv = separability::sep_vector(f);
    let mut sigma: Vec<u8> = (0..f.k()).collect();
    sigma.shuffle(rng);
    let g = groups::apply(&Transformation::OutputMap(sigma), f)?;
    tally.record("output_permutation_preserves_imp_and_sub", diagram::imp_count(&g)? == count && separability::sub_vector(&g) == sub, f);

    let phi: Vec<u8> = (0..f.k()).map(|v| if v + 1 == f.k() { 0 } else { v }).collect();
    let h = groups::map_output(f, &phi)?;
    if diagram::imp_count(&h)? != count || separability::sub_vector(&h) != sub {
        *witness_found = true;
    }

    let elements: Vec<Transformation> = match full_sym {
        Some(all) => all.to_vec(),
        None => vec![random_full_sym(f.k(), f.n(), rng)],
    };
    for t in &elements {
        let g = groups::apply(t, f)?;
        let ok = diagram::imp_count(&g)? == count && separability::sub_vector(&g) == sub && separability::sep_vector(&g) == sepv;
        tally.record("value_and_variable_permutations_preserve_profiles", ok, f);
    }
    Ok(())
}

fn random_full_sym(k: u8, n: usize, rng: &mut ChaCha8Rng) -> Transformation {
    let mut perm: Vec<usize> = (1..=n).collect();
    perm.shuffle(rng);
    let maps = (0..n)
        .map(|_| {
            let mut s: Vec<u8> = (0..k).collect();
            s.shuffle(rng);
            s
        })
        .collect();
    let mut out: Vec<u8> = (0..k).collect();
    out.shuffle(rng);
    Transformation::Compose(vec![Transformation::OutputMap(out), Transformation::VarPermValueMaps { perm, maps }])
}

/// Whole-space relations between the three equivalences and genus orbits.
fn space_checks(n: usize, tally: &mut Tally) -> Result<()> {
    let imp = classify_space(2, n, Relation::Imp)?;
    let imp_structure = classify_space(2, n, Relation::ImpStructure)?;
    let sub = classify_space(2, n, Relation::Sub)?;
    let sep = classify_space(2, n, Relation::Sep)?;
    let ge = classify_space(2, n, Relation::Group(GroupName::GE))?;
    let mut refines = |name: &str, a: &ClassificationReport, b: &ClassificationReport| -> Result<()> {
        match refinement_witness(a, b)? {
            None => tally.record_space(name, None),
            Some((f, g)) => tally.record_space(name, Some(format!("{},{}", table_text(&f), table_text(&g)))),
        }
        Ok(())
    };
    refines("imp_refines_sep", &imp, &sep)?;
    refines("imp_structure_refines_sep", &imp_structure, &sep)?;
    refines("imp_structure_refines_imp", &imp_structure, &imp)?;
    refines("sub_refines_sep", &sub, &sep)?;
    refines("genus_refines_imp", &ge, &imp)?;
    refines("genus_refines_sub", &ge, &sub)?;
    refines("genus_refines_sep", &ge, &sep)?;
    if n >= 3 {
        let (a, b) = fixtures::WITNESS_IMP_NOT_SUB;
        let (a, b) = (parse_with_arity(a, 2, Some(n))?, parse_with_arity(b, 2, Some(n))?);
        tally.record("imp_does_not_refine_sub", imp.class_of(&a) == imp.class_of(&b) && sub.class_of(&a) != sub.class_of(&b), &a);
        let (a, b) = fixtures::WITNESS_SUB_NOT_IMP;
        let (a, b) = (parse_with_arity(a, 2, Some(n))?, parse_with_arity(b, 2, Some(n))?);
        tally.record("sub_does_not_refine_imp", sub.class_of(&a) == sub.class_of(&b) && imp.class_of(&a) != imp.class_of(&b), &a);
    }
    let total = 1u64 << (1 << n);
    let covered = [&imp, &imp_structure, &sub, &sep, &ge].iter().all(|r| r.classes.iter().map(|c| c.size).sum::<u64>() == total);
    tally.record_space("class_sizes_cover_space", (!covered).then(String::new));
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_space_passes() {
        let r = run(&VerifyConfig { n: 2, ..Default::default() }).unwrap();
        assert!(r.exhaustive);
        assert_eq!(r.functions, 16);
        for c in &r.checks {
            assert!(c.passed(), "{c:?}");
        }
    }

    #[test]
    fn mutant_is_caught() {
        let r = run(&VerifyConfig { n: 2, mutant: true, ..Default::default() }).unwrap();
        assert!(!r.passed());
        assert!(!r.check("diagram_labels_are_essential").unwrap().passed());
        assert!(r.check("reduced_diagram_evaluates_f").unwrap().passed());
    }

    #[test]
    fn ternary_sample() {
        let r = run(&VerifyConfig { k: 3, n: 2, samples: 50, ..Default::default() }).unwrap();
        assert!(!r.exhaustive);
        assert!(r.passed(), "{:?}", r.checks.iter().filter(|c| !c.passed()).collect::<Vec<_>>());
    }
}
