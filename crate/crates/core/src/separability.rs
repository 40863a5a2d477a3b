// SPDX-License-Identifier: Apache-2.0

//! Subfunctions, separable sets, distributive sets and s-systems.
//!
//! `Sub(f)` is the closure of `{f}` under fixing one currently essential
//! variable to a constant. A non-empty set `M` is separable in `f` when it
//! is exactly the essential set of some subfunction.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::diagram;
use crate::error::{Error, Result};
use crate::kfun::{KFunction, PartialAssignment, VarSet};

/// A deduplicated family of non-empty variable sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SetFamily {
    sets: Vec<VarSet>,
}

impl SetFamily {
    pub fn new(sets: impl IntoIterator<Item = VarSet>) -> Result<Self> {
        let mut v: Vec<VarSet> = sets.into_iter().collect();
        if v.iter().any(|s| s.is_empty()) {
            return Err(Error::EmptySet);
        }
        v.sort();
        v.dedup();
        Ok(SetFamily { sets: v })
    }

    pub fn sets(&self) -> &[VarSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains(&self, s: VarSet) -> bool {
        self.sets.binary_search(&s).is_ok()
    }

    /// Union of all members.
    pub fn support(&self) -> VarSet {
        self.sets.iter().fold(VarSet::EMPTY, |acc, s| acc.union(*s))
    }
}

/// The three complexity measures of a function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexityProfile {
    pub imp: u64,
    /// `sub[m]` counts subfunctions with `m` essential variables, `m = 0..=n`.
    pub sub: Vec<u64>,
    /// `sep[m-1]` counts separable sets of size `m`, `m = 1..=n`.
    pub sep: Vec<u64>,
}

impl ComplexityProfile {
    pub fn sub_total(&self) -> u64 {
        self.sub.iter().sum()
    }

    pub fn sep_total(&self) -> u64 {
        self.sep.iter().sum()
    }
}

pub fn profile(f: &KFunction) -> Result<ComplexityProfile> {
    Ok(ComplexityProfile { imp: diagram::imp_count(f)?, sub: sub_vector(f), sep: sep_vector(f) })
}

/// `Sub(f)`, including `f` itself, sorted as numerals.
pub fn subfunctions(f: &KFunction) -> Vec<KFunction> {
    let mut seen: HashSet<KFunction> = HashSet::new();
    let mut queue = VecDeque::from([f.clone()]);
    seen.insert(f.clone());
    while let Some(g) = queue.pop_front() {
        for i in g.essential_set().iter() {
            for c in 0..g.k() {
                let h = g.cofactor_unchecked(i, c);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
    }
    let mut out: Vec<KFunction> = seen.into_iter().collect();
    out.sort();
    out
}

/// `(sub_0, ..., sub_n)`.
pub fn sub_vector(f: &KFunction) -> Vec<u64> {
    let mut v = vec![0u64; f.n() + 1];
    for g in subfunctions(f) {
        v[g.ess()] += 1;
    }
    v
}

/// `Sep(f)`.
pub fn separable_sets(f: &KFunction) -> BTreeSet<VarSet> {
    subfunctions(f).iter().map(KFunction::essential_set).filter(|s| !s.is_empty()).collect()
}

/// `(sep_1, ..., sep_n)`.
pub fn sep_vector(f: &KFunction) -> Vec<u64> {
    let mut v = vec![0u64; f.n()];
    for s in separable_sets(f) {
        v[s.len() - 1] += 1;
    }
    v
}

fn check_essential_subset(f: &KFunction, m: VarSet) -> Result<VarSet> {
    let ess = f.essential_set();
    if !m.is_subset(ess) {
        return Err(Error::NotEssential { set: m.to_string(), ess: ess.to_string() });
    }
    Ok(ess)
}

/// Whether some assignment to `Ess(f) \ M` leaves exactly `M` essential.
pub fn is_separable(f: &KFunction, m: VarSet) -> Result<bool> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    let ess = check_essential_subset(f, m)?;
    Ok(PartialAssignment::all_over(ess.difference(m), f.k())
        .any(|a| f.restrict(&a).expect("valid assignment").essential_set() == m))
}

/// Whether every assignment to `J` makes some member of `M` inessential.
pub fn blocks(f: &KFunction, m: VarSet, j: VarSet) -> bool {
    PartialAssignment::all_over(j, f.k()).all(|a| !m.is_subset(f.restrict(&a).expect("valid assignment").essential_set()))
}

/// Which blocking sets [`distributive_sets_with`] reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum DistributiveMode {
    /// Only the inclusion-minimal blocking sets.
    #[default]
    Minimal,
    /// Every blocking set `J ⊆ Ess(f) \ M`.
    AllBlocking,
}

/// `Dis(M, f)`: the minimal `J ⊆ Ess(f) \ M` such that no assignment to `J`
/// keeps all of `M` essential. Empty when `M` is separable.
pub fn distributive_sets(m: VarSet, f: &KFunction) -> Result<SetFamily> {
    distributive_sets_with(m, f, DistributiveMode::Minimal)
}

pub fn distributive_sets_with(m: VarSet, f: &KFunction, mode: DistributiveMode) -> Result<SetFamily> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    let ess = check_essential_subset(f, m)?;
    let space = ess.difference(m);
    let mut candidates: Vec<VarSet> = space.subsets().filter(|j| !j.is_empty()).collect();
    candidates.sort_by_key(|j| (j.len(), *j));
    let mut found: Vec<VarSet> = Vec::new();
    for j in candidates {
        // blocking is upward closed, so supersets of a minimal blocker are skipped
        if mode == DistributiveMode::Minimal && found.iter().any(|b| b.is_subset(j)) {
            continue;
        }
        if blocks(f, m, j) {
            found.push(j);
        }
    }
    SetFamily::new(found)
}

/// `Sys(F)`: every `β ⊆ ∪F` meeting each member of `F` such that each
/// element of `β` is the only element of `β` in some member.
pub fn s_systems(family: &SetFamily) -> Vec<VarSet> {
    family
        .support()
        .subsets()
        .filter(|&beta| {
            family.sets().iter().all(|p| !p.intersection(beta).is_empty())
                && beta.iter().all(|x| family.sets().iter().any(|p| p.intersection(beta) == VarSet::singleton(x)))
        })
        .collect()
}

/// Inclusion-minimal transversals of `F`, built incrementally member by
/// member (Berge's method). Agrees with [`s_systems`]; kept as an
/// independent route.
pub fn minimal_transversals(family: &SetFamily) -> Vec<VarSet> {
    let mut current: Vec<VarSet> = vec![VarSet::EMPTY];
    for &p in family.sets() {
        let mut next: Vec<VarSet> = Vec::new();
        for &t in &current {
            if !t.intersection(p).is_empty() {
                next.push(t);
            } else {
                next.extend(p.iter().map(|x| t.with(x)));
            }
        }
        next.sort();
        next.dedup();
        let keep: Vec<VarSet> = next
            .iter()
            .copied()
            .filter(|&t| !next.iter().any(|&u| u != t && u.is_subset(t)))
            .collect();
        current = keep;
    }
    current.sort();
    current
}

/// A chain `g = g_0 ≺ g_1 ≺ ... ≺ g_r = f` of subfunctions of `f` where
/// each link adds exactly one essential variable.
pub fn subfunction_chain(f: &KFunction, g: &KFunction) -> Result<Vec<KFunction>> {
    if !f.same_shape(g) {
        return Err(Error::ShapeMismatch(f.shape(), g.shape()));
    }
    let subs = subfunctions(f);
    if subs.binary_search(g).is_err() {
        return Err(Error::NotSubfunction);
    }
    let mut by_ess: HashMap<usize, Vec<&KFunction>> = HashMap::new();
    for h in &subs {
        by_ess.entry(h.ess()).or_default().push(h);
    }
    let target = f.ess();
    let mut dead: HashSet<KFunction> = HashSet::new();
    let mut chain = vec![g.clone()];
    if extend_chain(&mut chain, target, &by_ess, &mut dead) {
        Ok(chain)
    } else {
        Err(Error::NotSubfunction)
    }
}

fn extend_chain(
    chain: &mut Vec<KFunction>,
    target: usize,
    by_ess: &HashMap<usize, Vec<&KFunction>>,
    dead: &mut HashSet<KFunction>,
) -> bool {
    let cur = chain.last().expect("non-empty").clone();
    let e = cur.ess();
    if e == target {
        return true;
    }
    for &h in by_ess.get(&(e + 1)).map(Vec::as_slice).unwrap_or(&[]) {
        if dead.contains(h) {
            continue;
        }
        let is_simple = h.essential_set().iter().any(|t| (0..h.k()).any(|c| h.cofactor_unchecked(t, c) == cur));
        if !is_simple {
            continue;
        }
        chain.push(h.clone());
        if extend_chain(chain, target, by_ess, dead) {
            return true;
        }
        chain.pop();
        dead.insert(h.clone());
    }
    false
}
