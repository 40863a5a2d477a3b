// SPDX-License-Identifier: Apache-2.0

//! The imp-, sub- and sep-equivalences and whole-space classification.
//!
//! * imp: equal numbers of implementations. This is the reading under which
//!   the published class counts are reproduced.
//! * imp-structure: equal [`ImpSignature`]s, the recursive cofactor matching
//!   up to variable and value permutations. Finer than imp.
//! * sub: equal `(sub_0, ..., sub_n)`; unary functions also need equal ranges.
//! * sep: equal `(sep_1, ..., sep_n)`; functions with at most one essential
//!   variable are compared by `ess` alone.
//!
//! Group relations classify by orbit.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::diagram;
use crate::error::{Error, Result};
use crate::expr;
use crate::groups::{self, GroupDescriptor, GroupName};
use crate::kfun::KFunction;
use crate::separability;

/// Largest space [`classify_space`] will enumerate function by function.
pub const MAX_CLASSIFY_SPACE: u64 = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    Imp,
    ImpStructure,
    Sub,
    Sep,
    Group(GroupName),
}

impl Relation {
    pub fn name(&self) -> String {
        match self {
            Relation::Imp => "imp".into(),
            Relation::ImpStructure => "imp-structure".into(),
            Relation::Sub => "sub".into(),
            Relation::Sep => "sep".into(),
            Relation::Group(g) => g.as_str().into(),
        }
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "imp" => Ok(Relation::Imp),
            "imp-structure" | "imp-signature" => Ok(Relation::ImpStructure),
            "sub" => Ok(Relation::Sub),
            "sep" => Ok(Relation::Sep),
            other => other
                .parse::<GroupName>()
                .map(Relation::Group)
                .map_err(|_| Error::Format(format!("unknown relation `{s}`"))),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Hierarchical canonical form for imp-equivalence: the essential-variable
/// count for `ess <= 1`, otherwise the sorted multiset over essential
/// variables of the sorted multiset of cofactor signatures.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ImpSignature {
    Base(usize),
    Node(Vec<Vec<ImpSignature>>),
}

impl fmt::Display for ImpSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ImpSignature::Base(e) => write!(f, "e{e}"),
            ImpSignature::Node(groups) => {
                f.write_str("[")?;
                for (i, g) in groups.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    f.write_str("(")?;
                    for (j, s) in g.iter().enumerate() {
                        if j > 0 {
                            f.write_str(" ")?;
                        }
                        write!(f, "{s}")?;
                    }
                    f.write_str(")")?;
                }
                f.write_str("]")
            }
        }
    }
}

pub fn imp_signature(f: &KFunction) -> ImpSignature {
    let mut memo = HashMap::new();
    signature_rec(f, &mut memo)
}

fn signature_rec(f: &KFunction, memo: &mut HashMap<KFunction, ImpSignature>) -> ImpSignature {
    let ess = f.essential_set();
    if ess.len() <= 1 {
        return ImpSignature::Base(ess.len());
    }
    if let Some(s) = memo.get(f) {
        return s.clone();
    }
    let mut groups: Vec<Vec<ImpSignature>> = ess
        .iter()
        .map(|i| {
            let mut g: Vec<ImpSignature> = (0..f.k()).map(|c| signature_rec(&f.cofactor_unchecked(i, c), memo)).collect();
            g.sort();
            g
        })
        .collect();
    groups.sort();
    let s = ImpSignature::Node(groups);
    memo.insert(f.clone(), s.clone());
    s
}

/// Interned signatures: equal ids mean equal [`ImpSignature`]s. Ids 0 and 1
/// are the bases `ess = 0` and `ess = 1`.
#[derive(Default)]
pub struct SignatureInterner {
    ids: HashMap<Vec<Vec<u32>>, u32>,
    nodes: Vec<Vec<Vec<u32>>>,
    by_bits: HashMap<(usize, u64), u32>,
    by_table: HashMap<KFunction, u32>,
}

impl SignatureInterner {
    pub fn new() -> Self {
        SignatureInterner::default()
    }

    fn intern(&mut self, mut groups: Vec<Vec<u32>>) -> u32 {
        for g in groups.iter_mut() {
            g.sort_unstable();
        }
        groups.sort();
        if let Some(&id) = self.ids.get(&groups) {
            return id;
        }
        let id = self.nodes.len() as u32 + 2;
        self.nodes.push(groups.clone());
        self.ids.insert(groups, id);
        id
    }

    /// Signature id of a Boolean table with `n <= 6`.
    pub fn id_of_bits(&mut self, t: u64, n: usize) -> u32 {
        let ess = bits::ess_mask(t, n);
        if ess.count_ones() <= 1 {
            return ess.count_ones();
        }
        if let Some(&id) = self.by_bits.get(&(n, t)) {
            return id;
        }
        let mut groups = Vec::with_capacity(ess.count_ones() as usize);
        let mut m = ess;
        while m != 0 {
            let i = m.trailing_zeros() as usize + 1;
            m &= m - 1;
            groups.push(vec![self.id_of_bits(bits::cofactor(t, n, i, 0), n), self.id_of_bits(bits::cofactor(t, n, i, 1), n)]);
        }
        let id = self.intern(groups);
        self.by_bits.insert((n, t), id);
        id
    }

    pub fn id_of(&mut self, f: &KFunction) -> u32 {
        if let Some(t) = f.to_bits() {
            return self.id_of_bits(t, f.n());
        }
        let ess = f.essential_set();
        if ess.len() <= 1 {
            return ess.len() as u32;
        }
        if let Some(&id) = self.by_table.get(f) {
            return id;
        }
        let groups = ess
            .iter()
            .map(|i| (0..f.k()).map(|c| self.id_of(&f.cofactor_unchecked(i, c))).collect())
            .collect();
        let id = self.intern(groups);
        self.by_table.insert(f.clone(), id);
        id
    }

    /// The full signature behind an id.
    pub fn signature(&self, id: u32) -> ImpSignature {
        if id < 2 {
            return ImpSignature::Base(id as usize);
        }
        let mut groups: Vec<Vec<ImpSignature>> = self.nodes[id as usize - 2]
            .iter()
            .map(|g| {
                let mut v: Vec<ImpSignature> = g.iter().map(|&c| self.signature(c)).collect();
                v.sort();
                v
            })
            .collect();
        groups.sort();
        ImpSignature::Node(groups)
    }
}

/// One equivalence class of a report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    /// 1-based, in order of the smallest member.
    pub id: usize,
    pub key: String,
    pub size: u64,
    /// Hex for Boolean tables, a digit string otherwise.
    pub representative: String,
    pub expression: String,
    pub imp: Option<u64>,
    pub sub: Vec<u64>,
    pub sep: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub relation: String,
    pub k: u8,
    pub n: usize,
    pub total: u64,
    pub classes: Vec<ClassEntry>,
    /// Class index (0-based) of every function id, when enumerated.
    #[serde(skip)]
    pub assignment: Option<Vec<u32>>,
}

impl ClassificationReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Class sizes sorted ascending.
    pub fn sizes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.classes.iter().map(|c| c.size).collect();
        v.sort_unstable();
        v
    }

    /// 0-based class index of a function.
    pub fn class_of(&self, f: &KFunction) -> Option<usize> {
        let id = f.id()?;
        self.assignment.as_ref()?.get(usize::try_from(id).ok()?).map(|&c| c as usize)
    }

    pub fn representative(&self, class: usize) -> Result<KFunction> {
        parse_table(self.k, self.n, &self.classes[class].representative)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["class", "key", "size", "representative", "expression", "imp", "sub", "sep"])?;
        for c in &self.classes {
            w.write_record([
                c.id.to_string(),
                c.key.clone(),
                c.size.to_string(),
                c.representative.clone(),
                c.expression.clone(),
                c.imp.map(|v| v.to_string()).unwrap_or_default(),
                c.sub.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
                c.sep.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            ])?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Format(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Hex for Boolean tables, digits otherwise.
pub fn table_text(f: &KFunction) -> String {
    if f.k() == 2 {
        f.to_hex().unwrap_or_else(|_| f.to_digits())
    } else {
        f.to_digits()
    }
}

pub fn parse_table(k: u8, n: usize, text: &str) -> Result<KFunction> {
    if k == 2 {
        KFunction::from_hex(text, Some(n))
    } else {
        KFunction::from_digits(k, Some(n), text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum RawKey {
    Signature(u32),
    Count(u64),
    Small(usize, Vec<u8>),
    Vector(Vec<u64>),
    Orbit(usize),
}

fn sub_key(f: &KFunction) -> RawKey {
    match f.ess() {
        0 => RawKey::Small(0, Vec::new()),
        1 => RawKey::Small(1, f.range_of().into_iter().collect()),
        _ => RawKey::Vector(separability::sub_vector(f)),
    }
}

fn sep_key(f: &KFunction) -> RawKey {
    match f.ess() {
        e @ (0 | 1) => RawKey::Small(e, Vec::new()),
        _ => RawKey::Vector(separability::sep_vector(f)),
    }
}

fn bits_key(relation: Relation, t: u64, n: usize, interner: &mut SignatureInterner, memo: &mut HashMap<u64, u64>) -> RawKey {
    let ess = bits::ess_mask(t, n).count_ones() as usize;
    match relation {
        Relation::Imp => RawKey::Count(bits::imp_count(t, n, memo)),
        Relation::ImpStructure => RawKey::Signature(interner.id_of_bits(t, n)),
        Relation::Sub if ess == 0 => RawKey::Small(0, Vec::new()),
        Relation::Sub if ess == 1 => RawKey::Small(1, vec![0, 1]),
        Relation::Sub => RawKey::Vector(bits::sub_vector(t, n)),
        Relation::Sep if ess <= 1 => RawKey::Small(ess, Vec::new()),
        Relation::Sep => RawKey::Vector(bits::sep_vector(t, n)),
        Relation::Group(_) => unreachable!("group relations are scanned by orbit"),
    }
}

fn render_key(relation: Relation, key: &RawKey, interner: &SignatureInterner, rep: &KFunction) -> String {
    let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
    match key {
        RawKey::Signature(id) => interner.signature(*id).to_string(),
        RawKey::Count(v) => format!("imp={v}"),
        RawKey::Small(e, range) if range.is_empty() => format!("ess={e}"),
        RawKey::Small(e, range) => {
            format!("ess={e};range={}", range.iter().map(u8::to_string).collect::<Vec<_>>().join(","))
        }
        RawKey::Vector(v) => format!("{relation}=({})", join(v)),
        RawKey::Orbit(_) => table_text(rep),
    }
}

/// Partitions all of `P_k^n` under `relation`. Boolean sep classification
/// of `P_2^5` is delegated to [`crate::scan::sep_scan_p2_5`].
pub fn classify_space(k: u8, n: usize, relation: Relation) -> Result<ClassificationReport> {
    if k == 2 && n == 5 && relation == Relation::Sep {
        return crate::scan::sep_scan_p2_5(&crate::scan::ScanOptions::default());
    }
    let gd_probe = GroupDescriptor::new(GroupName::G, k, n)?;
    let size = gd_probe
        .space_size()
        .filter(|&s| s <= MAX_CLASSIFY_SPACE)
        .ok_or(Error::TooLarge { k, n, limit: MAX_CLASSIFY_SPACE })?;

    let mut interner = SignatureInterner::new();
    let mut memo = HashMap::new();
    let mut index: HashMap<RawKey, usize> = HashMap::new();
    let mut firsts: Vec<(RawKey, u64)> = Vec::new();
    let mut sizes: Vec<u64> = Vec::new();
    let mut assignment = vec![0u32; size as usize];

    if let Relation::Group(name) = relation {
        let gd = GroupDescriptor::new(name, k, n)?;
        let orbits = groups::scan_orbits(&gd, |id, orbit| assignment[id as usize] = orbit as u32)?;
        for (i, (min, count)) in orbits.into_iter().enumerate() {
            firsts.push((RawKey::Orbit(i), min));
            sizes.push(count);
        }
    } else {
        for id in 0..size {
            let key = if k == 2 && n <= bits::MAX_BITS_VARS {
                bits_key(relation, id, n, &mut interner, &mut memo)
            } else {
                let f = KFunction::from_id(k, n, id as u128)?;
                match relation {
                    Relation::Imp => RawKey::Count(diagram::imp_count(&f)?),
                    Relation::ImpStructure => RawKey::Signature(interner.id_of(&f)),
                    Relation::Sub => sub_key(&f),
                    Relation::Sep => sep_key(&f),
                    Relation::Group(_) => unreachable!(),
                }
            };
            let next = firsts.len();
            let class = *index.entry(key.clone()).or_insert_with(|| {
                firsts.push((key, id));
                sizes.push(0);
                next
            });
            sizes[class] += 1;
            assignment[id as usize] = class as u32;
        }
    }

    let mut classes = Vec::with_capacity(firsts.len());
    for (i, (key, first)) in firsts.iter().enumerate() {
        let rep = KFunction::from_id(k, n, *first as u128)?;
        let imp = if rep.ess() <= diagram::DEFAULT_ORDERING_LIMIT { Some(diagram::imp_count(&rep)?) } else { None };
        classes.push(ClassEntry {
            id: i + 1,
            key: render_key(relation, key, &interner, &rep),
            size: sizes[i],
            representative: table_text(&rep),
            expression: expr::to_sp(&rep),
            imp,
            sub: separability::sub_vector(&rep),
            sep: separability::sep_vector(&rep),
        });
    }
    Ok(ClassificationReport { relation: relation.name(), k, n, total: size, classes, assignment: Some(assignment) })
}

/// `(t_imp, t_sub, t_sep)` on `P_k^n`.
pub fn class_counts(k: u8, n: usize) -> Result<(u64, u64, u64)> {
    let count = |r| classify_space(k, n, r).map(|rep| rep.class_count() as u64);
    Ok((count(Relation::Imp)?, count(Relation::Sub)?, count(Relation::Sep)?))
}

fn assignments<'a>(a: &'a ClassificationReport, b: &'a ClassificationReport) -> Result<(&'a [u32], &'a [u32])> {
    if a.k != b.k || a.n != b.n {
        return Err(Error::ShapeMismatch(format!("k={} n={}", a.k, a.n), format!("k={} n={}", b.k, b.n)));
    }
    match (&a.assignment, &b.assignment) {
        (Some(x), Some(y)) if x.len() == y.len() => Ok((x, y)),
        _ => Err(Error::Unsupported("refinement needs per-function class assignments".into())),
    }
}

/// Whether every class of `a` lies inside one class of `b`.
pub fn refinement_check(a: &ClassificationReport, b: &ClassificationReport) -> Result<bool> {
    Ok(refinement_witness(a, b)?.is_none())
}

/// Two functions equivalent under `a` but not under `b`, if any.
pub fn refinement_witness(a: &ClassificationReport, b: &ClassificationReport) -> Result<Option<(KFunction, KFunction)>> {
    let (x, y) = assignments(a, b)?;
    let mut image: Vec<Option<(u32, usize)>> = vec![None; a.classes.len()];
    for (id, (&ca, &cb)) in x.iter().zip(y).enumerate() {
        match image[ca as usize] {
            None => image[ca as usize] = Some((cb, id)),
            Some((cb0, id0)) if cb0 != cb => {
                return Ok(Some((
                    KFunction::from_id(a.k, a.n, id0 as u128)?,
                    KFunction::from_id(a.k, a.n, id as u128)?,
                )));
            }
            _ => {}
        }
    }
    Ok(None)
}

/// Whether `f` and `g` are equivalent under `relation`, decided directly.
pub fn equivalent(f: &KFunction, g: &KFunction, relation: Relation) -> Result<bool> {
    if !f.same_shape(g) {
        return Err(Error::ShapeMismatch(f.shape(), g.shape()));
    }
    Ok(match relation {
        Relation::Imp => diagram::imp_count(f)? == diagram::imp_count(g)?,
        Relation::ImpStructure => imp_signature(f) == imp_signature(g),
        Relation::Sub => sub_key(f) == sub_key(g),
        Relation::Sep => sep_key(f) == sep_key(g),
        Relation::Group(name) => {
            let gd = GroupDescriptor::new(name, f.k(), f.n())?;
            groups::canonical_form(f, &gd)? == groups::canonical_form(g, &gd)?
        }
    })
}

/// Distinct values of a per-class quantity, for quick summaries.
pub fn distinct_imp_values(report: &ClassificationReport) -> BTreeSet<u64> {
    report.classes.iter().filter_map(|c| c.imp).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_with_arity;

    fn p(text: &str, n: usize) -> KFunction {
        parse_with_arity(text, 2, Some(n)).unwrap()
    }

    #[test]
    fn signatures() {
        assert_eq!(imp_signature(&p("0", 2)), imp_signature(&p("1", 2)));
        assert_eq!(imp_signature(&p("x1*x2", 2)), imp_signature(&p("x1^0 + x1*x2^0", 2)));
        assert_ne!(imp_signature(&p("x1*x2*x3", 3)), imp_signature(&p("x1*x2^0*x3^0 + x1", 3)));
        let mut i = SignatureInterner::new();
        let a = i.id_of(&p("x1*x2", 2));
        let b = i.id_of(&p("x1^0 + x1*x2^0", 2));
        assert_eq!(a, b);
        assert_eq!(i.signature(a), imp_signature(&p("x1*x2", 2)));
    }

    #[test]
    fn table1() {
        let r = classify_space(2, 2, Relation::Imp).unwrap();
        let mut rows: Vec<(u64, u64)> = r.classes.iter().map(|c| (c.imp.unwrap(), c.size)).collect();
        rows.sort();
        assert_eq!(rows, vec![(1, 2), (2, 4), (6, 8), (8, 2)]);
    }

    #[test]
    fn p23_classes() {
        let sep = classify_space(2, 3, Relation::Sep).unwrap();
        let mut rows: Vec<(u64, u64)> = sep.classes.iter().map(|c| (c.sep.iter().sum(), c.size)).collect();
        rows.sort();
        assert_eq!(rows, vec![(0, 2), (1, 6), (3, 30), (6, 24), (7, 194)]);
        let imp = classify_space(2, 3, Relation::Imp).unwrap();
        assert_eq!(imp.class_count(), 13);
        assert_eq!(
            distinct_imp_values(&imp),
            [1, 2, 6, 8, 28, 21, 23, 30, 36, 42, 48, 32, 33].into_iter().collect::<BTreeSet<u64>>()
        );
        let sub = classify_space(2, 3, Relation::Sub).unwrap();
        assert_eq!(sub.class_count(), 11);
        assert_eq!(class_counts(2, 1).unwrap(), (2, 2, 2));
    }

    #[test]
    fn refinements_p23() {
        let imp = classify_space(2, 3, Relation::Imp).unwrap();
        let sub = classify_space(2, 3, Relation::Sub).unwrap();
        let sep = classify_space(2, 3, Relation::Sep).unwrap();
        assert!(refinement_check(&imp, &sep).unwrap());
        assert!(refinement_check(&sub, &sep).unwrap());
        assert!(!refinement_check(&imp, &sub).unwrap());
        assert!(!refinement_check(&sub, &imp).unwrap());
        let ge = classify_space(2, 3, Relation::Group(GroupName::GE)).unwrap();
        assert_eq!(ge.class_count(), 14);
        for r in [&imp, &sub, &sep] {
            assert!(refinement_check(&ge, r).unwrap());
        }
        let (f, g) = crate::fixtures::WITNESS_IMP_NOT_SUB;
        let (f, g) = (p(f, 3), p(g, 3));
        assert_eq!(imp.class_of(&f), imp.class_of(&g));
        assert_ne!(sub.class_of(&f), sub.class_of(&g));
    }

    #[test]
    fn ternary_unary_ranges() {
        let a = KFunction::from_values(3, 1, vec![0, 1, 1]).unwrap();
        let b = KFunction::from_values(3, 1, vec![0, 1, 2]).unwrap();
        assert!(!equivalent(&a, &b, Relation::Sub).unwrap());
        assert!(equivalent(&a, &b, Relation::Sep).unwrap());
        let r = classify_space(3, 1, Relation::Sub).unwrap();
        assert_eq!(r.total, 27);
        assert_eq!(r.sizes().iter().sum::<u64>(), 27);
    }

    #[test]
    fn relation_names() {
        assert_eq!("imp".parse::<Relation>().unwrap(), Relation::Imp);
        assert_eq!("GE".parse::<Relation>().unwrap(), Relation::Group(GroupName::GE));
        assert!("foo".parse::<Relation>().is_err());
    }

    #[test]
    fn csv_report() {
        let r = classify_space(2, 3, Relation::Sep).unwrap();
        let csv = r.to_csv().unwrap();
        assert_eq!(csv.lines().count(), 6);
        assert!(csv.starts_with("class,key,size"));
    }
}
