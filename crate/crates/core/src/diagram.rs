// SPDX-License-Identifier: Apache-2.0

//! Ordered decomposition trees, reduced ordered decision diagrams and
//! implementations.
//!
//! A diagram branches `k` ways at every internal node; child `c` is followed
//! when the node's variable takes value `c`. An implementation is a labelled
//! root-to-terminal path, written as a pair of words: the variables visited
//! and the edge constants followed by the terminal value, e.g. `(213,0100)`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::bits;
use crate::error::{Error, Result};
use crate::kfun::{KFunction, VarSet};
use crate::separability::{self, distributive_sets, s_systems};

pub type NodeId = usize;

/// Default bound on `ess(f)` for enumerating all `ess(f)!` orderings.
pub const DEFAULT_ORDERING_LIMIT: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Terminal(u8),
    Internal { var: usize, children: Vec<NodeId> },
}

/// An ordered decision diagram. Nodes live in an arena; `root` is the node
/// the function node points at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedDiagram {
    k: u8,
    n: usize,
    ordering: Vec<usize>,
    nodes: Vec<Node>,
    root: NodeId,
    reduced: bool,
}

/// Which reduction rules [`reduce_with`] applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReductionRules {
    pub merge_duplicates: bool,
    pub remove_redundant: bool,
}

impl Default for ReductionRules {
    fn default() -> Self {
        ReductionRules { merge_duplicates: true, remove_redundant: true }
    }
}

fn check_ordering(n: usize, ordering: &[usize]) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if ordering.len() != n {
        return Err(Error::InvalidOrdering(format!("expected a permutation of 1..={n}, got {ordering:?}")));
    }
    for &i in ordering {
        if !(1..=n).contains(&i) || seen[i] {
            return Err(Error::InvalidOrdering(format!("expected a permutation of 1..={n}, got {ordering:?}")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Parses `"1,2,3"`, `"<1;2;3>"` or `"123"` (single digits only).
pub fn parse_ordering(text: &str) -> Result<Vec<usize>> {
    let t = text.trim().trim_start_matches(['<', '⟨']).trim_end_matches(['>', '⟩']);
    let parts: Vec<&str> = if t.contains([',', ';', ' ']) {
        t.split([',', ';', ' ']).map(str::trim).filter(|s| !s.is_empty()).collect()
    } else {
        t.split("").filter(|s| !s.is_empty()).collect()
    };
    parts
        .iter()
        .map(|p| p.trim_start_matches('x').parse::<usize>().map_err(|_| Error::InvalidOrdering(format!("bad entry `{p}`"))))
        .collect()
}

/// Extends an ordering of some variables with the remaining ones in
/// increasing order, giving a permutation of `1..=n`.
pub fn complete_ordering(n: usize, prefix: &[usize]) -> Vec<usize> {
    let mut out = prefix.to_vec();
    out.extend((1..=n).filter(|i| !prefix.contains(i)));
    out
}

/// The complete decomposition tree of `f` under `ordering`.
pub fn build_odt(f: &KFunction, ordering: &[usize]) -> Result<OrderedDiagram> {
    check_ordering(f.n(), ordering)?;
    let mut nodes = Vec::new();
    let mut point = vec![0u8; f.n()];
    let root = odt_rec(f, ordering, 0, &mut point, &mut nodes);
    Ok(OrderedDiagram { k: f.k(), n: f.n(), ordering: ordering.to_vec(), nodes, root, reduced: false })
}

fn odt_rec(f: &KFunction, ordering: &[usize], level: usize, point: &mut [u8], nodes: &mut Vec<Node>) -> NodeId {
    if level == ordering.len() {
        nodes.push(Node::Terminal(f.eval(point).expect("complete point")));
        return nodes.len() - 1;
    }
    let var = ordering[level];
    let children = (0..f.k())
        .map(|c| {
            point[var - 1] = c;
            odt_rec(f, ordering, level + 1, point, nodes)
        })
        .collect();
    point[var - 1] = 0;
    nodes.push(Node::Internal { var, children });
    nodes.len() - 1
}

/// Applies both reduction rules until neither applies.
pub fn reduce(d: &OrderedDiagram) -> OrderedDiagram {
    reduce_with(d, ReductionRules::default())
}

/// Reduction with individually switchable rules. Disabling a rule gives a
/// deliberately broken diagram, used as a negative control.
pub fn reduce_with(d: &OrderedDiagram, rules: ReductionRules) -> OrderedDiagram {
    let mut b = Builder::new(rules);
    let mut memo: HashMap<NodeId, NodeId> = HashMap::new();
    let root = reduce_rec(d, d.root, &mut b, &mut memo);
    OrderedDiagram { k: d.k, n: d.n, ordering: d.ordering.clone(), nodes: b.nodes, root, reduced: true }
}

fn reduce_rec(d: &OrderedDiagram, id: NodeId, b: &mut Builder, memo: &mut HashMap<NodeId, NodeId>) -> NodeId {
    if let Some(&r) = memo.get(&id) {
        return r;
    }
    let r = match &d.nodes[id] {
        Node::Terminal(v) => b.terminal(*v),
        Node::Internal { var, children } => {
            let kids: Vec<NodeId> = children.iter().map(|&c| reduce_rec(d, c, b, memo)).collect();
            b.internal(*var, kids)
        }
    };
    memo.insert(id, r);
    r
}

struct Builder {
    rules: ReductionRules,
    nodes: Vec<Node>,
    unique: HashMap<Node, NodeId>,
}

impl Builder {
    fn new(rules: ReductionRules) -> Self {
        Builder { rules, nodes: Vec::new(), unique: HashMap::new() }
    }

    fn push(&mut self, node: Node) -> NodeId {
        if self.rules.merge_duplicates {
            if let Some(&id) = self.unique.get(&node) {
                return id;
            }
            self.unique.insert(node.clone(), self.nodes.len());
        }
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    fn terminal(&mut self, v: u8) -> NodeId {
        self.push(Node::Terminal(v))
    }

    fn internal(&mut self, var: usize, children: Vec<NodeId>) -> NodeId {
        if self.rules.remove_redundant && children.iter().all(|&c| c == children[0]) {
            return children[0];
        }
        self.push(Node::Internal { var, children })
    }
}

/// Builds the reduced diagram directly from cofactors, without the
/// intermediate tree. Produces the same arena as `reduce(build_odt(..))`.
pub fn build_odd(f: &KFunction, ordering: &[usize]) -> Result<OrderedDiagram> {
    check_ordering(f.n(), ordering)?;
    let mut b = Builder::new(ReductionRules::default());
    let mut memo: HashMap<(usize, KFunction), NodeId> = HashMap::new();
    let root = odd_rec(f.clone(), ordering, 0, &mut b, &mut memo);
    Ok(OrderedDiagram { k: f.k(), n: f.n(), ordering: ordering.to_vec(), nodes: b.nodes, root, reduced: true })
}

fn odd_rec(
    g: KFunction,
    ordering: &[usize],
    level: usize,
    b: &mut Builder,
    memo: &mut HashMap<(usize, KFunction), NodeId>,
) -> NodeId {
    if level == ordering.len() {
        return b.terminal(g.values()[0]);
    }
    let key = (level, g);
    if let Some(&id) = memo.get(&key) {
        return id;
    }
    let g = &key.1;
    let var = ordering[level];
    let children: Vec<NodeId> =
        (0..g.k()).map(|c| odd_rec(g.cofactor_unchecked(var, c), ordering, level + 1, b, memo)).collect();
    let id = b.internal(var, children);
    memo.insert(key, id);
    id
}

impl OrderedDiagram {
    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn internal_count(&self) -> usize {
        self.nodes.iter().filter(|n| matches!(n, Node::Internal { .. })).count()
    }

    pub fn terminal_count(&self) -> usize {
        self.nodes.len() - self.internal_count()
    }

    /// Follows the path selected by `point` and returns the terminal value.
    pub fn evaluate(&self, point: &[u8]) -> Result<u8> {
        if point.len() != self.n {
            return Err(Error::PointLength { expected: self.n, got: point.len() });
        }
        let mut id = self.root;
        loop {
            match &self.nodes[id] {
                Node::Terminal(v) => return Ok(*v),
                Node::Internal { var, children } => {
                    let a = point[var - 1];
                    if a >= self.k {
                        return Err(Error::ValueOutOfRange { value: a as u32, k: self.k });
                    }
                    id = children[a as usize];
                }
            }
        }
    }

    /// One line per node, in arena order. Equal strings mean isomorphic
    /// diagrams for arenas built by this module.
    pub fn canonical_string(&self) -> String {
        let mut s = format!("k={} n={} root={}\n", self.k, self.n, self.root);
        for (i, node) in self.nodes.iter().enumerate() {
            match node {
                Node::Terminal(v) => writeln!(s, "{i}: T{v}").unwrap(),
                Node::Internal { var, children } => writeln!(s, "{i}: x{var} {children:?}").unwrap(),
            }
        }
        s
    }
}

/// Variables labelling internal nodes of a reduced diagram.
pub fn diagram_labels(d: &OrderedDiagram) -> Result<VarSet> {
    if !d.reduced {
        return Err(Error::NotReduced);
    }
    Ok(d.nodes
        .iter()
        .filter_map(|n| match n {
            Node::Internal { var, .. } => Some(*var),
            Node::Terminal(_) => None,
        })
        .collect())
}

/// A labelled root-to-terminal path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Implementation {
    pub vars: Vec<usize>,
    pub consts: Vec<u8>,
    pub output: u8,
}

impl Implementation {
    /// The variable word, e.g. `213`. Indices above 9 are dot-separated.
    pub fn vars_word(&self) -> String {
        word(self.vars.iter().map(|&v| v as u32))
    }

    /// The constants word including the terminal value, e.g. `0100`.
    pub fn consts_word(&self) -> String {
        word(self.consts.iter().chain(std::iter::once(&self.output)).map(|&v| v as u32))
    }

    /// Parses the pair notation `(213,0100)`.
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim().trim_start_matches('(').trim_end_matches(')');
        let (v, c) = t.split_once(',').ok_or_else(|| Error::Format(format!("bad implementation `{text}`")))?;
        let split = |w: &str| -> Result<Vec<u32>> {
            let w = w.trim();
            let parts: Vec<&str> = if w.contains('.') { w.split('.').collect() } else { w.split("").filter(|s| !s.is_empty()).collect() };
            parts.iter().map(|p| p.parse::<u32>().map_err(|_| Error::Format(format!("bad word `{w}`")))).collect()
        };
        let vars: Vec<usize> = split(v)?.into_iter().map(|x| x as usize).collect();
        let mut consts: Vec<u8> = split(c)?.into_iter().map(|x| x as u8).collect();
        let output = consts.pop().ok_or_else(|| Error::Format(format!("missing output in `{text}`")))?;
        if consts.len() != vars.len() {
            return Err(Error::Format(format!("words of `{text}` have mismatched lengths")));
        }
        Ok(Implementation { vars, consts, output })
    }
}

fn word(items: impl Iterator<Item = u32>) -> String {
    let v: Vec<u32> = items.collect();
    if v.iter().all(|&x| x < 10) {
        v.iter().map(|x| x.to_string()).collect()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(".")
    }
}

impl fmt::Display for Implementation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.vars_word(), self.consts_word())
    }
}

#[derive(Serialize, Deserialize)]
struct ImplementationRecord {
    vars: String,
    consts: String,
}

impl Serialize for Implementation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ImplementationRecord { vars: self.vars_word(), consts: self.consts_word() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Implementation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ImplementationRecord::deserialize(d)?;
        Implementation::parse(&format!("({},{})", r.vars, r.consts)).map_err(serde::de::Error::custom)
    }
}

/// `Imp(D)`: every labelled path of a reduced diagram.
pub fn implementations_of(d: &OrderedDiagram) -> Result<BTreeSet<Implementation>> {
    if !d.reduced {
        return Err(Error::NotReduced);
    }
    let mut out = BTreeSet::new();
    let mut vars = Vec::new();
    let mut consts = Vec::new();
    collect_paths(d, d.root, &mut vars, &mut consts, &mut out);
    Ok(out)
}

fn collect_paths(
    d: &OrderedDiagram,
    id: NodeId,
    vars: &mut Vec<usize>,
    consts: &mut Vec<u8>,
    out: &mut BTreeSet<Implementation>,
) {
    match &d.nodes[id] {
        Node::Terminal(v) => {
            out.insert(Implementation { vars: vars.clone(), consts: consts.clone(), output: *v });
        }
        Node::Internal { var, children } => {
            vars.push(*var);
            for (c, &child) in children.iter().enumerate() {
                consts.push(c as u8);
                collect_paths(d, child, vars, consts, out);
                consts.pop();
            }
            vars.pop();
        }
    }
}

/// `imp(D)`, the number of labelled paths.
pub fn path_count(d: &OrderedDiagram) -> u64 {
    let mut memo = vec![None; d.nodes.len()];
    count_paths(d, d.root, &mut memo)
}

fn count_paths(d: &OrderedDiagram, id: NodeId, memo: &mut Vec<Option<u64>>) -> u64 {
    if let Some(v) = memo[id] {
        return v;
    }
    let v = match &d.nodes[id] {
        Node::Terminal(_) => 1,
        Node::Internal { children, .. } => children.iter().map(|&c| count_paths(d, c, memo)).sum(),
    };
    memo[id] = Some(v);
    v
}

/// All orderings of `vars` (as a list), lexicographic.
pub fn permutations(vars: &[usize]) -> Vec<Vec<usize>> {
    if vars.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (pos, &v) in vars.iter().enumerate() {
        let mut rest = vars.to_vec();
        rest.remove(pos);
        for mut tail in permutations(&rest) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

/// `Imp(f)`: the union of `Imp(D)` over diagrams for every ordering of
/// `Ess(f)`.
pub fn implementations(f: &KFunction) -> Result<BTreeSet<Implementation>> {
    implementations_with_limit(f, DEFAULT_ORDERING_LIMIT)
}

pub fn implementations_with_limit(f: &KFunction, max_ess: usize) -> Result<BTreeSet<Implementation>> {
    let ess: Vec<usize> = f.essential_set().iter().collect();
    if ess.len() > max_ess {
        return Err(Error::Budget(format!("ess(f) = {} exceeds the ordering limit {max_ess}", ess.len())));
    }
    let mut out = BTreeSet::new();
    for perm in permutations(&ess) {
        let d = build_odd(f, &complete_ordering(f.n(), &perm))?;
        out.extend(implementations_of(&d)?);
    }
    Ok(out)
}

/// `imp(f)`. Boolean functions use the cofactor recursion; other radices
/// count `Imp(f)` by enumeration.
pub fn imp_count(f: &KFunction) -> Result<u64> {
    if f.k() == 2 {
        if let Some(t) = f.to_bits() {
            return Ok(bits::imp_count(t, f.n(), &mut HashMap::new()));
        }
        return Ok(imp_by_recursion(f));
    }
    Ok(implementations(f)?.len() as u64)
}

/// The cofactor recursion `imp(f) = Σ_{x ∈ Ess(f)} Σ_{c ∈ Z_k} imp(f(x = c))`
/// with `imp = 1` for constants. Proven for `k = 2`; for larger radices it
/// is an experimental cross-check against [`implementations`].
pub fn imp_by_recursion(f: &KFunction) -> u64 {
    let mut memo = HashMap::new();
    imp_rec(f, &mut memo)
}

fn imp_rec(f: &KFunction, memo: &mut HashMap<KFunction, u64>) -> u64 {
    let ess = f.essential_set();
    match ess.len() {
        0 => return 1,
        1 => return f.k() as u64,
        _ => {}
    }
    if let Some(&v) = memo.get(f) {
        return v;
    }
    let total = ess.iter().map(|i| (0..f.k()).map(|c| imp_rec(&f.cofactor_unchecked(i, c), memo)).sum::<u64>()).sum();
    memo.insert(f.clone(), total);
    total
}

/// Edges on the longest path from the function node to a terminal.
pub fn depth(d: &OrderedDiagram) -> Result<usize> {
    if !d.reduced {
        return Err(Error::NotReduced);
    }
    let mut memo = vec![None; d.nodes.len()];
    Ok(1 + height(d, d.root, &mut memo))
}

fn height(d: &OrderedDiagram, id: NodeId, memo: &mut Vec<Option<usize>>) -> usize {
    if let Some(h) = memo[id] {
        return h;
    }
    let h = match &d.nodes[id] {
        Node::Terminal(_) => 0,
        Node::Internal { children, .. } => 1 + children.iter().map(|&c| height(d, c, memo)).max().unwrap_or(0),
    };
    memo[id] = Some(h);
    h
}

/// An ordering whose reduced diagram has a path through every essential
/// variable (depth `ess(f) + 1`).
///
/// Picks an essential variable `v`, a subfunction whose only essential
/// variable is `v`, and a chain of subfunctions from it up to `f`. Fixing
/// the chain variables top-down and ending with `v` visits all of them.
/// Falls back to exhaustive search over orderings.
pub fn find_full_depth_ordering(f: &KFunction) -> Result<Vec<usize>> {
    let ess = f.essential_set();
    let target = ess.len() + 1;
    if ess.is_empty() {
        return Err(Error::EmptySet);
    }
    for v in ess.iter() {
        if let Some(order) = chain_ordering(f, ess, v)? {
            let full = complete_ordering(f.n(), &order);
            if depth(&build_odd(f, &full)?)? == target {
                return Ok(full);
            }
        }
    }
    let members: Vec<usize> = ess.iter().collect();
    if members.len() > DEFAULT_ORDERING_LIMIT {
        return Err(Error::Budget("no chain ordering found and exhaustive search is too large".into()));
    }
    for perm in permutations(&members) {
        let full = complete_ordering(f.n(), &perm);
        if depth(&build_odd(f, &full)?)? == target {
            return Ok(full);
        }
    }
    Err(Error::Unsupported("no full-depth ordering exists".into()))
}

fn chain_ordering(f: &KFunction, ess: VarSet, v: usize) -> Result<Option<Vec<usize>>> {
    let rest = ess.without(v);
    let single = crate::kfun::PartialAssignment::all_over(rest, f.k())
        .map(|a| f.restrict(&a).expect("valid"))
        .find(|g| g.essential_set() == VarSet::singleton(v));
    let Some(g) = single else { return Ok(None) };
    let chain = separability::subfunction_chain(f, &g)?;
    let mut order = Vec::with_capacity(ess.len());
    for pair in chain.windows(2).rev() {
        let added = pair[1].essential_set().difference(pair[0].essential_set());
        order.extend(added.iter());
    }
    order.push(v);
    Ok(Some(order))
}

/// For an inseparable `M ⊂ Ess(f)`, an ordering whose diagram is shallower
/// than `ess(f) + 1`.
///
/// Orderings headed by a member of an s-system of `Dis(M, f)` are tried
/// first, then every ordering of `Ess(f)`.
pub fn find_shallow_ordering(f: &KFunction, m: VarSet) -> Result<Vec<usize>> {
    if m.is_empty() {
        return Err(Error::EmptySet);
    }
    if separability::is_separable(f, m)? {
        return Err(Error::Separable(m.to_string()));
    }
    let ess = f.essential_set();
    if ess.len() > DEFAULT_ORDERING_LIMIT {
        return Err(Error::TooLarge { k: f.k(), n: ess.len(), limit: DEFAULT_ORDERING_LIMIT as u64 });
    }
    let target = ess.len() + 1;
    let dis = distributive_sets(m, f)?;
    let mut heads: Vec<usize> = s_systems(&dis).iter().flat_map(|b| b.iter()).collect();
    heads.sort_unstable();
    heads.dedup();
    let mut tried = HashSet::new();
    let members: Vec<usize> = ess.iter().collect();
    let headed = heads.iter().flat_map(|&h| {
        permutations(&ess.without(h).iter().collect::<Vec<_>>()).into_iter().map(move |mut p| {
            p.insert(0, h);
            p
        })
    });
    for perm in headed.chain(permutations(&members)) {
        if !tried.insert(perm.clone()) {
            continue;
        }
        let full = complete_ordering(f.n(), &perm);
        if depth(&build_odd(f, &full)?)? < target {
            return Ok(full);
        }
    }
    Err(Error::Unsupported(format!("every ordering reaches depth {target} although {m} is inseparable")))
}

/// Graphviz text. Binary diagrams draw value-1 edges solid and value-0
/// edges dashed; larger radices label edges with their value.
pub fn to_dot(d: &OrderedDiagram) -> String {
    let mut s = String::from("digraph odd {\n");
    s.push_str("  f [shape=point, label=\"\"];\n");
    for (i, node) in d.nodes.iter().enumerate() {
        match node {
            Node::Terminal(v) => writeln!(s, "  n{i} [shape=box, label=\"{v}\"];").unwrap(),
            Node::Internal { var, .. } => writeln!(s, "  n{i} [shape=circle, label=\"x{var}\"];").unwrap(),
        }
    }
    writeln!(s, "  f -> n{};", d.root).unwrap();
    for (i, node) in d.nodes.iter().enumerate() {
        if let Node::Internal { children, .. } = node {
            for (c, &child) in children.iter().enumerate() {
                if d.k == 2 {
                    let style = if c == 1 { "solid" } else { "dashed" };
                    writeln!(s, "  n{i} -> n{child} [style={style}];").unwrap();
                } else {
                    writeln!(s, "  n{i} -> n{child} [label=\"{c}\"];").unwrap();
                }
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Implementations whose variable word ends with exactly the members of `m`.
pub fn has_suffix_implementation(imps: &BTreeSet<Implementation>, m: VarSet) -> bool {
    let len = m.len();
    imps.iter().any(|imp| {
        imp.vars.len() >= len && imp.vars[imp.vars.len() - len..].iter().copied().collect::<VarSet>() == m
    })
}

/// Distinct reduced diagrams of `f` over all orderings of `Ess(f)`.
pub fn distinct_diagram_count(f: &KFunction) -> Result<usize> {
    let ess: Vec<usize> = f.essential_set().iter().collect();
    let mut seen = HashSet::new();
    for perm in permutations(&ess) {
        let d = build_odd(f, &complete_ordering(f.n(), &perm))?;
        seen.insert(implementations_of(&d)?);
    }
    Ok(seen.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f_ex() -> KFunction {
        KFunction::from_fn(2, 3, |p| (p[0] & p[1]) ^ (p[0] & p[2])).unwrap()
    }

    fn g_ex() -> KFunction {
        KFunction::from_fn(2, 3, |p| if p[0] == 1 { p[1] } else { p[2] }).unwrap()
    }

    fn imps(list: &[&str]) -> BTreeSet<Implementation> {
        list.iter().map(|s| Implementation::parse(s).unwrap()).collect()
    }

    #[test]
    fn odt_shape() {
        let t = build_odt(&g_ex(), &[1, 2, 3]).unwrap();
        assert_eq!(t.terminal_count(), 8);
        assert!(!t.is_reduced());
        // leaves along x1, x2, x3 branches
        let leaves: Vec<u8> = t.nodes().iter().filter_map(|n| if let Node::Terminal(v) = n { Some(*v) } else { None }).collect();
        assert_eq!(leaves, vec![0, 1, 0, 1, 0, 0, 1, 1]);
        let c = build_odt(&KFunction::constant(2, 0, 0).unwrap(), &[]).unwrap();
        assert_eq!(c.nodes(), &[Node::Terminal(0)]);
        let x = build_odt(&KFunction::variable(3, 1, 1).unwrap(), &[1]).unwrap();
        assert_eq!((x.internal_count(), x.terminal_count()), (1, 3));
        assert!(build_odt(&g_ex(), &[1, 1, 2]).is_err());
    }

    #[test]
    fn reduced_example_diagrams() {
        let dg = reduce(&build_odt(&g_ex(), &[1, 2, 3]).unwrap());
        assert_eq!(path_count(&dg), 4);
        assert_eq!(depth(&dg).unwrap(), 3);
        assert_eq!(implementations_of(&dg).unwrap(), imps(&["(13,000)", "(13,011)", "(12,100)", "(12,111)"]));
        let df = reduce(&build_odt(&f_ex(), &[1, 2, 3]).unwrap());
        assert_eq!(path_count(&df), 5);
        assert_eq!(depth(&df).unwrap(), 4);
        assert_eq!(
            implementations_of(&df).unwrap(),
            imps(&["(1,00)", "(123,1000)", "(123,1011)", "(123,1101)", "(123,1110)"])
        );
        let df213 = build_odd(&f_ex(), &[2, 1, 3]).unwrap();
        assert_eq!(
            implementations_of(&df213).unwrap(),
            imps(&["(21,000)", "(213,0100)", "(213,0111)", "(21,100)", "(213,1101)", "(213,1110)"])
        );
        let dg213 = build_odd(&g_ex(), &[2, 1, 3]).unwrap();
        assert_eq!(
            implementations_of(&dg213).unwrap(),
            imps(&["(21,010)", "(213,0000)", "(213,0011)", "(213,1000)", "(213,1011)", "(21,111)"])
        );
        let dc = reduce(&build_odt(&KFunction::constant(2, 2, 1).unwrap(), &[1, 2]).unwrap());
        assert_eq!(dc.nodes(), &[Node::Terminal(1)]);
        assert_eq!(depth(&dc).unwrap(), 1);
        assert_eq!(implementations_of(&dc).unwrap(), imps(&["(,1)"]));
    }

    #[test]
    fn direct_build_matches_reduction() {
        for t in 0..256u64 {
            let f = KFunction::from_bits(3, t).unwrap();
            for o in permutations(&[1, 2, 3]) {
                let a = reduce(&build_odt(&f, &o).unwrap());
                let b = build_odd(&f, &o).unwrap();
                assert_eq!(a, b);
                assert_eq!(reduce(&a), a);
            }
        }
    }

    #[test]
    fn labels() {
        let dg = build_odd(&g_ex(), &[3, 1, 2]).unwrap();
        assert_eq!(diagram_labels(&dg).unwrap(), VarSet::full(3));
        let xor = KFunction::from_fn(2, 3, |p| p[0] ^ p[1]).unwrap();
        assert_eq!(diagram_labels(&build_odd(&xor, &[3, 2, 1]).unwrap()).unwrap(), VarSet::parse("1,2").unwrap());
        let c = KFunction::constant(2, 2, 0).unwrap();
        assert!(diagram_labels(&build_odd(&c, &[1, 2]).unwrap()).unwrap().is_empty());
        assert!(matches!(diagram_labels(&build_odt(&c, &[1, 2]).unwrap()), Err(Error::NotReduced)));
    }

    #[test]
    fn implementation_counts() {
        assert_eq!(implementations(&f_ex()).unwrap().len(), 33);
        assert_eq!(implementations(&g_ex()).unwrap().len(), 28);
        let xor = KFunction::from_fn(2, 2, |p| p[0] ^ p[1]).unwrap();
        assert_eq!(implementations(&xor).unwrap().len(), 8);
        assert_eq!(imp_count(&f_ex()).unwrap(), 33);
        let and3 = KFunction::from_fn(2, 3, |p| p[0] & p[1] & p[2]).unwrap();
        assert_eq!(imp_count(&and3).unwrap(), 21);
        let h = KFunction::from_fn(2, 3, |p| (p[0] & (1 - p[1]) & (1 - p[2])) ^ p[0]).unwrap();
        assert_eq!(imp_count(&h).unwrap(), 23);
        assert_eq!(imp_by_recursion(&h), 23);
        assert_eq!(distinct_diagram_count(&f_ex()).unwrap(), 6);
        assert_eq!(distinct_diagram_count(&g_ex()).unwrap(), 5);
    }

    #[test]
    fn ternary_recursion_agrees_with_enumeration() {
        for id in (0..19683u128).step_by(37) {
            let f = KFunction::from_id(3, 2, id).unwrap();
            assert_eq!(imp_by_recursion(&f), implementations(&f).unwrap().len() as u64, "{f:?}");
        }
    }

    #[test]
    fn depth_searches() {
        let o = find_full_depth_ordering(&f_ex()).unwrap();
        assert_eq!(depth(&build_odd(&f_ex(), &o).unwrap()).unwrap(), 4);
        let x1 = KFunction::variable(2, 1, 1).unwrap();
        assert_eq!(find_full_depth_ordering(&x1).unwrap(), vec![1]);
        let o = find_full_depth_ordering(&g_ex()).unwrap();
        assert_eq!(depth(&build_odd(&g_ex(), &o).unwrap()).unwrap(), 4);

        let m = VarSet::parse("2,3").unwrap();
        let o = find_shallow_ordering(&g_ex(), m).unwrap();
        assert_eq!(o[0], 1);
        assert_eq!(depth(&build_odd(&g_ex(), &o).unwrap()).unwrap(), 3);
        assert!(matches!(find_shallow_ordering(&f_ex(), m), Err(Error::Separable(_))));
    }

    #[test]
    fn dot_output() {
        let dg = build_odd(&g_ex(), &[1, 2, 3]).unwrap();
        let dot = to_dot(&dg);
        assert_eq!(dot.matches("shape=circle").count(), 3);
        assert_eq!(dot.matches("shape=box").count(), 2);
        assert!(dot.contains("style=dashed") && dot.contains("style=solid"));
        let df = build_odd(&f_ex(), &[1, 2, 3]).unwrap();
        assert_eq!(to_dot(&df).matches("shape=circle").count(), 4);
        let c = build_odd(&KFunction::constant(2, 1, 0).unwrap(), &[1]).unwrap();
        let dot = to_dot(&c);
        assert_eq!(dot.matches("shape=box").count(), 1);
        assert_eq!(dot.matches("shape=circle").count(), 0);
        let t = build_odd(&KFunction::variable(3, 1, 1).unwrap(), &[1]).unwrap();
        assert!(to_dot(&t).contains("label=\"2\""));
    }

    #[test]
    fn implementation_notation() {
        let imp = Implementation::parse("(213,0100)").unwrap();
        assert_eq!(imp.vars, vec![2, 1, 3]);
        assert_eq!(imp.consts, vec![0, 1, 0]);
        assert_eq!(imp.output, 0);
        assert_eq!(imp.to_string(), "(213,0100)");
        let json = serde_json::to_string(&imp).unwrap();
        assert_eq!(json, r#"{"vars":"213","consts":"0100"}"#);
        assert_eq!(serde_json::from_str::<Implementation>(&json).unwrap(), imp);
        assert!(Implementation::parse("(21,0)").is_err());
    }
}
