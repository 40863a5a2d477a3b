// SPDX-License-Identifier: Apache-2.0

//! Brute-force reference implementations that share no code with the
//! library. Functions are plain value tables in little-endian point order.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Table {
    pub k: u8,
    pub n: usize,
    pub v: Vec<u8>,
}

impl Table {
    pub fn new(k: u8, n: usize, v: Vec<u8>) -> Self {
        assert_eq!(v.len(), (k as usize).pow(n as u32));
        Table { k, n, v }
    }

    /// Boolean table from a hex numeral whose least significant bit is point 0.
    pub fn hex(text: &str, n: usize) -> Self {
        let bits = u64::from_str_radix(text, 16).unwrap();
        Table::new(2, n, (0..1usize << n).map(|i| ((bits >> i) & 1) as u8).collect())
    }

    pub fn point(&self, mut idx: usize) -> Vec<u8> {
        (0..self.n)
            .map(|_| {
                let a = (idx % self.k as usize) as u8;
                idx /= self.k as usize;
                a
            })
            .collect()
    }

    pub fn index(&self, p: &[u8]) -> usize {
        p.iter().rev().fold(0, |acc, &a| acc * self.k as usize + a as usize)
    }

    /// Fix variable `i` (1-based) to `c`, keeping the arity.
    pub fn fix(&self, i: usize, c: u8) -> Table {
        let v = (0..self.v.len())
            .map(|idx| {
                let mut p = self.point(idx);
                p[i - 1] = c;
                self.v[self.index(&p)]
            })
            .collect();
        Table { k: self.k, n: self.n, v }
    }

    pub fn essential(&self, i: usize) -> bool {
        (0..self.v.len()).any(|idx| {
            let p = self.point(idx);
            (0..self.k).any(|c| {
                let mut q = p.clone();
                q[i - 1] = c;
                self.v[self.index(&q)] != self.v[idx]
            })
        })
    }

    pub fn ess(&self) -> BTreeSet<usize> {
        (1..=self.n).filter(|&i| self.essential(i)).collect()
    }

    pub fn is_constant(&self) -> bool {
        self.v.iter().all(|&x| x == self.v[0])
    }

    /// Every restriction to a partial assignment.
    pub fn restrictions(&self) -> BTreeSet<Table> {
        let mut out = BTreeSet::new();
        let choices = self.k as usize + 1;
        for code in 0..choices.pow(self.n as u32) {
            let mut t = self.clone();
            let mut c = code;
            for i in 1..=self.n {
                let a = c % choices;
                c /= choices;
                if a > 0 {
                    t = t.fix(i, (a - 1) as u8);
                }
            }
            out.insert(t);
        }
        out
    }

    /// `(sub_0, ..., sub_n)`.
    pub fn sub_vector(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.n + 1];
        for t in self.restrictions() {
            v[t.ess().len()] += 1;
        }
        v
    }

    pub fn sep_sets(&self) -> BTreeSet<BTreeSet<usize>> {
        self.restrictions().into_iter().map(|t| t.ess()).filter(|s| !s.is_empty()).collect()
    }

    /// `(sep_1, ..., sep_n)`.
    pub fn sep_vector(&self) -> Vec<u64> {
        let mut v = vec![0u64; self.n];
        for s in self.sep_sets() {
            v[s.len() - 1] += 1;
        }
        v
    }

    /// Labelled paths of the reduced diagram for every variable ordering.
    pub fn implementations(&self) -> BTreeSet<(Vec<usize>, Vec<u8>)> {
        let mut out = BTreeSet::new();
        for order in permutations((1..=self.n).collect()) {
            self.walk(&order, &mut Vec::new(), &mut Vec::new(), &mut out);
        }
        out
    }

    fn walk(&self, order: &[usize], vars: &mut Vec<usize>, consts: &mut Vec<u8>, out: &mut BTreeSet<(Vec<usize>, Vec<u8>)>) {
        if self.is_constant() {
            let mut c = consts.clone();
            c.push(self.v[0]);
            out.insert((vars.clone(), c));
            return;
        }
        let pos = order.iter().position(|&x| self.essential(x)).unwrap();
        let x = order[pos];
        for c in 0..self.k {
            vars.push(x);
            consts.push(c);
            self.fix(x, c).walk(&order[pos + 1..], vars, consts, out);
            vars.pop();
            consts.pop();
        }
    }

    pub fn imp(&self) -> u64 {
        self.implementations().len() as u64
    }

    /// Minimal sets `J` outside `m` such that each assignment to `J` makes
    /// some member of `m` inessential.
    pub fn distributive_sets(&self, m: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
        let rest: Vec<usize> = (1..=self.n).filter(|i| !m.contains(i)).collect();
        let mut hits: Vec<BTreeSet<usize>> = Vec::new();
        for mask in 1u32..1 << rest.len() {
            let j: Vec<usize> = rest.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &x)| x).collect();
            let all_kill = (0..(self.k as usize).pow(j.len() as u32)).all(|code| {
                let mut t = self.clone();
                let mut c = code;
                for &x in &j {
                    t = t.fix(x, (c % self.k as usize) as u8);
                    c /= self.k as usize;
                }
                let e = t.ess();
                !m.is_subset(&e)
            });
            if all_kill {
                hits.push(j.into_iter().collect());
            }
        }
        let minimal: Vec<BTreeSet<usize>> =
            hits.iter().filter(|a| !hits.iter().any(|b| b != *a && b.is_subset(a))).cloned().collect();
        minimal
    }
}

pub fn permutations(v: Vec<usize>) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v];
    }
    let mut out = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.clone();
        let x = rest.remove(i);
        for mut p in permutations(rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every table of `P_k^n`.
pub fn space(k: u8, n: usize) -> Vec<Table> {
    let len = (k as usize).pow(n as u32);
    let total = (k as usize).pow(len as u32);
    (0..total)
        .map(|mut id| {
            Table::new(
                k,
                n,
                (0..len)
                    .map(|_| {
                        let a = (id % k as usize) as u8;
                        id /= k as usize;
                        a
                    })
                    .collect(),
            )
        })
        .collect()
}

/// Class sizes of a keyed partition, sorted.
pub fn class_sizes<K: Ord>(keys: impl IntoIterator<Item = K>) -> Vec<u64> {
    let mut m: BTreeMap<K, u64> = BTreeMap::new();
    for key in keys {
        *m.entry(key).or_default() += 1;
    }
    let mut v: Vec<u64> = m.into_values().collect();
    v.sort();
    v
}

/// Relabel a Boolean table by a variable permutation, constant shift and
/// output negation: `g(x) = f(x_perm ^ shift) ^ neg`.
pub fn genus_image(t: &Table, perm: &[usize], shift: &[u8], neg: u8) -> Table {
    let v = (0..t.v.len())
        .map(|idx| {
            let p = t.point(idx);
            let q: Vec<u8> = (0..t.n).map(|i| p[perm[i]] ^ shift[i]).collect();
            t.v[t.index(&q)] ^ neg
        })
        .collect();
    Table { k: 2, n: t.n, v }
}

/// Number of orbits of the genus group on `P_2^n`.
pub fn genus_orbits(n: usize) -> u64 {
    let mut seen = BTreeSet::new();
    let mut orbits = 0;
    let perms = permutations((0..n).collect());
    for t in space(2, n) {
        if seen.contains(&t.v) {
            continue;
        }
        orbits += 1;
        for p in &perms {
            for s in 0..1u32 << n {
                let shift: Vec<u8> = (0..n).map(|i| (s >> i & 1) as u8).collect();
                for neg in 0..2 {
                    seen.insert(genus_image(&t, p, &shift, neg).v);
                }
            }
        }
    }
    orbits
}
