// SPDX-License-Identifier: Apache-2.0

//! Transformation groups acting on `P_k^n`, canonical forms and orbit counts.
//!
//! Every transformation used here acts as
//! `f'(x) = σ(f(y(x))) + L(x)` for a point map `y`, an output permutation
//! `σ` and an additive term `L`. The triple is an [`InducedAction`]; orbit
//! scans apply it to packed table ids.

use std::collections::HashSet;
use std::fmt;
use std::io::Write;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::diagram::permutations;
use crate::error::{Error, Result};
use crate::kfun::KFunction;

/// Largest space (`k^(k^n)` functions) an orbit scan will visit.
pub const MAX_SCAN_SPACE: u64 = 1 << 28;

/// Default bound on group orders and orbit sizes for explicit enumeration.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transformation {
    Identity,
    /// `f(x_{π(1)}, ..., x_{π(n)})`; `perm[j-1] = π(j)`.
    VarPerm(Vec<usize>),
    /// `f(x + c)`.
    ArgTranslate(Vec<u8>),
    /// `f(σ_1(x_{π(1)}), ..., σ_n(x_{π(n)}))`.
    VarPermValueMaps { perm: Vec<usize>, maps: Vec<Vec<u8>> },
    /// `σ(f(x))` for a permutation `σ` of `Z_k`.
    OutputMap(Vec<u8>),
    /// `f(x) + d`.
    OutputTranslate(u8),
    /// `f(x) + a·x`.
    AddLinear(Vec<u8>),
    /// `f(xA + c) + a·x + d` with `A` given by rows.
    Affine { matrix: Vec<Vec<u8>>, shift: Vec<u8>, linear: Vec<u8>, offset: u8 },
    /// Product; the last factor acts first.
    Compose(Vec<Transformation>),
}

impl Transformation {
    pub fn compose(self, inner: Transformation) -> Transformation {
        match (self, inner) {
            (Transformation::Identity, t) | (t, Transformation::Identity) => t,
            (Transformation::Compose(mut a), Transformation::Compose(b)) => {
                a.extend(b);
                Transformation::Compose(a)
            }
            (Transformation::Compose(mut a), t) => {
                a.push(t);
                Transformation::Compose(a)
            }
            (t, Transformation::Compose(mut b)) => {
                b.insert(0, t);
                Transformation::Compose(b)
            }
            (a, b) => Transformation::Compose(vec![a, b]),
        }
    }

    /// The induced `(y, σ, L)` triple on `P_k^n`.
    pub fn induced(&self, k: u8, n: usize) -> Result<InducedAction> {
        let cells = cell_count(k, n)?;
        let id = InducedAction::identity(k, n, cells);
        let dim = |what: &str, len: usize| -> Result<()> {
            if len == n {
                Ok(())
            } else {
                Err(Error::InvalidTransformation(format!("{what} has length {len}, expected {n}")))
            }
        };
        match self {
            Transformation::Identity => Ok(id),
            Transformation::VarPerm(perm) => {
                check_perm(perm, n)?;
                Ok(id.with_points(k, n, |x, y| {
                    for (j, &p) in perm.iter().enumerate() {
                        y[j] = x[p - 1];
                    }
                }))
            }
            Transformation::ArgTranslate(c) => {
                dim("translation", c.len())?;
                check_values(c, k)?;
                Ok(id.with_points(k, n, |x, y| {
                    for j in 0..n {
                        y[j] = (x[j] + c[j]) % k;
                    }
                }))
            }
            Transformation::VarPermValueMaps { perm, maps } => {
                check_perm(perm, n)?;
                dim("value map list", maps.len())?;
                for m in maps {
                    check_value_perm(m, k)?;
                }
                Ok(id.with_points(k, n, |x, y| {
                    for (j, &p) in perm.iter().enumerate() {
                        y[j] = maps[j][x[p - 1] as usize];
                    }
                }))
            }
            Transformation::OutputMap(s) => {
                check_value_perm(s, k)?;
                Ok(InducedAction { out: s.clone(), ..id })
            }
            Transformation::OutputTranslate(d) => {
                check_values(&[*d], k)?;
                Ok(InducedAction { out: (0..k).map(|v| (v + d) % k).collect(), ..id })
            }
            Transformation::AddLinear(a) => {
                dim("linear term", a.len())?;
                check_values(a, k)?;
                require_prime(k)?;
                Ok(InducedAction { add: linear_table(k, n, a, 0), ..id })
            }
            Transformation::Affine { matrix, shift, linear, offset } => {
                require_prime(k)?;
                dim("matrix", matrix.len())?;
                for row in matrix {
                    dim("matrix row", row.len())?;
                    check_values(row, k)?;
                }
                dim("shift", shift.len())?;
                dim("linear term", linear.len())?;
                check_values(shift, k)?;
                check_values(linear, k)?;
                check_values(&[*offset], k)?;
                if rank_mod_p(matrix, k) != n {
                    return Err(Error::SingularMatrix(k));
                }
                let act = id.with_points(k, n, |x, y| {
                    for j in 0..n {
                        let mut s = shift[j] as u32;
                        for i in 0..n {
                            s += x[i] as u32 * matrix[i][j] as u32;
                        }
                        y[j] = (s % k as u32) as u8;
                    }
                });
                Ok(InducedAction { add: linear_table(k, n, linear, *offset), ..act })
            }
            Transformation::Compose(parts) => {
                let mut acc = id;
                for p in parts {
                    acc = acc.compose(&p.induced(k, n)?)?;
                }
                Ok(acc)
            }
        }
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", serde_json::to_string(self).map_err(|_| fmt::Error)?)
    }
}

/// Affine composition over `Z_k`: `t1 ∘ t2 = (A1 A2, c1 A2 + c2, A1 a2 + a1, a2·c1 + d1 + d2)`.
pub fn compose_affine_mod(k: u8, t1: &Transformation, t2: &Transformation) -> Result<Transformation> {
    let (
        Transformation::Affine { matrix: a1, shift: c1, linear: l1, offset: d1 },
        Transformation::Affine { matrix: a2, shift: c2, linear: l2, offset: d2 },
    ) = (t1, t2)
    else {
        return Err(Error::InvalidTransformation("affine composition needs two affine maps".into()));
    };
    let n = a1.len();
    let k32 = k as u32;
    let matrix = (0..n)
        .map(|i| (0..n).map(|j| ((0..n).map(|m| a1[i][m] as u32 * a2[m][j] as u32).sum::<u32>() % k32) as u8).collect())
        .collect();
    let shift = (0..n)
        .map(|j| (((0..n).map(|i| c1[i] as u32 * a2[i][j] as u32).sum::<u32>() + c2[j] as u32) % k32) as u8)
        .collect();
    let linear = (0..n)
        .map(|i| (((0..n).map(|j| a1[i][j] as u32 * l2[j] as u32).sum::<u32>() + l1[i] as u32) % k32) as u8)
        .collect();
    let dot: u32 = (0..n).map(|i| l2[i] as u32 * c1[i] as u32).sum();
    let offset = ((dot + *d1 as u32 + *d2 as u32) % k32) as u8;
    Ok(Transformation::Affine { matrix, shift, linear, offset })
}

fn cell_count(k: u8, n: usize) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidRadix(k as u32));
    }
    (k as u64)
        .checked_pow(n as u32)
        .filter(|&c| c <= 1 << 26)
        .map(|c| c as usize)
        .ok_or(Error::TooLarge { k, n, limit: 1 << 26 })
}

fn check_perm(perm: &[usize], n: usize) -> Result<()> {
    let mut seen = vec![false; n + 1];
    if perm.len() != n || perm.iter().any(|&p| p == 0 || p > n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::InvalidTransformation(format!("{perm:?} is not a permutation of 1..={n}")));
    }
    Ok(())
}

fn check_values(v: &[u8], k: u8) -> Result<()> {
    match v.iter().find(|&&x| x >= k) {
        Some(&x) => Err(Error::ValueOutOfRange { value: x as u32, k }),
        None => Ok(()),
    }
}

fn check_value_perm(s: &[u8], k: u8) -> Result<()> {
    let mut seen = vec![false; k as usize];
    if s.len() != k as usize || s.iter().any(|&v| v >= k || std::mem::replace(&mut seen[v as usize], true)) {
        return Err(Error::InvalidTransformation(format!("{s:?} is not a permutation of Z_{k}")));
    }
    Ok(())
}

pub fn is_prime(k: u8) -> bool {
    k >= 2 && (2..k).take_while(|d| (*d as u32) * (*d as u32) <= k as u32).all(|d| !k.is_multiple_of(d))
}

fn require_prime(k: u8) -> Result<()> {
    if is_prime(k) {
        Ok(())
    } else {
        Err(Error::NonPrimeRadix(k))
    }
}

/// Smallest generator of the multiplicative group of `Z_p`.
pub fn primitive_root(p: u8) -> u8 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&g| {
            let mut x = 1u32;
            (1..p - 1).all(|_| {
                x = x * g as u32 % p as u32;
                x != 1
            })
        })
        .expect("prime modulus has a primitive root")
}

/// Rank of a square matrix over `Z_p`.
pub fn rank_mod_p(matrix: &[Vec<u8>], p: u8) -> usize {
    let p = p as u32;
    let mut m: Vec<Vec<u32>> = matrix.iter().map(|r| r.iter().map(|&v| v as u32 % p).collect()).collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| m[r][col] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = mod_inverse(m[rank][col], p);
        for v in m[rank].iter_mut() {
            *v = *v * inv % p;
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let factor = m[r][col];
                for c in 0..cols {
                    m[r][c] = (m[r][c] + p * p - factor * m[rank][c] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u32, p: u32) -> u32 {
    (1..p).find(|&x| a * x % p == 1).expect("nonzero element of a prime field")
}

fn linear_table(k: u8, n: usize, a: &[u8], d: u8) -> Vec<u8> {
    let cells = (k as usize).pow(n as u32);
    let mut out = Vec::with_capacity(cells);
    let mut x = vec![0u8; n];
    for _ in 0..cells {
        let s: u32 = x.iter().zip(a).map(|(&xi, &ai)| xi as u32 * ai as u32).sum::<u32>() + d as u32;
        out.push((s % k as u32) as u8);
        increment(&mut x, k);
    }
    out
}

fn increment(x: &mut [u8], k: u8) {
    for a in x.iter_mut() {
        *a += 1;
        if *a < k {
            return;
        }
        *a = 0;
    }
}

/// `f'(x) = out[f(src[x])] + add[x]` on tables of `P_k^n`. An empty `add`
/// means zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct InducedAction {
    k: u8,
    n: usize,
    src: Vec<u32>,
    out: Vec<u8>,
    add: Vec<u8>,
}

impl InducedAction {
    fn identity(k: u8, n: usize, cells: usize) -> Self {
        InducedAction { k, n, src: (0..cells as u32).collect(), out: (0..k).collect(), add: Vec::new() }
    }

    fn with_points(self, k: u8, n: usize, map: impl Fn(&[u8], &mut [u8])) -> Self {
        let mut x = vec![0u8; n];
        let mut y = vec![0u8; n];
        let src = (0..self.src.len())
            .map(|_| {
                map(&x, &mut y);
                let idx = y.iter().rev().fold(0u32, |acc, &v| acc * k as u32 + v as u32);
                increment(&mut x, k);
                idx
            })
            .collect();
        InducedAction { src, ..self }
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `src[x]` is the index of the point `y(x)`.
    pub fn point_map(&self) -> &[u32] {
        &self.src
    }

    pub fn output_map(&self) -> &[u8] {
        &self.out
    }

    pub fn additive_term(&self) -> Option<&[u8]> {
        if self.add.is_empty() {
            None
        } else {
            Some(&self.add)
        }
    }

    /// `self ∘ inner`: `inner` acts first.
    pub fn compose(&self, inner: &InducedAction) -> Result<InducedAction> {
        if self.k != inner.k || self.n != inner.n {
            return Err(Error::ShapeMismatch(format!("k={} n={}", self.k, self.n), format!("k={} n={}", inner.k, inner.n)));
        }
        let k = self.k as u32;
        let src = self.src.iter().map(|&x| inner.src[x as usize]).collect();
        let out = inner.out.iter().map(|&v| self.out[v as usize]).collect();
        let add = if inner.add.is_empty() {
            self.add.clone()
        } else {
            // σ1(u + L2) = s·(u + L2) + σ1(0) needs σ1 affine.
            let base = self.out[0] as u32;
            let s = (self.out[1] as u32 + k - base) % k;
            if (0..k).any(|v| self.out[v as usize] as u32 != (s * v + base) % k) {
                return Err(Error::InvalidTransformation("cannot fold an additive term through a non-affine output map".into()));
            }
            self.src
                .iter()
                .enumerate()
                .map(|(x, &sx)| {
                    let own = self.add.get(x).copied().unwrap_or(0) as u32;
                    ((s * inner.add[sx as usize] as u32 + own) % k) as u8
                })
                .collect()
        };
        Ok(InducedAction { k: self.k, n: self.n, src, out, add })
    }

    pub fn apply_values(&self, v: &[u8]) -> Vec<u8> {
        let k = self.k;
        if self.add.is_empty() {
            self.src.iter().map(|&s| self.out[v[s as usize] as usize]).collect()
        } else {
            self.src.iter().zip(&self.add).map(|(&s, &a)| (self.out[v[s as usize] as usize] + a) % k).collect()
        }
    }

    pub fn apply(&self, f: &KFunction) -> Result<KFunction> {
        if f.k() != self.k || f.n() != self.n {
            return Err(Error::ShapeMismatch(f.shape(), format!("k={} n={}", self.k, self.n)));
        }
        KFunction::from_values(self.k, self.n, self.apply_values(f.values()))
    }

    /// Action on a packed Boolean table (`n <= 6`).
    pub fn apply_bits(&self, t: u64) -> u64 {
        let mut r = 0u64;
        for (x, &s) in self.src.iter().enumerate() {
            r |= ((t >> s) & 1) << x;
        }
        if self.out[0] == 1 {
            r ^= crate::bits::full_mask(self.n);
        }
        if !self.add.is_empty() {
            for (x, &a) in self.add.iter().enumerate() {
                r ^= (a as u64) << x;
            }
        }
        r
    }

    /// Action on a function id (the table as a base-`k` numeral).
    pub fn apply_id(&self, id: u64, scratch: &mut Vec<u8>) -> u64 {
        if self.k == 2 {
            return self.apply_bits(id);
        }
        let k = self.k as u64;
        scratch.clear();
        let mut rest = id;
        for _ in 0..self.src.len() {
            scratch.push((rest % k) as u8);
            rest /= k;
        }
        let out = self.apply_values(scratch);
        out.iter().rev().fold(0u64, |acc, &v| acc * k + v as u64)
    }
}

/// Cycles of length at least two of a permutation given as an index map.
pub fn cycles(perm: &[u32]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut out = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cyc.push(x);
            x = perm[x] as usize;
        }
        if cyc.len() > 1 {
            out.push(cyc);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum GroupName {
    /// Variable permutations.
    S,
    /// Complementation (translation) of arguments.
    CA,
    /// Variable permutations with argument translations.
    G,
    /// `G` together with output translation.
    GE,
    /// Output translation.
    CF,
    /// Addition of linear functions.
    LF,
    /// Linear changes of variables.
    LG,
    /// Affine changes of variables.
    A,
    /// Affine changes of variables with an affine map on the output.
    AxA1,
    /// Affine changes of variables plus affine functions added to the output.
    RAG,
    /// Per-variable value permutations, variable permutations and an output
    /// permutation.
    FullSym,
}

impl GroupName {
    pub const ALL: [GroupName; 11] = [
        GroupName::S,
        GroupName::CA,
        GroupName::G,
        GroupName::GE,
        GroupName::CF,
        GroupName::LF,
        GroupName::LG,
        GroupName::A,
        GroupName::AxA1,
        GroupName::RAG,
        GroupName::FullSym,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GroupName::S => "s",
            GroupName::CA => "ca",
            GroupName::G => "g",
            GroupName::GE => "ge",
            GroupName::CF => "cf",
            GroupName::LF => "lf",
            GroupName::LG => "lg",
            GroupName::A => "a",
            GroupName::AxA1 => "axa1",
            GroupName::RAG => "rag",
            GroupName::FullSym => "fullsym",
        }
    }

    pub fn needs_prime(self) -> bool {
        matches!(self, GroupName::LF | GroupName::LG | GroupName::A | GroupName::AxA1 | GroupName::RAG)
    }
}

impl FromStr for GroupName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        GroupName::ALL
            .into_iter()
            .find(|g| g.as_str() == lower)
            .ok_or_else(|| Error::Format(format!("unknown group `{s}`")))
    }
}

impl fmt::Display for GroupName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub name: GroupName,
    pub k: u8,
    pub n: usize,
}

impl GroupDescriptor {
    pub fn new(name: GroupName, k: u8, n: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidRadix(k as u32));
        }
        if name.needs_prime() {
            require_prime(k)?;
        }
        cell_count(k, n)?;
        Ok(GroupDescriptor { name, k, n })
    }

    /// Group order, saturating at `u128::MAX`.
    pub fn order(&self) -> u128 {
        let k = self.k as u128;
        let n = self.n as u32;
        let fact = |m: u128| (1..=m).fold(1u128, |a, b| a.saturating_mul(b));
        let kn = k.saturating_pow(n);
        let gl = (0..n).fold(1u128, |acc, i| acc.saturating_mul(kn - k.pow(i)));
        match self.name {
            GroupName::S => fact(self.n as u128),
            GroupName::CA | GroupName::LF => kn,
            GroupName::G => fact(self.n as u128).saturating_mul(kn),
            GroupName::GE => fact(self.n as u128).saturating_mul(kn).saturating_mul(k),
            GroupName::CF => k,
            GroupName::LG => gl,
            GroupName::A => gl.saturating_mul(kn),
            GroupName::AxA1 => gl.saturating_mul(kn).saturating_mul(k * (k - 1)),
            GroupName::RAG => gl.saturating_mul(kn).saturating_mul(kn).saturating_mul(k),
            GroupName::FullSym => {
                fact(self.n as u128).saturating_mul(fact(k).saturating_pow(n)).saturating_mul(fact(k))
            }
        }
    }

    /// A generating set.
    pub fn generators(&self) -> Vec<Transformation> {
        let (k, n) = (self.k, self.n);
        let unit = |i: usize, v: u8| -> Vec<u8> { (0..n).map(|j| if j == i { v } else { 0 }).collect() };
        let swaps: Vec<Transformation> = (1..n)
            .map(|i| {
                let mut p: Vec<usize> = (1..=n).collect();
                p.swap(i - 1, i);
                Transformation::VarPerm(p)
            })
            .collect();
        let translations: Vec<Transformation> = (0..n).map(|i| Transformation::ArgTranslate(unit(i, 1))).collect();
        let linear_adds: Vec<Transformation> = (0..n).map(|i| Transformation::AddLinear(unit(i, 1))).collect();
        let identity_matrix = |n: usize| -> Vec<Vec<u8>> { (0..n).map(|i| unit(i, 1)).collect() };
        let zero = vec![0u8; n];
        let affine = |m: Vec<Vec<u8>>| Transformation::Affine { matrix: m, shift: zero.clone(), linear: zero.clone(), offset: 0 };
        let mut linear = swaps.clone();
        if n >= 2 {
            let mut m = identity_matrix(n);
            m[0][1] = 1;
            linear.push(affine(m));
        }
        if k > 2 && n >= 1 {
            let mut m = identity_matrix(n);
            m[0][0] = primitive_root(k);
            linear.push(affine(m));
        }
        let value_gens = |k: u8| -> Vec<Vec<u8>> {
            let mut swap: Vec<u8> = (0..k).collect();
            swap.swap(0, 1);
            let cycle: Vec<u8> = (0..k).map(|v| (v + 1) % k).collect();
            if k == 2 {
                vec![swap]
            } else {
                vec![swap, cycle]
            }
        };
        let out_t = Transformation::OutputTranslate(1);
        match self.name {
            GroupName::S => swaps,
            GroupName::CA => translations,
            GroupName::G => [swaps, translations].concat(),
            GroupName::GE => [swaps, translations, vec![out_t]].concat(),
            GroupName::CF => vec![out_t],
            GroupName::LF => linear_adds,
            GroupName::LG => linear,
            GroupName::A => [linear, translations].concat(),
            GroupName::AxA1 => {
                let mut g = [linear, translations, vec![out_t]].concat();
                if k > 2 {
                    let r = primitive_root(k);
                    g.push(Transformation::OutputMap((0..k).map(|v| ((v as u32 * r as u32) % k as u32) as u8).collect()));
                }
                g
            }
            GroupName::RAG => [linear, translations, linear_adds, vec![out_t]].concat(),
            GroupName::FullSym => {
                let mut g = swaps;
                for i in 0..n {
                    for s in value_gens(k) {
                        let maps = (0..n).map(|j| if j == i { s.clone() } else { (0..k).collect() }).collect();
                        g.push(Transformation::VarPermValueMaps { perm: (1..=n).collect(), maps });
                    }
                }
                g.extend(value_gens(k).into_iter().map(Transformation::OutputMap));
                g
            }
        }
    }

    fn induced_generators(&self) -> Result<Vec<InducedAction>> {
        self.generators().iter().map(|t| t.induced(self.k, self.n)).collect()
    }

    /// Number of functions in `P_k^n`, if it fits in a `u64`.
    pub fn space_size(&self) -> Option<u64> {
        let cells = (self.k as u64).checked_pow(self.n as u32)?;
        (self.k as u64).checked_pow(u32::try_from(cells).ok()?)
    }
}

fn all_vectors(k: u8, len: usize) -> Vec<Vec<u8>> {
    let total = (k as usize).pow(len as u32);
    let mut out = Vec::with_capacity(total);
    let mut v = vec![0u8; len];
    for _ in 0..total {
        out.push(v.clone());
        increment(&mut v, k);
    }
    out
}

fn invertible_matrices(k: u8, n: usize) -> Vec<Vec<Vec<u8>>> {
    all_vectors(k, n * n)
        .into_iter()
        .map(|flat| flat.chunks(n.max(1)).take(n).map(<[u8]>::to_vec).collect::<Vec<_>>())
        .filter(|m: &Vec<Vec<u8>>| rank_mod_p(m, k) == n)
        .collect()
}

fn value_perms(k: u8) -> Vec<Vec<u8>> {
    permutations(&(0..k as usize).collect::<Vec<_>>())
        .into_iter()
        .map(|p| p.into_iter().map(|v| v as u8).collect())
        .collect()
}

/// Every element of the group, if its order is within `budget`.
pub fn group_elements(gd: &GroupDescriptor, budget: u64) -> Result<Vec<Transformation>> {
    if gd.order() > budget as u128 {
        return Err(Error::Budget(format!("|{}| = {} exceeds {budget}", gd.name, gd.order())));
    }
    let (k, n) = (gd.k, gd.n);
    let perms = permutations(&(1..=n).collect::<Vec<_>>());
    let vecs = || all_vectors(k, n);
    let zero = vec![0u8; n];
    let out = match gd.name {
        GroupName::S => perms.into_iter().map(Transformation::VarPerm).collect(),
        GroupName::CA => vecs().into_iter().map(Transformation::ArgTranslate).collect(),
        GroupName::G | GroupName::GE => {
            let outs: Vec<u8> = if gd.name == GroupName::GE { (0..k).collect() } else { vec![0] };
            let mut v = Vec::new();
            for p in &perms {
                for c in vecs() {
                    for &d in &outs {
                        v.push(Transformation::Compose(vec![
                            Transformation::OutputTranslate(d),
                            Transformation::VarPerm(p.clone()),
                            Transformation::ArgTranslate(c.clone()),
                        ]));
                    }
                }
            }
            v
        }
        GroupName::CF => (0..k).map(Transformation::OutputTranslate).collect(),
        GroupName::LF => vecs().into_iter().map(Transformation::AddLinear).collect(),
        GroupName::LG | GroupName::A | GroupName::AxA1 | GroupName::RAG => {
            let shifts = if gd.name == GroupName::LG { vec![zero.clone()] } else { vecs() };
            let linears = if gd.name == GroupName::RAG { vecs() } else { vec![zero.clone()] };
            let offsets: Vec<u8> = if gd.name == GroupName::RAG { (0..k).collect() } else { vec![0] };
            let mut v = Vec::new();
            for m in invertible_matrices(k, n) {
                for c in &shifts {
                    for a in &linears {
                        for &d in &offsets {
                            v.push(Transformation::Affine { matrix: m.clone(), shift: c.clone(), linear: a.clone(), offset: d });
                        }
                    }
                }
            }
            if gd.name == GroupName::AxA1 {
                let mut w = Vec::with_capacity(v.len() * (k as usize) * (k as usize - 1));
                for t in v {
                    for s in 1..k {
                        for d in 0..k {
                            let map = (0..k).map(|x| ((s as u32 * x as u32 + d as u32) % k as u32) as u8).collect();
                            w.push(Transformation::Compose(vec![Transformation::OutputMap(map), t.clone()]));
                        }
                    }
                }
                w
            } else {
                v
            }
        }
        GroupName::FullSym => {
            let vp = value_perms(k);
            let mut maps_all: Vec<Vec<Vec<u8>>> = vec![Vec::new()];
            for _ in 0..n {
                maps_all = maps_all
                    .into_iter()
                    .flat_map(|prefix| {
                        vp.iter().map(move |s| {
                            let mut p = prefix.clone();
                            p.push(s.clone());
                            p
                        })
                    })
                    .collect();
            }
            let mut v = Vec::new();
            for p in &perms {
                for maps in &maps_all {
                    for o in &vp {
                        v.push(Transformation::Compose(vec![
                            Transformation::OutputMap(o.clone()),
                            Transformation::VarPermValueMaps { perm: p.clone(), maps: maps.clone() },
                        ]));
                    }
                }
            }
            v
        }
    };
    Ok(out)
}

/// `t(f)`.
pub fn apply(t: &Transformation, f: &KFunction) -> Result<KFunction> {
    t.induced(f.k(), f.n())?.apply(f)
}

/// `φ(f(x))` for an arbitrary (not necessarily bijective) map `φ` of `Z_k`.
/// Not a group action.
pub fn map_output(f: &KFunction, phi: &[u8]) -> Result<KFunction> {
    if phi.len() != f.k() as usize {
        return Err(Error::InvalidTransformation(format!("output map needs {} entries", f.k())));
    }
    check_values(phi, f.k())?;
    KFunction::from_values(f.k(), f.n(), f.values().iter().map(|&v| phi[v as usize]).collect())
}

/// The numerically smallest table in the orbit of `f`.
pub fn canonical_form(f: &KFunction, gd: &GroupDescriptor) -> Result<KFunction> {
    canonical_form_with_budget(f, gd, DEFAULT_BUDGET)
}

pub fn canonical_form_with_budget(f: &KFunction, gd: &GroupDescriptor, budget: u64) -> Result<KFunction> {
    check_shape(f, gd)?;
    if gd.order() <= budget as u128 {
        let mut best = f.clone();
        for t in group_elements(gd, budget)? {
            let g = apply(&t, f)?;
            if g < best {
                best = g;
            }
        }
        return Ok(best);
    }
    let orbit = orbit_of(f, gd, budget)?;
    Ok(orbit.into_iter().min().expect("orbit contains f"))
}

fn check_shape(f: &KFunction, gd: &GroupDescriptor) -> Result<()> {
    if f.k() != gd.k || f.n() != gd.n {
        return Err(Error::ShapeMismatch(f.shape(), format!("k={} n={}", gd.k, gd.n)));
    }
    Ok(())
}

/// The orbit of `f`, explored from the generators.
pub fn orbit_of(f: &KFunction, gd: &GroupDescriptor, budget: u64) -> Result<Vec<KFunction>> {
    check_shape(f, gd)?;
    let gens = gd.induced_generators()?;
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(f.values().to_vec());
    let mut queue = vec![f.values().to_vec()];
    while let Some(v) = queue.pop() {
        for g in &gens {
            let w = g.apply_values(&v);
            if !seen.contains(&w) {
                if seen.len() as u64 >= budget {
                    return Err(Error::Budget(format!("orbit under {} exceeds {budget}", gd.name)));
                }
                seen.insert(w.clone());
                queue.push(w);
            }
        }
    }
    seen.into_iter().map(|v| KFunction::from_values(gd.k, gd.n, v)).collect()
}

/// One orbit: its smallest member and its size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEntry {
    pub representative: KFunction,
    pub size: u64,
}

/// Orbit minima (as ids) and sizes over the whole space, ascending.
pub fn orbit_ids(gd: &GroupDescriptor) -> Result<Vec<(u64, u64)>> {
    scan_orbits(gd, |_, _| {})
}

/// Visits every function id once, calling `visit(id, orbit_index)`. Orbits
/// are numbered in order of their smallest member.
pub fn scan_orbits(gd: &GroupDescriptor, mut visit: impl FnMut(u64, usize)) -> Result<Vec<(u64, u64)>> {
    let size = gd
        .space_size()
        .filter(|&s| s <= MAX_SCAN_SPACE)
        .ok_or(Error::TooLarge { k: gd.k, n: gd.n, limit: MAX_SCAN_SPACE })?;
    let gens = gd.induced_generators()?;
    let mut visited = vec![0u64; size.div_ceil(64) as usize];
    let mark = |v: &mut Vec<u64>, id: u64| -> bool {
        let (w, b) = ((id / 64) as usize, id % 64);
        let fresh = v[w] & (1 << b) == 0;
        v[w] |= 1 << b;
        fresh
    };
    let mut out = Vec::new();
    let mut queue = Vec::new();
    let mut scratch = Vec::new();
    for start in 0..size {
        if !mark(&mut visited, start) {
            continue;
        }
        let orbit = out.len();
        let mut count = 1u64;
        visit(start, orbit);
        queue.push(start);
        while let Some(id) = queue.pop() {
            for g in &gens {
                let next = g.apply_id(id, &mut scratch);
                if mark(&mut visited, next) {
                    count += 1;
                    visit(next, orbit);
                    queue.push(next);
                }
            }
        }
        out.push((start, count));
    }
    Ok(out)
}

/// `t(G)`, the number of orbits on `P_k^n`.
pub fn count_orbits(gd: &GroupDescriptor) -> Result<u64> {
    Ok(orbit_ids(gd)?.len() as u64)
}

pub fn orbit_transversal(gd: &GroupDescriptor) -> Result<Vec<OrbitEntry>> {
    orbit_ids(gd)?
        .into_iter()
        .map(|(id, size)| Ok(OrbitEntry { representative: KFunction::from_id(gd.k, gd.n, id as u128)?, size }))
        .collect()
}

/// CSV with columns `canonical_hex,orbit_size`. Non-Boolean tables are
/// written as digit strings.
pub fn write_transversal_csv<W: Write>(entries: &[OrbitEntry], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["canonical_hex", "orbit_size"])?;
    for e in entries {
        let table = if e.representative.k() == 2 { e.representative.to_hex()? } else { e.representative.to_digits() };
        w.write_record([table, e.size.to_string()])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gd(name: GroupName, k: u8, n: usize) -> GroupDescriptor {
        GroupDescriptor::new(name, k, n).unwrap()
    }

    fn big_endian(idx: usize, k: usize, n: usize) -> usize {
        let mut digits = Vec::new();
        let mut r = idx;
        for _ in 0..n {
            digits.push(r % k);
            r /= k;
        }
        digits.iter().fold(0, |acc, &d| acc * k + d)
    }

    #[test]
    fn translation_cycle_in_big_endian_labels() {
        let act = Transformation::ArgTranslate(vec![2, 1, 0]).induced(3, 3).unwrap();
        let relabelled: Vec<Vec<usize>> = cycles(act.point_map())
            .into_iter()
            .map(|c| c.into_iter().map(|i| big_endian(i, 3, 3)).collect())
            .collect();
        assert!(relabelled.iter().any(|c| c == &vec![0, 21, 15]));
    }

    #[test]
    fn swap_cycles_in_big_endian_labels() {
        let act = Transformation::VarPerm(vec![2, 1, 3]).induced(3, 3).unwrap();
        let relabelled: Vec<Vec<usize>> = cycles(act.point_map())
            .into_iter()
            .map(|c| {
                let mut c: Vec<usize> = c.into_iter().map(|i| big_endian(i, 3, 3)).collect();
                c.sort();
                c
            })
            .collect();
        for pair in [[3, 9], [4, 10], [5, 11]] {
            assert!(relabelled.contains(&pair.to_vec()), "{pair:?}");
        }
        assert_eq!(relabelled.len(), 9);
    }

    #[test]
    fn identity_and_validation() {
        let f = KFunction::from_hex("d8", Some(3)).unwrap();
        assert_eq!(apply(&Transformation::Identity, &f).unwrap(), f);
        let id = Transformation::Affine {
            matrix: vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
            shift: vec![0; 3],
            linear: vec![0; 3],
            offset: 0,
        };
        assert_eq!(apply(&id, &f).unwrap(), f);
        let singular = Transformation::Affine {
            matrix: vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]],
            shift: vec![0; 3],
            linear: vec![0; 3],
            offset: 0,
        };
        assert!(matches!(apply(&singular, &f), Err(Error::SingularMatrix(2))));
        assert!(apply(&Transformation::VarPerm(vec![1, 2]), &f).is_err());
        assert!(matches!(GroupDescriptor::new(GroupName::LG, 4, 2), Err(Error::NonPrimeRadix(4))));
        assert!(GroupDescriptor::new(GroupName::G, 4, 2).is_ok());
    }

    #[test]
    fn element_counts() {
        assert_eq!(group_elements(&gd(GroupName::S, 2, 3), DEFAULT_BUDGET).unwrap().len(), 6);
        assert_eq!(group_elements(&gd(GroupName::GE, 2, 3), DEFAULT_BUDGET).unwrap().len(), 96);
        assert_eq!(group_elements(&gd(GroupName::LF, 2, 4), DEFAULT_BUDGET).unwrap().len(), 16);
        assert_eq!(group_elements(&gd(GroupName::LG, 2, 3), DEFAULT_BUDGET).unwrap().len(), 168);
        assert_eq!(group_elements(&gd(GroupName::LG, 3, 2), DEFAULT_BUDGET).unwrap().len(), 48);
        assert_eq!(group_elements(&gd(GroupName::FullSym, 3, 2), DEFAULT_BUDGET).unwrap().len(), 2 * 36 * 6);
        for name in GroupName::ALL {
            for (k, n) in [(2u8, 2usize), (2, 3), (3, 2)] {
                let g = gd(name, k, n);
                let elems = group_elements(&g, DEFAULT_BUDGET).unwrap();
                assert_eq!(elems.len() as u128, g.order(), "{name} k={k} n={n}");
            }
        }
    }

    #[test]
    fn induced_actions_are_distinct_and_closed() {
        for name in [GroupName::G, GroupName::GE, GroupName::A, GroupName::RAG, GroupName::AxA1] {
            for (k, n) in [(2u8, 2usize), (3, 1), (2, 3)] {
                let g = gd(name, k, n);
                let acts: HashSet<InducedAction> =
                    group_elements(&g, DEFAULT_BUDGET).unwrap().iter().map(|t| t.induced(k, n).unwrap()).collect();
                assert_eq!(acts.len() as u128, g.order(), "{name} k={k} n={n}");
                let sample: Vec<&InducedAction> = acts.iter().take(12).collect();
                for a in &sample {
                    for b in &sample {
                        assert!(acts.contains(&a.compose(b).unwrap()), "{name} not closed");
                    }
                }
            }
        }
    }

    #[test]
    fn affine_composition_matches_action() {
        let elems = group_elements(&gd(GroupName::RAG, 2, 2), DEFAULT_BUDGET).unwrap();
        let f = KFunction::from_hex("6", Some(2)).unwrap();
        for t1 in elems.iter().step_by(7) {
            for t2 in elems.iter().step_by(11) {
                let c = compose_affine_mod(2, t1, t2).unwrap();
                assert_eq!(apply(&c, &f).unwrap(), apply(t1, &apply(t2, &f).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn canonical_forms() {
        let x1 = KFunction::from_hex("2", Some(1)).unwrap();
        let nx1 = KFunction::from_hex("1", Some(1)).unwrap();
        let ge1 = gd(GroupName::GE, 2, 1);
        assert_eq!(canonical_form(&x1, &ge1).unwrap(), canonical_form(&nx1, &ge1).unwrap());
        let and = KFunction::from_hex("8", Some(2)).unwrap();
        let nor = KFunction::from_hex("1", Some(2)).unwrap();
        let g2 = gd(GroupName::G, 2, 2);
        assert_eq!(canonical_form(&and, &g2).unwrap(), canonical_form(&nor, &g2).unwrap());
        let rag = gd(GroupName::RAG, 2, 2);
        let nx1 = KFunction::from_hex("5", Some(2)).unwrap();
        assert_ne!(canonical_form(&nx1, &rag).unwrap(), canonical_form(&and, &rag).unwrap());
        let via_orbit = orbit_of(&and, &rag, DEFAULT_BUDGET).unwrap().into_iter().min().unwrap();
        assert_eq!(via_orbit, canonical_form(&and, &rag).unwrap());
    }

    #[test]
    fn small_transversals() {
        let g = orbit_transversal(&gd(GroupName::G, 2, 2)).unwrap();
        assert_eq!(g.len(), 6);
        assert_eq!(g.iter().map(|e| e.size).sum::<u64>(), 16);
        assert_eq!(count_orbits(&gd(GroupName::CA, 2, 2)).unwrap(), 7);
        let mut ge: Vec<u64> = orbit_transversal(&gd(GroupName::GE, 2, 2)).unwrap().iter().map(|e| e.size).collect();
        ge.sort();
        assert_eq!(ge, vec![2, 2, 4, 8]);
    }

    #[test]
    fn orbit_counts_n3() {
        let expect = [
            (GroupName::S, 80),
            (GroupName::LG, 20),
            (GroupName::A, 10),
            (GroupName::GE, 14),
            (GroupName::LF, 32),
            (GroupName::RAG, 3),
            (GroupName::AxA1, 6),
            (GroupName::G, 22),
        ];
        for (name, count) in expect {
            assert_eq!(count_orbits(&gd(name, 2, 3)).unwrap(), count, "{name}");
        }
    }

    #[test]
    fn generator_orbits_match_element_orbits() {
        for name in GroupName::ALL {
            for (k, n) in [(2u8, 2usize), (3, 1)] {
                let g = gd(name, k, n);
                let elems = group_elements(&g, DEFAULT_BUDGET).unwrap();
                let mut mins = HashSet::new();
                for id in 0..g.space_size().unwrap() {
                    let f = KFunction::from_id(k, n, id as u128).unwrap();
                    mins.insert(elems.iter().map(|t| apply(t, &f).unwrap()).min().unwrap());
                }
                assert_eq!(mins.len() as u64, count_orbits(&g).unwrap(), "{name} k={k} n={n}");
            }
        }
    }

    #[test]
    fn transversal_csv() {
        let entries = orbit_transversal(&gd(GroupName::GE, 2, 1)).unwrap();
        let mut buf = Vec::new();
        write_transversal_csv(&entries, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("canonical_hex,orbit_size\n"));
        assert_eq!(text.lines().count(), 1 + entries.len());
    }
}
