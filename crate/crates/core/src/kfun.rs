// SPDX-License-Identifier: Apache-2.0

//! Truth-table functions `f: Z_k^n -> Z_k`.
//!
//! A [`KFunction`] stores `k^n` values. Point `(a_1, ..., a_n)` is stored at
//! index `a_1 + a_2 k + ... + a_n k^(n-1)`, so variable `x_1` toggles fastest.
//! Variables are numbered from 1.
//!
//! Restriction ([`KFunction::cofactor`]) keeps the arity: the fixed variable
//! simply becomes inessential. Two subfunctions are therefore equal exactly
//! when their tables are equal.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default bound on `k^n` for a single table.
pub const DEFAULT_CELL_LIMIT: u64 = 1 << 32;

/// Largest arity a [`VarSet`] can address.
pub const MAX_VARS: usize = 32;

/// A set of variable indices drawn from `{1, ..., n}`, stored as a bitmask
/// (bit `i - 1` represents `x_i`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VarSet(u32);

impl VarSet {
    pub const EMPTY: VarSet = VarSet(0);

    pub const fn from_mask(mask: u32) -> Self {
        VarSet(mask)
    }

    pub const fn mask(self) -> u32 {
        self.0
    }

    /// All variables `1..=n`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VARS);
        if n == MAX_VARS {
            VarSet(u32::MAX)
        } else {
            VarSet((1u32 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!((1..=MAX_VARS).contains(&i), "variable index {i} out of range");
        VarSet(1 << (i - 1))
    }

    pub fn contains(self, i: usize) -> bool {
        (1..=MAX_VARS).contains(&i) && self.0 & (1 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: usize) {
        *self = self.with(i);
    }

    pub fn remove(&mut self, i: usize) {
        *self = self.without(i);
    }

    pub fn with(self, i: usize) -> Self {
        VarSet(self.0 | VarSet::singleton(i).0)
    }

    pub fn without(self, i: usize) -> Self {
        VarSet(self.0 & !VarSet::singleton(i).0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: VarSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: VarSet) -> Self {
        VarSet(self.0 | other.0)
    }

    pub fn intersection(self, other: VarSet) -> Self {
        VarSet(self.0 & other.0)
    }

    pub fn difference(self, other: VarSet) -> Self {
        VarSet(self.0 & !other.0)
    }

    /// Members in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut m = self.0;
        std::iter::from_fn(move || {
            if m == 0 {
                None
            } else {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                Some(i + 1)
            }
        })
    }

    /// Every subset of `self`, including the empty set and `self`, in
    /// increasing mask order.
    pub fn subsets(self) -> impl Iterator<Item = VarSet> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(VarSet(cur))
        })
    }

    /// Parses `"2,3"`, `"{2,3}"` or `"x2,x3"`.
    pub fn parse(text: &str) -> Result<Self> {
        let trimmed = text.trim().trim_start_matches('{').trim_end_matches('}');
        let mut set = VarSet::EMPTY;
        for part in trimmed.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let digits = part.trim_start_matches(['x', 'X']);
            let i: usize = digits.parse().map_err(|_| Error::Format(format!("bad variable `{part}`")))?;
            if !(1..=MAX_VARS).contains(&i) {
                return Err(Error::VariableOutOfRange { index: i, n: MAX_VARS });
            }
            set.insert(i);
        }
        Ok(set)
    }
}

impl FromIterator<usize> for VarSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = VarSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

impl fmt::Display for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (pos, i) in self.iter().enumerate() {
            if pos > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for VarSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Constants bound to a set of distinct variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PartialAssignment {
    bindings: BTreeMap<usize, u8>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, i: usize, c: u8) -> Self {
        self.bindings.insert(i, c);
        self
    }

    pub fn set(&mut self, i: usize, c: u8) {
        self.bindings.insert(i, c);
    }

    pub fn unset(&mut self, i: usize) {
        self.bindings.remove(&i);
    }

    pub fn get(&self, i: usize) -> Option<u8> {
        self.bindings.get(&i).copied()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn vars(&self) -> VarSet {
        self.bindings.keys().copied().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u8)> + '_ {
        self.bindings.iter().map(|(&i, &c)| (i, c))
    }

    /// Every assignment of values in `Z_k` to the members of `vars`.
    pub fn all_over(vars: VarSet, k: u8) -> impl Iterator<Item = PartialAssignment> {
        let members: Vec<usize> = vars.iter().collect();
        let total = (k as u64).pow(members.len() as u32);
        (0..total).map(move |mut code| {
            let mut a = PartialAssignment::new();
            for &i in &members {
                a.set(i, (code % k as u64) as u8);
                code /= k as u64;
            }
            a
        })
    }
}

/// An `n`-ary function on `Z_k` given by its table of `k^n` values.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct KFunction {
    k: u8,
    n: usize,
    values: Vec<u8>,
}

fn checked_cells(k: u8, n: usize, limit: u64) -> Result<usize> {
    if k < 2 {
        return Err(Error::InvalidRadix(k as u32));
    }
    if n > MAX_VARS {
        return Err(Error::TooLarge { k, n, limit });
    }
    let cells = (k as u64).checked_pow(n as u32).filter(|&c| c <= limit);
    match cells {
        Some(c) => Ok(c as usize),
        None => Err(Error::TooLarge { k, n, limit }),
    }
}

impl KFunction {
    pub fn from_values(k: u8, n: usize, values: Vec<u8>) -> Result<Self> {
        Self::from_values_with_limit(k, n, values, DEFAULT_CELL_LIMIT)
    }

    pub fn from_values_with_limit(k: u8, n: usize, values: Vec<u8>, limit: u64) -> Result<Self> {
        let cells = checked_cells(k, n, limit)?;
        if values.len() != cells {
            return Err(Error::LengthMismatch { expected: cells, got: values.len() });
        }
        if let Some(&v) = values.iter().find(|&&v| v >= k) {
            return Err(Error::ValueOutOfRange { value: v as u32, k });
        }
        Ok(KFunction { k, n, values })
    }

    /// Builds a table by evaluating `g` at every point.
    pub fn from_fn(k: u8, n: usize, mut g: impl FnMut(&[u8]) -> u8) -> Result<Self> {
        let cells = checked_cells(k, n, DEFAULT_CELL_LIMIT)?;
        let mut point = vec![0u8; n];
        let mut values = Vec::with_capacity(cells);
        for _ in 0..cells {
            values.push(g(&point) % k);
            for a in point.iter_mut() {
                *a += 1;
                if *a < k {
                    break;
                }
                *a = 0;
            }
        }
        Ok(KFunction { k, n, values })
    }

    pub fn constant(k: u8, n: usize, c: u8) -> Result<Self> {
        if k >= 2 && c >= k {
            return Err(Error::ValueOutOfRange { value: c as u32, k });
        }
        let cells = checked_cells(k, n, DEFAULT_CELL_LIMIT)?;
        Ok(KFunction { k, n, values: vec![c; cells] })
    }

    /// The projection `x_i` (its ring value).
    pub fn variable(k: u8, n: usize, i: usize) -> Result<Self> {
        if !(1..=n).contains(&i) {
            return Err(Error::VariableOutOfRange { index: i, n });
        }
        Self::from_fn(k, n, |p| p[i - 1])
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn into_values(self) -> Vec<u8> {
        self.values
    }

    /// Number of table cells, `k^n`.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn same_shape(&self, other: &KFunction) -> bool {
        self.k == other.k && self.n == other.n
    }

    pub(crate) fn shape(&self) -> String {
        format!("k={}, n={}", self.k, self.n)
    }

    /// `k^(i-1)`, the index distance between points differing by one in `x_i`.
    pub fn stride(&self, i: usize) -> usize {
        (self.k as usize).pow(i as u32 - 1)
    }

    pub fn index_of(&self, point: &[u8]) -> Result<usize> {
        if point.len() != self.n {
            return Err(Error::PointLength { expected: self.n, got: point.len() });
        }
        let mut idx = 0usize;
        for &a in point.iter().rev() {
            if a >= self.k {
                return Err(Error::ValueOutOfRange { value: a as u32, k: self.k });
            }
            idx = idx * self.k as usize + a as usize;
        }
        Ok(idx)
    }

    pub fn point_of(&self, mut index: usize) -> Vec<u8> {
        let k = self.k as usize;
        (0..self.n)
            .map(|_| {
                let a = (index % k) as u8;
                index /= k;
                a
            })
            .collect()
    }

    pub fn eval(&self, point: &[u8]) -> Result<u8> {
        Ok(self.values[self.index_of(point)?])
    }

    fn check_var(&self, i: usize) -> Result<()> {
        if (1..=self.n).contains(&i) {
            Ok(())
        } else {
            Err(Error::VariableOutOfRange { index: i, n: self.n })
        }
    }

    fn check_value(&self, c: u8) -> Result<()> {
        if c < self.k {
            Ok(())
        } else {
            Err(Error::ValueOutOfRange { value: c as u32, k: self.k })
        }
    }

    /// `f(x_i = c)` at the same arity; the result does not depend on `x_i`.
    pub fn cofactor(&self, i: usize, c: u8) -> Result<KFunction> {
        self.check_var(i)?;
        self.check_value(c)?;
        Ok(self.cofactor_unchecked(i, c))
    }

    pub(crate) fn cofactor_unchecked(&self, i: usize, c: u8) -> KFunction {
        let k = self.k as usize;
        let stride = self.stride(i);
        let block = stride * k;
        let mut values = vec![0u8; self.values.len()];
        for base in (0..self.values.len()).step_by(block) {
            let src = &self.values[base + c as usize * stride..base + (c as usize + 1) * stride];
            for d in 0..k {
                values[base + d * stride..base + (d + 1) * stride].copy_from_slice(src);
            }
        }
        KFunction { k: self.k, n: self.n, values }
    }

    /// Restriction by every binding of `a`.
    pub fn restrict(&self, a: &PartialAssignment) -> Result<KFunction> {
        let mut g = self.clone();
        for (i, c) in a.iter() {
            g = g.cofactor(i, c)?;
        }
        Ok(g)
    }

    pub fn is_essential(&self, i: usize) -> Result<bool> {
        self.check_var(i)?;
        Ok(self.is_essential_unchecked(i))
    }

    pub(crate) fn is_essential_unchecked(&self, i: usize) -> bool {
        let k = self.k as usize;
        let stride = self.stride(i);
        let block = stride * k;
        for base in (0..self.values.len()).step_by(block) {
            let first = &self.values[base..base + stride];
            for d in 1..k {
                if &self.values[base + d * stride..base + (d + 1) * stride] != first {
                    return true;
                }
            }
        }
        false
    }

    /// `Ess(f)`.
    pub fn essential_set(&self) -> VarSet {
        (1..=self.n).filter(|&i| self.is_essential_unchecked(i)).collect()
    }

    /// `ess(f) = |Ess(f)|`.
    pub fn ess(&self) -> usize {
        self.essential_set().len()
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }

    pub fn range_of(&self) -> BTreeSet<u8> {
        let mut seen = [false; 256];
        for &v in &self.values {
            seen[v as usize] = true;
        }
        (0..self.k).filter(|&v| seen[v as usize]).collect()
    }

    /// Essential `x_i` for which some constant `c` keeps every other
    /// essential variable essential in `f(x_i = c)`.
    pub fn strongly_essential_set(&self) -> VarSet {
        let ess = self.essential_set();
        ess.iter()
            .filter(|&i| {
                let rest = ess.without(i);
                (0..self.k).any(|c| self.cofactor_unchecked(i, c).essential_set() == rest)
            })
            .collect()
    }

    /// The same function viewed at a larger arity; new variables are inessential.
    pub fn with_arity(&self, n: usize) -> Result<KFunction> {
        if n < self.n {
            return Err(Error::Format(format!("cannot shrink arity {} to {n}", self.n)));
        }
        let cells = checked_cells(self.k, n, DEFAULT_CELL_LIMIT)?;
        let values = self.values.iter().copied().cycle().take(cells).collect();
        Ok(KFunction { k: self.k, n, values })
    }

    /// Numeric position of this table in the space `P_k^n`: the table read
    /// as a base-`k` numeral with index 0 least significant. `None` if it
    /// does not fit in 128 bits.
    pub fn id(&self) -> Option<u128> {
        let mut acc: u128 = 0;
        for &v in self.values.iter().rev() {
            acc = acc.checked_mul(self.k as u128)?.checked_add(v as u128)?;
        }
        Some(acc)
    }

    pub fn from_id(k: u8, n: usize, mut id: u128) -> Result<KFunction> {
        let cells = checked_cells(k, n, DEFAULT_CELL_LIMIT)?;
        let mut values = Vec::with_capacity(cells);
        for _ in 0..cells {
            values.push((id % k as u128) as u8);
            id /= k as u128;
        }
        if id != 0 {
            return Err(Error::Format("function id out of range for the space".into()));
        }
        Ok(KFunction { k, n, values })
    }

    /// Packs a Boolean table with `n <= 6` into a word (bit `i` = value at index `i`).
    pub fn to_bits(&self) -> Option<u64> {
        if self.k != 2 || self.n > 6 {
            return None;
        }
        Some(self.values.iter().enumerate().fold(0u64, |acc, (i, &v)| acc | ((v as u64) << i)))
    }

    pub fn from_bits(n: usize, bits: u64) -> Result<KFunction> {
        if n > 6 {
            return Err(Error::TooLarge { k: 2, n, limit: 64 });
        }
        let cells = 1usize << n;
        if cells < 64 && bits >> cells != 0 {
            return Err(Error::Format(format!("table 0x{bits:x} has bits beyond 2^{n} cells")));
        }
        let values = (0..cells).map(|i| ((bits >> i) & 1) as u8).collect();
        Ok(KFunction { k: 2, n, values })
    }

    /// Hex text for Boolean tables: bit `i` of the numeral is the value at
    /// index `i`. Uses `max(1, 2^n / 4)` digits.
    pub fn to_hex(&self) -> Result<String> {
        if self.k != 2 {
            return Err(Error::Unsupported("hex tables need k = 2".into()));
        }
        let digits = (self.values.len() / 4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nib = 0u8;
            for b in 0..4 {
                if let Some(&v) = self.values.get(d * 4 + b) {
                    nib |= v << b;
                }
            }
            out.push(char::from_digit(nib as u32, 16).expect("nibble"));
        }
        Ok(out)
    }

    /// Parses a Boolean hex table. Without `n`, the arity is inferred from the
    /// digit count (which then must describe at least 2 variables).
    pub fn from_hex(text: &str, n: Option<usize>) -> Result<KFunction> {
        let t = text.trim();
        let t = t.strip_prefix("0x").or_else(|| t.strip_prefix("0X")).unwrap_or(t);
        if t.is_empty() {
            return Err(Error::Format("empty hex table".into()));
        }
        let nibbles: Vec<u8> = t
            .chars()
            .rev()
            .map(|c| c.to_digit(16).map(|d| d as u8).ok_or_else(|| Error::Format(format!("bad hex digit `{c}`"))))
            .collect::<Result<_>>()?;
        let n = match n {
            Some(n) => n,
            None => {
                let bits = nibbles.len() * 4;
                if !bits.is_power_of_two() {
                    return Err(Error::Format(format!("{} hex digits do not describe 2^n bits", nibbles.len())));
                }
                bits.trailing_zeros() as usize
            }
        };
        let cells = checked_cells(2, n, DEFAULT_CELL_LIMIT)?;
        let expected_digits = (cells / 4).max(1);
        if nibbles.len() != expected_digits {
            return Err(Error::LengthMismatch { expected: expected_digits, got: nibbles.len() });
        }
        let mut values = Vec::with_capacity(cells);
        for i in 0..cells {
            values.push((nibbles[i / 4] >> (i % 4)) & 1);
        }
        let spill = (cells..expected_digits * 4).any(|i| (nibbles[i / 4] >> (i % 4)) & 1 != 0);
        if spill {
            return Err(Error::Format(format!("hex table `{text}` has bits beyond 2^{n} cells")));
        }
        Ok(KFunction { k: 2, n, values })
    }

    /// Comma-separated values in index order, e.g. `2,0,1`.
    pub fn to_digits(&self) -> String {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        parts.join(",")
    }

    /// Parses a comma-separated value list. The arity is inferred from the
    /// length unless given.
    pub fn from_digits(k: u8, n: Option<usize>, text: &str) -> Result<KFunction> {
        let values: Vec<u8> = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| {
                s.parse::<u32>()
                    .map_err(|_| Error::Format(format!("bad table entry `{s}`")))
                    .and_then(|v| if v < k as u32 { Ok(v as u8) } else { Err(Error::ValueOutOfRange { value: v, k }) })
            })
            .collect::<Result<_>>()?;
        let n = match n {
            Some(n) => n,
            None => {
                if k < 2 {
                    return Err(Error::InvalidRadix(k as u32));
                }
                let mut n = 0;
                let mut cells = 1usize;
                while cells < values.len() {
                    cells *= k as usize;
                    n += 1;
                }
                n
            }
        };
        KFunction::from_values(k, n, values)
    }

    /// Hex for `k = 2`, a digit list otherwise.
    pub fn to_table_string(&self) -> String {
        if self.k == 2 {
            self.to_hex().expect("k = 2")
        } else {
            self.to_digits()
        }
    }

    /// Orders tables of the same shape as base-`k` numerals (the highest
    /// index is the most significant digit).
    pub fn numeral_cmp(&self, other: &KFunction) -> Ordering {
        (self.k, self.n)
            .cmp(&(other.k, other.n))
            .then_with(|| self.values.iter().rev().cmp(other.values.iter().rev()))
    }
}

impl PartialOrd for KFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for KFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.numeral_cmp(other)
    }
}

impl fmt::Display for KFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_table_string())
    }
}

impl fmt::Debug for KFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KFunction(k={}, n={}, {})", self.k, self.n, self.to_table_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    // f = x1x2 + x1x3, g = x1x2 + x1^0 x3 over Z_2
    fn f_ex() -> KFunction {
        KFunction::from_fn(2, 3, |p| (p[0] & p[1]) ^ (p[0] & p[2])).unwrap()
    }

    fn g_ex() -> KFunction {
        KFunction::from_fn(2, 3, |p| if p[0] == 1 { p[1] } else { p[2] }).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(KFunction::from_values(2, 0, vec![1]).unwrap().values(), &[1]);
        let h = KFunction::from_values(3, 1, vec![2, 0, 1]).unwrap();
        assert_eq!(h.eval(&[0]).unwrap(), 2);
        assert!(matches!(KFunction::from_values(2, 2, vec![0, 1, 0]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(KFunction::from_values(2, 1, vec![0, 2]), Err(Error::ValueOutOfRange { .. })));
        assert!(matches!(KFunction::from_values(1, 1, vec![0]), Err(Error::InvalidRadix(1))));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(f_ex().eval(&[1, 0, 1]).unwrap(), 1);
        assert_eq!(g_ex().eval(&[0, 1, 1]).unwrap(), 1);
        assert_eq!(KFunction::constant(2, 3, 0).unwrap().eval(&[1, 1, 0]).unwrap(), 0);
        assert!(matches!(f_ex().eval(&[1, 0]), Err(Error::PointLength { .. })));
        assert!(matches!(f_ex().eval(&[1, 2, 0]), Err(Error::ValueOutOfRange { .. })));
    }

    #[test]
    fn cofactor_examples() {
        let f = f_ex();
        assert_eq!(f.cofactor(1, 0).unwrap(), KFunction::constant(2, 3, 0).unwrap());
        let x2x3 = KFunction::from_fn(2, 3, |p| p[1] ^ p[2]).unwrap();
        assert_eq!(f.cofactor(1, 1).unwrap(), x2x3);
        let one = KFunction::constant(2, 1, 1).unwrap();
        assert_eq!(one.cofactor(1, 0).unwrap(), one);
        assert!(f.cofactor(4, 0).is_err());
        assert!(f.cofactor(1, 2).is_err());
    }

    #[test]
    fn essential_examples() {
        let g = g_ex();
        assert!(g.is_essential(3).unwrap());
        assert_eq!(g.essential_set(), VarSet::parse("1,2,3").unwrap());
        assert!(!KFunction::constant(2, 1, 0).unwrap().is_essential(1).unwrap());
        let padded = f_ex().with_arity(4).unwrap();
        assert!(!padded.is_essential(4).unwrap());
        assert_eq!(padded.essential_set(), VarSet::full(3));
        assert!(KFunction::constant(2, 2, 1).unwrap().essential_set().is_empty());
        assert_eq!(g.cofactor(1, 1).unwrap().essential_set(), VarSet::singleton(2));
        assert!(g.is_essential(0).is_err());
    }

    #[test]
    fn range_examples() {
        assert_eq!(KFunction::constant(2, 2, 1).unwrap().range_of(), BTreeSet::from([1]));
        let xor = KFunction::from_fn(2, 2, |p| p[0] ^ p[1]).unwrap();
        assert_eq!(xor.range_of(), BTreeSet::from([0, 1]));
        let h = KFunction::from_values(3, 1, vec![2, 0, 1]).unwrap();
        assert_eq!(h.range_of(), BTreeSet::from([0, 1, 2]));
    }

    #[test]
    fn strongly_essential_examples() {
        let f = f_ex();
        let strong = f.strongly_essential_set();
        assert!(strong.contains(1));
        // brute force: x2 fixed to 0 leaves x1x3, to 1 leaves x1 x3^0; both keep {1,3}
        let mut oracle = VarSet::EMPTY;
        for i in 1..=3 {
            let rest = f.essential_set().without(i);
            if (0..2).any(|c| f.cofactor(i, c).unwrap().essential_set() == rest) {
                oracle.insert(i);
            }
        }
        assert_eq!(strong, oracle);
        assert_eq!(strong, VarSet::full(3));
        let x2 = KFunction::variable(2, 3, 2).unwrap();
        assert_eq!(x2.strongly_essential_set(), VarSet::singleton(2));
    }

    #[test]
    fn hex_format() {
        assert_eq!(g_ex().to_hex().unwrap(), "d8");
        assert_eq!(KFunction::from_hex("d8", None).unwrap(), g_ex());
        assert_eq!(KFunction::from_hex("0xd8", Some(3)).unwrap(), g_ex());
        let x1 = KFunction::variable(2, 1, 1).unwrap();
        assert_eq!(x1.to_hex().unwrap(), "2");
        assert_eq!(KFunction::from_hex("2", Some(1)).unwrap(), x1);
        assert!(KFunction::from_hex("4", Some(1)).is_err());
        assert!(KFunction::from_hex("abc", None).is_err());
        assert!(KFunction::from_hex("zz", None).is_err());
    }

    #[test]
    fn digits_format() {
        let h = KFunction::from_digits(3, None, "2,0,1").unwrap();
        assert_eq!(h.n(), 1);
        assert_eq!(h.to_digits(), "2,0,1");
        assert!(KFunction::from_digits(3, None, "2,0,3").is_err());
    }

    #[test]
    fn ids_and_order() {
        let g = g_ex();
        assert_eq!(g.id(), Some(0xd8));
        assert_eq!(KFunction::from_id(2, 3, 0xd8).unwrap(), g);
        assert_eq!(g.to_bits(), Some(0xd8));
        assert_eq!(KFunction::from_bits(3, 0xd8).unwrap(), g);
        let a = KFunction::from_id(3, 2, 100).unwrap();
        let b = KFunction::from_id(3, 2, 101).unwrap();
        assert!(a < b);
    }

    #[test]
    fn varset_ops() {
        let s = VarSet::parse("{x1, x3}").unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.subsets().count(), 4);
        assert_eq!(s.to_string(), "{1,3}");
        assert!(VarSet::singleton(3).is_subset(s));
        assert_eq!(PartialAssignment::all_over(s, 3).count(), 9);
    }
}
