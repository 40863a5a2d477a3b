// SPDX-License-Identifier: Apache-2.0

//! Word-sized kernels for Boolean tables with at most six variables.
//!
//! A table is a `u64` whose bit `i` holds the value at index `i` (variable
//! `x_1` is the least significant selector). Only the low `2^n` bits are
//! meaningful; every function here keeps the high bits clear.

use std::collections::HashMap;
use std::sync::OnceLock;

/// Bit `i` of `VAR_MASKS[v]` is set iff `x_{v+1} = 1` at index `i`.
pub const VAR_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

pub const MAX_BITS_VARS: usize = 6;

#[inline]
pub fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= MAX_BITS_VARS);
    if n == 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// `t(x_i = c)` at the same arity. `i` is 1-based.
#[inline]
pub fn cofactor(t: u64, n: usize, i: usize, c: u8) -> u64 {
    let m = VAR_MASKS[i - 1];
    let s = 1u32 << (i - 1);
    let full = full_mask(n);
    if c == 0 {
        let lo = t & !m & full;
        lo | (lo << s)
    } else {
        let hi = t & m & full;
        hi | (hi >> s)
    }
}

/// Points (with `x_i = 0`) where the `x_i`-edge changes the value.
#[inline]
pub fn edge_diff(t: u64, n: usize, i: usize) -> u64 {
    let s = 1u32 << (i - 1);
    (t ^ (t >> s)) & !VAR_MASKS[i - 1] & full_mask(n)
}

/// Bitmask of essential variables (bit `i-1` for `x_i`).
#[inline]
pub fn ess_mask(t: u64, n: usize) -> u32 {
    let mut m = 0;
    for i in 1..=n {
        if edge_diff(t, n, i) != 0 {
            m |= 1 << (i - 1);
        }
    }
    m
}

/// A subcube of `{0,1}^n`: the free variables and the indicator of its points.
#[derive(Clone, Copy, Debug)]
pub struct Subcube {
    pub free: u32,
    /// Fixed variables (bit `i-1`) set to 1; the others in `!free` are 0.
    pub ones: u32,
    pub points: u64,
}

/// All `3^n` subcubes, in a fixed order.
pub fn subcubes(n: usize) -> &'static [Subcube] {
    static CACHE: [OnceLock<Vec<Subcube>>; MAX_BITS_VARS + 1] =
        [const { OnceLock::new() }; MAX_BITS_VARS + 1];
    CACHE[n].get_or_init(|| {
        let total = 3usize.pow(n as u32);
        let mut out = Vec::with_capacity(total);
        for mut code in 0..total {
            let mut free = 0u32;
            let mut ones = 0u32;
            let mut points = full_mask(n);
            for v in 0..n {
                match code % 3 {
                    0 => free |= 1 << v,
                    1 => points &= !VAR_MASKS[v],
                    _ => {
                        ones |= 1 << v;
                        points &= VAR_MASKS[v];
                    }
                }
                code /= 3;
            }
            out.push(Subcube { free, ones, points });
        }
        out
    })
}

/// The restriction of `t` to a subcube, as a table of the same arity.
pub fn restrict(t: u64, n: usize, cube: &Subcube) -> u64 {
    let mut r = t;
    for v in 0..n {
        if cube.free & (1 << v) == 0 {
            r = cofactor(r, n, v + 1, ((cube.ones >> v) & 1) as u8);
        }
    }
    r
}

/// Essential variables of the restriction of `t` to `cube`.
#[inline]
pub fn cube_ess(diffs: &[u64], cube: &Subcube) -> u32 {
    let mut m = 0;
    let mut free = cube.free;
    while free != 0 {
        let v = free.trailing_zeros() as usize;
        free &= free - 1;
        if diffs[v] & cube.points != 0 {
            m |= 1 << v;
        }
    }
    m
}

/// Separable sets as a bitmask over subsets: bit `M` is set iff the
/// variable set with mask `M` is `Ess(g)` for some restriction `g` of `t`.
/// Bit 0 (the empty set) is never set.
pub fn sep_mask(t: u64, n: usize) -> u64 {
    let diffs: Vec<u64> = (1..=n).map(|i| edge_diff(t, n, i)).collect();
    let mut out = 0u64;
    for cube in subcubes(n) {
        out |= 1u64 << cube_ess(&diffs, cube);
    }
    out & !1
}

/// `(sep_1, ..., sep_n)` from a separable-set mask.
pub fn sep_vector_from_mask(mask: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n];
    let mut m = mask;
    while m != 0 {
        let set = m.trailing_zeros();
        m &= m - 1;
        if set != 0 {
            v[set.count_ones() as usize - 1] += 1;
        }
    }
    v
}

pub fn sep_vector(t: u64, n: usize) -> Vec<u64> {
    sep_vector_from_mask(sep_mask(t, n), n)
}

/// Distinct restrictions of `t`, i.e. its subfunctions, sorted.
pub fn subfunctions(t: u64, n: usize) -> Vec<u64> {
    let mut all: Vec<u64> = subcubes(n).iter().map(|c| restrict(t, n, c)).collect();
    all.sort_unstable();
    all.dedup();
    all
}

/// `(sub_0, ..., sub_n)`.
pub fn sub_vector(t: u64, n: usize) -> Vec<u64> {
    let mut v = vec![0u64; n + 1];
    for g in subfunctions(t, n) {
        v[ess_mask(g, n).count_ones() as usize] += 1;
    }
    v
}

/// Number of implementations via the cofactor recursion, memoised on the
/// table. `memo` must only be shared between calls with the same `n`.
pub fn imp_count(t: u64, n: usize, memo: &mut HashMap<u64, u64>) -> u64 {
    let ess = ess_mask(t, n);
    match ess.count_ones() {
        0 => return 1,
        1 => return 2,
        _ => {}
    }
    if let Some(&v) = memo.get(&t) {
        return v;
    }
    let mut total = 0;
    let mut m = ess;
    while m != 0 {
        let i = m.trailing_zeros() as usize + 1;
        m &= m - 1;
        total += imp_count(cofactor(t, n, i, 0), n, memo) + imp_count(cofactor(t, n, i, 1), n, memo);
    }
    memo.insert(t, total);
    total
}

/// Applies a variable permutation: the result is `t(x_{perm[0]}, ..., x_{perm[n-1]})`
/// with `perm` 1-based.
pub fn permute_vars(t: u64, n: usize, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    for idx in 0..(1usize << n) {
        let mut src = 0usize;
        for (j, &p) in perm.iter().enumerate() {
            src |= ((idx >> j) & 1) << (p - 1);
        }
        out |= ((t >> src) & 1) << idx;
    }
    out
}

/// `t(x ^ c)` for a point mask `c` (bit `i-1` complements `x_i`).
pub fn translate(t: u64, n: usize, c: u32) -> u64 {
    let mut r = t;
    for v in 0..n {
        if c & (1 << v) != 0 {
            let s = 1u32 << v;
            let m = VAR_MASKS[v] & full_mask(n);
            r = ((r & m) >> s) | ((r & !m & full_mask(n)) << s);
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kfun::KFunction;

    #[test]
    fn cofactor_matches_generic() {
        for n in 0..=4 {
            let f = KFunction::from_fn(2, n, |p| p.iter().enumerate().fold(0, |a, (i, &x)| a ^ (x & (i as u8 % 2))) ^ 1).unwrap();
            let t = f.to_bits().unwrap();
            for i in 1..=n {
                for c in 0..2 {
                    assert_eq!(cofactor(t, n, i, c), f.cofactor(i, c).unwrap().to_bits().unwrap());
                }
            }
            assert_eq!(ess_mask(t, n), f.essential_set().mask());
        }
    }

    #[test]
    fn sep_of_example_functions() {
        // g = x1x2 + x1^0 x3 = 0xd8
        assert_eq!(sep_vector(0xd8, 3), vec![3, 2, 1]);
        assert_eq!(sub_vector(0xd8, 3).iter().sum::<u64>(), 11);
        // f = x1x2 + x1x3
        let f = KFunction::from_fn(2, 3, |p| (p[0] & p[1]) ^ (p[0] & p[2])).unwrap().to_bits().unwrap();
        assert_eq!(sep_vector(f, 3), vec![3, 3, 1]);
        assert_eq!(sub_vector(f, 3), vec![2, 5, 5, 1]);
        let mut memo = HashMap::new();
        assert_eq!(imp_count(f, 3, &mut memo), 33);
        assert_eq!(imp_count(0xd8, 3, &mut memo), 28);
    }

    #[test]
    fn subcube_count() {
        assert_eq!(subcubes(5).len(), 243);
        assert_eq!(subcubes(0).len(), 1);
        assert_eq!(subcubes(3).iter().filter(|c| c.free == 0).count(), 8);
    }

    #[test]
    fn translate_and_permute() {
        // x1 complemented is x1^0
        assert_eq!(translate(0b10, 1, 1), 0b01);
        // swapping x1 and x2 in x1 x2^0 gives x1^0 x2
        let t = KFunction::from_fn(2, 2, |p| p[0] & (1 - p[1])).unwrap().to_bits().unwrap();
        let u = KFunction::from_fn(2, 2, |p| (1 - p[0]) & p[1]).unwrap().to_bits().unwrap();
        assert_eq!(permute_vars(t, 2, &[2, 1]), u);
    }
}
