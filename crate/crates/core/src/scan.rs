// SPDX-License-Identifier: Apache-2.0

//! Sep-classification of all `2^32` functions of five Boolean variables.
//!
//! A function is split into its cofactors `f0 = f(x5 = 0)` and
//! `f1 = f(x5 = 1)`, both 16-bit tables over `x1..x4`. Every subcube of the
//! 5-cube is a subcube `ρ` of the 4-cube with `x5` fixed to 0, fixed to 1 or
//! free. With `x5` free the essential set is
//! `Ess(f0|ρ) ∪ Ess(f1|ρ)`, plus `x5` when `f0|ρ ≠ f1|ρ`. Per-table
//! essential sets on all 81 subcubes are precomputed once.
//!
//! The default mode lets `f0` range over genus representatives of `P_2^4`,
//! weighted by orbit size. Genus transformations of `x1..x4` and the output
//! extend to `P_2^5` and preserve separable sets, so the weighted counts are
//! exact. The full mode scans every `f0` and is resumable.

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits;
use crate::classify::{table_text, ClassEntry, ClassificationReport};
use crate::error::{Error, Result};
use crate::expr;
use crate::fixtures::TABLE5;
use crate::groups::{self, GroupDescriptor, GroupName};
use crate::kfun::KFunction;

const CUBES: usize = 81;
const HIST_SIZE: usize = 1 << 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum ScanMode {
    #[default]
    Orbit,
    Full,
}

#[derive(Clone, Debug, Default)]
pub struct ScanOptions {
    pub mode: ScanMode,
    /// Where progress is saved between chunks.
    pub checkpoint: Option<PathBuf>,
    /// Continue from `checkpoint` if it exists.
    pub resume: bool,
    /// Stop (after saving a checkpoint) once this much time has passed.
    pub time_budget: Option<Duration>,
    /// Number of `f0` tables per chunk; 0 picks a default.
    pub chunk: usize,
}

/// Precomputed per-table data for 4-variable Boolean tables.
pub struct PairKernel {
    points: [u16; CUBES],
    ess: Vec<[u8; CUBES]>,
    sep4: Vec<u16>,
    size_masks: [u32; 6],
}

impl Default for PairKernel {
    fn default() -> Self {
        Self::new()
    }
}

impl PairKernel {
    pub fn new() -> Self {
        let cubes = bits::subcubes(4);
        let mut points = [0u16; CUBES];
        for (i, c) in cubes.iter().enumerate() {
            points[i] = c.points as u16;
        }
        let mut ess = vec![[0u8; CUBES]; 1 << 16];
        let mut sep4 = vec![0u16; 1 << 16];
        for t in 0..(1usize << 16) {
            let diffs: Vec<u64> = (1..=4).map(|i| bits::edge_diff(t as u64, 4, i)).collect();
            let mut m = 0u16;
            for (i, c) in cubes.iter().enumerate() {
                let e = bits::cube_ess(&diffs, c) as u8;
                ess[t][i] = e;
                m |= 1 << e;
            }
            sep4[t] = m;
        }
        let mut size_masks = [0u32; 6];
        for s in 0u32..32 {
            size_masks[s.count_ones() as usize] |= 1 << s;
        }
        PairKernel { points, ess, sep4, size_masks }
    }

    /// Separable-set mask (bit `M` for subset mask `M`) of `f = (f0, f1)`.
    #[inline]
    pub fn sep_mask(&self, f0: u16, f1: u16) -> u32 {
        let e0 = &self.ess[f0 as usize];
        let e1 = &self.ess[f1 as usize];
        let d = f0 ^ f1;
        let mut m = (self.sep4[f0 as usize] | self.sep4[f1 as usize]) as u32;
        for r in 0..CUBES {
            let s = e0[r] | e1[r] | (((d & self.points[r]) != 0) as u8) << 4;
            m |= 1 << s;
        }
        m & !1
    }

    /// `(sep_1, ..., sep_5)`.
    #[inline]
    pub fn sep_vector(&self, mask: u32) -> [u64; 5] {
        let mut v = [0u64; 5];
        for (m, slot) in v.iter_mut().enumerate() {
            *slot = (mask & self.size_masks[m + 1]).count_ones() as u64;
        }
        v
    }

    #[inline]
    fn packed(&self, mask: u32) -> usize {
        let mut key = 0usize;
        for m in 1..=5 {
            key |= ((mask & self.size_masks[m]).count_ones() as usize) << (4 * (m - 1));
        }
        key
    }
}

fn unpack(key: usize) -> [u64; 5] {
    let mut v = [0u64; 5];
    for (m, slot) in v.iter_mut().enumerate() {
        *slot = ((key >> (4 * m)) & 0xf) as u64;
    }
    v
}

#[derive(Clone, Debug, Default, Serialize, Deserialize)]
struct Checkpoint {
    mode: ScanMode,
    next: usize,
    /// packed key -> (count, first hit as `work index << 16 | f1`)
    counts: BTreeMap<usize, (u64, u64)>,
}

fn work_list(mode: ScanMode) -> Result<Vec<(u16, u64)>> {
    match mode {
        ScanMode::Full => Ok((0..=u16::MAX).map(|t| (t, 1)).collect()),
        ScanMode::Orbit => {
            let gd = GroupDescriptor::new(GroupName::GE, 2, 4)?;
            Ok(groups::orbit_ids(&gd)?.into_iter().map(|(id, size)| (id as u16, size)).collect())
        }
    }
}

fn scan_chunk(kernel: &PairKernel, items: &[(u16, u64)], base: usize) -> BTreeMap<usize, (u64, u64)> {
    items
        .par_iter()
        .enumerate()
        .fold(
            || (vec![0u64; HIST_SIZE], BTreeMap::<usize, u64>::new()),
            |(mut hist, mut reps), (i, &(f0, w))| {
                for f1 in 0..=u16::MAX {
                    let key = kernel.packed(kernel.sep_mask(f0, f1));
                    if hist[key] == 0 {
                        reps.entry(key).or_insert(((base + i) as u64) << 16 | f1 as u64);
                    }
                    hist[key] += w;
                }
                (hist, reps)
            },
        )
        .map(|(hist, reps)| {
            reps.into_iter().map(|(key, rep)| (key, (hist[key], rep))).collect::<BTreeMap<_, _>>()
        })
        .reduce(BTreeMap::new, merge)
}

fn merge(mut a: BTreeMap<usize, (u64, u64)>, b: BTreeMap<usize, (u64, u64)>) -> BTreeMap<usize, (u64, u64)> {
    for (key, (count, rep)) in b {
        let e = a.entry(key).or_insert((0, rep));
        e.0 += count;
        e.1 = e.1.min(rep);
    }
    a
}

/// The sep-classification of `P_2^5`, classes ordered by
/// `(sep_5, sep_4, sep_3, sep_2, sep_1)`.
pub fn sep_scan_p2_5(opts: &ScanOptions) -> Result<ClassificationReport> {
    let started = Instant::now();
    let kernel = PairKernel::new();
    let items = work_list(opts.mode)?;
    let chunk = if opts.chunk == 0 {
        match opts.mode {
            ScanMode::Orbit => 32,
            ScanMode::Full => 512,
        }
    } else {
        opts.chunk
    };

    let mut state = Checkpoint { mode: opts.mode, ..Default::default() };
    if opts.resume {
        if let Some(path) = &opts.checkpoint {
            if path.exists() {
                let saved: Checkpoint = serde_json::from_slice(&std::fs::read(path)?)?;
                if saved.mode != opts.mode {
                    return Err(Error::Format("checkpoint was written by a different scan mode".into()));
                }
                state = saved;
            }
        }
    }

    while state.next < items.len() {
        let end = (state.next + chunk).min(items.len());
        let part = scan_chunk(&kernel, &items[state.next..end], state.next);
        state.counts = merge(std::mem::take(&mut state.counts), part);
        state.next = end;
        if let Some(path) = &opts.checkpoint {
            crate::cache::write_atomic(path, &serde_json::to_vec(&state)?)?;
        }
        if let Some(budget) = opts.time_budget {
            if started.elapsed() > budget && state.next < items.len() {
                return Err(Error::Budget(format!("sep scan stopped at {}/{} after {:?}", state.next, items.len(), started.elapsed())));
            }
        }
    }

    let mut rows: Vec<([u64; 5], u64, u32)> = state
        .counts
        .iter()
        .map(|(&key, &(count, hit))| {
            let f0 = items[(hit >> 16) as usize].0 as u32;
            (unpack(key), count, ((hit & 0xffff) as u32) << 16 | f0)
        })
        .collect();
    rows.sort_by_key(|r| {
        let mut rev = r.0;
        rev.reverse();
        rev
    });
    let mut classes = Vec::with_capacity(rows.len());
    for (i, (v, count, rep)) in rows.into_iter().enumerate() {
        let f = KFunction::from_id(2, 5, rep as u128)?;
        classes.push(ClassEntry {
            id: i + 1,
            key: format!("sep=({})", v.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
            size: count,
            representative: table_text(&f),
            expression: expr::to_sp(&f),
            imp: None,
            sub: Vec::new(),
            sep: v.to_vec(),
        });
    }
    Ok(ClassificationReport { relation: "sep".into(), k: 2, n: 5, total: 1 << 32, classes, assignment: None })
}

/// Outcome of checking random functions against the published profiles.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SampleCheck {
    pub samples: u64,
    pub seed: u64,
    /// Distinct sep vectors seen, as `(sep_1, ..., sep_5)`.
    pub observed: BTreeSet<[u64; 5]>,
    /// Sampled tables whose vector is not a published profile.
    pub unknown: Vec<String>,
    /// Tables where the pair kernel and the plain subcube scan disagree.
    pub kernel_mismatches: Vec<String>,
}

impl SampleCheck {
    pub fn passed(&self) -> bool {
        self.unknown.is_empty() && self.kernel_mismatches.is_empty()
    }
}

/// The published profiles as `(sep_1, ..., sep_5)`.
pub fn published_profiles() -> BTreeSet<[u64; 5]> {
    TABLE5
        .iter()
        .map(|(v, _, _)| {
            let mut r = *v;
            r.reverse();
            r
        })
        .collect()
}

/// Classifies `samples` uniformly random functions of `P_2^5` with the
/// generic subcube kernel and cross-checks the pair kernel.
pub fn sep_sample_check(samples: u64, seed: u64) -> SampleCheck {
    let kernel = PairKernel::new();
    let profiles = published_profiles();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut check = SampleCheck { samples, seed, observed: BTreeSet::new(), unknown: Vec::new(), kernel_mismatches: Vec::new() };
    for _ in 0..samples {
        let t: u32 = rng.gen();
        let generic = bits::sep_mask(t as u64, 5) as u32;
        let pair = kernel.sep_mask(t as u16, (t >> 16) as u16);
        if generic != pair && check.kernel_mismatches.len() < 16 {
            check.kernel_mismatches.push(format!("{t:08x}"));
        }
        let v = kernel.sep_vector(generic);
        if !profiles.contains(&v) && check.unknown.len() < 16 {
            check.unknown.push(format!("{t:08x}"));
        }
        check.observed.insert(v);
    }
    check
}

/// Cell-by-cell comparison with the published table. Empty when equal.
pub fn diff_against_table5(report: &ClassificationReport) -> Vec<String> {
    let mut diffs = Vec::new();
    let got: BTreeMap<Vec<u64>, u64> = report.classes.iter().map(|c| (c.sep.clone(), c.size)).collect();
    for (i, (v, _, count)) in TABLE5.iter().enumerate() {
        let mut key = v.to_vec();
        key.reverse();
        match got.get(&key) {
            Some(&c) if c == *count => {}
            Some(&c) => diffs.push(format!("row {}: {:?} expected {count}, got {c}", i + 1, v)),
            None => diffs.push(format!("row {}: {:?} missing", i + 1, v)),
        }
    }
    let published = published_profiles();
    for c in &report.classes {
        let v: [u64; 5] = c.sep.clone().try_into().unwrap_or([u64::MAX; 5]);
        if !published.contains(&v) {
            diffs.push(format!("unexpected class {:?} with {} functions", c.sep, c.size));
        }
    }
    diffs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_kernel_matches_subcube_scan() {
        let kernel = PairKernel::new();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..2000 {
            let t: u32 = rng.gen();
            assert_eq!(kernel.sep_mask(t as u16, (t >> 16) as u16), bits::sep_mask(t as u64, 5) as u32, "{t:08x}");
        }
        assert_eq!(kernel.sep_mask(0, 0), 0);
        assert_eq!(kernel.sep_mask(0, 0xffff), 1 << 16);
    }

    #[test]
    fn sample_check_small() {
        let c = sep_sample_check(2000, 1);
        assert!(c.passed(), "{c:?}");
        assert!(c.observed.contains(&[5, 10, 10, 5, 1]));
    }

    #[test]
    fn packing_round_trips() {
        let kernel = PairKernel::new();
        let mask = kernel.sep_mask(0x6996, 0x1234);
        assert_eq!(unpack(kernel.packed(mask)), kernel.sep_vector(mask));
    }
}
