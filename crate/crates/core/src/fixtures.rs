// SPDX-License-Identifier: Apache-2.0

//! Published reference values used by `tables --diff` and the acceptance
//! suite. Expressions use the syntax of [`crate::expr`] with `k = 2`.

/// `x1x2 + x1x3`.
pub const EXAMPLE_F: &str = "x1*x2 + x1*x3";
/// `x1x2 + x1^0 x3`.
pub const EXAMPLE_G: &str = "x1*x2 + x1^0*x3";

pub struct ExampleValues {
    pub imp: u64,
    pub sub: u64,
    pub sep: u64,
    pub imp_diagram_123: u64,
    pub depth_123: usize,
}

pub const EXAMPLE_F_VALUES: ExampleValues = ExampleValues { imp: 33, sub: 13, sep: 7, imp_diagram_123: 5, depth_123: 4 };
pub const EXAMPLE_G_VALUES: ExampleValues = ExampleValues { imp: 28, sub: 11, sep: 6, imp_diagram_123: 4, depth_123: 3 };

pub const SUB_F: [&str; 13] = [
    "0", "1", "x1", "x2", "x3", "x2^0", "x3^0", "x2 + x3", "x1*x2", "x1*x2^0", "x1*x3", "x1*x3^0", EXAMPLE_F,
];
pub const SUB_G: [&str; 11] =
    ["0", "1", "x1", "x2", "x3", "x1^0", "x1*x2", "x1^0*x3", "x1 + x1^0*x3", "x1*x2 + x1^0", EXAMPLE_G];
pub const SEP_G: [&str; 6] = ["1", "2", "3", "1,2", "1,3", "1,2,3"];

/// Implementation sets of the two example functions under two orderings.
pub const EXAMPLE_IMPLEMENTATIONS: [(&str, &str, &[&str]); 4] = [
    (EXAMPLE_F, "123", &["(1,00)", "(123,1000)", "(123,1011)", "(123,1101)", "(123,1110)"]),
    (EXAMPLE_F, "213", &["(21,000)", "(213,0100)", "(213,0111)", "(21,100)", "(213,1101)", "(213,1110)"]),
    (EXAMPLE_G, "123", &["(13,000)", "(13,011)", "(12,100)", "(12,111)"]),
    (EXAMPLE_G, "213", &["(21,010)", "(213,0000)", "(213,0011)", "(213,1000)", "(213,1011)", "(21,111)"]),
];

/// Imp-classes of `P_2^2`: members, `imp`, class size.
pub const TABLE1: [(&[&str], u64, u64); 4] = [
    (&["0", "1"], 1, 2),
    (&["x1", "x2", "x1^0", "x2^0"], 2, 4),
    (
        &[
            "x1*x2",
            "x1*x2^0",
            "x1^0*x2",
            "x1^0*x2^0",
            "x1 + x1*x2",
            "x2^0 + x1*x2",
            "x1^0 + x1*x2",
            "x1^0 + x1*x2^0",
        ],
        6,
        8,
    ),
    (&["x1 + x2", "x1 + x2^0"], 8, 2),
];

/// One row of the `P_2^3` classification: a genus representative and the
/// sep-, sub-, imp- and genus-classes it belongs to.
#[derive(Clone, Copy, Debug)]
pub struct Table3Row {
    pub representative: &'static str,
    pub sep_class: u32,
    pub sep: u64,
    pub sep_size: u64,
    pub sub_class: u32,
    pub sub: u64,
    pub sub_size: u64,
    pub imp_class: u32,
    pub imp: u64,
    pub imp_size: u64,
    pub genus_size: u64,
}

const fn row(
    representative: &'static str,
    sep: (u32, u64, u64),
    sub: (u32, u64, u64),
    imp: (u32, u64, u64),
    genus_size: u64,
) -> Table3Row {
    Table3Row {
        representative,
        sep_class: sep.0,
        sep: sep.1,
        sep_size: sep.2,
        sub_class: sub.0,
        sub: sub.1,
        sub_size: sub.2,
        imp_class: imp.0,
        imp: imp.1,
        imp_size: imp.2,
        genus_size,
    }
}

pub const TABLE3: [Table3Row; 14] = [
    row("0", (1, 0, 2), (1, 1, 2), (1, 1, 2), 2),
    row("x1", (2, 1, 6), (2, 3, 6), (2, 2, 6), 6),
    row("x1*x2", (3, 3, 30), (3, 5, 24), (3, 6, 24), 24),
    row("x1 + x2", (3, 3, 30), (4, 7, 6), (4, 8, 6), 6),
    row("x1 + x1*x3 + x2*x3", (4, 6, 24), (5, 11, 24), (5, 28, 24), 24),
    row("x1*x2*x3", (5, 7, 194), (6, 9, 64), (6, 21, 16), 16),
    row("x1*x2^0*x3^0 + x1", (5, 7, 194), (6, 9, 64), (7, 23, 48), 48),
    row("x1*x2^0*x3^0 + x2*x3", (5, 7, 194), (7, 12, 48), (8, 30, 48), 48),
    row("x1*x2^0*x3 + x1*x2*x3^0 + x2*x3", (5, 7, 194), (8, 12, 8), (9, 36, 16), 8),
    row("x1^0*x2*x3 + x1*x2^0*x3^0", (5, 7, 194), (9, 15, 26), (9, 36, 16), 8),
    row("x1*x2^0*x3 + x1*x2*x3^0 + x1^0*x2*x3", (5, 7, 194), (9, 15, 26), (10, 42, 16), 16),
    row("x1 + x2 + x3", (5, 7, 194), (9, 15, 26), (11, 48, 2), 2),
    row("x1 + x2*x3", (5, 7, 194), (10, 13, 24), (12, 32, 24), 24),
    row("x1*x2^0*x3 + x1*x2*x3^0", (5, 7, 194), (11, 13, 24), (13, 33, 24), 24),
];

/// The printed averages: `sep(f)`, functions per sep-class, `sub(f)`,
/// functions per sub-class, `imp(f)`, functions per imp-class, functions per
/// genus. Rounded to one decimal.
pub const TABLE3_AVERAGES: [f64; 7] = [6.2, 51.2, 10.6, 23.3, 26.0, 19.7, 18.3];

/// `(n, t(G), t(IM), t(SB), t(SP))`.
pub const TABLE4: [(usize, u64, u64, u64, u64); 4] =
    [(1, 3, 2, 2, 2), (2, 6, 4, 4, 3), (3, 22, 13, 11, 5), (4, 402, 104, 74, 11)];

/// Orbit counts on `P_2^3` and `P_2^4`, by group name.
pub const FIGURE4: [(&str, u64, u64); 9] = [
    ("s", 80, 3984),
    ("lg", 20, 92),
    ("a", 10, 32),
    ("ge", 14, 222),
    ("lf", 32, 4096),
    ("rag", 3, 8),
    ("axa1", 6, 18),
    ("g", 22, 402),
    ("identity", 256, 65536),
];

/// Sep-classes of `P_2^5`: `(sep_5, sep_4, sep_3, sep_2, sep_1)`, `sep(f)`,
/// class size.
pub const TABLE5: [([u64; 5], u64, u64); 38] = [
    ([0, 0, 0, 0, 0], 0, 2),
    ([0, 0, 0, 0, 1], 1, 10),
    ([0, 0, 0, 1, 2], 3, 100),
    ([0, 0, 1, 2, 3], 6, 240),
    ([0, 0, 1, 3, 3], 7, 1940),
    ([0, 1, 2, 5, 4], 12, 1920),
    ([0, 1, 3, 4, 4], 12, 2400),
    ([0, 1, 3, 5, 4], 13, 8160),
    ([0, 1, 4, 4, 4], 13, 120),
    ([0, 1, 4, 5, 4], 14, 8400),
    ([0, 1, 4, 6, 4], 15, 301970),
    ([1, 2, 7, 9, 5], 24, 20480),
    ([1, 3, 5, 7, 5], 21, 3840),
    ([1, 3, 5, 8, 5], 22, 9600),
    ([1, 3, 6, 6, 5], 21, 1920),
    ([1, 3, 6, 7, 5], 22, 1920),
    ([1, 3, 6, 8, 5], 23, 38400),
    ([1, 3, 7, 7, 5], 23, 1920),
    ([1, 3, 7, 8, 5], 24, 38400),
    ([1, 3, 7, 9, 5], 25, 130560),
    ([1, 4, 6, 6, 5], 22, 3000),
    ([1, 4, 7, 7, 5], 24, 34720),
    ([1, 4, 7, 8, 5], 25, 177120),
    ([1, 4, 7, 9, 5], 26, 274560),
    ([1, 4, 8, 7, 5], 25, 7680),
    ([1, 4, 8, 8, 5], 26, 274560),
    ([1, 4, 8, 9, 5], 27, 1847280),
    ([1, 5, 7, 9, 5], 27, 81920),
    ([1, 5, 8, 8, 5], 27, 600),
    ([1, 5, 8, 9, 5], 28, 1013760),
    ([1, 5, 8, 10, 5], 29, 38400),
    ([1, 5, 9, 7, 5], 27, 1200),
    ([1, 5, 9, 8, 5], 28, 449040),
    ([1, 5, 9, 9, 5], 29, 4093200),
    ([1, 5, 9, 10, 5], 30, 5443200),
    ([1, 5, 10, 8, 5], 29, 13680),
    ([1, 5, 10, 9, 5], 30, 5826160),
    ([1, 5, 10, 10, 5], 31, 4274814914),
];

/// Two functions with equal `imp` but different `sub` (imp does not refine sub).
pub const WITNESS_IMP_NOT_SUB: (&str, &str) = ("x1^0*x2*x3 + x1*x2^0*x3^0", "x2*x3 + x1*x2^0*x3 + x1*x2*x3^0");
/// Two sub-equivalent functions with different `imp` (sub does not refine imp).
pub const WITNESS_SUB_NOT_IMP: (&str, &str) = ("x1*x2^0*x3^0 + x1", "x1*x2*x3");
/// Sub- and imp-equivalent, yet in different orbits of the restricted affine group.
pub const EQUIVALENT_NOT_AFFINE: (&str, &str) = ("x1*x2^0*x3 + x1^0", "x1*x2^0*x3 + x1*x2");

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table5_is_consistent() {
        let total: u64 = TABLE5.iter().map(|r| r.2).sum();
        assert_eq!(total, 1u64 << 32);
        for (v, sep, _) in TABLE5 {
            assert_eq!(v.iter().sum::<u64>(), sep);
        }
    }

    #[test]
    fn table3_partitions_p23() {
        assert_eq!(TABLE3.iter().map(|r| r.genus_size).sum::<u64>(), 256);
    }
}
