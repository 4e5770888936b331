//! Instance grid for the matrix-manifold families with their listed
//! ambient and manifold dimensions.

use super::Family;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableRow {
    pub family: Family,
    pub m1: usize,
    pub m2: usize,
    pub m3: Option<usize>,
    /// Listed ambient dimension.
    pub n: usize,
    /// Listed manifold dimension.
    pub d: usize,
}

const fn tsv(m1: usize, m2: usize, m3: usize, n: usize, d: usize) -> TableRow {
    TableRow { family: Family::TopSingularVectors, m1, m2, m3: Some(m3), n, d }
}

const fn dl(m1: usize, m2: usize, m3: usize, n: usize, d: usize) -> TableRow {
    TableRow { family: Family::DictionaryLearning, m1, m2, m3: Some(m3), n, d }
}

const fn rs(m1: usize, m2: usize, n: usize, d: usize) -> TableRow {
    TableRow { family: Family::RotationSynchronization, m1, m2, m3: None, n, d }
}

pub const RIEMANNIAN_SUITE: [TableRow; 45] = [
    tsv(2, 2, 1, 4, 2),
    tsv(3, 3, 2, 12, 16),
    tsv(5, 5, 2, 20, 14),
    tsv(10, 10, 2, 40, 34),
    tsv(15, 15, 2, 60, 54),
    tsv(20, 20, 2, 80, 74),
    tsv(30, 30, 2, 120, 114),
    tsv(5, 5, 4, 40, 20),
    tsv(10, 10, 4, 80, 60),
    tsv(20, 20, 4, 160, 140),
    tsv(30, 30, 4, 240, 220),
    tsv(30, 10, 6, 240, 198),
    tsv(30, 15, 6, 270, 228),
    tsv(30, 10, 8, 320, 248),
    tsv(30, 15, 8, 360, 288),
    dl(2, 3, 1, 5, 4),
    dl(3, 5, 2, 16, 14),
    dl(4, 6, 3, 30, 27),
    dl(5, 7, 4, 48, 44),
    dl(6, 8, 5, 70, 65),
    dl(8, 10, 6, 108, 102),
    dl(10, 12, 7, 154, 147),
    dl(12, 14, 8, 208, 200),
    dl(14, 16, 10, 300, 290),
    dl(5, 20, 3, 75, 72),
    dl(7, 20, 5, 135, 130),
    dl(12, 20, 3, 96, 93),
    dl(3, 20, 5, 115, 110),
    dl(5, 20, 7, 175, 168),
    dl(3, 20, 12, 276, 264),
    rs(2, 2, 8, 2),
    rs(2, 4, 16, 4),
    rs(2, 6, 24, 6),
    rs(4, 2, 32, 12),
    rs(4, 4, 64, 24),
    rs(4, 6, 96, 36),
    rs(6, 2, 72, 30),
    rs(6, 4, 144, 60),
    rs(6, 6, 216, 90),
    rs(8, 2, 128, 56),
    rs(8, 4, 256, 112),
    rs(8, 6, 384, 168),
    rs(10, 2, 200, 90),
    rs(10, 4, 400, 180),
    rs(10, 6, 600, 270),
];
