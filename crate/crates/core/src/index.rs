//! Multi-indices `1 <= i_1 < ... < i_k <= n`, stored as bitmasks.
//!
//! The set `I_{k,n}` is always ordered lexicographically, and every dense
//! coefficient vector in the crate is laid out in that order.

use std::fmt;

use crate::error::{Error, Result};

/// Largest ambient dimension supported by the exterior algebra.
pub const MAX_N: usize = 16;

/// A strictly increasing tuple of 1-based indices bounded by `n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    mask: u32,
    n: u8,
}

impl MultiIndex {
    /// Builds from 1-based indices, which must be strictly increasing.
    pub fn new(indices: &[usize], n: usize) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::BadIndex(format!("ambient dimension {n} exceeds {MAX_N}")));
        }
        let mut mask = 0u32;
        let mut prev = 0;
        for &i in indices {
            if i <= prev || i > n {
                return Err(Error::BadIndex(format!("{indices:?} is not increasing within 1..={n}")));
            }
            mask |= 1 << (i - 1);
            prev = i;
        }
        Ok(MultiIndex { mask, n: n as u8 })
    }

    /// Builds from a bitmask; bit `j` stands for index `j + 1`.
    pub fn from_mask(mask: u32, n: usize) -> Self {
        debug_assert!(n <= MAX_N && (n == 32 || mask >> n == 0));
        MultiIndex { mask, n: n as u8 }
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    /// 0-based positions in increasing order.
    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (0..self.n as usize).filter(move |&j| mask >> j & 1 == 1)
    }

    /// 1-based indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.positions().map(|j| j + 1).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.n() && self.mask >> (i - 1) & 1 == 1
    }

    /// Position of `self` in the lexicographic order of `I_{k,n}`.
    pub fn rank(&self) -> usize {
        lex_rank(self.mask, self.n as usize)
    }

    /// All of `I_{k,n}` in lexicographic order.
    pub fn all(k: usize, n: usize) -> Vec<MultiIndex> {
        subsets(k, n).into_iter().map(|mask| MultiIndex::from_mask(mask, n)).collect()
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.indices().cmp(&other.indices())
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (t, i) in self.indices().iter().enumerate() {
            if t > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

const fn binomial_table() -> [[u32; MAX_N + 1]; MAX_N + 1] {
    let mut t = [[0u32; MAX_N + 1]; MAX_N + 1];
    let mut n = 0;
    while n <= MAX_N {
        t[n][0] = 1;
        let mut k = 1;
        while k <= n {
            t[n][k] = t[n - 1][k - 1] + if k < n { t[n - 1][k] } else { 0 };
            k += 1;
        }
        n += 1;
    }
    t
}

static BINOM: [[u32; MAX_N + 1]; MAX_N + 1] = binomial_table();

/// `C(n, k)` for `n <= 16`.
#[inline]
pub fn small_binomial(n: usize, k: usize) -> usize {
    if k > n {
        0
    } else {
        BINOM[n][k] as usize
    }
}

/// Lexicographic rank of a `k`-subset of `{0..n}` given as a mask.
#[inline]
pub fn lex_rank(mask: u32, n: usize) -> usize {
    let k = mask.count_ones() as usize;
    let mut rank = 0;
    let mut remaining = k;
    let mut next = 0;
    let mut bits = mask;
    while bits != 0 {
        let c = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        // subsets that agree so far but put a smaller element at this slot
        for j in next..c {
            rank += small_binomial(n - j - 1, remaining - 1);
        }
        remaining -= 1;
        next = c + 1;
    }
    rank
}

/// Cached [`subsets`] for `n <= 16`.
pub fn masks(k: usize, n: usize) -> &'static [u32] {
    use std::sync::OnceLock;
    static CACHE: OnceLock<Vec<Vec<Vec<u32>>>> = OnceLock::new();
    let table = CACHE.get_or_init(|| (0..=MAX_N).map(|n| (0..=n).map(|k| subsets(k, n)).collect()).collect());
    if k > n {
        return &[];
    }
    &table[n][k]
}

/// All `k`-subsets of `{0..n}` as masks, in lexicographic order of their
/// sorted element lists.
pub fn subsets(k: usize, n: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(small_binomial(n, k));
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, k: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<u32>) {
        if cur.len() == k {
            out.push(cur.iter().fold(0, |m, &j| m | 1 << j));
            return;
        }
        for j in start..=n - (k - cur.len()) {
            cur.push(j);
            rec(j + 1, k, n, cur, out);
            cur.pop();
        }
    }
    if k <= n {
        rec(0, k, n, &mut cur, &mut out);
    }
    out
}

/// Sign of `e_A ∧ e_B` relative to `e_{A∪B}` for disjoint masks: `true` when
/// the number of pairs `a ∈ A, b ∈ B` with `a > b` is odd.
#[inline]
pub fn wedge_sign_odd(a: u32, b: u32) -> bool {
    let mut inversions = 0;
    let mut bits = a;
    while bits != 0 {
        let i = bits.trailing_zeros();
        bits &= bits - 1;
        inversions += (b & ((1u32 << i) - 1)).count_ones();
    }
    inversions & 1 == 1
}
