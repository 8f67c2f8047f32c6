//! Dense ranking of sorted multisets (cop placements) via the combinatorial
//! number system: `c_0 <= c_1 <= ...` maps to the strictly increasing
//! `c_i + i`, ranked colexicographically.

#[derive(Debug, Clone)]
pub struct MultisetIndexer {
    universe: usize,
    size: usize,
    /// binom[i][j] = C(i, j) for i < universe + size, j <= size
    binom: Vec<Vec<u64>>,
    count: u64,
}

impl MultisetIndexer {
    /// Multisets of `size` elements drawn from `0..universe`.
    pub fn new(universe: usize, size: usize) -> Self {
        let rows = universe + size;
        let mut binom = vec![vec![0u64; size + 2]; rows + 1];
        for i in 0..=rows {
            binom[i][0] = 1;
            for j in 1..=(size + 1).min(i) {
                binom[i][j] = binom[i - 1][j - 1].saturating_add(binom[i - 1][j]);
            }
        }
        let count = if universe == 0 {
            u64::from(size == 0)
        } else {
            binom[universe + size - 1][size]
        };
        MultisetIndexer {
            universe,
            size,
            binom,
            count,
        }
    }

    /// Number of multisets, `C(universe + size - 1, size)`.
    pub fn count(&self) -> u64 {
        self.count
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    /// Rank of a sorted multiset.
    pub fn rank(&self, sorted: &[usize]) -> u64 {
        debug_assert_eq!(sorted.len(), self.size);
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        sorted
            .iter()
            .enumerate()
            .map(|(i, &c)| self.binom[c + i][i + 1])
            .sum()
    }

    /// Writes the multiset with the given rank into `out` (sorted).
    pub fn unrank_into(&self, mut rank: u64, out: &mut [usize]) {
        debug_assert!(rank < self.count);
        for i in (0..self.size).rev() {
            // largest d with C(d, i+1) <= rank
            let mut lo = i;
            let mut hi = self.universe + i - 1;
            while lo < hi {
                let mid = (lo + hi).div_ceil(2);
                if self.binom[mid][i + 1] <= rank {
                    lo = mid;
                } else {
                    hi = mid - 1;
                }
            }
            rank -= self.binom[lo][i + 1];
            out[i] = lo - i;
        }
    }

    pub fn unrank(&self, rank: u64) -> Vec<usize> {
        let mut out = vec![0; self.size];
        self.unrank_into(rank, &mut out);
        out
    }
}
