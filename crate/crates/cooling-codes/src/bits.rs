//! Dense bit vectors, used for codeword supports in the verifier, for
//! words over GF(2) and for domination-mapping images.

/// A fixed-length bit vector packed into 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitWord {
    len: usize,
    words: Vec<u64>,
}

impl BitWord {
    pub fn zero(len: usize) -> Self {
        BitWord {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_support(len: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut w = BitWord::zero(len);
        for i in support {
            w.set(i, true);
        }
        w
    }

    /// Interprets the low bits of `value` as a word of length `len` (bit i of
    /// the integer becomes position i).
    pub fn from_u64(len: usize, value: u64) -> Self {
        assert!(len <= 64);
        let mut w = BitWord::zero(len);
        if !w.words.is_empty() {
            w.words[0] = if len == 64 {
                value
            } else {
                value & ((1u64 << len) - 1)
            };
        }
        w
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if bit {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn xor_in(&mut self, other: &BitWord) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersects(&self, other: &BitWord) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset_of(&self, other: &BitWord) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn hamming_distance(&self, other: &BitWord) -> usize {
        assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a ^ b).count_ones() as usize)
            .sum()
    }

    /// Index of the lowest set bit, if any.
    pub fn lowest_one(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }

    /// The word as an integer; only valid for lengths up to 64.
    pub fn as_u64(&self) -> u64 {
        assert!(self.len <= 64);
        self.words.first().copied().unwrap_or(0)
    }
}

impl std::fmt::Debug for BitWord {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Lexicographic iterator over all k-subsets of a universe slice.
/// Yields sorted index vectors drawn from `universe`.
pub struct Combinations<'a> {
    universe: &'a [usize],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub fn new(universe: &'a [usize], k: usize) -> Self {
        Combinations {
            universe,
            idx: (0..k).collect(),
            done: k > universe.len(),
        }
    }
}

impl<'a> Iterator for Combinations<'a> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let k = self.idx.len();
        let n = self.universe.len();
        let item: Vec<usize> = self.idx.iter().map(|&i| self.universe[i]).collect();
        // advance to the next combination in lexicographic order
        if k == 0 {
            self.done = true;
            return Some(item);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + n - k {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(item)
    }
}

/// All k-subsets of {0, .., n-1}.
pub fn subsets_of_range(n: usize, k: usize) -> Vec<Vec<usize>> {
    let universe: Vec<usize> = (0..n).collect();
    Combinations::new(&universe, k).collect()
}
