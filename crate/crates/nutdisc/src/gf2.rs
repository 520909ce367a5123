//! Bit-exact linear algebra over Z2 and the generator-matrix families.
//!
//! A generator matrix is conceptually infinite; we work with a finite M x M
//! truncation, which is exact for every index n < 2^M because an upper
//! triangular matrix never lets higher columns influence the first M output
//! digits.

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

#[inline]
fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD_BITS)
}

/// Finite bit vector, least-significant digit first when it represents the
/// base-2 expansion of an integer. Trailing zeros are permitted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn from_bits(bits: &[u8]) -> Self {
        let mut v = BitVector::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b != 0 {
                v.set(i, true);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / WORD_BITS] >> (i % WORD_BITS) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        debug_assert!(i < self.len);
        let mask = 1u64 << (i % WORD_BITS);
        if value {
            self.words[i / WORD_BITS] |= mask;
        } else {
            self.words[i / WORD_BITS] &= !mask;
        }
    }

    /// Digits as 0/1 bytes, index 0 first.
    pub fn to_bits(&self) -> Vec<u8> {
        (0..self.len).map(|i| self.get(i) as u8).collect()
    }

    /// Bitwise xor; both vectors must have equal length.
    pub fn xor(&self, other: &BitVector) -> BitVector {
        assert_eq!(self.len, other.len);
        BitVector {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
            len: self.len,
        }
    }

    fn words(&self) -> &[u64] {
        &self.words
    }
}

/// Base-2 digits of `n`, least significant first; empty for n = 0.
pub fn bits_lsb(n: u64) -> BitVector {
    let len = (64 - n.leading_zeros()) as usize;
    BitVector {
        words: if len == 0 { vec![] } else { vec![n] },
        len,
    }
}

/// M x M truncation of a binary generator matrix, rows bit-packed.
///
/// Row and column indices are 0-based in this API; the unit-diagonal upper
/// triangular ("NUT") shape means entry(i, j) = 0 for j < i and 1 for j = i.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    dim: usize,
    rows: Vec<Vec<u64>>,
    nut: bool,
}

impl Gf2Matrix {
    /// Builds from explicit 0/1 entries, row-major. Rejects matrices whose
    /// left upper prefixes are not all invertible.
    pub fn from_entries(entries: &[Vec<u8>]) -> Result<Self> {
        let dim = entries.len();
        if dim == 0 || entries.iter().any(|r| r.len() != dim) {
            return Err(Error::UnsupportedSpec {
                expected: "non-empty square 0/1 matrix",
                got: format!("{} rows", dim),
            });
        }
        let mut rows = vec![vec![0u64; words_for(dim)]; dim];
        for (i, row) in entries.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                if e > 1 {
                    return Err(Error::UnsupportedSpec {
                        expected: "entries 0 or 1",
                        got: e.to_string(),
                    });
                }
                if e == 1 {
                    rows[i][j / WORD_BITS] |= 1 << (j % WORD_BITS);
                }
            }
        }
        let mut m = Gf2Matrix {
            dim,
            rows,
            nut: false,
        };
        if let Some(order) = m.first_singular_prefix() {
            return Err(Error::SingularMatrix { order });
        }
        m.nut = m.check_nut();
        Ok(m)
    }

    /// Random NUT matrix: unit diagonal, uniform bits strictly above it.
    pub fn random_nut<R: rand::Rng>(dim: usize, rng: &mut R) -> Self {
        let mut rows = vec![vec![0u64; words_for(dim)]; dim];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i / WORD_BITS] |= 1 << (i % WORD_BITS);
            for j in i + 1..dim {
                if rng.random::<bool>() {
                    row[j / WORD_BITS] |= 1 << (j % WORD_BITS);
                }
            }
        }
        Gf2Matrix {
            dim,
            rows,
            nut: true,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// True when the matrix is upper triangular with unit diagonal.
    pub fn is_nut(&self) -> bool {
        self.nut
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> bool {
        debug_assert!(row < self.dim && col < self.dim);
        self.rows[row][col / WORD_BITS] >> (col % WORD_BITS) & 1 == 1
    }

    /// Parity of the bitwise AND of `row` with the packed mask `words`.
    #[inline]
    pub(crate) fn row_dot(&self, row: usize, words: &[u64]) -> bool {
        let mut acc = 0u64;
        for (a, b) in self.rows[row].iter().zip(words) {
            acc ^= a & b;
        }
        acc.count_ones() & 1 == 1
    }

    /// Matrix-vector product over Z2: y_i = xor_j entry(i, j) * v_j.
    /// The result always has length M.
    pub fn apply(&self, v: &BitVector) -> Result<BitVector> {
        if v.len() > self.dim {
            return Err(Error::VectorTooLong {
                len: v.len(),
                dim: self.dim,
            });
        }
        let mut out = BitVector::zeros(self.dim);
        for i in 0..self.dim {
            if self.row_dot(i, v.words()) {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    /// True iff every left upper n x n prefix, n = 1..=M, is nonsingular.
    pub fn full_rank_prefixes(&self) -> bool {
        self.first_singular_prefix().is_none()
    }

    /// Smallest n whose n x n prefix is singular, if any.
    ///
    /// Forward elimination without pivoting: the k-th reduced row must keep a
    /// one in column k, which over Z2 is equivalent to every leading
    /// principal minor being nonzero.
    fn first_singular_prefix(&self) -> Option<usize> {
        let w = words_for(self.dim);
        let mut reduced: Vec<Vec<u64>> = Vec::with_capacity(self.dim);
        for k in 0..self.dim {
            let mut row = self.rows[k].clone();
            row.resize(w, 0);
            for (p, prow) in reduced.iter().enumerate() {
                if row[p / WORD_BITS] >> (p % WORD_BITS) & 1 == 1 {
                    for (a, b) in row.iter_mut().zip(prow) {
                        *a ^= b;
                    }
                }
            }
            if row[k / WORD_BITS] >> (k % WORD_BITS) & 1 == 0 {
                return Some(k + 1);
            }
            reduced.push(row);
        }
        None
    }

    fn check_nut(&self) -> bool {
        for i in 0..self.dim {
            if !self.entry(i, i) {
                return false;
            }
            for j in 0..i {
                if self.entry(i, j) {
                    return false;
                }
            }
        }
        true
    }

    /// Entries as 0/1 bytes, row-major. Intended for tests and display.
    pub fn to_entries(&self) -> Vec<Vec<u8>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j) as u8).collect())
            .collect()
    }
}

/// Finite 0/1 pattern extended periodically; `at1` uses the 1-based
/// indexing of pattern entries a_1, a_2, ...
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitPattern(Vec<u8>);

impl BitPattern {
    pub fn parse(s: &str) -> Result<Self> {
        if s.is_empty() {
            return Err(Error::Parse {
                input: s.into(),
                position: 0,
                message: "empty bit pattern".into(),
            });
        }
        let mut bits = Vec::with_capacity(s.len());
        for (pos, ch) in s.chars().enumerate() {
            match ch {
                '0' => bits.push(0),
                '1' => bits.push(1),
                _ => {
                    return Err(Error::Parse {
                        input: s.into(),
                        position: pos,
                        message: format!("expected '0' or '1', found {ch:?}"),
                    })
                }
            }
        }
        Ok(BitPattern(bits))
    }

    #[inline]
    pub fn at1(&self, i: usize) -> u8 {
        debug_assert!(i >= 1);
        self.0[(i - 1) % self.0.len()]
    }

    pub fn as_str(&self) -> String {
        self.0.iter().map(|b| char::from(b'0' + b)).collect()
    }
}

/// Constructive description of a generator matrix.
///
/// All family kinds define an infinite matrix; `build` materializes the
/// M x M truncation. `Explicit` carries its own dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MatrixSpec {
    /// Identity matrix; generates the base-2 radical-inverse sequence.
    Identity,
    /// All-ones upper triangle.
    UpperOnes,
    /// Ones exactly on bands j in [i, i+alpha), alpha >= 1.
    Band(u32),
    /// Column-constant above the diagonal: entry(i, j) = a_j for j > i
    /// (1-based a), extended periodically.
    Column(BitPattern),
    /// Per-row choice: pattern char '0' gives the plain row (1, 0, 0, ...),
    /// '1' gives the row (1, 1, 1, ...) from the diagonal on; periodic.
    RowPattern(BitPattern),
    /// Explicit entries, validated for full-rank prefixes on build.
    Explicit(Vec<Vec<u8>>),
}

impl MatrixSpec {
    pub fn band(alpha: u32) -> Result<Self> {
        if alpha == 0 {
            return Err(Error::Domain("band width alpha must be >= 1".into()));
        }
        Ok(MatrixSpec::Band(alpha))
    }

    /// Builds the M x M truncation. Explicit specs ignore growth requests
    /// beyond their stored size and fail instead.
    pub fn build(&self, dim: usize) -> Result<Gf2Matrix> {
        if dim == 0 {
            return Err(Error::Domain("truncation dimension must be >= 1".into()));
        }
        match self {
            MatrixSpec::Explicit(entries) => {
                if dim > entries.len() {
                    return Err(Error::DimensionExceeded {
                        needed: dim,
                        have: entries.len(),
                    });
                }
                let truncated: Vec<Vec<u8>> = entries
                    .iter()
                    .take(dim)
                    .map(|r| r[..dim].to_vec())
                    .collect();
                Gf2Matrix::from_entries(&truncated)
            }
            _ => {
                let mut rows = vec![vec![0u64; words_for(dim)]; dim];
                for (i, row) in rows.iter_mut().enumerate() {
                    for j in i..dim {
                        if self.upper_entry(i, j) {
                            row[j / WORD_BITS] |= 1 << (j % WORD_BITS);
                        }
                    }
                }
                Ok(Gf2Matrix {
                    dim,
                    rows,
                    nut: true,
                })
            }
        }
    }

    /// Entry at 0-based (i, j) with j >= i, for the NUT families.
    fn upper_entry(&self, i: usize, j: usize) -> bool {
        match self {
            MatrixSpec::Identity => i == j,
            MatrixSpec::UpperOnes => true,
            MatrixSpec::Band(alpha) => j < i + *alpha as usize,
            MatrixSpec::Column(a) => i == j || a.at1(j) == 1,
            MatrixSpec::RowPattern(s) => i == j || s.at1(i + 1) == 1,
            MatrixSpec::Explicit(_) => unreachable!(),
        }
    }

    /// For row-pattern specs: how many of the first `m` rows are plain
    /// (1, 0, 0, ...) rows, i.e. the count of '0' pattern characters.
    pub fn plain_row_count(&self, m: usize) -> Result<usize> {
        match self {
            MatrixSpec::RowPattern(s) => Ok((1..=m).filter(|&i| s.at1(i) == 0).count()),
            other => Err(Error::UnsupportedSpec {
                expected: "rows:<bits> spec",
                got: other.render(),
            }),
        }
    }

    /// Dimension to use when none was requested explicitly.
    pub fn preferred_dim(&self, default: usize) -> usize {
        match self {
            MatrixSpec::Explicit(entries) => entries.len(),
            _ => default,
        }
    }

    /// Canonical spec-string form, the inverse of `cli::parse_matrix_spec`.
    pub fn render(&self) -> String {
        match self {
            MatrixSpec::Identity => "identity".into(),
            MatrixSpec::UpperOnes => "upper1".into(),
            MatrixSpec::Band(a) => format!("band:{a}"),
            MatrixSpec::Column(p) => format!("column:{}", p.as_str()),
            MatrixSpec::RowPattern(p) => format!("rows:{}", p.as_str()),
            MatrixSpec::Explicit(e) => format!("explicit:<{}x{} entries>", e.len(), e.len()),
        }
    }
}
