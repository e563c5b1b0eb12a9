//! Exact arithmetic in ZΦ, the set of integer multiples of 8th roots of
//! unity, together with integer matrices modulo a global sign and the
//! dictionary-order tensor function `xi`.
//!
//! Throughout, `A = exp(i*pi/4)`, so `A^4 = -1` and `A^8 = 1`. Every value
//! `p * A^k` is stored with the exponent reduced into `0..=3`; the relation
//! `A^4 = -1` is absorbed into the sign of the integer part. Sums of two
//! nonzero values with different reduced exponents leave ZΦ and are
//! rejected rather than approximated.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Arithmetic failures in the exact layer.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PhiError {
    /// A checked 64-bit operation overflowed.
    Overflow,
    /// Sum of two nonzero values whose exponents differ mod 4; the result
    /// would not lie in ZΦ.
    NonCoherentPhases,
    /// Matrix shapes do not allow the requested operation.
    ShapeMismatch,
    /// `xi` requires at least one input vector.
    EmptyTensor,
}

impl fmt::Display for PhiError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PhiError::Overflow => write!(f, "integer overflow in exact arithmetic"),
            PhiError::NonCoherentPhases => {
                write!(f, "sum of incoherent phases is not an integer multiple of a root of unity")
            }
            PhiError::ShapeMismatch => write!(f, "matrix shape mismatch"),
            PhiError::EmptyTensor => write!(f, "xi requires n >= 1"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for PhiError {}

fn checked_add(a: i64, b: i64) -> Result<i64, PhiError> {
    a.checked_add(b).ok_or(PhiError::Overflow)
}

fn checked_mul(a: i64, b: i64) -> Result<i64, PhiError> {
    a.checked_mul(b).ok_or(PhiError::Overflow)
}

fn checked_neg(a: i64) -> Result<i64, PhiError> {
    a.checked_neg().ok_or(PhiError::Overflow)
}

/// An element `mag * A^exp` of ZΦ with `exp` in `0..=3`.
///
/// Zero is uniquely `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PhiScalar {
    mag: i64,
    exp: u8,
}

impl PhiScalar {
    pub const ZERO: PhiScalar = PhiScalar { mag: 0, exp: 0 };
    pub const ONE: PhiScalar = PhiScalar { mag: 1, exp: 0 };

    /// Builds `mag * A^exp` from an arbitrary integer exponent, folding
    /// `A^4 = -1` into the sign.
    pub fn new(mag: i64, exp: i64) -> Result<PhiScalar, PhiError> {
        if mag == 0 {
            return Ok(PhiScalar::ZERO);
        }
        let e = exp.rem_euclid(8) as u8;
        if e >= 4 {
            Ok(PhiScalar { mag: checked_neg(mag)?, exp: e - 4 })
        } else {
            Ok(PhiScalar { mag, exp: e })
        }
    }

    /// `A^exp` itself.
    pub fn root(exp: i64) -> PhiScalar {
        PhiScalar::new(1, exp).expect("unit cannot overflow")
    }

    pub fn mag(&self) -> i64 {
        self.mag
    }

    pub fn exp(&self) -> u8 {
        self.exp
    }

    pub fn is_zero(&self) -> bool {
        self.mag == 0
    }

    /// `|mag|`, the representation-independent magnitude.
    pub fn magnitude(&self) -> i64 {
        self.mag.abs()
    }

    pub fn mul(&self, other: &PhiScalar) -> Result<PhiScalar, PhiError> {
        let mag = checked_mul(self.mag, other.mag)?;
        PhiScalar::new(mag, self.exp as i64 + other.exp as i64)
    }

    /// Addition inside ZΦ. Defined when either side is zero or the reduced
    /// exponents agree; anything else signals `NonCoherentPhases`.
    pub fn add(&self, other: &PhiScalar) -> Result<PhiScalar, PhiError> {
        if self.is_zero() {
            return Ok(*other);
        }
        if other.is_zero() {
            return Ok(*self);
        }
        if self.exp != other.exp {
            return Err(PhiError::NonCoherentPhases);
        }
        PhiScalar::new(checked_add(self.mag, other.mag)?, self.exp as i64)
    }

    pub fn neg(&self) -> Result<PhiScalar, PhiError> {
        PhiScalar::new(checked_neg(self.mag)?, self.exp as i64)
    }

    /// Multiplies by `A^k`.
    pub fn mul_root(&self, k: i64) -> Result<PhiScalar, PhiError> {
        PhiScalar::new(self.mag, self.exp as i64 + k)
    }
}

impl fmt::Display for PhiScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exp {
            0 => write!(f, "{}", self.mag),
            1 => write!(f, "{}*A", self.mag),
            e => write!(f, "{}*A^{}", self.mag, e),
        }
    }
}

/// An integer matrix modulo multiplication by -1, stored with the first
/// nonzero entry in row-major order made positive.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProjMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<i64>,
}

impl ProjMatrix {
    pub fn new(rows: usize, cols: usize, mut entries: Vec<i64>) -> Result<ProjMatrix, PhiError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(PhiError::ShapeMismatch);
        }
        canonical_sign(&mut entries)?;
        Ok(ProjMatrix { rows, cols, entries })
    }

    /// 2x1 column `[p; q]`.
    pub fn column2(p: i64, q: i64) -> ProjMatrix {
        ProjMatrix::new(2, 1, vec![p, q]).expect("shape is valid")
    }

    /// 2x2 matrix `[[a, c], [b, d]]` given in row-major order.
    pub fn square2(a: i64, c: i64, b: i64, d: i64) -> ProjMatrix {
        ProjMatrix::new(2, 2, vec![a, c, b, d]).expect("shape is valid")
    }

    pub fn identity2() -> ProjMatrix {
        ProjMatrix::square2(1, 0, 0, 1)
    }

    pub fn zero(rows: usize, cols: usize) -> ProjMatrix {
        ProjMatrix::new(rows, cols, vec![0; rows * cols]).expect("shape is valid")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.cols + c]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// Canonicalized matrix product; well-defined on the +-1 quotient.
    pub fn matmul(&self, other: &ProjMatrix) -> Result<ProjMatrix, PhiError> {
        if self.cols != other.rows {
            return Err(PhiError::ShapeMismatch);
        }
        let mut out = vec![0i64; self.rows * other.cols];
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = 0i64;
                for k in 0..self.cols {
                    acc = checked_add(acc, checked_mul(self.entry(r, k), other.entry(k, c))?)?;
                }
                out[r * other.cols + c] = acc;
            }
        }
        ProjMatrix::new(self.rows, other.cols, out)
    }

    /// Determinant of a 2x2 matrix; `det(-M) = det(M)` so this is
    /// well-defined on the quotient.
    pub fn det2(&self) -> Result<i64, PhiError> {
        if self.rows != 2 || self.cols != 2 {
            return Err(PhiError::ShapeMismatch);
        }
        let ad = checked_mul(self.entry(0, 0), self.entry(1, 1))?;
        let bc = checked_mul(self.entry(1, 0), self.entry(0, 1))?;
        ad.checked_sub(bc).ok_or(PhiError::Overflow)
    }

    /// `det mod 4`, mapped into `0..=3`.
    pub fn det_residue(&self) -> Result<u8, PhiError> {
        Ok(self.det2()?.rem_euclid(4) as u8)
    }
}

impl fmt::Display for ProjMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(r, c))?;
            }
        }
        write!(f, "]")
    }
}

fn canonical_sign(entries: &mut [i64]) -> Result<(), PhiError> {
    for &e in entries.iter() {
        if e != 0 {
            if e < 0 {
                for v in entries.iter_mut() {
                    *v = checked_neg(*v)?;
                }
            }
            return Ok(());
        }
    }
    Ok(())
}

/// A lexicographic multi-index `alpha_i^n` over `{1,2}^n`.
///
/// `rank` is the 1-based position in dictionary order, so rank 1 is
/// `(1,..,1)` and rank `2^n` is `(2,..,2)`. `weight` counts the entries
/// equal to 2 and equals the `t` sequence value at that rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndex {
    n: usize,
    rank: usize,
    bits: Vec<u8>,
}

impl MultiIndex {
    pub fn from_rank(n: usize, rank: usize) -> Option<MultiIndex> {
        if n >= usize::BITS as usize || rank == 0 || rank > (1usize << n) {
            return None;
        }
        let code = rank - 1;
        let bits = (0..n).map(|j| 1 + ((code >> (n - 1 - j)) & 1) as u8).collect();
        Some(MultiIndex { n, rank, bits })
    }

    pub fn from_bits(bits: Vec<u8>) -> Option<MultiIndex> {
        let n = bits.len();
        if n == 0 || n >= usize::BITS as usize || bits.iter().any(|&b| b != 1 && b != 2) {
            return None;
        }
        let mut code = 0usize;
        for &b in &bits {
            code = (code << 1) | (b as usize - 1);
        }
        Some(MultiIndex { n, rank: code + 1, bits })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// Number of 2-entries; the `t_k` of the recursive doubling sequence.
    pub fn weight(&self) -> u32 {
        self.bits.iter().filter(|&&b| b == 2).count() as u32
    }
}

/// The `t` sequence for a given `n` built by the doubling recursion:
/// `a_0 = (0)` and `a_k = (a_{k-1}, a_{k-1} + 1)`.
pub fn weight_sequence(n: usize) -> Vec<u32> {
    let mut seq = vec![0u32];
    for _ in 0..n {
        let next: Vec<u32> = seq.iter().map(|&t| t + 1).collect();
        seq.extend(next);
    }
    seq
}

/// Dictionary-order tensor of `n` length-2 integer column vectors: entry at
/// rank `i` is the product of the coordinates selected by `alpha_i^n`.
pub fn xi(vectors: &[[i64; 2]]) -> Result<Vec<i64>, PhiError> {
    let n = vectors.len();
    if n == 0 {
        return Err(PhiError::EmptyTensor);
    }
    if n >= usize::BITS as usize {
        return Err(PhiError::Overflow);
    }
    let size = 1usize << n;
    let mut out = Vec::with_capacity(size);
    for code in 0..size {
        let mut prod = 1i64;
        for (j, v) in vectors.iter().enumerate() {
            let pick = (code >> (n - 1 - j)) & 1;
            prod = checked_mul(prod, v[pick])?;
        }
        out.push(prod);
    }
    Ok(out)
}

/// Projective version of [`xi`]: takes 2x1 projective columns, returns the
/// canonicalized `2^n x 1` column. Well-defined because flipping the sign
/// of any input flips the sign of every output entry.
pub fn xi_proj(vectors: &[&ProjMatrix]) -> Result<ProjMatrix, PhiError> {
    let mut plain = Vec::with_capacity(vectors.len());
    for v in vectors {
        if v.rows() != 2 || v.cols() != 1 {
            return Err(PhiError::ShapeMismatch);
        }
        plain.push([v.entry(0, 0), v.entry(1, 0)]);
    }
    let out = xi(&plain)?;
    let len = out.len();
    ProjMatrix::new(len, 1, out)
}

/// Greatest common divisor of a list with the `gcd(0, 0) = 0` convention.
pub fn gcd_list(values: &[i64]) -> i64 {
    let mut g: i64 = 0;
    for &v in values {
        g = gcd2(g, v.unsigned_abs() as i64);
    }
    g
}

fn gcd2(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a.abs()
}

/// Whether `d` divides `m`, where "0 divides m" holds only for `m = 0`.
pub fn divides(d: i64, m: i64) -> bool {
    if d == 0 {
        m == 0
    } else {
        m % d == 0
    }
}
