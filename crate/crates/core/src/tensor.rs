//! Dense arithmetic in the truncated tensor algebra `T^m(R^d)`.
//!
//! An element is stored as a flat vector over all words of length `0..=m`.
//! Words are ordered by length first and lexicographically within a length,
//! so the empty word sits at index 0, the `d` letters at `1..=d`, and the
//! block of length-`k` words starts at `(d^k - 1) / (d - 1)`.
//!
//! Within a block the local index of a word `l_1 .. l_k` is its base-`d`
//! value `Σ (l_i - 1) d^(k-i)`. Concatenation is therefore
//! `local(uv) = local(u) * d^|v| + local(v)`, which is what the product and
//! both adjoints below exploit.

use std::fmt;

use crate::error::{Error, Result};

/// Number of words of length `k` over an alphabet of size `dim`.
#[inline]
pub fn level_len(dim: usize, k: usize) -> usize {
    dim.pow(k as u32)
}

/// Index of the first word of length `k`.
#[inline]
pub fn level_offset(dim: usize, k: usize) -> usize {
    if dim == 1 {
        k
    } else {
        (dim.pow(k as u32) - 1) / (dim - 1)
    }
}

/// Total number of coefficients of an element of `T^m(R^d)`.
#[inline]
pub fn tensor_len(dim: usize, degree: usize) -> usize {
    level_offset(dim, degree + 1)
}

/// A word over the alphabet `{1, .., d}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word, checking every letter is in `1..=dim`.
    pub fn new(letters: Vec<usize>, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDim);
        }
        if let Some(&letter) = letters.iter().find(|&&l| l == 0 || l > dim) {
            return Err(Error::LetterOutOfRange { letter, dim });
        }
        Ok(Word(letters))
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Column label used in CSV headers, e.g. `w_12`. Letters are joined with
    /// `_` when the alphabet has more than nine letters.
    pub fn label(&self, dim: usize) -> String {
        let sep = if dim > 9 { "_" } else { "" };
        let body: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        format!("w_{}", body.join(sep))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, ")")
    }
}

/// Flat index of `word` in the layout for alphabet size `dim`.
pub fn word_index(word: &Word, dim: usize) -> Result<usize> {
    if dim == 0 {
        return Err(Error::ZeroDim);
    }
    let mut local = 0usize;
    for &l in word.letters() {
        if l == 0 || l > dim {
            return Err(Error::LetterOutOfRange { letter: l, dim });
        }
        local = local * dim + (l - 1);
    }
    Ok(level_offset(dim, word.len()) + local)
}

/// Inverse of [`word_index`].
pub fn index_to_word(index: usize, dim: usize) -> Result<Word> {
    if dim == 0 {
        return Err(Error::ZeroDim);
    }
    let mut k = 0;
    while level_offset(dim, k + 1) <= index {
        k += 1;
    }
    let mut local = index - level_offset(dim, k);
    let mut letters = vec![0; k];
    for slot in letters.iter_mut().rev() {
        *slot = local % dim + 1;
        local /= dim;
    }
    Ok(Word(letters))
}

/// All words of length `0..=degree` in layout order.
pub fn words(dim: usize, degree: usize) -> Vec<Word> {
    (0..tensor_len(dim, degree))
        .map(|i| index_to_word(i, dim).expect("dim checked by caller"))
        .collect()
}

/// Element of the truncated tensor algebra `T^m(R^d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncTensor {
    dim: usize,
    degree: usize,
    coeffs: Vec<f64>,
}

impl TruncTensor {
    pub fn zero(dim: usize, degree: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDim);
        }
        Ok(Self {
            dim,
            degree,
            coeffs: vec![0.0; tensor_len(dim, degree)],
        })
    }

    /// The unit `1 = (1, 0, 0, ..)`.
    pub fn unit(dim: usize, degree: usize) -> Result<Self> {
        let mut t = Self::zero(dim, degree)?;
        t.coeffs[0] = 1.0;
        Ok(t)
    }

    pub fn from_coeffs(dim: usize, degree: usize, coeffs: Vec<f64>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ZeroDim);
        }
        let len = tensor_len(dim, degree);
        if coeffs.len() != len {
            return Err(Error::IndexOutOfRange {
                index: coeffs.len(),
                len,
            });
        }
        if let Some(i) = coeffs.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(format!("coefficient {i}")));
        }
        Ok(Self {
            dim,
            degree,
            coeffs,
        })
    }

    /// Embeds a vector of `R^d` at level 1, scalar slot zero.
    pub fn from_level1(degree: usize, v: &[f64]) -> Result<Self> {
        let mut t = Self::zero(v.len(), degree)?;
        if degree >= 1 {
            t.coeffs[1..=v.len()].copy_from_slice(v);
        } else if v.iter().any(|&x| x != 0.0) {
            return Err(Error::DegreeOutOfRange {
                requested: 1,
                actual: 0,
            });
        }
        Ok(t)
    }

    /// Sets coefficients from `(word, value)` pairs on a zero tensor.
    pub fn from_words(dim: usize, degree: usize, entries: &[(&[usize], f64)]) -> Result<Self> {
        let mut t = Self::zero(dim, degree)?;
        for (letters, value) in entries {
            let w = Word::new(letters.to_vec(), dim)?;
            t.set(&w, *value)?;
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub(crate) fn coeffs_mut(&mut self) -> &mut [f64] {
        &mut self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<f64> {
        self.coeffs
    }

    pub fn scalar(&self) -> f64 {
        self.coeffs[0]
    }

    /// Coefficients of level `k`.
    pub fn level(&self, k: usize) -> &[f64] {
        let start = level_offset(self.dim, k);
        &self.coeffs[start..start + level_len(self.dim, k)]
    }

    pub fn get(&self, word: &Word) -> Result<f64> {
        self.check_word(word)?;
        Ok(self.coeffs[word_index(word, self.dim)?])
    }

    pub fn set(&mut self, word: &Word, value: f64) -> Result<()> {
        self.check_word(word)?;
        let i = word_index(word, self.dim)?;
        self.coeffs[i] = value;
        Ok(())
    }

    fn check_word(&self, word: &Word) -> Result<()> {
        if word.len() > self.degree {
            return Err(Error::WordTooLong {
                len: word.len(),
                degree: self.degree,
            });
        }
        Ok(())
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim || self.degree != other.degree {
            return Err(Error::ShapeMismatch {
                left_dim: self.dim,
                left_degree: self.degree,
                right_dim: other.dim,
                right_degree: other.degree,
            });
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_finite())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            dim: self.dim,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    /// `alpha * a + beta * b`.
    pub fn linear_combine(alpha: f64, a: &Self, beta: f64, b: &Self) -> Result<Self> {
        a.check_shape(b)?;
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| alpha * x + beta * y)
            .collect();
        Ok(Self {
            dim: a.dim,
            degree: a.degree,
            coeffs,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(1.0, self, 1.0, other)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::linear_combine(1.0, self, -1.0, other)
    }

    /// Truncated tensor product `self ⊗_m other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut out = vec![0.0; self.coeffs.len()];
        mul_acc(self.dim, self.degree, &self.coeffs, &other.coeffs, &mut out);
        Ok(Self {
            dim: self.dim,
            degree: self.degree,
            coeffs: out,
        })
    }

    /// Hilbert–Schmidt inner product summed over levels `0..=m`.
    pub fn inner(&self, other: &Self) -> Result<f64> {
        self.check_shape(other)?;
        Ok(dot(&self.coeffs, &other.coeffs))
    }

    /// Levels `0..=k` as a tensor of degree `k`.
    pub fn project(&self, k: usize) -> Result<Self> {
        if k > self.degree {
            return Err(Error::DegreeOutOfRange {
                requested: k,
                actual: self.degree,
            });
        }
        Ok(Self {
            dim: self.dim,
            degree: k,
            coeffs: self.coeffs[..tensor_len(self.dim, k)].to_vec(),
        })
    }

    /// Zero-pads to degree `degree`.
    pub fn embed(&self, degree: usize) -> Result<Self> {
        if degree < self.degree {
            return Err(Error::DegreeOutOfRange {
                requested: degree,
                actual: self.degree,
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(tensor_len(self.dim, degree), 0.0);
        Ok(Self {
            dim: self.dim,
            degree,
            coeffs,
        })
    }

    /// Truncated exponential of an element with zero scalar slot.
    pub fn exp(&self) -> Result<Self> {
        if self.coeffs[0] != 0.0 {
            return Err(Error::ScalarSlot {
                expected: 0.0,
                found: self.coeffs[0],
            });
        }
        // 1 + a(1 + a/2(1 + a/3(..)))
        let n = self.coeffs.len();
        let mut acc = vec![0.0; n];
        acc[0] = 1.0;
        let mut tmp = vec![0.0; n];
        for k in (1..=self.degree).rev() {
            tmp.iter_mut().for_each(|x| *x = 0.0);
            mul_acc(self.dim, self.degree, &self.coeffs, &acc, &mut tmp);
            let inv = 1.0 / k as f64;
            for (a, t) in acc.iter_mut().zip(&tmp) {
                *a = t * inv;
            }
            acc[0] += 1.0;
        }
        Ok(Self {
            dim: self.dim,
            degree: self.degree,
            coeffs: acc,
        })
    }

    /// Truncated logarithm of an element with unit scalar slot.
    pub fn log(&self) -> Result<Self> {
        if self.coeffs[0] != 1.0 {
            return Err(Error::ScalarSlot {
                expected: 1.0,
                found: self.coeffs[0],
            });
        }
        let n = self.coeffs.len();
        let mut a = self.coeffs.clone();
        a[0] = 0.0;
        if self.degree == 0 {
            return Ok(Self {
                dim: self.dim,
                degree: 0,
                coeffs: a,
            });
        }
        // a(1 - a(1/2 - a(1/3 - ..)))
        let mut acc = vec![0.0; n];
        acc[0] = 1.0 / self.degree as f64;
        let mut tmp = vec![0.0; n];
        for k in (1..self.degree).rev() {
            tmp.iter_mut().for_each(|x| *x = 0.0);
            mul_acc(self.dim, self.degree, &a, &acc, &mut tmp);
            for (x, t) in acc.iter_mut().zip(&tmp) {
                *x = -t;
            }
            acc[0] += 1.0 / k as f64;
        }
        let mut out = vec![0.0; n];
        mul_acc(self.dim, self.degree, &a, &acc, &mut out);
        out[0] = 0.0;
        Ok(Self {
            dim: self.dim,
            degree: self.degree,
            coeffs: out,
        })
    }

    /// Adjoint of left multiplication by `a`, applied to `c`:
    /// coefficient `v` of the result is `Σ_u a[u] c[uv]`. The output has the
    /// degree of `c`.
    pub fn left_adjoint(a: &Self, c: &Self) -> Result<Self> {
        if a.dim != c.dim {
            return Err(Error::DimMismatch(a.dim, c.dim));
        }
        let mut out = vec![0.0; c.coeffs.len()];
        left_adjoint_acc(c.dim, a.degree, &a.coeffs, c.degree, &c.coeffs, &mut out);
        Ok(Self {
            dim: c.dim,
            degree: c.degree,
            coeffs: out,
        })
    }

    /// Adjoint of right multiplication by `b`, applied to `c`:
    /// coefficient `u` of the result is `Σ_v b[v] c[uv]`.
    pub fn right_adjoint(b: &Self, c: &Self) -> Result<Self> {
        if b.dim != c.dim {
            return Err(Error::DimMismatch(b.dim, c.dim));
        }
        let mut out = vec![0.0; c.coeffs.len()];
        right_adjoint_acc(c.dim, b.degree, &b.coeffs, c.degree, &c.coeffs, &mut out);
        Ok(Self {
            dim: c.dim,
            degree: c.degree,
            coeffs: out,
        })
    }
}

impl fmt::Display for TruncTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if *c == 0.0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let w = index_to_word(i, self.dim).map_err(|_| fmt::Error)?;
            write!(f, "{c}·e{w}")?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

// Slice kernels shared with the solver. All operate on the flat layout and
// accumulate into `out`.

#[inline]
pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `out += a ⊗_m b`, both of degree `degree`.
pub(crate) fn mul_acc(dim: usize, degree: usize, a: &[f64], b: &[f64], out: &mut [f64]) {
    for n in 0..=degree {
        let out_off = level_offset(dim, n);
        for k in 0..=n {
            let a_off = level_offset(dim, k);
            let a_len = level_len(dim, k);
            let b_off = level_offset(dim, n - k);
            let b_len = level_len(dim, n - k);
            let b_lvl = &b[b_off..b_off + b_len];
            for i in 0..a_len {
                let ai = a[a_off + i];
                if ai == 0.0 {
                    continue;
                }
                let row = &mut out[out_off + i * b_len..out_off + (i + 1) * b_len];
                for (o, bj) in row.iter_mut().zip(b_lvl) {
                    *o += ai * bj;
                }
            }
        }
    }
}

/// `out += L*_a(c)`; `out` has the layout of `c`.
pub(crate) fn left_adjoint_acc(
    dim: usize,
    a_degree: usize,
    a: &[f64],
    c_degree: usize,
    c: &[f64],
    out: &mut [f64],
) {
    for q in 0..=c_degree {
        let q_len = level_len(dim, q);
        let out_off = level_offset(dim, q);
        for p in 0..=a_degree.min(c_degree - q) {
            let a_off = level_offset(dim, p);
            let c_off = level_offset(dim, p + q);
            for i in 0..level_len(dim, p) {
                let ai = a[a_off + i];
                if ai == 0.0 {
                    continue;
                }
                let src = &c[c_off + i * q_len..c_off + (i + 1) * q_len];
                for (o, cj) in out[out_off..out_off + q_len].iter_mut().zip(src) {
                    *o += ai * cj;
                }
            }
        }
    }
}

/// `out += R*_b(c)`; `out` has the layout of `c`.
pub(crate) fn right_adjoint_acc(
    dim: usize,
    b_degree: usize,
    b: &[f64],
    c_degree: usize,
    c: &[f64],
    out: &mut [f64],
) {
    for p in 0..=c_degree {
        let out_off = level_offset(dim, p);
        for q in 0..=b_degree.min(c_degree - p) {
            let q_len = level_len(dim, q);
            let b_off = level_offset(dim, q);
            let b_lvl = &b[b_off..b_off + q_len];
            if b_lvl.iter().all(|&x| x == 0.0) {
                continue;
            }
            let c_off = level_offset(dim, p + q);
            for i in 0..level_len(dim, p) {
                let src = &c[c_off + i * q_len..c_off + (i + 1) * q_len];
                out[out_off + i] += dot(b_lvl, src);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn t(dim: usize, degree: usize, coeffs: &[f64]) -> TruncTensor {
        TruncTensor::from_coeffs(dim, degree, coeffs.to_vec()).unwrap()
    }

    fn e(dim: usize, degree: usize, letters: &[usize]) -> TruncTensor {
        TruncTensor::from_words(dim, degree, &[(letters, 1.0)]).unwrap()
    }

    #[test]
    fn unit_layouts() {
        assert_eq!(
            TruncTensor::unit(2, 2).unwrap().coeffs(),
            &[1.0, 0., 0., 0., 0., 0., 0.]
        );
        assert_eq!(
            TruncTensor::unit(1, 3).unwrap().coeffs(),
            &[1.0, 0., 0., 0.]
        );
        assert_eq!(TruncTensor::unit(3, 0).unwrap().coeffs(), &[1.0]);
        assert_eq!(TruncTensor::unit(0, 2), Err(Error::ZeroDim));
    }

    #[test]
    fn word_indexing_enumerates_t2_r2() {
        let expected: [&[usize]; 7] = [&[], &[1], &[2], &[1, 1], &[1, 2], &[2, 1], &[2, 2]];
        for (i, letters) in expected.iter().enumerate() {
            let w = Word::new(letters.to_vec(), 2).unwrap();
            assert_eq!(word_index(&w, 2).unwrap(), i);
            assert_eq!(index_to_word(i, 2).unwrap(), w);
        }
        assert_eq!(
            word_index(&Word::new(vec![2, 1], 2).unwrap(), 2).unwrap(),
            5
        );
        assert!(matches!(
            Word::new(vec![3], 2),
            Err(Error::LetterOutOfRange { letter: 3, dim: 2 })
        ));
    }

    #[test]
    fn word_labels() {
        assert_eq!(Word::new(vec![1, 2], 2).unwrap().label(2), "w_12");
        assert_eq!(Word::new(vec![10, 2], 12).unwrap().label(12), "w_10_2");
    }

    #[test]
    fn linear_combination() {
        let u = TruncTensor::unit(1, 1).unwrap();
        assert_eq!(
            TruncTensor::linear_combine(1.0, &u, 1.0, &u)
                .unwrap()
                .coeffs(),
            &[2.0, 0.0]
        );
        let a = e(2, 1, &[1]);
        let b = e(2, 1, &[2]);
        assert_eq!(
            TruncTensor::linear_combine(2.0, &a, 1.0, &b)
                .unwrap()
                .coeffs(),
            &[0.0, 2.0, 1.0]
        );
        assert_eq!(
            TruncTensor::linear_combine(0.0, &a, 0.0, &b).unwrap(),
            TruncTensor::zero(2, 1).unwrap()
        );
        let c = TruncTensor::zero(2, 2).unwrap();
        assert!(matches!(a.add(&c), Err(Error::ShapeMismatch { .. })));
    }

    #[test]
    fn product_examples() {
        // (1, e1, 0) ⊗ (1, e2, 0) = (1, e1 + e2, e12)
        let a = t(2, 2, &[1., 1., 0., 0., 0., 0., 0.]);
        let b = t(2, 2, &[1., 0., 1., 0., 0., 0., 0.]);
        assert_eq!(a.mul(&b).unwrap().coeffs(), &[1., 1., 1., 0., 1., 0., 0.]);
        let u = TruncTensor::unit(2, 2).unwrap();
        assert_eq!(a.mul(&u).unwrap(), a);
        assert_eq!(u.mul(&a).unwrap(), a);

        let ex1 = e(2, 2, &[1]).exp().unwrap();
        let ex2 = e(2, 2, &[2]).exp().unwrap();
        let prod = ex1.mul(&ex2).unwrap();
        assert_eq!(prod.coeffs(), &[1., 1., 1., 0.5, 1., 0., 0.5]);
    }

    #[test]
    fn inner_examples() {
        let a = t(2, 2, &[2., 3., 0., 0., 0., 0., 0.]);
        let b = t(2, 2, &[1., 1., 1., 5., 0., 0., 0.]);
        assert_eq!(a.inner(&b).unwrap(), 5.0);
        assert_eq!(a.inner(&TruncTensor::unit(2, 2).unwrap()).unwrap(), 2.0);
        let g = e(2, 2, &[1]).exp().unwrap();
        assert_eq!(g.inner(&g).unwrap(), 2.25);
    }

    #[test]
    fn projection_and_embedding() {
        let g = e(2, 2, &[1]).exp().unwrap();
        assert_eq!(g.project(1).unwrap().coeffs(), &[1., 1., 0.]);
        assert_eq!(g.project(2).unwrap(), g);
        assert_eq!(g.project(0).unwrap().coeffs(), &[1.0]);
        assert!(g.project(3).is_err());

        let v = e(2, 1, &[1]);
        let padded = v.embed(3).unwrap();
        assert_eq!(padded.degree(), 3);
        assert_eq!(padded.level(1), &[1.0, 0.0]);
        assert!(padded.coeffs()[3..].iter().all(|&c| c == 0.0));
        assert_eq!(v.embed(1).unwrap(), v);
        assert!(padded.embed(2).is_err());
    }

    #[test]
    fn exp_examples() {
        assert_eq!(
            TruncTensor::zero(2, 3).unwrap().exp().unwrap(),
            TruncTensor::unit(2, 3).unwrap()
        );
        assert_eq!(
            e(2, 2, &[1]).exp().unwrap().coeffs(),
            &[1., 1., 0., 0.5, 0., 0., 0.]
        );
        let s = t(2, 2, &[0., 1., 1., 0., 0., 0., 0.]).exp().unwrap();
        assert_eq!(s.level(2), &[0.5, 0.5, 0.5, 0.5]);
        assert!(matches!(
            TruncTensor::unit(2, 2).unwrap().exp(),
            Err(Error::ScalarSlot { .. })
        ));
    }

    #[test]
    fn log_examples() {
        assert_eq!(
            TruncTensor::unit(2, 3).unwrap().log().unwrap(),
            TruncTensor::zero(2, 3).unwrap()
        );
        let g = t(2, 2, &[1., 1., 0., 0.5, 0., 0., 0.]);
        assert_eq!(g.log().unwrap().coeffs(), &[0., 1., 0., 0., 0., 0., 0.]);
        let prod = e(2, 2, &[1])
            .exp()
            .unwrap()
            .mul(&e(2, 2, &[2]).exp().unwrap())
            .unwrap();
        assert_eq!(
            prod.log().unwrap().coeffs(),
            &[0., 1., 1., 0., 0.5, -0.5, 0.]
        );
        assert!(matches!(
            TruncTensor::zero(2, 2).unwrap().log(),
            Err(Error::ScalarSlot { .. })
        ));
    }

    #[test]
    fn exp_matches_series_in_one_dimension() {
        let a = 0.7;
        let g = TruncTensor::from_level1(4, &[a]).unwrap().exp().unwrap();
        let expected = [1.0, a, a * a / 2.0, a.powi(3) / 6.0, a.powi(4) / 24.0];
        for (x, y) in g.coeffs().iter().zip(expected) {
            assert_abs_diff_eq!(*x, y, epsilon = 1e-15);
        }
    }

    #[test]
    fn left_adjoint_examples() {
        let e12 = e(2, 2, &[1, 2]);
        assert_eq!(
            TruncTensor::left_adjoint(&e(2, 2, &[1]), &e12).unwrap(),
            e(2, 2, &[2])
        );
        assert_eq!(
            TruncTensor::left_adjoint(&e(2, 2, &[2]), &e12).unwrap(),
            TruncTensor::zero(2, 2).unwrap()
        );
        let c = t(2, 2, &[0.3, -1., 2., 4., 5., 6., 7.]);
        assert_eq!(
            TruncTensor::left_adjoint(&TruncTensor::unit(2, 2).unwrap(), &c).unwrap(),
            c
        );

        let w = t(2, 1, &[0., 2., -3.]);
        let v = t(2, 1, &[0., 0.5, 1.5]);
        let r = TruncTensor::left_adjoint(&w, &v).unwrap();
        assert_eq!(r.coeffs(), &[w.inner(&v).unwrap(), 0., 0.]);
    }

    #[test]
    fn right_adjoint_examples() {
        let e12 = e(2, 2, &[1, 2]);
        assert_eq!(
            TruncTensor::right_adjoint(&e(2, 2, &[2]), &e12).unwrap(),
            e(2, 2, &[1])
        );
        assert_eq!(
            TruncTensor::right_adjoint(&e(2, 2, &[1]), &e12).unwrap(),
            TruncTensor::zero(2, 2).unwrap()
        );
        let c = t(2, 2, &[0.3, -1., 2., 4., 5., 6., 7.]);
        assert_eq!(
            TruncTensor::right_adjoint(&TruncTensor::unit(2, 2).unwrap(), &c).unwrap(),
            c
        );
        assert!(matches!(
            TruncTensor::right_adjoint(&TruncTensor::unit(3, 2).unwrap(), &c),
            Err(Error::DimMismatch(3, 2))
        ));
    }

    #[test]
    fn display_lists_nonzero_words() {
        let g = e(2, 2, &[1]).exp().unwrap();
        assert_eq!(g.to_string(), "1·e∅ + 1·e(1) + 0.5·e(1,1)");
    }
}
