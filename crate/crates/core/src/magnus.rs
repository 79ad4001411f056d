//! The Magnus embedding of a free group into truncated noncommutative power
//! series, `x_i -> 1 + X_i`.
//!
//! A [`TruncatedSeries`] keeps only the terms of weight `0..=cap`, stored
//! sparsely as a vector of `(key, coefficient)` pairs sorted by
//! `(weight, lexicographic index)`. Zero coefficients are never stored, so
//! series equality is plain vector equality.
//!
//! Lower central series convention: `w` lies in `F_q` iff the Magnus
//! coefficients of `w` in weights `1..q` (that is, `1..=q-1`) all vanish.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::freegroup::{Letter, Word};
use crate::scalar::Coefficient;

/// Bits used per letter in a packed key.
const LETTER_BITS: u32 = 5;
const WEIGHT_SHIFT: u32 = 120;
const CODE_MASK: u128 = (1u128 << WEIGHT_SHIFT) - 1;

/// Largest supported number of noncommuting variables.
pub const MAX_VARS: usize = (1 << LETTER_BITS) - 1;
/// Largest supported degree cap.
pub const MAX_CAP: usize = (WEIGHT_SHIFT / LETTER_BITS) as usize;

/// A monomial `X_{i1} X_{i2} ... X_{ik}`; the empty index is the constant
/// term. Ordered by weight first, then lexicographically.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MultiIndex(Vec<u16>);

impl MultiIndex {
    pub fn new(indices: Vec<u16>) -> Self {
        MultiIndex(indices)
    }

    pub fn empty() -> Self {
        MultiIndex(Vec::new())
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[u16] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl From<Vec<u16>> for MultiIndex {
    fn from(v: Vec<u16>) -> Self {
        MultiIndex(v)
    }
}

impl From<&[u16]> for MultiIndex {
    fn from(v: &[u16]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl<const N: usize> From<[u16; N]> for MultiIndex {
    fn from(v: [u16; N]) -> Self {
        MultiIndex(v.to_vec())
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

/// Packed monomial: weight in the top byte, letters in 5-bit digits with the
/// first letter most significant. Integer order is (weight, lex) order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Key(u128);

impl Key {
    const ONE: Key = Key(0);

    fn weight(self) -> usize {
        (self.0 >> WEIGHT_SHIFT) as usize
    }

    fn code(self) -> u128 {
        self.0 & CODE_MASK
    }

    fn from_parts(weight: usize, code: u128) -> Key {
        Key(((weight as u128) << WEIGHT_SHIFT) | code)
    }

    fn concat(self, other: Key) -> Key {
        let wb = other.weight();
        Key::from_parts(
            self.weight() + wb,
            (self.code() << (LETTER_BITS as usize * wb)) | other.code(),
        )
    }

    fn append(self, i: u16) -> Key {
        Key::from_parts(self.weight() + 1, (self.code() << LETTER_BITS) | i as u128)
    }

    fn pack(index: &MultiIndex) -> Key {
        let code = index
            .0
            .iter()
            .fold(0u128, |acc, &i| (acc << LETTER_BITS) | i as u128);
        Key::from_parts(index.weight(), code)
    }

    fn unpack(self) -> MultiIndex {
        let w = self.weight();
        let mask = (1u128 << LETTER_BITS) - 1;
        let code = self.code();
        MultiIndex(
            (0..w)
                .map(|k| ((code >> (LETTER_BITS as usize * (w - 1 - k))) & mask) as u16)
                .collect(),
        )
    }
}

/// Integer noncommutative polynomial in `X_1..X_n`, truncated above `cap`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<C> {
    n_vars: usize,
    cap: usize,
    terms: Vec<(Key, C)>,
}

fn check_shape(n_vars: usize, cap: usize) -> Result<()> {
    if n_vars > MAX_VARS {
        return Err(Error::InvalidArgument(format!(
            "at most {MAX_VARS} variables are supported, got {n_vars}"
        )));
    }
    if cap == 0 || cap > MAX_CAP {
        return Err(Error::InvalidArgument(format!(
            "degree cap must be in 1..={MAX_CAP}, got {cap}"
        )));
    }
    Ok(())
}

impl<C: Coefficient> TruncatedSeries<C> {
    /// The multiplicative identity.
    pub fn one(n_vars: usize, cap: usize) -> Result<Self> {
        check_shape(n_vars, cap)?;
        Ok(TruncatedSeries {
            n_vars,
            cap,
            terms: vec![(Key::ONE, C::one())],
        })
    }

    /// Build from explicit terms. Terms above the cap are dropped, repeated
    /// indices are summed and zeros removed.
    pub fn from_terms<I>(n_vars: usize, cap: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (MultiIndex, C)>,
    {
        check_shape(n_vars, cap)?;
        let mut raw = Vec::new();
        for (idx, c) in terms {
            if let Some(&bad) = idx.0.iter().find(|&&i| i == 0 || i as usize > n_vars) {
                return Err(Error::GeneratorOutOfRange {
                    index: bad as u32,
                    available: n_vars,
                });
            }
            if idx.weight() <= cap {
                raw.push((Key::pack(&idx), c));
            }
        }
        raw.sort_by_key(|t| t.0);
        let mut terms: Vec<(Key, C)> = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            match terms.last_mut() {
                Some((lk, lc)) if *lk == k => *lc = lc.add_checked(&c)?,
                _ => terms.push((k, c)),
            }
        }
        terms.retain(|(_, c)| !c.is_zero());
        Ok(TruncatedSeries { n_vars, cap, terms })
    }

    /// `M(x_i) = 1 + X_i`.
    pub fn generator(n_vars: usize, cap: usize, i: usize) -> Result<Self> {
        Self::one(n_vars, cap)?.mul_letter(Letter::from_signed(i as u32, 1))
    }

    /// `M(x_i^-1) = 1 - X_i + X_i^2 - ...`.
    pub fn generator_inverse(n_vars: usize, cap: usize, i: usize) -> Result<Self> {
        Self::one(n_vars, cap)?.mul_letter(Letter::from_signed(i as u32, -1))
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == Key::ONE && self.terms[0].1.is_one()
    }

    /// Terms in (weight, lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (MultiIndex, &C)> + '_ {
        self.terms.iter().map(|(k, c)| (k.unpack(), c))
    }

    /// `ε_I`, the coefficient of `X^I` (zero when absent).
    pub fn coefficient(&self, index: &MultiIndex) -> Result<C> {
        if index.weight() > self.cap {
            return Err(Error::WeightExceedsCap {
                weight: index.weight(),
                cap: self.cap,
            });
        }
        if index.0.iter().any(|&i| i as usize > MAX_VARS) {
            return Ok(C::zero());
        }
        Ok(self.lookup(Key::pack(index)))
    }

    fn lookup(&self, key: Key) -> C {
        match self.terms.binary_search_by_key(&key, |t| t.0) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// Smallest positive weight carrying a nonzero coefficient.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.terms.iter().map(|(k, _)| k.weight()).find(|&w| w > 0)
    }

    /// Weight-1 coefficients, `X_1..X_n`.
    pub fn linear_part(&self) -> Vec<C> {
        let mut out = vec![C::zero(); self.n_vars];
        for (k, c) in &self.terms {
            if k.weight() == 1 {
                out[k.code() as usize - 1] = c.clone();
            }
        }
        out
    }

    /// Drop every term of weight above `cap`.
    pub fn truncated(&self, cap: usize) -> Result<Self> {
        check_shape(self.n_vars, cap)?;
        let keep = self.terms.partition_point(|(k, _)| k.weight() <= cap);
        Ok(TruncatedSeries {
            n_vars: self.n_vars,
            cap,
            terms: self.terms[..keep].to_vec(),
        })
    }

    /// Same terms under a different cap: truncates when lowering, keeps
    /// every term when raising.
    pub fn with_cap(&self, cap: usize) -> Result<Self> {
        if cap <= self.cap {
            return self.truncated(cap);
        }
        check_shape(self.n_vars, cap)?;
        Ok(TruncatedSeries {
            n_vars: self.n_vars,
            cap,
            terms: self.terms.clone(),
        })
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.n_vars != other.n_vars || self.cap != other.cap {
            return Err(Error::SeriesMismatch(format!(
                "({} vars, cap {}) vs ({} vars, cap {})",
                self.n_vars, self.cap, other.n_vars, other.cap
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(TruncatedSeries {
            n_vars: self.n_vars,
            cap: self.cap,
            terms: merge_sum(&self.terms, &other.terms, false)?,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(TruncatedSeries {
            n_vars: self.n_vars,
            cap: self.cap,
            terms: merge_sum(&self.terms, &other.terms, true)?,
        })
    }

    /// Truncated noncommutative product. Cost is `O(|a| |b|)` in the worst
    /// case, but weight pairs above the cap are never formed.
    ///
    /// For a fixed split `(wa, wb)` the concatenated keys come out already
    /// sorted (lex order of `a` then `b`), so each output weight is a merge
    /// of at most `cap + 1` sorted runs.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let a_off = weight_offsets(&self.terms, self.cap);
        let b_off = weight_offsets(&other.terms, self.cap);
        let mut terms = Vec::new();
        for w in 0..=self.cap {
            let mut acc: Vec<(Key, C)> = Vec::new();
            for wa in 0..=w {
                let wb = w - wa;
                let a = &self.terms[a_off[wa]..a_off[wa + 1]];
                let b = &other.terms[b_off[wb]..b_off[wb + 1]];
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                let mut run = Vec::with_capacity(a.len() * b.len());
                for (ka, ca) in a {
                    for (kb, cb) in b {
                        run.push((ka.concat(*kb), ca.mul_checked(cb)?));
                    }
                }
                acc = if acc.is_empty() {
                    run
                } else {
                    merge_sum(&acc, &run, false)?
                };
            }
            acc.retain(|(_, c)| !c.is_zero());
            terms.extend(acc);
        }
        Ok(TruncatedSeries {
            n_vars: self.n_vars,
            cap: self.cap,
            terms,
        })
    }

    /// Right multiplication by `M(x_i)` or `M(x_i^-1)`.
    pub fn mul_letter(&self, letter: Letter) -> Result<Self> {
        let i = letter.index() as usize;
        if i == 0 || i > self.n_vars {
            return Err(Error::GeneratorOutOfRange {
                index: letter.index(),
                available: self.n_vars,
            });
        }
        let var = i as u16;
        let off = weight_offsets(&self.terms, self.cap);
        let mut terms: Vec<(Key, C)> = Vec::with_capacity(self.terms.len() * 2);
        // r_w = s_w + s_{w-1} X      for x
        // r_w = s_w - r_{w-1} X      for x^-1
        let mut prev_start = 0usize;
        for w in 0..=self.cap {
            let s_w = &self.terms[off[w]..off[w + 1]];
            let shifted: Vec<(Key, C)> = if w == 0 {
                Vec::new()
            } else if letter.is_inverse() {
                terms[prev_start..]
                    .iter()
                    .map(|(k, c)| Ok((k.append(var), c.neg_checked()?)))
                    .collect::<Result<_>>()?
            } else {
                self.terms[off[w - 1]..off[w]]
                    .iter()
                    .map(|(k, c)| (k.append(var), c.clone()))
                    .collect()
            };
            let merged = merge_sum(s_w, &shifted, false)?;
            prev_start = terms.len();
            terms.extend(merged);
        }
        Ok(TruncatedSeries {
            n_vars: self.n_vars,
            cap: self.cap,
            terms,
        })
    }

    /// Inverse of a series with constant term 1, `sum_k (1 - s)^k`.
    pub fn inverse(&self) -> Result<Self> {
        if self.lookup(Key::ONE) != C::one() {
            return Err(Error::InvalidArgument(
                "only series with constant term 1 are inverted".into(),
            ));
        }
        let one = Self::one(self.n_vars, self.cap)?;
        let nil = one.sub(self)?;
        let mut out = one.clone();
        let mut power = one;
        for _ in 0..self.cap {
            power = power.multiply(&nil)?;
            if power.terms.is_empty() {
                break;
            }
            out = out.add(&power)?;
        }
        Ok(out)
    }

    /// Set every variable outside `keep` to zero and renumber the rest
    /// `1..=keep.len()` in the given order.
    pub fn restrict(&self, keep: &[usize]) -> Result<Self> {
        let mut rename = vec![0u16; self.n_vars + 1];
        for (new, &old) in keep.iter().enumerate() {
            rename[old] = new as u16 + 1;
        }
        let terms = self.terms().filter_map(|(idx, c)| {
            let mapped: Option<Vec<u16>> = idx
                .0
                .iter()
                .map(|&i| Some(rename[i as usize]).filter(|&r| r != 0))
                .collect();
            mapped.map(|m| (MultiIndex(m), c.clone()))
        });
        Self::from_terms(keep.len(), self.cap, terms.collect::<Vec<_>>())
    }

    /// Convert coefficients to another ring, failing if any do not fit.
    pub fn convert<D>(&self) -> Result<TruncatedSeries<D>>
    where
        D: Coefficient + TryFrom<num_bigint::BigInt>,
    {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| Ok((*k, D::try_from(c.to_big()).map_err(|_| Error::Overflow)?)))
            .collect::<Result<_>>()?;
        Ok(TruncatedSeries {
            n_vars: self.n_vars,
            cap: self.cap,
            terms,
        })
    }

    /// One line per term, `coeff i1 ... ik`, constant term as `1 .`.
    pub fn to_lines(&self) -> Vec<String> {
        self.terms
            .iter()
            .map(|(k, c)| {
                if k.weight() == 0 {
                    format!("{c} .")
                } else {
                    let idx = k.unpack();
                    let parts: Vec<String> = idx.0.iter().map(|i| i.to_string()).collect();
                    format!("{c} {}", parts.join(" "))
                }
            })
            .collect()
    }
}

fn weight_offsets<C>(terms: &[(Key, C)], cap: usize) -> Vec<usize> {
    (0..=cap + 1)
        .map(|w| terms.partition_point(|(k, _)| k.weight() < w))
        .collect()
}

fn merge_sum<C: Coefficient>(
    a: &[(Key, C)],
    b: &[(Key, C)],
    negate_b: bool,
) -> Result<Vec<(Key, C)>> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let take_b = |c: &C| -> Result<C> {
        if negate_b {
            c.neg_checked()
        } else {
            Ok(c.clone())
        }
    };
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, take_b(&b[j].1)?));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b {
                    a[i].1.sub_checked(&b[j].1)?
                } else {
                    a[i].1.add_checked(&b[j].1)?
                };
                if !c.is_zero() {
                    out.push((a[i].0, c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    for t in &b[j..] {
        out.push((t.0, take_b(&t.1)?));
    }
    Ok(out)
}

/// `M(w)` truncated at `cap`, computed letter by letter.
pub fn magnus_expand<C: Coefficient>(
    w: &Word,
    n_vars: usize,
    cap: usize,
) -> Result<TruncatedSeries<C>> {
    let mut s = TruncatedSeries::one(n_vars, cap)?;
    for &l in w.letters() {
        s = s.mul_letter(l)?;
    }
    Ok(s)
}

/// Position of a word in the lower central series, as far as `depth_cap`
/// can see.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinWeight {
    /// Coefficients vanish below this weight and not at it.
    Exact(usize),
    /// Nothing nonzero up to the cap; the true value is at least this.
    AtLeast(usize),
}

impl MinWeight {
    pub fn exact(self) -> Option<usize> {
        match self {
            MinWeight::Exact(q) => Some(q),
            MinWeight::AtLeast(_) => None,
        }
    }
}

impl fmt::Display for MinWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinWeight::Exact(q) => write!(f, "{q}"),
            MinWeight::AtLeast(q) => write!(f, ">= {q}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsDepthReport {
    pub word: Word,
    pub depth_cap: usize,
    pub min_nonzero_weight: MinWeight,
}

impl LcsDepthReport {
    /// Largest `q` with the word known to lie in `F_q`.
    pub fn known_depth(&self) -> usize {
        match self.min_nonzero_weight {
            MinWeight::Exact(q) => q,
            MinWeight::AtLeast(q) => q,
        }
    }
}

/// Smallest weight in `1..=depth_cap` with a nonzero Magnus coefficient.
/// Words with min weight `q` lie in `F_q` but not in `F_{q+1}`.
pub fn lcs_min_weight(w: &Word, depth_cap: usize) -> Result<LcsDepthReport> {
    if depth_cap < 2 {
        return Err(Error::InvalidArgument(
            "depth cap must be at least 2".into(),
        ));
    }
    let n = w.max_generator().max(1) as usize;
    let s = magnus_expand::<num_bigint::BigInt>(w, n, depth_cap)?;
    let min = match s.min_nonzero_weight() {
        Some(q) => MinWeight::Exact(q),
        None => MinWeight::AtLeast(depth_cap + 1),
    };
    Ok(LcsDepthReport {
        word: w.clone(),
        depth_cap,
        min_nonzero_weight: min,
    })
}

/// `w ∈ F_q`, decided by the vanishing of Magnus coefficients in weights
/// `1..q`.
pub fn in_lcs_term(w: &Word, q: usize, depth_cap: usize) -> Result<bool> {
    if q == 0 {
        return Err(Error::InvalidArgument(
            "lower central series starts at F_1".into(),
        ));
    }
    if q > depth_cap {
        return Err(Error::InvalidArgument(format!(
            "q = {q} exceeds depth cap {depth_cap}"
        )));
    }
    if q == 1 {
        return Ok(true);
    }
    let n = w.max_generator().max(1) as usize;
    let s = magnus_expand::<num_bigint::BigInt>(w, n, q - 1)?;
    Ok(s.min_nonzero_weight().is_none())
}
