//! Words in finitely generated free groups.
//!
//! Generators are 1-based (`x1, x2, ...`). A [`Word`] is always freely
//! reduced, so two words are equal as group elements exactly when their
//! letter sequences are equal.

use std::fmt;

use crate::error::{Error, Result};

/// A free generator `x_i`, `i >= 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(u32);

impl Generator {
    pub fn new(index: u32) -> Option<Self> {
        (index >= 1 && index <= i32::MAX as u32).then_some(Generator(index))
    }

    pub fn index(self) -> u32 {
        self.0
    }
}

/// A generator or its inverse, packed as a signed index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(i32);

impl Letter {
    pub fn new(generator: Generator, inverse: bool) -> Self {
        let g = generator.0 as i32;
        Letter(if inverse { -g } else { g })
    }

    /// `x_index^sign`; panics on index 0 or a sign other than +-1.
    pub fn from_signed(index: u32, sign: i32) -> Self {
        let g = Generator::new(index).expect("generator index must be >= 1");
        assert!(sign == 1 || sign == -1, "letter sign must be +-1");
        Letter::new(g, sign < 0)
    }

    pub fn generator(self) -> Generator {
        Generator(self.0.unsigned_abs())
    }

    pub fn index(self) -> u32 {
        self.0.unsigned_abs()
    }

    pub fn is_inverse(self) -> bool {
        self.0 < 0
    }

    pub fn sign(self) -> i32 {
        self.0.signum()
    }

    pub fn inverse(self) -> Self {
        Letter(-self.0)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn generator(index: u32) -> Self {
        Word {
            letters: vec![Letter::from_signed(index, 1)],
        }
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for l in letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Largest generator index occurring in the word (0 for the identity).
    pub fn max_generator(&self) -> u32 {
        self.letters.iter().map(|l| l.index()).max().unwrap_or(0)
    }

    pub fn multiply(&self, other: &Word) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.letters);
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        Word { letters: out }
    }

    pub fn invert(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `self^exponent` for any integer exponent.
    pub fn pow(&self, exponent: i64) -> Word {
        let base = if exponent < 0 {
            self.invert()
        } else {
            self.clone()
        };
        let mut out = Word::identity();
        for _ in 0..exponent.unsigned_abs() {
            out = out.multiply(&base);
        }
        out
    }

    /// `[u, v] = u v u^-1 v^-1`.
    pub fn commutator(&self, other: &Word) -> Word {
        Word::reduce(
            self.letters
                .iter()
                .chain(&other.letters)
                .copied()
                .chain(self.invert().letters)
                .chain(other.invert().letters),
        )
    }

    /// `by · self · by^-1`.
    pub fn conjugate(&self, by: &Word) -> Word {
        by.multiply(self).multiply(&by.invert())
    }

    /// Exponent sum of each generator `x_1..x_n` (index 0 holds `x_1`).
    pub fn exponent_sums(&self, n: usize) -> Vec<i64> {
        let mut sums = vec![0i64; n];
        for l in &self.letters {
            let i = l.index() as usize;
            if i <= n {
                sums[i - 1] += l.sign() as i64;
            }
        }
        sums
    }

    /// Replace every generator `x_i` by `images(i)`, freely reducing as we
    /// go. Fails once the partial result exceeds `max_letters`.
    pub fn substitute<'a, F>(&self, images: F, max_letters: usize) -> Result<Word>
    where
        F: Fn(u32) -> &'a Word,
    {
        let mut out: Vec<Letter> = Vec::new();
        for l in &self.letters {
            let img = images(l.index());
            if l.is_inverse() {
                for &m in img.letters.iter().rev() {
                    push_reduced(&mut out, m.inverse());
                }
            } else {
                for &m in &img.letters {
                    push_reduced(&mut out, m);
                }
            }
            if out.len() > max_letters {
                return Err(Error::Resource {
                    what: "word length",
                    size: out.len(),
                    limit: max_letters,
                });
            }
        }
        Ok(Word { letters: out })
    }

    /// Whether `self` is conjugate in the free group to `x_index`.
    pub fn is_conjugate_of_generator(&self, index: u32) -> bool {
        // a cyclically reduced conjugate of x_i is x_i itself
        let l = &self.letters;
        let n = l.len();
        if n.is_multiple_of(2) {
            return false;
        }
        let mid = n / 2;
        if l[mid] != Letter::from_signed(index, 1) {
            return false;
        }
        (0..mid).all(|k| l[n - 1 - k] == l[k].inverse())
    }
}

fn push_reduced(out: &mut Vec<Letter>, l: Letter) {
    if out.last() == Some(&l.inverse()) {
        out.pop();
    } else {
        out.push(l);
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word::reduce(iter)
    }
}

/// Parse the whitespace-separated word syntax: `x3`, `x3^-1`, `x3^k`.
/// An empty string is the identity.
pub fn parse_word(text: &str, n_generators: usize) -> Result<Word> {
    let mut letters = Vec::new();
    let mut pos = 0usize;
    for token in text.split_whitespace() {
        let start = pos + text[pos..].find(token).expect("token comes from text");
        pos = start + token.len();
        let syntax = |offset: usize, message: &str| Error::Syntax {
            position: start + offset,
            message: message.to_string(),
        };
        let body = token
            .strip_prefix('x')
            .ok_or_else(|| syntax(0, "expected 'x'"))?;
        let (index_text, exponent_text) = match body.find('^') {
            Some(k) => (&body[..k], Some((k, &body[k + 1..]))),
            None => (body, None),
        };
        if index_text.is_empty() || !index_text.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax(1, "expected generator index"));
        }
        let index: u32 = index_text
            .parse()
            .map_err(|_| syntax(1, "generator index too large"))?;
        if index == 0 {
            return Err(syntax(1, "generator indices start at 1"));
        }
        if index as usize > n_generators {
            return Err(Error::GeneratorOutOfRange {
                index,
                available: n_generators,
            });
        }
        let exponent: i64 = match exponent_text {
            None => 1,
            Some((k, e)) => {
                let digits = e.strip_prefix('-').unwrap_or(e);
                if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(syntax(k + 2, "expected integer exponent"));
                }
                e.parse().map_err(|_| syntax(k + 2, "exponent too large"))?
            }
        };
        let letter = Letter::from_signed(index, if exponent < 0 { -1 } else { 1 });
        for _ in 0..exponent.unsigned_abs() {
            letters.push(letter);
        }
    }
    Ok(Word::reduce(letters))
}

/// Format with exponent compression: `x1^2 x2^-1`. The identity is `""`.
pub fn format_word(w: &Word) -> String {
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut k = 0;
    while k < letters.len() {
        let l = letters[k];
        let mut run = 1;
        while k + run < letters.len() && letters[k + run] == l {
            run += 1;
        }
        let exp = run as i64 * l.sign() as i64;
        parts.push(if exp == 1 {
            format!("x{}", l.index())
        } else {
            format!("x{}^{}", l.index(), exp)
        });
        k += run;
    }
    parts.join(" ")
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("1")
        } else {
            f.write_str(&format_word(self))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: u32) -> Letter {
        Letter::from_signed(i, 1)
    }

    fn xi(i: u32) -> Letter {
        Letter::from_signed(i, -1)
    }

    fn w(text: &str) -> Word {
        parse_word(text, 9).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(Word::reduce([x(1), xi(1)]).is_identity());
        assert_eq!(
            Word::reduce([x(1), x(2), xi(2), x(1)]).letters(),
            &[x(1), x(1)]
        );
        let comm = [x(1), x(2), xi(1), xi(2)];
        assert_eq!(Word::reduce(comm).letters(), &comm);
    }

    #[test]
    fn reduce_cascades() {
        assert!(Word::reduce([x(1), x(2), x(3), xi(3), xi(2), xi(1)]).is_identity());
    }

    #[test]
    fn multiply_examples() {
        assert!(w("x1").multiply(&w("x1^-1")).is_identity());
        assert_eq!(w("x1 x2").multiply(&w("x2^-1 x3")), w("x1 x3"));
        assert_eq!(Word::identity().multiply(&w("x4 x2")), w("x4 x2"));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(w("x1 x2").invert(), w("x2^-1 x1^-1"));
        assert!(Word::identity().invert().is_identity());
        assert_eq!(w("x1^-1").invert(), w("x1"));
    }

    #[test]
    fn commutator_examples() {
        let c = w("x1").commutator(&w("x2"));
        assert_eq!(c.letters(), &[x(1), x(2), xi(1), xi(2)]);
        let v = w("x1 x3^-2 x2");
        assert!(v.commutator(&v).is_identity());
        assert!(w("x1").commutator(&Word::identity()).is_identity());
    }

    #[test]
    fn conjugate_examples() {
        assert_eq!(w("x1").conjugate(&Word::identity()), w("x1"));
        assert_eq!(w("x1").conjugate(&w("x2")), w("x2 x1 x2^-1"));
        assert!(Word::identity().conjugate(&w("x3 x1")).is_identity());
    }

    #[test]
    fn parse_examples() {
        assert_eq!(w("x1 x2^-1 x1").len(), 3);
        assert!(w("").is_identity());
        assert!(w("x1 x1^-1").is_identity());
        assert_eq!(w("x2^3 x1^-2").len(), 5);
        assert!(w("x1^0").is_identity());
    }

    #[test]
    fn parse_errors_are_located() {
        match parse_word("x1 y2", 3) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        match parse_word("x1 x2^", 3) {
            Err(Error::Syntax { position, .. }) => assert_eq!(position, 6),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_word("x0", 3),
            Err(Error::Syntax { position: 1, .. })
        ));
        assert_eq!(
            parse_word("x1 x4", 3),
            Err(Error::GeneratorOutOfRange {
                index: 4,
                available: 3
            })
        );
    }

    #[test]
    fn format_compresses_runs() {
        assert_eq!(
            format_word(&w("x1 x1 x2^-1 x2^-1 x2^-1 x1")),
            "x1^2 x2^-3 x1"
        );
        assert_eq!(format_word(&Word::identity()), "");
        assert_eq!(Word::identity().to_string(), "1");
    }

    #[test]
    fn substitution_respects_guard() {
        let images = [w("x1 x2 x1^-1"), w("x2")];
        let word = w("x1 x1 x2^-1");
        let out = word.substitute(|i| &images[i as usize - 1], 100).unwrap();
        assert_eq!(out, w("x1 x2 x2 x1^-1 x2^-1"));
        assert!(matches!(
            word.substitute(|i| &images[i as usize - 1], 2),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn conjugate_of_generator_shape() {
        assert!(w("x2 x1 x2^-1").is_conjugate_of_generator(1));
        assert!(w("x1").is_conjugate_of_generator(1));
        assert!(!w("x2 x1 x2").is_conjugate_of_generator(1));
        assert!(!w("x2 x1 x2^-1").is_conjugate_of_generator(2));
    }

    #[test]
    fn exponent_sums_count_signs() {
        assert_eq!(w("x1 x2 x1^-1 x3^2").exponent_sums(3), vec![0, 1, 2]);
    }
}
