//! Freely reduced words over numbered free generators.

use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter { generator: self.generator, inverse: !self.inverse }
    }
}

/// A freely reduced word. Every constructor reduces, so equality is equality
/// of group elements.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Self {
        Word(vec![Letter::new(g, false)])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Word from signed generator numbers: `+k` is generator `k - 1`, `-k` its inverse.
    pub fn from_signed(letters: &[i64]) -> Self {
        Word::from_letters(letters.iter().map(|&s| {
            assert!(s != 0, "signed letters start at 1");
            Letter::new(s.unsigned_abs() as usize - 1, s < 0)
        }))
    }

    pub fn push(&mut self, l: Letter) {
        if self.0.last() == Some(&l.inv()) {
            self.0.pop();
        } else {
            self.0.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.0 {
            w.push(l);
        }
        w
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..k.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    /// `c⁻¹ · self · c`.
    pub fn conjugate_by(&self, c: &Word) -> Word {
        c.inverse().concat(self).concat(c)
    }

    /// Substitutes a word for every generator.
    pub fn substitute(&self, images: &[Word]) -> Word {
        let mut w = Word::empty();
        for l in &self.0 {
            let img = &images[l.generator];
            if l.inverse {
                w = w.concat(&img.inverse());
            } else {
                w = w.concat(img);
            }
        }
        w
    }

    /// Largest generator index used, plus one.
    pub fn rank_needed(&self) -> usize {
        self.0.iter().map(|l| l.generator + 1).max().unwrap_or(0)
    }

    /// Splits into `(a, core)` with `self = a · core · a⁻¹` and `core` cyclically reduced.
    pub fn cyclic_reduction(&self) -> (Word, Word) {
        let n = self.0.len();
        let mut i = 0;
        while 2 * i + 1 < n && self.0[i] == self.0[n - 1 - i].inv() {
            i += 1;
        }
        (Word(self.0[..i].to_vec()), Word(self.0[i..n - i].to_vec()))
    }

    /// Writes the word with the given generator names, `x^-1` for inverses and `1` for the identity.
    pub fn display_with<'a, F: Fn(usize) -> String + 'a>(&'a self, name: F) -> impl fmt::Display + 'a {
        DisplayWord { word: self, name }
    }
}

struct DisplayWord<'a, F> {
    word: &'a Word,
    name: F,
}

impl<F: Fn(usize) -> String> fmt::Display for DisplayWord<'_, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.word.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", (self.name)(l.generator))?;
            if l.inverse {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|g| format!("x{g}")))
    }
}

/// All reduced words of length at most `max_len` over `rank` generators, shortest first.
pub fn reduced_words(rank: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for g in 0..rank {
                for inverse in [false, true] {
                    let l = Letter::new(g, inverse);
                    if w.0.last() == Some(&l.inv()) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.0.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_eagerly() {
        let w = Word::from_signed(&[1, 2, -2, -1, 1]);
        assert_eq!(w, Word::from_signed(&[1]));
        assert_eq!(w.concat(&w.inverse()), Word::empty());
    }

    #[test]
    fn cyclic_reduction_splits_conjugator() {
        let w = Word::from_signed(&[2, 1, 1, -2]);
        let (a, core) = w.cyclic_reduction();
        assert_eq!(a, Word::from_signed(&[2]));
        assert_eq!(core, Word::from_signed(&[1, 1]));
        assert_eq!(core.conjugate_by(&a.inverse()), w);
    }

    #[test]
    fn reduced_word_counts() {
        // 1 + 2r * sum (2r-1)^k
        assert_eq!(reduced_words(1, 3).len(), 7);
        assert_eq!(reduced_words(2, 2).len(), 1 + 4 + 12);
    }
}
