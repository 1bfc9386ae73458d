//! Reduced words in the free group on `a`, `b`.
//!
//! Letters are written `a`, `b`, `A`, `B`, with the capitals standing for the
//! inverses. A [`Word`] is always stored freely reduced.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    A,
    B,
    AInv,
    BInv,
}

impl Letter {
    /// All four letters in canonical order `a, b, A, B`.
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::AInv, Letter::BInv];

    pub fn inverse(self) -> Letter {
        match self {
            Letter::A => Letter::AInv,
            Letter::AInv => Letter::A,
            Letter::B => Letter::BInv,
            Letter::BInv => Letter::B,
        }
    }

    /// Position in [`Letter::ALL`].
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Letter {
        Letter::ALL[i]
    }

    pub fn is_inverse(self) -> bool {
        matches!(self, Letter::AInv | Letter::BInv)
    }

    pub fn to_char(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::AInv => 'A',
            Letter::BInv => 'B',
        }
    }

    pub fn from_char(ch: char) -> Option<Letter> {
        match ch {
            'a' => Some(Letter::A),
            'b' => Some(Letter::B),
            'A' => Some(Letter::AInv),
            'B' => Some(Letter::BInv),
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut chars = s.chars();
        match (chars.next(), chars.next()) {
            (Some(ch), None) => {
                Letter::from_char(ch).ok_or(Error::InvalidCharacter { ch, position: 0 })
            }
            _ => Err(Error::Malformed(format!(
                "expected a single letter, got {s:?}"
            ))),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Word {
        Word::default()
    }

    pub fn letter(x: Letter) -> Word {
        Word { letters: vec![x] }
    }

    /// Freely reduces an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = Letter>>(raw: I) -> Word {
        let mut letters: Vec<Letter> = Vec::new();
        for x in raw {
            if letters.last() == Some(&x.inverse()) {
                letters.pop();
            } else {
                letters.push(x);
            }
        }
        Word { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same as [`Word::is_identity`].
    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        // Only the junction can cancel since both sides are reduced.
        let mut cancel = 0;
        while cancel < self.len()
            && cancel < other.len()
            && self.letters[self.len() - 1 - cancel] == other.letters[cancel].inverse()
        {
            cancel += 1;
        }
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        letters.extend_from_slice(&self.letters[..self.len() - cancel]);
        letters.extend_from_slice(&other.letters[cancel..]);
        Word { letters }
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|x| x.inverse()).collect(),
        }
    }

    /// Left multiplication by a single letter.
    pub fn prepend(&self, x: Letter) -> Word {
        Word::letter(x).concat(self)
    }

    pub fn parse(text: &str) -> Result<Word> {
        let raw = text
            .chars()
            .enumerate()
            .map(|(position, ch)| {
                Letter::from_char(ch).ok_or(Error::InvalidCharacter { ch, position })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Word::reduce(raw))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for x in &self.letters {
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Word::parse(s)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

impl Serialize for Letter {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Letter {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `|S_n|`: 1 for `n = 0`, `4·3^(n-1)` otherwise.
pub fn sphere_size(n: usize) -> num_bigint::BigUint {
    if n == 0 {
        num_bigint::BigUint::from(1u32)
    } else {
        num_bigint::BigUint::from(4u32) * num_bigint::BigUint::from(3u32).pow(n as u32 - 1)
    }
}

/// Iterator over every reduced word of length `n` extending a fixed prefix.
///
/// Letters after the first run through `a, b, A, B` skipping the inverse of
/// their predecessor, so with an empty prefix the order is the lexicographic
/// order on choice sequences.
#[derive(Debug, Clone)]
pub struct Sphere {
    prefix_len: usize,
    current: Vec<Letter>,
    done: bool,
}

impl Sphere {
    fn choices(prev: Option<Letter>) -> impl Iterator<Item = Letter> {
        Letter::ALL
            .into_iter()
            .filter(move |x| Some(x.inverse()) != prev)
    }

    fn fill_from(&mut self, start: usize, n: usize) {
        self.current.truncate(start);
        while self.current.len() < n {
            let prev = self.current.last().copied();
            let x = Self::choices(prev)
                .next()
                .expect("three choices always remain");
            self.current.push(x);
        }
    }

    fn advance(&mut self) {
        let n = self.current.len();
        let mut pos = n;
        while pos > self.prefix_len {
            pos -= 1;
            let prev = if pos == 0 {
                None
            } else {
                Some(self.current[pos - 1])
            };
            let cur = self.current[pos];
            if let Some(next) = Self::choices(prev).find(|x| x.index() > cur.index()) {
                self.current[pos] = next;
                self.fill_from(pos + 1, n);
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for Sphere {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.done {
            return None;
        }
        let word = Word {
            letters: self.current.clone(),
        };
        self.advance();
        Some(word)
    }
}

pub fn enumerate_sphere(n: usize) -> Sphere {
    sphere_with_prefix(&Word::identity(), n)
}

/// Words of length `n` starting with `prefix`. Empty when `prefix` is longer
/// than `n`. Used to split the sphere between workers.
pub fn sphere_with_prefix(prefix: &Word, n: usize) -> Sphere {
    let mut sphere = Sphere {
        prefix_len: prefix.len(),
        current: prefix.letters.clone(),
        done: prefix.len() > n,
    };
    if !sphere.done {
        sphere.fill_from(prefix.len(), n);
    }
    sphere
}
