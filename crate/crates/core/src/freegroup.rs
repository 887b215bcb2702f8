//! Reduced words in the free group on `rank` generators.
//!
//! Letters are ordered `a < A < b < B < ...`, where uppercase denotes the
//! inverse generator. Words compare shortlex under that order, which fixes
//! the enumeration order of balls, transversals and generating sets.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

/// Largest rank accepted by the text syntax (one letter per generator).
pub const MAX_TEXT_RANK: usize = 26;

/// A generator or inverse generator, packed as `2 * generator + inverted`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(u8);

impl Letter {
    pub fn new(generator: usize, inverted: bool) -> Letter {
        assert!(generator < 128, "generator index {generator} too large");
        Letter((generator as u8) << 1 | inverted as u8)
    }

    pub fn from_code(code: usize) -> Letter {
        Letter::new(code >> 1, code & 1 == 1)
    }

    pub fn generator(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn inverted(self) -> bool {
        self.0 & 1 == 1
    }

    /// Position in the canonical order `a, A, b, B, ...`.
    pub fn code(self) -> usize {
        self.0 as usize
    }

    pub fn inverse(self) -> Letter {
        Letter(self.0 ^ 1)
    }

    pub fn to_char(self) -> char {
        let c = (b'a' + (self.generator() as u8 % 26)) as char;
        if self.inverted() {
            c.to_ascii_uppercase()
        } else {
            c
        }
    }

    pub fn from_char(c: char) -> Option<Letter> {
        if c.is_ascii_lowercase() {
            Some(Letter::new((c as u8 - b'a') as usize, false))
        } else if c.is_ascii_uppercase() {
            Some(Letter::new((c as u8 - b'A') as usize, true))
        } else {
            None
        }
    }
}

impl fmt::Debug for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char())
    }
}

/// All `2 * rank` letters in canonical order.
pub fn alphabet(rank: usize) -> impl Iterator<Item = Letter> + Clone {
    (0..2 * rank).map(Letter::from_code)
}

/// A freely reduced word. Its length is the word length `|w|_X` with respect
/// to the symmetric generating set `X = {a_1^{±1}, ..., a_m^{±1}}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

/// Free reduction with a single left-to-right stack pass.
pub fn reduce(rank: usize, letters: &[Letter]) -> Result<FreeWord> {
    let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
    for &x in letters {
        if x.generator() >= rank {
            return Err(Error::LetterOutOfRange {
                index: x.generator(),
                rank,
            });
        }
        if stack.last() == Some(&x.inverse()) {
            stack.pop();
        } else {
            stack.push(x);
        }
    }
    Ok(FreeWord {
        rank,
        letters: stack,
    })
}

impl FreeWord {
    pub fn identity(rank: usize) -> FreeWord {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    pub fn generator(rank: usize, letter: Letter) -> Result<FreeWord> {
        reduce(rank, &[letter])
    }

    /// Parses the text syntax: lowercase is a generator, uppercase its
    /// inverse, and `"1"` or `""` is the identity. Whitespace is ignored.
    pub fn parse(text: &str, rank: usize) -> Result<FreeWord> {
        let trimmed = text.trim();
        if trimmed.is_empty() || trimmed == "1" {
            return Ok(FreeWord::identity(rank));
        }
        let mut letters = Vec::with_capacity(trimmed.len());
        for (offset, c) in text.char_indices() {
            if c.is_whitespace() {
                continue;
            }
            let letter = Letter::from_char(c).ok_or_else(|| Error::Parse {
                offset,
                message: format!("unexpected character {c:?} in word"),
            })?;
            if letter.generator() >= rank {
                return Err(Error::Parse {
                    offset,
                    message: format!("letter {c:?} outside alphabet of rank {rank}"),
                });
            }
            letters.push(letter);
        }
        reduce(rank, &letters)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    /// `|w|_X`.
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    pub fn multiply(&self, other: &FreeWord) -> Result<FreeWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: other.rank,
            });
        }
        Ok(self.mul(other))
    }

    /// Product of two words of the same rank. Panics on rank mismatch.
    pub fn mul(&self, other: &FreeWord) -> FreeWord {
        assert_eq!(self.rank, other.rank, "rank mismatch in word product");
        let cancel = cancellation_length(&self.letters, &other.letters);
        let mut letters = Vec::with_capacity(self.len() + other.len() - 2 * cancel);
        letters.extend_from_slice(&self.letters[..self.len() - cancel]);
        letters.extend_from_slice(&other.letters[cancel..]);
        FreeWord {
            rank: self.rank,
            letters,
        }
    }

    pub fn invert(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|x| x.inverse()).collect(),
        }
    }

    /// `self * letter`, reduced.
    pub fn append(&self, letter: Letter) -> FreeWord {
        let mut letters = self.letters.clone();
        if letters.last() == Some(&letter.inverse()) {
            letters.pop();
        } else {
            letters.push(letter);
        }
        FreeWord {
            rank: self.rank,
            letters,
        }
    }

    /// `letter * self`, reduced.
    pub fn prepend(&self, letter: Letter) -> FreeWord {
        if self.letters.first() == Some(&letter.inverse()) {
            return FreeWord {
                rank: self.rank,
                letters: self.letters[1..].to_vec(),
            };
        }
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.letters);
        FreeWord {
            rank: self.rank,
            letters,
        }
    }

    /// `t * self * t^{-1}`.
    pub fn conjugate_by(&self, t: &FreeWord) -> FreeWord {
        t.mul(self).mul(&t.invert())
    }

    /// Human-readable rendering, e.g. `abA` becomes `ab a⁻¹`.
    pub fn pretty(&self) -> String {
        if self.is_empty() {
            return "ε".to_string();
        }
        let mut out = String::new();
        for (i, x) in self.letters.iter().enumerate() {
            if x.inverted() {
                if i > 0 && !out.ends_with(' ') {
                    out.push(' ');
                }
                out.push(x.inverse().to_char());
                out.push_str("⁻¹");
                if i + 1 < self.letters.len() {
                    out.push(' ');
                }
            } else {
                out.push(x.to_char());
            }
        }
        out
    }
}

/// Number of trailing letters of `left` annihilated against leading letters
/// of `right` when the concatenation is reduced. Both inputs must be reduced.
pub fn cancellation_length(left: &[Letter], right: &[Letter]) -> usize {
    left.iter()
        .rev()
        .zip(right.iter())
        .take_while(|(x, y)| **x == y.inverse())
        .count()
}

impl Ord for FreeWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rank
            .cmp(&other.rank)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for FreeWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        for x in &self.letters {
            write!(f, "{}", x.to_char())?;
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FreeWord({self})")
    }
}

/// Closed ball `B_r` around the identity in the word metric.
#[derive(Clone, Debug)]
pub struct Ball {
    rank: usize,
    radius: usize,
    elements: Vec<FreeWord>,
}

impl Ball {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Elements in shortlex order; the identity comes first.
    pub fn elements(&self) -> &[FreeWord] {
        &self.elements
    }

    /// The punctured ball, all elements except the identity.
    pub fn punctured(&self) -> &[FreeWord] {
        &self.elements[1..]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_elements(self) -> Vec<FreeWord> {
        self.elements
    }
}

/// `|B_r|` for the free group of the given rank.
pub fn ball_size(rank: usize, radius: usize) -> u128 {
    if rank == 0 {
        return 1;
    }
    let m = rank as u128;
    let mut total: u128 = 1;
    let mut sphere: u128 = 2 * m;
    for _ in 0..radius {
        total = total.saturating_add(sphere);
        sphere = sphere.saturating_mul(2 * m - 1);
    }
    total
}

/// Enumerates `B_r` by extending reduced words one letter at a time, never
/// appending the inverse of the last letter.
pub fn ball(rank: usize, radius: usize, cap: usize) -> Result<Ball> {
    if rank == 0 {
        return Err(Error::Invalid("ball requires rank >= 1".into()));
    }
    let size = ball_size(rank, radius);
    if size > cap as u128 {
        return Err(Error::CapExceeded {
            what: "ball",
            size,
            cap,
        });
    }
    let mut elements = Vec::with_capacity(size as usize);
    elements.push(FreeWord::identity(rank));
    let mut sphere_start = 0;
    for _ in 0..radius {
        let sphere_end = elements.len();
        for i in sphere_start..sphere_end {
            let last = elements[i].last();
            for x in alphabet(rank) {
                if last == Some(x.inverse()) {
                    continue;
                }
                let mut letters = Vec::with_capacity(elements[i].len() + 1);
                letters.extend_from_slice(elements[i].letters());
                letters.push(x);
                elements.push(FreeWord { rank, letters });
            }
        }
        sphere_start = sphere_end;
    }
    Ok(Ball {
        rank,
        radius,
        elements,
    })
}
