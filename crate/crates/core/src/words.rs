//! Binary words over {A, B}: packed representation, lexicographic
//! enumeration by combinatorial ranking, cyclic run decomposition, and
//! the exact trace of a word over the family (A_x, B_x).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::Poly;
use crate::family::{family, Mat3};

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord)]
pub enum Letter {
    A,
    B,
}

/// A word of up to 64 letters, packed one bit per letter (A = 0, B = 1),
/// bit i holding the letter at position i.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Word {
    len: u8,
    bits: u64,
}

impl Word {
    pub fn from_letters<I>(letters: I) -> Result<Word>
    where
        I: IntoIterator<Item = Letter>,
    {
        let mut bits = 0u64;
        let mut len = 0usize;
        for letter in letters {
            if len >= 64 {
                return Err(Error::WordTooLong { len: len + 1 });
            }
            if letter == Letter::B {
                bits |= 1 << len;
            }
            len += 1;
        }
        Ok(Word {
            len: len as u8,
            bits,
        })
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn letter(&self, i: usize) -> Letter {
        debug_assert!(i < self.len());
        if self.bits >> i & 1 == 1 {
            Letter::B
        } else {
            Letter::A
        }
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|i| self.letter(i))
    }

    /// Number of A letters.
    pub fn count_a(&self) -> u32 {
        self.len as u32 - self.count_b()
    }

    /// Number of B letters.
    pub fn count_b(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn has_both_letters(&self) -> bool {
        self.count_a() > 0 && self.count_b() > 0
    }

    /// Left rotation by k: the word starting at position k.
    pub fn rotate_left(&self, k: usize) -> Word {
        let n = self.len();
        if n == 0 || k % n == 0 {
            return *self;
        }
        let k = k % n;
        let mask = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        let bits = ((self.bits >> k) | (self.bits << (n - k))) & mask;
        Word {
            len: self.len,
            bits,
        }
    }

    pub fn reversed(&self) -> Word {
        Word::from_letters(self.letters().collect::<Vec<_>>().into_iter().rev())
            .expect("reversal preserves length")
    }

    /// A and B exchanged.
    pub fn swapped_letters(&self) -> Word {
        let n = self.len();
        let mask = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        Word {
            len: self.len,
            bits: !self.bits & mask,
        }
    }

    /// All distinct rotations; the size divides the length.
    pub fn cyclic_shifts(&self) -> BTreeSet<Word> {
        (0..self.len().max(1))
            .map(|k| self.rotate_left(k))
            .collect()
    }
}

// Lexicographic with A < B, then by length for prefixes.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let common = self.len().min(other.len());
        for i in 0..common {
            match self.letter(i).cmp(&other.letter(i)) {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.len().cmp(&other.len())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    /// Run shorthand ("A^3 B A B^3 A B") when any run has length >= 3,
    /// plain letters otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let runs = self.linear_runs();
        if runs.iter().any(|&(_, n)| n >= 3) {
            let parts: Vec<String> = runs
                .iter()
                .map(|&(l, n)| {
                    let l = if l == Letter::A { "A" } else { "B" };
                    if n == 1 {
                        l.to_string()
                    } else {
                        format!("{l}^{n}")
                    }
                })
                .collect();
            write!(f, "{}", parts.join(" "))
        } else {
            for l in self.letters() {
                write!(f, "{}", if l == Letter::A { 'A' } else { 'B' })?;
            }
            Ok(())
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl Word {
    /// Maximal runs of the linear (non-cyclic) word as (letter, length).
    fn linear_runs(&self) -> Vec<(Letter, u32)> {
        let mut runs: Vec<(Letter, u32)> = Vec::new();
        for l in self.letters() {
            match runs.last_mut() {
                Some((letter, n)) if *letter == l => *n += 1,
                _ => runs.push((l, 1)),
            }
        }
        runs
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts plain letters ("AAABABBBAB") and whitespace-separated run
    /// tokens with optional caret exponents ("A^3 B A B^3 A B").
    fn from_str(s: &str) -> Result<Word> {
        let parse_err = |pos: usize, msg: &str| Error::WordParse {
            pos,
            msg: msg.to_string(),
        };
        if s.trim().is_empty() {
            return Err(parse_err(0, "empty word"));
        }
        let mut letters = Vec::new();
        if s.contains(char::is_whitespace) || s.contains('^') {
            let mut offset = 0usize;
            for token in s.split_whitespace() {
                let pos = offset + s[offset..].find(token).unwrap_or(0);
                offset = pos + token.len();
                let mut chars = token.chars();
                let letter = match chars.next() {
                    Some('A') => Letter::A,
                    Some('B') => Letter::B,
                    _ => return Err(parse_err(pos, "expected letter A or B")),
                };
                let rest = chars.as_str();
                let count: u32 = if rest.is_empty() {
                    1
                } else {
                    let digits = rest
                        .strip_prefix('^')
                        .ok_or_else(|| parse_err(pos + 1, "expected '^' after letter"))?;
                    digits
                        .parse()
                        .ok()
                        .filter(|&n| n >= 1)
                        .ok_or_else(|| parse_err(pos + 2, "exponent must be an integer >= 1"))?
                };
                letters.extend(std::iter::repeat(letter).take(count as usize));
            }
        } else {
            for (pos, c) in s.char_indices() {
                match c {
                    'A' => letters.push(Letter::A),
                    'B' => letters.push(Letter::B),
                    _ => return Err(parse_err(pos, "expected letter A or B")),
                }
            }
        }
        Word::from_letters(letters)
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// binomial(n+m, n) as u64; lengths are capped at 64 letters where all
/// these counts fit.
pub fn word_count(n: u32, m: u32) -> u64 {
    debug_assert!(n + m <= 64);
    let mut acc: u128 = 1;
    let k = n.min(m) as u128;
    let total = (n + m) as u128;
    for i in 0..k {
        acc = acc * (total - i) / (i + 1);
    }
    acc as u64
}

/// Rank of `w` in the lexicographic (A < B) enumeration of its (n, m) class.
pub fn rank(w: &Word) -> u64 {
    let mut rank = 0u64;
    let mut a_left = w.count_a();
    let mut b_left = w.count_b();
    for l in w.letters() {
        match l {
            Letter::A => {
                a_left -= 1;
            }
            Letter::B => {
                // Words that put an A here come first.
                if a_left > 0 {
                    rank += word_count(a_left - 1, b_left);
                }
                b_left -= 1;
            }
        }
    }
    rank
}

/// Inverse of `rank`: the word of the given class at lexicographic position r.
pub fn unrank(n: u32, m: u32, r: u64) -> Word {
    debug_assert!(r < word_count(n, m));
    let mut bits = 0u64;
    let mut a_left = n;
    let mut b_left = m;
    let mut r = r;
    for i in 0..(n + m) as usize {
        if a_left == 0 {
            bits |= 1 << i;
            b_left -= 1;
            continue;
        }
        if b_left == 0 {
            a_left -= 1;
            continue;
        }
        let with_a = word_count(a_left - 1, b_left);
        if r < with_a {
            a_left -= 1;
        } else {
            r -= with_a;
            bits |= 1 << i;
            b_left -= 1;
        }
    }
    Word {
        len: (n + m) as u8,
        bits,
    }
}

/// Lexicographic stream over all words with exactly n letters A and m
/// letters B. Supports deterministic partitioning into contiguous rank
/// ranges, so data-parallel sweeps that reduce with an exact commutative
/// operation are independent of the partitioning.
#[derive(Clone, Debug)]
pub struct WordRange {
    n: u32,
    m: u32,
    next: u64,
    end: u64,
}

impl WordRange {
    pub fn rank_range(&self) -> (u64, u64) {
        (self.next, self.end)
    }

    /// Splits into k contiguous, jointly exhaustive rank ranges.
    pub fn split(self, k: usize) -> Vec<WordRange> {
        let k = k.max(1) as u64;
        let total = self.end - self.next;
        let base = total / k;
        let extra = total % k;
        let mut out = Vec::new();
        let mut start = self.next;
        for i in 0..k {
            let size = base + if i < extra { 1 } else { 0 };
            out.push(WordRange {
                n: self.n,
                m: self.m,
                next: start,
                end: start + size,
            });
            start += size;
        }
        out
    }
}

impl Iterator for WordRange {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        if self.next >= self.end {
            return None;
        }
        let w = unrank(self.n, self.m, self.next);
        self.next += 1;
        Some(w)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for WordRange {}

/// All words with n letters A and m letters B, lexicographically (A < B).
pub fn enumerate_words(n: u32, m: u32) -> WordRange {
    debug_assert!(n + m >= 1 && n + m <= 64);
    WordRange {
        n,
        m,
        next: 0,
        end: word_count(n, m),
    }
}

/// Cyclic run form A^{a_1} B^{b_1} ... A^{a_r} B^{b_r} of a word after
/// rotating it to start with an A-run whose cyclic predecessor is a B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunForm {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    /// Left-rotation applied to the original word to reach the run form.
    pub rotation_offset: usize,
}

impl RunForm {
    /// Number of A-runs (equals the number of B-runs).
    pub fn r(&self) -> usize {
        self.a.len()
    }

    pub fn n(&self) -> u32 {
        self.a.iter().sum()
    }

    pub fn m(&self) -> u32 {
        self.b.iter().sum()
    }

    /// The rotated word A^{a_1} B^{b_1} ... A^{a_r} B^{b_r}.
    pub fn rotated_word(&self) -> Word {
        let mut letters = Vec::new();
        for i in 0..self.r() {
            letters.extend(std::iter::repeat(Letter::A).take(self.a[i] as usize));
            letters.extend(std::iter::repeat(Letter::B).take(self.b[i] as usize));
        }
        Word::from_letters(letters).expect("run form within length cap")
    }

    /// Rotates back to the original word.
    pub fn original_word(&self) -> Word {
        let w = self.rotated_word();
        let n = w.len();
        w.rotate_left((n - self.rotation_offset % n) % n)
    }
}

/// Cyclic run decomposition. Among all rotations that start with an A-run
/// preceded cyclically by a B, the one with the smallest starting index in
/// the original word is chosen, which makes reports reproducible.
pub fn run_decomposition(w: &Word) -> Result<RunForm> {
    if !w.has_both_letters() {
        return Err(Error::SingleLetterWord {
            word: w.to_string(),
        });
    }
    let len = w.len();
    let offset = (0..len)
        .find(|&i| w.letter(i) == Letter::A && w.letter((i + len - 1) % len) == Letter::B)
        .expect("a word with both letters has a B-to-A boundary");
    let rotated = w.rotate_left(offset);

    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut i = 0usize;
    while i < len {
        let mut a_run = 0u32;
        while i < len && rotated.letter(i) == Letter::A {
            a_run += 1;
            i += 1;
        }
        let mut b_run = 0u32;
        while i < len && rotated.letter(i) == Letter::B {
            b_run += 1;
            i += 1;
        }
        a.push(a_run);
        b.push(b_run);
    }
    Ok(RunForm {
        a,
        b,
        rotation_offset: offset,
    })
}

/// Exact trace of the word evaluated at (A_x, B_x): a strict left-to-right
/// fold of 3x3 polynomial matrices, one per letter. This is deliberately
/// the dumbest possible route; the run-based expansions elsewhere are
/// checked against it.
pub fn word_trace(w: &Word) -> Poly {
    let (a, b) = family();
    let mut product: Option<Mat3<Poly>> = None;
    for l in w.letters() {
        let factor = if l == Letter::A { a } else { b };
        product = Some(match product {
            None => factor.clone(),
            Some(acc) => &acc * factor,
        });
    }
    match product {
        Some(m) => m.trace(),
        None => Poly::constant(crate::exact::rat_int(3)),
    }
}

/// The order-4 bridge pattern A^(n-2) B A B^(m-2) A B.
pub fn bridge_word(n: u32, m: u32) -> Result<Word> {
    if n < 3 || m < 3 {
        return Err(Error::RangeError { n, m, min: 3 });
    }
    let mut letters = Vec::new();
    letters.extend(std::iter::repeat(Letter::A).take((n - 2) as usize));
    letters.push(Letter::B);
    letters.push(Letter::A);
    letters.extend(std::iter::repeat(Letter::B).take((m - 2) as usize));
    letters.push(Letter::A);
    letters.push(Letter::B);
    Word::from_letters(letters)
}

/// Word literal helper for tests.
#[cfg(test)]
pub(crate) fn word(s: &str) -> Word {
    s.parse().expect("valid word literal")
}
