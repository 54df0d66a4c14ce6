//! Free-group words over a finite basis.
//!
//! A letter is a nonzero `i32`: `+i` is the generator `x_i`, `-i` its inverse.
//! Text form uses `a..z` / `A..Z` for ranks up to 26 and `x27` / `X27`
//! tokens beyond that. `1` stands for the identity and whitespace is ignored.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = i32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet {
    rank: usize,
}

impl Alphabet {
    pub fn new(rank: usize) -> Result<Self> {
        if rank == 0 {
            return Err(Error::InvalidInput("alphabet rank must be at least 1".into()));
        }
        if rank > i32::MAX as usize / 2 {
            return Err(Error::InvalidInput(format!("alphabet rank {rank} too large")));
        }
        Ok(Alphabet { rank })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of direction slots at a vertex of a labeled graph (`2n`).
    pub fn num_slots(&self) -> usize {
        2 * self.rank
    }

    /// Slot index of a letter: `x_i -> 2(i-1)`, `x_i^-1 -> 2(i-1)+1`.
    pub fn slot(letter: Letter) -> usize {
        let i = letter.unsigned_abs() as usize - 1;
        2 * i + usize::from(letter < 0)
    }

    pub fn letter_of_slot(slot: usize) -> Letter {
        let i = (slot / 2 + 1) as Letter;
        if slot.is_multiple_of(2) {
            i
        } else {
            -i
        }
    }

    /// All letters in slot order: `a, A, b, B, ...`.
    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.num_slots()).map(Alphabet::letter_of_slot)
    }

    pub fn contains(&self, letter: Letter) -> bool {
        letter != 0 && (letter.unsigned_abs() as usize) <= self.rank
    }

    pub fn format_letter(&self, letter: Letter) -> String {
        let i = letter.unsigned_abs();
        if self.rank <= 26 {
            let base = if letter > 0 { b'a' } else { b'A' };
            char::from(base + (i - 1) as u8).to_string()
        } else if letter > 0 {
            format!("x{i}")
        } else {
            format!("X{i}")
        }
    }
}

fn letter_cmp(a: Letter, b: Letter) -> Ordering {
    Alphabet::slot(a).cmp(&Alphabet::slot(b))
}

/// A freely reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReducedWord {
    letters: Vec<Letter>,
    alphabet: Alphabet,
}

impl ReducedWord {
    pub fn identity(alphabet: Alphabet) -> Self {
        ReducedWord { letters: Vec::new(), alphabet }
    }

    /// Freely reduces `raw`. Fails if a letter lies outside the alphabet.
    pub fn reduce(raw: &[Letter], alphabet: Alphabet) -> Result<Self> {
        let mut letters: Vec<Letter> = Vec::with_capacity(raw.len());
        for &l in raw {
            if !alphabet.contains(l) {
                return Err(Error::InvalidInput(format!(
                    "letter {l} outside alphabet of rank {}",
                    alphabet.rank
                )));
            }
            if letters.last() == Some(&-l) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        Ok(ReducedWord { letters, alphabet })
    }

    fn from_reduced_unchecked(letters: Vec<Letter>, alphabet: Alphabet) -> Self {
        debug_assert!(letters.windows(2).all(|w| w[0] != -w[1]));
        ReducedWord { letters, alphabet }
    }

    pub fn parse(text: &str, alphabet: Alphabet) -> Result<Self> {
        let mut raw = Vec::new();
        let chars: Vec<char> = text.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            if c.is_whitespace() || c == '1' && !chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                i += 1;
                continue;
            }
            if (c == 'x' || c == 'X') && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()) {
                let start = i + 1;
                let mut end = start;
                while end < chars.len() && chars[end].is_ascii_digit() {
                    end += 1;
                }
                let digits: String = chars[start..end].iter().collect();
                let idx: i32 = digits
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad generator index `{digits}`")))?;
                if idx == 0 {
                    return Err(Error::Parse("generator index 0 is not allowed".into()));
                }
                raw.push(if c == 'x' { idx } else { -idx });
                i = end;
                continue;
            }
            if c.is_ascii_lowercase() {
                raw.push((c as u8 - b'a' + 1) as Letter);
            } else if c.is_ascii_uppercase() {
                raw.push(-((c as u8 - b'A' + 1) as Letter));
            } else {
                return Err(Error::Parse(format!("unexpected character `{c}` in word `{text}`")));
            }
            i += 1;
        }
        ReducedWord::reduce(&raw, alphabet).map_err(|e| match e {
            Error::InvalidInput(m) => Error::Parse(format!("{m} in word `{text}`")),
            other => other,
        })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Self {
        let letters = self.letters.iter().rev().map(|l| -l).collect();
        ReducedWord::from_reduced_unchecked(letters, self.alphabet)
    }

    pub fn concat(&self, other: &ReducedWord) -> Self {
        let mut letters = self.letters.clone();
        for &l in &other.letters {
            if letters.last() == Some(&-l) {
                letters.pop();
            } else {
                letters.push(l);
            }
        }
        ReducedWord::from_reduced_unchecked(letters, self.alphabet)
    }

    /// `g^-1 * self * g`.
    pub fn conjugate_by(&self, g: &ReducedWord) -> Self {
        g.inverse().concat(self).concat(g)
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        match (self.letters.first(), self.letters.last()) {
            (Some(&f), Some(&l)) => self.letters.len() == 1 || f != -l,
            _ => true,
        }
    }

    /// Splits `self = conjugator * core * conjugator^-1` with `core` cyclically reduced.
    pub fn cyclic_reduce(&self) -> (ReducedWord, ReducedWord) {
        let n = self.letters.len();
        let mut k = 0;
        while 2 * k + 1 < n && self.letters[k] == -self.letters[n - 1 - k] {
            k += 1;
        }
        let core = self.letters[k..n - k].to_vec();
        let conj = self.letters[..k].to_vec();
        (
            ReducedWord::from_reduced_unchecked(core, self.alphabet),
            ReducedWord::from_reduced_unchecked(conj, self.alphabet),
        )
    }

    /// Minimal representative of the class of a cyclically reduced word under
    /// cyclic rotation and inversion.
    pub fn cyclic_canonical(&self) -> Vec<Letter> {
        let inv: Vec<Letter> = self.letters.iter().rev().map(|l| -l).collect();
        let mut best: Option<Vec<Letter>> = None;
        for v in [&self.letters, &inv] {
            for i in 0..v.len().max(1) {
                let rot: Vec<Letter> = v[i..].iter().chain(v[..i].iter()).copied().collect();
                let better = match &best {
                    None => true,
                    Some(b) => cmp_words(&rot, b) == Ordering::Less,
                };
                if better {
                    best = Some(rot);
                }
            }
        }
        best.unwrap_or_default()
    }
}

/// Lexicographic comparison in slot order.
pub fn cmp_words(a: &[Letter], b: &[Letter]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        match letter_cmp(*x, *y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return Ok(());
        }
        let sep = if self.alphabet.rank <= 26 { "" } else { " " };
        let parts: Vec<String> = self.letters.iter().map(|&l| self.alphabet.format_letter(l)).collect();
        write!(f, "{}", parts.join(sep))
    }
}

impl Serialize for ReducedWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// Words are serialized as strings; the alphabet comes from the enclosing
/// document, so deserialization goes through [`WordText`] instead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct WordText(pub String);

impl WordText {
    pub fn parse(&self, alphabet: Alphabet) -> Result<ReducedWord> {
        ReducedWord::parse(&self.0, alphabet)
    }
}

impl From<&ReducedWord> for WordText {
    fn from(w: &ReducedWord) -> Self {
        WordText(w.to_string())
    }
}

impl<'de> Deserialize<'de> for ReducedWord {
    fn deserialize<D: Deserializer<'de>>(_d: D) -> std::result::Result<Self, D::Error> {
        Err(serde::de::Error::custom("ReducedWord needs an alphabet; deserialize WordText instead"))
    }
}

/// Parses a comma-separated word list.
pub fn parse_word_list(text: &str, alphabet: Alphabet) -> Result<Vec<ReducedWord>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| ReducedWord::parse(s, alphabet))
        .collect()
}

/// All reduced words of length at most `max_len`, shortest first.
pub fn reduced_words_up_to(alphabet: Alphabet, max_len: usize) -> Vec<ReducedWord> {
    let mut out = vec![ReducedWord::identity(alphabet)];
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for l in alphabet.letters() {
                if w.last() == Some(&-l) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out.extend(next.iter().map(|v| ReducedWord::from_reduced_unchecked(v.clone(), alphabet)));
        layer = next;
    }
    out
}

/// One representative per rotation/inversion class of nontrivial cyclically
/// reduced words of length at most `max_len`, ordered by length then slot order.
pub fn canonical_cyclic_words(alphabet: Alphabet, max_len: usize) -> Vec<ReducedWord> {
    let mut out: Vec<Vec<Letter>> = reduced_words_up_to(alphabet, max_len)
        .into_iter()
        .filter(|w| !w.is_empty() && w.is_cyclically_reduced())
        .filter(|w| w.cyclic_canonical() == w.letters)
        .map(|w| w.letters)
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| cmp_words(a, b)));
    out.into_iter().map(|v| ReducedWord::from_reduced_unchecked(v, alphabet)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(2).unwrap()
    }

    fn w(s: &str) -> ReducedWord {
        ReducedWord::parse(s, ab()).unwrap()
    }

    #[test]
    fn reduce_examples() {
        assert!(w("a A").is_empty());
        assert_eq!(w("a b B a").to_string(), "aa");
        assert_eq!(w("a b A B").to_string(), "abAB");
        assert_eq!(w("1").len(), 0);
    }

    #[test]
    fn reduce_rejects_out_of_range() {
        assert!(ReducedWord::reduce(&[1, 3], ab()).is_err());
        assert!(ReducedWord::parse("c", ab()).is_err());
        assert!(ReducedWord::parse("a?", ab()).is_err());
        assert!(Alphabet::new(0).is_err());
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (core, conj) = w("B a b").cyclic_reduce();
        assert_eq!(core.to_string(), "a");
        assert_eq!(conj.to_string(), "B");
        let (core, conj) = w("a b").cyclic_reduce();
        assert_eq!((core.to_string(), conj.to_string()), ("ab".into(), "".into()));
        let (core, conj) = w("").cyclic_reduce();
        assert!(core.is_empty() && conj.is_empty());
    }

    #[test]
    fn length_examples() {
        assert_eq!(w("a b A").len(), 3);
        assert_eq!(w("").len(), 0);
        let c = 2 * w("a b A").len().max(w("b").len());
        assert_eq!(c, 6);
    }

    #[test]
    fn large_rank_tokens() {
        let big = Alphabet::new(30).unwrap();
        let x = ReducedWord::parse("x27 X3 x3 a", big).unwrap();
        assert_eq!(x.letters(), &[27, 1]);
        assert_eq!(x.to_string(), "x27 x1");
        assert_eq!(ReducedWord::parse(&x.to_string(), big).unwrap(), x);
    }

    #[test]
    fn canonical_cyclic_counts() {
        // classes of cyclically reduced words of length 1 and 2 in F(a,b):
        // {a}, {b}, {aa}, {bb}, {ab}, {aB}
        let ws = canonical_cyclic_words(ab(), 2);
        assert_eq!(ws.len(), 6);
        assert!(ws.iter().all(|w| w.is_cyclically_reduced()));
    }
}
