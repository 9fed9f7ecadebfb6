//! Finite words, ultimately periodic ω-words, and the two language carriers.
//!
//! An [`OmegaLanguage`] is a finite union of three kinds of pieces: finite
//! words, lassos `p·q^ω`, and cylinders `p·Σ^∞` (every finite or infinite word
//! extending `p`). The cylinder `ε·Σ^∞` is the whole of `Σ^∞`, the top element.
//! Values are kept canonical so that structural equality is set equality.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::AlgebraError;

/// Letters a program may weigh with. Always nonempty, distinct ASCII letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<char>);

impl Alphabet {
    pub fn new(letters: &str) -> Result<Self, AlgebraError> {
        let mut seen = Vec::new();
        for c in letters.chars() {
            if !c.is_ascii_alphabetic() {
                return Err(AlgebraError::BadAlphabet(letters.to_string()));
            }
            if seen.contains(&c) {
                return Err(AlgebraError::BadAlphabet(letters.to_string()));
            }
            seen.push(c);
        }
        if seen.is_empty() {
            return Err(AlgebraError::BadAlphabet(letters.to_string()));
        }
        Ok(Alphabet(seen))
    }

    pub fn letters(&self) -> &[char] {
        &self.0
    }

    pub fn contains(&self, c: char) -> bool {
        self.0.contains(&c)
    }

    /// Validates `text` as a word over this alphabet.
    pub fn word(&self, text: &str) -> Result<Word, AlgebraError> {
        match text.chars().find(|c| !self.contains(*c)) {
            Some(c) => Err(AlgebraError::ForeignLetter {
                letter: c,
                alphabet: self.to_string(),
            }),
            None => Ok(Word(text.to_string())),
        }
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.0 {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A finite word. Ordered shortlex: by length, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(String);

impl Word {
    pub fn empty() -> Self {
        Word(String::new())
    }

    /// No alphabet check; use [`Alphabet::word`] for untrusted input.
    pub fn from_letters(s: &str) -> Self {
        Word(s.to_string())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut s = String::with_capacity(self.len() + other.len());
        s.push_str(&self.0);
        s.push_str(&other.0);
        Word(s)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    fn push(&self, c: char) -> Word {
        let mut s = self.0.clone();
        s.push(c);
        Word(s)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            f.write_str("ε")
        } else {
            f.write_str(&self.0)
        }
    }
}

/// The ω-word `prefix · period^ω`, kept canonical: the period is primitive and
/// the prefix does not end in the period's last letter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    prefix: Word,
    period: Word,
}

impl Lasso {
    pub fn new(prefix: Word, period: Word) -> Result<Self, AlgebraError> {
        if period.is_empty() {
            return Err(AlgebraError::EmptyPeriod);
        }
        let mut period: Vec<char> = primitive_root(period.as_str()).chars().collect();
        let mut prefix: Vec<char> = prefix.as_str().chars().collect();
        while let (Some(&p), Some(&q)) = (prefix.last(), period.last()) {
            if p != q {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        Ok(Lasso {
            prefix: Word(prefix.into_iter().collect()),
            period: Word(period.into_iter().collect()),
        })
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    pub fn letter_at(&self, i: usize) -> char {
        let p = self.prefix.as_str().as_bytes();
        if i < p.len() {
            p[i] as char
        } else {
            let q = self.period.as_str().as_bytes();
            q[(i - p.len()) % q.len()] as char
        }
    }

    /// Whether `w` is a finite prefix of this ω-word.
    pub fn has_prefix(&self, w: &Word) -> bool {
        w.as_str()
            .chars()
            .enumerate()
            .all(|(i, c)| self.letter_at(i) == c)
    }

    pub fn prepend(&self, w: &Word) -> Lasso {
        Lasso::new(w.concat(&self.prefix), self.period.clone()).expect("period stays nonempty")
    }
}

impl fmt::Display for Lasso {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})^ω", self.prefix.as_str(), self.period.as_str())
    }
}

fn primitive_root(s: &str) -> &str {
    let n = s.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && s.as_bytes().chunks(d).all(|c| c == &s.as_bytes()[..d]) {
            return &s[..d];
        }
    }
    s
}

/// A finite set of finite words.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Language(BTreeSet<Word>);

impl Language {
    pub fn empty() -> Self {
        Language(BTreeSet::new())
    }

    pub fn from_words<I: IntoIterator<Item = Word>>(words: I) -> Self {
        Language(words.into_iter().collect())
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.0
    }

    pub fn union(&self, other: &Language) -> Language {
        Language(self.0.union(&other.0).cloned().collect())
    }

    pub fn left_concat(&self, w: &Word) -> Language {
        Language(self.0.iter().map(|u| w.concat(u)).collect())
    }

    pub fn is_subset(&self, other: &Language) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{w}")?;
        }
        f.write_str("}")
    }
}

/// A finitely represented subset of `Σ^∞ = Σ* ∪ Σ^ω`; see the module docs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct OmegaLanguage {
    words: BTreeSet<Word>,
    lassos: BTreeSet<Lasso>,
    cylinders: BTreeSet<Word>,
}

impl OmegaLanguage {
    pub fn empty() -> Self {
        Self::default()
    }

    /// `Σ^∞`, the cylinder over the empty word.
    pub fn full() -> Self {
        OmegaLanguage {
            cylinders: BTreeSet::from([Word::empty()]),
            ..Self::default()
        }
    }

    pub fn from_parts<W, L, C>(words: W, lassos: L, cylinders: C, alphabet: &Alphabet) -> Self
    where
        W: IntoIterator<Item = Word>,
        L: IntoIterator<Item = Lasso>,
        C: IntoIterator<Item = Word>,
    {
        let mut v = OmegaLanguage {
            words: words.into_iter().collect(),
            lassos: lassos.into_iter().collect(),
            cylinders: cylinders.into_iter().collect(),
        };
        v.canonicalize(alphabet);
        v
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn lassos(&self) -> &BTreeSet<Lasso> {
        &self.lassos
    }

    pub fn cylinders(&self) -> &BTreeSet<Word> {
        &self.cylinders
    }

    pub fn is_full(&self) -> bool {
        self.cylinders.contains(&Word::empty())
    }

    pub fn union(&self, other: &OmegaLanguage, alphabet: &Alphabet) -> OmegaLanguage {
        let mut v = OmegaLanguage {
            words: self.words.union(&other.words).cloned().collect(),
            lassos: self.lassos.union(&other.lassos).cloned().collect(),
            cylinders: self.cylinders.union(&other.cylinders).cloned().collect(),
        };
        v.canonicalize(alphabet);
        v
    }

    pub fn left_concat(&self, w: &Word, alphabet: &Alphabet) -> OmegaLanguage {
        let mut v = OmegaLanguage {
            words: self.words.iter().map(|u| w.concat(u)).collect(),
            lassos: self.lassos.iter().map(|l| l.prepend(w)).collect(),
            cylinders: self.cylinders.iter().map(|c| w.concat(c)).collect(),
        };
        v.canonicalize(alphabet);
        v
    }

    fn in_cylinder(&self, w: &Word) -> bool {
        self.cylinders.iter().any(|c| c.is_prefix_of(w))
    }

    pub fn contains_word(&self, w: &Word) -> bool {
        self.words.contains(w) || self.in_cylinder(w)
    }

    pub fn contains_lasso(&self, l: &Lasso) -> bool {
        self.lassos.contains(l) || self.cylinders.iter().any(|c| l.has_prefix(c))
    }

    /// Whether the whole cylinder `w·Σ^∞` lies inside this set. Only finite
    /// words and cylinders can cover it: its ω-part is uncountable (or, over a
    /// one-letter alphabet, comes with infinitely many finite words).
    pub fn covers_cylinder(&self, w: &Word, alphabet: &Alphabet) -> bool {
        let depth = self.cylinders.iter().map(Word::len).max();
        self.covers_rec(w, alphabet, depth)
    }

    fn covers_rec(&self, w: &Word, alphabet: &Alphabet, depth: Option<usize>) -> bool {
        if self.in_cylinder(w) {
            return true;
        }
        let Some(depth) = depth else { return false };
        if w.len() >= depth || !self.words.contains(w) {
            return false;
        }
        alphabet
            .letters()
            .iter()
            .all(|&c| self.covers_rec(&w.push(c), alphabet, Some(depth)))
    }

    /// Set inclusion.
    pub fn is_subset(&self, other: &OmegaLanguage, alphabet: &Alphabet) -> bool {
        self.words.iter().all(|w| other.contains_word(w))
            && self.lassos.iter().all(|l| other.contains_lasso(l))
            && self
                .cylinders
                .iter()
                .all(|c| other.covers_cylinder(c, alphabet))
    }

    fn canonicalize(&mut self, alphabet: &Alphabet) {
        loop {
            self.prune_cylinders();
            let merged: Vec<Word> = self
                .words
                .iter()
                .filter(|w| !self.in_cylinder(w) && self.covers_cylinder(w, alphabet))
                .cloned()
                .collect();
            if merged.is_empty() {
                break;
            }
            self.cylinders.extend(merged);
        }
        let cyl = self.cylinders.clone();
        self.words
            .retain(|w| !cyl.iter().any(|c| c.is_prefix_of(w)));
        self.lassos
            .retain(|l| !cyl.iter().any(|c| l.has_prefix(c)));
    }

    fn prune_cylinders(&mut self) {
        let all: Vec<Word> = self.cylinders.iter().cloned().collect();
        self.cylinders
            .retain(|c| !all.iter().any(|d| d != c && d.is_prefix_of(c)));
    }
}

impl fmt::Display for OmegaLanguage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items = self
            .words
            .iter()
            .map(|w| w.to_string())
            .chain(self.lassos.iter().map(|l| l.to_string()))
            .chain(self.cylinders.iter().map(|c| format!("{}Σ^∞", c.as_str())));
        f.write_str("{")?;
        for (i, s) in items.enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&s)?;
        }
        f.write_str("}")
    }
}
