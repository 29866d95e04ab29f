//! Free-monoid combinatorics over a finite unary signature.
//!
//! A [`Word`] is a finite sequence of [`Symbol`]s read leftmost-outermost:
//! the word `f g` acts on an element `x` as `f(g(x))`. Symbols are indices
//! into a [`Signature`], whose names are kept sorted so that comparing
//! symbol indices is the same as comparing names lexicographically.

use std::fmt;

use crate::error::WordError;

/// An operation symbol, identified by its position in the owning
/// [`Signature`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(pub u16);

impl Symbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite, ordered set of named unary operation symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature {
    names: Vec<String>,
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl Signature {
    /// Builds a signature from symbol names. Names are sorted; duplicates
    /// and non-identifiers are rejected.
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: Vec<String> = names.into_iter().map(Into::into).collect();
        for name in &names {
            if !is_identifier(name) {
                return Err(WordError::InvalidName(name.clone()));
            }
        }
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(WordError::DuplicateSymbol(w[0].clone()));
        }
        if names.len() > u16::MAX as usize {
            return Err(WordError::TooManySymbols(names.len()));
        }
        Ok(Signature { names })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        (0..self.names.len()).map(|i| Symbol(i as u16))
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, sym: Symbol) -> &str {
        &self.names[sym.index()]
    }

    pub fn lookup(&self, name: &str) -> Option<Symbol> {
        self.names
            .binary_search_by(|n| n.as_str().cmp(name))
            .ok()
            .map(|i| Symbol(i as u16))
    }

    pub fn contains(&self, sym: Symbol) -> bool {
        sym.index() < self.names.len()
    }

    /// Checks that every letter of `w` belongs to this signature.
    pub fn check_word(&self, w: &Word) -> Result<(), WordError> {
        match w.letters().iter().find(|s| !self.contains(**s)) {
            Some(s) => Err(WordError::ForeignSymbol(s.0)),
            None => Ok(()),
        }
    }

    /// Parses whitespace-separated symbol names; `1` (or blank input)
    /// is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "1" {
            return Ok(Word::empty());
        }
        text.split_whitespace()
            .map(|tok| {
                self.lookup(tok)
                    .ok_or_else(|| WordError::UnknownSymbol(tok.to_string()))
            })
            .collect()
    }

    /// Renders a word as `f g f f`; the empty word renders as `1`.
    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let names: Vec<&str> = w.letters().iter().map(|s| self.name(*s)).collect();
        names.join(" ")
    }

    /// A `Display` adapter for a word over this signature.
    pub fn display<'a>(&'a self, w: &'a Word) -> DisplayWord<'a> {
        DisplayWord { sig: self, word: w }
    }
}

pub struct DisplayWord<'a> {
    sig: &'a Signature,
    word: &'a Word,
}

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.sig.format_word(self.word))
    }
}

/// An element of the free monoid over a signature. The empty word is the
/// identity `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Symbol>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_symbols(letters: Vec<Symbol>) -> Self {
        Word(letters)
    }

    pub fn letter(sym: Symbol) -> Self {
        Word(vec![sym])
    }

    pub fn letters(&self) -> &[Symbol] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Symbol> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn head(&self) -> Option<Symbol> {
        self.0.first().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// `sym · self`: applies one more operation on the outside.
    pub fn prepend(&self, sym: Symbol) -> Word {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(sym);
        letters.extend_from_slice(&self.0);
        Word(letters)
    }

    pub fn pow(&self, n: usize) -> Word {
        Word(self.0.repeat(n))
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    /// `self \ psi`: the unique word `r` with `self · r = psi`, if `self`
    /// is a prefix of `psi`.
    pub fn strip_prefix_of(&self, psi: &Word) -> Option<Word> {
        psi.0.strip_prefix(self.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    /// `self / psi`: the unique word `r` with `r · psi = self`, if `psi`
    /// is a suffix of `self`.
    pub fn strip_suffix(&self, psi: &Word) -> Option<Word> {
        self.0.strip_suffix(psi.0.as_slice()).map(|r| Word(r.to_vec()))
    }

    pub fn longest_common_prefix(&self, other: &Word) -> Word {
        let n = common_prefix_len(&self.0, &other.0);
        Word(self.0[..n].to_vec())
    }

    /// Left rotation by `k`: `w[k..] w[..k]`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    pub fn prefix(&self, n: usize) -> Word {
        Word(self.0[..n].to_vec())
    }

    pub fn suffix_from(&self, n: usize) -> Word {
        Word(self.0[n..].to_vec())
    }
}

impl FromIterator<Symbol> for Word {
    fn from_iter<T: IntoIterator<Item = Symbol>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl From<Vec<Symbol>> for Word {
    fn from(v: Vec<Symbol>) -> Self {
        Word(v)
    }
}

pub(crate) fn common_prefix_len<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

/// `phi \ psi` when `phi` is a prefix of `psi`.
pub fn strip_prefix(phi: &Word, psi: &Word) -> Option<Word> {
    phi.strip_prefix_of(psi)
}

/// `phi / psi` when `psi` is a suffix of `phi`.
pub fn strip_suffix(phi: &Word, psi: &Word) -> Option<Word> {
    phi.strip_suffix(psi)
}

/// A factorisation showing two words are conjugate:
/// `u = alpha · beta` and `v = beta · alpha`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyWitness {
    pub alpha: Word,
    pub beta: Word,
}

/// Returns a witness `(alpha, beta)` with `u = alpha beta`, `v = beta alpha`
/// when `u` and `v` are conjugate, i.e. `|u| = |v|` and `v` is a factor of
/// `u u`.
pub fn is_conjugate(u: &Word, v: &Word) -> Option<ConjugacyWitness> {
    if u.len() != v.len() {
        return None;
    }
    if u.is_empty() {
        return Some(ConjugacyWitness {
            alpha: Word::empty(),
            beta: Word::empty(),
        });
    }
    let doubled = u.concat(u);
    let k = find_factor(&doubled.0[..2 * u.len() - 1], &v.0)?;
    Some(ConjugacyWitness {
        alpha: u.prefix(k),
        beta: u.suffix_from(k),
    })
}

// Knuth-Morris-Pratt search for the first occurrence of `needle`.
fn find_factor(hay: &[Symbol], needle: &[Symbol]) -> Option<usize> {
    if needle.is_empty() {
        return Some(0);
    }
    let mut fail = vec![0usize; needle.len()];
    let mut k = 0;
    for i in 1..needle.len() {
        while k > 0 && needle[i] != needle[k] {
            k = fail[k - 1];
        }
        if needle[i] == needle[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let mut k = 0;
    for (i, c) in hay.iter().enumerate() {
        while k > 0 && *c != needle[k] {
            k = fail[k - 1];
        }
        if *c == needle[k] {
            k += 1;
        }
        if k == needle.len() {
            return Some(i + 1 - k);
        }
    }
    None
}

/// Start index of the lexicographically least rotation (Booth's algorithm).
/// Among equal least rotations the smallest index is returned.
pub fn least_rotation_index(w: &Word) -> usize {
    let s = w.letters();
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j % n];
        let mut i = fail[j - k - 1];
        while i != -1 && sj != s[(k + i as usize + 1) % n] {
            if sj < s[(k + i as usize + 1) % n] {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if i == -1 && sj != s[k % n] {
            if sj < s[k % n] {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

/// The lexicographically least rotation of `w`, the canonical
/// representative of its conjugacy class.
pub fn canonical_rotation(w: &Word) -> Word {
    w.rotate(least_rotation_index(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(["f", "g", "h"]).unwrap()
    }

    fn w(text: &str) -> Word {
        sig().parse_word(text).unwrap()
    }

    fn rotations(u: &Word) -> Vec<Word> {
        (0..u.len().max(1)).map(|k| u.rotate(k)).collect()
    }

    #[test]
    fn signature_sorts_and_rejects_duplicates() {
        let s = Signature::new(["g", "f"]).unwrap();
        assert_eq!(s.names(), ["f", "g"]);
        assert!(matches!(
            Signature::new(["f", "f"]),
            Err(WordError::DuplicateSymbol(_))
        ));
        assert!(matches!(
            Signature::new(["1"]),
            Err(WordError::InvalidName(_))
        ));
        assert!(matches!(Signature::new([""]), Err(WordError::InvalidName(_))));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(w("f g").concat(&w("h")), w("f g h"));
        assert_eq!(w("1").concat(&w("f g")), w("f g"));
        assert_eq!(w("f g").concat(&w("f g")), w("f g f g"));
    }

    #[test]
    fn strip_examples() {
        assert_eq!(strip_prefix(&w("f g"), &w("f g f g h")), Some(w("f g h")));
        assert_eq!(strip_prefix(&w("1"), &w("g h")), Some(w("g h")));
        assert_eq!(strip_prefix(&w("f"), &w("g f")), None);
        assert_eq!(strip_suffix(&w("f g f g"), &w("f g")), Some(w("f g")));
        assert_eq!(strip_suffix(&w("h g"), &w("1")), Some(w("h g")));
        assert_eq!(strip_suffix(&w("f g"), &w("g g")), None);
    }

    #[test]
    fn lcp_examples() {
        assert_eq!(w("f g f").longest_common_prefix(&w("f g g")), w("f g"));
        assert_eq!(w("f").longest_common_prefix(&w("g")), Word::empty());
        assert_eq!(w("f g").longest_common_prefix(&w("f g f g")), w("f g"));
    }

    #[test]
    fn conjugacy_examples() {
        let wit = is_conjugate(&w("f g"), &w("g f")).unwrap();
        assert_eq!(wit.alpha, w("f"));
        assert_eq!(wit.beta, w("g"));

        // Frozen against rotations(fggff), which contains fffgg at k = 3.
        assert!(rotations(&w("f g g f f")).contains(&w("f f f g g")));
        assert!(is_conjugate(&w("f g g f f"), &w("f f f g g")).is_some());

        assert!(!rotations(&w("f f g g")).contains(&w("f g f g")));
        assert!(is_conjugate(&w("f f g g"), &w("f g f g")).is_none());

        let wit = is_conjugate(&Word::empty(), &Word::empty()).unwrap();
        assert!(wit.alpha.is_empty() && wit.beta.is_empty());
    }

    #[test]
    fn canonical_rotation_examples() {
        let brute = |u: &Word| rotations(u).into_iter().min().unwrap();
        assert_eq!(brute(&w("f g g f f")), w("f f f g g"));
        assert_eq!(canonical_rotation(&w("f g g f f")), w("f f f g g"));
        assert_eq!(canonical_rotation(&w("g f")), w("f g"));
        assert_eq!(canonical_rotation(&Word::empty()), Word::empty());
    }

    #[test]
    fn format_and_parse() {
        let s = sig();
        assert_eq!(s.format_word(&w("f g f f")), "f g f f");
        assert_eq!(s.format_word(&Word::empty()), "1");
        assert!(matches!(
            s.parse_word("f q"),
            Err(WordError::UnknownSymbol(ref n)) if n == "q"
        ));
    }

    #[test]
    fn check_word_rejects_foreign_symbols() {
        let s = Signature::new(["f"]).unwrap();
        assert!(s.check_word(&Word::from_symbols(vec![Symbol(0)])).is_ok());
        assert!(s.check_word(&Word::from_symbols(vec![Symbol(1)])).is_err());
    }
}
