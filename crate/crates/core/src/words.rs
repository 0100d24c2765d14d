//! Alphabets, finite words and ultimately periodic ω-words.
//!
//! Symbols are opaque names (`"0"`, `"↢₂"`, `"α"`) interned per alphabet;
//! a [`Letter`] is the index of a symbol in its alphabet, so alphabet order
//! doubles as enumeration order.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Textual form of the empty word.
pub const EMPTY_WORD: &str = "@";
/// Separator between symbols when some symbol name is longer than one character.
pub const SYMBOL_SEPARATOR: char = '.';

/// Index of a symbol within its [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(u16);

impl Letter {
    pub const fn new(index: u16) -> Self {
        Letter(index)
    }

    pub const fn index(self) -> usize {
        self.0 as usize
    }
}

/// ASCII spelling of a symbol name: `↢` becomes `~`, subscript digits become
/// digits, `α`/`β` become `al`/`be`.
pub fn ascii_name(symbol: &str) -> String {
    let mut out = String::with_capacity(symbol.len());
    for c in symbol.chars() {
        match c {
            '↢' => out.push('~'),
            'α' => out.push_str("al"),
            'β' => out.push_str("be"),
            '₀'..='₉' => out.push(char::from_digit(c as u32 - '₀' as u32, 10).unwrap()),
            _ => out.push(c),
        }
    }
    out
}

struct AlphabetInner {
    symbols: Vec<String>,
    lookup: HashMap<String, Letter>,
    // Longest accepted spelling, in chars, for greedy tokenizing.
    longest: usize,
}

/// A finite, nonempty, ordered set of distinct symbols.
#[derive(Clone)]
pub struct Alphabet(Arc<AlphabetInner>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(Error::EmptyAlphabet);
        }
        let mut lookup = HashMap::new();
        for (i, s) in symbols.iter().enumerate() {
            if s.is_empty() || s == EMPTY_WORD || s.contains(SYMBOL_SEPARATOR) || s.contains(':') {
                return Err(Error::WordSyntax {
                    text: s.clone(),
                    reason: "reserved or empty symbol name".into(),
                });
            }
            if lookup.insert(s.clone(), Letter(i as u16)).is_some() {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        // ASCII aliases never shadow a real symbol.
        for (i, s) in symbols.iter().enumerate() {
            lookup.entry(ascii_name(s)).or_insert(Letter(i as u16));
        }
        let longest = lookup.keys().map(|k| k.chars().count()).max().unwrap_or(1);
        Ok(Alphabet(Arc::new(AlphabetInner { symbols, lookup, longest })))
    }

    /// One symbol per character of `chars`.
    pub fn from_chars(chars: &str) -> Result<Self> {
        Self::new(chars.chars().map(String::from))
    }

    /// The digit alphabet `{0, 1, …, n−1}`.
    pub fn digits(n: usize) -> Self {
        Self::new((0..n).map(|i| i.to_string())).expect("n ≥ 1")
    }

    /// This alphabet followed by `extra` symbols.
    pub fn extend<I, S>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut symbols = self.0.symbols.clone();
        symbols.extend(extra.into_iter().map(Into::into));
        Self::new(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn symbols(&self) -> &[String] {
        &self.0.symbols
    }

    pub fn symbol(&self, letter: Letter) -> &str {
        &self.0.symbols[letter.index()]
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.len()).map(|i| Letter(i as u16))
    }

    /// Looks up a symbol by name or by its ASCII alias.
    pub fn letter(&self, name: &str) -> Result<Letter> {
        self.0
            .lookup
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.0.lookup.contains_key(name)
    }

    fn needs_separator(&self, ascii: bool) -> bool {
        self.0.symbols.iter().any(|s| {
            let n = if ascii { ascii_name(s) } else { s.clone() };
            n.chars().count() != 1
        })
    }

    pub fn render(&self, letters: &[Letter], ascii: bool) -> String {
        if letters.is_empty() {
            return EMPTY_WORD.to_string();
        }
        let names = letters.iter().map(|&l| {
            let s = self.symbol(l);
            if ascii {
                ascii_name(s)
            } else {
                s.to_string()
            }
        });
        if self.needs_separator(ascii) {
            names.collect::<Vec<_>>().join(".")
        } else {
            names.collect()
        }
    }

    /// Parses the textual word syntax: `@` is the empty word, symbols are
    /// separated by `.` or, without dots, tokenized greedily by longest name.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == EMPTY_WORD {
            return Ok(Word::empty(self));
        }
        let syntax = |reason: String| Error::WordSyntax { text: text.to_string(), reason };
        let mut letters = Vec::new();
        if text.contains(SYMBOL_SEPARATOR) {
            for part in text.split(SYMBOL_SEPARATOR) {
                letters.push(self.letter(part).map_err(|_| syntax(format!("unknown symbol `{part}`")))?);
            }
        } else {
            let chars: Vec<char> = text.chars().collect();
            let mut i = 0;
            'outer: while i < chars.len() {
                for len in (1..=self.0.longest.min(chars.len() - i)).rev() {
                    let candidate: String = chars[i..i + len].iter().collect();
                    if let Some(&l) = self.0.lookup.get(&candidate) {
                        letters.push(l);
                        i += len;
                        continue 'outer;
                    }
                }
                return Err(syntax(format!("no symbol matches at character {i}")));
            }
        }
        Ok(Word { alphabet: self.clone(), letters })
    }

    /// Parses `u:v` into a lasso word.
    pub fn parse_lasso(&self, text: &str) -> Result<LassoWord> {
        let (u, v) = text.split_once(':').ok_or_else(|| Error::WordSyntax {
            text: text.to_string(),
            reason: "lasso syntax is `u:v`".into(),
        })?;
        LassoWord::new(self.parse_word(u)?, self.parse_word(v)?)
    }

    pub(crate) fn check_same(&self, other: &Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                expected: self.symbols().join(","),
                found: other.symbols().join(","),
            })
        }
    }
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.symbols == other.0.symbols
    }
}

impl Eq for Alphabet {}

impl Hash for Alphabet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.symbols.hash(state);
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.symbols.join(","))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.0.symbols.join(","))
    }
}

/// A finite word over an alphabet.
///
/// Ordering is length first, then lexicographic by alphabet order, the same
/// order [`enumerate_words`] produces.
#[derive(Clone)]
pub struct Word {
    alphabet: Alphabet,
    letters: Vec<Letter>,
}

impl Word {
    pub fn new(alphabet: &Alphabet, letters: Vec<Letter>) -> Result<Self> {
        if let Some(bad) = letters.iter().find(|l| l.index() >= alphabet.len()) {
            return Err(Error::UnknownSymbol(format!("#{}", bad.index())));
        }
        Ok(Word { alphabet: alphabet.clone(), letters })
    }

    pub(crate) fn from_letters_unchecked(alphabet: &Alphabet, letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|l| l.index() < alphabet.len()));
        Word { alphabet: alphabet.clone(), letters }
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Word { alphabet: alphabet.clone(), letters: Vec::new() }
    }

    pub fn from_symbols<S: AsRef<str>>(alphabet: &Alphabet, symbols: &[S]) -> Result<Self> {
        let letters = symbols
            .iter()
            .map(|s| alphabet.letter(s.as_ref()))
            .collect::<Result<_>>()?;
        Ok(Word { alphabet: alphabet.clone(), letters })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn symbol_at(&self, i: usize) -> &str {
        self.alphabet.symbol(self.letters[i])
    }

    pub fn symbols(&self) -> impl Iterator<Item = &str> + '_ {
        self.letters.iter().map(|&l| self.alphabet.symbol(l))
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        self.alphabet.check_same(&other.alphabet)?;
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Ok(Word { alphabet: self.alphabet.clone(), letters })
    }

    /// The prefix `w|n` (the whole word when `n ≥ |w|`).
    pub fn prefix(&self, n: usize) -> Word {
        Word {
            alphabet: self.alphabet.clone(),
            letters: self.letters[..n.min(self.len())].to_vec(),
        }
    }

    pub fn slice(&self, start: usize, end: usize) -> Word {
        Word { alphabet: self.alphabet.clone(), letters: self.letters[start..end].to_vec() }
    }

    /// The prefix relation `self ⊆ other`.
    pub fn is_prefix_of(&self, other: &Word) -> bool {
        self.alphabet == other.alphabet && other.letters.starts_with(&self.letters)
    }

    pub fn to_text(&self, ascii: bool) -> String {
        self.alphabet.render(&self.letters, ascii)
    }

    /// Re-expresses the word over `target`, matching symbols by name.
    pub fn recode(&self, target: &Alphabet) -> Result<Word> {
        let letters = self
            .symbols()
            .map(|s| target.letter(s))
            .collect::<Result<_>>()?;
        Ok(Word { alphabet: target.clone(), letters })
    }
}

impl PartialEq for Word {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && self.alphabet == other.alphabet
    }
}

impl Eq for Word {}

impl Hash for Word {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.letters.hash(state);
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self.to_text(false))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

/// The ultimately periodic ω-word `prefix · period^ω`.
///
/// No canonical form is imposed; use [`LassoWord::equivalent`] to compare
/// denotations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LassoWord {
    prefix: Word,
    period: Word,
}

impl LassoWord {
    pub fn new(prefix: Word, period: Word) -> Result<Self> {
        prefix.alphabet.check_same(&period.alphabet)?;
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(LassoWord { prefix, period })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.prefix.alphabet
    }

    pub fn prefix(&self) -> &Word {
        &self.prefix
    }

    pub fn period(&self) -> &Word {
        &self.period
    }

    /// Letter at position `i` of the unrolled ω-word.
    pub fn letter_at(&self, i: usize) -> Letter {
        let u = self.prefix.len();
        if i < u {
            self.prefix.letters[i]
        } else {
            self.period.letters[(i - u) % self.period.len()]
        }
    }

    /// The first `n` letters of `u·v^ω`.
    pub fn take(&self, n: usize) -> Word {
        let letters = (0..n).map(|i| self.letter_at(i)).collect();
        Word { alphabet: self.alphabet().clone(), letters }
    }

    /// Whether both lassos denote the same ω-word.
    pub fn equivalent(&self, other: &LassoWord) -> Result<bool> {
        self.alphabet().check_same(other.alphabet())?;
        let horizon = self.prefix.len()
            + other.prefix.len()
            + 2 * lcm(self.period.len(), other.period.len());
        Ok((0..horizon).all(|i| self.letter_at(i) == other.letter_at(i)))
    }

    pub fn to_text(&self, ascii: bool) -> String {
        format!("{}:{}", self.prefix.to_text(ascii), self.period.to_text(ascii))
    }
}

impl fmt::Debug for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self.to_text(false))
    }
}

impl fmt::Display for LassoWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text(false))
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// All words of length at most `max_len`, by length then lexicographically.
pub fn enumerate_words(alphabet: &Alphabet, max_len: usize) -> WordIter {
    WordIter { alphabet: alphabet.clone(), max_len, current: Some(Vec::new()) }
}

/// Number of words [`enumerate_words`] yields.
pub fn word_count(alphabet_size: usize, max_len: usize) -> u128 {
    (0..=max_len as u32).map(|i| (alphabet_size as u128).pow(i)).sum()
}

pub struct WordIter {
    alphabet: Alphabet,
    max_len: usize,
    current: Option<Vec<Letter>>,
}

impl Iterator for WordIter {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.take()?;
        let out = Word { alphabet: self.alphabet.clone(), letters: cur.clone() };
        self.current = successor(cur, self.alphabet.len(), self.max_len);
        Some(out)
    }
}

fn successor(mut cur: Vec<Letter>, k: usize, max_len: usize) -> Option<Vec<Letter>> {
    for i in (0..cur.len()).rev() {
        if cur[i].index() + 1 < k {
            cur[i] = Letter(cur[i].0 + 1);
            return Some(cur);
        }
        cur[i] = Letter(0);
    }
    if cur.len() < max_len {
        cur.push(Letter(0));
        Some(cur)
    } else {
        None
    }
}

/// Calls `visit` on the letters of every word of length at most `max_len`
/// over an alphabet of `k` symbols, in enumeration order, reusing one buffer.
pub fn visit_words(k: usize, max_len: usize, mut visit: impl FnMut(&[Letter])) {
    let mut cur = Vec::with_capacity(max_len);
    loop {
        visit(&cur);
        match successor(cur, k, max_len) {
            Some(next) => cur = next,
            None => return,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bin() -> Alphabet {
        Alphabet::from_chars("01").unwrap()
    }

    #[test]
    fn concat_examples() {
        let a = bin();
        let w = |s| a.parse_word(s).unwrap();
        assert_eq!(w("@").concat(&w("01")).unwrap(), w("01"));
        assert_eq!(w("0").concat(&w("1")).unwrap(), w("01"));
        let e = Alphabet::new(["a", "b", "↢"]).unwrap();
        let ab = e.parse_word("ab").unwrap();
        assert_eq!(ab.concat(&e.parse_word("↢").unwrap()).unwrap().to_text(false), "ab↢");
    }

    #[test]
    fn concat_rejects_mixed_alphabets() {
        let x = bin().parse_word("0").unwrap();
        let y = Alphabet::from_chars("ab").unwrap().parse_word("a").unwrap();
        assert!(matches!(x.concat(&y), Err(Error::AlphabetMismatch { .. })));
    }

    #[test]
    fn lasso_prefix_examples() {
        let a = bin();
        assert_eq!(a.parse_lasso("1:0").unwrap().take(4).to_text(false), "1000");
        assert_eq!(a.parse_lasso("@:01").unwrap().take(5).to_text(false), "01010");
        let c = Alphabet::from_chars("abc").unwrap();
        assert_eq!(c.parse_lasso("ab:c").unwrap().take(2).to_text(false), "ab");
    }

    #[test]
    fn lasso_equivalence_examples() {
        let a = bin();
        let l = |s| a.parse_lasso(s).unwrap();
        assert!(l("@:0").equivalent(&l("@:00")).unwrap());
        assert!(!l("1:0").equivalent(&l("@:10")).unwrap());
        assert!(!l("0:01").equivalent(&l("@:01")).unwrap());
        assert!(l("0:10").equivalent(&l("@:01")).unwrap());
    }

    #[test]
    fn empty_period_rejected() {
        let a = bin();
        assert_eq!(a.parse_lasso("0:@").unwrap_err(), Error::EmptyPeriod);
    }

    #[test]
    fn enumeration_counts_and_order() {
        let words: Vec<_> = enumerate_words(&bin(), 1).map(|w| w.to_text(false)).collect();
        assert_eq!(words, ["@", "0", "1"]);
        assert_eq!(enumerate_words(&bin(), 2).count(), 7);
        let three = Alphabet::from_chars("012").unwrap();
        assert_eq!(enumerate_words(&three, 3).count(), 40);
        assert_eq!(word_count(3, 3), 40);
        let all: Vec<_> = enumerate_words(&three, 3).collect();
        assert!(all.windows(2).all(|p| p[0] < p[1]));
        let mut visited = 0;
        visit_words(3, 3, |_| visited += 1);
        assert_eq!(visited, 40);
    }

    #[test]
    fn multi_char_symbols_round_trip() {
        let a = Alphabet::new(["0", "1", "↢₂", "↢₁"]).unwrap();
        let w = a.parse_word("0↢₁1").unwrap();
        assert_eq!(w.len(), 3);
        assert_eq!(w.to_text(false), "0.↢₁.1");
        assert_eq!(w.to_text(true), "0.~1.1");
        assert_eq!(a.parse_word("0.~1.1").unwrap(), w);
        assert_eq!(a.parse_word(&w.to_text(false)).unwrap(), w);
    }

    #[test]
    fn duplicate_symbols_rejected() {
        assert_eq!(Alphabet::from_chars("00").unwrap_err(), Error::DuplicateSymbol("0".into()));
        assert_eq!(Alphabet::new(Vec::<String>::new()).unwrap_err(), Error::EmptyAlphabet);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn word(max: usize) -> impl Strategy<Value = Vec<u16>> {
            proptest::collection::vec(0u16..2, 0..=max)
        }

        fn mk(v: &[u16]) -> Word {
            Word::new(&bin(), v.iter().map(|&i| Letter::new(i)).collect()).unwrap()
        }

        proptest! {
            #[test]
            fn concat_associative(a in word(4), b in word(4), c in word(4)) {
                let (a, b, c) = (mk(&a), mk(&b), mk(&c));
                let e = Word::empty(&bin());
                prop_assert_eq!(a.concat(&b).unwrap().concat(&c).unwrap(), a.concat(&b.concat(&c).unwrap()).unwrap());
                prop_assert_eq!(e.concat(&a).unwrap(), a.clone());
                prop_assert_eq!(a.concat(&e).unwrap(), a);
            }

            #[test]
            fn take_is_monotone(u in word(3), v in proptest::collection::vec(0u16..2, 1..=3), m in 0usize..20, n in 0usize..20) {
                let x = LassoWord::new(mk(&u), mk(&v)).unwrap();
                let (m, n) = (m.min(n), m.max(n));
                prop_assert!(x.take(m).is_prefix_of(&x.take(n)));
            }

            #[test]
            fn equivalence_matches_long_prefix(u1 in word(3), v1 in proptest::collection::vec(0u16..2, 1..=3),
                                               u2 in word(3), v2 in proptest::collection::vec(0u16..2, 1..=3)) {
                let x = LassoWord::new(mk(&u1), mk(&v1)).unwrap();
                let y = LassoWord::new(mk(&u2), mk(&v2)).unwrap();
                prop_assert!(x.equivalent(&x).unwrap());
                prop_assert_eq!(x.equivalent(&y).unwrap(), y.equivalent(&x).unwrap());
                prop_assert_eq!(x.equivalent(&y).unwrap(), x.take(64) == y.take(64));
            }
        }
    }
}
