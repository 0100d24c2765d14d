//! Naive reference implementations and an exhaustive cross-checking harness.
//!
//! Nothing here reuses the decision procedures it is meant to check: the
//! oracles work on plain symbol strings and search every split.

use std::ops::Range;

use serde::Serialize;

use crate::catalog::LanguagePredicate;
use crate::error::{Error, Result};
use crate::mupi::{PiParse, TreePredicate, StatePair};
use crate::words::{enumerate_words, Alphabet, LassoWord, Word};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    pub word: String,
    pub left_verdict: bool,
    pub right_verdict: bool,
    /// Names of the two predicates.
    pub context: (String, String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrosscheckReport {
    pub left: String,
    pub right: String,
    pub max_len: usize,
    pub examined: usize,
    pub disagreements: Vec<Disagreement>,
}

impl CrosscheckReport {
    pub fn agrees(&self) -> bool {
        self.disagreements.is_empty()
    }
}

fn same_symbols(a: &Alphabet, b: &Alphabet) -> bool {
    let mut x = a.symbols().to_vec();
    let mut y = b.symbols().to_vec();
    x.sort();
    y.sort();
    x == y
}

/// Compares two predicates on every word of length at most `max_len`.
pub fn crosscheck(a: &LanguagePredicate, b: &LanguagePredicate, max_len: usize) -> Result<CrosscheckReport> {
    if !same_symbols(a.alphabet(), b.alphabet()) {
        return Err(Error::AlphabetMismatch {
            expected: a.alphabet().symbols().join(","),
            found: b.alphabet().symbols().join(","),
        });
    }
    let mut report = CrosscheckReport {
        left: a.name().to_string(),
        right: b.name().to_string(),
        max_len,
        examined: 0,
        disagreements: Vec::new(),
    };
    for w in enumerate_words(a.alphabet(), max_len) {
        report.examined += 1;
        let (x, y) = (a.decide(&w), b.decide(&w));
        if x != y {
            report.disagreements.push(Disagreement {
                word: w.to_text(false),
                left_verdict: x,
                right_verdict: y,
                context: (report.left.clone(), report.right.clone()),
            });
        }
    }
    Ok(report)
}

/// A split `w = c₁a₁…cₙaₙ`: the block ranges and terminator positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub blocks: Vec<Range<usize>>,
    pub terminators: Vec<usize>,
}

/// Every split of `w` into `blocks`-words each followed by one letter from
/// `terminators`.
pub fn brute_decompose(w: &Word, blocks: &dyn Fn(&Word) -> bool, terminators: &[&str]) -> Vec<Decomposition> {
    fn go(
        w: &Word,
        start: usize,
        blocks: &dyn Fn(&Word) -> bool,
        terminators: &[&str],
        current: &mut Decomposition,
        out: &mut Vec<Decomposition>,
    ) {
        if start == w.len() {
            out.push(current.clone());
            return;
        }
        for t in start..w.len() {
            if terminators.contains(&w.symbol_at(t)) && blocks(&w.slice(start, t)) {
                current.blocks.push(start..t);
                current.terminators.push(t);
                go(w, t + 1, blocks, terminators, current, out);
                current.blocks.pop();
                current.terminators.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut current = Decomposition { blocks: vec![], terminators: vec![] };
    go(w, 0, blocks, terminators, &mut current, &mut out);
    out
}

/// `L₃` by exhaustive rewriting: repeatedly delete an adjacent
/// `base letter, eraser` pair; members rewrite to `λ`.
pub fn brute_l3(w: &Word, eraser: &str) -> bool {
    let mut symbols: Vec<&str> = w.symbols().collect();
    loop {
        let Some(i) = (1..symbols.len()).find(|&i| symbols[i] == eraser && symbols[i - 1] != eraser) else {
            return symbols.is_empty();
        };
        symbols.drain(i - 1..=i);
    }
}

/// `h(L)` for `h(a) = L₃·a`, through [`brute_decompose`].
pub fn brute_h_member(l: &LanguagePredicate, w: &Word, eraser: &str) -> bool {
    let base: Vec<&str> = l.alphabet().symbols().iter().map(String::as_str).collect();
    brute_decompose(w, &|c: &Word| brute_l3(c, eraser), &base).iter().any(|d| {
        let letters: Vec<&str> = d.terminators.iter().map(|&t| w.symbol_at(t)).collect();
        Word::from_symbols(l.alphabet(), &letters).is_ok_and(|image| l.decide(&image))
    })
}

fn brute_e(s: &str) -> bool {
    if s == "0" {
        return true;
    }
    if s.is_empty() {
        return false;
    }
    let mut balance = 0i32;
    for c in s.chars() {
        balance += match c {
            '1' => 1,
            '2' => -1,
            _ => 0,
        };
        if balance < 0 {
            return false;
        }
    }
    if balance != 0 {
        return false;
    }
    let mut value = String::new();
    for c in s[..s.len() - 1].chars() {
        if c == '2' {
            let k = value.rfind('1').expect("prefix condition holds");
            value.replace_range(k..k + 1, "0");
        } else {
            value.push(c);
        }
    }
    value.starts_with('1')
}

fn brute_e_star(s: &str) -> bool {
    s.is_empty() || (1..=s.len()).any(|i| brute_e(&s[..i]) && brute_e_star(&s[i..]))
}

/// `S₂` by trying every set of `1`s as segment ends.
pub fn brute_s2_member(w: &Word) -> bool {
    let s: String = w.symbols().collect();
    if brute_e(&s) {
        return true;
    }
    let ones: Vec<usize> = s.char_indices().filter(|&(_, c)| c == '1').map(|(i, _)| i).collect();
    if !s.ends_with('1') {
        return false;
    }
    // Choose which 1s (besides the last letter) close a segment.
    let inner = &ones[..ones.len() - 1];
    (0..1u64 << inner.len()).any(|mask| {
        let mut ends: Vec<usize> = (0..inner.len()).filter(|&b| mask >> b & 1 == 1).map(|b| inner[b]).collect();
        ends.push(s.len() - 1);
        let mut start = 0;
        let mut segments = Vec::new();
        for &e in &ends {
            segments.push(&s[start..e]);
            start = e + 1;
        }
        (segments.len() > 1 || !segments[0].is_empty()) && segments.iter().all(|c| brute_e_star(c))
    })
}

/// Pairs of binary words of length at most `max_len` in enumeration order,
/// listed by nested loops over the letter pairs (0,0) < (0,1) < (1,0) < (1,1).
fn pair_table(max_len: usize) -> Vec<(String, String)> {
    let mut table = vec![(String::new(), String::new())];
    let mut level = vec![(String::new(), String::new())];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (s, t) in &level {
            for (a, b) in [('0', '0'), ('0', '1'), ('1', '0'), ('1', '1')] {
                next.push((format!("{s}{a}"), format!("{t}{b}")));
            }
        }
        table.extend(next.iter().cloned());
        level = next;
    }
    table
}

fn m_sum(j: usize) -> usize {
    let mut total = 0;
    let mut power = 1;
    for _ in 0..j {
        power *= 4;
        total += power;
    }
    total
}

/// `π` by generating every parameter tuple compatible with the length of
/// `w` and comparing the resulting word; returns the first parse found.
pub fn brute_pi_parse(w: &Word, r: &TreePredicate) -> Option<PiParse> {
    let s: String = w.symbols().collect();
    let n = s.len();
    let table = pair_table(4);
    if n >= table.len() {
        return None;
    }
    let binary = Alphabet::digits(2);
    let pair = |k: usize| {
        let (a, b) = &table[k];
        StatePair { left: binary.parse_word(if a.is_empty() { "@" } else { a }).unwrap(), right: binary.parse_word(if b.is_empty() { "@" } else { b }).unwrap() }
    };
    let arrow = |from: usize, m: char, to: usize| {
        let (s0, t0) = &table[from];
        let (s1, t1) = &table[to];
        s1.starts_with(s0.as_str()) && *t1 == format!("{t0}{m}")
    };
    let finals = |k: usize| {
        let q = pair(k);
        let component = match r.convention() {
            crate::mupi::FinalConvention::Left => &table[k].0,
            crate::mupi::FinalConvention::Right => &table[k].1,
        };
        component.ends_with('1') && r.holds(&q)
    };
    #[allow(clippy::too_many_arguments)]
    fn blocks(
        s: &str,
        pos: usize,
        j: usize,
        i: usize,
        n_i: usize,
        acc: &mut PiParse,
        arrow: &dyn Fn(usize, char, usize) -> bool,
        finals: &dyn Fn(usize) -> bool,
    ) -> bool {
        let total = m_sum(j + i + 1);
        for m in ['0', '1'] {
            for p in 0..=total {
                let r = total - p;
                let block = format!("{}{m}{}3{}", "2".repeat(n_i), "2".repeat(p + r), "2".repeat(r));
                if !s[pos..].starts_with(&block) || !arrow(n_i, m, p) {
                    continue;
                }
                acc.m.push(if m == '0' { 0 } else { 1 });
                acc.n.push(n_i as u64);
                acc.p.push(p as u64);
                acc.r.push(r as u64);
                let end = pos + block.len();
                if (end == s.len() && finals(p)) || (end < s.len() && blocks(s, end, j, i + 1, p, acc, arrow, finals)) {
                    return true;
                }
                acc.m.pop();
                acc.n.pop();
                acc.p.pop();
                acc.r.pop();
            }
        }
        false
    }
    let mut j = 0;
    while m_sum(j + 1) <= n {
        for n0 in 0..=m_sum(j).min(n) {
            let mut acc = PiParse { j, m: vec![], n: vec![], p: vec![], r: vec![] };
            if blocks(&s, 0, j, 0, n0, &mut acc, &arrow, &finals) {
                return Some(acc);
            }
        }
        j += 1;
    }
    None
}

/// The first `π`-member in enumeration order among words of length at most
/// `max_len`.
pub fn brute_pi_witness(max_len: usize, r: &TreePredicate) -> Option<(Word, PiParse)> {
    enumerate_words(&Alphabet::digits(4), max_len).find_map(|w| brute_pi_parse(&w, r).map(|p| (w, p)))
}

/// Whether the first `horizon` letters of `x` can be cut into `L`-blocks of
/// length at most `max_block`, the last block possibly running past the
/// horizon. For a lasso with `|u| + |v| ≤ horizon / max_block` this is
/// exactly bounded ω-power membership.
pub fn brute_cut_sequence(l: &LanguagePredicate, x: &LassoWord, horizon: usize, max_block: usize) -> bool {
    let word = x.take(horizon + max_block);
    fn go(l: &LanguagePredicate, word: &Word, pos: usize, horizon: usize, max_block: usize) -> bool {
        pos >= horizon || (1..=max_block).any(|len| l.decide(&word.slice(pos, pos + len)) && go(l, word, pos + len, horizon, max_block))
    }
    go(l, &word, 0, horizon, max_block)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{lang_l3, lang_p1, lang_p2, lang_s2};
    use crate::eraser::ERASER;

    #[test]
    fn crosscheck_finds_differences() {
        let report = crosscheck(&lang_p1(), &lang_p2(), 2).unwrap();
        let words: Vec<&str> = report.disagreements.iter().map(|d| d.word.as_str()).collect();
        assert_eq!(words, ["0", "1", "01"]);
        assert_eq!(report.examined, 7);
        assert!(crosscheck(&lang_p2(), &lang_p2(), 4).unwrap().agrees());
    }

    #[test]
    fn decompositions() {
        let alphabet = Alphabet::new(["0", "1", "a", ERASER]).unwrap();
        let l3 = |w: &Word| brute_l3(w, ERASER);
        let w = |s: &str| alphabet.parse_word(s).unwrap();
        assert_eq!(brute_decompose(&w("a↢0"), &l3, &["0", "1"]).len(), 1);
        assert_eq!(brute_decompose(&w("@"), &l3, &["0", "1"]).len(), 1);
        assert!(brute_decompose(&w("↢"), &l3, &["0", "1"]).is_empty());
    }

    #[test]
    fn rewriting_l3_matches_dyck() {
        let l3 = lang_l3(&Alphabet::from_chars("ab").unwrap()).unwrap();
        for w in enumerate_words(l3.alphabet(), 6) {
            assert_eq!(brute_l3(&w, ERASER), l3.decide(&w), "{w}");
        }
    }

    #[test]
    fn s2_split_search() {
        let s2 = lang_s2();
        for w in enumerate_words(s2.alphabet(), 6) {
            assert_eq!(brute_s2_member(&w), s2.decide(&w), "{w}");
        }
    }

    #[test]
    fn pi_witness() {
        let full = TreePredicate::full();
        let (w, parse) = brute_pi_witness(8, &full).unwrap();
        assert_eq!(w.to_text(false), "122223");
        assert_eq!(parse.reassemble(), w);
        assert!(brute_pi_witness(2, &full).is_none());
        assert!(brute_pi_witness(0, &full).is_none());
    }

    #[test]
    fn cut_sequences() {
        let p2 = lang_p2();
        let x = p2.alphabet().parse_lasso("@:01").unwrap();
        assert!(brute_cut_sequence(&p2, &x, 24, 6));
        let x = p2.alphabet().parse_lasso("@:0").unwrap();
        assert!(!brute_cut_sequence(&p2, &x, 24, 6));
    }
}
