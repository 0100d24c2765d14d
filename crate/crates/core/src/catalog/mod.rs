//! Membership predicates for the concrete finitary languages, the
//! substitution `h(a) = L₃·a`, and a CYK recognizer for the grammar of `L₃`.

mod grammar;

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::automata::{machines, PushdownAutomaton};
use crate::eraser::{backspace2, decode_erasers_ab, in_t, indexed_eraser, EraserAlphabet, EvalResult, ALPHA, BETA, ERASER};
use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

pub use grammar::{CnfGrammar, GSymbol, Grammar};

type Decide = Arc<dyn Fn(&Word) -> bool + Send + Sync>;

/// A named language given by a total membership test on words over its
/// alphabet.
#[derive(Clone)]
pub struct LanguagePredicate {
    name: String,
    alphabet: Alphabet,
    description: String,
    decide: Decide,
}

impl fmt::Debug for LanguagePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LanguagePredicate")
            .field("name", &self.name)
            .field("alphabet", &self.alphabet.symbols())
            .finish()
    }
}

impl LanguagePredicate {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        description: impl Into<String>,
        decide: impl Fn(&Word) -> bool + Send + Sync + 'static,
    ) -> Self {
        LanguagePredicate { name: name.into(), alphabet, description: description.into(), decide: Arc::new(decide) }
    }

    /// Wraps a machine; a word counts as a member only when an accepting run
    /// is found within the default bounds.
    pub fn from_machine(name: impl Into<String>, m: PushdownAutomaton) -> Self {
        let alphabet = m.input().clone();
        let description = format!("words accepted by a {}-state pushdown automaton", m.states().len());
        LanguagePredicate::new(name, alphabet, description, move |w| m.accepts(w).is_ok_and(|v| v.is_accepted()))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    /// Words over another alphabet are recoded by symbol name; a word that
    /// uses a foreign symbol is not a member.
    pub fn decide(&self, w: &Word) -> bool {
        if w.alphabet() == &self.alphabet {
            (self.decide)(w)
        } else {
            w.recode(&self.alphabet).is_ok_and(|w| (self.decide)(&w))
        }
    }

    pub fn decide_text(&self, text: &str) -> Result<bool> {
        Ok(self.decide(&self.alphabet.parse_word(text)?))
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn described(mut self, description: impl Into<String>) -> Self {
        self.description = description.into();
        self
    }
}

fn binary() -> Alphabet {
    Alphabet::digits(2)
}

fn is(w: &Word, i: usize, symbol: &str) -> bool {
    w.symbol_at(i) == symbol
}

pub fn lang_p1() -> LanguagePredicate {
    LanguagePredicate::new("p1", binary(), "{0}", |w| w.len() == 1 && is(w, 0, "0"))
}

pub fn lang_p2() -> LanguagePredicate {
    LanguagePredicate::new("p2", binary(), "0*1", |w| {
        let n = w.len();
        n >= 1 && is(w, n - 1, "1") && (0..n - 1).all(|i| is(w, i, "0"))
    })
}

pub fn lang_s1() -> LanguagePredicate {
    LanguagePredicate::new("s1", binary(), "words starting with 0 or with 10^k1", |w| {
        !w.is_empty() && (is(w, 0, "0") || (1..w.len()).any(|i| is(w, i, "1")))
    })
}

pub fn lang_clopen_a() -> LanguagePredicate {
    LanguagePredicate::new("clopenA", binary(), "words starting with 0 or with 11", |w| {
        !w.is_empty() && (is(w, 0, "0") || (w.len() >= 2 && is(w, 1, "1")))
    })
}

/// `L₃` over `base ∪ {↢}`: every prefix has at least as many base letters
/// as erasers, with equality for the whole word.
pub fn lang_l3(base: &Alphabet) -> Result<LanguagePredicate> {
    let alphabet = EraserAlphabet::single(base, ERASER)?;
    let full = alphabet.full().clone();
    Ok(LanguagePredicate::new("l3", full, "self-erasing words (Dyck, base letters open, ↢ closes)", move |w| {
        let mut height = 0usize;
        for &l in w.letters() {
            if alphabet.is_eraser(l) {
                match height.checked_sub(1) {
                    Some(h) => height = h,
                    None => return false,
                }
            } else {
                height += 1;
            }
        }
        height == 0
    }))
}

/// CYK recognizer for `L₃` built from its grammar, over `base ∪ {↢}`.
pub fn l3_cyk(base: &Alphabet) -> Result<LanguagePredicate> {
    let full = EraserAlphabet::single(base, ERASER)?.full().clone();
    let cnf = Grammar::l3(&full, ERASER)?.to_cnf();
    Ok(LanguagePredicate::new("l3cyk", full, "CYK over S → aS↢S | a↢S | λ", move |w| cnf.accepts_word(w)))
}

/// CYK membership in `L₃`; the base alphabet is every symbol of `w`'s
/// alphabet other than `↢`.
pub fn l3_cyk_member(w: &Word) -> Result<bool> {
    let cnf = Grammar::l3(w.alphabet(), ERASER)?.to_cnf();
    Ok(cnf.accepts_word(w))
}

fn ternary() -> Alphabet {
    Alphabet::digits(3)
}

fn e_member(w: &Word) -> bool {
    let n = w.len();
    if n == 1 && is(w, 0, "0") {
        return true;
    }
    if n == 0 || !in_t(w) {
        return false;
    }
    let ones = w.symbols().filter(|&s| s == "1").count();
    let twos = w.symbols().filter(|&s| s == "2").count();
    ones == twos
        && backspace2(&w.prefix(n - 1)).is_ok_and(|b| !b.is_empty() && b.symbol_at(0) == "1")
}

pub fn lang_e() -> LanguagePredicate {
    LanguagePredicate::new("e", ternary(), "0, or nonempty T-words with n₂ = n₁ whose body back-spaces to 1…", e_member)
}

/// Decomposition found for a member of `S₂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct S2Witness {
    /// The `E`-blocks, left to right.
    pub e_blocks: Vec<Range<usize>>,
    /// Positions of the `1`s closing the `c_j 1` segments; empty when the
    /// whole word is in `E`.
    pub terminators: Vec<usize>,
}

/// `star[i][j]`: `w[i..j] ∈ E*`; `next[i][j]` the end of a first `E`-block.
struct StarTable {
    star: Vec<Vec<bool>>,
    next: Vec<Vec<usize>>,
}

impl StarTable {
    fn new(w: &Word) -> Self {
        let n = w.len();
        let mut e = vec![vec![false; n + 1]; n + 1];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate().skip(i + 1) {
                *cell = e_member(&w.slice(i, j));
            }
        }
        let mut star = vec![vec![false; n + 1]; n + 1];
        let mut next = vec![vec![0; n + 1]; n + 1];
        for j in 0..=n {
            star[j][j] = true;
            for i in (0..j).rev() {
                if let Some(m) = (i + 1..=j).find(|&m| e[i][m] && star[m][j]) {
                    star[i][j] = true;
                    next[i][j] = m;
                }
            }
        }
        StarTable { star, next }
    }

    fn blocks(&self, mut i: usize, j: usize, out: &mut Vec<Range<usize>>) {
        while i < j {
            let m = self.next[i][j];
            out.push(i..m);
            i = m;
        }
    }
}

/// A decomposition witnessing `w ∈ S₂`, if any.
pub fn s2_witness(w: &Word) -> Option<S2Witness> {
    let w = w.recode(&ternary()).ok()?;
    if e_member(&w) {
        return Some(S2Witness { e_blocks: std::iter::once(0..w.len()).collect(), terminators: vec![] });
    }
    let n = w.len();
    // The only split with k = 0 and c₀ = λ is the word "1" itself.
    if n == 1 && is(&w, 0, "1") {
        return None;
    }
    let table = StarTable::new(&w);
    // prev[j]: start of the last `c 1` segment in a split of w[..j].
    let mut prev: Vec<Option<usize>> = vec![None; n + 1];
    for j in 1..=n {
        if is(&w, j - 1, "1") {
            prev[j] = (0..j).find(|&i| (i == 0 || prev[i].is_some()) && table.star[i][j - 1]);
        }
    }
    prev[n]?;
    let mut ends = vec![n];
    let mut j = n;
    while let Some(i) = prev[j].filter(|&i| i > 0) {
        ends.push(i);
        j = i;
    }
    let mut witness = S2Witness { e_blocks: vec![], terminators: vec![] };
    let mut start = 0;
    for &end in ends.iter().rev() {
        table.blocks(start, end - 1, &mut witness.e_blocks);
        witness.terminators.push(end - 1);
        start = end;
    }
    Some(witness)
}

pub fn lang_s2() -> LanguagePredicate {
    LanguagePredicate::new("s2", ternary(), "E ∪ {c₀1…c_k1 : c_j ∈ E*, c₀ ≠ λ when k = 0}", |w| {
        s2_witness(w).is_some()
    })
}

fn d_member(w: &Word) -> bool {
    let ds: Vec<usize> = (0..w.len()).filter(|&i| is(w, i, "d")).collect();
    let [p] = ds[..] else { return false };
    let v = w.len() - p - 1;
    v == 2 * p || v == 2 * p + 1
}

pub fn lang_d() -> LanguagePredicate {
    LanguagePredicate::new("d", machines::d_alphabet(), "u d v with |v| ∈ {2|u|, 2|u|+1}", d_member)
}

pub fn lang_gw() -> LanguagePredicate {
    LanguagePredicate::new("gw", machines::d_alphabet(), "g(0*1) with g(a) = a·D", |w| {
        let n = w.len();
        // zeros[i]: w[..i] splits into 0·D blocks; the word must end with a 1·D block.
        let mut zeros = vec![false; n + 1];
        zeros[0] = true;
        for j in 1..=n {
            zeros[j] = (0..j).any(|i| zeros[i] && is(w, i, "0") && d_member(&w.slice(i + 1, j)));
        }
        (0..n).any(|i| zeros[i] && is(w, i, "1") && d_member(&w.slice(i + 1, n)))
    })
}

/// `h(L)` for `h(a) = L₃·a` with the fresh letter `eraser`: the partial
/// evaluation is defined, the last letter survives it, and the value is in `L`.
pub fn substitute_h(l: &LanguagePredicate, eraser: &str) -> Result<LanguagePredicate> {
    let alphabet = EraserAlphabet::single(l.alphabet(), eraser)?;
    let full = alphabet.full().clone();
    let inner = l.clone();
    let name = format!("h({})", l.name());
    let description = format!("blocks (L₃·a)* with {eraser} erasing, mapped into {}", l.name());
    Ok(LanguagePredicate::new(name, full, description, move |w| {
        let Ok(EvalResult::Defined(value)) = alphabet.eval_approx(w) else { return false };
        if !w.is_empty() {
            let survivors = alphabet.surviving_positions(w).expect("defined above");
            if survivors.last() != Some(&(w.len() - 1)) {
                return false;
            }
        }
        inner.decide(&value)
    }))
}

/// `P₁ = {0}`, `P₂ = 0*1`, and `Pₙ = h_{↢₁}(h_{↢₂}(… h_{↢ₙ₋₂}(P₂)))`.
pub fn lang_pn(n: usize) -> Result<LanguagePredicate> {
    let l = match n {
        0 => return Err(Error::Precondition("n must be ≥ 1".into())),
        1 => lang_p1(),
        _ => {
            let mut l = lang_p2();
            for level in (1..=n - 2).rev() {
                l = substitute_h(&l, &indexed_eraser(level))?;
            }
            l
        }
    };
    Ok(l.renamed(format!("pn:{n}"))
        .described("P₁ = {0}, P₂ = 0*1, P_(k+1) = h(P_k) with a fresh eraser"))
}

fn coded_alphabet() -> Alphabet {
    Alphabet::new(["0", "1", ALPHA, BETA]).unwrap()
}

fn script_l_member(w: &Word) -> bool {
    match decode_erasers_ab(w) {
        Ok(d) => d.alphabet.t_k_member(&d.word, d.max_index).unwrap_or(false),
        Err(_) => false,
    }
}

pub fn lang_script_l() -> LanguagePredicate {
    LanguagePredicate::new("scriptL", coded_alphabet(), "codings α βʲ α of words in T_k", script_l_member)
}

/// `h(P₂)` for `h(a) = 𝓛·a` over `{0, 1, α, β}`.
pub fn lang_hp2_inf_rank() -> LanguagePredicate {
    LanguagePredicate::new("hp2", coded_alphabet(), "blocks 𝓛·0 … 𝓛·0 𝓛·1", |w| {
        let n = w.len();
        let mut zeros = vec![false; n + 1];
        zeros[0] = true;
        for j in 0..n {
            let closes = (0..=j).any(|i| zeros[i] && script_l_member(&w.slice(i, j)));
            if !closes {
                continue;
            }
            if is(w, j, "0") {
                zeros[j + 1] = true;
            } else if is(w, j, "1") && j + 1 == n {
                return true;
            }
        }
        false
    })
}

/// Registry names; `pn:<k>`, `l3:<letters>`, `l3cyk[:<letters>]` and
/// `automaton:<machine>` are parameterized.
pub const NAMES: &[&str] = &["p1", "p2", "pn:<k>", "s1", "s2", "e", "l3", "d", "gw", "clopenA", "scriptL", "hp2"];

/// The fixed languages of the registry, with `pn:3` standing for the family.
pub fn registry() -> Vec<LanguagePredicate> {
    vec![
        lang_p1(),
        lang_p2(),
        lang_pn(3).expect("n ≥ 1"),
        lang_s1(),
        lang_s2(),
        lang_e(),
        lang_l3(&Alphabet::from_chars("ab").unwrap()).expect("fresh eraser"),
        lang_d(),
        lang_gw(),
        lang_clopen_a(),
        lang_script_l(),
        lang_hp2_inf_rank(),
    ]
}

fn l3_base(spec: Option<&str>, name: &str) -> Result<Alphabet> {
    match spec {
        None => Ok(Alphabet::from_chars("ab").unwrap()),
        Some(chars) if !chars.is_empty() => Alphabet::from_chars(chars),
        Some(_) => Err(Error::UnknownLanguage(name.to_string())),
    }
}

/// Looks a language up by registry name.
pub fn by_name(name: &str) -> Result<LanguagePredicate> {
    let unknown = || Error::UnknownLanguage(name.to_string());
    let (head, arg) = match name.split_once(':') {
        Some((h, a)) => (h, Some(a)),
        None => (name, None),
    };
    match (head, arg) {
        ("pn", Some(k)) => lang_pn(k.parse().map_err(|_| unknown())?),
        ("l3", _) => Ok(lang_l3(&l3_base(arg, name)?)?.renamed(name)),
        ("l3cyk", _) => Ok(l3_cyk(&l3_base(arg, name)?)?.renamed(name)),
        ("automaton", Some(m)) => Ok(LanguagePredicate::from_machine(name, machines::by_name(m)?)),
        (_, Some(_)) => Err(unknown()),
        _ => {
            let found = registry().into_iter().find(|l| l.name() == name || l.name().eq_ignore_ascii_case(name));
            found.filter(|l| l.name() != "pn:3").ok_or_else(unknown)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate_words;

    fn check(l: &LanguagePredicate, cases: &[(&str, bool)]) {
        for &(w, expected) in cases {
            assert_eq!(l.decide_text(w).unwrap(), expected, "{} on {w}", l.name());
        }
    }

    #[test]
    fn simple_languages() {
        check(&lang_p1(), &[("0", true), ("@", false), ("00", false)]);
        check(&lang_p2(), &[("1", true), ("0001", true), ("010", false)]);
        check(&lang_s1(), &[("0", true), ("101", true), ("1", false), ("11", true), ("100", false)]);
        check(&lang_clopen_a(), &[("01", true), ("11", true), ("10", false), ("1", false)]);
        check(&lang_d(), &[("d", true), ("1d11", true), ("1d110", true), ("dd", false), ("1d1", false)]);
    }

    #[test]
    fn l3_examples() {
        let l = lang_l3(&Alphabet::from_chars("ab").unwrap()).unwrap();
        check(&l, &[("@", true), ("ab↢↢", true), ("↢a", false), ("a↢↢", false)]);
        let a = Alphabet::from_chars("a").unwrap();
        let w = |s: &str| EraserAlphabet::single(&a, ERASER).unwrap().full().parse_word(s).unwrap();
        assert!(l3_cyk_member(&w("a↢")).unwrap());
        assert!(l3_cyk_member(&w("@")).unwrap());
        assert!(!l3_cyk_member(&w("a↢↢")).unwrap());
    }

    #[test]
    fn e_and_s2_examples() {
        check(&lang_e(), &[("0", true), ("12", true), ("2", false), ("1", false), ("1122", true)]);
        check(&lang_s2(), &[("01", true), ("0", true), ("@", false), ("1", false), ("11", true), ("0121", true)]);
    }

    #[test]
    fn s2_witness_blocks_are_e_words() {
        let w = ternary().parse_word("0121201").unwrap();
        let witness = s2_witness(&w).unwrap();
        for block in &witness.e_blocks {
            assert!(e_member(&w.slice(block.start, block.end)));
        }
        assert_eq!(witness.terminators.last(), Some(&(w.len() - 1)));
    }

    #[test]
    fn gw_examples() {
        check(&lang_gw(), &[("1d", true), ("0d01d", true), ("0d001d", false), ("0d00", false), ("01d001d", true)]);
    }

    #[test]
    fn substitution_examples() {
        let h = substitute_h(&lang_p2(), ERASER).unwrap();
        check(&h, &[("1", true), ("0↢1", true), ("0↢", false), ("↢1", false), ("00↢1", true), ("@", false)]);
    }

    #[test]
    fn pn_examples() {
        let p3 = lang_pn(3).unwrap();
        assert_eq!(p3.alphabet().symbols(), ["0", "1", "↢₁"]);
        check(&p3, &[("1", true), ("0↢₁1", true), ("↢₁", false)]);
        let p4 = lang_pn(4).unwrap();
        assert_eq!(p4.alphabet().symbols(), ["0", "1", "↢₂", "↢₁"]);
        check(&p4, &[("0.↢₂.1", true), ("0.↢₁.1", true), ("0.↢₂.↢₁.1", true), ("0.↢₁.↢₂.1", false)]);
        assert!(lang_pn(0).is_err());
    }

    #[test]
    fn pn3_without_erasers_is_p2() {
        let p2 = lang_p2();
        let p3 = lang_pn(3).unwrap();
        for w in enumerate_words(&Alphabet::digits(2), 8) {
            assert_eq!(p3.decide(&w), p2.decide(&w), "{w}");
        }
    }

    #[test]
    fn coded_languages() {
        check(&lang_script_l(), &[("@", true), ("0αβα", true), ("αβ0", false), ("αβα", false)]);
        check(&lang_hp2_inf_rank(), &[("1", true), ("0αβα1", true), ("αβα01", false), ("α1", false), ("01", true)]);
    }

    #[test]
    fn registry_names_resolve() {
        for l in registry() {
            if l.name() != "pn:3" {
                assert_eq!(by_name(l.name()).unwrap().name(), l.name());
            }
        }
        assert_eq!(by_name("pn:5").unwrap().alphabet().len(), 5);
        assert_eq!(by_name("l3:a").unwrap().alphabet().len(), 2);
        assert!(by_name("automaton:p2").unwrap().decide_text("01").unwrap());
        assert!(matches!(by_name("nosuch"), Err(Error::UnknownLanguage(_))));
    }
}
