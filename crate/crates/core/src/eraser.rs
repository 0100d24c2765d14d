//! Back-space evaluation of words containing eraser letters.
//!
//! Two single-eraser semantics are provided: the total one ([`EraserAlphabet::eval_tilde`],
//! an eraser on an empty buffer does nothing) and the partial one
//! ([`EraserAlphabet::eval_approx`], an eraser on an empty buffer is undefined).
//! Indexed erasers `↢₁ … ↢ₖ` are evaluated pass by pass, `↢₁` first, each pass
//! treating every other symbol (including the remaining erasers) as an
//! ordinary letter.

use crate::error::{Error, Result};
use crate::words::{Alphabet, LassoWord, Letter, Word};

pub const ERASER: &str = "↢";
pub const ALPHA: &str = "α";
pub const BETA: &str = "β";

/// Name of the indexed eraser `↢ⱼ`.
pub fn indexed_eraser(j: usize) -> String {
    let sub: String = j
        .to_string()
        .chars()
        .map(|c| char::from_u32('₀' as u32 + c.to_digit(10).unwrap()).unwrap())
        .collect();
    format!("{ERASER}{sub}")
}

/// A base alphabet extended with one or more eraser symbols.
///
/// `erasers` is kept in evaluation order (`↢₁` first). The full alphabet lists
/// the base symbols first, then the erasers from the highest index down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EraserAlphabet {
    base: Alphabet,
    full: Alphabet,
    erasers: Vec<Letter>,
    // Indexed by full-alphabet letter.
    to_base: Vec<Option<Letter>>,
}

/// Outcome of the partial evaluation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EvalResult {
    Defined(Word),
    /// Position of the first eraser that met an empty buffer.
    Undefined(usize),
}

impl EvalResult {
    pub fn defined(self) -> Option<Word> {
        match self {
            EvalResult::Defined(w) => Some(w),
            EvalResult::Undefined(_) => None,
        }
    }

    pub fn is_defined(&self) -> bool {
        matches!(self, EvalResult::Defined(_))
    }
}

/// Limit of the total evaluation along an ultimately periodic word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TildeLimit {
    Finite(Word),
    Infinite(LassoWord),
}

/// Left-to-right back-space run over `letters`; returns the surviving
/// positions, or the position of the first eraser that hit an empty buffer
/// when `partial` is set.
fn erase(letters: &[Letter], is_eraser: impl Fn(Letter) -> bool, partial: bool) -> Result<Vec<usize>, usize> {
    let mut buffer = Vec::with_capacity(letters.len());
    for (i, &l) in letters.iter().enumerate() {
        if is_eraser(l) {
            if buffer.pop().is_none() && partial {
                return Err(i);
            }
        } else {
            buffer.push(i);
        }
    }
    Ok(buffer)
}

impl EraserAlphabet {
    pub fn new<S: AsRef<str>>(base: &Alphabet, erasers_in_eval_order: &[S]) -> Result<Self> {
        if erasers_in_eval_order.is_empty() {
            return Err(Error::NotSingleEraser(0));
        }
        for e in erasers_in_eval_order {
            if base.symbols().iter().any(|s| s == e.as_ref()) {
                return Err(Error::EraserInBase(e.as_ref().to_string()));
            }
        }
        let full = base.extend(erasers_in_eval_order.iter().rev().map(|e| e.as_ref().to_string()))?;
        let erasers = erasers_in_eval_order
            .iter()
            .map(|e| full.letter(e.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        let to_base = full
            .letters()
            .map(|l| (l.index() < base.len()).then_some(l))
            .collect();
        Ok(EraserAlphabet { base: base.clone(), full, erasers, to_base })
    }

    pub fn single(base: &Alphabet, eraser: &str) -> Result<Self> {
        Self::new(base, &[eraser])
    }

    /// `base ∪ {↢ₖ, …, ↢₁}`.
    pub fn indexed(base: &Alphabet, k: usize) -> Result<Self> {
        let names: Vec<String> = (1..=k).map(indexed_eraser).collect();
        Self::new(base, &names)
    }

    pub fn base(&self) -> &Alphabet {
        &self.base
    }

    pub fn full(&self) -> &Alphabet {
        &self.full
    }

    /// Eraser letters of the full alphabet, in evaluation order.
    pub fn erasers(&self) -> &[Letter] {
        &self.erasers
    }

    pub fn is_eraser(&self, l: Letter) -> bool {
        self.to_base[l.index()].is_none()
    }

    /// Views a base word as a word over the full alphabet.
    pub fn embed(&self, w: &Word) -> Result<Word> {
        self.base.check_same(w.alphabet())?;
        Ok(Word::from_letters_unchecked(&self.full, w.letters().to_vec()))
    }

    fn single_eraser(&self, w: &Word) -> Result<()> {
        self.full.check_same(w.alphabet())?;
        if self.erasers.len() != 1 {
            return Err(Error::NotSingleEraser(self.erasers.len()));
        }
        Ok(())
    }

    fn project(&self, w: &Word, positions: &[usize]) -> Word {
        let letters = positions
            .iter()
            .map(|&i| self.to_base[w.letters()[i].index()].expect("survivors are base letters"))
            .collect();
        Word::from_letters_unchecked(&self.base, letters)
    }

    /// Total evaluation: an eraser on an empty buffer is a no-op.
    pub fn eval_tilde(&self, w: &Word) -> Result<Word> {
        self.single_eraser(w)?;
        let kept = erase(w.letters(), |l| self.is_eraser(l), false).expect("total");
        Ok(self.project(w, &kept))
    }

    /// Partial evaluation: undefined as soon as an eraser meets an empty buffer.
    pub fn eval_approx(&self, w: &Word) -> Result<EvalResult> {
        self.single_eraser(w)?;
        Ok(match erase(w.letters(), |l| self.is_eraser(l), true) {
            Ok(kept) => EvalResult::Defined(self.project(w, &kept)),
            Err(pos) => EvalResult::Undefined(pos),
        })
    }

    /// Positions of the base letters that no eraser deletes.
    pub fn surviving_positions(&self, w: &Word) -> Result<Vec<usize>> {
        self.single_eraser(w)?;
        erase(w.letters(), |l| self.is_eraser(l), true).map_err(Error::Undefined)
    }

    /// The limit `σ^↢` of the total evaluation along `x = u·v^ω`.
    ///
    /// Running `v` on its own yields a local residue `s` and a deficit `d`,
    /// the number of erasers that found the local buffer empty. On a buffer
    /// of height `h`, one period leaves `buffer[..max(0, h−d)] · s`, and the
    /// low part `buffer[..h−d]` is never touched again when `|s| ≥ d`.
    pub fn decode_lasso_tilde(&self, x: &LassoWord) -> Result<TildeLimit> {
        self.single_eraser(x.prefix())?;
        let start = self.eval_tilde(x.prefix())?;
        let mut residue: Vec<Letter> = Vec::new();
        let mut deficit = 0usize;
        for &l in x.period().letters() {
            if self.is_eraser(l) {
                if residue.pop().is_none() {
                    deficit += 1;
                }
            } else {
                residue.push(self.to_base[l.index()].unwrap());
            }
        }
        let floor = start.len().saturating_sub(deficit);
        let persistent = start.prefix(floor);
        Ok(match residue.len().cmp(&deficit) {
            std::cmp::Ordering::Less => TildeLimit::Finite(Word::empty(&self.base)),
            std::cmp::Ordering::Equal => TildeLimit::Finite(persistent),
            std::cmp::Ordering::Greater => {
                residue.truncate(residue.len() - deficit);
                let period = Word::from_letters_unchecked(&self.base, residue);
                TildeLimit::Infinite(LassoWord::new(persistent, period)?)
            }
        })
    }

    /// Membership in `Tₖ`: the passes `↢₁, …, ↢ₖ` (partial semantics, each
    /// pass erasing any other symbol) are all defined and leave the empty word.
    pub fn t_k_member(&self, w: &Word, k: usize) -> Result<bool> {
        self.full.check_same(w.alphabet())?;
        if k == 0 || k > self.erasers.len() {
            return Err(Error::Precondition(format!(
                "k = {k} must lie in 1..={}",
                self.erasers.len()
            )));
        }
        let mut current: Vec<Letter> = w.letters().to_vec();
        for &eraser in &self.erasers[..k] {
            match erase(&current, |l| l == eraser, true) {
                Ok(kept) => current = kept.into_iter().map(|i| current[i]).collect(),
                Err(_) => return Ok(false),
            }
        }
        Ok(current.is_empty())
    }
}

/// `n_j(s)`: occurrences of `symbol` in `s`.
pub fn count_letter(s: &Word, symbol: &str) -> Result<usize> {
    let l = s.alphabet().letter(symbol)?;
    Ok(s.letters().iter().filter(|&&x| x == l).count())
}

fn ternary_digits(s: &Word) -> Result<Vec<u8>> {
    s.symbols()
        .map(|sym| match sym {
            "0" => Ok(0),
            "1" => Ok(1),
            "2" => Ok(2),
            other => Err(Error::UnknownSymbol(other.to_string())),
        })
        .collect()
}

/// Checks the prefix condition of `T`: no prefix has more 2s than 1s.
/// On failure reports the length of the shortest offending prefix.
pub fn check_t(s: &Word) -> Result<()> {
    let digits = ternary_digits(s)?;
    let mut balance = 0i64;
    for (i, d) in digits.iter().enumerate() {
        match d {
            1 => balance += 1,
            2 => balance -= 1,
            _ => {}
        }
        if balance < 0 {
            return Err(Error::NotInT(i + 1));
        }
    }
    Ok(())
}

pub fn in_t(s: &Word) -> bool {
    check_t(s).is_ok()
}

/// The ternary back-space `s^↩`: 0 and 1 are appended, a 2 turns the last 1
/// of the current value into a 0.
pub fn backspace2(s: &Word) -> Result<Word> {
    check_t(s)?;
    let mut out: Vec<u8> = Vec::with_capacity(s.len());
    for d in ternary_digits(s)? {
        if d == 2 {
            let last_one = out.iter().rposition(|&b| b == 1).expect("guaranteed by T");
            out[last_one] = 0;
        } else {
            out.push(d);
        }
    }
    let binary = Alphabet::digits(2);
    Ok(Word::from_letters_unchecked(&binary, out.into_iter().map(|d| Letter::new(d as u16)).collect()))
}

/// `base ∪ {α, β}`, the alphabet of coded indexed erasers.
pub fn coding_alphabet(base: &Alphabet) -> Result<Alphabet> {
    base.extend([ALPHA, BETA])
}

/// The code `α βʲ α` of `↢ⱼ`, over `alphabet` (which must contain α and β).
pub fn code_eraser_ab(alphabet: &Alphabet, j: usize) -> Result<Word> {
    if j == 0 {
        return Err(Error::Precondition("eraser index must be ≥ 1".into()));
    }
    let (a, b) = (alphabet.letter(ALPHA)?, alphabet.letter(BETA)?);
    let mut letters = vec![a];
    letters.extend(std::iter::repeat_n(b, j));
    letters.push(a);
    Ok(Word::from_letters_unchecked(alphabet, letters))
}

/// The alphabet `{α, B, C, D, E, β}` of the four-run eraser code.
pub fn five_run_alphabet() -> Alphabet {
    Alphabet::new([ALPHA, "B", "C", "D", "E", BETA]).unwrap()
}

/// The code `α Bⁿ Cⁿ Dⁿ Eⁿ β` of `↢ₙ`.
pub fn code_eraser_5(n: usize) -> Result<Word> {
    if n == 0 {
        return Err(Error::Precondition("eraser index must be ≥ 1".into()));
    }
    let alphabet = five_run_alphabet();
    let mut letters = vec![Letter::new(0)];
    for run in 1..=4u16 {
        letters.extend(std::iter::repeat_n(Letter::new(run), n));
    }
    letters.push(Letter::new(5));
    Ok(Word::from_letters_unchecked(&alphabet, letters))
}

/// Result of decoding α/β codes back into indexed erasers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecodedErasers {
    /// Base symbols plus `↢ₖ … ↢₁`, `k` the largest index seen (at least 1).
    pub alphabet: EraserAlphabet,
    pub word: Word,
    pub max_index: usize,
}

/// Replaces every `α βʲ α` segment by `↢ⱼ`, passing the other letters through.
///
/// The base alphabet is everything in `w`'s alphabet except α and β; any α or
/// β that is not part of a complete code is reported by position.
pub fn decode_erasers_ab(w: &Word) -> Result<DecodedErasers> {
    let alphabet = w.alphabet();
    let (a, b) = (alphabet.letter(ALPHA)?, alphabet.letter(BETA)?);
    let base_symbols: Vec<&String> = alphabet
        .symbols()
        .iter()
        .filter(|s| s.as_str() != ALPHA && s.as_str() != BETA)
        .collect();
    let base = Alphabet::new(base_symbols.iter().map(|s| s.to_string()))?;

    // Some(j) for ↢ⱼ, None for a base letter.
    let mut tokens: Vec<(Option<usize>, Letter)> = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        if l == a {
            let mut j = 0;
            while i + 1 + j < letters.len() && letters[i + 1 + j] == b {
                j += 1;
            }
            let close = i + 1 + j;
            if j == 0 || close >= letters.len() || letters[close] != a {
                return Err(Error::Decode(i));
            }
            tokens.push((Some(j), l));
            i = close + 1;
        } else if l == b {
            return Err(Error::Decode(i));
        } else {
            tokens.push((None, base.letter(alphabet.symbol(l))?));
            i += 1;
        }
    }
    let max_index = tokens.iter().filter_map(|t| t.0).max().unwrap_or(1);
    let erasers = EraserAlphabet::indexed(&base, max_index)?;
    let out = tokens
        .into_iter()
        .map(|(j, l)| match j {
            Some(j) => erasers.erasers()[j - 1],
            None => l,
        })
        .collect();
    Ok(DecodedErasers {
        word: Word::from_letters_unchecked(erasers.full(), out),
        alphabet: erasers,
        max_index,
    })
}

/// Applies the coding `↢ⱼ ↦ α βʲ α` to a word over `base ∪ {↢ₖ … ↢₁}`.
pub fn encode_erasers_ab(erasers: &EraserAlphabet, w: &Word) -> Result<Word> {
    erasers.full().check_same(w.alphabet())?;
    let target = coding_alphabet(erasers.base())?;
    let mut out = Vec::new();
    for &l in w.letters() {
        match erasers.erasers().iter().position(|&e| e == l) {
            Some(idx) => out.extend_from_slice(code_eraser_ab(&target, idx + 1)?.letters()),
            None => out.push(l),
        }
    }
    Ok(Word::from_letters_unchecked(&target, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::enumerate_words;

    fn ab() -> EraserAlphabet {
        EraserAlphabet::single(&Alphabet::from_chars("ab").unwrap(), ERASER).unwrap()
    }

    fn w(e: &EraserAlphabet, s: &str) -> Word {
        e.full().parse_word(s).unwrap()
    }

    #[test]
    fn tilde_examples() {
        let e = ab();
        assert!(e.eval_tilde(&w(&e, "a↢a↢")).unwrap().is_empty());
        assert!(e.eval_tilde(&w(&e, "@")).unwrap().is_empty());
        assert_eq!(e.eval_tilde(&w(&e, "↢↢b")).unwrap().to_text(false), "b");
    }

    #[test]
    fn approx_examples() {
        let e = ab();
        assert_eq!(e.eval_approx(&w(&e, "↢")).unwrap(), EvalResult::Undefined(0));
        assert_eq!(e.eval_approx(&w(&e, "a↢")).unwrap(), EvalResult::Defined(Word::empty(e.base())));
        let r = e.eval_approx(&w(&e, "ab↢")).unwrap().defined().unwrap();
        assert_eq!(r.to_text(false), "a");
        assert_eq!(e.eval_approx(&w(&e, "a↢↢b")).unwrap(), EvalResult::Undefined(2));
    }

    #[test]
    fn remark_lassos() {
        let e = ab();
        let x = |s: &str| e.full().parse_lasso(s).unwrap();
        assert_eq!(e.decode_lasso_tilde(&x("@:a↢")).unwrap(), TildeLimit::Finite(Word::empty(e.base())));
        assert_eq!(e.decode_lasso_tilde(&x("@:a↢↢")).unwrap(), TildeLimit::Finite(Word::empty(e.base())));
        match e.decode_lasso_tilde(&x("@:ab↢")).unwrap() {
            TildeLimit::Infinite(l) => {
                assert_eq!(l.prefix().len(), 0);
                assert_eq!(l.period().to_text(false), "a");
            }
            other => panic!("expected a^ω, got {other:?}"),
        }
        assert_eq!(
            e.decode_lasso_tilde(&x("bb:↢a")).unwrap(),
            TildeLimit::Finite(e.base().parse_word("b").unwrap())
        );
    }

    #[test]
    fn surviving_positions_examples() {
        let e = ab();
        assert_eq!(e.surviving_positions(&w(&e, "ab↢")).unwrap(), vec![0]);
        assert_eq!(e.surviving_positions(&w(&e, "a↢b")).unwrap(), vec![2]);
        assert_eq!(e.surviving_positions(&w(&e, "ab")).unwrap(), vec![0, 1]);
        assert_eq!(e.surviving_positions(&w(&e, "↢a")).unwrap_err(), Error::Undefined(0));
    }

    #[test]
    fn multi_eraser_alphabet_rejected_by_single_eraser_ops() {
        let e = EraserAlphabet::indexed(&Alphabet::from_chars("a").unwrap(), 2).unwrap();
        let x = e.full().parse_word("a↢₁").unwrap();
        assert_eq!(e.eval_tilde(&x).unwrap_err(), Error::NotSingleEraser(2));
    }

    #[test]
    fn eraser_must_be_fresh() {
        let base = Alphabet::from_chars("a↢").unwrap();
        assert!(matches!(EraserAlphabet::single(&base, ERASER), Err(Error::EraserInBase(_))));
    }

    #[test]
    fn backspace_examples() {
        let t = Alphabet::digits(3);
        let b = |s: &str| backspace2(&t.parse_word(s).unwrap()).unwrap().to_text(false);
        assert_eq!(b("1"), "1");
        assert_eq!(b("12"), "0");
        assert_eq!(b("112"), "10");
        assert_eq!(b("1102"), "100");
        assert_eq!(backspace2(&t.parse_word("2").unwrap()).unwrap_err(), Error::NotInT(1));
        assert_eq!(backspace2(&t.parse_word("1022").unwrap()).unwrap_err(), Error::NotInT(4));
    }

    #[test]
    fn count_examples() {
        let t = Alphabet::digits(3);
        assert_eq!(count_letter(&t.parse_word("12021").unwrap(), "1").unwrap(), 2);
        assert_eq!(count_letter(&Word::empty(&t), "2").unwrap(), 0);
        assert_eq!(count_letter(&t.parse_word("222").unwrap(), "2").unwrap(), 3);
    }

    #[test]
    fn t_k_examples() {
        let e = EraserAlphabet::indexed(&Alphabet::from_chars("a").unwrap(), 2).unwrap();
        let x = |s: &str| e.full().parse_word(s).unwrap();
        assert!(e.t_k_member(&x("@"), 1).unwrap());
        assert!(e.t_k_member(&x("a↢₁"), 1).unwrap());
        assert!(!e.t_k_member(&x("a↢₂↢₁"), 2).unwrap());
        assert!(e.t_k_member(&x("a↢₂"), 2).unwrap());
        assert!(!e.t_k_member(&x("a↢₂"), 1).unwrap());
        assert!(e.t_k_member(&x("a↢₁"), 1).unwrap());
        assert!(e.t_k_member(&x("aa↢₁↢₂"), 2).unwrap());
    }

    #[test]
    fn codes() {
        let c = coding_alphabet(&Alphabet::digits(2)).unwrap();
        let txt = |j| code_eraser_ab(&c, j).unwrap().to_text(false);
        assert_eq!(txt(1), "αβα");
        assert_eq!(txt(2), "αββα");
        assert_eq!(txt(3), "αβββα");
        assert_eq!(code_eraser_5(1).unwrap().to_text(false), "αBCDEβ");
        assert_eq!(code_eraser_5(2).unwrap().to_text(false), "αBBCCDDEEβ");
        assert_eq!(code_eraser_5(3).unwrap().len(), 14);
        assert!(code_eraser_5(0).is_err());
    }

    #[test]
    fn decode_examples() {
        let c = coding_alphabet(&Alphabet::digits(2)).unwrap();
        let d = decode_erasers_ab(&c.parse_word("0αβα1").unwrap()).unwrap();
        assert_eq!(d.word.to_text(false), "0.↢₁.1");
        assert_eq!(d.max_index, 1);
        assert_eq!(decode_erasers_ab(&c.parse_word("αβ").unwrap()).unwrap_err(), Error::Decode(0));
        assert_eq!(decode_erasers_ab(&c.parse_word("0β").unwrap()).unwrap_err(), Error::Decode(1));
        assert_eq!(decode_erasers_ab(&c.parse_word("01").unwrap()).unwrap().word.to_text(false), "0.1");
        let d = decode_erasers_ab(&c.parse_word("αββααβα").unwrap()).unwrap();
        assert_eq!(d.word.to_text(false), "↢₂.↢₁");
    }

    #[test]
    fn tilde_appends_base_letters() {
        let e = ab();
        for x in enumerate_words(e.full(), 6) {
            for a in ["a", "b"] {
                let xa = x.concat(&w(&e, a)).unwrap();
                let lhs = e.eval_tilde(&xa).unwrap();
                let rhs = e.eval_tilde(&x).unwrap().concat(&e.base().parse_word(a).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn backspace_counts() {
        let t = Alphabet::digits(3);
        for s in enumerate_words(&t, 8).filter(in_t) {
            let n = |d| count_letter(&s, d).unwrap();
            let r = backspace2(&s).unwrap();
            assert_eq!(r.len(), n("0") + n("1"));
            assert_eq!(count_letter(&r, "1").unwrap(), n("1") - n("2"));
        }
    }

    #[test]
    fn code_round_trip() {
        let base = Alphabet::digits(2);
        for k in 1..=5 {
            let e = EraserAlphabet::indexed(&base, k).unwrap();
            for x in enumerate_words(e.full(), 3) {
                let back = decode_erasers_ab(&encode_erasers_ab(&e, &x).unwrap()).unwrap();
                assert!(back.word.symbols().eq(x.symbols()));
            }
        }
    }
}
