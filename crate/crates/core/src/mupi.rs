//! The coded transition system over pairs of binary words and the
//! languages `π`, `μ₀`, `μ₁` and `A = μ ∪ π` over `{0,1,2,3}`.
//!
//! States `q_n = (q_n⁰, q_n¹)` are pairs of equal-length binary words,
//! enumerated by length and then lexicographically on the sequence of
//! letter pairs. Words over `{0,1,2,3}` are handled as letter slices whose
//! indices are the digits themselves.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::words::{Alphabet, Letter, Word};

const TWO: usize = 2;
const THREE: usize = 3;

/// Longest pair length whose index fits in a `u64`.
pub const MAX_PAIR_LEN: usize = 30;

pub fn four() -> Alphabet {
    Alphabet::digits(4)
}

/// `M_j = Σ_{i<j} 4^{i+1}`, the index of the last pair of length `j`.
pub fn m_index(j: usize) -> u64 {
    (1..=j as u32).map(|e| 4u64.pow(e)).sum()
}

/// Index of the first pair of length `j`.
fn offset(j: usize) -> u64 {
    (4u64.pow(j as u32) - 1) / 3
}

/// Length of `q_n` and the rank of `q_n` among pairs of that length.
fn level(n: u64) -> (usize, u64) {
    let mut j = 0;
    while j < MAX_PAIR_LEN + 1 && offset(j + 1) <= n {
        j += 1;
    }
    (j, n - offset(j))
}

/// The two states reachable from `n` on input bit `m`.
fn successors(n: u64, m: u8) -> Option<[u64; 2]> {
    let (j, k) = level(n);
    if j >= MAX_PAIR_LEN {
        return None;
    }
    let base = offset(j + 1) + 4 * k + m as u64;
    Some([base, base + 2])
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StatePair {
    pub left: Word,
    pub right: Word,
}

impl fmt::Display for StatePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.left, self.right)
    }
}

pub fn state_pair(n: u64) -> StatePair {
    let (j, k) = level(n);
    let binary = Alphabet::digits(2);
    let mut left = Vec::with_capacity(j);
    let mut right = Vec::with_capacity(j);
    for i in (0..j).rev() {
        let d = (k >> (2 * i)) & 3;
        left.push(Letter::new((d >> 1) as u16));
        right.push(Letter::new((d & 1) as u16));
    }
    StatePair {
        left: Word::new(&binary, left).expect("binary letters"),
        right: Word::new(&binary, right).expect("binary letters"),
    }
}

pub fn state_index(q: &StatePair) -> Result<u64> {
    let binary = Alphabet::digits(2);
    let left = q.left.recode(&binary)?;
    let right = q.right.recode(&binary)?;
    let j = left.len();
    if right.len() != j {
        return Err(Error::Precondition(format!("components of lengths {j} and {}", right.len())));
    }
    if j > MAX_PAIR_LEN {
        return Err(Error::Precondition(format!("pairs longer than {MAX_PAIR_LEN} are not indexed")));
    }
    let k = left
        .letters()
        .iter()
        .zip(right.letters())
        .fold(0u64, |k, (s, t)| 4 * k + 2 * s.index() as u64 + t.index() as u64);
    Ok(offset(j) + k)
}

/// `n →^m p`: `q_n⁰ ⊆ q_p⁰` and `q_p¹ = q_n¹·m`.
pub fn edge(n: u64, m: u8, p: u64) -> bool {
    m < 2 && successors(n, m).is_some_and(|s| s.contains(&p))
}

/// Which component of a state the final-state test reads.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum FinalConvention {
    /// `q⁰`, the component guessed one free bit at a time.
    #[default]
    Left,
    /// `q¹`, the component copied from the input.
    Right,
}

type TreeFn = Arc<dyn Fn(&Word, &Word) -> bool + Send + Sync>;

/// A tree `R` of pairs `(t, s)` of equal-length binary words, evaluated on
/// states as `(q⁰, q¹)`.
#[derive(Clone)]
pub struct TreePredicate {
    name: String,
    decide: TreeFn,
    convention: FinalConvention,
}

impl fmt::Debug for TreePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TreePredicate").field("name", &self.name).field("convention", &self.convention).finish()
    }
}

impl TreePredicate {
    pub fn new(name: impl Into<String>, decide: impl Fn(&Word, &Word) -> bool + Send + Sync + 'static) -> Self {
        TreePredicate { name: name.into(), decide: Arc::new(decide), convention: FinalConvention::default() }
    }

    /// Every pair.
    pub fn full() -> Self {
        TreePredicate::new("full", |_, _| true)
    }

    /// Pairs with equal components.
    pub fn diag() -> Self {
        TreePredicate::new("diag", |t, s| t.letters() == s.letters())
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "full" => Ok(Self::full()),
            "diag" => Ok(Self::diag()),
            _ => Err(Error::Precondition(format!("unknown tree `{name}` (expected full or diag)"))),
        }
    }

    pub fn with_convention(mut self, convention: FinalConvention) -> Self {
        self.convention = convention;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn convention(&self) -> FinalConvention {
        self.convention
    }

    pub fn holds(&self, q: &StatePair) -> bool {
        (self.decide)(&q.left, &q.right)
    }

    /// Looks for a pair in the tree with a prefix outside it, over all pairs
    /// of length at most `max_len`.
    pub fn audit_prefix_closed(&self, max_len: usize) -> Option<StatePair> {
        let last = offset(max_len.min(MAX_PAIR_LEN) + 1);
        (1..last).map(state_pair).find(|q| {
            self.holds(q) && (0..q.left.len()).any(|i| !self.holds(&StatePair { left: q.left.prefix(i), right: q.right.prefix(i) }))
        })
    }
}

pub fn is_final(q: &StatePair, r: &TreePredicate) -> bool {
    let component = match r.convention {
        FinalConvention::Left => &q.left,
        FinalConvention::Right => &q.right,
    };
    !component.is_empty() && component.symbol_at(component.len() - 1) == "1" && r.holds(q)
}

fn digits(w: &Word) -> Result<Vec<Letter>> {
    Ok(w.recode(&four())?.into_letters())
}

/// Whether `w` is a prefix of some element of `K_{N,j}`:
/// `2^N` followed by blocks `m_i 2^{M_{j+i+1}} 3 2^{M_{j+i+1}}`.
pub fn k_prefix_member(w: &Word, n: u64, j: usize) -> Result<bool> {
    if n > m_index(j) {
        return Err(Error::Precondition(format!("N = {n} exceeds M_{j} = {}", m_index(j))));
    }
    let letters = digits(w)?;
    // Letter classes of the K-pattern, as (allowed letters, run length).
    let mut pattern: Vec<(&[usize], u64)> = vec![(&[TWO], n)];
    let mut covered = n;
    let mut i = 0;
    while covered < letters.len() as u64 {
        let len = m_index(j + i + 1);
        pattern.extend([(&[0, 1][..], 1), (&[TWO][..], len), (&[THREE][..], 1), (&[TWO][..], len)]);
        covered += 2 * len + 2;
        i += 1;
    }
    let mut expected = pattern.into_iter().flat_map(|(allowed, len)| std::iter::repeat_n(allowed, len as usize));
    Ok(letters.iter().all(|l| expected.next().is_some_and(|allowed| allowed.contains(&l.index()))))
}

/// One `m 2^b 3 2^c` segment of a word of shape `2^a (m 2^b 3 2^c)⁺`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Segment {
    m: u8,
    b: u64,
    c: u64,
}

fn twos(w: &[Letter], i: &mut usize) -> u64 {
    let start = *i;
    while *i < w.len() && w[*i].index() == TWO {
        *i += 1;
    }
    (*i - start) as u64
}

/// Splits `w = 2^a (m 2^b 3 2^c)⁺`; the split is unique when it exists.
fn segments(w: &[Letter]) -> Option<(u64, Vec<Segment>)> {
    let mut i = 0;
    let lead = twos(w, &mut i);
    let mut out = Vec::new();
    while i < w.len() {
        let m = w[i].index();
        if m > 1 {
            return None;
        }
        i += 1;
        let b = twos(w, &mut i);
        if i == w.len() || w[i].index() != THREE {
            return None;
        }
        i += 1;
        let c = twos(w, &mut i);
        out.push(Segment { m: m as u8, b, c });
    }
    (!out.is_empty()).then_some((lead, out))
}

/// `j` with `M_j = x`, if any.
fn m_inverse(x: u64) -> Option<usize> {
    (0..=MAX_PAIR_LEN).take_while(|&j| m_index(j) <= x).find(|&j| m_index(j) == x)
}

/// Witnesses for a member of `π`: `w = ⌢_{i≤l} 2^{n_i} m_i 2^{p_i} 2^{r_i} 3 2^{r_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiParse {
    pub j: usize,
    pub m: Vec<u8>,
    pub n: Vec<u64>,
    pub p: Vec<u64>,
    pub r: Vec<u64>,
}

impl PiParse {
    /// Index of the last block.
    pub fn l(&self) -> usize {
        self.m.len() - 1
    }

    pub fn reassemble(&self) -> Word {
        let mut out = Vec::new();
        let push = |out: &mut Vec<Letter>, d: usize, k: u64| out.extend(std::iter::repeat_n(Letter::new(d as u16), k as usize));
        for i in 0..self.m.len() {
            push(&mut out, TWO, self.n[i]);
            push(&mut out, self.m[i] as usize, 1);
            push(&mut out, TWO, self.p[i] + self.r[i]);
            push(&mut out, THREE, 1);
            push(&mut out, TWO, self.r[i]);
        }
        Word::new(&four(), out).expect("digits")
    }
}

/// Witnesses for a member of `μ`: `w = 2^N ⌢_{i≤l+1} m_i 2^{P_i} 3 2^{R_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuParse {
    pub big_n: u64,
    pub m: Vec<u8>,
    pub big_p: Vec<u64>,
    pub big_r: Vec<u64>,
}

impl MuParse {
    pub fn l(&self) -> usize {
        self.m.len() - 2
    }

    pub fn reassemble(&self) -> Word {
        let mut out = vec![Letter::new(TWO as u16); self.big_n as usize];
        for i in 0..self.m.len() {
            out.push(Letter::new(self.m[i] as u16));
            out.extend(std::iter::repeat_n(Letter::new(TWO as u16), self.big_p[i] as usize));
            out.push(Letter::new(THREE as u16));
            out.extend(std::iter::repeat_n(Letter::new(TWO as u16), self.big_r[i] as usize));
        }
        Word::new(&four(), out).expect("digits")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlockParse {
    Pi(PiParse),
    Mu(MuParse),
}

impl BlockParse {
    pub fn reassemble(&self) -> Word {
        match self {
            BlockParse::Pi(p) => p.reassemble(),
            BlockParse::Mu(m) => m.reassemble(),
        }
    }
}

/// A `π`-parse of `w`, over letter indices `0..4`.
///
/// The runs of 2s fix `j` (through `p₀ + r₀ = M_{j+1}`), `n₀`, every sum
/// `p_i + r_i` and the final `p_l`; the intermediate `p_i = n_{i+1}` are
/// found by a forward search along the edges, which add one letter pair per
/// step.
pub fn pi_parse_letters(w: &[Letter], r: &TreePredicate) -> Option<PiParse> {
    let (lead, segs) = segments(w)?;
    let l = segs.len() - 1;
    let j = m_inverse(segs[0].b)?.checked_sub(1)?;
    if lead > m_index(j) {
        return None;
    }
    for (i, s) in segs.iter().enumerate() {
        if s.b != m_index(j + i + 1) || (i < l && s.c != s.b) || s.c > s.b {
            return None;
        }
    }
    let last = segs[l].b - segs[l].c;
    if !is_final(&state_pair(last), r) {
        return None;
    }
    // layers[i]: state reached after block i, mapped to its predecessor.
    let mut layers: Vec<HashMap<u64, u64>> = Vec::with_capacity(segs.len());
    let mut frontier = vec![lead];
    for (i, s) in segs.iter().enumerate() {
        let mut layer = HashMap::new();
        for &n in &frontier {
            for p in successors(n, s.m)? {
                if p <= s.b && (i < l || p == last) {
                    layer.entry(p).or_insert(n);
                }
            }
        }
        frontier = layer.keys().copied().collect();
        frontier.sort_unstable();
        layers.push(layer);
    }
    if !layers[l].contains_key(&last) {
        return None;
    }
    let mut p = vec![0; segs.len()];
    p[l] = last;
    for i in (1..=l).rev() {
        p[i - 1] = layers[i][&p[i]];
    }
    let n: Vec<u64> = std::iter::once(lead).chain(p[..l].iter().copied()).collect();
    let rr: Vec<u64> = segs.iter().zip(&p).map(|(s, &pi)| s.b - pi).collect();
    Some(PiParse { j, m: segs.iter().map(|s| s.m).collect(), n, p, r: rr })
}

pub fn pi_member_letters(w: &[Letter], r: &TreePredicate) -> bool {
    pi_parse_letters(w, r).is_some()
}

pub fn pi_parse(w: &Word, r: &TreePredicate) -> Result<Option<PiParse>> {
    Ok(pi_parse_letters(&digits(w)?, r))
}

pub fn pi_member(w: &Word, r: &TreePredicate) -> Result<bool> {
    Ok(pi_parse(w, r)?.is_some())
}

/// The common `μ` shape: at least two blocks, every `P_i` some `M_j`.
pub fn mu_parse_letters(w: &[Letter]) -> Option<MuParse> {
    let (lead, segs) = segments(w)?;
    if segs.len() < 2 || segs.iter().any(|s| m_inverse(s.b).is_none()) {
        return None;
    }
    Some(MuParse {
        big_n: lead,
        m: segs.iter().map(|s| s.m).collect(),
        big_p: segs.iter().map(|s| s.b).collect(),
        big_r: segs.iter().map(|s| s.c).collect(),
    })
}

fn mu0_holds(p: &MuParse) -> bool {
    let l = p.l();
    p.big_p[l] != p.big_r[l]
}

fn mu1_holds(p: &MuParse) -> bool {
    let l = p.l();
    let j = m_inverse(p.big_p[l]).expect("checked by the parse");
    p.big_p[l + 1] != m_index(j + 1)
}

pub fn mu0_member_letters(w: &[Letter]) -> bool {
    mu_parse_letters(w).is_some_and(|p| mu0_holds(&p))
}

pub fn mu1_member_letters(w: &[Letter]) -> bool {
    mu_parse_letters(w).is_some_and(|p| mu1_holds(&p))
}

pub fn mu0_member(w: &Word) -> Result<bool> {
    Ok(mu0_member_letters(&digits(w)?))
}

pub fn mu1_member(w: &Word) -> Result<bool> {
    Ok(mu1_member_letters(&digits(w)?))
}

pub fn mu_parse(w: &Word) -> Result<Option<MuParse>> {
    Ok(mu_parse_letters(&digits(w)?).filter(|p| mu0_holds(p) || mu1_holds(p)))
}

/// Membership in `A = μ ∪ π`, with the parse that witnesses it.
pub fn a_parse_letters(w: &[Letter], r: &TreePredicate) -> Option<BlockParse> {
    if let Some(p) = mu_parse_letters(w).filter(|p| mu0_holds(p) || mu1_holds(p)) {
        return Some(BlockParse::Mu(p));
    }
    pi_parse_letters(w, r).map(BlockParse::Pi)
}

pub fn a_member_letters(w: &[Letter], r: &TreePredicate) -> bool {
    a_parse_letters(w, r).is_some()
}

pub fn a_member(w: &Word, r: &TreePredicate) -> Result<bool> {
    Ok(a_member_letters(&digits(w)?, r))
}

/// All finite runs `t₀ = 0, t₁, …, t_{|input|}` of the transition system on
/// a binary input, staying inside the tree `r`.
pub fn ts_run_prefixes(r: &TreePredicate, input: &Word) -> Result<Vec<Vec<u64>>> {
    let bits: Vec<u8> = input.recode(&Alphabet::digits(2))?.letters().iter().map(|l| l.index() as u8).collect();
    if bits.len() > MAX_PAIR_LEN {
        return Err(Error::Precondition(format!("inputs longer than {MAX_PAIR_LEN} are not supported")));
    }
    let mut runs = vec![vec![0u64]];
    for &m in &bits {
        let mut next = Vec::with_capacity(runs.len() * 2);
        for run in runs {
            let n = *run.last().expect("nonempty");
            for p in successors(n, m).expect("length checked") {
                if r.holds(&state_pair(p)) {
                    let mut extended = run.clone();
                    extended.push(p);
                    next.push(extended);
                }
            }
        }
        runs = next;
    }
    Ok(runs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        four().parse_word(s).unwrap()
    }

    fn pair(s: &str, t: &str) -> StatePair {
        let b = Alphabet::digits(2);
        StatePair { left: b.parse_word(s).unwrap(), right: b.parse_word(t).unwrap() }
    }

    #[test]
    fn m_index_values() {
        assert_eq!([m_index(0), m_index(1), m_index(2), m_index(3)], [0, 4, 20, 84]);
        assert!((0..8).all(|j| m_index(j) < m_index(j + 1)));
    }

    #[test]
    fn state_enumeration() {
        assert_eq!(state_pair(0), pair("@", "@"));
        assert_eq!(state_pair(1), pair("0", "0"));
        assert_eq!(state_pair(2), pair("0", "1"));
        assert_eq!(state_pair(3), pair("1", "0"));
        assert_eq!(state_pair(5), pair("00", "00"));
        assert_eq!(state_pair(6), pair("00", "01"));
        for n in 0..2000 {
            assert_eq!(state_index(&state_pair(n)).unwrap(), n);
        }
        for j in 0..=4 {
            let ones = if j == 0 { "@".to_string() } else { "1".repeat(j) };
            assert_eq!(state_pair(m_index(j)), pair(&ones, &ones));
            assert_eq!(state_pair(m_index(j) + 1).left.len(), j + 1);
        }
        assert!(state_index(&pair("0", "01")).is_err());
    }

    #[test]
    fn edges() {
        assert!(edge(0, 0, 1));
        assert!(edge(0, 0, 3));
        assert!(!edge(0, 0, 2));
        assert!(edge(2, 1, state_index(&pair("01", "11")).unwrap()));
        for n in 0..200 {
            for p in 0..200 {
                for m in 0..2 {
                    if edge(n, m, p) {
                        assert_eq!(state_pair(p).left.len(), state_pair(n).left.len() + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn finality() {
        let full = TreePredicate::full();
        assert!(!is_final(&pair("@", "@"), &full));
        assert!(is_final(&pair("1", "0"), &full));
        assert!(!is_final(&pair("0", "1"), &full));
        let right = TreePredicate::full().with_convention(FinalConvention::Right);
        assert!(is_final(&pair("0", "1"), &right));
        assert!(!is_final(&pair("1", "1"), &TreePredicate::new("none", |t, _| t.is_empty())));
        assert!(!is_final(&pair("10", "11"), &TreePredicate::diag()));
    }

    #[test]
    fn fixture_trees_are_prefix_closed() {
        assert_eq!(TreePredicate::full().audit_prefix_closed(6), None);
        assert_eq!(TreePredicate::diag().audit_prefix_closed(6), None);
        let bad = TreePredicate::new("bad", |t, _| t.len() != 1);
        assert!(bad.audit_prefix_closed(3).is_some());
    }

    #[test]
    fn k_prefixes() {
        assert!(k_prefix_member(&w("@"), 0, 0).unwrap());
        assert!(k_prefix_member(&w("22"), 2, 1).unwrap());
        assert!(!k_prefix_member(&w("3"), 1, 1).unwrap());
        assert!(k_prefix_member(&w("12222322221222"), 0, 0).unwrap());
        assert!(!k_prefix_member(&w("1222232221"), 0, 0).unwrap());
        assert!(!k_prefix_member(&w("12222322221220"), 0, 0).unwrap());
        assert!(k_prefix_member(&w("3"), 1, 0).is_err());
    }

    #[test]
    fn pi_examples() {
        let full = TreePredicate::full();
        let parse = pi_parse(&w("122223"), &full).unwrap().unwrap();
        assert_eq!(parse, PiParse { j: 0, m: vec![1], n: vec![0], p: vec![4], r: vec![0] });
        assert_eq!(parse.reassemble(), w("122223"));
        assert!(!pi_member(&w("@"), &full).unwrap());
        assert!(!pi_member(&w("3"), &full).unwrap());
        assert!(!pi_member(&w("022223"), &full).unwrap());
        // p₀ = 3 = (1,0) is not reachable from q₀ on input 1.
        assert!(!pi_member(&w("1222232"), &full).unwrap());
        assert!(pi_member(&w("122223"), &TreePredicate::diag()).unwrap());
    }

    #[test]
    fn pi_with_two_blocks() {
        let full = TreePredicate::full();
        // j = 0, n₀ = 0 →¹ p₀ ∈ {2, 4}, then p₀ →¹ p₁ with p₁ + r₁ = 20.
        let p1 = state_index(&pair("11", "11")).unwrap();
        let mut text = String::from("1");
        text += &"2".repeat(4);
        text += "3";
        text += &"2".repeat(4);
        text += "1";
        text += &"2".repeat(20);
        text += "3";
        text += &"2".repeat((20 - p1) as usize);
        let parse = pi_parse(&w(&text), &full).unwrap().unwrap();
        assert_eq!(parse.p[1], p1);
        assert!(edge(parse.n[0], 1, parse.p[0]) && edge(parse.p[0], 1, parse.p[1]));
        assert_eq!(parse.reassemble(), w(&text));
    }

    #[test]
    fn mu_examples() {
        assert!(mu0_member(&w("1222231222232222")).unwrap());
        // P₀ = M₁ and P₁ = 4 ≠ M₂.
        assert!(mu1_member(&w("1222231222232222")).unwrap());
        assert!(!mu1_member(&w("12222312222222222222222232222")).unwrap());
        assert!(!mu0_member(&w("@")).unwrap());
        assert!(!mu0_member(&w("1222223122223")).unwrap());
        // P₀ = M₀ = 0, P₁ = 0 ≠ M₁.
        assert!(mu1_member(&w("1313")).unwrap());
        let parse = mu_parse(&w("21313")).unwrap().unwrap();
        assert_eq!(parse.big_n, 1);
        assert_eq!(parse.reassemble(), w("21313"));
        assert!(a_member(&w("1313"), &TreePredicate::full()).unwrap());
        assert!(!a_member(&w("@"), &TreePredicate::full()).unwrap());
    }

    #[test]
    fn runs() {
        let b = Alphabet::digits(2);
        let full = TreePredicate::full();
        assert_eq!(ts_run_prefixes(&full, &b.parse_word("@").unwrap()).unwrap(), vec![vec![0]]);
        assert_eq!(ts_run_prefixes(&full, &b.parse_word("0").unwrap()).unwrap(), vec![vec![0, 1], vec![0, 3]]);
        for len in 0..=6 {
            let input = Word::new(&b, vec![Letter::new(1); len]).unwrap();
            assert_eq!(ts_run_prefixes(&full, &input).unwrap().len(), 1 << len);
            assert_eq!(ts_run_prefixes(&TreePredicate::diag(), &input).unwrap().len(), 1);
        }
    }
}
