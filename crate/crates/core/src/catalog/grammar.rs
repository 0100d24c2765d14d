//! Context-free grammars, Chomsky normal form and CYK recognition.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GSymbol {
    T(usize),
    N(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    nonterminals: Vec<String>,
    terminals: Vec<String>,
    productions: Vec<(usize, Vec<GSymbol>)>,
    start: usize,
}

impl Grammar {
    pub fn new(
        nonterminals: Vec<String>,
        terminals: Vec<String>,
        productions: Vec<(usize, Vec<GSymbol>)>,
        start: usize,
    ) -> Result<Self> {
        if start >= nonterminals.len() {
            return Err(Error::Precondition("start symbol out of range".into()));
        }
        for (lhs, rhs) in &productions {
            let ok = *lhs < nonterminals.len()
                && rhs.iter().all(|s| match *s {
                    GSymbol::T(t) => t < terminals.len(),
                    GSymbol::N(n) => n < nonterminals.len(),
                });
            if !ok {
                return Err(Error::Precondition(format!("production {lhs} -> {rhs:?} out of range")));
            }
        }
        Ok(Grammar { nonterminals, terminals, productions, start })
    }

    /// `S → a S ↢ S | a ↢ S | λ` for every base letter `a`; terminals are
    /// the symbols of `alphabet`, which must contain `eraser`.
    pub fn l3(alphabet: &Alphabet, eraser: &str) -> Result<Self> {
        let e = alphabet.letter(eraser)?.index();
        let mut productions = vec![(0, vec![])];
        for a in alphabet.letters().map(|l| l.index()).filter(|&a| a != e) {
            use GSymbol::*;
            productions.push((0, vec![T(a), N(0), T(e), N(0)]));
            productions.push((0, vec![T(a), T(e), N(0)]));
        }
        Grammar::new(vec!["S".into()], alphabet.symbols().to_vec(), productions, 0)
    }

    pub fn nonterminals(&self) -> &[String] {
        &self.nonterminals
    }

    pub fn terminals(&self) -> &[String] {
        &self.terminals
    }

    pub fn productions(&self) -> &[(usize, Vec<GSymbol>)] {
        &self.productions
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// START, TERM, BIN, DEL, UNIT, in that order.
    #[allow(clippy::needless_range_loop)]
    pub fn to_cnf(&self) -> CnfGrammar {
        use GSymbol::*;
        let mut count = self.nonterminals.len();
        let mut fresh = || {
            count += 1;
            count - 1
        };
        let start = fresh();
        let mut rules: Vec<(usize, Vec<GSymbol>)> = vec![(start, vec![N(self.start)])];

        let mut term_nt: HashMap<usize, usize> = HashMap::new();
        for (lhs, rhs) in &self.productions {
            let rhs: Vec<GSymbol> = if rhs.len() >= 2 {
                rhs.iter()
                    .map(|&s| match s {
                        T(t) => N(*term_nt.entry(t).or_insert_with(&mut fresh)),
                        n => n,
                    })
                    .collect()
            } else {
                rhs.clone()
            };
            rules.push((*lhs, rhs));
        }
        for (&t, &n) in &term_nt {
            rules.push((n, vec![T(t)]));
        }

        let mut binary = Vec::new();
        for (lhs, rhs) in rules {
            if rhs.len() <= 2 {
                binary.push((lhs, rhs));
                continue;
            }
            let mut left = lhs;
            for &sym in &rhs[..rhs.len() - 2] {
                let next = fresh();
                binary.push((left, vec![sym, N(next)]));
                left = next;
            }
            binary.push((left, rhs[rhs.len() - 2..].to_vec()));
        }

        let mut nullable = vec![false; count];
        loop {
            let mut changed = false;
            for (lhs, rhs) in &binary {
                if !nullable[*lhs] && rhs.iter().all(|s| matches!(s, N(n) if nullable[*n])) {
                    nullable[*lhs] = true;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        let mut nonempty: BTreeSet<(usize, Vec<GSymbol>)> = BTreeSet::new();
        for (lhs, rhs) in &binary {
            let optional: Vec<bool> = rhs.iter().map(|s| matches!(s, N(n) if nullable[*n])).collect();
            for mask in 0..1u32 << rhs.len() {
                if (0..rhs.len()).any(|i| mask >> i & 1 == 1 && !optional[i]) {
                    continue;
                }
                let kept: Vec<GSymbol> = (0..rhs.len()).filter(|i| mask >> i & 1 == 0).map(|i| rhs[i]).collect();
                if !kept.is_empty() {
                    nonempty.insert((*lhs, kept));
                }
            }
        }

        // unit[a][b]: a ⇒* b by unit rules.
        let mut unit = vec![vec![false; count]; count];
        for (a, row) in unit.iter_mut().enumerate() {
            row[a] = true;
        }
        for (lhs, rhs) in &nonempty {
            if let [N(b)] = rhs[..] {
                unit[*lhs][b] = true;
            }
        }
        for k in 0..count {
            for i in 0..count {
                if unit[i][k] {
                    for j in 0..count {
                        if unit[k][j] {
                            unit[i][j] = true;
                        }
                    }
                }
            }
        }
        let mut terminal_rules = vec![Vec::new(); self.terminals.len()];
        let mut pair_rules = BTreeSet::new();
        for a in 0..count {
            for (lhs, rhs) in &nonempty {
                if !unit[a][*lhs] {
                    continue;
                }
                match rhs[..] {
                    [T(t)] => terminal_rules[t].push(a),
                    [N(b), N(c)] => {
                        pair_rules.insert((a, b, c));
                    }
                    _ => {}
                }
            }
        }
        for list in &mut terminal_rules {
            list.sort_unstable();
            list.dedup();
        }
        CnfGrammar {
            nonterminals: count,
            start,
            accepts_empty: nullable[start],
            terminal_rules,
            pair_rules: pair_rules.into_iter().collect(),
        }
    }
}

/// A grammar whose rules are `A → t` and `A → B C`, plus a flag for `λ`.
#[derive(Clone, Debug)]
pub struct CnfGrammar {
    nonterminals: usize,
    start: usize,
    accepts_empty: bool,
    terminal_rules: Vec<Vec<usize>>,
    pair_rules: Vec<(usize, usize, usize)>,
}

impl CnfGrammar {
    pub fn nonterminal_count(&self) -> usize {
        self.nonterminals
    }

    pub fn rule_count(&self) -> usize {
        self.pair_rules.len() + self.terminal_rules.iter().map(Vec::len).sum::<usize>()
    }

    /// CYK over terminal indices.
    pub fn accepts(&self, word: &[usize]) -> bool {
        let n = word.len();
        if n == 0 {
            return self.accepts_empty;
        }
        let k = self.nonterminals;
        // table[(len−1)·n + i] holds the nonterminals deriving word[i..i+len].
        let mut table = vec![vec![false; k]; n * n];
        for (i, &t) in word.iter().enumerate() {
            let Some(heads) = self.terminal_rules.get(t) else { return false };
            for &a in heads {
                table[i][a] = true;
            }
        }
        for len in 2..=n {
            for i in 0..=n - len {
                let mut cell = vec![false; k];
                for split in 1..len {
                    let left = &table[(split - 1) * n + i];
                    let right = &table[(len - split - 1) * n + i + split];
                    for &(a, b, c) in &self.pair_rules {
                        if left[b] && right[c] {
                            cell[a] = true;
                        }
                    }
                }
                table[(len - 1) * n + i] = cell;
            }
        }
        table[(n - 1) * n][self.start]
    }

    pub fn accepts_word(&self, w: &Word) -> bool {
        let letters: Vec<usize> = w.letters().iter().map(|l| l.index()).collect();
        self.accepts(&letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eraser::ERASER;

    fn l3_cnf(chars: &str) -> (Alphabet, CnfGrammar) {
        let alphabet = Alphabet::new(chars.chars().map(String::from).chain([ERASER.to_string()])).unwrap();
        let cnf = Grammar::l3(&alphabet, ERASER).unwrap().to_cnf();
        (alphabet, cnf)
    }

    #[test]
    fn l3_grammar_examples() {
        let (alphabet, cnf) = l3_cnf("a");
        let accepts = |s: &str| cnf.accepts_word(&alphabet.parse_word(s).unwrap());
        assert!(accepts("@"));
        assert!(accepts("a↢"));
        assert!(accepts("aa↢↢"));
        assert!(accepts("a↢a↢"));
        assert!(!accepts("a↢↢"));
        assert!(!accepts("↢a"));
        assert!(!accepts("a"));
    }

    #[test]
    fn balanced_parentheses() {
        use GSymbol::*;
        // S → ( S ) S | λ
        let g = Grammar::new(
            vec!["S".into()],
            vec!["(".into(), ")".into()],
            vec![(0, vec![T(0), N(0), T(1), N(0)]), (0, vec![])],
            0,
        )
        .unwrap();
        let cnf = g.to_cnf();
        assert!(cnf.accepts(&[0, 0, 1, 1, 0, 1]));
        assert!(!cnf.accepts(&[1, 0]));
        assert!(cnf.accepts(&[]));
    }

    #[test]
    fn unit_chains_are_collapsed() {
        use GSymbol::*;
        // S → A, A → B, B → x
        let g = Grammar::new(
            vec!["S".into(), "A".into(), "B".into()],
            vec!["x".into()],
            vec![(0, vec![N(1)]), (1, vec![N(2)]), (2, vec![T(0)])],
            0,
        )
        .unwrap();
        let cnf = g.to_cnf();
        assert!(cnf.accepts(&[0]));
        assert!(!cnf.accepts(&[]));
        assert!(!cnf.accepts(&[0, 0]));
    }
}
