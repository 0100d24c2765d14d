//! Hand-built machines for the catalog languages, and the substitution
//! `a ↦ L₃·a` lifted to pushdown automata.

use super::{stack_symbol, MachineBuilder, PushdownAutomaton, Transition};
use crate::eraser::{indexed_eraser, EraserAlphabet, ERASER};
use crate::error::{Error, Result};
use crate::words::Alphabet;

const BOTTOM: &str = "Z0";
const COUNTER: &str = "z";

/// Finite automaton for `P₁ = {0}`.
pub fn automaton_p1() -> PushdownAutomaton {
    let mut b = MachineBuilder::new(&Alphabet::digits(2), &[BOTTOM]);
    b.state("s0", false)
        .state("s1", true)
        .rule("s0", Some("0"), BOTTOM, "s1", &[BOTTOM]);
    b.build("s0").expect("well-formed")
}

/// Finite automaton for `P₂ = 0*1`.
pub fn automaton_p2() -> PushdownAutomaton {
    let mut b = MachineBuilder::new(&Alphabet::digits(2), &[BOTTOM]);
    b.state("s0", false)
        .state("s1", true)
        .rule("s0", Some("0"), BOTTOM, "s0", &[BOTTOM])
        .rule("s0", Some("1"), BOTTOM, "s1", &[BOTTOM]);
    b.build("s0").expect("well-formed")
}

/// Deterministic real-time one-counter machine for `L₃` over `base ∪ {eraser}`.
///
/// In `q1` a stack of height `h` (counting `Z₀`) stands for a surplus of `h`
/// base letters, so the machine knows when the surplus returns to zero
/// without a λ-move.
pub fn automaton_l3_with(base: &Alphabet, eraser: &str) -> Result<PushdownAutomaton> {
    let alphabet = EraserAlphabet::single(base, eraser)?;
    let mut b = MachineBuilder::new(alphabet.full(), &[BOTTOM, COUNTER]);
    b.state("q0", true).state("q1", false);
    for a in base.symbols() {
        b.rule("q0", Some(a), BOTTOM, "q1", &[BOTTOM])
            .rule("q1", Some(a), BOTTOM, "q1", &[COUNTER, BOTTOM])
            .rule("q1", Some(a), COUNTER, "q1", &[COUNTER, COUNTER]);
    }
    b.rule("q1", Some(eraser), COUNTER, "q1", &[])
        .rule("q1", Some(eraser), BOTTOM, "q0", &[BOTTOM]);
    b.build("q0")
}

pub fn automaton_l3(base: &Alphabet) -> Result<PushdownAutomaton> {
    automaton_l3_with(base, ERASER)
}

/// Input alphabet `{0, 1, d}` of `D` and `g(W)`.
pub fn d_alphabet() -> Alphabet {
    Alphabet::from_chars("01d").unwrap()
}

/// One-counter machine for `D = {u d v : |v| ∈ {2|u|, 2|u|+1}}`: two pushes
/// per letter of `u`, one pop per letter of `v` except for at most one letter
/// of `v` read without popping, acceptance on an empty counter.
pub fn automaton_d() -> PushdownAutomaton {
    let mut b = MachineBuilder::new(&d_alphabet(), &[BOTTOM, COUNTER]);
    b.state("p", false).state("r", false).state("r1", false).state("f", true);
    for c in ["0", "1"] {
        b.rule("p", Some(c), BOTTOM, "p", &[COUNTER, COUNTER, BOTTOM])
            .rule("p", Some(c), COUNTER, "p", &[COUNTER, COUNTER, COUNTER])
            .rule("r", Some(c), COUNTER, "r", &[])
            .rule("r", Some(c), COUNTER, "r1", &[COUNTER])
            .rule("r", Some(c), BOTTOM, "r1", &[BOTTOM])
            .rule("r1", Some(c), COUNTER, "r1", &[]);
    }
    b.rule("p", Some("d"), BOTTOM, "r", &[BOTTOM])
        .rule("p", Some("d"), COUNTER, "r", &[COUNTER])
        .rule("r", None, BOTTOM, "f", &[BOTTOM])
        .rule("r1", None, BOTTOM, "f", &[BOTTOM]);
    b.build("p").expect("well-formed")
}

/// One-counter machine for `g(W)`, `W = 0*1`, `g(a) = a·D`: a sequence of
/// `D`-blocks, each announced by its letter, the last one by `1`.
pub fn automaton_gw() -> PushdownAutomaton {
    let mut b = MachineBuilder::new(&d_alphabet(), &[BOTTOM, COUNTER]);
    b.state("s", false);
    for x in ["0", "1"] {
        b.state(&format!("u{x}"), false).state(&format!("v{x}"), false).state(&format!("w{x}"), false);
    }
    b.state("f", true);
    b.rule("s", Some("0"), BOTTOM, "u0", &[BOTTOM])
        .rule("s", Some("1"), BOTTOM, "u1", &[BOTTOM]);
    for x in ["0", "1"] {
        // v: no spare letter used yet; w: spare letter used.
        let (u, v, w) = (format!("u{x}"), format!("v{x}"), format!("w{x}"));
        let done = if x == "0" { "s" } else { "f" };
        for c in ["0", "1"] {
            b.rule(&u, Some(c), BOTTOM, &u, &[COUNTER, COUNTER, BOTTOM])
                .rule(&u, Some(c), COUNTER, &u, &[COUNTER, COUNTER, COUNTER])
                .rule(&v, Some(c), COUNTER, &v, &[])
                .rule(&v, Some(c), COUNTER, &w, &[COUNTER])
                .rule(&v, Some(c), BOTTOM, &w, &[BOTTOM])
                .rule(&w, Some(c), COUNTER, &w, &[]);
        }
        b.rule(&u, Some("d"), BOTTOM, &v, &[BOTTOM])
            .rule(&u, Some("d"), COUNTER, &v, &[COUNTER])
            .rule(&v, None, BOTTOM, done, &[BOTTOM])
            .rule(&w, None, BOTTOM, done, &[BOTTOM]);
    }
    b.build("s").expect("well-formed")
}

/// Machine for `h(L(m))` where `h(a) = L₃·a` and `L₃` uses the fresh `eraser`.
///
/// A fresh counter symbol is pushed on top of `m`'s stack while an `L₃`
/// block is read; `m` only moves when that counter is empty. Each state of
/// `m` is split into a clean copy (last letter consumed was fed to `m`) and
/// a dirty copy; only clean copies of final states accept. The new counter
/// symbol ranks above every symbol of `m`, so a `k`-iterated counter machine
/// becomes a `(k+1)`-iterated one.
pub fn substitute_machine(m: &PushdownAutomaton, eraser: &str) -> Result<PushdownAutomaton> {
    let alphabet = EraserAlphabet::single(m.input(), eraser)?;
    let base_len = m.input().len();
    let eraser_letter = alphabet.erasers()[0];
    let n = m.states().len();

    let mut stack = m.stack_alphabet().to_vec();
    let counter_name = if stack.len() == 1 {
        COUNTER.to_string()
    } else {
        let mut k = stack.len() - 1;
        while stack.contains(&format!("z{k}")) {
            k += 1;
        }
        format!("z{k}")
    };
    stack.push(counter_name);
    let counter = stack_symbol(stack.len() - 1);
    let old_symbols = m.stack_alphabet().len();

    // State q clean is q, dirty is n + q.
    let mut states: Vec<String> = m.states().to_vec();
    states.extend(m.states().iter().map(|s| format!("{s}/{eraser}")));
    if states.iter().collect::<std::collections::HashSet<_>>().len() != states.len() {
        return Err(Error::InvalidAutomaton("cannot split states into clean/dirty copies".into()));
    }
    let mut finals: Vec<bool> = (0..n).map(|q| m.is_final(q)).collect();
    finals.extend(std::iter::repeat_n(false, n));

    let mut transitions = Vec::new();
    for t in m.transitions() {
        for dirty in [0, n] {
            let to = match t.read {
                Some(_) => t.to,
                None => t.to + dirty,
            };
            transitions.push(Transition { from: t.from + dirty, to, ..t.clone() });
        }
    }
    for q in 0..n {
        for a in 0..base_len {
            let a = crate::words::Letter::new(a as u16);
            for dirty in [0, n] {
                for z in 0..old_symbols {
                    let z = stack_symbol(z);
                    transitions.push(Transition { from: q + dirty, read: Some(a), top: z, to: q + n, push: vec![counter, z] });
                }
            }
            transitions.push(Transition { from: q + n, read: Some(a), top: counter, to: q + n, push: vec![counter, counter] });
        }
        transitions.push(Transition { from: q + n, read: Some(eraser_letter), top: counter, to: q + n, push: vec![] });
    }
    PushdownAutomaton::new(
        states,
        alphabet.full().clone(),
        stack,
        m.bottom(),
        m.initial(),
        finals,
        transitions,
    )
}

/// Machine for `Pₙ`: `P₁`, `P₂`, then `P_{n}` obtained from `P₂` by `n−2`
/// substitutions, the first with `↢_{n−2}` and the last with `↢₁`.
pub fn automaton_pn(n: usize) -> Result<PushdownAutomaton> {
    match n {
        0 => Err(Error::Precondition("n must be ≥ 1".into())),
        1 => Ok(automaton_p1()),
        _ => {
            let mut m = automaton_p2();
            for level in (1..=n - 2).rev() {
                m = substitute_machine(&m, &indexed_eraser(level))?;
            }
            Ok(m)
        }
    }
}

/// Names accepted by [`by_name`].
pub const MACHINE_NAMES: &[&str] = &["p1", "p2", "l3", "d", "gw"];

/// Looks up a machine by catalog name (`pn:<k>` included).
pub fn by_name(name: &str) -> Result<PushdownAutomaton> {
    if let Some(k) = name.strip_prefix("pn:") {
        let k = k.parse().map_err(|_| Error::UnknownLanguage(name.to_string()))?;
        return automaton_pn(k);
    }
    match name {
        "p1" => Ok(automaton_p1()),
        "p2" => Ok(automaton_p2()),
        "l3" => automaton_l3(&Alphabet::from_chars("ab").unwrap()),
        "d" => Ok(automaton_d()),
        "gw" => Ok(automaton_gw()),
        _ => Err(Error::UnknownLanguage(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::{CounterShape, MembershipVerdict};
    use crate::words::Word;

    fn verdict(m: &PushdownAutomaton, w: &str) -> MembershipVerdict {
        m.accepts(&m.input().parse_word(w).unwrap()).unwrap()
    }

    fn texts(ws: &[Word]) -> Vec<String> {
        ws.iter().map(|w| w.to_text(false)).collect()
    }

    #[test]
    fn l3_examples() {
        let m = automaton_l3(&Alphabet::from_chars("a").unwrap()).unwrap();
        assert!(verdict(&m, "@").is_accepted());
        assert!(verdict(&m, "a↢").is_accepted());
        assert_eq!(verdict(&m, "a"), MembershipVerdict::RejectedProven);
        assert_eq!(verdict(&m, "↢a"), MembershipVerdict::RejectedProven);
        assert!(verdict(&m, "aa↢a↢↢").is_accepted());
        assert!(m.is_deterministic());
        assert!(m.is_real_time());
        assert_eq!(m.counter_shape(), CounterShape::OneCounter);
    }

    #[test]
    fn d_examples() {
        let m = automaton_d();
        assert!(verdict(&m, "d").is_accepted());
        assert!(verdict(&m, "0d00").is_accepted());
        assert!(verdict(&m, "0d000").is_accepted());
        assert_eq!(verdict(&m, "0d0"), MembershipVerdict::RejectedProven);
        assert_eq!(verdict(&m, "dd"), MembershipVerdict::RejectedProven);
        assert_eq!(m.counter_shape(), CounterShape::OneCounter);
    }

    #[test]
    fn p2_examples() {
        let m = automaton_p2();
        assert!(verdict(&m, "1").is_accepted());
        assert!(verdict(&m, "001").is_accepted());
        assert_eq!(verdict(&m, "10"), MembershipVerdict::RejectedProven);
        assert_eq!(m.counter_shape(), CounterShape::Finite);
    }

    #[test]
    fn gw_examples() {
        let m = automaton_gw();
        assert!(verdict(&m, "1d").is_accepted());
        assert!(verdict(&m, "0d01d").is_accepted());
        assert!(verdict(&m, "01d001d").is_accepted());
        assert_eq!(verdict(&m, "0d001d"), MembershipVerdict::RejectedProven);
        assert!(verdict(&m, "1d0").is_accepted());
        assert_eq!(verdict(&m, "1d00"), MembershipVerdict::RejectedProven);
    }

    #[test]
    fn enumeration_examples() {
        let p2 = automaton_p2().enumerate_accepted(2);
        assert_eq!(texts(&p2.accepted), ["1", "01"]);
        assert!(p2.undecided.is_empty());
        let l3 = automaton_l3(&Alphabet::from_chars("a").unwrap()).unwrap().enumerate_accepted(2);
        assert_eq!(texts(&l3.accepted), ["@", "a↢"]);
        assert_eq!(texts(&automaton_d().enumerate_accepted(1).accepted), ["d"]);
    }

    #[test]
    fn pn_machines_have_iterated_counter_shape() {
        assert_eq!(automaton_pn(2).unwrap().counter_shape(), CounterShape::Finite);
        assert_eq!(automaton_pn(3).unwrap().counter_shape(), CounterShape::OneCounter);
        assert_eq!(automaton_pn(4).unwrap().counter_shape(), CounterShape::IteratedCounter(2));
        let p3 = automaton_pn(3).unwrap();
        assert!(verdict(&p3, "0↢₁1").is_accepted());
        assert!(verdict(&p3, "1").is_accepted());
        assert!(!verdict(&p3, "↢₁").is_accepted());
        assert!(!verdict(&p3, "10↢₁").is_accepted());
    }
}
