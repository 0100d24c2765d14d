//! Pushdown automata with λ-transitions and a bounded membership simulator.
//!
//! A machine is a 7-tuple `(Q, Σ, Γ, q₀, Z₀, δ, F)`; δ is stored as a sorted
//! set of 5-tuples `(q, a|λ, Z, p, β)` where `β` replaces the top symbol `Z`
//! and `β[0]` becomes the new top. Acceptance is by final state after the
//! whole input has been read.

mod export;
pub mod machines;

use std::collections::{HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::words::{enumerate_words, Alphabet, Letter, Word};

pub use export::ExportFormat;

/// Index into the stack alphabet Γ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StackSymbol(u16);

impl StackSymbol {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub from: usize,
    /// `None` for a λ-transition.
    pub read: Option<Letter>,
    pub top: StackSymbol,
    pub to: usize,
    /// Replacement for `top`, new top first.
    pub push: Vec<StackSymbol>,
}

/// Stack discipline of a machine, read off its stack alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CounterShape {
    /// Γ = {Z₀}.
    Finite,
    /// Γ = {Z₀, z}.
    OneCounter,
    /// Γ = {Z₀, z₀, …, z_{k−1}}; reachable stacks stay in `z_{k−1}* … z₀* Z₀`,
    /// with the `zᵢ` ordered as listed in Γ.
    IteratedCounter(usize),
}

#[derive(Clone, Debug)]
pub struct PushdownAutomaton {
    states: Vec<String>,
    input: Alphabet,
    stack: Vec<String>,
    bottom: StackSymbol,
    initial: usize,
    finals: Vec<bool>,
    transitions: Vec<Transition>,
    // Rule indices keyed by `state * |Γ| + top`.
    index: Vec<Vec<usize>>,
}

impl PartialEq for PushdownAutomaton {
    fn eq(&self, other: &Self) -> bool {
        self.states == other.states
            && self.input == other.input
            && self.stack == other.stack
            && self.bottom == other.bottom
            && self.initial == other.initial
            && self.finals == other.finals
            && self.transitions == other.transitions
    }
}

impl Eq for PushdownAutomaton {}

/// A configuration `(q, position, γ)`; the stack is stored bottom first, so
/// `stack[0]` is always Z₀.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub state: usize,
    pub position: usize,
    pub stack: Vec<StackSymbol>,
}

impl Configuration {
    pub fn top(&self) -> StackSymbol {
        *self.stack.last().expect("Z₀ is never popped")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MembershipVerdict {
    /// The accepting run, initial configuration first.
    Accepted(Vec<Configuration>),
    /// The bounded search closed without discarding anything.
    RejectedProven,
    RejectedAtBound(Bounds),
}

impl MembershipVerdict {
    pub fn is_accepted(&self) -> bool {
        matches!(self, MembershipVerdict::Accepted(_))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Largest stack height kept; taller configurations are discarded.
    pub stack: usize,
    /// Largest number of configurations expanded.
    pub steps: usize,
}

impl Bounds {
    /// `stack = (|w|+2)·|Q|`, `steps = stack·|Q|·(|w|+1)`.
    pub fn default_for(m: &PushdownAutomaton, input_len: usize) -> Self {
        let q = m.states.len();
        let stack = (input_len + 2) * q;
        Bounds { stack, steps: stack * q * (input_len + 1) }
    }
}

/// Full report of one bounded exploration.
#[derive(Clone, Debug)]
pub struct Simulation {
    pub verdict: MembershipVerdict,
    pub expanded: usize,
    /// Reached configurations whose stack breaks the declared counter shape.
    pub shape_violations: Vec<Configuration>,
}

/// Accepted words up to a length, with the undecided ones kept apart.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Enumeration {
    pub accepted: Vec<Word>,
    pub undecided: Vec<Word>,
}

impl PushdownAutomaton {
    pub fn new(
        states: Vec<String>,
        input: Alphabet,
        stack: Vec<String>,
        bottom: StackSymbol,
        initial: usize,
        finals: Vec<bool>,
        mut transitions: Vec<Transition>,
    ) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidAutomaton(msg));
        if states.is_empty() {
            return bad("no states".into());
        }
        if let Some(dup) = first_duplicate(&states) {
            return bad(format!("duplicate state `{dup}`"));
        }
        if let Some(dup) = first_duplicate(&stack) {
            return bad(format!("duplicate stack symbol `{dup}`"));
        }
        if bottom.index() >= stack.len() {
            return bad("bottom symbol not in the stack alphabet".into());
        }
        if initial >= states.len() || finals.len() != states.len() {
            return bad("initial or final states out of range".into());
        }
        for t in &transitions {
            if t.from >= states.len() || t.to >= states.len() {
                return bad(format!("transition {t:?} uses an unknown state"));
            }
            if t.read.is_some_and(|l| l.index() >= input.len()) {
                return bad(format!("transition {t:?} reads an unknown letter"));
            }
            if t.top.index() >= stack.len() || t.push.iter().any(|s| s.index() >= stack.len()) {
                return bad(format!("transition {t:?} uses an unknown stack symbol"));
            }
            let bottoms = t.push.iter().filter(|&&s| s == bottom).count();
            let ok = if t.top == bottom {
                bottoms == 1 && t.push.last() == Some(&bottom)
            } else {
                bottoms == 0
            };
            if !ok {
                return bad(format!(
                    "transition from `{}` moves the bottom symbol `{}`",
                    states[t.from], stack[bottom.index()]
                ));
            }
        }
        transitions.sort();
        transitions.dedup();
        let mut index = vec![Vec::new(); states.len() * stack.len()];
        for (i, t) in transitions.iter().enumerate() {
            index[t.from * stack.len() + t.top.index()].push(i);
        }
        Ok(PushdownAutomaton { states, input, stack, bottom, initial, finals, transitions, index })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn input(&self) -> &Alphabet {
        &self.input
    }

    pub fn stack_alphabet(&self) -> &[String] {
        &self.stack
    }

    pub fn bottom(&self) -> StackSymbol {
        self.bottom
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn stack_name(&self, s: StackSymbol) -> &str {
        &self.stack[s.index()]
    }

    pub fn counter_shape(&self) -> CounterShape {
        match self.stack.len() {
            1 => CounterShape::Finite,
            2 => CounterShape::OneCounter,
            n => CounterShape::IteratedCounter(n - 1),
        }
    }

    /// Rank of a counter symbol in the shape order; the bottom ranks lowest.
    fn rank(&self, s: StackSymbol) -> usize {
        if s == self.bottom {
            0
        } else if s.index() < self.bottom.index() {
            s.index() + 1
        } else {
            s.index()
        }
    }

    fn respects_shape(&self, stack: &[StackSymbol]) -> bool {
        stack.windows(2).all(|p| self.rank(p[0]) <= self.rank(p[1]))
    }

    /// At most one applicable rule per (state, letter|λ, top), and no λ-rule
    /// competing with a reading rule.
    pub fn is_deterministic(&self) -> bool {
        self.index.iter().all(|rules| {
            let reads: Vec<Option<Letter>> = rules.iter().map(|&i| self.transitions[i].read).collect();
            let has_lambda = reads.contains(&None);
            let mut seen = reads.clone();
            seen.sort();
            seen.dedup();
            seen.len() == reads.len() && (!has_lambda || reads.len() == 1)
        })
    }

    pub fn is_real_time(&self) -> bool {
        self.transitions.iter().all(|t| t.read.is_some())
    }

    pub fn initial_configuration(&self) -> Configuration {
        Configuration { state: self.initial, position: 0, stack: vec![self.bottom] }
    }

    /// Successors of `c` by one λ-transition or one transition reading
    /// `input[c.position]`.
    pub fn step(&self, c: &Configuration, input: &Word) -> Vec<Configuration> {
        let rules = &self.index[c.state * self.stack.len() + c.top().index()];
        let next_letter = input.letters().get(c.position).copied();
        rules
            .iter()
            .map(|&i| &self.transitions[i])
            .filter_map(|t| {
                let position = match t.read {
                    None => c.position,
                    Some(a) if Some(a) == next_letter => c.position + 1,
                    Some(_) => return None,
                };
                let mut stack = c.stack.clone();
                stack.pop();
                stack.extend(t.push.iter().rev());
                Some(Configuration { state: t.to, position, stack })
            })
            .collect()
    }

    /// Breadth-first search over configurations within `bounds`.
    pub fn simulate(&self, w: &Word, bounds: Bounds) -> Result<Simulation> {
        self.input.check_same(w.alphabet())?;
        let start = self.initial_configuration();
        let mut arena: Vec<(Configuration, Option<usize>)> = vec![(start.clone(), None)];
        let mut seen: HashMap<Configuration, usize> = HashMap::from([(start, 0)]);
        let mut queue = VecDeque::from([0usize]);
        let mut discarded = false;
        let mut expanded = 0;
        let mut shape_violations = Vec::new();
        while let Some(id) = queue.pop_front() {
            let c = arena[id].0.clone();
            if c.position == w.len() && self.finals[c.state] {
                let mut trace = vec![c];
                let mut cur = arena[id].1;
                while let Some(p) = cur {
                    trace.push(arena[p].0.clone());
                    cur = arena[p].1;
                }
                trace.reverse();
                return Ok(Simulation { verdict: MembershipVerdict::Accepted(trace), expanded, shape_violations });
            }
            if expanded >= bounds.steps {
                discarded = true;
                break;
            }
            expanded += 1;
            for next in self.step(&c, w) {
                if next.stack.len() > bounds.stack {
                    discarded = true;
                    continue;
                }
                if seen.contains_key(&next) {
                    continue;
                }
                if !self.respects_shape(&next.stack) {
                    shape_violations.push(next.clone());
                }
                let nid = arena.len();
                seen.insert(next.clone(), nid);
                arena.push((next, Some(id)));
                queue.push_back(nid);
            }
        }
        let verdict = if discarded {
            MembershipVerdict::RejectedAtBound(bounds)
        } else {
            MembershipVerdict::RejectedProven
        };
        Ok(Simulation { verdict, expanded, shape_violations })
    }

    pub fn accepts_within(&self, w: &Word, bounds: Bounds) -> Result<MembershipVerdict> {
        Ok(self.simulate(w, bounds)?.verdict)
    }

    /// Membership with the default bounds.
    pub fn accepts(&self, w: &Word) -> Result<MembershipVerdict> {
        self.accepts_within(w, Bounds::default_for(self, w.len()))
    }

    /// Accepted words of length at most `max_len`, in enumeration order.
    pub fn enumerate_accepted(&self, max_len: usize) -> Enumeration {
        let mut out = Enumeration::default();
        for w in enumerate_words(&self.input, max_len) {
            match self.accepts(&w).expect("same alphabet") {
                MembershipVerdict::Accepted(_) => out.accepted.push(w),
                MembershipVerdict::RejectedProven => {}
                MembershipVerdict::RejectedAtBound(_) => out.undecided.push(w),
            }
        }
        out
    }

    pub fn describe_configuration(&self, c: &Configuration) -> String {
        let stack: Vec<&str> = c.stack.iter().rev().map(|&s| self.stack_name(s)).collect();
        format!("({}, {}, {})", self.states[c.state], c.position, stack.join(""))
    }
}

impl fmt::Display for PushdownAutomaton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.export(ExportFormat::Dot))
    }
}

fn first_duplicate(names: &[String]) -> Option<&String> {
    let mut seen = std::collections::HashSet::new();
    names.iter().find(|n| !seen.insert(n.as_str()))
}

type NamedRule = (String, Option<String>, String, String, Vec<String>);

/// Name-based construction helper for hand-written machines.
pub struct MachineBuilder {
    input: Alphabet,
    states: Vec<String>,
    finals: Vec<bool>,
    stack: Vec<String>,
    rules: Vec<NamedRule>,
}

impl MachineBuilder {
    /// `stack[0]` is the bottom symbol.
    pub fn new<S: AsRef<str>>(input: &Alphabet, stack: &[S]) -> Self {
        MachineBuilder {
            input: input.clone(),
            states: Vec::new(),
            finals: Vec::new(),
            stack: stack.iter().map(|s| s.as_ref().to_string()).collect(),
            rules: Vec::new(),
        }
    }

    pub fn state(&mut self, name: &str, is_final: bool) -> &mut Self {
        self.states.push(name.to_string());
        self.finals.push(is_final);
        self
    }

    pub fn rule(&mut self, from: &str, read: Option<&str>, top: &str, to: &str, push: &[&str]) -> &mut Self {
        self.rules.push((
            from.to_string(),
            read.map(str::to_string),
            top.to_string(),
            to.to_string(),
            push.iter().map(|s| s.to_string()).collect(),
        ));
        self
    }

    pub fn build(&self, initial: &str) -> Result<PushdownAutomaton> {
        let state = |n: &str| {
            self.states
                .iter()
                .position(|s| s == n)
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown state `{n}`")))
        };
        let sym = |n: &str| {
            self.stack
                .iter()
                .position(|s| s == n)
                .map(|i| StackSymbol(i as u16))
                .ok_or_else(|| Error::InvalidAutomaton(format!("unknown stack symbol `{n}`")))
        };
        let transitions = self
            .rules
            .iter()
            .map(|(from, read, top, to, push)| {
                Ok(Transition {
                    from: state(from)?,
                    read: read.as_deref().map(|a| self.input.letter(a)).transpose()?,
                    top: sym(top)?,
                    to: state(to)?,
                    push: push.iter().map(|p| sym(p)).collect::<Result<_>>()?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        PushdownAutomaton::new(
            self.states.clone(),
            self.input.clone(),
            self.stack.clone(),
            StackSymbol(0),
            state(initial)?,
            self.finals.clone(),
            transitions,
        )
    }
}

pub(crate) fn stack_symbol(i: usize) -> StackSymbol {
    StackSymbol(i as u16)
}
