//! Membership of lasso words in ω-powers `L^∞`, by searching factorizations
//! whose blocks have bounded length.
//!
//! For `x = u·v^ω` the cut positions are normalized to `0..|u|+|v|`, so an
//! ω-factorization with blocks of length at most `B` is an infinite path
//! from node 0, which exists iff node 0 reaches a cycle.

use std::collections::VecDeque;
use std::fmt;

use crate::catalog::LanguagePredicate;
use crate::error::{Error, Result};
use crate::words::{enumerate_words, LassoWord, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub block: Word,
}

#[derive(Clone, Debug)]
pub struct FactorizationGraph {
    prefix_len: usize,
    period_len: usize,
    bound: usize,
    /// Outgoing edges per node, by increasing block length.
    out: Vec<Vec<Edge>>,
}

impl FactorizationGraph {
    pub fn node_count(&self) -> usize {
        self.out.len()
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn edges_from(&self, node: usize) -> &[Edge] {
        &self.out[node]
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.out.iter().flatten()
    }

    /// Node of the actual position `m` of the unrolled word.
    pub fn normalize(&self, m: usize) -> usize {
        if m < self.prefix_len {
            m
        } else {
            self.prefix_len + (m - self.prefix_len) % self.period_len
        }
    }

    fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[node].iter().map(|e| e.to)
    }

    /// Shortest path of nodes from `from` to `to` using at least one edge.
    fn path(&self, from: usize, to: usize) -> Option<Vec<usize>> {
        let mut parent = vec![usize::MAX; self.node_count()];
        let mut queue = VecDeque::new();
        for s in self.successors(from) {
            if parent[s] == usize::MAX {
                parent[s] = from;
                queue.push_back(s);
            }
        }
        while let Some(n) = queue.pop_front() {
            if n == to {
                let mut path = vec![to];
                let mut cur = to;
                loop {
                    cur = parent[cur];
                    path.push(cur);
                    if cur == from && path.len() > 1 {
                        break;
                    }
                }
                path.reverse();
                return Some(path);
            }
            for s in self.successors(n) {
                if parent[s] == usize::MAX {
                    parent[s] = n;
                    queue.push_back(s);
                }
            }
        }
        None
    }
}

pub fn build_graph(l: &LanguagePredicate, x: &LassoWord, bound: usize) -> Result<FactorizationGraph> {
    if bound == 0 {
        return Err(Error::Precondition("block bound must be ≥ 1".into()));
    }
    let (u, v) = (x.prefix().len(), x.period().len());
    let unrolled = x.take(u + v + bound);
    let mut graph = FactorizationGraph { prefix_len: u, period_len: v, bound, out: vec![Vec::new(); u + v] };
    for p in 0..u + v {
        for len in 1..=bound {
            let block = unrolled.slice(p, p + len);
            if l.decide(&block) {
                let to = graph.normalize(p + len);
                graph.out[p].push(Edge { from: p, to, block });
            }
        }
    }
    Ok(graph)
}

/// An eventually periodic cut schedule: `path` leads from node 0 to the
/// first node of `cycle`, which returns to itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaWitness {
    /// Nodes from 0 up to and including the cycle entry.
    pub path: Vec<usize>,
    /// Cycle nodes starting and ending at the entry.
    pub cycle: Vec<usize>,
    /// Blocks read along `path` and then once around `cycle`.
    pub blocks: Vec<Word>,
    pub prefix_blocks: usize,
}

impl OmegaWitness {
    /// The blocks of the factorization with the cycle taken `reps` times.
    pub fn unroll(&self, reps: usize) -> Vec<Word> {
        let (head, cycle) = self.blocks.split_at(self.prefix_blocks);
        let mut out = head.to_vec();
        for _ in 0..reps {
            out.extend_from_slice(cycle);
        }
        out
    }

    /// Actual cut positions along the path and the first cycle pass.
    pub fn cuts(&self) -> Vec<usize> {
        let mut cuts = vec![0];
        for b in &self.blocks {
            cuts.push(cuts.last().unwrap() + b.len());
        }
        cuts
    }
}

impl fmt::Display for OmegaWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cuts = self.cuts();
        let join = |xs: &[usize]| xs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "cut@{}, cycle=[{}]",
            join(&cuts[..=self.prefix_blocks]),
            join(&cuts[self.prefix_blocks..])
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaVerdict {
    Member(OmegaWitness),
    /// No factorization into blocks of length at most `bound`.
    NoBoundedFactorization { bound: usize },
}

impl OmegaVerdict {
    pub fn is_member(&self) -> bool {
        matches!(self, OmegaVerdict::Member(_))
    }
}

fn block_of(graph: &FactorizationGraph, from: usize, to: usize) -> Word {
    graph.out[from].iter().find(|e| e.to == to).expect("path uses edges").block.clone()
}

/// Decides membership relative to the block bound.
pub fn opower_member_bounded(l: &LanguagePredicate, x: &LassoWord, bound: usize) -> Result<OmegaVerdict> {
    let graph = build_graph(l, x, bound)?;
    let mut parent = vec![usize::MAX; graph.node_count()];
    parent[0] = 0;
    let mut order = vec![0];
    let mut i = 0;
    while i < order.len() {
        let n = order[i];
        i += 1;
        for s in graph.successors(n) {
            if parent[s] == usize::MAX {
                parent[s] = n;
                order.push(s);
            }
        }
    }
    for &entry in &order {
        let Some(cycle) = graph.path(entry, entry) else { continue };
        let mut path = vec![entry];
        let mut cur = entry;
        while cur != 0 {
            cur = parent[cur];
            path.push(cur);
        }
        path.reverse();
        let mut blocks: Vec<Word> = path.windows(2).map(|w| block_of(&graph, w[0], w[1])).collect();
        let prefix_blocks = blocks.len();
        blocks.extend(cycle.windows(2).map(|w| block_of(&graph, w[0], w[1])));
        return Ok(OmegaVerdict::Member(OmegaWitness { path, cycle, blocks, prefix_blocks }));
    }
    Ok(OmegaVerdict::NoBoundedFactorization { bound })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Escalation {
    pub verdict: OmegaVerdict,
    /// Bounds tried, in order; the last one produced `verdict`.
    pub tried: Vec<usize>,
}

/// Tries `B = 1, 2, 4, …` and finally `B_max`, stopping at the first member.
pub fn opower_member_escalating(l: &LanguagePredicate, x: &LassoWord, max_bound: usize) -> Result<Escalation> {
    if max_bound == 0 {
        return Err(Error::Precondition("block bound must be ≥ 1".into()));
    }
    let mut bounds: Vec<usize> = std::iter::successors(Some(1usize), |b| b.checked_mul(2))
        .take_while(|&b| b < max_bound)
        .collect();
    bounds.push(max_bound);
    let mut tried = Vec::new();
    for b in bounds {
        tried.push(b);
        let verdict = opower_member_bounded(l, x, b)?;
        if verdict.is_member() {
            return Ok(Escalation { verdict, tried });
        }
    }
    Ok(Escalation { verdict: OmegaVerdict::NoBoundedFactorization { bound: max_bound }, tried })
}

/// Whether `w` splits into nonempty `L`-blocks (`λ` always does).
pub fn kleene_star_member(l: &LanguagePredicate, w: &Word) -> bool {
    let n = w.len();
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for j in 1..=n {
        ok[j] = (0..j).any(|i| ok[i] && l.decide(&w.slice(i, j)));
    }
    ok[n]
}

/// Whether `w` is a prefix of some element of `L^∞`, looking ahead through
/// nonempty `L`-words of length at most `probe` for the unfinished block.
pub fn opower_prefix_member(l: &LanguagePredicate, w: &Word, probe: usize) -> Result<bool> {
    let members: Vec<Word> = enumerate_words(l.alphabet(), probe).filter(|y| !y.is_empty() && l.decide(y)).collect();
    if members.is_empty() {
        return Err(Error::Precondition(format!("no nonempty word of {} within length {probe}", l.name())));
    }
    let w = w.recode(l.alphabet())?;
    let n = w.len();
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for j in 1..=n {
        ok[j] = (0..j).any(|i| ok[i] && l.decide(&w.slice(i, j)));
    }
    Ok((0..=n).any(|i| {
        ok[i] && {
            let rest = w.slice(i, n);
            rest.is_empty() || members.iter().any(|y| rest.len() < y.len() && rest.is_prefix_of(y))
        }
    }))
}
