//! Brute-force bounded congruence closure.
//!
//! The ball of bound `L` holds every term `w(x)` with `|w| ≤ L`. Starting
//! from the input relations, classes are merged until three rules reach a
//! fixpoint inside the ball:
//!
//! * congruence: `u ≡ v` gives `f(u) ≡ f(v)` when both fit;
//! * closed: `f(u) ≡ f(v)` gives `u ≡ v`;
//! * balanced: `f(u) ≡ g(v)` with `f ≠ g` is a clash.
//!
//! Every merge is a consequence of `⊟(R)`, so the result under-approximates
//! the presented congruence. It shares no code with the normalizer.
//!
//! Terms are numbered densely: generator-major, then by word length, then
//! by the word read as a base-`|Σ|` number with the outermost letter most
//! significant. Each class keeps one shortest member (its parents under
//! every symbol stand for all parents in the class) and one headed member
//! (its head and tail stand for all headed members).

use std::fmt::Write as _;

use crate::error::OracleError;
use crate::normalizer::{normalize, Decomposition, NotSemiPeano, ReplayError, Violation};
use crate::presentation::{GenId, Presentation, Term};
use crate::words::{Symbol, Word};

const UNSET: u32 = u32::MAX;
const NONE: u32 = u32::MAX - 1;
const MAX_BALL: usize = 1 << 27;

/// Shape of the ball of terms of word length at most `bound`.
#[derive(Clone, Debug)]
pub struct Ball {
    bound: usize,
    symbols: usize,
    generators: usize,
    per_generator: usize,
    /// `offsets[n]` = number of words shorter than `n`.
    offsets: Vec<usize>,
    powers: Vec<usize>,
}

impl Ball {
    pub fn new(symbols: usize, generators: usize, bound: usize) -> Result<Self, OracleError> {
        let mut offsets = Vec::with_capacity(bound + 2);
        let mut powers = Vec::with_capacity(bound + 1);
        let mut total = 0usize;
        let mut power = 1usize;
        for _ in 0..=bound {
            offsets.push(total);
            powers.push(power);
            total = total
                .checked_add(power)
                .filter(|t| *t <= MAX_BALL)
                .ok_or(OracleError::BallTooLarge { bound })?;
            power = power.saturating_mul(symbols);
        }
        offsets.push(total);
        if total.saturating_mul(generators) > MAX_BALL {
            return Err(OracleError::BallTooLarge { bound });
        }
        Ok(Ball {
            bound,
            symbols,
            generators,
            per_generator: total,
            offsets,
            powers,
        })
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    /// `|generators| · Σ_{k ≤ L} |Σ|^k`.
    pub fn size(&self) -> usize {
        self.per_generator * self.generators
    }

    fn len_of(&self, local: usize) -> usize {
        // offsets is strictly increasing when symbols > 0
        match self.offsets.binary_search(&local) {
            Ok(n) => n,
            Err(n) => n - 1,
        }
    }

    pub fn index(&self, t: &Term) -> Result<usize, OracleError> {
        let n = t.word.len();
        if n > self.bound {
            return Err(OracleError::BoundExceeded {
                len: n,
                bound: self.bound,
            });
        }
        let value = t
            .word
            .letters()
            .iter()
            .fold(0usize, |acc, s| acc * self.symbols + s.index());
        Ok(t.generator.index() * self.per_generator + self.offsets[n] + value)
    }

    pub fn term(&self, node: usize) -> Term {
        let g = node / self.per_generator;
        let local = node % self.per_generator;
        let n = self.len_of(local);
        let mut value = local - self.offsets[n];
        let mut letters = vec![Symbol(0); n];
        for slot in letters.iter_mut().rev() {
            *slot = Symbol((value % self.symbols) as u16);
            value /= self.symbols;
        }
        Term::new(Word::from_symbols(letters), GenId(g as u32))
    }

    fn word_len(&self, node: usize) -> usize {
        self.len_of(node % self.per_generator)
    }

    /// `(generator base, word length, word value)` of a node.
    fn locate(&self, node: usize) -> Loc {
        let g = node / self.per_generator;
        let local = node - g * self.per_generator;
        let n = self.len_of(local);
        Loc {
            base: g * self.per_generator,
            len: n,
            value: local - self.offsets[n],
        }
    }

    fn prepend_at(&self, loc: Loc, f: usize) -> Option<usize> {
        (loc.len < self.bound)
            .then(|| loc.base + self.offsets[loc.len + 1] + f * self.powers[loc.len] + loc.value)
    }

    /// `(head, tail)` for a non-bare node.
    fn split(&self, node: usize) -> Option<(usize, usize)> {
        let g = node / self.per_generator;
        let local = node % self.per_generator;
        let n = self.len_of(local);
        if n == 0 {
            return None;
        }
        let value = local - self.offsets[n];
        let head = value / self.powers[n - 1];
        let rest = value % self.powers[n - 1];
        Some((head, g * self.per_generator + self.offsets[n - 1] + rest))
    }
}

#[derive(Clone, Copy)]
struct Loc {
    base: usize,
    len: usize,
    value: usize,
}

/// Outcome of the closure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosureStatus {
    Consistent,
    /// Two merged terms with distinct head symbols.
    Clash { lhs: Term, rhs: Term },
}

/// Partition of the ball after closure.
#[derive(Clone, Debug)]
pub struct ClosureResult {
    ball: Ball,
    parent: Vec<u32>,
    status: ClosureStatus,
}

struct Closure<'a> {
    ball: &'a Ball,
    parent: Vec<u32>,
    rank: Vec<u8>,
    shortest: Vec<u32>,
    headed: Vec<u32>,
    pending: Vec<(u32, u32)>,
}

impl Closure<'_> {
    fn find(&mut self, mut x: u32) -> u32 {
        loop {
            let p = self.parent[x as usize];
            if p == x {
                return x;
            }
            let gp = self.parent[p as usize];
            self.parent[x as usize] = gp;
            x = gp;
        }
    }

    fn shortest_of(&self, root: u32) -> u32 {
        match self.shortest[root as usize] {
            UNSET => root,
            s => s,
        }
    }

    fn headed_of(&self, root: u32) -> Option<u32> {
        match self.headed[root as usize] {
            UNSET if self.ball.word_len(root as usize) > 0 => Some(root),
            UNSET | NONE => None,
            h => Some(h),
        }
    }

    /// Merges two classes; returns the clashing pair if balance fails.
    fn union(&mut self, a: u32, b: u32) -> Option<(u32, u32)> {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return None;
        }
        let (sa, sb) = (self.shortest_of(ra), self.shortest_of(rb));
        let (ha, hb) = (self.headed_of(ra), self.headed_of(rb));

        let (root, child) = if self.rank[ra as usize] < self.rank[rb as usize] {
            (rb, ra)
        } else {
            (ra, rb)
        };
        self.parent[child as usize] = root;
        if self.rank[ra as usize] == self.rank[rb as usize] {
            self.rank[root as usize] += 1;
        }
        let (loc_a, loc_b) = (self.ball.locate(sa as usize), self.ball.locate(sb as usize));
        self.shortest[root as usize] = if (loc_a.len, sa) <= (loc_b.len, sb) { sa } else { sb };

        match (ha, hb) {
            (Some(x), Some(y)) => {
                let (fx, tx) = self.ball.split(x as usize).unwrap();
                let (fy, ty) = self.ball.split(y as usize).unwrap();
                if fx != fy {
                    return Some((x, y));
                }
                self.pending.push((tx as u32, ty as u32));
                self.headed[root as usize] = x;
            }
            (h, None) | (None, h) => {
                self.headed[root as usize] = h.unwrap_or(NONE);
            }
        }

        for f in 0..self.ball.symbols {
            if let (Some(pa), Some(pb)) = (self.ball.prepend_at(loc_a, f), self.ball.prepend_at(loc_b, f)) {
                self.pending.push((pa as u32, pb as u32));
            }
        }
        None
    }
}

/// Least fixpoint of the seed, congruence, closed and balanced rules
/// within the ball of bound `bound`.
pub fn ball_closure(p: &Presentation, bound: usize) -> Result<ClosureResult, OracleError> {
    let ball = Ball::new(p.signature().len(), p.generators().len(), bound)?;
    let mut seeds = Vec::with_capacity(p.relations().len());
    for r in p.relations() {
        seeds.push((ball.index(&r.lhs)? as u32, ball.index(&r.rhs)? as u32));
    }
    Ok(close_ball(ball, &seeds))
}

fn close_ball(ball: Ball, seeds: &[(u32, u32)]) -> ClosureResult {
    let n = ball.size();
    let mut closure = Closure {
        ball: &ball,
        parent: (0..n as u32).collect(),
        rank: vec![0; n],
        shortest: vec![UNSET; n],
        headed: vec![UNSET; n],
        pending: Vec::new(),
    };
    let mut status = ClosureStatus::Consistent;
    'seeds: for &(a, b) in seeds {
        closure.pending.push((a, b));
        while let Some((x, y)) = closure.pending.pop() {
            if let Some((l, r)) = closure.union(x, y) {
                status = ClosureStatus::Clash {
                    lhs: ball.term(l as usize),
                    rhs: ball.term(r as usize),
                };
                break 'seeds;
            }
        }
    }
    let mut parent = closure.parent;
    for i in 0..n {
        let mut r = parent[i];
        while parent[r as usize] != r {
            r = parent[r as usize];
        }
        parent[i] = r;
    }
    ClosureResult {
        ball,
        parent,
        status,
    }
}

impl ClosureResult {
    pub fn ball(&self) -> &Ball {
        &self.ball
    }

    pub fn status(&self) -> &ClosureStatus {
        &self.status
    }

    pub fn is_consistent(&self) -> bool {
        self.status == ClosureStatus::Consistent
    }

    /// Class id (root node index) of a ball node.
    pub fn class_of_node(&self, node: usize) -> usize {
        self.parent[node] as usize
    }

    pub fn class_of(&self, t: &Term) -> Result<usize, OracleError> {
        Ok(self.class_of_node(self.ball.index(t)?))
    }

    pub fn same_class(&self, s: &Term, t: &Term) -> Result<bool, OracleError> {
        Ok(self.class_of(s)? == self.class_of(t)?)
    }

    pub fn class_count(&self) -> usize {
        self.parent
            .iter()
            .enumerate()
            .filter(|(i, p)| *i == **p as usize)
            .count()
    }

    /// For each node, the smallest node index in its class. Two results
    /// have the same partition iff their labels are equal.
    pub fn canonical_labels(&self) -> Vec<u32> {
        let mut min_of_root = vec![u32::MAX; self.parent.len()];
        for (i, &r) in self.parent.iter().enumerate() {
            let m = &mut min_of_root[r as usize];
            *m = (*m).min(i as u32);
        }
        self.parent.iter().map(|&r| min_of_root[r as usize]).collect()
    }

    /// Non-singleton classes as sorted node lists, ordered by first member.
    pub fn nontrivial_classes(&self) -> Vec<Vec<usize>> {
        self.collect_classes(usize::MAX).0
    }

    /// The first `limit` non-singleton classes and the total number of them.
    fn collect_classes(&self, limit: usize) -> (Vec<Vec<usize>>, usize) {
        let mut size = vec![0u32; self.parent.len()];
        for &r in &self.parent {
            size[r as usize] += 1;
        }
        let total = size.iter().filter(|&&c| c > 1).count();
        let mut slot = vec![u32::MAX; self.parent.len()];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (i, &r) in self.parent.iter().enumerate() {
            let r = r as usize;
            if size[r] < 2 {
                continue;
            }
            if slot[r] == u32::MAX {
                if classes.len() == limit {
                    size[r] = 0;
                    continue;
                }
                slot[r] = classes.len() as u32;
                classes.push(Vec::with_capacity(size[r] as usize));
            }
            classes[slot[r] as usize].push(i);
        }
        (classes, total)
    }
}

/// Answer of a bounded equality query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OracleAnswer {
    Equal,
    /// Inconclusive: not merged inside the ball.
    NotMergedWithin(usize),
    Clash,
}

pub fn oracle_equal(p: &Presentation, s: &Term, t: &Term, bound: usize) -> Result<OracleAnswer, OracleError> {
    let ball = Ball::new(p.signature().len(), p.generators().len(), bound)?;
    ball.index(s)?;
    ball.index(t)?;
    let closure = ball_closure(p, bound)?;
    if !closure.is_consistent() {
        return Ok(OracleAnswer::Clash);
    }
    Ok(if closure.same_class(s, t)? {
        OracleAnswer::Equal
    } else {
        OracleAnswer::NotMergedWithin(bound)
    })
}

/// `2 · (longest relation word) + 4`.
pub fn default_bound(p: &Presentation) -> usize {
    2 * p.max_relation_len() + 4
}

/// Canonical reps of a decomposition, as a trie grown by prepending
/// letters. Node ids are equal iff the elements are equal.
struct RepTrie<'a> {
    symbols: usize,
    omegas: Vec<&'a Word>,
    roots: Vec<u32>,
    factor: Vec<usize>,
    /// `j` with rep = ω[j..] when the rep is a proper suffix of ω.
    suffix_at: Vec<Option<u32>>,
    children: Vec<u32>,
}

impl<'a> RepTrie<'a> {
    fn new(d: &'a Decomposition, symbols: usize, capacity: usize) -> Self {
        let mut trie = RepTrie {
            symbols,
            omegas: d.factors().iter().map(|f| f.omega()).collect(),
            roots: Vec::new(),
            factor: Vec::with_capacity(capacity),
            suffix_at: Vec::with_capacity(capacity),
            children: Vec::with_capacity(capacity * symbols),
        };
        for i in 0..trie.omegas.len() {
            let w = trie.omegas[i];
            let j = (!w.is_empty()).then_some(w.len() as u32);
            let root = trie.node(i, j);
            trie.roots.push(root);
        }
        trie
    }

    fn node(&mut self, factor: usize, suffix_at: Option<u32>) -> u32 {
        self.factor.push(factor);
        self.suffix_at.push(suffix_at);
        self.children.resize(self.children.len() + self.symbols, UNSET);
        (self.factor.len() - 1) as u32
    }

    /// The element `f(x)` for the element with id `x`.
    fn prepend(&mut self, x: u32, f: usize) -> u32 {
        let slot = x as usize * self.symbols + f;
        if self.children[slot] != UNSET {
            return self.children[slot];
        }
        let i = self.factor[x as usize];
        let id = match self.suffix_at[x as usize] {
            Some(j) if self.omegas[i].letters()[j as usize - 1].index() == f => {
                if j == 1 {
                    self.roots[i]
                } else {
                    self.node(i, Some(j - 1))
                }
            }
            _ => self.node(i, None),
        };
        self.children[slot] = id;
        id
    }
}

/// Evaluates the decomposition's element for every node of the ball.
pub(crate) fn element_ids(d: &Decomposition, ball: &Ball) -> Vec<u32> {
    let mut trie = RepTrie::new(d, ball.symbols, ball.size() + d.factors().len());
    let mut ids = vec![0u32; ball.size()];
    for g in 0..ball.generators {
        let (i, image) = d.assignment().image(GenId(g as u32));
        let mut node = trie.roots[i];
        for s in image.letters().iter().rev() {
            node = trie.prepend(node, s.index());
        }
        let base = g * ball.per_generator;
        ids[base] = node;
        // Layer n holds head * |Σ|^(n-1) + tail value.
        for n in 1..=ball.bound {
            let (prev, here, width) = (base + ball.offsets[n - 1], base + ball.offsets[n], ball.powers[n - 1]);
            for head in 0..ball.symbols {
                for rest in 0..width {
                    ids[here + head * width + rest] = trie.prepend(ids[prev + rest], head);
                }
            }
        }
    }
    ids
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    /// The oracle derived a clash but the normalizer accepted.
    OracleClashButNormalized { lhs: Term, rhs: Term },
    /// The oracle merged two terms the normal form keeps apart.
    OracleMergedNormalizerSeparates { lhs: Term, rhs: Term },
    /// The normalizer's certificate does not replay.
    ViolationDoesNotReplay(ReplayError),
}

#[derive(Clone, Debug)]
pub enum NormalizerVerdict {
    Decomposed(Decomposition),
    Rejected(Violation),
}

/// Comparison of the normalizer against ball closure.
#[derive(Clone, Debug)]
pub struct Report {
    pub bound: usize,
    pub ball_size: usize,
    pub class_count: usize,
    pub status: ClosureStatus,
    pub normalizer: Option<NormalizerVerdict>,
    pub discrepancies: Vec<Discrepancy>,
    /// Up to 20 non-singleton classes.
    pub sample_classes: Vec<Vec<Term>>,
    pub nontrivial_class_count: usize,
}

impl Report {
    pub fn is_consistent(&self) -> bool {
        self.discrepancies.is_empty()
    }

    /// Plain-text rendering: ball size, class count, status, samples.
    pub fn render(&self, p: &Presentation) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "bound {}", self.bound);
        let _ = writeln!(out, "ball size {}", self.ball_size);
        let _ = writeln!(out, "classes {}", self.class_count);
        match &self.status {
            ClosureStatus::Consistent => {
                let _ = writeln!(out, "status consistent");
            }
            ClosureStatus::Clash { lhs, rhs } => {
                let _ = writeln!(
                    out,
                    "status clash: {} = {}",
                    p.format_term(lhs),
                    p.format_term(rhs)
                );
            }
        }
        match &self.normalizer {
            None => {}
            Some(NormalizerVerdict::Decomposed(d)) => {
                let factors: Vec<String> = d
                    .normal_form()
                    .factors()
                    .iter()
                    .map(|w| p.signature().format_word(w))
                    .collect();
                let _ = writeln!(out, "normalizer factors [{}]", factors.join(", "));
            }
            Some(NormalizerVerdict::Rejected(v)) => {
                let sig = p.signature();
                let _ = writeln!(
                    out,
                    "normalizer rejects: clash {} ≠ {}",
                    sig.name(v.clash.0),
                    sig.name(v.clash.1)
                );
            }
        }
        if self.normalizer.is_some() {
            if self.discrepancies.is_empty() {
                let _ = writeln!(out, "cross-check agrees");
            }
            for d in &self.discrepancies {
                let line = match d {
                    Discrepancy::OracleClashButNormalized { lhs, rhs } => format!(
                        "discrepancy: oracle clash {} = {} but normalizer accepted",
                        p.format_term(lhs),
                        p.format_term(rhs)
                    ),
                    Discrepancy::OracleMergedNormalizerSeparates { lhs, rhs } => format!(
                        "discrepancy: oracle merges {} and {} but the normal form separates them",
                        p.format_term(lhs),
                        p.format_term(rhs)
                    ),
                    Discrepancy::ViolationDoesNotReplay(e) => {
                        format!("discrepancy: violation does not replay: {e}")
                    }
                };
                let _ = writeln!(out, "{line}");
            }
        }
        let _ = writeln!(
            out,
            "sample classes ({} of {} non-trivial)",
            self.sample_classes.len(),
            self.nontrivial_class_count
        );
        for class in &self.sample_classes {
            let shown: Vec<String> = class.iter().take(8).map(|t| p.format_term(t)).collect();
            let more = if class.len() > 8 {
                format!(", ... ({} members)", class.len())
            } else {
                String::new()
            };
            let _ = writeln!(out, "  {{{}{}}}", shown.join(", "), more);
        }
        out
    }
}

const SAMPLE_CLASSES: usize = 20;

fn summarize(closure: &ClosureResult) -> Report {
    let (classes, total) = closure.collect_classes(SAMPLE_CLASSES);
    Report {
        bound: closure.ball.bound,
        ball_size: closure.ball.size(),
        class_count: closure.class_count(),
        status: closure.status.clone(),
        normalizer: None,
        discrepancies: Vec::new(),
        nontrivial_class_count: total,
        sample_classes: classes
            .iter()
            .map(|c| c.iter().map(|&n| closure.ball.term(n)).collect())
            .collect(),
    }
}

/// Ball-closure report without consulting the normalizer.
pub fn oracle_report(p: &Presentation, bound: usize) -> Result<Report, OracleError> {
    let closure = ball_closure(p, bound)?;
    Ok(summarize(&closure))
}

/// Runs the normalizer and the oracle and compares them: an oracle clash
/// must be matched by a rejection, every rejection must replay, and every
/// oracle class must lie inside one element of the normal form.
pub fn cross_check(p: &Presentation, bound: usize) -> Result<Report, OracleError> {
    let closure = ball_closure(p, bound)?;
    let mut report = summarize(&closure);
    let mut discrepancies = Vec::new();
    let verdict = match normalize(p) {
        Ok(d) => {
            match &closure.status {
                ClosureStatus::Clash { lhs, rhs } => {
                    discrepancies.push(Discrepancy::OracleClashButNormalized {
                        lhs: lhs.clone(),
                        rhs: rhs.clone(),
                    });
                }
                ClosureStatus::Consistent => {
                    let ids = element_ids(&d, &closure.ball);
                    if let Some(node) = (0..ids.len()).find(|&i| ids[i] != ids[closure.class_of_node(i)]) {
                        discrepancies.push(Discrepancy::OracleMergedNormalizerSeparates {
                            lhs: closure.ball.term(node),
                            rhs: closure.ball.term(closure.class_of_node(node)),
                        });
                    }
                }
            }
            NormalizerVerdict::Decomposed(d)
        }
        Err(NotSemiPeano { violation }) => {
            if let Err(e) = violation.replay(p) {
                discrepancies.push(Discrepancy::ViolationDoesNotReplay(e));
            }
            NormalizerVerdict::Rejected(violation)
        }
    };
    report.normalizer = Some(verdict);
    report.discrepancies = discrepancies;
    Ok(report)
}
