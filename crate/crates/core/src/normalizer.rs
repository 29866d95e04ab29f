//! Normalisation of finite presentations into a free product of cyclic
//! algebras `P/ω₁ ⨿ … ⨿ P/ωₙ`.
//!
//! The procedure is a worklist over derived relations. Each relation is
//! first rewritten through the generators already eliminated, then peeled:
//! its longest common prefix is stripped, which is sound for any closed
//! congruence. What remains is either trivial, a definition `x = γ(y)` of
//! one generator in terms of another, a cycle `c = φ(c)`, or a pair of
//! terms with distinct head symbols, which no balanced congruence can
//! contain.
//!
//! Cycle words on one generator are combined as soon as they appear: from
//! `c = φ(c)` and `c = ψ(c)` we get `φ(c) = ψ(c)`, and peeling that either
//! produces `c = (φ\ψ)(c)` with strictly smaller total weight or a clash.
//!
//! Every derived fact is recorded together with the rule that produced it,
//! so a failure comes with a [`Violation`] that can be checked
//! independently with [`Violation::replay`].

use std::collections::VecDeque;
use std::fmt::Write as _;

use thiserror::Error;

use crate::cyclic::{CyclicAlgebra, Element};
use crate::error::SignatureMismatch;
use crate::presentation::{GenId, Presentation, Relation, Term};
use crate::words::{canonical_rotation, common_prefix_len, least_rotation_index, Signature, Symbol, Word};

/// Multiset of rotation-canonical cycle words, one per free factor, sorted
/// by length and then lexicographically. The empty word is a free factor.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct NormalForm {
    factors: Vec<Word>,
}

impl NormalForm {
    /// Canonicalises each word by rotation and sorts.
    pub fn from_factors(factors: impl IntoIterator<Item = Word>) -> Self {
        let mut factors: Vec<Word> = factors.into_iter().map(|w| canonical_rotation(&w)).collect();
        factors.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        NormalForm { factors }
    }

    pub fn factors(&self) -> &[Word] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// A cyclic factor with `ω ≠ 1` has no indecomposable element, so the
    /// algebra is Peano iff every factor is free.
    pub fn is_peano(&self) -> bool {
        self.factors.iter().all(Word::is_empty)
    }

    pub fn is_isomorphic(&self, other: &NormalForm) -> bool {
        self.factors == other.factors
    }
}

pub fn rank(nf: &NormalForm) -> usize {
    nf.rank()
}

pub fn is_peano(nf: &NormalForm) -> bool {
    nf.is_peano()
}

/// Isomorphism of two decompositions over the same signature.
pub fn is_isomorphic(a: &Decomposition, b: &Decomposition) -> Result<bool, SignatureMismatch> {
    if a.signature != b.signature {
        return Err(SignatureMismatch {
            left: a.signature.names().to_vec(),
            right: b.signature.names().to_vec(),
        });
    }
    Ok(a.normal_form.is_isomorphic(&b.normal_form))
}

/// Image of every input generator: a factor index and a word over that
/// factor's canonical generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAssignment {
    images: Vec<(usize, Word)>,
}

impl GeneratorAssignment {
    pub fn image(&self, g: GenId) -> (usize, &Word) {
        let (i, w) = &self.images[g.index()];
        (*i, w)
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (GenId, usize, &Word)> {
        self.images
            .iter()
            .enumerate()
            .map(|(g, (i, w))| (GenId(g as u32), *i, w))
    }
}

/// Successful normalisation: the normal form, one cyclic algebra per
/// factor (anchored at the rotation-canonical word), and the assignment.
#[derive(Clone, Debug)]
pub struct Decomposition {
    signature: Signature,
    normal_form: NormalForm,
    factors: Vec<CyclicAlgebra>,
    representatives: Vec<GenId>,
    assignment: GeneratorAssignment,
}

impl Decomposition {
    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn normal_form(&self) -> &NormalForm {
        &self.normal_form
    }

    pub fn factor(&self, i: usize) -> &CyclicAlgebra {
        &self.factors[i]
    }

    pub fn factors(&self) -> &[CyclicAlgebra] {
        &self.factors
    }

    /// The surviving generator for each factor; together a minimal
    /// generating set.
    pub fn representatives(&self) -> &[GenId] {
        &self.representatives
    }

    pub fn assignment(&self) -> &GeneratorAssignment {
        &self.assignment
    }

    pub fn rank(&self) -> usize {
        self.normal_form.rank()
    }

    /// The element denoted by a term: its factor and canonical rep.
    pub fn element(&self, t: &Term) -> (usize, Element) {
        let (i, image) = self.assignment.image(t.generator);
        (i, self.factors[i].element(&t.word.concat(image)))
    }

    /// Word problem for the presented algebra.
    pub fn equal(&self, s: &Term, t: &Term) -> bool {
        self.element(s) == self.element(t)
    }
}

/// Derivation rule that produced a step. Indices refer to earlier steps of
/// the same derivation (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Input relation, by position in the presentation.
    Seed { relation: usize },
    /// Common prefix stripped (by closedness) and sides possibly swapped.
    Peel { from: usize },
    /// The generator defined by `definition` (a fact `x = γ(y)`) replaced
    /// throughout `target`. Called a merge when `γ = 1`.
    Substitute { target: usize, definition: usize },
    /// From `c = φ(c)` and `c = ψ(c)`, the fact `φ(c) = ψ(c)`.
    CycleCombine { first: usize, second: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationStep {
    pub rule: Rule,
    pub lhs: Term,
    pub rhs: Term,
}

/// Certificate that no closed and balanced congruence contains the input
/// relations: a derivation ending in two terms with distinct heads.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub steps: Vec<DerivationStep>,
    pub clash: (Symbol, Symbol),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {message}")]
pub struct ReplayError {
    pub step: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("not a semi-Peano presentation")]
pub struct NotSemiPeano {
    pub violation: Violation,
}

fn substitute_term(t: &Term, x: GenId, gamma: &Word, y: GenId) -> Term {
    if t.generator == x {
        Term::new(t.word.concat(gamma), y)
    } else {
        t.clone()
    }
}

impl Violation {
    fn rule_name(&self, i: usize) -> &'static str {
        match self.steps[i].rule {
            Rule::Seed { .. } => "seed",
            Rule::Peel { .. } => "peel",
            Rule::Substitute { definition, .. } => {
                if self.steps[definition].rhs.word.is_empty() {
                    "merge"
                } else {
                    "substitute"
                }
            }
            Rule::CycleCombine { .. } => "cycle-combine",
        }
    }

    /// Numbered plain-text listing ending in `clash: f ≠ g`.
    pub fn render(&self, p: &Presentation) -> String {
        let mut out = String::new();
        for (i, step) in self.steps.iter().enumerate() {
            let origin = match step.rule {
                Rule::Seed { relation } => match p.relation_line(relation) {
                    Some(line) => format!("relation {} (line {line})", relation + 1),
                    None => format!("relation {}", relation + 1),
                },
                Rule::Peel { from } => format!("from {}", from + 1),
                Rule::Substitute { target, definition } => {
                    format!("{} using {}", target + 1, definition + 1)
                }
                Rule::CycleCombine { first, second } => format!("{}, {}", first + 1, second + 1),
            };
            let _ = writeln!(
                out,
                "{}. {} ({}): {} = {}",
                i + 1,
                self.rule_name(i),
                origin,
                p.format_term(&step.lhs),
                p.format_term(&step.rhs)
            );
        }
        let sig = p.signature();
        let _ = writeln!(out, "clash: {} ≠ {}", sig.name(self.clash.0), sig.name(self.clash.1));
        out
    }

    /// Re-derives every step from the presentation's relations and checks
    /// that the last step is a pair of distinctly-headed terms matching
    /// `clash`.
    pub fn replay(&self, p: &Presentation) -> Result<(), ReplayError> {
        let err = |step: usize, message: &str| ReplayError {
            step: step + 1,
            message: message.to_string(),
        };
        for (i, step) in self.steps.iter().enumerate() {
            let earlier = |j: usize| -> Result<&DerivationStep, ReplayError> {
                if j < i {
                    Ok(&self.steps[j])
                } else {
                    Err(err(i, "refers to a later step"))
                }
            };
            let (lhs, rhs) = (&step.lhs, &step.rhs);
            match step.rule {
                Rule::Seed { relation } => {
                    let r = p
                        .relations()
                        .get(relation)
                        .ok_or_else(|| err(i, "no such relation"))?;
                    if (&r.lhs, &r.rhs) != (lhs, rhs) {
                        return Err(err(i, "seed does not match the input relation"));
                    }
                }
                Rule::Peel { from } => {
                    let src = earlier(from)?;
                    let (a, b) = strip_common_prefix(&src.lhs, &src.rhs);
                    if !((&a, &b) == (lhs, rhs) || (&b, &a) == (lhs, rhs)) {
                        return Err(err(i, "peel does not strip the common prefix"));
                    }
                }
                Rule::Substitute { target, definition } => {
                    let t = earlier(target)?;
                    let d = earlier(definition)?;
                    if !d.lhs.is_bare() || d.lhs.generator == d.rhs.generator {
                        return Err(err(i, "definition is not of the form x = γ(y)"));
                    }
                    let (x, gamma, y) = (d.lhs.generator, &d.rhs.word, d.rhs.generator);
                    if substitute_term(&t.lhs, x, gamma, y) != *lhs
                        || substitute_term(&t.rhs, x, gamma, y) != *rhs
                    {
                        return Err(err(i, "substitution result mismatch"));
                    }
                }
                Rule::CycleCombine { first, second } => {
                    let a = earlier(first)?;
                    let b = earlier(second)?;
                    let c = a.lhs.generator;
                    let is_cycle =
                        |s: &DerivationStep| s.lhs.is_bare() && s.lhs.generator == c && s.rhs.generator == c;
                    if !is_cycle(a) || !is_cycle(b) {
                        return Err(err(i, "cycle-combine needs two cycles on one generator"));
                    }
                    if (&a.rhs, &b.rhs) != (lhs, rhs) {
                        return Err(err(i, "cycle-combine result mismatch"));
                    }
                }
            }
        }
        let last = self.steps.last().ok_or_else(|| err(0, "empty derivation"))?;
        match (last.lhs.word.head(), last.rhs.word.head()) {
            (Some(f), Some(g)) if f != g && (f, g) == self.clash => Ok(()),
            _ => Err(err(self.steps.len() - 1, "last step is not the stated clash")),
        }
    }
}

fn strip_common_prefix(lhs: &Term, rhs: &Term) -> (Term, Term) {
    let n = common_prefix_len(lhs.word.letters(), rhs.word.letters());
    (
        Term::new(lhs.word.suffix_from(n), lhs.generator),
        Term::new(rhs.word.suffix_from(n), rhs.generator),
    )
}

/// Strips the common prefix and orients: a bare side goes left; when both
/// are bare the later generator goes left (it is the one eliminated).
fn peel_terms(lhs: &Term, rhs: &Term) -> (Term, Term) {
    let (a, b) = strip_common_prefix(lhs, rhs);
    let swap = match (a.is_bare(), b.is_bare()) {
        (false, true) => true,
        (true, true) => a.generator < b.generator,
        _ => false,
    };
    if swap {
        (b, a)
    } else {
        (a, b)
    }
}

/// What one relation says after its common prefix is stripped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PeelOutcome {
    Trivial,
    MergeGenerators { eliminated: GenId, survivor: GenId },
    Cycle { generator: GenId, word: Word },
    /// `eliminated = word(survivor)`.
    Substitute { eliminated: GenId, word: Word, survivor: GenId },
    Clash(Symbol, Symbol),
}

fn classify(a: &Term, b: &Term) -> PeelOutcome {
    if a == b {
        return PeelOutcome::Trivial;
    }
    if !a.is_bare() {
        let (f, g) = (a.word.head().unwrap(), b.word.head().unwrap());
        return PeelOutcome::Clash(f, g);
    }
    if b.is_bare() {
        PeelOutcome::MergeGenerators {
            eliminated: a.generator,
            survivor: b.generator,
        }
    } else if a.generator == b.generator {
        PeelOutcome::Cycle {
            generator: a.generator,
            word: b.word.clone(),
        }
    } else {
        PeelOutcome::Substitute {
            eliminated: a.generator,
            word: b.word.clone(),
            survivor: b.generator,
        }
    }
}

pub fn peel(rel: &Relation) -> PeelOutcome {
    let (a, b) = peel_terms(&rel.lhs, &rel.rhs);
    classify(&a, &b)
}

struct Engine {
    steps: Vec<DerivationStep>,
    /// Fact `x = γ(y)` for every eliminated generator `x`.
    definitions: Vec<Option<usize>>,
    /// Fact `c = ω(c)` for every live generator carrying a cycle.
    cycles: Vec<Option<usize>>,
    queue: VecDeque<usize>,
}

impl Engine {
    fn new(num_generators: usize, relations: &[Relation]) -> Self {
        let mut engine = Engine {
            steps: Vec::new(),
            definitions: vec![None; num_generators],
            cycles: vec![None; num_generators],
            queue: VecDeque::new(),
        };
        for (i, r) in relations.iter().enumerate() {
            let id = engine.push(Rule::Seed { relation: i }, r.lhs.clone(), r.rhs.clone());
            engine.queue.push_back(id);
        }
        engine
    }

    fn push(&mut self, rule: Rule, lhs: Term, rhs: Term) -> usize {
        self.steps.push(DerivationStep { rule, lhs, rhs });
        self.steps.len() - 1
    }

    /// Definition fact for `x` in terms of a live generator, compressing
    /// chains of definitions into new substitute steps.
    fn definition(&mut self, x: GenId) -> Option<usize> {
        let d = self.definitions[x.index()]?;
        let y = self.steps[d].rhs.generator;
        if self.definitions[y.index()].is_none() {
            return Some(d);
        }
        let dy = self.definition(y).expect("y is eliminated");
        let id = self.substitute(d, dy);
        self.definitions[x.index()] = Some(id);
        Some(id)
    }

    fn substitute(&mut self, target: usize, definition: usize) -> usize {
        let d = &self.steps[definition];
        let (x, gamma, y) = (d.lhs.generator, d.rhs.word.clone(), d.rhs.generator);
        let t = &self.steps[target];
        let lhs = substitute_term(&t.lhs, x, &gamma, y);
        let rhs = substitute_term(&t.rhs, x, &gamma, y);
        self.push(Rule::Substitute { target, definition }, lhs, rhs)
    }

    /// Runs to completion; on a clash returns the id of the clashing step.
    fn run(&mut self) -> Result<(), usize> {
        while let Some(id) = self.queue.pop_front() {
            self.process(id)?;
        }
        Ok(())
    }

    fn process(&mut self, mut id: usize) -> Result<(), usize> {
        loop {
            let (lg, rg) = (self.steps[id].lhs.generator, self.steps[id].rhs.generator);
            if let Some(d) = self.definition(lg).or_else(|| self.definition(rg)) {
                id = self.substitute(id, d);
                continue;
            }
            break;
        }
        let step = &self.steps[id];
        let (a, b) = peel_terms(&step.lhs, &step.rhs);
        if (&a, &b) != (&step.lhs, &step.rhs) {
            id = self.push(Rule::Peel { from: id }, a, b);
        }
        let step = &self.steps[id];
        match classify(&step.lhs, &step.rhs) {
            PeelOutcome::Trivial => Ok(()),
            PeelOutcome::Clash(..) => Err(id),
            PeelOutcome::MergeGenerators { eliminated, .. }
            | PeelOutcome::Substitute { eliminated, .. } => {
                self.definitions[eliminated.index()] = Some(id);
                if let Some(c) = self.cycles[eliminated.index()].take() {
                    self.queue.push_front(c);
                }
                Ok(())
            }
            PeelOutcome::Cycle { generator, word } => {
                self.add_cycle(generator, word, id);
                Ok(())
            }
        }
    }

    fn add_cycle(&mut self, c: GenId, word: Word, id: usize) {
        let Some(old) = self.cycles[c.index()] else {
            self.cycles[c.index()] = Some(id);
            return;
        };
        if self.steps[old].rhs.word == word {
            return;
        }
        let (short, long) = if word.len() < self.steps[old].rhs.word.len() {
            (id, old)
        } else {
            (old, id)
        };
        self.cycles[c.index()] = Some(short);
        let lhs = self.steps[short].rhs.clone();
        let rhs = self.steps[long].rhs.clone();
        let combined = self.push(Rule::CycleCombine { first: short, second: long }, lhs, rhs);
        self.queue.push_front(combined);
    }

    fn violation(&self, clash_step: usize) -> Violation {
        let mut needed = vec![false; self.steps.len()];
        let mut stack = vec![clash_step];
        while let Some(i) = stack.pop() {
            if needed[i] {
                continue;
            }
            needed[i] = true;
            match self.steps[i].rule {
                Rule::Seed { .. } => {}
                Rule::Peel { from } => stack.push(from),
                Rule::Substitute { target, definition } => stack.extend([target, definition]),
                Rule::CycleCombine { first, second } => stack.extend([first, second]),
            }
        }
        let mut renumber = vec![usize::MAX; self.steps.len()];
        let mut steps = Vec::new();
        for (i, step) in self.steps.iter().enumerate() {
            if !needed[i] {
                continue;
            }
            renumber[i] = steps.len();
            let rule = match step.rule {
                Rule::Seed { relation } => Rule::Seed { relation },
                Rule::Peel { from } => Rule::Peel { from: renumber[from] },
                Rule::Substitute { target, definition } => Rule::Substitute {
                    target: renumber[target],
                    definition: renumber[definition],
                },
                Rule::CycleCombine { first, second } => Rule::CycleCombine {
                    first: renumber[first],
                    second: renumber[second],
                },
            };
            steps.push(DerivationStep {
                rule,
                lhs: step.lhs.clone(),
                rhs: step.rhs.clone(),
            });
        }
        let last = steps.last().expect("clash step is kept");
        let clash = (last.lhs.word.head().unwrap(), last.rhs.word.head().unwrap());
        Violation { steps, clash }
    }

    fn cycle_word(&self, c: GenId) -> Word {
        self.cycles[c.index()]
            .map(|id| self.steps[id].rhs.word.clone())
            .unwrap_or_default()
    }

    /// `x = γ(c)` with `c` live, following (uncompressed) definition chains.
    fn resolve(&self, x: GenId) -> (Word, GenId) {
        let mut word = Word::empty();
        let mut g = x;
        while let Some(d) = self.definitions[g.index()] {
            word = word.concat(&self.steps[d].rhs.word);
            g = self.steps[d].rhs.generator;
        }
        (word, g)
    }
}

/// Reduces the cycle words of a single generator `c` (relations
/// `c = φᵢ(c)`) to one word, or fails with a clash certificate. The
/// violation's seeds refer to positions in `words`.
pub fn reduce_cycles(words: &[Word]) -> Result<Word, Violation> {
    let c = GenId(0);
    let relations: Vec<Relation> = words
        .iter()
        .map(|w| Relation::new(Term::bare(c), Term::new(w.clone(), c)))
        .collect();
    let mut engine = Engine::new(1, &relations);
    match engine.run() {
        Ok(()) => Ok(engine.cycle_word(c)),
        Err(id) => Err(engine.violation(id)),
    }
}

/// Decides whether the presentation defines a semi-Peano algebra and, if
/// so, computes its decomposition into cyclic factors.
pub fn normalize(p: &Presentation) -> Result<Decomposition, NotSemiPeano> {
    let n = p.generators().len();
    let mut engine = Engine::new(n, p.relations());
    if let Err(id) = engine.run() {
        return Err(NotSemiPeano {
            violation: engine.violation(id),
        });
    }

    // Live generators, each re-anchored at the least rotation of its cycle
    // word: with ω = βα and ω' = αβ, the generator c maps to β(b).
    struct Live {
        generator: GenId,
        canonical: Word,
        anchor: Word,
    }
    let mut live: Vec<Live> = p
        .generator_ids()
        .filter(|g| engine.definitions[g.index()].is_none())
        .map(|g| {
            let omega = engine.cycle_word(g);
            let k = least_rotation_index(&omega);
            Live {
                generator: g,
                canonical: omega.rotate(k),
                anchor: omega.prefix(k),
            }
        })
        .collect();
    live.sort_by(|a, b| {
        (a.canonical.len(), &a.canonical, a.generator).cmp(&(b.canonical.len(), &b.canonical, b.generator))
    });

    let signature = p.signature().clone();
    let factors: Vec<CyclicAlgebra> = live
        .iter()
        .map(|l| CyclicAlgebra::new(signature.clone(), l.canonical.clone()).expect("letters from the signature"))
        .collect();
    let mut factor_of = vec![usize::MAX; n];
    for (i, l) in live.iter().enumerate() {
        factor_of[l.generator.index()] = i;
    }
    let images = p
        .generator_ids()
        .map(|g| {
            let (gamma, c) = engine.resolve(g);
            let i = factor_of[c.index()];
            let rep = factors[i].canonicalize(&gamma.concat(&live[i].anchor));
            (i, rep)
        })
        .collect();

    Ok(Decomposition {
        normal_form: NormalForm {
            factors: live.iter().map(|l| l.canonical.clone()).collect(),
        },
        representatives: live.iter().map(|l| l.generator).collect(),
        factors,
        signature,
        assignment: GeneratorAssignment { images },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::parse_presentation;

    fn pres(text: &str) -> Presentation {
        parse_presentation(text).unwrap()
    }

    fn words(p: &Presentation, ws: &[&str]) -> Vec<Word> {
        ws.iter().map(|w| p.signature().parse_word(w).unwrap()).collect()
    }

    fn nf(p: &Presentation) -> Vec<String> {
        let d = normalize(p).unwrap();
        d.normal_form()
            .factors()
            .iter()
            .map(|w| p.signature().format_word(w))
            .collect()
    }

    #[test]
    fn peel_examples() {
        let p = pres("ops f g\ngens x y");
        let t = |s: &str| p.parse_term(s).unwrap();
        let rel = |a: &str, b: &str| Relation::new(t(a), t(b));
        assert_eq!(peel(&rel("f g x", "f g x")), PeelOutcome::Trivial);
        assert_eq!(
            peel(&rel("x", "f g x")),
            PeelOutcome::Cycle {
                generator: GenId(0),
                word: words(&p, &["f g"])[0].clone()
            }
        );
        let f = p.signature().lookup("f").unwrap();
        let g = p.signature().lookup("g").unwrap();
        assert_eq!(peel(&rel("f x", "g x")), PeelOutcome::Clash(f, g));
        assert_eq!(
            peel(&rel("f g f x", "f g y")),
            PeelOutcome::Substitute {
                eliminated: GenId(1),
                word: Word::letter(f),
                survivor: GenId(0)
            }
        );
        assert_eq!(
            peel(&rel("x", "y")),
            PeelOutcome::MergeGenerators {
                eliminated: GenId(1),
                survivor: GenId(0)
            }
        );
    }

    #[test]
    fn reduce_cycles_examples() {
        let p = pres("ops f g h\ngens c");
        let w = |s: &str| p.signature().parse_word(s).unwrap();
        assert_eq!(reduce_cycles(&words(&p, &["f g", "f g f g f g"])), Ok(w("f g")));
        assert_eq!(reduce_cycles(&[]), Ok(Word::empty()));
        assert_eq!(reduce_cycles(&words(&p, &["f g h"])), Ok(w("f g h")));
        let v = reduce_cycles(&words(&p, &["f", "g"])).unwrap_err();
        assert_eq!(v.clash, (w("f").head().unwrap(), w("g").head().unwrap()));
        // Euclid-style reduction: fgfg and fgfgfg share the cycle fg.
        assert_eq!(reduce_cycles(&words(&p, &["f g f g", "f g f g f g"])), Ok(w("f g")));
        assert_eq!(reduce_cycles(&words(&p, &["f f", "f f f"])), Ok(w("f")));
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(nf(&pres("ops f g\ngens c\nrel c = f g c\nrel c = f g f g f g c")), ["f g"]);
        assert_eq!(nf(&pres("ops f g h\ngens c\nrel c = f g h f g h c")), ["f g h f g h"]);
        assert_eq!(nf(&pres("ops f\ngens x y")), ["1", "1"]);
        assert_eq!(nf(&pres("ops f\n")), Vec::<String>::new());

        let p = pres("ops f g\ngens x y\nrel x = g y\nrel y = f x");
        let d = normalize(&p).unwrap();
        assert_eq!(nf(&p), ["f g"]);
        assert_eq!(d.rank(), 1);
        let (i, image) = d.assignment().image(GenId(0));
        assert_eq!(i, 0);
        assert_eq!(p.signature().format_word(image), "g");
        assert_eq!(d.representatives(), &[GenId(1)]);

        let p = pres("ops f g\ngens x\nrel f x = g x");
        let err = normalize(&p).unwrap_err();
        let f = p.signature().lookup("f").unwrap();
        let g = p.signature().lookup("g").unwrap();
        assert_eq!(err.violation.clash, (f, g));
        assert!(err.violation.replay(&p).is_ok());
    }

    #[test]
    fn canonical_rotation_and_anchor() {
        let p = pres("ops f g\ngens c\nrel c = f g g f f c");
        let d = normalize(&p).unwrap();
        assert_eq!(nf(&p), ["f f f g g"]);
        // c itself satisfies c = fggff(c) through its image.
        let c = Term::bare(GenId(0));
        let wc = Term::new(p.signature().parse_word("f g g f f").unwrap(), GenId(0));
        assert!(d.equal(&c, &wc));
        let gc = Term::new(p.signature().parse_word("g").unwrap(), GenId(0));
        assert!(!d.equal(&c, &gc));
    }

    #[test]
    fn rank_and_peano() {
        let w = |s: &str| Signature::new(["f", "g"]).unwrap().parse_word(s).unwrap();
        assert_eq!(NormalForm::from_factors([w("f g")]).rank(), 1);
        assert_eq!(NormalForm::from_factors([w("1"), w("1")]).rank(), 2);
        assert_eq!(NormalForm::from_factors([w("f g"), w("f g")]).rank(), 2);
        assert!(NormalForm::from_factors([w("1"), w("1")]).is_peano());
        assert!(!NormalForm::from_factors([w("f g")]).is_peano());
        assert!(NormalForm::from_factors([]).is_peano());
    }

    #[test]
    fn isomorphism_examples() {
        let a = normalize(&pres("ops f g\ngens c\nrel c = f g c")).unwrap();
        let b = normalize(&pres("ops f g\ngens y\nrel y = g f y")).unwrap();
        assert_eq!(is_isomorphic(&a, &b), Ok(true));
        let c = normalize(&pres("ops f g\ngens c\nrel c = f f g g c")).unwrap();
        let d = normalize(&pres("ops f g\ngens c\nrel c = f g f g c")).unwrap();
        assert_eq!(is_isomorphic(&c, &d), Ok(false));
        let e = normalize(&pres("ops f g\ngens c")).unwrap();
        assert_eq!(is_isomorphic(&e, &e), Ok(true));
        let other = normalize(&pres("ops f h\ngens c")).unwrap();
        assert!(is_isomorphic(&e, &other).is_err());
    }

    #[test]
    fn violation_renders_and_replays_through_substitution() {
        let text = "ops f g\ngens x y\nrel x = f y\nrel f x = g y\n";
        let p = pres(text);
        let err = normalize(&p).unwrap_err();
        err.violation.replay(&p).unwrap();
        let rendered = err.violation.render(&p);
        assert!(rendered.contains("substitute"), "{rendered}");
        assert!(rendered.trim_end().ends_with("clash: f ≠ g"), "{rendered}");

        let p = pres("ops f g\ngens x y\nrel x = y\nrel f x = g y\n");
        let err = normalize(&p).unwrap_err();
        err.violation.replay(&p).unwrap();
        assert!(err.violation.render(&p).contains("merge"));
    }

    #[test]
    fn tampered_violation_fails_replay() {
        let p = pres("ops f g\ngens x\nrel x = f x\nrel x = g x");
        let mut v = normalize(&p).unwrap_err().violation;
        v.replay(&p).unwrap();
        v.steps[0].rhs.word = Word::empty();
        assert!(v.replay(&p).is_err());
    }

    #[test]
    fn cycle_weights_decrease() {
        let p = pres("ops f g\ngens c");
        let ws = words(&p, &["f g f g f g f g f g f g", "f g f g f g f g", "f g f g f g"]);
        let relations: Vec<Relation> = ws
            .iter()
            .map(|w| Relation::new(Term::bare(GenId(0)), Term::new(w.clone(), GenId(0))))
            .collect();
        let mut engine = Engine::new(1, &relations);
        engine.run().unwrap();
        // Every cycle produced by peeling a cycle-combine is strictly
        // shorter than the longer of the two combined words.
        for (i, s) in engine.steps.iter().enumerate() {
            if let Rule::Peel { from } = s.rule {
                if let Rule::CycleCombine { first, second } = engine.steps[from].rule {
                    let long = engine.steps[second].rhs.word.len();
                    assert!(s.rhs.word.len() < long, "step {i}");
                    assert!(engine.steps[first].rhs.word.len() <= long);
                }
            }
        }
        assert_eq!(engine.cycle_word(GenId(0)), ws[2].prefix(2));
    }

    #[test]
    fn merged_generators_share_factor() {
        let p = pres("ops f g\ngens x y z\nrel x = y\nrel y = f g z\nrel z = g f z");
        let d = normalize(&p).unwrap();
        assert_eq!(d.rank(), 1);
        let t = |s: &str| p.parse_term(s).unwrap();
        assert!(d.equal(&t("x"), &t("f g z")));
        assert!(d.equal(&t("x"), &t("f g g f z")));
        assert!(d.equal(&t("y"), &t("x")));
        assert!(!d.equal(&t("z"), &t("x")));
    }
}
