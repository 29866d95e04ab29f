#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use semipeano::{GenId, Presentation, Relation, Signature, Symbol, Term, Word};

pub const SYMBOL_NAMES: [&str; 4] = ["f", "g", "h", "k"];
pub const GENERATOR_NAMES: [&str; 4] = ["x", "y", "z", "w"];

pub fn signature(n: usize) -> Signature {
    Signature::new(SYMBOL_NAMES[..n].iter().copied()).unwrap()
}

/// Every word of length at most `max_len`, shortest first.
pub fn words_up_to(symbols: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * symbols);
        for w in &layer {
            for s in 0..symbols {
                next.push(w.concat(&Word::letter(Symbol(s as u16))));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

pub fn random_word<R: Rng>(rng: &mut R, symbols: usize, min_len: usize, max_len: usize) -> Word {
    let len = rng.gen_range(min_len..=max_len);
    (0..len).map(|_| Symbol(rng.gen_range(0..symbols) as u16)).collect()
}

/// Random presentation; about half the relations have a bare side so that
/// a fair share of the samples are semi-Peano.
pub fn random_presentation<R: Rng>(
    rng: &mut R,
    max_symbols: usize,
    max_generators: usize,
    max_relations: usize,
    max_word: usize,
) -> Presentation {
    let symbols = rng.gen_range(1..=max_symbols);
    let generators = rng.gen_range(1..=max_generators);
    let relations = rng.gen_range(1..=max_relations);
    let mut rels = Vec::with_capacity(relations);
    for _ in 0..relations {
        let lhs_len = if rng.gen_bool(0.5) { 0 } else { max_word };
        let lhs = Term::new(
            random_word(rng, symbols, 0, lhs_len),
            GenId(rng.gen_range(0..generators) as u32),
        );
        let rhs = Term::new(
            random_word(rng, symbols, 0, max_word),
            GenId(rng.gen_range(0..generators) as u32),
        );
        rels.push(Relation::new(lhs, rhs));
    }
    Presentation::new(
        signature(symbols),
        GENERATOR_NAMES[..generators].iter().map(|s| s.to_string()).collect(),
        rels,
    )
    .unwrap()
}

/// `{c = ω c}` over the given signature.
pub fn cycle_presentation(sig: &Signature, omega: &Word) -> Presentation {
    Presentation::new(
        sig.clone(),
        vec!["c".to_string()],
        vec![Relation::new(Term::bare(GenId(0)), Term::new(omega.clone(), GenId(0)))],
    )
    .unwrap()
}

/// Same presentation with generators reordered: old generator `i` becomes `perm[i]`.
pub fn permute_generators(p: &Presentation, perm: &[usize]) -> Presentation {
    let mut names = vec![String::new(); perm.len()];
    for (i, &j) in perm.iter().enumerate() {
        names[j] = format!("{}_{}", p.generators()[i], j);
    }
    let map = |t: &Term| Term::new(t.word.clone(), GenId(perm[t.generator.index()] as u32));
    let rels = p
        .relations()
        .iter()
        .map(|r| Relation::new(map(&r.lhs), map(&r.rhs)))
        .collect();
    Presentation::new(p.signature().clone(), names, rels).unwrap()
}

pub fn shuffled<R: Rng>(rng: &mut R, p: &Presentation) -> Presentation {
    let mut rels = p.relations().to_vec();
    rels.shuffle(rng);
    p.with_relations(rels).unwrap()
}

pub fn randomly_swapped<R: Rng>(rng: &mut R, p: &Presentation) -> Presentation {
    let rels = p
        .relations()
        .iter()
        .map(|r| if rng.gen_bool(0.5) { r.swapped() } else { r.clone() })
        .collect();
    p.with_relations(rels).unwrap()
}
