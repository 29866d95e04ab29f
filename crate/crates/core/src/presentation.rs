//! Terms over absolutely free unary algebras and finite presentations.
//!
//! Text format, one directive per line (`#` starts a comment):
//!
//! ```text
//! ops f g        # operation symbols, cumulative
//! gens c         # generators
//! rel c = f g c  # a ground relation between two terms
//! ```
//!
//! A term is a whitespace-separated list of operation names ending in a
//! generator name, so `f g x` is `f(g(x))`.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{ParseError, PresentationError};
use crate::words::{is_identifier, Signature, Word};

/// Index of a generator within its [`Presentation`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The element `word(generator)` of `Free(X)`. Two terms denote the same
/// element of the free algebra iff they are structurally equal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub word: Word,
    pub generator: GenId,
}

impl Term {
    pub fn new(word: Word, generator: GenId) -> Self {
        Term { word, generator }
    }

    pub fn bare(generator: GenId) -> Self {
        Term {
            word: Word::empty(),
            generator,
        }
    }

    pub fn is_bare(&self) -> bool {
        self.word.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Relation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Relation { lhs, rhs }
    }

    pub fn swapped(&self) -> Relation {
        Relation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    pub fn max_len(&self) -> usize {
        self.lhs.word.len().max(self.rhs.word.len())
    }
}

/// A finite presentation `Free(X) / ⊟(R)`.
#[derive(Clone, Debug)]
pub struct Presentation {
    signature: Signature,
    generators: Vec<String>,
    relations: Vec<Relation>,
    relation_lines: Vec<usize>,
}

impl PartialEq for Presentation {
    fn eq(&self, other: &Self) -> bool {
        self.signature == other.signature
            && self.generators == other.generators
            && self.relations == other.relations
    }
}

impl Eq for Presentation {}

impl Presentation {
    pub fn new(
        signature: Signature,
        generators: Vec<String>,
        relations: Vec<Relation>,
    ) -> Result<Self, PresentationError> {
        let mut seen = HashSet::new();
        for g in &generators {
            if !is_identifier(g) {
                return Err(PresentationError::InvalidGenerator(g.clone()));
            }
            if signature.lookup(g).is_some() {
                return Err(PresentationError::GeneratorShadowsSymbol(g.clone()));
            }
            if !seen.insert(g.as_str()) {
                return Err(PresentationError::DuplicateGenerator(g.clone()));
            }
        }
        for (i, rel) in relations.iter().enumerate() {
            for t in [&rel.lhs, &rel.rhs] {
                if t.generator.index() >= generators.len() {
                    return Err(PresentationError::UnknownGenerator {
                        relation: i,
                        generator: t.generator.0,
                    });
                }
                signature
                    .check_word(&t.word)
                    .map_err(|source| PresentationError::BadWord { relation: i, source })?;
            }
        }
        let relation_lines = vec![0; relations.len()];
        Ok(Presentation {
            signature,
            generators,
            relations,
            relation_lines,
        })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.generators.len() as u32).map(GenId)
    }

    pub fn generator_name(&self, g: GenId) -> &str {
        &self.generators[g.index()]
    }

    pub fn lookup_generator(&self, name: &str) -> Option<GenId> {
        self.generators
            .iter()
            .position(|g| g == name)
            .map(|i| GenId(i as u32))
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Source line of relation `i`, or `None` if it was not parsed from text.
    pub fn relation_line(&self, i: usize) -> Option<usize> {
        self.relation_lines.get(i).copied().filter(|&l| l > 0)
    }

    /// Longest word appearing in any relation.
    pub fn max_relation_len(&self) -> usize {
        self.relations.iter().map(Relation::max_len).max().unwrap_or(0)
    }

    /// Same signature and generators with a different relation list.
    pub fn with_relations(&self, relations: Vec<Relation>) -> Result<Self, PresentationError> {
        Presentation::new(self.signature.clone(), self.generators.clone(), relations)
    }

    pub fn format_term(&self, t: &Term) -> String {
        let mut out = String::new();
        for s in t.word.letters() {
            out.push_str(self.signature.name(*s));
            out.push(' ');
        }
        out.push_str(self.generator_name(t.generator));
        out
    }

    pub fn format_relation(&self, r: &Relation) -> String {
        format!("{} = {}", self.format_term(&r.lhs), self.format_term(&r.rhs))
    }

    /// Parses a term in `rel` syntax against this presentation's
    /// declarations. Errors report line 1 and a column within `text`.
    pub fn parse_term(&self, text: &str) -> Result<Term, ParseError> {
        let tokens = tokenize(text, 0);
        let ops: HashSet<&str> = self.signature.names().iter().map(String::as_str).collect();
        let gens: HashSet<&str> = self.generators.iter().map(String::as_str).collect();
        let raw = parse_raw_term(&tokens, 1, text.len() + 1, &ops, &gens)?;
        Ok(self.resolve(&raw))
    }

    fn resolve(&self, raw: &RawTerm) -> Term {
        let word = raw
            .ops
            .iter()
            .map(|n| self.signature.lookup(n).expect("validated symbol"))
            .collect();
        let generator = self.lookup_generator(&raw.generator).expect("validated generator");
        Term { word, generator }
    }

    /// Renders the presentation in its text format. Parsing the output
    /// yields an equal presentation.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.signature.is_empty() {
            let _ = writeln!(out, "ops {}", self.signature.names().join(" "));
        }
        if !self.generators.is_empty() {
            let _ = writeln!(out, "gens {}", self.generators.join(" "));
        }
        for r in &self.relations {
            let _ = writeln!(out, "rel {}", self.format_relation(r));
        }
        out
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(text: &str, offset: usize) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<usize> = None;
    let col_of = |byte: usize| text[..byte].chars().count() + offset + 1;
    for (i, c) in text.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token {
                    text: &text[s..i],
                    column: col_of(s),
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &text[s..],
            column: col_of(s),
        });
    }
    tokens
}

struct RawTerm {
    ops: Vec<String>,
    generator: String,
}

fn parse_raw_term(
    tokens: &[Token<'_>],
    line: usize,
    end_column: usize,
    ops: &HashSet<&str>,
    gens: &HashSet<&str>,
) -> Result<RawTerm, ParseError> {
    let Some((last, init)) = tokens.split_last() else {
        return Err(ParseError::new(line, end_column, "malformed term: empty"));
    };
    let mut names = Vec::with_capacity(init.len());
    for tok in init {
        if ops.contains(tok.text) {
            names.push(tok.text.to_string());
        } else if gens.contains(tok.text) {
            return Err(ParseError::new(
                line,
                tok.column,
                format!("malformed term: generator {} must be the last token", tok.text),
            ));
        } else {
            return Err(ParseError::new(
                line,
                tok.column,
                format!("unknown symbol {}", tok.text),
            ));
        }
    }
    if !gens.contains(last.text) {
        let message = if ops.contains(last.text) {
            format!("missing generator at term end (found operation {})", last.text)
        } else {
            format!("unknown symbol {}", last.text)
        };
        return Err(ParseError::new(line, last.column, message));
    }
    Ok(RawTerm {
        ops: names,
        generator: last.text.to_string(),
    })
}

/// Parses the presentation text format. Relations keep their directive
/// order.
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut op_names: Vec<String> = Vec::new();
    let mut gen_names: Vec<String> = Vec::new();
    let mut raw_relations: Vec<(RawTerm, RawTerm, usize)> = Vec::new();

    for (idx, full_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match full_line.find('#') {
            Some(i) => &full_line[..i],
            None => full_line,
        };
        let tokens = tokenize(line, 0);
        let Some(directive) = tokens.first() else {
            continue;
        };
        match directive.text {
            "ops" | "gens" => {
                if tokens.len() == 1 {
                    return Err(ParseError::new(
                        line_no,
                        directive.column,
                        format!("`{}` needs at least one name", directive.text),
                    ));
                }
                for tok in &tokens[1..] {
                    if !is_identifier(tok.text) {
                        return Err(ParseError::new(
                            line_no,
                            tok.column,
                            format!("invalid name {:?}", tok.text),
                        ));
                    }
                    if op_names.iter().chain(&gen_names).any(|n| n == tok.text) {
                        return Err(ParseError::new(
                            line_no,
                            tok.column,
                            format!("duplicate declaration of {}", tok.text),
                        ));
                    }
                    if directive.text == "ops" {
                        op_names.push(tok.text.to_string());
                    } else {
                        gen_names.push(tok.text.to_string());
                    }
                }
            }
            "rel" => {
                let body_start = line.find("rel").unwrap() + 3;
                let body = &line[body_start..];
                let body_col = line[..body_start].chars().count();
                let Some(eq) = body.find('=') else {
                    return Err(ParseError::new(
                        line_no,
                        directive.column,
                        "malformed relation: expected `<term> = <term>`",
                    ));
                };
                if body[eq + 1..].contains('=') {
                    let extra = body_col + body[..eq + 1].chars().count()
                        + body[eq + 1..].find('=').unwrap()
                        + 1;
                    return Err(ParseError::new(
                        line_no,
                        extra,
                        "malformed relation: more than one `=`",
                    ));
                }
                let ops: HashSet<&str> = op_names.iter().map(String::as_str).collect();
                let gens: HashSet<&str> = gen_names.iter().map(String::as_str).collect();
                let eq_col = body_col + body[..eq].chars().count() + 1;
                let lhs_tokens = tokenize(&body[..eq], body_col);
                let rhs_tokens = tokenize(&body[eq + 1..], eq_col);
                let lhs = parse_raw_term(&lhs_tokens, line_no, eq_col, &ops, &gens)?;
                let end_col = line.chars().count() + 1;
                let rhs = parse_raw_term(&rhs_tokens, line_no, end_col, &ops, &gens)?;
                raw_relations.push((lhs, rhs, line_no));
            }
            other => {
                return Err(ParseError::new(
                    line_no,
                    directive.column,
                    format!("unknown directive {other}"),
                ));
            }
        }
    }

    let signature =
        Signature::new(op_names).map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    let mut presentation = Presentation::new(signature, gen_names, Vec::new())
        .map_err(|e| ParseError::new(1, 1, e.to_string()))?;
    for (lhs, rhs, line) in raw_relations {
        let rel = Relation::new(presentation.resolve(&lhs), presentation.resolve(&rhs));
        presentation.relations.push(rel);
        presentation.relation_lines.push(line);
    }
    Ok(presentation)
}
