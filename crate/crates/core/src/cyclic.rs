//! Computation inside a single cyclic factor `P/ω`.
//!
//! Elements of `P/ω` are written `ρ(a)` for the canonical generator `a`.
//! Two words denote the same element iff they agree after stripping every
//! trailing copy of `ω`, so the canonical representative of a class is the
//! unique word in it that does not end with `ω`.

use std::fmt::Write as _;

use crate::error::{CyclicError, SignatureMismatch};
use crate::words::{is_conjugate, Signature, Symbol, Word};

/// `P/ω = Free(a)/⊟(a, ω(a))`, anchored at the generator `a` for `ω` as
/// written (not rotated).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclicAlgebra {
    signature: Signature,
    omega: Word,
}

/// An element `rep(a)` of a cyclic algebra; `rep` is canonical for the
/// algebra that produced it.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    rep: Word,
}

impl Element {
    pub fn rep(&self) -> &Word {
        &self.rep
    }

    pub fn into_rep(self) -> Word {
        self.rep
    }
}

/// Strips trailing copies of `omega` from `w` (no-op when `omega` is empty).
pub(crate) fn strip_cycles(mut letters: &[Symbol], omega: &[Symbol]) -> usize {
    if !omega.is_empty() {
        while letters.ends_with(omega) {
            letters = &letters[..letters.len() - omega.len()];
        }
    }
    letters.len()
}

impl CyclicAlgebra {
    pub fn new(signature: Signature, omega: Word) -> Result<Self, CyclicError> {
        signature.check_word(&omega)?;
        Ok(CyclicAlgebra { signature, omega })
    }

    /// The absolutely free cyclic algebra `P/1`.
    pub fn free(signature: Signature) -> Self {
        CyclicAlgebra {
            signature,
            omega: Word::empty(),
        }
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn omega(&self) -> &Word {
        &self.omega
    }

    pub fn is_free(&self) -> bool {
        self.omega.is_empty()
    }

    /// Shortest word in the equality class of `w`.
    pub fn canonicalize(&self, w: &Word) -> Word {
        let n = strip_cycles(w.letters(), self.omega.letters());
        if n == w.len() {
            w.clone()
        } else {
            w.prefix(n)
        }
    }

    pub fn is_canonical(&self, w: &Word) -> bool {
        self.omega.is_empty() || !self.omega.is_suffix_of(w)
    }

    /// Word problem: `u(a) = v(a)` in `P/ω`.
    pub fn equal(&self, u: &Word, v: &Word) -> bool {
        let (lu, lv) = (
            strip_cycles(u.letters(), self.omega.letters()),
            strip_cycles(v.letters(), self.omega.letters()),
        );
        u.letters()[..lu] == v.letters()[..lv]
    }

    /// The element `w(a)`.
    pub fn element(&self, w: &Word) -> Element {
        Element {
            rep: self.canonicalize(w),
        }
    }

    /// Wraps an already-canonical representative.
    pub fn element_from_rep(&self, rep: Word) -> Result<Element, CyclicError> {
        self.signature.check_word(&rep)?;
        if !self.is_canonical(&rep) {
            return Err(CyclicError::NotCanonical);
        }
        Ok(Element { rep })
    }

    pub fn generator(&self) -> Element {
        Element { rep: Word::empty() }
    }

    pub fn apply(&self, f: Symbol, x: &Element) -> Result<Element, CyclicError> {
        if !self.signature.contains(f) {
            return Err(crate::error::WordError::ForeignSymbol(f.0).into());
        }
        let fx = x.rep.prepend(f);
        if fx == self.omega {
            Ok(self.generator())
        } else {
            Ok(Element { rep: fx })
        }
    }

    /// The action of a whole word: `chi(x)`.
    pub fn act(&self, chi: &Word, x: &Element) -> Element {
        self.element(&chi.concat(&x.rep))
    }

    /// Whether `x` lies on the unique cycle, i.e. its representative is a
    /// proper suffix of `ω`.
    pub fn on_cycle(&self, x: &Element) -> Result<bool, CyclicError> {
        if self.omega.is_empty() {
            return Err(CyclicError::FreeAlgebraHasNoCycle);
        }
        Ok(x.rep.len() < self.omega.len() && x.rep.is_suffix_of(&self.omega))
    }

    /// Whether the subalgebra generated by `x` is absolutely free.
    pub fn subalgebra_is_free(&self, x: &Element) -> bool {
        match self.on_cycle(x) {
            Ok(on) => !on,
            Err(_) => true,
        }
    }

    pub fn is_fixed_by(&self, chi: &Word, x: &Element) -> bool {
        self.equal(&chi.concat(&x.rep), &x.rep)
    }

    /// Cycle vertices in orbit order starting from the generator:
    /// `a, ω_{n-1}(a), ω_{n-2}ω_{n-1}(a), ...`.
    pub fn cycle(&self) -> Result<Vec<Element>, CyclicError> {
        if self.omega.is_empty() {
            return Err(CyclicError::FreeAlgebraHasNoCycle);
        }
        let n = self.omega.len();
        Ok((0..n)
            .map(|k| Element {
                rep: self.omega.suffix_from(n - k),
            })
            .collect())
    }

    /// All canonical representatives of length at most `max_len`, ordered
    /// by length and then lexicographically.
    pub fn elements_up_to(&self, max_len: usize) -> Vec<Element> {
        let mut out = vec![Element { rep: Word::empty() }];
        let mut layer = vec![Word::empty()];
        for _ in 0..max_len {
            let mut next = Vec::with_capacity(layer.len() * self.signature.len());
            for w in &layer {
                for f in self.signature.symbols() {
                    let mut letters = w.letters().to_vec();
                    letters.push(f);
                    next.push(Word::from_symbols(letters));
                }
            }
            next.sort();
            out.extend(
                next.iter()
                    .filter(|w| self.is_canonical(w))
                    .map(|w| Element { rep: w.clone() }),
            );
            layer = next;
        }
        out
    }

    /// The depth-bounded portion of the graph of this algebra.
    pub fn graph(&self, depth: usize) -> Result<BallGraph, CyclicError> {
        if depth < self.omega.len() {
            return Err(CyclicError::DepthTooSmall {
                depth,
                cycle: self.omega.len(),
            });
        }
        let vertices: Vec<Word> = self
            .elements_up_to(depth)
            .into_iter()
            .map(Element::into_rep)
            .collect();
        let index: std::collections::HashMap<&Word, usize> =
            vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut edges = Vec::new();
        for f in self.signature.symbols() {
            for (i, v) in vertices.iter().enumerate() {
                let target = self.apply(f, &Element { rep: v.clone() })?;
                if let Some(&j) = index.get(&target.rep) {
                    edges.push(Edge {
                        from: i,
                        label: f,
                        to: j,
                    });
                }
            }
        }
        let boundary = vertices.iter().map(|v| v.len() == depth).collect();
        Ok(BallGraph {
            vertices,
            edges,
            boundary,
        })
    }

    /// DOT rendering of [`CyclicAlgebra::graph`].
    pub fn graph_dot(&self, depth: usize) -> Result<String, CyclicError> {
        let name = format!("P/{}", self.signature.format_word(&self.omega));
        Ok(self.graph(depth)?.to_dot(&self.signature, &name))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub label: Symbol,
    pub to: usize,
}

/// Vertices are canonical representatives; `edges` are grouped by label
/// in signature order.
#[derive(Clone, Debug)]
pub struct BallGraph {
    pub vertices: Vec<Word>,
    pub edges: Vec<Edge>,
    /// `true` for vertices at the truncation depth, whose out-edges are cut.
    pub boundary: Vec<bool>,
}

/// DOT node id: letters joined by underscores, `GEN` for the generator.
pub fn dot_node_id(sig: &Signature, rep: &Word) -> String {
    if rep.is_empty() {
        "GEN".to_string()
    } else {
        let names: Vec<&str> = rep.letters().iter().map(|s| sig.name(*s)).collect();
        names.join("_")
    }
}

impl BallGraph {
    pub fn to_dot(&self, sig: &Signature, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{name}\" {{");
        let ids: Vec<String> = self.vertices.iter().map(|v| dot_node_id(sig, v)).collect();
        for (i, v) in self.vertices.iter().enumerate() {
            let extra = if self.boundary[i] { ", peripheries=2" } else { "" };
            let _ = writeln!(
                out,
                "  \"{}\" [label=\"{}\"{}];",
                ids[i],
                sig.format_word(v),
                extra
            );
        }
        let mut current: Option<Symbol> = None;
        for e in &self.edges {
            if current != Some(e.label) {
                let _ = writeln!(out, "  edge [label=\"{}\"];", sig.name(e.label));
                current = Some(e.label);
            }
            let _ = writeln!(out, "  \"{}\" -> \"{}\";", ids[e.from], ids[e.to]);
        }
        out.push_str("}\n");
        out
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertices.len()];
        for e in &self.edges {
            deg[e.to] += 1;
        }
        deg
    }
}

/// Witness for `P/ω ≅ P/ω'` with `ω = βα` and `ω' = αβ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub alpha: Word,
    pub beta: Word,
}

impl IsoWitness {
    /// Finds a witness between two conjugate cycle words.
    pub fn between(source: &Word, target: &Word) -> Option<IsoWitness> {
        // source = x y and target = y x, so beta = x and alpha = y.
        is_conjugate(source, target).map(|w| IsoWitness {
            alpha: w.beta,
            beta: w.alpha,
        })
    }
}

/// The isomorphism `Φ(φ(a)) = φβ(b)` between conjugate cyclic algebras.
#[derive(Clone, Debug)]
pub struct IsoMap {
    source: CyclicAlgebra,
    target: CyclicAlgebra,
    beta: Word,
}

pub fn iso(
    source: &CyclicAlgebra,
    target: &CyclicAlgebra,
    witness: &IsoWitness,
) -> Result<IsoMap, CyclicError> {
    if source.signature != target.signature {
        return Err(SignatureMismatch {
            left: source.signature.names().to_vec(),
            right: target.signature.names().to_vec(),
        }
        .into());
    }
    if witness.beta.concat(&witness.alpha) != source.omega
        || witness.alpha.concat(&witness.beta) != target.omega
    {
        return Err(CyclicError::InvalidWitness);
    }
    Ok(IsoMap {
        source: source.clone(),
        target: target.clone(),
        beta: witness.beta.clone(),
    })
}

impl IsoMap {
    pub fn source(&self) -> &CyclicAlgebra {
        &self.source
    }

    pub fn target(&self) -> &CyclicAlgebra {
        &self.target
    }

    pub fn apply(&self, x: &Element) -> Element {
        self.target.element(&x.rep.concat(&self.beta))
    }
}

/// The epimorphism `P/ω^p → P/ω^q` for `q | p`.
pub fn epi_power(omega: &Word, p: usize, q: usize, x: &Element) -> Result<Element, CyclicError> {
    if q == 0 || p < q || !p.is_multiple_of(q) {
        return Err(CyclicError::NotDivisor { p, q });
    }
    let source = omega.pow(p);
    if !source.is_empty() && source.is_suffix_of(&x.rep) {
        return Err(CyclicError::NotCanonical);
    }
    let target = omega.pow(q);
    let n = strip_cycles(x.rep.letters(), target.letters());
    Ok(Element { rep: x.rep.prefix(n) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig() -> Signature {
        Signature::new(["f", "g", "h"]).unwrap()
    }

    fn w(text: &str) -> Word {
        sig().parse_word(text).unwrap()
    }

    fn alg(omega: &str) -> CyclicAlgebra {
        CyclicAlgebra::new(sig(), w(omega)).unwrap()
    }

    fn el(a: &CyclicAlgebra, rep: &str) -> Element {
        a.element_from_rep(w(rep)).unwrap()
    }

    fn sym(name: &str) -> Symbol {
        sig().lookup(name).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let a = alg("f g");
        assert_eq!(a.canonicalize(&w("f g f g")), Word::empty());
        assert_eq!(a.canonicalize(&w("g f g")), w("g"));
        assert_eq!(a.canonicalize(&w("f")), w("f"));
        assert_eq!(alg("1").canonicalize(&w("f g f")), w("f g f"));
    }

    #[test]
    fn equal_examples() {
        let a = alg("f g");
        assert!(a.equal(&w("g"), &w("g f g")));
        assert!(!a.equal(&w("f"), &w("g")));
        let free = alg("1");
        assert!(free.equal(&w("f g"), &w("f g")));
        assert!(!free.equal(&w("f g"), &w("g f")));
    }

    #[test]
    fn apply_examples() {
        let a = alg("f g");
        assert_eq!(a.apply(sym("f"), &el(&a, "g")).unwrap(), a.generator());
        assert_eq!(a.apply(sym("g"), &a.generator()).unwrap(), el(&a, "g"));
        assert_eq!(a.apply(sym("f"), &a.generator()).unwrap(), el(&a, "f"));
        assert!(a.apply(Symbol(9), &a.generator()).is_err());
    }

    #[test]
    fn generator_is_empty_rep() {
        for o in ["f g", "1", "f g h f g h"] {
            assert!(alg(o).generator().rep().is_empty());
        }
    }

    #[test]
    fn element_from_rep_rejects_non_canonical() {
        let a = alg("f g");
        assert_eq!(
            a.element_from_rep(w("g f g")),
            Err(CyclicError::NotCanonical)
        );
    }

    #[test]
    fn cycle_membership() {
        let a = alg("f g");
        // Walk a -> g(a) -> fg(a) = a.
        let g_a = a.apply(sym("g"), &a.generator()).unwrap();
        assert_eq!(a.apply(sym("f"), &g_a).unwrap(), a.generator());
        assert!(a.on_cycle(&el(&a, "g")).unwrap());
        assert!(!a.on_cycle(&el(&a, "f")).unwrap());
        assert!(a.on_cycle(&a.generator()).unwrap());
        assert_eq!(
            alg("1").on_cycle(&alg("1").generator()),
            Err(CyclicError::FreeAlgebraHasNoCycle)
        );
        assert_eq!(
            a.cycle().unwrap(),
            vec![a.generator(), el(&a, "g")]
        );
    }

    #[test]
    fn free_subalgebras() {
        let a = alg("f g");
        let x = el(&a, "f");
        // No non-empty word of length <= 8 fixes f(a).
        for chi in alg("1").elements_up_to(8).into_iter().skip(1) {
            assert!(!a.is_fixed_by(chi.rep(), &x));
        }
        assert!(a.subalgebra_is_free(&x));
        assert!(!a.subalgebra_is_free(&a.generator()));
        assert!(alg("1").subalgebra_is_free(&el(&alg("1"), "f")));
    }

    #[test]
    fn fixed_by_examples() {
        let a = alg("f g");
        assert!(a.is_fixed_by(&w("g f"), &el(&a, "g")));
        assert!(a.is_fixed_by(&w("f g"), &a.generator()));
        assert!(!a.is_fixed_by(&w("f"), &a.generator()));
    }

    #[test]
    fn iso_examples() {
        let s = alg("f g");
        let t = alg("g f");
        let wit = IsoWitness {
            beta: w("f"),
            alpha: w("g"),
        };
        let phi = iso(&s, &t, &wit).unwrap();
        assert_eq!(phi.apply(&s.generator()), el(&t, "f"));
        assert_eq!(phi.apply(&el(&s, "g")), t.generator());

        let id = iso(
            &s,
            &s,
            &IsoWitness {
                beta: Word::empty(),
                alpha: w("f g"),
            },
        )
        .unwrap();
        for x in s.elements_up_to(4) {
            assert_eq!(id.apply(&x), x);
        }

        assert_eq!(IsoWitness::between(&w("f g"), &w("g f")), Some(wit));
        assert!(matches!(
            iso(&s, &t, &IsoWitness { beta: w("g"), alpha: w("f") }),
            Err(CyclicError::InvalidWitness)
        ));
    }

    #[test]
    fn epi_power_examples() {
        let omega = w("f g h");
        let sq = alg("f g h f g h");
        let x = el(&sq, "f g h");
        assert_eq!(epi_power(&omega, 2, 1, &x).unwrap().rep(), &Word::empty());
        assert_eq!(epi_power(&omega, 2, 1, &el(&sq, "f")).unwrap().rep(), &w("f"));
        assert_eq!(epi_power(&omega, 2, 2, &x).unwrap(), x);
        assert_eq!(
            epi_power(&omega, 3, 2, &x),
            Err(CyclicError::NotDivisor { p: 3, q: 2 })
        );
    }

    #[test]
    fn graph_depth_must_cover_cycle() {
        assert!(matches!(
            alg("f g h").graph(2),
            Err(CyclicError::DepthTooSmall { depth: 2, cycle: 3 })
        ));
    }

    #[test]
    fn dot_is_stable() {
        let s = Signature::new(["f", "g"]).unwrap();
        let a = CyclicAlgebra::new(s.clone(), s.parse_word("f g").unwrap()).unwrap();
        let dot = a.graph_dot(2).unwrap();
        let expected = "digraph \"P/f g\" {
  \"GEN\" [label=\"1\"];
  \"f\" [label=\"f\"];
  \"g\" [label=\"g\"];
  \"f_f\" [label=\"f f\", peripheries=2];
  \"g_f\" [label=\"g f\", peripheries=2];
  \"g_g\" [label=\"g g\", peripheries=2];
  edge [label=\"f\"];
  \"GEN\" -> \"f\";
  \"f\" -> \"f_f\";
  \"g\" -> \"GEN\";
  edge [label=\"g\"];
  \"GEN\" -> \"g\";
  \"f\" -> \"g_f\";
  \"g\" -> \"g_g\";
}
";
        assert_eq!(dot, expected);
    }
}
