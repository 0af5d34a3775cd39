//! Free-group words, presentation ingestion, and Fox free differential
//! calculus.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

pub type GenId = usize;

/// A single signed generator occurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub gen: GenId,
    pub sign: i8,
}

impl Letter {
    pub fn inverse(self) -> Letter {
        Letter { gen: self.gen, sign: -self.sign }
    }
}

/// A freely reduced word in the free group on a presentation's generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word { letters: Vec::new() }
    }

    /// Builds a word from letters, cancelling adjacent inverse pairs.
    pub fn from_letters<I: IntoIterator<Item = Letter>>(letters: I) -> Word {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        debug_assert!(l.sign == 1 || l.sign == -1);
        match self.letters.last() {
            Some(top) if top.gen == l.gen && top.sign == -l.sign => {
                self.letters.pop();
            }
            _ => self.letters.push(l),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Freely reduced concatenation.
    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inverse()).collect() }
    }

    /// Total exponent sum of each generator weighted by `phi`.
    pub fn phi_weight(&self, phi: &Phi) -> i64 {
        self.letters.iter().map(|l| phi.values[l.gen] * l.sign as i64).sum()
    }

    /// Exponent sum with every generator weighted 1.
    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign as i64).sum()
    }

    pub fn render(&self, generators: &[String]) -> String {
        let mut out = String::new();
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut run = 1usize;
            while i + run < self.letters.len() && self.letters[i + run] == l {
                run += 1;
            }
            if !out.is_empty() {
                out.push(' ');
            }
            let exp = run as i64 * l.sign as i64;
            if exp == 1 {
                out.push_str(&generators[l.gen]);
            } else {
                out.push_str(&format!("{}^{}", generators[l.gen], exp));
            }
            i += run;
        }
        out
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("malformed token `{token}` at position {position}")]
    MalformedToken { token: String, position: usize },
    #[error("zero exponent in token at position {0}")]
    ZeroExponent(usize),
}

/// Parses whitespace-separated `ident` / `ident^INT` tokens into a reduced word.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, WordError> {
    let mut w = Word::empty();
    for (position, token) in text.split_whitespace().enumerate() {
        let (ident, exp) = match token.split_once('^') {
            None => (token, 1i64),
            Some((ident, e)) => {
                let e: i64 = e.parse().map_err(|_| WordError::MalformedToken {
                    token: token.to_string(),
                    position,
                })?;
                (ident, e)
            }
        };
        if ident.is_empty() || !ident.chars().all(|c| c.is_alphanumeric() || c == '_') {
            return Err(WordError::MalformedToken { token: token.to_string(), position });
        }
        if exp == 0 {
            return Err(WordError::ZeroExponent(position));
        }
        let gen = generators
            .iter()
            .position(|g| g == ident)
            .ok_or_else(|| WordError::UnknownGenerator(ident.to_string()))?;
        let sign = if exp > 0 { 1 } else { -1 };
        for _ in 0..exp.unsigned_abs() {
            w.push(Letter { gen, sign });
        }
    }
    Ok(w)
}

/// An element of the integral group ring of the free group.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FreeRingElement {
    terms: BTreeMap<Word, i64>,
}

impl FreeRingElement {
    pub fn zero() -> FreeRingElement {
        FreeRingElement::default()
    }

    pub fn one() -> FreeRingElement {
        FreeRingElement::monomial(Word::empty(), 1)
    }

    pub fn monomial(w: Word, coeff: i64) -> FreeRingElement {
        let mut e = FreeRingElement::zero();
        e.add_term(w, coeff);
        e
    }

    pub fn add_term(&mut self, w: Word, coeff: i64) {
        if coeff == 0 {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coeff);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FreeRingElement) -> FreeRingElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &FreeRingElement) -> FreeRingElement {
        let mut out = self.clone();
        for (w, c) in other.terms() {
            out.add_term(w.clone(), -c);
        }
        out
    }

    pub fn mul(&self, other: &FreeRingElement) -> FreeRingElement {
        let mut out = FreeRingElement::zero();
        for (u, a) in self.terms() {
            for (v, b) in other.terms() {
                out.add_term(u.mul(v), a * b);
            }
        }
        out
    }

    /// Left multiplication by a group element.
    pub fn mul_word_left(&self, w: &Word) -> FreeRingElement {
        let mut out = FreeRingElement::zero();
        for (u, c) in self.terms() {
            out.add_term(w.mul(u), c);
        }
        out
    }
}

/// Fox free derivative `∂w/∂x_i`.
///
/// Defining rules: `∂x/∂x = 1`, `∂x⁻¹/∂x = −x⁻¹`, `∂y/∂x = 0` for `y ≠ x`,
/// and the product rule `∂(uv)/∂x = ∂u/∂x + u·∂v/∂x`.
pub fn fox_derivative(w: &Word, i: GenId) -> FreeRingElement {
    let mut out = FreeRingElement::zero();
    let mut prefix = Word::empty();
    for &l in w.letters() {
        if l.gen == i {
            if l.sign > 0 {
                out.add_term(prefix.clone(), 1);
            } else {
                out.add_term(prefix.mul(&Word::from_letters([l])), -1);
            }
        }
        prefix = prefix.mul(&Word::from_letters([l]));
    }
    out
}

/// A homomorphism `π₁ → Z` given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phi {
    pub values: Vec<i64>,
}

impl Phi {
    pub fn weight(&self, w: &Word) -> i64 {
        w.phi_weight(self)
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }
}

/// A finite presentation of a knot group or a 0-surgery group.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub name: String,
    pub generators: Vec<String>,
    pub relators: Vec<Word>,
    pub longitude: Option<Word>,
    pub genus: Option<u32>,
}

#[derive(Debug, Error)]
pub enum PresentationError {
    #[error("schema error: {0}")]
    Schema(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("longitude is not null-homologous (exponent sum {0})")]
    LongitudeNotNullhomologous(i64),
    #[error("genus {0} out of range (must be >= 1)")]
    GenusOutOfRange(i64),
    #[error("presentation has no longitude")]
    MissingLongitude,
    #[error("relator {0} is not balanced under the meridian abelianization")]
    RelatorNotBalanced(usize),
    #[error("relation `{0}` is not of the form `lhs = rhs`")]
    MalformedRelation(String),
}

#[derive(Deserialize)]
struct PresentationDoc {
    name: String,
    generators: Vec<String>,
    #[serde(default)]
    relators: Vec<String>,
    #[serde(default)]
    relations: Vec<String>,
    #[serde(default)]
    longitude: Option<String>,
    #[serde(default)]
    genus: Option<i64>,
}

/// Loads and validates the JSON presentation format.
pub fn load_presentation(document: &[u8]) -> Result<Presentation, PresentationError> {
    let doc: PresentationDoc = serde_json::from_slice(document)
        .map_err(|e| PresentationError::Schema(e.to_string()))?;
    for (i, g) in doc.generators.iter().enumerate() {
        if doc.generators[..i].contains(g) {
            return Err(PresentationError::DuplicateGenerator(g.clone()));
        }
    }
    let mut relators = Vec::new();
    for r in &doc.relators {
        relators.push(parse_word(r, &doc.generators)?);
    }
    for rel in &doc.relations {
        let (lhs, rhs) = rel
            .split_once('=')
            .ok_or_else(|| PresentationError::MalformedRelation(rel.clone()))?;
        let lhs = parse_word(lhs, &doc.generators)?;
        let rhs = parse_word(rhs, &doc.generators)?;
        relators.push(lhs.mul(&rhs.inverse()));
    }
    let longitude = match &doc.longitude {
        Some(l) => {
            let w = parse_word(l, &doc.generators)?;
            let sum = w.exponent_sum();
            if sum != 0 {
                return Err(PresentationError::LongitudeNotNullhomologous(sum));
            }
            Some(w)
        }
        None => None,
    };
    let genus = match doc.genus {
        Some(g) if g >= 1 => Some(g as u32),
        Some(g) => return Err(PresentationError::GenusOutOfRange(g)),
        None => None,
    };
    Ok(Presentation { name: doc.name, generators: doc.generators, relators, longitude, genus })
}

/// Kills the longitude: the 0-surgery group presentation.
pub fn surgery_presentation(p: &Presentation) -> Result<Presentation, PresentationError> {
    let longitude = p.longitude.clone().ok_or(PresentationError::MissingLongitude)?;
    let mut out = p.clone();
    out.relators.push(longitude);
    out.longitude = None;
    Ok(out)
}

/// The primitive class sending every meridian generator to 1.
pub fn abelianization_phi(p: &Presentation) -> Result<Phi, PresentationError> {
    let phi = Phi { values: vec![1; p.generators.len()] };
    for (i, r) in p.relators.iter().enumerate() {
        if phi.weight(r) != 0 {
            return Err(PresentationError::RelatorNotBalanced(i));
        }
    }
    if let Some(l) = &p.longitude {
        if phi.weight(l) != 0 {
            return Err(PresentationError::LongitudeNotNullhomologous(phi.weight(l)));
        }
    }
    Ok(phi)
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "g{}{}", l.gen, if l.sign > 0 { "" } else { "^-1" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gens(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parse_conjugation_relation_word() {
        let g = gens(&["a", "b", "h"]);
        let w = parse_word("h^-1 b h", &g).unwrap();
        assert_eq!(
            w.letters(),
            &[
                Letter { gen: 2, sign: -1 },
                Letter { gen: 1, sign: 1 },
                Letter { gen: 2, sign: 1 }
            ]
        );
    }

    #[test]
    fn parse_reduces_freely() {
        let g = gens(&["x"]);
        assert!(parse_word("x x^-1", &g).unwrap().is_empty());
    }

    #[test]
    fn parse_expands_powers() {
        let g = gens(&["a"]);
        let w = parse_word("a^7", &g).unwrap();
        assert_eq!(w.len(), 7);
        assert!(w.letters().iter().all(|l| l.gen == 0 && l.sign == 1));
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        let g = gens(&["x"]);
        assert_eq!(parse_word("y", &g), Err(WordError::UnknownGenerator("y".into())));
        assert_eq!(parse_word("x^0", &g), Err(WordError::ZeroExponent(0)));
        assert!(matches!(parse_word("x x^z", &g), Err(WordError::MalformedToken { .. })));
    }

    #[test]
    fn word_mul_reduces_across_seam() {
        let g = gens(&["x", "y"]);
        let u = parse_word("x y", &g).unwrap();
        let v = parse_word("y^-1 x", &g).unwrap();
        assert_eq!(u.mul(&v), parse_word("x x", &g).unwrap());
        assert_eq!(Word::empty().mul(&u), u);
    }

    #[test]
    fn word_inverse_cancels() {
        let g = gens(&["x", "y"]);
        let w = parse_word("x y", &g).unwrap();
        assert_eq!(w.inverse(), parse_word("y^-1 x^-1", &g).unwrap());
        assert!(w.mul(&w.inverse()).is_empty());
        assert!(Word::empty().inverse().is_empty());
        assert_eq!(parse_word("x^-1", &g).unwrap().inverse(), parse_word("x", &g).unwrap());
    }

    #[test]
    fn fox_defining_rules() {
        let g = gens(&["x", "y"]);
        let x = parse_word("x", &g).unwrap();
        assert_eq!(fox_derivative(&x, 0), FreeRingElement::one());
        assert!(fox_derivative(&x, 1).is_zero());
        let xi = parse_word("x^-1", &g).unwrap();
        assert_eq!(fox_derivative(&xi, 0), FreeRingElement::monomial(xi.clone(), -1));
    }

    #[test]
    fn fox_trefoil_relator() {
        // d/dx (x y x y^-1 x^-1 y^-1) = 1 + xy - xyxy^-1x^-1
        let g = gens(&["x", "y"]);
        let r = parse_word("x y x y^-1 x^-1 y^-1", &g).unwrap();
        let mut expected = FreeRingElement::one();
        expected.add_term(parse_word("x y", &g).unwrap(), 1);
        expected.add_term(parse_word("x y x y^-1 x^-1", &g).unwrap(), -1);
        assert_eq!(fox_derivative(&r, 0), expected);
    }

    #[test]
    fn load_pretzel_fixture() {
        let bytes = include_bytes!("../tests/fixtures/pretzel.json");
        let p = load_presentation(bytes).unwrap();
        assert_eq!(p.generators.len(), 13);
        assert_eq!(p.relators.len(), 13);
        assert_eq!(p.genus, Some(1));
        let l = p.longitude.as_ref().unwrap();
        assert_eq!(l.exponent_sum(), 0);
        let s = surgery_presentation(&p).unwrap();
        assert_eq!(s.relators.len(), 14);
        assert!(s.longitude.is_none());
        assert!(matches!(
            surgery_presentation(&s),
            Err(PresentationError::MissingLongitude)
        ));
    }

    #[test]
    fn load_rejects_bad_longitude_and_genus() {
        let doc = br#"{"name":"t","generators":["a"],"relators":[],"longitude":"a","genus":1}"#;
        assert!(matches!(
            load_presentation(doc),
            Err(PresentationError::LongitudeNotNullhomologous(1))
        ));
        let doc = br#"{"name":"t","generators":["a"],"relators":[],"longitude":null,"genus":0}"#;
        assert!(matches!(load_presentation(doc), Err(PresentationError::GenusOutOfRange(0))));
    }

    #[test]
    fn abelianization_on_meridian_presentations() {
        let bytes = include_bytes!("../tests/fixtures/trefoil.json");
        let p = load_presentation(bytes).unwrap();
        let phi = abelianization_phi(&p).unwrap();
        assert_eq!(phi.values, vec![1, 1]);
        let mut bad = p.clone();
        bad.relators.push(parse_word("x y", &p.generators).unwrap());
        assert!(matches!(abelianization_phi(&bad), Err(PresentationError::RelatorNotBalanced(1))));
    }

    fn arb_word(num_gens: usize, max_len: usize) -> impl Strategy<Value = Word> {
        prop::collection::vec((0..num_gens, prop::bool::ANY), 0..=max_len).prop_map(|ls| {
            Word::from_letters(
                ls.into_iter()
                    .map(|(gen, pos)| Letter { gen, sign: if pos { 1 } else { -1 } }),
            )
        })
    }

    proptest! {
        // Sum_i (dw/dx_i)(x_i - 1) = w - 1 in the free group ring.
        #[test]
        fn fox_fundamental_identity(w in arb_word(3, 30)) {
            let mut lhs = FreeRingElement::zero();
            for i in 0..3 {
                let xi = Word::from_letters([Letter { gen: i, sign: 1 }]);
                let factor = FreeRingElement::monomial(xi, 1).sub(&FreeRingElement::one());
                lhs = lhs.add(&fox_derivative(&w, i).mul(&factor));
            }
            let rhs = FreeRingElement::monomial(w, 1).sub(&FreeRingElement::one());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn fox_product_rule(u in arb_word(3, 15), v in arb_word(3, 15)) {
            for i in 0..3 {
                let whole = fox_derivative(&u.mul(&v), i);
                let split = fox_derivative(&u, i).add(&fox_derivative(&v, i).mul_word_left(&u));
                prop_assert_eq!(whole, split);
            }
        }

        #[test]
        fn words_form_a_group(u in arb_word(3, 12), v in arb_word(3, 12), w in arb_word(3, 12)) {
            prop_assert_eq!(u.mul(&v).mul(&w), u.mul(&v.mul(&w)));
            prop_assert!(u.mul(&u.inverse()).is_empty());
            prop_assert_eq!(u.mul(&Word::empty()), u);
        }

        #[test]
        fn render_parse_roundtrip(w in arb_word(3, 20)) {
            let gens: Vec<String> = vec!["x".into(), "y".into(), "z".into()];
            let text = w.render(&gens);
            prop_assert_eq!(parse_word(&text, &gens).unwrap(), w);
        }
    }
}
