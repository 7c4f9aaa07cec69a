//! Gauss diagrams of virtual and twisted knot/link diagrams.
//!
//! A diagram is a list of components, each a cyclic word of tokens. A chord
//! records one real crossing: its two endpoints carry the same label and sign,
//! one marked as the over passage and one as the under passage. Bars mark the
//! half-twists of twisted diagrams. Virtual crossings are never represented.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn from_value(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    pub fn flip(self) -> Passage {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Token {
    Chord { label: u32, passage: Passage, sign: Sign },
    Bar,
}

impl Token {
    pub fn chord(label: u32, passage: Passage, sign: Sign) -> Token {
        Token::Chord { label, passage, sign }
    }

    pub fn is_bar(&self) -> bool {
        matches!(self, Token::Bar)
    }

    fn render(&self) -> String {
        match self {
            Token::Bar => "B".to_string(),
            Token::Chord { label, passage, sign } => {
                let p = match passage {
                    Passage::Over => 'O',
                    Passage::Under => 'U',
                };
                let s = match sign {
                    Sign::Plus => '+',
                    Sign::Minus => '-',
                };
                format!("{}{}{}", p, label, s)
            }
        }
    }
}

/// Position of a token: (component index, offset within the component).
pub type Pos = (usize, usize);

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ChordInfo {
    pub over: Pos,
    pub under: Pos,
    pub sign: Sign,
}

impl ChordInfo {
    pub fn endpoint(&self, passage: Passage) -> Pos {
        match passage {
            Passage::Over => self.over,
            Passage::Under => self.under,
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GaussError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("chord {label} occurs {count} times, expected 2")]
    LabelCount { label: u32, count: usize },
    #[error("chord {label} has two {passage:?} passages")]
    DuplicatePassage { label: u32, passage: Passage },
    #[error("chord {label} has mismatched signs on its two endpoints")]
    SignMismatch { label: u32 },
    #[error("unknown chord label {label}")]
    UnknownLabel { label: u32 },
    #[error("operation requires a knot diagram (single component), found {found} components")]
    NotAKnot { found: usize },
    #[error("operation requires a bar-free diagram, found {found} bars")]
    HasBars { found: usize },
}

/// A virtual (or, with bars, twisted) link diagram as a Gauss diagram.
///
/// Values are immutable after construction; all operations produce new
/// diagrams. Equality is syntactic up to independent rotation of each
/// component's cyclic word and renaming of chord labels. It is not knot
/// equivalence.
#[derive(Clone)]
pub struct GaussDiagram {
    components: Vec<Vec<Token>>,
    chords: BTreeMap<u32, ChordInfo>,
}

impl GaussDiagram {
    pub fn new(components: Vec<Vec<Token>>) -> Result<Self, GaussError> {
        let chords = Self::build_chord_table(&components)?;
        Ok(GaussDiagram { components, chords })
    }

    /// The unknot: one component, no tokens.
    pub fn unknot() -> Self {
        GaussDiagram { components: vec![vec![]], chords: BTreeMap::new() }
    }

    fn build_chord_table(components: &[Vec<Token>]) -> Result<BTreeMap<u32, ChordInfo>, GaussError> {
        #[derive(Default)]
        struct Partial {
            over: Option<Pos>,
            under: Option<Pos>,
            signs: Vec<Sign>,
            count: usize,
        }
        let mut partial: BTreeMap<u32, Partial> = BTreeMap::new();
        for (ci, comp) in components.iter().enumerate() {
            for (ti, tok) in comp.iter().enumerate() {
                if let Token::Chord { label, passage, sign } = *tok {
                    let p = partial.entry(label).or_default();
                    p.count += 1;
                    p.signs.push(sign);
                    match passage {
                        Passage::Over => {
                            if p.over.is_some() {
                                return Err(GaussError::DuplicatePassage { label, passage });
                            }
                            p.over = Some((ci, ti));
                        }
                        Passage::Under => {
                            if p.under.is_some() {
                                return Err(GaussError::DuplicatePassage { label, passage });
                            }
                            p.under = Some((ci, ti));
                        }
                    }
                }
            }
        }
        let mut chords = BTreeMap::new();
        for (label, p) in partial {
            if p.count != 2 {
                return Err(GaussError::LabelCount { label, count: p.count });
            }
            if p.signs[0] != p.signs[1] {
                return Err(GaussError::SignMismatch { label });
            }
            chords.insert(
                label,
                ChordInfo { over: p.over.unwrap(), under: p.under.unwrap(), sign: p.signs[0] },
            );
        }
        Ok(chords)
    }

    pub fn components(&self) -> &[Vec<Token>] {
        &self.components
    }

    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn token(&self, pos: Pos) -> &Token {
        &self.components[pos.0][pos.1]
    }

    pub fn chords(&self) -> &BTreeMap<u32, ChordInfo> {
        &self.chords
    }

    pub fn chord(&self, label: u32) -> Result<&ChordInfo, GaussError> {
        self.chords.get(&label).ok_or(GaussError::UnknownLabel { label })
    }

    pub fn n_chords(&self) -> usize {
        self.chords.len()
    }

    pub fn n_bars(&self) -> usize {
        self.components.iter().map(|c| c.iter().filter(|t| t.is_bar()).count()).sum()
    }

    pub fn is_knot(&self) -> bool {
        self.components.len() == 1
    }

    pub fn max_label(&self) -> u32 {
        self.chords.keys().next_back().copied().unwrap_or(0)
    }

    pub fn require_knot(&self) -> Result<(), GaussError> {
        if !self.is_knot() {
            return Err(GaussError::NotAKnot { found: self.components.len() });
        }
        Ok(())
    }

    pub fn require_bar_free(&self) -> Result<(), GaussError> {
        let bars = self.n_bars();
        if bars > 0 {
            return Err(GaussError::HasBars { found: bars });
        }
        Ok(())
    }

    /// Sum of chord signs.
    pub fn writhe(&self) -> i64 {
        self.chords.values().map(|c| c.sign.value()).sum()
    }

    /// Flip every chord's sign and swap its over/under passages.
    pub fn mirror(&self) -> GaussDiagram {
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|t| match *t {
                        Token::Bar => Token::Bar,
                        Token::Chord { label, passage, sign } => {
                            Token::Chord { label, passage: passage.flip(), sign: sign.flip() }
                        }
                    })
                    .collect()
            })
            .collect();
        GaussDiagram::new(components).expect("mirror preserves validity")
    }

    /// Reverse the orientation of every component.
    pub fn reverse(&self) -> GaussDiagram {
        let components = self
            .components
            .iter()
            .map(|comp| comp.iter().rev().cloned().collect())
            .collect();
        GaussDiagram::new(components).expect("reverse preserves validity")
    }

    /// Switch one crossing: flip its sign and swap its passages.
    pub fn crossing_change(&self, label: u32) -> Result<GaussDiagram, GaussError> {
        self.chord(label)?;
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|t| match *t {
                        Token::Chord { label: l, passage, sign } if l == label => {
                            Token::Chord { label: l, passage: passage.flip(), sign: sign.flip() }
                        }
                        other => other,
                    })
                    .collect()
            })
            .collect();
        GaussDiagram::new(components)
    }

    /// Delete both endpoints of one chord (the crossing becomes virtual).
    pub fn delete_chord(&self, label: u32) -> Result<GaussDiagram, GaussError> {
        self.chord(label)?;
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .filter(|t| !matches!(t, Token::Chord { label: l, .. } if *l == label))
                    .cloned()
                    .collect()
            })
            .collect();
        GaussDiagram::new(components)
    }

    /// Forget signs and passages.
    pub fn flat_projection(&self) -> FlatDiagram {
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|t| match *t {
                        Token::Bar => FlatToken::Bar,
                        Token::Chord { label, .. } => FlatToken::Chord(label),
                    })
                    .collect()
            })
            .collect();
        FlatDiagram { components }
    }

    /// Tokens of a component in cyclic order starting from `from`.
    pub fn rotated(&self, comp: usize, from: usize) -> Vec<Token> {
        let c = &self.components[comp];
        let n = c.len();
        (0..n).map(|i| c[(from + i) % n]).collect()
    }

    /// Canonical form: minimal over all per-component rotations of the
    /// relabeled token sequences; chord labels are assigned in order of
    /// first occurrence. Used for equality and hashing.
    fn canonical_key(&self) -> Vec<Vec<CanonToken>> {
        let rotations: Vec<usize> = self.components.iter().map(|c| c.len().max(1)).collect();
        let mut best: Option<Vec<Vec<CanonToken>>> = None;
        let mut counter = vec![0usize; rotations.len()];
        loop {
            let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
            let mut key: Vec<Vec<CanonToken>> = Vec::with_capacity(self.components.len());
            for (ci, comp) in self.components.iter().enumerate() {
                let n = comp.len();
                let mut row = Vec::with_capacity(n);
                for i in 0..n {
                    let tok = comp[(counter[ci] + i) % n];
                    row.push(CanonToken::from_token(tok, &mut relabel));
                }
                key.push(row);
            }
            match &best {
                Some(b) if *b <= key => {}
                _ => best = Some(key),
            }
            // advance the mixed-radix rotation counter
            let mut k = 0;
            loop {
                if k == counter.len() {
                    return best.unwrap();
                }
                counter[k] += 1;
                if counter[k] < rotations[k] {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
        }
    }

    /// Parse the Gauss-code grammar: components separated by `/`, tokens
    /// separated by whitespace or commas, token = `O`|`U` label `+`|`-` or `B`.
    pub fn parse(text: &str) -> Result<GaussDiagram, GaussError> {
        let mut components = Vec::new();
        let mut offset = 0usize;
        for (k, part) in text.split('/').enumerate() {
            if k > 0 {
                offset += 1; // the '/'
            }
            components.push(parse_component(part, offset)?);
            offset += part.chars().count();
        }
        GaussDiagram::new(components)
    }

    /// Canonical text: each component rotated to its lexicographically
    /// minimal rotation (comparing rendered tokens), components joined by
    /// `" / "`. Labels are kept as-is.
    pub fn serialize(&self) -> String {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|comp| {
                let n = comp.len();
                if n == 0 {
                    return String::new();
                }
                let rendered: Vec<String> = comp.iter().map(|t| t.render()).collect();
                let best = (0..n)
                    .map(|r| {
                        let mut v: Vec<&str> = Vec::with_capacity(n);
                        for i in 0..n {
                            v.push(&rendered[(r + i) % n]);
                        }
                        v
                    })
                    .min()
                    .unwrap();
                best.join(" ")
            })
            .collect();
        parts.join(" / ")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
enum CanonToken {
    Chord { label: u32, passage: Passage, sign: Sign },
    Bar,
}

impl CanonToken {
    fn from_token(tok: Token, relabel: &mut BTreeMap<u32, u32>) -> CanonToken {
        match tok {
            Token::Bar => CanonToken::Bar,
            Token::Chord { label, passage, sign } => {
                let next = relabel.len() as u32;
                let l = *relabel.entry(label).or_insert(next);
                CanonToken::Chord { label: l, passage, sign }
            }
        }
    }
}

impl PartialEq for GaussDiagram {
    fn eq(&self, other: &Self) -> bool {
        if self.components.len() != other.components.len() {
            return false;
        }
        self.canonical_key() == other.canonical_key()
    }
}

impl Eq for GaussDiagram {}

impl std::hash::Hash for GaussDiagram {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.canonical_key().hash(state);
    }
}

impl fmt::Debug for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaussDiagram({:?})", self.serialize())
    }
}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.serialize())
    }
}

fn parse_component(part: &str, base_offset: usize) -> Result<Vec<Token>, GaussError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = part.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == ',' {
            i += 1;
            continue;
        }
        let start = base_offset + i;
        match c {
            'B' => {
                tokens.push(Token::Bar);
                i += 1;
            }
            'O' | 'U' => {
                let passage = if c == 'O' { Passage::Over } else { Passage::Under };
                i += 1;
                let mut label: Option<u32> = None;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    let d = chars[i].to_digit(10).unwrap();
                    label = Some(label.unwrap_or(0).saturating_mul(10).saturating_add(d));
                    i += 1;
                }
                let label = label.ok_or(GaussError::Syntax {
                    offset: start,
                    message: format!("expected a chord label after '{}'", c),
                })?;
                let sign = match chars.get(i) {
                    Some('+') => Sign::Plus,
                    Some('-') | Some('\u{2212}') => Sign::Minus,
                    _ => {
                        return Err(GaussError::Syntax {
                            offset: base_offset + i,
                            message: "expected '+' or '-' after the chord label".to_string(),
                        })
                    }
                };
                i += 1;
                tokens.push(Token::Chord { label, passage, sign });
            }
            other => {
                return Err(GaussError::Syntax {
                    offset: start,
                    message: format!("unexpected character '{}'", other),
                })
            }
        }
    }
    Ok(tokens)
}

// --- flat diagrams ---------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum FlatToken {
    Chord(u32),
    Bar,
}

/// A Gauss diagram whose chords carry neither sign nor over/under passage.
#[derive(Clone)]
pub struct FlatDiagram {
    pub components: Vec<Vec<FlatToken>>,
}

impl FlatDiagram {
    pub fn n_components(&self) -> usize {
        self.components.len()
    }

    pub fn n_chords(&self) -> usize {
        self.components
            .iter()
            .map(|c| c.iter().filter(|t| matches!(t, FlatToken::Chord(_))).count())
            .sum::<usize>()
            / 2
    }

    fn canonical_key_ordered(&self) -> Vec<Vec<(u8, u32)>> {
        let rotations: Vec<usize> = self.components.iter().map(|c| c.len().max(1)).collect();
        let mut best: Option<Vec<Vec<(u8, u32)>>> = None;
        let mut counter = vec![0usize; rotations.len()];
        loop {
            let mut relabel: BTreeMap<u32, u32> = BTreeMap::new();
            let mut key = Vec::with_capacity(self.components.len());
            for (ci, comp) in self.components.iter().enumerate() {
                let n = comp.len();
                let mut row = Vec::with_capacity(n);
                for i in 0..n {
                    row.push(canon_flat(comp[(counter[ci] + i) % n], &mut relabel));
                }
                key.push(row);
            }
            match &best {
                Some(b) if *b <= key => {}
                _ => best = Some(key),
            }
            let mut k = 0;
            loop {
                if k == counter.len() {
                    return best.unwrap();
                }
                counter[k] += 1;
                if counter[k] < rotations[k] {
                    break;
                }
                counter[k] = 0;
                k += 1;
            }
        }
    }

    /// Canonical form that additionally forgets the order of the components,
    /// used to key state sums. Exponential only in the number of mutually
    /// symmetric components, which stays tiny for the state diagrams we emit.
    pub fn canonical_string_unordered(&self) -> String {
        let mut best: Option<Vec<Vec<(u8, u32)>>> = None;
        let k = self.components.len();
        let mut used = vec![false; k];
        let mut current: Vec<(usize, usize)> = Vec::with_capacity(k); // (component, rotation)
        fn rec(
            flat: &FlatDiagram,
            used: &mut Vec<bool>,
            current: &mut Vec<(usize, usize)>,
            best: &mut Option<Vec<Vec<(u8, u32)>>>,
        ) {
            if current.len() == used.len() {
                let mut relabel = BTreeMap::new();
                let key: Vec<Vec<(u8, u32)>> = current
                    .iter()
                    .map(|&(ci, r)| {
                        let comp = &flat.components[ci];
                        let n = comp.len().max(1);
                        (0..comp.len())
                            .map(|i| canon_flat(comp[(r + i) % n], &mut relabel))
                            .collect()
                    })
                    .collect();
                match best {
                    Some(b) if *b <= key => {}
                    _ => *best = Some(key),
                }
                return;
            }
            for ci in 0..used.len() {
                if used[ci] {
                    continue;
                }
                used[ci] = true;
                for r in 0..flat.components[ci].len().max(1) {
                    current.push((ci, r));
                    rec(flat, used, current, best);
                    current.pop();
                }
                used[ci] = false;
            }
        }
        rec(self, &mut used, &mut current, &mut best);
        let key = best.unwrap_or_default();
        key.iter()
            .map(|row| {
                row.iter()
                    .map(|&(kind, l)| if kind == 1 { "B".to_string() } else { format!("F{}", l) })
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join(" / ")
    }
}

fn canon_flat(tok: FlatToken, relabel: &mut BTreeMap<u32, u32>) -> (u8, u32) {
    match tok {
        FlatToken::Bar => (1, 0),
        FlatToken::Chord(l) => {
            let next = relabel.len() as u32;
            (0, *relabel.entry(l).or_insert(next))
        }
    }
}

impl PartialEq for FlatDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.components.len() == other.components.len()
            && self.canonical_key_ordered() == other.canonical_key_ordered()
    }
}

impl Eq for FlatDiagram {}

impl fmt::Debug for FlatDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FlatDiagram({:?})", self.canonical_string_unordered())
    }
}

// --- JSON ------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum TokenJson {
    Chord { chord: u32, passage: String, sign: i64 },
    Bar { bar: bool },
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    components: Vec<Vec<TokenJson>>,
}

impl Serialize for GaussDiagram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let components = self
            .components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|t| match *t {
                        Token::Bar => TokenJson::Bar { bar: true },
                        Token::Chord { label, passage, sign } => TokenJson::Chord {
                            chord: label,
                            passage: match passage {
                                Passage::Over => "O".to_string(),
                                Passage::Under => "U".to_string(),
                            },
                            sign: sign.value(),
                        },
                    })
                    .collect()
            })
            .collect();
        DiagramJson { components }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for GaussDiagram {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = DiagramJson::deserialize(deserializer)?;
        let mut components = Vec::with_capacity(raw.components.len());
        for comp in raw.components {
            let mut tokens = Vec::with_capacity(comp.len());
            for t in comp {
                match t {
                    TokenJson::Bar { bar } => {
                        if !bar {
                            return Err(D::Error::custom("\"bar\" must be true"));
                        }
                        tokens.push(Token::Bar);
                    }
                    TokenJson::Chord { chord, passage, sign } => {
                        let passage = match passage.as_str() {
                            "O" => Passage::Over,
                            "U" => Passage::Under,
                            other => {
                                return Err(D::Error::custom(format!(
                                    "passage must be \"O\" or \"U\", got {:?}",
                                    other
                                )))
                            }
                        };
                        let sign = Sign::from_value(sign)
                            .ok_or_else(|| D::Error::custom("sign must be 1 or -1"))?;
                        tokens.push(Token::Chord { label: chord, passage, sign });
                    }
                }
            }
            components.push(tokens);
        }
        GaussDiagram::new(components).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_virtual_trefoil() {
        let d = GaussDiagram::parse("O1+ O2+ U1+ U2+").unwrap();
        assert_eq!(d.n_chords(), 2);
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.writhe(), 2);
        let c1 = d.chord(1).unwrap();
        assert_eq!(c1.sign, Sign::Plus);
        assert_eq!(c1.over, (0, 0));
        assert_eq!(c1.under, (0, 2));
    }

    #[test]
    fn parse_empty_is_unknot() {
        let d = GaussDiagram::parse("").unwrap();
        assert_eq!(d.n_components(), 1);
        assert_eq!(d.n_chords(), 0);
        assert_eq!(d, GaussDiagram::unknot());
        assert_eq!(d.serialize(), "");
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            GaussDiagram::parse("O1+ U1-"),
            Err(GaussError::SignMismatch { label: 1 })
        ));
        assert!(matches!(
            GaussDiagram::parse("O1+"),
            Err(GaussError::LabelCount { label: 1, count: 1 })
        ));
        assert!(matches!(
            GaussDiagram::parse("O1+ O1+"),
            Err(GaussError::DuplicatePassage { label: 1, .. })
        ));
        assert!(matches!(GaussDiagram::parse("X1+"), Err(GaussError::Syntax { offset: 0, .. })));
        assert!(matches!(GaussDiagram::parse("O1+ U1"), Err(GaussError::Syntax { .. })));
    }

    #[test]
    fn parse_accepts_commas_and_unicode_minus() {
        let a = GaussDiagram::parse("O1-, U1-").unwrap();
        let b = GaussDiagram::parse("O1\u{2212} U1\u{2212}").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn serialize_minimal_rotation() {
        let d = GaussDiagram::parse("U1+ U2+ O1+ O2+").unwrap();
        assert_eq!(d.serialize(), "O1+ O2+ U1+ U2+");
        let e = GaussDiagram::parse(&d.serialize()).unwrap();
        assert_eq!(d, e);
    }

    #[test]
    fn rotation_and_relabeling_equality() {
        let a = GaussDiagram::parse("O1+ O2+ U1+ U2+").unwrap();
        let b = GaussDiagram::parse("U7+ O5+ O7+ U5+").unwrap(); // rotated + relabeled
        assert_eq!(a, b);
        let c = GaussDiagram::parse("O1+ O2- U1+ U2-").unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn links_parse_with_shared_labels() {
        let d = GaussDiagram::parse("O1+ U2+ / U1+ O2+").unwrap();
        assert_eq!(d.n_components(), 2);
        assert_eq!(d.n_chords(), 2);
        // component count is explicit: an extra bare circle changes the diagram
        let e = GaussDiagram::parse("O1+ U2+ / U1+ O2+ /").unwrap();
        assert_eq!(e.n_components(), 3);
        assert_ne!(d, e);
    }

    #[test]
    fn mirror_and_reverse() {
        let d = GaussDiagram::parse("O1+ O2+ U1+ U2+").unwrap();
        let m = d.mirror();
        assert_eq!(m, GaussDiagram::parse("U1- U2- O1- O2-").unwrap());
        assert_eq!(m.mirror(), d);
        assert_eq!(d.reverse().reverse(), d);
        assert_eq!(m.writhe(), -d.writhe());
    }

    #[test]
    fn crossing_change_and_delete() {
        let d = GaussDiagram::parse("O1+ O2+ U1+ U2+").unwrap();
        let c = d.crossing_change(1).unwrap();
        assert_eq!(c, GaussDiagram::parse("U1- O2+ O1- U2+").unwrap());
        assert_eq!(c.crossing_change(1).unwrap(), d);
        let e = d.delete_chord(2).unwrap();
        assert_eq!(e, GaussDiagram::parse("O1+ U1+").unwrap());
        assert_eq!(e.n_chords(), 1);
        assert!(d.delete_chord(9).is_err());
    }

    #[test]
    fn bars_count_and_flat() {
        let d = GaussDiagram::parse("O1+ B U1+ B B").unwrap();
        assert_eq!(d.n_bars(), 3);
        let f = d.flat_projection();
        assert_eq!(f.n_chords(), 1);
        assert_eq!(f.components[0].len(), 5);
    }

    #[test]
    fn json_round_trip() {
        let d = GaussDiagram::parse("O1+ B U2- / U1+ O2-").unwrap();
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("\"bar\":true"));
        let back: GaussDiagram = serde_json::from_str(&s).unwrap();
        assert_eq!(d, back);
    }

    #[test]
    fn flat_unordered_canonical() {
        let a = FlatDiagram {
            components: vec![vec![FlatToken::Chord(1)], vec![FlatToken::Chord(1)]],
        };
        let b = FlatDiagram {
            components: vec![vec![FlatToken::Chord(7)], vec![FlatToken::Chord(7)]],
        };
        assert_eq!(a.canonical_string_unordered(), b.canonical_string_unordered());
        assert_eq!(a.canonical_string_unordered(), "F0 / F0");
    }
}
