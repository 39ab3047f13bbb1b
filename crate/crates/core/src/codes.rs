//! Gauss words and knot shadows on the oriented sphere.
//!
//! A shadow with `n` crossings is stored as its Gauss word (a double-occurrence
//! word of length `2n`) together with one bit of local orientation per crossing:
//! `orientation[x] = +1` when the second passage through crossing `x` crosses
//! the first passage from right to left, as seen along the first passage.
//! Word plus orientations is a rotation system of the underlying 4-valent
//! graph, which pins down the curve on the oriented sphere. Reflecting the
//! sphere negates every orientation and leaves the word alone.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// A sequence of `2n` crossing labels in which every label occurs exactly
/// twice. Labels are normalized to `0..n` in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleOccurrenceWord {
    letters: Vec<u16>,
}

/// One way of reading a closed curve: start position and direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reading {
    pub start: usize,
    pub reversed: bool,
}

/// Result of re-reading a word: the new letters, the old-to-new label map
/// and, per old label, whether the passage read first is the old second one.
pub(crate) struct Reread {
    pub letters: Vec<u16>,
    pub relabel: Vec<u16>,
    pub swapped: Vec<bool>,
}

impl DoubleOccurrenceWord {
    /// Builds a word from arbitrary labels, relabeling by first occurrence.
    pub fn from_labels<T: Eq + Hash + Clone + fmt::Display>(labels: &[T]) -> Result<Self> {
        let mut index: HashMap<T, u16> = HashMap::new();
        let mut counts: Vec<usize> = Vec::new();
        let mut letters = Vec::with_capacity(labels.len());
        for label in labels {
            let next = index.len() as u16;
            let id = *index.entry(label.clone()).or_insert(next);
            if id as usize == counts.len() {
                counts.push(0);
            }
            counts[id as usize] += 1;
            if counts[id as usize] > 2 {
                return Err(Error::MalformedCode(format!("label {label} occurs more than twice")));
            }
            letters.push(id);
        }
        if let Some(id) = counts.iter().position(|&c| c != 2) {
            let label = index.iter().find(|(_, &v)| v as usize == id).map(|(k, _)| k.to_string());
            return Err(Error::MalformedCode(format!(
                "label {} occurs once",
                label.unwrap_or_default()
            )));
        }
        Ok(Self { letters })
    }

    /// The word of an embedded circle.
    pub fn empty() -> Self {
        Self { letters: Vec::new() }
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn crossing_count(&self) -> usize {
        self.letters.len() / 2
    }

    /// `(first, second)` positions of every label.
    pub fn occurrences(&self) -> Vec<(usize, usize)> {
        let mut occ = vec![(usize::MAX, usize::MAX); self.crossing_count()];
        for (pos, &x) in self.letters.iter().enumerate() {
            let slot = &mut occ[x as usize];
            if slot.0 == usize::MAX {
                slot.0 = pos;
            } else {
                slot.1 = pos;
            }
        }
        occ
    }

    /// For every position, the position of the other occurrence of its label.
    pub fn partners(&self) -> Vec<usize> {
        let mut partner = vec![0; self.letters.len()];
        for (p, q) in self.occurrences() {
            partner[p] = q;
            partner[q] = p;
        }
        partner
    }

    /// Interlacement graph: `a` and `b` are adjacent when exactly one
    /// occurrence of `b` lies strictly between the two occurrences of `a`.
    pub fn interlacement(&self) -> Vec<Vec<bool>> {
        let n = self.crossing_count();
        let occ = self.occurrences();
        let mut graph = vec![vec![false; n]; n];
        for a in 0..n {
            for b in (a + 1)..n {
                let (p, q) = occ[a];
                let inside = |pos: usize| p < pos && pos < q;
                let hit = inside(occ[b].0) as u8 + inside(occ[b].1) as u8;
                if hit == 1 {
                    graph[a][b] = true;
                    graph[b][a] = true;
                }
            }
        }
        graph
    }

    /// Decides whether some closed curve on the sphere has this Gauss word.
    ///
    /// Uses the interlacement-graph characterization: every vertex has even
    /// degree, every non-adjacent pair has an even number of common
    /// neighbours, and the edges whose endpoints share an even number of
    /// neighbours form a cocycle.
    pub fn is_realizable(&self) -> bool {
        let n = self.crossing_count();
        if n == 0 {
            return true;
        }
        let graph = self.interlacement();
        if graph.iter().any(|row| row.iter().filter(|&&e| e).count() % 2 == 1) {
            return false;
        }
        let common = |u: usize, v: usize| (0..n).filter(|&w| graph[u][w] && graph[v][w]).count();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for u in 0..n {
            for v in (u + 1)..n {
                if !graph[u][v] && common(u, v) % 2 == 1 {
                    return false;
                }
            }
        }
        for root in 0..n {
            if color[root].is_some() {
                continue;
            }
            color[root] = Some(false);
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for v in 0..n {
                    if !graph[u][v] {
                        continue;
                    }
                    let cut = common(u, v) % 2 == 0;
                    let want = cu ^ cut;
                    match color[v] {
                        None => {
                            color[v] = Some(want);
                            stack.push(v);
                        }
                        Some(c) if c != want => return false,
                        Some(_) => {}
                    }
                }
            }
        }
        true
    }

    /// True when no crossing is nugatory. On the sphere a crossing is
    /// nugatory exactly when its chord is interlaced with no other chord.
    pub fn is_reduced(&self) -> bool {
        let graph = self.interlacement();
        graph.iter().all(|row| row.iter().any(|&e| e))
    }

    /// Nugatory crossing labels, ascending.
    pub fn nugatory_crossings(&self) -> Vec<u16> {
        let graph = self.interlacement();
        (0..self.crossing_count())
            .filter(|&x| !graph[x].iter().any(|&e| e))
            .map(|x| x as u16)
            .collect()
    }

    /// Number of Seifert circles of any curve with this word. The oriented
    /// smoothing joins the incoming arc of each passage to the outgoing arc
    /// of the other passage, so it does not depend on over/under data.
    pub fn seifert_circles(&self) -> usize {
        let len = self.letters.len();
        if len == 0 {
            return 1;
        }
        let partner = self.partners();
        let mut seen = vec![false; len];
        let mut circles = 0;
        for start in 0..len {
            if seen[start] {
                continue;
            }
            circles += 1;
            // arc e runs from position e to position e + 1
            let mut arc = start;
            while !seen[arc] {
                seen[arc] = true;
                let head = (arc + 1) % len;
                arc = partner[head];
            }
        }
        circles
    }

    pub(crate) fn reread(&self, reading: Reading) -> Reread {
        let len = self.letters.len();
        let n = self.crossing_count();
        let occ = self.occurrences();
        let mut relabel = vec![u16::MAX; n];
        let mut swapped = vec![false; n];
        let mut letters = Vec::with_capacity(len);
        let mut next = 0u16;
        for k in 0..len {
            let pos = if reading.reversed {
                (reading.start + len - k) % len
            } else {
                (reading.start + k) % len
            };
            let x = self.letters[pos] as usize;
            if relabel[x] == u16::MAX {
                relabel[x] = next;
                next += 1;
                swapped[x] = pos != occ[x].0;
            }
            letters.push(relabel[x]);
        }
        Reread { letters, relabel, swapped }
    }

    /// All `4n` readings (every start, both directions); one for `n = 0`.
    pub fn readings(&self) -> impl Iterator<Item = Reading> {
        let len = self.letters.len().max(1);
        (0..len).flat_map(|start| {
            [false, true].into_iter().map(move |reversed| Reading { start, reversed })
        })
    }

    /// Lexicographically least word over rotations, reversal and relabeling.
    pub fn canonical(&self) -> DoubleOccurrenceWord {
        let best = self
            .readings()
            .map(|r| self.reread(r).letters)
            .min()
            .unwrap_or_default();
        DoubleOccurrenceWord { letters: best }
    }

    /// All orientation vectors turning this word into a spherical curve.
    /// Empty when the word is not realizable.
    pub fn embeddings(&self) -> Vec<Vec<i8>> {
        let n = self.crossing_count();
        if n == 0 {
            return vec![Vec::new()];
        }
        let mut found = Vec::new();
        let mut eps = vec![1i8; n];
        for mask in 0u64..(1u64 << (n - 1)) {
            for (x, e) in eps.iter_mut().enumerate().skip(1) {
                *e = if mask >> (x - 1) & 1 == 1 { -1 } else { 1 };
            }
            if face_count(&self.letters, &eps) == n + 2 {
                found.push(eps.clone());
                found.push(eps.iter().map(|e| -e).collect());
            }
        }
        found.sort();
        found
    }
}

impl fmt::Display for DoubleOccurrenceWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "()");
        }
        let parts: Vec<String> = self.letters.iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Number of faces of the rotation system given by a word and orientations.
///
/// Darts are `2 * arc + end` with `end = 0` at the arc's tail and `1` at its
/// head; arc `e` runs from position `e` to position `e + 1`.
pub(crate) fn face_count(letters: &[u16], eps: &[i8]) -> usize {
    let len = letters.len();
    if len == 0 {
        return 2;
    }
    let n = len / 2;
    let mut occ = vec![(usize::MAX, 0usize); n];
    for (pos, &x) in letters.iter().enumerate() {
        let slot = &mut occ[x as usize];
        if slot.0 == usize::MAX {
            slot.0 = pos;
        } else {
            slot.1 = pos;
        }
    }
    let head = |arc: usize| 2 * arc + 1;
    let tail = |arc: usize| 2 * arc;
    let mut rot = vec![0usize; 2 * len];
    for (x, &(p, q)) in occ.iter().enumerate() {
        let in1 = head((p + len - 1) % len);
        let out1 = tail(p);
        let in2 = head((q + len - 1) % len);
        let out2 = tail(q);
        let cycle = if eps[x] > 0 {
            [in1, in2, out1, out2]
        } else {
            [in1, out2, out1, in2]
        };
        for i in 0..4 {
            rot[cycle[i]] = cycle[(i + 1) % 4];
        }
    }
    let mut seen = vec![false; 2 * len];
    let mut faces = 0;
    for start in 0..2 * len {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut dart = start;
        while !seen[dart] {
            seen[dart] = true;
            dart = rot[dart ^ 1];
        }
    }
    faces
}

/// Seifert circle count, crossing count and genus of a shadow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ShadowStats {
    pub c: usize,
    pub s: usize,
    pub g: usize,
}

/// A realizable Gauss word with a chosen spherical embedding.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Shadow {
    word: DoubleOccurrenceWord,
    orientation: Vec<i8>,
    key: String,
}

impl Shadow {
    /// The embedded circle.
    pub fn circle() -> Self {
        Self::from_parts_unchecked(DoubleOccurrenceWord::empty(), Vec::new())
    }

    /// Builds a shadow from a word and explicit crossing orientations.
    pub fn new(word: DoubleOccurrenceWord, orientation: Vec<i8>) -> Result<Self> {
        let n = word.crossing_count();
        if orientation.len() != n {
            return Err(Error::MalformedCode(format!(
                "{} orientation signs for {} crossings",
                orientation.len(),
                n
            )));
        }
        if orientation.iter().any(|&e| e != 1 && e != -1) {
            return Err(Error::MalformedCode("orientation signs must be +1 or -1".into()));
        }
        if face_count(word.letters(), &orientation) != n + 2 {
            return Err(Error::NotRealizable(format!("{word} with the given orientations")));
        }
        Ok(Self::from_parts_unchecked(word, orientation))
    }

    /// Builds a shadow from a word alone. When the word has several
    /// embeddings (composite curves) the one with the least canonical key
    /// is chosen.
    pub fn from_word(word: DoubleOccurrenceWord) -> Result<Self> {
        if !word.is_realizable() {
            return Err(Error::NotRealizable(word.to_string()));
        }
        let best = word
            .embeddings()
            .into_iter()
            .min_by_key(|eps| canonical_code(&word, eps, false))
            .ok_or_else(|| Error::NotRealizable(word.to_string()))?;
        Ok(Self::from_parts_unchecked(word, best))
    }

    pub(crate) fn from_parts_unchecked(word: DoubleOccurrenceWord, orientation: Vec<i8>) -> Self {
        let key = format_code(&canonical_code(&word, &orientation, false), word.crossing_count());
        Self { word, orientation, key }
    }

    pub fn word(&self) -> &DoubleOccurrenceWord {
        &self.word
    }

    pub fn orientation(&self) -> &[i8] {
        &self.orientation
    }

    pub fn crossing_count(&self) -> usize {
        self.word.crossing_count()
    }

    /// Canonical key up to rotation, reversal and relabeling.
    pub fn key(&self) -> &str {
        &self.key
    }

    /// Canonical key, optionally also identifying a curve with its reflection.
    pub fn canonical_key(&self, reflection_quotient: bool) -> String {
        if reflection_quotient {
            format_code(
                &canonical_code(&self.word, &self.orientation, true),
                self.crossing_count(),
            )
        } else {
            self.key.clone()
        }
    }

    /// This curve read from its canonical reading.
    pub fn canonical(&self) -> Shadow {
        let code = canonical_code(&self.word, &self.orientation, false);
        let (word, eps) = split_code(&code, self.crossing_count());
        Self { word, orientation: eps, key: self.key.clone() }
    }

    /// Same curve, read from another start point and/or direction.
    pub fn reread(&self, reading: Reading) -> Shadow {
        let (word, eps) = reread_signed(&self.word, &self.orientation, reading);
        Self { word, orientation: eps, key: self.key.clone() }
    }

    /// Mirror image of the curve under a reflection of the sphere.
    pub fn reflect(&self) -> Shadow {
        let eps: Vec<i8> = self.orientation.iter().map(|e| -e).collect();
        Self::from_parts_unchecked(self.word.clone(), eps)
    }

    pub fn is_reduced(&self) -> bool {
        self.word.is_reduced()
    }

    pub fn stats(&self) -> ShadowStats {
        let c = self.crossing_count();
        let s = self.word.seifert_circles();
        ShadowStats { c, s, g: (1 + c - s) / 2 }
    }

    /// Code text with explicit orientations, accepted back by [`parse_shadow`].
    pub fn code(&self) -> String {
        let mut code: Vec<u16> = self.word.letters().to_vec();
        code.extend(self.orientation.iter().map(|&e| (e < 0) as u16));
        format_code(&code, self.crossing_count())
    }

    /// Like [`Shadow::code`] but with letters `a`..`z` as labels. Falls back
    /// to numbers past 26 crossings.
    pub fn letter_code(&self) -> String {
        let n = self.crossing_count();
        if n > 26 {
            return self.code();
        }
        let code = self.code();
        let Some((_, signs)) = code.split_once(" | ") else {
            return code;
        };
        let letters: Vec<String> =
            self.word.letters().iter().map(|&x| char::from(b'a' + x as u8).to_string()).collect();
        format!("{} | {}", letters.join(" "), signs)
    }
}

impl fmt::Display for Shadow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

pub(crate) fn reread_signed(
    word: &DoubleOccurrenceWord,
    eps: &[i8],
    reading: Reading,
) -> (DoubleOccurrenceWord, Vec<i8>) {
    let r = word.reread(reading);
    let mut new_eps = vec![0i8; eps.len()];
    for (x, &e) in eps.iter().enumerate() {
        new_eps[r.relabel[x] as usize] = if r.swapped[x] { -e } else { e };
    }
    (DoubleOccurrenceWord { letters: r.letters }, new_eps)
}

/// Letters followed by one bit per crossing (1 for negative orientation).
fn canonical_code(word: &DoubleOccurrenceWord, eps: &[i8], reflection_quotient: bool) -> Vec<u16> {
    let signs: &[i8] = if reflection_quotient { &[1, -1] } else { &[1] };
    let mut best: Option<Vec<u16>> = None;
    for reading in word.readings() {
        let r = word.reread(reading);
        for &flip in signs {
            let mut code = r.letters.clone();
            let mut bits = vec![0u16; eps.len()];
            for (x, &e) in eps.iter().enumerate() {
                let e = if r.swapped[x] { -e } else { e } * flip;
                bits[r.relabel[x] as usize] = (e < 0) as u16;
            }
            code.extend(bits);
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
    }
    best.unwrap_or_default()
}

fn split_code(code: &[u16], n: usize) -> (DoubleOccurrenceWord, Vec<i8>) {
    let letters = code[..2 * n].to_vec();
    let eps = code[2 * n..].iter().map(|&b| if b == 1 { -1 } else { 1 }).collect();
    (DoubleOccurrenceWord { letters }, eps)
}

fn format_code(code: &[u16], n: usize) -> String {
    if n == 0 {
        return "()".to_string();
    }
    let letters: Vec<String> = code[..2 * n].iter().map(|x| (x + 1).to_string()).collect();
    let signs: String = code[2 * n..].iter().map(|&b| if b == 1 { '-' } else { '+' }).collect();
    format!("{} | {}", letters.join(" "), signs)
}

/// Parses shadow code text.
///
/// Accepted forms: whitespace- or comma-separated labels (`a b c a b c`,
/// `1 2 3 1 2 3`), optionally followed by `|` and one `+`/`-` per crossing in
/// order of first occurrence. `()` or an empty string is the embedded circle.
pub fn parse_shadow(text: &str) -> Result<Shadow> {
    let (word_part, sign_part) = match text.split_once('|') {
        Some((w, s)) => (w, Some(s)),
        None => (text, None),
    };
    let tokens: Vec<&str> = word_part
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .collect();
    let tokens: Vec<&str> = if tokens == ["()"] { Vec::new() } else { tokens };
    if tokens.iter().any(|t| t.contains(['(', ')'])) {
        return Err(Error::MalformedCode(format!("unexpected parenthesis in {text:?}")));
    }
    let word = DoubleOccurrenceWord::from_labels(&tokens)?;
    match sign_part {
        None => Shadow::from_word(word),
        Some(signs) => {
            let eps = signs
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '+' => Ok(1),
                    '-' => Ok(-1),
                    other => Err(Error::MalformedCode(format!("bad orientation sign {other:?}"))),
                })
                .collect::<Result<Vec<i8>>>()?;
            Shadow::new(word, eps)
        }
    }
}

/// Parses a file of shadow codes: one per line, `#` starts a comment line.
pub fn parse_shadow_list(text: &str) -> Result<Vec<Shadow>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            parse_shadow(l).map_err(|e| Error::ParseError { line: i + 1, message: e.to_string() })
        })
        .collect()
}

/// Canonical key of a shadow; see [`Shadow::canonical_key`].
pub fn canonical_form(shadow: &Shadow, reflection_quotient: bool) -> String {
    shadow.canonical_key(reflection_quotient)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationOptions {
    pub allow_reducible: bool,
    pub reflection_quotient: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self { allow_reducible: true, reflection_quotient: false }
    }
}

/// One shadow per canonical class of spherical curves with `n` crossings,
/// sorted by canonical code.
pub fn enumerate_shadows(n: usize, allow_reducible: bool) -> Vec<Shadow> {
    enumerate_shadows_with(n, EnumerationOptions { allow_reducible, ..Default::default() })
}

pub fn enumerate_shadows_with(n: usize, opts: EnumerationOptions) -> Vec<Shadow> {
    if n == 0 {
        return vec![Shadow::circle()];
    }
    let words = parity_words(n);
    let mut codes: Vec<Vec<u16>> = words
        .into_par_iter()
        .flat_map_iter(|letters| {
            let word = DoubleOccurrenceWord { letters };
            let mut out = BTreeSet::new();
            if word.canonical() == word
                && (opts.allow_reducible || word.is_reduced())
                && word.is_realizable()
            {
                for eps in word.embeddings() {
                    out.insert(canonical_code(&word, &eps, opts.reflection_quotient));
                }
            }
            out.into_iter()
        })
        .collect();
    codes.sort();
    codes.dedup();
    codes
        .into_iter()
        .map(|code| {
            let (word, eps) = split_code(&code, n);
            Shadow::from_parts_unchecked(word, eps)
        })
        .collect()
}

/// Words in first-occurrence normal form whose two occurrences of every
/// label sit at positions of opposite parity (the Gauss evenness condition).
fn parity_words(n: usize) -> Vec<Vec<u16>> {
    fn go(word: &mut Vec<u16>, next: u16, out: &mut Vec<Vec<u16>>) {
        let Some(i) = word.iter().position(|&x| x == u16::MAX) else {
            out.push(word.clone());
            return;
        };
        word[i] = next;
        for j in ((i + 1)..word.len()).step_by(2) {
            if word[j] == u16::MAX {
                word[j] = next;
                go(word, next + 1, out);
                word[j] = u16::MAX;
            }
        }
        word[i] = u16::MAX;
    }
    let mut out = Vec::new();
    go(&mut vec![u16::MAX; 2 * n], 0, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(text: &str) -> DoubleOccurrenceWord {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        DoubleOccurrenceWord::from_labels(&tokens).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(parse_shadow("a a").unwrap().crossing_count(), 1);
        assert_eq!(parse_shadow("a b c a b c").unwrap().crossing_count(), 3);
        assert_eq!(parse_shadow("1,2,3,1,2,3").unwrap().crossing_count(), 3);
        assert!(matches!(parse_shadow("a b c a c b"), Err(Error::NotRealizable(_))));
        assert!(matches!(parse_shadow("a b a"), Err(Error::MalformedCode(_))));
        assert!(matches!(parse_shadow("a a a"), Err(Error::MalformedCode(_))));
        assert_eq!(parse_shadow("()").unwrap(), Shadow::circle());
        assert_eq!(parse_shadow("").unwrap(), Shadow::circle());
    }

    #[test]
    fn letter_codes_parse_back() {
        for s in enumerate_shadows(4, true) {
            let text = s.letter_code();
            assert!(text.starts_with('a'), "{text}");
            assert_eq!(parse_shadow(&text).unwrap(), s);
        }
        assert_eq!(Shadow::circle().letter_code(), "()");
    }

    #[test]
    fn realizability_examples() {
        assert!(DoubleOccurrenceWord::empty().is_realizable());
        assert!(word("a a").is_realizable());
        assert!(word("a b b a").is_realizable());
        assert!(word("a b c a b c").is_realizable());
        assert!(!word("a b c a c b").is_realizable());
        // odd number of letters between the two a's
        assert!(!word("a b a b").is_realizable());
    }

    #[test]
    fn explicit_orientation_round_trip() {
        let s = parse_shadow("a b c a b c").unwrap();
        let again = parse_shadow(&s.code()).unwrap();
        assert_eq!(s, again);
        // flipping one orientation of a prime curve breaks planarity
        let flipped = {
            let mut eps = s.orientation().to_vec();
            eps[0] = -eps[0];
            Shadow::new(s.word().clone(), eps)
        };
        assert!(matches!(flipped, Err(Error::NotRealizable(_))));
    }

    #[test]
    fn canonical_form_is_reading_invariant() {
        let a = parse_shadow("a b c a b c").unwrap();
        let b = parse_shadow("b c a b c a").unwrap();
        let rev = parse_shadow("c b a c b a").unwrap();
        assert_eq!(a.key(), b.key());
        assert_eq!(a.key(), rev.key());
        for r in a.word().readings() {
            assert_eq!(a.reread(r).key(), a.key());
            let fresh = Shadow::new(a.reread(r).word().clone(), a.reread(r).orientation().to_vec())
                .unwrap();
            assert_eq!(fresh.key(), a.key());
        }
    }

    #[test]
    fn trefoil_shadow_reflection() {
        let s = parse_shadow("a b c a b c").unwrap();
        // the trefoil curve is symmetric under reflection of the sphere
        assert_eq!(s.reflect().key(), s.key());
        assert_eq!(s.canonical_key(true), s.reflect().canonical_key(true));
    }

    #[test]
    fn shadow_stats_of_small_curves() {
        assert_eq!(Shadow::circle().stats(), ShadowStats { c: 0, s: 1, g: 0 });
        assert_eq!(parse_shadow("a a").unwrap().stats(), ShadowStats { c: 1, s: 2, g: 0 });
        assert_eq!(parse_shadow("a b c a b c").unwrap().stats(), ShadowStats { c: 3, s: 2, g: 1 });
        assert_eq!(
            parse_shadow("a b c d a b c d").unwrap_err(),
            Error::NotRealizable("1 2 3 4 1 2 3 4".into())
        );
        assert_eq!(parse_shadow("1 2 3 4 1 4 3 2").unwrap_err().name(), "NotRealizable");
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_shadows(0, true).len(), 1);
        assert_eq!(enumerate_shadows(1, true).len(), 1);
        assert_eq!(enumerate_shadows(1, false).len(), 0);
        let three = enumerate_shadows(3, false);
        let trefoil = parse_shadow("a b c a b c").unwrap();
        assert!(three.iter().any(|s| s.key() == trefoil.key()));
    }

    #[test]
    fn enumeration_is_canonical_and_sorted() {
        for n in 0..=4 {
            let list = enumerate_shadows(n, true);
            for s in &list {
                assert!(s.word().is_realizable());
                assert_eq!(s.canonical().key(), s.key());
                assert_eq!(s.code(), s.key(), "emitted shadows are in canonical reading");
            }
            let keys: Vec<&str> = list.iter().map(|s| s.key()).collect();
            let mut sorted = keys.clone();
            sorted.dedup();
            assert_eq!(keys.len(), sorted.len());
        }
    }

    #[test]
    fn nugatory_detection() {
        assert!(!word("a a").is_reduced());
        assert!(word("a b c a b c").is_reduced());
        // trefoil curve with a kink appended
        assert_eq!(word("a b c a b c d d").nugatory_crossings(), vec![3]);
        assert_eq!(word("a a b b").nugatory_crossings(), vec![0, 1]);
        // figure-eight curve summed with a trefoil curve
        assert_eq!(word("a b c a b c d e f d e f").nugatory_crossings().len(), 0);
    }
}
