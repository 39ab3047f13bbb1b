//! Knot diagrams (a shadow plus over/under choices) and PD-coded link
//! diagrams.
//!
//! Crossing sign convention: a crossing is positive when the under-strand
//! passes from right to left as seen along the over-strand's orientation.
//! With the shadow's orientation bit `eps` (second passage crosses the first
//! from right to left when `eps = +1`) this gives
//! `sign = eps` if the first passage is over and `sign = -eps` otherwise.

use std::collections::HashMap;
use std::fmt;

use crate::codes::{self, parse_shadow, reread_signed, DoubleOccurrenceWord, Reading, Shadow};
use crate::error::{Error, Result};

/// A knot diagram: a shadow together with, for every crossing, whether the
/// first passage (in word order) goes over.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    shadow: Shadow,
    over_first: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DiagramStats {
    pub c: usize,
    pub c_plus: usize,
    pub c_minus: usize,
    pub w: i64,
    pub s: usize,
    pub sl: i64,
    pub g: usize,
}

/// Puts over/under data on a shadow; `choices[i]` set means the first
/// passage through crossing `i` is the over-strand.
pub fn assign(shadow: &Shadow, choices: &[bool]) -> Result<Diagram> {
    if choices.len() != shadow.crossing_count() {
        return Err(Error::LengthMismatch { expected: shadow.crossing_count(), got: choices.len() });
    }
    Ok(Diagram { shadow: shadow.clone(), over_first: choices.to_vec() })
}

impl Diagram {
    /// The 0-crossing unknot.
    pub fn unknot() -> Self {
        Self { shadow: Shadow::circle(), over_first: Vec::new() }
    }

    /// Assignment from the low `c` bits of `mask` (bit `i` for crossing `i`).
    pub fn from_mask(shadow: &Shadow, mask: u64) -> Self {
        let over_first = (0..shadow.crossing_count()).map(|i| mask >> i & 1 == 1).collect();
        Self { shadow: shadow.clone(), over_first }
    }

    /// Builds a diagram from a labeled word and an over flag per position.
    pub fn from_positions<T>(labels: &[T], over: &[bool]) -> Result<Self>
    where
        T: Eq + std::hash::Hash + Clone + fmt::Display,
    {
        let word = DoubleOccurrenceWord::from_labels(labels)?;
        let occ = word.occurrences();
        let mut over_first = Vec::with_capacity(occ.len());
        for &(p, q) in &occ {
            if over[p] == over[q] {
                return Err(Error::MalformedCode(format!(
                    "crossing {} is over (or under) on both passages",
                    labels[p]
                )));
            }
            over_first.push(over[p]);
        }
        let shadow = Shadow::from_word(word)?;
        Ok(Self { shadow, over_first })
    }

    pub fn shadow(&self) -> &Shadow {
        &self.shadow
    }

    pub fn choices(&self) -> &[bool] {
        &self.over_first
    }

    pub fn mask(&self) -> u64 {
        self.over_first.iter().enumerate().fold(0, |m, (i, &b)| m | (b as u64) << i)
    }

    pub fn crossing_count(&self) -> usize {
        self.over_first.len()
    }

    pub fn signs(&self) -> Vec<i8> {
        self.shadow
            .orientation()
            .iter()
            .zip(&self.over_first)
            .map(|(&e, &over)| if over { e } else { -e })
            .collect()
    }

    pub fn writhe(&self) -> i64 {
        self.signs().iter().map(|&s| s as i64).sum()
    }

    pub fn stats(&self) -> DiagramStats {
        let signs = self.signs();
        let c = signs.len();
        let c_plus = signs.iter().filter(|&&s| s > 0).count();
        let c_minus = c - c_plus;
        let w = c_plus as i64 - c_minus as i64;
        let s = self.shadow.word().seifert_circles();
        DiagramStats { c, c_plus, c_minus, w, s, sl: w - s as i64, g: (1 + c - s) / 2 }
    }

    /// Flips every crossing.
    pub fn mirror(&self) -> Diagram {
        Diagram {
            shadow: self.shadow.clone(),
            over_first: self.over_first.iter().map(|b| !b).collect(),
        }
    }

    /// Reflects the underlying shadow and keeps every choice. The result is
    /// a diagram of the mirror knot on the reflected shadow.
    pub fn reflect(&self) -> Diagram {
        Diagram { shadow: self.shadow.reflect(), over_first: self.over_first.clone() }
    }

    /// Same diagram, read from another start point and/or direction.
    pub fn reread(&self, reading: Reading) -> Diagram {
        let word = self.shadow.word();
        let r = word.reread(reading);
        let (new_word, eps) = reread_signed(word, self.shadow.orientation(), reading);
        let mut over_first = vec![false; self.over_first.len()];
        for (x, &b) in self.over_first.iter().enumerate() {
            over_first[r.relabel[x] as usize] = b ^ r.swapped[x];
        }
        let shadow = Shadow::new(new_word, eps).expect("rereading keeps planarity");
        Diagram { shadow, over_first }
    }

    /// Canonical key up to rotation, reversal and relabeling. Mirror images
    /// get different keys unless the diagram is symmetric.
    pub fn key(&self) -> String {
        let word = self.shadow.word();
        word.readings()
            .map(|r| self.reread(r).code())
            .min()
            .unwrap_or_else(|| self.code())
    }

    /// Text form: shadow code, `/`, one `1`/`0` per crossing.
    pub fn code(&self) -> String {
        let bits: String = self.over_first.iter().map(|&b| if b { '1' } else { '0' }).collect();
        format!("{} / {}", self.shadow.code(), bits)
    }

    /// Signed Gauss sequence: label positive where the passage is over.
    pub fn gauss_code(&self) -> String {
        let occ = self.shadow.word().occurrences();
        let letters = self.shadow.word().letters();
        let parts: Vec<String> = letters
            .iter()
            .enumerate()
            .map(|(pos, &x)| {
                let first = occ[x as usize].0 == pos;
                let over = self.over_first[x as usize] == first;
                let label = x as i64 + 1;
                (if over { label } else { -label }).to_string()
            })
            .collect();
        parts.join(" ")
    }

    pub fn to_link(&self) -> LinkDiagram {
        let n = self.crossing_count();
        if n == 0 {
            return LinkDiagram { crossings: Vec::new(), free_loops: 1 };
        }
        let len = 2 * n as u32;
        let occ = self.shadow.word().occurrences();
        let crossings = occ
            .iter()
            .enumerate()
            .map(|(x, &(p, q))| {
                let (p, q) = (p as u32, q as u32);
                let prev = |k: u32| (k + len - 1) % len;
                let eps = self.shadow.orientation()[x];
                let over_first = self.over_first[x];
                let slots = match (over_first, eps > 0) {
                    (false, true) => [prev(p), prev(q), p, q],
                    (false, false) => [prev(p), q, p, prev(q)],
                    (true, true) => [prev(q), p, q, prev(p)],
                    (true, false) => [prev(q), prev(p), q, p],
                };
                let positive = if over_first { eps > 0 } else { eps < 0 };
                Crossing { slots, positive }
            })
            .collect();
        LinkDiagram { crossings, free_loops: 0 }
    }

    /// Removes crossings with Reidemeister I and II moves until none applies.
    pub fn simplify(&self) -> Diagram {
        self.to_link()
            .simplify()
            .to_knot()
            .expect("R1/R2 moves keep a knot a planar knot diagram")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

/// The shadow underlying a diagram.
pub fn shadow_of(d: &Diagram) -> &Shadow {
    d.shadow()
}

/// A crossing in PD form. `slots` lists the four incident edges
/// counterclockwise, starting from the incoming under-edge, so the
/// under-strand runs from slot 0 to slot 2. The over-strand runs from slot 3
/// to slot 1 on positive crossings and from slot 1 to slot 3 on negative ones.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [u32; 4],
    pub positive: bool,
}

impl Crossing {
    pub fn sign(&self) -> i8 {
        if self.positive {
            1
        } else {
            -1
        }
    }

    fn over_in(&self) -> usize {
        if self.positive {
            3
        } else {
            1
        }
    }

    fn over_out(&self) -> usize {
        if self.positive {
            1
        } else {
            3
        }
    }

    fn is_incoming(&self, slot: usize) -> bool {
        slot == 0 || slot == self.over_in()
    }

    /// Slot where a strand entering at `slot` leaves.
    fn exit(&self, slot: usize) -> usize {
        if slot == 0 {
            2
        } else {
            self.over_out()
        }
    }

    fn is_over(slot: usize) -> bool {
        slot % 2 == 1
    }

    /// The crossing with over and under exchanged.
    pub fn switched(&self) -> Crossing {
        let s = self.slots;
        if self.positive {
            Crossing { slots: [s[3], s[0], s[1], s[2]], positive: false }
        } else {
            Crossing { slots: [s[1], s[2], s[3], s[0]], positive: true }
        }
    }
}

/// An oriented link diagram in PD form, plus crossingless circles.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    crossings: Vec<Crossing>,
    free_loops: usize,
}

/// `(crossing, slot)` of both ends of every edge.
#[derive(Clone, Copy, Debug)]
struct EdgeEnds {
    head: (usize, usize),
    tail: (usize, usize),
}

impl LinkDiagram {
    pub fn new(crossings: Vec<Crossing>, free_loops: usize) -> Result<Self> {
        let d = LinkDiagram { crossings, free_loops };
        d.check()?;
        Ok(d.compacted())
    }

    /// `k` disjoint circles.
    pub fn unlink(k: usize) -> Self {
        LinkDiagram { crossings: Vec::new(), free_loops: k }
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign() as i64).sum()
    }

    fn check(&self) -> Result<()> {
        let mut seen: HashMap<u32, (usize, usize)> = HashMap::new();
        for c in &self.crossings {
            for slot in 0..4 {
                let entry = seen.entry(c.slots[slot]).or_insert((0, 0));
                if c.is_incoming(slot) {
                    entry.0 += 1;
                } else {
                    entry.1 += 1;
                }
            }
        }
        for (label, (ins, outs)) in seen {
            if ins != 1 || outs != 1 {
                return Err(Error::MalformedCode(format!(
                    "edge {label} must be entered once and left once (in {ins}, out {outs})"
                )));
            }
        }
        Ok(())
    }

    /// Relabels edges `0..2n` in order of first appearance.
    fn compacted(&self) -> LinkDiagram {
        let mut map: HashMap<u32, u32> = HashMap::new();
        let crossings = self
            .crossings
            .iter()
            .map(|c| {
                let mut slots = [0; 4];
                for (i, &e) in c.slots.iter().enumerate() {
                    let next = map.len() as u32;
                    slots[i] = *map.entry(e).or_insert(next);
                }
                Crossing { slots, positive: c.positive }
            })
            .collect();
        LinkDiagram { crossings, free_loops: self.free_loops }
    }

    /// Edge ends; assumes compact labels.
    fn ends(&self) -> Vec<EdgeEnds> {
        let mut ends = vec![EdgeEnds { head: (0, 0), tail: (0, 0) }; 2 * self.crossings.len()];
        for (i, c) in self.crossings.iter().enumerate() {
            for slot in 0..4 {
                let e = c.slots[slot] as usize;
                if c.is_incoming(slot) {
                    ends[e].head = (i, slot);
                } else {
                    ends[e].tail = (i, slot);
                }
            }
        }
        ends
    }

    /// Edge that follows `edge` along the link.
    fn next_edge(&self, ends: &[EdgeEnds], edge: usize) -> usize {
        let (c, slot) = ends[edge].head;
        let x = &self.crossings[c];
        x.slots[x.exit(slot)] as usize
    }

    /// Edge cycles, each listed from its least edge; ordered by that edge.
    fn component_cycles(&self) -> Vec<Vec<usize>> {
        let ends = self.ends();
        let total = ends.len();
        let mut seen = vec![false; total];
        let mut cycles = Vec::new();
        for start in 0..total {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                cycle.push(e);
                e = self.next_edge(&ends, e);
            }
            cycles.push(cycle);
        }
        cycles
    }

    pub fn component_count(&self) -> usize {
        self.component_cycles().len() + self.free_loops
    }

    /// Number of Seifert circles (oriented smoothing of every crossing).
    pub fn seifert_circles(&self) -> usize {
        let ends = self.ends();
        let total = ends.len();
        let mut seen = vec![false; total];
        let mut circles = self.free_loops;
        for start in 0..total {
            if seen[start] {
                continue;
            }
            circles += 1;
            let mut e = start;
            while !seen[e] {
                seen[e] = true;
                let (c, slot) = ends[e].head;
                let x = &self.crossings[c];
                let out = if slot == 0 { x.over_out() } else { 2 };
                e = x.slots[out] as usize;
            }
        }
        circles
    }

    pub fn mirror(&self) -> LinkDiagram {
        LinkDiagram {
            crossings: self.crossings.iter().map(Crossing::switched).collect(),
            free_loops: self.free_loops,
        }
    }

    pub fn switch(&self, index: usize) -> LinkDiagram {
        let mut crossings = self.crossings.clone();
        crossings[index] = crossings[index].switched();
        LinkDiagram { crossings, free_loops: self.free_loops }
    }

    /// Oriented smoothing of one crossing.
    pub fn smooth(&self, index: usize) -> LinkDiagram {
        let x = self.crossings[index];
        let merges = [
            (x.slots[0], x.slots[x.over_out()]),
            (x.slots[x.over_in()], x.slots[2]),
        ];
        self.remove_and_merge(&[index], &merges)
    }

    /// Deletes crossings and glues edge labels; glued classes that no longer
    /// touch a crossing become free circles.
    fn remove_and_merge(&self, remove: &[usize], merges: &[(u32, u32)]) -> LinkDiagram {
        let total = 2 * self.crossings.len();
        let mut parent: Vec<u32> = (0..total as u32).collect();
        fn find(parent: &mut [u32], mut a: u32) -> u32 {
            while parent[a as usize] != a {
                parent[a as usize] = parent[parent[a as usize] as usize];
                a = parent[a as usize];
            }
            a
        }
        for &(a, b) in merges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra.max(rb) as usize] = ra.min(rb);
            }
        }
        let mut crossings = Vec::with_capacity(self.crossings.len() - remove.len());
        let mut present = vec![false; total];
        for (i, c) in self.crossings.iter().enumerate() {
            if remove.contains(&i) {
                continue;
            }
            let mut slots = c.slots;
            for s in slots.iter_mut() {
                *s = find(&mut parent, *s);
                present[*s as usize] = true;
            }
            crossings.push(Crossing { slots, positive: c.positive });
        }
        let mut new_loops = Vec::new();
        for &i in remove {
            for &e in &self.crossings[i].slots {
                let r = find(&mut parent, e);
                if !present[r as usize] && !new_loops.contains(&r) {
                    new_loops.push(r);
                }
            }
        }
        LinkDiagram { crossings, free_loops: self.free_loops + new_loops.len() }.compacted()
    }

    /// A removable kink: an edge leaving one strand of a crossing and
    /// entering the other strand of the same crossing.
    fn find_r1(&self) -> Option<(usize, [(u32, u32); 2])> {
        for (i, x) in self.crossings.iter().enumerate() {
            let strands = [(0usize, 2usize), (x.over_in(), x.over_out())];
            for a in 0..2 {
                let (in_a, out_a) = strands[a];
                let (in_b, out_b) = strands[1 - a];
                if x.slots[out_a] == x.slots[in_b] {
                    let e = x.slots[out_a];
                    return Some((i, [(x.slots[in_a], e), (e, x.slots[out_b])]));
                }
            }
        }
        None
    }

    /// A bigon face bounded by an edge that is over at both ends and an edge
    /// that is under at both ends.
    fn find_r2(&self) -> Option<([usize; 2], [(u32, u32); 4])> {
        let ends = self.ends();
        for e in 0..ends.len() {
            let (c1, s1) = ends[e].tail;
            let (c2, s2) = ends[e].head;
            if c1 == c2 || Crossing::is_over(s1) != Crossing::is_over(s2) {
                continue;
            }
            for t in [1usize, 3] {
                let f_at_c2 = (s2 + t) % 4;
                let f = self.crossings[c2].slots[f_at_c2] as usize;
                let (fa, fb) = (ends[f].head, ends[f].tail);
                let f_at_c1 = if fa.0 == c1 && fb.0 == c2 {
                    fa.1
                } else if fb.0 == c1 && fa.0 == c2 {
                    fb.1
                } else {
                    continue;
                };
                if (f_at_c1 + t) % 4 != s1 {
                    continue;
                }
                // e and f are of opposite kinds (adjacent slots), so one
                // strand is over at both crossings
                let x1 = &self.crossings[c1];
                let x2 = &self.crossings[c2];
                let e_label = e as u32;
                let f_label = f as u32;
                let merges = [
                    (x1.slots[(s1 + 2) % 4], e_label),
                    (e_label, x2.slots[(s2 + 2) % 4]),
                    (x1.slots[(f_at_c1 + 2) % 4], f_label),
                    (f_label, x2.slots[(f_at_c2 + 2) % 4]),
                ];
                return Some(([c1, c2], merges));
            }
        }
        None
    }

    /// Exhaustive crossing-removing Reidemeister I and II moves.
    pub fn simplify(&self) -> LinkDiagram {
        let mut d = self.clone();
        loop {
            if let Some((i, merges)) = d.find_r1() {
                d = d.remove_and_merge(&[i], &merges);
            } else if let Some((pair, merges)) = d.find_r2() {
                d = d.remove_and_merge(&pair, &merges);
            } else {
                return d;
            }
        }
    }

    /// First crossing met on its under-strand when the components are
    /// traversed in order from their least edges. `None` means the diagram
    /// is descending, hence an unlink.
    pub fn first_ascending_crossing(&self) -> Option<usize> {
        let ends = self.ends();
        let mut visited = vec![false; self.crossings.len()];
        for cycle in self.component_cycles() {
            for &e in &cycle {
                let (c, slot) = ends[e].head;
                if !visited[c] {
                    visited[c] = true;
                    if slot == 0 {
                        return Some(c);
                    }
                }
            }
        }
        None
    }

    /// A code determining the diagram up to relabeling: the least traversal
    /// encoding over all starting edges.
    pub fn memo_key(&self) -> Vec<u8> {
        let ends = self.ends();
        let total = ends.len();
        let mut best: Option<Vec<u8>> = None;
        let mut crossing_id = vec![u8::MAX; self.crossings.len()];
        let mut edge_seen = vec![false; total];
        for start in 0..total {
            crossing_id.iter_mut().for_each(|c| *c = u8::MAX);
            edge_seen.iter_mut().for_each(|e| *e = false);
            let mut code = vec![self.free_loops as u8];
            let mut next_id = 0u8;
            let mut queue = vec![start];
            let mut qi = 0;
            while qi < queue.len() || edge_seen.iter().any(|s| !s) {
                let begin = if qi < queue.len() {
                    qi += 1;
                    queue[qi - 1]
                } else {
                    edge_seen.iter().position(|s| !s).unwrap()
                };
                if edge_seen[begin] {
                    continue;
                }
                code.push(u8::MAX);
                let mut e = begin;
                while !edge_seen[e] {
                    edge_seen[e] = true;
                    let (c, slot) = ends[e].head;
                    let x = &self.crossings[c];
                    if crossing_id[c] == u8::MAX {
                        crossing_id[c] = next_id;
                        next_id += 1;
                        // the other strand's outgoing edge seeds the next component
                        let other_out = if slot == 0 { x.over_out() } else { 2 };
                        queue.push(x.slots[other_out] as usize);
                    }
                    code.push(crossing_id[c]);
                    code.push(2 * (slot == 0) as u8 + x.positive as u8);
                    e = x.slots[x.exit(slot)] as usize;
                }
                if best.as_ref().is_some_and(|b| code.as_slice() > b.as_slice()) {
                    break;
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                best = Some(code);
            }
        }
        best.unwrap_or_else(|| vec![self.free_loops as u8])
    }

    /// Converts a one-component diagram back to a shadow-based diagram.
    pub fn to_knot(&self) -> Result<Diagram> {
        let cycles = self.component_cycles();
        if cycles.len() + self.free_loops != 1 {
            return Err(Error::MalformedCode(format!(
                "diagram has {} components, expected a knot",
                cycles.len() + self.free_loops
            )));
        }
        if self.crossings.is_empty() {
            return Ok(Diagram::unknot());
        }
        let ends = self.ends();
        let mut labels = Vec::new();
        let mut over = Vec::new();
        // follow the single cycle; record the crossing at the head of each edge
        for &e in &cycles[0] {
            let (c, slot) = ends[e].head;
            labels.push(c);
            over.push(Crossing::is_over(slot));
        }
        let word = DoubleOccurrenceWord::from_labels(&labels)?;
        let occ = word.occurrences();
        let mut over_first = Vec::new();
        let mut eps = Vec::new();
        for &(p, _) in &occ {
            let c = &self.crossings[labels[p]];
            over_first.push(over[p]);
            let sign = c.sign();
            eps.push(if over[p] { sign } else { -sign });
        }
        let shadow = Shadow::new(word, eps)?;
        Ok(Diagram { shadow, over_first })
    }
}

/// Reads the integers of a PD code (`X[1,5,2,4], X[3,1,4,6], ...` or nested
/// brackets) and infers crossing signs from edge orientations.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut numbers = Vec::new();
    let mut current = String::new();
    for ch in text.chars().chain(std::iter::once(' ')) {
        if ch.is_ascii_digit() {
            current.push(ch);
        } else if !current.is_empty() {
            numbers.push(
                current
                    .parse::<u32>()
                    .map_err(|e| Error::MalformedCode(format!("bad PD label: {e}")))?,
            );
            current.clear();
        }
        if ch == '-' {
            return Err(Error::MalformedCode("negative PD label".into()));
        }
    }
    if numbers.len() % 4 != 0 {
        return Err(Error::MalformedCode(format!(
            "PD code has {} labels, not a multiple of four",
            numbers.len()
        )));
    }
    let tuples: Vec<[u32; 4]> =
        numbers.chunks(4).map(|c| [c[0], c[1], c[2], c[3]]).collect();
    pd_from_tuples(&tuples)
}

/// Builds a link diagram from PD tuples `[i, j, k, l]` (incoming under-edge
/// first, then counterclockwise).
pub fn pd_from_tuples(tuples: &[[u32; 4]]) -> Result<LinkDiagram> {
    let mut uses: HashMap<u32, Vec<(usize, usize)>> = HashMap::new();
    for (i, t) in tuples.iter().enumerate() {
        for (slot, &e) in t.iter().enumerate() {
            uses.entry(e).or_default().push((i, slot));
        }
    }
    for (e, u) in &uses {
        if u.len() != 2 {
            return Err(Error::MalformedCode(format!("edge {e} occurs {} times", u.len())));
        }
    }
    // incoming[(crossing, slot)]: Some(true) when the edge enters there
    let mut positive: Vec<Option<bool>> = vec![None; tuples.len()];
    let direction = |positive: &[Option<bool>], c: usize, slot: usize| -> Option<bool> {
        match slot {
            0 => Some(true),
            2 => Some(false),
            1 => positive[c].map(|p| !p),
            _ => positive[c],
        }
    };
    loop {
        let mut progress = false;
        for u in uses.values() {
            let (a, b) = (u[0], u[1]);
            for (known, unknown) in [(a, b), (b, a)] {
                if let Some(dir) = direction(&positive, known.0, known.1) {
                    if direction(&positive, unknown.0, unknown.1).is_none() {
                        // unknown end is an over-slot: incoming there iff outgoing at known
                        let incoming = !dir;
                        positive[unknown.0] = Some(if unknown.1 == 3 { incoming } else { !incoming });
                        progress = true;
                    }
                }
            }
        }
        if progress {
            continue;
        }
        // over-only cycles: fall back to consecutive labelling
        match positive.iter().position(|p| p.is_none()) {
            Some(c) => {
                let [_, j, _, l] = tuples[c];
                positive[c] = Some(j == l + 1 || (l > j + 1));
            }
            None => break,
        }
    }
    let crossings = tuples
        .iter()
        .zip(&positive)
        .map(|(t, p)| Crossing { slots: *t, positive: p.unwrap() })
        .collect();
    LinkDiagram::new(crossings, 0)
}

/// Dowker-Thistlethwaite code of a knot (`4 6 2`); negative entries flip
/// the crossing relative to the alternating diagram.
pub fn parse_dt(text: &str) -> Result<Diagram> {
    let evens = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|e| Error::MalformedCode(format!("bad DT entry {t}: {e}"))))
        .collect::<Result<Vec<i64>>>()?;
    let n = evens.len();
    let mut labels = vec![usize::MAX; 2 * n];
    let mut over = vec![false; 2 * n];
    for (k, &e) in evens.iter().enumerate() {
        let a = e.unsigned_abs() as usize;
        if !a.is_multiple_of(2) || a == 0 || a > 2 * n || labels[a - 1] != usize::MAX {
            return Err(Error::MalformedCode(format!("bad DT entry {e}")));
        }
        labels[2 * k] = k;
        labels[a - 1] = k;
        over[2 * k] = e > 0;
        over[a - 1] = e < 0;
    }
    Diagram::from_positions(&labels, &over)
}

/// Signed Gauss sequence (`1 -2 3 -1 2 -3`): positive labels pass over.
pub fn parse_gauss(text: &str) -> Result<Diagram> {
    let tokens: Vec<i64> = text
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty() && *t != "()")
        .map(|t| t.parse::<i64>().map_err(|e| Error::MalformedCode(format!("bad Gauss entry {t}: {e}"))))
        .collect::<Result<_>>()?;
    if tokens.contains(&0) {
        return Err(Error::MalformedCode("Gauss label 0".into()));
    }
    if tokens.is_empty() {
        return Ok(Diagram::unknot());
    }
    let labels: Vec<u64> = tokens.iter().map(|t| t.unsigned_abs()).collect();
    let over: Vec<bool> = tokens.iter().map(|&t| t > 0).collect();
    Diagram::from_positions(&labels, &over)
}

/// Parses any supported diagram text:
/// `pd: X[..]`, `dt: 4 6 2`, `gauss: 1 -2 3 -1 2 -3`, or a shadow code
/// followed by `/` and an over/under bit string (`1 2 3 1 2 3 | +-+ / 101`).
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let text = text.trim();
    if let Some(rest) = strip_prefix_ci(text, "pd:") {
        return parse_pd(rest)?.to_knot();
    }
    if text.contains("X[") || text.starts_with("PD") {
        return parse_pd(text)?.to_knot();
    }
    if let Some(rest) = strip_prefix_ci(text, "dt:") {
        return parse_dt(rest);
    }
    if let Some(rest) = strip_prefix_ci(text, "gauss:") {
        return parse_gauss(rest);
    }
    match text.rsplit_once('/') {
        Some((shadow_text, bits)) => {
            let shadow = parse_shadow(shadow_text)?;
            let choices = bits
                .chars()
                .filter(|c| !c.is_whitespace())
                .map(|c| match c {
                    '1' => Ok(true),
                    '0' => Ok(false),
                    other => Err(Error::MalformedCode(format!("bad over/under bit {other:?}"))),
                })
                .collect::<Result<Vec<bool>>>()?;
            assign(&shadow, &choices)
        }
        None if text.is_empty() || text == "()" => Ok(Diagram::unknot()),
        None => parse_gauss(text),
    }
}

fn strip_prefix_ci<'a>(text: &'a str, prefix: &str) -> Option<&'a str> {
    if text.len() >= prefix.len() && text[..prefix.len()].eq_ignore_ascii_case(prefix) {
        Some(&text[prefix.len()..])
    } else {
        None
    }
}

/// Re-export for callers that only have the codes module in scope.
pub use codes::ShadowStats;
