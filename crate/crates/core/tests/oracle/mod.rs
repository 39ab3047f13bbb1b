//! Slow reference implementations used to cross-check the library.
//!
//! Nothing here calls into the library's shadow or polynomial machinery:
//! curves are plain combinatorial maps and the HOMFLY polynomial is computed
//! by an unsimplified skein tree on a separate crossing representation.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

// ---------------------------------------------------------------------------
// Spherical curves as combinatorial maps.

/// A 4-regular map with darts `4x + k`, `sigma` rotating counterclockwise
/// around each vertex and `alpha` pairing the two ends of every edge.
pub struct CurveMap {
    pub sigma: Vec<usize>,
    pub alpha: Vec<usize>,
}

/// Builds the map of a Gauss word (any labeling with two occurrences each)
/// and one orientation per crossing: `+1` when the second passage crosses
/// the first from its right to its left.
pub fn curve_map(word: &[usize], eps: &[i8]) -> CurveMap {
    let n = eps.len();
    let len = word.len();
    let mut seen = vec![false; n];
    // (in dart, out dart) of the passage at each position.
    let mut ends = vec![(0, 0); len];
    let mut sigma = vec![0; 4 * n];
    for (pos, &x) in word.iter().enumerate() {
        // Around the vertex: in1, in2, out1, out2 when the second passage
        // runs right to left across the first, else in1, out2, out1, in2.
        let (din, dout) = match (seen[x], eps[x] > 0) {
            (false, _) => (0, 2),
            (true, true) => (1, 3),
            (true, false) => (3, 1),
        };
        seen[x] = true;
        ends[pos] = (4 * x + din, 4 * x + dout);
    }
    for x in 0..n {
        for k in 0..4 {
            sigma[4 * x + k] = 4 * x + (k + 1) % 4;
        }
    }
    let mut alpha = vec![0; 4 * n];
    for pos in 0..len {
        let out = ends[pos].1;
        let next_in = ends[(pos + 1) % len].0;
        alpha[out] = next_in;
        alpha[next_in] = out;
    }
    CurveMap { sigma, alpha }
}

impl CurveMap {
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let m = self.sigma.len();
        let mut done = vec![false; m];
        let mut faces = Vec::new();
        for start in 0..m {
            if done[start] {
                continue;
            }
            let mut face = Vec::new();
            let mut d = start;
            while !done[d] {
                done[d] = true;
                face.push(d);
                d = self.sigma[self.alpha[d]];
            }
            faces.push(face);
        }
        faces
    }

    pub fn is_spherical(&self) -> bool {
        let n = self.sigma.len() / 4;
        // V - E + F = n - 2n + F.
        self.faces().len() == n + 2
    }

    /// A vertex met twice by one face is a cut vertex: the crossing is
    /// nugatory.
    pub fn nugatory_count(&self) -> usize {
        let mut bad = BTreeSet::new();
        for face in self.faces() {
            let mut count: HashMap<usize, usize> = HashMap::new();
            for d in face {
                *count.entry(d / 4).or_default() += 1;
            }
            bad.extend(count.into_iter().filter(|&(_, k)| k > 1).map(|(v, _)| v));
        }
        bad.len()
    }

    /// Least breadth-first relabeling over all start darts. Equal codes mean
    /// isomorphic maps; with `reflect` the reversed rotation is tried too.
    pub fn canonical_code(&self, reflect: bool) -> Vec<usize> {
        let m = self.sigma.len();
        if m == 0 {
            return Vec::new();
        }
        let mut inv = vec![0; m];
        for d in 0..m {
            inv[self.sigma[d]] = d;
        }
        let rotations: Vec<&[usize]> =
            if reflect { vec![&self.sigma, &inv] } else { vec![&self.sigma] };
        let mut best: Option<Vec<usize>> = None;
        for rot in rotations {
            for start in 0..m {
                let code = bfs_code(rot, &self.alpha, start);
                if best.as_ref().is_none_or(|b| code < *b) {
                    best = Some(code);
                }
            }
        }
        best.unwrap()
    }
}

fn bfs_code(sigma: &[usize], alpha: &[usize], start: usize) -> Vec<usize> {
    let m = sigma.len();
    let mut label = vec![usize::MAX; m];
    let mut order = vec![start];
    label[start] = 0;
    let mut code = Vec::with_capacity(2 * m);
    let mut i = 0;
    while i < order.len() {
        let d = order[i];
        for e in [sigma[d], alpha[d]] {
            if label[e] == usize::MAX {
                label[e] = order.len();
                order.push(e);
            }
            code.push(label[e]);
        }
        i += 1;
    }
    code
}

/// All perfect matchings of `2n` positions written as words.
pub fn all_words(n: usize) -> Vec<Vec<usize>> {
    fn go(word: &mut Vec<usize>, next: usize, out: &mut Vec<Vec<usize>>) {
        let Some(i) = word.iter().position(|&x| x == usize::MAX) else {
            out.push(word.clone());
            return;
        };
        word[i] = next;
        for j in i + 1..word.len() {
            if word[j] == usize::MAX {
                word[j] = next;
                go(word, next + 1, out);
                word[j] = usize::MAX;
            }
        }
        word[i] = usize::MAX;
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; 2 * n], 0, &mut out);
    out
}

/// Counts of distinct spherical curves with `n` crossings, all and reduced.
pub fn brute_force_counts(n: usize, reflect: bool) -> (usize, usize) {
    if n == 0 {
        return (1, 1);
    }
    let mut all = BTreeSet::new();
    let mut reduced = BTreeSet::new();
    for word in all_words(n) {
        for bits in 0..1u32 << n {
            let eps: Vec<i8> = (0..n).map(|i| if bits >> i & 1 == 1 { -1 } else { 1 }).collect();
            let map = curve_map(&word, &eps);
            if !map.is_spherical() {
                continue;
            }
            let code = map.canonical_code(reflect);
            if map.nugatory_count() == 0 {
                reduced.insert(code.clone());
            }
            all.insert(code);
        }
    }
    (all.len(), reduced.len())
}

// ---------------------------------------------------------------------------
// HOMFLY by a plain skein tree.

/// Polynomial in `v` and `z` as a map from exponents to coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly(pub BTreeMap<(i32, i32), i64>);

impl Poly {
    pub fn one() -> Self {
        Poly::term(1, 0, 0)
    }

    pub fn term(c: i64, v: i32, z: i32) -> Self {
        let mut m = BTreeMap::new();
        if c != 0 {
            m.insert((v, z), c);
        }
        Poly(m)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut m = self.0.clone();
        for (&k, &c) in &other.0 {
            let e = m.entry(k).or_insert(0);
            *e += c;
            if *e == 0 {
                m.remove(&k);
            }
        }
        Poly(m)
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::default();
        for (&(a, b), &c) in &self.0 {
            for (&(x, y), &d) in &other.0 {
                out = out.add(&Poly::term(c * d, a + x, b + y));
            }
        }
        out
    }

    pub fn triples(&self) -> Vec<(i32, i32, i64)> {
        self.0.iter().map(|(&(v, z), &c)| (v, z, c)).collect()
    }
}

/// A crossing seen from its strands: edges entering and leaving along the
/// over and under strand, and the sign.
#[derive(Clone, Copy, Debug)]
pub struct Cross {
    pub over_in: usize,
    pub over_out: usize,
    pub under_in: usize,
    pub under_out: usize,
    pub positive: bool,
}

#[derive(Clone, Debug)]
pub struct Link {
    pub crossings: Vec<Cross>,
    pub loops: usize,
}

/// Link of a knot given as a Gauss word (positions `0..2n`), orientations
/// in the curve convention, and whether the first passage at each crossing
/// is the over one. Edge `k` runs from position `k` to `k + 1`.
pub fn knot_link(word: &[usize], eps: &[i8], over_first: &[bool]) -> Link {
    let len = word.len();
    if len == 0 {
        return Link { crossings: Vec::new(), loops: 1 };
    }
    let n = eps.len();
    let mut first = vec![usize::MAX; n];
    let mut second = vec![usize::MAX; n];
    for (pos, &x) in word.iter().enumerate() {
        if first[x] == usize::MAX {
            first[x] = pos;
        } else {
            second[x] = pos;
        }
    }
    let prev = |k: usize| (k + len - 1) % len;
    let crossings = (0..n)
        .map(|x| {
            let (p, q) = (first[x], second[x]);
            let (over, under) = if over_first[x] { (p, q) } else { (q, p) };
            // The under strand crosses the over strand right to left exactly
            // when the crossing is positive. The second passage crosses the
            // first right to left when eps is +1.
            let positive = if over_first[x] { eps[x] > 0 } else { eps[x] < 0 };
            Cross {
                over_in: prev(over),
                over_out: over,
                under_in: prev(under),
                under_out: under,
                positive,
            }
        })
        .collect();
    Link { crossings, loops: 0 }
}

impl Link {
    fn successor(&self) -> HashMap<usize, (usize, usize, bool)> {
        // edge -> (next edge, crossing, entered as over)
        let mut next = HashMap::new();
        for (i, c) in self.crossings.iter().enumerate() {
            next.insert(c.over_in, (c.over_out, i, true));
            next.insert(c.under_in, (c.under_out, i, false));
        }
        next
    }

    /// Components given as edge cycles, ordered by least edge, each started
    /// at its least edge.
    fn components(&self) -> Vec<Vec<usize>> {
        let next = self.successor();
        let mut edges: Vec<usize> = next.keys().copied().collect();
        edges.sort();
        let mut seen = BTreeSet::new();
        let mut comps = Vec::new();
        for e in edges {
            if seen.contains(&e) {
                continue;
            }
            let mut cycle = Vec::new();
            let mut cur = e;
            while seen.insert(cur) {
                cycle.push(cur);
                cur = next[&cur].0;
            }
            comps.push(cycle);
        }
        comps
    }

    /// First crossing met from below when walking the components in order.
    fn bad_crossing(&self) -> Option<usize> {
        let next = self.successor();
        let mut met = vec![false; self.crossings.len()];
        for comp in self.components() {
            for e in comp {
                let (_, i, over) = next[&e];
                if !met[i] {
                    if !over {
                        return Some(i);
                    }
                    met[i] = true;
                }
            }
        }
        None
    }

    fn switch(&self, i: usize) -> Link {
        let mut out = self.clone();
        let c = &mut out.crossings[i];
        std::mem::swap(&mut c.over_in, &mut c.under_in);
        std::mem::swap(&mut c.over_out, &mut c.under_out);
        c.positive = !c.positive;
        out
    }

    fn smooth(&self, i: usize) -> Link {
        let c = self.crossings[i];
        let mut crossings: Vec<Cross> = self
            .crossings
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, &c)| c)
            .collect();
        let mut loops = self.loops;
        // over_in now continues as under_out, under_in as over_out.
        let mut pairs = [(c.over_in, c.under_out), (c.under_in, c.over_out)];
        for k in 0..2 {
            let (a, b) = pairs[k];
            if a == b {
                loops += 1;
                continue;
            }
            for x in crossings.iter_mut() {
                for e in [&mut x.over_in, &mut x.over_out, &mut x.under_in, &mut x.under_out] {
                    if *e == b {
                        *e = a;
                    }
                }
            }
            for p in pairs[k + 1..].iter_mut() {
                for e in [&mut p.0, &mut p.1] {
                    if *e == b {
                        *e = a;
                    }
                }
            }
        }
        Link { crossings, loops }
    }
}

fn unlink(k: usize) -> Poly {
    // ((v^-1 - v) / z)^(k - 1)
    let delta = Poly::term(1, -1, -1).add(&Poly::term(-1, 1, -1));
    (1..k).fold(Poly::one(), |p, _| p.mul(&delta))
}

/// HOMFLY with `v^-1 P+ - v P- = z P0` and the unknot normalized to 1.
pub fn skein_homfly(link: &Link) -> Poly {
    match link.bad_crossing() {
        None => unlink(link.components().len() + link.loops),
        Some(i) => {
            let switched = skein_homfly(&link.switch(i));
            let smoothed = skein_homfly(&link.smooth(i));
            if link.crossings[i].positive {
                // P+ = v^2 P- + v z P0
                Poly::term(1, 2, 0).mul(&switched).add(&Poly::term(1, 1, 1).mul(&smoothed))
            } else {
                // P- = v^-2 P+ - v^-1 z P0
                Poly::term(1, -2, 0).mul(&switched).add(&Poly::term(-1, -1, 1).mul(&smoothed))
            }
        }
    }
}
