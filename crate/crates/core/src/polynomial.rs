//! Exact two-variable Laurent polynomials and the HOMFLY polynomial.
//!
//! Skein convention: `v^-1 P(L+) - v P(L-) = z P(L0)`, `P(unknot) = 1`.
//! With this normalization the self-linking bound reads
//! `sl(K) <= min_deg_v P_K - 1` and the positive trefoil is
//! `2v^2 - v^4 + v^2 z^2`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use dashmap::DashMap;

use crate::diagram::{Diagram, LinkDiagram};
use crate::error::{Error, Result};

/// Sparse Laurent polynomial in `v`, `z` with integer coefficients, keyed by
/// `(v exponent, z exponent)`. Zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent2 {
    terms: BTreeMap<(i32, i32), i64>,
}

impl Laurent2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0, 0)
    }

    pub fn monomial(coeff: i64, v: i32, z: i32) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert((v, z), coeff);
        }
        Self { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, i32, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (v, z, c) in terms {
            p.add_term(v, z, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, v: i32, z: i32) -> i64 {
        self.terms.get(&(v, z)).copied().unwrap_or(0)
    }

    /// `(v exponent, z exponent, coefficient)` in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i32, i64)> + '_ {
        self.terms.iter().map(|(&(v, z), &c)| (v, z, c))
    }

    fn add_term(&mut self, v: i32, z: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry((v, z)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&(v, z));
        }
    }

    /// Multiplies by `coeff * v^dv * z^dz`.
    pub fn shifted(&self, coeff: i64, dv: i32, dz: i32) -> Laurent2 {
        if coeff == 0 {
            return Laurent2::zero();
        }
        Laurent2 {
            terms: self.terms.iter().map(|(&(v, z), &c)| ((v + dv, z + dz), c * coeff)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Laurent2 {
        (0..k).fold(Laurent2::one(), |acc, _| &acc * self)
    }

    /// Image under `v -> v^-1, z -> -z`: the polynomial of the mirror image.
    pub fn mirror(&self) -> Laurent2 {
        Laurent2 {
            terms: self
                .terms
                .iter()
                .map(|(&(v, z), &c)| ((-v, z), if z % 2 == 0 { c } else { -c }))
                .collect(),
        }
    }

    /// Canonical golden-file form: `(v,z,c)` triples in ascending order.
    pub fn to_triples(&self) -> String {
        let parts: Vec<String> = self.terms().map(|(v, z, c)| format!("({v},{z},{c})")).collect();
        parts.join(" ")
    }

    /// Parses the triple form written by [`Laurent2::to_triples`].
    pub fn parse_triples(text: &str) -> Result<Laurent2> {
        let mut p = Laurent2::zero();
        for chunk in text.split(')').map(str::trim).filter(|c| !c.is_empty()) {
            let inner = chunk.trim_start_matches('(');
            let nums: Vec<i64> = inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|e| Error::MalformedCode(format!("bad triple {chunk:?}: {e}")))
                })
                .collect::<Result<_>>()?;
            if nums.len() != 3 {
                return Err(Error::MalformedCode(format!("bad triple {chunk:?}")));
            }
            p.add_term(nums[0] as i32, nums[1] as i32, nums[2]);
        }
        Ok(p)
    }

    /// `P(1, z)`: the Conway polynomial, as `(z exponent, coefficient)` pairs.
    pub fn conway(&self) -> BTreeMap<i32, i64> {
        let mut out = BTreeMap::new();
        for (_, z, c) in self.terms() {
            *out.entry(z).or_insert(0) += c;
        }
        out.retain(|_, c| *c != 0);
        out
    }

    /// Knot determinant `|Delta(-1)|`, i.e. `|P(1, 2i)|`. Only meaningful for
    /// knots, whose z-exponents are even and non-negative.
    pub fn determinant(&self) -> Option<u64> {
        let mut total: i64 = 0;
        for (z, c) in self.conway() {
            if z < 0 || z % 2 != 0 {
                return None;
            }
            total += c * (-4i64).pow((z / 2) as u32);
        }
        Some(total.unsigned_abs())
    }
}

impl fmt::Display for Laurent2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (v, z, c) in self.terms() {
            let mut mono = String::new();
            if v != 0 {
                mono.push('v');
                if v != 1 {
                    mono.push_str(&format!("^{v}"));
                }
            }
            if z != 0 {
                mono.push('z');
                if z != 1 {
                    mono.push_str(&format!("^{z}"));
                }
            }
            let abs = c.unsigned_abs();
            let body = match (abs, mono.is_empty()) {
                (_, true) => abs.to_string(),
                (1, false) => mono,
                (_, false) => format!("{abs}{mono}"),
            };
            match (first, c < 0) {
                (true, false) => write!(f, "{body}")?,
                (true, true) => write!(f, "-{body}")?,
                (false, false) => write!(f, " + {body}")?,
                (false, true) => write!(f, " - {body}")?,
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Laurent2 {
    type Output = Laurent2;
    fn add(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for (&(v, z), &c) in &rhs.terms {
            out.add_term(v, z, c);
        }
        out
    }
}

impl Sub for &Laurent2 {
    type Output = Laurent2;
    fn sub(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = self.clone();
        for (&(v, z), &c) in &rhs.terms {
            out.add_term(v, z, -c);
        }
        out
    }
}

impl Mul for &Laurent2 {
    type Output = Laurent2;
    fn mul(self, rhs: &Laurent2) -> Laurent2 {
        let mut out = Laurent2::zero();
        for (&(v1, z1), &c1) in &self.terms {
            for (&(v2, z2), &c2) in &rhs.terms {
                out.add_term(v1 + v2, z1 + z2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &Laurent2 {
    type Output = Laurent2;
    fn neg(self) -> Laurent2 {
        self.shifted(-1, 0, 0)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Laurent2 {
            type Output = Laurent2;
            fn $m(self, rhs: Laurent2) -> Laurent2 {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct DegreeBounds {
    pub max_deg_z: i32,
    pub min_deg_z: i32,
    pub min_deg_v: i32,
    pub max_deg_v: i32,
    pub breadth_v: i32,
}

pub fn bounds(p: &Laurent2) -> Result<DegreeBounds> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let vs = || p.terms().map(|t| t.0);
    let zs = || p.terms().map(|t| t.1);
    let min_deg_v = vs().min().unwrap();
    let max_deg_v = vs().max().unwrap();
    Ok(DegreeBounds {
        max_deg_z: zs().max().unwrap(),
        min_deg_z: zs().min().unwrap(),
        min_deg_v,
        max_deg_v,
        breadth_v: max_deg_v - min_deg_v,
    })
}

/// Bounds on knot invariants read off a HOMFLY polynomial: Morton's
/// canonical-genus bound and the Morton-Franks-Williams bounds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InvariantBounds {
    pub gc_lower: i32,
    pub sl_upper: i32,
    pub braid_lower: i32,
}

pub fn invariant_bounds(p: &Laurent2) -> Result<InvariantBounds> {
    let b = bounds(p)?;
    Ok(InvariantBounds {
        gc_lower: (b.max_deg_z + 1).div_euclid(2),
        sl_upper: b.min_deg_v - 1,
        braid_lower: b.breadth_v / 2 + 1,
    })
}

/// `((v^-1 - v) / z)^(k - 1)`.
pub fn unlink_polynomial(components: usize) -> Laurent2 {
    let delta = Laurent2::from_terms([(-1, -1, 1), (1, -1, -1)]);
    delta.pow(components.saturating_sub(1) as u32)
}

pub const DEFAULT_CEILING: usize = 16;

/// HOMFLY evaluator: descending-diagram skein recursion with optional R1/R2
/// simplification and a shared memo table.
#[derive(Debug)]
pub struct HomflyEngine {
    ceiling: usize,
    simplify: bool,
    memo: Option<DashMap<Vec<u8>, Laurent2>>,
}

impl Default for HomflyEngine {
    fn default() -> Self {
        Self::new(DEFAULT_CEILING)
    }
}

impl HomflyEngine {
    pub fn new(ceiling: usize) -> Self {
        Self { ceiling, simplify: true, memo: Some(DashMap::new()) }
    }

    /// Plain recursion: no memo table, no simplification.
    pub fn plain(ceiling: usize) -> Self {
        Self { ceiling, simplify: false, memo: None }
    }

    pub fn ceiling(&self) -> usize {
        self.ceiling
    }

    pub fn cache_len(&self) -> usize {
        self.memo.as_ref().map_or(0, DashMap::len)
    }

    pub fn homfly(&self, d: &LinkDiagram) -> Result<Laurent2> {
        if d.crossing_count() > self.ceiling {
            return Err(Error::ResourceLimit { crossings: d.crossing_count(), limit: self.ceiling });
        }
        Ok(self.eval(d.clone()))
    }

    pub fn homfly_knot(&self, d: &Diagram) -> Result<Laurent2> {
        self.homfly(&d.to_link())
    }

    fn eval(&self, d: LinkDiagram) -> Laurent2 {
        let d = if self.simplify { d.simplify() } else { d };
        if d.crossing_count() == 0 {
            return unlink_polynomial(d.free_loops());
        }
        let key = match &self.memo {
            Some(memo) if d.crossing_count() >= 3 => {
                let key = d.memo_key();
                if let Some(hit) = memo.get(&key) {
                    return hit.clone();
                }
                Some(key)
            }
            _ => None,
        };
        let p = match d.first_ascending_crossing() {
            None => unlink_polynomial(d.component_count()),
            Some(i) => {
                let switched = self.eval(d.switch(i));
                let smoothed = self.eval(d.smooth(i));
                if d.crossings()[i].positive {
                    &switched.shifted(1, 2, 0) + &smoothed.shifted(1, 1, 1)
                } else {
                    &switched.shifted(1, -2, 0) - &smoothed.shifted(1, -1, 1)
                }
            }
        };
        if let (Some(memo), Some(key)) = (&self.memo, key) {
            memo.insert(key, p.clone());
        }
        p
    }
}

fn shared_engine() -> &'static HomflyEngine {
    static ENGINE: OnceLock<HomflyEngine> = OnceLock::new();
    ENGINE.get_or_init(HomflyEngine::default)
}

/// HOMFLY polynomial of a knot diagram using a process-wide memo table.
pub fn homfly(d: &Diagram) -> Result<Laurent2> {
    shared_engine().homfly_knot(d)
}

/// HOMFLY polynomial of a link diagram using a process-wide memo table.
pub fn homfly_link(d: &LinkDiagram) -> Result<Laurent2> {
    shared_engine().homfly(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::parse_shadow;
    use crate::diagram::parse_dt;

    fn positive_trefoil() -> Diagram {
        let s = parse_shadow("a b c a b c").unwrap();
        (0..8).map(|m| Diagram::from_mask(&s, m)).find(|d| d.writhe() == 3).unwrap()
    }

    #[test]
    fn arithmetic() {
        let a = Laurent2::from_terms([(1, 0, 2), (0, 1, -1)]);
        let b = Laurent2::from_terms([(1, 0, -2), (0, 0, 3)]);
        assert_eq!(&a + &b, Laurent2::from_terms([(0, 1, -1), (0, 0, 3)]));
        assert_eq!(&a - &a, Laurent2::zero());
        assert_eq!((&a * &b).coeff(2, 0), -4);
        assert_eq!(a.pow(0), Laurent2::one());
        assert_eq!(-&a, a.shifted(-1, 0, 0));
    }

    #[test]
    fn display_and_triples() {
        let p = Laurent2::from_terms([(2, 0, 2), (4, 0, -1), (2, 2, 1)]);
        assert_eq!(p.to_string(), "2v^2 + v^2z^2 - v^4");
        assert_eq!(Laurent2::parse_triples(&p.to_triples()).unwrap(), p);
        assert_eq!(Laurent2::one().to_string(), "1");
        assert_eq!(Laurent2::zero().to_string(), "0");
    }

    #[test]
    fn unknot_and_unlink() {
        assert_eq!(homfly(&Diagram::unknot()).unwrap(), Laurent2::one());
        let two = unlink_polynomial(2);
        assert_eq!(two, Laurent2::from_terms([(-1, -1, 1), (1, -1, -1)]));
        let engine = HomflyEngine::new(16);
        assert_eq!(engine.homfly(&LinkDiagram::unlink(2)).unwrap(), two);
    }

    #[test]
    fn trefoil_polynomial() {
        let p = homfly(&positive_trefoil()).unwrap();
        assert_eq!(p, Laurent2::from_terms([(2, 0, 2), (4, 0, -1), (2, 2, 1)]));
        let b = bounds(&p).unwrap();
        assert_eq!((b.min_deg_v, b.max_deg_z), (2, 2));
        let ib = invariant_bounds(&p).unwrap();
        assert_eq!((ib.gc_lower, ib.sl_upper, ib.braid_lower), (1, 1, 2));
        assert_eq!(p.determinant(), Some(3));
    }

    #[test]
    fn figure_eight_polynomial() {
        let p = homfly(&parse_dt("4 6 8 2").unwrap()).unwrap();
        assert_eq!(p, Laurent2::from_terms([(-2, 0, 1), (0, 0, -1), (2, 0, 1), (0, 2, -1)]));
        let b = bounds(&p).unwrap();
        assert_eq!((b.max_deg_z, b.breadth_v), (2, 4));
        let ib = invariant_bounds(&p).unwrap();
        assert_eq!((ib.gc_lower, ib.braid_lower), (1, 3));
        assert_eq!(p.mirror(), p);
        assert_eq!(p.determinant(), Some(5));
    }

    #[test]
    fn unknot_bounds() {
        let ib = invariant_bounds(&Laurent2::one()).unwrap();
        assert_eq!((ib.gc_lower, ib.sl_upper, ib.braid_lower), (0, -1, 1));
        assert_eq!(bounds(&Laurent2::zero()), Err(Error::ZeroPolynomial));
        assert_eq!(invariant_bounds(&Laurent2::zero()), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn mirror_transform_on_trefoil() {
        let d = positive_trefoil();
        assert_eq!(homfly(&d.mirror()).unwrap(), homfly(&d).unwrap().mirror());
    }

    #[test]
    fn memo_and_plain_agree() {
        let d = parse_dt("4 8 12 2 14 6 10").unwrap();
        let memo = HomflyEngine::new(16).homfly_knot(&d).unwrap();
        let plain = HomflyEngine::plain(16).homfly_knot(&d).unwrap();
        assert_eq!(memo, plain);
    }

    #[test]
    fn ceiling() {
        let d = parse_dt("4 8 12 2 14 6 10").unwrap();
        assert_eq!(
            HomflyEngine::new(5).homfly_knot(&d),
            Err(Error::ResourceLimit { crossings: 7, limit: 5 })
        );
    }
}
