//! Kauffman-bracket polynomials of projected configurations.
//!
//! A plane projection of `n` lines is a diagram in the projective plane:
//! every strand crosses every other strand once and leaves through the
//! boundary of the disk model to re-enter at the antipodal point. The
//! projective bracket `jd` is evaluated on that diagram directly; loops that
//! cross the boundary an odd number of times are noncontractible.
//!
//! The doubled diagram closes every strand with a mirrored copy of the whole
//! diagram, giving `n` pairwise linked circles in the sphere; `jm` is its
//! ordinary Kauffman bracket.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lincore::{ChiralityMatrix, DiscreteState};
use crate::matrix::IntMatrix;
use crate::projection::{pseudo_bundle, pseudo_variants, ProjectionBundle, ORIENTATION_CONVENTION};

/// Default bound on the number of crossings of a bracket evaluation.
pub const DEFAULT_MAX_CROSSINGS: usize = 64;

/// Laurent polynomial in `a` with integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    /// Exponent of `coeffs[0]`.
    low: i32,
    /// Dense coefficients; empty for zero, otherwise nonzero at both ends.
    coeffs: Vec<i128>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i32, c: i128) -> Self {
        Self { low: exp, coeffs: vec![c] }.normalized()
    }

    pub fn from_terms<C: Copy + Into<i128>>(terms: &[(i32, C)]) -> Self {
        terms.iter().fold(Self::zero(), |acc, &(e, c)| &acc + &Self::monomial(e, c.into()))
    }

    /// `−a² − a⁻²`, the value of a trivial circle.
    pub fn loop_value() -> Self {
        Self::from_terms(&[(2, -1i64), (-2, -1)])
    }

    /// `−a⁴ − a⁻⁴`, the bracket of the Hopf link.
    pub fn hopf_value() -> Self {
        Self::from_terms(&[(4, -1i64), (-4, -1)])
    }

    fn normalized(mut self) -> Self {
        let start = self.coeffs.iter().position(|&c| c != 0);
        match start {
            None => Self::zero(),
            Some(s) => {
                let end = self.coeffs.iter().rposition(|&c| c != 0).unwrap();
                self.coeffs.truncate(end + 1);
                self.coeffs.drain(..s);
                self.low += s as i32;
                self
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i128 {
        let idx = exp - self.low;
        if idx < 0 {
            return 0;
        }
        self.coeffs.get(idx as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms, ascending exponent.
    pub fn terms(&self) -> Vec<(i32, i128)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (self.low + i as i32, c))
            .collect()
    }

    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i32 - 1)
    }

    /// Multiplies by `a^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    /// Substitutes `a → a^k`.
    pub fn substitute_power(&self, k: i32) -> Self {
        assert!(k != 0);
        Self::from_terms(&self.terms().into_iter().map(|(e, c)| (e * k, c)).collect::<Vec<_>>())
    }

    /// Exact quotient, if `other` divides `self`.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let lead = *other.coeffs.last().unwrap();
        let olen = other.coeffs.len();
        let mut rem = self.coeffs.clone();
        if rem.len() < olen {
            return None;
        }
        let mut q = vec![0i128; rem.len() - olen + 1];
        for i in (0..q.len()).rev() {
            let top = rem[i + olen - 1];
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            q[i] = f;
            for (j, &c) in other.coeffs.iter().enumerate() {
                rem[i + j] -= f * c;
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Self { low: self.low - other.low, coeffs: q }.normalized())
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exact value at a rational point.
    pub fn eval(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::ZeroBase);
        }
        let mut total = BigRational::zero();
        for (e, c) in self.terms() {
            let base = if e >= 0 { a.clone() } else { a.recip() };
            total += num_traits::pow(base, e.unsigned_abs() as usize) * BigRational::from_integer(BigInt::from(c));
        }
        Ok(total)
    }
}

/// Exact value of `p` at `a`; `a` is typically a short decimal such as `4/5`.
pub fn eval_poly(p: &LaurentPoly, a: &BigRational) -> Result<BigRational> {
    p.eval(a)
}

/// Parses a decimal or fraction literal (`0.8`, `4/5`) exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Format(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: BigInt = digits.parse().map_err(|_| bad())?;
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(num, den);
    Ok(if neg { -r } else { r })
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let low = self.low.min(other.low);
        let high = self.max_exp().unwrap().max(other.max_exp().unwrap());
        let mut coeffs = vec![0i128; (high - low + 1) as usize];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[(self.low - low) as usize + i] += c;
        }
        for (i, &c) in other.coeffs.iter().enumerate() {
            coeffs[(other.low - low) as usize + i] += c;
        }
        LaurentPoly { low, coeffs }.normalized()
    }
}

impl std::ops::AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, other: &LaurentPoly) {
        *self = &*self + other;
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, other: &LaurentPoly) -> LaurentPoly {
        self + &(-other)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![0i128; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += x * y;
            }
        }
        LaurentPoly { low: self.low + other.low, coeffs }.normalized()
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents, `c a^k` terms: `-1 a^5 - 1 a^1 - 2 a^-3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms().into_iter().rev().enumerate() {
            match (idx, c < 0) {
                (0, _) => write!(f, "{c} a^{e}")?,
                (_, true) => write!(f, " - {} a^{e}", -c)?,
                (_, false) => write!(f, " + {c} a^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    /// Reads the [`Display`](fmt::Display) format back.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let bad = |t: &str| Error::Format(format!("bad polynomial term {t:?}"));
        let mut out = Self::zero();
        let spaced = s.replace(" - ", " + -").replace(" + ", "|");
        for term in spaced.split('|') {
            let (c, e) = term.trim().split_once(" a^").ok_or_else(|| bad(term))?;
            let c: i128 = c.trim().parse().map_err(|_| bad(term))?;
            let e: i32 = e.trim().parse().map_err(|_| bad(term))?;
            out += &Self::monomial(e, c);
        }
        Ok(out)
    }
}

/// Strands of a projected configuration with their crossing data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectiveDiagram {
    /// `order[i]`: the other strands in the order strand `i` crosses them.
    pub order: Vec<Vec<usize>>,
    /// `over[(i, k)] = +1` when strand `i` passes over strand `k`.
    pub over: IntMatrix,
    /// `orient[(i, k)] = +1` when the direction of `k` is counterclockwise
    /// from that of `i` at their crossing.
    pub orient: IntMatrix,
}

impl ProjectiveDiagram {
    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub fn crossing_count(&self) -> usize {
        let n = self.dim();
        n * (n - 1) / 2
    }
}

/// Reads crossing orders from the projection matrix, over/under data from
/// the overlap matrix and crossing orientations from `P ⊙ O`.
pub fn diagram_from_bundle(bundle: &ProjectionBundle, p: &ChiralityMatrix) -> Result<ProjectiveDiagram> {
    let n = bundle.dim();
    if p.dim() != n {
        return Err(Error::SizeMismatch { expected: n, got: p.dim() });
    }
    let mut order = Vec::with_capacity(n);
    for i in 0..n {
        let mut slots = vec![usize::MAX; n.saturating_sub(1)];
        for j in (0..n).filter(|&j| j != i) {
            // number of crossings on strand i that come before the one with j
            let before = (0..n).filter(|&k| k != i && k != j && bundle.prm.get(i, k, j) > 0).count();
            if slots[before] != usize::MAX {
                return Err(Error::NotRealizable(format!("strand {i} has no total crossing order")));
            }
            slots[before] = j;
        }
        order.push(slots);
    }
    let orient = p.matrix().hadamard(&bundle.overlap).scale(ORIENTATION_CONVENTION);
    Ok(ProjectiveDiagram { order, over: bundle.overlap.clone(), orient })
}

/// Diagram of a discrete state through its first admissible
/// pseudo-projection; every variant gives the same brackets.
pub fn diagram_of_state(state: &DiscreteState) -> Result<ProjectiveDiagram> {
    let mut last = Error::NotTriangularizable(0);
    for (c, pivot, sign) in pseudo_variants(state.dim()) {
        match pseudo_bundle(state, c, pivot, sign) {
            Ok(b) => return diagram_from_bundle(&b, &state.p),
            Err(e) => last = e,
        }
    }
    Err(last)
}

/// A 4-valent graph with its two smoothings at every vertex; enough data
/// for a state sum.
#[derive(Clone, Debug)]
pub struct BracketGraph {
    /// Per vertex: the half-edge pairs of the A- and of the B-smoothing.
    pub vertices: Vec<[[(usize, usize); 2]; 2]>,
    /// Other end of the edge at every half-edge.
    pub partner: Vec<usize>,
    /// Whether the edge at a half-edge passes through the boundary circle.
    pub boundary: Vec<bool>,
}

impl BracketGraph {
    pub fn crossing_count(&self) -> usize {
        self.vertices.len()
    }
}

/// Half-edge index of strand `i` at its `t`-th crossing; `out` selects the
/// outgoing side.
fn half_edge(n: usize, i: usize, t: usize, out: bool) -> usize {
    (i * (n - 1) + t) * 2 + out as usize
}

fn vertex_pairs(d: &ProjectiveDiagram, offset: usize) -> Vec<[[(usize, usize); 2]; 2]> {
    let n = d.dim();
    let pos: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let mut p = vec![usize::MAX; n];
            for (t, &j) in d.order[i].iter().enumerate() {
                p[j] = t;
            }
            p
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..n {
        for k in (i + 1)..n {
            let (top, bottom) = if d.over[(i, k)] > 0 { (i, k) } else { (k, i) };
            let h = |s: usize, o: bool| offset + half_edge(n, s, pos[s][if s == i { k } else { i }], o);
            // counterclockwise from the outgoing over half-edge
            let sigma = d.orient[(top, bottom)];
            let ring = if sigma > 0 {
                [h(top, true), h(bottom, true), h(top, false), h(bottom, false)]
            } else {
                [h(top, true), h(bottom, false), h(top, false), h(bottom, true)]
            };
            let a = [(ring[0], ring[3]), (ring[1], ring[2])];
            let b = [(ring[0], ring[1]), (ring[2], ring[3])];
            out.push([a, b]);
        }
    }
    out
}

/// The projective diagram as a graph; each strand is closed through the
/// boundary from its last crossing back to its first.
pub fn projective_graph(d: &ProjectiveDiagram) -> BracketGraph {
    let n = d.dim();
    let size = 2 * n * (n - 1);
    let mut partner = vec![0; size];
    let mut boundary = vec![false; size];
    for i in 0..n {
        for t in 0..(n - 1) {
            let out = half_edge(n, i, t, true);
            let next = if t + 2 == n { half_edge(n, i, 0, false) } else { half_edge(n, i, t + 1, false) };
            partner[out] = next;
            partner[next] = out;
            if t + 2 == n {
                boundary[out] = true;
                boundary[next] = true;
            }
        }
    }
    BracketGraph { vertices: vertex_pairs(d, 0), partner, boundary }
}

/// The doubled diagram: a second copy of every crossing with the same
/// smoothings, each strand leaving one copy into the same strand of the other.
pub fn double(d: &ProjectiveDiagram) -> BracketGraph {
    let n = d.dim();
    let size = 2 * n * (n - 1);
    let mut partner = vec![0; 2 * size];
    for copy in 0..2 {
        let base = copy * size;
        let other = (1 - copy) * size;
        for i in 0..n {
            for t in 0..(n - 1) {
                let out = base + half_edge(n, i, t, true);
                let next = if t + 2 == n {
                    other + half_edge(n, i, 0, false)
                } else {
                    base + half_edge(n, i, t + 1, false)
                };
                partner[out] = next;
                partner[next] = out;
            }
        }
    }
    let mut vertices = vertex_pairs(d, 0);
    vertices.extend(vertex_pairs(d, size));
    BracketGraph { vertices, partner, boundary: vec![false; 2 * size] }
}

/// Weights of closed state loops.
#[derive(Clone, Debug)]
pub struct LoopWeights {
    pub contractible: LaurentPoly,
    pub noncontractible: LaurentPoly,
}

/// Greedy elimination order keeping the set of open edges small.
fn elimination_order(g: &BracketGraph) -> Vec<usize> {
    let m = g.vertices.len();
    let vertex_of = vertex_index(g);
    let mut done = vec![false; m];
    let mut order = Vec::with_capacity(m);
    for _ in 0..m {
        let mut best = (i64::MIN, usize::MAX);
        for v in (0..m).filter(|&v| !done[v]) {
            let ends = half_edges(&g.vertices[v]);
            let closed = ends.iter().filter(|&&h| done[vertex_of[g.partner[h]]] || vertex_of[g.partner[h]] == v).count() as i64;
            let score = 2 * closed - 4;
            if score > best.0 || (score == best.0 && v < best.1) {
                best = (score, v);
            }
        }
        done[best.1] = true;
        order.push(best.1);
    }
    order
}

fn half_edges(v: &[[(usize, usize); 2]; 2]) -> [usize; 4] {
    let [(a, b), (c, e)] = v[0];
    [a, b, c, e]
}

fn vertex_index(g: &BracketGraph) -> Vec<usize> {
    let mut idx = vec![usize::MAX; g.partner.len()];
    for (v, pairs) in g.vertices.iter().enumerate() {
        for h in half_edges(pairs) {
            idx[h] = v;
        }
    }
    idx
}

/// State sum `Σ a^(#A − #B) Π loop weights`, by eliminating crossings one at
/// a time and keeping, for each way the open arcs pair up, the accumulated
/// polynomial.
pub fn state_sum(g: &BracketGraph, weights: &LoopWeights, max_crossings: usize) -> Result<LaurentPoly> {
    let m = g.crossing_count();
    if m > max_crossings {
        return Err(Error::TooManyCrossings(m, max_crossings));
    }
    if m == 0 {
        return Ok(LaurentPoly::one());
    }
    let vertex_of = vertex_index(g);
    let mut processed = vec![false; m];
    // frontier: open half-edges whose edge leads to an unprocessed vertex
    let mut frontier: Vec<usize> = Vec::new();
    // key: per frontier slot, (partner slot << 1) | parity
    let mut states: HashMap<Vec<u8>, LaurentPoly> = HashMap::from([(Vec::new(), LaurentPoly::one())]);
    for v in elimination_order(g) {
        processed[v] = true;
        let ends = half_edges(&g.vertices[v]);
        let f = frontier.len();
        // local endpoints: frontier slots, then the four half-edges of v
        let local_of = |h: usize| -> Option<usize> {
            if let Some(s) = frontier.iter().position(|&x| x == h) {
                Some(s)
            } else {
                ends.iter().position(|&x| x == h).map(|s| f + s)
            }
        };
        // edges to join: from v's half-edges to processed ends
        let mut joins: Vec<(usize, usize, u8)> = Vec::new();
        for (s, &h) in ends.iter().enumerate() {
            let q = g.partner[h];
            if processed[vertex_of[q]] {
                let lq = local_of(q).expect("open end of a processed vertex");
                let lh = f + s;
                if lq > lh || lq < f {
                    joins.push((lh, lq, g.boundary[h] as u8));
                }
            }
        }
        let new_frontier: Vec<usize> = frontier
            .iter()
            .copied()
            .filter(|&h| vertex_of[g.partner[h]] != v)
            .chain(ends.iter().copied().filter(|&h| !processed[vertex_of[g.partner[h]]]))
            .collect();
        let slot_of: Vec<Option<usize>> =
            (0..f + 4).map(|l| {
                let h = if l < f { frontier[l] } else { ends[l - f] };
                new_frontier.iter().position(|&x| x == h)
            }).collect();

        let mut next: HashMap<Vec<u8>, LaurentPoly> = HashMap::with_capacity(states.len() * 2);
        for (key, poly) in &states {
            for (smoothing, sign) in [(0usize, 1i32), (1, -1)] {
                let mut other = vec![usize::MAX; f + 4];
                let mut par = vec![0u8; f + 4];
                for (s, &k) in key.iter().enumerate() {
                    other[s] = (k >> 1) as usize;
                    par[s] = k & 1;
                }
                for &(x, y) in &g.vertices[v][smoothing] {
                    let (lx, ly) = (f + ends.iter().position(|&e| e == x).unwrap(), f + ends.iter().position(|&e| e == y).unwrap());
                    other[lx] = ly;
                    other[ly] = lx;
                }
                let mut contractible = 0u32;
                let mut noncontractible = 0u32;
                for &(x, y, p) in &joins {
                    let (ox, oy) = (other[x], other[y]);
                    if ox == y {
                        if (par[x] ^ p) == 0 {
                            contractible += 1;
                        } else {
                            noncontractible += 1;
                        }
                    } else {
                        let q = par[x] ^ par[y] ^ p;
                        other[ox] = oy;
                        other[oy] = ox;
                        par[ox] = q;
                        par[oy] = q;
                    }
                    other[x] = usize::MAX;
                    other[y] = usize::MAX;
                }
                let mut new_key = vec![0u8; new_frontier.len()];
                for l in 0..f + 4 {
                    if let Some(s) = slot_of[l] {
                        let o = slot_of[other[l]].expect("open arc ends on the frontier");
                        new_key[s] = ((o as u8) << 1) | par[l];
                    }
                }
                let mut term = poly.shift(sign);
                if contractible > 0 {
                    term = &term * &weights.contractible.pow(contractible);
                }
                if noncontractible > 0 {
                    term = &term * &weights.noncontractible.pow(noncontractible);
                }
                *next.entry(new_key).or_default() += &term;
            }
        }
        next.retain(|_, p| !p.is_zero());
        states = next;
        frontier = new_frontier;
    }
    debug_assert!(frontier.is_empty());
    Ok(states.remove(&Vec::new()).unwrap_or_default())
}

/// Projective bracket `Σ a^(#A − #B) d^(loops − 1)`. Disjoint loops in the
/// projective plane hold at most one noncontractible loop, so every loop
/// weighs `d = −a² − a⁻²` and the state sum divides by `d` exactly.
pub fn jd(d: &ProjectiveDiagram) -> Result<LaurentPoly> {
    jd_with_budget(d, DEFAULT_MAX_CROSSINGS)
}

pub fn jd_with_budget(d: &ProjectiveDiagram, max_crossings: usize) -> Result<LaurentPoly> {
    kauffman_bracket(&projective_graph(d), max_crossings)
}

/// Ordinary bracket of the doubled diagram, normalized by one loop factor.
pub fn jm(d: &ProjectiveDiagram) -> Result<LaurentPoly> {
    jm_with_budget(d, DEFAULT_MAX_CROSSINGS)
}

pub fn jm_with_budget(d: &ProjectiveDiagram, max_crossings: usize) -> Result<LaurentPoly> {
    kauffman_bracket(&double(d), max_crossings)
}

/// Ordinary Kauffman bracket of a closed diagram, one loop factor removed.
pub fn kauffman_bracket(g: &BracketGraph, max_crossings: usize) -> Result<LaurentPoly> {
    let d = LaurentPoly::loop_value();
    let weights = LoopWeights { contractible: d.clone(), noncontractible: d };
    normalize(state_sum(g, &weights, max_crossings)?)
}

fn normalize(raw: LaurentPoly) -> Result<LaurentPoly> {
    raw.div_exact(&LaurentPoly::loop_value())
        .ok_or_else(|| Error::Format("state sum is not divisible by the loop value".into()))
}

/// Outcome of comparing a projective and a doubled bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Disentanglement {
    /// `−jd(a²) · H^x · U^y = jm(a)`, where `H = −a⁴ − a⁻⁴`, `U = −a² − a⁻²`
    /// and negative powers move to the other side.
    Trivializable { hopf: i32, unknot: i32 },
    Nontrivial,
    Indeterminate,
}

/// Searches `|x|, |y| ≤ 3` for the relation of [`Disentanglement::Trivializable`],
/// preferring the smallest total power.
pub fn disentanglement_check(jd_poly: &LaurentPoly, jm_poly: &LaurentPoly) -> Disentanglement {
    if jd_poly.is_zero() || jm_poly.is_zero() {
        return Disentanglement::Indeterminate;
    }
    let lhs0 = -&jd_poly.substitute_power(2);
    let h = LaurentPoly::hopf_value();
    let u = LaurentPoly::loop_value();
    let mut candidates: Vec<(i32, i32)> = (-3..=3).flat_map(|x| (-3..=3).map(move |y| (x, y))).collect();
    candidates.sort_by_key(|&(x, y)| (x.abs() + y.abs(), x.abs(), -x, -y));
    for (x, y) in candidates {
        let lift = |p: &LaurentPoly, hx: i32, uy: i32| &(p * &h.pow(hx.max(0) as u32)) * &u.pow(uy.max(0) as u32);
        if lift(&lhs0, x, y) == lift(jm_poly, -x, -y) {
            return Disentanglement::Trivializable { hopf: x, unknot: y };
        }
    }
    Disentanglement::Nontrivial
}
