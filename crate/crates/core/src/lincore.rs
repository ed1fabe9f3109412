//! Oriented lines in 3-space and their quantization into sign data.
//!
//! A line is `γ(t) = n t + v` with a unit direction `n` given by spherical
//! angles and an anchor `v` in the plane `z = 0`. Two sign structures are
//! extracted from a configuration:
//!
//! * the chirality matrix `P[i][j] = sign(n_i · (n_j × (v_i − v_j)))`, the
//!   sign of the pairwise linking number;
//! * the direction tensor `N[i][j][k] = sign(n_i · (n_j × n_k))`.
//!
//! Together they form a [`DiscreteState`], the node of cluster searches.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// Relative threshold below which a mixed product counts as zero.
pub const SIGN_TOLERANCE: f64 = 1e-9;

pub type Vec3 = [f64; 3];

pub fn dot(a: &Vec3, b: &Vec3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

pub fn cross(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

pub fn sub(a: &Vec3, b: &Vec3) -> Vec3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

pub fn add_scaled(a: &Vec3, b: &Vec3, t: f64) -> Vec3 {
    [a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]]
}

pub fn norm(a: &Vec3) -> f64 {
    dot(a, a).sqrt()
}

/// Mixed product `(a, b, c) = a · (b × c)`.
pub fn mixed(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    dot(a, &cross(b, c))
}

/// Sign of the mixed product, or `None` when it is below tolerance relative
/// to the product of the norms.
pub fn mixed_sign(a: &Vec3, b: &Vec3, c: &Vec3) -> Option<i8> {
    let m = mixed(a, b, c);
    let scale = norm(a) * norm(b) * norm(c);
    if m.abs() <= SIGN_TOLERANCE * scale || scale == 0.0 {
        None
    } else if m > 0.0 {
        Some(1)
    } else {
        Some(-1)
    }
}

/// Raw parameters of one line: spherical angles of the direction and the
/// point where the line pierces the plane `z = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LineSpec {
    pub theta: f64,
    pub phi: f64,
    pub x: f64,
    pub y: f64,
}

impl LineSpec {
    pub fn direction(&self) -> Vec3 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LineConfig {
    dirs: Vec<Vec3>,
    anchors: Vec<Vec3>,
}

impl LineConfig {
    /// Builds a configuration from raw parameters and checks that every pair
    /// of lines is skew.
    pub fn from_spec(raw: &[LineSpec]) -> Result<Self> {
        let dirs = raw.iter().map(LineSpec::direction).collect();
        let anchors = raw.iter().map(|l| [l.x, l.y, 0.0]).collect();
        let cfg = LineConfig { dirs, anchors };
        cfg.check_skew()?;
        Ok(cfg)
    }

    /// Builds a configuration from arbitrary directions (normalized here) and
    /// arbitrary points on the lines.
    pub fn from_points(dirs: &[Vec3], points: &[Vec3]) -> Result<Self> {
        if dirs.len() != points.len() {
            return Err(Error::SizeMismatch { expected: dirs.len(), got: points.len() });
        }
        let dirs = dirs
            .iter()
            .map(|d| {
                let l = norm(d);
                [d[0] / l, d[1] / l, d[2] / l]
            })
            .collect();
        let cfg = LineConfig { dirs, anchors: points.to_vec() };
        cfg.check_skew()?;
        Ok(cfg)
    }

    fn check_skew(&self) -> Result<()> {
        let n = self.len();
        if n < 2 {
            return Err(Error::TooFew(n));
        }
        for i in 0..n {
            for j in (i + 1)..n {
                let c = cross(&self.dirs[i], &self.dirs[j]);
                if norm(&c) <= SIGN_TOLERANCE {
                    return Err(Error::DegenerateLines(i, j));
                }
                let d = sub(&self.anchors[i], &self.anchors[j]);
                if mixed_sign(&self.dirs[i], &self.dirs[j], &d).is_none() {
                    return Err(Error::DegenerateLines(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    pub fn direction(&self, i: usize) -> &Vec3 {
        &self.dirs[i]
    }

    pub fn anchor(&self, i: usize) -> &Vec3 {
        &self.anchors[i]
    }

    /// Raw parameters, re-anchoring each line in the plane `z = 0`.
    /// Returns `None` for a horizontal line anchored off that plane.
    pub fn to_spec(&self) -> Option<Vec<LineSpec>> {
        self.dirs
            .iter()
            .zip(&self.anchors)
            .map(|(d, p)| {
                let v = if p[2] == 0.0 {
                    *p
                } else if d[2].abs() > 1e-12 {
                    add_scaled(p, d, -p[2] / d[2])
                } else {
                    return None;
                };
                let theta = d[2].clamp(-1.0, 1.0).acos();
                let phi = d[1].atan2(d[0]).rem_euclid(std::f64::consts::TAU);
                Some(LineSpec { theta, phi, x: v[0], y: v[1] })
            })
            .collect()
    }

    /// Reflection `z → −z` of the whole configuration.
    pub fn mirror_z(&self) -> LineConfig {
        let f = |v: &Vec3| [v[0], v[1], -v[2]];
        LineConfig { dirs: self.dirs.iter().map(f).collect(), anchors: self.anchors.iter().map(f).collect() }
    }

    /// Sign of the linking number of every pair.
    pub fn chirality(&self) -> Result<ChiralityMatrix> {
        let n = self.len();
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for j in (i + 1)..n {
                let d = sub(&self.anchors[i], &self.anchors[j]);
                let s = mixed_sign(&self.dirs[i], &self.dirs[j], &d).ok_or(Error::DegenerateLines(i, j))?;
                m[(i, j)] = s as i64;
                m[(j, i)] = s as i64;
            }
        }
        Ok(ChiralityMatrix(m))
    }

    pub fn direction_tensor(&self) -> Result<DirectionTensor> {
        let n = self.len();
        let mut t = DirectionTensor::zeros(n);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    let s = mixed_sign(&self.dirs[i], &self.dirs[j], &self.dirs[k])
                        .ok_or(Error::CoplanarTriple(i, j, k))?;
                    t.set_cyclic(i, j, k, s);
                }
            }
        }
        Ok(t)
    }

    pub fn state(&self) -> Result<DiscreteState> {
        DiscreteState::new(self.chirality()?, self.direction_tensor()?)
    }
}

/// Symmetric sign matrix of pairwise linking signs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChiralityMatrix(pub(crate) IntMatrix);

impl ChiralityMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        let n = m.dim();
        for i in 0..n {
            if m[(i, i)] != 0 {
                return Err(Error::InvalidSignMatrix(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                if i != j && (m[(i, j)].abs() != 1 || m[(i, j)] != m[(j, i)]) {
                    return Err(Error::InvalidSignMatrix(format!("entry ({i}, {j})")));
                }
            }
        }
        Ok(ChiralityMatrix(m))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let m = IntMatrix::from_rows(rows).ok_or_else(|| Error::InvalidSignMatrix("not square".into()))?;
        Self::new(m)
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[(i, j)]
    }

    pub fn det(&self) -> i128 {
        self.0.det()
    }

    pub fn negated(&self) -> Self {
        ChiralityMatrix(self.0.scale(-1))
    }

    /// Upper-triangle entries packed as bits (`1` for `+1`), row-major.
    pub fn bits(&self) -> u64 {
        let n = self.dim();
        let mut bits = 0u64;
        let mut pos = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                if self.0[(i, j)] > 0 {
                    bits |= 1 << pos;
                }
                pos += 1;
            }
        }
        bits
    }
}

/// Vector of `n` antisymmetric sign matrices; component `i` has a zero row
/// and column `i`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DirectionTensor {
    n: usize,
    data: Vec<i8>,
}

impl DirectionTensor {
    pub fn zeros(n: usize) -> Self {
        DirectionTensor { n, data: vec![0; n * n * n] }
    }

    /// Builds a tensor from its components without validating it.
    pub fn from_components(comps: &[IntMatrix]) -> Result<Self> {
        let n = comps.len();
        let mut t = Self::zeros(n);
        for (i, c) in comps.iter().enumerate() {
            if c.dim() != n {
                return Err(Error::SizeMismatch { expected: n, got: c.dim() });
            }
            for j in 0..n {
                for k in 0..n {
                    let v = c[(j, k)];
                    if !(-1..=1).contains(&v) {
                        return Err(Error::InvalidTensor(format!("entry ({i}, {j}, {k}) = {v}")));
                    }
                    t.data[(i * n + j) * n + k] = v as i8;
                }
            }
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        self.data[(i * self.n + j) * self.n + k]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, v: i8) {
        self.data[(i * self.n + j) * self.n + k] = v;
    }

    /// Writes the value `s` at `(i, j, k)` and every cyclic/antisymmetric copy.
    pub fn set_cyclic(&mut self, i: usize, j: usize, k: usize, s: i8) {
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            self.set(a, b, c, s);
            self.set(a, c, b, -s);
        }
    }

    pub fn component(&self, i: usize) -> IntMatrix {
        IntMatrix::from_fn(self.n, |j, k| self.get(i, j, k) as i64)
    }

    pub fn components(&self) -> Vec<IntMatrix> {
        (0..self.n).map(|i| self.component(i)).collect()
    }

    pub fn negated(&self) -> Self {
        DirectionTensor { n: self.n, data: self.data.iter().map(|x| -x).collect() }
    }

    /// Entries `N[i][j][k]` for `i < j < k` packed as bits (`1` for `+1`).
    pub fn bits(&self) -> u128 {
        let n = self.n;
        assert!(n <= 10, "bit packing supports at most 10 lines");
        let mut bits = 0u128;
        let mut pos = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if self.get(i, j, k) > 0 {
                        bits |= 1 << pos;
                    }
                    pos += 1;
                }
            }
        }
        bits
    }

    /// Inverse of [`bits`](Self::bits).
    pub fn from_bits(n: usize, bits: u128) -> Self {
        let mut t = Self::zeros(n);
        let mut pos = 0;
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    t.set_cyclic(i, j, k, if bits >> pos & 1 == 1 { 1 } else { -1 });
                    pos += 1;
                }
            }
        }
        t
    }

    /// `Σ_i N_i²`, a symmetric integer matrix.
    pub fn square_sum(&self) -> IntMatrix {
        let n = self.n;
        let mut x = IntMatrix::zeros(n);
        for i in 0..n {
            let c = self.component(i);
            x = &x + &(&c * &c);
        }
        x
    }

    /// Deletes line `k` (component `k` and row/column `k` of the rest).
    pub fn without(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        let m = idx.len();
        let mut t = Self::zeros(m);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                for (c, &l) in idx.iter().enumerate() {
                    t.set(a, b, c, self.get(i, j, l));
                }
            }
        }
        t
    }
}

/// A violated structural property of a direction tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TensorViolation {
    Antisymmetry { i: usize, j: usize, k: usize },
    NonzeroOwnRow { i: usize, j: usize },
    Cyclic { i: usize, j: usize, k: usize },
    MissingEntry { i: usize, j: usize, k: usize },
    NotFan { i: usize },
}

/// Checks antisymmetry, the zero own row/column, cyclic symmetry, nonzero
/// generic entries and the fan property of every component.
pub fn validate_tensor(t: &DirectionTensor) -> Vec<TensorViolation> {
    let n = t.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if t.get(i, i, j) != 0 || t.get(i, j, i) != 0 {
                out.push(TensorViolation::NonzeroOwnRow { i, j });
            }
            for k in 0..n {
                if t.get(i, j, k) != -t.get(i, k, j) {
                    out.push(TensorViolation::Antisymmetry { i, j, k });
                }
                if i != j && j != k && i != k {
                    if t.get(i, j, k) == 0 {
                        out.push(TensorViolation::MissingEntry { i, j, k });
                    } else if i < j
                        && i < k
                        && (t.get(i, j, k) != t.get(j, k, i) || t.get(i, j, k) != t.get(k, i, j))
                    {
                        out.push(TensorViolation::Cyclic { i, j, k });
                    }
                }
            }
        }
    }
    for i in 0..n {
        if !is_fan(t, i) {
            out.push(TensorViolation::NotFan { i });
        }
    }
    out
}

/// Whether component `i`, read as the tournament `j → k ⇔ N[i][j][k] = +1`
/// on the other lines, is switch-equivalent to a transitive tournament.
pub fn is_fan(t: &DirectionTensor, i: usize) -> bool {
    fan_signs(t, i).is_some()
}

/// A sign vector (indexed by line, `0` at `i`) that switches component `i`
/// into a transitive tournament.
pub fn fan_signs(t: &DirectionTensor, i: usize) -> Option<Vec<i8>> {
    let n = t.dim();
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let m = others.len();
    if m <= 2 {
        let mut s = vec![1i8; n];
        s[i] = 0;
        return Some(s);
    }
    assert!(m <= 16, "fan search is exponential in the line count");
    let mut seen = vec![false; m];
    for mask in 0u32..(1 << (m - 1)) {
        let sign = |a: usize| if a == 0 || mask >> (a - 1) & 1 == 0 { 1i8 } else { -1 };
        seen.iter_mut().for_each(|x| *x = false);
        let mut ok = true;
        for a in 0..m {
            let mut score = 0;
            for b in 0..m {
                if a != b && sign(a) * sign(b) * t.get(i, others[a], others[b]) > 0 {
                    score += 1;
                }
            }
            if seen[score] {
                ok = false;
                break;
            }
            seen[score] = true;
        }
        if ok {
            let mut s = vec![0i8; n];
            for (a, &j) in others.iter().enumerate() {
                s[j] = sign(a);
            }
            return Some(s);
        }
    }
    None
}

/// The pair `(P, N̂)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DiscreteState {
    pub p: ChiralityMatrix,
    pub dir: DirectionTensor,
}

impl DiscreteState {
    pub fn new(p: ChiralityMatrix, dir: DirectionTensor) -> Result<Self> {
        if p.dim() != dir.dim() {
            return Err(Error::SizeMismatch { expected: p.dim(), got: dir.dim() });
        }
        if p.dim() < 2 {
            return Err(Error::TooFew(p.dim()));
        }
        Ok(DiscreteState { p, dir })
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    /// Negates every off-diagonal entry of `P` and every entry of `N̂`.
    pub fn mirror(&self) -> DiscreteState {
        DiscreteState { p: self.p.negated(), dir: self.dir.negated() }
    }

    /// Injective serialization: line count, then `P` upper-triangle bits,
    /// then the `N[i][j][k]` bits for `i < j < k`, little-endian.
    pub fn canonical_key(&self) -> Vec<u8> {
        let mut out = vec![self.dim() as u8];
        out.extend_from_slice(&self.p.bits().to_le_bytes());
        out.extend_from_slice(&self.dir.bits().to_le_bytes());
        out
    }

    /// Relabels line `i` as `perm[i]` after multiplying its orientation by
    /// `flips[i]`.
    pub fn transform(&self, perm: &[usize], flips: &[i8]) -> DiscreteState {
        let n = self.dim();
        let mut p = IntMatrix::zeros(n);
        let mut t = DirectionTensor::zeros(n);
        for i in 0..n {
            for j in 0..n {
                p[(perm[i], perm[j])] = flips[i] as i64 * flips[j] as i64 * self.p.get(i, j);
                for k in 0..n {
                    t.set(perm[i], perm[j], perm[k], flips[i] * flips[j] * flips[k] * self.dir.get(i, j, k));
                }
            }
        }
        DiscreteState { p: ChiralityMatrix(p), dir: t }
    }

    /// Deletes line `k`.
    pub fn without(&self, k: usize) -> DiscreteState {
        DiscreteState { p: ChiralityMatrix(self.p.matrix().minor(k)), dir: self.dir.without(k) }
    }
}
