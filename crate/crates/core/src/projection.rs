//! Projections of line configurations and the sign algebra around them.
//!
//! A projection along a direction `U` (or from a point `U`) turns every
//! line into a strand of a diagram. On strand `i` the crossings with the
//! other lines come in some order; the projection matrix records it:
//! `prM_i[j][k] = +1` when the crossing with `k` comes after the crossing
//! with `j` along the orientation of line `i`. The overlap matrix `O` records
//! which strand passes over at every crossing.

use std::collections::BTreeSet;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{inv_configuration, ring_of, t3};
use crate::lincore::{
    add_scaled, cross, dot, fan_signs, norm, sub, ChiralityMatrix, DirectionTensor, DiscreteState, LineConfig, Vec3,
    SIGN_TOLERANCE,
};
use crate::matrix::IntMatrix;
use crate::rational::Rational;
use crate::sampling::rng_for;

/// Relative gap below which two crossings on a strand count as coincident.
pub const CROSSING_TOLERANCE: f64 = 1e-9;

/// Orientation sign of a crossing relative to `P ⊙ O`: at a crossing of
/// strands `i` and `k` the planar orientation `sign(d_i × d_k)` equals
/// `ORIENTATION_CONVENTION · P_ik O_ik`.
pub const ORIENTATION_CONVENTION: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjectionKind {
    Plane,
    Point,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProjectionBundle {
    pub prm: DirectionTensor,
    pub overlap: IntMatrix,
    pub center: Vec3,
    pub kind: ProjectionKind,
}

impl ProjectionBundle {
    pub fn dim(&self) -> usize {
        self.prm.dim()
    }
}

/// Builds a bundle from printed or pseudo data; no geometry attached.
pub fn bundle_from_parts(prm: DirectionTensor, overlap: IntMatrix) -> ProjectionBundle {
    ProjectionBundle { prm, overlap, center: [0.0; 3], kind: ProjectionKind::Plane }
}

fn orthonormal_frame(u: &Vec3) -> Option<(Vec3, Vec3, Vec3)> {
    let l = norm(u);
    if !(l > 0.0) {
        return None;
    }
    let w = [u[0] / l, u[1] / l, u[2] / l];
    let seed = if w[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = cross(&seed, &w);
    let l1 = norm(&e1);
    let e1 = [e1[0] / l1, e1[1] / l1, e1[2] / l1];
    let e2 = cross(&w, &e1);
    Some((e1, e2, w))
}

/// Parameter along line `i` of its crossing with line `j`, where the
/// crossing is seen along direction `u` (`point = false`) or from point `u`.
fn crossing_parameter(config: &LineConfig, i: usize, j: usize, u: &Vec3, point: bool) -> Option<f64> {
    let (ni, vi) = (config.direction(i), config.anchor(i));
    let (nj, vj) = (config.direction(j), config.anchor(j));
    let m = if point { cross(nj, &sub(vj, u)) } else { cross(nj, u) };
    let den = dot(&m, ni);
    if den.abs() <= SIGN_TOLERANCE * norm(&m) {
        return None;
    }
    Some(dot(&m, &sub(vj, vi)) / den)
}

fn sign_of_gap(a: f64, b: f64) -> Option<i8> {
    let scale = 1.0 + a.abs().max(b.abs());
    let d = b - a;
    if d.abs() <= CROSSING_TOLERANCE * scale {
        None
    } else if d > 0.0 {
        Some(1)
    } else {
        Some(-1)
    }
}

fn crossing_table(config: &LineConfig, u: &Vec3, point: bool) -> Option<Vec<Vec<f64>>> {
    let n = config.len();
    let mut t = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                t[i][j] = crossing_parameter(config, i, j, u, point)?;
            }
        }
    }
    Some(t)
}

fn prm_from_table(t: &[Vec<f64>]) -> Option<DirectionTensor> {
    let n = t.len();
    let mut prm = DirectionTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    prm.set(i, j, k, sign_of_gap(t[i][j], t[i][k])?);
                }
            }
        }
    }
    Some(prm)
}

/// Projection along direction `u` onto a plane, viewed from `+∞·u`.
pub fn project_plane(config: &LineConfig, u: &Vec3) -> Result<ProjectionBundle> {
    let n = config.len();
    let (_, _, w) = orthonormal_frame(u).ok_or_else(|| Error::DegenerateProjection("zero direction".into()))?;
    for i in 0..n {
        if norm(&cross(config.direction(i), &w)) <= 1e-9 {
            return Err(Error::DegenerateProjection(format!("direction parallel to line {i}")));
        }
    }
    let t = crossing_table(config, &w, false)
        .ok_or_else(|| Error::DegenerateProjection("crossing at infinity".into()))?;
    let prm = prm_from_table(&t).ok_or_else(|| Error::DegenerateProjection("coincident crossings".into()))?;
    let mut overlap = IntMatrix::zeros(n);
    for i in 0..n {
        for k in (i + 1)..n {
            let xi = add_scaled(config.anchor(i), config.direction(i), t[i][k]);
            let xk = add_scaled(config.anchor(k), config.direction(k), t[k][i]);
            let s = if dot(&xi, &w) > dot(&xk, &w) { 1 } else { -1 };
            overlap[(i, k)] = s;
            overlap[(k, i)] = -s;
        }
    }
    Ok(ProjectionBundle { prm, overlap, center: w, kind: ProjectionKind::Plane })
}

/// Planar orientation signs `sign(d_i × d_k)` of the projected directions,
/// in the frame of [`project_plane`].
pub fn planar_orientation(config: &LineConfig, u: &Vec3) -> Result<IntMatrix> {
    let n = config.len();
    let (_, _, w) = orthonormal_frame(u).ok_or_else(|| Error::DegenerateProjection("zero direction".into()))?;
    let mut s = IntMatrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            if i != k {
                let c = dot(&cross(config.direction(i), config.direction(k)), &w);
                s[(i, k)] = if c > 0.0 { 1 } else { -1 };
            }
        }
    }
    Ok(s)
}

/// Sandwich matrix: `−1` at `(j, k)` when `u` lies strictly between the
/// plane through line `j` parallel to line `k` and the plane through `k`
/// parallel to `j`, `+1` otherwise.
pub fn sandwich_matrix(config: &LineConfig, u: &Vec3) -> Result<IntMatrix> {
    let n = config.len();
    let mut m = IntMatrix::zeros(n);
    for j in 0..n {
        for k in (j + 1)..n {
            let normal = cross(config.direction(j), config.direction(k));
            let a = dot(&normal, &sub(u, config.anchor(j)));
            let b = dot(&normal, &sub(u, config.anchor(k)));
            let scale = norm(&normal) * (1.0 + norm(u));
            if a.abs() <= SIGN_TOLERANCE * scale || b.abs() <= SIGN_TOLERANCE * scale {
                return Err(Error::DegeneratePoint(format!("on a critical plane of lines {j}, {k}")));
            }
            let s = if a.signum() == b.signum() { 1 } else { -1 };
            m[(j, k)] = s;
            m[(k, j)] = s;
        }
    }
    Ok(m)
}

/// Central projection from the point `u`, corrected by the sandwich matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct PointProjection {
    /// Raw central projection (`prM3D`); its `overlap` compares distances to `u`.
    pub raw: ProjectionBundle,
    /// Sandwich matrix `P3D`.
    pub sandwich: IntMatrix,
    /// `prMN = prM3D ⊙ T3(P3D)`.
    pub corrected: DirectionTensor,
}

pub fn project_point(config: &LineConfig, u: &Vec3) -> Result<PointProjection> {
    let n = config.len();
    for i in 0..n {
        let d = sub(u, config.anchor(i));
        if norm(&cross(&d, config.direction(i))) <= 1e-9 * (1.0 + norm(&d)) {
            return Err(Error::DegeneratePoint(format!("on line {i}")));
        }
    }
    let t = crossing_table(config, u, true).ok_or_else(|| Error::DegeneratePoint("crossing at infinity".into()))?;
    let prm = prm_from_table(&t).ok_or_else(|| Error::DegeneratePoint("coincident crossings".into()))?;
    let mut overlap = IntMatrix::zeros(n);
    for i in 0..n {
        for k in (i + 1)..n {
            let xi = add_scaled(config.anchor(i), config.direction(i), t[i][k]);
            let xk = add_scaled(config.anchor(k), config.direction(k), t[k][i]);
            let s = if norm(&sub(&xi, u)) < norm(&sub(&xk, u)) { 1 } else { -1 };
            overlap[(i, k)] = s;
            overlap[(k, i)] = -s;
        }
    }
    let sandwich = sandwich_matrix(config, u)?;
    let t3s = t3(&sandwich);
    let mut corrected = DirectionTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                corrected.set(i, j, k, prm.get(i, j, k) * t3s[i][(j, k)] as i8);
            }
        }
    }
    Ok(PointProjection {
        raw: ProjectionBundle { prm, overlap, center: *u, kind: ProjectionKind::Point },
        sandwich,
        corrected,
    })
}

/// Both inside/outside criteria at `u`: `(ring, sandwich)` where `ring` is
/// `R(UU, prMN) = 0` and `sandwich` is `P3D = UU`.
pub fn outside_tests(config: &LineConfig, u: &Vec3) -> Result<(bool, bool)> {
    let pp = project_point(config, u)?;
    let uu = IntMatrix::ones_off_diagonal(config.len());
    let ring = ring_of(&uu, &pp.corrected).map(|r| r.matrix().is_zero()).unwrap_or(false);
    Ok((ring, pp.sandwich == uu))
}

/// Whether `u` lies outside the configuration, by the Ring-matrix criterion.
pub fn is_outside(config: &LineConfig, u: &Vec3) -> Result<bool> {
    outside_tests(config, u).map(|(ring, _)| ring)
}

/// `D3(prM)_i[j][k] = prM_i[j][k] prM_j[k][i] prM_k[i][j]`.
pub fn d3(prm: &DirectionTensor) -> DirectionTensor {
    let n = prm.dim();
    let mut t = DirectionTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k {
                    t.set(i, j, k, prm.get(i, j, k) * prm.get(j, k, i) * prm.get(k, i, j));
                }
            }
        }
    }
    t
}

/// `D2(A, B)_k[i][j] = A_ik A_jk B_k[i][j]`.
pub fn d2(a: &IntMatrix, b: &DirectionTensor) -> DirectionTensor {
    let n = b.dim();
    let mut t = DirectionTensor::zeros(n);
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                t.set(k, i, j, (a[(i, k)] * a[(j, k)]) as i8 * b.get(k, i, j));
            }
        }
    }
    t
}

/// Recovers `H = P ⊙ O` (up to a global sign, fixed by `H_01 = +1`) from
/// the projection matrix alone, and checks `H_ij H_ik = −prM_j[k][i] prM_k[i][j]`
/// for every triple of distinct indices.
pub fn recover_h(prm: &DirectionTensor) -> Result<IntMatrix> {
    let n = prm.dim();
    if n < 3 {
        return Err(Error::TooFew(n));
    }
    let p = |i: usize, j: usize, k: usize| prm.get(i, j, k) as i64;
    let mut h = IntMatrix::zeros(n);
    h[(0, 1)] = 1;
    for j in 2..n {
        h[(0, j)] = -p(j, 1, 0) * p(1, 0, j);
    }
    for i in 1..n {
        for j in (i + 1)..n {
            h[(i, j)] = h[(i - 1, i)] * p(j, i - 1, i) * p(i - 1, i, j);
        }
    }
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = -h[(j, i)];
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && i != k && h[(i, j)] * h[(i, k)] != -p(j, k, i) * p(k, i, j) {
                    return Err(Error::InconsistentBundle(format!("triple ({i}, {j}, {k})")));
                }
            }
        }
    }
    Ok(h)
}

/// Auxiliary matrix for a pseudo-projection: component `c` of `N̂` with its
/// own row filled from row `pivot`, times `sign`.
pub fn pseudo_h(t: &DirectionTensor, c: usize, pivot: usize, sign: i8) -> Result<IntMatrix> {
    let n = t.dim();
    assert!(c < n && pivot < n && c != pivot);
    if fan_signs(t, c).is_none() {
        return Err(Error::NotTriangularizable(c));
    }
    let mut h = t.component(c);
    for k in 0..n {
        if k == c {
            continue;
        }
        let v = if k == pivot { sign as i64 } else { sign as i64 * t.get(c, pivot, k) as i64 };
        h[(c, k)] = v;
        h[(k, c)] = -v;
    }
    Ok(h)
}

/// Pseudo-projection matrix `prM_i[j][k] = −H_ij H_ik N_i[j][k]` built from
/// [`pseudo_h`]; it reproduces `N̂` under [`d3`] and has a vanishing Ring
/// matrix against the all-ones matrix.
pub fn pseudo_projection(t: &DirectionTensor, c: usize, pivot: usize, sign: i8) -> Result<DirectionTensor> {
    let h = pseudo_h(t, c, pivot, sign)?;
    Ok(pseudo_from_h(t, &h))
}

fn pseudo_from_h(t: &DirectionTensor, h: &IntMatrix) -> DirectionTensor {
    let n = t.dim();
    let mut prm = DirectionTensor::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                prm.set(i, j, k, -(h[(i, j)] * h[(i, k)]) as i8 * t.get(i, j, k));
            }
        }
    }
    prm
}

/// A pseudo-projection bundle of a state: overlap `O = H ⊙ P`.
pub fn pseudo_bundle(state: &DiscreteState, c: usize, pivot: usize, sign: i8) -> Result<ProjectionBundle> {
    let h = pseudo_h(&state.dir, c, pivot, sign)?;
    let prm = pseudo_from_h(&state.dir, &h);
    Ok(bundle_from_parts(prm, h.hadamard(state.p.matrix())))
}

/// Every `(component, pivot, sign)` choice, `2n(n−1)` in total.
pub fn pseudo_variants(n: usize) -> Vec<(usize, usize, i8)> {
    let mut out = Vec::with_capacity(2 * n * (n - 1));
    for c in 0..n {
        for pivot in 0..n {
            if pivot != c {
                out.push((c, pivot, 1));
                out.push((c, pivot, -1));
            }
        }
    }
    out
}

/// Direction `index` of a Fibonacci lattice of `count` points, jittered.
pub fn fibonacci_direction<R: Rng>(index: usize, count: usize, jitter: f64, rng: &mut R) -> Vec3 {
    let golden = std::f64::consts::PI * (3.0 - 5f64.sqrt());
    let z = 1.0 - (2.0 * index as f64 + 1.0) / count as f64;
    let r = (1.0 - z * z).max(0.0).sqrt();
    let phi = golden * index as f64;
    let mut u = [r * phi.cos(), r * phi.sin(), z];
    for c in u.iter_mut() {
        *c += jitter * rng.gen_range(-1.0..1.0);
    }
    u
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Sweep {
    pub values: BTreeSet<Rational>,
    pub skipped: usize,
    pub singular: usize,
}

/// Distinct `Inv(P, D3(prM(U)))` over a jittered Fibonacci lattice of
/// projection directions.
pub fn sweep_invariants(config: &LineConfig, samples: usize, seed: u64) -> Result<Sweep> {
    let p = config.chirality()?;
    let mut rng = rng_for(seed, 0);
    let mut out = Sweep::default();
    for idx in 0..samples {
        let u = fibonacci_direction(idx, samples, 1e-3, &mut rng);
        match project_plane(config, &u) {
            Ok(b) => match inv_configuration(&DiscreteState { p: p.clone(), dir: d3(&b.prm) }) {
                Ok(v) => {
                    out.values.insert(v);
                }
                Err(_) => out.singular += 1,
            },
            Err(_) => out.skipped += 1,
        }
    }
    Ok(out)
}

/// `(P ⊙ O)²` and `Σ_k N^c_k ⊙ prM_k − (n−1)I`, which must coincide.
pub fn square_root_identity(p: &ChiralityMatrix, bundle: &ProjectionBundle) -> (IntMatrix, IntMatrix) {
    let n = bundle.dim();
    let h = p.matrix().hadamard(&bundle.overlap);
    let nc = d3(&bundle.prm);
    let mut rhs = IntMatrix::identity(n).scale(-(n as i64 - 1));
    for k in 0..n {
        rhs = &rhs + &nc.component(k).hadamard(&bundle.prm.component(k));
    }
    (&h * &h, rhs)
}
