//! Exact invariants of discrete states.
//!
//! The Ring matrix counts, for every line, the triangles of other lines that
//! encage it. It has a closed form in terms of `P` and `N̂`, a discrete
//! triangle-by-triangle form, and a geometric form working on the actual
//! lines; the three are kept independent so they can check each other.
//!
//! Scalar invariants (`class`, `Inv`, `InvP`) are traces of inverses of small
//! integer matrices, computed exactly from characteristic polynomials.

use crate::error::{Error, Result};
use crate::lincore::{cross, dot, ChiralityMatrix, DirectionTensor, DiscreteState, LineConfig, Vec3};
use crate::matrix::IntMatrix;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingMatrix(pub IntMatrix);

impl RingMatrix {
    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.0[(i, j)]
    }

    /// Number of triangles encircling each line.
    pub fn ring_vector(&self) -> Result<Vec<i64>> {
        (0..self.dim())
            .map(|i| {
                let s: i64 = self.0.row(i).iter().sum();
                if s % 3 == 0 {
                    Ok(s / 3)
                } else {
                    Err(Error::NotDivisibleBy3(i))
                }
            })
            .collect()
    }

    /// Pads with a zero row and column at index `k`.
    pub fn padded(&self, k: usize) -> RingMatrix {
        let n = self.dim() + 1;
        let src = |i: usize| if i < k { i } else { i - 1 };
        RingMatrix(IntMatrix::from_fn(n, |i, j| if i == k || j == k { 0 } else { self.0[(src(i), src(j))] }))
    }
}

/// Closed-form Ring matrix of an arbitrary sign matrix `a` and tensor `t`:
///
/// `R[j][i] = (n(n−2) + 2 a[i][j] (t_j² a)[i][j] − ((t_j a)[i][j])²) / 8`, `i ≠ j`.
pub fn ring_of(a: &IntMatrix, t: &DirectionTensor) -> Result<RingMatrix> {
    let n = a.dim();
    let mut r = IntMatrix::zeros(n);
    for j in 0..n {
        for (i, v) in ring_row(a, t, j)?.into_iter().enumerate() {
            r[(j, i)] = v;
        }
    }
    Ok(RingMatrix(r))
}

/// Row `j` of [`ring_of`]; it depends on component `j` of `t` only.
pub fn ring_row(a: &IntMatrix, t: &DirectionTensor, j: usize) -> Result<Vec<i64>> {
    let n = a.dim();
    let base = (n * (n.saturating_sub(2))) as i64;
    // b[m] = (t_j a)[m][j]
    let b: Vec<i64> = (0..n).map(|m| (0..n).map(|l| t.get(j, m, l) as i64 * a[(l, j)]).sum()).collect();
    let mut row = vec![0; n];
    for i in 0..n {
        if i == j {
            continue;
        }
        let c: i64 = (0..n).map(|m| t.get(j, i, m) as i64 * b[m]).sum();
        let num = base + 2 * a[(i, j)] * c - b[i] * b[i];
        if num % 8 != 0 {
            return Err(Error::NonIntegerEntry(j, i));
        }
        row[i] = num / 8;
    }
    Ok(row)
}

pub fn ring_from_state(state: &DiscreteState) -> Result<RingMatrix> {
    ring_of(state.p.matrix(), &state.dir)
}

/// Encaging indicator of line `l` by the triangle of lines `i, j, k`, built
/// from the three products `P_il P_jl N_l[i][j]` and their cyclic shifts.
pub fn encaging_indicator(p: &IntMatrix, t: &DirectionTensor, l: usize, i: usize, j: usize, k: usize) -> i64 {
    let pl = |a: usize| p[(a, l)];
    let x = pl(i) * pl(j) * t.get(l, i, j) as i64;
    let y = pl(j) * pl(k) * t.get(l, j, k) as i64;
    let z = pl(k) * pl(i) * t.get(l, k, i) as i64;
    let num = (x + 1) * (y + 1) * (z + 1) - (x - 1) * (y - 1) * (z - 1);
    num / 8
}

/// Ring matrix summed triangle by triangle over ordered pairs `(j, k)`.
pub fn ring_oracle_discrete(state: &DiscreteState) -> RingMatrix {
    let n = state.dim();
    let p = state.p.matrix();
    let mut r = IntMatrix::zeros(n);
    for l in 0..n {
        for i in 0..n {
            if i == l {
                continue;
            }
            let mut twice = 0;
            for j in 0..n {
                for k in 0..n {
                    if j == k || [i, l].contains(&j) || [i, l].contains(&k) {
                        continue;
                    }
                    twice += encaging_indicator(p, &state.dir, l, i, j, k);
                }
            }
            r[(l, i)] = twice / 2;
        }
    }
    RingMatrix(r)
}

/// Ring matrix from the line geometry: line `l` is encaged by lines
/// `i, j, k` when the area ratio built from `r_la = P_la (n_l × n_a)` is one.
pub fn ring_oracle_geometric(config: &LineConfig) -> Result<RingMatrix> {
    let n = config.len();
    let p = config.chirality()?;
    let mut r = IntMatrix::zeros(n);
    for l in 0..n {
        let nl = config.direction(l);
        let rv: Vec<Vec3> = (0..n)
            .map(|a| {
                let c = cross(nl, config.direction(a));
                let s = p.get(l, a) as f64;
                [s * c[0], s * c[1], s * c[2]]
            })
            .collect();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    if [i, j, k].contains(&l) {
                        continue;
                    }
                    let a = cross(&rv[i], &rv[j]);
                    let b = cross(&rv[j], &rv[k]);
                    let c = cross(&rv[k], &rv[i]);
                    // all three are parallel to n_l; project onto it
                    let (a, b, c) = (dot(&a, nl), dot(&b, nl), dot(&c, nl));
                    let denom = a.abs() + b.abs() + c.abs();
                    if a.abs().min(b.abs()).min(c.abs()) <= crate::lincore::SIGN_TOLERANCE * denom {
                        return Err(Error::CoplanarTriple(i, j, k));
                    }
                    let index = (a + b + c).abs() / denom;
                    if index > 1.0 - 1e-9 {
                        r[(l, i)] += 1;
                        r[(l, j)] += 1;
                        r[(l, k)] += 1;
                    }
                }
            }
        }
    }
    Ok(RingMatrix(r))
}

/// Whether `R_n = Σ_i pad_i(R_{n−1}^{(i)}) / (n − 4)` holds exactly.
pub fn ring_linearity_check(state: &DiscreteState) -> Result<bool> {
    let n = state.dim();
    if n <= 4 {
        return Err(Error::TooFew(n));
    }
    let full = ring_from_state(state)?;
    let mut sum = IntMatrix::zeros(n);
    for k in 0..n {
        let sub = ring_from_state(&state.without(k))?;
        sum = &sum + sub.padded(k).matrix();
    }
    Ok(sum == full.matrix().scale(n as i64 - 4))
}

/// Sum of reciprocals of the nonzero eigenvalues of `Σ_i N_i²`.
pub fn class_of(t: &DirectionTensor) -> Rational {
    t.square_sum().trace_of_pseudo_inverse()
}

/// `tr((Σ_i N_i² − P/2)⁻¹)`, evaluated through the integer matrix `2Σ N_i² − P`.
pub fn inv_configuration(state: &DiscreteState) -> Result<Rational> {
    let twice = &state.dir.square_sum().scale(2) - state.p.matrix();
    twice.trace_of_inverse().map(|t| t * 2).ok_or(Error::SingularMatrix(None))
}

/// Components `T3_i[j][k] = P_ij P_jk P_ki`.
pub fn t3(p: &IntMatrix) -> Vec<IntMatrix> {
    let n = p.dim();
    (0..n).map(|i| IntMatrix::from_fn(n, |j, k| p[(i, j)] * p[(j, k)] * p[(k, i)])).collect()
}

/// `Σ_i tr((T3_i + I/2)⁻¹)`.
pub fn inv_p(p: &ChiralityMatrix) -> Result<Rational> {
    let n = p.dim();
    let id = IntMatrix::identity(n);
    let mut total = Rational::from_integer(0);
    for (i, c) in t3(p.matrix()).iter().enumerate() {
        let m = &c.scale(2) + &id;
        total += m.trace_of_inverse().ok_or(Error::SingularMatrix(Some(i)))? * 2;
    }
    Ok(total)
}

/// Whether `N_i[j][k] = sign tr(N_i [N_j, N_k])` for all distinct `i, j, k`.
pub fn commutator_identity_check(t: &DirectionTensor) -> Result<bool> {
    let n = t.dim();
    let comps = t.components();
    let mut ok = true;
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i == j || j == k || i == k {
                    continue;
                }
                let comm = &(&comps[j] * &comps[k]) - &(&comps[k] * &comps[j]);
                let tr = (&comps[i] * &comm).trace();
                let entry = t.get(i, j, k) as i64;
                if tr == 0 {
                    if entry != 0 {
                        return Err(Error::ZeroTrace(i, j, k));
                    }
                } else if tr.signum() != entry {
                    ok = false;
                }
            }
        }
    }
    Ok(ok)
}
