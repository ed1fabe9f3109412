//! Switching moves, connected clusters and the rigid-isotopy census.
//!
//! A switch negates the three cyclic copies of one direction-tensor entry,
//! as happens when three lines pass through a common plane direction. A
//! switch is a legal move when the Ring matrix changes in exactly one row
//! and that row has one of the admissible content types (the "one-row"
//! rule). Clusters are the connected components of this move graph for a
//! fixed chirality matrix.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::invariants::{inv_configuration, inv_p, ring_row};
use crate::lincore::{is_fan, validate_tensor, ChiralityMatrix, DirectionTensor, DiscreteState, LineConfig};
use crate::matrix::IntMatrix;
use num_rational::BigRational;

use crate::rational::{big_sum, Rational};
use crate::sampling::{random_config, rng_for};

/// One admissible content type of a changed Ring row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowType {
    /// Number of `−1` entries among the unit positions.
    pub minus: usize,
    /// Value at the positions of the two sandwiching lines.
    pub sandwich: i64,
    /// Full row content: unit entries, the two sandwich entries, then `0`.
    pub content: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCatalog {
    pub n: usize,
    pub types: Vec<RowType>,
    /// Set when `n` lies beyond the range of published lists.
    pub extrapolated: bool,
}

impl RowCatalog {
    /// Index of the type whose multiset equals `row` up to an overall sign,
    /// with the sign that makes it match.
    pub fn classify(&self, row: &[i64]) -> Option<(usize, i8)> {
        let mut sorted = row.to_vec();
        sorted.sort_unstable();
        let mut negated: Vec<i64> = row.iter().map(|v| -v).collect();
        negated.sort_unstable();
        for (idx, t) in self.types.iter().enumerate() {
            let mut c = t.content.clone();
            c.sort_unstable();
            if c == sorted {
                return Some((idx, 1));
            }
            if c == negated {
                return Some((idx, -1));
            }
        }
        None
    }
}

/// The admissible changed-row contents for `n` lines: `⌊(n−3)/2⌋ + 1` types.
pub fn allowed_rows(n: usize) -> RowCatalog {
    assert!((4..=12).contains(&n), "row catalog is defined for 4 ≤ n ≤ 12");
    let units = n - 3;
    let types = (0..=units / 2)
        .map(|minus| {
            let sandwich = (units - 2 * minus) as i64;
            let mut content = vec![1; units - minus];
            content.extend(std::iter::repeat(-1).take(minus));
            content.extend([sandwich, sandwich, 0]);
            RowType { minus, sandwich, content }
        })
        .collect();
    RowCatalog { n, types, extrapolated: n > 8 }
}

/// Negates the cyclic entry of the triple `(i, j, k)` and its partners.
pub fn apply_switch(state: &DiscreteState, triple: (usize, usize, usize)) -> DiscreteState {
    let (i, j, k) = triple;
    let mut dir = state.dir.clone();
    dir.set_cyclic(i, j, k, -state.dir.get(i, j, k));
    DiscreteState { p: state.p.clone(), dir }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RejectReason {
    /// The states differ in something other than one switched triple.
    NotASwitch,
    /// One of the two tensors fails validation.
    InvalidTensor,
    /// The Ring matrix is unchanged.
    NoChange,
    /// More than one Ring row changed.
    SeveralRows(Vec<usize>),
    /// The changed row is not of an admissible type.
    NotInCatalog(Vec<i64>),
    /// Non-unit entries away from the two other lines of the triple.
    MisplacedSandwich(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MoveDecision {
    Accept { sandwiched: usize, row_type: usize },
    Reject(RejectReason),
}

impl MoveDecision {
    pub fn is_accept(&self) -> bool {
        matches!(self, MoveDecision::Accept { .. })
    }
}

fn triple_list(n: usize) -> Vec<(usize, usize, usize)> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                out.push((i, j, k));
            }
        }
    }
    out
}

/// Judges a switch of `triple` given the rows of the Ring matrix before it.
/// `after` is the switched tensor, whose untouched components are assumed valid.
fn judge(
    p: &IntMatrix,
    catalog: &RowCatalog,
    before_rows: &[Vec<i64>],
    after: &DirectionTensor,
    triple: (usize, usize, usize),
) -> MoveDecision {
    let (a, b, c) = triple;
    if ![a, b, c].iter().all(|&s| is_fan(after, s)) {
        return MoveDecision::Reject(RejectReason::InvalidTensor);
    }
    let mut changed = Vec::new();
    for s in [a, b, c] {
        let row = match ring_row(p, after, s) {
            Ok(r) => r,
            Err(_) => return MoveDecision::Reject(RejectReason::InvalidTensor),
        };
        let delta: Vec<i64> = before_rows[s].iter().zip(&row).map(|(x, y)| x - y).collect();
        if delta.iter().any(|&v| v != 0) {
            changed.push((s, delta));
        }
    }
    match changed.len() {
        0 => MoveDecision::Reject(RejectReason::NoChange),
        1 => {
            let (s, delta) = changed.pop().unwrap();
            let Some((row_type, _)) = catalog.classify(&delta) else {
                return MoveDecision::Reject(RejectReason::NotInCatalog(delta));
            };
            let misplaced =
                delta.iter().enumerate().any(|(m, &v)| v.abs() != 1 && m != a && m != b && m != c);
            if misplaced || delta[s] != 0 {
                return MoveDecision::Reject(RejectReason::MisplacedSandwich(delta));
            }
            MoveDecision::Accept { sandwiched: s, row_type }
        }
        _ => MoveDecision::Reject(RejectReason::SeveralRows(changed.into_iter().map(|(s, _)| s).collect())),
    }
}

/// The one-row rule for a pair of states related by one switch.
pub fn is_connected_move(before: &DiscreteState, after: &DiscreteState) -> MoveDecision {
    let n = before.dim();
    if after.dim() != n || before.p != after.p || n < 4 {
        return MoveDecision::Reject(RejectReason::NotASwitch);
    }
    let diff = before.dir.bits() ^ after.dir.bits();
    if diff.count_ones() != 1 {
        return MoveDecision::Reject(RejectReason::NotASwitch);
    }
    let triple = triple_list(n)[diff.trailing_zeros() as usize];
    if after.dir != apply_switch(before, triple).dir {
        return MoveDecision::Reject(RejectReason::NotASwitch);
    }
    if !validate_tensor(&before.dir).is_empty() || !validate_tensor(&after.dir).is_empty() {
        return MoveDecision::Reject(RejectReason::InvalidTensor);
    }
    let p = before.p.matrix();
    let rows: Vec<Vec<i64>> = match (0..n).map(|s| ring_row(p, &before.dir, s)).collect() {
        Ok(r) => r,
        Err(_) => return MoveDecision::Reject(RejectReason::InvalidTensor),
    };
    judge(p, &allowed_rows(n), &rows, &after.dir, triple)
}

/// A connected component of the move graph for one chirality matrix.
///
/// States are kept with their labels. Relabelings and orientation reversals
/// that fix `P` and map the cluster onto itself group them into orbits.
/// Configurations are told apart by their `Inv` value, so the size of a
/// cluster is its number of distinct `Inv` values; a few orbits can share one.
#[derive(Clone, Debug, PartialEq)]
pub struct Cluster {
    pub p: ChiralityMatrix,
    /// Packed tensors ([`DirectionTensor::bits`]), sorted.
    pub states: Vec<u128>,
    /// Neighbors by index into `states`, sorted.
    pub adjacency: Vec<Vec<usize>>,
    /// `Inv` per state; `None` where the matrix is singular.
    pub inv_values: Vec<Option<Rational>>,
    pub singular: usize,
    /// Symmetries of `P` preserving the cluster.
    pub symmetries: Vec<Relabeling>,
    /// Orbit id per state; ids follow the first state of each orbit.
    pub orbit: Vec<usize>,
}

impl Cluster {
    /// Number of distinct `Inv` values.
    pub fn size(&self) -> usize {
        self.distinct_invariants().len()
    }

    /// Number of states up to relabeling and orientation reversal.
    pub fn orbit_count(&self) -> usize {
        self.orbit.iter().max().map_or(0, |m| m + 1)
    }

    pub fn labeled_size(&self) -> usize {
        self.states.len()
    }

    /// First state index of every orbit.
    pub fn orbit_representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.orbit_count()];
        for (i, &o) in self.orbit.iter().enumerate() {
            reps[o] = reps[o].min(i);
        }
        reps
    }

    /// `Inv` per orbit.
    pub fn orbit_invariants(&self) -> Vec<Option<Rational>> {
        self.orbit_representatives().into_iter().map(|i| self.inv_values[i]).collect()
    }

    /// Orbit graph: orbits joined when any of their states are.
    pub fn orbit_adjacency(&self) -> Vec<BTreeSet<usize>> {
        let mut adj = vec![BTreeSet::new(); self.orbit_count()];
        for (i, nb) in self.adjacency.iter().enumerate() {
            for &j in nb {
                let (a, b) = (self.orbit[i], self.orbit[j]);
                if a != b {
                    adj[a].insert(b);
                }
            }
        }
        adj
    }

    pub fn dim(&self) -> usize {
        self.p.dim()
    }

    pub fn det(&self) -> i128 {
        self.p.det()
    }

    pub fn invp(&self) -> Result<Rational> {
        inv_p(&self.p)
    }

    pub fn state(&self, idx: usize) -> DiscreteState {
        DiscreteState { p: self.p.clone(), dir: DirectionTensor::from_bits(self.dim(), self.states[idx]) }
    }

    pub fn contains(&self, state: &DiscreteState) -> bool {
        state.p == self.p && self.states.binary_search(&state.dir.bits()).is_ok()
    }

    pub fn distinct_invariants(&self) -> BTreeSet<Rational> {
        self.inv_values.iter().flatten().copied().collect()
    }

    /// Sum of the distinct `Inv` values.
    pub fn gsum(&self) -> BigRational {
        big_sum(&self.distinct_invariants())
    }

    /// Sum of `Inv` over all states, repeated values included.
    pub fn gsum_with_repeats(&self) -> BigRational {
        big_sum(self.inv_values.iter().flatten())
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }
}

/// Breadth-first exploration of the cluster containing `seed`.
pub fn explore_cluster(seed: &DiscreteState) -> Result<Cluster> {
    let n = seed.dim();
    if n < 4 {
        return Err(Error::TooFew(n));
    }
    if let Some(v) = validate_tensor(&seed.dir).first() {
        return Err(Error::InvalidTensor(format!("{v:?}")));
    }
    let p = seed.p.matrix();
    let catalog = allowed_rows(n);
    let triples = triple_list(n);
    let start = seed.dir.bits();
    let mut seen: HashMap<u128, usize> = HashMap::from([(start, 0)]);
    let mut order = vec![start];
    let mut edges: Vec<(u128, u128)> = Vec::new();
    let mut queue = VecDeque::from([start]);
    while let Some(bits) = queue.pop_front() {
        let mut t = DirectionTensor::from_bits(n, bits);
        let rows: Vec<Vec<i64>> = (0..n).map(|s| ring_row(p, &t, s)).collect::<Result<_>>()?;
        for (pos, &(a, b, c)) in triples.iter().enumerate() {
            let v = t.get(a, b, c);
            t.set_cyclic(a, b, c, -v);
            if judge(p, &catalog, &rows, &t, (a, b, c)).is_accept() {
                let next = bits ^ (1u128 << pos);
                edges.push((bits, next));
                if !seen.contains_key(&next) {
                    seen.insert(next, order.len());
                    order.push(next);
                    queue.push_back(next);
                }
            }
            t.set_cyclic(a, b, c, v);
        }
    }
    let mut states = order;
    states.sort_unstable();
    let index: HashMap<u128, usize> = states.iter().enumerate().map(|(i, &b)| (b, i)).collect();
    let mut adjacency = vec![BTreeSet::new(); states.len()];
    for (x, y) in edges {
        adjacency[index[&x]].insert(index[&y]);
        adjacency[index[&y]].insert(index[&x]);
    }
    let mut singular = 0;
    let inv_values = states
        .iter()
        .map(|&b| {
            let s = DiscreteState { p: seed.p.clone(), dir: DirectionTensor::from_bits(n, b) };
            let v = inv_configuration(&s).ok();
            if v.is_none() {
                singular += 1;
            }
            v
        })
        .collect();
    let probe = DiscreteState { p: seed.p.clone(), dir: DirectionTensor::from_bits(n, states[0]) };
    let symmetries: Vec<Relabeling> = automorphisms(&seed.p)
        .into_iter()
        .filter(|g| index.contains_key(&g.apply(&probe).dir.bits()))
        .collect();
    let mut orbit = vec![usize::MAX; states.len()];
    let mut next_orbit = 0;
    for i in 0..states.len() {
        if orbit[i] != usize::MAX {
            continue;
        }
        let s = DiscreteState { p: seed.p.clone(), dir: DirectionTensor::from_bits(n, states[i]) };
        for g in &symmetries {
            let j = *index
                .get(&g.apply(&s).dir.bits())
                .ok_or_else(|| Error::InvalidTensor("symmetry leaves the cluster".into()))?;
            orbit[j] = next_orbit;
        }
        next_orbit += 1;
    }
    Ok(Cluster {
        p: seed.p.clone(),
        states,
        adjacency: adjacency.into_iter().map(|s| s.into_iter().collect()).collect(),
        inv_values,
        singular,
        symmetries,
        orbit,
    })
}

/// Relabeling of lines combined with orientation reversals: line `i`
/// becomes line `perm[i]` after its orientation is multiplied by `flips[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relabeling {
    pub perm: Vec<usize>,
    pub flips: Vec<i8>,
}

impl Relabeling {
    pub fn apply(&self, state: &DiscreteState) -> DiscreteState {
        state.transform(&self.perm, &self.flips)
    }

    pub fn identity(n: usize) -> Self {
        Relabeling { perm: (0..n).collect(), flips: vec![1; n] }
    }

    pub fn inverse(&self) -> Self {
        let n = self.perm.len();
        let mut perm = vec![0; n];
        let mut flips = vec![0; n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            flips[self.perm[i]] = self.flips[i];
        }
        Relabeling { perm, flips }
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Relabeling) -> Self {
        let perm = self.perm.iter().map(|&j| next.perm[j]).collect();
        let flips = self.perm.iter().zip(&self.flips).map(|(&j, &f)| f * next.flips[j]).collect();
        Relabeling { perm, flips }
    }

    pub fn apply_p(&self, p: &ChiralityMatrix) -> ChiralityMatrix {
        let n = p.dim();
        let mut m = IntMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(self.perm[i], self.perm[j])] = (self.flips[i] * self.flips[j]) as i64 * p.get(i, j);
            }
        }
        ChiralityMatrix(m)
    }
}

/// Canonical representative of `p` under relabeling and orientation
/// reversal, with every group element mapping `p` onto it.
///
/// The representative has an all-`+1` first row and the lexicographically
/// largest upper triangle read column by column.
pub fn canonical_chirality(p: &ChiralityMatrix) -> (ChiralityMatrix, Vec<Relabeling>) {
    let n = p.dim();
    let m = p.matrix();
    // source[a] = old index placed at new position a
    let mut best: Vec<i64> = Vec::new();
    let mut winners: Vec<Vec<usize>> = Vec::new();
    let mut source = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut prefix: Vec<i64> = Vec::new();

    fn recurse(
        m: &IntMatrix,
        n: usize,
        source: &mut Vec<usize>,
        used: &mut [bool],
        prefix: &mut Vec<i64>,
        best: &mut Vec<i64>,
        winners: &mut Vec<Vec<usize>>,
    ) {
        let b = source.len();
        if b == n {
            match prefix.as_slice().cmp(best.as_slice()) {
                std::cmp::Ordering::Greater => {
                    *best = prefix.clone();
                    winners.clear();
                    winners.push(source.clone());
                }
                std::cmp::Ordering::Equal => winners.push(source.clone()),
                std::cmp::Ordering::Less => {}
            }
            return;
        }
        for cand in 0..n {
            if used[cand] {
                continue;
            }
            let start = prefix.len();
            if b > 0 {
                let root = source[0];
                let flip = |x: usize| if x == root { 1 } else { m[(root, x)] };
                for a in 0..b {
                    prefix.push(flip(source[a]) * flip(cand) * m[(source[a], cand)]);
                }
            }
            let cmp_len = prefix.len().min(best.len());
            let worse = !best.is_empty() && prefix[..cmp_len] < best[..cmp_len];
            if !worse {
                used[cand] = true;
                source.push(cand);
                recurse(m, n, source, used, prefix, best, winners);
                source.pop();
                used[cand] = false;
            }
            prefix.truncate(start);
        }
    }

    recurse(m, n, &mut source, &mut used, &mut prefix, &mut best, &mut winners);
    let mut group = Vec::with_capacity(2 * winners.len());
    for src in &winners {
        let root = src[0];
        let mut perm = vec![0; n];
        let mut flips = vec![0i8; n];
        for (a, &old) in src.iter().enumerate() {
            perm[old] = a;
            flips[old] = if old == root { 1 } else { m[(root, old)] as i8 };
        }
        let neg: Vec<i8> = flips.iter().map(|f| -f).collect();
        group.push(Relabeling { perm: perm.clone(), flips });
        group.push(Relabeling { perm, flips: neg });
    }
    let canon = group[0].apply_p(p);
    (canon, group)
}

/// Relabelings with orientation reversals that fix `p`.
pub fn automorphisms(p: &ChiralityMatrix) -> Vec<Relabeling> {
    let (_, group) = canonical_chirality(p);
    let back = group[0].inverse();
    group.iter().map(|g| g.then(&back)).collect()
}

/// Whether the mirror image of the cluster's states lies in the cluster
/// itself, up to relabeling and orientation reversal.
pub fn specular_check(cluster: &Cluster) -> bool {
    let mirror = cluster.state(0).mirror();
    let (canon, own) = canonical_chirality(&cluster.p);
    let (mirror_canon, to_canon) = canonical_chirality(&mirror.p);
    if canon != mirror_canon {
        return false;
    }
    let g = &own[0];
    let labeled: BTreeSet<u128> = (0..cluster.size()).map(|i| g.apply(&cluster.state(i)).dir.bits()).collect();
    to_canon.iter().any(|h| labeled.contains(&h.apply(&mirror).dir.bits()))
}

/// Number of rigid-isotopy classes, where known.
pub fn known_class_count(n: usize) -> Option<usize> {
    match n {
        6 => Some(19),
        7 => Some(74),
        8 => Some(506),
        _ => None,
    }
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    pub n: usize,
    /// Number of random configurations to draw.
    pub budget: usize,
    pub seed: u64,
    /// Stop as soon as the known number of classes is reached.
    pub stop_when_complete: bool,
}

/// One rigid-isotopy class found by the census, stored in canonical labels.
#[derive(Clone, Debug)]
pub struct CensusClass {
    pub cluster: Cluster,
    pub specular: bool,
    /// Index of the class holding the mirror images, if distinct.
    pub mirror: Option<usize>,
    /// Index of the sample that first reached the class (mirrors inherit it).
    pub first_sample: usize,
}

#[derive(Clone, Debug)]
pub struct Census {
    pub n: usize,
    pub classes: Vec<CensusClass>,
    pub samples_used: usize,
    /// Samples rejected as degenerate or singular.
    pub rejected: usize,
}

impl Census {
    pub fn total_states(&self) -> usize {
        self.classes.iter().map(|c| c.cluster.size()).sum()
    }

    /// `true` when the known class count is reached; `None` if unknown.
    pub fn is_complete(&self) -> Option<bool> {
        known_class_count(self.n).map(|k| self.classes.len() >= k)
    }
}

struct Index {
    /// canonical chirality bits → (canonical P, its group, class ids)
    by_p: HashMap<u64, (ChiralityMatrix, Vec<Relabeling>, Vec<usize>)>,
}

impl Index {
    fn canonicalize(&mut self, p: &ChiralityMatrix) -> (u64, Relabeling) {
        let (canon, group) = canonical_chirality(p);
        let key = canon.bits();
        let g = group[0].clone();
        self.by_p.entry(key).or_insert_with(|| {
            let (_, auts) = canonical_chirality(&canon);
            (canon, auts, Vec::new())
        });
        (key, g)
    }

    /// Class id containing `state` (already in canonical labels), if any.
    fn find(&self, key: u64, state: &DiscreteState, classes: &[CensusClass]) -> Option<usize> {
        let (_, auts, ids) = &self.by_p[&key];
        for &id in ids {
            let c = &classes[id].cluster;
            if auts.iter().any(|h| c.states.binary_search(&h.apply(state).dir.bits()).is_ok()) {
                return Some(id);
            }
        }
        None
    }
}

/// Locates or explores the class of `state`; returns its id and whether it is new.
fn place(index: &mut Index, classes: &mut Vec<CensusClass>, state: &DiscreteState, sample: usize) -> Result<(usize, bool)> {
    let (key, g) = index.canonicalize(&state.p);
    let canon_state = g.apply(state);
    if let Some(id) = index.find(key, &canon_state, classes) {
        return Ok((id, false));
    }
    let cluster = explore_cluster(&canon_state)?;
    let id = classes.len();
    classes.push(CensusClass { cluster, specular: false, mirror: None, first_sample: sample });
    index.by_p.get_mut(&key).unwrap().2.push(id);
    Ok((id, true))
}

/// Samples random configurations and explores every cluster they reach,
/// together with the mirror cluster.
pub fn census(opts: &CensusOptions) -> Result<Census> {
    let mut index = Index { by_p: HashMap::new() };
    let mut classes: Vec<CensusClass> = Vec::new();
    let mut rejected = 0;
    let mut used = 0;
    let known = known_class_count(opts.n);
    for sample in 0..opts.budget {
        if opts.stop_when_complete && known.is_some_and(|k| classes.len() >= k) {
            break;
        }
        used = sample + 1;
        let cfg: LineConfig = random_config(opts.n, &mut rng_for(opts.seed, sample as u64))?;
        let Ok(state) = cfg.state() else {
            rejected += 1;
            continue;
        };
        let (id, fresh) = place(&mut index, &mut classes, &state, sample)?;
        if fresh {
            log::info!("sample {sample}: class {} (det {}, size {})", id, classes[id].cluster.det(), classes[id].cluster.size());
            let mirror_state = classes[id].cluster.state(0).mirror();
            let (mid, _) = place(&mut index, &mut classes, &mirror_state, sample)?;
            if mid == id {
                classes[id].specular = true;
            } else {
                classes[id].mirror = Some(mid);
                classes[mid].mirror = Some(id);
            }
        }
    }
    Ok(Census { n: opts.n, classes, samples_used: used, rejected })
}
