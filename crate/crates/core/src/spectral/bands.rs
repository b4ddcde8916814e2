//! Band structure with multiplicities, per-branch bands and gap
//! classification.

use std::f64::consts::PI;

use num_complex::Complex;

use super::surface::in_band;
use super::{CharDeterminant, SpectralError, SurfacePoly};
use crate::numerics::{exact_roots_clustered, hermitian_eigs};
use crate::operator::PeriodicOperator;
use crate::{CFloat, RatPoly, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeKind {
    Periodic,
    Antiperiodic,
    Resonance,
}

impl EdgeKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeKind::Periodic => "periodic",
            EdgeKind::Antiperiodic => "antiperiodic",
            EdgeKind::Resonance => "resonance",
        }
    }
}

/// A candidate edge: real root of `q(., 1)`, `q(., -1)` or `rho`.
#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub value: f64,
    pub kinds: Vec<EdgeKind>,
    /// Branches having a band that starts or ends here.
    pub branches: Vec<usize>,
}

impl Edge {
    /// Periodic or antiperiodic eigenvalue.
    pub fn is_eigenvalue(&self) -> bool {
        self.kinds
            .iter()
            .any(|k| matches!(k, EdgeKind::Periodic | EdgeKind::Antiperiodic))
    }
}

/// A closed interval of the spectrum with constant multiplicity inside.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    pub lo: f64,
    pub hi: f64,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure {
    /// Merged view, ascending with disjoint interiors.
    pub segments: Vec<Segment>,
    /// Edges that bound a segment or a per-branch band.
    pub edges: Vec<Edge>,
    /// All candidate edges.
    pub candidates: Vec<Edge>,
    /// For each tracked branch, its bands `{z : Delta_j(z) in [-1, 1]}`.
    pub branch_bands: Vec<Vec<(f64, f64)>>,
    /// Floquet samples checked (0 when no operator was available).
    pub floquet_samples: usize,
}

impl BandStructure {
    pub fn multiplicity_at(&self, z: f64) -> usize {
        self.segments
            .iter()
            .filter(|s| s.lo <= z && z <= s.hi)
            .map(|s| s.multiplicity)
            .max()
            .unwrap_or(0)
    }

    /// `min` and `max` of the spectrum.
    pub fn extent(&self) -> Option<(f64, f64)> {
        Some((self.segments.first()?.lo, self.segments.last()?.hi))
    }

    /// The spectrum as disjoint closed intervals (ignoring multiplicity).
    pub fn spectrum(&self) -> Vec<(f64, f64)> {
        let mut out: Vec<(f64, f64)> = Vec::new();
        for s in &self.segments {
            match out.last_mut() {
                Some(last) if s.lo <= last.1 + DEDUP_TOL => last.1 = last.1.max(s.hi),
                _ => out.push((s.lo, s.hi)),
            }
        }
        out
    }

    fn edge_at(&self, z: f64) -> Option<&Edge> {
        self.candidates.iter().find(|e| (e.value - z).abs() <= DEDUP_TOL)
    }
}

#[derive(Debug, Clone, Copy)]
pub struct BandOptions {
    /// Floquet cross-validation grid size on `x in [0, pi]`; 0 disables it.
    pub grid: usize,
    /// Candidate deduplication tolerance.
    pub tol: f64,
    /// Tracking points per candidate interval.
    pub track_density: usize,
}

impl Default for BandOptions {
    fn default() -> Self {
        BandOptions {
            grid: 257,
            tol: DEDUP_TOL,
            track_density: 16,
        }
    }
}

const DEDUP_TOL: f64 = 1e-9;
const CROSS_TOL: f64 = 1e-7;

fn real_roots_tagged(f: &RatPoly, kind: EdgeKind, out: &mut Vec<(f64, EdgeKind)>) -> Result<(), SpectralError> {
    if f.degree().unwrap_or(0) == 0 {
        return Ok(());
    }
    for (r, _) in exact_roots_clustered(f)? {
        if r.im == 0.0 {
            out.push((r.re, kind));
        }
    }
    Ok(())
}

/// Sorted, deduplicated candidate edges.
pub fn candidate_edges(cd: &CharDeterminant, sp: &SurfacePoly, tol: f64) -> Result<Vec<Edge>, SpectralError> {
    let mut raw = Vec::new();
    real_roots_tagged(&cd.q_at_sign(false), EdgeKind::Periodic, &mut raw)?;
    real_roots_tagged(&cd.q_at_sign(true), EdgeKind::Antiperiodic, &mut raw)?;
    real_roots_tagged(&sp.resonance_poly().rho, EdgeKind::Resonance, &mut raw)?;
    raw.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<Edge> = Vec::new();
    for (v, k) in raw {
        match out.last_mut() {
            Some(e) if (v - e.value).abs() <= tol => {
                if !e.kinds.contains(&k) {
                    e.kinds.push(k);
                    e.kinds.sort();
                }
            }
            _ => out.push(Edge {
                value: v,
                kinds: vec![k],
                branches: Vec::new(),
            }),
        }
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for sub in permutations(n - 1) {
        for pos in 0..=sub.len() {
            let mut v = sub.clone();
            v.insert(pos, n - 1);
            out.push(v);
        }
    }
    out
}

/// Reorder `new` to best continue the tracked branches, given predictions.
fn match_branches(pred: &[CFloat], new: &[CFloat], perms: &Option<Vec<Vec<usize>>>) -> Vec<CFloat> {
    let m = pred.len();
    match perms {
        Some(perms) => {
            let best = perms
                .iter()
                .min_by(|a, b| {
                    let ca: f64 = (0..m).map(|j| (pred[j] - new[a[j]]).norm()).sum();
                    let cb: f64 = (0..m).map(|j| (pred[j] - new[b[j]]).norm()).sum();
                    ca.total_cmp(&cb)
                })
                .expect("at least one permutation");
            best.iter().map(|&k| new[k]).collect()
        }
        None => {
            let mut used = vec![false; m];
            let mut out = vec![Complex::new(0.0, 0.0); m];
            for j in 0..m {
                let k = (0..m)
                    .filter(|&k| !used[k])
                    .min_by(|&a, &b| (pred[j] - new[a]).norm().total_cmp(&(pred[j] - new[b]).norm()))
                    .expect("unused root left");
                used[k] = true;
                out[j] = new[k];
            }
            out
        }
    }
}

/// Track the branches along ascending real `xs`; returns values per point
/// with a consistent branch labelling.
pub fn track_branches(sp: &SurfacePoly, xs: &[f64]) -> Result<Vec<Vec<CFloat>>, SpectralError> {
    let m = sp.degree();
    let perms = if m <= 6 { Some(permutations(m)) } else { None };
    let mut out: Vec<Vec<CFloat>> = Vec::with_capacity(xs.len());
    for (i, &x) in xs.iter().enumerate() {
        let vals = sp.lyapunov_at(Complex::new(x, 0.0))?;
        let ordered = match i {
            0 => vals,
            1 => match_branches(&out[0], &vals, &perms),
            _ => {
                let (x0, x1) = (xs[i - 2], xs[i - 1]);
                let f = if x1 > x0 { (x - x1) / (x1 - x0) } else { 0.0 };
                let pred: Vec<CFloat> = (0..m)
                    .map(|j| out[i - 1][j] + (out[i - 1][j] - out[i - 2][j]) * f)
                    .collect();
                match_branches(&pred, &vals, &perms)
            }
        };
        out.push(ordered);
    }
    Ok(out)
}

fn merge_runs(intervals: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut out: Vec<(f64, f64)> = Vec::new();
    for &(lo, hi) in intervals {
        match out.last_mut() {
            Some(last) if (lo - last.1).abs() <= DEDUP_TOL => last.1 = hi,
            _ => out.push((lo, hi)),
        }
    }
    out
}

/// Band structure from the determinant alone (no Floquet cross-check).
pub fn band_structure_from(
    cd: &CharDeterminant,
    sp: &SurfacePoly,
    opts: &BandOptions,
) -> Result<BandStructure, SpectralError> {
    let mut candidates = candidate_edges(cd, sp, opts.tol)?;
    let m = sp.degree();
    let n_int = candidates.len().saturating_sub(1);

    // tracking grid: candidates plus interior points, midpoints at known slots
    let density = opts.track_density.max(2) & !1;
    let mut xs = Vec::new();
    let mut mid_index = Vec::with_capacity(n_int);
    for i in 0..n_int {
        let (a, b) = (candidates[i].value, candidates[i + 1].value);
        for k in 0..density {
            if k == density / 2 {
                mid_index.push(xs.len());
            }
            xs.push(a + (b - a) * k as f64 / density as f64);
        }
    }
    if let Some(last) = candidates.last() {
        xs.push(last.value);
    }
    let tracked = track_branches(sp, &xs)?;

    let mut merged_raw: Vec<Segment> = Vec::new();
    let mut per_branch: Vec<Vec<(f64, f64)>> = vec![Vec::new(); m];
    for (i, &mi) in mid_index.iter().enumerate() {
        let (a, b) = (candidates[i].value, candidates[i + 1].value);
        let vals = &tracked[mi];
        let mult = vals.iter().filter(|v| in_band(**v)).count();
        for (j, v) in vals.iter().enumerate() {
            if in_band(*v) {
                per_branch[j].push((a, b));
            }
        }
        if mult > 0 {
            match merged_raw.last_mut() {
                Some(s) if s.multiplicity == mult && (s.hi - a).abs() <= DEDUP_TOL => s.hi = b,
                _ => merged_raw.push(Segment {
                    lo: a,
                    hi: b,
                    multiplicity: mult,
                }),
            }
        }
    }
    let branch_bands: Vec<Vec<(f64, f64)>> = per_branch.iter().map(|v| merge_runs(v)).collect();

    for e in candidates.iter_mut() {
        for (j, bands) in branch_bands.iter().enumerate() {
            if bands
                .iter()
                .any(|&(lo, hi)| (lo - e.value).abs() <= DEDUP_TOL || (hi - e.value).abs() <= DEDUP_TOL)
            {
                e.branches.push(j);
            }
        }
    }
    let edges = candidates
        .iter()
        .filter(|e| {
            !e.branches.is_empty()
                || merged_raw
                    .iter()
                    .any(|s| (s.lo - e.value).abs() <= DEDUP_TOL || (s.hi - e.value).abs() <= DEDUP_TOL)
        })
        .cloned()
        .collect();
    Ok(BandStructure {
        segments: merged_raw,
        edges,
        candidates,
        branch_bands,
        floquet_samples: 0,
    })
}

/// Ascending eigenvalues of `L(e^{ix})` at `grid` points `x in [0, pi]`.
pub fn floquet_samples(
    op: &PeriodicOperator<Rational>,
    grid: usize,
) -> Result<Vec<(f64, Vec<f64>)>, SpectralError> {
    (0..grid)
        .map(|k| {
            let x = if grid > 1 { PI * k as f64 / (grid - 1) as f64 } else { 0.0 };
            let l = op.floquet_matrix_at_angle(x)?;
            Ok((x, hermitian_eigs(&l)?))
        })
        .collect()
}

/// Full band structure with the Floquet cross-check: every eigenvalue of
/// `L(e^{ix})` on the grid must fall in a band (within `1e-7`).
pub fn band_structure(
    op: &PeriodicOperator<Rational>,
    cd: &CharDeterminant,
    sp: &SurfacePoly,
    opts: &BandOptions,
) -> Result<BandStructure, SpectralError> {
    let mut bs = band_structure_from(cd, sp, opts)?;
    if opts.grid > 0 {
        for (x, eigs) in floquet_samples(op, opts.grid)? {
            for lambda in eigs {
                let inside = bs
                    .segments
                    .iter()
                    .any(|s| s.lo - CROSS_TOL <= lambda && lambda <= s.hi + CROSS_TOL);
                if !inside {
                    return Err(SpectralError::CrossValidation { x, lambda });
                }
            }
        }
        bs.floquet_samples = opts.grid;
    }
    Ok(bs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapKind {
    /// Both endpoints are periodic or antiperiodic eigenvalues.
    Stable,
    /// Both endpoints are resonances (real branch points) only.
    Resonance,
    Mixed,
}

impl GapKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GapKind::Stable => "stable",
            GapKind::Resonance => "resonance",
            GapKind::Mixed => "mixed",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
    pub lo_kinds: Vec<EdgeKind>,
    pub hi_kinds: Vec<EdgeKind>,
    pub kind: GapKind,
}

/// Open intervals between consecutive spectral bands, labelled by the kind
/// of candidate edge at each end.
pub fn classify_gaps(bs: &BandStructure) -> Vec<Gap> {
    let spec = bs.spectrum();
    let kinds_at = |z: f64| bs.edge_at(z).map(|e| e.kinds.clone()).unwrap_or_default();
    spec.windows(2)
        .map(|w| {
            let (lo, hi) = (w[0].1, w[1].0);
            let lo_kinds = kinds_at(lo);
            let hi_kinds = kinds_at(hi);
            let eigen = |k: &[EdgeKind]| k.iter().any(|k| *k != EdgeKind::Resonance);
            let kind = match (eigen(&lo_kinds), eigen(&hi_kinds)) {
                (true, true) => GapKind::Stable,
                (false, false) => GapKind::Resonance,
                _ => GapKind::Mixed,
            };
            Gap {
                lo,
                hi,
                lo_kinds,
                hi_kinds,
                kind,
            }
        })
        .collect()
}

/// Largest distance from an endpoint of an eigenvalue-index range
/// `[min_x lambda_n(x), max_x lambda_n(x)]` to the nearest candidate edge.
/// Range extremes are located on a grid of `grid` points in `x in [0, pi]`
/// and refined by golden-section search.
pub fn floquet_edge_completeness(
    op: &PeriodicOperator<Rational>,
    bs: &BandStructure,
    grid: usize,
) -> Result<f64, SpectralError> {
    let samples = floquet_samples(op, grid)?;
    let n = samples.first().map_or(0, |s| s.1.len());
    let eig_n = |x: f64, idx: usize| -> Result<f64, SpectralError> {
        Ok(hermitian_eigs(&op.floquet_matrix_at_angle(x)?)?[idx])
    };
    let mut worst: f64 = 0.0;
    for idx in 0..n {
        for sign in [1.0, -1.0] {
            // extremum of sign * lambda_idx
            let (k, _) = samples
                .iter()
                .enumerate()
                .map(|(k, s)| (k, sign * s.1[idx]))
                .max_by(|a, b| a.1.total_cmp(&b.1))
                .expect("nonempty grid");
            let lo = samples[k.saturating_sub(1)].0;
            let hi = samples[(k + 1).min(samples.len() - 1)].0;
            let value = golden_max(|x| eig_n(x, idx).map(|v| sign * v), lo, hi)? * sign;
            let dist = bs
                .candidates
                .iter()
                .map(|e| (e.value - value).abs())
                .fold(f64::INFINITY, f64::min);
            worst = worst.max(dist);
        }
    }
    Ok(worst)
}

fn golden_max(
    f: impl Fn(f64) -> Result<f64, SpectralError>,
    mut a: f64,
    mut b: f64,
) -> Result<f64, SpectralError> {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut best = f(a)?.max(f(b)?);
    let mut c = b - g * (b - a);
    let mut d = a + g * (b - a);
    let (mut fc, mut fd) = (f(c)?, f(d)?);
    for _ in 0..80 {
        if b - a < 1e-12 {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d)?;
        }
    }
    best = best.max(fc).max(fd);
    Ok(best)
}
