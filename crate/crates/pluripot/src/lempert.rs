//! Lempert function on the bidisc for axis poles.
//!
//! The infimum of `d(f) = sum_j nu_j log|zeta_j|` over analytic discs
//! `f: D -> D x D` with `f(0) = z` and `f(zeta_j) = (a_j, 0)` decouples into
//! two scalar interpolation problems, one per coordinate, each decided
//! exactly by the Pick criterion. That turns the infinite-dimensional
//! infimum into a finite search over the node positions `zeta_j`:
//!
//! * coordinate 1 interpolates `{(0, z1)} u {(zeta_j, a_j)}`,
//! * coordinate 2 interpolates `{(0, z2)} u {(zeta_j, 0)}`.
//!
//! The family of discs is invariant under rotations of the disc variable, so
//! the first node's phase is pinned to zero. The search runs a deterministic
//! polar grid per node, keeps the best feasible configurations, and refines
//! each by coordinate descent with shrinking steps. Radius moves descend the
//! objective; paired product-preserving moves slide along the coordinate-2
//! feasibility boundary (where single-radius moves stall); angle moves accept
//! on a strict increase of the feasibility margin at equal objective. The
//! optimum typically sits on the feasibility boundary, so the signed Pick
//! certificates at the reported point are part of the result.
//!
//! The reported value is an upper bound on the true infimum (the search
//! exhibits feasible discs); `schwarz_lower_bound` gives the matching
//! necessary-condition bracket.

use rayon::prelude::*;

use crate::complex::{blaschke_eval, in_domain, Domain, C64};
use crate::ext::Ereal;
use crate::green::PoleConfig;
use crate::pick::{pick_min_eig_raw, pseudo_hyperbolic};
use crate::{Error, Result};

/// `rotation * prod_j mobius(zeros[j], .)` as a disc self-map.
#[derive(Debug, Clone)]
pub struct BlaschkeMap {
    pub zeros: Vec<C64>,
    pub rotation: C64,
}

impl BlaschkeMap {
    pub fn eval(&self, zeta: C64) -> Result<C64> {
        blaschke_eval(&self.zeros, self.rotation, zeta)
    }
}

/// An analytic-disc candidate: nodes in the disc plus the two component maps.
#[derive(Debug, Clone)]
pub struct DiscSpec {
    pub nodes: Vec<C64>,
    pub component1: BlaschkeMap,
    pub component2: BlaschkeMap,
}

impl DiscSpec {
    pub fn eval(&self, zeta: C64) -> Result<(C64, C64)> {
        Ok((self.component1.eval(zeta)?, self.component2.eval(zeta)?))
    }

    /// `d(f) = sum_j nu_j log|zeta_j|` for this disc's nodes.
    pub fn objective(&self, weights: &[f64]) -> Result<Ereal> {
        disc_objective(weights, &self.nodes)
    }

    /// Boundary-sampled check that both components map into the closed disc.
    pub fn validate_boundary(&self, samples: usize) -> Result<()> {
        for k in 0..samples {
            let th = std::f64::consts::TAU * k as f64 / samples as f64;
            let zeta = C64::from_polar(1.0, th);
            let (f1, f2) = self.eval(zeta)?;
            if f1.norm() > 1.0 + 1e-9 || f2.norm() > 1.0 + 1e-9 {
                return Err(Error::InvalidGeometry(format!(
                    "component exceeds the closed disc at theta = {th}"
                )));
            }
        }
        Ok(())
    }
}

/// `sum_j nu_j log|zeta_j|`. A node at the origin yields the `-inf` marker;
/// nodes on or outside the unit circle are parameter errors.
pub fn disc_objective(weights: &[f64], nodes: &[C64]) -> Result<Ereal> {
    if weights.len() != nodes.len() {
        return Err(Error::DimensionMismatch {
            expected: weights.len(),
            got: nodes.len(),
        });
    }
    let mut sum = Ereal::ZERO;
    for (w, zeta) in weights.iter().zip(nodes) {
        if !(w.is_finite() && *w > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "objective weight must be positive, got {w}"
            )));
        }
        if zeta.norm() >= 1.0 {
            return Err(Error::InvalidParameter(format!(
                "node {zeta} must lie in the open unit disc"
            )));
        }
        sum += Ereal::ln_abs(*zeta).scale(*w);
    }
    Ok(sum)
}

/// Search parameters for the node optimization.
#[derive(Debug, Clone)]
pub struct SolverConfig {
    /// Radii per node in the coarse grid.
    pub radii: usize,
    /// Angles per node in the coarse grid (the first node is gauge-pinned).
    pub angles: usize,
    /// Number of feasible grid configurations kept for local refinement.
    pub keep: usize,
    /// Refinement stops when every step is below this.
    pub refine_tol: f64,
    pub max_refine_sweeps: usize,
    /// Pick feasibility: minimum eigenvalue >= -psd_tol.
    pub psd_tol: f64,
    /// Cap on the joint grid size; per-node counts shrink to fit.
    pub max_grid_combos: usize,
    /// Reserved for tie-break ordering; exact ties resolve by grid index, so
    /// the search is deterministic for any seed.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            radii: 64,
            angles: 64,
            keep: 32,
            refine_tol: 1e-7,
            max_refine_sweeps: 500,
            psd_tol: 1e-10,
            max_grid_combos: 1 << 22,
            seed: 0,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if self.refine_tol <= 0.0 || self.psd_tol < 0.0 {
            return Err(Error::InvalidParameter(
                "refine_tol must be positive and psd_tol non-negative".into(),
            ));
        }
        if self.keep == 0 || self.max_grid_combos == 0 {
            return Err(Error::InvalidParameter(
                "keep and max_grid_combos must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Same search at doubled per-node resolution (budget scaled to match).
    pub fn doubled(&self) -> SolverConfig {
        SolverConfig {
            radii: self.radii * 2,
            angles: self.angles * 2,
            max_grid_combos: self.max_grid_combos.saturating_mul(8),
            ..self.clone()
        }
    }
}

/// Outcome of a Lempert search.
#[derive(Debug, Clone)]
pub struct LempertResult {
    /// Best objective found; `+inf` when no feasible disc was found at this
    /// resolution, `-inf` when the base point coincides with a pole.
    pub value: Ereal,
    /// Node positions achieving `value`, in subset order.
    pub nodes: Vec<C64>,
    /// Pole indices (into the configuration) the discs pass through.
    pub subset: Vec<usize>,
    /// Minimum eigenvalues of the two coordinate Pick matrices at the
    /// reported nodes.
    pub certificates: [f64; 2],
}

impl LempertResult {
    pub fn feasible(&self) -> bool {
        !matches!(self.value, Ereal::PosInf)
    }
}

struct Problem {
    z1: C64,
    z2: C64,
    targets: Vec<C64>,
    nu: Vec<f64>,
    psd_tol: f64,
    z2_norm: f64,
    /// Pairwise pseudo-hyperbolic distances of the coordinate-1 targets.
    pair_dph: Vec<Vec<f64>>,
}

impl Problem {
    fn new(z1: C64, z2: C64, targets: Vec<C64>, nu: Vec<f64>, psd_tol: f64) -> Problem {
        let m = targets.len();
        let mut pair_dph = vec![vec![0.0; m]; m];
        for i in 0..m {
            for j in i + 1..m {
                let d = pseudo_hyperbolic(targets[i], targets[j]);
                pair_dph[i][j] = d;
                pair_dph[j][i] = d;
            }
        }
        Problem {
            z1,
            z2,
            targets,
            nu,
            psd_tol,
            z2_norm: z2.norm(),
            pair_dph,
        }
    }

    fn len(&self) -> usize {
        self.targets.len()
    }

    fn coord1_min_eig(&self, nodes: &[C64]) -> f64 {
        let mut data = Vec::with_capacity(nodes.len() + 1);
        data.push((C64::new(0.0, 0.0), self.z1));
        data.extend(nodes.iter().zip(&self.targets).map(|(n, t)| (*n, *t)));
        pick_min_eig_raw(&data)
    }

    fn coord2_min_eig(&self, nodes: &[C64]) -> f64 {
        let mut data = Vec::with_capacity(nodes.len() + 1);
        data.push((C64::new(0.0, 0.0), self.z2));
        data.extend(nodes.iter().map(|n| (*n, C64::new(0.0, 0.0))));
        pick_min_eig_raw(&data)
    }

    fn nodes_distinct(&self, nodes: &[C64]) -> bool {
        for i in 0..nodes.len() {
            if nodes[i].norm() == 0.0 {
                return false;
            }
            for j in i + 1..nodes.len() {
                if nodes[i] == nodes[j] {
                    return false;
                }
            }
        }
        true
    }

    /// Cheap necessary conditions; may pass points the oracle rejects but
    /// must not reject oracle-feasible ones (slack 1e-9 >> psd_tol).
    fn screen(&self, nodes: &[C64]) -> bool {
        const SLACK: f64 = 1e-9;
        let prod: f64 = nodes.iter().map(|n| n.norm()).product();
        if prod < self.z2_norm * (1.0 - SLACK) {
            return false;
        }
        let m = nodes.len();
        for i in 0..m {
            for j in i + 1..m {
                if self.pair_dph[i][j] > pseudo_hyperbolic(nodes[i], nodes[j]) + SLACK {
                    return false;
                }
            }
        }
        true
    }

    /// Full oracle check; returns the pair of certificates when feasible.
    fn feasible(&self, nodes: &[C64]) -> Option<[f64; 2]> {
        if !self.nodes_distinct(nodes) {
            return None;
        }
        let e1 = self.coord1_min_eig(nodes);
        if e1 < -self.psd_tol {
            return None;
        }
        let e2 = self.coord2_min_eig(nodes);
        if e2 < -self.psd_tol {
            return None;
        }
        Some([e1, e2])
    }

    fn objective(&self, nodes: &[C64]) -> f64 {
        nodes
            .iter()
            .zip(&self.nu)
            .map(|(n, w)| w * n.norm().ln())
            .sum()
    }
}

/// Per-node candidate positions for the coarse grid.
struct NodeGrid {
    positions: Vec<C64>,
}

fn build_grids(p: &Problem, sc: &SolverConfig) -> Vec<NodeGrid> {
    let m = p.len();
    // a zero resolution searches nothing: the caller gets the explicit
    // "no feasible disc at this resolution" outcome
    let mut radii = sc.radii;
    let mut angles = sc.angles;
    // shrink per-node counts until the joint grid fits the budget
    loop {
        let mut combos: usize = 1;
        let mut over = false;
        for j in 0..m {
            let c = radii * if j == 0 { 1 } else { angles };
            combos = match combos.checked_mul(c) {
                Some(v) => v,
                None => {
                    over = true;
                    break;
                }
            };
            if combos > sc.max_grid_combos {
                over = true;
                break;
            }
        }
        if !over || (radii <= 3 && angles <= 4) {
            break;
        }
        radii = ((radii as f64 * 0.8) as usize).max(3);
        angles = ((angles as f64 * 0.8) as usize).max(4);
    }

    const R_HI: f64 = 0.999;
    (0..m)
        .map(|j| {
            // necessary per-node bounds: r_j >= d_ph(z1, a_j) (base pair of
            // coordinate 1) and r_j >= |z2| (coordinate 2 product with the
            // other radii below 1)
            let r_lo = pseudo_hyperbolic(p.z1, p.targets[j])
                .max(p.z2_norm)
                .max(1e-9);
            let rs: Vec<f64> = if radii == 0 {
                vec![]
            } else if r_lo >= R_HI {
                if r_lo < 1.0 - 1e-9 {
                    vec![r_lo]
                } else {
                    vec![]
                }
            } else if radii == 1 {
                vec![r_lo]
            } else {
                (0..radii)
                    .map(|i| r_lo + (R_HI - r_lo) * i as f64 / (radii - 1) as f64)
                    .collect()
            };
            let ths: Vec<f64> = if j == 0 {
                vec![0.0]
            } else {
                (0..angles)
                    .map(|i| std::f64::consts::TAU * i as f64 / angles as f64)
                    .collect()
            };
            let mut positions = Vec::with_capacity(rs.len() * ths.len());
            for r in &rs {
                for th in &ths {
                    positions.push(C64::from_polar(*r, *th));
                }
            }
            NodeGrid { positions }
        })
        .collect()
}

#[derive(Clone, Copy, Debug)]
struct Candidate {
    obj: f64,
    index: usize,
}

/// Keeps the `cap` smallest candidates by `(obj, index)`.
#[derive(Clone)]
struct TopSet {
    cap: usize,
    items: Vec<Candidate>,
}

impl TopSet {
    fn new(cap: usize) -> TopSet {
        TopSet {
            cap,
            items: Vec::with_capacity(cap + 1),
        }
    }

    fn worst(&self) -> Option<f64> {
        if self.items.len() == self.cap {
            self.items.last().map(|c| c.obj)
        } else {
            None
        }
    }

    fn push(&mut self, c: Candidate) {
        let pos = self
            .items
            .partition_point(|x| (x.obj, x.index) <= (c.obj, c.index));
        self.items.insert(pos, c);
        if self.items.len() > self.cap {
            self.items.pop();
        }
    }

    fn merge(mut self, other: TopSet) -> TopSet {
        for c in other.items {
            self.push(c);
        }
        self
    }
}

fn decode(index: usize, sizes: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; sizes.len()];
    let mut rest = index;
    for (d, s) in digits.iter_mut().zip(sizes).rev() {
        *d = rest % s;
        rest /= s;
    }
    digits
}

/// Coordinate-descent refinement from a feasible start. See the module docs
/// for the move set.
fn refine(p: &Problem, start: &[C64], sc: &SolverConfig) -> (f64, Vec<C64>, [f64; 2]) {
    let m = p.len();
    const R_MIN: f64 = 1e-9;
    const R_MAX: f64 = 0.9999999;

    let mut rad: Vec<f64> = start.iter().map(|z| z.norm()).collect();
    let mut ang: Vec<f64> = start.iter().map(|z| z.arg()).collect();
    let nodes_of = |rad: &[f64], ang: &[f64]| -> Vec<C64> {
        rad.iter()
            .zip(ang)
            .map(|(r, t)| C64::from_polar(*r, *t))
            .collect()
    };

    let mut nodes = nodes_of(&rad, &ang);
    let mut certs = match p.feasible(&nodes) {
        Some(c) => c,
        None => return (f64::INFINITY, nodes, [f64::NEG_INFINITY; 2]),
    };
    let mut obj = p.objective(&nodes);
    let mut margin = certs[0].min(certs[1]);

    let mut step_r = vec![0.02f64; m];
    let mut step_a = vec![std::f64::consts::TAU / sc.angles.max(8) as f64; m];

    struct State {
        obj: f64,
        margin: f64,
    }

    let accepts = |cur: &State, o: f64, mg: f64| -> bool {
        o < cur.obj - 1e-15 || (o <= cur.obj + 1e-15 && mg > cur.margin + 1e-15)
    };

    for _ in 0..sc.max_refine_sweeps {
        let mut improved = false;

        macro_rules! try_move {
            ($rad:expr, $ang:expr) => {{
                let rc: &[f64] = $rad;
                let ac: &[f64] = $ang;
                if rc.iter().all(|r| *r >= R_MIN && *r <= R_MAX) {
                    let cand = nodes_of(rc, ac);
                    if let Some(c) = p.feasible(&cand) {
                        let o = p.objective(&cand);
                        let mg = c[0].min(c[1]);
                        let cur = State { obj, margin };
                        if accepts(&cur, o, mg) {
                            rad = rc.to_vec();
                            ang = ac.to_vec();
                            nodes = cand;
                            obj = o;
                            certs = c;
                            margin = mg;
                            improved = true;
                        }
                    }
                }
            }};
        }

        // single radius moves
        for j in 0..m {
            for dir in [-1.0, 1.0] {
                let mut rc = rad.clone();
                rc[j] += dir * step_r[j];
                try_move!(&rc, &ang);
            }
        }
        // product-preserving rebalances: r_i shrinks, r_j compensates
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let ri_new = rad[i] - step_r[i];
                if ri_new < R_MIN {
                    continue;
                }
                let mut rc = rad.clone();
                rc[i] = ri_new;
                rc[j] = rad[j] * rad[i] / ri_new;
                try_move!(&rc, &ang);
            }
        }
        // angle moves (objective-neutral: accepted on margin ascent)
        for j in 1..m {
            for dir in [-1.0, 1.0] {
                let mut ac = ang.clone();
                ac[j] += dir * step_a[j];
                try_move!(&rad, &ac);
            }
        }

        if !improved {
            let max_step = step_r
                .iter()
                .chain(step_a[1..].iter())
                .fold(0.0f64, |a, b| a.max(*b));
            if max_step < sc.refine_tol {
                break;
            }
            for s in &mut step_r {
                *s *= 0.5;
            }
            for s in &mut step_a {
                *s *= 0.5;
            }
        }
    }

    (obj, nodes, certs)
}

fn subset_result(p: &Problem, sc: &SolverConfig, subset: Vec<usize>) -> LempertResult {
    let infeasible = |subset: Vec<usize>| LempertResult {
        value: Ereal::PosInf,
        nodes: Vec::new(),
        subset,
        certificates: [f64::NEG_INFINITY; 2],
    };

    let grids = build_grids(p, sc);
    if grids.iter().any(|g| g.positions.is_empty()) {
        return infeasible(subset);
    }
    let sizes: Vec<usize> = grids.iter().map(|g| g.positions.len()).collect();
    let combos: usize = sizes.iter().product();
    let m = p.len();

    // objective contribution per candidate position
    let pos_obj: Vec<Vec<f64>> = grids
        .iter()
        .enumerate()
        .map(|(j, g)| {
            g.positions
                .iter()
                .map(|z| p.nu[j] * z.norm().ln())
                .collect()
        })
        .collect();

    let survivors = (0..combos)
        .into_par_iter()
        .fold(
            || TopSet::new(sc.keep),
            |mut top, index| {
                let digits = decode(index, &sizes);
                let mut obj = 0.0;
                for j in 0..m {
                    obj += pos_obj[j][digits[j]];
                }
                if let Some(w) = top.worst() {
                    if obj >= w {
                        return top;
                    }
                }
                let nodes: Vec<C64> = digits
                    .iter()
                    .enumerate()
                    .map(|(j, d)| grids[j].positions[*d])
                    .collect();
                if !p.nodes_distinct(&nodes) || !p.screen(&nodes) {
                    return top;
                }
                // coordinate 1 needs the full oracle; the coordinate-2
                // product screen above is exact for all-zero targets
                if p.coord1_min_eig(&nodes) < -p.psd_tol {
                    return top;
                }
                top.push(Candidate { obj, index });
                top
            },
        )
        .reduce(|| TopSet::new(sc.keep), TopSet::merge);

    let mut best: Option<(f64, Vec<C64>, [f64; 2], usize)> = None;
    for cand in &survivors.items {
        let digits = decode(cand.index, &sizes);
        let start: Vec<C64> = digits
            .iter()
            .enumerate()
            .map(|(j, d)| grids[j].positions[*d])
            .collect();
        // the grid stage skipped the coordinate-2 eigen check; re-validate
        if p.feasible(&start).is_none() {
            continue;
        }
        let (obj, nodes, certs) = refine(p, &start, sc);
        if obj.is_finite() {
            let replace = match &best {
                None => true,
                Some((b, _, _, bi)) => {
                    obj < *b - 1e-15 || ((obj - *b).abs() <= 1e-15 && cand.index < *bi)
                }
            };
            if replace {
                best = Some((obj, nodes, certs, cand.index));
            }
        }
    }

    match best {
        Some((obj, nodes, certs, _)) => LempertResult {
            value: Ereal::Fin(obj),
            nodes,
            subset,
            certificates: certs,
        },
        None => infeasible(subset),
    }
}

fn validate_inputs(
    z: &[C64],
    cfg: &PoleConfig,
    weights: &[f64],
    subset: &[usize],
) -> Result<(Vec<C64>, Vec<f64>, Vec<usize>)> {
    if cfg.domain() != Domain::Bidisc {
        return Err(Error::InvalidParameter(format!(
            "the Lempert solver works on the bidisc, got {:?}",
            cfg.domain()
        )));
    }
    if !in_domain(Domain::Bidisc, z)? {
        return Err(Error::OutsideDomain(format!("base point {z:?}")));
    }
    if weights.len() != cfg.len() {
        return Err(Error::DimensionMismatch {
            expected: cfg.len(),
            got: weights.len(),
        });
    }
    if subset.is_empty() {
        return Err(Error::InvalidParameter("subset must be non-empty".into()));
    }
    let mut sorted: Vec<usize> = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != subset.len() {
        return Err(Error::InvalidParameter("subset has repeated indices".into()));
    }
    if *sorted.last().unwrap() >= cfg.len() {
        return Err(Error::InvalidParameter(format!(
            "subset index {} out of range (k = {})",
            sorted.last().unwrap(),
            cfg.len()
        )));
    }
    let axis = cfg.axis_coordinates()?;
    let targets: Vec<C64> = sorted.iter().map(|i| axis[*i]).collect();
    let nu: Vec<f64> = sorted.iter().map(|i| weights[*i]).collect();
    for (i, w) in sorted.iter().zip(&nu) {
        if !(w.is_finite() && *w > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "weight of subset pole {i} must be positive, got {w}"
            )));
        }
    }
    Ok((targets, nu, sorted))
}

/// Lempert value for the given pole subset: minimizes the disc objective over
/// node positions subject to Pick feasibility of both coordinates.
pub fn lempert_bidisc_axis(
    z: &[C64],
    cfg: &PoleConfig,
    weights: &[f64],
    subset: &[usize],
    sc: &SolverConfig,
) -> Result<LempertResult> {
    sc.validate()?;
    let (targets, nu, sorted) = validate_inputs(z, cfg, weights, subset)?;

    // base point on a subset pole: a disc may hit that pole at a node
    // arbitrarily close to the origin, so the infimum is -inf
    if z[1] == C64::new(0.0, 0.0) {
        if let Some(j) = targets.iter().position(|a| z[0] == *a) {
            let nodes: Vec<C64> = (0..targets.len())
                .map(|i| {
                    if i == j {
                        C64::new(0.0, 0.0)
                    } else {
                        C64::from_polar(0.999, 0.0)
                    }
                })
                .collect();
            return Ok(LempertResult {
                value: Ereal::NegInf,
                nodes,
                subset: sorted,
                certificates: [0.0, 0.0],
            });
        }
    }

    let p = Problem::new(z[0], z[1], targets, nu, sc.psd_tol);
    Ok(subset_result(&p, sc, sorted))
}

/// Minimum of `lempert_bidisc_axis` over all non-empty pole subsets, with the
/// achieving subset recorded.
pub fn lempert_subset_min(
    z: &[C64],
    cfg: &PoleConfig,
    weights: &[f64],
    sc: &SolverConfig,
) -> Result<LempertResult> {
    let k = cfg.len();
    if k > 8 {
        return Err(Error::InvalidParameter(format!(
            "subset enumeration supports up to 8 poles, got {k}"
        )));
    }
    let mut best: Option<LempertResult> = None;
    for mask in 1usize..(1 << k) {
        let subset: Vec<usize> = (0..k).filter(|i| mask & (1 << i) != 0).collect();
        let res = lempert_bidisc_axis(z, cfg, weights, &subset, sc)?;
        let replace = match &best {
            None => true,
            Some(b) => res.value < b.value,
        };
        if replace {
            best = Some(res);
        }
    }
    Ok(best.expect("at least one subset"))
}

/// Necessary-condition lower bound for the subset value, from the Schwarz
/// per-node bounds `r_j >= d_ph(z1, a_j)` and the coordinate-2 product
/// constraint `prod r_j >= |z2|`: the resulting linear program in `log r_j`
/// is solved exactly by a greedy fill of the cheapest weights.
pub fn schwarz_lower_bound(
    z: &[C64],
    cfg: &PoleConfig,
    weights: &[f64],
    subset: &[usize],
) -> Result<f64> {
    let (targets, nu, _) = validate_inputs(z, cfg, weights, subset)?;
    let m = targets.len();
    let mut x: Vec<f64> = targets
        .iter()
        .map(|a| pseudo_hyperbolic(z[0], *a).max(1e-300).ln())
        .collect();
    let need = z[1].norm();
    if need > 0.0 {
        let have: f64 = x.iter().sum();
        let mut deficit = need.ln() - have;
        if deficit > 0.0 {
            let mut order: Vec<usize> = (0..m).collect();
            order.sort_by(|a, b| nu[*a].partial_cmp(&nu[*b]).unwrap().then(a.cmp(b)));
            for j in order {
                let give = deficit.min(-x[j]);
                x[j] += give;
                deficit -= give;
                if deficit <= 0.0 {
                    break;
                }
            }
        }
    }
    Ok(x.iter().zip(&nu).map(|(xi, w)| w * xi).sum())
}

/// The explicit extremal disc through `(0, gamma)`, `(a, 0)`, `(b, 0)` for
/// `|ab| < |gamma| < min(|a|, |b|)`:
/// `zeta1 = sqrt(gamma a / b)`, `zeta2 = gamma / zeta1`, and
/// `f(zeta) = (beta zeta, b_{zeta1}(zeta) b_{zeta2}(zeta))` with
/// `beta = a / zeta1`. Its objective with unit weights is `log|gamma|`.
pub fn explicit_disc(a: C64, b: C64, gamma: C64) -> Result<DiscSpec> {
    let fail = |msg: String| Err(Error::InvalidGeometry(msg));
    if a.norm() == 0.0 || b.norm() == 0.0 {
        return fail("poles a, b must be non-zero".into());
    }
    if a == b {
        return fail("poles a, b must be distinct".into());
    }
    for (name, v) in [("a", a), ("b", b), ("gamma", gamma)] {
        if v.norm() >= 1.0 {
            return fail(format!("|{name}| = {} must be < 1", v.norm()));
        }
    }
    if !(a.norm() * b.norm() < gamma.norm()) {
        return fail(format!(
            "|ab| = {} must be < |gamma| = {}",
            a.norm() * b.norm(),
            gamma.norm()
        ));
    }
    if !(gamma.norm() < a.norm().min(b.norm())) {
        return fail(format!(
            "|gamma| = {} must be < min(|a|, |b|) = {}",
            gamma.norm(),
            a.norm().min(b.norm())
        ));
    }
    let zeta1 = (gamma * a / b).sqrt();
    let zeta2 = gamma / zeta1;
    let beta = a / zeta1;
    debug_assert!(zeta1.norm() < 1.0 && zeta2.norm() < 1.0 && beta.norm() < 1.0);
    Ok(DiscSpec {
        nodes: vec![zeta1, zeta2],
        component1: BlaschkeMap {
            zeros: vec![C64::new(0.0, 0.0)],
            rotation: beta,
        },
        component2: BlaschkeMap {
            zeros: vec![zeta1, zeta2],
            rotation: C64::new(1.0, 0.0),
        },
    })
}
