//! Zero location and counting for analytic functions on disks.
//!
//! Three layers, each certifying the one above:
//!
//! - [`winding_count`]: the argument principle as an integer-valued
//!   oracle. The winding number of `t ↦ f(γ(t))` around a closed
//!   contour is computed by argument accumulation with adaptive sample
//!   refinement, never by numerical integration of `f'/f`.
//! - [`localize_zeros`]: recursive 4-way cell subdivision driven by
//!   winding counts, with Newton polishing and a per-zero certification
//!   winding on a small surrounding circle.
//! - [`aberth_roots`]: Aberth–Ehrlich simultaneous iteration for
//!   explicit low-degree polynomials (exhaustive enumeration work).
//!
//! Everything here is pure evaluation; subdivision children are
//! independent and results are sorted lexicographically before output.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ZeroFinderError {
    /// `|f|` fell below the relative floor on a contour, or the argument
    /// increments could not be resolved within the sample budget. Either
    /// way a zero sits on or hugging the contour: perturb and retry.
    #[error("zero detected on or near the contour (radius {radius}); perturb the contour")]
    BoundaryZero { radius: f64 },
    /// Subdivision hit the depth limit with an unresolved cluster; the
    /// cluster's enclosing disk and its winding count are reported.
    #[error("unresolved cluster of {count} zeros near {center} (radius {radius})")]
    NonConvergence {
        center: Complex64,
        radius: f64,
        count: i64,
    },
    #[error("polynomial is identically zero")]
    DegeneratePolynomial,
    #[error("located multiplicities sum to {located} but the boundary count is {expected}")]
    CountMismatch { located: i64, expected: i64 },
    #[error("residual {residual:.3e} at {z} exceeds {tol:.3e}")]
    ResidualCheck {
        z: Complex64,
        residual: f64,
        tol: f64,
    },
}

/// Closed disk `{|z - center| ≤ radius}` used for zero searches.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Disk {
    pub center: Complex64,
    pub radius: f64,
}

impl Disk {
    pub fn new(center: Complex64, radius: f64) -> Self {
        Self { center, radius }
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() <= self.radius
    }

    pub fn contains_disk(&self, other: &Disk) -> bool {
        (other.center - self.center).norm() + other.radius <= self.radius + 1e-12
    }
}

/// Dense polynomial in ascending coefficient order.
#[derive(Debug, Clone, PartialEq)]
pub struct CoeffPoly {
    coeffs: Vec<Complex64>,
}

impl CoeffPoly {
    /// Trims exact trailing zero coefficients so `degree` is honest.
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.len() > 1 && coeffs[coeffs.len() - 1] == Complex64::new(0.0, 0.0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Complex64::new(0.0, 0.0));
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Horner evaluation of `(p(z), p'(z))` in one pass.
    pub fn eval_with_deriv(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Analytic derivative of the stored coefficient vector.
    pub fn derivative(&self) -> CoeffPoly {
        if self.coeffs.len() <= 1 {
            return CoeffPoly::new(vec![Complex64::new(0.0, 0.0)]);
        }
        CoeffPoly::new(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, &c)| c * (i as f64 + 1.0))
                .collect(),
        )
    }

    /// `max_n |c_n|`: the local residual scale.
    pub fn coeff_scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// `Σ_n |c_n|`.
    pub fn coeff_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    /// `Σ_n |c_n| r^n`: bounds both `|p|` and its evaluation noise
    /// (roughly `ε · eval_abs(|z|)`) on the disk of radius `r`.
    pub fn eval_abs(&self, r: f64) -> f64 {
        let mut acc = 0.0f64;
        for &c in self.coeffs.iter().rev() {
            acc = acc * r + c.norm();
        }
        acc
    }

    /// Cauchy bound: all roots satisfy `|z| < 1 + max |c_i/c_d|`.
    pub fn cauchy_root_bound(&self) -> f64 {
        let d = self.degree();
        let lead = self.coeffs[d].norm();
        let m = self.coeffs[..d]
            .iter()
            .map(|c| c.norm())
            .fold(0.0, f64::max);
        1.0 + m / lead
    }
}

/// A certified multiset of zeros inside a disk.
#[derive(Debug, Clone)]
pub struct ZeroSet {
    /// `(location, multiplicity)` sorted lexicographically by (Re, Im).
    pub zeros: Vec<(Complex64, u32)>,
    /// The search disk the boundary count refers to.
    pub disk: Disk,
    /// Relative residual tolerance the zeros were certified against.
    pub residual_tol: f64,
    /// Winding count over the disk boundary; equals the multiplicity sum.
    pub certify_count: i64,
}

impl ZeroSet {
    pub fn total_multiplicity(&self) -> i64 {
        self.zeros.iter().map(|&(_, m)| i64::from(m)).sum()
    }

    /// Multiplicity-weighted count of zeros inside `disk`.
    pub fn count_in_disk(&self, disk: &Disk) -> i64 {
        self.zeros
            .iter()
            .filter(|(z, _)| disk.contains(*z))
            .map(|&(_, m)| i64::from(m))
            .sum()
    }

    /// Zeros expanded by multiplicity.
    pub fn flat_roots(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.zeros.len());
        for &(z, m) in &self.zeros {
            for _ in 0..m {
                out.push(z);
            }
        }
        out
    }
}

fn sort_lex(zeros: &mut [(Complex64, u32)]) {
    zeros.sort_by(|a, b| {
        a.0.re
            .total_cmp(&b.0.re)
            .then_with(|| a.0.im.total_cmp(&b.0.im))
    });
}

// ---------------------------------------------------------------------------
// Winding numbers
// ---------------------------------------------------------------------------

const EVAL_BUDGET: usize = 1 << 20;
const SEGMENT_DEPTH: u32 = 48;
/// A sample this far below its segment neighbors signals contour contact.
const LOCAL_FLOOR: f64 = 1e-13;

#[derive(Clone, Copy)]
enum Contour {
    Circle { center: Complex64, radius: f64 },
    Rect { x0: f64, x1: f64, y0: f64, y1: f64 },
}

impl Contour {
    fn point(&self, t: f64) -> Complex64 {
        match *self {
            Contour::Circle { center, radius } => {
                let theta = 2.0 * std::f64::consts::PI * t;
                center + radius * Complex64::new(theta.cos(), theta.sin())
            }
            Contour::Rect { x0, x1, y0, y1 } => {
                let (w, h) = (x1 - x0, y1 - y0);
                let s = t.rem_euclid(1.0) * 2.0 * (w + h);
                if s < w {
                    Complex64::new(x0 + s, y0)
                } else if s < w + h {
                    Complex64::new(x1, y0 + (s - w))
                } else if s < 2.0 * w + h {
                    Complex64::new(x1 - (s - w - h), y1)
                } else {
                    Complex64::new(x0, y1 - (s - 2.0 * w - h))
                }
            }
        }
    }

    fn scale(&self) -> f64 {
        match *self {
            Contour::Circle { radius, .. } => radius,
            Contour::Rect { x0, x1, y0, y1 } => (x1 - x0).max(y1 - y0),
        }
    }
}

struct WindingState<'a, F> {
    f: &'a F,
    contour: Contour,
    evals: usize,
    /// Values at or below this magnitude are evaluation noise, i.e. the
    /// contour numerically touches a zero. 0 disables the check (then
    /// only exact zeros and refinement exhaustion signal contact).
    trust_floor: f64,
}

impl<F: Fn(Complex64) -> Complex64> WindingState<'_, F> {
    fn sample(&mut self, t: f64) -> Result<Complex64, ()> {
        if self.evals >= EVAL_BUDGET {
            return Err(());
        }
        self.evals += 1;
        let v = (self.f)(self.contour.point(t));
        // A *global* relative floor would misfire on polynomials whose
        // modulus legitimately swings many orders of magnitude around the
        // contour; the absolute trust floor and the local dip check in
        // `turn` carry that responsibility instead.
        if !v.re.is_finite() || !v.im.is_finite() || v.norm() < 1e-290 {
            return Err(());
        }
        if v.norm() <= self.trust_floor {
            return Err(());
        }
        Ok(v)
    }

    /// Accumulated argument change over the parameter interval, refined
    /// until each increment is `< π/2` and the modulus ratio between
    /// consecutive samples stays moderate.
    fn turn(
        &mut self,
        t0: f64,
        v0: Complex64,
        t1: f64,
        v1: Complex64,
        depth: u32,
    ) -> Result<f64, ()> {
        let d = (v1 / v0).arg();
        let ratio = v1.norm() / v0.norm();
        if d.abs() < std::f64::consts::FRAC_PI_2 && (0.25..4.0).contains(&ratio) {
            return Ok(d);
        }
        if depth == 0 {
            return Err(());
        }
        let tm = 0.5 * (t0 + t1);
        let vm = self.sample(tm)?;
        // A midpoint collapsing relative to both neighbors is a zero on
        // (or numerically hugging) the contour.
        if vm.norm() <= LOCAL_FLOOR * v0.norm().min(v1.norm()) {
            return Err(());
        }
        Ok(self.turn(t0, v0, tm, vm, depth - 1)? + self.turn(tm, vm, t1, v1, depth - 1)?)
    }
}

fn winding_on_contour<F: Fn(Complex64) -> Complex64>(
    f: &F,
    contour: Contour,
    min_samples: usize,
    trust_floor: f64,
) -> Result<i64, ZeroFinderError> {
    let n = min_samples.max(16);
    let fail = || ZeroFinderError::BoundaryZero {
        radius: contour.scale(),
    };
    let mut state = WindingState {
        f,
        contour,
        evals: 0,
        trust_floor,
    };
    let mut ts = Vec::with_capacity(n + 1);
    let mut vs = Vec::with_capacity(n + 1);
    for i in 0..n {
        let t = i as f64 / n as f64;
        ts.push(t);
        vs.push(state.sample(t).map_err(|_| fail())?);
    }
    ts.push(1.0);
    vs.push(vs[0]);
    let mut total = 0.0;
    for i in 0..n {
        total += state
            .turn(ts[i], vs[i], ts[i + 1], vs[i + 1], SEGMENT_DEPTH)
            .map_err(|_| fail())?;
    }
    let winding = total / (2.0 * std::f64::consts::PI);
    let rounded = winding.round();
    if (winding - rounded).abs() > 0.25 {
        return Err(fail());
    }
    Ok(rounded as i64)
}

/// Number of zeros of `f` inside the circle `(center, radius)`, counted
/// with multiplicity, by the argument principle.
///
/// Sampling starts at `min_samples` points (at least 16, 64 is the
/// conventional default) and refines adaptively; pick
/// `min_samples > 2 × (expected count)` when the circle encloses many
/// zeros, e.g. `2·degree` for a whole-root-set count of a polynomial.
///
/// Fails with [`ZeroFinderError::BoundaryZero`] when a zero sits on (or
/// numerically hugs) the circle; the caller should perturb the radius.
pub fn winding_count<F: Fn(Complex64) -> Complex64>(
    f: F,
    center: Complex64,
    radius: f64,
    min_samples: usize,
) -> Result<i64, ZeroFinderError> {
    winding_on_contour(&f, Contour::Circle { center, radius }, min_samples, 0.0)
}

/// Deterministic relative perturbations applied on [`ZeroFinderError::BoundaryZero`].
const JITTER_SEQ: [f64; 9] = [0.0, 1e-3, -1e-3, 3e-3, -3e-3, 1e-2, -1e-2, 3e-2, -3e-2];

/// Winding count over a disk boundary with the deterministic radius
/// jitter sequence; returns the count and the radius that worked.
pub fn winding_count_jittered<F: Fn(Complex64) -> Complex64>(
    f: F,
    disk: &Disk,
    min_samples: usize,
) -> Result<(i64, f64), ZeroFinderError> {
    let mut last = ZeroFinderError::BoundaryZero {
        radius: disk.radius,
    };
    for delta in JITTER_SEQ {
        let radius = disk.radius * (1.0 + delta);
        match winding_on_contour(
            &f,
            Contour::Circle {
                center: disk.center,
                radius,
            },
            min_samples,
            0.0,
        ) {
            Ok(count) => return Ok((count, radius)),
            Err(e) => last = e,
        }
    }
    Err(last)
}

// ---------------------------------------------------------------------------
// Subdivision localization
// ---------------------------------------------------------------------------

const LOCAL_SAMPLES: usize = 64;
// Never cut a cell dead-center: disks centered on the real axis would
// otherwise get an edge exactly on the axis, where real-coefficient
// polynomials put their real zeros.
const CUT_JITTERS: [f64; 6] = [0.013, -0.013, 0.037, -0.037, 0.11, -0.11];
const CELL_BUDGET: usize = 20_000;

#[derive(Clone, Copy)]
struct Cell {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
    count: i64,
}

impl Cell {
    fn center(&self) -> Complex64 {
        Complex64::new(0.5 * (self.x0 + self.x1), 0.5 * (self.y0 + self.y1))
    }

    fn side(&self) -> f64 {
        (self.x1 - self.x0).max(self.y1 - self.y0)
    }

    fn contains(&self, z: Complex64) -> bool {
        z.re >= self.x0 && z.re <= self.x1 && z.im >= self.y0 && z.im <= self.y1
    }

    fn edge_distance(&self, z: Complex64) -> f64 {
        (z.re - self.x0)
            .min(self.x1 - z.re)
            .min(z.im - self.y0)
            .min(self.y1 - z.im)
    }

    fn contour(&self) -> Contour {
        Contour::Rect {
            x0: self.x0,
            x1: self.x1,
            y0: self.y0,
            y1: self.y1,
        }
    }

    fn circumdisk(&self) -> Disk {
        Disk::new(
            self.center(),
            0.5 * Complex64::new(self.x1 - self.x0, self.y1 - self.y0).norm(),
        )
    }
}

struct Localizer<'a> {
    poly: &'a CoeffPoly,
    min_side: f64,
    cells_used: usize,
    /// Absolute evaluation-noise floor on the search region.
    trust_floor: f64,
}

impl Localizer<'_> {
    fn eval(&self) -> impl Fn(Complex64) -> Complex64 + '_ {
        |z| self.poly.eval(z)
    }

    fn cell_count(&self, cell: &Cell) -> Result<i64, ZeroFinderError> {
        winding_on_contour(
            &self.eval(),
            cell.contour(),
            LOCAL_SAMPLES,
            self.trust_floor,
        )
    }

    /// Splits a cell at a jittered cut so that all four children count
    /// cleanly and conserve the parent's winding count.
    fn split(&mut self, cell: &Cell) -> Result<[Cell; 4], ZeroFinderError> {
        for &jx in &CUT_JITTERS {
            for &jy in &CUT_JITTERS {
                let cx = 0.5 * (cell.x0 + cell.x1) + jx * (cell.x1 - cell.x0);
                let cy = 0.5 * (cell.y0 + cell.y1) + jy * (cell.y1 - cell.y0);
                let quads = [
                    (cell.x0, cx, cell.y0, cy),
                    (cx, cell.x1, cell.y0, cy),
                    (cell.x0, cx, cy, cell.y1),
                    (cx, cell.x1, cy, cell.y1),
                ];
                let mut children = [Cell {
                    x0: 0.0,
                    x1: 0.0,
                    y0: 0.0,
                    y1: 0.0,
                    count: 0,
                }; 4];
                let mut ok = true;
                let mut sum = 0;
                for (i, &(x0, x1, y0, y1)) in quads.iter().enumerate() {
                    let mut child = Cell {
                        x0,
                        x1,
                        y0,
                        y1,
                        count: 0,
                    };
                    match self.cell_count(&child) {
                        Ok(c) => {
                            child.count = c;
                            sum += c;
                            children[i] = child;
                        }
                        Err(_) => {
                            ok = false;
                            break;
                        }
                    }
                }
                // Parent equals the sum of children for a clean partition;
                // a mismatch means a zero straddles a cut, so re-jitter.
                if ok && sum == cell.count {
                    return Ok(children);
                }
            }
        }
        let disk = cell.circumdisk();
        Err(ZeroFinderError::NonConvergence {
            center: disk.center,
            radius: disk.radius,
            count: cell.count,
        })
    }

    /// Newton from the cell center, then a certification winding on a
    /// small circle around the converged point. Succeeds only when the
    /// certified multiplicity accounts for the whole cell count with the
    /// certification circle inside the cell.
    fn resolve(&mut self, cell: &Cell) -> Option<(Complex64, u32)> {
        let mut z = cell.center();
        let scale = self.poly.coeff_sum();
        let mut last_step = cell.side();
        let mut converged = false;
        for _ in 0..200 {
            let (p, dp) = self.poly.eval_with_deriv(z);
            if p == Complex64::new(0.0, 0.0) {
                converged = true;
                last_step = 0.0;
                break;
            }
            if dp == Complex64::new(0.0, 0.0) {
                return None;
            }
            let step = p / dp;
            z -= step;
            if !z.re.is_finite() || !z.im.is_finite() {
                return None;
            }
            last_step = step.norm();
            if last_step <= 1e-15 * (1.0 + z.norm()) {
                converged = true;
                break;
            }
            // Multiple zeros plateau at the noise floor of f; accept on a
            // tiny residual instead of a tiny step.
            let local = scale * z.norm().max(1.0).powi(self.poly.degree() as i32);
            if p.norm() <= 1e-13 * local && last_step <= 1e-5 * cell.side() {
                converged = true;
                break;
            }
            if (z - cell.center()).norm() > 2.0 * cell.side() {
                return None; // wandered off; subdivide instead
            }
        }
        if !converged || !cell.contains(z) {
            return None;
        }
        let r_hi = 0.9 * cell.edge_distance(z);
        let r_lo = (32.0 * last_step).max(1e-12 * (1.0 + z.norm()));
        if r_lo >= r_hi {
            return None;
        }
        let r_c = (r_lo * r_hi).sqrt();
        for &adjust in &[1.0, 1.37, 0.71] {
            let r = (r_c * adjust).min(r_hi);
            if let Ok(m) = winding_on_contour(
                &self.eval(),
                Contour::Circle {
                    center: z,
                    radius: r,
                },
                LOCAL_SAMPLES,
                self.trust_floor,
            ) {
                return if m == cell.count {
                    Some((z, m as u32))
                } else {
                    None
                };
            }
        }
        None
    }

    fn localize_in_cell(
        &mut self,
        root: Cell,
        zeros: &mut Vec<(Complex64, u32)>,
    ) -> Result<(), ZeroFinderError> {
        let mut stack = vec![root];
        while let Some(cell) = stack.pop() {
            if cell.count == 0 {
                continue;
            }
            self.cells_used += 1;
            let too_deep = cell.side() < self.min_side || self.cells_used > CELL_BUDGET;
            if let Some(found) = self.resolve(&cell) {
                zeros.push(found);
                continue;
            }
            if too_deep {
                let disk = cell.circumdisk();
                return Err(ZeroFinderError::NonConvergence {
                    center: disk.center,
                    radius: disk.radius,
                    count: cell.count,
                });
            }
            stack.extend(self.split(&cell)?);
        }
        Ok(())
    }
}

/// Locates every zero of `poly` in `disk`, certified so that the
/// multiplicities sum to the boundary winding count and each zero meets
/// the relative residual tolerance `tol` (scale: `max |coeff|`).
pub fn localize_zeros(poly: &CoeffPoly, disk: Disk, tol: f64) -> Result<ZeroSet, ZeroFinderError> {
    if poly.is_zero() {
        return Err(ZeroFinderError::DegeneratePolynomial);
    }
    if poly.degree() == 0 {
        return Ok(ZeroSet {
            zeros: Vec::new(),
            disk,
            residual_tol: tol,
            certify_count: 0,
        });
    }
    let f = |z| poly.eval(z);
    // Evaluation-noise bound over the whole search region (root square
    // corners included): values below it cannot be distinguished from
    // zero, so contours reaching it are treated as contact and jittered.
    // The exact corner modulus matters: a loose triangle bound can cross
    // |z| = 1 where eval_abs explodes for high-degree series.
    let h = disk.radius * 1.1;
    let region_radius = [(h, h), (h, -h), (-h, h), (-h, -h)]
        .iter()
        .map(|&(dx, dy)| (disk.center + Complex64::new(dx, dy)).norm())
        .fold(0.0f64, f64::max);
    let trust_floor = 24.0 * f64::EPSILON * poly.eval_abs(region_radius);
    let mut last_err = None;
    for &delta in &JITTER_SEQ {
        let radius = disk.radius * (1.0 + delta);
        let used = Disk::new(disk.center, radius);
        let total = match winding_on_contour(
            &f,
            Contour::Circle {
                center: disk.center,
                radius,
            },
            LOCAL_SAMPLES,
            trust_floor,
        ) {
            Ok(t) => t,
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        };
        if total == 0 {
            return Ok(ZeroSet {
                zeros: Vec::new(),
                disk: used,
                residual_tol: tol,
                certify_count: 0,
            });
        }
        // Root cell: the circumscribing square, grown until its boundary
        // is clean and its count certified.
        let mut root_ok = None;
        for &grow in &[1.0, 1.011, 1.029, 1.053] {
            let half = radius * grow;
            let mut cell = Cell {
                x0: disk.center.re - half,
                x1: disk.center.re + half,
                y0: disk.center.im - half,
                y1: disk.center.im + half,
                count: 0,
            };
            let loc = Localizer {
                poly,
                min_side: radius * 2.0f64.powi(-26),
                cells_used: 0,
                trust_floor,
            };
            if let Ok(c) = loc.cell_count(&cell) {
                if c >= total {
                    cell.count = c;
                    root_ok = Some((cell, loc));
                    break;
                }
            }
        }
        let Some((root, mut loc)) = root_ok else {
            last_err = Some(ZeroFinderError::BoundaryZero { radius });
            continue;
        };
        let mut zeros = Vec::new();
        match loc.localize_in_cell(root, &mut zeros) {
            Ok(()) => {}
            Err(e @ ZeroFinderError::NonConvergence { .. }) => return Err(e),
            Err(e) => {
                last_err = Some(e);
                continue;
            }
        }
        let mut kept: Vec<(Complex64, u32)> = zeros
            .into_iter()
            .filter(|(z, _)| used.contains(*z))
            .collect();
        let located: i64 = kept.iter().map(|&(_, m)| i64::from(m)).sum();
        if located != total {
            // A zero sits numerically on the search circle; try the next
            // radius perturbation.
            last_err = Some(ZeroFinderError::CountMismatch {
                located,
                expected: total,
            });
            continue;
        }
        let scale = poly.coeff_scale();
        for &(z, _) in &kept {
            let residual = poly.eval(z).norm();
            if residual > tol * scale {
                return Err(ZeroFinderError::ResidualCheck {
                    z,
                    residual,
                    tol: tol * scale,
                });
            }
        }
        sort_lex(&mut kept);
        return Ok(ZeroSet {
            zeros: kept,
            disk: used,
            residual_tol: tol,
            certify_count: total,
        });
    }
    Err(last_err.unwrap_or(ZeroFinderError::BoundaryZero {
        radius: disk.radius,
    }))
}

// ---------------------------------------------------------------------------
// Aberth–Ehrlich
// ---------------------------------------------------------------------------

const ABERTH_MAX_ITER: usize = 400;
const ABERTH_RESIDUAL: f64 = 1e-8;

/// All roots of an explicit polynomial by Aberth–Ehrlich simultaneous
/// iteration from a perturbed-circle start, polished to a relative
/// residual below `1e-8 · Σ|c_i|`.
///
/// The root count equals the degree exactly. For real coefficient
/// vectors the output is canonicalized into exact conjugate pairs. On
/// non-convergence the finder falls back to subdivision localization on
/// an enclosing disk.
pub fn aberth_roots(poly: &CoeffPoly) -> Result<ZeroSet, ZeroFinderError> {
    if poly.is_zero() {
        return Err(ZeroFinderError::DegeneratePolynomial);
    }
    // Factor out exact roots at the origin (leading alphabet families
    // never produce them, but the interface is general).
    let mut zero_mult = 0u32;
    let mut coeffs = poly.coeffs().to_vec();
    while coeffs.len() > 1 && coeffs[0] == Complex64::new(0.0, 0.0) {
        coeffs.remove(0);
        zero_mult += 1;
    }
    let reduced = CoeffPoly::new(coeffs);
    let degree = reduced.degree();
    let bound = poly.cauchy_root_bound();
    let enclosing = Disk::new(Complex64::new(0.0, 0.0), bound);

    let mut zeros: Vec<(Complex64, u32)> = Vec::with_capacity(poly.degree());
    if zero_mult > 0 {
        zeros.push((Complex64::new(0.0, 0.0), zero_mult));
    }
    if degree > 0 {
        match aberth_iterate(&reduced) {
            Some(mut roots) => {
                collapse_multiple_roots(&reduced, &mut roots);
                if reduced.coeffs().iter().all(|c| c.im == 0.0) {
                    canonicalize_conjugate_pairs(&mut roots);
                }
                zeros.extend(roots.into_iter().map(|z| (z, 1u32)));
            }
            None => {
                // Iteration cap without meeting the residual: certify via
                // subdivision on the enclosing disk instead.
                let fallback = localize_zeros(&reduced, enclosing, ABERTH_RESIDUAL * 10.0)?;
                zeros.extend(fallback.zeros);
            }
        }
    }
    sort_lex(&mut zeros);
    let certify_count = zeros.iter().map(|&(_, m)| i64::from(m)).sum();
    Ok(ZeroSet {
        zeros,
        disk: enclosing,
        residual_tol: ABERTH_RESIDUAL,
        certify_count,
    })
}

fn aberth_iterate(poly: &CoeffPoly) -> Option<Vec<Complex64>> {
    let d = poly.degree();
    let lead = poly.coeffs()[d];
    let tail = poly.coeffs()[0];
    let start_radius = if tail.norm() > 0.0 {
        (tail.norm() / lead.norm()).powf(1.0 / d as f64)
    } else {
        0.5 * poly.cauchy_root_bound()
    };
    // Perturbed circle: golden-ratio jitter in radius and phase breaks
    // the symmetries that stall simultaneous iteration.
    let mut z: Vec<Complex64> = (0..d)
        .map(|j| {
            let t = (j as f64 * 0.618_033_988_749_895).fract() - 0.5;
            let theta = 2.0 * std::f64::consts::PI * j as f64 / d as f64 + 0.41 + 0.13 * t;
            start_radius * (1.0 + 0.08 * t) * Complex64::new(theta.cos(), theta.sin())
        })
        .collect();

    for _ in 0..ABERTH_MAX_ITER {
        let mut max_step = 0.0f64;
        for k in 0..d {
            let (p, dp) = poly.eval_with_deriv(z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let w = if dp == Complex64::new(0.0, 0.0) {
                Complex64::new(1e-12, 1e-12)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, &other) in z.iter().enumerate() {
                if j != k {
                    let diff = z[k] - other;
                    if diff != Complex64::new(0.0, 0.0) {
                        repulsion += Complex64::new(1.0, 0.0) / diff;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * repulsion;
            let correction = if denom == Complex64::new(0.0, 0.0) {
                w
            } else {
                w / denom
            };
            z[k] -= correction;
            if !z[k].re.is_finite() || !z[k].im.is_finite() {
                return None;
            }
            max_step = max_step.max(correction.norm() / (1.0 + z[k].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    // Accept on certified residuals alone: iterations that stall near
    // multiple roots can still satisfy them.
    let scale = poly.coeff_sum();
    let residual_ok = z.iter().all(|&r| {
        let local = scale * r.norm().max(1.0).powi(poly.degree() as i32);
        poly.eval(r).norm() <= ABERTH_RESIDUAL * local
    });
    if residual_ok {
        Some(z)
    } else {
        None
    }
}

/// Collapses root clusters that approximate one multiple zero.
///
/// Simultaneous iteration splits an exact m-fold zero into m points
/// spread by roughly `eps^{1/m}` in random directions; the same zero is
/// a *simple* zero of `p^{(m-1)}`, recoverable to full precision by
/// Newton. Collapse is accepted only when every derivative through
/// order m-1 vanishes there at near machine precision, so clusters of
/// genuinely distinct roots stay untouched.
fn collapse_multiple_roots(poly: &CoeffPoly, roots: &mut [Complex64]) {
    let n = roots.len();
    if n < 2 {
        return;
    }
    let cluster_tol = |z: Complex64| 1e-4 * (1.0 + z.norm());
    let mut claimed = vec![false; n];
    for i in 0..n {
        if claimed[i] {
            continue;
        }
        let mut cluster = vec![i];
        for j in i + 1..n {
            if !claimed[j] && (roots[j] - roots[i]).norm() <= cluster_tol(roots[i]) {
                cluster.push(j);
            }
        }
        let m = cluster.len();
        if m < 2 {
            continue;
        }
        let centroid = cluster.iter().map(|&j| roots[j]).sum::<Complex64>() / m as f64;
        let mut deriv = poly.clone();
        for _ in 0..m - 1 {
            deriv = deriv.derivative();
        }
        let Some(polished) = newton_simple(&deriv, centroid) else {
            continue;
        };
        // Every lower derivative must vanish to accept multiplicity m.
        let mut witness = poly.clone();
        let mut all_tiny = true;
        for _ in 0..m {
            let scale =
                witness.coeff_sum() * polished.norm().max(1.0).powi(witness.degree() as i32);
            if witness.eval(polished).norm() > 1e-12 * scale {
                all_tiny = false;
                break;
            }
            witness = witness.derivative();
        }
        if !all_tiny {
            continue;
        }
        for &j in &cluster {
            roots[j] = polished;
            claimed[j] = true;
        }
    }
}

fn newton_simple(poly: &CoeffPoly, start: Complex64) -> Option<Complex64> {
    let mut z = start;
    for _ in 0..80 {
        let (p, dp) = poly.eval_with_deriv(z);
        if dp == Complex64::new(0.0, 0.0) {
            return None;
        }
        let step = p / dp;
        z -= step;
        if !z.re.is_finite() || !z.im.is_finite() || (z - start).norm() > 1.0 + start.norm() {
            return None;
        }
        if step.norm() <= 1e-15 * (1.0 + z.norm()) {
            return Some(z);
        }
    }
    None
}

/// Rewrites the root list of a real-coefficient polynomial so complex
/// roots form exact conjugate pairs and near-real roots are snapped to
/// the axis. Skipped (roots left as computed) when pairing is ambiguous.
fn canonicalize_conjugate_pairs(roots: &mut [Complex64]) {
    let snap = |z: Complex64| 1e-10 * (1.0 + z.re.abs());
    let mut plus: Vec<Complex64> = Vec::new();
    let mut minus: Vec<Complex64> = Vec::new();
    let mut reals: Vec<f64> = Vec::new();
    for &z in roots.iter() {
        if z.im.abs() <= snap(z) {
            reals.push(z.re);
        } else if z.im > 0.0 {
            plus.push(z);
        } else {
            minus.push(z.conj());
        }
    }
    if plus.len() != minus.len() {
        return;
    }
    let lex = |a: &Complex64, b: &Complex64| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im));
    plus.sort_by(lex);
    minus.sort_by(lex);
    let tol = 1e-6;
    if !plus
        .iter()
        .zip(&minus)
        .all(|(a, b)| (a - b).norm() <= tol * (1.0 + a.norm()))
    {
        return;
    }
    let mut out = Vec::with_capacity(roots.len());
    for r in reals {
        out.push(Complex64::new(r, 0.0));
    }
    for (a, b) in plus.iter().zip(&minus) {
        let re = 0.5 * (a.re + b.re);
        let im = 0.5 * (a.im + b.im);
        out.push(Complex64::new(re, im));
        out.push(Complex64::new(re, -im));
    }
    roots.copy_from_slice(&out);
}
