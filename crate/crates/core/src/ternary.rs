//! Linear systems of plane curves through zero-dimensional schemes:
//! condition matrices for |I_Z(m)|, integral curves through degree-k
//! schemes, base-point and differential-rank spot checks, the smooth
//! conic dichotomy for degree-3 schemes, and the span-dimension bound
//! for Veronese images of integral plane curves.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::curvilinear::SchemeComponent;
use crate::error::{Error, Result};
use crate::factor::{
    bi_total_degree, factor_bipoly, is_irreducible_mod_p, zmodp, BiPoly,
};
use crate::forms::{Form, MonomialOrder};
use crate::mat::{mat_kernel, Mat};
use crate::rat::{binomial, rat_from_str, rat_i64, rat_to_string, Rat};
use crate::ratcurve::RationalCurveParam;
use crate::unipoly::{self, UniPoly};

/// Scheme in the plane: jets plus level-2 fat points (degree 3 each).
#[derive(Debug, Clone)]
pub enum PlaneComponent {
    Jet(SchemeComponent),
    /// First infinitesimal neighborhood 2P; degree 3, not curvilinear.
    FatPoint { point: Vec<Rat> },
}

impl PlaneComponent {
    pub fn degree(&self) -> usize {
        match self {
            PlaneComponent::Jet(c) => c.e,
            PlaneComponent::FatPoint { .. } => 3,
        }
    }

    pub fn support(&self) -> Vec<Rat> {
        match self {
            PlaneComponent::Jet(c) => c.support(),
            PlaneComponent::FatPoint { point } => point.clone(),
        }
    }
}

fn proportional(u: &[Rat], v: &[Rat]) -> bool {
    for i in 0..u.len() {
        for j in (i + 1)..u.len() {
            if &u[i] * &v[j] != &u[j] * &v[i] {
                return false;
            }
        }
    }
    true
}

#[derive(Debug, Clone)]
pub struct PlaneScheme {
    components: Vec<PlaneComponent>,
}

impl PlaneScheme {
    pub fn new(components: Vec<PlaneComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Malformed("plane scheme needs a component".into()));
        }
        for c in &components {
            match c {
                PlaneComponent::Jet(j) => {
                    if j.curve.coords().len() != 3 {
                        return Err(Error::DimensionMismatch(
                            "plane scheme jets must live in P^2".into(),
                        ));
                    }
                }
                PlaneComponent::FatPoint { point } => {
                    if point.len() != 3 {
                        return Err(Error::DimensionMismatch(
                            "fat point must have 3 coordinates".into(),
                        ));
                    }
                    if point.iter().all(Rat::is_zero) {
                        return Err(Error::Malformed("fat point at the zero vector".into()));
                    }
                }
            }
        }
        for i in 0..components.len() {
            for j in (i + 1)..components.len() {
                if proportional(&components[i].support(), &components[j].support()) {
                    return Err(Error::CoincidentSupport(format!(
                        "plane components {i} and {j} share a support point"
                    )));
                }
            }
        }
        Ok(PlaneScheme { components })
    }

    pub fn components(&self) -> &[PlaneComponent] {
        &self.components
    }

    pub fn degree(&self) -> usize {
        self.components.iter().map(PlaneComponent::degree).sum()
    }

    pub fn supports(&self) -> Vec<Vec<Rat>> {
        self.components.iter().map(PlaneComponent::support).collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "components": self
                .components
                .iter()
                .map(|c| match c {
                    PlaneComponent::Jet(j) => json!({
                        "type": "jet",
                        "curve": j.curve.to_json(),
                        "t": rat_to_string(&j.t),
                        "e": j.e,
                    }),
                    PlaneComponent::FatPoint { point } => json!({
                        "type": "fat",
                        "point": point.iter().map(rat_to_string).collect::<Vec<_>>(),
                    }),
                })
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<PlaneScheme> {
        let comps = v
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("plane scheme: missing components".into()))?;
        let mut out = Vec::new();
        for c in comps {
            let kind = c
                .get("type")
                .and_then(Value::as_str)
                .ok_or_else(|| Error::Malformed("plane scheme: missing component type".into()))?;
            match kind {
                "jet" => {
                    let curve = RationalCurveParam::from_json(
                        c.get("curve")
                            .ok_or_else(|| Error::Malformed("plane scheme: missing curve".into()))?,
                    )?;
                    let t = rat_from_str(
                        c.get("t")
                            .and_then(Value::as_str)
                            .ok_or_else(|| Error::Malformed("plane scheme: missing t".into()))?,
                    )?;
                    let e = c
                        .get("e")
                        .and_then(Value::as_u64)
                        .ok_or_else(|| Error::Malformed("plane scheme: missing e".into()))?
                        as usize;
                    out.push(PlaneComponent::Jet(SchemeComponent::new(curve, t, e)?));
                }
                "fat" => {
                    let point = c
                        .get("point")
                        .and_then(Value::as_array)
                        .ok_or_else(|| Error::Malformed("plane scheme: missing point".into()))?
                        .iter()
                        .map(|x| {
                            x.as_str()
                                .ok_or_else(|| {
                                    Error::Malformed("plane scheme: point entry not a string".into())
                                })
                                .and_then(rat_from_str)
                        })
                        .collect::<Result<Vec<_>>>()?;
                    out.push(PlaneComponent::FatPoint { point });
                }
                other => {
                    return Err(Error::Malformed(format!(
                        "plane scheme: unknown component type {other:?}"
                    )))
                }
            }
        }
        PlaneScheme::new(out)
    }
}

fn monomial_value(exps: &[u32], p: &[Rat]) -> Rat {
    let mut m = Rat::one();
    for (x, &k) in p.iter().zip(exps) {
        for _ in 0..k {
            m *= x;
        }
    }
    m
}

/// Row of first partials in direction `var`, evaluated at `p`.
fn partial_row(mo: &MonomialOrder, var: usize, p: &[Rat]) -> Vec<Rat> {
    mo.exponents()
        .iter()
        .map(|e| {
            if e[var] == 0 {
                return Rat::zero();
            }
            let mut f = e.clone();
            f[var] -= 1;
            rat_i64(e[var] as i64) * monomial_value(&f, p)
        })
        .collect()
}

/// One row per vanishing condition on the raw coefficients of a
/// degree-m ternary form. Jets contribute t-derivatives of the pulled
/// back monomials; fat points contribute the three first partials (the
/// value condition follows by the Euler relation).
pub fn condition_rows(z: &PlaneScheme, m: usize) -> Vec<Vec<Rat>> {
    let mo = MonomialOrder::new(3, m);
    let mut rows = Vec::new();
    for comp in z.components() {
        match comp {
            PlaneComponent::Jet(c) => {
                let coords: Vec<UniPoly> =
                    c.curve.coords().iter().map(|b| b.dehomogenize()).collect();
                let mut pulled: Vec<UniPoly> = mo
                    .exponents()
                    .iter()
                    .map(|e| {
                        let mut acc: UniPoly = vec![Rat::one()];
                        for (g, &k) in coords.iter().zip(e) {
                            for _ in 0..k {
                                acc = unipoly::mul(&acc, g);
                            }
                        }
                        acc
                    })
                    .collect();
                for _ in 0..c.e {
                    rows.push(pulled.iter().map(|g| unipoly::eval(g, &c.t)).collect());
                    pulled = pulled.iter().map(|g| unipoly::derivative(g)).collect();
                }
            }
            PlaneComponent::FatPoint { point } => {
                for var in 0..3 {
                    rows.push(partial_row(&mo, var, point));
                }
            }
        }
    }
    rows
}

/// The linear system |I_Z(m)| of degree-m curves through Z.
#[derive(Debug, Clone)]
pub struct LinearSystemReport {
    pub m: usize,
    pub h0: usize,
    /// Superabundance `deg(Z) - rank`; meaningful for large m.
    pub h1: usize,
    pub basis: Vec<Form>,
}

impl LinearSystemReport {
    pub fn to_json(&self) -> Value {
        json!({
            "m": self.m,
            "h0": self.h0,
            "h1": self.h1,
            "basis": self.basis.iter().map(Form::to_json).collect::<Vec<_>>(),
        })
    }
}

pub fn h0_ideal(z: &PlaneScheme, m: usize) -> Result<LinearSystemReport> {
    if m < 1 {
        return Err(Error::OutOfRange("system degree must be >= 1".into()));
    }
    let rows = condition_rows(z, m);
    let mat = Mat::from_rows(rows);
    let rank = mat.rank();
    let kernel = mat_kernel(&mat);
    let h0 = kernel.len();
    debug_assert_eq!(h0 + rank, mat.cols);
    let basis = kernel
        .iter()
        .map(|v| Form::from_raw_vector(3, m, v))
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearSystemReport { m, h0, h1: z.degree() - rank, basis })
}

/// A line containing Z, when one exists.
pub fn line_containment(z: &PlaneScheme) -> Result<Option<Form>> {
    let rep = h0_ideal(z, 1)?;
    Ok(rep.basis.into_iter().next())
}

/// Integral curve through Z with the integrality evidence attached.
#[derive(Debug, Clone)]
pub struct CurveReport {
    pub curve: Form,
    pub degree: usize,
    pub attempts: usize,
    /// Proven by exact factorization over the rationals.
    pub rational_irreducible: bool,
    pub squarefree: bool,
    /// Heuristic only: irreducibility of the reductions mod random
    /// primes > 100, None where the reduction was degenerate.
    pub modp_probes: Vec<(u64, Option<bool>)>,
    pub absolutely_irreducible_heuristic: bool,
}

impl CurveReport {
    pub fn to_json(&self) -> Value {
        json!({
            "curve": self.curve.to_json(),
            "degree": self.degree,
            "attempts": self.attempts,
            "rational_irreducible": self.rational_irreducible,
            "squarefree": self.squarefree,
            "modp_probes": self
                .modp_probes
                .iter()
                .map(|(p, r)| json!({"p": p, "irreducible": r}))
                .collect::<Vec<_>>(),
            "absolutely_irreducible_heuristic": self.absolutely_irreducible_heuristic,
        })
    }
}

/// Dehomogenization z = 1 of a ternary form, as a dense bivariate poly.
fn form_to_bipoly(f: &Form) -> BiPoly {
    let mut out: BiPoly = vec![vec![]; f.degree() + 1];
    for (e, c) in f.terms() {
        let (a, b) = (e[0] as usize, e[1] as usize);
        if out[a].len() <= b {
            out[a].resize(b + 1, Rat::zero());
        }
        out[a][b] = c.clone();
    }
    crate::factor::bi_trim(&mut out);
    out
}

/// Squarefreeness and rational irreducibility of a ternary form, by
/// exact bivariate factorization of the z = 1 chart. The total-degree
/// check rules out a hidden factor of z.
fn integrality(f: &Form) -> (bool, bool, BiPoly) {
    let bp = form_to_bipoly(f);
    let full = bi_total_degree(&bp) == Some(f.degree());
    if !full {
        return (false, false, bp);
    }
    let factors = factor_bipoly(&bp);
    let squarefree = factors.iter().all(|(_, m)| *m == 1);
    let irreducible = factors.len() == 1 && factors[0].1 == 1;
    (squarefree, irreducible, bp)
}

fn modp_probes(bp: &BiPoly, seed: u64) -> Vec<(u64, Option<bool>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bd1_e995);
    let mut out = Vec::new();
    let mut used: Vec<u64> = Vec::new();
    while out.len() < 3 {
        let p = zmodp::next_prime(&BigInt::from(rng.gen_range(101..=997u64)));
        let p_u: u64 = p.to_string().parse().unwrap();
        if used.contains(&p_u) {
            continue;
        }
        used.push(p_u);
        out.push((p_u, is_irreducible_mod_p(bp, &p)));
    }
    out
}

/// Degree-(k-1) integral curve containing the degree-k scheme Z, found
/// by seeded draws from the linear system |I_Z(k-1)|. Containment is
/// re-verified exactly against the condition matrix.
pub fn curve_through_scheme(z: &PlaneScheme, seed: u64, budget: usize) -> Result<CurveReport> {
    let k = z.degree();
    if k < 4 {
        return Err(Error::OutOfRange(format!(
            "curve construction needs scheme degree >= 4, got {k}"
        )));
    }
    if line_containment(z)?.is_some() {
        return Err(Error::ContainedInLine);
    }
    let rep = h0_ideal(z, k - 1)?;
    let s = rep.h0;
    if s == 0 {
        return Err(Error::Malformed("empty linear system at degree k-1".into()));
    }
    let rows = Mat::from_rows(condition_rows(z, k - 1));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = 0usize;
    let candidate = |coeffs: &[Rat], attempts: usize| -> Option<CurveReport> {
        let mut f = Form::zero(3, k - 1);
        for (c, b) in coeffs.iter().zip(&rep.basis) {
            if !c.is_zero() {
                f = f.add(&b.scale(c)).expect("matching shapes");
            }
        }
        if f.is_zero() {
            return None;
        }
        let residual = rows.mul_vec(&f.raw_vector()).expect("matching shapes");
        assert!(residual.iter().all(Rat::is_zero), "kernel combo must vanish on Z");
        let (squarefree, irreducible, bp) = integrality(&f);
        if !(squarefree && irreducible) {
            return None;
        }
        let probes = modp_probes(&bp, seed);
        let conclusive: Vec<bool> = probes.iter().filter_map(|(_, r)| *r).collect();
        let heuristic = !conclusive.is_empty() && conclusive.iter().all(|&b| b);
        Some(CurveReport {
            curve: f,
            degree: k - 1,
            attempts,
            rational_irreducible: true,
            squarefree: true,
            modp_probes: probes,
            absolutely_irreducible_heuristic: heuristic,
        })
    };
    // basis members first, then random small-integer combinations
    for i in 0..s {
        if attempts >= budget {
            break;
        }
        attempts += 1;
        let mut coeffs = vec![Rat::zero(); s];
        coeffs[i] = Rat::one();
        if let Some(rep) = candidate(&coeffs, attempts) {
            return Ok(rep);
        }
    }
    while attempts < budget {
        attempts += 1;
        let coeffs: Vec<Rat> = (0..s).map(|_| rat_i64(rng.gen_range(-4..=4))).collect();
        if let Some(rep) = candidate(&coeffs, attempts) {
            return Ok(rep);
        }
    }
    Err(Error::BudgetExhausted(format!(
        "no integral member found in {budget} draws from a dimension-{s} system"
    )))
}

/// Spot-check report for the two genericity claims behind the curve
/// construction: adding a general point drops h0 by one, and adding a
/// general tangent vector makes the condition matrix full rank.
#[derive(Debug, Clone)]
pub struct ClaimReport {
    pub trials: usize,
    pub claim1_pass: usize,
    pub claim2_pass: usize,
    /// Sample points discarded for lying on a line D with
    /// deg(D cap Z) >= k-1, per the finitely-many-bad-lines argument.
    pub claim2_skipped: usize,
    pub excluded_lines: usize,
    pub failures: Vec<String>,
}

impl ClaimReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
            && self.claim1_pass == self.trials
            && self.claim2_pass == self.trials
    }

    pub fn to_json(&self) -> Value {
        json!({
            "trials": self.trials,
            "claim1_pass": self.claim1_pass,
            "claim2_pass": self.claim2_pass,
            "claim2_skipped": self.claim2_skipped,
            "excluded_lines": self.excluded_lines,
            "failures": self.failures,
            "ok": self.ok(),
        })
    }
}

fn cross(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Intersection degree of the line `l` (coefficient vector) with Z.
fn line_scheme_degree(l: &[Rat], z: &PlaneScheme) -> usize {
    let mut total = 0;
    for comp in z.components() {
        match comp {
            PlaneComponent::Jet(c) => {
                // order of vanishing of l(gamma(t)) at t, capped at e
                let coords: Vec<UniPoly> =
                    c.curve.coords().iter().map(|b| b.dehomogenize()).collect();
                let mut g: UniPoly = vec![];
                for (li, ci) in l.iter().zip(&coords) {
                    g = unipoly::add(&g, &unipoly::scale(ci, li));
                }
                let mut ord = 0;
                while ord < c.e && unipoly::eval(&g, &c.t).is_zero() {
                    ord += 1;
                    g = unipoly::derivative(&g);
                }
                total += ord;
            }
            PlaneComponent::FatPoint { point } => {
                if dot(l, point).is_zero() {
                    total += 2;
                }
            }
        }
    }
    total
}

/// Lines that can defeat the full-rank check: through two supports, or
/// tangent to a jet of order >= 2, kept when deg(D cap Z) >= k-1.
fn bad_lines(z: &PlaneScheme, k: usize) -> Vec<Vec<Rat>> {
    let supports = z.supports();
    let mut candidates = Vec::new();
    for i in 0..supports.len() {
        for j in (i + 1)..supports.len() {
            candidates.push(cross(&supports[i], &supports[j]));
        }
    }
    for comp in z.components() {
        if let PlaneComponent::Jet(c) = comp {
            if c.e >= 2 {
                let jets = c.curve.jet_columns(&c.t, 2);
                candidates.push(cross(&jets[0], &jets[1]));
            }
        }
    }
    candidates
        .into_iter()
        .filter(|l| !l.iter().all(Rat::is_zero) && line_scheme_degree(l, z) >= k - 1)
        .collect()
}

pub fn claim_checks(z: &PlaneScheme, trials: usize, seed: u64) -> Result<ClaimReport> {
    let k = z.degree();
    if k < 4 {
        return Err(Error::OutOfRange(format!(
            "claim checks need scheme degree >= 4, got {k}"
        )));
    }
    if line_containment(z)?.is_some() {
        return Err(Error::ContainedInLine);
    }
    let m = k - 1;
    let mo = MonomialOrder::new(3, m);
    let base_rows = condition_rows(z, m);
    let base_h0 = mo.len() - Mat::from_rows(base_rows.clone()).rank();
    let supports = z.supports();
    let excluded = bad_lines(z, k);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ClaimReport {
        trials,
        claim1_pass: 0,
        claim2_pass: 0,
        claim2_skipped: 0,
        excluded_lines: excluded.len(),
        failures: Vec::new(),
    };
    let draw_point = |rng: &mut ChaCha8Rng| -> Vec<Rat> {
        loop {
            let q: Vec<Rat> = (0..3).map(|_| rat_i64(rng.gen_range(-9..=9))).collect();
            if q.iter().all(Rat::is_zero) {
                continue;
            }
            if supports.iter().any(|s| proportional(s, &q)) {
                continue;
            }
            return q;
        }
    };

    // Claim 1: a general extra point drops h0 by exactly one
    for _ in 0..trials {
        let q = draw_point(&mut rng);
        let mut rows = base_rows.clone();
        rows.push(mo.exponents().iter().map(|e| monomial_value(e, &q)).collect());
        let h0 = mo.len() - Mat::from_rows(rows).rank();
        if h0 == base_h0 - 1 {
            report.claim1_pass += 1;
        } else {
            report.failures.push(format!(
                "claim 1: h0 {h0} (expected {}) at point {:?}",
                base_h0 - 1,
                q.iter().map(rat_to_string).collect::<Vec<_>>()
            ));
        }
    }

    // Claim 2: a general tangent vector makes the conditions full rank
    for _ in 0..trials {
        let (q, v) = loop {
            let q = draw_point(&mut rng);
            if excluded.iter().any(|l| dot(l, &q).is_zero()) {
                report.claim2_skipped += 1;
                continue;
            }
            let v: Vec<Rat> = (0..3).map(|_| rat_i64(rng.gen_range(-9..=9))).collect();
            if proportional(&q, &v) || v.iter().all(Rat::is_zero) {
                continue;
            }
            break (q, v);
        };
        let mut rows = base_rows.clone();
        rows.push(mo.exponents().iter().map(|e| monomial_value(e, &q)).collect());
        let mut dir = vec![Rat::zero(); mo.len()];
        for var in 0..3 {
            if v[var].is_zero() {
                continue;
            }
            for (acc, x) in dir.iter_mut().zip(partial_row(&mo, var, &q)) {
                *acc += &v[var] * &x;
            }
        }
        rows.push(dir);
        let rank = Mat::from_rows(rows).rank();
        if rank == k + 2 {
            report.claim2_pass += 1;
        } else {
            report.failures.push(format!(
                "claim 2: rank {rank} (expected {}) at point {:?}",
                k + 2,
                q.iter().map(rat_to_string).collect::<Vec<_>>()
            ));
        }
    }
    Ok(report)
}

/// Outcome of the degree-3 dichotomy: a smooth conic through Z, or the
/// certificate that Z is a double point and every conic through it is
/// a union of lines.
#[derive(Debug, Clone)]
pub enum ConicVerdict {
    Smooth(Form),
    NoSmoothConic { fat_point: Vec<Rat> },
}

impl ConicVerdict {
    pub fn to_json(&self) -> Value {
        match self {
            ConicVerdict::Smooth(f) => json!({"smooth_conic": f.to_json()}),
            ConicVerdict::NoSmoothConic { fat_point } => json!({
                "smooth_conic": Value::Null,
                "fat_point": fat_point.iter().map(rat_to_string).collect::<Vec<_>>(),
            }),
        }
    }
}

/// Symmetric coefficient matrix of a conic; smooth iff rank 3.
fn conic_matrix(f: &Form) -> Mat {
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let c = |a: u32, b: u32, cc: u32| f.coeff(&[a, b, cc]);
    Mat::from_rows(vec![
        vec![c(2, 0, 0), &half * c(1, 1, 0), &half * c(1, 0, 1)],
        vec![&half * c(1, 1, 0), c(0, 2, 0), &half * c(0, 1, 1)],
        vec![&half * c(1, 0, 1), &half * c(0, 1, 1), c(0, 0, 2)],
    ])
}

pub fn conic_dichotomy(z: &PlaneScheme) -> Result<ConicVerdict> {
    if z.degree() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "conic dichotomy needs a degree-3 scheme, got degree {}",
            z.degree()
        )));
    }
    let rep = h0_ideal(z, 2)?;
    let s = rep.h0;
    // det of a combination is a cubic in the s coefficients, so if it
    // vanishes on the whole {0..3}^s grid it is identically zero
    let mut lambda = vec![0u8; s];
    loop {
        if lambda.iter().any(|&x| x != 0) {
            let mut f = Form::zero(3, 2);
            for (l, b) in lambda.iter().zip(&rep.basis) {
                if *l != 0 {
                    f = f.add(&b.scale(&rat_i64(*l as i64)))?;
                }
            }
            if conic_matrix(&f).rank() == 3 {
                return Ok(ConicVerdict::Smooth(f));
            }
        }
        let mut i = 0;
        loop {
            if i == s {
                // exhausted: no smooth member exists
                let fat = z.components().iter().find_map(|c| match c {
                    PlaneComponent::FatPoint { point } => Some(point.clone()),
                    PlaneComponent::Jet(_) => None,
                });
                return match (z.components().len(), fat) {
                    (1, Some(point)) => Ok(ConicVerdict::NoSmoothConic { fat_point: point }),
                    _ => Err(Error::Malformed(
                        "no smooth conic through a scheme that is not a double point".into(),
                    )),
                };
            }
            if lambda[i] < 3 {
                lambda[i] += 1;
                break;
            }
            lambda[i] = 0;
            i += 1;
        }
    }
}

/// Span-dimension bound for the Veronese image of an integral plane
/// curve of degree k-1, with a cross-check against an actual curve.
#[derive(Debug, Clone)]
pub struct PropReport {
    pub d: usize,
    pub k: usize,
    pub span_dim: usize,
    pub bound: usize,
    pub ok: bool,
    pub crosscheck_ok: bool,
}

impl PropReport {
    pub fn to_json(&self) -> Value {
        json!({
            "d": self.d,
            "k": self.k,
            "span_dim": self.span_dim,
            "bound": self.bound,
            "ok": self.ok,
            "crosscheck_ok": self.crosscheck_ok,
        })
    }
}

fn binom_usize(n: u64, k: u64) -> usize {
    binomial(n, k).to_string().parse().unwrap()
}

pub fn span_bound_report(d: usize, k: usize) -> Result<PropReport> {
    if k < 2 || d < k {
        return Err(Error::OutOfRange(format!(
            "span bound needs d >= k >= 2, got d = {d}, k = {k}"
        )));
    }
    let n_amb = binom_usize((d + 2) as u64, 2);
    let mult = binom_usize((d - k + 3) as u64, 2);
    let span_dim = n_amb - 1 - mult;
    let bound = d * (k - 1);
    // cross-check on a concrete smooth curve: degree-d forms vanishing
    // on it are exactly the multiples of its equation
    let mut c = Form::zero(3, k - 1);
    for var in 0..3 {
        let mut e = vec![0u32; 3];
        e[var] = (k - 1) as u32;
        c = c.add(&Form::monomial(3, e))?;
    }
    let mo_mult = MonomialOrder::new(3, d - k + 1);
    let cols: Vec<Vec<Rat>> = mo_mult
        .exponents()
        .iter()
        .map(|e| {
            let g = Form::monomial(3, e.clone()).mul(&c).expect("matching nvars");
            g.raw_vector()
        })
        .collect::<Vec<_>>();
    let h0 = Mat::from_cols(cols).rank();
    let crosscheck_ok = h0 == mult && span_dim == n_amb - 1 - h0;
    Ok(PropReport { d, k, span_dim, bound, ok: span_dim <= bound, crosscheck_ok })
}
