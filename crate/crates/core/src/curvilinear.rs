//! Curvilinear schemes: unions of jets at smooth points of parametrized
//! rational curves, their jet matrices, span membership, and the
//! minimality reduction used by the decomposition pipeline.

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::forms::Form;
use crate::mat::Mat;
use crate::rat::{rat_from_str, rat_to_string, Rat};
use crate::ratcurve::{veronese_curve, RationalCurveParam};

/// A length-e jet at a smooth point `curve(t)` of the parametrization.
#[derive(Debug, Clone)]
pub struct SchemeComponent {
    pub curve: RationalCurveParam,
    pub t: Rat,
    pub e: usize,
}

impl SchemeComponent {
    pub fn new(curve: RationalCurveParam, t: Rat, e: usize) -> Result<Self> {
        if e == 0 {
            return Err(Error::OutOfRange("jet length e must be >= 1".into()));
        }
        let jets = curve.jet_columns(&t, 2);
        if jets[1].iter().all(|c| c.is_zero()) {
            return Err(Error::NotImmersion(format!(
                "derivative vector vanishes at t = {}",
                rat_to_string(&t)
            )));
        }
        if Mat::from_cols(vec![jets[0].clone(), jets[1].clone()]).rank() < 2 {
            return Err(Error::NotImmersion(format!(
                "tangent vector is not independent of the point at t = {}",
                rat_to_string(&t)
            )));
        }
        Ok(SchemeComponent { curve, t, e })
    }

    /// Support point, in the affine chart.
    pub fn support(&self) -> Vec<Rat> {
        self.curve.eval_affine(&self.t)
    }
}

/// Nonempty union of jets with pairwise distinct supports.
#[derive(Debug, Clone)]
pub struct CurvilinearScheme {
    components: Vec<SchemeComponent>,
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

impl CurvilinearScheme {
    pub fn new(components: Vec<SchemeComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Malformed("scheme needs at least one component".into()));
        }
        let nvars = components[0].curve.coords().len();
        if components.iter().any(|c| c.curve.coords().len() != nvars) {
            return Err(Error::DimensionMismatch(
                "components live in different ambient spaces".into(),
            ));
        }
        for i in 0..components.len() {
            for j in (i + 1)..components.len() {
                if proportional(&components[i].support(), &components[j].support()) {
                    return Err(Error::CoincidentSupport(format!(
                        "components {i} and {j} share a support point"
                    )));
                }
            }
        }
        Ok(CurvilinearScheme { components })
    }

    pub fn components(&self) -> &[SchemeComponent] {
        &self.components
    }

    pub fn into_components(self) -> Vec<SchemeComponent> {
        self.components
    }

    /// Total degree `sum e_i`.
    pub fn degree(&self) -> usize {
        self.components.iter().map(|c| c.e).sum()
    }

    /// Ambient variable count n+1.
    pub fn nvars(&self) -> usize {
        self.components[0].curve.coords().len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nvars": self.nvars(),
            "components": self
                .components
                .iter()
                .map(|c| json!({
                    "curve": c.curve.to_json(),
                    "t": rat_to_string(&c.t),
                    "e": c.e,
                }))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<CurvilinearScheme> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Malformed("scheme: not an object".into()))?;
        let nvars = obj
            .get("nvars")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Malformed("scheme: missing nvars".into()))? as usize;
        let comps = obj
            .get("components")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("scheme: missing components".into()))?;
        let mut out = Vec::new();
        for c in comps {
            let cobj = c
                .as_object()
                .ok_or_else(|| Error::Malformed("scheme: component not an object".into()))?;
            let curve = RationalCurveParam::from_json(
                cobj.get("curve")
                    .ok_or_else(|| Error::Malformed("scheme: missing curve".into()))?,
            )?;
            if curve.coords().len() != nvars {
                return Err(Error::DimensionMismatch(
                    "scheme: curve does not match nvars".into(),
                ));
            }
            let t = rat_from_str(
                cobj.get("t")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::Malformed("scheme: missing t".into()))?,
            )?;
            let e = cobj
                .get("e")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Malformed("scheme: missing e".into()))?
                as usize;
            out.push(SchemeComponent::new(curve, t, e)?);
        }
        CurvilinearScheme::new(out)
    }
}

/// Jet columns grouped by component; column count = scheme degree.
#[derive(Debug, Clone)]
pub struct JetMatrix {
    pub mat: Mat,
    pub group_sizes: Vec<usize>,
}

/// Jet matrix of the scheme in its own ambient space.
pub fn jet_matrix(z: &CurvilinearScheme) -> JetMatrix {
    let mut cols = Vec::new();
    let mut group_sizes = Vec::new();
    for c in z.components() {
        let jets = c.curve.jet_columns(&c.t, c.e);
        group_sizes.push(jets.len());
        cols.extend(jets);
    }
    JetMatrix { mat: Mat::from_cols(cols), group_sizes }
}

/// Jet matrix of the Veronese image: columns are derivatives of
/// `veronese_curve(curve_i, d)` at `t_i` up to order `e_i - 1`.
pub fn veronese_jet_matrix(z: &CurvilinearScheme, d: usize) -> Result<JetMatrix> {
    let mut cols = Vec::new();
    let mut group_sizes = Vec::new();
    for c in z.components() {
        let vc = veronese_curve(&c.curve, d)?;
        let jets = vc.jet_columns(&c.t, c.e);
        group_sizes.push(jets.len());
        cols.extend(jets);
    }
    Ok(JetMatrix { mat: Mat::from_cols(cols), group_sizes })
}

/// Membership of a vector in the column span; exact coefficients on hit.
pub fn span_contains(m: &JetMatrix, v: &[Rat]) -> Result<Option<Vec<Rat>>> {
    m.mat.solve(v)
}

/// Membership of a form, via its divided coefficient vector.
pub fn form_in_span(m: &JetMatrix, p: &Form) -> Result<Option<Vec<Rat>>> {
    span_contains(m, &p.divided_vector())
}

/// Shrinks `Z` until no single-step reduction (dropping one from some
/// `e_i`) keeps `P` in the span of the Veronese jets. Components are
/// swept in order of decreasing `e`, re-testing after each success.
pub fn minimality_reduce(
    z: &CurvilinearScheme,
    p: &Form,
    d: usize,
) -> Result<CurvilinearScheme> {
    let v = p.divided_vector();
    if span_contains(&veronese_jet_matrix(z, d)?, &v)?.is_none() {
        return Err(Error::NotInSpan);
    }
    let mut comps = z.components().to_vec();
    'outer: loop {
        let mut order: Vec<usize> = (0..comps.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(comps[i].e));
        for &i in &order {
            if comps.len() == 1 && comps[i].e == 1 {
                continue;
            }
            let mut cand = comps.clone();
            if cand[i].e == 1 {
                cand.remove(i);
            } else {
                cand[i].e -= 1;
            }
            let zc = CurvilinearScheme::new(cand)?;
            if span_contains(&veronese_jet_matrix(&zc, d)?, &v)?.is_some() {
                comps = zc.into_components();
                continue 'outer;
            }
        }
        break;
    }
    CurvilinearScheme::new(comps)
}
