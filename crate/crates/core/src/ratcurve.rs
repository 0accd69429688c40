//! Parametrized rational curves and their Veronese composition.
//!
//! Coordinates are binary forms of a common degree in coprime
//! representation; the affine chart is `t -> [p_0(t) : ... : p_n(t)]`.
//! The curve-fitting, projection-lifting and decomposition pipeline
//! built on these types lives in `pipeline`.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::binpoly::BinaryPoly;
use crate::error::{Error, Result};
use crate::forms::MonomialOrder;
use crate::mat::Mat;
use crate::rat::{rat_from_str, rat_to_string, Rat};
use crate::unipoly::{self, UniPoly};

/// Nonconstant rational map to projective space with coprime coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalCurveParam {
    coords: Vec<BinaryPoly>,
}

impl RationalCurveParam {
    /// Validates, reduces to coprime coordinates, rejects constant maps.
    pub fn new(coords: Vec<BinaryPoly>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::Malformed("curve needs at least 2 coordinates".into()));
        }
        let deg = coords[0].degree();
        if coords.iter().any(|c| c.degree() != deg) {
            return Err(Error::DimensionMismatch(
                "curve coordinates must share a common degree".into(),
            ));
        }
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Malformed("all curve coordinates are zero".into()));
        }
        let mut g: Option<BinaryPoly> = None;
        for c in &coords {
            g = Some(match g {
                None => c.clone(),
                Some(acc) => acc.gcd(c),
            });
        }
        let g = g.unwrap();
        let coords: Vec<BinaryPoly> = if g.degree() > 0 {
            coords
                .iter()
                .map(|c| c.div_exact(&g).expect("gcd divides every coordinate"))
                .collect()
        } else {
            coords
        };
        let m = Mat::from_rows(coords.iter().map(|c| c.coeffs().to_vec()).collect());
        if m.rank() < 2 {
            return Err(Error::Malformed("constant parametrization".into()));
        }
        Ok(RationalCurveParam { coords })
    }

    /// Common coordinate degree after gcd reduction.
    pub fn degree(&self) -> usize {
        self.coords[0].degree()
    }

    /// n for a curve in P^n.
    pub fn ambient_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[BinaryPoly] {
        &self.coords
    }

    /// Homogeneous evaluation at `[alpha : beta]`.
    pub fn eval(&self, alpha: &Rat, beta: &Rat) -> Vec<Rat> {
        self.coords.iter().map(|c| c.eval(alpha, beta)).collect()
    }

    /// Evaluation in the affine chart `[1 : t]`.
    pub fn eval_affine(&self, t: &Rat) -> Vec<Rat> {
        self.coords.iter().map(|c| c.eval_affine(t)).collect()
    }

    /// Derivative columns in the affine chart: orders `0..e` at `t`.
    pub fn jet_columns(&self, t: &Rat, e: usize) -> Vec<Vec<Rat>> {
        let mut polys: Vec<UniPoly> = self.coords.iter().map(|c| c.dehomogenize()).collect();
        let mut out = Vec::with_capacity(e);
        for _ in 0..e {
            out.push(polys.iter().map(|p| unipoly::eval(p, t)).collect());
            polys = polys.iter().map(|p| unipoly::derivative(p)).collect();
        }
        out
    }

    /// Reparametrization `t -> t + a`.
    pub fn shift(&self, a: &Rat) -> RationalCurveParam {
        RationalCurveParam { coords: self.coords.iter().map(|c| c.shift_param(a)).collect() }
    }

    pub fn to_json(&self) -> Value {
        json!(self
            .coords
            .iter()
            .map(|c| c.coeffs().iter().map(rat_to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>())
    }

    pub fn from_json(v: &Value) -> Result<RationalCurveParam> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Malformed("curve: not an array".into()))?;
        let mut coords = Vec::new();
        let mut deg: Option<usize> = None;
        for coord in arr {
            let cs = coord
                .as_array()
                .ok_or_else(|| Error::Malformed("curve: coordinate not an array".into()))?;
            if cs.is_empty() {
                return Err(Error::Malformed("curve: empty coordinate".into()));
            }
            let d = cs.len() - 1;
            if *deg.get_or_insert(d) != d {
                return Err(Error::DimensionMismatch(
                    "curve: coordinates of unequal degree".into(),
                ));
            }
            let coeffs = cs
                .iter()
                .map(|c| {
                    c.as_str()
                        .ok_or_else(|| Error::Malformed("curve: coefficient not a string".into()))
                        .and_then(rat_from_str)
                })
                .collect::<Result<Vec<_>>>()?;
            coords.push(BinaryPoly::new(d, coeffs)?);
        }
        RationalCurveParam::new(coords)
    }
}

/// The standard rational normal curve `[1 : t : ... : t^m]` of degree m.
pub fn standard_rnc(m: usize) -> RationalCurveParam {
    assert!(m >= 1);
    let coords = (0..=m)
        .map(|i| {
            let mut coeffs = vec![Rat::zero(); m + 1];
            coeffs[i] = Rat::one();
            BinaryPoly::new(m, coeffs).expect("consistent shape")
        })
        .collect();
    RationalCurveParam { coords }
}

/// Composition with the degree-d Veronese map: coordinates are all
/// degree-d monomials of the input coordinates, gcd-reduced.
pub fn veronese_curve(t: &RationalCurveParam, d: usize) -> Result<RationalCurveParam> {
    assert!(d >= 1);
    let mo = MonomialOrder::new(t.coords.len(), d);
    let coords: Vec<BinaryPoly> = mo
        .exponents()
        .iter()
        .map(|e| {
            let mut acc = BinaryPoly::constant(Rat::one());
            for (c, &k) in t.coords.iter().zip(e) {
                for _ in 0..k {
                    acc = acc.mul(c);
                }
            }
            // zero products may come out at the wrong formal degree
            if acc.degree() != d * t.degree() {
                BinaryPoly::zero(d * t.degree())
            } else {
                acc
            }
        })
        .collect();
    RationalCurveParam::new(coords)
}
