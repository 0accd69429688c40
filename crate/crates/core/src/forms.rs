//! Homogeneous forms in n+1 variables: monomial indexing, the Veronese
//! map on points, power-sum expansion, and the binary catalecticant.
//!
//! Two coefficient conventions coexist. The *raw* vector of a form lists
//! plain coefficients in monomial order; the *divided* vector divides
//! each by its multinomial coefficient. Divided vectors are the ambient
//! projective coordinates of a form: with plain-monomial Veronese
//! coordinates, the divided vector of `(p.x)^d` equals `veronese_point(p)`
//! exactly, so every span computation in this crate uses divided vectors.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rug::Float;
use serde_json::{json, Value};

use crate::complex::{float_from_rat, BigComplex, MIN_PRECISION};
use crate::error::{Error, Result};
use crate::mat::Mat;
use crate::rat::{binomial, max_norm, multinomial, rat_from_str, rat_to_string, Rat};

/// All exponent tuples of the given degree, graded-lex with `x_0` largest.
#[derive(Debug, Clone)]
pub struct MonomialOrder {
    nvars: usize,
    degree: usize,
    exps: Vec<Vec<u32>>,
}

impl MonomialOrder {
    pub fn new(nvars: usize, degree: usize) -> Self {
        assert!(nvars >= 1);
        let mut exps = Vec::new();
        let mut cur = vec![0u32; nvars];
        gen_exps(0, degree as u32, &mut cur, &mut exps);
        MonomialOrder { nvars, degree, exps }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exps
    }
}

fn gen_exps(i: usize, rem: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if i + 1 == cur.len() {
        cur[i] = rem;
        out.push(cur.clone());
        cur[i] = 0;
        return;
    }
    for e in (0..=rem).rev() {
        cur[i] = e;
        gen_exps(i + 1, rem - e, cur, out);
    }
    cur[i] = 0;
}

/// Homogeneous form; zero coefficients are not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Form {
    nvars: usize,
    degree: usize,
    coeffs: BTreeMap<Vec<u32>, Rat>,
}

impl Form {
    pub fn new(
        nvars: usize,
        degree: usize,
        terms: impl IntoIterator<Item = (Vec<u32>, Rat)>,
    ) -> Result<Self> {
        if nvars < 2 {
            return Err(Error::Malformed(format!("need at least 2 variables, got {nvars}")));
        }
        let mut coeffs: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::Malformed(format!(
                    "exponent tuple {e:?} has length {}, expected {nvars}",
                    e.len()
                )));
            }
            if e.iter().map(|&x| x as usize).sum::<usize>() != degree {
                return Err(Error::Malformed(format!(
                    "exponent tuple {e:?} does not sum to degree {degree}"
                )));
            }
            *coeffs.entry(e).or_insert_with(Rat::zero) += c;
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Form { nvars, degree, coeffs })
    }

    pub fn zero(nvars: usize, degree: usize) -> Self {
        Form { nvars, degree, coeffs: BTreeMap::new() }
    }

    pub fn monomial(nvars: usize, exps: Vec<u32>) -> Self {
        let degree = exps.iter().map(|&x| x as usize).sum();
        Form::new(nvars, degree, [(exps, Rat::one())]).expect("well-formed monomial")
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.coeffs.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    /// Terms in graded-lex order (`x_0` largest).
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rat)> {
        self.coeffs.iter().rev()
    }

    pub fn add(&self, other: &Form) -> Result<Form> {
        self.check_shape(other)?;
        let mut out = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            *out.entry(e.clone()).or_insert_with(Rat::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        Ok(Form { nvars: self.nvars, degree: self.degree, coeffs: out })
    }

    pub fn sub(&self, other: &Form) -> Result<Form> {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Form {
        if s.is_zero() {
            return Form::zero(self.nvars, self.degree);
        }
        Form {
            nvars: self.nvars,
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|(e, c)| (e.clone(), c * s)).collect(),
        }
    }

    pub fn mul(&self, other: &Form) -> Result<Form> {
        if self.nvars != other.nvars {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply forms in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        let mut coeffs: BTreeMap<Vec<u32>, Rat> = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *coeffs.entry(e).or_insert_with(Rat::zero) += c1 * c2;
            }
        }
        coeffs.retain(|_, c| !c.is_zero());
        Ok(Form { nvars: self.nvars, degree: self.degree + other.degree, coeffs })
    }

    pub fn eval(&self, p: &[Rat]) -> Result<Rat> {
        if p.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "point has {} coordinates, form has {} variables",
                p.len(),
                self.nvars
            )));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.coeffs {
            let mut m = c.clone();
            for (x, &k) in p.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            acc += m;
        }
        Ok(acc)
    }

    /// Plain coefficients in monomial order; length `binomial(n+d, d)`.
    pub fn raw_vector(&self) -> Vec<Rat> {
        MonomialOrder::new(self.nvars, self.degree)
            .exponents()
            .iter()
            .map(|e| self.coeff(e))
            .collect()
    }

    /// Ambient projective coordinates: each raw coefficient divided by
    /// its multinomial coefficient.
    pub fn divided_vector(&self) -> Vec<Rat> {
        MonomialOrder::new(self.nvars, self.degree)
            .exponents()
            .iter()
            .map(|e| {
                let m = multinomial(self.degree as u64, e);
                self.coeff(e) / Rat::from_integer(m)
            })
            .collect()
    }

    pub fn from_raw_vector(nvars: usize, degree: usize, v: &[Rat]) -> Result<Form> {
        let mo = MonomialOrder::new(nvars, degree);
        if v.len() != mo.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} does not match {} monomials",
                v.len(),
                mo.len()
            )));
        }
        Form::new(
            nvars,
            degree,
            mo.exponents().iter().cloned().zip(v.iter().cloned()),
        )
    }

    pub fn from_divided_vector(nvars: usize, degree: usize, v: &[Rat]) -> Result<Form> {
        let mo = MonomialOrder::new(nvars, degree);
        if v.len() != mo.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} does not match {} monomials",
                v.len(),
                mo.len()
            )));
        }
        Form::new(
            nvars,
            degree,
            mo.exponents().iter().zip(v).map(|(e, c)| {
                (e.clone(), c * Rat::from_integer(multinomial(degree as u64, e)))
            }),
        )
    }

    pub fn max_norm(&self) -> Rat {
        max_norm(&self.coeffs.values().cloned().collect::<Vec<_>>())
    }

    fn check_shape(&self, other: &Form) -> Result<()> {
        if self.nvars != other.nvars || self.degree != other.degree {
            return Err(Error::DimensionMismatch(format!(
                "form shapes ({}, {}) vs ({}, {})",
                self.nvars, self.degree, other.nvars, other.degree
            )));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms()
            .map(|(e, c)| json!([e, rat_to_string(c)]))
            .collect();
        json!({ "nvars": self.nvars, "degree": self.degree, "terms": terms })
    }

    pub fn from_json(v: &Value) -> Result<Form> {
        let obj = v.as_object().ok_or_else(|| Error::Malformed("form: not an object".into()))?;
        let nvars = obj
            .get("nvars")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Malformed("form: missing nvars".into()))? as usize;
        let degree = obj
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Malformed("form: missing degree".into()))? as usize;
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("form: missing terms".into()))?;
        let mut parsed = Vec::new();
        for t in terms {
            let pair = t
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Malformed("form: term is not a pair".into()))?;
            let exps: Vec<u32> = pair[0]
                .as_array()
                .ok_or_else(|| Error::Malformed("form: exponents not a list".into()))?
                .iter()
                .map(|x| {
                    x.as_u64()
                        .map(|v| v as u32)
                        .ok_or_else(|| Error::Malformed("form: bad exponent".into()))
                })
                .collect::<Result<_>>()?;
            let coeff = rat_from_str(
                pair[1]
                    .as_str()
                    .ok_or_else(|| Error::Malformed("form: coefficient not a string".into()))?,
            )?;
            parsed.push((exps, coeff));
        }
        Form::new(nvars, degree, parsed)
    }
}

/// Scalar coefficient of a decomposition term.
#[derive(Debug, Clone)]
pub enum Scalar {
    Exact(Rat),
    Numeric(BigComplex),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(r) => r.is_zero(),
            Scalar::Numeric(z) => z.is_zero(),
        }
    }
}

/// Nonzero linear form, exact or numeric coefficients.
#[derive(Debug, Clone)]
pub enum LinearForm {
    Exact(Vec<Rat>),
    Numeric(Vec<BigComplex>),
}

impl LinearForm {
    pub fn nvars(&self) -> usize {
        match self {
            LinearForm::Exact(v) => v.len(),
            LinearForm::Numeric(v) => v.len(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            LinearForm::Exact(v) => v.iter().all(|c| c.is_zero()),
            LinearForm::Numeric(v) => v.iter().all(|c| c.is_zero()),
        }
    }
}

#[derive(Debug, Clone)]
pub struct DecompTerm {
    pub coeff: Scalar,
    pub linear: LinearForm,
}

/// Power-sum decomposition `P = sum coeff_j (linear_j)^degree`.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub degree: usize,
    pub terms: Vec<DecompTerm>,
    pub exact: bool,
}

impl Decomposition {
    pub fn new(degree: usize, terms: Vec<DecompTerm>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::Malformed("decomposition needs at least one term".into()));
        }
        let nvars = terms[0].linear.nvars();
        for t in &terms {
            if t.coeff.is_zero() {
                return Err(Error::Malformed("zero coefficient in decomposition".into()));
            }
            if t.linear.is_zero() {
                return Err(Error::Malformed("zero linear form in decomposition".into()));
            }
            if t.linear.nvars() != nvars {
                return Err(Error::DimensionMismatch(
                    "mixed variable counts in decomposition".into(),
                ));
            }
        }
        let exact = terms.iter().all(|t| {
            matches!(t.coeff, Scalar::Exact(_)) && matches!(t.linear, LinearForm::Exact(_))
        });
        Ok(Decomposition { degree, terms, exact })
    }

    pub fn nvars(&self) -> usize {
        self.terms[0].linear.nvars()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let float_str = |f: &Float| format!("{f}");
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|t| {
                let coeff = match &t.coeff {
                    Scalar::Exact(r) => json!(rat_to_string(r)),
                    Scalar::Numeric(z) => json!([float_str(&z.re), float_str(&z.im)]),
                };
                let linear = match &t.linear {
                    LinearForm::Exact(v) => {
                        json!(v.iter().map(rat_to_string).collect::<Vec<_>>())
                    }
                    LinearForm::Numeric(v) => json!(v
                        .iter()
                        .map(|z| json!([float_str(&z.re), float_str(&z.im)]))
                        .collect::<Vec<_>>()),
                };
                json!({ "coeff": coeff, "linear": linear })
            })
            .collect();
        json!({ "degree": self.degree, "terms": terms, "exact": self.exact })
    }

    pub fn from_json(v: &Value) -> Result<Decomposition> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::Malformed("decomposition: not an object".into()))?;
        let degree = obj
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or_else(|| Error::Malformed("decomposition: missing degree".into()))?
            as usize;
        let terms = obj
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Malformed("decomposition: missing terms".into()))?;
        let parse_float = |s: &str| -> Result<Float> {
            Float::parse(s)
                .map(|p| Float::with_val(256, p))
                .map_err(|_| Error::Malformed(format!("bad float `{s}`")))
        };
        let parse_scalar = |v: &Value| -> Result<Scalar> {
            match v {
                Value::String(s) => Ok(Scalar::Exact(rat_from_str(s)?)),
                Value::Array(a) if a.len() == 2 => {
                    let re = parse_float(a[0].as_str().unwrap_or_default())?;
                    let im = parse_float(a[1].as_str().unwrap_or_default())?;
                    Ok(Scalar::Numeric(BigComplex::new(re, im)))
                }
                _ => Err(Error::Malformed("decomposition: bad coefficient".into())),
            }
        };
        let mut out = Vec::new();
        for t in terms {
            let tobj = t
                .as_object()
                .ok_or_else(|| Error::Malformed("decomposition: term not an object".into()))?;
            let coeff = parse_scalar(
                tobj.get("coeff")
                    .ok_or_else(|| Error::Malformed("decomposition: missing coeff".into()))?,
            )?;
            let lin = tobj
                .get("linear")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Malformed("decomposition: missing linear".into()))?;
            let all_strings = lin.iter().all(Value::is_string);
            let linear = if all_strings {
                LinearForm::Exact(
                    lin.iter()
                        .map(|c| rat_from_str(c.as_str().unwrap()))
                        .collect::<Result<_>>()?,
                )
            } else {
                let mut v = Vec::new();
                for c in lin {
                    match parse_scalar(c)? {
                        Scalar::Numeric(z) => v.push(z),
                        Scalar::Exact(r) => v.push(BigComplex::from_rat(&r, 256)),
                    }
                }
                LinearForm::Numeric(v)
            };
            out.push(DecompTerm { coeff, linear });
        }
        Decomposition::new(degree, out)
    }
}

/// Numeric form: raw complex coefficients in monomial order.
#[derive(Debug, Clone)]
pub struct NumericForm {
    pub nvars: usize,
    pub degree: usize,
    pub coeffs: Vec<BigComplex>,
}

#[derive(Debug, Clone)]
pub enum ExpandedForm {
    Exact(Form),
    Numeric(NumericForm),
}

/// Expands `sum coeff_j (linear_j)^degree` in monomial order; exact when
/// every ingredient is rational.
pub fn expand_powersum(d: &Decomposition) -> Result<ExpandedForm> {
    let nvars = d.nvars();
    let mo = MonomialOrder::new(nvars, d.degree);
    if d.exact {
        let mut acc = vec![Rat::zero(); mo.len()];
        for t in &d.terms {
            let (lam, lin) = match (&t.coeff, &t.linear) {
                (Scalar::Exact(l), LinearForm::Exact(v)) => (l, v),
                _ => unreachable!("exact flag verified at construction"),
            };
            for (i, e) in mo.exponents().iter().enumerate() {
                let mut m = Rat::from_integer(multinomial(d.degree as u64, e));
                for (c, &k) in lin.iter().zip(e) {
                    for _ in 0..k {
                        m *= c;
                    }
                }
                acc[i] += lam * &m;
            }
        }
        Ok(ExpandedForm::Exact(Form::from_raw_vector(nvars, d.degree, &acc)?))
    } else {
        let prec = d
            .terms
            .iter()
            .flat_map(|t| {
                let c = match &t.coeff {
                    Scalar::Numeric(z) => Some(z.prec()),
                    Scalar::Exact(_) => None,
                };
                let l = match &t.linear {
                    LinearForm::Numeric(v) => v.first().map(|z| z.prec()),
                    LinearForm::Exact(_) => None,
                };
                [c, l].into_iter().flatten()
            })
            .max()
            .unwrap_or(MIN_PRECISION);
        let to_c = |s: &Scalar| match s {
            Scalar::Exact(r) => BigComplex::from_rat(r, prec),
            Scalar::Numeric(z) => z.with_prec(prec),
        };
        let mut acc = vec![BigComplex::zero(prec); mo.len()];
        for t in &d.terms {
            let lam = to_c(&t.coeff);
            let lin: Vec<BigComplex> = match &t.linear {
                LinearForm::Exact(v) => v.iter().map(|r| BigComplex::from_rat(r, prec)).collect(),
                LinearForm::Numeric(v) => v.iter().map(|z| z.with_prec(prec)).collect(),
            };
            for (i, e) in mo.exponents().iter().enumerate() {
                let mut m = BigComplex::from_rat(
                    &Rat::from_integer(multinomial(d.degree as u64, e)),
                    prec,
                );
                for (c, &k) in lin.iter().zip(e) {
                    for _ in 0..k {
                        m = m.mul(c);
                    }
                }
                acc[i] = acc[i].add(&lam.mul(&m));
            }
        }
        Ok(ExpandedForm::Numeric(NumericForm { nvars, degree: d.degree, coeffs: acc }))
    }
}

/// Residual of a verification, exact or numeric.
#[derive(Debug, Clone)]
pub enum Residual {
    Exact(Rat),
    Numeric(Float),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Exact(r) => r.is_zero(),
            Residual::Numeric(f) => f.is_zero(),
        }
    }

    /// True iff residual <= 2^e.
    pub fn within_pow2(&self, e: i32) -> bool {
        match self {
            Residual::Exact(r) => {
                let bound = if e >= 0 {
                    Rat::from_integer(num_bigint::BigInt::one() << e as usize)
                } else {
                    Rat::new(num_bigint::BigInt::one(), num_bigint::BigInt::one() << (-e) as usize)
                };
                r <= &bound
            }
            Residual::Numeric(f) => {
                let bound = Float::with_val(f.prec().max(MIN_PRECISION), 1) << e;
                *f <= bound
            }
        }
    }

    pub fn display(&self) -> String {
        match self {
            Residual::Exact(r) => rat_to_string(r),
            Residual::Numeric(f) => format!("{:.6e}", f.to_f64()),
        }
    }
}

/// Residual = max-norm of `P - expand(D)` after scaling `P` to unit
/// max-norm. `tol = None` demands an exactly zero residual (only
/// possible for exact decompositions); `tol = Some(e)` accepts residuals
/// up to `2^e`.
pub fn verify_decomposition(
    p: &Form,
    d: &Decomposition,
    tol: Option<i32>,
) -> Result<(bool, Residual)> {
    if p.degree() != d.degree || p.nvars() != d.nvars() {
        return Err(Error::DimensionMismatch(format!(
            "form ({}, {}) vs decomposition ({}, {})",
            p.nvars(),
            p.degree(),
            d.nvars(),
            d.degree
        )));
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let norm = p.max_norm();
    match expand_powersum(d)? {
        ExpandedForm::Exact(e) => {
            let diff = p.sub(&e)?;
            let residual = Residual::Exact(diff.max_norm() / &norm);
            let ok = match tol {
                None => residual.is_zero(),
                Some(t) => residual.within_pow2(t),
            };
            Ok((ok, residual))
        }
        ExpandedForm::Numeric(e) => {
            let prec = e.coeffs.first().map(|z| z.prec()).unwrap_or(MIN_PRECISION);
            let raw = p.raw_vector();
            let inv_norm = float_from_rat(&(Rat::one() / &norm), prec);
            let mut worst = Float::with_val(prec, 0);
            for (pc, ec) in raw.iter().zip(&e.coeffs) {
                let diff = BigComplex::from_rat(pc, prec).sub(ec).abs() * &inv_norm;
                if diff > worst {
                    worst = diff;
                }
            }
            let residual = Residual::Numeric(worst);
            let ok = match tol {
                None => residual.is_zero(),
                Some(t) => residual.within_pow2(t),
            };
            Ok((ok, residual))
        }
    }
}

/// Degree-d monomials of `p`, in monomial order.
pub fn veronese_point(p: &[Rat], d: usize) -> Result<Vec<Rat>> {
    if p.iter().all(|c| c.is_zero()) {
        return Err(Error::Malformed("veronese of the zero vector".into()));
    }
    let mo = MonomialOrder::new(p.len(), d);
    Ok(mo
        .exponents()
        .iter()
        .map(|e| {
            let mut m = Rat::one();
            for (x, &k) in p.iter().zip(e) {
                for _ in 0..k {
                    m *= x;
                }
            }
            m
        })
        .collect())
}

/// Binary form in divided coordinates: `F = sum binom(D,i) a_i x^(D-i) y^i`.
///
/// The divided vector of a binary `Form` equals its `a`, so a point of
/// the ambient `P^D` *is* its divided coefficient list; points of the
/// standard rational normal curve are exactly the pure powers
/// `a_i = alpha^(D-i) beta^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryFormDivided {
    a: Vec<Rat>,
}

impl BinaryFormDivided {
    pub fn new(a: Vec<Rat>) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::Malformed("empty coefficient list".into()));
        }
        Ok(BinaryFormDivided { a })
    }

    pub fn degree(&self) -> usize {
        self.a.len() - 1
    }

    pub fn a(&self) -> &[Rat] {
        &self.a
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|c| c.is_zero())
    }

    pub fn from_form(f: &Form) -> Result<Self> {
        if f.nvars() != 2 {
            return Err(Error::DimensionMismatch(format!(
                "expected a binary form, got {} variables",
                f.nvars()
            )));
        }
        BinaryFormDivided::new(f.divided_vector())
    }

    pub fn to_form(&self) -> Form {
        Form::from_divided_vector(2, self.degree(), &self.a).expect("consistent shape")
    }

    /// Raw coefficients `c_i = binom(D,i) a_i`, as a `BinaryPoly`.
    pub fn to_binary_poly(&self) -> crate::binpoly::BinaryPoly {
        let d = self.degree();
        let coeffs = self
            .a
            .iter()
            .enumerate()
            .map(|(i, a)| a * Rat::from_integer(binomial(d as u64, i as u64)))
            .collect();
        crate::binpoly::BinaryPoly::new(d, coeffs).expect("consistent shape")
    }

    pub fn from_binary_poly(g: &crate::binpoly::BinaryPoly) -> Self {
        let d = g.degree();
        let a = g
            .coeffs()
            .iter()
            .enumerate()
            .map(|(i, c)| c / Rat::from_integer(binomial(d as u64, i as u64)))
            .collect();
        BinaryFormDivided { a }
    }
}

/// Catalecticant of shape `(D-r+1) x (r+1)`, entry `[p][q] = a_(p+q)`.
pub fn catalecticant_binary(f: &BinaryFormDivided, r: usize) -> Result<Mat> {
    let d = f.degree();
    if r < 1 || r > d {
        return Err(Error::OutOfRange(format!(
            "catalecticant index {r} outside 1..={d}"
        )));
    }
    let rows = d - r + 1;
    let cols = r + 1;
    let mut m = Mat::zero(rows, cols);
    for p in 0..rows {
        for q in 0..cols {
            *m.at_mut(p, q) = f.a[p + q].clone();
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat::mat_kernel;
    use crate::rat::{rat, rat_i64};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn monomial_order_counts_and_order() {
        let mo = MonomialOrder::new(3, 2);
        assert_eq!(mo.len(), 6);
        assert_eq!(
            mo.exponents(),
            &[
                vec![2, 0, 0],
                vec![1, 1, 0],
                vec![1, 0, 1],
                vec![0, 2, 0],
                vec![0, 1, 1],
                vec![0, 0, 2]
            ]
        );
        assert_eq!(MonomialOrder::new(4, 3).len(), 20);
    }

    #[test]
    fn veronese_point_examples() {
        let p1 = veronese_point(&[rat_i64(1), rat_i64(1)], 2).unwrap();
        assert_eq!(p1, vec![rat_i64(1), rat_i64(1), rat_i64(1)]);
        let p2 = veronese_point(&[rat_i64(2), rat_i64(1)], 2).unwrap();
        assert_eq!(p2, vec![rat_i64(4), rat_i64(2), rat_i64(1)]);
        let p3 = veronese_point(&[rat_i64(1), rat_i64(2), rat_i64(3)], 2).unwrap();
        assert_eq!(
            p3,
            [1, 2, 3, 4, 6, 9].map(rat_i64).to_vec()
        );
        assert!(veronese_point(&[rat_i64(0), rat_i64(0)], 2).is_err());
    }

    #[test]
    fn veronese_scaling_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let p: Vec<Rat> = (0..3).map(|_| rat_i64(rng.gen_range(-5..=5))).collect();
            if p.iter().all(|c| c.is_zero()) {
                continue;
            }
            let c = rat_i64(rng.gen_range(1..=7));
            let d = 3usize;
            let v = veronese_point(&p, d).unwrap();
            let scaled: Vec<Rat> = p.iter().map(|x| x * &c).collect();
            let w = veronese_point(&scaled, d).unwrap();
            let cd = &c * &c * &c;
            for (a, b) in v.iter().zip(&w) {
                assert_eq!(&(a * &cd), b);
            }
        }
    }

    fn lin(v: &[i64]) -> LinearForm {
        LinearForm::Exact(v.iter().map(|&c| rat_i64(c)).collect())
    }

    #[test]
    fn expand_monomial_cases() {
        // x^3
        let d = Decomposition::new(
            3,
            vec![DecompTerm { coeff: Scalar::Exact(rat_i64(1)), linear: lin(&[1, 0]) }],
        )
        .unwrap();
        let ExpandedForm::Exact(f) = expand_powersum(&d).unwrap() else { panic!() };
        assert_eq!(f, Form::monomial(2, vec![3, 0]));

        // x^3 + y^3
        let d = Decomposition::new(
            3,
            vec![
                DecompTerm { coeff: Scalar::Exact(rat_i64(1)), linear: lin(&[1, 0]) },
                DecompTerm { coeff: Scalar::Exact(rat_i64(1)), linear: lin(&[0, 1]) },
            ],
        )
        .unwrap();
        let ExpandedForm::Exact(f) = expand_powersum(&d).unwrap() else { panic!() };
        let want = Form::monomial(2, vec![3, 0]).add(&Form::monomial(2, vec![0, 3])).unwrap();
        assert_eq!(f, want);
    }

    #[test]
    fn expand_xy_with_oracle() {
        // 1/4 (x+y)^2 - 1/4 (x-y)^2 = xy; oracle: multiply forms directly
        let d = Decomposition::new(
            2,
            vec![
                DecompTerm { coeff: Scalar::Exact(rat(1, 4)), linear: lin(&[1, 1]) },
                DecompTerm { coeff: Scalar::Exact(rat(-1, 4)), linear: lin(&[1, -1]) },
            ],
        )
        .unwrap();
        let ExpandedForm::Exact(f) = expand_powersum(&d).unwrap() else { panic!() };
        assert_eq!(f, Form::monomial(2, vec![1, 1]));

        let xp = Form::new(2, 1, [(vec![1, 0], rat_i64(1)), (vec![0, 1], rat_i64(1))]).unwrap();
        let xm = Form::new(2, 1, [(vec![1, 0], rat_i64(1)), (vec![0, 1], rat_i64(-1))]).unwrap();
        let oracle = xp
            .mul(&xp)
            .unwrap()
            .scale(&rat(1, 4))
            .sub(&xm.mul(&xm).unwrap().scale(&rat(1, 4)))
            .unwrap();
        assert_eq!(f, oracle);
    }

    #[test]
    fn divided_vector_is_veronese_of_linear() {
        // (2x - 3y)^4: divided vector equals veronese_point([2, -3], 4)
        let d = Decomposition::new(
            4,
            vec![DecompTerm { coeff: Scalar::Exact(rat_i64(1)), linear: lin(&[2, -3]) }],
        )
        .unwrap();
        let ExpandedForm::Exact(f) = expand_powersum(&d).unwrap() else { panic!() };
        assert_eq!(
            f.divided_vector(),
            veronese_point(&[rat_i64(2), rat_i64(-3)], 4).unwrap()
        );
    }

    #[test]
    fn catalecticant_examples() {
        // x^2: a = (1,0,0)
        let f = BinaryFormDivided::new(vec![rat_i64(1), rat_i64(0), rat_i64(0)]).unwrap();
        let c = catalecticant_binary(&f, 1).unwrap();
        assert_eq!(c.rows, 2);
        assert_eq!(c.cols, 2);
        let k = mat_kernel(&c);
        assert_eq!(k.len(), 1);
        assert!(k[0][0].is_zero() && !k[0][1].is_zero());

        // x^2 + y^2: a = (1,0,1), trivial kernel at r=1
        let f = BinaryFormDivided::new(vec![rat_i64(1), rat_i64(0), rat_i64(1)]).unwrap();
        assert!(mat_kernel(&catalecticant_binary(&f, 1).unwrap()).is_empty());

        // x^2 y^2: raw (0,0,1,0,0), a = (0,0,1/6,0,0); r=3 kernel has dim 2
        let form = Form::monomial(2, vec![2, 2]);
        let f = BinaryFormDivided::from_form(&form).unwrap();
        assert_eq!(f.a()[2], rat(1, 6));
        let c = catalecticant_binary(&f, 3).unwrap();
        assert_eq!((c.rows, c.cols), (2, 4));
        let k = mat_kernel(&c);
        assert_eq!(k.len(), 2);
        // e_0 and e_3 are kernel vectors
        for v in [[1i64, 0, 0, 0], [0, 0, 0, 1]] {
            let v: Vec<Rat> = v.iter().map(|&x| rat_i64(x)).collect();
            let img = c.mul_vec(&v).unwrap();
            assert!(img.iter().all(|x| x.is_zero()));
        }
        assert!(catalecticant_binary(&f, 0).is_err());
        assert!(catalecticant_binary(&f, 5).is_err());
    }

    #[test]
    fn pure_powers_have_rank_one_catalecticants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let alpha = rat_i64(rng.gen_range(-4..=4));
            let beta = rat_i64(rng.gen_range(1..=4));
            let dd = 5usize;
            let a: Vec<Rat> = (0..=dd)
                .map(|i| {
                    let mut m = Rat::one();
                    for _ in 0..(dd - i) {
                        m *= &alpha;
                    }
                    for _ in 0..i {
                        m *= &beta;
                    }
                    m
                })
                .collect();
            let f = BinaryFormDivided::new(a).unwrap();
            for r in 1..=dd {
                let c = catalecticant_binary(&f, r).unwrap();
                assert!(c.rank() <= 1);
            }
        }
    }

    #[test]
    fn form_json_roundtrip() {
        let f = Form::new(
            3,
            3,
            [
                (vec![2, 1, 0], rat(3, 2)),
                (vec![0, 0, 3], rat_i64(-1)),
            ],
        )
        .unwrap();
        let j = f.to_json();
        let back = Form::from_json(&j).unwrap();
        assert_eq!(f, back);
    }

    #[test]
    fn decomposition_json_roundtrip_exact() {
        let d = Decomposition::new(
            2,
            vec![
                DecompTerm { coeff: Scalar::Exact(rat(1, 4)), linear: lin(&[1, 1]) },
                DecompTerm { coeff: Scalar::Exact(rat(-1, 4)), linear: lin(&[1, -1]) },
            ],
        )
        .unwrap();
        let back = Decomposition::from_json(&d.to_json()).unwrap();
        assert!(back.exact);
        assert_eq!(back.len(), 2);
        let ExpandedForm::Exact(f) = expand_powersum(&back).unwrap() else { panic!() };
        assert_eq!(f, Form::monomial(2, vec![1, 1]));
    }

    #[test]
    fn verify_examples() {
        // (x^3, {(1, x)}, exact) -> true, 0
        let x3 = Form::monomial(2, vec![3, 0]);
        let d = Decomposition::new(
            3,
            vec![DecompTerm { coeff: Scalar::Exact(rat_i64(1)), linear: lin(&[1, 0]) }],
        )
        .unwrap();
        let (ok, res) = verify_decomposition(&x3, &d, None).unwrap();
        assert!(ok);
        assert!(res.is_zero());

        // wrong guess is rejected
        let d_bad = Decomposition::new(
            3,
            vec![DecompTerm { coeff: Scalar::Exact(rat_i64(1)), linear: lin(&[1, 1]) }],
        )
        .unwrap();
        let (ok, res) = verify_decomposition(&x3, &d_bad, None).unwrap();
        assert!(!ok);
        assert!(!res.is_zero());
    }

    #[test]
    fn verify_numeric_path() {
        // x^2 - y^2 = ((x+iy)^2 + (x-iy)^2) / 2
        let p = Form::new(2, 2, [(vec![2, 0], rat_i64(1)), (vec![0, 2], rat_i64(-1))]).unwrap();
        let one = BigComplex::from_f64(1.0, 0.0, 256);
        let i = BigComplex::from_f64(0.0, 1.0, 256);
        let half = BigComplex::from_f64(0.5, 0.0, 256);
        let d = Decomposition::new(
            2,
            vec![
                DecompTerm {
                    coeff: Scalar::Numeric(half.clone()),
                    linear: LinearForm::Numeric(vec![one.clone(), i.clone()]),
                },
                DecompTerm {
                    coeff: Scalar::Numeric(half),
                    linear: LinearForm::Numeric(vec![one, i.neg()]),
                },
            ],
        )
        .unwrap();
        assert!(!d.exact);
        let (ok, res) = verify_decomposition(&p, &d, Some(-128)).unwrap();
        assert!(ok, "residual {}", res.display());
    }

    #[test]
    fn binary_divided_roundtrip() {
        let form = Form::new(2, 4, [(vec![3, 1], rat_i64(1))]).unwrap();
        let f = BinaryFormDivided::from_form(&form).unwrap();
        assert_eq!(f.a(), &[rat_i64(0), rat(1, 4), rat_i64(0), rat_i64(0), rat_i64(0)]);
        assert_eq!(f.to_form(), form);
        let bp = f.to_binary_poly();
        assert_eq!(bp.coeffs()[1], rat_i64(1));
        assert_eq!(BinaryFormDivided::from_binary_poly(&bp), f);
    }
}
