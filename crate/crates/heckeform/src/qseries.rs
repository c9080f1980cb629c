//! Numeric realization of the construction for μ = 3 (and user-supplied
//! data for other groups): truncated q-expansions, evaluation on the upper
//! half-plane, and floating-point checks of the functional equations.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, bracket};
use crate::error::{Error, Result};
use crate::poly::Rational;

use num_traits::ToPrimitive;
use std::f64::consts::PI;

fn rat_f64(r: &Rational) -> f64 {
    r.to_f64().expect("small rational fits f64")
}

/// Group data: period, structure constant, and the two generator actions.
#[derive(Clone, Debug)]
pub struct HeckeGroupData {
    pub mu: u32,
    pub omega: f64,
    pub c: Complex64,
}

impl HeckeGroupData {
    pub fn new(mu: u32, c: Complex64) -> Result<Self> {
        if mu < 3 {
            return Err(Error::InvalidSpec(format!("mu = {mu} < 3")));
        }
        Ok(HeckeGroupData {
            mu,
            omega: 2.0 * (PI / mu as f64).cos(),
            c,
        })
    }

    /// The modular group with the structure constant C = −6i/π attached to
    /// the normalization E_2 = 1 − 24Σσ_1(n)qⁿ.
    pub fn mu3() -> Self {
        HeckeGroupData::new(3, Complex64::new(0.0, -6.0 / PI)).expect("mu = 3 valid")
    }

    pub fn t_apply(&self, z: Complex64) -> Complex64 {
        z + self.omega
    }

    pub fn s_apply(&self, z: Complex64) -> Complex64 {
        -1.0 / z
    }
}

/// Truncated Fourier expansion Σ a_n q^n with q = e^{2πiz/ϖ}.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries {
    pub period: f64,
    /// Nominal weight, used only for tail estimation.
    pub weight: i32,
    /// a_0 ..= a_N, with N ≥ 1.
    pub coeffs: Vec<Complex64>,
}

impl QSeries {
    pub fn new(period: f64, weight: i32, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("need at least a_0, a_1".into()));
        }
        Ok(QSeries {
            period,
            weight,
            coeffs,
        })
    }

    pub fn constant(period: f64, value: Complex64, terms: usize) -> Self {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); terms.max(2)];
        coeffs[0] = value;
        QSeries {
            period,
            weight: 0,
            coeffs,
        }
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn check_period(&self, other: &QSeries) -> Result<()> {
        if (self.period - other.period).abs() > 1e-12 {
            return Err(Error::PeriodMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &QSeries) -> Result<QSeries> {
        self.check_period(other)?;
        let n = self.coeffs.len().min(other.coeffs.len());
        Ok(QSeries {
            period: self.period,
            weight: self.weight.max(other.weight),
            coeffs: (0..n).map(|i| self.coeffs[i] + other.coeffs[i]).collect(),
        })
    }

    pub fn mul(&self, other: &QSeries) -> Result<QSeries> {
        self.check_period(other)?;
        let n = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..(n - i) {
                coeffs[i + j] += self.coeffs[i] * other.coeffs[j];
            }
        }
        Ok(QSeries {
            period: self.period,
            weight: self.weight + other.weight,
            coeffs,
        })
    }

    pub fn scale(&self, c: Complex64) -> QSeries {
        QSeries {
            period: self.period,
            weight: self.weight,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// D = (ϖ/2πi)·d/dz = q·d/dq: multiplies a_n by n.
    pub fn derive(&self) -> QSeries {
        QSeries {
            period: self.period,
            weight: self.weight + 2,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, a)| a * n as f64)
                .collect(),
        }
    }

    /// Evaluate at z in the upper half-plane; returns the partial sum and a
    /// geometric tail estimate fitted from |a_n| ≤ A·n^w on the computed
    /// coefficients.
    pub fn eval(&self, z: Complex64) -> Result<(Complex64, f64)> {
        if z.im <= 0.0 {
            return Err(Error::NotInUpperHalfPlane);
        }
        let q = (Complex64::new(0.0, 2.0 * PI) * z / self.period).exp();
        // Horner in q, highest coefficient first.
        let mut value = Complex64::new(0.0, 0.0);
        for a in self.coeffs.iter().rev() {
            value = value * q + a;
        }
        let t = q.norm();
        let p = self.weight.max(1) as f64;
        let a_max = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, a)| a.norm() / (n as f64).powf(p))
            .fold(0.0_f64, f64::max);
        let n1 = self.coeffs.len() as f64;
        let tail = if t < 1.0 && a_max > 0.0 {
            a_max * n1.powf(p) * t.powf(n1) / (1.0 - t).powi(2)
        } else {
            0.0
        };
        Ok((value, tail))
    }
}

/// Σ_{d|n} d^k by direct divisor enumeration.
pub fn divisor_sum(n: u64, k: u32) -> Result<u128> {
    if n < 1 {
        return Err(Error::InvalidArgument("divisor_sum needs n >= 1".into()));
    }
    let mut sum: u128 = 0;
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            sum += (d as u128).pow(k);
            let e = n / d;
            if e != d {
                sum += (e as u128).pow(k);
            }
        }
        d += 1;
    }
    Ok(sum)
}

/// Classical level-one Eisenstein series for μ = 3, period 1.
pub fn eisenstein_mu3(weight: u32, terms: usize) -> Result<QSeries> {
    if terms < 8 {
        return Err(Error::InvalidArgument("need at least 8 terms".into()));
    }
    let (factor, power) = match weight {
        2 => (-24.0, 1),
        4 => (240.0, 3),
        6 => (-504.0, 5),
        w => return Err(Error::UnsupportedWeight(w as i64)),
    };
    let mut coeffs = vec![Complex64::new(0.0, 0.0); terms + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);
    for n in 1..=terms {
        coeffs[n] = Complex64::new(factor * divisor_sum(n as u64, power)? as f64, 0.0);
    }
    QSeries::new(1.0, weight as i32, coeffs)
}

/// Numeric carrier of a quasiautomorphic form: group data, weight, depth,
/// and a q-series per present coefficient index.
#[derive(Clone, Debug)]
pub struct NumericFormSpec {
    pub name: String,
    pub group: HeckeGroupData,
    pub w: u32,
    pub r: u32,
    /// Index k holds B_k; `None` marks an absent coefficient.
    pub coeffs: Vec<Option<QSeries>>,
    /// E_2 expansion for the group; required whenever r > 0.
    pub e2: QSeries,
}

impl NumericFormSpec {
    pub fn validate(&self) -> Result<()> {
        if self.w < 2 || self.w % 2 != 0 {
            return Err(Error::InvalidSpec(format!("weight {}", self.w)));
        }
        if 2 * self.r > self.w {
            return Err(Error::InvalidSpec(format!(
                "depth {} exceeds w/2",
                self.r
            )));
        }
        if self.coeffs.len() != (self.r + 1) as usize {
            return Err(Error::InvalidSpec(
                "coefficient slots must cover 0..=r".into(),
            ));
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if let Some(s) = c {
                if s.weight != (self.w - 2 * k as u32) as i32 {
                    return Err(Error::InvalidSpec(format!(
                        "B_{k} has weight {} but slot demands {}",
                        s.weight,
                        self.w - 2 * k as u32
                    )));
                }
            }
        }
        Ok(())
    }

    /// g_ℓ(z) = C^ℓ Σ_{m=0}^{r−ℓ} {r,ℓ}_m B_{ℓ+m}(z) E_2(z)^m.
    pub fn eval_g(&self, l: u32, z: Complex64) -> Result<Complex64> {
        if l > self.r {
            return Err(Error::IndexOutOfRange(format!("l = {l}")));
        }
        let e2 = self.e2.eval(z)?.0;
        let mut sum = Complex64::new(0.0, 0.0);
        for m in 0..=(self.r - l) {
            let Some(b) = &self.coeffs[(l + m) as usize] else {
                continue;
            };
            let br = rat_f64(&bracket(self.r as u64, l as u64, m as u64)?);
            sum += br * b.eval(z)?.0 * e2.powu(m);
        }
        Ok(self.group.c.powu(l) * sum)
    }
}

/// F_U(z) = (f_0(z), …, f_r(z)) with f_n = Σ_k C(n,k) g_k z^{n−k}.
pub fn numeric_vector_form(spec: &NumericFormSpec, z: Complex64) -> Result<Vec<Complex64>> {
    if z.im <= 0.0 {
        return Err(Error::NotInUpperHalfPlane);
    }
    spec.validate()?;
    let g: Vec<Complex64> = (0..=spec.r)
        .map(|l| spec.eval_g(l, z))
        .collect::<Result<_>>()?;
    let mut f = Vec::with_capacity(g.len());
    for n in 0..=spec.r {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..=n {
            acc += rat_f64(&binomial(n as u64, k as i64)) * g[k as usize] * z.powu(n - k);
        }
        f.push(acc);
    }
    Ok(f)
}

/// Outcome of one numeric check at one point.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct NumericCheck {
    pub name: String,
    pub point: [f64; 2],
    pub residuals: Vec<f64>,
    pub pass: bool,
}

/// A batch of numeric check results.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct NumericReport {
    pub checks: Vec<NumericCheck>,
}

impl NumericReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn extend(&mut self, other: NumericReport) {
        self.checks.extend(other.checks);
    }
}

fn require_inside(z: Complex64) -> Result<()> {
    if z.im < 0.5 || (-1.0 / z).im < 0.5 {
        return Err(Error::NotInUpperHalfPlane);
    }
    Ok(())
}

fn relative_residual(a: Complex64, b: Complex64) -> f64 {
    let scale = a.norm().max(b.norm()).max(1e-30);
    (a - b).norm() / scale
}

/// Residual of the weight-2 anomaly E_2(−1/z) = z²E_2(z) + Cz.
pub fn check_e2_anomaly(
    group: &HeckeGroupData,
    e2: &QSeries,
    z: Complex64,
    tol: f64,
) -> Result<NumericCheck> {
    require_inside(z)?;
    let sz = group.s_apply(z);
    let lhs = e2.eval(sz)?.0;
    let rhs = z * z * e2.eval(z)?.0 + group.c * z;
    let res = relative_residual(lhs, rhs);
    Ok(NumericCheck {
        name: "E2_anomaly".into(),
        point: [z.re, z.im],
        residuals: vec![res],
        pass: res < tol,
    })
}

/// Numeric Pascal matrix application: (P_r(x)·v)_n = Σ_k C(n,k)x^{n−k}v_k.
fn pascal_apply(x: Complex64, v: &[Complex64]) -> Vec<Complex64> {
    (0..v.len())
        .map(|n| {
            (0..=n)
                .map(|k| rat_f64(&binomial(n as u64, k as i64)) * x.powu((n - k) as u32) * v[k])
                .sum()
        })
        .collect()
}

/// Both functional equations at one point: the translation law
/// F(z+ϖ) = P_r(ϖ)F(z) and the inversion law F(−1/z)/z^{w−r} = d_r^y F(z).
pub fn check_functional_equations(
    spec: &NumericFormSpec,
    z: Complex64,
    tol: f64,
) -> Result<NumericReport> {
    require_inside(z)?;
    let f = numeric_vector_form(spec, z)?;
    let r = spec.r as usize;
    let mut report = NumericReport::default();

    let f_t = numeric_vector_form(spec, spec.group.t_apply(z))?;
    let rhs_t = pascal_apply(Complex64::new(spec.group.omega, 0.0), &f);
    let res_t: Vec<f64> = (0..=r)
        .map(|n| relative_residual(f_t[n], rhs_t[n]))
        .collect();
    report.checks.push(NumericCheck {
        name: format!("{}_T_law", spec.name),
        point: [z.re, z.im],
        pass: res_t.iter().all(|&x| x < tol),
        residuals: res_t,
    });

    let f_s = numeric_vector_form(spec, spec.group.s_apply(z))?;
    let zf = z.powu(spec.w - spec.r);
    let res_s: Vec<f64> = (0..=r)
        .map(|n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            relative_residual(f_s[n], zf * sign * f[r - n])
        })
        .collect();
    report.checks.push(NumericCheck {
        name: format!("{}_S_law", spec.name),
        point: [z.re, z.im],
        pass: res_s.iter().all(|&x| x < tol),
        residuals: res_s,
    });
    Ok(report)
}

/// The μ = 3 test corpus.
pub fn builtin_samples(terms: usize) -> Result<Vec<NumericFormSpec>> {
    let group = HeckeGroupData::mu3();
    let e2 = eisenstein_mu3(2, terms)?;
    let e4 = eisenstein_mu3(4, terms)?;
    let e6 = eisenstein_mu3(6, terms)?;
    let one = |weight: i32| {
        let mut s = QSeries::constant(1.0, Complex64::new(1.0, 0.0), terms + 1);
        s.weight = weight;
        s
    };
    let third = Complex64::new(1.0 / 3.0, 0.0);
    let half = Complex64::new(0.5, 0.0);

    Ok(vec![
        // U = E_2: w=2, r=1, B_1 = 1.
        NumericFormSpec {
            name: "E2".into(),
            group: group.clone(),
            w: 2,
            r: 1,
            coeffs: vec![None, Some(one(0))],
            e2: e2.clone(),
        },
        // U = E_2²: w=4, r=2, B_2 = 1.
        NumericFormSpec {
            name: "E2^2".into(),
            group: group.clone(),
            w: 4,
            r: 2,
            coeffs: vec![None, None, Some(one(0))],
            e2: e2.clone(),
        },
        // U = D E_4 = (E_2E_4 − E_6)/3: w=6, r=1, B_0 = −E_6/3, B_1 = E_4/3.
        NumericFormSpec {
            name: "DE4".into(),
            group: group.clone(),
            w: 6,
            r: 1,
            coeffs: vec![Some(e6.scale(-third)), Some(e4.scale(third))],
            e2: e2.clone(),
        },
        // U = D E_6 = (E_2E_6 − E_4²)/2: w=8, r=1, B_0 = −E_4²/2, B_1 = E_6/2.
        NumericFormSpec {
            name: "DE6".into(),
            group: group.clone(),
            w: 8,
            r: 1,
            coeffs: vec![Some(e4.mul(&e4)?.scale(-half)), Some(e6.scale(half))],
            e2: e2.clone(),
        },
        // U = E_4: w=4, r=0.
        NumericFormSpec {
            name: "E4".into(),
            group,
            w: 4,
            r: 0,
            coeffs: vec![Some(e4)],
            e2,
        },
    ])
}

/// Deterministic sample points with Im z ∈ [0.7, 1.5] and Re z ∈ [−0.5, 0.5];
/// the box keeps both z and −1/z well inside the convergence region.
pub fn sample_points(seed: u64, count: usize) -> Vec<Complex64> {
    // splitmix64, which is more than enough for test-point placement.
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e3779b97f4a7c15);
        let mut x = state;
        x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
        x ^ (x >> 31)
    };
    let unit = |v: u64| (v >> 11) as f64 / (1u64 << 53) as f64;
    (0..count)
        .map(|_| {
            let re = unit(next()) - 0.5;
            let im = 0.7 + 0.8 * unit(next());
            Complex64::new(re, im)
        })
        .collect()
}

// ---------------------------------------------------------------------------
// JSON form-spec file schema
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FormSpecFile {
    pub mu: u32,
    pub weight: u32,
    pub depth: u32,
    #[serde(rename = "C", default, skip_serializing_if = "Option::is_none")]
    pub c: Option<[f64; 2]>,
    pub coefficients: Vec<CoefficientEntry>,
    /// E_2 expansion for groups other than μ = 3.
    #[serde(rename = "E2", default, skip_serializing_if = "Option::is_none")]
    pub e2: Option<SeriesSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub k: u32,
    pub series: SeriesSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<ScaleSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SeriesSpec {
    Builtin { builtin: String },
    Coeffs { coeffs: Vec<[f64; 2]> },
}

/// Either an exact rational `[[num],[den]]` or a complex `[re, im]`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScaleSpec {
    Rational([[i64; 1]; 2]),
    Complex([f64; 2]),
}

impl ScaleSpec {
    fn as_complex(&self) -> Result<Complex64> {
        match self {
            ScaleSpec::Rational([[n], [d]]) => {
                if *d == 0 {
                    return Err(Error::InvalidSpec("zero denominator in scale".into()));
                }
                Ok(Complex64::new(*n as f64 / *d as f64, 0.0))
            }
            ScaleSpec::Complex([re, im]) => Ok(Complex64::new(*re, *im)),
        }
    }
}

impl FormSpecFile {
    /// Resolve the file into an evaluable spec at the given truncation.
    pub fn resolve(&self, terms: usize) -> Result<NumericFormSpec> {
        let c = match self.c {
            Some([re, im]) => Complex64::new(re, im),
            None if self.mu == 3 => HeckeGroupData::mu3().c,
            None => {
                return Err(Error::InvalidSpec(
                    "structure constant C required when mu != 3".into(),
                ))
            }
        };
        let group = HeckeGroupData::new(self.mu, c)?;
        let resolve_series = |s: &SeriesSpec, weight: i32| -> Result<QSeries> {
            match s {
                SeriesSpec::Builtin { builtin } => {
                    if self.mu != 3 {
                        return Err(Error::InvalidSpec(
                            "builtin series are defined only for mu = 3".into(),
                        ));
                    }
                    match builtin.as_str() {
                        "E2" => eisenstein_mu3(2, terms),
                        "E4" => eisenstein_mu3(4, terms),
                        "E6" => eisenstein_mu3(6, terms),
                        other => Err(Error::InvalidSpec(format!("unknown builtin {other:?}"))),
                    }
                }
                SeriesSpec::Coeffs { coeffs } => {
                    let parsed = coeffs
                        .iter()
                        .map(|[re, im]| Complex64::new(*re, *im))
                        .collect();
                    let mut s = QSeries::new(group.omega, 0, parsed)?;
                    s.weight = weight;
                    Ok(s)
                }
            }
        };
        let mut slots: Vec<Option<QSeries>> = vec![None; (self.depth + 1) as usize];
        for entry in &self.coefficients {
            if entry.k > self.depth {
                return Err(Error::InvalidSpec(format!(
                    "coefficient index {} exceeds depth {}",
                    entry.k, self.depth
                )));
            }
            let weight = self.weight as i32 - 2 * entry.k as i32;
            let mut series = resolve_series(&entry.series, weight)?;
            series.weight = weight;
            if let Some(scale) = &entry.scale {
                series = series.scale(scale.as_complex()?);
            }
            slots[entry.k as usize] = Some(series);
        }
        let e2 = match &self.e2 {
            Some(s) => resolve_series(s, 2)?,
            None if self.mu == 3 => eisenstein_mu3(2, terms)?,
            None if self.depth > 0 => {
                return Err(Error::InvalidSpec(
                    "E2 expansion required for mu != 3 with positive depth".into(),
                ))
            }
            // Depth 0 never evaluates E_2; a constant placeholder suffices.
            None => QSeries::constant(group.omega, Complex64::new(0.0, 0.0), 2),
        };
        let spec = NumericFormSpec {
            name: format!("file(mu={},w={},r={})", self.mu, self.weight, self.depth),
            group,
            w: self.weight,
            r: self.depth,
            coeffs: slots,
            e2,
        };
        spec.validate()?;
        Ok(spec)
    }
}
