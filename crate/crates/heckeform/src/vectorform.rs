//! Symbolic construction of the hauptbuch, the Hecke vector-form, the
//! transfer matrix, and exact verification of the transformation laws
//! under the two group generators.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, bracket};
use crate::error::{Error, Result};
use crate::matrix::{self, RingMatrix};
use crate::poly::{LaurentPoly, RingHom, Symbol};

/// Symbolic description of a quasiautomorphic form: weight, depth, and
/// which automorphic coefficients B_k are present as nonzero symbols.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpecSymbolic {
    pub mu: u32,
    pub w: u32,
    pub r: u32,
    pub present: BTreeSet<u32>,
}

impl FormSpecSymbolic {
    pub fn new(mu: u32, w: u32, r: u32, present: impl IntoIterator<Item = u32>) -> Result<Self> {
        let spec = FormSpecSymbolic {
            mu,
            w,
            r,
            present: present.into_iter().collect(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.mu < 3 {
            return Err(Error::InvalidSpec(format!("mu = {} < 3", self.mu)));
        }
        if self.w < 2 || self.w % 2 != 0 {
            return Err(Error::InvalidSpec(format!(
                "weight {} must be even and >= 2",
                self.w
            )));
        }
        if 2 * self.r > self.w {
            return Err(Error::InvalidSpec(format!(
                "depth {} exceeds w/2 = {}",
                self.r,
                self.w / 2
            )));
        }
        if let Some(&k) = self.present.iter().find(|&&k| k > self.r) {
            return Err(Error::InvalidSpec(format!(
                "coefficient index {k} exceeds depth {}",
                self.r
            )));
        }
        Ok(())
    }

    /// B_k as a polynomial: the symbol when present, zero otherwise.
    fn coeff(&self, k: u32) -> LaurentPoly {
        if self.present.contains(&k) {
            LaurentPoly::symbol(Symbol::B(k as u8))
        } else {
            LaurentPoly::zero()
        }
    }
}

/// The vector (g_0,…,g_r); each entry is free of z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HauptbuchVec(pub Vec<LaurentPoly>);

/// The vector (f_0,…,f_r); entry n has z-degree at most n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VectorFormVec(pub Vec<LaurentPoly>);

/// g_ℓ = C^ℓ Σ_{m=0}^{r−ℓ} {r,ℓ}_m B_{ℓ+m} E^m.
pub fn build_g(spec: &FormSpecSymbolic, l: u32) -> Result<LaurentPoly> {
    spec.validate()?;
    if l > spec.r {
        return Err(Error::IndexOutOfRange(format!("l = {l} > r = {}", spec.r)));
    }
    let mut sum = LaurentPoly::zero();
    for m in 0..=(spec.r - l) {
        let b = spec.coeff(l + m);
        if b.is_zero() {
            continue;
        }
        let coeff = bracket(spec.r as u64, l as u64, m as u64)?;
        let term = &b.scale(&coeff) * &LaurentPoly::symbol(Symbol::E).pow(m);
        sum = &sum + &term;
    }
    Ok(&sum * &LaurentPoly::symbol(Symbol::C).pow(l))
}

/// f_n = Σ_{k=0}^{n} C(n,k) g_k z^{n−k}.
pub fn build_f(spec: &FormSpecSymbolic, n: u32) -> Result<LaurentPoly> {
    spec.validate()?;
    if n > spec.r {
        return Err(Error::IndexOutOfRange(format!("n = {n} > r = {}", spec.r)));
    }
    let mut sum = LaurentPoly::zero();
    for k in 0..=n {
        let g = build_g(spec, k)?;
        let term = &g.scale(&binomial(n as u64, k as i64)) * &LaurentPoly::z_pow((n - k) as i64);
        sum = &sum + &term;
    }
    Ok(sum)
}

pub fn hauptbuch(spec: &FormSpecSymbolic) -> Result<HauptbuchVec> {
    Ok(HauptbuchVec(
        (0..=spec.r)
            .map(|l| build_g(spec, l))
            .collect::<Result<_>>()?,
    ))
}

pub fn vector_form(spec: &FormSpecSymbolic) -> Result<VectorFormVec> {
    Ok(VectorFormVec(
        (0..=spec.r)
            .map(|n| build_f(spec, n))
            .collect::<Result<_>>()?,
    ))
}

/// Lower-triangular matrix with entry (n,k) = C(n,k)·g_{n−k}.
pub fn transfer_matrix(spec: &FormSpecSymbolic) -> Result<RingMatrix> {
    let g = hauptbuch(spec)?.0;
    let r = spec.r as usize;
    Ok(RingMatrix::from_fn(r + 1, r + 1, |n, k| {
        if k > n {
            LaurentPoly::zero()
        } else {
            g[n - k].scale(&binomial(n as u64, k as i64))
        }
    }))
}

/// The column (1, z, …, z^r)ᵗ.
pub fn monomial_vector(r: u32) -> RingMatrix {
    RingMatrix::column((0..=r).map(|j| LaurentPoly::z_pow(j as i64)).collect())
}

/// Substitution for the inversion generator: z ↦ −z^{-1}, E ↦ z²E + Cz,
/// B_k ↦ z^{w−2k}·B_k.
pub fn sigma_s(spec: &FormSpecSymbolic) -> RingHom {
    let z = LaurentPoly::symbol(Symbol::Z);
    let e_image = &(&z.pow(2) * &LaurentPoly::symbol(Symbol::E))
        + &(&LaurentPoly::symbol(Symbol::C) * &z);
    let mut h = RingHom::new()
        .with(Symbol::Z, -&LaurentPoly::z_pow(-1))
        .with(Symbol::E, e_image);
    for k in 0..=spec.r {
        let img = &LaurentPoly::z_pow((spec.w - 2 * k) as i64)
            * &LaurentPoly::symbol(Symbol::B(k as u8));
        h = h.with(Symbol::B(k as u8), img);
    }
    h
}

/// Substitution for the translation generator: z ↦ z + ϖ, everything else
/// fixed.
pub fn sigma_t(_spec: &FormSpecSymbolic) -> RingHom {
    RingHom::new().with(
        Symbol::Z,
        &LaurentPoly::symbol(Symbol::Z) + &LaurentPoly::symbol(Symbol::Omega),
    )
}

/// Outcome of one exact identity check.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub case: String,
    pub pass: bool,
    /// Canonical form of lhs − rhs when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub difference: Option<String>,
}

impl CheckResult {
    fn compare(name: &str, case: String, lhs: &LaurentPoly, rhs: &LaurentPoly) -> Self {
        let diff = lhs - rhs;
        CheckResult {
            name: name.to_string(),
            case,
            pass: diff.is_zero(),
            difference: if diff.is_zero() {
                None
            } else {
                Some(diff.to_string())
            },
        }
    }
}

/// A batch of check results.
#[derive(Clone, Debug, Default, Serialize, Deserialize, PartialEq)]
pub struct Report {
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

fn case_label(spec: &FormSpecSymbolic) -> String {
    let present: Vec<String> = spec.present.iter().map(|k| k.to_string()).collect();
    format!("w={} r={} present={{{}}}", spec.w, spec.r, present.join(","))
}

/// g_ℓ(Sz) = z^{w−r−ℓ} Σ_m C(r−ℓ,m) g_{ℓ+m} z^{r−ℓ−m}, per ℓ.
pub fn verify_prop_g_s(spec: &FormSpecSymbolic) -> Result<Report> {
    let h = sigma_s(spec);
    let g = hauptbuch(spec)?.0;
    let mut report = Report::default();
    for l in 0..=spec.r {
        let lhs = g[l as usize].substitute(&h)?;
        let mut sum = LaurentPoly::zero();
        for m in 0..=(spec.r - l) {
            let term = &g[(l + m) as usize].scale(&binomial((spec.r - l) as u64, m as i64))
                * &LaurentPoly::z_pow((spec.r - l - m) as i64);
            sum = &sum + &term;
        }
        let rhs = &LaurentPoly::z_pow((spec.w - spec.r - l) as i64) * &sum;
        report.checks.push(CheckResult::compare(
            "prop_g_S",
            format!("{} l={l}", case_label(spec)),
            &lhs,
            &rhs,
        ));
    }
    Ok(report)
}

/// f_n(Sz) = z^{w−r}·(−1)^n·f_{r−n}, per n.
pub fn verify_cor_f_s(spec: &FormSpecSymbolic) -> Result<Report> {
    let h = sigma_s(spec);
    let f = vector_form(spec)?.0;
    let mut report = Report::default();
    for n in 0..=spec.r {
        let lhs = f[n as usize].substitute(&h)?;
        let mirrored = &f[(spec.r - n) as usize] * &LaurentPoly::z_pow((spec.w - spec.r) as i64);
        let rhs = if n % 2 == 0 { mirrored } else { -&mirrored };
        report.checks.push(CheckResult::compare(
            "cor_f_S",
            format!("{} n={n}", case_label(spec)),
            &lhs,
            &rhs,
        ));
    }
    Ok(report)
}

/// F_U(Tz) = P_r(ϖ)·F_U(z), entrywise.
pub fn verify_thm_t(spec: &FormSpecSymbolic) -> Result<Report> {
    let h = sigma_t(spec);
    let f = vector_form(spec)?.0;
    let fcol = RingMatrix::column(f.clone());
    let rhs = &matrix::pascal(spec.r as usize, &LaurentPoly::symbol(Symbol::Omega)) * &fcol;
    let mut report = Report::default();
    for n in 0..=spec.r as usize {
        let lhs = f[n].substitute(&h)?;
        report.checks.push(CheckResult::compare(
            "thm_T",
            format!("{} n={n}", case_label(spec)),
            &lhs,
            rhs.get(n, 0),
        ));
    }
    Ok(report)
}

/// F_U(Sz) = z^{w−r}·(d_r ι_r)·F_U(z) with d_r = diag((−1)^i).
pub fn verify_thm_s(spec: &FormSpecSymbolic) -> Result<Report> {
    let h = sigma_s(spec);
    let f = vector_form(spec)?.0;
    let r = spec.r as usize;
    let signs: Vec<LaurentPoly> = (0..=r)
        .map(|i| {
            if i % 2 == 0 {
                LaurentPoly::one()
            } else {
                -&LaurentPoly::one()
            }
        })
        .collect();
    let dy = matrix::half_transpose(matrix::Side::Right, &matrix::diagonal(&signs)?)?;
    let rhs = (&dy * &RingMatrix::column(f.clone())).scale(&LaurentPoly::z_pow((spec.w - spec.r) as i64));
    let mut report = Report::default();
    for n in 0..=r {
        let lhs = f[n].substitute(&h)?;
        report.checks.push(CheckResult::compare(
            "thm_S",
            format!("{} n={n}", case_label(spec)),
            &lhs,
            rhs.get(n, 0),
        ));
    }
    Ok(report)
}

/// Binomial inversion: g_n = Σ_{j=0}^{n} (−1)^{n−j} C(n,j) f_j z^{n−j}.
pub fn verify_orthogonality(spec: &FormSpecSymbolic) -> Result<Report> {
    let g = hauptbuch(spec)?.0;
    let f = vector_form(spec)?.0;
    let mut report = Report::default();
    for n in 0..=spec.r {
        let mut sum = LaurentPoly::zero();
        for j in 0..=n {
            let term = &f[j as usize].scale(&binomial(n as u64, j as i64))
                * &LaurentPoly::z_pow((n - j) as i64);
            sum = if (n - j) % 2 == 0 { &sum + &term } else { &sum - &term };
        }
        report.checks.push(CheckResult::compare(
            "orthogonality",
            format!("{} n={n}", case_label(spec)),
            &g[n as usize],
            &sum,
        ));
    }
    Ok(report)
}

/// The three constructions of F_U: direct convolution, e^{zA_r}·G_U, and
/// P(G_U)·ν_r; plus the Pascal-matrix form of the convolution identity.
pub fn verify_route_equivalence(spec: &FormSpecSymbolic) -> Result<Report> {
    let r = spec.r as usize;
    let f = vector_form(spec)?.0;
    let gcol = RingMatrix::column(hauptbuch(spec)?.0);
    let z = LaurentPoly::symbol(Symbol::Z);

    let via_exp = {
        let za = matrix::creation(r, &LaurentPoly::zero()).scale(&z);
        &matrix::nilpotent_exp(&za, (r + 1) as u32)? * &gcol
    };
    let via_transfer = &transfer_matrix(spec)? * &monomial_vector(spec.r);
    let via_pascal = &matrix::pascal(r, &z) * &gcol;

    let mut report = Report::default();
    for n in 0..=r {
        report.checks.push(CheckResult::compare(
            "route_exp",
            format!("{} n={n}", case_label(spec)),
            &f[n],
            via_exp.get(n, 0),
        ));
        report.checks.push(CheckResult::compare(
            "route_transfer",
            format!("{} n={n}", case_label(spec)),
            &f[n],
            via_transfer.get(n, 0),
        ));
        report.checks.push(CheckResult::compare(
            "route_pascal_convolution",
            format!("{} n={n}", case_label(spec)),
            &f[n],
            via_pascal.get(n, 0),
        ));
    }
    Ok(report)
}

/// All symbolic identity checks for one spec.
pub fn verify_all(spec: &FormSpecSymbolic) -> Result<Report> {
    let mut report = Report::default();
    report.extend(verify_prop_g_s(spec)?);
    report.extend(verify_cor_f_s(spec)?);
    report.extend(verify_thm_t(spec)?);
    report.extend(verify_thm_s(spec)?);
    report.extend(verify_orthogonality(spec)?);
    report.extend(verify_route_equivalence(spec)?);
    Ok(report)
}

/// All specs of the sweep: even weights up to `w_max`, every depth
/// r ≤ w/2, every subset of present coefficients.
pub fn sweep_specs(w_max: u32) -> Vec<FormSpecSymbolic> {
    let mut specs = Vec::new();
    let mut w = 2;
    while w <= w_max {
        for r in 0..=(w / 2) {
            for mask in 0u32..(1 << (r + 1)) {
                let present = (0..=r).filter(|k| mask & (1 << k) != 0);
                specs.push(
                    FormSpecSymbolic::new(3, w, r, present)
                        .expect("sweep generates valid specs"),
                );
            }
        }
        w += 2;
    }
    specs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Rational;

    fn spec_e2() -> FormSpecSymbolic {
        // U = E_2: w=2, r=1, B_1 = 1 present.
        FormSpecSymbolic::new(3, 2, 1, [1]).unwrap()
    }

    fn sym(s: Symbol) -> LaurentPoly {
        LaurentPoly::symbol(s)
    }

    /// The spec's worked example takes B_1 = 1; identities are homogeneous
    /// in the B's, so the symbolic result specializes by substitution.
    fn unit_b1(p: &LaurentPoly) -> LaurentPoly {
        p.substitute(&crate::poly::RingHom::new().with(Symbol::B(1), LaurentPoly::one()))
            .unwrap()
    }

    #[test]
    fn spec_validation() {
        assert!(FormSpecSymbolic::new(3, 2, 2, []).is_err());
        assert!(FormSpecSymbolic::new(3, 3, 1, []).is_err());
        assert!(FormSpecSymbolic::new(2, 2, 1, []).is_err());
        assert!(FormSpecSymbolic::new(3, 4, 1, [2]).is_err());
        assert!(FormSpecSymbolic::new(3, 4, 2, [0, 1, 2]).is_ok());
    }

    #[test]
    fn build_g_examples() {
        let s = spec_e2();
        assert_eq!(unit_b1(&build_g(&s, 0).unwrap()), sym(Symbol::E));
        assert_eq!(unit_b1(&build_g(&s, 1).unwrap()), sym(Symbol::C));

        // (w=4, r=2, present={1}): g_1 = (1/2)·C·B_1.
        let s = FormSpecSymbolic::new(3, 4, 2, [1]).unwrap();
        let expect = (&sym(Symbol::C) * &sym(Symbol::B(1)))
            .scale(&Rational::new(1.into(), 2.into()));
        assert_eq!(build_g(&s, 1).unwrap(), expect);

        // r = 0: g_0 = B_0.
        let s = FormSpecSymbolic::new(3, 4, 0, [0]).unwrap();
        assert_eq!(build_g(&s, 0).unwrap(), sym(Symbol::B(0)));

        assert!(build_g(&spec_e2(), 2).is_err());
    }

    #[test]
    fn build_f_examples() {
        let s = spec_e2();
        // f_1 = E·z + C once B_1 is set to one.
        let expect = &(&sym(Symbol::E) * &LaurentPoly::z_pow(1)) + &sym(Symbol::C);
        assert_eq!(unit_b1(&build_f(&s, 1).unwrap()), expect);
        assert_eq!(unit_b1(&build_f(&s, 0).unwrap()), sym(Symbol::E));
        assert!(build_f(&s, 2).is_err());
    }

    #[test]
    fn f_in_terms_of_g_displays() {
        // f_1 = g_0 z + g_1 and f_2 = g_0 z² + 2 g_1 z + g_2 for a generic
        // full-depth spec.
        let s = FormSpecSymbolic::new(3, 4, 2, [0, 1, 2]).unwrap();
        let g = hauptbuch(&s).unwrap().0;
        let z = LaurentPoly::z_pow(1);
        let f1 = &(&g[0] * &z) + &g[1];
        assert_eq!(build_f(&s, 1).unwrap(), f1);
        let f2 = &(&(&g[0] * &z.pow(2)) + &(&g[1].scale(&Rational::from_integer(2.into())) * &z))
            + &g[2];
        assert_eq!(build_f(&s, 2).unwrap(), f2);
    }

    #[test]
    fn hauptbuch_is_z_free_and_f_degree_bounded() {
        for spec in sweep_specs(6) {
            for g in &hauptbuch(&spec).unwrap().0 {
                assert!(!g.contains_symbol(Symbol::Z));
            }
            let f = vector_form(&spec).unwrap().0;
            assert_eq!(f[0], build_g(&spec, 0).unwrap());
            for (n, fi) in f.iter().enumerate() {
                assert!(fi.degree_in(Symbol::Z) <= n as i64);
            }
        }
    }

    #[test]
    fn transfer_matrix_shape() {
        let s = spec_e2();
        let p = transfer_matrix(&s).unwrap();
        assert_eq!(unit_b1(p.get(0, 0)), sym(Symbol::E));
        assert_eq!(unit_b1(p.get(1, 0)), sym(Symbol::C));
        assert_eq!(unit_b1(p.get(1, 1)), sym(Symbol::E));
        assert!(p.get(0, 1).is_zero());
    }

    #[test]
    fn monomial_vector_entries() {
        let v = monomial_vector(2);
        assert_eq!(v.rows(), 3);
        assert_eq!(v.get(0, 0), &LaurentPoly::one());
        assert_eq!(v.get(1, 0), &LaurentPoly::z_pow(1));
        assert_eq!(v.get(2, 0), &LaurentPoly::z_pow(2));
    }

    #[test]
    fn sigma_s_on_f1_gives_minus_z_e() {
        let s = spec_e2();
        let f1 = build_f(&s, 1).unwrap();
        let got = unit_b1(&f1.substitute(&sigma_s(&s)).unwrap());
        let expect = -&(&LaurentPoly::z_pow(1) * &sym(Symbol::E));
        assert_eq!(got, expect);
    }

    #[test]
    fn sigma_s_on_f0_is_anomalous_e() {
        let s = spec_e2();
        let got = unit_b1(&build_f(&s, 0).unwrap().substitute(&sigma_s(&s)).unwrap());
        let expect = &(&LaurentPoly::z_pow(2) * &sym(Symbol::E))
            + &(&sym(Symbol::C) * &LaurentPoly::z_pow(1));
        assert_eq!(got, expect);
    }

    #[test]
    fn sigma_t_fixes_hauptbuch_and_shears_f1() {
        let s = spec_e2();
        let h = sigma_t(&s);
        for g in hauptbuch(&s).unwrap().0 {
            assert_eq!(g.substitute(&h).unwrap(), g);
        }
        let f1 = build_f(&s, 1).unwrap();
        let f0 = build_f(&s, 0).unwrap();
        let expect = &f1 + &(&f0 * &sym(Symbol::Omega));
        assert_eq!(f1.substitute(&h).unwrap(), expect);
    }

    #[test]
    fn sigma_t_fixes_transfer_matrix() {
        let s = FormSpecSymbolic::new(3, 6, 2, [0, 1, 2]).unwrap();
        let h = sigma_t(&s);
        let p = transfer_matrix(&s).unwrap();
        for i in 0..p.rows() {
            for j in 0..p.cols() {
                assert_eq!(&p.get(i, j).substitute(&h).unwrap(), p.get(i, j));
            }
        }
    }

    #[test]
    fn verifiers_pass_on_worked_example() {
        let s = spec_e2();
        assert!(verify_prop_g_s(&s).unwrap().all_pass());
        assert!(verify_cor_f_s(&s).unwrap().all_pass());
        assert!(verify_thm_t(&s).unwrap().all_pass());
        assert!(verify_thm_s(&s).unwrap().all_pass());
        assert!(verify_orthogonality(&s).unwrap().all_pass());
        assert!(verify_route_equivalence(&s).unwrap().all_pass());
    }

    #[test]
    fn depth_zero_reduces_to_automorphic_law() {
        let s = FormSpecSymbolic::new(3, 4, 0, [0]).unwrap();
        assert!(verify_all(&s).unwrap().all_pass());
    }

    #[test]
    fn double_s_composition_is_identity_for_even_weight() {
        for spec in [spec_e2(), FormSpecSymbolic::new(3, 6, 2, [0, 1, 2]).unwrap()] {
            let h = sigma_s(&spec);
            for n in 0..=spec.r {
                let f = build_f(&spec, n).unwrap();
                let twice = f.substitute(&h).unwrap().substitute(&h).unwrap();
                // (−1)^{w−r}(−1)^r = (−1)^w = 1 for even w.
                assert_eq!(twice, f);
            }
        }
    }

    #[test]
    fn failure_reports_difference_polynomial() {
        // A wrong identity should produce a nonzero difference, not an error.
        let s = spec_e2();
        let f1 = build_f(&s, 1).unwrap();
        let res = CheckResult::compare("probe", "x".into(), &f1, &LaurentPoly::zero());
        assert!(!res.pass);
        assert!(res.difference.is_some());
    }

    #[test]
    fn report_round_trips_through_json() {
        let s = spec_e2();
        let report = verify_all(&s).unwrap();
        let json = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(report, back);
    }
}
