//! Browser demo bindings: structured-matrix display, symbolic identity
//! verification for a chosen form spec, and numeric residuals of the
//! functional equations at a chosen point.
//!
//! Build with `wasm-pack build --target web` and serve `www/` next to the
//! generated `pkg/` directory.

use num_complex::Complex64;
use wasm_bindgen::prelude::*;

use heckeform::matrix::{self, Side};
use heckeform::poly::{LaurentPoly, Symbol};
use heckeform::qseries::{builtin_samples, check_functional_equations};
use heckeform::vectorform::{transfer_matrix, verify_all, FormSpecSymbolic};

fn render_matrix_impl(kind: &str, r: usize) -> Result<String, String> {
    if r > 12 {
        return Err(format!("r = {r} too large for display (max 12)"));
    }
    let m = match kind {
        "pascal" => matrix::pascal(r, &LaurentPoly::symbol(Symbol::Z)),
        "creation" => matrix::creation(r, &LaurentPoly::symbol(Symbol::Lambda)),
        "exchange" => matrix::exchange(r),
        "dry" => {
            let signs: Vec<LaurentPoly> = (0..=r)
                .map(|i| {
                    if i % 2 == 0 {
                        LaurentPoly::one()
                    } else {
                        -&LaurentPoly::one()
                    }
                })
                .collect();
            half_or_err(&matrix::diagonal(&signs).map_err(|e| e.to_string())?)?
        }
        "transfer" => {
            // Full-depth generic spec at weight 2r keeps every g_ℓ nonzero.
            let w = (2 * r.max(1)) as u32;
            let spec = FormSpecSymbolic::new(3, w, r as u32, 0..=(r as u32))
                .map_err(|e| e.to_string())?;
            transfer_matrix(&spec).map_err(|e| e.to_string())?
        }
        other => return Err(format!("unknown matrix kind {other:?}")),
    };
    Ok(matrix::pretty(&m))
}

fn half_or_err(m: &matrix::RingMatrix) -> Result<matrix::RingMatrix, String> {
    matrix::half_transpose(Side::Right, m).map_err(|e| e.to_string())
}

fn verify_symbolic_impl(w: u32, r: u32, present_mask: u32) -> Result<String, String> {
    let present = (0..=r).filter(|k| present_mask & (1 << k) != 0);
    let spec = FormSpecSymbolic::new(3, w, r, present).map_err(|e| e.to_string())?;
    let report = verify_all(&spec).map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

fn numeric_residuals_impl(sample: &str, re: f64, im: f64, terms: usize) -> Result<String, String> {
    let samples = builtin_samples(terms).map_err(|e| e.to_string())?;
    let spec = samples
        .iter()
        .find(|s| s.name == sample)
        .ok_or_else(|| format!("unknown sample {sample:?}"))?;
    let report = check_functional_equations(spec, Complex64::new(re, im), 1e-8)
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&report).map_err(|e| e.to_string())
}

fn sample_names_impl(terms: usize) -> Result<String, String> {
    let names: Vec<String> = builtin_samples(terms)
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|s| s.name)
        .collect();
    serde_json::to_string(&names).map_err(|e| e.to_string())
}

/// Aligned text grid of a structured matrix (`pascal`, `creation`,
/// `exchange`, `dry`, `transfer`) of size (r+1)×(r+1).
#[wasm_bindgen]
pub fn render_matrix(kind: &str, r: usize) -> Result<String, JsError> {
    render_matrix_impl(kind, r).map_err(|e| JsError::new(&e))
}

/// Run every exact identity check for the spec (w, r, present-mask) and
/// return the JSON report.
#[wasm_bindgen]
pub fn verify_symbolic(w: u32, r: u32, present_mask: u32) -> Result<String, JsError> {
    verify_symbolic_impl(w, r, present_mask).map_err(|e| JsError::new(&e))
}

/// Residuals of both functional equations for a builtin sample at z = re+im·i.
#[wasm_bindgen]
pub fn numeric_residuals(sample: &str, re: f64, im: f64, terms: usize) -> Result<String, JsError> {
    numeric_residuals_impl(sample, re, im, terms).map_err(|e| JsError::new(&e))
}

/// Names of the builtin numeric samples, as a JSON array.
#[wasm_bindgen]
pub fn sample_names(terms: usize) -> Result<String, JsError> {
    sample_names_impl(terms).map_err(|e| JsError::new(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn render_known_kinds() {
        for kind in ["pascal", "creation", "exchange", "dry", "transfer"] {
            let text = render_matrix_impl(kind, 2).unwrap();
            assert_eq!(text.lines().count(), 3, "{kind}");
        }
        assert!(render_matrix_impl("nope", 2).is_err());
        assert!(render_matrix_impl("pascal", 13).is_err());
    }

    #[test]
    fn verify_symbolic_returns_passing_report() {
        let json = verify_symbolic_impl(4, 2, 0b111).unwrap();
        assert!(json.contains("\"pass\":true"));
        assert!(!json.contains("\"pass\":false"));
        assert!(verify_symbolic_impl(4, 3, 0).is_err());
    }

    #[test]
    fn numeric_residuals_for_builtin() {
        let json = numeric_residuals_impl("E2", 0.2, 1.0, 64).unwrap();
        assert!(json.contains("\"pass\":true"));
        assert!(numeric_residuals_impl("nope", 0.2, 1.0, 64).is_err());
    }

    #[test]
    fn sample_names_lists_corpus() {
        let json = sample_names_impl(64).unwrap();
        let names: Vec<String> = serde_json::from_str(&json).unwrap();
        assert!(names.len() >= 5);
        assert!(names.contains(&"E2".to_string()));
    }
}
