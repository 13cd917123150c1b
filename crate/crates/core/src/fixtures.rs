//! Golden outputs for the worked examples, as stored under `fixtures/`.

use std::fmt::Display;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exact::rational::format_rational;
use crate::exact::{Matrix, RatMatrix, Scalar};
use crate::flag::{distinguished_columns, p_point, phi, SymVector};
use crate::invariants::generator_set;
use crate::jet::{group_matrix, symbolic_jet, symbolic_reparam};
use crate::orbit::weights::{lambda_sigma, limit_point};
use crate::sym::{SymBasis, SymMonomial};

pub fn matrix_json<T: Scalar + Display>(m: &Matrix<T>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
            .collect(),
    )
}

pub fn rat_matrix_json(m: &RatMatrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(|x| Value::String(format_rational(x))).collect()))
            .collect(),
    )
}

/// Target-side labels e1, e1^2, …
pub fn sym_labels(b: &SymBasis) -> Vec<String> {
    b.elems().iter().map(SymMonomial::to_string).collect()
}

/// Source-side labels as exponent tuples [1,0], [0,1], …
pub fn multi_index_labels(b: &SymBasis) -> Vec<String> {
    b.elems()
        .iter()
        .map(|s| {
            let e: Vec<String> = s.exponents(b.n()).iter().map(u32::to_string).collect();
            format!("[{}]", e.join(","))
        })
        .collect()
}

pub fn sym_vector_json(v: &SymVector) -> Value {
    Value::Object(v.iter().map(|(m, c)| (m.to_string(), Value::String(format_rational(c)))).collect())
}

/// The 9×9 matrix of the generic element of G_{3,2}.
pub fn example_2_1() -> Value {
    let (psi, _) = symbolic_reparam(2, 3);
    let g = group_matrix(&psi).expect("generic element is invertible");
    json!({
        "p": 2,
        "k": 3,
        "rows": sym_labels(&SymBasis::new(2, 3)),
        "cols": multi_index_labels(psi.basis()),
        "matrix": matrix_json(&g),
    })
}

fn phi_fixture(n: usize, k: usize) -> Value {
    let (jet, _) = symbolic_jet(1, n, k);
    let f = phi(&jet);
    json!({
        "p": 1,
        "n": n,
        "k": k,
        "rows": sym_labels(&f.rows),
        "cols": multi_index_labels(&f.cols),
        "phi": matrix_json(&f.matrix),
    })
}

/// φ for n = k = 2 and its leading-column minors up to scalar.
pub fn example_7_4() -> Value {
    let mut v = phi_fixture(2, 2);
    let g = generator_set(2, 2, 1).expect("valid sizes");
    let minors: Vec<Value> = g
        .distinct_up_to_scalar()
        .into_iter()
        .map(|i| {
            json!({
                "rows": g[i].provenance.rows.iter().map(SymMonomial::to_string).collect::<Vec<_>>(),
                "columns": g[i].provenance.columns,
                "polynomial": g[i].poly().to_string(),
            })
        })
        .collect();
    v["minors"] = Value::Array(minors);
    v
}

/// φ for n = k = 3.
pub fn example_7_5() -> Value {
    phi_fixture(3, 3)
}

/// Columns of φ for p = k = 2 at the identity embedding: v_s ↦ e_{pos(s)}.
pub fn example_8_7() -> Value {
    let cols = distinguished_columns(2, 2);
    json!({
        "p": 2,
        "k": 2,
        "cols": multi_index_labels(&SymBasis::new(2, 2)),
        "columns": cols.iter().map(sym_vector_json).collect::<Vec<_>>(),
    })
}

/// z_{λ²} at k = 4, the limit of p_4.
pub fn limit_lambda2_k4() -> Value {
    let z = limit_point(&p_point(1, 4), &lambda_sigma(2, 4).unwrap()).unwrap();
    z.to_json()
}

pub fn all() -> Vec<(&'static str, Value)> {
    vec![
        ("example_2_1.json", example_2_1()),
        ("example_7_4.json", example_7_4()),
        ("example_7_5.json", example_7_5()),
        ("example_8_7.json", example_8_7()),
        ("limit_lambda2_k4.json", limit_lambda2_k4()),
    ]
}

pub fn default_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).unwrap();
    s.push('\n');
    s
}

pub fn regenerate(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir).map_err(|e| Error::InvalidInput(format!("{}: {e}", dir.display())))?;
    all()
        .into_iter()
        .map(|(name, v)| {
            let path = dir.join(name);
            std::fs::write(&path, render(&v))
                .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())))?;
            Ok(path)
        })
        .collect()
}

/// Names of fixtures whose stored text differs from the current output.
pub fn check(dir: &Path) -> Vec<String> {
    all()
        .into_iter()
        .filter(|(name, v)| std::fs::read_to_string(dir.join(name)).ok().as_deref() != Some(render(v).as_str()))
        .map(|(name, _)| name.to_string())
        .collect()
}
