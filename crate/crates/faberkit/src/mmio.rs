//! Matrix Market input for dense complex work: coordinate and array formats,
//! real/integer/complex fields, general/symmetric/hermitian symmetry.

use std::fs;
use std::path::Path;

use num_complex::Complex;

use crate::error::Error;
use crate::linalg::Mat;
use crate::scalar::Real;

/// Read a Matrix Market file into a dense complex matrix.
pub fn read_matrix_market<T: Real>(path: &Path) -> Result<Mat<T>, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::ConfigurationError(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_market(&text)
}

/// Parse Matrix Market text into a dense complex matrix.
pub fn parse_matrix_market<T: Real>(text: &str) -> Result<Mat<T>, Error> {
    let bad = |msg: &str| Error::ConfigurationError(format!("matrix market: {msg}"));
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty file"))?;
    let head: Vec<String> = header.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if head.len() < 5 || head[0] != "%%matrixmarket" || head[1] != "matrix" {
        return Err(bad("first line must be '%%MatrixMarket matrix <format> <field> <symmetry>'"));
    }
    let coordinate = match head[2].as_str() {
        "coordinate" => true,
        "array" => false,
        other => return Err(bad(&format!("unsupported format '{other}'"))),
    };
    let field = head[3].as_str();
    let complex_field = match field {
        "complex" => true,
        "real" | "integer" => false,
        other => return Err(bad(&format!("unsupported field '{other}'"))),
    };
    let symmetry = head[4].as_str();
    if !matches!(symmetry, "general" | "symmetric" | "hermitian") {
        return Err(bad(&format!("unsupported symmetry '{symmetry}'")));
    }

    let mut body = lines.filter(|l| {
        let t = l.trim();
        !t.is_empty() && !t.starts_with('%')
    });
    let size_line = body.next().ok_or_else(|| bad("missing size line"))?;
    let dims: Vec<&str> = size_line.split_whitespace().collect();
    let parse_usize = |s: &str| s.parse::<usize>().map_err(|_| bad(&format!("bad integer '{s}'")));
    let parse_val = |s: &str| s.parse::<f64>().map_err(|_| bad(&format!("bad number '{s}'")));

    if coordinate {
        if dims.len() != 3 {
            return Err(bad("coordinate size line needs 'rows cols nnz'"));
        }
        let rows = parse_usize(dims[0])?;
        let cols = parse_usize(dims[1])?;
        let nnz = parse_usize(dims[2])?;
        let mut m = Mat::zeros(rows, cols);
        let mut seen = 0usize;
        for line in body {
            let toks: Vec<&str> = line.split_whitespace().collect();
            let want = if complex_field { 4 } else { 3 };
            if toks.len() != want {
                return Err(bad(&format!("entry line needs {want} tokens, got {}", toks.len())));
            }
            let i = parse_usize(toks[0])?;
            let j = parse_usize(toks[1])?;
            if i == 0 || j == 0 || i > rows || j > cols {
                return Err(bad(&format!("index ({i}, {j}) out of range")));
            }
            let re = parse_val(toks[2])?;
            let im = if complex_field { parse_val(toks[3])? } else { 0.0 };
            let v = Complex::new(T::real(re), T::real(im));
            m[(i - 1, j - 1)] = v;
            if i != j {
                match symmetry {
                    "symmetric" => m[(j - 1, i - 1)] = v,
                    "hermitian" => m[(j - 1, i - 1)] = v.conj(),
                    _ => {}
                }
            }
            seen += 1;
        }
        if seen != nnz {
            return Err(bad(&format!("expected {nnz} entries, found {seen}")));
        }
        Ok(m)
    } else {
        if dims.len() != 2 {
            return Err(bad("array size line needs 'rows cols'"));
        }
        let rows = parse_usize(dims[0])?;
        let cols = parse_usize(dims[1])?;
        if symmetry != "general" {
            return Err(bad("array format is supported for general symmetry only"));
        }
        let mut values = Vec::with_capacity(rows * cols);
        for line in body {
            let toks: Vec<&str> = line.split_whitespace().collect();
            if complex_field {
                if toks.len() != 2 {
                    return Err(bad("complex array entries need 're im'"));
                }
                values.push(Complex::new(T::real(parse_val(toks[0])?), T::real(parse_val(toks[1])?)));
            } else {
                for t in toks {
                    values.push(Complex::new(T::real(parse_val(t)?), T::zero()));
                }
            }
        }
        if values.len() != rows * cols {
            return Err(bad(&format!("expected {} values, found {}", rows * cols, values.len())));
        }
        // array format is column-major
        Ok(Mat::from_fn(rows, cols, |i, j| values[j * rows + i]))
    }
}

/// Write a dense complex matrix in coordinate complex general format.
pub fn format_matrix_market<T: Real>(m: &Mat<T>) -> String {
    let mut out = String::from("%%MatrixMarket matrix coordinate complex general\n");
    let entries: Vec<(usize, usize)> = (0..m.rows())
        .flat_map(|i| (0..m.cols()).map(move |j| (i, j)))
        .filter(|&(i, j)| !num_traits::Zero::is_zero(&m[(i, j)]))
        .collect();
    out.push_str(&format!("{} {} {}\n", m.rows(), m.cols(), entries.len()));
    for (i, j) in entries {
        let v = m[(i, j)];
        out.push_str(&format!("{} {} {} {}\n", i + 1, j + 1, v.re, v.im));
    }
    out
}
