//! Dense matrices over Λ, minor GCDs and the Alexander polynomials Δ_n.

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::{LaurentError, LaurentPoly};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("minor size {k} out of range for a {rows}x{cols} matrix")]
    BadMinorSize { k: usize, rows: usize, cols: usize },
    #[error("matrix JSON: {0}")]
    Json(String),
    #[error("matrix JSON declares {rows}x{cols} but entries do not match")]
    Shape { rows: usize, cols: usize },
    #[error(transparent)]
    Entry(#[from] LaurentError),
}

/// An `rows × cols` matrix over Λ, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct LMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<LaurentPoly>,
}

impl LMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![LaurentPoly::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = LaurentPoly::one();
        }
        m
    }

    /// Builds a matrix from rows; every row must have `cols` entries.
    pub fn from_rows(cols: usize, rows: Vec<Vec<LaurentPoly>>) -> Self {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            entries.extend(row);
        }
        Self {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[LaurentPoly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    /// Applies `f` to every entry.
    pub fn map(&self, f: impl Fn(&LaurentPoly) -> LaurentPoly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// Entrywise `t → t^w`.
    pub fn subst_power(&self, w: i64) -> Self {
        self.map(|p| p.subst_power(w))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols.len());
        for &i in rows {
            for &j in cols {
                entries.push(self[(i, j)].clone());
            }
        }
        Self {
            rows: rows.len(),
            cols: cols.len(),
            entries,
        }
    }

    /// Determinant of a square matrix by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> LaurentPoly {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        bareiss_det(self.rows, self.entries.clone())
    }

    /// Normalized GCD of all `k × k` minors; zero if they all vanish.
    pub fn minor_gcd(&self, k: usize) -> Result<LaurentPoly, MatrixError> {
        if k == 0 || k > self.rows.min(self.cols) {
            return Err(MatrixError::BadMinorSize {
                k,
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut g = LaurentPoly::zero();
        for rows in (0..self.rows).combinations(k) {
            for cols in (0..self.cols).combinations(k) {
                let d = self.submatrix(&rows, &cols).determinant();
                if d.is_zero() {
                    continue;
                }
                g = g.gcd(&d);
                if g.is_one() {
                    return Ok(g);
                }
            }
        }
        Ok(g)
    }

    /// The n-th Alexander polynomial of the module presented by this matrix
    /// (rows are relations, columns generators). Defined for every `n ≥ 1`:
    /// with `k = cols − n + 1` it is 0 when `0 < rows < k`, the minor GCD of
    /// size `k` when `0 < k ≤ rows`, and 1 otherwise.
    pub fn alexander_poly(&self, n: usize) -> LaurentPoly {
        assert!(n >= 1, "Alexander polynomials are indexed from 1");
        let m = self.rows;
        if n > self.cols || m == 0 {
            return LaurentPoly::one();
        }
        let k = self.cols - n + 1;
        if m < k {
            return LaurentPoly::zero();
        }
        self.minor_gcd(k).expect("minor size checked above")
    }

    /// `[Δ_1, …, Δ_{cols+1}]`. The last entry is always 1, so the first index
    /// with a unit value is always present.
    pub fn alexander_polys(&self) -> Vec<LaurentPoly> {
        (1..=self.cols + 1)
            .map(|n| self.alexander_poly(n))
            .collect()
    }

    /// Block diagonal matrix with `self` top-left and `other` bottom-right.
    pub fn block_diag(&self, other: &LMatrix) -> LMatrix {
        let mut out = LMatrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)].clone();
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        out
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(MatrixDoc::from(self)).expect("matrix serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&MatrixDoc::from(self)).expect("matrix serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MatrixError> {
        let doc: MatrixDoc =
            serde_json::from_str(text).map_err(|e| MatrixError::Json(e.to_string()))?;
        doc.try_into()
    }
}

fn bareiss_det(n: usize, mut a: Vec<LaurentPoly>) -> LaurentPoly {
    if n == 0 {
        return LaurentPoly::one();
    }
    let idx = |i: usize, j: usize| i * n + j;
    let mut negate = false;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if a[idx(k, k)].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a[idx(i, k)].is_zero()) else {
                return LaurentPoly::zero();
            };
            for j in 0..n {
                a.swap(idx(k, j), idx(p, j));
            }
            negate = !negate;
        }
        let pivot = a[idx(k, k)].clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&pivot * &a[idx(i, j)]) - &(&a[idx(i, k)] * &a[idx(k, j)]);
                a[idx(i, j)] = num
                    .div_exact(&prev)
                    .expect("Bareiss division is exact in an integral domain");
            }
            a[idx(i, k)] = LaurentPoly::zero();
        }
        prev = pivot;
    }
    let d = a[idx(n - 1, n - 1)].clone();
    if negate {
        -d
    } else {
        d
    }
}

impl std::ops::Index<(usize, usize)> for LMatrix {
    type Output = LaurentPoly;
    fn index(&self, (i, j): (usize, usize)) -> &LaurentPoly {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for LMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut LaurentPoly {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Debug for LMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "LMatrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Wire form: `{"rows": m, "cols": r, "entries": [["t^2 - t + 1", "0"], …]}`.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatrixDoc {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

impl From<&LMatrix> for MatrixDoc {
    fn from(m: &LMatrix) -> Self {
        MatrixDoc {
            rows: m.rows,
            cols: m.cols,
            entries: (0..m.rows)
                .map(|i| m.row(i).iter().map(|p| p.to_string()).collect())
                .collect(),
        }
    }
}

impl TryFrom<MatrixDoc> for LMatrix {
    type Error = MatrixError;
    fn try_from(doc: MatrixDoc) -> Result<Self, MatrixError> {
        let shape = MatrixError::Shape {
            rows: doc.rows,
            cols: doc.cols,
        };
        if doc.entries.len() != doc.rows || doc.entries.iter().any(|r| r.len() != doc.cols) {
            return Err(shape);
        }
        let mut entries = Vec::with_capacity(doc.rows * doc.cols);
        for row in doc.entries {
            for e in row {
                entries.push(e.parse()?);
            }
        }
        Ok(LMatrix {
            rows: doc.rows,
            cols: doc.cols,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    fn mat(rows: &[&[&str]]) -> LMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        LMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|s| p(s)).collect())
                .collect(),
        )
    }

    /// Cofactor expansion along the first row; independent of Bareiss.
    fn laplace_det(m: &LMatrix) -> LaurentPoly {
        let n = m.rows();
        if n == 0 {
            return LaurentPoly::one();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..n {
            let rows: Vec<usize> = (1..n).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
            let term = &m[(0, j)] * &laplace_det(&m.submatrix(&rows, &cols));
            if j % 2 == 0 {
                acc += &term;
            } else {
                acc -= &term;
            }
        }
        acc
    }

    // Trefoil x1*x2=x3, x2*x3=x1, x3*x1=x2 linearized with e_x1 = 0;
    // columns (e_x2, e_x3).
    fn trefoil() -> LMatrix {
        mat(&[&["1 - t", "-1"], &["t", "1 - t"], &["-1", "t"]])
    }

    #[test]
    fn minor_gcd_examples() {
        assert_eq!(mat(&[&["t - 1"]]).minor_gcd(1).unwrap(), p("t - 1"));
        assert_eq!(LMatrix::identity(2).minor_gcd(2).unwrap(), p("1"));
        assert_eq!(trefoil().minor_gcd(2).unwrap(), p("t^2 - t + 1"));
        assert!(matches!(
            trefoil().minor_gcd(3),
            Err(MatrixError::BadMinorSize { k: 3, .. })
        ));
        assert!(trefoil().minor_gcd(0).is_err());
    }

    #[test]
    fn trefoil_minors_by_hand() {
        // The three 2x2 minors, expanded by hand.
        let m = trefoil();
        let minors = [
            (&(&m[(0, 0)] * &m[(1, 1)]) - &(&m[(0, 1)] * &m[(1, 0)])),
            (&(&m[(0, 0)] * &m[(2, 1)]) - &(&m[(0, 1)] * &m[(2, 0)])),
            (&(&m[(1, 0)] * &m[(2, 1)]) - &(&m[(1, 1)] * &m[(2, 0)])),
        ];
        assert_eq!(minors[0], p("t^2 - t + 1"));
        assert_eq!(minors[1], p("-t^2 + t - 1"));
        assert_eq!(minors[2], p("t^2 - t + 1"));
    }

    #[test]
    fn alexander_polys_definition() {
        let one = mat(&[&["t^2 - t + 1"]]);
        assert_eq!(one.alexander_polys(), vec![p("t^2 - t + 1"), p("1")]);
        // No relations, one generator: the m = 0 branch gives 1.
        let empty = LMatrix::zeros(0, 1);
        assert_eq!(empty.alexander_polys(), vec![p("1"), p("1")]);
        assert_eq!(LMatrix::zeros(0, 0).alexander_polys(), vec![p("1")]);
        assert_eq!(
            trefoil().alexander_polys(),
            vec![p("t^2 - t + 1"), p("1"), p("1")]
        );
        // Too few relations: 0 < m < k.
        let short = mat(&[&["1", "t"]]);
        assert_eq!(short.alexander_poly(1), LaurentPoly::zero());
        assert_eq!(short.alexander_poly(2), p("1"));
    }

    #[test]
    fn block_diag_examples() {
        let a = mat(&[&["t + 1"]]);
        let b = mat(&[&["t - 2"]]);
        assert_eq!(a.block_diag(&b), mat(&[&["t + 1", "0"], &["0", "t - 2"]]));
        assert_eq!(a.block_diag(&LMatrix::zeros(0, 0)), a);
        let two = trefoil().block_diag(&trefoil());
        assert_eq!(two.rows(), 6);
        assert_eq!(two.cols(), 4);
        assert_eq!(two.alexander_poly(1), p("t^2 - t + 1").pow(2));
        assert_eq!(two.alexander_poly(2), p("t^2 - t + 1"));
        assert_eq!(two.alexander_poly(3), p("1"));
    }

    #[test]
    fn json_roundtrip_and_errors() {
        let m = trefoil();
        assert_eq!(LMatrix::from_json(&m.to_json()).unwrap(), m);
        let v = m.to_json_value();
        assert_eq!(v["entries"][0][0], "-t + 1");
        assert!(matches!(
            LMatrix::from_json(r#"{"rows": 2, "cols": 1, "entries": [["1"]]}"#),
            Err(MatrixError::Shape { .. })
        ));
        assert!(matches!(
            LMatrix::from_json(r#"{"rows": 1, "cols": 1, "entries": [["q"]]}"#),
            Err(MatrixError::Entry(_))
        ));
        assert!(LMatrix::from_json(r#"{"rows": 0, "cols": 0, "entries": [], "x": 1}"#).is_err());
    }

    fn small_entry() -> impl Strategy<Value = LaurentPoly> {
        (-1i64..=1, prop::collection::vec(-2i64..=2, 0..=3))
            .prop_map(|(s, cs)| LaurentPoly::from_coeffs(cs).shift(s))
    }

    fn small_matrix(max: usize) -> impl Strategy<Value = LMatrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            prop::collection::vec(small_entry(), r * c).prop_map(move |v| {
                LMatrix::from_rows(c, v.chunks(c).map(|ch| ch.to_vec()).collect())
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn bareiss_matches_laplace(m in (1usize..=4).prop_flat_map(|n| {
            prop::collection::vec(small_entry(), n * n).prop_map(move |v| {
                LMatrix::from_rows(n, v.chunks(n).map(|c| c.to_vec()).collect())
            })
        })) {
            prop_assert_eq!(m.determinant(), laplace_det(&m));
        }

        #[test]
        fn deltas_form_divisor_chain(m in small_matrix(4)) {
            let ds = m.alexander_polys();
            for w in ds.windows(2) {
                // Δ_{n+1} divides Δ_n.
                if w[1].is_zero() {
                    prop_assert!(w[0].is_zero());
                } else {
                    prop_assert!(w[0].div_exact(&w[1]).is_some());
                }
            }
        }

        #[test]
        fn deltas_invariant_under_row_ops(m in small_matrix(3), k in -2i64..=2, neg in prop::bool::ANY) {
            let unit = LaurentPoly::monomial(if neg { -1 } else { 1 }, k);
            let mut scaled = m.clone();
            for j in 0..m.cols() {
                scaled[(0, j)] = &m[(0, j)] * &unit;
            }
            let rows: Vec<usize> = (0..m.rows()).rev().collect();
            let cols: Vec<usize> = (0..m.cols()).rev().collect();
            let permuted = m.submatrix(&rows, &cols);
            prop_assert_eq!(scaled.alexander_polys(), m.alexander_polys());
            prop_assert_eq!(permuted.alexander_polys(), m.alexander_polys());
        }

        #[test]
        fn block_delta_is_product(a in small_matrix(3), b in small_matrix(3)) {
            let da = a.alexander_poly(1);
            let db = b.alexander_poly(1);
            prop_assume!(!da.is_zero() && !db.is_zero());
            prop_assert_eq!(a.block_diag(&b).alexander_poly(1), (&da * &db).normalize());
        }
    }
}
