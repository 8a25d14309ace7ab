//! Quandle colorings of classical diagrams.
//!
//! Arbitrary finite quandles are handled by backtracking over arcs in
//! traversal order. For the affine quandles `Aff(Z_n, m)` the crossing
//! relations form a linear system over `Z_n`, solved exactly by a Smith
//! diagonalization over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::diagram::{ArcId, Crossing, Diagram, DiagramError, DiagramKind, Sign};
use crate::finiteq::FiniteQuandle;
use crate::lmatrix::LMatrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("{m} is not a unit modulo {n}")]
    NotAUnit { m: i64, n: u64 },
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A color (quandle element index) for each arc.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    pub fn new(colors: Vec<usize>) -> Self {
        Coloring { colors }
    }

    pub fn color(&self, arc: ArcId) -> usize {
        self.colors[arc - 1]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn is_constant(&self) -> bool {
        self.colors.windows(2).all(|w| w[0] == w[1])
    }

    pub fn distinct_colors(&self) -> usize {
        let mut c = self.colors.clone();
        c.sort_unstable();
        c.dedup();
        c.len()
    }

    /// `{"1": c1, "2": c2, …}` keyed by arc id.
    pub fn to_json_value(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .colors
            .iter()
            .enumerate()
            .map(|(i, c)| ((i + 1).to_string(), serde_json::Value::from(*c)))
            .collect();
        serde_json::Value::Object(map)
    }
}

fn crossing_holds(c: &Crossing, q: &FiniteQuandle, col: impl Fn(ArcId) -> usize) -> bool {
    match c.sign {
        Sign::Positive => q.op(col(c.under_in), col(c.over)) == col(c.under_out),
        Sign::Negative => q.op(col(c.under_out), col(c.over)) == col(c.under_in),
    }
}

/// Whether the assignment respects every crossing of `d`.
pub fn is_coloring(d: &Diagram, q: &FiniteQuandle, c: &Coloring) -> bool {
    c.colors.len() == d.arc_count()
        && c.colors.iter().all(|&x| x < q.size())
        && d.crossings()
            .iter()
            .all(|x| crossing_holds(x, q, |a| c.color(a)))
}

struct Search<'a> {
    d: &'a Diagram,
    q: &'a FiniteQuandle,
    order: Vec<ArcId>,
    /// Crossings to check once the arc at each position is colored.
    checks: Vec<Vec<usize>>,
    colors: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(d: &'a Diagram, q: &'a FiniteQuandle) -> Self {
        let order = d.trace_order();
        let mut position = vec![0; d.arc_count() + 1];
        for (i, &a) in order.iter().enumerate() {
            position[a] = i;
        }
        let mut checks = vec![Vec::new(); order.len()];
        for (k, c) in d.crossings().iter().enumerate() {
            let last = [c.under_in, c.over, c.under_out]
                .iter()
                .map(|&a| position[a])
                .max()
                .expect("three arcs");
            checks[last].push(k);
        }
        Search {
            d,
            q,
            order,
            checks,
            colors: vec![None; d.arc_count() + 1],
        }
    }

    /// A value for `arc` forced by a crossing whose other two arcs are colored.
    fn forced(&self, arc: ArcId) -> Option<usize> {
        for c in self.d.crossings() {
            let (Some(over), q) = (self.colors[c.over], self.q) else {
                continue;
            };
            // `src * over = dst` in both sign conventions, with roles swapped.
            let (src, dst) = match c.sign {
                Sign::Positive => (c.under_in, c.under_out),
                Sign::Negative => (c.under_out, c.under_in),
            };
            if dst == arc && src != arc {
                if let Some(s) = self.colors[src] {
                    return Some(q.op(s, over));
                }
            }
            if src == arc && dst != arc {
                if let Some(t) = self.colors[dst] {
                    return Some(q.op_inv(t, over));
                }
            }
        }
        None
    }

    fn consistent(&self, pos: usize) -> bool {
        self.checks[pos].iter().all(|&k| {
            let c = &self.d.crossings()[k];
            crossing_holds(c, self.q, |a| self.colors[a].expect("arc colored"))
        })
    }

    /// Depth-first enumeration; `visit` returns false to stop early.
    fn run(&mut self, pos: usize, visit: &mut dyn FnMut(&[Option<usize>]) -> bool) -> bool {
        if pos == self.order.len() {
            return visit(&self.colors);
        }
        let arc = self.order[pos];
        let candidates: Vec<usize> = match self.forced(arc) {
            Some(v) => vec![v],
            None => (0..self.q.size()).collect(),
        };
        for v in candidates {
            self.colors[arc] = Some(v);
            if self.consistent(pos) && !self.run(pos + 1, visit) {
                self.colors[arc] = None;
                return false;
            }
        }
        self.colors[arc] = None;
        true
    }
}

fn collect(colors: &[Option<usize>]) -> Coloring {
    Coloring::new(colors[1..].iter().map(|c| c.expect("complete")).collect())
}

/// Every coloring of a classical diagram by `q`, in search order.
pub fn enumerate_colorings(d: &Diagram, q: &FiniteQuandle) -> Result<Vec<Coloring>, ColoringError> {
    d.require_kind(DiagramKind::Classical)?;
    let mut out = Vec::new();
    Search::new(d, q).run(0, &mut |c| {
        out.push(collect(c));
        true
    });
    Ok(out)
}

/// The number of colorings, constant ones included.
pub fn count_colorings(d: &Diagram, q: &FiniteQuandle) -> Result<u64, ColoringError> {
    d.require_kind(DiagramKind::Classical)?;
    let mut count = 0u64;
    Search::new(d, q).run(0, &mut |_| {
        count += 1;
        true
    });
    Ok(count)
}

/// The first nonconstant coloring in search order.
pub fn find_nontrivial_coloring(
    d: &Diagram,
    q: &FiniteQuandle,
) -> Result<Option<Coloring>, ColoringError> {
    d.require_kind(DiagramKind::Classical)?;
    let mut found = None;
    Search::new(d, q).run(0, &mut |c| {
        let col = collect(c);
        if col.is_constant() {
            true
        } else {
            found = Some(col);
            false
        }
    });
    Ok(found)
}

/// Solutions of a homogeneous integer system modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModKernel {
    /// Number of solutions.
    pub count: BigInt,
    /// Generators of the solution group, one per nontrivial cyclic factor,
    /// entries reduced to `0..n`.
    pub generators: Vec<Vec<BigInt>>,
}

/// Diagonalize `a` (rows × `cols`) by unimodular row and column operations;
/// returns the diagonal and the accumulated column transform `V` with
/// `U a V = diag`.
fn diagonalize(mut a: Vec<Vec<BigInt>>, cols: usize) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let rows = a.len();
    let mut v: Vec<Vec<BigInt>> = (0..cols)
        .map(|i| {
            (0..cols)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut diag = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !a[i][j].is_zero())
                .min_by_key(|&(i, j)| a[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return (diag, v);
            };
            a.swap(t, pi);
            for row in a.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let p = a[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t].div_floor(&p);
                if !q.is_zero() {
                    let (pivot_rows, rest) = a.split_at_mut(i);
                    for (x, y) in rest[0][t..].iter_mut().zip(&pivot_rows[t][t..]) {
                        *x -= &q * y;
                    }
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                let q = a[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                    for row in v.iter_mut() {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                diag.push(p);
                break;
            }
        }
    }
    (diag, v)
}

/// All `x ∈ Z_n^cols` with `a x ≡ 0 (mod n)`.
pub fn kernel_mod(a: &[Vec<BigInt>], cols: usize, n: &BigInt) -> ModKernel {
    let (diag, v) = diagonalize(a.to_vec(), cols);
    let mut count = BigInt::one();
    let mut generators = Vec::new();
    for j in 0..cols {
        let d = diag.get(j).cloned().unwrap_or_else(BigInt::zero);
        let g = d.gcd(n);
        if g.is_one() {
            continue;
        }
        count *= &g;
        let step = n / &g;
        generators.push(v.iter().map(|row| (&row[j] * &step).mod_floor(n)).collect());
    }
    ModKernel { count, generators }
}

/// Colorings of a diagram by `Aff(Z_n, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineColorings {
    pub count: BigInt,
    /// Number of nontrivial cyclic factors of the solution group; the
    /// dimension of the solution space when `n` is prime.
    pub kernel_rank: usize,
    /// A nonconstant coloring, if one exists.
    pub sample: Option<Coloring>,
}

fn check_affine(n: u64, m: i64) -> Result<(BigInt, BigInt), ColoringError> {
    if n < 2 {
        return Err(ColoringError::BadModulus(n));
    }
    let nb = BigInt::from(n);
    let mb = BigInt::from(m).mod_floor(&nb);
    if !mb.gcd(&nb).is_one() {
        return Err(ColoringError::NotAUnit { m, n });
    }
    Ok((nb, mb))
}

/// Solve the crossing equations of `d` over `Z_n` with `x * y = m x + (1 − m) y`.
/// A crossing `src * over = dst` contributes `m·src + (1 − m)·over − dst ≡ 0`.
pub fn affine_colorings(d: &Diagram, n: u64, m: i64) -> Result<AffineColorings, ColoringError> {
    d.require_kind(DiagramKind::Classical)?;
    let (nb, mb) = check_affine(n, m)?;
    let cols = d.arc_count();
    let rows: Vec<Vec<BigInt>> = d
        .crossings()
        .iter()
        .map(|c| {
            let (src, dst) = match c.sign {
                Sign::Positive => (c.under_in, c.under_out),
                Sign::Negative => (c.under_out, c.under_in),
            };
            let mut row = vec![BigInt::zero(); cols];
            row[src - 1] += &mb;
            row[c.over - 1] += BigInt::one() - &mb;
            row[dst - 1] -= BigInt::one();
            row
        })
        .collect();
    let k = kernel_mod(&rows, cols, &nb);
    let sample = k
        .generators
        .iter()
        .map(|g| {
            Coloring::new(
                g.iter()
                    .map(|x| usize::try_from(x).expect("residue fits in usize"))
                    .collect(),
            )
        })
        .find(|c| !c.is_constant());
    Ok(AffineColorings {
        count: k.count,
        kernel_rank: k.generators.len(),
        sample,
    })
}

/// The number of `Aff(Z_n, m)`-colorings of a knot with reduced Alexander
/// presentation matrix `a`: `n · |{v : a(m) v ≡ 0 mod n}|`. This works from
/// the matrix alone, so it applies to satellites as well.
pub fn affine_colorings_from_matrix(a: &LMatrix, n: u64, m: i64) -> Result<BigInt, ColoringError> {
    let (nb, mb) = check_affine(n, m)?;
    let rows: Vec<Vec<BigInt>> = (0..a.rows())
        .map(|i| {
            a.row(i)
                .iter()
                .map(|p| p.eval_mod(&mb, &nb).expect("m is a unit mod n"))
                .collect()
        })
        .collect();
    Ok(&nb * kernel_mod(&rows, a.cols(), &nb).count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::knot_matrix;
    use itertools::Itertools;

    fn load(name: &str) -> Diagram {
        let path = format!("{}/data/{name}.json", env!("CARGO_MANIFEST_DIR"));
        Diagram::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    /// Every assignment checked directly.
    fn brute_force(d: &Diagram, q: &FiniteQuandle) -> u64 {
        (0..d.arc_count())
            .map(|_| 0..q.size())
            .multi_cartesian_product()
            .filter(|c| is_coloring(d, q, &Coloring::new(c.clone())))
            .count() as u64
    }

    fn brute_kernel(a: &[Vec<i64>], cols: usize, n: i64) -> u64 {
        (0..cols)
            .map(|_| 0..n)
            .multi_cartesian_product()
            .filter(|x| {
                a.iter().all(|row| {
                    row.iter()
                        .zip(x)
                        .map(|(r, v)| r * v)
                        .sum::<i64>()
                        .rem_euclid(n)
                        == 0
                })
            })
            .count() as u64
    }

    #[test]
    fn trefoil_r3() {
        let d = load("trefoil");
        let r3 = FiniteQuandle::dihedral(3).unwrap();
        assert_eq!(count_colorings(&d, &r3).unwrap(), 9);
        assert_eq!(brute_force(&d, &r3), 9);
        let c = find_nontrivial_coloring(&d, &r3).unwrap().unwrap();
        assert!(is_coloring(&d, &r3, &c));
        assert_eq!(c.distinct_colors(), 3);
        let one = FiniteQuandle::trivial(1);
        assert_eq!(find_nontrivial_coloring(&d, &one).unwrap(), None);
    }

    #[test]
    fn unknot_colorings() {
        let u = load("unknot");
        for q in [
            FiniteQuandle::dihedral(3).unwrap(),
            FiniteQuandle::affine(7, 3).unwrap(),
        ] {
            assert_eq!(count_colorings(&u, &q).unwrap(), q.size() as u64);
            assert_eq!(find_nontrivial_coloring(&u, &q).unwrap(), None);
        }
    }

    #[test]
    fn constants_always_color() {
        let q = FiniteQuandle::affine(5, 2).unwrap();
        for name in ["trefoil", "figure_eight", "kink", "left_trefoil"] {
            let d = load(name);
            for x in 0..q.size() {
                assert!(is_coloring(&d, &q, &Coloring::new(vec![x; d.arc_count()])));
            }
            assert!(count_colorings(&d, &q).unwrap() >= q.size() as u64);
        }
    }

    #[test]
    fn affine_examples() {
        let t = load("trefoil");
        let r = affine_colorings(&t, 3, 2).unwrap();
        assert_eq!(r.count, BigInt::from(9));
        assert_eq!(r.kernel_rank, 2);
        let s = r.sample.unwrap();
        assert!(is_coloring(&t, &FiniteQuandle::affine(3, 2).unwrap(), &s));
        let r = affine_colorings(&t, 5, 2).unwrap();
        assert_eq!((r.count, r.sample), (BigInt::from(5), None));
        let f = load("figure_eight");
        let r = affine_colorings(&f, 5, 3).unwrap();
        assert_eq!((r.count, r.sample), (BigInt::from(5), None));
        assert_eq!(
            affine_colorings(&t, 6, 2),
            Err(ColoringError::NotAUnit { m: 2, n: 6 })
        );
        assert_eq!(
            affine_colorings(&t, 1, 0),
            Err(ColoringError::BadModulus(1))
        );
    }

    #[test]
    fn solver_matches_backtracking_and_module_route() {
        for name in ["unknot", "trefoil", "figure_eight", "left_trefoil", "kink"] {
            let d = load(name);
            let a = knot_matrix(&d).unwrap();
            for n in 2..=7u64 {
                for m in 1..n as i64 {
                    let Ok(q) = FiniteQuandle::affine(n, m) else {
                        continue;
                    };
                    let solved = affine_colorings(&d, n, m).unwrap();
                    let counted = count_colorings(&d, &q).unwrap();
                    assert_eq!(solved.count, BigInt::from(counted), "{name} n={n} m={m}");
                    assert_eq!(
                        affine_colorings_from_matrix(&a, n, m).unwrap(),
                        solved.count,
                        "{name} n={n} m={m}"
                    );
                    assert_eq!(solved.sample.is_some(), counted > n, "{name} n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn backtracking_matches_brute_force() {
        let d = load("figure_eight");
        for q in [
            FiniteQuandle::dihedral(5).unwrap(),
            FiniteQuandle::affine(4, 3).unwrap(),
            FiniteQuandle::trivial(3),
        ] {
            assert_eq!(count_colorings(&d, &q).unwrap(), brute_force(&d, &q));
            assert_eq!(
                enumerate_colorings(&d, &q).unwrap().len() as u64,
                brute_force(&d, &q)
            );
        }
    }

    #[test]
    fn relabeling_preserves_counts() {
        let d = load("figure_eight");
        let r = d.relabel(&[3, 1, 4, 2]).unwrap();
        let q = FiniteQuandle::dihedral(5).unwrap();
        assert_eq!(
            count_colorings(&d, &q).unwrap(),
            count_colorings(&r, &q).unwrap()
        );
    }

    #[test]
    fn kernel_against_enumeration() {
        let cases: Vec<(Vec<Vec<i64>>, usize, i64)> = vec![
            (vec![vec![2, 4], vec![6, 8]], 2, 12),
            (vec![vec![3, 0, 6]], 3, 9),
            (vec![], 2, 4),
            (vec![vec![0, 0]], 2, 6),
            (vec![vec![1, -1, 0], vec![0, 2, -2], vec![5, 5, 5]], 3, 10),
        ];
        for (a, cols, n) in cases {
            let big: Vec<Vec<BigInt>> = a
                .iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect();
            let k = kernel_mod(&big, cols, &BigInt::from(n));
            assert_eq!(
                k.count,
                BigInt::from(brute_kernel(&a, cols, n)),
                "{a:?} mod {n}"
            );
            for g in &k.generators {
                for row in &big {
                    let s: BigInt = row.iter().zip(g).map(|(r, x)| r * x).sum();
                    assert!(s.mod_floor(&BigInt::from(n)).is_zero());
                }
            }
        }
    }

    #[test]
    fn coloring_json() {
        let c = Coloring::new(vec![0, 2, 1]);
        assert_eq!(c.to_json_value().to_string(), r#"{"1":0,"2":2,"3":1}"#);
    }
}
