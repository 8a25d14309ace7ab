//! Finite quandles given by Cayley tables, with their inner and displacement
//! groups as permutation groups.
//!
//! Tables are 0-indexed with `table[i][j] = i * j`. The right translation
//! `R_j` is the permutation `i ↦ i * j`; permutations compose as functions,
//! so `(R_x R_y⁻¹)(z) = R_x(R_y⁻¹(z))`.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::laurent::LaurentPoly;

/// Default limit on the number of enumerated group elements.
pub const DEFAULT_CAP: usize = 1_000_000;
/// Largest number of elements accepted when building a table from a
/// polynomial quotient.
pub const MAX_TABLE_SIZE: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FiniteqError {
    #[error("quandle JSON: {0}")]
    Json(String),
    #[error("table must be a non-empty square array with entries below its size: {0}")]
    Shape(String),
    #[error("idempotence fails: {0} * {0} != {0}")]
    NotIdempotent(usize),
    #[error("right translation by {0} is not a bijection")]
    NotBijective(usize),
    #[error("self-distributivity fails at ({0}, {1}, {2})")]
    NotDistributive(usize, usize, usize),
    #[error("{m} is not a unit modulo {n}")]
    NotAUnit { m: String, n: String },
    #[error("group closure exceeded {0} elements")]
    GroupTooLarge(usize),
    #[error("subgroup is not normalized by the ambient generators")]
    NotNormal,
    #[error(
        "quotient operation not well defined: {a} * {b} and {c} * {d} land in different classes"
    )]
    NotWellDefined {
        a: usize,
        b: usize,
        c: usize,
        d: usize,
    },
    #[error("quandle is not connected")]
    NotConnected,
    #[error("quotient by the derived displacement group is not connected and abelian")]
    QuotientNotAbelian,
}

/// A permutation of `0..n`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    /// Panics if `images` is not a permutation.
    pub fn from_images(images: Vec<usize>) -> Self {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            assert!(i < n && !seen[i], "not a permutation");
            seen[i] = true;
        }
        Perm(images.into_iter().map(|i| i as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.0.iter().map(|&i| i as usize).collect()
    }

    /// `self ∘ g`: apply `g` first.
    pub fn compose(&self, g: &Perm) -> Perm {
        Perm(g.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `g⁻¹ ∘ self ∘ g`.
    pub fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().compose(self).compose(g)
    }

    /// `a⁻¹ ∘ b⁻¹ ∘ a ∘ b`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.inverse().compose(&b.inverse()).compose(a).compose(b)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.0.iter().enumerate().any(|(i, &x)| i as u32 == x)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.0)
    }
}

/// A permutation group with its elements enumerated.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    members: HashSet<Perm>,
}

impl PermGroup {
    /// Breadth-first closure of `generators` acting on `0..degree`.
    pub fn generate(
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Self, FiniteqError> {
        let id = Perm::identity(degree);
        let mut members = HashSet::from([id.clone()]);
        let mut elements = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &generators {
                let h = g.compose(s);
                if members.insert(h.clone()) {
                    if members.len() > cap {
                        return Err(FiniteqError::GroupTooLarge(cap));
                    }
                    elements.push(h.clone());
                    queue.push_back(h);
                }
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            elements,
            members,
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup::generate(degree, Vec::new(), 1).expect("trivial group fits")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.members.contains(p)
    }

    pub fn is_commutative(&self) -> bool {
        self.generators.iter().enumerate().all(|(i, a)| {
            self.generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        })
    }

    /// No non-identity element fixes a point.
    pub fn is_semiregular(&self) -> bool {
        self.elements
            .iter()
            .all(|g| g.is_identity() || !g.has_fixed_point())
    }

    /// Orbits of the group on `0..degree`, each sorted, ordered by their
    /// smallest point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        orbits_of(self.degree, &self.generators)
    }

    /// Whether `g⁻¹ h g` lies in the group for every generator `h` and every
    /// `g` in `ambient`.
    pub fn is_normalized_by(&self, ambient: &[Perm]) -> bool {
        ambient.iter().all(|g| {
            self.generators
                .iter()
                .all(|h| self.contains(&h.conjugate_by(g)))
        })
    }

    /// The derived subgroup, as the normal closure of the generator
    /// commutators.
    pub fn derived_subgroup(&self, cap: usize) -> Result<PermGroup, FiniteqError> {
        let mut gens: Vec<Perm> = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                let c = Perm::commutator(a, b);
                if !c.is_identity() && !gens.contains(&c) {
                    gens.push(c);
                }
            }
        }
        normal_closure(self.degree, gens, &self.generators, cap)
    }
}

/// The smallest subgroup containing `gens` and normalized by `ambient`.
pub fn normal_closure(
    degree: usize,
    mut gens: Vec<Perm>,
    ambient: &[Perm],
    cap: usize,
) -> Result<PermGroup, FiniteqError> {
    loop {
        let h = PermGroup::generate(degree, gens.clone(), cap)?;
        let missing: Vec<Perm> = ambient
            .iter()
            .flat_map(|g| gens.iter().map(move |x| x.conjugate_by(g)))
            .filter(|c| !h.contains(c))
            .collect();
        if missing.is_empty() {
            return Ok(h);
        }
        for c in missing {
            if !gens.contains(&c) {
                gens.push(c);
            }
        }
    }
}

fn orbits_of(degree: usize, gens: &[Perm]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..degree).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    for g in gens {
        for x in 0..degree {
            let a = find(&mut parent, x);
            let b = find(&mut parent, g.apply(x));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; degree];
    for x in 0..degree {
        let r = find(&mut parent, x);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(x);
    }
    classes
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuandleDoc {
    size: usize,
    table: Vec<Vec<usize>>,
}

/// A quandle on `0..n` given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteQuandle {
    n: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

impl FiniteQuandle {
    /// Validate the quandle axioms; errors name the first violation found.
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, FiniteqError> {
        let n = table.len();
        if n == 0 {
            return Err(FiniteqError::Shape("empty table".into()));
        }
        for (i, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(FiniteqError::Shape(format!(
                    "row {i} has length {}",
                    row.len()
                )));
            }
            if let Some(j) = row.iter().position(|&v| v >= n) {
                return Err(FiniteqError::Shape(format!(
                    "entry ({i}, {j}) is out of range"
                )));
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let op = |i: usize, j: usize| flat[i * n + j];
        for i in 0..n {
            if op(i, i) != i {
                return Err(FiniteqError::NotIdempotent(i));
            }
        }
        let mut inverse = vec![usize::MAX; n * n];
        for j in 0..n {
            for i in 0..n {
                let v = op(i, j);
                if inverse[v * n + j] != usize::MAX {
                    return Err(FiniteqError::NotBijective(j));
                }
                inverse[v * n + j] = i;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if op(op(i, j), k) != op(op(i, k), op(j, k)) {
                        return Err(FiniteqError::NotDistributive(i, j, k));
                    }
                }
            }
        }
        Ok(FiniteQuandle {
            n,
            table: flat,
            inverse,
        })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self, FiniteqError> {
        Self::from_table((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
    }

    pub fn from_json(text: &str) -> Result<Self, FiniteqError> {
        let doc: QuandleDoc =
            serde_json::from_str(text).map_err(|e| FiniteqError::Json(e.to_string()))?;
        if doc.size != doc.table.len() {
            return Err(FiniteqError::Shape(format!(
                "size {} does not match {} rows",
                doc.size,
                doc.table.len()
            )));
        }
        Self::from_table(doc.table)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({ "size": self.n, "table": self.table() })
    }

    pub fn to_json(&self) -> String {
        self.to_json_value().to_string()
    }

    /// `Aff(Z_n, m)`: `i * j = m·i + (1 − m)·j mod n`.
    pub fn affine(n: u64, m: i64) -> Result<Self, FiniteqError> {
        if n == 0 || (m.rem_euclid(n as i64) as u64).gcd(&n) != 1 {
            return Err(FiniteqError::NotAUnit {
                m: m.to_string(),
                n: n.to_string(),
            });
        }
        let n = n as i64;
        let m = m.rem_euclid(n);
        Self::from_fn(n as usize, |i, j| {
            (m * i as i64 + (1 - m) * j as i64).rem_euclid(n) as usize
        })
    }

    /// The dihedral quandle `R_n = Aff(Z_n, −1)`.
    pub fn dihedral(n: u64) -> Result<Self, FiniteqError> {
        Self::affine(n, -1)
    }

    /// The trivial quandle `i * j = i`.
    pub fn trivial(n: usize) -> Self {
        Self::from_fn(n, |i, _| i).expect("trivial quandles satisfy the axioms")
    }

    /// `Aff(F_p[t]/(f), t)` for a prime `p` and a polynomial `f` whose
    /// lowest and highest coefficients are nonzero mod `p`. Elements are
    /// residues `c_0 + c_1 t + …` encoded as `Σ c_i p^i`.
    pub fn affine_poly_quotient(p: u64, f: &LaurentPoly) -> Result<Self, FiniteqError> {
        let f = f.normalize();
        let bad = || FiniteqError::NotAUnit {
            m: "t".into(),
            n: format!("{f} over F_{p}"),
        };
        let pb = BigInt::from(p);
        let coeffs: Vec<u64> = match f.max_exp() {
            Some(d) => (0..=d)
                .map(|e| {
                    let c = f.coeff(e).mod_floor(&pb);
                    u64::try_from(c).expect("reduced coefficient fits")
                })
                .collect(),
            None => return Err(bad()),
        };
        let d = coeffs.len() - 1;
        if d == 0 || coeffs[0] == 0 || coeffs[d] == 0 {
            return Err(bad());
        }
        let size = (p as usize)
            .checked_pow(d as u32)
            .filter(|&s| s <= MAX_TABLE_SIZE)
            .ok_or_else(|| FiniteqError::Shape(format!("{p}^{d} elements is too many")))?;
        let lead_inv = (1..p).find(|x| x * coeffs[d] % p == 1).ok_or_else(bad)?;
        let decode = |mut x: usize| {
            (0..d)
                .map(|_| {
                    let c = (x % p as usize) as u64;
                    x /= p as usize;
                    c
                })
                .collect::<Vec<u64>>()
        };
        let encode = |v: &[u64]| {
            v.iter()
                .rev()
                .fold(0usize, |acc, &c| acc * p as usize + c as usize)
        };
        let times_t = |v: &[u64]| {
            let mut w = vec![0u64; d + 1];
            w[1..=d].copy_from_slice(v);
            let top = w[d] * lead_inv % p;
            for i in 0..=d {
                w[i] = (w[i] + p * p - top * coeffs[i] % p) % p;
            }
            w.truncate(d);
            w
        };
        let ts: Vec<Vec<u64>> = (0..size).map(|x| times_t(&decode(x))).collect();
        Self::from_fn(size, |i, j| {
            let (xi, xj) = (&ts[i], decode(j));
            let tj = &ts[j];
            let v: Vec<u64> = (0..d).map(|k| (xi[k] + xj[k] + p - tj[k]) % p).collect();
            encode(&v)
        })
    }

    /// The conjugation quandle `x * y = y⁻¹ x y` on a set of permutations
    /// closed under conjugation.
    pub fn conjugation(elements: &[Perm]) -> Result<Self, FiniteqError> {
        let index = |p: &Perm| {
            elements
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| FiniteqError::Shape("set is not closed under conjugation".into()))
        };
        let mut table = Vec::with_capacity(elements.len());
        for x in elements {
            let mut row = Vec::with_capacity(elements.len());
            for y in elements {
                row.push(index(&x.conjugate_by(y))?);
            }
            table.push(row);
        }
        Self::from_table(table)
    }

    /// The core quandle `x * y = y x⁻¹ y` of a group given by all of its
    /// elements.
    pub fn core(elements: &[Perm]) -> Result<Self, FiniteqError> {
        let index = |p: &Perm| {
            elements
                .iter()
                .position(|q| q == p)
                .ok_or_else(|| FiniteqError::Shape("element list is not a group".into()))
        };
        let mut table = Vec::with_capacity(elements.len());
        for x in elements {
            let mut row = Vec::with_capacity(elements.len());
            for y in elements {
                row.push(index(&y.compose(&x.inverse()).compose(y))?);
            }
            table.push(row);
        }
        Self::from_table(table)
    }

    /// Componentwise product; `(a, b)` is encoded as `a·|other| + b`.
    pub fn product(&self, other: &FiniteQuandle) -> FiniteQuandle {
        let k = other.n;
        Self::from_fn(self.n * k, |x, y| {
            self.op(x / k, y / k) * k + other.op(x % k, y % k)
        })
        .expect("products of quandles are quandles")
    }

    /// The isomorphic quandle with element `i` renamed `perm[i]`.
    pub fn relabel(&self, perm: &Perm) -> FiniteQuandle {
        let inv = perm.inverse();
        Self::from_fn(self.n, |x, y| {
            perm.apply(self.op(inv.apply(x), inv.apply(y)))
        })
        .expect("relabeling preserves the axioms")
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `i * j`.
    pub fn op(&self, i: usize, j: usize) -> usize {
        self.table[i * self.n + j]
    }

    /// `i ∗̄ j`, the inverse of right translation by `j`.
    pub fn op_inv(&self, i: usize, j: usize) -> usize {
        self.inverse[i * self.n + j]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// The right translation `R_j : i ↦ i * j`.
    pub fn right_translation(&self, j: usize) -> Perm {
        Perm::from_images((0..self.n).map(|i| self.op(i, j)).collect())
    }

    /// Generators `R_x` of Inn(Q).
    pub fn inn_generators(&self) -> Vec<Perm> {
        let mut gens: Vec<Perm> = (0..self.n).map(|j| self.right_translation(j)).collect();
        gens.sort();
        gens.dedup();
        gens.retain(|g| !g.is_identity());
        gens
    }

    /// Generators `R_x R_0⁻¹` of Dis(Q).
    pub fn dis_generators(&self) -> Vec<Perm> {
        let r0_inv = self.right_translation(0).inverse();
        let mut gens: Vec<Perm> = (1..self.n)
            .map(|x| self.right_translation(x).compose(&r0_inv))
            .collect();
        gens.sort();
        gens.dedup();
        gens.retain(|g| !g.is_identity());
        gens
    }

    pub fn is_connected(&self) -> bool {
        orbits_of(self.n, &self.dis_generators()).len() == 1
    }

    /// Whether `h` is a quandle homomorphism into `target`.
    pub fn is_homomorphism(&self, target: &FiniteQuandle, h: &[usize]) -> bool {
        h.len() == self.n
            && (0..self.n).all(|x| (0..self.n).all(|y| h[self.op(x, y)] == target.op(h[x], h[y])))
    }
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteQuandle({:?})", self.table())
    }
}

/// Validate a table; see [`FiniteQuandle::from_table`].
pub fn check_axioms(table: Vec<Vec<usize>>) -> Result<FiniteQuandle, FiniteqError> {
    FiniteQuandle::from_table(table)
}

/// `Aff(Z_n, m)`.
pub fn affine_build(n: u64, m: i64) -> Result<FiniteQuandle, FiniteqError> {
    FiniteQuandle::affine(n, m)
}

/// `(Inn(Q), Dis(Q))`, enumerated up to `cap` elements each.
pub fn inn_dis(q: &FiniteQuandle, cap: usize) -> Result<(PermGroup, PermGroup), FiniteqError> {
    let inn = PermGroup::generate(q.size(), q.inn_generators(), cap)?;
    let dis = PermGroup::generate(q.size(), q.dis_generators(), cap)?;
    Ok((inn, dis))
}

pub fn orbits(g: &PermGroup) -> Vec<Vec<usize>> {
    g.orbits()
}

pub fn is_connected(q: &FiniteQuandle) -> bool {
    q.is_connected()
}

/// Dis(Q) is commutative and semiregular.
pub fn is_abelian(q: &FiniteQuandle, cap: usize) -> Result<bool, FiniteqError> {
    let dis = PermGroup::generate(q.size(), q.dis_generators(), cap)?;
    Ok(dis.is_commutative() && dis.is_semiregular())
}

/// The congruence given by the orbits of a normal subgroup, and its
/// quotient quandle.
#[derive(Debug, Clone)]
pub struct Congruence {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub quotient: FiniteQuandle,
}

/// Orbits of `n` as a congruence of `q`. `n` must be normalized by
/// `ambient`; the quotient operation is checked class by class.
pub fn congruence_from_normal(
    q: &FiniteQuandle,
    n: &PermGroup,
    ambient: &[Perm],
) -> Result<Congruence, FiniteqError> {
    if !n.is_normalized_by(ambient) {
        return Err(FiniteqError::NotNormal);
    }
    let classes = n.orbits();
    let mut class_of = vec![0; q.size()];
    for (c, members) in classes.iter().enumerate() {
        for &x in members {
            class_of[x] = c;
        }
    }
    let k = classes.len();
    let mut table = vec![vec![0; k]; k];
    for (ca, a_members) in classes.iter().enumerate() {
        for (cb, b_members) in classes.iter().enumerate() {
            let (a0, b0) = (a_members[0], b_members[0]);
            let want = class_of[q.op(a0, b0)];
            for &a in a_members {
                for &b in b_members {
                    if class_of[q.op(a, b)] != want {
                        return Err(FiniteqError::NotWellDefined {
                            a: a0,
                            b: b0,
                            c: a,
                            d: b,
                        });
                    }
                }
            }
            table[ca][cb] = want;
        }
    }
    Ok(Congruence {
        classes,
        class_of,
        quotient: FiniteQuandle::from_table(table)?,
    })
}

/// The quotient of a connected quandle by the orbits of the derived
/// subgroup of Dis(Q), with the class map. The result is checked to be
/// connected and abelian.
pub fn gamma_quotient(
    q: &FiniteQuandle,
    cap: usize,
) -> Result<(FiniteQuandle, Vec<usize>), FiniteqError> {
    if !q.is_connected() {
        return Err(FiniteqError::NotConnected);
    }
    let dis = PermGroup::generate(q.size(), q.dis_generators(), cap)?;
    let derived = dis.derived_subgroup(cap)?;
    let c = congruence_from_normal(q, &derived, &q.inn_generators())?;
    if !c.quotient.is_connected() || !is_abelian(&c.quotient, cap)? {
        return Err(FiniteqError::QuotientNotAbelian);
    }
    Ok((c.quotient, c.class_of))
}

/// Summary of a finite quandle for reporting.
#[derive(Debug, Clone)]
pub struct QuandleReport {
    pub size: usize,
    pub inn_order: usize,
    pub dis_order: usize,
    pub orbits: Vec<Vec<usize>>,
    pub connected: bool,
    pub abelian: bool,
    pub gamma: Option<FiniteQuandle>,
}

pub fn report(q: &FiniteQuandle, cap: usize) -> Result<QuandleReport, FiniteqError> {
    let (inn, dis) = inn_dis(q, cap)?;
    let connected = dis.orbits().len() == 1;
    let gamma = if connected {
        Some(gamma_quotient(q, cap)?.0)
    } else {
        None
    };
    Ok(QuandleReport {
        size: q.size(),
        inn_order: inn.order(),
        dis_order: dis.order(),
        orbits: dis.orbits(),
        connected,
        abelian: dis.is_commutative() && dis.is_semiregular(),
        gamma,
    })
}

impl QuandleReport {
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::json!({
            "axioms": "ok",
            "size": self.size,
            "inn_order": self.inn_order,
            "dis_order": self.dis_order,
            "orbits": self.orbits,
            "connected": self.connected,
            "abelian": self.abelian,
            "gamma_quotient": self.gamma.as_ref().map(|g| g.to_json_value()),
        })
    }
}

impl fmt::Display for QuandleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "axioms: ok")?;
        writeln!(f, "size: {}", self.size)?;
        writeln!(f, "|Inn|: {}", self.inn_order)?;
        writeln!(f, "|Dis|: {}", self.dis_order)?;
        let orbits: Vec<String> = self
            .orbits
            .iter()
            .map(|o| {
                let items: Vec<String> = o.iter().map(usize::to_string).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        writeln!(f, "orbits: {}", orbits.join(" "))?;
        writeln!(f, "connected: {}", self.connected)?;
        writeln!(f, "abelian: {}", self.abelian)?;
        match &self.gamma {
            None => writeln!(f, "gamma quotient: n/a (not connected)")?,
            Some(g) => {
                writeln!(f, "gamma quotient: size {}", g.size())?;
                for row in g.table() {
                    let items: Vec<String> = row.iter().map(usize::to_string).collect();
                    writeln!(f, "  {}", items.join(" "))?;
                }
            }
        }
        Ok(())
    }
}
