//! Realizations, invariant forms, reflections and height-bounded root
//! enumeration.
//!
//! Roots are integer vectors over the simple roots of a [`Gcm`]. Membership
//! in the root system is decided by reflecting down to the fundamental
//! chamber ([`root_test`]); no multiplicities are computed.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcm::Gcm;
use crate::linalg::{dot, rat, Rat, RatMatrix};

/// Element of the root lattice, coordinates over the simple roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RootVec(Vec<i64>);

impl RootVec {
    pub fn new(coords: Vec<i64>) -> Self {
        Self(coords)
    }

    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn simple(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] != 0).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// Nonzero with all coordinates nonnegative.
    pub fn is_positive(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c >= 0)
    }

    pub fn is_negative(&self) -> bool {
        !self.is_zero() && self.0.iter().all(|&c| c <= 0)
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, k: i64) -> Self {
        Self(self.0.iter().map(|c| c * k).collect())
    }

    /// `self + k * alpha_i`.
    pub fn add_simple(&self, i: usize, k: i64) -> Self {
        let mut v = self.0.clone();
        v[i] += k;
        Self(v)
    }

    /// Coordinates at the given positions.
    pub fn project(&self, idx: &[usize]) -> Self {
        Self(idx.iter().map(|&i| self.0[i]).collect())
    }

    /// Place coordinates over `idx` into a vector of length `n`.
    pub fn embed(&self, idx: &[usize], n: usize) -> Self {
        let mut v = vec![0; n];
        for (c, &i) in self.0.iter().zip(idx) {
            v[i] = *c;
        }
        Self(v)
    }
}

impl From<Vec<i64>> for RootVec {
    fn from(v: Vec<i64>) -> Self {
        Self(v)
    }
}

/// `<alpha, alpha_i^vee> = sum_j n_j a_{i,j}`.
pub fn pairing_simple(gcm: &Gcm, alpha: &RootVec, i: usize) -> i64 {
    gcm.entries()[i]
        .iter()
        .zip(alpha.coords())
        .map(|(a, n)| a * n)
        .sum()
}

/// `r_i(alpha) = alpha - <alpha, alpha_i^vee> alpha_i`.
pub fn reflect(gcm: &Gcm, i: usize, alpha: &RootVec) -> Result<RootVec> {
    if alpha.len() != gcm.n() {
        return Err(Error::DimensionMismatch {
            expected: gcm.n(),
            found: alpha.len(),
        });
    }
    Ok(alpha.add_simple(i, -pairing_simple(gcm, alpha, i)))
}

fn reflect_unchecked(gcm: &Gcm, i: usize, alpha: &RootVec) -> RootVec {
    alpha.add_simple(i, -pairing_simple(gcm, alpha, i))
}

/// Apply the word `[i1, ..., ik]`, read as the product `r_{i1} ... r_{ik}`.
pub fn apply_word(gcm: &Gcm, word: &[usize], alpha: &RootVec) -> RootVec {
    word.iter()
        .rev()
        .fold(alpha.clone(), |a, &i| reflect_unchecked(gcm, i, &a))
}

/// Outcome of [`root_test`]. A word `[i1, ..., ik]` stands for
/// `w = r_{i1} ... r_{ik}` and satisfies `w(simple or representative) = input`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict")]
pub enum RootVerdict {
    Real {
        simple: usize,
        word: Vec<usize>,
    },
    Imaginary {
        representative: RootVec,
        word: Vec<usize>,
    },
    NotARoot,
}

impl RootVerdict {
    pub fn is_root(&self) -> bool {
        !matches!(self, RootVerdict::NotARoot)
    }

    pub fn is_real(&self) -> bool {
        matches!(self, RootVerdict::Real { .. })
    }

    pub fn is_imaginary(&self) -> bool {
        matches!(self, RootVerdict::Imaginary { .. })
    }
}

/// Decide whether `alpha` is a root by reflecting it down towards the
/// fundamental chamber.
pub fn root_test(gcm: &Gcm, alpha: &RootVec) -> RootVerdict {
    if alpha.len() != gcm.n() {
        return RootVerdict::NotARoot;
    }
    if alpha.is_negative() {
        return match root_test(gcm, &alpha.neg()) {
            RootVerdict::Real { simple, word } => {
                // w(alpha_s) = -alpha, so w r_s (alpha_s) = alpha
                let mut word = word;
                word.push(simple);
                RootVerdict::Real { simple, word }
            }
            RootVerdict::Imaginary {
                representative,
                word,
            } => RootVerdict::Imaginary {
                representative: representative.neg(),
                word,
            },
            RootVerdict::NotARoot => RootVerdict::NotARoot,
        };
    }
    if !alpha.is_positive() {
        return RootVerdict::NotARoot;
    }
    let n = gcm.n();
    let mut cur = alpha.clone();
    let mut word = Vec::new();
    loop {
        let supp = cur.support();
        if supp.len() == 1 {
            let s = supp[0];
            return if cur.coords()[s] == 1 {
                RootVerdict::Real { simple: s, word }
            } else {
                RootVerdict::NotARoot
            };
        }
        let Some(i) = (0..n).find(|&i| pairing_simple(gcm, &cur, i) > 0) else {
            return if gcm.is_connected(&supp) {
                RootVerdict::Imaginary {
                    representative: cur,
                    word,
                }
            } else {
                RootVerdict::NotARoot
            };
        };
        cur = reflect_unchecked(gcm, i, &cur);
        if cur.coords().iter().any(|&c| c < 0) {
            return RootVerdict::NotARoot;
        }
        word.push(i);
    }
}

pub fn is_root(gcm: &Gcm, alpha: &RootVec) -> bool {
    root_test(gcm, alpha).is_root()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootEntry {
    pub root: RootVec,
    pub verdict: RootVerdict,
}

/// All positive roots of height at most `max_height`, grouped by height and
/// in decreasing lexicographic order within a height (so `alpha_1` comes
/// first).
pub fn enumerate_positive_roots(gcm: &Gcm, max_height: usize) -> Vec<RootEntry> {
    let n = gcm.n();
    let mut out = Vec::new();
    let mut layer: Vec<RootEntry> = (0..n)
        .map(|i| RootEntry {
            root: RootVec::simple(n, i),
            verdict: RootVerdict::Real {
                simple: i,
                word: vec![],
            },
        })
        .collect();
    let mut h = 1;
    while !layer.is_empty() && h <= max_height {
        let mut next = BTreeSet::new();
        for e in &layer {
            for i in 0..n {
                next.insert(e.root.add_simple(i, 1));
            }
        }
        out.append(&mut layer);
        h += 1;
        if h > max_height {
            break;
        }
        layer = next
            .into_iter()
            .rev()
            .filter_map(|root| {
                let verdict = root_test(gcm, &root);
                verdict.is_root().then_some(RootEntry { root, verdict })
            })
            .collect();
    }
    out
}

/// Sort by height, then decreasing lexicographic order (the enumeration order).
pub fn sort_roots(roots: &mut [RootVec]) {
    roots.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.cmp(a)));
}

/// Positive roots (coordinates only) of height at most `max_height`.
pub fn positive_roots(gcm: &Gcm, max_height: usize) -> Vec<RootVec> {
    enumerate_positive_roots(gcm, max_height)
        .into_iter()
        .map(|e| e.root)
        .collect()
}

fn require_finite(gcm: &Gcm, set: &[usize]) -> Result<()> {
    if gcm.is_finite_type(set) {
        Ok(())
    } else {
        Err(Error::NotFiniteType(gcm.labels_of(set)))
    }
}

/// All positive roots of the finite-type subdiagram `set`, with coordinates
/// over `set` (in the given order).
pub fn finite_positive_roots(gcm: &Gcm, set: &[usize]) -> Result<Vec<RootVec>> {
    require_finite(gcm, set)?;
    let sub = gcm.submatrix(set);
    Ok(positive_roots(&sub, usize::MAX))
}

/// Maximal `(p, q)` with `alpha - p alpha_i, ..., alpha + q alpha_i` all roots.
pub fn root_string(gcm: &Gcm, alpha: &RootVec, i: usize) -> Result<(usize, usize)> {
    if !is_root(gcm, alpha) {
        return Err(Error::NotARootInput(alpha.coords().to_vec()));
    }
    let supp = alpha.support();
    if supp == [i] {
        return Err(Error::NotARootInput(alpha.coords().to_vec()));
    }
    let mut p = 0;
    while is_root(gcm, &alpha.add_simple(i, -(p as i64 + 1))) {
        p += 1;
    }
    let mut q = 0;
    while is_root(gcm, &alpha.add_simple(i, q as i64 + 1)) {
        q += 1;
    }
    Ok((p, q))
}

/// Highest root of a connected finite-type subdiagram, coordinates over `set`.
pub fn highest_root(gcm: &Gcm, set: &[usize]) -> Result<RootVec> {
    require_finite(gcm, set)?;
    if set.is_empty() || !gcm.is_connected(set) {
        return Err(Error::NotFiniteType(gcm.labels_of(set)));
    }
    let roots = finite_positive_roots(gcm, set)?;
    Ok(roots
        .into_iter()
        .max_by_key(RootVec::height)
        .expect("nonempty root system"))
}

/// Longest element of a finite Weyl group `W_S`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LongestElement {
    pub vertices: Vec<usize>,
    /// Reduced word in matrix indices, read as a product left to right.
    pub word: Vec<usize>,
    /// `sigma[p]` is the matrix index `j` with `w0(alpha_{vertices[p]}) = -alpha_j`.
    pub sigma: Vec<usize>,
}

impl LongestElement {
    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word.is_empty()
    }

    /// `sigma(i)` for a matrix index `i` in the vertex set.
    pub fn sigma_of(&self, i: usize) -> Option<usize> {
        self.vertices
            .iter()
            .position(|&v| v == i)
            .map(|p| self.sigma[p])
    }

    pub fn fixes(&self, i: usize) -> bool {
        self.sigma_of(i) == Some(i)
    }
}

pub fn longest_element(gcm: &Gcm, set: &[usize]) -> Result<LongestElement> {
    require_finite(gcm, set)?;
    let sub = gcm.submatrix(set);
    let m = set.len();
    // Dynkin labels of -rho; reflect until dominant
    let mut c = vec![-1i64; m];
    let mut applied = Vec::new();
    while let Some(i) = (0..m).find(|&i| c[i] < 0) {
        let ci = c[i];
        for (j, cj) in c.iter_mut().enumerate() {
            *cj -= ci * sub.a(j, i);
        }
        applied.push(i);
    }
    // w = r_{applied[last]} ... r_{applied[0]}
    let local_word: Vec<usize> = applied.iter().rev().copied().collect();
    let sigma = (0..m)
        .map(|i| {
            let img = apply_word(&sub, &local_word, &RootVec::simple(m, i)).neg();
            let s = img.support();
            assert!(
                s.len() == 1 && img.coords()[s[0]] == 1,
                "w0 maps simple roots to negative simple roots"
            );
            set[s[0]]
        })
        .collect();
    Ok(LongestElement {
        vertices: set.to_vec(),
        word: local_word.into_iter().map(|i| set[i]).collect(),
        sigma,
    })
}

/// Coefficients over `j_set` of the half sum of positive coroots of `A_J`,
/// i.e. `rho^vee_J = sum_j c_j alpha_j^vee`.
pub fn half_sum_coroots(gcm: &Gcm, j_set: &[usize]) -> Result<Vec<Rat>> {
    require_finite(gcm, j_set)?;
    let dual = gcm.transpose();
    let mut c = vec![Rat::zero(); j_set.len()];
    for r in finite_positive_roots(&dual, j_set)? {
        for (cj, n) in c.iter_mut().zip(r.coords()) {
            *cj += rat(*n);
        }
    }
    for cj in c.iter_mut() {
        *cj /= rat(2);
    }
    for (p, &j) in j_set.iter().enumerate() {
        let s: Rat = j_set
            .iter()
            .zip(&c)
            .map(|(&i, ci)| ci * rat(gcm.a(i, j)))
            .sum();
        assert!(s.is_one(), "<alpha_{p}, rho_J^vee> = 1");
    }
    Ok(c)
}

/// Exact coordinate model of `(h, Pi, Pi^vee)`.
///
/// The coroots are the first `n` standard basis vectors of `h`. Each root is
/// the functional whose first `n` coordinates are the corresponding column
/// of `A`; the columns not in the greedy (label order) maximal independent
/// set receive one extra unit coordinate each.
#[derive(Debug, Clone, PartialEq)]
pub struct Realization {
    pub gcm: Gcm,
    pub dim_h: usize,
    /// `n x dim_h`; row `j` is `alpha_j` as a functional on `h`.
    pub root_rows: RatMatrix,
    /// `dim_h x n`; column `i` is `alpha_i^vee`.
    pub coroot_cols: RatMatrix,
}

impl Realization {
    pub fn new(gcm: &Gcm) -> Self {
        let n = gcm.n();
        let rank = gcm.rank();
        let dim_h = 2 * n - rank;
        let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
        let mut chosen: Vec<Vec<Rat>> = Vec::new();
        let mut extra = n;
        for j in 0..n {
            let col: Vec<Rat> = (0..n).map(|i| rat(gcm.a(i, j))).collect();
            let mut row = col.clone();
            row.resize(dim_h, Rat::zero());
            let mut trial = chosen.clone();
            trial.push(col);
            if crate::linalg::rank_of(&trial) > chosen.len() {
                chosen = trial;
            } else {
                row[extra] = Rat::one();
                extra += 1;
            }
            rows.push(row);
        }
        debug_assert_eq!(extra, dim_h);
        let mut coroot_cols = RatMatrix::zeros(dim_h, n);
        for i in 0..n {
            coroot_cols[(i, i)] = Rat::one();
        }
        Self {
            gcm: gcm.clone(),
            dim_h,
            root_rows: RatMatrix::from_rows(rows),
            coroot_cols,
        }
    }

    pub fn root_functional(&self, alpha: &RootVec) -> Vec<Rat> {
        let mut f = vec![Rat::zero(); self.dim_h];
        for (j, &c) in alpha.coords().iter().enumerate() {
            if c != 0 {
                for (fk, r) in f.iter_mut().zip(self.root_rows.row(j)) {
                    *fk += r * rat(c);
                }
            }
        }
        f
    }

    /// Coroot-space vector `sum_i c_i alpha_i^vee`.
    pub fn coroot_vector(&self, coeffs: &[(usize, Rat)]) -> Vec<Rat> {
        let mut h = vec![Rat::zero(); self.dim_h];
        for (i, c) in coeffs {
            for (k, hk) in h.iter_mut().enumerate() {
                *hk += &self.coroot_cols[(k, *i)] * c;
            }
        }
        h
    }

    pub fn pairing(&self, alpha: &RootVec, h: &[Rat]) -> Result<Rat> {
        if alpha.len() != self.gcm.n() {
            return Err(Error::DimensionMismatch {
                expected: self.gcm.n(),
                found: alpha.len(),
            });
        }
        if h.len() != self.dim_h {
            return Err(Error::DimensionMismatch {
                expected: self.dim_h,
                found: h.len(),
            });
        }
        Ok(dot(&self.root_functional(alpha), h))
    }

    /// Basis of `h^J = {h : <alpha_j, h> = 0 for j in J}`.
    pub fn subspace_hj(&self, j_set: &[usize]) -> Vec<Vec<Rat>> {
        if j_set.is_empty() {
            return RatMatrix::identity(self.dim_h).to_rows();
        }
        let rows = j_set
            .iter()
            .map(|&j| self.root_rows.row(j).to_vec())
            .collect();
        RatMatrix::from_rows(rows).nullspace()
    }

    pub fn facet_type(&self, h: &[Rat]) -> Result<Facet> {
        if h.len() != self.dim_h {
            return Err(Error::DimensionMismatch {
                expected: self.dim_h,
                found: h.len(),
            });
        }
        let values: Vec<Rat> = (0..self.gcm.n())
            .map(|i| dot(self.root_rows.row(i), h))
            .collect();
        let zero_set: Vec<usize> = (0..values.len()).filter(|&i| values[i].is_zero()).collect();
        Ok(Facet {
            dominant: values.iter().all(|v| !v.is_negative()),
            finite_type: self.gcm.is_finite_type(&zero_set),
            zero_set,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Facet {
    pub zero_set: Vec<usize>,
    pub dominant: bool,
    pub finite_type: bool,
}

/// Gram matrices of a normalized invariant form:
/// `(alpha_i, alpha_j) = scale * d_i * a_{i,j}` and
/// `(alpha_i^vee, alpha_j^vee) = a_{i,j} / (scale * d_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct BilinearData {
    pub d: Vec<Rat>,
    pub scale: Rat,
    pub gram_roots: RatMatrix,
    pub gram_coroots: RatMatrix,
}

/// How to normalize the invariant form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Normalization {
    /// Multiply `diag(d) A` (with `min d = 1`) by this factor.
    Scale(Rat),
    /// Shortest real roots get this squared length; an optional long value is
    /// checked for consistency.
    Short { short: Rat, long: Option<Rat> },
}

impl Default for Normalization {
    fn default() -> Self {
        Normalization::Scale(Rat::one())
    }
}

impl std::str::FromStr for Normalization {
    type Err = Error;

    /// Accepts `scale=<q>`, `short=<x>` or `short=<x>,long=<y>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("bad normalization {s:?}"));
        let parse_rat = |v: &str| -> Result<Rat> {
            let v = v.trim();
            let r = match v.split_once('/') {
                Some((a, b)) => {
                    let a: i64 = a.trim().parse().map_err(|_| bad())?;
                    let b: i64 = b.trim().parse().map_err(|_| bad())?;
                    if b == 0 {
                        return Err(bad());
                    }
                    crate::linalg::ratio(a, b)
                }
                None => rat(v.parse().map_err(|_| bad())?),
            };
            if r.is_positive() {
                Ok(r)
            } else {
                Err(bad())
            }
        };
        let (mut scale, mut short, mut long) = (None, None, None);
        for part in s.split(',') {
            let (k, v) = part.split_once('=').ok_or_else(bad)?;
            match k.trim() {
                "scale" => scale = Some(parse_rat(v)?),
                "short" => short = Some(parse_rat(v)?),
                "long" => long = Some(parse_rat(v)?),
                _ => return Err(bad()),
            }
        }
        match (scale, short, long) {
            (Some(q), None, None) => Ok(Normalization::Scale(q)),
            (None, Some(short), long) => Ok(Normalization::Short { short, long }),
            _ => Err(bad()),
        }
    }
}

impl BilinearData {
    pub fn new(gcm: &Gcm, normalization: &Normalization) -> Result<Self> {
        let d = gcm.symmetrizer()?;
        let scale = match normalization {
            Normalization::Scale(q) => q.clone(),
            Normalization::Short { short, long } => {
                let dmin = d.iter().min().cloned().unwrap_or_else(Rat::one);
                let dmax = d.iter().max().cloned().unwrap_or_else(Rat::one);
                let scale = short / (rat(2) * &dmin);
                if let Some(long) = long {
                    let got = rat(2) * &scale * &dmax;
                    if &got != long && dmax != dmin {
                        return Err(Error::Parse(format!(
                            "long roots have squared length {got} when short ones have {short}"
                        )));
                    }
                }
                scale
            }
        };
        let n = gcm.n();
        let mut gram_roots = RatMatrix::zeros(n, n);
        let mut gram_coroots = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                gram_roots[(i, j)] = &scale * &d[i] * rat(gcm.a(i, j));
                gram_coroots[(i, j)] = rat(gcm.a(i, j)) / (&scale * &d[j]);
            }
        }
        Ok(Self {
            d,
            scale,
            gram_roots,
            gram_coroots,
        })
    }

    /// `(alpha, beta)` for lattice vectors.
    pub fn form(&self, alpha: &RootVec, beta: &RootVec) -> Rat {
        let mut s = Rat::zero();
        for (i, &a) in alpha.coords().iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in beta.coords().iter().enumerate() {
                if b != 0 {
                    s += &self.gram_roots[(i, j)] * rat(a * b);
                }
            }
        }
        s
    }

    pub fn norm(&self, alpha: &RootVec) -> Rat {
        self.form(alpha, alpha)
    }

    /// The reciprocal of the scale factor.
    pub fn q(&self) -> Rat {
        self.scale.recip()
    }
}

/// True when no positive root has height above `max_height`, i.e. the
/// layer-by-layer enumeration stops on its own.
pub fn terminates_within(gcm: &Gcm, max_height: usize) -> bool {
    let roots = enumerate_positive_roots(gcm, max_height + 1);
    roots.iter().all(|e| e.root.height() <= max_height as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{builtin, classical};
    use crate::linalg::ratio;

    fn rv(v: &[i64]) -> RootVec {
        RootVec::new(v.to_vec())
    }

    #[test]
    fn realization_dimensions() {
        let a1 = classical('A', 1);
        let r = Realization::new(&a1);
        assert_eq!(r.dim_h, 1);
        assert_eq!(
            r.pairing(&rv(&[1]), &r.coroot_vector(&[(0, rat(1))]))
                .unwrap(),
            rat(2)
        );
        let aff = builtin("A1(1)").unwrap();
        let r = Realization::new(&aff);
        assert_eq!(r.dim_h, 3);
        assert_eq!(r.root_rows.rank(), 2);
        let s5 = builtin("paper-s5").unwrap();
        let r = Realization::new(&s5);
        assert_eq!(r.dim_h, 6);
        assert_eq!(r.coroot_cols.rank(), 6);
    }

    #[test]
    fn realization_reproduces_matrix() {
        for name in ["A1(1)", "D4(1)", "E10", "paper-s5", "G2", "C3(1)"] {
            let g = builtin(name).unwrap();
            let r = Realization::new(&g);
            assert_eq!(r.root_rows.rank(), g.n(), "{name}");
            for i in 0..g.n() {
                let h = r.coroot_vector(&[(i, rat(1))]);
                for j in 0..g.n() {
                    let p = r.pairing(&RootVec::simple(g.n(), j), &h).unwrap();
                    assert_eq!(p, rat(g.a(i, j)), "{name}");
                }
            }
        }
    }

    #[test]
    fn hj_dimensions() {
        let e10 = builtin("E10").unwrap();
        let r = Realization::new(&e10);
        assert_eq!(r.subspace_hj(&[]).len(), 10);
        assert_eq!(r.subspace_hj(&e10.all()).len(), 0);
        let j = e10.indices_of(&["2", "3", "4", "5"]).unwrap();
        assert_eq!(r.subspace_hj(&j).len(), 6);
    }

    #[test]
    fn reflections() {
        let a2 = classical('A', 2);
        assert_eq!(reflect(&a2, 0, &rv(&[1, 0])).unwrap(), rv(&[-1, 0]));
        assert_eq!(reflect(&a2, 0, &rv(&[0, 1])).unwrap(), rv(&[1, 1]));
        assert!(matches!(
            reflect(&a2, 0, &rv(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn root_test_examples() {
        let a1 = classical('A', 1);
        assert!(root_test(&a1, &rv(&[1])).is_real());
        assert_eq!(root_test(&a1, &rv(&[2])), RootVerdict::NotARoot);
        let h33 = builtin("H3,3").unwrap();
        assert!(root_test(&h33, &rv(&[1, 1])).is_imaginary());
        assert_eq!(root_test(&h33, &rv(&[1, -1])), RootVerdict::NotARoot);
        assert_eq!(root_test(&h33, &rv(&[0, 0])), RootVerdict::NotARoot);
        let a3 = classical('A', 3);
        assert_eq!(root_test(&a3, &rv(&[1, 0, 1])), RootVerdict::NotARoot);
    }

    #[test]
    fn real_words_reproduce_input() {
        let g = builtin("paper-s5").unwrap();
        for e in enumerate_positive_roots(&g, 6) {
            for target in [e.root.clone(), e.root.neg()] {
                match root_test(&g, &target) {
                    RootVerdict::Real { simple, word } => {
                        let img = apply_word(&g, &word, &RootVec::simple(6, simple));
                        assert_eq!(img, target);
                    }
                    RootVerdict::Imaginary {
                        representative,
                        word,
                    } => {
                        assert_eq!(apply_word(&g, &word, &representative), target);
                    }
                    RootVerdict::NotARoot => panic!("{target:?} is a root"),
                }
            }
        }
    }

    #[test]
    fn enumeration_examples() {
        let a2 = classical('A', 2);
        assert_eq!(
            positive_roots(&a2, 2),
            vec![rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1])]
        );
        let h33 = builtin("H3,3").unwrap();
        let e = enumerate_positive_roots(&h33, 2);
        assert_eq!(e.len(), 3);
        assert!(e[2].verdict.is_imaginary());
        for (l, n, count) in [('G', 2, 6), ('F', 4, 24), ('E', 7, 63), ('E', 8, 120)] {
            assert_eq!(positive_roots(&classical(l, n), 100).len(), count);
        }
    }

    #[test]
    fn strings() {
        let a2 = classical('A', 2);
        assert_eq!(root_string(&a2, &rv(&[0, 1]), 0).unwrap(), (0, 1));
        let b2 = builtin("H2,1").unwrap();
        assert_eq!(b2.entries(), &[vec![2, -2], vec![-1, 2]]);
        assert_eq!(root_string(&b2, &rv(&[0, 1]), 0).unwrap(), (0, 2));
        let a1a1 = Gcm::unlabeled(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(root_string(&a1a1, &rv(&[0, 1]), 0).unwrap(), (0, 0));
        assert!(matches!(
            root_string(&a2, &rv(&[1, 0]), 0),
            Err(Error::NotARootInput(_))
        ));
        assert!(matches!(
            root_string(&a2, &rv(&[2, 0]), 1),
            Err(Error::NotARootInput(_))
        ));
    }

    #[test]
    fn highest_roots() {
        assert_eq!(
            highest_root(&classical('A', 3), &[0, 1, 2]).unwrap(),
            rv(&[1, 1, 1])
        );
        // D4 with the branch vertex labelled 2
        let d4 = Gcm::unlabeled(vec![
            vec![2, -1, 0, 0],
            vec![-1, 2, -1, -1],
            vec![0, -1, 2, 0],
            vec![0, -1, 0, 2],
        ])
        .unwrap();
        assert_eq!(highest_root(&d4, &[0, 1, 2, 3]).unwrap(), rv(&[1, 2, 1, 1]));
        assert_eq!(highest_root(&classical('A', 1), &[0]).unwrap(), rv(&[1]));
        assert!(matches!(
            highest_root(&builtin("H3,3").unwrap(), &[0, 1]),
            Err(Error::NotFiniteType(_))
        ));
    }

    #[test]
    fn longest_elements() {
        let a1 = longest_element(&classical('A', 1), &[0]).unwrap();
        assert_eq!((a1.len(), a1.sigma.clone()), (1, vec![0]));
        let a2 = longest_element(&classical('A', 2), &[0, 1]).unwrap();
        assert_eq!((a2.len(), a2.sigma.clone()), (3, vec![1, 0]));
        let d4 = classical('D', 4);
        let w = longest_element(&d4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(w.len(), 12);
        assert!(w.fixes(1));
        let e6 = classical('E', 6);
        let w = longest_element(&e6, &e6.all()).unwrap();
        assert_eq!(w.len(), 36);
        assert_eq!(w.sigma, vec![5, 1, 4, 3, 2, 0]);
    }

    #[test]
    fn half_sums() {
        let a3 = classical('A', 3);
        assert_eq!(half_sum_coroots(&a3, &[1]).unwrap(), vec![ratio(1, 2)]);
        let a2 = classical('A', 2);
        assert_eq!(
            half_sum_coroots(&a2, &[0, 1]).unwrap(),
            vec![rat(1), rat(1)]
        );
        // B3: coroots form C3, rho^vee coefficients (3, 5, 3)
        let b3 = classical('B', 3);
        assert_eq!(
            half_sum_coroots(&b3, &[0, 1, 2]).unwrap(),
            vec![rat(3), rat(5), rat(3)]
        );
        let d4 = classical('D', 4);
        assert!(half_sum_coroots(&d4, &d4.all()).is_ok());
    }

    #[test]
    fn facets() {
        let a2 = classical('A', 2);
        let r = Realization::new(&a2);
        let f = r.facet_type(&[rat(1), rat(1)]).unwrap();
        assert_eq!((f.zero_set.clone(), f.dominant), (vec![], true));
        // <alpha_1, h> = 0, <alpha_2, h> = 3
        let f = r.facet_type(&[rat(1), rat(2)]).unwrap();
        assert_eq!(f.zero_set, vec![0]);
        assert!(f.finite_type && f.dominant);
        let aff = builtin("A1(1)").unwrap();
        let r = Realization::new(&aff);
        // third coordinate pairs to zero with both roots only along the kernel
        let k = r.subspace_hj(&[0, 1]);
        assert_eq!(k.len(), 1);
        let f = r.facet_type(&k[0]).unwrap();
        assert_eq!(f.zero_set, vec![0, 1]);
        assert!(!f.finite_type);
    }

    #[test]
    fn bilinear_normalizations() {
        let s5 = builtin("paper-s5").unwrap();
        let fold = Gcm::unlabeled(vec![
            vec![2, -3, -2, 0],
            vec![-3, 2, -2, 0],
            vec![-1, -1, 2, -1],
            vec![0, 0, -1, 2],
        ])
        .unwrap();
        let n: Normalization = "short=1,long=2".parse().unwrap();
        let b = BilinearData::new(&fold, &n).unwrap();
        assert_eq!(b.d, vec![rat(1), rat(1), rat(2), rat(2)]);
        assert_eq!(b.q(), rat(2));
        assert_eq!(b.gram_roots[(2, 3)], rat(-1));
        assert_eq!(b.gram_coroots[(2, 3)], ratio(-1, 2) * rat(2));
        assert!(b.gram_roots.is_symmetric());
        let b = BilinearData::new(&s5, &Normalization::default()).unwrap();
        assert_eq!(b.norm(&rv(&[1, 1, 0, 0, 0, 0])), rat(-2));
        assert!("short=1,long=3".parse::<Normalization>().is_ok());
        assert!(BilinearData::new(&fold, &"short=1,long=3".parse().unwrap()).is_err());
        assert!("bogus".parse::<Normalization>().is_err());
    }
}
