//! Generalized Cartan matrices and their type classification.
//!
//! A [`Gcm`] is an integer matrix `a[i][j] = <alpha_j, alpha_i^vee>` with the
//! three Cartan axioms checked at construction, plus an ordered list of vertex
//! labels. All vertex sets passed to the methods here are slices of indices
//! into that label list.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{CartanAxiom, Error, Result};
use crate::families;
use crate::linalg::{self, rat, Rat, RatMatrix};

/// Generalized Cartan matrix with vertex labels.
#[derive(Clone)]
pub struct Gcm {
    labels: Vec<String>,
    entries: Vec<Vec<i64>>,
    memo: Arc<Memo>,
}

#[derive(Default)]
struct Memo {
    minor_sign: Mutex<HashMap<u64, i8>>,
    finite: Mutex<HashMap<u64, bool>>,
}

impl PartialEq for Gcm {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.entries == other.entries
    }
}

impl Eq for Gcm {}

impl fmt::Debug for Gcm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gcm")
            .field("labels", &self.labels)
            .field("matrix", &self.entries)
            .finish()
    }
}

/// On-disk form: `{"labels": [...], "matrix": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct GcmJson {
    labels: Vec<String>,
    matrix: Vec<Vec<i64>>,
}

impl Serialize for Gcm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GcmJson {
            labels: self.labels.clone(),
            matrix: self.entries.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gcm {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = GcmJson::deserialize(d)?;
        Gcm::new(raw.labels, raw.matrix).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    Finite,
    Affine,
    Indefinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentVerdict {
    pub vertices: Vec<String>,
    pub kind: Kind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite_type_label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeVerdict {
    pub kind: Kind,
    pub hyperbolic: bool,
    pub strictly_hyperbolic: bool,
    pub lorentzian: bool,
    pub symmetrizable: bool,
    pub indecomposable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finite_type_label: Option<String>,
    pub components: Vec<ComponentVerdict>,
}

pub(crate) fn mask(set: &[usize]) -> u64 {
    set.iter().fold(0u64, |m, &i| m | (1 << i))
}

pub(crate) fn unmask(m: u64) -> Vec<usize> {
    (0..64).filter(|i| m >> i & 1 == 1).collect()
}

impl Gcm {
    /// Checks the Cartan axioms and label consistency.
    pub fn new(labels: Vec<String>, entries: Vec<Vec<i64>>) -> Result<Self> {
        let n = entries.len();
        if labels.len() != n || entries.iter().any(|r| r.len() != n) {
            return Err(Error::AxisMismatch {
                rows: n,
                cols: entries.iter().map(Vec::len).max().unwrap_or(0),
                labels: labels.len(),
            });
        }
        if n > 64 {
            return Err(Error::TooLarge(n));
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let bad = |i: usize, j: usize, axiom| Error::NotCartan {
            i: labels[i].clone(),
            j: labels[j].clone(),
            axiom,
        };
        for i in 0..n {
            if entries[i][i] != 2 {
                return Err(bad(i, i, CartanAxiom::Diagonal));
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                if entries[i][j] > 0 {
                    return Err(bad(i, j, CartanAxiom::OffDiagonalSign));
                }
                if (entries[i][j] == 0) != (entries[j][i] == 0) {
                    return Err(bad(i, j, CartanAxiom::ZeroPattern));
                }
            }
        }
        Ok(Self {
            labels,
            entries,
            memo: Arc::default(),
        })
    }

    /// Labels "1", "2", ..., "n".
    pub fn unlabeled(entries: Vec<Vec<i64>>) -> Result<Self> {
        let labels = (1..=entries.len()).map(|i| i.to_string()).collect();
        Self::new(labels, entries)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels_of(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&i| self.labels[i].clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn indices_of<S: AsRef<str>>(&self, labels: &[S]) -> Result<Vec<usize>> {
        let mut v = labels
            .iter()
            .map(|l| self.index_of(l.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        v.sort_unstable();
        v.dedup();
        Ok(v)
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    #[inline]
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.n()).collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_ints(&self.entries)
    }

    /// Principal submatrix on `set`, keeping the labels.
    pub fn submatrix(&self, set: &[usize]) -> Gcm {
        let entries = set
            .iter()
            .map(|&i| set.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        Gcm {
            labels: self.labels_of(set),
            entries,
            memo: Arc::default(),
        }
    }

    /// The transposed matrix, which is again a GCM (the dual root datum).
    pub fn transpose(&self) -> Gcm {
        let n = self.n();
        let entries = (0..n)
            .map(|i| (0..n).map(|j| self.entries[j][i]).collect())
            .collect();
        Gcm {
            labels: self.labels.clone(),
            entries,
            memo: Arc::default(),
        }
    }

    /// Simultaneous row/column permutation: vertex `i` of the result is
    /// vertex `perm[i]` of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Gcm {
        self.submatrix(perm)
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.entries[i][j] != 0
    }

    /// Connected components of `set` under `a_{i,j} != 0`, each sorted, listed
    /// by smallest index.
    pub fn components(&self, set: &[usize]) -> Vec<Vec<usize>> {
        let inside = mask(set);
        let mut seen = 0u64;
        let mut out = Vec::new();
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        for &start in &sorted {
            if seen >> start & 1 == 1 {
                continue;
            }
            let mut comp = vec![start];
            seen |= 1 << start;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in 0..self.n() {
                    if inside >> w & 1 == 1 && seen >> w & 1 == 0 && self.adjacent(v, w) {
                        seen |= 1 << w;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self, set: &[usize]) -> bool {
        set.is_empty() || self.components(set).len() == 1
    }

    pub fn is_indecomposable(&self) -> bool {
        self.n() > 0 && self.is_connected(&self.all())
    }

    /// True iff a path from `i` to `k` exists whose interior vertices all lie
    /// in `j_set` (an edge `i`–`k` counts).
    pub fn j_connected(&self, j_set: &[usize], i: usize, k: usize) -> Result<bool> {
        for v in [i, k] {
            if j_set.contains(&v) {
                return Err(Error::IndexOutOfJComplement(self.labels[v].clone()));
            }
        }
        if self.adjacent(i, k) {
            return Ok(true);
        }
        let inside = mask(j_set);
        let mut seen = 0u64;
        let mut queue = VecDeque::new();
        for j in j_set {
            if self.adjacent(i, *j) {
                seen |= 1 << j;
                queue.push_back(*j);
            }
        }
        while let Some(v) = queue.pop_front() {
            if self.adjacent(v, k) {
                return Ok(true);
            }
            for w in 0..self.n() {
                if inside >> w & 1 == 1 && seen >> w & 1 == 0 && self.adjacent(v, w) {
                    seen |= 1 << w;
                    queue.push_back(w);
                }
            }
        }
        Ok(false)
    }

    /// Positive vector `d` with `d_i a_{i,j} = d_j a_{j,i}`, normalized to
    /// `min d_i = 1` on each connected component.
    pub fn symmetrizer(&self) -> Result<Vec<Rat>> {
        let n = self.n();
        let mut d: Vec<Option<Rat>> = vec![None; n];
        for comp in self.components(&self.all()) {
            let root = comp[0];
            d[root] = Some(Rat::one());
            let mut queue = VecDeque::from([root]);
            while let Some(i) = queue.pop_front() {
                let di = d[i].clone().expect("visited");
                for j in 0..n {
                    if !self.adjacent(i, j) {
                        continue;
                    }
                    let want = &di * rat(self.a(i, j)) / rat(self.a(j, i));
                    match &d[j] {
                        None => {
                            d[j] = Some(want);
                            queue.push_back(j);
                        }
                        Some(dj) if *dj != want => {
                            return Err(Error::NotSymmetrizable {
                                i: self.labels[i].clone(),
                                j: self.labels[j].clone(),
                            })
                        }
                        Some(_) => {}
                    }
                }
            }
            let min = comp
                .iter()
                .map(|&i| d[i].clone().expect("visited"))
                .min()
                .expect("nonempty component");
            for &i in &comp {
                let v = d[i].take().expect("visited") / &min;
                d[i] = Some(v);
            }
        }
        Ok(d.into_iter()
            .map(|x| x.expect("every vertex visited"))
            .collect())
    }

    pub fn is_symmetrizable(&self) -> bool {
        self.symmetrizer().is_ok()
    }

    /// `diag(d) A` for the normalized symmetrizer.
    pub fn symmetrized(&self) -> Result<RatMatrix> {
        let d = self.symmetrizer()?;
        let mut m = self.to_rat();
        for (i, di) in d.iter().enumerate() {
            for j in 0..self.n() {
                m[(i, j)] = di * rat(self.a(i, j));
            }
        }
        Ok(m)
    }

    pub fn rank(&self) -> usize {
        self.to_rat().rank()
    }

    pub fn corank(&self) -> usize {
        self.n() - self.rank()
    }

    pub fn det(&self) -> BigInt {
        linalg::int_det(&self.entries)
    }

    /// Inertia of the symmetrized matrix.
    pub fn signature(&self) -> Result<(usize, usize, usize)> {
        linalg::signature(&self.symmetrized()?)
    }

    fn minor_sign(&self, set_mask: u64) -> i8 {
        if set_mask == 0 {
            return 1;
        }
        if let Some(&s) = self.memo.minor_sign.lock().expect("memo").get(&set_mask) {
            return s;
        }
        let idx = unmask(set_mask);
        let sub: Vec<Vec<i64>> = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.entries[i][j]).collect())
            .collect();
        let d = linalg::int_det(&sub);
        let s = if d.is_positive() {
            1
        } else if d.is_zero() {
            0
        } else {
            -1
        };
        self.memo
            .minor_sign
            .lock()
            .expect("memo")
            .insert(set_mask, s);
        s
    }

    fn finite_mask(&self, m: u64) -> bool {
        if m == 0 {
            return true;
        }
        if let Some(&f) = self.memo.finite.lock().expect("memo").get(&m) {
            return f;
        }
        let f = self.minor_sign(m) > 0
            && unmask(m)
                .into_iter()
                .all(|i| self.finite_mask(m & !(1 << i)));
        self.memo.finite.lock().expect("memo").insert(m, f);
        f
    }

    /// Every principal minor of `A_S` is positive (empty set included).
    pub fn is_finite_type(&self, set: &[usize]) -> bool {
        self.finite_mask(mask(set))
    }

    /// Type of a connected vertex set.
    pub fn kind_of_connected(&self, set: &[usize]) -> Kind {
        let m = mask(set);
        if self.finite_mask(m) {
            Kind::Finite
        } else if self.minor_sign(m) == 0 && set.iter().all(|&i| self.finite_mask(m & !(1 << i))) {
            Kind::Affine
        } else {
            Kind::Indefinite
        }
    }

    /// Worst kind over the components of `set`.
    pub fn kind_of(&self, set: &[usize]) -> Kind {
        self.components(set)
            .iter()
            .map(|c| self.kind_of_connected(c))
            .max()
            .unwrap_or(Kind::Finite)
    }

    pub fn classify(&self) -> TypeVerdict {
        let all = self.all();
        let comps = self.components(&all);
        let components: Vec<ComponentVerdict> = comps
            .iter()
            .map(|c| {
                let kind = self.kind_of_connected(c);
                ComponentVerdict {
                    vertices: self.labels_of(c),
                    kind,
                    finite_type_label: (kind == Kind::Finite)
                        .then(|| families::finite_type_label(&self.submatrix(c)))
                        .flatten(),
                }
            })
            .collect();
        let kind = components
            .iter()
            .map(|c| c.kind)
            .max()
            .unwrap_or(Kind::Finite);
        let indecomposable = comps.len() == 1;
        let symmetrizable = self.is_symmetrizable();

        let (mut hyperbolic, mut strictly) = (false, false);
        if indecomposable && kind == Kind::Indefinite {
            let deleted: Vec<Vec<Kind>> = all
                .iter()
                .map(|&v| {
                    let rest: Vec<usize> = all.iter().copied().filter(|&w| w != v).collect();
                    self.components(&rest)
                        .iter()
                        .map(|c| self.kind_of_connected(c))
                        .collect()
                })
                .collect();
            hyperbolic = deleted.iter().flatten().all(|&k| k != Kind::Indefinite);
            strictly = deleted.iter().flatten().all(|&k| k == Kind::Finite);
        }
        let lorentzian = indecomposable
            && symmetrizable
            && !self.det().is_zero()
            && self.signature().is_ok_and(|s| s == (self.n() - 1, 0, 1));

        let finite_type_label = (kind == Kind::Finite)
            .then(|| {
                components
                    .iter()
                    .map(|c| c.finite_type_label.clone())
                    .collect::<Option<Vec<_>>>()
                    .map(|v| v.join("+"))
            })
            .flatten();
        TypeVerdict {
            kind,
            hyperbolic,
            strictly_hyperbolic: strictly,
            lorentzian,
            symmetrizable,
            indecomposable,
            finite_type_label,
            components,
        }
    }

    /// A permutation `p` with `other.a(p[i], p[j]) == self.a(i, j)`, optionally
    /// forcing `p[pin.0] == pin.1`.
    pub fn isomorphism_to(&self, other: &Gcm, pin: Option<(usize, usize)>) -> Option<Vec<usize>> {
        let n = self.n();
        if other.n() != n {
            return None;
        }
        let signature = |g: &Gcm, v: usize| {
            let mut s: Vec<(i64, i64)> = (0..n)
                .filter(|&w| g.adjacent(v, w))
                .map(|w| (g.a(v, w), g.a(w, v)))
                .collect();
            s.sort_unstable();
            s
        };
        let sa: Vec<_> = (0..n).map(|v| signature(self, v)).collect();
        let sb: Vec<_> = (0..n).map(|v| signature(other, v)).collect();
        let mut ms = sa.clone();
        let mut mt = sb.clone();
        ms.sort();
        mt.sort();
        if ms != mt {
            return None;
        }
        // visit order: BFS from the pinned vertex (or 0) so each new vertex
        // has an already-placed neighbour when possible
        let mut order = Vec::with_capacity(n);
        let mut placed = vec![false; n];
        let starts = pin.map(|p| p.0).into_iter().chain(0..n);
        for s in starts {
            if placed[s] {
                continue;
            }
            placed[s] = true;
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                order.push(v);
                for w in 0..n {
                    if !placed[w] && self.adjacent(v, w) {
                        placed[w] = true;
                        q.push_back(w);
                    }
                }
            }
        }
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        fn go(
            depth: usize,
            order: &[usize],
            a: &Gcm,
            b: &Gcm,
            sa: &[Vec<(i64, i64)>],
            sb: &[Vec<(i64, i64)>],
            pin: Option<(usize, usize)>,
            image: &mut [usize],
            used: &mut [bool],
        ) -> bool {
            let Some(&v) = order.get(depth) else {
                return true;
            };
            for t in 0..b.n() {
                if used[t] || sa[v] != sb[t] {
                    continue;
                }
                if let Some((pv, pt)) = pin {
                    if (v == pv) != (t == pt) {
                        continue;
                    }
                }
                let ok = order[..depth].iter().all(|&u| {
                    let tu = image[u];
                    a.a(v, u) == b.a(t, tu) && a.a(u, v) == b.a(tu, t)
                });
                if !ok {
                    continue;
                }
                image[v] = t;
                used[t] = true;
                if go(depth + 1, order, a, b, sa, sb, pin, image, used) {
                    return true;
                }
                used[t] = false;
                image[v] = usize::MAX;
            }
            false
        }
        go(0, &order, self, other, &sa, &sb, pin, &mut image, &mut used).then_some(image)
    }

    /// Subsets of `I` of finite type (including the empty set), ordered by
    /// size and then lexicographically.
    pub fn finite_type_subsets(&self) -> Vec<Vec<usize>> {
        let n = self.n();
        let mut by_size: BTreeMap<usize, Vec<Vec<usize>>> = BTreeMap::new();
        for m in 0..(1u64 << n) {
            if self.finite_mask(m) {
                let s = unmask(m);
                by_size.entry(s.len()).or_default().push(s);
            }
        }
        by_size
            .into_values()
            .flat_map(|mut v| {
                v.sort();
                v
            })
            .collect()
    }
}
