//! Restriction maps `Q -> Q_Sigma` between root lattices and the analyzer
//! that splits the source vertex set into `I_re`, `I'_im` and `J°`.
//!
//! A [`RestrictionSpec`] is the common input for all three origins: a pair
//! `(I, J)`, an admissible quotient, or an externally given map.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize};

use crate::cadmissible::{build_aj, check_pair, weight_fiber, CAdmissibleAlgebra};
use crate::error::{Error, Result};
use crate::gcm::Gcm;
use crate::linalg::{rank_of, rat, rat_serde, Rat, RatMatrix};
use crate::quotient::{build_abar, QuotientMap};
use crate::report::CheckReport;
use crate::rootsys::{
    enumerate_positive_roots, finite_positive_roots, positive_roots, root_test, BilinearData,
    Normalization, Realization, RootVec, RootVerdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Pair {
        #[serde(rename = "J")]
        j: Vec<String>,
    },
    Quotient {
        fibers: Vec<Vec<String>>,
    },
    #[default]
    External,
}

/// `alpha_i |-> images[i]`, extended additively.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictionSpec {
    pub source: Gcm,
    pub target: Gcm,
    pub images: Vec<RootVec>,
    pub origin: Origin,
}

struct Images<'a>(&'a RestrictionSpec);

impl Serialize for Images<'_> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let spec = self.0;
        let mut map = s.serialize_map(Some(spec.images.len()))?;
        for (l, v) in spec.source.labels().iter().zip(&spec.images) {
            map.serialize_entry(l, v)?;
        }
        map.end()
    }
}

impl Serialize for RestrictionSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(None)?;
        map.serialize_entry("source", &self.source)?;
        map.serialize_entry("target", &self.target)?;
        map.serialize_entry("images", &Images(self))?;
        if self.origin != Origin::External {
            map.serialize_entry("origin", &self.origin)?;
        }
        map.end()
    }
}

#[derive(Deserialize)]
struct SpecJson {
    source: Gcm,
    target: Gcm,
    images: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    origin: Origin,
}

impl<'de> Deserialize<'de> for RestrictionSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SpecJson::deserialize(d)?;
        let mut images = Vec::with_capacity(raw.source.n());
        for l in raw.source.labels() {
            let v = raw
                .images
                .get(l)
                .ok_or_else(|| D::Error::custom(format!("no image for vertex {l}")))?;
            images.push(RootVec::new(v.clone()));
        }
        if let Some(extra) = raw.images.keys().find(|k| raw.source.index_of(k).is_err()) {
            return Err(D::Error::custom(format!(
                "image given for unknown vertex {extra}"
            )));
        }
        RestrictionSpec::new(raw.source, raw.target, images)
            .map(|s| s.with_origin(raw.origin))
            .map_err(D::Error::custom)
    }
}

impl RestrictionSpec {
    /// Shape check only; see [`RestrictionSpec::validate`].
    pub fn new(source: Gcm, target: Gcm, images: Vec<RootVec>) -> Result<Self> {
        if images.len() != source.n() {
            return Err(Error::DimensionMismatch {
                expected: source.n(),
                found: images.len(),
            });
        }
        if let Some(v) = images.iter().find(|v| v.len() != target.n()) {
            return Err(Error::DimensionMismatch {
                expected: target.n(),
                found: v.len(),
            });
        }
        Ok(Self {
            source,
            target,
            images,
            origin: Origin::External,
        })
    }

    pub fn with_origin(mut self, origin: Origin) -> Self {
        self.origin = origin;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Every image is zero or a positive root of the target.
    pub fn validate(&self) -> Result<()> {
        for (i, v) in self.images.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            if !v.is_positive() || !root_test(&self.target, v).is_root() {
                return Err(Error::SpecInvalid(format!(
                    "image {:?} of vertex {} is neither 0 nor a positive root",
                    v.coords(),
                    self.source.label(i)
                )));
            }
        }
        Ok(())
    }

    pub fn identity(gcm: &Gcm) -> Self {
        let n = gcm.n();
        Self::new(
            gcm.clone(),
            gcm.clone(),
            (0..n).map(|i| RootVec::simple(n, i)).collect(),
        )
        .expect("shapes agree")
    }

    /// The restriction `Q -> Q^J` of a C-admissible pair, onto `A^J`.
    pub fn from_pair(gcm: &Gcm, j_set: &[usize]) -> Result<Self> {
        let alg = build_aj(gcm, j_set)?;
        Ok(Self::from_algebra(&alg))
    }

    pub fn from_algebra(alg: &CAdmissibleAlgebra) -> Self {
        let n = alg.source.n();
        let images = (0..n)
            .map(|i| alg.restrict(&RootVec::simple(n, i)))
            .collect();
        Self::new(alg.source.clone(), alg.aj.clone(), images)
            .expect("shapes agree")
            .with_origin(Origin::Pair {
                j: alg.source.labels_of(&alg.j),
            })
    }

    /// The fiber-sum restriction of an admissible quotient, onto `Abar`.
    pub fn from_quotient(q: &QuotientMap) -> Result<Self> {
        let mg = build_abar(q)?;
        let n = q.source.n();
        let images = (0..n).map(|i| q.restrict(&RootVec::simple(n, i))).collect();
        Ok(
            Self::new(q.source.clone(), mg.abar, images)?.with_origin(Origin::Quotient {
                fibers: q.fiber_labels(),
            }),
        )
    }

    /// Restriction to the span of the coroots `alpha_s^vee`, `s` in `subset`:
    /// `alpha_i` goes to the unique `x` with `Abar x = (a_{s,i})_s`, where
    /// `Abar` is the principal submatrix on `subset`.
    pub fn subdiagram(gcm: &Gcm, subset: &[usize]) -> Result<Self> {
        let target = gcm.submatrix(subset);
        let m = target.to_rat();
        let mut images = Vec::with_capacity(gcm.n());
        for i in 0..gcm.n() {
            let rhs: Vec<Rat> = subset.iter().map(|&s| rat(gcm.a(s, i))).collect();
            let x = m.solve(&rhs)?;
            let mut v = Vec::with_capacity(x.len());
            for c in &x {
                if !c.is_integer() {
                    return Err(Error::SpecInvalid(format!(
                        "vertex {} restricts to a non-integral vector",
                        gcm.label(i)
                    )));
                }
                v.push(
                    i64::try_from(c.to_integer())
                        .map_err(|_| Error::SpecInvalid("image coordinate overflows".into()))?,
                );
            }
            images.push(RootVec::new(v));
        }
        Self::new(gcm.clone(), target, images)
    }

    pub fn apply(&self, alpha: &RootVec) -> RootVec {
        let mut v = vec![0i64; self.target.n()];
        for (i, &c) in alpha.coords().iter().enumerate() {
            if c != 0 {
                for (t, &x) in self.images[i].coords().iter().enumerate() {
                    v[t] += c * x;
                }
            }
        }
        RootVec::new(v)
    }

    /// `other` after `self`.
    pub fn compose(&self, other: &RestrictionSpec) -> Result<RestrictionSpec> {
        if self.target.entries() != other.source.entries()
            || self.target.labels() != other.source.labels()
        {
            return Err(Error::BasisMismatch(format!(
                "target {:?} is not the source {:?}",
                self.target.labels(),
                other.source.labels()
            )));
        }
        let images = self.images.iter().map(|v| other.apply(v)).collect();
        RestrictionSpec::new(self.source.clone(), other.target.clone(), images)
    }

    fn zero_set(&self) -> Vec<usize> {
        (0..self.source.n())
            .filter(|&i| self.images[i].is_zero())
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PairClass {
    Maximal,
    CAdmissible,
    GeneralizedCAdmissible,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GammaFiber {
    pub s: String,
    pub fiber: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReComponent {
    pub k: String,
    #[serde(rename = "I_k")]
    pub ik: Vec<String>,
    #[serde(rename = "J_k")]
    pub jk: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub adapted_up_to_h: bool,
    pub pair_classification: PairClass,
    pub disjoint_union_ok: bool,
    pub ik_finite_ok: bool,
    pub fiber_orthogonality_ok: bool,
    /// `(I_re, J_re)` passes the pair check.
    pub pair_ok: bool,
    /// Each enumerated preimage of `gamma_s` is some `alpha_k` plus roots of `J_k`.
    pub simple_fibers_ok: bool,
}

/// Index sets are sorted vertex indices; the label fields mirror them.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradationReport {
    #[serde(skip)]
    pub j: Vec<usize>,
    #[serde(skip)]
    pub i_re_prime: Vec<usize>,
    #[serde(skip)]
    pub i_im_prime: Vec<usize>,
    #[serde(skip)]
    pub gamma: Vec<Vec<usize>>,
    #[serde(skip)]
    pub i_re: Vec<usize>,
    #[serde(skip)]
    pub j_re: Vec<usize>,
    #[serde(skip)]
    pub j_circ: Vec<usize>,
    #[serde(rename = "J")]
    pub j_labels: Vec<String>,
    #[serde(rename = "I'_re")]
    pub i_re_prime_labels: Vec<String>,
    #[serde(rename = "I'_im")]
    pub i_im_prime_labels: Vec<String>,
    #[serde(rename = "Gamma")]
    pub gamma_labels: Vec<GammaFiber>,
    pub components: Vec<ReComponent>,
    #[serde(rename = "I_re")]
    pub i_re_labels: Vec<String>,
    #[serde(rename = "I_re_components")]
    pub i_re_components: Vec<Vec<String>>,
    #[serde(rename = "J_re")]
    pub j_re_labels: Vec<String>,
    #[serde(rename = "J_circ")]
    pub j_circ_labels: Vec<String>,
    pub verdicts: Verdicts,
    pub max_height: usize,
}

/// Compute the vertex partition and the structural verdicts.
pub fn analyze(spec: &RestrictionSpec, max_height: usize) -> Result<GradationReport> {
    spec.validate()?;
    let g = &spec.source;
    let n = g.n();
    let m = spec.target.n();
    let j = spec.zero_set();
    if !g.is_finite_type(&j) {
        return Err(Error::SpecInvalid(format!(
            "zero set {:?} is not of finite type",
            g.labels_of(&j)
        )));
    }
    let mut gamma: Vec<Vec<usize>> = vec![Vec::new(); m];
    let mut i_im_prime = Vec::new();
    for i in (0..n).filter(|i| !j.contains(i)) {
        let v = &spec.images[i];
        let supp = v.support();
        if supp.len() == 1 && v.coords()[supp[0]] == 1 {
            gamma[supp[0]].push(i);
        } else if root_test(&spec.target, v).is_imaginary() {
            i_im_prime.push(i);
        } else {
            return Err(Error::SpecInvalid(format!(
                "vertex {} maps to the real non-simple root {:?}",
                g.label(i),
                v.coords()
            )));
        }
    }
    if let Some(s) = gamma.iter().position(Vec::is_empty) {
        return Err(Error::SpecInvalid(format!(
            "no vertex maps to the simple root {}",
            spec.target.label(s)
        )));
    }
    let mut i_re_prime: Vec<usize> = gamma.iter().flatten().copied().collect();
    i_re_prime.sort_unstable();

    let mut comps: BTreeMap<usize, (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for &k in &i_re_prime {
        comps.insert(k, crate::cadmissible::component_ik(g, &j, k)?);
    }
    let ik_finite_ok = comps.values().all(|(ik, _)| g.is_finite_type(ik));
    let mut fiber_orthogonality_ok = true;
    for f in &gamma {
        for (x, &k) in f.iter().enumerate() {
            for &l in &f[x + 1..] {
                let mut u = comps[&k].0.clone();
                u.extend(&comps[&l].0);
                u.sort_unstable();
                u.dedup();
                if g.is_connected(&u) {
                    fiber_orthogonality_ok = false;
                }
            }
        }
    }
    let i_re: Vec<usize> = {
        let s: BTreeSet<usize> = comps
            .values()
            .flat_map(|(ik, _)| ik.iter().copied())
            .collect();
        s.into_iter().collect()
    };
    let j_re: Vec<usize> = i_re.iter().copied().filter(|i| j.contains(i)).collect();
    let j_circ: Vec<usize> = j.iter().copied().filter(|i| !j_re.contains(i)).collect();
    let disjoint_union_ok = {
        let mut all: Vec<usize> = i_re
            .iter()
            .chain(&i_im_prime)
            .chain(&j_circ)
            .copied()
            .collect();
        all.sort_unstable();
        all == (0..n).collect::<Vec<_>>()
    };
    let pair_ok = {
        let sub = g.submatrix(&i_re);
        let pos: Vec<usize> = j_re
            .iter()
            .map(|x| i_re.iter().position(|y| y == x).expect("J_re inside I_re"))
            .collect();
        matches!(check_pair(&sub, &pos), Ok(c) if c.c_admissible)
    };

    let roots = positive_roots(g, max_height);
    let adapted_up_to_h = check_adapted_on(spec, &j, &roots).passed;
    let simple_fibers_ok = roots.iter().all(|b| {
        let img = spec.apply(b);
        let supp = img.support();
        if supp.len() != 1 || img.coords()[supp[0]] != 1 {
            return true;
        }
        gamma[supp[0]].iter().any(|&k| {
            let rest = b.sub(&RootVec::simple(n, k));
            rest.coords().iter().all(|&c| c >= 0)
                && rest.support().iter().all(|i| comps[&k].1.contains(i))
        })
    });

    let pair_classification = match (j.is_empty(), i_im_prime.is_empty()) {
        (true, true) => PairClass::Maximal,
        (false, true) => PairClass::CAdmissible,
        _ => PairClass::GeneralizedCAdmissible,
    };
    let labels = |v: &[usize]| g.labels_of(v);
    Ok(GradationReport {
        j_labels: labels(&j),
        i_re_prime_labels: labels(&i_re_prime),
        i_im_prime_labels: labels(&i_im_prime),
        gamma_labels: gamma
            .iter()
            .enumerate()
            .map(|(s, f)| GammaFiber {
                s: spec.target.label(s).to_string(),
                fiber: labels(f),
            })
            .collect(),
        components: comps
            .iter()
            .map(|(&k, (ik, jk))| ReComponent {
                k: g.label(k).to_string(),
                ik: labels(ik),
                jk: labels(jk),
            })
            .collect(),
        i_re_labels: labels(&i_re),
        i_re_components: g.components(&i_re).iter().map(|c| labels(c)).collect(),
        j_re_labels: labels(&j_re),
        j_circ_labels: labels(&j_circ),
        verdicts: Verdicts {
            adapted_up_to_h,
            pair_classification,
            disjoint_union_ok,
            ik_finite_ok,
            fiber_orthogonality_ok,
            pair_ok,
            simple_fibers_ok,
        },
        max_height,
        j,
        i_re_prime,
        i_im_prime,
        gamma,
        i_re,
        j_re,
        j_circ,
    })
}

fn check_adapted_on(spec: &RestrictionSpec, j: &[usize], roots: &[RootVec]) -> CheckReport {
    let mut rep = CheckReport::new();
    let mut zero: BTreeSet<RootVec> = BTreeSet::new();
    for b in roots {
        rep.count("roots", 1);
        let img = spec.apply(b);
        if img.is_zero() {
            zero.insert(b.clone());
        } else if !img.is_positive() {
            rep.fail(
                "image_positive",
                b.coords(),
                format!("image {:?} is not positive", img.coords()),
            );
        } else if !root_test(&spec.target, &img).is_root() {
            rep.fail(
                "image_is_root",
                b.coords(),
                format!("image {:?} is not a root", img.coords()),
            );
        }
    }
    rep.set("zero_images", zero.len() as u64);
    let max_h = roots.iter().map(RootVec::height).max().unwrap_or(0);
    match finite_positive_roots(&spec.source, j) {
        Ok(dj) => {
            let n = spec.source.n();
            let dj: BTreeSet<RootVec> = dj
                .into_iter()
                .map(|r| r.embed(j, n))
                .filter(|r| r.height() <= max_h)
                .collect();
            if let Some(x) = zero.symmetric_difference(&dj).next() {
                rep.fail(
                    "zero_set_is_root_system_of_j",
                    x.coords(),
                    "zero-image roots differ from the roots of A_J",
                );
            }
        }
        Err(_) => rep.fail("j_finite_type", &[], "zero set is not of finite type"),
    }
    rep
}

/// Every positive root up to `max_height` maps into `Sigma^+ ∪ {0}`, and the
/// roots mapping to 0 are exactly those of `A_J`.
pub fn check_adapted(spec: &RestrictionSpec, max_height: usize) -> CheckReport {
    check_adapted_on(
        spec,
        &spec.zero_set(),
        &positive_roots(&spec.source, max_height),
    )
}

/// Bounded linkage test: `a alpha + b beta` is a root for all `a, b >= 0`
/// with `0 < a + b <= 3`, or `beta` is a positive multiple of `alpha`.
pub fn linked(gcm: &Gcm, alpha: &RootVec, beta: &RootVec) -> bool {
    if proportional(alpha, beta) {
        return true;
    }
    (0..=3i64).all(|a| {
        (0..=3 - a)
            .all(|b| a + b == 0 || root_test(gcm, &alpha.scale(a).add(&beta.scale(b))).is_root())
    })
}

fn proportional(a: &RootVec, b: &RootVec) -> bool {
    let (ca, cb) = (a.coords(), b.coords());
    let pivot = ca.iter().position(|&x| x != 0);
    match pivot {
        None => false,
        Some(p) => (0..ca.len()).all(|i| ca[i] * cb[p] == cb[i] * ca[p]) && ca[p] * cb[p] > 0,
    }
}

/// Positive imaginary roots of the source map to positive imaginary roots
/// of the target. Linked pairs among the first few imaginary roots are
/// tested for linked images as a diagnostic.
pub fn imaginary_sign_check(spec: &RestrictionSpec, max_height: usize) -> CheckReport {
    const LINK_SAMPLE: usize = 24;
    let mut rep = CheckReport::new();
    let mut imag = Vec::new();
    for e in enumerate_positive_roots(&spec.source, max_height) {
        if !matches!(e.verdict, RootVerdict::Imaginary { .. }) {
            continue;
        }
        rep.count("imaginary_roots", 1);
        let img = spec.apply(&e.root);
        if img.is_zero() || !img.is_positive() || !root_test(&spec.target, &img).is_imaginary() {
            rep.fail(
                "imaginary_to_imaginary",
                e.root.coords(),
                format!("image {:?} is not a positive imaginary root", img.coords()),
            );
        }
        if imag.len() < LINK_SAMPLE {
            imag.push((e.root, img));
        }
    }
    for (x, (a, ia)) in imag.iter().enumerate() {
        for (b, ib) in &imag[x + 1..] {
            if linked(&spec.source, a, b) {
                rep.count("linked_pairs", 1);
                if !ia.is_zero() && !ib.is_zero() && !linked(&spec.target, ia, ib) {
                    rep.fail(
                        "linked_images",
                        a.coords(),
                        format!("linked to {:?} but images are not", b.coords()),
                    );
                }
            }
        }
    }
    rep
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiberCount {
    pub image: RootVec,
    /// `per_height[h - 1]` counts the fiber members of height `h`.
    pub per_height: Vec<u64>,
    pub total: u64,
    /// No new members in the last three heights.
    pub stable: bool,
    /// Exact fiber size, when the spec comes from a pair.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_total: Option<u64>,
}

/// Fiber sizes of the nonzero images of positive roots up to `max_height`.
pub fn fiber_counts(spec: &RestrictionSpec, max_height: usize) -> Result<Vec<FiberCount>> {
    let mut map: BTreeMap<RootVec, Vec<u64>> = BTreeMap::new();
    for b in positive_roots(&spec.source, max_height) {
        let img = spec.apply(&b);
        if img.is_zero() {
            continue;
        }
        map.entry(img).or_insert_with(|| vec![0; max_height])[b.height() as usize - 1] += 1;
    }
    let alg = match &spec.origin {
        Origin::Pair { j } => Some(build_aj(&spec.source, &spec.source.indices_of(j)?)?),
        _ => None,
    };
    let cap = crate::cadmissible::orbit_cap_from_env();
    let mut out = Vec::with_capacity(map.len());
    for (image, per_height) in map {
        let exact_total = match &alg {
            Some(alg) => Some(weight_fiber(alg, &image, cap)?.roots.len() as u64),
            None => None,
        };
        let stable = max_height >= 3 && per_height[max_height - 3..].iter().all(|&c| c == 0);
        out.push(FiberCount {
            total: per_height.iter().sum(),
            image,
            per_height,
            stable,
            exact_total,
        });
    }
    out.sort_by(|a, b| {
        a.image
            .height()
            .cmp(&b.image.height())
            .then_with(|| b.image.cmp(&a.image))
    });
    Ok(out)
}

/// `target_norm(rho(alpha)) = factor * (source_norm(alpha) - n^T C n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticIdentity {
    pub factor: Rat,
    /// Symmetric correction matrix `C` over the source coordinates.
    pub correction: RatMatrix,
    pub source_norm: Normalization,
    pub target_norm: Normalization,
}

impl QuadraticIdentity {
    /// Equal forms, no correction.
    pub fn trivial(n: usize) -> Self {
        Self {
            factor: Rat::one(),
            correction: RatMatrix::zeros(n, n),
            source_norm: Normalization::default(),
            target_norm: Normalization::default(),
        }
    }

    /// The identity for the 4x4 fold of `paper-s5` mapped onto `H3,3`:
    /// `|rho(a)|^2 = 2 [ |a|^2 - (n3 - n4)^2 - 5 n3^2 - n4^2 ]`, with short
    /// roots of squared length 1 on the source.
    pub fn paper_s5() -> Self {
        let mut c = RatMatrix::zeros(4, 4);
        c[(2, 2)] = rat(6);
        c[(2, 3)] = rat(-1);
        c[(3, 2)] = rat(-1);
        c[(3, 3)] = rat(2);
        Self {
            factor: rat(2),
            correction: c,
            source_norm: Normalization::Short {
                short: Rat::one(),
                long: Some(rat(2)),
            },
            target_norm: Normalization::default(),
        }
    }

    fn correction_at(&self, v: &RootVec) -> Rat {
        let c = v.coords();
        let mut s = Rat::zero();
        for i in 0..c.len() {
            for j in 0..c.len() {
                s += &self.correction[(i, j)] * rat(c[i] * c[j]);
            }
        }
        s
    }
}

pub fn bilinear_identity_check(
    spec: &RestrictionSpec,
    identity: &QuadraticIdentity,
    max_height: usize,
) -> Result<CheckReport> {
    let n = spec.source.n();
    if identity.correction.nrows() != n || identity.correction.ncols() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: identity.correction.nrows(),
        });
    }
    let src = BilinearData::new(&spec.source, &identity.source_norm)?;
    let tgt = BilinearData::new(&spec.target, &identity.target_norm)?;
    let mut rep = CheckReport::new();
    for b in positive_roots(&spec.source, max_height) {
        rep.count("roots", 1);
        let lhs = tgt.norm(&spec.apply(&b));
        let rhs = &identity.factor * (src.norm(&b) - identity.correction_at(&b));
        if lhs != rhs {
            rep.fail(
                "quadratic_identity",
                b.coords(),
                format!("target norm {lhs}, identity gives {rhs}"),
            );
        }
    }
    Ok(rep)
}

/// Linear conditions cutting the Cartan subalgebra of the graded part out
/// of `h^J`, as functionals on `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CartanConstraints {
    pub dim_h: usize,
    #[serde(serialize_with = "rat_serde::vecs")]
    pub equations: Vec<Vec<Rat>>,
    /// One line per equation, in label terms.
    pub descriptions: Vec<String>,
    pub solution_dim: usize,
    /// `|Ibar| + corank(A)`.
    pub expected_dim: usize,
}

/// Equations `alpha_j = 0` (`j` in `J`), `alpha_k = alpha_{l_s}` (`k` in
/// `Gamma_s`) and `alpha_k = sum_s n_{s,k} alpha_{l_s}` (`k` in `I'_im`),
/// with `l_s` the smallest index of `Gamma_s`.
pub fn cartan_constraints(spec: &RestrictionSpec) -> Result<CartanConstraints> {
    let rep = analyze(spec, 0)?;
    let g = &spec.source;
    let real = Realization::new(g);
    let row = |i: usize| real.root_rows.row(i).to_vec();
    let mut equations = Vec::new();
    let mut descriptions = Vec::new();
    for &jj in &rep.j {
        equations.push(row(jj));
        descriptions.push(format!("<alpha_{}, h> = 0", g.label(jj)));
    }
    let reps: Vec<usize> = rep.gamma.iter().map(|f| f[0]).collect();
    for f in &rep.gamma {
        for &k in &f[1..] {
            equations.push(row(k).iter().zip(row(f[0])).map(|(a, b)| a - b).collect());
            descriptions.push(format!(
                "<alpha_{}, h> = <alpha_{}, h>",
                g.label(k),
                g.label(f[0])
            ));
        }
    }
    for &k in &rep.i_im_prime {
        let mut e = row(k);
        let mut terms = Vec::new();
        for (s, &c) in spec.images[k].coords().iter().enumerate() {
            if c != 0 {
                for (x, y) in e.iter_mut().zip(real.root_rows.row(reps[s])) {
                    *x -= rat(c) * y;
                }
                terms.push(format!("{c} <alpha_{}, h>", g.label(reps[s])));
            }
        }
        equations.push(e);
        descriptions.push(format!("<alpha_{}, h> = {}", g.label(k), terms.join(" + ")));
    }
    let solution_dim = real.dim_h - rank_of(&equations);
    let expected_dim = spec.target.n() + g.corank();
    debug_assert_eq!(solution_dim, expected_dim);
    Ok(CartanConstraints {
        dim_h: real.dim_h,
        equations,
        descriptions,
        solution_dim,
        expected_dim,
    })
}

/// The fold of `paper-s5` followed by the restriction to the first two
/// folded vertices, onto `H3,3`.
pub fn paper_s5_composed() -> Result<(RestrictionSpec, RestrictionSpec, RestrictionSpec)> {
    let s5 = crate::families::paper_s5();
    let fibers = crate::quotient::parse_fibers(&s5, "1,5|2,6|3|4")?;
    let q = crate::quotient::check_quotient(&s5, &fibers, None)?;
    let fold = RestrictionSpec::from_quotient(&q)?;
    let rho1 = RestrictionSpec::subdiagram(&fold.target, &[0, 1])?;
    let composed = fold.compose(&rho1)?;
    Ok((fold, rho1, composed))
}
