//! Admissible quotient maps `rho: I -> Ibar` and the folded matrix `Abar`.
//!
//! A quotient is admissible when vertices in one fiber are orthogonal
//! (MG1) and the column sums `sum_{i in fiber s} a_{i,j}` do not depend on
//! the choice of `j` inside another fiber (MG2).

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gcm::Gcm;
use crate::linalg::{dot, rank_of, rat, rat_serde, Rat, RatMatrix};
use crate::report::CheckReport;
use crate::rootsys::{positive_roots, Realization, RootVec};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    pub source: Gcm,
    /// Fibers as sorted index lists, ordered by their smallest element.
    pub fibers: Vec<Vec<usize>>,
    pub target_labels: Vec<String>,
    /// `rho[i]` is the fiber containing `i`.
    pub rho: Vec<usize>,
}

/// Serialized form: `{"fibers": [["1","5"], ...], "target_labels": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuotientJson {
    pub fibers: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_labels: Option<Vec<String>>,
}

impl Serialize for QuotientMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        QuotientJson {
            fibers: self.fiber_labels(),
            target_labels: Some(self.target_labels.clone()),
        }
        .serialize(s)
    }
}

/// Parse `"1,5|2,6|3|4"` into index fibers.
pub fn parse_fibers(gcm: &Gcm, text: &str) -> Result<Vec<Vec<usize>>> {
    text.split('|')
        .map(|part| {
            let labels: Vec<&str> = part
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .collect();
            if labels.is_empty() {
                return Err(Error::BadPartition(format!("empty fiber in {text:?}")));
            }
            labels.iter().map(|l| gcm.index_of(l)).collect()
        })
        .collect()
}

pub fn default_target_labels(m: usize) -> Vec<String> {
    (1..=m).map(|s| format!("s{s}")).collect()
}

impl QuotientMap {
    pub fn n_target(&self) -> usize {
        self.fibers.len()
    }

    pub fn fiber_labels(&self) -> Vec<Vec<String>> {
        self.fibers
            .iter()
            .map(|f| self.source.labels_of(f))
            .collect()
    }

    pub fn identity(gcm: &Gcm) -> Self {
        check_quotient(
            gcm,
            &(0..gcm.n()).map(|i| vec![i]).collect::<Vec<_>>(),
            None,
        )
        .expect("the identity quotient is admissible")
    }

    /// `rho(sum n_i alpha_i) = sum_s (sum_{i in fiber s} n_i) gamma_s`.
    pub fn restrict(&self, alpha: &RootVec) -> RootVec {
        let mut v = vec![0i64; self.n_target()];
        for (i, &c) in alpha.coords().iter().enumerate() {
            v[self.rho[i]] += c;
        }
        RootVec::new(v)
    }

    pub fn to_json(&self) -> QuotientJson {
        QuotientJson {
            fibers: self.fiber_labels(),
            target_labels: Some(self.target_labels.clone()),
        }
    }

    pub fn from_json(gcm: &Gcm, json: &QuotientJson) -> Result<Self> {
        let fibers = json
            .fibers
            .iter()
            .map(|f| {
                f.iter()
                    .map(|l| gcm.index_of(l))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        check_quotient(gcm, &fibers, json.target_labels.clone())
    }
}

/// Normalize and check a partition; verify MG1 and MG2 cell by cell.
pub fn check_quotient(
    gcm: &Gcm,
    fibers: &[Vec<usize>],
    target_labels: Option<Vec<String>>,
) -> Result<QuotientMap> {
    let n = gcm.n();
    let mut fibers: Vec<Vec<usize>> = fibers
        .iter()
        .map(|f| {
            let mut f = f.clone();
            f.sort_unstable();
            f
        })
        .collect();
    let mut rho = vec![usize::MAX; n];
    for f in &fibers {
        if f.is_empty() {
            return Err(Error::BadPartition("empty fiber".into()));
        }
        for &i in f {
            if i >= n {
                return Err(Error::BadPartition(format!("index {i} out of range")));
            }
            if rho[i] != usize::MAX {
                return Err(Error::BadPartition(format!(
                    "{} appears twice",
                    gcm.label(i)
                )));
            }
            rho[i] = 0;
        }
    }
    if let Some(i) = rho.iter().position(|&r| r == usize::MAX) {
        return Err(Error::BadPartition(format!(
            "{} is not covered",
            gcm.label(i)
        )));
    }
    fibers.sort_by_key(|f| f[0]);
    for (s, f) in fibers.iter().enumerate() {
        for &i in f {
            rho[i] = s;
        }
    }
    let target_labels = target_labels.unwrap_or_else(|| default_target_labels(fibers.len()));
    if target_labels.len() != fibers.len() {
        return Err(Error::BadPartition(format!(
            "{} target labels for {} fibers",
            target_labels.len(),
            fibers.len()
        )));
    }
    for f in &fibers {
        for (x, &k) in f.iter().enumerate() {
            for &l in &f[x + 1..] {
                if gcm.a(k, l) != 0 {
                    return Err(Error::Mg1Violation {
                        k: gcm.label(k).to_string(),
                        l: gcm.label(l).to_string(),
                    });
                }
            }
        }
    }
    for (s, fs) in fibers.iter().enumerate() {
        for (t, ft) in fibers.iter().enumerate() {
            if s == t {
                continue;
            }
            let col = |j: usize| fs.iter().map(|&i| gcm.a(i, j)).sum::<i64>();
            let first = col(ft[0]);
            if let Some(&j2) = ft.iter().find(|&&j| col(j) != first) {
                return Err(Error::Mg2Violation {
                    s: target_labels[s].clone(),
                    t: target_labels[t].clone(),
                    j: gcm.label(ft[0]).to_string(),
                    j2: gcm.label(j2).to_string(),
                });
            }
        }
    }
    Ok(QuotientMap {
        source: gcm.clone(),
        fibers,
        target_labels,
        rho,
    })
}

/// `Abar` with its realization inside the source `h`.
#[derive(Debug, Clone, Serialize)]
pub struct MaximalGradation {
    pub quotient: QuotientMap,
    #[serde(rename = "matrix")]
    pub abar: Gcm,
    #[serde(skip)]
    pub realization: Realization,
    /// `gamma_s^vee = sum_{k in fiber s} alpha_k^vee`, in `h` coordinates.
    #[serde(serialize_with = "rat_serde::vecs")]
    pub gamma_coroots: Vec<Vec<Rat>>,
    /// Basis of `a = span{gamma_s^vee} + a''`, in `h` coordinates; the
    /// first `|Ibar|` vectors are the `gamma_s^vee`.
    #[serde(serialize_with = "rat_serde::vecs")]
    pub a_basis: Vec<Vec<Rat>>,
    /// `gamma_t` evaluated on `a_basis`.
    #[serde(serialize_with = "rat_serde::vecs")]
    pub gamma_functionals: Vec<Vec<Rat>>,
}

pub fn build_abar(q: &QuotientMap) -> Result<MaximalGradation> {
    let g = &q.source;
    let m = q.n_target();
    let mut entries = vec![vec![0i64; m]; m];
    for (s, fs) in q.fibers.iter().enumerate() {
        for (t, ft) in q.fibers.iter().enumerate() {
            entries[s][t] = fs.iter().map(|&i| g.a(i, ft[0])).sum();
        }
    }
    let abar = Gcm::new(q.target_labels.clone(), entries)
        .map_err(|e| Error::NotAdmissibleQuotient(e.to_string()))?;
    if g.is_indecomposable() && !abar.is_indecomposable() {
        return Err(Error::NotAdmissibleQuotient(
            "folded matrix is decomposable".into(),
        ));
    }

    let realization = Realization::new(g);
    let dim_h = realization.dim_h;
    let gamma_coroots: Vec<Vec<Rat>> = q
        .fibers
        .iter()
        .map(|f| {
            let coeffs: Vec<(usize, Rat)> = f.iter().map(|&k| (k, rat(1))).collect();
            realization.coroot_vector(&coeffs)
        })
        .collect();

    // h^Gamma: <alpha_k, h> = <alpha_l, h> whenever k, l share a fiber
    let mut eqs: Vec<Vec<Rat>> = Vec::new();
    for f in &q.fibers {
        for &k in &f[1..] {
            let row: Vec<Rat> = realization
                .root_rows
                .row(k)
                .iter()
                .zip(realization.root_rows.row(f[0]))
                .map(|(a, b)| a - b)
                .collect();
            eqs.push(row);
        }
    }
    let h_gamma = if eqs.is_empty() {
        RatMatrix::identity(dim_h).to_rows()
    } else {
        RatMatrix::from_rows(eqs).nullspace()
    };

    let functional = |t: usize, v: &[Rat]| dot(realization.root_rows.row(q.fibers[t][0]), v);
    let eval = |basis: &[Vec<Rat>]| -> Vec<Vec<Rat>> {
        (0..m)
            .map(|t| basis.iter().map(|v| functional(t, v)).collect())
            .collect()
    };
    let mut a_basis = gamma_coroots.clone();
    for v in &h_gamma {
        if rank_of(&eval(&a_basis)) == m {
            break;
        }
        let mut trial = a_basis.clone();
        trial.push(v.clone());
        if rank_of(&trial) > a_basis.len() && rank_of(&eval(&trial)) > rank_of(&eval(&a_basis)) {
            a_basis = trial;
        }
    }
    let gamma_functionals = eval(&a_basis);

    for v in &gamma_coroots {
        for f in &q.fibers {
            let base = dot(realization.root_rows.row(f[0]), v);
            for &k in &f[1..] {
                assert_eq!(
                    dot(realization.root_rows.row(k), v),
                    base,
                    "gamma^vee lies in h^Gamma"
                );
            }
        }
    }
    for s in 0..m {
        for t in 0..m {
            assert_eq!(
                gamma_functionals[t][s],
                rat(abar.a(s, t)),
                "<gamma_t, gamma_s^vee> = abar_(s,t)"
            );
        }
    }
    assert_eq!(rank_of(&gamma_functionals), m, "gamma_t independent on a");
    assert_eq!(
        a_basis.len(),
        2 * m - abar.rank(),
        "minimal realization of Abar"
    );
    Ok(MaximalGradation {
        quotient: q.clone(),
        abar,
        realization,
        gamma_coroots,
        a_basis,
        gamma_functionals,
    })
}

pub fn restrict_by_quotient(q: &QuotientMap, alpha: &RootVec) -> RootVec {
    q.restrict(alpha)
}

/// Check that the images of the positive roots of height at most
/// `max_height` are exactly the positive roots of `Abar` up to that height
/// (the restriction preserves height), with the string, support and
/// simple-root axioms.
pub fn verify_maximal(mg: &MaximalGradation, max_height: usize) -> CheckReport {
    let mut rep = CheckReport::new();
    let q = &mg.quotient;
    let m = q.n_target();
    let roots = positive_roots(&q.source, max_height);
    rep.set("source_roots", roots.len() as u64);
    let mut fibers: BTreeMap<RootVec, u64> = BTreeMap::new();
    for b in &roots {
        let img = q.restrict(b);
        if img.is_zero() {
            rep.fail(
                "zero_image_empty",
                b.coords(),
                "a positive root restricts to 0",
            );
            continue;
        }
        if img.height() != b.height() {
            rep.fail("height_preserved", b.coords(), "height changed");
        }
        *fibers.entry(img).or_default() += 1;
    }
    let images: BTreeSet<RootVec> = fibers.keys().cloned().collect();
    rep.set("images", images.len() as u64);
    rep.set("max_fiber", fibers.values().copied().max().unwrap_or(0));

    for s in 0..m {
        let e = RootVec::simple(m, s);
        if max_height >= 1 && !images.contains(&e) {
            rep.fail("contains_simple", e.coords(), "gamma_s is not an image");
        }
        if images.contains(&e.scale(2)) {
            rep.fail("omits_double", e.scale(2).coords(), "2 gamma_s is an image");
        }
    }
    let mh = max_height as i64;
    for gamma in &images {
        if !mg.abar.is_connected(&gamma.support()) {
            rep.fail(
                "connected_support",
                gamma.coords(),
                "support is disconnected in Abar",
            );
        }
        for s in 0..m {
            if gamma.support() == [s] {
                continue;
            }
            let mut p = 0i64;
            while images.contains(&gamma.add_simple(s, -(p + 1))) {
                p += 1;
            }
            let mut q_up = 0i64;
            while images.contains(&gamma.add_simple(s, q_up + 1)) {
                q_up += 1;
            }
            if gamma.height() + q_up + 1 > mh {
                rep.count("strings_truncated", 1);
                continue;
            }
            rep.count("strings", 1);
            let pairing: i64 = (0..m).map(|t| gamma.coords()[t] * mg.abar.a(s, t)).sum();
            if p - q_up != pairing {
                rep.fail(
                    "string",
                    gamma.coords(),
                    format!(
                        "direction {}: p - q = {} but pairing = {pairing}",
                        mg.abar.label(s),
                        p - q_up
                    ),
                );
            }
        }
    }
    let target: BTreeSet<RootVec> = positive_roots(&mg.abar, max_height).into_iter().collect();
    rep.set("abar_roots", target.len() as u64);
    if let Some(x) = images.difference(&target).next() {
        rep.fail(
            "images_are_roots",
            x.coords(),
            "image is not a root of Abar",
        );
    }
    if let Some(x) = target.difference(&images).next() {
        rep.fail(
            "roots_are_images",
            x.coords(),
            "root of Abar is not an image",
        );
    }
    rep
}

/// All admissible quotients, identity first, then by decreasing number of
/// fibers and lexicographic fibers. `max_fiber_size` bounds the fiber size.
pub fn enumerate_quotients(gcm: &Gcm, max_fiber_size: Option<usize>) -> Vec<QuotientMap> {
    let n = gcm.n();
    let cap = max_fiber_size.unwrap_or(n).max(1);
    let mut found: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn go(
        gcm: &Gcm,
        i: usize,
        cap: usize,
        blocks: &mut Vec<Vec<usize>>,
        found: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if i == gcm.n() {
            if check_quotient(gcm, blocks, None).is_ok() {
                found.push(blocks.clone());
            }
            return;
        }
        for b in 0..blocks.len() {
            if blocks[b].len() < cap && blocks[b].iter().all(|&k| gcm.a(k, i) == 0) {
                blocks[b].push(i);
                go(gcm, i + 1, cap, blocks, found);
                blocks[b].pop();
            }
        }
        blocks.push(vec![i]);
        go(gcm, i + 1, cap, blocks, found);
        blocks.pop();
    }
    if n > 0 {
        go(gcm, 0, cap, &mut blocks, &mut found);
    }
    found.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    found
        .into_iter()
        .map(|f| check_quotient(gcm, &f, None).expect("checked"))
        .collect()
}

/// `<gamma_t, gamma_s^vee>` computed from the realization.
pub fn realized_pairing(mg: &MaximalGradation, s: usize, t: usize) -> Rat {
    let f = mg.quotient.fibers[t][0];
    let v = &mg.gamma_coroots[s];
    let r = dot(mg.realization.root_rows.row(f), v);
    if r.is_zero() {
        Rat::zero()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{builtin, classical};

    fn rv(v: &[i64]) -> RootVec {
        RootVec::new(v.to_vec())
    }

    #[test]
    fn checks() {
        let a3 = classical('A', 3);
        assert!(check_quotient(&a3, &[vec![0], vec![1], vec![2]], None).is_ok());
        let a2 = classical('A', 2);
        assert_eq!(
            check_quotient(&a2, &[vec![0, 1]], None).unwrap_err(),
            Error::Mg1Violation {
                k: "1".into(),
                l: "2".into()
            }
        );
        let s5 = builtin("paper-s5").unwrap();
        let f = parse_fibers(&s5, "1,5|2,6|3|4").unwrap();
        let q = check_quotient(&s5, &f, None).unwrap();
        assert_eq!(
            q.fiber_labels(),
            vec![vec!["1", "5"], vec!["2", "6"], vec!["3"], vec!["4"]]
        );
        assert!(matches!(
            check_quotient(&s5, &[vec![0, 4], vec![1, 5], vec![2]], None),
            Err(Error::BadPartition(_))
        ));
        // D4 with two outer vertices folded: MG2 fails for the third
        let d4 = classical('D', 4);
        assert!(check_quotient(&d4, &[vec![0, 2], vec![1], vec![3]], None).is_ok());
        let e6 = classical('E', 6);
        assert!(matches!(
            check_quotient(&e6, &[vec![0, 5], vec![1], vec![2], vec![3], vec![4]], None),
            Err(Error::Mg2Violation { .. })
        ));
    }

    #[test]
    fn folded_matrices() {
        let a3 = classical('A', 3);
        let id = build_abar(&QuotientMap::identity(&a3)).unwrap();
        assert_eq!(id.abar.entries(), a3.entries());
        let fold = check_quotient(&a3, &[vec![0, 2], vec![1]], None).unwrap();
        let mg = build_abar(&fold).unwrap();
        assert_eq!(mg.abar.entries(), &[vec![2, -2], vec![-1, 2]]);
        let s5 = builtin("paper-s5").unwrap();
        let q = check_quotient(&s5, &parse_fibers(&s5, "1,5|2,6|3|4").unwrap(), None).unwrap();
        let mg = build_abar(&q).unwrap();
        assert_eq!(
            mg.abar.entries(),
            &[
                vec![2, -3, -2, 0],
                vec![-3, 2, -2, 0],
                vec![-1, -1, 2, -1],
                vec![0, 0, -1, 2]
            ]
        );
        for s in 0..4 {
            for t in 0..4 {
                assert_eq!(realized_pairing(&mg, s, t), rat(mg.abar.a(s, t)));
            }
        }
    }

    #[test]
    fn restrictions() {
        let s5 = builtin("paper-s5").unwrap();
        let q = check_quotient(&s5, &parse_fibers(&s5, "1,5|2,6|3|4").unwrap(), None).unwrap();
        assert_eq!(q.restrict(&rv(&[1, 0, 0, 0, 1, 0])), rv(&[2, 0, 0, 0]));
        assert_eq!(q.restrict(&rv(&[0, 0, 0, 1, 0, 0])), rv(&[0, 0, 0, 1]));
    }

    #[test]
    fn maximal_checks() {
        let a3 = classical('A', 3);
        assert!(verify_maximal(&build_abar(&QuotientMap::identity(&a3)).unwrap(), 6).passed);
        let fold = check_quotient(&a3, &[vec![0, 2], vec![1]], None).unwrap();
        let mg = build_abar(&fold).unwrap();
        let rep = verify_maximal(&mg, 6);
        assert!(rep.passed, "{rep:?}");
        let images: BTreeSet<RootVec> = positive_roots(&a3, 6)
            .iter()
            .map(|r| fold.restrict(r))
            .collect();
        let want: BTreeSet<RootVec> = [rv(&[1, 0]), rv(&[0, 1]), rv(&[1, 1]), rv(&[2, 1])]
            .into_iter()
            .collect();
        assert_eq!(images, want);
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_quotients(&classical('A', 1), None).len(), 1);
        let a3: Vec<_> = enumerate_quotients(&classical('A', 3), None)
            .iter()
            .map(|q| q.fibers.clone())
            .collect();
        assert_eq!(
            a3,
            vec![vec![vec![0], vec![1], vec![2]], vec![vec![0, 2], vec![1]]]
        );
        assert_eq!(enumerate_quotients(&classical('A', 2), None).len(), 1);
        let d4 = enumerate_quotients(&classical('D', 4), None);
        // identity, three 2-folds and the triality fold
        assert_eq!(d4.len(), 5);
        assert_eq!(enumerate_quotients(&classical('D', 4), Some(2)).len(), 4);
    }
}
