//! C-admissible pairs `(I, J)`, the folded matrix `A^J` and weight fibers of
//! the restriction `Q -> Q^J`.

use std::collections::{BTreeSet, HashMap, VecDeque};

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::try_classical;
use crate::gcm::Gcm;
use crate::linalg::{coordinates_in, dot, rat, rat_serde, Rat, RatMatrix};
use crate::report::CheckReport;
use crate::rootsys::{
    finite_positive_roots, half_sum_coroots, highest_root, longest_element, positive_roots,
    root_test, sort_roots, Realization, RootVec,
};

/// Default cap on the number of elements produced by a Weyl orbit search.
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;

/// `(I_k, J_k)`: the component of `J ∪ {k}` containing `k`, and the same
/// set without `k`. Both sorted.
pub fn component_ik(gcm: &Gcm, j_set: &[usize], k: usize) -> Result<(Vec<usize>, Vec<usize>)> {
    if j_set.contains(&k) {
        return Err(Error::KInJ(gcm.label(k).to_string()));
    }
    let mut set = j_set.to_vec();
    set.push(k);
    let ik = gcm
        .components(&set)
        .into_iter()
        .find(|c| c.contains(&k))
        .expect("k lies in some component");
    let jk = ik.iter().copied().filter(|&i| i != k).collect();
    Ok((ik, jk))
}

/// Coefficients `n_i` (over `ik`, in order) of the unique `H_k = sum n_i alpha_i^vee`
/// with `<alpha_i, H_k> = 2 delta_{i,k}` for `i` in `ik`.
pub fn solve_hk(gcm: &Gcm, ik: &[usize], k: usize) -> Result<Vec<Rat>> {
    if !gcm.is_finite_type(ik) {
        return Err(Error::NotFiniteTypeComponent(gcm.labels_of(ik)));
    }
    let sub = gcm.submatrix(ik).to_rat().transpose();
    let rhs: Vec<Rat> = ik
        .iter()
        .map(|&i| rat(if i == k { 2 } else { 0 }))
        .collect();
    sub.solve(&rhs)
}

pub fn all_positive_integers(v: &[Rat]) -> bool {
    v.iter().all(|x| x.is_integer() && x.is_positive())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairComponent {
    #[serde(skip)]
    pub k: usize,
    #[serde(skip)]
    pub ik: Vec<usize>,
    #[serde(skip)]
    pub jk: Vec<usize>,
    #[serde(rename = "k")]
    pub k_label: String,
    #[serde(rename = "I_k")]
    pub ik_labels: Vec<String>,
    #[serde(rename = "J_k")]
    pub jk_labels: Vec<String>,
    #[serde(rename = "h_k_coeffs", serialize_with = "rat_serde::vec")]
    pub hk_coeffs: Vec<Rat>,
    pub admissible: bool,
    /// Coefficient of `alpha_k` in the highest root of `I_k`.
    pub highest_root_coeff: i64,
    /// Whether `-w_0` of `W(I_k)` fixes `k`.
    pub sigma_fixes_k: bool,
    /// Every positive root of `I_k` pairs with `H_k` to 0 or 2.
    pub levels_ok: bool,
    pub c_admissible: bool,
    /// Admissible with coefficient 1 while `-w_0` moves `k`.
    pub sigma_divergence: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table1_label: Option<String>,
}

/// Decide admissibility and C-admissibility of `(I_k, J_k)`.
pub fn check_pair_k(gcm: &Gcm, j_set: &[usize], k: usize) -> Result<PairComponent> {
    let (ik, jk) = component_ik(gcm, j_set, k)?;
    let n = solve_hk(gcm, &ik, k)?;
    let admissible = all_positive_integers(&n);
    let kpos = ik.iter().position(|&i| i == k).expect("k in I_k");
    let highest_root_coeff = highest_root(gcm, &ik)?.coords()[kpos];
    let sigma_fixes_k = longest_element(gcm, &ik)?.fixes(k);
    let levels_ok = finite_positive_roots(gcm, &ik)?.iter().all(|beta| {
        let level: Rat = ik
            .iter()
            .zip(&n)
            .map(|(&i, ni)| {
                let p: i64 = ik
                    .iter()
                    .zip(beta.coords())
                    .map(|(&j, c)| c * gcm.a(i, j))
                    .sum();
                ni * rat(p)
            })
            .sum();
        level.is_zero() || level == rat(2)
    });
    if admissible && levels_ok != (highest_root_coeff == 1) {
        return Err(Error::CriteriaDisagree {
            k: gcm.label(k).to_string(),
            detail: format!(
                "highest-root coefficient {highest_root_coeff} but grading levels ok = {levels_ok}"
            ),
        });
    }
    let c_admissible = admissible && highest_root_coeff == 1 && sigma_fixes_k;
    Ok(PairComponent {
        k,
        k_label: gcm.label(k).to_string(),
        ik_labels: gcm.labels_of(&ik),
        jk_labels: gcm.labels_of(&jk),
        table1_label: table1_match(gcm, &ik, k),
        ik,
        jk,
        hk_coeffs: n,
        admissible,
        highest_root_coeff,
        sigma_fixes_k,
        levels_ok,
        c_admissible,
        sigma_divergence: admissible && highest_root_coeff == 1 && !sigma_fixes_k,
    })
}

/// The six families of irreducible C-admissible pairs, as
/// `(label, matrix, black vertex)` for a given rank.
pub fn table1_candidates(n: usize) -> Vec<(String, Gcm, usize)> {
    let mut out = Vec::new();
    let mut push = |label: String, g: Option<Gcm>, v: usize| {
        if let Some(g) = g {
            out.push((label, g, v));
        }
    };
    if n % 2 == 1 {
        push(
            format!("A_{{2n-1}}, n={}", (n + 1) / 2),
            try_classical('A', n),
            (n - 1) / 2,
        );
    }
    if n >= 3 {
        push(format!("B_n, n={n}"), try_classical('B', n), 0);
    }
    if n >= 2 {
        push(format!("C_n, n={n}"), try_classical('C', n), n - 1);
    }
    if n >= 4 {
        push(format!("D_{{n,1}}, n={n}"), try_classical('D', n), 0);
        if n % 2 == 0 {
            push(
                format!("D_{{2n,2}}, n={}", n / 2),
                try_classical('D', n),
                n - 1,
            );
        }
    }
    if n == 7 {
        push("E_7".to_string(), try_classical('E', 7), 6);
    }
    out
}

/// Match the diagram `ik` with black vertex `k` against the list of
/// irreducible C-admissible pairs.
pub fn table1_match(gcm: &Gcm, ik: &[usize], k: usize) -> Option<String> {
    let kpos = ik.iter().position(|&i| i == k)?;
    let sub = gcm.submatrix(ik);
    table1_candidates(ik.len())
        .into_iter()
        .find(|(_, cand, v)| sub.isomorphism_to(cand, Some((kpos, *v))).is_some())
        .map(|(label, _, _)| label)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairCheck {
    #[serde(skip)]
    pub j: Vec<usize>,
    #[serde(rename = "J")]
    pub j_labels: Vec<String>,
    pub components: Vec<PairComponent>,
    pub c_admissible: bool,
}

/// Check every `k` outside `J`. A pair with `J = I` is reported as not
/// C-admissible since there is no folded matrix.
pub fn check_pair(gcm: &Gcm, j_set: &[usize]) -> Result<PairCheck> {
    let mut j: Vec<usize> = j_set.to_vec();
    j.sort_unstable();
    j.dedup();
    if !gcm.is_finite_type(&j) {
        return Err(Error::JNotFiniteType(gcm.labels_of(&j)));
    }
    let components = (0..gcm.n())
        .filter(|k| !j.contains(k))
        .map(|k| check_pair_k(gcm, &j, k))
        .collect::<Result<Vec<_>>>()?;
    let c_admissible = !components.is_empty() && components.iter().all(|c| c.c_admissible);
    Ok(PairCheck {
        j_labels: gcm.labels_of(&j),
        j,
        components,
        c_admissible,
    })
}

/// Every `J` (by size, then lexicographically) with `(I, J)` C-admissible;
/// `J = I` is excluded.
pub fn enumerate_pairs(gcm: &Gcm) -> Result<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    for j in gcm.finite_type_subsets() {
        if j.len() == gcm.n() {
            continue;
        }
        match check_pair(gcm, &j) {
            Ok(c) if c.c_admissible => out.push(j),
            Ok(_) | Err(Error::NotFiniteTypeComponent(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// `I' = I \ J` coordinates of `alpha`.
pub fn restrict_pair(gcm: &Gcm, j_set: &[usize], alpha: &RootVec) -> RootVec {
    let ip: Vec<usize> = (0..gcm.n()).filter(|i| !j_set.contains(i)).collect();
    alpha.project(&ip)
}

/// The folded matrix `A^J` together with its realization inside `h`.
#[derive(Debug, Clone, Serialize)]
pub struct CAdmissibleAlgebra {
    #[serde(skip)]
    pub source: Gcm,
    #[serde(skip)]
    pub j: Vec<usize>,
    /// `I' = I \ J`, sorted.
    #[serde(skip)]
    pub i_prime: Vec<usize>,
    #[serde(rename = "J")]
    pub j_labels: Vec<String>,
    pub components: Vec<PairComponent>,
    #[serde(rename = "matrix")]
    pub aj: Gcm,
    #[serde(skip)]
    pub realization: Realization,
    /// Basis of `h^J` in the coordinates of `h`.
    #[serde(serialize_with = "rat_serde::vecs")]
    pub hj_basis: Vec<Vec<Rat>>,
    /// `H_k` in the coordinates of `h`, one per `k` in `I'`.
    #[serde(serialize_with = "rat_serde::vecs")]
    pub coroots: Vec<Vec<Rat>>,
    /// `alpha'_k` evaluated on the `h^J` basis.
    #[serde(serialize_with = "rat_serde::vecs")]
    pub roots: Vec<Vec<Rat>>,
    #[serde(skip)]
    aj_inverse: RatMatrix,
    /// `<alpha_k, rho^vee_J>` for `k` in `I'`.
    #[serde(skip)]
    rho_pairings: Vec<Rat>,
}

impl CAdmissibleAlgebra {
    pub fn n_prime(&self) -> usize {
        self.i_prime.len()
    }

    /// Replace the folded matrix, keeping everything else. Used to build
    /// negative controls for [`verify_theorem1_with`].
    pub fn with_matrix(&self, aj: Gcm) -> Self {
        Self { aj, ..self.clone() }
    }

    pub fn restrict(&self, alpha: &RootVec) -> RootVec {
        alpha.project(&self.i_prime)
    }

    fn lift(&self, m: &RootVec, x: &[i64]) -> RootVec {
        let mut v = vec![0; self.source.n()];
        for (p, &k) in self.i_prime.iter().enumerate() {
            v[k] = m.coords()[p];
        }
        for (p, &j) in self.j.iter().enumerate() {
            v[j] = x[p];
        }
        RootVec::new(v)
    }

    /// Calls `visit` on each root of the fiber over `m` that is antidominant
    /// for `W_J`; stops early when `visit` returns false.
    fn antidominant(&self, m: &RootVec, visit: &mut dyn FnMut(RootVec) -> bool) {
        let g = &self.source;
        let b: Vec<i64> = self
            .j
            .iter()
            .map(|&j| {
                -self
                    .i_prime
                    .iter()
                    .zip(m.coords())
                    .map(|(&k, mk)| mk * g.a(j, k))
                    .sum::<i64>()
            })
            .collect();
        let brat: Vec<Rat> = b.iter().map(|&x| rat(x)).collect();
        let upper: Vec<i64> = self
            .aj_inverse
            .mul_vec(&brat)
            .expect("dimensions")
            .iter()
            .map(|u| u.floor().to_integer().to_i64().unwrap_or(i64::MAX))
            .collect();
        let ht_bound: Rat = -m
            .coords()
            .iter()
            .zip(&self.rho_pairings)
            .map(|(mk, r)| rat(*mk) * r)
            .sum::<Rat>();
        let ht_bound = ht_bound.floor().to_integer().to_i64().unwrap_or(i64::MAX);
        if upper.iter().any(|&u| u < 0) || ht_bound < 0 {
            return;
        }
        let mut x = vec![0i64; self.j.len()];
        // depth-first over the box, pruned by the height bound
        fn go(
            alg: &CAdmissibleAlgebra,
            m: &RootVec,
            b: &[i64],
            upper: &[i64],
            ht_left: i64,
            p: usize,
            x: &mut Vec<i64>,
            visit: &mut dyn FnMut(RootVec) -> bool,
        ) -> bool {
            if p == x.len() {
                let g = &alg.source;
                let ok = alg.j.iter().enumerate().all(|(r, &jr)| {
                    let s: i64 = alg
                        .j
                        .iter()
                        .zip(x.iter())
                        .map(|(&jc, xc)| g.a(jr, jc) * xc)
                        .sum();
                    s <= b[r]
                });
                if !ok {
                    return true;
                }
                let beta = alg.lift(m, x);
                if root_test(g, &beta).is_root() {
                    return visit(beta);
                }
                return true;
            }
            for v in 0..=upper[p].min(ht_left) {
                x[p] = v;
                if !go(alg, m, b, upper, ht_left - v, p + 1, x, visit) {
                    return false;
                }
            }
            x[p] = 0;
            true
        }
        go(self, m, &b, &upper, ht_bound, 0, &mut x, visit);
    }

    /// Whether some positive root restricts to `m` (nonzero, nonnegative).
    pub fn fiber_nonempty(&self, m: &RootVec) -> bool {
        if !m.is_positive() {
            return false;
        }
        let mut found = false;
        self.antidominant(m, &mut |_| {
            found = true;
            false
        });
        found
    }

    /// Membership in the set of nonzero restrictions of roots.
    pub fn in_restricted_roots(&self, gamma: &RootVec) -> bool {
        if gamma.is_positive() {
            self.fiber_nonempty(gamma)
        } else if gamma.is_negative() {
            self.fiber_nonempty(&gamma.neg())
        } else {
            false
        }
    }
}

/// Build `A^J` with `a'_{k,l} = <alpha_l, H_k>` and its realization on `h^J`.
pub fn build_aj(gcm: &Gcm, j_set: &[usize]) -> Result<CAdmissibleAlgebra> {
    let check = check_pair(gcm, j_set)?;
    if let Some(bad) = check.components.iter().find(|c| !c.c_admissible) {
        let reason = if !bad.admissible {
            format!(
                "H_k coefficients {:?} are not positive integers",
                rat_strings(&bad.hk_coeffs)
            )
        } else if bad.highest_root_coeff != 1 {
            format!(
                "highest root has coefficient {} at k",
                bad.highest_root_coeff
            )
        } else {
            "-w_0 does not fix k".to_string()
        };
        return Err(Error::NotCAdmissible {
            i: format!("{{{}}}", bad.ik_labels.join(",")),
            j: format!("{{{}}}", bad.jk_labels.join(",")),
            k: bad.k_label.clone(),
            reason,
        });
    }
    if check.components.is_empty() {
        return Err(Error::NotCAdmissible {
            i: format!("{{{}}}", gcm.labels().join(",")),
            j: format!("{{{}}}", check.j_labels.join(",")),
            k: String::new(),
            reason: "J = I leaves no black vertex".to_string(),
        });
    }
    let j = check.j.clone();
    let i_prime: Vec<usize> = (0..gcm.n()).filter(|i| !j.contains(i)).collect();
    let np = i_prime.len();
    let mut entries = vec![vec![0i64; np]; np];
    for (r, comp) in check.components.iter().enumerate() {
        for (c, &l) in i_prime.iter().enumerate() {
            let v: Rat = comp
                .ik
                .iter()
                .zip(&comp.hk_coeffs)
                .map(|(&i, ni)| ni * rat(gcm.a(i, l)))
                .sum();
            assert!(v.is_integer(), "a'_{{k,l}} is an integer");
            entries[r][c] = v.to_integer().to_i64().expect("small entry");
        }
    }
    let aj = Gcm::new(gcm.labels_of(&i_prime), entries)?;

    let realization = Realization::new(gcm);
    let hj_basis = realization.subspace_hj(&j);
    let coroots: Vec<Vec<Rat>> = check
        .components
        .iter()
        .map(|c| {
            let coeffs: Vec<(usize, Rat)> =
                c.ik.iter()
                    .copied()
                    .zip(c.hk_coeffs.iter().cloned())
                    .collect();
            realization.coroot_vector(&coeffs)
        })
        .collect();
    let roots: Vec<Vec<Rat>> = i_prime
        .iter()
        .map(|&k| {
            hj_basis
                .iter()
                .map(|b| dot(realization.root_rows.row(k), b))
                .collect()
        })
        .collect();

    // realization invariants
    assert_eq!(hj_basis.len(), realization.dim_h - j.len());
    for h in &coroots {
        for &jj in &j {
            assert!(
                dot(realization.root_rows.row(jj), h).is_zero(),
                "H_k lies in h^J"
            );
        }
        assert!(coordinates_in(&hj_basis, h).is_some());
    }
    for (r, h) in coroots.iter().enumerate() {
        for (c, &l) in i_prime.iter().enumerate() {
            assert_eq!(dot(realization.root_rows.row(l), h), rat(aj.a(r, c)));
        }
    }
    assert_eq!(
        crate::linalg::rank_of(&roots),
        np,
        "alpha'_k independent on h^J"
    );
    assert_eq!(aj.corank(), gcm.corank(), "corank is preserved");
    assert!(aj.is_symmetrizable(), "A^J is symmetrizable");
    if gcm.is_indecomposable() {
        assert!(aj.is_indecomposable(), "A^J is indecomposable");
    }
    for (r, &k) in i_prime.iter().enumerate() {
        for (c, &l) in i_prime.iter().enumerate() {
            if r != c {
                let linked = gcm.j_connected(&j, k, l)?;
                assert_eq!(
                    aj.a(r, c) < 0,
                    linked,
                    "negative entries follow J-connectedness"
                );
            }
        }
    }

    let aj_inverse = if j.is_empty() {
        RatMatrix::zeros(0, 0)
    } else {
        gcm.submatrix(&j).to_rat().inverse()?
    };
    let rho = half_sum_coroots(gcm, &j)?;
    let rho_pairings = i_prime
        .iter()
        .map(|&k| {
            j.iter()
                .zip(&rho)
                .map(|(&jj, c)| c * rat(gcm.a(jj, k)))
                .sum()
        })
        .collect();
    Ok(CAdmissibleAlgebra {
        source: gcm.clone(),
        j_labels: check.j_labels,
        j,
        i_prime,
        components: check.components,
        aj,
        realization,
        hj_basis,
        coroots,
        roots,
        aj_inverse,
        rho_pairings,
    })
}

fn rat_strings(v: &[Rat]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

/// Data attached to the zero weight: the roots of `A_J` and `dim h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ZeroWeight {
    pub dim_h: usize,
    pub j_roots: Vec<RootVec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeightFiber {
    pub gamma: RootVec,
    /// Fiber members, sorted by height.
    pub roots: Vec<RootVec>,
    /// Number of `W_J`-orbits (one antidominant member each).
    pub orbits: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero_weight: Option<ZeroWeight>,
}

/// All positive roots restricting to `gamma` (coordinates over `I'`).
/// For `gamma = 0` the positive roots of `A_J` are returned and the full
/// zero-weight data is attached.
pub fn weight_fiber(
    alg: &CAdmissibleAlgebra,
    gamma: &RootVec,
    orbit_cap: usize,
) -> Result<WeightFiber> {
    if gamma.len() != alg.n_prime() {
        return Err(Error::DimensionMismatch {
            expected: alg.n_prime(),
            found: gamma.len(),
        });
    }
    if gamma.coords().iter().any(|&c| c < 0) {
        return Err(Error::InvalidWeight(gamma.coords().to_vec()));
    }
    let g = &alg.source;
    if gamma.is_zero() {
        let pos: Vec<RootVec> = if alg.j.is_empty() {
            Vec::new()
        } else {
            finite_positive_roots(g, &alg.j)?
                .into_iter()
                .map(|r| r.embed(&alg.j, g.n()))
                .collect()
        };
        let mut all: Vec<RootVec> = pos.clone();
        all.extend(pos.iter().map(RootVec::neg));
        return Ok(WeightFiber {
            gamma: gamma.clone(),
            roots: pos,
            orbits: 0,
            zero_weight: Some(ZeroWeight {
                dim_h: alg.realization.dim_h,
                j_roots: all,
            }),
        });
    }
    let mut seeds = Vec::new();
    alg.antidominant(gamma, &mut |beta| {
        seeds.push(beta);
        true
    });
    let mut seen: BTreeSet<RootVec> = BTreeSet::new();
    let mut queue: VecDeque<RootVec> = VecDeque::new();
    for s in &seeds {
        if seen.insert(s.clone()) {
            queue.push_back(s.clone());
        }
    }
    while let Some(beta) = queue.pop_front() {
        for &j in &alg.j {
            let p: i64 = (0..g.n()).map(|c| g.a(j, c) * beta.coords()[c]).sum();
            if p == 0 {
                continue;
            }
            let next = beta.add_simple(j, -p);
            if seen.insert(next.clone()) {
                if seen.len() > orbit_cap {
                    return Err(Error::OrbitCapExceeded(orbit_cap));
                }
                queue.push_back(next);
            }
        }
    }
    let mut roots: Vec<RootVec> = seen.into_iter().collect();
    sort_roots(&mut roots);
    Ok(WeightFiber {
        gamma: gamma.clone(),
        roots,
        orbits: seeds.len(),
        zero_weight: None,
    })
}

/// Orbit cap from `KMGRAD_MAX_WEYL`, falling back to [`DEFAULT_ORBIT_CAP`].
pub fn orbit_cap_from_env() -> usize {
    std::env::var("KMGRAD_MAX_WEYL")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_ORBIT_CAP)
}

/// Check that the nonzero restrictions of positive roots of height at most
/// `max_height` behave like the positive roots of `A^J`.
pub fn verify_theorem1(gcm: &Gcm, j_set: &[usize], max_height: usize) -> Result<CheckReport> {
    let alg = build_aj(gcm, j_set)?;
    Ok(verify_theorem1_with(&alg, max_height))
}

pub fn verify_theorem1_with(alg: &CAdmissibleAlgebra, max_height: usize) -> CheckReport {
    let mut rep = CheckReport::new();
    let np = alg.n_prime();
    let source_roots = positive_roots(&alg.source, max_height);
    rep.set("source_roots", source_roots.len() as u64);
    let restricted: BTreeSet<RootVec> = source_roots
        .iter()
        .map(|b| alg.restrict(b))
        .filter(|g| !g.is_zero())
        .collect();
    rep.set("restricted_roots", restricted.len() as u64);

    let mut memo: HashMap<RootVec, bool> = HashMap::new();
    let mut member = |g: &RootVec| -> bool {
        if let Some(&v) = memo.get(g) {
            return v;
        }
        let v = alg.in_restricted_roots(g);
        memo.insert(g.clone(), v);
        v
    };

    for k in 0..np {
        let e = RootVec::simple(np, k);
        if max_height >= 1 && !restricted.contains(&e) {
            rep.fail(
                "contains_simple",
                e.coords(),
                "alpha'_k is not a restricted root",
            );
        }
        let twice = e.scale(2);
        if member(&twice) {
            rep.fail(
                "omits_double",
                twice.coords(),
                "2 alpha'_k is a restricted root",
            );
        }
    }
    for gamma in &restricted {
        if !gamma.is_positive() {
            rep.fail(
                "in_positive_cone",
                gamma.coords(),
                "restriction of a positive root has a negative coordinate",
            );
        }
        if !alg.aj.is_connected(&gamma.support()) {
            rep.fail(
                "connected_support",
                gamma.coords(),
                "support is disconnected in A^J",
            );
        }
        for k in 0..np {
            if gamma.support() == [k] {
                continue;
            }
            let mut p = 0i64;
            while member(&gamma.add_simple(k, -(p + 1))) {
                p += 1;
            }
            let mut q = 0i64;
            while member(&gamma.add_simple(k, q + 1)) {
                q += 1;
            }
            let pairing: i64 = (0..np).map(|l| gamma.coords()[l] * alg.aj.a(k, l)).sum();
            rep.count("strings", 1);
            if p - q != pairing {
                rep.fail(
                    "string",
                    gamma.coords(),
                    format!(
                        "direction {}: p - q = {} but <gamma, H_k> = {pairing}",
                        alg.aj.label(k),
                        p - q
                    ),
                );
            }
        }
        if !root_test(&alg.aj, gamma).is_root() {
            rep.fail("subset_of_aj_roots", gamma.coords(), "not a root of A^J");
        }
    }
    let aj_roots = positive_roots(&alg.aj, max_height);
    rep.set("aj_roots", aj_roots.len() as u64);
    for gamma in &aj_roots {
        if !member(gamma) {
            rep.fail(
                "aj_roots_covered",
                gamma.coords(),
                "root of A^J is not a restriction",
            );
        }
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{builtin, classical};
    use crate::linalg::ratio;

    fn e10_j(labels: &[&str]) -> (Gcm, Vec<usize>) {
        let g = builtin("E10").unwrap();
        let j = g.indices_of(labels).unwrap();
        (g, j)
    }

    #[test]
    fn components() {
        let a3 = classical('A', 3);
        assert_eq!(component_ik(&a3, &[], 1).unwrap(), (vec![1], vec![]));
        let (g, j) = e10_j(&["2", "3", "4", "5"]);
        let six = g.index_of("6").unwrap();
        let (ik, _) = component_ik(&g, &j, six).unwrap();
        assert_eq!(g.labels_of(&ik), vec!["2", "3", "4", "5", "6"]);
        let m1 = g.index_of("-1").unwrap();
        assert_eq!(component_ik(&g, &j, m1).unwrap().0, vec![m1]);
        assert!(matches!(component_ik(&g, &j, j[0]), Err(Error::KInJ(_))));
    }

    #[test]
    fn hk_solves() {
        let a3 = classical('A', 3);
        assert_eq!(solve_hk(&a3, &[1], 1).unwrap(), vec![rat(1)]);
        assert_eq!(
            solve_hk(&a3, &[0, 1, 2], 1).unwrap(),
            vec![rat(1), rat(2), rat(1)]
        );
        let s5 = builtin("paper-s5").unwrap();
        let n = solve_hk(&s5, &[2, 3], 2).unwrap();
        assert_eq!(n, vec![ratio(4, 3), ratio(2, 3)]);
        assert!(!all_positive_integers(&n));
        let h33 = builtin("H3,3").unwrap();
        assert!(matches!(
            solve_hk(&h33, &[0, 1], 0),
            Err(Error::NotFiniteTypeComponent(_))
        ));
    }

    #[test]
    fn pair_components() {
        let a3 = classical('A', 3);
        let c = check_pair_k(&a3, &[0, 2], 1).unwrap();
        assert!(c.c_admissible);
        assert_eq!(c.table1_label.as_deref(), Some("A_{2n-1}, n=2"));
        let d4 = classical('D', 4);
        let c = check_pair_k(&d4, &[0, 2, 3], 1).unwrap();
        assert!(c.admissible && !c.c_admissible);
        assert_eq!(c.hk_coeffs, vec![rat(2), rat(4), rat(2), rat(2)]);
        assert_eq!(c.highest_root_coeff, 2);
        assert_eq!(c.table1_label, None);
        let s5 = builtin("paper-s5").unwrap();
        let c = check_pair_k(&s5, &[3], 2).unwrap();
        assert!(!c.admissible && !c.c_admissible);
    }

    #[test]
    fn table1_examples() {
        let c2 = classical('C', 2);
        assert_eq!(table1_match(&c2, &[0, 1], 1).as_deref(), Some("C_n, n=2"));
        let b2 = classical('B', 2);
        assert_eq!(table1_match(&b2, &[0, 1], 0).as_deref(), Some("C_n, n=2"));
        let d4 = classical('D', 4);
        assert_eq!(table1_match(&d4, &[0, 1, 2, 3], 1), None);
        let e7 = classical('E', 7);
        assert_eq!(table1_match(&e7, &e7.all(), 6).as_deref(), Some("E_7"));
        let a1 = classical('A', 1);
        assert_eq!(table1_match(&a1, &[0], 0).as_deref(), Some("A_{2n-1}, n=1"));
    }

    #[test]
    fn pairs() {
        let a3 = classical('A', 3);
        assert!(check_pair(&a3, &[]).unwrap().c_admissible);
        let (g, j) = e10_j(&["2", "3", "4", "5"]);
        assert!(check_pair(&g, &j).unwrap().c_admissible);
        let s5 = builtin("paper-s5").unwrap();
        assert!(!check_pair(&s5, &[3]).unwrap().c_admissible);
        let h33 = builtin("H3,3").unwrap();
        assert!(matches!(
            check_pair(&h33, &[0, 1]),
            Err(Error::JNotFiniteType(_))
        ));
    }

    #[test]
    fn enumerations() {
        assert_eq!(
            enumerate_pairs(&classical('A', 1)).unwrap(),
            vec![Vec::<usize>::new()]
        );
        let a3 = enumerate_pairs(&classical('A', 3)).unwrap();
        assert!(a3.contains(&vec![]) && a3.contains(&vec![0, 2]));
        let s5 = enumerate_pairs(&builtin("paper-s5").unwrap()).unwrap();
        assert!(!s5.contains(&vec![3]));
        assert!(s5.contains(&vec![]));
    }

    #[test]
    fn aj_examples() {
        let a3 = classical('A', 3);
        assert_eq!(build_aj(&a3, &[]).unwrap().aj, a3);

        let (g, j) = e10_j(&["2", "3", "4", "5"]);
        let alg = build_aj(&g, &j).unwrap();
        assert_eq!(alg.aj.labels(), &["-1", "0", "1", "6", "7", "8"]);
        assert_eq!(
            alg.aj.entries(),
            &[
                vec![2, -1, 0, 0, 0, 0],
                vec![-1, 2, 0, 0, 0, -1],
                vec![0, 0, 2, -1, 0, 0],
                vec![0, 0, -1, 2, -2, 0],
                vec![0, 0, 0, -1, 2, -1],
                vec![0, -1, 0, 0, -1, 2],
            ]
        );
        assert_eq!(alg.hj_basis.len(), 6);

        let (g, j) = e10_j(&["1", "2", "3", "4", "5", "6"]);
        let alg = build_aj(&g, &j).unwrap();
        assert_eq!(alg.aj.labels(), &["-1", "0", "7", "8"]);
        assert_eq!(
            alg.aj.entries(),
            &[
                vec![2, -1, 0, 0],
                vec![-1, 2, 0, -1],
                vec![0, 0, 2, -3],
                vec![0, -1, -1, 2],
            ]
        );

        let s5 = builtin("paper-s5").unwrap();
        assert!(matches!(
            build_aj(&s5, &[3]),
            Err(Error::NotCAdmissible { .. })
        ));
    }

    #[test]
    fn restriction() {
        let (g, j) = e10_j(&["2", "3", "4", "5"]);
        let mut v = vec![0; 10];
        for l in ["3", "4", "5", "6"] {
            v[g.index_of(l).unwrap()] = 1;
        }
        assert_eq!(
            restrict_pair(&g, &j, &RootVec::new(v)).coords(),
            &[0, 0, 0, 1, 0, 0]
        );
    }

    #[test]
    fn fibers() {
        let a3 = classical('A', 3);
        let alg = build_aj(&a3, &[0, 2]).unwrap();
        let f = weight_fiber(&alg, &RootVec::new(vec![1]), DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(f.roots.len(), 4);
        let brute: Vec<RootVec> = positive_roots(&a3, 10)
            .into_iter()
            .filter(|r| r.coords()[1] == 1)
            .collect();
        let mut brute_sorted = brute.clone();
        sort_roots(&mut brute_sorted);
        assert_eq!(f.roots, brute_sorted);
        let z = weight_fiber(&alg, &RootVec::new(vec![0]), DEFAULT_ORBIT_CAP).unwrap();
        assert_eq!(z.roots.len(), 2);
        assert_eq!(z.zero_weight.unwrap().dim_h, 3);
        assert!(matches!(
            weight_fiber(&alg, &RootVec::new(vec![-1]), DEFAULT_ORBIT_CAP),
            Err(Error::InvalidWeight(_))
        ));
    }

    #[test]
    fn theorem1_small() {
        let a3 = classical('A', 3);
        assert!(verify_theorem1(&a3, &[], 10).unwrap().passed);
        assert!(verify_theorem1(&a3, &[0, 2], 10).unwrap().passed);
    }
}
