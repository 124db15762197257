//! Randomized invariants over small generalized Cartan matrices.

use kmgrad_core::linalg::{rat, signature, RatMatrix};
use kmgrad_core::rootsys::{
    apply_word, positive_roots, reflect, root_string, root_test, terminates_within, BilinearData,
    Normalization, RootVerdict,
};
use kmgrad_core::{Gcm, RootVec};
use proptest::prelude::*;

/// Random GCM of rank 1..=max_n with off-diagonal entries in 0..=-3.
fn gcm_strategy(max_n: usize) -> impl Strategy<Value = Gcm> {
    (1..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * (n - 1) / 2;
            (
                Just(n),
                proptest::collection::vec((0i64..=3, 1i64..=3), pairs),
            )
        })
        .prop_map(|(n, cells)| {
            let mut m = vec![vec![0i64; n]; n];
            let mut it = cells.into_iter();
            for i in 0..n {
                m[i][i] = 2;
                for j in i + 1..n {
                    let (a, b) = it.next().unwrap();
                    if a != 0 {
                        m[i][j] = -a;
                        m[j][i] = -b;
                    }
                }
            }
            Gcm::unlabeled(m).unwrap()
        })
}

fn vec_strategy(n: usize, lo: i64, hi: i64) -> impl Strategy<Value = RootVec> {
    proptest::collection::vec(lo..=hi, n).prop_map(RootVec::new)
}

fn with_vec(max_n: usize, lo: i64, hi: i64) -> impl Strategy<Value = (Gcm, RootVec, usize)> {
    gcm_strategy(max_n).prop_flat_map(move |g| {
        let n = g.n();
        (Just(g), vec_strategy(n, lo, hi), 0..n)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn classification_ignores_vertex_order(g in gcm_strategy(5), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let p = g.permuted(&perm);
        let (a, b) = (g.classify(), p.classify());
        prop_assert_eq!(a.kind, b.kind);
        prop_assert_eq!(a.hyperbolic, b.hyperbolic);
        prop_assert_eq!(a.symmetrizable, b.symmetrizable);
        prop_assert_eq!(g.rank(), p.rank());
        prop_assert_eq!(g.det(), p.det());
    }

    #[test]
    fn signature_survives_unimodular_congruence(
        entries in proptest::collection::vec(-4i64..=4, 10),
        ops in proptest::collection::vec((0usize..4, 0usize..4, -2i64..=2), 0..8),
    ) {
        let mut s = vec![vec![0i64; 4]; 4];
        let mut it = entries.into_iter();
        for i in 0..4 {
            for j in i..4 {
                let v = it.next().unwrap();
                s[i][j] = v;
                s[j][i] = v;
            }
        }
        let mut u = vec![vec![0i64; 4]; 4];
        for (i, row) in u.iter_mut().enumerate() {
            row[i] = 1;
        }
        for (a, b, c) in ops {
            if a != b {
                // column a += c * column b
                for row in u.iter_mut() {
                    row[a] += c * row[b];
                }
            }
        }
        let sm = RatMatrix::from_ints(&s);
        let um = RatMatrix::from_ints(&u);
        let congruent = um.transpose().mul(&sm).unwrap().mul(&um).unwrap();
        prop_assert_eq!(signature(&sm).unwrap(), signature(&congruent).unwrap());
    }

    #[test]
    fn symmetrizer_balances_every_cell(g in gcm_strategy(5)) {
        if let Ok(d) = g.symmetrizer() {
            for i in 0..g.n() {
                for j in 0..g.n() {
                    prop_assert_eq!(&d[i] * rat(g.a(i, j)), &d[j] * rat(g.a(j, i)));
                }
            }
        }
    }

    #[test]
    fn reflections_are_involutions((g, v, i) in with_vec(5, -6, 6)) {
        let once = reflect(&g, i, &v).unwrap();
        prop_assert_eq!(reflect(&g, i, &once).unwrap(), v);
    }

    #[test]
    fn form_is_weyl_invariant((g, v, i) in with_vec(4, -4, 4), w in proptest::collection::vec(-4i64..=4, 4)) {
        if let Ok(b) = BilinearData::new(&g, &Normalization::default()) {
            let w = RootVec::new(w[..g.n()].to_vec());
            let (rv, rw) = (reflect(&g, i, &v).unwrap(), reflect(&g, i, &w).unwrap());
            prop_assert_eq!(b.form(&rv, &rw), b.form(&v, &w));
        }
    }

    #[test]
    fn roots_come_in_pairs((g, v, _) in with_vec(4, -3, 3)) {
        let a = root_test(&g, &v);
        let b = root_test(&g, &v.neg());
        prop_assert_eq!(a.is_root(), b.is_root());
        prop_assert_eq!(a.is_real(), b.is_real());
        if let RootVerdict::Real { simple, word } = a {
            prop_assert_eq!(apply_word(&g, &word, &RootVec::simple(g.n(), simple)), v);
        }
    }

    #[test]
    fn string_law_holds(g in gcm_strategy(3)) {
        for root in positive_roots(&g, 6) {
            for i in 0..g.n() {
                if root.support() == [i] {
                    continue;
                }
                let (p, q) = root_string(&g, &root, i).unwrap();
                let pairing: i64 = (0..g.n()).map(|c| root.coords()[c] * g.a(i, c)).sum();
                prop_assert_eq!(p as i64 - q as i64, pairing, "root {:?}", root.coords());
            }
        }
    }

    #[test]
    fn finite_type_iff_enumeration_stops(g in gcm_strategy(4)) {
        prop_assert_eq!(g.is_finite_type(&g.all()), terminates_within(&g, 24));
    }
}
