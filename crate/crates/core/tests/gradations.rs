//! Quotients and restriction specs across the small-matrix corpus.

use kmgrad_core::cadmissible::enumerate_pairs;
use kmgrad_core::families::{affine_abcd, builtin, connected_finite};
use kmgrad_core::gradation::{
    analyze, cartan_constraints, check_adapted, fiber_counts, imaginary_sign_check, PairClass,
    RestrictionSpec,
};
use kmgrad_core::quotient::{build_abar, enumerate_quotients};
use kmgrad_core::rootsys::positive_roots;
use kmgrad_core::Gcm;

fn corpus() -> Vec<(String, Gcm)> {
    let mut c = connected_finite(5);
    c.extend(affine_abcd(5));
    c.push(("H3,3".into(), builtin("H3,3").unwrap()));
    c.push(("paper-s5".into(), builtin("paper-s5").unwrap()));
    c
}

#[test]
fn identity_specs_are_maximal() {
    for (name, g) in corpus() {
        let spec = RestrictionSpec::identity(&g);
        let r = analyze(&spec, 6).unwrap();
        assert_eq!(r.verdicts.pair_classification, PairClass::Maximal, "{name}");
        assert!(r.j_circ.is_empty() && r.i_re == g.all(), "{name}");
        let c = cartan_constraints(&spec).unwrap();
        assert_eq!(c.solution_dim, c.expected_dim, "{name}");
    }
}

#[test]
fn quotient_specs_have_no_zero_or_imaginary_vertices() {
    for (name, g) in corpus() {
        for q in enumerate_quotients(&g, None) {
            let spec = RestrictionSpec::from_quotient(&q).unwrap();
            let r = analyze(&spec, 6).unwrap();
            assert!(
                r.j.is_empty() && r.i_im_prime.is_empty(),
                "{name} {:?}",
                q.fibers
            );
            assert_eq!(r.verdicts.pair_classification, PairClass::Maximal);
            assert!(r.verdicts.disjoint_union_ok && r.verdicts.fiber_orthogonality_ok);
            assert!(check_adapted(&spec, 6).passed);
            assert!(
                imaginary_sign_check(&spec, 6).passed,
                "{name} {:?}",
                q.fibers
            );
            for b in positive_roots(&g, 6) {
                let img = q.restrict(&b);
                assert_eq!(img.height(), b.height());
            }
            let mg = build_abar(&q).unwrap();
            assert!(mg.abar.is_indecomposable());
        }
    }
}

#[test]
fn pair_specs_match_their_pairs() {
    for (name, g) in connected_finite(5) {
        for j in enumerate_pairs(&g).unwrap() {
            let spec = RestrictionSpec::from_pair(&g, &j).unwrap();
            let r = analyze(&spec, 12).unwrap();
            let want = if j.is_empty() {
                PairClass::Maximal
            } else {
                PairClass::CAdmissible
            };
            assert_eq!(r.verdicts.pair_classification, want, "{name} {j:?}");
            assert_eq!((r.i_re.clone(), r.j_re.clone()), (g.all(), j.clone()));
            assert!(
                r.verdicts.pair_ok && r.verdicts.adapted_up_to_h && r.verdicts.simple_fibers_ok
            );
            assert_eq!(g.classify().kind, spec.target.classify().kind);
            for f in fiber_counts(&spec, 12).unwrap() {
                assert_eq!(Some(f.total), f.exact_total, "{name} {j:?} {:?}", f.image);
            }
        }
    }
}
