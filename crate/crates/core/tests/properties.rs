use proptest::prelude::*;

use toromaps::cover::{verify_covering, cover_with_exponent};
use toromaps::lattice::mat_det;
use toromaps::symmetry::{are_isomorphic, is_vertex_transitive};
use toromaps::{build_quotient, QuotientSpec, Sublattice, TilingId, VertexTypeSig};

fn nonsingular(max: i64) -> impl Strategy<Value = Sublattice> {
    prop::array::uniform4(-max..=max)
        .prop_filter("zero determinant", |e| e[0] * e[3] != e[1] * e[2])
        .prop_map(Sublattice::from)
}

fn unimodular() -> impl Strategy<Value = [[i64; 2]; 2]> {
    prop::array::uniform4(-3i64..=3)
        .prop_map(|e| [[e[0], e[1]], [e[2], e[3]]])
        .prop_filter("not unimodular", |u| mat_det(u).unwrap().abs() == 1)
}

fn tiling() -> impl Strategy<Value = TilingId> {
    prop::sample::select(TilingId::ALL.to_vec())
}

fn in_lattice(k: &Sublattice, v: [i64; 2]) -> bool {
    let [a, b, c, d] = k.entries();
    let det = a * d - b * c;
    (v[0] * d - v[1] * c) % det == 0 && (v[1] * a - v[0] * b) % det == 0
}

proptest! {
    #[test]
    fn exponent_divisibility(k in nonsingular(12)) {
        let det = k.index().unwrap();
        let m = k.cover_exponent().unwrap();
        let n = k.fold_index().unwrap();
        prop_assert_eq!(det % m, 0);
        prop_assert_eq!(n * det, m * m);
        prop_assert_eq!(m % n, 0);
        prop_assert!(in_lattice(&k, [m, 0]) && in_lattice(&k, [0, m]));
        for p in 1..m {
            if m % p == 0 {
                prop_assert!(!k.contains_scaled_identity(p).unwrap());
            }
        }
    }

    #[test]
    fn unimodular_invariance(k in nonsingular(8), u in unimodular()) {
        let uk = k.left_mul(&u).unwrap();
        prop_assert_eq!(uk.index().unwrap(), k.index().unwrap());
        prop_assert_eq!(uk.cover_exponent().unwrap(), k.cover_exponent().unwrap());
        prop_assert_eq!(uk.hermite_form().unwrap(), k.hermite_form().unwrap());
        let (ck, cuk) = (k.cosets().unwrap(), uk.cosets().unwrap());
        prop_assert_eq!(ck.invariants(), cuk.invariants());
        for &v in ck.representatives() {
            prop_assert!(cuk.representatives().iter().any(|&w| in_lattice(&k, [v[0] - w[0], v[1] - w[1]])));
        }
    }

    #[test]
    fn scalar_lattices(k in 1i64..40) {
        let s = Sublattice::scalar(k);
        prop_assert_eq!(s.cover_exponent().unwrap(), k);
        prop_assert_eq!(s.fold_index().unwrap(), 1);
    }

    #[test]
    fn cosets_are_distinct_and_complete(k in nonsingular(6).prop_filter("index above 30", |k| k.index().unwrap() <= 30)) {
        let c = k.cosets().unwrap();
        let reps = c.representatives();
        prop_assert_eq!(reps.len() as i64, k.index().unwrap());
        for (i, &v) in reps.iter().enumerate() {
            prop_assert_eq!(c.index_of(v).unwrap(), i);
            for &w in &reps[i + 1..] {
                prop_assert!(!in_lattice(&k, [v[0] - w[0], v[1] - w[1]]));
            }
        }
        let [a, b, cc, d] = k.entries();
        for (i, &v) in reps.iter().enumerate() {
            prop_assert_eq!(c.index_of([v[0] + a, v[1] + b]).unwrap(), i);
            prop_assert_eq!(c.index_of([v[0] - cc, v[1] - d]).unwrap(), i);
        }
    }

    #[test]
    fn signature_is_orientation_free(cycle in prop::collection::vec(prop::sample::select(vec![3u32, 4, 6, 8, 12]), 3..7), shift in 0usize..7) {
        let sig = VertexTypeSig::from_cycle(&cycle);
        let mut rotated = cycle.clone();
        rotated.rotate_left(shift % cycle.len());
        let mut reversed = cycle.clone();
        reversed.reverse();
        prop_assert_eq!(&VertexTypeSig::from_cycle(&rotated), &sig);
        prop_assert_eq!(&VertexTypeSig::from_cycle(&reversed), &sig);
        prop_assert_eq!(sig.to_string().parse::<VertexTypeSig>().unwrap(), sig);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn quotient_depends_only_on_lattice(id in tiling(), k in nonsingular(3), u in unimodular()) {
        let x = build_quotient(&QuotientSpec::new(id, k).unwrap()).unwrap();
        let ux = build_quotient(&QuotientSpec::new(id, k.left_mul(&u).unwrap()).unwrap()).unwrap();
        prop_assert!(are_isomorphic(&x, &ux).is_some());
        prop_assert_eq!(is_vertex_transitive(&x), is_vertex_transitive(&ux));
    }

    #[test]
    fn built_maps_are_tori(id in tiling(), k in nonsingular(4)) {
        let x = build_quotient(&QuotientSpec::new(id, k).unwrap()).unwrap();
        prop_assert_eq!(x.euler_characteristic(), 0);
        prop_assert!(x.check_flag_axioms().is_ok());
        prop_assert!(x.is_connected());
        prop_assert_eq!(x.is_semi_equivelar(), Some(id.signature()));
        prop_assert_eq!(x.vertex_count() as i64, id.rep_count() as i64 * k.index().unwrap());
    }

    #[test]
    fn covers_verify(id in tiling(), k in nonsingular(3), r in 1i64..=2) {
        let m = k.cover_exponent().unwrap();
        let b = cover_with_exponent(&QuotientSpec::new(id, k).unwrap(), r * m).unwrap();
        prop_assert!(verify_covering(&b.y, &b.x, &b.certificate).passed());
        prop_assert_eq!(b.y.vertex_count() as i64, b.certificate.n * b.x.vertex_count() as i64);
        // The cover of a scalar quotient is itself.
        let again = cover_with_exponent(&b.y_spec, r * m).unwrap();
        prop_assert_eq!(again.certificate.n, 1);
    }
}
