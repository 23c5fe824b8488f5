mod common;

use common::*;
use seqgroup::construct::{
    dr_sequencing_abelian, dr_sequencing_z2xh, predicted_product_bar, symmetric_harmonious_construct,
    symmetric_sequencing_pow2, symmetric_sequencing_product, ConstructError,
};
use seqgroup::families::abelian_invariant_factors;
use seqgroup::group::Subset;
use seqgroup::seq::{bar_seq, check_seq, verify, PropertyKind, Seq};

#[test]
fn z2xz5_fixture() {
    let h = group("Z5");
    let hseq = symmetric_harmonious_construct(&h).unwrap();
    assert_eq!(hseq.terms(), &[0, 1, 2, 3, 4]);
    let (g, s, trace) = dr_sequencing_z2xh(&h, &hseq).unwrap();
    assert_eq!(s.labels(&g), tuple_labels(&Z2XZ5_SEQUENCE));
    assert_eq!(check_seq(&g, &s).labels(&g), tuple_labels(&Z2XZ5_QUOTIENTS));
    assert_eq!(trace.derived, tuple_labels(&Z2XZ5_QUOTIENTS));
    assert!(verify(&g, &Subset::full(&g), PropertyKind::DoubleRSequencing, &s).unwrap().pass);
    assert!(holds(&g, PropertyKind::DoubleRSequencing, s.terms()));
}

#[test]
fn z4xz3_fixture() {
    let (k, h) = (group("Z4"), group("Z3"));
    let kseq = Seq::new(vec![0, 1, 3, 2]).unwrap();
    let hseq = Seq::new(vec![0, 1, 2]).unwrap();
    let (g, s, _) = symmetric_sequencing_product(&k, &kseq, &h, &hseq).unwrap();
    assert_eq!(s.labels(&g), tuple_labels(&Z4XZ3_SEQUENCE));
    assert_eq!(bar_seq(&g, &s).labels(&g), tuple_labels(&Z4XZ3_BAR));
    assert!(holds(&g, PropertyKind::SymmetricSequencing, s.terms()));
}

#[test]
fn z2xh_outputs_have_every_element_twice() {
    for spec in ["Z3", "Z5", "Z7", "Z9", "Z3xZ3", "Z11", "Z13", "Z15", "Z3xZ5", "Z21"] {
        let h = group(spec);
        let hseq = symmetric_harmonious_construct(&h).unwrap();
        assert!(holds(&h, PropertyKind::SymmetricHarmonious, hseq.terms()), "{spec}");
        let (g, s, _) = dr_sequencing_z2xh(&h, &hseq).unwrap();
        assert_eq!(s.len(), 4 * h.order() - 2);
        assert!(holds(&g, PropertyKind::DoubleRSequencing, s.terms()), "{spec}");
    }
}

#[test]
fn product_bar_matches_prediction() {
    for kspec in ["Z2", "Z4", "Z8", "Z16"] {
        for hspec in ["Z1", "Z3", "Z5", "Z7", "Z3xZ3"] {
            let (k, h) = (group(kspec), group(hspec));
            let kseq = symmetric_sequencing_pow2(k.order().trailing_zeros()).unwrap();
            let hseq = symmetric_harmonious_construct(&h).unwrap();
            let (g, s, _) = symmetric_sequencing_product(&k, &kseq, &h, &hseq).unwrap();
            assert!(holds(&g, PropertyKind::SymmetricSequencing, s.terms()), "{kspec} {hspec}");
            assert_eq!(bar_seq(&g, &s), predicted_product_bar(&k, &kseq, &h, &hseq));
        }
    }
}

#[test]
fn zig_zag_bar_alternates_signs() {
    for k in 1..=6 {
        let n = 1usize << k;
        let g = group(&format!("Z{n}"));
        let s = symmetric_sequencing_pow2(k).unwrap();
        // 0, 1, -2, 3, -4, ..., n-1
        let expected: Vec<usize> = (0..n)
            .map(|i| if i % 2 == 1 { i } else { (n - i) % n })
            .collect();
        assert_eq!(bar_seq(&g, &s).terms(), &expected[..]);
        assert!(holds(&g, PropertyKind::SymmetricSequencing, s.terms()));
    }
}

#[test]
fn abelian_groups_through_order_24() {
    assert!(matches!(dr_sequencing_abelian(&[2]), Err(ConstructError::CyclicTwo)));
    for n in 3..=24 {
        for factors in abelian_invariant_factors(n) {
            let (g, s, _) = dr_sequencing_abelian(&factors).unwrap();
            assert!(holds(&g, PropertyKind::DoubleRSequencing, s.terms()), "{factors:?}");
        }
    }
    for factors in [[3, 4], [4, 3], [3, 8], [6, 3], [5, 2]] {
        let (g, s, _) = dr_sequencing_abelian(&factors).unwrap();
        assert!(holds(&g, PropertyKind::DoubleRSequencing, s.terms()), "{factors:?}");
    }
}

#[test]
fn doubling_uses_the_involution() {
    for factors in [&[4, 3][..], &[8][..], &[4, 5][..], &[16, 3][..], &[12][..]] {
        let (g, s, trace) = dr_sequencing_abelian(factors).unwrap();
        let half = s.len() / 2;
        let alpha = trace.alpha.unwrap();
        assert_eq!(alpha, 1 + g.order() / 2);
        let (g1, last) = (s[0], s[half - 1]);
        assert_eq!(g.pow(g1, alpha as i64 - 1), last);
        assert_eq!(g.mul(last, last), g.identity());
        assert_ne!(last, g.identity());
        for i in 0..half {
            assert_eq!(s[half + i], g.pow(s[i], alpha as i64));
        }
    }
}

#[test]
fn traces_serialize() {
    let (_, _, trace) = dr_sequencing_abelian(&[4, 3]).unwrap();
    let json = serde_json::to_value(&trace).unwrap();
    assert_eq!(json["alpha"], 7);
    assert_eq!(json["inner"]["construction"], "symmetric-sequencing-product");
    assert_eq!(json["inner"]["indices"][5]["s"], -1);
}
