use brace_core::homotopy_data::{
    ingest_table, rational_pi_sphere, rationalize, FGAbGroup, GroupHom, HtpyTable, Provenance, Space, BUNDLED_TABLE,
};
use num_integer::Integer;
use proptest::prelude::*;

/// |{x : d·x = 0}| for Z/f₁ ⊕ … — an isomorphism invariant computed
/// straight from any cyclic decomposition.
fn d_torsion_count(factors: &[i64], d: i64) -> i64 {
    factors.iter().filter(|&&f| f > 1).map(|&f| f.gcd(&d)).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn normalization_preserves_isomorphism_type(factors in prop::collection::vec(0i64..=36, 0..5)) {
        let (g, _) = FGAbGroup::normalized(0, &factors);
        let t = g.torsion();
        prop_assert!(t.iter().all(|&d| d >= 2));
        prop_assert!(t.windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert_eq!(g.rank(), factors.iter().filter(|&&f| f == 0).count());
        for d in 1..=36 {
            prop_assert_eq!(d_torsion_count(t, d), d_torsion_count(&factors, d));
        }
        let (again, canonical) = FGAbGroup::normalized(g.rank(), t);
        prop_assert!(canonical);
        prop_assert_eq!(again, g.clone());
        prop_assert_eq!(rationalize(&g), g.rank());
    }

    #[test]
    fn relations_agree_with_diagonal(factors in prop::collection::vec(0i64..=20, 1..4)) {
        let n = factors.len();
        let rels: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| if i == j { factors[i] } else { 0 }).collect()).collect();
        prop_assert_eq!(FGAbGroup::from_relations(n, &rels).unwrap(), FGAbGroup::normalized(0, &factors).0);
    }

    #[test]
    fn relation_row_operations_do_not_change_cokernel(
        a in -6i64..=6, b in -6i64..=6, c in -6i64..=6, d in -6i64..=6, k in -3i64..=3,
    ) {
        let rels = vec![vec![a, b], vec![c, d]];
        let moved = vec![vec![a + k * c, b + k * d], vec![c, d]];
        let g = FGAbGroup::from_relations(2, &rels).unwrap();
        prop_assert_eq!(&g, &FGAbGroup::from_relations(2, &moved).unwrap());
        // Finite exactly when det ≠ 0, of order |det|.
        let det = a * d - b * c;
        if det != 0 {
            prop_assert_eq!(g.order(), Some(det.unsigned_abs()));
        } else {
            prop_assert!(g.order().is_none());
        }
    }

    #[test]
    fn element_arithmetic(factors in prop::collection::vec(2i64..=12, 1..4), xs in prop::collection::vec(-30i64..=30, 4), ys in prop::collection::vec(-30i64..=30, 4)) {
        let (g, _) = FGAbGroup::normalized(1, &factors);
        let n = g.ngens();
        let x = g.element(&xs[..n.min(4)].iter().copied().chain(std::iter::repeat(0)).take(n).collect::<Vec<_>>()).unwrap();
        let y = g.element(&ys[..n.min(4)].iter().copied().chain(std::iter::repeat(0)).take(n).collect::<Vec<_>>()).unwrap();
        prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
        prop_assert!(x.add(&x.neg()).unwrap().is_zero());
        prop_assert_eq!(x.sub(&y).unwrap().add(&y).unwrap(), x.clone());
        if let Some(o) = x.order() {
            prop_assert!(x.scale(o as i64).is_zero());
        }
    }

    #[test]
    fn homs_between_free_groups(m in prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 2), v in prop::collection::vec(-5i64..=5, 3)) {
        // Z^3 → Z^2 with matrix m (rows = target coordinates).
        let z3 = FGAbGroup::normalized(3, &[]).0;
        let z2 = FGAbGroup::normalized(2, &[]).0;
        let h = GroupHom::new(z3.clone(), z2.clone(), m.clone()).unwrap();
        let x = z3.element(&v).unwrap();
        let hx = h.apply(&x).unwrap();
        let direct: Vec<i64> = m.iter().map(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum()).collect();
        prop_assert_eq!(hx.coords(), &direct[..]);
        for k in h.kernel_generators() {
            prop_assert!(h.apply(&k).unwrap().is_zero());
        }
        let pre = h.preimage(&hx).unwrap();
        prop_assert_eq!(h.apply(&pre).unwrap(), hx);
    }
}

#[test]
fn bundled_table_is_cited_and_canonical() {
    let (t, report) = ingest_table(BUNDLED_TABLE).unwrap();
    assert!(report.warnings.is_empty());
    assert_eq!(report.entry_count, t.len());
    assert_eq!(report.paper_entries.len() + report.literature_entries.len(), t.len());
    for e in t.entries() {
        assert!(!e.citation.trim().is_empty(), "{}", e.label());
        if e.provenance == Provenance::Paper {
            assert!(report.paper_entries.contains(&e.label()));
        }
    }
}

#[test]
fn pinned_paper_entries() {
    let t = HtpyTable::bundled();
    let z12 = FGAbGroup::cyclic(12);
    assert_eq!(t.sphere(3, 6).unwrap(), z12);
    assert_eq!(t.sphere(2, 5).unwrap(), FGAbGroup::cyclic(2));
    assert_eq!(t.sphere(2, 3).unwrap(), FGAbGroup::integers());
    assert_eq!(t.sphere(3, 4).unwrap(), FGAbGroup::cyclic(2));
    assert_eq!(t.group_lookup(&Space::LieGroup("SU(3)".into()), 4).unwrap(), FGAbGroup::trivial());
    assert_eq!(t.sphere(13, 24).unwrap(), FGAbGroup::cyclic(504));
}

#[test]
fn table_ranks_match_serre() {
    // Every tabulated sphere group has the rational rank Serre's theorem predicts.
    let t = HtpyTable::bundled();
    for e in t.entries() {
        if let Space::Sphere(n) = e.space {
            if n >= 2 {
                assert_eq!(rationalize(&e.group), rational_pi_sphere(n, e.degree), "{}", e.label());
            }
        }
    }
}

#[test]
fn schema_errors_name_the_field() {
    let missing_cite = r#"{"schema": "htpy-table/1", "entries": [
        {"space": {"kind": "sphere", "param": 3}, "degree": 6, "rank": 0, "torsion": [12], "citation": " ", "provenance": "paper"}]}"#;
    let e = ingest_table(missing_cite).unwrap_err().to_string();
    assert!(e.contains("entries[0].citation"), "{e}");
    let wrong = r#"{"schema": "htpy-table/9", "entries": []}"#;
    assert!(ingest_table(wrong).unwrap_err().to_string().contains("schema"));
    let dup = r#"{"schema": "htpy-table/1", "entries": [
        {"space": {"kind": "sphere", "param": 3}, "degree": 6, "rank": 0, "torsion": [12], "citation": "a", "provenance": "paper"},
        {"space": {"kind": "sphere", "param": 3}, "degree": 6, "rank": 0, "torsion": [12], "citation": "b", "provenance": "paper"}]}"#;
    assert!(ingest_table(dup).unwrap_err().to_string().contains("duplicate"));
}
