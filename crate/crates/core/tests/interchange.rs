use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twocolim_core::fincat::{validate_category, FinCategory, FinFunctor, Mor, Obj, RawCategory};
use twocolim_core::generate::{strict_bi_indexed, GenLimits};
use twocolim_core::interchange::{
    build_colim_of_lims, build_lim_of_colims, build_psi, check_equivalence, check_equivalence_with,
    essential_preimage, EquivalenceOptions, HomFailure,
};
use twocolim_core::library;
use twocolim_core::pseudo::{product_index, BiIndexedPseudoFunctor, PseudoFunctor};

/// A strict bi-indexed functor from per-object values and per-morphism
/// functors on `I x J^op`.
fn strict(
    i: Arc<FinCategory>,
    j: Arc<FinCategory>,
    at: impl Fn(Obj, Obj) -> Arc<FinCategory>,
    on: impl Fn(Mor, Mor) -> FinFunctor,
    skip: bool,
) -> BiIndexedPseudoFunctor {
    let p = product_index(&i, &j);
    let cat = p.category.clone();
    let values = cat
        .objects()
        .map(|o| {
            let (a, b) = p.split_obj(o);
            at(a, b)
        })
        .collect();
    let functors = cat
        .morphisms()
        .map(|m| {
            let (s, t) = p.split_mor(m);
            on(s, t)
        })
        .collect();
    let u = PseudoFunctor::strict("a", cat, values, functors);
    u.validate().unwrap();
    BiIndexedPseudoFunctor::new(i, j, p, u, skip).unwrap()
}

fn constant(i: Arc<FinCategory>, j: Arc<FinCategory>, v: Arc<FinCategory>, skip: bool) -> BiIndexedPseudoFunctor {
    strict(i, j, |_, _| v.clone(), |_, _| FinFunctor::identity(&v), skip)
}

#[test]
fn terminal_times_terminal_is_the_value() {
    let v = library::iso2();
    let a = constant(library::terminal(), library::terminal(), v.clone(), false);
    let col = build_colim_of_lims(&a, false).unwrap();
    let lim = build_lim_of_colims(&a, false).unwrap();
    assert_eq!(col.colim.base().num_objects(), v.num_objects());
    assert_eq!(col.colim.base().num_morphisms(), v.num_morphisms());
    assert_eq!(lim.lim.base().num_objects(), v.num_objects());
    assert_eq!(lim.lim.base().num_morphisms(), v.num_morphisms());
    let psi = build_psi(&col, &lim).unwrap();
    assert!(psi.inverse().is_some());
    let report = check_equivalence_with(&a, EquivalenceOptions { cross_check: true, ..Default::default() }).unwrap();
    assert!(report.verdict);
    assert!(report.preimages.iter().all(|p| p.rounds == 0));
}

#[test]
fn degenerate_limit_leg_matches_the_colimit_of_the_slice() {
    let two = library::arrow();
    let (t, d) = (library::terminal(), library::discrete_pair());
    let a = strict(
        two.clone(),
        library::terminal(),
        |i, _| if i == 0 { t.clone() } else { d.clone() },
        |s, _| match (two.dom(s), two.cod(s)) {
            (0, 0) => FinFunctor::identity(&t),
            (1, 1) => FinFunctor::identity(&d),
            _ => FinFunctor::constant(&t, &d, 0),
        },
        false,
    );
    let col = build_colim_of_lims(&a, false).unwrap();
    let direct = twocolim_core::bicolim::build_2colim(&a.slice_at_j(0).unwrap()).unwrap();
    assert_eq!(col.colim.base().num_objects(), direct.base().num_objects());
    assert_eq!(col.colim.base().num_morphisms(), direct.base().num_morphisms());
    let report = check_equivalence_with(&a, EquivalenceOptions { cross_check: true, ..Default::default() }).unwrap();
    assert!(report.verdict);
}

#[test]
fn arrow_times_arrow_with_discrete_values() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let values = [library::terminal(), library::discrete_pair()];
    for k in 0..6 {
        let a = strict_bi_indexed(&mut rng, &format!("a{k}"), &library::arrow(), &library::arrow(), &values, GenLimits::default())
            .unwrap();
        let report = check_equivalence_with(&a, EquivalenceOptions { cross_check: true, ..Default::default() }).unwrap();
        assert!(report.verdict, "{k}");
        assert!(report.direct_checks.iter().all(|d| d.agrees && !d.skipped), "{:?}", report.direct_checks);
        assert!(report.fully_faithful.holds());
    }
}

#[test]
fn psi_preserves_identities() {
    let a = constant(library::arrow(), library::arrow(), library::z2(), false);
    let col = build_colim_of_lims(&a, false).unwrap();
    let lim = build_lim_of_colims(&a, false).unwrap();
    let psi = build_psi(&col, &lim).unwrap();
    let (src, tgt) = (psi.source(), psi.target());
    for o in src.objects() {
        assert_eq!(psi.mor(src.identity(o)), tgt.identity(psi.obj(o)));
    }
}

#[test]
fn feet_at_different_vertices_meet_at_the_end_of_the_arrow() {
    let a = constant(library::arrow(), library::discrete_pair(), library::terminal(), false);
    let col = build_colim_of_lims(&a, false).unwrap();
    let lim = build_lim_of_colims(&a, false).unwrap();
    let psi = build_psi(&col, &lim).unwrap();
    let two = library::arrow();
    let f = two.morphism_by_name("f").unwrap();
    let o = lim
        .lim
        .objects()
        .iter()
        .position(|x| lim.colimits[0].object_data(x.xs[0]).0 == 0 && lim.colimits[1].object_data(x.xs[1]).0 == 1)
        .unwrap();
    let pre = essential_preimage(&a, &col, &lim, &psi, o).unwrap();
    assert_eq!(pre.vertex, 1);
    assert_eq!(pre.legs, vec![f, two.identity(1)]);
    assert!(lim.lim.base().is_iso(pre.iso));
}

#[test]
fn image_objects_have_identity_witnesses() {
    let a = constant(library::arrow(), library::terminal(), library::iso2(), false);
    let col = build_colim_of_lims(&a, false).unwrap();
    let lim = build_lim_of_colims(&a, false).unwrap();
    let psi = build_psi(&col, &lim).unwrap();
    for t in col.colim.base().objects() {
        let pre = essential_preimage(&a, &col, &lim, &psi, psi.obj(t)).unwrap();
        assert_eq!(pre.triple, t);
        assert_eq!(pre.rounds, 0);
        assert!(lim.lim.base().is_identity(pre.iso));
    }
}

/// `Z/2` with the generator declared before the identity, so the first
/// representative of the identity class is `g`.
fn z2_generator_first() -> Arc<FinCategory> {
    let mut raw = RawCategory::new("Z2g").object("*").mor("g", "*", "*").mor("one", "*", "*");
    raw.identities = vec!["one".into()];
    raw.compose.push(("g".into(), "g".into(), "one".into()));
    Arc::new(validate_category(&raw).unwrap())
}

#[test]
fn equalization_step_fixes_representatives() {
    let idem = library::idempotent();
    let v = z2_generator_first();
    let g = v.morphism_by_name("g").unwrap();
    let one = v.morphism_by_name("one").unwrap();
    let collapse = FinFunctor::from_maps("collapse", v.clone(), v.clone(), vec![0], vec![one, one]);
    collapse.check().unwrap();
    let e = idem.morphism_by_name("e").unwrap();
    let a = strict(
        idem.clone(),
        library::terminal(),
        |_, _| v.clone(),
        |s, _| if s == e { collapse.clone() } else { FinFunctor::identity(&v) },
        false,
    );
    let col = build_colim_of_lims(&a, false).unwrap();
    let lim = build_lim_of_colims(&a, false).unwrap();
    let psi = build_psi(&col, &lim).unwrap();
    assert_eq!(lim.lim.objects().len(), 1);
    let theta = lim.lim.object(0).theta[0];
    let first = lim.colimits[0].members(theta)[0];
    assert_eq!(first.h, g);
    let pre = essential_preimage(&a, &col, &lim, &psi, 0).unwrap();
    assert_eq!(pre.rounds, 1);
    assert!(pre.rounds <= idem.num_morphisms());
    assert!(check_equivalence(&a).unwrap().verdict);
}

#[test]
fn discrete_index_fails_full_faithfulness() {
    let a = constant(library::discrete_pair(), library::empty(), library::terminal(), true);
    let report = check_equivalence_with(&a, EquivalenceOptions { skip_filter_check: true, cross_check: false }).unwrap();
    assert!(!report.verdict);
    assert_eq!(report.colim_of_lims.0, 2);
    assert_eq!(report.lim_of_colims.0, 1);
    assert!(report
        .fully_faithful
        .failures
        .iter()
        .any(|f| matches!(f.failure, Some(HomFailure::NotSurjective { .. }))));
}

#[test]
fn non_filtered_index_is_refused_without_the_flag() {
    let p = product_index(&library::discrete_pair(), &library::terminal());
    let v = library::terminal();
    let u = PseudoFunctor::strict(
        "a",
        p.category.clone(),
        vec![v.clone(); 2],
        p.category.morphisms().map(|_| FinFunctor::identity(&v)).collect(),
    );
    let err = BiIndexedPseudoFunctor::new(library::discrete_pair(), library::terminal(), p, u, false).unwrap_err();
    assert_eq!(err.code(), "E_NOT_FILTERED");
}
