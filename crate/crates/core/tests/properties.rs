use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use twocolim_core::bicolim::build_2colim;
use twocolim_core::bilim::{build_2lim, check_object_conditions};
use twocolim_core::fincat::{cocone_and_equalize, cospan_category, is_filtered, validate_category, FinCategory, RawCategory};
use twocolim_core::generate::{random_instance, random_set_diagram, GenLimits};
use twocolim_core::interchange::{build_colim_of_lims, build_lim_of_colims, build_psi, check_equivalence, essential_preimage};
use twocolim_core::library;
use twocolim_core::pseudo::product_index;
use twocolim_core::setdiag::{brute, colim_set, interchange_map_set, lim_set, SetDiagram};

fn all_shapes() -> Vec<Arc<FinCategory>> {
    let mut v = library::filtered_shapes();
    v.extend(library::non_filtered_shapes());
    v.extend(library::limit_shapes());
    v.extend(library::value_categories());
    v
}

fn permuted(c: &FinCategory, seed: u64) -> FinCategory {
    use rand::seq::SliceRandom;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = c.to_raw();
    let mut order: Vec<usize> = (0..raw.objects.len()).collect();
    order.shuffle(&mut rng);
    let mut shuffled = RawCategory {
        name: raw.name.clone(),
        objects: order.iter().map(|&o| raw.objects[o].clone()).collect(),
        identities: order.iter().map(|&o| raw.identities[o].clone()).collect(),
        morphisms: raw.morphisms.clone(),
        compose: raw.compose.clone(),
    };
    shuffled.morphisms.shuffle(&mut rng);
    shuffled.compose.shuffle(&mut rng);
    validate_category(&shuffled).unwrap()
}

fn sorted(mut classes: Vec<Vec<(usize, usize)>>) -> Vec<Vec<(usize, usize)>> {
    for c in &mut classes {
        c.sort();
    }
    classes.sort();
    classes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn library_categories_satisfy_the_laws(k in 0usize..22, seed in any::<u64>()) {
        let shapes = all_shapes();
        let c = permuted(&shapes[k % shapes.len()], seed);
        prop_assert!(c.check_laws().is_ok());
    }

    #[test]
    fn filteredness_ignores_declaration_order(k in 0usize..22, seed in any::<u64>()) {
        let shapes = all_shapes();
        let c = &shapes[k % shapes.len()];
        prop_assert_eq!(is_filtered(c).verdict, is_filtered(&permuted(c, seed)).verdict);
    }

    #[test]
    fn cospan_categories_of_filtered_shapes_are_filtered(k in 0usize..6, a in 0usize..3, b in 0usize..3) {
        let c = &library::filtered_shapes()[k];
        let (a, b) = (a % c.num_objects(), b % c.num_objects());
        let cs = cospan_category(c, a, b).unwrap();
        prop_assert!(is_filtered(&cs.category).verdict);
    }

    #[test]
    fn cocones_replay(k in 0usize..6, tips in proptest::collection::vec(0usize..3, 1..4), pick in any::<u64>()) {
        let c = &library::filtered_shapes()[k];
        let tips: Vec<usize> = tips.into_iter().map(|t| t % c.num_objects()).collect();
        let pairs: Vec<(usize, usize)> = c
            .objects()
            .flat_map(|a| c.objects().map(move |b| (a, b)))
            .flat_map(|(a, b)| {
                let h = c.hom(a, b);
                h.iter().flat_map(move |&f| h.iter().map(move |&g| (f, g)))
            })
            .collect();
        let eq = pairs[(pick as usize) % pairs.len()];
        let cocone = cocone_and_equalize(c, &is_filtered(c), &tips, &[eq]).unwrap();
        for &t in &tips {
            prop_assert_eq!(c.cod(cocone.leg(t)), cocone.vertex);
        }
        let l = cocone.leg(c.cod(eq.0));
        prop_assert_eq!(c.compose(l, eq.0), c.compose(l, eq.1));
    }

    #[test]
    fn set_colimits_and_limits_match_brute_force(seed in any::<u64>(), k in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ix = library::limit_shapes()[k].clone();
        let p = product_index(&library::terminal(), &ix);
        let Some((sizes, actions)) = random_set_diagram(&mut rng, &p, 3, GenLimits::default()) else {
            return Ok(());
        };
        let d = SetDiagram::new(&p.category, sizes.clone(), actions.clone()).unwrap();
        prop_assert_eq!(sorted(colim_set(&d).classes().to_vec()), sorted(brute::colim_classes(&d)));
        let fams = lim_set(&d).families().to_vec();
        prop_assert_eq!(&fams, &brute::lim_families(&p.category, &sizes, |m, x| actions[m][x]));
        for f in &fams {
            for (o, &x) in f.iter().enumerate() {
                prop_assert!(x < sizes[o]);
            }
        }
    }

    #[test]
    fn relabelling_elements_preserves_colimit_classes(seed in any::<u64>(), shift in 1usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = product_index(&library::arrow(), &library::terminal());
        let (sizes, actions) = random_set_diagram(&mut rng, &p, 3, GenLimits::default()).unwrap();
        let d = SetDiagram::new(&p.category, sizes.clone(), actions.clone()).unwrap();
        let c = &*p.category;
        let rot = |o: usize, x: usize| (x + shift) % sizes[o];
        let moved: Vec<Vec<usize>> = c
            .morphisms()
            .map(|m| {
                let mut a = vec![0; sizes[c.dom(m)]];
                for x in 0..sizes[c.dom(m)] {
                    a[rot(c.dom(m), x)] = rot(c.cod(m), actions[m][x]);
                }
                a
            })
            .collect();
        let e = SetDiagram::new(c, sizes.clone(), moved).unwrap();
        let (before, after) = (colim_set(&d), colim_set(&e));
        prop_assert_eq!(before.num_classes(), after.num_classes());
        for o in c.objects() {
            for x in 0..sizes[o] {
                for y in 0..sizes[o] {
                    prop_assert_eq!(
                        before.class(o, x) == before.class(o, y),
                        after.class(o, rot(o, x)) == after.class(o, rot(o, y))
                    );
                }
            }
        }
    }

    #[test]
    fn set_interchange_is_bijective_for_filtered_indices(seed in any::<u64>(), a in 0usize..6, b in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let i = library::filtered_shapes()[a].clone();
        let j = library::limit_shapes()[b].clone();
        let p = product_index(&i, &j);
        let Some((sizes, actions)) = random_set_diagram(&mut rng, &p, 3, GenLimits::default()) else {
            return Ok(());
        };
        let r = interchange_map_set(&p, &sizes, &actions).unwrap();
        prop_assert!(r.bijective, "{:?}", r.witness);
        let (left, right) = brute::interchange_sizes(&p, &sizes, &actions);
        prop_assert_eq!(r.colim_of_lims.num_classes(), left);
        prop_assert_eq!(r.lim_of_colims.len(), right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn interchange_is_an_equivalence(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_instance(&mut rng, "a", GenLimits::default());
        let report = check_equivalence(&a).unwrap();
        prop_assert!(report.verdict, "{:?}", report.preimage_failures);
    }

    #[test]
    fn preimages_satisfy_the_limit_conditions(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_instance(&mut rng, "a", GenLimits::default());
        let col = build_colim_of_lims(&a, false).unwrap();
        let lim = build_lim_of_colims(&a, false).unwrap();
        let psi = build_psi(&col, &lim).unwrap();
        for o in 0..lim.lim.objects().len() {
            let pre = essential_preimage(&a, &col, &lim, &psi, o).unwrap();
            prop_assert!(pre.rounds <= a.i.num_morphisms());
            let (k, x) = col.triple(pre.triple);
            prop_assert_eq!(k, pre.vertex);
            prop_assert!(check_object_conditions(col.limits[k].diagram(), &x.xs, &x.theta).unwrap().is_none());
            prop_assert_eq!(lim.lim.endpoints(pre.iso), (o, psi.obj(pre.triple)));
            prop_assert!(lim.lim.base().is_iso(pre.iso));
        }
    }

    #[test]
    fn terminal_index_degenerates_to_the_value(k in 0usize..7) {
        let v = library::value_categories()[k].clone();
        let b = twocolim_core::pseudo::PseudoFunctor::constant(&library::terminal(), &v);
        let colim = build_2colim(&b).unwrap();
        let lim = build_2lim(&b).unwrap();
        prop_assert_eq!(colim.injection(0).inverse().map(|f| f.source().num_objects()), Some(v.num_objects()));
        prop_assert!(lim.projection(0).inverse().is_some());
    }
}
