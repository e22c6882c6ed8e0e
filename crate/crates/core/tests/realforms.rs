use isofol_core::realforms::{
    cartan_decompose, cayley_chain, full_roots, nilpotent_exp, restricted_decomposition, verify_foliation_numeric,
    Family, MatrixAlgebra, RootKind,
};
use nalgebra::{DMatrix, DVector};
use proptest::prelude::*;
use isofol_core::foliation::{CheckKind, CheckStatus};
use isofol_core::rootsys::{find_simple_real_root, sigma_chain, Root, SigmaMethod};

fn realize(f: Family) -> MatrixAlgebra {
    MatrixAlgebra::realize(f).unwrap()
}

#[test]
fn dimensions_of_small_forms() {
    assert_eq!(realize(Family::SpR { n: 2 }).dim(), 10);
    assert_eq!(realize(Family::SuStar { n: 2 }).dim(), 15);
    let su21 = realize(Family::Su { p: 2, q: 1 });
    assert_eq!(su21.family, Family::Su { p: 1, q: 2 });
    assert_eq!((su21.dim(), su21.dim_k()), (8, 4));
    let sl2 = realize(Family::SlR { n: 2 });
    let (k, p) = cartan_decompose(&sl2).unwrap();
    assert_eq!((k.len(), p.len()), (1, 2));
    for n in 1..=3 {
        assert_eq!(realize(Family::SpR { n }).dim_k(), n * n);
    }
}

#[test]
fn excluded_families_are_rejected() {
    for f in [Family::So { p: 1, q: 1 }, Family::So { p: 2, q: 2 }, Family::So { p: 3, q: 1 }, Family::Su { p: 0, q: 3 }] {
        assert!(MatrixAlgebra::realize(f).is_err(), "{f}");
    }
}

#[test]
fn su21_restricted_roots_are_bc1() {
    let alg = realize(Family::Su { p: 1, q: 2 });
    let d = restricted_decomposition(&alg).unwrap();
    assert_eq!(d.real_rank(), 1);
    assert_eq!(d.sigma_type, "BC1");
    let mults: Vec<usize> = d.restricted.positives().iter().map(|r| d.restricted.multiplicity(r)).collect();
    assert_eq!(mults, vec![2, 1]);
    assert_eq!(d.dim_n(), 3);
    let full = full_roots(&alg, &d).unwrap();
    assert_eq!(full.type_name, "A2");
    let reals = full.real_positive();
    assert_eq!(reals.len(), 1);
    assert_eq!(full.max_strongly_orthogonal_real().unwrap().len(), 1);
    let simple = find_simple_real_root(full.system.positives(), &reals).unwrap();
    assert!(simple.simple_index().is_some());
}

#[test]
fn sl3_restricted_roots_are_a2() {
    let alg = realize(Family::SlR { n: 3 });
    let d = restricted_decomposition(&alg).unwrap();
    assert_eq!(d.sigma_type, "A2");
    assert_eq!(d.real_rank(), 2);
    assert!(d.restricted.positives().iter().all(|r| d.restricted.multiplicity(r) == 1));
    let full = full_roots(&alg, &d).unwrap();
    assert!(full.roots.iter().all(|r| r.kind == RootKind::Real));
    assert_eq!(full.roots.len(), 6);
}

#[test]
fn so23_has_two_strongly_orthogonal_real_roots() {
    let alg = realize(Family::So { p: 2, q: 3 });
    let d = restricted_decomposition(&alg).unwrap();
    let full = full_roots(&alg, &d).unwrap();
    assert_eq!(full.max_strongly_orthogonal_real().unwrap().len(), 2);
}

#[test]
fn sl2_cayley_gives_the_rotation_generator() {
    let alg = realize(Family::SlR { n: 2 });
    let d = restricted_decomposition(&alg).unwrap();
    let full = full_roots(&alg, &d).unwrap();
    let alpha = Root(vec![1]);
    let chain = cayley_chain(&alg, &d, &full, &[alpha]).unwrap();
    assert_eq!((chain.toroidal_dim, chain.vector_dim), (1, 0));
    let m = alg.matrix(&chain.h_basis[0]);
    assert!(m[(0, 0)].abs() < 1e-12 && (m[(0, 1)] + m[(1, 0)]).abs() < 1e-12 && m[(0, 1)].abs() > 0.1);
    assert!(chain.lemma_holds(1e-7));
}

#[test]
fn type_zero_reports() {
    for f in [Family::SlR { n: 2 }, Family::SlR { n: 3 }, Family::Su { p: 1, q: 2 }, Family::SpR { n: 2 }] {
        let alg = realize(f);
        let d = restricted_decomposition(&alg).unwrap();
        let full = full_roots(&alg, &d).unwrap();
        let chain = cayley_chain(&alg, &d, &full, &[]).unwrap();
        assert_eq!(chain.toroidal_dim, d.t_basis.len());
        let rep = verify_foliation_numeric(&alg, &d, &chain, d.restricted.positives(), 0).unwrap();
        assert!(rep.passed(), "{f}: {rep:?}");
        assert_eq!(rep.dim_n_j, d.dim_n());
        if d.is_split() {
            assert_eq!(rep.status(CheckKind::Lagrangian), CheckStatus::Pass);
            assert_eq!(rep.status(CheckKind::Transversal), CheckStatus::Pass);
        }
    }
}

#[test]
fn su21_type_alpha_is_trivial() {
    let alg = realize(Family::Su { p: 1, q: 2 });
    let d = restricted_decomposition(&alg).unwrap();
    let full = full_roots(&alg, &d).unwrap();
    let alpha = full.real_positive()[0].clone();
    let beta = full.get(&alpha).unwrap().restriction.clone().unwrap();
    let chain = cayley_chain(&alg, &d, &full, &[alpha]).unwrap();
    let sigma = sigma_chain(&d.restricted, &[beta], SigmaMethod::Greedy).unwrap();
    assert!(sigma.last().is_empty());
    let rep = verify_foliation_numeric(&alg, &d, &chain, sigma.last(), 0).unwrap();
    assert_eq!(rep.dim_n_j, 0);
    assert!(rep.passed());
}

fn small_forms() -> &'static [isofol_core::realforms::RealForm] {
    static FORMS: std::sync::OnceLock<Vec<isofol_core::realforms::RealForm>> = std::sync::OnceLock::new();
    FORMS.get_or_init(|| {
        [
            Family::SlR { n: 3 },
            Family::SpR { n: 2 },
            Family::Su { p: 1, q: 2 },
            Family::So { p: 2, q: 3 },
            Family::So { p: 1, q: 4 },
            Family::SoStar { n: 3 },
        ]
        .into_iter()
        .map(|f| isofol_core::realforms::RealForm::build(f).unwrap())
        .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_orbit_type_foliates(i in 0usize..6, j in 0usize..16, seed in any::<u64>()) {
        let form = &small_forms()[i];
        let types = form.orbit_types().unwrap();
        let f = &types[j % types.len()];
        let fol = form.foliate(f, SigmaMethod::Greedy, seed).unwrap();
        prop_assert!(fol.report.passed());
        prop_assert_eq!(fol.report.dim_n_j, form.datum.restricted.dimension(fol.sigma.last()));
        prop_assert_eq!(fol.chain.toroidal_dim, form.datum.t_basis.len() + f.len());
    }

    #[test]
    fn killing_form_is_invariant(i in 0usize..6, c in prop::collection::vec(-3i32..=3, 45)) {
        let alg = &small_forms()[i].algebra;
        let n = alg.dim();
        let v = |k: usize| DVector::from_iterator(n, (0..n).map(|m| c[(k * 15 + m) % c.len()] as f64));
        let (x, y, z) = (v(0), v(1), v(2));
        let lhs = alg.killing_form(&alg.bracket(&x, &y), &z);
        let rhs = alg.killing_form(&x, &alg.bracket(&y, &z));
        prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs()));
    }

    #[test]
    fn nilpotent_exponentials_are_inverse(entries in prop::collection::vec(-4.0f64..4.0, 6)) {
        let y = DMatrix::from_row_slice(4, 4, &[
            0.0, entries[0], entries[1], entries[2],
            0.0, 0.0, entries[3], entries[4],
            0.0, 0.0, 0.0, entries[5],
            0.0, 0.0, 0.0, 0.0,
        ]);
        let g = nilpotent_exp(&y).unwrap();
        let h = nilpotent_exp(&(-&y)).unwrap();
        prop_assert!((g * h - DMatrix::<f64>::identity(4, 4)).norm() <= 1e-10);
    }
}
