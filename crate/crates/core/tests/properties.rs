mod common;

use std::collections::HashSet;

use proptest::prelude::*;

use common::*;
use modegen::algebra::{intertwines, ModuleMap, Representation};
use modegen::certificate::hom_defect;
use modegen::enumerate::{all_vectors, enum_submodules};
use modegen::fixtures::{self, DualNumbers, Kronecker, Truncated};
use modegen::hom::{hom_dim, hom_matrices, upper_triangular_intertwiners};
use modegen::io::Document;
use modegen::iso::{is_isomorphic, IsoVerdict, SearchOptions};
use modegen::ladder::{
    build_family, evaluate_family, make_monic, orbit_dim_ud, psi_embed, verify_ladder,
};
use modegen::matrix::{Matrix, Vector};
use modegen::module::{
    cokernel_module, image_module, kernel_module, submodule_generated, Submodule,
};
use modegen::oracle::{rank_condition_degenerates, submodules_by_filtering};
use modegen::scalar::FieldSpec;
use modegen::series::{
    composition_series, composition_vector, series_isomorphic, series_to_triangular,
    simultaneous_triangularize, tc_membership, triangular_to_series, TriangularRep,
};
use modegen::subspace::Subspace;
use modegen::Error;

const F2: FieldSpec = FieldSpec::PrimeField(2);

fn cases() -> ProptestConfig {
    ProptestConfig::with_cases(1000)
}

fn fewer() -> ProptestConfig {
    ProptestConfig::with_cases(200)
}

/// `[M, N]` from the raw equations `N_g H = H M_g`, solved over vec(H) column by column.
fn dense_hom_dim(m: &Representation, n: &Representation) -> usize {
    let (a, b) = (m.dim(), n.dim());
    let f = m.field();
    let unknowns = a * b;
    let mut rows: Vec<Vec<modegen::scalar::Scalar>> = Vec::new();
    for (mg, ng) in m.mats().iter().zip(n.mats()) {
        for i in 0..b {
            for j in 0..a {
                let mut row = vec![f.zero(); unknowns];
                for k in 0..b {
                    row[k * a + j] = &row[k * a + j] + ng.get(i, k);
                }
                for k in 0..a {
                    row[i * a + k] = &row[i * a + k] - mg.get(k, j);
                }
                rows.push(row);
            }
        }
    }
    if unknowns == 0 {
        return 0;
    }
    let eq = Matrix::from_rows(f, rows.len(), unknowns, rows).unwrap();
    unknowns - eq.rank()
}

/// Closes `{0} ∪ vectors` under addition and the generators, element by element.
fn closure_by_brute_force(r: &Representation, vectors: &[Vector]) -> HashSet<Vector> {
    let mut set: HashSet<Vector> = vectors.iter().cloned().collect();
    set.insert(vec![F2.zero(); r.dim()]);
    loop {
        let mut next = set.clone();
        for x in &set {
            for g in r.mats() {
                next.insert(g.apply(x));
            }
            for y in &set {
                next.insert(x.iter().zip(y).map(|(a, b)| a + b).collect());
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn rank_plus_nullity_is_column_count(m in any_matrix()) {
        check_rank_nullity(&m)?;
    }

    #[test]
    fn sum_and_intersection_dimensions_add_up((a, b) in subspace_pair()) {
        check_modular_law(&a, &b)?;
    }

    #[test]
    fn span_is_canonical((a, _) in subspace_pair(), k in 2i64..5) {
        let f = a.field();
        let mut vs = a.vectors();
        vs.reverse();
        if vs.len() >= 2 {
            let mixed: Vec<_> = vs[0].iter().zip(&vs[1]).map(|(x, y)| x + &(y * &f.from_i64(k))).collect();
            vs[0] = mixed;
        }
        prop_assert_eq!(Subspace::span(f, a.ambient_dim(), &vs), a);
    }

    #[test]
    fn complement_extends_to_the_whole_space((a, b) in subspace_pair()) {
        let sum = a.sum(&b).unwrap();
        let ext = a.complement_basis(&sum).unwrap();
        prop_assert_eq!(ext.len() + a.dim(), sum.dim());
        let mut all = a.vectors();
        all.extend(ext);
        prop_assert_eq!(Subspace::span(a.field(), a.ambient_dim(), &all), sum);
    }

    #[test]
    fn hom_is_additive_in_both_arguments_kronecker(
        (a, b, c) in {
            let alg = kronecker(fp());
            (kronecker_module(alg.clone()), kronecker_module(alg.clone()), kronecker_module(alg))
        }
    ) {
        check_hom_bilinear(&a, &b, &c)?;
    }

    #[test]
    fn hom_is_additive_in_both_arguments_truncated(
        (a, b, c) in {
            let alg = cubic(fp());
            (truncated_module(alg.clone()), truncated_module(alg.clone()), truncated_module(alg))
        }
    ) {
        check_hom_bilinear(&a, &b, &c)?;
    }

    #[test]
    fn documents_survive_print_and_parse(
        (a, b, seed) in {
            let alg = kronecker(fp());
            (kronecker_module(alg.clone()), kronecker_module(alg), matrix_in(fp(), 4, 4))
        },
        r in rational_module(),
    ) {
        check_round_trip(&Document::Representation(a.clone()))?;
        check_round_trip(&Document::Representation(r))?;
        check_round_trip(&map_document(a, b, &seed))?;
    }
}

proptest! {
    #![proptest_config(fewer())]

    #[test]
    fn preimage_matches_brute_force(
        (m, s) in (1usize..=3, 1usize..=3, 0usize..=3).prop_flat_map(|(r, c, k)| {
            (matrix_in(F2, r, c), matrix_in(F2, r, k))
        })
    ) {
        let target = Subspace::span(F2, m.rows(), &s.columns());
        let pre = Subspace::preimage(&m, &target).unwrap();
        for v in all_vectors(F2, m.cols()).unwrap() {
            prop_assert_eq!(pre.contains(&v), target.contains(&m.apply(&v)));
        }
    }

    #[test]
    fn hom_basis_matches_a_dense_solver(
        (a, b) in {
            let alg = kronecker(fp());
            (kronecker_module(alg.clone()), kronecker_module(alg))
        },
        (c, d) in {
            let alg = cubic(fp());
            (truncated_module(alg.clone()), truncated_module(alg))
        },
    ) {
        for (x, y) in [(&a, &b), (&c, &d)] {
            let basis = hom_matrices(x, y).unwrap();
            prop_assert_eq!(basis.len(), dense_hom_dim(x, y));
            for h in &basis {
                prop_assert!(intertwines(x, y, h));
            }
            let span = Subspace::span(x.field(), x.dim() * y.dim(), &basis.iter().map(|h| {
                h.to_rows().concat()
            }).collect::<Vec<_>>());
            prop_assert_eq!(span.dim(), basis.len());
        }
    }

    #[test]
    fn kernel_image_cokernel_are_exact(
        (a, b, k) in {
            let alg = cubic(fp());
            (truncated_module(alg.clone()), truncated_module(alg), 0usize..4)
        }
    ) {
        let basis = hom_matrices(&a, &b).unwrap();
        let mat = basis.get(k).cloned().unwrap_or_else(|| Matrix::zeros(fp(), b.dim(), a.dim()));
        let f = ModuleMap::new(a.clone(), b.clone(), mat).unwrap();
        let (ker, inc) = kernel_module(&f);
        let (im, _) = image_module(&f);
        let (_, proj) = cokernel_module(&f);
        prop_assert_eq!(ker.dim() + im.dim(), a.dim());
        prop_assert!((proj.matrix() * f.matrix()).is_zero());
        prop_assert!((f.matrix() * inc.matrix()).is_zero());
        prop_assert!(inc.is_injective() && proj.is_surjective());
        prop_assert!(ker.is_valid() && im.is_valid());
    }

    #[test]
    fn generated_submodule_is_the_orbit_span(
        (r, v) in kronecker_module(kronecker(F2)).prop_flat_map(|r| {
            let d = r.dim();
            (Just(r), matrix_in(F2, d, 1))
        })
    ) {
        let vs = v.columns();
        let gen = submodule_generated(&r, &vs);
        let ours: HashSet<Vector> = all_vectors(F2, r.dim()).unwrap().into_iter().filter(|x| gen.space().contains(x)).collect();
        prop_assert_eq!(ours, closure_by_brute_force(&r, &vs));
    }

    #[test]
    fn enumeration_agrees_with_filtering(r in kronecker_module(kronecker(F2))) {
        let ours: HashSet<Subspace> = enum_submodules(&r).unwrap().into_iter().map(|s| s.space().clone()).collect();
        let theirs: HashSet<Subspace> = submodules_by_filtering(&r).unwrap().into_iter().collect();
        prop_assert_eq!(ours, theirs);
    }

    #[test]
    fn enumeration_agrees_with_filtering_truncated(r in truncated_module(cubic(F2))) {
        let ours: HashSet<Subspace> = enum_submodules(&r).unwrap().into_iter().map(|s| s.space().clone()).collect();
        let theirs: HashSet<Subspace> = submodules_by_filtering(&r).unwrap().into_iter().collect();
        prop_assert_eq!(ours, theirs);
    }

    #[test]
    fn triangularization_is_upper_triangular_and_isomorphic(
        r in prop_oneof![kronecker_module(kronecker(F2)), truncated_module(cubic(F2)), truncated_module(cubic(fp()))]
    ) {
        let s = composition_series(&r).unwrap();
        let t = series_to_triangular(&s).unwrap();
        for m in t.rep().mats() {
            for i in 0..m.rows() {
                for j in 0..i {
                    prop_assert!(m.get(i, j).is_zero());
                }
            }
        }
        let opts = SearchOptions::default();
        prop_assert!(is_isomorphic(&r, t.rep(), opts).unwrap().is_isomorphic());
        let back = triangular_to_series(&t).unwrap();
        prop_assert_eq!(back.factors(), s.factors());
        for i in 1..=t.dim() {
            prop_assert_eq!(back.stage(i), t.stage(i));
            prop_assert_eq!(back.flags()[i - 1].dim(), i);
        }
    }

    #[test]
    fn series_isomorphism_implies_module_isomorphism(
        (a, b) in {
            let alg = cubic(fp());
            (truncated_module(alg.clone()), truncated_module(alg))
        }
    ) {
        let ta = series_to_triangular(&composition_series(&a).unwrap()).unwrap();
        let tb = series_to_triangular(&composition_series(&b).unwrap()).unwrap();
        if ta.dim() == tb.dim() {
            if let Ok(v) = series_isomorphic(&ta, &tb, true) {
                if v.is_isomorphic() {
                    prop_assert!(is_isomorphic(&a, &b, SearchOptions::default()).unwrap().is_isomorphic());
                }
            }
        }
    }

    #[test]
    fn simultaneous_triangularization_matches_idempotents(
        (a, b) in {
            let alg = kronecker(fp());
            (kronecker_module(alg.clone()), kronecker_module(alg))
        }
    ) {
        let (sa, sb) = (composition_series(&a).unwrap(), composition_series(&b).unwrap());
        match simultaneous_triangularize(&a, &b, &sa, &sb) {
            Ok((ta, tb)) => {
                let c = composition_vector(&sa);
                for k in 0..a.algebra().idempotents().len() {
                    prop_assert_eq!(ta.rep().idempotent_mat(k), tb.rep().idempotent_mat(k));
                }
                prop_assert!(tc_membership(&ta, &c) && tc_membership(&tb, &c));
            }
            Err(Error::VectorMismatch(_)) => prop_assert_ne!(composition_vector(&sa), composition_vector(&sb)),
            Err(e) => prop_assert!(false, "{e}"),
        }
    }

    #[test]
    fn psi_diagonal_blocks_are_the_stages(r in truncated_module(cubic(fp()))) {
        let t = series_to_triangular(&composition_series(&r).unwrap()).unwrap();
        let p = psi_embed(&t);
        prop_assert!(p.is_valid());
        let mut off = 0;
        for i in 1..=t.dim() {
            for (j, m) in t.rep().mats().iter().enumerate() {
                prop_assert_eq!(p.mat(j).block(off, off + i, off, off + i), m.truncate(i));
            }
            off += i;
        }
    }
}

#[test]
fn upper_triangular_matrices_are_invertible_iff_the_diagonal_is() {
    let f = F2;
    for bits in 0u32..64 {
        let mut m = Matrix::zeros(f, 3, 3);
        let mut k = 0;
        for i in 0..3 {
            for j in i..3 {
                m.set(i, j, f.from_i64(((bits >> k) & 1) as i64));
                k += 1;
            }
        }
        let diag = (0..3).all(|i| !m.get(i, i).is_zero());
        assert_eq!(m.inverse().is_some(), diag);
    }
}

fn fixture_modules(field: FieldSpec) -> Vec<Representation> {
    let d = DualNumbers::new(field);
    let t = Truncated::new(field, 3);
    let k = Kronecker::new(field);
    vec![
        d.s(),
        d.lambda(),
        d.lambda2(),
        d.lambda_s2(),
        t.mu(),
        t.nu(),
        t.nu_prime(),
        k.i2(),
        k.r(),
        k.r_prime(),
        k.dtr_s1(),
        k.r2_mu(),
        k.r2_nu(),
    ]
}

#[test]
fn isomorphism_is_reflexive_and_symmetric_on_fixtures() {
    let mods = fixture_modules(FieldSpec::Rationals);
    let opts = SearchOptions::default();
    for a in &mods {
        match is_isomorphic(a, a, opts).unwrap() {
            IsoVerdict::Isomorphic(w) => assert!(w.is_isomorphism()),
            IsoVerdict::NotIsomorphic => panic!("not reflexive"),
        }
        for b in mods.iter().filter(|b| b.algebra() == a.algebra()) {
            let ab = is_isomorphic(a, b, opts).unwrap();
            let ba = is_isomorphic(b, a, opts).unwrap();
            assert_eq!(ab.is_isomorphic(), ba.is_isomorphic());
            if let IsoVerdict::Isomorphic(w) = ab {
                assert!(w.is_isomorphism() && intertwines(a, b, w.matrix()));
            }
        }
    }
}

#[test]
fn hom_defects_of_certificates_are_nonnegative() {
    let q = FieldSpec::Rationals;
    let mods = fixture_modules(q);
    for (name, c) in fixtures::certificates(q) {
        assert!(c.verify().is_valid(), "{name}");
        let tests: Vec<Representation> = mods
            .iter()
            .filter(|m| m.algebra() == c.m().algebra())
            .cloned()
            .collect();
        let report = hom_defect(c.m(), c.n(), &tests).unwrap();
        assert!(!report.refutes(), "{name}: {:?}", report.values);
    }
}

#[test]
fn ladder_families_are_constant_off_zero() {
    let q = FieldSpec::Rationals;
    let t = Truncated::new(q, 3);
    for lc in [t.chi(), t.chi_prime()] {
        assert!(verify_ladder(&lc).is_valid());
        let lc = if lc.is_monic() {
            lc
        } else {
            make_monic(&lc).unwrap()
        };
        let fam = build_family(&lc, None).unwrap();
        let top = TriangularRep::new(
            lc.m_series()
                .ambient()
                .change_basis(&modegen::series::adapted_basis(lc.m_series()))
                .unwrap(),
        )
        .unwrap();
        let bottom = TriangularRep::new(
            lc.n_series()
                .ambient()
                .change_basis(&modegen::series::adapted_basis(lc.n_series()))
                .unwrap(),
        )
        .unwrap();
        let samples: Vec<TriangularRep> = [1, 2, 3]
            .iter()
            .map(|&s| evaluate_family(&fam, &q.from_i64(s)).unwrap())
            .collect();
        for a in &samples {
            assert!(series_isomorphic(a, &top, true).unwrap().is_isomorphic());
            for b in &samples {
                assert!(series_isomorphic(a, b, true).unwrap().is_isomorphic());
            }
        }
        let zero = evaluate_family(&fam, &q.zero()).unwrap();
        assert!(series_isomorphic(&zero, &bottom, true)
            .unwrap()
            .is_isomorphic());
        assert!(orbit_dim_ud(&top).unwrap() >= orbit_dim_ud(&bottom).unwrap());
    }
}

#[test]
fn rank_oracle_is_coarser_than_series_isomorphism() {
    let q = FieldSpec::Rationals;
    let t = Truncated::new(q, 3);
    let (mu, nu, nu_prime) = (t.mu(), t.nu(), t.nu_prime());
    for (a, b) in [(&mu, &nu), (&nu, &mu), (&mu, &nu_prime), (&nu_prime, &mu)] {
        assert!(rank_condition_degenerates(a, b).unwrap());
    }
    let tri = |r: &Representation| TriangularRep::new(r.clone()).unwrap();
    assert!(!series_isomorphic(&tri(&mu), &tri(&nu), true)
        .unwrap()
        .is_isomorphic());
    assert!(!series_isomorphic(&tri(&mu), &tri(&nu_prime), true)
        .unwrap()
        .is_isomorphic());
    assert_eq!(upper_triangular_intertwiners(&mu, &mu).unwrap().len(), 5);
    assert_eq!(hom_dim(&mu, &nu).unwrap(), hom_dim(&mu, &mu).unwrap());
}

#[test]
fn pushing_through_eta_is_neither_injective_nor_surjective_on_submodules() {
    use modegen::certificate::push_submodule;
    let d = DualNumbers::new(F2);
    let eta = d.eta();
    let subs = enum_submodules(eta.m()).unwrap();
    let images: Vec<Subspace> = subs
        .iter()
        .map(|s| push_submodule(&eta, s).unwrap().nprime.space().clone())
        .collect();
    let distinct: HashSet<&Subspace> = images.iter().collect();
    assert!(distinct.len() < subs.len(), "two submodules share an image");
    assert!(
        distinct.len() < enum_submodules(eta.n()).unwrap().len(),
        "some submodule of N is missed"
    );
    let whole = push_submodule(&eta, &Submodule::full(eta.m())).unwrap();
    assert!(whole.nprime.space().is_full());
}
