//! Field-space oracles: the generic kernel against closed forms, the
//! divergence-rank count, module and smooth-ring closure, and the defining
//! Jacobian property re-checked through the membership functionals.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use germlab_core::gfields::{
    closed_form_basis, divergence, field_in_theta, hamiltonian_field, is_linear_only,
    ring_eg_jet, theta_g_degree, theta_g_jet,
};
use germlab_core::lie::{algebra_of, catalog_for_dim};
use germlab_core::monomial::{count_degree, monomial_basis};
use germlab_core::poly::q_ratio;
use germlab_core::{GroupId, JetPoly, Q, RationalMatrix};

/// Independent count of divergence-free homogeneous fields on the plane:
/// rank of the divergence matrix from degree-d fields to degree-(d-1) jets.
fn divergence_rank_oracle(d: u32) -> usize {
    let monos = monomial_basis(2, d, d);
    let lower = monomial_basis(2, d - 1, d - 1);
    let mut m = RationalMatrix::zeros(lower.len(), 2 * monos.len());
    for (col_c, comp) in [0usize, 1].iter().enumerate() {
        for (j, mono) in monos.iter().enumerate() {
            let e = mono.exponent(comp + 1);
            if e > 0 {
                let lowered = mono.lower(comp + 1).unwrap();
                let row = lower.iter().position(|x| *x == lowered).unwrap();
                let col = col_c * monos.len() + j;
                m.set(row, col, Q::from_integer((e as i64).into()));
            }
        }
    }
    2 * monos.len() - m.rank()
}

#[test]
fn sl2_per_degree_dims_match_divergence_oracle() {
    for d in 1..=6u32 {
        let oracle = divergence_rank_oracle(d);
        assert_eq!(oracle as u32, d + 2, "oracle itself");
        assert_eq!(
            theta_g_degree(GroupId::Sl(2), d).unwrap().dim(),
            oracle,
            "d={d}"
        );
    }
}

#[test]
fn hamiltonian_map_hits_every_sl2_slice() {
    // Δ is injective degree by degree and fills the divergence-free slice
    for d in 1..=5u32 {
        let monos = monomial_basis(2, d + 1, d + 1);
        let mut fields = Vec::new();
        for m in monos {
            let mut h = JetPoly::zero(2, d + 1);
            h.set_coeff(m, Q::from_integer(1.into()));
            fields.push(hamiltonian_field(&h).unwrap());
        }
        assert_eq!(fields.len(), count_degree(2, d + 1));
        assert_eq!(fields.len() as u32, d + 2 + 1 - 1); // C(d+2, 1) = d + 2
        for f in &fields {
            assert!(divergence(f).unwrap().is_zero());
            assert!(field_in_theta(&f.clone(), GroupId::Sl(2), true).unwrap());
        }
    }
}

fn closed_form_groups(pmax: usize) -> Vec<GroupId> {
    let mut v = Vec::new();
    for p in 2..=pmax {
        v.push(GroupId::So(p));
        for p1 in 1..p {
            let p2 = p - p1;
            v.push(GroupId::Dstar(p1, p2));
            v.push(GroupId::TstarR(p1, p2));
            v.push(GroupId::Istar(p1, p2));
            v.push(GroupId::SoCapTstar(p1, p2));
        }
        v.push(GroupId::AffinePlus(p - 1));
        if p % 2 == 0 {
            v.push(GroupId::Lagr(p));
        }
    }
    v
}

#[test]
fn closed_forms_equal_generic_kernels() {
    for g in closed_form_groups(4) {
        let k = 4.min(6 - g.ambient_dim() as u32); // keep the big ambients light here
        let k = k.max(2);
        for include in [false, true] {
            let generic = theta_g_jet(g, k, include).unwrap();
            let closed = closed_form_basis(g, k, include).unwrap();
            assert!(
                closed.same_space(&generic),
                "{g} k={k} include_constants={include}: closed {} vs generic {}",
                closed.total_dim(),
                generic.total_dim()
            );
        }
    }
    // the planar Hamiltonian closed form
    for g in [GroupId::Sl(2), GroupId::Sp(2)] {
        let generic = theta_g_jet(g, 4, false).unwrap();
        let closed = closed_form_basis(g, 4, false).unwrap();
        assert!(closed.same_space(&generic), "{g}");
    }
}

#[test]
fn closed_form_unsupported_for_large_sl_sp() {
    assert!(closed_form_basis(GroupId::Sl(3), 3, false).is_err());
    assert!(closed_form_basis(GroupId::Sp(4), 3, false).is_err());
    // but the generic kernel still works there
    assert_eq!(theta_g_degree(GroupId::Sp(4), 2).unwrap().dim(), 20);
    assert_eq!(theta_g_degree(GroupId::Sl(3), 1).unwrap().dim(), 8);
}

#[test]
fn degree_one_slice_is_the_algebra() {
    for p in 1..=4usize {
        for g in catalog_for_dim(p) {
            assert_eq!(
                theta_g_degree(g, 1).unwrap().dim(),
                algebra_of(g).unwrap().dim(),
                "{g}"
            );
        }
    }
}

#[test]
fn basis_fields_satisfy_the_jacobian_membership() {
    // re-check the defining property through contains_matrix, independently
    // of the kernel assembly
    for g in [
        GroupId::Sl(2),
        GroupId::Sp(4),
        GroupId::TstarR(1, 2),
        GroupId::Lagr(4),
        GroupId::AffinePlus(2),
    ] {
        let alg = algebra_of(g).unwrap();
        let p = g.ambient_dim();
        let space = theta_g_jet(g, 3, false).unwrap();
        for field in space.basis_fields() {
            let jac = field.jacobian();
            // collect coefficient matrices by monomial
            for m in monomial_basis(p, 2, 0) {
                let mut coeff = RationalMatrix::zeros(p, p);
                for i in 0..p {
                    for j in 0..p {
                        coeff.set(i, j, jac[i][j].coeff(&m));
                    }
                }
                assert!(
                    alg.contains_matrix(&coeff).unwrap(),
                    "{g}: coefficient matrix of {m:?} escapes the algebra"
                );
            }
        }
    }
}

fn random_combination_jet<R: Rng>(basis: &[JetPoly], rng: &mut R) -> JetPoly {
    let mut acc = JetPoly::zero(basis[0].nvars(), basis[0].order());
    for b in basis {
        if rng.gen_bool(0.6) {
            let c = q_ratio(rng.gen_range(-3..=3), rng.gen_range(1..=2));
            acc = acc.add(&b.scale(&c)).unwrap();
        }
    }
    acc
}

#[test]
fn ring_module_and_smooth_closure() {
    let k = 3u32;
    let groups = [
        GroupId::So(2),
        GroupId::Sl(2),
        GroupId::Dstar(1, 1),
        GroupId::TstarR(1, 2),
        GroupId::AffinePlus(1),
        GroupId::Lagr(2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for g in groups {
        let ring = ring_eg_jet(g, k).unwrap();
        let fields = theta_g_jet(g, k, false).unwrap();
        let ring_basis = ring.basis_jets();
        let field_basis = fields.basis_fields();
        for _ in 0..20 {
            // module closure: λ·η stays in the field space
            let lambda = random_combination_jet(&ring_basis, &mut rng);
            if !field_basis.is_empty() {
                let idx = rng.gen_range(0..field_basis.len());
                let product = field_basis[idx].scalar_mul(&lambda).unwrap();
                assert!(
                    field_in_theta(&product, g, false).unwrap(),
                    "{g}: λ·η left the field space"
                );
            }
            // smooth-ring closure: q(λ1, λ2) stays in the ring
            let l1 = random_combination_jet(&ring_basis, &mut rng);
            let l2 = random_combination_jet(&ring_basis, &mut rng);
            let q = germlab_core::sample::random_jetpoly(2, k, 0, &mut rng);
            let mut acc = JetPoly::zero(g.ambient_dim(), k);
            for (m, c) in q.terms() {
                let term = l1.pow(m.exponent(1)).mul(&l2.pow(m.exponent(2))).unwrap();
                acc = acc.add(&term.scale(c)).unwrap();
            }
            assert!(ring.contains(&acc).unwrap(), "{g}: q(λ1,λ2) left the ring");
        }
    }
}

#[test]
fn ring_dims_for_the_catalog() {
    assert_eq!(ring_eg_jet(GroupId::So(2), 4).unwrap().dim(), 1);
    assert_eq!(ring_eg_jet(GroupId::Sl(2), 4).unwrap().dim(), 1);
    assert_eq!(ring_eg_jet(GroupId::Dstar(1, 1), 4).unwrap().dim(), 1);
    assert_eq!(ring_eg_jet(GroupId::TstarR(1, 2), 4).unwrap().dim(), 15);
    assert_eq!(ring_eg_jet(GroupId::Lagr(2), 3).unwrap().dim(), 1);
    assert_eq!(ring_eg_jet(GroupId::Lagr(4), 2).unwrap().dim(), 1);
    assert_eq!(ring_eg_jet(GroupId::Dstar(1, 2), 3).unwrap().dim(), 1);
    // functions of the free block only
    assert_eq!(ring_eg_jet(GroupId::Istar(1, 1), 3).unwrap().dim(), 4);
    assert_eq!(ring_eg_jet(GroupId::Istar(1, 2), 3).unwrap().dim(), 10);
    assert_eq!(ring_eg_jet(GroupId::AffinePlus(1), 3).unwrap().dim(), 4);
    assert_eq!(ring_eg_jet(GroupId::AffinePlus(2), 3).unwrap().dim(), 10);
    // the trivial constraint set leaves the whole jet space
    assert_eq!(ring_eg_jet(GroupId::SoCapTstar(1, 1), 3).unwrap().dim(), 10);
}

#[test]
fn concurrent_slice_computation_is_safe() {
    // slices may be requested from several threads; the cache has one
    // writer at a time and the results agree
    let handles: Vec<_> = (0..8)
        .map(|i| {
            std::thread::spawn(move || {
                let g = if i % 2 == 0 { GroupId::Sl(2) } else { GroupId::Sp(4) };
                let d = 1 + (i as u32 % 3);
                theta_g_degree(g, d).unwrap().dim()
            })
        })
        .collect();
    let dims: Vec<usize> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (i, dim) in dims.iter().enumerate() {
        let g = if i % 2 == 0 { GroupId::Sl(2) } else { GroupId::Sp(4) };
        let d = 1 + (i as u32 % 3);
        assert_eq!(*dim, theta_g_degree(g, d).unwrap().dim());
    }
}

#[test]
fn linear_only_table() {
    let expect_true = [
        GroupId::So(2),
        GroupId::So(3),
        GroupId::So(4),
        GroupId::SoCapTstar(1, 1),
        GroupId::SoCapTstar(1, 2),
        GroupId::SoCapTstar(2, 2),
        GroupId::Trivial(2),
        GroupId::Trivial(3),
    ];
    for g in expect_true {
        assert!(is_linear_only(g, 3).unwrap(), "{g}");
    }
    let expect_false = [
        GroupId::Gl(2),
        GroupId::Sl(2),
        GroupId::Sp(2),
        GroupId::Sp(4),
        GroupId::Dstar(1, 1),
        GroupId::TstarR(1, 2),
        GroupId::AffinePlus(2),
        GroupId::Lagr(2),
    ];
    for g in expect_false {
        assert!(!is_linear_only(g, 3).unwrap(), "{g}");
    }
}
