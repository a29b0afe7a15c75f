//! Tangent-space oracles: the planar cusp codimension by an independent
//! brute-force enumeration (integer arithmetic, fraction-free rank), the
//! exact-sequence identities, containment chains and action invariance.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use germlab_core::lie::{catalog_for_dim, subalgebra_check};
use germlab_core::sample::{random_source_diffeo, sample_element};
use germlab_core::tangent::{
    g_of_f, moduli, omega_image, tangent, tangent_subspace, tf_image, EquivalenceKind, ModuliPair,
};
use germlab_core::{parse_poly, GermJet, GroupId};

// --------------------------------------------------------------------------
// independent cusp oracle: univariate polys as i64 coefficient vectors,
// rank by fraction-free elimination over i128

fn pmul(a: &[i64], b: &[i64], len: usize) -> Vec<i64> {
    let mut out = vec![0i64; len];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            if i + j < len && y != 0 {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn rank_i128(rows: Vec<Vec<i64>>) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .into_iter()
        .map(|r| r.into_iter().map(|x| x as i128).collect())
        .collect();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in 0..m.len() {
            if r != rank && m[r][col] != 0 {
                let (a, b) = (m[rank][col], m[r][col]);
                let g = gcd(a.unsigned_abs(), b.unsigned_abs()) as i128;
                let (fa, fb) = (b / g, a / g);
                for c in 0..cols {
                    m[r][c] = m[r][c] * fb - m[rank][c] * fa;
                }
            }
        }
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a.max(1)
}

/// Extended-orbit codimension of (x², x³) under the unconstrained
/// right-left action, at comparison order kc: enumerate the generators
/// x^a·(2x, 3x²) and (f₁^a f₂^b)·e_c literally and count.
fn cusp_codim_oracle(kc: usize) -> usize {
    let len = kc + 1; // coefficients of degrees 0..=kc
    let mut f1 = vec![0i64; len.max(4)];
    f1[2] = 1;
    let mut f2 = vec![0i64; len.max(4)];
    f2[3] = 1;
    let mut df1 = vec![0i64; len];
    if len > 1 {
        df1[1] = 2;
    }
    let mut df2 = vec![0i64; len];
    if len > 2 {
        df2[2] = 3;
    }
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for a in 0..=kc {
        let mut xa = vec![0i64; len];
        xa[a] = 1;
        let mut row = pmul(&xa, &df1, len);
        row.extend(pmul(&xa, &df2, len));
        gens.push(row);
    }
    for a in 0..=kc {
        for b in 0..=kc {
            if 2 * a + 3 * b > kc {
                continue;
            }
            let mut mono = vec![0i64; len];
            mono[2 * a + 3 * b] = 1;
            for comp in 0..2 {
                let mut row = vec![0i64; 2 * len];
                row[comp * len..(comp + 1) * len].copy_from_slice(&mono);
                gens.push(row);
            }
        }
    }
    2 * len - rank_i128(gens)
}

fn germ(n: usize, p: usize, k: u32, comps: &[&str]) -> GermJet {
    GermJet::new_map(
        n,
        p,
        k,
        comps.iter().map(|s| parse_poly(s, n, k).unwrap()).collect(),
    )
    .unwrap()
}

fn cusp(k: u32) -> GermJet {
    // at k = 2 the cusp jet is (x², 0); parse at a high order and truncate
    germ(1, 2, k.max(3), &["x1^2", "x1^3"]).truncated(k)
}

#[test]
fn cusp_codimension_matches_brute_force() {
    for k in 2..=6u32 {
        let oracle = cusp_codim_oracle((k - 1) as usize);
        assert_eq!(oracle, 1, "oracle value at kc={}", k - 1);
        let r = tangent(&cusp(k), GroupId::Gl(2), EquivalenceKind::AG, k, true).unwrap();
        assert_eq!(r.codim, oracle, "k={k}");
    }
}

fn fixtures_p2(k: u32) -> Vec<GermJet> {
    vec![
        cusp(k),
        germ(2, 2, k, &["x1", "x2"]),
        germ(2, 2, k, &["x1", "x2^2"]),
        germ(2, 2, k, &["x1", "x1*x2 + x2^3"]),
        germ(2, 2, k, &["x1", "x2^3 + x1^2*x2"]),
        germ(2, 2, k, &["x1", "x1*x2 + x2^4"]),
    ]
}

#[test]
fn containment_chain_and_codims() {
    // T(RxG) ⊆ T A[G] ⊆ T A[GL] at every fixture
    let k = 4;
    for f in fixtures_p2(k) {
        for g in [GroupId::So(2), GroupId::Sl(2)] {
            let rxg = tangent_subspace(&f, g, EquivalenceKind::RxG, k, false).unwrap();
            let ag = tangent_subspace(&f, g, EquivalenceKind::AG, k, false).unwrap();
            let agl = tangent_subspace(&f, GroupId::Gl(2), EquivalenceKind::AG, k, false).unwrap();
            assert!(ag.contains_subspace(&rxg).unwrap(), "{g}");
            assert!(agl.contains_subspace(&ag).unwrap(), "{g}");
        }
    }
}

#[test]
fn grassmann_consistency_of_the_tangent_sum() {
    let k = 4;
    for f in fixtures_p2(k) {
        for g in [GroupId::So(2), GroupId::Sl(2), GroupId::Gl(2)] {
            let tf = tf_image(&f, k, false).unwrap();
            let om = omega_image(&f, g, k, false).unwrap();
            let total = tf.sum(&om).unwrap();
            let meet = tf.intersection(&om).unwrap();
            assert_eq!(total.dim() + meet.dim(), tf.dim() + om.dim(), "{g}");
        }
    }
}

#[test]
fn exact_sequences_across_catalog_pairs() {
    let k = 4;
    for f in fixtures_p2(k) {
        let groups = catalog_for_dim(2);
        for &g in &groups {
            let m = moduli(&f, ModuliPair::AgVsRxg(g), k).unwrap();
            assert!(m.exact_sequence_ok, "ag-vs-rxg {g}");
            for &h in &groups {
                if h == g || !subalgebra_check(h, g).unwrap() {
                    continue;
                }
                let m1 = moduli(&f, ModuliPair::AgVsAh(g, h), k).unwrap();
                assert!(m1.exact_sequence_ok, "ag-vs-ah {g} {h}");
                let m2 = moduli(&f, ModuliPair::RxgVsRxh(g, h), k).unwrap();
                assert!(m2.exact_sequence_ok, "rxg-vs-rxh {g} {h}");
                assert!(m2.dim <= m2.bound.unwrap(), "{g} {h}");
            }
        }
    }
}

#[test]
fn linear_only_groups_have_equal_tangents() {
    let k = 4;
    for f in fixtures_p2(k) {
        for g in [GroupId::So(2), GroupId::SoCapTstar(1, 1), GroupId::Trivial(2)] {
            // the composition image degenerates to the matrix orbit part
            let om = omega_image(&f, g, k, false).unwrap();
            let gf = g_of_f(&f, g, k, false).unwrap();
            assert_eq!(om, gf, "{g}");
            let ag = tangent_subspace(&f, g, EquivalenceKind::AG, k, false).unwrap();
            let rxg = tangent_subspace(&f, g, EquivalenceKind::RxG, k, false).unwrap();
            assert_eq!(ag, rxg, "{g}");
            let m = moduli(&f, ModuliPair::AgVsRxg(g), k).unwrap();
            assert_eq!(m.dim, 0, "{g}");
        }
    }
}

#[test]
fn fold_under_the_trivial_group_grows() {
    // right-equivalence only: the second component misses (0, x1^a) for
    // every a and (0, x2), so the non-extended codim at order k is exactly k
    let fold = germ(2, 2, 7, &["x1", "x2^2"]);
    for k in 3..=6u32 {
        let r = tangent(
            &fold,
            GroupId::Trivial(2),
            EquivalenceKind::RxG,
            k,
            false,
        )
        .unwrap();
        assert_eq!(r.codim as u32, k, "k={k}");
    }
}

#[test]
fn action_invariance_smoke() {
    // codimension and moduli dimension are invariant under A·(f∘φ) for
    // rational A in G and a rational source diffeomorphism jet φ
    let k = 4;
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let assignments = [
        (cusp(k), GroupId::So(2)),
        (germ(2, 2, k, &["x1", "x2^2"]), GroupId::Sl(2)),
        (germ(2, 2, k, &["x1", "x1*x2 + x2^3"]), GroupId::Gl(2)),
    ];
    for (f, g) in assignments {
        let base = tangent(&f, g, EquivalenceKind::AG, k, false).unwrap();
        let base_rx = tangent(&f, g, EquivalenceKind::RxG, k, false).unwrap();
        let base_mod = moduli(&f, ModuliPair::AgVsRxg(g), k).unwrap();
        for _ in 0..5 {
            let a = sample_element(g, &mut rng);
            let phi = random_source_diffeo(f.source_dim(), k, &mut rng);
            let transformed = f.compose(&phi).unwrap().linear_image(&a).unwrap();
            let r = tangent(&transformed, g, EquivalenceKind::AG, k, false).unwrap();
            assert_eq!(r.codim, base.codim, "{g}");
            let r2 = tangent(&transformed, g, EquivalenceKind::RxG, k, false).unwrap();
            assert_eq!(r2.codim, base_rx.codim, "{g}");
            let m = moduli(&transformed, ModuliPair::AgVsRxg(g), k).unwrap();
            assert_eq!(m.dim, base_mod.dim, "{g}");
        }
    }
}

#[test]
fn omega_of_gl_on_the_cusp_spans_monomial_pairs() {
    // pairs of jets in powers of x², x³
    let f = cusp(5);
    let om = omega_image(&f, GroupId::Gl(2), 5, true).unwrap();
    // degrees representable as 2a + 3b <= 4: {0, 2, 3, 4}: 4 monomials x 2 comps
    assert_eq!(om.dim(), 8);
}

#[test]
fn annihilator_of_so4_on_a_block_germ() {
    // a germ landing in the first coordinate axis: rotations of the last
    // three coordinates annihilate it
    let f = germ(1, 4, 3, &["x1", "0*x1", "0*x1", "0*x1"]);
    let gf = g_of_f(&f, GroupId::So(4), 3, false).unwrap();
    assert_eq!(gf.dim(), 3);
    assert_eq!(
        germlab_core::tangent::annihilator_dim(&f, GroupId::So(4)).unwrap(),
        3
    );
}
