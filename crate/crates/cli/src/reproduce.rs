//! The reproduction suites: every acceptance row is computed fresh, with
//! the measured value printed beside the expected one. Randomized rows use
//! fixed seeds so output is byte-identical across runs.

use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use germlab_core::curve::{
    ak_normalize, congruence_test, equiaffine_curvature, frontal_invariants_from, CongruenceMode,
    CongruenceResult,
};
use germlab_core::gfields::{
    closed_form_basis, field_in_theta, first_nonlinear_degree, is_linear_only, ring_eg_jet,
    theta_g_jet,
};
use germlab_core::lie::{catalog_for_dim, subalgebra_check};
use germlab_core::monge::monge_normal_form;
use germlab_core::numjet::NumericJet;
use germlab_core::sample::{random_h_jet, random_jetpoly, random_source_diffeo, sample_element};
use germlab_core::tangent::{
    growth_probe, moduli, tangent, tangent_subspace, EquivalenceKind, ModuliPair,
};
use germlab_core::{parse_poly, GermJet, GroupId, JetPoly, Q};

use crate::fixtures;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Dims,
    Moduli,
    Geometry,
}

impl Suite {
    pub fn parse(s: &str) -> Option<Suite> {
        match s {
            "dims" => Some(Suite::Dims),
            "moduli" => Some(Suite::Moduli),
            "geometry" => Some(Suite::Geometry),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Dims => "dims",
            Suite::Moduli => "moduli",
            Suite::Geometry => "geometry",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionResult {
    pub id: u32,
    pub suite: Suite,
    pub name: String,
    pub expected: String,
    pub measured: String,
    pub pass: bool,
    pub seconds: f64,
    pub budget_seconds: f64,
}

impl CriterionResult {
    pub fn within_budget(&self) -> bool {
        self.seconds < self.budget_seconds
    }

    pub fn line(&self) -> String {
        format!(
            "[{}] criterion {:>2} ({}): {} — expected {}, measured {} [{:.2}s / {:.0}s]",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.suite.name(),
            self.name,
            self.expected,
            self.measured,
            self.seconds,
            self.budget_seconds
        )
    }

    pub fn json(&self) -> serde_json::Value {
        json!({
            "id": self.id,
            "suite": self.suite.name(),
            "name": self.name,
            "expected": self.expected,
            "measured": self.measured,
            "pass": self.pass,
            "seconds": (self.seconds * 100.0).round() / 100.0,
            "budget_seconds": self.budget_seconds,
        })
    }
}

fn run(
    id: u32,
    suite: Suite,
    name: &str,
    expected: &str,
    budget: f64,
    f: impl FnOnce() -> (String, bool),
) -> CriterionResult {
    let start = Instant::now();
    let (measured, pass) = f();
    CriterionResult {
        id,
        suite,
        name: name.to_string(),
        expected: expected.to_string(),
        measured,
        pass,
        seconds: start.elapsed().as_secs_f64(),
        budget_seconds: budget,
    }
}

pub fn run_suite(suite: Suite) -> Vec<CriterionResult> {
    match suite {
        Suite::Dims => vec![c1(), c2(), c3(), c4(), c5(), c10()],
        Suite::Moduli => vec![c6(), c7(), c8(), c9(), c11(), c16()],
        Suite::Geometry => vec![c12(), c13(), c14(), c15()],
    }
}

pub fn run_all() -> Vec<CriterionResult> {
    let mut v = run_suite(Suite::Dims);
    v.extend(run_suite(Suite::Moduli));
    v.extend(run_suite(Suite::Geometry));
    v.sort_by_key(|r| r.id);
    v
}

// --------------------------------------------------------------------------

fn c1() -> CriterionResult {
    run(
        1,
        Suite::Dims,
        "rotation-group field dims p(p-1)/2, all in degree 1",
        "dims (1,3,6) for p=2,3,4 at every k in 1..=5",
        5.0,
        || {
            let mut measured = Vec::new();
            let mut ok = true;
            for p in 2..=4usize {
                let expect = p * (p - 1) / 2;
                for k in 1..=5u32 {
                    let s = theta_g_jet(GroupId::So(p), k, false).unwrap();
                    ok &= s.total_dim() == expect && s.degree_dim(1) == expect;
                    for d in 2..=k {
                        ok &= s.degree_dim(d) == 0;
                    }
                    if k == 5 {
                        measured.push(format!("p={p}: {}", s.total_dim()));
                    }
                }
            }
            (measured.join(", "), ok)
        },
    )
}

fn c2() -> CriterionResult {
    run(
        2,
        Suite::Dims,
        "planar unimodular per-degree dims and Hamiltonian basis",
        "dims d+2 for d=1..6; closed form equals the kernel",
        5.0,
        || {
            let mut ok = true;
            let mut dims = Vec::new();
            let generic = theta_g_jet(GroupId::Sl(2), 6, false).unwrap();
            for d in 1..=6u32 {
                let dim = generic.degree_dim(d);
                dims.push(dim.to_string());
                ok &= dim as u32 == d + 2;
            }
            let closed = closed_form_basis(GroupId::Sl(2), 6, false).unwrap();
            let same = closed.same_space(&generic);
            ok &= same;
            (format!("dims [{}], closed==generic: {same}", dims.join(",")), ok)
        },
    )
}

fn closed_form_catalog(pmax: usize) -> Vec<GroupId> {
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

fn c3() -> CriterionResult {
    run(
        3,
        Suite::Dims,
        "closed forms equal generic kernels across the catalog",
        "exact per-degree subspace equality at p<=4, k<=4",
        60.0,
        || {
            let mut checked = 0usize;
            let mut ok = true;
            for g in closed_form_catalog(4) {
                for include in [false, true] {
                    let generic = theta_g_jet(g, 4, include).unwrap();
                    let closed = closed_form_basis(g, 4, include).unwrap();
                    if !closed.same_space(&generic) {
                        ok = false;
                    }
                    checked += 1;
                }
            }
            (format!("{checked} (group, variant) comparisons equal"), ok)
        },
    )
}

fn c4() -> CriterionResult {
    run(
        4,
        Suite::Dims,
        "ring jet dimensions at k=4",
        "so:2 -> 1, sl:2 -> 1, dstar:1,1 -> 1, tstar:1,2 -> 15",
        30.0,
        || {
            let rows = [
                (GroupId::So(2), 1usize),
                (GroupId::Sl(2), 1),
                (GroupId::Dstar(1, 1), 1),
                (GroupId::TstarR(1, 2), 15),
            ];
            let mut measured = Vec::new();
            let mut ok = true;
            for (g, expect) in rows {
                let dim = ring_eg_jet(g, 4).unwrap().dim();
                measured.push(format!("{g} -> {dim}"));
                ok &= dim == expect;
            }
            (measured.join(", "), ok)
        },
    )
}

fn random_ring_combination(basis: &[JetPoly], rng: &mut ChaCha8Rng) -> JetPoly {
    let mut acc = JetPoly::zero(basis[0].nvars(), basis[0].order());
    for b in basis {
        if rng.gen_bool(0.6) {
            let c = Q::new(rng.gen_range(-3i64..=3).into(), rng.gen_range(1i64..=2).into());
            acc = acc.add(&b.scale(&c)).unwrap();
        }
    }
    acc
}

fn c5() -> CriterionResult {
    run(
        5,
        Suite::Dims,
        "module and smooth-ring closure on random instances",
        "100 random instances per group at k=3, all closed",
        60.0,
        || {
            let k = 3u32;
            let groups = [
                GroupId::So(2),
                GroupId::Sl(2),
                GroupId::Dstar(1, 1),
                GroupId::TstarR(1, 2),
                GroupId::AffinePlus(1),
                GroupId::Lagr(2),
            ];
            let mut rng = ChaCha8Rng::seed_from_u64(501);
            let mut total = 0usize;
            let mut ok = true;
            for g in groups {
                let ring = ring_eg_jet(g, k).unwrap();
                let fields = theta_g_jet(g, k, false).unwrap();
                let ring_basis = ring.basis_jets();
                let field_basis = fields.basis_fields();
                for _ in 0..100 {
                    total += 1;
                    let lambda = random_ring_combination(&ring_basis, &mut rng);
                    if !field_basis.is_empty() {
                        let idx = rng.gen_range(0..field_basis.len());
                        let product = field_basis[idx].scalar_mul(&lambda).unwrap();
                        ok &= field_in_theta(&product, g, false).unwrap();
                    }
                    let l1 = random_ring_combination(&ring_basis, &mut rng);
                    let l2 = random_ring_combination(&ring_basis, &mut rng);
                    let q = random_jetpoly(2, k, 0, &mut rng);
                    let mut acc = JetPoly::zero(g.ambient_dim(), k);
                    for (m, c) in q.terms() {
                        let term = l1.pow(m.exponent(1)).mul(&l2.pow(m.exponent(2))).unwrap();
                        acc = acc.add(&term.scale(c)).unwrap();
                    }
                    ok &= ring.contains(&acc).unwrap();
                }
            }
            (format!("{total} instances closed"), ok)
        },
    )
}

fn c6() -> CriterionResult {
    run(
        6,
        Suite::Moduli,
        "cusp extended codimension",
        "codim 1 under the full right-left action, stabilized from k=4",
        5.0,
        || {
            let cusp = fixtures::by_name("cusp").unwrap().file.to_germ().unwrap();
            let mut ok = true;
            let mut rows = Vec::new();
            for k in [4u32, 5] {
                let r = tangent(&cusp.truncated(k), GroupId::Gl(2), EquivalenceKind::AG, k, true)
                    .unwrap();
                rows.push(format!("k={k}: codim {} stab {}", r.codim, r.stabilized));
                ok &= r.codim == 1 && r.stabilized;
            }
            (rows.join("; "), ok)
        },
    )
}

fn c7() -> CriterionResult {
    run(
        7,
        Suite::Moduli,
        "rotation-structure moduli vanish",
        "moduli dim 0 and literal tangent-space equality on every planar fixture at k=5",
        10.0,
        || {
            let mut ok = true;
            let mut count = 0usize;
            for (name, f) in fixtures::germs_for_target(2, 5) {
                let m = moduli(&f, ModuliPair::AgVsRxg(GroupId::So(2)), 5).unwrap();
                let ag = tangent_subspace(&f, GroupId::So(2), EquivalenceKind::AG, 5, false).unwrap();
                let rxg =
                    tangent_subspace(&f, GroupId::So(2), EquivalenceKind::RxG, 5, false).unwrap();
                if m.dim != 0 || ag != rxg {
                    ok = false;
                }
                let _ = name;
                count += 1;
            }
            (format!("{count} fixtures, all dim 0 with equal spaces"), ok)
        },
    )
}

fn c8() -> CriterionResult {
    run(
        8,
        Suite::Moduli,
        "group-dimension bounds on relative moduli",
        "gl/sl pair <= 1 on planar fixtures; so:4 over its embedded rotation subgroup <= 3",
        10.0,
        || {
            let mut ok = true;
            let mut worst_gl = 0usize;
            for (_, f) in fixtures::germs_for_target(2, 4) {
                let m = moduli(&f, ModuliPair::RxgVsRxh(GroupId::Gl(2), GroupId::Sl(2)), 4)
                    .unwrap();
                ok &= m.dim <= 1 && m.bound == Some(1);
                worst_gl = worst_gl.max(m.dim);
            }
            let mut worst_so = 0usize;
            for (_, f) in fixtures::germs_for_target(4, 4) {
                let m = moduli(
                    &f,
                    ModuliPair::RxgVsRxh(GroupId::So(4), GroupId::SoCapTstar(1, 3)),
                    4,
                )
                .unwrap();
                ok &= m.dim <= 3 && m.bound == Some(3);
                worst_so = worst_so.max(m.dim);
            }
            (
                format!("max gl/sl dim {worst_gl} (<=1); max so:4 pair dim {worst_so} (<=3)"),
                ok,
            )
        },
    )
}

fn c9() -> CriterionResult {
    run(
        9,
        Suite::Moduli,
        "exact-sequence dimension identities",
        "both identities hold on all fixtures x catalog subgroup pairs at k=4",
        60.0,
        || {
            let mut ok = true;
            let mut checked = 0usize;
            for p in [2usize, 3, 4] {
                let groups = catalog_for_dim(p);
                for (_, f) in fixtures::germs_for_target(p, 4) {
                    for &g in &groups {
                        let m = moduli(&f, ModuliPair::AgVsRxg(g), 4).unwrap();
                        ok &= m.exact_sequence_ok;
                        checked += 1;
                        for &h in &groups {
                            if h == g || !subalgebra_check(h, g).unwrap() {
                                continue;
                            }
                            let m1 = moduli(&f, ModuliPair::AgVsAh(g, h), 4).unwrap();
                            let m2 = moduli(&f, ModuliPair::RxgVsRxh(g, h), 4).unwrap();
                            ok &= m1.exact_sequence_ok && m2.exact_sequence_ok;
                            checked += 2;
                        }
                    }
                }
            }
            (format!("{checked} identities verified"), ok)
        },
    )
}

fn c10() -> CriterionResult {
    run(
        10,
        Suite::Dims,
        "linearity of the field space across the catalog",
        "linear-only for rotation-type and trivial groups; witness degree 2 otherwise",
        10.0,
        || {
            let linear = [
                GroupId::So(2),
                GroupId::So(3),
                GroupId::So(4),
                GroupId::SoCapTstar(1, 1),
                GroupId::SoCapTstar(1, 2),
                GroupId::SoCapTstar(2, 2),
                GroupId::SoCapTstar(1, 3),
                GroupId::Trivial(2),
                GroupId::Trivial(3),
            ];
            let nonlinear = [
                GroupId::Gl(2),
                GroupId::Sl(2),
                GroupId::Sp(2),
                GroupId::Sp(4),
                GroupId::Dstar(1, 1),
                GroupId::TstarR(1, 2),
                GroupId::AffinePlus(2),
                GroupId::Lagr(2),
            ];
            let mut ok = true;
            for g in linear {
                ok &= is_linear_only(g, 3).unwrap();
            }
            let mut witnesses = Vec::new();
            for g in nonlinear {
                match first_nonlinear_degree(g, 3).unwrap() {
                    Some(d) => {
                        witnesses.push(format!("{g}@{d}"));
                        ok &= d == 2;
                    }
                    None => ok = false,
                }
            }
            (format!("witnesses: {}", witnesses.join(" ")), ok)
        },
    )
}

fn c11() -> CriterionResult {
    run(
        11,
        Suite::Moduli,
        "orbit invariance of codimension and moduli",
        "invariant under 50 random rational (A, phi) per fixture",
        120.0,
        || {
            let k = 4u32;
            let mut rng = ChaCha8Rng::seed_from_u64(1111);
            let assignments: Vec<(GermJet, GroupId)> = {
                let mut v = Vec::new();
                let p2 = fixtures::germs_for_target(2, k);
                let cycle = [GroupId::So(2), GroupId::Sl(2), GroupId::Gl(2)];
                for (i, (_, f)) in p2.into_iter().enumerate() {
                    v.push((f, cycle[i % cycle.len()]));
                }
                for (_, f) in fixtures::germs_for_target(3, k) {
                    v.push((f, GroupId::TstarR(1, 2)));
                }
                for (_, f) in fixtures::germs_for_target(4, k) {
                    v.push((f, GroupId::So(4)));
                }
                v
            };
            let mut transforms = 0usize;
            let mut ok = true;
            for (f, g) in assignments {
                let base_ag = tangent(&f, g, EquivalenceKind::AG, k, false).unwrap().codim;
                let base_rx = tangent(&f, g, EquivalenceKind::RxG, k, false).unwrap().codim;
                let base_mod = moduli(&f, ModuliPair::AgVsRxg(g), k).unwrap().dim;
                for _ in 0..50 {
                    let a = sample_element(g, &mut rng);
                    let phi = random_source_diffeo(f.source_dim(), f.order(), &mut rng);
                    let t = f.compose(&phi).unwrap().linear_image(&a).unwrap();
                    ok &= tangent(&t, g, EquivalenceKind::AG, k, false).unwrap().codim == base_ag;
                    ok &= tangent(&t, g, EquivalenceKind::RxG, k, false).unwrap().codim == base_rx;
                    ok &= moduli(&t, ModuliPair::AgVsRxg(g), k).unwrap().dim == base_mod;
                    transforms += 1;
                }
            }
            (format!("{transforms} transformed germs, all invariant"), ok)
        },
    )
}

fn c12() -> CriterionResult {
    run(
        12,
        Suite::Geometry,
        "frontal invariants: frames against closed forms",
        "coefficientwise agreement <= 1e-9 for k<=4, 20 random moduli each",
        5.0,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(1212);
            let mut worst = 0.0f64;
            let mut ok = true;
            for k in 1..=4u32 {
                for _ in 0..20 {
                    let h = NumericJet::from_jetpoly(&random_h_jet(8, &mut rng));
                    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
                    match frontal_invariants_from(k, sign, &h, 1e-9) {
                        Ok(inv) => {
                            worst = worst
                                .max(inv.closed_form_residual)
                                .max(inv.frenet_residual);
                        }
                        Err(_) => ok = false,
                    }
                }
            }
            (format!("worst residual {worst:.2e}"), ok && worst <= 1e-9)
        },
    )
}

fn c13() -> CriterionResult {
    run(
        13,
        Suite::Geometry,
        "normal-form reconstruction residuals",
        "residual <= 1e-9 on 50 random singular inputs including swap cases",
        5.0,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(1313);
            let order = 8u32;
            let mut accepted = 0usize;
            let mut swaps = 0usize;
            let mut worst = 0.0f64;
            let mut ok = true;
            while accepted < 50 {
                let k = rng.gen_range(1..=3u32);
                let sign: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
                let x_pow = JetPoly::var(1, order, 1).pow(k + 1);
                let swap_case = accepted % 3 == 2;
                let f = if swap_case {
                    // anchor in the second component: first = x^{k+1}·(x·g)
                    // has strictly higher valuation, so the quarter turn fires
                    let g = random_h_jet(order - k - 2, &mut rng);
                    let xg = JetPoly::var(1, order, 1).mul(&g.with_order(order)).unwrap();
                    let c0 = x_pow.mul(&xg).unwrap();
                    let c1 = x_pow.scale(&Q::from_integer(sign.into()));
                    let nf_germ = GermJet::new_map(1, 2, order, vec![c0, c1]).unwrap();
                    let phi = random_source_diffeo(1, order, &mut rng);
                    nf_germ.compose(&phi).unwrap()
                } else {
                    let h = random_h_jet((order - k - 1).max(2), &mut rng);
                    let c0 = x_pow.scale(&Q::from_integer(sign.into()));
                    let c1 = x_pow.mul(&h.with_order(order)).unwrap();
                    let nf_germ = GermJet::new_map(1, 2, order, vec![c0, c1]).unwrap();
                    let a = sample_element(GroupId::So(2), &mut rng);
                    let phi = random_source_diffeo(1, order, &mut rng);
                    nf_germ.compose(&phi).unwrap().linear_image(&a).unwrap()
                };
                // reject near-cancelled anchors: a tiny leading coefficient
                // makes the absolute residual meaningless
                let lead = |i: usize| {
                    germlab_core::poly::q_to_f64(
                        &f.component(i)
                            .coeff(&germlab_core::Monomial::new(vec![k + 1])),
                    )
                };
                let anchor = if f.component(0).valuation() == Some(k + 1) {
                    lead(0)
                } else if f.component(1).valuation() == Some(k + 1) {
                    lead(1)
                } else {
                    continue;
                };
                if anchor.abs() < 0.25 {
                    continue;
                }
                accepted += 1;
                match ak_normalize(&f) {
                    Ok(nf) => {
                        ok &= nf.k == k;
                        swaps += nf.rotated as usize;
                        worst = worst.max(nf.residual);
                    }
                    Err(_) => ok = false,
                }
            }
            (
                format!("50 inputs ({swaps} swap cases), worst residual {worst:.2e}"),
                ok && worst <= 1e-9 && swaps > 0,
            )
        },
    )
}

fn c14() -> CriterionResult {
    run(
        14,
        Suite::Geometry,
        "congruence round trips and conic curvature values",
        "20 matches per mode <= 1e-6; parabola flat; ellipse value (ab)^(-2/3)",
        10.0,
        || {
            let mut rng = ChaCha8Rng::seed_from_u64(1414);
            let curve = |c1: &str, c2: &str| {
                GermJet::new_map(
                    1,
                    2,
                    8,
                    vec![parse_poly(c1, 1, 8).unwrap(), parse_poly(c2, 1, 8).unwrap()],
                )
                .unwrap()
            };
            let bases = [
                curve("x1", "x1^2 + x1^3"),
                curve("x1 - x1^2", "2*x1^2"),
                curve("x1 + x1^3", "x1^2"),
                curve("x1", "x1^2 - 2*x1^4"),
            ];
            let mut ok = true;
            let mut worst = 0.0f64;
            let mut matches = 0usize;
            for mode in [CongruenceMode::Euclidean, CongruenceMode::Equiaffine] {
                let group = match mode {
                    CongruenceMode::Euclidean => GroupId::So(2),
                    CongruenceMode::Equiaffine => GroupId::Sl(2),
                };
                for i in 0..20 {
                    let f = &bases[i % bases.len()];
                    let a = sample_element(group, &mut rng);
                    let phi0 = random_source_diffeo(1, 8, &mut rng);
                    let g = f.compose(&phi0).unwrap().linear_image(&a).unwrap();
                    match congruence_test(f, &g, mode, 4, 1e-6).unwrap() {
                        CongruenceResult::Match { residual, .. } => {
                            worst = worst.max(residual);
                            matches += 1;
                        }
                        CongruenceResult::NoMatch { .. } => ok = false,
                    }
                }
            }
            // conic values
            let parabola = curve("x1", "x1^2");
            let ke_parabola = equiaffine_curvature(&parabola).unwrap();
            let flat = ke_parabola.norm_inf();
            ok &= flat <= 1e-9;
            let ellipse = curve(
                "2*x1 - 1/3*x1^3 + 1/60*x1^5 - 1/2520*x1^7",
                "1/4*x1^2 - 1/48*x1^4 + 1/1440*x1^6 - 1/80640*x1^8",
            );
            let ke = equiaffine_curvature(&ellipse).unwrap();
            let expect = 1.0f64; // (a b)^(-2/3) with a = 2, b = 1/2
            let ellipse_err = (ke.coeff1(0) - expect).abs();
            ok &= ellipse_err <= 1e-6;
            (
                format!(
                    "{matches}/40 matches, worst residual {worst:.2e}; parabola {flat:.2e}; ellipse err {ellipse_err:.2e}"
                ),
                ok && worst <= 1e-6,
            )
        },
    )
}

fn c15() -> CriterionResult {
    run(
        15,
        Suite::Geometry,
        "graph normal form: plane and round-trip invariance",
        "plane reduces to zeros exactly; invariants stable to 1e-8 under 20 random motions",
        10.0,
        || {
            let mut ok = true;
            let plane_germ = GermJet::new_map(
                2,
                3,
                4,
                vec![
                    parse_poly("x1", 2, 4).unwrap(),
                    parse_poly("x2", 2, 4).unwrap(),
                    JetPoly::zero(2, 4),
                ],
            )
            .unwrap();
            let m0 = monge_normal_form(&plane_germ).unwrap();
            ok &= m0.lambda1 == 0.0 && m0.lambda2 == 0.0 && m0.cubic == [0.0; 4];
            let base = fixtures::by_name("monge_cubic")
                .unwrap()
                .file
                .to_germ()
                .unwrap()
                .truncated(4);
            let reference = monge_normal_form(&base).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(1515);
            let mut worst = 0.0f64;
            for _ in 0..20 {
                let a = sample_element(GroupId::So(3), &mut rng);
                let phi = random_source_diffeo(2, 4, &mut rng);
                let t = base.compose(&phi).unwrap().linear_image(&a).unwrap();
                let m = monge_normal_form(&t).unwrap();
                let mut dev: f64 = (m.lambda1 - reference.lambda1).abs();
                dev = dev.max((m.lambda2 - reference.lambda2).abs());
                for (x, y) in m.cubic.iter().zip(reference.cubic.iter()) {
                    dev = dev.max((x - y).abs());
                }
                worst = worst.max(dev);
            }
            ok &= worst <= 1e-8;
            (
                format!("plane exact; worst invariant deviation {worst:.2e}"),
                ok,
            )
        },
    )
}

fn c16() -> CriterionResult {
    run(
        16,
        Suite::Moduli,
        "codimension growth probes",
        "strictly increasing over comparison orders 2..6 for both probes",
        30.0,
        || {
            let cusp = fixtures::by_name("cusp").unwrap().file.to_germ().unwrap();
            let g1 = growth_probe(&cusp, GroupId::So(2), EquivalenceKind::AG, true, 6).unwrap();
            let curve = GermJet::new_map(
                1,
                2,
                7,
                vec![
                    parse_poly("x1", 1, 7).unwrap(),
                    parse_poly("x1^2", 1, 7).unwrap(),
                ],
            )
            .unwrap();
            let g2 = growth_probe(&curve, GroupId::So(2), EquivalenceKind::RxG, true, 6).unwrap();
            let row = |g: &germlab_core::tangent::GrowthReport| {
                g.codims
                    .iter()
                    .map(|&(_, c)| c.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let ok = g1.strictly_increasing && g2.strictly_increasing;
            (
                format!("cusp [{}]; planar curve [{}]", row(&g1), row(&g2)),
                ok,
            )
        },
    )
}
