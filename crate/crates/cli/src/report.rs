//! Report assembly. JSON output is built from `serde_json` maps (BTree
//! ordering), so identical inputs produce byte-identical bytes.

use serde_json::{json, Value};

use germlab_core::curve::{AkNormalForm, CongruenceResult, CurveInvariants};
use germlab_core::monge::MongeForm;
use germlab_core::numjet::NumericJet;
use germlab_core::tangent::{GrowthReport, ModuliReport, RigidityReport, TangentReport};
use germlab_core::{GFieldSpace, GRingJet, GermJet};

pub fn germ_json(g: &GermJet) -> Value {
    json!({
        "n": g.source_dim(),
        "p": g.target_dim(),
        "order": g.order(),
        "components": g.components().iter().map(|c| c.display('x')).collect::<Vec<_>>(),
    })
}

pub fn numeric_jet_json(j: &NumericJet) -> Value {
    if j.nvars() == 1 {
        let coeffs: Vec<f64> = (0..=j.order()).map(|d| j.coeff1(d)).collect();
        json!({ "order": j.order(), "coeffs": coeffs })
    } else {
        let terms: Vec<Value> = j
            .terms()
            .map(|(m, c)| json!([m.display('x'), c]))
            .collect();
        json!({ "order": j.order(), "nvars": j.nvars(), "terms": terms })
    }
}

pub fn gfields_json(space: &GFieldSpace, ring: Option<&GRingJet>) -> Value {
    let per_degree: Vec<Value> = space
        .per_degree()
        .iter()
        .map(|(d, b)| json!({"d": d, "dim": b.dim()}))
        .collect();
    let mut v = json!({
        "group": space.group().to_string(),
        "k": space.order(),
        "include_constants": space.include_constants(),
        "per_degree": per_degree,
        "total_dim": space.total_dim(),
    });
    if let Some(r) = ring {
        v["ring_dim"] = json!(r.dim());
    }
    v
}

pub fn gfields_table(space: &GFieldSpace, ring: Option<&GRingJet>, per_degree: bool) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "field space of {} at jet order {} ({})\n",
        space.group(),
        space.order(),
        if space.include_constants() {
            "with constants"
        } else {
            "vanishing at 0"
        }
    ));
    if per_degree {
        for (d, b) in space.per_degree() {
            out.push_str(&format!("  degree {:>2}: dim {}\n", d, b.dim()));
        }
    }
    out.push_str(&format!("total dim: {}\n", space.total_dim()));
    if let Some(r) = ring {
        out.push_str(&format!("ring jet dim at k={}: {}\n", r.order(), r.dim()));
    }
    out
}

pub fn ring_json(r: &GRingJet) -> Value {
    json!({
        "group": r.group().to_string(),
        "k": r.order(),
        "dim": r.dim(),
        "basis": r.basis_jets().iter().map(|p| p.display('y')).collect::<Vec<_>>(),
    })
}

pub fn tangent_json(r: &TangentReport) -> Value {
    json!({
        "germ": germ_json(&r.germ),
        "group": r.group.to_string(),
        "eq": r.eq.to_string(),
        "k": r.k,
        "comparison_order": r.comparison_order,
        "extended": r.extended,
        "dims": {
            "tf_image": r.tf_dim,
            "omega_image": r.omega_dim,
            "g_of_f": r.g_of_f_dim,
            "tangent_total": r.total_dim,
        },
        "ambient_dim": r.ambient_dim,
        "codim": r.codim,
        "stabilized": r.stabilized,
    })
}

pub fn tangent_table(r: &TangentReport) -> String {
    format!(
        "tangent report: eq={} group={} k={} (comparison order {}) extended={}\n\
         dims: tf={} omega={} g(f)={} total={} ambient={}\n\
         codim: {}   stabilized (orders {}..{}): {}\n",
        r.eq,
        r.group,
        r.k,
        r.comparison_order,
        r.extended,
        r.tf_dim,
        r.omega_dim,
        r.g_of_f_dim,
        r.total_dim,
        r.ambient_dim,
        r.codim,
        r.k - 1,
        r.k,
        r.stabilized
    )
}

pub fn moduli_json(r: &ModuliReport) -> Value {
    json!({
        "germ": germ_json(&r.germ),
        "pair": r.pair.to_string(),
        "k": r.k,
        "comparison_order": r.comparison_order,
        "dim": r.dim,
        "larger_dim": r.larger_dim,
        "smaller_dim": r.smaller_dim,
        "bound": r.bound,
        "exact_sequence_ok": r.exact_sequence_ok,
    })
}

pub fn moduli_table(r: &ModuliReport) -> String {
    format!(
        "moduli report: pair={} k={} (comparison order {})\n\
         dim = {} (larger {} / smaller {}){}\n\
         exact sequence identity: {}\n",
        r.pair,
        r.k,
        r.comparison_order,
        r.dim,
        r.larger_dim,
        r.smaller_dim,
        match r.bound {
            Some(b) => format!("   bound: {b}"),
            None => String::new(),
        },
        if r.exact_sequence_ok { "ok" } else { "VIOLATED" }
    )
}

pub fn rigidity_json(r: &RigidityReport) -> Value {
    json!({
        "group": r.group.to_string(),
        "k": r.k,
        "linear_only": r.linear_only,
        "first_nonlinear_degree": r.first_nonlinear_degree,
        "germs": r.germ_results.iter().map(|gr| json!({
            "germ": germ_json(&gr.germ),
            "subspaces_equal": gr.subspaces_equal,
            "moduli_dim": gr.moduli_dim,
        })).collect::<Vec<_>>(),
        "all_hold": r.all_hold,
    })
}

pub fn rigidity_table(r: &RigidityReport) -> String {
    let mut out = format!(
        "rigidity report for {} at k={}: linear-only = {}\n",
        r.group, r.k, r.linear_only
    );
    if let Some(d) = r.first_nonlinear_degree {
        out.push_str(&format!("first degree with a nonlinear field: {d}\n"));
    } else {
        for gr in &r.germ_results {
            out.push_str(&format!(
                "  germ {}: tangent spaces equal = {}, moduli dim = {}\n",
                gr.germ.display('x'),
                gr.subspaces_equal,
                gr.moduli_dim
            ));
        }
        out.push_str(&format!("all consequences hold: {}\n", r.all_hold));
    }
    out
}

pub fn growth_json(r: &GrowthReport) -> Value {
    json!({
        "germ": germ_json(&r.germ),
        "group": r.group.to_string(),
        "eq": r.eq.to_string(),
        "extended": r.extended,
        "codims": r.codims.iter().map(|&(k, c)| json!({"comparison_order": k, "codim": c})).collect::<Vec<_>>(),
        "strictly_increasing": r.strictly_increasing,
        "note": "growth is evidence of infinite codimension, not a certificate",
    })
}

pub fn growth_table(r: &GrowthReport) -> String {
    let mut out = format!(
        "growth probe: eq={} group={} extended={}\n",
        r.eq, r.group, r.extended
    );
    for (k, c) in &r.codims {
        out.push_str(&format!("  comparison order {:>2}: codim {}\n", k, c));
    }
    out.push_str(&format!(
        "strictly increasing: {} (evidence only)\n",
        r.strictly_increasing
    ));
    out
}

pub fn ak_json(nf: &AkNormalForm) -> Value {
    json!({
        "kind": "ak",
        "k": nf.k,
        "sign": nf.sign,
        "rotated": nf.rotated,
        "h": numeric_jet_json(&nf.h),
        "phi": numeric_jet_json(&nf.phi),
        "residual": nf.residual,
    })
}

pub fn monge_json(m: &MongeForm) -> Value {
    json!({
        "kind": "monge",
        "lambda1": m.lambda1,
        "lambda2": m.lambda2,
        "graph_principal_curvatures": [2.0 * m.lambda1, 2.0 * m.lambda2],
        "note": "lambda are the quadratic graph coefficients; the classical principal curvatures of the graph are twice them",
        "cubic": m.cubic,
        "rotation": m.rotation,
        "residual": m.residual,
    })
}

pub fn invariants_json(inv: &CurveInvariants) -> Value {
    let jet = |o: &Option<NumericJet>| o.as_ref().map(numeric_jet_json);
    json!({
        "kind": format!("{:?}", inv.kind),
        "sign": inv.sign,
        "kappa": jet(&inv.kappa),
        "ell": jet(&inv.ell),
        "beta": jet(&inv.beta),
        "kappa_e": jet(&inv.kappa_e),
        "frenet_residual": inv.frenet_residual,
        "closed_form_residual": inv.closed_form_residual,
    })
}

pub fn congruence_json(r: &CongruenceResult) -> Value {
    match r {
        CongruenceResult::Match {
            phi,
            orientation,
            residual,
        } => json!({
            "match": true,
            "orientation": orientation,
            "phi": numeric_jet_json(phi),
            "residual": residual,
        }),
        CongruenceResult::NoMatch {
            obstruction_degree,
            best_residual,
        } => json!({
            "match": false,
            "obstruction_degree": obstruction_degree,
            "best_residual": best_residual,
        }),
    }
}
