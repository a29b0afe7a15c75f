//! Graph normal form of an immersed surface germ (R², 0) -> (R³, 0): rotate
//! the tangent plane onto {z = 0}, reparametrize by the projection, and
//! diagonalize the quadratic part by an in-plane rotation.
//!
//! The remaining discrete freedom (normal flip, half-turn in the plane) is
//! pinned by deterministic tie-breaks so that the output is invariant under
//! rotations of the target and reparametrizations of the source.

use crate::error::{Error, Result};
use crate::germ::GermJet;
use crate::monomial::Monomial;
use crate::numjet::{invert_matrix_f64, NumericGerm, NumericJet};

#[derive(Clone, Debug)]
pub struct MongeForm {
    /// Quadratic coefficients of the graph, `lambda1 >= lambda2`. Note the
    /// principal curvatures of the graph `z = λ₁x² + λ₂y² + ...` at the
    /// origin are `2λ₁, 2λ₂`; both conventions appear in reports.
    pub lambda1: f64,
    pub lambda2: f64,
    /// Cubic coefficients (a30, a21, a12, a03).
    pub cubic: [f64; 4],
    /// The special-orthogonal matrix applied on the target.
    pub rotation: [[f64; 3]; 3],
    /// Deviation of the reduced germ from graph form (linear part (x1, x2, 0),
    /// diagonal quadratic third component).
    pub residual: f64,
    /// The reduced jet's third component (the graph function).
    pub graph: NumericJet,
}

fn mat_mul3(a: &[[f64; 3]; 3], b: &[[f64; 3]; 3]) -> [[f64; 3]; 3] {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            for (k, bk) in b.iter().enumerate() {
                out[i][j] += a[i][k] * bk[j];
            }
        }
    }
    out
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / n, v[1] / n, v[2] / n]
}

/// Reduce an immersion germ to the graph normal form.
pub fn monge_normal_form(f: &GermJet) -> Result<MongeForm> {
    if f.source_dim() != 2 || f.target_dim() != 3 {
        return Err(Error::DimensionMismatch("graph reduction takes 2 -> 3 germs".into()));
    }
    if f.order() < 3 {
        return Err(Error::OrderTooSmall {
            needed: 3,
            have: f.order(),
        });
    }
    let nf = NumericGerm::from_germ(f);
    let order = nf.order();
    // tangent vectors at 0
    let col = |j: usize| -> [f64; 3] {
        let mut v = [0.0; 3];
        for (i, c) in nf.components().iter().enumerate() {
            v[i] = c.coeff(&Monomial::var(2, j));
        }
        v
    };
    let t1 = col(1);
    let t2 = col(2);
    let normal = cross(t1, t2);
    let nlen = (normal[0] * normal[0] + normal[1] * normal[1] + normal[2] * normal[2]).sqrt();
    if nlen < 1e-12 {
        return Err(Error::DegenerateGerm("not an immersion at 0".into()));
    }
    // rotation sending the unit normal to e3: rows are an orthonormal frame
    let e3 = normalize(normal);
    let e1 = normalize(t1);
    let e2 = cross(e3, e1);
    let mut rot = [[0.0f64; 3]; 3];
    for j in 0..3 {
        rot[0][j] = e1[j];
        rot[1][j] = e2[j];
        rot[2][j] = e3[j];
    }
    // F = R f has dF(0) = [[*, *], [*, *], [0, 0]]
    let rot_vec: Vec<Vec<f64>> = rot.iter().map(|r| r.to_vec()).collect();
    let rotated = nf.linear_image(&rot_vec);
    // reparametrize by the projection to the first two coordinates
    let proj = NumericGerm::new(
        2,
        2,
        order,
        vec![rotated.component(0).clone(), rotated.component(1).clone()],
    );
    let phi = proj.invert()?;
    let reduced = rotated.compose(&phi)?;
    let w = reduced.component(2).clone();
    // diagonalize the quadratic part by an in-plane rotation of source and
    // target together
    let a = w.coeff(&Monomial::new(vec![2, 0]));
    let b = w.coeff(&Monomial::new(vec![1, 1]));
    let c = w.coeff(&Monomial::new(vec![0, 2]));
    let theta = 0.5 * b.atan2(a - c);
    let (cos, sin) = (theta.cos(), theta.sin());
    // w ∘ S with S the rotation by theta of the source plane
    let s_germ = NumericGerm::new(
        2,
        2,
        order,
        vec![
            NumericJet::var(2, order, 1)
                .scale(cos)
                .sub(&NumericJet::var(2, order, 2).scale(sin)),
            NumericJet::var(2, order, 1)
                .scale(sin)
                .add(&NumericJet::var(2, order, 2).scale(cos)),
        ],
    );
    let mut graph = w.compose(&s_germ)?;
    let inplane = [
        [cos, sin, 0.0],
        [-sin, cos, 0.0],
        [0.0, 0.0, 1.0],
    ];
    let mut rotation = mat_mul3(&inplane, &rot);

    let cubic_of = |g: &NumericJet| -> [f64; 4] {
        [
            g.coeff(&Monomial::new(vec![3, 0])),
            g.coeff(&Monomial::new(vec![2, 1])),
            g.coeff(&Monomial::new(vec![1, 2])),
            g.coeff(&Monomial::new(vec![0, 3])),
        ]
    };
    let quad_of = |g: &NumericJet| -> (f64, f64) {
        (
            g.coeff(&Monomial::new(vec![2, 0])),
            g.coeff(&Monomial::new(vec![0, 2])),
        )
    };
    // source substitution paired with the target rotation that restores
    // graph form
    let apply = |graph: &NumericJet,
                 rotation: &[[f64; 3]; 3],
                 source: [[f64; 2]; 2],
                 negate: bool|
     -> Result<(NumericJet, [[f64; 3]; 3])> {
        let sub = NumericGerm::new(
            2,
            2,
            order,
            vec![
                NumericJet::var(2, order, 1)
                    .scale(source[0][0])
                    .add(&NumericJet::var(2, order, 2).scale(source[0][1])),
                NumericJet::var(2, order, 1)
                    .scale(source[1][0])
                    .add(&NumericJet::var(2, order, 2).scale(source[1][1])),
            ],
        );
        let mut g = graph.compose(&sub)?;
        // target block: inverse of the source linear map, extended by ±1
        let s_inv = invert_matrix_f64(&source.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
            .expect("tie-break substitutions are invertible");
        let z = if negate {
            g = g.scale(-1.0);
            -1.0
        } else {
            1.0
        };
        let t = [
            [s_inv[0][0], s_inv[0][1], 0.0],
            [s_inv[1][0], s_inv[1][1], 0.0],
            [0.0, 0.0, z],
        ];
        Ok((g, mat_mul3(&t, rotation)))
    };

    // tie-break 1: order the quadratic coefficients by a quarter turn
    let reorder = |graph: &NumericJet, rotation: &[[f64; 3]; 3]| -> Result<(NumericJet, [[f64; 3]; 3])> {
        let (l1, l2) = quad_of(graph);
        if l1 < l2 {
            apply(graph, rotation, [[0.0, -1.0], [1.0, 0.0]], false)
        } else {
            Ok((graph.clone(), *rotation))
        }
    };
    (graph, rotation) = reorder(&graph, &rotation)?;

    // tie-break 2: normal orientation by the sign of the mean coefficient,
    // falling back to the cubic lead when the mean is negligible. The flip
    // is the target involution diag(1, -1, -1) with the source mirror
    // (x1, x2) -> (x1, -x2); note the mirror has negative determinant, which
    // a source diffeomorphism is allowed to have.
    let (l1, l2) = quad_of(&graph);
    let mean = l1 + l2;
    let should_flip = if mean.abs() > 1e-9 {
        mean < 0.0
    } else {
        matches!(
            cubic_of(&graph).iter().find(|v| v.abs() > 1e-9),
            Some(&v) if v < 0.0
        )
    };
    if should_flip {
        (graph, rotation) = apply(&graph, &rotation, [[1.0, 0.0], [0.0, -1.0]], true)?;
        (graph, rotation) = reorder(&graph, &rotation)?;
    }

    // tie-break 3: half-turn of the plane fixes the cubic sign
    if let Some(&lead) = cubic_of(&graph).iter().find(|v| v.abs() > 1e-9) {
        if lead < 0.0 {
            (graph, rotation) =
                apply(&graph, &rotation, [[-1.0, 0.0], [0.0, -1.0]], false)?;
        }
    }
    let cubic = cubic_of(&graph);
    // residual: linear part and the off-diagonal quadratic of the reduced germ
    let mut residual = graph.coeff(&Monomial::var(2, 1)).abs();
    residual = residual.max(graph.coeff(&Monomial::var(2, 2)).abs());
    residual = residual.max(graph.coeff(&Monomial::new(vec![1, 1])).abs());
    residual = residual.max(graph.constant_term().abs());
    // rotation must be special orthogonal
    let det = det3(&rotation);
    residual = residual.max((det - 1.0).abs());
    Ok(MongeForm {
        lambda1: graph.coeff(&Monomial::new(vec![2, 0])),
        lambda2: graph.coeff(&Monomial::new(vec![0, 2])),
        cubic,
        rotation,
        residual,
        graph,
    })
}

fn det3(m: &[[f64; 3]; 3]) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Apply a target rotation and a source diffeomorphism jet to a numeric
/// germ; test helper for round-trip invariance.
pub fn transform_surface(
    f: &NumericGerm,
    rotation: &[[f64; 3]; 3],
    source: &NumericGerm,
) -> Result<NumericGerm> {
    let rot_vec: Vec<Vec<f64>> = rotation.iter().map(|r| r.to_vec()).collect();
    f.compose(source).map(|g| g.linear_image(&rot_vec))
}

/// Check that a 3x3 f64 matrix is special orthogonal to the tolerance.
pub fn is_special_orthogonal(m: &[[f64; 3]; 3], tol: f64) -> bool {
    let mut max = (det3(m) - 1.0).abs();
    for i in 0..3 {
        for j in 0..3 {
            let dot: f64 = (0..3).map(|k| m[i][k] * m[j][k]).sum();
            let expect = if i == j { 1.0 } else { 0.0 };
            max = max.max((dot - expect).abs());
        }
    }
    max <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn surface(k: u32, c: [&str; 3]) -> GermJet {
        GermJet::new_map(
            2,
            3,
            k,
            c.iter().map(|s| parse_poly(s, 2, k).unwrap()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn plane_reduces_to_zero() {
        let f = surface(4, ["x1", "x2", "0*x1"]);
        let m = monge_normal_form(&f).unwrap();
        assert_eq!(m.lambda1, 0.0);
        assert_eq!(m.lambda2, 0.0);
        assert_eq!(m.cubic, [0.0; 4]);
        assert_eq!(m.residual, 0.0);
    }

    #[test]
    fn saddle_coefficients() {
        let f = surface(4, ["x1", "x2", "x1^2 - x2^2"]);
        let m = monge_normal_form(&f).unwrap();
        assert!((m.lambda1 - 1.0).abs() < 1e-12);
        assert!((m.lambda2 + 1.0).abs() < 1e-12);
        assert!(m.cubic.iter().all(|c| c.abs() < 1e-12));
        assert!(is_special_orthogonal(&m.rotation, 1e-12));
    }

    #[test]
    fn non_immersion_is_an_error() {
        let f = surface(3, ["x1", "x1", "x2^2"]);
        assert!(matches!(
            monge_normal_form(&f),
            Err(Error::DegenerateGerm(_))
        ));
    }
}
