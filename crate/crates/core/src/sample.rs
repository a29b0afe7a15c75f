//! Deterministic random inputs for property tests and the reproduction
//! driver: small-coefficient jets, germs, source diffeomorphism jets and
//! rational group elements (re-exported from the catalog).

use rand::Rng;

pub use crate::lie::{group_contains, sample_element};

use crate::germ::GermJet;
use crate::monomial::monomial_basis;
use crate::poly::{q_ratio, JetPoly, Q};

fn small_q<R: Rng>(rng: &mut R, max_num: i64) -> Q {
    q_ratio(rng.gen_range(-max_num..=max_num), rng.gen_range(1..=3))
}

/// Random jet with small rational coefficients; roughly half the monomials
/// are hit.
pub fn random_jetpoly<R: Rng>(n: usize, order: u32, min_degree: u32, rng: &mut R) -> JetPoly {
    let mut p = JetPoly::zero(n, order);
    for m in monomial_basis(n, order, min_degree) {
        if rng.gen_bool(0.5) {
            p.set_coeff(m, small_q(rng, 3));
        }
    }
    p
}

/// Random map germ (zero constant terms).
pub fn random_map_germ<R: Rng>(n: usize, p: usize, order: u32, rng: &mut R) -> GermJet {
    let comps = (0..p)
        .map(|_| random_jetpoly(n, order, 1, rng))
        .collect();
    GermJet::new_map(n, p, order, comps).unwrap()
}

/// Random source diffeomorphism jet: identity linear part plus random
/// higher-order terms, so invertibility is immediate.
pub fn random_source_diffeo<R: Rng>(n: usize, order: u32, rng: &mut R) -> GermJet {
    let comps = (1..=n)
        .map(|i| {
            let mut c = JetPoly::var(n, order, i);
            if order >= 2 {
                for m in monomial_basis(n, order, 2) {
                    if rng.gen_bool(0.4) {
                        c.set_coeff(m, small_q(rng, 2));
                    }
                }
            }
            c
        })
        .collect();
    GermJet::new_map(n, n, order, comps).unwrap()
}

/// Random univariate jet (constant term allowed), for modulus germs.
pub fn random_h_jet<R: Rng>(order: u32, rng: &mut R) -> JetPoly {
    let mut p = JetPoly::zero(1, order);
    for m in monomial_basis(1, order, 0) {
        if rng.gen_bool(0.7) {
            p.set_coeff(m, small_q(rng, 3));
        }
    }
    p
}
