//! Enveloping representation on (𝔽[G]⊗E)/Z: quotient dimensions, the
//! restriction identities, and the universal map to a padded quadruple.

use amenact::cx::CMat;
use amenact::group::FiniteGroup;
use amenact::prep::{instance_e5, PartialRep};
use amenact::repenv::{rep_globalize, universal_map_psi, RestrictionQuadruple};
use std::sync::Arc;

fn main() {
    let e5 = instance_e5();
    let env = rep_globalize(&e5).unwrap();
    println!("E5 envelope: dim Z = {}, dim F = {}", env.dim_z, env.dim_f);
    println!(
        "Res = π residual {}, q∘ι = id residual {}, representation law residual {}",
        env.report.res_residual, env.report.qi_residual, env.report.rep_law_residual
    );
    println!(
        "condition (iii) on E_t⁻¹: {} | over all of E: {} (gap recorded, not hidden)",
        env.report.iii_scoped_residual, env.report.iii_global_residual
    );

    // universal ψ to env ⊕ an extra invariant summand
    let extra: Vec<CMat> = (0..4).map(|_| CMat::identity(2)).collect();
    let cand = RestrictionQuadruple::with_extra_summand(&env, &extra);
    let map = universal_map_psi(&env, &cand).unwrap();
    println!(
        "universal ψ: ι-residual {}, q-residual {}, intertwine {}, span rank {}",
        map.iota_residual, map.q_residual, map.intertwine_residual, map.span_rank
    );

    // the zero-extended rep of ℤ/2: Z = 0, F two-dimensional, and the
    // global form of condition (iii) genuinely fails
    let z2 = Arc::new(FiniteGroup::cyclic(2));
    let zero = PartialRep::new(z2, vec![CMat::identity(1), CMat::zeros(1, 1)]).unwrap();
    let env0 = rep_globalize(&zero).unwrap();
    println!(
        "zero-extended rep: dim F = {} (ρ is the swap), (iii) global residual = {}",
        env0.dim_f, env0.report.iii_global_residual
    );
}
