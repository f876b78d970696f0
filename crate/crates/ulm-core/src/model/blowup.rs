//! Blow-up charts of the local model at the worst point, and the explicit
//! chart isomorphisms onto the flat-closure charts.
//!
//! A blow-up chart lives in the ring of the local-model matrix entries, a
//! second matrix of degree-one variables, the blow-up scale `varpi` and `pi`.
//! Membership tests in this large ideal are made tractable by an *enrichment*
//! step: rank-one consequences of the wedge, cross and dehomogenization
//! generators are appended, each verified on construction as an explicit
//! polynomial combination of the listed generators (so the ideal is provably
//! unchanged), after which the linear-solve preprocessing collapses the
//! presentation to a handful of variables.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::KernelError;
use crate::ideal::Ideal;
use crate::matrix::{adjoint, trace, PolyMatrix};
use crate::model::charts::{build_spl_chart, kramer_to_class_map};
use crate::model::local::{chain_relations, spin_relations, std_blocks};
use crate::model::{
    classify_blowup_chart, dual, eps, inverse_var_name, sigma, var, xvar, ChartClass, ChartId,
    ChartPresentation, Family, InstanceParams, VariantConfig,
};
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, PolyRing};

/// Ring of a blow-up chart: `x_i_j` (local-model entries), `bx_i_j`
/// (degree-one blow-up entries), `varpi`, `pi`.
pub fn blowup_ring(n: usize) -> Result<PolyRing, KernelError> {
    let mut names: Vec<String> = Vec::with_capacity(2 * n * n + 2);
    for i in 1..=n {
        for j in 1..=n {
            names.push(xvar("x", i, j));
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            names.push(xvar("bx", i, j));
        }
    }
    names.push(String::from("varpi"));
    names.push(String::from("pi"));
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    PolyRing::new(&refs, MonomialOrder::GrevLex)
}

fn matrix_of(ring: &PolyRing, prefix: &str, n: usize) -> Result<PolyMatrix, KernelError> {
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            entries.push(Polynomial::var_named(ring, &xvar(prefix, i, j))?);
        }
    }
    Ok(PolyMatrix::new(ring, n, n, entries))
}

fn push_entries(out: &mut Vec<(Polynomial, String)>, m: &PolyMatrix, tag: &str) {
    for e in m.entries() {
        if !e.is_zero() {
            out.push((e.clone(), String::from(tag)));
        }
    }
}

/// Builds the blow-up chart `(gamma, eta)`, dehomogenized by
/// `bx_{gamma,eta} + varpi * delta - 1`.
pub fn build_blowup_chart(
    n: usize,
    k: usize,
    gamma: usize,
    eta: usize,
    variant: VariantConfig,
) -> Result<ChartPresentation, KernelError> {
    let inst = InstanceParams::new(n, k)?;
    inst.require_charts()?;
    let class = classify_blowup_chart(n, k, gamma, eta)?;
    let ring = blowup_ring(n)?;
    let x = matrix_of(&ring, "x", n)?;
    let bx = matrix_of(&ring, "bx", n)?;
    let pi = Polynomial::pi(&ring);
    let w = Polynomial::var_named(&ring, "varpi")?;

    let mut gens: Vec<(Polynomial, String)> = Vec::new();
    // the full local-model relations on the base entries
    gens.extend(chain_relations(&x, &inst, variant.sign)?);
    gens.extend(spin_relations(&x, &inst)?);
    // cross relations tying the two matrices through (pi : varpi)
    for i in 0..n {
        for j in 0..n {
            let g = x.at(i, j).mul(&w)?.sub(&bx.at(i, j).mul(&pi)?)?;
            gens.push((g, "rees-cross".to_string()));
        }
    }
    // proportionality of the two matrices
    for a in 0..n * n {
        for b in a + 1..n * n {
            let (i, j) = (a / n, a % n);
            let (kk, l) = (b / n, b % n);
            let g = bx
                .at(i, j)
                .mul(x.at(kk, l))?
                .sub(&bx.at(kk, l).mul(x.at(i, j))?)?;
            gens.push((g, "rees-commute".to_string()));
        }
    }
    // degree-two square relation
    let sq = bx
        .mul(&bx)?
        .sub(&PolyMatrix::scalar(&ring, n, &w.pow(2)?))?;
    push_entries(&mut gens, &sq, "bl-square");
    // wedge conditions on the degree-one matrix
    let bxp = bx.add(&PolyMatrix::scalar(&ring, n, &w))?;
    for m in bxp.minors(2)? {
        if !m.is_zero() {
            gens.push((m, "bl-wedge-2".to_string()));
        }
    }
    let bxm = bx.sub(&PolyMatrix::scalar(&ring, n, &w))?;
    gens.push((bxm.det()?, "bl-wedge-n".to_string()));
    // adjoint / linear relations on the degree-one blocks
    let fb = std_blocks(&bx, n, k);
    let xb = std_blocks(&x, n, k);
    let two_w = w.scale(&BigRational::from_integer(2.into()))?;
    push_entries(&mut gens, &fb.b.sub(&adjoint(&fb.b))?, "bl-adjoint-b");
    push_entries(&mut gens, &fb.c.sub(&adjoint(&fb.c))?, "bl-adjoint-c");
    let rel_d = fb
        .d
        .add(&PolyMatrix::scalar(&ring, k, &two_w))?
        .add(&adjoint(&fb.a))?;
    push_entries(&mut gens, &rel_d, "bl-adjoint-d");
    push_entries(
        &mut gens,
        &fb.m.sub(&adjoint(&fb.e).scale(&pi)?)?,
        "bl-adjoint-m",
    );
    push_entries(
        &mut gens,
        &fb.l.add(&adjoint(&fb.f).scale(&pi)?)?,
        "bl-adjoint-l",
    );
    push_entries(&mut gens, &fb.x4.sub(&adjoint(&fb.x4))?, "bl-adjoint-x4");
    // mixed relations against the base blocks
    let half = Polynomial::from_ratio(&ring, 1, 2);
    let w_id = PolyMatrix::scalar(&ring, k, &w);
    let mix_a = fb
        .a
        .add(&adjoint(&xb.f).mul(&fb.e)?.scale(&half)?)?
        .add(&w_id)?;
    push_entries(&mut gens, &mix_a, "bl-mixed-a");
    let mix_b = fb.b.add(&adjoint(&xb.f).mul(&fb.f)?.scale(&half)?)?;
    push_entries(&mut gens, &mix_b, "bl-mixed-b");
    let mix_c = fb.c.sub(&adjoint(&xb.e).mul(&fb.e)?.scale(&half)?)?;
    push_entries(&mut gens, &mix_c, "bl-mixed-c");
    let mix_d = fb
        .d
        .sub(&adjoint(&xb.e).mul(&fb.f)?.scale(&half)?)?
        .add(&w_id)?;
    push_entries(&mut gens, &mix_d, "bl-mixed-d");
    // trace normalization in the scale variable
    let coeff = Polynomial::from_int(&ring, n as i64 - 2 * k as i64 - 2);
    let tr = trace(&fb.x4)?.add(&coeff.mul(&w)?)?;
    if !tr.is_zero() {
        gens.push((tr, "bl-trace".to_string()));
    }
    // dehomogenization of the chosen chart
    let mut dehom = bx.at(gamma - 1, eta - 1).clone();
    if gamma == eta {
        dehom = dehom.add(&w)?;
    }
    dehom = dehom.sub(&Polynomial::one(&ring))?;
    gens.push((dehom, "dehomogenization".to_string()));

    // substitution table: the distinguished column/row vectors
    let mut substitutions: Vec<(String, Polynomial)> = Vec::new();
    for i in 1..=n {
        let mut s_i = bx.at(i - 1, eta - 1).clone();
        if i == eta {
            s_i = s_i.add(&w)?;
        }
        substitutions.push((var('s', i), s_i));
        let mut u_i = bx.at(gamma - 1, i - 1).clone();
        if i == gamma {
            u_i = u_i.add(&w)?;
        }
        substitutions.push((var('u', i), u_i));
        let mut lam_i = x.at(gamma - 1, i - 1).clone();
        if i == gamma {
            lam_i = lam_i.add(&pi)?;
        }
        substitutions.push((alloc::format!("lam_{i}"), lam_i));
    }

    Ok(ChartPresentation {
        id: ChartId {
            family: Family::Blowup,
            class: Some(class),
            a: gamma,
            b: eta,
        },
        instance: inst,
        ring,
        gens,
        blocks: alloc::vec![
            (
                "base".to_string(),
                (1..=n)
                    .flat_map(|i| (1..=n).map(move |j| xvar("x", i, j)))
                    .collect()
            ),
            (
                "degree-one".to_string(),
                (1..=n)
                    .flat_map(|i| (1..=n).map(move |j| xvar("bx", i, j)))
                    .collect()
            ),
            ("scale".to_string(), alloc::vec!["varpi".to_string()]),
        ],
        substitutions,
    })
}

/// The blow-up chart ideal enriched by certified rank-one consequences.
///
/// Every appended element is constructed twice: once directly and once as an
/// explicit combination of listed generators; the two must agree exactly, so
/// the generated ideal is unchanged while the linear-solve preprocessing can
/// collapse nearly all variables.
pub fn enriched_blowup_ideal(chart: &ChartPresentation) -> Result<Ideal, KernelError> {
    let inst = chart.instance;
    let n = inst.n;
    let (gamma, eta) = (chart.id.a, chart.id.b);
    let ring = chart.ring.clone();
    let pi = Polynomial::pi(&ring);
    let w = Polynomial::var_named(&ring, "varpi")?;
    let x = matrix_of(&ring, "x", n)?;
    let bx = matrix_of(&ring, "bx", n)?;
    // Q = bx + w*I, P = x + pi*I
    let q = bx.add(&PolyMatrix::scalar(&ring, n, &w))?;
    let p = x.add(&PolyMatrix::scalar(&ring, n, &pi))?;
    let g0 = gamma - 1;
    let e0 = eta - 1;
    let dehom = q.at(g0, e0).sub(&Polynomial::one(&ring))?;
    let c_scalar = p.at(g0, e0).clone();

    let cross = |i: usize, j: usize| -> Result<Polynomial, KernelError> {
        x.at(i, j).mul(&w)?.sub(&bx.at(i, j).mul(&pi)?)
    };
    let commute = |i: usize, j: usize, kk: usize, l: usize| -> Result<Polynomial, KernelError> {
        bx.at(i, j).mul(x.at(kk, l))?.sub(&bx.at(kk, l).mul(x.at(i, j))?)
    };

    let mut extra: Vec<(Polynomial, String)> = Vec::new();
    // rank-one consequences on the degree-one matrix: Q_ij = S_i U_j
    for i in 0..n {
        for j in 0..n {
            if i == g0 {
                continue;
            }
            let target = q.at(i, j).sub(&q.at(i, e0).mul(q.at(g0, j))?)?;
            let cert = if j == e0 {
                // Q_ie - S_i * U_e = -S_i * dehom
                q.at(i, e0).mul(&dehom)?.neg()
            } else {
                // minor of rows {i, gamma}, cols {j, eta} minus Q_ij * dehom
                let minor = q
                    .at(i, j)
                    .mul(q.at(g0, e0))?
                    .sub(&q.at(i, e0).mul(q.at(g0, j))?)?;
                minor.sub(&q.at(i, j).mul(&dehom)?)?
            };
            if cert != target {
                return Err(KernelError::Invalid(
                    "enrichment certificate mismatch (rank-one)".to_string(),
                ));
            }
            if !target.is_zero() {
                extra.push((target, "derived-rank-one".to_string()));
            }
        }
    }
    // base-matrix consequences: P_ij = S_i * Lambda_j
    // via T_ij = P_ij Q_ge - P_ge Q_ij (a combination of cross and
    // proportionality generators) and the dehomogenization
    let t_poly = |i: usize, j: usize| -> Result<Polynomial, KernelError> {
        // T_ij = -C_(ij),(ge) + delta_ge K_ij - delta_ij K_ge
        let mut t = commute(i, j, g0, e0)?.neg();
        if g0 == e0 {
            t = t.add(&cross(i, j)?)?;
        }
        if i == j {
            t = t.sub(&cross(g0, e0)?)?;
        }
        // check against the direct expression
        let direct = p.at(i, j).mul(q.at(g0, e0))?.sub(&p.at(g0, e0).mul(q.at(i, j))?)?;
        if t != direct {
            return Err(KernelError::Invalid(
                "enrichment certificate mismatch (cross)".to_string(),
            ));
        }
        Ok(t)
    };
    let g2p = |i: usize, j: usize| -> Result<Polynomial, KernelError> {
        // P_ij - c * Q_ij = T_ij - P_ij * dehom
        let cert = t_poly(i, j)?.sub(&p.at(i, j).mul(&dehom)?)?;
        let target = p.at(i, j).sub(&c_scalar.mul(q.at(i, j))?)?;
        if cert != target {
            return Err(KernelError::Invalid(
                "enrichment certificate mismatch (solve)".to_string(),
            ));
        }
        Ok(target)
    };
    for i in 0..n {
        if i == g0 {
            continue;
        }
        for j in 0..n {
            // P_ij - S_i Lambda_j = G2'(i,j) + c*G1(i,j) - S_i*G2'(g,j)
            let g1 = q.at(i, j).sub(&q.at(i, e0).mul(q.at(g0, j))?)?;
            let cert = g2p(i, j)?
                .add(&c_scalar.mul(&g1)?)?
                .sub(&q.at(i, e0).mul(&g2p(g0, j)?)?)?;
            let target = p.at(i, j).sub(&q.at(i, e0).mul(p.at(g0, j))?)?;
            if cert != target {
                return Err(KernelError::Invalid(
                    "enrichment certificate mismatch (base rank-one)".to_string(),
                ));
            }
            if !target.is_zero() {
                extra.push((target, "derived-base-rank-one".to_string()));
            }
        }
    }

    let mut gens: Vec<(Polynomial, String)> = chart.gens.clone();
    gens.extend(extra);
    Ok(Ideal::with_provenance(&ring, gens))
}

/// The two substitution maps of a blow-up chart isomorphism: `phi` carries
/// flat-closure chart variables into the blow-up chart ring, `psi` carries
/// blow-up chart variables back.
pub struct BlowupIso {
    pub class: ChartClass,
    pub uprime: ChartPresentation,
    pub v: ChartPresentation,
    pub phi: BTreeMap<String, Polynomial>,
    pub psi: BTreeMap<String, Polynomial>,
}

/// Builds the chart isomorphism data for blow-up classes (i)-(iii); class
/// (iv) charts are generic and carry no isomorphism.
pub fn chart_iso_map(
    n: usize,
    k: usize,
    gamma: usize,
    eta: usize,
    variant: VariantConfig,
) -> Result<BlowupIso, KernelError> {
    let class = classify_blowup_chart(n, k, gamma, eta)?;
    if class == ChartClass::IV {
        return Err(KernelError::Invalid(
            "class-(iv) blow-up charts are generic; no isomorphism".to_string(),
        ));
    }
    let v = build_blowup_chart(n, k, gamma, eta, variant)?;
    let beta = dual(n, eta);
    let uprime = build_spl_chart(n, k, gamma, beta)?;
    let vring = v.ring.clone();
    let uring = uprime.ring.clone();
    let pi_u = Polynomial::pi(&uring);
    let sigs = |prefix: char| sigma(&uring, prefix, n, k);
    let e = |i: usize| eps(n, k, i);

    // V-side building blocks
    let s_v = |i: usize| v.substitution(&var('s', i)).unwrap().clone();
    let u_v = |i: usize| v.substitution(&var('u', i)).unwrap().clone();
    let lam_v = |i: usize| v.substitution(&alloc::format!("lam_{i}")).unwrap().clone();
    let t_v = |i: usize| -> Result<Polynomial, KernelError> {
        let sgn = e(dual(n, eta)) * e(i);
        u_v(dual(n, i)).scale(&BigRational::from_integer(sgn.into()))
    };

    // phi: flat-closure variables -> blow-up ring
    let mut phi: BTreeMap<String, Polynomial> = BTreeMap::new();
    match class {
        ChartClass::I => {
            for name in uring.vars() {
                if name == "pi" {
                    continue;
                }
                let img = if let Some(rest) = name.strip_prefix("s_") {
                    let j: usize = rest.parse().unwrap();
                    s_v(j)
                } else if let Some(rest) = name.strip_prefix("t_") {
                    let j: usize = rest.parse().unwrap();
                    t_v(j)?
                } else {
                    // mu_{dual gamma}
                    let sgn = e(dual(n, eta)) * e(dual(n, gamma));
                    lam_v(eta).scale(&BigRational::from_integer(sgn.into()))?
                };
                phi.insert(name.clone(), img);
            }
        }
        ChartClass::II => {
            for j in 1..=n {
                phi.insert(var('s', j), s_v(j));
            }
            phi.insert(
                alloc::format!("lam_{}", dual(n, gamma)),
                lam_v(dual(n, gamma)),
            );
            phi.insert(
                inverse_var_name(&var('s', dual(n, eta))),
                u_v(dual(n, gamma)),
            );
        }
        ChartClass::III => {
            for j in 1..=n {
                phi.insert(var('t', j), t_v(j)?);
            }
            let sgn = e(dual(n, eta)) * e(eta);
            phi.insert(
                alloc::format!("mu_{eta}"),
                {
                    let mut m = Polynomial::var_named(&vring, &xvar("x", dual(n, eta), eta))?;
                    if dual(n, eta) == eta {
                        m = m.add(&Polynomial::pi(&vring))?;
                    }
                    m.scale(&BigRational::from_integer(sgn.into()))?
                },
            );
            phi.insert(inverse_var_name(&var('t', gamma)), s_v(dual(n, eta)));
        }
        ChartClass::IV => unreachable!(),
    }

    // psi: blow-up variables -> flat-closure ring, through the coordinate map
    let coord = kramer_to_class_map(&uprime)?;
    let m_s = |i: usize| coord[&var('s', i)].clone();
    let m_t = |i: usize| coord[&var('t', i)].clone();
    let m_lam = |i: usize| coord[&alloc::format!("lam_{i}")].clone();
    let half = BigRational::new(1.into(), 2.into());
    let psi_w: Polynomial = match class {
        ChartClass::I => {
            let ta = Polynomial::var_named(&uring, &var('t', gamma))?;
            ta.mul(&sigs('s')?)?
                .scale(&half)?
                .scale(&BigRational::from_integer(e(dual(n, eta)).into()))?
        }
        ChartClass::II => {
            let z = Polynomial::var_named(&uring, &inverse_var_name(&var('s', dual(n, eta))))?;
            let sgn = e(gamma) * e(dual(n, eta));
            pi_u.mul(&z)?
                .mul(&sigs('s')?)?
                .scale(&half)?
                .scale(&BigRational::from_integer(sgn.into()))?
        }
        ChartClass::III => {
            let z = Polynomial::var_named(&uring, &inverse_var_name(&var('t', gamma)))?;
            z.mul(&sigs('t')?)?.scale(&half)?
        }
        ChartClass::IV => unreachable!(),
    };
    let mut psi: BTreeMap<String, Polynomial> = BTreeMap::new();
    psi.insert("varpi".to_string(), psi_w.clone());
    for i in 1..=n {
        for j in 1..=n {
            // x_ij = M(s_i) M(lam_j) - pi delta
            let mut ximg = m_s(i).mul(&m_lam(j))?;
            if i == j {
                ximg = ximg.sub(&pi_u)?;
            }
            psi.insert(xvar("x", i, j), ximg);
            // bx_ij = M(s_i) Mu_j - psi(varpi) delta
            let sgn = e(dual(n, eta)) * e(dual(n, j));
            let mu_j = m_t(dual(n, j)).scale(&BigRational::from_integer(sgn.into()))?;
            let mut bimg = m_s(i).mul(&mu_j)?;
            if i == j {
                bimg = bimg.sub(&psi_w)?;
            }
            psi.insert(xvar("bx", i, j), bimg);
        }
    }

    Ok(BlowupIso {
        class,
        uprime,
        v,
        phi,
        psi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Guard;

    #[test]
    fn dehomogenization_generator() {
        let chart = build_blowup_chart(5, 1, 3, 5, VariantConfig::default()).unwrap();
        let r = &chart.ring;
        let expect = Polynomial::parse(r, "bx_3_5 - 1").unwrap();
        assert!(chart
            .gens
            .iter()
            .any(|(g, tag)| tag == "dehomogenization" && *g == expect));
        // diagonal dehomogenization keeps the scale term
        let chart2 = build_blowup_chart(5, 1, 2, 2, VariantConfig::default()).unwrap();
        let expect2 = Polynomial::parse(&chart2.ring, "bx_2_2 + varpi - 1").unwrap();
        assert!(chart2
            .gens
            .iter()
            .any(|(g, tag)| tag == "dehomogenization" && *g == expect2));
    }

    #[test]
    fn enrichment_certificates_hold() {
        // construction fails loudly if any certified combination mismatches
        for (gamma, eta) in [(3usize, 5usize), (1, 5), (2, 2), (1, 3)] {
            let chart = build_blowup_chart(5, 1, gamma, eta, VariantConfig::default()).unwrap();
            let enriched = enriched_blowup_ideal(&chart).unwrap();
            assert!(enriched.gens().len() > chart.gens.len());
        }
    }

    #[test]
    fn rank_one_relations_reduce_to_zero() {
        // (bx + w I) = s u^t and (x + pi I) = s lam^t inside the chart ideal
        let chart = build_blowup_chart(4, 1, 2, 4, VariantConfig::default()).unwrap();
        let n = 4;
        let mut ideal = enriched_blowup_ideal(&chart).unwrap();
        let g = Guard::default();
        let r = &chart.ring;
        let w = Polynomial::var_named(r, "varpi").unwrap();
        let pi = Polynomial::pi(r);
        for i in 1..=n {
            for j in 1..=n {
                let mut q = Polynomial::var_named(r, &xvar("bx", i, j)).unwrap();
                if i == j {
                    q = q.add(&w).unwrap();
                }
                let su = chart
                    .substitution(&var('s', i))
                    .unwrap()
                    .mul(chart.substitution(&var('u', j)).unwrap())
                    .unwrap();
                assert!(ideal.reduce_solved(&q.sub(&su).unwrap(), &g).unwrap().is_zero());
                let mut p = Polynomial::var_named(r, &xvar("x", i, j)).unwrap();
                if i == j {
                    p = p.add(&pi).unwrap();
                }
                let sl = chart
                    .substitution(&var('s', i))
                    .unwrap()
                    .mul(chart.substitution(&alloc::format!("lam_{j}")).unwrap())
                    .unwrap();
                assert!(ideal.reduce_solved(&p.sub(&sl).unwrap(), &g).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn iso_maps_exist_for_classes_i_to_iii() {
        for (gamma, eta) in [(3usize, 5usize), (1, 5), (2, 2)] {
            let iso = chart_iso_map(5, 1, gamma, eta, VariantConfig::default()).unwrap();
            // every flat-closure variable has an image
            for v in iso.uprime.ring.vars() {
                if v != "pi" {
                    assert!(iso.phi.contains_key(v), "missing phi image of {v}");
                }
            }
            // every blow-up variable has an image
            for v in iso.v.ring.vars() {
                if v != "pi" {
                    assert!(iso.psi.contains_key(v), "missing psi image of {v}");
                }
            }
        }
        assert!(chart_iso_map(5, 1, 1, 3, VariantConfig::default()).is_err());
    }
}
