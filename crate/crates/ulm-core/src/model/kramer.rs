//! Worst-point charts of the Krämer-condition model and its simplified
//! (naive splitting) presentation.
//!
//! Chart variables are the four coordinate vectors `s, t, lambda, mu` plus
//! `pi`, normalized by `s_alpha = t_beta = 1`. The filtration matrix is the
//! rank-one expression `X = s*lambda^t - pi*I` in standard arrangement; the
//! dual-side matrix is its conjugate by the symmetric-form matrix.

use alloc::string::String;
use alloc::vec::Vec;

use num_rational::BigRational;

use crate::error::KernelError;
use crate::matrix::{adjoint, PolyMatrix};
use crate::model::local::{chain_relations, std_blocks};
use crate::model::structure::build_structure;
use crate::model::{
    classify_chart, is_mid, var, xvar, ChartId, ChartPresentation, Family, InstanceParams,
    TraceVariant, VariantConfig,
};
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, PolyRing};

/// The Krämer chart coordinate ring: `s, t, lambda, mu` vectors plus `pi`.
pub fn kramer_ring(n: usize) -> Result<PolyRing, KernelError> {
    let mut names: Vec<String> = Vec::with_capacity(4 * n + 1);
    for p in ['s', 't'] {
        for i in 1..=n {
            names.push(var(p, i));
        }
    }
    for i in 1..=n {
        names.push(alloc::format!("lam_{i}"));
    }
    for i in 1..=n {
        names.push(alloc::format!("mu_{i}"));
    }
    names.push(String::from("pi"));
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    PolyRing::new(&refs, MonomialOrder::GrevLex)
}

/// Column vector of the named coordinates `prefix_1 .. prefix_n`.
pub fn coord_vec(ring: &PolyRing, prefix: &str, n: usize) -> Result<PolyMatrix, KernelError> {
    let mut entries = Vec::with_capacity(n);
    for i in 1..=n {
        entries.push(Polynomial::var_named(ring, &alloc::format!("{prefix}_{i}"))?);
    }
    Ok(PolyMatrix::new(ring, n, 1, entries))
}

/// Shared data of one Krämer-type chart.
pub struct KramerData {
    pub ring: PolyRing,
    pub s: PolyMatrix,
    pub t: PolyMatrix,
    pub lam: PolyMatrix,
    pub mu: PolyMatrix,
    /// `s * lambda^t - pi * I` (standard arrangement).
    pub xstd: PolyMatrix,
    /// `Upsilon X^t Upsilon^{-1}` = `(Upsilon lambda)(Upsilon s)^t - pi * I`.
    pub ystd: PolyMatrix,
}

pub fn kramer_data(inst: &InstanceParams) -> Result<KramerData, KernelError> {
    let n = inst.n;
    let ring = kramer_ring(n)?;
    let s = coord_vec(&ring, "s", n)?;
    let t = coord_vec(&ring, "t", n)?;
    let lam = coord_vec(&ring, "lam", n)?;
    let mu = coord_vec(&ring, "mu", n)?;
    let pi = Polynomial::pi(&ring);
    let pi_id = PolyMatrix::scalar(&ring, n, &pi);
    let xstd = s.mul(&lam.transpose())?.sub(&pi_id)?;
    let st = build_structure(&ring, inst)?;
    let ystd = st
        .upsilon
        .mul(&xstd.transpose())?
        .mul(&st.upsilon.transpose())?;
    Ok(KramerData {
        ring,
        s,
        t,
        lam,
        mu,
        xstd,
        ystd,
    })
}

fn dot(a: &PolyMatrix, b: &PolyMatrix) -> Result<Polynomial, KernelError> {
    let mut acc = Polynomial::zero(a.ring());
    for i in 0..a.rows() {
        acc = acc.add(&a.at(i, 0).mul(b.at(i, 0))?)?;
    }
    Ok(acc)
}

/// The twisted vector `(s_1, pi*s_2, s_3)`: `pi` on the middle block.
fn twist_mid(v: &PolyMatrix, n: usize, k: usize) -> Result<PolyMatrix, KernelError> {
    let pi = Polynomial::pi(v.ring());
    let mut out = v.clone();
    for i in 1..=n {
        if is_mid(n, k, i) {
            *out.at_mut(i - 1, 0) = v.at(i - 1, 0).mul(&pi)?;
        }
    }
    Ok(out)
}

/// The twisted vector `(pi*t_1, t_2, pi*t_3)`: `pi` on the outer blocks.
fn twist_outer(v: &PolyMatrix, n: usize, k: usize) -> Result<PolyMatrix, KernelError> {
    let pi = Polynomial::pi(v.ring());
    let mut out = v.clone();
    for i in 1..=n {
        if !is_mid(n, k, i) {
            *out.at_mut(i - 1, 0) = v.at(i - 1, 0).mul(&pi)?;
        }
    }
    Ok(out)
}

fn push_col(out: &mut Vec<(Polynomial, String)>, m: &PolyMatrix, tag: &str) {
    for e in m.entries() {
        if !e.is_zero() {
            out.push((e.clone(), String::from(tag)));
        }
    }
}

/// Generators shared by the Krämer and simplified charts: normalizations,
/// the dual-side matrix identity, and the transition-span conditions.
fn common_gens(
    data: &KramerData,
    inst: &InstanceParams,
    alpha: usize,
    beta: usize,
) -> Result<Vec<(Polynomial, String)>, KernelError> {
    let (n, k) = (inst.n, inst.k);
    let ring = &data.ring;
    let one = Polynomial::one(ring);
    let mut gens: Vec<(Polynomial, String)> = Vec::new();
    gens.push((
        Polynomial::var_named(ring, &var('s', alpha))?.sub(&one)?,
        String::from("normalization-s"),
    ));
    gens.push((
        Polynomial::var_named(ring, &var('t', beta))?.sub(&one)?,
        String::from("normalization-t"),
    ));
    // dual side: Upsilon-conjugate of X equals t*mu^t - pi*I
    let pi_id = PolyMatrix::scalar(ring, n, &Polynomial::pi(ring));
    let tmu = data.t.mul(&data.mu.transpose())?.sub(&pi_id)?;
    let yrel = data.ystd.sub(&tmu)?;
    push_col(&mut gens, &yrel, "dual-side");
    // span conditions, scalars fixed by the normalized coordinates
    let ls = twist_mid(&data.s, n, k)?;
    let coef_b = ls.at(beta - 1, 0).clone();
    let span_s = ls.sub(&data.t.scale(&coef_b)?)?;
    push_col(&mut gens, &span_s, "span-s");
    let lt = twist_outer(&data.t, n, k)?;
    let coef_a = lt.at(alpha - 1, 0).clone();
    let span_t = lt.sub(&data.s.scale(&coef_a)?)?;
    push_col(&mut gens, &span_t, "span-t");
    Ok(gens)
}

/// Builds the Krämer chart `(alpha, beta)`: common generators, the rank-one
/// trace normalizations, and the lattice-chain relations on the substituted
/// matrix.
pub fn build_kramer_chart(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
    variant: VariantConfig,
) -> Result<ChartPresentation, KernelError> {
    let inst = InstanceParams::new(n, k)?;
    inst.require_charts()?;
    let class = classify_chart(n, k, alpha, beta)?;
    let data = kramer_data(&inst)?;
    let ring = data.ring.clone();
    let two_pi = Polynomial::pi(&ring).scale(&BigRational::from_integer(2.into()))?;

    let mut gens = common_gens(&data, &inst, alpha, beta)?;
    gens.push((
        dot(&data.lam, &data.s)?.sub(&two_pi)?,
        String::from("kramer-trace-s"),
    ));
    gens.push((
        dot(&data.mu, &data.t)?.sub(&two_pi)?,
        String::from("kramer-trace-t"),
    ));
    gens.extend(chain_relations(&data.xstd, &inst, variant.sign)?);

    Ok(ChartPresentation {
        id: ChartId {
            family: Family::Kramer,
            class: Some(class),
            a: alpha,
            b: beta,
        },
        instance: inst,
        ring: ring.clone(),
        gens,
        blocks: kramer_blocks(n, k),
        substitutions: kramer_substitutions(&data, &inst)?,
    })
}

/// Builds the simplified chart `(alpha, beta)`: block relations of the
/// simplified presentation instead of the full chain relations. The trace
/// variant selects the constant in the block-trace normalizations.
pub fn build_simplified_chart(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
    variant: VariantConfig,
) -> Result<ChartPresentation, KernelError> {
    let inst = InstanceParams::new(n, k)?;
    inst.require_charts()?;
    let class = classify_chart(n, k, alpha, beta)?;
    let data = kramer_data(&inst)?;
    let ring = data.ring.clone();
    let pi = Polynomial::pi(&ring);
    let half = BigRational::new(1.into(), 2.into());

    let mut gens = common_gens(&data, &inst, alpha, beta)?;
    let blocks = std_blocks(&data.xstd, n, k);
    // A = -1/2 F^ad E - pi, B = -1/2 F^ad F, C = 1/2 E^ad E, D = 1/2 E^ad F - pi
    let fad = adjoint(&blocks.f);
    let ead = adjoint(&blocks.e);
    let pik = PolyMatrix::scalar(&ring, k, &pi);
    let rel_a = blocks
        .a
        .add(&fad.mul(&blocks.e)?.scale(&Polynomial::constant(&ring, half.clone()))?)?
        .add(&pik)?;
    push_col(&mut gens, &rel_a, "simplified-a");
    let rel_b = blocks
        .b
        .add(&fad.mul(&blocks.f)?.scale(&Polynomial::constant(&ring, half.clone()))?)?;
    push_col(&mut gens, &rel_b, "simplified-b");
    let rel_c = blocks
        .c
        .sub(&ead.mul(&blocks.e)?.scale(&Polynomial::constant(&ring, half.clone()))?)?;
    push_col(&mut gens, &rel_c, "simplified-c");
    let rel_d = blocks
        .d
        .sub(&ead.mul(&blocks.f)?.scale(&Polynomial::constant(&ring, half))?)?
        .add(&pik)?;
    push_col(&mut gens, &rel_d, "simplified-d");
    // M = pi E^ad, L = -pi F^ad, X4 = X4^ad
    let rel_m = blocks.m.sub(&ead.scale(&pi)?)?;
    push_col(&mut gens, &rel_m, "simplified-m");
    let rel_l = blocks.l.add(&fad.scale(&pi)?)?;
    push_col(&mut gens, &rel_l, "simplified-l");
    let rel_x4 = blocks.x4.sub(&adjoint(&blocks.x4))?;
    push_col(&mut gens, &rel_x4, "simplified-x4");
    // block-trace normalization, constant per the trace variant
    let c = match variant.trace {
        TraceVariant::TwoPi => pi.scale(&BigRational::from_integer(2.into()))?,
        TraceVariant::Pi => pi.clone(),
    };
    let s2 = data.s.block(k, n - k, 0, 1);
    let lam2 = data.lam.block(k, n - k, 0, 1);
    let t2 = data.t.block(k, n - k, 0, 1);
    let mu2 = data.mu.block(k, n - k, 0, 1);
    gens.push((dot(&lam2, &s2)?.sub(&c)?, String::from("block-trace-s")));
    gens.push((dot(&mu2, &t2)?.sub(&c)?, String::from("block-trace-t")));

    Ok(ChartPresentation {
        id: ChartId {
            family: Family::Simplified,
            class: Some(class),
            a: alpha,
            b: beta,
        },
        instance: inst,
        ring: ring.clone(),
        gens,
        blocks: kramer_blocks(n, k),
        substitutions: kramer_substitutions(&data, &inst)?,
    })
}

fn kramer_blocks(n: usize, k: usize) -> Vec<(String, Vec<String>)> {
    let mut blocks = Vec::new();
    for p in ['s', 't'] {
        let low: Vec<String> = (1..=k).map(|i| var(p, i)).collect();
        let mid: Vec<String> = (k + 1..=n - k).map(|i| var(p, i)).collect();
        let high: Vec<String> = (n - k + 1..=n).map(|i| var(p, i)).collect();
        blocks.push((alloc::format!("{p}1"), low));
        blocks.push((alloc::format!("{p}2"), mid));
        blocks.push((alloc::format!("{p}3"), high));
    }
    for p in ["lam", "mu"] {
        for (suffix, range) in [
            ("1", 1..=k),
            ("2", k + 1..=n - k),
            ("3", n - k + 1..=n),
        ] {
            let names: Vec<String> = range.map(|i| alloc::format!("{p}_{i}")).collect();
            blocks.push((alloc::format!("{p}{suffix}"), names));
        }
    }
    blocks
}

fn kramer_substitutions(
    data: &KramerData,
    inst: &InstanceParams,
) -> Result<Vec<(String, Polynomial)>, KernelError> {
    let (n, k) = (inst.n, inst.k);
    let mut subs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            subs.push((xvar("X", i + 1, j + 1), data.xstd.at(i, j).clone()));
        }
    }
    for i in 0..n {
        for j in 0..n {
            subs.push((xvar("Y", i + 1, j + 1), data.ystd.at(i, j).clone()));
        }
    }
    let blocks = std_blocks(&data.xstd, n, k);
    for (name, m) in [
        ("A", &blocks.a),
        ("B", &blocks.b),
        ("C", &blocks.c),
        ("D", &blocks.d),
        ("E", &blocks.e),
        ("F", &blocks.f),
        ("L", &blocks.l),
        ("M", &blocks.m),
        ("X4", &blocks.x4),
    ] {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                subs.push((xvar(name, r + 1, c + 1), m.at(r, c).clone()));
            }
        }
    }
    Ok(subs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Guard;
    use crate::matrix::trace;

    fn reduce0(chart: &ChartPresentation, text: &str) -> bool {
        let mut ideal = chart.ideal();
        let f = Polynomial::parse(&chart.ring, text).unwrap();
        ideal.reduce_solved(&f, &Guard::default()).unwrap().is_zero()
    }

    #[test]
    fn class_i_implied_relations() {
        // (5,1), alpha = 3, beta = 1
        let chart = build_kramer_chart(5, 1, 3, 1, VariantConfig::default()).unwrap();
        assert!(reduce0(&chart, "s_1 - s_1")); // sanity
        assert!(reduce0(&chart, "t_3*s_1 - pi"));
        assert!(reduce0(&chart, "s_5 - s_1*t_5"));
        assert!(reduce0(&chart, "t_2 - t_3*s_2"));
        // lambda_1 = -mu_{alpha^dual} * t_{1^dual}
        assert!(reduce0(&chart, "lam_1 + mu_3*t_5"));
        // mu_2 = mu_3 * s_4
        assert!(reduce0(&chart, "mu_2 - mu_3*s_4"));
    }

    #[test]
    fn class_ii_and_iv_unit_relations() {
        let c2 = build_kramer_chart(5, 1, 1, 1, VariantConfig::default()).unwrap();
        assert!(reduce0(&c2, "t_1*s_1 - 1"));
        let c4 = build_kramer_chart(5, 1, 1, 3, VariantConfig::default()).unwrap();
        assert!(reduce0(&c4, "pi*t_1*s_3 - 1"));
    }

    #[test]
    fn eigen_relations_implied() {
        // X s = pi s and Y t = pi t follow from the generators
        let chart = build_kramer_chart(4, 1, 2, 1, VariantConfig::default()).unwrap();
        let inst = chart.instance;
        let data = kramer_data(&inst).unwrap();
        let pi = Polynomial::pi(&data.ring);
        let xs = data.xstd.mul(&data.s).unwrap().sub(&data.s.scale(&pi).unwrap()).unwrap();
        let yt = data.ystd.mul(&data.t).unwrap().sub(&data.t.scale(&pi).unwrap()).unwrap();
        let mut ideal = chart.ideal();
        let g = Guard::default();
        for e in xs.entries().iter().chain(yt.entries()) {
            assert!(ideal.reduce_solved(e, &g).unwrap().is_zero());
        }
    }

    #[test]
    fn kottwitz_trace_chain() {
        // tr(X) + (n-2) pi reduces to zero given lambda^t s = 2 pi
        let chart = build_kramer_chart(5, 1, 3, 1, VariantConfig::default()).unwrap();
        let data = kramer_data(&chart.instance).unwrap();
        let tr = trace(&data.xstd).unwrap();
        let shift = Polynomial::parse(&data.ring, "3*pi").unwrap();
        let f = tr.add(&shift).unwrap();
        let mut ideal = chart.ideal();
        assert!(ideal.reduce_solved(&f, &Guard::default()).unwrap().is_zero());
    }

    #[test]
    fn kramer_equals_simplified_4_1() {
        let kram = build_kramer_chart(4, 1, 2, 1, VariantConfig::default()).unwrap();
        let simp = build_simplified_chart(4, 1, 2, 1, VariantConfig::default()).unwrap();
        let mut a = kram.ideal();
        let mut b = simp.ideal();
        let verdict = a.ideal_equal(&mut b, &Guard::default()).unwrap();
        assert!(verdict.equal, "witness: {:?}", verdict.witness);
    }

    #[test]
    fn simplified_diverges_under_pi_trace_variant() {
        let kram = build_kramer_chart(4, 1, 2, 1, VariantConfig::default()).unwrap();
        let bad = VariantConfig {
            trace: TraceVariant::Pi,
            ..VariantConfig::default()
        };
        let simp = build_simplified_chart(4, 1, 2, 1, bad).unwrap();
        let mut a = kram.ideal();
        let mut b = simp.ideal();
        let verdict = a.ideal_equal(&mut b, &Guard::default()).unwrap();
        assert!(!verdict.equal);
    }
}
