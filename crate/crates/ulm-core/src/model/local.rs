//! The worst-point chart of the local model: the full relation ideal on the
//! n x n filtration matrix in standard arrangement.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::KernelError;
use crate::matrix::{adjoint, trace, PolyMatrix};
use crate::model::structure::{build_structure, StructureMatrices};
use crate::model::{
    reorder_perm, xvar, ChartId, ChartPresentation, Family, InstanceParams, SignVariant,
    VariantConfig,
};
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, PolyRing};

/// The nine standard-arrangement blocks of an n x n matrix, with row/column
/// block sizes `k, n-2k, k`.
#[derive(Debug, Clone)]
pub struct StdBlocks {
    pub d: PolyMatrix,
    pub m: PolyMatrix,
    pub c: PolyMatrix,
    pub f: PolyMatrix,
    pub x4: PolyMatrix,
    pub e: PolyMatrix,
    pub b: PolyMatrix,
    pub l: PolyMatrix,
    pub a: PolyMatrix,
}

/// Splits a standard-arrangement matrix into its nine blocks.
pub fn std_blocks(mat: &PolyMatrix, n: usize, k: usize) -> StdBlocks {
    let (r0, r1, r2) = (0, k, n - k);
    StdBlocks {
        d: mat.block(r0, r1, 0, k),
        m: mat.block(r0, r1, k, n - k),
        c: mat.block(r0, r1, n - k, n),
        f: mat.block(r1, r2, 0, k),
        x4: mat.block(r1, r2, k, n - k),
        e: mat.block(r1, r2, n - k, n),
        b: mat.block(r2, n, 0, k),
        l: mat.block(r2, n, k, n - k),
        a: mat.block(r2, n, n - k, n),
    }
}

fn push_entries(out: &mut Vec<(Polynomial, String)>, m: &PolyMatrix, tag: &str) {
    for e in m.entries() {
        if !e.is_zero() {
            out.push((e.clone(), String::from(tag)));
        }
    }
}

/// The lattice-chain relations on a standard-arrangement matrix: the square
/// relation, the isotropy relations on the reordered blocks, and the
/// co-isotropy relations. Used by the local chart (on free variables) and by
/// the Krämer chart (on the substituted rank-one matrix).
pub fn chain_relations(
    xstd: &PolyMatrix,
    inst: &InstanceParams,
    sign: SignVariant,
) -> Result<Vec<(Polynomial, String)>, KernelError> {
    let ring = xstd.ring().clone();
    let (n, k) = (inst.n, inst.k);
    let s: StructureMatrices = build_structure(&ring, inst)?;
    let pi = Polynomial::pi(&ring);
    let pisq = pi.pow(2)?;
    let mut gens: Vec<(Polynomial, String)> = Vec::new();

    // square relation
    let sq = xstd
        .mul(xstd)?
        .sub(&PolyMatrix::scalar(&ring, n, &pisq))?;
    push_entries(&mut gens, &sq, "square");

    // reordered blocks
    let x = xstd.permuted(&reorder_perm(n, k));
    let x1 = x.block(0, 2 * k, 0, 2 * k);
    let x2 = x.block(0, 2 * k, 2 * k, n);
    let x3 = x.block(2 * k, n, 0, 2 * k);
    let x4 = x.block(2 * k, n, 2 * k, n);
    let hm = PolyMatrix::antidiag(&ring, n - 2 * k);
    let j = &s.j;

    // isotropy
    let jx1 = j.mul(&x1)?;
    let first = match sign {
        SignVariant::Sec33 => jx1.neg(),
        SignVariant::Prop31 => jx1,
    };
    let iso_a = first.add(&x3.transpose().mul(&hm)?.mul(&x3)?)?.add(&x1.transpose().mul(j)?)?;
    push_entries(&mut gens, &iso_a, "isotropy-a");
    let iso_b = j.mul(&x2)?.neg().add(&x3.transpose().mul(&hm)?.mul(&x4)?)?;
    push_entries(&mut gens, &iso_b, "isotropy-b");
    let iso_c = x2.transpose().mul(j)?.add(&x4.transpose().mul(&hm)?.mul(&x3)?)?;
    push_entries(&mut gens, &iso_c, "isotropy-c");
    let iso_d = x4
        .transpose()
        .mul(&hm)?
        .mul(&x4)?
        .sub(&hm.scale(&pisq)?)?;
    push_entries(&mut gens, &iso_d, "isotropy-d");

    // co-isotropy
    let co_a = x1.mul(j)?.mul(&x1.transpose())?.sub(&j.scale(&pisq)?)?;
    push_entries(&mut gens, &co_a, "coisotropy-a");
    let co_b = x1.mul(j)?.mul(&x3.transpose())?.sub(&x2.mul(&hm)?)?;
    push_entries(&mut gens, &co_b, "coisotropy-b");
    let co_c = x3.mul(j)?.mul(&x1.transpose())?.add(&hm.mul(&x2.transpose())?)?;
    push_entries(&mut gens, &co_c, "coisotropy-c");
    let co_d = x3
        .mul(j)?
        .mul(&x3.transpose())?
        .sub(&x4.mul(&hm)?)?
        .add(&hm.mul(&x4.transpose())?)?;
    push_entries(&mut gens, &co_d, "coisotropy-d");

    Ok(gens)
}

/// The strengthened-spin relations on a standard-arrangement matrix: all
/// 2x2 minors of `X + pi*I`, the full determinant of `X - pi*I`, and the
/// adjoint/trace linear relations on the blocks.
pub fn spin_relations(
    xstd: &PolyMatrix,
    inst: &InstanceParams,
) -> Result<Vec<(Polynomial, String)>, KernelError> {
    let ring = xstd.ring().clone();
    let (n, k) = (inst.n, inst.k);
    let pi = Polynomial::pi(&ring);
    let mut gens: Vec<(Polynomial, String)> = Vec::new();

    let xp = xstd.add(&PolyMatrix::scalar(&ring, n, &pi))?;
    for m in xp.minors(2)? {
        if !m.is_zero() {
            gens.push((m, String::from("wedge-2")));
        }
    }
    let xm = xstd.sub(&PolyMatrix::scalar(&ring, n, &pi))?;
    let det = xm.det()?;
    if !det.is_zero() {
        gens.push((det, String::from("wedge-n")));
    }

    let blocks = std_blocks(xstd, n, k);
    let two_pi = pi.scale(&num_rational::BigRational::from_integer(2.into()))?;
    push_entries(
        &mut gens,
        &blocks.b.sub(&adjoint(&blocks.b))?,
        "adjoint-b",
    );
    push_entries(
        &mut gens,
        &blocks.c.sub(&adjoint(&blocks.c))?,
        "adjoint-c",
    );
    let d_rel = blocks
        .d
        .add(&PolyMatrix::scalar(&ring, k, &two_pi))?
        .add(&adjoint(&blocks.a))?;
    push_entries(&mut gens, &d_rel, "adjoint-d");
    let m_rel = blocks.m.sub(&adjoint(&blocks.e).scale(&pi)?)?;
    push_entries(&mut gens, &m_rel, "adjoint-m");
    let l_rel = blocks.l.add(&adjoint(&blocks.f).scale(&pi)?)?;
    push_entries(&mut gens, &l_rel, "adjoint-l");
    push_entries(
        &mut gens,
        &blocks.x4.sub(&adjoint(&blocks.x4))?,
        "adjoint-x4",
    );
    // trace normalization: tr(X4) = -(n - 2k - 2) * pi
    let coeff = Polynomial::from_int(&ring, n as i64 - 2 * k as i64 - 2);
    let tr = trace(&blocks.x4)?.add(&coeff.mul(&pi)?)?;
    if !tr.is_zero() {
        gens.push((tr, String::from("trace")));
    }
    Ok(gens)
}

/// Ring of the ambient worst-point chart: the n^2 standard-arrangement matrix
/// entries plus `pi`.
pub fn local_ring(n: usize) -> Result<PolyRing, KernelError> {
    let mut names: Vec<String> = Vec::with_capacity(n * n + 1);
    for i in 1..=n {
        for j in 1..=n {
            names.push(xvar("x", i, j));
        }
    }
    names.push(String::from("pi"));
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    PolyRing::new(&refs, MonomialOrder::GrevLex)
}

/// Matrix of the chart variables in standard arrangement.
pub fn local_matrix(ring: &PolyRing, n: usize) -> Result<PolyMatrix, KernelError> {
    let mut entries = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            entries.push(Polynomial::var_named(ring, &xvar("x", i, j))?);
        }
    }
    Ok(PolyMatrix::new(ring, n, n, entries))
}

/// Builds the worst-point chart of the local model: chain relations plus the
/// strengthened-spin relations.
pub fn build_local_chart(
    n: usize,
    k: usize,
    variant: VariantConfig,
) -> Result<ChartPresentation, KernelError> {
    let inst = InstanceParams::new(n, k)?;
    inst.require_charts()?;
    let ring = local_ring(n)?;
    let xstd = local_matrix(&ring, n)?;
    let mut gens = chain_relations(&xstd, &inst, variant.sign)?;
    gens.extend(spin_relations(&xstd, &inst)?);

    let mut xnames = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            xnames.push(xvar("x", i, j));
        }
    }
    let blocks = alloc::vec![(String::from("X"), xnames)];
    // expose the reordered blocks through the substitution table
    let mut substitutions = Vec::new();
    let sb = std_blocks(&xstd, n, k);
    for (name, m) in [
        ("A", &sb.a),
        ("B", &sb.b),
        ("C", &sb.c),
        ("D", &sb.d),
        ("E", &sb.e),
        ("F", &sb.f),
        ("L", &sb.l),
        ("M", &sb.m),
        ("X4", &sb.x4),
    ] {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                substitutions.push((xvar(name, r + 1, c + 1), m.at(r, c).clone()));
            }
        }
    }
    Ok(ChartPresentation {
        id: ChartId {
            family: Family::Local,
            class: None,
            a: 0,
            b: 0,
        },
        instance: inst,
        ring,
        gens,
        blocks,
        substitutions,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::classify_case;

    #[test]
    fn self_dual_involves_only_x4() {
        // k = 0: all small blocks are 0x0, every relation is on X4 = X
        let chart = build_local_chart(4, 0, VariantConfig::default()).unwrap();
        assert!(chart.gens.iter().all(|(_, tag)| matches!(
            tag.as_str(),
            "square" | "isotropy-d" | "coisotropy-d" | "wedge-2" | "wedge-n" | "adjoint-x4" | "trace"
        )));
    }

    #[test]
    fn pi_modular_rejected() {
        assert!(matches!(
            build_local_chart(4, 2, VariantConfig::default()),
            Err(crate::error::KernelError::PiModular { .. })
        ));
        assert_eq!(classify_case(4, 2).unwrap(), crate::model::CaseKind::PiModular);
    }

    #[test]
    fn almost_pi_modular_pins_x4() {
        // (5, 2): X4 is 1x1 and the trace relation forces x4 = pi
        let chart = build_local_chart(5, 2, VariantConfig::default()).unwrap();
        let ring = &chart.ring;
        let x_mid = Polynomial::parse(ring, "x_3_3 - pi").unwrap();
        assert!(chart
            .gens
            .iter()
            .any(|(g, tag)| tag == "trace" && (*g == x_mid || *g == x_mid.neg())));
    }

    #[test]
    fn generator_tally_5_1() {
        let chart = build_local_chart(5, 1, VariantConfig::default()).unwrap();
        let inst = chart.instance;
        let ring = chart.ring.clone();
        let xstd = local_matrix(&ring, 5).unwrap();
        let mut expect = chain_relations(&xstd, &inst, SignVariant::Sec33).unwrap();
        expect.extend(spin_relations(&xstd, &inst).unwrap());
        assert_eq!(chart.gens.len(), expect.len());
        // nonzero-entry tally by hand: 25 square entries; isotropy 4+6+6+9;
        // co-isotropy is antisymmetric in blocks a and d (2+6+6+6); wedge
        // 100 minors + 1 determinant; adjoint relations 0+0+1+3+3+6 plus the
        // trace
        assert_eq!(chart.gens.len(), 25 + 25 + 20 + 101 + 14);
    }
}
