//! Structural checks combining the model builders with the ideal engine,
//! producing machine-readable pass/fail reports with witnesses.
//!
//! Every pass verdict is backed by normal forms that re-reduce to zero;
//! every fail verdict carries the first offending polynomial and its nonzero
//! normal form. Reports with identical inputs and configuration are
//! identical (timing is filled in by the caller and excluded from the
//! determinism contract).

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::KernelError;
use crate::ideal::{Guard, Ideal};
use crate::model::blowup::{build_blowup_chart, chart_iso_map, enriched_blowup_ideal};
use crate::model::charts::{
    build_class_presentation, build_components, build_spl_chart, kramer_to_class_map,
    spl_chart_eliminated,
};
use crate::model::kramer::{build_kramer_chart, build_simplified_chart, kramer_data};
use crate::model::local::spin_relations;
use crate::model::pairing::pairing_check_data;
use crate::model::{
    classify_blowup_chart, classify_chart, dual, is_mid, var, CaseKind,
    ChartClass, Family, InstanceParams, VariantConfig,
};
use crate::oracle::{count_affine, OracleGuard};
use crate::poly::Polynomial;

/// Verdict of one check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Guard,
}

impl CheckStatus {
    pub fn as_str(&self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Guard => "guard",
        }
    }
}

/// Machine-readable outcome of one theorem check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub check_id: String,
    pub n: usize,
    pub k: usize,
    pub case: CaseKind,
    pub chart: Option<String>,
    pub status: CheckStatus,
    /// On failure: offending polynomial and its nonzero normal form.
    pub witness: Option<(String, String)>,
    pub duration_ms: u64,
    pub config: VariantConfig,
}

impl CheckReport {
    fn new(check_id: String, inst: &InstanceParams, chart: Option<String>, config: VariantConfig) -> Self {
        CheckReport {
            check_id,
            n: inst.n,
            k: inst.k,
            case: inst.case,
            chart,
            status: CheckStatus::Pass,
            witness: None,
            duration_ms: 0,
            config,
        }
    }

    fn fail(mut self, gen: &Polynomial, nf: &Polynomial) -> Self {
        self.status = CheckStatus::Fail;
        self.witness = Some((gen.to_text(), nf.to_text()));
        self
    }

    fn fail_note(mut self, what: &str, detail: String) -> Self {
        self.status = CheckStatus::Fail;
        self.witness = Some((what.to_string(), detail));
        self
    }

    fn guard(mut self, e: &KernelError) -> Self {
        self.status = CheckStatus::Guard;
        self.witness = Some(("guard".to_string(), alloc::format!("{e}")));
        self
    }
}

/// Wraps a closure so that guard trips become a report status instead of an
/// error, while genuine input errors still propagate.
fn guarded(
    report: CheckReport,
    run: impl FnOnce(CheckReport) -> Result<CheckReport, KernelError>,
) -> Result<CheckReport, KernelError> {
    let probe = report.clone();
    match run(report) {
        Ok(r) => Ok(r),
        Err(e @ KernelError::GuardTripped(_)) => Ok(probe.guard(&e)),
        Err(e) => Err(e),
    }
}

/// Reduces a list of tagged polynomials, failing on the first nonzero
/// normal form.
fn all_reduce_zero(
    report: CheckReport,
    ideal: &mut Ideal,
    polys: &[Polynomial],
    guard: &Guard,
) -> Result<CheckReport, KernelError> {
    for p in polys {
        let nf = ideal.reduce_solved(p, guard)?;
        if !nf.is_zero() {
            return Ok(report.fail(p, &nf));
        }
    }
    Ok(report)
}

/// The strengthened-spin generators (wedge and adjoint/trace relations),
/// expressed through the chart substitutions, must reduce to zero modulo the
/// Krämer chart ideal.
pub fn check_kramer_implies_spin(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
    config: VariantConfig,
    guard: &Guard,
) -> Result<CheckReport, KernelError> {
    let chart = build_kramer_chart(n, k, alpha, beta, config)?;
    let report = CheckReport::new(
        alloc::format!(
            "kramer-spin/n{n}k{k}/{}:{alpha},{beta}",
            chart.id.class.unwrap().as_str()
        ),
        &chart.instance,
        Some(chart.id.label(&chart.instance)),
        config,
    );
    guarded(report, |report| {
        let data = kramer_data(&chart.instance)?;
        let spin = spin_relations(&data.xstd, &chart.instance)?;
        let mut ideal = chart.ideal();
        let polys: Vec<Polynomial> = spin.into_iter().map(|(p, _)| p).collect();
        all_reduce_zero(report, &mut ideal, &polys, guard)
    })
}

/// The Krämer chart ideal, pushed through the class substitutions, must
/// equal the reduced class presentation; the simplified chart must present
/// the same ideal as the Krämer chart.
pub fn check_presentation(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
    config: VariantConfig,
    guard: &Guard,
) -> Result<CheckReport, KernelError> {
    let class = classify_chart(n, k, alpha, beta)?;
    if class == ChartClass::IV {
        return Err(KernelError::Invalid(
            "class-(iv) charts have no reduced presentation".to_string(),
        ));
    }
    let pres = build_class_presentation(n, k, alpha, beta)?;
    let report = CheckReport::new(
        alloc::format!("presentation/n{n}k{k}/{}:{alpha},{beta}", class.as_str()),
        &pres.instance,
        Some(pres.id.label(&pres.instance)),
        config,
    );
    guarded(report, |report| {
        // the simplified chart presents the same ideal as the Krämer chart
        let kram = build_kramer_chart(n, k, alpha, beta, config)?;
        let simp = build_simplified_chart(n, k, alpha, beta, config)?;
        let mut ki = kram.ideal();
        let mut si = simp.ideal();
        let verdict = ki.ideal_equal(&mut si, guard)?;
        if let Some((g, nf)) = verdict.witness {
            return Ok(report.fail(&g, &nf));
        }
        // push the Krämer generators through the class substitutions
        let map = kramer_to_class_map(&pres)?;
        let image: Vec<Polynomial> = kram
            .gen_polys()
            .iter()
            .map(|g| g.substitute(&pres.ring, &map))
            .collect::<Result<Vec<_>, _>>()?;
        let mut pres_ideal = pres.ideal();
        let report = all_reduce_zero(report, &mut pres_ideal, &image, guard)?;
        if report.status != CheckStatus::Pass {
            return Ok(report);
        }
        // converse containment: the presentation lies in the image ideal
        let mut image_ideal = Ideal::new(&pres.ring, image);
        all_reduce_zero(report, &mut image_ideal, &pres.gen_polys(), guard)
    })
}

/// The special fiber of the chart equals the intersection of its named
/// component ideals, and each component passes the dominant-parametrization
/// certificate (eliminating its pinned variables leaves exactly `pi`).
pub fn check_fiber_decomposition(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
    family: Family,
    guard: &Guard,
) -> Result<CheckReport, KernelError> {
    let chart = match family {
        Family::Class => build_class_presentation(n, k, alpha, beta)?,
        Family::Spl => build_spl_chart(n, k, alpha, beta)?,
        _ => {
            return Err(KernelError::Invalid(
                "fiber decomposition works on class or flat-closure charts".to_string(),
            ))
        }
    };
    let class = chart.id.class.unwrap();
    let report = CheckReport::new(
        alloc::format!(
            "fiber/{}/n{n}k{k}/{}:{alpha},{beta}",
            family.as_str(),
            class.as_str()
        ),
        &chart.instance,
        Some(chart.id.label(&chart.instance)),
        VariantConfig::default(),
    );
    guarded(report, |report| {
        let spec = build_components(&chart)?;
        let ring = &chart.ring;
        // special fiber ideal
        let mut sf_gens = chart.gen_polys();
        sf_gens.push(Polynomial::pi(ring));
        let mut special = Ideal::new(ring, sf_gens);
        // chained intersection of the components
        let mut inter: Option<Ideal> = None;
        for comp in &spec.components {
            let ci = comp.ideal(ring);
            inter = Some(match inter {
                None => ci,
                Some(acc) => acc.intersect(&ci, guard)?,
            });
        }
        let mut inter = inter.ok_or_else(|| {
            KernelError::Invalid("no components for this chart and case".to_string())
        })?;
        let verdict = special.ideal_equal(&mut inter, guard)?;
        if let Some((g, nf)) = verdict.witness {
            return Ok(report.fail(&g, &nf));
        }
        // affine-space certificates
        for comp in &spec.components {
            let pinned: Vec<&str> = ring
                .vars()
                .iter()
                .map(|s| s.as_str())
                .filter(|v| *v != "pi" && !comp.free.iter().any(|f| f == v))
                .collect();
            let elim = comp.ideal(ring).eliminate(&pinned, guard)?;
            let free_ring = elim.ring().clone();
            let mut elim = elim;
            let mut pi_only = Ideal::new(&free_ring, alloc::vec![Polynomial::pi(&free_ring)]);
            let verdict = elim.ideal_equal(&mut pi_only, guard)?;
            if let Some((g, nf)) = verdict.witness {
                return Ok(report.fail_note(
                    &alloc::format!("component {} parametrization", comp.name),
                    alloc::format!("{} -> {}", g.to_text(), nf.to_text()),
                ));
            }
        }
        Ok(report)
    })
}

/// Non-flatness of the ambient chart and flatness of its closure: `pi` lies
/// in the chart ideal plus the distinguished scale, does not lie in the
/// flat-closure ideal, and the flat closure is saturated at `pi`.
pub fn check_flatness_witness(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
    guard: &Guard,
) -> Result<CheckReport, KernelError> {
    let class = classify_chart(n, k, alpha, beta)?;
    if !matches!(class, ChartClass::I | ChartClass::II) {
        return Err(KernelError::Invalid(
            "flatness witnesses exist for classes (i) and (ii)".to_string(),
        ));
    }
    let chart = build_class_presentation(n, k, alpha, beta)?;
    let report = CheckReport::new(
        alloc::format!("flatness/n{n}k{k}/{}:{alpha},{beta}", class.as_str()),
        &chart.instance,
        Some(chart.id.label(&chart.instance)),
        VariantConfig::default(),
    );
    guarded(report, |report| {
        let ring = &chart.ring;
        let pi = Polynomial::pi(ring);
        let scale = match class {
            ChartClass::I => Polynomial::var_named(ring, &alloc::format!("mu_{}", dual(n, alpha)))?,
            ChartClass::II => {
                Polynomial::var_named(ring, &alloc::format!("lam_{}", dual(n, alpha)))?
            }
            _ => unreachable!(),
        };
        let mut with_scale = chart.ideal().plus(&[scale]);
        if !with_scale.contains(&pi, guard)? {
            let nf = with_scale.reduce_solved(&pi, guard)?;
            return Ok(report.fail(&pi, &nf));
        }
        let uprime = build_spl_chart(n, k, alpha, beta)?;
        let mut ui = uprime.ideal();
        if ui.contains(&pi, guard)? {
            return Ok(report.fail_note("pi in flat closure", "expected nonzero".to_string()));
        }
        // no component supported on the special fiber: saturation at pi fixes the ideal
        let mut sat = ui.saturate(&pi, guard)?;
        let verdict = sat.ideal_equal(&mut ui, guard)?;
        if let Some((g, nf)) = verdict.witness {
            return Ok(report.fail(&g, &nf));
        }
        Ok(report)
    })
}

/// The class-(i) flat closure in its normal form: eliminating the dependent
/// coordinate matches the reduced model, and the strata counts over small
/// primes are exact powers matching the expected codimensions.
pub fn check_semistable_form(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
    qs: &[u64],
    guard: &Guard,
    oguard: &OracleGuard,
) -> Result<CheckReport, KernelError> {
    let class = classify_chart(n, k, alpha, beta)?;
    if class != ChartClass::I {
        return Err(KernelError::Invalid(
            "the semi-stable normal form lives on class-(i) charts".to_string(),
        ));
    }
    let inst = InstanceParams::new(n, k)?;
    if !matches!(inst.case, CaseKind::StronglyNonSpecial | CaseKind::AlmostPiModular) {
        return Err(KernelError::Invalid(
            "semi-stable form checked in the strongly-non-special and almost-pi-modular cases"
                .to_string(),
        ));
    }
    let uprime = build_spl_chart(n, k, alpha, beta)?;
    let report = CheckReport::new(
        alloc::format!("semistable/n{n}k{k}/i:{alpha},{beta}"),
        &inst,
        Some(uprime.id.label(&inst)),
        VariantConfig::default(),
    );
    guarded(report, |report| {
        // (a) elimination equality with the dependent coordinate removed
        let elim = uprime.ideal().eliminate(&[&var('s', beta)], guard)?;
        let target = spl_chart_eliminated(n, k, alpha, beta)?;
        let elim_ring = elim.ring().clone();
        let mut elim = elim;
        let mut expect = Ideal::new(
            &elim_ring,
            target
                .gen_polys()
                .iter()
                .map(|g| g.into_ring(&elim_ring))
                .collect::<Result<Vec<_>, _>>()?,
        );
        let verdict = elim.ideal_equal(&mut expect, guard)?;
        if let Some((g, nf)) = verdict.witness {
            return Ok(report.fail(&g, &nf));
        }
        // (b) strata counts: every j-fold intersection of components counts
        // q^(n-j) points
        let spec = build_components(&uprime)?;
        let comps = &spec.components;
        for &q in qs {
            for mask in 1u32..(1 << comps.len()) {
                let members: Vec<usize> =
                    (0..comps.len()).filter(|i| mask & (1 << i) != 0).collect();
                let mut gens: Vec<Polynomial> = Vec::new();
                for &i in &members {
                    gens.extend(comps[i].gens.iter().cloned());
                }
                let count = count_affine(&spec.ring, &gens, q, oguard)?.count;
                let expect = (q as u128).pow((n - members.len()) as u32);
                if count as u128 != expect {
                    let names: Vec<&str> =
                        members.iter().map(|&i| comps[i].name.as_str()).collect();
                    return Ok(report.fail_note(
                        &alloc::format!("stratum {} at q={}", names.join("&"), q),
                        alloc::format!("count {count}, expected {expect}"),
                    ));
                }
            }
        }
        Ok(report)
    })
}

/// Blow-up chart identification: for classes (i)-(iii) the two substitution
/// maps transport the generators both ways and compose to the identity on
/// the variables; class-(iv) charts carry the `pi`-unit witness.
pub fn check_blowup_iso(
    n: usize,
    k: usize,
    gamma: usize,
    eta: usize,
    config: VariantConfig,
    guard: &Guard,
) -> Result<CheckReport, KernelError> {
    let class = classify_blowup_chart(n, k, gamma, eta)?;
    let inst = InstanceParams::new(n, k)?;
    inst.require_charts()?;
    let report = CheckReport::new(
        alloc::format!("blowup/n{n}k{k}/{}:{gamma},{eta}", class.as_str()),
        &inst,
        Some(alloc::format!("blowup_n{n}_k{k}_{}_{gamma}_{eta}", class.as_str())),
        config,
    );
    if class == ChartClass::IV {
        return guarded(report, |report| {
            let v = build_blowup_chart(n, k, gamma, eta, config)?;
            let mut vid = enriched_blowup_ideal(&v)?;
            let witness = Polynomial::pi(&v.ring)
                .mul(v.substitution(&var('u', dual(n, gamma))).unwrap())?
                .mul(v.substitution(&var('s', dual(n, eta))).unwrap())?
                .sub(&Polynomial::one(&v.ring))?;
            all_reduce_zero(report, &mut vid, &[witness], guard)
        });
    }
    guarded(report, |report| {
        let iso = chart_iso_map(n, k, gamma, eta, config)?;
        let mut vid = enriched_blowup_ideal(&iso.v)?;
        let mut uid = iso.uprime.ideal();
        // transport the flat-closure generators into the blow-up chart
        let phi_map: BTreeMap<String, Polynomial> = iso.phi.clone();
        let images: Vec<Polynomial> = iso
            .uprime
            .gen_polys()
            .iter()
            .map(|g| g.substitute(&iso.v.ring, &phi_map))
            .collect::<Result<Vec<_>, _>>()?;
        let report = all_reduce_zero(report, &mut vid, &images, guard)?;
        if report.status != CheckStatus::Pass {
            return Ok(report);
        }
        // transport the blow-up generators back
        let psi_map: BTreeMap<String, Polynomial> = iso.psi.clone();
        let back: Vec<Polynomial> = iso
            .v
            .gen_polys()
            .iter()
            .map(|g| g.substitute(&iso.uprime.ring, &psi_map))
            .collect::<Result<Vec<_>, _>>()?;
        let report = all_reduce_zero(report, &mut uid, &back, guard)?;
        if report.status != CheckStatus::Pass {
            return Ok(report);
        }
        // the composites fix every variable modulo the respective ideals
        for v in iso.uprime.ring.vars() {
            if v == "pi" {
                continue;
            }
            let image = iso.phi[v].substitute(&iso.uprime.ring, &psi_map)?;
            let diff = image.sub(&Polynomial::var_named(&iso.uprime.ring, v)?)?;
            let nf = uid.reduce_solved(&diff, guard)?;
            if !nf.is_zero() {
                return Ok(report.fail(&diff, &nf));
            }
        }
        for v in iso.v.ring.vars() {
            if v == "pi" {
                continue;
            }
            let image = iso.psi[v].substitute(&iso.v.ring, &phi_map)?;
            let diff = image.sub(&Polynomial::var_named(&iso.v.ring, v)?)?;
            let nf = vid.reduce_solved(&diff, guard)?;
            if !nf.is_zero() {
                return Ok(report.fail(&diff, &nf));
            }
        }
        Ok(report)
    })
}

/// Exact Gram-matrix identities of the lattice pairings: perfectness, the
/// uniformizer sign identity, and the chain-shift isomorphism.
pub fn check_pairing(n: usize, k: usize) -> Result<CheckReport, KernelError> {
    let inst = InstanceParams::new(n, k)?;
    let report = CheckReport::new(
        alloc::format!("pairing/n{n}k{k}"),
        &inst,
        None,
        VariantConfig::default(),
    );
    let chk = pairing_check_data(n, k as i64)?;
    if !chk.perfect()? {
        return Ok(report.fail_note("perfectness", "Gram determinant not a unit".to_string()));
    }
    if !chk.skew_identity()? {
        return Ok(report.fail_note("skew identity", "Gram identity violated".to_string()));
    }
    if !chk.shift_isomorphism() {
        return Ok(report.fail_note("chain shift", "scaled lattice mismatch".to_string()));
    }
    Ok(report)
}

// ---- suite ----

/// Default chart representatives per class: the smallest valid pair and one
/// non-extremal pair.
pub fn model_representatives(n: usize, k: usize) -> Vec<(ChartClass, usize, usize)> {
    let mut reps: Vec<(ChartClass, usize, usize)> = Vec::new();
    let mid_first = k + 1;
    let mid_central = (n + 1) / 2;
    if k >= 1 {
        reps.push((ChartClass::I, mid_first, 1));
        reps.push((ChartClass::I, mid_central, n));
        reps.push((ChartClass::II, 1, 1));
        reps.push((ChartClass::II, 1, n));
        reps.push((ChartClass::IV, 1, mid_first));
        reps.push((ChartClass::IV, n, n - k));
    }
    reps.push((ChartClass::III, mid_first, mid_first));
    if n - k > mid_first {
        reps.push((ChartClass::III, n - k, n - k));
    }
    reps.sort_by_key(|&(c, a, b)| (c, a, b));
    reps.dedup();
    // keep only pairs whose class comes out as declared
    reps.retain(|&(c, a, b)| classify_chart(n, k, a, b).map(|cc| cc == c).unwrap_or(false));
    reps
}

/// Default blow-up chart representatives per class.
pub fn blowup_representatives(n: usize, k: usize) -> Vec<(ChartClass, usize, usize)> {
    let mut reps: Vec<(ChartClass, usize, usize)> = Vec::new();
    let mid_first = k + 1;
    let mid_central = (n + 1) / 2;
    if k >= 1 {
        reps.push((ChartClass::I, mid_first, 1));
        reps.push((ChartClass::I, mid_central, n));
        reps.push((ChartClass::II, 1, n));
        reps.push((ChartClass::IV, 1, mid_first));
    }
    reps.push((ChartClass::III, mid_first, mid_first));
    reps.sort_by_key(|&(c, a, b)| (c, a, b));
    reps.dedup();
    reps.retain(|&(c, g, e)| {
        classify_blowup_chart(n, k, g, e)
            .map(|cc| cc == c)
            .unwrap_or(false)
    });
    reps
}

/// Known suite names.
pub const SUITES: &[&str] = &[
    "kramer-spin",
    "presentation",
    "fiber",
    "flatness",
    "semistable",
    "blowup",
    "pairing",
    "all",
];

/// One planned check invocation; `run_check` executes it. A caller that
/// needs wall-clock timings per check (the CLI) iterates the plan itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckInvocation {
    KramerSpin { a: usize, b: usize },
    Presentation { a: usize, b: usize },
    Fiber { a: usize, b: usize, family: Family },
    Flatness { a: usize, b: usize },
    Semistable { a: usize, b: usize },
    Blowup { g: usize, e: usize },
    Pairing,
}

/// Expands a suite selection into its planned invocations on the default
/// representatives; `chart` restricts model (resp. blow-up) checks to one
/// `(alpha, beta)` (resp. `(gamma, eta)`) pair.
pub fn suite_plan(
    n: usize,
    k: usize,
    selection: &str,
    chart: Option<(usize, usize)>,
) -> Result<Vec<CheckInvocation>, KernelError> {
    if selection.is_empty() {
        return Ok(Vec::new());
    }
    if !SUITES.contains(&selection) {
        return Err(KernelError::Invalid(alloc::format!(
            "unknown suite {selection}"
        )));
    }
    let inst = InstanceParams::new(n, k)?;
    let mut plan: Vec<CheckInvocation> = Vec::new();
    let reps: Vec<(ChartClass, usize, usize)> = match chart {
        Some((a, b)) => alloc::vec![(classify_chart(n, k, a, b)?, a, b)],
        None => model_representatives(n, k),
    };
    let bl_reps: Vec<(ChartClass, usize, usize)> = match chart {
        Some((g, e)) => alloc::vec![(classify_blowup_chart(n, k, g, e)?, g, e)],
        None => blowup_representatives(n, k),
    };
    let all = selection == "all";
    let charts_needed = all
        || matches!(
            selection,
            "kramer-spin" | "presentation" | "fiber" | "flatness" | "semistable" | "blowup"
        );
    if charts_needed {
        inst.require_charts()?;
    }
    if all || selection == "kramer-spin" {
        for &(_, a, b) in &reps {
            plan.push(CheckInvocation::KramerSpin { a, b });
        }
    }
    if all || selection == "presentation" {
        for &(c, a, b) in &reps {
            if c != ChartClass::IV {
                plan.push(CheckInvocation::Presentation { a, b });
            }
        }
    }
    if all || selection == "fiber" {
        for &(c, a, b) in &reps {
            if c != ChartClass::IV {
                plan.push(CheckInvocation::Fiber {
                    a,
                    b,
                    family: Family::Class,
                });
                plan.push(CheckInvocation::Fiber {
                    a,
                    b,
                    family: Family::Spl,
                });
            }
        }
    }
    if all || selection == "flatness" {
        for &(c, a, b) in &reps {
            if matches!(c, ChartClass::I | ChartClass::II) {
                plan.push(CheckInvocation::Flatness { a, b });
            }
        }
    }
    if all || selection == "semistable" {
        if matches!(
            inst.case,
            CaseKind::StronglyNonSpecial | CaseKind::AlmostPiModular
        ) {
            for &(c, a, b) in &reps {
                // exact-power stratum counts certify the normal-crossing
                // form only where the middle quadric solves a coordinate;
                // at a self-dual normalized index the transform is a smooth
                // quadric bundle instead of affine space, so such charts are
                // checked only on explicit request
                let degenerate =
                    inst.case == CaseKind::StronglyNonSpecial && a == dual(n, a);
                if c == ChartClass::I && (!degenerate || chart.is_some()) {
                    plan.push(CheckInvocation::Semistable { a, b });
                }
            }
        }
    }
    if all || selection == "blowup" {
        for &(_, g, e) in &bl_reps {
            plan.push(CheckInvocation::Blowup { g, e });
        }
    }
    if all || selection == "pairing" {
        plan.push(CheckInvocation::Pairing);
    }
    Ok(plan)
}

/// Executes one planned invocation.
pub fn run_check(
    n: usize,
    k: usize,
    inv: CheckInvocation,
    config: VariantConfig,
    guard: &Guard,
    oguard: &OracleGuard,
) -> Result<CheckReport, KernelError> {
    match inv {
        CheckInvocation::KramerSpin { a, b } => {
            check_kramer_implies_spin(n, k, a, b, config, guard)
        }
        CheckInvocation::Presentation { a, b } => check_presentation(n, k, a, b, config, guard),
        CheckInvocation::Fiber { a, b, family } => {
            check_fiber_decomposition(n, k, a, b, family, guard)
        }
        CheckInvocation::Flatness { a, b } => check_flatness_witness(n, k, a, b, guard),
        CheckInvocation::Semistable { a, b } => {
            check_semistable_form(n, k, a, b, &[3], guard, oguard)
        }
        CheckInvocation::Blowup { g, e } => check_blowup_iso(n, k, g, e, config, guard),
        CheckInvocation::Pairing => check_pairing(n, k),
    }
}

/// Runs the selected suite on the default representatives and returns the
/// reports ordered by check id.
pub fn run_suite(
    n: usize,
    k: usize,
    selection: &str,
    config: VariantConfig,
    guard: &Guard,
    oguard: &OracleGuard,
) -> Result<Vec<CheckReport>, KernelError> {
    let plan = suite_plan(n, k, selection, None)?;
    let mut reports: Vec<CheckReport> = Vec::new();
    for inv in plan {
        reports.push(run_check(n, k, inv, config, guard, oguard)?);
    }
    reports.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(reports)
}

/// Representative helper used by tests and the acceptance suite: the first
/// valid class-(i) pair, preferring a non-degenerate middle coordinate.
pub fn first_class_i(n: usize, k: usize) -> Option<(usize, usize)> {
    if k == 0 {
        return None;
    }
    for a in k + 1..=n - k {
        if is_mid(n, k, a) {
            return Some((a, 1));
        }
    }
    None
}

/// Formats a witnessed verdict (used in logs).
pub fn describe(report: &CheckReport) -> String {
    match &report.witness {
        None => alloc::format!("{} {}", report.check_id, report.status.as_str()),
        Some((g, nf)) => alloc::format!(
            "{} {} [{} -> {}]",
            report.check_id,
            report.status.as_str(),
            g,
            nf
        ),
    }
}
