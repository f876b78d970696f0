//! Reduced chart presentations per normalization class, their flat closures,
//! the substitution maps from the full Krämer coordinates, and the named
//! special-fiber components.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::KernelError;
use crate::ideal::Ideal;
use crate::model::{
    classify_chart, dual, eps, inverse_var_name, is_mid, sigma, var, xvar, CaseKind, ChartClass,
    ChartId, ChartPresentation, Family, InstanceParams,
};
use crate::poly::Polynomial;
use crate::ring::{MonomialOrder, PolyRing};

fn ring_from(names: &[String]) -> Result<PolyRing, KernelError> {
    let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    PolyRing::new(&refs, MonomialOrder::GrevLex)
}

/// Ring of the class-(i) presentation: `t` on the outer blocks, `s` on the
/// middle block, plus `t_alpha`, `s_beta` and the distinguished `mu`.
fn class_i_ring(n: usize, k: usize, alpha: usize, beta: usize) -> Result<PolyRing, KernelError> {
    let mut names: Vec<String> = Vec::new();
    for i in 1..=k {
        names.push(var('t', i));
    }
    for i in k + 1..=n - k {
        names.push(var('s', i));
    }
    for i in n - k + 1..=n {
        names.push(var('t', i));
    }
    names.push(var('t', alpha));
    names.push(var('s', beta));
    names.push(alloc::format!("mu_{}", dual(n, alpha)));
    names.push(String::from("pi"));
    ring_from(&names)
}

fn class_ii_ring(n: usize, alpha: usize, beta: usize) -> Result<PolyRing, KernelError> {
    let mut names: Vec<String> = (1..=n).map(|i| var('s', i)).collect();
    names.push(alloc::format!("lam_{}", dual(n, alpha)));
    names.push(inverse_var_name(&var('s', beta)));
    names.push(String::from("pi"));
    ring_from(&names)
}

fn class_iii_ring(n: usize, alpha: usize, beta: usize) -> Result<PolyRing, KernelError> {
    let mut names: Vec<String> = (1..=n).map(|i| var('t', i)).collect();
    names.push(alloc::format!("mu_{}", dual(n, beta)));
    names.push(inverse_var_name(&var('t', alpha)));
    names.push(String::from("pi"));
    ring_from(&names)
}

fn class_iv_ring(n: usize, alpha: usize) -> Result<PolyRing, KernelError> {
    let mut names: Vec<String> = (1..=n).map(|i| var('s', i)).collect();
    names.push(var('t', alpha));
    names.push(String::from("pi"));
    ring_from(&names)
}

fn pv(ring: &PolyRing, name: &str) -> Result<Polynomial, KernelError> {
    Polynomial::var_named(ring, name)
}

fn two(ring: &PolyRing) -> Polynomial {
    Polynomial::from_int(ring, 2)
}

/// Builds the reduced class presentation of the chart `(alpha, beta)`.
///
/// Classes (i)-(iii) carry the full reduced relation sets; class (iv) charts
/// are entirely generic and get a marker presentation whose only content is
/// the unit witness `pi * t_alpha * s_beta - 1`.
pub fn build_class_presentation(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
) -> Result<ChartPresentation, KernelError> {
    let inst = InstanceParams::new(n, k)?;
    inst.require_charts()?;
    let class = classify_chart(n, k, alpha, beta)?;
    let (ring, gens, blocks): (PolyRing, Vec<(Polynomial, String)>, _) = match class {
        ChartClass::I => {
            let ring = class_i_ring(n, k, alpha, beta)?;
            let mu = pv(&ring, &alloc::format!("mu_{}", dual(n, alpha)))?;
            let ta = pv(&ring, &var('t', alpha))?;
            let sb = pv(&ring, &var('s', beta))?;
            let pi = Polynomial::pi(&ring);
            let sig = sigma(&ring, 's', n, k)?;
            let gens = alloc::vec![
                (pv(&ring, &var('t', beta))?.sub(&Polynomial::one(&ring))?, "normalization-t".to_string()),
                (pv(&ring, &var('s', alpha))?.sub(&Polynomial::one(&ring))?, "normalization-s".to_string()),
                (ta.mul(&sb)?.sub(&pi)?, "product-pi".to_string()),
                (mu.mul(&ta)?.mul(&sig)?.sub(&two(&ring).mul(&pi)?)?, "mu-trace".to_string()),
                (
                    two(&ring).mul(&mu)?.mul(&sb)?.sub(&mu.pow(2)?.mul(&sig)?)?,
                    "mu-square".to_string()
                ),
            ];
            (ring, gens, class_i_blocks(n, k, alpha, beta))
        }
        ChartClass::II => {
            let ring = class_ii_ring(n, alpha, beta)?;
            let lam = pv(&ring, &alloc::format!("lam_{}", dual(n, alpha)))?;
            let z = pv(&ring, &inverse_var_name(&var('s', beta)))?;
            let sb = pv(&ring, &var('s', beta))?;
            let pi = Polynomial::pi(&ring);
            let sig = sigma(&ring, 's', n, k)?;
            let gens = alloc::vec![
                (pv(&ring, &var('s', alpha))?.sub(&Polynomial::one(&ring))?, "normalization-s".to_string()),
                (z.mul(&sb)?.sub(&Polynomial::one(&ring))?, "localization".to_string()),
                (
                    lam.pow(2)?.mul(&sig)?.sub(&two(&ring).mul(&lam)?)?,
                    "lambda-square".to_string()
                ),
                (
                    pi.mul(&lam)?.mul(&sig)?.sub(&two(&ring).mul(&pi)?)?,
                    "lambda-trace".to_string()
                ),
            ];
            (ring, gens, class_ii_blocks(n, alpha, beta))
        }
        ChartClass::III => {
            let ring = class_iii_ring(n, alpha, beta)?;
            let mu = pv(&ring, &alloc::format!("mu_{}", dual(n, beta)))?;
            let z = pv(&ring, &inverse_var_name(&var('t', alpha)))?;
            let ta = pv(&ring, &var('t', alpha))?;
            let pi = Polynomial::pi(&ring);
            let sig = sigma(&ring, 't', n, k)?;
            let gens = alloc::vec![
                (pv(&ring, &var('t', beta))?.sub(&Polynomial::one(&ring))?, "normalization-t".to_string()),
                (z.mul(&ta)?.sub(&Polynomial::one(&ring))?, "localization".to_string()),
                (mu.mul(&sig)?.sub(&two(&ring).mul(&pi)?)?, "mu-trace".to_string()),
            ];
            (ring, gens, class_iii_blocks(n, alpha, beta))
        }
        ChartClass::IV => {
            let ring = class_iv_ring(n, alpha)?;
            let ta = pv(&ring, &var('t', alpha))?;
            let sb = pv(&ring, &var('s', beta))?;
            let pi = Polynomial::pi(&ring);
            let gens = alloc::vec![
                (pv(&ring, &var('s', alpha))?.sub(&Polynomial::one(&ring))?, "normalization-s".to_string()),
                (
                    pi.mul(&ta)?.mul(&sb)?.sub(&Polynomial::one(&ring))?,
                    "pi-unit-witness".to_string()
                ),
            ];
            (ring, gens, alloc::vec![])
        }
    };
    let mut chart = ChartPresentation {
        id: ChartId {
            family: Family::Class,
            class: Some(class),
            a: alpha,
            b: beta,
        },
        instance: inst,
        ring,
        gens,
        blocks,
        substitutions: Vec::new(),
    };
    chart.substitutions = kramer_image_table(&chart)?;
    Ok(chart)
}

/// Builds the flat-closure chart for classes (i)-(iii); class (iv) is
/// entirely generic and has no flat closure to take.
pub fn build_spl_chart(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
) -> Result<ChartPresentation, KernelError> {
    let class = classify_chart(n, k, alpha, beta)?;
    let mut chart = build_class_presentation(n, k, alpha, beta)?;
    chart.id.family = Family::Spl;
    match class {
        ChartClass::I => {
            // replace the square relation by its flat form 2 s_beta - mu * Sigma
            let ring = chart.ring.clone();
            let mu = pv(&ring, &alloc::format!("mu_{}", dual(n, alpha)))?;
            let sb = pv(&ring, &var('s', beta))?;
            let sig = sigma(&ring, 's', n, k)?;
            let flat = two(&ring).mul(&sb)?.sub(&mu.mul(&sig)?)?;
            let pos = chart
                .gens
                .iter()
                .position(|(_, tag)| tag == "mu-square")
                .expect("class-(i) presentation has the square relation");
            chart.gens[pos] = (flat, "flat-closure".to_string());
            Ok(chart)
        }
        ChartClass::II => {
            // the distinguished lambda becomes a unit: lambda * Sigma = 2
            let ring = chart.ring.clone();
            let lam = pv(&ring, &alloc::format!("lam_{}", dual(n, alpha)))?;
            let sig = sigma(&ring, 's', n, k)?;
            let unit = lam.mul(&sig)?.sub(&two(&ring))?;
            chart
                .gens
                .retain(|(_, tag)| tag == "normalization-s" || tag == "localization");
            chart.gens.push((unit, "flat-closure".to_string()));
            Ok(chart)
        }
        ChartClass::III => Ok(chart),
        ChartClass::IV => Err(KernelError::Invalid(
            "class-(iv) charts are generic; no flat closure is taken".to_string(),
        )),
    }
}

/// The class-(i) eliminated form: the presentation without the `s_beta`
/// coordinate.
pub fn spl_chart_eliminated(
    n: usize,
    k: usize,
    alpha: usize,
    beta: usize,
) -> Result<ChartPresentation, KernelError> {
    let inst = InstanceParams::new(n, k)?;
    inst.require_charts()?;
    let class = classify_chart(n, k, alpha, beta)?;
    if class != ChartClass::I {
        return Err(KernelError::Invalid(
            "the eliminated form exists for class (i) only".to_string(),
        ));
    }
    let mut names: Vec<String> = Vec::new();
    for i in 1..=k {
        names.push(var('t', i));
    }
    for i in k + 1..=n - k {
        names.push(var('s', i));
    }
    for i in n - k + 1..=n {
        names.push(var('t', i));
    }
    names.push(var('t', alpha));
    names.push(alloc::format!("mu_{}", dual(n, alpha)));
    names.push(String::from("pi"));
    let ring = ring_from(&names)?;
    let mu = pv(&ring, &alloc::format!("mu_{}", dual(n, alpha)))?;
    let ta = pv(&ring, &var('t', alpha))?;
    let pi = Polynomial::pi(&ring);
    let sig = sigma(&ring, 's', n, k)?;
    let gens = alloc::vec![
        (pv(&ring, &var('t', beta))?.sub(&Polynomial::one(&ring))?, "normalization-t".to_string()),
        (pv(&ring, &var('s', alpha))?.sub(&Polynomial::one(&ring))?, "normalization-s".to_string()),
        (mu.mul(&ta)?.mul(&sig)?.sub(&two(&ring).mul(&pi)?)?, "mu-trace".to_string()),
    ];
    Ok(ChartPresentation {
        id: ChartId {
            family: Family::Spl,
            class: Some(class),
            a: alpha,
            b: beta,
        },
        instance: inst,
        ring,
        gens,
        blocks: Vec::new(),
        substitutions: Vec::new(),
    })
}

fn class_i_blocks(n: usize, k: usize, alpha: usize, beta: usize) -> Vec<(String, Vec<String>)> {
    alloc::vec![
        ("t1".to_string(), (1..=k).map(|i| var('t', i)).collect()),
        (
            "s2".to_string(),
            (k + 1..=n - k).map(|i| var('s', i)).collect()
        ),
        (
            "t3".to_string(),
            (n - k + 1..=n).map(|i| var('t', i)).collect()
        ),
        (
            "extra".to_string(),
            alloc::vec![var('t', alpha), var('s', beta), alloc::format!("mu_{}", dual(n, alpha))]
        ),
    ]
}

fn class_ii_blocks(n: usize, alpha: usize, beta: usize) -> Vec<(String, Vec<String>)> {
    alloc::vec![
        ("s".to_string(), (1..=n).map(|i| var('s', i)).collect()),
        (
            "extra".to_string(),
            alloc::vec![
                alloc::format!("lam_{}", dual(n, alpha)),
                inverse_var_name(&var('s', beta))
            ]
        ),
    ]
}

fn class_iii_blocks(n: usize, alpha: usize, beta: usize) -> Vec<(String, Vec<String>)> {
    alloc::vec![
        ("t".to_string(), (1..=n).map(|i| var('t', i)).collect()),
        (
            "extra".to_string(),
            alloc::vec![
                alloc::format!("mu_{}", dual(n, beta)),
                inverse_var_name(&var('t', alpha))
            ]
        ),
    ]
}

/// The substitution map: every full Krämer coordinate (`s_j, t_j, lam_j,
/// mu_j`) expressed in the class-presentation ring. This is the map through
/// which the Krämer chart ideal is compared with the reduced presentation.
pub fn kramer_to_class_map(
    chart: &ChartPresentation,
) -> Result<BTreeMap<String, Polynomial>, KernelError> {
    let inst = chart.instance;
    let (n, k) = (inst.n, inst.k);
    let (alpha, beta) = (chart.id.a, chart.id.b);
    let class = chart.id.class.expect("class chart");
    let ring = &chart.ring;
    let mut map: BTreeMap<String, Polynomial> = BTreeMap::new();
    let pi = Polynomial::pi(ring);

    // coordinate images
    let s_img = |j: usize| -> Result<Polynomial, KernelError> {
        match class {
            ChartClass::I => {
                if is_mid(n, k, j) {
                    pv(ring, &var('s', j))
                } else {
                    pv(ring, &var('s', beta))?.mul(&pv(ring, &var('t', j))?)
                }
            }
            ChartClass::II => pv(ring, &var('s', j)),
            ChartClass::III => {
                // s = s_beta * (pi t_1, t_2, pi t_3), with s_beta = z
                let z = pv(ring, &inverse_var_name(&var('t', alpha)))?;
                let base = z.mul(&pv(ring, &var('t', j))?)?;
                if is_mid(n, k, j) {
                    Ok(base)
                } else {
                    base.mul(&pi)
                }
            }
            ChartClass::IV => unreachable!("class (iv) has no reduction map"),
        }
    };
    let t_img = |j: usize| -> Result<Polynomial, KernelError> {
        match class {
            ChartClass::I => {
                if is_mid(n, k, j) {
                    pv(ring, &var('t', alpha))?.mul(&pv(ring, &var('s', j))?)
                } else {
                    pv(ring, &var('t', j))
                }
            }
            ChartClass::II => {
                // t = t_alpha * (s_1, pi s_2, s_3), with t_alpha = z
                let z = pv(ring, &inverse_var_name(&var('s', beta)))?;
                let base = z.mul(&pv(ring, &var('s', j))?)?;
                if is_mid(n, k, j) {
                    base.mul(&pi)
                } else {
                    Ok(base)
                }
            }
            ChartClass::III => pv(ring, &var('t', j)),
            ChartClass::IV => unreachable!(),
        }
    };
    // the distinguished scalar relating lambda and mu to the coordinates
    let c1: Polynomial = match class {
        ChartClass::I => pv(ring, &alloc::format!("mu_{}", dual(n, alpha)))?,
        ChartClass::II => {
            let lam = pv(ring, &alloc::format!("lam_{}", dual(n, alpha)))?;
            let sb = pv(ring, &var('s', beta))?;
            let e = Polynomial::from_int(ring, eps(n, k, alpha));
            e.mul(&lam)?.mul(&sb)?
        }
        ChartClass::III => {
            let mu = pv(ring, &alloc::format!("mu_{}", dual(n, beta)))?;
            let ta = pv(ring, &var('t', alpha))?;
            mu.mul(&ta)?
        }
        ChartClass::IV => unreachable!(),
    };
    for j in 1..=n {
        map.insert(var('s', j), s_img(j)?);
        map.insert(var('t', j), t_img(j)?);
    }
    for j in 1..=n {
        // lambda_j = c1 * eps(dual j) * t_{dual j};  mu_j = c1 * eps(j) * s_{dual j}
        let ed = Polynomial::from_int(ring, eps(n, k, dual(n, j)));
        let lam_img = c1.mul(&ed)?.mul(&t_img(dual(n, j))?)?;
        map.insert(alloc::format!("lam_{j}"), lam_img);
        let ej = Polynomial::from_int(ring, eps(n, k, j));
        let mu_img = c1.mul(&ej)?.mul(&s_img(dual(n, j))?)?;
        map.insert(alloc::format!("mu_{j}"), mu_img);
    }
    Ok(map)
}

fn kramer_image_table(
    chart: &ChartPresentation,
) -> Result<Vec<(String, Polynomial)>, KernelError> {
    if chart.id.class == Some(ChartClass::IV) {
        return Ok(Vec::new());
    }
    let map = kramer_to_class_map(chart)?;
    let mut out: Vec<(String, Polynomial)> = map.into_iter().collect();
    let inst = chart.instance;
    // the standard-arrangement matrix entries through the rank-one expression
    let lookup: BTreeMap<String, Polynomial> = out.iter().cloned().collect();
    let pi = Polynomial::pi(&chart.ring);
    for i in 1..=inst.n {
        for j in 1..=inst.n {
            let si = &lookup[&var('s', i)];
            let lj = &lookup[&alloc::format!("lam_{j}")];
            let mut x = si.mul(lj)?;
            if i == j {
                x = x.sub(&pi)?;
            }
            out.push((xvar("X", i, j), x));
        }
    }
    Ok(out)
}

// ---- special-fiber components ----

/// One named special-fiber component of a chart: its full ideal generators
/// and the variables that stay free in its parametrization.
#[derive(Debug, Clone)]
pub struct Component {
    pub name: String,
    pub gens: Vec<Polynomial>,
    pub free: Vec<String>,
}

impl Component {
    pub fn ideal(&self, ring: &PolyRing) -> Ideal {
        Ideal::new(ring, self.gens.clone())
    }
}

/// The component decomposition data of one chart's special fiber.
#[derive(Debug, Clone)]
pub struct ComponentSpec {
    pub chart: ChartId,
    pub instance: InstanceParams,
    pub ring: PolyRing,
    pub components: Vec<Component>,
    /// Component count of the ambient special fiber for this case; the
    /// splitting model adds one (the exceptional divisor).
    pub expected_global_count: Option<usize>,
}

/// Builds the named component ideals of the special fiber of a class or
/// flat-closure chart (classes (i)-(iii)).
///
/// Case adjustments: in the almost-pi-modular case the middle quadric is
/// forced to the constant 1, so the component it cuts disappears; in Yu's
/// case the quadric degenerates to twice a product of two coordinates and a
/// chart only sees the branch its normalization leaves free.
pub fn build_components(chart: &ChartPresentation) -> Result<ComponentSpec, KernelError> {
    let inst = chart.instance;
    let (n, k) = (inst.n, inst.k);
    let (alpha, beta) = (chart.id.a, chart.id.b);
    let class = chart
        .id
        .class
        .ok_or_else(|| KernelError::Invalid("component data needs a classed chart".to_string()))?;
    if !matches!(chart.id.family, Family::Class | Family::Spl) {
        return Err(KernelError::Invalid(
            "component data exists for class and flat-closure charts".to_string(),
        ));
    }
    let ring = chart.ring.clone();
    let pi = Polynomial::pi(&ring);
    let mut comps: Vec<Component> = Vec::new();
    let base: Vec<Polynomial> = chart
        .gens
        .iter()
        .filter(|(_, tag)| tag.starts_with("normalization") || tag == "localization")
        .map(|(p, _)| p.clone())
        .collect();
    let with = |extra: &[Polynomial]| -> Vec<Polynomial> {
        let mut g = base.clone();
        g.push(pi.clone());
        g.extend(extra.iter().cloned());
        g
    };
    let all_vars: Vec<String> = ring
        .vars()
        .iter()
        .filter(|v| v.as_str() != "pi")
        .cloned()
        .collect();
    let free_minus = |pinned: &[String]| -> Vec<String> {
        all_vars
            .iter()
            .filter(|v| !pinned.contains(v))
            .cloned()
            .collect()
    };

    match class {
        ChartClass::I => {
            let mu_name = alloc::format!("mu_{}", dual(n, alpha));
            let mu = pv(&ring, &mu_name)?;
            let ta_name = var('t', alpha);
            let ta = pv(&ring, &ta_name)?;
            let sb_name = var('s', beta);
            let sb = pv(&ring, &sb_name)?;
            let sig = sigma(&ring, 's', n, k)?;
            let norm_pins = alloc::vec![var('t', beta), var('s', alpha)];
            // exceptional components
            let mut pins = norm_pins.clone();
            pins.push(mu_name.clone());
            pins.push(sb_name.clone());
            comps.push(Component {
                name: "Exc1".to_string(),
                gens: with(&[mu.clone(), sb.clone()]),
                free: free_minus(&pins),
            });
            if chart.id.family == Family::Class {
                let mut pins = norm_pins.clone();
                pins.push(mu_name.clone());
                pins.push(ta_name.clone());
                comps.push(Component {
                    name: "Exc2".to_string(),
                    gens: with(&[mu.clone(), ta.clone()]),
                    free: free_minus(&pins),
                });
            }
            // strict transforms
            if inst.case != CaseKind::AlmostPiModular {
                let mut pins = norm_pins.clone();
                pins.push(sb_name.clone());
                // the quadric solves the coordinate dual to the normalized one
                let solver = var('s', dual(n, alpha));
                if solver != var('s', alpha) {
                    pins.push(solver);
                } else if n - 2 * k > 1 {
                    pins.push(var('s', n - k));
                }
                comps.push(Component {
                    name: "Z1".to_string(),
                    gens: with(&[sb.clone(), sig.clone()]),
                    free: free_minus(&pins),
                });
            }
            let mut pins = norm_pins.clone();
            pins.push(ta_name.clone());
            pins.push(sb_name.clone());
            let flat = two(&ring).mul(&sb)?.sub(&mu.mul(&sig)?)?;
            comps.push(Component {
                name: "Z2".to_string(),
                gens: with(&[ta.clone(), flat]),
                free: free_minus(&pins),
            });
        }
        ChartClass::II => {
            let lam_name = alloc::format!("lam_{}", dual(n, alpha));
            let lam = pv(&ring, &lam_name)?;
            let sig = sigma(&ring, 's', n, k)?;
            let z_name = inverse_var_name(&var('s', beta));
            if chart.id.family == Family::Class {
                comps.push(Component {
                    name: "Exc2".to_string(),
                    gens: with(&[lam.clone()]),
                    free: free_minus(&alloc::vec![
                        var('s', alpha),
                        lam_name.clone(),
                        z_name.clone()
                    ]),
                });
            }
            let unit = lam.mul(&sig)?.sub(&two(&ring))?;
            comps.push(Component {
                name: "Z2".to_string(),
                gens: with(&[unit]),
                free: free_minus(&alloc::vec![var('s', alpha), lam_name.clone(), z_name.clone()]),
            });
        }
        ChartClass::III => {
            let mu_name = alloc::format!("mu_{}", dual(n, beta));
            let mu = pv(&ring, &mu_name)?;
            let sig = sigma(&ring, 't', n, k)?;
            let z_name = inverse_var_name(&var('t', alpha));
            comps.push(Component {
                name: "Exc1".to_string(),
                gens: with(&[mu.clone()]),
                free: free_minus(&alloc::vec![var('t', beta), mu_name.clone(), z_name.clone()]),
            });
            // the transform survives unless the quadric is forced constant
            // (almost-pi-modular) or inverted away (Yu with alpha != beta)
            let solver = var('t', dual(n, beta));
            let survives = match inst.case {
                CaseKind::AlmostPiModular => false,
                CaseKind::Yu => alpha == beta,
                _ => true,
            };
            if survives {
                // mu stays free on the transform; the quadric pins one
                // coordinate and the localization inverse is determined
                let mut pins = alloc::vec![var('t', beta), z_name.clone()];
                if solver != var('t', beta) {
                    pins.push(solver);
                } else if n - 2 * k > 1 {
                    pins.push(var('t', n - k));
                }
                comps.push(Component {
                    name: "Z1".to_string(),
                    gens: with(&[sig]),
                    free: free_minus(&pins),
                });
            }
        }
        ChartClass::IV => {
            return Err(KernelError::Invalid(
                "class-(iv) charts are generic; the special fiber is empty".to_string(),
            ))
        }
    }
    Ok(ComponentSpec {
        chart: chart.id,
        instance: inst,
        ring,
        components: comps,
        expected_global_count: inst.case.component_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Guard;

    #[test]
    fn class_i_presentation_5_1_3_1() {
        let chart = build_class_presentation(5, 1, 3, 1).unwrap();
        let r = &chart.ring;
        let expect = [
            "t_1 - 1",
            "s_3 - 1",
            "t_3*s_1 - pi",
            "mu_3*t_3*(2*s_2*s_4 + s_3^2) - 2*pi",
            "2*mu_3*s_1 - mu_3^2*(2*s_2*s_4 + s_3^2)",
        ];
        // same ideal as the hand-written generator list (expanded by hand:
        // the grammar has no parentheses)
        let hand = [
            "t_1 - 1",
            "s_3 - 1",
            "t_3*s_1 - pi",
            "2*mu_3*t_3*s_2*s_4 + mu_3*t_3*s_3^2 - 2*pi",
            "2*mu_3*s_1 - 2*mu_3^2*s_2*s_4 - mu_3^2*s_3^2",
        ];
        let _ = expect;
        let mut built = chart.ideal();
        let gens = hand
            .iter()
            .map(|t| Polynomial::parse(r, t).unwrap())
            .collect::<Vec<_>>();
        let mut by_hand = Ideal::new(r, gens);
        assert!(built.ideal_equal(&mut by_hand, &Guard::default()).unwrap().equal);
        assert_eq!(chart.gens.len(), 5);
    }

    #[test]
    fn class_ii_and_iii_presentations() {
        let c2 = build_class_presentation(5, 1, 1, 1).unwrap();
        assert_eq!(c2.gens.len(), 4);
        assert!(c2.ring.var_id("z_s_1").is_ok());
        let c3 = build_class_presentation(5, 1, 3, 3).unwrap();
        assert_eq!(c3.gens.len(), 3);
        assert!(c3.ring.var_id("z_t_3").is_ok());
        // class (iv) marker carries the unit witness
        let c4 = build_class_presentation(5, 1, 1, 3).unwrap();
        assert!(c4.gens.iter().any(|(_, tag)| tag == "pi-unit-witness"));
    }

    #[test]
    fn spl_charts() {
        let u1 = build_spl_chart(5, 1, 3, 1).unwrap();
        assert!(u1.gens.iter().any(|(_, t)| t == "flat-closure"));
        let u2 = build_spl_chart(5, 1, 1, 1).unwrap();
        // {s_alpha - 1, z s_beta - 1, lam * Sigma - 2}
        assert_eq!(u2.gens.len(), 3);
        let u3 = build_spl_chart(5, 1, 2, 2).unwrap();
        let c3 = build_class_presentation(5, 1, 2, 2).unwrap();
        let mut a = u3.ideal();
        let mut b = c3.ideal();
        assert!(a.ideal_equal(&mut b, &Guard::default()).unwrap().equal);
        assert!(build_spl_chart(5, 1, 1, 3).is_err());
    }

    #[test]
    fn component_tables() {
        // strongly non-special class (i): four components in U, three in U'
        let u = build_class_presentation(5, 1, 2, 1).unwrap();
        let cu = build_components(&u).unwrap();
        let names: Vec<&str> = cu.components.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["Exc1", "Exc2", "Z1", "Z2"]);
        assert!(cu.components.iter().all(|c| c.free.len() == 4));
        let up = build_spl_chart(5, 1, 2, 1).unwrap();
        let cup = build_components(&up).unwrap();
        let names: Vec<&str> = cup.components.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["Exc1", "Z1", "Z2"]);
        // almost pi-modular class (i): no Z1
        let am = build_class_presentation(5, 2, 3, 1).unwrap();
        let cam = build_components(&am).unwrap();
        let names: Vec<&str> = cam.components.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["Exc1", "Exc2", "Z2"]);
        // class (ii)
        let c2 = build_class_presentation(5, 1, 1, 1).unwrap();
        let cc2 = build_components(&c2).unwrap();
        let names: Vec<&str> = cc2.components.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["Exc2", "Z2"]);
        // class (iii) in Yu's case: the transform survives only with both
        // middle coordinates normalized together
        let c3 = build_class_presentation(4, 1, 2, 2).unwrap();
        let cc3 = build_components(&c3).unwrap();
        let names: Vec<&str> = cc3.components.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["Exc1", "Z1"]);
        let c3b = build_class_presentation(4, 1, 2, 3).unwrap();
        let cc3b = build_components(&c3b).unwrap();
        let names: Vec<&str> = cc3b.components.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["Exc1"]);
    }

    #[test]
    fn component_ideals_contain_special_fiber() {
        let chart = build_class_presentation(5, 1, 2, 1).unwrap();
        let spec = build_components(&chart).unwrap();
        let g = Guard::default();
        let pi = Polynomial::pi(&chart.ring);
        let special: Vec<Polynomial> = chart
            .gen_polys()
            .into_iter()
            .chain(core::iter::once(pi))
            .collect();
        for comp in &spec.components {
            let mut ci = comp.ideal(&chart.ring);
            for f in &special {
                assert!(ci.contains(f, &g).unwrap(), "{} missing {:?}", comp.name, f);
            }
        }
    }
}
