//! Invariant reports and the certificates drawn from them.

use serde::Serialize;
use serde_json::{json, Value};

use crate::diagram::{braid_to_pd, is_positive_diagram, wirtinger, BraidWord, PDCode};
use crate::error::{KnotError, Result};
use crate::forms::{
    anisotropy_certificate, invariant_factors, signature, signature_bound_check, AnisotropyVerdict,
    ModuleInvariantFactors,
};
use crate::polyalg::{
    alexander_from_fox, alexander_from_seifert, conway_from_seifert, degree_d, divides, leading_coeff_prime_power,
    rational_roots, sturm_real_root_count, Bound, ConwayPolynomial, LaurentPolynomial, LeadingCoefficientBranch,
    PrimePowerCheck, RationalRootReport,
};
use crate::seifert::{seifert_matrix, seifert_matrix_from_braid, seifert_surface, SeifertMatrix, SurfaceData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotPresentation {
    Braid(BraidWord),
    Pd(PDCode),
    Seifert(SeifertMatrix),
}

impl KnotPresentation {
    pub fn kind(&self) -> &'static str {
        match self {
            KnotPresentation::Braid(_) => "braid",
            KnotPresentation::Pd(_) => "pd",
            KnotPresentation::Seifert(_) => "seifert",
        }
    }

    pub fn diagram(&self) -> Result<Option<PDCode>> {
        match self {
            KnotPresentation::Braid(b) => braid_to_pd(b).map(Some),
            KnotPresentation::Pd(d) => Ok(Some(d.clone())),
            KnotPresentation::Seifert(_) => Ok(None),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conclusion {
    BandPrime,
    RibbonMinimal,
    QAnisotropic,
    ModuleRigidInConcordanceClass,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PremiseMode {
    Checked,
    Assumed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Premise {
    pub name: String,
    pub mode: PremiseMode,
    pub passed: bool,
    pub value: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateStatus {
    Certified,
    NotCertified,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Certificate {
    pub conclusion: Conclusion,
    pub status: CertificateStatus,
    pub theorem_chain: Vec<String>,
    pub premises: Vec<Premise>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Certificate {
    fn from_premises(conclusion: Conclusion, chain: &[&str], premises: Vec<Premise>) -> Self {
        let status = if premises.iter().all(|p| p.passed) {
            CertificateStatus::Certified
        } else {
            CertificateStatus::NotCertified
        };
        Certificate {
            conclusion,
            status,
            theorem_chain: chain.iter().map(|s| s.to_string()).collect(),
            premises,
            notes: Vec::new(),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == CertificateStatus::Certified
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RealRootCounts {
    pub negative: usize,
    pub positive: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InvariantReport {
    pub kind: String,
    pub presentation: String,
    /// `None` when no diagram was supplied.
    pub positive_diagram: Option<bool>,
    pub surface: Option<SurfaceData>,
    pub seifert_matrix: SeifertMatrix,
    pub alexander: LaurentPolynomial,
    pub alexander_fox: Option<LaurentPolynomial>,
    pub conway: ConwayPolynomial,
    pub signature: i64,
    pub degree_d: u64,
    pub rational_roots: RationalRootReport,
    pub real_roots: RealRootCounts,
    pub leading_coefficient: PrimePowerCheck,
    pub invariant_factors: Option<ModuleInvariantFactors>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub invariant_factors_error: Option<String>,
    pub anisotropy: AnisotropyVerdict,
    pub certificates: Vec<Certificate>,
}

impl InvariantReport {
    pub fn certificate(&self, conclusion: Conclusion) -> Option<&Certificate> {
        self.certificates.iter().find(|c| c.conclusion == conclusion)
    }

    pub fn is_positive(&self) -> bool {
        self.positive_diagram == Some(true)
    }
}

fn agree(what: &str, a: &LaurentPolynomial, b: &LaurentPolynomial) -> Result<()> {
    if a != b {
        return Err(KnotError::Internal(format!("{what}: {a} != {b}")));
    }
    Ok(())
}

pub fn full_report(p: &KnotPresentation) -> Result<InvariantReport> {
    let diagram = p.diagram()?;
    let (v, presentation) = match p {
        KnotPresentation::Braid(b) => (seifert_matrix_from_braid(b)?, b.to_string()),
        KnotPresentation::Pd(d) => (seifert_matrix(d)?, d.to_string()),
        KnotPresentation::Seifert(v) => (v.clone(), v.to_string().replace('\n', "; ")),
    };
    let alexander = alexander_from_seifert(&v)?;
    let mut alexander_fox = None;
    let mut surface = None;
    if let Some(d) = &diagram {
        let fox = if d.crossing_count() == 0 { LaurentPolynomial::one() } else { alexander_from_fox(&wirtinger(d)?)? };
        agree("Seifert and Fox Alexander polynomials differ", &alexander, &fox)?;
        if let KnotPresentation::Braid(_) = p {
            let from_diagram = alexander_from_seifert(&seifert_matrix(d)?)?;
            agree("braid and diagram Seifert matrices disagree", &alexander, &from_diagram)?;
        }
        alexander_fox = Some(fox);
        surface = Some(seifert_surface(d)?);
    }
    let conway = conway_from_seifert(&v)?;
    let sigma = signature(&v)?;
    let d = degree_d(&alexander)?;
    let (invariant_factors, invariant_factors_error) = match invariant_factors(&v) {
        Ok(f) => (Some(f), None),
        Err(KnotError::SingularSeifert) => (None, Some(KnotError::SingularSeifert.to_string())),
        Err(e) => return Err(e),
    };
    let zero = Bound::int(0);
    let mut report = InvariantReport {
        kind: p.kind().to_string(),
        presentation,
        positive_diagram: diagram.as_ref().map(is_positive_diagram),
        surface,
        rational_roots: rational_roots(&alexander)?,
        real_roots: RealRootCounts {
            negative: sturm_real_root_count(&alexander, &Bound::NegInfinity, &zero)?,
            positive: sturm_real_root_count(&alexander, &zero, &Bound::PosInfinity)?,
        },
        leading_coefficient: leading_coeff_prime_power(&alexander)?,
        anisotropy: anisotropy_certificate(&alexander, sigma)?,
        seifert_matrix: v,
        alexander,
        alexander_fox,
        conway,
        signature: sigma,
        degree_d: d,
        invariant_factors,
        invariant_factors_error,
        certificates: Vec::new(),
    };
    report.certificates = vec![
        certify_band_prime(&report),
        certify_minimal(&report),
        certify_q_anisotropic(&report),
        certify_module_rigidity(&report)?,
    ];
    Ok(report)
}

fn positivity_premise(k: &InvariantReport) -> Premise {
    let value = match k.positive_diagram {
        Some(true) => json!("all crossings of the input diagram are positive"),
        Some(false) => json!("the input diagram has a negative crossing"),
        None => json!("unknown: no diagram supplied"),
    };
    Premise { name: "positive-diagram".into(), mode: PremiseMode::Checked, passed: k.is_positive(), value }
}

pub fn certify_band_prime(k: &InvariantReport) -> Certificate {
    Certificate::from_premises(
        Conclusion::BandPrime,
        &[
            "positive knots have g = g4 (Rudolph)",
            "incompressible Seifert surfaces of positive knots are free (Ozawa)",
            "a knot with g = g4 whose minimal genus Seifert surfaces are free has no non-trivial band sum decomposition",
        ],
        vec![positivity_premise(k)],
    )
}

pub fn certify_minimal(k: &InvariantReport) -> Certificate {
    let lead = &k.leading_coefficient;
    let branch = match lead.branch {
        LeadingCoefficientBranch::Monic => "monic",
        LeadingCoefficientBranch::PrimePower { .. } => "prime-power",
        LeadingCoefficientBranch::NotPrimePower => "neither",
    };
    let premises = vec![
        positivity_premise(k),
        Premise {
            name: "leading-coefficient-prime-power".into(),
            mode: PremiseMode::Checked,
            passed: lead.holds(),
            value: json!({ "check": lead, "branch_used": branch }),
        },
    ];
    let mut chain = vec![
        "positive knots are pseudo-alternating, being Murasugi sums of special alternating knots, and have g = g4 (Rudolph)",
        "a ribbon concordance K0 <= K1 with K1 pseudo-alternating and g = g4 forces equal Alexander polynomials (knot Floer homology with Zemke's injectivity)",
    ];
    chain.push(match lead.branch {
        LeadingCoefficientBranch::Monic => {
            "monic Alexander polynomial: positive knots with monic Alexander polynomial are fibered (Cromwell), and fibered knots have free commutator subgroup, hence are residually nilpotent"
        }
        _ => "pseudo-alternating knots whose Alexander polynomial has prime power leading coefficient are residually nilpotent (Murasugi-Mayland)",
    });
    chain.push("K0 <= K1 with K1 residually nilpotent and d(K0) = d(K1) implies K0 = K1 (Gordon)");
    Certificate::from_premises(Conclusion::RibbonMinimal, &chain, premises)
}

pub fn certify_q_anisotropic(k: &InvariantReport) -> Certificate {
    let mut premises = vec![positivity_premise(k)];
    premises.extend(k.anisotropy.premises.iter().map(|p| Premise {
        name: p.name.clone(),
        mode: PremiseMode::Checked,
        passed: p.passed,
        value: p.value.clone(),
    }));
    Certificate::from_premises(
        Conclusion::QAnisotropic,
        &[
            "an invariant one-dimensional isotropic subspace exists iff the Alexander polynomial has a rational root",
            "|sigma| >= d - 2 leaves no room for an invariant isotropic subspace of dimension >= 2",
        ],
        premises,
    )
}

pub fn certify_module_rigidity(k: &InvariantReport) -> Result<Certificate> {
    let d = k.degree_d as i64;
    let bound = signature_bound_check(k.signature, d)?;
    let premises = vec![
        positivity_premise(k),
        Premise {
            name: "signature-bound".into(),
            mode: PremiseMode::Checked,
            passed: bound,
            value: json!({ "sigma": k.signature, "d": d, "required": format!("|sigma| >= {}", d - 2) }),
        },
    ];
    let mut cert = Certificate::from_premises(
        Conclusion::ModuleRigidInConcordanceClass,
        &[
            "positive knots have d = 2g = 2g4 (Rudolph), so minimal genus Seifert matrices are nonsingular over Q",
            "positive knots satisfying |sigma| >= d - 2 are Q-anisotropic",
            "algebraically concordant Q-anisotropic knots with nonsingular Seifert matrices have isomorphic rational Alexander modules (Kervaire, Gilmer)",
        ],
        premises,
    );
    cert.notes.push("conclusion: any positive knot concordant to this one has the same invariant factors".into());
    if d / 2 <= 4 {
        cert.notes.push(format!(
            "genus {} <= 4: the signature bound is known for positive knots in this range apart from one genus 4 knot with sigma = -4",
            d / 2
        ));
    }
    Ok(cert)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionCheck {
    pub name: String,
    pub passed: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairObstructionReport {
    pub candidate: String,
    pub target: String,
    pub checks: Vec<ObstructionCheck>,
    pub obstructed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub annotation: Option<String>,
}

impl PairObstructionReport {
    pub fn check(&self, name: &str) -> Option<&ObstructionCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Necessary conditions for a ribbon concordance `K0 <= K1`. A failure rules
/// the concordance out; passing everything proves nothing.
pub fn ribbon_obstructions(k0: &InvariantReport, k1: &InvariantReport) -> Result<PairObstructionReport> {
    let (a0, a1) = (&k0.alexander, &k1.alexander);
    let (d0, d1) = (k0.degree_d, k1.degree_d);
    let mut checks = vec![
        ObstructionCheck {
            name: "alexander-divisibility".into(),
            passed: divides(a0, a1)?,
            witness: json!({ "candidate": a0.to_string(), "target": a1.to_string() }),
        },
        ObstructionCheck {
            name: "degree-bound".into(),
            passed: d0 <= d1,
            witness: json!({ "candidate_d": d0, "target_d": d1 }),
        },
    ];
    if k1.is_positive() {
        checks.push(ObstructionCheck {
            name: "genus-equality".into(),
            passed: d0 == d1,
            witness: json!({ "candidate_d": d0, "target_d": d1, "reason": "target positive, so g = g4 and d = 2g" }),
        });
        checks.push(ObstructionCheck {
            name: "alexander-equality".into(),
            passed: a0 == a1,
            witness: json!({ "candidate": a0.to_string(), "target": a1.to_string(), "reason": "target positive, hence pseudo-alternating with g = g4" }),
        });
    }
    let obstructed = checks.iter().any(|c| !c.passed);
    let minimal = k1.certificate(Conclusion::RibbonMinimal).is_some_and(Certificate::is_certified);
    let annotation = (!obstructed && k1.is_positive() && minimal)
        .then(|| "target is ribbon concordance minimal: a ribbon concordance K0 <= K1 would force K0 = K1".to_string());
    Ok(PairObstructionReport {
        candidate: k0.presentation.clone(),
        target: k1.presentation.clone(),
        checks,
        obstructed,
        annotation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::parse_braid;
    use crate::seifert::parse_seifert;

    fn braid(s: &str) -> InvariantReport {
        full_report(&KnotPresentation::Braid(parse_braid(s).unwrap())).unwrap()
    }

    #[test]
    fn trefoil_report() {
        let r = braid("2: 1 1 1");
        assert_eq!(r.alexander.to_string(), "t - 1 + t^-1");
        assert_eq!(r.conway.to_string(), "z^2 + 1");
        assert_eq!((r.signature, r.degree_d), (-2, 2));
        assert_eq!(r.surface.as_ref().unwrap().genus, 1);
        assert!(r.certificates.iter().all(Certificate::is_certified));
    }

    #[test]
    fn unknot_report_is_trivial() {
        let r = braid("1:");
        assert_eq!(r.alexander, LaurentPolynomial::one());
        assert_eq!(r.signature, 0);
        assert!(r.invariant_factors.as_ref().unwrap().is_trivial());
        assert!(r.certificates.iter().all(Certificate::is_certified));
    }

    #[test]
    fn seifert_input_fails_closed() {
        let r = full_report(&KnotPresentation::Seifert(parse_seifert("2: 1 1 0 -2").unwrap())).unwrap();
        assert_eq!(r.positive_diagram, None);
        assert!(r.certificates.iter().all(|c| !c.is_certified()));
    }

    #[test]
    fn minimal_branches() {
        let t = braid("2: 1 1 1");
        assert_eq!(t.leading_coefficient.branch, LeadingCoefficientBranch::Monic);
        let fig8 = braid("3: 1 -2 1 -2");
        assert!(!certify_band_prime(&fig8).is_certified());
        assert!(!certify_minimal(&fig8).is_certified());
    }

    #[test]
    fn obstructions() {
        let u = braid("1:");
        let t = braid("2: 1 1 1");
        let six = full_report(&KnotPresentation::Seifert(parse_seifert("2: 1 1 0 -2").unwrap())).unwrap();
        let r = ribbon_obstructions(&u, &t).unwrap();
        assert!(r.obstructed && !r.check("alexander-equality").unwrap().passed);
        let r = ribbon_obstructions(&t, &t).unwrap();
        assert!(!r.obstructed && r.annotation.is_some());
        let r = ribbon_obstructions(&t, &six).unwrap();
        assert!(!r.check("alexander-divisibility").unwrap().passed);
        assert!(r.annotation.is_none());
    }
}
