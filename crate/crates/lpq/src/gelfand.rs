//! Families of measures, the family sup-norm, the norm conditions making
//! the completed space a CQ*-algebra, and the Gelfand-type isometric
//! embedding built from a set of weight forms.
//!
//! On a finite atom space the characters of C(X) are the atom evaluations,
//! so the Gelfand transform is the identity on values; what the embedding
//! adds is the family norm, and the isometry certificate hinges on the
//! family containing the extremal weight of the embedded element.

use crate::exponent::Exponent;
use crate::form::{extremal_weight, EvalOutcome, FormWeight};
use crate::report::{CheckItem, CheckReport};
use crate::sampling;
use crate::space::{rat_f64, DiscreteFunction, DiscreteSpace, Function};
use crate::{Error, Result};
use serde::Serialize;

/// A finite family of nonnegative measures on a shared atom space, with a
/// uniform mass bound C.
#[derive(Clone, Debug, Serialize)]
pub struct MeasureFamily {
    #[serde(skip)]
    space: DiscreteSpace,
    #[serde(rename = "C")]
    c: f64,
    members: Vec<Vec<f64>>,
}

impl MeasureFamily {
    pub fn new(space: DiscreteSpace, members: Vec<Vec<f64>>, c: f64) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Invalid("a measure family must be nonempty".into()));
        }
        for m in &members {
            if m.len() != space.len() {
                return Err(Error::Invalid("member size mismatch".into()));
            }
            if m.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::Invalid("member masses must be nonnegative".into()));
            }
            let mass: f64 = m.iter().sum();
            if mass > c + 1e-9 {
                return Err(Error::Invalid(format!(
                    "member mass {mass} exceeds the bound C = {c}"
                )));
            }
        }
        Ok(MeasureFamily { space, c, members })
    }

    pub fn space(&self) -> &DiscreteSpace {
        &self.space
    }

    pub fn bound(&self) -> f64 {
        self.c
    }

    pub fn members(&self) -> &[Vec<f64>] {
        &self.members
    }

    /// ‖φ‖_{p,α} for one member.
    fn member_norm(&self, phi: &DiscreteFunction, p: &Exponent, member: &[f64]) -> f64 {
        match p {
            Exponent::Infinity => phi
                .values()
                .iter()
                .zip(member)
                .filter(|(_, m)| **m > 0.0)
                .map(|(v, _)| v.norm())
                .fold(0.0, f64::max),
            Exponent::Finite(pr) => {
                let pf = rat_f64(*pr);
                let s: f64 = phi
                    .values()
                    .iter()
                    .zip(member)
                    .map(|(v, m)| v.norm().powf(pf) * m)
                    .sum();
                s.powf(1.0 / pf)
            }
        }
    }
}

/// ‖φ‖_{p,ℐ} = max over family members of the member p-norm.
pub fn sup_norm(phi: &DiscreteFunction, p: &Exponent, fam: &MeasureFamily) -> Result<f64> {
    if phi.space() != fam.space() {
        return Err(Error::Backend("function lives on a different space".into()));
    }
    Ok(fam
        .members()
        .iter()
        .map(|m| fam.member_norm(phi, p, m))
        .fold(0.0, f64::max))
}

/// Verifies the norm conditions making the family completion a CQ*-algebra:
/// (i) ‖φ*‖_{p,ℐ} = ‖φ‖_{p,ℐ}, (ii) ‖φψ‖_{p,ℐ} ≤ ‖φ‖_{p,ℐ}‖ψ‖_∞, the
/// uniform mass bound, and the domination ‖φ‖_{p,ℐ} ≤ C^{1/p}‖φ‖_∞.
pub fn family_axioms_check(fam: &MeasureFamily, p: &Exponent, seed: u64) -> Result<CheckReport> {
    let space = fam.space().clone();
    let n = space.len();
    let mut rng = sampling::rng(seed);

    let mut invol = 0.0f64;
    let mut module = 0.0f64;
    let mut dominate = 0.0f64;
    for _ in 0..20 {
        let phi = DiscreteFunction::new(space.clone(), sampling::complex_vec(&mut rng, n))?;
        let psi = DiscreteFunction::new(space.clone(), sampling::complex_vec(&mut rng, n))?;
        let nphi = sup_norm(&phi, p, fam)?;
        invol = invol.max((sup_norm(&phi.involution(), p, fam)? - nphi).abs());
        module = module
            .max(sup_norm(&phi.multiply(&psi)?, p, fam)? - nphi * psi.norm(&Exponent::Infinity));
        let cap = fam.bound().powf(rat_f64(p.recip())) * phi.norm(&Exponent::Infinity);
        dominate = dominate.max(nphi - cap);
    }

    let mass_excess = fam
        .members()
        .iter()
        .map(|m| m.iter().sum::<f64>() - fam.bound())
        .fold(0.0, f64::max);

    let verdict = |name: &str, worst: f64, tol: f64| {
        if worst <= tol {
            CheckItem::pass(name, worst.max(0.0))
        } else {
            CheckItem::fail(name, worst, "random sample")
        }
    };
    Ok(CheckReport::new(vec![
        verdict("involution_isometry", invol, 0.0),
        verdict("module_norm_inequality", module, 1e-9),
        verdict("uniform_mass_bound", mass_excess, 1e-9),
        verdict("sup_norm_domination", dominate, 1e-9),
    ]))
}

/// Builds the family {μ_Ω} from a set of weights: μ_Ω has atom masses
/// ψᵢμᵢ (read off from Ω(e_i, u)), with the uniform bound C = μ(X)^{2/p}
/// coming from Ω(u, u) ≤ ‖u‖_p².
pub fn measures_from_forms(weights: &[FormWeight]) -> Result<MeasureFamily> {
    let first = weights
        .first()
        .ok_or_else(|| Error::Invalid("need at least one weight".into()))?;
    let space = first.psi().as_discrete()?.space().clone();
    let p = *first.p();
    let mut members = Vec::with_capacity(weights.len());
    for w in weights {
        let psi = w.psi().as_discrete()?;
        if psi.space() != &space {
            return Err(Error::Backend("weights live on different spaces".into()));
        }
        if w.p() != &p {
            return Err(Error::Invalid("weights carry different exponents".into()));
        }
        members.push(
            psi.values()
                .iter()
                .zip(space.weights())
                .map(|(v, mu)| v.re * mu)
                .collect(),
        );
    }
    let c = space.total_mass().powf(2.0 * rat_f64(p.recip()));
    MeasureFamily::new(space, members, c)
}

/// Report of embedding f through the measure family of a weight set.
#[derive(Clone, Debug, Serialize)]
pub struct TransformReport {
    /// ‖Φ(f)‖_{2,ℐ} over the family built from the weights.
    pub embedding_norm: f64,
    /// ‖f‖_p, the target of the isometry.
    pub p_norm: f64,
    /// p_norm − embedding_norm (nonnegative; ≈ 0 when certified).
    pub gap: f64,
    /// Whether the family contained the extremal weight of f, which is what
    /// certifies the isometry rather than a mere lower bound.
    pub certified: bool,
    pub isometric: bool,
    pub injective: bool,
    pub multiplicative: bool,
    pub involutive: bool,
}

/// The Gelfand-type embedding: Φ(f) is f itself (atom evaluations are the
/// characters), normed by the family of measures of the given weights.
pub fn transform(
    f: &DiscreteFunction,
    weights: &[FormWeight],
    p: &Exponent,
    seed: u64,
) -> Result<TransformReport> {
    if *p < Exponent::TWO {
        return Err(Error::ExponentRange(format!(
            "the embedding needs p >= 2, got {p}"
        )));
    }
    let fam = measures_from_forms(weights)?;
    if f.space() != fam.space() {
        return Err(Error::Backend("function lives on a different space".into()));
    }
    let embedding_norm = sup_norm(f, &Exponent::TWO, &fam)?;
    let p_norm = f.norm(p);

    // the 2-norm against μ_Ω is exactly √Ω(f,f); cross-check one member
    if let Some(w) = weights.first() {
        let direct = match w.evaluate(
            &Function::Discrete(f.clone()),
            &Function::Discrete(f.clone()),
        )? {
            EvalOutcome::Finite(v) => v.re.max(0.0).sqrt(),
            EvalOutcome::Divergent { .. } => unreachable!("discrete forms are finite"),
        };
        let via_family = fam.member_norm(f, &Exponent::TWO, &fam.members()[0]);
        debug_assert!((direct - via_family).abs() <= 1e-9 * (1.0 + direct));
    }

    let certified = if f.is_zero() || p.is_infinite() {
        false
    } else {
        let ext = extremal_weight(f, p)?;
        let ext_vals = ext.psi().as_discrete()?.values();
        weights.iter().any(|w| {
            w.psi()
                .as_discrete()
                .map(|d| {
                    d.values()
                        .iter()
                        .zip(ext_vals)
                        .all(|(a, b)| (a - b).norm() <= 1e-9)
                })
                .unwrap_or(false)
        })
    };
    let isometric = (p_norm - embedding_norm).abs() <= 1e-6 * (1.0 + p_norm);

    // injectivity witness: a nonzero element keeps a nonzero family norm
    // because the extremal member sees every atom where f lives
    let injective = f.is_zero() || embedding_norm > 0.0;

    // multiplicativity and involution are identities on values; verify on
    // sampled partners anyway
    let space = f.space().clone();
    let n = space.len();
    let mut rng = sampling::rng(seed);
    let mut mult_ok = true;
    let mut invol_ok = true;
    for _ in 0..10 {
        let g = DiscreteFunction::new(space.clone(), sampling::complex_vec(&mut rng, n))?;
        let prod = f.multiply(&g)?;
        mult_ok &= prod
            .values()
            .iter()
            .zip(f.values().iter().zip(g.values()))
            .all(|(fg, (a, b))| (fg - a * b).norm() == 0.0);
        invol_ok &= f
            .involution()
            .values()
            .iter()
            .zip(f.values())
            .all(|(c, v)| *c == v.conj());
    }

    Ok(TransformReport {
        embedding_norm,
        p_norm,
        gap: p_norm - embedding_norm,
        certified,
        isometric,
        injective,
        multiplicative: mult_ok,
        involutive: invol_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{normalized_weight, random_ball_weight};
    use num_complex::Complex64;

    fn p4() -> Exponent {
        Exponent::from_int(4).unwrap()
    }

    #[test]
    fn singleton_family_is_plain_norm() {
        let sp = DiscreteSpace::new(vec![0.5, 0.5]).unwrap();
        let fam = MeasureFamily::new(sp.clone(), vec![vec![0.5, 0.5]], 1.0).unwrap();
        let f = DiscreteFunction::from_reals(sp, &[1.0, 2.0]).unwrap();
        let v = sup_norm(&f, &Exponent::TWO, &fam).unwrap();
        assert!((v - f.norm(&Exponent::TWO)).abs() < 1e-15);
    }

    #[test]
    fn family_sup_picks_the_heavier_member() {
        // u against members of mass 1 and 4 at p = 2 → norms 1 and 2
        let sp = DiscreteSpace::new(vec![1.0, 1.0]).unwrap();
        let fam =
            MeasureFamily::new(sp.clone(), vec![vec![0.5, 0.5], vec![2.0, 2.0]], 4.0).unwrap();
        let u = DiscreteFunction::unit(sp);
        let v = sup_norm(&u, &Exponent::TWO, &fam).unwrap();
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn family_axioms_hold() {
        let sp = DiscreteSpace::new(vec![0.5, 1.0, 1.5]).unwrap();
        let fam = MeasureFamily::new(
            sp,
            vec![vec![0.2, 0.3, 0.1], vec![1.0, 0.5, 1.0], vec![0.0, 0.0, 2.5]],
            3.0,
        )
        .unwrap();
        let rep = family_axioms_check(&fam, &p4(), 17).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn measures_read_off_the_weights() {
        let sp = DiscreteSpace::probability(2);
        let p = p4();
        // ψ = u on a probability space reproduces μ itself
        let w = normalized_weight(
            &p,
            Function::Discrete(DiscreteFunction::unit(sp.clone())),
        )
        .unwrap();
        let fam = measures_from_forms(&[w]).unwrap();
        assert_eq!(fam.members().len(), 1);
        for (m, mu) in fam.members()[0].iter().zip(sp.weights()) {
            assert!((m - mu).abs() < 1e-12);
        }
        // C = μ(X)^{2/p} = 1
        assert!((fam.bound() - 1.0).abs() < 1e-12);

        // ψ = (1, 0) concentrates μ_Ω on the first atom
        let w = normalized_weight(
            &p,
            Function::Discrete(DiscreteFunction::from_reals(sp.clone(), &[1.0, 0.0]).unwrap()),
        )
        .unwrap();
        let fam = measures_from_forms(&[w]).unwrap();
        assert!(fam.members()[0][0] > 0.0);
        assert_eq!(fam.members()[0][1], 0.0);
    }

    #[test]
    fn extremal_member_makes_the_embedding_isometric() {
        // f = (1,2), masses (1,1), p = 4 → ‖Φ(f)‖ = 17^{1/4}
        let sp = DiscreteSpace::new(vec![1.0, 1.0]).unwrap();
        let p = p4();
        let f = DiscreteFunction::from_reals(sp.clone(), &[1.0, 2.0]).unwrap();
        let mut weights = vec![extremal_weight(&f, &p).unwrap()];
        let mut rng = sampling::rng(23);
        for _ in 0..5 {
            weights.push(random_ball_weight(&sp, &p, &mut rng).unwrap());
        }
        let rep = transform(&f, &weights, &p, 1).unwrap();
        let expected = 17f64.powf(0.25);
        assert!((rep.embedding_norm - expected).abs() / expected < 1e-9, "{rep:?}");
        assert!(rep.certified && rep.isometric && rep.injective);
        assert!(rep.multiplicative && rep.involutive);
        assert!(rep.gap.abs() < 1e-9);
    }

    #[test]
    fn missing_extremal_member_degrades_to_lower_bound() {
        let sp = DiscreteSpace::new(vec![1.0, 1.0]).unwrap();
        let p = p4();
        let f = DiscreteFunction::from_reals(sp.clone(), &[1.0, 2.0]).unwrap();
        let mut rng = sampling::rng(29);
        let weights: Vec<FormWeight> = (0..5)
            .map(|_| random_ball_weight(&sp, &p, &mut rng).unwrap())
            .collect();
        let rep = transform(&f, &weights, &p, 1).unwrap();
        assert!(!rep.certified);
        assert!(rep.embedding_norm <= rep.p_norm + 1e-9);
        assert!(rep.gap >= -1e-9);
    }

    #[test]
    fn unit_embeds_isometrically_with_its_extremal_weight() {
        let sp = DiscreteSpace::probability(3);
        let p = p4();
        let u = DiscreteFunction::unit(sp);
        let weights = vec![extremal_weight(&u, &p).unwrap()];
        let rep = transform(&u, &weights, &p, 0).unwrap();
        assert!(rep.certified && rep.isometric);
        assert!((rep.embedding_norm - 1.0).abs() < 1e-9);
    }

    #[test]
    fn member_norms_never_exceed_the_family_norm() {
        let sp = DiscreteSpace::new(vec![0.4, 0.6]).unwrap();
        let p = p4();
        let mut rng = sampling::rng(31);
        let weights: Vec<FormWeight> = (0..6)
            .map(|_| random_ball_weight(&sp, &p, &mut rng).unwrap())
            .collect();
        let fam = measures_from_forms(&weights).unwrap();
        for _ in 0..20 {
            let f = DiscreteFunction::new(sp.clone(), sampling::complex_vec(&mut rng, 2)).unwrap();
            let total = sup_norm(&f, &Exponent::TWO, &fam).unwrap();
            for m in fam.members() {
                assert!(fam.member_norm(&f, &Exponent::TWO, m) <= total + 1e-12);
            }
        }
    }

    #[test]
    fn family_serializes_with_bound() {
        let sp = DiscreteSpace::new(vec![1.0]).unwrap();
        let fam = MeasureFamily::new(sp, vec![vec![0.5]], 1.0).unwrap();
        let js = serde_json::to_string(&fam).unwrap();
        assert!(js.contains("\"C\":1.0"), "{js}");
        assert!(js.contains("\"members\":[[0.5]]"));
    }

    #[test]
    fn zero_function_handling() {
        let sp = DiscreteSpace::new(vec![1.0, 1.0]).unwrap();
        let p = p4();
        let z = DiscreteFunction::new(sp.clone(), vec![Complex64::new(0.0, 0.0); 2]).unwrap();
        let g = DiscreteFunction::from_reals(sp, &[1.0, 2.0]).unwrap();
        let weights = vec![extremal_weight(&g, &p).unwrap()];
        let rep = transform(&z, &weights, &p, 0).unwrap();
        assert!(rep.injective); // vacuous for the zero element
        assert!(!rep.certified);
        assert_eq!(rep.embedding_norm, 0.0);
    }
}
