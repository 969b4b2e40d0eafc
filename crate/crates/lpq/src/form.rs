//! Weight-represented sesquilinear forms Ω(f, g) = ∫ f ḡ ψ dμ.
//!
//! For p ≥ 2 an admissible weight lives in the positive unit ball of
//! L^{p/(p−2)}, which makes the form bounded by the p-norm squared. For
//! p < 2 no weight produces a bounded form; constructing weights there is
//! allowed precisely to exhibit that divergence.

use crate::exponent::{Exponent, Rat};
use crate::quad;
use crate::report::{CheckItem, CheckReport};
use crate::sampling;
use crate::space::{
    rat_f64, DiscreteFunction, Function, Support, SymbolicDomain, SymbolicFunction,
};
use crate::{Error, Result};
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use rand_distr::StandardNormal;

/// Tolerance on the unit-ball membership check; the weight norm is a float.
const BALL_TOL: f64 = 1e-9;

/// Outcome of evaluating a form: a finite value, or divergence evidence as
/// the increasing sequence of truncated integrals.
#[derive(Clone, Debug)]
pub enum EvalOutcome {
    Finite(Complex64),
    Divergent { truncations: Vec<f64> },
}

impl EvalOutcome {
    pub fn finite_value(&self) -> Option<Complex64> {
        match self {
            EvalOutcome::Finite(v) => Some(*v),
            EvalOutcome::Divergent { .. } => None,
        }
    }

    pub fn is_divergent(&self) -> bool {
        matches!(self, EvalOutcome::Divergent { .. })
    }
}

/// A nonnegative weight ψ together with the ambient exponent p. For p ≥ 2
/// construction enforces ||ψ||_{p/(p−2)} ≤ 1; for p < 2 the ball constraint
/// is vacuous and skipped.
#[derive(Clone, Debug)]
pub struct FormWeight {
    p: Exponent,
    psi: Function,
}

impl FormWeight {
    pub fn new(p: Exponent, psi: Function) -> Result<Self> {
        if let Function::Discrete(d) = &psi {
            if !d.is_nonnegative_real() {
                return Err(Error::Invalid("weights must be nonnegative".into()));
            }
        }
        if p >= Exponent::TWO {
            let gamma = p.gamma_exponent()?;
            let n = psi.norm(&gamma);
            if n > 1.0 + BALL_TOL {
                return Err(Error::Invalid(format!(
                    "||psi||_{gamma} = {n} exceeds the unit ball"
                )));
            }
        }
        Ok(FormWeight { p, psi })
    }

    pub fn p(&self) -> &Exponent {
        &self.p
    }

    pub fn psi(&self) -> &Function {
        &self.psi
    }

    /// Ω(f, g) = ∫ f ḡ ψ dμ. Discrete evaluation is a finite sum; symbolic
    /// evaluation decides membership of f g ψ in L^1 exactly and reports
    /// truncation evidence when it diverges.
    pub fn evaluate(&self, f: &Function, g: &Function) -> Result<EvalOutcome> {
        match (&self.psi, f, g) {
            (Function::Discrete(psi), Function::Discrete(f), Function::Discrete(g)) => {
                if f.space() != psi.space() || g.space() != psi.space() {
                    return Err(Error::Backend(
                        "form arguments live on a different space".into(),
                    ));
                }
                let mut acc = Complex64::zero();
                for i in 0..psi.space().len() {
                    acc += f.values()[i]
                        * g.values()[i].conj()
                        * psi.values()[i].re
                        * psi.space().weights()[i];
                }
                Ok(EvalOutcome::Finite(acc))
            }
            (Function::Symbolic(psi), Function::Symbolic(f), Function::Symbolic(g)) => {
                // all three are positive, so ḡ = g and the product is again
                // a positive power sum
                let h = f.multiply(g)?.multiply(psi)?;
                if h.in_lp(&Exponent::ONE) {
                    Ok(EvalOutcome::Finite(Complex64::new(exact_integral(&h), 0.0)))
                } else {
                    Ok(EvalOutcome::Divergent {
                        truncations: truncated_integrals(&h, 60),
                    })
                }
            }
            _ => Err(Error::Backend(
                "form arguments must match the weight's backend".into(),
            )),
        }
    }

    /// Ω(f, f) for a symbolic f, as the full truncation sequence regardless
    /// of convergence; an independent route to the membership decision.
    pub fn truncated_diagonal(&self, f: &SymbolicFunction, max_k: u32) -> Result<Vec<f64>> {
        let psi = self.psi.as_symbolic()?;
        let h = f.multiply(f)?.multiply(psi)?;
        Ok(truncated_integrals(&h, max_k))
    }
}

/// ∫ h dμ for a positive power sum known to be in L^1: the exact sum of the
/// per-term closed forms.
pub fn exact_integral(h: &SymbolicFunction) -> f64 {
    h.terms()
        .iter()
        .map(|t| {
            let c = rat_f64(t.coeff);
            let a = rat_f64(t.exponent);
            match t.support {
                Support::NearZero => c / (a + 1.0),
                Support::Tail => c / (-a - 1.0),
            }
        })
        .sum()
}

/// Truncated integrals of a positive power sum over the annuli
/// (2^{-k}, 1] ∪ [1, 2^{k}), k = 1..max_k, via exact antiderivatives.
/// Stops once the blow-up threshold is crossed.
pub fn truncated_integrals(h: &SymbolicFunction, max_k: u32) -> Vec<f64> {
    let mut out = Vec::new();
    for k in 1..=max_k {
        let eps = 2f64.powi(-(k as i32));
        let big = 2f64.powi(k as i32);
        let total: f64 = h
            .terms()
            .iter()
            .map(|t| {
                let c = rat_f64(t.coeff);
                let a = rat_f64(t.exponent);
                match t.support {
                    Support::NearZero => quad::power_integral(c, a, eps, 1.0),
                    Support::Tail => quad::power_integral(c, a, 1.0, big),
                }
            })
            .sum();
        out.push(total);
        if total > quad::BLOWUP_THRESHOLD {
            break;
        }
    }
    out
}

/// The weight whose form attains ||f||_p^2 on the diagonal:
/// ψ = ||f||_p^{2−p} |f|^{p−2}. Sits exactly on the unit sphere of
/// L^{p/(p−2)}. Discrete backend only; requires finite p ≥ 2 and f ≠ 0.
pub fn extremal_weight(f: &DiscreteFunction, p: &Exponent) -> Result<FormWeight> {
    let pr = match p {
        Exponent::Infinity => {
            return Err(Error::ExponentRange("extremal weight needs finite p".into()))
        }
        Exponent::Finite(pr) => rat_f64(*pr),
    };
    if pr < 2.0 {
        return Err(Error::ExponentRange(format!(
            "extremal weight needs p >= 2, got {p}"
        )));
    }
    if f.is_zero() {
        return Err(Error::Invalid("extremal weight of the zero function".into()));
    }
    let np = f.norm(p);
    let vals: Vec<f64> = f
        .values()
        .iter()
        .map(|v| np.powf(2.0 - pr) * v.norm().powf(pr - 2.0))
        .collect();
    let psi = DiscreteFunction::from_reals(f.space().clone(), &vals)?;
    FormWeight::new(*p, Function::Discrete(psi))
}

/// Projects a nonnegative candidate weight into the unit ball of
/// L^{p/(p−2)} by scaling when necessary.
pub fn normalized_weight(p: &Exponent, psi: Function) -> Result<FormWeight> {
    let gamma = p.gamma_exponent()?;
    let n = psi.norm(&gamma);
    let scaled = if n > 1.0 {
        match psi {
            Function::Discrete(d) => {
                Function::Discrete(d.scale(Complex64::new(1.0 / n, 0.0)))
            }
            Function::Symbolic(s) => {
                // float scale as an exact rational approximation
                let denom = 1_000_000_000i64;
                let num = (denom as f64 / n).floor() as i64;
                Function::Symbolic(s.scale(Rat::new(num.max(1), denom))?)
            }
        }
    } else {
        psi
    };
    FormWeight::new(*p, scaled)
}

/// A random weight drawn in the unit ball of L^{p/(p−2)}.
pub fn random_ball_weight(
    space: &crate::space::DiscreteSpace,
    p: &Exponent,
    rng: &mut rand_chacha::ChaCha8Rng,
) -> Result<FormWeight> {
    let vals: Vec<f64> = (0..space.len())
        .map(|_| {
            let x: f64 = rng.sample(StandardNormal);
            x.abs()
        })
        .collect();
    let psi = DiscreteFunction::from_reals(space.clone(), &vals)?;
    let gamma = p.gamma_exponent()?;
    let n = psi.norm(&gamma);
    // draw a radius so the sample is strictly inside the ball
    let r: f64 = rng.gen::<f64>();
    let psi = psi.scale(Complex64::new(r / n.max(1e-300), 0.0));
    FormWeight::new(*p, Function::Discrete(psi))
}

/// Checks that a weight-represented form is sesquilinear, positive,
/// hermitian, invariant under moving a bounded factor across the arguments,
/// and (for p ≥ 2) bounded by ||f||_p ||g||_p.
pub fn check_form_axioms(w: &FormWeight, seed: u64) -> Result<CheckReport> {
    match w.psi() {
        Function::Discrete(_) => check_form_axioms_discrete(w, seed),
        Function::Symbolic(psi) => check_form_axioms_symbolic(w, psi.domain()),
    }
}

fn eval_finite(w: &FormWeight, f: &Function, g: &Function) -> Result<Complex64> {
    match w.evaluate(f, g)? {
        EvalOutcome::Finite(v) => Ok(v),
        EvalOutcome::Divergent { .. } => Err(Error::Domain(
            "form diverged during an axiom check".into(),
        )),
    }
}

fn check_form_axioms_discrete(w: &FormWeight, seed: u64) -> Result<CheckReport> {
    let space = w.psi().as_discrete()?.space().clone();
    let n = space.len();
    let p = *w.p();
    let mut rng = sampling::rng(seed);
    let tol = 1e-9;

    let mut sesq = 0.0f64;
    let mut pos = 0.0f64;
    let mut herm = 0.0f64;
    let mut inv = 0.0f64;
    let mut bound = 0.0f64;
    for _ in 0..20 {
        let f = Function::Discrete(
            DiscreteFunction::new(space.clone(), sampling::complex_vec(&mut rng, n)).unwrap(),
        );
        let g = Function::Discrete(
            DiscreteFunction::new(space.clone(), sampling::complex_vec(&mut rng, n)).unwrap(),
        );
        let h = Function::Discrete(
            DiscreteFunction::new(space.clone(), sampling::complex_vec(&mut rng, n)).unwrap(),
        );
        let phi = Function::Discrete(
            DiscreteFunction::new(space.clone(), sampling::complex_vec(&mut rng, n)).unwrap(),
        );
        let c = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
        let d = Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));

        // additivity + conjugate homogeneity in one identity:
        // Ω(cf + h, dg) = c d̄ Ω(f,g) + d̄ Ω(h,g)
        let cf = Function::Discrete(f.as_discrete()?.scale(c));
        let dg = Function::Discrete(g.as_discrete()?.scale(d));
        let lhs = eval_finite(w, &cf.add(&h)?, &dg)?;
        let rhs = c * d.conj() * eval_finite(w, &f, &g)?
            + d.conj() * eval_finite(w, &h, &g)?;
        sesq = sesq.max((lhs - rhs).norm());

        let diag = eval_finite(w, &f, &f)?;
        pos = pos.max((-diag.re).max(diag.im.abs()));

        herm = herm.max((eval_finite(w, &g, &f)? - eval_finite(w, &f, &g)?.conj()).norm());

        // Ω(fφ, g) = Ω(f, g φ*)
        let lhs = eval_finite(w, &f.multiply(&phi)?, &g)?;
        let rhs = eval_finite(w, &f, &g.multiply(&phi.involution())?)?;
        inv = inv.max((lhs - rhs).norm());

        if p >= Exponent::TWO {
            let slack = eval_finite(w, &f, &g)?.norm() - f.norm(&p) * g.norm(&p);
            bound = bound.max(slack);
        }
    }

    let mut items = vec![
        verdict("sesquilinearity", sesq, tol),
        verdict("positivity", pos, tol),
        verdict("hermitian_symmetry", herm, tol),
        verdict("module_invariance", inv, tol),
    ];
    if p >= Exponent::TWO {
        items.push(verdict("holder_bound", bound, tol));
    }
    Ok(CheckReport::new(items))
}

fn check_form_axioms_symbolic(w: &FormWeight, domain: SymbolicDomain) -> Result<CheckReport> {
    // a fixed bounded corpus keeps every product integrable whenever ψ is
    let corpus: Vec<SymbolicFunction> = [(1, 1, 0, 1), (2, 1, 1, 4), (1, 2, 1, 2)]
        .iter()
        .map(|&(cn, cd, an, ad)| {
            SymbolicFunction::single(domain, Rat::new(cn, cd), Rat::new(an, ad), Support::NearZero)
        })
        .collect::<Result<_>>()?;
    let tol = 1e-9;

    let mut add = 0.0f64;
    let mut scale = 0.0f64;
    let mut pos = 0.0f64;
    let mut herm = 0.0f64;
    for f in &corpus {
        for g in &corpus {
            let ff = Function::Symbolic(f.clone());
            let gg = Function::Symbolic(g.clone());
            let sum = Function::Symbolic(f.add(g)?);
            let lhs = eval_finite(w, &sum, &gg)?;
            let rhs = eval_finite(w, &ff, &gg)? + eval_finite(w, &gg, &gg)?;
            add = add.max((lhs - rhs).norm());

            let c = Rat::new(3, 2);
            let lhs = eval_finite(w, &Function::Symbolic(f.scale(c)?), &gg)?;
            let rhs = eval_finite(w, &ff, &gg)? * rat_f64(c);
            scale = scale.max((lhs - rhs).norm());

            herm = herm.max((eval_finite(w, &gg, &ff)? - eval_finite(w, &ff, &gg)?.conj()).norm());
        }
        let diag = eval_finite(w, &Function::Symbolic(f.clone()), &Function::Symbolic(f.clone()))?;
        pos = pos.max((-diag.re).max(diag.im.abs()));
    }

    Ok(CheckReport::new(vec![
        verdict("additivity", add, tol),
        verdict("positive_homogeneity", scale, tol),
        verdict("positivity", pos, tol),
        verdict("hermitian_symmetry", herm, tol),
    ]))
}

fn verdict(name: &str, worst: f64, tol: f64) -> CheckItem {
    if worst <= tol {
        CheckItem::pass(name, worst.max(0.0))
    } else {
        CheckItem::fail(name, worst, "random sample")
    }
}

/// A discrete form is determined by its values: comparing two weights on all
/// indicator pairs recovers ψ_i μ_i atom by atom.
pub fn uniqueness_check(a: &FormWeight, b: &FormWeight, tol: f64) -> Result<CheckReport> {
    let da = a.psi().as_discrete()?;
    let db = b.psi().as_discrete()?;
    if da.space() != db.space() {
        return Err(Error::Backend("weights live on different spaces".into()));
    }
    let space = da.space().clone();
    let mut worst = 0.0f64;
    let mut witness = None;
    for i in 0..space.len() {
        for j in 0..space.len() {
            let ei = Function::Discrete(DiscreteFunction::indicator(space.clone(), i));
            let ej = Function::Discrete(DiscreteFunction::indicator(space.clone(), j));
            let va = eval_finite(a, &ei, &ej)?;
            let vb = eval_finite(b, &ei, &ej)?;
            let d = (va - vb).norm();
            if d > worst {
                worst = d;
                witness = Some(format!("indicator pair ({i}, {j})"));
            }
        }
    }
    // forms agree on indicators ⇔ the weights agree atomwise
    let weights_agree = da
        .values()
        .iter()
        .zip(db.values())
        .all(|(x, y)| (x - y).norm() <= tol);
    let item = if (worst <= tol) == weights_agree {
        CheckItem::pass("weight_determined_by_form", worst)
    } else {
        CheckItem::fail(
            "weight_determined_by_form",
            worst,
            witness.unwrap_or_default(),
        )
    };
    Ok(CheckReport::new(vec![item]))
}

/// Divergence witness for p < 2: f = x^{−1/2} on (0, 1] lies in L^p (since
/// p/2 < 1) yet Ω(f, f) diverges for the weight ψ = x^{−1}; the diagonal
/// truncations grow like 2^k.
#[derive(Clone, Debug)]
pub struct DivergenceWitness {
    pub f: SymbolicFunction,
    pub weight: FormWeight,
    pub truncations: Vec<f64>,
}

pub fn divergence_witness(p: &Exponent) -> Result<DivergenceWitness> {
    if *p >= Exponent::TWO {
        return Err(Error::ExponentRange(format!(
            "every admissible form is bounded for p = {p} >= 2"
        )));
    }
    let one = Rat::from_integer(1);
    let f = SymbolicFunction::single(
        SymbolicDomain::UnitInterval,
        one,
        Rat::new(-1, 2),
        Support::NearZero,
    )?;
    debug_assert!(f.in_lp(p));
    let psi = SymbolicFunction::single(
        SymbolicDomain::UnitInterval,
        one,
        Rat::from_integer(-1),
        Support::NearZero,
    )?;
    let weight = FormWeight::new(*p, Function::Symbolic(psi))?;
    let truncations = weight.truncated_diagonal(&f, 40)?;
    Ok(DivergenceWitness {
        f,
        weight,
        truncations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::DiscreteSpace;

    fn rat(n: i64, d: i64) -> Rat {
        Rat::new(n, d)
    }

    #[test]
    fn extremal_weight_attains_the_p_norm() {
        let sp = DiscreteSpace::new(vec![0.25, 0.75]).unwrap();
        let f = DiscreteFunction::new(
            sp,
            vec![Complex64::new(2.0, 1.0), Complex64::new(0.0, -1.0)],
        )
        .unwrap();
        let p = Exponent::from_int(4).unwrap();
        let w = extremal_weight(&f, &p).unwrap();
        // the weight sits on the unit sphere of L^{p/(p-2)} = L^2
        let gamma = p.gamma_exponent().unwrap();
        assert!((w.psi().norm(&gamma) - 1.0).abs() < 1e-12);
        // and Ω(f, f) = ||f||_p^2
        let v = w
            .evaluate(&Function::Discrete(f.clone()), &Function::Discrete(f.clone()))
            .unwrap()
            .finite_value()
            .unwrap();
        let np = f.norm(&p);
        assert!((v.re - np * np).abs() < 1e-12);
        assert!(v.im.abs() < 1e-15);
    }

    #[test]
    fn extremal_weight_at_p_two_is_the_unit() {
        let sp = DiscreteSpace::new(vec![0.5, 0.5]).unwrap();
        let f = DiscreteFunction::from_reals(sp, &[3.0, 0.0]).unwrap();
        let w = extremal_weight(&f, &Exponent::TWO).unwrap();
        let vals = w.psi().as_discrete().unwrap().values();
        assert!(vals.iter().all(|v| (v.re - 1.0).abs() < 1e-15));
    }

    #[test]
    fn ball_check_rejects_oversized_weights() {
        let sp = DiscreteSpace::new(vec![1.0]).unwrap();
        let big = Function::Discrete(DiscreteFunction::from_reals(sp.clone(), &[2.0]).unwrap());
        let p = Exponent::from_int(4).unwrap();
        assert!(FormWeight::new(p, big.clone()).is_err());
        // normalization rescales it into the ball
        let w = normalized_weight(&p, big).unwrap();
        let gamma = p.gamma_exponent().unwrap();
        assert!(w.psi().norm(&gamma) <= 1.0 + 1e-12);
        // for p < 2 the ball constraint is skipped by design
        let big = Function::Discrete(DiscreteFunction::from_reals(sp, &[2.0]).unwrap());
        assert!(FormWeight::new(Exponent::ratio(3, 2).unwrap(), big).is_ok());
    }

    #[test]
    fn discrete_axioms_pass() {
        let sp = DiscreteSpace::new(vec![0.2, 0.3, 0.5]).unwrap();
        let psi = DiscreteFunction::from_reals(sp, &[0.4, 0.2, 0.1]).unwrap();
        let p = Exponent::from_int(4).unwrap();
        let w = normalized_weight(&p, Function::Discrete(psi)).unwrap();
        let rep = check_form_axioms(&w, 3).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn symbolic_axioms_pass() {
        // ψ = x^{1/2} on (0,1], inside the L^2 ball for p = 4
        let psi = SymbolicFunction::single(
            SymbolicDomain::UnitInterval,
            rat(1, 1),
            rat(1, 2),
            Support::NearZero,
        )
        .unwrap();
        let p = Exponent::from_int(4).unwrap();
        let w = FormWeight::new(p, Function::Symbolic(psi)).unwrap();
        let rep = check_form_axioms(&w, 0).unwrap();
        assert!(rep.all_passed(), "{rep:?}");
    }

    #[test]
    fn symbolic_evaluation_closed_form() {
        // f = x^{-1/4}, g = x^{-1/8}, ψ = x^{1/2}:
        // ∫_0^1 x^{-1/4-1/8+1/2} = 1 / (9/8) = 8/9
        let dom = SymbolicDomain::UnitInterval;
        let f = Function::Symbolic(
            SymbolicFunction::single(dom, rat(1, 1), rat(-1, 4), Support::NearZero).unwrap(),
        );
        let g = Function::Symbolic(
            SymbolicFunction::single(dom, rat(1, 1), rat(-1, 8), Support::NearZero).unwrap(),
        );
        let psi =
            SymbolicFunction::single(dom, rat(1, 1), rat(1, 2), Support::NearZero).unwrap();
        let w = FormWeight::new(Exponent::from_int(4).unwrap(), Function::Symbolic(psi)).unwrap();
        let v = w.evaluate(&f, &g).unwrap().finite_value().unwrap();
        assert!((v.re - 8.0 / 9.0).abs() < 1e-14, "got {}", v.re);
    }

    #[test]
    fn uniqueness_distinguishes_weights() {
        let sp = DiscreteSpace::new(vec![0.5, 0.5]).unwrap();
        let p = Exponent::from_int(4).unwrap();
        let a = normalized_weight(
            &p,
            Function::Discrete(DiscreteFunction::from_reals(sp.clone(), &[0.3, 0.1]).unwrap()),
        )
        .unwrap();
        let b = normalized_weight(
            &p,
            Function::Discrete(DiscreteFunction::from_reals(sp, &[0.1, 0.3]).unwrap()),
        )
        .unwrap();
        let same = uniqueness_check(&a, &a, 1e-12).unwrap();
        assert!(same.all_passed());
        assert!(same.worst_slack() <= 1e-12);
        let diff = uniqueness_check(&a, &b, 1e-12).unwrap();
        assert!(diff.all_passed()); // consistent: forms differ and weights differ
        assert!(diff.worst_slack() > 1e-3);
    }

    #[test]
    fn divergence_witness_blows_up() {
        for p in [Exponent::ONE, Exponent::ratio(3, 2).unwrap(), Exponent::ratio(9, 5).unwrap()] {
            let w = divergence_witness(&p).unwrap();
            assert!(w.f.in_lp(&p));
            // truncations are increasing and cross 1e6 well before k = 40
            assert!(w.truncations.windows(2).all(|x| x[1] > x[0]));
            assert!(
                w.truncations.last().unwrap() > &1e6,
                "only reached {:?}",
                w.truncations.last()
            );
        }
        assert!(divergence_witness(&Exponent::TWO).is_err());
    }

    #[test]
    fn truncated_diagonal_matches_closed_form() {
        // ψ = x^{-1}, f = x^{-1/2}: ∫_eps^1 x^{-2} dx = 1/eps − 1
        let w = divergence_witness(&Exponent::ONE).unwrap();
        for (k, v) in w.truncations.iter().enumerate() {
            let eps = 2f64.powi(-(k as i32 + 1));
            let expected = 1.0 / eps - 1.0;
            assert!((v - expected).abs() / expected.max(1.0) < 1e-12);
        }
    }
}
