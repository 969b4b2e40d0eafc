//! The α, β and γ norms, each computed two independent ways: by closed
//! form and by optimization over the admissible form set.
//!
//! Conventions: α(f) = sup √Ω(f,f), β(f) = sup |Ω(fφ, φ)| over ‖φ‖_∞ ≤ 1,
//! γ(f)² = sup Ω(f,f)/Ω(u,u); all sups range over weights in the positive
//! unit ball of L^{p/(p−2)}.

use crate::exponent::{Exponent, Rat};
use crate::form::{extremal_weight, random_ball_weight, EvalOutcome, FormWeight};
use crate::sampling;
use crate::space::{rat_f64, Function};
use crate::{Error, Result};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Closed,
    Optimize,
}

/// Value of one norm computation, with the optimizer's witness and its gap
/// to the closed form.
#[derive(Clone, Debug, Serialize)]
pub struct NormResult {
    pub value: f64,
    pub mode: Mode,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attained_at: Option<String>,
    /// closed-form value minus the optimizer value (0 in closed mode).
    pub gap: f64,
}

fn require_p_at_least_two(p: &Exponent) -> Result<()> {
    if *p < Exponent::TWO {
        return Err(Error::ExponentRange(format!(
            "the seminorms need p >= 2, got {p}"
        )));
    }
    Ok(())
}

fn half(p: &Exponent) -> Exponent {
    match p {
        Exponent::Infinity => Exponent::Infinity,
        // p >= 2 keeps p/2 >= 1
        Exponent::Finite(r) => Exponent::Finite(r / Rat::from_integer(2)),
    }
}

/// α(f): ‖f‖_p in closed mode; in optimize mode the sup of √Ω(f,f) over the
/// extremal weight of f plus seeded random ball weights (discrete backend).
pub fn alpha_norm(f: &Function, p: &Exponent, mode: Mode, seed: u64) -> Result<NormResult> {
    require_p_at_least_two(p)?;
    let closed = f.norm(p);
    match mode {
        Mode::Closed => Ok(NormResult {
            value: closed,
            mode,
            attained_at: None,
            gap: 0.0,
        }),
        Mode::Optimize => {
            let d = f.as_discrete()?;
            if d.is_zero() {
                return Ok(NormResult {
                    value: 0.0,
                    mode,
                    attained_at: Some("zero function".into()),
                    gap: 0.0,
                });
            }
            if p.is_infinite() {
                return Err(Error::ExponentRange(
                    "the alpha optimizer needs finite p".into(),
                ));
            }
            let mut best = 0.0f64;
            let mut attained = String::from("extremal weight");
            let mut consider = |w: &FormWeight, label: &str, best: &mut f64| -> Result<()> {
                let v = diag(w, f)?;
                if v > *best {
                    *best = v;
                    attained = label.to_string();
                }
                Ok(())
            };
            let w = extremal_weight(d, p)?;
            consider(&w, "extremal weight", &mut best)?;
            let mut rng = sampling::rng(seed);
            for k in 0..200 {
                let w = random_ball_weight(d.space(), p, &mut rng)?;
                consider(&w, &format!("random ball sample {k}"), &mut best)?;
            }
            Ok(NormResult {
                value: best,
                mode,
                attained_at: Some(attained),
                gap: closed - best,
            })
        }
    }
}

fn diag(w: &FormWeight, f: &Function) -> Result<f64> {
    match w.evaluate(f, f)? {
        EvalOutcome::Finite(v) => Ok(v.re.max(0.0).sqrt()),
        EvalOutcome::Divergent { .. } => Err(Error::Domain("diagonal diverged".into())),
    }
}

/// ‖g⁺‖_{p/2} as the exact inner maximum of Σ g ψ μ over nonnegative ψ in
/// the unit ball of L^{(p/2)'}.
fn dual_positive_part(g: &[f64], masses: &[f64], p: &Exponent) -> f64 {
    let ph = half(p);
    match ph {
        Exponent::Infinity => g.iter().fold(0.0f64, |m, &x| m.max(x)),
        Exponent::Finite(r) => {
            let e = rat_f64(r);
            let sum: f64 = g
                .iter()
                .zip(masses)
                .filter(|(x, _)| **x > 0.0)
                .map(|(x, m)| x.powf(e) * m)
                .sum();
            sum.powf(1.0 / e)
        }
    }
}

/// β(f). Closed mode is defined for real f as max(‖f⁺‖_{p/2}, ‖f⁻‖_{p/2})
/// (equal to ‖f‖_{p/2} when f ≥ 0); complex f has no asserted closed form.
/// Optimize mode (discrete) maximizes |Σ f h ψ μ| over h = |φ|² ∈ [0,1]^n
/// and ball weights ψ, with the inner ψ-maximization done exactly by the
/// dual-norm formula and the phase handled by a θ-scan.
pub fn beta_norm(f: &Function, p: &Exponent, mode: Mode, seed: u64) -> Result<NormResult> {
    require_p_at_least_two(p)?;
    let ph = half(p);
    match mode {
        Mode::Closed => {
            let value = match f {
                Function::Symbolic(s) => s.norm(&ph), // symbolic functions are ≥ 0
                Function::Discrete(d) => {
                    if d.values().iter().any(|v| v.im != 0.0) {
                        return Err(Error::Invalid(
                            "no closed beta form for complex functions; use optimize".into(),
                        ));
                    }
                    let pos: Vec<f64> =
                        d.values().iter().map(|v| v.re.max(0.0)).collect();
                    let neg: Vec<f64> =
                        d.values().iter().map(|v| (-v.re).max(0.0)).collect();
                    let masses = d.space().weights();
                    dual_positive_part(&pos, masses, p).max(dual_positive_part(&neg, masses, p))
                }
            };
            Ok(NormResult {
                value,
                mode,
                attained_at: None,
                gap: 0.0,
            })
        }
        Mode::Optimize => {
            let d = f.as_discrete()?;
            let masses = d.space().weights().to_vec();
            let n = masses.len();
            let real = d.values().iter().all(|v| v.im == 0.0);

            let mut best = 0.0f64;
            let mut attained = String::new();

            // θ-scan: for each phase, h and ψ are solved exactly, so the
            // objective reduces to ‖(Re e^{−iθ} f)⁺‖_{p/2}
            let theta_value = |theta: f64| -> f64 {
                let rot: Vec<f64> = d
                    .values()
                    .iter()
                    .map(|v| (v * num_complex::Complex64::from_polar(1.0, -theta)).re)
                    .collect();
                dual_positive_part(&rot, &masses, p)
            };
            let mut rng = sampling::rng(seed);
            let mut thetas: Vec<f64> = (0..256)
                .map(|k| k as f64 / 256.0 * std::f64::consts::TAU)
                .collect();
            for _ in 0..64 {
                thetas.push(rand::Rng::gen::<f64>(&mut rng) * std::f64::consts::TAU);
            }
            let mut best_theta = 0.0;
            for t in thetas {
                let v = theta_value(t);
                if v > best {
                    best = v;
                    best_theta = t;
                    attained = format!("phase {t:.6}");
                }
            }
            // local refinement around the best phase
            let mut step = std::f64::consts::TAU / 256.0;
            for _ in 0..60 {
                for cand in [best_theta - step, best_theta + step] {
                    let v = theta_value(cand);
                    if v > best {
                        best = v;
                        best_theta = cand;
                        attained = format!("phase {cand:.6}");
                    }
                }
                step *= 0.5;
            }

            // vertex exhaustion over h ∈ {0,1}^n for small real instances:
            // the objective is linear in h, so vertices suffice
            if real && n <= 12 {
                for mask in 0u32..(1 << n) {
                    let g: Vec<f64> = d
                        .values()
                        .iter()
                        .enumerate()
                        .map(|(i, v)| if mask >> i & 1 == 1 { v.re } else { 0.0 })
                        .collect();
                    let pos = dual_positive_part(&g, &masses, p);
                    let neg_g: Vec<f64> = g.iter().map(|x| -x).collect();
                    let neg = dual_positive_part(&neg_g, &masses, p);
                    let v = pos.max(neg);
                    if v > best {
                        best = v;
                        attained = format!("vertex mask {mask:#b}");
                    }
                }
            }

            let gap = if real {
                beta_norm(f, p, Mode::Closed, seed)?.value - best
            } else {
                0.0
            };
            Ok(NormResult {
                value: best,
                mode,
                attained_at: Some(attained),
                gap,
            })
        }
    }
}

/// γ(f): ‖f‖_∞ in closed mode (∞ for unbounded symbolic f). Optimize mode
/// (discrete) takes √ of the sup of the ψ-weighted averages of |f|², which
/// is attained at the indicator of a maximal atom.
pub fn gamma_norm(f: &Function, p: &Exponent, mode: Mode, seed: u64) -> Result<NormResult> {
    require_p_at_least_two(p)?;
    let closed = f.norm(&Exponent::Infinity);
    match mode {
        Mode::Closed => Ok(NormResult {
            value: closed,
            mode,
            attained_at: None,
            gap: 0.0,
        }),
        Mode::Optimize => {
            let d = f.as_discrete()?;
            let masses = d.space().weights();
            let n = masses.len();
            let sq: Vec<f64> = d.values().iter().map(|v| v.norm_sqr()).collect();
            let ratio = |psi: &[f64]| -> f64 {
                let num: f64 = sq.iter().zip(psi).zip(masses).map(|((s, w), m)| s * w * m).sum();
                let den: f64 = psi.iter().zip(masses).map(|(w, m)| w * m).sum();
                if den == 0.0 {
                    0.0
                } else {
                    num / den
                }
            };
            let mut best = 0.0f64;
            let mut attained = String::new();
            for i in 0..n {
                let mut psi = vec![0.0; n];
                psi[i] = 1.0;
                let v = ratio(&psi);
                if v > best {
                    best = v;
                    attained = format!("indicator of atom {i}");
                }
            }
            let mut rng = sampling::rng(seed);
            for k in 0..100 {
                let psi = sampling::nonneg_vec(&mut rng, n);
                let v = ratio(&psi);
                if v > best {
                    best = v;
                    attained = format!("random weight {k}");
                }
            }
            let value = best.sqrt();
            Ok(NormResult {
                value,
                mode,
                attained_at: Some(attained),
                gap: closed - value,
            })
        }
    }
}

/// Membership in the γ-set: γ(f) < ∞. Always true on the discrete backend;
/// decided exactly from exponent signs on the symbolic one.
pub fn gamma_membership(f: &Function, p: &Exponent) -> Result<bool> {
    require_p_at_least_two(p)?;
    Ok(match f {
        Function::Discrete(_) => true,
        Function::Symbolic(s) => s.is_bounded(),
    })
}
