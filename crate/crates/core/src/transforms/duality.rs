//! Time reversal, Arnold duality and the geometric chopping
//! reparametrizations.

use crate::algebra::lift::Cover;
use crate::algebra::matrix::Mat;
use crate::bruhat::{arnold_matrix, identify_cell_lift, jplus};
use crate::curves::{frenet, is_generic, lifted_endpoint, Curve, Jet, DEFAULT_GRID};
use crate::error::{Error, Result};

/// Step of the central differences used for `Λ′` and `Λ″`.
const LAMBDA_FD_STEP: [f64; 2] = [1e-4, 1e-3];

/// `γ^TR(t) = J₊ Qᵀ γ(1 − t)` where `Q` is the final Frenet frame.
pub fn time_reversal<const N: usize>(curve: &Curve<N>) -> Result<Curve<N>> {
    let q = frenet(curve, 1.0)?.frame;
    let m = jplus::<N>() * q.transpose();
    Ok(curve.reverse().rotate(&m).with_label(format!("{}^TR", curve.label())))
}

fn lambda_at<const N: usize>(curve: &Curve<N>, t: f64) -> Result<Mat<N>> {
    Ok(frenet(curve, t)?.log_derivative().to_matrix())
}

/// `(F, F′, F″, F‴)` of the Frenet frame at `t`, with the derivatives of `Λ`
/// taken by central differences.
fn frame_jet<const N: usize>(curve: &Curve<N>, t: f64) -> Result<[Mat<N>; 4]> {
    let f = frenet(curve, t)?.frame;
    let l = lambda_at(curve, t)?;
    let [h1, h2] = LAMBDA_FD_STEP;
    let l1 = (lambda_at(curve, t + h1)? - lambda_at(curve, t - h1)?).scaled(0.5 / h1);
    let l2 = (lambda_at(curve, t + h2)? + lambda_at(curve, t - h2)? - l.scaled(2.0)).scaled(1.0 / (h2 * h2));
    let l_sq = l * l;
    let d3 = l_sq * l + (l * l1).scaled(2.0) + l1 * l + l2;
    Ok([f, f * l, f * (l_sq + l1), f * d3])
}

/// `γ^AD(t) = AD(F_γ(t)) e₁ = Aᵀ F_γ(t) A e₁`.
///
/// The curve must be generic on the sampling grid; where the Frenet frame
/// cannot be computed the returned curve evaluates to NaN.
pub fn arnold_dual<const N: usize>(curve: &Curve<N>) -> Result<Curve<N>> {
    let report = is_generic(curve, DEFAULT_GRID);
    if !report.holds {
        return Err(Error::NotGeneric { t: report.witness });
    }
    let a = arnold_matrix::<N>().to_matrix();
    let at = a.transpose();
    let v = a.column(0);
    let inner = curve.clone();
    Ok(Curve::new(format!("{}^AD", curve.label()), move |t| match frame_jet(&inner, t) {
        Ok([f, f1, f2, f3]) => Jet {
            pos: (at * f).mul_vec(&v),
            d1: (at * f1).mul_vec(&v),
            d2: (at * f2).mul_vec(&v),
            d3: (at * f3).mul_vec(&v),
        },
        Err(_) => Jet { pos: [f64::NAN; N], d1: [f64::NAN; N], d2: [f64::NAN; N], d3: [f64::NAN; N] },
    }))
}

fn check_eps(eps: f64) -> Result<()> {
    if eps > 0.0 && eps < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("chopping parameter must lie in (0, 1), got {eps}")))
    }
}

/// `chop⁻_ε(γ)(t) = γ((1 − ε)t)`: the curve without its final piece.
pub fn chop_eps_minus<const N: usize>(curve: &Curve<N>, eps: f64) -> Result<Curve<N>> {
    check_eps(eps)?;
    let k = 1.0 - eps;
    Ok(curve.reparametrize(move |t| [k * t, k, 0.0, 0.0]).with_label(format!("chop-_{eps}({})", curve.label())))
}

/// `chop⁺_ε(γ)(t) = γ((1 − ε)t + ε)`: the curve without its initial piece.
pub fn chop_eps_plus<const N: usize>(curve: &Curve<N>, eps: f64) -> Result<Curve<N>> {
    check_eps(eps)?;
    let k = 1.0 - eps;
    Ok(curve
        .reparametrize(move |t| [k * t + eps, k, 0.0, 0.0])
        .with_label(format!("chop+_{eps}({})", curve.label())))
}

/// Lifted Frenet frame of `γ` at `t`, for a curve starting at the identity.
fn lifted_frame_at<const N: usize, S: Cover<N>>(curve: &Curve<N>, t: f64, steps: usize) -> Result<S> {
    let head = curve.reparametrize(move |s| [t * s, t, 0.0, 0.0]);
    lifted_endpoint::<N, S>(&head, steps)
}

/// Cell representative of the lifted frame at the new end of `chop⁻_ε(γ)`
/// (when `plus` is false) or the new start of `chop⁺_ε(γ)` (when `plus`).
pub fn chopped_cell<const N: usize, S: Cover<N>>(curve: &Curve<N>, eps: f64, plus: bool) -> Result<S> {
    check_eps(eps)?;
    let t = if plus { eps } else { 1.0 - eps };
    Ok(identify_cell_lift(lifted_frame_at::<N, S>(curve, t, DEFAULT_GRID)?)?.0)
}

/// The cell of [`chopped_cell`] once it no longer changes when `ε` halves,
/// starting from `eps` and stopping below `min_eps`. Returns the `ε` at
/// which the cell stabilized together with the representative.
pub fn stable_chopped_cell<const N: usize, S: Cover<N>>(
    curve: &Curve<N>,
    eps: f64,
    min_eps: f64,
    plus: bool,
) -> Result<(f64, S)> {
    let mut eps = eps;
    let mut prev: S = chopped_cell(curve, eps, plus)?;
    while eps / 2.0 >= min_eps {
        let next: S = chopped_cell(curve, eps / 2.0, plus)?;
        if next.distance(&prev) < 1e-9 {
            return Ok((eps, next));
        }
        eps /= 2.0;
        prev = next;
    }
    Err(Error::NoStableCell { h: eps })
}
