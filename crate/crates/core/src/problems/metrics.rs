use nalgebra::DVector;

use super::reference::ReferenceSolution;
use crate::assembly::{
    assemble_load, assemble_stiffness, ConstrainedSystem, EnergyForm, ScalarField, VolumeRule,
};
use crate::basis::Jet2;
use crate::solvers::TrialSolution;
use crate::{Error, Result};

/// `100 · (u(p) − ū(p)) / max|ū|` at the central and boundary probes.
pub fn relative_errors(
    u: impl Fn(&[f64]) -> f64,
    reference: &ReferenceSolution,
    central: &[f64],
    boundary: &[f64],
) -> Result<(f64, f64)> {
    let scale = reference.max_abs();
    if scale == 0.0 || !scale.is_finite() {
        return Err(Error::UndefinedMetric(format!("max |ū| = {scale}")));
    }
    let pct = |p: &[f64]| 100.0 * (u(p) - reference.value(p)) / scale;
    Ok((pct(central), pct(boundary)))
}

/// `max |u − ū|` over the reference sample grid.
pub fn sup_error(u: impl Fn(&[f64]) -> f64, reference: &ReferenceSolution) -> f64 {
    let dim = reference.domain().dim();
    reference
        .grid()
        .iter()
        .zip(reference.grid_values())
        .map(|(p, v)| (u(&p[..dim]) - v).abs())
        .fold(0.0, f64::max)
}

/// `J(a) = ½ aᵀKa + fᵀa` from assembled blocks.
pub fn system_energy(system: &ConstrainedSystem, coefficients: &DVector<f64>) -> f64 {
    0.5 * coefficients.dot(&(&system.stiffness * coefficients)) + system.load.dot(coefficients)
}

/// `J` at a trial solution, assembling `K` and `f` with the given rule.
pub fn energy_value(
    u: &TrialSolution,
    form: &EnergyForm,
    f: ScalarField,
    quad: &VolumeRule,
) -> Result<f64> {
    let k = assemble_stiffness(form, &u.basis, quad)?;
    let load = assemble_load(form, f, &u.basis, quad)?;
    let a = &u.coefficients;
    Ok(0.5 * a.dot(&(k * a)) + load.dot(a))
}

/// `J(u) = ½B(u, u) + σ∫fu` for an arbitrary function given by its jets.
pub fn functional_value(
    form: &EnergyForm,
    f: ScalarField,
    u: impl Fn(&[f64]) -> Jet2,
    quad: &VolumeRule,
) -> f64 {
    let sigma = form.load_sign.factor();
    quad.samples()
        .map(|(p, w)| {
            let j = u(p);
            w * (0.5 * form.integrand(&j, &j) + sigma * f(p) * j.value)
        })
        .sum()
}
