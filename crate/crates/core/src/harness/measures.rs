use crate::error::{Error, Result};

/// Per-iteration death probability that removes the fraction `death_fraction`
/// of the swarm, in expectation, after `t` iterations.
pub fn death_fraction_to_prob(death_fraction: f64, t: u32) -> Result<f64> {
    if !(0.0..1.0).contains(&death_fraction) {
        return Err(Error::invalid(format!("death fraction {death_fraction} outside [0, 1)")));
    }
    if t == 0 {
        return Err(Error::invalid("death horizon must be at least one iteration"));
    }
    Ok(1.0 - (1.0 - death_fraction).powf(1.0 / t as f64))
}

/// `alpha * winners / winners_max - (1 - alpha) * gs_time / gs_time_max`,
/// absent when the cell never converged.
pub fn trade_off(
    winners: f64,
    gs_time: Option<f64>,
    winners_max: f64,
    gs_time_max: f64,
    alpha: f64,
) -> Result<Option<f64>> {
    if winners_max.is_nan() || gs_time_max.is_nan() || winners_max <= 0.0 || gs_time_max <= 0.0 {
        return Err(Error::invalid("trade-off normalizers must be positive"));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!("alpha {alpha} outside [0, 1]")));
    }
    Ok(gs_time.map(|t| alpha * (winners / winners_max) - (1.0 - alpha) * (t / gs_time_max)))
}
