use crate::{MeasureError, Result};

/// Change in state value, `sv_now - sv_prev`; positive means improvement.
///
/// Returns `None` ("NA") when either side is unknown, which callers must keep
/// distinct from a genuine zero change.
pub fn state_value_delta(sv_now: Option<f64>, sv_prev: Option<f64>) -> Option<f64> {
    Some(sv_now? - sv_prev?)
}

/// Value obtained per unit of syntactic content.
pub fn efficiency(value: f64, c_syn: f64) -> Result<f64> {
    if !(c_syn > 0.0) || !c_syn.is_finite() {
        return Err(MeasureError::ZeroContent(c_syn));
    }
    Ok(value / c_syn)
}
