use crate::RcError;

/// Estimated demand per relevant room, `v̂_j / (v̂_j + v̂_{j+3})` (zero when
/// both estimates are zero), and the index of the largest; ties go to the
/// earliest index, i.e. the current room first.
pub fn estimate_demand(v: &[f64; 6]) -> Result<([f64; 3], usize), RcError> {
    let mut phi = [0.0; 3];
    let mut any = false;
    for j in 0..3 {
        let den = v[j] + v[j + 3];
        if den > 0.0 {
            phi[j] = v[j] / den;
            any = true;
        }
    }
    if !any {
        return Err(RcError::DegenerateDemand);
    }
    let mut best = 0;
    for j in 1..3 {
        if phi[j] > phi[best] {
            best = j;
        }
    }
    Ok((phi, best))
}
