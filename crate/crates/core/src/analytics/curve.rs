use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use super::{threshold_ia_device, threshold_ib, threshold_relation_ib, threshold_relation_ic, DeviceNoise};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CurveProtocol {
    Ia,
    Ib,
    IbDev,
    Ic,
}

impl fmt::Display for CurveProtocol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CurveProtocol::Ia => "Ia",
            CurveProtocol::Ib => "Ib",
            CurveProtocol::IbDev => "Ib-dev",
            CurveProtocol::Ic => "Ic",
        })
    }
}

impl FromStr for CurveProtocol {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ia" => Ok(CurveProtocol::Ia),
            "ib" => Ok(CurveProtocol::Ib),
            "ib-dev" | "ibdev" => Ok(CurveProtocol::IbDev),
            "ic" => Ok(CurveProtocol::Ic),
            _ => Err(Error::invalid("protocol", format!("unknown threshold protocol {s:?}"))),
        }
    }
}

/// Field-noise threshold against device noise for one protocol and bit.
/// `p_th` is `None` where no positive threshold exists.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdCurve {
    pub protocol: CurveProtocol,
    pub j: usize,
    pub gamma: f64,
    pub points: Vec<(f64, Option<f64>)>,
}

impl ThresholdCurve {
    /// Whether the defined thresholds never increase along the grid.
    pub fn is_non_increasing(&self) -> bool {
        let defined: Vec<f64> = self.points.iter().filter_map(|&(_, p)| p).collect();
        defined.windows(2).all(|w| w[1] <= w[0])
    }
}

/// Evaluates one curve over `grid`, in parallel; points come back sorted
/// by `p'`.
///
/// With `ia_device_coupling` the unencoded curve multiplies its survival by
/// `(1-p')^2`; otherwise it is flat in `p'`.
pub fn threshold_curve(
    protocol: CurveProtocol,
    gamma: f64,
    j: usize,
    grid: &[f64],
    ia_device_coupling: bool,
) -> Result<ThresholdCurve> {
    let mut points = grid
        .par_iter()
        .map(|&pp| {
            let solved = match protocol {
                CurveProtocol::Ia => {
                    let device = if ia_device_coupling {
                        Some(DeviceNoise::new(pp)?)
                    } else {
                        None
                    };
                    threshold_ia_device(gamma, j, device)
                }
                CurveProtocol::Ib => threshold_ib(gamma, j),
                CurveProtocol::IbDev => threshold_relation_ib(gamma, j, pp),
                CurveProtocol::Ic => threshold_relation_ic(gamma, j, pp),
            };
            match solved {
                Ok(p) => Ok((pp, Some(p))),
                Err(Error::NoPositiveThreshold { .. }) => Ok((pp, None)),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(ThresholdCurve {
        protocol,
        j,
        gamma,
        points,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn names_round_trip() {
        for p in [CurveProtocol::Ia, CurveProtocol::Ib, CurveProtocol::IbDev, CurveProtocol::Ic] {
            assert_eq!(p.to_string().parse::<CurveProtocol>().unwrap(), p);
        }
    }

    #[test]
    fn curve_is_sorted_and_marks_missing_roots() {
        let grid = [1e-3, 0.0, 1e-6];
        let c = threshold_curve(CurveProtocol::Ic, PI / 32.0, 4, &grid, false).unwrap();
        assert_eq!(c.points[0].0, 0.0);
        assert!(c.points[0].1.is_some());
        assert!(c.points[2].1.is_none());
        assert!(c.is_non_increasing());
    }
}
