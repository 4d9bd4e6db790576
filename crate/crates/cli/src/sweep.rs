use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// Parsed `lo:hi:count[:log]`. The swept variable is fixed by the flag that
/// carries it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
    pub scale: Scale,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepError(String);

impl fmt::Display for SweepError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SweepError {}

impl FromStr for SweepSpec {
    type Err = SweepError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = |msg: &str| {
            SweepError(format!(
                "bad sweep '{s}': {msg} (expected lo:hi:count[:log])"
            ))
        };
        let parts: Vec<&str> = s.split(':').collect();
        if !(3..=4).contains(&parts.len()) {
            return Err(err("wrong number of fields"));
        }
        let lo: f64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| err("lo is not a number"))?;
        let hi: f64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| err("hi is not a number"))?;
        let count: usize = parts[2]
            .trim()
            .parse()
            .map_err(|_| err("count is not a non-negative integer"))?;
        let scale = match parts.get(3).map(|p| p.trim()) {
            None | Some("lin") | Some("linear") => Scale::Linear,
            Some("log") => Scale::Log,
            Some(_) => return Err(err("scale must be 'log' or 'linear'")),
        };
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(err("bounds must be finite"));
        }
        if lo >= hi {
            return Err(err("need lo < hi"));
        }
        if count < 2 {
            return Err(err("need count >= 2"));
        }
        if scale == Scale::Log && lo <= 0.0 {
            return Err(err("log scale needs lo > 0"));
        }
        Ok(Self {
            lo,
            hi,
            count,
            scale,
        })
    }
}

impl SweepSpec {
    /// Sample points; both end points are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                if i + 1 == self.count {
                    return self.hi;
                }
                let t = i as f64 / last;
                match self.scale {
                    Scale::Linear => self.lo + (self.hi - self.lo) * t,
                    Scale::Log => (self.lo.ln() + (self.hi / self.lo).ln() * t).exp(),
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_sweep() {
        let s: SweepSpec = "0.1:8:200".parse().unwrap();
        let v = s.values();
        assert_eq!(v.len(), 200);
        assert_eq!(v[0], 0.1);
        assert_eq!(v[199], 8.0);
        assert!(v.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn log_sweep() {
        let s: SweepSpec = "0.01:100:5:log".parse().unwrap();
        let v = s.values();
        for (got, want) in v.iter().zip([0.01, 0.1, 1.0, 10.0, 100.0]) {
            assert!((got / want - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn rejects_bad_specs() {
        for bad in [
            "1:0:5",
            "0:1:1",
            "0:1",
            "a:1:3",
            "0:1:3:cubic",
            "0:1:3:log",
            "-1:1:3:log",
            "0:inf:3",
            "0:1:-2",
        ] {
            assert!(bad.parse::<SweepSpec>().is_err(), "{bad}");
        }
    }
}
