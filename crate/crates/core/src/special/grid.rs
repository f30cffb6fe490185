//! Uniformly tabulated functions with piecewise-cubic interpolation.

use std::io::Write;

use crate::error::{Error, Result};
use crate::ComplexValue as C;

/// Values on `start + i·step`, `i = 0..len`.
///
/// Interpolation is cubic Lagrange on the four nodes around the query. When
/// `piece_len` is set, the grid is split into pieces of that many steps
/// (starting at node 0) and stencils never cross a piece boundary, which keeps
/// the interpolant honest next to the breakpoints of a delay equation.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    start: f64,
    step: f64,
    values: Vec<C>,
    piece_len: Option<usize>,
}

impl GridFunction {
    pub fn new(start: f64, step: f64, values: Vec<C>) -> Result<Self> {
        Self::with_pieces(start, step, values, None)
    }

    pub fn with_pieces(
        start: f64,
        step: f64,
        values: Vec<C>,
        piece_len: Option<usize>,
    ) -> Result<Self> {
        if !(step > 0.0 && step.is_finite() && start.is_finite()) {
            return Err(Error::Domain(format!("bad grid start/step {start}/{step}")));
        }
        if values.is_empty() {
            return Err(Error::Domain("grid needs at least one value".into()));
        }
        if let Some(i) = values.iter().position(|v| !(v.re.is_finite() && v.im.is_finite())) {
            return Err(Error::Domain(format!("non-finite grid value at node {i}")));
        }
        if piece_len.is_some_and(|p| p < 3) {
            return Err(Error::Domain("pieces need at least 3 steps".into()));
        }
        Ok(GridFunction {
            start,
            step,
            values,
            piece_len,
        })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn end(&self) -> f64 {
        self.node(self.values.len() - 1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[C] {
        &self.values
    }

    pub fn node(&self, i: usize) -> f64 {
        self.start + i as f64 * self.step
    }

    pub fn eval(&self, x: f64) -> Result<C> {
        let n = self.values.len();
        let pos = (x - self.start) / self.step;
        let last = (n - 1) as f64;
        if !(pos >= -1e-9 && pos <= last + 1e-9) {
            return Err(Error::Domain(format!(
                "{x} outside the grid [{}, {}]",
                self.start,
                self.end()
            )));
        }
        let pos = pos.clamp(0.0, last);
        let i = pos.floor() as usize;
        let frac = pos - i as f64;
        if frac == 0.0 || n == 1 {
            return Ok(self.values[i]);
        }
        if n < 4 {
            let a = self.values[i];
            let b = self.values[i + 1];
            return Ok(a + (b - a) * frac);
        }
        let (lo, hi) = match self.piece_len {
            Some(p) => {
                let piece = (i / p).min((n - 2) / p);
                (piece * p, ((piece + 1) * p).min(n - 1))
            }
            None => (0, n - 1),
        };
        let s = if hi - lo < 3 {
            lo.min(n - 4)
        } else {
            i.saturating_sub(1).clamp(lo, hi - 3)
        };
        let t = pos - s as f64;
        Ok(lagrange4(&self.values[s..s + 4], t))
    }

    pub fn eval_re(&self, x: f64) -> Result<f64> {
        self.eval(x).map(|v| v.re)
    }

    /// CSV with columns `alpha,re,im`, 17 significant digits, LF endings.
    pub fn write_csv<W: Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "alpha,re,im")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(
                out,
                "{},{},{}",
                fmt17(self.node(i)),
                fmt17(v.re),
                fmt17(v.im)
            )?;
        }
        Ok(())
    }
}

/// Cubic through `v[0..4]` at abscissae 0, 1, 2, 3, evaluated at `t`.
pub(crate) fn lagrange4(v: &[C], t: f64) -> C {
    let (a, b, c, d) = (t, t - 1.0, t - 2.0, t - 3.0);
    v[0] * (-b * c * d / 6.0) + v[1] * (a * c * d / 2.0) + v[2] * (-a * b * d / 2.0)
        + v[3] * (a * b * c / 6.0)
}

/// Round-trip formatting with 17 significant digits.
pub fn fmt17(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let s = format!("{x:.16e}");
    let v: f64 = s.parse().expect("formatted float parses");
    debug_assert_eq!(v, x);
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cplx(x: f64) -> C {
        C::new(x, 0.0)
    }

    #[test]
    fn reproduces_nodes_and_cubics() {
        let f = |x: f64| 1.0 - 2.0 * x + 0.5 * x * x * x;
        let g = GridFunction::new(1.0, 0.25, (0..20).map(|i| cplx(f(1.0 + 0.25 * i as f64))).collect())
            .unwrap();
        for i in 0..20 {
            assert_eq!(g.eval(g.node(i)).unwrap(), cplx(f(g.node(i))));
        }
        for x in [1.01, 1.3, 2.9, 5.7, 5.749] {
            assert!((g.eval_re(x).unwrap() - f(x)).abs() < 1e-12, "{x}");
        }
    }

    #[test]
    fn out_of_range_and_bad_input() {
        let g = GridFunction::new(0.0, 0.5, vec![cplx(1.0); 5]).unwrap();
        assert!(g.eval(-0.1).is_err());
        assert!(g.eval(2.01).is_err());
        assert!(g.eval(2.0).is_ok());
        assert!(GridFunction::new(0.0, 0.0, vec![cplx(1.0)]).is_err());
        assert!(GridFunction::new(0.0, 1.0, vec![cplx(f64::NAN)]).is_err());
    }

    #[test]
    fn pieces_do_not_mix_across_breakpoints() {
        // |x - 1| has a kink at the piece boundary; piecewise stencils are exact
        let vals: Vec<C> = (0..=8).map(|i| cplx((i as f64 * 0.25 - 1.0).abs())).collect();
        let g = GridFunction::with_pieces(0.0, 0.25, vals, Some(4)).unwrap();
        for x in [0.8, 0.9, 1.1, 1.2, 1.95] {
            assert!((g.eval_re(x).unwrap() - (x - 1.0).abs()).abs() < 1e-14, "{x}");
        }
    }

    #[test]
    fn csv_round_trip() {
        let g = GridFunction::new(1.0, 1.0 / 3.0, vec![C::new(0.1, -1.0 / 3.0), C::new(2.0, 0.0)])
            .unwrap();
        let mut buf = Vec::new();
        g.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("alpha,re,im"));
        for (i, line) in lines.enumerate() {
            let cols: Vec<f64> = line.split(',').map(|c| c.parse().unwrap()).collect();
            assert_eq!(cols[0], g.node(i));
            assert_eq!(C::new(cols[1], cols[2]), g.values()[i]);
        }
        assert!(!text.contains('\r'));
    }
}
