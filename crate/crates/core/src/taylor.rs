//! Truncated power series in u, used to evaluate integrands near u = 0 where
//! the closed forms cancel catastrophically.

use num_complex::Complex64;

pub(crate) const ORDER: usize = 32;

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Series(pub Vec<Complex64>);

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl Series {
    pub fn constant(c: Complex64) -> Self {
        let mut v = vec![zero(); ORDER];
        v[0] = c;
        Series(v)
    }

    /// u^m (truncated).
    pub fn monomial(m: usize) -> Self {
        let mut v = vec![zero(); ORDER];
        if m < ORDER {
            v[m] = Complex64::new(1.0, 0.0);
        }
        Series(v)
    }

    /// e^{k u}
    pub fn exp_lin(k: Complex64) -> Self {
        let mut v = Vec::with_capacity(ORDER);
        let mut t = Complex64::new(1.0, 0.0);
        for i in 0..ORDER {
            v.push(t);
            t = t * k / (i + 1) as f64;
        }
        Series(v)
    }

    /// (1 − e^{−k u})/u
    pub fn one_minus_exp_over_u(k: Complex64) -> Self {
        // Σ_{i≥0} −(−k)^{i+1}/(i+1)! u^i
        let mut v = Vec::with_capacity(ORDER);
        let mut t = k; // −(−k)^{1}/1!
        for i in 0..ORDER {
            v.push(t);
            t = -t * k / (i + 2) as f64;
        }
        Series(v)
    }

    /// sinh(k u)/u
    pub fn sinh_over_u(k: Complex64) -> Self {
        let mut v = vec![zero(); ORDER];
        let mut t = k;
        let k2 = k * k;
        for i in (0..ORDER).step_by(2) {
            v[i] = t;
            t = t * k2 / ((i + 2) * (i + 3)) as f64;
        }
        Series(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn add(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        Series((0..n).map(|i| self.0[i] + o.0[i]).collect())
    }

    pub fn sub(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        Series((0..n).map(|i| self.0[i] - o.0[i]).collect())
    }

    pub fn scale(&self, c: Complex64) -> Series {
        Series(self.0.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, o: &Series) -> Series {
        let n = self.len().min(o.len());
        let mut v = vec![zero(); n];
        for (i, a) in self.0.iter().take(n).enumerate() {
            for (j, b) in o.0.iter().take(n - i).enumerate() {
                v[i + j] += a * b;
            }
        }
        Series(v)
    }

    pub fn recip(&self) -> Series {
        let n = self.len();
        let inv0 = 1.0 / self.0[0];
        let mut v = vec![zero(); n];
        v[0] = inv0;
        for k in 1..n {
            let mut s = zero();
            for j in 1..=k {
                s += self.0[j] * v[k - j];
            }
            v[k] = -s * inv0;
        }
        Series(v)
    }

    pub fn powi(&self, m: usize) -> Series {
        let mut r = Series::constant(Complex64::new(1.0, 0.0));
        r.0.truncate(self.len());
        for _ in 0..m {
            r = r.mul(self);
        }
        r
    }

    /// Multiply by u^m, truncating.
    pub fn mul_u(&self, m: usize) -> Series {
        let n = self.len();
        let mut v = vec![zero(); n];
        for i in 0..n.saturating_sub(m) {
            v[i + m] = self.0[i];
        }
        Series(v)
    }

    /// Divide by u^m; the leading m coefficients vanish analytically and are
    /// discarded.
    pub fn div_u(&self, m: usize) -> Series {
        Series(self.0[m.min(self.len())..].to_vec())
    }

    pub fn eval(&self, u: f64) -> Complex64 {
        let mut acc = zero();
        for c in self.0.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }

    /// Largest u below which truncation error stays under `rel` of the
    /// series scale.
    pub fn switch_point(&self, rel: f64) -> f64 {
        let n = self.len();
        let scale = self.0.iter().take(4).map(|c| c.norm()).fold(0.0, f64::max);
        if scale == 0.0 {
            return 0.5;
        }
        let mut u = 2.0f64;
        for i in n / 2..n {
            let c = self.0[i].norm();
            if c > 0.0 {
                u = u.min((rel * scale / c).powf(1.0 / i as f64));
            }
        }
        u.max(1e-3)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn exp_and_recip() {
        let e = Series::exp_lin(c(-1.5));
        assert!((e.eval(0.3) - c((-0.45f64).exp())).norm() < 1e-15);
        let r = Series::one_minus_exp_over_u(c(1.0)).recip();
        let u = 0.2;
        let expect = u / (1.0 - (-u as f64).exp());
        assert!((r.eval(u).re - expect).abs() < 1e-15);
        let s = Series::sinh_over_u(c(2.0));
        assert!((s.eval(0.4).re - (0.8f64).sinh() / 0.4).abs() < 1e-15);
    }

    #[test]
    fn cancellation_removed() {
        // (e^{-u} - 1 + u)/u^2 -> 1/2
        let s = Series::exp_lin(c(-1.0))
            .sub(&Series::constant(c(1.0)))
            .add(&Series::monomial(1))
            .div_u(2);
        assert!((s.eval(1e-9).re - (0.5 - 1e-9 / 6.0)).abs() < 1e-15);
        assert!(s.switch_point(1e-17) > 0.1);
    }
}
