//! Closed-form quantities for the randomized construction and the random
//! graph tail bounds.
//!
//! All arithmetic is `f64`; logarithms are natural.

use serde::Serialize;

use crate::error::{Error, Result};

/// `c(d, r) = d (d+1)^(-1-1/d) (2r)^(-1/d)`.
pub fn c_const(d: usize, r: usize) -> f64 {
    let (d, r) = (d as f64, r as f64);
    d * (d + 1.0).powf(-1.0 - 1.0 / d) * (2.0 * r).powf(-1.0 / d)
}

/// `2r (Δ+1)^(r+2)`, the coefficient of `(1-q)^(d+1)` in Γ.
fn gamma_coefficient(delta_max: usize, r: usize) -> f64 {
    2.0 * r as f64 * (delta_max as f64 + 1.0).powi(r as i32 + 2)
}

/// Stationary point of Γ: `q0 = 1 - (2r (Δ+1)^(r+2) (d+1))^(-1/d)`.
pub fn q_star(delta_max: usize, r: usize, d: usize) -> f64 {
    1.0 - q_star_gap(delta_max, r, d)
}

/// `1 - q0`, computed directly. For large Δ this is far below the spacing of
/// `f64` values near 1, so it carries information `q_star` cannot.
pub fn q_star_gap(delta_max: usize, r: usize, d: usize) -> f64 {
    let k = gamma_coefficient(delta_max, r) * (d as f64 + 1.0);
    k.powf(-1.0 / d as f64)
}

/// `Γ(q) = q + 2r (Δ+1)^(r+2) (1-q)^(d+1)`; `n Γ(q)` bounds the expected
/// code size of the randomized construction.
pub fn gamma(q: f64, delta_max: usize, r: usize, d: usize) -> f64 {
    q + gamma_coefficient(delta_max, r) * (1.0 - q).powi(d as i32 + 1)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub delta_max: usize,
    pub r: usize,
    pub d: usize,
    pub c_dr: f64,
    pub q_star: f64,
    pub gamma_at_q_star: f64,
    /// `n / (Δ+1)`
    pub lower: f64,
    /// `n (1 - c(d,r) / (Δ+1)^((r+2)/d))`
    pub upper: f64,
}

/// Both sides of the bound on the minimum code size. Pure arithmetic: the
/// caller is responsible for the (r+d+1)-strong neighbourhood hypothesis.
pub fn theta_bounds(n: usize, delta_max: usize, r: usize, d: usize) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    if r == 0 || d == 0 {
        return Err(Error::InvalidParams { r, d });
    }
    if delta_max < 2 {
        return Err(Error::DegreeTooSmall(delta_max));
    }
    let c_dr = c_const(d, r);
    let q0 = q_star(delta_max, r, d);
    let nf = n as f64;
    let base = delta_max as f64 + 1.0;
    Ok(BoundReport {
        n,
        delta_max,
        r,
        d,
        c_dr,
        q_star: q0,
        gamma_at_q_star: gamma(q0, delta_max, r, d),
        lower: nf / base,
        upper: nf * (1.0 - c_dr / base.powf((r as f64 + 2.0) / d as f64)),
    })
}

/// `P(Bin(trials, q) <= r - 1)`, summed term by term in log space.
fn binomial_lower_tail(trials: usize, q: f64, r: usize) -> f64 {
    if r == 0 {
        return 0.0;
    }
    if r > trials {
        return 1.0;
    }
    if q <= 0.0 {
        return 1.0;
    }
    if q >= 1.0 {
        return 0.0;
    }
    let ln_q = q.ln();
    let ln_p = (-q).ln_1p();
    let mut ln_binom = 0.0;
    let mut total = 0.0;
    for l in 0..r {
        if l > 0 {
            ln_binom += ((trials - l + 1) as f64 / l as f64).ln();
        }
        total += (ln_binom + l as f64 * ln_q + (trials - l) as f64 * ln_p).exp();
    }
    total.min(1.0)
}

/// Probability that a vertex with closed degree `deg_closed` receives at
/// most `r - 1` sampled vertices: `Σ_{l<r} C(δ,l) q^l (1-q)^(δ-l)`.
pub fn f1_prob(q: f64, deg_closed: usize, r: usize) -> f64 {
    binomial_lower_tail(deg_closed, q, r)
}

/// Same binomial tail with `δ(v,w) = #(N[v] \ N[w])` trials. The maximum
/// over `w` is left to the caller.
pub fn f2_prob(q: f64, dist_size: usize, r: usize) -> f64 {
    binomial_lower_tail(dist_size, q, r)
}

/// `2 exp(-ε² θ / 4)`, valid for `0 < ε <= 1/2`.
pub fn concentration_bound(theta: f64, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps <= 0.5) {
        return Err(Error::InvalidEpsilon(eps));
    }
    Ok(2.0 * (-eps * eps * theta / 4.0).exp())
}

/// `e · exp(-(n-1)p/2)`: per-pair bound on `P(T_ij > (n-1)p/4)` at the
/// Chernoff parameter s = 2.
pub fn common_tail_bound(n: usize, p: f64) -> f64 {
    (1.0 - (n as f64 - 1.0) * p / 2.0).exp()
}

/// Whether `(e^2 - 1)(n-1)p^2 <= 1`, the step that turns the s = 2
/// Chernoff estimate into [`common_tail_bound`]. Without it the returned
/// value is not a bound. At `p = max(16 ln n, 4y)/(n-1)` this needs
/// `n > 2560 (ln n)^2`, i.e. n in the hundreds of thousands.
pub fn common_tail_premise(n: usize, p: f64) -> bool {
    (std::f64::consts::E.powi(2) - 1.0) * (n as f64 - 1.0) * p * p <= 1.0
}

/// Union bound over all `n` vertices of the degree event with ε = 1/2.
pub fn degree_event_bound(n: usize, p: f64) -> f64 {
    let theta = (n as f64 - 1.0) * p;
    n as f64 * concentration_bound(theta, 0.5).expect("0.5 is a valid epsilon")
}

/// Union bound over all unordered pairs of the common-neighbour event.
pub fn common_event_bound(n: usize, p: f64) -> f64 {
    let pairs = n as f64 * (n as f64 - 1.0) / 2.0;
    pairs * common_tail_bound(n, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, rel: f64) -> bool {
        (a - b).abs() <= rel * b.abs().max(f64::MIN_POSITIVE)
    }

    #[test]
    fn c_const_values() {
        assert!(close(c_const(1, 1), 0.125, 1e-15));
        assert!(close(c_const(2, 1), 2.0 * 3f64.powf(-1.5) * 0.5f64.sqrt(), 1e-15));
        assert!((c_const(2, 1) - 0.272166).abs() < 1e-6);
        assert!(close(c_const(1, 2), 0.0625, 1e-15));
        for d in 1..8 {
            for r in 1..8 {
                let c = c_const(d, r);
                assert!(c > 0.0 && c < 1.0);
            }
        }
    }

    #[test]
    fn q_star_values() {
        assert!(close(q_star(2, 1, 1), 1.0 - 1.0 / 108.0, 1e-15));
        assert!(close(q_star(2, 1, 2), 1.0 - (1.0f64 / 162.0).sqrt(), 1e-15));
        assert!((q_star(2, 1, 2) - 0.9214326).abs() < 1e-7);
    }

    #[test]
    fn q_star_is_stationary() {
        // Five-point central differences in t = 1 - q around the exact gap,
        // on Γ(1 - t) - 1 = A t^(d+1) - t. The polynomial has degree <= 5, so
        // truncation is at most h^4 A (d+1)! / 30 and negligible here.
        for delta in 2..=10 {
            for r in 1..=4 {
                for d in 1..=4 {
                    let a = 2.0 * r as f64 * ((delta + 1) as f64).powi(r as i32 + 2);
                    let f = |t: f64| a * t.powi(d as i32 + 1) - t;
                    let t0 = q_star_gap(delta, r, d);
                    let h = 1e-3 * t0;
                    let dt = (f(t0 - 2.0 * h) - 8.0 * f(t0 - h) + 8.0 * f(t0 + h) - f(t0 + 2.0 * h)) / (12.0 * h);
                    // dΓ/dq = -df/dt
                    assert!(dt.abs() < 1e-10, "Γ'(q0) = {} at ({delta},{r},{d})", -dt);

                    // the rounded q0 is stationary up to Γ'' times half an ulp
                    let q0 = q_star(delta, r, d);
                    assert_eq!(q0, 1.0 - t0);
                    let second = a * (d + 1) as f64 * d as f64 * t0.powi(d as i32 - 1);
                    let hq = 1e-5;
                    let g = |x: f64| gamma(x, delta, r, d);
                    let dq = (g(q0 - 2.0 * hq) - 8.0 * g(q0 - hq) + 8.0 * g(q0 + hq) - g(q0 + 2.0 * hq)) / (12.0 * hq);
                    assert!(dq.abs() < 1e-10 + second * f64::EPSILON, "({delta},{r},{d}): {dq}");
                }
            }
        }
    }

    #[test]
    fn gamma_values() {
        for (delta, r, d) in [(2, 1, 1), (5, 2, 3), (10, 4, 4)] {
            assert_eq!(gamma(1.0, delta, r, d), 1.0);
        }
        let q0 = q_star(2, 1, 1);
        assert!(close(gamma(q0, 2, 1, 1), 1.0 - 1.0 / 216.0, 1e-14));
        assert!((gamma(q0, 2, 1, 1) - 0.9953704).abs() < 1e-7);
    }

    #[test]
    fn gamma_identity_and_optimality_over_grid() {
        for delta in 2..=10 {
            for r in 1..=4 {
                for d in 1..=4 {
                    let q0 = q_star(delta, r, d);
                    let g0 = gamma(q0, delta, r, d);
                    let closed = 1.0 - c_const(d, r) / ((delta + 1) as f64).powf((r as f64 + 2.0) / d as f64);
                    assert!(close(g0, closed, 1e-12), "({delta},{r},{d}): {g0} vs {closed}");
                    for i in 0..=100 {
                        let q = i as f64 / 100.0;
                        assert!(g0 <= gamma(q, delta, r, d) + 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn theta_bound_values() {
        let rep = theta_bounds(216, 2, 1, 1).unwrap();
        assert!(close(rep.lower, 72.0, 1e-15));
        assert!(close(rep.upper, 215.0, 1e-12));
        assert!(close(rep.gamma_at_q_star * 216.0, rep.upper, 1e-12));
        let rep = theta_bounds(4, 2, 1, 1).unwrap();
        assert!(close(rep.lower, 4.0 / 3.0, 1e-15));
        assert_eq!(rep.lower.ceil(), 2.0);
        for n in [1, 10, 1441] {
            for delta in 2..12 {
                let rep = theta_bounds(n, delta, 2, 3).unwrap();
                let frac = rep.upper / n as f64;
                assert!(frac > 0.0 && frac < 1.0);
                assert!(rep.lower <= rep.upper);
            }
        }
        assert!(matches!(theta_bounds(10, 1, 1, 1), Err(Error::DegreeTooSmall(1))));
        assert!(theta_bounds(10, 3, 0, 1).is_err());
    }

    #[test]
    fn binomial_tail_values() {
        assert_eq!(f1_prob(1.0, 5, 1), 0.0);
        assert_eq!(f1_prob(0.0, 5, 3), 1.0);
        assert!(close(f1_prob(0.5, 3, 2), 0.5, 1e-15));
        assert!(close(f2_prob(0.5, 4, 1), 1.0 / 16.0, 1e-15));
        assert_eq!(f1_prob(0.3, 2, 3), 1.0);
        assert_eq!(f1_prob(0.3, 2, 0), 0.0);
    }

    #[test]
    fn binomial_tail_monotone_in_q() {
        for trials in [1, 3, 10, 40, 260] {
            for r in 1..=5 {
                let mut prev = f64::INFINITY;
                for i in 0..=200 {
                    let v = f2_prob(i as f64 / 200.0, trials, r);
                    assert!((0.0..=1.0).contains(&v));
                    assert!(v <= prev + 1e-15);
                    prev = v;
                }
            }
        }
    }

    #[test]
    fn tail_bounds() {
        assert!(close(concentration_bound(100.0, 0.5).unwrap(), 2.0 * (-6.25f64).exp(), 1e-15));
        assert!((concentration_bound(100.0, 0.5).unwrap() - 0.0038609).abs() < 1e-7);
        assert!(concentration_bound(200.0, 0.5).unwrap() < concentration_bound(100.0, 0.5).unwrap());
        assert!(matches!(concentration_bound(1.0, 0.6), Err(Error::InvalidEpsilon(_))));
        assert!(matches!(concentration_bound(1.0, 0.0), Err(Error::InvalidEpsilon(_))));

        let b = common_tail_bound(1441, 0.080813);
        assert!(close(b, (1.0 - 1440.0 * 0.080813 / 2.0f64).exp(), 1e-15));
        assert!(b > 1.4e-25 && b < 1.6e-25);
        assert!(common_tail_bound(1441, 0.09) < b);
        assert!(!common_tail_premise(1441, 0.080813));
        assert!(common_tail_premise(2000, 0.008));
    }
}
