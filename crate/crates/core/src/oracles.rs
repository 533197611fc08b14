//! Independent brute-force verifiers: a Cartesian tangency solver for the
//! next circle in a chain, an exact-rational orbit engine for the interval
//! map, and a Malfatti solver. None of them go through the closed-form
//! u-recursion, so they can serve as ground truth for it in tests.

use crate::chain::{circle_from_radius, AngleCircle, Choice};
use crate::error::{Error, Result};
use crate::plmap::{IntervalLabel, OrbitReport};
use crate::triangle::Triangle;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Radius of the next circle found geometrically: the center slides along the
/// next vertex's bisector and we bisect on
/// `g(r) = distance(center(r), center_from) - (r + r_from)`.
///
/// `g` is convex (distance to a point along an affine path is convex), so it
/// has at most two roots with `g < 0` strictly between them; `Smaller` picks
/// the root nearer the vertex, `Larger` the farther one.
pub fn brute_force_next_circle(
    tri: &Triangle,
    from_circle: &AngleCircle,
    choice: Choice,
) -> Result<f64> {
    let vertex = (from_circle.vertex + 1) % 3;
    let g = |r: f64| {
        let c = circle_from_radius(tri, vertex, r);
        c.center.dist(from_circle.center) - (r + from_circle.radius)
    };

    // No tangent circle relevant to a chain exceeds the semiperimeter scale:
    // tangent lengths stay <= p, hence r <= p tan(alpha).
    let mut r_max = tri.semiperimeter() * tri.tan_half_angle(vertex) * 1.000001;
    for _ in 0..8 {
        if g(r_max) > 0.0 {
            break;
        }
        r_max *= 2.0;
    }

    // ternary search for the minimum of the convex g
    let (mut lo, mut hi) = (0.0_f64, r_max);
    for _ in 0..300 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if g(m1) <= g(m2) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    let r_min = 0.5 * (lo + hi);
    let g_min = g(r_min);
    if g_min > 1e-12 {
        return Err(Error::NoRoot { r_max });
    }

    let bisect = |mut pos: f64, mut neg: f64| {
        for _ in 0..200 {
            let mid = 0.5 * (pos + neg);
            if mid == pos || mid == neg {
                break;
            }
            if g(mid) > 0.0 {
                pos = mid;
            } else {
                neg = mid;
            }
        }
        0.5 * (pos + neg)
    };

    if g_min.abs() <= 1e-12 {
        // double root: the two tangent circles coincide
        return Ok(r_min);
    }
    Ok(match choice {
        Choice::Smaller => {
            if g(0.0) <= 0.0 {
                0.0
            } else {
                bisect(0.0, r_min)
            }
        }
        Choice::Larger => bisect(r_max, r_min),
    })
}

/// Parses a rational from `num/den`, decimal, or integer notation.
pub fn rational_from_str(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(BigRational::new(n, d));
    }
    let negative = s.starts_with('-');
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    if ip.is_empty() && fp.is_empty() {
        return None;
    }
    if !ip.chars().all(|c| c.is_ascii_digit()) || !fp.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let int_part: BigInt = if ip.is_empty() {
        BigInt::zero()
    } else {
        ip.parse().ok()?
    };
    let frac_part: BigInt = if fp.is_empty() {
        BigInt::zero()
    } else {
        fp.parse().ok()?
    };
    let scale = num_traits::pow(BigInt::from(10), fp.len());
    let r = BigRational::new(int_part * &scale + frac_part, scale);
    Some(if negative { -r } else { r })
}

/// Exact evaluation of `f(x) = |||x - 1| - a| - b|` over the rationals.
pub fn exact_f_eval(a: &BigRational, b: &BigRational, x: &BigRational) -> BigRational {
    ((((x - BigRational::one()).abs()) - a).abs() - b).abs()
}

/// Exact-rational orbit of `f(x) = |||x - 1| - a| - b|`: every number in the
/// report, including the pre-period, is exact.
pub fn exact_rational_orbit(
    a: &BigRational,
    b: &BigRational,
    x0: &BigRational,
    max_iter: usize,
) -> Result<OrbitReport<BigRational>> {
    let one = BigRational::one();
    if !(&one <= a && a <= b && *b < a + &one) {
        return Err(Error::InvalidMapParams {
            a: a.to_f64().unwrap_or(f64::NAN),
            b: b.to_f64().unwrap_or(f64::NAN),
        });
    }
    let window_lo = b - a;
    let label = |x: &BigRational| {
        if *x <= window_lo {
            IntervalLabel::I1
        } else if *x <= one {
            IntervalLabel::I2
        } else if x <= b {
            IntervalLabel::I3
        } else {
            IntervalLabel::AboveB
        }
    };
    let in_window = |x: &BigRational| window_lo <= *x && *x <= one;

    let mut trajectory = vec![x0.clone()];
    let mut interval_trace = vec![label(x0)];
    let mut x = x0.clone();
    let mut pre_period = None;
    for k in 0..=max_iter {
        if in_window(&x) {
            pre_period = Some(k);
            break;
        }
        if k == max_iter {
            return Err(Error::MaxIterExceeded(max_iter));
        }
        x = exact_f_eval(a, b, &x);
        trajectory.push(x.clone());
        interval_trace.push(label(&x));
    }
    let pre_period = pre_period.unwrap();
    let y = exact_f_eval(a, b, &x);
    if trajectory.len() == pre_period + 1 {
        trajectory.push(y.clone());
        interval_trace.push(label(&y));
    }
    let (period, cycle) = if y == x {
        (1, vec![x.clone()])
    } else {
        (2, vec![x.clone(), y])
    };
    Ok(OrbitReport {
        x0: x0.clone(),
        trajectory,
        pre_period,
        period,
        cycle,
        interval_trace,
    })
}

/// Radii of the unique triple of pairwise tangent circles, one inscribed in
/// each angle (circle `k` in angle `k`).
///
/// Found on the code path the chain itself uses: iterate the three-step
/// smaller-choice map (realized through the geometric tangency solver, not
/// the closed form) until it settles on its eventual 2-cycle, then close the
/// remaining gap by bisecting `F(r) - r`, which is strictly monotone across
/// the cycle.
pub fn brute_force_malfatti(tri: &Triangle) -> Result<[f64; 3]> {
    let composite = |r: f64| -> Result<f64> {
        let mut circle = circle_from_radius(tri, 0, r);
        for _ in 0..3 {
            let r_next = brute_force_next_circle(tri, &circle, Choice::Smaller)?;
            circle = circle_from_radius(tri, (circle.vertex + 1) % 3, r_next);
        }
        Ok(circle.radius)
    };

    let min_beta = tri.betas().iter().cloned().fold(f64::INFINITY, f64::min);
    let u0 = tri.semiperimeter().sqrt() * (0.5 * min_beta).sin();
    let mut r = u0 * u0 * tri.tan_half_angle(0);

    // settle onto the eventual 2-cycle of the composite
    let cap = 3000;
    let mut cycled = false;
    let mut prev = r;
    for _ in 0..cap {
        let next = composite(r)?;
        let second = composite(next)?;
        if (second - r).abs() <= 1e-9 * (1.0 + r.abs()) {
            prev = r;
            r = next;
            cycled = true;
            break;
        }
        prev = r;
        r = next;
        let _ = prev;
    }
    if !cycled {
        return Err(Error::NoConvergence(cap));
    }

    // bisect F(r) - r between the two cycle values
    let (mut lo, mut hi) = if prev <= r { (prev, r) } else { (r, prev) };
    if hi - lo > 1e-15 * (1.0 + hi) {
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break;
            }
            if composite(mid)? >= mid {
                lo = mid;
            } else {
                hi = mid;
            }
        }
    }
    let r0 = 0.5 * (lo + hi);

    let mut radii = [r0, 0.0, 0.0];
    let mut circle = circle_from_radius(tri, 0, r0);
    for (k, slot) in radii.iter_mut().enumerate().skip(1) {
        let r_next = brute_force_next_circle(tri, &circle, Choice::Smaller)?;
        circle = circle_from_radius(tri, k, r_next);
        *slot = r_next;
    }
    Ok(radii)
}
