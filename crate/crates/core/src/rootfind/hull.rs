//! Planar convex hull of complex points, used to check where the roots of a
//! derivative sit relative to the roots of the polynomial.

use std::cmp::Ordering;

use num_complex::Complex;

use crate::scalar::{cabs, Real};

fn cross<T: Real>(o: &Complex<T>, a: &Complex<T>, b: &Complex<T>) -> T {
    (a.re.clone() - o.re.clone()) * (b.im.clone() - o.im.clone())
        - (a.im.clone() - o.im.clone()) * (b.re.clone() - o.re.clone())
}

fn lex<T: Real>(a: &Complex<T>, b: &Complex<T>) -> Ordering {
    a.re.partial_cmp(&b.re).unwrap_or(Ordering::Equal).then(a.im.partial_cmp(&b.im).unwrap_or(Ordering::Equal))
}

/// Counter-clockwise hull vertices (monotone chain), starting from the
/// lowest-leftmost point. Interior and collinear boundary points are dropped,
/// so collinear input yields its two extreme points and a single point yields
/// itself.
pub fn convex_hull_2d<T: Real>(points: &[Complex<T>]) -> Vec<Complex<T>> {
    let mut pts: Vec<Complex<T>> = points.to_vec();
    pts.sort_by(lex);
    pts.dedup_by(|a, b| a.re == b.re && a.im == b.im);
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<Complex<T>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= T::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Complex<T>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= T::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn segment_distance<T: Real>(q: &Complex<T>, a: &Complex<T>, b: &Complex<T>) -> T {
    let ab = b.clone() - a.clone();
    let aq = q.clone() - a.clone();
    let len2 = ab.norm_sqr();
    if len2.is_zero() {
        return cabs(&aq);
    }
    let t = (aq.re.clone() * ab.re.clone() + aq.im.clone() * ab.im.clone()) / len2;
    let t = t.max_of(T::zero()).min_of(T::one());
    let foot = a.clone() + Complex::new(ab.re * t.clone(), ab.im * t);
    cabs(&(q.clone() - foot))
}

/// Whether `q` lies within distance `tol` of the closed hull given by
/// [`convex_hull_2d`].
pub fn point_in_hull<T: Real>(q: &Complex<T>, hull: &[Complex<T>], tol: f64) -> bool {
    match hull.len() {
        0 => false,
        1 => cabs(&(q.clone() - hull[0].clone())).to_f64() <= tol,
        2 => segment_distance(q, &hull[0], &hull[1]).to_f64() <= tol,
        n => {
            let inside = (0..n).all(|i| cross(&hull[i], &hull[(i + 1) % n], q) >= T::zero());
            inside
                || (0..n)
                    .map(|i| segment_distance(q, &hull[i], &hull[(i + 1) % n]).to_f64())
                    .fold(f64::INFINITY, f64::min)
                    <= tol
        }
    }
}
