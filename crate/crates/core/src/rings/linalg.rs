//! Exact dense linear algebra by fraction-free (Bareiss) elimination.

use super::scalar::{Scalar, ScalarDomain};
use super::RingError;

/// Row-echelon form produced by [`echelon`].
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Fraction-free Gaussian elimination to row-echelon form.
///
/// Every division is by the previous pivot, which divides exactly; for
/// polynomial input over the fraction domain the entries stay polynomial.
pub fn echelon(mut rows: Vec<Vec<Scalar>>, ncols: usize, domain: ScalarDomain) -> Echelon {
    let nrows = rows.len();
    let mut prev = domain.one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        let pv = pivot_row[col].clone();
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col + 1..ncols {
                let mut v = &pv * &row[j];
                if !factor.is_zero() && !pivot_row[j].is_zero() {
                    v = &v - &(&factor * &pivot_row[j]);
                }
                row[j] = if prev.is_one() || v.is_zero() {
                    v
                } else {
                    v.div(&prev).expect("Bareiss pivot is nonzero")
                };
            }
            row[col] = domain.zero();
        }
        prev = pv;
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots, ncols }
}

pub fn rank(rows: Vec<Vec<Scalar>>, ncols: usize, domain: ScalarDomain) -> usize {
    echelon(rows, ncols, domain).rank()
}

fn back_substitute(ech: &Echelon, mut x: Vec<Scalar>) -> Vec<Scalar> {
    for (k, &p) in ech.pivots.iter().enumerate().rev() {
        let row = &ech.rows[k];
        let mut s = x[p].clone();
        for j in p + 1..ech.ncols {
            if !row[j].is_zero() && !x[j].is_zero() {
                s = &s - &(&row[j] * &x[j]);
            }
        }
        x[p] = s.div(&row[p]).expect("pivot is nonzero");
    }
    x
}

/// Exact basis of the right kernel `{v : M v = 0}`.
///
/// Only the field domains are accepted.
pub fn kernel_basis(rows: Vec<Vec<Scalar>>, ncols: usize, domain: ScalarDomain) -> Result<Vec<Vec<Scalar>>, RingError> {
    if !domain.is_field() {
        return Err(RingError::UnsupportedDomain(format!("kernel over {domain}")));
    }
    Ok(kernel_unchecked(rows, ncols, domain))
}

/// Kernel computation without the field restriction; used internally for
/// small symbolic systems.
pub(crate) fn kernel_unchecked(rows: Vec<Vec<Scalar>>, ncols: usize, domain: ScalarDomain) -> Vec<Vec<Scalar>> {
    let ech = echelon(rows, ncols, domain);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &ech.pivots {
            v[p] = true;
        }
        v
    };
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x: Vec<Scalar> = vec![domain.zero(); ncols];
            x[f] = domain.one();
            back_substitute(&ech, x)
        })
        .collect()
}

/// Some solution of `M x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(rows: &[Vec<Scalar>], b: &[Scalar], domain: ScalarDomain) -> Option<Vec<Scalar>> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let aug: Vec<Vec<Scalar>> = rows
        .iter()
        .zip(b)
        .map(|(r, bi)| {
            let mut v = r.clone();
            v.push(bi.clone());
            v
        })
        .collect();
    let ech = echelon(aug, ncols + 1, domain);
    if ech.pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x: Vec<Scalar> = vec![domain.zero(); ncols];
    for (k, &p) in ech.pivots.iter().enumerate() {
        x[p] = ech.rows[k][ncols].clone();
    }
    let sub = Echelon { rows: ech.rows.iter().map(|r| r[..ncols].to_vec()).collect(), pivots: ech.pivots.clone(), ncols };
    Some(back_substitute(&sub, x))
}

/// Incrementally grown row space over a field, kept in echelon form so that
/// membership tests are a single reduction.
#[derive(Clone, Debug)]
pub struct SpanBuilder {
    domain: ScalarDomain,
    ncols: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl SpanBuilder {
    pub fn new(ncols: usize, domain: ScalarDomain) -> Self {
        assert!(domain.is_field(), "SpanBuilder needs a field");
        SpanBuilder { domain, ncols, rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn domain(&self) -> ScalarDomain {
        self.domain
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.iter().map(|(p, _)| *p)
    }

    /// `v` minus its component in the span; zero at every pivot column.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (j, x) in row.iter().enumerate().skip(*p) {
                if !x.is_zero() {
                    v[j] = &v[j] - &(&f * x);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero in a field");
        for x in v.iter_mut().skip(p) {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        debug_assert_eq!(v.len(), self.ncols);
        self.rows.push((p, v));
        true
    }
}

/// Multiplies a dense matrix by a vector.
pub fn mat_vec(rows: &[Vec<Scalar>], v: &[Scalar], domain: ScalarDomain) -> Vec<Scalar> {
    rows.iter()
        .map(|r| {
            r.iter().zip(v).fold(domain.zero(), |acc, (a, b)| {
                if a.is_zero() || b.is_zero() {
                    acc
                } else {
                    &acc + &(a * b)
                }
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::parse_scalar;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter().map(|r| r.iter().map(|&x| Scalar::from_i64(x)).collect()).collect()
    }

    #[test]
    fn identity_has_trivial_kernel() {
        let k = kernel_basis(m(&[&[1, 0], &[0, 1]]), 2, ScalarDomain::Rational).unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn rank_one_kernel() {
        let a = m(&[&[1, 1], &[2, 2]]);
        let k = kernel_basis(a.clone(), 2, ScalarDomain::Rational).unwrap();
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(mat_vec(&a, v, ScalarDomain::Rational).iter().all(Scalar::is_zero));
        assert_eq!(v[0], -&v[1]);
    }

    #[test]
    fn cyclotomic_kernel() {
        let d = ScalarDomain::Cyclotomic { order: 4 };
        let one = d.one();
        let i = parse_scalar("zeta_4").unwrap();
        let a = vec![vec![one.clone(), i.clone()], vec![i.clone(), -&one]];
        let k = kernel_basis(a.clone(), 2, d).unwrap();
        assert_eq!(k.len(), 1);
        assert!(mat_vec(&a, &k[0], d).iter().all(Scalar::is_zero));
    }

    #[test]
    fn fraction_domain_rejected() {
        let d = ScalarDomain::Fraction { num_q_vars: 0 };
        assert!(matches!(kernel_basis(vec![vec![d.one()]], 1, d), Err(RingError::UnsupportedDomain(_))));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let b = vec![Scalar::from_i64(3), Scalar::from_i64(4)];
        let x = solve(&a, &b, ScalarDomain::Rational).unwrap();
        assert_eq!(x, vec![Scalar::from_i64(1), Scalar::from_i64(1)]);
        let a = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&a, &[Scalar::from_i64(1), Scalar::from_i64(3)], ScalarDomain::Rational).is_none());
    }
}
