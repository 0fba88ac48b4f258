//! Indices of inseparability, the single break, and the Hasse-Herbrand
//! function in both directions.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::localpoly::{vp, EisensteinPoly};
use crate::series::Series;

pub type Q = Ratio<i64>;

/// `(i_0, ..., i_nu)` with `i_nu = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexVector {
    pub p: u32,
    pub nu: u32,
    pub indices: Vec<i64>,
}

impl IndexVector {
    pub fn new(p: u32, indices: Vec<i64>) -> Self {
        let nu = indices.len() as u32 - 1;
        IndexVector { p, nu, indices }
    }

    pub fn degree(&self) -> i64 {
        (self.p as i64).pow(self.nu)
    }

    pub fn get(&self, j: usize) -> i64 {
        self.indices[j]
    }

    /// Checks `i_nu = 0`, monotonicity, and the run condition
    /// `v_p(i_j) = j' < j  =>  i_j = i_{j-1} = ... = i_{j'}`.
    pub fn check_invariants(&self) -> Result<()> {
        let iv = &self.indices;
        let nu = self.nu as usize;
        if iv[nu] != 0 {
            return Err(Error::PreconditionViolated(format!("i_nu = {} is not 0", iv[nu])));
        }
        for j in 0..nu {
            if iv[j] < iv[j + 1] {
                return Err(Error::PreconditionViolated(format!("i_{} < i_{}", j, j + 1)));
            }
        }
        for j in 1..nu {
            if iv[j] == 0 {
                continue;
            }
            let v = vp(iv[j] as u64, self.p as u64) as usize;
            if v < j && (v..j).any(|l| iv[l] != iv[j]) {
                return Err(Error::PreconditionViolated(format!("run condition fails at j = {j}")));
            }
        }
        Ok(())
    }
}

/// `i_j = min { p^nu v_K(a_k) - k : 1 <= k <= p^nu, v_p(k) <= j }`.
pub fn indices_from_minpoly(g: &EisensteinPoly) -> Result<IndexVector> {
    let p = g.field().p();
    let nu = g.nu();
    let n = g.degree() as i64;
    let mut indices = Vec::with_capacity(nu as usize + 1);
    for j in 0..=nu {
        let mut best: Option<i64> = None;
        let mut floor: Option<i64> = None;
        for k in 1..=n {
            if vp(k as u64, p as u64) > j {
                continue;
            }
            let a = g.a(k as usize);
            match a.valuation() {
                Ok(v) => best = Some(best.map_or(n * v - k, |b| b.min(n * v - k))),
                Err(_) => {
                    if !a.is_exact() {
                        let lb = n * a.precision() - k;
                        floor = Some(floor.map_or(lb, |f: i64| f.min(lb)));
                    }
                }
            }
        }
        match (best, floor) {
            (Some(b), Some(f)) if f < b => {
                return Err(Error::InsufficientPrecision("undetermined coefficient could lower an index"))
            }
            (Some(b), _) => indices.push(b),
            (None, _) => return Err(Error::InsufficientPrecision("no determined coefficient for an index")),
        }
    }
    Ok(IndexVector { p, nu, indices })
}

/// Indices from `t = sum_h c_h pi^{h+n}`, given `t` as a series in `pi`:
/// `i_j = min { h >= 0 : c_h != 0, v_p(h + n) <= j }`.
pub fn indices_from_expansion(t_in_pi: &Series, nu: u32) -> Result<IndexVector> {
    let p = t_in_pi.field().p();
    let n = (p as i64).pow(nu);
    let known = t_in_pi.precision() - n;
    let mut indices = Vec::with_capacity(nu as usize + 1);
    for j in 0..=nu {
        let found = t_in_pi
            .terms()
            .map(|(e, _)| e - n)
            .filter(|&h| h >= 0 && h < known && vp((h + n) as u64, p as u64) <= j)
            .min();
        match found {
            Some(h) => indices.push(h),
            None => return Err(Error::InsufficientPrecision("expansion too short to determine an index")),
        }
    }
    Ok(IndexVector { p, nu, indices })
}

/// `i_j = min { tilde_i_{j'} + n e (j' - j) : j <= j' <= nu }`; `e = None`
/// stands for characteristic p. Missing `tilde_i` entries are infinite.
pub fn combine_tilde(p: u32, tilde: &[Option<i64>], e: Option<i64>) -> IndexVector {
    let nu = tilde.len() - 1;
    let n = (p as i64).pow(nu as u32);
    let indices = (0..=nu)
        .map(|j| {
            (j..=nu)
                .filter_map(|jp| match (tilde[jp], e) {
                    (Some(t), Some(e)) => Some(t + n * e * (jp - j) as i64),
                    (Some(t), None) if jp == j => Some(t),
                    _ => None,
                })
                .min()
                .unwrap_or(i64::MAX)
        })
        .collect();
    IndexVector { p, nu: nu as u32, indices }
}

/// `b = i_0 / (p^nu - 1)`, checked against `b p^nu - b p^j <= i_j <= b p^nu - b`.
pub fn break_from_indices(iv: &IndexVector) -> Result<i64> {
    let n = iv.degree();
    let i0 = iv.get(0);
    if i0 <= 0 || i0 % (n - 1) != 0 {
        return Err(Error::NotSingleBreak(format!("i_0 = {i0} is not a positive multiple of {}", n - 1)));
    }
    let b = i0 / (n - 1);
    if b % iv.p as i64 == 0 {
        return Err(Error::NotSingleBreak(format!("break {b} is divisible by p")));
    }
    for j in 0..=iv.nu as usize {
        let lo = b * n - b * (iv.p as i64).pow(j as u32);
        if iv.get(j) < lo || iv.get(j) > b * n - b {
            return Err(Error::NotSingleBreak(format!("i_{j} = {} outside [{lo}, {}]", iv.get(j), b * n - b)));
        }
    }
    Ok(b)
}

/// Continuous piecewise-linear function on `[0, inf)` starting at `(0, 0)`:
/// `slopes[i]` applies from `vertices[i]` up to `vertices[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiecewiseLinear {
    pub vertices: Vec<(Q, Q)>,
    pub slopes: Vec<Q>,
}

impl PiecewiseLinear {
    fn from_raw(mut vertices: Vec<(Q, Q)>, mut slopes: Vec<Q>) -> Self {
        let mut i = 1;
        while i < slopes.len() {
            if slopes[i] == slopes[i - 1] {
                slopes.remove(i);
                vertices.remove(i);
            } else {
                i += 1;
            }
        }
        PiecewiseLinear { vertices, slopes }
    }

    pub fn eval(&self, x: Q) -> Q {
        let i = self.vertices.iter().rposition(|v| v.0 <= x).unwrap_or(0);
        let (x0, y0) = self.vertices[i];
        y0 + self.slopes[i] * (x - x0)
    }

    /// y-intercepts of the lines extending each segment.
    pub fn intercepts(&self) -> Vec<Q> {
        self.vertices.iter().zip(&self.slopes).map(|(&(x, y), &s)| y - s * x).collect()
    }

    /// Interior breakpoints.
    pub fn breaks(&self) -> Vec<Q> {
        self.vertices[1..].iter().map(|v| v.0).collect()
    }
}

/// `phi(x) = (1/n) min { i_j + p^j x }`.
pub fn phi_from_indices(iv: &IndexVector) -> PiecewiseLinear {
    let n = iv.degree();
    let lines: Vec<(Q, Q)> = (0..=iv.nu as usize)
        .map(|j| (Q::new(iv.get(j), n), Q::new((iv.p as i64).pow(j as u32), n)))
        .collect();
    let value = |l: (Q, Q), x: Q| l.0 + l.1 * x;
    let zero = Q::from_integer(0);
    let start = (0..lines.len())
        .min_by(|&a, &b| value(lines[a], zero).cmp(&value(lines[b], zero)).then(lines[a].1.cmp(&lines[b].1)))
        .unwrap();
    let mut cur = start;
    let mut vertices = vec![(zero, value(lines[cur], zero))];
    let mut slopes = vec![lines[cur].1];
    let mut x0 = zero;
    loop {
        let mut next: Option<(Q, usize)> = None;
        for (j, &l) in lines.iter().enumerate() {
            if l.1 >= lines[cur].1 {
                continue;
            }
            let x = (l.0 - lines[cur].0) / (lines[cur].1 - l.1);
            if x <= x0 {
                continue;
            }
            let better = match next {
                None => true,
                Some((bx, bj)) => x < bx || (x == bx && l.1 < lines[bj].1),
            };
            if better {
                next = Some((x, j));
            }
        }
        let Some((x, j)) = next else { break };
        vertices.push((x, value(lines[j], x)));
        slopes.push(lines[j].1);
        cur = j;
        x0 = x;
    }
    PiecewiseLinear::from_raw(vertices, slopes)
}

/// `phi(x) = int_0^x |G_t| / n dt` from breaks `(b, |G_b|)` in increasing `b`,
/// with `n = |G_0|`.
pub fn phi_from_breaks(breaks: &[(i64, u64)], n: u64) -> PiecewiseLinear {
    let zero = Q::from_integer(0);
    let mut vertices = vec![(zero, zero)];
    let mut slopes = Vec::new();
    let (mut x, mut y) = (zero, zero);
    for &(b, order) in breaks {
        let s = Q::new(order as i64, n as i64);
        slopes.push(s);
        let bx = Q::from_integer(b);
        y += s * (bx - x);
        x = bx;
        vertices.push((x, y));
    }
    slopes.push(Q::new(1, n as i64));
    PiecewiseLinear::from_raw(vertices, slopes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fe, FieldCtx};
    use crate::localpoly::KPoly;
    use crate::series::EXACT;
    use alloc::sync::Arc;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a, b)
    }

    fn eis(p: u32, deg: usize, a1: i64, an: i64) -> EisensteinPoly {
        let k = Arc::new(FieldCtx::new(p, 1).unwrap());
        let mut c = vec![Series::zero(&k, 't', EXACT); deg + 1];
        c[deg] = Series::one(&k, 't', EXACT);
        c[deg - 1] = Series::monomial(&k, 't', Fe::ONE, a1, EXACT);
        c[0] = Series::monomial(&k, 't', Fe::ONE, an, EXACT);
        EisensteinPoly::new(KPoly::new(&k, 't', c)).unwrap()
    }

    #[test]
    fn minpoly_examples() {
        assert_eq!(indices_from_minpoly(&eis(2, 2, 1, 1)).unwrap().indices, vec![1, 0]);
        assert_eq!(indices_from_minpoly(&eis(2, 4, 1, 1)).unwrap().indices, vec![3, 3, 0]);
    }

    #[test]
    fn minpoly_precision_guard() {
        let k = Arc::new(FieldCtx::new(2, 1).unwrap());
        let c = vec![
            Series::monomial(&k, 't', Fe::ONE, 1, EXACT),
            Series::zero(&k, 't', 2),
            Series::one(&k, 't', EXACT),
        ];
        let g = EisensteinPoly::new(KPoly::new(&k, 't', c)).unwrap();
        // a_1 is only known to have valuation >= 2, which leaves i_0 in doubt
        assert!(matches!(indices_from_minpoly(&g), Err(Error::InsufficientPrecision(_))));
    }

    #[test]
    fn expansion_examples() {
        let k = Arc::new(FieldCtx::new(2, 1).unwrap());
        // t = pi^2 + pi^3 + O(pi^5): h = 1 is the first term with v_p(h + 2) = 0
        let t = Series::from_terms(&k, 'u', &[(2, Fe::ONE), (3, Fe::ONE)], 5);
        assert_eq!(indices_from_expansion(&t, 1).unwrap().indices, vec![1, 0]);
        // c_0 only: i_nu = 0 and the others cannot be decided
        let t0 = Series::from_terms(&k, 'u', &[(2, Fe::ONE)], 6);
        assert!(indices_from_expansion(&t0, 1).is_err());
        let t4 = Series::from_terms(&k, 'u', &[(4, Fe::ONE), (6, Fe::ONE), (7, Fe::ONE)], 12);
        assert_eq!(indices_from_expansion(&t4, 2).unwrap().indices, vec![3, 2, 0]);
    }

    #[test]
    fn break_examples() {
        assert_eq!(break_from_indices(&IndexVector::new(2, vec![1, 0])).unwrap(), 1);
        assert_eq!(break_from_indices(&IndexVector::new(2, vec![3, 3, 0])).unwrap(), 1);
        assert_eq!(break_from_indices(&IndexVector::new(3, vec![4, 0])).unwrap(), 2);
        assert!(break_from_indices(&IndexVector::new(3, vec![6, 0])).is_err());
    }

    #[test]
    fn phi_examples() {
        let phi = phi_from_indices(&IndexVector::new(2, vec![3, 3, 0]));
        assert_eq!(phi.vertices, vec![(q(0, 1), q(0, 1)), (q(1, 1), q(1, 1))]);
        assert_eq!(phi.slopes, vec![q(1, 1), q(1, 4)]);
        let phi = phi_from_indices(&IndexVector::new(2, vec![0, 0, 0]));
        assert_eq!(phi.vertices, vec![(q(0, 1), q(0, 1))]);
        assert_eq!(phi.slopes, vec![q(1, 4)]);
        let phi = phi_from_indices(&IndexVector::new(2, vec![1, 0]));
        assert_eq!(phi, phi_from_breaks(&[(1, 2)], 2));
        assert_eq!(phi_from_breaks(&[], 1).slopes, vec![q(1, 1)]);
        let phi = phi_from_breaks(&[(2, 3)], 3);
        assert_eq!(phi.vertices[1], (q(2, 1), q(2, 1)));
        assert_eq!(phi.slopes, vec![q(1, 1), q(1, 3)]);
    }

    #[test]
    fn phi_two_breaks_from_indices() {
        // p = 2, nu = 2, i = (5, 2, 0): breaks at x = 1 and x = 3
        let iv = IndexVector::new(2, vec![5, 2, 0]);
        let phi = phi_from_indices(&iv);
        assert_eq!(phi, phi_from_breaks(&[(1, 4), (3, 2)], 4));
        for c in phi.intercepts() {
            assert!(iv.indices.iter().any(|&i| Q::new(i, 4) == c));
        }
    }

    #[test]
    fn tilde_combination() {
        let iv = combine_tilde(2, &[Some(7), Some(3), Some(0)], Some(1));
        assert_eq!(iv.indices, vec![7, 3, 0]);
        let iv = combine_tilde(2, &[Some(20), Some(9), Some(0)], Some(1));
        assert_eq!(iv.indices, vec![8, 4, 0]);
        let iv = combine_tilde(2, &[Some(20), Some(9), Some(0)], None);
        assert_eq!(iv.indices, vec![20, 9, 0]);
    }

    #[test]
    fn invariant_checks() {
        assert!(IndexVector::new(2, vec![3, 3, 0]).check_invariants().is_ok());
        assert!(IndexVector::new(2, vec![3, 4, 0]).check_invariants().is_err());
        assert!(IndexVector::new(3, vec![8, 7, 0]).check_invariants().is_err());
        assert!(IndexVector::new(3, vec![8, 8, 1]).check_invariants().is_err());
    }
}
