//! The Artin-Schreier pairing `[beta, eta) = Tr Res(beta * deta / eta)`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::series::Series;

/// `[beta, eta)_K` as an element of `0..p`.
pub fn pairing(beta: &Series, eta: &Series) -> Result<u32> {
    let field = beta.field();
    if beta.is_exact_zero() {
        return Ok(0);
    }
    if eta.is_indistinguishable_from_zero() {
        return Err(Error::DivisionByIndistinguishableZero);
    }
    let vb = if beta.is_indistinguishable_from_zero() { beta.precision() } else { beta.valuation()? };
    // deta/eta modulo t^{-vb} only needs eta modulo t^{v(eta) + 1 - vb}
    let ve = eta.valuation()?;
    let eta = eta.truncate(ve + (2 - vb).max(2));
    let dlog = eta.derivative().div(&eta)?;
    let res = beta.mul(&dlog).residue()?;
    Ok(field.trace(res))
}

/// Entry `(i, j)` is `[betas[i], etas[j])`.
pub fn pairing_matrix(betas: &[Series], etas: &[Series]) -> Result<Vec<Vec<u32>>> {
    betas.iter().map(|b| etas.iter().map(|e| pairing(b, e)).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Fe, FieldCtx};
    use crate::series::EXACT;
    use alloc::sync::Arc;
    use alloc::vec;

    fn f(p: u32, m: usize) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, m).unwrap())
    }

    #[test]
    fn pairing_examples() {
        let k = f(2, 1);
        let beta = Series::monomial(&k, 't', Fe::ONE, -1, EXACT);
        assert_eq!(pairing(&beta, &Series::var(&k, 't')).unwrap(), 0);
        let one_t = Series::from_terms(&k, 't', &[(0, Fe::ONE), (1, Fe::ONE)], EXACT);
        assert_eq!(pairing(&beta, &one_t).unwrap(), 1);
    }

    #[test]
    fn left_kernel_contains_wp() {
        let k = f(3, 2);
        let a = k.generator();
        let x = Series::from_terms(&k, 't', &[(-2, a), (-1, Fe::ONE), (1, k.add(a, Fe::ONE))], EXACT);
        let wpx = x.pth_power().sub(&x);
        let etas = vec![
            Series::from_terms(&k, 't', &[(0, Fe::ONE), (1, a), (2, Fe::ONE)], EXACT),
            Series::from_terms(&k, 't', &[(1, a), (4, Fe::ONE)], EXACT),
            Series::from_terms(&k, 't', &[(0, k.from_int(2)), (5, a)], EXACT),
        ];
        assert_eq!(pairing_matrix(&[wpx], &etas).unwrap(), vec![vec![0, 0, 0]]);
    }

    #[test]
    fn right_kernel_contains_pth_powers() {
        let k = f(5, 1);
        let u = Series::from_terms(&k, 't', &[(0, Fe::ONE), (1, k.from_int(3)), (2, Fe::ONE)], EXACT);
        let up = u.pow(5).unwrap();
        let betas = vec![
            Series::monomial(&k, 't', Fe::ONE, -7, EXACT),
            Series::from_terms(&k, 't', &[(-3, k.from_int(2)), (-1, Fe::ONE)], EXACT),
        ];
        assert_eq!(pairing_matrix(&betas, &[up]).unwrap(), vec![vec![0], vec![0]]);
    }

    #[test]
    fn insufficient_precision_is_reported() {
        let k = f(2, 1);
        let beta = Series::from_terms(&k, 't', &[(-1, Fe::ONE)], -1);
        assert!(pairing(&beta, &Series::from_terms(&k, 't', &[(0, Fe::ONE), (1, Fe::ONE)], EXACT)).is_err());
    }
}
