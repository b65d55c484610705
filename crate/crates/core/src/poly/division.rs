use std::cmp::Ordering;

use super::{HPoly, Monomial};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Term order used to pick leading terms during division.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    GradedLex,
    GradedRevLex,
}

impl MonomialOrder {
    pub fn cmp(self, a: &Monomial, b: &Monomial) -> Ordering {
        let by_degree = a.degree().cmp(&b.degree());
        if by_degree != Ordering::Equal {
            return by_degree;
        }
        match self {
            MonomialOrder::GradedLex => a.0.cmp(&b.0),
            MonomialOrder::GradedRevLex => {
                for (x, y) in a.0.iter().zip(&b.0).rev() {
                    if x != y {
                        // smaller power of the last differing variable is larger
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }
        }
    }
}

impl<C: Coeff> HPoly<C> {
    /// Exact quotient `f / g` when `g` divides `f`, else `None`.
    ///
    /// Long division by a single divisor: a nonzero remainder shows up as soon
    /// as a leading term is not a multiple of `lt(g)`, so we stop there.
    pub fn try_divide(&self, g: &Self) -> Result<Option<Self>> {
        self.try_divide_with_order(g, MonomialOrder::GradedLex)
    }

    pub fn try_divide_with_order(&self, g: &Self, order: MonomialOrder) -> Result<Option<Self>> {
        self.check_dims(g)?;
        let Some((lm, lc)) = g.leading_term(order) else {
            return Err(Error::ZeroDivisor);
        };
        let (lm, lc) = (lm.clone(), lc.clone());
        let inv = lc.try_recip().ok_or_else(|| Error::NonInvertibleLeading(lc.to_string()))?;
        if self.degree < g.degree {
            return Ok(if self.is_zero() { Some(Self::zero(self.n_vars, 0)) } else { None });
        }
        let scale = self.terms.values().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.n_vars, self.degree - g.degree);
        while let Some((rm, rc)) = rem.leading_term(order) {
            if !lm.divides(rm) {
                return Ok(None);
            }
            let rm = rm.clone();
            let qm = rm.div(&lm);
            let qc = rc.clone() * inv.clone();
            for (gm, gc) in &g.terms {
                rem.add_term(gm.mul(&qm), -(gc.clone() * qc.clone()));
            }
            // exact for exact rings; pins float round-off
            rem.terms.remove(&rm);
            rem.terms.retain(|_, c| !c.is_negligible(scale));
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }
}
