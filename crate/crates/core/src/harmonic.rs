//! Harmonic decomposition of homogeneous polynomials,
//! `p = H_d + |x|^2 H_{d-2} + |x|^4 H_{d-4} + ...`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::poly::{monomials_of_degree, HPoly, PolyJson};
use crate::scalar::{rat, Coeff, PiScalar, Rational};
use crate::Poly;

type Inverse = Arc<(Vec<Vec<u32>>, Vec<Vec<Rational>>)>;

/// Inverse of `R -> Δ(|x|^2 R)` on forms of degree `m`, with the monomial
/// basis it is expressed in. The map is invertible for every `n >= 1`
/// (its eigenvalues on `|x|^{2i} H_{m-2i}` are positive), so it is cached.
fn lift_inverse(n: usize, m: u32) -> Result<Inverse> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Inverse>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache poisoned").get(&(n, m)) {
        return Ok(hit.clone());
    }
    let basis = monomials_of_degree(n, m);
    let index: HashMap<&[u32], usize> =
        basis.iter().enumerate().map(|(i, e)| (e.as_slice(), i)).collect();
    let r2 = HPoly::<Rational>::radial(n, 1);
    let size = basis.len();
    let mut mat = vec![vec![Rational::zero(); size]; size];
    for (col, e) in basis.iter().enumerate() {
        let img = HPoly::monomial(e.clone(), Rational::one())
            .checked_mul(&r2)?
            .laplacian();
        for (mono, c) in img.terms() {
            mat[index[mono.exps()]][col] = c.clone();
        }
    }
    let inv = linalg::invert(&mat)?;
    let entry = Arc::new((basis, inv));
    cache.lock().expect("cache poisoned").insert((n, m), entry.clone());
    Ok(entry)
}

/// Split `p` into harmonic layers: returns the nonzero `(H, k)` with
/// `p = Σ H·|x|^{2k}`, ordered by increasing `k`.
///
/// Each layer comes from one exact solve of `Δ(|x|^2 R) = Δp`; then
/// `H = p - |x|^2 R` is harmonic and we recurse on `R`. The reconstruction is
/// checked before returning.
pub fn decompose<C: Coeff>(p: &HPoly<C>) -> Result<Vec<(HPoly<C>, u32)>> {
    let n = p.n_vars();
    let r2 = HPoly::<C>::radial(n, 1);
    let mut out = Vec::new();
    let mut cur = p.clone();
    let mut k = 0;
    loop {
        let lap = cur.laplacian();
        if cur.degree() < 2 || lap.is_zero() {
            if !cur.is_zero() {
                out.push((cur, k));
            }
            break;
        }
        let inv = lift_inverse(n, cur.degree() - 2)?;
        let (basis, inv) = (&inv.0, &inv.1);
        let rhs: Vec<C> = basis.iter().map(|e| lap.coeff(e)).collect();
        let coeffs = basis.iter().enumerate().map(|(i, e)| {
            let mut acc = C::zero();
            for (a, b) in inv[i].iter().zip(&rhs) {
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + C::from_rational(a) * b.clone();
                }
            }
            (e.clone(), acc)
        });
        let r = HPoly::from_terms(n, cur.degree() - 2, coeffs)?;
        let h = cur.checked_sub(&r.checked_mul(&r2)?)?;
        if !h.is_zero() {
            out.push((h, k));
        }
        cur = r;
        k += 1;
    }
    verify_decomposition(p, &out)?;
    Ok(out)
}

fn verify_decomposition<C: Coeff>(p: &HPoly<C>, parts: &[(HPoly<C>, u32)]) -> Result<()> {
    let scale = p.terms().map(|(_, c)| c.to_f64().abs()).fold(0.0, f64::max).max(1.0);
    let mut residual = p.clone();
    for (h, k) in parts {
        if h.laplacian().terms().any(|(_, c)| !c.is_negligible(scale)) {
            return Err(Error::Internal(format!("layer {k} of the decomposition is not harmonic")));
        }
        residual = residual.checked_sub(&h.checked_mul(&HPoly::radial(p.n_vars(), *k))?)?;
    }
    if residual.terms().any(|(_, c)| !c.is_negligible(scale)) {
        return Err(Error::Internal("harmonic decomposition does not reconstruct the input".into()));
    }
    Ok(())
}

/// Kernel numerator split into spherical harmonics: `Ω = Σ_j P_{2j}` on the
/// sphere, i.e. `num = Σ_j P_{2j}·|x|^{2N-2j}`.
#[derive(Debug, Clone, PartialEq)]
pub struct HarmonicExpansion {
    n_vars: usize,
    components: Vec<(u32, Poly)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpansionJson {
    pub n_vars: usize,
    pub components: Vec<ComponentJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub degree: u32,
    pub poly: PolyJson,
}

impl HarmonicExpansion {
    /// Validates: nonempty; degrees even, `>= 2`, strictly increasing; every
    /// component nonzero, harmonic, of its declared degree and dimension.
    pub fn new(n_vars: usize, components: Vec<(u32, Poly)>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidExpansion(msg));
        if components.is_empty() {
            return bad("expansion has no components".into());
        }
        let mut prev = 0;
        for (d, p) in &components {
            if d % 2 == 1 || *d < 2 {
                return bad(format!("component degree {d} is not an even number >= 2"));
            }
            if *d <= prev {
                return bad(format!("component degrees must increase strictly ({prev} then {d})"));
            }
            prev = *d;
            if p.n_vars() != n_vars {
                return bad(format!("component of degree {d} lives in {} variables, not {n_vars}", p.n_vars()));
            }
            if p.is_zero() {
                return bad(format!("component of degree {d} is zero"));
            }
            if p.degree() != *d {
                return bad(format!("component declared degree {d} has degree {}", p.degree()));
            }
            if !p.is_harmonic() {
                return bad(format!("component of degree {d} is not harmonic"));
            }
        }
        Ok(HarmonicExpansion { n_vars, components })
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// `(2j, P_{2j})` pairs in increasing degree.
    pub fn components(&self) -> &[(u32, Poly)] {
        &self.components
    }

    /// `2N`.
    pub fn max_degree(&self) -> u32 {
        self.components.last().map(|c| c.0).unwrap_or(0)
    }

    pub fn component(&self, degree: u32) -> Option<&Poly> {
        self.components.iter().find(|c| c.0 == degree).map(|c| &c.1)
    }

    /// `Σ P_{2j}·|x|^{2N-2j}`.
    pub fn numerator(&self) -> Poly {
        let top = self.max_degree();
        let mut out = Poly::zero(self.n_vars, top);
        for (d, p) in &self.components {
            let term = p.checked_mul(&Poly::radial(self.n_vars, (top - d) / 2)).expect("same dimension");
            out = out.checked_add(&term).expect("same degree");
        }
        out
    }

    pub fn scale(&self, s: &Rational) -> Self {
        HarmonicExpansion {
            n_vars: self.n_vars,
            components: self.components.iter().map(|(d, p)| (*d, p.scale_rational(s))).collect(),
        }
    }

    pub fn to_json(&self) -> ExpansionJson {
        ExpansionJson {
            n_vars: self.n_vars,
            components: self
                .components
                .iter()
                .map(|(d, p)| ComponentJson { degree: *d, poly: p.to_json() })
                .collect(),
        }
    }

    pub fn from_json(j: &ExpansionJson) -> Result<Self> {
        let comps = j
            .components
            .iter()
            .map(|c| Poly::from_json(&c.poly).map(|p| (c.degree, p)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(j.n_vars, comps)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let j: ExpansionJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_json(&j)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("plain data serializes")
    }
}

/// Reads `num / |x|^{2N}` as a kernel and returns its spherical-harmonic
/// components. Rejects a nonzero mean and odd parts.
pub fn expansion_from_numerator(num: &Poly) -> Result<HarmonicExpansion> {
    if num.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if num.degree() % 2 == 1 {
        return Err(Error::OddComponent(num.degree()));
    }
    let mut comps: Vec<(u32, Poly)> = Vec::new();
    for (h, _) in decompose(num)? {
        if h.degree() == 0 {
            return Err(Error::CancellationViolation);
        }
        comps.push((h.degree(), h));
    }
    comps.reverse();
    HarmonicExpansion::new(num.n_vars(), comps)
}

/// `xy·Q_{2j}(x, y, z)` with `Q_{2j} = Σ_k c_k y^{2k} z^{2j-2k}`, `c_0 = 1`,
/// and the `c_k` forced by harmonicity.
pub fn example5_generate(j: u32) -> Poly {
    let mut c = Rational::one();
    let mut terms = Vec::with_capacity(j as usize + 1);
    for k in 0..=j {
        terms.push((vec![1, 2 * k + 1, 2 * (j - k)], PiScalar::from_rational(c.clone())));
        if k < j {
            let (k, j) = (k as i64, j as i64);
            c = -c * rat((2 * j - 2 * k) * (2 * j - 2 * k - 1), (2 * k + 2) * (2 * k + 3));
        }
    }
    let p = Poly::from_terms(3, 2 * j + 2, terms).expect("homogeneous by construction");
    assert!(p.is_harmonic(), "xy*Q_2j must be harmonic");
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::RatPoly;

    fn p(terms: &[(&[u32], i64)]) -> Poly {
        Poly::from_int_terms(2, terms).unwrap()
    }

    fn h4() -> Poly {
        p(&[(&[4, 0], 1), (&[2, 2], -6), (&[0, 4], 1)])
    }

    #[test]
    fn already_harmonic() {
        let xy = p(&[(&[1, 1], 1)]);
        assert_eq!(decompose(&xy).unwrap(), vec![(xy.clone(), 0)]);
        assert_eq!(decompose(&h4()).unwrap(), vec![(h4(), 0)]);
    }

    #[test]
    fn x2y2_layers() {
        let parts = decompose(&p(&[(&[2, 2], 1)])).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0], (h4().scale_rational(&rat(-1, 8)), 0));
        assert_eq!(parts[1], (Poly::constant(2, PiScalar::from_rational(rat(1, 8))), 2));
    }

    #[test]
    fn radial_powers_are_pure_constants() {
        let parts = decompose(&RatPoly::radial(3, 3)).unwrap();
        assert_eq!(parts, vec![(RatPoly::one(3), 3)]);
    }

    #[test]
    fn float_decomposition_agrees() {
        let q = HPoly::<f64>::from_int_terms(3, &[(&[2, 2, 0], 1), (&[1, 1, 2], 3)]).unwrap();
        let exact = decompose(&q.map_coeffs(|c| Rational::from_float(*c).unwrap())).unwrap();
        let float = decompose(&q).unwrap();
        assert_eq!(exact.len(), float.len());
        for ((he, ke), (hf, kf)) in exact.iter().zip(&float) {
            assert_eq!(ke, kf);
            for (m, c) in he.terms() {
                assert!((c.to_f64() - hf.coeff(m.exps())).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn numerator_examples() {
        let xy = p(&[(&[1, 1], 1)]);
        let num = xy.checked_mul(&Poly::radial(2, 1)).unwrap().checked_add(&h4()).unwrap();
        let e = expansion_from_numerator(&num).unwrap();
        assert_eq!(e.components(), &[(2, xy), (4, h4())]);
        assert_eq!(e.numerator(), num);

        assert_eq!(expansion_from_numerator(&Poly::radial(2, 2)), Err(Error::CancellationViolation));

        let odd = p(&[(&[3, 0], 1), (&[1, 2], -3)]);
        assert_eq!(expansion_from_numerator(&odd), Err(Error::OddComponent(3)));

        let single = p(&[(&[3, 1], 1), (&[1, 3], -1)]);
        assert_eq!(expansion_from_numerator(&single).unwrap().components(), &[(4, single)]);
    }

    #[test]
    fn expansion_validation() {
        let xy = p(&[(&[1, 1], 1)]);
        assert!(HarmonicExpansion::new(2, vec![]).is_err());
        assert!(HarmonicExpansion::new(2, vec![(4, h4()), (2, xy.clone())]).is_err());
        assert!(HarmonicExpansion::new(2, vec![(2, p(&[(&[2, 0], 1)]))]).is_err());
        assert!(HarmonicExpansion::new(2, vec![(4, xy.clone())]).is_err());
        let e = HarmonicExpansion::new(2, vec![(2, xy), (4, h4())]).unwrap();
        assert_eq!(HarmonicExpansion::from_json_str(&e.to_json_string()).unwrap(), e);
    }

    #[test]
    fn example5_family() {
        assert_eq!(example5_generate(0), Poly::from_int_terms(3, &[(&[1, 1, 0], 1)]).unwrap());
        let e1 = example5_generate(1);
        assert_eq!(e1.coeff(&[1, 1, 2]), PiScalar::one());
        assert_eq!(e1.coeff(&[1, 3, 0]), PiScalar::from_rational(rat(-1, 3)));
        for j in 0..=10 {
            assert!(example5_generate(j).is_harmonic());
        }
    }
}
