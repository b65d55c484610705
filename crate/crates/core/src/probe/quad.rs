use num_traits::Float;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, ascending.
pub fn gauss_legendre<F: Float>(m: usize) -> (Vec<F>, Vec<F>) {
    let c = |v: f64| F::from(v).expect("float constant");
    let mut nodes = vec![F::zero(); m];
    let mut weights = vec![F::zero(); m];
    let eps = F::epsilon() * c(4.0);
    for i in 0..m.div_ceil(2) {
        let mut x = c((std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos());
        let mut dp = F::one();
        for _ in 0..100 {
            let (mut p0, mut p1) = (F::one(), x);
            for k in 2..=m {
                let k = c(k as f64);
                let p2 = ((c(2.0) * k - F::one()) * x * p1 - (k - F::one()) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = c(m as f64) * (x * p1 - p0) / (x * x - F::one());
            let dx = p1 / dp;
            x = x - dx;
            if dx.abs() <= eps {
                break;
            }
        }
        let w = c(2.0) / ((F::one() - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[m - 1 - i] = x;
        weights[i] = w;
        weights[m - 1 - i] = w;
    }
    (nodes, weights)
}

/// Nodes and weights mapped to `[a, b]`.
pub fn gauss_on<F: Float>(m: usize, a: F, b: F) -> (Vec<F>, Vec<F>) {
    let (x, w) = gauss_legendre::<F>(m);
    let two = F::one() + F::one();
    let (mid, half) = ((a + b) / two, (b - a) / two);
    (x.into_iter().map(|t| mid + half * t).collect(), w.into_iter().map(|v| v * half).collect())
}
